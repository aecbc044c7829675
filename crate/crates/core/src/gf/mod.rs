//! Arithmetic in GF(q²) for odd q, built directly as a degree-2e extension
//! of the prime field GF(p).
//!
//! Elements are stored by their base-p encoding `Σ cᵢ pⁱ` where `cᵢ` is the
//! coefficient of `tⁱ` and `t` is a root of the field modulus. The modulus is
//! the first monic polynomial of degree `2e` (in lexicographic order of
//! `(c_{n-1}, …, c₀)`) that is irreducible and primitive, so `t` generates
//! the multiplicative group and discrete logs to base `t` are tabulated.
//! Multiplication, inversion and square testing go through those tables;
//! addition works digit-wise.

mod poly;

use std::fmt;

use thiserror::Error;

/// Largest field order tabulated unless the caller raises it.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("extension exponent must be positive, got {0}")]
    InvalidExponent(u32),
    #[error("{0} is not an odd prime power")]
    NotPrimePower(u64),
    #[error("field order {p}^{n} exceeds the table cap {cap}")]
    TooLarge { p: u64, n: u32, cap: u64 },
    #[error("no primitive polynomial of degree {n} over GF({p}) found")]
    NoPrimitivePolynomial { p: u64, n: u32 },
    #[error("log table self-check failed: {0}")]
    TableCheck(String),
    #[error("element encoding {enc} does not belong to a field of order {order}")]
    FieldMismatch { enc: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// An element of a [`Field`], identified by its base-p encoding.
///
/// Elements carry no reference to their field; arithmetic goes through the
/// owning `Field`, and [`Field::element`] is the checked way in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(p^n), n = 2e, with exp/log tables over a primitive root `t`.
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    n: u32,
    order: u32,
    /// Monic modulus, ascending coefficients, length n + 1.
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    /// exp[j] = encoding of t^j, j in [0, order - 1).
    exp: Vec<u32>,
    /// log[enc] = j with t^j = enc; log[0] is unused.
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` with `p` an odd prime.
pub fn odd_prime_power(q: u64) -> Result<(u64, u32), GfError> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(GfError::NotPrimePower(q));
    }
    let factors = poly::prime_factors(q as u128);
    if factors.len() != 1 {
        return Err(GfError::NotPrimePower(q));
    }
    let p = factors[0] as u64;
    let mut e = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        e += 1;
    }
    Ok((p, e))
}

impl Field {
    /// Builds GF(q²) with q = p^e.
    pub fn new(p: u64, e: u32) -> Result<Field, GfError> {
        Field::with_cap(p, e, DEFAULT_TABLE_CAP)
    }

    /// Builds GF(q²) for an odd prime power q.
    pub fn for_q(q: u64, cap: u64) -> Result<Field, GfError> {
        let (p, e) = odd_prime_power(q)?;
        Field::with_cap(p, e, cap)
    }

    pub fn with_cap(p: u64, e: u32, cap: u64) -> Result<Field, GfError> {
        if p == 2 || !is_prime(p) {
            return Err(GfError::InvalidPrime(p));
        }
        if e == 0 {
            return Err(GfError::InvalidExponent(e));
        }
        let n = 2 * e;
        let order = p
            .checked_pow(n)
            .filter(|&o| o <= cap && o <= u32::MAX as u64)
            .ok_or(GfError::TooLarge { p, n, cap })?;

        let modulus = find_modulus(p, n, order)?;
        Field::from_modulus(p as u32, e, order as u32, modulus)
    }

    fn from_modulus(p: u32, e: u32, order: u32, modulus: Vec<u32>) -> Result<Field, GfError> {
        let n = 2 * e;
        let pow_p: Vec<u32> = (0..n).map(|i| p.pow(i)).collect();
        let group = (order - 1) as usize;
        let mut exp = Vec::with_capacity(group);
        let mut log = vec![u32::MAX; order as usize];

        let mut digits = vec![0u32; n as usize];
        digits[0] = 1;
        for j in 0..group {
            let enc = digits.iter().zip(&pow_p).map(|(d, w)| d * w).sum::<u32>();
            if log[enc as usize] != u32::MAX {
                return Err(GfError::TableCheck(format!(
                    "t^{j} repeats t^{}; t is not primitive",
                    log[enc as usize]
                )));
            }
            log[enc as usize] = j as u32;
            exp.push(enc);
            // multiply by t: shift up, fold t^n = -(m_0 + … + m_{n-1} t^{n-1})
            let top = digits[n as usize - 1];
            for i in (1..n as usize).rev() {
                digits[i] = (digits[i - 1] + (p - top) * modulus[i] % p) % p;
            }
            digits[0] = (p - top) * modulus[0] % p;
        }
        if digits
            .iter()
            .enumerate()
            .any(|(i, &d)| d != u32::from(i == 0))
        {
            return Err(GfError::TableCheck(format!("t^{group} != 1")));
        }
        if exp[0] != 1 {
            return Err(GfError::TableCheck("exp[0] is not 1".into()));
        }
        Ok(Field {
            p,
            e,
            n,
            order,
            modulus,
            pow_p,
            exp,
            log,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Degree of the field over GF(p).
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// q = p^e, so the field has q² elements.
    pub fn q(&self) -> u32 {
        self.p.pow(self.e)
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// q² - 1, the order of the multiplicative group.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    /// Ascending monic coefficients of the modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// Checked conversion from an encoding.
    pub fn element(&self, enc: u64) -> Result<Elem, GfError> {
        if enc < self.order as u64 {
            Ok(Elem(enc as u32))
        } else {
            Err(GfError::FieldMismatch {
                enc,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.order).map(Elem)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u32)
    }

    /// The primitive root t.
    pub fn generator(&self) -> Elem {
        Elem(self.exp[1])
    }

    /// t^j for any integer j.
    #[inline]
    pub fn exp(&self, j: i64) -> Elem {
        Elem(self.exp[j.rem_euclid(self.group_order() as i64) as usize])
    }

    /// Discrete log to base t; `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        (0..self.n as usize)
            .map(|i| a.0 / self.pow_p[i] % self.p)
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, GfError> {
        if coeffs.len() > self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GfError::FieldMismatch {
                enc: u64::MAX,
                order: self.order,
            });
        }
        Ok(Elem(
            coeffs.iter().zip(&self.pow_p).map(|(c, w)| c * w).sum(),
        ))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let mut out = 0;
        for &w in &self.pow_p {
            out += (a.0 / w % p + b.0 / w % p) % p * w;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.p;
        let mut out = 0;
        for &w in &self.pow_p {
            out += (p - a.0 / w % p) % p * w;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let mut out = 0;
        for &w in &self.pow_p {
            out += (a.0 / w % p + p - b.0 / w % p) % p * w;
        }
        Elem(out)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let g = self.group_order();
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(if s >= g { s - g } else { s }) as usize])
    }

    /// Multiplication with both operands validated against this field.
    pub fn checked_mul(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        self.element(a.0 as u64)?;
        self.element(b.0 as u64)?;
        Ok(self.mul(a, b))
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let g = self.group_order();
        Ok(Elem(self.exp[((g - self.log[a.0 as usize]) % g) as usize]))
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^k for k ≥ 0, with 0^0 = 1.
    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        match self.log(a) {
            None => Elem::ZERO,
            Some(l) => {
                let g = self.group_order() as u64;
                Elem(self.exp[((l as u64 % g) * (k % g) % g) as usize])
            }
        }
    }

    /// Zero counts as a square.
    pub fn is_square(&self, a: Elem) -> bool {
        match self.log(a) {
            None => true,
            Some(l) => l % 2 == 0,
        }
    }

    /// Square roots of `a` in ascending encoding order: two for a nonzero
    /// square, `[0]` for zero, none for a non-square.
    pub fn sqrt(&self, a: Elem) -> Vec<Elem> {
        match self.log(a) {
            None => vec![Elem::ZERO],
            Some(l) if l % 2 == 1 => Vec::new(),
            Some(l) => {
                let r = Elem(self.exp[(l / 2) as usize]);
                let s = self.neg(r);
                vec![r.min(s), r.max(s)]
            }
        }
    }

    /// Canonical text: ascending powers, zero terms omitted.
    pub fn format(&self, a: Elem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs(a).into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{i}"),
            });
        }
        terms.join("+")
    }

    /// Strict inverse of [`Field::format`]; terms may come in any order but
    /// each power at most once, and coefficients must already be reduced.
    pub fn parse(&self, text: &str) -> Result<Elem, GfError> {
        let fail = |reason: &str| GfError::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        if text == "0" {
            return Ok(Elem::ZERO);
        }
        let mut coeffs = vec![0u32; self.n as usize];
        for term in text.split('+') {
            let digits_end = term
                .find(|ch: char| !ch.is_ascii_digit())
                .unwrap_or(term.len());
            let (coeff_text, rest) = term.split_at(digits_end);
            let coeff = if coeff_text.is_empty() {
                if rest.is_empty() {
                    return Err(fail("empty term"));
                }
                1
            } else {
                if coeff_text.starts_with('0') {
                    return Err(fail("coefficient must be in 1..p-1"));
                }
                let c: u64 = coeff_text.parse().map_err(|_| fail("bad coefficient"))?;
                if c >= self.p as u64 {
                    return Err(fail("coefficient must be in 1..p-1"));
                }
                c as u32
            };
            let power = match rest {
                "" => 0,
                "t" => 1,
                _ => {
                    let exp_text = rest
                        .strip_prefix("t^")
                        .ok_or_else(|| fail("malformed term"))?;
                    if exp_text.is_empty()
                        || exp_text.starts_with('0')
                        || !exp_text.bytes().all(|b| b.is_ascii_digit())
                    {
                        return Err(fail("malformed exponent"));
                    }
                    let k: u64 = exp_text.parse().map_err(|_| fail("bad exponent"))?;
                    if k < 2 || k >= self.n as u64 {
                        return Err(fail("exponent out of range"));
                    }
                    k as usize
                }
            };
            if coeffs[power] != 0 {
                return Err(fail("repeated power"));
            }
            coeffs[power] = coeff;
        }
        self.from_coeffs(&coeffs)
    }

    /// Modulus written as a polynomial in t, descending powers.
    pub fn format_modulus(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{i}"),
            });
        }
        terms.join("+")
    }
}

/// First monic degree-n polynomial, ascending in (c_{n-1}, …, c₀), that is
/// irreducible and primitive.
fn find_modulus(p: u64, n: u32, order: u64) -> Result<Vec<u32>, GfError> {
    let group = (order - 1) as u128;
    for m in 0..order {
        let mut f: Vec<u64> = (0..n).map(|i| m / p.pow(i) % p).collect();
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        if poly::is_irreducible(&f, p) && poly::is_primitive(&f, p, group) {
            return Ok(f.into_iter().map(|c| c as u32).collect());
        }
    }
    Err(GfError::NoPrimitivePolynomial { p, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Field {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn moduli_for_small_fields() {
        assert_eq!(f9().modulus(), &[2, 1, 1]);
        assert_eq!(Field::new(5, 1).unwrap().modulus(), &[2, 1, 1]);
        assert_eq!(f9().format_modulus(), "t^2+t+2");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(2, 1).unwrap_err(), GfError::InvalidPrime(2));
        assert_eq!(Field::new(9, 1).unwrap_err(), GfError::InvalidPrime(9));
        assert_eq!(Field::new(3, 0).unwrap_err(), GfError::InvalidExponent(0));
        assert!(matches!(
            Field::with_cap(13, 1, 100),
            Err(GfError::TooLarge { .. })
        ));
        assert!(matches!(Field::new(3, 40), Err(GfError::TooLarge { .. })));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(odd_prime_power(9).unwrap(), (3, 2));
        assert_eq!(odd_prime_power(13).unwrap(), (13, 1));
        assert_eq!(odd_prime_power(125).unwrap(), (5, 3));
        assert!(odd_prime_power(15).is_err());
        assert!(odd_prime_power(8).is_err());
        assert!(odd_prime_power(1).is_err());
    }

    #[test]
    fn f9_products() {
        let f = f9();
        let t = f.parse("t").unwrap();
        assert_eq!(f.format(f.mul(t, t)), "1+2t");
        let a = f.parse("1+2t").unwrap();
        let b = f.parse("2+t").unwrap();
        assert_eq!(f.mul(a, b), Elem::ONE);
        assert_eq!(f.mul(a, Elem::ZERO), Elem::ZERO);
        assert_eq!(f.inv(a).unwrap(), b);
        assert_eq!(f.inv(Elem::ONE).unwrap(), Elem::ONE);
        assert_eq!(f.inv(Elem::ZERO), Err(GfError::DivisionByZero));
    }

    #[test]
    fn f25_sqrt_of_three() {
        let f = Field::new(5, 1).unwrap();
        let three = f.from_int(3);
        assert!(f.is_square(three));
        let roots: Vec<String> = f.sqrt(three).into_iter().map(|r| f.format(r)).collect();
        assert_eq!(roots, vec!["1+2t", "4+3t"]);
        assert_eq!(f.sqrt(Elem::ZERO), vec![Elem::ZERO]);
    }

    #[test]
    fn f9_generator_is_not_square() {
        let f = f9();
        assert!(!f.is_square(f.generator()));
        assert!(f.sqrt(f.generator()).is_empty());
    }

    #[test]
    fn parse_and_format() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.coeffs(f.parse("2+3t").unwrap()), vec![2, 3]);
        assert_eq!(f.parse("0").unwrap(), Elem::ZERO);
        assert!(f.parse("5t").is_err());
        assert!(f.parse("t^2").is_err());
        assert!(f.parse("").is_err());
        assert!(f.parse("1+").is_err());
        assert!(f.parse("0+t").is_err());
        assert!(f.parse("1+1").is_err());
        assert!(f.parse(" 1").is_err());
        assert_eq!(f.format(f.parse("3t+2").unwrap()), "2+3t");
        assert_eq!(f.format(f.parse("1t").unwrap()), "t");

        let f81 = Field::new(3, 2).unwrap();
        let a = f81.parse("1+t^2").unwrap();
        assert_eq!(f81.format(a), "1+t^2");
        assert_eq!(f81.coeffs(f81.parse("2t^3+t").unwrap()), vec![0, 1, 0, 2]);
        assert!(f81.parse("t^4").is_err());
        assert!(f81.parse("t^1").is_err());
    }

    #[test]
    fn element_range_check() {
        let f = f9();
        assert!(f.element(8).is_ok());
        assert!(matches!(f.element(9), Err(GfError::FieldMismatch { .. })));
        let big = Field::new(5, 1).unwrap().element(20).unwrap();
        assert!(f.checked_mul(big, Elem::ONE).is_err());
    }

    #[test]
    fn tables_are_consistent() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let f = Field::new(p, e).unwrap();
            let g = f.group_order();
            for a in f.nonzero() {
                let l = f.log(a).unwrap();
                assert_eq!(f.exp(l as i64), a);
                assert_eq!(f.pow(a, g as u64), Elem::ONE);
            }
            let t = f.generator();
            let mut x = Elem::ONE;
            for j in 1..g {
                x = f.mul(x, t);
                assert_ne!(x, Elem::ONE, "t^{j} = 1");
            }
            let squares = f.nonzero().filter(|&a| f.is_square(a)).count();
            assert_eq!(squares as u32, g / 2);
            let by_euler = f
                .nonzero()
                .all(|a| f.is_square(a) == (f.pow(a, (g / 2) as u64) == Elem::ONE));
            assert!(by_euler);
            for a in f.elements() {
                for r in f.sqrt(a) {
                    assert_eq!(f.mul(r, r), a);
                }
                let roots = f.sqrt(a);
                if roots.len() == 2 {
                    assert_eq!(f.neg(roots[0]), roots[1]);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [3, 5] {
            let f = Field::new(p, 1).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
