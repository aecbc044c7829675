//! Dense polynomials over GF(p), coefficients ascending. Only what the
//! modulus search needs: reduction, multiplication mod f, powering, gcd.

pub(crate) type Poly = Vec<u64>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo a monic or non-monic nonzero `f`.
fn rem(mut a: Poly, f: &[u64], p: u64) -> Poly {
    trim(&mut a);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while a.len() > df {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        if c != 0 {
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - c * fi % p) % p;
            }
        }
        trim(&mut a);
    }
    a
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(out, f, p)
}

pub(crate) fn pow_mod_poly(base: &[u64], mut exp: u128, f: &[u64], p: u64) -> Poly {
    let mut acc = rem(vec![1], f, p);
    let mut b = rem(base.to_vec(), f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(mut a: Poly, mut b: Poly, p: u64) -> Poly {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: a degree-n polynomial f is irreducible iff
/// t^(p^n) = t mod f and gcd(t^(p^(n/r)) - t, f) = 1 for each prime r | n.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // x^(p^i) by repeated p-th powering
    let frob = |i: usize| -> Poly {
        let mut y = x.clone();
        for _ in 0..i {
            y = pow_mod_poly(&y, p as u128, f, p);
        }
        y
    };
    if sub(&frob(n), &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(n as u128) {
        let d = sub(&frob(n / r as usize), &x, p);
        let g = gcd(f.to_vec(), d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Distinct prime factors in ascending order, by trial division.
pub(crate) fn prime_factors(mut m: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Root t of an irreducible f generates the multiplicative group of
/// GF(p)[t]/(f), which has order `group_order`.
pub(crate) fn is_primitive(f: &[u64], p: u64, group_order: u128) -> bool {
    if f[0] == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    prime_factors(group_order)
        .into_iter()
        .all(|r| pow_mod_poly(&x, group_order / r, f, p) != vec![1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_over_gf3() {
        // t^2 + 1: -1 is a non-residue mod 3
        assert!(is_irreducible(&[1, 0, 1], 3));
        // t^2 + 2 = (t-1)(t+1)
        assert!(!is_irreducible(&[2, 0, 1], 3));
        // t^2 + t + 1 = (t-1)^2 over GF(3)
        assert!(!is_irreducible(&[1, 1, 1], 3));
        assert!(is_irreducible(&[2, 1, 1], 3));
    }

    #[test]
    fn product_of_two_quadratics_is_reducible() {
        // (t^2+1)(t^2+t+2) over GF(3) = t^4 + t^3 + 3t^2 + t + 2
        let f = vec![2, 1, 0, 1, 1];
        assert!(!is_irreducible(&f, 3));
    }

    #[test]
    fn primitivity_over_gf3() {
        // root of t^2+1 has order 4, not 8
        assert!(!is_primitive(&[1, 0, 1], 3, 8));
        assert!(is_primitive(&[2, 1, 1], 3, 8));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(24), vec![2, 3]);
        assert_eq!(prime_factors(168), vec![2, 3, 7]);
        assert_eq!(prime_factors(97), vec![97]);
        assert_eq!(prime_factors(1), Vec::<u128>::new());
    }
}
