//! Reference arithmetic that shares nothing with the library's log tables:
//! elements are coefficient vectors, products are schoolbook polynomial
//! multiplication reduced by the modulus.

#![allow(dead_code)]

use subconstituent::{Elem, Field, Point};

pub struct Naive {
    pub p: u32,
    pub n: usize,
    pub modulus: Vec<u32>,
}

pub type Poly = Vec<u32>;

impl Naive {
    pub fn of(field: &Field) -> Naive {
        Naive {
            p: field.p(),
            n: field.n() as usize,
            modulus: field.modulus().to_vec(),
        }
    }

    pub fn from_elem(&self, field: &Field, a: Elem) -> Poly {
        field.coeffs(a)
    }

    pub fn to_elem(&self, field: &Field, a: &Poly) -> Elem {
        field.from_coeffs(a).unwrap()
    }

    pub fn constant(&self, c: i64) -> Poly {
        let mut v = vec![0; self.n];
        v[0] = c.rem_euclid(self.p as i64) as u32;
        v
    }

    pub fn is_zero(&self, a: &Poly) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let p = self.p as u64;
        let mut wide = vec![0u64; 2 * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                wide[i + j] = (wide[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        // t^n = -(m_0 + ... + m_{n-1} t^{n-1})
        for d in (self.n..2 * self.n).rev() {
            let c = wide[d];
            if c == 0 {
                continue;
            }
            wide[d] = 0;
            for i in 0..self.n {
                let shift = d - self.n + i;
                wide[shift] = (wide[shift] + p - c * self.modulus[i] as u64 % p) % p;
            }
        }
        wide[..self.n].iter().map(|&c| c as u32).collect()
    }

    /// Inverse by exhaustive search.
    pub fn inv(&self, a: &Poly) -> Poly {
        let one = self.constant(1);
        self.all()
            .into_iter()
            .find(|b| self.mul(a, b) == one)
            .expect("nonzero element has an inverse")
    }

    pub fn all(&self) -> Vec<Poly> {
        let total = (self.p as usize).pow(self.n as u32);
        (0..total)
            .map(|mut m| {
                (0..self.n)
                    .map(|_| {
                        let c = (m % self.p as usize) as u32;
                        m /= self.p as usize;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    /// Cross-ratio through homogeneous coordinates:
    /// det(a,c)·det(b,d) / (det(a,d)·det(b,c)), returned as a point.
    pub fn cross_ratio(&self, field: &Field, pts: [Point; 4]) -> Point {
        let hom = |x: Point| match x {
            Point::Finite(e) => (self.from_elem(field, e), self.constant(1)),
            Point::Infinity => (self.constant(1), self.constant(0)),
        };
        let [a, b, c, d] = pts.map(hom);
        let det = |x: &(Poly, Poly), y: &(Poly, Poly)| {
            self.sub(&self.mul(&x.0, &y.1), &self.mul(&x.1, &y.0))
        };
        let num = self.mul(&det(&a, &c), &det(&b, &d));
        let den = self.mul(&det(&a, &d), &det(&b, &c));
        if self.is_zero(&den) {
            assert!(!self.is_zero(&num));
            Point::Infinity
        } else {
            Point::Finite(self.to_elem(field, &self.mul(&num, &self.inv(&den))))
        }
    }
}

/// Triangles by enumerating every vertex triple.
pub fn brute_triangles<L>(g: &subconstituent::Graph<L>) -> usize {
    let n = g.len();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

pub fn field(q: u64) -> Field {
    Field::for_q(q, subconstituent::gf::DEFAULT_TABLE_CAP).unwrap()
}

/// Every u outside {0, 1, -1}.
pub fn all_u(field: &Field) -> Vec<Elem> {
    let minus_one = field.from_int(-1);
    field
        .nonzero()
        .filter(|&u| u != Elem::ONE && u != minus_one)
        .collect()
}
