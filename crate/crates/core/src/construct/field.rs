use std::fmt;

use super::ConstructError;

/// The field `F_q`, `q = p^k`, as `Z_p[x]` modulo an irreducible monic
/// polynomial. Elements are the integers `0..q`, read as base-`p` digit
/// vectors with the constant coefficient as the least significant digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    /// Coefficients of the modulus, constant term first, leading 1 included.
    modulus: Vec<u32>,
}

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl FiniteField {
    /// Builds `F_{p^k}` with the lexicographically smallest irreducible
    /// monic modulus, comparing coefficient vectors from `x^{k-1}` down to
    /// the constant term.
    pub fn new(p: u32, k: u32) -> Result<Self, ConstructError> {
        if !is_prime(p) {
            return Err(ConstructError::NotPrime(p));
        }
        if k == 0 {
            return Err(ConstructError::FieldTooLarge { p, k });
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER);
        if q.is_none() {
            return Err(ConstructError::FieldTooLarge { p, k });
        }
        let ku = k as usize;
        // enumerate lower coefficients in the stated order
        let total = (p as u64).pow(k);
        for code in 0..total {
            // digit for x^{k-1} is the most significant
            let mut coeffs = vec![0u32; ku + 1];
            let mut c = code;
            for coeff in coeffs.iter_mut().take(ku) {
                *coeff = (c % p as u64) as u32;
                c /= p as u64;
            }
            coeffs[ku] = 1;
            if is_irreducible(&coeffs, p) {
                return Ok(FiniteField {
                    p,
                    k,
                    modulus: coeffs,
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.k)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn digits(&self, a: usize) -> Vec<u32> {
        let mut a = a;
        (0..self.k)
            .map(|_| {
                let d = (a % self.p as usize) as u32;
                a /= self.p as usize;
                d
            })
            .collect()
    }

    fn pack_digits(&self, d: &[u32]) -> usize {
        d.iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let da = self.digits(a);
        let db = self.digits(b);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack_digits(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let d: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.pack_digits(&d)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.p as u64;
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce modulo the monic modulus, highest degree first
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let t = deg - k + i;
                prod[t] = (prod[t] + (p - c) * m as u64) % p;
            }
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&v| v as u32).collect();
        self.pack_digits(&digits)
    }

    pub fn one(&self) -> usize {
        1
    }

    /// Smallest element generating the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        let q = self.order();
        (2..q)
            .find(|&a| self.multiplicative_order(a) == q - 1)
            .unwrap_or(1)
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// Base-`p` digit vector, constant coefficient first, e.g. `[0,1]` for `x`.
    pub fn format_element(&self, a: usize) -> String {
        let d: Vec<String> = self.digits(a).iter().map(|x| x.to_string()).collect();
        format!("[{}]", d.join(","))
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod ", self.p, self.k)?;
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut c = code;
            for coef in divisor.iter_mut().take(d) {
                *coef = (c % p as u64) as u32;
                c /= p as u64;
            }
            divisor[d] = 1;
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(a: &[u32], monic: &[u32], p: u32) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let d = monic.len() - 1;
    for deg in (d..r.len()).rev() {
        let c = r[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in monic.iter().enumerate() {
            let t = deg - d + i;
            r[t] = (r[t] + (p - c) * m as u64) % p;
        }
    }
    r.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.order(), 5);
        assert_eq!(f5.mul(3, 4), 2);
        assert!(matches!(
            FiniteField::new(4, 1),
            Err(ConstructError::NotPrime(4))
        ));
        assert!(matches!(
            FiniteField::new(2, 17),
            Err(ConstructError::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn f9_modulus_by_root_scan() {
        // a monic quadratic over Z_3 is irreducible iff it has no root; scan
        // all nine in the same order and take the first
        let mut first = None;
        'outer: for a in 0..3u32 {
            for b in 0..3u32 {
                if (0..3u32).all(|x| (x * x + a * x + b) % 3 != 0) {
                    first = Some([b, a, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(first, Some([1, 0, 1]));
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &first.unwrap());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, k) in [(2, 2), (3, 2), (2, 3), (5, 1), (2, 4), (7, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert!(
                        (1..q).any(|b| f.mul(a, b) == 1),
                        "no inverse for {a} in {f}"
                    );
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q.min(16) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            assert_eq!(f.multiplicative_order(f.primitive_element()), q - 1);
        }
    }

    #[test]
    fn display() {
        assert_eq!(
            FiniteField::new(2, 2).unwrap().to_string(),
            "GF(2^2) mod x^2 + x + 1"
        );
        assert_eq!(FiniteField::new(3, 2).unwrap().format_element(3), "[0,1]");
    }
}
