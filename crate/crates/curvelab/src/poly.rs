//! Univariate polynomials over the rationals, as coefficient vectors
//! (index = power). Just the operations the oracle needs: evaluation,
//! derivatives, products, gcds and rational roots.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

pub type Q = BigRational;

/// Coefficients low-to-high, no trailing zeros (enforced by `trim`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Q) -> Self {
        Poly { coeffs: vec![c] }.trim()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    /// x - a
    pub fn linear_root(a: &Q) -> Self {
        Poly {
            coeffs: vec![-a.clone(), Q::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        Poly { coeffs }.trim()
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
                .collect(),
        }
        .trim()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Product of (x - a) over the given points.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Q>) -> Poly {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, a| acc.mul(&Poly::linear_root(a)))
    }

    /// Euclidean remainder.
    fn rem(&self, div: &Poly) -> Poly {
        assert!(!div.is_zero());
        let mut r = self.coeffs.clone();
        let dd = div.coeffs.len() - 1;
        let lead = div.coeffs.last().unwrap();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let factor = r[k].clone() / lead;
            if !factor.is_zero() {
                for (j, c) in div.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    r[idx] = &r[idx] - &(c * &factor);
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        Poly { coeffs: r }.trim()
    }

    /// Exact division; panics if not divisible.
    pub fn div_exact(&self, div: &Poly) -> Poly {
        assert!(!div.is_zero());
        if self.is_zero() {
            return Poly::zero();
        }
        let mut r = self.coeffs.clone();
        let dd = div.coeffs.len() - 1;
        let lead = div.coeffs.last().unwrap();
        let mut q = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1;
            let factor = r[k].clone() / lead;
            q[k - dd] = factor.clone();
            for (j, c) in div.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = &r[idx] - &(c * &factor);
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        assert!(
            r.iter().all(Zero::is_zero),
            "division was not exact (remainder {r:?})"
        );
        Poly::from_coeffs(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(self) -> Poly {
        match self.coeffs.last().cloned() {
            None => self,
            Some(lead) => {
                let inv = lead.recip();
                Poly {
                    coeffs: self.coeffs.into_iter().map(|c| c * &inv).collect(),
                }
            }
        }
    }

    /// All rational roots with multiplicity, sorted, plus the degree of
    /// the factor left after dividing them out (its roots are all
    /// irrational).
    pub fn rational_roots(&self) -> (Vec<(Q, usize)>, usize) {
        assert!(!self.is_zero());
        let mut p = self.clone();
        // Clear denominators, strip content, then try divisors of the
        // constant and leading integer coefficients.
        let mut roots: Vec<(Q, usize)> = Vec::new();
        // Peel off x = 0 first.
        let mut zero_mult = 0;
        while !p.is_zero() && p.coeffs.first().is_some_and(Zero::is_zero) {
            p = Poly::from_coeffs(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Q::zero(), zero_mult));
        }
        if p.degree() == Some(0) || p.is_zero() {
            return (roots, 0);
        }
        let denom_lcm = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num::integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| c.numer() * &denom_lcm / c.denom())
            .collect();
        let lead = ints.last().unwrap().abs();
        let cons = ints.first().unwrap().abs();
        let mut candidates: Vec<Q> = Vec::new();
        for pnum in divisors(&cons) {
            for pden in divisors(&lead) {
                for sign in [1, -1] {
                    candidates.push(Q::new(&pnum * sign, pden.clone()));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            let mut mult = 0;
            while !p.is_zero() && p.degree() > Some(0) && p.eval(&cand).is_zero() {
                p = p.div_exact(&Poly::linear_root(&cand));
                mult += 1;
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, p.degree().unwrap_or(0))
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let n = n.abs();
    let mut out = Vec::new();
    let mut k = BigInt::one();
    // Trial division up to sqrt(n); fine at the coefficient sizes the
    // oracle produces.
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            out.push(k.clone());
            out.push(&n / &k);
        }
        k += 1;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn degree_and_trim() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn evaluation() {
        // 1 + 2x + x^2 at x = 3.
        assert_eq!(p(&[1, 2, 1]).eval(&q(3, 1)), q(16, 1));
    }

    #[test]
    fn derivative_drops_degree() {
        assert_eq!(p(&[5, 3, 4]).derivative(), p(&[3, 8]));
    }

    #[test]
    fn product_of_roots() {
        let f = Poly::from_roots(&[q(1, 1), q(-2, 1)]);
        assert_eq!(f, p(&[-2, 1, 1]));
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = p(&[-1, 0, 1]); // (x-1)(x+1)
        let g = p(&[-1, 1]).mul(&p(&[3, 1])); // (x-1)(x+3)
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
    }

    #[test]
    fn division_is_exact() {
        let f = p(&[-2, 1, 1]);
        assert_eq!(f.div_exact(&p(&[-1, 1])), p(&[2, 1]));
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // x^2 (x - 1/2)^3 (x^2 + 1)
        let f = p(&[0, 0, 1])
            .mul(&Poly::from_roots(&[q(1, 2), q(1, 2), q(1, 2)]))
            .mul(&p(&[1, 0, 1]));
        let (roots, irrational) = f.rational_roots();
        assert_eq!(roots, vec![(q(0, 1), 2), (q(1, 2), 3)]);
        assert_eq!(irrational, 2);
    }

    #[test]
    fn roots_of_constant() {
        let (roots, irrational) = p(&[7]).rational_roots();
        assert!(roots.is_empty());
        assert_eq!(irrational, 0);
    }
}
