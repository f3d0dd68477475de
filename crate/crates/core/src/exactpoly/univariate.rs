//! Dense univariate polynomials over the rationals, ascending coefficient order.
//!
//! Only what binary-form gcd and square-free work need: exact division,
//! Euclidean gcd and Yun's square-free factorization.

use num_traits::Zero;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UniPoly {
    // coeffs[i] multiplies x^i; no trailing zeros
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    #[cfg(test)]
    pub fn one() -> Self {
        UniPoly { coeffs: vec![<Rational as num_traits::One>::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(lc) => {
                let lc = lc.clone();
                UniPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    #[cfg(test)]
    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if sd < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0)` is zero.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    /// Yun's algorithm. Returns monic square-free `a_1, a_2, ...` with
    /// `self = lc * prod a_i^i`; trailing entries may be constant 1.
    pub fn squarefree_factors(&self) -> Vec<UniPoly> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let mut a = UniPoly::gcd(&f, &fp);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = fp.div_exact(&a).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        loop {
            a = UniPoly::gcd(&b, &d);
            out.push(a.clone());
            b = b.div_exact(&a).expect("gcd divides");
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
        }
        out
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    #[test]
    fn gcd_of_linear_products() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(UniPoly::gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (x+1)^3 (x-2)
        let lin = p(&[1, 1]);
        let f = lin.mul(&lin).mul(&lin).mul(&p(&[-2, 1]));
        let parts = f.squarefree_factors();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], p(&[-2, 1]));
        assert_eq!(parts[1], UniPoly::one());
        assert_eq!(parts[2], lin);
    }
}
