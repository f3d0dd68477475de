//! Integral lattices given by symmetric Gram matrices.
//!
//! Every lattice handled here is non-degenerate. Named root lattices use
//! `2I - adjacency` of the Dynkin diagram in Bourbaki node order; the
//! negatively definite copies that appear in Néron–Severi lattices are built
//! with `negate = true` (or [`IntegerLattice::negated`]).

mod discriminant;
mod named;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat;
use crate::Rational;

pub use discriminant::{DiscriminantForm, FormInvariants};
pub(crate) use discriminant::RawGenerator;
pub use named::{make_named, NamedLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignaturePair {
    pub positive: usize,
    pub negative: usize,
}

impl SignaturePair {
    pub fn is_indefinite(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }
}

impl fmt::Display for SignaturePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    gram: Vec<Vec<i64>>,
}

impl IntegerLattice {
    /// Validates symmetry and non-degeneracy.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::BadParameter("lattice of rank 0".into()));
        }
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::BadParameter("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::AsymmetricGram);
                }
            }
        }
        let det = intmat::det(&intmat::from_i64(&gram));
        if det.is_zero() {
            return Err(Error::DegenerateGram);
        }
        if det.abs().to_u64().is_none() {
            return Err(Error::Overflow("discriminant"));
        }
        Ok(IntegerLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    /// `<u, v>` for integer coordinate vectors.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i128 {
        let mut acc = 0i128;
        for (i, row) in self.gram.iter().enumerate() {
            if u[i] == 0 {
                continue;
            }
            let rv: i128 = row.iter().zip(v).map(|(&g, &x)| g as i128 * x as i128).sum();
            acc += u[i] as i128 * rv;
        }
        acc
    }

    pub fn norm(&self, u: &[i64]) -> i128 {
        self.pairing(u, u)
    }

    /// `<u, v>` for rational coordinate vectors.
    pub fn pairing_rational(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, row) in self.gram.iter().enumerate() {
            if u[i].is_zero() {
                continue;
            }
            let rv = row
                .iter()
                .zip(v)
                .filter(|(&g, _)| g != 0)
                .fold(Rational::zero(), |a, (&g, x)| a + x * Rational::from_integer(g.into()));
            acc += &u[i] * rv;
        }
        acc
    }

    pub fn determinant(&self) -> BigInt {
        intmat::det(&intmat::from_i64(&self.gram))
    }

    /// `|det Gram|`.
    pub fn discriminant(&self) -> u64 {
        self.determinant().abs().to_u64().expect("checked at construction")
    }

    pub fn is_unimodular(&self) -> bool {
        self.discriminant() == 1
    }

    /// For an integral symmetric Gram matrix, even diagonal is equivalent to
    /// `<u, u>` being even for every `u`.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn direct_sum(&self, other: &IntegerLattice) -> IntegerLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        IntegerLattice { gram }
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a IntegerLattice>) -> Option<IntegerLattice> {
        parts.into_iter().fold(None, |acc: Option<IntegerLattice>, l| match acc {
            None => Some(l.clone()),
            Some(a) => Some(a.direct_sum(l)),
        })
    }

    pub fn negated(&self) -> IntegerLattice {
        IntegerLattice { gram: self.gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    /// Gram matrix of the basis given by the columns of `basis` (rational
    /// coordinates in this lattice's basis).
    pub fn gram_in_basis(&self, basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        basis
            .iter()
            .map(|u| basis.iter().map(|v| self.pairing_rational(u, v)).collect())
            .collect()
    }

    /// Sylvester inertia by exact symmetric elimination over ℚ. Zero
    /// diagonals are cleared by the change `e_i -> e_i + e_j`, which puts
    /// `2 <e_i, e_j>` on the diagonal.
    pub fn signature(&self) -> SignaturePair {
        let n = self.rank();
        let mut a: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                    let Some((i, j)) = pair else { break };
                    // e_i += e_j
                    for k in 0..n {
                        let v = a[j][k].clone();
                        a[i][k] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[i] += v;
                    }
                    i
                }
            };
            let piv = a[p][p].clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != p);
            let prow = a[p].clone();
            for &i in &active {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = &a[i][p] / &piv;
                for &k in &active {
                    let delta = &f * &prow[k];
                    a[i][k] -= delta;
                }
                a[i][p] = Rational::zero();
            }
            for &i in &active {
                a[p][i] = Rational::zero();
            }
        }
        SignaturePair { positive: pos, negative: neg }
    }

    pub fn discriminant_form(&self) -> Result<DiscriminantForm> {
        discriminant::compute(self)
    }

    /// Uniqueness in the genus: an even indefinite lattice whose discriminant
    /// group needs at most `rank - 2` generators is determined by rank,
    /// signature and discriminant form.
    pub fn nikulin_unique(&self) -> Result<bool> {
        let form = self.discriminant_form()?;
        Ok(self.signature().is_indefinite() && form.length() + 2 <= self.rank())
    }

    /// Even of signature `(1, rank - 1)`.
    pub fn polarization_admissible(&self) -> bool {
        self.is_even() && self.signature() == SignaturePair { positive: 1, negative: self.rank() - 1 }
    }

    /// Dimension `20 - rank` of the period domain of lattice-polarized K3 surfaces.
    pub fn period_domain_dimension(&self) -> Result<usize> {
        if self.rank() > 20 {
            return Err(Error::RankTooLarge(self.rank()));
        }
        Ok(20 - self.rank())
    }

    /// Parse sums such as `"H+2(-E8)+<-4>"`.
    pub fn from_named_sum(text: &str) -> Result<IntegerLattice> {
        named::parse_sum(text)
    }

    pub fn summary(&self, enum_bound: u64) -> LatticeSummary {
        let form = self.discriminant_form().ok();
        let canonical = form.as_ref().and_then(|f| f.canonical(enum_bound).ok());
        LatticeSummary {
            rank: self.rank(),
            signature: self.signature(),
            discriminant: self.discriminant(),
            even: self.is_even(),
            invariant_factors: form.map(|f| f.invariant_factors().to_vec()),
            q_multiset: canonical.map(|c| c.q_multiset),
        }
    }
}

impl fmt::Display for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .gram
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Isometry-class invariants used for reporting and comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSummary {
    pub rank: usize,
    pub signature: SignaturePair,
    pub discriminant: u64,
    pub even: bool,
    /// `None` for odd lattices.
    pub invariant_factors: Option<Vec<u64>>,
    /// Multiset of q-values over all elements of the discriminant group;
    /// `None` when the group is odd or too large to enumerate.
    pub q_multiset: Option<Vec<(Rational, u64)>>,
}

/// Gram matrix `Gram[i][j] = T(k, e_i, e_j)` of the form induced by a
/// symmetric trilinear form `t` and a class `k`.
pub fn gram_from_trilinear(t: &[Vec<Vec<i64>>], k: &[i64]) -> Result<IntegerLattice> {
    let r = k.len();
    if t.len() != r || t.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
        return Err(Error::BadParameter("trilinear form and class have inconsistent sizes".into()));
    }
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let v = t[a][b][c];
                if v != t[a][c][b] || v != t[b][a][c] || v != t[b][c][a] || v != t[c][a][b] || v != t[c][b][a] {
                    return Err(Error::AsymmetricForm);
                }
            }
        }
    }
    let mut gram = vec![vec![0i64; r]; r];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (a, &ka) in k.iter().enumerate() {
                acc = ka
                    .checked_mul(t[a][i][j])
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(Error::Overflow("trilinear Gram"))?;
            }
            *x = acc;
        }
    }
    IntegerLattice::new(gram).map_err(|e| match e {
        Error::DegenerateGram => Error::DegenerateResult,
        other => other,
    })
}

/// Is the sublattice spanned by `columns` (images of a basis, in the basis
/// of `ambient`) primitive, i.e. is the quotient torsion-free? When `sub`
/// is given, the pullback of the ambient form must equal its Gram matrix.
pub fn embedding_is_primitive(
    ambient: &IntegerLattice,
    columns: &[Vec<i64>],
    sub: Option<&IntegerLattice>,
) -> Result<bool> {
    let n = ambient.rank();
    if columns.is_empty() || columns.iter().any(|c| c.len() != n) {
        return Err(Error::BadParameter("embedding columns must have ambient rank entries".into()));
    }
    let cols_big = intmat::from_i64(columns);
    if intmat::rank(&cols_big) != columns.len() {
        return Err(Error::NotInjective);
    }
    if let Some(sub) = sub {
        if sub.rank() != columns.len() {
            return Err(Error::IncompatibleForm);
        }
        for (i, u) in columns.iter().enumerate() {
            for (j, v) in columns.iter().enumerate() {
                if ambient.pairing(u, v) != sub.entry(i, j) as i128 {
                    return Err(Error::IncompatibleForm);
                }
            }
        }
    }
    let smith = intmat::smith(&intmat::transpose(&cols_big));
    Ok(smith.diag.iter().all(|d| d.is_one()))
}

pub(crate) fn mod_floor_rational(x: &Rational, m: i64) -> Rational {
    let m = Rational::from_integer(m.into());
    x - &m * (x / &m).floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(s: &str) -> IntegerLattice {
        IntegerLattice::from_named_sum(s).unwrap()
    }

    #[test]
    fn hyperbolic_plane() {
        let h = make_named(NamedLattice::H, false).unwrap();
        assert_eq!(h.gram(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(h.signature(), SignaturePair { positive: 1, negative: 1 });
        assert_eq!(h.discriminant(), 1);
        assert!(h.is_even());
    }

    #[test]
    fn signatures_of_standard_lattices() {
        assert_eq!(lat("E8").signature(), SignaturePair { positive: 8, negative: 0 });
        assert_eq!(lat("H+2(-E7)+(-A3)").signature(), SignaturePair { positive: 1, negative: 18 });
        assert_eq!(lat("<-4>").signature(), SignaturePair { positive: 0, negative: 1 });
    }

    #[test]
    fn discriminants() {
        assert_eq!(lat("H+2(-E7)+(-A3)").discriminant(), 16);
        assert_eq!(lat("H+2(-E8)+<-4>").discriminant(), 4);
    }

    #[test]
    fn evenness_and_sums() {
        assert!(!IntegerLattice::new(vec![vec![1]]).unwrap().is_even());
        let s = lat("H+<-4>");
        assert_eq!(s.gram(), &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -4]]);
    }

    #[test]
    fn rejects_bad_grams() {
        assert_eq!(IntegerLattice::new(vec![vec![0, 1], vec![2, 0]]), Err(Error::AsymmetricGram));
        assert_eq!(IntegerLattice::new(vec![vec![2, 2], vec![2, 2]]), Err(Error::DegenerateGram));
    }

    #[test]
    fn trilinear_p1_times_p2() {
        // T(D1,D1,.) = 0, T(D1,D2,D2) = 1, T(D2,D2,D2) = 0
        let mut t = vec![vec![vec![0i64; 2]; 2]; 2];
        for (a, b, c) in [(0, 1, 1), (1, 0, 1), (1, 1, 0)] {
            t[a][b][c] = 1;
        }
        let l = gram_from_trilinear(&t, &[2, 3]).unwrap();
        assert_eq!(l.gram(), &[vec![0, 3], vec![3, 2]]);
        assert_eq!(gram_from_trilinear(&t, &[0, 0]), Err(Error::DegenerateResult));
        let mut asym = t.clone();
        asym[0][0][1] = 5;
        assert_eq!(gram_from_trilinear(&asym, &[2, 3]), Err(Error::AsymmetricForm));
        // T vanishing whenever a slot is e_1
        let mut only_e2 = vec![vec![vec![0i64; 2]; 2]; 2];
        only_e2[1][1][1] = 1;
        assert_eq!(gram_from_trilinear(&only_e2, &[1, 1]), Err(Error::DegenerateResult));
    }

    #[test]
    fn primitivity_examples() {
        let h = lat("H");
        assert!(embedding_is_primitive(&h, &[vec![1, 0], vec![0, 1]], Some(&h)).unwrap());
        let m8 = lat("<-8>");
        assert!(!embedding_is_primitive(&h, &[vec![2, -2]], Some(&m8)).unwrap());
        assert_eq!(embedding_is_primitive(&h, &[vec![1, 1], vec![2, 2]], None), Err(Error::NotInjective));
        assert_eq!(embedding_is_primitive(&h, &[vec![1, 1]], Some(&m8)), Err(Error::IncompatibleForm));
    }

    #[test]
    fn nikulin_criterion() {
        assert!(lat("H+2(-E8)+<-4>").nikulin_unique().unwrap());
        assert!(!lat("2(-E7)+(-A3)").nikulin_unique().unwrap());
        assert!(lat("H").nikulin_unique().unwrap());
        assert_eq!(IntegerLattice::new(vec![vec![1]]).unwrap().nikulin_unique(), Err(Error::OddLattice));
    }

    #[test]
    fn polarization_checks() {
        let h = lat("H");
        assert!(h.polarization_admissible());
        assert_eq!(h.period_domain_dimension().unwrap(), 18);
        assert_eq!(lat("H+2(-E8)+<-4>").period_domain_dimension().unwrap(), 1);
        assert!(!lat("-E8").polarization_admissible());
        assert_eq!(lat("K3").period_domain_dimension(), Err(Error::RankTooLarge(22)));
    }
}
