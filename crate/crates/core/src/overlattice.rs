//! Even overlattices of an even lattice `L` correspond to subgroups of
//! `A_L` on which `q` vanishes. This module enumerates those subgroups,
//! builds the overlattice `L_G` and computes `A_{L_G} = G⊥/G`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::lattice::{DiscriminantForm, IntegerLattice, RawGenerator};
use crate::Rational;

pub const DEFAULT_ENUM_BOUND: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotropicSubgroup {
    /// Element coordinates in the discriminant group.
    pub generators: Vec<Vec<u64>>,
    pub order: u64,
}

impl IsotropicSubgroup {
    pub fn trivial() -> Self {
        IsotropicSubgroup { generators: Vec::new(), order: 1 }
    }

    /// Validates that `generators` lie in `a` and span a subgroup on which
    /// `q` vanishes and `b` is integral.
    pub fn new(a: &DiscriminantForm, generators: Vec<Vec<u64>>) -> Result<Self> {
        check_isotropic(a, &generators)?;
        let order = span(a, &generators).len() as u64;
        Ok(IsotropicSubgroup { generators, order })
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Abstract group structure of the subgroup.
    pub fn invariant_factors(&self, a: &DiscriminantForm) -> Vec<u64> {
        let k = a.length();
        if k == 0 {
            return Vec::new();
        }
        let m_rows = preimage_rows(a, &self.generators);
        // D = Y * M, G = M / D
        let d_rows = diag_rows(a);
        let y = solve_rows(&d_rows, &m_rows);
        intmat::smith(&y)
            .diag
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("divides group order"))
            .collect()
    }
}

fn check_isotropic(a: &DiscriminantForm, generators: &[Vec<u64>]) -> Result<()> {
    for g in generators {
        if !a.contains(g) {
            return Err(Error::NotInGroup);
        }
        if !a.is_q_zero(g) {
            return Err(Error::NotIsotropic(format!("q{:?} = {}", g, a.q(g))));
        }
    }
    for (i, g) in generators.iter().enumerate() {
        for h in &generators[i + 1..] {
            if !a.is_b_zero(g, h) {
                return Err(Error::NotIsotropic(format!("b({g:?}, {h:?}) = {}", a.b(g, h))));
            }
        }
    }
    Ok(())
}

/// Element indices of the subgroup generated by `gens`.
pub fn span(a: &DiscriminantForm, gens: &[Vec<u64>]) -> BTreeSet<u64> {
    let mut elems = vec![a.zero()];
    let mut seen: HashSet<u64> = HashSet::from([a.index_of(&a.zero())]);
    for g in gens {
        if seen.contains(&a.index_of(g)) {
            continue;
        }
        let ord = a.element_order(g);
        let current = elems.clone();
        for x in &current {
            let mut y = x.clone();
            for _ in 1..ord {
                y = a.add(&y, g);
                if seen.insert(a.index_of(&y)) {
                    elems.push(y.clone());
                }
            }
        }
    }
    seen.into_iter().collect()
}

// greedy generating set in index order
fn canonical_generators(a: &DiscriminantForm, elements: &BTreeSet<u64>) -> Vec<Vec<u64>> {
    let mut gens = Vec::new();
    let mut cur = span(a, &gens);
    for &idx in elements {
        if !cur.contains(&idx) {
            gens.push(a.element_at(idx));
            cur = span(a, &gens);
        }
    }
    gens
}

/// Elements with `q = 0`, in lexicographic order.
pub fn isotropic_elements(a: &DiscriminantForm, bound: u64) -> Result<Vec<Vec<u64>>> {
    let order = a.checked_order(bound)?;
    Ok((0..order).map(|i| a.element_at(i)).filter(|x| a.is_q_zero(x)).collect())
}

/// Cyclic isotropic subgroups only (including the trivial one). Cheaper
/// than [`isotropic_subgroups`]; usable on larger groups.
pub fn isotropic_cyclic_subgroups(a: &DiscriminantForm, bound: u64) -> Result<Vec<IsotropicSubgroup>> {
    let mut found: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
    for x in isotropic_elements(a, bound)? {
        found.insert(span(a, &[x]));
    }
    Ok(finish(a, found))
}

/// Every subgroup on which `q` vanishes identically, trivial one included,
/// sorted by order and then by generators.
pub fn isotropic_subgroups(a: &DiscriminantForm, bound: u64) -> Result<Vec<IsotropicSubgroup>> {
    let cyclic: Vec<(Vec<u64>, BTreeSet<u64>)> = isotropic_elements(a, bound)?
        .into_iter()
        .filter(|x| x.iter().any(|&c| c != 0))
        .map(|x| {
            let s = span(a, std::slice::from_ref(&x));
            (x, s)
        })
        .collect();
    let mut found: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
    let trivial = span(a, &[]);
    found.insert(trivial.clone());
    let mut queue = vec![(Vec::<Vec<u64>>::new(), trivial)];
    while let Some((gens, elems)) = queue.pop() {
        for (x, _) in &cyclic {
            if elems.contains(&a.index_of(x)) {
                continue;
            }
            if !gens.iter().all(|g| a.is_b_zero(g, x)) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(x.clone());
            let next = span(a, &next_gens);
            if found.insert(next.clone()) {
                queue.push((next_gens, next));
            }
        }
    }
    Ok(finish(a, found))
}

fn finish(a: &DiscriminantForm, found: BTreeSet<BTreeSet<u64>>) -> Vec<IsotropicSubgroup> {
    let mut out: Vec<IsotropicSubgroup> = found
        .iter()
        .map(|s| IsotropicSubgroup { generators: canonical_generators(a, s), order: s.len() as u64 })
        .collect();
    out.sort_by(|x, y| (x.order, &x.generators).cmp(&(y.order, &y.generators)));
    out
}

/// `L_G` with its basis expressed in `L ⊗ ℚ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlattice {
    pub lattice: IntegerLattice,
    /// `basis[i]` is the i-th basis vector of `L_G` in coordinates of `L`.
    pub basis: Vec<Vec<Rational>>,
    /// `inclusion[i]` is the i-th basis vector of `L` in coordinates of `L_G`.
    pub inclusion: Vec<Vec<i64>>,
    pub index: u64,
}

/// Saturates the basis of `l` with lifts of the generators of `g` (Hermite
/// normal form), so the result is basis-deterministic.
pub fn build_overlattice(l: &IntegerLattice, g: &IsotropicSubgroup) -> Result<Overlattice> {
    let a = l.discriminant_form()?;
    check_isotropic(&a, &g.generators)?;
    let n = l.rank();
    let lifts: Vec<Vec<Rational>> = g.generators.iter().map(|x| a.lift_of(x)).collect();
    let den = intmat::lcm_of_denominators(lifts.iter().flatten());
    let scale = Rational::from_integer(den.clone());
    let mut rows: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect())
        .collect();
    for lift in &lifts {
        rows.push(lift.iter().map(|x| (x * &scale).to_integer()).collect());
    }
    let hnf = intmat::hnf_rows(&rows, n);
    let basis: Vec<Vec<Rational>> =
        hnf.iter().map(|row| row.iter().map(|x| Rational::new(x.clone(), den.clone())).collect()).collect();
    let gram_q = l.gram_in_basis(&basis);
    let mut gram = vec![vec![0i64; n]; n];
    for (i, row) in gram_q.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_integer() {
                return Err(Error::NotIsotropic(format!("overlattice Gram entry {x} is not integral")));
            }
            gram[i][j] = x.to_integer().to_i64().ok_or(Error::Overflow("overlattice Gram"))?;
        }
    }
    if (0..n).any(|i| gram[i][i] % 2 != 0) {
        return Err(Error::NotIsotropic("overlattice is odd".into()));
    }
    let lattice = IntegerLattice::new(gram)?;
    // rows of basis^{-1}: L basis in L_G coordinates
    let inv = intmat::rat_inverse(&basis).expect("basis spans L ⊗ Q");
    let inclusion = inv
        .iter()
        .map(|row| row.iter().map(|x| x.to_integer().to_i64().ok_or(Error::Overflow("inclusion"))).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    // det(basis) = 1 / index
    let index = (den.pow(n as u32) / intmat::det(&hnf).abs()).to_u64().ok_or(Error::Overflow("index"))?;
    Ok(Overlattice { lattice, basis, inclusion, index })
}

/// `q` restricted to `G⊥/G`, with generator lifts in coordinates of `L`.
pub fn overlattice_discriminant_form(a: &DiscriminantForm, g: &IsotropicSubgroup) -> Result<DiscriminantForm> {
    check_isotropic(a, &g.generators)?;
    let k = a.length();
    if k == 0 {
        return Ok(a.clone());
    }
    let m_rows = preimage_rows(a, &g.generators);
    let n_rows = orthogonal_preimage_rows(a, &g.generators);
    // M = X * N; G⊥/G = Z^k / (row span of X)
    let x = solve_rows(&m_rows, &n_rows);
    let smith = intmat::smith(&x);
    let v_inv = intmat::rat_inverse(&intmat::to_rational(&smith.v)).expect("unimodular");
    let mut gens = Vec::new();
    for (i, d) in smith.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        // A-coordinates of the i-th generator: row i of V^{-1} times N
        let mut coords = vec![BigInt::zero(); k];
        for (j, nrow) in n_rows.iter().enumerate() {
            let c = v_inv[i][j].to_integer();
            for (o, e) in coords.iter_mut().zip(nrow) {
                *o += &c * e;
            }
        }
        let mut lift = vec![Rational::zero(); a.gram().len()];
        for (c, glift) in coords.iter().zip(a.generator_lifts()) {
            let c = Rational::from_integer(c.clone());
            for (o, l) in lift.iter_mut().zip(glift) {
                *o += &c * l;
            }
        }
        gens.push(RawGenerator { order: d.clone(), lift, projection: None });
    }
    DiscriminantForm::assemble(a.gram(), gens)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlatticeEntry {
    pub subgroup: IsotropicSubgroup,
    pub overlattice: Overlattice,
    /// Discriminant form of the overlattice in its own basis.
    pub form: DiscriminantForm,
}

/// One entry per isotropic subgroup, sorted by index then generators.
pub fn all_overlattices(l: &IntegerLattice, bound: u64) -> Result<Vec<OverlatticeEntry>> {
    let a = l.discriminant_form()?;
    isotropic_subgroups(&a, bound)?
        .into_iter()
        .map(|g| {
            let overlattice = build_overlattice(l, &g)?;
            let form = overlattice.lattice.discriminant_form()?;
            Ok(OverlatticeEntry { subgroup: g, overlattice, form })
        })
        .collect()
}

fn diag_rows(a: &DiscriminantForm) -> IntMatrix {
    let k = a.length();
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::from(a.invariant_factors()[i]) } else { BigInt::zero() }).collect())
        .collect()
}

// HNF basis of the preimage of <gens> in Z^k
fn preimage_rows(a: &DiscriminantForm, gens: &[Vec<u64>]) -> IntMatrix {
    let mut rows = diag_rows(a);
    rows.extend(gens.iter().map(|g| g.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()));
    intmat::hnf_rows(&rows, a.length())
}

// HNF basis of {x in Z^k : b(x, g) = 0 for all g in gens}
fn orthogonal_preimage_rows(a: &DiscriminantForm, gens: &[Vec<u64>]) -> IntMatrix {
    let k = a.length();
    let m = gens.len();
    if m == 0 {
        return intmat::identity(k);
    }
    // b(x, g) = sum_i x_i b(e_i, g); scale to integers mod den
    let mut coeffs: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for g in gens {
        coeffs.push(
            (0..k)
                .map(|i| {
                    let mut e = vec![0u64; k];
                    e[i] = 1;
                    a.b(&e, g)
                })
                .collect(),
        );
    }
    let den = intmat::lcm_of_denominators(coeffs.iter().flatten());
    let scale = Rational::from_integer(den.clone());
    // kernel of [C | den*I] : Z^(k+m) -> Z^m
    let mut kmat: IntMatrix = vec![vec![BigInt::zero(); k + m]; m];
    for (j, row) in coeffs.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            kmat[j][i] = (c * &scale).to_integer();
        }
        kmat[j][k + j] = den.clone();
    }
    let smith = intmat::smith(&kmat);
    let r = smith.diag.iter().filter(|d| !d.is_zero()).count();
    let mut rows = diag_rows(a);
    for col in r..k + m {
        rows.push((0..k).map(|i| smith.v[i][col].clone()).collect());
    }
    intmat::hnf_rows(&rows, k)
}

// X with target = X * basis, both square of full rank
fn solve_rows(target: &IntMatrix, basis: &IntMatrix) -> IntMatrix {
    let inv = intmat::rat_inverse(&intmat::to_rational(basis)).expect("full rank");
    let x = intmat::rat_mul(&intmat::to_rational(target), &inv);
    x.iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    debug_assert!(c.is_integer(), "target lattice is contained in basis lattice");
                    c.to_integer()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(s: &str) -> IntegerLattice {
        IntegerLattice::from_named_sum(s).unwrap()
    }

    #[test]
    fn he7e7_unique_isotropic_element() {
        let a = lat("H+2(-E7)+(-A3)").discriminant_form().unwrap();
        let iso = isotropic_elements(&a, DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(iso, vec![vec![0, 0, 0], vec![1, 1, 2]]);
        let subs = isotropic_subgroups(&a, DEFAULT_ENUM_BOUND).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[1].generators, vec![vec![1, 1, 2]]);
        assert_eq!(subs[1].order, 2);
    }

    #[test]
    fn he7e7_overlattice() {
        let l = lat("H+2(-E7)+(-A3)");
        let a = l.discriminant_form().unwrap();
        let g = IsotropicSubgroup::new(&a, vec![vec![1, 1, 2]]).unwrap();
        let o = build_overlattice(&l, &g).unwrap();
        assert_eq!(o.index, 2);
        assert_eq!(o.lattice.discriminant(), 4);
        assert!(o.lattice.is_even());
        let abstract_form = overlattice_discriminant_form(&a, &g).unwrap();
        assert_eq!(abstract_form.invariant_factors(), &[4]);
        assert_eq!(abstract_form.q_values(), &[Rational::new(7.into(), 4.into())]);
        let direct = o.lattice.discriminant_form().unwrap();
        assert!(abstract_form.same_invariants(&direct, 100).unwrap());
    }

    #[test]
    fn trivial_subgroup_gives_identity() {
        let l = lat("<-2>+<4>");
        let o = build_overlattice(&l, &IsotropicSubgroup::trivial()).unwrap();
        assert_eq!(o.lattice, l);
        assert_eq!(o.inclusion, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(o.index, 1);
    }

    #[test]
    fn non_isotropic_rejected() {
        let l = lat("<-2>+<4>");
        let forced = IsotropicSubgroup { generators: vec![vec![1, 2]], order: 2 };
        assert!(matches!(build_overlattice(&l, &forced), Err(Error::NotIsotropic(_))));
        let a = l.discriminant_form().unwrap();
        assert_eq!(isotropic_elements(&a, 100).unwrap(), vec![vec![0, 0]]);
    }

    #[test]
    fn maximal_isotropic_reaches_unimodular() {
        // the largest isotropic subgroups of A_{8(-A1)} glue up to -E8
        let l = lat("8(-A1)");
        let a = l.discriminant_form().unwrap();
        let subs = isotropic_subgroups(&a, DEFAULT_ENUM_BOUND).unwrap();
        let top = subs.last().unwrap();
        assert_eq!(top.order, 16);
        assert!(overlattice_discriminant_form(&a, top).unwrap().is_trivial());
        assert_eq!(build_overlattice(&l, top).unwrap().lattice.discriminant(), 1);
    }
}
