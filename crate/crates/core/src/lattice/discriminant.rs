//! The discriminant group `A_L = L*/L` of an even lattice with its
//! quadratic form `q` (values mod 2) and bilinear form `b` (values mod 1).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{mod_floor_rational, IntegerLattice};
use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::Rational;

/// Elements are coordinate tuples `x` with `0 <= x[i] < invariant_factors[i]`
/// on the chosen generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantForm {
    invariant_factors: Vec<u64>,
    q_values: Vec<Rational>,
    b_matrix: Vec<Vec<Rational>>,
    generator_lifts: Vec<Vec<Rational>>,
    gram: Vec<Vec<i64>>,
    // coords(v) = projection * (gram * v) mod invariant_factors
    projection: Option<IntMatrix>,
    table: FormTable,
}

/// Invariants used to compare discriminant forms up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormInvariants {
    pub invariant_factors: Vec<u64>,
    /// `(q value in [0,2), number of elements)`, sorted by value.
    pub q_multiset: Vec<(Rational, u64)>,
}

// q and b scaled by a common denominator so element evaluation stays in i128.
#[derive(Debug, Clone, PartialEq, Eq)]
struct FormTable {
    den: i128,
    qn: Vec<i128>,
    bn: Vec<Vec<i128>>,
}

impl FormTable {
    fn new(q_values: &[Rational], b_matrix: &[Vec<Rational>]) -> Result<FormTable> {
        let den = intmat::lcm_of_denominators(q_values.iter().chain(b_matrix.iter().flatten()));
        let den_i = den.to_i128().filter(|d| *d < 1 << 40).ok_or(Error::Overflow("discriminant form denominator"))?;
        let scale = |r: &Rational| -> i128 {
            (r * Rational::from_integer(den.clone())).to_integer().to_i128().expect("bounded by denominator")
        };
        Ok(FormTable {
            den: den_i,
            qn: q_values.iter().map(scale).collect(),
            bn: b_matrix.iter().map(|row| row.iter().map(scale).collect()).collect(),
        })
    }

    fn q_num(&self, x: &[u64]) -> i128 {
        let m = 2 * self.den;
        let mut acc = 0i128;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as i128;
            acc = (acc + (xi * xi % m) * self.qn[i]) % m;
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    acc = (acc + 2 * ((xi * x[j] as i128) % m) * self.bn[i][j]) % m;
                }
            }
        }
        acc
    }

    fn b_num(&self, x: &[u64], y: &[u64]) -> i128 {
        let m = self.den;
        let mut acc = 0i128;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 {
                    acc = (acc + ((x[i] as i128 * y[j] as i128) % m) * self.bn[i][j]) % m;
                }
            }
        }
        acc
    }
}

pub(crate) struct RawGenerator {
    pub order: BigInt,
    pub lift: Vec<Rational>,
    pub projection: Option<Vec<BigInt>>,
}

pub(super) fn compute(lattice: &IntegerLattice) -> Result<DiscriminantForm> {
    if !lattice.is_even() {
        return Err(Error::OddLattice);
    }
    let n = lattice.rank();
    let mut gens = Vec::new();
    for block in components(lattice.gram()) {
        let sub: Vec<Vec<i64>> = block.iter().map(|&i| block.iter().map(|&j| lattice.entry(i, j)).collect()).collect();
        let smith = intmat::smith(&intmat::from_i64(&sub));
        for (k, d) in smith.diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let mut lift = vec![Rational::zero(); n];
            let mut proj = vec![BigInt::zero(); n];
            for (local, &global) in block.iter().enumerate() {
                lift[global] = Rational::new(smith.v[local][k].clone(), d.clone());
                proj[global] = smith.u[k][local].clone();
            }
            gens.push(RawGenerator { order: d.clone(), lift, projection: Some(proj) });
        }
    }
    DiscriminantForm::assemble(lattice.gram(), gens)
}

// connected components of the Gram graph, each sorted, ordered by first index
fn components(gram: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = gram.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && gram[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

impl DiscriminantForm {
    /// Builds a form from generators of a finite subgroup of `L*/L` whose
    /// orders multiply to its order and which generate it independently.
    /// Generators are stably sorted by order and, if the orders are not a
    /// divisibility chain, recombined through a Smith form of `diag(orders)`.
    pub(crate) fn assemble(gram: &[Vec<i64>], mut gens: Vec<RawGenerator>) -> Result<DiscriminantForm> {
        gens.retain(|g| !g.order.is_one());
        gens.sort_by(|a, b| a.order.cmp(&b.order));
        let chain = gens.windows(2).all(|w| w[1].order.is_multiple_of(&w[0].order));
        if !chain {
            gens = recombine(gens);
        }
        let n = gram.len();
        let invariant_factors = gens
            .iter()
            .map(|g| g.order.to_u64().ok_or(Error::Overflow("invariant factor")))
            .collect::<Result<Vec<_>>>()?;
        let lifts: Vec<Vec<Rational>> = gens.iter().map(|g| g.lift.clone()).collect();
        let projection = if gens.iter().all(|g| g.projection.is_some()) {
            Some(gens.into_iter().map(|g| g.projection.expect("checked")).collect())
        } else {
            None
        };
        let lat = IntegerLattice { gram: gram.to_vec() };
        let b_matrix: Vec<Vec<Rational>> = lifts
            .iter()
            .map(|u| lifts.iter().map(|v| mod_floor_rational(&lat.pairing_rational(u, v), 1)).collect())
            .collect();
        let q_values: Vec<Rational> = lifts.iter().map(|u| mod_floor_rational(&lat.pairing_rational(u, u), 2)).collect();
        debug_assert!(lifts.iter().all(|l| l.len() == n));
        let table = FormTable::new(&q_values, &b_matrix)?;
        Ok(DiscriminantForm {
            invariant_factors,
            q_values,
            b_matrix,
            generator_lifts: lifts,
            gram: gram.to_vec(),
            projection,
            table,
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// ℓ(A): the minimal number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn q_values(&self) -> &[Rational] {
        &self.q_values
    }

    pub fn b_matrix(&self) -> &[Vec<Rational>] {
        &self.b_matrix
    }

    pub fn generator_lifts(&self) -> &[Vec<Rational>] {
        &self.generator_lifts
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.length()]
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.length() && x.iter().zip(&self.invariant_factors).all(|(a, d)| a < d)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.invariant_factors).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.invariant_factors).map(|(a, d)| (d - a) % d).collect()
    }

    pub fn scale(&self, x: &[u64], k: u64) -> Vec<u64> {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| ((a as u128 * k as u128) % d as u128) as u64)
            .collect()
    }

    /// Additive order of an element.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| d / a.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Mixed-radix index, last coordinate fastest; matches [`Self::elements`].
    pub fn index_of(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.invariant_factors).fold(0, |acc, (&a, &d)| acc * d + a)
    }

    pub fn element_at(&self, mut index: u64) -> Vec<u64> {
        let mut out = vec![0; self.length()];
        for (slot, &d) in out.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    /// All elements in lexicographic order.
    pub fn elements(&self, bound: u64) -> Result<Vec<Vec<u64>>> {
        let order = self.checked_order(bound)?;
        Ok((0..order).map(|i| self.element_at(i)).collect())
    }

    pub(crate) fn checked_order(&self, bound: u64) -> Result<u64> {
        let order = self
            .invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .unwrap_or(u64::MAX);
        if order > bound {
            return Err(Error::GroupTooLarge { order, bound });
        }
        Ok(order)
    }

    /// `q(x)` in `[0, 2)`.
    pub fn q(&self, x: &[u64]) -> Rational {
        Rational::new(self.table.q_num(x).into(), self.table.den.into())
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> Rational {
        Rational::new(self.table.b_num(x, y).into(), self.table.den.into())
    }

    pub fn is_q_zero(&self, x: &[u64]) -> bool {
        self.table.q_num(x) == 0
    }

    pub fn is_b_zero(&self, x: &[u64], y: &[u64]) -> bool {
        self.table.b_num(x, y) == 0
    }

    /// A vector of `L*` (coordinates in the basis of `L`) representing `x`.
    pub fn lift_of(&self, x: &[u64]) -> Vec<Rational> {
        let n = self.gram.len();
        let mut out = vec![Rational::zero(); n];
        for (&c, lift) in x.iter().zip(&self.generator_lifts) {
            if c == 0 {
                continue;
            }
            let c = Rational::from_integer(c.into());
            for (o, l) in out.iter_mut().zip(lift) {
                *o += &c * l;
            }
        }
        out
    }

    /// Class in `A_L` of a vector of `L*`. Forms obtained abstractly (for
    /// instance as `G⊥/G`) carry no projection and report `NotInGroup`.
    pub fn class_of(&self, v: &[Rational]) -> Result<Vec<u64>> {
        let proj = self.projection.as_ref().ok_or(Error::NotInGroup)?;
        if v.len() != self.gram.len() {
            return Err(Error::NotInGroup);
        }
        let mut gv = Vec::with_capacity(v.len());
        for row in &self.gram {
            let x = row.iter().zip(v).fold(Rational::zero(), |a, (&g, c)| a + c * Rational::from_integer(g.into()));
            if !x.is_integer() {
                return Err(Error::NotInGroup);
            }
            gv.push(x.to_integer());
        }
        Ok(proj
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, &d)| {
                let s: BigInt = row.iter().zip(&gv).map(|(a, b)| a * b).sum();
                s.mod_floor(&BigInt::from(d)).to_u64().expect("reduced")
            })
            .collect())
    }

    /// Invariant factors plus the multiset of q over all elements.
    pub fn canonical(&self, bound: u64) -> Result<FormInvariants> {
        let order = self.checked_order(bound)?;
        let mut counts: BTreeMap<i128, u64> = BTreeMap::new();
        for i in 0..order {
            *counts.entry(self.table.q_num(&self.element_at(i))).or_default() += 1;
        }
        Ok(FormInvariants {
            invariant_factors: self.invariant_factors.clone(),
            q_multiset: counts
                .into_iter()
                .map(|(k, c)| (Rational::new(k.into(), self.table.den.into()), c))
                .collect(),
        })
    }

    pub fn same_invariants(&self, other: &DiscriminantForm, bound: u64) -> Result<bool> {
        Ok(self.canonical(bound)? == other.canonical(bound)?)
    }
}

fn recombine(gens: Vec<RawGenerator>) -> Vec<RawGenerator> {
    let m = gens.len();
    let mut diag = vec![vec![BigInt::zero(); m]; m];
    for (i, g) in gens.iter().enumerate() {
        diag[i][i] = g.order.clone();
    }
    let smith = intmat::smith(&diag);
    let u_inv = intmat::rat_inverse(&intmat::to_rational(&smith.u)).expect("unimodular");
    let n = gens[0].lift.len();
    let mut out = Vec::new();
    for (i, d) in smith.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let mut lift = vec![Rational::zero(); n];
        for (j, g) in gens.iter().enumerate() {
            let c = &u_inv[j][i];
            if c.is_zero() {
                continue;
            }
            for (o, l) in lift.iter_mut().zip(&g.lift) {
                *o += c * l;
            }
        }
        let projection = if gens.iter().all(|g| g.projection.is_some()) {
            let width = gens[0].projection.as_ref().map_or(0, |p| p.len());
            let mut row = vec![BigInt::zero(); width];
            for (j, g) in gens.iter().enumerate() {
                let c = &smith.u[i][j];
                for (o, p) in row.iter_mut().zip(g.projection.as_ref().expect("checked")) {
                    *o += c * p;
                }
            }
            Some(row)
        } else {
            None
        };
        out.push(RawGenerator { order: d.clone(), lift, projection });
    }
    out
}
