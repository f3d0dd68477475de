//! Reflections in (−2)-classes and the ample chamber of a rank-2
//! hyperbolic lattice, plus isotropic-vector criteria for genus-one and
//! elliptic fibrations.
//!
//! Chamber walls come from a bounded enumeration of (−2)-classes. A result
//! is only reported when the walls are unchanged after doubling the bound.

use std::fmt;

use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{IntegerLattice, SignaturePair};
use crate::Rational;

/// Basis `(E, O)` of fiber and zero section: Gram `[[0,1],[1,-2]]`,
/// isometric to the hyperbolic plane.
pub fn fiber_section_plane() -> IntegerLattice {
    IntegerLattice::new(vec![vec![0, 1], vec![1, -2]]).expect("unimodular")
}

/// Basis `(C, H)` of a nodal curve and a hyperplane class: Gram `diag(-2, 4)`.
pub fn nodal_quartic_lattice() -> IntegerLattice {
    IntegerLattice::new(vec![vec![-2, 0], vec![0, 4]]).expect("nondegenerate")
}

fn to_i64(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

fn check_rank2(l: &IntegerLattice) -> Result<()> {
    if l.rank() != 2 {
        return Err(Error::NotRank2(l.rank()));
    }
    Ok(())
}

fn check_len(l: &IntegerLattice, v: &[i64]) -> Result<()> {
    if v.len() != l.rank() {
        return Err(Error::BadParameter(format!("class {v:?} does not have {} coordinates", l.rank())));
    }
    Ok(())
}

/// Primitive representative with first nonzero coordinate positive.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    let sign = if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) { -1 } else { 1 };
    v.iter().map(|&x| sign * x / g).collect()
}

fn primitive_keep_sign(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

/// `u + <u, δ> δ`.
pub fn reflect(l: &IntegerLattice, u: &[i64], delta: &[i64]) -> Result<Vec<i64>> {
    check_len(l, u)?;
    check_len(l, delta)?;
    if l.norm(delta) != -2 {
        return Err(Error::NotRoot);
    }
    let k = l.pairing(u, delta);
    u.iter()
        .zip(delta)
        .map(|(&a, &d)| to_i64(a as i128 + k * d as i128, "reflection"))
        .collect()
}

/// Integer solutions of `<v, v> = -2` with coordinates bounded by
/// `height_bound` in absolute value. Ordered by height, each class
/// followed by its negative.
pub fn minus_two_classes(l: &IntegerLattice, height_bound: i64) -> Result<Vec<Vec<i64>>> {
    check_rank2(l)?;
    let (a, b, c) = (l.entry(0, 0) as i128, l.entry(0, 1) as i128, l.entry(1, 1) as i128);
    let hb = height_bound as i128;
    let mut reps: Vec<(i128, i128)> = Vec::new();
    for x in 0..=hb {
        // c y² + 2 b x y + (a x² + 2) = 0
        let (qa, qb, qc) = (c, 2 * b * x, a * x * x + 2);
        let ys: Vec<i128> = if qa == 0 {
            if qb != 0 && qc % qb == 0 {
                vec![-qc / qb]
            } else {
                Vec::new()
            }
        } else {
            let disc = qb * qb - 4 * qa * qc;
            if disc < 0 {
                Vec::new()
            } else {
                let s = disc.sqrt();
                if s * s != disc {
                    Vec::new()
                } else {
                    [-qb + s, -qb - s]
                        .into_iter()
                        .filter(|num| num % (2 * qa) == 0)
                        .map(|num| num / (2 * qa))
                        .collect()
                }
            }
        };
        for y in ys {
            if y.abs() <= hb && (x > 0 || y > 0) && !reps.contains(&(x, y)) {
                reps.push((x, y));
            }
        }
    }
    reps.sort_by_key(|&(x, y)| (x.abs().max(y.abs()), x, y));
    let mut out = Vec::with_capacity(2 * reps.len());
    for (x, y) in reps {
        out.push(vec![x as i64, y as i64]);
        out.push(vec![-x as i64, -y as i64]);
    }
    Ok(out)
}

/// Boundary ray of the ample chamber.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoundaryRay {
    /// Primitive integral class.
    Rational(Vec<i64>),
    /// Direction with coordinates `rational[i] + irrational[i] * √d`,
    /// `d > 1` square-free.
    Quadratic { rational: Vec<i64>, irrational: Vec<i64>, d: i64 },
}

impl BoundaryRay {
    pub fn is_rational(&self) -> bool {
        matches!(self, BoundaryRay::Rational(_))
    }

    pub fn as_class(&self) -> Option<&[i64]> {
        match self {
            BoundaryRay::Rational(v) => Some(v),
            BoundaryRay::Quadratic { .. } => None,
        }
    }
}

impl fmt::Display for BoundaryRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryRay::Rational(v) => write!(f, "{v:?}"),
            BoundaryRay::Quadratic { rational, irrational, d } => {
                let parts: Vec<String> = rational
                    .iter()
                    .zip(irrational)
                    .map(|(p, q)| format!("{p}{}{}*sqrt({d})", if *q < 0 { "-" } else { "+" }, q.abs()))
                    .collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberReport {
    pub ample: Vec<i64>,
    /// Effective (−2)-classes whose orthogonals bound the chamber.
    pub walls: Vec<Vec<i64>>,
    /// The two boundary rays of the chamber.
    pub rays: [BoundaryRay; 2],
    pub rational_polyhedral: bool,
    /// No (−2)-classes found: the Weyl group is trivial.
    pub weyl_trivial: bool,
    pub height_bound: i64,
}

fn check_hyperbolic(l: &IntegerLattice) -> Result<()> {
    if l.signature() != (SignaturePair { positive: 1, negative: l.rank() - 1 }) {
        return Err(Error::BadSignature);
    }
    Ok(())
}

fn squarefree_split(n: i128) -> (i128, i128) {
    // n = k² d with d square-free
    let (mut k, mut d, mut rest) = (1i128, 1i128, n);
    let mut p = 2i128;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            k *= p;
        }
        if rest % p == 0 {
            rest /= p;
            d *= p;
        }
        p += 1;
    }
    (k, d * rest)
}

struct ChamberCore {
    walls: Vec<Vec<i64>>,
    rays: [BoundaryRay; 2],
    weyl_trivial: bool,
}

fn chamber_at(l: &IntegerLattice, h: &[i64], bound: i64) -> Result<ChamberCore> {
    let roots = minus_two_classes(l, bound)?;
    let g = l.gram();
    let gh = [g[0][0] as i128 * h[0] as i128 + g[0][1] as i128 * h[1] as i128, g[1][0] as i128 * h[0] as i128 + g[1][1] as i128 * h[1] as i128];
    // w ⊥ h; directions in the positive cone are h + τ w
    let w = vec![to_i64(-gh[1], "chamber")?, to_i64(gh[0], "chamber")?];
    let mut lower: Option<(Rational, Vec<i64>)> = None;
    let mut upper: Option<(Rational, Vec<i64>)> = None;
    for delta in &roots {
        let hd = l.pairing(h, delta);
        if hd == 0 {
            return Err(Error::OnWall(h.to_vec(), delta.clone()));
        }
        if hd < 0 {
            continue;
        }
        let wd = l.pairing(&w, delta);
        let tau = Rational::new((-hd).into(), wd.into());
        if wd > 0 {
            if lower.as_ref().is_none_or(|(t, _)| tau > *t) {
                lower = Some((tau, delta.clone()));
            }
        } else if upper.as_ref().is_none_or(|(t, _)| tau < *t) {
            upper = Some((tau, delta.clone()));
        }
    }
    let n = l.norm(h);
    let m = -l.norm(&w);
    let (k, d) = squarefree_split(n * m);
    let side = |bound: &Option<(Rational, Vec<i64>)>, sign: i128| -> Result<BoundaryRay> {
        Ok(match bound {
            Some((_, delta)) => {
                let gd = [
                    g[0][0] as i128 * delta[0] as i128 + g[0][1] as i128 * delta[1] as i128,
                    g[1][0] as i128 * delta[0] as i128 + g[1][1] as i128 * delta[1] as i128,
                ];
                let mut r = vec![to_i64(-gd[1], "ray")?, to_i64(gd[0], "ray")?];
                if l.pairing(&r, h) < 0 {
                    r = r.iter().map(|x| -x).collect();
                }
                BoundaryRay::Rational(primitive_keep_sign(&r))
            }
            None => {
                // h ± (k/m) √d w, scaled by m
                let a: Vec<i128> = h.iter().map(|&x| m * x as i128).collect();
                let b: Vec<i128> = w.iter().map(|&x| sign * k * x as i128).collect();
                if d == 1 {
                    let v = a.iter().zip(&b).map(|(x, y)| to_i64(x + y, "ray")).collect::<Result<Vec<_>>>()?;
                    BoundaryRay::Rational(primitive_keep_sign(&v))
                } else {
                    let gcd = a.iter().chain(&b).fold(0i128, |acc, &x| acc.gcd(&x));
                    BoundaryRay::Quadratic {
                        rational: a.iter().map(|x| to_i64(x / gcd, "ray")).collect::<Result<_>>()?,
                        irrational: b.iter().map(|x| to_i64(x / gcd, "ray")).collect::<Result<_>>()?,
                        d: to_i64(d, "ray")?,
                    }
                }
            }
        })
    };
    let rays = [side(&lower, -1)?, side(&upper, 1)?];
    let walls = [lower, upper].into_iter().flatten().map(|(_, d)| d).collect();
    Ok(ChamberCore { walls, rays, weyl_trivial: roots.is_empty() })
}

/// The chamber of the positive cone containing `h`, cut out by the
/// effective (−2)-classes (those with `<h, δ> > 0`).
pub fn ample_chamber(l: &IntegerLattice, h: &[i64], height_bound: i64) -> Result<ChamberReport> {
    check_rank2(l)?;
    check_len(l, h)?;
    if height_bound < 1 {
        return Err(Error::BadParameter("height bound must be positive".into()));
    }
    if l.norm(h) <= 0 {
        return Err(Error::NotPositive);
    }
    check_hyperbolic(l)?;
    let core = chamber_at(l, h, height_bound)?;
    let doubled = height_bound.checked_mul(2).ok_or(Error::Overflow("height bound"))?;
    let check = chamber_at(l, h, doubled)?;
    if check.walls != core.walls {
        return Err(Error::Unstable(doubled));
    }
    Ok(ChamberReport {
        ample: h.to_vec(),
        rational_polyhedral: core.rays.iter().all(BoundaryRay::is_rational),
        walls: core.walls,
        rays: core.rays,
        weyl_trivial: core.weyl_trivial,
        height_bound,
    })
}

/// Reflect alternately in the walls, starting with the first wall that
/// moves `ray`. Returns `steps` primitive classes beginning with `ray`.
pub fn weyl_orbit_rays(l: &IntegerLattice, ray: &[i64], walls: &[Vec<i64>], steps: usize) -> Result<Vec<Vec<i64>>> {
    check_len(l, ray)?;
    for w in walls {
        check_len(l, w)?;
        if l.norm(w) != -2 {
            return Err(Error::NotRoot);
        }
    }
    let mut out = Vec::with_capacity(steps);
    if steps == 0 {
        return Ok(out);
    }
    let mut cur = primitive_keep_sign(ray);
    out.push(cur.clone());
    if walls.is_empty() {
        out.resize(steps, cur);
        return Ok(out);
    }
    let mut idx = walls.iter().position(|w| l.pairing(&cur, w) != 0).unwrap_or(0);
    while out.len() < steps {
        cur = primitive_keep_sign(&reflect(l, &cur, &walls[idx])?);
        out.push(cur.clone());
        idx = (idx + 1) % walls.len();
    }
    Ok(out)
}

/// Reflect `u` in chamber walls it pairs negatively with until it lands in
/// the closed chamber. Returns the class and the number of reflections.
pub fn normalize_into_chamber(chamber: &ChamberReport, l: &IntegerLattice, u: &[i64], max_steps: usize) -> Result<(Vec<i64>, usize)> {
    check_len(l, u)?;
    let mut cur = u.to_vec();
    for step in 0..=max_steps {
        match chamber.walls.iter().find(|w| l.pairing(&cur, w) < 0) {
            None => return Ok((cur, step)),
            Some(w) if step < max_steps => cur = reflect(l, &cur, w)?,
            Some(_) => break,
        }
    }
    Err(Error::Unstable(max_steps as i64))
}

/// Isotropic directions of a rank-2 form `a x² + 2 b x y + c y²`.
fn isotropic_directions(l: &IntegerLattice) -> Vec<Vec<i64>> {
    let (a, b, c) = (l.entry(0, 0) as i128, l.entry(0, 1) as i128, l.entry(1, 1) as i128);
    let disc = b * b - a * c;
    if disc < 0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    if s * s != disc {
        return Vec::new();
    }
    let raw: Vec<(i128, i128)> = if a == 0 { vec![(1, 0), (-c, 2 * b)] } else { vec![(s - b, a), (-s - b, a)] };
    let mut out: Vec<Vec<i64>> = Vec::new();
    for (x, y) in raw {
        let g = x.gcd(&y);
        let v = primitive(&[(x / g) as i64, (y / g) as i64]);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// A primitive class of square zero, if any.
pub fn isotropic_class(l: &IntegerLattice) -> Result<Option<Vec<i64>>> {
    check_rank2(l)?;
    Ok(isotropic_directions(l).into_iter().next())
}

/// Is there a primitive isotropic `u` with `<u, L> = ℤ`? In rank 2 this is
/// the same as containing a copy of the hyperbolic plane.
pub fn admits_elliptic_section(l: &IntegerLattice) -> Result<bool> {
    check_rank2(l)?;
    Ok(isotropic_directions(l).iter().any(|u| {
        let g0 = l.pairing(u, &[1, 0]);
        let g1 = l.pairing(u, &[0, 1]);
        g0.gcd(&g1) == 1
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FibrationVerdict {
    Yes(Vec<i64>),
    /// Guaranteed in rank at least 5, but no witness found within the search.
    YesNoWitness,
    No,
    Inconclusive,
}

impl FibrationVerdict {
    pub fn exists(&self) -> Option<bool> {
        match self {
            FibrationVerdict::Yes(_) | FibrationVerdict::YesNoWitness => Some(true),
            FibrationVerdict::No => Some(false),
            FibrationVerdict::Inconclusive => None,
        }
    }

    pub fn witness(&self) -> Option<&[i64]> {
        match self {
            FibrationVerdict::Yes(w) => Some(w),
            _ => None,
        }
    }
}

/// Cap on vectors examined by the bounded isotropic search.
pub const SEARCH_BUDGET: u64 = 4_000_000;

/// Does the lattice contain a nonzero vector of square zero?
pub fn genus_one_fibration_exists(l: &IntegerLattice, search_bound: i64) -> Result<FibrationVerdict> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    check_hyperbolic(l)?;
    let n = l.rank();
    if n == 1 {
        return Ok(FibrationVerdict::No);
    }
    if n == 2 {
        return Ok(match isotropic_class(l)? {
            Some(w) => FibrationVerdict::Yes(w),
            None => FibrationVerdict::No,
        });
    }
    if let Some(w) = easy_isotropic(l) {
        return Ok(FibrationVerdict::Yes(w));
    }
    match bounded_isotropic_search(l, search_bound, SEARCH_BUDGET) {
        Some(w) => Ok(FibrationVerdict::Yes(w)),
        None if n >= 5 => Ok(FibrationVerdict::YesNoWitness),
        None => Ok(FibrationVerdict::Inconclusive),
    }
}

// zero diagonal entries, then isotropic principal 2x2 blocks
fn easy_isotropic(l: &IntegerLattice) -> Option<Vec<i64>> {
    let n = l.rank();
    if let Some(i) = (0..n).find(|&i| l.entry(i, i) == 0) {
        let mut v = vec![0; n];
        v[i] = 1;
        return Some(v);
    }
    for i in 0..n {
        for j in i + 1..n {
            let block = IntegerLattice::new(vec![vec![l.entry(i, i), l.entry(i, j)], vec![l.entry(j, i), l.entry(j, j)]]);
            if let Ok(block) = block {
                if let Some(u) = isotropic_directions(&block).into_iter().next() {
                    let mut v = vec![0; n];
                    v[i] = u[0];
                    v[j] = u[1];
                    return Some(v);
                }
            }
        }
    }
    None
}

/// Search prefixes in growing boxes and solve for the last coordinate.
fn bounded_isotropic_search(l: &IntegerLattice, bound: i64, budget: u64) -> Option<Vec<i64>> {
    let n = l.rank();
    let last = n - 1;
    let c = l.entry(last, last) as i128;
    if c == 0 {
        let mut v = vec![0; n];
        v[last] = 1;
        return Some(v);
    }
    let mut work = 0u64;
    for h in 1..=bound {
        let mut x = vec![-h; last];
        loop {
            if x.iter().any(|&v| v.abs() == h) {
                work += 1;
                if work > budget {
                    return None;
                }
                let mut v = x.clone();
                v.push(0);
                let q = l.norm(&v);
                let lin: i128 = (0..last).map(|i| l.entry(last, i) as i128 * x[i] as i128).sum();
                // c y² + 2 lin y + q = 0
                let disc = lin * lin - c * q;
                if disc >= 0 {
                    let s = disc.sqrt();
                    if s * s == disc {
                        for num in [-lin + s, -lin - s] {
                            if num % c == 0 {
                                if let Ok(y) = i64::try_from(num / c) {
                                    v[last] = y;
                                    if v.iter().any(|&e| e != 0) {
                                        return Some(primitive(&v));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            // odometer
            let mut i = 0;
            while i < last {
                if x[i] < h {
                    x[i] += 1;
                    break;
                }
                x[i] = -h;
                i += 1;
            }
            if i == last {
                break;
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutVerdict {
    Finite,
    Infinite,
    Inconclusive,
}

/// Finite iff the ample chamber is rational polyhedral.
pub fn aut_finiteness_rank2(l: &IntegerLattice, h: &[i64], height_bound: i64) -> Result<AutVerdict> {
    match ample_chamber(l, h, height_bound) {
        Ok(c) if c.rational_polyhedral => Ok(AutVerdict::Finite),
        Ok(_) => Ok(AutVerdict::Infinite),
        Err(Error::Unstable(_)) => Ok(AutVerdict::Inconclusive),
        Err(e) => Err(e),
    }
}

/// Exact sign of `<u, v>` where `v = a + b √d` has quadratic coordinates.
pub fn pairing_sign_with_ray(l: &IntegerLattice, u: &[i64], ray: &BoundaryRay) -> i32 {
    match ray {
        BoundaryRay::Rational(v) => l.pairing(u, v).signum() as i32,
        BoundaryRay::Quadratic { rational, irrational, d } => {
            let p = l.pairing(u, rational);
            let q = l.pairing(u, irrational);
            sign_of_surd(p, q, *d as i128)
        }
    }
}

fn sign_of_surd(p: i128, q: i128, d: i128) -> i32 {
    // sign of p + q √d
    let (sp, sq) = (p.signum(), q.signum());
    if sq == 0 || sp == sq {
        return if sp != 0 { sp as i32 } else { sq as i32 };
    }
    if sp == 0 {
        return sq as i32;
    }
    let lhs = Rational::from_integer((p * p).into());
    let rhs = Rational::from_integer((q * q).into()) * Rational::from_integer(d.into());
    if lhs > rhs {
        sp as i32
    } else {
        sq as i32
    }
}

/// Value of `<v, v>` for a quadratic ray, as `(rational part, surd part)`.
pub fn ray_norm(l: &IntegerLattice, ray: &BoundaryRay) -> (Rational, Rational) {
    match ray {
        BoundaryRay::Rational(v) => (Rational::from_integer(l.norm(v).into()), Rational::zero()),
        BoundaryRay::Quadratic { rational, irrational, d } => {
            let aa = l.norm(rational);
            let bb = l.norm(irrational);
            let ab = l.pairing(rational, irrational);
            (
                Rational::from_integer((aa + *d as i128 * bb).into()),
                Rational::from_integer((2 * ab).into()),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram(g: [[i64; 2]; 2]) -> IntegerLattice {
        IntegerLattice::new(g.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn reflections_in_nodal_quartic() {
        let l = nodal_quartic_lattice();
        assert_eq!(reflect(&l, &[-4, 3], &[1, 0]).unwrap(), vec![4, 3]);
        assert_eq!(reflect(&l, &[0, 1], &[1, 0]).unwrap(), vec![0, 1]);
        assert_eq!(reflect(&l, &[0, 1], &[-3, 2]).unwrap(), vec![-24, 17]);
        assert_eq!(reflect(&l, &[0, 1], &[0, 1]), Err(Error::NotRoot));
    }

    #[test]
    fn roots() {
        assert_eq!(minus_two_classes(&fiber_section_plane(), 10).unwrap(), vec![vec![0, 1], vec![0, -1]]);
        assert!(minus_two_classes(&gram([[4, 2], [2, -4]]), 50).unwrap().is_empty());
        let r = minus_two_classes(&nodal_quartic_lattice(), 5).unwrap();
        for v in [[1, 0], [-1, 0], [3, 2], [-3, -2], [3, -2], [-3, 2]] {
            assert!(r.contains(&v.to_vec()), "{v:?}");
        }
    }

    #[test]
    fn chamber_of_fiber_section_plane() {
        let c = ample_chamber(&fiber_section_plane(), &[3, 1], 100).unwrap();
        assert_eq!(c.walls, vec![vec![0, 1]]);
        let rays: Vec<_> = c.rays.iter().map(|r| r.as_class().unwrap().to_vec()).collect();
        assert!(rays.contains(&vec![1, 0]) && rays.contains(&vec![2, 1]));
        assert!(c.rational_polyhedral);
    }

    #[test]
    fn chamber_of_nodal_quartic() {
        let l = nodal_quartic_lattice();
        let c = ample_chamber(&l, &[-1, 1], 100).unwrap();
        let mut walls = c.walls.clone();
        walls.sort();
        assert_eq!(walls, vec![vec![-3, 2], vec![1, 0]]);
        let rays: Vec<_> = c.rays.iter().map(|r| r.as_class().unwrap().to_vec()).collect();
        assert!(rays.contains(&vec![0, 1]) && rays.contains(&vec![-4, 3]));
        assert_eq!(ample_chamber(&l, &[0, 1], 100), Err(Error::OnWall(vec![0, 1], vec![1, 0])));
        assert_eq!(ample_chamber(&l, &[1, 0], 100), Err(Error::NotPositive));
    }

    #[test]
    fn chamber_without_roots() {
        let l = gram([[4, 2], [2, -4]]);
        let c = ample_chamber(&l, &[1, 0], 50).unwrap();
        assert!(c.walls.is_empty());
        assert!(c.weyl_trivial);
        for r in &c.rays {
            match r {
                BoundaryRay::Quadratic { d, .. } => assert_eq!(*d, 5),
                other => panic!("expected quadratic ray, got {other}"),
            }
            assert_eq!(ray_norm(&l, r), (Rational::zero(), Rational::zero()));
            assert_eq!(pairing_sign_with_ray(&l, &[1, 0], r), 1);
        }
        assert_eq!(aut_finiteness_rank2(&l, &[1, 0], 50), Ok(AutVerdict::Infinite));
    }

    #[test]
    fn pell_orbits() {
        let l = nodal_quartic_lattice();
        let walls = vec![vec![1, 0], vec![-3, 2]];
        let orbit = weyl_orbit_rays(&l, &[0, 1], &walls, 4).unwrap();
        assert_eq!(orbit, vec![vec![0, 1], vec![-24, 17], vec![24, 17], vec![-816, 577]]);
        let orbit = weyl_orbit_rays(&l, &[-4, 3], &walls, 3).unwrap();
        assert_eq!(orbit, vec![vec![-4, 3], vec![4, 3], vec![-140, 99]]);
        let p = fiber_section_plane();
        assert_eq!(weyl_orbit_rays(&p, &[2, 1], &[vec![0, 1]], 2).unwrap(), vec![vec![2, 1], vec![2, 1]]);
    }

    #[test]
    fn isotropic_and_sections() {
        let g = gram([[0, 3], [3, 2]]);
        assert_eq!(isotropic_class(&g).unwrap(), Some(vec![1, 0]));
        assert!(!admits_elliptic_section(&g).unwrap());
        assert_eq!(isotropic_class(&nodal_quartic_lattice()).unwrap(), None);
        let h = gram([[0, 1], [1, 0]]);
        assert_eq!(isotropic_class(&h).unwrap(), Some(vec![1, 0]));
        assert!(admits_elliptic_section(&h).unwrap());
        assert!(admits_elliptic_section(&fiber_section_plane()).unwrap());
    }

    #[test]
    fn fibration_verdicts() {
        let rank19 = IntegerLattice::from_named_sum("H+2(-E8)+<-4>").unwrap();
        let v = genus_one_fibration_exists(&rank19, 3).unwrap();
        assert_eq!(v.witness().unwrap()[..2], [1, 0]);
        assert_eq!(genus_one_fibration_exists(&nodal_quartic_lattice(), 10), Ok(FibrationVerdict::No));
        let r5 = IntegerLattice::from_named_sum("<2>+4(-A1)").unwrap();
        let v = genus_one_fibration_exists(&r5, 5).unwrap();
        let w = v.witness().expect("1 + ... small witness");
        assert_eq!(r5.norm(w), 0);
        assert_eq!(genus_one_fibration_exists(&IntegerLattice::from_named_sum("-E8").unwrap(), 3), Err(Error::BadSignature));
    }

    #[test]
    fn aut_verdicts() {
        assert_eq!(aut_finiteness_rank2(&fiber_section_plane(), &[3, 1], 100), Ok(AutVerdict::Finite));
        assert_eq!(aut_finiteness_rank2(&nodal_quartic_lattice(), &[-1, 1], 100), Ok(AutVerdict::Finite));
    }
}
