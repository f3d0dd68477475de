//! Kodaira fibers of Weierstrass models `Y²Z = X³ + αXZ² + βZ³` over the
//! projective line, with `α`, `β` binary forms of degrees `4d` and `6d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{gcdfree_basis, BinaryForm, Place};
use crate::lattice::{make_named, DiscriminantForm, IntegerLattice, LatticeSummary, NamedLattice};
use crate::overlattice::{build_overlattice, isotropic_subgroups, IsotropicSubgroup};
use crate::Rational;

/// Order of vanishing; `None` stands for an identically zero form and
/// satisfies every lower bound.
pub type Valuation = Option<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    d: u32,
    alpha: BinaryForm,
    beta: BinaryForm,
}

impl WeierstrassModel {
    pub fn new(d: u32, alpha: BinaryForm, beta: BinaryForm) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadParameter("line bundle degree d must be positive".into()));
        }
        let d_us = d as usize;
        if alpha.degree() != 4 * d_us {
            return Err(Error::DegreeMismatch(alpha.degree(), 4 * d_us));
        }
        if beta.degree() != 6 * d_us {
            return Err(Error::DegreeMismatch(beta.degree(), 6 * d_us));
        }
        Ok(WeierstrassModel { d, alpha, beta })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn alpha(&self) -> &BinaryForm {
        &self.alpha
    }

    pub fn beta(&self) -> &BinaryForm {
        &self.beta
    }

    pub fn is_k3(&self) -> bool {
        self.d == 2
    }
}

/// `Δ = 4α³ + 27β²`, of degree `12d`.
pub fn discriminant_model(m: &WeierstrassModel) -> Result<BinaryForm> {
    let four = Rational::from_integer(4.into());
    let tw7 = Rational::from_integer(27.into());
    let delta = m.alpha.pow(3).scale(&four).add(&m.beta.pow(2).scale(&tw7))?;
    if delta.is_zero() {
        return Err(Error::IdenticallyZeroDiscriminant);
    }
    Ok(delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl RootType {
    /// Positive definite root lattice.
    pub fn lattice(&self) -> IntegerLattice {
        let name = match *self {
            RootType::A(n) => NamedLattice::A(n as usize),
            RootType::D(n) => NamedLattice::D(n as usize),
            RootType::E6 => NamedLattice::E6,
            RootType::E7 => NamedLattice::E7,
            RootType::E8 => NamedLattice::E8,
        };
        make_named(name, false).expect("valid root system")
    }

    pub fn discriminant(&self) -> u64 {
        match *self {
            RootType::A(n) => n as u64 + 1,
            RootType::D(_) => 4,
            RootType::E6 => 3,
            RootType::E7 => 2,
            RootType::E8 => 1,
        }
    }

    pub fn rank(&self) -> u32 {
        match *self {
            RootType::A(n) | RootType::D(n) => n,
            RootType::E6 => 6,
            RootType::E7 => 7,
            RootType::E8 => 8,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E6 => write!(f, "E6"),
            RootType::E7 => write!(f, "E7"),
            RootType::E8 => write!(f, "E8"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`, `n >= 1`.
    I(u32),
    /// `I_n*`, `n >= 0`.
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn euler(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Root lattice spanned by the fiber components missing the zero section.
    pub fn root(&self) -> Option<RootType> {
        match *self {
            KodairaType::I(1) | KodairaType::II => None,
            KodairaType::I(n) => Some(RootType::A(n - 1)),
            KodairaType::IStar(n) => Some(RootType::D(n + 4)),
            KodairaType::III => Some(RootType::A(1)),
            KodairaType::IV => Some(RootType::A(2)),
            KodairaType::IVStar => Some(RootType::E6),
            KodairaType::IIIStar => Some(RootType::E7),
            KodairaType::IIStar => Some(RootType::E8),
        }
    }

    /// Surface singularity of the Weierstrass model at the fiber; same ADE
    /// label as the root lattice.
    pub fn singularity(&self) -> Option<RootType> {
        self.root()
    }

    pub fn parse(text: &str) -> Option<KodairaType> {
        Some(match text {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = text.strip_prefix('I')?;
                match rest.strip_suffix('*') {
                    Some(n) => KodairaType::IStar(n.parse().ok()?),
                    None => KodairaType::I(rest.parse().ok().filter(|&n| n >= 1)?),
                }
            }
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

fn ge(v: Valuation, n: u32) -> bool {
    v.is_none_or(|x| x >= n)
}

fn eq(v: Valuation, n: u32) -> bool {
    v == Some(n)
}

/// Every row of the Kodaira table matched by the triple; the three `I0*`
/// patterns are separate rows. Used to check that rows are exclusive.
pub fn table_matches(na: Valuation, nb: Valuation, nd: u32) -> Vec<KodairaType> {
    let mut out = Vec::new();
    if eq(na, 0) && eq(nb, 0) && nd >= 1 {
        out.push(KodairaType::I(nd));
    }
    if eq(na, 2) && eq(nb, 3) && nd == 6 {
        out.push(KodairaType::IStar(0));
    }
    if ge(na, 3) && eq(nb, 3) && nd == 6 {
        out.push(KodairaType::IStar(0));
    }
    if eq(na, 2) && ge(nb, 4) && nd == 6 {
        out.push(KodairaType::IStar(0));
    }
    if eq(na, 2) && eq(nb, 3) && nd >= 7 {
        out.push(KodairaType::IStar(nd - 6));
    }
    if ge(na, 1) && eq(nb, 1) && nd == 2 {
        out.push(KodairaType::II);
    }
    if eq(na, 1) && ge(nb, 2) && nd == 3 {
        out.push(KodairaType::III);
    }
    if ge(na, 2) && eq(nb, 2) && nd == 4 {
        out.push(KodairaType::IV);
    }
    if ge(na, 3) && eq(nb, 4) && nd == 8 {
        out.push(KodairaType::IVStar);
    }
    if eq(na, 3) && ge(nb, 5) && nd == 9 {
        out.push(KodairaType::IIIStar);
    }
    if ge(na, 4) && eq(nb, 5) && nd == 10 {
        out.push(KodairaType::IIStar);
    }
    out
}

pub fn classify_place(na: Valuation, nb: Valuation, nd: u32) -> Result<KodairaType> {
    if let Some(&t) = table_matches(na, nb, nd).first() {
        return Ok(t);
    }
    if ge(na, 4) && ge(nb, 6) {
        return Err(Error::NonMinimal { place: format!("with valuations ({}, {}, {nd})", show(na), show(nb)) });
    }
    Err(Error::NoRowMatch(na, nb, nd))
}

fn show(v: Valuation) -> String {
    v.map_or("inf".to_string(), |x| x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub place: Place,
    pub nu_alpha: Valuation,
    pub nu_beta: Valuation,
    pub nu_delta: u32,
    pub kodaira: KodairaType,
    /// Number of geometric fibers the place stands for.
    pub count: usize,
    /// Euler number of one fiber.
    pub euler: u32,
    pub root: Option<RootType>,
    pub singularity: Option<RootType>,
}

struct PlaceData {
    place: Place,
    na: Valuation,
    nb: Valuation,
    nd: u32,
}

fn place_data(m: &WeierstrassModel, delta: Option<&BinaryForm>) -> Result<Vec<PlaceData>> {
    let mut forms = Vec::new();
    let mut slots = [None, None, None];
    for (slot, f) in [Some(&m.alpha), Some(&m.beta), delta].into_iter().enumerate() {
        if let Some(f) = f.filter(|f| !f.is_zero()) {
            slots[slot] = Some(forms.len());
            forms.push(f.clone());
        }
    }
    if forms.is_empty() {
        return Ok(Vec::new());
    }
    let basis = gcdfree_basis(&forms)?;
    let val = |slot: usize, j: usize| slots[slot].map(|i| basis.valuations[i][j]);
    Ok(basis
        .places
        .iter()
        .enumerate()
        .map(|(j, p)| PlaceData { place: p.clone(), na: val(0, j), nb: val(1, j), nd: val(2, j).unwrap_or(0) })
        .collect())
}

/// One report per place of the discriminant, in place order.
pub fn classify_fibers(m: &WeierstrassModel) -> Result<Vec<FiberReport>> {
    let delta = discriminant_model(m)?;
    let mut out = Vec::new();
    for pd in place_data(m, Some(&delta))? {
        if pd.nd == 0 {
            continue;
        }
        let kodaira = classify_place(pd.na, pd.nb, pd.nd).map_err(|e| match e {
            Error::NonMinimal { .. } => Error::NonMinimal { place: pd.place.to_string() },
            other => other,
        })?;
        out.push(FiberReport {
            count: pd.place.geometric_count(),
            place: pd.place,
            nu_alpha: pd.na,
            nu_beta: pd.nb,
            nu_delta: pd.nd,
            kodaira,
            euler: kodaira.euler(),
            root: kodaira.root(),
            singularity: kodaira.singularity(),
        });
    }
    Ok(out)
}

/// `Σ count · e`; equals `12d` for minimal models.
pub fn euler_total(m: &WeierstrassModel) -> Result<u64> {
    Ok(classify_fibers(m)?.iter().map(|f| f.count as u64 * f.euler as u64).sum())
}

/// Root summands `(type, multiplicity)` in place order.
pub fn trivial_lattice_summands(fibers: &[FiberReport]) -> Vec<(RootType, usize)> {
    fibers.iter().filter_map(|f| f.root.map(|r| (r, f.count))).collect()
}

/// `H ⊕ ⊕ (−R_p)^count`, summands in place order.
pub fn trivial_lattice(m: &WeierstrassModel) -> Result<IntegerLattice> {
    Ok(trivial_lattice_from_fibers(&classify_fibers(m)?))
}

fn trivial_lattice_from_fibers(fibers: &[FiberReport]) -> IntegerLattice {
    let mut l = make_named(NamedLattice::H, false).expect("H");
    for (r, count) in trivial_lattice_summands(fibers) {
        let neg = r.lattice().negated();
        for _ in 0..count {
            l = l.direct_sum(&neg);
        }
    }
    l
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionCandidate {
    pub subgroup: IsotropicSubgroup,
    /// Abstract structure, e.g. `[2]` for `ℤ/2`; empty for the trivial group.
    pub invariant_factors: Vec<u64>,
}

/// Isotropic subgroups of the discriminant group of the trivial lattice:
/// the possible torsion subgroups of the Mordell–Weil group.
pub fn mw_torsion_candidates(m: &WeierstrassModel, bound: u64) -> Result<Vec<TorsionCandidate>> {
    torsion_from_lattice(&trivial_lattice(m)?, bound)
}

fn torsion_from_lattice(l: &IntegerLattice, bound: u64) -> Result<Vec<TorsionCandidate>> {
    let a = l.discriminant_form()?;
    Ok(isotropic_subgroups(&a, bound)?
        .into_iter()
        .map(|g| TorsionCandidate { invariant_factors: g.invariant_factors(&a), subgroup: g })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationCandidate {
    pub torsion: Vec<u64>,
    pub index: u64,
    pub lattice: IntegerLattice,
    pub summary: LatticeSummary,
}

/// For each torsion candidate, the overlattice of the trivial lattice it determines.
pub fn candidate_polarizations(m: &WeierstrassModel, bound: u64) -> Result<Vec<PolarizationCandidate>> {
    polarizations_from_lattice(&trivial_lattice(m)?, bound)
}

fn polarizations_from_lattice(l: &IntegerLattice, bound: u64) -> Result<Vec<PolarizationCandidate>> {
    torsion_from_lattice(l, bound)?
        .into_iter()
        .map(|c| {
            let o = build_overlattice(l, &c.subgroup)?;
            Ok(PolarizationCandidate {
                torsion: c.invariant_factors,
                index: o.index,
                summary: o.lattice.summary(bound),
                lattice: o.lattice,
            })
        })
        .collect()
}

/// Does `X³ + αX + β` vanish identically? Then `(X, 0)` is a section of
/// order two.
pub fn verify_two_torsion_section(m: &WeierstrassModel, x: &BinaryForm) -> Result<bool> {
    let want = 2 * m.d as usize;
    if x.degree() != want {
        return Err(Error::DegreeMismatch(x.degree(), want));
    }
    let lhs = x.pow(3).add(&m.alpha.mul(x))?.add(&m.beta)?;
    Ok(lhs.is_zero())
}

/// Divide out `p⁴`, `p⁶` at every place with `ν(α) >= 4` and `ν(β) >= 6`,
/// lowering `d` by `deg p` each time, until the model is minimal.
pub fn reduce_non_minimal(m: &WeierstrassModel) -> Result<WeierstrassModel> {
    let mut cur = m.clone();
    let mut reduced = false;
    loop {
        let bad = place_data(&cur, None)?
            .into_iter()
            .find(|pd| ge(pd.na, 4) && ge(pd.nb, 6));
        let Some(pd) = bad else { break };
        let deg = pd.place.geometric_count() as i64;
        let new_d = cur.d as i64 - deg;
        if new_d < 1 {
            return Err(Error::DegreeUnderflow(new_d));
        }
        let p = pd.place.form();
        let divide = |f: &BinaryForm, k: u32, new_deg: usize| {
            if f.is_zero() {
                BinaryForm::zero(new_deg)
            } else {
                f.div_exact(&p.pow(k)).expect("valuation checked")
            }
        };
        let nd = new_d as usize;
        cur = WeierstrassModel::new(new_d as u32, divide(&cur.alpha, 4, 4 * nd), divide(&cur.beta, 6, 6 * nd))?;
        reduced = true;
    }
    if !reduced {
        return Err(Error::AlreadyMinimal);
    }
    Ok(cur)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub fibers: Vec<FiberReport>,
    pub euler_total: u64,
    pub trivial_lattice: IntegerLattice,
    pub root_summands: Vec<(RootType, usize)>,
    pub disc_form: DiscriminantForm,
    pub torsion_candidates: Vec<TorsionCandidate>,
    pub polarization_candidates: Vec<PolarizationCandidate>,
}

pub fn analyze(m: &WeierstrassModel, bound: u64) -> Result<SurfaceReport> {
    let fibers = classify_fibers(m)?;
    let euler_total = fibers.iter().map(|f| f.count as u64 * f.euler as u64).sum();
    let trivial_lattice = trivial_lattice_from_fibers(&fibers);
    let disc_form = trivial_lattice.discriminant_form()?;
    let torsion_candidates = torsion_from_lattice(&trivial_lattice, bound)?;
    let polarization_candidates = polarizations_from_lattice(&trivial_lattice, bound)?;
    Ok(SurfaceReport {
        root_summands: trivial_lattice_summands(&fibers),
        fibers,
        euler_total,
        trivial_lattice,
        disc_form,
        torsion_candidates,
        polarization_candidates,
    })
}

/// The rank-18 family: `α = s⁴t⁴`, `β = s⁵t⁵(a s² + b st + c t²)`.
pub fn two_ii_star_family(a: &Rational, b: &Rational, c: &Rational) -> WeierstrassModel {
    let one = Rational::from_integer(1.into());
    let alpha = BinaryForm::monomial(one.clone(), 4, 4);
    let quad = BinaryForm::new(vec![a.clone(), b.clone(), c.clone()]).expect("quadratic");
    let beta = BinaryForm::monomial(one, 5, 5).mul(&quad);
    WeierstrassModel::new(2, alpha, beta).expect("degrees 8 and 12")
}

/// The rank-19 family with `u = (s+t)²`, `w = st`:
/// `α = w³(48 l u − w)/3`, `β = −2 w⁵(72 l u − w)/27`.
/// It carries the two-torsion section `X = w²/3`.
pub fn two_iii_star_family(l: &Rational) -> WeierstrassModel {
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let u = BinaryForm::from_ints(&[1, 2, 1]);
    let w = BinaryForm::from_ints(&[0, 1, 0]);
    let lin = |k: i64| u.scale(&(l * q(k, 1))).sub(&w).expect("both quadratic");
    let alpha = w.pow(3).mul(&lin(48)).scale(&q(1, 3));
    let beta = w.pow(5).mul(&lin(72)).scale(&q(-2, 27));
    WeierstrassModel::new(2, alpha, beta).expect("degrees 8 and 12")
}

/// `X = s²t²/3`, the two-torsion section of [`two_iii_star_family`].
pub fn two_iii_star_section() -> BinaryForm {
    BinaryForm::monomial(Rational::new(1.into(), 3.into()), 2, 2)
}
