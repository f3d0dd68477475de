//! Homogeneous binary forms in `(s, t)` over the rationals.
//!
//! A form of degree `D` stores `D + 1` coefficients; entry `i` multiplies
//! `s^(D-i) t^i`. Points of the projective line are never computed
//! individually: valuations are read off a gcd-free basis of square-free,
//! pairwise coprime [`Place`]s, so everything stays in exact arithmetic over ℚ
//! without irreducible factorization. The place `t` is the point `[1:0]` and
//! `s` is `[0:1]`.

mod univariate;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;
use univariate::UniPoly;

/// Parse a rational from `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Render a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// Coefficients in `s`-descending order; the degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::BadParameter("a binary form needs at least one coefficient".into()));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs: coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect() }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![Rational::zero(); degree + 1] }
    }

    pub fn constant(c: Rational) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// The monomial `c * s^i * t^j`.
    pub fn monomial(c: Rational, s_exp: usize, t_exp: usize) -> Self {
        let mut f = BinaryForm::zero(s_exp + t_exp);
        f.coeffs[t_exp] = c;
        f
    }

    pub fn s() -> Self {
        BinaryForm::from_ints(&[1, 0])
    }

    pub fn t() -> Self {
        BinaryForm::from_ints(&[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^(D-i) t^i`.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.check_same_degree(other)?;
        Ok(BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.check_same_degree(other)?;
        Ok(BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    fn check_same_degree(&self, other: &BinaryForm) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow(&self, k: u32) -> BinaryForm {
        let mut acc = BinaryForm::constant(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let d = self.degree();
        let mut s_pows = vec![Rational::one(); d + 1];
        let mut t_pows = vec![Rational::one(); d + 1];
        for i in 1..=d {
            s_pows[i] = &s_pows[i - 1] * s;
            t_pows[i] = &t_pows[i - 1] * t;
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &s_pows[d - i] * &t_pows[i])
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Exponent of the largest power of `t` dividing the form (`None` for zero).
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// First nonzero coefficient in `s`-descending order.
    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Scale so the first nonzero coefficient is 1; returns the removed content.
    pub fn normalized(&self) -> (Rational, BinaryForm) {
        match self.leading() {
            None => (Rational::zero(), self.clone()),
            Some(lc) => {
                let lc = lc.clone();
                let inv = lc.recip();
                (lc, self.scale(&inv))
            }
        }
    }

    // f = t^k * g(s, t) with g(s, 1) of degree D - k; returns (k, g(s, 1)).
    fn split_t(&self) -> Option<(usize, UniPoly)> {
        let k = self.t_order()?;
        let d = self.degree();
        // coefficient of s^(D-i) in f(s,1) is coeffs[i]
        let uni: Vec<Rational> = (0..=d - k).map(|e| self.coeffs[d - e].clone()).collect();
        Some((k, UniPoly::new(uni)))
    }

    fn from_t_and_uni(k: usize, uni: &UniPoly) -> BinaryForm {
        let e = uni.degree().expect("nonzero polynomial");
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend((0..=e).map(|i| uni.coeffs()[e - i].clone()));
        BinaryForm { coeffs }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &BinaryForm) -> Option<BinaryForm> {
        let (kd, ud) = d.split_t()?;
        if d.degree() > self.degree() {
            return None;
        }
        let Some((kf, uf)) = self.split_t() else {
            return Some(BinaryForm::zero(self.degree() - d.degree()));
        };
        if kf < kd {
            return None;
        }
        let q = uf.div_exact(&ud)?;
        let out = BinaryForm::from_t_and_uni(kf - kd, &q);
        debug_assert_eq!(out.degree(), self.degree() - d.degree());
        Some(out)
    }

    /// Is the form square-free (no repeated linear factor over ℚ̄)?
    pub fn is_squarefree(&self) -> bool {
        let Some((k, u)) = self.split_t() else { return false };
        if k > 1 {
            return false;
        }
        UniPoly::gcd(&u, &u.derivative()).degree() == Some(0)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (se, te) = (d - i, i);
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || (se == 0 && te == 0) {
                parts.push(format_rational(&mag));
            }
            for (var, e) in [("s", se), ("t", te)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Greatest common divisor, normalized so the first nonzero coefficient is 1.
pub fn bf_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    match (f.split_t(), g.split_t()) {
        (None, None) => Err(Error::BothZero),
        (Some(_), None) => Ok(f.normalized().1),
        (None, Some(_)) => Ok(g.normalized().1),
        (Some((kf, uf)), Some((kg, ug))) => {
            let u = UniPoly::gcd(&uf, &ug);
            Ok(BinaryForm::from_t_and_uni(kf.min(kg), &u))
        }
    }
}

/// `f = content * prod g_k^k` with normalized, square-free, pairwise coprime `g_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub content: Rational,
    /// `(g_k, k)` sorted by decreasing multiplicity.
    pub factors: Vec<(BinaryForm, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> BinaryForm {
        let mut acc = BinaryForm::constant(self.content.clone());
        for (g, k) in &self.factors {
            acc = acc.mul(&g.pow(*k));
        }
        acc
    }
}

pub fn squarefree_decomposition(f: &BinaryForm) -> Result<SquarefreeDecomposition> {
    let (k, uni) = f.split_t().ok_or(Error::ZeroForm)?;
    let content = f.leading().cloned().expect("nonzero");
    let mut by_mult: Vec<(BinaryForm, u32)> = Vec::new();
    for (i, a) in uni.squarefree_factors().into_iter().enumerate() {
        if a.degree().unwrap_or(0) > 0 {
            by_mult.push((BinaryForm::from_t_and_uni(0, &a), i as u32 + 1));
        }
    }
    if k > 0 {
        let k = k as u32;
        match by_mult.iter_mut().find(|(_, m)| *m == k) {
            Some(entry) => entry.0 = entry.0.mul(&BinaryForm::t()),
            None => by_mult.push((BinaryForm::t(), k)),
        }
    }
    by_mult.sort_by_key(|f| std::cmp::Reverse(f.1));
    Ok(SquarefreeDecomposition { content, factors: by_mult })
}

/// A square-free, normalized binary form standing for the Galois orbit of
/// its roots on the projective line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Place {
    form: BinaryForm,
}

impl Place {
    pub fn new(form: BinaryForm) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::ZeroForm);
        }
        if form.degree() == 0 || !form.is_squarefree() {
            return Err(Error::BadParameter(format!("{form} is not a square-free form of positive degree")));
        }
        Ok(Place { form: form.normalized().1 })
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    /// Number of geometric points (roots on the projective line) in the orbit.
    pub fn geometric_count(&self) -> usize {
        self.form.degree()
    }

    // s, t, then everything else by degree and coefficients
    fn sort_key(&self) -> (usize, bool, usize) {
        let monomial = self.form.coeffs.iter().filter(|c| !c.is_zero()).count() == 1;
        (self.form.degree(), !monomial, self.form.t_order().unwrap_or(0))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.form.coeffs.cmp(&other.form.coeffs))
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

/// Largest `k` with `place^k | f`.
pub fn valuation_at(f: &BinaryForm, place: &Place) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(&place.form) {
        k += 1;
        cur = q;
    }
    Ok(k)
}

/// Places of a gcd-free basis together with the valuation of each input at each place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdFreeBasis {
    pub places: Vec<Place>,
    /// `valuations[i][j]` is the order of input `i` along place `j`.
    pub valuations: Vec<Vec<u32>>,
}

/// Refine the square-free parts of `forms` into pairwise coprime places on
/// which every input has a constant valuation.
pub fn gcdfree_basis(forms: &[BinaryForm]) -> Result<GcdFreeBasis> {
    let mut basis: Vec<BinaryForm> = Vec::new();
    for f in forms {
        let sqf = squarefree_decomposition(f)?;
        for (g, _) in sqf.factors {
            for part in split_coordinate_points(g) {
                insert_coprime(&mut basis, part);
            }
        }
    }
    let mut places: Vec<Place> = basis.into_iter().map(|g| Place { form: g.normalized().1 }).collect();
    places.sort();
    let valuations = forms
        .iter()
        .map(|f| places.iter().map(|p| valuation_at(f, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(GcdFreeBasis { places, valuations })
}

// the coordinate points s = 0 and t = 0 always get their own places
fn split_coordinate_points(g: BinaryForm) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let mut rest = g;
    for p in [BinaryForm::s(), BinaryForm::t()] {
        if rest.degree() > 1 {
            if let Some(q) = rest.div_exact(&p) {
                out.push(p);
                rest = q;
            }
        }
    }
    out.push(rest);
    out
}

fn insert_coprime(basis: &mut Vec<BinaryForm>, form: BinaryForm) {
    let mut work = vec![form];
    while let Some(a) = work.pop() {
        if a.degree() == 0 {
            continue;
        }
        let hit = basis.iter().enumerate().find_map(|(idx, b)| {
            let g = bf_gcd(&a, b).expect("nonzero");
            (g.degree() > 0).then_some((idx, g))
        });
        match hit {
            None => basis.push(a),
            Some((idx, g)) => {
                let b = basis.swap_remove(idx);
                work.push(b.div_exact(&g).expect("gcd divides"));
                work.push(a.div_exact(&g).expect("gcd divides"));
                work.push(g);
            }
        }
    }
}
