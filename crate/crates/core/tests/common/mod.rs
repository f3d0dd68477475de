#![allow(dead_code)]

use k3kit::exactpoly::BinaryForm;
use k3kit::lattice::IntegerLattice;
use k3kit::weierstrass::{classify_fibers, KodairaType, WeierstrassModel};
use k3kit::{Error, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn random_rational(r: &mut impl Rng) -> Rational {
    q(r.gen_range(-50..=50), r.gen_range(1..=12))
}

pub fn random_nonzero_rational(r: &mut impl Rng) -> Rational {
    loop {
        let x = random_rational(r);
        if x != q(0, 1) {
            return x;
        }
    }
}

/// A random linear form a s + b t, not identically zero.
pub fn random_linear(r: &mut impl Rng) -> BinaryForm {
    loop {
        let (a, b) = (r.gen_range(-3..=3), r.gen_range(-3..=3));
        if (a, b) != (0, 0) {
            return BinaryForm::from_ints(&[a, b]);
        }
    }
}

pub fn random_form(r: &mut impl Rng, degree: usize) -> BinaryForm {
    let coeffs: Vec<i64> = (0..=degree).map(|_| r.gen_range(-4..=4)).collect();
    BinaryForm::from_ints(&coeffs)
}

/// Product of a few random linear factors with multiplicity, padded to
/// `degree` by a random form.
pub fn random_structured_form(r: &mut impl Rng, degree: usize, shared: &[BinaryForm]) -> BinaryForm {
    let mut f = BinaryForm::constant(q(r.gen_range(1..=5), 1));
    let mut left = degree;
    for lin in shared {
        let k = r.gen_range(0..=left.min(5));
        let kk = k as u32;
        f = f.mul(&lin.pow(kk));
        left -= k;
    }
    f.mul(&random_form(r, left))
}

/// Random minimal Weierstrass model of the given d with nonzero discriminant
/// and some fibers beyond I1.
pub fn random_minimal_model(r: &mut impl Rng, d: u32) -> WeierstrassModel {
    loop {
        let shared: Vec<BinaryForm> = (0..3).map(|_| random_linear(r)).collect();
        let alpha = if r.gen_bool(0.1) {
            BinaryForm::zero(4 * d as usize)
        } else {
            random_structured_form(r, 4 * d as usize, &shared)
        };
        let beta = random_structured_form(r, 6 * d as usize, &shared);
        if beta.is_zero() {
            continue;
        }
        let m = WeierstrassModel::new(d, alpha, beta).expect("degrees match");
        match classify_fibers(&m) {
            Ok(_) => return m,
            Err(Error::NonMinimal { .. }) | Err(Error::IdenticallyZeroDiscriminant) => continue,
            Err(e) => panic!("unexpected {e}"),
        }
    }
}

/// Fiber multiset as sorted (type, count) pairs with counts summed by type.
pub fn fiber_multiset(m: &WeierstrassModel) -> Vec<(String, usize)> {
    let mut acc: std::collections::BTreeMap<String, usize> = Default::default();
    for f in classify_fibers(m).unwrap() {
        *acc.entry(f.kodaira.to_string()).or_default() += f.count;
    }
    acc.into_iter().collect()
}

pub fn kodaira(name: &str) -> KodairaType {
    KodairaType::parse(name).unwrap()
}

/// Random even lattice of modest discriminant built from small blocks.
pub fn random_even_lattice(r: &mut impl Rng) -> IntegerLattice {
    const BLOCKS: &[&str] = &["-A1", "-A2", "-A3", "-D4", "<-4>", "<-6>", "<2>", "<4>", "H", "-A1", "<-8>"];
    loop {
        let k = r.gen_range(1..=3);
        let parts: Vec<&str> = (0..k).map(|_| BLOCKS[r.gen_range(0..BLOCKS.len())]).collect();
        let l = IntegerLattice::from_named_sum(&parts.join("+")).unwrap();
        if l.discriminant() <= 64 {
            return l;
        }
    }
}

/// Random nondegenerate even rank-2 Gram matrix with small entries.
pub fn random_even_rank2(r: &mut impl Rng, size: i64) -> IntegerLattice {
    loop {
        let (a, b, c) = (2 * r.gen_range(-size..=size), r.gen_range(-2 * size..=2 * size), 2 * r.gen_range(-size..=size));
        if let Ok(l) = IntegerLattice::new(vec![vec![a, b], vec![b, c]]) {
            return l;
        }
    }
}
