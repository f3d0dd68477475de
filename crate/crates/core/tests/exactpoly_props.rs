mod common;

use common::{q, random_form};
use k3kit::exactpoly::{bf_gcd, gcdfree_basis, squarefree_decomposition, valuation_at, BinaryForm};
use k3kit::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn form_strategy(max_degree: usize) -> impl Strategy<Value = BinaryForm> {
    (1..=max_degree).prop_flat_map(|d| {
        proptest::collection::vec(-5i64..=5, d + 1).prop_map(|c| BinaryForm::from_ints(&c))
    })
}

fn nonzero(max_degree: usize) -> impl Strategy<Value = BinaryForm> {
    form_strategy(max_degree).prop_filter("nonzero", |f| !f.is_zero())
}

/// Product of small linear factors raised to small powers.
fn factored(max_factors: usize) -> impl Strategy<Value = BinaryForm> {
    proptest::collection::vec(((-3i64..=3, -3i64..=3), 1u32..=4), 1..=max_factors).prop_map(|fs| {
        fs.into_iter()
            .filter(|((a, b), _)| (*a, *b) != (0, 0))
            .fold(BinaryForm::constant(q(2, 1)), |acc, ((a, b), k)| acc.mul(&BinaryForm::from_ints(&[a, b]).pow(k)))
    })
}

proptest! {
    #[test]
    fn squarefree_reconstructs(f in factored(5)) {
        let sqf = squarefree_decomposition(&f).unwrap();
        prop_assert_eq!(sqf.reconstruct(), f);
        for (part, _) in &sqf.factors {
            prop_assert!(part.is_squarefree());
        }
        for (i, (a, _)) in sqf.factors.iter().enumerate() {
            for (b, _) in &sqf.factors[i + 1..] {
                prop_assert_eq!(bf_gcd(a, b).unwrap().degree(), 0);
            }
        }
    }

    #[test]
    fn evaluation_is_homogeneous(f in nonzero(8), s in -6i64..=6, t in -6i64..=6, lam in -4i64..=4) {
        let (s, t, lam) = (q(s, 1), q(t, 1), q(lam, 1));
        let lhs = f.eval(&(&lam * &s), &(&lam * &t));
        let mut pow = Rational::one();
        for _ in 0..f.degree() {
            pow *= &lam;
        }
        prop_assert_eq!(lhs, pow * f.eval(&s, &t));
    }

    #[test]
    fn gcd_divides_and_degrees_add(f in factored(4), g in factored(4), h in factored(3)) {
        let (fh, gh) = (f.mul(&h), g.mul(&h));
        let d = bf_gcd(&fh, &gh).unwrap();
        let cf = fh.div_exact(&d).unwrap();
        let cg = gh.div_exact(&d).unwrap();
        prop_assert_eq!(bf_gcd(&cf, &cg).unwrap().degree(), 0);
        // lcm = f g / gcd
        let lcm = fh.mul(&gh).div_exact(&d).unwrap();
        prop_assert_eq!(d.degree() + lcm.degree(), fh.degree() + gh.degree());
        prop_assert!(lcm.div_exact(&fh).is_some() && lcm.div_exact(&gh).is_some());
        prop_assert!(d.div_exact(&h).is_some());
    }

    #[test]
    fn valuations_are_additive(f in factored(4), g in factored(4)) {
        let fg = f.mul(&g);
        let basis = gcdfree_basis(&[f.clone(), g.clone(), fg.clone()]).unwrap();
        let mut total = 0usize;
        for (j, p) in basis.places.iter().enumerate() {
            let (vf, vg, vfg) = (valuation_at(&f, p).unwrap(), valuation_at(&g, p).unwrap(), valuation_at(&fg, p).unwrap());
            prop_assert_eq!(vf + vg, vfg);
            prop_assert_eq!(basis.valuations[2][j], vfg);
            total += vfg as usize * p.form().degree();
        }
        // every root of fg is accounted for
        prop_assert_eq!(total, fg.degree());
    }

    #[test]
    fn places_are_pairwise_coprime(fs in proptest::collection::vec(nonzero(6), 1..4)) {
        let basis = gcdfree_basis(&fs).unwrap();
        for (i, a) in basis.places.iter().enumerate() {
            prop_assert!(a.form().is_squarefree());
            for b in &basis.places[i + 1..] {
                prop_assert_eq!(bf_gcd(a.form(), b.form()).unwrap().degree(), 0);
            }
        }
    }
}

#[test]
fn zero_inputs_are_rejected() {
    let z = BinaryForm::zero(3);
    assert!(bf_gcd(&z, &z).is_err());
    assert!(squarefree_decomposition(&z).is_err());
    let mut r = common::rng(1);
    let f = random_form(&mut r, 3);
    if !f.is_zero() {
        assert_eq!(bf_gcd(&f, &z).unwrap().normalized().1, f.normalized().1);
    }
    assert!(Rational::zero().is_zero());
}
