mod common;

use std::collections::BTreeSet;

use common::{random_even_lattice, rng};
use k3kit::lattice::{DiscriminantForm, IntegerLattice};
use k3kit::overlattice::{all_overlattices, build_overlattice, overlattice_discriminant_form};
use k3kit::Rational;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Closure of a set of elements under addition, as element indices.
fn closure(a: &DiscriminantForm, gens: &[Vec<u64>]) -> BTreeSet<u64> {
    let mut elems = vec![a.zero()];
    let mut idx: BTreeSet<u64> = BTreeSet::from([a.index_of(&a.zero())]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let s = a.add(&elems[i], g);
            if idx.insert(a.index_of(&s)) {
                elems.push(s);
            }
        }
        i += 1;
    }
    idx
}

/// Is L + lifts(H) even and integral, judged from rational Gram entries of the lifts.
fn glues_evenly(l: &IntegerLattice, a: &DiscriminantForm, h: &BTreeSet<u64>) -> bool {
    let lifts: Vec<Vec<Rational>> = h.iter().map(|&i| a.lift_of(&a.element_at(i))).collect();
    let g = l.gram_in_basis(&lifts);
    for (i, row) in g.iter().enumerate() {
        if !row[i].is_integer() || row[i].to_integer().is_odd() {
            return false;
        }
        if row.iter().any(|x| !x.is_integer()) {
            return false;
        }
    }
    true
}

/// All subgroups of A generated by at most three elements.
fn small_subgroups(a: &DiscriminantForm) -> BTreeSet<BTreeSet<u64>> {
    let elems = a.elements(10_000).unwrap();
    let mut out = BTreeSet::new();
    for x in &elems {
        for y in &elems {
            for z in &elems {
                out.insert(closure(a, &[x.clone(), y.clone(), z.clone()]));
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    let mut r = rng(21);
    let mut checked = 0;
    while checked < 40 {
        let l = random_even_lattice(&mut r);
        let a = l.discriminant_form().unwrap();
        if a.length() > 3 || a.order() > 32 {
            continue;
        }
        checked += 1;
        let brute: BTreeSet<BTreeSet<u64>> = small_subgroups(&a).into_iter().filter(|h| glues_evenly(&l, &a, h)).collect();
        let found: BTreeSet<BTreeSet<u64>> =
            all_overlattices(&l, 10_000).unwrap().iter().map(|e| closure(&a, &e.subgroup.generators)).collect();
        assert_eq!(found, brute, "gram {:?}", l.gram());
    }
}

#[test]
fn overlattices_are_even_with_expected_discriminant() {
    let mut r = rng(22);
    for _ in 0..60 {
        let l = random_even_lattice(&mut r);
        let a = l.discriminant_form().unwrap();
        for e in all_overlattices(&l, 10_000).unwrap() {
            let o = &e.overlattice;
            assert!(o.lattice.is_even());
            assert_eq!(o.lattice.discriminant() * o.index * o.index, l.discriminant());
            assert_eq!(o.index, e.subgroup.order);
            assert_eq!(o.lattice.signature(), l.signature());

            // basis and inclusion are inverse
            let n = l.rank();
            for i in 0..n {
                for j in 0..n {
                    let mut s = Rational::zero();
                    for k in 0..n {
                        s += Rational::from_integer(o.inclusion[i][k].into()) * &o.basis[k][j];
                    }
                    assert_eq!(s, if i == j { Rational::one() } else { Rational::zero() });
                }
            }
            let g = l.gram_in_basis(&o.basis);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(g[i][j], Rational::from_integer(o.lattice.entry(i, j).into()));
                }
            }

            let direct = o.lattice.discriminant_form().unwrap();
            let abstract_form = overlattice_discriminant_form(&a, &e.subgroup).unwrap();
            assert!(direct.same_invariants(&abstract_form, 10_000).unwrap());
            assert!(direct.same_invariants(&e.form, 10_000).unwrap());
            assert_eq!(e.subgroup.invariant_factors(&a).iter().product::<u64>(), e.subgroup.order);
            assert!(build_overlattice(&l, &e.subgroup).is_ok());
        }
    }
}
