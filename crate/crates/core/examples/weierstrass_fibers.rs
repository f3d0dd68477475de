// Kodaira fibers, trivial lattices and torsion candidates of two K3 families.

use k3kit::weierstrass::{
    analyze, reduce_non_minimal, two_ii_star_family, two_iii_star_family, two_iii_star_section,
    verify_two_torsion_section, WeierstrassModel,
};
use k3kit::exactpoly::BinaryForm;
use k3kit::Rational;

fn show(label: &str, m: &WeierstrassModel) -> k3kit::Result<()> {
    let r = analyze(m, 10_000)?;
    println!("{label}");
    for f in &r.fibers {
        println!("  {} x{} at {} (e = {})", f.kodaira, f.count, f.place, f.euler);
    }
    let torsion: Vec<_> = r.torsion_candidates.iter().map(|c| c.invariant_factors.clone()).collect();
    println!("  euler {} trivial lattice rank {} disc {} torsion candidates {torsion:?}", r.euler_total, r.trivial_lattice.rank(), r.trivial_lattice.discriminant());
    Ok(())
}

pub fn run() -> k3kit::Result<()> {
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    show("two II* family, (a,b,c) = (1,-2,5)", &two_ii_star_family(&q(1, 1), &q(-2, 1), &q(5, 1)))?;
    let m = two_iii_star_family(&q(3, 7));
    show("two III* family, l = 3/7", &m)?;
    println!("  X = s^2 t^2 / 3 is a 2-torsion section: {}", verify_two_torsion_section(&m, &two_iii_star_section())?);

    let a1 = BinaryForm::from_ints(&[1, 0, 2, -1, 3]);
    let b1 = BinaryForm::from_ints(&[2, 1, 0, 0, 5, 1, 1]);
    let st = BinaryForm::from_ints(&[0, 1, 0]);
    let inflated = WeierstrassModel::new(3, st.pow(4).mul(&a1), st.pow(6).mul(&b1))?;
    let reduced = reduce_non_minimal(&inflated)?;
    println!("inflated d = 3 model reduces to d = {}", reduced.d());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("weierstrass_fibers example");
}
