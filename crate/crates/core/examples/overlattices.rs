// Even overlattices from isotropic subgroups, and a non-primitive
// embedding detected through its saturation.

use k3kit::lattice::{embedding_is_primitive, IntegerLattice};
use k3kit::overlattice::{all_overlattices, build_overlattice, isotropic_elements, IsotropicSubgroup};

pub fn run() -> k3kit::Result<()> {
    let l = IntegerLattice::from_named_sum("H+2(-E7)+(-A3)")?;
    let a = l.discriminant_form()?;
    println!("isotropic elements: {:?}", isotropic_elements(&a, 10_000)?);
    for entry in all_overlattices(&l, 10_000)? {
        let o = &entry.overlattice;
        println!(
            "G = {:?}: index {} disc {} A = {:?} unique {}",
            entry.subgroup.generators,
            o.index,
            o.lattice.discriminant(),
            entry.form.invariant_factors(),
            o.lattice.nikulin_unique()?
        );
    }

    // <2> + 16(-A1): half the sum of the sixteen roots glues in
    let kummer = IntegerLattice::from_named_sum("<2>+16(-A1)")?;
    let ka = kummer.discriminant_form()?;
    let mut half_sum = vec![1u64; 17];
    half_sum[0] = 0;
    let g = IsotropicSubgroup::new(&ka, vec![half_sum])?;
    let sat = build_overlattice(&kummer, &g)?;
    let primitive = embedding_is_primitive(&sat.lattice, &sat.inclusion, Some(&kummer))?;
    println!("<2>+16(-A1) inside its index-{} saturation is primitive: {primitive}", sat.index);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("overlattices example");
}
