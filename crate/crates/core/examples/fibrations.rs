// Genus-one and elliptic fibration criteria from isotropic classes.

use k3kit::cone::{admits_elliptic_section, genus_one_fibration_exists, isotropic_class};
use k3kit::lattice::IntegerLattice;

pub fn run() -> k3kit::Result<()> {
    for gram in [vec![vec![0, 3], vec![3, 2]], vec![vec![-2, 0], vec![0, 4]], vec![vec![0, 1], vec![1, 0]]] {
        let l = IntegerLattice::new(gram.clone())?;
        println!(
            "{gram:?}: isotropic {:?}, elliptic with section {}",
            isotropic_class(&l)?,
            admits_elliptic_section(&l)?
        );
    }
    for name in ["H+2(-E8)+<-4>", "<2>+4(-A1)", "<4>+2(-A1)"] {
        let l = IntegerLattice::from_named_sum(name)?;
        println!("{name}: {:?}", genus_one_fibration_exists(&l, 20)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("fibrations example");
}
