// Signatures, discriminants and uniqueness checks for named lattices.

use k3kit::lattice::{make_named, IntegerLattice, NamedLattice};

pub fn run() -> k3kit::Result<()> {
    let k3 = make_named(NamedLattice::K3, false)?;
    println!("K3: rank {} signature {} disc {} even {}", k3.rank(), k3.signature(), k3.discriminant(), k3.is_even());

    for name in ["H+2(-E7)+(-A3)", "H+2(-E8)+<-4>", "2(-E7)+(-A3)", "E8"] {
        let l = IntegerLattice::from_named_sum(name)?;
        println!(
            "{name}: rank {} signature {} disc {} unique-in-genus {}",
            l.rank(),
            l.signature(),
            l.discriminant(),
            l.nikulin_unique()?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("lattice_invariants example");
}
