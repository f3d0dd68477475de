// Discriminant groups with their finite quadratic forms.

use k3kit::cli::rat;
use k3kit::lattice::IntegerLattice;

pub fn run() -> k3kit::Result<()> {
    for name in ["H+2(-E7)+(-A3)", "<-4>", "-D4", "H+2(-E8)+<-4>"] {
        let a = IntegerLattice::from_named_sum(name)?.discriminant_form()?;
        let qs: Vec<String> = a.q_values().iter().map(rat).collect();
        println!("{name}: A = {:?}, q on generators = {qs:?}", a.invariant_factors());
        let inv = a.canonical(10_000)?;
        let multiset: Vec<String> = inv.q_multiset.iter().map(|(q, c)| format!("{}x{c}", rat(q))).collect();
        println!("  q over all elements: {}", multiset.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("discriminant_forms example");
}
