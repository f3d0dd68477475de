// Gram matrix induced by a trilinear intersection form, and polarization checks.

use k3kit::lattice::gram_from_trilinear;

pub fn run() -> k3kit::Result<()> {
    // P1 x P2 with divisors D1, D2: only D1 D2 D2 = 1 is nonzero
    let mut t = vec![vec![vec![0i64; 2]; 2]; 2];
    for (a, b, c) in [(0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        t[a][b][c] = 1;
    }
    let l = gram_from_trilinear(&t, &[2, 3])?;
    println!("Gram {:?}", l.gram());
    println!(
        "signature {} even {} admissible {} period domain dimension {}",
        l.signature(),
        l.is_even(),
        l.polarization_admissible(),
        l.period_domain_dimension()?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("trilinear_polarization example");
}
