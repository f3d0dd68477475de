// Square-free decomposition and places of a discriminant form.

use k3kit::exactpoly::{bf_gcd, gcdfree_basis, squarefree_decomposition, BinaryForm};
use k3kit::Rational;

pub fn run() -> k3kit::Result<()> {
    let q = |n: i64| Rational::from_integer(n.into());
    let f = BinaryForm::from_ints(&[1, 0, -1]);
    let g = BinaryForm::from_ints(&[1, 2, 1]);
    println!("gcd({f}, {g}) = {}", bf_gcd(&f, &g)?);

    // alpha, beta and delta of the two-II* family at a = 2, b = -1, c = 3
    let alpha = BinaryForm::monomial(q(1), 4, 4);
    let beta = BinaryForm::monomial(q(1), 5, 5).mul(&BinaryForm::from_ints(&[2, -1, 3]));
    let delta = alpha.pow(3).scale(&q(4)).add(&beta.pow(2).scale(&q(27)))?;
    let sqf = squarefree_decomposition(&delta)?;
    for (factor, k) in &sqf.factors {
        println!("  ({factor})^{k}");
    }
    assert_eq!(sqf.reconstruct(), delta);

    let basis = gcdfree_basis(&[alpha, beta, delta])?;
    for (j, place) in basis.places.iter().enumerate() {
        let nus: Vec<u32> = basis.valuations.iter().map(|row| row[j]).collect();
        println!("place {place}: valuations {nus:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("binary_forms example");
}
