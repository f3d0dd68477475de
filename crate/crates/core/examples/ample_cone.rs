// Ample chambers of rank-2 lattices and reflection orbits of their rays.

use k3kit::cone::{ample_chamber, aut_finiteness_rank2, fiber_section_plane, nodal_quartic_lattice, weyl_orbit_rays};
use k3kit::lattice::IntegerLattice;

pub fn run() -> k3kit::Result<()> {
    let cases = [
        ("fiber + section, h = 3E + O", fiber_section_plane(), vec![3, 1]),
        ("nodal quartic, h = H - C", nodal_quartic_lattice(), vec![-1, 1]),
        ("[[4,2],[2,-4]], h = (1,0)", IntegerLattice::new(vec![vec![4, 2], vec![2, -4]])?, vec![1, 0]),
    ];
    for (label, l, h) in &cases {
        let c = ample_chamber(l, h, 200)?;
        println!("{label}: walls {:?}, rays {} and {}", c.walls, c.rays[0], c.rays[1]);
        println!("  automorphisms: {:?}", aut_finiteness_rank2(l, h, 200)?);
    }

    let l = nodal_quartic_lattice();
    let walls = vec![vec![1, 0], vec![-3, 2]];
    for ray in [[0, 1], [-4, 3]] {
        let orbit = weyl_orbit_rays(&l, &ray, &walls, 4)?;
        // ray = 2a C + b H with b^2 - 2a^2 = 1
        let pell: Vec<i64> = orbit.iter().map(|v| v[1] * v[1] - v[0] * v[0] / 2).collect();
        println!("orbit of {ray:?}: {orbit:?}, b^2 - 2a^2 = {pell:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("ample_cone example");
}
