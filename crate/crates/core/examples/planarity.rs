//! Planarity testing, random maximal planar graphs, and degree-sequence
//! replicas.
//!
//! `cargo run --release --example planarity`

use kcolor::graph::{gen_family, gen_max_planar, gen_replica, is_planar, DegreeSequence, FamilySpec, Graph};

fn main() -> kcolor::Result<()> {
    let k5 = gen_family(&FamilySpec::Complete(5))?;
    let k33 = Graph::from_edges(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v))))?;
    let hex = gen_family(&FamilySpec::HexLattice { rows: 9, cols: 9 })?;
    println!("K5 planar: {}, K3,3 planar: {}, hex lattice planar: {}", is_planar(&k5), is_planar(&k33), is_planar(&hex));

    for seed in 0..3 {
        let g = gen_max_planar(200, seed)?;
        let replica = gen_replica(&DegreeSequence::of(&g), seed)?;
        println!(
            "seed {seed}: maximal planar {} edges (planar {}), replica {} edges (planar {})",
            g.m(),
            is_planar(&g),
            replica.m(),
            is_planar(&replica)
        );
    }
    Ok(())
}
