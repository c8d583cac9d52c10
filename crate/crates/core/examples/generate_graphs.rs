//! Random and structured graph generators.
//!
//! `cargo run --release --example generate_graphs`

use kcolor::graph::{
    gen_erdos_renyi, gen_family, gen_max_planar, gen_regular, write_edge_list, FamilySpec,
};

fn main() -> kcolor::Result<()> {
    let er = gen_erdos_renyi(100, 10.0, 1)?;
    println!("G(n=100, d=10): {} edges, mean degree {:.2}", er.m(), 2.0 * er.m() as f64 / 100.0);

    let reg = gen_regular(200, 4, 1)?;
    println!("4-regular n=200: {} edges, degrees {:?}", reg.m(), reg.degrees().iter().collect::<std::collections::BTreeSet<_>>());

    for spec in ["cycle:199", "grid:2x2x2x2x2x2x2", "hex:9x9", "tri:19x18", "complete:60"] {
        let g = gen_family(&spec.parse::<FamilySpec>()?)?;
        println!("{spec}: n={} m={}", g.n(), g.m());
    }

    let planar = gen_max_planar(50, 7)?;
    println!("maximal planar n=50: {} edges (3n-6 = 144)", planar.m());

    let small = gen_family(&FamilySpec::Cycle(4))?;
    print!("edge list of C4:\n{}", write_edge_list(&small));
    Ok(())
}
