//! Greedy 1-flip local search from a random start and with recursive warm
//! starts.
//!
//! `cargo run --release --example local_search`

use kcolor::coloring::{k_d, loss_hard};
use kcolor::graph::gen_erdos_renyi;
use kcolor::rng::SearchRng;
use kcolor::search::{discrete_color, full_color, is_one_flip_optimal, random_coloring};

fn main() -> kcolor::Result<()> {
    let d = 10.0;
    let k = k_d(d) + 1;
    let mut rng = SearchRng::new(3);
    let (mut from_random, mut warm) = (0, 0);
    for seed in 0..20 {
        let g = gen_erdos_renyi(100, d, seed)?;
        let init = random_coloring(g.n(), k, &mut rng)?;
        let a = discrete_color(&g, k, &init, &mut rng)?;
        let b = full_color(&g, k, &mut rng)?;
        assert!(is_one_flip_optimal(&g, &a) && is_one_flip_optimal(&g, &b));
        from_random += loss_hard(&g, &a)?;
        warm += loss_hard(&g, &b)?;
    }
    println!("20 graphs G(100, d={d}) with k={k}");
    println!("  random start:        mean loss {:.2}", from_random as f64 / 20.0);
    println!("  recursive warm start: mean loss {:.2}", warm as f64 / 20.0);
    Ok(())
}
