//! Hard and soft coloring losses, edge weightings, and rounding.
//!
//! `cargo run --release --example losses`

use ndarray::array;

use kcolor::coloring::{
    loss_hard, loss_soft, round_soft, HardColoring, LossKind, LossSpec, SoftColoring,
};
use kcolor::graph::Graph;

fn main() -> kcolor::Result<()> {
    // triangle with a pendant vertex
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])?;

    let hard = HardColoring::new(vec![0, 1, 0, 1], 2)?;
    println!("hard loss of {:?}: {}", hard.colors(), loss_hard(&g, &hard)?);

    let soft = SoftColoring::new(array![[0.9, 0.1], [0.2, 0.8], [0.5, 0.5], [0.3, 0.7]])?;
    for kind in [LossKind::Standard, LossKind::DegreePower(3), LossKind::Triangle] {
        let spec = LossSpec::new(&g, kind);
        println!("{:>16}: weights {:?} soft loss {:.4}", kind.to_string(), spec.weights(), loss_soft(&g, &soft, &spec)?);
    }

    let rounded = round_soft(&soft);
    println!("rounded {:?}, hard loss {}", rounded.colors(), loss_hard(&g, &rounded)?);

    let one_hot = SoftColoring::one_hot(&hard);
    println!("one-hot soft loss equals hard loss: {}", loss_soft(&g, &one_hot, &LossSpec::standard(&g))?);
    Ok(())
}
