//! Builds the 7x7 hexagonal grid and prints distances and link gains seen
//! from the centre cell.
//!
//!     cargo run --example hex_gains

use cellsim::hexgrid::{build_gain_matrix, build_grid, GainModel};

fn main() -> cellsim::Result<()> {
    let geom = build_grid(7, 7)?;
    let model = GainModel::default();
    let gains = build_gain_matrix(&geom, &model)?;
    let centre = geom.num_cells() / 2;
    let (x, y) = geom.center(centre)?;
    println!("cells: {}, centre cell {centre} at ({x:.3}, {y:.3})", geom.num_cells());
    println!(
        "model: alpha = {}, d_min = {}, self gain = {}",
        model.path_loss_exponent, model.min_distance, model.self_gain
    );
    println!("{:>5} {:>8} {:>10}", "cell", "dist", "gain");
    let mut rows: Vec<_> = (0..geom.num_cells())
        .map(|j| Ok((geom.distance(centre, j)?, j)))
        .collect::<cellsim::Result<_>>()?;
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    for (d, j) in rows.into_iter().take(20) {
        println!("{j:>5} {d:>8.4} {:>10.5}", gains.get(centre, j));
    }
    Ok(())
}
