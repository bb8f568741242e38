//! Solves a small weighted median with both solvers and prints the result.

use nlem::median::{
    admm_euclidean_median, irls_euclidean_median, optimality_residual, AdmmConfig, BoxConstraint,
    IrlsConfig, PointSet,
};

fn main() -> nlem::Result<()> {
    let ps = PointSet::new(
        vec![
            vec![0.0, 0.0],
            vec![4.0, 0.0],
            vec![0.0, 3.0],
            vec![10.0, 10.0],
        ],
        vec![1.0, 1.0, 1.0, 0.5],
    )?;
    let bx = BoxConstraint::Unconstrained;
    let admm = admm_euclidean_median(
        &ps,
        &bx,
        &AdmmConfig {
            mu: 1.0,
            max_iter: 2000,
            ..Default::default()
        },
    )?;
    let irls = irls_euclidean_median(&ps, &IrlsConfig::default())?;
    println!("admm {:?} cost {:.9}", admm.minimizer, admm.objective);
    println!("irls {:?} cost {:.9}", irls.minimizer, irls.objective);
    println!(
        "residual {:.3e}",
        optimality_residual(&ps, &bx, &admm.minimizer)
    );
    Ok(())
}
