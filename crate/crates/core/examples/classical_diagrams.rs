//! Bottleneck and Wasserstein distances between two persistence diagrams in
//! the half-plane, with the realizing matching.

use pdmetric::spaces::{HalfPlane, HalfPlanePoint};
use pdmetric::wasserstein::{wasserstein, Slot};
use pdmetric::{Diagram, PExponent, Result};

fn main() -> Result<()> {
    let space = HalfPlane::new(PExponent::Infinity).diagram_space(PExponent::Infinity);
    let point = |b, d| HalfPlanePoint::new(b, d).into();
    let alpha = Diagram::from_points([point(0.0, 4.0), point(1.0, 3.0), point(2.0, 2.5)], &space)?;
    let beta = Diagram::from_points([point(0.5, 4.5), point(1.0, 1.5)], &space)?;

    for p in [PExponent::ONE, PExponent::new(2.0)?, PExponent::Infinity] {
        let space = HalfPlane::new(PExponent::Infinity).diagram_space(p);
        let m = wasserstein(&alpha, &beta, &space, p)?;
        println!("W_{p} = {}", m.total);
    }

    let m = wasserstein(&alpha, &beta, &space, PExponent::Infinity)?;
    let (left, right) = (alpha.to_vec(), beta.to_vec());
    let show = |slot: Slot, atoms: &[_]| match slot {
        Slot::Atom(i) => format!("{:?}", atoms[i]),
        Slot::Basepoint => "diagonal".to_string(),
    };
    println!("bottleneck matching:");
    for pair in &m.pairs {
        println!(
            "  {} -> {}  cost {}",
            show(pair.left, &left),
            show(pair.right, &right),
            pair.cost
        );
    }
    Ok(())
}
