//! A Kantorovich–Rubinstein certificate for `W₁`: dual potentials whose
//! value matches the primal, read as a 1-Lipschitz function on the support
//! and extended to the whole half-plane by McShane's formula.

use pdmetric::duality::{duality_gap, kr_certificate, mcshane_extend, support_function, SupportFunction};
use pdmetric::metric::QuotientPoint;
use pdmetric::spaces::{HalfPlane, HalfPlanePoint};
use pdmetric::{Diagram, PExponent, Result};

fn main() -> Result<()> {
    let space = HalfPlane::new(PExponent::new(2.0)?).diagram_space(PExponent::ONE);
    let point = |b, d| QuotientPoint::Point(HalfPlanePoint::new(b, d));
    let alpha = Diagram::from_points([point(0.0, 4.0), point(1.0, 2.0)], &space)?;
    let beta = Diagram::from_points([point(0.5, 4.5), point(3.0, 3.5), point(3.0, 3.5)], &space)?;

    let cert = kr_certificate(&alpha, &beta, &space)?;
    println!("primal {} dual {:?} gap {:?}", cert.primal, cert.dual, cert.gap());
    println!("feasibility violation {:e}", cert.feasibility_violation());

    let h = support_function(&cert, &alpha, &beta, &space)?;
    println!("potential on the support: {h:?}");
    for x in [point(2.0, 6.0), point(-1.0, 0.0), QuotientPoint::Collapsed] {
        println!("  extended to {x:?}: {}", mcshane_extend(&h, &x, &space)?);
    }

    let zero = SupportFunction::new(h.support().map(|(x, _)| (x.clone(), 0.0)));
    println!(
        "gap of the zero potential: {}",
        duality_gap(&alpha, &beta, &space, &zero)?
    );
    Ok(())
}
