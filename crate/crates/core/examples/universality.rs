//! The universal property of `W_p`: a Lipschitz map into a p-subadditive
//! monoid extends to diagrams with the same Lipschitz norm, and `W_p` is the
//! largest p-subadditive metric extending the ground metric.

use pdmetric::diagram::RealSum;
use pdmetric::metric::{FiniteSpace, QuotientPoint};
use pdmetric::sampling::{halfplane_diagram, seeded, DEFAULT_SEED};
use pdmetric::spaces::{diagonal_factor, HalfPlane, HalfPlaneDiagramPoint};
use pdmetric::universality::{check_maximality, check_norm_law, check_restriction_trichotomy, extend_lipschitz};
use pdmetric::wasserstein::wasserstein;
use pdmetric::{ExtReal, PExponent, Result};

fn persistence(x: &HalfPlaneDiagramPoint) -> f64 {
    match x {
        QuotientPoint::Collapsed => 0.0,
        QuotientPoint::Point(y) => y.death() - y.birth(),
    }
}

fn main() -> Result<()> {
    let mut rng = seeded(DEFAULT_SEED);
    let q = PExponent::new(2.0)?;
    let space = HalfPlane::new(q).diagram_space(PExponent::ONE);
    let norm = ExtReal::new(1.0 / diagonal_factor(q));

    let alpha = std::iter::repeat_with(|| halfplane_diagram(&mut rng, &space, 4))
        .find(|d| !d.is_empty())
        .expect("some draw is nonempty");
    println!(
        "total persistence of {alpha:?}: {}",
        extend_lipschitz(&space, &RealSum, persistence, &alpha, PExponent::ONE)?
    );

    let pairs: Vec<_> = (0..100)
        .map(|_| {
            (
                halfplane_diagram(&mut rng, &space, 4),
                halfplane_diagram(&mut rng, &space, 4),
            )
        })
        .collect();
    let singletons: Vec<_> = pairs.iter().flat_map(|(a, _)| a.to_vec()).collect();
    let report = check_norm_law(&space, &RealSum, persistence, norm, PExponent::ONE, &pairs, &singletons)?;
    println!(
        "{}: {:?} over {} checks",
        report.property, report.status, report.checked
    );

    let finite = FiniteSpace::discrete(&["o", "a", "b"], 0);
    let p = PExponent::ONE;
    let rho = |a: &_, b: &_| {
        wasserstein(a, b, &finite, PExponent::Infinity)
            .map(|m| m.total)
            .unwrap_or(ExtReal::INF)
    };
    let report = check_maximality(&finite, rho, p, 3, 100, &mut rng)?;
    println!("W_inf <= W_1: {:?}", report.status);
    let doubled = |a: &_, b: &_| {
        wasserstein(a, b, &finite, p)
            .map(|m| m.total.scale(2.0))
            .unwrap_or(ExtReal::INF)
    };
    println!(
        "2 W_1 <= W_1: {:?}",
        check_maximality(&finite, doubled, p, 3, 100, &mut rng)?.status
    );

    let t = check_restriction_trichotomy(&finite, PExponent::new(2.0)?)?;
    println!(
        "discrete space, p = 2: strengthened {} restriction is d {}",
        t.strengthened, t.restriction_is_d
    );
    Ok(())
}
