//! Seeded verification suites over the built-in spaces.
//!
//! Every suite draws its inputs from a fresh ChaCha8 stream seeded with the
//! configured seed, so a suite run alone and the same suite inside `all`
//! produce identical reports. Each suite returns one [`Report`] per property
//! and instance family; a property passes when every sampled instance does.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::assignment::{for_each_permutation, min_cost_assignment, CostMatrix};
use crate::diagram::{extend_hom, Diagram, MaxPlus, RealSum};
use crate::duality::{kr_certificate, mcshane_extend, support_function, SupportFunction};
use crate::error::{Error, Result};
use crate::metric::{
    check_metric_axioms, check_p_strengthened, lp_norm, p_strengthen, quotient_metric, sampled_axiom_check,
    AxiomReport, ExtReal, FinitePointedSpace, FiniteSpace, MetricSpace, PExponent, PointedSpace, QuotientPoint,
};
use crate::sampling::{finite_diagram, finite_space, halfplane_diagram, halfplane_point, interval, seeded, SeededRng};
use crate::spaces::{
    diagonal_factor, AnagramSpace, EmptyConvention, FiniteAbelianGroup, HalfPlane, HalfPlaneDiagramPoint,
    HalfPlanePoint, HalfPlaneQuotient, Interval, IntervalMetric, IntervalSpace, WordMetric,
};
use crate::universality::{
    check_declared_subadditivity, check_maximality, check_norm_law, check_permuted_sums, check_restriction_trichotomy,
    converse_stability, extend_lipschitz, leq, lipschitz_norm, Quad, Report, Status, WassersteinMonoid, Witness, TOL,
};
use crate::wasserstein::{brute_force_wasserstein, wasserstein, wasserstein_quotient_reduced};

const QS: [PExponent; 3] = [PExponent::ONE, PExponent::Finite(2.0), PExponent::Infinity];
const PS: [PExponent; 4] = [
    PExponent::ONE,
    PExponent::Finite(1.5),
    PExponent::Finite(2.0),
    PExponent::Infinity,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    MetricAxioms,
    Padding,
    Subadditivity,
    Monotonicity,
    Oracle,
    Duality,
    Strengthening,
    QuotientReduced,
    Universality,
    ConverseStability,
    All,
}

impl Suite {
    /// Every individual suite, in the order `all` runs them.
    pub const INDIVIDUAL: [Suite; 10] = [
        Suite::MetricAxioms,
        Suite::Padding,
        Suite::Subadditivity,
        Suite::Monotonicity,
        Suite::Oracle,
        Suite::Duality,
        Suite::Strengthening,
        Suite::QuotientReduced,
        Suite::Universality,
        Suite::ConverseStability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MetricAxioms => "metric-axioms",
            Suite::Padding => "padding",
            Suite::Subadditivity => "subadditivity",
            Suite::Monotonicity => "monotonicity",
            Suite::Oracle => "oracle",
            Suite::Duality => "duality",
            Suite::Strengthening => "strengthening",
            Suite::QuotientReduced => "quotient-reduced",
            Suite::Universality => "universality",
            Suite::ConverseStability => "converse-stability",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random instances per property and instance family.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: crate::sampling::DEFAULT_SEED,
            samples: 200,
        }
    }
}

/// Runs `suite` and returns its reports, property names prefixed with the
/// suite name.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Vec<Report>> {
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in Suite::INDIVIDUAL {
            out.extend(run_suite(s, config)?);
        }
        return Ok(out);
    }
    let mut rng = seeded(config.seed);
    let n = config.samples.max(1);
    let reports = match suite {
        Suite::MetricAxioms => metric_axioms(&mut rng, n)?,
        Suite::Padding => padding(&mut rng, n)?,
        Suite::Subadditivity => subadditivity(&mut rng, n)?,
        Suite::Monotonicity => monotonicity(&mut rng, n)?,
        Suite::Oracle => oracle(&mut rng, n)?,
        Suite::Duality => duality(&mut rng, n)?,
        Suite::Strengthening => strengthening(&mut rng, n)?,
        Suite::QuotientReduced => quotient_reduced(&mut rng, n)?,
        Suite::Universality => universality(&mut rng, n)?,
        Suite::ConverseStability => converse(&mut rng, n)?,
        Suite::All => unreachable!("handled above"),
    };
    Ok(reports
        .into_iter()
        .map(|mut r| {
            r.property = format!("{}: {}", suite.name(), r.property);
            r
        })
        .collect())
}

/// Accumulates instance checks for one property, keeping the first
/// counterexample.
struct Check {
    property: String,
    checked: usize,
    failure: Option<Witness>,
}

impl Check {
    fn new(property: impl Into<String>) -> Self {
        Check {
            property: property.into(),
            checked: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    /// `lhs <= rhs` up to the relative tolerance.
    fn bound(&mut self, l: impl fmt::Debug, r: impl fmt::Debug, lhs: ExtReal, rhs: ExtReal) {
        self.record(leq(lhs, rhs), || Witness::new(l, r, lhs, rhs));
    }

    fn equal(&mut self, l: impl fmt::Debug, r: impl fmt::Debug, a: ExtReal, b: ExtReal) {
        self.equal_within(l, r, a, b, TOL);
    }

    fn equal_within(&mut self, l: impl fmt::Debug, r: impl fmt::Debug, a: ExtReal, b: ExtReal, tol: f64) {
        let ok = a.approx_eq(b, tol * b.value().max(1.0));
        self.record(ok, || Witness::new(l, r, a, b));
    }

    /// A nonnegative error measure that must not exceed `limit`.
    fn small(&mut self, l: impl fmt::Debug, r: impl fmt::Debug, error: f64, limit: f64) {
        self.record(error <= limit, || {
            Witness::new(
                l,
                r,
                ExtReal::try_new(error).unwrap_or(ExtReal::INF),
                ExtReal::new(limit),
            )
        });
    }

    fn report(self) -> Report {
        match self.failure {
            None => Report::pass(self.property, self.checked),
            Some(w) => Report::fail(self.property, self.checked, w),
        }
    }
}

fn axioms(property: String, checked: usize, r: AxiomReport) -> Report {
    if r.is_pseudometric() {
        Report::pass(property, checked)
    } else {
        let w = Witness::new("axiom flags", r, ExtReal::ZERO, ExtReal::ZERO);
        Report::fail(property, checked, w)
    }
}

fn halfplane_spaces(p: PExponent) -> Vec<(PExponent, HalfPlaneQuotient)> {
    QS.into_iter()
        .map(|q| (q, HalfPlane::new(q).diagram_space(p)))
        .collect()
}

fn pairs_of<P: Ord + Clone, R: Rng>(
    rng: &mut R,
    n: usize,
    mut draw: impl FnMut(&mut R) -> Diagram<P>,
) -> Vec<(Diagram<P>, Diagram<P>)> {
    (0..n).map(|_| (draw(rng), draw(rng))).collect()
}

fn quads_of<P: Ord + Clone, R: Rng>(
    rng: &mut R,
    n: usize,
    mut draw: impl FnMut(&mut R) -> Diagram<P>,
) -> Vec<Quad<Diagram<P>>> {
    (0..n).map(|_| (draw(rng), draw(rng), draw(rng), draw(rng))).collect()
}

fn interval_pool<R: Rng>(rng: &mut R, n: usize) -> Vec<Interval> {
    (0..n)
        .map(|_| {
            if rng.random_bool(0.1) {
                Interval::Empty
            } else {
                interval(rng, 10.0)
            }
        })
        .collect()
}

fn interval_diagram<R: Rng>(rng: &mut R, space: &IntervalSpace, max: usize) -> Diagram<Interval> {
    crate::sampling::diagram(rng, space, max, |r| interval(r, 10.0))
}

fn metric_axioms(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    const TRIPLES: usize = 1000;
    for q in QS {
        let pool: Vec<HalfPlanePoint> = (0..64).map(|_| halfplane_point(rng, 10.0)).collect();
        let plane = HalfPlane::new(q);
        out.push(axioms(
            format!("half-plane l{q} axioms"),
            TRIPLES,
            sampled_axiom_check(&plane, &pool, TRIPLES, rng),
        ));
        let qpool: Vec<HalfPlaneDiagramPoint> = pool
            .iter()
            .map(|&x| x.into())
            .chain([QuotientPoint::Collapsed, HalfPlanePoint::new(1.0, 1.0).into()])
            .collect();
        for p in QS {
            let quotient = HalfPlane::new(q).diagram_space(p);
            out.push(axioms(
                format!("half-plane l{q} quotient p={p} axioms"),
                TRIPLES,
                sampled_axiom_check(&quotient, &qpool, TRIPLES, rng),
            ));
        }
    }
    let pool = interval_pool(rng, 64);
    for (name, space) in [
        ("hausdorff", IntervalSpace::hausdorff()),
        ("dissimilarity", IntervalSpace::dissimilarity()),
        ("interleaving", IntervalSpace::interleaving()),
    ] {
        out.push(axioms(
            format!("intervals {name} axioms"),
            TRIPLES,
            sampled_axiom_check(&space, &pool, TRIPLES, rng),
        ));
    }
    let anagram = AnagramSpace::default();
    out.push(axioms(
        "anagram axioms".into(),
        anagram.points().len().pow(3),
        check_metric_axioms(&anagram),
    ));
    for (orders, gens) in [
        (vec![6], vec![vec![1], vec![5]]),
        (vec![2, 2], vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
    ] {
        let label = format!("{orders:?}");
        let word = WordMetric::new(FiniteAbelianGroup::new(orders)?, gens)?;
        let (star_n, word_n) = (word.star_graph().points().len(), word.points().len());
        out.push(axioms(
            format!("star graph {label} axioms"),
            star_n.pow(3),
            check_metric_axioms(word.star_graph()),
        ));
        out.push(axioms(
            format!("word metric {label} axioms"),
            word_n.pow(3),
            check_metric_axioms(&word),
        ));
    }
    let mut finite = Check::new("random finite spaces are pseudometrics");
    for _ in 0..20 {
        let space = finite_space(rng, 5, true, true);
        let r = check_metric_axioms(&space);
        finite.record(r.is_pseudometric(), || {
            Witness::new(space.to_json(), r, ExtReal::ZERO, ExtReal::ZERO)
        });
    }
    out.push(finite.report());

    for q in QS {
        for p in PS {
            let space = HalfPlane::new(q).diagram_space(p);
            let mut sym = Check::new(format!("W_p symmetry (p={p}, l{q})"));
            let mut tri = Check::new(format!("W_p triangle inequality (p={p}, l{q})"));
            for _ in 0..n {
                let a = halfplane_diagram(rng, &space, 3);
                let b = halfplane_diagram(rng, &space, 3);
                let c = halfplane_diagram(rng, &space, 3);
                let ab = wasserstein(&a, &b, &space, p)?.total;
                let ba = wasserstein(&b, &a, &space, p)?.total;
                let bc = wasserstein(&b, &c, &space, p)?.total;
                let ac = wasserstein(&a, &c, &space, p)?.total;
                sym.equal(&a, &b, ab, ba);
                tri.bound((&a, &c), &b, ac, ab + bc);
            }
            out.push(sym.report());
            out.push(tri.report());
        }
    }
    Ok(out)
}

/// `α` with `k` explicit copies of the basepoint kept as atoms.
fn with_basepoints<P: Ord + Clone>(alpha: &Diagram<P>, x0: &P, k: usize) -> Diagram<P> {
    let mut counts: Vec<(P, usize)> = alpha.counts().map(|(x, c)| (x.clone(), c)).collect();
    if k > 0 {
        counts.push((x0.clone(), k));
    }
    Diagram::from_canonical_counts(counts)
}

fn padding(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for p in PS {
        for (q, space) in halfplane_spaces(p) {
            let mut explicit = Check::new(format!("extra basepoint padding leaves W_p unchanged (p={p}, l{q})"));
            let mut reps = Check::new(format!("diagonal representatives are dropped (p={p}, l{q})"));
            let x0 = space.basepoint();
            for _ in 0..n {
                let a = halfplane_diagram(rng, &space, 3);
                let b = halfplane_diagram(rng, &space, 3);
                let (k, l) = (rng.random_range(0..=3), rng.random_range(0..=3));
                let w = wasserstein(&a, &b, &space, p)?.total;
                let padded = wasserstein(&with_basepoints(&a, &x0, k), &with_basepoints(&b, &x0, l), &space, p)?.total;
                explicit.equal_within((&a, k), (&b, l), padded, w, 1e-12);

                let t = rng.random_range(-5.0..5.0);
                let mut listed = a.to_vec();
                listed.extend([HalfPlanePoint::new(t, t).into(), QuotientPoint::Collapsed]);
                let rebuilt = Diagram::from_points(listed, &space)?;
                let w2 = wasserstein(&rebuilt, &b, &space, p)?.total;
                reps.record(rebuilt == a && w2 == w, || Witness::new(&rebuilt, &a, w2, w));
            }
            out.push(explicit.report());
            out.push(reps.report());
        }
    }
    let space = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
    let empty: Diagram<HalfPlaneDiagramPoint> = Diagram::empty();
    let mut trivial = Check::new("empty diagrams are at distance 0 under any padding");
    for k in 0..=3 {
        for l in 0..=3 {
            let a = with_basepoints(&empty, &space.basepoint(), k);
            let b = with_basepoints(&empty, &space.basepoint(), l);
            for p in PS {
                let w = wasserstein(&a, &b, &space, p)?.total;
                trivial.equal_within(k, l, w, ExtReal::ZERO, 0.0);
            }
        }
    }
    out.push(trivial.report());
    Ok(out)
}

fn subadditivity(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for p in PS {
        for (q, space) in halfplane_spaces(p) {
            let quads = quads_of(rng, n, |r| halfplane_diagram(r, &space, 2));
            let mut r = check_declared_subadditivity(&WassersteinMonoid::new(&space, p), &quads);
            r.property = format!("{} of W_p (l{q})", r.property);
            out.push(r);
        }
        let mut finite = Vec::new();
        for _ in 0..(n / 10).max(1) {
            let space = finite_space(rng, 4, true, true);
            let quads = quads_of(rng, 10, |r| finite_diagram(r, &space, 2));
            finite.push(check_declared_subadditivity(&WassersteinMonoid::new(&space, p), &quads));
        }
        out.push(merge(
            format!("{p}-subadditivity of W_p (random finite spaces)"),
            finite,
        ));

        let space = HalfPlane::ell_inf().diagram_space(p);
        let tuples: Vec<_> = (0..(n / 10).max(1))
            .map(|_| {
                let k = rng.random_range(1..=4);
                let a: Vec<_> = (0..k).map(|_| halfplane_diagram(rng, &space, 1)).collect();
                let b: Vec<_> = (0..k).map(|_| halfplane_diagram(rng, &space, 1)).collect();
                (a, b)
            })
            .collect();
        let mut r = check_permuted_sums(&WassersteinMonoid::new(&space, p), &tuples);
        r.property = format!("{} (p={p})", r.property);
        out.push(r);
    }
    Ok(out)
}

/// Combines reports of one property over several instance families.
fn merge(property: String, reports: Vec<Report>) -> Report {
    let checked = reports.iter().map(|r| r.checked).sum();
    match reports.into_iter().find(|r| !r.passed()) {
        None => Report::pass(property, checked),
        Some(mut bad) => {
            bad.property = property;
            bad.checked = checked;
            bad
        }
    }
}

fn monotonicity(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let ps = [
        PExponent::ONE,
        PExponent::Finite(1.5),
        PExponent::Finite(2.0),
        PExponent::Finite(3.0),
        PExponent::Infinity,
    ];
    for q in QS {
        let space = HalfPlane::new(q).diagram_space(PExponent::Infinity);
        let mut check = Check::new(format!("W_q <= W_p for p <= q (l{q})"));
        for _ in 0..n {
            let a = halfplane_diagram(rng, &space, 4);
            let b = halfplane_diagram(rng, &space, 4);
            let ws: Vec<ExtReal> = ps
                .iter()
                .map(|&p| wasserstein(&a, &b, &space, p).map(|m| m.total))
                .collect::<Result<_>>()?;
            for i in 0..ps.len() {
                for j in i + 1..ps.len() {
                    check.bound((&a, ps[j]), (&b, ps[i]), ws[j], ws[i]);
                }
            }
        }
        out.push(check.report());
    }
    let mut finite = Check::new("W_q <= W_p for p <= q (random finite spaces)");
    for _ in 0..(n / 10).max(1) {
        let space = finite_space(rng, 4, true, true);
        for _ in 0..10 {
            let a = finite_diagram(rng, &space, 3);
            let b = finite_diagram(rng, &space, 3);
            let ws: Vec<ExtReal> = ps
                .iter()
                .map(|&p| wasserstein(&a, &b, &space, p).map(|m| m.total))
                .collect::<Result<_>>()?;
            for i in 0..ps.len() {
                for j in i + 1..ps.len() {
                    finite.bound((&a, ps[j]), (&b, ps[i]), ws[j], ws[i]);
                }
            }
        }
    }
    out.push(finite.report());

    let space = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
    let mut ratio = Check::new("W_p(n x, 0) / W_q(n x, 0) = n^(1/p - 1/q)");
    for _ in 0..(n / 20).max(1) {
        let x: HalfPlaneDiagramPoint = halfplane_point(rng, 10.0).into();
        for k in [1usize, 2, 4, 8] {
            let alpha = Diagram::from_counts([(x.clone(), k)], &space)?;
            for (i, &p) in ps.iter().enumerate() {
                for &q in &ps[i..] {
                    let wp = wasserstein(&alpha, &Diagram::empty(), &space, p)?.total.value();
                    let wq = wasserstein(&alpha, &Diagram::empty(), &space, q)?.total.value();
                    let expected = (k as f64).powf(p.reciprocal() - q.reciprocal());
                    ratio.equal((&x, k, p), q, ExtReal::new(wp / wq), ExtReal::new(expected));
                }
            }
        }
    }
    out.push(ratio.report());

    for p in PS {
        let space = HalfPlane::ell_inf().diagram_space(p);
        let mut lip = Check::new(format!("inclusion is 1-Lipschitz (p={p})"));
        for _ in 0..n {
            let x: HalfPlaneDiagramPoint = halfplane_point(rng, 10.0).into();
            let y: HalfPlaneDiagramPoint = halfplane_point(rng, 10.0).into();
            let w = wasserstein(
                &Diagram::include(x.clone(), &space),
                &Diagram::include(y.clone(), &space),
                &space,
                p,
            )?;
            lip.bound(&x, &y, w.total, space.distance(&x, &y));
        }
        out.push(lip.report());
    }

    let mut norms = Check::new("lp norms decrease in p and obey the n^(1/p - 1/q) bound");
    for _ in 0..n {
        let len = rng.random_range(1..=6);
        let v: Vec<ExtReal> = (0..len).map(|_| ExtReal::new(rng.random_range(0.0..10.0))).collect();
        for (i, &p) in ps.iter().enumerate() {
            for &q in &ps[i..] {
                let (np, nq) = (lp_norm(&v, p), lp_norm(&v, q));
                norms.bound((&v, q), p, nq, np);
                let factor = (len as f64).powf(p.reciprocal() - q.reciprocal());
                norms.bound((&v, p), q, np, nq.scale(factor));
            }
        }
    }
    out.push(norms.report());
    Ok(out)
}

fn oracle(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for p in PS {
        for (q, space) in halfplane_spaces(p) {
            let mut check = Check::new(format!("solver equals brute force (p={p}, half-plane l{q})"));
            for _ in 0..n {
                let a = halfplane_diagram(rng, &space, 4);
                let b = halfplane_diagram(rng, &space, 4);
                let w = wasserstein(&a, &b, &space, p)?.total;
                check.equal(&a, &b, w, brute_force_wasserstein(&a, &b, &space, p)?);
            }
            out.push(check.report());
        }
        let mut check = Check::new(format!("solver equals brute force (p={p}, 4-point finite spaces)"));
        for _ in 0..n {
            let space = finite_space(rng, 4, true, true);
            let a = finite_diagram(rng, &space, 4);
            let b = finite_diagram(rng, &space, 4);
            let w = wasserstein(&a, &b, &space, p)?.total;
            check.equal(
                (space.to_json(), &a),
                &b,
                w,
                brute_force_wasserstein(&a, &b, &space, p)?,
            );
        }
        out.push(check.report());
    }
    let mut matrices = Check::new("assignment equals exhaustive minimum (7x7 integer matrices)");
    for _ in 0..n {
        let c = CostMatrix::from_fn(7, |_, _| ExtReal::from(rng.random_range(0..20u32)));
        let mut best = ExtReal::INF;
        for_each_permutation(7, |sigma| best = best.min(c.permutation_cost(sigma)));
        let a = min_cost_assignment(&c);
        matrices.equal_within(&c, "exhaustive", a.total, best, 0.0);
    }
    out.push(matrices.report());
    Ok(out)
}

/// Random 1-Lipschitz candidates on `support`: the McShane hull of random
/// values, which is a max of 1-Lipschitz functions.
fn random_candidate<S: PointedSpace>(
    rng: &mut SeededRng,
    support: &[S::Point],
    space: &S,
) -> Result<SupportFunction<S::Point>> {
    let seeds = SupportFunction::new(support.iter().map(|x| (x.clone(), rng.random_range(-10.0..10.0))));
    let values = support
        .iter()
        .map(|x| mcshane_extend(&seeds, x, space).map(|v| (x.clone(), v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SupportFunction::new(values))
}

struct DualityChecks {
    gap: Check,
    feasibility: Check,
    tightness: Check,
    chain: Check,
    objective: Check,
    extension: Check,
    weak: Check,
}

impl DualityChecks {
    fn new(family: &str) -> Self {
        DualityChecks {
            gap: Check::new(format!("strong duality gap <= 1e-8 ({family})")),
            feasibility: Check::new(format!("certificate feasibility violation <= 1e-12 ({family})")),
            tightness: Check::new(format!("certificate tight on the realizing permutation ({family})")),
            chain: Check::new(format!("certificate satisfies all three Lipschitz families ({family})")),
            objective: Check::new(format!("support function objective equals the dual value ({family})")),
            extension: Check::new(format!(
                "McShane extension agrees on support and is 1-Lipschitz ({family})"
            )),
            weak: Check::new(format!("weak duality for random 1-Lipschitz candidates ({family})")),
        }
    }

    fn run<S: PointedSpace>(
        &mut self,
        rng: &mut SeededRng,
        alpha: &Diagram<S::Point>,
        beta: &Diagram<S::Point>,
        space: &S,
        probes: &[S::Point],
    ) -> Result<()> {
        let cert = kr_certificate(alpha, beta, space)?;
        let Some(dual) = cert.dual else {
            return Ok(());
        };
        let scale = cert.costs().max_finite().max(1.0);
        self.gap
            .small(alpha, beta, cert.gap().unwrap_or(f64::INFINITY), 1e-8 * scale);
        self.feasibility
            .small(alpha, beta, cert.feasibility_violation(), 1e-12 * scale);
        self.tightness
            .small(alpha, beta, cert.tightness_violation(), 1e-9 * scale);
        self.chain
            .small(alpha, beta, cert.chain_violation(alpha, beta, space), 1e-9 * scale);
        let h = support_function(&cert, alpha, beta, space)?;
        let obj = h.objective(alpha, beta, space)?;
        self.objective.small(alpha, beta, (obj - dual).abs(), 1e-9 * scale);

        if !h.is_empty() {
            let support: Vec<S::Point> = h.support().map(|(x, _)| x.clone()).collect();
            let mut worst = 0.0f64;
            for (x, v) in h.support() {
                worst = worst.max((mcshane_extend(&h, x, space)? - v).abs());
            }
            let pts: Vec<&S::Point> = support.iter().chain(probes).collect();
            let values: Vec<f64> = pts
                .iter()
                .map(|x| mcshane_extend(&h, *x, space))
                .collect::<Result<_>>()?;
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let d = space.distance(pts[i], pts[j]);
                    if d.is_finite() {
                        worst = worst.max((values[i] - values[j]).abs() - d.value());
                    }
                }
            }
            self.extension.small(alpha, beta, worst, 1e-9 * scale);

            let primal = cert.primal.value();
            for _ in 0..5 {
                let candidate = random_candidate(rng, &support, space)?;
                let value = candidate.objective(alpha, beta, space)?;
                self.weak.record(value <= primal + 1e-9 * scale, || {
                    Witness::new(
                        alpha,
                        beta,
                        ExtReal::try_new(value).unwrap_or(ExtReal::ZERO),
                        cert.primal,
                    )
                });
            }
        }
        Ok(())
    }

    fn reports(self) -> Vec<Report> {
        [
            self.gap,
            self.feasibility,
            self.tightness,
            self.chain,
            self.objective,
            self.extension,
            self.weak,
        ]
        .into_iter()
        .map(Check::report)
        .collect()
    }
}

fn duality(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for (q, space) in halfplane_spaces(PExponent::ONE) {
        let mut checks = DualityChecks::new(&format!("half-plane l{q}"));
        for _ in 0..n {
            let a = halfplane_diagram(rng, &space, 4);
            let b = halfplane_diagram(rng, &space, 4);
            let probes: Vec<HalfPlaneDiagramPoint> = (0..5).map(|_| halfplane_point(rng, 12.0).into()).collect();
            checks.run(rng, &a, &b, &space, &probes)?;
        }
        out.extend(checks.reports());
    }
    let mut checks = DualityChecks::new("random finite spaces");
    for _ in 0..n {
        let space = finite_space(rng, 5, false, true);
        let a = finite_diagram(rng, &space, 4);
        let b = finite_diagram(rng, &space, 4);
        let probes: Vec<usize> = (0..space.len()).collect();
        checks.run(rng, &a, &b, &space, &probes)?;
    }
    out.extend(checks.reports());
    Ok(out)
}

fn strengthening(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let strong_ps = [PExponent::Finite(1.5), PExponent::Finite(2.0), PExponent::Infinity];
    for p in strong_ps {
        let mut strengthened = Check::new(format!("p-strengthening satisfies the strengthened inequality (p={p})"));
        let mut basepoint = Check::new(format!("p-strengthening keeps basepoint distances (p={p})"));
        let mut idempotent = Check::new(format!("p-strengthening is idempotent (p={p})"));
        let mut equivalent = Check::new(format!("d_p <= d <= 2^(1-1/p) d_p (p={p})"));
        let mut restriction = Check::new(format!("i*W_p equals d_p (p={p})"));
        let mut invariance = Check::new(format!("W_p over d_p equals W_p over d (p={p})"));
        for _ in 0..(n / 10).max(1) {
            let space = finite_space(rng, 5, true, true);
            let strong = p_strengthen(&space, p);
            let twice = p_strengthen(&strong, p);
            let pts = space.points();
            let pairs: Vec<(usize, usize)> = pts.iter().flat_map(|&x| pts.iter().map(move |&y| (x, y))).collect();
            strengthened.record(check_p_strengthened(&strong, p, &pairs), || {
                Witness::new(space.to_json(), p, ExtReal::ZERO, ExtReal::ZERO)
            });
            let factor = 2f64.powf(1.0 - p.reciprocal());
            for &(x, y) in &pairs {
                let (d, dp) = (space.distance(&x, &y), strong.distance(&x, &y));
                if y == space.basepoint() {
                    basepoint.equal_within(x, y, dp, d, 0.0);
                }
                idempotent.equal(x, y, twice.distance(&x, &y), dp);
                equivalent.bound(x, y, dp, d);
                equivalent.bound(x, y, d, dp.scale(factor));
                let w = wasserstein(&Diagram::include(x, &space), &Diagram::include(y, &space), &space, p)?.total;
                restriction.equal(x, y, w, dp);
            }
            for _ in 0..10 {
                let a = finite_diagram(rng, &space, 3);
                let b = finite_diagram(rng, &space, 3);
                invariance.equal(
                    &a,
                    &b,
                    wasserstein(&a, &b, &strong, p)?.total,
                    wasserstein(&a, &b, &space, p)?.total,
                );
            }
        }
        for c in [strengthened, basepoint, idempotent, equivalent, restriction, invariance] {
            out.push(c.report());
        }
    }

    for q in QS {
        let base = HalfPlane::new(q).diagram_space(PExponent::ONE);
        for p in strong_ps {
            let quotient = HalfPlane::new(q).diagram_space(p);
            let strong = p_strengthen(&base, p);
            let mut same = Check::new(format!(
                "strengthening the 1-quotient gives the p-quotient (p={p}, l{q})"
            ));
            let mut invariance = Check::new(format!(
                "W_p over the 1-quotient equals W_p over the p-quotient (p={p}, l{q})"
            ));
            for _ in 0..n {
                let x: HalfPlaneDiagramPoint = halfplane_point(rng, 10.0).into();
                let y: HalfPlaneDiagramPoint = halfplane_point(rng, 10.0).into();
                same.equal(&x, &y, strong.distance(&x, &y), quotient.distance(&x, &y));
                let a = halfplane_diagram(rng, &base, 3);
                let b = halfplane_diagram(rng, &base, 3);
                invariance.equal(
                    &a,
                    &b,
                    wasserstein(&a, &b, &base, p)?.total,
                    wasserstein(&a, &b, &quotient, p)?.total,
                );
            }
            out.push(same.report());
            out.push(invariance.report());
        }
    }

    for q in QS {
        let mut strengthened = Check::new(format!("quotient by the diagonal is p-strengthened (l{q})"));
        let mut order = Check::new(format!("quotient metrics decrease in p (l{q})"));
        let mut bound = Check::new(format!("quotient metrics are equivalent across p (l{q})"));
        let mut below = Check::new(format!("quotient metric is below the ambient metric (l{q})"));
        let ps = [
            PExponent::ONE,
            PExponent::Finite(2.0),
            PExponent::Finite(3.0),
            PExponent::Infinity,
        ];
        let quotients: Vec<HalfPlaneQuotient> = ps.iter().map(|&p| HalfPlane::new(q).diagram_space(p)).collect();
        let plane = HalfPlane::new(q);
        for _ in 0..n {
            let x = halfplane_point(rng, 10.0);
            let y = halfplane_point(rng, 10.0);
            let (qx, qy): (HalfPlaneDiagramPoint, HalfPlaneDiagramPoint) = (x.into(), y.into());
            let ds: Vec<ExtReal> = quotients.iter().map(|s| s.distance(&qx, &qy)).collect();
            for (i, s) in quotients.iter().enumerate() {
                strengthened.record(check_p_strengthened(s, ps[i], &[(qx.clone(), qy.clone())]), || {
                    Witness::new(&qx, &qy, ds[i], ExtReal::ZERO)
                });
                below.bound(x, y, ds[i], plane.distance(&x, &y));
                for j in i + 1..ps.len() {
                    order.bound((&x, ps[j]), (&y, ps[i]), ds[j], ds[i]);
                    let factor = 2f64.powf(ps[i].reciprocal() - ps[j].reciprocal());
                    bound.bound((&x, ps[i]), (&y, ps[j]), ds[i], ds[j].scale(factor));
                }
            }
        }
        for c in [strengthened, order, bound, below] {
            out.push(c.report());
        }
    }

    let mut finite_quotients = Check::new("quotients of random finite spaces are p-strengthened pseudometrics");
    for _ in 0..(n / 10).max(1) {
        let space = finite_space(rng, 5, false, false);
        let subset: Vec<usize> = vec![0, 1];
        for p in PS {
            let quotient = quotient_metric(&space, subset.clone(), p)?;
            let pts: Vec<QuotientPoint<usize>> = std::iter::once(QuotientPoint::Collapsed)
                .chain((2..space.len()).map(QuotientPoint::Point))
                .collect();
            let table = FiniteSpace::subspace(&quotient, &pts)?;
            let pairs: Vec<(usize, usize)> = (0..pts.len())
                .flat_map(|i| (0..pts.len()).map(move |j| (i, j)))
                .collect();
            let ok = check_metric_axioms(&table).is_pseudometric() && check_p_strengthened(&table, p, &pairs);
            let separated = check_metric_axioms(&table).separation;
            finite_quotients.record(ok && separated, || {
                Witness::new(table.to_json(), p, ExtReal::ZERO, ExtReal::ZERO)
            });
        }
    }
    out.push(finite_quotients.report());
    Ok(out)
}

fn quotient_reduced(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for p in QS {
        for (q, space) in halfplane_spaces(p) {
            let mut check = Check::new(format!("reduced formula equals W_p over the quotient (p={p}, l{q})"));
            for _ in 0..n {
                let a = halfplane_diagram(rng, &space, 4);
                let b = halfplane_diagram(rng, &space, 4);
                check.equal(
                    &a,
                    &b,
                    wasserstein_quotient_reduced(&a, &b, &space, p)?.total,
                    wasserstein(&a, &b, &space, p)?.total,
                );
            }
            out.push(check.report());
        }
    }
    let space = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
    let mut contract = Check::new("mismatched exponent is rejected");
    for p in [PExponent::Finite(2.0), PExponent::Infinity] {
        let res = wasserstein_quotient_reduced(&Diagram::empty(), &Diagram::empty(), &space, p);
        contract.record(matches!(res, Err(Error::Contract(_))), || {
            Witness::new(p, "quotient p=1", ExtReal::ZERO, ExtReal::ZERO)
        });
    }
    out.push(contract.report());
    Ok(out)
}

fn persistence(x: &HalfPlaneDiagramPoint) -> f64 {
    match x {
        QuotientPoint::Collapsed => 0.0,
        QuotientPoint::Point(pt) => pt.persistence().value(),
    }
}

fn universality(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();

    let mut hom = Check::new("extension agrees with the free extension and with phi on singletons");
    for q in QS {
        let space = HalfPlane::new(q).diagram_space(PExponent::ONE);
        for _ in 0..(n / 4).max(1) {
            let a = halfplane_diagram(rng, &space, 4);
            let x: HalfPlaneDiagramPoint = halfplane_point(rng, 10.0).into();
            let e = extend_lipschitz(&space, &RealSum, persistence, &a, PExponent::ONE)?;
            let f = extend_hom(&space, &RealSum, persistence, &a)?;
            hom.equal(&a, "extend_hom", ExtReal::abs_diff(e, f), ExtReal::ZERO);
            let s = extend_lipschitz(
                &space,
                &RealSum,
                persistence,
                &Diagram::include(x.clone(), &space),
                PExponent::ONE,
            )?;
            hom.equal(&x, "phi", ExtReal::abs_diff(s, persistence(&x)), ExtReal::ZERO);
        }
    }
    out.push(hom.report());

    for q in QS {
        let norm = ExtReal::new(1.0 / diagonal_factor(q));
        let singletons: Vec<HalfPlaneDiagramPoint> = (0..12).map(|_| halfplane_point(rng, 10.0).into()).collect();
        for (p, sum) in [(PExponent::ONE, true), (PExponent::Infinity, false)] {
            let space = HalfPlane::new(q).diagram_space(p);
            let pairs = pairs_of(rng, n, |r| halfplane_diagram(r, &space, 3));
            let mut r = if sum {
                check_norm_law(&space, &RealSum, persistence, norm, p, &pairs, &singletons)?
            } else {
                check_norm_law(&space, &MaxPlus, persistence, norm, p, &pairs, &singletons)?
            };
            r.property = format!("{} (persistence, p={p}, l{q})", r.property);
            out.push(r);
        }
    }

    let mut finite_norm = Vec::new();
    for _ in 0..(n / 20).max(1) {
        let space = finite_space(rng, 5, false, true);
        let c = rng.random_range(0..space.len());
        let x0 = space.basepoint();
        let phi = |x: &usize| space.distance(x, &c).value() - space.distance(&x0, &c).value();
        let norm = lipschitz_norm(&space, phi, |a: &f64, b: &f64| ExtReal::abs_diff(*a, *b));
        let pairs = pairs_of(rng, 20, |r| finite_diagram(r, &space, 3));
        let singletons = space.points();
        finite_norm.push(check_norm_law(
            &space,
            &RealSum,
            phi,
            norm,
            PExponent::ONE,
            &pairs,
            &singletons,
        )?);
    }
    out.push(merge(
        "norm law for distance functions on random finite spaces".into(),
        finite_norm,
    ));

    let mut upper = Vec::new();
    let mut self_check = Vec::new();
    let mut scaled = Check::new("maximality rejects rho = 2 W_p as a failed precondition");
    for p in [PExponent::ONE, PExponent::Finite(2.0), PExponent::Infinity] {
        for _ in 0..(n / 40).max(1) {
            let space = finite_space(rng, 3, false, false);
            for q in PS.into_iter().filter(|&q| q >= p) {
                let rho = |a: &Diagram<usize>, b: &Diagram<usize>| wasserstein(a, b, &space, q).expect("members").total;
                upper.push(check_maximality(&space, rho, p, 3, 100, rng)?);
            }
            let w = |a: &Diagram<usize>, b: &Diagram<usize>| wasserstein(a, b, &space, p).expect("members").total;
            self_check.push(check_maximality(&space, w, p, 3, 100, rng)?);
            let doubled = |a: &Diagram<usize>, b: &Diagram<usize>| w(a, b).scale(2.0);
            let r = check_maximality(&space, doubled, p, 3, 100, rng)?;
            let status = r.status;
            scaled.record(status == Status::PreconditionFailed, || {
                Witness::new(space.to_json(), format!("{status:?}"), ExtReal::ZERO, ExtReal::ZERO)
            });
        }
    }
    out.push(merge("maximality passes for rho = W_q with q >= p".into(), upper));
    out.push(merge("maximality passes for rho = W_p".into(), self_check));
    out.push(scaled.report());

    let mut tri = Vec::new();
    let mut expected = Check::new("trichotomy outcomes on known spaces");
    for p in PS {
        for _ in 0..(n / 40).max(1) {
            let space = finite_space(rng, 4, true, true);
            let raw = check_restriction_trichotomy(&space, p)?;
            tri.push(raw.report.clone());
            let strong = p_strengthen(&space, p);
            let s = check_restriction_trichotomy(&strong, p)?;
            expected.record(s.strengthened && s.restriction_is_d, || {
                Witness::new("strengthened space", p, ExtReal::ZERO, ExtReal::ZERO)
            });
            if p == PExponent::ONE {
                expected.record(raw.strengthened && raw.restriction_is_d, || {
                    Witness::new("p = 1", space.to_json(), ExtReal::ZERO, ExtReal::ZERO)
                });
            }
            tri.push(s.report);
        }
    }
    let base = HalfPlane::ell_inf().diagram_space(PExponent::ONE);
    let sample: Vec<HalfPlaneDiagramPoint> = vec![
        QuotientPoint::Collapsed,
        HalfPlanePoint::new(0.0, 2.0).into(),
        HalfPlanePoint::new(10.0, 12.0).into(),
    ];
    let table = FiniteSpace::subspace(&base, &sample)?;
    let t = check_restriction_trichotomy(&table, PExponent::Infinity)?;
    expected.record(!t.strengthened && !t.restriction_is_d, || {
        Witness::new(
            "half-plane sample, p = inf",
            table.to_json(),
            ExtReal::ZERO,
            ExtReal::ZERO,
        )
    });
    tri.push(t.report);
    out.push(merge("p-strengthened inequality holds iff i*W_p = d".into(), tri));
    out.push(expected.report());

    for p in PS {
        let space = HalfPlane::ell_inf().diagram_space(p);
        let tuples: Vec<_> = (0..(n / 10).max(1))
            .map(|_| {
                let k = rng.random_range(1..=4);
                let a: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..10.0)).collect();
                let b: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..10.0)).collect();
                (a, b)
            })
            .collect();
        let mut r = check_permuted_sums(&RealSum, &tuples);
        r.property = format!("{} (real sums)", r.property);
        out.push(r);
        let quads = quads_of(rng, (n / 4).max(1), |r| halfplane_diagram(r, &space, 2));
        let mut r = check_declared_subadditivity(&WassersteinMonoid::new(&space, p), &quads);
        r.property = format!("diagram monoid: {}", r.property);
        out.push(r);
    }
    Ok(out)
}

fn converse(rng: &mut SeededRng, n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let hausdorff = IntervalSpace::hausdorff();
    let interleaving = IntervalSpace::interleaving();
    let inf = PExponent::Infinity;

    let mut stability = Check::new("W_inf over interleaving <= W_inf over Hausdorff");
    for _ in 0..n {
        let a = interval_diagram(rng, &hausdorff, 4);
        let b = interval_diagram(rng, &hausdorff, 4);
        stability.bound(
            &a,
            &b,
            wasserstein(&a, &b, &interleaving, inf)?.total,
            wasserstein(&a, &b, &hausdorff, inf)?.total,
        );
    }
    out.push(stability.report());

    let half = IntervalSpace::new(IntervalMetric::Hausdorff(EmptyConvention::HalfLength));
    let strengthened = p_strengthen(half, inf);
    let mut at_empty = Check::new("interleaving equals the inf-strengthened Hausdorff distance at the empty interval");
    let pool = interval_pool(rng, 2 * n);
    for pair in pool.chunks(2) {
        if let [i, j] = pair {
            at_empty.equal(i, j, interleaving.distance(i, j), strengthened.distance(i, j));
        }
    }
    out.push(at_empty.report());

    let rho =
        |a: &Diagram<Interval>, b: &Diagram<Interval>| wasserstein(a, b, &interleaving, inf).expect("members").total;
    let pairs = pairs_of(rng, n, |r| interval_diagram(r, &interleaving, 3));
    let quads = quads_of(rng, n, |r| interval_diagram(r, &interleaving, 2));
    let mut r = converse_stability(&interleaving, rho, inf, &pairs, &quads)?;
    r.property = format!("{} (rho = bottleneck over interleaving)", r.property);
    out.push(r);

    for p in PS {
        let space = HalfPlane::ell_inf().diagram_space(p);
        let rho = |a: &Diagram<HalfPlaneDiagramPoint>, b: &Diagram<HalfPlaneDiagramPoint>| {
            wasserstein(a, b, &space, p).expect("members").total
        };
        let mut pairs = pairs_of(rng, (n / 4).max(1), |r| halfplane_diagram(r, &space, 3));
        pairs.push((Diagram::empty(), Diagram::empty()));
        let quads = quads_of(rng, (n / 4).max(1), |r| halfplane_diagram(r, &space, 2));
        let mut r = converse_stability(&space, rho, p, &pairs, &quads)?;
        r.property = format!("{} (rho = W_p, p={p})", r.property);
        out.push(r);
        let mut eq = Check::new(format!("W_p[i*W_p] equals W_p (p={p})"));
        let induced = crate::universality::InducedMetric::new(&space, rho);
        for (a, b) in &pairs {
            eq.equal(a, b, wasserstein(a, b, &induced, p)?.total, rho(a, b));
        }
        out.push(eq.report());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::INDIVIDUAL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Parse(_))));
    }

    #[test]
    fn every_suite_passes_on_small_samples() {
        let cfg = VerifyConfig { seed: 5, samples: 12 };
        for s in Suite::INDIVIDUAL {
            let reports = run_suite(s, &cfg).unwrap();
            assert!(!reports.is_empty(), "{s}");
            for r in &reports {
                assert!(r.passed(), "{s}: {r:?}");
            }
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let cfg = VerifyConfig { seed: 9, samples: 5 };
        assert_eq!(
            run_suite(Suite::Padding, &cfg).unwrap(),
            run_suite(Suite::Padding, &cfg).unwrap()
        );
    }
}
