mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::{brute, lp, quotient};
use pdmetric::io::{diagram_from_json, diagram_to_json};
use pdmetric::metric::{lp_norm, FiniteSpace, QuotientPoint};
use pdmetric::spaces::{
    AnagramSpace, FiniteAbelianGroup, HalfPlane, HalfPlaneDiagramPoint, HalfPlanePoint, HalfPlaneQuotient, WordMetric,
};
use pdmetric::wasserstein::wasserstein;
use pdmetric::{Diagram, ExtReal, PExponent};

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), Just(f64::INFINITY)]
}

fn pexp(p: f64) -> PExponent {
    if p.is_infinite() {
        PExponent::Infinity
    } else {
        PExponent::new(p).unwrap()
    }
}

fn point() -> impl Strategy<Value = HalfPlaneDiagramPoint> {
    prop_oneof![
        (0i32..6, 1i32..5).prop_map(|(b, l)| (b as f64, (b + l) as f64)),
        (0.0..10.0f64, 0.01..5.0f64).prop_map(|(b, l)| (b, b + l)),
    ]
    .prop_map(|(b, d)| QuotientPoint::Point(HalfPlanePoint::new(b, d)))
}

fn points(max: usize) -> impl Strategy<Value = Vec<HalfPlaneDiagramPoint>> {
    prop::collection::vec(point(), 0..=max)
}

fn space(q: f64, p: f64) -> HalfPlaneQuotient {
    HalfPlane::new(pexp(q)).diagram_space(pexp(p))
}

fn diagram(pts: &[HalfPlaneDiagramPoint], space: &HalfPlaneQuotient) -> Diagram<HalfPlaneDiagramPoint> {
    Diagram::from_points(pts.iter().cloned(), space).unwrap()
}

fn w(a: &Diagram<HalfPlaneDiagramPoint>, b: &Diagram<HalfPlaneDiagramPoint>, space: &HalfPlaneQuotient, p: f64) -> f64 {
    wasserstein(a, b, space, pexp(p)).unwrap().total.value()
}

fn tol(x: f64) -> f64 {
    1e-9 * x.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn diagram_addition_is_a_commutative_monoid(a in points(4), b in points(4), c in points(4)) {
        let s = space(2.0, 2.0);
        let (a, b, c) = (diagram(&a, &s), diagram(&b, &s), diagram(&c, &s));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&Diagram::empty()), a.clone());
        prop_assert_eq!(a.add(&b).len(), a.len() + b.len());
    }

    #[test]
    fn basepoint_atoms_are_dropped(pts in points(4), t in -5.0..5.0f64, k in 1usize..4) {
        let s = space(1.0, 1.0);
        let mut padded = pts.clone();
        padded.extend(std::iter::repeat_n(QuotientPoint::Point(HalfPlanePoint::new(t, t)), k));
        padded.push(QuotientPoint::Collapsed);
        prop_assert_eq!(diagram(&padded, &s), diagram(&pts, &s));
        prop_assert!(Diagram::include(QuotientPoint::Collapsed, &s).is_empty());
    }

    #[test]
    fn wasserstein_is_a_metric(a in points(4), b in points(4), c in points(4), p in exponent(), q in exponent()) {
        let s = space(q, p);
        let (a, b, c) = (diagram(&a, &s), diagram(&b, &s), diagram(&c, &s));
        let ab = w(&a, &b, &s, p);
        prop_assert_eq!(w(&a, &a, &s, p), 0.0);
        prop_assert!((ab - w(&b, &a, &s, p)).abs() <= tol(ab));
        let via = w(&a, &c, &s, p) + w(&c, &b, &s, p);
        prop_assert!(ab <= via + tol(via));
    }

    #[test]
    fn wasserstein_matches_enumeration(a in points(3), b in points(3), p in exponent(), q in exponent()) {
        let s = space(q, p);
        let value = w(&diagram(&a, &s), &diagram(&b, &s), &s, p);
        let oracle = brute(&a, &b, &QuotientPoint::Collapsed, &|x, y| quotient(x, y, q, p), p);
        prop_assert!((value - oracle).abs() <= tol(oracle), "{} vs {}", value, oracle);
    }

    #[test]
    fn matching_costs_reproduce_the_total(a in points(5), b in points(5), p in exponent()) {
        let s = space(2.0, p);
        let m = wasserstein(&diagram(&a, &s), &diagram(&b, &s), &s, pexp(p)).unwrap();
        let costs: Vec<f64> = m.pairs.iter().map(|pair| pair.cost.value()).collect();
        let total = m.total.value();
        prop_assert!((lp(&costs, p) - total).abs() <= tol(total));
        prop_assert_eq!(m.pairs.iter().filter(|pair| matches!(pair.left, pdmetric::wasserstein::Slot::Atom(_))).count(), a.len());
    }

    #[test]
    fn lp_norm_matches_oracle_and_decreases_in_p(v in prop::collection::vec(0.0..100.0f64, 0..8), p in exponent(), q in exponent()) {
        let ext: Vec<ExtReal> = v.iter().copied().map(ExtReal::new).collect();
        let np = lp_norm(&ext, pexp(p)).value();
        prop_assert!((np - lp(&v, p)).abs() <= tol(np));
        let nq = lp_norm(&ext, pexp(q)).value();
        if p <= q {
            prop_assert!(nq <= np + tol(np));
        }
    }

    #[test]
    fn halfplane_json_round_trips(pts in points(6), p in exponent()) {
        let s = space(2.0, p);
        let d = diagram(&pts, &s);
        let json = diagram_to_json(&d, &s);
        let back = diagram_from_json(&json, &s).unwrap();
        prop_assert_eq!(diagram_to_json(&back, &s), json);
        prop_assert_eq!(back.len(), d.len());
        prop_assert!(w(&back, &d, &s, 1.0) <= 1e-10 * d.len().max(1) as f64 * 20.0);
    }

    #[test]
    fn finite_json_round_trips(counts in prop::collection::vec(0usize..3, 3)) {
        let s = FiniteSpace::discrete(&["o", "a", "b", "c"], 0);
        let d = Diagram::from_counts(counts.iter().enumerate().map(|(i, &k)| (i + 1, k)), &s).unwrap();
        let back = diagram_from_json(&diagram_to_json(&d, &s), &s).unwrap();
        prop_assert_eq!(back, d);
        let reloaded = FiniteSpace::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(reloaded.matrix(), s.matrix());
    }

    #[test]
    fn anagram_solver_matches_multiset_formula(s in "[a-e ]{0,9}", t in "[a-e ]{0,9}") {
        let space = AnagramSpace::new('a'..='e');
        let solved = wasserstein(&space.diagram(&s).unwrap(), &space.diagram(&t).unwrap(), &space, PExponent::ONE).unwrap().total.value();
        let mut counts: BTreeMap<char, (usize, usize)> = BTreeMap::new();
        s.chars().filter(|c| *c != ' ').for_each(|c| counts.entry(c).or_default().0 += 1);
        t.chars().filter(|c| *c != ' ').for_each(|c| counts.entry(c).or_default().1 += 1);
        let (n, m) = counts.values().fold((0, 0), |(n, m), (x, y)| (n + x, m + y));
        let shared: usize = counts.values().map(|(x, y)| x.min(y)).sum();
        let expected = n.max(m) - shared;
        prop_assert_eq!(solved, expected as f64);
        prop_assert_eq!(space.distance_between(&s, &t).unwrap(), expected);
    }

    #[test]
    fn word_metric_is_translation_invariant(n in 2u32..16, step in 1u32..4, g in 0u32..16, h in 0u32..16, k in 0u32..16) {
        let group = FiniteAbelianGroup::cyclic(n).unwrap();
        let step = step % n;
        prop_assume!(step != 0 && gcd(step, n) == 1);
        let mut gens = vec![vec![step], vec![n - step]];
        gens.sort();
        gens.dedup();
        let metric = WordMetric::new(group, gens).unwrap();
        let (g, h, k) = (vec![g % n], vec![h % n], vec![k % n]);
        let shifted = metric.word_distance(&metric.group().add(&g, &k), &metric.group().add(&h, &k)).unwrap();
        prop_assert_eq!(shifted, metric.word_distance(&g, &h).unwrap());
        prop_assert_eq!(metric.word_distance(&g, &h).unwrap(), metric.word_distance(&h, &g).unwrap());
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
