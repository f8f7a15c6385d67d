//! Reference computations used as oracles by the integration tests. Nothing
//! here calls the library's solvers, norms or metrics.

#![allow(dead_code)]

use pdmetric::metric::QuotientPoint;
use pdmetric::spaces::{HalfPlaneDiagramPoint, HalfPlanePoint, Interval};

/// ℓp norm with `p = f64::INFINITY` meaning the maximum.
pub fn lp(v: &[f64], p: f64) -> f64 {
    if v.iter().any(|x| x.is_infinite()) {
        return f64::INFINITY;
    }
    if p.is_infinite() {
        v.iter().copied().fold(0.0, f64::max)
    } else {
        v.iter().map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Visits all permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == used.len() {
            f(cur);
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k + 1, used, cur, f);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(0, &mut vec![false; n], &mut Vec::with_capacity(n), f);
}

/// `min over σ of ‖(d(left_k, right_σ(k)))_k‖_p` after padding `a` with
/// `extra_left + b.len()` copies of `x0` and `b` with `extra_right + a.len()`
/// copies, trimming both to equal length.
pub fn brute_padded<P: Clone>(
    a: &[P],
    b: &[P],
    x0: &P,
    extra: (usize, usize),
    dist: &dyn Fn(&P, &P) -> f64,
    p: f64,
) -> f64 {
    let mut left: Vec<P> = a.to_vec();
    left.extend(std::iter::repeat_n(x0.clone(), b.len() + extra.0));
    let mut right: Vec<P> = b.to_vec();
    right.extend(std::iter::repeat_n(x0.clone(), a.len() + extra.1));
    let r = left.len().max(right.len());
    left.resize(r, x0.clone());
    right.resize(r, x0.clone());
    let d: Vec<Vec<f64>> = left
        .iter()
        .map(|x| right.iter().map(|y| dist(x, y)).collect())
        .collect();
    let mut best = f64::INFINITY;
    let mut buf = vec![0.0; r];
    permutations(r, &mut |sigma| {
        for (k, &j) in sigma.iter().enumerate() {
            buf[k] = d[k][j];
        }
        best = best.min(lp(&buf, p));
    });
    if r == 0 {
        0.0
    } else {
        best
    }
}

pub fn brute<P: Clone>(a: &[P], b: &[P], x0: &P, dist: &dyn Fn(&P, &P) -> f64, p: f64) -> f64 {
    brute_padded(a, b, x0, (0, 0), dist, p)
}

/// ℓq distance in the plane.
pub fn lq(x: (f64, f64), y: (f64, f64), q: f64) -> f64 {
    lp(&[(x.0 - y.0).abs(), (x.1 - y.1).abs()], q)
}

/// Distance to the diagonal: the nearest diagonal point of `(b, d)` is the
/// midpoint `((b + d) / 2, (b + d) / 2)`.
pub fn diag(x: (f64, f64), q: f64) -> f64 {
    let m = (x.0 + x.1) / 2.0;
    lq(x, (m, m), q)
}

/// `min over t in [lo, hi] of ‖(b - t, d - t)‖_q` on a uniform grid.
pub fn diag_grid(x: (f64, f64), q: f64, steps: usize) -> f64 {
    let (lo, hi) = (x.0 - 1.0, x.1 + 1.0);
    (0..=steps)
        .map(|k| {
            let t = lo + (hi - lo) * k as f64 / steps as f64;
            lq(x, (t, t), q)
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn coords(x: &HalfPlanePoint) -> (f64, f64) {
    (x.birth(), x.death())
}

/// The p-quotient metric on the half-plane under ℓq.
pub fn quotient(x: &HalfPlaneDiagramPoint, y: &HalfPlaneDiagramPoint, q: f64, p: f64) -> f64 {
    match (x, y) {
        (QuotientPoint::Collapsed, QuotientPoint::Collapsed) => 0.0,
        (QuotientPoint::Point(a), QuotientPoint::Collapsed) | (QuotientPoint::Collapsed, QuotientPoint::Point(a)) => {
            diag(coords(a), q)
        }
        (QuotientPoint::Point(a), QuotientPoint::Point(b)) => {
            let direct = lq(coords(a), coords(b), q);
            direct.min(lp(&[diag(coords(a), q), diag(coords(b), q)], p))
        }
    }
}

pub fn endpoints(i: &Interval) -> Option<(f64, f64)> {
    match *i {
        Interval::Empty => None,
        Interval::Span { lo, hi, .. } => Some((lo.0, hi.0)),
    }
}

fn len(i: &Interval) -> f64 {
    endpoints(i).map_or(0.0, |(a, b)| b - a)
}

/// Hausdorff distance with `d_H(I, ∅) = ∞` for nonempty `I`.
pub fn hausdorff(i: &Interval, j: &Interval) -> f64 {
    match (endpoints(i), endpoints(j)) {
        (None, None) => 0.0,
        (Some((a, b)), Some((c, d))) => (a - c).abs().max((b - d).abs()),
        _ => f64::INFINITY,
    }
}

/// Hausdorff distance with `d_H(I, ∅) = len(I) / 2`.
pub fn hausdorff_half(i: &Interval, j: &Interval) -> f64 {
    match (endpoints(i), endpoints(j)) {
        (Some(_), Some(_)) | (None, None) => hausdorff(i, j),
        _ => len(i).max(len(j)) / 2.0,
    }
}

/// Interleaving distance of interval modules: a δ-interleaving exists iff
/// both intervals can be shifted onto each other by δ, or both die within
/// 2δ.
pub fn interleaving(i: &Interval, j: &Interval) -> f64 {
    let die = len(i).max(len(j)) / 2.0;
    match (endpoints(i), endpoints(j)) {
        (Some((a, b)), Some((c, d))) => ((a - c).abs().max((b - d).abs())).min(die),
        _ => die,
    }
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        a == b
    } else {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }
}
