use super::{ExtReal, PExponent};

/// ℓp norm of a vector of extended reals.
///
/// Returns `(Σ vᵢ^p)^{1/p}` for finite `p` and `max vᵢ` for `p = ∞`. Any
/// infinite entry makes the norm infinite; the empty vector has norm 0.
/// Finite-`p` sums are taken after dividing by the largest entry so that
/// neither overflow nor underflow depends on the magnitude of the inputs.
pub fn lp_norm(v: &[ExtReal], p: PExponent) -> ExtReal {
    let max = v.iter().copied().max().unwrap_or(ExtReal::ZERO);
    if max.is_infinite() || max.is_zero() {
        return max;
    }
    match p {
        PExponent::Infinity => max,
        PExponent::Finite(1.0) => v.iter().copied().sum(),
        PExponent::Finite(e) => {
            let m = max.value();
            let s: f64 = v.iter().map(|x| (x.value() / m).powf(e)).sum();
            ExtReal::new(m * s.powf(1.0 / e))
        }
    }
}

/// Two-entry convenience for the ubiquitous `‖(a, b)‖_p`.
pub(crate) fn lp_pair(a: ExtReal, b: ExtReal, p: PExponent) -> ExtReal {
    lp_norm(&[a, b], p)
}
