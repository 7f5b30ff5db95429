/// `(ω_t, γ_t)` for threshold bound `t`.
///
/// `ω_t = log₂(2^t − 1)/t² + (t − 1)/t` is the exponent of the minimal partial
/// vertex cover enumeration on graphs with `Δ < t`; `γ_t` is the share of
/// undecided vertices below which Stage I brute-forces instead of moving on to
/// the activation-description branching:
///
/// `γ_t = ((t − 1) + log₂ C(t+2, 2)) / ((t − ω_t) + log₂ C(t+2, 2))`.
pub fn compute_constants(t: usize) -> (f64, f64) {
    assert!(t >= 1, "threshold bound must be positive");
    let tf = t as f64;
    let omega = ((2f64).powi(t as i32) - 1.0).log2() / (tf * tf) + (tf - 1.0) / tf;
    let pairs = ((t + 2) * (t + 1) / 2) as f64;
    let gamma = ((tf - 1.0) + pairs.log2()) / ((tf - omega) + pairs.log2());
    (omega, gamma)
}

/// Number of `(d, dg)` pairs with `0 ≤ d ≤ dg ≤ t`, i.e. `C(t+2, 2)`.
pub fn dp_pair_variants(t: usize) -> usize {
    (0..=t).map(|dg| dg + 1).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_for_two() {
        let (omega, gamma) = compute_constants(2);
        let want_omega = 0.25 * 3f64.log2() + 0.5;
        assert!((omega - want_omega).abs() < 1e-12);
        assert!((omega - 0.896241).abs() < 1e-6);
        let want_gamma = (1.0 + 6f64.log2()) / ((2.0 - want_omega) + 6f64.log2());
        assert!((gamma - want_gamma).abs() < 1e-12);
        assert!((gamma - 0.971871).abs() < 1e-6);
    }

    #[test]
    fn both_below_one() {
        for t in 1..=8 {
            let (omega, gamma) = compute_constants(t);
            assert!(omega < 1.0 && gamma < 1.0, "t={t}: {omega} {gamma}");
            assert!(omega >= 0.0 && gamma > 0.0);
        }
    }

    #[test]
    fn pair_variants_are_binomial() {
        for t in 0..8 {
            assert_eq!(dp_pair_variants(t), (t + 2) * (t + 1) / 2);
        }
    }
}
