//! Closed-form index values.
//!
//! Counts, rounds and arm numbers are integers, so every `log₊` argument is
//! a ratio of integers. The ratio is compared exactly and the logarithm is
//! taken as `ln_1p(excess / den)`, which keeps full relative precision right
//! at the clamp boundary. An unobserved action (count 0) scores `+∞`.

/// `max(ln(num/den), 0)`.
pub fn log_plus_ratio(num: u128, den: u128) -> f64 {
    if num <= den {
        0.0
    } else {
        ((num - den) as f64 / den as f64).ln_1p()
    }
}

/// `sqrt(log₊(clock / (actions · count)) / count)`.
pub fn exploration_bonus(count: u64, clock: u64, actions: u64) -> f64 {
    if count == 0 {
        return f64::INFINITY;
    }
    let den = u128::from(actions) * u128::from(count);
    (log_plus_ratio(u128::from(clock), den) / count as f64).sqrt()
}

/// DFL-SSO: `X̄ + sqrt(log₊(t/(K·O))/O)`.
pub fn sso_index(mean: f64, observations: u64, t: u64, arms: u64) -> f64 {
    mean + exploration_bonus(observations, t, arms)
}

/// DFL-CSO, with `mean` the per-strategy mean already divided by M and
/// `actions` the normalizing constant (|F| by default).
pub fn cso_index(mean: f64, observations: u64, t: u64, actions: u64) -> f64 {
    mean + exploration_bonus(observations, t, actions)
}

/// DFL-SSR, with `side_mean` the (normalized) side-reward mean and
/// `side_observations` the side-reward count O^b.
pub fn ssr_index(side_mean: f64, side_observations: u64, t: u64, arms: u64) -> f64 {
    side_mean + exploration_bonus(side_observations, t, arms)
}

/// DFL-CSR per-arm score: `X̄ + sqrt(max(ln(t^{2/3}/(K·O)), 0)/O)`.
///
/// `ln(t^{2/3}/(K·O)) = ln(t² / (K·O)³) / 3`, which stays an integer ratio.
pub fn csr_arm_score(mean: f64, observations: u64, t: u64, arms: u64) -> f64 {
    if observations == 0 {
        return f64::INFINITY;
    }
    let ko = u128::from(arms) * u128::from(observations);
    let t2 = u128::from(t) * u128::from(t);
    let log = match ko.checked_mul(ko).and_then(|sq| sq.checked_mul(ko)) {
        Some(ko3) => log_plus_ratio(t2, ko3) / 3.0,
        None => ((t as f64).ln() * 2.0 / 3.0 - (ko as f64).ln()).max(0.0),
    };
    mean + (log / observations as f64).sqrt()
}

/// MOSS: `X̄ + sqrt(max(ln(n/(K·T)), 0)/T)` with horizon `n`.
pub fn moss_index(mean: f64, pulls: u64, horizon: u64, actions: u64) -> f64 {
    mean + exploration_bonus(pulls, horizon, actions)
}

/// UCB1: `X̄ + sqrt(2 ln t / T)`.
pub fn ucb1_index(mean: f64, pulls: u64, t: u64) -> f64 {
    if pulls == 0 {
        return f64::INFINITY;
    }
    mean + (2.0 * (t as f64).ln() / pulls as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath, 40 digits: 0.3 + sqrt(ln 5 / 5)
    const LN5_CASE: f64 = 0.867_351_374_799_444_8;

    #[test]
    fn sso_examples() {
        assert_eq!(sso_index(0.5, 10, 40, 4), 0.5);
        assert_eq!(sso_index(0.2, 10, 10, 4), 0.2);
        assert!((sso_index(0.3, 5, 100, 4) - LN5_CASE).abs() < 1e-15);
        assert_eq!(sso_index(0.3, 0, 100, 4), f64::INFINITY);
    }

    #[test]
    fn csr_examples() {
        assert!((csr_arm_score(0.3, 5, 1000, 4) - LN5_CASE).abs() < 1e-15);
        // 1000^{2/3} = 100 = K·O
        assert_eq!(csr_arm_score(0.7, 25, 1000, 4), 0.7);
        assert_eq!(csr_arm_score(0.7, 0, 1000, 4), f64::INFINITY);
    }

    #[test]
    fn baseline_examples() {
        assert_eq!(moss_index(0.5, 10, 40, 4), 0.5);
        assert!((moss_index(0.3, 5, 100, 4) - LN5_CASE).abs() < 1e-15);
        assert_eq!(ucb1_index(0.0, 1, 1), 0.0);
        assert_eq!(ucb1_index(0.0, 0, 1), f64::INFINITY);
    }

    #[test]
    fn cso_boundary() {
        // t = |F|·O
        assert_eq!(cso_index(0.25, 3, 21, 7), 0.25);
    }
}
