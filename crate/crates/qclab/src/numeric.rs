//! Small numeric helpers shared across modules: log-space binomials,
//! exact hypergeometric tails, a chi-square critical value, and
//! least-squares fits on log-log data.

/// Natural log of `n!`, computed by compensated summation.
///
/// Accurate to a few ulps for `n` up to ~2^20, which covers every input
/// size this crate handles.
pub fn ln_factorial(n: u64) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 2..=n {
        let term = (k as f64).ln();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// A reusable table of `ln k!` for `k <= n`.
#[derive(Debug, Clone)]
pub struct LnFactorials {
    table: Vec<f64>,
}

impl LnFactorials {
    pub fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        table.push(0.0);
        for k in 1..=n {
            let term = (k as f64).ln();
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            table.push(sum);
        }
        LnFactorials { table }
    }

    pub fn ln_factorial(&self, n: usize) -> f64 {
        self.table[n]
    }

    /// ln C(n, k); requires k <= n <= table size.
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        self.table[n] - self.table[k] - self.table[n - k]
    }
}

/// Row n of Pascal's triangle as f64 (exact integers for n <= 56).
pub fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0f64];
    for _ in 0..n {
        let mut next = vec![1.0; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// ln C(n, k) without a precomputed table.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n, "ln_binomial: k={k} > n={n}");
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Exact upper tail of the hypergeometric distribution:
/// Pr[X >= lo] when drawing `draws` items without replacement from a
/// population of size `population` containing `successes` marked items.
///
/// Computed by direct summation of C(K,i)*C(N-K,T-i)/C(N,T) in log space.
pub fn hypergeometric_tail_at_least(population: u64, successes: u64, draws: u64, lo: u64) -> f64 {
    assert!(successes <= population && draws <= population);
    let hi = draws.min(successes);
    if lo > hi {
        return 0.0;
    }
    let support_min = draws.saturating_sub(population - successes);
    if lo <= support_min {
        return 1.0;
    }
    let min_i = lo;
    let ln_denom = ln_binomial(population, draws);
    let mut sum = 0.0f64;
    for i in min_i..=hi {
        let ln_p = ln_binomial(successes, i) + ln_binomial(population - successes, draws - i)
            - ln_denom;
        sum += ln_p.exp();
    }
    sum.min(1.0)
}

/// Hypergeometric pmf Pr[X = k] for the same parameterisation.
pub fn hypergeometric_pmf(population: u64, successes: u64, draws: u64, k: u64) -> f64 {
    if k > draws || k > successes || draws - k > population - successes {
        return 0.0;
    }
    (ln_binomial(successes, k) + ln_binomial(population - successes, draws - k)
        - ln_binomial(population, draws))
    .exp()
}

/// Approximate upper critical value of the chi-square distribution with
/// `dof` degrees of freedom at tail probability `alpha`, via the
/// Wilson-Hilferty cube transform.
pub fn chi_square_critical(dof: usize, alpha: f64) -> f64 {
    let z = standard_normal_quantile(1.0 - alpha);
    let k = dof as f64;
    let a = 2.0 / (9.0 * k);
    k * (1.0 - a + z * a.sqrt()).powi(3)
}

/// Quantile of the standard normal distribution (Acklam's rational
/// approximation; relative error below 1.2e-9 over (0,1)).
pub fn standard_normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile needs p in (0,1)");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383_577_518_672_69e2,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -standard_normal_quantile(1.0 - p)
    }
}

/// Result of an ordinary least-squares line fit.
#[derive(Debug, Clone, Copy)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope estimate (NaN with fewer than 3 points).
    pub slope_stderr: f64,
}

/// Least-squares fit of y against x.
pub fn fit_line(points: &[(f64, f64)]) -> Option<LineFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let slope_stderr = if points.len() > 2 {
        let ss_res: f64 = points
            .iter()
            .map(|p| {
                let r = p.1 - (intercept + slope * p.0);
                r * r
            })
            .sum();
        (ss_res / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    Some(LineFit {
        slope,
        intercept,
        slope_stderr,
    })
}

/// Fit log2(y) against log2(x); the slope is the fitted growth exponent.
pub fn fit_loglog(points: &[(f64, f64)]) -> Option<LineFit> {
    let logged: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.0 > 0.0 && p.1 > 0.0)
        .map(|p| (p.0.log2(), p.1.log2()))
        .collect();
    if logged.len() < points.len() {
        return None;
    }
    fit_line(&logged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-12);
        assert!((ln_factorial(20) - 2.432_902_008_176_64e18_f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn binomial_matches_direct() {
        assert!((ln_binomial(10, 3).exp() - 120.0).abs() < 1e-9);
        assert!((ln_binomial(52, 5).exp() - 2598960.0).abs() < 1e-6);
        let table = LnFactorials::up_to(52);
        assert!((table.ln_binomial(52, 5) - ln_binomial(52, 5)).abs() < 1e-12);
    }

    #[test]
    fn hypergeometric_tail_edge_cases() {
        // Drawing the whole population is deterministic.
        assert_eq!(hypergeometric_tail_at_least(10, 4, 10, 4), 1.0);
        assert_eq!(hypergeometric_tail_at_least(10, 4, 10, 5), 0.0);
        // Pr[X >= 0] is 1.
        assert_eq!(hypergeometric_tail_at_least(100, 50, 10, 0), 1.0);
        // Single draw from a half-marked population.
        let p = hypergeometric_tail_at_least(10, 5, 1, 1);
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hypergeometric_tail_small_case_by_enumeration() {
        // N=6, K=3, T=2: Pr[X>=1] = 1 - C(3,2)/C(6,2) = 1 - 3/15 = 0.8.
        let p = hypergeometric_tail_at_least(6, 3, 2, 1);
        assert!((p - 0.8).abs() < 1e-12);
        // Pr[X>=2] = C(3,2)/C(6,2) = 0.2.
        let p2 = hypergeometric_tail_at_least(6, 3, 2, 2);
        assert!((p2 - 0.2).abs() < 1e-12);
    }

    #[test]
    fn pmf_sums_to_one() {
        let total: f64 = (0..=20).map(|k| hypergeometric_pmf(60, 25, 20, k)).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn normal_quantile_reference_points() {
        assert!(standard_normal_quantile(0.5).abs() < 1e-9);
        assert!((standard_normal_quantile(0.975) - 1.959964).abs() < 1e-5);
        assert!((standard_normal_quantile(0.999) - 3.090232).abs() < 1e-5);
    }

    #[test]
    fn chi_square_critical_reference() {
        // Known value: chi2(0.999; 255 dof) is about 330.5.
        let c = chi_square_critical(255, 0.001);
        assert!((c - 330.5).abs() < 2.0, "got {c}");
    }

    #[test]
    fn line_fit_recovers_exact_line() {
        let pts: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, 3.0 + 2.0 * i as f64)).collect();
        let fit = fit_line(&pts).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 3.0).abs() < 1e-12);
        assert!(fit.slope_stderr.abs() < 1e-9);
    }

    #[test]
    fn loglog_fit_recovers_power_law() {
        let pts: Vec<(f64, f64)> = [256.0, 1024.0, 4096.0, 16384.0]
            .iter()
            .map(|&n: &f64| (n, 1.86 * n.powf(0.4)))
            .collect();
        let fit = fit_loglog(&pts).unwrap();
        assert!((fit.slope - 0.4).abs() < 1e-9);
    }
}
