//! Student-t tail probabilities built from the regularized incomplete
//! beta function, evaluated in-repo so p-values do not depend on any
//! external math library.

use super::RegressError;

/// ln Γ(z) for z > 0 via the Lanczos approximation (Numerical Recipes
/// coefficients, g = 5). Accurate to ~1e-14 relative over the range
/// used here (half-integer and half degrees of freedom).
pub fn ln_gamma(z: f64) -> f64 {
    const COEFFS: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    debug_assert!(z > 0.0);
    let mut sum = 1.000000000190015;
    for (i, c) in COEFFS.iter().enumerate() {
        sum += c / (z + i as f64 + 1.0);
    }
    let tmp = z + 5.5;
    (z + 0.5) * tmp.ln() - tmp + (2.5066282746310005 * sum / z).ln()
}

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
/// x in [0, 1], via the standard continued fraction evaluated with
/// Lentz's method. The fraction is iterated until the step factor is
/// within 1e-14 of one, well under the 1e-12 convergence target.
///
/// The endpoints are exact: I_0 = 0 and I_1 = 1.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "shape parameters must be positive");
    assert!((0.0..=1.0).contains(&x), "x must lie in [0, 1]");
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    // The continued fraction converges fast only for x below the
    // crossover point; above it, evaluate the mirrored fraction.
    if x > (a + 1.0) / (a + b + 2.0) {
        return 1.0 - regularized_incomplete_beta(1.0 - x, b, a);
    }

    let ln_beta = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
    let front = (a * x.ln() + b * (1.0 - x).ln() - ln_beta).exp();

    // Modified Lentz on  I_x = front / (a * (1 + d1/(1 + d2/(1 + ...))))
    // with the Abramowitz & Stegun 26.5.8 coefficients.
    const TINY: f64 = 1e-30;
    const EPS: f64 = 1e-14;
    const MAX_ITER: usize = 400;

    let mut f: f64 = 1.0;
    let mut c: f64 = 1.0;
    let mut d: f64 = 0.0;

    let step = |coeff: f64, c: &mut f64, d: &mut f64| -> f64 {
        *d = 1.0 + coeff * *d;
        if d.abs() < TINY {
            *d = TINY;
        }
        *d = 1.0 / *d;
        *c = 1.0 + coeff / *c;
        if c.abs() < TINY {
            *c = TINY;
        }
        *c * *d
    };

    for m in 0..MAX_ITER {
        let m_f = m as f64;
        let odd = -(a + m_f) * (a + b + m_f) * x / ((a + 2.0 * m_f) * (a + 2.0 * m_f + 1.0));
        let delta = step(odd, &mut c, &mut d);
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
        let even =
            (m_f + 1.0) * (b - m_f - 1.0) * x / ((a + 2.0 * m_f + 1.0) * (a + 2.0 * m_f + 2.0));
        let delta = step(even, &mut c, &mut d);
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }

    front / (f * a)
}

/// Upper-tail probability P(T > t) of Student's t distribution with
/// `df` degrees of freedom, via I_x(df/2, 1/2) at x = df/(df + t²).
///
/// `sf(0, df)` is exactly 0.5. Rejects non-finite `t` and non-finite
/// or non-positive `df`.
pub fn student_t_sf(t: f64, df: f64) -> Result<f64, RegressError> {
    if !t.is_finite() || !df.is_finite() || df <= 0.0 {
        return Err(RegressError::TailProbabilityDomain { t, df });
    }
    let x = df / (df + t * t);
    let half_tail = 0.5 * regularized_incomplete_beta(x, df / 2.0, 0.5);
    Ok(if t >= 0.0 { half_tail } else { 1.0 - half_tail })
}

/// Two-sided p-value: 2 · sf(|t|). Symmetric in the sign of `t`.
pub fn two_sided_p(t: f64, df: f64) -> Result<f64, RegressError> {
    let p = 2.0 * student_t_sf(t.abs(), df)?;
    Ok(p.min(1.0))
}
