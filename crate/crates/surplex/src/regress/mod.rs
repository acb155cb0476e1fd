//! Ordinary least squares with the classical inference stack: design
//! matrices built from lexicon rows (listwise deletion, dummy coding),
//! a rank-revealing QR solve, and t-based two-sided p-values.

mod qr;
pub mod student_t;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{Field, LexiconRow};

pub use student_t::{ln_gamma, regularized_incomplete_beta, student_t_sf, two_sided_p};

#[derive(Debug, Error)]
pub enum RegressError {
    #[error("t-distribution tail probability is undefined for t={t}, df={df}")]
    TailProbabilityDomain { t: f64, df: f64 },
    #[error("invalid model: {reason}")]
    InvalidModel { reason: String },
    #[error("no usable rows: every row is missing {dependent} or one of the predictors")]
    NoUsableRows { dependent: String },
    #[error("underdetermined model: {rows} usable rows for {columns} design columns")]
    Underdetermined { rows: usize, columns: usize },
    #[error("degenerate response: {field} is constant over the usable rows")]
    DegenerateResponse { field: String },
    #[error("too few usable rows: need at least {needed}, got {got}")]
    TooFewRows { needed: usize, got: usize },
}

/// A regression model over lexicon fields. Categorical predictors are
/// dummy-coded at design time; everything else enters as-is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub dependent: Field,
    pub predictors: Vec<Field>,
    pub include_intercept: bool,
}

impl ModelSpec {
    pub fn new(dependent: Field, predictors: Vec<Field>) -> ModelSpec {
        ModelSpec {
            dependent,
            predictors,
            include_intercept: true,
        }
    }

    /// `dependent ~ p1 + p2 + ...`, the label used in reports.
    pub fn formula(&self) -> String {
        let rhs: Vec<&str> = self.predictors.iter().map(|p| p.name()).collect();
        format!("{} ~ {}", self.dependent.name(), rhs.join(" + "))
    }
}

/// Why a design column was removed before or during the solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropReason {
    /// Constant over the usable rows, so it carries no information.
    ZeroVariance,
    /// Exactly linearly dependent on columns already in the model.
    Aliased,
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DropReason::ZeroVariance => write!(f, "zero variance"),
            DropReason::Aliased => write!(f, "aliased"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroppedColumn {
    pub name: String,
    pub reason: DropReason,
}

/// A dense column-major design matrix plus its response, after
/// listwise deletion and dummy coding.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    pub response: Vec<f64>,
    /// Parallel to `columns`; `"(Intercept)"` first when present.
    pub column_names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    pub n_used: usize,
    pub n_dropped_missing: usize,
    /// Columns removed at design time (zero variance).
    pub dropped_columns: Vec<DroppedColumn>,
    has_intercept: bool,
}

/// Build the design matrix for `spec` over `rows`.
///
/// Rows missing the dependent or any predictor are dropped (listwise
/// deletion). Each categorical predictor contributes one indicator
/// column per non-reference category; the reference is the
/// alphabetically first category among the rows actually used.
/// Constant columns are dropped and recorded rather than failing the
/// solve. Errors: a constant response, no usable rows, or fewer rows
/// than columns.
pub fn build_design_matrix(
    rows: &[LexiconRow],
    spec: &ModelSpec,
) -> Result<DesignMatrix, RegressError> {
    if spec.predictors.is_empty() {
        return Err(RegressError::InvalidModel {
            reason: "a model needs at least one predictor".to_string(),
        });
    }
    if spec.dependent.is_categorical() {
        return Err(RegressError::InvalidModel {
            reason: format!("dependent field {} is categorical", spec.dependent.name()),
        });
    }
    for (i, p) in spec.predictors.iter().enumerate() {
        if *p == spec.dependent {
            return Err(RegressError::InvalidModel {
                reason: format!("{} appears as both dependent and predictor", p.name()),
            });
        }
        if spec.predictors[..i].contains(p) {
            return Err(RegressError::InvalidModel {
                reason: format!("predictor {} is listed twice", p.name()),
            });
        }
    }

    let used: Vec<&LexiconRow> = rows
        .iter()
        .filter(|row| {
            spec.dependent.is_present(row) && spec.predictors.iter().all(|p| p.is_present(row))
        })
        .collect();
    let n_used = used.len();
    let n_dropped_missing = rows.len() - n_used;
    if n_used == 0 {
        return Err(RegressError::NoUsableRows {
            dependent: spec.dependent.name().to_string(),
        });
    }

    let response: Vec<f64> = used
        .iter()
        .map(|row| spec.dependent.numeric_value(row).expect("presence was checked"))
        .collect();
    if response.iter().all(|v| *v == response[0]) {
        return Err(RegressError::DegenerateResponse {
            field: spec.dependent.name().to_string(),
        });
    }

    let mut column_names = Vec::new();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut dropped_columns = Vec::new();
    if spec.include_intercept {
        column_names.push("(Intercept)".to_string());
        columns.push(vec![1.0; n_used]);
    }

    for predictor in &spec.predictors {
        if predictor.is_categorical() {
            let mut categories: Vec<&str> = used
                .iter()
                .map(|row| predictor.category_value(row).expect("presence was checked"))
                .collect();
            categories.sort_unstable();
            categories.dedup();
            if categories.len() < 2 {
                log::warn!(
                    "dropping {}: only one category ({:?}) over the usable rows",
                    predictor.name(),
                    categories.first().copied().unwrap_or("")
                );
                dropped_columns.push(DroppedColumn {
                    name: predictor.name().to_string(),
                    reason: DropReason::ZeroVariance,
                });
                continue;
            }
            // categories[0] is the reference level.
            for category in &categories[1..] {
                let column: Vec<f64> = used
                    .iter()
                    .map(|row| {
                        if predictor.category_value(row) == Some(*category) {
                            1.0
                        } else {
                            0.0
                        }
                    })
                    .collect();
                column_names.push(format!("{}_{category}", predictor.name()));
                columns.push(column);
            }
        } else {
            let column: Vec<f64> = used
                .iter()
                .map(|row| predictor.numeric_value(row).expect("presence was checked"))
                .collect();
            if column.iter().all(|v| *v == column[0]) {
                log::warn!(
                    "dropping {}: constant over the usable rows",
                    predictor.name()
                );
                dropped_columns.push(DroppedColumn {
                    name: predictor.name().to_string(),
                    reason: DropReason::ZeroVariance,
                });
                continue;
            }
            column_names.push(predictor.name().to_string());
            columns.push(column);
        }
    }

    if columns.is_empty() {
        return Err(RegressError::InvalidModel {
            reason: "no design columns remain after dropping constant predictors".to_string(),
        });
    }
    if n_used < columns.len() {
        return Err(RegressError::Underdetermined {
            rows: n_used,
            columns: columns.len(),
        });
    }

    Ok(DesignMatrix {
        response,
        column_names,
        columns,
        n_used,
        n_dropped_missing,
        dropped_columns,
        has_intercept: spec.include_intercept,
    })
}

/// One estimated term of a fitted model. `stars` is the significance
/// marker for `p_value`: `***` below 0.001, `**` below 0.01, `*`
/// below 0.05, `.` below 0.1, empty otherwise (all strict).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermResult {
    pub term: String,
    pub estimate: f64,
    pub std_error: f64,
    pub t_value: f64,
    pub p_value: f64,
    pub stars: String,
}

/// A fitted model: per-term inference plus fit-level diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub terms: Vec<TermResult>,
    pub n_used: usize,
    pub n_dropped_missing: usize,
    pub residual_df: usize,
    pub residual_variance: f64,
    pub r_squared: f64,
    pub dropped_columns: Vec<DroppedColumn>,
}

/// Significance marker for a p-value (strict thresholds).
pub fn stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else if p < 0.1 {
        "."
    } else {
        ""
    }
}

/// Fit a design matrix by least squares and compute classical
/// t-statistics and two-sided p-values per retained term.
///
/// Columns found exactly collinear during the solve are dropped and
/// recorded as aliased rather than reported with meaningless inference.
/// A saturated or exactly-fitting model has zero residual variance;
/// its terms get `t = ±inf, p = 0` (or `t = 0, p = 1` for a zero
/// estimate) by convention.
pub fn ols_fit(design: &DesignMatrix) -> Result<FitResult, RegressError> {
    let n = design.n_used;
    let ls = qr::solve(&design.columns, &design.response);

    let mut dropped_columns = design.dropped_columns.clone();
    for &original in &ls.perm[ls.rank..] {
        log::warn!(
            "dropping {}: aliased with columns already in the model",
            design.column_names[original]
        );
        dropped_columns.push(DroppedColumn {
            name: design.column_names[original].clone(),
            reason: DropReason::Aliased,
        });
    }

    let residual_df = n - ls.rank;
    let residual_variance = if residual_df > 0 {
        ls.rss / residual_df as f64
    } else {
        0.0
    };

    // Report terms in design-column order, not pivot order.
    let mut by_original: Vec<Option<(f64, f64)>> = vec![None; design.columns.len()];
    for r in 0..ls.rank {
        let variance = residual_variance * ls.xtx_inv_diag[r];
        by_original[ls.perm[r]] = Some((ls.beta[r], variance.max(0.0).sqrt()));
    }

    let mut terms = Vec::with_capacity(ls.rank);
    for (name, slot) in design.column_names.iter().zip(&by_original) {
        let Some((estimate, std_error)) = *slot else {
            continue;
        };
        let (t_value, p_value) = if std_error > 0.0 {
            let t = estimate / std_error;
            (t, two_sided_p(t, residual_df as f64)?)
        } else if estimate != 0.0 {
            // Exact fit: the estimate is infinitely many standard
            // errors from zero.
            (f64::INFINITY.copysign(estimate), 0.0)
        } else {
            (0.0, 1.0)
        };
        terms.push(TermResult {
            term: name.clone(),
            estimate,
            std_error,
            t_value,
            p_value,
            stars: stars(p_value).to_string(),
        });
    }

    // R² against the centered total sum of squares when the model has
    // an intercept, uncentered otherwise.
    let tss: f64 = if design.has_intercept {
        let mean = design.response.iter().sum::<f64>() / n as f64;
        design.response.iter().map(|y| (y - mean) * (y - mean)).sum()
    } else {
        design.response.iter().map(|y| y * y).sum()
    };
    let r_squared = if tss > 0.0 { 1.0 - ls.rss / tss } else { 0.0 };

    Ok(FitResult {
        terms,
        n_used: n,
        n_dropped_missing: design.n_dropped_missing,
        residual_df,
        residual_variance,
        r_squared,
        dropped_columns,
    })
}

/// Build and fit in one step.
pub fn fit_model(rows: &[LexiconRow], spec: &ModelSpec) -> Result<FitResult, RegressError> {
    let design = build_design_matrix(rows, spec)?;
    ols_fit(&design)
}

/// Simple (one-predictor) regression with an intercept, requiring at
/// least three usable rows so the slope has a nonzero-df error
/// estimate.
pub fn simple_fit(
    rows: &[LexiconRow],
    dependent: Field,
    predictor: Field,
) -> Result<FitResult, RegressError> {
    let spec = ModelSpec::new(dependent, vec![predictor]);
    let design = build_design_matrix(rows, &spec)?;
    if design.n_used < 3 {
        return Err(RegressError::TooFewRows {
            needed: 3,
            got: design.n_used,
        });
    }
    ols_fit(&design)
}
