//! OLS engine: datasets, subset fits, significance statistics and
//! information criteria. Supplies the payoff function used by the
//! selection drivers: the sum of absolute t-statistics of the included
//! regressors.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{DataError, Error, RegressionError, Result};
use crate::exec::stable_name_key;
use crate::game::Coalition;

/// Ceiling on |t|, so perfectly collinear responses produce large finite
/// payoffs instead of infinities.
pub const T_STAT_CAP: f64 = 1e12;

/// Scaled-design condition estimate above which a subset is treated as
/// rank deficient.
const CONDITION_LIMIT: f64 = 1e10;

/// RSS below this fraction of the response's total sum of squares is
/// treated as a perfect fit: the residual scale is pure rounding noise, so
/// t-statistics computed from it would be garbage.
const PERFECT_FIT_RATIO: f64 = 1e-20;

/// A regression dataset: response vector plus named candidate columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    y: Vec<f64>,
    columns: Vec<Vec<f64>>,
    names: Vec<String>,
}

impl Dataset {
    pub fn new(y: Vec<f64>, columns: Vec<Vec<f64>>, names: Vec<String>) -> Result<Self> {
        if y.is_empty() || columns.is_empty() {
            return Err(DataError::Empty.into());
        }
        if columns.len() != names.len() {
            return Err(Error::Config(format!(
                "{} columns but {} names",
                columns.len(),
                names.len()
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != y.len() {
                return Err(Error::Config(format!(
                    "column {} has {} rows, response has {}",
                    names[j],
                    col.len(),
                    y.len()
                )));
            }
        }
        for (j, name) in names.iter().enumerate() {
            if names[..j].contains(name) {
                return Err(DataError::DuplicateColumn(name.clone()).into());
            }
        }
        let all_finite = y.iter().chain(columns.iter().flatten()).all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::Config("dataset contains non-finite values".into()));
        }
        Ok(Dataset { y, columns, names })
    }

    /// Load a CSV with a header row; `target` names the response column,
    /// every other column becomes a candidate regressor. Parsing is strict:
    /// any non-numeric cell is an error naming the row and column.
    pub fn from_csv<R: std::io::Read>(reader: R, target: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers: Vec<String> = rdr
            .headers()
            .map_err(|e| DataError::Io {
                path: "<csv>".into(),
                message: e.to_string(),
            })?
            .iter()
            .map(str::to_string)
            .collect();
        let target_idx = headers
            .iter()
            .position(|h| h == target)
            .ok_or_else(|| DataError::MissingColumn(target.to_string()))?;
        let mut y = Vec::new();
        let mut columns: Vec<Vec<f64>> = vec![Vec::new(); headers.len() - 1];
        for (row_idx, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| DataError::Io {
                path: "<csv>".into(),
                message: e.to_string(),
            })?;
            if record.len() != headers.len() {
                return Err(DataError::RaggedRow {
                    row: row_idx + 2,
                    found: record.len(),
                    expected: headers.len(),
                }
                .into());
            }
            let mut col = 0;
            for (field_idx, cell) in record.iter().enumerate() {
                let value: f64 = cell.parse().map_err(|_| DataError::NonNumeric {
                    row: row_idx + 2,
                    column: headers[field_idx].clone(),
                    cell: cell.to_string(),
                })?;
                if field_idx == target_idx {
                    y.push(value);
                } else {
                    columns[col].push(value);
                    col += 1;
                }
            }
        }
        let names: Vec<String> = headers
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != target_idx)
            .map(|(_, h)| h.clone())
            .collect();
        Dataset::new(y, columns, names)
    }

    pub fn from_csv_path(path: &str, target: &str) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| DataError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        Dataset::from_csv(file, target)
    }

    /// Observation count.
    pub fn rows(&self) -> usize {
        self.y.len()
    }

    /// Candidate regressor count.
    pub fn candidates(&self) -> usize {
        self.columns.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn response(&self) -> &[f64] {
        &self.y
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    /// Stable per-column stream keys derived from names.
    pub fn name_keys(&self) -> Vec<u64> {
        self.names.iter().map(|n| stable_name_key(n)).collect()
    }
}

/// Result of one subset fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub subset: Coalition,
    /// Intercept first, then the selected columns in ascending index order.
    pub coefficients: Vec<f64>,
    /// One per selected column (the intercept is excluded).
    pub t_stats: Vec<f64>,
    pub p_values: Vec<f64>,
    /// Residual sum of squares.
    pub rss: f64,
    /// Unbiased residual variance RSS / (m - p).
    pub residual_variance: f64,
    pub log_likelihood: f64,
    pub aic: f64,
    pub bic: f64,
    pub hq: f64,
}

/// OLS fit of the response on the intercept plus the selected columns,
/// via a column-equilibrated QR decomposition.
pub fn ols_fit(data: &Dataset, subset: Coalition) -> Result<FitResult> {
    let m = data.rows();
    let selected: Vec<usize> = subset.members().filter(|&i| i < data.candidates()).collect();
    if selected.len() != subset.size() {
        return Err(Error::Config(format!(
            "subset {subset} references columns beyond the {} candidates",
            data.candidates()
        )));
    }
    let k = selected.len();
    let p = k + 1;
    if m <= p {
        return Err(RegressionError::TooFewObservations { m, regressors: k }.into());
    }

    let mut design = DMatrix::zeros(m, p);
    for r in 0..m {
        design[(r, 0)] = 1.0;
    }
    for (c, &j) in selected.iter().enumerate() {
        let col = data.column(j);
        for r in 0..m {
            design[(r, c + 1)] = col[r];
        }
    }

    // Equilibrate columns so the R-diagonal condition estimate reflects
    // genuine collinearity rather than scale differences.
    let mut scales = vec![0.0f64; p];
    for c in 0..p {
        let norm = design.column(c).norm();
        if norm == 0.0 {
            return Err(RegressionError::RankDeficient {
                subset,
                condition: f64::INFINITY,
            }
            .into());
        }
        scales[c] = norm;
        for r in 0..m {
            design[(r, c)] /= norm;
        }
    }

    let y = DVector::from_column_slice(&data.y);
    let qr = design.clone().qr();
    let r = qr.r();
    let mut diag_max = 0.0f64;
    let mut diag_min = f64::INFINITY;
    for c in 0..p {
        let d = r[(c, c)].abs();
        diag_max = diag_max.max(d);
        diag_min = diag_min.min(d);
    }
    let condition = if diag_min == 0.0 {
        f64::INFINITY
    } else {
        diag_max / diag_min
    };
    if condition > CONDITION_LIMIT {
        return Err(RegressionError::RankDeficient { subset, condition }.into());
    }

    let qty = qr.q().transpose() * &y;
    let beta_scaled = r
        .solve_upper_triangular(&qty)
        .ok_or(RegressionError::RankDeficient { subset, condition })?;
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(p, p))
        .ok_or(RegressionError::RankDeficient { subset, condition })?;

    let coefficients: Vec<f64> = (0..p).map(|c| beta_scaled[c] / scales[c]).collect();

    // Residuals from the original (unscaled) columns.
    let mut rss = 0.0;
    let mut y_mean = 0.0;
    for &v in &data.y {
        y_mean += v;
    }
    y_mean /= m as f64;
    let mut tss = 0.0;
    for row in 0..m {
        let mut fitted = coefficients[0];
        for (c, &j) in selected.iter().enumerate() {
            fitted += coefficients[c + 1] * data.column(j)[row];
        }
        let e = data.y[row] - fitted;
        rss += e * e;
        let d = data.y[row] - y_mean;
        tss += d * d;
    }

    let dof = (m - p) as f64;
    let residual_variance = rss / dof;
    let perfect = rss <= PERFECT_FIT_RATIO * tss.max(f64::MIN_POSITIVE) || tss == 0.0;

    let mut t_stats = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    if perfect {
        // The residual scale is rounding noise; call coefficients that are
        // themselves noise exactly zero and the rest infinitely significant.
        let beta_scale = coefficients.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        for c in 0..k {
            let b = coefficients[c + 1];
            if b.abs() > 1e-8 * beta_scale {
                t_stats.push(T_STAT_CAP.copysign(b));
                p_values.push(0.0);
            } else {
                t_stats.push(0.0);
                p_values.push(1.0);
            }
        }
    } else {
        let sigma = residual_variance.sqrt();
        let dist = StudentsT::new(0.0, 1.0, dof).map_err(|e| Error::Config(e.to_string()))?;
        for c in 0..k {
            let diag: f64 = (0..p).map(|j| r_inv[(c + 1, j)].powi(2)).sum();
            let se = sigma * diag.sqrt() / scales[c + 1];
            let t = if se == 0.0 {
                T_STAT_CAP.copysign(coefficients[c + 1])
            } else {
                (coefficients[c + 1] / se).clamp(-T_STAT_CAP, T_STAT_CAP)
            };
            t_stats.push(t);
            p_values.push((2.0 * dist.sf(t.abs())).clamp(0.0, 1.0));
        }
    }

    // Gaussian log-likelihood with the RSS floored at the perfect-fit level
    // so information criteria stay finite and comparable.
    let mf = m as f64;
    let rss_eff = rss.max(PERFECT_FIT_RATIO * tss).max(1e-300);
    let log_likelihood = -0.5 * mf * ((2.0 * std::f64::consts::PI).ln() + (rss_eff / mf).ln() + 1.0);
    let pf = p as f64;
    let aic = -2.0 * log_likelihood + 2.0 * pf;
    let bic = -2.0 * log_likelihood + pf * mf.ln();
    let hq = -2.0 * log_likelihood + 2.0 * pf * mf.ln().ln();

    Ok(FitResult {
        subset,
        coefficients,
        t_stats,
        p_values,
        rss,
        residual_variance,
        log_likelihood,
        aic,
        bic,
        hq,
    })
}

/// The payoff function used throughout selection: the sum of absolute
/// t-statistics of the regressors in the subset. The intercept never
/// counts, and the empty model scores zero.
pub fn performance_abs_t(data: &Dataset, subset: Coalition) -> Result<f64> {
    if subset.is_empty() {
        return Ok(0.0);
    }
    let fit = ols_fit(data, subset)?;
    Ok(fit.t_stats.iter().map(|t| t.abs().min(T_STAT_CAP)).sum())
}
