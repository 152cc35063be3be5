use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{empirical_identification, per_series_mean_prediction, IdentificationKind};
use crate::losses::{centered_sum_of_squares, realized_loss, skill_score, Loss, VARIANCE_FLOOR};
use crate::panel::Panel;

pub const REPORT_SCHEMA: &str = "ns-report/1";
pub const COMPARISON_SCHEMA: &str = "ns-comparison/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub d: usize,
    pub n: usize,
    pub p: usize,
}

/// Evaluation of one prediction panel against observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub method: String,
    pub orientation: String,
    pub realized_en: f64,
    pub realized_ns: f64,
    /// Always `1 − realized_ns`.
    pub realized_nse: f64,
    pub skill_vs_series_means: f64,
    pub identification_ns: Vec<f64>,
    pub dims: Dims,
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extended_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
}

/// Indices of the observed series whose Nash-Sutcliffe weight is undefined.
pub fn zero_variance_series(y: &Panel) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (j, s) in y.iter_series().enumerate() {
        if centered_sum_of_squares(s)? < VARIANCE_FLOOR {
            out.push(j);
        }
    }
    Ok(out)
}

impl ReportDocument {
    /// Evaluates `z` against `y`.
    ///
    /// `a > 0` switches every Nash-Sutcliffe quantity to the extended loss;
    /// with `a = 0` zero-variance observed series are an error listing all
    /// their indices.
    pub fn evaluate(method: &str, z: &Panel, y: &Panel, p: usize, a: f64, seed: Option<u64>) -> Result<Self> {
        z.check_compatible(y)?;
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidArgument(format!("extended constant must be finite and ≥ 0, got {a}")));
        }
        if a == 0.0 {
            let indices = zero_variance_series(y)?;
            if !indices.is_empty() {
                return Err(Error::ZeroVarianceSeries { indices });
            }
        }
        let loss = Loss::ns_with(a);
        let kind = if a > 0.0 {
            IdentificationKind::NashSutcliffeExtended(a)
        } else {
            IdentificationKind::NashSutcliffe
        };
        let realized_ns = realized_loss(z, y, loss)?;
        Ok(Self {
            schema: REPORT_SCHEMA.to_string(),
            method: method.to_string(),
            orientation: y.orientation().to_string(),
            realized_en: realized_loss(z, y, Loss::Euclidean)?,
            realized_ns,
            realized_nse: 1.0 - realized_ns,
            skill_vs_series_means: skill_score(z, y, &per_series_mean_prediction(y), loss)?,
            identification_ns: empirical_identification(z, y, kind)?,
            dims: Dims {
                d: y.series_len(),
                n: y.series_count(),
                p,
            },
            seed,
            extended_a: (a > 0.0).then_some(a),
            units: None,
        })
    }

    pub fn with_units(mut self, units: Option<String>) -> Self {
        self.units = units;
        self
    }

    /// Checks the schema tag, finiteness and the NSE/NS relation.
    pub fn validate(&self) -> Result<()> {
        if self.schema != REPORT_SCHEMA {
            return Err(Error::InvalidArgument(format!("unexpected schema {:?}", self.schema)));
        }
        let scalars = [self.realized_en, self.realized_ns, self.realized_nse, self.skill_vs_series_means];
        if scalars.iter().chain(&self.identification_ns).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("report contains non-finite values".into()));
        }
        if (self.realized_nse - (1.0 - self.realized_ns)).abs() > 1e-12 {
            return Err(Error::InvalidArgument("realized_nse differs from 1 − realized_ns".into()));
        }
        if self.identification_ns.len() != self.dims.d {
            return Err(Error::InvalidArgument(format!(
                "identification vector of length {} for d = {}",
                self.identification_ns.len(),
                self.dims.d
            )));
        }
        Ok(())
    }
}

/// Methods compared on one data block (training, test or in-sample).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonBlock {
    pub name: String,
    pub reports: Vec<ReportDocument>,
    /// Method with the lowest realized Euclidean loss.
    pub best_en: String,
    /// Method with the lowest realized Nash-Sutcliffe loss.
    pub best_ns: String,
}

impl ComparisonBlock {
    pub fn new(name: &str, reports: Vec<ReportDocument>) -> Result<Self> {
        let best = |key: fn(&ReportDocument) -> f64| {
            reports
                .iter()
                .min_by(|a, b| key(a).total_cmp(&key(b)))
                .map(|r| r.method.clone())
                .ok_or(Error::EmptyInput)
        };
        Ok(Self {
            name: name.to_string(),
            best_en: best(|r| r.realized_en)?,
            best_ns: best(|r| r.realized_ns)?,
            reports,
        })
    }

    pub fn report(&self, method: &str) -> Option<&ReportDocument> {
        self.reports.iter().find(|r| r.method == method)
    }
}

/// Side-by-side evaluation of several estimators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonDocument {
    pub schema: String,
    /// Scenario name or input file name.
    pub source: String,
    pub orientation: String,
    pub seed: Option<u64>,
    pub blocks: Vec<ComparisonBlock>,
}

impl ComparisonDocument {
    pub fn block(&self, name: &str) -> Option<&ComparisonBlock> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != COMPARISON_SCHEMA {
            return Err(Error::InvalidArgument(format!("unexpected schema {:?}", self.schema)));
        }
        if self.blocks.is_empty() {
            return Err(Error::EmptyInput);
        }
        self.blocks.iter().flat_map(|b| &b.reports).try_for_each(ReportDocument::validate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::panel::Orientation;

    fn panel(series: &[Vec<f64>]) -> Panel {
        Panel::from_series(series, Orientation::SeriesAsColumns).unwrap()
    }

    #[test]
    fn series_means_and_perfect_predictions() {
        let y = panel(&[vec![1.0, 2.0, 6.0], vec![0.0, 4.0, 2.0]]);
        let means = per_series_mean_prediction(&y);
        let r = ReportDocument::evaluate("means", &means, &y, 0, 0.0, None).unwrap();
        assert!((r.realized_ns - 1.0).abs() < 1e-12);
        assert!(r.skill_vs_series_means.abs() < 1e-12);
        r.validate().unwrap();

        let r = ReportDocument::evaluate("perfect", &y, &y, 0, 0.0, Some(3)).unwrap();
        assert_eq!(r.realized_ns, 0.0);
        assert_eq!(r.realized_nse, 1.0);
        assert_eq!(r.dims, Dims { d: 3, n: 2, p: 0 });
    }

    #[test]
    fn zero_variance_lists_indices() {
        let y = panel(&[vec![1.0, 1.0], vec![0.0, 4.0], vec![2.0, 2.0]]);
        let z = panel(&[vec![0.0, 1.0], vec![1.0, 3.0], vec![2.0, 1.0]]);
        match ReportDocument::evaluate("m", &z, &y, 0, 0.0, None) {
            Err(Error::ZeroVarianceSeries { indices }) => assert_eq!(indices, vec![0, 2]),
            other => panic!("{other:?}"),
        }
        let r = ReportDocument::evaluate("m", &z, &y, 0, 0.5, None).unwrap();
        assert_eq!(r.extended_a, Some(0.5));
        r.validate().unwrap();
    }

    #[test]
    fn best_methods_are_marked() {
        let y = panel(&[vec![1.0, 2.0, 6.0], vec![0.0, 4.0, 2.0]]);
        let good = ReportDocument::evaluate("good", &y, &y, 0, 0.0, None).unwrap();
        let bad = ReportDocument::evaluate("bad", &per_series_mean_prediction(&y), &y, 0, 0.0, None).unwrap();
        let block = ComparisonBlock::new("test", vec![bad, good]).unwrap();
        assert_eq!(block.best_ns, "good");
        assert_eq!(block.best_en, "good");
        assert!(ComparisonBlock::new("x", vec![]).is_err());
    }
}
