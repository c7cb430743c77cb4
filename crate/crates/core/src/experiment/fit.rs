//! Log-log least-squares slopes over experiment output.

use std::collections::BTreeMap;
use std::str::FromStr;

use super::trial::TrialRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    /// Standard error of the slope (0 with exactly two points).
    pub stderr: f64,
    pub intercept: f64,
}

/// Slope of `ln y` against `ln x`. Needs at least two distinct positive `x`
/// and positive `y`.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::Domain("log-log fit needs positive data".into()));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if logs.len() < 2 || sxx <= 1e-24 {
        return Err(Error::Domain("log-log fit needs distinct x values".into()));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let stderr = if logs.len() > 2 {
        let ssr: f64 = logs
            .iter()
            .map(|p| (p.1 - intercept - slope * p.0).powi(2))
            .sum();
        (ssr / (k - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(SlopeFit {
        slope,
        stderr,
        intercept,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    M,
    TwLb,
    TdLb,
    GenusLb,
    HadwigerLb,
}

impl Field {
    pub fn get(self, r: &TrialRecord) -> f64 {
        (match self {
            Field::M => r.m,
            Field::TwLb => r.tw_lb,
            Field::TdLb => r.td_lb,
            Field::GenusLb => r.genus_lb,
            Field::HadwigerLb => r.hadwiger_lb,
        }) as f64
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "m" => Field::M,
            "tw_lb" => Field::TwLb,
            "td_lb" => Field::TdLb,
            "genus_lb" => Field::GenusLb,
            "hadwiger_lb" => Field::HadwigerLb,
            _ => return Err(Error::Config(format!("unknown field `{s}`"))),
        })
    }
}

/// Horizontal axis of a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    N,
    /// `n²p`
    N2p,
}

/// Groups records by `n`, averages `field` and fits against `axis`.
/// Requires three distinct `n` values.
pub fn fit_records(records: &[TrialRecord], field: Field, axis: Axis) -> Result<SlopeFit> {
    let mut groups: BTreeMap<usize, (f64, f64, usize)> = BTreeMap::new();
    for r in records {
        let e = groups.entry(r.n).or_default();
        e.0 += field.get(r);
        e.1 += r.p;
        e.2 += 1;
    }
    if groups.len() < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 distinct n values, got {}",
            groups.len()
        )));
    }
    let points: Vec<(f64, f64)> = groups
        .iter()
        .map(|(&n, &(sum, psum, k))| {
            let nf = n as f64;
            let x = match axis {
                Axis::N => nf,
                Axis::N2p => nf * nf * psum / k as f64,
            };
            (x, sum / k as f64)
        })
        .collect();
    fit_slope(&points)
}
