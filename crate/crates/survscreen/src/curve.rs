//! Nonparametric survival curves and restricted-mean queries.
//!
//! A curve stores its change points, the survival value on each segment, and
//! a running integral so an RMST query is a binary search plus one partial
//! segment: O(log n) after the O(n) build.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// Right-continuous step function; `values[k]` holds on
    /// `[times[k], times[k+1])`.
    Step,
    /// Piecewise-linear between knots `(times[k], values[k])`, constant
    /// after the last knot.
    PiecewiseLinear,
}

/// An estimated survival function with cached cumulative integral.
///
/// `S(t) = 1` before the first stored time in either kind.
#[derive(Debug, Clone)]
pub struct SurvivalCurve {
    times: Vec<f64>,
    values: Vec<f64>,
    /// `cum[k]` = integral of S over `[0, times[k]]`.
    cum: Vec<f64>,
    kind: CurveKind,
}

impl SurvivalCurve {
    /// Assemble a curve from change points, validating monotonicity.
    /// An empty `times` gives the identity curve `S = 1` everywhere.
    pub fn from_points(times: Vec<f64>, values: Vec<f64>, kind: CurveKind) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "times/values length mismatch: {} vs {}",
                times.len(),
                values.len()
            )));
        }
        let mut prev_t = -f64::INFINITY;
        let mut prev_v = 1.0 + 1e-12;
        for (&t, &v) in times.iter().zip(&values) {
            if !t.is_finite() || t < 0.0 || t <= prev_t {
                return Err(Error::InvalidArgument(
                    "times must be finite, nonnegative, strictly increasing".into(),
                ));
            }
            if !(0.0..=1.0).contains(&v) || v > prev_v {
                return Err(Error::InvalidArgument(
                    "values must be non-increasing within [0, 1]".into(),
                ));
            }
            prev_t = t;
            prev_v = v;
        }
        let cum = build_cum(&times, &values, kind);
        Ok(SurvivalCurve {
            times,
            values,
            cum,
            kind,
        })
    }

    /// Kaplan-Meier product-limit fit. Jumps sit exactly at the distinct
    /// uncensored times; ties between a death and a censoring at the same
    /// time are resolved death-first (the censored subject stays in the risk
    /// set for that jump).
    pub fn km(time: &[f64], status: &[u8]) -> Result<Self> {
        if time.is_empty() {
            return Err(Error::EmptyInput("km requires at least one observation".into()));
        }
        if time.len() != status.len() {
            return Err(Error::InvalidArgument(format!(
                "time/status length mismatch: {} vs {}",
                time.len(),
                status.len()
            )));
        }
        if !status.contains(&1) {
            return Err(Error::NoEvents);
        }
        let mut order: Vec<usize> = (0..time.len()).collect();
        order.sort_by(|&a, &b| time[a].total_cmp(&time[b]));

        let mut times = Vec::new();
        let mut values = Vec::new();
        let mut survival = 1.0_f64;
        let mut at_risk = time.len();
        let mut i = 0;
        while i < order.len() {
            let t = time[order[i]];
            let mut deaths = 0usize;
            let mut removed = 0usize;
            while i < order.len() && time[order[i]] == t {
                if status[order[i]] == 1 {
                    deaths += 1;
                }
                removed += 1;
                i += 1;
            }
            if deaths > 0 {
                survival *= 1.0 - deaths as f64 / at_risk as f64;
                times.push(t);
                values.push(survival);
            }
            at_risk -= removed;
        }
        let cum = build_cum(&times, &values, CurveKind::Step);
        Ok(SurvivalCurve {
            times,
            values,
            cum,
            kind: CurveKind::Step,
        })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cum_integral(&self) -> &[f64] {
        &self.cum
    }

    /// Survival value at `t` (constant extension past the last change point).
    pub fn survival_at(&self, t: f64) -> f64 {
        if self.times.is_empty() || t < self.times[0] {
            return 1.0;
        }
        match self.kind {
            CurveKind::Step => {
                let k = self.times.partition_point(|&x| x <= t) - 1;
                self.values[k]
            }
            CurveKind::PiecewiseLinear => {
                if t <= self.times[0] {
                    return self.values[0];
                }
                let k = self.times.partition_point(|&x| x <= t) - 1;
                if k + 1 == self.times.len() {
                    return self.values[k];
                }
                let (t0, t1) = (self.times[k], self.times[k + 1]);
                let (v0, v1) = (self.values[k], self.values[k + 1]);
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }

    /// Restricted mean survival time: the exact integral of the curve over
    /// `[0, tau]`, served from the cached cumulative integral.
    pub fn rmst(&self, tau: f64) -> Result<f64> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "restriction time must be finite and >= 0, got {tau}"
            )));
        }
        if self.times.is_empty() || tau <= self.times[0] {
            // S = 1 up to the first change point in both kinds.
            return Ok(tau);
        }
        let k = self.times.partition_point(|&x| x <= tau) - 1;
        let partial = match self.kind {
            CurveKind::Step => self.values[k] * (tau - self.times[k]),
            CurveKind::PiecewiseLinear => {
                let v_tau = self.survival_at(tau);
                0.5 * (self.values[k] + v_tau) * (tau - self.times[k])
            }
        };
        Ok(self.cum[k] + partial)
    }
}

fn build_cum(times: &[f64], values: &[f64], kind: CurveKind) -> Vec<f64> {
    let mut cum = Vec::with_capacity(times.len());
    if times.is_empty() {
        return cum;
    }
    // S = 1 before the first change point.
    cum.push(1.0 * times[0]);
    for k in 1..times.len() {
        let dt = times[k] - times[k - 1];
        let seg = match kind {
            CurveKind::Step => values[k - 1] * dt,
            CurveKind::PiecewiseLinear => 0.5 * (values[k - 1] + values[k]) * dt,
        };
        cum.push(cum[k - 1] + seg);
    }
    cum
}

/// Largest uncensored observation, the restriction-time estimate for a
/// stratum; `None` when the stratum has no events.
pub fn restriction_time(time: &[f64], status: &[u8]) -> Option<f64> {
    time.iter()
        .zip(status)
        .filter(|(_, &s)| s == 1)
        .map(|(&t, _)| t)
        .fold(None, |acc, t| Some(acc.map_or(t, |m: f64| m.max(t))))
}
