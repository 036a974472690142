//! The stratified-RMST discrepancy and the marginal screening procedure.
//!
//! For feature j and each observed value x = X_ji, the sample splits into an
//! upper stratum {k : X_jk >= x} and a lower stratum {k : X_jk < x}. Each
//! stratum of sufficient size with at least one event contributes
//! |RMST_stratum(tau) - RMST_overall(tau)| at tau = the stratum's largest
//! uncensored time. Averaging over i gives (d1, d2) and d = d1 + d2.
//!
//! Strata are suffixes/prefixes of the covariate-sorted order, so one pass
//! over the time-sorted sample per threshold evaluates both halves without
//! re-sorting: O(n^2) per feature. Features are screened in parallel;
//! results go into indexed slots, so the output is identical for any worker
//! count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::SurvivalCurve;
use crate::data::Dataset;
use crate::error::{Error, Result};

/// How many features the screening step keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelectedSize {
    /// Keep exactly this many (must be <= p).
    Explicit(usize),
    /// Keep floor(n / ln n), the usual sure-independence-screening cutoff.
    NOverLogN,
}

/// Worker count for feature-level parallelism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Workers {
    /// Use the ambient rayon pool.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScreeningConfig {
    /// Strata smaller than this are skipped ("size greater than 5" rule).
    pub min_stratum_size: usize,
    pub selected_size: SelectedSize,
    pub workers: Workers,
}

impl Default for ScreeningConfig {
    fn default() -> Self {
        ScreeningConfig {
            min_stratum_size: 6,
            selected_size: SelectedSize::NOverLogN,
            workers: Workers::Auto,
        }
    }
}

/// floor(n / ln n), clamped to at least 1.
pub fn n_over_log_n(n: usize) -> usize {
    let k = (n as f64 / (n as f64).ln()).floor() as usize;
    k.max(1)
}

/// Per-feature discrepancy values plus ranking and selected set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScreeningResult {
    /// d = d1 + d2 per feature (0-based indexing throughout).
    pub d: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    /// Permutation of 0..p sorting d descending, ties by ascending index.
    pub ranking: Vec<usize>,
    /// The first `selected_size` entries of `ranking`.
    pub selected: Vec<usize>,
    /// Number of skipped stratum terms per feature (diagnostics).
    pub skipped_term_counts: Vec<usize>,
}

impl ScreeningResult {
    fn from_parts(parts: Vec<FeatureDiscrepancy>, target: usize) -> Self {
        let p = parts.len();
        let mut d = Vec::with_capacity(p);
        let mut d1 = Vec::with_capacity(p);
        let mut d2 = Vec::with_capacity(p);
        let mut skipped = Vec::with_capacity(p);
        for part in parts {
            d.push(part.d);
            d1.push(part.d1);
            d2.push(part.d2);
            skipped.push(part.skipped_terms);
        }
        let mut ranking: Vec<usize> = (0..p).collect();
        ranking.sort_by(|&a, &b| d[b].total_cmp(&d[a]).then(a.cmp(&b)));
        let eligible = d.iter().filter(|v| v.is_finite()).count();
        let selected = ranking[..target.min(eligible)].to_vec();
        ScreeningResult {
            d,
            d1,
            d2,
            ranking,
            selected,
            skipped_term_counts: skipped,
        }
    }

    /// 1-based rank position of each feature (inverse of `ranking`).
    pub fn rank_positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.ranking.len()];
        for (r, &j) in self.ranking.iter().enumerate() {
            pos[j] = r + 1;
        }
        pos
    }
}

/// One feature's discrepancy decomposition.
#[derive(Debug, Clone, Copy)]
pub struct FeatureDiscrepancy {
    pub d: f64,
    pub d1: f64,
    pub d2: f64,
    pub skipped_terms: usize,
}

/// Shared per-dataset state: the sample grouped by distinct observed time and
/// the overall Kaplan-Meier curve. Built once, read by every feature worker.
pub struct ScreenContext {
    /// Distinct observed times, ascending.
    group_times: Vec<f64>,
    /// Group k occupies members[group_starts[k]..group_starts[k+1]].
    group_starts: Vec<usize>,
    /// (observation index, is event), ordered by time group.
    members: Vec<(u32, bool)>,
    overall: SurvivalCurve,
    n: usize,
}

impl ScreenContext {
    pub fn new(dataset: &Dataset) -> Result<Self> {
        let time = dataset.time();
        let status = dataset.status();
        let n = dataset.n();
        let overall = SurvivalCurve::km(time, status)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| time[a].total_cmp(&time[b]).then(a.cmp(&b)));
        let mut group_times = Vec::new();
        let mut group_starts = Vec::new();
        let mut members = Vec::with_capacity(n);
        let mut i = 0;
        while i < n {
            let t = time[order[i]];
            group_times.push(t);
            group_starts.push(members.len());
            while i < n && time[order[i]] == t {
                members.push((order[i] as u32, status[order[i]] == 1));
                i += 1;
            }
        }
        group_starts.push(members.len());
        Ok(ScreenContext {
            group_times,
            group_starts,
            members,
            overall,
            n,
        })
    }

    pub fn overall_curve(&self) -> &SurvivalCurve {
        &self.overall
    }
}

/// Running product-limit state for one stratum during a time sweep.
struct StratumSweep {
    survival: f64,
    integral: f64,
    prev_t: f64,
    remaining: usize,
    /// (tau, RMST at tau) after the most recent event.
    last_event: Option<(f64, f64)>,
}

impl StratumSweep {
    fn new(size: usize) -> Self {
        StratumSweep {
            survival: 1.0,
            integral: 0.0,
            prev_t: 0.0,
            remaining: size,
            last_event: None,
        }
    }

    #[inline]
    fn step(&mut self, t: f64, deaths: usize, removed: usize) {
        if deaths > 0 {
            self.integral += self.survival * (t - self.prev_t);
            self.prev_t = t;
            self.survival *= 1.0 - deaths as f64 / self.remaining as f64;
            self.last_event = Some((t, self.integral));
        }
        self.remaining -= removed;
    }
}

/// The stratified-RMST discrepancy for feature `j` (0-based) against a
/// prebuilt context. Deterministic regardless of worker count.
pub fn rmst_discrepancy_with_context(
    ctx: &ScreenContext,
    column: &[f64],
    min_stratum_size: usize,
) -> Result<FeatureDiscrepancy> {
    let n = ctx.n;
    debug_assert_eq!(column.len(), n);
    let min_size = min_stratum_size.max(1);

    // Rank of each observation in the covariate-sorted order; equal values
    // form one threshold group, so the upper stratum at a threshold is the
    // suffix starting at its group's first slot.
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| column[a].total_cmp(&column[b]).then(a.cmp(&b)));
    let mut pos = vec![0u32; n];
    for (r, &obs) in by_x.iter().enumerate() {
        pos[obs] = r as u32;
    }

    let mut d1_sum = 0.0;
    let mut d2_sum = 0.0;
    let mut skipped = 0usize;

    let mut g = 0;
    while g < n {
        // Threshold group [g, ge) of equal covariate values.
        let mut ge = g + 1;
        while ge < n && column[by_x[ge]] == column[by_x[g]] {
            ge += 1;
        }
        let weight = (ge - g) as f64;
        let upper_size = n - g;
        let lower_size = g;
        let eval_upper = upper_size >= min_size;
        let eval_lower = lower_size >= min_size;

        if eval_upper || eval_lower {
            let split = g as u32;
            let mut upper = StratumSweep::new(upper_size);
            let mut lower = StratumSweep::new(lower_size);
            for k in 0..ctx.group_times.len() {
                let t = ctx.group_times[k];
                let (mut du, mut ru, mut dl, mut rl) = (0usize, 0usize, 0usize, 0usize);
                for &(obs, ev) in &ctx.members[ctx.group_starts[k]..ctx.group_starts[k + 1]] {
                    if pos[obs as usize] >= split {
                        ru += 1;
                        du += usize::from(ev);
                    } else {
                        rl += 1;
                        dl += usize::from(ev);
                    }
                }
                if eval_upper {
                    upper.step(t, du, ru);
                }
                if eval_lower {
                    lower.step(t, dl, rl);
                }
            }
            match (eval_upper, upper.last_event) {
                (true, Some((tau, stratum_rmst))) => {
                    d1_sum += weight * (stratum_rmst - ctx.overall.rmst(tau)?).abs();
                }
                _ => skipped += ge - g,
            }
            match (eval_lower, lower.last_event) {
                (true, Some((tau, stratum_rmst))) => {
                    d2_sum += weight * (stratum_rmst - ctx.overall.rmst(tau)?).abs();
                }
                _ => skipped += ge - g,
            }
        } else {
            skipped += 2 * (ge - g);
        }
        g = ge;
    }

    let d1 = d1_sum / n as f64;
    let d2 = d2_sum / n as f64;
    Ok(FeatureDiscrepancy {
        d: d1 + d2,
        d1,
        d2,
        skipped_terms: skipped,
    })
}

/// The stratified-RMST discrepancy for a single feature of a dataset.
pub fn rmst_discrepancy(
    dataset: &Dataset,
    j: usize,
    config: &ScreeningConfig,
) -> Result<FeatureDiscrepancy> {
    if j >= dataset.p() {
        return Err(Error::FeatureIndex {
            index: j,
            p: dataset.p(),
        });
    }
    let ctx = ScreenContext::new(dataset)?;
    rmst_discrepancy_with_context(&ctx, dataset.column(j), config.min_stratum_size)
}

fn resolve_target(selected_size: SelectedSize, n: usize, p: usize) -> Result<usize> {
    match selected_size {
        SelectedSize::Explicit(k) => {
            if k == 0 || k > p {
                return Err(Error::InvalidArgument(format!(
                    "selected size {k} must be in 1..={p}"
                )));
            }
            Ok(k)
        }
        SelectedSize::NOverLogN => Ok(n_over_log_n(n).min(p)),
    }
}

fn with_workers<T: Send>(workers: Workers, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        Workers::Auto => Ok(f()),
        Workers::Fixed(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Rank every feature by the RMST discrepancy and keep the top set.
pub fn screen(dataset: &Dataset, config: &ScreeningConfig) -> Result<ScreeningResult> {
    let target = resolve_target(config.selected_size, dataset.n(), dataset.p())?;
    let ctx = ScreenContext::new(dataset)?;
    let parts: Vec<Result<FeatureDiscrepancy>> = with_workers(config.workers, || {
        (0..dataset.p())
            .into_par_iter()
            .map(|j| rmst_discrepancy_with_context(&ctx, dataset.column(j), config.min_stratum_size))
            .collect()
    })?;
    let parts: Result<Vec<FeatureDiscrepancy>> = parts.into_iter().collect();
    Ok(ScreeningResult::from_parts(parts?, target))
}

/// The uncensored-response discrepancy: thresholded-mean deviations of a
/// continuous response, averaged over observed thresholds. Strata below the
/// minimum size are skipped and contribute 0 to the n-denominator average.
pub fn uncensored_discrepancy(
    y: &[f64],
    xj: &[f64],
    config: &ScreeningConfig,
) -> Result<(f64, f64, f64)> {
    if y.len() != xj.len() {
        return Err(Error::InvalidArgument(format!(
            "response/covariate length mismatch: {} vs {}",
            y.len(),
            xj.len()
        )));
    }
    let n = y.len();
    if n < 2 {
        return Err(Error::EmptyInput("need n >= 2".into()));
    }
    let min_size = config.min_stratum_size.max(1);

    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| xj[a].total_cmp(&xj[b]).then(a.cmp(&b)));
    // prefix[s] = sum of y over the s smallest covariate positions.
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    for &obs in &by_x {
        prefix.push(prefix.last().unwrap() + y[obs]);
    }
    let total = prefix[n];
    let ybar = total / n as f64;

    let mut d1_sum = 0.0;
    let mut d2_sum = 0.0;
    let mut g = 0;
    while g < n {
        let mut ge = g + 1;
        while ge < n && xj[by_x[ge]] == xj[by_x[g]] {
            ge += 1;
        }
        let weight = (ge - g) as f64;
        let upper_size = n - g;
        let lower_size = g;
        if upper_size >= min_size {
            let upper_mean = (total - prefix[g]) / upper_size as f64;
            d1_sum += weight * (upper_mean - ybar).abs();
        }
        if lower_size >= min_size {
            let lower_mean = prefix[g] / lower_size as f64;
            d2_sum += weight * (lower_mean - ybar).abs();
        }
        g = ge;
    }
    let d1 = d1_sum / n as f64;
    let d2 = d2_sum / n as f64;
    Ok((d1 + d2, d1, d2))
}

/// Rank features by the uncensored discrepancy of a continuous response,
/// with an exclusion set that receives a -inf sentinel and is never selected.
pub fn screen_uncensored(
    y: &[f64],
    dataset: &Dataset,
    exclude: &[usize],
    config: &ScreeningConfig,
) -> Result<ScreeningResult> {
    let p = dataset.p();
    if y.len() != dataset.n() {
        return Err(Error::InvalidArgument(format!(
            "response length {} != n {}",
            y.len(),
            dataset.n()
        )));
    }
    for &j in exclude {
        if j >= p {
            return Err(Error::FeatureIndex { index: j, p });
        }
    }
    let target = resolve_target(config.selected_size, dataset.n(), p)?;
    let mut excluded = vec![false; p];
    for &j in exclude {
        excluded[j] = true;
    }
    let parts: Vec<Result<FeatureDiscrepancy>> = with_workers(config.workers, || {
        (0..p)
            .into_par_iter()
            .map(|j| {
                if excluded[j] {
                    Ok(FeatureDiscrepancy {
                        d: f64::NEG_INFINITY,
                        d1: f64::NEG_INFINITY,
                        d2: f64::NEG_INFINITY,
                        skipped_terms: 0,
                    })
                } else {
                    let (d, d1, d2) = uncensored_discrepancy(y, dataset.column(j), config)?;
                    Ok(FeatureDiscrepancy {
                        d,
                        d1,
                        d2,
                        skipped_terms: 0,
                    })
                }
            })
            .collect()
    })?;
    let parts: Result<Vec<FeatureDiscrepancy>> = parts.into_iter().collect();
    Ok(ScreeningResult::from_parts(parts?, target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(min_stratum: usize) -> ScreeningConfig {
        ScreeningConfig {
            min_stratum_size: min_stratum,
            ..ScreeningConfig::default()
        }
    }

    /// Brute-force evaluation straight from the definition: one KM refit per
    /// observation-threshold, composed from the public curve operations.
    fn brute_discrepancy(ds: &Dataset, j: usize, min_size: usize) -> (f64, f64, f64, usize) {
        let n = ds.n();
        let x = ds.column(j);
        let overall = SurvivalCurve::km(ds.time(), ds.status()).unwrap();
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        let mut skipped = 0usize;
        for i in 0..n {
            for (upper, dsum) in [(true, &mut d1), (false, &mut d2)] {
                let idx: Vec<usize> = (0..n)
                    .filter(|&k| if upper { x[k] >= x[i] } else { x[k] < x[i] })
                    .collect();
                let time: Vec<f64> = idx.iter().map(|&k| ds.time()[k]).collect();
                let status: Vec<u8> = idx.iter().map(|&k| ds.status()[k]).collect();
                let tau = crate::curve::restriction_time(&time, &status);
                match tau {
                    Some(tau) if idx.len() >= min_size => {
                        let curve = SurvivalCurve::km(&time, &status).unwrap();
                        *dsum +=
                            (curve.rmst(tau).unwrap() - overall.rmst(tau).unwrap()).abs();
                    }
                    _ => skipped += 1,
                }
            }
        }
        (
            d1 / n as f64 + d2 / n as f64,
            d1 / n as f64,
            d2 / n as f64,
            skipped,
        )
    }

    fn toy_dataset(x: Vec<f64>, time: Vec<f64>, status: Vec<u8>) -> Dataset {
        let n = time.len();
        assert_eq!(x.len(), n);
        Dataset::new(x, time, status, vec!["x1".into()]).unwrap()
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..30 {
            let n = 8 + (rng.gen::<u64>() % 24) as usize;
            // Mix of continuous and tied covariate values, tied times.
            let x: Vec<f64> = (0..n).map(|_| (rng.gen::<f64>() * 4.0).floor()).collect();
            let time: Vec<f64> = (0..n).map(|_| (rng.gen::<f64>() * 6.0).ceil()).collect();
            let mut status: Vec<u8> = (0..n).map(|_| u8::from(rng.gen::<f64>() < 0.7)).collect();
            status[0] = 1;
            let ds = toy_dataset(x, time, status);
            for min_size in [1, 3, 6] {
                let fast = rmst_discrepancy(&ds, 0, &small_config(min_size)).unwrap();
                let (bd, bd1, bd2, bskip) = brute_discrepancy(&ds, 0, min_size);
                assert!(
                    (fast.d1 - bd1).abs() < 1e-12 && (fast.d2 - bd2).abs() < 1e-12,
                    "trial {trial} min {min_size}: fast ({}, {}) brute ({bd1}, {bd2})",
                    fast.d1,
                    fast.d2
                );
                assert!((fast.d - bd).abs() < 1e-12);
                assert_eq!(fast.skipped_terms, bskip, "trial {trial} min {min_size}");
            }
        }
    }

    #[test]
    fn constant_covariate_gives_exact_zero() {
        let ds = toy_dataset(
            vec![2.5; 8],
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
            vec![1, 0, 1, 1, 0, 1, 1, 1],
        );
        let r = rmst_discrepancy(&ds, 0, &small_config(1)).unwrap();
        assert_eq!(r.d, 0.0);
        assert_eq!(r.d1, 0.0);
        assert_eq!(r.d2, 0.0);
        // Lower stratum empty at the single threshold: one skipped term per
        // observation.
        assert_eq!(r.skipped_terms, 8);
    }

    #[test]
    fn censored_equals_uncensored_when_all_taus_hit_the_max() {
        // No censoring, and the largest T value is duplicated at the lowest,
        // middle, and highest covariate positions, so every nonempty stratum
        // contains the global maximum and integrates to the full mean.
        let x = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];
        let time = vec![9.0, 3.0, 1.0, 9.0, 4.0, 2.0, 6.0, 9.0];
        let status = vec![1u8; 8];
        let ds = toy_dataset(x.clone(), time.clone(), status);
        let fast = rmst_discrepancy(&ds, 0, &small_config(1)).unwrap();
        let (ud, ud1, ud2) = uncensored_discrepancy(&time, &x, &small_config(1)).unwrap();
        assert!((fast.d - ud).abs() < 1e-10, "{} vs {ud}", fast.d);
        assert!((fast.d1 - ud1).abs() < 1e-10);
        assert!((fast.d2 - ud2).abs() < 1e-10);
        assert!(fast.d > 0.0);
    }

    #[test]
    fn uncensored_hand_oracle() {
        // y=(1,2,3), x=(1,2,3): d1 = (0 + 0.5 + 1)/3, d2 = (0 + 1 + 0.5)/3.
        let (d, d1, d2) =
            uncensored_discrepancy(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], &small_config(1)).unwrap();
        assert!((d1 - 0.5).abs() < 1e-15);
        assert!((d2 - 0.5).abs() < 1e-15);
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uncensored_degenerate_inputs() {
        let cfg = small_config(1);
        let (d, _, _) = uncensored_discrepancy(&[2.0; 6], &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &cfg).unwrap();
        assert!(d.abs() < 1e-12, "constant y: d = {d}");
        let (d, _, _) = uncensored_discrepancy(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0], &cfg).unwrap();
        assert_eq!(d, 0.0, "constant x is exact");
        assert!(uncensored_discrepancy(&[1.0], &[1.0, 2.0], &cfg).is_err());
    }

    #[test]
    fn monotone_transforms_leave_values_and_ranks_unchanged() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 40;
        let p = 6;
        let mut cols = Vec::new();
        for _ in 0..p {
            // Positive covariates so x^3 stays monotone on the sample.
            cols.extend((0..n).map(|_| rng.gen::<f64>() * 3.0 + 0.1));
        }
        let time: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 5.0 + 0.1).collect();
        let status: Vec<u8> = (0..n).map(|_| u8::from(rng.gen::<f64>() < 0.75)).collect();
        let names = (0..p).map(|j| format!("x{}", j + 1)).collect::<Vec<_>>();
        let base = Dataset::new(cols.clone(), time.clone(), status.clone(), names.clone()).unwrap();
        let cfg = ScreeningConfig::default();
        let r0 = screen(&base, &cfg).unwrap();

        let transforms: [fn(f64) -> f64; 3] =
            [|x| x.exp(), |x| 2.0 * x + 7.0, |x| x * x * x];
        for (ti, g) in transforms.iter().enumerate() {
            let tcols: Vec<f64> = cols.iter().map(|&v| g(v)).collect();
            let ds = Dataset::new(tcols, time.clone(), status.clone(), names.clone()).unwrap();
            let r = screen(&ds, &cfg).unwrap();
            assert_eq!(r.d, r0.d, "transform {ti}: d changed");
            assert_eq!(r.d1, r0.d1, "transform {ti}: d1 changed");
            assert_eq!(r.d2, r0.d2, "transform {ti}: d2 changed");
            assert_eq!(r.ranking, r0.ranking, "transform {ti}: ranking changed");
        }
    }

    #[test]
    fn duplicate_columns_tie_break_by_index() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 30;
        let col: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let noise: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let mut cols = col.clone();
        cols.extend(noise);
        cols.extend(col.clone());
        let time: Vec<f64> = (0..n).map(|i| col[i] * 2.0 + 0.5 + noise[i] * 0.01).collect();
        let status = vec![1u8; n];
        let ds = Dataset::new(
            cols,
            time,
            status,
            vec!["a".into(), "b".into(), "a_copy".into()],
        )
        .unwrap();
        let r = screen(&ds, &ScreeningConfig::default()).unwrap();
        assert_eq!(r.d[0], r.d[2], "duplicate columns must agree exactly");
        let pos = r.rank_positions();
        assert!(pos[0] < pos[2], "tie broken by ascending feature index");
    }

    #[test]
    fn selected_size_rules() {
        assert_eq!(n_over_log_n(200), 37);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let n = 25;
        let cols: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let time: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 0.1).collect();
        let ds = Dataset::new(cols, time, vec![1u8; n], vec!["only".into()]).unwrap();
        let r = screen(&ds, &ScreeningConfig::default()).unwrap();
        assert_eq!(r.ranking, vec![0]);
        assert_eq!(r.selected, vec![0]);
        assert!(matches!(
            screen(
                &ds,
                &ScreeningConfig {
                    selected_size: SelectedSize::Explicit(5),
                    ..ScreeningConfig::default()
                }
            ),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn exclusion_sentinel_never_selected() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let n = 30;
        let p = 4;
        let cols: Vec<f64> = (0..n * p).map(|_| rng.gen::<f64>()).collect();
        let time: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 0.1).collect();
        let names = (0..p).map(|j| format!("x{j}")).collect();
        let ds = Dataset::new(cols, time.clone(), vec![1u8; n], names).unwrap();
        let y: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let cfg = small_config(3);

        let all = screen_uncensored(&y, &ds, &[0, 1, 2, 3], &cfg).unwrap();
        assert!(all.selected.is_empty());

        let one = screen_uncensored(&y, &ds, &[0, 1, 3], &cfg).unwrap();
        assert_eq!(one.selected, vec![2]);
        assert_eq!(one.d[0], f64::NEG_INFINITY);
        assert_eq!(one.ranking[0], 2);
    }

    #[test]
    fn invalid_feature_index_rejected() {
        let ds = toy_dataset(vec![1.0, 2.0], vec![1.0, 2.0], vec![1, 1]);
        assert!(matches!(
            rmst_discrepancy(&ds, 1, &ScreeningConfig::default()),
            Err(Error::FeatureIndex { index: 1, p: 1 })
        ));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let n = 60;
        let p = 12;
        let cols: Vec<f64> = (0..n * p).map(|_| rng.gen::<f64>()).collect();
        let time: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 4.0 + 0.1).collect();
        let status: Vec<u8> = (0..n).map(|_| u8::from(rng.gen::<f64>() < 0.8)).collect();
        let names = (0..p).map(|j| format!("x{j}")).collect();
        let ds = Dataset::new(cols, time, status, names).unwrap();
        let mut results = Vec::new();
        for w in [1usize, 2, 4] {
            let cfg = ScreeningConfig {
                workers: Workers::Fixed(w),
                ..ScreeningConfig::default()
            };
            results.push(screen(&ds, &cfg).unwrap());
        }
        for r in &results[1..] {
            assert_eq!(r.d, results[0].d);
            assert_eq!(r.ranking, results[0].ranking);
            assert_eq!(r.selected, results[0].selected);
        }
    }

    #[test]
    fn d_decomposition_and_nonnegativity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let n = 20 + (rng.gen::<u64>() % 30) as usize;
            let cols: Vec<f64> = (0..n * 3).map(|_| (rng.gen::<f64>() * 5.0).floor()).collect();
            let time: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 3.0 + 0.05).collect();
            let mut status: Vec<u8> = (0..n).map(|_| u8::from(rng.gen::<f64>() < 0.6)).collect();
            status[0] = 1;
            let ds = Dataset::new(
                cols,
                time,
                status,
                vec!["a".into(), "b".into(), "c".into()],
            )
            .unwrap();
            let r = screen(&ds, &small_config(2)).unwrap();
            for j in 0..3 {
                assert!(r.d[j] >= 0.0);
                assert!((r.d[j] - (r.d1[j] + r.d2[j])).abs() < 1e-12);
            }
        }
    }
}
