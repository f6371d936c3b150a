//! Exact random subset-sum minimization and achievable-sum coverage.
//!
//! `solve_subset_sum` finds, over all `2^n` index subsets, the subset whose
//! sum is closest to the target — exactly, by meet-in-the-middle. Ties are
//! broken deterministically: smaller absolute error, then fewer indices,
//! then lexicographically smallest index set. `brute_force_solve` is the
//! exhaustive oracle with the same ordering.
//!
//! `coverage_check` decides whether the achievable sums form an eps-net of
//! an interval, and `estimate_coverage_probability` Monte-Carlos the
//! probability of that event over fresh coefficient draws.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::exec::{Sequential, TrialExecutor};
use crate::rng::{derive_seed, rng_from_seed};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Meet-in-the-middle enumerates `2^(n/2)` sums per half.
pub const MITM_LIMIT: usize = 46;
/// Exhaustive oracle limit.
pub const BRUTE_LIMIT: usize = 20;
/// Full-enumeration limit for sum lists and coverage checks.
pub const ENUM_LIMIT: usize = 26;

/// A subset-sum minimization instance: coefficients, target, and the
/// tolerance that decides feasibility of the optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSumInstance {
    values: Vec<f64>,
    target: f64,
    tolerance: f64,
}

impl SubsetSumInstance {
    pub fn new(values: Vec<f64>, target: f64, tolerance: f64) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) || !target.is_finite() {
            return Err(Error::NonFinite {
                context: "subset-sum values",
            });
        }
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(Error::Domain {
                context: "subset-sum tolerance must be positive",
                value: tolerance,
            });
        }
        Ok(Self {
            values,
            target,
            tolerance,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A chosen subset: sorted indices, the sum they achieve (recomputed by an
/// ascending-index fold), and the distance to the target.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSelection {
    pub indices: Vec<usize>,
    pub achieved_sum: f64,
    pub abs_error: f64,
    pub feasible: bool,
}

impl SubsetSelection {
    fn from_indices(inst: &SubsetSumInstance, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        let achieved_sum = indices.iter().fold(0.0, |acc, &i| acc + inst.values[i]);
        let abs_error = (inst.target - achieved_sum).abs();
        SubsetSelection {
            indices,
            achieved_sum,
            abs_error,
            feasible: abs_error <= inst.tolerance,
        }
    }
}

// ---------------------------------------------------------------------------
// canonical ordering helpers
// ---------------------------------------------------------------------------

/// Lexicographic order on the ascending index sequences encoded by two bit
/// masks; a proper prefix sorts first.
fn lex_cmp_mask(mut a: u64, mut b: u64) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            (false, false) => {}
        }
        let (i, j) = (a.trailing_zeros(), b.trailing_zeros());
        if i != j {
            return i.cmp(&j);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// `(error, cardinality, lexicographic indices)` comparison for full masks.
fn better_mask(err_a: f64, mask_a: u64, err_b: f64, mask_b: u64) -> bool {
    if err_a != err_b {
        return err_a < err_b;
    }
    let (pa, pb) = (mask_a.count_ones(), mask_b.count_ones());
    if pa != pb {
        return pa < pb;
    }
    lex_cmp_mask(mask_a, mask_b) == Ordering::Less
}

/// All `2^n` subset sums indexed by bit mask. Each sum is the fold of its
/// members in ascending index order, matching `SubsetSelection`.
fn subset_sums_by_mask(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut sums = vec![0.0; 1usize << n];
    for (i, &v) in values.iter().enumerate() {
        let bit = 1usize << i;
        for mask in 0..bit {
            sums[bit | mask] = sums[mask] + v;
        }
    }
    sums
}

/// Exhaustive minimizer, the testing oracle for `solve_subset_sum`.
pub fn brute_force_solve(inst: &SubsetSumInstance) -> Result<SubsetSelection> {
    let n = inst.len();
    if n > BRUTE_LIMIT {
        return Err(Error::Capacity {
            context: "brute_force_solve",
            limit: BRUTE_LIMIT,
            got: n,
        });
    }
    let sums = subset_sums_by_mask(&inst.values);
    let mut best_mask = 0u64;
    let mut best_err = inst.target.abs();
    for (mask, &sum) in sums.iter().enumerate().skip(1) {
        let err = (inst.target - sum).abs();
        if better_mask(err, mask as u64, best_err, best_mask) {
            best_err = err;
            best_mask = mask as u64;
        }
    }
    Ok(SubsetSelection::from_indices(
        inst,
        mask_to_indices(best_mask),
    ))
}

fn mask_to_indices(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

// ---------------------------------------------------------------------------
// meet in the middle
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct HalfEntry {
    sum: f64,
    mask: u32,
}

/// Enumerate one half and reduce to a canonical representative per distinct
/// sum value: fewest indices, then lexicographically smallest. For a fixed
/// complement choice this representative dominates every other subset with
/// the same sum, so dropping the rest cannot change the overall optimum.
fn enumerate_half(values: &[f64]) -> Vec<HalfEntry> {
    let n = values.len();
    let mut entries = Vec::with_capacity(1usize << n);
    entries.push(HalfEntry { sum: 0.0, mask: 0 });
    for (i, &v) in values.iter().enumerate() {
        let len = entries.len();
        for j in 0..len {
            entries.push(HalfEntry {
                sum: entries[j].sum + v,
                mask: entries[j].mask | (1 << i),
            });
        }
    }
    // Sums of nonzero values never round to -0.0, so equal sums are
    // contiguous under total_cmp and plain == dedup is safe.
    entries.sort_unstable_by(|a, b| {
        a.sum
            .total_cmp(&b.sum)
            .then_with(|| a.mask.count_ones().cmp(&b.mask.count_ones()))
            .then_with(|| lex_cmp_mask(u64::from(a.mask), u64::from(b.mask)))
    });
    entries.dedup_by(|next, kept| next.sum == kept.sum);
    entries
}

struct SplitInstance<'a> {
    left_idx: &'a [usize],
    right_idx: &'a [usize],
}

impl SplitInstance<'_> {
    /// Merged ascending global indices of a candidate pair. Left-half
    /// indices all precede right-half indices.
    fn indices(&self, left_mask: u32, right_mask: u32) -> Vec<usize> {
        let mut out = Vec::with_capacity((left_mask.count_ones() + right_mask.count_ones()) as usize);
        for i in mask_to_indices(u64::from(left_mask)) {
            out.push(self.left_idx[i]);
        }
        for i in mask_to_indices(u64::from(right_mask)) {
            out.push(self.right_idx[i]);
        }
        out
    }

    fn lex_cmp_pairs(&self, a: (u32, u32), b: (u32, u32)) -> Ordering {
        let ia = self.indices(a.0, a.1);
        let ib = self.indices(b.0, b.1);
        ia.cmp(&ib)
    }
}

/// Exact minimizer of `|target - sum(subset)|` by meet-in-the-middle, with
/// the same deterministic tie-breaking as `brute_force_solve`. Zero-valued
/// coefficients never appear in the canonical optimum (dropping one keeps
/// the sum and shrinks the subset), so they are filtered before splitting.
pub fn solve_subset_sum(inst: &SubsetSumInstance) -> Result<SubsetSelection> {
    let n = inst.len();
    if n > MITM_LIMIT {
        return Err(Error::Capacity {
            context: "solve_subset_sum",
            limit: MITM_LIMIT,
            got: n,
        });
    }
    let nonzero: Vec<usize> = (0..n).filter(|&i| inst.values[i] != 0.0).collect();
    let (left_idx, right_idx) = nonzero.split_at(nonzero.len() / 2);
    let left_vals: Vec<f64> = left_idx.iter().map(|&i| inst.values[i]).collect();
    let right_vals: Vec<f64> = right_idx.iter().map(|&i| inst.values[i]).collect();
    let left = enumerate_half(&left_vals);
    let right = enumerate_half(&right_vals);
    let split = SplitInstance {
        left_idx,
        right_idx,
    };
    let target = inst.target;

    // The signed distance d_j = target - (l + r_j) is exactly non-increasing
    // in j (float addition and subtraction are monotone), so |d_j| is exactly
    // V-shaped: its minimum sits at the sign boundary, and the pairs tied at
    // any error level form contiguous blocks at d == +err and d == -err.

    // Pass 1: minimal achievable error over representative pairs.
    let mut best_err = f64::INFINITY;
    for le in &left {
        let l = le.sum;
        let q = right.partition_point(|re| target - (l + re.sum) > 0.0);
        for j in [q.wrapping_sub(1), q] {
            if let Some(re) = right.get(j) {
                let err = (target - (l + re.sum)).abs();
                if err < best_err {
                    best_err = err;
                }
            }
        }
    }

    // Pass 2: canonical winner among every pair achieving the minimum.
    let mut best: Option<(u32, u32, u32)> = None; // (left mask, right mask, popcount)
    for le in &left {
        let l = le.sum;
        for side in [best_err, -best_err] {
            let start = right.partition_point(|re| target - (l + re.sum) > side);
            for re in right[start..].iter() {
                if target - (l + re.sum) != side {
                    break;
                }
                let pc = le.mask.count_ones() + re.mask.count_ones();
                let candidate = (le.mask, re.mask, pc);
                best = Some(match best {
                    None => candidate,
                    Some(cur) => {
                        if pc < cur.2
                            || (pc == cur.2
                                && split.lex_cmp_pairs((le.mask, re.mask), (cur.0, cur.1))
                                    == Ordering::Less)
                        {
                            candidate
                        } else {
                            cur
                        }
                    }
                });
            }
        }
    }

    let (lm, rm, _) = best.expect("the pass-1 minimizer lies in a tie block");
    Ok(SubsetSelection::from_indices(inst, split.indices(lm, rm)))
}

/// All `2^n` subset sums, sorted ascending, duplicates included. The empty
/// subset contributes 0.
pub fn enumerate_sums(values: &[f64]) -> Result<Vec<f64>> {
    if values.len() > ENUM_LIMIT {
        return Err(Error::Capacity {
            context: "enumerate_sums",
            limit: ENUM_LIMIT,
            got: values.len(),
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "enumerate_sums values",
        });
    }
    let mut sums = subset_sums_by_mask(values);
    sums.sort_unstable_by(f64::total_cmp);
    Ok(sums)
}

/// Outcome of an eps-net check over `[lo, hi]`.
///
/// With the achievable sums sorted as `s_1 <= ... <= s_m`, the interval is
/// covered iff `min sedge conditions hold`: `s_1 <= lo + eps`,
/// `s_m >= hi - eps`, and every consecutive gap whose open interval meets
/// `[lo, hi]` is at most `2 eps`. `worst_gap` is the largest such gap,
/// `boundary_slack` is `(s_1 - lo, hi - s_m)`, and `sum_count` counts the
/// `2^n` enumerated sums.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageResult {
    pub covered: bool,
    pub worst_gap: f64,
    pub boundary_slack: (f64, f64),
    pub sum_count: usize,
}

/// Decide eps-net coverage of `[lo, hi]` by the subset sums of `values`.
///
/// Sums are enumerated meet-in-the-middle and only the ones in (or adjacent
/// to) the window are materialized, so the check stays affordable at the
/// `n = 26` cap when the window is a unit-scale interval.
pub fn coverage_check(values: &[f64], lo: f64, hi: f64, eps: f64) -> Result<CoverageResult> {
    validate_coverage_params(values.len(), lo, hi, eps)?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "coverage values",
        });
    }
    Ok(coverage_check_validated(values, lo, hi, eps))
}

fn validate_coverage_params(n: usize, lo: f64, hi: f64, eps: f64) -> Result<()> {
    if n > ENUM_LIMIT {
        return Err(Error::Capacity {
            context: "coverage_check",
            limit: ENUM_LIMIT,
            got: n,
        });
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain {
            context: "coverage interval requires lo < hi",
            value: hi - lo,
        });
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Domain {
            context: "coverage eps must be positive",
            value: eps,
        });
    }
    Ok(())
}

fn coverage_check_validated(values: &[f64], lo: f64, hi: f64, eps: f64) -> CoverageResult {
    let n = values.len();
    let (lv, rv) = values.split_at(n / 2);
    let left = distinct_sums(lv);
    let right = distinct_sums(rv);

    let min_sum = left[0] + right[0];
    let max_sum = left[left.len() - 1] + right[right.len() - 1];

    let mut window: Vec<f64> = Vec::new();
    let mut best_below = f64::NEG_INFINITY;
    let mut best_above = f64::INFINITY;
    for &l in &left {
        let start = right.partition_point(|&r| l + r < lo);
        if start > 0 {
            let s = l + right[start - 1];
            if s > best_below {
                best_below = s;
            }
        }
        let mut j = start;
        while j < right.len() && l + right[j] <= hi {
            window.push(l + right[j]);
            j += 1;
        }
        if j < right.len() {
            let s = l + right[j];
            if s < best_above {
                best_above = s;
            }
        }
    }
    window.sort_unstable_by(f64::total_cmp);
    window.dedup();

    let mut seq: Vec<f64> = Vec::with_capacity(window.len() + 2);
    if best_below > f64::NEG_INFINITY {
        seq.push(best_below);
    }
    seq.extend_from_slice(&window);
    if best_above < f64::INFINITY {
        seq.push(best_above);
    }

    let mut worst_gap = 0.0f64;
    for pair in seq.windows(2) {
        // gap (a, b) is relevant only where the open interval meets [lo, hi]
        if pair[1] > lo && pair[0] < hi {
            worst_gap = worst_gap.max(pair[1] - pair[0]);
        }
    }

    let boundary_slack = (min_sum - lo, hi - max_sum);
    let covered =
        worst_gap <= 2.0 * eps && boundary_slack.0 <= eps && boundary_slack.1 <= eps;
    CoverageResult {
        covered,
        worst_gap,
        boundary_slack,
        sum_count: 1usize << n,
    }
}

fn distinct_sums(values: &[f64]) -> Vec<f64> {
    let mut sums = subset_sums_by_mask(values);
    sums.sort_unstable_by(f64::total_cmp);
    sums.dedup();
    sums
}

/// One seeded coverage trial: draw `n` coefficients from `dist` and check
/// coverage of `[lo, hi]` at tolerance `eps`. Coefficients come from one
/// sequential stream, so trials are nested across `n` under a shared seed
/// (more coefficients can only improve coverage).
pub fn coverage_trial(
    dist: Distribution,
    n: usize,
    eps: f64,
    lo: f64,
    hi: f64,
    trial_seed: u64,
) -> Result<bool> {
    dist.validate()?;
    validate_coverage_params(n, lo, hi, eps)?;
    let mut rng = rng_from_seed(trial_seed);
    let values = dist.sample_many(&mut rng, n);
    Ok(coverage_check_validated(&values, lo, hi, eps).covered)
}

/// Monte-Carlo estimate of the coverage probability with a Wilson 95%
/// interval. Trial `t` derives its RNG from `(seed, "coverage-trial", t)`.
pub fn estimate_coverage_probability(
    dist: Distribution,
    n: usize,
    eps: f64,
    lo: f64,
    hi: f64,
    trials: usize,
    seed: u64,
) -> Result<(f64, (f64, f64))> {
    estimate_coverage_probability_with(dist, n, eps, lo, hi, trials, seed, &Sequential)
}

/// As `estimate_coverage_probability`, with a caller-chosen executor.
#[allow(clippy::too_many_arguments)]
pub fn estimate_coverage_probability_with(
    dist: Distribution,
    n: usize,
    eps: f64,
    lo: f64,
    hi: f64,
    trials: usize,
    seed: u64,
    exec: &dyn TrialExecutor,
) -> Result<(f64, (f64, f64))> {
    if trials == 0 {
        return Err(Error::Domain {
            context: "estimate requires at least one trial",
            value: 0.0,
        });
    }
    dist.validate()?;
    validate_coverage_params(n, lo, hi, eps)?;
    let outcomes = exec.run(trials, &|t| {
        let mut rng = rng_from_seed(derive_seed(seed, "coverage-trial", t as u64));
        let values = dist.sample_many(&mut rng, n);
        coverage_check_validated(&values, lo, hi, eps).covered
    });
    let successes = outcomes.iter().filter(|&&ok| ok).count();
    let prob = successes as f64 / trials as f64;
    Ok((prob, wilson_interval(successes, trials)))
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}
