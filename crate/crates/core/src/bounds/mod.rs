//! Exact rational enclosures of limiting co-densities.
//!
//! `t_{r,k}` is the limit of `T(n, K_k^(r)) / binom(n, r)`, `ṫ_r(s)` the
//! limit for connected r-graphs with independence number `s`, and
//! `ṫ_r(S)` the limit for independence sequence `S`. Sequences combine as
//! `ṫ_r(S) = (Σ ṫ_r(s_i)^(-1/(r-1)))^(-(r-1))`.

mod interval;
mod report;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::partitions;
use crate::error::{ensure, Result};
use crate::hypergraph::IndependenceSequence;
pub use interval::{fraction, parse_fraction, DensityInterval, ROOT_DENOMINATOR};
use interval::{ratio, root_enclosure};
pub use report::{BoundReport, Step};

const DE_CAEN: &str = "de Caen: t_{r,l+1} >= 1/binom(l, r-1)";
const SIDORENKO: &str = "Sidorenko construction: ṫ_r(l) <= (r-1)^2/l^2";
const COMBINE: &str = "ṫ_r(S) = (Σ ṫ_r(s_i)^(-1/(r-1)))^(-(r-1)) for s_i >= r-1";
const RAZBOROV: &str = "Razborov flag-algebra bound π_{3,4} <= 0.561666";
const TURAN_CONSTRUCTION: &str = "Turán's constructions give π_{3,4} >= 5/9";
const FORCED: &str = "an r-graph with α <= r-1 is complete";

/// `ṫ_r(S)` enclosure from enclosures of the individual `ṫ_r(s_i)`.
///
/// The map is increasing in every argument, so the lower end is computed from
/// all lower ends and the upper end from all upper ends. Irrational
/// `(r-1)`-th roots are rounded outward to denominator [`ROOT_DENOMINATOR`].
pub fn combine_sequence(intervals: &[DensityInterval], r: usize) -> Result<DensityInterval> {
    ensure!(r >= 3, "uniformity must be at least 3 (r={r})");
    ensure!(!intervals.is_empty(), "need at least one interval");
    ensure!(
        intervals.iter().all(|x| x.lo().is_positive()),
        "every interval needs a positive lower end"
    );
    if let [single] = intervals {
        return Ok(single.clone());
    }
    let e = (r - 1) as u32;
    let mut sum_lo = BigRational::zero();
    let mut sum_hi = BigRational::zero();
    for x in intervals {
        // lo uses the largest root of 1/lo, hi the smallest root of 1/hi.
        sum_lo += root_enclosure(&x.lo().recip(), e).1;
        sum_hi += root_enclosure(&x.hi().recip(), e).0;
    }
    let lo = num_traits::pow(sum_lo, e as usize).recip();
    let hi = num_traits::pow(sum_hi, e as usize).recip();
    DensityInterval::new(lo, hi)
}

/// `ṫ_3(2) = 1`.
pub fn point_t3_of_2() -> DensityInterval {
    DensityInterval::point(BigRational::one()).expect("1 is a density")
}

fn big_binom(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `1/binom(l, r-1)`, de Caen's lower bound on `t_{r,l+1}`.
pub fn de_caen_lower(r: usize, l: usize) -> Result<BigRational> {
    ensure!(r >= 2 && l + 1 >= r, "need l >= r-1 >= 1 (r={r}, l={l})");
    Ok(BigRational::new(BigInt::one(), big_binom(l, r - 1)))
}

/// Upper bound `(r-1)^2/l^2` on `ṫ_r(l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidorenkoBound {
    #[serde(serialize_with = "interval::serialize_fraction")]
    pub value: BigRational,
    /// The bound is attained by `l/(r-1)` balanced complete parts, which
    /// this crate can build. Otherwise it is only cited.
    pub realized: bool,
}

pub fn sidorenko_upper(r: usize, l: usize) -> Result<SidorenkoBound> {
    ensure!(r >= 2 && l + 1 >= r && l >= 1, "need l >= r-1 >= 1 (r={r}, l={l})");
    let value = BigRational::new(BigInt::from((r - 1) * (r - 1)), BigInt::from(l * l));
    Ok(SidorenkoBound { value, realized: l.is_multiple_of(r - 1) })
}

/// `[1 - 0.561666, 4/9]`, the cited enclosure of `t_{3,4} = ṫ_3(3)`.
fn t34_cited() -> DensityInterval {
    DensityInterval::new(ratio(438_334, 1_000_000), ratio(4, 9)).expect("valid constants")
}

/// Enclosure of `t_{r,k}` (and of `ṫ_r(k-1)`, which dominates it).
pub fn t_interval(r: usize, k: usize) -> Result<DensityInterval> {
    Ok(t_interval_report(r, k)?.interval)
}

pub fn t_interval_report(r: usize, k: usize) -> Result<BoundReport> {
    ensure!(r >= 2 && k >= r, "need k >= r >= 2 (r={r}, k={k})");
    let quantity = format!("t_{{{r},{k}}}");
    if (r, k) == (3, 4) {
        let steps = vec![
            Step::new("cited-constant", RAZBOROV, vec!["lo=1-0.561666".into()]),
            Step::new("cited-constant", TURAN_CONSTRUCTION, vec!["hi=1-5/9".into()]),
        ];
        return Ok(BoundReport::new(quantity, t34_cited(), steps));
    }
    let l = k - 1;
    let lo = de_caen_lower(r, l)?;
    let up = sidorenko_upper(r, l)?;
    let mut steps = vec![
        Step::new("de-caen-lower", DE_CAEN, vec![format!("r={r}"), format!("l={l}"), fraction(&lo)]),
        Step::new(
            "sidorenko-upper",
            SIDORENKO,
            vec![
                format!("r={r}"),
                format!("l={l}"),
                fraction(&up.value),
                if up.realized { "realized" } else { "cited" }.into(),
            ],
        ),
    ];
    if l == r - 1 {
        steps.push(Step::new("forced-complete", FORCED, vec![]));
    }
    Ok(BoundReport::new(quantity, DensityInterval::new(lo, up.value)?, steps))
}

/// Default enclosure of `ṫ_r(s)` for `s >= r-1`: the same ends as
/// `t_interval(r, s+1)`, valid because `t_{r,s+1} <= ṫ_r(s)` and
/// `t_{3,4} = ṫ_3(3)`.
pub fn tilde_interval(r: usize, s: usize) -> Result<DensityInterval> {
    ensure!(r >= 2 && s + 1 >= r, "need s >= r-1 (r={r}, s={s})");
    t_interval(r, s + 1)
}

/// `t_{3,2m+1}(m) = 1/m^2`.
pub fn t3_limit_odd(m: usize) -> Result<BigRational> {
    ensure!(m >= 1, "need m >= 1");
    Ok(BigRational::new(BigInt::one(), BigInt::from(m * m)))
}

/// `t_{3,2m+2}(m) = (m - 1 + t_{3,4}^(-1/2))^(-2)`, enclosed.
pub fn t3_limit_even(m: usize, t34: &DensityInterval) -> Result<DensityInterval> {
    ensure!(m >= 1, "need m >= 1");
    ensure!(t34.lo().is_positive(), "t_{{3,4}} enclosure must have a positive lower end");
    let mut parts = vec![point_t3_of_2(); m - 1];
    parts.push(t34.clone());
    combine_sequence(&parts, 3)
}

/// `t_{r,k}(m)`: the minimum of `ṫ_r(S)` over sequences of `m` positive
/// entries summing to `k-1`.
///
/// Entries of 1 are isolated vertices and add nothing. Entries `2..=r-2`
/// cannot occur, so such sequences are skipped, as are sequences of ones
/// only. Missing table entries default to [`tilde_interval`]. Every
/// sequence whose lower end does not exceed the smallest upper end is
/// reported as a possible minimizer.
pub fn t_limit_components(
    r: usize,
    k: usize,
    m: usize,
    table: &BTreeMap<usize, DensityInterval>,
) -> Result<BoundReport> {
    ensure!(r >= 3, "uniformity must be at least 3 (r={r})");
    ensure!(m >= 1 && m < k, "need 1 <= m <= k-1 (k={k}, m={m})");
    for (&s, x) in table {
        ensure!(s + 1 >= r, "table entry s={s} is below r-1");
        ensure!(x.lo().is_positive(), "table entry s={s} needs a positive lower end");
    }
    let mut steps = Vec::new();
    let entry = |s: usize, steps: &mut Vec<Step>| -> Result<DensityInterval> {
        match table.get(&s) {
            Some(x) => Ok(x.clone()),
            None => {
                let x = tilde_interval(r, s)?;
                steps.push(Step::new(
                    "default-entry",
                    "ṫ_r(s) enclosed like t_{r,s+1}: de Caen below, Sidorenko above",
                    vec![format!("s={s}"), x.to_string()],
                ));
                Ok(x)
            }
        }
    };
    let mut candidates: Vec<(IndependenceSequence, DensityInterval)> = Vec::new();
    let mut cache: BTreeMap<usize, DensityInterval> = BTreeMap::new();
    for parts in partitions(k - 1, m) {
        if parts.iter().any(|&s| (2..r - 1).contains(&s)) || parts.iter().all(|&s| s == 1) {
            continue;
        }
        let mut xs = Vec::new();
        for &s in parts.iter().filter(|&&s| s > 1) {
            let x = match cache.get(&s) {
                Some(x) => x.clone(),
                None => {
                    let x = entry(s, &mut steps)?;
                    cache.insert(s, x.clone());
                    x
                }
            };
            xs.push(x);
        }
        let x = combine_sequence(&xs, r)?;
        let seq = IndependenceSequence::new(parts)?;
        steps.push(Step::new("combine-sequence", COMBINE, vec![format!("S={seq}"), x.to_string()]));
        candidates.push((seq, x));
    }
    ensure!(!candidates.is_empty(), "no admissible sequence of {m} entries summing to {}", k - 1);

    let lo = candidates.iter().map(|(_, x)| x.lo()).min().expect("nonempty").clone();
    let hi = candidates.iter().map(|(_, x)| x.hi()).min().expect("nonempty").clone();
    let minimizers: Vec<IndependenceSequence> =
        candidates.iter().filter(|(_, x)| *x.lo() <= hi).map(|(s, _)| s.clone()).collect();
    steps.push(Step::new(
        "interval-minimum",
        "t_{r,k}(m) = min ṫ_r(S) over |S| = m, ‖S‖ = k-1",
        minimizers.iter().map(|s| format!("minimizer={s}")).collect(),
    ));
    if (r, k, m) == (3, 5, 2) {
        steps.push(Step::new(
            "co-density-check",
            "two disjoint complete 3-graphs: 2·binom(n/2,3)/binom(n,3) -> 1/4; \
             the value 3/4 is the edge density π, not t",
            vec!["t_{3,5}(2)=1/4".into()],
        ));
    }
    let mut report = BoundReport::new(format!("t_{{{r},{k}}}({m})"), DensityInterval::new(lo, hi)?, steps);
    report.minimizers = minimizers;
    Ok(report)
}

/// An exact comparison `lhs > rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl Comparison {
    fn greater(lhs: &BigRational, rhs: &BigRational) -> Self {
        Comparison { lhs: fraction(lhs), rhs: fraction(rhs), holds: lhs > rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AverageLemmaCheck {
    pub l: usize,
    /// `ṫ_3({l+1} ⊎ (l-1)·{1}) >= 1/binom(l+1,2) > 1/l^2 = ṫ_3(l·{2})`.
    pub first: Comparison,
    /// `ṫ_3({l+2} ⊎ (l-1)·{1}) >= 1/binom(l+2,2) > ((2l+1)/2)^(-2) >= ṫ_3({3} ⊎ (l-1)·{2})`.
    pub second: Comparison,
    pub derivation: Vec<Step>,
}

impl AverageLemmaCheck {
    pub fn passed(&self) -> bool {
        self.first.holds && self.second.holds
    }
}

/// Replacing a large component plus singletons by components with
/// independence number 2 lowers the density.
pub fn average_lemma_check(l: usize) -> Result<AverageLemmaCheck> {
    ensure!(l >= 2, "need l >= 2");
    let lhs1 = de_caen_lower(3, l + 1)?;
    let twos = combine_sequence(&vec![point_t3_of_2(); l], 3)?;
    let lhs2 = de_caen_lower(3, l + 2)?;
    let mut parts = vec![point_t3_of_2(); l - 1];
    parts.push(tilde_interval(3, 3)?);
    let mixed = combine_sequence(&parts, 3)?;
    let derivation = vec![
        Step::new("de-caen-lower", DE_CAEN, vec![format!("l={}", l + 1), fraction(&lhs1)]),
        Step::new("combine-sequence", COMBINE, vec![format!("S={l}·{{2}}"), twos.to_string()]),
        Step::new("de-caen-lower", DE_CAEN, vec![format!("l={}", l + 2), fraction(&lhs2)]),
        Step::new(
            "combine-sequence",
            COMBINE,
            vec![format!("S={{3}}⊎{}·{{2}}", l - 1), mixed.to_string(), "ṫ_3(3) <= 4/9".into()],
        ),
    ];
    Ok(AverageLemmaCheck {
        l,
        first: Comparison::greater(&lhs1, twos.hi()),
        second: Comparison::greater(&lhs2, mixed.hi()),
        derivation,
    })
}

/// Largest number of components an optimal covering r-graph can have for
/// large `n`: `⌊(k-1)/(r-1)⌋`.
pub fn max_components(k: usize, r: usize) -> Result<usize> {
    ensure!(r >= 2 && k > r, "need k > r >= 2 (k={k}, r={r})");
    Ok((k - 1) / (r - 1))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JensenReport {
    /// `Σ t_i p_i^r`.
    pub lhs: f64,
    /// `(Σ t_i^(-1/(r-1)))^(-(r-1))`.
    pub rhs: f64,
    pub holds: bool,
    /// The weights attaining equality, proportional to `t_i^(-1/(r-1))`.
    pub p_star: Vec<f64>,
}

/// Floating-point check of `Σ t_i p_i^r >= (Σ t_i^(-1/(r-1)))^(-(r-1))`.
pub fn jensen_check(t: &[f64], p: &[f64], r: usize) -> Result<JensenReport> {
    ensure!(r >= 2, "need r >= 2");
    ensure!(!t.is_empty() && t.len() == p.len(), "t and p need the same positive length");
    ensure!(t.iter().all(|&x| x.is_finite() && x > 0.0), "every t_i must be positive");
    ensure!(p.iter().all(|&x| x > 0.0 && x <= 1.0), "every p_i must lie in (0, 1]");
    let total: f64 = p.iter().sum();
    ensure!((total - 1.0).abs() <= 1e-12, "weights sum to {total}, not 1");
    let e = (r - 1) as f64;
    let lhs: f64 = t.iter().zip(p).map(|(&t, &p)| t * p.powi(r as i32)).sum();
    let c: Vec<f64> = t.iter().map(|&t| t.powf(-1.0 / e)).collect();
    let sum: f64 = c.iter().sum();
    let rhs = sum.powf(-e);
    Ok(JensenReport { lhs, rhs, holds: lhs >= rhs - 1e-12, p_star: c.iter().map(|x| x / sum).collect() })
}

/// `binom(a,r) + binom(b,r) < binom(a-1,r) + binom(b+1,r)`: moving a vertex
/// from the smaller to the larger part increases the edge count.
pub fn binom_shift_compare(a: usize, b: usize, r: usize) -> Result<bool> {
    ensure!(b >= a && a > r && r > 1, "need b >= a > r > 1 (a={a}, b={b}, r={r})");
    Ok(big_binom(a, r) + big_binom(b, r) < big_binom(a - 1, r) + big_binom(b + 1, r))
}

/// Fewest edges of a covering 3-graph with `k = 5` and at least two
/// components: two complete halves.
pub fn thm_max_value(n: usize) -> Result<u64> {
    ensure!(n >= 6, "need n >= 6 (n={n})");
    let c3 = |x: u64| x * x.saturating_sub(1) * x.saturating_sub(2) / 6;
    let n = n as u64;
    Ok(c3(n / 2) + c3(n - n / 2))
}

#[cfg(test)]
mod tests;
