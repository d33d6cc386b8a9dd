//! The prefix-code proportion rho, grid verification of the counting
//! formulas and bounds, and convergence tables for the (1,1,c) and binary
//! (1,2,c) families.
//!
//! Every comparison here is made on exact rationals. Decimal output is a
//! display concern, rendered with round-half-even at a configurable number
//! of digits next to the exact value, never instead of it.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::census::{
    census, for_each_binary_sequence_of_total, is_in_j100, is_in_j101,
    nud_decomposition_report, TupleSpace,
};
use crate::closed_forms::{
    alpha, j_count_100, j_count_101, pr_count_triple, thm1_rho_upper_bound, thm2_rho_lower_bound,
    ud_count_11c, ud_count_12c_binary,
};
use crate::decide::{is_code, is_realizable, reduce_sequence};
use crate::error::{Error, Result};
use crate::words::{enumerate_words, AlphabetSize, CodeSequence, LengthDistribution, Word};
use crate::DEFAULT_TUPLE_BUDGET;

/// How a `RhoResult` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoMethod {
    ClosedForm,
    Enumeration,
}

impl RhoMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RhoMethod::ClosedForm => "closed_form",
            RhoMethod::Enumeration => "enumeration",
        }
    }
}

impl fmt::Display for RhoMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The exact proportion of prefix codes among codes with a given length
/// distribution, together with the two counts it is the quotient of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoResult {
    pub n: AlphabetSize,
    pub l: LengthDistribution,
    pub rho: BigRational,
    pub method: RhoMethod,
    pub pr_count: BigUint,
    pub ud_count: BigUint,
}

fn rho_from_counts(
    n: AlphabetSize,
    l: &LengthDistribution,
    pr: BigUint,
    ud: BigUint,
    method: RhoMethod,
) -> Result<RhoResult> {
    if ud.is_zero() {
        return Err(Error::Unrealizable(l.to_string()));
    }
    Ok(RhoResult {
        n,
        l: l.clone(),
        rho: BigRational::new(BigInt::from(pr.clone()), BigInt::from(ud.clone())),
        method,
        pr_count: pr,
        ud_count: ud,
    })
}

/// Families whose code count has a closed form usable by `rho`.
enum CoveredFamily {
    /// Sorted lengths (1, 1, c) over more than two letters.
    OneOneC(u32),
    /// Sorted lengths (1, 2, c) over the binary alphabet.
    OneTwoCBinary(u32),
}

fn covered_family(n: AlphabetSize, l: &LengthDistribution) -> Option<CoveredFamily> {
    if l.m() != 3 {
        return None;
    }
    let sorted = l.sorted();
    let (a, b, c) = (sorted.lengths()[0], sorted.lengths()[1], sorted.lengths()[2]);
    if a == 1 && b == 1 && n.get() > 2 {
        return Some(CoveredFamily::OneOneC(c));
    }
    if n.get() == 2 && a == 1 && b == 2 {
        return Some(CoveredFamily::OneTwoCBinary(c));
    }
    None
}

/// The closed-form route, when one covers the family: (1,1,c) over more than
/// two letters, or a permutation of (1,2,c) over the binary alphabet.
/// `Ok(None)` means no formula applies and the caller must enumerate.
pub fn rho_closed_form(n: AlphabetSize, l: &LengthDistribution) -> Result<Option<RhoResult>> {
    if !is_realizable(n, l) {
        return Err(Error::Unrealizable(l.to_string()));
    }
    let ud = match covered_family(n, l) {
        Some(CoveredFamily::OneOneC(c)) => ud_count_11c(n, c),
        Some(CoveredFamily::OneTwoCBinary(c)) => ud_count_12c_binary(c),
        None => return Ok(None),
    };
    let pr = pr_count_triple(n, l)?;
    rho_from_counts(n, l, pr, ud, RhoMethod::ClosedForm).map(Some)
}

/// The brute-force route: classify every tuple with the distribution.
pub fn rho_enumerated(
    n: AlphabetSize,
    l: &LengthDistribution,
    budget: u64,
) -> Result<RhoResult> {
    if !is_realizable(n, l) {
        return Err(Error::Unrealizable(l.to_string()));
    }
    let result = census(n, l, budget)?;
    rho_from_counts(n, l, result.pr_count, result.ud_count, RhoMethod::Enumeration)
}

/// The prefix-code proportion, computed by closed form when one covers the
/// family and by exhaustive enumeration otherwise. Fails for unrealizable
/// distributions (the proportion is undefined there, not 0/0) and when the
/// enumeration route would exceed `budget`.
pub fn rho(n: AlphabetSize, l: &LengthDistribution, budget: u64) -> Result<RhoResult> {
    match rho_closed_form(n, l)? {
        Some(result) => Ok(result),
        None => rho_enumerated(n, l, budget),
    }
}

/// Exact rational rendered as "p/q" (always with the denominator, in lowest
/// terms).
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with round-half-even at `digits` fractional digits.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    let (floor, rem) = scaled.numer().div_mod_floor(scaled.denom());
    let rounded = match (BigInt::from(2) * &rem).cmp(scaled.denom()) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    };
    let sign = if rounded.is_negative() { "-" } else { "" };
    let magnitude = rounded.abs();
    let (int_part, frac_part) = magnitude.div_rem(&scale);
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

/// Default number of fractional digits in rendered tables.
pub const DEFAULT_DECIMAL_DIGITS: usize = 12;

/// Outcome of checking one grid point (or one slice of a claim).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointOutcome {
    pub point: String,
    pub detail: String,
    pub pass: bool,
}

/// Per-point outcomes for one named claim over one grid. `pass` holds
/// exactly when every point passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: String,
    pub grid: String,
    pub points: Vec<PointOutcome>,
    pub pass: bool,
}

impl VerificationReport {
    fn new(claim: &str, grid: String, points: Vec<PointOutcome>) -> Self {
        let pass = points.iter().all(|p| p.pass);
        VerificationReport {
            claim: claim.to_string(),
            grid,
            points,
            pass,
        }
    }
}

/// The named verification claims exposed by the verify surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    Theorem1,
    Theorem2,
    Theorem4,
    Prop1,
    Prop2,
    Prop3,
    Prop4,
    Nud,
    Lemma1,
    Reversal,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::Theorem1,
        Claim::Theorem2,
        Claim::Theorem4,
        Claim::Prop1,
        Claim::Prop2,
        Claim::Prop3,
        Claim::Prop4,
        Claim::Nud,
        Claim::Lemma1,
        Claim::Reversal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Theorem1 => "theorem1",
            Claim::Theorem2 => "theorem2",
            Claim::Theorem4 => "theorem4",
            Claim::Prop1 => "prop1",
            Claim::Prop2 => "prop2",
            Claim::Prop3 => "prop3",
            Claim::Prop4 => "prop4",
            Claim::Nud => "nud",
            Claim::Lemma1 => "lemma1",
            Claim::Reversal => "reversal",
        }
    }

    pub fn from_name(name: &str) -> Option<Claim> {
        Claim::ALL.iter().copied().find(|c| c.name() == name)
    }
}

/// Grid and budget knobs for the verification claims. Each claim uses the
/// subset that is meaningful for it.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Smallest alphabet size on ratio/count grids.
    pub n_min: u32,
    /// Largest alphabet size on ratio/count grids.
    pub n_max: u32,
    /// Largest entry of three-element length distributions on grids.
    pub len_max: u32,
    /// Largest third length c for the (1,2,c) and (1,1,c) slice claims.
    pub c_max: u32,
    /// Largest total codeword length for the exhaustive binary families.
    pub total_len_max: u32,
    /// Enumeration budget in tuples.
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_min: 2,
            n_max: 3,
            len_max: 4,
            c_max: 10,
            total_len_max: 8,
            budget: DEFAULT_TUPLE_BUDGET,
        }
    }
}

/// All sorted triples a <= b <= c <= len_max.
pub fn sorted_triples(len_max: u32) -> Vec<LengthDistribution> {
    let mut out = Vec::new();
    for a in 1..=len_max {
        for b in a..=len_max {
            for c in b..=len_max {
                out.push(LengthDistribution::new(vec![a, b, c]).expect("positive lengths"));
            }
        }
    }
    out
}

/// Whether `rho` can evaluate this point: a closed form covers it or its
/// tuple space fits the budget.
pub fn rho_feasible(n: AlphabetSize, l: &LengthDistribution, budget: u64) -> bool {
    covered_family(n, l).is_some() || TupleSpace::new(n, l, budget).is_ok()
}

/// The realizable, evaluable three-element grid points with entries up to
/// `len_max` for alphabets n_min..=n_max.
pub fn three_element_grid(
    n_min: u32,
    n_max: u32,
    len_max: u32,
    budget: u64,
) -> Vec<(AlphabetSize, LengthDistribution)> {
    let mut grid = Vec::new();
    for nv in n_min.max(2)..=n_max {
        let n = AlphabetSize::new(nv).expect("n >= 2");
        for l in sorted_triples(len_max) {
            if is_realizable(n, &l) && rho_feasible(n, &l, budget) {
                grid.push((n, l));
            }
        }
    }
    grid
}

fn grid_label(opts: &VerifyOptions) -> String {
    format!(
        "n in [{}, {}], sorted triples with entries <= {}, realizable, within budget {}",
        opts.n_min.max(2),
        opts.n_max,
        opts.len_max,
        opts.budget
    )
}

/// rho > alpha as a strict exact-rational inequality on the grid.
pub fn verify_theorem4(opts: &VerifyOptions) -> Result<VerificationReport> {
    let grid = three_element_grid(opts.n_min, opts.n_max, opts.len_max, opts.budget);
    let points = grid
        .par_iter()
        .map(|(n, l)| {
            let r = rho(*n, l, opts.budget)?;
            let threshold = alpha(*n);
            Ok(PointOutcome {
                point: format!("n={} L={}", n, l),
                detail: format!(
                    "rho={} alpha={} method={}",
                    ratio_string(&r.rho),
                    ratio_string(&threshold),
                    r.method
                ),
                pass: r.rho > threshold,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("theorem4", grid_label(opts), points))
}

/// rho <= the multiplicity upper bound, for every unordered pair of distinct
/// values of every non-constant grid distribution.
pub fn verify_theorem1(opts: &VerifyOptions) -> Result<VerificationReport> {
    let grid = three_element_grid(opts.n_min, opts.n_max, opts.len_max, opts.budget);
    let points = grid
        .par_iter()
        .filter(|(_, l)| !l.is_constant())
        .map(|(n, l)| {
            let r = rho(*n, l, opts.budget)?;
            let values = l.distinct_values();
            let mut detail = format!("rho={}", ratio_string(&r.rho));
            let mut pass = true;
            for (i, &a) in values.iter().enumerate() {
                for &b in &values[i + 1..] {
                    let bound = thm1_rho_upper_bound(*n, l, a, b)?;
                    detail.push_str(&format!(" bound(a={a},b={b})={}", ratio_string(&bound)));
                    pass &= r.rho <= bound;
                }
            }
            Ok(PointOutcome {
                point: format!("n={} L={}", n, l),
                detail,
                pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("theorem1", grid_label(opts), points))
}

/// The m-only lower bound <= rho on the grid.
pub fn verify_theorem2(opts: &VerifyOptions) -> Result<VerificationReport> {
    let grid = three_element_grid(opts.n_min, opts.n_max, opts.len_max, opts.budget);
    let points = grid
        .par_iter()
        .map(|(n, l)| {
            let r = rho(*n, l, opts.budget)?;
            let bound = thm2_rho_lower_bound(*n, l.m());
            Ok(PointOutcome {
                point: format!("n={} L={}", n, l),
                detail: format!("lower={} rho={}", ratio_string(&bound), ratio_string(&r.rho)),
                pass: bound <= r.rho,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("theorem2", grid_label(opts), points))
}

/// The three-element prefix-code formula equals the census count on every
/// triple within budget, realizable or not.
pub fn verify_prop1(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut grid = Vec::new();
    for nv in opts.n_min.max(2)..=opts.n_max {
        let n = AlphabetSize::new(nv).expect("n >= 2");
        for l in sorted_triples(opts.len_max) {
            if TupleSpace::new(n, &l, opts.budget).is_ok() {
                grid.push((n, l));
            }
        }
    }
    let points = grid
        .par_iter()
        .map(|(n, l)| {
            let formula = pr_count_triple(*n, l)?;
            let sweep = census(*n, l, opts.budget)?.pr_count;
            Ok(PointOutcome {
                point: format!("n={} L={}", n, l),
                detail: format!("formula={formula} census={sweep}"),
                pass: formula == sweep,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let label = format!(
        "n in [{}, {}], all sorted triples with entries <= {} within budget {}",
        opts.n_min.max(2),
        opts.n_max,
        opts.len_max,
        opts.budget
    );
    Ok(VerificationReport::new("prop1", label, points))
}

/// The (1,1,c) code-count formula equals the census count.
pub fn verify_prop2(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut grid = Vec::new();
    for nv in opts.n_min.max(2)..=opts.n_max {
        let n = AlphabetSize::new(nv).expect("n >= 2");
        for c in 1..=opts.c_max {
            let l = LengthDistribution::new(vec![1, 1, c]).expect("positive lengths");
            if TupleSpace::new(n, &l, opts.budget).is_ok() {
                grid.push((n, l, c));
            }
        }
    }
    let points = grid
        .par_iter()
        .map(|(n, l, c)| {
            let formula = ud_count_11c(*n, *c);
            let sweep = census(*n, l, opts.budget)?.ud_count;
            Ok(PointOutcome {
                point: format!("n={} L={}", n, l),
                detail: format!("formula={formula} census={sweep}"),
                pass: formula == sweep,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let label = format!(
        "n in [{}, {}], L=(1,1,c) for c <= {} within budget {}",
        opts.n_min.max(2),
        opts.n_max,
        opts.c_max,
        opts.budget
    );
    Ok(VerificationReport::new("prop2", label, points))
}

/// The words classified ambiguous next to (1, 00) are exactly the
/// "1"/"00"-block words plus the all-zeros word, with Fibonacci cardinality.
pub fn verify_prop3(opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_slice_sets(
        "prop3",
        opts,
        &["1", "00"],
        |w, c| Ok(is_in_j100(w)? || w.digits().all(|d| d == 0) && w.len() == c as usize),
        |c| j_count_100(c).1,
    )
}

/// The words classified ambiguous next to (1, 01) are exactly the words
/// without two consecutive zeros, with Fibonacci cardinality.
pub fn verify_prop4(opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_slice_sets("prop4", opts, &["1", "01"], |w, _| is_in_j101(w), |c| {
        j_count_101(c)
    })
}

fn verify_slice_sets(
    claim: &str,
    opts: &VerifyOptions,
    pair: &[&str; 2],
    predicted: impl Fn(&Word, u32) -> Result<bool> + Sync,
    cardinality: impl Fn(u32) -> BigUint + Sync,
) -> Result<VerificationReport> {
    let n = AlphabetSize::BINARY;
    let first = Word::parse(n, pair[0])?;
    let second = Word::parse(n, pair[1])?;
    let points = (1..=opts.c_max)
        .into_par_iter()
        .map(|c| {
            let mut classified = BTreeSet::new();
            let mut expected = BTreeSet::new();
            for w in enumerate_words(n, c, opts.budget)? {
                let seq = CodeSequence::from_words_unchecked(
                    n,
                    vec![first.clone(), second.clone(), w.clone()],
                );
                if !is_code(&seq) {
                    classified.insert(w.clone());
                }
                if predicted(&w, c)? {
                    expected.insert(w);
                }
            }
            let count = cardinality(c);
            let pass = classified == expected && BigUint::from(classified.len()) == count;
            Ok(PointOutcome {
                point: format!("c={c}"),
                detail: format!(
                    "classified={} predicted={} formula={}",
                    classified.len(),
                    expected.len(),
                    count
                ),
                pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let label = format!("binary ({}, {}, w) slices for c <= {}", pair[0], pair[1], opts.c_max);
    Ok(VerificationReport::new(claim, label, points))
}

/// The slice decomposition identity and symmetry classes of the non-code
/// count, per c.
pub fn verify_nud(opts: &VerifyOptions) -> Result<VerificationReport> {
    let points = (1..=opts.c_max)
        .into_par_iter()
        .map(|c| {
            let report = nud_decomposition_report(c, opts.budget)?;
            Ok(PointOutcome {
                point: format!("c={c}"),
                detail: format!(
                    "nud={} k100={} k101={} identity={} symmetry={}",
                    report.nud,
                    report.k[1][0][0],
                    report.k[1][0][1],
                    report.identity_holds,
                    report.symmetry_holds
                ),
                pass: report.identity_holds && report.symmetry_holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let label = format!("binary (1,2,c) slice decomposition for c <= {}", opts.c_max);
    Ok(VerificationReport::new("nud", label, points))
}

/// Whenever an entry is a proper prefix of another and the reduced sequence
/// is a code, the original is a code. Exhaustive over binary sequences by
/// total codeword length.
pub fn verify_lemma1(opts: &VerifyOptions) -> Result<VerificationReport> {
    exhaustive_family_claim("lemma1", opts, |seq| {
        let original_is_code = is_code(seq);
        for mu in 0..seq.len() {
            for kappa in 0..seq.len() {
                if mu == kappa {
                    continue;
                }
                if let Ok(reduced) = reduce_sequence(seq, mu, kappa) {
                    if is_code(&reduced) && !original_is_code {
                        return Err(format!(
                            "reduction of {seq} at mu={mu} kappa={kappa} is a code but {seq} is not"
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

/// A sequence and its reversal are codes together. Exhaustive over binary
/// sequences by total codeword length.
pub fn verify_reversal(opts: &VerifyOptions) -> Result<VerificationReport> {
    exhaustive_family_claim("reversal", opts, |seq| {
        if is_code(seq) != is_code(&seq.reversed()) {
            return Err(format!("{seq} and its reversal disagree"));
        }
        Ok(())
    })
}

fn exhaustive_family_claim(
    claim: &str,
    opts: &VerifyOptions,
    check: impl Fn(&CodeSequence) -> std::result::Result<(), String> + Sync,
) -> Result<VerificationReport> {
    let mut points = Vec::new();
    for total in 1..=opts.total_len_max {
        let outcome = for_each_binary_sequence_of_total(total, &check);
        points.push(match outcome {
            Ok(count) => PointOutcome {
                point: format!("total={total}"),
                detail: format!("{count} sequences checked"),
                pass: true,
            },
            Err(message) => PointOutcome {
                point: format!("total={total}"),
                detail: message,
                pass: false,
            },
        });
    }
    let label = format!(
        "all binary sequences with total codeword length <= {}",
        opts.total_len_max
    );
    Ok(VerificationReport::new(claim, label, points))
}

/// Run one named claim with the given options.
pub fn run_claim(claim: Claim, opts: &VerifyOptions) -> Result<VerificationReport> {
    match claim {
        Claim::Theorem1 => verify_theorem1(opts),
        Claim::Theorem2 => verify_theorem2(opts),
        Claim::Theorem4 => verify_theorem4(opts),
        Claim::Prop1 => verify_prop1(opts),
        Claim::Prop2 => verify_prop2(opts),
        Claim::Prop3 => verify_prop3(opts),
        Claim::Prop4 => verify_prop4(opts),
        Claim::Nud => verify_nud(opts),
        Claim::Lemma1 => verify_lemma1(opts),
        Claim::Reversal => verify_reversal(opts),
    }
}

/// The two families whose proportions approach the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceFamily {
    /// L = (1,1,c), alphabet larger than binary.
    OneOneC,
    /// L = (1,2,c), binary alphabet, c >= 2.
    OneTwoCBinary,
}

impl ConvergenceFamily {
    pub fn name(self) -> &'static str {
        match self {
            ConvergenceFamily::OneOneC => "11c",
            ConvergenceFamily::OneTwoCBinary => "12c",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "11c" => Some(ConvergenceFamily::OneOneC),
            "12c" => Some(ConvergenceFamily::OneTwoCBinary),
            _ => None,
        }
    }

    fn c_min(self) -> u32 {
        match self {
            ConvergenceFamily::OneOneC => 1,
            ConvergenceFamily::OneTwoCBinary => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub c: u32,
    pub rho: BigRational,
    /// |rho - limit|, exact.
    pub delta: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceTable {
    pub family: ConvergenceFamily,
    pub n: AlphabetSize,
    pub limit: BigRational,
    pub rows: Vec<ConvergenceRow>,
}

/// Closed-form proportions for one family, from the family's smallest c up
/// to `c_max`, with the exact distance to the limiting value alpha(n).
/// The distance is checked to be strictly decreasing over the emitted range.
pub fn convergence_table(
    family: ConvergenceFamily,
    n: AlphabetSize,
    c_max: u32,
) -> Result<ConvergenceTable> {
    match family {
        ConvergenceFamily::OneOneC if n.get() <= 2 => {
            return Err(Error::InvalidFamily(
                "the (1,1,c) family needs an alphabet larger than 2".to_string(),
            ));
        }
        ConvergenceFamily::OneTwoCBinary if n.get() != 2 => {
            return Err(Error::InvalidFamily(
                "the (1,2,c) family is only covered for the binary alphabet".to_string(),
            ));
        }
        _ => {}
    }
    if c_max < family.c_min() {
        return Err(Error::InvalidFamily(format!(
            "c_max must be at least {}",
            family.c_min()
        )));
    }
    let limit = alpha(n);
    let rows: Vec<ConvergenceRow> = (family.c_min()..=c_max)
        .map(|c| {
            let l = match family {
                ConvergenceFamily::OneOneC => LengthDistribution::new(vec![1, 1, c]),
                ConvergenceFamily::OneTwoCBinary => LengthDistribution::new(vec![1, 2, c]),
            }
            .expect("positive lengths");
            let result = rho_closed_form(n, &l)?.expect("family is covered by a closed form");
            let delta = (&result.rho - &limit).abs();
            Ok(ConvergenceRow {
                c,
                rho: result.rho,
                delta,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for pair in rows.windows(2) {
        assert!(
            pair[1].delta < pair[0].delta,
            "distance to the limit must decrease: c={} -> c={}",
            pair[0].c,
            pair[1].c
        );
    }
    Ok(ConvergenceTable {
        family,
        n,
        limit,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u32) -> AlphabetSize {
        AlphabetSize::new(v).unwrap()
    }

    fn lengths(v: &[u32]) -> LengthDistribution {
        LengthDistribution::new(v.to_vec()).unwrap()
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    const BUDGET: u64 = 1 << 22;

    #[test]
    fn rho_closed_form_families() {
        let r = rho(n(3), &lengths(&[1, 1, 2]), BUDGET).unwrap();
        assert_eq!(r.rho, ratio(3, 5));
        assert_eq!(r.method, RhoMethod::ClosedForm);
        assert_eq!(r.pr_count, BigUint::from(18u32));
        assert_eq!(r.ud_count, BigUint::from(30u32));

        let r = rho(n(2), &lengths(&[1, 2, 2]), BUDGET).unwrap();
        assert_eq!(r.rho, ratio(1, 2));
        assert_eq!(r.method, RhoMethod::ClosedForm);

        let r = rho(n(2), &lengths(&[1, 2, 4]), BUDGET).unwrap();
        assert_eq!(r.rho, ratio(8, 27));
    }

    #[test]
    fn rho_enumeration_fallback() {
        let r = rho(n(2), &lengths(&[2, 2, 2]), BUDGET).unwrap();
        assert_eq!(r.rho, ratio(1, 1));
        assert_eq!(r.method, RhoMethod::Enumeration);

        let r = rho(n(2), &lengths(&[1, 2]), BUDGET).unwrap();
        assert_eq!(r.rho, ratio(2, 3));
        assert_eq!(r.pr_count, BigUint::from(4u32));
        assert_eq!(r.ud_count, BigUint::from(6u32));
    }

    #[test]
    fn rho_rejects_unrealizable_distributions() {
        assert!(matches!(
            rho(n(2), &lengths(&[1, 1, 3]), BUDGET),
            Err(Error::Unrealizable(_))
        ));
    }

    #[test]
    fn rho_orders_words_by_permuted_lengths_identically() {
        let a = rho(n(2), &lengths(&[2, 1, 2]), BUDGET).unwrap();
        let b = rho(n(2), &lengths(&[1, 2, 2]), BUDGET).unwrap();
        assert_eq!(a.rho, b.rho);
        assert_eq!(a.method, RhoMethod::ClosedForm);
    }

    #[test]
    fn theorem4_spot_values() {
        // rho for (1,2,5) over the binary alphabet: 32/122 = 16/61 > 1/6.
        let r = rho(n(2), &lengths(&[1, 2, 5]), BUDGET).unwrap();
        assert_eq!(r.rho, ratio(16, 61));
        assert!(r.rho > alpha(n(2)));
        // rho for (1,1,4) over three letters: 27/65 > 1/3.
        let r = rho(n(3), &lengths(&[1, 1, 4]), BUDGET).unwrap();
        assert_eq!(r.rho, ratio(27, 65));
        assert!(r.rho > alpha(n(3)));
    }

    #[test]
    fn theorem4_small_grid_passes() {
        let opts = VerifyOptions {
            n_max: 3,
            len_max: 3,
            ..VerifyOptions::default()
        };
        let report = verify_theorem4(&opts).unwrap();
        assert!(report.pass, "{:?}", report.points.iter().find(|p| !p.pass));
        assert!(!report.points.is_empty());
    }

    #[test]
    fn bounds_sandwich_spot_values() {
        // With L = (1,2,2) the value 2 occurs twice, so the multiplicity
        // product is 2 and the upper bound tightens to 2/3.
        let r = rho(n(2), &lengths(&[1, 2, 2]), BUDGET).unwrap();
        assert_eq!(thm2_rho_lower_bound(n(2), 3), ratio(1, 128));
        let upper = thm1_rho_upper_bound(n(2), &lengths(&[1, 2, 2]), 1, 2).unwrap();
        assert_eq!(upper, ratio(2, 3));
        assert!(thm2_rho_lower_bound(n(2), 3) <= r.rho && r.rho <= upper);

        let r = rho(n(2), &lengths(&[1, 2, 4]), BUDGET).unwrap();
        let upper = thm1_rho_upper_bound(n(2), &lengths(&[1, 2, 4]), 1, 2).unwrap();
        assert_eq!(upper, ratio(4, 5));
        assert!(r.rho <= upper);

        let r = rho(n(3), &lengths(&[1, 1, 2]), BUDGET).unwrap();
        assert_eq!(thm2_rho_lower_bound(n(3), 3), ratio(4, 81));
        let upper = thm1_rho_upper_bound(n(3), &lengths(&[1, 1, 2]), 1, 2).unwrap();
        assert_eq!(upper, ratio(9, 10));
        assert!(thm2_rho_lower_bound(n(3), 3) <= r.rho && r.rho <= upper);

        // Two-element spot check: the pair infimum (n-1)/n from the m=2
        // theory sits below the exact rho.
        let r = rho(n(2), &lengths(&[1, 2]), BUDGET).unwrap();
        assert!(ratio(1, 2) <= r.rho);
    }

    #[test]
    fn bounds_claims_pass_on_a_small_grid() {
        let opts = VerifyOptions {
            n_max: 3,
            len_max: 3,
            ..VerifyOptions::default()
        };
        assert!(verify_theorem1(&opts).unwrap().pass);
        assert!(verify_theorem2(&opts).unwrap().pass);
    }

    #[test]
    fn formula_claims_pass_on_small_grids() {
        let opts = VerifyOptions {
            n_max: 3,
            len_max: 3,
            c_max: 6,
            total_len_max: 5,
            ..VerifyOptions::default()
        };
        for claim in Claim::ALL {
            let report = run_claim(claim, &opts).unwrap();
            assert!(
                report.pass,
                "{} failed: {:?}",
                claim.name(),
                report.points.iter().find(|p| !p.pass)
            );
        }
    }

    #[test]
    fn claim_names_round_trip() {
        for claim in Claim::ALL {
            assert_eq!(Claim::from_name(claim.name()), Some(claim));
        }
        assert_eq!(Claim::from_name("theorem9"), None);
    }

    #[test]
    fn convergence_one_one_c() {
        let table = convergence_table(ConvergenceFamily::OneOneC, n(3), 10).unwrap();
        assert_eq!(table.rows.len(), 10);
        assert_eq!(table.limit, ratio(1, 3));
        let last = table.rows.last().unwrap();
        assert_eq!(last.c, 10);
        assert!(last.delta < ratio(6, 1000));
    }

    #[test]
    fn convergence_one_two_c() {
        let table = convergence_table(ConvergenceFamily::OneTwoCBinary, n(2), 30).unwrap();
        assert_eq!(table.rows.len(), 29);
        assert_eq!(table.rows[0].c, 2);
        let at = |c: u32| &table.rows[(c - 2) as usize];
        assert!(at(20).delta < ratio(3, 1000));
        assert!(at(30).delta < ratio(3, 10000));
    }

    #[test]
    fn convergence_rejects_wrong_pairings() {
        assert!(matches!(
            convergence_table(ConvergenceFamily::OneOneC, n(2), 10),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(
            convergence_table(ConvergenceFamily::OneTwoCBinary, n(3), 10),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(
            convergence_table(ConvergenceFamily::OneTwoCBinary, n(2), 1),
            Err(Error::InvalidFamily(_))
        ));
    }

    #[test]
    fn decimal_rendering_rounds_half_even() {
        assert_eq!(decimal_string(&ratio(1, 6), 12), "0.166666666667");
        assert_eq!(decimal_string(&ratio(1, 8), 2), "0.12");
        assert_eq!(decimal_string(&ratio(3, 8), 2), "0.38");
        assert_eq!(decimal_string(&ratio(-1, 8), 2), "-0.12");
        assert_eq!(decimal_string(&ratio(5, 2), 0), "2");
        assert_eq!(decimal_string(&ratio(7, 2), 0), "4");
        assert_eq!(decimal_string(&ratio(1, 2), 3), "0.500");
    }

    #[test]
    fn ratio_strings_always_carry_the_denominator() {
        assert_eq!(ratio_string(&ratio(1, 1)), "1/1");
        assert_eq!(ratio_string(&ratio(4, 8)), "1/2");
    }
}
