//! Brute-force counting oracles: exhaustive sweeps over every tuple of words
//! with a given length distribution, classified with the decision procedures,
//! plus the binary (1, 2, c) slice counts and their pattern characterizations.
//!
//! Sweeps are deterministic: the tuple space is ordered row-major over packed
//! word values (first word most significant) and partial counts combine
//! associatively, so partitioning across threads cannot change a result.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::decide::is_code;
use crate::error::{Error, Result};
use crate::words::{enumerate_words, AlphabetSize, CodeSequence, LengthDistribution, Word};
use crate::DEFAULT_TUPLE_BUDGET;

/// The full tuple space X^(a_1) x ... x X^(a_m), addressable by index in
/// row-major lexicographic order.
#[derive(Debug, Clone)]
pub struct TupleSpace {
    n: AlphabetSize,
    lengths: Vec<u32>,
    radices: Vec<u64>,
    total: u64,
}

impl TupleSpace {
    pub fn new(n: AlphabetSize, l: &LengthDistribution, budget: u64) -> Result<Self> {
        let total = crate::words::saturating_power(n.get(), l.total());
        if total > budget as u128 {
            return Err(Error::SizeLimit {
                required: total,
                budget,
            });
        }
        let radices = l
            .lengths()
            .iter()
            .map(|&a| (n.get() as u64).pow(a))
            .collect();
        Ok(TupleSpace {
            n,
            lengths: l.lengths().to_vec(),
            radices,
            total: total as u64,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// The tuple at position `index` in lexicographic order.
    pub fn decode(&self, index: u64) -> CodeSequence {
        debug_assert!(index < self.total);
        let mut rem = index;
        let mut words = vec![Word::empty(self.n); self.lengths.len()];
        for i in (0..self.lengths.len()).rev() {
            let radix = self.radices[i];
            words[i] = Word::from_packed(self.n, self.lengths[i], rem % radix);
            rem /= radix;
        }
        CodeSequence::from_words_unchecked(self.n, words)
    }
}

/// Exhaustive classification of one tuple space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub n: AlphabetSize,
    pub l: LengthDistribution,
    pub total_tuples: BigUint,
    pub ud_count: BigUint,
    pub pr_count: BigUint,
    pub elapsed: Duration,
}

/// Sweep every tuple with the given length distribution, counting the codes
/// (`ud_count`) and the prefix codes (`pr_count`). Fails without counting
/// anything when the tuple space exceeds `budget`; there is no truncated
/// mode.
pub fn census(n: AlphabetSize, l: &LengthDistribution, budget: u64) -> Result<CensusResult> {
    let space = TupleSpace::new(n, l, budget)?;
    let start = Instant::now();
    let (ud, pr) = (0..space.total())
        .into_par_iter()
        .map(|t| {
            let seq = space.decode(t);
            let ud = is_code(&seq) as u64;
            let pr = seq.is_prefix_code() as u64;
            (ud, pr)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let elapsed = start.elapsed();
    debug_assert!(pr <= ud && ud <= space.total());
    Ok(CensusResult {
        n,
        l: l.clone(),
        total_tuples: BigUint::from(space.total()),
        ud_count: BigUint::from(ud),
        pr_count: BigUint::from(pr),
        elapsed,
    })
}

fn binary_letter(d: u32) -> Result<Word> {
    if d > 1 {
        return Err(Error::DigitOutOfRange { digit: d, n: 2 });
    }
    Word::single(AlphabetSize::BINARY, d)
}

/// Number of length-c binary words w for which (x, yz, w) is not a code.
pub fn census_k(c: u32, x: u32, y: u32, z: u32, budget: u64) -> Result<BigUint> {
    let first = binary_letter(x)?;
    let second = binary_letter(y)?.concat(&binary_letter(z)?)?;
    let count = enumerate_words(AlphabetSize::BINARY, c, budget)?
        .par_bridge()
        .filter(|w| {
            let seq = CodeSequence::from_words_unchecked(
                AlphabetSize::BINARY,
                vec![first.clone(), second.clone(), w.clone()],
            );
            !is_code(&seq)
        })
        .count();
    Ok(BigUint::from(count))
}

fn require_binary(w: &Word) -> Result<()> {
    if w.alphabet().get() != 2 {
        return Err(Error::AlphabetSizeRequired {
            required: 2,
            got: w.alphabet().get(),
        });
    }
    Ok(())
}

/// True iff the binary word factors into the blocks "1" and "00", i.e.
/// matches (1 | 00)*. These are exactly the words giving (1, 00, w) a second
/// factorization.
pub fn is_in_j100(w: &Word) -> Result<bool> {
    require_binary(w)?;
    let mut pending_zero = false;
    for d in w.digits() {
        match (d, pending_zero) {
            (0, false) => pending_zero = true,
            (0, true) => pending_zero = false,
            (1, false) => {}
            (1, true) => return Ok(false),
            _ => unreachable!("binary word"),
        }
    }
    Ok(!pending_zero)
}

/// True iff the binary word has no two consecutive zeros. These are exactly
/// the words w for which (1, 01, w) is not a code.
pub fn is_in_j101(w: &Word) -> Result<bool> {
    require_binary(w)?;
    let mut prev_zero = false;
    for d in w.digits() {
        if d == 0 {
            if prev_zero {
                return Ok(false);
            }
            prev_zero = true;
        } else {
            prev_zero = false;
        }
    }
    Ok(true)
}

/// The eight slice counts |K_{x,yz}(c)| together with |NUD(c)|, the number
/// of non-codes among binary (x, yz, w) triples, plus the checks that the
/// slices partition NUD(c) as 2^(c+1) + 2|K_{1,00}| + 4|K_{1,01}| and obey
/// the symmetry classes (reversal and 0/1 exchange).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NudDecomposition {
    pub c: u32,
    /// Indexed `k[x][y][z]`.
    pub k: [[[BigUint; 2]; 2]; 2],
    pub ud: BigUint,
    pub nud: BigUint,
    pub identity_holds: bool,
    pub symmetry_holds: bool,
}

pub fn nud_decomposition_report(c: u32, budget: u64) -> Result<NudDecomposition> {
    let mut k: [[[BigUint; 2]; 2]; 2] = Default::default();
    for x in 0..2u32 {
        for y in 0..2u32 {
            for z in 0..2u32 {
                k[x as usize][y as usize][z as usize] = census_k(c, x, y, z, budget)?;
            }
        }
    }
    let l = LengthDistribution::new(vec![1, 2, c])?;
    let ud = census(AlphabetSize::BINARY, &l, budget)?.ud_count;
    let nud = BigUint::from(2u32).pow(c + 3) - &ud;

    let slice_sum: BigUint = k.iter().flatten().flatten().sum();
    let decomposition = BigUint::from(2u32).pow(c + 1)
        + 2u32 * &k[1][0][0]
        + 4u32 * &k[1][0][1];
    let identity_holds = slice_sum == nud && decomposition == nud;

    let full = BigUint::from(2u32).pow(c);
    let symmetry_holds = k[0][0][0] == full
        && k[1][1][1] == full
        && k[0][1][1] == k[1][0][0]
        && k[0][0][1] == k[0][1][0]
        && k[0][1][0] == k[1][0][1]
        && k[1][0][1] == k[1][1][0];

    Ok(NudDecomposition {
        c,
        k,
        ud,
        nud,
        identity_holds,
        symmetry_holds,
    })
}

/// All ordered compositions of `total` into positive parts, in lexicographic
/// order. Used to spell out "every sequence with total codeword length T".
pub fn compositions(total: u32) -> Vec<Vec<u32>> {
    fn extend(total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if total == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=total {
            prefix.push(part);
            extend(total - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(total, &mut Vec::new(), &mut out);
    out
}

/// Run `check` on every binary code sequence whose total codeword length is
/// exactly `total`, in parallel over each composition's tuple space.
/// Returns how many sequences were visited, or the first reported failure.
pub fn for_each_binary_sequence_of_total<F>(
    total: u32,
    check: F,
) -> std::result::Result<u64, String>
where
    F: Fn(&CodeSequence) -> std::result::Result<(), String> + Sync,
{
    let mut visited = 0u64;
    for lengths in compositions(total) {
        let l = LengthDistribution::new(lengths).expect("parts are positive");
        let space = TupleSpace::new(AlphabetSize::BINARY, &l, DEFAULT_TUPLE_BUDGET)
            .expect("2^total is tiny");
        visited += space.total();
        (0..space.total())
            .into_par_iter()
            .try_for_each(|t| check(&space.decode(t)))?;
    }
    Ok(visited)
}

/// As above, but over every total codeword length up to `max_total`.
pub fn for_each_binary_sequence<F>(max_total: u32, check: F) -> std::result::Result<u64, String>
where
    F: Fn(&CodeSequence) -> std::result::Result<(), String> + Sync,
{
    let mut visited = 0u64;
    for total in 1..=max_total {
        visited += for_each_binary_sequence_of_total(total, &check)?;
    }
    Ok(visited)
}
