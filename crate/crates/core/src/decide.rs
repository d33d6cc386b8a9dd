//! Deciding whether a code sequence is uniquely decodable.
//!
//! The main decision procedure is the dangling-set iteration: starting from
//! the codeword set D_0, each round collects the nonempty leftover suffixes
//! that arise when one factorization attempt overruns another. The sequence
//! is a code iff no round ever produces a word that is itself a codeword.
//! A bounded forward search over partial double-factorizations serves as an
//! independent cross-check oracle and produces explicit witnesses.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::words::{AlphabetSize, CodeSequence, LengthDistribution, Word};

/// Why the dangling-set iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// Some round produced no leftover suffix at all.
    EmptyDanglingSet,
    /// A round reproduced an earlier round's set exactly.
    RepeatedDanglingSet,
    /// A leftover suffix turned out to be a codeword.
    IntersectionWithD0,
    /// Two entries of the sequence are equal words, which already gives one
    /// word two factorizations by index.
    DuplicateCodewords,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::EmptyDanglingSet => "empty_dangling_set",
            Termination::RepeatedDanglingSet => "repeated_dangling_set",
            Termination::IntersectionWithD0 => "intersection_with_d0",
            Termination::DuplicateCodewords => "duplicate_codewords",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Decision result together with the trace of dangling sets D_0, D_1, ...
///
/// `trace[0]` is always the codeword set D_0; the final entry is the set that
/// triggered termination. `is_code` holds exactly when termination is
/// `EmptyDanglingSet` or `RepeatedDanglingSet` (the iteration stops with
/// `IntersectionWithD0` the moment any later set meets D_0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPVerdict {
    pub is_code: bool,
    pub trace: Vec<BTreeSet<Word>>,
    pub termination: Termination,
}

/// A word with two distinct factorizations into codewords, each given as a
/// sequence of 0-based indices into the code sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub word: Word,
    pub factorization_a: Vec<usize>,
    pub factorization_b: Vec<usize>,
}

impl FactorizationWitness {
    /// Check the witness against a sequence: both index paths must spell the
    /// witness word and the paths must differ.
    pub fn is_valid_for(&self, c: &CodeSequence) -> bool {
        if self.factorization_a == self.factorization_b {
            return false;
        }
        for indices in [&self.factorization_a, &self.factorization_b] {
            let mut acc = Word::empty(c.alphabet());
            for &i in indices.iter() {
                match c.words().get(i) {
                    Some(w) => acc = acc.concat(w).expect("same alphabet"),
                    None => return false,
                }
            }
            if acc != self.word {
                return false;
            }
        }
        true
    }
}

fn next_dangling_set(d0: &BTreeSet<Word>, prev: &BTreeSet<Word>) -> BTreeSet<Word> {
    let mut next = BTreeSet::new();
    for v in d0 {
        for d in prev {
            // d·u in D_0 for d in D_{i-1}: u is v minus the prefix d.
            if let Some(u) = v.strip_prefix_unchecked(d) {
                if !u.is_empty() {
                    next.insert(u);
                }
            }
            // v·u in D_{i-1} for v in D_0: u is d minus the prefix v.
            if let Some(u) = d.strip_prefix_unchecked(v) {
                if !u.is_empty() {
                    next.insert(u);
                }
            }
        }
    }
    next
}

fn sp_run(c: &CodeSequence, record_trace: bool) -> SPVerdict {
    let d0: BTreeSet<Word> = c.words().iter().cloned().collect();
    let mut trace = Vec::new();
    if record_trace {
        trace.push(d0.clone());
    }
    if d0.len() < c.len() {
        return SPVerdict {
            is_code: false,
            trace,
            termination: Termination::DuplicateCodewords,
        };
    }
    let mut seen: BTreeSet<BTreeSet<Word>> = BTreeSet::new();
    let mut prev = d0.clone();
    loop {
        let next = next_dangling_set(&d0, &prev);
        if record_trace {
            trace.push(next.clone());
        }
        if !next.is_disjoint(&d0) {
            return SPVerdict {
                is_code: false,
                trace,
                termination: Termination::IntersectionWithD0,
            };
        }
        if next.is_empty() {
            return SPVerdict {
                is_code: true,
                trace,
                termination: Termination::EmptyDanglingSet,
            };
        }
        if !seen.insert(next.clone()) {
            return SPVerdict {
                is_code: true,
                trace,
                termination: Termination::RepeatedDanglingSet,
            };
        }
        prev = next;
    }
}

/// Decide unique decodability by the dangling-set iteration, returning the
/// full trace. Duplicate entries short-circuit to not-a-code before the
/// set-based iteration runs, since the sets would silently collapse them.
///
/// Termination is guaranteed: every set from round 1 on consists of proper
/// suffixes of codewords, a finite universe, so the iteration either empties,
/// meets D_0, or repeats a set.
pub fn sardinas_patterson(c: &CodeSequence) -> SPVerdict {
    sp_run(c, true)
}

/// The verdict alone, skipping trace bookkeeping. Used in enumeration sweeps.
pub fn is_code(c: &CodeSequence) -> bool {
    sp_run(c, false).is_code
}

/// Safety valve for the witness search; the deduplicated state space is tiny,
/// so hitting this means something pathological was passed in.
const SEARCH_EXPANSION_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum SearchEvent {
    // Witness events order before expansions of the same cost, so the
    // shortest ambiguous word is reported deterministically.
    Witness {
        word: Word,
        factorization_a: Vec<usize>,
        factorization_b: Vec<usize>,
    },
    Expand {
        overhang: Word,
        ahead: Vec<usize>,
        behind: Vec<usize>,
    },
}

/// Search for a word of length at most `max_len` with two distinct index
/// factorizations, breadth-first over partial double-factorizations ordered
/// by the length of their longer side. Each frontier item tracks the leading
/// and trailing index paths plus the overhang by which the leader is ahead;
/// frontiers are deduplicated on the overhang, which keeps the search finite.
///
/// Returns the shortest witness within the bound, or `None` when every word
/// of length at most `max_len` factorizes uniquely. This is deliberately a
/// different procedure from the dangling-set decision and serves as its
/// cross-check oracle.
pub fn naive_double_factorization(
    c: &CodeSequence,
    max_len: usize,
) -> Result<Option<FactorizationWitness>> {
    if max_len == 0 {
        return Err(Error::ZeroSearchBound);
    }
    let words = c.words();
    let mut queue: BinaryHeap<Reverse<(usize, SearchEvent)>> = BinaryHeap::new();

    for (i, wi) in words.iter().enumerate() {
        for (j, wj) in words.iter().enumerate() {
            if i >= j {
                continue;
            }
            if wi == wj {
                queue.push(Reverse((
                    wi.len(),
                    SearchEvent::Witness {
                        word: wi.clone(),
                        factorization_a: vec![i],
                        factorization_b: vec![j],
                    },
                )));
            } else {
                // Order the pair so `long` leads; the overhang is nonempty.
                let (short, long, si, li) = if wi.len() < wj.len() {
                    (wi, wj, i, j)
                } else {
                    (wj, wi, j, i)
                };
                if let Some(overhang) = long.strip_prefix_unchecked(short) {
                    queue.push(Reverse((
                        long.len(),
                        SearchEvent::Expand {
                            overhang,
                            ahead: vec![li],
                            behind: vec![si],
                        },
                    )));
                }
            }
        }
    }

    let mut settled: BTreeSet<Word> = BTreeSet::new();
    let mut expansions = 0u64;

    while let Some(Reverse((cost, event))) = queue.pop() {
        if cost > max_len {
            return Ok(None);
        }
        match event {
            SearchEvent::Witness {
                word,
                factorization_a,
                factorization_b,
            } => {
                return Ok(Some(FactorizationWitness {
                    word,
                    factorization_a,
                    factorization_b,
                }));
            }
            SearchEvent::Expand {
                overhang,
                ahead,
                behind,
            } => {
                if !settled.insert(overhang.clone()) {
                    continue;
                }
                expansions += 1;
                if expansions > SEARCH_EXPANSION_CAP {
                    return Err(Error::SearchBudgetExceeded { expansions });
                }
                for (k, wk) in words.iter().enumerate() {
                    if wk == &overhang {
                        // The trailing side catches up exactly: both paths
                        // now spell the same word.
                        let mut b = behind.clone();
                        b.push(k);
                        let word = concat_along(c, &ahead);
                        queue.push(Reverse((
                            cost,
                            SearchEvent::Witness {
                                word,
                                factorization_a: ahead.clone(),
                                factorization_b: b,
                            },
                        )));
                    } else if let Some(t) = wk.strip_prefix_unchecked(&overhang) {
                        // The trailing side overtakes; roles swap.
                        let mut b = behind.clone();
                        b.push(k);
                        queue.push(Reverse((
                            cost + t.len(),
                            SearchEvent::Expand {
                                overhang: t,
                                ahead: b,
                                behind: ahead.clone(),
                            },
                        )));
                    } else if let Some(t) = overhang.strip_prefix_unchecked(wk) {
                        // The trailing side gains ground but stays behind.
                        let mut b = behind.clone();
                        b.push(k);
                        queue.push(Reverse((
                            cost,
                            SearchEvent::Expand {
                                overhang: t,
                                ahead: ahead.clone(),
                                behind: b,
                            },
                        )));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn concat_along(c: &CodeSequence, indices: &[usize]) -> Word {
    let mut acc = Word::empty(c.alphabet());
    for &i in indices {
        acc = acc.concat(&c.words()[i]).expect("same alphabet");
    }
    acc
}

/// Default search bound for cross-checking the dangling-set verdict: total
/// codeword length times (distinct nonempty proper suffixes + 2). This is an
/// empirically adequate configuration default, not a proven bound.
pub fn default_search_bound(c: &CodeSequence) -> usize {
    let mut suffixes: BTreeSet<Word> = BTreeSet::new();
    for w in c.words() {
        for start in 1..w.len() {
            let digits: Vec<u32> = w.digits().skip(start).collect();
            suffixes.insert(Word::from_digits(c.alphabet(), &digits).expect("valid digits"));
        }
    }
    c.total_len() * (suffixes.len() + 2)
}

/// Replace entry `mu` by what remains of it after stripping entry `kappa`,
/// which must be a proper prefix of it. Indices are 0-based.
pub fn reduce_sequence(c: &CodeSequence, mu: usize, kappa: usize) -> Result<CodeSequence> {
    let len = c.len();
    for index in [mu, kappa] {
        if index >= len {
            return Err(Error::IndexOutOfBounds { index, len });
        }
    }
    if mu == kappa {
        return Err(Error::NotProperPrefix { mu, kappa });
    }
    let suffix = c.words()[mu]
        .strip_prefix_unchecked(&c.words()[kappa])
        .filter(|s| !s.is_empty())
        .ok_or(Error::NotProperPrefix { mu, kappa })?;
    let mut words = c.words().to_vec();
    words[mu] = suffix;
    Ok(CodeSequence::from_words_unchecked(c.alphabet(), words))
}

/// The Kraft sum of a length distribution over an n-letter alphabet, as an
/// exact rational: sum of n^(-a_i).
pub fn kraft_sum(n: AlphabetSize, l: &LengthDistribution) -> BigRational {
    let base = BigInt::from(n.get());
    let mut sum = BigRational::zero();
    for &a in l.lengths() {
        sum += BigRational::new(BigInt::one(), base.pow(a));
    }
    sum
}

/// True iff the Kraft sum is at most 1; equivalently (McMillan) iff some
/// code, and some prefix code, with this length distribution exists.
pub fn is_realizable(n: AlphabetSize, l: &LengthDistribution) -> bool {
    kraft_sum(n, l) <= BigRational::one()
}
