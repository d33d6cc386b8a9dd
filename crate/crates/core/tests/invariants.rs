//! Cross-module invariants that tie the decision procedure, the closed
//! forms and the enumeration oracles together on larger families than the
//! per-module unit tests cover.

use num_traits::Zero;

use udcodes::analysis::{self, rho_closed_form, rho_enumerated};
use udcodes::census::census;
use udcodes::decide::is_realizable;
use udcodes::{AlphabetSize, LengthDistribution, DEFAULT_TUPLE_BUDGET};

fn n(v: u32) -> AlphabetSize {
    AlphabetSize::new(v).unwrap()
}

fn lengths(v: &[u32]) -> LengthDistribution {
    LengthDistribution::new(v.to_vec()).unwrap()
}

/// Realizability by the Kraft sum is existence by exhaustive search: for
/// every small triple, the census finds a code exactly when the sum allows
/// one.
#[test]
fn kraft_realizability_matches_census_nonemptiness() {
    for nv in 2..=3u32 {
        for a in 1..=3u32 {
            for b in 1..=3u32 {
                for c in 1..=3u32 {
                    let l = lengths(&[a, b, c]);
                    let sweep = census(n(nv), &l, DEFAULT_TUPLE_BUDGET).unwrap();
                    assert_eq!(
                        is_realizable(n(nv), &l),
                        !sweep.ud_count.is_zero(),
                        "n={nv} L={l}"
                    );
                    // Prefix codes exist exactly when codes do.
                    assert_eq!(
                        sweep.ud_count.is_zero(),
                        sweep.pr_count.is_zero(),
                        "n={nv} L={l}"
                    );
                }
            }
        }
    }
}

/// Wherever a closed form covers a family, it must agree with the sweep on
/// the ratio and on both counts.
#[test]
fn closed_form_and_enumeration_paths_agree() {
    for nv in [3u32, 4] {
        for c in 1..=6u32 {
            let l = lengths(&[1, 1, c]);
            let closed = rho_closed_form(n(nv), &l).unwrap().expect("covered");
            let swept = rho_enumerated(n(nv), &l, DEFAULT_TUPLE_BUDGET).unwrap();
            assert_eq!(closed.rho, swept.rho, "n={nv} L={l}");
            assert_eq!(closed.pr_count, swept.pr_count, "n={nv} L={l}");
            assert_eq!(closed.ud_count, swept.ud_count, "n={nv} L={l}");
        }
    }
    for c in 2..=8u32 {
        let l = lengths(&[1, 2, c]);
        let closed = rho_closed_form(n(2), &l).unwrap().expect("covered");
        let swept = rho_enumerated(n(2), &l, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(closed.rho, swept.rho, "L={l}");
        assert_eq!(closed.pr_count, swept.pr_count, "L={l}");
        assert_eq!(closed.ud_count, swept.ud_count, "L={l}");
    }
}

/// On the ratio grid the smallest proportion shows up in the family that
/// approaches the threshold: (1,2,c) for the binary alphabet and (1,1,c)
/// beyond it.
#[test]
fn grid_minimum_is_attained_in_the_limit_family() {
    for nv in 2..=4u32 {
        let grid = analysis::three_element_grid(nv, nv, 5, DEFAULT_TUPLE_BUDGET);
        let rhos: Vec<(LengthDistribution, _)> = grid
            .into_iter()
            .map(|(alph, l)| {
                let r = analysis::rho(alph, &l, DEFAULT_TUPLE_BUDGET).unwrap();
                (l, r.rho)
            })
            .collect();
        let minimum = rhos.iter().map(|(_, r)| r.clone()).min().unwrap();
        let family = if nv == 2 {
            lengths(&[1, 2, 5])
        } else {
            lengths(&[1, 1, 5])
        };
        let family_rho = rhos
            .iter()
            .find(|(l, _)| *l == family)
            .map(|(_, r)| r.clone())
            .expect("family point is on the grid");
        assert_eq!(family_rho, minimum, "n={nv}");
    }
}
