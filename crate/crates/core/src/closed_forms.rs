//! Exact closed-form counts, bounds and special sequences: the two-element
//! code count, the three-element prefix-code count, the (1,1,c) and binary
//! (1,2,c) code counts, Fibonacci numbers, the ratio threshold alpha, and
//! the bound quantities used to sandwich the prefix-code proportion.
//!
//! Everything here is exact: counts are arbitrary-precision naturals and
//! ratios are rationals in lowest terms. No floating point anywhere.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::decide::is_realizable;
use crate::error::{Error, Result};
use crate::words::{AlphabetSize, LengthDistribution};

/// F_0 = 0, F_1 = 1, F_k = F_{k-1} + F_{k-2}, by exact integer recurrence.
pub fn fib(k: u32) -> BigUint {
    let mut prev = BigUint::ZERO;
    let mut curr = BigUint::one();
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &prev + &curr;
        prev = curr;
        curr = next;
    }
    curr
}

fn factorial(k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=k {
        acc *= BigUint::from(i);
    }
    acc
}

fn npow(n: AlphabetSize, exp: u32) -> BigInt {
    BigInt::from(n.get()).pow(exp)
}

/// The sharp lower-bound threshold for three-element distributions:
/// 1/6 for the binary alphabet, (n-2)/n otherwise.
pub fn alpha(n: AlphabetSize) -> BigRational {
    if n.get() == 2 {
        BigRational::new(BigInt::one(), BigInt::from(6))
    } else {
        BigRational::new(BigInt::from(n.get() - 2), BigInt::from(n.get()))
    }
}

/// Number of two-element codes with lengths (a, b): n^(a+b) - n^gcd(a,b).
pub fn ud_count_pair(n: AlphabetSize, a: u32, b: u32) -> BigUint {
    assert!(a >= 1 && b >= 1, "codeword lengths must be positive");
    let value = npow(n, a + b) - npow(n, a.gcd(&b));
    value.to_biguint().expect("count is non-negative")
}

/// Number of three-element prefix codes with the given length distribution:
/// with the lengths sorted to a <= b <= c, this is
/// n^c (n^(a+b) - 2n^b - n^a + n^(b-a) + 1), which equals the product form
/// n^a (n^b - n^(b-a)) (n^c - n^(c-a) - n^(c-b)). Both forms are computed
/// and checked against each other on every call.
///
/// The count is meaningful (and 0) even when no such prefix code exists;
/// realizability is not enforced here.
pub fn pr_count_triple(n: AlphabetSize, l: &LengthDistribution) -> Result<BigUint> {
    if l.m() != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            got: l.m(),
        });
    }
    let sorted = l.sorted();
    let (a, b, c) = (sorted.lengths()[0], sorted.lengths()[1], sorted.lengths()[2]);
    let expanded: BigInt = npow(n, c)
        * (npow(n, a + b) - BigInt::from(2) * npow(n, b) - npow(n, a) + npow(n, b - a)
            + BigInt::one());
    let product = npow(n, a)
        * (npow(n, b) - npow(n, b - a))
        * (npow(n, c) - npow(n, c - a) - npow(n, c - b));
    assert_eq!(expanded, product, "the two prefix-count forms must agree");
    Ok(expanded.to_biguint().expect("count is non-negative"))
}

/// Number of codes with length distribution (1, 1, c): n(n-1)(n^c - 2^c).
pub fn ud_count_11c(n: AlphabetSize, c: u32) -> BigUint {
    assert!(c >= 1, "codeword lengths must be positive");
    let value = BigInt::from(n.get())
        * BigInt::from(n.get() - 1)
        * (npow(n, c) - BigInt::from(2).pow(c));
    value.to_biguint().expect("count is non-negative")
}

/// Number of binary codes with length distribution (1, 2, c):
/// 3·2^(c+1) - 2·F_(c+4) - 2·(c mod 2). Proven only for the binary
/// alphabet; no generalization is exposed.
pub fn ud_count_12c_binary(c: u32) -> BigUint {
    assert!(c >= 1, "codeword lengths must be positive");
    let value = BigInt::from(3) * BigInt::from(2).pow(c + 1)
        - BigInt::from(2) * BigInt::from(fib(c + 4))
        - BigInt::from(2) * BigInt::from(c % 2);
    value.to_biguint().expect("count is non-negative")
}

/// Cardinalities of the two sets behind the (1, 00, w) classification:
/// returns (|J(c)|, |J(c) ∪ {0^c}|) = (F_(c+1), F_(c+1) + (c mod 2)),
/// where J(c) holds the length-c binary words that factor into the blocks
/// "1" and "00". The second component counts all w making (1, 00, w)
/// ambiguous.
pub fn j_count_100(c: u32) -> (BigUint, BigUint) {
    assert!(c >= 1, "codeword lengths must be positive");
    let j = fib(c + 1);
    let k = &j + BigUint::from(c % 2);
    (j, k)
}

/// Number of length-c binary words without two consecutive zeros, which are
/// exactly the w making (1, 01, w) ambiguous: F_(c+2).
pub fn j_count_101(c: u32) -> BigUint {
    assert!(c >= 1, "codeword lengths must be positive");
    fib(c + 2)
}

/// Upper bound on the prefix-code proportion for a non-constant realizable
/// distribution, from two distinct values a and b occurring in it:
/// 1 / (1 + r_a r_b / (n^(a+b) - n^max(a,b))), where r_a and r_b are the
/// multiplicities of a and b.
pub fn thm1_rho_upper_bound(
    n: AlphabetSize,
    l: &LengthDistribution,
    a: u32,
    b: u32,
) -> Result<BigRational> {
    if a == b {
        return Err(Error::EqualValues(a));
    }
    for value in [a, b] {
        if l.multiplicity(value) == 0 {
            return Err(Error::ValueNotInDistribution(value));
        }
    }
    if l.is_constant() {
        return Err(Error::ConstantDistribution);
    }
    if !is_realizable(n, l) {
        return Err(Error::Unrealizable(l.to_string()));
    }
    let r_a = BigInt::from(l.multiplicity(a));
    let r_b = BigInt::from(l.multiplicity(b));
    let gap = npow(n, a + b) - npow(n, a.max(b));
    Ok(BigRational::new(gap.clone(), gap + r_a * r_b))
}

/// Lower bound on the prefix-code proportion depending only on the alphabet
/// size and the number m of codewords:
/// q_{n,m} ((n - (m mod (n-1))) / n^(floor(m/(n-1)) + 1))^(m-1),
/// with q_{n,m} = 1 when n >= m and (m-1)!/(m-1)^(m-1) otherwise.
pub fn thm2_rho_lower_bound(n: AlphabetSize, m: usize) -> BigRational {
    assert!(m >= 1, "a code has at least one word");
    let m = m as u32;
    let q = if n.get() >= m {
        BigRational::one()
    } else {
        BigRational::new(
            BigInt::from(factorial(m - 1)),
            BigInt::from(m - 1).pow(m - 1),
        )
    };
    let remainder = m % (n.get() - 1);
    let base_num = BigInt::from(n.get() - remainder);
    let base_den = npow(n, m / (n.get() - 1) + 1);
    q * BigRational::new(base_num.pow(m - 1), base_den.pow(m - 1))
}

/// The bound quantity (n^(a+b) - 2n^b - n^a + n^(b-a) + 1)/(n^(a+b) - n)
/// for b >= a >= 1. Strictly increasing in b for fixed n and a.
pub fn q_value(n: AlphabetSize, a: u32, b: u32) -> BigRational {
    assert!(a >= 1 && b >= a, "requires b >= a >= 1");
    let numer = npow(n, a + b) - 2 * npow(n, b) - npow(n, a) + npow(n, b - a) + BigInt::one();
    let denom = npow(n, a + b) - BigInt::from(n.get());
    BigRational::new(numer, denom)
}

/// Exact prefix-code proportion for the (1, 1, c) family over an alphabet
/// with more than 2 letters: (n-2) n^(c-1) / (n^c - 2^c). For n = 2 the
/// family is unrealizable, so the value is undefined.
pub fn rho_11c_closed(n: AlphabetSize, c: u32) -> Result<BigRational> {
    if n.get() == 2 {
        return Err(Error::AlphabetTooSmallForFamily);
    }
    assert!(c >= 1, "codeword lengths must be positive");
    let numer = BigInt::from(n.get() - 2) * npow(n, c - 1);
    let denom = npow(n, c) - BigInt::from(2).pow(c);
    Ok(BigRational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u32) -> AlphabetSize {
        AlphabetSize::new(v).unwrap()
    }

    fn nat(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn lengths(v: &[u32]) -> LengthDistribution {
        LengthDistribution::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fib_values() {
        assert_eq!(fib(0), nat(0));
        assert_eq!(fib(1), nat(1));
        assert_eq!(fib(7), nat(13));
        assert_eq!(fib(24), nat(46368));
        assert_eq!(fib(34), nat(5702887));
    }

    #[test]
    fn fib_doubling_identity() {
        for c in 0..=64u32 {
            assert_eq!(
                nat(2) * fib(c + 1) + nat(4) * fib(c + 2),
                nat(2) * fib(c + 4),
                "c={c}"
            );
        }
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(n(2)), ratio(1, 6));
        assert_eq!(alpha(n(3)), ratio(1, 3));
        assert_eq!(alpha(n(4)), ratio(1, 2));
    }

    #[test]
    fn pair_counts() {
        assert_eq!(ud_count_pair(n(2), 1, 2), nat(6));
        assert_eq!(ud_count_pair(n(2), 2, 2), nat(12));
        assert_eq!(ud_count_pair(n(3), 2, 4), nat(720));
        assert_eq!(ud_count_pair(n(2), 2, 3), nat(30));
    }

    #[test]
    fn prefix_triple_counts() {
        for c in 2..=8u32 {
            assert_eq!(
                pr_count_triple(n(2), &lengths(&[1, 2, c])).unwrap(),
                BigUint::from(2u32).pow(c)
            );
        }
        assert_eq!(pr_count_triple(n(3), &lengths(&[1, 1, 2])).unwrap(), nat(18));
        assert_eq!(pr_count_triple(n(2), &lengths(&[2, 2, 2])).unwrap(), nat(24));
        // Empty families count zero.
        assert_eq!(pr_count_triple(n(2), &lengths(&[1, 1, 1])).unwrap(), nat(0));
        assert_eq!(pr_count_triple(n(2), &lengths(&[1, 1, 4])).unwrap(), nat(0));
        assert_eq!(
            pr_count_triple(n(2), &lengths(&[1, 2])),
            Err(Error::WrongArity { expected: 3, got: 2 })
        );
    }

    #[test]
    fn prefix_triple_is_permutation_invariant() {
        let perms: [[u32; 3]; 6] = [
            [1, 2, 4],
            [1, 4, 2],
            [2, 1, 4],
            [2, 4, 1],
            [4, 1, 2],
            [4, 2, 1],
        ];
        let reference = pr_count_triple(n(3), &lengths(&perms[0])).unwrap();
        for p in perms {
            assert_eq!(pr_count_triple(n(3), &lengths(&p)).unwrap(), reference);
        }
    }

    #[test]
    fn ud_11c_counts() {
        assert_eq!(ud_count_11c(n(3), 2), nat(30));
        assert_eq!(ud_count_11c(n(4), 3), nat(672));
        for c in 1..=16 {
            assert_eq!(ud_count_11c(n(2), c), nat(0));
        }
    }

    #[test]
    fn ud_12c_binary_counts() {
        assert_eq!(ud_count_12c_binary(1), nat(0));
        assert_eq!(ud_count_12c_binary(2), nat(8));
        assert_eq!(ud_count_12c_binary(3), nat(20));
    }

    #[test]
    fn j_counts() {
        assert_eq!(j_count_100(1), (nat(1), nat(2)));
        assert_eq!(j_count_100(2), (nat(2), nat(2)));
        assert_eq!(j_count_100(5), (nat(8), nat(9)));
        assert_eq!(j_count_101(1), nat(2));
        assert_eq!(j_count_101(2), nat(3));
        assert_eq!(j_count_101(5), nat(13));
    }

    #[test]
    fn j_counts_satisfy_the_fibonacci_recurrence() {
        for c in 3..=32u32 {
            let x = |c: u32| j_count_100(c).0;
            assert_eq!(x(c), x(c - 1) + x(c - 2));
            assert_eq!(j_count_101(c), j_count_101(c - 1) + j_count_101(c - 2));
        }
        assert_eq!(j_count_100(1).0, nat(1));
        assert_eq!(j_count_100(2).0, nat(2));
        assert_eq!(j_count_101(1), nat(2));
        assert_eq!(j_count_101(2), nat(3));
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(
            thm1_rho_upper_bound(n(3), &lengths(&[1, 1, 2]), 1, 2).unwrap(),
            ratio(9, 10)
        );
        for c in 3..=6 {
            assert_eq!(
                thm1_rho_upper_bound(n(2), &lengths(&[1, 2, c]), 1, 2).unwrap(),
                ratio(4, 5)
            );
        }
        assert_eq!(
            thm1_rho_upper_bound(n(2), &lengths(&[1, 2]), 1, 2).unwrap(),
            ratio(4, 5)
        );
    }

    #[test]
    fn upper_bound_preconditions() {
        assert_eq!(
            thm1_rho_upper_bound(n(2), &lengths(&[1, 2]), 1, 1),
            Err(Error::EqualValues(1))
        );
        assert_eq!(
            thm1_rho_upper_bound(n(2), &lengths(&[1, 2]), 1, 3),
            Err(Error::ValueNotInDistribution(3))
        );
        assert!(matches!(
            thm1_rho_upper_bound(n(2), &lengths(&[1, 1, 2]), 1, 2),
            Err(Error::Unrealizable(_))
        ));
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(thm2_rho_lower_bound(n(2), 3), ratio(1, 128));
        assert_eq!(thm2_rho_lower_bound(n(3), 3), ratio(4, 81));
        assert_eq!(thm2_rho_lower_bound(n(4), 2), ratio(1, 2));
        assert_eq!(thm2_rho_lower_bound(n(2), 1), ratio(1, 1));
    }

    #[test]
    fn q_values() {
        assert_eq!(q_value(n(2), 1, 2), ratio(1, 6));
        assert_eq!(q_value(n(3), 1, 1), ratio(1, 3));
        // Q(1,2) = 1 - (2n+1)/(n^2+n).
        for nn in 2..=6u32 {
            let expected =
                BigRational::one() - ratio((2 * nn + 1) as i64, (nn * nn + nn) as i64);
            assert_eq!(q_value(n(nn), 1, 2), expected);
        }
    }

    #[test]
    fn q_value_increases_with_b() {
        for nn in 2..=5u32 {
            for a in 1..=4u32 {
                let mut prev = q_value(n(nn), a, a);
                for b in a + 1..=a + 8 {
                    let next = q_value(n(nn), a, b);
                    assert!(next > prev, "n={nn} a={a} b={b}");
                    prev = next;
                }
            }
        }
    }

    #[test]
    fn rho_11c_values() {
        assert_eq!(rho_11c_closed(n(3), 1).unwrap(), ratio(1, 1));
        assert_eq!(rho_11c_closed(n(3), 2).unwrap(), ratio(3, 5));
        assert_eq!(rho_11c_closed(n(4), 2).unwrap(), ratio(2, 3));
        assert_eq!(rho_11c_closed(n(2), 3), Err(Error::AlphabetTooSmallForFamily));
    }

    #[test]
    fn rho_11c_matches_the_count_quotient() {
        for nn in 3..=5u32 {
            for c in 1..=12u32 {
                let pr = pr_count_triple(n(nn), &lengths(&[1, 1, c])).unwrap();
                let ud = ud_count_11c(n(nn), c);
                let expected = BigRational::new(BigInt::from(pr), BigInt::from(ud));
                assert_eq!(rho_11c_closed(n(nn), c).unwrap(), expected);
            }
        }
    }
}
