//! Exact combinatorial helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient, zero when `b < 0` or `a < b`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b || a < 0 {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Falling factorial `x(x−1)…(x−n+1)`, with `(x)_0 = 1`. Vanishes for
/// integer `0 ≤ x < n`.
pub fn falling_factorial(x: i64, n: u32) -> BigInt {
    (0..n as i64).fold(BigInt::one(), |acc, i| acc * (x - i))
}

/// Lexicographic enumeration of the distinct permutations of a multiset.
///
/// Starts from the sorted arrangement and steps with the classic
/// next-permutation rule, so duplicates are never produced.
#[derive(Clone, Debug)]
pub struct MultisetPermutations<T> {
    current: Option<Vec<T>>,
}

impl<T: Ord + Clone> MultisetPermutations<T> {
    pub fn new(mut items: Vec<T>) -> Self {
        items.sort();
        MultisetPermutations { current: Some(items) }
    }
}

impl<T: Ord + Clone> Iterator for MultisetPermutations<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(out)
    }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn index_permutations(n: usize) -> MultisetPermutations<usize> {
    MultisetPermutations::new((0..n).collect())
}
