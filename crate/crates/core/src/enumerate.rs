//! Exhaustive enumeration over all `2^n` preference orders.
//!
//! A preference order is the bit pattern of a counter: bit `j` set means
//! diner `j + 1` reaches right. The counter range is cut at its high bits
//! into fixed chunks, which are counted independently and summed in chunk
//! order.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exec::{map_chunks, Execution};
use crate::poly::NapkinPolynomial;
use crate::strategy::{self, StrategyId};
use crate::table::{evaluate_seating, PreferenceOrder};

/// Largest table enumerated by default (2^24 ≈ 16.7M runs).
pub const DEFAULT_MAX_N: usize = 24;

/// Largest table for the exact random-seating enumeration, which walks
/// `(n-1)! · 2^n` pairs.
pub const RANDOM_SEATING_MAX_N: usize = 9;

const CHUNK_BITS: usize = 12;

#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    pub max_n: usize,
    pub execution: Execution,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator { max_n: DEFAULT_MAX_N, execution: Execution::default() }
    }
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n.min(63);
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if n > self.max_n {
            return Err(Error::ResourceLimit { n, limit: self.max_n });
        }
        Ok(())
    }

    /// Folds `visit` over every preference order of length `n`, chunk by
    /// chunk, and merges chunk accumulators in order.
    pub fn fold<A, V, M>(&self, n: usize, init: impl Fn() -> A + Sync + Send, visit: V, merge: M) -> Result<A>
    where
        A: Send,
        V: Fn(&mut A, &PreferenceOrder) + Sync + Send,
        M: Fn(A, A) -> A,
    {
        self.check(n)?;
        let low = n.min(CHUNK_BITS);
        let chunks = 1usize << (n - low);
        let parts = map_chunks(chunks, self.execution, |c| {
            let mut acc = init();
            let base = (c as u64) << low;
            for bits in base..base + (1u64 << low) {
                visit(&mut acc, &PreferenceOrder::from_bits(bits, n));
            }
            acc
        });
        Ok(parts.into_iter().reduce(merge).expect("at least one chunk"))
    }

    /// `coeffs[k]` = number of orders leaving `k` diners napkinless.
    pub fn distribution(&self, strategy: StrategyId, n: usize) -> Result<NapkinPolynomial> {
        let counts = self.fold(
            n,
            || vec![0u64; n / 3 + 2],
            |acc, sigma| {
                let k = strategy::napkinless(strategy, sigma);
                if k >= acc.len() {
                    acc.resize(k + 1, 0);
                }
                acc[k] += 1;
            },
            merge_counts,
        )?;
        Ok(NapkinPolynomial::from_counts(n, &counts))
    }
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if b.len() > a.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Brute-force napkinless distribution with the default limits.
pub fn distribution(strategy: StrategyId, n: usize) -> Result<NapkinPolynomial> {
    Enumerator::default().distribution(strategy, n)
}

/// Exact expected napkinless proportion when both the seating order
/// (any permutation with diner 1 in seat 1) and the preferences are
/// uniformly random.
pub fn random_seating_exact(n: usize) -> Result<Ratio<u64>> {
    if n < 2 {
        return Err(Error::InvalidArgument("random seating needs n ≥ 2".into()));
    }
    if n > RANDOM_SEATING_MAX_N {
        return Err(Error::ResourceLimit { n, limit: RANDOM_SEATING_MAX_N });
    }
    let mut rest: Vec<usize> = (2..=n).collect();
    let mut napkinless = 0u64;
    let mut runs = 0u64;
    permutations(&mut rest, 0, &mut |perm| {
        let mut w = Vec::with_capacity(n);
        w.push(1);
        w.extend_from_slice(perm);
        for bits in 0..1u64 << n {
            let out = evaluate_seating(&w, &PreferenceOrder::from_bits(bits, n)).expect("valid arrangement");
            napkinless += out.napkinless_count() as u64;
            runs += 1;
        }
    });
    Ok(Ratio::new(napkinless, runs * n as u64))
}

fn permutations(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(p: &NapkinPolynomial) -> Vec<u64> {
        p.coeffs_u64()
    }

    #[test]
    fn small_trap_setting_distributions() {
        assert_eq!(counts(&distribution(StrategyId::W, 2).unwrap()), vec![4]);
        assert_eq!(counts(&distribution(StrategyId::W, 3).unwrap()), vec![4, 4]);
        assert_eq!(counts(&distribution(StrategyId::W, 4).unwrap()), vec![8, 8]);
        assert_eq!(counts(&distribution(StrategyId::W, 5).unwrap()), vec![8, 24]);
    }

    #[test]
    fn small_shunning_distributions() {
        assert_eq!(counts(&distribution(StrategyId::S, 3).unwrap()), vec![4, 4]);
        assert_eq!(counts(&distribution(StrategyId::S, 4).unwrap()), vec![4, 12]);
        assert_eq!(counts(&distribution(StrategyId::S, 5).unwrap()), vec![4, 28]);
        assert_eq!(counts(&distribution(StrategyId::S, 6).unwrap()), vec![4, 52, 8]);
    }

    #[test]
    fn limits() {
        let e = Enumerator::new().with_max_n(10);
        assert_eq!(e.distribution(StrategyId::S, 11), Err(Error::ResourceLimit { n: 11, limit: 10 }));
        assert_eq!(e.distribution(StrategyId::S, 0), Err(Error::EmptyTable));
    }

    #[test]
    fn serial_and_parallel_agree() {
        for n in [1, 7, 13, 15] {
            for id in StrategyId::ALL {
                let a = Enumerator::new().with_execution(Execution::Serial).distribution(id, n).unwrap();
                let b = Enumerator::new().with_execution(Execution::Parallel).distribution(id, n).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn random_seating_three_diners() {
        // each of the two arrangements strands one diner in 2 of its 8 orders
        assert_eq!(random_seating_exact(3).unwrap(), Ratio::new(1, 12));
        assert_eq!(random_seating_exact(2).unwrap(), Ratio::new(0, 1));
        assert!(random_seating_exact(1).is_err());
        assert!(random_seating_exact(10).is_err());
    }
}
