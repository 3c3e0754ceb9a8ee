//! Numerical semigroups: Apéry sets, Frobenius numbers, exact membership.
//!
//! A numerical semigroup here is given by positive integer generators with
//! overall gcd 1, so it has a finite complement in N. The Apéry set with
//! respect to the smallest generator m lists, per residue class mod m, the
//! least semigroup element in that class; membership and the Frobenius
//! number then read off in O(1).

use crate::error::{Error, Result};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Clone, Debug)]
pub struct NumSemigroup {
    pub gens: Vec<u64>,
    m: u64,
    apery: Vec<u64>,
}

impl NumSemigroup {
    pub fn new(mut gens: Vec<u64>) -> Result<Self> {
        gens.retain(|&g| g > 0);
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::Domain("no positive generators".into()));
        }
        let g = gens.iter().fold(0u64, |a, &b| gcd(a, b));
        if g != 1 {
            return Err(Error::Domain(format!(
                "generators have gcd {g} != 1; scale first"
            )));
        }
        let m = gens[0];
        // Shortest-path computation of the Apéry set over residues mod m.
        let mut dist = vec![u64::MAX; m as usize];
        dist[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u64, 0usize)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > dist[r] {
                continue;
            }
            for &g in &gens[1..] {
                let nd = d + g;
                let nr = (nd % m) as usize;
                if nd < dist[nr] {
                    dist[nr] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        Ok(NumSemigroup {
            gens,
            m,
            apery: dist,
        })
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.apery[(n % self.m) as usize]
    }

    /// Largest integer not in the semigroup; -1 when the semigroup is all of N.
    pub fn frobenius(&self) -> i64 {
        let w = *self.apery.iter().max().unwrap();
        w as i64 - self.m as i64
    }

    /// Indices of generators not expressible from the others.
    pub fn minimal_generator_count(&self) -> usize {
        self.gens
            .iter()
            .filter(|&&g| {
                let others: Vec<u64> = self.gens.iter().copied().filter(|&h| h != g).collect();
                if others.is_empty() {
                    return true;
                }
                let og = others.iter().fold(0u64, |a, &b| gcd(a, b));
                if og == 0 {
                    return true;
                }
                if g % og != 0 {
                    return true;
                }
                // Membership of g in the semigroup generated by the others,
                // decided after scaling by their gcd.
                let scaled: Vec<u64> = others.iter().map(|&h| h / og).collect();
                match NumSemigroup::new(scaled) {
                    Ok(s) => !s.contains(g / og),
                    Err(_) => !bounded_membership(&others, g),
                }
            })
            .count()
    }
}

/// Fallback membership for generator sets with gcd > 1: bounded closure scan.
fn bounded_membership(gens: &[u64], target: u64) -> bool {
    let mut reach = vec![false; target as usize + 1];
    reach[0] = true;
    for v in 0..=target as usize {
        if !reach[v] {
            continue;
        }
        for &g in gens {
            let n = v + g as usize;
            if n <= target as usize {
                reach[n] = true;
            }
        }
    }
    reach[target as usize]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apery_membership() {
        let s = NumSemigroup::new(vec![4, 6, 13]).unwrap();
        assert!(s.contains(0));
        assert!(!s.contains(1));
        assert!(!s.contains(5));
        assert!(s.contains(10));
        assert!(s.contains(13));
        assert!(!s.contains(15));
        // brute-force cross-check below 60
        for n in 0..60u64 {
            let brute = bounded_membership(&[4, 6, 13], n);
            assert_eq!(s.contains(n), brute, "mismatch at {n}");
        }
    }

    #[test]
    fn frobenius_of_2_3() {
        let s = NumSemigroup::new(vec![2, 3]).unwrap();
        assert_eq!(s.frobenius(), 1);
        let s = NumSemigroup::new(vec![4, 6, 13]).unwrap();
        // gaps: ..., largest gap of <4,6,13>
        let f = s.frobenius();
        assert!(f > 0);
        assert!(!s.contains(f as u64));
        for n in (f as u64 + 1)..(f as u64 + 20) {
            assert!(s.contains(n));
        }
    }

    #[test]
    fn minimal_generator_counts() {
        assert_eq!(NumSemigroup::new(vec![1]).unwrap().minimal_generator_count(), 1);
        assert_eq!(
            NumSemigroup::new(vec![4, 6, 13]).unwrap().minimal_generator_count(),
            3
        );
        // 10 = 4 + 6 is redundant
        assert_eq!(
            NumSemigroup::new(vec![4, 6, 10, 13]).unwrap().minimal_generator_count(),
            3
        );
    }
}
