//! Gap analysis: minimum gaps and accumulation-cluster detection.

use super::stream::{GenStream, Rule};
use super::table::{enumerate_below, Bound, EnumLimits, SemiTable};
use crate::error::Result;
use crate::order::Rat;
use serde::Serialize;

/// Truncation of the two-family semigroup with generators 1 - p^{-i} and
/// 2 - q^{-i}, depth of each family, enumerated below the bound.
pub fn spq_build(p: u64, q: u64, depth: u32, bound: &Rat, limits: &EnumLimits) -> Result<SemiTable> {
    let stream = GenStream::Rule(Rule::Spq { p, q, depth });
    enumerate_below(&stream, &Bound::rat1(bound.clone()), limits)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub min_gap: Option<Rat>,
    pub cluster_points: Vec<Rat>,
    pub threshold: Rat,
    pub window: usize,
}

/// Scan for accumulation behavior: the minimum positive gap between
/// consecutive elements, and midpoints of windows where at least `window`
/// consecutive gaps fall below `threshold`. Rank-1 tables are scanned
/// directly; higher-rank tables are scanned per fiber of the leading
/// coordinates, using the final coordinate.
pub fn accumulation_scan(table: &SemiTable, threshold: &Rat, window: usize) -> ScanReport {
    let rank = table.bound.0 .0.len();
    let mut fibers: Vec<Vec<Rat>> = Vec::new();
    if rank == 1 {
        fibers.push(
            table
                .elements
                .iter()
                .filter_map(|e| e.coord_rat(0).cloned())
                .collect(),
        );
    } else {
        let mut current_prefix: Option<Vec<Rat>> = None;
        for e in &table.elements {
            let prefix: Vec<Rat> = (0..rank - 1)
                .filter_map(|i| e.coord_rat(i).cloned())
                .collect();
            let last = match e.coord_rat(rank - 1) {
                Some(r) => r.clone(),
                None => continue,
            };
            if current_prefix.as_ref() != Some(&prefix) {
                current_prefix = Some(prefix);
                fibers.push(Vec::new());
            }
            fibers.last_mut().unwrap().push(last);
        }
    }

    let mut min_gap: Option<Rat> = None;
    let mut cluster_points = Vec::new();
    for fiber in &fibers {
        if fiber.len() < 2 {
            continue;
        }
        let gaps: Vec<Rat> = fiber.windows(2).map(|w| &w[1] - &w[0]).collect();
        for g in &gaps {
            if min_gap.as_ref().map_or(true, |m| g < m) {
                min_gap = Some(g.clone());
            }
        }
        // Maximal runs of consecutive small gaps.
        let mut run_start: Option<usize> = None;
        for (i, g) in gaps.iter().enumerate() {
            if g < threshold {
                run_start.get_or_insert(i);
                let is_last = i + 1 == gaps.len();
                if is_last {
                    let s = run_start.unwrap();
                    if i + 1 - s >= window {
                        cluster_points
                            .push(&(&fiber[s] + &fiber[i + 1]) * &Rat::new(1, 2));
                    }
                }
            } else if let Some(s) = run_start.take() {
                if i - s >= window {
                    cluster_points.push(&(&fiber[s] + &fiber[i]) * &Rat::new(1, 2));
                }
            }
        }
    }
    ScanReport {
        min_gap,
        cluster_points,
        threshold: threshold.clone(),
        window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_threshold() -> Rat {
        Rat::new(1, 32)
    }

    #[test]
    fn spq_examples() {
        let t = spq_build(2, 3, 2, &Rat::int(2), &EnumLimits::default()).unwrap();
        let els: Vec<Rat> = t.elements.iter().map(|e| e.coord_rat(0).unwrap().clone()).collect();
        // generators themselves
        for g in [Rat::new(1, 2), Rat::new(3, 4), Rat::new(5, 3), Rat::new(17, 9)] {
            assert!(els.contains(&g), "missing generator {g}");
        }
        // sums below 2
        for s in [Rat::int(1), Rat::new(5, 4), Rat::new(3, 2), Rat::new(7, 4)] {
            assert!(els.contains(&s), "missing sum {s}");
        }
    }

    #[test]
    fn spq_depth_one() {
        let t = spq_build(2, 3, 1, &Rat::int(2), &EnumLimits::default()).unwrap();
        let els: Vec<Rat> = t.elements.iter().map(|e| e.coord_rat(0).unwrap().clone()).collect();
        // truncation of <1/2, 5/3>
        assert!(els.contains(&Rat::new(1, 2)));
        assert!(els.contains(&Rat::new(5, 3)));
        assert!(els.contains(&Rat::new(3, 2)));
        assert!(!els.contains(&Rat::new(3, 4)));
    }

    #[test]
    fn spq_generators_approach_one() {
        let t = spq_build(2, 3, 6, &Rat::one(), &EnumLimits::default()).unwrap();
        let els: Vec<Rat> = t.elements.iter().map(|e| e.coord_rat(0).unwrap().clone()).collect();
        for i in 1..=6 {
            let g = Rat::one() - Rat::new(1, 1i64 << i);
            assert!(els.contains(&g), "missing 1 - 2^-{i}");
        }
    }

    #[test]
    fn cluster_near_one_for_spq() {
        let t = spq_build(2, 3, 10, &Rat::one(), &EnumLimits::default()).unwrap();
        let r = accumulation_scan(&t, &default_threshold(), 5);
        assert!(r.min_gap.clone().unwrap() <= Rat::new(1, 1 << 10));
        assert_eq!(r.cluster_points.len(), 1);
        // the flagged point is near 1
        let c = &r.cluster_points[0];
        assert!(c > &Rat::new(9, 10) && c < &Rat::one());
    }

    #[test]
    fn no_cluster_for_dyadic_values() {
        let t = enumerate_below(
            &GenStream::Rule(Rule::DyadicBeta),
            &Bound::rat1(Rat::int(6)),
            &EnumLimits::default(),
        )
        .unwrap();
        let r = accumulation_scan(&t, &default_threshold(), 5);
        assert_eq!(r.min_gap, Some(Rat::new(1, 4)));
        assert!(r.cluster_points.is_empty());
    }

    #[test]
    fn trivial_tables() {
        let t = enumerate_below(
            &GenStream::from_rats(&[Rat::int(4)]),
            &Bound::rat1(Rat::int(10)),
            &EnumLimits::default(),
        )
        .unwrap();
        let r = accumulation_scan(&t, &default_threshold(), 5);
        assert_eq!(r.min_gap, Some(Rat::int(4)));
        assert!(r.cluster_points.is_empty());
        // fewer than 2 elements: empty report
        let t = enumerate_below(
            &GenStream::from_rats(&[Rat::int(4)]),
            &Bound::rat1(Rat::int(3)),
            &EnumLimits::default(),
        )
        .unwrap();
        let r = accumulation_scan(&t, &default_threshold(), 5);
        assert_eq!(r.min_gap, None);
    }
}
