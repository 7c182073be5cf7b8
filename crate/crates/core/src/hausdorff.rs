//! Exact Hausdorff distance between finite point sets.
//!
//! The distance is `max(sup_a inf_b d(a,b), sup_b inf_a d(a,b))`, carried as
//! an exact squared rational. When every coordinate scales to a small
//! integer on a common denominator the search runs on `i128`s with a
//! sort-and-expand sweep; otherwise it falls back to rational brute force.
//! Both paths decide every comparison exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geom::{dist_squared, Point, SquaredDist};
use crate::rational::Rational;

pub fn hausdorff_distance(a: &[Point], b: &[Point]) -> Result<SquaredDist> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("hausdorff distance needs non-empty sets"));
    }
    let dim = a[0].len();
    if a.iter().chain(b).any(|p| p.len() != dim) {
        return Err(Error::invalid("hausdorff distance needs equal-dimension points"));
    }

    if dim <= 2 {
        if let Some((sa, sb, scale)) = scale_sets(a, b) {
            let d1 = directed_scaled(&sa, &sb);
            let d2 = directed_scaled(&sb, &sa);
            let max = d1.max(d2);
            let scale_sq = &scale * &scale;
            return Ok(SquaredDist::new(Rational::new(BigInt::from(max), scale_sq)));
        }
    }

    let d1 = directed_rational(a, b)?;
    let d2 = directed_rational(b, a)?;
    Ok(SquaredDist::new(d1.max(d2)))
}

/// `sup_{x in from} inf_{y in to} d(x,y)^2`, rational brute force with an
/// early break once a point is known not to raise the supremum.
fn directed_rational(from: &[Point], to: &[Point]) -> Result<Rational> {
    let mut sup = Rational::zero();
    for x in from {
        let mut best: Option<Rational> = None;
        for y in to {
            let d = dist_squared(x, y)?;
            if d <= sup {
                best = None; // cannot raise the supremum
                break;
            }
            if best.as_ref().is_none_or(|b| &d < b) {
                best = Some(d);
            }
        }
        if let Some(b) = best {
            sup = sup.max(b);
        }
    }
    Ok(sup)
}

/// Points embedded in the plane and scaled to integers on a common
/// denominator. One-dimensional inputs get a zero second coordinate, which
/// leaves all distances unchanged.
fn scale_sets(a: &[Point], b: &[Point]) -> Option<(Vec<[i64; 2]>, Vec<[i64; 2]>, BigInt)> {
    let mut lcm = BigInt::one();
    for p in a.iter().chain(b) {
        for c in p {
            lcm = lcm.lcm(c.denom());
            if lcm.to_i64()? > MAX_SCALED {
                return None;
            }
        }
    }
    let conv = |set: &[Point]| -> Option<Vec<[i64; 2]>> {
        set.iter()
            .map(|p| {
                let mut out = [0i64; 2];
                for (i, c) in p.iter().enumerate() {
                    let v = (c.numer() * (&lcm / c.denom())).to_i64()?;
                    if v.abs() > MAX_SCALED {
                        return None;
                    }
                    out[i] = v;
                }
                Some(out)
            })
            .collect()
    };
    let sa = conv(a)?;
    let sb = conv(b)?;
    Some((sa, sb, lcm))
}

// Keeps squared sums far inside i128.
const MAX_SCALED: i64 = 1 << 31;

fn sq_dist(p: &[i64; 2], q: &[i64; 2]) -> i128 {
    let dx = (p[0] - q[0]) as i128;
    let dy = (p[1] - q[1]) as i128;
    dx * dx + dy * dy
}

/// Integer directed distance: targets are sorted by x and scanned outward
/// from the insertion point, stopping a side as soon as its x-offset alone
/// rules out any improvement.
fn directed_scaled(from: &[[i64; 2]], to: &[[i64; 2]]) -> i128 {
    let mut targets = to.to_vec();
    targets.sort_unstable();
    let mut sup: i128 = 0;
    for p in from {
        let pos = targets.partition_point(|t| t[0] < p[0]);
        let mut best = i128::MAX;
        let mut left = pos;
        let mut right = pos;
        loop {
            let dx_left = if left > 0 {
                let dx = (p[0] - targets[left - 1][0]) as i128;
                Some(dx * dx)
            } else {
                None
            };
            let dx_right = if right < targets.len() {
                let dx = (targets[right][0] - p[0]) as i128;
                Some(dx * dx)
            } else {
                None
            };
            let take_left = match (dx_left, dx_right) {
                (Some(l), Some(r)) => l <= r,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            let dx2 = if take_left { dx_left.unwrap() } else { dx_right.unwrap() };
            if dx2 >= best {
                break; // every remaining candidate is at least this far in x
            }
            let cand = if take_left {
                left -= 1;
                &targets[left]
            } else {
                right += 1;
                &targets[right - 1]
            };
            let d = sq_dist(p, cand);
            if d < best {
                best = d;
            }
            if best <= sup {
                break; // this point cannot raise the supremum
            }
        }
        if best != i128::MAX && best > sup {
            sup = best;
        }
    }
    sup
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    /// Independent oracle: plain quadratic sup-inf on rationals.
    fn brute_force(a: &[Point], b: &[Point]) -> Rational {
        let directed = |from: &[Point], to: &[Point]| {
            from.iter()
                .map(|x| {
                    to.iter()
                        .map(|y| dist_squared(x, y).unwrap())
                        .min()
                        .unwrap()
                })
                .max()
                .unwrap()
        };
        directed(a, b).max(directed(b, a))
    }

    fn pts1(values: &[(i64, i64)]) -> Vec<Point> {
        values.iter().map(|&(n, d)| vec![rat(n, d)]).collect()
    }

    #[test]
    fn identity_and_singletons() {
        let a = pts1(&[(0, 1), (1, 3), (2, 3)]);
        assert_eq!(hausdorff_distance(&a, &a).unwrap().squared, rat_int(0));
        let x = pts1(&[(0, 1)]);
        let y = pts1(&[(1, 1)]);
        assert_eq!(hausdorff_distance(&x, &y).unwrap().squared, rat_int(1));
    }

    #[test]
    fn empty_set_is_rejected() {
        let a = pts1(&[(0, 1)]);
        assert!(hausdorff_distance(&a, &[]).is_err());
        assert!(hausdorff_distance(&[], &a).is_err());
    }

    #[test]
    fn cantor_level_centers_match_brute_force() {
        // centers of the level-1 and level-2 middle-third cells
        let x1 = pts1(&[(1, 6), (5, 6)]);
        let x2 = pts1(&[(1, 18), (5, 18), (13, 18), (17, 18)]);
        let oracle = brute_force(&x1, &x2);
        let got = hausdorff_distance(&x1, &x2).unwrap().squared;
        assert_eq!(got, oracle);
        assert_eq!(got, rat(1, 81)); // value frozen from the oracle
    }

    #[test]
    fn mixed_denominators_use_the_rational_path() {
        // huge prime denominators force the fallback
        let a = vec![vec![Rational::new(BigInt::from(1), BigInt::from(3u64).pow(50))]];
        let b = vec![vec![rat_int(1)]];
        let got = hausdorff_distance(&a, &b).unwrap().squared;
        assert_eq!(got, brute_force(&a, &b));
    }

    fn arb_point_set(dim: usize) -> impl Strategy<Value = Vec<Point>> {
        prop::collection::vec(
            prop::collection::vec((-12i64..12, 1i64..9).prop_map(|(n, d)| rat(n, d)), dim),
            1..8,
        )
    }

    proptest! {
        #[test]
        fn matches_brute_force_2d(a in arb_point_set(2), b in arb_point_set(2)) {
            let got = hausdorff_distance(&a, &b).unwrap().squared;
            prop_assert_eq!(got, brute_force(&a, &b));
        }

        #[test]
        fn symmetry(a in arb_point_set(2), b in arb_point_set(2)) {
            let ab = hausdorff_distance(&a, &b).unwrap();
            let ba = hausdorff_distance(&b, &a).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }
}
