//! Separation gaps, the contraction-system conditions, the perfectness
//! proxy, and clopen splits.

use num_bigint::BigInt;
use num_traits::Zero;

use super::adjacency::{build_adjacency, connected_components, Components};
use super::scaled::scale_boxes;
use crate::attractor::{Address, CellSet, IFSystem};
use crate::error::{Error, Result};
use crate::geom::{Point, SquaredDist};
use crate::rational::{rat_int, Rational};

/// Minimum separation between distinct cells of one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gap {
    /// Some two cells intersect; the level is not a disjoint union.
    Touching,
    /// Exact squared distance of the closest pair; strictly positive.
    Separated(SquaredDist),
}

impl Gap {
    pub fn is_touching(&self) -> bool {
        matches!(self, Gap::Touching)
    }
}

/// Exact minimum squared gap over all cell pairs, or [`Gap::Touching`] as
/// soon as any two cells intersect.
pub fn min_gap(cells: &CellSet) -> Result<Gap> {
    let n = cells.len();
    if n < 2 {
        return Err(Error::invalid("min gap needs at least two cells"));
    }

    if let Some(scaled) = scale_boxes(cells.cells().iter().map(|(_, b)| b)) {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&i| scaled.coords[i][0]);
        let mut best: Option<i128> = None;
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[pos + 1..] {
                let dx = (scaled.coords[j][0] - scaled.coords[i][2]).max(0) as i128;
                if let Some(b) = best {
                    if dx * dx >= b {
                        break; // later cells are even further in x
                    }
                }
                let g = scaled.gap_squared(i, j);
                if g == 0 {
                    return Ok(Gap::Touching);
                }
                if best.map_or(true, |b| g < b) {
                    best = Some(g);
                }
            }
        }
        let best = best.expect("n >= 2 guarantees at least one pair");
        let scale_sq = &scaled.scale * &scaled.scale;
        return Ok(Gap::Separated(SquaredDist::new(Rational::new(
            BigInt::from(best),
            scale_sq,
        ))));
    }

    let boxes: Vec<_> = cells.cells().iter().map(|(_, b)| b).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| boxes[i].lower().cmp(boxes[j].lower()));
    let mut best: Option<Rational> = None;
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            let dx = (&boxes[j].lower()[0] - &boxes[i].upper()[0]).max(Rational::zero());
            if let Some(b) = &best {
                if &(&dx * &dx) >= b {
                    break;
                }
            }
            let g = boxes[i].gap_squared(boxes[j]);
            if g.is_zero() {
                return Ok(Gap::Touching);
            }
            if best.as_ref().map_or(true, |b| &g < b) {
                best = Some(g);
            }
        }
    }
    Ok(Gap::Separated(SquaredDist::new(best.expect("pair exists"))))
}

/// The three conditions on a contraction system, with witnesses: whether
/// every map is injective, the exact fixed point of every map, whether at
/// least two fixed points differ, and the exact Lipschitz sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub injective: bool,
    pub fixed_points: Vec<Point>,
    pub fixed_points_nontrivial: bool,
    pub lipschitz_sum: Rational,
    pub sum_below_one: bool,
}

impl ConditionReport {
    /// `(i, ii, iii)` as booleans.
    pub fn triple(&self) -> (bool, bool, bool) {
        (self.injective, self.fixed_points_nontrivial, self.sum_below_one)
    }
}

pub fn check_conditions(ifs: &IFSystem) -> ConditionReport {
    let injective = ifs.maps().iter().all(|m| !m.determinant().is_zero());
    let fixed_points: Vec<Point> = ifs
        .maps()
        .iter()
        .map(|m| m.fixed_point().expect("contractions have a fixed point"))
        .collect();
    let fixed_points_nontrivial = fixed_points
        .iter()
        .any(|p| p != &fixed_points[0]);
    let lipschitz_sum = ifs.lipschitz_sum();
    let sum_below_one = lipschitz_sum < rat_int(1);
    ConditionReport {
        injective,
        fixed_points,
        fixed_points_nontrivial,
        lipschitz_sum,
        sum_below_one,
    }
}

/// Result of the accumulation-point proxy: does every parent cell hold at
/// least two distinct child cells?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub holds: bool,
    /// Parent addresses with fewer than two distinct child boxes.
    pub violations: Vec<Address>,
}

/// `children` must be the Hutchinson step of `parents`. A parent at address
/// `w` owns the children `w.j`; two of them with distinct boxes inside
/// every parent is the finite-level trace of "every point accumulates".
pub fn perfectness_proxy(parents: &CellSet, children: &CellSet) -> Result<PerfectnessReport> {
    if **parents.ifs() != **children.ifs() {
        return Err(Error::invalid("cell sets come from different systems"));
    }
    if children.level() != parents.level() + 1 {
        return Err(Error::invalid(format!(
            "level mismatch: children at {} are not one below parents at {}",
            children.level(),
            parents.level()
        )));
    }
    let m = parents.ifs().map_count();
    let mut violations = Vec::new();
    for (address, _) in parents.cells() {
        let mut child_boxes = Vec::with_capacity(m);
        for j in 1..=m as u8 {
            let mut word = address.symbols().to_vec();
            word.push(j);
            let child = Address::from_symbols(&word);
            let bx = children
                .get(&child)
                .ok_or_else(|| Error::invalid(format!("missing child cell {child}")))?;
            child_boxes.push(bx.clone());
        }
        child_boxes.sort();
        child_boxes.dedup();
        if child_boxes.len() < 2 {
            violations.push(address.clone());
        }
    }
    Ok(PerfectnessReport { holds: violations.is_empty(), violations })
}

/// If the level is disconnected, one component (the one holding the
/// smallest address) and its complement form a partition into two non-empty
/// sets that are both closed and, within the level, open — separated by a
/// positive gap. Returns `None` on a connected level.
pub fn clopen_partition(cells: &CellSet) -> Result<Option<(Vec<Address>, Vec<Address>)>> {
    if cells.len() < 2 {
        return Err(Error::invalid("clopen partition needs at least two cells"));
    }
    let graph = build_adjacency(cells);
    let components = connected_components(&graph);
    Ok(clopen_partition_from(cells, &components))
}

/// Same as [`clopen_partition`] but reuses an existing component labelling.
pub(crate) fn clopen_partition_from(
    cells: &CellSet,
    components: &Components,
) -> Option<(Vec<Address>, Vec<Address>)> {
    if components.count() <= 1 {
        return None;
    }
    let mut y = Vec::new();
    let mut rest = Vec::new();
    for (i, (address, _)) in cells.cells().iter().enumerate() {
        if components.component_of(i) == 0 {
            y.push(address.clone());
        } else {
            rest.push(address.clone());
        }
    }
    Some((y, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::{
        hutchinson_step, iterate_attractor, preset, CellSet, IFSystem, DEFAULT_CELL_BUDGET,
    };
    use crate::geom::{Aabb, AffineMap};
    use crate::rational::rat;
    use std::sync::Arc;

    fn level(name: &str, k: usize) -> CellSet {
        let ifs = Arc::new(preset(name).unwrap());
        iterate_attractor(&ifs, k, DEFAULT_CELL_BUDGET).unwrap()
    }

    /// Independent oracle: all-pairs gap minimum on rationals.
    fn brute_force_gap(cells: &CellSet) -> Gap {
        let boxes: Vec<_> = cells.cells().iter().map(|(_, b)| b).collect();
        let mut best: Option<Rational> = None;
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if boxes[i].intersects(boxes[j]) {
                    return Gap::Touching;
                }
                let g = boxes[i].gap_squared(boxes[j]);
                if best.as_ref().map_or(true, |b| &g < b) {
                    best = Some(g);
                }
            }
        }
        Gap::Separated(SquaredDist::new(best.unwrap()))
    }

    #[test]
    fn cantor_gaps_shrink_as_ninth_powers() {
        for k in 1..=8usize {
            let cells = level("cmts", k);
            let got = min_gap(&cells).unwrap();
            assert_eq!(got, brute_force_gap(&cells), "level {k}");
            let expected = Rational::new(BigInt::from(1), BigInt::from(9).pow(k as u32));
            assert_eq!(got, Gap::Separated(SquaredDist::new(expected)), "level {k}");
        }
    }

    #[test]
    fn carpet_cells_touch_from_level_one() {
        for k in 1..=3usize {
            assert!(min_gap(&level("sierpinski-carpet", k)).unwrap().is_touching());
        }
    }

    #[test]
    fn min_gap_needs_two_cells() {
        assert!(min_gap(&level("cmts", 0)).is_err());
    }

    #[test]
    fn conditions_for_the_three_presets() {
        let cmts = check_conditions(&preset("cmts").unwrap());
        assert_eq!(cmts.triple(), (true, true, true));
        assert_eq!(cmts.lipschitz_sum, rat(2, 3));
        assert_eq!(
            cmts.fixed_points,
            vec![vec![rat_int(0)], vec![rat_int(1)]]
        );

        let sc = check_conditions(&preset("sierpinski-carpet").unwrap());
        assert_eq!(sc.triple(), (true, true, false));
        assert_eq!(sc.lipschitz_sum, rat(8, 3));

        let gasket = check_conditions(&preset("sierpinski-gasket").unwrap());
        assert_eq!(gasket.triple(), (true, true, false));
        assert_eq!(gasket.lipschitz_sum, rat(3, 2));
    }

    #[test]
    fn conditions_are_permutation_invariant() {
        let sc = preset("sierpinski-carpet").unwrap();
        let mut maps = sc.maps().to_vec();
        maps.reverse();
        let reversed = IFSystem::new("sc-reversed", maps, sc.ambient().clone()).unwrap();
        assert_eq!(check_conditions(&sc).triple(), check_conditions(&reversed).triple());
        assert_eq!(check_conditions(&sc).lipschitz_sum, check_conditions(&reversed).lipschitz_sum);
    }

    #[test]
    fn perfectness_holds_for_presets() {
        for (name, k_max) in [("cmts", 6), ("sierpinski-carpet", 3)] {
            let ifs = Arc::new(preset(name).unwrap());
            let mut cells = CellSet::level_zero(ifs.clone());
            for _ in 0..=k_max {
                let children = hutchinson_step(&ifs, &cells).unwrap();
                let report = perfectness_proxy(&cells, &children).unwrap();
                assert!(report.holds, "{name} level {}", cells.level());
                cells = children;
            }
        }
    }

    #[test]
    fn perfectness_fails_for_two_identical_maps() {
        let same = || AffineMap::diagonal(vec![rat(1, 3)], vec![rat(1, 3)]).unwrap();
        let ifs = Arc::new(IFSystem::new("degenerate", vec![same(), same()], Aabb::unit(1)).unwrap());
        let x0 = CellSet::level_zero(ifs.clone());
        let x1 = hutchinson_step(&ifs, &x0).unwrap();
        let report = perfectness_proxy(&x0, &x1).unwrap();
        assert!(!report.holds);
        assert_eq!(report.violations, vec![Address::root()]);
    }

    #[test]
    fn perfectness_rejects_level_mismatch() {
        let ifs = Arc::new(preset("cmts").unwrap());
        let x1 = iterate_attractor(&ifs, 1, DEFAULT_CELL_BUDGET).unwrap();
        let x3 = iterate_attractor(&ifs, 3, DEFAULT_CELL_BUDGET).unwrap();
        assert!(perfectness_proxy(&x1, &x3).is_err());
    }

    #[test]
    fn clopen_partition_of_cantor_levels() {
        let (y, rest) = clopen_partition(&level("cmts", 1)).unwrap().unwrap();
        assert_eq!(y, vec![Address::from_symbols(&[1])]);
        assert_eq!(rest, vec![Address::from_symbols(&[2])]);

        // level 2: the smallest-address component is the cell 1,1
        let (y, rest) = clopen_partition(&level("cmts", 2)).unwrap().unwrap();
        assert_eq!(y, vec![Address::from_symbols(&[1, 1])]);
        assert_eq!(rest.len(), 3);
    }

    #[test]
    fn carpet_has_no_clopen_partition() {
        for k in 1..=4usize {
            assert!(clopen_partition(&level("sierpinski-carpet", k)).unwrap().is_none());
        }
    }
}
