//! Per-level connectivity reports and the all-in-one property report.

use std::sync::Arc;

use super::adjacency::{build_adjacency, connected_components};
use super::properties::{check_conditions, clopen_partition_from, min_gap, perfectness_proxy, Gap};
use super::windows::count_windows;
use crate::attractor::{check_budget, hutchinson_step, CellSet, IFSystem};
use crate::error::{Error, Result};

/// Component structure of one level and how it sits inside the previous
/// level: every component must stay within a single parent component for
/// the nested-continuum picture to hold at finite resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelConnectivity {
    pub level: usize,
    pub component_count: usize,
    /// Every component of this level meets exactly one component of the
    /// previous level; trivially true at level 0.
    pub within_single_parent_component: bool,
}

/// Component counts for levels `0..=k_max`, each checked against the level
/// above it.
pub fn nested_connectivity_report(
    ifs: &Arc<IFSystem>,
    k_max: usize,
    budget: u64,
) -> Result<Vec<LevelConnectivity>> {
    check_budget(ifs, k_max, budget)?;
    let mut report = Vec::with_capacity(k_max + 1);
    let mut cells = CellSet::level_zero(ifs.clone());
    let mut components = connected_components(&build_adjacency(&cells));
    report.push(LevelConnectivity {
        level: 0,
        component_count: components.count(),
        within_single_parent_component: true,
    });
    for level in 1..=k_max {
        let child_cells = hutchinson_step(ifs, &cells)?;
        let child_components = connected_components(&build_adjacency(&child_cells));

        // parent cell of child address w.j is cells[w]; addresses of one
        // level are sorted, so look parents up by binary search
        let mut nested = vec![None; child_components.count()];
        let mut ok = true;
        for (i, (address, _)) in child_cells.cells().iter().enumerate() {
            let parent_address = address.parent().expect("level >= 1");
            let parent_index = cells
                .cells()
                .binary_search_by(|(a, _)| a.cmp(&parent_address))
                .map_err(|_| Error::Internal(format!("missing parent cell {parent_address}")))?;
            let parent_component = components.component_of(parent_index);
            let slot = &mut nested[child_components.component_of(i)];
            match slot {
                None => *slot = Some(parent_component),
                Some(existing) => {
                    if *existing != parent_component {
                        ok = false;
                    }
                }
            }
        }
        report.push(LevelConnectivity {
            level,
            component_count: child_components.count(),
            within_single_parent_component: ok,
        });
        cells = child_cells;
        components = child_components;
    }
    Ok(report)
}

/// The topological checks for one system at one resolution, bundled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub level: usize,
    pub cell_count: usize,
    pub component_count: usize,
    /// `None` below two cells, where no pair exists.
    pub min_gap: Option<Gap>,
    pub clopen_partition_found: bool,
    pub perfect_proxy: bool,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
    /// Interior holes of the cover; `None` off the plane or when the cells
    /// cannot be grid-aligned within the resolution cap.
    pub window_count: Option<usize>,
    /// Every level `1..=k` separated by a positive gap: the finite-level
    /// witness for zero-dimensionality, never a proof.
    pub zero_dim_evidence: bool,
}

impl PropertyReport {
    pub fn compute(ifs: &Arc<IFSystem>, level: usize, budget: u64) -> Result<PropertyReport> {
        let conditions = check_conditions(ifs);
        let (i, ii, iii) = conditions.triple();

        let mut cells = CellSet::level_zero(ifs.clone());
        let mut zero_dim_evidence = true;
        check_budget(ifs, level, budget)?;
        for _ in 0..level {
            cells = hutchinson_step(ifs, &cells)?;
            if zero_dim_evidence {
                zero_dim_evidence = !min_gap(&cells)?.is_touching();
            }
        }
        if level == 0 {
            zero_dim_evidence = false; // a single cell witnesses nothing
        }

        let graph = build_adjacency(&cells);
        let components = connected_components(&graph);
        let min_gap = if cells.len() >= 2 {
            Some(min_gap(&cells)?)
        } else {
            None
        };
        let clopen = clopen_partition_from(&cells, &components).is_some();
        let children = hutchinson_step(ifs, &cells)?;
        let perfect = perfectness_proxy(&cells, &children)?.holds;
        let window_count = if ifs.dim() == 2 {
            match count_windows(&cells, ifs.ambient()) {
                Ok(n) => Some(n),
                Err(Error::Unsupported(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };

        Ok(PropertyReport {
            level,
            cell_count: cells.len(),
            component_count: components.count(),
            min_gap,
            clopen_partition_found: clopen,
            perfect_proxy: perfect,
            condition_i: i,
            condition_ii: ii,
            condition_iii: iii,
            window_count,
            zero_dim_evidence,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::{preset, DEFAULT_CELL_BUDGET};
    use crate::geom::SquaredDist;
    use crate::rational::rat;

    fn arc_preset(name: &str) -> Arc<IFSystem> {
        Arc::new(preset(name).unwrap())
    }

    #[test]
    fn nested_connectivity_of_the_carpet() {
        let report =
            nested_connectivity_report(&arc_preset("sierpinski-carpet"), 4, DEFAULT_CELL_BUDGET)
                .unwrap();
        assert_eq!(report.len(), 5);
        for entry in &report {
            assert_eq!(entry.component_count, 1, "level {}", entry.level);
            assert!(entry.within_single_parent_component);
        }
    }

    #[test]
    fn nested_connectivity_of_the_cantor_levels() {
        let report = nested_connectivity_report(&arc_preset("cmts"), 8, DEFAULT_CELL_BUDGET).unwrap();
        for entry in &report {
            assert_eq!(entry.component_count, 1usize << entry.level);
            assert!(entry.within_single_parent_component);
        }
    }

    #[test]
    fn nested_connectivity_level_zero_only() {
        let report = nested_connectivity_report(&arc_preset("cmts"), 0, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].component_count, 1);
        assert!(report[0].within_single_parent_component);
    }

    #[test]
    fn property_report_contrasts_the_presets() {
        let cmts = PropertyReport::compute(&arc_preset("cmts"), 5, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(cmts.component_count, 32);
        assert_eq!(
            cmts.min_gap,
            Some(Gap::Separated(SquaredDist::new(rat(1, 59049))))
        );
        assert!(cmts.clopen_partition_found);
        assert!(cmts.perfect_proxy);
        assert_eq!((cmts.condition_i, cmts.condition_ii, cmts.condition_iii), (true, true, true));
        assert_eq!(cmts.window_count, None);
        assert!(cmts.zero_dim_evidence);

        let sc = PropertyReport::compute(&arc_preset("sierpinski-carpet"), 2, DEFAULT_CELL_BUDGET)
            .unwrap();
        assert_eq!(sc.component_count, 1);
        assert_eq!(sc.min_gap, Some(Gap::Touching));
        assert!(!sc.clopen_partition_found);
        assert!(sc.perfect_proxy);
        assert_eq!((sc.condition_i, sc.condition_ii, sc.condition_iii), (true, true, false));
        assert_eq!(sc.window_count, Some(9));
        assert!(!sc.zero_dim_evidence);

        let gasket =
            PropertyReport::compute(&arc_preset("sierpinski-gasket"), 3, DEFAULT_CELL_BUDGET)
                .unwrap();
        assert_eq!(gasket.component_count, 1);
        assert_eq!(gasket.min_gap, Some(Gap::Touching));
    }
}
