//! Level-`k` attractor approximations.
//!
//! An [`IFSystem`] is a finite family of contractions on an ambient box.
//! Applying the family to the ambient box `k` times yields the cover `X_k`
//! by `m^k` closed cells, one per address word `j_1..j_k`; the cell is the
//! exact image of the ambient box under `f_{j1} o ... o f_{jk}`. These
//! covers shrink onto the attractor, and every topological check in this
//! crate runs on them.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geom::{Aabb, AffineMap, Point, SquaredDist};
use crate::hausdorff::hausdorff_distance;
use crate::rational::{rat, rat_int, Rational};

/// Default cap on `m^k`, the number of cells a single level may hold.
pub const DEFAULT_CELL_BUDGET: u64 = 1_000_000;

/// A finite family of contractions together with the ambient box they act on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IFSystem {
    name: String,
    maps: Vec<AffineMap>,
    ambient: Aabb,
}

impl IFSystem {
    /// Requires at least two maps, matching dimensions, and that every map
    /// send the ambient box into itself (checked via exact box images, so
    /// only diagonal positive maps are accepted here).
    pub fn new(name: impl Into<String>, maps: Vec<AffineMap>, ambient: Aabb) -> Result<Self> {
        let name = name.into();
        if maps.len() < 2 {
            return Err(Error::invalid("an IFS needs at least two maps"));
        }
        if maps.len() > 255 {
            return Err(Error::invalid("at most 255 maps are supported"));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.dim() != ambient.dim() {
                return Err(Error::invalid(format!(
                    "map {} has dimension {}, ambient box has dimension {}",
                    i + 1,
                    m.dim(),
                    ambient.dim()
                )));
            }
            let image = m.map_box(&ambient)?;
            if !ambient.contains_box(&image) {
                return Err(Error::invalid(format!(
                    "map {} does not send the ambient box into itself",
                    i + 1
                )));
            }
        }
        Ok(IFSystem { name, maps, ambient })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    pub fn map_count(&self) -> usize {
        self.maps.len()
    }

    pub fn ambient(&self) -> &Aabb {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    /// Exact sum of the Lipschitz constants. Below one the attractor is
    /// totally disconnected in addition to perfect and compact.
    pub fn lipschitz_sum(&self) -> Rational {
        self.maps
            .iter()
            .fold(Rational::zero(), |acc, m| acc + m.lipschitz())
    }

    /// Largest Lipschitz constant among the maps.
    pub fn max_lipschitz(&self) -> &Rational {
        self.maps
            .iter()
            .map(AffineMap::lipschitz)
            .max()
            .expect("at least two maps")
    }
}

/// Builds one of the bundled systems:
///
/// * `cmts` — Cantor middle-third set, `{x/3, x/3 + 2/3}` on `[0,1]`;
/// * `sierpinski-carpet` — eight maps scaling `[0,1]^2` by `1/3`, skipping
///   the center;
/// * `sierpinski-gasket` — three maps scaling `[0,1]^2` by `1/2` toward the
///   corner, right and top anchors.
pub fn preset(name: &str) -> Result<IFSystem> {
    let third = || rat(1, 3);
    match name {
        "cmts" => {
            let maps = vec![
                AffineMap::diagonal(vec![third()], vec![rat_int(0)])?,
                AffineMap::diagonal(vec![third()], vec![rat(2, 3)])?,
            ];
            IFSystem::new("cmts", maps, Aabb::unit(1))
        }
        "sierpinski-carpet" => {
            let offsets = [
                (0, 0),
                (1, 0),
                (2, 0),
                (0, 1),
                (2, 1),
                (0, 2),
                (1, 2),
                (2, 2),
            ];
            let maps = offsets
                .iter()
                .map(|&(ox, oy)| {
                    AffineMap::diagonal(
                        vec![third(), third()],
                        vec![rat(ox, 3), rat(oy, 3)],
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            IFSystem::new("sierpinski-carpet", maps, Aabb::unit(2))
        }
        "sierpinski-gasket" => {
            let half = || rat(1, 2);
            let offsets = [(0, 0), (1, 0), (0, 1)];
            let maps = offsets
                .iter()
                .map(|&(ox, oy)| {
                    AffineMap::diagonal(
                        vec![half(), half()],
                        vec![rat(ox, 2), rat(oy, 2)],
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            IFSystem::new("sierpinski-gasket", maps, Aabb::unit(2))
        }
        other => Err(Error::invalid(format!("unknown preset {other:?}"))),
    }
}

/// Address word `j_1..j_k`; `j_1` is the outermost map of the composition.
/// The empty word addresses the ambient box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(Vec<u8>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn from_symbols(symbols: &[u8]) -> Self {
        Address(symbols.to_vec())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// New address with `j` prepended as the outermost map.
    pub fn prefixed(&self, j: u8) -> Self {
        let mut word = Vec::with_capacity(self.0.len() + 1);
        word.push(j);
        word.extend_from_slice(&self.0);
        Address(word)
    }

    /// Drops the innermost (last) symbol; the containing cell one level up.
    pub fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(Address(self.0[..self.0.len() - 1].to_vec()))
        }
    }
}

impl fmt::Display for Address {
    /// Comma-separated symbols, `-` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "-" {
            return Ok(Address::root());
        }
        let symbols = s
            .split(',')
            .map(|p| {
                p.parse::<u8>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| Error::invalid(format!("bad address symbol {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Address(symbols))
    }
}

/// The level-`k` cover: every address of depth `k` with its exact cell box,
/// sorted by address. Addresses are never merged, even when boxes coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSet {
    level: usize,
    ifs: Arc<IFSystem>,
    cells: Vec<(Address, Aabb)>,
}

impl CellSet {
    /// Level 0: the ambient box under the empty address.
    pub fn level_zero(ifs: Arc<IFSystem>) -> Self {
        let ambient = ifs.ambient().clone();
        CellSet {
            level: 0,
            ifs,
            cells: vec![(Address::root(), ambient)],
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn ifs(&self) -> &Arc<IFSystem> {
        &self.ifs
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells in address order.
    pub fn cells(&self) -> &[(Address, Aabb)] {
        &self.cells
    }

    /// Box of a specific address, by binary search.
    pub fn get(&self, address: &Address) -> Option<&Aabb> {
        self.cells
            .binary_search_by(|(a, _)| a.cmp(address))
            .ok()
            .map(|i| &self.cells[i].1)
    }

    /// Exact centers of all cells, in address order.
    pub fn centers(&self) -> Vec<Point> {
        self.cells.iter().map(|(_, b)| b.center()).collect()
    }

    /// Index of the first (smallest-address) cell containing the point.
    pub fn find_containing(&self, p: &[Rational]) -> Option<usize> {
        self.cells.iter().position(|(_, b)| b.contains_point(p))
    }

    /// True iff the point lies in the union of the cells.
    pub fn contains_point(&self, p: &[Rational]) -> bool {
        self.find_containing(p).is_some()
    }
}

/// One application of the set map `A -> U_j f_j(A)` at the cell level: the
/// input cell at address `w` contributes the cell `f_j(box_w)` at address
/// `j.w` for every map `j`.
pub fn hutchinson_step(ifs: &Arc<IFSystem>, cells: &CellSet) -> Result<CellSet> {
    if **ifs != **cells.ifs() {
        return Err(Error::invalid(
            "cell set was generated by a different system",
        ));
    }
    let mut next = Vec::with_capacity(cells.len() * ifs.map_count());
    for (j, map) in ifs.maps().iter().enumerate() {
        let symbol = (j + 1) as u8;
        for (address, bx) in cells.cells() {
            next.push((address.prefixed(symbol), map.map_box(bx)?));
        }
    }
    // iterating maps outermost keeps the addresses in lexicographic order
    debug_assert!(next.windows(2).all(|w| w[0].0 < w[1].0));
    Ok(CellSet {
        level: cells.level() + 1,
        ifs: cells.ifs().clone(),
        cells: next,
    })
}

/// Checks `m^k` against the cell budget before any allocation happens.
pub fn check_budget(ifs: &IFSystem, k: usize, budget: u64) -> Result<()> {
    let count = BigInt::from(ifs.map_count()).pow(k as u32);
    if count > BigInt::from(budget) {
        return Err(Error::ResourceLimit(format!(
            "level {k} needs {count} cells, budget is {budget}"
        )));
    }
    Ok(())
}

/// The level-`k` cover `X_k`, built by `k` Hutchinson steps from the
/// ambient box.
pub fn iterate_attractor(ifs: &Arc<IFSystem>, k: usize, budget: u64) -> Result<CellSet> {
    check_budget(ifs, k, budget)?;
    let mut cells = CellSet::level_zero(ifs.clone());
    for _ in 0..k {
        cells = hutchinson_step(ifs, &cells)?;
    }
    Ok(cells)
}

/// Exact maximum squared cell diameter of a level.
pub fn max_cell_diameter(cells: &CellSet) -> Rational {
    cells
        .cells()
        .iter()
        .map(|(_, b)| b.diameter_squared())
        .max()
        .expect("cell sets are never empty")
}

/// Hausdorff distances between the cell-center clouds of successive levels:
/// entry `k` is `d_H(centers(X_k), centers(X_{k+1}))` for `k < k_max`.
pub fn convergence_trace(
    ifs: &Arc<IFSystem>,
    k_max: usize,
    budget: u64,
) -> Result<Vec<(usize, SquaredDist)>> {
    check_budget(ifs, k_max, budget)?;
    let mut trace = Vec::with_capacity(k_max);
    let mut cells = CellSet::level_zero(ifs.clone());
    let mut centers = cells.centers();
    for k in 0..k_max {
        let next = hutchinson_step(ifs, &cells)?;
        let next_centers = next.centers();
        trace.push((k, hausdorff_distance(&centers, &next_centers)?));
        cells = next;
        centers = next_centers;
    }
    Ok(trace)
}
