//! Window counting on the exact grid.
//!
//! A window is a bounded connected component of the complement of the cell
//! union inside the ambient box. All coordinates are put on their least
//! common denominator, which turns the complement into a union of grid
//! squares; components are counted with 4-adjacency (a corner point shared
//! by two closed cells belongs to the union, so diagonal complement squares
//! are genuinely separated there) and components touching the ambient
//! boundary are discarded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::attractor::CellSet;
use crate::error::{Error, Result};
use crate::geom::Aabb;
use crate::rational::Rational;

/// Hard cap on the number of grid squares; the exact grid for level `k` of
/// a base-3 preset has `9^k` squares, so level 7 is still in range.
const MAX_GRID_SQUARES: u64 = 8_000_000;

pub fn count_windows(cells: &CellSet, ambient: &Aabb) -> Result<usize> {
    if ambient.dim() != 2 || cells.cells().iter().any(|(_, b)| b.dim() != 2) {
        return Err(Error::invalid("window counting is two-dimensional"));
    }

    let mut lcm = BigInt::one();
    let all_coords = cells
        .cells()
        .iter()
        .flat_map(|(_, b)| b.lower().iter().chain(b.upper()))
        .chain(ambient.lower().iter().chain(ambient.upper()));
    for c in all_coords.clone() {
        lcm = lcm.lcm(c.denom());
    }

    let scaled = |c: &Rational, origin: &Rational| -> Result<u64> {
        let v = (c - origin) * Rational::from_integer(lcm.clone());
        debug_assert!(v.is_integer());
        v.to_integer().to_u64().ok_or_else(|| {
            Error::invalid("cell coordinates outside the ambient box")
        })
    };

    let width = scaled(&ambient.upper()[0], &ambient.lower()[0])?;
    let height = scaled(&ambient.upper()[1], &ambient.lower()[1])?;
    if width == 0 || height == 0 {
        return Ok(0);
    }
    if width.checked_mul(height).is_none_or(|n| n > MAX_GRID_SQUARES) {
        return Err(Error::unsupported(format!(
            "cells are not grid-alignable within {MAX_GRID_SQUARES} squares \
             (needed {width} x {height})"
        )));
    }
    let (w, h) = (width as usize, height as usize);

    let mut covered = vec![false; w * h];
    for (address, bx) in cells.cells() {
        let x0 = scaled(&bx.lower()[0], &ambient.lower()[0])? as usize;
        let x1 = scaled(&bx.upper()[0], &ambient.lower()[0])? as usize;
        let y0 = scaled(&bx.lower()[1], &ambient.lower()[1])? as usize;
        let y1 = scaled(&bx.upper()[1], &ambient.lower()[1])? as usize;
        if x1 == x0 || y1 == y0 {
            return Err(Error::unsupported(format!(
                "cell {address} is degenerate; windows are undefined"
            )));
        }
        if x1 > w || y1 > h {
            return Err(Error::invalid(format!(
                "cell {address} leaves the ambient box"
            )));
        }
        for y in y0..y1 {
            covered[y * w + x0..y * w + x1].fill(true);
        }
    }

    // flood fill the uncovered squares with 4-adjacency
    let mut seen = vec![false; w * h];
    let mut windows = 0;
    let mut stack = Vec::new();
    for start in 0..w * h {
        if covered[start] || seen[start] {
            continue;
        }
        let mut touches_boundary = false;
        seen[start] = true;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (x, y) = (idx % w, idx / w);
            if x == 0 || y == 0 || x == w - 1 || y == h - 1 {
                touches_boundary = true;
            }
            let mut visit = |nx: usize, ny: usize, stack: &mut Vec<usize>| {
                let nidx = ny * w + nx;
                if !covered[nidx] && !seen[nidx] {
                    seen[nidx] = true;
                    stack.push(nidx);
                }
            };
            if x > 0 {
                visit(x - 1, y, &mut stack);
            }
            if x + 1 < w {
                visit(x + 1, y, &mut stack);
            }
            if y > 0 {
                visit(x, y - 1, &mut stack);
            }
            if y + 1 < h {
                visit(x, y + 1, &mut stack);
            }
        }
        if !touches_boundary {
            windows += 1;
        }
    }
    Ok(windows)
}
