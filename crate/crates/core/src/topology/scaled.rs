//! Integer-scaled view of a cell set.
//!
//! All preset cells at level `k` share the denominator `3^k` (or `2^k` for
//! the gasket), so putting every coordinate on the common denominator turns
//! the intersection and gap arithmetic into small-integer work. Boxes are
//! embedded in the plane; one-dimensional cells get the degenerate interval
//! `[0, 0]` as their second axis, which changes neither adjacency nor gaps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::geom::Aabb;
use crate::rational::Rational;

// Keeps squared gap sums far inside i128.
const MAX_SCALED: i64 = 1 << 31;

pub(crate) struct ScaledBoxes {
    /// `[lx, ly, ux, uy]` per cell, in the input order.
    pub coords: Vec<[i64; 4]>,
    /// Common denominator; true value = integer / scale.
    pub scale: BigInt,
}

pub(crate) fn scale_boxes<'a>(
    boxes: impl Iterator<Item = &'a Aabb> + Clone,
) -> Option<ScaledBoxes> {
    let mut lcm = BigInt::one();
    for b in boxes.clone() {
        for c in b.lower().iter().chain(b.upper()) {
            lcm = lcm.lcm(c.denom());
            if lcm.to_i64()? > MAX_SCALED {
                return None;
            }
        }
    }
    let to_int = |c: &Rational| -> Option<i64> {
        let v = (c.numer() * (&lcm / c.denom())).to_i64()?;
        (v.abs() <= MAX_SCALED).then_some(v)
    };
    let mut coords = Vec::new();
    for b in boxes {
        let mut row = [0i64; 4];
        for (i, c) in b.lower().iter().enumerate() {
            row[i] = to_int(c)?;
        }
        for (i, c) in b.upper().iter().enumerate() {
            row[2 + i] = to_int(c)?;
        }
        coords.push(row);
    }
    Some(ScaledBoxes { coords, scale: lcm })
}

impl ScaledBoxes {
    pub fn touching(&self, i: usize, j: usize) -> bool {
        let a = &self.coords[i];
        let b = &self.coords[j];
        a[0].max(b[0]) <= a[2].min(b[2]) && a[1].max(b[1]) <= a[3].min(b[3])
    }

    /// Exact squared distance between cells `i` and `j`, in scaled units.
    pub fn gap_squared(&self, i: usize, j: usize) -> i128 {
        let a = &self.coords[i];
        let b = &self.coords[j];
        let axis = |al: i64, au: i64, bl: i64, bu: i64| -> i128 {
            let g = (bl - au).max(al - bu).max(0) as i128;
            g * g
        };
        axis(a[0], a[2], b[0], b[2]) + axis(a[1], a[3], b[1], b[3])
    }
}
