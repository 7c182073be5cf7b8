//! Exact rational points, boxes and affine contractions.
//!
//! The ambient spaces are intervals (`n = 1`) and squares (`n = 2`). All
//! coordinates are rationals and every predicate below is decided exactly;
//! distances are carried around as *squared* values so no square root is
//! ever needed.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, sum_of_squares, to_f64, Rational};

/// A point is a short coordinate vector; dimension is the length.
pub type Point = Vec<Rational>;

/// Exact squared Euclidean distance between equal-dimension points.
pub fn dist_squared(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let diffs: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    Ok(sum_of_squares(&diffs))
}

/// A squared length plus a lossy decimal view of its square root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SquaredDist {
    pub squared: Rational,
}

impl SquaredDist {
    pub fn new(squared: Rational) -> Self {
        SquaredDist { squared }
    }

    pub fn zero() -> Self {
        SquaredDist { squared: Rational::zero() }
    }

    /// Decimal approximation of the (unsquared) distance; display only.
    pub fn approx(&self) -> f64 {
        to_f64(&self.squared).sqrt()
    }
}

/// Closed axis-aligned box `[lower, upper]`, possibly degenerate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Aabb {
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

impl Aabb {
    pub fn new(lower: Vec<Rational>, upper: Vec<Rational>) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::invalid("box corners must share a positive dimension"));
        }
        for (l, u) in lower.iter().zip(&upper) {
            if l > u {
                return Err(Error::invalid("box has lower > upper on some axis"));
            }
        }
        Ok(Aabb { lower, upper })
    }

    /// The unit box `[0,1]^dim`.
    pub fn unit(dim: usize) -> Self {
        Aabb {
            lower: vec![Rational::zero(); dim],
            upper: vec![rat_int(1); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    /// Squared Euclidean length of `upper - lower`.
    pub fn diameter_squared(&self) -> Rational {
        let side: Vec<Rational> = self.upper.iter().zip(&self.lower).map(|(u, l)| u - l).collect();
        sum_of_squares(&side)
    }

    pub fn center(&self) -> Point {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (l + u) / rat_int(2))
            .collect()
    }

    /// Closed-box membership, exact.
    pub fn contains_point(&self, p: &[Rational]) -> bool {
        p.len() == self.dim()
            && self
                .lower
                .iter()
                .zip(&self.upper)
                .zip(p)
                .all(|((l, u), x)| l <= x && x <= u)
    }

    /// `other` lies entirely inside `self` (closed containment).
    pub fn contains_box(&self, other: &Aabb) -> bool {
        other.dim() == self.dim()
            && self
                .lower
                .iter()
                .zip(&other.lower)
                .all(|(l, ol)| l <= ol)
            && self.upper.iter().zip(&other.upper).all(|(u, ou)| ou <= u)
    }

    /// Closed boxes intersect iff they overlap or touch on every axis.
    pub fn intersects(&self, other: &Aabb) -> bool {
        self.dim() == other.dim()
            && self
                .lower
                .iter()
                .zip(&self.upper)
                .zip(other.lower.iter().zip(&other.upper))
                .all(|((l1, u1), (l2, u2))| l1.max(l2) <= u1.min(u2))
    }

    /// The (possibly degenerate) common box, when the boxes touch.
    pub fn intersection(&self, other: &Aabb) -> Option<Aabb> {
        if !self.intersects(other) {
            return None;
        }
        let lower: Vec<Rational> = self
            .lower
            .iter()
            .zip(&other.lower)
            .map(|(a, b)| a.max(b).clone())
            .collect();
        let upper: Vec<Rational> = self
            .upper
            .iter()
            .zip(&other.upper)
            .map(|(a, b)| a.min(b).clone())
            .collect();
        Some(Aabb { lower, upper })
    }

    /// Exact squared distance between two closed boxes; zero iff they touch.
    pub fn gap_squared(&self, other: &Aabb) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.dim() {
            let g1 = &other.lower[i] - &self.upper[i];
            let g2 = &self.lower[i] - &other.upper[i];
            let g = if g1.is_positive() {
                g1
            } else if g2.is_positive() {
                g2
            } else {
                continue;
            };
            acc += &g * &g;
        }
        acc
    }
}

/// Affine contraction `x -> Ax + b` with an exact Lipschitz constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Vec<Vec<Rational>>,
    offset: Vec<Rational>,
    lipschitz: Rational,
}

impl AffineMap {
    /// Diagonal map from its diagonal entries; the Lipschitz constant is
    /// `max |entry|` exactly and must land in `(0, 1)`.
    pub fn diagonal(diag: Vec<Rational>, offset: Vec<Rational>) -> Result<Self> {
        if diag.is_empty() || diag.len() != offset.len() {
            return Err(Error::invalid("diagonal and offset dimensions differ"));
        }
        let n = diag.len();
        let lipschitz = diag
            .iter()
            .map(|d| d.abs())
            .max()
            .expect("non-empty diagonal");
        let mut matrix = vec![vec![Rational::zero(); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            matrix[i][i] = d;
        }
        Self::with_verified_lipschitz(matrix, offset, lipschitz)
    }

    /// General map with a caller-supplied Lipschitz bound. The bound is
    /// verified exactly: for diagonal matrices against `max |entry|`, for
    /// 2x2 matrices against the largest eigenvalue of `A^T A` via the
    /// rational inequality `2c >= tr` and `c^2 - c*tr + det >= 0` with
    /// `c = bound^2`.
    pub fn general(
        matrix: Vec<Vec<Rational>>,
        offset: Vec<Rational>,
        lipschitz_bound: Rational,
    ) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || offset.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("matrix must be square and match the offset"));
        }
        if is_diagonal(&matrix) {
            let exact: Rational = (0..n).map(|i| matrix[i][i].abs()).max().unwrap();
            if lipschitz_bound < exact {
                return Err(Error::invalid(format!(
                    "supplied Lipschitz bound {} is below the exact operator norm {}",
                    lipschitz_bound, exact
                )));
            }
            return Self::with_verified_lipschitz(matrix, offset, exact);
        }
        match n {
            1 => unreachable!("1x1 matrices are diagonal"),
            2 => {
                // Gram matrix of A
                let dot = |c1: usize, c2: usize| -> Rational {
                    &matrix[0][c1] * &matrix[0][c2] + &matrix[1][c1] * &matrix[1][c2]
                };
                let (g00, g01, g11) = (dot(0, 0), dot(0, 1), dot(1, 1));
                let tr = &g00 + &g11;
                let det = &g00 * &g11 - &g01 * &g01;
                let c = &lipschitz_bound * &lipschitz_bound;
                let valid = rat_int(2) * &c >= tr && &c * &c - &c * (&g00 + &g11) + det >= Rational::zero();
                if !valid {
                    return Err(Error::invalid(format!(
                        "supplied Lipschitz bound {} is below the operator norm of the matrix",
                        lipschitz_bound
                    )));
                }
                Self::with_verified_lipschitz(matrix, offset, lipschitz_bound)
            }
            _ => Err(Error::unsupported(
                "general matrices are only handled in dimensions 1 and 2",
            )),
        }
    }

    fn with_verified_lipschitz(
        matrix: Vec<Vec<Rational>>,
        offset: Vec<Rational>,
        lipschitz: Rational,
    ) -> Result<Self> {
        if !lipschitz.is_positive() || lipschitz >= rat_int(1) {
            return Err(Error::invalid(format!(
                "map is not a contraction: lipschitz {}",
                lipschitz
            )));
        }
        Ok(AffineMap { matrix, offset, lipschitz })
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn lipschitz(&self) -> &Rational {
        &self.lipschitz
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn is_diagonal(&self) -> bool {
        is_diagonal(&self.matrix)
    }

    /// Diagonal entries, when the matrix is diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<Rational>> {
        if self.is_diagonal() {
            Some((0..self.dim()).map(|i| self.matrix[i][i].clone()).collect())
        } else {
            None
        }
    }

    /// Exact determinant (dimensions 1 and 2).
    pub fn determinant(&self) -> Rational {
        match self.dim() {
            1 => self.matrix[0][0].clone(),
            2 => &self.matrix[0][0] * &self.matrix[1][1] - &self.matrix[0][1] * &self.matrix[1][0],
            n => unreachable!("unsupported dimension {n}"),
        }
    }

    /// Exact image `Ax + b`.
    pub fn apply(&self, point: &[Rational]) -> Result<Point> {
        let n = self.dim();
        if point.len() != n {
            return Err(Error::invalid(format!(
                "dimension mismatch: map is {n}-dimensional, point is {}-dimensional",
                point.len()
            )));
        }
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = self.offset[i].clone();
            for j in 0..n {
                if !self.matrix[i][j].is_zero() {
                    acc += &self.matrix[i][j] * &point[j];
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Exact image of a box. Only diagonal matrices with strictly positive
    /// entries keep boxes axis-aligned without reordering corners, so
    /// anything else is rejected.
    pub fn map_box(&self, b: &Aabb) -> Result<Aabb> {
        let n = self.dim();
        if b.dim() != n {
            return Err(Error::invalid(format!(
                "dimension mismatch: map is {n}-dimensional, box is {}-dimensional",
                b.dim()
            )));
        }
        let diag = self.diagonal_entries().ok_or_else(|| {
            Error::unsupported("box images need a diagonal matrix")
        })?;
        if diag.iter().any(|d| !d.is_positive()) {
            return Err(Error::unsupported(
                "box images need strictly positive diagonal entries",
            ));
        }
        let lower: Vec<Rational> = (0..n)
            .map(|i| &diag[i] * &b.lower()[i] + &self.offset[i])
            .collect();
        let upper: Vec<Rational> = (0..n)
            .map(|i| &diag[i] * &b.upper()[i] + &self.offset[i])
            .collect();
        Aabb::new(lower, upper)
    }

    /// The unique fixed point of the contraction, solved exactly from
    /// `(I - A)x = b`.
    pub fn fixed_point(&self) -> Result<Point> {
        let m = &self.matrix;
        match self.dim() {
            1 => {
                let denom = rat_int(1) - &m[0][0];
                if denom.is_zero() {
                    return Err(Error::Internal("singular I - A for a contraction".into()));
                }
                Ok(vec![&self.offset[0] / denom])
            }
            2 => {
                let a = rat_int(1) - &m[0][0];
                let b = -m[0][1].clone();
                let c = -m[1][0].clone();
                let d = rat_int(1) - &m[1][1];
                let det = &a * &d - &b * &c;
                if det.is_zero() {
                    return Err(Error::Internal("singular I - A for a contraction".into()));
                }
                let (e, f) = (&self.offset[0], &self.offset[1]);
                let x = (&d * e - &b * f) / &det;
                let y = (&a * f - &c * e) / &det;
                Ok(vec![x, y])
            }
            n => Err(Error::unsupported(format!(
                "fixed points are only solved in dimensions 1 and 2, got {n}"
            ))),
        }
    }
}

fn is_diagonal(matrix: &[Vec<Rational>]) -> bool {
    matrix
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, v)| i == j || v.is_zero()))
}
