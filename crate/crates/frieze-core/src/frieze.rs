//! Frieze grids of types A and D.
//!
//! Storage is "se-diagonal": the unit diamond with top `a = (r-1, j+1)` has
//! `b = (r, j)`, `c = (r, j+1)` and bottom `d = (r+1, j)`. In type A the cell
//! `(r, j)` is the arc `(j-1, j+r)`, so row 1 column `j` is the quiddity at `j`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{FriezeError, Result};
use crate::surfaces::{PolygonTriangulation, Triangulated};

pub const LAYOUT: &str = "se-diagonal";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FriezeKind {
    /// `n` nontrivial rows, period `n + 3`.
    TypeA(usize),
    /// `n` nontrivial rows, period `n` or `2n`.
    TypeD(usize),
}

impl FriezeKind {
    pub fn rows(&self) -> usize {
        match *self {
            FriezeKind::TypeA(n) | FriezeKind::TypeD(n) => n,
        }
    }

    pub fn period(&self) -> usize {
        match *self {
            FriezeKind::TypeA(n) => n + 3,
            FriezeKind::TypeD(n) if n % 2 == 0 => n,
            FriezeKind::TypeD(n) => 2 * n,
        }
    }
}

impl fmt::Display for FriezeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FriezeKind::TypeA(n) => write!(f, "A{n}"),
            FriezeKind::TypeD(n) => write!(f, "D{n}"),
        }
    }
}

/// Continuant values `e(x, y)` of a type A frieze read on the strip `x <= y <= x + m`.
///
/// `e(x, x) = 0`, `e(x, x+1) = 1`, `e(x, y+1) = q[y] e(x, y) - e(x, y-1)`; entries
/// are the frieze values of the arcs `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    m: usize,
    table: Vec<Vec<BigInt>>,
}

impl Strip {
    pub fn from_quiddity(q: &[u32]) -> Self {
        let m = q.len();
        let table = (0..m)
            .map(|x| {
                let mut col = vec![BigInt::zero(), BigInt::one()];
                for y in x + 1..x + m {
                    let next = BigInt::from(q[y % m]) * &col[y - x] - &col[y - x - 1];
                    col.push(next);
                }
                col
            })
            .collect();
        Strip { m, table }
    }

    pub fn period(&self) -> usize {
        self.m
    }

    /// Defined for `0 <= y - x <= m`; any `x` by periodicity.
    pub fn get(&self, x: i64, y: i64) -> &BigInt {
        let m = self.m as i64;
        let k = y - x;
        assert!((0..=m).contains(&k), "strip entry ({x},{y}) out of range");
        &self.table[x.rem_euclid(m) as usize][k as usize]
    }

    pub fn try_get(&self, x: i64, y: i64) -> Option<&BigInt> {
        let k = y - x;
        (0..=self.m as i64).contains(&k).then(|| self.get(x, y))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriezeGrid {
    kind: FriezeKind,
    rows: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub column: usize,
}

impl FriezeGrid {
    /// `rows[r - 1]` is nontrivial row `r`, one full period long.
    pub fn new(kind: FriezeKind, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.len() != kind.rows() {
            return Err(FriezeError::ShapeMismatch(format!(
                "{kind} needs {} rows, got {}",
                kind.rows(),
                rows.len()
            )));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != kind.period()) {
            return Err(FriezeError::ShapeMismatch(format!(
                "row {} has length {}, period is {}",
                r + 1,
                rows[r].len(),
                kind.period()
            )));
        }
        Ok(FriezeGrid { kind, rows })
    }

    pub fn kind(&self) -> FriezeKind {
        self.kind
    }

    pub fn period(&self) -> usize {
        self.kind.period()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Nontrivial row `r >= 1`.
    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.rows[r - 1]
    }

    /// Entry including the trivial border rows; zero outside.
    pub fn entry(&self, r: i64, j: i64) -> BigInt {
        let n = self.kind.rows() as i64;
        let top = match self.kind {
            FriezeKind::TypeA(_) => n + 1,
            FriezeKind::TypeD(_) => n,
        };
        match r {
            0 => BigInt::one(),
            r if r >= 1 && r <= n => self.rows[r as usize - 1][j.rem_euclid(self.period() as i64) as usize].clone(),
            r if r == top => BigInt::one(),
            _ => BigInt::zero(),
        }
    }

    pub fn get(&self, cell: Cell) -> &BigInt {
        &self.rows[cell.row - 1][cell.column % self.period()]
    }

    /// Column `j` of the result is column `j + k` of `self`.
    pub fn shifted(&self, k: usize) -> FriezeGrid {
        let p = self.period();
        FriezeGrid {
            kind: self.kind,
            rows: self
                .rows
                .iter()
                .map(|r| (0..p).map(|j| r[(j + k) % p].clone()).collect())
                .collect(),
        }
    }

    pub fn with_last_rows_swapped(&self) -> FriezeGrid {
        let mut rows = self.rows.clone();
        let n = rows.len();
        if n >= 2 {
            rows.swap(n - 2, n - 1);
        }
        FriezeGrid { kind: self.kind, rows }
    }

    pub fn max_entry(&self) -> BigInt {
        self.rows.iter().flatten().max().cloned().unwrap_or_else(BigInt::one)
    }
}

/// Builds the frieze by the diamond rule `d = (bc - 1) / a`.
pub fn frieze_a_from_quiddity(q: &[u32]) -> Result<FriezeGrid> {
    let m = q.len();
    if m < 4 {
        return Err(FriezeError::NotAQuiddity(format!("length {m} is below 4")));
    }
    if q.contains(&0) {
        return Err(FriezeError::NotAQuiddity("zero entry".into()));
    }
    let depth = m - 3;
    let mut above: Vec<BigInt> = vec![BigInt::one(); m];
    let mut cur: Vec<BigInt> = q.iter().map(|&x| BigInt::from(x)).collect();
    let mut rows = Vec::with_capacity(depth);
    for r in 1..=depth {
        if cur.iter().all(|x| x.is_one()) {
            return Err(FriezeError::NotAQuiddity(format!("row of 1s at depth {r}, expected {}", depth + 1)));
        }
        let mut next = Vec::with_capacity(m);
        for j in 0..m {
            let num = &cur[j] * &cur[(j + 1) % m] - BigInt::one();
            let a = &above[(j + 1) % m];
            let (d, rem) = num.div_rem(a);
            if !rem.is_zero() || !d.is_positive() {
                return Err(FriezeError::NotAQuiddity(format!(
                    "row {} column {j}: ({num}) / {a} is not a positive integer",
                    r + 1
                )));
            }
            next.push(d);
        }
        above = std::mem::replace(&mut cur, next);
        rows.push(above.clone());
    }
    if !cur.iter().all(|x| x.is_one()) {
        return Err(FriezeError::NotAQuiddity(format!("no row of 1s at depth {}", depth + 1)));
    }
    FriezeGrid::new(FriezeKind::TypeA(depth), rows)
}

/// Frieze of a triangulated polygon.
pub fn frieze_a(t: &PolygonTriangulation) -> Result<FriezeGrid> {
    frieze_a_from_quiddity(&t.quiddity()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FriezeViolation {
    Shape(String),
    NonPositive { row: usize, column: usize },
    /// Diamond whose `b` sits at `(row, column)`.
    Diamond { row: usize, column: usize },
    LastRows { row: usize, column: usize },
    Fork { column: usize },
    Twist { row: usize, column: usize },
}

pub fn validate_frieze(f: &FriezeGrid) -> std::result::Result<(), Vec<FriezeViolation>> {
    let mut bad = Vec::new();
    let kind = f.kind();
    let n = kind.rows();
    let p = f.period();
    if f.rows.len() != n || f.rows.iter().any(|r| r.len() != p) {
        return Err(vec![FriezeViolation::Shape(format!("{kind} with ragged rows"))]);
    }
    for (r, row) in f.rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_positive() {
                bad.push(FriezeViolation::NonPositive { row: r + 1, column: j });
            }
        }
    }
    let e = |r: usize, j: usize| f.entry(r as i64, j as i64);
    let diamond_rows = match kind {
        FriezeKind::TypeA(_) => 1..=n,
        FriezeKind::TypeD(_) => 1..=n.saturating_sub(3),
    };
    for r in diamond_rows {
        for j in 0..p {
            if e(r, j) * e(r, j + 1) - e(r - 1, j + 1) * e(r + 1, j) != BigInt::one() {
                bad.push(FriezeViolation::Diamond { row: r, column: j });
            }
        }
    }
    if let FriezeKind::TypeD(_) = kind {
        for j in 0..p {
            let a = e(n - 2, j + 1);
            for r in [n - 1, n] {
                if e(r, j) * e(r, j + 1) - &a != BigInt::one() {
                    bad.push(FriezeViolation::LastRows { row: r, column: j });
                }
            }
            if e(n - 2, j) * e(n - 2, j + 1) - e(n - 3, j + 1) * e(n - 1, j) * e(n, j) != BigInt::one() {
                bad.push(FriezeViolation::Fork { column: j });
            }
        }
        if n % 2 == 1 {
            for j in 0..n {
                for r in 1..=n - 2 {
                    if e(r, j) != e(r, j + n) {
                        bad.push(FriezeViolation::Twist { row: r, column: j });
                    }
                }
                if e(n - 1, j + n) != e(n, j) || e(n, j + n) != e(n - 1, j) {
                    bad.push(FriezeViolation::Twist { row: n - 1, column: j });
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// Cell of the arc `(i, j)` of the `m`-gon; boundary segments land in the trivial rows `0` and `m - 2`.
pub fn arc_position_a(m: usize, arc: (usize, usize)) -> Result<Cell> {
    let (i, j) = if arc.0 <= arc.1 { arc } else { (arc.1, arc.0) };
    if j >= m || i == j {
        return Err(FriezeError::NotAnArc(arc.0 as i64, arc.1 as i64, m));
    }
    Ok(Cell {
        row: j - i - 1,
        column: (i + 1) % m,
    })
}

/// Inverse of [`arc_position_a`] on one period.
pub fn arc_at_a(m: usize, cell: Cell) -> Result<(usize, usize)> {
    if cell.row > m - 2 || cell.column >= m {
        return Err(FriezeError::NotAnArc(cell.row as i64, cell.column as i64, m));
    }
    let x = (cell.column + m - 1) % m;
    let y = (cell.column + cell.row) % m;
    Ok((x.min(y), x.max(y)))
}

/// Equal after a column shift, and in type D possibly after swapping the last two rows.
pub fn equivalent(f: &FriezeGrid, g: &FriezeGrid) -> bool {
    if f.kind() != g.kind() {
        return false;
    }
    let candidates: Vec<FriezeGrid> = match f.kind() {
        FriezeKind::TypeA(_) => vec![g.clone()],
        FriezeKind::TypeD(_) => vec![g.clone(), g.with_last_rows_swapped()],
    };
    (0..f.period()).any(|k| candidates.iter().any(|c| c.shifted(k).rows == f.rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hexagon_rows() {
        let f = frieze_a_from_quiddity(&[1, 3, 2, 1, 3, 2]).unwrap();
        assert_eq!(f.row(1), ints(&[1, 3, 2, 1, 3, 2]).as_slice());
        assert_eq!(f.row(2), ints(&[2, 5, 1, 2, 5, 1]).as_slice());
        assert_eq!(f.row(3), ints(&[3, 2, 1, 3, 2, 1]).as_slice());
        assert!(validate_frieze(&f).is_ok());
    }

    #[test]
    fn pentagon_fan_rows() {
        let f = frieze_a_from_quiddity(&[3, 1, 2, 2, 1]).unwrap();
        assert_eq!(f.row(2), ints(&[2, 1, 3, 1, 2]).as_slice());
    }

    #[test]
    fn degenerate_quiddities() {
        assert!(matches!(frieze_a_from_quiddity(&[1, 1, 1]), Err(FriezeError::NotAQuiddity(_))));
        assert!(matches!(frieze_a_from_quiddity(&[2, 2, 2, 2]), Err(FriezeError::NotAQuiddity(_))));
        assert!(frieze_a_from_quiddity(&[1, 2, 1, 2]).is_ok());
    }

    #[test]
    fn incremented_entry_breaks_its_diamonds() {
        let f = frieze_a_from_quiddity(&[1, 3, 2, 1, 3, 2]).unwrap();
        let mut rows = f.rows().to_vec();
        rows[1][2] += 1;
        let g = FriezeGrid::new(f.kind(), rows).unwrap();
        let bad = validate_frieze(&g).unwrap_err();
        assert_eq!(bad.len(), 4);
    }

    #[test]
    fn arc_position_matches_fan_ones() {
        let f = frieze_a(&PolygonTriangulation::fan(6, 0)).unwrap();
        for d in [(0, 2), (0, 3), (0, 4)] {
            let c = arc_position_a(6, d).unwrap();
            assert_eq!(f.get(c), &BigInt::one());
        }
        assert_eq!(arc_position_a(6, (0, 2)).unwrap(), Cell { row: 1, column: 1 });
        assert_eq!(arc_position_a(6, (0, 1)).unwrap().row, 0);
    }

    #[test]
    fn heptagon_position_round_trip() {
        for i in 0..7 {
            for j in i + 1..7 {
                let c = arc_position_a(7, (i, j)).unwrap();
                assert_eq!(arc_at_a(7, c).unwrap(), (i, j));
            }
        }
    }

    #[test]
    fn strip_agrees_with_grid() {
        let q = [1, 3, 2, 1, 3, 2];
        let s = Strip::from_quiddity(&q);
        let f = frieze_a_from_quiddity(&q).unwrap();
        for r in 1..=3 {
            for j in 0..6i64 {
                assert_eq!(s.get(j - 1, j + r), &f.entry(r, j));
            }
        }
        assert!(s.get(2, 8).is_zero());
    }

    #[test]
    fn translation_equivalence() {
        let f = frieze_a_from_quiddity(&[1, 3, 2, 1, 3, 2]).unwrap();
        assert!(equivalent(&f, &f.shifted(1)));
        let g = frieze_a_from_quiddity(&[4, 1, 2, 2, 2, 1]).unwrap();
        assert!(!equivalent(&f, &g));
    }
}
