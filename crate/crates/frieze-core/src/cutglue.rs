//! Cutting a punctured disk along a radius, the doubled polygon and the glued pattern.
//!
//! The cut polygon `S` for the radius at `v` has vertices `0 = v` (first copy),
//! `1..n-1 = v+1..v+n-1`, `n = v` (second copy) and `n+1` = the puncture. The doubled
//! polygon on `2n+2` vertices has the puncture at `0`; the first copy of `S` sits on
//! `0..=n+1` via `t -> t+1`, the second on `0, n+1..=2n+1` via `t -> t+n+1`, and the
//! cut arc becomes the diameter `(0, n+1)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{FriezeError, Result};
use crate::frieze::{frieze_a_from_quiddity, FriezeGrid, FriezeKind, Strip};
use crate::surfaces::{PolygonTriangulation, PuncturedArc, PuncturedTriangulation, Triangulated};

/// Diagonals of the cut polygon for the radius at `v`.
pub fn cut_polygon(t: &PuncturedTriangulation, v: usize) -> Result<PolygonTriangulation> {
    let n = t.size();
    if !t.contains(&PuncturedArc::Radius(v)) {
        return Err(FriezeError::NotInTriangulation(PuncturedArc::Radius(v).to_string()));
    }
    let mut d = Vec::with_capacity(n - 1);
    for a in t.arcs() {
        if *a != PuncturedArc::Radius(v) {
            d.push(cut_diagonal(n, v, a)?);
        }
    }
    Ok(PolygonTriangulation::new(n + 2, d))
}

/// Diagonal of the cut polygon representing `arc`.
pub fn cut_diagonal(n: usize, v: usize, arc: &PuncturedArc) -> Result<(usize, usize)> {
    let rel = |x: usize| (x + n - v) % n;
    match *arc {
        PuncturedArc::Radius(w) if w == v => Err(FriezeError::ArcIsCutArc(*arc)),
        PuncturedArc::Radius(w) => Ok((rel(w), n + 1)),
        PuncturedArc::Loop(w) if w == v => Ok((0, n)),
        PuncturedArc::Loop(_) => Err(FriezeError::InvalidTriangulation(vec![
            crate::surfaces::Violation::LoopWithoutRadius(v),
        ])),
        PuncturedArc::Peripheral(a, b) => {
            let (x, mut y) = (rel(a), rel(b));
            if y == 0 {
                y = n;
            }
            if x < y {
                Ok((x, y))
            } else {
                Err(FriezeError::Parse(format!("{arc} crosses the cut at {v}")))
            }
        }
    }
}

/// Arc of the punctured disk for a diagonal of the cut polygon.
pub fn uncut_diagonal(n: usize, v: usize, d: (usize, usize)) -> PuncturedArc {
    let (x, y) = if d.0 <= d.1 { d } else { (d.1, d.0) };
    let orig = |t: usize| (v + t) % n;
    if y == n + 1 {
        PuncturedArc::Radius(orig(x))
    } else if (x, y) == (0, n) {
        PuncturedArc::Loop(v)
    } else {
        PuncturedArc::Peripheral(orig(x), orig(y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutParameters {
    pub radius: usize,
    pub a1: u32,
    pub d: u32,
    pub b: u32,
    pub c: u32,
}

fn expect_radius(t: &PuncturedTriangulation, i: &PuncturedArc) -> Result<usize> {
    match *i {
        PuncturedArc::Radius(v) if t.contains(i) => Ok(v),
        PuncturedArc::Radius(_) => Err(FriezeError::NotInTriangulation(i.to_string())),
        _ => Err(FriezeError::NotARadius(*i)),
    }
}

pub fn cut_parameters(t: &PuncturedTriangulation, i: &PuncturedArc) -> Result<CutParameters> {
    let v = expect_radius(t, i)?;
    let n = t.size();
    let qs = cut_polygon(t, v)?.quiddity()?;
    Ok(CutParameters {
        radius: v,
        a1: t.quiddity()?[v],
        d: t.puncture_degree()? as u32,
        b: qs[0],
        c: qs[n],
    })
}

/// The quiddity `(2d, b, a_{v+1}..a_{v+n-1}, a_v, a_{v+1}..a_{v+n-1}, c)` of the doubled polygon.
pub fn tilde_quiddity(t: &PuncturedTriangulation, p: &CutParameters) -> Result<Vec<u32>> {
    let n = t.size();
    let q = t.quiddity()?;
    let v = p.radius;
    let block: Vec<u32> = (1..n).map(|k| q[(v + k) % n]).collect();
    let mut out = vec![2 * p.d, p.b];
    out.extend(&block);
    out.push(q[v]);
    out.extend(&block);
    out.push(p.c);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sheet {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutLabel {
    Cut,
    Copy { arc: PuncturedArc, sheet: Sheet },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSurface {
    pub n: usize,
    pub radius: usize,
    pub tilde: PolygonTriangulation,
    pub labels: BTreeMap<(usize, usize), CutLabel>,
}

impl CutSurface {
    pub const PUNCTURE: usize = 0;

    pub fn m(&self) -> usize {
        2 * self.n + 2
    }

    pub fn diameter(&self) -> (usize, usize) {
        (0, self.n + 1)
    }

    /// Vertex of the doubled polygon for vertex `t` of the cut polygon on a sheet.
    pub fn sheet_vertex(&self, sheet: Sheet, t: usize) -> usize {
        let n = self.n;
        match (sheet, t) {
            (_, t) if t == n + 1 => 0,
            (Sheet::Alpha, t) => t + 1,
            (Sheet::Beta, t) => t + n + 1,
        }
    }

    /// Boundary vertex of the disk under a vertex of the doubled polygon.
    pub fn original_vertex(&self, x: usize) -> Option<usize> {
        let n = self.n;
        match x % self.m() {
            0 => None,
            x if x <= n + 1 => Some((self.radius + x - 1) % n),
            x => Some((self.radius + x - n - 1) % n),
        }
    }

    /// Lift of an arc of the disk to one sheet.
    pub fn lift(&self, arc: &PuncturedArc, sheet: Sheet) -> Result<(usize, usize)> {
        if *arc == PuncturedArc::Radius(self.radius) {
            return Ok(self.diameter());
        }
        let d = cut_diagonal(self.n, self.radius, arc)?;
        let (x, y) = (self.sheet_vertex(sheet, d.0), self.sheet_vertex(sheet, d.1));
        Ok((x.min(y), x.max(y)))
    }

    /// Checks that each arc of the disk has one lift per sheet and that the lifts are exchanged by the sheet swap.
    pub fn check_symmetry(&self) -> Result<()> {
        let mut seen: BTreeMap<PuncturedArc, Vec<(Sheet, (usize, usize))>> = BTreeMap::new();
        for (d, l) in &self.labels {
            if let CutLabel::Copy { arc, sheet } = l {
                seen.entry(*arc).or_default().push((*sheet, *d));
            }
        }
        for (arc, lifts) in &seen {
            let ok = lifts.len() == 2
                && lifts.iter().any(|(s, d)| *s == Sheet::Alpha && Ok(*d) == self.lift(arc, Sheet::Alpha))
                && lifts.iter().any(|(s, d)| *s == Sheet::Beta && Ok(*d) == self.lift(arc, Sheet::Beta));
            if !ok {
                return Err(FriezeError::SymmetryViolation(format!("lifts of {arc}: {lifts:?}")));
            }
        }
        if seen.len() != self.n - 1 {
            return Err(FriezeError::SymmetryViolation(format!("{} arcs lifted, expected {}", seen.len(), self.n - 1)));
        }
        Ok(())
    }

    pub fn frieze(&self) -> Result<FriezeGrid> {
        frieze_a_from_quiddity(&self.tilde.quiddity()?)
    }

    pub fn strip(&self) -> Result<Strip> {
        Ok(Strip::from_quiddity(&self.tilde.quiddity()?))
    }
}

pub fn cut_surface(t: &PuncturedTriangulation, i: &PuncturedArc) -> Result<CutSurface> {
    t.validate().map_err(FriezeError::InvalidTriangulation)?;
    let v = expect_radius(t, i)?;
    let n = t.size();
    let s = cut_polygon(t, v)?;
    let mut cs = CutSurface {
        n,
        radius: v,
        tilde: PolygonTriangulation::new(2 * n + 2, [(0, n + 1)]),
        labels: BTreeMap::new(),
    };
    cs.labels.insert((0, n + 1), CutLabel::Cut);
    let mut diagonals = vec![(0, n + 1)];
    for &d in s.diagonals() {
        let arc = uncut_diagonal(n, v, d);
        for sheet in [Sheet::Alpha, Sheet::Beta] {
            let (x, y) = (cs.sheet_vertex(sheet, d.0), cs.sheet_vertex(sheet, d.1));
            let e = (x.min(y), x.max(y));
            diagonals.push(e);
            cs.labels.insert(e, CutLabel::Copy { arc, sheet });
        }
    }
    cs.tilde = PolygonTriangulation::new(2 * n + 2, diagonals);
    Ok(cs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueSource {
    TypeD,
    /// Read from the doubled polygon's frieze with the puncture at column `anchor`.
    Tilde { anchor: usize },
    PatternG,
}

/// Rows `1..n-1` of a type D frieze with the last two rows multiplied together, period `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedPattern {
    pub n: usize,
    /// `rows[r - 1][j]` for `r = 1..n-1`, `j = 0..n`.
    pub rows: Vec<Vec<BigInt>>,
    pub source: GlueSource,
}

impl GluedPattern {
    pub fn entry(&self, r: usize, j: i64) -> &BigInt {
        &self.rows[r - 1][j.rem_euclid(self.n as i64) as usize]
    }

    /// Moves column `0` to column `k`.
    pub fn aligned_to(&self, k: usize) -> GluedPattern {
        let n = self.n;
        GluedPattern {
            n,
            rows: self
                .rows
                .iter()
                .map(|r| (0..n).map(|j| r[(j + n - k % n) % n].clone()).collect())
                .collect(),
            source: self.source,
        }
    }

    /// Diamond rule above the bottom row.
    pub fn check(&self) -> Result<()> {
        let n = self.n;
        let e = |r: usize, j: usize| -> BigInt {
            if r == 0 {
                BigInt::one()
            } else {
                self.entry(r, j as i64).clone()
            }
        };
        for r in 1..n.saturating_sub(2) {
            for j in 0..n {
                if e(r, j) * e(r, j + 1) - e(r - 1, j + 1) * e(r + 1, j) != BigInt::one() {
                    return Err(FriezeError::ShapeMismatch(format!("diamond at row {r} column {j}")));
                }
            }
        }
        Ok(())
    }
}

/// The glued region of the doubled polygon's frieze `F~` of type `A_{2n-1}`.
pub fn extract_glued_region(tilde: &FriezeGrid, n: usize) -> Result<GluedPattern> {
    if tilde.kind() != FriezeKind::TypeA(2 * n - 1) {
        return Err(FriezeError::ShapeMismatch(format!("expected A{} for n = {n}, got {}", 2 * n - 1, tilde.kind())));
    }
    let m = 2 * n + 2;
    let q = tilde.row(1);
    let at = |s: usize, k: usize| &q[(s + k) % m];
    let anchor = (0..m)
        .find(|&s| {
            (2..=n).all(|k| at(s, k) == at(s, k + n))
                && at(s, 0).is_even()
                && at(s, 1) + at(s, 2 * n + 1) == *at(s, n + 1)
        })
        .ok_or_else(|| FriezeError::ShapeMismatch("no repeated quiddity block".into()))?;
    let rows = (1..n)
        .map(|r| (0..n).map(|k| tilde.entry(r as i64, (anchor + k + 2) as i64)).collect())
        .collect();
    let g = GluedPattern {
        n,
        rows,
        source: GlueSource::Tilde { anchor },
    };
    g.check()?;
    Ok(g)
}

pub fn glued_pattern(f: &FriezeGrid) -> Result<GluedPattern> {
    let n = match f.kind() {
        FriezeKind::TypeD(n) => n,
        k => return Err(FriezeError::ShapeMismatch(format!("glued pattern of {k}"))),
    };
    let mut rows: Vec<Vec<BigInt>> = (1..=n - 2).map(|r| f.row(r)[..n].to_vec()).collect();
    rows.push((0..n).map(|j| &f.row(n - 1)[j] * &f.row(n)[j]).collect());
    Ok(GluedPattern {
        n,
        rows,
        source: GlueSource::TypeD,
    })
}

/// Splits the bottom row into the last two rows, with a 1 in row `n` at `seed_column`.
pub fn unglue(g: &GluedPattern, seed_column: usize) -> Result<FriezeGrid> {
    let n = g.n;
    let kind = FriezeKind::TypeD(n);
    let per = kind.period();
    let mut top = vec![BigInt::zero(); per];
    let mut bottom = vec![BigInt::zero(); per];
    let c = seed_column % per;
    bottom[c] = BigInt::one();
    top[c] = g.entry(n - 1, c as i64).clone();
    let mut j = c;
    for _ in 1..per {
        let left = (j + per - 1) % per;
        let num = BigInt::one() + g.entry(n - 2, j as i64);
        for row in [&mut top, &mut bottom] {
            let (x, rem) = num.div_rem(&row[j]);
            if !rem.is_zero() {
                return Err(FriezeError::NonIntegralStep {
                    column: left,
                    numerator: num.to_string(),
                    denominator: row[j].to_string(),
                });
            }
            row[left] = x;
        }
        j = left;
    }
    let mut rows: Vec<Vec<BigInt>> = (1..=n - 2)
        .map(|r| (0..per).map(|j| g.entry(r, j as i64).clone()).collect())
        .collect();
    rows.push(top);
    rows.push(bottom);
    let f = FriezeGrid::new(kind, rows)?;
    if let Err(v) = crate::frieze::validate_frieze(&f) {
        return Err(FriezeError::ShapeMismatch(format!("unglued frieze fails {:?}", v[0])));
    }
    if glued_pattern(&f)?.rows != g.rows {
        return Err(FriezeError::ShapeMismatch("unglued frieze does not glue back".into()));
    }
    Ok(f)
}

/// Type D frieze of a punctured triangulation, cut along its first radius.
pub fn frieze_d(t: &PuncturedTriangulation) -> Result<FriezeGrid> {
    t.validate().map_err(FriezeError::InvalidTriangulation)?;
    frieze_d_with_cut(t, t.radii()[0])
}

pub fn frieze_d_with_cut(t: &PuncturedTriangulation, v: usize) -> Result<FriezeGrid> {
    let cs = cut_surface(t, &PuncturedArc::Radius(v))?;
    let g = extract_glued_region(&cs.frieze()?, t.size())?;
    unglue(&g.aligned_to(v + 1), v + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frieze::{equivalent, validate_frieze};
    use PuncturedArc::*;

    fn square() -> PuncturedTriangulation {
        PuncturedTriangulation::new(4, [Radius(0), Radius(2), Peripheral(0, 2), Peripheral(2, 0)])
    }

    #[test]
    fn square_parameters() {
        let p = cut_parameters(&square(), &Radius(0)).unwrap();
        assert_eq!((p.d, p.a1), (2, 4));
        assert_eq!(p.b + p.c, p.a1);
        let cs = cut_surface(&square(), &Radius(0)).unwrap();
        assert_eq!(cs.tilde.quiddity().unwrap(), tilde_quiddity(&square(), &p).unwrap());
    }

    #[test]
    fn square_cut_surface() {
        let cs = cut_surface(&square(), &Radius(0)).unwrap();
        assert_eq!(cs.tilde.size(), 10);
        assert_eq!(cs.tilde.diagonals().len(), 7);
        assert!(cs.tilde.validate().is_ok());
        cs.check_symmetry().unwrap();
    }

    #[test]
    fn loops_are_not_cut_arcs() {
        let t = square().flip(Radius(0)).unwrap();
        assert_eq!(cut_parameters(&t, &Loop(2)), Err(FriezeError::NotARadius(Loop(2))));
    }

    #[test]
    fn square_frieze_d() {
        let f = frieze_d(&square()).unwrap();
        assert_eq!(f.kind(), FriezeKind::TypeD(4));
        assert!(validate_frieze(&f).is_ok());
        let q: Vec<BigInt> = [4, 1, 4, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(f.row(1), q.as_slice());
        let cs = cut_surface(&square(), &Radius(0)).unwrap();
        let g = extract_glued_region(&cs.frieze().unwrap(), 4).unwrap();
        assert_eq!(g.rows.len(), 3);
        assert_eq!(g.aligned_to(1).rows, glued_pattern(&f).unwrap().rows);
    }

    #[test]
    fn choice_of_radius_does_not_matter() {
        let t = square();
        let a = frieze_d_with_cut(&t, 0).unwrap();
        let b = frieze_d_with_cut(&t, 2).unwrap();
        assert!(equivalent(&a, &b));
    }

    #[test]
    fn unglue_round_trip_and_corruption() {
        let f = frieze_d(&square()).unwrap();
        let g = glued_pattern(&f).unwrap();
        let back = unglue(&g, 1).unwrap();
        assert!(equivalent(&back, &f));
        let mut bad = g.clone();
        bad.rows[2][1] += 1;
        assert!(matches!(unglue(&bad, 1), Err(FriezeError::NonIntegralStep { .. }) | Err(FriezeError::ShapeMismatch(_))));
    }
}
