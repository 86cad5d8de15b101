//! Triangulated polygons and once-punctured disks.
//!
//! Vertices are labeled `0..n` counterclockwise and every interval is read
//! counterclockwise.

use std::collections::BTreeSet;
use std::fmt;

use crate::cutglue;
use crate::error::{FriezeError, Result};

/// Something wrong with a would-be triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooSmall { min: usize, found: usize },
    VertexOutOfRange(String),
    NotADiagonal(String),
    WrongCount { expected: usize, found: usize },
    Crossing(String, String),
    NoRadius,
    LoopWithoutRadius(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooSmall { min, found } => write!(f, "size {found} is below the minimum {min}"),
            Violation::VertexOutOfRange(a) => write!(f, "{a} has a vertex out of range"),
            Violation::NotADiagonal(a) => write!(f, "{a} is not a diagonal"),
            Violation::WrongCount { expected, found } => {
                write!(f, "expected {expected} arcs, found {found}")
            }
            Violation::Crossing(a, b) => write!(f, "{a} crosses {b}"),
            Violation::NoRadius => write!(f, "no radius"),
            Violation::LoopWithoutRadius(v) => write!(f, "loop at {v} without its radius"),
        }
    }
}

/// `0 < (x - a) mod n < (b - a) mod n`
pub fn strictly_between(x: usize, a: usize, b: usize, n: usize) -> bool {
    let dx = (x + n - a % n) % n;
    let db = (b + n - a % n) % n;
    0 < dx && dx < db
}

fn normalize(a: (usize, usize)) -> (usize, usize) {
    if a.0 <= a.1 {
        a
    } else {
        (a.1, a.0)
    }
}

/// Strict interleaving of the endpoints on the circle.
pub fn polygon_arcs_cross(m: usize, a: (usize, usize), b: (usize, usize)) -> bool {
    let (i, j) = a;
    let (k, l) = b;
    let ends: BTreeSet<usize> = [i, j, k, l].into_iter().collect();
    if ends.len() < 4 {
        return false;
    }
    strictly_between(k, i, j, m) != strictly_between(l, i, j, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corner {
    Vertex(usize),
    Puncture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Boundary(usize, usize),
    Diagonal(usize, usize),
    Arc(PuncturedArc),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub corners: [Corner; 3],
    pub sides: [Side; 3],
    pub self_folded: bool,
}

impl Triangle {
    pub fn has_corner(&self, c: Corner) -> bool {
        self.corners.contains(&c)
    }
}

/// Shared surface of the two triangulation kinds.
pub trait Triangulated: Sized {
    type Arc;
    fn validate(&self) -> std::result::Result<(), Vec<Violation>>;
    fn triangles(&self) -> Result<Vec<Triangle>>;
    fn quiddity(&self) -> Result<Vec<u32>>;
    fn flip(&self, arc: Self::Arc) -> Result<Self>;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolygonTriangulation {
    m: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

impl PolygonTriangulation {
    /// Stores the diagonals as given, normalized to `i < j`. See [`Triangulated::validate`].
    pub fn new(m: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Self {
        PolygonTriangulation {
            m,
            diagonals: diagonals.into_iter().map(normalize).collect(),
        }
    }

    pub fn checked(m: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let t = Self::new(m, diagonals);
        t.validate().map_err(FriezeError::InvalidTriangulation)?;
        Ok(t)
    }

    pub fn fan(m: usize, apex: usize) -> Self {
        Self::new(m, (2..m - 1).map(|k| (apex % m, (apex + k) % m)))
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    pub fn contains(&self, a: (usize, usize)) -> bool {
        self.diagonals.contains(&normalize(a))
    }

    pub fn is_boundary(&self, a: (usize, usize)) -> bool {
        let d = (a.1 + self.m - a.0) % self.m;
        d == 1 || d == self.m - 1
    }

    /// Boundary segment or diagonal of the triangulation.
    pub fn is_edge(&self, x: usize, y: usize) -> bool {
        let (x, y) = (x % self.m, y % self.m);
        x != y && (self.is_boundary((x, y)) || self.contains((x, y)))
    }

    /// The two vertices opposite `a`: `r` strictly inside `p→q` and `s` strictly inside `q→p`.
    pub fn quadrilateral(&self, a: (usize, usize)) -> Result<(usize, usize)> {
        let (p, q) = normalize(a);
        if !self.contains((p, q)) {
            return Err(FriezeError::NotInTriangulation(format!("({p},{q})")));
        }
        let apex = |lo: usize, hi: usize| {
            (lo + 1..hi)
                .map(|x| x % self.m)
                .find(|&x| self.is_edge(p, x) && self.is_edge(x, q))
        };
        match (apex(p, q), apex(q, p + self.m)) {
            (Some(r), Some(s)) => Ok((r, s)),
            _ => Err(FriezeError::InvalidTriangulation(vec![Violation::WrongCount {
                expected: self.m - 3,
                found: self.diagonals.len(),
            }])),
        }
    }

    /// Flip returning the new triangulation together with the replacement diagonal.
    pub fn flip_with_partner(&self, a: (usize, usize)) -> Result<(Self, (usize, usize))> {
        let (r, s) = self.quadrilateral(a)?;
        let new = normalize((r, s));
        let mut d = self.diagonals.clone();
        d.remove(&normalize(a));
        d.insert(new);
        Ok((PolygonTriangulation { m: self.m, diagonals: d }, new))
    }
}

impl Triangulated for PolygonTriangulation {
    type Arc = (usize, usize);

    fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let m = self.m;
        let mut bad = Vec::new();
        if m < 4 {
            bad.push(Violation::TooSmall { min: 4, found: m });
            return Err(bad);
        }
        for &(i, j) in &self.diagonals {
            if i >= m || j >= m {
                bad.push(Violation::VertexOutOfRange(format!("({i},{j})")));
            } else if i == j || self.is_boundary((i, j)) {
                bad.push(Violation::NotADiagonal(format!("({i},{j})")));
            }
        }
        if self.diagonals.len() != m - 3 {
            bad.push(Violation::WrongCount {
                expected: m - 3,
                found: self.diagonals.len(),
            });
        }
        let ds: Vec<_> = self.diagonals.iter().copied().collect();
        for (k, &a) in ds.iter().enumerate() {
            for &b in &ds[k + 1..] {
                if polygon_arcs_cross(m, a, b) {
                    bad.push(Violation::Crossing(format!("{a:?}"), format!("{b:?}")));
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    fn triangles(&self) -> Result<Vec<Triangle>> {
        self.validate().map_err(FriezeError::InvalidTriangulation)?;
        let m = self.m;
        let side = |x: usize, y: usize| {
            if self.is_boundary((x, y)) {
                Side::Boundary(x, y)
            } else {
                Side::Diagonal(x, y)
            }
        };
        let mut out = Vec::with_capacity(m - 2);
        for i in 0..m {
            for j in i + 1..m {
                if !self.is_edge(i, j) {
                    continue;
                }
                for k in j + 1..m {
                    if self.is_edge(j, k) && self.is_edge(i, k) {
                        out.push(Triangle {
                            corners: [Corner::Vertex(i), Corner::Vertex(j), Corner::Vertex(k)],
                            sides: [side(i, j), side(j, k), side(i, k)],
                            self_folded: false,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    fn quiddity(&self) -> Result<Vec<u32>> {
        self.validate().map_err(FriezeError::InvalidTriangulation)?;
        let mut q = vec![1u32; self.m];
        for &(i, j) in &self.diagonals {
            q[i] += 1;
            q[j] += 1;
        }
        Ok(q)
    }

    fn flip(&self, a: (usize, usize)) -> Result<Self> {
        Ok(self.flip_with_partner(a)?.0)
    }
}

/// Arc of a once-punctured disk, up to isotopy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PuncturedArc {
    /// From the boundary vertex to the puncture.
    Radius(usize),
    /// From the boundary vertex around the puncture and back.
    Loop(usize),
    /// From `a` to `b` cutting off the vertices strictly between them.
    Peripheral(usize, usize),
}

impl fmt::Display for PuncturedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PuncturedArc::Radius(v) => write!(f, "radius:{v}"),
            PuncturedArc::Loop(v) => write!(f, "loop:{v}"),
            PuncturedArc::Peripheral(a, b) => write!(f, "peripheral:{a},{b}"),
        }
    }
}

impl PuncturedArc {
    pub fn is_radius(&self) -> bool {
        matches!(self, PuncturedArc::Radius(_))
    }

    /// Boundary segments `k -> k+1` on the cut-off side.
    fn segments(a: usize, b: usize, n: usize) -> BTreeSet<usize> {
        let len = (b + n - a) % n;
        (0..len).map(|k| (a + k) % n).collect()
    }

    pub fn crosses(&self, other: &PuncturedArc, n: usize) -> bool {
        use PuncturedArc::*;
        if self == other {
            return false;
        }
        match (*self, *other) {
            (Radius(_), Radius(_)) => false,
            (Radius(v), Loop(w)) | (Loop(w), Radius(v)) => v != w,
            (Loop(v), Loop(w)) => v != w,
            (Radius(v), Peripheral(a, b))
            | (Peripheral(a, b), Radius(v))
            | (Loop(v), Peripheral(a, b))
            | (Peripheral(a, b), Loop(v)) => strictly_between(v, a, b, n),
            (Peripheral(a, b), Peripheral(c, d)) => {
                let s = Self::segments(a, b, n);
                let t = Self::segments(c, d, n);
                !(s.is_subset(&t) || t.is_subset(&s) || s.is_disjoint(&t))
            }
        }
    }

    /// Every arc of the punctured `n`-gon.
    pub fn all(n: usize) -> Vec<PuncturedArc> {
        let mut out: Vec<_> = (0..n).map(PuncturedArc::Radius).collect();
        out.extend((0..n).map(PuncturedArc::Loop));
        for a in 0..n {
            for k in 1..n - 1 {
                out.push(PuncturedArc::Peripheral(a, (a + k + 1) % n));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PuncturedTriangulation {
    n: usize,
    arcs: BTreeSet<PuncturedArc>,
}

impl PuncturedTriangulation {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = PuncturedArc>) -> Self {
        PuncturedTriangulation {
            n,
            arcs: arcs.into_iter().collect(),
        }
    }

    pub fn checked(n: usize, arcs: impl IntoIterator<Item = PuncturedArc>) -> Result<Self> {
        let t = Self::new(n, arcs);
        t.validate().map_err(FriezeError::InvalidTriangulation)?;
        Ok(t)
    }

    /// All radii, the triangulation every vertex sees the puncture from.
    pub fn star(n: usize) -> Self {
        Self::new(n, (0..n).map(PuncturedArc::Radius))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &BTreeSet<PuncturedArc> {
        &self.arcs
    }

    pub fn contains(&self, a: &PuncturedArc) -> bool {
        self.arcs.contains(a)
    }

    pub fn radii(&self) -> Vec<usize> {
        self.arcs
            .iter()
            .filter_map(|a| match a {
                PuncturedArc::Radius(v) => Some(*v),
                _ => None,
            })
            .collect()
    }

    pub fn is_self_folded_radius(&self, a: &PuncturedArc) -> bool {
        matches!(a, PuncturedArc::Radius(v) if self.arcs.contains(&PuncturedArc::Loop(*v)))
    }

    /// Number of triangles with the puncture as a corner.
    pub fn puncture_degree(&self) -> Result<usize> {
        Ok(self
            .triangles()?
            .iter()
            .filter(|t| t.has_corner(Corner::Puncture))
            .count())
    }

    /// First radius other than `avoid`, used as the cut arc.
    pub fn cut_radius(&self, avoid: Option<&PuncturedArc>) -> Option<usize> {
        self.radii()
            .into_iter()
            .find(|&v| Some(&PuncturedArc::Radius(v)) != avoid)
    }

    fn check_arc(&self, a: &PuncturedArc) -> Option<Violation> {
        let n = self.n;
        match *a {
            PuncturedArc::Radius(v) | PuncturedArc::Loop(v) if v >= n => {
                Some(Violation::VertexOutOfRange(a.to_string()))
            }
            PuncturedArc::Peripheral(x, y) if x >= n || y >= n => {
                Some(Violation::VertexOutOfRange(a.to_string()))
            }
            PuncturedArc::Peripheral(x, y) if (y + n - x) % n < 2 => {
                Some(Violation::NotADiagonal(a.to_string()))
            }
            _ => None,
        }
    }
}

impl Triangulated for PuncturedTriangulation {
    type Arc = PuncturedArc;

    fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let n = self.n;
        let mut bad = Vec::new();
        if n < 4 {
            bad.push(Violation::TooSmall { min: 4, found: n });
            return Err(bad);
        }
        bad.extend(self.arcs.iter().filter_map(|a| self.check_arc(a)));
        if !bad.is_empty() {
            return Err(bad);
        }
        if self.arcs.len() != n {
            bad.push(Violation::WrongCount {
                expected: n,
                found: self.arcs.len(),
            });
        }
        let arcs: Vec<_> = self.arcs.iter().collect();
        for (k, a) in arcs.iter().enumerate() {
            for b in &arcs[k + 1..] {
                if a.crosses(b, n) {
                    bad.push(Violation::Crossing(a.to_string(), b.to_string()));
                }
            }
        }
        if self.radii().is_empty() {
            bad.push(Violation::NoRadius);
        }
        for a in &self.arcs {
            if let PuncturedArc::Loop(v) = a {
                if !self.arcs.contains(&PuncturedArc::Radius(*v)) {
                    bad.push(Violation::LoopWithoutRadius(*v));
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    fn triangles(&self) -> Result<Vec<Triangle>> {
        self.validate().map_err(FriezeError::InvalidTriangulation)?;
        let n = self.n;
        let v = self.radii()[0];
        let cut = cutglue::cut_polygon(self, v)?;
        let corner = |t: usize| {
            if t == n + 1 {
                Corner::Puncture
            } else {
                Corner::Vertex((v + t) % n)
            }
        };
        let side = |x: usize, y: usize| {
            if y == x + 1 && y <= n {
                Side::Boundary((v + x) % n, (v + y) % n)
            } else if (x == 0 || x == n) && y == n + 1 {
                Side::Arc(PuncturedArc::Radius(v))
            } else {
                Side::Arc(cutglue::uncut_diagonal(n, v, (x, y)))
            }
        };
        Ok(cut
            .triangles()?
            .into_iter()
            .map(|t| {
                let c: Vec<usize> = t
                    .corners
                    .iter()
                    .map(|c| match c {
                        Corner::Vertex(x) => *x,
                        Corner::Puncture => unreachable!(),
                    })
                    .collect();
                let sides = [side(c[0], c[1]), side(c[1], c[2]), side(c[0], c[2])];
                Triangle {
                    corners: [corner(c[0]), corner(c[1]), corner(c[2])],
                    self_folded: sides[0] == sides[1] || sides[1] == sides[2] || sides[0] == sides[2],
                    sides,
                }
            })
            .collect())
    }

    fn quiddity(&self) -> Result<Vec<u32>> {
        let mut q = vec![0u32; self.n];
        for t in self.triangles()? {
            for c in t.corners {
                if let Corner::Vertex(x) = c {
                    q[x] += 1;
                }
            }
        }
        Ok(q)
    }

    fn flip(&self, a: PuncturedArc) -> Result<Self> {
        self.validate().map_err(FriezeError::InvalidTriangulation)?;
        if !self.arcs.contains(&a) {
            return Err(FriezeError::NotInTriangulation(a.to_string()));
        }
        if self.is_self_folded_radius(&a) {
            return Err(FriezeError::SelfFoldedRadius(a));
        }
        let v = self.cut_radius(Some(&a)).ok_or(FriezeError::NoAlternateCut(a))?;
        let n = self.n;
        let cut = cutglue::cut_polygon(self, v)?;
        let d = cutglue::cut_diagonal(n, v, &a)?;
        let (_, new) = cut.flip_with_partner(d)?;
        let mut arcs = self.arcs.clone();
        arcs.remove(&a);
        arcs.insert(cutglue::uncut_diagonal(n, v, new));
        Ok(PuncturedTriangulation { n, arcs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PuncturedArc::*;

    fn square() -> PuncturedTriangulation {
        PuncturedTriangulation::new(4, [Radius(0), Radius(2), Peripheral(0, 2), Peripheral(2, 0)])
    }

    #[test]
    fn hexagon_fan_validates() {
        assert!(PolygonTriangulation::new(6, [(0, 2), (0, 3), (0, 4)]).validate().is_ok());
    }

    #[test]
    fn interleaved_hexagon_reports_crossing_and_count() {
        let bad = PolygonTriangulation::new(6, [(0, 2), (1, 3)]).validate().unwrap_err();
        assert!(bad.iter().any(|v| matches!(v, Violation::Crossing(..))));
        assert!(bad.contains(&Violation::WrongCount { expected: 3, found: 2 }));
    }

    #[test]
    fn fan_triangles_and_quiddity() {
        let t = PolygonTriangulation::fan(6, 0);
        let tris: Vec<_> = t.triangles().unwrap().iter().map(|t| t.corners).collect();
        let v = Corner::Vertex;
        assert_eq!(
            tris,
            vec![
                [v(0), v(1), v(2)],
                [v(0), v(2), v(3)],
                [v(0), v(3), v(4)],
                [v(0), v(4), v(5)]
            ]
        );
        assert_eq!(t.quiddity().unwrap(), vec![4, 1, 2, 2, 2, 1]);
    }

    #[test]
    fn fan_flip() {
        let t = PolygonTriangulation::fan(6, 0).flip((0, 2)).unwrap();
        assert_eq!(t, PolygonTriangulation::new(6, [(1, 3), (0, 3), (0, 4)]));
    }

    #[test]
    fn punctured_square() {
        let t = square();
        assert!(t.validate().is_ok());
        let tris = t.triangles().unwrap();
        assert_eq!(tris.len(), 4);
        assert_eq!(tris.iter().filter(|t| t.has_corner(Corner::Puncture)).count(), 2);
        assert_eq!(t.quiddity().unwrap(), vec![4, 1, 4, 1]);
    }

    #[test]
    fn punctured_square_flip_radius() {
        let t = square().flip(Radius(0)).unwrap();
        assert_eq!(
            t,
            PuncturedTriangulation::new(4, [Radius(2), Loop(2), Peripheral(0, 2), Peripheral(2, 0)])
        );
        assert!(t.validate().is_ok());
    }

    #[test]
    fn self_folded_radius_is_rejected() {
        let t = square().flip(Radius(0)).unwrap();
        assert_eq!(t.flip(Radius(2)), Err(FriezeError::SelfFoldedRadius(Radius(2))));
        let tris = t.triangles().unwrap();
        let sf: Vec<_> = tris.iter().filter(|t| t.self_folded).collect();
        assert_eq!(sf.len(), 1);
        assert!(sf[0].sides.contains(&Side::Arc(Loop(2))));
        assert!(sf[0].sides.contains(&Side::Arc(Radius(2))));
    }

    #[test]
    fn loop_needs_its_radius() {
        let t = PuncturedTriangulation::new(4, [Radius(1), Loop(2), Peripheral(0, 2), Peripheral(2, 0)]);
        let bad = t.validate().unwrap_err();
        assert!(bad.contains(&Violation::LoopWithoutRadius(2)));
    }

    #[test]
    fn shared_endpoint_peripherals_do_not_cross() {
        assert!(!Peripheral(0, 3).crosses(&Peripheral(0, 2), 4));
        assert!(!Peripheral(1, 3).crosses(&Peripheral(3, 1), 4));
        assert!(Peripheral(0, 2).crosses(&Peripheral(1, 3), 4));
        assert!(!Peripheral(0, 2).crosses(&Peripheral(2, 0), 4));
    }
}
