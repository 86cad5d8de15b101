//! The quotient pattern of the doubled polygon's frieze.
//!
//! Cells are read on the strip of the frieze of the doubled polygon (`m = 2n + 2`):
//! the arc `(x, y)` sits at `(x, y)`, an SE step is `y + 1` and an NE step `x + 1`.
//! The window keeps
//!
//! * `A`: `1 <= x <= y <= min(x + n, n + 1)`,
//! * `B`: `2 <= x <= n`, `n + 2 <= y <= min(x + n, 2n + 1)`,
//! * `Â`: `n + 1 <= x <= y <= min(x + n, 2n + 1)`,
//! * the seam `(0, t)`, `t = 2..n`, glued to `(t + n, 2n + 2)` in reverse row order,
//! * the cut arc at `(0, n + 1)` and `(n + 1, 2n + 2)`.
//!
//! A cell with two lifts is a single node; walks that leave the window through one
//! lift continue from the other with NE and SE exchanged.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::cutglue::{cut_parameters, cut_surface, CutSurface, Sheet};
use crate::error::{FriezeError, Result};
use crate::frieze::Strip;
use crate::mutation::{delta_x, delta_y, delta_z, RayKind, Rect, Region, StripRegion, TypeARegions};
use crate::surfaces::{PuncturedArc, PuncturedTriangulation};

pub type Lift = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    SE,
    NE,
}

impl Dir {
    pub fn step(self) -> Lift {
        match self {
            Dir::SE => (0, 1),
            Dir::NE => (1, 0),
        }
    }

    pub fn other(self) -> Dir {
        match self {
            Dir::SE => Dir::NE,
            Dir::NE => Dir::SE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Zone {
    A,
    B,
    AHat,
    Seam,
    CutUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKey {
    Zero(i64),
    Arc(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub key: NodeKey,
    pub zone: Zone,
    pub lifts: Vec<Lift>,
    pub value: BigInt,
    pub ne: Vec<usize>,
    pub se: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PatternG {
    pub n: usize,
    pub triangulation: PuncturedTriangulation,
    pub cut: CutSurface,
    pub strip: Strip,
    pub nodes: Vec<Node>,
    pub cut_unit: usize,
    /// `(1_j, 2_j)` for every arc `j` other than the cut arc.
    pub arc_index: BTreeMap<PuncturedArc, (usize, usize)>,
    window: HashMap<Lift, (Zone, usize)>,
    by_key: HashMap<NodeKey, usize>,
}

fn add(a: Lift, b: Lift, sign: i64) -> Lift {
    (a.0 + sign * b.0, a.1 + sign * b.1)
}

impl PatternG {
    pub fn m(&self) -> i64 {
        2 * self.n as i64 + 2
    }

    pub fn key(&self, l: Lift) -> NodeKey {
        let m = self.m();
        let n = self.n as i64;
        if l.0 == l.1 {
            return NodeKey::Zero(l.0.rem_euclid(m));
        }
        let (x, y) = (l.0.rem_euclid(m), l.1.rem_euclid(m));
        let (a, mut b) = (x.min(y), x.max(y));
        if a == 0 && b > n + 1 {
            b -= n;
        }
        NodeKey::Arc(a, b)
    }

    pub fn in_window(&self, l: Lift) -> bool {
        self.window.contains_key(&l)
    }

    pub fn zone_of(&self, l: Lift) -> Option<Zone> {
        self.window.get(&l).map(|z| z.0)
    }

    /// Node of a window lift, or of any strip position of an arc that has a node.
    pub fn node_at(&self, l: Lift) -> Option<usize> {
        self.window.get(&l).map(|z| z.1).or_else(|| self.by_key.get(&self.key(l)).copied())
    }

    pub fn value(&self, l: Lift) -> &BigInt {
        self.strip.get(l.0, l.1)
    }

    /// One step of a walk, switching lifts at the edge of the window.
    pub fn successor(&self, l: Lift, d: Dir, sign: i64) -> Option<(Lift, Dir)> {
        let nx = add(l, d.step(), sign);
        if self.in_window(nx) {
            return Some((nx, d));
        }
        let node = &self.nodes[self.window[&l].1];
        let other = node.lifts.iter().find(|&&o| o != l)?;
        let d = d.other();
        let nx = add(*other, d.step(), sign);
        self.in_window(nx).then_some((nx, d))
    }

    /// Maximal sectional walk from `l` (excluded), forwards or backwards.
    pub fn walk(&self, l: Lift, d: Dir, forward: bool) -> Vec<(Lift, Dir)> {
        let sign = if forward { 1 } else { -1 };
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let (mut cur, mut dir) = (l, d);
        while let Some((nx, nd)) = self.successor(cur, dir, sign) {
            if !seen.insert((nx, nd)) {
                break;
            }
            out.push((nx, nd));
            cur = nx;
            dir = nd;
        }
        out
    }

    /// Every unit diamond of the graph satisfies `bc - ad = 1`.
    pub fn check_diamonds(&self) -> Result<usize> {
        let mut count = 0;
        for node in &self.nodes {
            for &b in &node.lifts {
                let (Some((c1, d1)), Some((c2, d2))) = (self.successor(b, Dir::NE, 1), self.successor(b, Dir::SE, 1)) else {
                    continue;
                };
                let (Some((x, _)), Some((y, _))) = (self.successor(c1, d1.other(), 1), self.successor(c2, d2.other(), 1)) else {
                    continue;
                };
                if self.node_at(x) != self.node_at(y) {
                    continue;
                }
                count += 1;
                if self.value(b) * self.value(x) - self.value(c1) * self.value(c2) != BigInt::one() {
                    return Err(FriezeError::SymmetryViolation(format!("diamond at {b:?}")));
                }
            }
        }
        Ok(count)
    }

    /// Values of `A` and `Â` agree cell for cell.
    pub fn check_copies(&self) -> Result<()> {
        let n = self.n as i64;
        for (&l, &(z, _)) in &self.window {
            if z == Zone::A && l.0 != l.1 {
                let twin = (l.0 + n, l.1 + n);
                if self.zone_of(twin) == Some(Zone::AHat) && self.value(l) != self.value(twin) {
                    return Err(FriezeError::SymmetryViolation(format!("{l:?} and {twin:?} differ")));
                }
            }
        }
        Ok(())
    }

    pub fn lifts_in_zone(&self, zone: Zone) -> impl Iterator<Item = Lift> + '_ {
        self.window.iter().filter(move |(_, z)| z.0 == zone).map(|(l, _)| *l)
    }
}

pub fn build_pattern_g(t: &PuncturedTriangulation, i: &PuncturedArc) -> Result<PatternG> {
    let cut = cut_surface(t, i)?;
    let strip = cut.strip()?;
    let n = t.size() as i64;
    let mut order: Vec<(Lift, Zone)> = Vec::new();
    for x in 1..=n + 1 {
        for y in x..=(x + n).min(n + 1) {
            order.push(((x, y), Zone::A));
        }
    }
    for x in 2..=n {
        for y in n + 2..=(x + n).min(2 * n + 1) {
            order.push(((x, y), Zone::B));
        }
    }
    for x in n + 1..=2 * n + 1 {
        for y in x..=(x + n).min(2 * n + 1) {
            if (x, y) != (n + 1, n + 1) {
                order.push(((x, y), Zone::AHat));
            }
        }
    }
    for s in 2..=n {
        order.push(((0, s), Zone::Seam));
    }
    for s in n + 2..=2 * n {
        order.push(((s, 2 * n + 2), Zone::Seam));
    }
    order.push(((0, n + 1), Zone::CutUnit));
    order.push(((n + 1, 2 * n + 2), Zone::CutUnit));

    let mut g = PatternG {
        n: t.size(),
        triangulation: t.clone(),
        cut,
        strip,
        nodes: Vec::new(),
        cut_unit: 0,
        arc_index: BTreeMap::new(),
        window: HashMap::new(),
        by_key: HashMap::new(),
    };
    for (l, zone) in order {
        let key = g.key(l);
        let k = match g.by_key.get(&key) {
            Some(&k) => k,
            None => {
                g.nodes.push(Node {
                    key,
                    zone,
                    lifts: vec![],
                    value: g.strip.get(l.0, l.1).clone(),
                    ne: vec![],
                    se: vec![],
                });
                g.by_key.insert(key, g.nodes.len() - 1);
                g.nodes.len() - 1
            }
        };
        if g.nodes[k].value != *g.strip.get(l.0, l.1) {
            return Err(FriezeError::SymmetryViolation(format!("seam lifts of {key:?} differ")));
        }
        g.nodes[k].lifts.push(l);
        g.window.insert(l, (zone, k));
    }
    g.cut_unit = g.window[&(0, n + 1)].1;
    for k in 0..g.nodes.len() {
        let lifts = g.nodes[k].lifts.clone();
        for l in lifts {
            for d in [Dir::NE, Dir::SE] {
                if let Some((nx, _)) = g.successor(l, d, 1) {
                    let target = g.window[&nx].1;
                    let list = if d == Dir::NE { &mut g.nodes[k].ne } else { &mut g.nodes[k].se };
                    if !list.contains(&target) {
                        list.push(target);
                    }
                }
            }
        }
    }
    for arc in t.arcs() {
        if *arc == *i {
            continue;
        }
        let (x, y) = g.cut.lift(arc, Sheet::Alpha)?;
        let (r, s) = g.cut.tilde.quadrilateral((x, y))?;
        let one = g.node_at((x as i64, y as i64));
        let two = g.node_at((r.min(s) as i64, r.max(s) as i64));
        if let (Some(one), Some(two)) = (one, two) {
            g.arc_index.insert(*arc, (one, two));
        }
    }
    Ok(g)
}

/// The seam path and its hatted copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPath {
    /// `r_1..r_{n-1}` read at `(0, j + 1)`.
    pub values: Vec<BigInt>,
    /// `r̂_1..r̂_{n-1}` read at `(j + 1 + n, 2n + 2)`.
    pub hatted: Vec<BigInt>,
    pub b: BigInt,
    pub c: BigInt,
    /// `r_1 .. r_{n-1}, 1_i, r̂_1 .. r̂_{n-1}` as nodes.
    pub path: Vec<usize>,
}

pub fn r_path(g: &PatternG) -> Result<RPath> {
    let n = g.n as i64;
    let values: Vec<BigInt> = (1..n).map(|j| g.value((0, j + 1)).clone()).collect();
    let hatted: Vec<BigInt> = (1..n).map(|j| g.value((j + 1 + n, 2 * n + 2)).clone()).collect();
    let p = cut_parameters(&g.triangulation, &PuncturedArc::Radius(g.cut.radius))?;
    let mut path: Vec<usize> = (1..n).map(|j| g.window[&(0, j + 1)].1).collect();
    path.push(g.cut_unit);
    path.extend((1..n).map(|j| g.window[&(j + 1 + n, 2 * n + 2)].1));
    let rp = RPath {
        values,
        hatted,
        b: BigInt::from(p.b),
        c: BigInt::from(p.c),
        path,
    };
    if rp.values != rp.hatted {
        return Err(FriezeError::SymmetryViolation("seam values differ from their hatted copy".into()));
    }
    if rp.values[0] != rp.b || rp.values[g.n - 2] != rp.c {
        return Err(FriezeError::SymmetryViolation(format!(
            "seam ends ({}, {}) but cut parameters give ({}, {})",
            rp.values[0],
            rp.values[g.n - 2],
            rp.b,
            rp.c
        )));
    }
    Ok(rp)
}

pub fn locate_entries(g: &PatternG, a: &PuncturedArc) -> Result<(usize, usize)> {
    if *a == PuncturedArc::Radius(g.cut.radius) {
        return Err(FriezeError::ArcIsCutArc(*a));
    }
    g.arc_index
        .get(a)
        .copied()
        .ok_or_else(|| FriezeError::NotInTriangulation(a.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// `1_a` and `2_a` both in `A`.
    One,
    /// One of them on the seam.
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub sheet: Sheet,
    pub kind: RayKind,
    pub dir: Dir,
    pub cells: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RayDiagram {
    pub arc: PuncturedArc,
    pub case: Case,
    /// Flip geometry of the two lifts of `a` in the doubled polygon.
    pub sheets: [TypeARegions; 2],
    pub one_a: usize,
    pub two_a: usize,
    pub one_a_hat: usize,
    pub two_a_hat: usize,
    pub rays: Vec<Ray>,
    /// Cells of the long row of `B` where rays of the first sheet end.
    pub bounce: Vec<usize>,
    /// Cells of the long row of `B` where rays of the hatted sheet start.
    pub bounce_hatted: Vec<usize>,
    ray_sets: HashMap<Lift, [Vec<(Dir, RayKind)>; 2]>,
    classes: HashMap<Lift, [Option<StripRegion>; 2]>,
}

fn sheet_index(s: Sheet) -> usize {
    match s {
        Sheet::Alpha => 0,
        Sheet::Beta => 1,
    }
}

const SHEETS: [Sheet; 2] = [Sheet::Alpha, Sheet::Beta];

impl RayDiagram {
    pub fn classify(&self, l: Lift, s: Sheet) -> Option<StripRegion> {
        self.classes.get(&l).and_then(|c| c[sheet_index(s)])
    }

    pub fn rays_of(&self, l: Lift, s: Sheet) -> &[(Dir, RayKind)] {
        self.ray_sets.get(&l).map(|r| r[sheet_index(s)].as_slice()).unwrap_or(&[])
    }
}

pub fn ray_diagram(g: &PatternG, a: &PuncturedArc) -> Result<RayDiagram> {
    let (one_a, two_a) = locate_entries(g, a)?;
    if g.triangulation.is_self_folded_radius(a) {
        return Err(FriezeError::SelfFoldedRadius(*a));
    }
    let lift_a = g.cut.lift(a, Sheet::Alpha)?;
    let lift_b = g.cut.lift(a, Sheet::Beta)?;
    let sheets = [TypeARegions::new(&g.cut.tilde, lift_a)?, TypeARegions::new(&g.cut.tilde, lift_b)?];
    let m = g.m();
    let mut ray_sets = HashMap::new();
    let mut classes = HashMap::new();
    for &l in g.window.keys() {
        let mut rs: [Vec<(Dir, RayKind)>; 2] = [vec![], vec![]];
        let mut cs = [None, None];
        for (k, geo) in sheets.iter().enumerate() {
            let mut v = geo.rays_at(l);
            for p in [(l.1, l.0 + m), (l.1 - m, l.0)] {
                v.extend(geo.rays_at(p).into_iter().map(|(d, kind)| (d.other(), kind)));
            }
            v.sort();
            v.dedup();
            rs[k] = v;
            cs[k] = geo.classify(l);
        }
        ray_sets.insert(l, rs);
        classes.insert(l, cs);
    }
    let part = g.cut.tilde.quadrilateral(lift_b)?;
    let one_a_hat = g.node_at((lift_b.0 as i64, lift_b.1 as i64)).expect("hatted lift in the pattern");
    let two_a_hat = g
        .node_at((part.0.min(part.1) as i64, part.0.max(part.1) as i64))
        .expect("hatted partner in the pattern");
    let case = if g.nodes[one_a].zone == Zone::A && g.nodes[two_a].zone == Zone::A {
        Case::One
    } else {
        Case::Two
    };
    let mut d = RayDiagram {
        arc: *a,
        case,
        sheets,
        one_a,
        two_a,
        one_a_hat,
        two_a_hat,
        rays: vec![],
        bounce: vec![],
        bounce_hatted: vec![],
        ray_sets,
        classes,
    };
    d.rays = collect_rays(g, &d);
    let n = g.n as i64;
    let long: HashSet<usize> = (2..=n).map(|x| g.window[&(x, x + n)].1).collect();
    let ends = |s: Sheet, last: bool| -> BTreeSet<usize> {
        d.rays
            .iter()
            .filter(|r| r.sheet == s)
            .filter_map(|r| if last { r.cells.last() } else { r.cells.first() })
            .filter(|c| long.contains(c))
            .copied()
            .collect()
    };
    d.bounce = ends(Sheet::Alpha, true).into_iter().collect();
    d.bounce_hatted = ends(Sheet::Beta, false).into_iter().collect();
    Ok(d)
}

/// Sheet whose rays a window lift sees.
fn owner(zone: Zone, l: Lift) -> Option<Sheet> {
    match zone {
        Zone::A => Some(Sheet::Alpha),
        Zone::AHat => Some(Sheet::Beta),
        Zone::Seam if l.0 == 0 => Some(Sheet::Alpha),
        Zone::Seam => Some(Sheet::Beta),
        Zone::B | Zone::CutUnit => None,
    }
}

fn collect_rays(g: &PatternG, d: &RayDiagram) -> Vec<Ray> {
    let m = g.m();
    let mut out: Vec<Ray> = Vec::new();
    for (si, geo) in d.sheets.iter().enumerate() {
        let sheet = SHEETS[si];
        for r in &geo.rects {
            let edges: [(Dir, bool, Box<dyn Fn(Lift) -> Option<i64>>); 4] = [
                (Dir::SE, true, Box::new(move |p: Lift| (p.0 == r.x.0 && r.y.0 <= p.1 && p.1 <= r.y.1).then_some(p.1))),
                (Dir::SE, false, Box::new(move |p: Lift| (p.0 == r.x.1 && r.y.0 <= p.1 && p.1 <= r.y.1).then_some(p.1))),
                (Dir::NE, true, Box::new(move |p: Lift| (p.1 == r.y.0 && r.x.0 <= p.0 && p.0 <= r.x.1).then_some(p.0))),
                (Dir::NE, false, Box::new(move |p: Lift| (p.1 == r.y.1 && r.x.0 <= p.0 && p.0 <= r.x.1).then_some(p.0))),
            ];
            for (dir, at_min, on) in edges.iter() {
                let kind = if (r.min == crate::mutation::Corner::Arc) == *at_min { RayKind::P } else { RayKind::S };
                let mut cells: Vec<(i64, usize)> = Vec::new();
                for (&l, &(zone, k)) in &g.window {
                    if owner(zone, l).is_some_and(|o| o != sheet) {
                        continue;
                    }
                    let hit = [l, (l.1, l.0 + m), (l.1 - m, l.0)].into_iter().find_map(|p| on(p));
                    if let Some(pos) = hit {
                        cells.push((pos, k));
                    }
                }
                if cells.is_empty() {
                    continue;
                }
                cells.sort();
                let mut nodes: Vec<usize> = cells.into_iter().map(|c| c.1).collect();
                nodes.dedup();
                let ray = Ray { sheet, kind, dir: *dir, cells: nodes };
                if !out.contains(&ray) {
                    out.push(ray);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeRegion {
    pub region: Region,
    pub lift: Option<Lift>,
    pub sheet: Option<Sheet>,
    /// On the boundary of a rectangle.
    pub on_ray: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMap {
    pub labels: Vec<NodeRegion>,
}

impl RegionMap {
    pub fn count(&self, r: Region) -> usize {
        self.labels.iter().filter(|l| l.region == r).count()
    }
}

fn classifications(g: &PatternG, d: &RayDiagram, k: usize) -> Vec<(Sheet, Lift, StripRegion)> {
    let mut out = Vec::new();
    for s in SHEETS {
        for &l in &g.nodes[k].lifts {
            if let Some(c) = d.classify(l, s) {
                out.push((s, l, c));
            }
        }
    }
    out
}

pub fn classify_regions(g: &PatternG, d: &RayDiagram) -> RegionMap {
    let labels = (0..g.nodes.len())
        .map(|k| {
            let node = &g.nodes[k];
            let cl = classifications(g, d, k);
            let both = cl.iter().any(|c| c.0 == Sheet::Alpha) && cl.iter().any(|c| c.0 == Sheet::Beta);
            if node.zone != Zone::Seam && both {
                return NodeRegion { region: Region::I, lift: Some(node.lifts[0]), sheet: None, on_ray: false };
            }
            let pick = if node.zone == Zone::Seam {
                cl.iter().find(|c| c.1 .0 == 0).or(cl.first())
            } else {
                cl.first()
            };
            match pick {
                None => NodeRegion { region: Region::F, lift: None, sheet: None, on_ray: false },
                Some(&(s, l, c)) => NodeRegion {
                    region: c.region(),
                    lift: Some(l),
                    sheet: Some(s),
                    on_ray: d.sheets[sheet_index(s)].on_ray(l),
                },
            }
        })
        .collect();
    RegionMap { labels }
}

/// A projection value and the node it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reading {
    pub value: BigInt,
    pub node: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionSet {
    pub node: usize,
    pub lift: Lift,
    pub sheet: Option<Sheet>,
    pub region: Region,
    /// `(p_up, p_down, s_up, s_down)` on `Z̄`, `(1+, 2+, 1-, 2-)` on `X` and `Y`.
    pub values: Option<Vec<Reading>>,
    /// The same projections read on the strip of the doubled polygon.
    pub strip: Option<Vec<BigInt>>,
    /// `(R+, A+, R-, A-)` for cells of `B`.
    pub ra: Option<[Reading; 4]>,
}

impl ProjectionSet {
    pub fn delta(&self) -> Option<BigInt> {
        let v: Vec<&BigInt> = self.values.as_ref()?.iter().map(|r| &r.value).collect();
        Some(match self.region {
            Region::Z1 | Region::Z2 => delta_z(v[0], v[1], v[2], v[3]),
            Region::X => delta_x(&[v[0].clone(), v[1].clone()], &[v[2].clone(), v[3].clone()]),
            Region::Y => delta_y(&[v[0].clone(), v[1].clone()], &[v[2].clone(), v[3].clone()]),
            Region::I | Region::F => return None,
        })
    }

    pub fn named_values(&self) -> Vec<(&'static str, BigInt)> {
        let names: [&'static str; 4] = match self.region {
            Region::Z1 | Region::Z2 => ["p_up", "p_down", "s_up", "s_down"],
            _ => ["1+", "2+", "1-", "2-"],
        };
        let mut out: Vec<(&'static str, BigInt)> = self
            .values
            .iter()
            .flat_map(|v| names.iter().zip(v).map(|(n, r)| (*n, r.value.clone())))
            .collect();
        if let Some(ra) = &self.ra {
            out.extend(["R+", "A+", "R-", "A-"].into_iter().zip(ra).map(|(n, r)| (n, r.value.clone())));
        }
        out
    }

    /// Each projection matches the strip projection of its lift.
    pub fn agrees_with_strip(&self) -> bool {
        match (&self.values, &self.strip) {
            (Some(v), Some(s)) => v.iter().map(|r| &r.value).eq(s.iter()),
            _ => false,
        }
    }
}

struct Walker<'a> {
    g: &'a PatternG,
    d: &'a RayDiagram,
    own: Sheet,
}

type Hit = (BigInt, Lift);

impl Walker<'_> {
    fn rays(&self, l: Lift) -> &[(Dir, RayKind)] {
        let zone = self.g.zone_of(l).expect("walks stay in the window");
        let s = owner(zone, l).unwrap_or(self.own);
        self.d.rays_of(l, s)
    }

    fn hit(&self, l: Lift, travel: Dir, kind: Option<RayKind>) -> bool {
        self.rays(l).iter().any(|&(o, k)| o == travel.other() && kind.is_none_or(|kk| kk == k))
    }

    fn walk_hits(&self, l: Lift, d: Dir, forward: bool, kind: Option<RayKind>) -> (Vec<Hit>, Lift) {
        let mut out = Vec::new();
        let mut last = l;
        for (p, dd) in self.g.walk(l, d, forward) {
            last = p;
            if self.hit(p, dd, kind) {
                out.push((self.g.value(p).clone(), p));
            }
        }
        (out, last)
    }

    fn is_long_row(&self, l: Lift) -> bool {
        self.g.zone_of(l) == Some(Zone::B) && l.1 - l.0 == self.g.n as i64
    }

    /// Continues a path that died in the long row of `B` along the path through the zero at its other end.
    fn continuation(&self, l: Lift, d: Dir, forward: bool, kind: Option<RayKind>) -> Vec<Hit> {
        let (_, z) = self.walk_hits(l, d, !forward, None);
        if z.0 != z.1 {
            return vec![];
        }
        if forward {
            self.walk_hits(z, Dir::NE, false, kind).0
        } else {
            self.walk_hits(z, Dir::SE, true, kind).0
        }
    }

    fn pick(hs: Vec<Hit>, need: usize) -> Option<Vec<Hit>> {
        if hs.len() < need {
            return None;
        }
        Some(if need == 2 { vec![hs[1].clone(), hs[0].clone()] } else { vec![hs[0].clone()] })
    }

    fn z_projections(&self, l: Lift, r: &Rect) -> Option<[Hit; 4]> {
        let z1 = r.min == crate::mutation::Corner::Arc;
        let (before, after) = if z1 { (RayKind::P, RayKind::S) } else { (RayKind::S, RayKind::P) };
        let find = |d: Dir, forward: bool, kind: RayKind| -> Option<Hit> {
            if self.rays(l).iter().any(|&(o, k)| o == d.other() && k == kind) {
                return Some((self.g.value(l).clone(), l));
            }
            let (hs, end) = self.walk_hits(l, d, forward, Some(kind));
            if let Some(h) = hs.into_iter().next() {
                return Some(h);
            }
            if self.is_long_row(end) {
                return Self::pick(self.continuation(l, d, forward, Some(kind)), 1).map(|mut v| v.remove(0));
            }
            None
        };
        let se_before = find(Dir::SE, false, before)?;
        let se_after = find(Dir::SE, true, after)?;
        let ne_before = find(Dir::NE, false, before)?;
        let ne_after = find(Dir::NE, true, after)?;
        Some(if z1 {
            [se_before, ne_before, ne_after, se_after]
        } else {
            [ne_after, se_after, se_before, ne_before]
        })
    }

    fn touches(&self, l: Lift, d: Dir, forward: bool) -> bool {
        self.g.walk(l, d, forward).into_iter().any(|(p, dd)| {
            let in_i = self.g.zone_of(p) == Some(Zone::B)
                && SHEETS.iter().all(|&s| self.d.classify(p, s).is_some());
            in_i || self.hit(p, dd, None)
        })
    }

    fn xy_projections(&self, l: Lift) -> Vec<[Hit; 4]> {
        let mut res = Vec::new();
        for (dp, dm) in [(Dir::NE, Dir::SE), (Dir::SE, Dir::NE)] {
            if !(self.touches(l, dp, true) && self.touches(l, dm, false)) {
                continue;
            }
            let mut sides = Vec::new();
            for (d, forward) in [(dp, true), (dm, false)] {
                let (mut hs, end) = self.walk_hits(l, d, forward, None);
                hs.truncate(2);
                if hs.len() < 2 {
                    if !self.is_long_row(end) {
                        break;
                    }
                    match Self::pick(self.continuation(l, d, forward, None), 2 - hs.len()) {
                        Some(more) => hs.extend(more),
                        None => break,
                    }
                }
                sides.push(hs);
            }
            if sides.len() == 2 {
                let (p, q) = (&sides[0], &sides[1]);
                res.push([p[0].clone(), p[1].clone(), q[0].clone(), q[1].clone()]);
            }
        }
        res
    }
}

fn reading(g: &PatternG, h: &Hit) -> Reading {
    Reading {
        value: h.0.clone(),
        node: g.node_at(h.1).expect("hits lie in the window"),
    }
}

impl PatternG {
    fn first_in_zone(&self, l: Lift, d: Dir, forward: bool, zone: Zone) -> Option<Lift> {
        self.walk(l, d, forward).into_iter().map(|p| p.0).find(|&p| self.zone_of(p) == Some(zone))
    }

    fn end_of(&self, l: Lift, d: Dir, forward: bool) -> Option<Lift> {
        self.walk(l, d, forward).last().map(|p| p.0)
    }

    /// `(R+, A+, R-, A-)` of a cell of `B`: the first `A` and `Â` cells on its sectional paths,
    /// and the first seam cells on the paths through the zeros where those end.
    pub fn seam_projections(&self, k: usize) -> Option<[Reading; 4]> {
        let node = &self.nodes[k];
        if node.zone != Zone::B {
            return None;
        }
        let l = node.lifts[0];
        let a_minus = self.first_in_zone(l, Dir::SE, false, Zone::A)?;
        let a_plus = self.first_in_zone(l, Dir::NE, true, Zone::AHat)?;
        let z = self.end_of(l, Dir::SE, false)?;
        let z2 = self.end_of(l, Dir::NE, true)?;
        if z.0 != z.1 || z2.0 != z2.1 {
            return None;
        }
        let r_plus = self.first_in_zone(z, Dir::NE, false, Zone::Seam)?;
        let r_minus = self.first_in_zone(z2, Dir::SE, true, Zone::Seam)?;
        Some([r_plus, a_plus, r_minus, a_minus].map(|l| Reading { value: self.value(l).clone(), node: self.window[&l].1 }))
    }
}

/// Lifts tried for a node: `A` and `Â` cells with their twin, seam cells with both lifts.
fn twins(g: &PatternG, k: usize) -> Vec<Lift> {
    let node = &g.nodes[k];
    let n = g.n as i64;
    let l = node.lifts[0];
    match node.zone {
        Zone::A if g.in_window((l.0 + n, l.1 + n)) => vec![l, (l.0 + n, l.1 + n)],
        Zone::AHat if g.in_window((l.0 - n, l.1 - n)) => vec![l, (l.0 - n, l.1 - n)],
        Zone::Seam => {
            let mut v = node.lifts.clone();
            v.sort();
            v
        }
        _ => vec![l],
    }
}

/// Projection sets of a node on every lift and sheet that classifies it.
pub fn candidates(g: &PatternG, d: &RayDiagram, k: usize) -> Vec<ProjectionSet> {
    let mut out = Vec::new();
    let ra = g.seam_projections(k);
    let e = |x: i64, y: i64| g.strip.get(x, y);
    for l in twins(g, k) {
        for (si, s) in SHEETS.into_iter().enumerate() {
            let Some(c) = d.classify(l, s) else { continue };
            let w = Walker { g, d, own: s };
            let geo = &d.sheets[si];
            let (values, strip) = match c {
                StripRegion::Z(r) => (
                    w.z_projections(l, &r).map(|h| h.iter().map(|h| reading(g, h)).collect()),
                    Some(geo.z_projections(&e, l, &r).to_vec()),
                ),
                _ => {
                    let rs = w.xy_projections(l);
                    (
                        (rs.len() == 1).then(|| rs[0].iter().map(|h| reading(g, h)).collect()),
                        geo.xy_projections(&e, l).map(|[p, q]| vec![p[0].clone(), p[1].clone(), q[0].clone(), q[1].clone()]),
                    )
                }
            };
            out.push(ProjectionSet {
                node: k,
                lift: l,
                sheet: Some(s),
                region: c.region(),
                values,
                strip,
                ra: ra.clone(),
            });
        }
    }
    out
}

pub fn project(g: &PatternG, d: &RayDiagram, regions: &RegionMap, k: usize) -> Result<ProjectionSet> {
    let label = regions.labels[k];
    let node = &g.nodes[k];
    match label.region {
        Region::I | Region::F => {
            let ra = g.seam_projections(k).ok_or_else(|| {
                FriezeError::RegionMismatch(format!("node {k} in {:?} has no projections", label.region))
            })?;
            Ok(ProjectionSet {
                node: k,
                lift: node.lifts[0],
                sheet: None,
                region: label.region,
                values: None,
                strip: None,
                ra: Some(ra),
            })
        }
        _ => candidates(g, d, k)
            .into_iter()
            .find(|s| s.values.is_some())
            .ok_or_else(|| FriezeError::RegionMismatch(format!("node {k} has no complete projection set"))),
    }
}
