//! Closed-form frieze mutation.
//!
//! Type A cells are read on the strip: the arc `(x, y)` sits at `(x, y)` with
//! `0 < y - x < m`. Flipping `a = (p, q)` with quadrilateral `p < r < q < s` cuts the
//! strip by four rectangles per period whose corners are the entries of `a` and its
//! partner `a' = (r, s)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cutglue::{glued_pattern, unglue, GlueSource, GluedPattern, Sheet};
use crate::error::{FriezeError, Result};
use crate::frieze::{frieze_a_from_quiddity, Cell, FriezeGrid, FriezeKind};
use crate::patterng::{NodeKey, 
    build_pattern_g, classify_regions, project, ray_diagram, Dir, Lift, PatternG, Zone,
};
use crate::surfaces::{PolygonTriangulation, PuncturedArc, PuncturedTriangulation};

/// Which special entry sits at a rectangle's lowest corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    Arc,
    Partner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x: (i64, i64),
    pub y: (i64, i64),
    pub min: Corner,
}

impl Rect {
    pub fn closed(&self, c: Lift) -> bool {
        self.x.0 <= c.0 && c.0 <= self.x.1 && self.y.0 <= c.1 && c.1 <= self.y.1
    }

    pub fn side_corner(&self, c: Lift) -> bool {
        c == (self.x.0, self.y.1) || c == (self.x.1, self.y.0)
    }

    pub fn on_edge(&self, c: Lift) -> bool {
        ((c.0 == self.x.0 || c.0 == self.x.1) && self.y.0 <= c.1 && c.1 <= self.y.1)
            || ((c.1 == self.y.0 || c.1 == self.y.1) && self.x.0 <= c.0 && c.0 <= self.x.1)
    }
}

fn open(c: Lift, x: (i64, i64), y: (i64, i64)) -> bool {
    x.0 < c.0 && c.0 < x.1 && y.0 < c.1 && c.1 < y.1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    X,
    Y,
    /// Rectangles with `1_a` leftmost.
    Z1,
    /// Rectangles with `2_a` leftmost.
    Z2,
    I,
    F,
}

impl Region {
    pub fn glyph(&self) -> char {
        match self {
            Region::X => 'X',
            Region::Y => 'Y',
            Region::Z1 => 'z',
            Region::Z2 => 'Z',
            Region::I => 'I',
            Region::F => '.',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripRegion {
    Z(Rect),
    X,
    Y,
}

impl StripRegion {
    pub fn region(&self) -> Region {
        match self {
            StripRegion::Z(r) if r.min == Corner::Arc => Region::Z1,
            StripRegion::Z(_) => Region::Z2,
            StripRegion::X => Region::X,
            StripRegion::Y => Region::Y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RayKind {
    /// Through the entry of the flipped arc.
    P,
    /// Through the entry of its partner.
    S,
}

/// Region geometry of one flip of a polygon triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeARegions {
    pub m: usize,
    pub arc: (usize, usize),
    pub partner: (usize, usize),
    pub rects: Vec<Rect>,
}

impl TypeARegions {
    pub fn new(t: &PolygonTriangulation, a: (usize, usize)) -> Result<Self> {
        let (p, q) = if a.0 < a.1 { a } else { (a.1, a.0) };
        let (r, s) = t.quadrilateral((p, q))?;
        let m = t.size() as i64;
        let (p, q, r, s) = (p as i64, q as i64, r as i64, s as i64);
        let s = if s < q { s + m } else { s };
        let base = [
            ((p, r), (q, s), Corner::Arc),
            ((r, q), (s, p + m), Corner::Partner),
            ((q, s), (p + m, r + m), Corner::Arc),
            ((s, p + m), (r + m, q + m), Corner::Partner),
        ];
        let rects = (-3..=3)
            .flat_map(|k| {
                base.iter().map(move |&(x, y, min)| Rect {
                    x: (x.0 + k * m, x.1 + k * m),
                    y: (y.0 + k * m, y.1 + k * m),
                    min,
                })
            })
            .collect();
        let partner = ((r % m) as usize, (s % m) as usize);
        Ok(TypeARegions {
            m: t.size(),
            arc: (p as usize, q as usize),
            partner: (partner.0.min(partner.1), partner.0.max(partner.1)),
            rects,
        })
    }

    pub fn classify(&self, c: Lift) -> Option<StripRegion> {
        if let Some(r) = self.rects.iter().find(|r| r.closed(c) && !r.side_corner(c)) {
            return Some(StripRegion::Z(*r));
        }
        for w in self.rects.windows(2) {
            let kind = if w[0].min == Corner::Arc { StripRegion::X } else { StripRegion::Y };
            if open(c, w[0].x, w[1].y) || open(c, w[1].x, w[0].y) {
                return Some(kind);
            }
        }
        None
    }

    /// Rays through `c`: constant-`x` edges run SE, constant-`y` edges NE.
    pub fn rays_at(&self, c: Lift) -> Vec<(Dir, RayKind)> {
        let mut out = Vec::new();
        let kind = |r: &Rect, at_min: bool| {
            if (r.min == Corner::Arc) == at_min {
                RayKind::P
            } else {
                RayKind::S
            }
        };
        for r in &self.rects {
            for (xx, at_min) in [(r.x.0, true), (r.x.1, false)] {
                if c.0 == xx && r.y.0 <= c.1 && c.1 <= r.y.1 {
                    out.push((Dir::SE, kind(r, at_min)));
                }
            }
            for (yy, at_min) in [(r.y.0, true), (r.y.1, false)] {
                if c.1 == yy && r.x.0 <= c.0 && c.0 <= r.x.1 {
                    out.push((Dir::NE, kind(r, at_min)));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn on_ray(&self, c: Lift) -> bool {
        self.rects.iter().any(|r| r.on_edge(c))
    }

    /// `(p_up, p_down, s_up, s_down)` of a cell in the rectangle `r`.
    pub fn z_projections<'s>(&self, e: &'s impl Fn(i64, i64) -> &'s BigInt, c: Lift, r: &Rect) -> [BigInt; 4] {
        let (x, y) = c;
        let (x1, x2, y1, y2) = (r.x.0, r.x.1, r.y.0, r.y.1);
        match r.min {
            Corner::Arc => [e(x, y1).clone(), e(x1, y).clone(), e(x2, y).clone(), e(x, y2).clone()],
            Corner::Partner => [e(x2, y).clone(), e(x, y2).clone(), e(x, y1).clone(), e(x1, y).clone()],
        }
    }

    /// First two ray cells ahead and behind a cell of `X` or `Y`.
    pub fn xy_projections<'s>(&self, e: &'s impl Fn(i64, i64) -> &'s BigInt, c: Lift) -> Option<[[BigInt; 2]; 2]> {
        let m = self.m as i64;
        let hits = |dx: i64, dy: i64| -> Option<[BigInt; 2]> {
            let mut h = Vec::new();
            let (mut x, mut y) = c;
            loop {
                x += dx;
                y += dy;
                if !(0 < y - x && y - x < m) {
                    return None;
                }
                if self.on_ray((x, y)) {
                    h.push(e(x, y).clone());
                    if h.len() == 2 {
                        return Some([h[0].clone(), h[1].clone()]);
                    }
                }
            }
        };
        let fw: Vec<_> = [hits(1, 0), hits(0, 1)].into_iter().flatten().collect();
        let bw: Vec<_> = [hits(-1, 0), hits(0, -1)].into_iter().flatten().collect();
        if fw.len() == 1 && bw.len() == 1 {
            Some([fw[0].clone(), bw[0].clone()])
        } else {
            None
        }
    }
}

pub fn delta_z(p_up: &BigInt, p_down: &BigInt, s_up: &BigInt, s_down: &BigInt) -> BigInt {
    s_down * p_down + s_up * p_up - BigInt::from(3) * p_down * p_up
}

pub fn delta_x(plus: &[BigInt; 2], minus: &[BigInt; 2]) -> BigInt {
    (&plus[0] - &plus[1]) * (&minus[0] - &minus[1])
}

pub fn delta_y(plus: &[BigInt; 2], minus: &[BigInt; 2]) -> BigInt {
    let two = BigInt::from(2);
    -((&plus[1] - &two * &plus[0]) * (&minus[1] - &two * &minus[0]))
}

/// Mutated value of a cell of `I` from the mutated values of its four projections.
pub fn i_cell_value(r_plus: &BigInt, a_plus: &BigInt, r_minus: &BigInt, a_minus: &BigInt) -> BigInt {
    r_plus * a_plus + r_minus * a_minus
}

/// Entry of the glued bottom row from the two factors it glues, `n1 / n2`.
pub fn split_product(product: &BigInt, factor: &BigInt) -> Result<BigInt> {
    let (q, r) = num_integer::Integer::div_rem(product, factor);
    if r != BigInt::from(0) || !q.is_positive() {
        return Err(FriezeError::NonIntegralStep {
            column: 0,
            numerator: product.to_string(),
            denominator: factor.to_string(),
        });
    }
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Frieze(Cell),
    Node(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub location: Location,
    pub old: BigInt,
    pub region: Region,
    pub projections: Vec<(&'static str, BigInt)>,
    pub delta: BigInt,
    pub new: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationReport<R> {
    pub arc: String,
    pub rows: Vec<ReportRow>,
    pub result: R,
}

pub fn mutate_frieze_a(f: &FriezeGrid, t: &PolygonTriangulation, a: (usize, usize)) -> Result<MutationReport<FriezeGrid>> {
    let m = t.size();
    if f.kind() != FriezeKind::TypeA(m - 3) {
        return Err(FriezeError::ShapeMismatch(format!("{} is not the frieze of a {m}-gon", f.kind())));
    }
    if !t.contains(a) {
        return Err(FriezeError::NotInTriangulation(format!("({},{})", a.0, a.1)));
    }
    let geo = TypeARegions::new(t, a)?;
    let table: Vec<Vec<BigInt>> = (0..m as i64)
        .map(|x| (0..=m as i64).map(|k| f.entry(k - 1, x + 1)).collect())
        .collect();
    let e = |x: i64, y: i64| -> &BigInt { &table[x.rem_euclid(m as i64) as usize][(y - x) as usize] };
    let mut rows = Vec::new();
    let mut new_rows = f.rows().to_vec();
    for r in 1..=m - 3 {
        for j in 0..m {
            let c = (j as i64 - 1, (j + r) as i64);
            let old = e(c.0, c.1).clone();
            let (region, projections, delta) = match geo.classify(c) {
                None => (Region::F, vec![], BigInt::from(0)),
                Some(StripRegion::Z(rect)) => {
                    let [pu, pd, su, sd] = geo.z_projections(&e, c, &rect);
                    let d = delta_z(&pu, &pd, &su, &sd);
                    let reg = StripRegion::Z(rect).region();
                    (reg, vec![("p_up", pu), ("p_down", pd), ("s_up", su), ("s_down", sd)], d)
                }
                Some(kind) => {
                    let [plus, minus] = geo
                        .xy_projections(&e, c)
                        .ok_or_else(|| FriezeError::RegionMismatch(format!("no projections at {c:?}")))?;
                    let d = if kind == StripRegion::X { delta_x(&plus, &minus) } else { delta_y(&plus, &minus) };
                    let [p1, p2] = plus.clone();
                    let [m1, m2] = minus.clone();
                    (kind.region(), vec![("1+", p1), ("2+", p2), ("1-", m1), ("2-", m2)], d)
                }
            };
            let new = &old - &delta;
            new_rows[r - 1][j] = new.clone();
            rows.push(ReportRow {
                location: Location::Frieze(Cell { row: r, column: j }),
                old,
                region,
                projections,
                delta,
                new,
            });
        }
    }
    Ok(MutationReport {
        arc: format!("({},{})", geo.arc.0, geo.arc.1),
        rows,
        result: FriezeGrid::new(f.kind(), new_rows)?,
    })
}

/// Rebuild-from-scratch frieze of `flip(t, a)`.
pub fn rebuilt_frieze_a(t: &PolygonTriangulation, a: (usize, usize)) -> Result<FriezeGrid> {
    use crate::surfaces::Triangulated;
    frieze_a_from_quiddity(&t.flip(a)?.quiddity()?)
}

/// Knobs used by the oracle to plant faults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MutationOptions {
    /// Leave `I` cells at their old values.
    pub skip_i_pass: bool,
}

/// Mutated values of every node of the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternValues {
    pub values: Vec<BigInt>,
}

pub fn mutate_pattern_g(pattern: &PatternG, a: &PuncturedArc) -> Result<MutationReport<PatternValues>> {
    mutate_pattern_g_with(pattern, a, MutationOptions::default())
}

pub fn mutate_pattern_g_with(
    pattern: &PatternG,
    a: &PuncturedArc,
    opts: MutationOptions,
) -> Result<MutationReport<PatternValues>> {
    let diagram = ray_diagram(pattern, a)?;
    let regions = classify_regions(pattern, &diagram);
    let mut values: Vec<Option<BigInt>> = vec![None; pattern.nodes.len()];
    let mut rows = Vec::with_capacity(pattern.nodes.len());
    let mut i_nodes = Vec::new();
    for (k, node) in pattern.nodes.iter().enumerate() {
        let region = regions.labels[k].region;
        if region == Region::I {
            i_nodes.push(k);
            continue;
        }
        let old = node.value.clone();
        if region == Region::F {
            values[k] = Some(old.clone());
            rows.push(ReportRow {
                location: Location::Node(k),
                old: old.clone(),
                region,
                projections: vec![],
                delta: BigInt::from(0),
                new: old,
            });
            continue;
        }
        let sets = crate::patterng::candidates(pattern, &diagram, k);
        let mut deltas: Vec<BigInt> = sets.iter().filter_map(|s| s.delta()).collect();
        deltas.sort();
        deltas.dedup();
        if deltas.len() != 1 {
            return Err(FriezeError::RegionMismatch(format!(
                "node {k} ({:?}) has {} distinct deltas",
                node.key,
                deltas.len()
            )));
        }
        let chosen = sets.iter().find(|s| s.delta().is_some()).expect("delta found above");
        let delta = deltas.pop().expect("one delta");
        let new = &old - &delta;
        values[k] = Some(new.clone());
        rows.push(ReportRow {
            location: Location::Node(k),
            old,
            region: chosen.region,
            projections: chosen.named_values(),
            delta,
            new,
        });
    }
    for &k in &i_nodes {
        let old = pattern.nodes[k].value.clone();
        let set = project(pattern, &diagram, &regions, k)?;
        let ra = set.ra.as_ref().expect("I cells lie in B");
        let new = if opts.skip_i_pass {
            old.clone()
        } else {
            let get = |node: usize| values[node].clone().expect("projections of I cells are never in I");
            i_cell_value(&get(ra[0].node), &get(ra[1].node), &get(ra[2].node), &get(ra[3].node))
        };
        values[k] = Some(new.clone());
        rows.push(ReportRow {
            location: Location::Node(k),
            delta: &old - &new,
            old,
            region: Region::I,
            projections: set.named_values(),
            new,
        });
    }
    let values: Vec<BigInt> = values.into_iter().map(|v| v.expect("every node mutated")).collect();
    let zero = |k: usize| matches!(pattern.nodes[k].key, NodeKey::Zero(_));
    if let Some(k) = (0..values.len()).find(|&k| !zero(k) && !values[k].is_positive()) {
        return Err(FriezeError::RegionMismatch(format!("node {k} became {}", values[k])));
    }
    Ok(MutationReport {
        arc: a.to_string(),
        rows,
        result: PatternValues { values },
    })
}

/// Glued pattern of the mutated frieze read from `B` and the hatted copy of `A`, aligned to type D columns.
pub fn glued_from_pattern(pattern: &PatternG, values: &[BigInt], hatted: bool) -> GluedPattern {
    let n = pattern.n as i64;
    let v = pattern.cut.radius;
    let mut rows = vec![vec![BigInt::from(0); pattern.n]; pattern.n - 1];
    for r in 1..n {
        for t in 1..=n {
            let lift = if t + r + 1 >= n + 2 && t >= 2 {
                (t, t + r + 1)
            } else if hatted {
                (t + n, t + r + 1 + n)
            } else {
                (t, t + r + 1)
            };
            let node = pattern.node_at(lift).expect("glued cells lie in the window");
            rows[r as usize - 1][(v + t as usize) % pattern.n] = values[node].clone();
        }
    }
    GluedPattern { n: pattern.n, rows, source: GlueSource::PatternG }
}

/// Last two rows from the seam and the long row of `B`: `r_j` and `v_j / r_j` alternate.
pub fn recover_last_rows(pattern: &PatternG, values: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let n = pattern.n;
    let v = pattern.cut.radius;
    let per = FriezeKind::TypeD(n).period();
    let val = |l: Lift| -> Result<&BigInt> {
        pattern
            .node_at(l)
            .map(|k| &values[k])
            .ok_or_else(|| FriezeError::ShapeMismatch(format!("{l:?} outside the pattern")))
    };
    let mut top = vec![BigInt::from(0); per];
    let mut bottom = vec![BigInt::from(0); per];
    for j in 0..n {
        let (t, b) = if j == 0 {
            (val((1, n as i64 + 1))?.clone(), BigInt::one())
        } else {
            let r = val((0, j as i64 + 1))?;
            let vj = val((j as i64 + 1, (j + 1 + n) as i64))?;
            let other = split_product(vj, r)?;
            if j % 2 == 1 {
                (r.clone(), other)
            } else {
                (other, r.clone())
            }
        };
        for k in 0..per / n {
            let c = (v + 1 + j + k * n) % per;
            if k == 0 {
                top[c] = t.clone();
                bottom[c] = b.clone();
            } else {
                top[c] = b.clone();
                bottom[c] = t.clone();
            }
        }
    }
    Ok((top, bottom))
}

pub fn mutate_frieze_d(t: &PuncturedTriangulation, a: &PuncturedArc) -> Result<MutationReport<FriezeGrid>> {
    mutate_frieze_d_with(t, a, MutationOptions::default())
}

pub fn mutate_frieze_d_with(
    t: &PuncturedTriangulation,
    a: &PuncturedArc,
    opts: MutationOptions,
) -> Result<MutationReport<FriezeGrid>> {
    use crate::surfaces::Triangulated;
    t.validate().map_err(FriezeError::InvalidTriangulation)?;
    if !t.contains(a) {
        return Err(FriezeError::NotInTriangulation(a.to_string()));
    }
    if t.is_self_folded_radius(a) {
        return Err(FriezeError::SelfFoldedRadius(*a));
    }
    let v = t.cut_radius(Some(a)).ok_or(FriezeError::NoAlternateCut(*a))?;
    let pattern = build_pattern_g(t, &PuncturedArc::Radius(v))?;
    let report = mutate_pattern_g_with(&pattern, a, opts)?;
    let values = &report.result.values;
    if !values[pattern.cut_unit].is_one() {
        return Err(FriezeError::SymmetryViolation(format!(
            "entry of the cut arc became {}",
            values[pattern.cut_unit]
        )));
    }
    let glued = glued_from_pattern(&pattern, values, true);
    if glued.rows != glued_from_pattern(&pattern, values, false).rows {
        return Err(FriezeError::SymmetryViolation("the two readings of the glued pattern differ".into()));
    }
    let seeded = unglue(&glued, v + 1)?;
    let (top, bottom) = recover_last_rows(&pattern, values)?;
    let n = t.size();
    if seeded.row(n - 1) != top.as_slice() || seeded.row(n) != bottom.as_slice() {
        return Err(FriezeError::SymmetryViolation("recovered last rows disagree with ungluing".into()));
    }
    debug_assert_eq!(glued_pattern(&seeded)?.rows, glued.rows);
    Ok(MutationReport {
        arc: report.arc,
        rows: report.rows,
        result: seeded,
    })
}

/// Number of cells per region, for summaries.
pub fn region_counts(rows: &[ReportRow]) -> BTreeMap<Region, usize> {
    let mut out = BTreeMap::new();
    for r in rows {
        *out.entry(r.region).or_insert(0) += 1;
    }
    out
}

/// Sheet a node's region was read from.
pub fn zone_sheet(zone: Zone, lift: Lift) -> Option<Sheet> {
    match zone {
        Zone::A => Some(Sheet::Alpha),
        Zone::AHat => Some(Sheet::Beta),
        Zone::Seam if lift.0 == 0 => Some(Sheet::Alpha),
        Zone::Seam => Some(Sheet::Beta),
        Zone::B | Zone::CutUnit => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frieze::frieze_a;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn pentagon_fan_flip() {
        let t = PolygonTriangulation::fan(5, 0);
        let f = frieze_a(&t).unwrap();
        let rep = mutate_frieze_a(&f, &t, (0, 2)).unwrap();
        let expect = frieze_a_from_quiddity(&[2, 2, 1, 3, 1]).unwrap();
        assert_eq!(rep.result, expect);
        assert_eq!(rep.result, rebuilt_frieze_a(&t, (0, 2)).unwrap());
    }

    #[test]
    fn special_entries_swap() {
        let t = PolygonTriangulation::fan(7, 0);
        let f = frieze_a(&t).unwrap();
        let rep = mutate_frieze_a(&f, &t, (0, 3)).unwrap();
        let cell = crate::frieze::arc_position_a(7, (0, 3)).unwrap();
        assert_eq!(rep.result.get(cell), &b(2));
        let cell = crate::frieze::arc_position_a(7, (2, 4)).unwrap();
        assert_eq!(rep.result.get(cell), &b(1));
        for row in &rep.rows {
            if row.region == Region::F {
                assert_eq!(row.old, row.new);
            }
        }
    }

    #[test]
    fn worked_deltas() {
        assert_eq!(delta_z(&b(2), &b(3), &b(4), &b(3)), b(-1));
        assert_eq!(delta_z(&b(2), &b(2), &b(3), &b(3)), b(0));
        assert_eq!(delta_z(&b(1), &b(2), &b(3), &b(1)), b(-1));
        assert_eq!(delta_z(&b(3), &b(5), &b(8), &b(4)), b(-1));
        assert_eq!(i_cell_value(&b(8), &b(3), &b(5), &b(19)), b(119));
        assert_eq!(split_product(&b(12), &b(2)).unwrap(), b(6));
        assert!(split_product(&b(13), &b(2)).is_err());
    }
}
