//! Brute-force ground truth: enumeration of triangulations and differential checks
//! of the closed-form mutations against friezes rebuilt from the flipped triangulation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cutglue::frieze_d;
use crate::error::{FriezeError, Result};
use crate::frieze::{equivalent, frieze_a, FriezeGrid};
use crate::mutation::{mutate_frieze_a, mutate_frieze_d_with, mutate_pattern_g_with, rebuilt_frieze_a, MutationOptions};
use crate::patterng::{build_pattern_g, classify_regions, ray_diagram};
use crate::surfaces::{PolygonTriangulation, PuncturedArc, PuncturedTriangulation, Triangulated};

pub const MAX_POLYGON: usize = 12;
pub const MAX_PUNCTURED: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    Polygon,
    PuncturedDisk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub surface: SurfaceKind,
    pub size: usize,
    pub mode: Mode,
}

impl EnumerationSpec {
    pub fn exhaustive(surface: SurfaceKind, size: usize) -> Self {
        EnumerationSpec { surface, size, mode: Mode::Exhaustive }
    }

    pub fn sampled(surface: SurfaceKind, size: usize, seed: u64, count: usize) -> Self {
        EnumerationSpec { surface, size, mode: Mode::Sampled { seed, count } }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Instance {
    Polygon(PolygonTriangulation),
    Punctured(PuncturedTriangulation),
}

/// Every triangulation of the `m`-gon.
pub fn enumerate_polygon(m: usize) -> Vec<PolygonTriangulation> {
    fn sub(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if hi - lo < 2 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in lo + 1..hi {
            for left in &sub(lo, k) {
                for right in &sub(k, hi) {
                    let mut d = left.clone();
                    d.extend(right);
                    if k - lo >= 2 {
                        d.push((lo, k));
                    }
                    if hi - k >= 2 {
                        d.push((k, hi));
                    }
                    out.push(d);
                }
            }
        }
        out
    }
    sub(0, m - 1)
        .into_iter()
        .map(|d| PolygonTriangulation::new(m, d.into_iter().filter(|&(i, j)| !(i == 0 && j == m - 1))))
        .collect()
}

/// Every triangulation of the once-punctured `n`-gon, by backtracking over compatible arcs.
pub fn enumerate_punctured(n: usize) -> Vec<PuncturedTriangulation> {
    let arcs = PuncturedArc::all(n);
    let mut out = Vec::new();
    let mut chosen: Vec<PuncturedArc> = Vec::with_capacity(n);
    fn go(
        arcs: &[PuncturedArc],
        from: usize,
        n: usize,
        chosen: &mut Vec<PuncturedArc>,
        out: &mut Vec<PuncturedTriangulation>,
    ) {
        if chosen.len() == n {
            let t = PuncturedTriangulation::new(n, chosen.iter().copied());
            if t.validate().is_ok() {
                out.push(t);
            }
            return;
        }
        for k in from..arcs.len() {
            if arcs.len() - k < n - chosen.len() {
                return;
            }
            let a = arcs[k];
            if chosen.iter().any(|b| a.crosses(b, n)) {
                continue;
            }
            chosen.push(a);
            go(arcs, k + 1, n, chosen, out);
            chosen.pop();
        }
    }
    go(&arcs, 0, n, &mut chosen, &mut out);
    out
}

/// Count of maximal pairwise compatible arc sets, by testing every subset.
pub fn brute_force_punctured_count(n: usize) -> usize {
    let arcs = PuncturedArc::all(n);
    let k = arcs.len();
    assert!(k <= 24, "subset search is only meant for tiny disks");
    let compatible: Vec<u32> = (0..k)
        .map(|i| (0..k).filter(|&j| !arcs[i].crosses(&arcs[j], n)).fold(0u32, |acc, j| acc | (1 << j)))
        .collect();
    let mut count = 0;
    for set in 1u32..(1 << k) {
        let members = (0..k).filter(|&i| set & (1 << i) != 0);
        let common = members.fold(u32::MAX, |acc, i| acc & compatible[i]);
        if common & set != set {
            continue;
        }
        // A loop without its radius is not an arc of a triangulation, so maximality is checked on the rest.
        let t = PuncturedTriangulation::new(n, (0..k).filter(|&i| set & (1 << i) != 0).map(|i| arcs[i]));
        let complete = (0..k).all(|i| set & (1 << i) != 0 || common & (1 << i) == 0);
        if complete && t.validate().is_ok() {
            count += 1;
        }
    }
    count
}

fn rotate_arc(a: PuncturedArc, k: usize, n: usize) -> PuncturedArc {
    match a {
        PuncturedArc::Radius(v) => PuncturedArc::Radius((v + k) % n),
        PuncturedArc::Loop(v) => PuncturedArc::Loop((v + k) % n),
        PuncturedArc::Peripheral(x, y) => PuncturedArc::Peripheral((x + k) % n, (y + k) % n),
    }
}

/// Lexicographically least arc list over all rotations.
pub fn canonical_punctured(t: &PuncturedTriangulation) -> Vec<PuncturedArc> {
    let n = t.size();
    (0..n)
        .map(|k| t.arcs().iter().map(|&a| rotate_arc(a, k, n)).collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>())
        .min()
        .expect("n > 0")
}

pub fn canonical_polygon(t: &PolygonTriangulation) -> Vec<(usize, usize)> {
    let m = t.size();
    (0..m)
        .map(|k| {
            t.diagonals()
                .iter()
                .map(|&(i, j)| {
                    let (x, y) = ((i + k) % m, (j + k) % m);
                    (x.min(y), x.max(y))
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
        })
        .min()
        .expect("m > 0")
}

fn sample<T: Clone>(items: Vec<T>, seed: u64, count: usize) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    items.choose_multiple(&mut rng, count).cloned().collect()
}

pub fn enumerate(spec: &EnumerationSpec) -> Result<Vec<Instance>> {
    let (bound, min) = match spec.surface {
        SurfaceKind::Polygon => (MAX_POLYGON, 4),
        SurfaceKind::PuncturedDisk => (MAX_PUNCTURED, 4),
    };
    if spec.size > bound {
        return Err(FriezeError::SizeTooLarge { size: spec.size, bound });
    }
    if spec.size < min {
        return Err(FriezeError::InvalidTriangulation(vec![crate::surfaces::Violation::TooSmall {
            min,
            found: spec.size,
        }]));
    }
    let all: Vec<Instance> = match spec.surface {
        SurfaceKind::Polygon => enumerate_polygon(spec.size).into_iter().map(Instance::Polygon).collect(),
        SurfaceKind::PuncturedDisk => enumerate_punctured(spec.size).into_iter().map(Instance::Punctured).collect(),
    };
    Ok(match spec.mode {
        Mode::Exhaustive => all,
        Mode::Sampled { seed, count } => sample(all, seed, count),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub location: String,
    /// Region of the cell, for pattern cells.
    pub region: Option<String>,
    pub expected: BigInt,
    pub got: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    pub instance: usize,
    pub triangulation: String,
    pub arc: String,
    pub mismatches: Vec<Mismatch>,
    /// Set when the closed form refused the instance.
    pub error: Option<String>,
    pub pass: bool,
}

impl DiffReport {
    fn new(instance: usize, triangulation: String, arc: String, mismatches: Vec<Mismatch>, error: Option<String>) -> Self {
        let pass = mismatches.is_empty() && error.is_none();
        DiffReport { instance, triangulation, arc, mismatches, error, pass }
    }
}

fn grid_mismatches(expected: &FriezeGrid, got: &FriezeGrid) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (r, (e, g)) in expected.rows().iter().zip(got.rows()).enumerate() {
        for (j, (x, y)) in e.iter().zip(g).enumerate() {
            if x != y {
                out.push(Mismatch {
                    location: format!("row {} column {j}", r + 1),
                    region: None,
                    expected: x.clone(),
                    got: y.clone(),
                });
            }
        }
    }
    out
}

pub fn describe_polygon(t: &PolygonTriangulation) -> String {
    let d: Vec<String> = t.diagonals().iter().map(|(i, j)| format!("{i},{j}")).collect();
    format!("polygon {} [{}]", t.size(), d.join(" "))
}

pub fn describe_punctured(t: &PuncturedTriangulation) -> String {
    let d: Vec<String> = t.arcs().iter().map(|a| a.to_string()).collect();
    format!("punctured {} [{}]", t.size(), d.join(" "))
}

pub fn check_polygon_flip(instance: usize, t: &PolygonTriangulation, a: (usize, usize)) -> DiffReport {
    let name = describe_polygon(t);
    let arc = format!("{},{}", a.0, a.1);
    let run = || -> Result<Vec<Mismatch>> {
        let f = frieze_a(t)?;
        let got = mutate_frieze_a(&f, t, a)?.result;
        let expected = rebuilt_frieze_a(t, a)?;
        Ok(grid_mismatches(&expected, &got))
    };
    match run() {
        Ok(m) => DiffReport::new(instance, name, arc, m, None),
        Err(e) => DiffReport::new(instance, name, arc, vec![], Some(e.to_string())),
    }
}

/// Arcs a closed-form mutation applies to.
pub fn flippable(t: &PuncturedTriangulation) -> Vec<PuncturedArc> {
    t.arcs().iter().filter(|a| !t.is_self_folded_radius(a)).copied().collect()
}

/// Compares node by node against the pattern of the flipped triangulation, then the ungluing.
pub fn check_punctured_flip(
    instance: usize,
    t: &PuncturedTriangulation,
    a: &PuncturedArc,
    opts: MutationOptions,
) -> DiffReport {
    let name = describe_punctured(t);
    let arc = a.to_string();
    let run = || -> Result<(Vec<Mismatch>, Option<String>)> {
        let flipped = t.flip(*a)?;
        let v = t.cut_radius(Some(a)).ok_or(FriezeError::NoAlternateCut(*a))?;
        let g = build_pattern_g(t, &PuncturedArc::Radius(v))?;
        let truth = build_pattern_g(&flipped, &PuncturedArc::Radius(v))?;
        let regions = classify_regions(&g, &ray_diagram(&g, a)?);
        let mut mismatches = Vec::new();
        let report = mutate_pattern_g_with(&g, a, opts);
        match &report {
            Ok(r) => {
                for (k, (node, got)) in g.nodes.iter().zip(&r.result.values).enumerate() {
                    let expected = &truth.nodes[k].value;
                    if expected != got {
                        mismatches.push(Mismatch {
                            location: format!("node {:?}", node.lifts[0]),
                            region: Some(format!("{:?}", regions.labels[k].region)),
                            expected: expected.clone(),
                            got: got.clone(),
                        });
                    }
                }
            }
            Err(e) => return Ok((mismatches, Some(e.to_string()))),
        }
        if !mismatches.is_empty() {
            return Ok((mismatches, None));
        }
        let got = mutate_frieze_d_with(t, a, opts)?.result;
        let expected = frieze_d(&flipped)?;
        if !equivalent(&got, &expected) {
            return Ok((grid_mismatches(&expected, &got), Some("friezes are not equivalent".into())));
        }
        Ok((mismatches, None))
    };
    match run() {
        Ok((m, e)) => DiffReport::new(instance, name, arc, m, e),
        Err(e) => DiffReport::new(instance, name, arc, vec![], Some(e.to_string())),
    }
}

pub fn differential_mutation_check(spec: &EnumerationSpec) -> Result<Vec<DiffReport>> {
    differential_mutation_check_with(spec, MutationOptions::default())
}

pub fn differential_mutation_check_with(spec: &EnumerationSpec, opts: MutationOptions) -> Result<Vec<DiffReport>> {
    let mut out = Vec::new();
    for (k, inst) in enumerate(spec)?.iter().enumerate() {
        match inst {
            Instance::Polygon(t) => {
                for &a in t.diagonals() {
                    out.push(check_polygon_flip(k, t, a));
                }
            }
            Instance::Punctured(t) => {
                for a in flippable(t) {
                    out.push(check_punctured_flip(k, t, &a, opts));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::polygon_arcs_cross;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (4..=9).map(|m| enumerate_polygon(m).len()).collect();
        assert_eq!(counts, vec![2, 5, 14, 42, 132, 429]);
        for t in enumerate_polygon(7) {
            assert!(t.validate().is_ok());
        }
    }

    #[test]
    fn punctured_square_count_matches_subset_search() {
        let ts = enumerate_punctured(4);
        assert_eq!(ts.len(), brute_force_punctured_count(4));
        let distinct: BTreeSet<_> = ts.iter().collect();
        assert_eq!(distinct.len(), ts.len());
    }

    #[test]
    fn enumeration_is_flip_closed() {
        let ts: BTreeSet<_> = enumerate_punctured(5).into_iter().collect();
        for t in &ts {
            for a in flippable(t) {
                assert!(ts.contains(&t.flip(a).unwrap()), "{} at {a}", describe_punctured(t));
            }
        }
    }

    #[test]
    fn size_bounds() {
        let spec = EnumerationSpec::exhaustive(SurfaceKind::PuncturedDisk, 9);
        assert_eq!(enumerate(&spec), Err(FriezeError::SizeTooLarge { size: 9, bound: 8 }));
    }

    #[test]
    fn sampling_is_reproducible() {
        let spec = EnumerationSpec::sampled(SurfaceKind::PuncturedDisk, 6, 7, 20);
        assert_eq!(enumerate(&spec).unwrap(), enumerate(&spec).unwrap());
        assert_eq!(enumerate(&spec).unwrap().len(), 20);
    }

    #[test]
    fn rotation_canonical_form() {
        let t = PuncturedTriangulation::new(4, [PuncturedArc::Radius(1), PuncturedArc::Radius(3), PuncturedArc::Peripheral(1, 3), PuncturedArc::Peripheral(3, 1)]);
        let u = PuncturedTriangulation::new(4, [PuncturedArc::Radius(0), PuncturedArc::Radius(2), PuncturedArc::Peripheral(0, 2), PuncturedArc::Peripheral(2, 0)]);
        assert_eq!(canonical_punctured(&t), canonical_punctured(&u));
        let f = PolygonTriangulation::fan(6, 0);
        let g = PolygonTriangulation::fan(6, 3);
        assert_eq!(canonical_polygon(&f), canonical_polygon(&g));
        assert!(!polygon_arcs_cross(6, (0, 2), (2, 4)));
    }
}
