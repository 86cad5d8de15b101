//! ASCII pictures of friezes and of the quotient pattern, in the half-offset diamond layout.

use std::collections::{BTreeMap, HashSet};

use crate::frieze::{FriezeGrid, FriezeKind};
use crate::mutation::Region;
use crate::patterng::{PatternG, RayDiagram, RegionMap};

/// Places `(row, half-column, text)` items right-aligned in cells of `width` characters.
fn layout(items: &[(usize, i64, String)], width: usize) -> String {
    let half = width.div_ceil(2).max(1);
    let lo = items.iter().map(|i| i.1).min().unwrap_or(0);
    let mut lines: BTreeMap<usize, Vec<(i64, &str)>> = BTreeMap::new();
    for (r, pos, text) in items {
        lines.entry(*r).or_default().push((pos - lo, text));
    }
    let mut out = String::new();
    let last = lines.keys().next_back().copied().unwrap_or(0);
    for r in 0..=last {
        let mut line = String::new();
        if let Some(cells) = lines.get_mut(&r) {
            cells.sort();
            for (pos, text) in cells.iter() {
                let end = (*pos as usize + 2) * half;
                let start = end.saturating_sub(text.len());
                if line.len() < start {
                    line.push_str(&" ".repeat(start - line.len()));
                } else if !line.is_empty() {
                    line.push(' ');
                }
                line.push_str(text);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Rows from the top 1-row down, `columns` entries each, every row shifted half a cell from the one above.
pub fn render_frieze(f: &FriezeGrid, columns: usize) -> String {
    let last = match f.kind() {
        FriezeKind::TypeA(n) => n as i64 + 1,
        FriezeKind::TypeD(n) => n as i64,
    };
    let mut items = Vec::new();
    for r in 0..=last {
        for j in 0..columns as i64 {
            items.push((r as usize, 2 * j + r, f.entry(r, j).to_string()));
        }
    }
    let width = items.iter().map(|i| i.2.len()).max().unwrap_or(1) + 1;
    layout(&items, width)
}

/// Window of the pattern with a region glyph after each value; `1`, `2` mark `1_a`, `2_a`,
/// `!` marks the cut arc and `*` cells on rays.
pub fn render_regions(g: &PatternG, d: &RayDiagram, regions: &RegionMap) -> String {
    let on_ray: HashSet<usize> = d.rays.iter().flat_map(|r| r.cells.iter().copied()).collect();
    let mut items = Vec::new();
    for (k, node) in g.nodes.iter().enumerate() {
        let label = regions.labels[k];
        let mark = if k == d.one_a || k == d.one_a_hat {
            "1"
        } else if k == d.two_a || k == d.two_a_hat {
            "2"
        } else if k == g.cut_unit {
            "!"
        } else if on_ray.contains(&k) || label.on_ray {
            "*"
        } else {
            ""
        };
        for &(x, y) in &node.lifts {
            let text = format!("{}{}{}", node.value, label.region.glyph(), mark);
            items.push(((y - x) as usize, x + y, text));
        }
    }
    let width = items.iter().map(|i| i.2.len()).max().unwrap_or(1) + 1;
    let mut out = layout(&items, width);
    let legend: Vec<String> = [Region::X, Region::Y, Region::Z1, Region::Z2, Region::I, Region::F]
        .iter()
        .map(|r| format!("{}={r:?} ({})", r.glyph(), regions.count(*r)))
        .collect();
    out.push_str(&format!("arc {} case {:?}: {}\n", d.arc, d.case, legend.join(" ")));
    out
}
