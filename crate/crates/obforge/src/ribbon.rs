//! The page surface as a combinatorial fatgraph.
//!
//! The skeleton is the union of the boundaries of all retained rectangles.
//! Its maximal straight arcs become *disks* (each arc thickens to a strip:
//! horizontal arcs sit at one contact level, vertical arcs at the other),
//! and every lattice point that is a corner of at least one retained
//! rectangle becomes a *band* joining the horizontal and vertical strips
//! through it. Each band makes a quarter left-twist between the two levels,
//! which fixes how boundary arcs chain across it.
//!
//! Boundary components are counted by a dart walk. Writing `(i, j)` for the
//! band at row line `i`, column line `j`, the walk alternates
//!
//! ```text
//! (i, j) --along the H-disk--> (i, j') --along the V-disk--> (i', j')
//! ```
//!
//! where `j'` is the cyclic predecessor of `j` among the attachments of the
//! H-disk through `(i, j)` and `i'` the cyclic predecessor of `i` on the
//! V-disk through `(i, j')`. On the full `p x q` grid this composite is the
//! diagonal shift `(i, j) -> (i-1, j-1)`, whose orbit count is `gcd(p, q)`,
//! matching the torus-link page; the same convention reproduces all the
//! published boundary counts, which is what pins it down.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::region::Rectangle;
use crate::sbd::{crossing_sign, Point, SquareBridgeDiagram};

/// Which family of parallel lines a disk lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Axis {
    /// Along a row line (contains horizontal segments).
    H,
    /// Along a column line.
    V,
}

/// One disk of the page: a maximal straight arc of the skeleton, with its
/// band attachments in position order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disk {
    pub axis: Axis,
    /// Row rank for `Axis::H`, column rank for `Axis::V`.
    pub line: usize,
    /// Arc extent along the line, in the orthogonal rank coordinate.
    pub lo: usize,
    pub hi: usize,
    /// Attachment positions (column ranks on an H-disk, row ranks on a
    /// V-disk), strictly increasing.
    pub attachments: Vec<usize>,
}

/// One band, at a lattice point that is a corner of a retained rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Band {
    pub at: Point,
    pub h_disk: usize,
    pub v_disk: usize,
}

/// The page fatgraph.
#[derive(Debug, Clone)]
pub struct Fatgraph {
    pub disks: Vec<Disk>,
    pub bands: Vec<Band>,
    band_at: BTreeMap<Point, usize>,
}

#[derive(Debug, Error)]
pub enum RibbonError {
    #[error("internal: band at (row {0}, col {1}) lies on {2} horizontal and {3} vertical skeleton arcs, expected exactly one of each")]
    BandPlacement(usize, usize, usize, usize),
    #[error("internal: boundary walk revisited a dart without closing its orbit (twist convention bug)")]
    WalkNotPermutation,
    #[error("internal: 2 - chi - |bd F| = {0} is not an even non-negative integer; the boundary-walk convention disagrees with the surface model")]
    GenusParity(i64),
    #[error("internal: embedding gap: {0}")]
    EmbeddingGap(String),
}

impl Fatgraph {
    /// Build the skeleton fatgraph of a set of retained rectangles.
    pub fn build(rects: &[Rectangle]) -> Result<Fatgraph, RibbonError> {
        let mut h_cover: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut v_cover: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut corners: BTreeSet<Point> = BTreeSet::new();
        for r in rects {
            for c in r.col_lo..r.col_hi {
                h_cover.entry(r.row_lo).or_default().push(c);
                h_cover.entry(r.row_hi).or_default().push(c);
            }
            for row in r.row_lo..r.row_hi {
                v_cover.entry(r.col_lo).or_default().push(row);
                v_cover.entry(r.col_hi).or_default().push(row);
            }
            corners.extend(r.corners());
        }
        let mut disks = Vec::new();
        for (&line, cover) in &mut h_cover {
            for (lo, hi) in runs(cover) {
                disks.push(Disk { axis: Axis::H, line, lo, hi, attachments: Vec::new() });
            }
        }
        for (&line, cover) in &mut v_cover {
            for (lo, hi) in runs(cover) {
                disks.push(Disk { axis: Axis::V, line, lo, hi, attachments: Vec::new() });
            }
        }
        let mut bands = Vec::new();
        let mut band_at = BTreeMap::new();
        for &(row, col) in &corners {
            let hs: Vec<usize> = disks
                .iter()
                .enumerate()
                .filter(|(_, d)| d.axis == Axis::H && d.line == row && d.lo <= col && col <= d.hi)
                .map(|(k, _)| k)
                .collect();
            let vs: Vec<usize> = disks
                .iter()
                .enumerate()
                .filter(|(_, d)| d.axis == Axis::V && d.line == col && d.lo <= row && row <= d.hi)
                .map(|(k, _)| k)
                .collect();
            if hs.len() != 1 || vs.len() != 1 {
                return Err(RibbonError::BandPlacement(row, col, hs.len(), vs.len()));
            }
            let id = bands.len();
            bands.push(Band { at: (row, col), h_disk: hs[0], v_disk: vs[0] });
            band_at.insert((row, col), id);
            disks[hs[0]].attachments.push(col);
            disks[vs[0]].attachments.push(row);
        }
        for d in &mut disks {
            d.attachments.sort_unstable();
            d.attachments.dedup();
        }
        Ok(Fatgraph { disks, bands, band_at })
    }

    /// Synthetic full-grid fatgraph: the page of the prior torus-link
    /// construction, with `p + q` disks and `p * q` bands.
    pub fn torus(p: usize, q: usize) -> Fatgraph {
        assert!(p >= 2 && q >= 2, "torus grid needs p >= 2 and q >= 2");
        let mut disks = Vec::new();
        for row in 1..=p {
            disks.push(Disk { axis: Axis::H, line: row, lo: 1, hi: q, attachments: (1..=q).collect() });
        }
        for col in 1..=q {
            disks.push(Disk { axis: Axis::V, line: col, lo: 1, hi: p, attachments: (1..=p).collect() });
        }
        let mut bands = Vec::new();
        let mut band_at = BTreeMap::new();
        for row in 1..=p {
            for col in 1..=q {
                band_at.insert((row, col), bands.len());
                bands.push(Band { at: (row, col), h_disk: row - 1, v_disk: p + col - 1 });
            }
        }
        Fatgraph { disks, bands, band_at }
    }

    pub fn band_at(&self, pt: Point) -> Option<usize> {
        self.band_at.get(&pt).copied()
    }

    pub fn euler(&self) -> i64 {
        self.disks.len() as i64 - self.bands.len() as i64
    }

    /// Is the underlying graph (disks as nodes, bands as edges) connected?
    pub fn is_connected(&self) -> bool {
        if self.disks.is_empty() {
            return true;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.disks.len()];
        for b in &self.bands {
            adj[b.h_disk].push(b.v_disk);
            adj[b.v_disk].push(b.h_disk);
        }
        let mut seen = vec![false; self.disks.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(k) = stack.pop() {
            for &n in &adj[k] {
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Number of boundary components: orbits of the boundary-walk
    /// permutation described in the module docs.
    pub fn boundary_components(&self) -> Result<usize, RibbonError> {
        let step = |(i, j): Point| -> Result<Point, RibbonError> {
            let b = self.band_at[&(i, j)];
            let h = &self.disks[self.bands[b].h_disk];
            let j2 = cyclic_pred(&h.attachments, j);
            let b2 = self.band_at[&(i, j2)];
            let v = &self.disks[self.bands[b2].v_disk];
            let i2 = cyclic_pred(&v.attachments, i);
            Ok((i2, j2))
        };
        let mut visited: BTreeMap<Point, bool> = BTreeMap::new();
        let mut orbits = 0;
        let mut total_len = 0usize;
        for b in &self.bands {
            if visited.contains_key(&b.at) {
                continue;
            }
            orbits += 1;
            let start = b.at;
            let mut cur = start;
            loop {
                if visited.insert(cur, true).is_some() {
                    return Err(RibbonError::WalkNotPermutation);
                }
                total_len += 1;
                cur = step(cur)?;
                if cur == start {
                    break;
                }
            }
        }
        // Every dart pair (one H-state and one V-state per band) is walked
        // exactly once across all orbits.
        if total_len != self.bands.len() {
            return Err(RibbonError::WalkNotPermutation);
        }
        Ok(orbits)
    }

    pub fn page_stats(&self, kappa: usize) -> Result<PageStats, RibbonError> {
        let euler = self.euler();
        let boundary = self.boundary_components()?;
        let two_g = 2 - euler - boundary as i64;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(RibbonError::GenusParity(two_g));
        }
        Ok(PageStats {
            euler,
            boundary,
            genus: two_g / 2,
            disks: self.disks.len(),
            bands: self.bands.len(),
            kappa,
        })
    }

    fn disk_through(&self, axis: Axis, line: usize, lo: usize, hi: usize) -> Option<usize> {
        self.disks
            .iter()
            .position(|d| d.axis == axis && d.line == line && d.lo <= lo && hi <= d.hi)
    }
}

/// Maximal runs of unit intervals: input is a set of interval start ranks,
/// output is `(lo, hi)` line spans.
fn runs(starts: &mut Vec<usize>) -> Vec<(usize, usize)> {
    starts.sort_unstable();
    starts.dedup();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &s in starts.iter() {
        match out.last_mut() {
            Some(run) if run.1 == s => run.1 = s + 1,
            _ => out.push((s, s + 1)),
        }
    }
    out
}

fn cyclic_pred(sorted: &[usize], x: usize) -> usize {
    let k = sorted.binary_search(&x).expect("attachment present");
    if k == 0 {
        *sorted.last().unwrap()
    } else {
        sorted[k - 1]
    }
}

/// Page statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PageStats {
    #[serde(rename = "chi")]
    pub euler: i64,
    pub boundary: usize,
    pub genus: i64,
    pub disks: usize,
    pub bands: usize,
    pub kappa: usize,
}

/// One step of a cycle routed through the fatgraph: run along a disk, or
/// cross a band (turning between the horizontal and vertical levels).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "step", rename_all = "lowercase")]
pub enum CycleStep {
    Arc { disk: usize, from: usize, to: usize },
    Band { band: usize },
}

/// A closed cycle embedded in the page: alternating disk arcs and band
/// crossings. Corners are the band points in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonCycle {
    pub steps: Vec<CycleStep>,
    pub corners: Vec<Point>,
}

/// Route a closed corner sequence (alternating horizontal and vertical
/// legs, starting with a horizontal leg) through the fatgraph.
fn route_cycle(fg: &Fatgraph, corners: &[Point]) -> Result<SkeletonCycle, RibbonError> {
    let n = corners.len();
    let mut steps = Vec::with_capacity(2 * n);
    for k in 0..n {
        let (r1, c1) = corners[k];
        let (r2, c2) = corners[(k + 1) % n];
        let (axis, line, a, b) = if r1 == r2 {
            (Axis::H, r1, c1, c2)
        } else {
            debug_assert_eq!(c1, c2);
            (Axis::V, c1, r1, r2)
        };
        let disk = fg
            .disk_through(axis, line, a.min(b), a.max(b))
            .ok_or_else(|| RibbonError::EmbeddingGap(format!(
                "leg on {axis:?} line {line} spanning {}..{} is not covered by one skeleton arc",
                a.min(b),
                a.max(b)
            )))?;
        steps.push(CycleStep::Arc { disk, from: a, to: b });
        let corner = corners[(k + 1) % n];
        let band = fg.band_at(corner).ok_or_else(|| {
            RibbonError::EmbeddingGap(format!("no band at corner {corner:?}"))
        })?;
        steps.push(CycleStep::Band { band });
    }
    Ok(SkeletonCycle { steps, corners: corners.to_vec() })
}

/// Embed every link component into the page, crossing a band exactly at
/// each of its corners. Junctions contribute no band crossings: the over
/// strand stays at the horizontal level.
pub fn embed_link(
    d: &SquareBridgeDiagram,
    fg: &Fatgraph,
) -> Result<Vec<SkeletonCycle>, RibbonError> {
    d.components()
        .iter()
        .map(|comp| route_cycle(fg, &comp.corners))
        .collect()
}

/// The boundary cycle of a retained rectangle, routed through the fatgraph.
pub fn gamma_cycle(fg: &Fatgraph, rect: &Rectangle) -> Result<SkeletonCycle, RibbonError> {
    route_cycle(fg, &rect.corners())
}

/// Framing of the push-off of a cycle inside the page, measured against the
/// front-plane 0-framing: signed self-crossings of the projected cycle
/// (horizontal over vertical) minus the left-cusp corners it traverses.
/// For every rectangle curve this is -1; for a link component it equals tb.
pub fn page_framing(fg: &Fatgraph, cycle: &SkeletonCycle) -> i64 {
    struct Leg {
        axis: Axis,
        line: usize,
        lo: usize,
        hi: usize,
        dir: i64,
    }
    let mut legs = Vec::new();
    for step in &cycle.steps {
        if let CycleStep::Arc { disk, from, to } = step {
            let d = &fg.disks[*disk];
            legs.push(Leg {
                axis: d.axis,
                line: d.line,
                lo: *from.min(to),
                hi: *from.max(to),
                dir: if to > from { 1 } else { -1 },
            });
        }
    }
    let mut writhe = 0i64;
    for h in legs.iter().filter(|l| l.axis == Axis::H) {
        for v in legs.iter().filter(|l| l.axis == Axis::V) {
            if h.lo < v.line && v.line < h.hi && v.lo < h.line && h.line < v.hi {
                writhe += crossing_sign(h.dir, v.dir);
            }
        }
    }
    let mut cusps = 0i64;
    let n = cycle.corners.len();
    for k in 0..n {
        let prev = cycle.corners[(k + n - 1) % n];
        let cur = cycle.corners[k];
        let next = cycle.corners[(k + 1) % n];
        // The horizontal and vertical legs incident at this corner, as the
        // ranks of their far endpoints.
        let (h_other, v_other) = if prev.0 == cur.0 {
            (prev.1, next.0)
        } else {
            (next.1, prev.0)
        };
        // Left cusp: the horizontal leg extends toward smaller columns and
        // the vertical leg toward larger rows (a local minimum of the front
        // coordinate).
        if h_other < cur.1 && v_other > cur.0 {
            cusps += 1;
        }
    }
    writhe - cusps
}

/// Count of intersection points of all full column lines with all
/// horizontal segments. Re-exported here because it is the band count of
/// the unmerged ribbon.
pub fn kappa(d: &SquareBridgeDiagram) -> usize {
    d.kappa()
}

/// Check that the tb of each component equals its page framing; used by the
/// validate command.
pub fn framing_agrees(d: &SquareBridgeDiagram, fg: &Fatgraph) -> Result<bool, RibbonError> {
    let cycles = embed_link(d, fg)?;
    let classical = d.classical();
    Ok(cycles
        .iter()
        .zip(&classical.components)
        .all(|(cycle, comp)| page_framing(fg, cycle) == comp.tb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region;
    use crate::sbd::parse;

    fn fixture(name: &str) -> SquareBridgeDiagram {
        let text = match name {
            "u1" => include_str!("../fixtures/unknot.sbd"),
            "trefoil" => include_str!("../fixtures/trefoil.sbd"),
            "fig8" => include_str!("../fixtures/fig8.sbd"),
            _ => unreachable!(),
        };
        parse(text).unwrap().diagram
    }

    fn page(d: &SquareBridgeDiagram, merge: bool) -> (Fatgraph, PageStats, usize) {
        let dec = region::build(d, true, merge).unwrap();
        let fg = Fatgraph::build(&dec.rects).unwrap();
        let stats = fg.page_stats(d.kappa()).unwrap();
        (fg, stats, dec.rects.len())
    }

    #[test]
    fn u1_is_annulus() {
        let d = fixture("u1");
        let (fg, stats, n) = page(&d, true);
        assert_eq!(fg.disks.len(), 4);
        assert_eq!(fg.bands.len(), 4);
        assert_eq!((stats.euler, stats.boundary, stats.genus), (0, 2, 0));
        assert_eq!(n, 1);
    }

    #[test]
    fn trefoil_page() {
        let d = fixture("trefoil");
        let (fg, stats, n) = page(&d, true);
        assert_eq!(n, 8);
        assert_eq!(fg.disks.len(), 10);
        assert_eq!(fg.bands.len(), 17);
        assert_eq!(stats.euler, -7);
        assert_eq!(stats.boundary, 3);
        assert_eq!(stats.genus, 3);
        assert_eq!(stats.kappa, 17);
    }

    #[test]
    fn fig8_pages() {
        let d = fixture("fig8");
        let (_, pre, n_pre) = page(&d, false);
        assert_eq!(n_pre, 11);
        assert_eq!(pre.euler, -10);
        let (fg, post, n) = page(&d, true);
        assert_eq!(n, 10);
        assert_eq!(post.euler, -9);
        assert_eq!(post.boundary, 5);
        assert_eq!(post.genus, 3);
        assert_eq!(fg.disks.len(), 12);
        assert_eq!(fg.bands.len(), 21);
    }

    #[test]
    fn torus_grids_match_gcd() {
        for p in 2..=8 {
            for q in 2..=8 {
                let fg = Fatgraph::torus(p, q);
                let stats = fg.page_stats(p * q).unwrap();
                assert_eq!(stats.euler, (p + q) as i64 - (p * q) as i64);
                assert_eq!(stats.boundary, gcd(p, q), "torus({p},{q})");
            }
        }
        assert_eq!(Fatgraph::torus(5, 5).page_stats(25).unwrap().genus, 6);
        assert_eq!(Fatgraph::torus(6, 6).page_stats(36).unwrap().genus, 10);
        assert_eq!(Fatgraph::torus(2, 2).page_stats(4).unwrap().genus, 0);
        assert_eq!(Fatgraph::torus(2, 3).page_stats(6).unwrap().boundary, 1);
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn embed_u1() {
        let d = fixture("u1");
        let (fg, _, _) = page(&d, true);
        let cycles = embed_link(&d, &fg).unwrap();
        assert_eq!(cycles.len(), 1);
        let bands: Vec<_> = cycles[0]
            .steps
            .iter()
            .filter(|s| matches!(s, CycleStep::Band { .. }))
            .collect();
        assert_eq!(bands.len(), 4);
        assert_eq!(page_framing(&fg, &cycles[0]), -1);
    }

    #[test]
    fn embed_trefoil() {
        let d = fixture("trefoil");
        let (fg, _, _) = page(&d, true);
        let cycles = embed_link(&d, &fg).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].corners.len(), 10);
        assert_eq!(page_framing(&fg, &cycles[0]), 1); // = tb
    }

    #[test]
    fn embed_fig8() {
        let d = fixture("fig8");
        let (fg, _, _) = page(&d, true);
        let cycles = embed_link(&d, &fg).unwrap();
        assert_eq!(cycles[0].corners.len(), 12);
        assert_eq!(page_framing(&fg, &cycles[0]), -3); // = tb
    }

    #[test]
    fn gamma_framing_is_minus_one() {
        for name in ["u1", "trefoil", "fig8"] {
            let d = fixture(name);
            let dec = region::build(&d, true, true).unwrap();
            let fg = Fatgraph::build(&dec.rects).unwrap();
            for rect in &dec.rects {
                let cycle = gamma_cycle(&fg, rect).unwrap();
                assert_eq!(page_framing(&fg, &cycle), -1, "{name} {rect:?}");
            }
        }
    }

    #[test]
    fn boundary_is_order_independent() {
        // The fatgraph depends only on the rectangle set; shuffling the
        // order must not change the page.
        let d = fixture("trefoil");
        let dec = region::build(&d, true, true).unwrap();
        let mut rev = dec.rects.clone();
        rev.reverse();
        let a = Fatgraph::build(&dec.rects).unwrap().page_stats(17).unwrap();
        let b = Fatgraph::build(&rev).unwrap().page_stats(17).unwrap();
        assert_eq!(a, b);
    }
}
