//! Deterministic SVG views of the pipeline stages. All coordinates are
//! integers; output bytes depend only on the input diagram and view.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::pipeline::Pipeline;
use crate::region::Rectangle;
use crate::ribbon::Axis;
use crate::sbd::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    /// Square bridge grid with junction over/under gaps.
    Diagram,
    /// 45 degree rotated front with cusp markers.
    Front,
    /// The region with ordered, numbered rectangles.
    Region,
    /// Disks and bands with numbered handles.
    Page,
}

impl std::str::FromStr for View {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "diagram" => Ok(View::Diagram),
            "front" => Ok(View::Front),
            "region" => Ok(View::Region),
            "page" => Ok(View::Page),
            other => Err(format!("unknown view `{other}` (expected diagram|front|region|page)")),
        }
    }
}

const SCALE: i64 = 40;
const MARGIN: i64 = 40;
const GAP: i64 = 8;

struct Svg {
    body: String,
    width: i64,
    height: i64,
}

impl Svg {
    fn new(width: i64, height: i64) -> Self {
        Svg { body: String::new(), width, height }
    }

    fn line(&mut self, x1: i64, y1: i64, x2: i64, y2: i64, stroke: &str, width: i64) {
        writeln!(
            self.body,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{width}" stroke-linecap="round"/>"#
        )
        .unwrap();
    }

    fn circle(&mut self, cx: i64, cy: i64, r: i64, fill: &str) {
        writeln!(self.body, r#"<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"/>"#).unwrap();
    }

    fn rect(&mut self, x: i64, y: i64, w: i64, h: i64, fill: &str, stroke: &str) {
        writeln!(
            self.body,
            r#"<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" stroke="{stroke}"/>"#
        )
        .unwrap();
    }

    fn text(&mut self, x: i64, y: i64, size: i64, fill: &str, s: &str) {
        writeln!(
            self.body,
            r#"<text x="{x}" y="{y}" font-family="monospace" font-size="{size}" fill="{fill}" text-anchor="middle">{s}</text>"#
        )
        .unwrap();
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

/// Grid coordinates: rows grow upward, columns rightward.
struct GridMap {
    height: i64,
}

impl GridMap {
    fn new(p: usize) -> (Self, i64) {
        let height = 2 * MARGIN + (p as i64 - 1) * SCALE;
        (GridMap { height }, height)
    }
    fn x(&self, col: usize) -> i64 {
        MARGIN + (col as i64 - 1) * SCALE
    }
    fn y(&self, row: usize) -> i64 {
        self.height - MARGIN - (row as i64 - 1) * SCALE
    }
}

pub fn render_svg(pl: &Pipeline, view: View) -> String {
    match view {
        View::Diagram => render_diagram(pl),
        View::Front => render_front(pl),
        View::Region => render_region(pl),
        View::Page => render_page(pl),
    }
}

/// Vertical strand intervals of a vseg, split by the gaps at its junctions.
fn vseg_pieces(pl: &Pipeline, col: usize) -> Vec<(i64, i64)> {
    let v = pl.diagram.vseg(col);
    let (map, _) = GridMap::new(pl.diagram.p);
    let mut cuts: Vec<usize> = pl
        .diagram
        .junctions()
        .iter()
        .filter(|&&(_, c)| c == col)
        .map(|&(r, _)| r)
        .collect();
    cuts.sort_unstable();
    let mut pieces = Vec::new();
    let mut start = map.y(v.row_lo);
    for r in cuts {
        let yj = map.y(r);
        pieces.push((start, yj + GAP));
        start = yj - GAP;
    }
    pieces.push((start, map.y(v.row_hi)));
    pieces
}

fn render_diagram(pl: &Pipeline) -> String {
    let d = &pl.diagram;
    let (map, height) = GridMap::new(d.p);
    let width = 2 * MARGIN + (d.q as i64 - 1) * SCALE;
    let mut svg = Svg::new(width, height);
    // faint grid
    for row in 1..=d.p {
        svg.line(map.x(1), map.y(row), map.x(d.q), map.y(row), "#dddddd", 1);
    }
    for col in 1..=d.q {
        svg.line(map.x(col), map.y(1), map.x(col), map.y(d.p), "#dddddd", 1);
    }
    // vertical strands with gaps at junctions (horizontal passes over)
    for v in d.vsegs() {
        let x = map.x(v.col);
        for (y1, y2) in vseg_pieces(pl, v.col) {
            svg.line(x, y1, x, y2, "black", 3);
        }
    }
    for h in d.hsegs() {
        let y = map.y(h.row);
        svg.line(map.x(h.col_lo), y, map.x(h.col_hi), y, "black", 3);
    }
    for &(r, c) in &d.corners() {
        svg.circle(map.x(c), map.y(r), 4, "black");
    }
    svg.text(width / 2, height - MARGIN / 4, 14, "black", &format!("p={} q={}", d.p, d.q));
    svg.finish()
}

/// Front coordinates: corner (row, col) maps to (row - col, row + col),
/// scaled by SCALE/2 so all pixels stay integral.
struct FrontMap {
    height: i64,
    q: i64,
}

impl FrontMap {
    fn at(&self, row: usize, col: usize) -> (i64, i64) {
        let u = row as i64 - col as i64 + self.q - 1;
        let w = row as i64 + col as i64 - 2;
        (MARGIN + u * (SCALE / 2), self.height - MARGIN - w * (SCALE / 2))
    }
}

fn render_front(pl: &Pipeline) -> String {
    let d = &pl.diagram;
    let (p, q) = (d.p as i64, d.q as i64);
    let width = 2 * MARGIN + (p + q - 2) * (SCALE / 2);
    let height = width;
    let map = FrontMap { height, q };
    let mut svg = Svg::new(width, height);
    // under strands (vertical segments), gaps at junctions
    for v in d.vsegs() {
        let mut cuts: Vec<usize> = d
            .junctions()
            .iter()
            .filter(|&&(_, c)| c == v.col)
            .map(|&(r, _)| r)
            .collect();
        cuts.sort_unstable();
        let mut spans: Vec<(usize, usize)> = Vec::new();
        let mut lo = v.row_lo;
        for r in cuts {
            spans.push((lo, r));
            lo = r;
        }
        spans.push((lo, v.row_hi));
        for (k, (a, b)) in spans.iter().enumerate() {
            let (x1, y1) = map.at(*a, v.col);
            let (x2, y2) = map.at(*b, v.col);
            // shorten toward junction ends
            let (x1, y1) = if k == 0 { (x1, y1) } else { shift(x1, y1, x2, y2, GAP) };
            let (x2, y2) = if k == spans.len() - 1 { (x2, y2) } else { shift(x2, y2, x1, y1, GAP) };
            svg.line(x1, y1, x2, y2, "black", 3);
        }
    }
    for h in d.hsegs() {
        let (x1, y1) = map.at(h.row, h.col_lo);
        let (x2, y2) = map.at(h.row, h.col_hi);
        svg.line(x1, y1, x2, y2, "black", 3);
    }
    // cusp markers: left cusps filled, right cusps hollow-ish grey
    for &(r, c) in &d.corners() {
        let (x, y) = map.at(r, c);
        let h = d.hseg(r);
        let v = d.vseg(c);
        if h.col_hi == c && v.row_lo == r {
            svg.circle(x, y, 5, "black"); // left cusp
        } else if h.col_lo == c && v.row_hi == r {
            svg.circle(x, y, 5, "#999999"); // right cusp
        } else {
            svg.circle(x, y, 3, "#444444");
        }
    }
    svg.finish()
}

/// Move (x1, y1) a fixed amount toward (x2, y2); diagonal steps use the
/// 45-degree integer approximation gap*5/7.
fn shift(x1: i64, y1: i64, x2: i64, y2: i64, gap: i64) -> (i64, i64) {
    let step = gap * 5 / 7;
    let dx = (x2 - x1).signum();
    let dy = (y2 - y1).signum();
    (x1 + dx * step, y1 + dy * step)
}

fn render_region(pl: &Pipeline) -> String {
    let d = &pl.diagram;
    let (map, height) = GridMap::new(d.p);
    let width = 2 * MARGIN + (d.q as i64 - 1) * SCALE;
    let mut svg = Svg::new(width, height);
    for (k, r) in pl.decomposition.rects.iter().enumerate() {
        let x = map.x(r.col_lo);
        let y = map.y(r.row_hi);
        let w = (r.col_hi - r.col_lo) as i64 * SCALE;
        let h = (r.row_hi - r.row_lo) as i64 * SCALE;
        let fill = match r.kind {
            crate::region::RectKind::Primitive => "#cfe3f7",
            crate::region::RectKind::Bridge => "#f7e3cf",
            crate::region::RectKind::Merged => "#d7f7cf",
        };
        svg.rect(x, y, w, h, fill, "#333333");
        let cx = x + w / 2;
        let cy = y + h / 2 + 5;
        svg.text(cx, cy, 16, "black", &format!("{}", k + 1));
    }
    for v in d.vsegs() {
        let x = map.x(v.col);
        svg.line(x, map.y(v.row_lo), x, map.y(v.row_hi), "black", 3);
    }
    for h in d.hsegs() {
        let y = map.y(h.row);
        svg.line(map.x(h.col_lo), y, map.x(h.col_hi), y, "black", 3);
    }
    svg.finish()
}

type Edge = (Point, Point);

fn rect_edges(r: &Rectangle) -> Vec<Edge> {
    let mut out = Vec::new();
    for c in r.col_lo..r.col_hi {
        out.push(((r.row_lo, c), (r.row_lo, c + 1)));
        out.push(((r.row_hi, c), (r.row_hi, c + 1)));
    }
    for row in r.row_lo..r.row_hi {
        out.push(((row, r.col_lo), (row + 1, r.col_lo)));
        out.push(((row, r.col_hi), (row + 1, r.col_hi)));
    }
    out
}

fn render_page(pl: &Pipeline) -> String {
    let d = &pl.diagram;
    let (map, height) = GridMap::new(d.p);
    let width = 2 * MARGIN + (d.q as i64 - 1) * SCALE;
    let mut svg = Svg::new(width, height);
    // disks: horizontal arcs at one level, vertical at the other
    for disk in &pl.fatgraph.disks {
        match disk.axis {
            Axis::H => {
                let y = map.y(disk.line);
                svg.line(map.x(disk.lo), y, map.x(disk.hi), y, "#2266aa", 6);
            }
            Axis::V => {
                let x = map.x(disk.line);
                svg.line(x, map.y(disk.lo), x, map.y(disk.hi), "#aa6622", 6);
            }
        }
    }
    // bands
    for band in &pl.fatgraph.bands {
        let (r, c) = band.at;
        svg.rect(map.x(c) - 5, map.y(r) - 5, 10, 10, "#222222", "none");
    }
    // handle labels: the arc each rectangle adds to the skeleton, labelled
    // at its endpoints; the very first rectangle splits into the initial
    // arc (its bottom edge, labelled 0) and handle 1.
    let mut covered: BTreeSet<Edge> = BTreeSet::new();
    let mut covered_pts: BTreeSet<Point> = BTreeSet::new();
    for (k, r) in pl.decomposition.rects.iter().enumerate() {
        let edges = rect_edges(r);
        let label = format!("{}", k + 1);
        if k == 0 {
            // initial arc 0: the bottom edge
            let (mx, my) = midpoint(&map, (r.row_lo, r.col_lo), (r.row_lo, r.col_hi));
            svg.text(mx, my + 16, 13, "#aa2222", "0");
            // handle 1: the remaining three sides; endpoints are the bottom corners
            for pt in [(r.row_lo, r.col_lo), (r.row_lo, r.col_hi)] {
                let (x, y) = (map.x(pt.1), map.y(pt.0));
                svg.text(x, y - 8, 13, "#aa2222", &label);
            }
        } else {
            let new_edges: Vec<&Edge> = edges.iter().filter(|e| !covered.contains(*e)).collect();
            let mut degree: std::collections::BTreeMap<Point, usize> = Default::default();
            for e in &new_edges {
                *degree.entry(e.0).or_default() += 1;
                *degree.entry(e.1).or_default() += 1;
            }
            let mut ends: Vec<Point> = degree
                .iter()
                .filter(|&(pt, &deg)| deg == 1 && covered_pts.contains(pt))
                .map(|(&pt, _)| pt)
                .collect();
            if ends.is_empty() {
                // The rectangle touches the previous skeleton only at
                // lattice points; the handle is the whole boundary minus a
                // point, both endpoints coincide there.
                ends = r
                    .boundary_points()
                    .into_iter()
                    .filter(|pt| covered_pts.contains(pt))
                    .take(1)
                    .collect();
                ends = vec![ends[0], ends[0]];
            }
            for (which, pt) in ends.iter().take(2).enumerate() {
                let (x, y) = (map.x(pt.1), map.y(pt.0));
                let dy = if which == 0 { -8 } else { 18 };
                svg.text(x, y + dy, 13, "#aa2222", &label);
            }
        }
        for e in edges {
            covered.insert(e);
            covered_pts.insert(e.0);
            covered_pts.insert(e.1);
        }
    }
    svg.finish()
}

fn midpoint(map: &GridMap, a: Point, b: Point) -> (i64, i64) {
    ((map.x(a.1) + map.x(b.1)) / 2, (map.y(a.0) + map.y(b.0)) / 2)
}
