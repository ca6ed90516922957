//! Square bridge diagrams: the `sbd v1` format, validation, orientation and
//! classical Legendrian invariants.
//!
//! A valid diagram satisfies the four square bridge conditions:
//!
//! 1. at least two horizontal and two vertical segments,
//! 2. no two horizontal (resp. vertical) segments are collinear, so rows and
//!    columns can be ranked `1..p` and `1..q`,
//! 3. every segment endpoint coincides with exactly one endpoint of an
//!    orthogonal segment (the meeting points are the *corners*),
//! 4. every interior crossing (*junction*) passes the horizontal segment
//!    over the vertical one; this is a convention of the format, not data.
//!
//! Only the ranks of rows and columns are stored. Everything downstream
//! depends on order alone, so the whole pipeline is exact integer
//! combinatorics.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Horizontal segment on row rank `row`, spanning column ranks
/// `col_lo..=col_hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HSeg {
    pub row: usize,
    pub col_lo: usize,
    pub col_hi: usize,
}

/// Vertical segment on column rank `col`, spanning row ranks
/// `row_lo..=row_hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VSeg {
    pub col: usize,
    pub row_lo: usize,
    pub row_hi: usize,
}

/// A lattice point `(row, col)` in rank coordinates.
pub type Point = (usize, usize);

/// A validated square bridge diagram. `hsegs[i]` is the segment on row rank
/// `i + 1`, `vsegs[j]` the one on column rank `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareBridgeDiagram {
    pub p: usize,
    pub q: usize,
    hsegs: Vec<HSeg>,
    vsegs: Vec<VSeg>,
}

/// Surgery coefficient on one link component, read from `surgery` lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurgeryLine {
    pub component: usize,
    /// +1 or -1.
    pub coefficient: i64,
}

/// A parsed `sbd v1` document: the diagram plus any surgery declarations.
#[derive(Debug, Clone)]
pub struct SbdFile {
    pub diagram: SquareBridgeDiagram,
    pub surgery: Vec<SurgeryLine>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: syntax error: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("missing `sbd v1` header line")]
    MissingHeader,
    #[error("line {line}: duplicate `{what}` declaration")]
    Duplicate { line: usize, what: String },
    #[error("missing `{0}` declaration")]
    MissingDecl(String),
    #[error("square bridge condition (1) violated: need p >= 2 and q >= 2, got p={p}, q={q}")]
    TooSmall { p: usize, q: usize },
    #[error("square bridge condition (2) violated: two {axis} segments are collinear on {axis} {value}")]
    Collinear { axis: &'static str, value: usize },
    #[error("declared rows {declared} but found {found} `h` lines")]
    RowCount { declared: usize, found: usize },
    #[error("declared cols {declared} but found {found} `v` lines")]
    ColCount { declared: usize, found: usize },
    #[error("square bridge condition (3) violated: dangling endpoint at (row {row}, col {col}): every segment endpoint must meet exactly one orthogonal segment endpoint")]
    DanglingEndpoint { row: usize, col: usize },
    #[error("corner (row {row}, col {col}) has degree {degree}, expected exactly 2")]
    CornerDegree { row: usize, col: usize, degree: usize },
    #[error("line {line}: surgery coefficient must be +1 or -1, got `{got}`")]
    BadCoefficient { line: usize, got: String },
    #[error("line {line}: surgery component {id} does not exist (diagram has {count} components)")]
    UnknownSurgeryComponent { line: usize, id: usize, count: usize },
    #[error("line {line}: component {id} already has a surgery coefficient")]
    DuplicateSurgery { line: usize, id: usize },
}

/// Raw segment as written in the file, before rank normalization.
#[derive(Debug, Clone, Copy)]
struct RawSeg {
    fixed: usize,
    lo: usize,
    hi: usize,
}

/// Parse an `sbd v1` document. Row and column values may be arbitrary
/// positive integers; they are normalized to ranks `1..p` and `1..q`.
pub fn parse(text: &str) -> Result<SbdFile, ParseError> {
    let mut rows_decl: Option<(usize, usize)> = None;
    let mut cols_decl: Option<(usize, usize)> = None;
    let mut raw_h: Vec<RawSeg> = Vec::new();
    let mut raw_v: Vec<RawSeg> = Vec::new();
    let mut raw_surgery: Vec<(usize, usize, i64)> = Vec::new();
    let mut header_seen = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw_line.find('#') {
            Some(k) => &raw_line[..k],
            None => raw_line,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header_seen {
            if tokens == ["sbd", "v1"] {
                header_seen = true;
                continue;
            }
            return Err(ParseError::MissingHeader);
        }
        // Column of a token within the raw line, for error messages.
        let col_of = |tok: &str| raw_line.find(tok).map_or(1, |k| k + 1);
        let syntax = |tok: &str, msg: &str| ParseError::Syntax {
            line: lineno,
            column: col_of(tok),
            msg: msg.to_string(),
        };
        match tokens[0] {
            "rows" | "cols" => {
                if tokens.len() != 2 {
                    return Err(syntax(tokens[0], "expected `rows <p>` / `cols <q>`"));
                }
                let n: usize = tokens[1]
                    .parse()
                    .map_err(|_| syntax(tokens[1], "expected a count"))?;
                let slot = if tokens[0] == "rows" { &mut rows_decl } else { &mut cols_decl };
                if slot.is_some() {
                    return Err(ParseError::Duplicate { line: lineno, what: tokens[0].to_string() });
                }
                *slot = Some((lineno, n));
            }
            "h" | "v" => {
                if tokens.len() != 4 {
                    return Err(syntax(
                        tokens[0],
                        "expected `h <row> <col_lo> <col_hi>` / `v <col> <row_lo> <row_hi>`",
                    ));
                }
                let mut nums = [0usize; 3];
                for (k, tok) in tokens[1..].iter().enumerate() {
                    nums[k] = tok.parse().map_err(|_| syntax(tok, "expected an integer rank"))?;
                    if nums[k] == 0 {
                        return Err(syntax(tok, "ranks are 1-based"));
                    }
                }
                if nums[1] >= nums[2] {
                    return Err(syntax(tokens[2], "segment span must satisfy lo < hi"));
                }
                let seg = RawSeg { fixed: nums[0], lo: nums[1], hi: nums[2] };
                if tokens[0] == "h" { raw_h.push(seg) } else { raw_v.push(seg) }
            }
            "surgery" => {
                if tokens.len() != 3 {
                    return Err(syntax(tokens[0], "expected `surgery <component-id> <+1|-1>`"));
                }
                let id: usize = tokens[1]
                    .parse()
                    .map_err(|_| syntax(tokens[1], "expected a component id"))?;
                let coeff = match tokens[2] {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    other => {
                        return Err(ParseError::BadCoefficient { line: lineno, got: other.to_string() })
                    }
                };
                raw_surgery.push((lineno, id, coeff));
            }
            other => return Err(syntax(other, &format!("unknown directive `{other}`"))),
        }
    }
    if !header_seen {
        return Err(ParseError::MissingHeader);
    }
    let (_, p_decl) = rows_decl.ok_or_else(|| ParseError::MissingDecl("rows".into()))?;
    let (_, q_decl) = cols_decl.ok_or_else(|| ParseError::MissingDecl("cols".into()))?;

    // Collinearity (condition 2): distinct row / col values.
    let mut row_rank: BTreeMap<usize, usize> = BTreeMap::new();
    for seg in &raw_h {
        if row_rank.insert(seg.fixed, 0).is_some() {
            return Err(ParseError::Collinear { axis: "row", value: seg.fixed });
        }
    }
    let mut col_rank: BTreeMap<usize, usize> = BTreeMap::new();
    for seg in &raw_v {
        if col_rank.insert(seg.fixed, 0).is_some() {
            return Err(ParseError::Collinear { axis: "col", value: seg.fixed });
        }
    }
    if raw_h.len() != p_decl {
        return Err(ParseError::RowCount { declared: p_decl, found: raw_h.len() });
    }
    if raw_v.len() != q_decl {
        return Err(ParseError::ColCount { declared: q_decl, found: raw_v.len() });
    }
    if p_decl < 2 || q_decl < 2 {
        return Err(ParseError::TooSmall { p: p_decl, q: q_decl });
    }
    for (rank, v) in row_rank.values_mut().enumerate() {
        *v = rank + 1;
    }
    for (rank, v) in col_rank.values_mut().enumerate() {
        *v = rank + 1;
    }

    // Endpoint columns must name declared column values and vice versa
    // (otherwise the endpoint dangles in empty space).
    let mut hsegs = vec![HSeg { row: 0, col_lo: 0, col_hi: 0 }; p_decl];
    for seg in &raw_h {
        let row = row_rank[&seg.fixed];
        let lo = *col_rank.get(&seg.lo).ok_or(ParseError::DanglingEndpoint { row, col: seg.lo })?;
        let hi = *col_rank.get(&seg.hi).ok_or(ParseError::DanglingEndpoint { row, col: seg.hi })?;
        hsegs[row - 1] = HSeg { row, col_lo: lo, col_hi: hi };
    }
    let mut vsegs = vec![VSeg { col: 0, row_lo: 0, row_hi: 0 }; q_decl];
    for seg in &raw_v {
        let col = col_rank[&seg.fixed];
        let lo = *row_rank.get(&seg.lo).ok_or(ParseError::DanglingEndpoint { row: seg.lo, col })?;
        let hi = *row_rank.get(&seg.hi).ok_or(ParseError::DanglingEndpoint { row: seg.hi, col })?;
        vsegs[col - 1] = VSeg { col, row_lo: lo, row_hi: hi };
    }

    let diagram = SquareBridgeDiagram::new(hsegs, vsegs)?;

    let mut surgery = Vec::new();
    let count = diagram.components().len();
    for (line, id, coefficient) in raw_surgery {
        if id == 0 || id > count {
            return Err(ParseError::UnknownSurgeryComponent { line, id, count });
        }
        if surgery.iter().any(|s: &SurgeryLine| s.component == id) {
            return Err(ParseError::DuplicateSurgery { line, id });
        }
        surgery.push(SurgeryLine { component: id, coefficient });
    }
    Ok(SbdFile { diagram, surgery })
}

impl SquareBridgeDiagram {
    /// Build and validate a diagram from rank-normalized segments.
    pub fn new(mut hsegs: Vec<HSeg>, mut vsegs: Vec<VSeg>) -> Result<Self, ParseError> {
        hsegs.sort_by_key(|h| h.row);
        vsegs.sort_by_key(|v| v.col);
        let p = hsegs.len();
        let q = vsegs.len();
        if p < 2 || q < 2 {
            return Err(ParseError::TooSmall { p, q });
        }
        let d = SquareBridgeDiagram { p, q, hsegs, vsegs };
        d.check_corners()?;
        Ok(d)
    }

    /// Condition (3): endpoints pair up exactly, giving degree 2 at every
    /// corner, hence a disjoint union of closed loops. Forces p = q.
    fn check_corners(&self) -> Result<(), ParseError> {
        let mut degree: BTreeMap<Point, (usize, usize)> = BTreeMap::new();
        for h in &self.hsegs {
            degree.entry((h.row, h.col_lo)).or_default().0 += 1;
            degree.entry((h.row, h.col_hi)).or_default().0 += 1;
        }
        for v in &self.vsegs {
            degree.entry((v.row_lo, v.col)).or_default().1 += 1;
            degree.entry((v.row_hi, v.col)).or_default().1 += 1;
        }
        for (&(row, col), &(hd, vd)) in &degree {
            if hd + vd != 2 {
                return Err(ParseError::CornerDegree { row, col, degree: hd + vd });
            }
            if hd != 1 || vd != 1 {
                return Err(ParseError::DanglingEndpoint { row, col });
            }
        }
        debug_assert_eq!(self.p, self.q, "condition (3) forces p = q");
        Ok(())
    }

    pub fn hseg(&self, row: usize) -> &HSeg {
        &self.hsegs[row - 1]
    }

    pub fn vseg(&self, col: usize) -> &VSeg {
        &self.vsegs[col - 1]
    }

    pub fn hsegs(&self) -> &[HSeg] {
        &self.hsegs
    }

    pub fn vsegs(&self) -> &[VSeg] {
        &self.vsegs
    }

    /// All corners (segment endpoints), sorted.
    pub fn corners(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::with_capacity(2 * self.p);
        for h in &self.hsegs {
            out.push((h.row, h.col_lo));
            out.push((h.row, h.col_hi));
        }
        out.sort_unstable();
        out
    }

    /// All junctions (interior crossings, horizontal over vertical), sorted.
    pub fn junctions(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for h in &self.hsegs {
            for v in &self.vsegs {
                if h.col_lo < v.col && v.col < h.col_hi && v.row_lo < h.row && h.row < v.row_hi {
                    out.push((h.row, v.col));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Does `hseg(row)` cover the unit interval `[col, col+1]` of its row line?
    pub(crate) fn h_covers(&self, row: usize, col: usize) -> bool {
        if row == 0 || row > self.p {
            return false;
        }
        let h = self.hseg(row);
        h.col_lo <= col && col < h.col_hi
    }

    /// Does `vseg(col)` cover the unit interval `[row, row+1]` of its col line?
    pub(crate) fn v_covers(&self, col: usize, row: usize) -> bool {
        if col == 0 || col > self.q {
            return false;
        }
        let v = self.vseg(col);
        v.row_lo <= row && row < v.row_hi
    }

    /// Split the diagram into its closed loops. Component ids follow the
    /// lexicographically smallest corner; each loop starts there and first
    /// moves along its horizontal segment toward increasing column.
    pub fn components(&self) -> Vec<OrientedComponent> {
        let mut unused: std::collections::BTreeSet<Point> = self.corners().into_iter().collect();
        let mut comps = Vec::new();
        while let Some(&start) = unused.iter().next() {
            unused.remove(&start);
            let mut corners = vec![start];
            // First leg: along the horizontal segment toward increasing
            // column. The smallest corner of a loop is always the col_lo end
            // of its row's segment, so this direction always exists.
            let h = self.hseg(start.0);
            debug_assert_eq!(start.1, h.col_lo);
            let mut cur = (start.0, h.col_hi);
            let mut along_h = false;
            while cur != start {
                unused.remove(&cur);
                corners.push(cur);
                if along_h {
                    let h = self.hseg(cur.0);
                    cur = (cur.0, if cur.1 == h.col_lo { h.col_hi } else { h.col_lo });
                } else {
                    let v = self.vseg(cur.1);
                    cur = (if cur.0 == v.row_lo { v.row_hi } else { v.row_lo }, cur.1);
                }
                along_h = !along_h;
            }
            comps.push(OrientedComponent { id: comps.len() + 1, corners });
        }
        comps
    }

    /// Count of intersection points of all full column lines with all
    /// horizontal segments, endpoints inclusive. This equals the band count
    /// of the unmerged ribbon.
    pub fn kappa(&self) -> usize {
        self.hsegs.iter().map(|h| h.col_hi - h.col_lo + 1).sum()
    }

    /// Classical invariants per component, and pairwise linking numbers.
    pub fn classical(&self) -> ClassicalData {
        let comps = self.components();
        let or = Orientations::of(self, &comps);
        let mut per: Vec<ComponentClassical> = comps
            .iter()
            .map(|c| ComponentClassical {
                id: c.id,
                corners: c.corners.len(),
                left_cusps: 0,
                writhe: 0,
                tb: 0,
            })
            .collect();
        for &(row, col) in &self.corners() {
            if self.hseg(row).col_hi == col && self.vseg(col).row_lo == row {
                // Local minimum of the front coordinate: a left cusp.
                per[or.comp_of_row[&row] - 1].left_cusps += 1;
            }
        }
        let mut linking: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(row, col) in &self.junctions() {
            let sign = crossing_sign(or.hdir[&row], or.vdir[&col]);
            let a = or.comp_of_row[&row];
            let b = or.comp_of_col[&col];
            if a == b {
                per[a - 1].writhe += sign;
            } else {
                *linking.entry((a.min(b), a.max(b))).or_default() += sign;
            }
        }
        for c in &mut per {
            c.tb = c.writhe - c.left_cusps as i64;
        }
        let linking = linking
            .into_iter()
            .map(|((a, b), s)| {
                debug_assert_eq!(s.rem_euclid(2), 0, "inter-component crossing signs sum to an even number");
                LinkingPair { a, b, lk: s / 2 }
            })
            .collect();
        ClassicalData { components: per, linking }
    }
}

/// Traversal directions of each segment under the canonical component
/// orientations: +1 along increasing rank, -1 along decreasing.
pub(crate) struct Orientations {
    pub hdir: BTreeMap<usize, i64>,
    pub vdir: BTreeMap<usize, i64>,
    pub comp_of_row: BTreeMap<usize, usize>,
    pub comp_of_col: BTreeMap<usize, usize>,
}

impl Orientations {
    pub fn of(d: &SquareBridgeDiagram, comps: &[OrientedComponent]) -> Self {
        let mut o = Orientations {
            hdir: BTreeMap::new(),
            vdir: BTreeMap::new(),
            comp_of_row: BTreeMap::new(),
            comp_of_col: BTreeMap::new(),
        };
        for comp in comps {
            let n = comp.corners.len();
            for k in 0..n {
                let (r1, c1) = comp.corners[k];
                let (r2, c2) = comp.corners[(k + 1) % n];
                if r1 == r2 {
                    o.hdir.insert(r1, if c2 > c1 { 1 } else { -1 });
                    o.comp_of_row.insert(r1, comp.id);
                } else {
                    debug_assert_eq!(c1, c2);
                    o.vdir.insert(c1, if r2 > r1 { 1 } else { -1 });
                    o.comp_of_col.insert(c1, comp.id);
                }
            }
        }
        let _ = d;
        o
    }
}

/// Sign of a junction crossing in the front plane. The over strand is the
/// horizontal segment (front direction of slope -1), the under strand the
/// vertical one (slope +1); the sign is the orientation of the
/// (over, under) direction frame.
pub(crate) fn crossing_sign(hdir: i64, vdir: i64) -> i64 {
    -hdir * vdir
}

/// One closed loop of the diagram: corners in traversal order, alternating
/// horizontal and vertical legs, starting with a horizontal leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedComponent {
    pub id: usize,
    pub corners: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ComponentClassical {
    pub id: usize,
    pub corners: usize,
    pub left_cusps: usize,
    pub writhe: i64,
    pub tb: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LinkingPair {
    pub a: usize,
    pub b: usize,
    pub lk: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalData {
    pub components: Vec<ComponentClassical>,
    pub linking: Vec<LinkingPair>,
}

/// Canonical `sbd v1` serialization: normalized ranks, segments in rank
/// order, surgery lines last. `parse(emit(parse(t)))` equals `parse(t)`.
pub fn emit(file: &SbdFile) -> String {
    let d = &file.diagram;
    let mut out = String::from("sbd v1\n");
    out.push_str(&format!("rows {}\ncols {}\n", d.p, d.q));
    for h in &d.hsegs {
        out.push_str(&format!("h {} {} {}\n", h.row, h.col_lo, h.col_hi));
    }
    for v in &d.vsegs {
        out.push_str(&format!("v {} {} {}\n", v.col, v.row_lo, v.row_hi));
    }
    for s in &file.surgery {
        out.push_str(&format!("surgery {} {:+}\n", s.component, s.coefficient));
    }
    out
}

impl fmt::Display for SquareBridgeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "square bridge diagram with p={} q={}", self.p, self.q)
    }
}
