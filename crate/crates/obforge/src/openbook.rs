//! Open book presentation: page plus ordered monodromy word, contact
//! (±1)-surgery twists, and the torus-grid genus comparison.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::region::RegionDecomposition;
use crate::ribbon::{gamma_cycle, Fatgraph, PageStats, RibbonError, SkeletonCycle};
use crate::sbd::{SquareBridgeDiagram, SurgeryLine};

/// What a twist runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Curve {
    /// Boundary of the k-th rectangle (1-based, in the vertex-sharing order).
    Gamma { index: usize },
    /// A link component, by canonical id.
    Component { id: usize },
}

/// One Dehn twist factor.
#[derive(Debug, Clone)]
pub struct Twist {
    pub curve: Curve,
    /// +1 for a right-handed twist.
    pub exponent: i64,
    pub cycle: SkeletonCycle,
}

/// Ordered monodromy word; composition is left to right.
#[derive(Debug, Clone, Default)]
pub struct TwistWord(pub Vec<Twist>);

/// Map from component ids to contact surgery coefficients in {+1, -1}.
/// Components absent from the map merely sit on the page.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SurgerySpec {
    coefficients: BTreeMap<usize, i64>,
}

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error("unknown component {id}: the diagram has {count} components")]
    UnknownComponent { id: usize, count: usize },
    #[error("component {id} already carries a surgery twist; contact surgery applies once per component")]
    AlreadySurgered { id: usize },
    #[error("surgery coefficient for component {id} must be +1 or -1, got {got}")]
    BadCoefficient { id: usize, got: i64 },
}

impl SurgerySpec {
    pub fn from_lines(
        d: &SquareBridgeDiagram,
        lines: &[SurgeryLine],
    ) -> Result<SurgerySpec, SurgeryError> {
        let count = d.components().len();
        let mut coefficients = BTreeMap::new();
        for line in lines {
            if line.component == 0 || line.component > count {
                return Err(SurgeryError::UnknownComponent { id: line.component, count });
            }
            if line.coefficient != 1 && line.coefficient != -1 {
                return Err(SurgeryError::BadCoefficient {
                    id: line.component,
                    got: line.coefficient,
                });
            }
            if coefficients.insert(line.component, line.coefficient).is_some() {
                return Err(SurgeryError::AlreadySurgered { id: line.component });
            }
        }
        Ok(SurgerySpec { coefficients })
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Coefficients in canonical component order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coefficients.iter().map(|(&k, &v)| (k, v))
    }
}

/// The assembled open book: page statistics, monodromy word, and the
/// support genus upper bound (the page genus).
#[derive(Debug, Clone)]
pub struct OpenBookPresentation {
    pub page: PageStats,
    pub word: TwistWord,
    pub sg_upper_bound: i64,
}

/// The base monodromy: one positive twist along each rectangle boundary, in
/// the vertex-sharing order.
pub fn monodromy(
    decomp: &RegionDecomposition,
    fg: &Fatgraph,
    page: PageStats,
) -> Result<OpenBookPresentation, RibbonError> {
    let mut word = Vec::with_capacity(decomp.rects.len());
    for (k, rect) in decomp.rects.iter().enumerate() {
        word.push(Twist {
            curve: Curve::Gamma { index: k + 1 },
            exponent: 1,
            cycle: gamma_cycle(fg, rect)?,
        });
    }
    Ok(OpenBookPresentation {
        page,
        word: TwistWord(word),
        sg_upper_bound: page.genus,
    })
}

/// Apply contact (±1)-surgeries: coefficient ±1 on component K appends a
/// twist along K with exponent ∓1, after all rectangle twists, in canonical
/// component order. The page is unchanged.
pub fn apply_surgery(
    ob: &OpenBookPresentation,
    spec: &SurgerySpec,
    cycles: &[SkeletonCycle],
) -> Result<OpenBookPresentation, SurgeryError> {
    let mut out = ob.clone();
    for (id, coefficient) in spec.entries() {
        if id == 0 || id > cycles.len() {
            return Err(SurgeryError::UnknownComponent { id, count: cycles.len() });
        }
        let dup = out
            .word
            .0
            .iter()
            .any(|t| matches!(t.curve, Curve::Component { id: c } if c == id));
        if dup {
            return Err(SurgeryError::AlreadySurgered { id });
        }
        out.word.0.push(Twist {
            curve: Curve::Component { id },
            exponent: -coefficient,
            cycle: cycles[id - 1].clone(),
        });
    }
    Ok(out)
}

pub fn sg_bound(ob: &OpenBookPresentation) -> i64 {
    ob.sg_upper_bound
}

/// Comparison of the page against the full torus-grid page on the same
/// row and column lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct TorusComparison {
    pub p: usize,
    pub q: usize,
    pub kappa: usize,
    pub genus: i64,
    pub torus_genus: i64,
    pub torus_boundary: usize,
    /// Whether the strict inequality genus < torus_genus is claimed
    /// (it is, whenever p > 3 and q > 3).
    pub strict_expected: bool,
    pub strict_holds: bool,
    pub pq_minus_kappa: i64,
    pub pq_minus_kappa_minus_p: i64,
}

#[derive(Debug, Error)]
pub enum CompareError {
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error("internal: genus {genus} is not strictly below the torus-grid genus {torus_genus} although p={p} > 3 and q={q} > 3")]
    StrictInequalityFailed { p: usize, q: usize, genus: i64, torus_genus: i64 },
}

pub fn compare_torus(
    d: &SquareBridgeDiagram,
    stats: &PageStats,
) -> Result<TorusComparison, CompareError> {
    let torus = Fatgraph::torus(d.p, d.q).page_stats(d.p * d.q)?;
    let strict_expected = d.p > 3 && d.q > 3;
    let strict_holds = stats.genus < torus.genus;
    let report = TorusComparison {
        p: d.p,
        q: d.q,
        kappa: d.kappa(),
        genus: stats.genus,
        torus_genus: torus.genus,
        torus_boundary: torus.boundary,
        strict_expected,
        strict_holds,
        pq_minus_kappa: (d.p * d.q) as i64 - d.kappa() as i64,
        pq_minus_kappa_minus_p: (d.p * d.q) as i64 - d.kappa() as i64 - d.p as i64,
    };
    if strict_expected && !strict_holds {
        return Err(CompareError::StrictInequalityFailed {
            p: d.p,
            q: d.q,
            genus: stats.genus,
            torus_genus: torus.genus,
        });
    }
    Ok(report)
}
