//! End-to-end driver: parse -> region -> page -> monodromy -> report.

use serde::Serialize;
use thiserror::Error;

use crate::openbook::{
    self, Curve, OpenBookPresentation, SurgeryError, SurgerySpec, TorusComparison,
};
use crate::region::{self, RegionDecomposition, RegionError};
use crate::ribbon::{self, Fatgraph, PageStats, RibbonError, SkeletonCycle};
use crate::sbd::{self, ClassicalData, ParseError, SbdFile, SquareBridgeDiagram};

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    /// Apply the aligned-rectangle merge (CLI default: on).
    pub merge: bool,
    /// Bridge split regions (CLI default: on).
    pub bridge: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { merge: true, bridge: true }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error("internal: {0}")]
    Internal(String),
}

impl PipelineError {
    /// Internal assertion failures get exit code 3, everything else is a
    /// validation error (exit 1). I/O is handled by the CLI layer.
    pub fn is_internal(&self) -> bool {
        match self {
            PipelineError::Parse(_) | PipelineError::Surgery(_) => false,
            PipelineError::Region(e) => matches!(e, RegionError::Internal(_)),
            PipelineError::Ribbon(_) => true,
            PipelineError::Internal(_) => true,
        }
    }
}

/// Everything computed for one input document.
pub struct Pipeline {
    pub diagram: SquareBridgeDiagram,
    pub classical: ClassicalData,
    pub decomposition: RegionDecomposition,
    pub fatgraph: Fatgraph,
    pub stats: PageStats,
    pub link_cycles: Vec<SkeletonCycle>,
    pub openbook: OpenBookPresentation,
    pub comparison: TorusComparison,
}

/// Run the whole pipeline on a parsed document.
pub fn run_pipeline(file: &SbdFile, opts: PipelineOptions) -> Result<Pipeline, PipelineError> {
    let diagram = file.diagram.clone();
    let classical = diagram.classical();
    let decomposition = region::build(&diagram, opts.bridge, opts.merge)?;
    let fatgraph = Fatgraph::build(&decomposition.rects)?;
    if !fatgraph.is_connected() {
        return Err(PipelineError::Internal(
            "page fatgraph is disconnected after ordering".into(),
        ));
    }
    let stats = fatgraph.page_stats(diagram.kappa())?;
    // Structural cross-check of the Euler characteristic.
    let n = decomposition.rects.len() as i64;
    if stats.euler != 1 - n {
        return Err(PipelineError::Internal(format!(
            "chi = {} disagrees with 1 - N = {}",
            stats.euler,
            1 - n
        )));
    }
    let link_cycles = ribbon::embed_link(&diagram, &fatgraph)?;
    let base = openbook::monodromy(&decomposition, &fatgraph, stats)?;
    let spec = SurgerySpec::from_lines(&diagram, &file.surgery)?;
    let openbook = openbook::apply_surgery(&base, &spec, &link_cycles)?;
    let comparison = match openbook::compare_torus(&diagram, &stats) {
        Ok(report) => report,
        Err(openbook::CompareError::Ribbon(e)) => return Err(e.into()),
        Err(e @ openbook::CompareError::StrictInequalityFailed { .. }) => {
            return Err(PipelineError::Internal(e.to_string()))
        }
    };
    Ok(Pipeline {
        diagram,
        classical,
        decomposition,
        fatgraph,
        stats,
        link_cycles,
        openbook,
        comparison,
    })
}

/// Convenience: parse then run.
pub fn run_text(text: &str, opts: PipelineOptions) -> Result<Pipeline, PipelineError> {
    let file = sbd::parse(text)?;
    run_pipeline(&file, opts)
}

// ---- JSON report ----

#[derive(Serialize)]
struct DiagramReport {
    p: usize,
    q: usize,
    square: bool,
    components: Vec<sbd::ComponentClassical>,
    linking: Vec<sbd::LinkingPair>,
}

#[derive(Serialize)]
struct RectReport {
    index: usize,
    col_lo: usize,
    col_hi: usize,
    row_lo: usize,
    row_hi: usize,
    kind: region::RectKind,
}

#[derive(Serialize)]
struct DecompositionReport {
    #[serde(rename = "N")]
    n: usize,
    order: Vec<RectReport>,
    bridges: usize,
    bridge_records: Vec<region::BridgeRecord>,
    merges: usize,
    merge_records: Vec<region::MergeRecord>,
}

#[derive(Serialize)]
struct TwistReport {
    curve: Curve,
    exponent: i64,
    corners: Vec<(usize, usize)>,
    darts: Vec<ribbon::CycleStep>,
}

/// The versioned pipeline report. Field order is fixed; all values are
/// integers, booleans or strings.
#[derive(Serialize)]
pub struct PipelineReport {
    obforge: u32,
    diagram: DiagramReport,
    decomposition: DecompositionReport,
    page: PageStats,
    word: Vec<TwistReport>,
    comparison: TorusComparison,
    sg_upper_bound: i64,
}

impl Pipeline {
    pub fn report(&self) -> PipelineReport {
        PipelineReport {
            obforge: 1,
            diagram: DiagramReport {
                p: self.diagram.p,
                q: self.diagram.q,
                square: self.diagram.p == self.diagram.q,
                components: self.classical.components.clone(),
                linking: self.classical.linking.clone(),
            },
            decomposition: DecompositionReport {
                n: self.decomposition.rects.len(),
                order: self
                    .decomposition
                    .rects
                    .iter()
                    .enumerate()
                    .map(|(k, r)| RectReport {
                        index: k + 1,
                        col_lo: r.col_lo,
                        col_hi: r.col_hi,
                        row_lo: r.row_lo,
                        row_hi: r.row_hi,
                        kind: r.kind,
                    })
                    .collect(),
                bridges: self.decomposition.bridges.len(),
                bridge_records: self.decomposition.bridges.clone(),
                merges: self.decomposition.merges.len(),
                merge_records: self.decomposition.merges.clone(),
            },
            page: self.stats,
            word: self
                .openbook
                .word
                .0
                .iter()
                .map(|t| TwistReport {
                    curve: t.curve,
                    exponent: t.exponent,
                    corners: t.cycle.corners.clone(),
                    darts: t.cycle.steps.clone(),
                })
                .collect(),
            comparison: self.comparison,
            sg_upper_bound: self.openbook.sg_upper_bound,
        }
    }

    pub fn report_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.report()).expect("report serializes");
        out.push('\n');
        out
    }
}
