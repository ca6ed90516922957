//! Open book decompositions from square bridge diagrams of Legendrian links.
//!
//! A square bridge diagram is a rectilinear link diagram built from
//! horizontal and vertical segments on ranked rows and columns, with no two
//! segments collinear, every segment endpoint meeting exactly one orthogonal
//! segment endpoint (a *corner*), and every interior crossing (a *junction*)
//! passing the horizontal segment over the vertical one.
//!
//! From such a diagram the pipeline produces an explicit open book
//! decomposition of the ambient three-sphere: the region bounded by the
//! diagram is cut into an ordered list of rectangles, the rectangle
//! boundaries form a Legendrian skeleton whose ribbon is the page surface
//! (modelled combinatorially as a fatgraph of disks and bands), and the
//! monodromy is the composition of one positive Dehn twist per rectangle.
//! Contact (±1)-surgery coefficients on link components append inverse
//! twists along the components themselves. The page genus is an upper bound
//! for the support genus of the surgered contact structure.
//!
//! Modules follow the pipeline order:
//!
//! * [`sbd`] — parse, validate and measure square bridge diagrams,
//! * [`region`] — bounded region, rectangle decomposition, ordering,
//!   split-link bridging and rectangle merging,
//! * [`ribbon`] — the page fatgraph: Euler characteristic, boundary count,
//!   genus, link embedding and page framing,
//! * [`openbook`] — monodromy word, surgery twists, torus-grid comparison,
//! * [`pipeline`] — end-to-end driver and the JSON report,
//! * [`render`] — deterministic SVG views.

pub mod openbook;
pub mod pipeline;
pub mod region;
pub mod render;
pub mod ribbon;
pub mod sbd;

pub use pipeline::{run_pipeline, Pipeline, PipelineError, PipelineOptions};
pub use sbd::SquareBridgeDiagram;
