//! Command line front end: parse -> decompose -> page -> monodromy ->
//! report, with JSON and SVG emission.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error, 3 internal
//! assertion failure.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use obforge::openbook::Curve;
use obforge::pipeline::{run_pipeline, Pipeline, PipelineError, PipelineOptions};
use obforge::region::RectKind;
use obforge::render::{render_svg, View};
use obforge::sbd;

#[derive(Parser)]
#[command(name = "obforge", version, about = "Open book decompositions from square bridge diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input `.sbd` file.
    input: PathBuf,
    /// Write the pipeline report as JSON to a path, or `-` for stdout.
    #[arg(long)]
    json: Option<String>,
    /// Write an SVG rendering to a path, or `-` for stdout.
    #[arg(long)]
    svg: Option<String>,
    /// View for SVG output.
    #[arg(long, default_value = "region")]
    view: View,
    /// Disable rectangle merging.
    #[arg(long)]
    no_merge: bool,
    /// Disable split-link bridging.
    #[arg(long)]
    no_bridge: bool,
}

impl Common {
    fn options(&self) -> PipelineOptions {
        PipelineOptions { merge: !self.no_merge, bridge: !self.no_bridge }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the square bridge conditions and print diagnostics.
    Validate(Common),
    /// Print the page surface statistics.
    Page(Common),
    /// Print the monodromy word (surgery lines from the input applied).
    Monodromy(Common),
    /// Print the torus-grid genus comparison.
    Compare(Common),
    /// Write an SVG view of the diagram, front, region or page.
    Render(Common),
}

type Action = fn(&Common, &Pipeline) -> Result<(), CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, action): (&Common, Action) =
        match &cli.command {
            Command::Validate(c) => (c, do_validate),
            Command::Page(c) => (c, do_page),
            Command::Monodromy(c) => (c, do_monodromy),
            Command::Compare(c) => (c, do_compare),
            Command::Render(c) => (c, do_render),
        };
    match run(common, action) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

enum CliError {
    Validation(String),
    Io(String),
    Internal(String),
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn run(common: &Common, action: Action) -> Result<(), CliError> {
    let text = fs::read_to_string(&common.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", common.input.display())))?;
    let file = sbd::parse(&text).map_err(PipelineError::from)?;
    let pipeline = run_pipeline(&file, common.options())?;
    action(common, &pipeline)?;
    if let Some(target) = &common.json {
        write_out(target, &pipeline.report_json())?;
    }
    if let Some(target) = &common.svg {
        write_out(target, &render_svg(&pipeline, common.view))?;
    }
    Ok(())
}

fn write_out(target: &str, content: &str) -> Result<(), CliError> {
    if target == "-" {
        std::io::stdout().write_all(content.as_bytes())?;
    } else {
        fs::write(target, content)?;
    }
    Ok(())
}

fn do_validate(_c: &Common, pl: &Pipeline) -> Result<(), CliError> {
    let d = &pl.diagram;
    println!("valid square bridge diagram: p={} q={} (p=q as forced by the corner condition)", d.p, d.q);
    println!("components={} corners={} junctions={}", pl.classical.components.len(), d.corners().len(), d.junctions().len());
    for c in &pl.classical.components {
        println!(
            "component {}: corners={} left_cusps={} writhe={} tb={}",
            c.id, c.corners, c.left_cusps, c.writhe, c.tb
        );
    }
    for l in &pl.classical.linking {
        println!("linking lk({},{})={}", l.a, l.b, l.lk);
    }
    let dec = &pl.decomposition;
    println!(
        "region: cells={} N={} bridges={} merges={}",
        dec.cells.count(),
        dec.rects.len(),
        dec.bridges.len(),
        dec.merges.len()
    );
    let line_coherent = pl.stats.disks == d.p + d.q;
    println!(
        "page: chi={} boundary={} genus={} disks={} bands={} kappa={}",
        pl.stats.euler, pl.stats.boundary, pl.stats.genus, pl.stats.disks, pl.stats.bands, pl.stats.kappa
    );
    if dec.merges.is_empty() && dec.bridges.is_empty() {
        println!(
            "cross-check: bands=kappa {}; kappa=p+q+N-1 {} (per-line skeleton {})",
            if pl.stats.bands == pl.stats.kappa { "holds" } else { "FAILS" },
            if pl.stats.kappa == d.p + d.q + dec.rects.len() - 1 { "holds" } else { "does not apply" },
            if line_coherent { "connected" } else { "split on some line" }
        );
    }
    Ok(())
}

fn do_page(_c: &Common, pl: &Pipeline) -> Result<(), CliError> {
    println!(
        "chi={} boundary={} genus={}",
        pl.stats.euler, pl.stats.boundary, pl.stats.genus
    );
    Ok(())
}

fn do_monodromy(_c: &Common, pl: &Pipeline) -> Result<(), CliError> {
    let word = &pl.openbook.word.0;
    println!("word length {}", word.len());
    for t in word {
        let name = match t.curve {
            Curve::Gamma { index } => {
                let rect = &pl.decomposition.rects[index - 1];
                let kind = match rect.kind {
                    RectKind::Primitive => "",
                    RectKind::Bridge => " bridge",
                    RectKind::Merged => " merged",
                };
                format!(
                    "gamma_{index}{kind} rows {}..{} cols {}..{}",
                    rect.row_lo, rect.row_hi, rect.col_lo, rect.col_hi
                )
            }
            Curve::Component { id } => format!("component_{id}"),
        };
        println!("{name} {:+}", t.exponent);
    }
    Ok(())
}

fn do_compare(_c: &Common, pl: &Pipeline) -> Result<(), CliError> {
    let r = &pl.comparison;
    println!(
        "p={} q={} kappa={} genus={} torus_genus={} torus_boundary={}",
        r.p, r.q, r.kappa, r.genus, r.torus_genus, r.torus_boundary
    );
    println!(
        "strict inequality genus < torus_genus: {} ({})",
        if r.strict_holds { "holds" } else { "does not hold" },
        if r.strict_expected { "claimed for p>3, q>3" } else { "not claimed: needs p>3 and q>3" }
    );
    println!(
        "witnesses: pq-kappa={} pq-kappa-p={}",
        r.pq_minus_kappa, r.pq_minus_kappa_minus_p
    );
    println!("sg_upper_bound={}", pl.openbook.sg_upper_bound);
    Ok(())
}

fn do_render(c: &Common, pl: &Pipeline) -> Result<(), CliError> {
    if c.svg.is_none() {
        // render with no --svg writes to stdout
        std::io::stdout().write_all(render_svg(pl, c.view).as_bytes())?;
    }
    Ok(())
}
