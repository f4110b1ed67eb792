mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Outcome};

/// Construct, check and minimally triangulate toroidal polyhedra.
#[derive(Parser, Debug)]
#[command(name = "toroid", version)]
pub struct Cli {
    /// Directory for generated files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Search budget in search-tree nodes.
    #[arg(long, global = true, default_value_t = toroid_core::engine::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Print the full JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized self-checks; never affects constructions.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Pyramid,
    Bipyramid,
    Schoenhardt,
    Csaszar,
    #[value(name = "toroid-p9")]
    ToroidP9,
    Chain,
    #[value(name = "chain+attach")]
    ChainAttach,
    ChainSharedTet,
    CycleClosure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Any,
    Exhaustive,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a polyhedron of a family, with its witness and decomposition.
    Generate {
        family: Family,
        /// Total vertex count (pyramid, bipyramid).
        #[arg(long)]
        n: Option<usize>,
        /// Number of tori (chain families, cycle-closure).
        #[arg(long)]
        p: Option<usize>,
        /// Vertex count of the attached pyramid (chain+attach).
        #[arg(long)]
        k: Option<usize>,
        /// Rotation of the prism top as `c,s` with c^2 + s^2 = 1 (schoenhardt).
        #[arg(long)]
        twist: Option<String>,
        /// Give the pyramid a non-planar base.
        #[arg(long)]
        space_base: bool,
    },
    /// Report counts, genus, embeddedness and volume of a mesh.
    Inspect {
        mesh: PathBuf,
        /// Fan-triangulate planar convex polygon faces.
        #[arg(long)]
        fan_polygons: bool,
    },
    /// Search for triangulations without new vertices.
    Triangulate {
        mesh: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Any)]
        mode: Mode,
        #[arg(long)]
        fan_polygons: bool,
    },
    /// Check that a set of tetrahedra triangulates a mesh.
    Verify { mesh: PathBuf, tets: PathBuf },
    /// Check a triangulation and compare its size with the genus bound.
    Certify { mesh: PathBuf, tets: PathBuf },
    /// Lower bound on the tetrahedra of a triangulation.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Graph of connection of a convex decomposition.
    Congraph {
        decomposition: PathBuf,
        /// Mesh the decomposition refers to; enables validation.
        #[arg(long)]
        mesh: Option<PathBuf>,
        /// Decide whether minimal triangulations of the pieces add up to one
        /// of the whole mesh.
        #[arg(long, requires = "mesh")]
        check_m: bool,
        /// Merge coplanar contact triangles into one edge.
        #[arg(long, requires = "mesh")]
        merge_coplanar: bool,
        /// Also check that pieces sharing a vertex are linked through it.
        #[arg(long, requires = "mesh")]
        sharing_rule: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let started = std::time::Instant::now();
    let result = commands::run(&cli, &argv);
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    match result {
        Ok(Outcome { report, summary, code }) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                println!("{summary}");
            }
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
