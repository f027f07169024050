use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use clover::canon::canonicalize;
use clover::color::Color;
use clover::enumerate::{enumerate_with, EnumerationOptions};
use clover::error::{CloverError, Result};
use clover::graph::ColoredGraph;
use clover::groups::{relation_vectors, tower};
use clover::model::ManifoldModel;
use clover::moves::{apply_move_to_model, verify_isomorphism, Move};
use clover::quotient::{relation_matrix, Ring};
use clover::relations::RelationSet;
use clover::report::{emit_reports, Format, RankTable};
use clover::vector::expand;
use clover::verify::corollary_suite;

/// Graded graph groups of closed 3-manifolds.
#[derive(Parser)]
#[command(name = "clover", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Bounds {
    /// Allow degrees above the default bound of 4.
    #[arg(long, global = true)]
    unsafe_degree: bool,
    /// Restrict generators to connected graphs.
    #[arg(long, global = true)]
    connected_only: bool,
}

impl Bounds {
    fn options(&self) -> EnumerationOptions {
        EnumerationOptions {
            connected_only: self.connected_only,
            max_degree: if self.unsafe_degree {
                usize::MAX
            } else {
                clover::enumerate::DEFAULT_MAX_DEGREE
            },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Q,
    Z,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Q => Ring::Q,
            RingArg::Z => Ring::Z,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Corollaries,
}

#[derive(Subcommand)]
enum Command {
    /// List the generators of one degree.
    Enumerate {
        #[arg(long)]
        degree: usize,
        /// Comma-separated colors; empty for no legs.
        #[arg(long, default_value = "", value_delimiter = ',')]
        colors: Vec<String>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Print relation vectors of one degree.
    Relations {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value = "as,ihx,loop,br,obr")]
        set: String,
        /// Write the relation matrix as `row col value` triplets.
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "z")]
        ring: RingArg,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Rank table of B, A, Ao and Aphi for degrees 0..=degree-max.
    Ranks {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree_max: usize,
        #[arg(long, value_enum, default_value = "q")]
        ring: RingArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Omit the wall-clock column.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Apply a move to a model, optionally verifying the induced isomorphism.
    Move {
        #[arg(long)]
        model: PathBuf,
        /// e.g. `m1:x:y:+1`, `m2:x:-1`, `m3:insert:u:x=1`, `m3:delete:u`.
        #[arg(long)]
        apply: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long)]
        verify: bool,
        /// Verify over Z instead of Q.
        #[arg(long)]
        integral: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "corollaries")]
        suite: Suite,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree_max: usize,
        /// Rerun the checks that permit it over Z.
        #[arg(long)]
        integral: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Canonical form and sign of a graph in graph notation.
    Expand { graph: String },
}

enum Outcome {
    Ok,
    Failed,
}

fn load_model(path: &Path) -> Result<ManifoldModel> {
    ManifoldModel::from_json(&fs::read_to_string(path)?)
}

fn model_label(path: &Path) -> String {
    path.file_stem()
        .map_or("model".into(), |s| s.to_string_lossy().into_owned())
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Enumerate {
            degree,
            colors,
            bounds,
        } => {
            let alphabet = colors
                .iter()
                .filter(|c| !c.is_empty())
                .map(|c| Color::new(c))
                .collect::<Result<Vec<_>>>()?;
            let basis = enumerate_with(degree, &alphabet, &bounds.options())?;
            for g in &basis.generators {
                println!("{g}");
            }
            for g in &basis.degenerates {
                println!("{g}\tdegenerate");
            }
            println!(
                "# generators={} degenerates={}",
                basis.generators.len(),
                basis.degenerates.len()
            );
        }
        Command::Relations {
            degree,
            model,
            set,
            dump_matrix,
            ring,
            bounds,
        } => {
            let m = load_model(&model)?;
            let set: RelationSet = set.parse()?;
            let opts = bounds.options();
            let basis = enumerate_with(degree, &m.alphabet(), &opts)?;
            let rels = relation_vectors(&basis, &set, Some(&m), &opts)?;
            for (i, r) in rels.iter().enumerate() {
                println!("relation {i}");
                println!("{r}");
            }
            println!("# relations={} generators={}", rels.len(), basis.len());
            if let Some(path) = dump_matrix {
                let mut file = fs::File::create(path)?;
                relation_matrix(&basis, &rels, ring.into())?.write_triplets(&mut file)?;
            }
        }
        Command::Ranks {
            model,
            degree_max,
            ring,
            format,
            no_timing,
            bounds,
        } => {
            let m = load_model(&model)?;
            let opts = bounds.options();
            let towers = (0..=degree_max)
                .map(|d| tower(&m, d, ring.into(), &opts))
                .collect::<Result<Vec<_>>>()?;
            print!(
                "{}",
                RankTable::from_towers(&towers).emit(format.into(), !no_timing)
            );
        }
        Command::Move {
            model,
            apply,
            degree,
            verify,
            integral,
            bounds,
        } => {
            let m = load_model(&model)?;
            let mv: Move = apply.parse()?;
            if verify {
                let ring = if integral { Ring::Z } else { Ring::Q };
                let report = verify_isomorphism(&mv, degree, &m, ring, &bounds.options())?;
                println!("{report}");
                if !report.passed() {
                    return Ok(Outcome::Failed);
                }
            } else {
                println!("{}", apply_move_to_model(&m, &mv)?.to_json());
            }
        }
        Command::Verify {
            suite: Suite::Corollaries,
            model,
            degree_max,
            integral,
            format,
            bounds,
        } => {
            let m = load_model(&model)?;
            let ring = if integral { Ring::Z } else { Ring::Q };
            let reports = corollary_suite(
                &m,
                &model_label(&model),
                degree_max,
                ring,
                &bounds.options(),
            )?;
            print!("{}", emit_reports(&reports, format.into()));
            if !reports.iter().all(|r| r.passed()) {
                return Ok(Outcome::Failed);
            }
        }
        Command::Expand { graph } => {
            let g: ColoredGraph = graph.parse()?;
            if g.legs().iter().all(|l| l.as_single().is_some()) {
                let (c, sign) = canonicalize(&g)?;
                println!("canonical {c}");
                println!("sign {:+}", sign.to_i32());
                println!("degenerate {}", c.is_degenerate());
            } else {
                println!("{}", expand(&g));
            }
        }
    }
    Ok(Outcome::Ok)
}

fn exit_code(e: &CloverError) -> u8 {
    match e {
        CloverError::ResourceLimit(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = std::env::var("CLOVER_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
