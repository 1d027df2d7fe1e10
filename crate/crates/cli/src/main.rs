use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ppad::dbf::{decode_solution, eol_to_dbf, find_panchromatic_threads};
use ppad::games::{parse_rational, verify_nash, verify_regret};
use ppad::reductions::{fixture, symmetrize};
use ppad::solvers::{approx_nash, approx_nash_seeded, lemke_howson, random_normal_form, support_enumeration_threads};
use ppad::sperner::{brute_force_trichromatic_threads, find_trichromatic_walk, sperner_to_eol};
use ppad::total_search::{brute_force_eol_threads, follow_line, random_eol_instance_with, verify_eol_solution};
use ppad::{BimatrixGame, BitString, DbfInstance, EndOfLineInstance, MixedProfile, NormalFormGame, SpernerInstance};

#[derive(Parser)]
#[command(name = "ppad", version, about = "End-of-line, Sperner, discrete Brouwer and Nash equilibrium toolkit")]
struct Cli {
    /// Worker threads for brute-force scans; output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Solve an instance read from INPUT or standard input.
    #[command(subcommand)]
    Solve(Solve),
    /// Apply a reduction.
    #[command(subcommand)]
    Reduce(Reduce),
    /// Check a claimed solution.
    #[command(subcommand)]
    Verify(Verify),
    /// Print a named example game (rps, stag-hunt, matching-pennies, gmp<n>).
    Fixture { name: String },
    /// Render a Sperner or Brouwer instance as a binary PPM image.
    Render {
        file: PathBuf,
        #[arg(long)]
        ppm: PathBuf,
    },
}

#[derive(Args)]
struct Input {
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Args)]
struct LineShape {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    lines: usize,
    /// Longest line in arcs; defaults to n.
    #[arg(long)]
    max_arcs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Gen {
    /// Vertex-disjoint lines, the first starting at 0^n.
    Eol(LineShape),
    /// Random interior colouring of a (2^m+1)^2 grid.
    Sperner {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brouwer encoding of a random End-of-line instance.
    Dbf(LineShape),
    /// Normal-form game with integer payoffs drawn from lo..=hi.
    Game {
        /// Action counts, one per player, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        actions: Vec<usize>,
        #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Solve {
    /// Follow the line from 0^n; with --all list every solution.
    Eol {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        all: bool,
    },
    /// Walk to a trichromatic triangle; with --all list every one.
    Sperner {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        all: bool,
    },
    /// List panchromatic points, decoded when the file carries provenance.
    Dbf {
        #[command(flatten)]
        input: Input,
    },
    /// Lemke-Howson from the artificial equilibrium.
    Lh {
        #[command(flatten)]
        input: Input,
        /// Dropped label, 0-based: rows first, then columns.
        #[arg(long, default_value_t = 0)]
        drop: usize,
    },
    /// Every equilibrium found by support enumeration.
    Supenum {
        #[command(flatten)]
        input: Input,
    },
    /// The k-player approximation scheme on the [0,1]-rescaled game.
    Approx {
        #[command(flatten)]
        input: Input,
        /// Draw the committed actions from this seed instead of using action 0.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Reduce {
    SpernerToEol {
        #[command(flatten)]
        input: Input,
    },
    EolToDbf {
        #[command(flatten)]
        input: Input,
    },
    Symmetrize {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Check that --x is a SINK or SOURCE of the instance.
    Eol {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        x: String,
    },
    /// Check every profile in --profile against the game in INPUT.
    Nash {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        profile: PathBuf,
        /// Tolerance as a rational, e.g. `1/2`.
        #[arg(long, default_value = "0")]
        eps: String,
        /// Bound the expected gain of the best deviation instead of the
        /// payoff gap of every supported action.
        #[arg(long)]
        regret: bool,
        /// Rescale each player's payoffs affinely onto [0,1] first.
        #[arg(long)]
        rescale: bool,
    },
}

enum Failure {
    /// A verifier said no.
    Rejected,
    /// Bad input or a library error.
    Error(String),
}

impl From<ppad::Error> for Failure {
    fn from(e: ppad::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_path(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Error(format!("cannot read {}: {e}", path.display())))
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match &input.input {
        Some(p) if p.as_os_str() != "-" => read_path(p),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Error(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn emit(out: &mut impl Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Error(format!("cannot write output: {e}")))
}

fn read_game(input: &Input) -> Result<NormalFormGame, Failure> {
    Ok(NormalFormGame::parse(&read_input(input)?)?)
}

fn read_bimatrix(input: &Input) -> Result<BimatrixGame, Failure> {
    Ok(BimatrixGame::from_normal_form(&read_game(input)?)?)
}

fn random_line_instance(shape: &LineShape) -> Result<EndOfLineInstance, Failure> {
    let max_arcs = shape.max_arcs.unwrap_or(shape.n.max(1));
    Ok(random_eol_instance_with(shape.n, shape.lines, max_arcs, shape.seed)?)
}

fn gen(cmd: &Gen, out: &mut impl Write) -> Outcome {
    match cmd {
        Gen::Eol(shape) => emit(out, &random_line_instance(shape)?.to_text()),
        Gen::Sperner { m, seed } => emit(out, &SpernerInstance::random(*m, *seed)?.to_text()),
        Gen::Dbf(shape) => emit(out, &eol_to_dbf(&random_line_instance(shape)?)?.to_text()),
        Gen::Game { actions, lo, hi, seed } => emit(out, &random_normal_form(actions, *lo, *hi, *seed)?.to_text()),
    }
}

fn solve(cmd: &Solve, threads: usize, out: &mut impl Write) -> Outcome {
    match cmd {
        Solve::Eol { input, all } => {
            let inst = EndOfLineInstance::parse(&read_input(input)?)?;
            if *all {
                for s in brute_force_eol_threads(&inst, threads)? {
                    emit(out, &format!("{s}\n"))?;
                }
                Ok(())
            } else {
                emit(out, &format!("{}\n", follow_line(&inst)?))
            }
        }
        Solve::Sperner { input, all } => {
            let inst = SpernerInstance::parse(&read_input(input)?)?;
            if *all {
                for t in brute_force_trichromatic_threads(&inst, threads)? {
                    emit(out, &format!("{t}\n"))?;
                }
                Ok(())
            } else {
                emit(out, &format!("{}\n", find_trichromatic_walk(&inst)?))
            }
        }
        Solve::Dbf { input } => {
            let inst = DbfInstance::parse(&read_input(input)?)?;
            for p in find_panchromatic_threads(&inst, threads)? {
                let line = if inst.provenance().is_some() {
                    format!("{} {} {}\n", p.x, p.y, decode_solution(&inst, &p)?)
                } else {
                    format!("{} {}\n", p.x, p.y)
                };
                emit(out, &line)?;
            }
            Ok(())
        }
        Solve::Lh { input, drop } => {
            let outcome = lemke_howson(&read_bimatrix(input)?, *drop)?;
            emit(out, &format!("# pivots {}\n{}", outcome.pivots, outcome.profile.to_text()))
        }
        Solve::Supenum { input } => {
            for p in support_enumeration_threads(&read_bimatrix(input)?, threads)? {
                emit(out, &p.to_text())?;
            }
            Ok(())
        }
        Solve::Approx { input, seed } => {
            let g = read_game(input)?;
            let (p, guarantee) = match seed {
                Some(s) => approx_nash_seeded(&g, *s)?,
                None => approx_nash(&g)?,
            };
            emit(out, &format!("# guarantee {guarantee}\n{}", p.to_text()))
        }
    }
}

fn reduce(cmd: &Reduce, out: &mut impl Write) -> Outcome {
    match cmd {
        Reduce::SpernerToEol { input } => {
            let (eol, _) = sperner_to_eol(&SpernerInstance::parse(&read_input(input)?)?)?;
            emit(out, &eol.to_text())
        }
        Reduce::EolToDbf { input } => {
            let inst = EndOfLineInstance::parse(&read_input(input)?)?;
            emit(out, &eol_to_dbf(&inst)?.to_text())
        }
        Reduce::Symmetrize { input } => {
            let (sym, cert) = symmetrize(&read_bimatrix(input)?)?;
            emit(out, &format!("# shift {}\n{}", cert.shift, sym.to_normal_form().to_text()))
        }
    }
}

fn verify(cmd: &Verify, out: &mut impl Write) -> Outcome {
    match cmd {
        Verify::Eol { input, x } => {
            let inst = EndOfLineInstance::parse(&read_input(input)?)?;
            let bits: BitString = x.parse()?;
            match verify_eol_solution(&inst, &bits)? {
                Some(sol) => emit(out, &format!("ACCEPT {sol}\n")),
                None => {
                    emit(out, &format!("REJECT {bits}\n"))?;
                    Err(Failure::Rejected)
                }
            }
        }
        Verify::Nash { input, profile, eps, regret, rescale } => {
            let g = read_game(input)?;
            let g = if *rescale { g.rescaled_unit() } else { g };
            let eps = parse_rational(eps)?;
            if eps < parse_rational("0")? {
                return Err(Failure::Error(format!("eps must be non-negative, got {eps}")));
            }
            let profiles = MixedProfile::parse_many(&read_path(profile)?, g.num_players())?;
            if profiles.is_empty() {
                return Err(Failure::Error(format!("no PROFILE block in {}", profile.display())));
            }
            let mut rejected = false;
            for p in &profiles {
                let v = if *regret { verify_regret(&g, p, &eps)? } else { verify_nash(&g, p, &eps)? };
                let mut line = format!(
                    "{} max_violation={}",
                    if v.accepted { "ACCEPT" } else { "REJECT" },
                    v.max_violation
                );
                if let (false, Some((player, better, supported))) = (v.accepted, v.witness) {
                    line.push_str(&format!(" player={player} deviation={better} from={supported}"));
                }
                emit(out, &format!("{line}\n"))?;
                rejected |= !v.accepted;
            }
            if rejected {
                Err(Failure::Rejected)
            } else {
                Ok(())
            }
        }
    }
}

fn render(file: &Path, ppm: &Path) -> Outcome {
    let text = read_path(file)?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let bytes = if header.starts_with("SPERNER") {
        SpernerInstance::parse(&text)?.render_ppm()?
    } else if header.starts_with("DBF") {
        DbfInstance::parse(&text)?.render_ppm()?
    } else {
        return Err(Failure::Error(format!(
            "{}: expected a SPERNER or DBF file",
            file.display()
        )));
    };
    fs::write(ppm, bytes).map_err(|e| Failure::Error(format!("cannot write {}: {e}", ppm.display())))
}

fn run(cli: &Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let threads = cli.threads.max(1);
    let result = match &cli.command {
        Command::Gen(g) => gen(g, &mut out),
        Command::Solve(s) => solve(s, threads, &mut out),
        Command::Reduce(r) => reduce(r, &mut out),
        Command::Verify(v) => verify(v, &mut out),
        Command::Fixture { name } => emit(&mut out, &fixture(name)?.to_normal_form().to_text()),
        Command::Render { file, ppm } => render(file, ppm),
    };
    out.flush().map_err(|e| Failure::Error(format!("cannot write output: {e}")))?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("ppad: {msg}");
            ExitCode::from(2)
        }
    }
}
