use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qcenc::analysis::{detect_catastrophic, verify_non_recursive, DEFAULT_MEMORY_BOUND};
use qcenc::circuit::{synthesize_circuit, Gate};
use qcenc::code::{parse_code, validate_code, ConvolutionalCode};
use qcenc::report::{render_matrix, run_pipeline, CodeJson, PipelineOptions};
use qcenc::shorten::shorten;
use qcenc::synth::{build_commutativity_matrix, minimal_memory};
use qcenc::tableau::{parse_tableau, CliffordTableau, FrameLayout};
use qcenc::Error;

const EXIT_INVALID: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_FAILURE: u8 = 3;
const EXIT_BOUND: u8 = 4;

#[derive(Parser)]
#[command(
    name = "qcenc",
    version,
    about = "Minimal-memory quantum convolutional encoder synthesis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the generators commute with each other and all their shifts.
    Validate(Common),
    /// Rewrite generators so first and last blocks are independent.
    Shorten(Common),
    /// Print the memory commutativity matrix and the minimal memory.
    Omega(Common),
    /// Run the full pipeline and print the report.
    Synthesize(Common),
    /// Catastrophicity and recursion verdicts for a code or a tableau file.
    Analyze(Common),
    /// Gate list for a code's encoder or a tableau file.
    Circuit(Common),
}

#[derive(Args)]
struct Common {
    file: PathBuf,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MEMORY_BOUND)]
    max_memory: usize,
    #[arg(long)]
    skip_shorten: bool,
    /// Include per-stage wall-clock times in the report.
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn options(&self) -> PipelineOptions {
        PipelineOptions {
            seed: self.seed,
            skip_shorten: self.skip_shorten,
            max_memory: self.max_memory,
            timing: self.timing,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidCode(_) => EXIT_INVALID,
            Error::BoundExceeded { .. } => EXIT_BOUND,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_failure(e: Error) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message: e.to_string(),
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_code(path: &Path) -> Result<ConvolutionalCode, Failure> {
    parse_code(&read(path)?).map_err(parse_failure)
}

fn is_tableau(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("m="))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn validate(args: &Common) -> CmdResult {
    let code = load_code(&args.file)?;
    let violations = validate_code(&code);
    if args.json {
        #[derive(Serialize)]
        struct Out<'a> {
            code: CodeJson,
            valid: bool,
            violations: &'a [qcenc::Violation],
        }
        print_json(&Out {
            code: CodeJson::new(&code),
            valid: violations.is_empty(),
            violations: &violations,
        });
    } else if violations.is_empty() {
        println!("valid");
    }
    if violations.is_empty() {
        return Ok(());
    }
    for v in &violations {
        eprintln!("violation: {v}");
    }
    Err(Failure {
        code: EXIT_INVALID,
        message: format!("invalid code: {} violation(s)", violations.len()),
    })
}

fn cmd_shorten(args: &Common) -> CmdResult {
    let code = load_code(&args.file)?;
    let report = shorten(&code)?;
    for step in &report.steps {
        eprintln!(
            "{:?} pass: h{} multiplied by {:?}, degree now {}",
            step.pass, step.generator, step.subset, step.degree
        );
    }
    if args.json {
        #[derive(Serialize)]
        struct Out<'a> {
            code: CodeJson,
            shorten: ShortenOut<'a>,
        }
        #[derive(Serialize)]
        struct ShortenOut<'a> {
            steps: &'a [qcenc::shorten::ShorteningStep],
            output: CodeJson,
        }
        print_json(&Out {
            code: CodeJson::new(&code),
            shorten: ShortenOut {
                steps: &report.steps,
                output: CodeJson::new(&report.output_code),
            },
        });
    } else {
        print!("{}", report.output_code.to_text());
    }
    Ok(())
}

fn omega(args: &Common) -> CmdResult {
    let code = load_code(&args.file)?;
    let omega = build_commutativity_matrix(&code)?;
    let m = minimal_memory(&omega)?;
    if args.json {
        #[derive(Serialize)]
        struct Synth {
            omega: Vec<Vec<u8>>,
            dim: usize,
            rank: usize,
            m: usize,
            index_map: Vec<String>,
        }
        #[derive(Serialize)]
        struct Out {
            code: CodeJson,
            synth: Synth,
        }
        print_json(&Out {
            code: CodeJson::new(&code),
            synth: Synth {
                omega: omega.matrix.to_entries(),
                dim: omega.dim(),
                rank: omega.rank(),
                m,
                index_map: omega
                    .index_map
                    .iter()
                    .map(|(i, j)| format!("g_{i}_{j}"))
                    .collect(),
            },
        });
    } else {
        let labels: Vec<String> = omega
            .index_map
            .iter()
            .map(|(i, j)| format!("g_{i},{j}"))
            .collect();
        println!("rows: {}", labels.join(" "));
        print!("{}", render_matrix(&omega.matrix.to_entries(), ""));
        println!("dim {} rank {} m {}", omega.dim(), omega.rank(), m);
    }
    Ok(())
}

fn synthesize(args: &Common) -> CmdResult {
    let code = load_code(&args.file)?;
    let report = run_pipeline(&code, &args.options())?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

fn analyze_tableau(args: &Common, layout: &FrameLayout, t: &CliffordTableau) -> CmdResult {
    let cat = detect_catastrophic(t, layout, args.max_memory)?;
    let rec = verify_non_recursive(t, layout, args.max_memory)?;
    if args.json {
        #[derive(Serialize)]
        struct Analysis<'a> {
            catastrophic: bool,
            cycle_witness: Option<&'a qcenc::analysis::CycleWitness>,
            recursive: bool,
            recursion_witness: Option<&'a [qcenc::analysis::StateDiagramEdge]>,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            analysis: Analysis<'a>,
        }
        print_json(&Out {
            analysis: Analysis {
                catastrophic: cat.catastrophic,
                cycle_witness: cat.witness.as_ref(),
                recursive: !rec.non_recursive,
                recursion_witness: rec.witness.as_deref(),
            },
        });
    } else {
        println!("catastrophic: {}", cat.catastrophic);
        if let Some(w) = &cat.witness {
            for e in &w.edges {
                println!("  {e}");
            }
        }
        println!("recursive: {}", !rec.non_recursive);
        if let Some(path) = &rec.witness {
            for e in path {
                println!("  {e}");
            }
        }
    }
    Ok(())
}

fn analyze(args: &Common) -> CmdResult {
    let text = read(&args.file)?;
    if is_tableau(&text) {
        let (layout, t) = parse_tableau(&text).map_err(parse_failure)?;
        return analyze_tableau(args, &layout, &t);
    }
    let code = parse_code(&text).map_err(parse_failure)?;
    let report = run_pipeline(&code, &args.options())?;
    analyze_tableau(args, &report.layout, &report.tableau)
}

fn circuit(args: &Common) -> CmdResult {
    let text = read(&args.file)?;
    let (width, gates): (usize, Vec<Gate>) = if is_tableau(&text) {
        let (_, t) = parse_tableau(&text).map_err(parse_failure)?;
        (t.width(), synthesize_circuit(&t))
    } else {
        let report = run_pipeline(&parse_code(&text).map_err(parse_failure)?, &args.options())?;
        (report.tableau.width(), report.gates)
    };
    if args.json {
        #[derive(Serialize)]
        struct Analysis<'a> {
            width: usize,
            gate_count: usize,
            gates: &'a [Gate],
        }
        #[derive(Serialize)]
        struct Out<'a> {
            analysis: Analysis<'a>,
        }
        print_json(&Out {
            analysis: Analysis {
                width,
                gate_count: gates.len(),
                gates: &gates,
            },
        });
    } else {
        println!("# {} qubits, {} gates", width, gates.len());
        for g in &gates {
            println!("{g}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Shorten(a) => cmd_shorten(a),
        Command::Omega(a) => omega(a),
        Command::Synthesize(a) => synthesize(a),
        Command::Analyze(a) => analyze(a),
        Command::Circuit(a) => circuit(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
