mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use commands::{DomainError, Outcome, ToffoliMode};
use qft_lab_core::concat::NoiseParams;
use qft_lab_core::qecc::{CodeName, PhaseMode};
use qft_lab_core::resource::{
    CountMode, Decomposition, TableMode, FIG4_DEFAULT_K2, FIG4_DEFAULT_KAPPA, FIG4_DEFAULT_PAIRS,
};

/// Fault-tolerant qubit–qutrit circuit toolkit: decompositions, code
/// experiments, concatenation calculators and resource estimates.
#[derive(Parser)]
#[command(name = "qft-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate the reference threshold table or cost sweep as CSV.
    Reproduce {
        #[command(subcommand)]
        target: Reproduce,
    },
    /// Emit a gate decomposition as circuit JSON.
    Decompose {
        #[command(subcommand)]
        target: Decompose,
    },
    /// Run an error-correcting-code experiment.
    Qecc {
        #[command(subcommand)]
        experiment: Qecc,
    },
    /// Concatenation-level calculators.
    Concat {
        #[command(subcommand)]
        query: Concat,
    },
    /// Fault-tolerant gate-count estimates.
    Estimate {
        #[command(subcommand)]
        target: Estimate,
    },
    /// Statevector simulation of a circuit file.
    Sim {
        #[command(subcommand)]
        action: Sim,
    },
}

#[derive(Subcommand)]
enum Reproduce {
    /// Level gap for each (c·p23, δ) row.
    Table1,
    /// Bar heights (resource RHS) and line values (resource LHS).
    Fig4 {
        /// Adder widths, comma separated.
        #[arg(long = "n", required = true, value_delimiter = ',')]
        ns: Vec<u64>,
        /// κ_g values for the non-transversal gate.
        #[arg(long, value_delimiter = ',', default_values_t = FIG4_DEFAULT_KAPPA)]
        kappa: Vec<f64>,
        /// Qubit concatenation levels.
        #[arg(long, value_delimiter = ',', default_values_t = FIG4_DEFAULT_K2)]
        k2: Vec<u32>,
        /// Line pairs `cp2:delta`, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        pairs: Option<Vec<(f64, f64)>>,
    },
}

#[derive(Subcommand)]
enum Decompose {
    Toffoli {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Also compare the circuit's unitary with Toffoli.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    CliffordT,
    Qutrit,
}

#[derive(Subcommand)]
enum Qecc {
    /// Stray X1 inside a qutrit repetition block.
    Leakage {
        /// Amplitude of |000⟩, e.g. `0.6` or `0.6+0.2i`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Complex64,
        /// Amplitude of |111⟩.
        #[arg(long, allow_hyphen_values = true)]
        beta: Complex64,
    },
    /// Transversal C1-X1 from a qubit Shor block onto a qutrit Shor block.
    ShorCnot,
    /// Check whether a physical gate applied wire by wire acts logically.
    Transversal {
        #[arg(long, value_parser = parse_code)]
        ctrl: CodeName,
        #[arg(long, value_parser = parse_code)]
        tgt: CodeName,
        /// Physical gate: CNOT, c1-ternary-cnot or c2-ternary-cnot.
        #[arg(long, value_parser = parse_gate_label)]
        gate: String,
        /// Expected logical gate, same labels.
        #[arg(long, value_parser = parse_gate_label)]
        expect: String,
        #[arg(long, value_enum, default_value_t = PhaseArg::Strict)]
        phase_mode: PhaseArg,
    },
    /// Both measurement branches of the T-gate teleportation gadget.
    TGadget {
        /// Bloch polar angle of the input.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        /// Bloch azimuth of the input.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    Strict,
    PerBasis,
}

#[derive(Subcommand)]
enum Concat {
    /// Levels needed to reach `epsilon` from physical error `p`.
    Levels {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        epsilon: f64,
    },
    /// Extra qutrit levels at equal thresholds.
    Gap {
        #[arg(long)]
        cp23: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        k2: u32,
    },
    /// Accuracy ratio after the same number of levels.
    Delta {
        #[command(flatten)]
        noise: NoiseArgs,
        #[arg(long)]
        k: u32,
    },
    /// Common level for a hybrid circuit.
    Hybrid {
        #[command(flatten)]
        noise: NoiseArgs,
        #[arg(long)]
        epsilon: f64,
    },
}

#[derive(Args)]
struct NoiseArgs {
    #[arg(long)]
    c2: f64,
    #[arg(long)]
    p2: f64,
    #[arg(long)]
    c3: f64,
    #[arg(long)]
    p23: f64,
}

#[derive(Subcommand)]
enum Estimate {
    /// In-place adder of two n-qubit registers.
    Adder {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        decomp: DecompArg,
        #[arg(long, value_enum, default_value_t = TableArg::PaperTable)]
        table_mode: TableArg,
        #[arg(long, value_enum, default_value_t = CountArg::Simplified)]
        count_mode: CountArg,
        /// κ_g of the 2-controlled ternary CNOT, in units of the code distance.
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        /// Concatenation levels.
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecompArg {
    Qubit,
    Qutrit,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    PaperTable,
    Compositional,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountArg {
    Simplified,
    Exact,
}

#[derive(Subcommand)]
enum Sim {
    /// Apply a circuit JSON file to a basis state.
    Run {
        circuit: PathBuf,
        /// Initial digits, wire 0 first.
        #[arg(long)]
        initial: String,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected cp2:delta, got {s:?}"))?;
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_code(s: &str) -> Result<CodeName, String> {
    s.parse::<CodeName>().map_err(|_| {
        let names: Vec<&str> = CodeName::ALL.iter().map(|c| c.as_str()).collect();
        format!("unknown code {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_gate_label(s: &str) -> Result<String, String> {
    match s {
        "CNOT" | "c1-ternary-cnot" | "c2-ternary-cnot" => Ok(s.to_string()),
        _ => Err(format!("unknown gate {s:?}; expected CNOT, c1-ternary-cnot or c2-ternary-cnot")),
    }
}

fn noise(args: &NoiseArgs, epsilon: f64) -> Result<NoiseParams, DomainError> {
    Ok(NoiseParams::new(args.c2, args.p2, args.c3, args.p23, epsilon)?)
}

fn run(cli: Cli, digits: usize) -> Result<Outcome, DomainError> {
    match cli.command {
        Command::Reproduce { target } => match target {
            Reproduce::Table1 => commands::reproduce_table1(digits),
            Reproduce::Fig4 { ns, kappa, k2, pairs } => commands::reproduce_fig4(
                &ns,
                &kappa,
                &k2,
                pairs.as_deref().unwrap_or(&FIG4_DEFAULT_PAIRS),
                digits,
            ),
        },
        Command::Decompose {
            target: Decompose::Toffoli { mode, verify },
        } => commands::decompose_toffoli(
            match mode {
                ModeArg::CliffordT => ToffoliMode::CliffordT,
                ModeArg::Qutrit => ToffoliMode::Qutrit,
            },
            verify,
            digits,
        ),
        Command::Qecc { experiment } => match experiment {
            Qecc::Leakage { alpha, beta } => commands::qecc_leakage(alpha, beta, digits),
            Qecc::ShorCnot => commands::qecc_shor_cnot(digits),
            Qecc::Transversal {
                ctrl,
                tgt,
                gate,
                expect,
                phase_mode,
            } => commands::qecc_transversal(
                ctrl,
                tgt,
                &gate,
                &expect,
                match phase_mode {
                    PhaseArg::Strict => PhaseMode::Strict,
                    PhaseArg::PerBasis => PhaseMode::PerBasis,
                },
                digits,
            ),
            Qecc::TGadget { theta, phi } => commands::qecc_t_gadget(theta, phi, digits),
        },
        Command::Concat { query } => match query {
            Concat::Levels { c, p, epsilon } => commands::concat_levels(c, p, epsilon, digits),
            Concat::Gap { cp23, delta, k2 } => commands::concat_gap(cp23, delta, k2, digits),
            Concat::Delta { noise: n, k } => commands::concat_delta(&noise(&n, 1.0)?, k, digits),
            Concat::Hybrid { noise: n, epsilon } => commands::concat_hybrid(&noise(&n, epsilon)?, digits),
        },
        Command::Estimate {
            target:
                Estimate::Adder {
                    n,
                    decomp,
                    table_mode,
                    count_mode,
                    kappa,
                    k,
                },
        } => commands::estimate_adder(
            n,
            match decomp {
                DecompArg::Qubit => Decomposition::Qubit,
                DecompArg::Qutrit => Decomposition::Qutrit,
            },
            match table_mode {
                TableArg::PaperTable => TableMode::PaperTable,
                TableArg::Compositional => TableMode::Compositional,
            },
            match count_mode {
                CountArg::Simplified => CountMode::Simplified,
                CountArg::Exact => CountMode::Exact,
            },
            kappa,
            k,
            digits,
        ),
        Command::Sim {
            action: Sim::Run { circuit, initial },
        } => commands::sim_run(&circuit, &initial, digits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = match output::digits_from_env() {
        Ok(d) => d,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli, digits) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(DomainError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
