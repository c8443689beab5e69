use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sharpbound::bounds::BoundKind;
use sharpbound::verify::Theorem;
use sharpbound::Limits;
use sharpbound_cli::{
    cmd_bound, cmd_conjecture, cmd_group, cmd_kerr, cmd_witness, exit, Format, Output,
};

const CAPS_HELP: &str = "\
Search caps come from defaults, then the --config file (key=value lines),
then the environment: SB_PRIME_SCAN_CAP, SB_GROUP_SIZE_CAP, SB_PP_VALUE_CAP.

Exit codes: 0 success, 1 mismatch, 2 invalid input, 3 search cap exhausted,
4 witness skipped by a size cap.";

#[derive(Parser)]
#[command(name = "sharpbound", version, about = "Exact sharp bounds for nilpotency and supersolvability", after_help = CAPS_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// key=value file overriding the search caps.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact value of f_n, f_s, g_n, g_s, h_n or h_s at p.
    #[command(
        after_help = "CSV header: p,kind,value_num,value_den,q,prime_power_base,prime_power_exponent,prime_power_value,m,base_equals_p"
    )]
    Bound {
        #[arg(long)]
        p: u64,
        /// One of fn, fs, gn, gs, hn, hs.
        #[arg(long, value_parser = parse_kind)]
        kind: BoundKind,
    },
    /// Compare t(p) with P(1,p) and r(p) with P(p-1,p)^2 for odd primes p <= max.
    #[command(after_help = "CSV header: p,t_p,p1,r_p,p2_sq,part_a_match,part_b_match,notes")]
    Conjecture {
        #[arg(long)]
        max: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Build the extremal group for theorem A, B, C or D and compare with the bound.
    #[command(
        after_help = "CSV header: p,theorem,bound_num,bound_den,witness_label,witness_order,witness_num,witness_den,match,status,notes"
    )]
    Witness {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = parse_theorem)]
        theorem: Theorem,
    },
    /// Statistics of GF(q^m)+ ⋊ C_n.
    #[command(
        after_help = "CSV header: q,m,n,label,size,class_count,pr_num,pr_den,derived_size,center_size,acd_num,acd_den,degrees,orbit_sizes"
    )]
    Group {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: u64,
    },
    /// Explicit l with 2l+1 = q^3, q > p prime, gcd(l, (p-1)#) = 1.
    #[command(after_help = "CSV header: p,a,n,q,l,cube_check,gcd_check,spf_at_least_p")]
    Kerr {
        #[arg(long)]
        p: u64,
    },
}

fn parse_kind(s: &str) -> Result<BoundKind, String> {
    s.parse().map_err(|e: sharpbound::Error| e.to_string())
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e: sharpbound::Error| e.to_string())
}

fn load_limits(config: Option<&PathBuf>) -> Result<Limits, String> {
    let text = match config {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        ),
        None => None,
    };
    Limits::load(text.as_deref()).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Output {
    let limits = match load_limits(cli.config.as_ref()) {
        Ok(l) => l,
        Err(msg) => {
            return Output {
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
                code: exit::INVALID,
            }
        }
    };
    let format = cli.format;
    match cli.command {
        Command::Bound { p, kind } => cmd_bound(p, kind, format, &limits),
        Command::Conjecture { max, jobs } => cmd_conjecture(max, format, jobs, &limits),
        Command::Witness { p, theorem } => cmd_witness(p, theorem, format, &limits),
        Command::Group { q, m, n } => cmd_group(q, m, n, format, &limits),
        Command::Kerr { p } => cmd_kerr(p, format, &limits),
    }
}

fn main() -> ExitCode {
    let out = run(Cli::parse());
    // Output errors (e.g. a closed pipe) are ignored; the exit code stands.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
