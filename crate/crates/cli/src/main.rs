//! Command-line front end: every library operation behind one binary,
//! emitting plain decimal, CSV, JSON (naturals as decimal strings) or
//! DIMACS, deterministically for a fixed set of flags.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use setnum::dilation::{
    dilate, dilation_surface, dilation_surface_to_csv, undilate, DilationSpec,
};
use setnum::numeric::{combinatorial_count, CountKind};
use setnum::pairing::{efficiency_surface, pair, surface_to_csv, unpair};
use setnum::sbxor::cnf::{dpll, tseitin};
use setnum::sbxor::entropy::{entropy_table, logic_entropy_empirical, InputMode};
use setnum::sbxor::sat::sat_encode;
use setnum::sbxor::{
    absorb, check, gen_random, mmk_decrypt, mmk_encrypt, solve_bruteforce, solve_gf2,
    BitVector, SbxorInstance,
};
use setnum::setcodec::{endo, phi_car_index, upsilon, upsilon_inv};
use setnum::sorted::{
    multiset_to_csv, phi_zeta, powerset_dilation, theta_index, zeta_eval, ZetaKind,
    DEFAULT_SCAN_BUDGET,
};
use setnum::subset::{
    census, check_witness, fixture_codebook, gen_scale_free, solve, Codebook, SubsetOp,
    SubsetProblem,
};
use setnum::{Error, FinSet, Nat, Point};

#[derive(Parser)]
#[command(
    name = "setnum",
    about = "Set-number bijections, plane dilations, subset problems and XOR ciphers",
    version
)]
struct Cli {
    /// Write output to a file instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Counter-diagonal index of a plane point
    Pair { x: String, y: String },
    /// Plane point of a counter-diagonal index, printed as "x y"
    Unpair { z: String },
    /// Cardinality-order index and binary-reading value of a finite set
    Setindex {
        /// Comma-separated elements, e.g. 1,4,6,8,10,11
        #[arg(long)]
        set: String,
    },
    /// Sum of powers of two over a set, or the set behind such a sum
    Upsilon {
        #[arg(long, conflicts_with = "inverse")]
        set: Option<String>,
        /// Decode a natural back into its set of bit positions
        #[arg(long)]
        inverse: Option<String>,
    },
    /// The induced endomorphism: decode a natural as a set, re-read it in binary
    Endo { n: String },
    /// Apply (or invert) an elastic dilation to a plane point
    Dilate {
        x: String,
        y: String,
        #[command(flatten)]
        rate: RateArgs,
        /// Invert: interpret (x, y) as an image point; prints "absent" off the image
        #[arg(long)]
        invert: bool,
    },
    /// CSV efficiency surface of the pairing, or of a dilation when a rate is given
    Surface {
        #[arg(long, default_value = "32")]
        x_max: String,
        #[arg(long, default_value = "32")]
        y_max: String,
        #[arg(long, default_value = "1")]
        step: String,
        #[arg(long, value_enum)]
        rate: Option<RateKind>,
        #[arg(long, default_value_t = 2)]
        c: u64,
        #[arg(long, default_value_t = 2)]
        exp: u32,
    },
    /// Type value, within-type index and sorted-injection index of a set
    Zeta {
        #[arg(long, value_enum)]
        kind: ZetaKindArg,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = DEFAULT_SCAN_BUDGET)]
        budget: u64,
    },
    /// CSV multiset of a type value over all non-empty subsets of a base set
    Powerset {
        #[arg(long, value_enum)]
        kind: ZetaKindArg,
        #[arg(long)]
        set: String,
    },
    /// Scale-free codebook as JSON (entries as decimal strings)
    Scalefree {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solution census of a codebook: CSV target,count, or a single count
    Census {
        #[arg(long, conflicts_with = "fixture")]
        k: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use a shipped codebook instead of generating one (paper-ssex2)
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, value_enum, default_value = "sum")]
        op: SubsetOpArg,
        /// Restrict the CSV to targets in lo:hi (inclusive)
        #[arg(long)]
        range: Option<String>,
        /// Print only the count for one target
        #[arg(long)]
        target: Option<String>,
        /// Solve for the target instead of counting; prints a selection string
        #[arg(long, requires = "target")]
        solve: bool,
    },
    /// Subset-bitwise-XOR instances: generate, check, solve, encode, absorb
    Sbxor {
        #[command(subcommand)]
        action: SbxorAction,
    },
    /// Chain one-time-pad: XOR a message with the fold of several keys
    Mmk {
        /// Comma-separated key bit strings, e.g. 1010,0110
        #[arg(long)]
        keys: String,
        #[arg(long, conflicts_with = "cipher")]
        message: Option<String>,
        #[arg(long)]
        cipher: Option<String>,
    },
    /// CSV table of output entropy and information balance for or/and/xor
    EntropyTable {
        #[arg(long, value_enum, default_value = "single-bit")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Estimate by Monte Carlo instead of the closed form
        #[arg(long)]
        empirical: bool,
        #[arg(long, default_value_t = 1_000_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Combinatorial counting sequences
    Counts {
        #[arg(long, value_enum)]
        kind: CountKindArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
    },
}

#[derive(Subcommand)]
enum SbxorAction {
    /// Generate an instance as JSON (rows, target, hidden selection)
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Validate a selection against an instance file; prints true/false
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        selection: String,
    },
    /// Find a selection reaching the target; prints it or "absent"
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Use exhaustive search instead of linear algebra
        #[arg(long)]
        brute: bool,
    },
    /// Emit the clause form of the decision problem as DIMACS
    Sat {
        #[arg(long)]
        input: PathBuf,
        /// Also run the bundled solver; prints s SATISFIABLE/UNSATISFIABLE
        #[arg(long)]
        solve: bool,
    },
    /// Re-encode the instance to carry a message; prints the new instance
    Absorb {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        message: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct RateArgs {
    #[arg(long, value_enum, default_value = "constant")]
    rate: RateKind,
    #[arg(long, default_value_t = 2)]
    c: u64,
    /// Exponent for the polynomial rate
    #[arg(long, default_value_t = 2)]
    exp: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum RateKind {
    Constant,
    Linear,
    Polynomial,
}

fn make_spec(kind: RateKind, c: u64, exp: u32) -> DilationSpec {
    match kind {
        RateKind::Constant => DilationSpec::constant(c),
        RateKind::Linear => DilationSpec::linear(c),
        RateKind::Polynomial => DilationSpec::polynomial(c, exp),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ZetaKindArg {
    Cardinality,
    Sum,
    Product,
    Binary,
    Parity,
}

impl From<ZetaKindArg> for ZetaKind {
    fn from(a: ZetaKindArg) -> ZetaKind {
        match a {
            ZetaKindArg::Cardinality => ZetaKind::Cardinality,
            ZetaKindArg::Sum => ZetaKind::Sum,
            ZetaKindArg::Product => ZetaKind::Product,
            ZetaKindArg::Binary => ZetaKind::Binary,
            ZetaKindArg::Parity => ZetaKind::Parity,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SubsetOpArg {
    Sum,
    Product,
    Parity,
}

impl From<SubsetOpArg> for SubsetOp {
    fn from(a: SubsetOpArg) -> SubsetOp {
        match a {
            SubsetOpArg::Sum => SubsetOp::Sum,
            SubsetOpArg::Product => SubsetOp::Product,
            SubsetOpArg::Parity => SubsetOp::Parity,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    SingleBit,
    VectorChain,
    BitwisePair,
    BitwiseSet,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKindArg {
    Catalan,
    Stirling2,
    Bell,
}

fn parse_nat(s: &str) -> Result<Nat, Error> {
    Nat::from_str(s).map_err(|_| Error::Parse(format!("not a natural number: '{s}'")))
}

fn parse_set(s: &str) -> Result<FinSet, Error> {
    if s.trim().is_empty() {
        return Ok(FinSet::empty());
    }
    let elems = s
        .split(',')
        .map(|tok| parse_nat(tok.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    FinSet::new(elems)
}

fn parse_range(s: &str) -> Result<(Nat, Nat), Error> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("range must be lo:hi, got '{s}'")))?;
    Ok((parse_nat(lo)?, parse_nat(hi)?))
}

fn instance_to_json(inst: &SbxorInstance) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert(
        "rows".into(),
        serde_json::Value::Array(
            inst.rows()
                .iter()
                .map(|r| serde_json::Value::String(r.to_string()))
                .collect(),
        ),
    );
    obj.insert(
        "target".into(),
        serde_json::Value::String(inst.target().to_string()),
    );
    if let Some(sel) = inst.hidden_selection() {
        obj.insert(
            "selection".into(),
            serde_json::Value::String(sel.to_string()),
        );
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(obj)).expect("serializable")
}

fn instance_from_json(text: &str) -> Result<SbxorInstance, Error> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = value["rows"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing rows array".into()))?
        .iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| Error::Parse("row must be a bit string".into()))
                .and_then(BitVector::parse)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let target = BitVector::parse(
        value["target"]
            .as_str()
            .ok_or_else(|| Error::Parse("missing target".into()))?,
    )?;
    let selection = match value.get("selection") {
        Some(v) => Some(BitVector::parse(
            v.as_str()
                .ok_or_else(|| Error::Parse("selection must be a bit string".into()))?,
        )?),
        None => None,
    };
    SbxorInstance::new(rows, target, selection)
}

fn read_instance(path: &PathBuf) -> Result<SbxorInstance, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    instance_from_json(&text)
}

fn run(cli: &Cli) -> Result<String, Error> {
    match &cli.command {
        Command::Pair { x, y } => {
            let p = Point {
                x: parse_nat(x)?,
                y: parse_nat(y)?,
            };
            Ok(format!("{}\n", pair(&p)))
        }
        Command::Unpair { z } => {
            let p = unpair(&parse_nat(z)?);
            Ok(format!("{} {}\n", p.x, p.y))
        }
        Command::Setindex { set } => {
            let s = parse_set(set)?;
            Ok(format!("{}\n{}\n", phi_car_index(&s)?, upsilon(&s)))
        }
        Command::Upsilon { set, inverse } => match (set, inverse) {
            (Some(set), None) => Ok(format!("{}\n", upsilon(&parse_set(set)?))),
            (None, Some(n)) => Ok(format!("{}\n", upsilon_inv(&parse_nat(n)?))),
            _ => Err(Error::MissingArgument("either --set or --inverse")),
        },
        Command::Endo { n } => Ok(format!("{}\n", endo(&parse_nat(n)?))),
        Command::Dilate { x, y, rate, invert } => {
            let spec = make_spec(rate.rate, rate.c, rate.exp);
            let p = Point {
                x: parse_nat(x)?,
                y: parse_nat(y)?,
            };
            if *invert {
                Ok(match undilate(&spec, &p) {
                    Some(q) => format!("{} {}\n", q.x, q.y),
                    None => "absent\n".to_string(),
                })
            } else {
                let q = dilate(&spec, &p)?;
                Ok(format!("{} {}\n", q.x, q.y))
            }
        }
        Command::Surface {
            x_max,
            y_max,
            step,
            rate,
            c,
            exp,
        } => {
            let (x_max, y_max, step) = (parse_nat(x_max)?, parse_nat(y_max)?, parse_nat(step)?);
            match rate {
                None => {
                    let s = efficiency_surface(&x_max, &y_max, &step)?;
                    Ok(surface_to_csv(&s))
                }
                Some(kind) => {
                    let spec = make_spec(*kind, *c, *exp);
                    let grid = dilation_surface(&spec, &x_max, &y_max, &step)?;
                    Ok(dilation_surface_to_csv(&grid))
                }
            }
        }
        Command::Zeta { kind, set, budget } => {
            let kind: ZetaKind = (*kind).into();
            let s = parse_set(set)?;
            Ok(format!(
                "{}\n{}\n{}\n",
                zeta_eval(kind, &s)?,
                theta_index(kind, &s, *budget)?,
                phi_zeta(kind, &s, *budget)?
            ))
        }
        Command::Powerset { kind, set } => {
            let values = powerset_dilation(&parse_set(set)?, (*kind).into())?;
            Ok(multiset_to_csv(&values))
        }
        Command::Scalefree { k, seed } => {
            let cb = gen_scale_free(*k, *seed);
            let entries: Vec<serde_json::Value> = cb
                .entries()
                .iter()
                .map(|e| serde_json::Value::String(e.to_string()))
                .collect();
            let mut obj = serde_json::Map::new();
            obj.insert("codebook".into(), serde_json::Value::Array(entries));
            let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(obj))
                .expect("serializable");
            text.push('\n');
            Ok(text)
        }
        Command::Census {
            k,
            seed,
            fixture,
            op,
            range,
            target,
            solve: solve_flag,
        } => {
            let cb: Codebook = match (fixture, k) {
                (Some(name), _) if name == "paper-ssex2" => fixture_codebook().0,
                (Some(name), _) => {
                    return Err(Error::Parse(format!("unknown fixture '{name}'")))
                }
                (None, Some(k)) => gen_scale_free(*k, *seed),
                (None, None) => return Err(Error::MissingArgument("--k or --fixture")),
            };
            let op: SubsetOp = (*op).into();
            if let Some(t) = target {
                let t = parse_nat(t)?;
                if *solve_flag {
                    let problem = SubsetProblem {
                        codebook: cb,
                        target: t,
                        op,
                    };
                    return Ok(match solve(&problem)? {
                        Some(witness) => {
                            debug_assert!(check_witness(&problem, &witness)?);
                            format!("{witness}\n")
                        }
                        None => "absent\n".to_string(),
                    });
                }
                let c = census(&cb, op)?;
                return Ok(format!("{}\n", c.count(&t)));
            }
            let c = census(&cb, op)?;
            match range {
                Some(r) => {
                    let (lo, hi) = parse_range(r)?;
                    Ok(c.to_csv_range(&lo, &hi))
                }
                None => Ok(c.to_csv()),
            }
        }
        Command::Sbxor { action } => run_sbxor(action),
        Command::Mmk {
            keys,
            message,
            cipher,
        } => {
            let keys = keys
                .split(',')
                .map(|k| BitVector::parse(k.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            match (message, cipher) {
                (Some(m), None) => {
                    Ok(format!("{}\n", mmk_encrypt(&keys, &BitVector::parse(m)?)?))
                }
                (None, Some(c)) => {
                    Ok(format!("{}\n", mmk_decrypt(&keys, &BitVector::parse(c)?)?))
                }
                _ => Err(Error::MissingArgument("either --message or --cipher")),
            }
        }
        Command::EntropyTable {
            mode,
            k,
            n,
            empirical,
            trials,
            seed,
        } => {
            let mode = match mode {
                ModeArg::SingleBit => InputMode::SingleBit,
                ModeArg::VectorChain => InputMode::VectorChain { k: *k },
                ModeArg::BitwisePair => InputMode::BitwisePair { k: *k },
                ModeArg::BitwiseSet => InputMode::BitwiseSet { k: *k, n: *n },
            };
            let mut out = String::from("op,input_bits,entropy,delta\n");
            if *empirical {
                for op in setnum::sbxor::entropy::ALL_LOGIC_OPS {
                    let (h, d) = logic_entropy_empirical(op, mode, *trials, *seed)?;
                    out.push_str(&format!(
                        "{},{},{:.6},{:.6}\n",
                        op.name(),
                        mode.input_bits()?,
                        h,
                        d
                    ));
                }
            } else {
                for row in entropy_table(mode)? {
                    out.push_str(&format!(
                        "{},{},{:.6},{:.6}\n",
                        row.op.name(),
                        row.input_bits,
                        row.output_entropy,
                        row.delta
                    ));
                }
            }
            Ok(out)
        }
        Command::Counts { kind, n, k } => {
            let kind = match kind {
                CountKindArg::Catalan => CountKind::Catalan,
                CountKindArg::Stirling2 => CountKind::Stirling2,
                CountKindArg::Bell => CountKind::Bell,
            };
            Ok(format!("{}\n", combinatorial_count(kind, *n, *k)?))
        }
    }
}

fn run_sbxor(action: &SbxorAction) -> Result<String, Error> {
    match action {
        SbxorAction::Gen { n, k, seed } => {
            if *n == 0 || *k == 0 || (*k < 64 && *n as u64 > 1 << *k) {
                return Err(Error::OutOfDomain(
                    "need n >= 1, k >= 1 and 2^k >= n distinct rows",
                ));
            }
            let inst = gen_random(*n, *k, *seed);
            Ok(format!("{}\n", instance_to_json(&inst)))
        }
        SbxorAction::Check { input, selection } => {
            let inst = read_instance(input)?;
            let sel = BitVector::parse(selection)?;
            Ok(format!("{}\n", check(&inst, &sel)?))
        }
        SbxorAction::Solve { input, brute } => {
            let inst = read_instance(input)?;
            let found = if *brute {
                solve_bruteforce(&inst)?
            } else {
                solve_gf2(&inst)?
            };
            Ok(match found {
                Some(sel) => format!("{sel}\n"),
                None => "absent\n".to_string(),
            })
        }
        SbxorAction::Sat { input, solve } => {
            let inst = read_instance(input)?;
            let formula = sat_encode(&inst)?;
            let cnf = tseitin(&formula);
            if *solve {
                Ok(match dpll(&cnf) {
                    Some(_) => "s SATISFIABLE\n".to_string(),
                    None => "s UNSATISFIABLE\n".to_string(),
                })
            } else {
                Ok(cnf.to_dimacs())
            }
        }
        SbxorAction::Absorb {
            input,
            message,
            seed,
        } => {
            let inst = read_instance(input)?;
            let re = absorb(&inst, &BitVector::parse(message)?, *seed)?;
            Ok(format!("{}\n", instance_to_json(&re)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
