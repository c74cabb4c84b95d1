//! Batch verification front-end.
//!
//! Every subcommand runs one family of identity checks and emits one JSON
//! object per check, newline-delimited, to stdout or `--out`. Exit status is
//! 0 when every executed check passes, 1 when any check fails, and 2 on a
//! configuration error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twistcheck_core::braid::{words_up_to, BraidWord};
use twistcheck_core::coxeter::{CoxElement, CoxeterSystem};
use twistcheck_core::finfield::closed_form::{closed_form_check, ClosedFormCase};
use twistcheck_core::finfield::counts::{
    bruhat_constancy_check, cor_check, count_u_beta, count_ug, count_vg, count_x_beta, count_xg,
    hecke_count_check, kawanaka_check, prop44_check, steinberg_check, CountSign,
};
use twistcheck_core::finfield::flag::enumerate_flags;
use twistcheck_core::finfield::group::weyl_lift;
use twistcheck_core::finfield::{GroupFamily, GroupSpec};
use twistcheck_core::hecke::twist_check;
use twistcheck_core::homfly::kalman_check;

#[derive(Parser)]
#[command(
    name = "twistcheck",
    about = "Exact verification of braid-trace and point-count identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write newline-delimited JSON reports to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    B,
    I2,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Gl,
    Sl,
    Sp4,
}

#[derive(Args)]
struct SystemArgs {
    /// Coxeter family.
    #[arg(long, value_enum, default_value = "a")]
    family: FamilyArg,
    /// Rank (for families A and B).
    #[arg(long)]
    rank: Option<usize>,
    /// Dihedral order m (for family I2).
    #[arg(long)]
    m: Option<u32>,
}

impl SystemArgs {
    fn system(&self) -> Result<CoxeterSystem, String> {
        match self.family {
            FamilyArg::A => {
                let rank = self.rank.ok_or("--rank is required for family A")?;
                if rank < 1 {
                    return Err("family A needs rank >= 1".into());
                }
                Ok(CoxeterSystem::a(rank))
            }
            FamilyArg::B => {
                let rank = self.rank.ok_or("--rank is required for family B")?;
                if rank < 2 {
                    return Err("family B needs rank >= 2".into());
                }
                Ok(CoxeterSystem::b(rank))
            }
            FamilyArg::I2 => {
                let m = self.m.ok_or("--m is required for family I2")?;
                if m < 2 {
                    return Err("family I2 needs m >= 2".into());
                }
                Ok(CoxeterSystem::i2(m))
            }
        }
    }
}

#[derive(Args)]
struct GroupArgs {
    /// Matrix group.
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Matrix size (required for gl/sl; forced to 4 for sp4).
    #[arg(long)]
    n: Option<usize>,
    /// Field characteristic (prime).
    #[arg(long)]
    p: u64,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, String> {
        let family = match self.group {
            GroupArg::Gl => GroupFamily::Gl,
            GroupArg::Sl => GroupFamily::Sl,
            GroupArg::Sp4 => GroupFamily::Sp4,
        };
        let n = match family {
            GroupFamily::Sp4 => 4,
            _ => self.n.ok_or("--n is required for gl/sl")?,
        };
        GroupSpec::new(family, n, self.p).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Trace twist identity: tau_minus(beta) = tau_plus(beta pi).
    Twist {
        #[command(flatten)]
        system: SystemArgs,
        /// One braid word, e.g. "1,2,1" or "1 2 1".
        #[arg(long)]
        braid: Option<String>,
        /// Sweep every positive word of length <= this bound.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Extreme HOMFLYPT coefficient identity for braid closures (type A).
    Kalman {
        /// Strand count n (braids over A(n-1)).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        braid: Option<String>,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Coset point-count identity |U_g| = |V_g| for Weyl lifts.
    Kawanaka {
        #[command(flatten)]
        group: GroupArgs,
        /// Reduced word of w, e.g. "1 2 1".
        #[arg(long)]
        w: Option<String>,
        /// Run every Weyl group element.
        #[arg(long)]
        all_w: bool,
    },
    /// Raw point counts and the Steinberg scan.
    Count {
        #[command(flatten)]
        group: GroupArgs,
        /// One of: ug, vg, xg, u-beta, x-beta, flags, steinberg.
        #[arg(long)]
        what: String,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        braid: Option<String>,
    },
    /// Configuration count identity |U(beta)| = |X(beta pi)|.
    Cor {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        braid: Option<String>,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Trace point-count formulas for |U(beta)| and |X(beta)|.
    HeckeCount {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        braid: Option<String>,
        #[arg(long)]
        max_len: Option<usize>,
        /// Restrict to one side: plus or minus (default: both).
        #[arg(long)]
        sign: Option<String>,
    },
    /// Quotient identities |U_g||G| = |U(sigma_w)||H_g| and the X analogue.
    Prop44 {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        all_w: bool,
    },
    /// Closed-form retraction displays against the matrix product.
    PhiCheck {
        /// One of: sl2-w0, sl3-ts, sl3-st, sl3-w0, sp4-gen (default: all).
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value_t = 101)]
        p: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Coset counts are constant along a Bruhat cell.
    Constancy {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        all_w: bool,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_word(input: &str) -> Result<Vec<usize>, String> {
    input
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|part| !part.is_empty())
        .map(|part| {
            part.parse::<usize>()
                .map_err(|_| format!("bad generator index `{part}`"))
        })
        .collect()
}

fn parse_braid(system: CoxeterSystem, input: &str) -> Result<BraidWord, String> {
    let letters = parse_word(input)?;
    for &s in &letters {
        if !system.is_generator(s) {
            return Err(format!(
                "letter {s} out of range for rank {}",
                system.rank()
            ));
        }
    }
    Ok(BraidWord::new(system, letters))
}

fn parse_element(system: CoxeterSystem, input: &str) -> Result<CoxElement, String> {
    Ok(parse_braid(system, input)?.coxeter_image())
}

/// Which words to run: one given braid, or a full sweep.
fn braid_selection(
    system: CoxeterSystem,
    braid: &Option<String>,
    max_len: &Option<usize>,
) -> Result<Vec<BraidWord>, String> {
    match (braid, max_len) {
        (Some(word), None) => Ok(vec![parse_braid(system, word)?]),
        (None, Some(len)) => Ok(words_up_to(system, *len)),
        (None, None) => Err("provide --braid or --max-len".into()),
        (Some(_), Some(_)) => Err("--braid and --max-len are mutually exclusive".into()),
    }
}

fn element_selection(
    system: CoxeterSystem,
    w: &Option<String>,
    all_w: bool,
) -> Result<Vec<CoxElement>, String> {
    match (w, all_w) {
        (Some(word), false) => Ok(vec![parse_element(system, word)?]),
        (None, true) => system.enumerate().map_err(|e| e.to_string()),
        (None, false) => Err("provide --w or --all-w".into()),
        (Some(_), true) => Err("--w and --all-w are mutually exclusive".into()),
    }
}

fn run(command: &Command) -> Result<(Vec<serde_json::Value>, bool), String> {
    let mut reports = Vec::new();
    let mut all_pass = true;
    match command {
        Command::Twist {
            system,
            braid,
            max_len,
        } => {
            let sys = system.system()?;
            for beta in braid_selection(sys, braid, max_len)? {
                let report = twist_check(&beta);
                all_pass &= report.pass;
                reports.push(report.to_json());
            }
        }
        Command::Kalman { n, braid, max_len } => {
            if *n < 2 {
                return Err("--n must be at least 2".into());
            }
            let sys = CoxeterSystem::a(n - 1);
            for beta in braid_selection(sys, braid, max_len)? {
                let report = kalman_check(&beta);
                all_pass &= report.pass;
                reports.push(report.to_json());
            }
        }
        Command::Kawanaka { group, w, all_w } => {
            let spec = group.spec()?;
            for element in element_selection(spec.weyl_system(), w, *all_w)? {
                let report = kawanaka_check(&spec, &element).map_err(|e| e.to_string())?;
                all_pass &= report.pass;
                reports.push(report.to_json());
            }
        }
        Command::Count {
            group,
            what,
            w,
            braid,
        } => {
            let spec = group.spec()?;
            let value = count_value(&spec, what, w, braid)?;
            reports.push(value.0);
            all_pass &= value.1;
        }
        Command::Cor {
            group,
            braid,
            max_len,
        } => {
            let spec = group.spec()?;
            for beta in braid_selection(spec.weyl_system(), braid, max_len)? {
                let report = cor_check(&beta, &spec).map_err(|e| e.to_string())?;
                all_pass &= report.pass;
                reports.push(report.to_json());
            }
        }
        Command::HeckeCount {
            group,
            braid,
            max_len,
            sign,
        } => {
            let spec = group.spec()?;
            let signs = match sign.as_deref() {
                None => vec![CountSign::Minus, CountSign::Plus],
                Some("minus") => vec![CountSign::Minus],
                Some("plus") => vec![CountSign::Plus],
                Some(other) => return Err(format!("bad --sign `{other}`")),
            };
            for beta in braid_selection(spec.weyl_system(), braid, max_len)? {
                for &s in &signs {
                    let report = hecke_count_check(&beta, &spec, s).map_err(|e| e.to_string())?;
                    all_pass &= report.pass;
                    reports.push(report.to_json());
                }
            }
        }
        Command::Prop44 { group, w, all_w } => {
            let spec = group.spec()?;
            for element in element_selection(spec.weyl_system(), w, *all_w)? {
                for report in prop44_check(&element, &spec).map_err(|e| e.to_string())? {
                    all_pass &= report.pass;
                    reports.push(report.to_json());
                }
            }
        }
        Command::PhiCheck {
            case,
            p,
            samples,
            seed,
        } => {
            let cases: Vec<ClosedFormCase> = match case {
                Some(name) => vec![name.parse()?],
                None => ClosedFormCase::all().to_vec(),
            };
            for c in cases {
                let report =
                    closed_form_check(c, *p, *samples, *seed).map_err(|e| e.to_string())?;
                all_pass &= report.pass;
                reports.push(report.to_json());
            }
        }
        Command::Constancy {
            group,
            w,
            all_w,
            samples,
            seed,
        } => {
            let spec = group.spec()?;
            for element in element_selection(spec.weyl_system(), w, *all_w)? {
                let report = bruhat_constancy_check(&element, &spec, *samples, *seed)
                    .map_err(|e| e.to_string())?;
                all_pass &= report.pass;
                reports.push(report.to_json());
            }
        }
    }
    Ok((reports, all_pass))
}

fn count_value(
    spec: &GroupSpec,
    what: &str,
    w: &Option<String>,
    braid: &Option<String>,
) -> Result<(serde_json::Value, bool), String> {
    let weyl = spec.weyl_system();
    let need_w = || -> Result<CoxElement, String> {
        parse_element(weyl, w.as_deref().ok_or("--w is required for this count")?)
    };
    let need_braid = || -> Result<BraidWord, String> {
        parse_braid(
            weyl,
            braid
                .as_deref()
                .ok_or("--braid is required for this count")?,
        )
    };
    let raw = |name: &str, params: serde_json::Value, value: u128| {
        let value_json = match u64::try_from(value) {
            Ok(v) => serde_json::Value::from(v),
            Err(_) => serde_json::Value::from(value.to_string()),
        };
        (
            serde_json::json!({ "check": name, "params": params, "value": value_json }),
            true,
        )
    };
    let base = serde_json::json!({ "group": spec.label(), "p": spec.p() });
    match what {
        "ug" | "vg" | "xg" => {
            let element = need_w()?;
            let g = weyl_lift(&element, spec);
            let value = match what {
                "ug" => count_ug(&g, spec),
                "vg" => count_vg(&g, spec),
                _ => count_xg(&g, spec),
            }
            .map_err(|e| e.to_string())?;
            let mut params = base;
            params["w"] = serde_json::json!(element.reduced_word());
            Ok(raw(&format!("count-{what}"), params, value))
        }
        "u-beta" | "x-beta" => {
            let beta = need_braid()?;
            let value = match what {
                "u-beta" => count_u_beta(&beta, spec),
                _ => count_x_beta(&beta, spec),
            }
            .map_err(|e| e.to_string())?;
            let mut params = base;
            params["beta"] = serde_json::json!(beta.letters());
            Ok(raw(&format!("count-{what}"), params, value))
        }
        "flags" => {
            let flags = enumerate_flags(spec.n(), spec.p()).map_err(|e| e.to_string())?;
            Ok(raw("count-flags", base, flags.len() as u128))
        }
        "steinberg" => {
            let report = steinberg_check(spec).map_err(|e| e.to_string())?;
            Ok((report.to_json(), report.pass))
        }
        other => Err(format!("unknown count `{other}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((reports, all_pass)) => {
            let emit = |sink: &mut dyn Write| -> std::io::Result<()> {
                for report in &reports {
                    writeln!(sink, "{report}")?;
                }
                Ok(())
            };
            let result = match &cli.out {
                Some(path) => {
                    let file = match File::create(path) {
                        Ok(f) => f,
                        Err(e) => {
                            eprintln!("error: cannot open {}: {e}", path.display());
                            return ExitCode::from(2);
                        }
                    };
                    let mut writer = BufWriter::new(file);
                    emit(&mut writer).and_then(|_| writer.flush())
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    emit(&mut lock)
                }
            };
            if let Err(e) = result {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
