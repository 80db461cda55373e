//! heckeblocks: Rouquier block tables of the cyclotomic Hecke algebras of
//! G4, G6 and G7 from the shipped group packs. The subcommands mirror the
//! GAP functions the tables were published with.

mod certify;
mod params;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hecke_core::blockengine::{
    all_blocks, display_hyperplane, essential_hyperplanes, rouquier_blocks, Partition,
    DEFAULT_BUDGET,
};
use hecke_core::goldens;
use hecke_core::grouprepo::{load_group, GroupData, GroupRepoError};
use hecke_core::numfield::CycNum;
use hecke_core::schur::value_at_one;

use crate::params::ParamError;

#[derive(Parser)]
#[command(
    name = "heckeblocks",
    version,
    about = "Rouquier blocks of cyclotomic Hecke algebras (G4, G6, G7)"
)]
struct Cli {
    /// Directory with the group packs; beats HECKEBLOCKS_DATA and the
    /// compiled-in default
    #[arg(long, global = true, value_name = "DIR")]
    data_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Search box size for specialization vectors
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Also verify the result against the transcribed printed tables
    #[arg(long, global = true)]
    certified: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Blocks attached to no and to each essential hyperplane
    AllBlocks { group: String },
    /// Blocks of one cyclotomic specialization
    #[command(group(clap::ArgGroup::new("spec").required(true).args(["params", "n"])))]
    RouquierBlocks {
        group: String,
        /// Per-slot parameters, e.g. "1,E3*x,E3^2*x^2"
        #[arg(long, value_name = "LIST")]
        params: Option<String>,
        /// Raw exponent vector, e.g. "0,1,2"
        #[arg(long, value_name = "INTS")]
        n: Option<String>,
    },
    /// Essential hyperplanes, all of them for p = 0
    EssentialHyperplanes { group: String, p: u64 },
    /// Run every pack invariant and report per check
    Validate { group: String },
    /// Print the factored Schur elements
    ShowSchur {
        group: String,
        #[arg(long, value_name = "LABEL")]
        char: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            if msg.starts_with("Error, ") {
                eprintln!("{msg}");
            } else {
                eprintln!("Error, {msg}");
            }
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<(), String> {
    match &cli.cmd {
        Cmd::AllBlocks { group } => {
            let g = load(cli, group)?;
            let table = all_blocks(&g, cli.budget as usize).map_err(|e| e.to_string())?;
            if cli.certified {
                certify::check_all_blocks(&g, &table)?;
            }
            match cli.format {
                Format::Text => {
                    for rec in &table {
                        let display = match &rec.hyperplane {
                            None => "No essential hyperplane".to_string(),
                            Some(h) => display_hyperplane(h, &g.slot_names()),
                        };
                        println!("{display}");
                        println!("{}", label_line(&g, &rec.partition));
                    }
                }
                Format::Json => {
                    let records: Vec<_> = table
                        .iter()
                        .map(|rec| {
                            json!({
                                "cond": rec.hyperplane.as_ref().map(|h| h.coeffs.clone()),
                                "block": one_based(&rec.partition),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(records));
                }
            }
            Ok(())
        }
        Cmd::RouquierBlocks { group, params, n } => {
            let g = load(cli, group)?;
            let n = match (params, n) {
                (Some(p), None) => params::parse_params(&g, p).map_err(param_msg)?,
                (None, Some(raw)) => params::parse_n(&g, raw).map_err(param_msg)?,
                _ => unreachable!("clap enforces exactly one of --params and --n"),
            };
            let part = rouquier_blocks(&g, &n, cli.budget as usize).map_err(|e| e.to_string())?;
            if cli.certified {
                certify::check_rouquier(&g, &n, &part)?;
            }
            match cli.format {
                Format::Text => {
                    println!("{}", gap_index_line(&part));
                    println!("{}", label_line(&g, &part));
                }
                Format::Json => {
                    println!(
                        "{}",
                        json!({ "block": one_based(&part), "labels": label_parts(&g, &part) })
                    );
                }
            }
            Ok(())
        }
        Cmd::EssentialHyperplanes { group, p } => {
            let g = load(cli, group)?;
            let hs = essential_hyperplanes(&g, *p).map_err(|e| e.to_string())?;
            if cli.certified {
                certify::check_essential(&g, *p, &hs)?;
            }
            match cli.format {
                Format::Text => {
                    for h in &hs {
                        println!("{}", display_hyperplane(h, &g.slot_names()));
                    }
                }
                Format::Json => {
                    let v: Vec<_> = hs.iter().map(|h| h.coeffs.clone()).collect();
                    println!("{}", json!(v));
                }
            }
            Ok(())
        }
        Cmd::Validate { group } => cmd_validate(cli, group),
        Cmd::ShowSchur { group, char } => cmd_show_schur(cli, group, char.as_deref()),
    }
}

fn param_msg(e: ParamError) -> String {
    e.to_string()
}

// --------------------------------------------------------------------------
// pack loading

fn data_dir(cli: &Cli) -> PathBuf {
    if let Some(d) = &cli.data_dir {
        return d.clone();
    }
    if let Some(d) = std::env::var_os("HECKEBLOCKS_DATA") {
        return PathBuf::from(d);
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn load(cli: &Cli, group: &str) -> Result<GroupData, String> {
    let name = group.to_ascii_lowercase();
    let path = data_dir(cli).join(format!("{name}.json"));
    let bytes = fs::read(&path)
        .map_err(|_| format!("unknown group {group} (no pack at {})", path.display()))?;
    load_group(&bytes).map_err(|e| match e {
        GroupRepoError::Validation(v) => {
            let mut msg = format!("pack {name} failed validation:");
            for line in v {
                msg.push_str("\n  ");
                msg.push_str(&line);
            }
            msg
        }
        other => other.to_string(),
    })
}

// --------------------------------------------------------------------------
// rendering

fn label_parts(g: &GroupData, p: &Partition) -> Vec<Vec<String>> {
    p.parts()
        .iter()
        .map(|part| part.iter().map(|&i| g.characters[i].label.clone()).collect())
        .collect()
}

// [["phi{1,0}"],["phi{1,4}","phi{2,3}","phi{3,2}"]] as printed
fn label_line(g: &GroupData, p: &Partition) -> String {
    serde_json::to_string(&label_parts(g, p)).expect("labels are valid json")
}

fn one_based(p: &Partition) -> Vec<Vec<usize>> {
    p.parts().iter().map(|part| part.iter().map(|i| i + 1).collect()).collect()
}

// [ [ 1 ], [ 2, 5, 7 ], [ 3 ] ] as printed
fn gap_index_line(p: &Partition) -> String {
    let parts: Vec<String> = one_based(p)
        .iter()
        .map(|part| {
            let inner: Vec<String> = part.iter().map(|i| i.to_string()).collect();
            format!("[ {} ]", inner.join(", "))
        })
        .collect();
    format!("[ {} ]", parts.join(", "))
}

// --------------------------------------------------------------------------
// validate

struct Check {
    name: &'static str,
    status: &'static str,
    details: Vec<String>,
}

fn cmd_validate(cli: &Cli, group: &str) -> Result<(), String> {
    let name = group.to_ascii_lowercase();
    let path = data_dir(cli).join(format!("{name}.json"));
    let bytes = fs::read(&path)
        .map_err(|_| format!("unknown group {group} (no pack at {})", path.display()))?;

    let categories = [
        "pack shape",
        "character table orthogonality",
        "central characters integral",
        "schur rows in essential form",
        "value at 1 equals |W|/degree",
        "clifford link",
    ];
    let bucket = |v: &str| -> usize {
        if v.contains("orthogonality") {
            1
        } else if v.contains("central character") {
            2
        } else if v.contains("value at 1") {
            4
        } else if v.starts_with("schur row") {
            3
        } else if v.contains("clifford") || v.contains("induction") {
            5
        } else {
            0
        }
    };

    let mut checks: Vec<Check> =
        categories.iter().map(|n| Check { name: n, status: "ok", details: Vec::new() }).collect();
    let mut advisories: Vec<String> = Vec::new();
    let mut failed = false;

    match load_group(&bytes) {
        Ok(g) => {
            // the loader enforced every per-row identity; list the values
            for (i, c) in g.characters.iter().enumerate() {
                let v = value_at_one(&g.schur_table[i]);
                checks[4].details.push(format!("{}: {}", c.label, v));
            }
            checks[5].status = if g.clifford.is_some() { "ok" } else { "absent" };
            advisories = g.advisories.clone();

            // trace identity at the group algebra point
            let mut sum = CycNum::zero();
            for (i, c) in g.characters.iter().enumerate() {
                let term = CycNum::from_int(c.degree as i64)
                    .try_div(&value_at_one(&g.schur_table[i]))
                    .map_err(|e| e.to_string())?;
                sum = sum.try_add(&term).map_err(|e| e.to_string())?;
            }
            let trace_ok = sum == CycNum::one();
            checks.push(Check {
                name: "trace identity sum chi(1)/s_chi(1) = 1",
                status: if trace_ok { "ok" } else { "FAIL" },
                details: Vec::new(),
            });
            failed |= !trace_ok;

            if cli.certified && name == "g4" {
                let want = goldens::parse_names(goldens::G4_CHARNAMES);
                let got: Vec<String> = g.characters.iter().map(|c| c.label.clone()).collect();
                let ok = want == got;
                checks.push(Check {
                    name: "printed character order",
                    status: if ok { "ok" } else { "FAIL" },
                    details: Vec::new(),
                });
                failed |= !ok;
            }
        }
        Err(GroupRepoError::Validation(violations)) => {
            failed = true;
            let mut shape_failed = false;
            for v in violations {
                let b = bucket(&v);
                shape_failed |= b == 0;
                checks[b].status = "FAIL";
                checks[b].details.push(v);
            }
            // the loader cannot reach the table checks when the shape is off
            if shape_failed {
                for i in [1, 2] {
                    if checks[i].status == "ok" {
                        checks[i].status = "skipped";
                    }
                }
            }
        }
        Err(e) => return Err(e.to_string()),
    }

    match cli.format {
        Format::Text => {
            for c in &checks {
                println!("{}: {}", c.name, c.status);
                for d in &c.details {
                    println!("  {d}");
                }
            }
            if advisories.is_empty() {
                println!("advisories: none");
            } else {
                println!("advisories:");
                for a in &advisories {
                    println!("  {a}");
                }
            }
        }
        Format::Json => {
            let arr: Vec<_> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "status": c.status, "details": c.details }))
                .collect();
            println!("{}", json!({ "checks": arr, "advisories": advisories }));
        }
    }
    if failed {
        Err(format!("pack {name} failed validation"))
    } else {
        Ok(())
    }
}

// --------------------------------------------------------------------------
// show-schur

fn cmd_show_schur(cli: &Cli, group: &str, label: Option<&str>) -> Result<(), String> {
    let g = load(cli, group)?;
    let picks: Vec<usize> = match label {
        Some(l) => {
            vec![g.char_index(l).ok_or_else(|| format!("unknown character {l} in {}", g.name))?]
        }
        None => (0..g.characters.len()).collect(),
    };
    let names = g.slot_names();
    match cli.format {
        Format::Text => {
            for &i in &picks {
                let s = &g.schur_table[i];
                println!("{}: xi = {}, N = {}", g.characters[i].label, s.xi, monomial(&s.n0, &names));
                for f in &s.factors {
                    let psi = format!("Psi({},{})", f.psi.root_order, f.psi.root_exp);
                    let e = if f.mult == 1 { String::new() } else { format!("^{}", f.mult) };
                    println!("  {psi}({}){e}", monomial(&f.m, &names));
                }
            }
        }
        Format::Json => {
            let rows: Vec<_> = picks
                .iter()
                .map(|&i| {
                    let s = &g.schur_table[i];
                    let factors: Vec<_> = s
                        .factors
                        .iter()
                        .map(|f| {
                            json!({
                                "d": f.psi.root_order,
                                "k": f.psi.root_exp,
                                "M": f.m,
                                "mult": f.mult,
                            })
                        })
                        .collect();
                    json!({
                        "char": g.characters[i].label,
                        "xi": s.xi,
                        "N": s.n0,
                        "factors": factors,
                    })
                })
                .collect();
            println!("{}", serde_json::Value::Array(rows));
        }
    }
    Ok(())
}

/// "c_0/c_1", "c_0^2/(c_1*c_2)", "1" for the zero vector.
fn monomial(m: &[i64], names: &[String]) -> String {
    let side = |pos: bool| -> Vec<String> {
        m.iter()
            .zip(names)
            .filter(|(&e, _)| if pos { e > 0 } else { e < 0 })
            .map(|(&e, n)| if e.abs() == 1 { n.clone() } else { format!("{n}^{}", e.abs()) })
            .collect()
    };
    let num = side(true);
    let den = side(false);
    let num_s = if num.is_empty() { "1".to_string() } else { num.join("*") };
    match den.len() {
        0 => num_s,
        1 => format!("{num_s}/{}", den[0]),
        _ => format!("{num_s}/({})", den.join("*")),
    }
}
