use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hurwitz_core::chambers::classify;
use hurwitz_core::cuts::cuts_poset;
use hurwitz_core::engine::genus_for;
use hurwitz_core::gm::{compare_connections, gm_via_cones, GmContext};
use hurwitz_core::poly::{degree_parity_report, interpolate_with, InterpolationOptions};
use hurwitz_core::rational::fmt_ratio;
use hurwitz_core::wallcross::verify_wall;
use hurwitz_core::{
    enumerate_xgraphs, hurwitz, hurwitz_disconnected, oracle_connected, oracle_disconnected,
    EndSubset,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Exact double Hurwitz numbers and wall crossing")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest admissible degree d of a profile.
    #[arg(long, global = true, env = "HC_MAX_DEGREE", default_value_t = 40)]
    max_degree: i64,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate H_g(x), optionally cross-checked against the symmetric group.
    Hurwitz {
        #[arg(long)]
        genus: usize,
        /// Comma-separated nonzero integers summing to zero.
        #[arg(long, allow_hyphen_values = true)]
        profile: String,
        #[arg(long)]
        oracle: bool,
        /// Disconnected count instead of the connected one.
        #[arg(long)]
        disconnected: bool,
    },
    /// Interpolate the chamber polynomial of H_g on the chamber of a point.
    Polynomial {
        #[arg(long)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Wall-crossing polynomial across W_I and its comparison table.
    Wallcross {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        ends: usize,
        /// Comma-separated end labels of I.
        #[arg(long)]
        wall: String,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// Connection matrices and cut posets across W_I, as JSON.
    Gm {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        ends: usize,
        #[arg(long)]
        wall: String,
        /// Restrict to one graph of the enumeration.
        #[arg(long)]
        graph: Option<usize>,
    },
    /// List the x-graphs of type (g, n).
    EnumerateGraphs {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        ends: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a verification suite and report pass/fail.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        ends: usize,
        /// Defaults to every proper wall.
        #[arg(long)]
        wall: Option<String>,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Wallcross,
    Gm,
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("bad integer {t:?}")))
        .collect()
}

fn parse_wall(s: &str, n: usize) -> Result<EndSubset> {
    let wall = EndSubset::parse(s).map_err(anyhow::Error::msg)?;
    if !wall.is_proper(n) || wall.0 >> n != 0 {
        bail!("wall {s} is not a proper subset of 1..={n}");
    }
    Ok(wall)
}

fn check_degree(x: &[i64], cap: i64) -> Result<()> {
    let d: i64 = x.iter().filter(|&&v| v > 0).sum();
    if d > cap {
        bail!("degree {d} exceeds the cap {cap} (HC_MAX_DEGREE)");
    }
    Ok(())
}

fn proper_walls(n: usize) -> Vec<EndSubset> {
    (1u32..(1 << n) - 1).map(EndSubset).collect()
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn run_hurwitz(genus: usize, profile: &str, oracle: bool, disconnected: bool, cap: i64) -> Result<Report> {
    let x = parse_ints(profile)?;
    check_degree(&x, cap)?;
    let r = 2 * genus + x.len() - 2;
    if disconnected && genus_for(r, x.len()) != Some(genus) {
        bail!("genus {genus} is not compatible with {} ends", x.len());
    }
    let engine = if disconnected { hurwitz_disconnected(r, &x)? } else { hurwitz(genus, &x)? };
    let mut text = format!("engine: {}\n", fmt_ratio(&engine));
    let mut json = json!({ "genus": genus, "profile": x, "r": r, "engine": fmt_ratio(&engine) });
    let mut ok = true;
    if oracle {
        let o = if disconnected { oracle_disconnected(r, &x)? } else { oracle_connected(r, &x)? };
        ok = o == engine;
        let _ = writeln!(text, "oracle: {}", fmt_ratio(&o));
        text.push_str(if ok { "match\n" } else { "MISMATCH\n" });
        json["oracle"] = json!(fmt_ratio(&o));
        json["match"] = json!(ok);
    }
    Ok(Report { text, json, ok })
}

fn run_polynomial(genus: usize, at: &str, seed: u64, cap: i64) -> Result<Report> {
    let x = parse_ints(at)?;
    check_degree(&x, cap)?;
    let chamber = classify(&x)?;
    let opts = InterpolationOptions { seed, ..InterpolationOptions::default() };
    let p = interpolate_with(genus, &chamber, opts)?;
    let rep = degree_parity_report(&p);
    let value = p.poly.eval(&x);
    let mut text = format!("{}\n", p.poly.display_over_common_denominator());
    let _ = writeln!(text, "value at {x:?}: {}", fmt_ratio(&value));
    let _ = writeln!(
        text,
        "degree: {} (expected {}) {}",
        rep.degree.map_or("-".to_string(), |d| d.to_string()),
        rep.expected_degree,
        if rep.degree_ok { "ok" } else { "FAIL" }
    );
    let _ = writeln!(text, "parity: {}", if rep.parity_pure { "pure" } else { "MIXED" });
    if !rep.lower_bound_ok {
        let _ = writeln!(text, "warning: minimal degree below {}", rep.lower_bound);
    }
    let json = json!({
        "genus": genus,
        "point": x,
        "chamber_signs": chamber.signs,
        "polynomial": p.poly.display_over_common_denominator(),
        "terms": p.poly.serialize_terms(),
        "value": fmt_ratio(&value),
        "report": rep,
    });
    Ok(Report { text, json, ok: rep.degree_ok && rep.parity_pure })
}

fn run_wallcross(genus: usize, n: usize, wall: &str, points: usize, seed: u64) -> Result<Report> {
    let wall = parse_wall(wall, n)?;
    let rep = verify_wall(genus, n, wall, seed, points)?;
    let mut text = format!("WC = {}\n", rep.wc);
    let _ = writeln!(text, "light formula sign: {}", rep.light_sign);
    let _ = writeln!(text, "{:<24} {:>16} {:>16}  ok", "x", "P2-P1", "formula");
    for (label, rows) in [("light", &rep.light), ("cuts/c2", &rep.cut_route_c2), ("cuts/c1", &rep.cut_route_c1)] {
        for c in rows {
            let _ = writeln!(
                text,
                "{:<24} {:>16} {:>16}  {} ({label})",
                format!("{:?}", c.x),
                c.lhs,
                c.rhs,
                if c.pass { "yes" } else { "NO" }
            );
        }
    }
    text.push_str(if rep.passed { "pass\n" } else { "fail\n" });
    let ok = rep.passed;
    Ok(Report { text, json: serde_json::to_value(&rep)?, ok })
}

fn run_gm(genus: usize, n: usize, wall: &str, graph: Option<usize>) -> Result<Report> {
    let wall = parse_wall(wall, n)?;
    let graphs = enumerate_xgraphs(genus, n)?;
    let selected: Vec<usize> = match graph {
        Some(i) if i < graphs.len() => vec![i],
        Some(i) => bail!("graph index {i} out of range (0..{})", graphs.len()),
        None => (0..graphs.len()).collect(),
    };
    let mut out = Vec::new();
    let mut ok = true;
    for i in selected {
        let g = &graphs[i];
        let ctx = GmContext::new(g, wall)?;
        let cones = gm_via_cones(&ctx)?;
        let cmp = compare_connections(&ctx)?;
        ok &= cmp.passed();
        let cut_formula: Vec<Value> = cones
            .rows
            .iter()
            .map(|&a| {
                let adj: Vec<(u64, i64)> = ctx.gm_adjoint(a).into_iter().map(|(b, c)| (b.0, c)).collect();
                json!({ "chamber": a.0, "adjoint": adj })
            })
            .collect();
        let posets: Vec<Value> =
            ctx.bounded2().into_iter().map(|a| cuts_poset(g, a, wall).to_json()).collect();
        out.push(json!({
            "index": i,
            "graph": g.to_json(),
            "x1": ctx.x1,
            "x2": ctx.x2,
            "connection": cones,
            "cut_formula": cut_formula,
            "posets": posets,
            "comparison": cmp,
        }));
    }
    let json = json!({ "genus": genus, "ends": n, "wall": wall.labels(), "graphs": out });
    let text = serde_json::to_string_pretty(&json)? + "\n";
    Ok(Report { text, json, ok })
}

fn run_enumerate(genus: usize, n: usize, format: Format) -> Result<Report> {
    let graphs = enumerate_xgraphs(genus, n)?;
    let records: Vec<Value> = graphs.iter().map(|g| g.to_json()).collect();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&records)? + "\n",
        Format::Dot => graphs.iter().enumerate().map(|(i, g)| g.to_dot(&format!("g{i}"), None)).collect(),
    };
    Ok(Report { text, json: Value::Array(records), ok: true })
}

fn run_verify(suite: Suite, genus: usize, n: usize, wall: Option<&str>, points: usize, seed: u64) -> Result<Report> {
    let walls = match wall {
        Some(w) => vec![parse_wall(w, n)?],
        None => proper_walls(n),
    };
    let graphs = match suite {
        Suite::Gm => enumerate_xgraphs(genus, n)?,
        Suite::Wallcross => Vec::new(),
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut ok = true;
    for w in walls {
        let passed = match suite {
            Suite::Wallcross => verify_wall(genus, n, w, seed, points)?.passed,
            Suite::Gm => {
                let mut all = true;
                for g in &graphs {
                    all &= compare_connections(&GmContext::new(g, w)?)?.passed();
                }
                all
            }
        };
        ok &= passed;
        let _ = writeln!(text, "wall {w}: {}", if passed { "pass" } else { "fail" });
        results.push(json!({ "wall": w.labels(), "passed": passed }));
    }
    text.push_str(if ok { "pass\n" } else { "fail\n" });
    Ok(Report { text, json: json!({ "walls": results, "passed": ok }), ok })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Hurwitz { genus, profile, oracle, disconnected } => {
            run_hurwitz(*genus, profile, *oracle, *disconnected, cli.max_degree)
        }
        Command::Polynomial { genus, at } => run_polynomial(*genus, at, cli.seed, cli.max_degree),
        Command::Wallcross { genus, ends, wall, points } => run_wallcross(*genus, *ends, wall, *points, cli.seed),
        Command::Gm { genus, ends, wall, graph } => run_gm(*genus, *ends, wall, *graph),
        Command::EnumerateGraphs { genus, ends, format } => run_enumerate(*genus, *ends, *format),
        Command::Verify { suite, genus, ends, wall, points } => {
            run_verify(*suite, *genus, *ends, wall.as_deref(), *points, cli.seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let body = if cli.json && !matches!(cli.command, Command::EnumerateGraphs { format: Format::Dot, .. }) {
                serde_json::to_string_pretty(&report.json).expect("report serialises") + "\n"
            } else {
                report.text
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, body) {
                        eprintln!("{}", json!({ "error": format!("cannot write {}: {e}", path.display()) }));
                        return ExitCode::from(2);
                    }
                }
                None => print!("{body}"),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::from(2)
        }
    }
}
