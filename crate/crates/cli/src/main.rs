//! `ckfield`: verify constant-length Killing fields on homogeneous spaces.
//!
//! Exit codes: 0 success or CONSTANT, 1 NONCONSTANT (or a failed containment
//! check), 2 usage and input errors, 3 INCONCLUSIVE.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ckfield::ckengine::{
    classify, prop32_oracle, save_report, verify, Config, Summary, Verdict, VerdictReport, DEFAULT_SAMPLES,
    DEFAULT_SEED, DEFAULT_STEPS, DEFAULT_TOL, MAX_DENOMINATOR,
};
use ckfield::exact::{parse_rational, QVec, Quad};
use ckfield::homcat::{
    build_pair, default_catalog, load_catalog, Candidate, CartanSplit, Catalog, HomogeneousPair, PairSpec,
};
use ckfield::rootsys::{build_root_system, RootSystem, RootType};

#[derive(Parser)]
#[command(name = "ckfield", version, about = "Constant-length Killing vector fields on compact homogeneous spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the roots of a root system.
    Roots {
        /// Root type such as `B`, `E8` or `G2`.
        #[arg(long = "type")]
        ty: String,
        /// Required for the classical types.
        #[arg(long)]
        rank: Option<usize>,
        /// Print JSON instead of a listing.
        #[arg(long)]
        json: bool,
    },
    /// Verify one Cartan vector on one pair.
    Verify {
        /// Catalog name or short name such as `SO8/SO7`.
        #[arg(long)]
        pair: String,
        /// Comma-separated rationals, e.g. `3,-1,-1,-1` or `1/2,0,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Verify every candidate of a catalog.
    Classify {
        #[command(flatten)]
        run: RunFlags,
    },
    /// Enumerate grid vectors passing the exact Weyl test.
    Prop32 {
        /// Classical root type A, B, C or D.
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        rank: usize,
        /// Spanning vectors of t∩h, separated by `;`, e.g. `0,1,0;0,0,1`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "pair")]
        h: Option<String>,
        /// Take the splitting from a pair instead.
        #[arg(long)]
        pair: Option<String>,
        /// Largest denominator of grid coordinates.
        #[arg(long, default_value_t = MAX_DENOMINATOR as usize)]
        bound: usize,
        /// Catalog used to resolve --pair.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Print JSON instead of a summary.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunFlags {
    /// Random group elements per candidate.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Exponential factors per random element.
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
    /// Relative tolerance for tiers 2 and 3.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Catalog file (defaults to the built-in catalog).
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Also write line-delimited JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print line-delimited JSON instead of tables.
    #[arg(long)]
    json: bool,
}

impl RunFlags {
    fn config(&self) -> Result<Config> {
        let cfg =
            Config { samples: self.samples, steps: self.steps, tol: self.tol, seed: self.seed, ..Config::default() };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Input errors map to exit code 2; everything else is decided by verdicts.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Roots { ty, rank, json } => cmd_roots(&ty, rank, json),
        Command::Verify { pair, v, run } => cmd_verify(&pair, &v, &run),
        Command::Classify { run } => cmd_classify(&run),
        Command::Prop32 { ty, rank, h, pair, bound, catalog, json } => {
            cmd_prop32(&ty, rank, h.as_deref(), pair.as_deref(), bound, catalog, json)
        }
    }
}

fn parse_type(s: &str) -> Result<RootType> {
    RootType::parse(s).ok_or_else(|| anyhow!("unknown root system type {s:?}"))
}

fn root_system(ty: &str, rank: Option<usize>) -> Result<RootSystem> {
    let ty = parse_type(ty)?;
    let rank = match (rank, ty.fixed_rank()) {
        (Some(r), _) => r,
        (None, Some(r)) => r,
        (None, None) => bail!("--rank is required for type {ty}"),
    };
    Ok(build_root_system(ty, rank)?)
}

fn exact(q: &Quad) -> String {
    q.as_rational().map(|r| r.to_string()).unwrap_or_else(|| q.to_string())
}

fn vec_strings(v: &QVec) -> Vec<String> {
    v.0.iter().map(exact).collect()
}

fn label(rs: &RootSystem) -> String {
    let ty = rs.type_label();
    if ty.fixed_rank().is_some() {
        ty.to_string()
    } else {
        format!("{ty}{}", rs.rank())
    }
}

#[derive(Serialize)]
struct RootsRecord {
    #[serde(rename = "type")]
    ty: String,
    rank: usize,
    count: usize,
    roots: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Prop32Record {
    #[serde(rename = "type")]
    ty: String,
    rank: usize,
    bound: usize,
    h: Vec<Vec<String>>,
    examined: usize,
    survivors: Vec<Vec<String>>,
    reference: Vec<Vec<String>>,
    outside: Vec<Vec<String>>,
    contained: bool,
}

fn cmd_roots(ty: &str, rank: Option<usize>, json: bool) -> Result<u8> {
    let rs = root_system(ty, rank)?;
    let mut out = std::io::stdout().lock();
    if json {
        let roots: Vec<Vec<String>> = rs.roots().iter().map(vec_strings).collect();
        let rec = RootsRecord { ty: rs.type_label().to_string(), rank: rs.rank(), count: roots.len(), roots };
        writeln!(out, "{}", serde_json::to_string(&rec)?)?;
    } else {
        writeln!(out, "{}: {} roots ({})", label(&rs), rs.roots().len(), rs.scale_note())?;
        for r in rs.roots() {
            writeln!(out, "  ({})", vec_strings(r).join(", "))?;
        }
    }
    Ok(0)
}

fn catalog(path: Option<&PathBuf>) -> Result<Catalog> {
    match path {
        Some(p) => load_catalog(p).with_context(|| format!("loading {}", p.display())),
        None => Ok(default_catalog()),
    }
}

fn find_pair(name: &str, cat: &Catalog) -> Result<HomogeneousPair> {
    if let Some(entry) = cat.find(name) {
        return Ok(entry.build()?);
    }
    let spec = PairSpec::parse_short(name).ok_or_else(|| anyhow!("unknown pair {name:?}"))?;
    Ok(build_pair(&spec)?)
}

fn parse_vector(s: &str) -> Result<Vec<ckfield::exact::Rational>> {
    s.split(',')
        .map(|t| parse_rational(t).map_err(|e| anyhow!("{e}")))
        .collect::<Result<Vec<_>>>()
        .with_context(|| format!("parsing vector {s:?}"))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Constant => 0,
        Verdict::Nonconstant => 1,
        Verdict::Inconclusive => 3,
    }
}

fn cmd_verify(pair: &str, v: &str, flags: &RunFlags) -> Result<u8> {
    let coords = parse_vector(v)?;
    let cfg = flags.config()?;
    let cat = catalog(flags.catalog.as_ref())?;
    let p = find_pair(pair, &cat)?;
    let report = verify(&p, &Candidate::new(coords), &cfg)?;
    if let Some(path) = &flags.out {
        save_report(path, std::slice::from_ref(&report), None)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut out = std::io::stdout().lock();
    if flags.json {
        writeln!(out, "{}", report.to_json_line())?;
    } else {
        print_report(&mut out, &report)?;
    }
    Ok(verdict_code(report.verdict))
}

/// Rows and columns shown for witness matrices in human output.
const SHOWN: usize = 4;

fn print_report(out: &mut impl Write, r: &VerdictReport) -> Result<()> {
    writeln!(out, "{}  v = ({})  ‖v‖² = {}", r.pair, r.candidate.join(", "), r.norm2)?;
    writeln!(out, "  verdict: {}", r.verdict)?;
    if let Some(t1) = &r.tier1 {
        write!(
            out,
            "  tier1: {} (orbit {}, ‖pr_h v‖² = {})",
            if t1.pass { "pass" } else { "fail" },
            t1.orbit_size,
            t1.h_norm2
        )?;
        if let Some(bad) = &t1.violating_pair {
            write!(
                out,
                ", ({}) ↦ {} vs ({}) ↦ {}",
                bad.first.join(", "),
                bad.first_h_norm2,
                bad.second.join(", "),
                bad.second_h_norm2
            )?;
        }
        writeln!(out)?;
    }
    if let Some(t2) = &r.tier2 {
        writeln!(out, "  tier2: max residual {:.3e} over {} points", t2.max_residual.0, t2.points)?;
    }
    if let Some(t3) = &r.tier3 {
        writeln!(
            out,
            "  tier3: f in [{:.12}, {:.12}], relative spread {:.3e}, {} samples, seed {}",
            t3.min_f.0, t3.max_f.0, t3.spread.0, t3.samples, t3.seed
        )?;
    }
    if let Some(w) = &r.witness {
        writeln!(out, "  witness ({}): f1 = {:.12}, f2 = {:.12}, gap = {:.12}", w.source, w.f1.0, w.f2.0, w.gap.0)?;
        for (label, g) in [("g1", &w.g1), ("g2", &w.g2)] {
            writeln!(out, "    {label} ({}×{}, leading block):", g.len(), g.len())?;
            for row in g.iter().take(SHOWN) {
                let cells: Vec<String> = row.iter().take(SHOWN).map(|x| format!("{:>9.5}", x.0)).collect();
                let more = if row.len() > SHOWN { " …" } else { "" };
                writeln!(out, "      {}{more}", cells.join(" "))?;
            }
            if g.len() > SHOWN {
                writeln!(out, "      …")?;
            }
        }
    }
    if let Some(q) = &r.ratios {
        writeln!(
            out,
            "  ratios: ‖pr_h v‖²/‖v‖² = {}, dim(t∩h)/dim t = {}, dim h/dim g = {}",
            q.h_ratio, q.cartan_ratio, q.algebra_ratio
        )?;
    }
    if let Some(s) = r.symmetric {
        writeln!(out, "  symmetric: {s}")?;
    }
    if let Some(n) = &r.note {
        writeln!(out, "  note: {n}")?;
    }
    Ok(())
}

fn cmd_classify(flags: &RunFlags) -> Result<u8> {
    let cfg = flags.config()?;
    let cat = catalog(flags.catalog.as_ref())?;
    let c = classify(&cat, &cfg)?;
    if let Some(path) = &flags.out {
        save_report(path, &c.reports, Some(&c.summary)).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut out = std::io::stdout().lock();
    if flags.json {
        ckfield::ckengine::write_reports(&mut out, &c.reports, Some(&c.summary))?;
    } else {
        print_table(&mut out, &c.reports, &c.summary)?;
    }
    Ok(if c.summary.inconclusive > 0 { 3 } else { 0 })
}

fn print_table(out: &mut impl Write, reports: &[VerdictReport], s: &Summary) -> Result<()> {
    writeln!(out, "{:<14} {:<22} {:<6} {:>10} {:>10} {:>10}  verdict", "pair", "v", "tier1", "tier2", "spread", "gap")?;
    for r in reports {
        let t1 = r.tier1.as_ref().map_or("-", |t| if t.pass { "pass" } else { "fail" });
        let t2 = r.tier2.as_ref().map_or("-".into(), |t| format!("{:.2e}", t.max_residual.0));
        let t3 = r.tier3.as_ref().map_or("-".into(), |t| format!("{:.2e}", t.spread.0));
        let gap = r.witness.as_ref().map_or("-".into(), |w| format!("{:.4}", w.gap.0));
        writeln!(
            out,
            "{:<14} {:<22} {:<6} {:>10} {:>10} {:>10}  {}",
            r.pair,
            r.candidate.join(","),
            t1,
            t2,
            t3,
            gap,
            r.verdict
        )?;
    }
    writeln!(
        out,
        "{} reports: {} constant, {} nonconstant, {} inconclusive",
        s.reports, s.constant, s.nonconstant, s.inconclusive
    )?;
    writeln!(out, "positive: {}", s.positive.join(", "))?;
    Ok(())
}

fn cmd_prop32(
    ty: &str,
    rank: usize,
    h: Option<&str>,
    pair: Option<&str>,
    bound: usize,
    catalog_path: Option<PathBuf>,
    json: bool,
) -> Result<u8> {
    let rs = root_system(ty, Some(rank))?;
    let split = match (h, pair) {
        (Some(h), _) => {
            let basis: Vec<QVec> =
                h.split(';').map(|s| parse_vector(s).map(|v| QVec::from_rationals(&v))).collect::<Result<_>>()?;
            if basis.iter().any(|b| b.len() != rs.coord_dim()) {
                bail!("--h vectors need {} coordinates", rs.coord_dim());
            }
            CartanSplit::from_h_basis(&rs, &basis)
        }
        (None, Some(name)) => {
            let p = find_pair(name, &catalog(catalog_path.as_ref())?)?;
            let tag = p.model().tag();
            if tag.ty != rs.type_label() || tag.rank != rs.rank() {
                bail!("{name} lives in {}{}, not {}{}", tag.ty, tag.rank, rs.type_label(), rs.rank());
            }
            p.split().clone()
        }
        (None, None) => bail!("one of --h or --pair is required"),
    };
    let r = prop32_oracle(&rs, &split, bound as i128)?;
    let mut out = std::io::stdout().lock();
    if json {
        let rec = Prop32Record {
            ty: rs.type_label().to_string(),
            rank: rs.rank(),
            bound,
            h: split.h_basis().iter().map(vec_strings).collect(),
            examined: r.examined,
            survivors: r.survivors.iter().map(vec_strings).collect(),
            reference: r.reference.iter().map(vec_strings).collect(),
            outside: r.outside.iter().map(vec_strings).collect(),
            contained: r.contained(),
        };
        writeln!(out, "{}", serde_json::to_string(&rec)?)?;
    } else {
        writeln!(out, "{}: {} grid vectors examined (bound {bound})", label(&rs), r.examined)?;
        for s in &r.survivors {
            let mark = if r.reference.contains(s) { "in list" } else { "NOT in list" };
            writeln!(out, "  survivor ({})  {mark}", vec_strings(s).join(", "))?;
        }
        writeln!(out, "contained: {}", r.contained())?;
    }
    Ok(if r.contained() { 0 } else { 1 })
}
