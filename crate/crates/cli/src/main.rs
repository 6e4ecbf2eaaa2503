//! `silt`: enumerate silting objects, mutate them, walk complement chains,
//! run the verification suites and export silting quivers.

use std::io::Write;
use std::net::SocketAddr;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use silt_core::checks::{check_arrows, check_prop33, check_prop35, check_thm32, check_thm34, default_cutoff, Report};
use silt_core::derived::StalkSum;
use silt_core::export::{silting_quiver_doc, silting_quiver_dot, SCHEMA_VERSION};
use silt_core::instance::Instance;
use silt_core::replicated::{bridge_consistency, realizable_complements};
use silt_core::silting::{complement_chain, enumerate_silting, in_domain, is_silting, mutate, silting_quiver, Direction};
use silt_core::suite::{self, cores_of, merge_all, SuiteOptions};
use silt_core::Error;

#[derive(Parser)]
#[command(name = "silt", version, about = "Silting mutation workbench for Dynkin quivers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Quiver label, e.g. `A3` or `A3:1>2<3` or `D4:1>2<3,2>4`.
    #[arg(long)]
    quiver: String,
    /// Domain parameter.
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Thm32,
    Thm34,
    Prop33,
    Prop35,
    Arrows,
    Thm42,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the silting objects of the fundamental domain.
    Enumerate(InstanceArgs),
    /// Mutate one summand of a silting object.
    Mutate {
        #[command(flatten)]
        inst: InstanceArgs,
        /// The object, e.g. "P1,P2".
        #[arg(long)]
        object: String,
        /// 0-based summand index in canonical (shift, id) order.
        #[arg(long)]
        at: usize,
        #[arg(long, value_parser = parse_dir)]
        dir: Direction,
    },
    /// Complements of an almost complete silting object.
    Chain {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        core: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i32>,
    },
    /// Run a verification suite; without --quiver, `all` runs the acceptance matrix.
    Check {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Restrict object-level suites to one silting object.
        #[arg(long)]
        object: Option<String>,
        /// Restrict core-level suites to one almost complete object.
        #[arg(long)]
        core: Option<String>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Random samples per object (default: exhaustive over basis maps; 200 in the matrix).
        #[arg(long)]
        samples: Option<usize>,
        /// Global dimension cutoff (default 2mn+2, or SILT_CUTOFF).
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print every entry, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Export the silting quiver.
    Export {
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Serve the explorer API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
    },
}

fn parse_dir(s: &str) -> Result<Direction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed run: usage problems exit 2, everything else 1.
enum Failure {
    Usage(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Json(_) => Failure::Other(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out = Result<(String, bool), Failure>;

fn load(label: &str, m: usize) -> Result<Instance, Failure> {
    if m == 0 {
        return Err(Failure::Usage("m must be at least 1".into()));
    }
    Ok(Instance::parse(label)?)
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Failure::Other(e.to_string()))
}

fn no_dot(format: Format) -> Result<(), Failure> {
    if format == Format::Dot {
        Err(Failure::Usage("dot output is only available for enumerate and export".into()))
    } else {
        Ok(())
    }
}

fn enumerate_cmd(a: &InstanceArgs) -> Out {
    let inst = load(&a.quiver, a.m)?;
    let objs = enumerate_silting(&inst, a.m);
    let out = match a.format {
        Format::Text => {
            let mut s = format!("{} silting objects in {} m={}\n", objs.len(), inst.quiver().label(), a.m);
            for t in &objs {
                s += &format!("  {}\n", inst.sum_name(t));
            }
            s
        }
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "quiver": inst.quiver().label(),
            "m": a.m,
            "count": objs.len(),
            "objects": objs.iter().map(|t| json!({"name": inst.sum_name(t), "summands": t.to_json()})).collect::<Vec<_>>(),
        }))?,
        Format::Dot => silting_quiver_dot(&silting_quiver_doc(&inst, a.m, &silting_quiver(&inst, a.m)?)),
    };
    Ok((out, true))
}

fn mutate_cmd(a: &InstanceArgs, object: &str, at: usize, dir: Direction) -> Out {
    no_dot(a.format)?;
    let inst = load(&a.quiver, a.m)?;
    let t = inst.parse_sum(object)?;
    if !is_silting(&inst, &t) {
        return Err(Failure::Usage(format!("{} is not a silting object", inst.sum_name(&t))));
    }
    let (next, tri) = mutate(&inst, &t, at, dir)?;
    let inside = in_domain(&inst, &next, a.m);
    let out = match a.format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "quiver": inst.quiver().label(),
            "m": a.m,
            "before": inst.sum_name(&t),
            "index": at,
            "dir": dir,
            "object": {"name": inst.sum_name(&next), "summands": next.to_json()},
            "triangle": {
                "x": inst.stalk_name(tri.x),
                "b": tri.b.to_json(),
                "y": inst.stalk_name(tri.y),
                "text": tri.describe(&inst),
            },
            "in_s_m": inside,
        }))?,
        _ => format!("{}\ntriangle: {}\nin S_m: {inside}\n", inst.sum_name(&next), tri.describe(&inst)),
    };
    Ok((out, true))
}

fn chain_cmd(a: &InstanceArgs, core: &str, lo: Option<i32>, hi: Option<i32>) -> Out {
    no_dot(a.format)?;
    let inst = load(&a.quiver, a.m)?;
    let core = inst.parse_sum(core)?;
    let (lo, hi) = (lo.unwrap_or(-2), hi.unwrap_or(a.m as i32 + 3));
    if lo > hi {
        return Err(Failure::Usage(format!("empty window [{lo}, {hi}]")));
    }
    let chain = complement_chain(&inst, &core, a.m, lo, hi)?;
    let real = realizable_complements(&inst, &core, a.m).ok();
    let members: Vec<_> = (lo..=hi).filter_map(|j| chain.get(j).map(|s| (j, s))).collect();
    let out = match a.format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "quiver": inst.quiver().label(),
            "m": a.m,
            "core": inst.sum_name(&core),
            "members": members.iter().map(|&(j, s)| json!({
                "j": j,
                "name": inst.stalk_name(s),
                "id": s.id,
                "shift": s.shift,
                "in_domain": inst.in_domain(s, a.m),
            })).collect::<Vec<_>>(),
            "exchange": (lo + 1..=hi).filter_map(|j| chain.exchange.get(&j).map(|b| json!({"j": j, "middle": b.to_json()}))).collect::<Vec<_>>(),
            "realizable": real,
        }))?,
        _ => {
            let mut s = format!("core {} in {} m={}\n", inst.sum_name(&core), inst.quiver().label(), a.m);
            s += &format!(
                "{}\n",
                members.iter().map(|&(_, x)| inst.stalk_name(x)).collect::<Vec<_>>().join(" -> ")
            );
            for &(j, x) in &members {
                let mid = chain.exchange.get(&j).filter(|_| j > lo).map(|b| if b.is_empty() { "0".to_string() } else { inst.sum_name(b) });
                let mark = if inst.in_domain(x, a.m) { " *" } else { "" };
                match mid {
                    Some(b) => s += &format!("  M{j} = {}{mark}    (middle {b})\n", inst.stalk_name(x)),
                    None => s += &format!("  M{j} = {}{mark}\n", inst.stalk_name(x)),
                }
            }
            if let Some(r) = &real {
                let xs: Vec<String> = r.complements.iter().enumerate().map(|(i, (_, n))| format!("X{i}={n}")).collect();
                s += &format!("realizable: {} (t={})\n", xs.join(" "), r.t);
            }
            s
        }
    };
    Ok((out, true))
}

struct CheckArgs<'a> {
    which: Which,
    quiver: Option<&'a str>,
    m: usize,
    object: Option<&'a str>,
    core: Option<&'a str>,
    seed: u64,
    samples: Option<usize>,
    cutoff: Option<usize>,
    format: Format,
    verbose: bool,
}

fn env_cutoff() -> Result<Option<usize>, Failure> {
    match std::env::var("SILT_CUTOFF") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Failure::Usage(format!("SILT_CUTOFF={v:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn instance_reports(c: &CheckArgs, label: &str) -> Result<Vec<Report>, Failure> {
    let inst = load(label, c.m)?;
    let m = c.m;
    let cutoff = c.cutoff.unwrap_or_else(|| default_cutoff(&inst, m));
    let objects: Vec<StalkSum> = match c.object {
        Some(o) => {
            let t = inst.parse_sum(o)?;
            if !is_silting(&inst, &t) {
                return Err(Failure::Usage(format!("{} is not a silting object", inst.sum_name(&t))));
            }
            vec![t]
        }
        None => enumerate_silting(&inst, m),
    };
    let cores: Vec<StalkSum> = match c.core {
        Some(x) => vec![inst.parse_sum(x)?],
        None => cores_of(&objects),
    };
    let want = |w: Which| c.which == w || c.which == Which::All;
    let mut out = Vec::new();
    if want(Which::Thm32) {
        let parts = objects.iter().enumerate().map(|(k, t)| check_thm32(&inst, m, t, c.samples, c.seed.wrapping_add(k as u64))).collect();
        out.push(merge_all("thm32", parts)?);
    }
    if want(Which::Thm34) {
        out.push(merge_all("thm34", cores.iter().map(|x| check_thm34(&inst, x, m)).collect())?);
    }
    if want(Which::Prop33) {
        out.push(check_prop33(&inst, m)?);
    }
    if want(Which::Prop35) {
        out.push(merge_all("prop35", objects.iter().map(|t| check_prop35(&inst, m, t, cutoff)).collect())?);
    }
    if want(Which::Arrows) {
        out.push(merge_all("arrows", objects.iter().map(|t| check_arrows(&inst, m, t)).collect())?);
    }
    if want(Which::Thm42) {
        let mut r = merge_all("thm42", cores.iter().map(|x| suite::thm42_core(&inst, m, x, cutoff)).collect())?;
        r.merge(merge_all("thm42", objects.iter().map(|t| bridge_consistency(&inst, m, t)).collect())?);
        out.push(r);
    }
    Ok(out)
}

fn render_report(r: &Report, title: Option<&str>, verbose: bool) -> String {
    let status = if r.pass() { "PASS" } else { "FAIL" };
    let head = match title {
        Some(t) => format!("{status} {}: {t}", r.name),
        None => format!("{status} {}", r.name),
    };
    let mut s = format!("{head} ({}/{} entries)\n", r.passed_count(), r.entries.len());
    for e in &r.entries {
        if verbose || !e.pass {
            let tag = if e.pass { "ok  " } else { "FAIL" };
            s += &format!("  {tag} {} [{}] expected {}, got {}\n", e.check, e.instance, e.expected, e.got);
        }
    }
    if !r.findings.is_empty() {
        s += &format!("  {} findings\n", r.findings.len());
        for f in &r.findings {
            s += &format!("  finding: {f}\n");
        }
    }
    s
}

fn check_cmd(c: &CheckArgs) -> Out {
    no_dot(c.format)?;
    let cutoff = match c.cutoff {
        Some(k) => Some(k),
        None => env_cutoff()?,
    };
    let c = CheckArgs { cutoff, ..*c };
    let (reports, titles): (Vec<Report>, Vec<Option<&str>>) = match (c.quiver, c.which) {
        (Some(q), _) => {
            let r = instance_reports(&c, q)?;
            let n = r.len();
            (r, vec![None; n])
        }
        (None, Which::All) => {
            let opts = SuiteOptions { seed: c.seed, samples: c.samples.unwrap_or(200), cutoff: c.cutoff };
            let crit = suite::run_all(&opts)?;
            crit.into_iter().map(|k| (k.report, Some(k.title))).unzip()
        }
        (None, _) => return Err(Failure::Usage("--quiver is required unless checking all".into())),
    };
    let pass = reports.iter().all(Report::pass);
    let out = match c.format {
        Format::Json => to_json(&json!({"schema_version": SCHEMA_VERSION, "pass": pass, "reports": reports}))?,
        _ => {
            let mut s: String = reports.iter().zip(&titles).map(|(r, t)| render_report(r, *t, c.verbose)).collect();
            s += if pass { "all checks passed\n" } else { "some checks failed\n" };
            s
        }
    };
    Ok((out, pass))
}

fn export_cmd(quiver: &str, m: usize, format: Format) -> Out {
    let inst = load(quiver, m)?;
    let doc = silting_quiver_doc(&inst, m, &silting_quiver(&inst, m)?);
    let out = match format {
        Format::Json => to_json(&doc)?,
        Format::Dot => silting_quiver_dot(&doc),
        Format::Text => return Err(Failure::Usage("export supports --format dot or json".into())),
    };
    Ok((out, true))
}

fn serve_cmd(addr: SocketAddr) -> Out {
    let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Other(e.to_string()))?;
    eprintln!("serving /api/v1 on http://{addr}");
    rt.block_on(silt_explorer::serve(addr)).map_err(|e| Failure::Other(e.to_string()))?;
    Ok((String::new(), true))
}

fn run(cli: Cli) -> Out {
    match &cli.cmd {
        Cmd::Enumerate(a) => enumerate_cmd(a),
        Cmd::Mutate { inst, object, at, dir } => mutate_cmd(inst, object, *at, *dir),
        Cmd::Chain { inst, core, lo, hi } => chain_cmd(inst, core, *lo, *hi),
        Cmd::Check { which, quiver, m, object, core, seed, samples, cutoff, format, verbose } => check_cmd(&CheckArgs {
            which: *which,
            quiver: quiver.as_deref(),
            m: *m,
            object: object.as_deref(),
            core: core.as_deref(),
            seed: *seed,
            samples: *samples,
            cutoff: *cutoff,
            format: *format,
            verbose: *verbose,
        }),
        Cmd::Export { quiver, m, format } => export_cmd(quiver, *m, *format),
        Cmd::Serve { addr } => serve_cmd(*addr),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, pass)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
