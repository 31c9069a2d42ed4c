//! Command-line front end for the operad-group kernel.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use opgroup::action::act;
use opgroup::certificates::{
    alternating_words_nontrivial, free_action_check, infinite_order_check, pingpong_check,
    sigma_span_check, sigma_span_marked, sigma_span_report, torsion_check, Report, SplitWitness,
};
use opgroup::markings::SemiPartitionClass;
use opgroup::poset::{check_filtered, enumerate_pn};
use opgroup::syntax::{
    format_marked_arrow, format_placement, format_span, parse_arrow, parse_marked_arrow,
    parse_permutation, parse_span,
};
use opgroup::{Backend, BackendKind, Error, Flavor, Span};

#[derive(Parser)]
#[command(name = "opgroup", version, about = "Arithmetic in Higman-Thompson and Brin-Thompson operad groups")]
struct Cli {
    /// tree:k=N or cube:d=N
    #[arg(long, global = true, default_value = "tree:k=2", value_parser = parse_backend_kind)]
    backend: BackendKind,
    #[arg(long, global = true, value_enum, default_value_t = FlavorArg::Symmetric)]
    flavor: FlavorArg,
    /// Length of the base word for enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    base: usize,
    /// Emit one JSON object per line.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when a yes/no query answers no.
    #[arg(long, global = true)]
    assert: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Planar,
    Symmetric,
}

#[derive(Subcommand)]
enum Command {
    /// Group element arithmetic on span literals.
    #[command(subcommand)]
    Elem(Elem),
    /// Apply a span to a marked arrow.
    Act { span: String, marked: String },
    #[command(subcommand)]
    Partition(PartitionCmd),
    #[command(subcommand)]
    Poset(PosetCmd),
    #[command(subcommand)]
    Cert(Cert),
}

#[derive(Subcommand)]
enum Elem {
    Eq { a: String, b: String },
    Mul { a: String, b: String },
    Inv { a: String },
    Pow { a: String, n: i64 },
    Order {
        a: String,
        #[arg(long, default_value_t = 64)]
        max: usize,
    },
    /// Print the realized piecewise map, one cell per line.
    Realize { a: String },
    /// An equal span with common carets removed.
    Reduce { a: String },
}

#[derive(Args, Clone, Copy)]
struct PosetArgs {
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    y: usize,
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// Enumerate the truncated poset of partitions.
    List(PosetArgs),
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Check that every pair has a verified upper bound.
    Filtered(PosetArgs),
}

#[derive(Subcommand)]
enum Cert {
    Torsion {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    Infinite {
        #[arg(long, default_value_t = 64)]
        max_n: usize,
    },
    Pingpong {
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    Words {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    Freeaction {
        #[arg(long, default_value_t = 3)]
        max_perm: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Without --alpha and --sigma, runs the exhaustive check.
    Sigma {
        #[arg(long, requires = "sigma")]
        alpha: Option<String>,
        #[arg(long, requires = "alpha")]
        sigma: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_perm: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

fn parse_backend_kind(s: &str) -> Result<BackendKind, String> {
    let bad = || format!("expected tree:k=N or cube:d=N, got {s:?}");
    let (family, param) = s.split_once(':').ok_or_else(bad)?;
    let (key, value) = param.split_once('=').ok_or_else(bad)?;
    let value: u8 = value.trim().parse().map_err(|_| bad())?;
    match (family.trim(), key.trim()) {
        ("tree", "k") => Ok(BackendKind::KaryTree { k: value }),
        ("cube", "d") => Ok(BackendKind::DyadicCube { d: value }),
        _ => Err(bad()),
    }
}

/// What a command produced: the human-readable lines and the JSON record.
struct Output {
    lines: Vec<String>,
    result: Value,
    witnesses: Option<Value>,
    /// `false` when the command found a violation, or a query answered no under --assert.
    ok: bool,
}

impl Output {
    fn value(line: String, result: Value) -> Self {
        Output { lines: vec![line], result, witnesses: None, ok: true }
    }
}

struct Ctx {
    backend: Backend,
    base: usize,
    assert: bool,
}

impl Ctx {
    fn span(&self, s: &str) -> Result<Span, Error> {
        let g = parse_span(&self.backend, s)?;
        self.backend.check_span(&g)?;
        Ok(g)
    }

    fn fmt(&self, g: &Span) -> String {
        format_span(&self.backend, g)
    }

    fn boolean(&self, v: bool) -> Output {
        Output { ok: v || !self.assert, ..Output::value(v.to_string(), json!(v)) }
    }
}

fn report_output(name: &str, r: &Report, summary: String) -> Output {
    let mut lines = vec![summary];
    lines.extend(r.rows.iter().filter(|row| !row.ok).map(|row| {
        format!("violation: {} {}{}", row.check, row.instance, row.witness.as_ref().map_or(String::new(), |w| format!(" -> {w}")))
    }));
    Output {
        lines,
        result: json!({ "check": name, "instances": r.rows.len(), "violations": r.violations() }),
        witnesses: Some(serde_json::to_value(&r.rows).expect("rows serialize")),
        ok: r.all_ok(),
    }
}

fn run_elem(ctx: &Ctx, cmd: &Elem) -> Result<(Value, Output), Error> {
    let base = ctx.backend.base();
    Ok(match cmd {
        Elem::Eq { a, b } => {
            let v = ctx.span(a)?.equiv(&ctx.span(b)?)?;
            (json!({ "a": a, "b": b }), ctx.boolean(v))
        }
        Elem::Mul { a, b } => {
            let g = ctx.span(a)?.mul(&ctx.span(b)?)?.reduce(base);
            (json!({ "a": a, "b": b }), Output::value(ctx.fmt(&g), json!(ctx.fmt(&g))))
        }
        Elem::Inv { a } => {
            let g = ctx.span(a)?.inv();
            (json!({ "a": a }), Output::value(ctx.fmt(&g), json!(ctx.fmt(&g))))
        }
        Elem::Pow { a, n } => {
            let g = ctx.span(a)?.pow(*n, base);
            (json!({ "a": a, "n": n }), Output::value(ctx.fmt(&g), json!(ctx.fmt(&g))))
        }
        Elem::Order { a, max } => {
            let o = ctx.span(a)?.order(*max, base);
            let line = o.map_or("none".to_string(), |n| n.to_string());
            (json!({ "a": a, "max": max }), Output::value(line, json!(o)))
        }
        Elem::Realize { a } => {
            let g = ctx.span(a)?;
            let rows: Vec<(String, String)> = g
                .realize()
                .iter()
                .map(|(d, n)| (format_placement(&ctx.backend, d), format_placement(&ctx.backend, n)))
                .collect();
            let out = Output {
                lines: rows.iter().map(|(d, n)| format!("{d} -> {n}")).collect(),
                result: json!(rows.iter().map(|(d, n)| json!({ "from": d, "to": n })).collect::<Vec<_>>()),
                witnesses: None,
                ok: true,
            };
            (json!({ "a": a }), out)
        }
        Elem::Reduce { a } => {
            let g = ctx.span(a)?.reduce(base);
            (json!({ "a": a }), Output::value(ctx.fmt(&g), json!(ctx.fmt(&g))))
        }
    })
}

fn run_cert(ctx: &Ctx, cmd: &Cert) -> Result<(Value, Output), Error> {
    let b = &ctx.backend;
    Ok(match cmd {
        Cert::Torsion { max_n } => {
            let w = SplitWitness::standard(b, ctx.base)?;
            let r = torsion_check(b, &w, *max_n);
            let orders: Vec<String> = r.rows.iter().map(|row| row.witness.clone().unwrap_or_default()).collect();
            let mut out = report_output("torsion", &r, format!("orders: {}", orders.join(" ")));
            out.lines.extend(r.rows.iter().map(|row| row.instance.clone()));
            (json!({ "max_n": max_n }), out)
        }
        Cert::Infinite { max_n } => {
            let w = SplitWitness::standard(b, ctx.base)?;
            let r = infinite_order_check(b, &w, *max_n)?;
            let summary = format!("gamma = {}; nontrivial powers: {}/{max_n}", ctx.fmt(&w.infinite_element()), r.rows.len() - r.violations());
            (json!({ "max_n": max_n }), report_output("infinite", &r, summary))
        }
        Cert::Pingpong { depth } => {
            let r = pingpong_check(b, *depth)?;
            let summary = format!("pingpong: {} inclusions, {} violations", r.rows.len(), r.violations());
            (json!({ "depth": depth }), report_output("pingpong", &r, summary))
        }
        Cert::Words { max_len } => {
            let r = alternating_words_nontrivial(b, *max_len)?;
            let summary = format!("words: {} checked, {} trivial", r.rows.len(), r.violations());
            (json!({ "max_len": max_len }), report_output("words", &r, summary))
        }
        Cert::Freeaction { max_perm, depth } => {
            let r = free_action_check(b, *max_perm, *depth)?;
            let summary = format!("freeaction: {} instances, {} fixed", r.rows.len(), r.violations());
            (json!({ "max_perm": max_perm, "depth": depth }), report_output("freeaction", &r, summary))
        }
        Cert::Sigma { alpha: Some(alpha), sigma: Some(sigma), .. } => {
            let a = parse_arrow(b, alpha)?;
            b.check_arrow(&a)?;
            let s = parse_permutation(sigma)?;
            let trivial = sigma_span_check(&a, &s)?;
            let fixes = sigma_span_marked(&a, &s)?;
            let out = Output {
                lines: vec![format!("trivial: {trivial}"), format!("fixes moved ball: {fixes}")],
                result: json!({ "trivial": trivial, "fixes_moved_ball": fixes }),
                witnesses: None,
                ok: trivial == fixes && (trivial == s.is_identity() || !ctx.assert),
            };
            (json!({ "alpha": alpha, "sigma": sigma }), out)
        }
        Cert::Sigma { max_perm, depth, .. } => {
            let r = sigma_span_report(b, *max_perm, *depth)?;
            let summary = format!("sigma: {} instances, {} violations", r.rows.len(), r.violations());
            (json!({ "max_perm": max_perm, "depth": depth }), report_output("sigma", &r, summary))
        }
    })
}

fn run_poset(ctx: &Ctx, args: &PosetArgs, filtered: bool) -> Result<(Value, Output), Error> {
    let b = &ctx.backend;
    let t = enumerate_pn(b, ctx.base, args.depth, args.y, args.n)?;
    let inputs = json!({ "base": ctx.base, "depth": args.depth, "n": args.n, "y": args.y });
    let show = |c: &SemiPartitionClass| format_marked_arrow(b, c.rep());
    if !filtered {
        let classes: Vec<String> = t.elements.iter().map(show).collect();
        let mut lines = vec![format!("classes: {}", classes.len())];
        lines.extend(classes.iter().cloned());
        return Ok((inputs, Output { lines, result: json!(classes.len()), witnesses: Some(json!(classes)), ok: true }));
    }
    let rows = check_filtered(b, &t)?;
    let ok = rows.iter().all(|r| r.ok);
    let witnesses: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "p": r.p, "q": r.q, "upper_bound": show(&r.upper_bound), "ok": r.ok }))
        .collect();
    let mut lines = vec![format!("filtered: {ok}"), format!("elements: {}, witnesses: {}", t.elements.len(), rows.len())];
    lines.extend(rows.iter().filter(|r| !r.ok).map(|r| format!("violation: pair ({}, {})", r.p, r.q)));
    Ok((inputs, Output { lines, result: json!(ok), witnesses: Some(json!(witnesses)), ok }))
}

fn run(cli: &Cli) -> Result<(&'static str, Value, Output), Error> {
    let flavor = match cli.flavor {
        FlavorArg::Planar => Flavor::Planar,
        FlavorArg::Symmetric => Flavor::Symmetric,
    };
    let ctx = Ctx { backend: Backend::new(cli.backend, flavor)?, base: cli.base, assert: cli.assert };
    Ok(match &cli.command {
        Command::Elem(e) => {
            let (i, o) = run_elem(&ctx, e)?;
            let name = match e {
                Elem::Eq { .. } => "elem eq",
                Elem::Mul { .. } => "elem mul",
                Elem::Inv { .. } => "elem inv",
                Elem::Pow { .. } => "elem pow",
                Elem::Order { .. } => "elem order",
                Elem::Realize { .. } => "elem realize",
                Elem::Reduce { .. } => "elem reduce",
            };
            (name, i, o)
        }
        Command::Act { span, marked } => {
            let g = ctx.span(span)?;
            let ma = parse_marked_arrow(&ctx.backend, marked)?;
            ctx.backend.check_arrow(ma.arrow())?;
            let image = act(&g, &SemiPartitionClass::new(ma))?;
            let s = format_marked_arrow(&ctx.backend, image.rep());
            ("act", json!({ "span": span, "marked": marked }), Output::value(s.clone(), json!(s)))
        }
        Command::Partition(PartitionCmd::List(a)) => {
            let (i, o) = run_poset(&ctx, a, false)?;
            ("partition list", i, o)
        }
        Command::Poset(PosetCmd::Filtered(a)) => {
            let (i, o) = run_poset(&ctx, a, true)?;
            ("poset filtered", i, o)
        }
        Command::Cert(c) => {
            let (i, o) = run_cert(&ctx, c)?;
            let name = match c {
                Cert::Torsion { .. } => "cert torsion",
                Cert::Infinite { .. } => "cert infinite",
                Cert::Pingpong { .. } => "cert pingpong",
                Cert::Words { .. } => "cert words",
                Cert::Freeaction { .. } => "cert freeaction",
                Cert::Sigma { .. } => "cert sigma",
            };
            (name, i, o)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((command, inputs, out)) => {
            if cli.json {
                let mut record = json!({ "command": command, "inputs": inputs, "result": out.result });
                if let Some(w) = out.witnesses {
                    record["witnesses"] = w;
                }
                println!("{record}");
            } else {
                for line in &out.lines {
                    println!("{line}");
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "command": "error", "inputs": Value::Null, "result": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
