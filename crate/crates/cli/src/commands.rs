//! One function per subcommand; each returns structured output and an exit
//! code.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context as _, Result};
use latgenus::enumerate::{theta_coefficients, CensusCache, EnumConfig};
use latgenus::exact::io::LatticeFile;
use latgenus::exact::syntax::{format_vector, parse_vector};
use latgenus::genus::{
    characteristic_coset, eta, eta_direct, eta_general, f_search, fn_certificate, fn_exhaustive, g4_lower_bound,
    Convention, ExhaustiveBudget, FInvariantCertificate,
};
use latgenus::lorentz::{
    adjunction_genus, builtin_plumbings, complement_lattice, identify_unimodular, root_fingerprint, LorentzClass,
    PlumbingFile,
};
use latgenus::munoz::{nilpotency_table, theta_sweep};
use latgenus::zoo::NamedLatticeCatalog;
use latgenus::{LatticeHandle, ScaledVector};
use serde_json::{json, Map, Value};

use crate::report::Report;
use crate::verify::{verify_paper, Context};
use crate::{Budget, Cli, Command, ConventionArg, Format, MunozAction, PlumbingAction, ZooAction};

pub struct Output {
    pub json: Value,
    /// Overrides the generic rendering of `json` in text mode.
    pub text: Option<String>,
    pub code: i32,
}

impl Output {
    fn ok(json: Value) -> Self {
        Self {
            json,
            text: None,
            code: 0,
        }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json")),
            Format::Text => match &self.text {
                Some(t) => t.clone(),
                None => {
                    let mut s = String::new();
                    render_text(&self.json, 0, &mut s);
                    s
                }
            },
        }
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_text(x, indent + 1, out);
                }
            }
        }
        Value::Array(a) if a.iter().all(is_scalar) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{}", items.join(", "));
        }
        Value::Array(a) => {
            for x in a {
                render_text(x, indent, out);
                if !is_scalar(x) {
                    let _ = writeln!(out, "{pad}--");
                }
            }
        }
        x => {
            let _ = writeln!(out, "{pad}{}", scalar(x));
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        x => x.to_string(),
    }
}

pub fn load_catalog(path: Option<&Path>) -> Result<NamedLatticeCatalog> {
    match path {
        Some(p) => NamedLatticeCatalog::from_file(p).with_context(|| format!("loading catalog {}", p.display())),
        None => Ok(NamedLatticeCatalog::builtin()),
    }
}

/// Builds every entry, so a corrupted catalog is reported before any
/// computation, naming the first bad entry.
pub fn validate_catalog(catalog: &NamedLatticeCatalog) -> Result<()> {
    for e in catalog.entries() {
        e.build().with_context(|| format!("catalog entry {} is corrupt", e.name))?;
    }
    Ok(())
}

pub fn context(cli: &Cli) -> Result<Context> {
    let catalog = load_catalog(cli.catalog.as_deref())?;
    let mut cfg = EnumConfig::default();
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        cfg.threads = t;
    }
    if let Some(m) = cli.memory_cap {
        cfg.memory_cap = m;
    }
    cfg.cache = cli.cache_dir.as_ref().map(CensusCache::new);
    Ok(Context::new(catalog, cfg, cli.budget))
}

/// A catalog name, or a path to a lattice file.
fn resolve(ctx: &Context, arg: &str) -> Result<LatticeHandle> {
    if ctx.catalog.entry(arg).is_ok() {
        return ctx.lattice(arg);
    }
    let p = Path::new(arg);
    if p.exists() {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {arg}"))?;
        return Ok(LatticeFile::from_json(&text)?.to_lattice()?);
    }
    Err(anyhow!("`{arg}` is neither a catalog lattice nor a file"))
}

fn vector(s: &str) -> Result<ScaledVector> {
    parse_vector(s).with_context(|| format!("parsing vector {s}"))
}

fn class(s: &str) -> Result<LorentzClass> {
    s.parse().with_context(|| format!("parsing class {s}"))
}

fn counts(m: &std::collections::BTreeMap<i64, u64>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn certificate_json(c: &FInvariantCertificate) -> Value {
    json!({
        "n": c.n,
        "w": format_vector(&c.w),
        "w_norm": c.w_norm,
        "value": c.value,
        "m": c.m,
        "residue": c.residue,
        "min_set_size": c.min_set_size,
        "eta": c.eta.as_ref().map(|e| e.to_string()),
        "s_counts": counts(&c.s_counts),
        "extremal_up_to": c.extremality.verified_bound,
    })
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let ctx = context(cli)?;
    match &cli.command {
        Command::Zoo { action } => match action {
            ZooAction::List => Ok(zoo_list(&ctx)),
            ZooAction::Check { name } => zoo_check(&ctx, name),
        },
        Command::Theta { lattice, up_to } => {
            let l = resolve(&ctx, lattice)?;
            let t = theta_coefficients(&l, *up_to, &ctx.cfg)?;
            Ok(Output::ok(json!({ "lattice": lattice, "theta": counts(&t) })))
        }
        Command::Eta {
            lattice,
            w,
            a,
            m,
            convention,
        } => eta_cmd(&ctx, lattice, w, a.as_deref(), *m, *convention),
        Command::FCert { lattice, n, w } => {
            let l = resolve(&ctx, lattice)?;
            let c = fn_certificate(&l, &vector(w)?, *n, &ctx.cfg)?;
            Ok(Output::ok(json!({ "lattice": lattice, "certificate": certificate_json(&c) })))
        }
        Command::FSearch {
            lattice,
            n,
            norm_cap,
            w,
            max_classes,
            exhaustive,
        } => f_search_cmd(&ctx, lattice, *n, *norm_cap, w, *max_classes, *exhaustive),
        Command::Delta { lattice } => {
            let l = resolve(&ctx, lattice)?;
            let d = characteristic_coset(&l, &ctx.cfg)?;
            Ok(Output::ok(json!({
                "lattice": lattice,
                "delta": d.delta,
                "char_rep": format_vector(&d.char_rep),
                "min_char": format_vector(&d.min_char),
                "min_char_norm": d.min_char_norm,
                "min_char_count": d.min_char_count,
            })))
        }
        Command::G4 { lattice, w } => g4_cmd(&ctx, lattice, w),
        Command::Complement { class: c } => complement_cmd(&ctx, c),
        Command::Genus { class: c } => {
            let v = class(c)?;
            Ok(Output::ok(json!({ "class": v.to_string(), "genus": adjunction_genus(&v)? })))
        }
        Command::Plumbing {
            action: PlumbingAction::Verify { file, builtin },
        } => {
            let files = match (file, builtin) {
                (Some(p), false) => vec![PlumbingFile::from_path(p)?],
                (None, true) => builtin_plumbings(),
                _ => bail!("give either a plumbing file or --builtin"),
            };
            plumbing_cmd(&ctx, &files)
        }
        Command::Munoz { action } => match action {
            MunozAction::Sweep { rmax, moduli } => munoz_sweep(*rmax, moduli),
            MunozAction::Table { gmax } => munoz_table(*gmax),
        },
        Command::VerifyPaper => {
            validate_catalog(&ctx.catalog)?;
            let report = Report::new(cli.budget.name(), verify_paper(&ctx));
            let code = report.exit_code(cli.strict);
            Ok(Output {
                json: serde_json::to_value(&report)?,
                text: Some(report.to_text()),
                code,
            })
        }
    }
}

fn zoo_list(ctx: &Context) -> Output {
    let rows: Vec<Value> = ctx
        .catalog
        .entries()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "rank": e.rank(),
                "det": e.expected.det,
                "even": e.expected.even,
                "a2": e.expected.a2,
            })
        })
        .collect();
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<10} rank {:>2}  det {}  {}  a2 {}",
            scalar(&r["name"]),
            r["rank"],
            r["det"],
            if r["even"] == json!(true) { "even" } else { "odd " },
            scalar(&r["a2"])
        );
    }
    Output {
        json: Value::Array(rows),
        text: Some(text),
        code: 0,
    }
}

fn zoo_check(ctx: &Context, name: &str) -> Result<Output> {
    let e = ctx.catalog.entry(name)?;
    let l = e.build()?;
    let theta = theta_coefficients(&l, 2, &ctx.cfg)?;
    let a2 = theta[&2];
    let a2_ok = e.expected.a2.map_or(true, |x| x == a2);
    let fp = root_fingerprint(&l)?;
    let out = json!({
        "name": name,
        "rank": l.rank(),
        "det": l.determinant().to_string(),
        "even": l.is_even(),
        "a2": a2,
        "expected_a2": e.expected.a2,
        "roots": fp.label(),
        "status": if a2_ok { "pass" } else { "fail" },
    });
    Ok(Output::ok(out).with_code(if a2_ok { 0 } else { 1 }))
}

fn eta_cmd(
    ctx: &Context,
    lattice: &str,
    w: &str,
    a: Option<&str>,
    m: u32,
    convention: ConventionArg,
) -> Result<Output> {
    let l = resolve(ctx, lattice)?;
    let w = vector(w)?;
    if m == 0 {
        let r = eta(&l, &w, &ctx.cfg)?;
        let direct = eta_direct(&l, &w, &ctx.cfg)?;
        return Ok(Output::ok(json!({
            "lattice": lattice,
            "w": format_vector(&w),
            "w_norm": r.extremality.w_norm,
            "m": 0,
            "eta": r.eta_value.to_string(),
            "eta_direct": direct.to_string(),
            "s_counts": counts(&r.s_counts),
            "min_set_size": r.min_set_size,
            "extremal_up_to": r.extremality.verified_bound,
        }))
        .with_code(if direct == r.eta_value { 0 } else { 1 }));
    }
    let a = a.map(vector).transpose()?;
    let conv = match convention {
        ConventionArg::Constant => Convention::Constant,
        ConventionArg::PerVector => Convention::PerVector,
    };
    let value = eta_general(&l, &w, a.as_ref(), m, conv, &ctx.cfg)?;
    Ok(Output::ok(json!({
        "lattice": lattice,
        "w": format_vector(&w),
        "a": a.as_ref().map(format_vector),
        "m": m,
        "convention": format!("{convention:?}").to_lowercase(),
        "eta": value.to_string(),
    })))
}

fn f_search_cmd(
    ctx: &Context,
    lattice: &str,
    n: u32,
    norm_cap: i64,
    w: &[String],
    max_classes: usize,
    exhaustive: bool,
) -> Result<Output> {
    let l = resolve(ctx, lattice)?;
    if exhaustive {
        let max_rank = match ctx.budget {
            Budget::Desk => ExhaustiveBudget::default().max_rank,
            Budget::Full => 24,
        };
        let r = fn_exhaustive(&l, n, norm_cap, ExhaustiveBudget { max_rank }, &ctx.cfg)?;
        let histogram: Vec<Value> = r
            .histogram
            .iter()
            .map(|((norm, value), count)| json!({ "min_norm": norm, "value": value, "classes": count }))
            .collect();
        return Ok(Output::ok(json!({
            "lattice": lattice,
            "n": n,
            "norm_cap": norm_cap,
            "classes_total": r.classes_total,
            "classes_seen": r.classes_seen,
            "exhaustive": r.exhaustive,
            "value": r.value,
            "certificate": r.certificate.as_ref().map(certificate_json),
            "histogram": histogram,
        })));
    }
    let candidates = w.iter().map(|s| vector(s)).collect::<Result<Vec<_>>>()?;
    let c = f_search(&l, n, norm_cap, &candidates, max_classes, &ctx.cfg)?;
    Ok(Output::ok(json!({
        "lattice": lattice,
        "n": n,
        "norm_cap": norm_cap,
        "value": c.as_ref().map(|c| c.value),
        "certificate": c.as_ref().map(certificate_json),
    })))
}

fn g4_cmd(ctx: &Context, lattice: &str, ws: &[String]) -> Result<Output> {
    let l = resolve(ctx, lattice)?;
    let delta = characteristic_coset(&l, &ctx.cfg)?.delta;
    let mut best: [Option<FInvariantCertificate>; 3] = [None, None, None];
    let mut rejected = Map::new();
    for s in ws {
        let w = vector(s)?;
        for (slot, n) in [2u32, 4, 8].into_iter().enumerate() {
            match fn_certificate(&l, &w, n, &ctx.cfg) {
                Ok(c) if best[slot].as_ref().map_or(true, |b| c.value > b.value) => best[slot] = Some(c),
                Ok(_) => {}
                Err(e) => {
                    rejected.insert(format!("f{n} {s}"), json!(e.to_string()));
                }
            }
        }
    }
    let value = |i: usize| best[i].as_ref().map(|c| c.value);
    let b = g4_lower_bound(value(0), value(1), value(2), Some(delta))?;
    let candidates: Vec<Value> = b
        .candidates
        .iter()
        .map(|(branch, v)| json!({ "branch": branch.to_string(), "value": v }))
        .collect();
    Ok(Output::ok(json!({
        "lattice": lattice,
        "g4_lower_bound": b.value,
        "branch": b.branch.to_string(),
        "candidates": candidates,
        "assumption": b.assumption,
        "delta": delta,
        "f2": best[0].as_ref().map(certificate_json),
        "f4": best[1].as_ref().map(certificate_json),
        "f8": best[2].as_ref().map(certificate_json),
        "rejected": rejected,
    })))
}

fn complement_cmd(ctx: &Context, c: &str) -> Result<Output> {
    let v = class(c)?;
    let l = complement_lattice(&v)?;
    let id = identify_unimodular(&l, &ctx.catalog)?;
    let genus = adjunction_genus(&v).ok();
    let code = if id.name().is_some() { 0 } else { 1 };
    Ok(Output::ok(json!({
        "class": v.to_string(),
        "square": v.square().to_string(),
        "rank": id.rank,
        "even": id.even,
        "roots": id.fingerprint.label(),
        "root_count": id.fingerprint.root_count,
        "lattice": id.name(),
        "genus": genus,
        "identification": serde_json::to_value(&id)?,
    }))
    .with_code(code))
}

fn plumbing_cmd(ctx: &Context, files: &[PlumbingFile]) -> Result<Output> {
    let mut rows = Vec::new();
    let mut code = 0;
    for p in files {
        let r = p.verify(&ctx.catalog)?;
        if !r.holds() {
            code = 1;
        }
        rows.push(json!({
            "name": p.name,
            "lattice": p.lattice,
            "holds": r.holds(),
            "report": serde_json::to_value(&r)?,
        }));
    }
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "{} {:<16} gram {} det {}",
            if r["holds"] == json!(true) { "PASS" } else { "FAIL" },
            scalar(&r["name"]),
            if r["report"]["gram_matches"] == json!(true) { "matches" } else { "differs" },
            scalar(&r["report"]["determinant"])
        );
    }
    Ok(Output {
        json: Value::Array(rows),
        text: Some(text),
        code,
    })
}

fn munoz_sweep(rmax: usize, moduli: &[u64]) -> Result<Output> {
    let ks = moduli
        .iter()
        .map(|&m| {
            if m >= 2 && m.is_power_of_two() {
                Ok(m.trailing_zeros())
            } else {
                Err(anyhow!("modulus {m} is not a power of two"))
            }
        })
        .collect::<Result<Vec<u32>>>()?;
    let sweep = theta_sweep(rmax, &ks);
    let mut text = String::from("r     integral");
    for m in moduli {
        let _ = write!(text, "  mod {m:<4}");
    }
    text.push('\n');
    let mut rows = Vec::new();
    for (r, checks) in sweep.iter().enumerate() {
        let _ = write!(text, "{r:<5} {:<8}", if checks[0].integral { "yes" } else { "no" });
        let mut reductions = Map::new();
        for (c, m) in checks.iter().zip(moduli) {
            let cell = c.reduces_to.map(|p| p.to_string());
            let _ = write!(text, "  {:<8}", cell.as_deref().unwrap_or("fail"));
            reductions.insert(m.to_string(), json!(cell));
        }
        text.push('\n');
        rows.push(json!({ "r": r, "integral": checks[0].integral, "reductions": reductions }));
    }
    Ok(Output {
        json: json!({ "rmax": rmax, "moduli": moduli, "rows": rows }),
        text: Some(text),
        code: 0,
    })
}

fn munoz_table(gmax: usize) -> Result<Output> {
    let rows = nilpotency_table(gmax);
    let show = |x: Option<u32>| x.map_or("?".to_string(), |v| v.to_string());
    let mut text = String::from("g     n(a^2)  n(b,4)  n(b,8)  basis\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<5} {:<7} {:<7} {:<7} {:?}",
            r.g,
            show(r.n_alpha_2),
            show(r.n_beta_4),
            show(r.n_beta_8),
            r.beta_8_basis
        );
    }
    Ok(Output {
        json: json!({ "gmax": gmax, "rows": serde_json::to_value(&rows)? }),
        text: Some(text),
        code: 0,
    })
}
