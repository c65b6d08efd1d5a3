//! Command-line front end: every module's operations, table emitters and the
//! `verify-all` reproduction run. Output is deterministic for a fixed
//! configuration unless `--timings` is given.

pub mod args;

use std::fs;
use std::path::{Path, PathBuf};

use cubic_algebra::json::{coeff_from_json, coeff_to_json, poly_to_json, rat_to_json, rf_to_json};
use cubic_algebra::{parse_poly, vars, Coeff, Rat, RationalFunction};
use cubic_sections::certify::{self, CaseDescriptor, CaseKind, CaseReport, Mode};
use cubic_sections::curves::divpoly::x_mult_map;
use cubic_sections::curves::isogeny::{dual_composes_to_doubling, e1_to_e0, verify_isogeny};
use cubic_sections::curves::models::{
    e0, e0_short, e1, generators_k3, generators_over, k12, over_root, p_k4, short_model_change, LAMBDA,
};
use cubic_sections::curves::{CurvePoint, WeierstrassCurve};
use cubic_sections::dynamics::{dynatomic, multiplier_poly, verify_section};
use cubic_sections::genus::{genus_table, table_markdown};
use cubic_sections::modspace::{
    moduli_invariants, normalize_marked, recover_coeffs, shorter_periods, CycleSpec, Marked,
};
use cubic_sections::reduction::{
    determinant, e0_rank_bound, fastenberg_bound, fastenberg_gamma, gram_matrix, local_table, shioda_rank,
    HeightContext,
};
use cubic_sections::sections::{mw_point, mw_to_ab, n1_section, square_root_example, MWElement, Model, SectionTriple};
use cubic_sections::verify::{self, VerifyConfig};
use serde_json::{json, Value};
use thiserror::Error;

use args::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {msg}")]
    Input { path: PathBuf, msg: String },
    #[error(transparent)]
    Core(#[from] cubic_sections::Error),
}

impl CliError {
    /// 2 for bad invocations or input, 1 for failures of the computation itself.
    pub fn exit_code(&self) -> i32 {
        use cubic_sections::Error as E;
        match self {
            CliError::Usage(_) | CliError::Input { .. } => 2,
            CliError::Core(E::Argument(_) | E::Config(_) | E::Algebra(cubic_algebra::AlgebraError::Parse(_))) => 2,
            CliError::Core(_) => 1,
        }
    }
}

impl From<cubic_algebra::AlgebraError> for CliError {
    fn from(e: cubic_algebra::AlgebraError) -> Self {
        CliError::Core(e.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Settings after merging flags over the optional config file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub prime_floor: u64,
    pub threads: Option<usize>,
    pub timings: bool,
}

impl RunConfig {
    pub fn resolve(g: &GlobalArgs) -> CliResult<Self> {
        let file = match &g.config {
            Some(p) => read_json(p)?,
            None => json!({}),
        };
        let num = |k: &str| -> CliResult<Option<u64>> {
            match file.get(k) {
                None | Some(Value::Null) => Ok(None),
                Some(v) => v.as_u64().map(Some).ok_or_else(|| CliError::Usage(format!("config key {k:?} must be a non-negative integer"))),
            }
        };
        let file_format = match file.get("format").and_then(Value::as_str) {
            None => None,
            Some("text") => Some(Format::Text),
            Some("json") => Some(Format::Json),
            Some("markdown") => Some(Format::Markdown),
            Some(other) => return Err(CliError::Usage(format!("unknown format {other:?} in config"))),
        };
        let defaults = VerifyConfig::default();
        Ok(RunConfig {
            format: g.format.or(file_format).unwrap_or(Format::Text),
            seed: g.seed.or(num("seed")?).unwrap_or(defaults.seed),
            prime_floor: g.prime_floor.or(num("prime_floor")?).unwrap_or(defaults.prime_floor),
            threads: g.threads.or(num("threads")?.map(|n| n as usize)),
            timings: g.timings || file.get("timings").and_then(Value::as_bool).unwrap_or(false),
        })
    }

    fn verify_config(&self) -> VerifyConfig {
        VerifyConfig { prime_floor: self.prime_floor, seed: self.seed }
    }
}

/// A command's result in every output format.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub markdown: Option<String>,
    /// False when a verification failed.
    pub ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, markdown: None, ok: true }
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
            Format::Markdown => self.markdown.clone().unwrap_or_else(|| self.text.clone()),
            Format::Text => self.text.clone(),
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let input = |msg: String| CliError::Input { path: path.to_path_buf(), msg };
    let s = fs::read_to_string(path).map_err(|e| input(e.to_string()))?;
    serde_json::from_str(&s).map_err(|e| input(e.to_string()))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} {x:?} in {s:?}"))))
        .collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> CliResult<Output> {
    let cfg = RunConfig::resolve(&cli.global)?;
    if let Some(n) = cfg.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Dynatomic { n, json, multiplier } => cmd_dynatomic(*n, *json, *multiplier),
        Command::VerifySection { file, n } => cmd_verify_section(file, *n),
        Command::Curve(c) => cmd_curve(c),
        Command::Tate { curve, base_exp } => cmd_tate(*curve, *base_exp),
        Command::Height { points, base_exp } => cmd_height(points, *base_exp),
        Command::RankBounds { n } => cmd_rank_bounds(n),
        Command::Sections(c) => cmd_sections(c),
        Command::Genus(GenusCommand::Table { max_n, json, markdown }) => {
            let mut out = cmd_genus(*max_n)?;
            // the subcommand's own flags act like --format
            if *json {
                out.text = serde_json::to_string_pretty(&out.json).expect("serializable");
            } else if *markdown {
                out.text = out.markdown.clone().unwrap_or_default();
            }
            Ok(out)
        }
        Command::Modspace(c) => cmd_modspace(c),
        Command::Certify(c) => cmd_certify(c, &cfg),
        Command::VerifyAll { only } => cmd_verify_all(only.as_deref(), &cfg),
    }
}

fn cmd_dynatomic(n: u32, as_json: bool, with_multiplier: bool) -> CliResult<Output> {
    if n == 0 {
        return Err(CliError::Usage("--N must be positive".into()));
    }
    let phi = dynatomic(n)?;
    let mut js = json!({
        "N": n,
        "degree_z": phi.degree_in("z"),
        "terms": phi.num_terms(),
        "phi": poly_to_json(&phi),
    });
    let mut text = if as_json {
        serde_json::to_string_pretty(&poly_to_json(&phi)).expect("serializable")
    } else {
        format!("Phi_{n} = {phi}")
    };
    if with_multiplier {
        let m = multiplier_poly(n)?;
        js["multiplier"] = poly_to_json(&m);
        text += &if as_json {
            format!("\n{}", serde_json::to_string_pretty(&poly_to_json(&m)).expect("serializable"))
        } else {
            format!("\nmultiplier_{n} = {m}")
        };
    }
    Ok(Output::new(js, text))
}

fn section_output(t: &SectionTriple, n: u32) -> CliResult<Output> {
    let rep = verify_section(t, n)?;
    let text = format!(
        "m = {}, N = {n}\nPhi_N(a, b, z1) = 0: {}\nmultiplier = {}^{}: {}",
        t.m,
        yes(rep.phi_zero),
        t.w,
        t.m,
        yes(rep.multiplier_ok)
    );
    let js = json!({"m": t.m, "N": n, "phi_zero": rep.phi_zero, "multiplier_ok": rep.multiplier_ok, "ok": rep.ok()});
    Ok(Output { ok: rep.ok(), ..Output::new(js, text) })
}

fn read_triple(path: &Path) -> CliResult<SectionTriple> {
    let v = read_json(path)?;
    SectionTriple::from_json(&v).map_err(|e| CliError::Input { path: path.to_path_buf(), msg: e.to_string() })
}

fn cmd_verify_section(file: &Path, n: Option<u32>) -> CliResult<Output> {
    let t = read_triple(file)?;
    let n = n.unwrap_or(t.n);
    section_output(&t, n)
}

fn model_curve(m: ModelName) -> WeierstrassCurve {
    match m {
        ModelName::E0 => e0(),
        ModelName::E1 => e1(),
        ModelName::Short => e0_short(),
        ModelName::Appendix12 => over_root(&e0_short(), 12),
        ModelName::Appendix24 => over_root(&e0_short(), 24),
    }
}

fn cmd_curve(c: &CurveCommand) -> CliResult<Output> {
    match c {
        CurveCommand::VerifyGenerators => {
            let g = generators_over(12)?;
            let e = over_root(&e0(), 12);
            let es = over_root(&e0_short(), 12);
            let mc = short_model_change();
            let mut rows = Vec::new();
            let mut ok = true;
            for (name, p) in g.all() {
                let img = mc.map_point(p);
                let (on_e0, on_short) = (e.on_curve(p), es.on_curve(&img));
                ok &= on_e0 && on_short;
                rows.push((name, on_e0, on_short, p.clone(), img));
            }
            let o1 = e.order_up_to(&g.t1, 4)?;
            let o2 = e.order_up_to(&g.t2, 4)?;
            ok &= o1 == Some(2) && o2 == Some(2);
            let mut text: Vec<String> = rows
                .iter()
                .map(|(n, a, b, p, _)| format!("{n}: on E0 {}, on short model {}: {p}", yes(*a), yes(*b)))
                .collect();
            text.push(format!("order of T1: {o1:?}, order of T2: {o2:?}"));
            let js = json!({
                "generators": rows.iter().map(|(n, a, b, p, img)| json!({
                    "name": n, "on_e0": a, "on_short": b, "point": p.to_json(), "short_point": img.to_json()
                })).collect::<Vec<_>>(),
                "torsion_orders": [o1, o2],
                "ok": ok,
            });
            Ok(Output { ok, ..Output::new(js, text.join("\n")) })
        }
        CurveCommand::MultMap { m, model } => {
            let e = model_curve(*model);
            let map = x_mult_map(&e, *m)?;
            let js = json!({"m": m, "curve": e.to_json(), "map": rf_to_json(&map)});
            Ok(Output::new(js, format!("x([{m}] P) = {map}")))
        }
        CurveCommand::IsogenyCheck => {
            let rep = verify_isogeny(&e1_to_e0())?;
            let dual = dual_composes_to_doubling()?;
            let ok = rep.ok() && dual;
            let text = format!(
                "E1 -> E0 maps the curve into the curve: {}\nkernel (0,0) -> O: {}\nO -> O: {}\ndual composes to doubling: {}",
                yes(rep.equation_holds),
                yes(rep.kernel_to_identity),
                yes(rep.identity_to_identity),
                yes(dual)
            );
            let js = json!({
                "equation_holds": rep.equation_holds,
                "kernel_to_identity": rep.kernel_to_identity,
                "identity_to_identity": rep.identity_to_identity,
                "dual_composes_to_doubling": dual,
                "ok": ok,
            });
            Ok(Output { ok, ..Output::new(js, text) })
        }
    }
}

fn cmd_tate(curve: CurveName, n: u32) -> CliResult<Output> {
    if n == 0 {
        return Err(CliError::Usage("--base-exp must be positive".into()));
    }
    let base = match curve {
        CurveName::E0 => e0(),
        CurveName::E1 => e1(),
        CurveName::Short => e0_short(),
    };
    let e = if n == 1 { base } else { over_root(&base, n) };
    let data = local_table(&e, &k12())?;
    let mut text = vec![format!("{:<24} {:<6} {:>3} {:>3} {:>3}", "place", "type", "m", "f", "e")];
    let mut md = vec!["| place | type | m | f | e |".to_string(), "|---|---|---|---|---|".to_string()];
    for ld in &data {
        let (p, k) = (ld.place.to_string(), ld.kodaira.to_string());
        text.push(format!("{p:<24} {k:<6} {:>3} {:>3} {:>3}", ld.m, ld.f, ld.e));
        md.push(format!("| {p} | {k} | {} | {} | {} |", ld.m, ld.f, ld.e));
    }
    let js = json!({"base_exp": n, "fibres": data.iter().map(|ld| ld.to_json()).collect::<Vec<_>>()});
    Ok(Output { markdown: Some(md.join("\n")), ..Output::new(js, text.join("\n")) })
}

/// The named points over `lambda = t^n` and the curve they live on.
fn named_points(names: &[String], n: u32) -> CliResult<(WeierstrassCurve, Vec<CurvePoint>)> {
    let e = over_root(&e0(), n);
    let unknown = |name: &str| CliError::Usage(format!("point {name} is not available over t^{n} = lambda"));
    let mut out = Vec::new();
    for name in names {
        let p = if n.is_multiple_of(12) {
            let g = generators_over(n)?;
            let found = g.all().into_iter().find(|(k, _)| *k == name.as_str()).map(|(_, p)| p.clone());
            found
        } else if name == "T1" {
            Some(CurvePoint::affine(RationalFunction::zero(e.vars()), RationalFunction::zero(e.vars())))
        } else if n == 4 && name == "P" {
            Some(p_k4()?)
        } else if n == 3 {
            let (r1, r2, _) = generators_k3()?;
            match name.as_str() {
                "R1" => Some(r1),
                "R2" => Some(r2),
                _ => None,
            }
        } else {
            None
        };
        out.push(p.ok_or_else(|| unknown(name))?);
    }
    Ok((e, out))
}

fn cmd_height(points: &str, n: u32) -> CliResult<Output> {
    let names: Vec<String> = points.split(',').map(|s| s.trim().to_string()).collect();
    let (e, pts) = named_points(&names, n)?;
    let ctx = HeightContext::new(&e)?;
    let refs: Vec<&CurvePoint> = pts.iter().collect();
    let g = gram_matrix(&e, &refs, &ctx)?;
    let det = determinant(&g);
    let row = |r: &[Rat]| r.iter().map(Rat::to_string).collect::<Vec<_>>().join(", ");
    let mut text: Vec<String> = names.iter().zip(&g).map(|(n, r)| format!("{n}: [{}]", row(r))).collect();
    text.push(format!("det = {det}"));
    let js = json!({
        "base_exp": n,
        "points": names,
        "gram": g.iter().map(|r| r.iter().map(rat_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "determinant": rat_to_json(&det),
    });
    Ok(Output::new(js, text.join("\n")))
}

fn cmd_rank_bounds(ns: &str) -> CliResult<Output> {
    let ns: Vec<u64> = parse_list(ns, "exponent")?;
    let d1 = local_table(&e0(), &k12())?;
    let gamma = fastenberg_gamma(&d1)?;
    let mut rows = Vec::new();
    for &n in &ns {
        rows.push((n, fastenberg_bound(n, &gamma, false)?, e0_rank_bound(n)?));
    }
    let rational = shioda_rank(10, &d1);
    let k3 = shioda_rank(20, &local_table(&over_root(&e0(), 6), &k12())?);
    let mut text = vec![format!("gamma = {gamma}"), "n  raw  improved".to_string()];
    text.extend(rows.iter().map(|(n, r, i)| format!("{n:<2} {r:<4} {i}")));
    text.push(format!("Shioda rank, rational surface: {}", rational.rank));
    text.push(format!("Shioda rank, K3 surface (lambda = t^6): {}", k3.rank));
    let js = json!({
        "gamma": rat_to_json(&gamma),
        "bounds": rows.iter().map(|(n, r, i)| json!({"n": n, "raw": r, "improved": i})).collect::<Vec<_>>(),
        "shioda_rank_rational": rational.rank,
        "shioda_rank_k3": k3.rank,
    });
    Ok(Output::new(js, text.join("\n")))
}

fn parse_rational(s: &str) -> CliResult<Coeff> {
    let p = parse_poly(s, &vars(&[]), None)?;
    p.constant_value().ok_or_else(|| CliError::Usage(format!("{s:?} is not a rational number")))
}

fn triple_output(t: &SectionTriple) -> CliResult<Output> {
    let mut out = section_output(t, t.n)?;
    out.text = format!("a = {}\nb = {}\nz1 = {}\n{}", t.a, t.b, t.z1, out.text);
    out.json["triple"] = t.to_json();
    Ok(out)
}

fn cmd_sections(c: &SectionsCommand) -> CliResult<Output> {
    match c {
        SectionsCommand::N1 { s } => {
            let value = parse_rational(s)?;
            triple_output(&n1_section(&RationalFunction::constant(&vars(&[LAMBDA]), value)))
        }
        SectionsCommand::Example => triple_output(&square_root_example()),
        SectionsCommand::Verify { file } => {
            let t = read_triple(file)?;
            section_output(&t, t.n)
        }
        SectionsCommand::Mw { coeffs, to_ab, model } => {
            let el = MWElement::parse(coeffs)?;
            let m = match model {
                PointModel::E0 => Model::E0Long,
                PointModel::Short => Model::AppendixShort,
            };
            let p = mw_point(&el, m)?;
            let mut text = vec![format!("{el} = {p}")];
            let mut js = json!({"element": el.to_string(), "point": p.to_json()});
            if *to_ab {
                let (a, b) = mw_to_ab(&el)?;
                text.push(format!("a = {a}\nb = {b}"));
                js["a"] = rf_to_json(&a);
                js["b"] = rf_to_json(&b);
            }
            Ok(Output::new(js, text.join("\n")))
        }
    }
}

fn cmd_genus(max_n: u32) -> CliResult<Output> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-N must be positive".into()));
    }
    let rows = genus_table(max_n)?;
    let md = table_markdown(&rows);
    let cell = |b: &Option<cubic_sections::genus::GenusBound>| b.as_ref().map_or("-".to_string(), |g| g.value.to_string());
    let mut text = vec!["N  X1(N)  X0(N)  multiplier".to_string()];
    for r in &rows {
        text.push(format!("{:<2} {:<6} {:<6} {}", r.n, r.x1.value, cell(&r.x0), cell(&r.p1)));
    }
    let js = json!({"rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>()});
    Ok(Output { markdown: Some(md), ..Output::new(js, text.join("\n")) })
}

fn coeffs_text(cs: &[Coeff]) -> String {
    cs.iter().map(Coeff::to_string).collect::<Vec<_>>().join(", ")
}

fn coeffs_json(cs: &[Coeff]) -> Value {
    Value::Array(cs.iter().map(|c| coeff_to_json(c, c.field())).collect())
}

fn cmd_modspace(c: &ModspaceCommand) -> CliResult<Output> {
    match c {
        ModspaceCommand::Recover { spec } => {
            let v = read_json(spec)?;
            let s = CycleSpec::from_json(&v).map_err(|e| CliError::Input { path: spec.clone(), msg: e.to_string() })?;
            let f = recover_coeffs(&s)?;
            let short = shorter_periods(&f, &s);
            let text = format!(
                "a_0..a_{} = [{}]\nfirst cycle collapses at: {short:?}",
                s.d,
                coeffs_text(&f)
            );
            Ok(Output::new(json!({"coeffs": coeffs_json(&f), "shorter_periods": short}), text))
        }
        ModspaceCommand::Normalize { file } => {
            let v = read_json(file)?;
            let bad = |msg: String| CliError::Input { path: file.clone(), msg };
            let list = |k: &str| -> CliResult<Vec<Coeff>> {
                v.get(k)
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad(format!("needs a list {k:?}")))?
                    .iter()
                    .map(|x| coeff_from_json(x, None).map_err(|e| bad(e.to_string())))
                    .collect()
            };
            let x = Marked { coeffs: list("coeffs")?, points: list("points").unwrap_or_default() };
            let (phi, y) = normalize_marked(&x)?;
            let mut text = vec![
                format!("phi(z) = ({}) z + ({})", phi.alpha, phi.beta),
                format!("coeffs = [{}]", coeffs_text(&y.coeffs)),
                format!("points = [{}]", coeffs_text(&y.points)),
            ];
            let mut js = json!({
                "alpha": coeff_to_json(&phi.alpha, phi.alpha.field()),
                "beta": coeff_to_json(&phi.beta, phi.beta.field()),
                "coeffs": coeffs_json(&y.coeffs),
                "points": coeffs_json(&y.points),
            });
            if let Ok(inv) = moduli_invariants(&y.coeffs) {
                text.push(format!("invariants = [{}]", coeffs_text(&inv)));
                js["invariants"] = coeffs_json(&inv);
            }
            Ok(Output::new(js, text.join("\n")))
        }
    }
}

fn mode_of(m: CertifyMode) -> Mode {
    match m {
        CertifyMode::NoLinearFactor => Mode::NoLinearFactor,
        CertifyMode::Strict => Mode::GeometricIrreducibility,
    }
}

fn report_line(r: &CaseReport, timings: bool) -> String {
    let prime = r.prime.map_or("-".to_string(), |p| p.to_string());
    let mut s = format!("{:<16} {:<13} p = {:<6} degrees {:?}", r.case.to_string(), r.verdict.label(), prime, r.degrees);
    if let Some(info) = r.to_json()["info"].as_str().filter(|s| !s.is_empty()) {
        s += &format!("  {info}");
    }
    if timings {
        s += &format!("  ({} ms)", r.millis);
    }
    s
}

fn report_json(r: &CaseReport, timings: bool) -> Value {
    let mut v = r.to_json();
    if !timings {
        v.as_object_mut().expect("object").remove("millis");
    }
    v
}

fn cmd_certify(c: &CertifyCommand, cfg: &RunConfig) -> CliResult<Output> {
    let ctx = certify::choose_prime(cfg.prime_floor, certify::DEFAULT_PRIME_CAP)?;
    let (reports, report_path) = match c {
        CertifyCommand::Lemma { kind, mode, retries, report } => {
            let kind = CaseKind::parse(kind)?;
            (certify::certify_lemma(kind, mode_of(*mode), &ctx, *retries)?, report.clone())
        }
        CertifyCommand::Case { kind, coeffs, mode, retries } => {
            let kind = CaseKind::parse(kind)?;
            let cs: Vec<u8> = parse_list(coeffs, "coefficient")?;
            let case = CaseDescriptor::new(kind, cs)?;
            (vec![certify::certify_case(&case, &ctx, mode_of(*mode), *retries)?], None)
        }
    };
    // the all-zero case is expected to be reducible
    let ok = reports.iter().all(|r| r.case.is_trivial() || r.verdict.is_certified());
    if let Some(path) = report_path {
        let full = json!({
            "prime_floor": cfg.prime_floor,
            "first_prime": ctx.p,
            "cases": reports.iter().map(|r| report_json(r, true)).collect::<Vec<_>>(),
        });
        fs::write(&path, serde_json::to_string_pretty(&full).expect("serializable") + "\n")
            .map_err(|e| CliError::Input { path: path.clone(), msg: e.to_string() })?;
    }
    let text: Vec<String> = reports.iter().map(|r| report_line(r, cfg.timings)).collect();
    let js = json!({
        "first_prime": ctx.p,
        "ok": ok,
        "cases": reports.iter().map(|r| report_json(r, cfg.timings)).collect::<Vec<_>>(),
    });
    Ok(Output { ok, ..Output::new(js, text.join("\n")) })
}

fn cmd_verify_all(only: Option<&str>, cfg: &RunConfig) -> CliResult<Output> {
    let wanted: Option<Vec<u8>> = only.map(|s| parse_list(s, "criterion")).transpose()?;
    let vc = cfg.verify_config();
    let mut results = Vec::new();
    for c in verify::criteria() {
        if wanted.as_ref().is_some_and(|w| !w.contains(&c.id)) {
            continue;
        }
        results.push(c.run(&vc));
    }
    if let Some(w) = &wanted {
        if let Some(bad) = w.iter().find(|id| !results.iter().any(|r| r.id == **id)) {
            return Err(CliError::Usage(format!("no criterion {bad}")));
        }
    }
    let ok = results.iter().all(|r| r.passed());
    let mut text = Vec::new();
    let mut md = vec!["| criterion | result | title |".to_string(), "|---|---|---|".to_string()];
    for r in &results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let time = if cfg.timings { format!(" ({} ms)", r.millis) } else { String::new() };
        text.push(format!("criterion {}: {status} {}{time}", r.id, r.title));
        if let Some(e) = &r.error {
            text.push(format!("    error: {e}"));
        }
        for ch in r.checks.iter().filter(|ch| !ch.passed) {
            text.push(format!("    - {}: {}", ch.name, ch.note));
        }
        md.push(format!("| {} | {status} | {} |", r.id, r.title));
    }
    let mut js = verify::report_json(&vc, &results);
    if !cfg.timings {
        for c in js["criteria"].as_array_mut().expect("array") {
            c.as_object_mut().expect("object").remove("millis");
        }
    }
    Ok(Output { ok, markdown: Some(md.join("\n")), ..Output::new(js, text.join("\n")) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[test]
    fn defaults_and_overrides() {
        let cli = Cli::parse_from(["cubic-sections", "genus", "table"]);
        let cfg = RunConfig::resolve(&cli.global).unwrap();
        assert_eq!((cfg.format, cfg.seed, cfg.prime_floor), (Format::Text, 2, 10_000));
        let cli = Cli::parse_from(["cubic-sections", "--seed", "9", "--format", "json", "genus", "table"]);
        let cfg = RunConfig::resolve(&cli.global).unwrap();
        assert_eq!((cfg.format, cfg.seed), (Format::Json, 9));
    }

    #[test]
    fn exit_codes() {
        use cubic_sections::Error as E;
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(E::Argument("x".into())).exit_code(), 2);
        assert_eq!(CliError::Core(E::Verification("x".into())).exit_code(), 1);
        assert_eq!(CliError::Core(E::Pole("x".into())).exit_code(), 1);
    }

    #[test]
    fn genus_output_formats() {
        let cli = Cli::parse_from(["cubic-sections", "genus", "table", "--max-N", "4"]);
        let out = run(&cli).unwrap();
        assert!(out.ok);
        assert!(out.render(Format::Text).contains("11"));
        assert!(out.render(Format::Markdown).starts_with("| N |"));
        assert_eq!(out.json["rows"].as_array().unwrap().len(), 4);
    }
}
