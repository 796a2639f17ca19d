use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use elsvlab::branch::{normalize_lift, BranchError, Point, PolarDatum};
use elsvlab::diffgroup::{
    act_on_tail, diff_compose, nu_k, nu_k_inverse, sigma_t, sigma_t_inverse, ConeCoord, DiffError, FormalDiffeo,
    LaurentTail,
};
use elsvlab::elsv::{elsv_evaluate, ElsvError, HodgeTable, Verifier, VerifyReport};
use elsvlab::exactalg::rational::parse_rational_list;
use elsvlab::exactalg::{parse_poly, parse_poly_with, parse_rational, AlgebraError};
use elsvlab::psi::PsiEngine;
use elsvlab::symgrp::{hurwitz_brute, hurwitz_character, CharacterBudget, EnumerationBudget, HurwitzError, Profile};
use elsvlab::Rational;
use num_traits::Zero;
use serde::Serialize;

use crate::cache::Cache;
use crate::{
    BranchArgs, Budgets, CliError, Command, Format, HurwitzArgs, Method, Order, Outcome, RunConfig, SeriesOp,
    VerifyArgs, EXIT_MISMATCH, EXIT_OK,
};

impl From<HurwitzError> for CliError {
    fn from(e: HurwitzError) -> Self {
        match e {
            HurwitzError::BudgetExceeded { .. }
            | HurwitzError::CharacterBudgetExceeded { .. }
            | HurwitzError::TimeLimit { .. } => CliError::Budget(e.to_string()),
            _ => CliError::BadData(e.to_string()),
        }
    }
}

impl From<ElsvError> for CliError {
    fn from(e: ElsvError) -> Self {
        match e {
            ElsvError::Hurwitz(h) => h.into(),
            ElsvError::NoCalibrationSet { .. } => CliError::Budget(e.to_string()),
            _ => CliError::BadData(e.to_string()),
        }
    }
}

impl From<BranchError> for CliError {
    fn from(e: BranchError) -> Self {
        CliError::BadData(e.to_string())
    }
}

impl From<DiffError> for CliError {
    fn from(e: DiffError) -> Self {
        CliError::BadData(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::BadData(e.to_string())
    }
}

pub fn dispatch(cfg: &RunConfig, cache_dir: Option<&Path>) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Hurwitz(a) => cmd_hurwitz(a, cfg.format.unwrap_or(Format::Json), cache_dir),
        Command::Verify(a) => cmd_verify(a, cfg.format.unwrap_or(Format::Tsv), cache_dir),
        Command::Branch(a) => cmd_branch(a, cfg.format.unwrap_or(Format::Json)),
        Command::Series(a) => cmd_series(&a.op, cfg.format.unwrap_or(Format::Tsv)),
    }
}

fn enumeration_budget(b: &Budgets, start: Instant) -> EnumerationBudget {
    EnumerationBudget { max_d: b.max_d, max_r: b.max_r, deadline: b.time_limit.map(|s| start + Duration::from_secs(s)) }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("records serialize");
    s.push('\n');
    s
}

/// Psi engine and Hodge table, loaded from and saved to the cache if there is one.
struct Tables {
    cache: Option<Cache>,
    psi: PsiEngine,
    hodge: HodgeTable,
}

impl Tables {
    fn open(dir: Option<&Path>) -> Result<Self, CliError> {
        let psi = PsiEngine::new();
        let (cache, hodge) = match dir {
            Some(d) => {
                let c = Cache::open(d)?;
                c.load_psi(&psi)?;
                let h = c.load_hodge()?;
                (Some(c), h)
            }
            None => (None, HodgeTable::new()),
        };
        Ok(Tables { cache, psi, hodge })
    }

    fn save(&mut self) -> Result<(), CliError> {
        match &mut self.cache {
            Some(c) => c.store(&self.psi, &self.hodge),
            None => Ok(()),
        }
    }
}

/// ELSV value from the Hodge table, calibrating `(g, n)` when entries are missing.
fn elsv_value(p: &Profile, hodge: &mut HodgeTable, verifier: &mut Verifier) -> Result<Rational, CliError> {
    match elsv_evaluate(p, hodge) {
        Ok(v) => return Ok(v),
        Err(ElsvError::MissingEntries(_)) => {}
        Err(e) => return Err(e.into()),
    }
    let cal = verifier.calibration(p.g, p.n() as usize)?;
    if !cal.report.is_consistent() {
        return Err(CliError::BadData(format!(
            "calibration for (g, n) = ({}, {}) has nonzero residuals",
            cal.g, cal.n
        )));
    }
    hodge.merge(&cal.table);
    Ok(elsv_evaluate(p, hodge)?)
}

#[derive(Serialize)]
struct HurwitzRecord {
    g: u32,
    k: Vec<u32>,
    r: u32,
    method: &'static str,
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<BTreeMap<&'static str, Option<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn cmd_hurwitz(a: &HurwitzArgs, format: Format, cache_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let p = Profile::new(a.genus, a.profile.clone())?;
    let enumeration = enumeration_budget(&a.budgets, start);
    let characters = CharacterBudget { max_d: a.budgets.max_d_character };
    let needs_tables = matches!(a.method, Method::Elsv | Method::All);
    let mut tables = if needs_tables { Some(Tables::open(cache_dir)?) } else { None };

    let mut run = |m: Method| -> Result<Rational, CliError> {
        match m {
            Method::Brute => Ok(hurwitz_brute(&p, &enumeration)?),
            Method::Character => Ok(hurwitz_character(&p, &characters)?),
            _ => {
                let t = tables.as_mut().expect("tables opened for elsv");
                if p.is_unstable() {
                    return Err(CliError::BadData(format!("ELSV needs 2g - 2 + n > 0; {p} is unstable")));
                }
                let mut verifier = Verifier::new(&t.psi);
                verifier.characters = characters;
                verifier.enumeration = enumeration;
                elsv_value(&p, &mut t.hodge, &mut verifier)
            }
        }
    };

    let mut record = HurwitzRecord {
        g: p.g,
        k: p.parts().to_vec(),
        r: p.r(),
        method: a.method.as_str(),
        value: None,
        values: None,
        agree: None,
    };
    let mut code = EXIT_OK;
    if a.method == Method::All {
        let mut values = BTreeMap::new();
        let mut computed: Vec<Rational> = Vec::new();
        for m in [Method::Brute, Method::Character, Method::Elsv] {
            if m == Method::Elsv && p.is_unstable() {
                values.insert(m.as_str(), None);
                continue;
            }
            match run(m) {
                Ok(v) => {
                    values.insert(m.as_str(), Some(v.to_string()));
                    computed.push(v);
                }
                Err(CliError::Budget(_)) => {
                    values.insert(m.as_str(), None);
                }
                Err(e) => return Err(e),
            }
        }
        if computed.is_empty() {
            return Err(CliError::Budget(format!("{p} is outside every method's budget")));
        }
        let agree = computed.iter().all(|v| *v == computed[0]);
        record.value = agree.then(|| computed[0].to_string());
        record.values = Some(values);
        record.agree = Some(agree);
        if !agree {
            code = EXIT_MISMATCH;
        }
    } else {
        record.value = Some(run(a.method)?.to_string());
    }
    if let Some(t) = tables.as_mut() {
        t.save()?;
    }
    let stdout = match format {
        Format::Json => json(&record),
        Format::Tsv => {
            let mut s = String::from("g\tk\tr\tmethod\tvalue\n");
            let k: Vec<String> = record.k.iter().map(u32::to_string).collect();
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}",
                record.g,
                k.join(","),
                record.r,
                record.method,
                record.value.as_deref().unwrap_or("-")
            );
            s
        }
    };
    Ok(Outcome { stdout, code })
}

#[derive(Serialize)]
struct VerifyRow {
    g: u32,
    k: Vec<u32>,
    brute: Option<String>,
    character: Option<String>,
    elsv: String,
    equal: bool,
}

impl From<&VerifyReport> for VerifyRow {
    fn from(r: &VerifyReport) -> Self {
        VerifyRow {
            g: r.profile.g,
            k: r.profile.parts().to_vec(),
            brute: r.brute.as_ref().map(Rational::to_string),
            character: r.character.as_ref().map(Rational::to_string),
            elsv: r.elsv.to_string(),
            equal: r.is_equal(),
        }
    }
}

#[derive(Serialize)]
struct CalibrationRow {
    g: u32,
    n: usize,
    equations: usize,
    unknowns: usize,
    rank: usize,
    residuals: Vec<String>,
}

#[derive(Serialize)]
struct VerifyRecord {
    rows: Vec<VerifyRow>,
    calibrations: Vec<CalibrationRow>,
    all_equal: bool,
}

fn cmd_verify(a: &VerifyArgs, format: Format, cache_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut profiles = elsvlab::elsv::sweep_profiles(a.max_deg, a.max_genus);
    for s in &a.also {
        let p: Profile = s.parse()?;
        if p.is_unstable() {
            return Err(CliError::BadData(format!("{p} is unstable")));
        }
        if !profiles.contains(&p) {
            profiles.push(p);
        }
    }
    let mut tables = Tables::open(cache_dir)?;
    let mut rows = Vec::new();
    let mut calibrations = Vec::new();
    {
        let mut verifier = Verifier::new(&tables.psi);
        verifier.enumeration = enumeration_budget(&a.budgets, start);
        verifier.characters = CharacterBudget { max_d: a.budgets.max_d_character };
        for p in &profiles {
            let report = verifier.verify(p)?;
            rows.push(VerifyRow::from(&report));
        }
        let mut keys: Vec<(u32, usize)> = profiles.iter().map(|p| (p.g, p.n() as usize)).collect();
        keys.sort_unstable();
        keys.dedup();
        for (g, n) in keys {
            let cal = verifier.calibration(g, n)?;
            calibrations.push(CalibrationRow {
                g,
                n,
                equations: cal.report.equations,
                unknowns: cal.report.unknowns,
                rank: cal.report.rank,
                residuals: cal.report.residuals.iter().map(Rational::to_string).collect(),
            });
        }
        tables.hodge.merge(&verifier.hodge_table());
    }
    tables.save()?;
    let all_equal = rows.iter().all(|r| r.equal);
    let stdout = match format {
        Format::Json => json(&VerifyRecord { rows, calibrations, all_equal }),
        Format::Tsv => {
            let mut s = String::from("g\tk\tbrute\tcharacter\telsv\tequal\n");
            for r in &rows {
                let k: Vec<String> = r.k.iter().map(u32::to_string).collect();
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.g,
                    k.join(","),
                    r.brute.as_deref().unwrap_or("-"),
                    r.character.as_deref().unwrap_or("-"),
                    r.elsv,
                    if r.equal { "yes" } else { "NO" }
                );
            }
            for c in &calibrations {
                let residual =
                    if c.residuals.iter().all(|x| x == "0") { "0".to_string() } else { c.residuals.join(",") };
                let _ = writeln!(
                    s,
                    "# calibration g={} n={}: {} equations, {} unknowns, rank {}, residual {}",
                    c.g, c.n, c.equations, c.unknowns, c.rank, residual
                );
            }
            s
        }
    };
    Ok(Outcome { stdout, code: if all_equal { EXIT_OK } else { EXIT_MISMATCH } })
}

#[derive(Serialize)]
struct BranchRecord {
    d: usize,
    n: usize,
    r: usize,
    #[serde(rename = "P")]
    p: String,
    a: String,
    #[serde(rename = "Q")]
    q: String,
    /// Constant term of the normalized lift.
    constant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

/// The polar datum of a polynomial map: one pole at infinity.
fn polynomial_datum(expr: &str) -> Result<PolarDatum, CliError> {
    let f = parse_poly(expr, "z")?;
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Err(BranchError::ConstantMap.into());
    }
    let tail = LaurentTail::of_order(f.coeffs()[1..].to_vec())?;
    Ok(PolarDatum::new(vec![Point::Infinity], vec![tail], f.coeff(0))?)
}

fn cmd_branch(a: &BranchArgs, format: Format) -> Result<Outcome, CliError> {
    let datum = match (&a.input.datum, &a.input.poly) {
        (_, Some(expr)) => polynomial_datum(expr)?,
        (Some(path), None) => {
            let text = if path.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(format!("stdin: {e}")))?
            } else {
                std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
            };
            PolarDatum::from_json(&text)?
        }
        (None, None) => return Err(CliError::Usage("one of --datum or --poly is required".into())),
    };
    let lift = normalize_lift(&datum)?;
    let record = BranchRecord {
        d: datum.d(),
        n: datum.n(),
        r: datum.r(),
        p: lift.original.to_expr("t"),
        a: lift.shift.to_string(),
        q: lift.normalized.to_expr("t"),
        constant: lift.datum.constant.to_string(),
        note: (datum.r() == 0).then_some("empty branch divisor"),
    };
    let stdout = match format {
        Format::Json => json(&record),
        Format::Tsv => format!(
            "d\tn\tr\tP\ta\tQ\tconstant\n{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            record.d, record.n, record.r, record.p, record.a, record.q, record.constant
        ),
    };
    Ok(Outcome { stdout, code: EXIT_OK })
}

fn params(order: &Order) -> Result<BTreeMap<String, Rational>, CliError> {
    let mut out = BTreeMap::new();
    for p in &order.params {
        let (name, value) =
            p.split_once('=').ok_or_else(|| CliError::Usage(format!("--param expects name=value, got {p:?}")))?;
        let name = name.trim();
        if name.is_empty() || name == "t" || !name.chars().all(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(CliError::Usage(format!("bad parameter name {name:?}")));
        }
        out.insert(name.to_string(), parse_rational(value.trim())?);
    }
    Ok(out)
}

const MAX_SERIES_ORDER: u64 = 64;

fn order_of(order: &Order) -> Result<usize, CliError> {
    if order.k > MAX_SERIES_ORDER {
        return Err(CliError::BadData(format!("--k is limited to {MAX_SERIES_ORDER}")));
    }
    Ok(order.k as usize)
}

/// `alpha_0 t + ... + alpha_{k-1} t^k` from an expression in `t`.
fn diffeo(expr: &str, k: usize, params: &BTreeMap<String, Rational>) -> Result<FormalDiffeo, CliError> {
    let p = parse_poly_with(expr, "t", params)?;
    if !p.coeff(0).is_zero() {
        return Err(CliError::BadData(format!("{expr:?} has a constant term")));
    }
    if p.degree().unwrap_or(0) > k {
        return Err(CliError::BadData(format!("{expr:?} has degree above k = {k}")));
    }
    Ok(FormalDiffeo::new((1..=k).map(|i| p.coeff(i)).collect())?)
}

fn coords(text: &str, k: usize) -> Result<Vec<Rational>, CliError> {
    let v = parse_rational_list(text)?;
    if v.len() != k {
        return Err(CliError::BadData(format!("expected {k} coordinates, got {}", v.len())));
    }
    Ok(v)
}

fn top_down_text(c: &ConeCoord) -> String {
    c.top_down().iter().map(Rational::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct SeriesRecord {
    op: &'static str,
    k: usize,
    result: String,
}

fn cmd_series(op: &SeriesOp, format: Format) -> Result<Outcome, CliError> {
    let (name, k, result) = match op {
        SeriesOp::Compose { order, f, g } => {
            let k = order_of(order)?;
            let ps = params(order)?;
            let h = diff_compose(&diffeo(f, k, &ps)?, &diffeo(g, k, &ps)?)?;
            ("compose", k, h.to_string())
        }
        SeriesOp::Act { order, f, tail } => {
            let k = order_of(order)?;
            let ps = params(order)?;
            let rho = LaurentTail::new(coords(tail, k)?)?;
            ("act", k, act_on_tail(&diffeo(f, k, &ps)?, &rho)?.to_string())
        }
        SeriesOp::Sigma { order, inverse, x, lambda, u, alpha, coords: cs } => {
            let k = order_of(order)?;
            let ps = params(order)?;
            let lambda = parse_rational(lambda)?;
            if *inverse {
                let alpha = alpha.as_deref().ok_or_else(|| CliError::Usage("--inverse needs --alpha".into()))?;
                let cs = cs.as_deref().ok_or_else(|| CliError::Usage("--inverse needs --coords".into()))?;
                let c = ConeCoord::new(parse_rational(alpha)?, coords(cs, k)?)?;
                let (x, lambda, u) = sigma_t_inverse(&c, &lambda)?;
                ("sigma-inverse", k, format!("{x};{lambda};{u}"))
            } else {
                let x = x.as_deref().ok_or_else(|| CliError::Usage("sigma needs --x".into()))?;
                let u = u.as_deref().ok_or_else(|| CliError::Usage("sigma needs --u".into()))?;
                let c = sigma_t(&parse_rational(x)?, &lambda, &diffeo(u, k, &ps)?)?;
                ("sigma", k, c.to_string())
            }
        }
        SeriesOp::Nu { order, coords: cs } => {
            let k = order_of(order)?;
            let c = ConeCoord::new(Rational::zero(), coords(cs, k)?)?;
            ("nu", k, top_down_text(&nu_k(&c)))
        }
        SeriesOp::Nuinv { order, coords: cs, root } => {
            let k = order_of(order)?;
            let b = ConeCoord::new(Rational::zero(), coords(cs, k)?)?;
            ("nuinv", k, top_down_text(&nu_k_inverse(&b, &parse_rational(root)?)?))
        }
    };
    let stdout = match format {
        Format::Json => json(&SeriesRecord { op: name, k, result }),
        Format::Tsv => format!("{result}\n"),
    };
    Ok(Outcome { stdout, code: EXIT_OK })
}
