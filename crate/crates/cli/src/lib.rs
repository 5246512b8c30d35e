//! Query grammar, report format and driver for the `endotype` binary.

use std::fmt;
use std::str::FromStr;

use endotype_core::algebra_model::{build_algebra, Borel, Family, Weight};
use endotype_core::bw_monoid::{Endotype, SplitsAs};
use endotype_core::engine::{classify, Classification, Route};
use endotype_core::linalg::Matrix;
use endotype_core::real_forms::{make_involution, InvolutionSpec, Recipe};
use endotype_core::{Error, GR};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub borel: Option<String>,
    pub form: String,
    pub tau: InvolutionSpec,
    pub weight: Vec<GR>,
    pub route: Route,
}

const KEYS: [&str; 5] = ["algebra", "borel", "form", "weight", "route"];

/// `key=value` pairs separated by whitespace; a token without `=` continues
/// the previous value.
pub fn parse_query(text: &str) -> Result<Query, ParseError> {
    let mut fields: Vec<(String, usize, String)> = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let pos = offset + text[offset..].find(tok).unwrap();
        offset = pos + tok.len();
        match tok.split_once('=') {
            Some((k, v)) => {
                if !KEYS.contains(&k) {
                    return perr(pos, format!("unknown key {k:?}"));
                }
                if fields.iter().any(|(key, _, _)| key == k) {
                    return perr(pos, format!("duplicate key {k:?}"));
                }
                fields.push((k.to_string(), pos + k.len() + 1, v.to_string()));
            }
            None => match fields.last_mut() {
                Some((_, _, v)) => v.push_str(tok),
                None => return perr(pos, "expected key=value"),
            },
        }
    }
    let get = |k: &str| fields.iter().find(|(key, _, _)| key == k).map(|(_, p, v)| (*p, v.as_str()));
    let Some((apos, alg)) = get("algebra") else { return perr(text.len(), "missing key \"algebra\"") };
    let (family, m, n) = parse_algebra(alg).or_else(|msg| perr(apos, msg))?;
    let model = build_algebra(family, m, n).or_else(|e| perr(apos, e.to_string()))?;
    let borel = match get("borel") {
        Some((p, w)) => {
            if w.is_empty() || !w.bytes().all(|b| b == b'e' || b == b'd') {
                return perr(p, format!("bad shuffle word {w:?}"));
            }
            Some(w.to_string())
        }
        None => None,
    };
    let Some((fpos, form)) = get("form") else { return perr(text.len(), "missing key \"form\"") };
    let tau = parse_form(form, model.m, model.n, family == Family::Q).map_err(|(p, msg)| ParseError { pos: fpos + p, msg })?;
    let Some((wpos, wtext)) = get("weight") else { return perr(text.len(), "missing key \"weight\"") };
    let weight = parse_list(wtext).map_err(|(p, msg)| ParseError { pos: wpos + p, msg })?;
    if weight.len() != model.rank() {
        return perr(wpos, format!("arity: {} expects {} weight coordinates, got {}", model.name(), model.rank(), weight.len()));
    }
    let route = match get("route") {
        Some((p, r)) => r.parse().or_else(|e: Error| perr(p, e.to_string()))?,
        None => Route::Auto,
    };
    Ok(Query { family, m, n, borel, form: form.to_string(), tau, weight, route })
}

fn parse_algebra(s: &str) -> Result<(Family, usize, usize), String> {
    let Some((name, rest)) = s.split_once('(') else { return Err(format!("bad algebra {s:?}")) };
    let Some(args) = rest.strip_suffix(')') else { return Err(format!("bad algebra {s:?}")) };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad size {t:?}"));
    let sizes = match args.split_once('|') {
        Some((a, b)) => (num(a)?, Some(num(b)?)),
        None => (num(args)?, None),
    };
    match (name, sizes) {
        ("gl", (m, Some(n))) => Ok((Family::GL, m, n)),
        ("sl", (m, Some(n))) => Ok((Family::SL, m, n)),
        ("psl", (m, Some(n))) => Ok((Family::PSL, m, n)),
        ("gl", (m, None)) => Ok((Family::ReductiveGL, m, 0)),
        ("sl", (m, None)) => Ok((Family::SL, m, 0)),
        ("q", (n, None)) => Ok((Family::Q, 0, n)),
        _ => Err(format!("unknown family {s:?}")),
    }
}

type At<T> = Result<T, (usize, String)>;

/// Comma-separated Gaussian rationals.
fn parse_list(s: &str) -> At<Vec<GR>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for part in s.split(',') {
        out.push(GR::from_str(part).map_err(|e| (pos + e.pos, e.to_string()))?);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Gaussian rational or a bare unit `i`, `-i`.
fn parse_entry(s: &str, pos: usize) -> At<GR> {
    match s {
        "i" | "+i" => Ok(GR::i()),
        "-i" => Ok(-GR::i()),
        _ => GR::from_str(s).map_err(|e| (pos + e.pos, e.to_string())),
    }
}

fn parse_entries(s: &str, pos: usize) -> At<Vec<GR>> {
    let mut out = Vec::new();
    let mut p = pos;
    for part in s.split(',') {
        out.push(parse_entry(part, p)?);
        p += part.len() + 1;
    }
    Ok(out)
}

fn parse_form(s: &str, m: usize, n: usize, is_q: bool) -> At<InvolutionSpec> {
    let (name, args, apos) = match s.split_once('(') {
        Some((name, rest)) => match rest.strip_suffix(')') {
            Some(a) => (name, Some(a), name.len() + 1),
            None => return Err((s.len(), "missing ')'".into())),
        },
        None => (s, None, 0),
    };
    let k = m + n;
    let sizes = |a: &str| -> At<[usize; 4]> {
        let bad = || (apos, format!("expected p,q|r,s, got {a:?}"));
        let (x, y) = a.split_once('|').ok_or_else(bad)?;
        let (p, q) = x.split_once(',').ok_or_else(bad)?;
        let (r, t) = y.split_once(',').ok_or_else(bad)?;
        let mut out = [0; 4];
        for (o, v) in out.iter_mut().zip([p, q, r, t]) {
            *o = v.parse().map_err(|_| bad())?;
        }
        if out[0] + out[1] != m || out[2] + out[3] != n {
            return Err((apos, format!("signature does not add up to ({m}|{n})")));
        }
        Ok(out)
    };
    match (name, args) {
        ("split", None) => Ok(InvolutionSpec::Split),
        ("qbar", None) => Ok(InvolutionSpec::QBar),
        ("pebar", None) => Ok(InvolutionSpec::PeBar),
        ("compact", None) if !is_q => Ok(InvolutionSpec::compact(m, n)),
        ("unitary", Some(a)) => {
            let d = parse_entries(a, apos)?;
            if d.len() != k {
                return Err((apos, format!("arity: unitary expects {k} entries, got {}", d.len())));
            }
            Ok(InvolutionSpec::Unitary(d))
        }
        ("u", Some(a)) => {
            let [p, q, r, t] = sizes(a)?;
            Ok(InvolutionSpec::unitary_pqrs(p, q, r, t))
        }
        ("hyperbolic", Some(a)) => {
            let [p, q, r, t] = sizes(a)?;
            Ok(InvolutionSpec::unitary_hyperbolic(p, q, r, t))
        }
        ("custom", Some(a)) => {
            let mut parts = a.split(';');
            let rname = parts.next().unwrap_or("");
            let recipe = match rname {
                "conj" => Recipe::Conj,
                "negst" => Recipe::NegSupertranspose,
                "pi" => Recipe::PiSwap,
                "pinegst" => Recipe::PiNegSupertranspose,
                _ => return Err((apos, format!("unknown recipe {rname:?}"))),
            };
            let mut pos = apos + rname.len() + 1;
            let mut rows = Vec::new();
            for row in parts {
                rows.push(parse_entries(row, pos)?);
                pos += row.len() + 1;
            }
            let size = if is_q { 2 * m } else { k };
            if rows.len() != size || rows.iter().any(|r| r.len() != size) {
                return Err((apos, format!("arity: custom expects a {size}x{size} matrix")));
            }
            Ok(InvolutionSpec::Custom { m: Matrix::from_rows(rows), recipe })
        }
        ("qunitary", Some(a)) => {
            let Some((c, signs)) = a.split_once(';') else { return Err((apos, "expected qunitary(c;signs)".into())) };
            let phase = parse_entry(c, apos)?;
            let mut out = Vec::new();
            for t in signs.split(',') {
                match t {
                    "1" | "+1" => out.push(1),
                    "-1" => out.push(-1),
                    _ => return Err((apos + c.len() + 1, format!("bad sign {t:?}"))),
                }
            }
            if out.len() != m {
                return Err((apos, format!("arity: qunitary expects {m} signs, got {}", out.len())));
            }
            Ok(InvolutionSpec::QUnitary { signs: out, phase })
        }
        _ => Err((0, format!("unknown form {s:?}"))),
    }
}

/// Machine-readable result; `emit` and `parse_report` are inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub endotype: Endotype,
    pub divalg: String,
    pub splits: SplitsAs,
    pub lambda_b: Option<Vec<GR>>,
    pub r: Option<usize>,
    pub c_lambda: Option<GR>,
}

impl Report {
    pub fn from_classification(c: &Classification) -> Self {
        Report {
            endotype: c.endotype,
            divalg: c.report.divalg.to_string(),
            splits: c.report.splits_as,
            lambda_b: c.lambda_b.as_ref().map(|w| w.coords.clone()),
            r: c.r,
            c_lambda: c.c_lambda.clone(),
        }
    }

    pub fn emit(&self) -> String {
        let none = || "none".to_string();
        let lb = self.lambda_b.as_ref().map_or_else(none, |v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
        format!(
            "endotype: {}\ndivalg: {}\nsplits: {}\nlambdaB: {}\nr: {}\nc_lambda: {}\n",
            self.endotype,
            self.divalg,
            self.splits,
            lb,
            self.r.map_or_else(none, |r| r.to_string()),
            self.c_lambda.as_ref().map_or_else(none, |c| c.to_string()),
        )
    }
}

/// Reads the `key: value` block written by `Report::emit`; lines starting
/// with '#' are skipped.
pub fn parse_report(text: &str) -> Result<Report, ParseError> {
    const ORDER: [&str; 6] = ["endotype", "divalg", "splits", "lambdaB", "r", "c_lambda"];
    let mut vals: Vec<(usize, &str)> = Vec::new();
    let mut pos = 0;
    for line in text.lines() {
        let here = pos;
        pos += line.len() + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once(": ") else { return perr(here, "expected key: value") };
        if vals.len() >= ORDER.len() || ORDER[vals.len()] != k {
            return perr(here, format!("unexpected key {k:?}"));
        }
        vals.push((here + k.len() + 2, v));
    }
    if vals.len() != ORDER.len() {
        return perr(pos, "incomplete report");
    }
    let opt = |v: &str| if v == "none" { None } else { Some(v.to_string()) };
    let endotype = Endotype::from_str(vals[0].1).or_else(|_| perr(vals[0].0, "bad endotype"))?;
    let splits = SplitsAs::from_str(vals[2].1).or_else(|_| perr(vals[2].0, "bad split type"))?;
    let lambda_b = match opt(vals[3].1) {
        Some(s) => Some(parse_list(&s.replace(' ', "")).map_err(|(p, msg)| ParseError { pos: vals[3].0 + p, msg })?),
        None => None,
    };
    let r = match opt(vals[4].1) {
        Some(s) => Some(s.parse().or_else(|_| perr(vals[4].0, "bad r"))?),
        None => None,
    };
    let c_lambda = match opt(vals[5].1) {
        Some(s) => Some(GR::from_str(&s).map_err(|e| ParseError { pos: vals[5].0 + e.pos, msg: e.to_string() })?),
        None => None,
    };
    Ok(Report { endotype, divalg: vals[1].1.to_string(), splits, lambda_b, r, c_lambda })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub verbose: bool,
    pub verify: bool,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    /// 0 classified, 1 parse or usage error, 2 precondition, 3 internal.
    pub code: i32,
    /// Diagnostics and warnings.
    pub messages: Vec<String>,
    /// Odd-reflection trace for --verbose.
    pub trace: Vec<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_) => 2,
        Error::Invariant(_) => 3,
        _ => 1,
    }
}

fn failure(code: i32, msg: String) -> Outcome {
    Outcome { report: None, code, messages: vec![msg], trace: Vec::new() }
}

pub fn run(q: &Query, opts: Options) -> Outcome {
    let model = match build_algebra(q.family, q.m, q.n) {
        Ok(m) => m,
        Err(e) => return failure(1, e.to_string()),
    };
    let tau = match make_involution(q.tau.clone(), &model) {
        Ok(t) => t,
        Err(e) => return failure(1, e.to_string()),
    };
    let borel = match &q.borel {
        Some(w) => Borel::from_shuffle(&model, w),
        // eedd is not a Borel of sl(2|2)
        None if model.is_sl22() => Borel::from_shuffle(&model, "edde"),
        None => Ok(Borel::standard(&model)),
    };
    let borel = match borel {
        Ok(b) => b,
        Err(e) => return failure(1, e.to_string()),
    };
    let lambda = Weight::new(q.weight.clone(), model.m);
    let c = match classify(&model, &tau, &borel, &lambda, q.route) {
        Ok(c) => c,
        Err(e) => return failure(exit_code(&e), e.to_string()),
    };
    let mut out = Outcome { report: Some(Report::from_classification(&c)), code: 0, messages: c.warnings.clone(), trace: Vec::new() };
    if opts.verbose {
        let r = &c.report;
        out.trace.push(format!(
            "endotype={}; restriction stays irreducible? {} - F(W)={}",
            c.endotype,
            if r.restriction_irreducible { "yes" } else { "no" },
            match r.splits_as {
                SplitsAs::VPlusV => "V+V",
                _ => "V",
            }
        ));
        if let Some(rel) = &c.relation {
            out.trace.push(format!("borel {} tau(borel) {}", rel.borel.word(&model), rel.tau_borel.word(&model)));
            let word: Vec<String> = rel.w.word.iter().map(|j| format!("s{}", j + 1)).collect();
            out.trace.push(format!("w = {}", if word.is_empty() { "1".into() } else { word.join(" ") }));
            for (i, s) in rel.steps.iter().enumerate() {
                let mark = if c.subsequence.contains(&i) { " *" } else { "" };
                out.trace.push(format!("odd reflection {} at {}{mark}", i + 1, s.root.label(&model)));
            }
        }
        if let Some(hc) = &c.hc {
            out.trace.push(format!("HC(D_lambda) = {hc:?}"));
        }
        if let Some(sig) = &c.signature {
            out.trace.push(format!("signature {sig:?}"));
        }
    }
    if opts.verify {
        let other = if q.route == Route::Cascade { Route::Group } else { Route::Cascade };
        match classify(&model, &tau, &borel, &lambda, other) {
            Ok(o) if o.endotype != c.endotype => {
                out.code = 3;
                out.messages.push(format!("routes disagree: {} gives {}, {:?} gives {}", route_name(q.route), c.endotype, other, o.endotype));
            }
            Ok(o) => {
                let sign = |x: &Option<GR>| x.as_ref().and_then(|v| v.real_sign());
                if sign(&o.c_lambda) != sign(&c.c_lambda) {
                    out.code = 3;
                    out.messages.push("routes disagree on the sign of c_lambda".into());
                } else {
                    out.trace.push(format!("verified against the {} route", route_name(other)));
                }
            }
            Err(Error::Precondition(msg)) => out.trace.push(format!("{} route not applicable: {msg}", route_name(other))),
            Err(e) => {
                out.code = exit_code(&e);
                out.messages.push(e.to_string());
            }
        }
    }
    out
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Auto => "auto",
        Route::Group => "group",
        Route::Cascade => "cascade",
    }
}

/// Parses and runs one query line.
pub fn run_line(line: &str, opts: Options) -> Outcome {
    match parse_query(line) {
        Ok(q) => run(&q, opts),
        Err(e) => failure(1, e.to_string()),
    }
}
