use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use grasspoly_core::chen::path::PathSpec;
use grasspoly_core::chen::{iterate_element, iterate_word_from, IterIntResult, OneForm, QuadOptions};
use grasspoly_core::grass::{
    build_in, check_all, check_comparison, check_coproduct_relations, check_delta_r_identity, check_integrability, check_relations,
    check_scale_all, CheckOptions, Mode, Report,
};
use grasspoly_core::polylog::Table;
use grasspoly_core::{MultSymbol, MultTensor};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::{Common, Format, Function, IntegrateArgs, Suite, TableArgs, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    Core(grasspoly_core::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => e.exit_code() as u8,
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<grasspoly_core::Error> for CliError {
    fn from(e: grasspoly_core::Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Core(grasspoly_core::Error::Parse(msg.into()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(common: &Common, bytes: &[u8]) -> Result<()> {
    match &common.out {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(bytes).map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn emit_json(common: &Common, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    emit(common, s.as_bytes())
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))
}

fn check_weight(n: usize, common: &Common) -> Result<()> {
    if n == 0 {
        return Err(parse_err("weight must be at least 1"));
    }
    if n >= 4 && !common.allow_large {
        return Err(CliError::Core(grasspoly_core::Error::Contract(format!(
            "weight {n} is expensive (I_{n} has (2n)! terms before cancellation); pass --allow-large to run it"
        ))));
    }
    Ok(())
}

pub fn element(n: usize, common: &Common) -> Result<u8> {
    check_weight(n, common)?;
    let e = build_in(n)?;
    match common.format {
        Format::Json => {
            let mut s = e.tensor().to_json();
            s.push('\n');
            emit(common, s.as_bytes())?;
        }
        Format::Csv => {
            let slots: Vec<String> = (1..=n).map(|k| format!("slot_{k}")).collect();
            let mut header = vec!["coeff"];
            header.extend(slots.iter().map(String::as_str));
            let rows: Vec<Vec<String>> = e
                .tensor()
                .iter()
                .map(|(term, c)| std::iter::once(c.to_string()).chain(term.iter().map(|s| s.to_string())).collect())
                .collect();
            emit(common, &csv_bytes(&header, &rows)?)?;
        }
    }
    Ok(0)
}

fn run_suite(suite: Suite, n: usize, opts: &CheckOptions) -> Result<Vec<Report>> {
    Ok(match suite {
        Suite::Comparison => vec![check_comparison(n, opts)?],
        Suite::Relations => check_relations(n, opts)?,
        Suite::Scale => check_scale_all(n, opts)?,
        Suite::Integrability => (1..n).map(|k| check_integrability(n, k, opts)).collect::<std::result::Result<_, _>>()?,
        Suite::Deltar => vec![check_delta_r_identity(opts)?],
        Suite::Coproduct => check_coproduct_relations(n)?,
        Suite::All => check_all(n, opts)?,
    })
}

pub fn verify(args: &VerifyArgs, common: &Common) -> Result<u8> {
    let mode: Mode = args.mode.parse()?;
    let opts = CheckOptions { mode, seed: common.seed, points: args.points, mutate: args.mutate, ..CheckOptions::default() };
    let mut reports = Vec::new();
    if args.suite == Suite::Deltar {
        reports.push(check_delta_r_identity(&opts)?);
    } else {
        for &n in &args.n {
            check_weight(n, common)?;
            reports.extend(run_suite(args.suite, n, &opts)?);
        }
        if args.suite == Suite::All {
            reports.push(check_delta_r_identity(&opts)?);
        }
    }
    if !common.timing {
        for r in &mut reports {
            r.elapsed_ms = None;
        }
    }
    let passed = reports.iter().all(Report::passed);
    match common.format {
        Format::Json => emit_json(common, &json!({ "passed": passed, "reports": reports }))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.check.clone(),
                        r.n.to_string(),
                        if r.passed() { "pass" } else { "fail" }.to_string(),
                        r.residue_terms.to_string(),
                        r.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            emit(common, &csv_bytes(&["check", "n", "status", "residue_terms", "elapsed_ms"], &rows)?)?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn parse_form(v: &Value) -> Result<OneForm> {
    let items = v.as_array().ok_or_else(|| parse_err("a 1-form is a list of [symbol, exponent] pairs"))?;
    items
        .iter()
        .map(|p| {
            let sym = p.get(0).and_then(Value::as_str).ok_or_else(|| parse_err(format!("bad factor {p}")))?;
            let exp = p.get(1).and_then(Value::as_i64).ok_or_else(|| parse_err(format!("bad exponent in {p}")))?;
            Ok((sym.parse::<MultSymbol>()?, exp))
        })
        .collect()
}

fn parse_word(v: &Value) -> Result<Vec<OneForm>> {
    let forms = v.as_array().ok_or_else(|| parse_err("a word is a list of 1-forms"))?;
    if forms.is_empty() {
        return Err(parse_err("a word needs at least one 1-form"));
    }
    forms.iter().map(parse_form).collect()
}

fn inline_or_file(s: &str) -> Result<String> {
    if s.trim_start().starts_with('[') || s.trim_start().starts_with('{') {
        Ok(s.to_string())
    } else {
        read(Path::new(s))
    }
}

fn parse_element(s: &str) -> Result<MultTensor> {
    if let Some(n) = s.strip_prefix('I').and_then(|d| d.parse::<usize>().ok()) {
        return Ok(build_in(n)?.into_tensor());
    }
    Ok(MultTensor::from_json(&inline_or_file(s)?)?)
}

enum Integrand {
    Word(Vec<OneForm>),
    Element(MultTensor),
}

fn json_of(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

pub fn integrate(args: &IntegrateArgs, common: &Common) -> Result<u8> {
    let opts = QuadOptions { max_panels: args.max_panels, ..QuadOptions::with_tol(args.tol) };
    let (path, integrand, initial) = if let Some(recipe) = &args.recipe {
        let v = json_of(&read(recipe)?)?;
        let path = PathSpec::from_json(&v["path"].to_string())?;
        let integrand = match (v.get("word"), v.get("element")) {
            (Some(w), None) => Integrand::Word(parse_word(w)?),
            (None, Some(e)) => Integrand::Element(match e.as_str() {
                Some(s) => parse_element(s)?,
                None => MultTensor::from_json(&e.to_string())?,
            }),
            _ => return Err(parse_err("a recipe has exactly one of \"word\" and \"element\"")),
        };
        let initial = match v.get("initial") {
            Some(Value::Array(xs)) => Some(
                xs.iter()
                    .map(|x| match (x.get(0).and_then(Value::as_f64), x.get(1).and_then(Value::as_f64)) {
                        (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                        _ => Err(parse_err(format!("initial values are [re, im] pairs, got {x}"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(other) => return Err(parse_err(format!("\"initial\" must be a list, got {other}"))),
            None => None,
        };
        (path, integrand, initial)
    } else {
        let path_file = args.path.as_ref().expect("clap requires --path");
        let path = PathSpec::from_json(&read(path_file)?)?;
        let integrand = match (&args.word, &args.element) {
            (Some(w), None) => Integrand::Word(parse_word(&json_of(&inline_or_file(w)?)?)?),
            (None, Some(e)) => Integrand::Element(parse_element(e)?),
            _ => return Err(parse_err("give exactly one of --word and --element")),
        };
        (path, integrand, None)
    };
    let result: IterIntResult = match integrand {
        Integrand::Word(w) => iterate_word_from(&w, &path, &opts, initial.as_deref())?,
        Integrand::Element(t) => {
            if initial.is_some() {
                return Err(parse_err("initial values apply to a single word"));
            }
            iterate_element(&t, &path, &opts)?
        }
    };
    match common.format {
        Format::Json => emit_json(common, &serde_json::to_value(result).expect("json"))?,
        Format::Csv => {
            let row = vec![
                format!("{:e}", result.value.re),
                format!("{:e}", result.value.im),
                format!("{:e}", result.error),
                result.panels.to_string(),
            ];
            emit(common, &csv_bytes(&["value_re", "value_im", "error_estimate", "panels"], &[row])?)?;
        }
    }
    Ok(0)
}

fn range(s: Option<&str>, default: (f64, f64)) -> Result<(f64, f64)> {
    let Some(s) = s else { return Ok(default) };
    let (a, b) = s.split_once(':').ok_or_else(|| parse_err(format!("range {s:?} is not A:B")))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|_| parse_err(format!("bad number {x:?} in range {s:?}")));
    Ok((p(a)?, p(b)?))
}

pub fn table(args: &TableArgs, common: &Common) -> Result<u8> {
    let opts = QuadOptions::with_tol(args.tol);
    let spread = |(a, b): (f64, f64), k: usize| -> Vec<f64> {
        if k < 2 {
            vec![a]
        } else {
            (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect()
        }
    };
    let table = match args.function {
        Function::Li => {
            let steps = args.steps.unwrap_or(17);
            let re = spread(range(args.re.as_deref(), (-0.8, 0.8))?, steps);
            let im = match &args.im {
                Some(_) => spread(range(args.im.as_deref(), (0.0, 0.0))?, steps),
                None => vec![0.0],
            };
            let points = re.iter().flat_map(|&x| im.iter().map(move |&y| Complex64::new(x, y))).collect();
            Table::LiN { n: args.n, points }
        }
        Function::BlochWigner => Table::BlochWigner {
            re: range(args.re.as_deref(), (-2.0, 2.0))?,
            im: range(args.im.as_deref(), (-2.0, 2.0))?,
            steps: args.steps.unwrap_or(50),
        },
        Function::Rogers => {
            // interior points of the range
            let (a, b) = range(args.re.as_deref(), (0.0, 1.0))?;
            let k = args.steps.unwrap_or(99);
            Table::Rogers { points: (1..=k).map(|i| a + (b - a) * i as f64 / (k + 1) as f64).collect() }
        }
        Function::L2g => Table::L2gFamily { seed: common.seed, steps: args.steps.unwrap_or(50) },
    };
    match common.format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&opts, &mut buf)?;
            emit(common, &buf)?;
        }
        Format::Json => {
            let header = table.header();
            let rows: Vec<Value> = table
                .rows(&opts)?
                .iter()
                .map(|r| {
                    let mut vals: Vec<f64> = r.inputs.clone();
                    vals.extend([r.value.re, r.value.im, r.error]);
                    Value::Object(header.iter().zip(vals).map(|(h, v)| (h.to_string(), json!(v))).collect())
                })
                .collect();
            emit_json(common, &Value::Array(rows))?;
        }
    }
    Ok(0)
}
