use std::path::Path;
use std::time::Instant;

use heckeaf::exactnum::{format_rational, parse_rational};
use heckeaf::{
    af_from_expansion, af_of_eigenform, bauer_factorize, companion_of_conjugates, convergent_matrix, export_bratteli,
    jpa_expand, load_newform, make_field, regular_cf, Embedding, Error, ExportFormat, FieldElement, IntMatrix,
    IntPolynomial, JpaDigit, JpaExpansion, NumberField, Rat, RunReport,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

/// `println!` that tolerates a closed stdout, e.g. when piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_PIPELINE: u8 = 4;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// Library errors outside the pipeline: bad data is an input error,
/// everything else a failed precondition.
fn classify(e: Error) -> Failure {
    Failure {
        code: if e.is_input_error() { EXIT_INPUT } else { EXIT_DOMAIN },
        message: e.to_string(),
    }
}

type Outcome = Result<(), Failure>;

fn digit_list(d: &[JpaDigit]) -> String {
    format!("[{}]", d.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn scalar_list(d: &[JpaDigit]) -> String {
    format!("[{}]", d.iter().map(|x| x.0[0].to_string()).collect::<Vec<_>>().join(", "))
}

fn field_and_embedding(poly: &str, root: Option<usize>) -> Result<(NumberField, Embedding), Failure> {
    let p = IntPolynomial::parse(poly).map_err(classify)?;
    let k = make_field(p).map_err(classify)?;
    let e = match root {
        Some(i) => k.embedding(i),
        None => k.default_embedding(),
    }
    .map_err(classify)?;
    Ok((k, e))
}

fn parse_element(k: &NumberField, text: &str) -> Result<FieldElement, Failure> {
    let coords: Vec<Rat> = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<heckeaf::Result<_>>()
        .map_err(classify)?;
    if coords.len() > k.degree() {
        return Err(input(format!("{} coordinates for a field of degree {}", coords.len(), k.degree())));
    }
    let mut padded = coords;
    padded.resize(k.degree(), Rat::zero());
    k.element(padded).map_err(classify)
}

fn expansion_json(x: &JpaExpansion) -> serde_json::Value {
    json!({
        "dimension": x.dimension.to_string(),
        "preperiod": x.preperiod,
        "period": x.period,
        "terminated": x.terminated,
        "steps": x.steps.to_string(),
    })
}

fn outcome_text(x: &JpaExpansion, list: fn(&[JpaDigit]) -> String) -> String {
    if x.terminated {
        format!("{} (terminating)", list(&x.preperiod))
    } else if x.is_periodic() {
        format!("preperiod {}, period {}", list(&x.preperiod), list(&x.period))
    } else {
        format!("no period detected within {} steps; digits {}", x.steps, list(&x.preperiod))
    }
}

/// Convergents `p_k / q_k` of a regular continued fraction.
fn convergents(digits: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (digits[0].clone(), BigInt::one());
    let mut out = vec![(p1.clone(), q1.clone())];
    for a in &digits[1..] {
        let p2 = a * &p1 + &p0;
        let q2 = a * &q1 + &q0;
        (p0, q0, p1, q1) = (p1, q1, p2.clone(), q2.clone());
        out.push((p2, q2));
    }
    out
}

const CONVERGENT_ROWS: usize = 12;

pub fn cf(
    value: Option<&str>,
    poly: Option<&str>,
    root: Option<usize>,
    element: Option<&str>,
    max_steps: usize,
    as_json: bool,
) -> Outcome {
    let (x, e) = match (value, poly) {
        (Some(v), None) => {
            let q = NumberField::rationals();
            let r = parse_rational(v).map_err(classify)?;
            (q.from_rational(r), q.embedding(0).map_err(classify)?)
        }
        (None, Some(p)) => {
            let (k, e) = field_and_embedding(p, root)?;
            let x = match element {
                Some(t) => parse_element(&k, t)?,
                None => k.generator(),
            };
            (x, e)
        }
        _ => return Err(input("give either a rational value or --poly")),
    };
    let expansion = regular_cf(&x, &e, max_steps).map_err(classify)?;
    let mut digits: Vec<BigInt> = expansion.preperiod.iter().map(|d| d.0[0].clone()).collect();
    while !expansion.period.is_empty() && digits.len() < CONVERGENT_ROWS {
        digits.extend(expansion.period.iter().map(|d| d.0[0].clone()));
    }
    digits.truncate(CONVERGENT_ROWS);
    let table = convergents(&digits);
    if as_json {
        let mut v = expansion_json(&expansion);
        v["convergents"] = table
            .iter()
            .map(|(p, q)| format_rational(&Rat::new(p.clone(), q.clone())))
            .collect::<Vec<_>>()
            .into();
        out!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
        return Ok(());
    }
    out!("{}", outcome_text(&expansion, scalar_list));
    out!("{:>3}  {:>8}  convergent", "k", "a_k");
    for (k, (a, (p, q))) in digits.iter().zip(&table).enumerate() {
        out!("{k:>3}  {a:>8}  {p}/{q}");
    }
    Ok(())
}

pub fn jpa(
    poly: &str,
    root: Option<usize>,
    theta: &str,
    max_steps: usize,
    export: Option<&[String]>,
    levels: usize,
    as_json: bool,
) -> Outcome {
    let (k, e) = field_and_embedding(poly, root)?;
    let theta: Vec<FieldElement> = theta
        .split(';')
        .map(|t| parse_element(&k, t))
        .collect::<Result<_, _>>()?;
    let expansion = jpa_expand(&theta, &e, max_steps).map_err(classify)?;
    if let Some([format, path]) = export {
        let format: ExportFormat = format.parse().map_err(classify)?;
        let af = af_from_expansion(&expansion);
        std::fs::write(path, export_bratteli(&af, format, levels))
            .map_err(|err| input(format!("cannot write {path}: {err}")))?;
    }
    if as_json {
        let mut v = expansion_json(&expansion);
        v["af"] = heckeaf::afalg::af_json_value(&af_from_expansion(&expansion));
        out!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
    } else {
        out!("{}", outcome_text(&expansion, digit_list));
        out!("AF-algebra: {}", af_from_expansion(&expansion).kind());
    }
    Ok(())
}

fn parse_matrix(arg: &str) -> Result<IntMatrix, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|err| input(format!("cannot read {arg}: {err}")))?
    } else {
        arg.to_string()
    };
    let raw: Vec<Vec<serde_json::Value>> =
        serde_json::from_str(&text).map_err(|err| input(format!("matrix is not a JSON array of rows: {err}")))?;
    raw.iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let s = match v {
                        serde_json::Value::Number(n) => n.to_string(),
                        serde_json::Value::String(s) => s.clone(),
                        other => return Err(input(format!("matrix entry {other} is not an integer"))),
                    };
                    s.parse::<BigInt>()
                        .map_err(|_| input(format!("matrix entry {s} is not an integer")))
                })
                .collect()
        })
        .collect()
}

pub fn factor(matrix: &str, as_json: bool) -> Outcome {
    let a = parse_matrix(matrix)?;
    let digits = match bauer_factorize(&a) {
        Ok(d) => d,
        Err(Error::NotFactorizable { partial }) => {
            return Err(Failure {
                code: EXIT_DOMAIN,
                message: format!("factorization stalled; partial {}", digit_list(&partial)),
            })
        }
        Err(err) => return Err(classify(err)),
    };
    if convergent_matrix(a.len(), &digits) != a {
        return Err(Failure {
            code: EXIT_PIPELINE,
            message: "block product does not reproduce the matrix".into(),
        });
    }
    if as_json {
        out!("{}", serde_json::to_string_pretty(&json!({ "digits": digits })).expect("plain data"));
    } else {
        out!("{}", digit_list(&digits));
    }
    Ok(())
}

fn write_report(report: &RunReport, path: Option<&Path>) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, report.to_json() + "\n")
            .map_err(|err| input(format!("cannot write {}: {err}", p.display()))),
        None => Ok(()),
    }
}

pub fn af(fixture: &Path, conjugates: bool, report_path: Option<&Path>) -> Outcome {
    let mut report = RunReport::new(None);
    let start = Instant::now();
    let text = match std::fs::read_to_string(fixture) {
        Ok(t) => t,
        Err(err) => {
            let e = Error::Schema(format!("cannot read {}: {err}", fixture.display()));
            report.set_error(&e);
            write_report(&report, report_path)?;
            return Err(input(e.to_string()));
        }
    };
    let f = match load_newform(&text) {
        Ok(f) => f,
        Err(e) => {
            report.set_error(&e);
            write_report(&report, report_path)?;
            return Err(classify(e));
        }
    };
    report = RunReport::new(Some(&f));
    report.set_timing("load", start.elapsed().as_millis());

    let stage = Instant::now();
    let result = af_of_eigenform(&f);
    report.set_timing("pipeline", stage.elapsed().as_millis());
    let result = match result {
        Ok(r) => r,
        Err(e) => {
            report.set_error(&e);
            write_report(&report, report_path)?;
            return Err(Failure {
                code: if e.is_input_error() { EXIT_INPUT } else { EXIT_PIPELINE },
                message: e.to_string(),
            });
        }
    };
    report.set_result(&result);

    if conjugates {
        let stage = Instant::now();
        let c = companion_of_conjugates(&f);
        report.set_timing("conjugates", stage.elapsed().as_millis());
        match c {
            Ok(c) => report.set_conjugates(&c),
            Err(e) => {
                report.set_error(&e);
                write_report(&report, report_path)?;
                return Err(Failure {
                    code: EXIT_PIPELINE,
                    message: e.to_string(),
                });
            }
        }
    }
    report.set_timing("total", start.elapsed().as_millis());
    write_report(&report, report_path)?;
    if report_path.is_none() {
        out!("{}", report.to_json());
    } else {
        print_summary(&report);
    }
    Ok(())
}

fn print_summary(r: &RunReport) {
    let Some(res) = &r.result else { return };
    if let Some(input) = &r.input {
        out!("{} (level {}, weight {})", input.label, input.level, input.weight);
    }
    out!("field degree {}, discriminant {}", res.field.degree, res.field.discriminant);
    out!("type: {}", r.af_type.as_deref().unwrap_or("unknown"));
    if let Some(p) = &res.period_char_poly {
        let coeffs: Option<Vec<BigInt>> = p.iter().map(|c| c.parse().ok()).collect();
        if let Some(c) = coeffs {
            out!("period char poly: {}", IntPolynomial::new(c));
        }
    }
    if !res.digits.is_empty() {
        out!("period digits: {}", digit_list(&res.digits));
    }
    if let Some(c) = &r.conjugates {
        out!("conjugates: {}, char polys equal: {}", c.runs.len(), c.char_polys_equal);
        for v in &c.verdicts {
            out!("  {} vs {}: {}", v.first, v.second, v.verdict.name());
        }
    }
}
