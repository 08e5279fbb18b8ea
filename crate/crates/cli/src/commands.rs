use std::path::Path;

use mmm_core::algebra::{parse_polynomial, Monomial, Rational};
use mmm_core::charring::{closed_form_kernel, kernel_intersection, parse_class};
use mmm_core::gysin::{
    ch_pushforward, compare_ch_pushforward, composite_pushforward_holomorphic,
    holomorphic_composite, kappa_table, projectivize, Fibration, KappaDomain,
};
use mmm_core::loops::iterate_trg;
use mmm_core::verify::SuiteOptions;
use mmm_core::weyl::{compare_with_gysin, kernel_via_weyl, TorusModel};
use mmm_core::GradedPolynomial;
use serde_json::json;

use crate::render::{polynomials, rational_list, rationals, text_list, Output};
use crate::spec::{parse_algebra, parse_bundle, SpecError};
use crate::suite;

/// Failures that are the caller's fault: bad files, expressions or
/// arguments.
#[derive(Debug)]
pub enum CliError {
    Spec(SpecError),
    Engine(mmm_core::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Spec(e) => write!(f, "{e}"),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Spec(e)
    }
}

impl From<mmm_core::Error> for CliError {
    fn from(e: mmm_core::Error) -> Self {
        CliError::Engine(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn strings(values: &[GradedPolynomial]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

pub fn kernel(n: u32, degree: u32, closed_form: bool) -> Result<Output> {
    let closed = closed_form_kernel(n, degree)?;
    let (spec, label) = if closed_form {
        (closed.clone(), "closed form")
    } else {
        (kernel_intersection(n, degree)?, "intersection")
    };
    let agrees = spec.same_as(&closed);
    let basis = spec.elements();
    let text = format!(
        "kernel n={n} degree={degree} ({label}) dim={}\n{}\nagrees with closed form: {agrees}",
        spec.dim(),
        text_list(strings(&basis))
    );
    Ok(Output {
        text,
        json: json!({
            "n": n,
            "degree": degree,
            "method": label,
            "dim": spec.dim(),
            "basis": polynomials(&basis),
            "agrees_with_closed_form": agrees,
        }),
        ok: agrees,
    })
}

fn load_fibration(path: &Path) -> Result<Fibration> {
    let bundle = parse_bundle(path)?;
    Ok(projectivize(&bundle.spec, &bundle.fibre)?)
}

fn domain(full: bool) -> KappaDomain {
    if full {
        KappaDomain::Full
    } else {
        KappaDomain::Pont
    }
}

pub fn kappa(bundle: &Path, class: &str, full: bool) -> Result<Output> {
    let fib = load_fibration(bundle)?;
    let n = fib.fibre_dimension();
    let x = parse_class(class, n, full)?;
    let value = fib.kappa(&x)?;
    Ok(Output {
        text: format!("kappa({x}) = {value}"),
        json: json!({
            "fibre_dimension": n,
            "class": x.to_string(),
            "kappa": value.to_string(),
        }),
        ok: true,
    })
}

pub fn kappa_kernel(bundle: &Path, degree: u32, full: bool) -> Result<Output> {
    let fib = load_fibration(bundle)?;
    let table = kappa_table(&fib, degree, domain(full))?;
    let kernel = table.kernel_elements();
    let text = format!(
        "kappa on degree {degree} (fibre dimension {}, {} domain): domain dim {}, rank {}, kernel dim {}\n{}",
        table.n,
        if full { "full" } else { "Pontrjagin" },
        table.domain_basis.len(),
        table.rank(),
        kernel.len(),
        text_list(strings(&kernel))
    );
    Ok(Output {
        text,
        json: json!({
            "degree": degree,
            "fibre_dimension": table.n,
            "domain": if full { "full" } else { "pont" },
            "domain_dim": table.domain_basis.len(),
            "rank": table.rank(),
            "kernel": polynomials(&kernel),
        }),
        ok: true,
    })
}

pub fn ch_pushforward_cmd(m: u32, truncation: usize) -> Result<Output> {
    let c = compare_ch_pushforward(m, truncation)?;
    let agrees = c.pipeline == c.series;
    let text = format!(
        "a_0..a_{truncation} for m={m}: {}\nseries agrees: {agrees}\nclosed form with (m+2k)! matches: {}\nclosed form with (m+2k)!! matches: {}",
        rational_list(&c.pipeline),
        c.single_factorial_matches,
        c.double_factorial_matches
    );
    Ok(Output {
        text,
        json: json!({
            "m": m,
            "truncation": truncation,
            "a": rationals(&c.pipeline),
            "series": rationals(&c.series),
            "series_agrees": agrees,
            "single_factorial_matches": c.single_factorial_matches,
            "double_factorial_matches": c.double_factorial_matches,
        }),
        ok: agrees,
    })
}

pub fn holo(r: u32, m: u32, truncation: usize) -> Result<Output> {
    let coefficients = composite_pushforward_holomorphic(r, m, truncation)?;
    let a = ch_pushforward(m, truncation)?;
    let expected: Vec<Rational> = (1..=truncation)
        .map(|l| &a[l] * Rational::from_integer(l.into()))
        .collect();
    let composite = holomorphic_composite(r, m)?;
    let base = composite.proj.base();
    let mut proj_ok = true;
    let proj: Vec<String> = (1..=(r / 2).min(6))
        .map(|l| {
            let got = composite.proj_pushforward_of_u_power(l);
            let want = GradedPolynomial::monomial(
                base.table(),
                Monomial::generator(base.table(), 0, 2 * l - 1),
                Rational::from_integer(l.into()),
            );
            proj_ok &= got == want;
            format!("proj_!(u^{l}) = {got}")
        })
        .collect();
    let agrees = coefficients == expected
        && coefficients
            .iter()
            .all(|c| *c != Rational::from_integer(0.into()));
    let text = format!(
        "CP^1 x CP^{r}, fibre CP^{m}\n{}\ncoefficients of x^(2l-1), l=1..{truncation}: {}\nl * a_l: {}\nagrees: {}",
        text_list(proj.clone()),
        rational_list(&coefficients),
        rational_list(&expected),
        agrees && proj_ok
    );
    Ok(Output {
        text,
        json: json!({
            "r": r,
            "m": m,
            "proj_pushforwards": proj,
            "coefficients": rationals(&coefficients),
            "l_times_a_l": rationals(&expected),
            "agrees": agrees && proj_ok,
        }),
        ok: agrees && proj_ok,
    })
}

pub fn trg(algebra: &Path, expr: &str, iterate: usize) -> Result<Output> {
    let ring = parse_algebra(algebra)?;
    let x = parse_polynomial(expr, ring.table())
        .map_err(|e| CliError::Usage(format!("--expr: {e}")))?;
    let value = iterate_trg(&ring, iterate, &x)?;
    Ok(Output {
        text: format!("trg^{iterate}({x}) = {value}"),
        json: json!({ "input": x.to_string(), "iterate": iterate, "trg": value.to_string() }),
        ok: true,
    })
}

pub fn weyl_kernel(d: u32, compare: bool) -> Result<Output> {
    let model = TorusModel::new();
    let k = kernel_via_weyl(&model, d)?;
    let elements = k.elements();
    let mut text = format!(
        "Weyl kernel on H^{}(BSO(4)): dim {}, Pontrjagin part dim {}\n{}",
        4 * d + 4,
        k.dim(),
        k.pont_part().dim(),
        text_list(strings(&elements))
    );
    let mut json = json!({
        "d": d,
        "degree": 4 * d + 4,
        "dim": k.dim(),
        "pont_dim": k.pont_part().dim(),
        "kernel": polynomials(&elements),
    });
    let mut ok = true;
    if compare {
        let c = compare_with_gysin(&model, d)?;
        ok = c.agrees();
        text.push_str(&format!(
            "\nGysin kernel dim {}; same subspace: {}; matrices agree (factor 2): {}",
            c.gysin_dim, c.same_kernel, c.matrices_agree
        ));
        json["gysin"] = json!({
            "dim": c.gysin_dim,
            "same_subspace": c.same_kernel,
            "matrices_agree": c.matrices_agree,
            "image_rank": c.image_rank,
        });
    }
    Ok(Output { text, json, ok })
}

pub fn verify(name: &str, options: &SuiteOptions) -> Result<Output> {
    let names = suite::resolve(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown suite `{name}`; expected all or one of {}",
            mmm_core::verify::SUITES.join(", ")
        ))
    })?;
    let reports = suite::run_suites(&names, options)?;
    Ok(suite::render_reports(&reports))
}
