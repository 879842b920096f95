//! Command dispatch and output rendering.

use std::fmt::Write as _;

use num_traits::{One, Signed};
use opcalc_core::dx::{
    Bound, ConvergenceCertificate, DxReport, DxVerdict, FitVerdict, Margin, MixedForm, NormalForm,
    Ordering, Reorder,
};
use opcalc_core::{
    counterexample_s, d_expand, default_shift_samples, delta_from_series, divided_power_basis,
    dx_check, dx_construct, normal_order_dj_xi, normal_order_xi_dj, reorder_product, rodrigues_xd,
    sequences, shift_invariance_check, umbral_op_dx, umbral_op_xd, umbral_shift_dx, xb_expand,
    xd_expand, DXExpansion, DeltaOp, DiagonalFit, Error, OpExpr, OpTable, Poly, Rat, SSeries,
    Scalar, XDExpansion,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{BasisSpec, Cli, Format, Options, Verb};
use crate::dsl::{parse_operator, render_operator, ParseError, DEFAULT_SERIES_ORDER};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] Error),
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Rejected(_) => 3,
            CliError::Engine(e) => match e {
                Error::PolyParse { .. } => 2,
                Error::Truncation { .. }
                | Error::NoCertificate
                | Error::MissingVanishingCertificate { .. }
                | Error::MissingDiagonal { .. }
                | Error::WindowTooSmall { .. } => 4,
                _ => 3,
            },
        }
    }
}

/// Exit status and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    json: Value,
    /// Set when the result is a negative verdict; fails the run under `--strict`.
    negative: Option<String>,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            negative: None,
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = validate(&cli.verb, &cli.opts).and_then(|()| dispatch(&cli.verb, &cli.opts));
    match result {
        Ok(report) => {
            let stdout = match cli.opts.format {
                Format::Text => report.text,
                Format::Json => {
                    serde_json::to_string_pretty(&report.json).expect("json value") + "\n"
                }
            };
            match report.negative {
                Some(why) if cli.opts.strict => Outcome {
                    code: 3,
                    stdout,
                    stderr: format!("opcalc: {why}\n"),
                },
                _ => Outcome {
                    code: 0,
                    stdout,
                    stderr: String::new(),
                },
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("opcalc: {e}\n"),
        },
    }
}

fn validate(verb: &Verb, opts: &Options) -> Result<(), CliError> {
    if matches!(verb, Verb::ExpandDx { .. } | Verb::CheckDx { .. }) && opts.n_max < opts.slack + 2 {
        return Err(CliError::Usage(format!(
            "--nmax {} must be at least --slack + 2 = {}",
            opts.n_max,
            opts.slack + 2
        )));
    }
    if matches!(verb, Verb::ExpandXb { .. }) {
        if let Some(BasisSpec::Series(f)) = &opts.basis {
            if f.coeff(0) != Rat::from_i64(0) || f.coeff(1) == Rat::from_i64(0) {
                return Err(CliError::Usage(format!(
                    "basis series {} must have order exactly 1",
                    f.render('t')
                )));
            }
        }
    }
    Ok(())
}

fn dispatch(verb: &Verb, opts: &Options) -> Result<Report, CliError> {
    match verb {
        Verb::Apply { operator, poly } => apply(operator, poly),
        Verb::ExpandXd { operator } => expand_xd(operator, opts),
        Verb::ExpandXb { operator } => expand_xb(operator, opts),
        Verb::ExpandDx { operator } => expand_dx(operator, opts),
        Verb::CheckDx { operator } => check_dx(operator, opts),
        Verb::DExpand { operator } => d_expansion(operator, opts),
        Verb::NormalOrder { word } => normal_order(word),
        Verb::Umbral { operator } => umbral(operator.as_deref(), opts),
        Verb::Counterexample { n } => Ok(counterexample(*n)),
        Verb::Reorder { product } => reorder(product, opts),
    }
}

fn apply(operator: &str, poly: &str) -> Result<Report, CliError> {
    let q = parse_operator(operator)?;
    let p = Poly::parse_in(poly, 'x')?;
    let image = q.apply(&p)?;
    Ok(Report::new(
        format!("{image}\n"),
        json!({
            "command": "apply",
            "operator": render_operator(&q),
            "input": p.to_string(),
            "output": image.to_string(),
        }),
    ))
}

fn xd_report(
    command: &str,
    q: &OpExpr,
    e: &XDExpansion,
    basis: &str,
    extra: Option<(&str, &[Poly])>,
) -> Report {
    let mut text = String::new();
    for (k, a) in e.terms.iter().enumerate() {
        writeln!(text, "a_{k}(x) = {a}").unwrap();
    }
    writeln!(text, "{} = {}", render_operator(q), e.render(basis)).unwrap();
    let mut json = json!({
        "command": command,
        "operator": render_operator(q),
        "basis": basis,
        "order": e.trunc_order(),
        "terms": poly_strings(&e.terms),
        "rendered": e.render(basis),
    });
    if let Some((name, polys)) = extra {
        writeln!(text, "{name}:").unwrap();
        for (k, b) in polys.iter().enumerate() {
            writeln!(text, "  b_{k}(x) = {b}").unwrap();
        }
        json[name] = poly_strings(polys);
    }
    Report::new(text, json)
}

fn expand_xd(operator: &str, opts: &Options) -> Result<Report, CliError> {
    let q = parse_operator(operator)?;
    let e = xd_expand(&q, opts.order)?;
    Ok(xd_report("expand-xd", &q, &e, "D", None))
}

fn basis_operator(spec: &BasisSpec, order: usize) -> OpExpr {
    match spec {
        BasisSpec::D => OpExpr::D,
        BasisSpec::Delta => OpExpr::Difference,
        BasisSpec::Series(f) => {
            let deg = f.degree().unwrap_or(0);
            OpExpr::SeriesInD(SSeries::from_poly(
                f,
                deg.max(order + 1).max(DEFAULT_SERIES_ORDER),
            ))
        }
    }
}

fn expand_xb(operator: &str, opts: &Options) -> Result<Report, CliError> {
    let q = parse_operator(operator)?;
    let spec = opts.basis.clone().unwrap_or(BasisSpec::D);
    let basis = divided_power_basis(&basis_operator(&spec, opts.order), opts.order)?;
    let e = xb_expand(&q, &basis, opts.order)?;
    let symbol = match &spec {
        BasisSpec::Series(_) => "B".to_string(),
        other => other.name(),
    };
    let mut report = xd_report(
        "expand-xb",
        &q,
        &e,
        &symbol,
        Some(("divided_powers", &basis.polys[..=opts.order])),
    );
    if let BasisSpec::Series(f) = &spec {
        report.text = format!("B = {}\n{}", f.render('D'), report.text);
        report.json["basis"] = json!(spec.name());
    }
    Ok(report)
}

fn series_text(f: &SSeries) -> String {
    let body = f.to_poly().render('D');
    format!("{body} + O(D^{})", f.trunc_order() + 1)
}

fn certificate_json(c: &ConvergenceCertificate) -> Value {
    let margins: Vec<Value> = c
        .margins
        .iter()
        .map(|m| match m {
            Margin::Finite(v) => json!(v),
            Margin::Infinite => json!("inf"),
        })
        .collect();
    let bound = match c.bound {
        Bound::FiniteSum => json!({"kind": "finite_sum"}),
        Bound::Linear { slope, intercept } => {
            json!({"kind": "linear", "slope": slope, "intercept": intercept})
        }
    };
    json!({
        "window": c.window,
        "margins": margins,
        "bound": bound,
        "degree_bound": c.degree_bound(),
    })
}

fn certificate_text(c: &ConvergenceCertificate) -> String {
    let margins: Vec<String> = c.margins.iter().map(Margin::to_string).collect();
    let bound = match c.bound {
        Bound::FiniteSum => "finite sum".to_string(),
        Bound::Linear { slope, intercept } => format!("margin_k >= {slope}*k + {intercept}"),
    };
    format!(
        "window 0..={}, margins [{}], {bound}",
        c.window,
        margins.join(", ")
    )
}

fn dx_json(e: &DXExpansion) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .enumerate()
        .map(|(k, f)| json!({"k": k, "series": f.to_poly().render('t'), "trunc": f.trunc_order()}))
        .collect();
    json!({
        "terms": terms,
        "valid_degree": e.valid_degree,
        "certificate": e.certificate.as_ref().map(certificate_json),
    })
}

fn dx_text(e: &DXExpansion, indent: &str) -> String {
    let mut text = String::new();
    for (k, f) in e.terms.iter().enumerate() {
        writeln!(text, "{indent}f_{k}(D) = {}", series_text(f)).unwrap();
    }
    writeln!(text, "{indent}valid for deg p <= {}", e.valid_degree).unwrap();
    match &e.certificate {
        Some(c) => writeln!(text, "{indent}certificate: {}", certificate_text(c)).unwrap(),
        None => writeln!(text, "{indent}certificate: none").unwrap(),
    }
    text
}

fn window_json(opts: &Options) -> Value {
    json!({"t_min": opts.t.min, "t_max": opts.t.max, "n_max": opts.n_max, "slack": opts.slack})
}

fn expand_dx(operator: &str, opts: &Options) -> Result<Report, CliError> {
    let q = parse_operator(operator)?;
    let table = OpTable::new(q.clone());
    let e = dx_construct(&table, opts.t.min, opts.t.max, opts.n_max, opts.slack)?;
    let mut json = dx_json(&e);
    json["command"] = json!("expand-dx");
    json["operator"] = json!(render_operator(&q));
    json["window"] = window_json(opts);
    Ok(Report::new(dx_text(&e, ""), json))
}

fn fit_json(fit: &DiagonalFit) -> Value {
    let samples: Vec<String> = fit.samples.iter().map(Rat::to_string).collect();
    let mut evidence = json!({"samples": samples});
    let (verdict, poly) = match &fit.verdict {
        FitVerdict::Polynomial(p) => {
            evidence["degree"] = json!(p.degree());
            ("polynomial", Some(p.render('n')))
        }
        FitVerdict::NotPolynomial { order, witness } => {
            evidence["order"] = json!(order);
            evidence["witness"] = json!(witness.to_string());
            ("not_polynomial", None)
        }
        FitVerdict::Zero => ("zero", None),
        FitVerdict::Inconclusive => ("inconclusive", None),
    };
    let mut out = json!({
        "t": fit.t,
        "verdict": verdict,
        "evidence": evidence,
        "window": {"n_max": fit.window.n_max, "slack": fit.window.slack},
    });
    if let Some(p) = poly {
        out["poly"] = json!(p);
    }
    out
}

fn fit_text(fit: &DiagonalFit) -> String {
    let t = fit.t;
    match &fit.verdict {
        FitVerdict::Polynomial(p) => format!("q_{t}(n) = {}", p.render('n')),
        FitVerdict::Zero => format!("q_{t}(n) = 0"),
        FitVerdict::NotPolynomial { order, witness } => format!(
            "q_{t}: not polynomial on n <= {} (difference of order {order} starts at {witness})",
            fit.window.n_max
        ),
        FitVerdict::Inconclusive => {
            format!("q_{t}: inconclusive, degree >= {} exceeds the window", -t)
        }
    }
}

fn check_dx(operator: &str, opts: &Options) -> Result<Report, CliError> {
    let q = parse_operator(operator)?;
    let table = OpTable::new(q.clone());
    let rep: DxReport<Rat> = dx_check(&table, opts.t.min, opts.t.max, opts.n_max, opts.slack)?;
    let mut text = String::new();
    for fit in &rep.fits {
        writeln!(text, "{}", fit_text(fit)).unwrap();
    }
    let (verdict, rejected_at, negative) = match rep.verdict() {
        DxVerdict::Accepted => {
            let v = rep.vanishing_above.expect("accepted reports carry a tail");
            writeln!(
                text,
                "verdict: accepted, q_t = 0 for {v} < t <= {}",
                opts.t.max
            )
            .unwrap();
            ("accepted", None, None)
        }
        DxVerdict::Rejected { t } => {
            writeln!(text, "verdict: rejected at t = {t}").unwrap();
            (
                "rejected",
                Some(t),
                Some(format!("diagonal q_{t} is not polynomial")),
            )
        }
        DxVerdict::Inconclusive => {
            writeln!(text, "verdict: inconclusive, q_{} is nonzero", opts.t.max).unwrap();
            ("inconclusive", None, None)
        }
    };
    let json = json!({
        "command": "check-dx",
        "operator": render_operator(&q),
        "window": window_json(opts),
        "verdict": verdict,
        "rejected_at": rejected_at,
        "vanishing_above": rep.vanishing_above,
        "diagonals": rep.fits.iter().map(fit_json).collect::<Vec<_>>(),
    });
    Ok(Report {
        text,
        json,
        negative,
    })
}

fn d_expansion(operator: &str, opts: &Options) -> Result<Report, CliError> {
    let q = parse_operator(operator)?;
    let a = d_expand(&q, opts.order)?;
    let invariant = shift_invariance_check(&q, opts.order, &default_shift_samples())?;
    let mut text = format!("{} = {}\n", render_operator(&q), series_text(&a));
    writeln!(
        text,
        "shift-invariant on deg <= {}: {}",
        opts.order,
        if invariant { "yes" } else { "no" }
    )
    .unwrap();
    let json = json!({
        "command": "d-expand",
        "operator": render_operator(&q),
        "order": opts.order,
        "coefficients": a.coeffs().iter().map(Rat::to_string).collect::<Vec<_>>(),
        "shift_invariant": invariant,
    });
    let negative = (!invariant).then(|| "operator is not shift-invariant".to_string());
    Ok(Report {
        text,
        json,
        negative,
    })
}

/// Exponents of `D^j X^i` (`Ordering::Xd` target) or `X^i D^j` (`Ordering::Dx`).
fn split_word(q: &OpExpr) -> Option<(Ordering, usize, usize)> {
    fn letters(q: &OpExpr, out: &mut Vec<char>) -> bool {
        match q {
            OpExpr::D => out.push('D'),
            OpExpr::X => out.push('X'),
            OpExpr::Identity => {}
            OpExpr::Compose(a, b) => return letters(a, out) && letters(b, out),
            _ => return false,
        }
        true
    }
    let mut w = Vec::new();
    if !letters(q, &mut w) {
        return None;
    }
    let lead = w.iter().take_while(|&&c| c == w[0]).count();
    if w[lead..].iter().any(|&c| c == w[0]) {
        return None;
    }
    let (d, x) = (
        w.iter().filter(|&&c| c == 'D').count(),
        w.iter().filter(|&&c| c == 'X').count(),
    );
    match w.first() {
        Some('X') => Some((Ordering::Dx, x, d)),
        _ => Some((Ordering::Xd, x, d)),
    }
}

fn word_text(ordering: Ordering, x: usize, d: usize) -> String {
    let pow = |s: &str, k: usize| match k {
        0 => None,
        1 => Some(s.to_string()),
        _ => Some(format!("{s}^{k}")),
    };
    let parts: Vec<String> = match ordering {
        Ordering::Xd => [pow("X", x), pow("D", d)],
        Ordering::Dx => [pow("D", d), pow("X", x)],
    }
    .into_iter()
    .flatten()
    .collect();
    if parts.is_empty() {
        "I".into()
    } else {
        parts.join(" ")
    }
}

/// The normal form in operator syntax, so it can be parsed back.
fn normal_text(nf: &NormalForm<Rat>) -> String {
    let mut out = String::new();
    for term in nf.terms.iter().filter(|t| t.coef != Rat::from_i64(0)) {
        let neg = term.coef.is_negative();
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        let mag = term.coef.abs();
        if !mag.is_one() {
            write!(out, "{mag}*").unwrap();
        }
        out.push_str(&word_text(nf.ordering, term.x_pow, term.d_pow));
    }
    if out.is_empty() {
        "0*I".into()
    } else {
        out
    }
}

fn normal_order(word: &str) -> Result<Report, CliError> {
    let q = parse_operator(word)?;
    let (target, x, d) = split_word(&q).ok_or_else(|| {
        CliError::Usage(format!(
            "normal-order expects D^j X^i or X^i D^j, got {word:?}"
        ))
    })?;
    let nf = match target {
        Ordering::Xd => normal_order_dj_xi::<Rat>(d, x),
        Ordering::Dx => normal_order_xi_dj::<Rat>(x, d),
    };
    let source = match target {
        Ordering::Xd => Ordering::Dx,
        Ordering::Dx => Ordering::Xd,
    };
    let lhs = word_text(source, x, d);
    let rendered = normal_text(&nf);
    let terms: Vec<Value> = nf
        .terms
        .iter()
        .map(|t| json!({"coef": t.coef.to_string(), "x_pow": t.x_pow, "d_pow": t.d_pow}))
        .collect();
    Ok(Report::new(
        format!("{lhs} = {rendered}\n"),
        json!({
            "command": "normal-order",
            "word": lhs,
            "ordering": ordering_name(target),
            "terms": terms,
            "rendered": rendered,
        }),
    ))
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Xd => "xd",
        Ordering::Dx => "dx",
    }
}

fn delta_operator(
    operator: Option<&str>,
    opts: &Options,
    order: usize,
) -> Result<DeltaOp, CliError> {
    if let Some(text) = operator {
        let q = parse_operator(text)?;
        if !shift_invariance_check(&q, order, &default_shift_samples())? {
            return Err(CliError::Rejected(format!(
                "{} is not shift-invariant, so it is not a delta operator",
                render_operator(&q)
            )));
        }
        return Ok(delta_from_series(d_expand(&q, order)?)?);
    }
    Ok(match opts.basis.clone().unwrap_or(BasisSpec::Delta) {
        BasisSpec::D => DeltaOp::d(order),
        BasisSpec::Delta => DeltaOp::forward_difference(order),
        BasisSpec::Series(f) => {
            let deg = f.degree().unwrap_or(0);
            delta_from_series(SSeries::from_poly(&f, order.max(deg)))?
        }
    })
}

fn umbral(operator: Option<&str>, opts: &Options) -> Result<Report, CliError> {
    let n = opts.order;
    let delta = delta_operator(operator, opts, 2 * n + 4)?;
    let (div, conj) = sequences(&delta, n)?;
    let basic = div.basic();
    let op_xd = umbral_op_xd(&delta, n)?;
    let shift_xd = rodrigues_xd(&delta, n)?;
    let shift_dx = umbral_shift_dx(&delta, n)?;
    let op_dx = match umbral_op_dx(&delta, n) {
        Ok(e) => Ok(e),
        Err(e @ Error::NotDxEligible { .. }) => Err(e.to_string()),
        Err(e) => return Err(e.into()),
    };

    let mut text = format!("delta operator f(D) = {}\n", series_text(delta.symbol()));
    for (name, seq) in [
        ("divided powers p_n", &div.polys),
        ("basic sequence n!*p_n", &basic.polys),
        ("conjugate sequence", &conj.polys),
    ] {
        writeln!(text, "{name}:").unwrap();
        for (k, p) in seq.iter().enumerate() {
            writeln!(text, "  {k}: {p}").unwrap();
        }
    }
    writeln!(text, "umbral operator = {}", op_xd.render("D")).unwrap();
    match &op_dx {
        Ok(e) => write!(text, "umbral operator, DX form:\n{}", dx_text(e, "  ")).unwrap(),
        Err(why) => writeln!(text, "umbral operator, DX form: none ({why})").unwrap(),
    }
    writeln!(text, "umbral shift = {}", shift_xd.render("D")).unwrap();
    write!(text, "umbral shift, DX form:\n{}", dx_text(&shift_dx, "  ")).unwrap();

    let json = json!({
        "command": "umbral",
        "delta": {"series": delta.symbol().to_poly().render('t'), "trunc": delta.trunc_order()},
        "order": n,
        "divided_powers": poly_strings(&div.polys),
        "basic": poly_strings(&basic.polys),
        "conjugate": poly_strings(&conj.polys),
        "umbral_operator_xd": poly_strings(&op_xd.terms),
        "umbral_operator_dx": op_dx.as_ref().ok().map(dx_json),
        "umbral_operator_dx_error": op_dx.as_ref().err(),
        "umbral_shift_xd": poly_strings(&shift_xd.terms),
        "umbral_shift_dx": dx_json(&shift_dx),
    });
    Ok(Report::new(text, json))
}

fn counterexample(n: usize) -> Report {
    let s: Rat = counterexample_s(n);
    let f = Rat::factorial(n);
    let bound = &f * &f;
    let holds = s >= bound;
    let text = format!(
        "S({n}) = {s}, ({n}!)^2 = {bound}, bound {}\n",
        if holds { "holds" } else { "fails" }
    );
    let json = json!({
        "command": "counterexample",
        "n": n,
        "s": s.to_string(),
        "factorial_squared": bound.to_string(),
        "bound_holds": holds,
    });
    Report {
        text,
        json,
        negative: (!holds).then(|| format!("S({n}) < ({n}!)^2")),
    }
}

fn reorder(product: &str, opts: &Options) -> Result<Report, CliError> {
    let q = parse_operator(product)?;
    let series_order = opts.order.max(DEFAULT_SERIES_ORDER);
    let as_series = |o: &OpExpr| match o {
        OpExpr::D => Some(SSeries::monomial(Rat::one(), 1, series_order)),
        OpExpr::SeriesInD(f) => Some(f.clone()),
        _ => None,
    };
    let as_poly = |o: &OpExpr| match o {
        OpExpr::X => Some(Poly::x()),
        OpExpr::PolyInX(p) => Some(p.clone()),
        _ => None,
    };
    let OpExpr::Compose(outer, inner) = &q else {
        return Err(CliError::Usage(format!(
            "reorder expects a product of two factors, got {product:?}"
        )));
    };
    let (form, direction): (MixedForm<Rat>, _) = match (
        as_series(outer),
        as_poly(inner),
        as_poly(outer),
        as_series(inner),
    ) {
        (Some(f), Some(p), _, _) => (reorder_product(&f, &p, Reorder::FdPxToXd), "fd_px_to_xd"),
        (_, _, Some(p), Some(f)) => (reorder_product(&f, &p, Reorder::PxFdToDx), "px_fd_to_dx"),
        _ => {
            return Err(CliError::Usage(
                "reorder expects series(f) poly(p) or poly(p) series(f); D and X also work".into(),
            ))
        }
    };
    let mut text = format!("{} = sum of\n", render_operator(&q));
    for (k, (p, f)) in form.terms.iter().enumerate() {
        match form.ordering {
            Ordering::Xd => writeln!(text, "  {k}: ({p}) [{}]", series_text(f)).unwrap(),
            Ordering::Dx => writeln!(text, "  {k}: [{}] ({p})", series_text(f)).unwrap(),
        }
    }
    match form.valid_degree {
        Some(v) => writeln!(text, "valid for deg p <= {v}").unwrap(),
        None => writeln!(text, "series too short for any input").unwrap(),
    }
    let terms: Vec<Value> = form
        .terms
        .iter()
        .map(|(p, f)| json!({"poly": p.to_string(), "series": f.to_poly().render('t'), "trunc": f.trunc_order()}))
        .collect();
    let json = json!({
        "command": "reorder",
        "input": render_operator(&q),
        "direction": direction,
        "ordering": ordering_name(form.ordering),
        "terms": terms,
        "valid_degree": form.valid_degree,
    });
    Ok(Report::new(text, json))
}

fn poly_strings(polys: &[Poly]) -> Value {
    json!(polys.iter().map(Poly::to_string).collect::<Vec<_>>())
}
