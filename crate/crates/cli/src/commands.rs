use efp_core::critical::{
    alpha0_exact, alpha0_formula, alpha1_coeffs_exact, alpha1_coeffs_formula, alpha1_efp_exact, alpha1_efp_formula,
};
use efp_core::efp::{efp_enumerate, efp_eval, efp_multi_integral, efp_polynomial, EfpValue, MAX_ENUMERATION_N};
use efp_core::exact::{format_rational, parse_rational};
use efp_core::fredholm::{nystrom_det, trace_k_at, ContourGrid, KernelData};
use efp_core::geometry::{ln_rational, GeometryParams, Regime};
use efp_core::hypergeometric::{default_tolerance, ordered_correction};
use efp_core::ordered::{log1m_f_exact, log1m_f_ordered};
use efp_core::disordered::log_f_disordered;
use efp_core::saddle::tr_k_saddle;
use efp_core::sigma::sigma_residual_for;
use efp_core::{with_precision, BigFloat, EfpError, EfpParams, ExactRational, Real};
use rayon::prelude::*;

use crate::args::{Asym, EvalArgs, ParamArgs, ScanArgs, Verify};
use crate::error::{CliError, CliResult};
use crate::report::{exponent_cell, fitted_exponents, Cell, Report, Row};

fn parse_alpha(text: &str) -> CliResult<ExactRational> {
    let a = parse_rational(text)?;
    if a <= ExactRational::from_integer(0.into()) || a >= ExactRational::from_integer(1.into()) {
        return Err(CliError::Usage(format!("α = {text} must lie strictly between 0 and 1")));
    }
    Ok(a)
}

fn params(p: &ParamArgs) -> CliResult<EfpParams> {
    Ok(EfpParams::new(p.r, p.s, p.q)?)
}

/// Runs `f` over `items` in parallel, keeping input order, with the working precision set in each worker.
fn par_map<I, O, F>(bits: u32, items: Vec<I>, f: F) -> Vec<O>
where
    I: Send,
    O: Send,
    F: Fn(I) -> O + Sync + Send,
{
    items.into_par_iter().map(|x| with_precision(bits, || f(x))).collect()
}

pub fn eval(a: &EvalArgs, bits: u32) -> CliResult<Report> {
    let p = params(&a.params)?;
    let alpha = parse_rational(&a.alpha)?;
    let f = efp_eval(&p, &alpha)?;
    let mut row = Row::new(p.to_string())
        .with("alpha", Cell::rational(&alpha))
        .with("F", Cell::rational(&f))
        .with("F_decimal", Cell::real(&BigFloat::from_rational(&f)));
    if a.poly {
        let poly = efp_polynomial(&p)?;
        row = row.with("coefficients", Cell::List(poly.coeffs().iter().map(format_rational).collect()));
    }
    let mut report = Report::new("eval", bits).input("params", p).input("alpha", format_rational(&alpha));
    if p.is_empty_set() {
        report.notes.push(format!("s = {} > r = {}: the frozen rectangle does not fit, so F = 0", p.s, p.r));
    } else if p.is_trivial() {
        report.notes.push("s = 0: nothing is frozen, so F = 1".into());
    }
    report.rows.push(row);
    Ok(report)
}

pub fn poly(pa: &ParamArgs, bits: u32) -> CliResult<Report> {
    let p = params(pa)?;
    let f = efp_polynomial(&p)?;
    let mut report = Report::new("poly", bits).input("params", p);
    report.rows.push(
        Row::new(p.to_string())
            .with("degree", f.degree().map_or(Cell::Empty, |d| Cell::Int(d as i64)))
            .with("coefficients", Cell::List(f.coeffs().iter().map(format_rational).collect())),
    );
    Ok(report)
}

fn verdict(report: &mut Report) {
    let all = report
        .rows
        .iter()
        .all(|r| r.cells.iter().any(|(n, c)| n == "pass" && matches!(c, Cell::Bool(true))));
    report.pass = Some(all);
}

pub fn verify(v: &Verify, bits: u32) -> CliResult<Report> {
    let mut report = match v {
        Verify::SigmaForm { max_n } => {
            let mut items = Vec::new();
            for r in 1..*max_n {
                for s in 1..=r {
                    for q in 0..=max_n.saturating_sub(r + s) {
                        items.push(EfpParams::new(r, s, q)?);
                    }
                }
            }
            let rows = par_map(bits, items, |p| -> CliResult<Row> {
                let res = sigma_residual_for(&p)?;
                let desc = if res.is_zero() {
                    "0".to_string()
                } else {
                    format!("nonzero, numerator degree {:?}", res.num().degree())
                };
                Ok(Row::new(p.to_string()).with("residual", Cell::Text(desc)).with("pass", Cell::Bool(res.is_zero())))
            });
            let mut rep = Report::new("verify sigma-form", bits).input("max_n", max_n);
            rep.rows = rows.into_iter().collect::<CliResult<_>>()?;
            rep
        }
        Verify::Oracles { max_n, alpha } => {
            if *max_n > MAX_ENUMERATION_N {
                return Err(CliError::Usage(format!(
                    "--max-n {max_n} exceeds the enumeration bound {MAX_ENUMERATION_N}"
                )));
            }
            let alphas = alpha.iter().map(|a| parse_alpha(a)).collect::<CliResult<Vec<_>>>()?;
            let mut items = Vec::new();
            for r in 1..=*max_n {
                for s in 0..=(max_n - r) {
                    for q in 0..=(max_n - r - s) {
                        for a in &alphas {
                            items.push((EfpParams::new(r, s, q)?, a.clone()));
                        }
                    }
                }
            }
            let rows = par_map(bits, items, |(p, a)| -> CliResult<Row> {
                let h = efp_eval(&p, &a)?;
                let m = efp_multi_integral(&p)?.eval(&a);
                let (e_cell, e_ok) = match efp_enumerate(&p, &a)? {
                    EfpValue::Exact(e) => (Cell::rational(&e), e == h),
                    EfpValue::Approximate { value, .. } => {
                        let ok = (value.clone() - BigFloat::from_rational(&h)).abs()
                            < BigFloat::epsilon() * BigFloat::from_i64(1 << 20);
                        (Cell::real(&value), ok)
                    }
                };
                Ok(Row::new(format!("{p} α={}", format_rational(&a)))
                    .with("hankel", Cell::rational(&h))
                    .with("enumeration", e_cell)
                    .with("multi_integral", Cell::rational(&m))
                    .with("pass", Cell::Bool(e_ok && m == h)))
            });
            let mut rep = Report::new("verify oracles", bits)
                .input("max_n", max_n)
                .input("alpha", alphas.iter().map(format_rational).collect::<Vec<_>>().join(","));
            rep.rows = rows.into_iter().collect::<CliResult<_>>()?;
            rep
        }
        Verify::Alpha0 { max_r, max_q } => {
            let mut items = Vec::new();
            for r in 1..=*max_r {
                for s in 1..=r {
                    for q in 0..=*max_q {
                        items.push(EfpParams::new(r, s, q)?);
                    }
                }
            }
            let rows = par_map(bits, items, |p| -> CliResult<Row> {
                let (e, c) = alpha0_formula(&p);
                let (ee, ce) = alpha0_exact(&efp_polynomial(&p)?)?;
                Ok(Row::new(p.to_string())
                    .with("exponent", Cell::Int(i64::from(ee)))
                    .with("coefficient", Cell::rational(&ce))
                    .with("predicted_exponent", Cell::Int(i64::from(e)))
                    .with("predicted_coefficient", Cell::rational(&c))
                    .with("pass", Cell::Bool(e == ee && c == ce)))
            });
            let mut rep = Report::new("verify alpha0", bits).input("max_r", max_r).input("max_q", max_q);
            rep.rows = rows.into_iter().collect::<CliResult<_>>()?;
            rep
        }
        Verify::Alpha1 { max_r } => {
            let mut items = Vec::new();
            for r in 1..=*max_r {
                for s in 1..=r {
                    items.push(EfpParams::new(r, s, 0)?);
                }
            }
            let rows = par_map(bits, items, |p| -> CliResult<Row> {
                let (c1, c2) = alpha1_coeffs_exact(&p)?;
                let (f1, f2) = alpha1_coeffs_formula(p.r, p.s);
                let exact = alpha1_efp_exact(&p, 3)?;
                let formula = alpha1_efp_formula(p.r, p.s);
                let ok = c1 == f1 && c2 == f2 && exact.as_slice() == formula.as_slice();
                Ok(Row::new(p.to_string())
                    .with("c1", Cell::rational(&c1))
                    .with("c2", Cell::rational(&c2))
                    .with("expansion", Cell::List(exact.iter().map(format_rational).collect()))
                    .with("predicted_expansion", Cell::List(formula.iter().map(format_rational).collect()))
                    .with("pass", Cell::Bool(ok)))
            });
            let mut rep = Report::new("verify alpha1", bits).input("max_r", max_r);
            rep.rows = rows.into_iter().collect::<CliResult<_>>()?;
            rep
        }
    };
    verdict(&mut report);
    Ok(report)
}

struct Scan {
    v: ExactRational,
    alpha: ExactRational,
    params: Vec<EfpParams>,
}

fn scan(a: &ScanArgs, regime: Regime) -> CliResult<Scan> {
    let v = parse_rational(&a.v)?;
    let alpha = parse_alpha(&a.alpha)?;
    let geometry = GeometryParams::<f64>::from_exact(&alpha, &v)?;
    if geometry.regime != regime {
        return Err(EfpError::Regime(format!(
            "(α, v) = ({}, {}) lies in the {} regime, not the {regime} one",
            format_rational(&alpha),
            format_rational(&v),
            geometry.regime
        ))
        .into());
    }
    let mut params = Vec::new();
    for &s in &a.s {
        let r = ExactRational::from_integer(s.into()) / &v;
        if !r.is_integer() || s == 0 {
            return Err(CliError::Usage(format!("s = {s} does not give an integer r = s/v")));
        }
        let r: u32 = r.to_integer().try_into().map_err(|_| CliError::Usage(format!("r for s = {s} is too large")))?;
        params.push(EfpParams::new(r, s, 0)?);
    }
    Ok(Scan { v, alpha, params })
}

fn scan_report(name: &str, bits: u32, sc: &Scan) -> Report {
    Report::new(name, bits)
        .input("v", format_rational(&sc.v))
        .input("alpha", format_rational(&sc.alpha))
        .input("s", sc.params.iter().map(|p| p.s.to_string()).collect::<Vec<_>>().join(","))
}

/// Adds fitted exponents from the `abs_error` column to every row.
fn add_exponents(rows: &mut [Row], s: &[f64], err: &[f64]) {
    for (row, e) in rows.iter_mut().zip(fitted_exponents(s, err)) {
        row.cells.push(("fitted_exponent".into(), exponent_cell(e)));
    }
}

struct Compared {
    row: Row,
    s: f64,
    err: f64,
}

fn compare_row(p: &EfpParams, exact: &BigFloat, predicted: &BigFloat, scale_power: i32) -> Compared {
    let err = (predicted.clone() - exact.clone()).abs();
    let rel = err.clone() / exact.abs();
    let s = BigFloat::from_i64(i64::from(p.s));
    let row = Row::new(format!("s={}", p.s))
        .with("r", Cell::Int(i64::from(p.r)))
        .with("s", Cell::Int(i64::from(p.s)))
        .with("exact", Cell::real(exact))
        .with("predicted", Cell::real(predicted))
        .with("abs_error", Cell::real(&err))
        .with("rel_error", Cell::real(&rel))
        .with("scaled_error", Cell::real(&(err.clone() * s.powi(scale_power))));
    Compared { row, s: f64::from(p.s), err: err.to_f64() }
}

fn finish(mut report: Report, compared: Vec<CliResult<Compared>>) -> CliResult<Report> {
    let compared = compared.into_iter().collect::<CliResult<Vec<_>>>()?;
    let s: Vec<f64> = compared.iter().map(|c| c.s).collect();
    let e: Vec<f64> = compared.iter().map(|c| c.err).collect();
    report.rows = compared.into_iter().map(|c| c.row).collect();
    add_exponents(&mut report.rows, &s, &e);
    Ok(report)
}

pub fn asym(a: &Asym, bits: u32) -> CliResult<Report> {
    match a {
        Asym::Disordered { scan: sa, order } => {
            let sc = scan(sa, Regime::Disordered)?;
            let alpha = sc.alpha.clone();
            let order = *order;
            let rows = par_map(bits, sc.params.clone(), |p| -> CliResult<Compared> {
                let exact: BigFloat = ln_rational(&efp_eval(&p, &alpha)?)?;
                let pred: BigFloat = log_f_disordered(&p, &alpha, order)?;
                Ok(compare_row(&p, &exact, &pred, 2 * order as i32 + 2))
            });
            let mut rep = scan_report("asym disordered", bits, &sc).input("order", order);
            rep.notes.push("exact = log F; scaled_error = |error| s^(2n+2)".into());
            finish(rep, rows)
        }
        Asym::Ordered { scan: sa, order } => {
            let sc = scan(sa, Regime::Ordered)?;
            let alpha = sc.alpha.clone();
            let order = *order;
            let rows = par_map(bits, sc.params.clone(), |p| -> CliResult<Compared> {
                let exact: BigFloat = log1m_f_exact(&p, &alpha)?;
                let pred: BigFloat = log1m_f_ordered(&p, &alpha, order)?;
                Ok(compare_row(&p, &exact, &pred, order as i32 + 1))
            });
            let mut rep = scan_report("asym ordered", bits, &sc).input("order", order);
            rep.notes.push("exact = log(1 - F) with 1 - F formed exactly; scaled_error = |error| s^(n+1)".into());
            finish(rep, rows)
        }
        Asym::Saddle { scan: sa, order } => {
            let sc = scan(sa, Regime::Ordered)?;
            let alpha = sc.alpha.clone();
            let order = *order;
            let rows = par_map(bits, sc.params.clone(), |p| -> CliResult<Compared> {
                let exact = BigFloat::from_rational(&trace_k_at(&p, &alpha)?);
                let pred: BigFloat = tr_k_saddle(&p, &alpha, order)?;
                Ok(compare_row(&p, &exact, &pred, order as i32 + 1))
            });
            let mut rep = scan_report("asym saddle", bits, &sc).input("order", order);
            rep.notes.push("exact = Tr K; scaled_error = |error| s^(n+1)".into());
            finish(rep, rows)
        }
        Asym::Hyp { scan: sa } => {
            let sc = scan(sa, Regime::Ordered)?;
            let alpha = sc.alpha.clone();
            let rows = par_map(bits, sc.params.clone(), |p| -> CliResult<Compared> {
                let exact: BigFloat = ln_rational(&efp_eval(&p, &alpha)?)?;
                let c = ordered_correction::<BigFloat>(&p, &alpha, &default_tolerance())?;
                let tr = BigFloat::from_rational(&trace_k_at(&p, &alpha)?);
                let mut cmp = compare_row(&p, &exact, &c.value, 0);
                let gap = (c.value.clone() - exact).abs() / tr.square();
                cmp.row = cmp
                    .row
                    .with("minus_trace_k", Cell::real(&-tr))
                    .with("error_over_trace_k_squared", Cell::real(&gap))
                    .with("quadrature_nodes", Cell::Int(c.nodes as i64));
                Ok(cmp)
            });
            let mut rep = scan_report("asym hyp", bits, &sc);
            rep.notes.push("exact = log F; predicted = hypergeometric integral form".into());
            finish(rep, rows)
        }
        Asym::Fredholm { params: pa, alpha, m, radius } => {
            let p = params(pa)?;
            let alpha = parse_alpha(alpha)?;
            let kd = KernelData::new(p, alpha.clone())?;
            let radius = match radius {
                Some(r) => parse_rational(r)?,
                None => alpha.clone() / ExactRational::from_integer(2.into()),
            };
            let exact_q = efp_eval(&p, &alpha)?;
            let rows = par_map(bits, m.clone(), |m| -> CliResult<(Row, f64)> {
                let grid = ContourGrid::<BigFloat>::new(radius.clone(), m)?;
                let d = nystrom_det(&kd, &grid)?;
                let exact = BigFloat::from_rational(&exact_q);
                let err = (d.value.clone() - exact).abs();
                let row = Row::new(format!("m={m}"))
                    .with("m", Cell::Int(m as i64))
                    .with("det", Cell::real(&d.value))
                    .with("imag", Cell::real(&d.imag))
                    .with("abs_error", Cell::real(&err));
                Ok((row, err.to_f64()))
            });
            let rows = rows.into_iter().collect::<CliResult<Vec<_>>>()?;
            let mut rep = Report::new("asym fredholm", bits)
                .input("params", p)
                .input("alpha", format_rational(&alpha))
                .input("radius", format_rational(&radius));
            let mut prev: Option<f64> = None;
            for (mut row, e) in rows {
                let ratio = match prev {
                    Some(pe) if pe > 0.0 => Cell::float(e / pe),
                    _ => Cell::Empty,
                };
                row.cells.push(("error_ratio".into(), ratio));
                prev = Some(e);
                rep.rows.push(row);
            }
            rep.rows.insert(
                0,
                Row::new("exact").with("F", Cell::rational(&exact_q)).with(
                    "F_decimal",
                    Cell::real(&with_precision(bits, || BigFloat::from_rational(&exact_q))),
                ),
            );
            Ok(rep)
        }
    }
}
