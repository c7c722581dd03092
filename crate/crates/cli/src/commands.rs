use num_rational::BigRational;
use odt_core::dt::{
    check_bc_duality, check_variant_dualities, extract_dt_invariants, orientifold_pipeline, stack_series, DualityReport,
    LieType, LoopDuality,
};
use odt_core::hn::{
    codim_ordinary, codim_sigma, enumerate_hn_types, enumerate_sigma_hn_types, ordinary_oracle, sigma_oracle,
    OracleError, OrdinaryRecursion, Polygon, SigmaRecursion,
};
use odt_core::quiver::Quiver;
use odt_core::{DimVector, GradedSeries, Grading};
use serde_json::{json, Value};

use crate::source::{parse_triple, parse_vector, Source};
use crate::{CheckKind, DtOrdinaryArgs, DtOrientifoldArgs, Failure, Format, QuiverArgs};

fn check<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Check(e.to_string())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
}

fn emit(format: Format, json: Value, headers: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Json => pretty(&json),
        Format::Csv => csv(headers, rows),
        Format::Table => table(headers, rows),
    }
}

fn load(src: &QuiverArgs) -> Result<Source, Failure> {
    Source::load(&src.quiver, src.duality.as_deref(), src.theta.as_deref())
}

pub fn validate(args: &QuiverArgs, format: Format) -> Result<String, Failure> {
    let src = load(args)?;
    let q = &src.quiver;
    let mut report = json!({
        "quiver": src.label,
        "nodes": q.nodes(),
        "arrows": q.arrows().iter().map(|a| json!([a.id, q.nodes()[a.src], q.nodes()[a.tgt]])).collect::<Vec<_>>(),
        "symmetric": q.is_symmetric(),
    });
    let mut rows = vec![
        vec!["quiver".into(), src.label.clone()],
        vec!["symmetric".into(), q.is_symmetric().to_string()],
    ];
    let mut valid = true;
    if let Some(qd) = &src.duality {
        let violations = qd.validate();
        valid = violations.is_empty();
        report["violations"] = serde_json::to_value(&violations).expect("serializable");
        for v in &violations {
            rows.push(vec!["violation".into(), v.to_string()]);
        }
        if valid {
            let parts = qd.partition_summary();
            report["partition"] = serde_json::to_value(&parts).expect("serializable");
            report["sigma_symmetric"] = qd.is_sigma_symmetric().into();
            for (name, list) in [
                ("nodes-", &parts.nodes_minus),
                ("nodes0", &parts.nodes_fixed),
                ("nodes+", &parts.nodes_plus),
                ("arrows-", &parts.arrows_minus),
                ("arrows0", &parts.arrows_fixed),
                ("arrows+", &parts.arrows_plus),
            ] {
                rows.push(vec![name.into(), list.join(" ")]);
            }
            rows.push(vec!["sigma_symmetric".into(), qd.is_sigma_symmetric().to_string()]);
        }
    }
    report["valid"] = valid.into();
    rows.push(vec!["valid".into(), valid.to_string()]);
    let out = emit(format, report, &["field", "value"], &rows);
    if valid {
        Ok(out)
    } else {
        Err(Failure::Report(out))
    }
}

fn vertices(p: &Polygon) -> String {
    p.vertices.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(" ")
}

pub fn enumerate(args: &QuiverArgs, d: Option<&str>, e: Option<&str>, format: Format) -> Result<String, Failure> {
    let src = load(args)?;
    let headers = ["type", "codim", "polygon", "empty"];
    let mut items = Vec::new();
    let mut rows = Vec::new();
    if let Some(d) = d {
        let d = parse_vector(d, "--d")?;
        let mut rec = OrdinaryRecursion::new(src.quiver.clone(), src.theta.clone());
        for t in enumerate_hn_types(&src.quiver, &src.theta, &d).map_err(check)? {
            let poly = Polygon::of_hn_type(&src.theta, &t);
            let codim = codim_ordinary(&src.quiver, &t);
            let empty = rec.stratum(&t).map_err(check)?.is_zero();
            rows.push(vec![t.to_string(), codim.to_string(), vertices(&poly), empty.to_string()]);
            items.push(json!({"type": t.to_string(), "parts": t.parts, "polygon": poly.vertices, "codim": codim, "empty": empty}));
        }
    } else if let Some(e) = e {
        let qd = src.valid_duality()?;
        let e = qd.self_dual(parse_vector(e, "--e")?).map_err(check)?;
        let mut rec = SigmaRecursion::new(qd.clone(), src.theta.clone()).map_err(check)?;
        for t in enumerate_sigma_hn_types(qd, &src.theta, &e).map_err(check)? {
            let poly = Polygon::of_sigma_type(qd, &src.theta, &t);
            let codim = codim_sigma(qd, &t);
            let empty = rec.stratum(&e, &t).map_err(check)?.is_zero();
            rows.push(vec![t.to_string(), codim.to_string(), vertices(&poly), empty.to_string()]);
            items.push(json!({
                "type": t.to_string(),
                "parts": t.parts,
                "tail": t.tail,
                "polygon": poly.vertices,
                "codim": codim,
                "empty": empty,
            }));
        }
    }
    Ok(emit(format, Value::Array(items), &headers, &rows))
}

fn series_rows(s: &GradedSeries) -> Vec<Vec<String>> {
    s.iter()
        .map(|(d, c)| vec![d.to_string(), c.numer().to_q_string(), c.denom().to_q_string()])
        .collect()
}

pub fn series(args: &QuiverArgs, tmax: i64, sigma: bool, semistable: bool, format: Format) -> Result<String, Failure> {
    let src = load(args)?;
    let n = src.quiver.num_nodes();
    let s = match (sigma, semistable) {
        (false, true) => OrdinaryRecursion::new(src.quiver.clone(), src.theta.clone())
            .series(tmax)
            .map_err(check)?,
        (false, false) => {
            let mut out = GradedSeries::zero(Grading::Vector(n), tmax);
            for d in DimVector::all_up_to(n, tmax) {
                out.set(d.clone(), src.quiver.stacky_count(&d)).map_err(check)?;
            }
            out
        }
        (true, semi) => {
            let qd = src.valid_duality()?;
            let theta = if semi { src.theta.clone() } else { odt_core::quiver::Stability::trivial(n) };
            SigmaRecursion::new(qd.clone(), theta).map_err(check)?.series(tmax).map_err(check)?
        }
    };
    if format == Format::Json {
        return Ok(serde_json::to_string_pretty(&s).expect("serializable") + "\n");
    }
    Ok(emit(format, Value::Null, &["d", "numerator", "denominator"], &series_rows(&s)))
}

fn ordinary_quiver(quiver: Option<&str>, m: Option<usize>) -> Result<(String, Quiver), Failure> {
    match (quiver, m) {
        (_, Some(m)) => Ok((format!("L_{m}"), Quiver::loop_quiver(m))),
        (Some(spec), None) => {
            let src = Source::load(spec, None, None)?;
            Ok((src.label, src.quiver))
        }
        (None, None) => Err(Failure::Usage("give --quiver or --m".into())),
    }
}

pub fn dt_ordinary(args: &DtOrdinaryArgs) -> Result<String, Failure> {
    let (label, q) = ordinary_quiver(args.quiver.as_deref(), args.m)?;
    if !q.is_symmetric() {
        return Err(Failure::Check(format!("{label} is not symmetric; DT invariants need a symmetric Euler form")));
    }
    let inv = extract_dt_invariants(&stack_series(&q, args.tmax as i64)).map_err(check)?;
    let rows: Vec<Vec<String>> = match args.format {
        Format::Csv => inv
            .terms()
            .into_iter()
            .map(|(d, k, c)| vec![d.to_string(), k.to_string(), c.to_string()])
            .collect(),
        _ => inv.degrees().map(|d| vec![d.to_string(), inv.poly(d).to_q_string()]).collect(),
    };
    let headers: &[&str] = if args.format == Format::Csv { &["d", "k", "coeff"] } else { &["d", "Omega_d"] };
    Ok(emit(args.format, inv.to_json(), headers, &rows))
}

fn loop_duality(args: &DtOrientifoldArgs) -> Result<LoopDuality, Failure> {
    let m = match (&args.quiver, args.m) {
        (_, Some(m)) => m,
        (Some(spec), None) => spec
            .strip_prefix("loop:")
            .and_then(|m| m.parse().ok())
            .ok_or_else(|| Failure::Usage(format!("orientifold invariants need a loop quiver loop:m (got {spec:?})")))?,
        (None, None) => return Err(Failure::Usage("give --quiver loop:m or --m".into())),
    };
    let (s, tp, tm) = match &args.duality {
        Some(d) => parse_triple(d)?,
        None => (1, 0, m),
    };
    if tp + tm != m {
        return Err(Failure::Usage(format!("tau counts {tp} + {tm} do not add up to m = {m}")));
    }
    let tag = match &args.type_tag {
        Some(t) => Some(t.parse::<LieType>().map_err(|e| Failure::Usage(e.to_string()))?),
        None => None,
    };
    LoopDuality::new(s, tp, tm, tag).map_err(|e| Failure::Usage(e.to_string()))
}

fn duality_output(reports: &[DualityReport], format: Format) -> Result<String, Failure> {
    let mut rows = Vec::new();
    for r in reports {
        for row in &r.rows {
            rows.push(vec![
                r.left.clone(),
                row.left_e.to_string(),
                row.left.clone(),
                r.right.clone(),
                row.right_e.to_string(),
                row.right.clone(),
                if row.equal { "ok" } else { "MISMATCH" }.into(),
            ]);
        }
    }
    let json = serde_json::to_value(reports).expect("serializable");
    let out = emit(format, json, &["left", "e", "Omega-bar", "right", "e'", "Omega-bar'", "status"], &rows);
    if reports.iter().all(DualityReport::holds) {
        Ok(out)
    } else {
        Err(Failure::Report(out))
    }
}

pub fn dt_orientifold(args: &DtOrientifoldArgs) -> Result<String, Failure> {
    let ld = loop_duality(args)?;
    let ximax = args.ximax as i64;
    match args.check {
        Some(CheckKind::Bc) => {
            let rep = check_bc_duality(ld.m, ximax / 2).map_err(check)?;
            return duality_output(&[rep], args.format);
        }
        Some(CheckKind::Variants) => {
            let reps = check_variant_dualities(ld.m, args.m0, ximax / 2).map_err(|e| Failure::Usage(e.to_string()))?;
            return duality_output(&reps, args.format);
        }
        None => {}
    }
    let r = orientifold_pipeline(&ld, ximax).map_err(check)?;
    let problems = r.property_violations();
    let json = json!({"duality": ld.to_string(), "invariants": r.to_json(args.betti)});
    let out = match args.format {
        Format::Csv => {
            let mut rows = Vec::new();
            for &e in r.omega.keys() {
                for (c, b) in r.betti(e).iter().enumerate() {
                    rows.push(vec![e.to_string(), c.to_string(), b.to_string()]);
                }
            }
            csv(&["e", "c", "betti"], &rows)
        }
        _ => {
            let mut headers = vec!["e", "Omega_e", "Omega-bar_e"];
            if args.betti {
                headers.push("betti");
            }
            let rows: Vec<Vec<String>> = r
                .omega
                .iter()
                .map(|(e, p)| {
                    let mut row = vec![format!("xi^{e}"), p.to_q_string(), r.normalized_at(*e).to_q_string()];
                    if args.betti {
                        row.push(r.betti(*e).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
                    }
                    row
                })
                .collect();
            emit(args.format, json, &headers, &rows)
        }
    };
    if problems.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Report(out + &problems.join("\n") + "\n"))
    }
}

fn parse_primes(spec: &str) -> Result<Vec<u64>, Failure> {
    spec.split(',')
        .map(|x| {
            let p: u64 = x
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("--oracle expects primes like 3,5 (got {spec:?})")))?;
            let prime = p >= 3 && p % 2 == 1 && (3..p).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k));
            if prime {
                Ok(p)
            } else {
                Err(Failure::Usage(format!("oracle prime {p} must be an odd prime")))
            }
        })
        .collect()
}

fn oracle_row(kind: &str, degree: String, p: u64, series: Option<BigRational>, oracle: Result<BigRational, OracleError>) -> (Vec<String>, bool) {
    match oracle {
        Ok(o) => {
            let s = series.map_or("pole".into(), |s| s.to_string());
            let ok = s == o.to_string();
            (vec![kind.into(), degree, p.to_string(), s, o.to_string(), if ok { "pass" } else { "FAIL" }.into()], ok)
        }
        Err(OracleError::Infeasible { .. }) => (
            vec![kind.into(), degree, p.to_string(), "-".into(), "-".into(), "skipped".into()],
            true,
        ),
        Err(e) => (vec![kind.into(), degree, p.to_string(), "-".into(), e.to_string(), "FAIL".into()], false),
    }
}

pub fn verify(args: &QuiverArgs, primes: &str, dmax: i64, emax: i64, format: Format) -> Result<String, Failure> {
    let primes = parse_primes(primes)?;
    let src = load(args)?;
    let n = src.quiver.num_nodes();
    let mut rows = Vec::new();
    let mut all_ok = true;
    let mut rec = OrdinaryRecursion::new(src.quiver.clone(), src.theta.clone());
    for d in DimVector::all_up_to(n, dmax).into_iter().skip(1) {
        let series = rec.semistable(&d).map_err(check)?;
        let rebuilt = rec.resum(&d).map_err(check)? == rec.total(&d);
        all_ok &= rebuilt;
        rows.push(vec![
            "rebuild".into(),
            d.to_string(),
            "-".into(),
            "-".into(),
            "-".into(),
            if rebuilt { "pass" } else { "FAIL" }.into(),
        ]);
        for &p in &primes {
            let value = series.eval_q(&BigRational::from_integer(p.into()));
            let (row, ok) = oracle_row("ordinary", d.to_string(), p, value, ordinary_oracle(p, &src.quiver, &src.theta, &d));
            all_ok &= ok;
            rows.push(row);
        }
    }
    if let Some(qd) = &src.duality {
        let qd = if qd.validate().is_empty() { qd } else { src.valid_duality()? };
        let mut srec = SigmaRecursion::new(qd.clone(), src.theta.clone()).map_err(check)?;
        for e in srec.self_dual_vectors(emax).into_iter().skip(1) {
            let series = srec.semistable(&e).map_err(check)?;
            let rebuilt = srec.resum(&e).map_err(check)? == srec.total(&e).map_err(check)?;
            all_ok &= rebuilt;
            let label = e.as_dim().to_string();
            rows.push(vec![
                "sigma-rebuild".into(),
                label.clone(),
                "-".into(),
                "-".into(),
                "-".into(),
                if rebuilt { "pass" } else { "FAIL" }.into(),
            ]);
            for &p in &primes {
                let value = series.eval_q(&BigRational::from_integer(p.into()));
                let (row, ok) = oracle_row("sigma", label.clone(), p, value, sigma_oracle(p, qd, &src.theta, &e));
                all_ok &= ok;
                rows.push(row);
            }
        }
    }
    let headers = ["check", "degree", "p", "series", "oracle", "status"];
    let json = Value::Array(
        rows.iter()
            .map(|r| json!({"check": r[0], "degree": r[1], "p": r[2], "series": r[3], "oracle": r[4], "status": r[5]}))
            .collect(),
    );
    let out = emit(format, json, &headers, &rows);
    if all_ok {
        Ok(out)
    } else {
        Err(Failure::Report(out))
    }
}
