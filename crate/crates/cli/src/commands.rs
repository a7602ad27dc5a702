use std::path::Path;

use hopf_poisson::action::VerificationReport;
use hopf_poisson::quantize::{skew_coefficients, verify_skew_form};
use hopf_poisson::{
    equivariant_families, quantization_relations, CyclotomicField, DegreeClass, EnvelopePresentation, Error,
    HopfAction, PoissonAlgebra,
};
use serde_json::{json, Value};

use crate::input::{self, algebra_to_spec, Job, SchemaError};

pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub ok: bool,
}

pub enum Failure {
    Schema(String),
    Internal(String),
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DivisionByZero | Error::Elimination(_) | Error::DegreeOverflow { .. } => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Schema(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub fn load(path: &Path) -> Result<Job> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Schema(format!("cannot read {}: {e}", path.display())))?;
    Ok(input::parse_job(&text)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn table_report(p: &PoissonAlgebra) -> Report {
    let mut lines = vec![format!("variables: {}", p.ring().vars().join(", "))];
    let table = p.format_table();
    if table.is_empty() {
        lines.push("all brackets vanish".into());
    }
    lines.extend(table);
    Report {
        lines,
        json: serde_json::to_value(algebra_to_spec(p)).expect("serializable"),
        ok: true,
    }
}

pub fn check(job: &Job) -> Result<Report> {
    let p = job.algebra()?;
    let ring = p.ring();
    let jacobi = p.check_jacobi();
    let filtration = p.check_filtration();
    let unimodular = p.is_unimodular();
    let mut lines = Vec::new();
    if jacobi.ok() {
        lines.push("jacobi: ok".to_string());
    }
    let failures: Vec<Value> = jacobi
        .failures
        .iter()
        .map(|f| {
            let (i, j, k) = f.triple;
            let v = ring.vars();
            lines.push(format!("jacobi fails at ({},{},{}): {}", v[i], v[j], v[k], ring.format(&f.residual)));
            json!({"triple": [i + 1, j + 1, k + 1], "residual": ring.format(&f.residual)})
        })
        .collect();
    lines.push(format!("graded: {}", yes(p.is_graded())));
    match &filtration {
        Ok(()) => lines.push("filtered: yes".into()),
        Err(e) => lines.push(format!("filtered: no ({e})")),
    }
    lines.push(format!("unimodular: {}", yes(unimodular)));
    Ok(Report {
        lines,
        json: json!({
            "jacobi": {"ok": jacobi.ok(), "failures": failures},
            "graded": p.is_graded(),
            "filtered": filtration.is_ok(),
            "unimodular": unimodular,
        }),
        ok: jacobi.ok() && filtration.is_ok(),
    })
}

pub fn modular(job: &Job) -> Result<Report> {
    let p = job.algebra()?;
    let ring = p.ring();
    let phi = p.modular_derivation();
    let mut lines = Vec::new();
    let mut images = serde_json::Map::new();
    for (v, f) in ring.vars().iter().zip(&phi.images) {
        lines.push(format!("phi({v}) = {}", ring.format(f)));
        images.insert(v.clone(), json!(ring.format(f)));
    }
    lines.push(format!("unimodular: {}", yes(phi.is_zero())));
    Ok(Report {
        lines,
        json: json!({"phi": images, "unimodular": phi.is_zero()}),
        ok: true,
    })
}

pub fn rees(job: &Job) -> Result<Report> {
    Ok(table_report(&job.algebra()?.rees()?))
}

pub fn gr(job: &Job) -> Result<Report> {
    Ok(table_report(&job.algebra()?.assoc_graded()?))
}

pub fn quantize(job: &Job, lambda: &str, maxdeg: u32) -> Result<Report> {
    let p = job.algebra()?;
    let lam = input::constant(p.field(), lambda)?;
    let q = quantization_relations(&p, &lam)?;
    let pr = &q.presentation;
    let dims_ok = q.matches_commutative_dimensions(maxdeg)?;
    let mut lines = vec![
        pr.to_string(),
        format!("generic: {}", yes(q.generic)),
        format!("hilbert series matches k[u] through degree {maxdeg}: {}", yes(dims_ok)),
    ];
    let mut skew = Value::Null;
    if let Some(c) = skew_coefficients(&p) {
        let check = verify_skew_form(&q, &c)?;
        let m = p.nvars();
        let mut qs = serde_json::Map::new();
        for i in 0..m {
            for j in i + 1..m {
                lines.push(format!("q{}{} = {}", i + 1, j + 1, check.q[i][j]));
                qs.insert(format!("{},{}", i + 1, j + 1), json!(check.q[i][j].to_string()));
            }
        }
        lines.push(format!("skew form matches: {}", yes(check.matches)));
        skew = json!({"q": qs, "matches": check.matches});
    }
    let kernel: Vec<Vec<String>> = q
        .kernel_vectors()
        .iter()
        .map(|v| v.iter().map(|c| c.to_string()).collect())
        .collect();
    Ok(Report {
        lines,
        json: json!({
            "lambda": lam.to_string(),
            "presentation": pr.to_string(),
            "kernel": kernel,
            "generic": q.generic,
            "hilbert_matches": dims_ok,
            "skew": skew,
        }),
        ok: true,
    })
}

fn verification_lines(action: &HopfAction, rep: &VerificationReport) -> (Vec<String>, Value) {
    let ring = action.algebra().ring();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for f in &rep.failures {
        lines.push(format!("{} fails, {}: residual {}", f.axiom, f.witness, ring.format(&f.residual)));
        failures.push(json!({
            "axiom": f.axiom.to_string(),
            "witness": f.witness,
            "residual": ring.format(&f.residual),
        }));
    }
    if rep.ok() {
        lines.push("action verified".into());
    }
    (lines, json!({"ok": rep.ok(), "failures": failures}))
}

pub fn verify_action(job: &Job, maxdeg: u32) -> Result<Report> {
    let action = job.action()?;
    let rep = action.verify_module_poisson(maxdeg);
    let (lines, json) = verification_lines(&action, &rep);
    Ok(Report {
        lines,
        json,
        ok: rep.ok(),
    })
}

pub fn fixed_ring(job: &Job, maxdeg: u32) -> Result<Report> {
    let action = job.action()?;
    let rep = action.fixed_ring_report(maxdeg)?;
    let source = action.algebra().ring();
    let mut lines = rep.format(source);
    lines.push(format!("poisson closed through degree {maxdeg}: {}", yes(rep.poisson_closed)));
    let generators: Vec<String> = rep.generators.iter().map(|g| source.format(g)).collect();
    let brackets: serde_json::Map<String, Value> = rep
        .brackets
        .iter()
        .map(|((a, b), p)| {
            let v = p.as_ref().map(|p| rep.ring.format(p));
            (format!("{},{}", a + 1, b + 1), json!(v))
        })
        .collect();
    Ok(Report {
        lines,
        json: json!({
            "generators": generators,
            "degrees": rep.degrees,
            "brackets": brackets,
            "poisson_closed": rep.poisson_closed,
        }),
        ok: rep.poisson_closed,
    })
}

pub fn extend_rees(job: &Job, maxdeg: u32) -> Result<Report> {
    let action = job.action()?.extend_to_rees()?;
    let rep = action.verify_module_poisson(maxdeg);
    let (checks, verdict) = verification_lines(&action, &rep);
    let mut lines = action.format_generators();
    lines.extend(checks);
    Ok(Report {
        lines,
        json: json!({"generators": action.format_generators(), "verification": verdict}),
        ok: rep.ok(),
    })
}

pub fn classify_taft(m: usize, degree: DegreeClass, n: u32) -> Result<Report> {
    let field = CyclotomicField::new(n)?;
    let action = HopfAction::taft_standard(PoissonAlgebra::trivial(&field, m), n)?;
    let family = equivariant_families(&action, degree)?;
    let table = family.algebra.format_table();
    let obstructions: Vec<String> = family.jacobi_obstructions().iter().map(|s| s.to_string()).collect();
    let mut lines = vec![format!("parameters: {}", family.params.join(", "))];
    if table.is_empty() {
        lines.push("only the zero bracket".into());
    }
    lines.extend(table.iter().cloned());
    if obstructions.is_empty() {
        lines.push("jacobi obstructions: none".into());
    } else {
        lines.push(format!("jacobi obstructions: {}", obstructions.join(", ")));
    }
    Ok(Report {
        lines,
        json: json!({
            "parameters": family.params,
            "brackets": table,
            "obstructions": obstructions,
        }),
        ok: true,
    })
}

pub fn envelope(job: &Job, check_extension: bool, maxdeg: u32) -> Result<Report> {
    let p = job.algebra()?;
    let env = EnvelopePresentation::new(&p)?;
    let pbw = env.pbw_dimensions_match(maxdeg)?;
    let mut lines = vec![
        env.presentation().to_string(),
        format!("pbw dimensions through degree {maxdeg}: {}", if pbw { "ok" } else { "mismatch" }),
    ];
    let mut extension = Value::Null;
    let mut ok = pbw;
    if check_extension {
        let action = job.action()?;
        let rep = env.check_extension_conditions(&action, false)?;
        let mut residuals = Vec::new();
        for r in &rep.failures {
            lines.push(format!(
                "{} on ({},{}): first = {}, second = {}",
                r.h,
                r.a,
                r.b,
                env.format(&r.residual1),
                env.format(&r.residual2)
            ));
            residuals.push(json!({
                "h": r.h, "a": r.a, "b": r.b,
                "first": env.format(&r.residual1),
                "second": env.format(&r.residual2),
            }));
        }
        lines.push(format!("extension conditions: {}", if rep.ok() { "ok" } else { "fail" }));
        ok &= rep.ok();
        extension = json!({"ok": rep.ok(), "residuals": residuals, "products_ok": rep.products_ok});
    }
    Ok(Report {
        lines,
        json: json!({
            "presentation": env.presentation().to_string(),
            "pbw": pbw,
            "extension": extension,
        }),
        ok,
    })
}

pub fn hopf_verify(job: &Job) -> Result<Report> {
    let h = job.hopf()?;
    let failure = h.verify_axioms();
    let mut lines = vec![format!("dimension: {}", h.dim()), format!("basis: {}", h.basis().join(", "))];
    match &failure {
        None => lines.push("axioms: ok".into()),
        Some(f) => lines.push(format!("axioms: {f}")),
    }
    lines.push(format!("cocommutative: {}", yes(h.is_cocommutative())));
    Ok(Report {
        lines,
        json: json!({
            "dimension": h.dim(),
            "basis": h.basis(),
            "axioms_ok": failure.is_none(),
            "failure": failure.as_ref().map(|f| f.to_string()),
            "cocommutative": h.is_cocommutative(),
        }),
        ok: failure.is_none(),
    })
}
