//! Human-readable renderings of the JSON reports.

use std::fmt::Write;

use serde::Serialize;

use ratcurve::report::{AnalysisJson, CoreJson, FiberJson, ReparamJson, RunInfo};

/// Serialized name of a unit enum variant, e.g. `derived-by-theorem`.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_line(out: &mut String, run: &RunInfo) {
    let _ = write!(out, "field {}, seed {}", run.field, run.seed);
    if let Some(t) = run.timestamp {
        let _ = write!(out, ", at {t}");
    }
    out.push('\n');
}

fn matrix(out: &mut String, rows: &[Vec<String>]) {
    let cols = rows.first().map_or(0, |r| r.len());
    let widths: Vec<usize> = (0..cols).map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    for row in rows {
        out.push_str("  [ ");
        for (j, e) in row.iter().enumerate() {
            let _ = write!(out, "{e:>w$}", w = widths[j]);
            out.push_str(if j + 1 < cols { "  " } else { " ]\n" });
        }
    }
}

pub fn analysis(a: &AnalysisJson) -> String {
    let mut out = String::new();
    run_line(&mut out, &a.run);
    let _ = writeln!(out, "generators (d = {}, n = {}): {}", a.d, a.n, a.generators.join(", "));
    let _ = writeln!(out, "map degree r     {}", a.r);
    let _ = writeln!(out, "e(A)             {}", a.e_a);
    let _ = writeln!(out, "j-multiplicity   {}", a.j);
    let _ = writeln!(out, "birational       {}", yes_no(a.birational));
    let _ = writeln!(out, "column degrees   {:?}", a.col_degrees);
    let _ = writeln!(out, "HF of A          {:?}", a.hf_a);
    let _ = writeln!(out, "fiber samples    {:?}", a.fiber_samples);
    out.push_str("phi:\n");
    matrix(&mut out, &a.phi);
    out.push_str("equivalent conditions:\n");
    for row in &a.c3 {
        let suffix = if row.sufficient_only { ", sufficient only" } else { "" };
        let _ = writeln!(out, "  ({}) {:<5} {} [{}{suffix}]", row.id, row.holds, row.statement, tag(&row.provenance));
    }
    if let Some(c) = &a.corn4 {
        let _ = writeln!(
            out,
            "prime-degree entries: degree {}, {} minimal generators, predicts birational: {}",
            c.entry_degree,
            c.entry_min_gens,
            yes_no(c.predicts_birational)
        );
    }
    out.push_str("consistency:\n");
    for c in &a.consistency {
        let _ = writeln!(out, "  {:<4} {}", if c.holds { "ok" } else { "FAIL" }, c.name);
    }
    out
}

pub fn fiber(f: &FiberJson) -> String {
    let mut out = String::new();
    run_line(&mut out, &f.run);
    let _ = writeln!(out, "point        [{}]", f.point.join(" : "));
    let _ = writeln!(out, "on image     {}", yes_no(f.on_image));
    if let Some(form) = &f.fiber_form {
        let _ = writeln!(out, "fiber form   {form}");
    }
    let _ = writeln!(out, "fiber degree {}", f.fiber_degree);
    if let Some(note) = &f.note {
        let _ = writeln!(out, "note         {note}");
    }
    out
}

pub fn reparam(r: &ReparamJson) -> String {
    let mut out = String::new();
    run_line(&mut out, &r.run);
    let _ = writeln!(out, "map degree r {}", r.r);
    let _ = writeln!(out, "X = {}", r.f1);
    let _ = writeln!(out, "Y = {}", r.f2);
    let _ = writeln!(out, "new generators: {}", r.new_gens.join(", "));
    let _ = writeln!(out, "phi in X, Y ({}), column degrees {:?}:", tag(&r.route), r.new_col_degrees);
    matrix(&mut out, &r.rewritten_phi);
    let v = &r.verification;
    let _ = writeln!(out, "regular sequence {}", yes_no(v.regular_sequence));
    let _ = writeln!(out, "I'R = I          {}", yes_no(v.extension));
    let _ = writeln!(out, "new degree one   {}", yes_no(v.new_degree_one));
    if let Some(n) = &r.notice {
        let _ = writeln!(out, "{n}");
    }
    out
}

pub fn core(c: &CoreJson) -> String {
    let mut out = String::new();
    run_line(&mut out, &c.run);
    let _ = writeln!(out, "r = {}, d/r = {}", c.r, c.e);
    let _ = writeln!(out, "core generated in degree {}:", c.core_degree);
    for g in &c.core_gens {
        let _ = writeln!(out, "  {g}");
    }
    let _ = writeln!(out, "core = m^(2d-1)      {}", yes_no(c.equals_m_power));
    let _ = writeln!(
        out,
        "integrally closed    {} [{}]",
        yes_no(c.integrally_closed.value),
        tag(&c.integrally_closed.provenance)
    );
    let _ = writeln!(out, "canonical module     {}", c.canonical);
    out
}
