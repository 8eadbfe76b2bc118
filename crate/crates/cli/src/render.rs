//! Plain-text tables for terminal output.

use std::fmt::Write;

use killing_core::geometry::{DependenceLabel, DependenceProfile};
use killing_core::io::{FamilyResponse, FieldDoc, MetricDoc};
use killing_core::verify::{FlowReport, GridReport, Refinement};

use crate::examples::Summary;

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn header(out: &mut String, m: &MetricDoc, v: &FieldDoc) {
    let _ = writeln!(out, "metric   f1 = {}, f2 = {}", m.f1, m.f2);
    let _ = writeln!(out, "field    ({}) v1 = {}, v2 = {}", v.basis, v.v1, v.v2);
}

fn grid_lines(out: &mut String, r: &GridReport) {
    let [a, b, c, d] = <[f64; 4]>::from(r.region);
    let _ = writeln!(out, "region   [{a}, {b}] x [{c}, {d}], {}x{} lattice", r.resolution[0], r.resolution[1]);
    let _ = writeln!(out, "max|r|   {:.6e} at ({}, {})", r.max_abs, r.argmax[0], r.argmax[1]);
    let c = &r.component_max;
    let _ = writeln!(out, "  r11    {:.6e}", c.r11);
    let _ = writeln!(out, "  r22    {:.6e}", c.r22);
    let _ = writeln!(out, "  r12    {:.6e}", c.r12);
    let _ = writeln!(out, "tol      {:e}", r.tol);
    let _ = writeln!(out, "result   {}", verdict(r.pass));
}

pub fn check(m: &MetricDoc, v: &FieldDoc, r: &GridReport) -> String {
    let mut out = String::new();
    header(&mut out, m, v);
    grid_lines(&mut out, r);
    out
}

pub fn flow(m: &MetricDoc, v: &FieldDoc, r: &FlowReport, refine: &Refinement) -> String {
    let mut out = String::new();
    header(&mut out, m, v);
    let _ = writeln!(out, "start    ({}, {})", r.start[0], r.start[1]);
    let _ = writeln!(out, "end      ({:.12}, {:.12}) after t = {} in {} steps", r.end[0], r.end[1], r.t, r.steps);
    let d = &r.difference;
    let _ = writeln!(out, "J^T G J - G   [{:.3e} {:.3e}; {:.3e} {:.3e}]", d.t11, d.t12, d.t12, d.t22);
    let _ = writeln!(out, "deviation {:.6e} (tol {:e})", r.max_deviation, r.tol);
    let _ = writeln!(
        out,
        "refine   {:.3e} at {} steps, {:.3e} at {} steps, ratio {:.2}",
        refine.coarse, refine.coarse_steps, refine.fine, refine.fine_steps, refine.ratio
    );
    let _ = writeln!(out, "result   {}", verdict(r.pass));
    out
}

pub fn classify(m: &MetricDoc, label: DependenceLabel, p: &DependenceProfile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "metric   f1 = {}, f2 = {}", m.f1, m.f2);
    let mp = &p.max_partials;
    let _ = writeln!(out, "max|d f1| ({:.3e}, {:.3e})", mp[0][0], mp[0][1]);
    let _ = writeln!(out, "max|d f2| ({:.3e}, {:.3e})", mp[1][0], mp[1][1]);
    let _ = writeln!(out, "label    {label}");
    out
}

pub fn family(f: &FamilyResponse, check: &GridReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case     {}", f.case);
    let _ = writeln!(out, "assumes  {}", f.provenance.hypothesis);
    let _ = writeln!(out, "gives    {}", f.provenance.result);
    if let Some(s) = f.provenance.subcase {
        let _ = writeln!(out, "subcase  {s}");
    }
    if let Some(k) = f.k {
        let _ = writeln!(out, "k        {k}");
    }
    if let Some(l) = f.lambda {
        let _ = writeln!(out, "lambda   {l}");
    }
    header(&mut out, &f.metric, &f.field);
    let _ = writeln!(out, "as       ({}) v1 = {}, v2 = {}", f.converted.basis, f.converted.v1, f.converted.v2);
    grid_lines(&mut out, check);
    out
}

pub fn examples(s: &Summary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<24} {:>12} {:>12}  result",
        "example", "grid max|r|", "flow dev"
    );
    for e in &s.examples {
        let _ = writeln!(
            out,
            "{:<24} {:>12.3e} {:>12.3e}  {}",
            e.name,
            e.grid_max_abs,
            e.flow_deviation,
            verdict(e.pass)
        );
    }
    if s.failures.is_empty() {
        let _ = writeln!(out, "all {} examples pass", s.examples.len());
    } else {
        let _ = writeln!(out, "failed: {}", s.failures.join(", "));
    }
    out
}
