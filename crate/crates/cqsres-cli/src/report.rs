//! Text, JSON and DOT renderings of library results.

use std::fmt::Write as _;

use cqsres::chain::{WahlResolution, WahlSingularity};
use cqsres::components::ComponentReport;
use cqsres::quiver::{DolgachevReport, ExtremalWitness, Quiver};
use cqsres::{format_string, BigInt, Fraction};
use serde_json::{json, Value};

/// Multiplicities above this are drawn as one labelled edge.
const MAX_PARALLEL: u32 = 6;

#[derive(Clone, Copy)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn head(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[1m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

pub fn num(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn nums(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(num).collect())
}

fn matrix(m: &[Vec<BigInt>]) -> Value {
    Value::Array(m.iter().map(|row| nums(row)).collect())
}

pub fn tuple(xs: &[BigInt]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Nodes as Wahl chains, e.g. `[4]-(1)-[5,2]`; smooth points left out.
pub fn hj_form(w: &WahlResolution) -> String {
    let node = |p: &WahlSingularity| if p.is_smooth() { None } else { Some(format_string(&p.chain())) };
    let mut parts = Vec::new();
    for (i, p) in w.sings().iter().enumerate() {
        parts.extend(node(p));
        if i < w.curves().len() {
            parts.push(format!("({})", w.curves()[i]));
        }
    }
    if parts.is_empty() {
        "*".into()
    } else {
        parts.join("-")
    }
}

pub fn resolution_json(w: &WahlResolution) -> Value {
    json!({
        "chain": w.to_string(),
        "compact": w.compact(),
        "singularities": w.sings().iter().map(|p| json!([num(p.n()), num(p.a())])).collect::<Vec<_>>(),
        "curves": nums(w.curves()),
        "signed_delta": nums(&w.signed_deltas()),
    })
}

pub fn quiver_json(q: &Quiver) -> Value {
    json!({ "ranks": nums(&q.ranks), "hom": matrix(&q.hom), "arrows": matrix(&q.arrows) })
}

pub fn component_json(c: &ComponentReport) -> Value {
    json!({
        "zero_fraction": nums(c.zero_fraction.k()),
        "dimension": num(&c.dimension),
        "delta": nums(&c.delta.delta),
        "m_resolution": resolution_json(&c.m_res),
        "n_resolution": resolution_json(&c.n_res),
        "quiver": quiver_json(&c.quiver),
    })
}

pub fn components_json(f: &Fraction, cs: &[ComponentReport]) -> Value {
    json!({ "target": f.to_string(), "components": cs.iter().map(component_json).collect::<Vec<_>>() })
}

fn quiver_lines(out: &mut String, q: &Quiver) {
    let ranks: Vec<String> = q.ranks.iter().enumerate().map(|(i, n)| format!("E{i}:{n}")).collect();
    let _ = writeln!(out, "  ranks         {}", ranks.join(" "));
    let edges = q.edges();
    if edges.is_empty() {
        let _ = writeln!(out, "  arrows        none");
    } else {
        let list: Vec<String> = edges.iter().map(|(s, t, m)| format!("E{s}->E{t} x{m}")).collect();
        let _ = writeln!(out, "  arrows        {}", list.join(", "));
    }
    let mut homs = Vec::new();
    for i in (0..q.len()).rev() {
        for j in (0..i).rev() {
            if q.hom[i][j] != BigInt::from(0) {
                homs.push(format!("({i},{j}):{}", q.hom[i][j]));
            }
        }
    }
    let _ = writeln!(out, "  hom           {}", if homs.is_empty() { "0".into() } else { homs.join(" ") });
}

pub fn components_text(f: &Fraction, cs: &[ComponentReport], style: Style) -> String {
    let mut out = String::new();
    let (d, o) = (f.delta(), f.omega());
    let _ = writeln!(out, "{}", style.head(&format!("1/{d}(1,{o}): {} components", cs.len())));
    for (idx, c) in cs.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "{}", style.head(&format!("component {}", idx + 1)));
        let _ = writeln!(out, "  zero fraction {}", c.zero_fraction);
        let _ = writeln!(out, "  dimension     {}", c.dimension);
        let _ = writeln!(out, "  delta         {}", tuple(&c.delta.delta));
        let _ = writeln!(out, "  M-resolution  {}", c.m_res.compact());
        let _ = writeln!(out, "       full     {}", c.m_res);
        let _ = writeln!(out, "  N-resolution  {}", c.n_res.compact());
        let _ = writeln!(out, "       full     {}", c.n_res);
        quiver_lines(&mut out, &c.quiver);
    }
    out
}

pub fn quiver_text(n: &WahlResolution, q: &Quiver, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", style.head(&format!("quiver of {n}")));
    quiver_lines(&mut out, q);
    out
}

/// One digraph; arrows run from the higher index to the lower one.
pub fn quiver_dot(name: &str, q: &Quiver) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  rankdir=RL;");
    for (i, n) in q.ranks.iter().enumerate() {
        let _ = writeln!(out, "  E{i} [label=\"E{i} (rank {n})\"];");
    }
    for (s, t, m) in q.edges() {
        match u32::try_from(&m) {
            Ok(k) if k <= MAX_PARALLEL => {
                for _ in 0..k {
                    let _ = writeln!(out, "  E{s} -> E{t};");
                }
            }
            _ => {
                let _ = writeln!(out, "  E{s} -> E{t} [label=\"{m}\"];");
            }
        }
    }
    let _ = writeln!(out, "}}");
    out
}

pub fn components_dot(cs: &[ComponentReport]) -> String {
    cs.iter().enumerate().map(|(i, c)| quiver_dot(&format!("component_{}", i + 1), &c.quiver)).collect()
}

pub fn witness_text(w: &ExtremalWitness) -> String {
    format!("{} (lambda = {}, eps_a = {}, eps_b = {}, delta = {})", w.resolution, w.lambda, w.eps_a, w.eps_b, w.c)
}

pub fn witness_json(w: &ExtremalWitness) -> Value {
    json!({
        "a": num(&w.a), "b": num(&w.b), "eps_a": num(&w.eps_a), "eps_b": num(&w.eps_b),
        "lambda": num(&w.lambda), "c": num(&w.c),
        "resolution": resolution_json(&w.resolution),
    })
}

pub fn dolgachev_text(r: &DolgachevReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", style.head(&format!("Dolgachev p = {}, q = {}", r.p, r.q)));
    let _ = writeln!(out, "  target        1/{}(1,{})", r.target.delta(), r.target.omega());
    let _ = writeln!(out, "  delta         {}", tuple(&r.delta));
    let _ = writeln!(out, "  M-resolution  {}", hj_form(&r.m_res));
    let _ = writeln!(out, "       full     {}", r.m_res);
    let _ = writeln!(out, "  N-resolution  {}", hj_form(&r.n_res));
    let _ = writeln!(out, "       full     {}", r.n_res);
    quiver_lines(&mut out, &r.quiver);
    let _ = writeln!(out, "  pattern       {}", if r.pattern_checked { "checked" } else { "not applicable (p = 3)" });
    let g = &r.gram;
    let _ = writeln!(out, "  gram (quoted) [[{}, {}], [{}, {}]]", g[0][0], g[0][1], g[1][0], g[1][1]);
    out
}

pub fn dolgachev_json(r: &DolgachevReport) -> Value {
    json!({
        "p": num(&r.p), "q": num(&r.q),
        "target": r.target.to_string(),
        "delta": nums(&r.delta),
        "m_resolution": resolution_json(&r.m_res),
        "n_resolution": resolution_json(&r.n_res),
        "quiver": quiver_json(&r.quiver),
        "pattern_checked": r.pattern_checked,
        "gram_quoted": r.gram.iter().map(|row| nums(row)).collect::<Vec<_>>(),
    })
}
