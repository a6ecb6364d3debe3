//! Plain text output.

use std::fmt::Write;

use linesing::invariants::{InvariantReport, SeriesRow};

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

pub fn report(r: &InvariantReport) -> String {
    let mut out = String::new();
    let yn = |b: bool| if b { "yes" } else { "no" };
    let weights: Vec<String> = r.weights.iter().map(u32::to_string).collect();
    writeln!(out, "dim X = {}, p = {}, weights ({})", r.dim_x, r.p, weights.join(", ")).unwrap();
    writeln!(out, "primitive member: {}", yn(r.primitive_member)).unwrap();
    writeln!(out, "constant transversal type: {}", yn(r.constancy)).unwrap();
    writeln!(out, "j = {}", r.j).unwrap();
    writeln!(out, "ν = {}", r.nu).unwrap();
    writeln!(out, "χ = {}", r.chi).unwrap();
    writeln!(out, "λ = {}", opt(r.lambda)).unwrap();
    writeln!(out, "δ = {}", opt(r.delta)).unwrap();
    writeln!(out, "σ = {}", opt(r.sigma)).unwrap();
    writeln!(out, "mult = {}", opt(r.mult)).unwrap();
    writeln!(out, "q44: {}", r.q44).unwrap();
    if let Some(last) = r.series.last() {
        writeln!(out, "series: {} rows, last k = {} consistent: {}", r.series.len(), last.k, yn(last.consistent)).unwrap();
    }
    for e in &r.e_k {
        writeln!(out, "e_{} = {}", e.k, opt(e.e_k)).unwrap();
    }
    out
}

pub fn series(rows: &[SeriesRow]) -> String {
    let mut out = format!("{:>4}  {:>8}  {:>10}  consistent\n", "k", "μ(f_k)", "k+1+j+ν");
    for r in rows {
        match r.mu {
            Some(mu) => writeln!(
                out,
                "{:>4}  {:>8}  {:>10}  {}",
                r.k,
                mu,
                r.predicted,
                if r.consistent { "yes" } else { "no" }
            ),
            None => writeln!(out, "{:>4}  {:>8}  {:>10}  not isolated at this k", r.k, "-", r.predicted),
        }
        .unwrap();
    }
    out
}

/// `(n, engine, oracle)` rows under an ideal's label.
pub type OracleTable = [(String, Vec<(u32, u64, u64)>)];

pub fn oracle(table: &OracleTable) -> String {
    let mut out = String::new();
    for (label, rows) in table {
        writeln!(out, "{label}").unwrap();
        writeln!(out, "{:>4}  {:>8}  {:>8}", "n", "engine", "oracle").unwrap();
        for (n, e, o) in rows {
            let flag = if e == o { "" } else { "  MISMATCH" };
            writeln!(out, "{n:>4}  {e:>8}  {o:>8}{flag}").unwrap();
        }
    }
    out
}
