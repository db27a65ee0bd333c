//! One function per subcommand. Each returns the rendered output and whether
//! the mathematical check passed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use orbifold_core::cohomology::class_dimensions;
use orbifold_core::exactalg::{Param, ParamPoly, PolyElem, Rational, SkewElem, Vect};
use orbifold_core::obstructions::{
    build_case, check_conditions, classify, render_cell, table_case, table_cases, CheckOptions, ConditionReport,
    Domain, MapPair, ObstructionTable, Witness,
};
use orbifold_core::pbw::{dimension_census, RewriteSystem};
use orbifold_core::permgroup::Perm;
use orbifold_core::Exec;

use crate::error::CliError;
use crate::mapspec::MapSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub format: Format,
    pub exec: Exec,
    /// Largest `n` accepted by the enumerating commands.
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub body: String,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn json_body<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn no_csv(command: &str) -> CliError {
    CliError::Usage(format!("{command} has no csv output; use md or json"))
}

fn check_n(n: usize, min: usize, settings: &Settings) -> Result<(), CliError> {
    if n < min {
        return Err(CliError::Usage(format!("n must be at least {min}, got {n}")));
    }
    if n > settings.bound {
        return Err(CliError::Usage(format!(
            "n = {n} exceeds the degree bound {} (raise ORBIFOLD_MAX_DEGREE)",
            settings.bound
        )));
    }
    Ok(())
}

fn specialize(spec: &MapSpec, subst: &BTreeMap<Param, Rational>) -> MapSpec {
    if subst.is_empty() {
        spec.clone()
    } else {
        spec.substitute(subst)
    }
}

fn render_witness(w: &Witness) -> String {
    match w {
        Witness::Image { g, i, j, value } => format!("g={g} pair=(e{i},e{j}) value={value} not in V^g"),
        Witness::Invariance { cochain, detail } => {
            format!("{cochain}: {}", serde_json::to_string(detail).unwrap_or_default())
        }
        Witness::Residual { g, triple, residual } => {
            let (i, j, k) = triple;
            format!("g={g} triple=(e{i},e{j},e{k}) residual={residual}")
        }
    }
}

pub fn verify(
    n: usize,
    spec: &MapSpec,
    subst: &BTreeMap<Param, Rational>,
    exhaustive: bool,
    settings: &Settings,
) -> Result<Outcome, CliError> {
    check_n(n, 1, settings)?;
    let spec = specialize(spec, subst);
    let maps = spec.build(n)?;
    let opts = CheckOptions {
        domain: if exhaustive {
            Domain::Exhaustive
        } else {
            Domain::Representatives
        },
        exec: settings.exec,
        bound: settings.bound,
    };
    let report: ConditionReport = check_conditions(&maps.linear, &maps.constant, &opts)?;
    let body = match settings.format {
        Format::Json => json_body(&json!({ "command": "verify", "map": spec.to_string(), "report": report }))?,
        Format::Csv => return Err(no_csv("verify")),
        Format::Md => {
            let mut out = String::new();
            let domain = if exhaustive {
                "all of S_n"
            } else {
                "class representatives"
            };
            writeln!(out, "verify n={n} map=\"{spec}\" over {domain}").unwrap();
            for c in &report.conditions {
                writeln!(out, "condition {} ({}): {}", c.index, c.name, pass_fail(c.passed)).unwrap();
                if let Some(w) = &c.witness {
                    writeln!(out, "  witness: {}", render_witness(w)).unwrap();
                }
            }
            writeln!(out, "result: {}", pass_fail(report.passed)).unwrap();
            out
        }
    };
    Ok(Outcome {
        passed: report.passed,
        body,
    })
}

fn column_label((i, j, k): (usize, usize, usize)) -> String {
    format!("e{i},e{j},e{k}")
}

fn table_md(t: &ObstructionTable, out: &mut String) {
    writeln!(
        out,
        "## {} / {}: g = {}, H = <{}> of order {}\n",
        t.case,
        t.alpha.name(),
        t.g,
        t.h_generators.join(", "),
        t.h_order
    )
    .unwrap();
    let cols: Vec<String> = t.columns.iter().copied().map(column_label).collect();
    writeln!(out, "| x,y | {} |", cols.join(" | ")).unwrap();
    writeln!(out, "|---|{}", "---|".repeat(cols.len())).unwrap();
    for (fp, row) in t.rows.iter().zip(&t.cells) {
        let cells: Vec<String> = row.iter().map(render_cell).collect();
        writeln!(out, "| {},{} | {} |", fp.x, fp.y, cells.join(" | ")).unwrap();
    }
    let sums: Vec<String> = t.column_sums.iter().map(render_cell).collect();
    writeln!(out, "| column sum | {} |", sums.join(" | ")).unwrap();
    let s = &t.sufficiency;
    writeln!(out).unwrap();
    writeln!(out, "row blocks: {:?}", t.blocks).unwrap();
    for (name, ok) in [
        ("H centralizes g", s.h_centralizes),
        ("stabilizers normalize H", s.stabilizers_normalize),
        ("factor pairs covered", s.pairs_covered),
        ("triples covered", s.triples_covered),
        ("direct evaluation vanishes", s.direct_zero),
    ] {
        writeln!(out, "{name}: {}", pass_fail(ok)).unwrap();
    }
    writeln!(out, "table: {}\n", pass_fail(t.passed())).unwrap();
}

fn tables_csv(tables: &[ObstructionTable]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let width = tables.iter().map(|t| t.columns.len()).max().unwrap_or(0);
    let mut header = vec!["case".to_string(), "alpha".into(), "x".into(), "y".into()];
    header.extend((1..=width).flat_map(|k| [format!("triple{k}"), format!("value{k}")]));
    let csv_err = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for t in tables {
        let rows = t
            .rows
            .iter()
            .zip(&t.cells)
            .map(|(fp, row)| (fp.x.to_string(), fp.y.to_string(), row))
            .chain(std::iter::once((
                "column sum".to_string(),
                String::new(),
                &t.column_sums,
            )));
        for (x, y, row) in rows {
            let mut rec = vec![t.case.clone(), t.alpha.name().to_string(), x, y];
            for (col, v) in t.columns.iter().zip(row) {
                rec.push(column_label(*col));
                rec.push(render_cell(v));
            }
            rec.resize(header.len(), String::new());
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

/// `case` is one case id or `all`.
pub fn tables(case: &str, settings: &Settings) -> Result<Outcome, CliError> {
    let cases = if case == "all" {
        table_cases()
    } else {
        vec![table_case(case)?]
    };
    let mut built = Vec::new();
    for c in &cases {
        built.extend(build_case(c, settings.exec)?);
    }
    let passed = built.iter().all(ObstructionTable::passed);
    let body = match settings.format {
        Format::Json => json_body(&built)?,
        Format::Csv => tables_csv(&built)?,
        Format::Md => {
            let mut out = String::new();
            for t in &built {
                table_md(t, &mut out);
            }
            writeln!(out, "result: {}", pass_fail(passed)).unwrap();
            out
        }
    };
    Ok(Outcome { passed, body })
}

/// `c (e_i + ...)` pieces of a polynomial of degree at most 1, grouping
/// indices that share a coefficient.
pub fn render_value(v: &PolyElem, n: usize) -> String {
    let wrap = |c: &ParamPoly| {
        let s = c.to_string();
        if c.num_terms() > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    let mut groups: Vec<(ParamPoly, Vec<usize>)> = Vec::new();
    for (k, c) in v.linear_coeffs(n).into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match groups.iter_mut().find(|(d, _)| *d == c) {
            Some((_, idx)) => idx.push(k + 1),
            None => groups.push((c, vec![k + 1])),
        }
    }
    let mut parts: Vec<String> = groups
        .iter()
        .map(|(c, idx)| {
            let vars: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
            let body = if vars.len() == 1 {
                vars[0].clone()
            } else {
                format!("({})", vars.join("+"))
            };
            if c.as_constant().is_some_and(|q| q == Rational::from_integer(1.into())) {
                body
            } else {
                format!("{}*{body}", wrap(c))
            }
        })
        .collect();
    let constant = v.part(0);
    if !constant.is_zero() {
        let cell = render_cell(&constant);
        parts.push(match cell.split_once(' ') {
            Some(("1", power)) => power.to_string(),
            Some(("-1", power)) => format!("-{power}"),
            _ if constant.coeff(&[]).num_terms() > 1 && parts.is_empty() => cell,
            _ if constant.coeff(&[]).num_terms() > 1 => format!("({cell})"),
            _ => cell,
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

#[derive(Debug, Serialize)]
struct PresentLine {
    coefficient: String,
    plus: Vec<String>,
    minus: Vec<String>,
}

/// `κ(e_i, e_j)` as an element of the skew group algebra.
fn kappa_on(maps: &MapPair, i: usize, j: usize) -> SkewElem {
    let n = maps.degree();
    let (v, w) = (Vect::basis(i, n), Vect::basis(j, n));
    maps.linear.eval(&v, &w).add(&maps.constant.eval(&v, &w))
}

/// Generators-and-relations listing of `κ(e_1, e_2)`; every other `κ(e_i, e_j)`
/// is its image under a permutation.
pub fn present(
    n: usize,
    spec: &MapSpec,
    subst: &BTreeMap<Param, Rational>,
    settings: &Settings,
) -> Result<Outcome, CliError> {
    if !(3..=6).contains(&n) {
        return Err(CliError::Usage(format!("present needs 3 <= n <= 6, got {n}")));
    }
    let spec = specialize(spec, subst);
    let maps = spec.build(n)?;
    let k12 = kappa_on(&maps, 1, 2);

    let mut equal: Vec<(usize, usize)> = vec![(1, 2)];
    for i in 1..=n {
        for j in i + 1..=n {
            if (i, j) == (1, 2) {
                continue;
            }
            if kappa_on(&maps, i, j) == k12 {
                equal.push((i, j));
            } else if kappa_on(&maps, j, i) == k12 {
                equal.push((j, i));
            }
        }
    }
    equal.sort();

    let mut comps: Vec<(Perm, PolyElem)> = k12.components().map(|(g, v)| (g.clone(), v.clone())).collect();
    comps.sort_by_key(|(g, _)| (g.order(), g.to_string()));
    let mut groups: Vec<(PolyElem, Vec<Perm>)> = Vec::new();
    for (g, v) in comps {
        match groups.iter_mut().find(|(w, _)| *w == v) {
            Some((_, gs)) => gs.push(g),
            None => groups.push((v, vec![g])),
        }
    }
    let mut lines = Vec::new();
    let mut used = vec![false; groups.len()];
    for k in 0..groups.len() {
        if used[k] {
            continue;
        }
        used[k] = true;
        let (v, gs) = &groups[k];
        let partner = groups
            .iter()
            .enumerate()
            .position(|(m, (w, hs))| !used[m] && *w == v.neg() && hs.len() == 1 && gs.len() == 1);
        let minus = match partner {
            Some(m) => {
                used[m] = true;
                groups[m].1.iter().map(ToString::to_string).collect()
            }
            None => Vec::new(),
        };
        lines.push(PresentLine {
            coefficient: render_value(v, n),
            plus: gs.iter().map(ToString::to_string).collect(),
            minus,
        });
    }

    let lhs: Vec<String> = equal.iter().map(|(i, j)| format!("kappa(e{i},e{j})")).collect();
    let body = match settings.format {
        Format::Json => json_body(&json!({
            "command": "present",
            "n": n,
            "map": spec.to_string(),
            "equal": lhs,
            "terms": lines,
        }))?,
        Format::Csv => return Err(no_csv("present")),
        Format::Md => {
            let mut out = String::new();
            writeln!(
                out,
                "T(V) # S_{n} / < e_i e_j - e_j e_i - kappa(e_i,e_j) : 1 <= i < j <= {n} >"
            )
            .unwrap();
            writeln!(out, "map: \"{spec}\"\n").unwrap();
            if lines.is_empty() {
                writeln!(out, "{} = 0", lhs.join(" = ")).unwrap();
            }
            for (k, line) in lines.iter().enumerate() {
                let mut group = line.plus.join(" + ");
                if !line.minus.is_empty() {
                    group = format!("{group} - {}", line.minus.join(" - "));
                }
                let coeff = if line.coefficient.contains(" + ") || line.coefficient.contains(" - ") {
                    format!("({})", line.coefficient)
                } else {
                    line.coefficient.clone()
                };
                let (sign, coeff) = match coeff.strip_prefix('-') {
                    Some(rest) if k > 0 => ("-", rest.to_string()),
                    _ => ("+", coeff),
                };
                let prefix = if k == 0 {
                    format!("{} =", lhs.join(" = "))
                } else {
                    format!("  {sign}")
                };
                writeln!(out, "{prefix} {coeff} ⊗ ({group})").unwrap();
            }
            writeln!(out, "\nkappa(e_s(1),e_s(2)) = s . kappa(e1,e2) for s in S_{n}").unwrap();
            out
        }
    };
    Ok(Outcome { passed: true, body })
}

fn class_label(cycle_type: &[usize]) -> String {
    let moved: Vec<usize> = cycle_type.iter().copied().filter(|&c| c > 1).collect();
    match moved.as_slice() {
        [] => "identity".into(),
        [k] => format!("{k}-cycle"),
        _ => moved.iter().map(ToString::to_string).collect::<Vec<_>>().join("-"),
    }
}

pub fn cohomology(n: usize, settings: &Settings) -> Result<Outcome, CliError> {
    check_n(n, 1, settings)?;
    let dims = class_dimensions(n, settings.bound)?;
    let body = match settings.format {
        Format::Json => json_body(&json!({ "command": "cohomology", "n": n, "classes": dims }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::Internal(e.to_string());
            w.write_record([
                "class",
                "representative",
                "class_size",
                "codim",
                "linear",
                "constant",
                "total",
            ])
            .map_err(csv_err)?;
            for d in &dims {
                w.write_record([
                    class_label(&d.cycle_type),
                    d.representative.clone(),
                    d.class_size.to_string(),
                    d.codim.to_string(),
                    d.linear.to_string(),
                    d.constant.to_string(),
                    d.total().to_string(),
                ])
                .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))?
        }
        Format::Md => {
            let mut out = String::new();
            writeln!(out, "invariant Hochschild 2-cochains of degree <= 1 for S_{n}\n").unwrap();
            writeln!(
                out,
                "| class | representative | size | codim | linear | constant | total |"
            )
            .unwrap();
            writeln!(out, "|---|---|---|---|---|---|---|").unwrap();
            for d in &dims {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    class_label(&d.cycle_type),
                    d.representative,
                    d.class_size,
                    d.codim,
                    d.linear,
                    d.constant,
                    d.total()
                )
                .unwrap();
            }
            writeln!(out).unwrap();
            let mut others = 0;
            for d in &dims {
                match class_label(&d.cycle_type).as_str() {
                    label @ ("identity" | "3-cycle") => writeln!(out, "{label}: {}", d.total()).unwrap(),
                    _ => others += d.total(),
                }
            }
            writeln!(out, "others: {others}").unwrap();
            out
        }
    };
    Ok(Outcome { passed: true, body })
}

pub fn classify_cmd(n: usize, settings: &Settings) -> Result<Outcome, CliError> {
    check_n(n, 3, settings)?;
    let opts = CheckOptions {
        exec: settings.exec,
        bound: settings.bound,
        ..CheckOptions::default()
    };
    let c = classify(n, &opts)?;
    let passed = c.branches.iter().all(|b| b.verified);
    let body = match settings.format {
        Format::Json => json_body(&json!({ "command": "classify", "classification": c }))?,
        Format::Csv => return Err(no_csv("classify")),
        Format::Md => {
            let mut out = String::new();
            writeln!(
                out,
                "classify n={n}: kappa_L = a1 L1 + Ltri(a,b), kappa_C = Ctri(c) + Cpenta(a,b)"
            )
            .unwrap();
            let none = || "none".to_string();
            let list = |v: &[String]| if v.is_empty() { none() } else { v.join(", ") };
            writeln!(out, "parameters absent at this n: {}", list(&c.irrelevant)).unwrap();
            writeln!(out, "constraints:").unwrap();
            for p in &c.constraints {
                writeln!(out, "  {p} = 0").unwrap();
            }
            writeln!(out, "branches:").unwrap();
            for (k, b) in c.branches.iter().enumerate() {
                writeln!(
                    out,
                    "  {}. {} (free: {}) {}",
                    k + 1,
                    list(&b.relations),
                    list(&b.free),
                    if b.verified { "verified" } else { "NOT verified" }
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Outcome { passed, body })
}

pub fn pbw(
    n: usize,
    spec: &MapSpec,
    subst: &BTreeMap<Param, Rational>,
    census: Option<usize>,
    settings: &Settings,
) -> Result<Outcome, CliError> {
    check_n(n, 1, settings)?;
    let spec = specialize(spec, subst);
    let maps = spec.build(n)?;
    let rs = RewriteSystem::new(&maps.linear, &maps.constant)?;
    let report = rs.check_overlaps()?;
    let entries = match census {
        None => None,
        Some(d) => {
            let free = spec.free_params();
            if !free.is_empty() {
                let names: Vec<&str> = free.iter().map(|p| p.name()).collect();
                return Err(CliError::Usage(format!(
                    "--census needs numeric parameters; use --subst for {}",
                    names.join(", ")
                )));
            }
            Some(dimension_census(&rs, d)?)
        }
    };
    let census_ok = entries
        .as_ref()
        .is_none_or(|es| es.iter().all(|e| e.dimension == e.expected));
    let passed = report.passed && census_ok;
    let body = match settings.format {
        Format::Json => json_body(&json!({
            "command": "pbw",
            "map": spec.to_string(),
            "overlaps": report,
            "census": entries,
        }))?,
        Format::Csv => return Err(no_csv("pbw")),
        Format::Md => {
            let mut out = String::new();
            writeln!(out, "pbw n={n} map=\"{spec}\"").unwrap();
            writeln!(
                out,
                "overlaps resolved: {} checked, {}",
                report.checked,
                pass_fail(report.passed)
            )
            .unwrap();
            if let Some(a) = &report.ambiguity {
                writeln!(out, "  ambiguity at {}: {} vs {}", a.overlap, a.left, a.right).unwrap();
                writeln!(out, "  difference: {}", a.difference).unwrap();
            }
            if let Some(es) = &entries {
                writeln!(out, "\n| degree | dimension | expected |").unwrap();
                writeln!(out, "|---|---|---|").unwrap();
                for e in es {
                    writeln!(out, "| {} | {} | {} |", e.degree, e.dimension, e.expected).unwrap();
                }
                writeln!(out, "census: {}", pass_fail(census_ok)).unwrap();
            }
            writeln!(out, "result: {}", pass_fail(passed)).unwrap();
            out
        }
    };
    Ok(Outcome { passed, body })
}
