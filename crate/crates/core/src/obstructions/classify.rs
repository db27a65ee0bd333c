use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::conditions::{check_conditions, residuals, CheckOptions, MapPair};
use crate::cochains::{kappa_c_penta, kappa_c_tri, kappa_l1, kappa_l_tri, TwoCochain};
use crate::error::{Error, Result};
use crate::exactalg::{Param, ParamPoly, Rational};
use crate::permgroup::class_representatives;

/// `κ^L = a1 κ_1 + κ^L_tri(a, b)` and `κ^C = κ^C_tri(c) + κ^C_penta(a, b)`.
pub fn family(n: usize) -> Result<MapPair> {
    let (a, b) = (ParamPoly::a(), ParamPoly::b());
    let linear = kappa_l1(&ParamPoly::a1(), n).add(&kappa_l_tri(&a, &b, n)?)?;
    let constant = kappa_c_tri(&ParamPoly::c(), n)?.add(&kappa_c_penta(&a, &b, n))?;
    MapPair::new(&linear, &constant)
}

/// One component of the solution set, parametrized by its free parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Branch {
    /// Equations `param = expression` in the free parameters.
    pub relations: Vec<String>,
    pub free: Vec<String>,
    /// The specialized family passes every condition.
    pub verified: bool,
    #[serde(skip)]
    assignment: BTreeMap<Param, ParamPoly>,
}

impl Branch {
    pub fn assignment(&self) -> &BTreeMap<Param, ParamPoly> {
        &self.assignment
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub n: usize,
    /// Parameters that do not occur in the family at this `n`.
    pub irrelevant: Vec<String>,
    /// Distinct residual coefficients, each scaled to leading coefficient 1.
    pub constraints: Vec<String>,
    pub branches: Vec<Branch>,
}

type Assignment = BTreeMap<Param, ParamPoly>;

fn monic(p: &ParamPoly) -> ParamPoly {
    let lead = p.terms().last().map(|(_, c)| c.clone()).expect("nonzero");
    p.scale(&(Rational::from_integer(1.into()) / lead))
}

fn divides_all(v: Param, ps: &[ParamPoly]) -> bool {
    ps.iter().all(|p| p.terms().all(|(e, _)| e[v.index()] > 0))
}

fn divide_by(v: Param, p: &ParamPoly) -> ParamPoly {
    p.div_exact(&ParamPoly::var(v)).expect("checked divisibility")
}

fn assign(sol: &Assignment, v: Param, value: &ParamPoly) -> Assignment {
    let mut out: Assignment = sol.iter().map(|(k, e)| (*k, e.substitute_poly(v, value))).collect();
    out.insert(v, value.clone());
    out
}

fn substitute_all(ps: &[ParamPoly], v: Param, value: &ParamPoly) -> Vec<ParamPoly> {
    ps.iter()
        .map(|p| p.substitute_poly(v, value))
        .filter(|p| !p.is_zero())
        .collect()
}

/// Solve `ps = 0` by splitting off common parameter factors, eliminating
/// linear equations and branching on monomial equations.
fn solve(ps: Vec<ParamPoly>, sol: Assignment, out: &mut Vec<Assignment>) -> Result<()> {
    let ps: Vec<ParamPoly> = ps.into_iter().filter(|p| !p.is_zero()).collect();
    if ps.is_empty() {
        out.push(sol);
        return Ok(());
    }
    if ps.iter().any(|p| p.as_constant().is_some()) {
        return Ok(());
    }
    if let Some(v) = Param::ALL.into_iter().find(|&v| divides_all(v, &ps)) {
        solve(
            substitute_all(&ps, v, &ParamPoly::zero()),
            assign(&sol, v, &ParamPoly::zero()),
            out,
        )?;
        return solve(ps.iter().map(|p| divide_by(v, p)).collect(), sol, out);
    }
    if let Some(p) = ps.iter().find(|p| p.total_degree() == 1) {
        let v = *p.variables().last().expect("non-constant");
        let mut unit = [0u8; 4];
        unit[v.index()] = 1;
        let coeff = p
            .terms()
            .find(|(e, _)| **e == unit)
            .map(|(_, c)| c.clone())
            .expect("linear in v");
        let rest = p - &ParamPoly::var(v).scale(&coeff);
        let value = rest.scale(&(-Rational::from_integer(1.into()) / coeff));
        return solve(substitute_all(&ps, v, &value), assign(&sol, v, &value), out);
    }
    if let Some(p) = ps.iter().find(|p| p.num_terms() == 1) {
        for v in p.variables() {
            solve(
                substitute_all(&ps, v, &ParamPoly::zero()),
                assign(&sol, v, &ParamPoly::zero()),
                out,
            )?;
        }
        return Ok(());
    }
    Err(Error::Internal(format!(
        "no elimination step applies to {}",
        ps.iter().map(ParamPoly::to_string).collect::<Vec<_>>().join(", ")
    )))
}

/// `small ⊆ big` when every relation of `big` holds on `small`'s parametrization.
fn contained(small: &Assignment, big: &Assignment) -> bool {
    let eval = |p: &ParamPoly| small.iter().fold(p.clone(), |acc, (v, e)| acc.substitute_poly(*v, e));
    big.iter()
        .all(|(v, e)| (&eval(&ParamPoly::var(*v)) - &eval(e)).is_zero())
}

fn specialize(c: &TwoCochain, sol: &Assignment) -> TwoCochain {
    c.map_coeffs(|p| sol.iter().fold(p.clone(), |acc, (v, e)| acc.substitute_poly(*v, e)))
}

fn family_params(maps: &MapPair) -> BTreeSet<Param> {
    let mut used = BTreeSet::new();
    for c in [&maps.linear, &maps.constant] {
        for (_, comp) in c.components() {
            for v in comp.values() {
                for p in v.coefficients() {
                    used.extend(p.variables());
                }
            }
        }
    }
    used
}

/// Parameter values for which the family satisfies every condition.
pub fn classify(n: usize, opts: &CheckOptions) -> Result<Classification> {
    let maps = family(n)?;
    let elements = class_representatives(n);
    let mut constraints: BTreeSet<ParamPoly> = BTreeSet::new();
    for cond in 2..=4 {
        for r in residuals(&maps, cond, &elements, opts.exec)? {
            constraints.extend(r.value.coefficients().filter(|c| !c.is_zero()).map(monic));
        }
    }
    let used = family_params(&maps);

    let mut sols = Vec::new();
    solve(constraints.iter().cloned().collect(), Assignment::new(), &mut sols)?;
    for s in &mut sols {
        s.retain(|v, _| used.contains(v));
    }
    let mut kept: Vec<Assignment> = Vec::new();
    for (k, s) in sols.iter().enumerate() {
        let dominated = sols
            .iter()
            .enumerate()
            .any(|(m, t)| m != k && contained(s, t) && (!contained(t, s) || m < k));
        if !dominated {
            kept.push(s.clone());
        }
    }

    let mut branches = Vec::new();
    for s in kept {
        let linear = specialize(&maps.linear, &s);
        let constant = specialize(&maps.constant, &s);
        let verified = check_conditions(&linear, &constant, opts)?.passed;
        branches.push(Branch {
            relations: s.iter().map(|(v, e)| format!("{} = {e}", v.name())).collect(),
            free: used
                .iter()
                .filter(|v| !s.contains_key(v))
                .map(|v| v.name().to_string())
                .collect(),
            verified,
            assignment: s,
        });
    }
    Ok(Classification {
        n,
        irrelevant: Param::ALL
            .into_iter()
            .filter(|v| !used.contains(v))
            .map(|v| v.name().to_string())
            .collect(),
        constraints: constraints.iter().map(ParamPoly::to_string).collect(),
        branches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;

    fn opts() -> CheckOptions {
        CheckOptions {
            exec: Exec::Sequential,
            ..CheckOptions::default()
        }
    }

    fn relations(c: &Classification) -> BTreeSet<Vec<String>> {
        c.branches.iter().map(|b| b.relations.clone()).collect()
    }

    #[test]
    fn two_branches_at_four() {
        let c = classify(4, &opts()).unwrap();
        let expect: BTreeSet<Vec<String>> = [
            vec!["a1 = 0".to_string()],
            vec!["a = 0".to_string(), "b = 0".to_string(), "c = 0".to_string()],
        ]
        .into_iter()
        .collect();
        assert_eq!(relations(&c), expect);
        assert!(c.branches.iter().all(|b| b.verified));
        assert!(c.irrelevant.is_empty());
    }

    #[test]
    fn b_is_irrelevant_at_three() {
        let c = classify(3, &opts()).unwrap();
        assert_eq!(c.irrelevant, vec!["b".to_string()]);
        let expect: BTreeSet<Vec<String>> = [
            vec!["a1 = 0".to_string()],
            vec!["a = 0".to_string(), "c = 0".to_string()],
        ]
        .into_iter()
        .collect();
        assert_eq!(relations(&c), expect);
    }

    #[test]
    fn solver_handles_monomials() {
        let mut out = Vec::new();
        let p = &ParamPoly::a() * &ParamPoly::b();
        solve(vec![p], Assignment::new(), &mut out).unwrap();
        assert_eq!(out.len(), 2);
    }
}
