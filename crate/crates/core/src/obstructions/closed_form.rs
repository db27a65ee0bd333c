use serde::Serialize;

use super::ops::Triple;
use crate::cochains::{sort_triple, TwoCochain};
use crate::error::{Error, Result};
use crate::exactalg::{int, ParamPoly, PolyElem};
use crate::permgroup::Perm;

/// Shape of the first argument in the closed form for `φ_{x,y}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosedFormKind {
    /// `α` supported on 3-cycles (linear or constant).
    Tri,
    /// `α` the 5-cycle constant map.
    Penta,
}

/// Which branch of the closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormCase {
    RepeatedIndex,
    TwoFixedByY,
    FixedByBoth,
    OneFixedByY,
    SupportOfY,
}

fn delta(y: &Perm, m: usize) -> i64 {
    i64::from(y.fixes(m))
}

/// `φ_{x,y}` on a basis triple by case analysis on how the triple meets
/// the fixed spaces of `x` and `y`. Requires `y` a 3-cycle and `x` a 3-cycle
/// (`Tri`) or 5-cycle (`Penta`).
pub fn closed_form_phi_xy(
    alpha: &TwoCochain,
    kind: ClosedFormKind,
    a: &ParamPoly,
    b: &ParamPoly,
    x: &Perm,
    y: &Perm,
    triple: Triple,
) -> Result<(ClosedFormCase, PolyElem)> {
    let want = match kind {
        ClosedFormKind::Tri => 3,
        ClosedFormKind::Penta => 5,
    };
    let is_cycle = |p: &Perm, len: usize| matches!(p.cycles().as_slice(), [c] if c.len() == len);
    if !is_cycle(y, 3) || !is_cycle(x, want) {
        return Err(Error::Hypothesis(format!(
            "closed form needs a 3-cycle y and a {want}-cycle x, got {x} and {y}"
        )));
    }
    let (i, j, k) = triple;
    let Some((_, base_sign)) = sort_triple(i, j, k) else {
        return Ok((ClosedFormCase::RepeatedIndex, PolyElem::zero()));
    };
    let fixed: Vec<usize> = [i, j, k].into_iter().filter(|&m| y.fixes(m)).collect();
    match fixed.len() {
        0 => Ok((ClosedFormCase::SupportOfY, PolyElem::zero())),
        1 => {
            let p = fixed[0];
            if x.fixes(p) {
                return Ok((ClosedFormCase::FixedByBoth, PolyElem::zero()));
            }
            let others: Vec<usize> = [i, j, k].into_iter().filter(|&m| m != p).collect();
            let (q, r) = if y.apply(others[0]) == others[1] {
                (others[0], others[1])
            } else {
                (others[1], others[0])
            };
            let (_, arranged_sign) = sort_triple(p, q, r).expect("distinct");
            let sign = int(i64::from(base_sign * arranged_sign));
            let xp = x.apply(p);
            let value = match kind {
                ClosedFormKind::Tri => {
                    let d = delta(y, xp) - delta(y, x.inverse().apply(p));
                    alpha.get(x, p, xp).scale(&(b - a).scale(&int(2 * d)))
                }
                ClosedFormKind::Penta => {
                    let d = delta(y, xp) - 2 * delta(y, x.pow(2).apply(p)) + 2 * delta(y, x.pow(-2).apply(p))
                        - delta(y, x.inverse().apply(p));
                    PolyElem::constant((a - b).pow(3).scale(&int(2 * d)))
                }
            };
            Ok((ClosedFormCase::OneFixedByY, value.scale_rational(&sign)))
        }
        _ => Ok((ClosedFormCase::TwoFixedByY, PolyElem::zero())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::{kappa_c_penta, kappa_c_tri, kappa_l_tri};
    use crate::obstructions::ops::{basis_triples, phi_xy};
    use crate::permgroup::k_cycles;

    fn ab() -> (ParamPoly, ParamPoly) {
        (ParamPoly::a(), ParamPoly::b())
    }

    fn agree(alpha: &TwoCochain, beta: &TwoCochain, kind: ClosedFormKind, xlen: usize, n: usize) {
        let (a, b) = ab();
        for x in k_cycles(n, xlen) {
            for y in k_cycles(n, 3) {
                for t in basis_triples(n) {
                    let direct = phi_xy(alpha, beta, &x, &y, t);
                    let (_, closed) = closed_form_phi_xy(alpha, kind, &a, &b, &x, &y, t).unwrap();
                    assert_eq!(direct, closed, "x={x} y={y} t={t:?}");
                }
            }
        }
    }

    #[test]
    fn tri_matches_direct_evaluation() {
        let (a, b) = ab();
        let l = kappa_l_tri(&a, &b, 5).unwrap();
        agree(&l, &l, ClosedFormKind::Tri, 3, 5);
        let c = kappa_c_tri(&ParamPoly::c(), 5).unwrap();
        agree(&c, &l, ClosedFormKind::Tri, 3, 5);
    }

    #[test]
    fn penta_matches_direct_evaluation() {
        let (a, b) = ab();
        let l = kappa_l_tri(&a, &b, 6).unwrap();
        agree(&kappa_c_penta(&a, &b, 6), &l, ClosedFormKind::Penta, 5, 6);
    }

    #[test]
    fn rejects_wrong_shapes() {
        let (a, b) = ab();
        let l = kappa_l_tri(&a, &b, 5).unwrap();
        let x = Perm::parse("(1 2)", 5).unwrap();
        let y = Perm::parse("(1 2 3)", 5).unwrap();
        assert!(closed_form_phi_xy(&l, ClosedFormKind::Tri, &a, &b, &x, &y, (1, 2, 3)).is_err());
    }
}
