//! The named parameter maps.

use super::{CochainKind, TwoCochain};
use crate::error::{Error, Result};
use crate::exactalg::{ParamPoly, PolyElem};
use crate::permgroup::{k_cycles, Perm};

/// Supported on the identity: `(e_i, e_j) ↦ a1 (e_i - e_j)`.
pub fn kappa_l1(a1: &ParamPoly, n: usize) -> TwoCochain {
    let mut out = TwoCochain::zero(n, CochainKind::Linear);
    if a1.is_zero() {
        return out;
    }
    let id = Perm::identity(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let v = PolyElem::e(i).sub(&PolyElem::e(j)).scale(a1);
            out.add_value(&id, i, j, &v).expect("valid entry");
        }
    }
    out
}

/// The three pairs `(i, g i), (g i, g² i), (g² i, i)` of a 3-cycle, starting at its smallest point.
fn cycle_pairs(g: &Perm) -> ([usize; 3], [(usize, usize); 3]) {
    let i = g.cycles()[0][0];
    let j = g.apply(i);
    let k = g.apply(j);
    ([i, j, k], [(i, j), (j, k), (k, i)])
}

fn check_n3(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Invalid(format!("3-cycle maps need n >= 3, got {n}")));
    }
    Ok(())
}

/// Supported on 3-cycles: for `g = (i j k)`, the pairs `(e_i,e_j)`, `(e_j,e_k)`,
/// `(e_k,e_i)` map to `a(e_i+e_j+e_k) + b·(sum of the other basis vectors)`.
pub fn kappa_l_tri(a: &ParamPoly, b: &ParamPoly, n: usize) -> Result<TwoCochain> {
    check_n3(n)?;
    let mut out = TwoCochain::zero(n, CochainKind::Linear);
    for g in k_cycles(n, 3) {
        let (pts, pairs) = cycle_pairs(&g);
        let coeffs: Vec<ParamPoly> = (1..=n)
            .map(|l| if pts.contains(&l) { a.clone() } else { b.clone() })
            .collect();
        let value = PolyElem::linear(&coeffs);
        for (p, q) in pairs {
            out.add_value(&g, p, q, &value)?;
        }
    }
    Ok(out)
}

/// Constant map on 3-cycles with value `c` on the same three pairs.
pub fn kappa_c_tri(c: &ParamPoly, n: usize) -> Result<TwoCochain> {
    check_n3(n)?;
    let mut out = TwoCochain::zero(n, CochainKind::Constant);
    let value = PolyElem::constant(c.clone());
    for g in k_cycles(n, 3) {
        let (_, pairs) = cycle_pairs(&g);
        for (p, q) in pairs {
            out.add_value(&g, p, q, &value)?;
        }
    }
    Ok(out)
}

/// Constant map on 5-cycles: the component at `g` is the matrix
/// `(a-b)²([g] - [g]ᵀ - 2[g²] + 2[g²]ᵀ)` with `[g]_{ij} = 1` iff `g(j) = i`.
/// Zero for `n < 5`.
pub fn kappa_c_penta(a: &ParamPoly, b: &ParamPoly, n: usize) -> TwoCochain {
    let mut out = TwoCochain::zero(n, CochainKind::Constant);
    let scale = (a - b).pow(2);
    for g in k_cycles(n, 5) {
        let g2 = g.compose(&g);
        let ind = |p: bool| if p { 1 } else { 0 };
        for i in 1..=n {
            for j in i + 1..=n {
                let m =
                    ind(g.apply(j) == i) - ind(g.apply(i) == j) - 2 * ind(g2.apply(j) == i) + 2 * ind(g2.apply(i) == j);
                if m != 0 {
                    let v = PolyElem::constant(scale.scale(&crate::exactalg::int(m)));
                    out.add_value(&g, i, j, &v).expect("valid entry");
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Vect;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    fn poly(s: &str, n: usize) -> PolyElem {
        PolyElem::parse(s, n).unwrap()
    }

    fn ab() -> (ParamPoly, ParamPoly) {
        (ParamPoly::a(), ParamPoly::b())
    }

    #[test]
    fn l1_values() {
        let k = kappa_l1(&ParamPoly::one(), 4);
        assert_eq!(k.get(&Perm::identity(4), 1, 2), poly("e1 - e2", 4));
        assert!(kappa_l1(&ParamPoly::zero(), 4).is_zero());
        let h = p("(1 2)", 4);
        let moved = k.get(&Perm::identity(4), 1, 2).act(&h);
        assert_eq!(moved, k.get(&Perm::identity(4), 2, 1));
    }

    #[test]
    fn l_tri_values() {
        let (a, b) = ab();
        let k = kappa_l_tri(&a, &b, 5).unwrap();
        let g = p("(1 2 3)", 5);
        assert_eq!(k.get(&g, 1, 2), poly("a*e1 + a*e2 + a*e3 + b*e4 + b*e5", 5));
        assert!(k.get(&g, 4, 5).is_zero());
        assert!(k.get(&g, 1, 4).is_zero());
        assert!(kappa_l_tri(&a, &b, 2).is_err());

        let k4 = kappa_l_tri(&a, &b, 4).unwrap();
        assert_eq!(k4.support().len(), 8);
        let lhs = k4.eval(&Vect::basis(1, 4), &Vect::basis(2, 4));
        let w123 = poly("a*e1 + a*e2 + a*e3 + b*e4", 4);
        let w124 = poly("a*e1 + a*e2 + a*e4 + b*e3", 4);
        let mut expect = crate::exactalg::SkewElem::zero();
        expect.add_component(p("(1 2 3)", 4), &w123);
        expect.add_component(p("(3 2 1)", 4), &w123.neg());
        expect.add_component(p("(1 2 4)", 4), &w124);
        expect.add_component(p("(4 2 1)", 4), &w124.neg());
        assert_eq!(lhs, expect);
    }

    #[test]
    fn c_tri_values() {
        let c = ParamPoly::c();
        let k = kappa_c_tri(&c, 4).unwrap();
        let g = p("(1 2 3)", 4);
        assert_eq!(k.get(&g, 1, 2), PolyElem::constant(c.clone()));
        assert_eq!(k.get(&g, 2, 1), PolyElem::constant(-&c));
        assert!(k.get(&g, 1, 4).is_zero());
    }

    #[test]
    fn c_penta_values() {
        let (a, b) = ab();
        let k = kappa_c_penta(&a, &b, 5);
        let g = p("(1 2 3 4 5)", 5);
        let d2 = (&a - &b).pow(2);
        assert_eq!(k.get(&g, 1, 2), PolyElem::constant(-&d2));
        assert_eq!(k.get(&g, 1, 3), PolyElem::constant(d2.scale(&crate::exactalg::int(2))));
        for i in 1..=5 {
            let gi = g.apply(i);
            assert_eq!(k.get(&g, i, gi), PolyElem::constant(-&d2));
        }
        assert!(kappa_c_penta(&a, &b, 4).is_zero());
    }

    #[test]
    fn kernels_of_tri_component() {
        let (a, b) = ab();
        let k = kappa_l_tri(&a, &b, 5).unwrap();
        let ker = k.kernel_vectors(&p("(1 2 3)", 5));
        assert!(ker.exact);
        assert_eq!(ker.basis.len(), 3);
        let g = p("(1 2 3)", 5);
        for v in &ker.basis {
            assert!(crate::permgroup::fixed_space_membership(&g, v));
        }
    }
}
