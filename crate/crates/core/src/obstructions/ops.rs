use std::collections::BTreeSet;

use crate::cochains::{CochainKind, ThreeCochain, TwoCochain};
use crate::error::{Error, Result};
use crate::exactalg::{PolyElem, SkewElem, Vect};
use crate::exec::Exec;
use crate::permgroup::{factor_pairs, subsets, FactorPair, Perm};

pub type Triple = (usize, usize, usize);

/// All basis triples `i < j < k`, in lexicographic order.
pub fn basis_triples(n: usize) -> Vec<Triple> {
    subsets(n, 3).into_iter().map(|s| (s[0], s[1], s[2])).collect()
}

fn reject_mixed(alpha: &TwoCochain, what: &str) -> Result<()> {
    if alpha.kind() == CochainKind::Mixed {
        return Err(Error::KindMismatch(format!(
            "{what} needs a homogeneous cochain; split the linear and constant parts first"
        )));
    }
    Ok(())
}

fn gv_minus_v(g: &Perm, i: usize) -> PolyElem {
    PolyElem::e(g.apply(i)).sub(&PolyElem::e(i))
}

/// `ψ_g(e_i,e_j,e_k) = α_g(e_i,e_j)(g e_k - e_k) + α_g(e_j,e_k)(g e_i - e_i) + α_g(e_k,e_i)(g e_j - e_j)`.
pub fn psi_at(alpha: &TwoCochain, g: &Perm, (i, j, k): Triple) -> Result<PolyElem> {
    let mut out = PolyElem::zero();
    for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
        let v = alpha.get(g, p, q);
        if !v.is_zero() && !g.fixes(r) {
            out.add_assign(&v.mul(&gv_minus_v(g, r))?);
        }
    }
    Ok(out)
}

/// The 3-cochain `ψ(α)`.
pub fn psi(alpha: &TwoCochain) -> Result<ThreeCochain> {
    reject_mixed(alpha, "psi")?;
    let n = alpha.degree();
    let mut out = ThreeCochain::zero(n);
    for g in alpha.support() {
        for t in basis_triples(n) {
            let v = psi_at(alpha, &g, t)?;
            out.add_value(&g, t, &v)?;
        }
    }
    Ok(out)
}

fn check_phi_kinds(alpha: &TwoCochain, beta: &TwoCochain) -> Result<()> {
    if beta.kind() != CochainKind::Linear {
        return Err(Error::KindMismatch("phi needs a linear second argument".into()));
    }
    reject_mixed(alpha, "phi")?;
    if alpha.degree() != beta.degree() {
        return Err(Error::DegreeMismatch {
            left: alpha.degree(),
            right: beta.degree(),
        });
    }
    Ok(())
}

/// `α_x(e_p + y·e_p, w)` for a vector `w`.
fn alpha_against(alpha: &TwoCochain, x: &Perm, p: usize, yp: usize, w: &Vect) -> PolyElem {
    let mut out = PolyElem::zero();
    for (m, c) in w.support() {
        let mut v = alpha.get(x, p, m);
        v.add_assign(&alpha.get(x, yp, m));
        if !v.is_zero() {
            out.add_assign(&v.scale(c));
        }
    }
    out
}

/// `φ_{x,y}(e_i,e_j,e_k) = α_x(e_i + y e_i, β_y(e_j,e_k)) + (cyclic)`.
pub fn phi_xy(alpha: &TwoCochain, beta: &TwoCochain, x: &Perm, y: &Perm, (i, j, k): Triple) -> PolyElem {
    let n = alpha.degree();
    let mut out = PolyElem::zero();
    for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
        let b = beta.get(y, q, r);
        if b.is_zero() {
            continue;
        }
        let w = Vect::from_poly(&b, n);
        out.add_assign(&alpha_against(alpha, x, p, y.apply(p), &w));
    }
    out
}

/// Factorizations of `g` over the supports of `α` and `β`.
pub fn phi_pairs(alpha: &TwoCochain, beta: &TwoCochain, g: &Perm) -> Vec<FactorPair> {
    factor_pairs(g, &alpha.support(), &beta.support())
}

/// `φ_g(e_i,e_j,e_k) = Σ_{xy=g} φ_{x,y}(e_i,e_j,e_k)` over the given factor pairs.
pub fn phi_sum(alpha: &TwoCochain, beta: &TwoCochain, pairs: &[FactorPair], t: Triple) -> PolyElem {
    let mut out = PolyElem::zero();
    for fp in pairs {
        out.add_assign(&phi_xy(alpha, beta, &fp.x, &fp.y, t));
    }
    out
}

/// `φ_g` evaluated on one basis triple.
pub fn phi_at(alpha: &TwoCochain, beta: &TwoCochain, g: &Perm, t: Triple) -> Result<PolyElem> {
    check_phi_kinds(alpha, beta)?;
    Ok(phi_sum(alpha, beta, &phi_pairs(alpha, beta, g), t))
}

/// Every product `x y` with `x ∈ supp α`, `y ∈ supp β`.
pub fn product_support(alpha: &TwoCochain, beta: &TwoCochain) -> Vec<Perm> {
    let ys = beta.support();
    let mut out = BTreeSet::new();
    for x in alpha.support() {
        for y in &ys {
            out.insert(x.compose(y));
        }
    }
    out.into_iter().collect()
}

/// The 3-cochain `φ(α, β)`.
pub fn phi(alpha: &TwoCochain, beta: &TwoCochain, exec: Exec) -> Result<ThreeCochain> {
    check_phi_kinds(alpha, beta)?;
    let n = alpha.degree();
    let triples = basis_triples(n);
    let gs = product_support(alpha, beta);
    let parts = exec.map(&gs, |g| {
        let pairs = phi_pairs(alpha, beta, g);
        triples
            .iter()
            .map(|&t| (t, phi_sum(alpha, beta, &pairs, t)))
            .collect::<Vec<_>>()
    });
    let mut out = ThreeCochain::zero(n);
    for (g, vals) in gs.iter().zip(parts) {
        for (t, v) in vals {
            out.add_value(g, t, &v)?;
        }
    }
    Ok(out)
}

/// `(v₁,v₂,v₃) ↦ [v₁,κ(v₂,v₃)] + [v₂,κ(v₃,v₁)] + [v₃,κ(v₁,v₂)]`, computed
/// with commutators in the skew group algebra and regrouped by group element.
pub fn mixed_jacobi_residual(kappa: &TwoCochain) -> Result<ThreeCochain> {
    reject_mixed(kappa, "mixed Jacobi residual")?;
    let n = kappa.degree();
    let mut out = ThreeCochain::zero(n);
    let e = |i: usize| Vect::basis(i, n);
    for t @ (i, j, k) in basis_triples(n) {
        let mut total = SkewElem::zero();
        for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
            let lhs = SkewElem::poly(PolyElem::e(p), n);
            let rhs = kappa.eval(&e(q), &e(r));
            total = total.add(&lhs.commutator(&rhs)?);
        }
        for (g, v) in total.components() {
            out.add_value(g, t, v)?;
        }
    }
    Ok(out)
}
