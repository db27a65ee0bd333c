use std::collections::BTreeMap;
use std::fmt;

use super::{ParamPoly, PolyElem};
use crate::error::{Error, Result};
use crate::permgroup::Perm;

/// An element `Σ p_g ⊗ g` of the skew group algebra `S(V)#S_n`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SkewElem {
    components: BTreeMap<Perm, PolyElem>,
}

impl SkewElem {
    pub fn zero() -> Self {
        SkewElem::default()
    }

    /// The simple tensor `p ⊗ g`.
    pub fn simple(p: PolyElem, g: Perm) -> Self {
        let mut s = SkewElem::zero();
        s.add_component(g, &p);
        s
    }

    /// `p ⊗ 1` in degree `n`.
    pub fn poly(p: PolyElem, n: usize) -> Self {
        SkewElem::simple(p, Perm::identity(n))
    }

    /// `1 ⊗ g`.
    pub fn group(g: Perm) -> Self {
        SkewElem::simple(PolyElem::one(), g)
    }

    pub fn add_component(&mut self, g: Perm, p: &PolyElem) {
        if p.is_zero() {
            return;
        }
        let entry = self.components.entry(g.clone()).or_default();
        entry.add_assign(p);
        if entry.is_zero() {
            self.components.remove(&g);
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&Perm, &PolyElem)> {
        self.components.iter()
    }

    pub fn component(&self, g: &Perm) -> PolyElem {
        self.components.get(g).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn degree_of(&self) -> Option<usize> {
        self.components.keys().next().map(Perm::degree)
    }

    fn check_same_degree(&self, other: &SkewElem) -> Result<()> {
        if let (Some(l), Some(r)) = (self.degree_of(), other.degree_of()) {
            if l != r {
                return Err(Error::DegreeMismatch { left: l, right: r });
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &SkewElem) -> SkewElem {
        let mut out = self.clone();
        for (g, p) in &other.components {
            out.add_component(g.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &SkewElem) -> SkewElem {
        self.add(&other.scale(&ParamPoly::int(-1)))
    }

    pub fn scale(&self, c: &ParamPoly) -> SkewElem {
        let mut out = SkewElem::zero();
        for (g, p) in &self.components {
            out.add_component(g.clone(), &p.scale(c));
        }
        out
    }

    /// Bilinear extension of `(r⊗g)(s⊗h) = r(g·s) ⊗ gh`.
    pub fn mul(&self, other: &SkewElem) -> Result<SkewElem> {
        self.check_same_degree(other)?;
        let mut out = SkewElem::zero();
        for (g, r) in &self.components {
            for (h, s) in &other.components {
                let prod = r.mul(&s.act(g))?;
                out.add_component(g.compose(h), &prod);
            }
        }
        Ok(out)
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &SkewElem) -> Result<SkewElem> {
        Ok(self.mul(other)?.sub(&other.mul(self)?))
    }
}

/// `uv - vu` in the skew group algebra.
pub fn commutator(u: &SkewElem, v: &SkewElem) -> Result<SkewElem> {
    u.commutator(v)
}

/// Product in the skew group algebra.
pub fn skew_mul(u: &SkewElem, v: &SkewElem) -> Result<SkewElem> {
    u.mul(v)
}

/// `g·p` for `p ∈ S(V)`.
pub fn act(g: &Perm, p: &PolyElem) -> PolyElem {
    p.act(g)
}

impl fmt::Display for SkewElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.components.iter().map(|(g, p)| format!("({p})⊗{g}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for SkewElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElem({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Perm {
        Perm::parse(s, 4).unwrap()
    }

    fn poly(s: &str) -> PolyElem {
        PolyElem::parse(s, 4).unwrap()
    }

    #[test]
    fn twist_law_examples() {
        let u = SkewElem::simple(poly("e1"), perm("(1 2)"));
        let v = SkewElem::simple(poly("e1"), perm("(1 3)"));
        let expect = SkewElem::simple(poly("e1*e2"), perm("(1 2)").compose(&perm("(1 3)")));
        assert_eq!(skew_mul(&u, &v).unwrap(), expect);

        let g = perm("(1 2 3)");
        let lhs = skew_mul(&SkewElem::group(g.clone()), &SkewElem::poly(poly("e1 + 2*e4"), 4)).unwrap();
        assert_eq!(lhs, SkewElem::simple(poly("e2 + 2*e4"), g.clone()));

        let inv = skew_mul(&SkewElem::group(g.clone()), &SkewElem::group(perm("(3 2 1)"))).unwrap();
        assert_eq!(inv, SkewElem::group(Perm::identity(4)));
    }

    #[test]
    fn commutator_examples() {
        let u = SkewElem::simple(poly("e1 + a*e3"), perm("(1 2)"));
        assert!(commutator(&u, &u).unwrap().is_zero());
        let e1 = SkewElem::poly(poly("e1"), 4);
        let e2 = SkewElem::poly(poly("e2"), 4);
        assert!(commutator(&e1, &e2).unwrap().is_zero());
        let t = SkewElem::group(perm("(1 2)"));
        let expect = SkewElem::simple(poly("e2 - e1"), perm("(1 2)"));
        assert_eq!(commutator(&t, &e1).unwrap(), expect);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let u = SkewElem::group(Perm::identity(3));
        let v = SkewElem::group(Perm::identity(4));
        assert!(matches!(u.mul(&v), Err(Error::DegreeMismatch { .. })));
    }
}
