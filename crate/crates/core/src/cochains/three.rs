use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::{ParamPoly, PolyElem};
use crate::permgroup::Perm;

/// Values of one component on ordered triples `i < j < k`.
pub type TripleValues = BTreeMap<(u8, u8, u8), PolyElem>;

/// A group-graded alternating trilinear map `Λ³V → S(V)`, stored on basis triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeCochain {
    n: usize,
    components: BTreeMap<Perm, TripleValues>,
}

/// Sort a basis triple, returning the sorted key and the sign of the sorting
/// permutation; `None` when an index repeats.
pub fn sort_triple(i: usize, j: usize, k: usize) -> Option<((u8, u8, u8), i32)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut t = [i, j, k];
    let mut sign = 1;
    for a in 0..3 {
        for b in 0..2 - a {
            if t[b] > t[b + 1] {
                t.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    Some(((t[0] as u8, t[1] as u8, t[2] as u8), sign))
}

impl ThreeCochain {
    pub fn zero(n: usize) -> Self {
        ThreeCochain {
            n,
            components: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Add `value` to `γ_g(e_i, e_j, e_k)`.
    pub fn add_value(&mut self, g: &Perm, (i, j, k): (usize, usize, usize), value: &PolyElem) -> Result<()> {
        if g.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: g.degree(),
            });
        }
        if [i, j, k].iter().any(|&x| x == 0 || x > self.n) {
            return Err(Error::IndexOutOfRange {
                index: i.max(j).max(k),
                n: self.n,
            });
        }
        let Some((key, sign)) = sort_triple(i, j, k) else {
            return Err(Error::Invalid(format!("repeated index in ({i},{j},{k})")));
        };
        if value.is_zero() {
            return Ok(());
        }
        let v = if sign < 0 { value.neg() } else { value.clone() };
        let comp = self.components.entry(g.clone()).or_default();
        let entry = comp.entry(key).or_default();
        entry.add_assign(&v);
        if entry.is_zero() {
            comp.remove(&key);
        }
        if comp.is_empty() {
            self.components.remove(g);
        }
        Ok(())
    }

    /// `γ_g(e_i, e_j, e_k)` with alternation applied.
    pub fn get(&self, g: &Perm, i: usize, j: usize, k: usize) -> PolyElem {
        let Some((key, sign)) = sort_triple(i, j, k) else {
            return PolyElem::zero();
        };
        let v = self
            .components
            .get(g)
            .and_then(|c| c.get(&key))
            .cloned()
            .unwrap_or_default();
        if sign < 0 {
            v.neg()
        } else {
            v
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (&Perm, &TripleValues)> {
        self.components.iter()
    }

    pub fn component(&self, g: &Perm) -> Option<&TripleValues> {
        self.components.get(g)
    }

    pub fn support(&self) -> Vec<Perm> {
        self.components.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &ThreeCochain) -> Result<ThreeCochain> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (g, comp) in &other.components {
            for (&(i, j, k), v) in comp {
                out.add_value(g, (i as usize, j as usize, k as usize), v)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ParamPoly) -> ThreeCochain {
        let mut out = ThreeCochain::zero(self.n);
        for (g, comp) in &self.components {
            for (&(i, j, k), v) in comp {
                out.add_value(g, (i as usize, j as usize, k as usize), &v.scale(c))
                    .expect("same shape");
            }
        }
        out
    }

    pub fn sub(&self, other: &ThreeCochain) -> Result<ThreeCochain> {
        self.add(&other.scale(&ParamPoly::int(-1)))
    }

    /// First `(g, triple)` with a nonzero value, in ascending order.
    pub fn first_nonzero(&self) -> Option<(Perm, (usize, usize, usize), PolyElem)> {
        self.components.iter().next().and_then(|(g, comp)| {
            comp.iter()
                .next()
                .map(|(&(i, j, k), v)| (g.clone(), (i as usize, j as usize, k as usize), v.clone()))
        })
    }
}
