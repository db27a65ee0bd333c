use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{random_point, Param, ParamPoly, PolyElem, Rational, SkewElem, Vect};
use crate::linalg::Matrix;
use crate::permgroup::Perm;

/// Polynomial degree of a cochain's values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CochainKind {
    /// Values in `V`.
    Linear,
    /// Values in the ground field.
    Constant,
    /// Values of degree at most 1.
    Mixed,
}

impl CochainKind {
    fn admits(self, value: &PolyElem) -> bool {
        match self {
            CochainKind::Linear => value.is_homogeneous(1),
            CochainKind::Constant => value.is_homogeneous(0),
            CochainKind::Mixed => value.degree() <= 1,
        }
    }

    pub fn join(self, other: CochainKind) -> CochainKind {
        if self == other {
            self
        } else {
            CochainKind::Mixed
        }
    }
}

/// Values of one component on ordered pairs `i < j`.
pub type PairValues = BTreeMap<(u8, u8), PolyElem>;

/// A group-graded alternating bilinear map `Λ²V → S(V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCochain {
    n: usize,
    kind: CochainKind,
    components: BTreeMap<Perm, PairValues>,
}

/// The first place where `h·α ≠ α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceWitness {
    pub h: String,
    pub g: String,
    pub i: usize,
    pub j: usize,
    pub expected: String,
    pub found: String,
}

/// Kernel of one component, with a flag saying whether it was certified
/// symbolically or only at a sample parameter point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub basis: Vec<Vec<Rational>>,
    pub exact: bool,
}

impl TwoCochain {
    pub fn zero(n: usize, kind: CochainKind) -> Self {
        TwoCochain {
            n,
            kind,
            components: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CochainKind {
        self.kind
    }

    fn check_pair(&self, g: &Perm, i: usize, j: usize) -> Result<()> {
        if g.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: g.degree(),
            });
        }
        for idx in [i, j] {
            if idx == 0 || idx > self.n {
                return Err(Error::IndexOutOfRange { index: idx, n: self.n });
            }
        }
        if i == j {
            return Err(Error::Invalid(format!("alternating cochain set on ({i},{i})")));
        }
        Ok(())
    }

    /// Add `value` to `α_g(e_i, e_j)` (and its negative to `α_g(e_j, e_i)`).
    pub fn add_value(&mut self, g: &Perm, i: usize, j: usize, value: &PolyElem) -> Result<()> {
        self.check_pair(g, i, j)?;
        if !self.kind.admits(value) {
            return Err(Error::KindMismatch(format!(
                "value {value} does not fit a {:?} cochain",
                self.kind
            )));
        }
        if value.max_index() > self.n {
            return Err(Error::IndexOutOfRange {
                index: value.max_index(),
                n: self.n,
            });
        }
        let (key, v) = if i < j {
            ((i as u8, j as u8), value.clone())
        } else {
            ((j as u8, i as u8), value.neg())
        };
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

    /// Replace `α_g(e_i, e_j)`.
    pub fn set(&mut self, g: &Perm, i: usize, j: usize, value: &PolyElem) -> Result<()> {
        let old = self.get(g, i, j);
        self.add_value(g, i, j, &value.sub(&old))
    }

    /// `α_g(e_i, e_j)`, sign-corrected for `i > j`.
    pub fn get(&self, g: &Perm, i: usize, j: usize) -> PolyElem {
        if i == j {
            return PolyElem::zero();
        }
        let Some(comp) = self.components.get(g) else {
            return PolyElem::zero();
        };
        if i < j {
            comp.get(&(i as u8, j as u8)).cloned().unwrap_or_default()
        } else {
            comp.get(&(j as u8, i as u8)).map(PolyElem::neg).unwrap_or_default()
        }
    }

    pub fn component(&self, g: &Perm) -> Option<&PairValues> {
        self.components.get(g)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Perm, &PairValues)> {
        self.components.iter()
    }

    /// Elements with a nonzero component, in ascending order.
    pub fn support(&self) -> Vec<Perm> {
        self.components.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `α_g(v, w)` by bilinear alternating extension.
    pub fn eval_at(&self, g: &Perm, v: &Vect, w: &Vect) -> PolyElem {
        let mut out = PolyElem::zero();
        let Some(comp) = self.components.get(g) else {
            return out;
        };
        for (&(i, j), val) in comp {
            let (i, j) = (i as usize, j as usize);
            let c = &(v.coord(i) * w.coord(j)) - &(v.coord(j) * w.coord(i));
            if !c.is_zero() {
                out.add_assign(&val.scale(&c));
            }
        }
        out
    }

    /// `α(v, w) = Σ_g α_g(v, w) ⊗ g`.
    pub fn eval(&self, v: &Vect, w: &Vect) -> SkewElem {
        let mut out = SkewElem::zero();
        for g in self.components.keys() {
            out.add_component(g.clone(), &self.eval_at(g, v, w));
        }
        out
    }

    pub fn add(&self, other: &TwoCochain) -> Result<TwoCochain> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        out.kind = self.kind.join(other.kind);
        if self.is_zero() {
            out.kind = other.kind;
        } else if other.is_zero() {
            out.kind = self.kind;
        }
        for (g, comp) in &other.components {
            for (&(i, j), v) in comp {
                out.add_value(g, i as usize, j as usize, v)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ParamPoly) -> TwoCochain {
        self.map_values(|v| v.scale(c))
    }

    pub fn neg(&self) -> TwoCochain {
        self.scale(&ParamPoly::int(-1))
    }

    fn map_values(&self, f: impl Fn(&PolyElem) -> PolyElem) -> TwoCochain {
        let mut out = TwoCochain::zero(self.n, self.kind);
        for (g, comp) in &self.components {
            for (&(i, j), v) in comp {
                let nv = f(v);
                if !nv.is_zero() {
                    out.components.entry(g.clone()).or_default().insert((i, j), nv);
                }
            }
        }
        out
    }

    /// Substitute rational values for some parameters.
    pub fn substitute(&self, values: &BTreeMap<Param, Rational>) -> TwoCochain {
        self.map_values(|v| v.map_coeffs(|c| c.substitute(values)))
    }

    /// Apply `f` to every parameter coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> TwoCochain {
        self.map_values(|v| v.map_coeffs(&f))
    }

    /// The degree-`d` part as a homogeneous cochain.
    pub fn homogeneous_part(&self, d: usize) -> TwoCochain {
        let kind = if d == 0 {
            CochainKind::Constant
        } else {
            CochainKind::Linear
        };
        let mut out = self.map_values(|v| v.part(d));
        out.kind = kind;
        out
    }

    /// `h·α`: the component at `h g h⁻¹` sends `(e_{h(i)}, e_{h(j)})` to `h·α_g(e_i, e_j)`.
    pub fn act(&self, h: &Perm) -> Result<TwoCochain> {
        if h.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: h.degree(),
            });
        }
        let mut out = TwoCochain::zero(self.n, self.kind);
        for (g, comp) in &self.components {
            let hg = g.conjugate_by(h);
            for (&(i, j), v) in comp {
                out.add_value(&hg, h.apply(i as usize), h.apply(j as usize), &v.act(h))?;
            }
        }
        Ok(out)
    }

    /// Checks `h·α = α` for each generator; reports the first difference.
    pub fn is_invariant(&self, generators: &[Perm]) -> Result<std::result::Result<(), InvarianceWitness>> {
        for h in generators {
            let moved = self.act(h)?;
            if let Some((g, i, j)) = first_difference(self, &moved) {
                return Ok(Err(InvarianceWitness {
                    h: h.to_string(),
                    g: g.to_string(),
                    i,
                    j,
                    expected: self.get(&g, i, j).to_string(),
                    found: moved.get(&g, i, j).to_string(),
                }));
            }
        }
        Ok(Ok(()))
    }

    /// Invariance under the standard generators `(1 2)` and `(1 2 … n)`.
    pub fn is_invariant_default(&self) -> Result<std::result::Result<(), InvarianceWitness>> {
        self.is_invariant(&standard_generators(self.n))
    }

    /// Basis of `{v : α_g(v, w) = 0 for all w}`.
    ///
    /// Parameters are treated as independent indeterminates. The kernel is
    /// computed at a sample rational point and each vector is then checked
    /// symbolically; when every check passes the result is the generic kernel
    /// and `exact` is set.
    pub fn kernel_vectors(&self, g: &Perm) -> Kernel {
        let n = self.n;
        let symbolic = |i: usize, j: usize| self.get(g, i, j);
        let point = random_point(0x6b65726e);
        // rows indexed by (j, monomial); columns by i
        let mut rows: BTreeMap<(usize, Vec<u8>), Vec<Rational>> = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                for (m, c) in symbolic(i, j).terms() {
                    let row = rows.entry((j, m.clone())).or_insert_with(|| vec![Rational::zero(); n]);
                    row[i - 1] += c.eval(&point);
                }
            }
        }
        let matrix = Matrix::from_rows(rows.into_values().collect(), n);
        let basis = matrix.nullspace();
        let exact = basis.iter().all(|v| {
            let v = Vect::from_rationals(v);
            (1..=n).all(|j| self.eval_at(g, &v, &Vect::basis(j, n)).is_zero())
        });
        Kernel { basis, exact }
    }

    /// JSON form `{n, kind, components: [{g, entries: [{i, j, value}]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let doc = CochainDoc {
            n: self.n,
            kind: self.kind,
            components: self
                .components
                .iter()
                .map(|(g, comp)| ComponentDoc {
                    g: g.to_string(),
                    entries: comp
                        .iter()
                        .map(|(&(i, j), v)| EntryDoc {
                            i: i as usize,
                            j: j as usize,
                            value: v.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("cochain serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: CochainDoc =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("cochain json: {e}")))?;
        let mut out = TwoCochain::zero(doc.n, doc.kind);
        for comp in doc.components {
            let g = Perm::parse(&comp.g, doc.n)?;
            for e in comp.entries {
                out.add_value(&g, e.i, e.j, &PolyElem::parse(&e.value, doc.n)?)?;
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct CochainDoc {
    n: usize,
    kind: CochainKind,
    components: Vec<ComponentDoc>,
}

#[derive(Serialize, Deserialize)]
struct ComponentDoc {
    g: String,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    i: usize,
    j: usize,
    value: String,
}

/// `(1 2)` and `(1 2 … n)`, which generate `S_n`.
pub fn standard_generators(n: usize) -> Vec<Perm> {
    if n < 2 {
        return Vec::new();
    }
    vec![
        Perm::from_cycles(n, &[vec![1, 2]]).expect("valid"),
        Perm::from_cycles(n, &[(1..=n).collect()]).expect("valid"),
    ]
}

fn first_difference(lhs: &TwoCochain, rhs: &TwoCochain) -> Option<(Perm, usize, usize)> {
    let mut keys: Vec<&Perm> = lhs.components.keys().chain(rhs.components.keys()).collect();
    keys.sort();
    keys.dedup();
    for g in keys {
        let empty = PairValues::new();
        let a = lhs.components.get(g).unwrap_or(&empty);
        let b = rhs.components.get(g).unwrap_or(&empty);
        let mut pairs: Vec<&(u8, u8)> = a.keys().chain(b.keys()).collect();
        pairs.sort();
        pairs.dedup();
        for p in pairs {
            if a.get(p) != b.get(p) {
                return Some((g.clone(), p.0 as usize, p.1 as usize));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternation_and_json() {
        let g = Perm::parse("(1 2 3)", 4).unwrap();
        let mut c = TwoCochain::zero(4, CochainKind::Linear);
        c.set(&g, 2, 1, &PolyElem::parse("a*e1 - e4", 4).unwrap()).unwrap();
        assert_eq!(c.get(&g, 1, 2), PolyElem::parse("-a*e1 + e4", 4).unwrap());
        assert!(c.get(&g, 3, 3).is_zero());
        let back = TwoCochain::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(c.add_value(&g, 1, 2, &PolyElem::one()).is_err());
    }

    #[test]
    fn eval_is_alternating() {
        let g = Perm::parse("(1 2)", 3).unwrap();
        let mut c = TwoCochain::zero(3, CochainKind::Constant);
        c.set(&g, 1, 3, &PolyElem::constant(ParamPoly::c())).unwrap();
        let v = Vect::indicator(&[1, 2], 3);
        assert!(c.eval(&v, &v).is_zero());
    }
}
