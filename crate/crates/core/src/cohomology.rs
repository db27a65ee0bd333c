//! Centralizer invariants `H^{2,d}_g` of the graded pieces and their
//! extension to `S_n`-invariant cochains.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cochains::{CochainKind, PairValues, TwoCochain};
use crate::error::{Error, Result};
use crate::exactalg::{ParamPoly, PolyElem, Rational, DEGREE_CAP};
use crate::linalg::{Echelon, SparseRow};
use crate::permgroup::{all_perms, centralizer, class_representatives, class_size, Perm, Subgroup};

/// A basis of `H^{2,d}_g`, each element a component at `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct H2Component {
    pub g: Perm,
    pub d: usize,
    pub codim: usize,
    pub basis: Vec<PairValues>,
}

impl H2Component {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

type Monomial = Vec<u8>;
type Coord = ((u8, u8), Monomial);

/// A dense vector of rationals on `e_1..e_n`, 0-based.
type Dense = Vec<Rational>;

fn indicator(points: &[usize], n: usize) -> Dense {
    let mut v = vec![Rational::zero(); n];
    for &p in points {
        v[p - 1] = Rational::one();
    }
    v
}

fn difference(p: usize, q: usize, n: usize) -> Dense {
    let mut v = vec![Rational::zero(); n];
    v[p - 1] = Rational::one();
    v[q - 1] = -Rational::one();
    v
}

/// Basis of `(V^g)^⊥`: `e_{c_0} - e_{c_t}` for each cycle `(c_0 … c_{l-1})`.
fn complement_basis(g: &Perm) -> Vec<Dense> {
    let n = g.degree();
    g.cycles()
        .iter()
        .flat_map(|c| c[1..].iter().map(move |&q| difference(c[0], q, n)))
        .collect()
}

/// `(f₁ ∧ f₂)(e_i, e_j)` on pairs `i < j`.
fn wedge(f1: &Dense, f2: &Dense) -> BTreeMap<(u8, u8), Rational> {
    let n = f1.len();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = &f1[i] * &f2[j] - &f1[j] * &f2[i];
            if !v.is_zero() {
                out.insert(((i + 1) as u8, (j + 1) as u8), v);
            }
        }
    }
    out
}

/// Scale to a primitive integer vector whose first nonzero entry is positive.
fn primitive<K: Ord + Clone>(v: &BTreeMap<K, Rational>) -> BTreeMap<K, Rational> {
    let Some(first) = v.values().next() else {
        return v.clone();
    };
    let mut den = num_bigint::BigInt::one();
    for q in v.values() {
        den = den.lcm(q.denom());
    }
    let mut num = num_bigint::BigInt::zero();
    for q in v.values() {
        num = num.gcd(&(q * Rational::from_integer(den.clone())).to_integer());
    }
    let mut scale = Rational::new(den, num);
    if first.is_negative() {
        scale = -scale;
    }
    v.iter().map(|(k, q)| (k.clone(), q * &scale)).collect()
}

/// The normalized volume form of `(V^g)^⊥` on pairs `i < j`; `g` must have
/// codimension 2.
pub fn volume_form(g: &Perm) -> Result<BTreeMap<(u8, u8), Rational>> {
    let w = complement_basis(g);
    if w.len() != 2 {
        return Err(Error::Invalid(format!(
            "volume form needs codimension 2, {g} has codimension {}",
            w.len()
        )));
    }
    Ok(primitive(&wedge(&w[0], &w[1])))
}

/// Multisets of size `d` from `0..k`.
fn multisets(k: usize, d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(k, d - 1) {
        let start = rest.last().copied().unwrap_or(0);
        for t in start..k {
            let mut m = rest.clone();
            m.push(t);
            out.push(m);
        }
    }
    out
}

/// Expand a product of linear forms into monomials.
fn expand(factors: &[&Dense]) -> BTreeMap<Monomial, Rational> {
    let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::from([(Vec::new(), Rational::one())]);
    for f in factors {
        let mut next: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &acc {
            for (k, x) in f.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut mm = m.clone();
                mm.push((k + 1) as u8);
                mm.sort_unstable();
                let e = next.entry(mm).or_insert_with(Rational::zero);
                *e += c * x;
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    acc
}

/// Spanning set of `S^d(V^g) ⊗ Λ^{2-c}(V^g)* ⊗ Λ^c((V^g)*)^⊥` as cochain
/// components, where `c` is the codimension; empty when `c > 2`.
fn spanning_set(g: &Perm, d: usize) -> Vec<BTreeMap<Coord, Rational>> {
    let n = g.degree();
    let fixed: Vec<Dense> = g.all_cycles().iter().map(|c| indicator(c, n)).collect();
    let comp = complement_basis(g);
    let forms: Vec<BTreeMap<(u8, u8), Rational>> = match comp.len() {
        0 => (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .map(|(i, j)| wedge(&indicator(&[i], n), &indicator(&[j], n)))
            .collect(),
        1 => fixed.iter().map(|u| wedge(u, &comp[0])).collect(),
        2 => vec![wedge(&comp[0], &comp[1])],
        _ => Vec::new(),
    };
    let polys: Vec<BTreeMap<Monomial, Rational>> = multisets(fixed.len(), d)
        .iter()
        .map(|m| expand(&m.iter().map(|&t| &fixed[t]).collect::<Vec<_>>()))
        .collect();
    let mut out = Vec::new();
    for f in &polys {
        for w in &forms {
            let mut v = BTreeMap::new();
            for (pair, x) in w {
                for (m, c) in f {
                    v.insert((*pair, m.clone()), x * c);
                }
            }
            out.push(v);
        }
    }
    out
}

fn act_coord(z: &Perm, ((i, j), m): &Coord) -> (Coord, bool) {
    let (zi, zj) = (z.apply(*i as usize) as u8, z.apply(*j as usize) as u8);
    let mut zm: Monomial = m.iter().map(|&k| z.apply(k as usize) as u8).collect();
    zm.sort_unstable();
    if zi < zj {
        (((zi, zj), zm), false)
    } else {
        (((zj, zi), zm), true)
    }
}

/// Average of the orbit of one coordinate under the group generated by
/// `gens`, or `None` when some element sends the coordinate to its negative.
fn orbit_average(gens: &[Perm], x: &Coord) -> Option<BTreeMap<Coord, Rational>> {
    let mut signs: BTreeMap<Coord, bool> = BTreeMap::from([(x.clone(), false)]);
    let mut queue = vec![x.clone()];
    while let Some(y) = queue.pop() {
        let sy = signs[&y];
        for z in gens {
            let (zy, flip) = act_coord(z, &y);
            let s = sy ^ flip;
            match signs.get(&zy) {
                Some(&t) if t != s => return None,
                Some(_) => {}
                None => {
                    signs.insert(zy.clone(), s);
                    queue.push(zy);
                }
            }
        }
    }
    let w = Rational::new(1.into(), (signs.len() as i64).into());
    Some(
        signs
            .into_iter()
            .map(|(k, s)| (k, if s { -w.clone() } else { w.clone() }))
            .collect(),
    )
}

fn to_component(v: &BTreeMap<Coord, Rational>) -> PairValues {
    let mut out = PairValues::new();
    for ((pair, m), c) in v {
        let term = PolyElem::monomial(m.clone(), ParamPoly::constant(c.clone()));
        out.entry(*pair).or_insert_with(PolyElem::zero).add_assign(&term);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// A basis of `H^{2,d}_g`: the centralizer invariants of the spanning set.
pub fn h2_space(g: &Perm, d: usize, bound: usize) -> Result<H2Component> {
    if d > DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: d,
            cap: DEGREE_CAP,
        });
    }
    let codim = complement_basis(g).len();
    let zg = centralizer(g, bound)?;
    let gens = zg.generators().to_vec();
    let mut cache: BTreeMap<Coord, Option<BTreeMap<Coord, Rational>>> = BTreeMap::new();
    let mut index: BTreeMap<Coord, usize> = BTreeMap::new();
    let mut echelon = Echelon::new();
    let mut basis = Vec::new();
    for s in spanning_set(g, d) {
        let mut avg: BTreeMap<Coord, Rational> = BTreeMap::new();
        for (x, c) in &s {
            let r = cache.entry(x.clone()).or_insert_with(|| orbit_average(&gens, x));
            for (y, w) in r.iter().flatten() {
                *avg.entry(y.clone()).or_insert_with(Rational::zero) += c * w;
            }
        }
        avg.retain(|_, v| !v.is_zero());
        if avg.is_empty() {
            continue;
        }
        let row: SparseRow = avg
            .iter()
            .map(|(k, v)| {
                let next = index.len();
                (*index.entry(k.clone()).or_insert(next), v.clone())
            })
            .collect();
        if echelon.insert(row) {
            basis.push(to_component(&primitive(&avg)));
        }
    }
    Ok(H2Component {
        g: g.clone(),
        d,
        codim,
        basis,
    })
}

/// `H^{2,d}` at the identity: `S_n`-invariant alternating maps `Λ²V → S^d V`.
pub fn identity_invariants(d: usize, n: usize, bound: usize) -> Result<H2Component> {
    h2_space(&Perm::identity(n), d, bound)
}

fn act_component(z: &Perm, comp: &PairValues) -> PairValues {
    let mut out = PairValues::new();
    for (&(i, j), v) in comp {
        let (zi, zj) = (z.apply(i as usize) as u8, z.apply(j as usize) as u8);
        let zv = v.act(z);
        let (key, val) = if zi < zj { ((zi, zj), zv) } else { ((zj, zi), zv.neg()) };
        out.entry(key).or_insert_with(PolyElem::zero).add_assign(&val);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `(1/|H|) Σ_{h ∈ H} h·α` for a component `α` at an element centralized by `H`.
pub fn reynolds(h: &Subgroup, comp: &PairValues) -> PairValues {
    let mut sum = PairValues::new();
    for z in h.elements() {
        for (k, v) in act_component(z, comp) {
            sum.entry(k).or_insert_with(PolyElem::zero).add_assign(&v);
        }
    }
    let w = Rational::new(1.into(), (h.order() as i64).into());
    sum.into_iter()
        .map(|(k, v)| (k, v.scale_rational(&w)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

fn kind_of(comp: &PairValues) -> CochainKind {
    let degs: BTreeSet<usize> = comp
        .values()
        .flat_map(|v| v.terms().map(|(m, _)| m.len()).collect::<Vec<_>>())
        .collect();
    match degs.iter().copied().collect::<Vec<_>>().as_slice() {
        [0] => CochainKind::Constant,
        [1] => CochainKind::Linear,
        _ => CochainKind::Mixed,
    }
}

/// Extend a `Z(g)`-invariant component at `g` to an `S_n`-invariant cochain
/// by summing its translates over coset representatives of `S_n / Z(g)`.
pub fn extend_to_g(g: &Perm, comp: &PairValues, bound: usize) -> Result<TwoCochain> {
    let n = g.degree();
    let zg = centralizer(g, bound)?;
    for z in zg.generators() {
        if act_component(z, comp) != *comp {
            return Err(Error::Hypothesis(format!(
                "component at {g} is not invariant under {z}"
            )));
        }
    }
    let mut seed = TwoCochain::zero(n, kind_of(comp));
    for (&(i, j), v) in comp {
        seed.add_value(g, i as usize, j as usize, v)?;
    }
    let mut out = TwoCochain::zero(n, seed.kind());
    let mut seen = BTreeSet::new();
    for h in all_perms(n) {
        if seen.insert(g.conjugate_by(&h)) {
            out = out.add(&seed.act(&h)?)?;
        }
    }
    Ok(out)
}

/// `dim H^{2,1}_g` and `dim H^{2,0}_g` for one conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDims {
    pub representative: String,
    pub cycle_type: Vec<usize>,
    pub class_size: u128,
    pub codim: usize,
    pub linear: usize,
    pub constant: usize,
}

impl ClassDims {
    pub fn total(&self) -> usize {
        self.linear + self.constant
    }
}

/// Dimensions of the invariant linear and constant pieces, per class.
pub fn class_dimensions(n: usize, bound: usize) -> Result<Vec<ClassDims>> {
    class_representatives(n)
        .into_iter()
        .map(|g| {
            let linear = h2_space(&g, 1, bound)?;
            let constant = h2_space(&g, 0, bound)?;
            Ok(ClassDims {
                representative: g.to_string(),
                cycle_type: g.cycle_type(),
                class_size: class_size(&g.cycle_type()),
                codim: linear.codim,
                linear: linear.dim(),
                constant: constant.dim(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::kappa_l_tri;
    use crate::exactalg::int;
    use crate::permgroup::DEFAULT_BOUND;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    fn form(pairs: &[((u8, u8), i64)]) -> BTreeMap<(u8, u8), Rational> {
        pairs.iter().map(|&(k, v)| (k, int(v))).collect()
    }

    #[test]
    fn volume_forms() {
        assert_eq!(
            volume_form(&p("(1 2 3)", 4)).unwrap(),
            form(&[((1, 2), 1), ((1, 3), -1), ((2, 3), 1)])
        );
        assert_eq!(
            volume_form(&p("(1 2)(3 4)", 4)).unwrap(),
            form(&[((1, 3), 1), ((1, 4), -1), ((2, 3), -1), ((2, 4), 1)])
        );
        assert!(volume_form(&p("(1 2)", 4)).is_err());
    }

    #[test]
    fn three_cycle_pieces() {
        let h = h2_space(&p("(1 2 3)", 5), 1, DEFAULT_BOUND).unwrap();
        assert_eq!((h.codim, h.dim()), (2, 2));
        assert_eq!(h2_space(&p("(1 2 3)", 5), 0, DEFAULT_BOUND).unwrap().dim(), 1);
        assert_eq!(h2_space(&p("(1 2 3)", 3), 1, DEFAULT_BOUND).unwrap().dim(), 1);
    }

    #[test]
    fn identity_piece() {
        let h = identity_invariants(1, 4, DEFAULT_BOUND).unwrap();
        assert_eq!(h.dim(), 1);
        let comp = &h.basis[0];
        assert_eq!(comp[&(1, 2)], PolyElem::parse("e1 - e2", 4).unwrap());
        assert_eq!(identity_invariants(0, 4, DEFAULT_BOUND).unwrap().dim(), 0);
    }

    #[test]
    fn transpositions_and_large_codim_vanish() {
        assert_eq!(h2_space(&p("(1 2)", 4), 1, DEFAULT_BOUND).unwrap().dim(), 0);
        assert_eq!(h2_space(&p("(1 2 3 4)", 4), 1, DEFAULT_BOUND).unwrap().dim(), 0);
    }

    #[test]
    fn extension_recovers_tri_family() {
        let n = 5;
        let g = p("(1 2 3)", n);
        let vol = volume_form(&g).unwrap();
        let (a, b) = (ParamPoly::a(), ParamPoly::b());
        let w = PolyElem::parse("a*e1 + a*e2 + a*e3 + b*e4 + b*e5", n).unwrap();
        let comp: PairValues = vol.iter().map(|(k, q)| (*k, w.scale_rational(q))).collect();
        let ext = extend_to_g(&g, &comp, DEFAULT_BOUND).unwrap();
        assert_eq!(ext, kappa_l_tri(&a, &b, n).unwrap());
    }

    #[test]
    fn reynolds_is_idempotent_on_basis() {
        let g = p("(1 2 3)", 5);
        let zg = centralizer(&g, DEFAULT_BOUND).unwrap();
        for v in h2_space(&g, 1, DEFAULT_BOUND).unwrap().basis {
            assert_eq!(reynolds(&zg, &v), v);
        }
    }
}
