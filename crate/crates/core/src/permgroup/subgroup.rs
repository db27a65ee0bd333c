use std::collections::{BTreeSet, VecDeque};

use serde::{Serialize, Serializer};

use super::perm::{check_degree, Perm};
use crate::error::{Error, Result};

/// Default bound on `n` for enumerating subgroups element by element.
pub const DEFAULT_BOUND: usize = 8;

/// A subgroup of `S_n` with its generators and materialized elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    n: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl Subgroup {
    /// Close `generators` under composition.
    pub fn generated_by(n: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: g.degree(),
                });
            }
        }
        let id = Perm::identity(n);
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for s in &generators {
                let q = s.compose(&p);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        Ok(Subgroup {
            n,
            generators,
            elements: seen.into_iter().collect(),
        })
    }

    pub fn trivial(n: usize) -> Self {
        Subgroup {
            n,
            generators: Vec::new(),
            elements: vec![Perm::identity(n)],
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|p| other.contains(p))
    }

    /// True iff `k H k⁻¹ = H` for every `k` in `by`.
    pub fn is_normalized_by(&self, by: &Subgroup) -> bool {
        by.generators_or_elements().iter().all(|k| {
            self.generators_or_elements()
                .iter()
                .all(|h| self.contains(&h.conjugate_by(k)))
        })
    }

    fn generators_or_elements(&self) -> &[Perm] {
        if self.generators.is_empty() {
            &self.elements
        } else {
            &self.generators
        }
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements: Vec<Perm> = self.elements.iter().filter(|p| other.contains(p)).cloned().collect();
        Subgroup {
            n: self.n,
            generators: elements.clone(),
            elements,
        }
    }
}

/// The centralizer `Z(g)` in `S_n`, with generators built from the cycle structure.
pub fn centralizer(g: &Perm, bound: usize) -> Result<Subgroup> {
    let n = g.degree();
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let mut by_len: std::collections::BTreeMap<usize, Vec<Vec<usize>>> = Default::default();
    for c in g.all_cycles() {
        by_len.entry(c.len()).or_default().push(c);
    }
    let mut gens = Vec::new();
    for (len, cycles) in &by_len {
        if *len > 1 {
            for c in cycles {
                gens.push(Perm::from_cycles(n, std::slice::from_ref(c))?);
            }
        }
        let m = cycles.len();
        if m >= 2 {
            // swap the first two cycles pointwise
            let swap: Vec<Vec<usize>> = (0..*len).map(|t| vec![cycles[0][t], cycles[1][t]]).collect();
            gens.push(Perm::from_cycles(n, &swap)?);
        }
        if m >= 3 {
            let rotate: Vec<Vec<usize>> = (0..*len).map(|t| cycles.iter().map(|c| c[t]).collect()).collect();
            gens.push(Perm::from_cycles(n, &rotate)?);
        }
    }
    Subgroup::generated_by(n, gens)
}

/// A factorization `x y = product`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorPair {
    pub x: Perm,
    pub y: Perm,
    pub product: Perm,
}

impl FactorPair {
    pub fn new(x: Perm, y: Perm) -> Self {
        let product = x.compose(&y);
        FactorPair { x, y, product }
    }

    pub fn conjugate_by(&self, h: &Perm) -> FactorPair {
        FactorPair {
            x: self.x.conjugate_by(h),
            y: self.y.conjugate_by(h),
            product: self.product.conjugate_by(h),
        }
    }
}

impl std::fmt::Display for FactorPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl Serialize for FactorPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.x.to_string(), self.y.to_string()).serialize(s)
    }
}

/// All `(x, y)` with `x ∈ xs`, `y ∈ ys` and `x y = g`. `ys` must be sorted.
pub fn factor_pairs(g: &Perm, xs: &[Perm], ys: &[Perm]) -> Vec<FactorPair> {
    xs.iter()
        .filter_map(|x| {
            let y = x.inverse().compose(g);
            ys.binary_search(&y).ok().map(|_| FactorPair {
                x: x.clone(),
                y,
                product: g.clone(),
            })
        })
        .collect()
}

/// The orbit of `p` under componentwise conjugation by `h`, in discovery order.
pub fn diag_conj_orbit(h: &Subgroup, p: &FactorPair) -> Result<Vec<FactorPair>> {
    check_degree(&p.x, &Perm::identity(h.degree()))?;
    let mut seen = BTreeSet::from([p.clone()]);
    let mut orbit = vec![p.clone()];
    let mut k = 0;
    while k < orbit.len() {
        let cur = orbit[k].clone();
        for s in h.generators_or_elements() {
            let q = cur.conjugate_by(s);
            if seen.insert(q.clone()) {
                orbit.push(q);
            }
        }
        k += 1;
    }
    Ok(orbit)
}

/// One block of an orbit decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitBlock {
    pub representative: FactorPair,
    pub orbit: Vec<FactorPair>,
}

/// Partition `factor_pairs(g, xs, ys)` into `H`-orbits, checking that `H ⊆ Z(g)`
/// and that each representative's stabilizer normalizes `H`.
pub fn orbit_decomposition(g: &Perm, xs: &[Perm], ys: &[Perm], h: &Subgroup, bound: usize) -> Result<Vec<OrbitBlock>> {
    if let Some(bad) = h.elements().iter().find(|z| !z.commutes_with(g)) {
        return Err(Error::Hypothesis(format!("{bad} does not centralize {g}")));
    }
    let pairs = factor_pairs(g, xs, ys);
    let mut assigned: BTreeSet<FactorPair> = BTreeSet::new();
    let mut blocks = Vec::new();
    for p in &pairs {
        if assigned.contains(p) {
            continue;
        }
        let stabilizer = centralizer(&p.x, bound)?.intersection(&centralizer(&p.y, bound)?);
        if !h.is_normalized_by(&stabilizer) {
            return Err(Error::Hypothesis(format!("stabilizer of ({p}) does not normalize H")));
        }
        let orbit = diag_conj_orbit(h, p)?;
        for q in &orbit {
            if !assigned.insert(q.clone()) {
                return Err(Error::Internal(format!("orbits overlap at ({q})")));
            }
        }
        blocks.push(OrbitBlock {
            representative: p.clone(),
            orbit,
        });
    }
    let covered: usize = blocks.iter().map(|b| b.orbit.len()).sum();
    if covered != pairs.len() {
        return Err(Error::Internal(format!(
            "orbit sizes sum to {covered}, expected {}",
            pairs.len()
        )));
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::perm::{all_perms, class_representatives, class_size, factorial, k_cycles};

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn centralizer_examples() {
        let z = centralizer(&p("(1 2 3)", 5), 8).unwrap();
        assert_eq!(z.order(), 6);
        let expect = Subgroup::generated_by(5, vec![p("(1 2 3)", 5), p("(4 5)", 5)]).unwrap();
        assert_eq!(z.elements(), expect.elements());

        let z = centralizer(&p("(1 2)(3 4)", 4), 8).unwrap();
        assert_eq!(z.order(), 8);
        let expect = Subgroup::generated_by(4, vec![p("(1 3 2 4)", 4), p("(1 2)", 4)]).unwrap();
        assert_eq!(z.elements(), expect.elements());

        assert_eq!(centralizer(&Perm::identity(4), 8).unwrap().order(), 24);
        assert!(matches!(
            centralizer(&Perm::identity(9), 8),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn centralizer_orders_match_class_sizes() {
        for n in 1..=6 {
            let all = all_perms(n);
            for g in class_representatives(n) {
                let z = centralizer(&g, 8).unwrap();
                let brute: Vec<Perm> = all.iter().filter(|h| h.commutes_with(&g)).cloned().collect();
                assert_eq!(z.elements(), &brute[..], "g = {g}");
                assert_eq!(z.order() as u128, factorial(n) / class_size(&g.cycle_type()));
            }
        }
    }

    #[test]
    fn factor_pair_examples() {
        let c3 = k_cycles(5, 3);
        let g = p("(1 2 3 4 5)", 5);
        let pairs = factor_pairs(&g, &c3, &c3);
        assert_eq!(pairs.len(), 5);
        assert!(pairs.contains(&FactorPair::new(p("(1 2 3)", 5), p("(3 4 5)", 5))));

        let g = p("(1 2 3 4 5 6 7)", 7);
        assert_eq!(factor_pairs(&g, &k_cycles(7, 5), &k_cycles(7, 3)).len(), 7);

        for n in 3..=6 {
            let c3 = k_cycles(n, 3);
            let pairs = factor_pairs(&Perm::identity(n), &c3, &c3);
            let choose = n * (n - 1) * (n - 2) / 6;
            assert_eq!(pairs.len(), 2 * choose);
            assert!(pairs.iter().all(|fp| fp.y == fp.x.inverse()));
        }
    }

    #[test]
    fn orbit_examples() {
        let h = Subgroup::generated_by(4, vec![p("(1 3 2 4)", 4)]).unwrap();
        let fp = FactorPair::new(p("(1 2 3)", 4), p("(2 3 4)", 4));
        assert_eq!(fp.product, p("(1 2)(3 4)", 4));
        assert_eq!(diag_conj_orbit(&h, &fp).unwrap().len(), 4);
        assert_eq!(diag_conj_orbit(&Subgroup::trivial(4), &fp).unwrap(), vec![fp]);

        let g = p("(1 2 3 4 5)", 5);
        let z = centralizer(&g, 8).unwrap();
        let orbit = diag_conj_orbit(&z, &FactorPair::new(p("(1 2 3)", 5), p("(3 4 5)", 5))).unwrap();
        let c3 = k_cycles(5, 3);
        let mut all = factor_pairs(&g, &c3, &c3);
        let mut got = orbit.clone();
        all.sort();
        got.sort();
        assert_eq!(got, all);
    }

    #[test]
    fn decomposition_examples() {
        let g = p("(1 2 3)(4 5 6)", 6);
        let h = Subgroup::generated_by(6, vec![p("(1 2 3)", 6), p("(4 5 6)", 6)]).unwrap();
        let blocks = orbit_decomposition(&g, &k_cycles(6, 5), &k_cycles(6, 3), &h, 8).unwrap();
        let sizes: Vec<usize> = blocks.iter().map(|b| b.orbit.len()).collect();
        assert_eq!(sizes, vec![9, 9]);

        let g = p("(1 2 3 4 5)", 5);
        let z = centralizer(&g, 8).unwrap();
        let c3 = k_cycles(5, 3);
        let blocks = orbit_decomposition(&g, &c3, &c3, &z, 8).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].orbit.len(), 5);

        let g = p("(1 2 3)", 4);
        let h = Subgroup::generated_by(4, vec![g.clone()]).unwrap();
        let c3 = k_cycles(4, 3);
        let blocks = orbit_decomposition(&g, &c3, &c3, &h, 8).unwrap();
        let mut sizes: Vec<usize> = blocks.iter().map(|b| b.orbit.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3]);
        let single = blocks.iter().find(|b| b.orbit.len() == 1).unwrap();
        assert_eq!(single.representative, FactorPair::new(p("(1 3 2)", 4), p("(1 3 2)", 4)));
    }

    #[test]
    fn decomposition_rejects_non_centralizing_h() {
        let g = p("(1 2 3)", 4);
        let h = Subgroup::generated_by(4, vec![p("(1 2)", 4)]).unwrap();
        let c3 = k_cycles(4, 3);
        assert!(matches!(
            orbit_decomposition(&g, &c3, &c3, &h, 8),
            Err(Error::Hypothesis(_))
        ));
    }
}
