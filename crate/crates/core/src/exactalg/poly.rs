use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::param::{fmt_exps, fmt_signed_terms, parse_rational, split_power, split_signed_terms};
use super::{Param, ParamPoly, Rational};
use crate::error::{Error, Result};
use crate::permgroup::Perm;

/// Default cap on the total degree of polynomials in `S(V)`.
pub const DEGREE_CAP: usize = 3;

/// A commutative monomial in `e_1..e_n`: sorted 1-based indices with repetition.
pub type Monomial = Vec<u8>;

/// An element of `S(V)` with parameter-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PolyElem {
    terms: BTreeMap<Monomial, ParamPoly>,
}

impl PolyElem {
    pub fn zero() -> Self {
        PolyElem::default()
    }

    pub fn one() -> Self {
        PolyElem::constant(ParamPoly::one())
    }

    pub fn constant(c: ParamPoly) -> Self {
        let mut p = PolyElem::zero();
        p.add_term(Vec::new(), &c);
        p
    }

    /// The basis vector `e_i`.
    pub fn e(i: usize) -> Self {
        PolyElem::monomial(vec![i as u8], ParamPoly::one())
    }

    pub fn monomial(mut mono: Monomial, c: ParamPoly) -> Self {
        mono.sort_unstable();
        let mut p = PolyElem::zero();
        p.add_term(mono, &c);
        p
    }

    /// `Σ coeffs[i-1] e_i`.
    pub fn linear(coeffs: &[ParamPoly]) -> Self {
        let mut p = PolyElem::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![(k + 1) as u8], c);
        }
        p
    }

    /// Add `c` times the (already sorted) monomial.
    pub fn add_term(&mut self, mono: Monomial, c: &ParamPoly) {
        if c.is_zero() {
            return;
        }
        debug_assert!(mono.windows(2).all(|w| w[0] <= w[1]));
        match self.terms.get_mut(&mono) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u8]) -> ParamPoly {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// True iff every term has total degree `d` (vacuously true for zero).
    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.len() == d)
    }

    /// The degree-`d` part.
    pub fn part(&self, d: usize) -> PolyElem {
        PolyElem {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of `e_1..e_n` in the degree-1 part.
    pub fn linear_coeffs(&self, n: usize) -> Vec<ParamPoly> {
        (1..=n).map(|i| self.coeff(&[i as u8])).collect()
    }

    pub fn add(&self, other: &PolyElem) -> PolyElem {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &PolyElem) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub(&self, other: &PolyElem) -> PolyElem {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn sub_assign(&mut self, other: &PolyElem) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    pub fn neg(&self) -> PolyElem {
        self.scale(&ParamPoly::int(-1))
    }

    pub fn scale(&self, c: &ParamPoly) -> PolyElem {
        if c.is_zero() {
            return PolyElem::zero();
        }
        let mut out = PolyElem::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> PolyElem {
        self.scale(&ParamPoly::constant(q.clone()))
    }

    /// Product in `S(V)`, failing when the result would exceed `DEGREE_CAP`.
    pub fn mul(&self, other: &PolyElem) -> Result<PolyElem> {
        self.mul_capped(other, DEGREE_CAP)
    }

    pub fn mul_capped(&self, other: &PolyElem, cap: usize) -> Result<PolyElem> {
        let degree = self.degree() + other.degree();
        if !self.is_zero() && !other.is_zero() && degree > cap {
            return Err(Error::DegreeCap { degree, cap });
        }
        let mut out = PolyElem::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                m.sort_unstable();
                out.add_term(m, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// `g·p`: replace each index `i` by `g(i)`.
    pub fn act(&self, g: &Perm) -> PolyElem {
        let mut out = PolyElem::zero();
        for (m, c) in &self.terms {
            let mut mm: Monomial = m.iter().map(|&i| g.apply(i as usize) as u8).collect();
            mm.sort_unstable();
            out.add_term(mm, c);
        }
        out
    }

    /// Largest index appearing, or 0.
    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| m.last())
            .map(|&i| i as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> PolyElem {
        let mut out = PolyElem::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// All nonzero parameter coefficients, one per monomial.
    pub fn coefficients(&self) -> impl Iterator<Item = &ParamPoly> {
        self.terms.values()
    }

    /// Parse text such as `"2*a*b*e1 - 1/2*c + e2^2"` for degree `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut out = PolyElem::zero();
        for (negative, term) in split_signed_terms(text)? {
            let mut coeff = if negative { -Rational::one() } else { Rational::one() };
            let mut exps = [0u8; 4];
            let mut mono = Vec::new();
            for factor in term.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {text:?}")));
                }
                let (base, power) = split_power(factor, text)?;
                if let Some(p) = Param::from_name(base) {
                    exps[p.index()] += power;
                } else if let Some(idx) = base.strip_prefix('e') {
                    let i: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad basis vector {base:?}")))?;
                    if i == 0 || i > n {
                        return Err(Error::IndexOutOfRange { index: i, n });
                    }
                    mono.extend(std::iter::repeat_n(i as u8, power as usize));
                } else {
                    let q = parse_rational(base)?;
                    for _ in 0..power {
                        coeff *= &q;
                    }
                }
            }
            let mut c = ParamPoly::zero();
            c.add_term(exps, coeff);
            mono.sort_unstable();
            out.add_term(mono, &c);
        }
        Ok(out)
    }
}

fn fmt_monomial(m: &[u8]) -> Vec<String> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let i = m[k];
        let run = m[k..].iter().take_while(|&&j| j == i).count();
        out.push(if run == 1 {
            format!("e{i}")
        } else {
            format!("e{i}^{run}")
        });
        k += run;
    }
    out
}

/// Canonical text: monomials by degree then index order; within a monomial,
/// parameter terms by descending degree.
impl fmt::Display for PolyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut monos: Vec<&Monomial> = self.terms.keys().collect();
        monos.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
        let mut flat: Vec<(Rational, Vec<String>)> = Vec::new();
        for m in monos {
            let c = &self.terms[m];
            let mut cterms: Vec<_> = c.terms().collect();
            cterms.sort_by(|x, y| {
                let dx: u32 = x.0.iter().map(|&d| d as u32).sum();
                let dy: u32 = y.0.iter().map(|&d| d as u32).sum();
                dy.cmp(&dx).then(y.0.cmp(x.0))
            });
            for (e, q) in cterms {
                let mut factors = fmt_exps(e);
                factors.extend(fmt_monomial(m));
                flat.push((q.clone(), factors));
            }
        }
        fmt_signed_terms(f, flat.into_iter())
    }
}

impl fmt::Debug for PolyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyElem({self})")
    }
}

impl From<ParamPoly> for PolyElem {
    fn from(c: ParamPoly) -> Self {
        PolyElem::constant(c)
    }
}

/// A vector of `V` with parameter-polynomial coordinates on `e_1..e_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vect {
    coords: Vec<ParamPoly>,
}

impl Vect {
    pub fn zero(n: usize) -> Self {
        Vect {
            coords: vec![ParamPoly::zero(); n],
        }
    }

    pub fn basis(i: usize, n: usize) -> Self {
        let mut v = Vect::zero(n);
        v.coords[i - 1] = ParamPoly::one();
        v
    }

    /// `e_I = Σ_{i ∈ I} e_i`.
    pub fn indicator(indices: &[usize], n: usize) -> Self {
        let mut v = Vect::zero(n);
        for &i in indices {
            v.coords[i - 1] = ParamPoly::one();
        }
        v
    }

    pub fn from_coords(coords: Vec<ParamPoly>) -> Self {
        Vect { coords }
    }

    pub fn from_rationals(coords: &[Rational]) -> Self {
        Vect {
            coords: coords.iter().cloned().map(ParamPoly::constant).collect(),
        }
    }

    /// The degree-1 part of `p` as a vector.
    pub fn from_poly(p: &PolyElem, n: usize) -> Self {
        Vect {
            coords: p.linear_coeffs(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ParamPoly] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &ParamPoly {
        &self.coords[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(ParamPoly::is_zero)
    }

    pub fn to_poly(&self) -> PolyElem {
        PolyElem::linear(&self.coords)
    }

    /// `g·v = Σ v_i e_{g(i)}`.
    pub fn act(&self, g: &Perm) -> Vect {
        let mut out = Vect::zero(self.dim());
        for i in 1..=self.dim() {
            out.coords[g.apply(i) - 1] = self.coords[i - 1].clone();
        }
        out
    }

    pub fn add(&self, other: &Vect) -> Vect {
        Vect {
            coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Vect) -> Vect {
        Vect {
            coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> Vect {
        Vect {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Nonzero coordinates as `(index, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &ParamPoly)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k + 1, c))
    }

    pub fn is_fixed_by(&self, g: &Perm) -> bool {
        crate::permgroup::fixed_space_membership(g, &self.coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::param::int;

    fn p(s: &str) -> PolyElem {
        PolyElem::parse(s, 5).unwrap()
    }

    #[test]
    fn act_examples() {
        let g = Perm::parse("(1 2 3)", 5).unwrap();
        assert_eq!(p("e1*e2").act(&g), p("e2*e3"));
        assert_eq!(p("e1*e2").act(&Perm::identity(5)), p("e1*e2"));
        assert_eq!(p("e1 + e2 + e3").act(&g), p("e1 + e2 + e3"));
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "2*a*b*e1 - 1/2*c + e2^2",
            "0",
            "e1*e2^2 - a1",
            "-e5",
            "a^2*e1 - 2*a*b*e1 + b^2*e1",
        ] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "{s}");
        }
        assert_eq!(p("e2*e1 + e1*e2").to_string(), "2*e1*e2");
    }

    #[test]
    fn degree_cap_enforced() {
        let x = p("e1*e2");
        assert!(matches!(x.mul(&x), Err(Error::DegreeCap { degree: 4, cap: 3 })));
        assert_eq!(x.mul(&p("e3")).unwrap(), p("e1*e2*e3"));
    }

    #[test]
    fn vect_action() {
        let g = Perm::parse("(1 2 3)", 4).unwrap();
        assert!(Vect::indicator(&[1, 2, 3], 4).is_fixed_by(&g));
        assert!(!Vect::basis(1, 4).is_fixed_by(&g));
        assert_eq!(Vect::basis(1, 4).act(&g), Vect::basis(2, 4));
        let v = Vect::from_rationals(&[int(1), int(2), int(0), int(0)]);
        assert_eq!(Vect::from_poly(&v.to_poly(), 4), v);
    }
}
