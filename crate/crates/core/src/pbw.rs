//! An independent PBW check by rewriting in `T(V)#S_n` modulo
//! `e_j e_i - e_i e_j - κ(e_j, e_i)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::cochains::TwoCochain;
use crate::error::{Error, Result};
use crate::exactalg::{ParamPoly, PolyElem, Rational, DEGREE_CAP};
use crate::linalg::{Echelon, SparseRow};
use crate::permgroup::{all_perms, factorial, Perm};

/// A basis element `e_{w_1} ⋯ e_{w_k} · g` of `T(V)#S_n`; ordered by word
/// length first so that rewriting only ever produces smaller keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    len: usize,
    word: Vec<u8>,
    group: Perm,
}

impl Term {
    pub fn new(word: Vec<u8>, group: Perm) -> Self {
        Term {
            len: word.len(),
            word,
            group,
        }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn group(&self) -> &Perm {
        &self.group
    }

    pub fn is_normal(&self) -> bool {
        self.word.windows(2).all(|w| w[0] <= w[1])
    }
}

/// A linear combination of [`Term`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElem {
    terms: BTreeMap<Term, ParamPoly>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem::default()
    }

    pub fn term(word: Vec<u8>, group: Perm) -> Self {
        let mut out = TensorElem::zero();
        out.add_term(Term::new(word, group), &ParamPoly::one());
        out
    }

    pub fn add_term(&mut self, t: Term, c: &ParamPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(t.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn sub(&self, other: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), &-c);
        }
        out
    }

    /// `(u g)(v h) = u (g·v) g h`.
    pub fn mul(&self, other: &TensorElem) -> TensorElem {
        let mut out = TensorElem::zero();
        for (s, c) in &self.terms {
            for (t, d) in &other.terms {
                let mut word = s.word.clone();
                word.extend(t.word.iter().map(|&m| s.group.apply(m as usize) as u8));
                out.add_term(Term::new(word, s.group.compose(&t.group)), &(c * d));
            }
        }
        out
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(t, c)| {
                let word: Vec<String> = t.word.iter().map(|m| format!("e{m}")).collect();
                let body = if word.is_empty() {
                    "1".to_string()
                } else {
                    word.join("*")
                };
                format!("({c})*{body}*{}", t.group)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rewriting rules `e_j e_i → e_i e_j + κ(e_j, e_i)` for `j > i` and
/// `g e_m → e_{g(m)} g`.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    n: usize,
    /// `κ(e_j, e_i)` for `j > i`, keyed by `(j, i)`, as `(h, value)` pairs.
    rules: HashMap<(u8, u8), Vec<(Perm, PolyElem)>>,
}

/// An overlap whose two reduction paths disagree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ambiguity {
    pub overlap: String,
    pub left: String,
    pub right: String,
    pub difference: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapReport {
    pub n: usize,
    pub checked: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambiguity: Option<Ambiguity>,
}

impl RewriteSystem {
    /// Rules for `κ = κ^L + κ^C` at `t = 1`.
    pub fn new(linear: &TwoCochain, constant: &TwoCochain) -> Result<Self> {
        let kappa = linear.add(constant)?;
        let n = kappa.degree();
        let mut rules: HashMap<(u8, u8), Vec<(Perm, PolyElem)>> = HashMap::new();
        for (h, comp) in kappa.components() {
            for (&(i, j), v) in comp {
                if v.degree() > 1 {
                    return Err(Error::DegreeCap {
                        degree: v.degree(),
                        cap: 1,
                    });
                }
                rules.entry((j, i)).or_default().push((h.clone(), v.neg()));
            }
        }
        Ok(RewriteSystem { n, rules })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    fn kappa_terms(&self, j: u8, i: u8) -> &[(Perm, PolyElem)] {
        self.rules.get(&(j, i)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Apply the rule at position `p` (which must be a descent) to one term.
    fn rewrite_at(&self, t: &Term, c: &ParamPoly, p: usize, out: &mut TensorElem) {
        let (j, i) = (t.word[p], t.word[p + 1]);
        let (u, v) = (&t.word[..p], &t.word[p + 2..]);
        let mut swapped = u.to_vec();
        swapped.extend([i, j]);
        swapped.extend_from_slice(v);
        out.add_term(Term::new(swapped, t.group.clone()), c);
        for (h, val) in self.kappa_terms(j, i) {
            let hv: Vec<u8> = v.iter().map(|&m| h.apply(m as usize) as u8).collect();
            let group = h.compose(&t.group);
            for (mono, coeff) in val.terms() {
                let mut word = u.to_vec();
                word.extend_from_slice(mono);
                word.extend_from_slice(&hv);
                out.add_term(Term::new(word, group.clone()), &(c * coeff));
            }
        }
    }

    /// Normal form: every word weakly increasing.
    pub fn normal_form(&self, x: &TensorElem) -> Result<TensorElem> {
        if let Some((t, _)) = x.terms.iter().find(|(t, _)| t.len > DEGREE_CAP) {
            return Err(Error::DegreeCap {
                degree: t.len,
                cap: DEGREE_CAP,
            });
        }
        let mut todo = x.clone();
        let mut done = TensorElem::zero();
        while let Some((t, c)) = todo.terms.pop_last() {
            match t.word.windows(2).position(|w| w[0] > w[1]) {
                None => done.add_term(t, &c),
                Some(p) => self.rewrite_at(&t, &c, p, &mut todo),
            }
        }
        Ok(done)
    }

    fn one_step(&self, word: &[u8], group: &Perm, p: usize) -> TensorElem {
        let mut out = TensorElem::zero();
        self.rewrite_at(&Term::new(word.to_vec(), group.clone()), &ParamPoly::one(), p, &mut out);
        out
    }

    /// Resolve every overlap: `e_k e_j e_i` with `k > j > i`, and `g · e_j e_i`
    /// with `j > i` for every `g` when `n ≤ 4` (the standard generators otherwise).
    pub fn check_overlaps(&self) -> Result<OverlapReport> {
        let n = self.n;
        let id = Perm::identity(n);
        let mut checked = 0;
        let fail = |overlap: String, l: TensorElem, r: TensorElem, checked| OverlapReport {
            n,
            checked,
            passed: false,
            ambiguity: Some(Ambiguity {
                overlap,
                difference: l.sub(&r).to_string(),
                left: l.to_string(),
                right: r.to_string(),
            }),
        };
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                for k in j + 1..=n as u8 {
                    let w = [k, j, i];
                    let left = self.normal_form(&self.one_step(&w, &id, 0))?;
                    let right = self.normal_form(&self.one_step(&w, &id, 1))?;
                    checked += 1;
                    if left != right {
                        return Ok(fail(format!("e{k}*e{j}*e{i}"), left, right, checked));
                    }
                }
            }
        }
        let group: Vec<Perm> = if n <= 4 {
            all_perms(n)
        } else {
            crate::cochains::standard_generators(n)
        };
        for g in &group {
            let gt = TensorElem::term(Vec::new(), g.clone());
            for i in 1..=n as u8 {
                for j in i + 1..=n as u8 {
                    let pushed =
                        TensorElem::term(vec![g.apply(j as usize) as u8, g.apply(i as usize) as u8], g.clone());
                    let left = self.normal_form(&pushed)?;
                    let right = self.normal_form(&gt.mul(&self.one_step(&[j, i], &id, 0)))?;
                    checked += 1;
                    if left != right {
                        return Ok(fail(format!("{g}*e{j}*e{i}"), left, right, checked));
                    }
                }
            }
        }
        Ok(OverlapReport {
            n,
            checked,
            passed: true,
            ambiguity: None,
        })
    }

    /// The defining relation `e_j e_i - e_i e_j - κ(e_j, e_i)` as an element.
    fn relation(&self, j: u8, i: u8) -> TensorElem {
        let id = Perm::identity(self.n);
        let mut r = TensorElem::term(vec![j, i], id.clone());
        r.add_term(Term::new(vec![i, j], id), &ParamPoly::int(-1));
        for (h, val) in self.kappa_terms(j, i) {
            for (mono, coeff) in val.terms() {
                r.add_term(Term::new(mono.clone(), h.clone()), &-coeff);
            }
        }
        r
    }
}

/// Quotient dimension in one filtration degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub degree: usize,
    pub dimension: u128,
    /// `dim S^{≤k}(V) · n!`, attained exactly when the map is PBW.
    pub expected: u128,
}

fn words(n: usize, len: usize) -> Vec<Vec<u8>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                (1..=n as u8).map(move |m| {
                    let mut x = w.clone();
                    x.push(m);
                    x
                })
            })
            .collect()
    })
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim F_k(T(V)#S_n / I)` for `k ≤ max_degree`: the dimension of words of
/// length at most `k` times `n!`, minus the rank of the spanning set
/// `u (h r_{ji}) v g` of the ideal restricted to that filtration degree.
/// Requires rational coefficients.
pub fn dimension_census(rs: &RewriteSystem, max_degree: usize) -> Result<Vec<CensusEntry>> {
    let n = rs.n;
    if max_degree > DEGREE_CAP {
        return Err(Error::DegreeCap {
            degree: max_degree,
            cap: DEGREE_CAP,
        });
    }
    let constant = |c: &ParamPoly| {
        c.as_constant()
            .ok_or_else(|| Error::Invalid(format!("census needs rational coefficients, found {c}")))
    };
    let group = all_perms(n);
    let mut relations = Vec::new();
    for i in 1..=n as u8 {
        for j in i + 1..=n as u8 {
            relations.push(rs.relation(j, i));
        }
    }
    let mut index: HashMap<Term, usize> = HashMap::new();
    let mut echelon = Echelon::new();
    let mut out = Vec::new();
    let nf = factorial(n);
    let mut total: u128 = 0;
    for k in 0..=max_degree {
        total += (n as u128).pow(k as u32) * nf;
        if k >= 2 {
            for ul in 0..=k - 2 {
                let vl = k - 2 - ul;
                for u in words(n, ul) {
                    for h in &group {
                        let left = TensorElem::term(u.clone(), h.clone());
                        for r in &relations {
                            let lr = left.mul(r);
                            for v in words(n, vl) {
                                for g in &group {
                                    let elem = lr.mul(&TensorElem::term(v.clone(), g.clone()));
                                    let mut row = SparseRow::new();
                                    for (t, c) in elem.terms() {
                                        let next = index.len();
                                        let col = *index.entry(t.clone()).or_insert(next);
                                        let q: Rational = constant(c)?;
                                        if !q.is_zero() {
                                            row.insert(col, q);
                                        }
                                    }
                                    echelon.insert(row);
                                }
                            }
                        }
                    }
                }
            }
        }
        out.push(CensusEntry {
            degree: k,
            dimension: total - echelon.rank() as u128,
            expected: binomial(n as u128 + k as u128, k as u128) * nf,
        });
    }
    Ok(out)
}
