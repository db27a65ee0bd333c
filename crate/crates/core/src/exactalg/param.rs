use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Formal parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    A,
    B,
    C,
    A1,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A, Param::B, Param::C, Param::A1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::C => "c",
            Param::A1 => "a1",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// Exponent vector over `(a, b, c, a1)`.
pub type ParamExps = [u8; 4];

/// A polynomial in the parameters with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ParamPoly {
    terms: BTreeMap<ParamExps, Rational>,
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// A reproducible rational point `(a, b, c, a1)` with small nonzero
/// numerators and denominators, derived from `seed`.
pub fn random_point(seed: u64) -> [Rational; 4] {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    std::array::from_fn(|_| {
        let mut num: i64 = 0;
        while num == 0 {
            num = rng.gen_range(-19..=19);
        }
        rat(num, rng.gen_range(1..=11))
    })
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term([0; 4], q);
        p
    }

    pub fn int(v: i64) -> Self {
        ParamPoly::constant(int(v))
    }

    pub fn var(p: Param) -> Self {
        let mut e = [0; 4];
        e[p.index()] = 1;
        let mut out = ParamPoly::zero();
        out.add_term(e, Rational::one());
        out
    }

    pub fn a() -> Self {
        ParamPoly::var(Param::A)
    }
    pub fn b() -> Self {
        ParamPoly::var(Param::B)
    }
    pub fn c() -> Self {
        ParamPoly::var(Param::C)
    }
    pub fn a1() -> Self {
        ParamPoly::var(Param::A1)
    }

    pub fn add_term(&mut self, exps: ParamExps, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamExps, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(ParamPoly::one(), |acc, _| &acc * self)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&d| d as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Parameters that occur with nonzero coefficient.
    pub fn variables(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|p| self.terms.keys().any(|e| e[p.index()] > 0))
            .collect()
    }

    /// Evaluate at a full rational point `(a, b, c, a1)`.
    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &d) in e.iter().enumerate() {
                for _ in 0..d {
                    t *= &point[k];
                }
            }
            total += t;
        }
        total
    }

    /// Substitute rational values for some parameters.
    pub fn substitute(&self, values: &BTreeMap<Param, Rational>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut exps = *e;
            let mut coeff = c.clone();
            for (p, v) in values {
                for _ in 0..exps[p.index()] {
                    coeff *= v;
                }
                exps[p.index()] = 0;
            }
            out.add_term(exps, coeff);
        }
        out
    }

    /// Replace the parameter `var` by the polynomial `value`.
    pub fn substitute_poly(&self, var: Param, value: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut exps = *e;
            let d = exps[var.index()];
            exps[var.index()] = 0;
            let mut rest = ParamPoly::zero();
            rest.add_term(exps, c.clone());
            out += &(&rest * &value.pow(u32::from(d)));
        }
        out
    }

    /// Exact division by `other` when it divides evenly; `None` otherwise.
    pub fn div_exact(&self, other: &ParamPoly) -> Option<ParamPoly> {
        if other.is_zero() {
            return None;
        }
        let lead = |p: &ParamPoly| -> (ParamExps, Rational) {
            let (e, c) = p.terms.iter().next_back().unwrap();
            (*e, c.clone())
        };
        let (de, dc) = lead(other);
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while !rem.is_zero() {
            let (re, rc) = lead(&rem);
            if (0..4).any(|k| re[k] < de[k]) {
                return None;
            }
            let mut qe = [0u8; 4];
            for k in 0..4 {
                qe[k] = re[k] - de[k];
            }
            let mut mono = ParamPoly::zero();
            mono.add_term(qe, rc / &dc);
            rem = &rem - &(&mono * other);
            quot = &quot + &mono;
        }
        Some(quot)
    }

    /// Parse text such as `"2*a*b - 1/2*c + a1^2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = ParamPoly::zero();
        for (sign, term) in split_signed_terms(text)? {
            let mut coeff = if sign { -Rational::one() } else { Rational::one() };
            let mut exps = [0u8; 4];
            for factor in term.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {text:?}")));
                }
                let (base, power) = split_power(factor, text)?;
                if let Some(p) = Param::from_name(base) {
                    exps[p.index()] = exps[p.index()]
                        .checked_add(power)
                        .ok_or_else(|| Error::Parse(format!("exponent overflow in {text:?}")))?;
                } else {
                    let q = parse_rational(base)?;
                    for _ in 0..power {
                        coeff *= &q;
                    }
                }
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

/// Split `text` into `(negative, term)` pieces at top-level `+`/`-`.
pub(crate) fn split_signed_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    if t == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for ch in t.chars() {
        let open = cur.trim().is_empty();
        match ch {
            '+' | '-' if open => {
                if ch == '-' {
                    negative = !negative;
                }
            }
            '+' | '-' if !cur.trim_end().ends_with(['*', '^', '/']) => {
                out.push((negative, cur.trim().to_string()));
                cur.clear();
                negative = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("dangling sign in {text:?}")));
    }
    out.push((negative, cur.trim().to_string()));
    Ok(out)
}

pub(crate) fn split_power<'a>(factor: &'a str, text: &str) -> Result<(&'a str, u8)> {
    match factor.split_once('^') {
        Some((b, p)) => {
            let power: u8 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
            Ok((b.trim(), power))
        }
        None => Ok((factor, 1)),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub(crate) fn fmt_exps(e: &ParamExps) -> Vec<String> {
    Param::ALL
        .into_iter()
        .filter(|p| e[p.index()] > 0)
        .map(|p| match e[p.index()] {
            1 => p.name().to_string(),
            d => format!("{}^{d}", p.name()),
        })
        .collect()
}

/// Write a signed sum of `coefficient * factors` terms.
pub(crate) fn fmt_signed_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Rational, Vec<String>)>,
) -> fmt::Result {
    let mut first = true;
    for (c, factors) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mut parts = Vec::new();
        if !mag.is_one() || factors.is_empty() {
            parts.push(mag.to_string());
        }
        parts.extend(factors);
        f.write_str(&parts.join("*"))?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // highest total degree first, then by exponent vector
        let mut terms: Vec<(&ParamExps, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|x, y| {
            let dx: u32 = x.0.iter().map(|&d| d as u32).sum();
            let dy: u32 = y.0.iter().map(|&d| d as u32).sum();
            dy.cmp(&dx).then(y.0.cmp(x.0))
        });
        fmt_signed_terms(f, terms.into_iter().map(|(e, c)| (c.clone(), fmt_exps(e))))
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl From<Rational> for ParamPoly {
    fn from(q: Rational) -> Self {
        ParamPoly::constant(q)
    }
}

impl From<i64> for ParamPoly {
    fn from(v: i64) -> Self {
        ParamPoly::int(v)
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &ParamPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = [0u8; 4];
                for k in 0..4 {
                    e[k] = e1[k] + e2[k];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}
