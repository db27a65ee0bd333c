use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation.
///
/// Products compose right to left: `(x * y)(i) = x(y(i))`, so that
/// `(1 2 3)(3 4 5) = (1 2 3 4 5)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n as u8).collect(),
        }
    }

    /// Build from one-line notation (1-based images).
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if seen[v] {
                return Err(Error::Invalid(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    /// Build from cycles given as 1-based index lists; cycles compose right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut out = Perm::identity(n);
        for cycle in cycles.iter().rev() {
            let c = Perm::single_cycle(n, cycle)?;
            out = c.compose(&out);
        }
        Ok(out)
    }

    fn single_cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<u8> = (1..=n as u8).collect();
        let mut seen = vec![false; n + 1];
        for &i in cycle {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if seen[i] {
                return Err(Error::Parse(format!("index {i} repeated within a cycle")));
            }
            seen[i] = true;
        }
        for (k, &i) in cycle.iter().enumerate() {
            images[i - 1] = cycle[(k + 1) % cycle.len()] as u8;
        }
        Ok(Perm { images })
    }

    /// Parse cycle notation such as `"(1 2 3)(4 5)"`, `"(1,2)"` or `"()"`.
    ///
    /// Digit runs without separators, like `"(12345)"`, are read one digit per
    /// index when `n <= 9`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed '(' in {text:?}")))?;
            let body = &body_start[..close];
            if body.contains('(') {
                return Err(Error::Parse(format!("nested '(' in {text:?}")));
            }
            let tokens: Vec<&str> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .collect();
            let mut cycle = Vec::new();
            let compact = tokens.len() == 1 && tokens[0].len() > 1 && n <= 9;
            if compact {
                for ch in tokens[0].chars() {
                    let d = ch
                        .to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad index {ch:?} in {text:?}")))?;
                    cycle.push(d as usize);
                }
            } else {
                for t in tokens {
                    let v: usize = t
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad index {t:?} in {text:?}")))?;
                    cycle.push(v);
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body_start[close + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of the 1-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&v| self.images[v as usize - 1]).collect(),
        }
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm> {
        check_degree(self, other)?;
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = (k + 1) as u8;
        }
        Perm { images }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    /// `h g h⁻¹`, computed by relabelling each cycle entry `i` of `g` as `h(i)`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for i in 1..=self.degree() {
            images[h.apply(i) - 1] = h.apply(self.apply(i)) as u8;
        }
        Perm { images }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Cycles of length ≥ 2, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// All cycles including fixed points.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.apply(start);
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.all_cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn num_cycles(&self) -> usize {
        self.all_cycles().len()
    }

    pub fn moved_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(k, &v)| v as usize != k + 1)
            .count()
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    pub fn order(&self) -> usize {
        self.all_cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }

    /// Sign of the permutation, `+1` or `-1`.
    pub fn sign(&self) -> i32 {
        let even = self.all_cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub(crate) fn check_degree(p: &Perm, q: &Perm) -> Result<()> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(())
}

/// `h g h⁻¹`.
pub fn conjugate(h: &Perm, g: &Perm) -> Result<Perm> {
    check_degree(h, g)?;
    Ok(g.conjugate_by(h))
}

/// Parse cycle notation for degree `n`.
pub fn parse_perm(text: &str, n: usize) -> Result<Perm> {
    Perm::parse(text, n)
}

/// True iff `g·v = v`, where `v` is given by its coordinates on `e_1..e_n`.
pub fn fixed_space_membership<T: PartialEq>(g: &Perm, coords: &[T]) -> bool {
    (1..=g.degree()).all(|i| coords[g.apply(i) - 1] == coords[i - 1])
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}[n={}]", self, self.degree())
    }
}

/// Parses `"n:cycles"`, e.g. `"5:(1 2 3)"`.
impl FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (n, cycles) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected 'n:cycles', got {s:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
        Perm::parse(cycles, n)
    }
}

/// Lexicographic enumeration of `S_n`.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Perm { images: cur.clone() });
        // next permutation in lexicographic order
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).unwrap();
        cur.swap(k, l);
        cur[k + 1..].reverse();
    }
    out
}

/// All `k`-cycles in `S_n`, sorted.
pub fn k_cycles(n: usize, k: usize) -> Vec<Perm> {
    if k < 2 || k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for subset in subsets(n, k) {
        // fix the smallest point first, permute the rest
        let first = subset[0];
        for tail in all_perms(k - 1) {
            let mut cycle = vec![first];
            cycle.extend(tail.images().iter().map(|&t| subset[t as usize]));
            out.push(Perm::single_cycle(n, &cycle).expect("valid cycle"));
        }
    }
    out.sort();
    out
}

/// All `k`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` into parts, each listed in descending order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// One element per conjugacy class, built from consecutive cycles
/// (e.g. `(1 2 3)(4 5 6)`), ordered by moved points and then by cycle type.
pub fn class_representatives(n: usize) -> Vec<Perm> {
    let mut keyed: Vec<(usize, Vec<usize>, Perm)> = partitions(n)
        .into_iter()
        .map(|parts| {
            let moving: Vec<usize> = parts.iter().copied().filter(|&p| p > 1).collect();
            let mut cycles = Vec::new();
            let mut next = 1;
            for &len in &moving {
                cycles.push((next..next + len).collect::<Vec<_>>());
                next += len;
            }
            let moved: usize = moving.iter().sum();
            let mut key = moving.clone();
            key.reverse();
            (moved, key, Perm::from_cycles(n, &cycles).expect("valid cycles"))
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, p)| p).collect()
}

/// Size of the conjugacy class with the given cycle type.
pub fn class_size(cycle_type: &[usize]) -> u128 {
    let n: usize = cycle_type.iter().sum();
    let mut z: u128 = 1;
    let mut counts = std::collections::BTreeMap::new();
    for &l in cycle_type {
        *counts.entry(l).or_insert(0u32) += 1;
    }
    for (&l, &m) in &counts {
        z *= (l as u128).pow(m) * factorial(m as usize);
    }
    factorial(n) / z
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn parse_identity_and_cycle() {
        assert!(p("()", 4).is_identity());
        assert_eq!(p("(1 2 3)", 5).images(), &[2, 3, 1, 4, 5]);
        assert_eq!(p("(1,2,3)", 5), p("(123)", 5));
    }

    #[test]
    fn right_factor_acts_first() {
        assert_eq!(p("(1 2)(1 3)", 3), p("(1 3 2)", 3));
        assert_eq!(p("(1 2 3)(3 4 5)", 5), p("(1 2 3 4 5)", 5));
        assert_eq!(p("(12345)(567)", 7), p("(1234567)", 7));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Perm::parse("(1 6)", 5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(Perm::parse("(1 2 1)", 5), Err(Error::Parse(_))));
        assert!(matches!(Perm::parse("(1 2", 5), Err(Error::Parse(_))));
        assert!(matches!(Perm::parse("1 2)", 5), Err(Error::Parse(_))));
    }

    #[test]
    fn conjugation_examples() {
        let g = p("(1 2 3)", 6);
        assert_eq!(conjugate(&p("(1 2)", 6), &g).unwrap(), p("(1 3 2)", 6));
        assert_eq!(conjugate(&Perm::identity(6), &g).unwrap(), g);
        assert_eq!(conjugate(&p("(1 4)(2 5)(3 6)", 6), &g).unwrap(), p("(4 5 6)", 6));
        assert!(conjugate(&p("(1 2)", 3), &g).is_err());
    }

    #[test]
    fn conjugation_matches_product() {
        for h in all_perms(4) {
            for g in all_perms(4) {
                assert_eq!(g.conjugate_by(&h), h.compose(&g).compose(&h.inverse()));
            }
        }
    }

    #[test]
    fn display_round_trip() {
        for g in all_perms(5) {
            assert_eq!(p(&g.to_string(), 5), g);
        }
        assert_eq!(p("(3 1 2)(5 4)", 5).to_string(), "(1 2 3)(4 5)");
        assert_eq!("4:(1 2)".parse::<Perm>().unwrap(), p("(1 2)", 4));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_perms(5).len(), 120);
        assert_eq!(k_cycles(5, 3).len(), 20);
        assert_eq!(k_cycles(5, 5).len(), 24);
        assert_eq!(k_cycles(8, 5).len(), 56 * 24);
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(class_representatives(8).len(), 22);
    }

    #[test]
    fn class_sizes_match_enumeration() {
        for n in 1..=6 {
            let all = all_perms(n);
            for rep in class_representatives(n) {
                let t = rep.cycle_type();
                let count = all.iter().filter(|q| q.cycle_type() == t).count();
                assert_eq!(count as u128, class_size(&t));
            }
        }
    }

    #[test]
    fn representative_order() {
        let reps: Vec<String> = class_representatives(4).iter().map(|g| g.to_string()).collect();
        assert_eq!(reps, ["()", "(1 2)", "(1 2 3)", "(1 2)(3 4)", "(1 2 3 4)"]);
        let reps6: Vec<String> = class_representatives(6).iter().map(|g| g.to_string()).collect();
        assert!(reps6.contains(&"(1 2 3)(4 5 6)".to_string()));
        assert!(reps6.contains(&"(1 2 3 4)(5 6)".to_string()));
    }

    #[test]
    fn fixed_space() {
        let g = p("(1 2 3)", 4);
        assert!(fixed_space_membership(&g, &[0, 0, 0, 1]));
        assert!(!fixed_space_membership(&g, &[1, 0, 0, 0]));
        assert!(fixed_space_membership(&g, &[1, 1, 1, 0]));
    }

    #[test]
    fn order_sign_pow() {
        let g = p("(1 2 3)(4 5)", 5);
        assert_eq!(g.order(), 6);
        assert_eq!(g.sign(), -1);
        assert!(g.pow(6).is_identity());
        assert_eq!(g.pow(-1), g.inverse());
    }
}
