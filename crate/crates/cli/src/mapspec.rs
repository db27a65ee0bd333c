//! Text form of a parameter map, e.g. `L1(a1)+Ltri(a,b)+Ctri(1/2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use orbifold_core::cochains::{kappa_c_penta, kappa_c_tri, kappa_l1, kappa_l_tri, CochainKind, TwoCochain};
use orbifold_core::exactalg::{parse_rational, Param, ParamPoly, Rational};
use orbifold_core::obstructions::MapPair;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermName {
    L1,
    Ltri,
    Ctri,
    Cpenta,
}

impl TermName {
    const ALL: [TermName; 4] = [TermName::L1, TermName::Ltri, TermName::Ctri, TermName::Cpenta];

    pub fn as_str(self) -> &'static str {
        match self {
            TermName::L1 => "L1",
            TermName::Ltri => "Ltri",
            TermName::Ctri => "Ctri",
            TermName::Cpenta => "Cpenta",
        }
    }

    fn arity(self) -> usize {
        match self {
            TermName::L1 | TermName::Ctri => 1,
            TermName::Ltri | TermName::Cpenta => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecTerm {
    pub name: TermName,
    pub params: Vec<ParamPoly>,
}

impl SpecTerm {
    fn build(&self, n: usize) -> Result<TwoCochain, CliError> {
        let p = &self.params;
        Ok(match self.name {
            TermName::L1 => kappa_l1(&p[0], n),
            TermName::Ltri => kappa_l_tri(&p[0], &p[1], n)?,
            TermName::Ctri => kappa_c_tri(&p[0], n)?,
            TermName::Cpenta => kappa_c_penta(&p[0], &p[1], n),
        })
    }
}

/// A sum of named maps. The empty spec is the zero map.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MapSpec {
    pub terms: Vec<SpecTerm>,
}

/// Split at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Result<Vec<&str>, CliError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(CliError::Usage(format!("unbalanced ')' in {s:?}")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(CliError::Usage(format!("unbalanced '(' in {s:?}")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_term(text: &str) -> Result<SpecTerm, CliError> {
    let (head, rest) = text
        .split_once('(')
        .ok_or_else(|| CliError::Usage(format!("expected NAME(params), got {text:?}")))?;
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| CliError::Usage(format!("missing ')' in {text:?}")))?;
    let name = TermName::ALL
        .into_iter()
        .find(|t| t.as_str() == head)
        .ok_or_else(|| CliError::Usage(format!("unknown map {head:?}; expected L1, Ltri, Ctri or Cpenta")))?;
    let params = split_top(body, ',')?
        .into_iter()
        .map(|p| ParamPoly::parse(p).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    if params.len() != name.arity() {
        return Err(CliError::Usage(format!(
            "{} takes {} parameter(s), got {}",
            name.as_str(),
            name.arity(),
            params.len()
        )));
    }
    Ok(SpecTerm { name, params })
}

impl FromStr for MapSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(MapSpec::default());
        }
        let terms = split_top(&compact, '+')?
            .into_iter()
            .map(parse_term)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MapSpec { terms })
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let params: Vec<String> = t
                    .params
                    .iter()
                    .map(|p| p.to_string().chars().filter(|c| !c.is_whitespace()).collect())
                    .collect();
                format!("{}({})", t.name.as_str(), params.join(","))
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl MapSpec {
    /// Replace parameters by rational values.
    pub fn substitute(&self, values: &BTreeMap<Param, Rational>) -> MapSpec {
        MapSpec {
            terms: self
                .terms
                .iter()
                .map(|t| SpecTerm {
                    name: t.name,
                    params: t.params.iter().map(|p| p.substitute(values)).collect(),
                })
                .collect(),
        }
    }

    /// Parameters still occurring symbolically.
    pub fn free_params(&self) -> Vec<Param> {
        let mut out: Vec<Param> = self
            .terms
            .iter()
            .flat_map(|t| t.params.iter().flat_map(ParamPoly::variables))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Sum the linear terms and the constant terms at degree `n`.
    pub fn build(&self, n: usize) -> Result<MapPair, CliError> {
        let mut linear = TwoCochain::zero(n, CochainKind::Linear);
        let mut constant = TwoCochain::zero(n, CochainKind::Constant);
        for t in &self.terms {
            let c = t.build(n)?;
            match t.name {
                TermName::L1 | TermName::Ltri => linear = linear.add(&c)?,
                TermName::Ctri | TermName::Cpenta => constant = constant.add(&c)?,
            }
        }
        Ok(MapPair::new(&linear, &constant)?)
    }
}

/// Parse `a=1/2,b=0`.
pub fn parse_subst(text: &str) -> Result<BTreeMap<Param, Rational>, CliError> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected NAME=VALUE, got {item:?}")))?;
        let param = Param::from_name(name.trim())
            .ok_or_else(|| CliError::Usage(format!("unknown parameter {name:?}; expected a, b, c or a1")))?;
        let q = parse_rational(value.trim())?;
        if out.insert(param, q).is_some() {
            return Err(CliError::Usage(format!("parameter {name} given twice")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders_canonically() {
        let spec: MapSpec = " Ltri(a, b) + Cpenta(a,b)+Ctri( c )".parse().unwrap();
        assert_eq!(spec.terms.len(), 3);
        assert_eq!(spec.to_string(), "Ltri(a,b)+Cpenta(a,b)+Ctri(c)");
        let again: MapSpec = spec.to_string().parse().unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn empty_is_zero_map() {
        let spec: MapSpec = "".parse().unwrap();
        assert!(spec.terms.is_empty());
        let maps = spec.build(3).unwrap();
        assert!(maps.linear.is_zero() && maps.constant.is_zero());
        assert_eq!(spec.to_string(), "");
    }

    #[test]
    fn rational_and_compound_params() {
        let spec: MapSpec = "Ltri(1/2,a-b)+L1(-3)".parse().unwrap();
        assert_eq!(spec.to_string(), "Ltri(1/2,a-b)+L1(-3)");
        assert_eq!(spec.free_params(), vec![Param::A, Param::B]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["Lfoo(a)", "Ltri(a)", "Ctri(c", "Ctri c", "Ctri(c))", "L1(a1)+"] {
            assert!(bad.parse::<MapSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn substitution() {
        let spec: MapSpec = "Ltri(a,b)+Ctri(c)".parse().unwrap();
        let values = parse_subst("a=1/2, b=0,c=-2").unwrap();
        let s = spec.substitute(&values);
        assert_eq!(s.to_string(), "Ltri(1/2,0)+Ctri(-2)");
        assert!(s.free_params().is_empty());
        assert!(parse_subst("d=1").is_err());
        assert!(parse_subst("a=1,a=2").is_err());
        assert!(parse_subst("a").is_err());
    }

    #[test]
    fn splits_linear_and_constant() {
        let spec: MapSpec = "L1(1)+Ctri(2)".parse().unwrap();
        let maps = spec.build(4).unwrap();
        assert_eq!(maps.linear.kind(), CochainKind::Linear);
        assert_eq!(maps.constant.kind(), CochainKind::Constant);
        assert!(!maps.linear.is_zero() && !maps.constant.is_zero());
    }
}
