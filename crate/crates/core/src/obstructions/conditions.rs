use serde::{Serialize, Serializer};

use super::ops::{basis_triples, phi_pairs, phi_sum, psi_at, Triple};
use crate::cochains::{CochainKind, InvarianceWitness, TwoCochain};
use crate::error::{Error, Result};
use crate::exactalg::{ParamPoly, PolyElem, Vect};
use crate::exec::Exec;
use crate::permgroup::{all_perms, class_representatives, Perm, DEFAULT_BOUND};

/// Which group elements the graded conditions are evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// One element per conjugacy class; sufficient once invariance holds.
    Representatives,
    /// Every element of `S_n`.
    Exhaustive,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub domain: Domain,
    pub exec: Exec,
    pub bound: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            domain: Domain::Representatives,
            exec: Exec::default(),
            bound: DEFAULT_BOUND,
        }
    }
}

fn display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// The first place a condition fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Witness {
    /// `κ^L_g(e_i, e_j)` has a component outside `V^g`.
    Image {
        g: String,
        i: usize,
        j: usize,
        #[serde(serialize_with = "display")]
        value: PolyElem,
    },
    Invariance {
        cochain: String,
        #[serde(flatten)]
        detail: InvarianceWitness,
    },
    Residual {
        #[serde(serialize_with = "display")]
        g: Perm,
        triple: Triple,
        #[serde(serialize_with = "display")]
        residual: PolyElem,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionResult {
    pub index: u8,
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub n: usize,
    pub domain: Domain,
    pub passed: bool,
    pub conditions: Vec<ConditionResult>,
}

impl ConditionReport {
    pub fn condition(&self, index: u8) -> &ConditionResult {
        &self.conditions[index as usize]
    }

    pub fn first_failure(&self) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| !c.passed)
    }
}

/// One nonzero value of a graded residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub g: Perm,
    pub triple: Triple,
    pub value: PolyElem,
}

const NAMES: [&str; 5] = [
    "image in fixed space",
    "invariance",
    "psi(kappa_L) = 0",
    "phi(kappa_L, kappa_L) = 2 psi(kappa_C)",
    "phi(kappa_C, kappa_L) = 0",
];

/// A linear/constant pair, validated and with zero parts normalized to the right kind.
#[derive(Debug, Clone)]
pub struct MapPair {
    pub linear: TwoCochain,
    pub constant: TwoCochain,
}

impl MapPair {
    pub fn new(linear: &TwoCochain, constant: &TwoCochain) -> Result<Self> {
        let n = linear.degree();
        if constant.degree() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: constant.degree(),
            });
        }
        let norm = |c: &TwoCochain, kind: CochainKind, what: &str| {
            if c.is_zero() {
                Ok(TwoCochain::zero(n, kind))
            } else if c.kind() == kind {
                Ok(c.clone())
            } else {
                Err(Error::KindMismatch(format!("{what} part must be {kind:?}")))
            }
        };
        Ok(MapPair {
            linear: norm(linear, CochainKind::Linear, "linear")?,
            constant: norm(constant, CochainKind::Constant, "constant")?,
        })
    }

    pub fn degree(&self) -> usize {
        self.linear.degree()
    }
}

fn domain_elements(n: usize, opts: &CheckOptions) -> Result<Vec<Perm>> {
    if n > opts.bound {
        return Err(Error::BoundExceeded { n, bound: opts.bound });
    }
    Ok(match opts.domain {
        Domain::Representatives => class_representatives(n),
        Domain::Exhaustive => all_perms(n),
    })
}

/// All nonzero residuals of condition 2, 3 or 4 at the given elements, ordered
/// by element and then triple.
pub fn residuals(maps: &MapPair, condition: u8, elements: &[Perm], exec: Exec) -> Result<Vec<Residual>> {
    if !(2..=4).contains(&condition) {
        return Err(Error::Invalid(format!("condition {condition} has no graded residual")));
    }
    let (kl, kc) = (&maps.linear, &maps.constant);
    let triples = basis_triples(maps.degree());
    let two = ParamPoly::int(2);
    let per_g = exec.try_map(elements, |g| -> Result<Vec<Residual>> {
        let pairs = match condition {
            3 => phi_pairs(kl, kl, g),
            4 => phi_pairs(kc, kl, g),
            _ => Vec::new(),
        };
        let mut out = Vec::new();
        for &t in &triples {
            let value = match condition {
                2 => psi_at(kl, g, t)?,
                3 => phi_sum(kl, kl, &pairs, t).sub(&psi_at(kc, g, t)?.scale(&two)),
                _ => phi_sum(kc, kl, &pairs, t),
            };
            if !value.is_zero() {
                out.push(Residual {
                    g: g.clone(),
                    triple: t,
                    value,
                });
            }
        }
        Ok(out)
    })?;
    Ok(per_g.into_iter().flatten().collect())
}

fn image_witness(kl: &TwoCochain) -> Option<Witness> {
    let n = kl.degree();
    for (g, comp) in kl.components() {
        for (&(i, j), v) in comp {
            if !Vect::from_poly(v, n).is_fixed_by(g) {
                return Some(Witness::Image {
                    g: g.to_string(),
                    i: i as usize,
                    j: j as usize,
                    value: v.clone(),
                });
            }
        }
    }
    None
}

fn invariance_witness(maps: &MapPair) -> Result<Option<Witness>> {
    for (name, c) in [("kappa_L", &maps.linear), ("kappa_C", &maps.constant)] {
        if let Err(detail) = c.is_invariant_default()? {
            return Ok(Some(Witness::Invariance {
                cochain: name.to_string(),
                detail,
            }));
        }
    }
    Ok(None)
}

fn result(index: u8, witness: Option<Witness>) -> ConditionResult {
    ConditionResult {
        index,
        name: NAMES[index as usize],
        passed: witness.is_none(),
        witness,
    }
}

/// Evaluate all five conditions; each failing condition carries its first witness.
pub fn check_conditions(linear: &TwoCochain, constant: &TwoCochain, opts: &CheckOptions) -> Result<ConditionReport> {
    let maps = MapPair::new(linear, constant)?;
    let n = maps.degree();
    let elements = domain_elements(n, opts)?;
    let mut conditions = vec![
        result(0, image_witness(&maps.linear)),
        result(1, invariance_witness(&maps)?),
    ];
    for index in 2..=4 {
        let first = residuals(&maps, index, &elements, opts.exec)?
            .into_iter()
            .next()
            .map(|r| Witness::Residual {
                g: r.g,
                triple: r.triple,
                residual: r.value,
            });
        conditions.push(result(index, first));
    }
    Ok(ConditionReport {
        n,
        domain: opts.domain,
        passed: conditions.iter().all(|c| c.passed),
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::{kappa_c_penta, kappa_c_tri, kappa_l1, kappa_l_tri};
    use crate::exactalg::int;

    fn opts() -> CheckOptions {
        CheckOptions {
            exec: Exec::Sequential,
            ..CheckOptions::default()
        }
    }

    fn ab() -> (ParamPoly, ParamPoly) {
        (ParamPoly::a(), ParamPoly::b())
    }

    #[test]
    fn family_passes() {
        let (a, b) = ab();
        for n in 3..=6 {
            let kl = kappa_l_tri(&a, &b, n).unwrap();
            let kc = kappa_c_tri(&ParamPoly::c(), n)
                .unwrap()
                .add(&kappa_c_penta(&a, &b, n))
                .unwrap();
            let r = check_conditions(&kl, &kc, &opts()).unwrap();
            assert!(r.passed, "n={n}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn lie_map_with_c_tri_fails_condition_four() {
        let kl = kappa_l1(&ParamPoly::one(), 4);
        let kc = kappa_c_tri(&ParamPoly::c(), 4).unwrap();
        let r = check_conditions(&kl, &kc, &opts()).unwrap();
        assert!(r.condition(3).passed);
        let c4 = r.condition(4);
        assert!(!c4.passed);
        let Some(Witness::Residual { g, triple, residual }) = &c4.witness else {
            panic!("expected a residual witness");
        };
        assert_eq!(g.to_string(), "(1 2 3)");
        assert_eq!(*triple, (1, 2, 3));
        assert_eq!(*residual, PolyElem::constant(ParamPoly::c().scale(&int(12))));
    }

    #[test]
    fn condition_three_residual_at_five() {
        let (a, b) = ab();
        let kl = kappa_l1(&ParamPoly::a1(), 5)
            .add(&kappa_l_tri(&a, &b, 5).unwrap())
            .unwrap();
        let kc = kappa_c_penta(&a, &b, 5);
        let maps = MapPair::new(&kl, &kc).unwrap();
        let g = Perm::parse("(1 2 3)", 5).unwrap();
        let rs = residuals(&maps, 3, &[g], Exec::Sequential).unwrap();
        let r = rs.iter().find(|r| r.triple == (1, 2, 3)).unwrap();
        let expect = PolyElem::parse(
            "6*a*e1 + 2*b*e1 + 6*a*e2 + 2*b*e2 + 6*a*e3 + 2*b*e3 + 3*b*e4 + 3*b*e5",
            5,
        )
        .unwrap()
        .scale(&ParamPoly::a1().scale(&int(2)));
        assert_eq!(r.value, expect);
    }

    #[test]
    fn image_condition_detects_moved_values() {
        let mut kl = TwoCochain::zero(3, CochainKind::Linear);
        kl.set(&Perm::parse("(1 2)", 3).unwrap(), 1, 3, &PolyElem::e(1))
            .unwrap();
        let r = check_conditions(&kl, &TwoCochain::zero(3, CochainKind::Constant), &opts()).unwrap();
        assert!(!r.condition(0).passed);
    }

    #[test]
    fn exhaustive_agrees_with_representatives() {
        let (a, b) = ab();
        let kl = kappa_l1(&ParamPoly::a1(), 4)
            .add(&kappa_l_tri(&a, &b, 4).unwrap())
            .unwrap();
        let kc = kappa_c_tri(&ParamPoly::c(), 4).unwrap();
        let reps = check_conditions(&kl, &kc, &opts()).unwrap();
        let all = check_conditions(
            &kl,
            &kc,
            &CheckOptions {
                domain: Domain::Exhaustive,
                ..opts()
            },
        )
        .unwrap();
        let verdicts = |r: &ConditionReport| r.conditions.iter().map(|c| c.passed).collect::<Vec<_>>();
        assert_eq!(verdicts(&reps), verdicts(&all));
    }

    #[test]
    fn kinds_are_validated() {
        let c = kappa_c_tri(&ParamPoly::c(), 3).unwrap();
        assert!(matches!(check_conditions(&c, &c, &opts()), Err(Error::KindMismatch(_))));
    }
}
