use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use super::closed_form::{closed_form_phi_xy, ClosedFormCase, ClosedFormKind};
use super::ops::{basis_triples, phi_pairs, phi_sum, phi_xy, Triple};
use crate::cochains::{kappa_c_penta, kappa_c_tri, kappa_l_tri, TwoCochain};
use crate::error::{Error, Result};
use crate::exactalg::{ParamPoly, PolyElem};
use crate::exec::Exec;
use crate::permgroup::{centralizer, diag_conj_orbit, FactorPair, Perm, Subgroup, DEFAULT_BOUND};

/// First argument of `φ(α, κ^L_tri)` in a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableAlpha {
    #[serde(rename = "Ltri")]
    LTri,
    #[serde(rename = "Ctri")]
    CTri,
    #[serde(rename = "Cpenta")]
    CPenta,
}

impl TableAlpha {
    pub fn name(self) -> &'static str {
        match self {
            TableAlpha::LTri => "Ltri",
            TableAlpha::CTri => "Ctri",
            TableAlpha::CPenta => "Cpenta",
        }
    }

    fn closed_form(self) -> ClosedFormKind {
        match self {
            TableAlpha::CPenta => ClosedFormKind::Penta,
            _ => ClosedFormKind::Tri,
        }
    }

    fn build(self, n: usize) -> Result<TwoCochain> {
        let (a, b) = (ParamPoly::a(), ParamPoly::b());
        match self {
            TableAlpha::LTri => kappa_l_tri(&a, &b, n),
            TableAlpha::CTri => kappa_c_tri(&ParamPoly::c(), n),
            TableAlpha::CPenta => Ok(kappa_c_penta(&a, &b, n)),
        }
    }
}

/// A fixed `(g, H, representatives, triples)` configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCase {
    pub id: &'static str,
    pub n: usize,
    pub g: &'static str,
    /// Generators of `H`; empty means the full centralizer of `g`.
    pub h_generators: &'static [&'static str],
    pub representatives: &'static [(&'static str, &'static str)],
    pub triples: &'static [Triple],
    pub alphas: &'static [TableAlpha],
}

const TRI: &[TableAlpha] = &[TableAlpha::LTri, TableAlpha::CTri];
const PENTA: &[TableAlpha] = &[TableAlpha::CPenta];

/// Every built-in case, 3-cycle pairings first.
pub fn table_cases() -> Vec<TableCase> {
    vec![
        TableCase {
            id: "identity",
            n: 4,
            g: "()",
            h_generators: &[],
            representatives: &[("(1 2 3)", "(3 2 1)")],
            triples: &[(1, 2, 3)],
            alphas: TRI,
        },
        TableCase {
            id: "33",
            n: 6,
            g: "(1 2 3)(4 5 6)",
            h_generators: &[],
            representatives: &[("(1 2 3)", "(4 5 6)")],
            triples: &[(1, 2, 3), (1, 2, 4)],
            alphas: TRI,
        },
        TableCase {
            id: "2211",
            n: 4,
            g: "(1 2)(3 4)",
            h_generators: &["(1 3 2 4)"],
            representatives: &[("(1 2 3)", "(2 3 4)")],
            triples: &[(1, 2, 3)],
            alphas: TRI,
        },
        TableCase {
            id: "tri",
            n: 4,
            g: "(1 2 3)",
            h_generators: &["(1 2 3)"],
            representatives: &[("(1 3 2)", "(1 3 2)"), ("(1 2 4)", "(4 2 3)")],
            triples: &[(1, 2, 3), (1, 2, 4)],
            alphas: TRI,
        },
        TableCase {
            id: "penta-33",
            n: 8,
            g: "(1 2 3 4 5)(6 7 8)",
            h_generators: &["(1 2 3 4 5)", "(6 7 8)"],
            representatives: &[("(1 2 3 4 5)", "(6 7 8)")],
            triples: &[(1, 6, 7), (6, 7, 8)],
            alphas: PENTA,
        },
        TableCase {
            id: "7cycle",
            n: 7,
            g: "(1 2 3 4 5 6 7)",
            h_generators: &["(1 2 3 4 5 6 7)"],
            representatives: &[("(1 2 3 4 5)", "(5 6 7)")],
            triples: &[(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 5)],
            alphas: PENTA,
        },
        TableCase {
            id: "4-2",
            n: 6,
            g: "(1 2 3 4)(5 6)",
            h_generators: &["(1 2 3 4)", "(5 6)"],
            representatives: &[("(1 2 3 4 5)", "(5 6 4)"), ("(1 2 3 5 6)", "(6 3 4)")],
            triples: &[(1, 2, 3), (1, 2, 5), (1, 3, 5), (1, 5, 6)],
            alphas: PENTA,
        },
        TableCase {
            id: "3-3",
            n: 6,
            g: "(1 2 3)(4 5 6)",
            h_generators: &["(1 2 3)", "(4 5 6)"],
            representatives: &[("(1 2 3 4 5)", "(5 6 3)")],
            triples: &[(1, 2, 3), (4, 5, 6), (1, 2, 4), (1, 4, 5)],
            alphas: PENTA,
        },
        TableCase {
            id: "5cycle",
            n: 6,
            g: "(1 2 3 4 5)",
            h_generators: &["(1 2 3 4 5)"],
            representatives: &[
                ("(1 2 3 5 4)", "(3 5 4)"),
                ("(1 2 5 3 4)", "(2 5 4)"),
                ("(1 2 3 4 6)", "(6 4 5)"),
            ],
            triples: &[(1, 2, 3), (1, 2, 4), (1, 2, 6), (1, 3, 6)],
            alphas: PENTA,
        },
        TableCase {
            id: "2-2",
            n: 5,
            g: "(1 2)(3 4)",
            h_generators: &["(1 3 2 4)", "(1 2)"],
            representatives: &[("(1 2 3 4 5)", "(5 4 2)")],
            triples: &[(1, 2, 3), (1, 2, 5), (1, 3, 5)],
            alphas: PENTA,
        },
        TableCase {
            id: "3cycle",
            n: 5,
            g: "(1 2 3)",
            h_generators: &["(1 2 3)", "(4 5)"],
            representatives: &[("(1 2 3 4 5)", "(5 4 3)")],
            triples: &[(1, 2, 3), (1, 2, 4), (1, 4, 5)],
            alphas: PENTA,
        },
    ]
}

pub fn table_case(id: &str) -> Result<TableCase> {
    table_cases()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Invalid(format!("unknown table case {id:?}")))
}

fn display_vec<S: Serializer>(v: &[PolyElem], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(render_cell))
}

fn display_rows<S: Serializer>(v: &[Vec<PolyElem>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(render_cell).collect::<Vec<_>>()))
}

/// Checks that make the reduced table equivalent to the full vanishing of `φ_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sufficiency {
    /// `H` centralizes `g`.
    pub h_centralizes: bool,
    /// Each representative's stabilizer normalizes `H`.
    pub stabilizers_normalize: bool,
    /// The centralizer orbits of the representatives are all factorizations of `g`.
    pub pairs_covered: bool,
    /// Every basis triple is an `H`-image of a column or vanishes by the closed form for every row.
    pub triples_covered: bool,
    /// `φ_g` evaluated directly on every factorization and every triple is zero.
    pub direct_zero: bool,
}

impl Sufficiency {
    pub fn holds(&self) -> bool {
        self.h_centralizes && self.stabilizers_normalize && self.pairs_covered && self.triples_covered
    }
}

/// A table of `φ_{x,y}` values: rows are the `H`-orbits of the representatives,
/// columns the chosen triples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionTable {
    pub case: String,
    pub alpha: TableAlpha,
    pub n: usize,
    #[serde(serialize_with = "ser_display")]
    pub g: Perm,
    pub h_generators: Vec<String>,
    pub h_order: usize,
    pub rows: Vec<FactorPair>,
    /// Number of rows contributed by each representative, in order.
    pub blocks: Vec<usize>,
    pub columns: Vec<Triple>,
    #[serde(serialize_with = "display_rows")]
    pub cells: Vec<Vec<PolyElem>>,
    #[serde(serialize_with = "display_rows")]
    pub block_sums: Vec<Vec<PolyElem>>,
    #[serde(serialize_with = "display_vec")]
    pub column_sums: Vec<PolyElem>,
    pub sufficiency: Sufficiency,
}

fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl ObstructionTable {
    pub fn columns_vanish(&self) -> bool {
        self.column_sums.iter().all(PolyElem::is_zero)
    }

    pub fn passed(&self) -> bool {
        self.columns_vanish() && self.sufficiency.holds()
    }
}

/// `k (a-b)^d` when the cell is a rational multiple of a power of `a - b`,
/// otherwise the expanded polynomial.
pub fn render_cell(v: &PolyElem) -> String {
    if v.is_zero() {
        return "0".into();
    }
    if v.degree() == 0 {
        let c = v.coeff(&[]);
        let base = &ParamPoly::a() - &ParamPoly::b();
        for d in (1..=4u32).rev() {
            if let Some(k) = c.div_exact(&base.pow(d)).and_then(|q| q.as_constant()) {
                return format!("{k} (a-b)^{d}");
            }
        }
    }
    v.to_string()
}

fn trivially_zero(kind: ClosedFormKind, alpha: &TwoCochain, fp: &FactorPair, t: Triple) -> Result<bool> {
    let (a, b) = (ParamPoly::a(), ParamPoly::b());
    let (case, _) = closed_form_phi_xy(alpha, kind, &a, &b, &fp.x, &fp.y, t)?;
    Ok(case != ClosedFormCase::OneFixedByY)
}

fn triple_set(t: Triple) -> [usize; 3] {
    let mut s = [t.0, t.1, t.2];
    s.sort_unstable();
    s
}

/// Build one table and its sufficiency checks.
pub fn build_table(case: &TableCase, which: TableAlpha, exec: Exec) -> Result<ObstructionTable> {
    let n = case.n;
    let g = Perm::parse(case.g, n)?;
    let alpha = which.build(n)?;
    let beta = kappa_l_tri(&ParamPoly::a(), &ParamPoly::b(), n)?;
    let zg = centralizer(&g, DEFAULT_BOUND)?;
    let h = if case.h_generators.is_empty() {
        zg.clone()
    } else {
        let gens = case
            .h_generators
            .iter()
            .map(|s| Perm::parse(s, n))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::generated_by(n, gens)?
    };
    let reps = case
        .representatives
        .iter()
        .map(|(x, y)| Ok(FactorPair::new(Perm::parse(x, n)?, Perm::parse(y, n)?)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = reps.iter().find(|p| p.product != g) {
        return Err(Error::Invalid(format!(
            "({bad}) multiplies to {}, not {g}",
            bad.product
        )));
    }

    let h_centralizes = h.is_subgroup_of(&zg);
    let mut stabilizers_normalize = true;
    for p in &reps {
        let k = centralizer(&p.x, DEFAULT_BOUND)?.intersection(&centralizer(&p.y, DEFAULT_BOUND)?);
        stabilizers_normalize &= h.is_normalized_by(&k);
    }

    let mut rows = Vec::new();
    let mut blocks = Vec::new();
    for p in &reps {
        let orbit = diag_conj_orbit(&h, p)?;
        blocks.push(orbit.len());
        rows.extend(orbit);
    }
    let columns: Vec<Triple> = case.triples.to_vec();
    let cells: Vec<Vec<PolyElem>> = exec.map(&rows, |fp| {
        columns
            .iter()
            .map(|&t| phi_xy(&alpha, &beta, &fp.x, &fp.y, t))
            .collect()
    });
    let sum_rows = |rs: &[Vec<PolyElem>]| {
        (0..columns.len())
            .map(|c| rs.iter().fold(PolyElem::zero(), |acc, r| acc.add(&r[c])))
            .collect::<Vec<_>>()
    };
    let mut block_sums = Vec::new();
    let mut start = 0;
    for &len in &blocks {
        block_sums.push(sum_rows(&cells[start..start + len]));
        start += len;
    }
    let column_sums = sum_rows(&cells);

    let all_pairs: BTreeSet<FactorPair> = phi_pairs(&alpha, &beta, &g).into_iter().collect();
    let mut reached = BTreeSet::new();
    for p in &reps {
        reached.extend(diag_conj_orbit(&zg, p)?);
    }
    let pairs_covered = reached == all_pairs;

    let mut column_images = BTreeSet::new();
    for &t in &columns {
        for z in h.elements() {
            column_images.insert(triple_set((z.apply(t.0), z.apply(t.1), z.apply(t.2))));
        }
    }
    let kind = which.closed_form();
    let mut triples_covered = true;
    for t in basis_triples(n) {
        if column_images.contains(&triple_set(t)) {
            continue;
        }
        for fp in &rows {
            if !trivially_zero(kind, &alpha, fp, t)? {
                triples_covered = false;
            }
        }
    }

    let every: Vec<FactorPair> = all_pairs.into_iter().collect();
    let direct = exec.map(&basis_triples(n), |&t| phi_sum(&alpha, &beta, &every, t).is_zero());
    let direct_zero = direct.into_iter().all(|z| z);

    Ok(ObstructionTable {
        case: case.id.to_string(),
        alpha: which,
        n,
        g,
        h_generators: h.generators().iter().map(Perm::to_string).collect(),
        h_order: h.order(),
        rows,
        blocks,
        columns,
        cells,
        block_sums,
        column_sums,
        sufficiency: Sufficiency {
            h_centralizes,
            stabilizers_normalize,
            pairs_covered,
            triples_covered,
            direct_zero,
        },
    })
}

/// All tables of one case, one per first argument.
pub fn build_case(case: &TableCase, exec: Exec) -> Result<Vec<ObstructionTable>> {
    case.alphas.iter().map(|&w| build_table(case, w, exec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(id: &str) -> Vec<ObstructionTable> {
        build_case(&table_case(id).unwrap(), Exec::Sequential).unwrap()
    }

    #[test]
    fn small_cases_vanish() {
        for id in ["identity", "2211", "tri", "2-2", "3cycle"] {
            for t in build(id) {
                assert!(t.passed(), "{id}/{}: {:?}", t.alpha.name(), t.sufficiency);
                assert!(t.sufficiency.direct_zero);
            }
        }
    }

    #[test]
    fn shapes() {
        let t = &build("2-2")[0];
        assert_eq!((t.rows.len(), t.columns.len()), (8, 3));
        let t = &build("3cycle")[0];
        assert_eq!((t.rows.len(), t.columns.len()), (6, 3));
        assert_eq!(build("tri")[0].blocks, vec![1, 3]);
    }

    #[test]
    fn cell_rendering() {
        let d3 = (&ParamPoly::a() - &ParamPoly::b()).pow(3);
        let v = PolyElem::constant(d3.scale(&crate::exactalg::int(-4)));
        assert_eq!(render_cell(&v), "-4 (a-b)^3");
        assert_eq!(render_cell(&PolyElem::zero()), "0");
        assert_eq!(render_cell(&PolyElem::e(1)), "e1");
    }

    #[test]
    fn unknown_case() {
        assert!(table_case("nope").is_err());
    }
}
