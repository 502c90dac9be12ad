//! Serialization: canonical variable names, deterministic polynomial
//! rendering, a JSON ideal format that round-trips exactly, the verdict
//! report document, and plain-text exporters for two common
//! computer-algebra-system dialects.

use crate::index::{BlockString, MultiIndex, PairIndex, SortedPair};
use crate::poly::{Coeff, Monomial, Polynomial, VarId};
use crate::verify::{CheckResult, CheckStatus};
use crate::{Error, Result};
use num::{One, Signed};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::str::FromStr;

pub const SCHEMA_VERSION: u32 = 1;

/// Canonical textual name: indices are always underscore-separated so
/// two-digit entries stay unambiguous, and the two halves of a pair
/// variable are joined by a double underscore.
pub fn var_name(v: &VarId) -> String {
    fn idx(u: &MultiIndex) -> String {
        u.entries()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join("_")
    }
    fn letters(s: &BlockString) -> String {
        s.letters()
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join("_")
    }
    match v {
        VarId::P(u) => format!("p_{}", idx(u)),
        VarId::Z(u) => format!("z_{}", idx(u)),
        VarId::Y(u) => format!("y_{}", idx(u)),
        VarId::X(pair) => format!("x_{}__{}", idx(pair.u()), idx(pair.v())),
        VarId::Xa(s) => format!("w_{}", letters(s)),
        VarId::T(a) => format!("t_{a}"),
        VarId::WMark(w) => format!("mw_{}__{}", letters(w.odd()), letters(w.even())),
        VarId::SMark => "ms".to_string(),
    }
}

/// Inverse of [`var_name`].
pub fn parse_var(s: &str) -> Result<VarId> {
    fn nums(s: &str) -> Result<Vec<u8>> {
        s.split('_')
            .map(|p| {
                p.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad index component {p}")))
            })
            .collect()
    }
    if s == "ms" {
        return Ok(VarId::SMark);
    }
    let (tag, rest) = s
        .split_once('_')
        .ok_or_else(|| Error::Parse(format!("malformed variable name {s}")))?;
    match tag {
        "p" => Ok(VarId::P(MultiIndex::new(&nums(rest)?)?)),
        "z" => Ok(VarId::Z(MultiIndex::new(&nums(rest)?)?)),
        "y" => Ok(VarId::Y(MultiIndex::new(&nums(rest)?)?)),
        "t" => {
            let a: u8 = rest.parse().map_err(|_| Error::Parse(format!("bad torus index {rest}")))?;
            Ok(VarId::T(a))
        }
        "x" => {
            let (u, v) = rest
                .split_once("__")
                .ok_or_else(|| Error::Parse(format!("pair variable needs two halves: {s}")))?;
            Ok(VarId::X(PairIndex::new(
                MultiIndex::new(&nums(u)?)?,
                MultiIndex::new(&nums(v)?)?,
            )))
        }
        "w" => Ok(VarId::Xa(BlockString::new(&nums(rest)?)?)),
        "mw" => {
            let (o, e) = rest
                .split_once("__")
                .ok_or_else(|| Error::Parse(format!("marker needs two halves: {s}")))?;
            let odd = BlockString::new(&nums(o)?)?;
            let even = BlockString::new(&nums(e)?)?;
            SortedPair::try_new(&odd, &even)
                .map(VarId::WMark)
                .ok_or_else(|| Error::Parse(format!("marker halves are not sorted: {s}")))
        }
        other => Err(Error::Parse(format!("unknown variable tag {other}"))),
    }
}

fn render_monomial(m: &Monomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    m.iter()
        .map(|(v, e)| {
            if *e == 1 {
                var_name(v)
            } else {
                format!("{}^{}", var_name(v), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Deterministic plain-text rendering, terms in the structural order of
/// their monomials.
pub fn render_polynomial(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&render_monomial(m));
        } else {
            out.push_str(&format!("{}*{}", abs, render_monomial(m)));
        }
    }
    out
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermDoc {
    /// Rational coefficient, as rendered by the exact integer pair.
    pub coeff: String,
    /// Exponent list: positions into the ideal's variable table.
    pub exps: Vec<(usize, u32)>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolyDoc {
    pub terms: Vec<TermDoc>,
}

/// A serialized ideal: variable names once, generators as exponent lists.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct IdealDoc {
    pub schema: u32,
    pub vars: Vec<String>,
    pub gens: Vec<PolyDoc>,
}

pub fn ideal_to_doc(gens: &[Polynomial]) -> IdealDoc {
    let mut vars: BTreeSet<VarId> = BTreeSet::new();
    for g in gens {
        vars.extend(g.variables());
    }
    let table: Vec<VarId> = vars.into_iter().collect();
    let position: std::collections::HashMap<VarId, usize> =
        table.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let gens = gens
        .iter()
        .map(|g| PolyDoc {
            terms: g
                .terms()
                .map(|(m, c)| TermDoc {
                    coeff: c.to_string(),
                    exps: m.iter().map(|(v, e)| (position[v], *e)).collect(),
                })
                .collect(),
        })
        .collect();
    IdealDoc {
        schema: SCHEMA_VERSION,
        vars: table.iter().map(var_name).collect(),
        gens,
    }
}

pub fn ideal_from_doc(doc: &IdealDoc) -> Result<Vec<Polynomial>> {
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::SchemaMismatch { expected: SCHEMA_VERSION, found: doc.schema });
    }
    let table: Vec<VarId> = doc.vars.iter().map(|s| parse_var(s)).collect::<Result<_>>()?;
    doc.gens
        .iter()
        .map(|p| {
            let terms = p
                .terms
                .iter()
                .map(|t| {
                    let c = Coeff::from_str(&t.coeff)
                        .map_err(|_| Error::Parse(format!("bad coefficient {}", t.coeff)))?;
                    let mut pairs = Vec::new();
                    for (i, e) in &t.exps {
                        let v = table.get(*i).ok_or_else(|| {
                            Error::Parse(format!("variable index {i} out of range"))
                        })?;
                        pairs.push((*v, *e));
                    }
                    Ok((c, Monomial::from_pairs(&pairs)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Polynomial::from_terms(terms))
        })
        .collect()
}

pub fn ideal_to_json(gens: &[Polynomial]) -> String {
    serde_json::to_string_pretty(&ideal_to_doc(gens)).expect("ideal document serializes")
}

pub fn ideal_from_json(text: &str) -> Result<Vec<Polynomial>> {
    let doc: IdealDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("ideal document: {e}")))?;
    ideal_from_doc(&doc)
}

/// The serialized verdict report. Timings are optional so that default
/// reports are bitwise reproducible across runs and machines.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ReportDoc {
    pub schema: u32,
    pub seed: u64,
    pub checks: Vec<CheckDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CheckDoc {
    pub id: String,
    pub status: String,
    pub details: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

pub fn report_to_doc(results: &[CheckResult], seed: u64, with_timings: bool) -> ReportDoc {
    ReportDoc {
        schema: SCHEMA_VERSION,
        seed,
        checks: results
            .iter()
            .map(|r| CheckDoc {
                id: r.check_id.clone(),
                status: r.status.name().to_string(),
                details: r.details.clone(),
                elapsed_ms: with_timings.then(|| r.elapsed.as_millis() as u64),
            })
            .collect(),
    }
}

pub fn status_from_name(name: &str) -> Result<CheckStatus> {
    Ok(match name {
        "pass" => CheckStatus::Pass,
        "fail" => CheckStatus::Fail,
        "skipped" => CheckStatus::Skipped,
        "resource-exceeded" => CheckStatus::ResourceExceeded,
        other => return Err(Error::Parse(format!("unknown status {other}"))),
    })
}

/// Plain-text dialects for common computer-algebra systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CasDialect {
    /// `ring r = 0, (...), dp; ideal i = ...;`
    A,
    /// `R = QQ[...]; I = ideal(...);`
    B,
}

impl CasDialect {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "cas-a" => CasDialect::A,
            "cas-b" => CasDialect::B,
            other => return Err(Error::InvalidParameter(format!("unknown dialect {other}"))),
        })
    }
}

/// Renders a ring declaration and the ideal generators. The variable set
/// may be declared explicitly; otherwise it is inferred and must then come
/// from a single tagged namespace.
pub fn export_cas(
    gens: &[Polynomial],
    declared_vars: Option<&[VarId]>,
    dialect: CasDialect,
) -> Result<String> {
    let vars: Vec<VarId> = match declared_vars {
        Some(vs) => vs.to_vec(),
        None => {
            let mut set: BTreeSet<VarId> = BTreeSet::new();
            for g in gens {
                set.extend(g.variables());
            }
            let tag = |v: &VarId| var_name(v).chars().next().unwrap_or('?');
            let tags: BTreeSet<char> = set.iter().map(tag).collect();
            if tags.len() > 1 {
                return Err(Error::InvalidParameter(
                    "generators mix variable namespaces; declare the variable set".into(),
                ));
            }
            set.into_iter().collect()
        }
    };
    if vars.is_empty() {
        return Err(Error::InvalidParameter("no variables to declare".into()));
    }
    let names: Vec<String> = vars.iter().map(var_name).collect();
    let body: Vec<String> = if gens.is_empty() {
        vec!["0".to_string()]
    } else {
        gens.iter().map(render_polynomial).collect()
    };
    Ok(match dialect {
        CasDialect::A => {
            format!(
                "ring r = 0, ({}), dp;\nideal i =\n  {};\n",
                names.join(", "),
                body.join(",\n  ")
            )
        }
        CasDialect::B => {
            format!(
                "R = QQ[{}];\nI = ideal(\n  {}\n);\n",
                names.join(", "),
                body.join(",\n  ")
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::plucker_relations;

    #[test]
    fn variable_names_round_trip() {
        let u = MultiIndex::new(&[1, 2]).unwrap();
        let v = MultiIndex::new(&[3, 11]).unwrap();
        let cases = vec![
            VarId::P(u),
            VarId::Z(v),
            VarId::Y(u),
            VarId::X(PairIndex::new(u, v)),
            VarId::Xa(BlockString::new(&[1, 1, 2]).unwrap()),
            VarId::T(7),
            VarId::SMark,
        ];
        for v in cases {
            let name = var_name(&v);
            assert_eq!(parse_var(&name).unwrap(), v, "roundtrip of {name}");
        }
        // Two-digit entries stay unambiguous.
        assert_eq!(var_name(&VarId::Z(v)), "z_3_11");
    }

    #[test]
    fn relation_renders_in_plucker_form() {
        let f = plucker_relations(2, 4).unwrap()[0].as_polynomial();
        assert_eq!(
            render_polynomial(&f),
            "p_1_2*p_3_4 - p_1_3*p_2_4 + p_1_4*p_2_3"
        );
    }

    #[test]
    fn ideal_json_round_trip() {
        let rels: Vec<Polynomial> = plucker_relations(2, 5)
            .unwrap()
            .iter()
            .map(|r| r.as_polynomial())
            .collect();
        let text = ideal_to_json(&rels);
        let back = ideal_from_json(&text).unwrap();
        assert_eq!(rels, back);
    }

    #[test]
    fn schema_mismatch_is_detected() {
        let mut doc = ideal_to_doc(&[]);
        doc.schema = 99;
        let text = serde_json::to_string(&doc).unwrap();
        match ideal_from_json(&text) {
            Err(Error::SchemaMismatch { expected: 1, found: 99 }) => {}
            other => panic!("expected schema mismatch, got {other:?}"),
        }
    }

    #[test]
    fn cas_export_dialects() {
        let f = plucker_relations(2, 4).unwrap()[0].as_polynomial();
        let a = export_cas(std::slice::from_ref(&f), None, CasDialect::A).unwrap();
        assert!(a.starts_with("ring r = 0, (p_1_2, p_1_3, p_1_4, p_2_3, p_2_4, p_3_4), dp;"));
        assert!(a.contains("p_1_2*p_3_4 - p_1_3*p_2_4 + p_1_4*p_2_3"));
        let b = export_cas(std::slice::from_ref(&f), None, CasDialect::B).unwrap();
        assert!(b.starts_with("R = QQ[p_1_2"));
        // Empty ideal still declares the ring and a zero ideal.
        let vars = [VarId::P(MultiIndex::new(&[1, 2]).unwrap())];
        let empty = export_cas(&[], Some(&vars), CasDialect::A).unwrap();
        assert!(empty.contains("ideal i =\n  0;"));
    }

    #[test]
    fn mixed_namespaces_need_declaration() {
        let f = Polynomial::from_var(VarId::P(MultiIndex::new(&[1, 2]).unwrap()))
            .mul(&Polynomial::from_var(VarId::T(1)));
        assert!(export_cas(std::slice::from_ref(&f), None, CasDialect::A).is_err());
        let vars = [VarId::P(MultiIndex::new(&[1, 2]).unwrap()), VarId::T(1)];
        assert!(export_cas(std::slice::from_ref(&f), Some(&vars), CasDialect::A).is_ok());
    }
}
