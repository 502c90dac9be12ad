//! Buchberger's algorithm with the Gebauer-Möller pair update, full normal
//! form reduction with rewrite traces, reduced bases, ideal membership, and
//! elimination ideals.

use super::{Coeff, Monomial, Polynomial, TermOrder, VarId};
use crate::{Budget, Error, Result};
use num::One;
use std::collections::BTreeSet;
use std::time::Instant;

/// A Gröbner basis together with the order it was computed under.
/// `reduced` is set only by [`reduce_basis`]: pairwise irreducible and monic,
/// hence the unique reduced basis of the ideal for this order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub order: TermOrder,
    pub reduced: bool,
}

/// One rewrite step: subtracted `coeff * monomial * basis[basis_index]`.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub basis_index: usize,
    pub monomial: Monomial,
    pub coeff: Coeff,
}

/// Certificate of a reduction: replaying the steps against the same basis
/// reproduces `remainder` from the input.
#[derive(Clone, Debug, Default)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

/// Full normal form of `f` against `basis`: no monomial of the result is
/// divisible by any basis leading monomial.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> (Polynomial, ReductionTrace) {
    let leads: Vec<Option<(Monomial, Coeff)>> = basis
        .iter()
        .map(|g| g.leading(order).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let mut work = f.clone();
    let mut remainder = Polynomial::zero();
    let mut trace = ReductionTrace::default();
    while !work.is_zero() {
        let (m, c) = {
            let (m, c) = work.leading(order).expect("nonzero");
            (m.clone(), c.clone())
        };
        let hit = leads.iter().enumerate().find_map(|(i, lead)| {
            lead.as_ref()
                .filter(|(lm, _)| lm.divides(&m))
                .map(|(lm, lc)| (i, lm.clone(), lc.clone()))
        });
        match hit {
            Some((i, lm, lc)) => {
                let q = m.try_div(&lm).expect("divisibility checked");
                let factor = c / lc;
                work.sub_scaled_mul(&factor, &q, &basis[i]);
                trace.steps.push(ReductionStep { basis_index: i, monomial: q, coeff: factor });
            }
            None => {
                // Leading term irreducible: park it and continue below it.
                remainder.add_term(&c, &m);
                work.add_term(&-c, &m);
            }
        }
    }
    (remainder, trace)
}

/// The S-polynomial `(lcm/lt(f))·f − (lcm/lt(g))·g`, leading terms cancelled.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Result<Polynomial> {
    let (fm, fc) = f
        .leading(order)
        .ok_or_else(|| Error::InvalidParameter("s_polynomial of zero polynomial".into()))?;
    let (gm, gc) = g
        .leading(order)
        .ok_or_else(|| Error::InvalidParameter("s_polynomial of zero polynomial".into()))?;
    let l = fm.lcm(gm);
    let mf = l.try_div(fm).expect("lcm divisible by lt(f)");
    let mg = l.try_div(gm).expect("lcm divisible by lt(g)");
    let a = f.mul_monomial(&mf).scale(&(Coeff::one() / fc.clone()));
    let b = g.mul_monomial(&mg).scale(&(Coeff::one() / gc.clone()));
    Ok(a.sub(&b))
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct QueuedPair {
    degree: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// New pairs against basis element `t`, pruned by the standard update
/// criteria: keep a minimal lcm per class (M), one representative per lcm
/// (F), and drop co-prime leading pairs, which reduce to zero.
fn new_pairs(leads: &[Monomial], t: usize) -> Vec<QueuedPair> {
    let lt = &leads[t];
    let cand: Vec<(usize, Monomial)> = (0..t).map(|i| (i, leads[i].lcm(lt))).collect();
    let mut filtered: Vec<QueuedPair> = cand
        .iter()
        .filter(|(i, l)| {
            // M: some other new pair reaches a proper divisor of this lcm.
            !cand
                .iter()
                .any(|(_, l2)| l2 != l && l2.divides(l))
                // Co-prime leads reduce to zero.
                && !leads[*i].is_coprime(lt)
        })
        .map(|(i, l)| QueuedPair { degree: l.degree(), lcm: l.clone(), i: *i, j: t })
        .collect();
    // F: a single representative per lcm.
    filtered.sort();
    filtered.dedup_by(|a, b| a.lcm == b.lcm);
    filtered
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree first) and the chain criterion applied lazily at pop time.
pub fn buchberger(gens: &[Polynomial], order: &TermOrder, budget: &Budget) -> Result<GroebnerBasis> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let started = Instant::now();
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            if !order.covers_poly(g) {
                return Err(Error::InvalidParameter(
                    "generator contains a variable not ranked by the order".into(),
                ));
            }
            basis.push(g.clone());
        }
    }
    let mut leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading(order).expect("nonzero").0.clone())
        .collect();
    let mut queue: BinaryHeap<Reverse<QueuedPair>> = BinaryHeap::new();
    for t in 0..basis.len() {
        for p in new_pairs(&leads, t) {
            queue.push(Reverse(p));
        }
    }
    let mut spairs_done: u64 = 0;
    while let Some(Reverse(pair)) = queue.pop() {
        if pair.degree > budget.max_degree {
            return Err(Error::ResourceExceeded(format!(
                "S-pair lcm degree {} exceeds cap {}",
                pair.degree, budget.max_degree
            )));
        }
        if spairs_done >= budget.max_spairs {
            return Err(Error::ResourceExceeded(format!(
                "S-pair count exceeds cap {}",
                budget.max_spairs
            )));
        }
        if let Some(wall) = budget.wall {
            if started.elapsed() > wall {
                return Err(Error::ResourceExceeded("wall clock cap".into()));
            }
        }
        // Chain criterion, applied lazily: a later basis element whose lead
        // properly refines both sides makes this pair redundant.
        let chained = (pair.j + 1..basis.len()).any(|t| {
            leads[t].divides(&pair.lcm)
                && leads[pair.i].lcm(&leads[t]) != pair.lcm
                && leads[pair.j].lcm(&leads[t]) != pair.lcm
        });
        if chained {
            continue;
        }
        spairs_done += 1;
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order)?;
        let (rem, _) = reduce(&s, &basis, order);
        if rem.is_zero() {
            continue;
        }
        if basis.len() >= budget.max_basis {
            return Err(Error::ResourceExceeded(format!(
                "basis size exceeds cap {}",
                budget.max_basis
            )));
        }
        leads.push(rem.leading(order).expect("nonzero").0.clone());
        basis.push(rem);
        let t = basis.len() - 1;
        for p in new_pairs(&leads, t) {
            queue.push(Reverse(p));
        }
    }
    Ok(GroebnerBasis { generators: basis, order: order.clone(), reduced: false })
}

/// Minimal, inter-reduced, monic form: the unique reduced basis of the
/// ideal for the order carried by `gb`.
pub fn reduce_basis(gb: &GroebnerBasis) -> GroebnerBasis {
    let order = &gb.order;
    // Minimalize: drop any generator whose lead is divisible by another lead.
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut gens: Vec<Polynomial> = gb.generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    gens.sort_by(|a, b| {
        let la = a.leading(order).expect("nonzero").0;
        let lb = b.leading(order).expect("nonzero").0;
        order.cmp(la, lb)
    });
    for (i, g) in gens.iter().enumerate() {
        let lg = g.leading(order).expect("nonzero").0;
        let redundant = gens.iter().enumerate().any(|(j, h)| {
            if i == j {
                return false;
            }
            let lh = h.leading(order).expect("nonzero").0;
            lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            kept.push(g.clone());
        }
    }
    // Inter-reduce tails, then normalize to monic.
    let mut out: Vec<Polynomial> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter_map(|(j, h)| (j != i).then(|| h.clone()))
            .collect();
        let (rem, _) = reduce(&kept[i], &others, order);
        if !rem.is_zero() {
            out.push(rem.monic(order));
        }
    }
    out.sort_by(|a, b| {
        let la = a.leading(order).expect("nonzero").0;
        let lb = b.leading(order).expect("nonzero").0;
        order.cmp(la, lb)
    });
    GroebnerBasis { generators: out, order: order.clone(), reduced: true }
}

/// Full Buchberger criterion: every S-polynomial of the basis reduces to
/// zero. No pair is skipped.
pub fn is_groebner(basis: &[Polynomial], order: &TermOrder, budget: &Budget) -> Result<bool> {
    let gens: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Err(Error::InvalidParameter("empty basis".into()));
    }
    let started = Instant::now();
    let mut count: u64 = 0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            count += 1;
            if count > budget.max_spairs {
                return Err(Error::ResourceExceeded("S-pair count cap in is_groebner".into()));
            }
            if let Some(wall) = budget.wall {
                if started.elapsed() > wall {
                    return Err(Error::ResourceExceeded("wall clock cap".into()));
                }
            }
            let s = s_polynomial(gens[i], gens[j], order)?;
            let (rem, _) = reduce(&s, basis, order);
            if !rem.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reducedness: for any two distinct elements, no term of one is divisible
/// by the leading monomial of the other. Leading coefficients are not
/// required to be one; monic normalization is what makes the reduced basis
/// unique.
pub fn is_reduced(basis: &[Polynomial], order: &TermOrder) -> bool {
    let gens: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    for (i, g) in gens.iter().enumerate() {
        let Some((lg, _)) = g.leading(order) else { continue };
        for (j, h) in gens.iter().enumerate() {
            if i == j {
                continue;
            }
            for (m, _) in h.terms() {
                if lg.divides(m) {
                    return false;
                }
            }
        }
    }
    true
}

/// Ideal membership via a Gröbner basis, with the reduction trace as the
/// certificate.
pub fn ideal_member(
    f: &Polynomial,
    gens: &[Polynomial],
    order: &TermOrder,
    budget: &Budget,
) -> Result<(bool, ReductionTrace)> {
    let gb = buchberger(gens, order, budget)?;
    let (rem, trace) = reduce(f, &gb.generators, order);
    Ok((rem.is_zero(), trace))
}

/// Generators of the elimination ideal: the part of the ideal not involving
/// any front variable, computed with an elimination order and intersected
/// with the back subring.
pub fn eliminate(
    gens: &[Polynomial],
    front_vars: &[VarId],
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let mut all_vars: BTreeSet<VarId> = BTreeSet::new();
    for g in gens {
        all_vars.extend(g.variables());
    }
    let front: Vec<VarId> = front_vars.to_vec();
    let front_set: BTreeSet<VarId> = front.iter().copied().collect();
    let back: Vec<VarId> = all_vars.iter().filter(|v| !front_set.contains(v)).copied().collect();
    let order = TermOrder::elimination(
        front.clone(),
        TermOrder::degrevlex(front),
        TermOrder::degrevlex(back),
    );
    let gb = buchberger(gens, &order, budget)?;
    let reduced = reduce_basis(&gb);
    Ok(reduced
        .generators
        .into_iter()
        .filter(|g| g.variables().iter().all(|v| !front_set.contains(v)))
        .collect())
}

/// Convenience: degrevlex over the variables of the generators, ranked by
/// the canonical structural order.
pub fn default_order(gens: &[Polynomial]) -> TermOrder {
    let mut vars: BTreeSet<VarId> = BTreeSet::new();
    for g in gens {
        vars.extend(g.variables());
    }
    TermOrder::degrevlex(vars.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;
    use crate::poly::order::sorting_order;
    use crate::Budget;

    // A tiny ring x > y > z realized on torus parameter variables.
    fn x() -> VarId {
        VarId::T(1)
    }
    fn y() -> VarId {
        VarId::T(2)
    }
    fn z() -> VarId {
        VarId::T(3)
    }

    fn lex_xyz() -> TermOrder {
        TermOrder::lex(vec![x(), y(), z()])
    }

    fn pv(v: VarId) -> Polynomial {
        Polynomial::from_var(v)
    }

    fn pow(v: VarId, k: u32) -> Polynomial {
        Polynomial::from_term(Coeff::one(), Monomial::var(v).pow(k))
    }

    #[test]
    fn s_polynomial_identical_inputs_vanish() {
        let f = pow(x(), 2).sub(&pv(y()));
        let s = s_polynomial(&f, &f, &lex_xyz()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn s_polynomial_frozen_example() {
        // f = x^2 - y, g = xy - z under lex x > y > z gives S = xz - y^2.
        let f = pow(x(), 2).sub(&pv(y()));
        let g = pv(x()).mul(&pv(y())).sub(&pv(z()));
        let s = s_polynomial(&f, &g, &lex_xyz()).unwrap();
        let want = pv(x()).mul(&pv(z())).sub(&pow(y(), 2));
        assert_eq!(s, want);
    }

    #[test]
    fn s_polynomial_rejects_zero() {
        let f = pow(x(), 2);
        assert!(s_polynomial(&f, &Polynomial::zero(), &lex_xyz()).is_err());
    }

    #[test]
    fn coprime_lead_binomials_reduce_to_zero() {
        // Leading terms x^2 and y^3 are co-prime: S reduces to 0 by {f, g}.
        let o = lex_xyz();
        let f = pow(x(), 2).sub(&pv(z()));
        let g = pow(y(), 3).sub(&pv(z()));
        let s = s_polynomial(&f, &g, &o).unwrap();
        let (rem, _) = reduce(&s, &[f, g], &o);
        assert!(rem.is_zero());
    }

    #[test]
    fn reduce_single_rewrite() {
        // Straightening rewrite in z-variables.
        let z12 = VarId::Z(MultiIndex::new(&[1, 2]).unwrap());
        let z13 = VarId::Z(MultiIndex::new(&[1, 3]).unwrap());
        let z24 = VarId::Z(MultiIndex::new(&[2, 4]).unwrap());
        let z34 = VarId::Z(MultiIndex::new(&[3, 4]).unwrap());
        let o = TermOrder::lex(vec![z12, z13, z24, z34]);
        let f = pv(z12).mul(&pv(z34));
        let g = f.sub(&pv(z13).mul(&pv(z24)));
        let (rem, trace) = reduce(&f, &[g], &o);
        assert_eq!(rem, pv(z13).mul(&pv(z24)));
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn reduce_is_idempotent() {
        let o = lex_xyz();
        let basis = vec![
            pow(x(), 2).sub(&pv(y())),
            pv(x()).mul(&pv(y())).sub(&pv(z())),
        ];
        let f = pow(x(), 3).add(&pow(y(), 2).mul(&pv(x()))).add(&pv(z()));
        let (r1, _) = reduce(&f, &basis, &o);
        let (r2, _) = reduce(&r1, &basis, &o);
        assert_eq!(r1, r2);
    }

    #[test]
    fn buchberger_twisted_cubic_style() {
        // gens = {x^2 - y, xy - z}, lex x > y > z:
        // reduced basis {x^2 - y, xy - z, xz - y^2, y^3 - z^2}.
        let o = lex_xyz();
        let gens = vec![
            pow(x(), 2).sub(&pv(y())),
            pv(x()).mul(&pv(y())).sub(&pv(z())),
        ];
        let gb = buchberger(&gens, &o, &Budget::default()).unwrap();
        let red = reduce_basis(&gb);
        let want: Vec<Polynomial> = vec![
            pow(y(), 3).sub(&pow(z(), 2)),
            pv(x()).mul(&pv(z())).sub(&pow(y(), 2)),
            pv(x()).mul(&pv(y())).sub(&pv(z())),
            pow(x(), 2).sub(&pv(y())),
        ];
        let mut got = red.generators.clone();
        let mut expect = want;
        got.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        expect.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        assert_eq!(got, expect);
        assert!(is_groebner(&red.generators, &o, &Budget::default()).unwrap());
        assert!(is_reduced(&red.generators, &o));
    }

    #[test]
    fn is_groebner_detects_incomplete_basis() {
        let o = lex_xyz();
        let gens = vec![
            pow(x(), 2).sub(&pv(y())),
            pv(x()).mul(&pv(y())).sub(&pv(z())),
        ];
        assert!(!is_groebner(&gens, &o, &Budget::default()).unwrap());
        let singleton = vec![pow(x(), 2).sub(&pv(y()))];
        assert!(is_groebner(&singleton, &o, &Budget::default()).unwrap());
    }

    #[test]
    fn groebner_basis_unchanged_if_already_groebner() {
        // Straightening pair for the unit-block case: already a basis.
        let dec = crate::index::Decomposition::unit_blocks(2, 4).unwrap();
        let xa = |s: &[u8]| VarId::Xa(crate::index::BlockString::new(s).unwrap());
        let o = sorting_order(&dec);
        let gens = vec![
            pv(xa(&[1, 2])).mul(&pv(xa(&[3, 4]))).sub(&pv(xa(&[1, 3])).mul(&pv(xa(&[2, 4])))),
            pv(xa(&[1, 4])).mul(&pv(xa(&[2, 3]))).sub(&pv(xa(&[1, 3])).mul(&pv(xa(&[2, 4])))),
        ];
        assert!(is_groebner(&gens, &o, &Budget::default()).unwrap());
        let red = reduce_basis(&buchberger(&gens, &o, &Budget::default()).unwrap());
        assert_eq!(red.generators.len(), 2);
    }

    #[test]
    fn ideal_member_with_certificate() {
        let o = lex_xyz();
        let gens = vec![
            pow(x(), 2).sub(&pv(y())),
            pv(x()).mul(&pv(y())).sub(&pv(z())),
        ];
        let (member, _) = ideal_member(&gens[0], &gens, &o, &Budget::default()).unwrap();
        assert!(member);
        let (member, trace) = ideal_member(&pv(x()), &gens, &o, &Budget::default()).unwrap();
        assert!(!member);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn eliminate_power_parametrization() {
        // x = p^2, y = p^3 eliminates to x^3 - y^2.
        let p = VarId::T(9);
        let gens = vec![pv(x()).sub(&pow(p, 2)), pv(y()).sub(&pow(p, 3))];
        let got = eliminate(&gens, &[p], &Budget::default()).unwrap();
        assert_eq!(got.len(), 1);
        let want = pow(x(), 3).sub(&pow(y(), 2));
        assert_eq!(got[0].primitive_part(), want.primitive_part());
    }

    #[test]
    fn eliminate_empty_input() {
        assert!(eliminate(&[], &[x()], &Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn budget_aborts_loudly() {
        let o = lex_xyz();
        let gens = vec![
            pow(x(), 2).sub(&pv(y())),
            pv(x()).mul(&pv(y())).sub(&pv(z())),
        ];
        let budget = Budget { max_spairs: 0, ..Budget::default() };
        match buchberger(&gens, &o, &budget) {
            Err(Error::ResourceExceeded(_)) => {}
            other => panic!("expected resource-exceeded, got {other:?}"),
        }
    }
}
