//! Term orders: lex, degrevlex, weight orders, block-composite orders, and
//! elimination orders.
//!
//! A composite order compares two monomials by first collapsing each group of
//! variables to a single synthetic variable (total group degree) and
//! comparing the collapsed monomials with the outer order, then breaking ties
//! with the inner order of the leftmost group on which the monomials differ.
//! Composing term orders this way yields a term order again.

use super::{Monomial, VarId};
use crate::index::{BlockString, Decomposition};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

#[derive(Clone, Debug)]
enum Spec {
    /// Lexicographic; `rank[0]` is the largest variable.
    Lex { rank: Arc<Vec<VarId>>, pos: Arc<HashMap<VarId, usize>> },
    /// Graded reverse lexicographic over the given ranking.
    DegRevLex { rank: Arc<Vec<VarId>>, pos: Arc<HashMap<VarId, usize>> },
    /// Weight vector compared first, ties broken by another order.
    Weight { weights: Arc<HashMap<VarId, u64>>, tie: Arc<TermOrder> },
    /// Group-collapsed outer comparison, then leftmost differing group's
    /// inner order.
    Composite {
        groups: Arc<Vec<CompositeGroup>>,
        group_of: Arc<HashMap<VarId, usize>>,
        outer: Arc<TermOrder>,
    },
    /// Front variables dominate: compare front restrictions first.
    Elimination {
        front: Arc<BTreeSet<VarId>>,
        front_order: Arc<TermOrder>,
        back_order: Arc<TermOrder>,
    },
}

#[derive(Clone, Debug)]
pub struct CompositeGroup {
    /// Synthetic variable standing for the whole group in the outer order.
    pub key: VarId,
    pub members: Vec<VarId>,
    pub inner: TermOrder,
}

/// A total order on monomials satisfying the term-order axioms: totality,
/// unit minimality, and translation invariance.
#[derive(Clone, Debug)]
pub struct TermOrder {
    spec: Spec,
}

fn index_of(rank: &[VarId]) -> Arc<HashMap<VarId, usize>> {
    Arc::new(rank.iter().enumerate().map(|(i, v)| (*v, i)).collect())
}

impl TermOrder {
    pub fn lex(rank: Vec<VarId>) -> Self {
        let pos = index_of(&rank);
        TermOrder { spec: Spec::Lex { rank: Arc::new(rank), pos } }
    }

    pub fn degrevlex(rank: Vec<VarId>) -> Self {
        let pos = index_of(&rank);
        TermOrder { spec: Spec::DegRevLex { rank: Arc::new(rank), pos } }
    }

    pub fn weight(weights: Vec<(VarId, u64)>, tie: TermOrder) -> Self {
        TermOrder {
            spec: Spec::Weight {
                weights: Arc::new(weights.into_iter().collect()),
                tie: Arc::new(tie),
            },
        }
    }

    pub fn composite(groups: Vec<CompositeGroup>, outer: TermOrder) -> Result<Self> {
        let mut group_of = HashMap::new();
        for (i, g) in groups.iter().enumerate() {
            for v in &g.members {
                if group_of.insert(*v, i).is_some() {
                    return Err(Error::InvalidParameter(format!(
                        "variable {v:?} appears in two composite groups"
                    )));
                }
            }
        }
        Ok(TermOrder {
            spec: Spec::Composite {
                groups: Arc::new(groups),
                group_of: Arc::new(group_of),
                outer: Arc::new(outer),
            },
        })
    }

    pub fn elimination(front: Vec<VarId>, front_order: TermOrder, back_order: TermOrder) -> Self {
        TermOrder {
            spec: Spec::Elimination {
                front: Arc::new(front.into_iter().collect()),
                front_order: Arc::new(front_order),
                back_order: Arc::new(back_order),
            },
        }
    }

    /// Whether every variable of the monomial is ranked by this order.
    pub fn covers(&self, m: &Monomial) -> bool {
        m.variables().all(|v| self.covers_var(v))
    }

    /// Whether every variable of the polynomial is ranked by this order.
    pub fn covers_poly(&self, f: &super::Polynomial) -> bool {
        f.terms().all(|(m, _)| self.covers(m))
    }

    fn covers_var(&self, v: &VarId) -> bool {
        match &self.spec {
            Spec::Lex { pos, .. } | Spec::DegRevLex { pos, .. } => pos.contains_key(v),
            Spec::Weight { weights, tie } => weights.contains_key(v) && tie.covers_var(v),
            Spec::Composite { group_of, groups, .. } => group_of
                .get(v)
                .map(|&i| groups[i].inner.covers_var(v))
                .unwrap_or(false),
            Spec::Elimination { front, front_order, back_order } => {
                if front.contains(v) {
                    front_order.covers_var(v)
                } else {
                    back_order.covers_var(v)
                }
            }
        }
    }

    /// Strict weak ordering on monomials. Variables not ranked by the order
    /// make the comparison meaningless; use [`TermOrder::compare`] at API
    /// boundaries.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_filtered(a, b, &|_| true)
    }

    /// Comparison restricted to the variables selected by `keep`; the
    /// allocation-free core shared by the elimination and composite cases.
    fn cmp_filtered(&self, a: &Monomial, b: &Monomial, keep: &dyn Fn(&VarId) -> bool) -> Ordering {
        match &self.spec {
            Spec::Lex { rank, pos } => cmp_lex(a, b, rank, pos, keep),
            Spec::DegRevLex { rank, pos } => cmp_degrevlex(a, b, rank, pos, keep),
            Spec::Weight { weights, tie } => {
                let wsum = |m: &Monomial| -> u64 {
                    m.iter()
                        .filter(|(v, _)| keep(v))
                        .map(|(v, e)| weights.get(v).copied().unwrap_or(0) * *e as u64)
                        .sum()
                };
                wsum(a).cmp(&wsum(b)).then_with(|| tie.cmp_filtered(a, b, keep))
            }
            Spec::Composite { groups, group_of, outer } => {
                let mut da = vec![0u32; groups.len()];
                let mut db = vec![0u32; groups.len()];
                for (v, e) in a.iter() {
                    if keep(v) {
                        if let Some(&i) = group_of.get(v) {
                            da[i] += e;
                        }
                    }
                }
                for (v, e) in b.iter() {
                    if keep(v) {
                        if let Some(&i) = group_of.get(v) {
                            db[i] += e;
                        }
                    }
                }
                let collapse = |degs: &[u32]| -> Monomial {
                    Monomial::from_pairs(
                        &degs
                            .iter()
                            .enumerate()
                            .filter(|(_, &d)| d > 0)
                            .map(|(i, &d)| (groups[i].key, d))
                            .collect::<Vec<_>>(),
                    )
                };
                let by_outer = outer.cmp(&collapse(&da), &collapse(&db));
                if by_outer != Ordering::Equal {
                    return by_outer;
                }
                for (gi, g) in groups.iter().enumerate() {
                    let in_group =
                        |v: &VarId| keep(v) && group_of.get(v) == Some(&gi);
                    let c = g.inner.cmp_filtered(a, b, &in_group);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
            Spec::Elimination { front, front_order, back_order } => {
                let in_front = |v: &VarId| keep(v) && front.contains(v);
                front_order.cmp_filtered(a, b, &in_front).then_with(|| {
                    let in_back = |v: &VarId| keep(v) && !front.contains(v);
                    back_order.cmp_filtered(a, b, &in_back)
                })
            }
        }
    }

    /// Comparison with coverage validation.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            for v in m.variables() {
                if !self.covers_var(v) {
                    return Err(Error::InvalidParameter(format!(
                        "variable {v:?} is not ranked by this order"
                    )));
                }
            }
        }
        Ok(self.cmp(a, b))
    }
}

fn cmp_lex(
    a: &Monomial,
    b: &Monomial,
    rank: &[VarId],
    pos: &HashMap<VarId, usize>,
    keep: &dyn Fn(&VarId) -> bool,
) -> Ordering {
    // Exponent vectors are sparse; walk the ranking positions present in
    // either monomial in ranking order.
    let mut positions: Vec<usize> = a
        .variables()
        .chain(b.variables())
        .filter(|v| keep(v))
        .filter_map(|v| pos.get(v).copied())
        .collect();
    positions.sort_unstable();
    positions.dedup();
    for p in positions {
        let v = rank[p];
        match a.exponent(&v).cmp(&b.exponent(&v)) {
            Ordering::Equal => continue,
            c => return c,
        }
    }
    Ordering::Equal
}

fn cmp_degrevlex(
    a: &Monomial,
    b: &Monomial,
    rank: &[VarId],
    pos: &HashMap<VarId, usize>,
    keep: &dyn Fn(&VarId) -> bool,
) -> Ordering {
    let deg = |m: &Monomial| m.iter().filter(|(v, _)| keep(v)).map(|(_, e)| e).sum::<u32>();
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        c => return c,
    }
    // Reverse scan: the monomial with the smaller exponent on the last
    // variable where they differ is the larger one.
    let mut positions: Vec<usize> = a
        .variables()
        .chain(b.variables())
        .filter(|v| keep(v))
        .filter_map(|v| pos.get(v).copied())
        .collect();
    positions.sort_unstable();
    positions.dedup();
    for p in positions.into_iter().rev() {
        let v = rank[p];
        match a.exponent(&v).cmp(&b.exponent(&v)) {
            Ordering::Equal => continue,
            c => return c.reverse(),
        }
    }
    Ordering::Equal
}

/// Weight of one block string under the pair-gap potential: summing
/// `(M - (a_s - a_r))^2` over entry pairs r < s, with M = 2ñ. Straightening
/// an unsorted pair strictly decreases the total weight, so the unsorted
/// product is the leading term of every straightening binomial. This is
/// checked, not assumed: see [`sorting_order_is_compatible`].
pub fn sorting_weight(a: &BlockString, ground_size: u8) -> u64 {
    let m = 2 * ground_size as i64;
    let letters = a.letters();
    let mut w = 0i64;
    for r in 0..letters.len() {
        for s in r + 1..letters.len() {
            let gap = letters[s] as i64 - letters[r] as i64;
            w += (m - gap) * (m - gap);
        }
    }
    w as u64
}

/// The sorting-compatible order on the abstract block variables `x_a`:
/// weight by [`sorting_weight`], ties broken lexicographically by string.
pub fn sorting_order(dec: &Decomposition) -> TermOrder {
    let strings = crate::index::block_strings(dec);
    let weights: Vec<(VarId, u64)> = strings
        .iter()
        .map(|a| (VarId::Xa(*a), sorting_weight(a, dec.ground_size())))
        .collect();
    let rank: Vec<VarId> = strings.iter().map(|a| VarId::Xa(*a)).collect();
    TermOrder::weight(weights, TermOrder::lex(rank))
}

/// Empirical check of the defining property of the sorting order: for every
/// unsorted pair (a,b) with sorted rearrangement (k_o,k_e), the monomial
/// `x_a x_b` is strictly larger than `x_{k_o} x_{k_e}`.
pub fn sorting_order_is_compatible(dec: &Decomposition) -> bool {
    let order = sorting_order(dec);
    let strings = crate::index::block_strings(dec);
    for (i, a) in strings.iter().enumerate() {
        for b in &strings[i..] {
            if crate::index::SortedPair::try_new(a, b).is_some() {
                continue;
            }
            let w = crate::index::SortedPair::sort_of(a.letters(), b.letters())
                .expect("equal lengths");
            let lead = Monomial::var(VarId::Xa(*a)).mul(&Monomial::var(VarId::Xa(*b)));
            let tail = Monomial::var(VarId::Xa(*w.odd())).mul(&Monomial::var(VarId::Xa(*w.even())));
            if order.cmp(&lead, &tail) != Ordering::Greater {
                return false;
            }
        }
    }
    true
}

/// The term order on z-variables induced by the sorting order on the
/// collapsed fiber variables and a fixed inner order per fiber. Within each
/// fiber, variables are ordered so that the lexicographically least index is
/// the minimal variable; it serves as the fiber representative.
pub fn orbit_order(dec: &Decomposition) -> Result<TermOrder> {
    let strings = crate::index::block_strings(dec);
    let mut groups = Vec::new();
    for a in &strings {
        let fiber = crate::index::fiber_of_string(a, dec)?;
        let members: Vec<VarId> = fiber.iter().map(|u| VarId::Z(*u)).collect();
        // Lex ranking listed largest-first: reverse the index order so the
        // lex-least index ends up minimal.
        let mut rank = members.clone();
        rank.reverse();
        groups.push(CompositeGroup {
            key: VarId::Xa(*a),
            members,
            inner: TermOrder::lex(rank),
        });
    }
    TermOrder::composite(groups, sorting_order(dec))
}
