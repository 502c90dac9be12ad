//! Generators for the explicit polynomial families: Plücker relations and
//! their linearizations, pair-coordinate binomials, straightening bases,
//! orbit-closure Gröbner systems, fiber ideals, coordinate-product ideals,
//! cubic binomials, and the named example polynomials.

use crate::index::{
    block_strings, canonical_plucker, fiber_of_string, lambda_w, multi_indices, sorted_pairs,
    BlockString, Decomposition, MultiIndex, PairIndex, SignedIndex, SortedPair,
};
use crate::maps::MapKind;
use crate::poly::{Coeff, Monomial, Polynomial, VarId};
use crate::{Error, Result};
use num::{One, Zero};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

fn pvar(u: MultiIndex) -> VarId {
    VarId::P(u)
}

fn zvar(u: MultiIndex) -> VarId {
    VarId::Z(u)
}

fn xvar(p: PairIndex) -> VarId {
    VarId::X(p)
}

fn xavar(a: BlockString) -> VarId {
    VarId::Xa(a)
}

fn coeff(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}

/// A quadratic Plücker relation `Σ sgn(s) p_{u_s} p_{v_s}`, all of whose
/// index pairs share one sorted key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PluckerRelation {
    terms: Vec<(i8, PairIndex)>,
    key: SortedPair,
}

impl PluckerRelation {
    /// Builds a relation from signed pairs, checking the common-key
    /// invariant. Terms are kept in the given order.
    pub fn from_terms(terms: Vec<(i8, PairIndex)>) -> Result<Self> {
        if terms.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "a Plücker relation needs at least 3 terms, got {}",
                terms.len()
            )));
        }
        let key = terms[0].1.key();
        for (_, p) in &terms {
            if p.key() != key {
                return Err(Error::InvalidParameter(format!(
                    "pair {p:?} does not share the sorted key {key:?}"
                )));
            }
        }
        Ok(PluckerRelation { terms, key })
    }

    pub fn terms(&self) -> &[(i8, PairIndex)] {
        &self.terms
    }

    pub fn key(&self) -> &SortedPair {
        &self.key
    }

    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(s, p)| {
            (
                coeff(*s as i64),
                Monomial::var(pvar(*p.u())).mul(&Monomial::var(pvar(*p.v()))),
            )
        }))
    }

    /// The linearized relation `Σ sgn(s) x_{(u_s, v_s)}` on the pair space
    /// of the key.
    pub fn linearize(&self) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(s, p)| (coeff(*s as i64), Monomial::var(xvar(*p)))),
        )
    }

    pub fn evaluate(&self, point: &RationalPoint) -> Result<Coeff> {
        let mut acc = Coeff::zero();
        for (s, p) in &self.terms {
            acc += coeff(*s as i64) * point.get(p.u())?.clone() * point.get(p.v())?.clone();
        }
        Ok(acc)
    }
}

/// All Plücker relations for the Grassmannian of d-planes in n-space: one
/// relation per index pair (h, k) with h of length d-1 and k of length d+1,
/// sign-normalized so the structurally first term is positive, with
/// identically-zero and duplicate relations removed. Each relation carries
/// its sorted key.
pub fn plucker_relations(d: u8, n: u8) -> Result<Vec<PluckerRelation>> {
    if d < 2 || d >= n {
        return Err(Error::InvalidParameter(format!(
            "plucker_relations requires 2 <= d < n, got d = {d}, n = {n}"
        )));
    }
    let mut seen: BTreeSet<Vec<(i8, PairIndex)>> = BTreeSet::new();
    let mut out = Vec::new();
    for h in multi_indices(d - 1, n)? {
        for k in multi_indices(d + 1, n)? {
            let mut acc: BTreeMap<PairIndex, i64> = BTreeMap::new();
            for (lambda, &kl) in k.entries().iter().enumerate() {
                let mut first = h.entries().to_vec();
                first.push(kl);
                let SignedIndex::Signed { index: u, sign } = canonical_plucker(&first, n)? else {
                    continue;
                };
                let rest: Vec<u8> = k.entries().iter().copied().filter(|&x| x != kl).collect();
                let v = MultiIndex::new(&rest)?;
                let term_sign = if lambda % 2 == 0 { 1 } else { -1 } * sign as i64;
                *acc.entry(PairIndex::new(u, v)).or_insert(0) += term_sign;
            }
            let mut terms: Vec<(i8, PairIndex)> = acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(p, c)| {
                    debug_assert!(c.abs() == 1);
                    (c as i8, p)
                })
                .collect();
            if terms.is_empty() {
                continue;
            }
            if terms[0].0 < 0 {
                for t in &mut terms {
                    t.0 = -t.0;
                }
            }
            let rel = PluckerRelation::from_terms(terms)?;
            if seen.insert(rel.terms.clone()) {
                out.push(rel);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A difference of two distinct monomials with coefficients +1 and -1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binomial {
    plus: Monomial,
    minus: Monomial,
}

impl Binomial {
    pub fn new(plus: Monomial, minus: Monomial) -> Result<Self> {
        if plus == minus {
            return Err(Error::InvalidParameter("binomial with equal monomials".into()));
        }
        Ok(Binomial { plus, minus })
    }

    pub fn plus(&self) -> &Monomial {
        &self.plus
    }

    pub fn minus(&self) -> &Monomial {
        &self.minus
    }

    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::from_terms([
            (Coeff::one(), self.plus.clone()),
            (-Coeff::one(), self.minus.clone()),
        ])
    }
}

/// The pair-coordinate binomials of one key w: for every two distinct
/// elements of `Λ_w`, the relation `p_{u'} p_{v'} x_{(u,v)} - p_u p_v
/// x_{(u',v')}`. A singleton pair space yields nothing.
pub fn wp_binomials(w: &SortedPair, dec: &Decomposition) -> Result<Vec<Binomial>> {
    let pairs = lambda_w(w, dec)?;
    let mut out = Vec::new();
    for (i, a) in pairs.iter().enumerate() {
        for b in &pairs[i + 1..] {
            let plus = Monomial::var(pvar(*b.u()))
                .mul(&Monomial::var(pvar(*b.v())))
                .mul(&Monomial::var(xvar(*a)));
            let minus = Monomial::var(pvar(*a.u()))
                .mul(&Monomial::var(pvar(*a.v())))
                .mul(&Monomial::var(xvar(*b)));
            out.push(Binomial::new(plus, minus)?);
        }
    }
    Ok(out)
}

/// The straightening basis on abstract block variables: one binomial
/// `x_a x_b - x_{k_o} x_{k_e}` per unsorted unordered pair (a, b), where
/// (k_o, k_e) is the sorted rearrangement of the interleave.
pub fn sorted_gb(dec: &Decomposition) -> Vec<Binomial> {
    let strings = block_strings(dec);
    let mut out = Vec::new();
    for (i, a) in strings.iter().enumerate() {
        for b in &strings[i..] {
            if SortedPair::try_new(a, b).is_some() {
                continue;
            }
            let w = SortedPair::sort_of(a.letters(), b.letters()).expect("equal lengths");
            let plus = Monomial::var(xavar(*a)).mul(&Monomial::var(xavar(*b)));
            let minus = Monomial::var(xavar(*w.odd())).mul(&Monomial::var(xavar(*w.even())));
            if plus != minus {
                out.push(Binomial::new(plus, minus).expect("distinct"));
            }
        }
    }
    out
}

/// A point of the Plücker projective space: one exact rational coordinate
/// per multi-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    d: u8,
    ground: u8,
    coords: BTreeMap<MultiIndex, Coeff>,
}

impl RationalPoint {
    pub fn new(d: u8, ground: u8, coords: BTreeMap<MultiIndex, Coeff>) -> Result<Self> {
        let domain = multi_indices(d, ground)?;
        if coords.len() != domain.len() || domain.iter().any(|u| !coords.contains_key(u)) {
            return Err(Error::InvalidParameter(
                "point must assign exactly the full set of multi-indices".into(),
            ));
        }
        Ok(RationalPoint { d, ground, coords })
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn ground(&self) -> u8 {
        self.ground
    }

    pub fn get(&self, u: &MultiIndex) -> Result<&Coeff> {
        self.coords
            .get(u)
            .ok_or_else(|| Error::InvalidParameter(format!("no coordinate for {u:?}")))
    }

    pub fn coords(&self) -> impl Iterator<Item = (&MultiIndex, &Coeff)> {
        self.coords.iter()
    }

    pub fn all_nonzero(&self) -> bool {
        self.coords.values().all(|c| !c.is_zero())
    }

    pub fn all_ones(d: u8, ground: u8) -> Result<Self> {
        let coords = multi_indices(d, ground)?
            .into_iter()
            .map(|u| (u, Coeff::one()))
            .collect();
        RationalPoint::new(d, ground, coords)
    }

    /// Random point with nonzero integer coordinates in [-9, 9].
    pub fn random_nonzero(dec: &Decomposition, rng: &mut impl Rng) -> Result<Self> {
        let coords = multi_indices(dec.d(), dec.ground_size())?
            .into_iter()
            .map(|u| {
                let mut v: i64 = 0;
                while v == 0 {
                    v = rng.random_range(-9..=9);
                }
                (u, coeff(v))
            })
            .collect();
        RationalPoint::new(dec.d(), dec.ground_size(), coords)
    }

    /// Random point with integer coordinates in [-9, 9]; each coordinate is
    /// zero with the given percentage probability.
    pub fn random_with_zeros(
        dec: &Decomposition,
        zero_percent: u8,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let coords = multi_indices(dec.d(), dec.ground_size())?
            .into_iter()
            .map(|u| {
                let z: u8 = rng.random_range(0..100);
                let v: i64 = if z < zero_percent {
                    0
                } else {
                    let mut v = 0;
                    while v == 0 {
                        v = rng.random_range(-9..=9);
                    }
                    v
                };
                (u, coeff(v))
            })
            .collect();
        RationalPoint::new(dec.d(), dec.ground_size(), coords)
    }

    /// Plücker coordinates of an actual d-plane: the maximal minors of a
    /// random integer matrix, rejection-sampled until all minors are
    /// nonzero.
    pub fn random_grassmannian(d: u8, n: u8, rng: &mut impl Rng) -> Result<Self> {
        for _ in 0..1000 {
            let matrix: Vec<Vec<i64>> = (0..d)
                .map(|_| (0..n).map(|_| rng.random_range(-9..=9)).collect())
                .collect();
            let mut coords = BTreeMap::new();
            let mut ok = true;
            for u in multi_indices(d, n)? {
                let minor = det(&submatrix(&matrix, u.entries()));
                if minor == 0 {
                    ok = false;
                    break;
                }
                coords.insert(u, coeff(minor));
            }
            if ok {
                return RationalPoint::new(d, n, coords);
            }
        }
        Err(Error::ResourceExceeded(
            "could not sample a matrix with all minors nonzero".into(),
        ))
    }
}

fn submatrix(matrix: &[Vec<i64>], cols: &[u8]) -> Vec<Vec<i64>> {
    matrix
        .iter()
        .map(|row| cols.iter().map(|&c| row[c as usize - 1]).collect())
        .collect()
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0i64;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter_map(|(k, &v)| (k != j).then_some(v))
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * m[0][j] * det(&minor);
            }
            acc
        }
    }
}

/// The orbit-closure Gröbner system of an all-nonzero point: linear
/// relations tying every fiber coordinate to the fiber representative, and
/// one quadratic relation per unsorted string pair. The representative of a
/// fiber is its lexicographically least index. With `monic` set, every
/// relation is divided by its leading coefficient.
pub fn orbit_gb(p: &RationalPoint, dec: &Decomposition, monic: bool) -> Result<Vec<Polynomial>> {
    if p.d() != dec.d() || p.ground() != dec.ground_size() {
        return Err(Error::InvalidParameter("point does not match decomposition".into()));
    }
    if !p.all_nonzero() {
        return Err(Error::InvalidParameter(
            "orbit relations need a point with all coordinates nonzero".into(),
        ));
    }
    let strings = block_strings(dec);
    let mut rep: BTreeMap<BlockString, MultiIndex> = BTreeMap::new();
    let mut out = Vec::new();
    for a in &strings {
        let fiber = fiber_of_string(a, dec)?;
        let ua = fiber[0];
        rep.insert(*a, ua);
        for u in &fiber[1..] {
            let mut f = Polynomial::from_terms([
                (p.get(&ua)?.clone(), Monomial::var(zvar(*u))),
                (-p.get(u)?.clone(), Monomial::var(zvar(ua))),
            ]);
            if monic {
                f = f.scale(&(Coeff::one() / p.get(&ua)?.clone()));
            }
            out.push(f);
        }
    }
    for (i, a) in strings.iter().enumerate() {
        for b in &strings[i..] {
            if SortedPair::try_new(a, b).is_some() {
                continue;
            }
            let w = SortedPair::sort_of(a.letters(), b.letters())?;
            let (ua, ub) = (rep[a], rep[b]);
            let (uo, ue) = (rep[w.odd()], rep[w.even()]);
            let lead_coeff = p.get(&uo)?.clone() * p.get(&ue)?.clone();
            let mut f = Polynomial::from_terms([
                (
                    lead_coeff.clone(),
                    Monomial::var(zvar(ua)).mul(&Monomial::var(zvar(ub))),
                ),
                (
                    -(p.get(&ua)?.clone() * p.get(&ub)?.clone()),
                    Monomial::var(zvar(uo)).mul(&Monomial::var(zvar(ue))),
                ),
            ]);
            if f.is_zero() {
                continue;
            }
            if monic {
                f = f.scale(&(Coeff::one() / lead_coeff));
            }
            out.push(f);
        }
    }
    Ok(out)
}

/// A point of the product of the fiber and pair projective spaces; present
/// blocks may not be identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiProjPoint {
    y_blocks: BTreeMap<BlockString, BTreeMap<MultiIndex, Coeff>>,
    w_blocks: BTreeMap<SortedPair, BTreeMap<PairIndex, Coeff>>,
}

impl MultiProjPoint {
    pub fn new(
        y_blocks: BTreeMap<BlockString, BTreeMap<MultiIndex, Coeff>>,
        w_blocks: BTreeMap<SortedPair, BTreeMap<PairIndex, Coeff>>,
    ) -> Result<Self> {
        for (a, v) in &y_blocks {
            if v.values().all(|c| c.is_zero()) {
                return Err(Error::InvalidParameter(format!(
                    "fiber block {a:?} is identically zero"
                )));
            }
        }
        for (w, v) in &w_blocks {
            if v.values().all(|c| c.is_zero()) {
                return Err(Error::InvalidParameter(format!(
                    "pair block {w:?} is identically zero"
                )));
            }
        }
        Ok(MultiProjPoint { y_blocks, w_blocks })
    }

    /// All blocks of the decomposition filled with ones.
    pub fn all_ones(dec: &Decomposition) -> Result<Self> {
        let mut y_blocks = BTreeMap::new();
        for a in block_strings(dec) {
            y_blocks.insert(
                a,
                fiber_of_string(&a, dec)?
                    .into_iter()
                    .map(|u| (u, Coeff::one()))
                    .collect(),
            );
        }
        let mut w_blocks = BTreeMap::new();
        for w in sorted_pairs(dec) {
            w_blocks.insert(
                w,
                lambda_w(&w, dec)?
                    .into_iter()
                    .map(|p| (p, Coeff::one()))
                    .collect(),
            );
        }
        MultiProjPoint::new(y_blocks, w_blocks)
    }

    pub fn set_w_block(&mut self, w: SortedPair, coords: BTreeMap<PairIndex, Coeff>) -> Result<()> {
        if coords.values().all(|c| c.is_zero()) {
            return Err(Error::InvalidParameter("pair block identically zero".into()));
        }
        self.w_blocks.insert(w, coords);
        Ok(())
    }

    pub fn set_y_block(
        &mut self,
        a: BlockString,
        coords: BTreeMap<MultiIndex, Coeff>,
    ) -> Result<()> {
        if coords.values().all(|c| c.is_zero()) {
            return Err(Error::InvalidParameter("fiber block identically zero".into()));
        }
        self.y_blocks.insert(a, coords);
        Ok(())
    }

    pub fn y_block(&self, a: &BlockString) -> Option<&BTreeMap<MultiIndex, Coeff>> {
        self.y_blocks.get(a)
    }

    pub fn w_block(&self, w: &SortedPair) -> Option<&BTreeMap<PairIndex, Coeff>> {
        self.w_blocks.get(w)
    }

    pub fn y_blocks(&self) -> &BTreeMap<BlockString, BTreeMap<MultiIndex, Coeff>> {
        &self.y_blocks
    }

    pub fn w_blocks(&self) -> &BTreeMap<SortedPair, BTreeMap<PairIndex, Coeff>> {
        &self.w_blocks
    }
}

/// The fiber ideal of a point of the block-product space: the linear
/// relations `y_v z_u - y_u z_v` over every fiber and the quadratic
/// relations `x_{(u',v')} z_u z_v - x_{(u,v)} z_{u'} z_{v'}` over every pair
/// block. Relations with both coefficients zero are dropped; a single zero
/// coefficient leaves a monomial.
pub fn fiber_ideal(y: &MultiProjPoint, dec: &Decomposition) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for a in block_strings(dec) {
        let block = y
            .y_block(&a)
            .ok_or_else(|| Error::InvalidParameter(format!("missing fiber block {a:?}")))?;
        let fiber = fiber_of_string(&a, dec)?;
        for (i, u) in fiber.iter().enumerate() {
            for v in &fiber[i + 1..] {
                let yu = block
                    .get(u)
                    .ok_or_else(|| Error::InvalidParameter(format!("missing coordinate {u:?}")))?;
                let yv = block
                    .get(v)
                    .ok_or_else(|| Error::InvalidParameter(format!("missing coordinate {v:?}")))?;
                let f = Polynomial::from_terms([
                    (yv.clone(), Monomial::var(zvar(*u))),
                    (-yu.clone(), Monomial::var(zvar(*v))),
                ]);
                if !f.is_zero() {
                    out.push(f);
                }
            }
        }
    }
    for w in sorted_pairs(dec) {
        let block = y
            .w_block(&w)
            .ok_or_else(|| Error::InvalidParameter(format!("missing pair block {w:?}")))?;
        let pairs = lambda_w(&w, dec)?;
        for (i, a) in pairs.iter().enumerate() {
            for b in &pairs[i + 1..] {
                let xa = block
                    .get(a)
                    .ok_or_else(|| Error::InvalidParameter(format!("missing coordinate {a:?}")))?;
                let xb = block
                    .get(b)
                    .ok_or_else(|| Error::InvalidParameter(format!("missing coordinate {b:?}")))?;
                let f = Polynomial::from_terms([
                    (
                        xb.clone(),
                        Monomial::var(zvar(*a.u())).mul(&Monomial::var(zvar(*a.v()))),
                    ),
                    (
                        -xa.clone(),
                        Monomial::var(zvar(*b.u())).mul(&Monomial::var(zvar(*b.v()))),
                    ),
                ]);
                if !f.is_zero() {
                    out.push(f);
                }
            }
        }
    }
    Ok(out)
}

/// The fiber and pair coordinate ideals: `J_a = ⟨p_u | u in the fiber of
/// a⟩` and `J_w = ⟨p_u p_v | (u,v) in Λ_w⟩`.
pub struct JIdeals {
    pub fiber_parts: Vec<(BlockString, Vec<Monomial>)>,
    pub pair_parts: Vec<(SortedPair, Vec<Monomial>)>,
}

pub fn j_ideals(dec: &Decomposition) -> Result<JIdeals> {
    let mut fiber_parts = Vec::new();
    for a in block_strings(dec) {
        let gens = fiber_of_string(&a, dec)?
            .into_iter()
            .map(|u| Monomial::var(pvar(u)))
            .collect();
        fiber_parts.push((a, gens));
    }
    let mut pair_parts = Vec::new();
    for w in sorted_pairs(dec) {
        let gens = lambda_w(&w, dec)?
            .into_iter()
            .map(|p| Monomial::var(pvar(*p.u())).mul(&Monomial::var(pvar(*p.v()))))
            .collect();
        pair_parts.push((w, gens));
    }
    Ok(JIdeals { fiber_parts, pair_parts })
}

/// Generators of the product of all fiber and pair coordinate ideals: one
/// choice of generator per factor, multiplied out, deduplicated.
pub fn j_product(dec: &Decomposition) -> Result<Vec<Monomial>> {
    let ideals = j_ideals(dec)?;
    let mut factors: Vec<&Vec<Monomial>> = Vec::new();
    for (_, gens) in &ideals.fiber_parts {
        factors.push(gens);
    }
    for (_, gens) in &ideals.pair_parts {
        factors.push(gens);
    }
    let mut acc: BTreeSet<Monomial> = BTreeSet::new();
    acc.insert(Monomial::one());
    for gens in factors {
        let mut next = BTreeSet::new();
        for m in &acc {
            for g in gens {
                next.insert(m.mul(g));
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().collect())
}

/// The cubic binomials on pair coordinates for 2-planes, one per index
/// subset `h < i < j < k < l`. Empty below n = 5.
pub fn cubic_binomials(n: u8) -> Result<Vec<Binomial>> {
    if n < 5 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for q in multi_indices(5, n)? {
        let e = q.entries();
        let (h, i, j, k, l) = (e[0], e[1], e[2], e[3], e[4]);
        let mut sign = 1i8;
        let mut plus = Monomial::one();
        for (u, v) in [([h, i], [j, k]), ([h, k], [j, l]), ([h, l], [i, j])] {
            let (s, m) = x_term(&u, &v, n)?;
            sign *= s;
            plus = plus.mul(&m);
        }
        let mut minus = Monomial::one();
        for (u, v) in [([h, k], [i, j]), ([h, l], [j, k]), ([h, i], [j, l])] {
            let (s, m) = x_term(&u, &v, n)?;
            sign *= s;
            minus = minus.mul(&m);
        }
        debug_assert_eq!(sign, 1, "cubic binomial indices must canonicalize with sign +1");
        out.push(Binomial::new(plus, minus)?);
    }
    Ok(out)
}

/// Canonicalizes `x_(u,v)` with possibly unsorted entry tuples: sorts both
/// tuples, carrying the product of the permutation signs, so that the
/// pair-to-product substitution commutes with the Plücker sign rules.
fn x_term(u_raw: &[u8], v_raw: &[u8], m: u8) -> Result<(i8, Monomial)> {
    let SignedIndex::Signed { index: u, sign: su } = canonical_plucker(u_raw, m)? else {
        return Err(Error::InvalidParameter(format!(
            "repeated entries in pair half {u_raw:?}"
        )));
    };
    let SignedIndex::Signed { index: v, sign: sv } = canonical_plucker(v_raw, m)? else {
        return Err(Error::InvalidParameter(format!(
            "repeated entries in pair half {v_raw:?}"
        )));
    };
    Ok((su * sv, Monomial::var(xvar(PairIndex::new(u, v)))))
}

fn p_term(u_raw: &[u8], m: u8) -> Result<(i8, Monomial)> {
    match canonical_plucker(u_raw, m)? {
        SignedIndex::Zero => Err(Error::InvalidParameter(format!(
            "repeated entries in Plücker index {u_raw:?}"
        ))),
        SignedIndex::Signed { index, sign } => Ok((sign, Monomial::var(pvar(index)))),
    }
}

/// Rewrites a monomial in abstract block variables to its sorted form by
/// straightening unsorted factor pairs until none remain.
pub fn straighten(m: &Monomial, dec: &Decomposition) -> Result<Monomial> {
    let mut factors: Vec<BlockString> = Vec::new();
    for (v, e) in m.iter() {
        let VarId::Xa(a) = v else {
            return Err(Error::InvalidParameter(format!(
                "straighten expects block variables, found {v:?}"
            )));
        };
        crate::index::composition_of_string(a, dec)?;
        for _ in 0..*e {
            factors.push(*a);
        }
    }
    for _ in 0..100_000 {
        let mut rewritten = false;
        'scan: for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if SortedPair::try_new(&factors[i], &factors[j]).is_none() {
                    let w = SortedPair::sort_of(factors[i].letters(), factors[j].letters())?;
                    factors[i] = *w.odd();
                    factors[j] = *w.even();
                    rewritten = true;
                    break 'scan;
                }
            }
        }
        if !rewritten {
            factors.sort_unstable();
            let mut pairs: Vec<(VarId, u32)> = Vec::new();
            for a in factors {
                pairs.push((xavar(a), 1));
            }
            return Ok(Monomial::from_pairs(&pairs));
        }
    }
    Err(Error::ResourceExceeded("straightening did not terminate".into()))
}

/// Whether a monomial in abstract block variables is sorted: its factor
/// multiset equals the round-robin redistribution of its sorted letters,
/// which is the only candidate for a fully sorted chain expression.
pub fn is_sorted_monomial(m: &Monomial, dec: &Decomposition) -> Result<bool> {
    let mut factors: Vec<BlockString> = Vec::new();
    for (v, e) in m.iter() {
        let VarId::Xa(a) = v else {
            return Err(Error::InvalidParameter(format!(
                "expected block variables, found {v:?}"
            )));
        };
        crate::index::composition_of_string(a, dec)?;
        for _ in 0..*e {
            factors.push(*a);
        }
    }
    if factors.len() <= 1 {
        return Ok(true);
    }
    let k = factors.len();
    let mut letters: Vec<u8> = factors.iter().flat_map(|a| a.letters().to_vec()).collect();
    letters.sort_unstable();
    let mut redistributed: Vec<Vec<u8>> = vec![Vec::new(); k];
    for (pos, &l) in letters.iter().enumerate() {
        redistributed[pos % k].push(l);
    }
    let mut canonical: Vec<BlockString> = redistributed
        .into_iter()
        .map(|ls| BlockString::new(&ls))
        .collect::<Result<_>>()?;
    canonical.sort_unstable();
    factors.sort_unstable();
    Ok(factors == canonical)
}

/// Structural report on a binomial over Plücker and pair variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RbReport {
    /// In every pair block it touches, each side has degree at most one.
    pub rho_linear: bool,
    /// The pair-to-product image of each side is squarefree.
    pub phi_square_free: bool,
    /// Some pair-coordinate binomial rewrites one side into the other.
    pub wp_reducible: bool,
    /// The two sides share a variable factor.
    pub has_common_factor: bool,
}

pub fn check_rb_properties(b: &Binomial) -> RbReport {
    let rho_linear = [b.plus(), b.minus()].iter().all(|m| {
        let mut per_block: BTreeMap<SortedPair, u32> = BTreeMap::new();
        for (v, e) in m.iter() {
            if let VarId::X(p) = v {
                *per_block.entry(p.key()).or_insert(0) += e;
            }
        }
        per_block.values().all(|&d| d <= 1)
    });
    let phi_square_free = [b.plus(), b.minus()]
        .iter()
        .all(|m| phi_image_monomial(m).is_squarefree());
    let wp_reducible =
        has_wp_pattern(b.plus(), b.minus()) || has_wp_pattern(b.minus(), b.plus());
    let has_common_factor = !b.plus().gcd(b.minus()).is_one();
    RbReport { rho_linear, phi_square_free, wp_reducible, has_common_factor }
}

/// The image of a monomial under `x_(u,v) -> p_u p_v`, identity elsewhere.
pub fn phi_image_monomial(m: &Monomial) -> Monomial {
    let mut out = Monomial::one();
    for (v, e) in m.iter() {
        match v {
            VarId::X(p) => {
                let factor = Monomial::var(pvar(*p.u())).mul(&Monomial::var(pvar(*p.v())));
                out = out.mul(&factor.pow(*e));
            }
            _ => out = out.mul(&Monomial::var(*v).pow(*e)),
        }
    }
    out
}

/// Divisibility pattern of pair-coordinate reducibility: some binomial
/// `p_{u'} p_{v'} x_{(u,v)} - p_u p_v x_{(u',v')}` with both pairs in one
/// block has its full leading product dividing `m` while the opposite pair
/// variable divides `m_prime`.
fn has_wp_pattern(m: &Monomial, m_prime: &Monomial) -> bool {
    let xs_m: Vec<PairIndex> = m
        .variables()
        .filter_map(|v| match v {
            VarId::X(p) => Some(*p),
            _ => None,
        })
        .collect();
    let xs_mp: Vec<PairIndex> = m_prime
        .variables()
        .filter_map(|v| match v {
            VarId::X(p) => Some(*p),
            _ => None,
        })
        .collect();
    for a in &xs_m {
        for b in &xs_mp {
            if a == b || a.key() != b.key() {
                continue;
            }
            let pb = Monomial::var(pvar(*b.u())).mul(&Monomial::var(pvar(*b.v())));
            if pb.mul(&Monomial::var(xvar(*a))).divides(m) {
                return true;
            }
        }
    }
    false
}

/// Named example families, instantiated at caller-chosen letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleFamily {
    Rk0_0_3Prime,
    Rk0_0_3,
    Rk0_0_4,
    Rk0_1_4,
    Rk1_1,
    Rk0_1,
    OddVrPl,
    MtVrPl,
    MtVrPl2,
    MtVrPl3,
    MtVrPl3Prime,
    TheVr,
    PReducible,
}

impl ExampleFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ExampleFamily::Rk0_0_3Prime => "rk0-0-3p",
            ExampleFamily::Rk0_0_3 => "rk0-0-3",
            ExampleFamily::Rk0_0_4 => "rk0-0-4",
            ExampleFamily::Rk0_1_4 => "rk0-1-4",
            ExampleFamily::Rk1_1 => "rk1-1",
            ExampleFamily::Rk0_1 => "rk0-1",
            ExampleFamily::OddVrPl => "odd-vr-pl",
            ExampleFamily::MtVrPl => "mt-vr-pl",
            ExampleFamily::MtVrPl2 => "mt-vr-pl-2",
            ExampleFamily::MtVrPl3 => "mt-vr-pl-3",
            ExampleFamily::MtVrPl3Prime => "mt-vr-pl-3p",
            ExampleFamily::TheVr => "the-vr",
            ExampleFamily::PReducible => "p-reducible",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        ExampleFamily::all()
            .iter()
            .find(|f| f.name() == name)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown example family {name}")))
    }

    pub fn all() -> &'static [ExampleFamily] {
        &[
            ExampleFamily::Rk0_0_3Prime,
            ExampleFamily::Rk0_0_3,
            ExampleFamily::Rk0_0_4,
            ExampleFamily::Rk0_1_4,
            ExampleFamily::Rk1_1,
            ExampleFamily::Rk0_1,
            ExampleFamily::OddVrPl,
            ExampleFamily::MtVrPl,
            ExampleFamily::MtVrPl2,
            ExampleFamily::MtVrPl3,
            ExampleFamily::MtVrPl3Prime,
            ExampleFamily::TheVr,
            ExampleFamily::PReducible,
        ]
    }

    /// Letters the family expects beyond the fixed 1, 2, 3.
    pub fn letters(&self) -> &'static [&'static str] {
        match self {
            ExampleFamily::Rk0_0_3Prime => &["b", "c"],
            ExampleFamily::Rk0_0_3 | ExampleFamily::Rk0_0_4 | ExampleFamily::Rk0_1_4 => {
                &["a", "b", "c"]
            }
            ExampleFamily::Rk1_1 => &["a", "b", "c", "abar", "bbar", "cbar"],
            ExampleFamily::Rk0_1 => &["a", "ap", "b", "c", "abar", "bbar", "cbar"],
            ExampleFamily::OddVrPl => &["a", "b", "c"],
            ExampleFamily::MtVrPl => &["a", "b", "1p", "bp"],
            ExampleFamily::MtVrPl2 => &["a", "b", "1p", "2p", "bp"],
            ExampleFamily::MtVrPl3 | ExampleFamily::MtVrPl3Prime | ExampleFamily::TheVr => {
                &["a", "b", "c", "ap", "bp", "cp"]
            }
            ExampleFamily::PReducible => &["a", "b", "c"],
        }
    }

    /// Smallest index range the instantiated family fits into.
    pub fn min_n(&self) -> u8 {
        3 + self.letters().len() as u8
    }

    fn rows(&self) -> &'static [(i8, &'static str)] {
        match self {
            ExampleFamily::Rk0_0_3Prime => &[
                (1, "x(12b|13c) x(23b|12c) x(13b|23c)"),
                (-1, "x(13b|12c) x(12b|23c) x(23b|13c)"),
            ],
            ExampleFamily::Rk0_0_3 => &[
                (1, "x(12a|13b) x(13a|12c) x(12b|13c)"),
                (-1, "x(13a|12b) x(12a|13c) x(13b|12c)"),
            ],
            ExampleFamily::Rk0_0_4 => &[
                (1, "x(12a|13b) x(13a|12c) x(12b|23c) x(23b|13c)"),
                (-1, "x(13a|12b) x(12a|13c) x(23b|12c) x(13b|23c)"),
            ],
            ExampleFamily::Rk0_1_4 => &[
                (1, "x(123|3bc) x(13a|2bc) x(12b|23c) x(12a|13b)"),
                (-1, "x(13b|23c) x(12a|3bc) x(123|2bc) x(13a|12b)"),
            ],
            ExampleFamily::Rk1_1 => &[
                (1, "x(12a|3bc) x(13a|2BC) x(13A|2bc) x(12A|3BC)"),
                (-1, "x(13a|2bc) x(12a|3BC) x(12A|3bc) x(13A|2BC)"),
            ],
            ExampleFamily::Rk0_1 => &[
                (1, "x(12a|13a') x(13a|2bc) x(12a'|3BC) x(12A|3bc) x(13A|2BC)"),
                (-1, "x(13a|12a') x(12a|3bc) x(13a'|2BC) x(13A|2bc) x(12A|3BC)"),
            ],
            ExampleFamily::OddVrPl => &[
                (1, "p(1ab) p(12c) p(13c) x(123|1ac)"),
                (-1, "p(1ac) p(12c) p(13b) x(12a|13c)"),
                (1, "p(1ac) p(12b) p(13c) x(13a|12c)"),
            ],
            ExampleFamily::MtVrPl => &[
                (1, "p(1ab) p(1'2a) p(1'2b') x(1'ab|123) x(1'3a|12b')"),
                (-1, "p(12a) p(1'ab) p(1'2b') x(1'2a|13b) x(1'3a|12b')"),
                (1, "p(1'ab) p(1'2a) p(12b') x(1'3a|12b) x(13a|1'2b')"),
            ],
            ExampleFamily::MtVrPl2 => &[
                (1, "p(1ab) p(1'2a) p(1'2'b') x(1'ab|123) x(1'3a|12'b')"),
                (-1, "p(12a) p(1'ab) p(1'2'b') x(1'2a|13b) x(1'3a|12'b')"),
                (1, "p(1'ab) p(1'2a) p(12'b') x(1'3a|12b) x(13a|1'2'b')"),
            ],
            ExampleFamily::MtVrPl3 => &[
                (1, "p(abc) x(a'bc|123) x(12a'|3b'c') p(13a') p(2b'c') p(23a')"),
                (-1, "p(12a) x(12a'|3bc) x(13a'|2b'c') p(23a') p(a'bc) p(3b'c')"),
                (1, "p(13a) x(13a'|2bc) x(12a'|3b'c') p(23a') p(a'bc) p(2b'c')"),
                (-1, "p(23a) x(23a'|1bc) x(12a'|3b'c') p(13a') p(a'bc) p(2b'c')"),
            ],
            ExampleFamily::MtVrPl3Prime => &[
                (1, "p(abc) x(a'bc|123) x(12a'|3b'c') p(13a') p(2b'c') p(23a')"),
                (-1, "p(12a) x(12a'|3bc) x(13a'|2b'c') p(23a') p(a'bc) p(3b'c')"),
                (1, "p(13a) x(13a'|2bc) x(12a'|3b'c') p(23a') p(a'bc) p(2b'c')"),
                (-1, "p(23a) x(23a'|1bc) x(13a'|2b'c') p(12a') p(a'bc) p(3b'c')"),
            ],
            ExampleFamily::TheVr => &[
                (1, "x(abc|23a') x(13a|2b'c') x(a'bc|123) x(12a'|3b'c') x(23a|13a')"),
                (-1, "x(23a|a'bc) x(12a|3b'c') x(12a'|3bc) x(13a'|2b'c') x(13a|23a')"),
                (1, "x(23a|a'bc) x(13a|2b'c') x(13a'|2bc) x(12a'|3b'c') x(13a|23a')"),
                (-1, "x(23a|a'bc) x(13a|2b'c') x(23a'|1bc) x(12a'|3b'c') x(23a|13a')"),
            ],
            ExampleFamily::PReducible => &[
                (1, "p(123) p(13a) p(2bc) x(13b|23c) x(12a|3bc)"),
                (-1, "p(13b) p(23c) p(12a) x(123|3bc) x(13a|2bc)"),
            ],
        }
    }

    /// Multiplier and relation rows when the image is a multiple of a
    /// Plücker relation.
    fn target(&self) -> Option<(&'static str, &'static [(i8, &'static str)])> {
        const SHORT: &[(i8, &str)] = &[(1, "123|1ab"), (-1, "12a|13b"), (1, "13a|12b")];
        const LONG: &[(i8, &str)] =
            &[(1, "123|abc"), (-1, "12a|3bc"), (1, "13a|2bc"), (-1, "23a|1bc")];
        match self {
            ExampleFamily::OddVrPl => Some(("p(1ac) p(12c) p(13c)", SHORT)),
            ExampleFamily::MtVrPl => Some(("p(1'ab) p(1'2a) p(1'2b') p(1'3a) p(12b')", SHORT)),
            ExampleFamily::MtVrPl2 => {
                Some(("p(1'ab) p(1'2a) p(1'2'b') p(1'3a) p(12'b')", SHORT))
            }
            ExampleFamily::MtVrPl3 | ExampleFamily::MtVrPl3Prime => {
                Some(("p(12a') p(13a') p(23a') p(2b'c') p(3b'c') p(a'bc)", LONG))
            }
            ExampleFamily::TheVr => Some((
                "p(12a') p(13a') p(23a') p(2b'c') p(3b'c') p(a'bc) p(13a) p(23a)",
                LONG,
            )),
            _ => None,
        }
    }

    /// Map whose multi-homogeneous kernel the instantiated polynomial
    /// belongs to.
    pub fn map_kind(&self) -> MapKind {
        match self {
            ExampleFamily::OddVrPl
            | ExampleFamily::MtVrPl
            | ExampleFamily::MtVrPl2
            | ExampleFamily::MtVrPl3
            | ExampleFamily::MtVrPl3Prime => MapKind::PhiGr,
            ExampleFamily::TheVr => MapKind::PhiGrRho,
            _ => MapKind::Phi,
        }
    }
}

/// An instantiated example: the polynomial, its term decomposition, and,
/// when the image is a multiple of a Plücker relation, that relation with
/// its multiplier.
#[derive(Clone, Debug)]
pub struct PaperExample {
    pub family: ExampleFamily,
    pub d: u8,
    pub n: u8,
    pub poly: Polynomial,
    /// Signed parts; when a Plücker target is present the s-th part maps to
    /// multiplier times the s-th relation term.
    pub parts: Vec<(i8, Monomial)>,
    pub plucker_target: Option<PluckerTarget>,
    pub map_kind: MapKind,
}

#[derive(Clone, Debug)]
pub struct PluckerTarget {
    /// Signed monomial h with image(f) = h · F.
    pub multiplier: (i8, Monomial),
    pub relation: PluckerRelation,
}

struct LetterCtx {
    n: u8,
    values: BTreeMap<&'static str, u8>,
}

impl LetterCtx {
    fn new(family: ExampleFamily, params: &BTreeMap<String, u8>, n: u8) -> Result<Self> {
        let mut values: BTreeMap<&'static str, u8> = BTreeMap::new();
        let mut used: BTreeSet<u8> = [1, 2, 3].into_iter().collect();
        if n < 3 {
            return Err(Error::InvalidParameter("examples need n >= 3".into()));
        }
        for &key in family.letters() {
            let v = *params.get(key).ok_or_else(|| {
                Error::InvalidParameter(format!("example {} needs letter {key}", family.name()))
            })?;
            if v == 0 || v > n {
                return Err(Error::InvalidParameter(format!(
                    "letter {key} = {v} outside [1..{n}]"
                )));
            }
            if !used.insert(v) {
                return Err(Error::InvalidParameter(format!(
                    "letter {key} = {v} collides with another letter or with 1,2,3"
                )));
            }
            values.insert(key, v);
        }
        Ok(LetterCtx { n, values })
    }

    fn value(&self, key: &str) -> Result<u8> {
        match key {
            "1" => Ok(1),
            "2" => Ok(2),
            "3" => Ok(3),
            k => self
                .values
                .get(k)
                .copied()
                .ok_or_else(|| Error::InvalidParameter(format!("letter {k} not assigned"))),
        }
    }

    /// Parses a letter tuple like "1'2a" or "3BC": digits and lowercase
    /// letters, an apostrophe marks a primed letter, capitals are barred.
    fn tuple(&self, s: &str) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let primed = i + 1 < chars.len() && chars[i + 1] == '\'';
            let key: String = match c {
                '1' | '2' | '3' | 'a' | 'b' | 'c' => {
                    if primed {
                        format!("{c}p")
                    } else {
                        c.to_string()
                    }
                }
                'A' => "abar".into(),
                'B' => "bbar".into(),
                'C' => "cbar".into(),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown letter '{other}' in tuple {s}"
                    )))
                }
            };
            out.push(self.value(&key)?);
            i += if primed { 2 } else { 1 };
        }
        Ok(out)
    }

    /// Parses a factor list like "p(1ab) x(123|1ac)" into a signed monomial,
    /// canonicalizing every index tuple.
    fn monomial(&self, spec: &str) -> Result<(i8, Monomial)> {
        let mut sign = 1i8;
        let mut m = Monomial::one();
        for factor in spec.split_whitespace() {
            let (kind, body) = factor.split_at(1);
            let body = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("malformed factor {factor}"))
                })?;
            match kind {
                "p" => {
                    let (s, pm) = p_term(&self.tuple(body)?, self.n)?;
                    sign *= s;
                    m = m.mul(&pm);
                }
                "x" => {
                    let (u_raw, v_raw) = body.split_once('|').ok_or_else(|| {
                        Error::InvalidParameter(format!("pair factor {factor} needs two halves"))
                    })?;
                    let (s, xm) = x_term(&self.tuple(u_raw)?, &self.tuple(v_raw)?, self.n)?;
                    sign *= s;
                    m = m.mul(&xm);
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown factor kind {other}"
                    )))
                }
            }
        }
        Ok((sign, m))
    }

    fn relation(&self, rows: &[(i8, &str)]) -> Result<PluckerRelation> {
        let mut terms = Vec::new();
        for (sign, row) in rows {
            let (u_raw, v_raw) = row
                .split_once('|')
                .ok_or_else(|| Error::InvalidParameter(format!("malformed relation row {row}")))?;
            let SignedIndex::Signed { index: u, sign: su } =
                canonical_plucker(&self.tuple(u_raw)?, self.n)?
            else {
                return Err(Error::InvalidParameter("repeated index in relation".into()));
            };
            let SignedIndex::Signed { index: v, sign: sv } =
                canonical_plucker(&self.tuple(v_raw)?, self.n)?
            else {
                return Err(Error::InvalidParameter("repeated index in relation".into()));
            };
            terms.push((sign * su * sv, PairIndex::new(u, v)));
        }
        PluckerRelation::from_terms(terms)
    }
}

/// Instantiates a named example family at the given letter assignment.
/// All families live in the 3-plane setting.
pub fn paper_example(
    family: ExampleFamily,
    params: &BTreeMap<String, u8>,
    n: u8,
) -> Result<PaperExample> {
    let ctx = LetterCtx::new(family, params, n)?;
    let mut parts = Vec::new();
    for (sign, spec) in family.rows() {
        let (s, m) = ctx.monomial(spec)?;
        parts.push((sign * s, m));
    }
    let plucker_target = match family.target() {
        None => None,
        Some((h_spec, rel_rows)) => {
            let multiplier = ctx.monomial(h_spec)?;
            let relation = ctx.relation(rel_rows)?;
            Some(PluckerTarget { multiplier, relation })
        }
    };
    let poly = Polynomial::from_terms(
        parts
            .iter()
            .map(|(s, m)| (coeff(*s as i64), m.clone())),
    );
    Ok(PaperExample {
        family,
        d: 3,
        n,
        poly,
        parts,
        plucker_target,
        map_kind: family.map_kind(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn mi(e: &[u8]) -> MultiIndex {
        MultiIndex::new(e).unwrap()
    }

    fn bs(l: &[u8]) -> BlockString {
        BlockString::new(l).unwrap()
    }

    fn pm(e: &[u8]) -> Monomial {
        Monomial::var(pvar(mi(e)))
    }

    fn phi(f: &Polynomial) -> Polynomial {
        f.substitute(&|v: &VarId| match v {
            VarId::X(p) => Some(Polynomial::from_term(
                Coeff::one(),
                Monomial::var(pvar(*p.u())).mul(&Monomial::var(pvar(*p.v()))),
            )),
            _ => None,
        })
    }

    #[test]
    fn plucker_2_4_is_the_three_term_relation() {
        let rels = plucker_relations(2, 4).unwrap();
        assert_eq!(rels.len(), 1);
        let f = rels[0].as_polynomial();
        let want = Polynomial::from_terms([
            (coeff(1), pm(&[1, 2]).mul(&pm(&[3, 4]))),
            (coeff(-1), pm(&[1, 3]).mul(&pm(&[2, 4]))),
            (coeff(1), pm(&[1, 4]).mul(&pm(&[2, 3]))),
        ]);
        assert_eq!(f, want);
    }

    #[test]
    fn plucker_2_5_has_five_relations_keyed_by_lambda_sort() {
        let rels = plucker_relations(2, 5).unwrap();
        assert_eq!(rels.len(), 5);
        let keys: BTreeSet<SortedPair> = rels.iter().map(|r| *r.key()).collect();
        let ls: BTreeSet<SortedPair> =
            crate::index::lambda_sort(2, 5).unwrap().into_iter().collect();
        assert_eq!(keys, ls);
    }

    #[test]
    fn plucker_relations_vanish_on_grassmannian_points() {
        let mut rng = StdRng::seed_from_u64(42);
        for (d, n) in [(2u8, 4u8), (2, 5), (3, 6)] {
            let rels = plucker_relations(d, n).unwrap();
            for _ in 0..50 {
                let p = RationalPoint::random_grassmannian(d, n, &mut rng).unwrap();
                for r in &rels {
                    assert!(
                        r.evaluate(&p).unwrap().is_zero(),
                        "{r:?} nonzero at a minor point"
                    );
                }
            }
        }
    }

    #[test]
    fn linearize_matches_terms() {
        let rels = plucker_relations(2, 4).unwrap();
        let l = rels[0].linearize();
        assert_eq!(l.num_terms(), rels[0].terms().len());
        let want = Polynomial::from_terms([
            (coeff(1), Monomial::var(xvar(PairIndex::new(mi(&[1, 2]), mi(&[3, 4]))))),
            (coeff(-1), Monomial::var(xvar(PairIndex::new(mi(&[1, 3]), mi(&[2, 4]))))),
            (coeff(1), Monomial::var(xvar(PairIndex::new(mi(&[1, 4]), mi(&[2, 3]))))),
        ]);
        assert_eq!(l, want);
    }

    #[test]
    fn phi_of_linearization_recovers_the_relation() {
        for (d, n) in [(2u8, 4u8), (2, 5)] {
            for r in plucker_relations(d, n).unwrap() {
                assert_eq!(phi(&r.linearize()), r.as_polynomial());
            }
        }
    }

    #[test]
    fn wp_binomials_count_and_kernel_membership() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let w = SortedPair::try_new(&bs(&[1, 3]), &bs(&[2, 4])).unwrap();
        let bins = wp_binomials(&w, &dec).unwrap();
        assert_eq!(bins.len(), 3);
        for b in &bins {
            assert!(phi(&b.as_polynomial()).is_zero());
        }
        let singleton = SortedPair::try_new(&bs(&[1, 2]), &bs(&[1, 3])).unwrap();
        assert!(wp_binomials(&singleton, &dec).unwrap().is_empty());
    }

    #[test]
    fn sorted_gb_small_cases() {
        let dec3 = Decomposition::unit_blocks(2, 3).unwrap();
        assert!(sorted_gb(&dec3).is_empty());
        let dec4 = Decomposition::unit_blocks(2, 4).unwrap();
        let gb = sorted_gb(&dec4);
        assert_eq!(gb.len(), 2);
        for b in &gb {
            assert_eq!(
                *b.minus(),
                Monomial::var(xavar(bs(&[1, 3]))).mul(&Monomial::var(xavar(bs(&[2, 4]))))
            );
        }
    }

    #[test]
    fn sorted_gb_matches_toric_kernel_of_the_lift() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let images: Vec<(VarId, Coeff, Monomial)> = block_strings(&dec)
            .into_iter()
            .map(|a| {
                let m = a
                    .letters()
                    .iter()
                    .fold(Monomial::one(), |acc, &l| acc.mul(&Monomial::var(VarId::T(l))));
                (xavar(a), Coeff::one(), m)
            })
            .collect();
        let kernel =
            crate::poly::kernel_of_monomial_map(&images, &crate::Budget::default()).unwrap();
        let order = crate::poly::groebner::default_order(&kernel);
        let gb = crate::poly::buchberger(&kernel, &order, &crate::Budget::default()).unwrap();
        for b in sorted_gb(&dec) {
            let (rem, _) = crate::poly::reduce(&b.as_polynomial(), &gb.generators, &order);
            assert!(rem.is_zero());
        }
        let sg: Vec<Polynomial> = sorted_gb(&dec).iter().map(|b| b.as_polynomial()).collect();
        let order2 = crate::poly::groebner::default_order(&sg);
        let gb2 = crate::poly::buchberger(&sg, &order2, &crate::Budget::default()).unwrap();
        for g in &kernel {
            let (rem, _) = crate::poly::reduce(g, &gb2.generators, &order2);
            assert!(rem.is_zero());
        }
    }

    #[test]
    fn orbit_gb_unit_blocks_all_ones() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let p = RationalPoint::all_ones(2, 4).unwrap();
        let gens = orbit_gb(&p, &dec, false).unwrap();
        assert_eq!(gens.len(), 2);
        let z = |e: &[u8]| Monomial::var(zvar(mi(e)));
        let want1 = Polynomial::from_terms([
            (coeff(1), z(&[1, 2]).mul(&z(&[3, 4]))),
            (coeff(-1), z(&[1, 3]).mul(&z(&[2, 4]))),
        ]);
        let want2 = Polynomial::from_terms([
            (coeff(1), z(&[1, 4]).mul(&z(&[2, 3]))),
            (coeff(-1), z(&[1, 3]).mul(&z(&[2, 4]))),
        ]);
        assert!(gens.contains(&want1));
        assert!(gens.contains(&want2));
    }

    #[test]
    fn orbit_gb_3_1_linear_part() {
        let dec = Decomposition::new(&[3, 1], 2).unwrap();
        let p = RationalPoint::all_ones(2, 4).unwrap();
        let gens = orbit_gb(&p, &dec, false).unwrap();
        let z = |e: &[u8]| Monomial::var(zvar(mi(e)));
        for (hi, lo) in [
            (&[1u8, 3][..], &[1u8, 2][..]),
            (&[2, 3], &[1, 2]),
            (&[2, 4], &[1, 4]),
            (&[3, 4], &[1, 4]),
        ] {
            let want = Polynomial::from_terms([(coeff(1), z(hi)), (coeff(-1), z(lo))]);
            assert!(gens.contains(&want), "missing linear relation {want:?}");
        }
    }

    #[test]
    fn orbit_gb_members_vanish_under_torus_substitution() {
        let mut rng = StdRng::seed_from_u64(5);
        for dec in [
            Decomposition::unit_blocks(2, 4).unwrap(),
            Decomposition::new(&[3, 1], 2).unwrap(),
            Decomposition::new(&[2, 2, 1], 2).unwrap(),
        ] {
            let p = RationalPoint::random_nonzero(&dec, &mut rng).unwrap();
            for g in orbit_gb(&p, &dec, false).unwrap() {
                let img = g.substitute(&|v: &VarId| match v {
                    VarId::Z(u) => {
                        let s = dec.string_of_index(u).unwrap();
                        let m = s
                            .letters()
                            .iter()
                            .fold(Monomial::one(), |acc, &l| acc.mul(&Monomial::var(VarId::T(l))));
                        Some(Polynomial::from_term(p.get(u).unwrap().clone(), m))
                    }
                    _ => None,
                });
                assert!(img.is_zero(), "orbit relation {g:?} not in the kernel");
            }
        }
    }

    #[test]
    fn orbit_gb_rejects_zero_coordinates() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let mut coords: BTreeMap<MultiIndex, Coeff> = multi_indices(2, 4)
            .unwrap()
            .into_iter()
            .map(|u| (u, Coeff::one()))
            .collect();
        coords.insert(mi(&[1, 2]), Coeff::zero());
        let p = RationalPoint::new(2, 4, coords).unwrap();
        assert!(orbit_gb(&p, &dec, false).is_err());
    }

    #[test]
    fn fiber_ideal_with_scaled_block() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let mut y = MultiProjPoint::all_ones(&dec).unwrap();
        let w = SortedPair::try_new(&bs(&[1, 3]), &bs(&[2, 4])).unwrap();
        y.set_w_block(
            w,
            [
                (PairIndex::new(mi(&[1, 2]), mi(&[3, 4])), coeff(1)),
                (PairIndex::new(mi(&[1, 3]), mi(&[2, 4])), coeff(2)),
                (PairIndex::new(mi(&[1, 4]), mi(&[2, 3])), coeff(1)),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let gens = fiber_ideal(&y, &dec).unwrap();
        let z = |e: &[u8]| Monomial::var(zvar(mi(e)));
        let want = Polynomial::from_terms([
            (coeff(2), z(&[1, 2]).mul(&z(&[3, 4]))),
            (coeff(-1), z(&[1, 3]).mul(&z(&[2, 4]))),
        ]);
        assert!(gens.contains(&want), "expected {want:?} among {gens:?}");
    }

    #[test]
    fn fiber_ideal_zero_coordinate_leaves_monomial() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let mut y = MultiProjPoint::all_ones(&dec).unwrap();
        let w = SortedPair::try_new(&bs(&[1, 3]), &bs(&[2, 4])).unwrap();
        y.set_w_block(
            w,
            [
                (PairIndex::new(mi(&[1, 2]), mi(&[3, 4])), coeff(0)),
                (PairIndex::new(mi(&[1, 3]), mi(&[2, 4])), coeff(1)),
                (PairIndex::new(mi(&[1, 4]), mi(&[2, 3])), coeff(1)),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let gens = fiber_ideal(&y, &dec).unwrap();
        let z = |e: &[u8]| Monomial::var(zvar(mi(e)));
        let monomial = Polynomial::from_term(coeff(1), z(&[1, 2]).mul(&z(&[3, 4])));
        assert!(gens.contains(&monomial));
    }

    #[test]
    fn j_ideals_examples() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let j = j_ideals(&dec).unwrap();
        let w = SortedPair::try_new(&bs(&[1, 3]), &bs(&[2, 4])).unwrap();
        let jw = &j.pair_parts.iter().find(|(k, _)| *k == w).unwrap().1;
        let want: BTreeSet<Monomial> = [
            pm(&[1, 2]).mul(&pm(&[3, 4])),
            pm(&[1, 3]).mul(&pm(&[2, 4])),
            pm(&[1, 4]).mul(&pm(&[2, 3])),
        ]
        .into_iter()
        .collect();
        assert_eq!(jw.iter().cloned().collect::<BTreeSet<_>>(), want);

        let dec31 = Decomposition::new(&[3, 1], 2).unwrap();
        let j31 = j_ideals(&dec31).unwrap();
        let j12 = &j31
            .fiber_parts
            .iter()
            .find(|(a, _)| *a == bs(&[1, 2]))
            .unwrap()
            .1;
        let want12: BTreeSet<Monomial> =
            [pm(&[1, 4]), pm(&[2, 4]), pm(&[3, 4])].into_iter().collect();
        assert_eq!(j12.iter().cloned().collect::<BTreeSet<_>>(), want12);
    }

    #[test]
    fn j_product_vanishes_at_degenerate_point() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let gens = j_product(&dec).unwrap();
        assert!(!gens.is_empty());
        let value = |v: &VarId| match v {
            VarId::P(u) if u.entries() == [1, 2] => Some(Coeff::one()),
            VarId::P(_) => Some(Coeff::zero()),
            _ => None,
        };
        for g in &gens {
            let f = Polynomial::from_term(Coeff::one(), g.clone());
            assert!(f.evaluate(&value).unwrap().is_zero());
        }
    }

    #[test]
    fn cubic_binomial_counts() {
        assert!(cubic_binomials(4).unwrap().is_empty());
        assert_eq!(cubic_binomials(5).unwrap().len(), 1);
        assert_eq!(cubic_binomials(6).unwrap().len(), 6);
    }

    #[test]
    fn cubic_binomials_in_pair_map_kernel() {
        for n in [5u8, 6] {
            for b in cubic_binomials(n).unwrap() {
                assert!(phi(&b.as_polynomial()).is_zero());
            }
        }
    }

    #[test]
    fn straighten_examples() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let m = Monomial::var(xavar(bs(&[1, 4]))).mul(&Monomial::var(xavar(bs(&[2, 3]))));
        let got = straighten(&m, &dec).unwrap();
        let want = Monomial::var(xavar(bs(&[1, 3]))).mul(&Monomial::var(xavar(bs(&[2, 4]))));
        assert_eq!(got, want);
        assert_eq!(straighten(&want, &dec).unwrap(), want);
        assert!(is_sorted_monomial(&want, &dec).unwrap());
        assert!(!is_sorted_monomial(&m, &dec).unwrap());
    }

    #[test]
    fn straighten_preserves_torus_image() {
        let dec = Decomposition::new(&[2, 2, 1], 2).unwrap();
        let strings = block_strings(&dec);
        let image = |m: &Monomial| {
            let mut out = Monomial::one();
            for (v, e) in m.iter() {
                if let VarId::Xa(a) = v {
                    for &l in a.letters() {
                        out = out.mul(&Monomial::var(VarId::T(l)).pow(*e));
                    }
                }
            }
            out
        };
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..50 {
            let k = rand::Rng::random_range(&mut rng, 2..5usize);
            let mut m = Monomial::one();
            for _ in 0..k {
                let a = strings[rand::Rng::random_range(&mut rng, 0..strings.len())];
                m = m.mul(&Monomial::var(xavar(a)));
            }
            let s = straighten(&m, &dec).unwrap();
            assert_eq!(image(&m), image(&s));
            assert!(is_sorted_monomial(&s, &dec).unwrap());
        }
    }

    #[test]
    fn rb_properties_of_wp_binomial() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let w = SortedPair::try_new(&bs(&[1, 3]), &bs(&[2, 4])).unwrap();
        let bins = wp_binomials(&w, &dec).unwrap();
        let report = check_rb_properties(&bins[0]);
        assert!(report.phi_square_free);
        assert!(report.rho_linear);
        assert!(!report.has_common_factor);
    }

    #[test]
    fn p_reducible_example_is_wp_reducible() {
        let params: BTreeMap<String, u8> =
            [("a".into(), 4u8), ("b".into(), 5), ("c".into(), 6)].into_iter().collect();
        let ex = paper_example(ExampleFamily::PReducible, &params, 6).unwrap();
        assert_eq!(ex.parts.len(), 2);
        let b = Binomial::new(ex.parts[0].1.clone(), ex.parts[1].1.clone()).unwrap();
        let report = check_rb_properties(&b);
        assert!(report.wp_reducible);
        assert!(phi(&ex.poly).is_zero());
    }

    #[test]
    fn example_letter_validation() {
        let mut params: BTreeMap<String, u8> = BTreeMap::new();
        params.insert("b".into(), 4);
        params.insert("c".into(), 4);
        assert!(paper_example(ExampleFamily::Rk0_0_3Prime, &params, 5).is_err());
        params.insert("c".into(), 2);
        assert!(paper_example(ExampleFamily::Rk0_0_3Prime, &params, 5).is_err());
        params.insert("c".into(), 5);
        assert!(paper_example(ExampleFamily::Rk0_0_3Prime, &params, 5).is_ok());
    }

    #[test]
    fn bq_examples_are_kernel_binomials() {
        let params: BTreeMap<String, u8> = [
            ("a".to_string(), 4u8),
            ("b".to_string(), 5),
            ("c".to_string(), 6),
            ("ap".to_string(), 7),
            ("abar".to_string(), 8),
            ("bbar".to_string(), 9),
            ("cbar".to_string(), 10),
        ]
        .into_iter()
        .collect();
        for family in [
            ExampleFamily::Rk0_0_3Prime,
            ExampleFamily::Rk0_0_3,
            ExampleFamily::Rk0_0_4,
            ExampleFamily::Rk0_1_4,
            ExampleFamily::Rk1_1,
            ExampleFamily::Rk0_1,
        ] {
            let ex = paper_example(family, &params, 10).unwrap();
            assert_eq!(ex.poly.num_terms(), 2, "{} should be a binomial", family.name());
            assert!(phi(&ex.poly).is_zero(), "{} does not map to zero", family.name());
        }
    }

    #[test]
    fn h_pl_examples_map_to_stated_multiple() {
        for family in [
            ExampleFamily::OddVrPl,
            ExampleFamily::MtVrPl,
            ExampleFamily::MtVrPl2,
            ExampleFamily::MtVrPl3,
            ExampleFamily::MtVrPl3Prime,
            ExampleFamily::TheVr,
        ] {
            let params: BTreeMap<String, u8> = family
                .letters()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.to_string(), 4 + i as u8))
                .collect();
            let ex = paper_example(family, &params, family.min_n()).unwrap();
            let img = phi(&ex.poly);
            let target = ex.plucker_target.as_ref().unwrap();
            let h = Polynomial::from_term(
                coeff(target.multiplier.0 as i64),
                target.multiplier.1.clone(),
            );
            let want = target.relation.as_polynomial().mul(&h);
            assert_eq!(img, want, "{}: image is not the stated multiple", family.name());
        }
    }

    #[test]
    fn example_parts_align_with_relation_terms() {
        // Each part maps to the multiplier times its relation term.
        let params: BTreeMap<String, u8> = [
            ("a".to_string(), 4u8),
            ("b".to_string(), 5),
            ("c".to_string(), 6),
            ("ap".to_string(), 7),
            ("bp".to_string(), 8),
            ("cp".to_string(), 9),
        ]
        .into_iter()
        .collect();
        let ex = paper_example(ExampleFamily::OddVrPl, &params, 9).unwrap();
        let target = ex.plucker_target.as_ref().unwrap();
        for ((ps, pm_), (rs, rp)) in ex.parts.iter().zip(target.relation.terms()) {
            let part_poly = Polynomial::from_term(coeff(*ps as i64), pm_.clone());
            let img = phi(&part_poly);
            let term_poly = Polynomial::from_term(
                coeff((*rs * target.multiplier.0) as i64),
                target
                    .multiplier
                    .1
                    .mul(&Monomial::var(pvar(*rp.u())))
                    .mul(&Monomial::var(pvar(*rp.v()))),
            );
            assert_eq!(img, term_poly);
        }
    }
}
