//! Sparse exact-rational multivariate polynomials over a tagged variable
//! namespace, with term orders, Buchberger's algorithm, elimination, toric
//! kernels, and Hilbert functions.

pub mod groebner;
pub mod kernel;
pub mod order;

use crate::index::{BlockString, MultiIndex, PairIndex, SortedPair};
use num::{BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub use groebner::{
    buchberger, eliminate, ideal_member, is_groebner, is_reduced, reduce, reduce_basis,
    s_polynomial, GroebnerBasis, ReductionStep, ReductionTrace,
};
pub use kernel::{hilbert_function, kernel_of_monomial_map};
pub use order::TermOrder;

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// A variable in one of the disjoint tagged namespaces.
///
/// The derived order (tag first, then tuple) is the canonical structural
/// ranking used wherever a deterministic variable order is needed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarId {
    /// Plücker coordinate `p_u` of a fixed point.
    P(MultiIndex),
    /// Plücker coordinate `z_u` of the moving point.
    Z(MultiIndex),
    /// Pair coordinate `x_(u,v)` on the space indexed by the key of the pair.
    X(PairIndex),
    /// Coordinate `y_u` of the fiber block containing u.
    Y(MultiIndex),
    /// Abstract block variable `x_a` for a block string a.
    Xa(BlockString),
    /// Torus parameter `t_α`.
    T(u8),
    /// Fresh degree marker for one pair block; artifact of multi-homogeneous
    /// kernel extraction, never user-facing.
    WMark(SortedPair),
    /// Fresh degree marker for the Plücker block.
    SMark,
}

/// A monomial: sorted variable/exponent pairs, no zero exponents. The empty
/// monomial is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    vars: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial { vars: vec![(v, 1)] }
    }

    pub fn from_pairs(pairs: &[(VarId, u32)]) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial { vars: map.into_iter().collect() }
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VarId, u32)> {
        self.vars.iter()
    }

    pub fn exponent(&self, v: &VarId) -> u32 {
        self.vars
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.vars[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.vars.iter().map(|(_, e)| e).sum()
    }

    /// Total degree over the variables selected by the predicate.
    pub fn degree_where(&self, mut pred: impl FnMut(&VarId) -> bool) -> u32 {
        self.vars.iter().filter(|(v, _)| pred(v)).map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            match self.vars[i].0.cmp(&other.vars[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.vars[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.vars[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.vars[i].0, self.vars[i].1 + other.vars[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.vars[i..]);
        out.extend_from_slice(&other.vars[j..]);
        Monomial { vars: out }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            vars: self.vars.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        for &(v, e) in &self.vars {
            loop {
                if j == other.vars.len() {
                    return false;
                }
                match other.vars[j].0.cmp(&v) {
                    std::cmp::Ordering::Less => j += 1,
                    std::cmp::Ordering::Equal => {
                        if other.vars[j].1 < e {
                            return false;
                        }
                        break;
                    }
                    std::cmp::Ordering::Greater => return false,
                }
            }
        }
        true
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = Vec::with_capacity(self.vars.len());
        let mut j = 0;
        for &(v, e) in &self.vars {
            let mut rem = e;
            if j < other.vars.len() && other.vars[j].0 == v {
                rem = e - other.vars[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((v, rem));
            }
        }
        Some(Monomial { vars: out })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            match self.vars[i].0.cmp(&other.vars[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push((self.vars[i].0, self.vars[i].1.min(other.vars[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial { vars: out }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            match self.vars[i].0.cmp(&other.vars[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.vars[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.vars[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.vars[i].0, self.vars[i].1.max(other.vars[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.vars[i..]);
        out.extend_from_slice(&other.vars[j..]);
        Monomial { vars: out }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    pub fn variables(&self) -> impl Iterator<Item = &VarId> {
        self.vars.iter().map(|(v, _)| v)
    }

    /// All exponents at most one.
    pub fn is_squarefree(&self) -> bool {
        self.vars.iter().all(|(_, e)| *e <= 1)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v:?}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A canonical sparse polynomial: monomial → nonzero coefficient.
/// Equality is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn from_var(v: VarId) -> Self {
        Polynomial::from_term(Coeff::one(), Monomial::var(v))
    }

    pub fn from_term(c: Coeff, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Coeff, Monomial)>) -> Self {
        let mut p = Polynomial::zero();
        for (c, m) in terms {
            p.add_term(&c, &m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, c: &Coeff, m: &Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c, m);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(&-c.clone(), m);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(&(c1 * c2), &m1.mul(m2));
            }
        }
        out
    }

    /// In-place `self -= c * m * g`; the workhorse of reduction.
    pub fn sub_scaled_mul(&mut self, c: &Coeff, m: &Monomial, g: &Polynomial) {
        for (gm, gc) in &g.terms {
            self.add_term(&-(c * gc), &gm.mul(m));
        }
    }

    /// Leading term with respect to a term order.
    pub fn leading(&self, order: &TermOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// All variables occurring in the polynomial.
    pub fn variables(&self) -> std::collections::BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.variables().copied())
            .collect()
    }

    /// Total degree of the polynomial (max over terms).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Exactly two terms.
    pub fn is_two_term(&self) -> bool {
        self.terms.len() == 2
    }

    /// Two terms with coefficients +1 and -1.
    pub fn is_unit_binomial(&self) -> bool {
        if self.terms.len() != 2 {
            return false;
        }
        let cs: Vec<&Coeff> = self.terms.values().collect();
        (cs[0].is_one() && (-cs[1].clone()).is_one())
            || (cs[1].is_one() && (-cs[0].clone()).is_one())
    }

    /// Divides by the leading coefficient. No-op on zero.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match self.leading(order) {
            Some((_, c)) if !c.is_one() => {
                let inv = Coeff::one() / c.clone();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Substitutes every variable by the polynomial given by `image`;
    /// variables without an image are kept. Exact, no truncation.
    pub fn substitute(&self, image: &dyn Fn(&VarId) -> Option<Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for &(v, e) in m.iter() {
                let factor = match image(&v) {
                    Some(p) => p,
                    None => Polynomial::from_var(v),
                };
                for _ in 0..e {
                    term = term.mul(&factor);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluates at rational values; every variable must be assigned.
    pub fn evaluate(&self, value: &dyn Fn(&VarId) -> Option<Coeff>) -> crate::Result<Coeff> {
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.iter() {
                let val = value(&v).ok_or_else(|| {
                    crate::Error::InvalidParameter(format!("no value for variable {v:?}"))
                })?;
                for _ in 0..e {
                    t *= val.clone();
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Content-normalized integral form: clears denominators and divides by
    /// the gcd of the numerators, keeping the sign of the structurally first
    /// term positive. Canonical representative up to scalar.
    pub fn primitive_part(&self) -> Polynomial {
        use num::BigInt;
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let scaled: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&denom_lcm / c.denom())))
            .collect();
        let mut g = BigInt::zero();
        for (_, n) in &scaled {
            g = num::integer::gcd(g, n.clone());
        }
        let first_negative = scaled.first().map(|(_, n)| n.is_negative()).unwrap_or(false);
        if first_negative {
            g = -g;
        }
        Polynomial {
            terms: scaled
                .into_iter()
                .map(|(m, n)| (m, Coeff::from(n / &g)))
                .collect(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Coeff::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs.is_one() && !m.is_one() {
                write!(f, "{m:?}")?;
            } else if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m:?}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;

    fn p(e: &[u8]) -> VarId {
        VarId::P(MultiIndex::new(e).unwrap())
    }

    fn c(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    #[test]
    fn monomial_arithmetic() {
        let a = Monomial::from_pairs(&[(p(&[1, 2]), 2), (p(&[3, 4]), 1)]);
        let b = Monomial::from_pairs(&[(p(&[1, 2]), 1), (p(&[1, 3]), 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.exponent(&p(&[1, 2])), 3);
        assert_eq!(ab.degree(), 5);
        assert_eq!(ab.try_div(&a).unwrap(), b);
        assert!(b.divides(&ab));
        assert!(!a.divides(&b));
        assert_eq!(a.gcd(&b), Monomial::var(p(&[1, 2])));
        assert_eq!(a.lcm(&b).degree(), 4);
    }

    #[test]
    fn polynomial_canonical_form() {
        let m = Monomial::var(p(&[1, 2]));
        let mut f = Polynomial::zero();
        f.add_term(&c(2), &m);
        f.add_term(&c(-2), &m);
        assert!(f.is_zero());
        let g = Polynomial::from_terms([(c(1), m.clone()), (c(1), m.clone())]);
        assert_eq!(g.coeff(&m), Some(&c(2)));
    }

    #[test]
    fn polynomial_mul_and_sub() {
        let x = Polynomial::from_var(p(&[1, 2]));
        let y = Polynomial::from_var(p(&[1, 3]));
        let f = x.add(&y).mul(&x.sub(&y));
        let want = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(f, want);
    }

    #[test]
    fn substitute_is_ring_homomorphism() {
        let x = p(&[1, 2]);
        let y = p(&[1, 3]);
        let f = Polynomial::from_var(x).mul(&Polynomial::from_var(y)).add(&Polynomial::one());
        let img = |v: &VarId| {
            if *v == x {
                Some(Polynomial::from_var(y).add(&Polynomial::one()))
            } else {
                None
            }
        };
        let got = f.substitute(&img);
        let yv = Polynomial::from_var(y);
        let want = yv.add(&Polynomial::one()).mul(&yv).add(&Polynomial::one());
        assert_eq!(got, want);
    }

    #[test]
    fn primitive_part_normalizes() {
        let m = Monomial::var(p(&[1, 2]));
        let n = Monomial::var(p(&[1, 3]));
        let f = Polynomial::from_terms([
            (Coeff::new(4.into(), 6.into()), m.clone()),
            (Coeff::new((-2).into(), 3.into()), n.clone()),
        ]);
        let g = f.primitive_part();
        assert_eq!(g.coeff(&m), Some(&c(1)));
        assert_eq!(g.coeff(&n), Some(&c(-1)));
        // Scaling does not change the primitive part.
        assert_eq!(f.scale(&Coeff::new(7.into(), 3.into())).primitive_part(), g);
    }
}
