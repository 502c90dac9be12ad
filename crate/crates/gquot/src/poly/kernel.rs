//! Kernels of monomial maps via graph-ideal elimination, and Hilbert
//! functions of monomial ideals by standard-monomial counting.

use super::{groebner, Coeff, Monomial, Polynomial, VarId};
use crate::{Budget, Error, Result};
use num::Zero;
use std::collections::BTreeSet;

/// Generators of the kernel of the ring map sending each source variable to
/// a scaled monomial in the target variables.
///
/// The kernel ideal is computed as the graph ideal `⟨v - c_v · m_v⟩`
/// intersected with the source subring, by eliminating the target variables.
/// Images with coefficient one give a toric ideal and every returned
/// generator is then a difference of two monomials; scaled images yield
/// two-term generators with the matching coefficient pair.
pub fn kernel_of_monomial_map(
    images: &[(VarId, Coeff, Monomial)],
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    let sources: BTreeSet<VarId> = images.iter().map(|(v, _, _)| *v).collect();
    if sources.len() != images.len() {
        return Err(Error::InvalidParameter("duplicate source variable in map".into()));
    }
    let mut targets: BTreeSet<VarId> = BTreeSet::new();
    for (v, c, m) in images {
        if c.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "image of {v:?} has zero coefficient"
            )));
        }
        for t in m.variables() {
            if sources.contains(t) {
                return Err(Error::InvalidParameter(format!(
                    "image of {v:?} mentions the source variable {t:?}"
                )));
            }
            targets.insert(*t);
        }
    }
    let graph: Vec<Polynomial> = images
        .iter()
        .map(|(v, c, m)| Polynomial::from_var(*v).sub(&Polynomial::from_term(c.clone(), m.clone())))
        .collect();
    let front: Vec<VarId> = targets.into_iter().collect();
    groebner::eliminate(&graph, &front, budget)
}

/// Values of the Hilbert function of a monomial ideal: for each requested
/// degree t, the number of degree-t monomials in the ambient variables not
/// divisible by any generator.
///
/// Counting splits on one variable at a time: monomials with zero exponent
/// on x live in the subring without x, and monomials divisible by x are
/// counted through the colon ideal by x at degree t-1.
pub fn hilbert_function(
    leading_ideal_gens: &[Monomial],
    ambient_vars: &[VarId],
    degrees: &[u32],
) -> Result<Vec<u64>> {
    let ambient: BTreeSet<VarId> = ambient_vars.iter().copied().collect();
    if ambient.len() != ambient_vars.len() {
        return Err(Error::InvalidParameter("duplicate ambient variable".into()));
    }
    for g in leading_ideal_gens {
        for v in g.variables() {
            if !ambient.contains(v) {
                return Err(Error::InvalidParameter(format!(
                    "generator variable {v:?} is not ambient"
                )));
            }
        }
    }
    let gens = minimalize(leading_ideal_gens);
    Ok(degrees
        .iter()
        .map(|&t| count_standard(&gens, ambient_vars, t))
        .collect())
}

/// Drops generators divisible by another generator.
fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    let mut sorted: Vec<&Monomial> = gens.iter().collect();
    sorted.sort_by_key(|m| m.degree());
    for m in sorted {
        if !out.iter().any(|g| g.divides(m)) {
            out.push(m.clone());
        }
    }
    out
}

fn count_standard(gens: &[Monomial], vars: &[VarId], t: u32) -> u64 {
    if gens.iter().any(|g| g.is_one()) {
        return 0;
    }
    if t == 0 {
        return 1;
    }
    if gens.is_empty() {
        return monomial_count(vars.len() as u64, t as u64);
    }
    // Split on a variable occurring in some generator.
    let x = *gens[0].variables().next().expect("nonunit generator");
    // Exponent zero on x: drop x from the ring and every generator using it.
    let without: Vec<Monomial> = gens.iter().filter(|g| g.exponent(&x) == 0).cloned().collect();
    let reduced_vars: Vec<VarId> = vars.iter().copied().filter(|v| *v != x).collect();
    let zero_part = count_standard(&minimalize(&without), &reduced_vars, t);
    // Exponent positive on x: divide once, count at degree t-1.
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| match g.exponent(&x) {
            0 => g.clone(),
            _ => g.try_div(&Monomial::var(x)).expect("positive exponent"),
        })
        .collect();
    let pos_part = count_standard(&minimalize(&colon), vars, t - 1);
    zero_part + pos_part
}

/// Number of degree-t monomials in v variables: C(t + v - 1, v - 1).
fn monomial_count(v: u64, t: u64) -> u64 {
    if v == 0 {
        return if t == 0 { 1 } else { 0 };
    }
    binomial(t + v - 1, v - 1)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{multi_indices, MultiIndex};
    use num::One;

    fn t(i: u8) -> VarId {
        VarId::T(i)
    }

    fn xa2(a: u8, b: u8) -> VarId {
        VarId::Xa(crate::index::BlockString::new(&[a, b]).unwrap())
    }

    #[test]
    fn kernel_of_independent_images_is_empty() {
        // x_ab -> t_a t_b over {12, 13, 23}: three independent images.
        let images: Vec<(VarId, Coeff, Monomial)> = [(1, 2), (1, 3), (2, 3)]
            .iter()
            .map(|&(a, b)| {
                (
                    xa2(a, b),
                    Coeff::one(),
                    Monomial::var(t(a)).mul(&Monomial::var(t(b))),
                )
            })
            .collect();
        let k = kernel_of_monomial_map(&images, &Budget::default()).unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn kernel_of_segre_like_map() {
        // x_ab -> t_a t_b over all pairs in [4]: the straightening ideal.
        let images: Vec<(VarId, Coeff, Monomial)> = multi_indices(2, 4)
            .unwrap()
            .into_iter()
            .map(|u| {
                let e = u.entries();
                (
                    xa2(e[0], e[1]),
                    Coeff::one(),
                    Monomial::var(t(e[0])).mul(&Monomial::var(t(e[1]))),
                )
            })
            .collect();
        let k = kernel_of_monomial_map(&images, &Budget::default()).unwrap();
        assert_eq!(k.len(), 2);
        for g in &k {
            assert!(g.is_unit_binomial(), "kernel generator not a unit binomial: {g:?}");
            // Applying the map must give exactly zero.
            let img = g.substitute(&|v: &VarId| match v {
                VarId::Xa(s) => {
                    let l = s.letters();
                    Some(Polynomial::from_term(
                        Coeff::one(),
                        Monomial::var(t(l[0])).mul(&Monomial::var(t(l[1]))),
                    ))
                }
                _ => None,
            });
            assert!(img.is_zero());
        }
    }

    #[test]
    fn kernel_of_three_products_is_empty() {
        // x, y, z -> p12*p34, p13*p24, p14*p23: independent products.
        let p = |e: &[u8]| VarId::P(MultiIndex::new(e).unwrap());
        let images = vec![
            (t(1), Coeff::one(), Monomial::var(p(&[1, 2])).mul(&Monomial::var(p(&[3, 4])))),
            (t(2), Coeff::one(), Monomial::var(p(&[1, 3])).mul(&Monomial::var(p(&[2, 4])))),
            (t(3), Coeff::one(), Monomial::var(p(&[1, 4])).mul(&Monomial::var(p(&[2, 3])))),
        ];
        let k = kernel_of_monomial_map(&images, &Budget::default()).unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn kernel_rejects_bad_maps() {
        let images = vec![(t(1), Coeff::zero(), Monomial::var(t(2)))];
        assert!(kernel_of_monomial_map(&images, &Budget::default()).is_err());
        let cyclic = vec![(t(1), Coeff::one(), Monomial::var(t(1)))];
        assert!(kernel_of_monomial_map(&cyclic, &Budget::default()).is_err());
    }

    /// Brute-force oracle: enumerate all degree-t monomials and test
    /// divisibility directly.
    fn standard_count_oracle(gens: &[Monomial], vars: &[VarId], t: u32) -> u64 {
        fn rec(vars: &[VarId], t: u32, cur: &mut Vec<(VarId, u32)>, out: &mut Vec<Monomial>) {
            if vars.is_empty() {
                if t == 0 {
                    out.push(Monomial::from_pairs(cur));
                }
                return;
            }
            for e in 0..=t {
                cur.push((vars[0], e));
                rec(&vars[1..], t - e, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        rec(vars, t, &mut Vec::new(), &mut all);
        all.iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count() as u64
    }

    #[test]
    fn hilbert_no_generators() {
        let vars: Vec<VarId> = (1..=6).map(t).collect();
        let h = hilbert_function(&[], &vars, &[0, 1, 2]).unwrap();
        assert_eq!(h, vec![1, 6, 21]);
    }

    #[test]
    fn hilbert_two_quadrics_in_six_vars() {
        // Leading terms of the unit-block straightening pair for (2,4).
        let z = |e: &[u8]| VarId::Z(MultiIndex::new(e).unwrap());
        let vars: Vec<VarId> = multi_indices(2, 4)
            .unwrap()
            .into_iter()
            .map(VarId::Z)
            .collect();
        let gens = vec![
            Monomial::var(z(&[1, 2])).mul(&Monomial::var(z(&[3, 4]))),
            Monomial::var(z(&[1, 4])).mul(&Monomial::var(z(&[2, 3]))),
        ];
        let h = hilbert_function(&gens, &vars, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(h[0], 1);
        assert_eq!(h[1], 6);
        assert_eq!(h[2], 19);
        for (i, &t) in [0u32, 1, 2, 3, 4].iter().enumerate() {
            assert_eq!(h[i], standard_count_oracle(&gens, &vars, t));
        }
    }

    #[test]
    fn hilbert_matches_oracle_on_random_monomial_ideals() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(3);
        let vars: Vec<VarId> = (1..=8).map(t).collect();
        for _ in 0..20 {
            let gens: Vec<Monomial> = (0..rng.random_range(1..6))
                .map(|_| {
                    let pairs: Vec<(VarId, u32)> = vars
                        .iter()
                        .filter_map(|v| {
                            let e: u32 = rng.random_range(0..3);
                            (e > 0).then_some((*v, e))
                        })
                        .collect();
                    Monomial::from_pairs(&pairs)
                })
                .filter(|m| !m.is_one())
                .collect();
            for t in 0..=4 {
                let h = hilbert_function(&gens, &vars, &[t]).unwrap();
                assert_eq!(h[0], standard_count_oracle(&gens, &vars, t));
            }
        }
    }

    #[test]
    fn hilbert_rejects_foreign_variables() {
        let gens = vec![Monomial::var(t(9))];
        let vars = vec![t(1)];
        assert!(hilbert_function(&gens, &vars, &[1]).is_err());
    }
}
