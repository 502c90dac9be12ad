//! The monomial maps between the coordinate rings: the pair-to-product maps
//! on pair coordinates (plain, restricted, and modulo the Plücker ideal),
//! the fiber-collapse maps at a point, and the semigroup lift — together
//! with point evaluation of the block map, multi-homogeneous kernels,
//! orbit Hilbert functions, and membership certificates.

use crate::index::{
    block_strings, fiber_of_string, lambda_w, multi_indices, sorted_pairs,
    Decomposition, MultiIndex, PairIndex, SortedPair,
};
use crate::poly::order::{orbit_order, sorting_order};
use crate::poly::{
    buchberger, eliminate, reduce, reduce_basis, Coeff, GroebnerBasis, Monomial, Polynomial,
    ReductionTrace, TermOrder, VarId,
};
use crate::relations::{
    cubic_binomials, j_product, orbit_gb, plucker_relations, MultiProjPoint, RationalPoint,
};
use crate::{Budget, Error, Result};
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Mutex, OnceLock};

/// The map kinds. The pair-to-product maps act on unit-block
/// decompositions; the fiber-collapse maps and the semigroup lift act on
/// any decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// Identity on Plüccker variables, pair variables to coordinate products.
    Phi,
    /// The restriction of the above to pair variables only.
    PhiRho,
    /// Pair-to-product composed with reduction modulo the Plücker ideal.
    PhiGr,
    /// The restriction of the above to pair variables only.
    PhiGrRho,
    /// Fiber collapse `z_u -> x_a`.
    Zeta,
    /// Scaled fiber collapse `z_u -> p_u x_a` at a fixed point.
    ZetaP,
    /// Semigroup lift `x_a -> t^{composition(a)}`.
    RhoBullet,
}

impl MapKind {
    pub fn name(&self) -> &'static str {
        match self {
            MapKind::Phi => "phi",
            MapKind::PhiRho => "phi-rho",
            MapKind::PhiGr => "phi-gr",
            MapKind::PhiGrRho => "phi-gr-rho",
            MapKind::Zeta => "zeta",
            MapKind::ZetaP => "zeta-p",
            MapKind::RhoBullet => "rho-bullet",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "phi" => MapKind::Phi,
            "phi-rho" => MapKind::PhiRho,
            "phi-gr" => MapKind::PhiGr,
            "phi-gr-rho" => MapKind::PhiGrRho,
            "zeta" => MapKind::Zeta,
            "zeta-p" => MapKind::ZetaP,
            "rho-bullet" => MapKind::RhoBullet,
            other => return Err(Error::InvalidParameter(format!("unknown map kind {other}"))),
        })
    }

    fn is_gr(&self) -> bool {
        matches!(self, MapKind::PhiGr | MapKind::PhiGrRho)
    }

    fn is_pair_map(&self) -> bool {
        matches!(
            self,
            MapKind::Phi | MapKind::PhiRho | MapKind::PhiGr | MapKind::PhiGrRho
        )
    }
}

/// Degree-grouping of source variables for multi-homogeneity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockId {
    Plucker,
    Pair(SortedPair),
}

/// How images are reduced on the target side.
#[derive(Clone, Debug)]
enum TargetModulus {
    None,
    /// A Gröbner basis of the target ideal: reduction is a true normal form.
    Groebner(GroebnerBasis),
    /// Plain generators: reduction to zero certifies membership, a nonzero
    /// residue is tried against single-generator division before failing.
    Generators { gens: Vec<Polynomial>, order: TermOrder },
}

/// A fully populated map: sources, images, degree blocks, and the target
/// ideal for the quotient variants.
#[derive(Clone, Debug)]
pub struct MapSpec {
    kind: MapKind,
    dec: Decomposition,
    source_vars: Vec<VarId>,
    images: BTreeMap<VarId, Polynomial>,
    blocks: BTreeMap<VarId, BlockId>,
    modulus: TargetModulus,
    point: Option<RationalPoint>,
}

/// Cache of the reduced Plücker-ideal bases, keyed by (d, n).
fn plucker_gb_cache() -> &'static Mutex<BTreeMap<(u8, u8), Vec<Polynomial>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<(u8, u8), Vec<Polynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

fn plucker_order(d: u8, n: u8) -> Result<TermOrder> {
    Ok(TermOrder::degrevlex(
        multi_indices(d, n)?.into_iter().map(VarId::P).collect(),
    ))
}

/// The reduced degrevlex basis of the Plücker ideal, computed once per
/// (d, n) and cached. Only used at small sizes.
pub fn plucker_ideal_gb(d: u8, n: u8, budget: &Budget) -> Result<Vec<Polynomial>> {
    if let Some(gens) = plucker_gb_cache().lock().unwrap().get(&(d, n)) {
        return Ok(gens.clone());
    }
    let gens: Vec<Polynomial> = plucker_relations(d, n)?
        .iter()
        .map(|r| r.as_polynomial())
        .collect();
    let order = plucker_order(d, n)?;
    let gb = reduce_basis(&buchberger(&gens, &order, budget)?);
    plucker_gb_cache()
        .lock()
        .unwrap()
        .insert((d, n), gb.generators.clone());
    Ok(gb.generators)
}

/// Whether the Plücker ideal of (d, n) is small enough to keep a full basis.
fn plucker_gb_is_cheap(d: u8, n: u8) -> bool {
    multi_indices(d, n).map(|v| v.len() <= 15).unwrap_or(false)
}

/// Builds the map of the given kind. Pair maps require a unit-block
/// decomposition; the key set defaults to all keys with a nontrivial pair
/// space and may be restricted to a subset of them. The scaled fiber
/// collapse requires an all-nonzero point.
pub fn build_map(
    kind: MapKind,
    dec: &Decomposition,
    subset: Option<&[SortedPair]>,
    point: Option<&RationalPoint>,
    budget: &Budget,
) -> Result<MapSpec> {
    let d = dec.d();
    let n = dec.ground_size();
    let mut images: BTreeMap<VarId, Polynomial> = BTreeMap::new();
    let mut blocks: BTreeMap<VarId, BlockId> = BTreeMap::new();
    let mut source_vars: Vec<VarId> = Vec::new();
    let mut modulus = TargetModulus::None;
    let mut stored_point = None;
    if kind.is_pair_map() {
        if !dec.is_unit_blocks() {
            return Err(Error::InvalidParameter(
                "pair-to-product maps are defined for unit-block decompositions".into(),
            ));
        }
        let partition = crate::index::lambda_partition(d, n)?;
        let keys: Vec<SortedPair> = match subset {
            None => partition.keys().copied().collect(),
            Some(sel) => {
                for w in sel {
                    if !partition.contains_key(w) {
                        return Err(Error::InvalidParameter(format!(
                            "{w:?} is not a key with a nontrivial pair space"
                        )));
                    }
                }
                sel.to_vec()
            }
        };
        if matches!(kind, MapKind::Phi | MapKind::PhiGr) {
            for u in multi_indices(d, n)? {
                let v = VarId::P(u);
                source_vars.push(v);
                images.insert(v, Polynomial::from_var(v));
                blocks.insert(v, BlockId::Plucker);
            }
        }
        for w in &keys {
            for pair in &partition[w] {
                let v = VarId::X(*pair);
                source_vars.push(v);
                images.insert(
                    v,
                    Polynomial::from_term(
                        Coeff::one(),
                        Monomial::var(VarId::P(*pair.u())).mul(&Monomial::var(VarId::P(*pair.v()))),
                    ),
                );
                blocks.insert(v, BlockId::Pair(*w));
            }
        }
        if kind.is_gr() {
            let rel_polys: Vec<Polynomial> = plucker_relations(d, n)?
                .iter()
                .map(|r| r.as_polynomial())
                .collect();
            let order = plucker_order(d, n)?;
            modulus = if plucker_gb_is_cheap(d, n) {
                TargetModulus::Groebner(GroebnerBasis {
                    generators: plucker_ideal_gb(d, n, budget)?,
                    order: order.clone(),
                    reduced: true,
                })
            } else {
                TargetModulus::Generators { gens: rel_polys, order }
            };
        }
    } else {
        match kind {
            MapKind::Zeta | MapKind::ZetaP => {
                let point = match kind {
                    MapKind::ZetaP => {
                        let p = point.ok_or_else(|| {
                            Error::InvalidParameter("scaled fiber collapse needs a point".into())
                        })?;
                        if p.d() != d || p.ground() != n {
                            return Err(Error::InvalidParameter(
                                "point does not match decomposition".into(),
                            ));
                        }
                        if !p.all_nonzero() {
                            return Err(Error::InvalidParameter(
                                "scaled fiber collapse needs an all-nonzero point".into(),
                            ));
                        }
                        Some(p.clone())
                    }
                    _ => None,
                };
                for a in block_strings(dec) {
                    for u in fiber_of_string(&a, dec)? {
                        let v = VarId::Z(u);
                        source_vars.push(v);
                        let c = match &point {
                            Some(p) => p.get(&u)?.clone(),
                            None => Coeff::one(),
                        };
                        images.insert(
                            v,
                            Polynomial::from_term(c, Monomial::var(VarId::Xa(a))),
                        );
                    }
                }
                // The target ring is the block-variable ring modulo the
                // straightening ideal; keep its basis for reductions.
                let xs: Vec<Polynomial> = crate::relations::sorted_gb(dec)
                    .iter()
                    .map(|b| b.as_polynomial())
                    .collect();
                let order = sorting_order(dec);
                let gb = reduce_basis(&buchberger(&xs, &order, budget)?);
                modulus = TargetModulus::Groebner(gb);
                stored_point = point;
            }
            MapKind::RhoBullet => {
                for a in block_strings(dec) {
                    let v = VarId::Xa(a);
                    source_vars.push(v);
                    let m = a
                        .letters()
                        .iter()
                        .fold(Monomial::one(), |acc, &l| acc.mul(&Monomial::var(VarId::T(l))));
                    images.insert(v, Polynomial::from_term(Coeff::one(), m));
                }
            }
            _ => unreachable!("pair maps handled above"),
        }
    }
    Ok(MapSpec {
        kind,
        dec: dec.clone(),
        source_vars,
        images,
        blocks,
        modulus,
        point: stored_point,
    })
}

impl MapSpec {
    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.dec
    }

    pub fn source_vars(&self) -> &[VarId] {
        &self.source_vars
    }

    pub fn image_of(&self, v: &VarId) -> Option<&Polynomial> {
        self.images.get(v)
    }

    pub fn point(&self) -> Option<&RationalPoint> {
        self.point.as_ref()
    }

    pub fn block_of(&self, v: &VarId) -> Option<BlockId> {
        self.blocks.get(v).copied()
    }

    /// Per-block degree vector of a monomial over the source variables.
    fn block_degrees(&self, m: &Monomial) -> BTreeMap<BlockId, u32> {
        let mut out = BTreeMap::new();
        for (v, e) in m.iter() {
            if let Some(b) = self.blocks.get(v) {
                *out.entry(*b).or_insert(0) += e;
            }
        }
        out
    }

    /// Multi-homogeneous: every monomial has the same per-block degrees.
    /// With no declared blocks this degenerates to plain homogeneity.
    pub fn is_multi_homogeneous(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        if self.blocks.is_empty() {
            let mut degs = f.terms().map(|(m, _)| m.degree());
            let first = degs.next().unwrap();
            return degs.all(|d| d == first);
        }
        let mut sigs = f.terms().map(|(m, _)| self.block_degrees(m));
        let first = sigs.next().unwrap();
        sigs.all(|s| s == first)
    }

    /// Splits a polynomial into its per-block-degree homogeneous components.
    pub fn multi_homogeneous_components(&self, f: &Polynomial) -> Vec<Polynomial> {
        let mut by_sig: BTreeMap<Vec<(BlockId, u32)>, Polynomial> = BTreeMap::new();
        for (m, c) in f.terms() {
            let sig: Vec<(BlockId, u32)> = self.block_degrees(m).into_iter().collect();
            by_sig.entry(sig).or_insert_with(Polynomial::zero).add_term(c, m);
        }
        by_sig.into_values().collect()
    }
}

/// Substitutes the map images into a polynomial over the source variables;
/// quotient variants then reduce the result on the target side.
pub fn apply_map(spec: &MapSpec, f: &Polynomial) -> Result<Polynomial> {
    let sources: BTreeSet<VarId> = spec.source_vars.iter().copied().collect();
    for v in f.variables() {
        if !sources.contains(&v) {
            return Err(Error::InvalidParameter(format!(
                "{v:?} is not a source variable of this map"
            )));
        }
    }
    let image = f.substitute(&|v: &VarId| spec.images.get(v).cloned());
    Ok(match &spec.modulus {
        TargetModulus::None => image,
        TargetModulus::Groebner(gb) => reduce(&image, &gb.generators, &gb.order).0,
        TargetModulus::Generators { gens, order } => reduce(&image, gens, order).0,
    })
}

/// The raw substitution image, before any target-side reduction.
pub fn apply_map_raw(spec: &MapSpec, f: &Polynomial) -> Result<Polynomial> {
    let sources: BTreeSet<VarId> = spec.source_vars.iter().copied().collect();
    for v in f.variables() {
        if !sources.contains(&v) {
            return Err(Error::InvalidParameter(format!(
                "{v:?} is not a source variable of this map"
            )));
        }
    }
    Ok(f.substitute(&|v: &VarId| spec.images.get(v).cloned()))
}

/// Result of evaluating the block map at a point: the per-block coordinate
/// vectors, or the degenerate marker when some block vanishes identically.
/// The vanishing of the product ideal is evaluated independently.
#[derive(Clone, Debug)]
pub struct ThetaEval {
    pub degenerate: bool,
    pub point: Option<MultiProjPoint>,
    /// All generators of the coordinate-product ideal vanish at the point.
    pub j_vanishes: bool,
}

/// Evaluates the block map at a point of the Plücker space: each fiber
/// block collects the coordinates of its indices, each pair block the
/// products over its pair set. Degenerate exactly when some block is
/// identically zero, which coincides with the vanishing of the
/// coordinate-product ideal.
pub fn theta_eval(
    p: &RationalPoint,
    dec: &Decomposition,
    subset: Option<&[SortedPair]>,
) -> Result<ThetaEval> {
    if p.d() != dec.d() || p.ground() != dec.ground_size() {
        return Err(Error::InvalidParameter("point does not match decomposition".into()));
    }
    let mut degenerate = false;
    let mut y_blocks = BTreeMap::new();
    let mut w_blocks = BTreeMap::new();
    let keys: Vec<SortedPair> = match subset {
        Some(sel) => sel.to_vec(),
        None => sorted_pairs(dec),
    };
    if subset.is_none() {
        for a in block_strings(dec) {
            let mut block = BTreeMap::new();
            let mut all_zero = true;
            for u in fiber_of_string(&a, dec)? {
                let c = p.get(&u)?.clone();
                all_zero &= c.is_zero();
                block.insert(u, c);
            }
            degenerate |= all_zero;
            y_blocks.insert(a, block);
        }
    }
    for w in &keys {
        let mut block = BTreeMap::new();
        let mut all_zero = true;
        for pair in lambda_w(w, dec)? {
            let c = p.get(pair.u())?.clone() * p.get(pair.v())?.clone();
            all_zero &= c.is_zero();
            block.insert(pair, c);
        }
        degenerate |= all_zero;
        w_blocks.insert(*w, block);
    }
    // Independent route: evaluate the product ideal.
    let j_vanishes = match subset {
        None => {
            let value = |v: &VarId| match v {
                VarId::P(u) => p.get(u).ok().cloned(),
                _ => None,
            };
            j_product(dec)?.iter().all(|g| {
                Polynomial::from_term(Coeff::one(), g.clone())
                    .evaluate(&value)
                    .map(|c| c.is_zero())
                    .unwrap_or(false)
            })
        }
        Some(_) => {
            // Product of the chosen pair ideals only.
            let mut gens: BTreeSet<Monomial> = BTreeSet::new();
            gens.insert(Monomial::one());
            for w in &keys {
                let factor: Vec<Monomial> = lambda_w(w, dec)?
                    .into_iter()
                    .map(|pair| {
                        Monomial::var(VarId::P(*pair.u())).mul(&Monomial::var(VarId::P(*pair.v())))
                    })
                    .collect();
                let mut next = BTreeSet::new();
                for m in &gens {
                    for g in &factor {
                        next.insert(m.mul(g));
                    }
                }
                gens = next;
            }
            let value = |v: &VarId| match v {
                VarId::P(u) => p.get(u).ok().cloned(),
                _ => None,
            };
            gens.iter().all(|g| {
                Polynomial::from_term(Coeff::one(), g.clone())
                    .evaluate(&value)
                    .map(|c| c.is_zero())
                    .unwrap_or(false)
            })
        }
    };
    let point = if degenerate {
        None
    } else {
        Some(MultiProjPoint::new(y_blocks, w_blocks)?)
    };
    Ok(ThetaEval { degenerate, point, j_vanishes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMethod {
    /// Toric kernel of the marker-augmented map by graph elimination.
    MarkerElimination,
    /// Toric kernel through the semigroup ring by graph elimination.
    GraphElimination,
    /// Elimination of the Plücker variables from graph plus Plücker ideal.
    QuotientElimination,
}

/// Kernel computation outcome: generators, whether they are all
/// multi-homogeneous for the source blocks, the method, and resource notes.
#[derive(Clone, Debug)]
pub struct KernelReport {
    pub generators: Vec<Polynomial>,
    pub multi_homogeneous: bool,
    pub method: KernelMethod,
    /// Generators above the degree cap were dropped.
    pub capped: bool,
}

/// The multi-homogeneous kernel of the map, at desk scale.
///
/// For the toric kinds the source images are augmented with one fresh
/// marker variable per pair block (and one for the Plücker block), which
/// forces per-block degree balance; the toric kernel of the augmented map
/// is then exactly the multi-homogeneous kernel of the original map and is
/// computed by graph elimination. The fiber-collapse kernels are computed
/// through the semigroup ring, composing with the lift. The quotient kinds
/// eliminate the Plücker variables from the graph ideal together with the
/// Plücker relations, then split generators into multi-homogeneous
/// components up to the degree cap.
pub fn kernel_mh(spec: &MapSpec, degree_cap: u32, budget: &Budget) -> Result<KernelReport> {
    if degree_cap == 0 {
        return Err(Error::InvalidParameter("degree cap must be at least 1".into()));
    }
    match spec.kind {
        MapKind::Phi | MapKind::PhiRho => {
            // Markers force per-block homogeneity; target P-variables are
            // renamed into the z namespace to keep sources and targets
            // disjoint.
            let mut images: Vec<(VarId, Coeff, Monomial)> = Vec::new();
            for v in &spec.source_vars {
                match v {
                    VarId::P(u) => {
                        let m = Monomial::var(VarId::Z(*u)).mul(&Monomial::var(VarId::SMark));
                        images.push((*v, Coeff::one(), m));
                    }
                    VarId::X(pair) => {
                        let w = match spec.blocks.get(v) {
                            Some(BlockId::Pair(w)) => *w,
                            _ => pair.key(),
                        };
                        let m = Monomial::var(VarId::Z(*pair.u()))
                            .mul(&Monomial::var(VarId::Z(*pair.v())))
                            .mul(&Monomial::var(VarId::WMark(w)));
                        images.push((*v, Coeff::one(), m));
                    }
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "unexpected source variable {other:?}"
                        )))
                    }
                }
            }
            let gens = crate::poly::kernel_of_monomial_map(&images, budget)?;
            let (kept, capped) = cap_by_degree(gens, degree_cap);
            let multi = kept.iter().all(|g| spec.is_multi_homogeneous(g));
            Ok(KernelReport {
                generators: kept,
                multi_homogeneous: multi,
                method: KernelMethod::MarkerElimination,
                capped,
            })
        }
        MapKind::Zeta | MapKind::ZetaP | MapKind::RhoBullet => {
            // Compose with the semigroup lift: the kernel through the
            // quotient by the straightening ideal is the kernel of the
            // composite into the torus parameters.
            let mut images: Vec<(VarId, Coeff, Monomial)> = Vec::new();
            for v in &spec.source_vars {
                let image = &spec.images[v];
                let (m, c) = image
                    .terms()
                    .next()
                    .ok_or_else(|| Error::InvalidParameter("zero image".into()))?;
                let lifted = lift_block_monomial(m)?;
                images.push((*v, c.clone(), lifted));
            }
            let gens = crate::poly::kernel_of_monomial_map(&images, budget)?;
            let (kept, capped) = cap_by_degree(gens, degree_cap);
            let multi = kept.iter().all(|g| spec.is_multi_homogeneous(g));
            Ok(KernelReport {
                generators: kept,
                multi_homogeneous: multi,
                method: KernelMethod::GraphElimination,
                capped,
            })
        }
        MapKind::PhiGr | MapKind::PhiGrRho => {
            let d = spec.dec.d();
            let n = spec.dec.ground_size();
            let mut gens: Vec<Polynomial> = Vec::new();
            for v in &spec.source_vars {
                if let VarId::X(_) = v {
                    gens.push(Polynomial::from_var(*v).sub(&spec.images[v]));
                }
            }
            for r in plucker_relations(d, n)? {
                gens.push(r.as_polynomial());
            }
            let front: Vec<VarId> = multi_indices(d, n)?.into_iter().map(VarId::P).collect();
            let eliminated = eliminate(&gens, &front, budget)?;
            let (kept, capped) = cap_by_degree(eliminated, degree_cap);
            // Split non-multi-homogeneous generators into components and
            // keep the pieces that still map into the Plücker ideal.
            let mut out: Vec<Polynomial> = Vec::new();
            for g in kept {
                if spec.is_multi_homogeneous(&g) {
                    out.push(g);
                    continue;
                }
                let comps = spec.multi_homogeneous_components(&g);
                let all_members = comps
                    .iter()
                    .map(|c| Ok(apply_map(spec, c)?.is_zero()))
                    .collect::<Result<Vec<bool>>>()?
                    .into_iter()
                    .all(|b| b);
                if all_members {
                    out.extend(comps);
                } else {
                    out.push(g);
                }
            }
            let multi = out.iter().all(|g| spec.is_multi_homogeneous(g));
            Ok(KernelReport {
                generators: out,
                multi_homogeneous: multi,
                method: KernelMethod::QuotientElimination,
                capped,
            })
        }
    }
}

fn cap_by_degree(gens: Vec<Polynomial>, cap: u32) -> (Vec<Polynomial>, bool) {
    let before = gens.len();
    let kept: Vec<Polynomial> = gens.into_iter().filter(|g| g.total_degree() <= cap).collect();
    let capped = kept.len() != before;
    (kept, capped)
}

/// Replaces each abstract block variable by its torus-parameter monomial.
fn lift_block_monomial(m: &Monomial) -> Result<Monomial> {
    let mut out = Monomial::one();
    for (v, e) in m.iter() {
        let VarId::Xa(a) = v else {
            return Err(Error::InvalidParameter(format!(
                "expected a block-variable monomial, found {v:?}"
            )));
        };
        for &l in a.letters() {
            out = out.mul(&Monomial::var(VarId::T(l)).pow(*e));
        }
    }
    Ok(out)
}

/// Generators of the image ideal of the two-block fiber projection: the
/// fiber coordinates are renamed Plücker coordinates, so eliminating the
/// Plücker variables from the renaming graph together with the Plücker
/// ideal leaves the defining relations of the image, up to the degree cap.
pub fn h_quotient_projection(
    dec: &Decomposition,
    degree_cap: u32,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    let sizes = dec.block_sizes();
    if sizes.len() != 2 || sizes[1] != 1 || sizes[0] + 1 != dec.ground_size() {
        return Err(Error::InvalidParameter(
            "fiber projection needs a two-block decomposition with sizes (n-1, 1)".into(),
        ));
    }
    let d = dec.d();
    let n = dec.ground_size();
    let mut gens: Vec<Polynomial> = Vec::new();
    for u in multi_indices(d, n)? {
        gens.push(Polynomial::from_var(VarId::Y(u)).sub(&Polynomial::from_var(VarId::P(u))));
    }
    for r in plucker_relations(d, n)? {
        gens.push(r.as_polynomial());
    }
    let front: Vec<VarId> = multi_indices(d, n)?.into_iter().map(VarId::P).collect();
    let eliminated = eliminate(&gens, &front, budget)?;
    Ok(eliminated
        .into_iter()
        .filter(|g| g.total_degree() <= degree_cap)
        .collect())
}

/// Hilbert function of the orbit-closure ideal of an all-nonzero point,
/// through the leading terms of its verified Gröbner system, at degrees
/// `0..=max_degree`.
pub fn hilbert_orbit(
    p: &RationalPoint,
    dec: &Decomposition,
    max_degree: u32,
    _budget: &Budget,
) -> Result<Vec<u64>> {
    let gens = orbit_gb(p, dec, false)?;
    let order = orbit_order(dec)?;
    if !crate::poly::is_reduced(&gens, &order) {
        return Err(Error::InvalidParameter(
            "orbit system is not reduced under the composite order".into(),
        ));
    }
    let leads: Vec<Monomial> = gens
        .iter()
        .map(|g| g.leading(&order).expect("nonzero").0.clone())
        .collect();
    let vars: Vec<VarId> = multi_indices(dec.d(), dec.ground_size())?
        .into_iter()
        .map(VarId::Z)
        .collect();
    let degrees: Vec<u32> = (0..=max_degree).collect();
    crate::poly::hilbert_function(&leads, &vars, &degrees)
}

/// Membership certificate: the raw image, the residue after target-side
/// reduction, and the reduction trace.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub image: Polynomial,
    pub residue: Polynomial,
    pub trace: Option<ReductionTrace>,
}

/// Whether the polynomial maps to zero (after reduction modulo the target
/// ideal for the quotient variants). For quotient targets where only plain
/// generators are held, a nonzero residue is retried by exact division
/// against each single relation, which decides membership in the principal
/// ideal it generates.
pub fn verify_kernel_membership(f: &Polynomial, spec: &MapSpec) -> Result<Membership> {
    let image = apply_map_raw(spec, f)?;
    match &spec.modulus {
        TargetModulus::None => Ok(Membership {
            member: image.is_zero(),
            residue: image.clone(),
            image,
            trace: None,
        }),
        TargetModulus::Groebner(gb) => {
            let (residue, trace) = reduce(&image, &gb.generators, &gb.order);
            Ok(Membership { member: residue.is_zero(), image, residue, trace: Some(trace) })
        }
        TargetModulus::Generators { gens, order } => {
            let (residue, trace) = reduce(&image, gens, order);
            if residue.is_zero() {
                return Ok(Membership { member: true, image, residue, trace: Some(trace) });
            }
            for g in gens {
                let (r, t) = reduce(&image, std::slice::from_ref(g), order);
                if r.is_zero() {
                    return Ok(Membership {
                        member: true,
                        image,
                        residue: r,
                        trace: Some(t),
                    });
                }
            }
            Ok(Membership { member: false, image, residue, trace: Some(trace) })
        }
    }
}

/// Report of the cubic-generation experiment for 2-planes.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub n: u8,
    pub kernel_generators: Vec<Polynomial>,
    /// Per-generator: reduces to zero modulo the cubic ideal.
    pub verdicts: Vec<bool>,
    pub consistent: bool,
    pub min_generator_degree: Option<u32>,
    /// The quintic relation on six indices reduces through the cubics in
    /// two steps, with an exact cofactor identity.
    pub quintic_identity_holds: bool,
    /// The kernel computation hit its budget; verdicts cover what finished.
    pub kernel_capped: bool,
}

/// Computes the restricted pair-map kernel for 2-planes and tests every
/// generator for membership in the ideal of cubic binomials; also replays
/// the quintic-to-cubic reduction on six indices.
pub fn conjecture_experiment(n: u8, degree_cap: u32, budget: &Budget) -> Result<ConjectureReport> {
    if !(n == 5 || n == 6) {
        return Err(Error::InvalidParameter("the experiment runs at n = 5 or 6".into()));
    }
    let dec = Decomposition::unit_blocks(2, n)?;
    let quintic_identity_holds = quintic_reduction_holds()?;
    let spec = build_map(MapKind::PhiRho, &dec, None, None, budget)?;
    let (kernel_generators, kernel_capped) = match kernel_mh(&spec, degree_cap, budget) {
        Ok(report) => (report.generators, report.capped),
        Err(Error::ResourceExceeded(_)) => (Vec::new(), true),
        Err(e) => return Err(e),
    };
    let cubics: Vec<Polynomial> = cubic_binomials(n)?
        .iter()
        .map(|b| b.as_polynomial())
        .collect();
    let xvars: Vec<VarId> = spec.source_vars.to_vec();
    let order = TermOrder::degrevlex(xvars);
    let cubic_gb = buchberger(&cubics, &order, budget)?;
    let mut verdicts = Vec::new();
    for g in &kernel_generators {
        let (rem, _) = reduce(g, &cubic_gb.generators, &order);
        verdicts.push(rem.is_zero());
    }
    let consistent = !kernel_capped && verdicts.iter().all(|&v| v);
    let min_generator_degree = kernel_generators.iter().map(|g| g.total_degree()).min();
    Ok(ConjectureReport {
        n,
        kernel_generators,
        verdicts,
        consistent,
        min_generator_degree,
        quintic_identity_holds,
        kernel_capped,
    })
}

/// The quintic binomial on indices within [6] reduces through two cubic
/// rewrites; the first step is witnessed by an exact cofactor identity.
fn quintic_reduction_holds() -> Result<bool> {
    let x = |a: u8, b: u8, c: u8, d: u8| -> Result<Polynomial> {
        Ok(Polynomial::from_var(VarId::X(PairIndex::new(
            MultiIndex::new(&[a, b])?,
            MultiIndex::new(&[c, d])?,
        ))))
    };
    let g = x(1, 2, 3, 4)?
        .mul(&x(1, 4, 3, 5)?)
        .mul(&x(1, 5, 2, 6)?)
        .mul(&x(1, 6, 2, 3)?)
        .mul(&x(1, 3, 2, 5)?)
        .sub(
            &x(1, 4, 2, 3)?
                .mul(&x(1, 5, 3, 4)?)
                .mul(&x(1, 6, 2, 5)?)
                .mul(&x(1, 3, 2, 6)?)
                .mul(&x(1, 2, 3, 5)?),
        );
    let f = x(1, 2, 3, 4)?
        .mul(&x(1, 4, 3, 5)?)
        .mul(&x(1, 5, 2, 3)?)
        .sub(&x(1, 4, 2, 3)?.mul(&x(1, 5, 3, 4)?).mul(&x(1, 2, 3, 5)?));
    let c_prime = x(1, 5, 2, 6)?
        .mul(&x(1, 6, 2, 3)?)
        .mul(&x(1, 3, 2, 5)?)
        .sub(&x(1, 6, 2, 5)?.mul(&x(1, 3, 2, 6)?).mul(&x(1, 5, 2, 3)?));
    // Exact cofactor identity for the first rewrite.
    let lhs = g.sub(&x(1, 2, 3, 4)?.mul(&x(1, 4, 3, 5)?).mul(&c_prime));
    let rhs = x(1, 6, 2, 5)?.mul(&x(1, 3, 2, 6)?).mul(&f);
    if lhs != rhs {
        return Ok(false);
    }
    // The first rewrite rule is a cubic of the ordered family; the second
    // is the cubic shape at the permuted letters (1, 3, 2, 5, 6).
    let cubics: Vec<Polynomial> = cubic_binomials(6)?
        .iter()
        .map(|b| b.as_polynomial())
        .collect();
    if !cubics.contains(&f) && !cubics.contains(&f.neg()) {
        return Ok(false);
    }
    let shape = cubic_shape(&[1, 3, 2, 5, 6], 6)?;
    if c_prime != shape && c_prime.neg() != shape {
        return Ok(false);
    }
    let order = crate::poly::groebner::default_order(&[g.clone(), f.clone(), c_prime.clone()]);
    let (rem, _) = reduce(&g, &[f, c_prime], &order);
    Ok(rem.is_zero())
}

/// The cubic-binomial shape instantiated at an arbitrary distinct letter
/// tuple (h, i, j, k, l), with every pair index sign-canonicalized.
fn cubic_shape(letters: &[u8; 5], n: u8) -> Result<Polynomial> {
    let [h, i, j, k, l] = *letters;
    let assemble = |pairs: [([u8; 2], [u8; 2]); 3]| -> Result<(i8, Monomial)> {
        let mut sign = 1i8;
        let mut m = Monomial::one();
        for (u, v) in pairs {
            let su = crate::index::canonical_plucker(&u, n)?;
            let sv = crate::index::canonical_plucker(&v, n)?;
            let (crate::index::SignedIndex::Signed { index: iu, sign: gu },
                 crate::index::SignedIndex::Signed { index: iv, sign: gv }) = (su, sv)
            else {
                return Err(Error::InvalidParameter("repeated letters in cubic shape".into()));
            };
            sign *= gu * gv;
            m = m.mul(&Monomial::var(VarId::X(PairIndex::new(iu, iv))));
        }
        Ok((sign, m))
    };
    let (sp, plus) = assemble([([h, i], [j, k]), ([h, k], [j, l]), ([h, l], [i, j])])?;
    let (sm, minus) = assemble([([h, k], [i, j]), ([h, l], [j, k]), ([h, i], [j, l])])?;
    Ok(Polynomial::from_terms([
        (Coeff::from_integer(sp.into()), plus),
        (-Coeff::from_integer(sm.into()), minus),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::BlockString;
    use crate::relations::wp_binomials;

    fn bs(l: &[u8]) -> BlockString {
        BlockString::new(l).unwrap()
    }

    fn mi(e: &[u8]) -> MultiIndex {
        MultiIndex::new(e).unwrap()
    }

    fn xp(u: &[u8], v: &[u8]) -> VarId {
        VarId::X(PairIndex::new(mi(u), mi(v)))
    }

    #[test]
    fn build_phi_2_4_has_single_pair_block() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let spec = build_map(MapKind::Phi, &dec, None, None, &Budget::default()).unwrap();
        let xs: Vec<VarId> = spec
            .source_vars()
            .iter()
            .filter(|v| matches!(v, VarId::X(_)))
            .copied()
            .collect();
        assert_eq!(xs.len(), 3);
        let blocks: BTreeSet<BlockId> = xs.iter().map(|v| spec.block_of(v).unwrap()).collect();
        assert_eq!(blocks.len(), 1);
        // phi(x_(12,34)) = p12 p34.
        let img = apply_map(&spec, &Polynomial::from_var(xp(&[1, 2], &[3, 4]))).unwrap();
        let want = Polynomial::from_term(
            Coeff::one(),
            Monomial::var(VarId::P(mi(&[1, 2]))).mul(&Monomial::var(VarId::P(mi(&[3, 4])))),
        );
        assert_eq!(img, want);
    }

    #[test]
    fn build_rho_bullet_3_1() {
        let dec = Decomposition::new(&[3, 1], 2).unwrap();
        let spec = build_map(MapKind::RhoBullet, &dec, None, None, &Budget::default()).unwrap();
        let img11 = spec.image_of(&VarId::Xa(bs(&[1, 1]))).unwrap();
        let want11 = Polynomial::from_term(Coeff::one(), Monomial::var(VarId::T(1)).pow(2));
        assert_eq!(img11, &want11);
        let img12 = spec.image_of(&VarId::Xa(bs(&[1, 2]))).unwrap();
        let want12 = Polynomial::from_term(
            Coeff::one(),
            Monomial::var(VarId::T(1)).mul(&Monomial::var(VarId::T(2))),
        );
        assert_eq!(img12, &want12);
    }

    #[test]
    fn zeta_with_all_ones_point_equals_zeta() {
        let dec = Decomposition::new(&[3, 1], 2).unwrap();
        let ones = RationalPoint::all_ones(2, 4).unwrap();
        let zeta = build_map(MapKind::Zeta, &dec, None, None, &Budget::default()).unwrap();
        let zeta_p =
            build_map(MapKind::ZetaP, &dec, None, Some(&ones), &Budget::default()).unwrap();
        for v in zeta.source_vars() {
            assert_eq!(zeta.image_of(v), zeta_p.image_of(v));
        }
    }

    #[test]
    fn phi_gr_kills_the_linearized_relation() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let spec = build_map(MapKind::PhiGrRho, &dec, None, None, &Budget::default()).unwrap();
        let l = plucker_relations(2, 4).unwrap()[0].linearize();
        let img = apply_map(&spec, &l).unwrap();
        assert!(img.is_zero());
        let membership = verify_kernel_membership(&l, &spec).unwrap();
        assert!(membership.member);
    }

    #[test]
    fn theta_small_examples() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let ones = RationalPoint::all_ones(2, 4).unwrap();
        let eval = theta_eval(&ones, &dec, None).unwrap();
        assert!(!eval.degenerate);
        assert!(!eval.j_vanishes);
        let w = SortedPair::try_new(&bs(&[1, 3]), &bs(&[2, 4])).unwrap();
        let block = eval.point.as_ref().unwrap().w_block(&w).unwrap();
        assert_eq!(block.len(), 3);
        assert!(block.values().all(|c| c.is_one()));

        // Single nonzero coordinate: degenerate, and the product ideal
        // vanishes.
        let mut coords: BTreeMap<MultiIndex, Coeff> = multi_indices(2, 4)
            .unwrap()
            .into_iter()
            .map(|u| (u, Coeff::zero()))
            .collect();
        coords.insert(mi(&[1, 2]), Coeff::one());
        let p = RationalPoint::new(2, 4, coords).unwrap();
        let eval = theta_eval(&p, &dec, None).unwrap();
        assert!(eval.degenerate);
        assert!(eval.j_vanishes);
        assert!(eval.point.is_none());
    }

    #[test]
    fn theta_3_1_all_ones() {
        let dec = Decomposition::new(&[3, 1], 2).unwrap();
        let ones = RationalPoint::all_ones(2, 4).unwrap();
        let eval = theta_eval(&ones, &dec, None).unwrap();
        assert!(!eval.degenerate);
        let point = eval.point.unwrap();
        for (_, block) in point.y_blocks() {
            assert_eq!(block.len(), 3);
            assert!(block.values().all(|c| c.is_one()));
        }
        for (_, block) in point.w_blocks() {
            assert!(block.values().all(|c| c.is_one()));
        }
    }

    #[test]
    fn kernel_phi_rho_2_4_is_trivial() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let spec = build_map(MapKind::PhiRho, &dec, None, None, &Budget::default()).unwrap();
        let report = kernel_mh(&spec, 10, &Budget::default()).unwrap();
        assert!(report.generators.is_empty());
        assert!(report.multi_homogeneous);
    }

    #[test]
    fn kernel_phi_gr_rho_2_4_is_the_line() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let spec = build_map(MapKind::PhiGrRho, &dec, None, None, &Budget::default()).unwrap();
        let report = kernel_mh(&spec, 10, &Budget::default()).unwrap();
        assert_eq!(report.generators.len(), 1);
        let want = plucker_relations(2, 4).unwrap()[0].linearize();
        assert_eq!(report.generators[0].primitive_part(), want.primitive_part());
    }

    #[test]
    fn kernel_zeta_p_matches_orbit_system() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let ones = RationalPoint::all_ones(2, 4).unwrap();
        let spec =
            build_map(MapKind::ZetaP, &dec, None, Some(&ones), &Budget::default()).unwrap();
        let report = kernel_mh(&spec, 10, &Budget::default()).unwrap();
        let order = orbit_order(&dec).unwrap();
        let from_kernel =
            reduce_basis(&buchberger(&report.generators, &order, &Budget::default()).unwrap());
        let orbit = orbit_gb(&ones, &dec, false).unwrap();
        let from_orbit = reduce_basis(&buchberger(&orbit, &order, &Budget::default()).unwrap());
        assert_eq!(from_kernel.generators, from_orbit.generators);
    }

    #[test]
    fn wp_binomials_are_kernel_members() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let spec = build_map(MapKind::Phi, &dec, None, None, &Budget::default()).unwrap();
        let w = SortedPair::try_new(&bs(&[1, 3]), &bs(&[2, 4])).unwrap();
        for b in wp_binomials(&w, &dec).unwrap() {
            let m = verify_kernel_membership(&b.as_polynomial(), &spec).unwrap();
            assert!(m.member);
        }
    }

    #[test]
    fn cubics_are_kernel_members_of_phi_rho() {
        for n in [5u8, 6] {
            let dec = Decomposition::unit_blocks(2, n).unwrap();
            let spec = build_map(MapKind::PhiRho, &dec, None, None, &Budget::default()).unwrap();
            for b in cubic_binomials(n).unwrap() {
                let m = verify_kernel_membership(&b.as_polynomial(), &spec).unwrap();
                assert!(m.member);
            }
        }
    }

    #[test]
    fn h_quotient_3_1_single_bilinear_generator() {
        let dec = Decomposition::new(&[3, 1], 2).unwrap();
        let gens = h_quotient_projection(&dec, 4, &Budget::default()).unwrap();
        assert_eq!(gens.len(), 1);
        let y = |e: &[u8]| Monomial::var(VarId::Y(mi(e)));
        let want = Polynomial::from_terms([
            (Coeff::one(), y(&[1, 2]).mul(&y(&[3, 4]))),
            (-Coeff::one(), y(&[1, 3]).mul(&y(&[2, 4]))),
            (Coeff::one(), y(&[1, 4]).mul(&y(&[2, 3]))),
        ]);
        assert_eq!(gens[0].primitive_part(), want.primitive_part());
        // Bihomogeneous of degree (1, 1) across the two fibers.
        let first_fiber: BTreeSet<MultiIndex> =
            [mi(&[1, 2]), mi(&[1, 3]), mi(&[2, 3])].into_iter().collect();
        for (m, _) in gens[0].terms() {
            let d1 = m.degree_where(|v| matches!(v, VarId::Y(u) if first_fiber.contains(u)));
            let d2 = m.degree_where(|v| matches!(v, VarId::Y(u) if !first_fiber.contains(u)));
            assert_eq!((d1, d2), (1, 1));
        }
    }

    #[test]
    fn hilbert_orbit_2_4_baseline() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let ones = RationalPoint::all_ones(2, 4).unwrap();
        let h = hilbert_orbit(&ones, &dec, 2, &Budget::default()).unwrap();
        assert_eq!(h, vec![1, 6, 19]);
    }

    #[test]
    fn quintic_reduction_replays() {
        assert!(quintic_reduction_holds().unwrap());
    }

    #[test]
    fn degree_cap_is_validated() {
        let dec = Decomposition::unit_blocks(2, 4).unwrap();
        let spec = build_map(MapKind::PhiRho, &dec, None, None, &Budget::default()).unwrap();
        assert!(kernel_mh(&spec, 0, &Budget::default()).is_err());
    }

    #[test]
    fn subset_restriction_is_validated() {
        let dec = Decomposition::unit_blocks(2, 5).unwrap();
        let keys = crate::index::lambda_sort(2, 5).unwrap();
        let spec =
            build_map(MapKind::PhiRho, &dec, Some(&keys[..2]), None, &Budget::default()).unwrap();
        let xs = spec
            .source_vars()
            .iter()
            .filter(|v| matches!(v, VarId::X(_)))
            .count();
        assert_eq!(xs, 6);
        // A diagonal pair is not a valid key.
        let bad = SortedPair::try_new(&bs(&[1, 2]), &bs(&[1, 2])).unwrap();
        assert!(build_map(MapKind::PhiRho, &dec, Some(&[bad]), None, &Budget::default()).is_err());
    }
}
