// temporary probe: shape-family closure of the cubic relations
use gquot::index::{canonical_plucker, MultiIndex, PairIndex, SignedIndex};
use gquot::poly::{buchberger, reduce, Monomial, Polynomial, TermOrder, VarId, Coeff};
use gquot::{Budget};
use num::One;
use std::collections::BTreeSet;

fn shape(letters: [u8; 5], n: u8) -> Option<(Monomial, Monomial)> {
    let [h, i, j, k, l] = letters;
    let mk = |pairs: [([u8; 2], [u8; 2]); 3]| -> Option<(i8, Monomial)> {
        let mut sign = 1i8;
        let mut m = Monomial::one();
        for (u, v) in pairs {
            let (SignedIndex::Signed { index: iu, sign: su }, SignedIndex::Signed { index: iv, sign: sv }) =
                (canonical_plucker(&u, n).ok()?, canonical_plucker(&v, n).ok()?)
            else { return None };
            sign *= su * sv;
            m = m.mul(&Monomial::var(VarId::X(PairIndex::new(iu, iv))));
        }
        Some((sign, m))
    };
    let (sp, plus) = mk([([h,i],[j,k]), ([h,k],[j,l]), ([h,l],[i,j])])?;
    let (sm, minus) = mk([([h,k],[i,j]), ([h,l],[j,k]), ([h,i],[j,l])])?;
    assert_eq!(sp, sm, "sides canonicalize with equal signs");
    if plus == minus { return None; }
    Some(if plus < minus { (plus, minus) } else { (minus, plus) })
}

fn shape_family(n: u8) -> Vec<Polynomial> {
    let mut set: BTreeSet<(Monomial, Monomial)> = BTreeSet::new();
    let idx: Vec<u8> = (1..=n).collect();
    // all ordered 5-tuples of distinct letters
    fn perms(pool: &[u8], k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k { out.push(cur.clone()); return; }
        for &v in pool {
            if !cur.contains(&v) { cur.push(v); perms(pool, k, cur, out); cur.pop(); }
        }
    }
    let mut tuples = Vec::new();
    perms(&idx, 5, &mut Vec::new(), &mut tuples);
    for t in tuples {
        if let Some(pair) = shape([t[0],t[1],t[2],t[3],t[4]], n) {
            set.insert(pair);
        }
    }
    set.into_iter().map(|(a,b)| Polynomial::from_terms([(Coeff::one(), a), (-Coeff::one(), b)])).collect()
}

fn main() {
    for n in [5u8, 6] {
        let fam = shape_family(n);
        println!("n={}: shape family size = {}", n, fam.len());
    }
    // n = 5: do the 25 kernel generators reduce mod the shape family?
    let dec = gquot::index::Decomposition::unit_blocks(2, 5).unwrap();
    let spec = gquot::maps::build_map(gquot::maps::MapKind::PhiRho, &dec, None, None, &Budget::default()).unwrap();
    let report = gquot::maps::kernel_mh(&spec, 10, &Budget::default()).unwrap();
    println!("kernel gens: {}", report.generators.len());
    let fam = shape_family(5);
    let vars: Vec<VarId> = spec.source_vars().to_vec();
    let order = TermOrder::degrevlex(vars);
    let gb = buchberger(&fam, &order, &Budget::default()).unwrap();
    println!("shape family GB size: {}", gb.generators.len());
    let mut ok = 0; let mut bad = 0;
    for g in &report.generators {
        let (rem, _) = reduce(g, &gb.generators, &order);
        if rem.is_zero() { ok += 1 } else { bad += 1; }
    }
    println!("n=5 kernel gens reducing to 0 mod shape family: {} / {}", ok, ok + bad);
    // and conversely: shape family members lie in the kernel ideal
    let korder = gquot::poly::groebner::default_order(&report.generators);
    let kgb = buchberger(&report.generators, &korder, &Budget::default()).unwrap();
    let mut fam_in_kernel = 0;
    for f in &fam {
        let (rem, _) = reduce(f, &kgb.generators, &korder);
        if rem.is_zero() { fam_in_kernel += 1; }
    }
    println!("shape members inside kernel ideal: {} / {}", fam_in_kernel, fam.len());
}
