//! Index combinatorics for block decompositions of a ground set.
//!
//! A decomposition splits the ground set `[1..ñ]` into consecutive blocks of
//! sizes `r_1..r_n`. This module enumerates the index sets attached to such a
//! split: strictly increasing d-tuples (Plücker indices), compositions of d
//! bounded by the block sizes, their weakly increasing string encodings,
//! sorted pairs of strings, the fibers of the block map, and the pair sets
//! `Λ_w` aggregating Plücker index pairs by their sorted key.
//!
//! All enumerations emit lexicographic order on the underlying tuples so that
//! output is reproducible, and unordered pairs store the lexicographically
//! smaller half first.

use crate::{Error, Result};
use std::fmt;

/// Hard cap on tuple length; covers d and d+1 tuples at desk scale.
pub const MAX_TUPLE: usize = 8;

/// A strictly increasing d-tuple in `[1..m]`; the index of a Plücker variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    len: u8,
    entries: [u8; MAX_TUPLE],
}

impl MultiIndex {
    pub fn new(entries: &[u8]) -> Result<Self> {
        if entries.is_empty() || entries.len() > MAX_TUPLE {
            return Err(Error::InvalidParameter(format!(
                "multi-index length {} out of range 1..={}",
                entries.len(),
                MAX_TUPLE
            )));
        }
        for w in entries.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidParameter(format!(
                    "multi-index {:?} is not strictly increasing",
                    entries
                )));
            }
        }
        if entries[0] == 0 {
            return Err(Error::InvalidParameter("multi-index entries are 1-based".into()));
        }
        let mut e = [0u8; MAX_TUPLE];
        e[..entries.len()].copy_from_slice(entries);
        Ok(MultiIndex { len: entries.len() as u8, entries: e })
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: u8) -> bool {
        self.entries().contains(&v)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A Plücker symbol brought to canonical form: either the zero symbol
/// (repeated entries) or a sorted index with the sign of the sorting
/// permutation. The zero case is an explicit variant so it can never be
/// mistaken for a variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignedIndex {
    Zero,
    Signed { index: MultiIndex, sign: i8 },
}

impl SignedIndex {
    pub fn sign(&self) -> i8 {
        match self {
            SignedIndex::Zero => 0,
            SignedIndex::Signed { sign, .. } => *sign,
        }
    }

    pub fn index(&self) -> Option<MultiIndex> {
        match self {
            SignedIndex::Zero => None,
            SignedIndex::Signed { index, .. } => Some(*index),
        }
    }
}

/// Sorts a raw integer tuple into a canonical Plücker symbol.
///
/// Repeated entries give the zero symbol; otherwise the entries are sorted
/// and the sign of the sorting permutation is attached. Entries must lie in
/// `[1..m]`.
pub fn canonical_plucker(raw: &[u8], m: u8) -> Result<SignedIndex> {
    if raw.is_empty() || raw.len() > MAX_TUPLE {
        return Err(Error::InvalidParameter(format!(
            "tuple length {} out of range",
            raw.len()
        )));
    }
    for &v in raw {
        if v == 0 || v > m {
            return Err(Error::InvalidParameter(format!(
                "entry {v} outside ground set [1..{m}]"
            )));
        }
    }
    let mut v = raw.to_vec();
    // Insertion sort, counting inversions for the permutation sign.
    let mut inversions = 0usize;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            inversions += 1;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return Ok(SignedIndex::Zero);
        }
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Ok(SignedIndex::Signed { index: MultiIndex::new(&v)?, sign })
}

/// Block sizes `(r_1..r_n)` of a decomposition of the ground set `[1..ñ]`
/// into consecutive intervals, together with the tuple length d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    block_sizes: Vec<u8>,
    d: u8,
}

impl Decomposition {
    pub fn new(block_sizes: &[u8], d: u8) -> Result<Self> {
        if block_sizes.is_empty() || block_sizes.iter().any(|&r| r == 0) {
            return Err(Error::InvalidParameter(
                "block sizes must be a nonempty list of positive integers".into(),
            ));
        }
        let total: u32 = block_sizes.iter().map(|&r| r as u32).sum();
        if total > u8::MAX as u32 {
            return Err(Error::InvalidParameter("ground set too large".into()));
        }
        if d == 0 || d as u32 > total {
            return Err(Error::InvalidParameter(format!(
                "d = {d} out of range 1..={total}"
            )));
        }
        if d as usize > MAX_TUPLE {
            return Err(Error::InvalidParameter(format!("d = {d} exceeds {MAX_TUPLE}")));
        }
        Ok(Decomposition { block_sizes: block_sizes.to_vec(), d })
    }

    /// Unit-block decomposition: the maximal torus case, ñ = n.
    pub fn unit_blocks(d: u8, n: u8) -> Result<Self> {
        Decomposition::new(&vec![1u8; n as usize], d)
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    /// Number of blocks n.
    pub fn num_blocks(&self) -> u8 {
        self.block_sizes.len() as u8
    }

    pub fn block_sizes(&self) -> &[u8] {
        &self.block_sizes
    }

    /// Size of the ground set ñ = Σ r_α.
    pub fn ground_size(&self) -> u8 {
        self.block_sizes.iter().map(|&r| r as u32).sum::<u32>() as u8
    }

    pub fn is_unit_blocks(&self) -> bool {
        self.block_sizes.iter().all(|&r| r == 1)
    }

    /// Block boundary ñ_α = r_1 + ⋯ + r_α, with ñ_0 = 0.
    pub fn boundary(&self, alpha: u8) -> u8 {
        self.block_sizes[..alpha as usize]
            .iter()
            .map(|&r| r as u32)
            .sum::<u32>() as u8
    }

    /// Ground-set interval of block α: `(ñ_{α-1} + 1 ..= ñ_α)`.
    pub fn block_interval(&self, alpha: u8) -> std::ops::RangeInclusive<u8> {
        (self.boundary(alpha - 1) + 1)..=self.boundary(alpha)
    }

    /// The block containing ground element v.
    pub fn block_of(&self, v: u8) -> Result<u8> {
        if v == 0 || v > self.ground_size() {
            return Err(Error::InvalidParameter(format!(
                "ground element {v} out of range"
            )));
        }
        let mut acc = 0u8;
        for (i, &r) in self.block_sizes.iter().enumerate() {
            acc += r;
            if v <= acc {
                return Ok((i + 1) as u8);
            }
        }
        unreachable!()
    }

    /// The composition recording how many entries of `u` fall in each block.
    pub fn composition_of_index(&self, u: &MultiIndex) -> Result<Composition> {
        let mut parts = vec![0u8; self.block_sizes.len()];
        for &v in u.entries() {
            parts[self.block_of(v)? as usize - 1] += 1;
        }
        Composition::new(&parts, self)
    }

    /// The block string of the fiber containing `u`.
    pub fn string_of_index(&self, u: &MultiIndex) -> Result<BlockString> {
        string_of_composition(&self.composition_of_index(u)?)
    }
}

/// A composition `(i_1..i_n)` of d with `0 ≤ i_α ≤ r_α`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    len: u8,
    parts: [u8; MAX_TUPLE],
}

impl Composition {
    pub fn new(parts: &[u8], dec: &Decomposition) -> Result<Self> {
        if parts.len() != dec.block_sizes.len() {
            return Err(Error::InvalidParameter(format!(
                "composition has {} parts, decomposition has {} blocks",
                parts.len(),
                dec.block_sizes.len()
            )));
        }
        if parts.len() > MAX_TUPLE {
            return Err(Error::InvalidParameter("too many blocks".into()));
        }
        let total: u32 = parts.iter().map(|&p| p as u32).sum();
        if total != dec.d as u32 {
            return Err(Error::InvalidParameter(format!(
                "composition {:?} does not sum to d = {}",
                parts, dec.d
            )));
        }
        for (alpha, (&p, &r)) in parts.iter().zip(&dec.block_sizes).enumerate() {
            if p > r {
                return Err(Error::InvalidParameter(format!(
                    "part {} exceeds block size {} at block {}",
                    p,
                    r,
                    alpha + 1
                )));
            }
        }
        let mut a = [0u8; MAX_TUPLE];
        a[..parts.len()].copy_from_slice(parts);
        Ok(Composition { len: parts.len() as u8, parts: a })
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts[..self.len as usize]
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts())
    }
}

/// A weakly increasing string of length d over the alphabet `[1..n]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockString {
    len: u8,
    letters: [u8; MAX_TUPLE],
}

impl BlockString {
    pub fn new(letters: &[u8]) -> Result<Self> {
        if letters.is_empty() || letters.len() > MAX_TUPLE {
            return Err(Error::InvalidParameter(format!(
                "string length {} out of range",
                letters.len()
            )));
        }
        if letters[0] == 0 {
            return Err(Error::InvalidParameter("letters are 1-based".into()));
        }
        for w in letters.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidParameter(format!(
                    "string {:?} is not weakly increasing",
                    letters
                )));
            }
        }
        let mut a = [0u8; MAX_TUPLE];
        a[..letters.len()].copy_from_slice(letters);
        Ok(BlockString { len: letters.len() as u8, letters: a })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Strictly increasing strings are also multi-indices.
    pub fn as_multi_index(&self) -> Option<MultiIndex> {
        MultiIndex::new(self.letters()).ok()
    }
}

impl fmt::Debug for BlockString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"")?;
        for (i, l) in self.letters().iter().enumerate() {
            if i > 0 && self.letters().iter().any(|&x| x > 9) {
                write!(f, ".")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "\"")
    }
}

/// An unordered pair of block strings whose interleave is weakly increasing.
/// Stored with the half occupying the odd interleave positions first, which
/// is canonical.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortedPair {
    odd: BlockString,
    even: BlockString,
}

impl SortedPair {
    /// Builds the pair from two strings if some arrangement of them is
    /// sorted; returns `None` otherwise.
    pub fn try_new(a: &BlockString, b: &BlockString) -> Option<SortedPair> {
        if is_sorted(a.letters(), b.letters()) {
            Some(SortedPair { odd: *a, even: *b })
        } else if is_sorted(b.letters(), a.letters()) {
            Some(SortedPair { odd: *b, even: *a })
        } else {
            None
        }
    }

    /// The sorted pair obtained by sorting the interleave of any two
    /// equal-length strings and splitting it back by parity of position.
    pub fn sort_of(a: &[u8], b: &[u8]) -> Result<SortedPair> {
        let mut inter = interleave(a, b)?;
        inter.sort_unstable();
        let odd: Vec<u8> = inter.iter().copied().step_by(2).collect();
        let even: Vec<u8> = inter.iter().copied().skip(1).step_by(2).collect();
        Ok(SortedPair {
            odd: BlockString::new(&odd)?,
            even: BlockString::new(&even)?,
        })
    }

    pub fn odd(&self) -> &BlockString {
        &self.odd
    }

    pub fn even(&self) -> &BlockString {
        &self.even
    }

    /// The sorted interleave string.
    pub fn interleaved(&self) -> Vec<u8> {
        interleave(self.odd.letters(), self.even.letters()).expect("equal lengths")
    }

    /// Number of distinct letters in the interleave.
    pub fn distinct_letters(&self) -> usize {
        let mut v = self.interleaved();
        v.dedup();
        v.len()
    }

    /// Support of the pair as a sorted deduplicated letter list.
    pub fn support(&self) -> Vec<u8> {
        let mut v = self.interleaved();
        v.dedup();
        v
    }
}

impl fmt::Debug for SortedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.odd, self.even)
    }
}

/// An unordered pair of Plücker indices, stored smaller half first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairIndex {
    u: MultiIndex,
    v: MultiIndex,
}

impl PairIndex {
    pub fn new(a: MultiIndex, b: MultiIndex) -> PairIndex {
        if a <= b {
            PairIndex { u: a, v: b }
        } else {
            PairIndex { u: b, v: a }
        }
    }

    pub fn u(&self) -> &MultiIndex {
        &self.u
    }

    pub fn v(&self) -> &MultiIndex {
        &self.v
    }

    /// The sorted key `sort(u ∨ v)` of the pair.
    pub fn key(&self) -> SortedPair {
        SortedPair::sort_of(self.u.entries(), self.v.entries()).expect("equal lengths")
    }
}

impl fmt::Debug for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.u, self.v)
    }
}

/// All strictly increasing d-tuples in `[1..m]`, lexicographically ordered.
pub fn multi_indices(d: u8, m: u8) -> Result<Vec<MultiIndex>> {
    if d == 0 || d > m {
        return Err(Error::InvalidParameter(format!(
            "multi_indices requires 1 <= d <= m, got d = {d}, m = {m}"
        )));
    }
    if d as usize > MAX_TUPLE {
        return Err(Error::InvalidParameter(format!("d = {d} exceeds {MAX_TUPLE}")));
    }
    let d = d as usize;
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=d as u8).collect();
    loop {
        out.push(MultiIndex::new(&cur)?);
        // Advance to the next tuple in lexicographic order.
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < m - (d - 1 - i) as u8 {
                cur[i] += 1;
                for j in i + 1..d {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All compositions of d bounded by the block sizes, in the lexicographic
/// order of their string encodings.
pub fn composition_set(dec: &Decomposition) -> Vec<Composition> {
    block_strings(dec)
        .iter()
        .map(|s| composition_of_string(s, dec).expect("string from this decomposition"))
        .collect()
}

/// All weakly increasing strings of length d with at most `r_α` copies of
/// the letter α, lexicographically ordered.
pub fn block_strings(dec: &Decomposition) -> Vec<BlockString> {
    let n = dec.num_blocks();
    let d = dec.d() as usize;
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(d);
    fn rec(cur: &mut Vec<u8>, d: usize, n: u8, dec: &Decomposition, out: &mut Vec<BlockString>) {
        if cur.len() == d {
            out.push(BlockString::new(cur).expect("weakly increasing by construction"));
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for letter in lo..=n {
            let used = cur.iter().filter(|&&l| l == letter).count();
            if used < dec.block_sizes()[letter as usize - 1] as usize {
                cur.push(letter);
                rec(cur, d, n, dec, out);
                cur.pop();
            }
        }
    }
    rec(&mut cur, d, n, dec, &mut out);
    out
}

/// The string `1…1 2…2 ⋯ n…n` with `i_α` copies of α.
pub fn string_of_composition(i: &Composition) -> Result<BlockString> {
    let mut letters = Vec::new();
    for (alpha, &count) in i.parts().iter().enumerate() {
        for _ in 0..count {
            letters.push((alpha + 1) as u8);
        }
    }
    BlockString::new(&letters)
}

/// Inverse of [`string_of_composition`]: counts letter occurrences.
pub fn composition_of_string(a: &BlockString, dec: &Decomposition) -> Result<Composition> {
    let mut parts = vec![0u8; dec.num_blocks() as usize];
    for &l in a.letters() {
        if l == 0 || l > dec.num_blocks() {
            return Err(Error::InvalidParameter(format!(
                "letter {l} outside alphabet [1..{}]",
                dec.num_blocks()
            )));
        }
        parts[l as usize - 1] += 1;
    }
    Composition::new(&parts, dec)
}

/// The interleave `a ∨ b = a_1 b_1 a_2 b_2 ⋯ a_d b_d`.
pub fn interleave(a: &[u8], b: &[u8]) -> Result<Vec<u8>> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "interleave requires equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let mut out = Vec::with_capacity(2 * a.len());
    for i in 0..a.len() {
        out.push(a[i]);
        out.push(b[i]);
    }
    Ok(out)
}

/// Weakly increasing sort of a tuple.
pub fn sort_tuple(t: &[u8]) -> Vec<u8> {
    let mut v = t.to_vec();
    v.sort_unstable();
    v
}

/// Whether the interleave `a ∨ b` is weakly increasing, in this order.
pub fn is_sorted(a: &[u8], b: &[u8]) -> bool {
    match interleave(a, b) {
        Ok(inter) => inter.windows(2).all(|w| w[0] <= w[1]),
        Err(_) => false,
    }
}

/// All sorted pairs of block strings of the decomposition, including the
/// diagonal pairs `(k,k)`, deduplicated and lexicographically ordered.
pub fn sorted_pairs(dec: &Decomposition) -> Vec<SortedPair> {
    let strings = block_strings(dec);
    let mut out = Vec::new();
    for (i, a) in strings.iter().enumerate() {
        for b in &strings[i..] {
            if let Some(w) = SortedPair::try_new(a, b) {
                out.push(w);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The fiber `𝕀_i`: all multi-indices drawing exactly `i_α` entries from
/// block α's ground interval, lexicographically ordered.
pub fn fiber_indices(i: &Composition, dec: &Decomposition) -> Vec<MultiIndex> {
    // Per-block combinations, then concatenation; block intervals are
    // consecutive so the concatenation is strictly increasing.
    fn rec(
        alpha: usize,
        i: &Composition,
        dec: &Decomposition,
        cur: &mut Vec<u8>,
        out: &mut Vec<MultiIndex>,
    ) {
        if alpha == i.parts().len() {
            out.push(MultiIndex::new(cur).expect("strictly increasing by construction"));
            return;
        }
        let take = i.parts()[alpha] as usize;
        if take == 0 {
            rec(alpha + 1, i, dec, cur, out);
            return;
        }
        let lo = dec.boundary(alpha as u8) + 1;
        let hi = dec.boundary(alpha as u8 + 1);
        let choices: Vec<u8> = (lo..=hi).collect();
        fn choose(
            choices: &[u8],
            start: usize,
            take: usize,
            alpha: usize,
            i: &Composition,
            dec: &Decomposition,
            cur: &mut Vec<u8>,
            out: &mut Vec<MultiIndex>,
        ) {
            if take == 0 {
                rec(alpha + 1, i, dec, cur, out);
                return;
            }
            for k in start..=choices.len().saturating_sub(take) {
                cur.push(choices[k]);
                choose(choices, k + 1, take - 1, alpha, i, dec, cur, out);
                cur.pop();
            }
        }
        choose(&choices, 0, take, alpha, i, dec, cur, out);
    }
    let mut out = Vec::new();
    rec(0, i, dec, &mut Vec::new(), &mut out);
    out
}

/// The fiber of a block string, via its composition.
pub fn fiber_of_string(a: &BlockString, dec: &Decomposition) -> Result<Vec<MultiIndex>> {
    Ok(fiber_indices(&composition_of_string(a, dec)?, dec))
}

/// `Λ_w`: all unordered pairs `(u,v)` of multi-indices whose block strings
/// rearrange-sort to w. Deduplicated, lexicographically ordered.
pub fn lambda_w(w: &SortedPair, dec: &Decomposition) -> Result<Vec<PairIndex>> {
    // Validity of the key: both halves are strings of this decomposition.
    composition_of_string(w.odd(), dec)?;
    composition_of_string(w.even(), dec)?;
    let indices = multi_indices(dec.d(), dec.ground_size())?;
    let strings: Vec<BlockString> = indices
        .iter()
        .map(|u| dec.string_of_index(u))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, u) in indices.iter().enumerate() {
        for (j, v) in indices.iter().enumerate().skip(i) {
            let key = SortedPair::sort_of(strings[i].letters(), strings[j].letters())?;
            if key == *w {
                out.push(PairIndex::new(*u, *v));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Partition of all unordered index pairs by their sorted key, restricted
/// to keys whose interleave carries at least d+2 distinct letters. One pass
/// over the pairs; the bulk form of [`lambda_w`] for the maximal torus.
pub fn lambda_partition(d: u8, n: u8) -> Result<std::collections::BTreeMap<SortedPair, Vec<PairIndex>>> {
    let indices = multi_indices(d, n)?;
    let mut out: std::collections::BTreeMap<SortedPair, Vec<PairIndex>> =
        std::collections::BTreeMap::new();
    for (i, u) in indices.iter().enumerate() {
        for v in indices.iter().skip(i) {
            let key = SortedPair::sort_of(u.entries(), v.entries())?;
            if key.distinct_letters() >= d as usize + 2 {
                out.entry(key).or_default().push(PairIndex::new(*u, *v));
            }
        }
    }
    for pairs in out.values_mut() {
        pairs.sort_unstable();
    }
    Ok(out)
}

/// Sorted pairs of `𝕀_{d,[n]}` whose interleave carries at least d+2
/// distinct letters (the keys of the non-trivial pair spaces in the maximal
/// torus case).
pub fn lambda_sort(d: u8, n: u8) -> Result<Vec<SortedPair>> {
    let dec = Decomposition::unit_blocks(d, n)?;
    Ok(sorted_pairs(&dec)
        .into_iter()
        .filter(|w| w.distinct_letters() >= d as usize + 2)
        .collect())
}

/// Keeps w if its support lies inside J, else none.
pub fn project_support(w: &SortedPair, j: &[u8]) -> Option<SortedPair> {
    if w.support().iter().all(|s| j.contains(s)) {
        Some(*w)
    } else {
        None
    }
}

/// Inserts the index set I into both halves of w and re-sorts. The support
/// of w must be disjoint from I.
pub fn contract_support(w: &SortedPair, i: &[u8]) -> Result<SortedPair> {
    if w.support().iter().any(|s| i.contains(s)) {
        return Err(Error::InvalidParameter(format!(
            "support of {w:?} overlaps the inserted set {i:?}"
        )));
    }
    let mut odd = w.odd.letters().to_vec();
    odd.extend_from_slice(i);
    odd.sort_unstable();
    let mut even = w.even.letters().to_vec();
    even.extend_from_slice(i);
    even.sort_unstable();
    SortedPair::sort_of(&odd, &even)
}
