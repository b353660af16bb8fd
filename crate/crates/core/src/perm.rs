//! Permutations in one-line notation, classical pattern containment and the
//! left-to-right-maximum structure of the two classes.
//!
//! Positions and values are 1-indexed when they are part of the public
//! vocabulary (`pos_max`, `head`, `at`), matching the usual combinatorial
//! notation `σ(1) … σ(n)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Validates that `entries` is a permutation of `{1, …, entries.len()}`.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 {
                return Err(Error::InvalidPermutation("entry 0 is not allowed".into()));
            }
            if v > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {v} exceeds the length {n} (values must be 1..={n})"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("duplicate entry {v}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn empty() -> Self {
        Permutation { entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { entries: (1..=n).collect() }
    }

    /// `n n−1 … 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation { entries: (1..=n).rev().collect() }
    }

    /// Parses the compact digit form used for short patterns, e.g. `"3214"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::InvalidPermutation(format!("{c:?} is not a digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn last(&self) -> Option<usize> {
        self.entries.last().copied()
    }

    pub fn ends_with_max(&self) -> bool {
        !self.is_empty() && self.last() == Some(self.len())
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains_pattern(self, pattern)
    }

    pub fn avoids(&self, basis: &PatternBasis) -> bool {
        avoids_basis(self, basis)
    }

    /// Compact digit form when every entry is a single digit, otherwise
    /// the space-separated form.
    pub fn to_compact_string(&self) -> String {
        if self.len() <= 9 {
            self.entries.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Space-separated decimal values, e.g. `"4 1 2 6 7 3 10 5 9 8"`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("{tok:?} is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }
}

/// A finite set of patterns defining the class `Av(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternBasis {
    label: String,
    patterns: Vec<Permutation>,
}

impl PatternBasis {
    pub fn new(label: impl Into<String>, patterns: Vec<Permutation>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::InvalidBasis("a basis needs at least one pattern".into()));
        }
        for (i, p) in patterns.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::InvalidBasis("patterns must be non-empty".into()));
            }
            if patterns[..i].contains(p) {
                return Err(Error::InvalidBasis(format!("pattern {} is repeated", p.to_compact_string())));
            }
        }
        Ok(PatternBasis { label: label.into(), patterns })
    }

    fn from_digit_strings(label: &str, pats: &[&str]) -> Self {
        let patterns = pats.iter().map(|p| Permutation::from_digits(p).unwrap()).collect();
        PatternBasis::new(label, patterns).unwrap()
    }

    /// `{3214, 3241, 4213, 4231}`
    pub fn t1() -> Self {
        Self::from_digit_strings("t1", &["3214", "3241", "4213", "4231"])
    }

    /// `{3124, 3142, 4123, 4132}`
    pub fn t2() -> Self {
        Self::from_digit_strings("t2", &["3124", "3142", "4123", "4132"])
    }

    pub fn t1_union_t2() -> Self {
        Self::from_digit_strings(
            "t1t2",
            &["3214", "3241", "4213", "4231", "3124", "3142", "4123", "4132"],
        )
    }

    pub fn single(pattern: Permutation) -> Result<Self> {
        let label = format!("custom:{}", pattern.to_compact_string());
        PatternBasis::new(label, vec![pattern])
    }

    /// `{k k−1 … 1}`
    pub fn decreasing(k: usize) -> Result<Self> {
        Self::single(Permutation::decreasing(k))
    }

    /// The basis with `extra` added (if not already present).
    pub fn with_pattern(&self, extra: Permutation) -> Self {
        let mut patterns = self.patterns.clone();
        let label = format!("{}+{}", self.label, extra.to_compact_string());
        if !patterns.contains(&extra) {
            patterns.push(extra);
        }
        PatternBasis { label, patterns }
    }

    /// Accepts `t1`, `t2`, `t1t2` and `custom:<p1>,<p2>,…` where each
    /// pattern is written in compact digit form (`custom:321,2413`) or with
    /// spaces between entries.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "t1" | "T1" => Ok(Self::t1()),
            "t2" | "T2" => Ok(Self::t2()),
            "t1t2" | "T1T2" => Ok(Self::t1_union_t2()),
            other => {
                let Some(list) = other.strip_prefix("custom:") else {
                    return Err(Error::InvalidBasis(format!(
                        "{other:?}: expected t1, t2, t1t2 or custom:<patterns>"
                    )));
                };
                let patterns = list
                    .split(',')
                    .map(|p| {
                        let p = p.trim();
                        if p.contains(' ') {
                            p.parse::<Permutation>()
                        } else {
                            Permutation::from_digits(p)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                PatternBasis::new(other, patterns)
            }
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn max_pattern_len(&self) -> usize {
        self.patterns.iter().map(Permutation::len).max().unwrap_or(0)
    }
}

/// Tries to extend a partial embedding of `pattern[..depth]` into `word`.
/// `chosen[t]` is the position matched to `pattern[t]`.
fn embed(word: &[usize], pattern: &[usize], chosen: &mut Vec<usize>, start: usize, end: usize) -> bool {
    let depth = chosen.len();
    if depth == pattern.len() {
        return true;
    }
    let remaining = pattern.len() - depth;
    if end < remaining || start > end - remaining {
        return false;
    }
    let pv = pattern[depth];
    for i in start..=end - remaining {
        let v = word[i];
        let consistent = chosen
            .iter()
            .zip(pattern)
            .all(|(&pos, &q)| (word[pos] < v) == (q < pv));
        if consistent {
            chosen.push(i);
            if embed(word, pattern, chosen, i + 1, end) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Whether the word of distinct integers `word` has a subsequence
/// order-isomorphic to `pattern`.
pub fn word_contains(word: &[usize], pattern: &[usize]) -> bool {
    if pattern.len() > word.len() {
        return false;
    }
    embed(word, pattern, &mut Vec::with_capacity(pattern.len()), 0, word.len())
}

/// Whether `word` has an occurrence of `pattern` that uses its last letter.
pub(crate) fn word_contains_ending_at_last(word: &[usize], pattern: &[usize]) -> bool {
    let (Some(&last), Some(&plast)) = (word.last(), pattern.last()) else {
        return false;
    };
    if pattern.len() > word.len() {
        return false;
    }
    let head = &pattern[..pattern.len() - 1];
    let body = &word[..word.len() - 1];
    // Only prefixes compatible with the fixed last letter are accepted.
    let mut chosen = Vec::with_capacity(head.len());
    embed_with_last(body, head, &mut chosen, 0, last, plast)
}

fn embed_with_last(
    word: &[usize],
    pattern: &[usize],
    chosen: &mut Vec<usize>,
    start: usize,
    last: usize,
    plast: usize,
) -> bool {
    let depth = chosen.len();
    if depth == pattern.len() {
        return true;
    }
    let remaining = pattern.len() - depth;
    if start + remaining > word.len() {
        return false;
    }
    let pv = pattern[depth];
    for i in start..=word.len() - remaining {
        let v = word[i];
        let consistent = (v < last) == (pv < plast)
            && chosen.iter().zip(pattern).all(|(&pos, &q)| (word[pos] < v) == (q < pv));
        if consistent {
            chosen.push(i);
            if embed_with_last(word, pattern, chosen, i + 1, last, plast) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Classical containment: some subsequence of `sigma` has the relative order
/// of `pattern`.
pub fn contains_pattern(sigma: &Permutation, pattern: &Permutation) -> bool {
    word_contains(sigma.entries(), pattern.entries())
}

pub fn avoids_basis(sigma: &Permutation, basis: &PatternBasis) -> bool {
    basis.patterns().iter().all(|p| !contains_pattern(sigma, p))
}

/// One block `M_i w_i` of the left-to-right-maximum decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtrBlock {
    pub max: usize,
    pub word: Vec<usize>,
}

/// `σ = M₁ w₁ M₂ w₂ … M_k w_k` where the `M_i` are the left-to-right maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtrDecomposition {
    pub blocks: Vec<LtrBlock>,
}

impl LtrDecomposition {
    /// Number of blocks `k`.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn maxima(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.max).collect()
    }

    /// Lengths `l_i` of the words `w_i`.
    pub fn word_lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.word.len()).collect()
    }

    pub fn last_block(&self) -> &LtrBlock {
        self.blocks.last().expect("decomposition of a non-empty permutation")
    }

    pub fn flatten(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.push(b.max);
            out.extend_from_slice(&b.word);
        }
        out
    }
}

pub fn ltr_decompose(sigma: &Permutation) -> Result<LtrDecomposition> {
    if sigma.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    let mut blocks: Vec<LtrBlock> = Vec::new();
    for &v in sigma.entries() {
        match blocks.last_mut() {
            Some(b) if v < b.max => b.word.push(v),
            _ => blocks.push(LtrBlock { max: v, word: Vec::new() }),
        }
    }
    Ok(LtrDecomposition { blocks })
}

/// The permutation order-isomorphic to a word of distinct integers.
pub fn renormalize(word: &[usize]) -> Result<Permutation> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidPermutation("renormalize needs distinct entries".into()));
    }
    let entries = word
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect();
    Ok(Permutation::from_vec_unchecked(entries))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StatRecord {
    /// Positions `i` with `σ(i) < σ(i+1)`.
    pub asc: usize,
    pub lmax: usize,
    /// 1-indexed position of the value `n`.
    pub pos_max: usize,
    pub head: usize,
    pub lds: usize,
    pub connected: bool,
}

pub fn ascents(sigma: &Permutation) -> usize {
    sigma.entries().windows(2).filter(|w| w[0] < w[1]).count()
}

pub fn descents(sigma: &Permutation) -> usize {
    sigma.entries().windows(2).filter(|w| w[0] > w[1]).count()
}

pub fn lmax_count(sigma: &Permutation) -> usize {
    let mut best = 0;
    let mut count = 0;
    for &v in sigma.entries() {
        if v > best {
            best = v;
            count += 1;
        }
    }
    count
}

pub fn stat_record(sigma: &Permutation) -> Result<StatRecord> {
    if sigma.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    let n = sigma.len();
    let pos_max = sigma.entries().iter().position(|&v| v == n).unwrap() + 1;
    Ok(StatRecord {
        asc: ascents(sigma),
        lmax: lmax_count(sigma),
        pos_max,
        head: sigma.at(1),
        lds: longest_decreasing_length(sigma),
        connected: is_connected(sigma),
    })
}

/// No proper prefix of length `1 ≤ l < n` is a permutation of `{1..l}`.
///
/// The length-1 permutation is reported as not connected: its image under
/// the bijection is the empty path, which is a Dyck path.
pub fn is_connected(sigma: &Permutation) -> bool {
    let n = sigma.len();
    if n <= 1 {
        return false;
    }
    let mut running = 0;
    for (l, &v) in sigma.entries()[..n - 1].iter().enumerate() {
        running = running.max(v);
        if running == l + 1 {
            return false;
        }
    }
    true
}

/// Patience sorting on the negated sequence.
pub fn longest_decreasing_length(sigma: &Permutation) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for &v in sigma.entries() {
        // tails[j] = largest possible last value of a decreasing run of length j+1
        let idx = tails.partition_point(|&t| t > v);
        if idx == tails.len() {
            tails.push(v);
        } else {
            tails[idx] = v;
        }
    }
    tails.len()
}

/// Every letter is the minimum or the maximum of its suffix, i.e. the word
/// avoids 231 and 213.
pub fn is_min_or_max_word(word: &[usize]) -> bool {
    let (mut lo, mut hi) = (usize::MAX, 0);
    for &v in word.iter().rev() {
        let ok = v < lo || v > hi;
        if !ok {
            return false;
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    true
}

/// Every letter is the greatest or the second greatest of its suffix, i.e.
/// the word avoids 123 and 132.
pub fn is_top_two_word(word: &[usize]) -> bool {
    word.iter()
        .enumerate()
        .all(|(i, &v)| word[i + 1..].iter().filter(|&&u| u > v).count() <= 1)
}

/// Structural test for membership in `Av(3214, 3241, 4213, 4231)`.
pub fn validate_t1_structure(sigma: &Permutation) -> bool {
    let Ok(dec) = ltr_decompose(sigma) else {
        return false;
    };
    let n = sigma.len();
    if !is_min_or_max_word(&dec.last_block().word) {
        return false;
    }
    let k = dec.k();
    if k == 1 {
        return true;
    }
    let front = &dec.blocks[..k - 1];
    let inner: Vec<usize> = front.iter().flat_map(|b| b.word.iter().copied()).collect();
    let maxima: Vec<usize> = front.iter().map(|b| b.max).collect();
    let expected: Vec<usize> = (1..n)
        .filter(|v| !maxima.contains(v))
        .take(inner.len())
        .collect();
    inner == expected
}

/// Structural test for membership in `Av(3124, 3142, 4123, 4132)`: the
/// non-final words take, in decreasing order, the greatest symbols still
/// unused below their left-to-right maximum.
pub fn validate_t2_structure(sigma: &Permutation) -> bool {
    let Ok(dec) = ltr_decompose(sigma) else {
        return false;
    };
    let n = sigma.len();
    if !is_top_two_word(&dec.last_block().word) {
        return false;
    }
    let mut used = vec![false; n + 1];
    for block in &dec.blocks[..dec.k() - 1] {
        used[block.max] = true;
        for &v in &block.word {
            let Some(expected) = (1..block.max).rev().find(|&s| !used[s]) else {
                return false;
            };
            if v != expected {
                return false;
            }
            used[v] = true;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// All permutations of `{1..n}` by Heap-free recursion, lexicographic.
    pub(crate) fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation::from_vec_unchecked(cur.clone()));
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
        out
    }

    /// Subset-enumeration oracle for containment, independent of `embed`.
    fn contains_by_subsets(word: &[usize], pattern: &[usize]) -> bool {
        let n = word.len();
        let k = pattern.len();
        if k > n {
            return false;
        }
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|mask| {
            let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| word[i]).collect();
            renormalize(&sub).unwrap().entries() == pattern
        })
    }

    #[test]
    fn containment_examples() {
        assert!(contains_pattern(&p("3 2 4 1"), &p("2 3 1")));
        assert!(!contains_pattern(&p("1 2 3 4 5 6"), &p("2 1")));
        assert!(contains_pattern(&p("3 2 1 4"), &p("3 2 1 4")));
        assert!(!contains_pattern(&p("1 2"), &p("1 2 3")));
    }

    #[test]
    fn containment_agrees_with_subset_oracle() {
        let patterns: Vec<Permutation> = (1..=4).flat_map(all_perms).collect();
        for n in 0..=7 {
            for s in all_perms(n) {
                for q in patterns.iter().filter(|q| q.len() <= 3 || n <= 6) {
                    assert_eq!(
                        contains_pattern(&s, q),
                        contains_by_subsets(s.entries(), q.entries()),
                        "{s} / {q}"
                    );
                }
            }
        }
    }

    #[test]
    fn ending_at_last_matches_difference() {
        for s in all_perms(6) {
            let e = s.entries();
            for q in all_perms(4) {
                let with = word_contains(e, q.entries());
                let without = word_contains(&e[..5], q.entries());
                assert_eq!(word_contains_ending_at_last(e, q.entries()) || without, with);
            }
        }
    }

    #[test]
    fn avoidance_examples() {
        let t1 = PatternBasis::t1();
        let t2 = PatternBasis::t2();
        assert!(!avoids_basis(&p("3 2 4 1"), &t1));
        assert!(avoids_basis(&p("4 1 2 6 7 3 10 5 9 8"), &t1));
        assert!(avoids_basis(&p("4 3 2 6 7 5 10 8 9 1"), &t2));
    }

    #[test]
    fn ltr_examples() {
        let d = ltr_decompose(&p("4 1 2 6 7 3 10 5 9 8")).unwrap();
        assert_eq!(d.maxima(), vec![4, 6, 7, 10]);
        assert_eq!(d.blocks[0].word, vec![1, 2]);
        assert!(d.blocks[1].word.is_empty());
        assert_eq!(d.blocks[2].word, vec![3]);
        assert_eq!(d.blocks[3].word, vec![5, 9, 8]);

        let d = ltr_decompose(&p("1 2 3")).unwrap();
        assert_eq!(d.k(), 3);
        assert!(d.blocks.iter().all(|b| b.word.is_empty()));

        let d = ltr_decompose(&p("2 4 1 3 7 5 9 6 8")).unwrap();
        assert_eq!(d.maxima(), vec![2, 4, 7, 9]);
        assert_eq!(d.word_lengths(), vec![0, 2, 1, 2]);
        assert_eq!(d.blocks[1].word, vec![1, 3]);
        assert_eq!(d.blocks[3].word, vec![6, 8]);

        assert_eq!(ltr_decompose(&Permutation::empty()), Err(Error::EmptyPermutation));
    }

    #[test]
    fn ltr_invariants() {
        for n in 1..=7 {
            for s in all_perms(n) {
                let d = ltr_decompose(&s).unwrap();
                assert_eq!(d.flatten(), s.entries());
                assert!(d.maxima().windows(2).all(|w| w[0] < w[1]));
                assert_eq!(d.last_block().max, n);
                assert!(d.blocks.iter().all(|b| b.word.iter().all(|&v| v < b.max)));
            }
        }
    }

    #[test]
    fn renormalize_examples() {
        assert_eq!(renormalize(&[7, 10, 8]).unwrap(), p("1 3 2"));
        assert_eq!(renormalize(&[5, 9, 8]).unwrap(), p("1 3 2"));
        assert_eq!(renormalize(&[]).unwrap(), Permutation::empty());
        assert!(renormalize(&[3, 3]).is_err());
        for s in all_perms(5) {
            assert_eq!(renormalize(s.entries()).unwrap(), s);
        }
    }

    #[test]
    fn stat_examples() {
        let r = stat_record(&p("2 4 1 3 7 5 9 6 8")).unwrap();
        assert_eq!((r.lmax, r.pos_max), (4, 7));
        let r = stat_record(&p("4 1 6 2 5 3")).unwrap();
        assert_eq!((r.pos_max, r.lmax), (3, 2));
        let r = stat_record(&p("1 2 3")).unwrap();
        assert_eq!(
            r,
            StatRecord { asc: 2, lmax: 3, pos_max: 3, head: 1, lds: 1, connected: false }
        );
        assert_eq!(stat_record(&Permutation::empty()), Err(Error::EmptyPermutation));
    }

    #[test]
    fn connectivity_examples() {
        assert!(!is_connected(&p("2 4 1 3 7 5 9 6 8")));
        assert!(is_connected(&p("3 1 5 2 4")));
        assert!(!is_connected(&p("1")));
        assert!(is_connected(&p("2 1")));
    }

    fn lds_brute(s: &Permutation) -> usize {
        let n = s.len();
        (1u32..1 << n)
            .filter(|mask| {
                let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s.entries()[i]).collect();
                sub.windows(2).all(|w| w[0] > w[1])
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn lds_examples_and_oracle() {
        assert_eq!(longest_decreasing_length(&Permutation::decreasing(7)), 7);
        assert_eq!(longest_decreasing_length(&Permutation::identity(7)), 1);
        assert_eq!(longest_decreasing_length(&p("2 4 1 3 7 5 9 6 8")), 2);
        for n in 1..=7 {
            for s in all_perms(n) {
                assert_eq!(longest_decreasing_length(&s), lds_brute(&s));
                assert_eq!(ascents(&s) + descents(&s), n - 1);
            }
        }
    }

    #[test]
    fn suffix_characterizations_agree_with_containment() {
        let p231 = p("2 3 1");
        let p213 = p("2 1 3");
        let p123 = p("1 2 3");
        let p132 = p("1 3 2");
        for n in 0..=8 {
            for s in all_perms(n) {
                let e = s.entries();
                assert_eq!(is_min_or_max_word(e), !s.contains(&p231) && !s.contains(&p213), "{s}");
                assert_eq!(is_top_two_word(e), !s.contains(&p123) && !s.contains(&p132), "{s}");
            }
        }
    }

    #[test]
    fn structure_validators_examples() {
        assert!(validate_t1_structure(&p("4 1 2 6 7 3 10 5 9 8")));
        assert!(!validate_t1_structure(&p("3 2 4 1")));
        assert!(validate_t1_structure(&p("1")));
        assert!(validate_t2_structure(&p("4 3 2 6 7 5 10 8 9 1")));
        assert!(!validate_t2_structure(&p("3 1 2 4")));
        assert!(validate_t2_structure(&p("1")));
    }

    #[test]
    fn structure_validators_agree_with_avoidance() {
        let t1 = PatternBasis::t1();
        let t2 = PatternBasis::t2();
        for n in 1..=8 {
            for s in all_perms(n) {
                assert_eq!(validate_t1_structure(&s), avoids_basis(&s, &t1), "T1 {s}");
                assert_eq!(validate_t2_structure(&s), avoids_basis(&s, &t2), "T2 {s}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("4 1 2 6 7 3 10 5 9 8").to_string(), "4 1 2 6 7 3 10 5 9 8");
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("1 3".parse::<Permutation>().is_err());
        assert!("1 x".parse::<Permutation>().is_err());
        assert_eq!("".parse::<Permutation>().unwrap(), Permutation::empty());
        assert_eq!(Permutation::from_digits("3214").unwrap(), p("3 2 1 4"));
    }

    #[test]
    fn basis_parsing() {
        assert_eq!(PatternBasis::parse("t1").unwrap(), PatternBasis::t1());
        assert_eq!(PatternBasis::parse("t1t2").unwrap().patterns().len(), 8);
        let b = PatternBasis::parse("custom:321,2413").unwrap();
        assert_eq!(b.patterns(), &[p("3 2 1"), p("2 4 1 3")]);
        assert!(PatternBasis::parse("custom:321,321").is_err());
        assert!(PatternBasis::parse("t3").is_err());
        assert!(PatternBasis::new("x", vec![]).is_err());
    }
}

#[cfg(test)]
pub(crate) use tests::all_perms;
