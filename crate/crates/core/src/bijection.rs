//! The map `Φ` from `Av(T1) ∪ Av(T2)` to Dyck prefixes and its two
//! class-specific inverses.
//!
//! A permutation of length `n + 1` with left-to-right-maximum decomposition
//! `M₁ w₁ … M_k w_k` is sent to
//!
//! ```text
//! U^{M₁} D^{l₁+1} U^{M₂−M₁} D^{l₂+1} … U^{M_{k−1}−M_{k−2}} D^{l_{k−1}+1}
//! ```
//!
//! when `w_k` is empty, and otherwise to the same prefix followed by
//! `U^{M_k−M_{k−1}} Q`, where `Q` has one step per letter of `w_k` except
//! the last: `U` when the letter is the maximum of the remaining suffix,
//! `D` otherwise. The result always has length `2n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::path::{last_return_split, LatticePath, Step};
use crate::perm::{avoids_basis, ltr_decompose, renormalize, PatternBasis, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassTag {
    T1,
    T2,
}

impl ClassTag {
    pub fn basis(self) -> PatternBasis {
        match self {
            ClassTag::T1 => PatternBasis::t1(),
            ClassTag::T2 => PatternBasis::t2(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "t1" => Ok(ClassTag::T1),
            "t2" => Ok(ClassTag::T2),
            other => Err(Error::InvalidBasis(format!("unknown class {other:?}, expected t1 or t2"))),
        }
    }

    pub fn contains(self, sigma: &Permutation) -> bool {
        avoids_basis(sigma, &self.basis())
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::T1 => "t1",
            ClassTag::T2 => "t2",
        })
    }
}

/// `Φ(σ)`, after checking that `σ` lies in one of the two classes.
pub fn phi(sigma: &Permutation) -> Result<LatticePath> {
    if sigma.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    if !ClassTag::T1.contains(sigma) && !ClassTag::T2.contains(sigma) {
        return Err(Error::NotInUnion(sigma.to_string()));
    }
    Ok(phi_unchecked(sigma))
}

/// `Φ(σ)` without the class check. The output is only meaningful (and only
/// guaranteed to be a Dyck prefix) for members of either class.
///
/// # Panics
/// On the empty permutation.
pub fn phi_unchecked(sigma: &Permutation) -> LatticePath {
    let dec = ltr_decompose(sigma).expect("phi of the empty permutation");
    let k = dec.k();
    let mut path = LatticePath::empty();
    let mut prev_max = 0;
    for block in &dec.blocks[..k - 1] {
        push_run(&mut path, Step::U, block.max - prev_max);
        push_run(&mut path, Step::D, block.word.len() + 1);
        prev_max = block.max;
    }
    let last = dec.last_block();
    if !last.word.is_empty() {
        push_run(&mut path, Step::U, last.max - prev_max);
        let w = &last.word;
        for j in 0..w.len() - 1 {
            let is_max = w[j + 1..].iter().all(|&v| v < w[j]);
            path.push(if is_max { Step::U } else { Step::D });
        }
    }
    path
}

fn push_run(path: &mut LatticePath, step: Step, count: usize) {
    for _ in 0..count {
        path.push(step);
    }
}

/// Maximal runs `U^{h₁} D^{s₁} … U^{h_r} D^{s_r}` (`s_r` may be zero).
fn runs(path: &LatticePath) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &s in path.steps() {
        match s {
            Step::U => match out.last_mut() {
                Some((h, 0)) => *h += 1,
                _ => out.push((1, 0)),
            },
            // a prefix starts with U, so there is always a run to extend
            Step::D => out.last_mut().expect("Dyck prefix starts with U").1 += 1,
        }
    }
    out
}

/// Positions (1-indexed) and values of the left-to-right maxima shared by
/// both inverses, together with the start `i` of the tail governed by `Q`
/// and `Q` itself. For a Dyck path `i` is `None`.
struct Skeleton {
    n: usize,
    assigned: Vec<Option<usize>>,
    tail: Option<(usize, Vec<Step>)>,
}

fn skeleton(path: &LatticePath) -> Result<Skeleton> {
    if !path.len().is_multiple_of(2) {
        return Err(Error::PathLength { expected: path.len() + 1, actual: path.len() });
    }
    let n = path.len() / 2;
    // index 0 unused so positions are 1-indexed
    let mut assigned = vec![None; n + 2];
    if n == 0 {
        assigned[1] = Some(1);
        return Ok(Skeleton { n, assigned, tail: None });
    }
    let rs = runs(path);
    if path.is_dyck_path() {
        let (mut pos, mut height) = (1, 0);
        for &(h, s) in &rs {
            height += h;
            assigned[pos] = Some(height);
            pos += s;
        }
        assigned[n + 1] = Some(n + 1);
        return Ok(Skeleton { n, assigned, tail: None });
    }
    // run t holding the (n+1)-th up step
    let (mut pos, mut ups, mut steps_before) = (1, 0, 0);
    for &(h, s) in &rs {
        if ups + h > n {
            assigned[pos] = Some(n + 1);
            let cut = steps_before + (n + 1 - ups);
            let q = path.steps()[cut..].to_vec();
            debug_assert_eq!(q.len(), n - pos);
            return Ok(Skeleton { n, assigned, tail: Some((pos, q)) });
        }
        ups += h;
        assigned[pos] = Some(ups);
        pos += s;
        steps_before += h + s;
    }
    unreachable!("a non-Dyck prefix of length 2n has more than n up steps")
}

struct Unused {
    free: Vec<bool>,
}

impl Unused {
    fn new(top: usize, assigned: &[Option<usize>]) -> Self {
        let mut free = vec![true; top + 1];
        free[0] = false;
        for v in assigned.iter().flatten() {
            free[*v] = false;
        }
        Unused { free }
    }

    fn take(&mut self, v: usize) -> usize {
        debug_assert!(self.free[v]);
        self.free[v] = false;
        v
    }

    fn min(&self) -> usize {
        self.free.iter().position(|&f| f).expect("a free symbol")
    }

    fn max(&self) -> usize {
        self.free.iter().rposition(|&f| f).expect("a free symbol")
    }

    fn second_max(&self) -> usize {
        self.free
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &f)| f)
            .nth(1)
            .map(|(v, _)| v)
            .expect("two free symbols")
    }

    fn max_below(&self, bound: usize) -> usize {
        (1..bound).rev().find(|&v| self.free[v]).expect("a free symbol below the preceding maximum")
    }
}

fn finish(mut slots: Vec<Option<usize>>) -> Permutation {
    slots.remove(0);
    Permutation::from_vec_unchecked(slots.into_iter().map(|v| v.expect("every position filled")).collect())
}

/// `Φ₁⁻¹`: the unique member of `Av(T1)` of length `n + 1` mapped to a
/// prefix of length `2n`.
pub fn phi1_inverse(path: &LatticePath) -> Result<Permutation> {
    let Skeleton { n, mut assigned, tail } = skeleton(path)?;
    let mut unused = Unused::new(n + 1, &assigned);
    let fill_until = tail.as_ref().map_or(n + 1, |(i, _)| *i);
    for slot in assigned.iter_mut().take(fill_until).skip(1) {
        if slot.is_none() {
            *slot = Some(unused.take(unused.min()));
        }
    }
    if let Some((i, q)) = tail {
        for (j, step) in q.iter().enumerate() {
            let v = match step {
                Step::D => unused.min(),
                Step::U => unused.max(),
            };
            assigned[i + 1 + j] = Some(unused.take(v));
        }
        assigned[n + 1] = Some(unused.take(unused.min()));
    }
    Ok(finish(assigned))
}

/// `Φ₂⁻¹`: the unique member of `Av(T2)` of length `n + 1` mapped to a
/// prefix of length `2n`.
pub fn phi2_inverse(path: &LatticePath) -> Result<Permutation> {
    let Skeleton { n, mut assigned, tail } = skeleton(path)?;
    let mut unused = Unused::new(n + 1, &assigned);
    let fill_until = tail.as_ref().map_or(n + 1, |(i, _)| *i);
    let mut current_max = None;
    for slot in assigned.iter_mut().take(fill_until).skip(1) {
        match *slot {
            Some(v) => current_max = Some(v),
            None => {
                // position 1 always carries a maximum
                let bound = current_max.expect("gap before the first left-to-right maximum");
                *slot = Some(unused.take(unused.max_below(bound)));
            }
        }
    }
    if let Some((i, q)) = tail {
        for (j, step) in q.iter().enumerate() {
            let v = match step {
                Step::U => unused.max(),
                Step::D => unused.second_max(),
            };
            assigned[i + 1 + j] = Some(unused.take(v));
        }
        assigned[n + 1] = Some(unused.take(unused.min()));
    }
    Ok(finish(assigned))
}

pub fn phi_inverse(path: &LatticePath, class: ClassTag) -> Result<Permutation> {
    match class {
        ClassTag::T1 => phi1_inverse(path),
        ClassTag::T2 => phi2_inverse(path),
    }
}

/// `ψ`: delete the final entry of a permutation that ends with its maximum.
pub fn psi_delete_last(sigma: &Permutation) -> Result<Permutation> {
    if !sigma.ends_with_max() {
        return Err(Error::NotMaxEnding(sigma.to_string()));
    }
    let mut e = sigma.entries().to_vec();
    e.pop();
    Ok(Permutation::from_vec_unchecked(e))
}

/// Splits `σ = σ′σ″` at the longest proper prefix `σ′` that is a permutation
/// of `{1..l}`, returning `(σ′·(l+1), renormalized σ″)`. `None` when no such
/// prefix exists.
pub fn juxtaposition_split(sigma: &Permutation, class: ClassTag) -> Result<Option<(Permutation, Permutation)>> {
    if sigma.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    if !class.contains(sigma) {
        return Err(Error::NotInClass { perm: sigma.to_string(), class: class.to_string() });
    }
    let e = sigma.entries();
    let mut running = 0;
    let mut split = None;
    for (l, &v) in e[..e.len() - 1].iter().enumerate() {
        running = running.max(v);
        if running == l + 1 {
            split = Some(l + 1);
        }
    }
    Ok(split.map(|l| {
        let mut tau = e[..l].to_vec();
        tau.push(l + 1);
        let rho = renormalize(&e[l..]).expect("distinct entries");
        (Permutation::from_vec_unchecked(tau), rho)
    }))
}

/// `Φ₁(σ)` completed to a Dyck path of semilength `n` for `σ ∈ Sₙ(321)`:
/// append `UD` to a Dyck path and `DD` to a prefix ending at height 2.
pub fn dyck_extension(sigma: &Permutation) -> Result<LatticePath> {
    let p321 = Permutation::decreasing(3);
    if sigma.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    if sigma.contains(&p321) {
        return Err(Error::Contains321(sigma.to_string()));
    }
    let mut path = phi_unchecked(sigma);
    match path.final_height() {
        0 => {
            path.push(Step::U);
            path.push(Step::D);
        }
        2 => {
            path.push(Step::D);
            path.push(Step::D);
        }
        h => unreachable!("321-avoider mapped to a prefix ending at height {h}"),
    }
    Ok(path)
}

/// Cross-check of the last-return decomposition against the permutation
/// split: returns `true` when `Φ(τ)` and `Φ(ρ)` are the two parts.
pub fn split_matches_path(sigma: &Permutation, class: ClassTag) -> Result<bool> {
    let path = phi_unchecked(sigma);
    let parts = last_return_split(&path);
    Ok(match juxtaposition_split(sigma, class)? {
        None => parts.dyck_part.is_empty(),
        Some((tau, rho)) => {
            !parts.dyck_part.is_empty()
                && phi_unchecked(&tau) == parts.dyck_part
                && phi_unchecked(&rho) == parts.floating_part
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{enumerate_prefixes, features, wrap, PathKind};
    use crate::perm::{
        all_perms, ascents, is_connected, lmax_count, longest_decreasing_length, stat_record,
        validate_t1_structure, validate_t2_structure,
    };

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    fn class_members(n: usize, class: ClassTag) -> Vec<Permutation> {
        all_perms(n).into_iter().filter(|s| class.contains(s)).collect()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&p("6 1 2 9 3 4 5 11 12 7 10 8")).unwrap(), lp("UUUUUUDDDUUUDDDDUUDUDU"));
        assert_eq!(phi(&p("2 4 1 3 7 5 9 6 8")).unwrap(), lp("UUDUUDDDUUUDDUUD"));
        for n in 1..8 {
            let expect = "UD".repeat(n - 1);
            assert_eq!(phi(&Permutation::identity(n)).unwrap().to_string(), expect);
        }
        let a = phi(&p("4 1 2 6 7 3 10 5 9 8")).unwrap();
        let b = phi(&p("4 3 2 6 7 5 10 8 9 1")).unwrap();
        assert_eq!(a, lp("UUUUDDDUUDUDDUUUDU"));
        assert_eq!(a, b);
        assert_eq!(phi(&p("1")).unwrap(), LatticePath::empty());
        assert!(matches!(phi(&p("4 3 1 2 5")), Err(Error::NotInUnion(_))));
    }

    #[test]
    fn phi1_inverse_examples() {
        assert_eq!(phi1_inverse(&lp("UUDUUDDD")).unwrap(), p("2 4 1 3 5"));
        assert_eq!(phi1_inverse(&lp("UUUDDUUD")).unwrap(), p("3 1 5 2 4"));
        assert_eq!(phi1_inverse(&lp("UUUUDDUUDU")).unwrap(), p("4 1 6 2 5 3"));
        assert_eq!(phi1_inverse(&lp("UUUUDDUUDD")).unwrap(), p("4 1 6 2 3 5"));
        assert_eq!(phi1_inverse(&LatticePath::empty()).unwrap(), p("1"));
        assert!(phi1_inverse(&lp("UUD")).is_err());
    }

    #[test]
    fn phi2_inverse_examples() {
        assert_eq!(phi2_inverse(&lp("UUUUDDDUUDUDDUUUDU")).unwrap(), p("4 3 2 6 7 5 10 8 9 1"));
        assert_eq!(phi2_inverse(&LatticePath::empty()).unwrap(), p("1"));
        assert_eq!(phi2_inverse(&lp("UU")).unwrap(), p("2 1"));
        assert_eq!(phi2_inverse(&lp("UD")).unwrap(), p("1 2"));
    }

    #[test]
    fn round_trips_on_classes() {
        for n in 1..=8 {
            for class in [ClassTag::T1, ClassTag::T2] {
                for s in class_members(n, class) {
                    let path = phi(&s).unwrap();
                    assert_eq!(path.len(), 2 * (n - 1));
                    assert_eq!(phi_inverse(&path, class).unwrap(), s, "{class} {s}");
                }
            }
        }
    }

    #[test]
    fn inverses_are_total_and_class_valid() {
        for m in (0..=14).step_by(2) {
            for path in enumerate_prefixes(m) {
                let s1 = phi1_inverse(&path).unwrap();
                let s2 = phi2_inverse(&path).unwrap();
                assert!(validate_t1_structure(&s1), "{path} -> {s1}");
                assert!(validate_t2_structure(&s2), "{path} -> {s2}");
                assert_eq!(phi_unchecked(&s1), path);
                assert_eq!(phi_unchecked(&s2), path);
            }
        }
    }

    #[test]
    fn dyck_iff_ends_with_max() {
        for n in 1..=8 {
            for class in [ClassTag::T1, ClassTag::T2] {
                for s in class_members(n, class) {
                    assert_eq!(phi(&s).unwrap().is_dyck_path(), s.ends_with_max());
                }
            }
        }
    }

    #[test]
    fn psi_examples_and_images() {
        assert_eq!(psi_delete_last(&p("2 4 1 3 5")).unwrap(), p("2 4 1 3"));
        assert_eq!(psi_delete_last(&p("1 2 3")).unwrap(), p("1 2"));
        assert_eq!(psi_delete_last(&p("2 1 3")).unwrap(), p("2 1"));
        assert!(psi_delete_last(&p("3 1 2")).is_err());
        let p321 = p("3 2 1");
        let p312 = p("3 1 2");
        for n in 2..=8 {
            let mut img1: Vec<Permutation> = class_members(n, ClassTag::T1)
                .iter()
                .filter(|s| s.ends_with_max())
                .map(|s| psi_delete_last(s).unwrap())
                .collect();
            let mut img2: Vec<Permutation> = class_members(n, ClassTag::T2)
                .iter()
                .filter(|s| s.ends_with_max())
                .map(|s| psi_delete_last(s).unwrap())
                .collect();
            img1.sort();
            img2.sort();
            let av321: Vec<Permutation> = all_perms(n - 1).into_iter().filter(|s| !s.contains(&p321)).collect();
            let av312: Vec<Permutation> = all_perms(n - 1).into_iter().filter(|s| !s.contains(&p312)).collect();
            assert_eq!(img1, av321);
            assert_eq!(img2, av312);
        }
    }

    #[test]
    fn juxtaposition_examples() {
        let (tau, rho) = juxtaposition_split(&p("2 4 1 3 7 5 9 6 8"), ClassTag::T1).unwrap().unwrap();
        assert_eq!((tau, rho), (p("2 4 1 3 5"), p("3 1 5 2 4")));
        assert_eq!(juxtaposition_split(&p("3 1 5 2 4"), ClassTag::T1).unwrap(), None);
        assert_eq!(juxtaposition_split(&p("1 2"), ClassTag::T1).unwrap(), Some((p("1 2"), p("1"))));
        assert!(juxtaposition_split(&p("3 2 4 1"), ClassTag::T1).is_err());
    }

    #[test]
    fn split_agrees_with_last_return() {
        for n in 1..=8 {
            for class in [ClassTag::T1, ClassTag::T2] {
                for s in class_members(n, class) {
                    assert!(split_matches_path(&s, class).unwrap(), "{class} {s}");
                    let has_split = juxtaposition_split(&s, class).unwrap().is_some();
                    assert_eq!(has_split, !is_connected(&s) && n > 1);
                }
            }
        }
    }

    #[test]
    fn split_statistics_are_additive() {
        for n in 2..=8 {
            for s in class_members(n, ClassTag::T1) {
                if let Some((tau, rho)) = juxtaposition_split(&s, ClassTag::T1).unwrap() {
                    let (rs, rt, rr) = (stat_record(&s).unwrap(), stat_record(&tau).unwrap(), stat_record(&rho).unwrap());
                    assert_eq!(rs.lmax, rt.lmax + rr.lmax - 1);
                    assert_eq!(rs.pos_max, tau.len() + rr.pos_max - 1);
                    assert_eq!(rs.asc, rt.asc + rr.asc);
                }
            }
        }
    }

    #[test]
    fn ascents_from_path_features() {
        for n in 1..=8 {
            for s in class_members(n, ClassTag::T1) {
                let path = phi(&s).unwrap();
                let c = features(&path, Some(n - 1)).unwrap().cut.unwrap();
                assert_eq!(
                    ascents(&s),
                    c.valleys_before_cut + c.triple_descents_before_cut + c.downs_after_cut,
                    "{s} {path}"
                );
            }
            for s in class_members(n, ClassTag::T2) {
                let path = phi(&s).unwrap();
                assert_eq!(ascents(&s), features(&path, None).unwrap().peaks, "{s} {path}");
            }
        }
    }

    #[test]
    fn endpoint_height_gives_lds() {
        for n in 2..=8 {
            for s in class_members(n, ClassTag::T1).into_iter().filter(|s| !s.ends_with_max()) {
                let h = phi(&s).unwrap().final_height();
                assert_eq!(h, 2 * longest_decreasing_length(&s) - 2, "{s}");
            }
        }
    }

    #[test]
    fn appending_steps_to_floating_prefixes() {
        for m in (0..=12).step_by(2) {
            for path in enumerate_prefixes(m).filter(|q| q.classify() == PathKind::Floating) {
                let s = phi1_inverse(&path).unwrap();
                let su = phi1_inverse(&wrap(&path, Step::U)).unwrap();
                let sd = phi1_inverse(&wrap(&path, Step::D)).unwrap();
                let r = stat_record(&s).unwrap();
                for t in [&su, &sd] {
                    let rt = stat_record(t).unwrap();
                    assert_eq!((rt.pos_max, rt.lmax), (r.pos_max, r.lmax));
                }
                assert_eq!(ascents(&su), r.asc);
                assert_eq!(ascents(&sd), r.asc + 1);
                assert_eq!(lmax_count(&su), lmax_count(&s));
            }
        }
    }

    #[test]
    fn dyck_extension_examples() {
        assert_eq!(dyck_extension(&p("1 2 3")).unwrap(), lp("UDUDUD"));
        assert_eq!(dyck_extension(&p("2 4 1 3 5")).unwrap(), lp("UUDUUDDDUD"));
        assert_eq!(phi(&p("3 1 2")).unwrap(), lp("UUUD"));
        assert_eq!(dyck_extension(&p("3 1 2")).unwrap(), lp("UUUDDD"));
        assert!(dyck_extension(&p("3 2 1")).is_err());
    }

    #[test]
    fn dyck_extension_is_injective_into_dyck_paths() {
        let p321 = p("3 2 1");
        for n in 1..=8 {
            let mut seen = std::collections::BTreeSet::new();
            for s in all_perms(n).into_iter().filter(|s| !s.contains(&p321)) {
                let k = dyck_extension(&s).unwrap();
                assert!(k.is_dyck_path());
                assert_eq!(k.len(), 2 * n);
                assert!(seen.insert(k));
            }
        }
    }
}
