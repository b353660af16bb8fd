//! Exhaustive generation of pattern classes, statistic distributions and the
//! verification suite tying permutations, paths and series together.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::bijection::{
    juxtaposition_split, dyck_extension, phi, phi1_inverse, phi2_inverse, psi_delete_last,
    split_matches_path, ClassTag,
};
use crate::combi::{binomial, catalan, pow2};
use crate::error::{Error, Result};
use crate::gf::{self, SeriesName};
use crate::path::{
    count_prefixes_by_height, enumerate_prefixes, features, first_run_length, LatticePath, PathKind, Step,
};
use crate::perm::{
    ascents, avoids_basis, is_connected, lmax_count, longest_decreasing_length, stat_record,
    word_contains_ending_at_last, PatternBasis, Permutation,
};
use crate::series::TruncatedSeries;

/// Lexicographic stream of `Sₙ(basis)` built by backtracking: a value is
/// appended only if no basis pattern occurs ending at it, which suffices
/// because every occurrence in a longer prefix ends somewhere.
pub struct ClassIter {
    n: usize,
    patterns: Vec<Vec<usize>>,
    prefix: Vec<usize>,
    used: Vec<bool>,
    /// Next candidate value at each depth; one entry longer than `prefix`.
    cursor: Vec<usize>,
}

impl Iterator for ClassIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        while let Some(&c) = self.cursor.last() {
            if c > self.n {
                self.cursor.pop();
                if let Some(v) = self.prefix.pop() {
                    self.used[v] = false;
                }
                continue;
            }
            *self.cursor.last_mut().unwrap() = c + 1;
            if self.used[c] {
                continue;
            }
            self.prefix.push(c);
            if self.patterns.iter().any(|p| word_contains_ending_at_last(&self.prefix, p)) {
                self.prefix.pop();
                continue;
            }
            if self.prefix.len() == self.n {
                let out = Permutation::from_vec_unchecked(self.prefix.clone());
                self.prefix.pop();
                return Some(out);
            }
            self.used[c] = true;
            self.cursor.push(1);
        }
        None
    }
}

/// `Sₙ(basis)` in lexicographic order; empty for `n = 0`.
pub fn generate_class(n: usize, basis: &PatternBasis) -> ClassIter {
    ClassIter {
        n,
        patterns: basis.patterns().iter().map(|p| p.entries().to_vec()).collect(),
        prefix: Vec::with_capacity(n),
        used: vec![false; n + 1],
        cursor: if n == 0 { Vec::new() } else { vec![1] },
    }
}

/// All of `Sₙ` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<usize>> = if n == 0 { None } else { Some((1..=n).collect()) };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        current = match next.windows(2).rposition(|w| w[0] < w[1]) {
            None => None,
            Some(i) => {
                let j = next.iter().rposition(|&v| v > next[i]).unwrap();
                next.swap(i, j);
                next[i + 1..].reverse();
                Some(next)
            }
        };
        Some(Permutation::from_vec_unchecked(out))
    })
}

/// Reference implementation: filters all `n!` permutations. Only sensible
/// for small `n`.
pub fn filter_class(n: usize, basis: &PatternBasis) -> Vec<Permutation> {
    all_permutations(n).filter(|s| avoids_basis(s, basis)).collect()
}

pub fn class_count(n: usize, basis: &PatternBasis) -> BigInt {
    BigInt::from(generate_class(n, basis).count())
}

/// `|Sₙ(T1, k k−1 … 1)| = C(2n−2, n−1) − C(2n−2, n−k)` for `k ≥ 3`.
///
/// The closed form counts every max-ending member, whose longest decreasing
/// subsequence has length at most 2, so it overcounts at `k = 2`; there the
/// class is just the identity and that value is returned instead.
pub fn count_avoiding_long_decreasing(n: usize, k: usize) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    match k {
        0 | 1 => BigInt::zero(),
        2 => BigInt::one(),
        _ => closed_form_long_decreasing(n, k),
    }
}

/// The raw closed form, without the small-`k` correction.
pub fn closed_form_long_decreasing(n: usize, k: usize) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    binomial(2 * n - 2, n - 1) - binomial(2 * n - 2, n - k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    Asc,
    Lmax,
    PosMax,
    Head,
    Lds,
    Connected,
    EndpointHeight,
}

impl Statistic {
    pub const ALL: [Statistic; 7] = [
        Statistic::Asc,
        Statistic::Lmax,
        Statistic::PosMax,
        Statistic::Head,
        Statistic::Lds,
        Statistic::Connected,
        Statistic::EndpointHeight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Asc => "asc",
            Statistic::Lmax => "lmax",
            Statistic::PosMax => "pos_max",
            Statistic::Head => "head",
            Statistic::Lds => "lds",
            Statistic::Connected => "connected",
            Statistic::EndpointHeight => "endpoint_height",
        }
    }

    /// Value on `sigma`; booleans become 0/1 and the endpoint height is read
    /// off `Φ(σ)`, so it needs `σ` in one of the two classes.
    pub fn value(self, sigma: &Permutation) -> Result<i64> {
        if sigma.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let v = match self {
            Statistic::Asc => ascents(sigma),
            Statistic::Lmax => lmax_count(sigma),
            Statistic::PosMax => sigma.entries().iter().position(|&v| v == sigma.len()).unwrap() + 1,
            Statistic::Head => sigma.at(1),
            Statistic::Lds => longest_decreasing_length(sigma),
            Statistic::Connected => usize::from(is_connected(sigma)),
            Statistic::EndpointHeight => phi(sigma)?.final_height(),
        };
        Ok(v as i64)
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "pos" | "posmax" => return Ok(Statistic::PosMax),
            "height" | "endpoint" => return Ok(Statistic::EndpointHeight),
            _ => {}
        }
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == t)
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

/// Parses a comma-separated list such as `pos_max,lmax`.
pub fn parse_statistics(list: &str) -> Result<Vec<Statistic>> {
    let stats = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<_>>>()?;
    if stats.is_empty() {
        return Err(Error::UnknownStatistic(list.to_string()));
    }
    Ok(stats)
}

/// Joint counts of a tuple of statistics over a set of permutations of one
/// size. Keys are ordered, so every export is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub basis: String,
    pub stats: Vec<Statistic>,
    pub counts: BTreeMap<Vec<i64>, BigInt>,
}

impl DistributionTable {
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn get(&self, key: &[i64]) -> BigInt {
        self.counts.get(key).cloned().unwrap_or_default()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let export = |e: csv::Error| Error::Export(e.to_string());
        let mut header: Vec<&str> = self.stats.iter().map(|s| s.name()).collect();
        header.push("count");
        w.write_record(&header).map_err(export)?;
        for (key, count) in &self.counts {
            let mut row: Vec<String> = key.iter().map(i64::to_string).collect();
            row.push(count.to_string());
            w.write_record(&row).map_err(export)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Export(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Export(e.to_string()))
    }

    pub fn to_json_value(&self) -> Value {
        let entries: Vec<Value> = self
            .counts
            .iter()
            .map(|(key, count)| {
                let mut m = Map::new();
                for (s, v) in self.stats.iter().zip(key) {
                    m.insert(s.name().to_string(), json!(v));
                }
                m.insert("count".into(), json!(count.to_string()));
                Value::Object(m)
            })
            .collect();
        json!({ "n": self.n, "basis": self.basis, "entries": entries })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain JSON values")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, count) in &self.counts {
            let cols: Vec<String> = self.stats.iter().zip(key).map(|(s, v)| format!("{s}={v}")).collect();
            out.push_str(&format!("{} : {count}\n", cols.join(" ")));
        }
        out
    }
}

/// Tabulates `stats` over an explicit list of permutations of size `n`.
pub fn tabulate<'a>(
    n: usize,
    basis: &str,
    members: impl IntoIterator<Item = &'a Permutation>,
    stats: &[Statistic],
) -> Result<DistributionTable> {
    let mut counts: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for sigma in members {
        let key = stats.iter().map(|s| s.value(sigma)).collect::<Result<Vec<_>>>()?;
        *counts.entry(key).or_default() += 1;
    }
    Ok(DistributionTable { n, basis: basis.to_string(), stats: stats.to_vec(), counts })
}

/// Joint distribution of `stats` over `Sₙ(basis)`.
pub fn distribution(n: usize, basis: &PatternBasis, stats: &[Statistic]) -> Result<DistributionTable> {
    let members: Vec<Permutation> = generate_class(n, basis).collect();
    tabulate(n, basis.label(), &members, stats)
}

/// `h_{n,k}`: members of `Sₙ(T1)` with first entry `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadTable {
    /// `rows[n][k]` for `0 ≤ k ≤ n`; column 0 is identically zero.
    rows: Vec<Vec<BigInt>>,
}

impl HeadTable {
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
    }

    /// `h_{n,1}, …, h_{n,n}`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n][1..]
    }
}

/// Head table from `h_{n,k} = h_{n,k−1} − h_{n−1,k−2}` with boundary values
/// `h_{n,1} = C(2n−4, n−2)` and `h_{n,n−1} = h_{n,n} = 2^{n−2}`.
pub fn head_table(max_n: usize) -> HeadTable {
    let mut rows = vec![Vec::new(), vec![BigInt::zero(), BigInt::one()]];
    for n in 2..=max_n {
        let mut row = vec![BigInt::zero(); n + 1];
        let ni = n as i64;
        row[1] = binomial(2 * ni - 4, ni - 2);
        for k in 2..n.saturating_sub(1) {
            let back = if k >= 2 { rows[n - 1][k - 2].clone() } else { BigInt::zero() };
            row[k] = &row[k - 1] - back;
        }
        row[n - 1] = pow2(n as u32 - 2);
        row[n] = pow2(n as u32 - 2);
        rows.push(row);
    }
    rows.truncate(max_n.max(1) + 1);
    HeadTable { rows }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    /// Inclusive range of sizes the check covered.
    pub n_range: (usize, usize),
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub max_n: usize,
    pub checks: Vec<CheckResult>,
    /// Smallest `n` at which the ascent tables of the two classes differ.
    pub asc_difference_n: Option<usize>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "n_min": c.n_range.0,
                    "n_max": c.n_range.1,
                    "passed": c.passed,
                    "counterexample": c.counterexample,
                })
            })
            .collect();
        let v = json!({
            "max_n": self.max_n,
            "passed": self.all_passed(),
            "asc_difference_n": self.asc_difference_n,
            "checks": checks,
        });
        serde_json::to_string_pretty(&v).expect("plain JSON values")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {} [n={}..{}]", c.name, c.n_range.0, c.n_range.1)?;
            if let Some(ce) = &c.counterexample {
                writeln!(f, "     counterexample: {ce}")?;
            }
        }
        match self.asc_difference_n {
            Some(n) => writeln!(f, "ascent tables first differ at n={n}")?,
            None => writeln!(f, "ascent tables agree for all n<={}", self.max_n)?,
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{passed}/{} checks passed", self.checks.len())
    }
}

/// Precomputed classes and prefixes shared by all checks.
struct Data {
    max_n: usize,
    t1: Vec<Vec<Permutation>>,
    t2: Vec<Vec<Permutation>>,
    union: Vec<Vec<Permutation>>,
    /// `prefixes[m]`: Dyck prefixes of length `2m`.
    prefixes: Vec<Vec<LatticePath>>,
}

impl Data {
    fn new(max_n: usize) -> Self {
        let by_n = |basis: PatternBasis| -> Vec<Vec<Permutation>> {
            (0..=max_n).into_par_iter().map(|n| generate_class(n, &basis).collect()).collect()
        };
        Data {
            max_n,
            t1: by_n(PatternBasis::t1()),
            t2: by_n(PatternBasis::t2()),
            union: by_n(PatternBasis::t1_union_t2()),
            prefixes: (0..=max_n).into_par_iter().map(|m| enumerate_prefixes(2 * m).collect()).collect(),
        }
    }

    fn class(&self, class: ClassTag) -> &[Vec<Permutation>] {
        match class {
            ClassTag::T1 => &self.t1,
            ClassTag::T2 => &self.t2,
        }
    }
}

type Outcome = std::result::Result<(), String>;

type RunFn = Box<dyn Fn(&Data, usize, usize) -> Outcome + Send + Sync>;

struct Check {
    name: String,
    lo: usize,
    hi: usize,
    run: RunFn,
}

impl Check {
    fn new(name: impl Into<String>, lo: usize, hi: usize, run: impl Fn(&Data, usize, usize) -> Outcome + Send + Sync + 'static) -> Self {
        Check { name: name.into(), lo, hi, run: Box::new(run) }
    }

    /// A check evaluated independently at every size in `lo..=hi`.
    fn per_n(name: impl Into<String>, lo: usize, hi: usize, f: impl Fn(&Data, usize) -> Outcome + Send + Sync + 'static) -> Self {
        Self::new(name, lo, hi, move |d, lo, hi| {
            (lo..=hi).try_for_each(|n| f(d, n).map_err(|e| format!("n={n}: {e}")))
        })
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn counts(d: &Data, class: ClassTag, n: usize, stats: &[Statistic]) -> BTreeMap<Vec<i64>, BigInt> {
    tabulate(n, "", &d.class(class)[n], stats).expect("class members have every statistic").counts
}

fn class_checks(checks: &mut Vec<Check>, max_n: usize) {
    for class in [ClassTag::T1, ClassTag::T2] {
        checks.push(Check::per_n(format!("class-size({class})"), 1, max_n, move |d, n| {
            let ni = n as i64;
            expect_eq("count", BigInt::from(d.class(class)[n].len()), binomial(2 * ni - 2, ni - 1))
        }));
    }
    checks.push(Check::per_n("generator-vs-filter", 1, max_n.min(7), |d, n| {
        let custom = PatternBasis::parse("custom:321,2413").expect("valid basis");
        for (label, basis, fast) in [
            ("t1", PatternBasis::t1(), d.t1[n].clone()),
            ("t2", PatternBasis::t2(), d.t2[n].clone()),
            ("t1t2", PatternBasis::t1_union_t2(), d.union[n].clone()),
            ("custom", custom.clone(), generate_class(n, &custom).collect()),
        ] {
            if fast != filter_class(n, &basis) {
                return Err(format!("{label} generator disagrees with filtering"));
            }
        }
        Ok(())
    }));
    checks.push(Check::per_n("intersection-size", 2, max_n, |d, n| {
        expect_eq("count", BigInt::from(d.union[n].len()) , BigInt::from(n) * pow2(n as u32 - 2))?;
        let both = d.t1[n].iter().filter(|s| ClassTag::T2.contains(s)).count();
        expect_eq("|Av(T1) ∩ Av(T2)|", both, d.union[n].len())
    }));
    checks.push(Check::per_n("intersection-connected", 2, max_n, |d, n| {
        let connected = d.union[n].iter().filter(|s| is_connected(s)).count();
        expect_eq("connected", BigInt::from(connected), pow2(n as u32 - 1) - 1)
    }));
    for class in [ClassTag::T1, ClassTag::T2] {
        checks.push(Check::per_n(format!("connected-count({class})"), 2, max_n, move |d, n| {
            let members = &d.class(class)[n];
            let connected = members.iter().filter(|s| is_connected(s)).count();
            let ni = n as i64;
            expect_eq("connected", BigInt::from(connected), binomial(2 * ni - 3, ni - 2))?;
            expect_eq("connected vs non-connected", connected, members.len() - connected)
        }));
    }
    checks.push(Check::per_n("equidistribution(head)", 1, max_n, |d, n| {
        let s = [Statistic::Head];
        expect_eq("head table", counts(d, ClassTag::T1, n, &s), counts(d, ClassTag::T2, n, &s))
    }));
    checks.push(Check::per_n("equidistribution(pos_max,lmax)", 1, max_n, |d, n| {
        let s = [Statistic::PosMax, Statistic::Lmax];
        expect_eq("joint table", counts(d, ClassTag::T1, n, &s), counts(d, ClassTag::T2, n, &s))
    }));
    checks.push(Check::new("ascents-not-equidistributed", 1, max_n, |d, lo, hi| {
        first_asc_difference(d, lo, hi)
            .map(|_| ())
            .ok_or_else(|| format!("ascent tables agree for every n<={hi}"))
    }));
}

fn first_asc_difference(d: &Data, lo: usize, hi: usize) -> Option<usize> {
    let s = [Statistic::Asc];
    (lo..=hi).find(|&n| counts(d, ClassTag::T1, n, &s) != counts(d, ClassTag::T2, n, &s))
}

fn bijection_checks(checks: &mut Vec<Check>, max_n: usize) {
    for class in [ClassTag::T1, ClassTag::T2] {
        let inverse = move |p: &LatticePath| match class {
            ClassTag::T1 => phi1_inverse(p),
            ClassTag::T2 => phi2_inverse(p),
        };
        checks.push(Check::per_n(format!("roundtrip({class})"), 1, max_n, move |d, n| {
            for s in &d.class(class)[n] {
                let path = phi(s).map_err(|e| format!("{s}: {e}"))?;
                let back = inverse(&path).map_err(|e| format!("{s} -> {path}: {e}"))?;
                if &back != s {
                    return Err(format!("{s} -> {path} -> {back}"));
                }
            }
            Ok(())
        }));
        checks.push(Check::per_n(format!("inverse-total({class})"), 1, max_n, move |d, n| {
            for path in &d.prefixes[n - 1] {
                let s = inverse(path).map_err(|e| format!("{path}: {e}"))?;
                if s.len() != n || !class.contains(&s) || phi(&s).ok().as_ref() != Some(path) {
                    return Err(format!("{path} -> {s}"));
                }
            }
            Ok(())
        }));
    }
    checks.push(Check::per_n("dyck-iff-ends-with-max", 1, max_n, |d, n| {
        for s in d.t1[n].iter().chain(&d.t2[n]) {
            if phi(s).map_err(|e| e.to_string())?.is_dyck_path() != s.ends_with_max() {
                return Err(s.to_string());
            }
        }
        Ok(())
    }));
    checks.push(Check::per_n("last-return-split", 1, max_n, |d, n| {
        for class in [ClassTag::T1, ClassTag::T2] {
            for s in &d.class(class)[n] {
                if !split_matches_path(s, class).map_err(|e| e.to_string())? {
                    return Err(format!("{class}: {s}"));
                }
            }
        }
        Ok(())
    }));
    checks.push(Check::per_n("split-additivity(pos_max,lmax)", 2, max_n, |d, n| {
        for class in [ClassTag::T1, ClassTag::T2] {
            for s in &d.class(class)[n] {
                if let Some((tau, rho)) = juxtaposition_split(s, class).map_err(|e| e.to_string())? {
                    let (rs, rt, rr) = (stat_record(s).unwrap(), stat_record(&tau).unwrap(), stat_record(&rho).unwrap());
                    if rs.lmax + 1 != rt.lmax + rr.lmax || rs.pos_max + 1 != tau.len() + rr.pos_max {
                        return Err(format!("{class}: {s} = {tau} | {rho}"));
                    }
                }
            }
        }
        Ok(())
    }));
    for (class, pattern) in [(ClassTag::T1, "3 2 1"), (ClassTag::T2, "3 1 2")] {
        checks.push(Check::per_n(format!("ends-with-max-image({class}->{})", pattern.replace(' ', "")), 2, max_n, move |d, n| {
            let target = PatternBasis::single(pattern.parse().expect("valid pattern")).expect("valid basis");
            let images: BTreeSet<Permutation> = d.class(class)[n]
                .iter()
                .filter(|s| s.ends_with_max())
                .map(|s| psi_delete_last(s).expect("max-ending"))
                .collect();
            expect_eq("max-ending count", BigInt::from(images.len()), catalan(n as i64 - 1))?;
            let expected: BTreeSet<Permutation> = generate_class(n - 1, &target).collect();
            if images != expected {
                return Err("ψ images differ from the avoidance class".into());
            }
            Ok(())
        }));
    }
    checks.push(Check::per_n("dyck-extension", 1, max_n, |_, n| {
        let av321 = PatternBasis::decreasing(3).expect("valid basis");
        let mut seen = BTreeSet::new();
        for s in generate_class(n, &av321) {
            let p = dyck_extension(&s).map_err(|e| e.to_string())?;
            if !p.is_dyck_path() || p.len() != 2 * n || !seen.insert(p) {
                return Err(s.to_string());
            }
        }
        expect_eq("image size", BigInt::from(seen.len()), catalan(n as i64))
    }));
}

fn statistic_checks(checks: &mut Vec<Check>, max_n: usize) {
    checks.push(Check::per_n("head-pos-lmax-from-path", 2, max_n, |d, n| {
        for s in d.t1[n].iter().chain(&d.t2[n]) {
            let path = phi(s).map_err(|e| e.to_string())?;
            let f = features(&path, Some(n - 1)).map_err(|e| e.to_string())?;
            let cut = f.cut.expect("cut features requested");
            let q = first_run_length(&path);
            let r = stat_record(s).unwrap();
            let head = if q >= n { n } else { q };
            if (r.head, r.pos_max, r.lmax) != (head, cut.downs_before_cut + 1, cut.peaks_before_cut + 1) {
                return Err(format!("{s} -> {path}"));
            }
        }
        Ok(())
    }));
    checks.push(Check::per_n("asc-from-cut(t1)", 1, max_n, |d, n| {
        for s in &d.t1[n] {
            let path = phi(s).map_err(|e| e.to_string())?;
            let c = features(&path, Some(n - 1)).map_err(|e| e.to_string())?.cut.unwrap();
            if ascents(s) != c.valleys_before_cut + c.triple_descents_before_cut + c.downs_after_cut {
                return Err(format!("{s} -> {path}"));
            }
        }
        Ok(())
    }));
    checks.push(Check::per_n("asc-from-peaks(t2)", 1, max_n, |d, n| {
        for s in &d.t2[n] {
            let path = phi(s).map_err(|e| e.to_string())?;
            if ascents(s) != features(&path, None).map_err(|e| e.to_string())?.peaks {
                return Err(format!("{s} -> {path}"));
            }
        }
        Ok(())
    }));
    checks.push(Check::per_n("lds-from-height", 2, max_n, |d, n| {
        for s in d.t1[n].iter().filter(|s| !s.ends_with_max()) {
            let h = phi(s).map_err(|e| e.to_string())?.final_height();
            if h % 2 != 0 || longest_decreasing_length(s) != h / 2 + 1 {
                return Err(format!("{s}: height {h}"));
            }
        }
        Ok(())
    }));
    checks.push(Check::per_n("ballot(endpoint-height)", 2, max_n, |d, n| {
        for class in [ClassTag::T1, ClassTag::T2] {
            let table = counts(d, class, n, &[Statistic::EndpointHeight]);
            for h in 0..n {
                let got = table.get(&vec![2 * h as i64]).cloned().unwrap_or_default();
                expect_eq(&format!("{class} height {}", 2 * h), got, count_prefixes_by_height(n as i64, h as i64))?;
            }
            if table.keys().any(|k| k[0] % 2 != 0 || k[0] >= 2 * n as i64) {
                return Err(format!("{class}: unexpected heights {:?}", table.keys().collect::<Vec<_>>()));
            }
        }
        Ok(())
    }));
    checks.push(Check::per_n("long-decreasing-count", 1, max_n, |d, n| {
        for k in 3..=6 {
            let basis = PatternBasis::t1().with_pattern(Permutation::decreasing(k));
            let generated = class_count(n, &basis);
            let filtered = d.t1[n].iter().filter(|s| longest_decreasing_length(s) < k).count();
            expect_eq(&format!("k={k} generated"), generated.clone(), closed_form_long_decreasing(n, k))?;
            expect_eq(&format!("k={k} filtered"), BigInt::from(filtered), generated)?;
        }
        Ok(())
    }));
    checks.push(Check::per_n("head-recurrence", 1, max_n, |d, n| {
        let table = head_table(n);
        let census = counts(d, ClassTag::T1, n, &[Statistic::Head]);
        for k in 1..=n {
            let got = census.get(&vec![k as i64]).cloned().unwrap_or_default();
            expect_eq(&format!("h_{{{n},{k}}}"), table.get(n, k), got)?;
        }
        if n >= 2 {
            let ni = n as i64;
            expect_eq("h_{n,1}", table.get(n, 1), binomial(2 * ni - 4, ni - 2))?;
            expect_eq("h_{n,n-1}", table.get(n, n - 1), pow2(n as u32 - 2))?;
            expect_eq("h_{n,n}", table.get(n, n), pow2(n as u32 - 2))?;
        }
        Ok(())
    }));
    checks.push(Check::per_n("head-sum-recurrence", 3, max_n, |d, n| {
        let prev = counts(d, ClassTag::T1, n - 1, &[Statistic::Head]);
        let cur = counts(d, ClassTag::T1, n, &[Statistic::Head]);
        let h = |m: &BTreeMap<Vec<i64>, BigInt>, k: usize| m.get(&vec![k as i64]).cloned().unwrap_or_default();
        for k in 1..n {
            let sum: BigInt = (k.saturating_sub(1)..n).map(|j| h(&prev, j)).sum();
            expect_eq(&format!("k={k}"), h(&cur, k), sum)?;
        }
        Ok(())
    }));
}

/// Key/count map of a census, keyed like the series exponents.
type Census = BTreeMap<Vec<u32>, BigInt>;

fn census_of(keys: impl IntoIterator<Item = Vec<u32>>) -> Census {
    let mut out = Census::new();
    for k in keys {
        *out.entry(k).or_default() += 1;
    }
    out
}

/// Compares every coefficient with `x`-degree `≤ hi` against the census.
fn match_series(series: &TruncatedSeries, census: &Census, hi: usize) -> Outcome {
    for (e, c) in series.terms() {
        if e[0] as usize > hi {
            continue;
        }
        let want = census.get(&e).cloned().unwrap_or_default();
        if !c.is_integer() || c.to_integer() != want {
            return Err(format!("{e:?}: series {c}, census {want}"));
        }
    }
    for (e, want) in census {
        if e[0] as usize > hi {
            continue;
        }
        let got = series.coefficient(e).map_err(|err| err.to_string())?;
        if !got.is_integer() || &got.to_integer() != want {
            return Err(format!("{e:?}: series {got}, census {want}"));
        }
    }
    Ok(())
}

fn u(v: usize) -> u32 {
    v as u32
}

fn perm_census(d: &Data, class: ClassTag, keep: fn(&Permutation) -> bool, key: fn(&Permutation) -> Vec<u32>) -> Census {
    census_of(d.class(class).iter().flatten().filter(|s| keep(s)).map(key))
}

fn path_census(d: &Data, keep: fn(&LatticePath) -> bool, key: fn(usize, &LatticePath) -> Vec<u32>) -> Census {
    census_of(
        d.prefixes
            .iter()
            .enumerate()
            .flat_map(|(m, ps)| ps.iter().filter(|p| keep(p)).map(move |p| key(m, p))),
    )
}

fn pos_lmax(s: &Permutation) -> Vec<u32> {
    let r = stat_record(s).unwrap();
    vec![u(s.len()), u(r.pos_max), u(r.lmax)]
}

fn size_asc(s: &Permutation) -> Vec<u32> {
    vec![u(s.len()), u(ascents(s))]
}

fn size_head(s: &Permutation) -> Vec<u32> {
    vec![u(s.len()), u(s.at(1))]
}

fn any_perm(_: &Permutation) -> bool {
    true
}

fn peaks_key(m: usize, p: &LatticePath) -> Vec<u32> {
    vec![u(m), u(features(p, None).unwrap().peaks)]
}

fn gf_checks(checks: &mut Vec<Check>, max_n: usize) {
    type GfCheck = (SeriesName, &'static str, fn(&Data) -> Census);
    let gf_checks: Vec<GfCheck> = vec![
        (SeriesName::J, "gf(J)~(pos_max,lmax)|t1", |d| perm_census(d, ClassTag::T1, any_perm, pos_lmax)),
        (SeriesName::B, "gf(B)~(pos_max,lmax)|t1,max-ending", |d| {
            perm_census(d, ClassTag::T1, Permutation::ends_with_max, pos_lmax)
        }),
        (SeriesName::C, "gf(C)~(pos_max,lmax)|t1,connected", |d| {
            perm_census(d, ClassTag::T1, is_connected, pos_lmax)
        }),
        (SeriesName::H, "gf(H)~head|t1", |d| perm_census(d, ClassTag::T1, any_perm, size_head)),
        (SeriesName::G, "gf(G)~head|t1,head<n", |d| {
            perm_census(d, ClassTag::T1, |s| s.at(1) < s.len(), size_head)
        }),
        (SeriesName::F, "gf(F)~asc|t1", |d| perm_census(d, ClassTag::T1, any_perm, size_asc)),
        (SeriesName::E, "gf(E)~asc|t1,max-ending", |d| {
            perm_census(d, ClassTag::T1, Permutation::ends_with_max, size_asc)
        }),
        (SeriesName::V, "gf(V)~asc|t1,connected", |d| perm_census(d, ClassTag::T1, is_connected, size_asc)),
        (SeriesName::M, "gf(M)~asc|t2", |d| perm_census(d, ClassTag::T2, any_perm, size_asc)),
        (SeriesName::N, "gf(N)~peaks|dyck-paths", |d| path_census(d, LatticePath::is_dyck_path, peaks_key)),
        (SeriesName::S, "gf(S)~peaks|prefixes", |d| path_census(d, |_| true, peaks_key)),
        (SeriesName::R, "gf(R)~peaks|floating-prefixes", |d| {
            path_census(d, |p| p.classify() == PathKind::Floating, peaks_key)
        }),
        (SeriesName::R, "gf(R)~peaks|prefixes-ending-U", |d| {
            path_census(d, |p| p.steps().last() == Some(&Step::U), peaks_key)
        }),
        (SeriesName::A, "gf(A)~(valleys,triple-descents)|dyck-paths", |d| {
            path_census(d, LatticePath::is_dyck_path, |m, p| {
                let f = features(p, None).unwrap();
                vec![u(m), u(f.valleys), u(f.triple_descents)]
            })
        }),
    ];
    for (name, label, census) in gf_checks {
        checks.push(Check::new(label, 0, max_n, move |d, _, hi| {
            let series = gf::build(name, hi).map_err(|e| e.to_string())?;
            match_series(&series, &census(d), hi)
        }));
    }
}

/// Truncation order used for the functional-equation checks.
pub const IDENTITY_CAP: usize = 12;

/// Runs every exhaustive check for sizes up to `max_n` (at least 4) plus the
/// series identities through `x^max(12, max_n)`. Checks run concurrently;
/// the report lists them in a fixed order.
pub fn verify_suite(max_n: usize) -> Result<VerifyReport> {
    if max_n < 4 {
        return Err(Error::InvalidArgument(format!("verify needs max_n >= 4, got {max_n}")));
    }
    let data = Data::new(max_n);
    let mut checks = Vec::new();
    class_checks(&mut checks, max_n);
    bijection_checks(&mut checks, max_n);
    statistic_checks(&mut checks, max_n);
    gf_checks(&mut checks, max_n);

    let cap = IDENTITY_CAP.max(max_n);
    let identity_results = gf::identity_checks(cap)?;
    let mut results: Vec<CheckResult> = checks
        .par_iter()
        .map(|c| {
            let outcome = (c.run)(&data, c.lo, c.hi);
            CheckResult {
                name: c.name.clone(),
                n_range: (c.lo, c.hi),
                passed: outcome.is_ok(),
                counterexample: outcome.err(),
            }
        })
        .collect();
    results.extend(identity_results.into_iter().map(|i| CheckResult {
        name: format!("identity: {}", i.name),
        n_range: (0, cap),
        passed: i.holds,
        counterexample: i.mismatch,
    }));
    Ok(VerifyReport { max_n: data.max_n, checks: results, asc_difference_n: first_asc_difference(&data, 1, max_n) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_perms;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn generation_examples() {
        assert_eq!(generate_class(3, &PatternBasis::t1()).count(), 6);
        assert_eq!(class_count(4, &PatternBasis::t1()), BigInt::from(20));
        assert_eq!(class_count(4, &PatternBasis::t2()), BigInt::from(20));
        assert_eq!(class_count(4, &PatternBasis::t1_union_t2()), BigInt::from(16));
        assert_eq!(class_count(5, &PatternBasis::t1_union_t2()), BigInt::from(40));
        assert_eq!(generate_class(0, &PatternBasis::t1()).count(), 0);
        let first: Vec<String> = generate_class(3, &PatternBasis::decreasing(3).unwrap()).map(|s| s.to_string()).collect();
        assert_eq!(first, ["1 2 3", "1 3 2", "2 1 3", "2 3 1", "3 1 2"]);
    }

    #[test]
    fn all_permutations_matches_independent_enumeration() {
        for n in 0..=6 {
            let ours: Vec<Permutation> = all_permutations(n).collect();
            let mut theirs = if n == 0 { Vec::new() } else { all_perms(n) };
            theirs.sort();
            assert_eq!(ours, theirs);
        }
    }

    #[test]
    fn generator_matches_filter_oracle() {
        let bases = [
            PatternBasis::t1(),
            PatternBasis::t2(),
            PatternBasis::t1_union_t2(),
            PatternBasis::parse("custom:231").unwrap(),
            PatternBasis::parse("custom:1342,2431,21").unwrap(),
            PatternBasis::t1().with_pattern(Permutation::decreasing(4)),
        ];
        for basis in &bases {
            for n in 0..=7 {
                let fast: Vec<Permutation> = generate_class(n, basis).collect();
                assert_eq!(fast, filter_class(n, basis), "{} n={n}", basis.label());
            }
        }
    }

    #[test]
    fn distribution_examples() {
        let t = distribution(4, &PatternBasis::t1(), &[Statistic::Head]).unwrap();
        let got: Vec<(i64, i64)> = t.counts.iter().map(|(k, v)| (k[0], v.try_into().unwrap())).collect();
        assert_eq!(got, vec![(1, 6), (2, 6), (3, 4), (4, 4)]);
        assert_eq!(t.total(), BigInt::from(20));

        let t = distribution(2, &PatternBasis::t2(), &[Statistic::Asc]).unwrap();
        assert_eq!((t.get(&[0]), t.get(&[1])), (BigInt::from(1), BigInt::from(1)));

        for n in 2..=7 {
            let t = distribution(n, &PatternBasis::t1(), &[Statistic::Connected]).unwrap();
            let ni = n as i64;
            assert_eq!(t.get(&[1]), binomial(2 * ni - 3, ni - 2));
            assert_eq!(t.get(&[0]), binomial(2 * ni - 3, ni - 2));
        }
        assert_eq!(
            distribution(3, &PatternBasis::t1(), &[Statistic::Asc, Statistic::Lds]).unwrap().total(),
            BigInt::from(6)
        );
    }

    #[test]
    fn endpoint_height_needs_the_union() {
        let basis = PatternBasis::parse("custom:12").unwrap();
        assert!(distribution(5, &basis, &[Statistic::EndpointHeight]).is_ok());
        assert!(Statistic::EndpointHeight.value(&p("3 2 1 4")).is_ok());
        assert!(matches!(
            Statistic::EndpointHeight.value(&p("4 3 1 2 5")),
            Err(Error::NotInUnion(_))
        ));
    }

    #[test]
    fn statistics_parse() {
        assert_eq!(parse_statistics("pos_max,lmax").unwrap(), vec![Statistic::PosMax, Statistic::Lmax]);
        assert_eq!("endpoint_height".parse::<Statistic>().unwrap(), Statistic::EndpointHeight);
        assert!(matches!(parse_statistics("asc,foo"), Err(Error::UnknownStatistic(_))));
        assert!(parse_statistics("").is_err());
        for s in Statistic::ALL {
            assert_eq!(s.name().parse::<Statistic>().unwrap(), s);
        }
    }

    #[test]
    fn exports() {
        let t = distribution(3, &PatternBasis::t2(), &[Statistic::Asc]).unwrap();
        assert_eq!(t.to_csv().unwrap(), "asc,count\n0,1\n1,4\n2,1\n");
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["basis"], "t2");
        assert_eq!(v["entries"][1]["asc"], 1);
        assert_eq!(v["entries"][1]["count"], "4");
        assert_eq!(t.to_text(), "asc=0 : 1\nasc=1 : 4\nasc=2 : 1\n");
    }

    #[test]
    fn head_table_examples() {
        let h = head_table(6);
        assert_eq!(h.get(4, 1), BigInt::from(6));
        assert_eq!(h.get(5, 5), BigInt::from(8));
        assert_eq!(h.get(4, 2), BigInt::from(6));
        assert_eq!(h.row(1), &[BigInt::from(1)]);
        assert_eq!(h.row(2), &[BigInt::from(1), BigInt::from(1)]);
        for n in 1..=6 {
            let ni = n as i64;
            assert_eq!(h.row(n).iter().sum::<BigInt>(), binomial(2 * ni - 2, ni - 1));
        }
    }

    #[test]
    fn long_decreasing_examples() {
        assert_eq!(count_avoiding_long_decreasing(4, 3), BigInt::from(14));
        assert_eq!(count_avoiding_long_decreasing(4, 5), BigInt::from(20));
        assert_eq!(count_avoiding_long_decreasing(5, 3), BigInt::from(42));
        for n in 1..=7 {
            for k in 2..=6 {
                let basis = PatternBasis::t1().with_pattern(Permutation::decreasing(k));
                assert_eq!(class_count(n, &basis), count_avoiding_long_decreasing(n, k), "n={n} k={k}");
            }
        }
        // the raw closed form is off by Catalan(n−1) − 1 at k = 2
        for n in 2..=7 {
            let ni = n as i64;
            assert_eq!(closed_form_long_decreasing(n, 2) - 1, catalan(ni - 1) - 1);
        }
    }

    #[test]
    fn verify_small() {
        let r = verify_suite(6).unwrap();
        let failed: Vec<_> = r.failures().map(|c| (&c.name, &c.counterexample)).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(r.checks.len() >= 20);
        assert_eq!(r.asc_difference_n, Some(4));
        let r4 = verify_suite(4).unwrap();
        assert!(r4.get("equidistribution(head)").unwrap().passed);
        let r5 = verify_suite(5).unwrap();
        assert!(r5.get("intersection-size").unwrap().passed);
        assert!(verify_suite(3).is_err());
    }

    #[test]
    fn report_rendering_is_stable() {
        let a = verify_suite(4).unwrap();
        let b = verify_suite(4).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.to_string().starts_with("PASS class-size(t1) [n=1..4]"));
        let v: Value = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(v["passed"], true);
    }
}
