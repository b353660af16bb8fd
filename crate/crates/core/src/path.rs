//! Dyck prefixes over the steps `U = (1, 1)` and `D = (1, −1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::combi::binomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    // D sorts before U.
    D,
    U,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
        }
    }
}

/// A lattice path that never goes below the x-axis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// Ends on the axis (the empty path included).
    DyckPath,
    /// Non-empty and never returns to the axis.
    Floating,
    Neither,
}

impl LatticePath {
    pub fn empty() -> Self {
        LatticePath::default()
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let mut h: i64 = 0;
        for (i, s) in steps.iter().enumerate() {
            h += if *s == Step::U { 1 } else { -1 };
            if h < 0 {
                return Err(Error::BelowAxis { index: i + 1 });
            }
        }
        Ok(LatticePath { steps })
    }

    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(LatticePath::from_steps(steps.clone()).is_ok());
        LatticePath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn up_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::U).count()
    }

    pub fn down_count(&self) -> usize {
        self.len() - self.up_count()
    }

    pub fn final_height(&self) -> usize {
        self.up_count() - self.down_count()
    }

    /// Heights after each step (length `len()`).
    pub fn heights(&self) -> Vec<usize> {
        let mut h = 0usize;
        self.steps
            .iter()
            .map(|s| {
                match s {
                    Step::U => h += 1,
                    Step::D => h -= 1,
                }
                h
            })
            .collect()
    }

    pub fn is_dyck_path(&self) -> bool {
        self.final_height() == 0
    }

    pub fn classify(&self) -> PathKind {
        classify(self)
    }

    pub fn concat(&self, other: &LatticePath) -> LatticePath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        LatticePath { steps }
    }

    pub(crate) fn push(&mut self, s: Step) {
        self.steps.push(s);
    }

    /// One-line height profile, `/` for up and `\` for down.
    pub fn to_slashes(&self) -> String {
        self.steps
            .iter()
            .map(|s| if *s == Step::U { '/' } else { '\\' })
            .collect()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_path(s)
    }
}

/// Parses a word over `{U, D}` (either case). Errors carry 1-indexed
/// positions.
pub fn parse_path(text: &str) -> Result<LatticePath> {
    let steps = text
        .trim()
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            'U' | 'u' => Ok(Step::U),
            'D' | 'd' => Ok(Step::D),
            ch => Err(Error::IllegalStep { index: i + 1, ch }),
        })
        .collect::<Result<Vec<_>>>()?;
    LatticePath::from_steps(steps)
}

pub fn classify(path: &LatticePath) -> PathKind {
    if path.is_dyck_path() {
        PathKind::DyckPath
    } else if returns(path) == 0 {
        PathKind::Floating
    } else {
        PathKind::Neither
    }
}

/// Number of down steps ending on the axis.
pub fn returns(path: &LatticePath) -> usize {
    path.steps
        .iter()
        .zip(path.heights())
        .filter(|(s, h)| **s == Step::D && *h == 0)
        .count()
}

/// `P = P′ P″` with `P′` a Dyck path and `P″` floating (either may be empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LastReturnSplit {
    pub dyck_part: LatticePath,
    pub floating_part: LatticePath,
}

pub fn last_return_split(path: &LatticePath) -> LastReturnSplit {
    let cut = path
        .heights()
        .iter()
        .rposition(|&h| h == 0)
        .map_or(0, |i| i + 1);
    LastReturnSplit {
        dyck_part: LatticePath { steps: path.steps[..cut].to_vec() },
        floating_part: LatticePath { steps: path.steps[cut..].to_vec() },
    }
}

/// 1-indexed position of the `(n+1)`-th up step of a path of length `2n`.
pub fn cut_step_index(path: &LatticePath, n: usize) -> Result<Option<usize>> {
    if path.len() != 2 * n {
        return Err(Error::PathLength { expected: 2 * n, actual: path.len() });
    }
    Ok(nth_up_index(path, n + 1))
}

fn nth_up_index(path: &LatticePath, k: usize) -> Option<usize> {
    path.steps
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Step::U)
        .nth(k.checked_sub(1)?)
        .map(|(i, _)| i + 1)
}

/// Counts taken relative to the cut step of a path of length `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CutFeatures {
    pub cut_index: Option<usize>,
    /// Valleys whose low point precedes the cut step (the `U` of the valley
    /// may be the cut step itself); a non-empty Dyck path also counts its
    /// final down step.
    pub valleys_before_cut: usize,
    pub triple_descents_before_cut: usize,
    pub peaks_before_cut: usize,
    pub downs_before_cut: usize,
    pub downs_after_cut: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PathFeatures {
    pub peaks: usize,
    pub valleys: usize,
    /// Overlapping occurrences of `DDD`.
    pub triple_descents: usize,
    pub returns: usize,
    pub endpoint_height: usize,
    pub cut: Option<CutFeatures>,
}

/// Factor counts of `path`; with `n` given (and `path.len() == 2n`) the
/// cut-relative counts are filled in too.
pub fn features(path: &LatticePath, n: Option<usize>) -> Result<PathFeatures> {
    use Step::{D, U};
    let s = &path.steps;
    // 0-indexed start of each factor occurrence
    let starts = |pat: &[Step]| -> Vec<usize> {
        if s.len() < pat.len() {
            return Vec::new();
        }
        (0..=s.len() - pat.len()).filter(|&i| &s[i..i + pat.len()] == pat).collect()
    };
    let peaks = starts(&[U, D]);
    let valleys = starts(&[D, U]);
    let triples = starts(&[D, D, D]);

    let cut = match n {
        None => None,
        Some(n) => {
            let cut_index = cut_step_index(path, n)?;
            // 0-indexed position of the cut step; everything for a Dyck path
            let bound = cut_index.map_or(s.len(), |c| c - 1);
            let before = |occ: &[usize], width: usize| occ.iter().filter(|&&i| i + width <= bound).count();
            // the valley's low point may sit at the foot of the cut step
            let mut valleys_before_cut = before(&valleys, 1);
            if cut_index.is_none() && !path.is_empty() {
                valleys_before_cut += 1;
            }
            Some(CutFeatures {
                cut_index,
                valleys_before_cut,
                triple_descents_before_cut: before(&triples, 3),
                peaks_before_cut: before(&peaks, 2),
                downs_before_cut: s[..bound].iter().filter(|&&x| x == D).count(),
                downs_after_cut: cut_index.map_or(0, |c| s[c..].iter().filter(|&&x| x == D).count()),
            })
        }
    };
    Ok(PathFeatures {
        peaks: peaks.len(),
        valleys: valleys.len(),
        triple_descents: triples.len(),
        returns: returns(path),
        endpoint_height: path.final_height(),
        cut,
    })
}

/// Length of the first maximal run of up steps.
pub fn first_run_length(path: &LatticePath) -> usize {
    path.steps.iter().take_while(|&&s| s == Step::U).count()
}

/// `U P′ ↦ P′ U`: floating prefixes to prefixes ending with an up step.
pub fn rotate_first_up(path: &LatticePath) -> Option<LatticePath> {
    match path.steps.first() {
        Some(Step::U) => {
            let mut steps = path.steps[1..].to_vec();
            steps.push(Step::U);
            Some(LatticePath { steps })
        }
        _ => None,
    }
}

/// `U P last`, the two-step extension used to grow floating prefixes.
pub fn wrap(path: &LatticePath, last: Step) -> LatticePath {
    let mut steps = Vec::with_capacity(path.len() + 2);
    steps.push(Step::U);
    steps.extend_from_slice(&path.steps);
    steps.push(last);
    LatticePath::from_steps_unchecked(steps)
}

/// All Dyck prefixes of a given length in lexicographic order (`D < U`).
pub fn enumerate_prefixes(length: usize) -> PrefixIter {
    PrefixIter { length, current: None, done: false }
}

pub struct PrefixIter {
    length: usize,
    current: Option<Vec<Step>>,
    done: bool,
}

impl PrefixIter {
    /// Fills `steps[from..]` with the lexicographically least valid tail.
    fn complete_min(steps: &mut Vec<Step>, from: usize, length: usize) {
        steps.truncate(from);
        let mut h: usize = steps.iter().fold(0, |h, s| if *s == Step::U { h + 1 } else { h - 1 });
        while steps.len() < length {
            if h > 0 {
                steps.push(Step::D);
                h -= 1;
            } else {
                steps.push(Step::U);
                h += 1;
            }
        }
    }
}

impl Iterator for PrefixIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        if self.done {
            return None;
        }
        match &mut self.current {
            None => {
                let mut steps = Vec::with_capacity(self.length);
                Self::complete_min(&mut steps, 0, self.length);
                self.current = Some(steps);
            }
            Some(steps) => match steps.iter().rposition(|&s| s == Step::D) {
                None => {
                    self.done = true;
                    return None;
                }
                Some(i) => {
                    steps[i] = Step::U;
                    Self::complete_min(steps, i + 1, self.length);
                }
            },
        }
        Some(LatticePath { steps: self.current.clone().unwrap() })
    }
}

/// Dyck prefixes of length `2n − 2` ending at height `2h` (ballot numbers).
pub fn count_prefixes_by_height(n: i64, h: i64) -> BigInt {
    binomial(2 * n - 3, n - 1 - h) - binomial(2 * n - 3, n - 3 - h)
}
