//! Truncated power series in up to three variables with exact rational
//! coefficients.
//!
//! The first variable (always `x`, the size variable) is truncated at a cap;
//! the coefficient of each power of `x` is kept as an exact polynomial in the
//! remaining variables. Every series handled here has polynomial
//! `x`-coefficients because the other variables mark statistics bounded by
//! the size. This is what makes quotients such as `B(B − yw)/(2B − yw)`
//! computable: the lowest `x`-slice of the divisor only needs to divide the
//! numerator exactly, it does not have to be a unit.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

type Exps = Vec<u32>;

/// Sparse polynomial in the non-truncated variables; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exps, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; arity], c)
    }

    pub fn monomial(exps: Exps, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, exps: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &Poly, scale: &BigRational) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * scale);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one());
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Lexicographic leading terms drive the division.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lead_e, lead_c) = divisor.terms.last_key_value()?;
        if divisor.terms.len() == 1 {
            let mut out = Poly::zero();
            for (e, c) in &self.terms {
                let shifted = e
                    .iter()
                    .zip(lead_e)
                    .map(|(a, b)| a.checked_sub(*b))
                    .collect::<Option<Exps>>()?;
                out.terms.insert(shifted, c / lead_c);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((e, c)) = rem.terms.last_key_value() {
            let m = e
                .iter()
                .zip(lead_e)
                .map(|(a, b)| a.checked_sub(*b))
                .collect::<Option<Exps>>()?;
            let coef = c / lead_c;
            let step = Poly::monomial(m, coef);
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    fn max_exponents(&self, arity: usize) -> Vec<u32> {
        let mut out = vec![0; arity];
        for e in self.terms.keys() {
            for (o, v) in out.iter_mut().zip(e) {
                *o = (*o).max(*v);
            }
        }
        out
    }
}

/// A power series in `vars` known exactly up to `vars[0]^cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<char>,
    slices: Vec<Poly>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl TruncatedSeries {
    pub fn zero(vars: &[char], cap: usize) -> Self {
        assert!((1..=3).contains(&vars.len()), "one to three variables");
        TruncatedSeries { vars: vars.to_vec(), slices: vec![Poly::zero(); cap + 1] }
    }

    pub fn constant(vars: &[char], cap: usize, c: i64) -> Self {
        let mut s = Self::zero(vars, cap);
        s.slices[0] = Poly::constant(vars.len() - 1, rat(c));
        s
    }

    pub fn one(vars: &[char], cap: usize) -> Self {
        Self::constant(vars, cap, 1)
    }

    /// `c · Π vars[i]^exps[i]`.
    pub fn monomial(vars: &[char], cap: usize, exps: &[u32], c: BigRational) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut s = Self::zero(vars, cap);
        if (exps[0] as usize) <= cap {
            s.slices[exps[0] as usize] = Poly::monomial(exps[1..].to_vec(), c);
        }
        s
    }

    pub fn var(vars: &[char], cap: usize, name: char) -> Self {
        let exps: Vec<u32> = vars.iter().map(|&v| u32::from(v == name)).collect();
        assert!(exps.contains(&1), "unknown variable {name}");
        Self::monomial(vars, cap, &exps, BigRational::one())
    }

    /// Sum of integer-coefficient monomials, e.g. `[(1, &[1, 1, 0]), …]`.
    pub fn from_terms(vars: &[char], cap: usize, terms: &[(i64, &[u32])]) -> Self {
        terms.iter().fold(Self::zero(vars, cap), |acc, (c, e)| {
            &acc + &Self::monomial(vars, cap, e, rat(*c))
        })
    }

    pub fn vars(&self) -> &[char] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Truncation cap of the leading variable.
    pub fn cap(&self) -> usize {
        self.slices.len() - 1
    }

    /// Per-variable maximum exponent: the truncation cap for `x`, the largest
    /// exponent actually present for the others.
    pub fn caps(&self) -> Vec<usize> {
        let arity = self.num_vars() - 1;
        let mut out = vec![self.cap()];
        let mut rest = vec![0u32; arity];
        for s in &self.slices {
            for (r, m) in rest.iter_mut().zip(s.max_exponents(arity)) {
                *r = (*r).max(m);
            }
        }
        out.extend(rest.into_iter().map(|v| v as usize));
        out
    }

    pub fn slice(&self, k: usize) -> &Poly {
        &self.slices[k]
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(Poly::is_zero)
    }

    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap());
        TruncatedSeries { vars: self.vars.clone(), slices: self.slices[..=cap].to_vec() }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "series over different variables");
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        self.check_vars(other);
        let cap = self.cap().min(other.cap());
        TruncatedSeries {
            vars: self.vars.clone(),
            slices: (0..=cap).map(|k| f(&self.slices[k], &other.slices[k])).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Self {
        TruncatedSeries { vars: self.vars.clone(), slices: self.slices.iter().map(|s| s.scale(c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scalar_mul(&rat(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.vars, self.cap()), |acc, _| &acc * self)
    }

    /// Exact quotient. With `v` the order in `x` of the divisor, the
    /// numerator's first `v` slices must vanish and every step divides by the
    /// divisor's slice `v` exactly; the result is known up to `x^(cap − v)`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor);
        let v = divisor
            .slices
            .iter()
            .position(|s| !s.is_zero())
            .ok_or_else(|| Error::Series("division by the zero series".into()))?;
        let cap = self.cap().min(divisor.cap());
        if v > cap {
            return Err(Error::Series("divisor vanishes to the truncation order".into()));
        }
        if let Some(k) = (0..v).find(|&k| !self.slices[k].is_zero()) {
            return Err(Error::Series(format!(
                "numerator has a nonzero x^{k} term but the divisor starts at x^{v}"
            )));
        }
        let lead = &divisor.slices[v];
        let out_cap = cap - v;
        let mut q: Vec<Poly> = Vec::with_capacity(out_cap + 1);
        for n in 0..=out_cap {
            let mut r = self.slices[n + v].clone();
            for i in 1..=n {
                let g = &divisor.slices[v + i];
                if !g.is_zero() && !q[n - i].is_zero() {
                    r = r.sub(&g.mul(&q[n - i]));
                }
            }
            let qn = r.div_exact(lead).ok_or_else(|| {
                Error::Series(format!("x^{n} coefficient is not divisible by the divisor's leading slice"))
            })?;
            q.push(qn);
        }
        Ok(TruncatedSeries { vars: self.vars.clone(), slices: q })
    }

    /// Divides by the leading variable; the `x`-free part must vanish.
    pub fn div_by_x(&self) -> Result<Self> {
        let mut exps = vec![0; self.num_vars()];
        exps[0] = 1;
        self.div_by_monomial(&exps)
    }

    /// Divides by a monomial, asserting exact divisibility.
    pub fn div_by_monomial(&self, exps: &[u32]) -> Result<Self> {
        let m = Self::monomial(&self.vars, self.cap(), exps, BigRational::one());
        self.div(&m).map_err(|e| {
            Error::Series(format!("not divisible by monomial {}: {e}", self.monomial_name(exps)))
        })
    }

    /// Square root by Newton iteration `S ← (S + F/S)/2` from `S = 1`,
    /// checked by squaring. The `x`-free part of `F` must be exactly 1.
    pub fn sqrt(&self) -> Result<Self> {
        let one = Self::one(&self.vars, self.cap());
        if self.slices[0] != one.slices[0] {
            return Err(Error::Series("sqrt needs an x-free part equal to 1".into()));
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut s = one;
        // precision doubles each step; the bound only guards against bugs
        for _ in 0..64 {
            let next = (&s + &self.div(&s)?).scalar_mul(&half);
            if next == s {
                break;
            }
            s = next;
        }
        if &(&s * &s) != self {
            return Err(Error::Series("Newton iteration did not converge".into()));
        }
        Ok(s)
    }

    /// Substitutes each source variable by a monomial in `target_vars`
    /// (given as an exponent vector). The leading variable must map to a
    /// monomial containing the target's leading variable.
    pub fn substitute_monomials(&self, target_vars: &[char], images: &[Vec<u32>]) -> Result<Self> {
        if images.len() != self.num_vars() || images.iter().any(|i| i.len() != target_vars.len()) {
            return Err(Error::Series("substitution shape mismatch".into()));
        }
        if images[0][0] == 0 {
            return Err(Error::Series("the truncated variable must map to a multiple of x".into()));
        }
        let cap = self.cap();
        let mut out = Self::zero(target_vars, cap);
        for (a, slice) in self.slices.iter().enumerate() {
            for (e, c) in slice.terms() {
                let mut t = vec![0u32; target_vars.len()];
                let src = std::iter::once(a as u32).chain(e.iter().copied());
                for (k, img) in src.zip(images) {
                    for (ti, ii) in t.iter_mut().zip(img) {
                        *ti += k * ii;
                    }
                }
                if (t[0] as usize) <= cap {
                    out.slices[t[0] as usize].add_term(t[1..].to_vec(), c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Identifies `drop` with `keep`, removing `drop` from the variables.
    pub fn substitute_equal_vars(&self, keep: char, drop: char) -> Result<Self> {
        let ki = self.var_index(keep)?;
        let di = self.var_index(drop)?;
        if di == 0 {
            return Err(Error::Series("cannot identify away the truncated variable".into()));
        }
        let target: Vec<char> = self.vars.iter().copied().filter(|&v| v != drop).collect();
        let unit = |name: char| -> Vec<u32> { target.iter().map(|&v| u32::from(v == name)).collect() };
        let images: Vec<Vec<u32>> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, &v)| if i == di { unit(self.vars[ki]) } else { unit(v) })
            .collect();
        self.substitute_monomials(&target, &images)
    }

    pub fn rename_var(&self, from: char, to: char) -> Result<Self> {
        let i = self.var_index(from)?;
        let mut out = self.clone();
        out.vars[i] = to;
        Ok(out)
    }

    fn var_index(&self, name: char) -> Result<usize> {
        self.vars
            .iter()
            .position(|&v| v == name)
            .ok_or_else(|| Error::Series(format!("no variable {name}")))
    }

    /// Coefficient of `Π vars[i]^exps[i]`.
    pub fn coefficient(&self, exps: &[u32]) -> Result<BigRational> {
        if exps.len() != self.num_vars() {
            return Err(Error::Series(format!("expected {} exponents", self.num_vars())));
        }
        let a = exps[0] as usize;
        if a > self.cap() {
            return Err(Error::BeyondCap { var: self.vars[0], exponent: a, cap: self.cap() });
        }
        Ok(self.slices[a].coefficient(&exps[1..]))
    }

    /// All stored `(exponents, coefficient)` pairs, slice by slice.
    pub fn terms(&self) -> Vec<(Vec<u32>, BigRational)> {
        let mut out = Vec::new();
        for (a, s) in self.slices.iter().enumerate() {
            for (e, c) in s.terms() {
                let mut full = vec![a as u32];
                full.extend_from_slice(e);
                out.push((full, c.clone()));
            }
        }
        out
    }

    /// First term that is not a nonnegative integer, if any.
    pub fn first_non_natural(&self) -> Option<(Vec<u32>, BigRational)> {
        self.terms().into_iter().find(|(_, c)| !c.is_integer() || c.is_negative())
    }

    fn monomial_name(&self, exps: &[u32]) -> String {
        self.vars
            .iter()
            .zip(exps)
            .map(|(v, e)| format!("{v}^{e}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// One line per nonzero monomial, `x^a y^b w^c : num/den`, ordered by
    /// total degree and then lexicographically by exponents.
    pub fn dump(&self) -> String {
        let mut terms = self.terms();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        let mut out = String::new();
        for (e, c) in terms {
            writeln!(out, "{} : {}/{}", self.monomial_name(&e), c.numer(), c.denom()).unwrap();
        }
        out
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, Poly::add)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, Poly::sub)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale_int(-1)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_vars(rhs);
        let cap = self.cap().min(rhs.cap());
        let mut slices = vec![Poly::zero(); cap + 1];
        for (i, a) in self.slices.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.slices.iter().enumerate().take(cap + 1 - i) {
                if !b.is_zero() {
                    let prod = a.mul(b);
                    slices[i + j].add_scaled(&prod, &BigRational::one());
                }
            }
        }
        TruncatedSeries { vars: self.vars.clone(), slices }
    }
}
