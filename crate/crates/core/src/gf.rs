//! Closed-form generating functions, evaluated as truncated series.
//!
//! Every series is indexed by size in `x`. For permutation series the size
//! is the length `n`; for path series (`N`, `A`, `S`, `R`) it is the
//! semilength, so a Dyck prefix of length `2m` sits at `x^m`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Named generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesName {
    /// Narayana: Dyck paths by semilength (`x`) and peaks (`z`).
    N,
    /// Max-ending members of the first class by size, position of the maximum, left-to-right maxima.
    B,
    /// Connected members of the first class, same statistics as `B`.
    C,
    /// First class by size, position of the maximum (`y`), left-to-right maxima (`w`).
    J,
    /// Head distribution restricted to `head < n`.
    G,
    /// First class by size and head.
    H,
    /// Dyck paths by semilength, valleys (`y`), triple descents (`z`).
    A,
    /// Max-ending members of the first class by ascents.
    E,
    /// Connected members of the first class by ascents.
    V,
    /// First class by ascents.
    F,
    /// Dyck prefixes by semilength and peaks.
    S,
    /// Second class by ascents.
    M,
    /// Floating Dyck prefixes by semilength and peaks.
    R,
}

impl SeriesName {
    pub const ALL: [SeriesName; 13] = [
        SeriesName::N,
        SeriesName::B,
        SeriesName::C,
        SeriesName::J,
        SeriesName::G,
        SeriesName::H,
        SeriesName::A,
        SeriesName::E,
        SeriesName::V,
        SeriesName::F,
        SeriesName::S,
        SeriesName::M,
        SeriesName::R,
    ];

    pub fn vars(self) -> &'static [char] {
        match self {
            SeriesName::N => &['x', 'z'],
            SeriesName::B | SeriesName::C | SeriesName::J => &['x', 'y', 'w'],
            SeriesName::A => &['x', 'y', 'z'],
            _ => &['x', 'y'],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SeriesName::N => "N",
            SeriesName::B => "B",
            SeriesName::C => "C",
            SeriesName::J => "J",
            SeriesName::G => "G",
            SeriesName::H => "H",
            SeriesName::A => "A",
            SeriesName::E => "E",
            SeriesName::V => "V",
            SeriesName::F => "F",
            SeriesName::S => "S",
            SeriesName::M => "M",
            SeriesName::R => "R",
        }
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeriesName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("narayana") {
            return Ok(SeriesName::N);
        }
        SeriesName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::UnknownSeries(s.to_string()))
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Small builder bound to one variable set and cap.
struct Ctx {
    vars: &'static [char],
    cap: usize,
}

impl Ctx {
    fn new(vars: &'static [char], cap: usize) -> Self {
        Ctx { vars, cap }
    }

    /// Polynomial from integer-coefficient monomials.
    fn poly(&self, terms: &[(i64, &[u32])]) -> TruncatedSeries {
        TruncatedSeries::from_terms(self.vars, self.cap, terms)
    }

    fn one(&self) -> TruncatedSeries {
        TruncatedSeries::one(self.vars, self.cap)
    }
}

// Internal evaluations carry two extra orders of x: the only cap losses are
// the single divisions by x in N and by the x-order-one denominator of A.
const MARGIN: usize = 2;

/// `N(x,z) = 1 + (1 − x(1+z) − √((1 − x(1+z))² − 4x²z)) / (2x)`.
pub fn narayana(cap: usize) -> Result<TruncatedSeries> {
    Ok(narayana_raw(cap + MARGIN)?.truncate(cap))
}

fn narayana_raw(cap: usize) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'z'], cap + 1);
    let t = c.poly(&[(1, &[0, 0]), (-1, &[1, 0]), (-1, &[1, 1])]);
    let rad = &(&t * &t) - &c.poly(&[(4, &[2, 1])]);
    let num = &t - &rad.sqrt()?;
    Ok(&c.one() + &num.div_by_x()?.scalar_mul(&half()))
}

/// Narayana series with its second variable renamed to `y`.
fn narayana_xy(cap: usize) -> Result<TruncatedSeries> {
    narayana_raw(cap)?.rename_var('z', 'y')
}

fn b_closed(cap: usize) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y', 'w'], cap);
    let t = c.poly(&[(1, &[0, 0, 0]), (-1, &[1, 1, 0]), (-1, &[1, 1, 1])]);
    let rad = &(&t * &t) - &c.poly(&[(4, &[2, 2, 1])]);
    let inner = &c.poly(&[(1, &[0, 0, 0]), (1, &[1, 1, 0]), (-1, &[1, 1, 1])]) - &rad.sqrt()?;
    Ok((&c.poly(&[(1, &[0, 0, 1])]) * &inner).scalar_mul(&half()))
}

/// `B = xyw · N(xy, w)`.
fn b_dual(cap: usize) -> Result<TruncatedSeries> {
    let n = narayana_raw(cap)?;
    let sub = n.substitute_monomials(&['x', 'y', 'w'], &[vec![1, 1, 0], vec![0, 0, 1]])?;
    let c = Ctx::new(&['x', 'y', 'w'], sub.cap());
    Ok(&c.poly(&[(1, &[1, 1, 1])]) * &sub)
}

fn j_from_b(b: &TruncatedSeries) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y', 'w'], b.cap());
    let yw = c.poly(&[(1, &[0, 1, 1])]);
    (b * &(b - &yw)).div(&(&b.scale_int(2) - &yw))
}

fn c_from(j: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let c = Ctx::new(&['x', 'y', 'w'], j.cap().min(b.cap()));
    let x = c.poly(&[(1, &[1, 0, 0])]);
    &(&x * &j.scale_int(2)) - &(&x * b)
}

fn one_minus_2xy(c: &Ctx) -> TruncatedSeries {
    c.poly(&[(1, &[0, 0]), (-2, &[1, 1])])
}

fn g_series(cap: usize) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y'], cap);
    let first = c.poly(&[(1, &[3, 3]), (-1, &[2, 2])]).div(&one_minus_2xy(&c))?;
    let root = c.poly(&[(1, &[0, 0]), (-4, &[1, 0])]).sqrt()?;
    let second = c.poly(&[(1, &[2, 1])]).div(&root)?;
    (&first + &second).div(&c.poly(&[(1, &[0, 0]), (-1, &[0, 1]), (1, &[1, 2])]))
}

fn h_from_g(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y'], g.cap());
    let tail = c.poly(&[(1, &[1, 1]), (-1, &[2, 2])]).div(&one_minus_2xy(&c))?;
    Ok(g + &tail)
}

/// `H = xy[(xy−1)²(1−y)√(1−4x) + x(1−2xy)] / ((1−y+xy²)(1−2xy)√(1−4x))`.
fn h_explicit(cap: usize) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y'], cap);
    let root = c.poly(&[(1, &[0, 0]), (-4, &[1, 0])]).sqrt()?;
    let xy_minus_1 = c.poly(&[(1, &[1, 1]), (-1, &[0, 0])]);
    let one_minus_y = c.poly(&[(1, &[0, 0]), (-1, &[0, 1])]);
    let bracket = &(&(&(&xy_minus_1 * &xy_minus_1) * &one_minus_y) * &root)
        + &(&c.poly(&[(1, &[1, 0])]) * &one_minus_2xy(&c));
    let num = &c.poly(&[(1, &[1, 1])]) * &bracket;
    let den = &(&c.poly(&[(1, &[0, 0]), (-1, &[0, 1]), (1, &[1, 2])]) * &one_minus_2xy(&c)) * &root;
    num.div(&den)
}

fn a_series(cap: usize) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y', 'z'], cap + 1);
    let rad = c.poly(&[
        (1, &[0, 0, 0]),
        (-2, &[1, 1, 0]),
        (-4, &[2, 1, 0]),
        (1, &[2, 2, 0]),
        (-2, &[1, 0, 1]),
        (2, &[2, 1, 1]),
        (1, &[2, 0, 2]),
    ]);
    let poly = c.poly(&[
        (-1, &[0, 0, 0]),
        (1, &[1, 1, 0]),
        (2, &[2, 1, 0]),
        (-2, &[2, 2, 0]),
        (1, &[1, 0, 1]),
        (-2, &[1, 1, 1]),
        (-2, &[2, 1, 1]),
        (2, &[2, 2, 1]),
    ]);
    let num = &poly + &rad.sqrt()?;
    let den = c.poly(&[(2, &[2, 2, 1]), (-2, &[1, 1, 1]), (-2, &[2, 2, 0])]);
    num.div(&den)
}

fn e_closed(cap: usize) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y'], cap);
    let rad = c.poly(&[(1, &[0, 0]), (-4, &[1, 1]), (4, &[2, 2]), (-4, &[2, 1])]);
    let num = &rad.sqrt()? - &c.one();
    let num = num.div_by_monomial(&[0, 1]).map_err(|e| Error::Series(format!("E numerator: {e}")))?;
    let den = c.poly(&[(2, &[1, 1]), (-2, &[1, 0]), (-2, &[0, 0])]);
    num.div(&den)
}

/// `E = xy(A(x,y,y) − 1) + x`.
fn e_dual(cap: usize) -> Result<TruncatedSeries> {
    let a = a_series(cap)?.substitute_equal_vars('y', 'z')?;
    let c = Ctx::new(&['x', 'y'], a.cap());
    Ok(&(&c.poly(&[(1, &[1, 1])]) * &(&a - &c.one())) + &c.poly(&[(1, &[1, 0])]))
}

fn f_from_e(e: &TruncatedSeries) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y'], e.cap());
    let ye = &c.poly(&[(1, &[0, 1])]) * e;
    (e * &(&c.one() - &ye)).div(&(&(&c.one() - e) - &ye))
}

fn v_from(f: &TruncatedSeries, e: &TruncatedSeries) -> TruncatedSeries {
    let c = Ctx::new(&['x', 'y'], f.cap().min(e.cap()));
    &(&c.poly(&[(1, &[1, 0]), (1, &[1, 1])]) * f) - &(&c.poly(&[(1, &[1, 1])]) * e)
}

fn s_from_n(n: &TruncatedSeries) -> Result<TruncatedSeries> {
    let c = Ctx::new(&['x', 'y'], n.cap());
    n.div(&(&c.one() - &(&c.poly(&[(1, &[1, 0])]) * &(n * n))))
}

fn x_times(s: &TruncatedSeries) -> TruncatedSeries {
    let mut exps = vec![0; s.num_vars()];
    exps[0] = 1;
    &TruncatedSeries::monomial(s.vars(), s.cap(), &exps, BigRational::one()) * s
}

fn build_raw(name: SeriesName, cap: usize) -> Result<TruncatedSeries> {
    match name {
        SeriesName::N => narayana_raw(cap),
        SeriesName::B => b_closed(cap),
        SeriesName::J => j_from_b(&b_closed(cap)?),
        SeriesName::C => {
            let b = b_closed(cap)?;
            Ok(c_from(&j_from_b(&b)?, &b))
        }
        SeriesName::G => g_series(cap),
        SeriesName::H => h_from_g(&g_series(cap)?),
        SeriesName::A => a_series(cap),
        SeriesName::E => e_closed(cap),
        SeriesName::F => f_from_e(&e_closed(cap)?),
        SeriesName::V => {
            let e = e_closed(cap)?;
            Ok(v_from(&f_from_e(&e)?, &e))
        }
        SeriesName::S => s_from_n(&narayana_xy(cap)?),
        SeriesName::M => Ok(x_times(&s_from_n(&narayana_xy(cap)?)?)),
        SeriesName::R => {
            let n = narayana_xy(cap)?;
            let s = s_from_n(&n)?;
            Ok(x_times(&(&n * &s)))
        }
    }
}

/// Evaluates `name` exactly through `x^cap`.
pub fn build(name: SeriesName, cap: usize) -> Result<TruncatedSeries> {
    let s = build_raw(name, cap + MARGIN)?;
    if s.cap() < cap {
        return Err(Error::Series(format!("{name} lost precision: cap {} < {cap}", s.cap())));
    }
    Ok(s.truncate(cap))
}

/// Integer coefficient of a monomial; non-integral values are an error.
pub fn coefficient(series: &TruncatedSeries, exps: &[u32]) -> Result<BigInt> {
    let c = series.coefficient(exps)?;
    if !c.is_integer() {
        return Err(Error::NonInteger(format!("{exps:?} has coefficient {c}")));
    }
    Ok(c.to_integer())
}

/// Outcome of one coefficient-wise identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    /// First differing monomial, rendered as `exps: lhs vs rhs`.
    pub mismatch: Option<String>,
}

fn compare(name: &'static str, lhs: &TruncatedSeries, rhs: &TruncatedSeries, cap: usize) -> IdentityCheck {
    let (l, r) = (lhs.truncate(cap), rhs.truncate(cap));
    let diff = &l - &r;
    let mismatch = diff.terms().into_iter().next().map(|(e, _)| {
        format!(
            "{e:?}: {} vs {}",
            l.coefficient(&e).unwrap_or_default(),
            r.coefficient(&e).unwrap_or_default()
        )
    });
    IdentityCheck { name, holds: mismatch.is_none() && l.cap() == cap && r.cap() == cap, mismatch }
}

/// Functional equations and dual constructions, checked through `x^cap`.
pub fn identity_checks(cap: usize) -> Result<Vec<IdentityCheck>> {
    let work = cap + MARGIN;
    let mut out = Vec::new();

    let b = b_closed(work)?;
    out.push(compare("B closed form = xyw N(xy,w)", &b, &b_dual(work)?, cap));
    let j = j_from_b(&b)?;
    let c = c_from(&j, &b);
    let xyw = TruncatedSeries::monomial(&['x', 'y', 'w'], work, &[1, 1, 1], BigRational::one());
    let j_via_c = &b + &(&b * &c).div(&xyw)?;
    out.push(compare("J = B + BC/(xyw) with C = 2xJ - xB", &j, &j_via_c, cap));

    let e = e_closed(work)?;
    out.push(compare("E closed form = xy(A(x,y,y) - 1) + x", &e, &e_dual(work)?, cap));
    let f = f_from_e(&e)?;
    let v = v_from(&f, &e);
    let f_via_v = &e + &(&e * &v).div_by_x()?;
    out.push(compare("F = E + EV/x with V = (x+xy)F - xyE", &f, &f_via_v, cap));

    let g = g_series(work)?;
    out.push(compare("H via G = explicit H", &h_from_g(&g)?, &h_explicit(work)?, cap));

    let n = narayana_xy(work)?;
    let s = s_from_n(&n)?;
    let r = x_times(&(&n * &s));
    let one = TruncatedSeries::one(&['x', 'y'], work);
    out.push(compare("S = N(R + 1)", &s, &(&n * &(&r + &one)), cap));
    out.push(compare("M = xS", &build_raw(SeriesName::M, work)?, &x_times(&s), cap));

    for name in SeriesName::ALL {
        let series = build(name, cap)?;
        let bad = series.first_non_natural();
        out.push(IdentityCheck {
            name: positivity_label(name),
            holds: bad.is_none(),
            mismatch: bad.map(|(e, c)| format!("{e:?}: {c}")),
        });
    }
    Ok(out)
}

fn positivity_label(name: SeriesName) -> &'static str {
    match name {
        SeriesName::N => "N has natural coefficients",
        SeriesName::B => "B has natural coefficients",
        SeriesName::C => "C has natural coefficients",
        SeriesName::J => "J has natural coefficients",
        SeriesName::G => "G has natural coefficients",
        SeriesName::H => "H has natural coefficients",
        SeriesName::A => "A has natural coefficients",
        SeriesName::E => "E has natural coefficients",
        SeriesName::V => "V has natural coefficients",
        SeriesName::F => "F has natural coefficients",
        SeriesName::S => "S has natural coefficients",
        SeriesName::M => "M has natural coefficients",
        SeriesName::R => "R has natural coefficients",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(s: &TruncatedSeries, e: &[u32]) -> i64 {
        coefficient(s, e).unwrap().try_into().unwrap()
    }

    #[test]
    fn narayana_low_orders() {
        let n = narayana(5).unwrap();
        assert_eq!(int(&n, &[0, 0]), 1);
        assert_eq!(int(&n, &[1, 1]), 1);
        assert_eq!((1..=3).map(|k| int(&n, &[3, k])).collect::<Vec<_>>(), vec![1, 3, 1]);
        assert_eq!((1..=4).map(|k| int(&n, &[4, k])).collect::<Vec<_>>(), vec![1, 6, 6, 1]);
        assert_eq!(n.cap(), 5);
    }

    #[test]
    fn spot_values() {
        let m = build(SeriesName::M, 6).unwrap();
        assert_eq!((int(&m, &[2, 0]), int(&m, &[2, 1])), (1, 1));
        let b = build(SeriesName::B, 6).unwrap();
        assert_eq!(int(&b, &[2, 2, 2]), 1);
        let h = build(SeriesName::H, 6).unwrap();
        assert_eq!((1..=4).map(|k| int(&h, &[4, k])).collect::<Vec<_>>(), vec![6, 6, 4, 4]);
        let f = build(SeriesName::F, 6).unwrap();
        assert_eq!(int(&f, &[1, 0]), 1);
        let e = build(SeriesName::E, 6).unwrap();
        assert_eq!(int(&e, &[2, 1]), 1);
    }

    #[test]
    fn j_total_at_four_is_twenty() {
        let j = build(SeriesName::J, 5).unwrap();
        let total: BigRational = j.terms().into_iter().filter(|(e, _)| e[0] == 4).map(|(_, c)| c).sum();
        assert_eq!(total, BigRational::from_integer(20.into()));
    }

    #[test]
    fn identities_hold_at_small_cap() {
        for check in identity_checks(7).unwrap() {
            assert!(check.holds, "{}: {:?}", check.name, check.mismatch);
        }
    }

    #[test]
    fn names_round_trip() {
        for n in SeriesName::ALL {
            assert_eq!(n.to_string().to_lowercase().parse::<SeriesName>().unwrap(), n);
        }
        assert_eq!("narayana".parse::<SeriesName>().unwrap(), SeriesName::N);
        assert!("Q".parse::<SeriesName>().is_err());
    }

    #[test]
    fn beyond_cap_is_an_error() {
        let f = build(SeriesName::F, 4).unwrap();
        assert!(matches!(coefficient(&f, &[5, 0]), Err(Error::BeyondCap { .. })));
    }
}
