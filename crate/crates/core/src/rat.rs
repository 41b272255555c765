//! Exact rational scalars and points, with the `p/q` text format used in all
//! machine-readable output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn half() -> Rat {
    frac(1, 2)
}

/// Parses `p/q`, `p` or a finite decimal such as `0.7`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.contains('/') || frac_part.is_empty() {
            return Err(Error::Parse(format!("bad decimal literal {s:?}")));
        }
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal literal {s:?}")))?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = Rat::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    let r: Rat = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational literal {s:?}")))?;
    Ok(r)
}

/// Parses a comma-separated list of rationals.
pub fn parse_point(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

pub fn format_point(coords: &[Rat]) -> String {
    coords
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn to_strings(coords: &[Rat]) -> Vec<String> {
    coords.iter().map(|c| c.to_string()).collect()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Distance from `x` to the nearest integer, together with every nearest integer
/// (two of them when `x` sits exactly on a half-integer).
pub fn nearest_integers(x: &Rat) -> (Rat, Vec<BigInt>) {
    let fl = x.floor();
    let frac_part = x - &fl;
    let base = fl.to_integer();
    let h = half();
    if frac_part < h {
        (frac_part, vec![base])
    } else if frac_part > h {
        (Rat::one() - frac_part, vec![base + 1])
    } else {
        (h, vec![base.clone(), base + 1])
    }
}

/// Squared distance from `x` to `2Z + offset` (offset 0 or 1) and every nearest
/// member of that coset.
pub fn nearest_in_coset(x: &Rat, offset: i64) -> (Rat, Vec<BigInt>) {
    // y = (x - offset) / 2 ; nearest integers k to y give 2k + offset
    let y = (x - int(offset)) / int(2);
    let (d, ks) = nearest_integers(&y);
    let d2 = &d * &d * int(4);
    (d2, ks.into_iter().map(|k| k * 2 + offset).collect())
}

pub fn sq(x: &Rat) -> Rat {
    x * x
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn squared_norm_diff(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| {
        let d = x - y;
        acc + &d * &d
    })
}

pub fn is_integer(x: &Rat) -> bool {
    x.is_integer()
}

/// Decimal rendering of `sqrt(r)` with `digits` fractional digits, truncated
/// (not rounded) so the printed value is a certified lower bound.
pub fn sqrt_decimal(r: &Rat, digits: usize) -> String {
    assert!(!r.is_negative(), "square root of a negative rational");
    let scale = num_traits::pow(BigInt::from(10), digits);
    // floor(sqrt(r) * 10^digits) = floor(sqrt(num * 10^(2 digits) / den))
    let scaled = r * Rat::from_integer(&scale * &scale);
    let target = scaled.floor().to_integer();
    let root = target.sqrt();
    render_scaled(&root, digits)
}

/// Decimal rendering of `r` with `digits` fractional digits (truncated toward zero).
pub fn decimal(r: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r.abs() * Rat::from_integer(scale)).floor().to_integer();
    let body = render_scaled(&scaled, digits);
    if r.is_negative() && !scaled.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

fn render_scaled(v: &BigInt, digits: usize) -> String {
    let s = v.to_string();
    if digits == 0 {
        return s;
    }
    let padded = format!("{:0>width$}", s, width = digits + 1);
    let (a, b) = padded.split_at(padded.len() - digits);
    format!("{a}.{b}")
}
