//! Finitely supported symbol data `f(t) = Σ_i c_i t^i` with `c_{-i} = c_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Fourier coefficients `c_0` and `c_i`, `i >= 1`; negative indices are
/// implied by symmetry and never stored, nor are zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierData<S: Scalar> {
    c0: S,
    coeffs: BTreeMap<u32, S>,
}

impl<S: Scalar> FourierData<S> {
    pub fn zero() -> Self {
        FourierData {
            c0: S::zero(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new(c0: S, coeffs: impl IntoIterator<Item = (u32, S)>) -> Result<Self> {
        let mut f = FourierData {
            c0,
            coeffs: BTreeMap::new(),
        };
        for (i, c) in coeffs {
            f = f.with(i, c)?;
        }
        Ok(f)
    }

    /// Sets `c_i` (`i >= 1`), replacing any previous value.
    pub fn with(mut self, i: u32, c: S) -> Result<Self> {
        if i == 0 {
            return Err(Error::Domain("use c0 for the constant coefficient".into()));
        }
        if c.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, c);
        }
        Ok(self)
    }

    pub fn with_c0(mut self, c0: S) -> Self {
        self.c0 = c0;
        self
    }

    pub fn c0(&self) -> &S {
        &self.c0
    }

    /// `c_i` for `i >= 1`, zero off the support.
    pub fn c(&self, i: u32) -> S {
        self.coeffs.get(&i).cloned().unwrap_or_else(S::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, &S)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.coeffs.is_empty()
    }

    /// `Σ_{i∈Z} |c_i| = |c_0| + 2 Σ_{i>=1} |c_i|`.
    pub fn condition_a(&self) -> S {
        let two = S::one() + S::one();
        self.coeffs
            .values()
            .fold(self.c0.abs(), |acc, c| acc + two.clone() * c.abs())
    }

    /// `Σ_{i∈Z} |i| c_i^2 = 2 Σ_{i>=1} i c_i^2`.
    pub fn condition_b(&self) -> S {
        let two = S::one() + S::one();
        self.coeffs.iter().fold(S::zero(), |acc, (&i, c)| {
            acc + two.clone() * S::from_u64(u64::from(i)) * c.clone() * c.clone()
        })
    }

    /// `Σ_{i>=1} |c_i|`.
    pub fn positive_abs_sum(&self) -> S {
        self.coeffs.values().fold(S::zero(), |acc, c| acc + c.abs())
    }

    pub fn to_float(&self) -> FourierData<f64> {
        FourierData {
            c0: self.c0.to_f64(),
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, c.to_f64())).collect(),
        }
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for FourierData<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        if !self.c0.is_zero() {
            items.push(format!("c0={}", self.c0));
        }
        for (i, c) in &self.coeffs {
            items.push(format!("c{i}={c}"));
        }
        f.write_str(&items.join(","))
    }
}

impl FromStr for FourierData<BigRational> {
    type Err = Error;

    /// Parses `"c1=0.3,c2=-1/10"`. Decimals and exponents are read exactly;
    /// `c0` defaults to zero. Repeated indices are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let mut f = FourierData::zero();
        let mut seen = std::collections::BTreeSet::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected cI=VALUE, got {item:?}")))?;
            let idx: u32 = key
                .trim()
                .strip_prefix('c')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad coefficient name {key:?}")))?;
            if !seen.insert(idx) {
                return Err(Error::Parse(format!("coefficient c{idx} given twice")));
            }
            let v = parse_exact(value.trim())?;
            f = if idx == 0 { f.with_c0(v) } else { f.with(idx, v)? };
        }
        Ok(f)
    }
}

/// Exact rational from `"3/10"`, `"-0.25"`, `"1e-3"` or `"7"`.
pub fn parse_exact(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid number {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(all);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    if neg {
        r = -r;
    }
    Ok(r)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_mixed_syntax() {
        let f: FourierData<BigRational> = "c1=0.3,c2=-1/10".parse().unwrap();
        assert_eq!(f.c(1), q(3, 10));
        assert_eq!(f.c(2), q(-1, 10));
        assert_eq!(f.c(3), q(0, 1));
        assert_eq!(*f.c0(), q(0, 1));
        let f: FourierData<BigRational> = "c0=1,c3=2.5e-1".parse().unwrap();
        assert_eq!(*f.c0(), q(1, 1));
        assert_eq!(f.c(3), q(1, 4));
        assert!("c1=x".parse::<FourierData<BigRational>>().is_err());
        assert!("d1=1".parse::<FourierData<BigRational>>().is_err());
        assert!("c1=1,c1=2".parse::<FourierData<BigRational>>().is_err());
        assert!("c1=1/0".parse::<FourierData<BigRational>>().is_err());
        assert_eq!("".parse::<FourierData<BigRational>>().unwrap(), FourierData::zero());
    }

    #[test]
    fn exact_numbers() {
        assert_eq!(parse_exact("7").unwrap(), q(7, 1));
        assert_eq!(parse_exact("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_exact(".5").unwrap(), q(1, 2));
        assert_eq!(parse_exact("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_exact("1.5E2").unwrap(), q(150, 1));
        assert!(parse_exact("1.2.3").is_err());
        assert!(parse_exact("-").is_err());
    }

    #[test]
    fn conditions() {
        let f = FourierData::new(q(1, 2), [(1, q(-1, 3)), (2, q(1, 4))]).unwrap();
        assert_eq!(f.condition_a(), q(1, 2) + q(2, 3) + q(1, 2));
        assert_eq!(f.condition_b(), q(2, 9) + q(4, 16));
        assert_eq!(f.max_index(), 2);
        assert_eq!(f.to_string(), "c0=1/2,c1=-1/3,c2=1/4");
        let g = f.to_float();
        assert!((g.c(1) + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let f = FourierData::<f64>::zero().with(2, 0.0).unwrap();
        assert!(f.is_zero());
        assert!(FourierData::<f64>::zero().with(0, 1.0).is_err());
    }
}
