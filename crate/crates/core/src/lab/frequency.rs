use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::code::Code;
use crate::bounds::{log_ratio, AlphabetSize};
use crate::error::{Error, Result};

/// Symbol frequencies at every coordinate, exact.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyProfile {
    size: usize,
    /// `counts[i][a]` = number of words with symbol `a` at coordinate `i`.
    counts: Vec<Vec<usize>>,
}

impl FrequencyProfile {
    pub fn code_size(&self) -> usize {
        self.size
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self, i: usize) -> &[usize] {
        &self.counts[i]
    }

    /// `f_i[a]` as an exact rational.
    pub fn frequency(&self, i: usize, a: usize) -> BigRational {
        BigRational::new(BigInt::from(self.counts[i][a]), BigInt::from(self.size))
    }

    pub fn coordinate(&self, i: usize) -> Vec<BigRational> {
        (0..self.counts[i].len()).map(|a| self.frequency(i, a)).collect()
    }

    pub fn coordinate_f64(&self, i: usize) -> Vec<f64> {
        self.counts[i]
            .iter()
            .map(|&c| c as f64 / self.size as f64)
            .collect()
    }

    /// `min_a f_i[a]`.
    pub fn min_frequency(&self, i: usize) -> BigRational {
        let c = *self.counts[i].iter().min().expect("alphabet is non-empty");
        BigRational::new(BigInt::from(c), BigInt::from(self.size))
    }
}

pub fn frequency_profile(code: &Code) -> FrequencyProfile {
    let mut counts = vec![vec![0usize; code.alphabet()]; code.n()];
    for w in code.words() {
        for (i, &s) in w.iter().enumerate() {
            counts[i][s as usize] += 1;
        }
    }
    FrequencyProfile {
        size: code.len(),
        counts,
    }
}

/// `ell = floor((log2|C| - log2 n) / log2(k/(k-3)))`, clamped at 0.
/// The flag reports whether clamping happened.
pub fn ell(k: usize, n: usize, code_size: usize) -> Result<(usize, bool)> {
    if n == 0 || code_size == 0 {
        return Err(Error::InvalidCode("empty code or zero length".into()));
    }
    let l = log_ratio::<f64>(k)?;
    let raw = ((code_size as f64).log2() - (n as f64).log2()) / l;
    let v = raw.floor();
    if v < 0.0 {
        Ok((0, true))
    } else {
        Ok((v as usize, false))
    }
}

/// [`ell`] from the rate instead of the code size: `floor((nR - log2 n)/log2(k/(k-3)))`.
pub fn ell_from_rate(k: usize, n: usize, rate: f64) -> Result<(usize, bool)> {
    if n == 0 {
        return Err(Error::InvalidCode("zero length".into()));
    }
    let l = log_ratio::<f64>(k)?;
    let v = ((n as f64 * rate - (n as f64).log2()) / l).floor();
    if v < 0.0 {
        Ok((0, true))
    } else {
        Ok((v as usize, false))
    }
}

/// Split of the coordinates by how close their symbol distribution is to uniform.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateClassification {
    pub gamma: f64,
    /// Coordinates (0-based) with `min_a f_i[a] >= gamma`.
    pub balanced: Vec<usize>,
    pub skewed: Vec<usize>,
    pub ell: usize,
    pub ell_clamped: bool,
}

/// Classify coordinates against `gamma`, comparing exactly.
pub fn classify(code: &Code, gamma: f64) -> Result<CoordinateClassification> {
    AlphabetSize::for_pipeline(code.alphabet())?;
    let g = decimal_rational(gamma).ok_or(Error::Domain {
        name: "gamma",
        value: gamma,
        domain: "finite".into(),
    })?;
    let profile = frequency_profile(code);
    let (mut balanced, mut skewed) = (Vec::new(), Vec::new());
    for i in 0..code.n() {
        if profile.min_frequency(i) >= g {
            balanced.push(i);
        } else {
            skewed.push(i);
        }
    }
    let (ell, ell_clamped) = ell(code.alphabet(), code.n(), code.len())?;
    Ok(CoordinateClassification {
        gamma,
        balanced,
        skewed,
        ell,
        ell_clamped,
    })
}

/// The rational written by the shortest decimal that round-trips to `x`,
/// so `0.2` becomes exactly `1/5`.
pub fn decimal_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let text = format!("{x:e}");
    let (mantissa, exp) = text.split_once('e')?;
    let exp: i64 = exp.parse().ok()?;
    let negative = mantissa.starts_with('-');
    let digits_part = mantissa.trim_start_matches('-');
    let (int_part, frac_part) = digits_part.split_once('.').unwrap_or((digits_part, ""));
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        r = -r;
    }
    Some(r)
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn code(k: usize, rows: &[&[u8]]) -> Code {
        let words = rows.iter().map(|r| r.iter().map(|s| s - 1).collect()).collect();
        Code::new(k, rows[0].len(), words).unwrap()
    }

    #[test]
    fn profile_example() {
        let c = code(4, &[&[1, 1], &[1, 2], &[2, 3], &[2, 4]]);
        let p = frequency_profile(&c);
        let half = BigRational::new(1.into(), 2.into());
        let quarter = BigRational::new(1.into(), 4.into());
        assert_eq!(
            p.coordinate(0),
            vec![half.clone(), half, BigRational::zero(), BigRational::zero()]
        );
        assert_eq!(p.coordinate(1), vec![quarter; 4]);
        let cl = classify(&c, 0.2).unwrap();
        assert_eq!(cl.balanced, vec![1]);
        assert_eq!(cl.skewed, vec![0]);
        for i in 0..2 {
            let s: BigRational = p.coordinate(i).into_iter().sum();
            assert!(s.is_one());
        }
    }

    #[test]
    fn full_space_is_balanced() {
        let c = Code::full(5, 1).unwrap();
        let cl = classify(&c, 0.2).unwrap();
        assert_eq!(cl.balanced, vec![0]);
        let cl = classify(&c, 0.2000001).unwrap();
        assert!(cl.balanced.is_empty());
    }

    #[test]
    fn decimal_conversion() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(decimal_rational(0.2), Some(r(1, 5)));
        assert_eq!(decimal_rational(-1.25e-3), Some(r(-1, 800)));
        assert_eq!(decimal_rational(300.0), Some(r(300, 1)));
        assert_eq!(decimal_rational(0.0), Some(r(0, 1)));
        assert_eq!(decimal_rational(f64::NAN), None);
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell_from_rate(4, 100, 0.3).unwrap(), (11, false));
        assert_eq!(ell_from_rate(4, 100, 0.0).unwrap(), (0, true));
        assert!(ell(3, 10, 10).is_err());
    }
}
