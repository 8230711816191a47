//! Closed-form rate bounds for k-hash and (b,k)-hash codes.
//!
//! Every formula is generic over [`Scalar`], so identities such as
//! `theta_closed(k, 1/k) == alpha(k)` can be checked exactly over
//! [`BigRational`](num_rational::BigRational). Formulas that take a base-2
//! logarithm fail with [`Error::Inexact`] in rational mode unless the
//! logarithm is itself rational (a power of two) or is multiplied by zero.
//! All logarithms are base 2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, Real, Scalar};

/// Alphabet size `k` of a k-hash code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphabetSize(usize);

impl AlphabetSize {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidAlphabet {
                k,
                reason: "need k >= 2",
            });
        }
        Ok(Self(k))
    }

    /// Sizes for which `log(k/(k-3))` is finite and positive.
    pub fn for_pipeline(k: usize) -> Result<Self> {
        if k < 4 {
            return Err(Error::InvalidAlphabet {
                k,
                reason: "need k >= 4 (log(k/(k-3)) must be positive)",
            });
        }
        Ok(Self(k))
    }

    pub fn get(self) -> usize {
        self.0
    }

    fn big(self) -> i64 {
        self.0 as i64
    }

    /// `k^2 - 2k`
    fn k2(self) -> i64 {
        let k = self.big();
        k * k - 2 * k
    }
}

/// Threshold `gamma` in `(0, 1/k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Threshold<T> {
    k: AlphabetSize,
    gamma: T,
}

impl<T: Scalar> Threshold<T> {
    pub fn new(k: usize, gamma: T) -> Result<Self> {
        let k = AlphabetSize::for_pipeline(k)?;
        check_gamma(k, &gamma)?;
        Ok(Self { k, gamma })
    }

    pub fn k(&self) -> usize {
        self.k.get()
    }

    pub fn gamma(&self) -> &T {
        &self.gamma
    }

    /// True when `gamma` is below `1/(2k-3)`, where the closed-form analysis
    /// of `Q` is no longer covered by the concavity argument.
    pub fn below_concavity_range(&self) -> bool {
        self.gamma < T::ratio(1, 2 * self.k.big() - 3)
    }
}

fn check_gamma<T: Scalar>(k: AlphabetSize, gamma: &T) -> Result<()> {
    if !(*gamma > T::zero() && *gamma <= T::ratio(1, k.big())) {
        return Err(Error::Domain {
            name: "gamma",
            value: gamma.to_f64(),
            domain: format!("(0, 1/{}]", k.get()),
        });
    }
    Ok(())
}

fn log2_of<T: Scalar>(x: T, what: &'static str) -> Result<T> {
    x.log2_checked().ok_or(Error::Inexact { what })
}

/// The lower edge of the threshold range used by the concavity argument, `1/(2k-3)`.
pub fn concavity_gamma_floor<T: Scalar>(k: usize) -> Result<T> {
    let k = AlphabetSize::for_pipeline(k)?;
    Ok(T::ratio(1, 2 * k.big() - 3))
}

/// The pole `1/(k^2-2k)` of `beta_star` and `theta_closed`.
pub fn gamma_pole<T: Scalar>(k: usize) -> Result<T> {
    let k = AlphabetSize::for_pipeline(k)?;
    Ok(T::ratio(1, k.k2()))
}

/// Fredman–Komlós bound `k!/k^(k-1)`.
pub fn fk_alpha<T: Scalar>(k: usize) -> Result<T> {
    let k = AlphabetSize::new(k)?;
    Ok(factorial::<T>(k.get() as u32) / T::from_u64(k.get() as u64).powu(k.get() as u32 - 1))
}

/// Double-counting bound `log2(k/(k-1))`.
pub fn trivial_upper<T: Scalar>(k: usize) -> Result<T> {
    let k = AlphabetSize::new(k)?;
    log2_of(T::ratio(k.big(), k.big() - 1), "log2(k/(k-1))")
}

/// Random-coding lower bound `(1/(k-1)) log2(1/(1 - k!/k^k))`.
pub fn prob_lower<T: Scalar>(k: usize) -> Result<T> {
    let k = AlphabetSize::new(k)?;
    let kk = T::from_u64(k.get() as u64);
    let p = factorial::<T>(k.get() as u32) / kk.powu(k.get() as u32);
    let l = log2_of(T::one() / (T::one() - p), "log2(1/(1-k!/k^k))")?;
    Ok(l / T::from_u64(k.get() as u64 - 1))
}

/// `log2(k/(k-3))`, the exchange rate between fixed coordinates and subcode size.
pub fn log_ratio<T: Scalar>(k: usize) -> Result<T> {
    let k = AlphabetSize::for_pipeline(k)?;
    log2_of(T::ratio(k.big(), k.big() - 3), "log2(k/(k-3))")
}

/// `G_k(y) = (k-1)! y^(k-2) ((k-1) - (k^2-2k) y)` on `[0, 1/(k-1)]`.
pub fn g_poly<T: Scalar>(k: usize, y: T) -> Result<T> {
    let k = AlphabetSize::for_pipeline(k)?;
    if !(y >= T::zero() && y <= T::ratio(1, k.big() - 1)) {
        return Err(Error::Domain {
            name: "y",
            value: y.to_f64(),
            domain: format!("[0, 1/{}]", k.get() - 1),
        });
    }
    Ok(g_poly_unchecked(k, y))
}

fn g_poly_unchecked<T: Scalar>(k: AlphabetSize, y: T) -> T {
    let kn = k.get() as u32;
    factorial::<T>(kn - 1)
        * y.powu(kn - 2)
        * (T::from_i64(k.big() - 1) - T::from_i64(k.k2()) * y)
}

/// `G_k'(y) = (k-1)!(k-1)(k-2) y^(k-3) (1 - k y)`.
pub fn g_poly_derivative<T: Scalar>(k: usize, y: T) -> Result<T> {
    let k = AlphabetSize::for_pipeline(k)?;
    let kn = k.get() as u32;
    Ok(factorial::<T>(kn - 1)
        * T::from_u64((kn as u64 - 1) * (kn as u64 - 2))
        * y.powu(kn - 3)
        * (T::one() - T::from_u64(kn as u64) * y))
}

/// `xi_k(gamma) = G_k((1-gamma)/(k-1))`, the per-coordinate bound on skewed coordinates.
pub fn xi<T: Scalar>(k: usize, gamma: T) -> Result<T> {
    let t = Threshold::new(k, gamma)?;
    let kn = k as u32;
    let one_minus = T::one() - t.gamma.clone();
    Ok(factorial::<T>(kn - 2)
        * one_minus.powu(kn - 2)
        * (T::from_i64(t.k.k2()) * t.gamma + T::one())
        / T::from_u64(k as u64 - 1).powu(kn - 2))
}

/// `eps_k(gamma) = alpha_k - xi_k(gamma) >= 0`.
pub fn eps<T: Scalar>(k: usize, gamma: T) -> Result<T> {
    Ok(fk_alpha::<T>(k)? - xi(k, gamma)?)
}

/// Rate bound for codes with many skewed coordinates.
pub fn r_unbal<T: Scalar>(k: usize, gamma: T) -> Result<T> {
    let alpha = fk_alpha::<T>(k)?;
    let e = eps(k, gamma)?;
    if e.is_zero() {
        return Ok(alpha);
    }
    let l = log_ratio::<T>(k)?;
    Ok(alpha / (T::one() + e / l))
}

/// Rate bound for almost-balanced codes given the balanced-case constant `theta`.
pub fn r_bal<T: Scalar>(k: usize, theta: T) -> Result<T> {
    AlphabetSize::for_pipeline(k)?;
    if theta < T::zero() {
        return Err(Error::Domain {
            name: "theta",
            value: theta.to_f64(),
            domain: "[0, inf)".into(),
        });
    }
    if theta.is_zero() {
        return Ok(theta);
    }
    let l = log_ratio::<T>(k)?;
    Ok(theta.clone() / (T::one() + theta / l))
}

/// `Q_k^gamma(beta)` restricted to `beta` in `[0, 1/(k-1)]`.
pub fn q_poly<T: Scalar>(k: usize, gamma: T, beta: T) -> Result<T> {
    AlphabetSize::for_pipeline(k)?;
    if !(beta >= T::zero() && beta <= T::ratio(1, k as i64 - 1)) {
        return Err(Error::Domain {
            name: "beta",
            value: beta.to_f64(),
            domain: format!("[0, 1/{}]", k - 1),
        });
    }
    q_poly_unclamped(k, gamma, beta)
}

/// `Q_k^gamma(beta) = (k-1)! beta^(k-3) (beta (1 - (k^2-2k) gamma) + (k-2) gamma)`
/// for any real `beta`; used to evaluate the polynomial at its stationary point.
pub fn q_poly_unclamped<T: Scalar>(k: usize, gamma: T, beta: T) -> Result<T> {
    let k = AlphabetSize::for_pipeline(k)?;
    let kn = k.get() as u32;
    let inner = beta.clone() * (T::one() - T::from_i64(k.k2()) * gamma.clone())
        + T::from_u64(kn as u64 - 2) * gamma;
    Ok(factorial::<T>(kn - 1) * beta.powu(kn - 3) * inner)
}

/// Stationary point `beta* = (k-3) gamma / ((k^2-2k) gamma - 1)` of `Q`.
pub fn beta_star<T: Scalar>(k: usize, gamma: T) -> Result<T> {
    let k = AlphabetSize::for_pipeline(k)?;
    let den = pole_denominator(k, &gamma)?;
    Ok(T::from_i64(k.big() - 3) * gamma / den)
}

fn pole_denominator<T: Scalar>(k: AlphabetSize, gamma: &T) -> Result<T> {
    let den = T::from_i64(k.k2()) * gamma.clone() - T::one();
    if den <= T::zero() {
        return Err(Error::Pole {
            k: k.get(),
            gamma: gamma.to_f64(),
        });
    }
    Ok(den)
}

/// Closed-form `theta_k(gamma) = Q(beta*)`, valid when the conjectured
/// functional is the maximal one.
pub fn theta_closed<T: Scalar>(k: usize, gamma: T) -> Result<T> {
    let k = AlphabetSize::for_pipeline(k)?;
    let den = pole_denominator(k, &gamma)?;
    let kn = k.get() as u32;
    Ok(factorial::<T>(kn - 1)
        * T::from_u64(kn as u64 - 3).powu(kn - 3)
        * gamma.powu(kn - 2)
        / den.powu(kn - 3))
}

/// Maximum of `Q` over the feasible interval `[1/k, 1/(k-1)]` together with
/// the maximizing `beta`. Differs from [`theta_closed`] whenever `beta*`
/// falls outside the interval.
pub fn theta_clamped<T: Scalar>(k: usize, gamma: T) -> Result<(T, T)> {
    let ka = AlphabetSize::for_pipeline(k)?;
    let lo = T::ratio(1, ka.big());
    let hi = T::ratio(1, ka.big() - 1);
    let mut candidates = vec![lo.clone(), hi.clone()];
    if let Ok(b) = beta_star(k, gamma.clone()) {
        if b > lo && b < hi {
            candidates.push(b);
        }
    }
    let mut best: Option<(T, T)> = None;
    for b in candidates {
        let v = q_poly_unclamped(k, gamma.clone(), b.clone())?;
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, b));
        }
    }
    Ok(best.expect("at least two candidates"))
}

/// Falling factorial `b (b-1) ... (b-m+1)` in exact integer arithmetic.
pub fn falling_factorial(b: u64, m: u64) -> BigInt {
    (0..m).fold(BigInt::one(), |acc, i| {
        if i >= b {
            BigInt::zero()
        } else {
            acc * BigInt::from(b - i)
        }
    })
}

fn check_bk(b: usize, k: usize) -> Result<()> {
    if k < 2 || b < k {
        return Err(Error::InvalidParams {
            b,
            k,
            reason: "need b >= k >= 2",
        });
    }
    Ok(())
}

/// Result of the Körner–Marton minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct KmBound<T> {
    pub value: T,
    /// Minimizing `j` in `0..=k-2`; the lowest one on ties.
    pub j: usize,
    /// Every term of the minimum, in `f64`, indexed by `j`.
    pub terms: Vec<f64>,
}

/// Körner–Marton bound `min_j (b^{j+1 falling}/b^{j+1}) log2((b-j)/(k-j-1))`.
///
/// The minimizing `j` is chosen in `f64`; the chosen term is then evaluated
/// in `T`, which is exact in rational mode when its logarithm is.
pub fn km_bound<T: Scalar>(b: usize, k: usize) -> Result<KmBound<T>> {
    check_bk(b, k)?;
    let coeff = |j: usize| -> BigRational {
        let num = falling_factorial(b as u64, j as u64 + 1);
        let den = BigInt::from(b).pow(j as u32 + 1);
        BigRational::new(num, den)
    };
    let terms: Vec<f64> = (0..=k - 2)
        .map(|j| {
            let c = Scalar::to_f64(&coeff(j));
            c * ((b - j) as f64 / (k - j - 1) as f64).log2()
        })
        .collect();
    let mut j_min = 0;
    for (j, t) in terms.iter().enumerate() {
        if *t < terms[j_min] {
            j_min = j;
        }
    }
    let c = coeff(j_min);
    let c_t = T::from_big_ratio(c.numer(), c.denom());
    let l = log2_of(
        T::ratio((b - j_min) as i64, (k - j_min - 1) as i64),
        "log2((b-j)/(k-j-1))",
    )?;
    Ok(KmBound {
        value: c_t * l,
        j: j_min,
        terms,
    })
}

/// One constraint function `alpha_j(x)` of Arikan's bound, for `2 <= j <= k-2`.
pub fn arikan_constraint<T: Real>(b: usize, k: usize, j: usize, x: T) -> Result<T> {
    check_bk(b, k)?;
    if !(2..=k.saturating_sub(2)).contains(&j) {
        return Err(Error::Index(format!("j={j} outside 2..={}", k.saturating_sub(2))));
    }
    let log_b = T::from_u64(b as u64).log2();
    let ff = falling_factorial(b as u64, j as u64);
    let bj = BigInt::from(b).pow(j as u32);
    let coeff = T::from_big_ratio(&ff, &bj);
    let base = (T::one() - x / log_b)
        * coeff
        * T::ratio((b - j) as i64, (k - 1 - j) as i64).log2();
    let two_neg_x = T::from_f64(2.0).powf(-x);
    if j + k <= b {
        // j <= b-k
        Ok(T::ratio((b - j) as i64, k as i64 - 1) * two_neg_x * base)
    } else {
        let damp = T::one() - T::ratio(j as i64, (b - k + 1) as i64) * (T::one() - two_neg_x);
        Ok(damp * base)
    }
}

fn arikan_feasible<T: Real>(b: usize, k: usize, x: T) -> Result<bool> {
    for j in 2..=k - 2 {
        if x > arikan_constraint(b, k, j, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Arikan's bound `sup { x : x <= alpha_j(x), j = 2..k-2 }`, by bisection on
/// `[0, log2 b]` to absolute tolerance `1e-9`.
pub fn arikan_bound<T: Real>(b: usize, k: usize) -> Result<T> {
    check_bk(b, k)?;
    if k < 4 {
        return Err(Error::InvalidParams {
            b,
            k,
            reason: "constraint range j = 2..k-2 is empty (need k >= 4)",
        });
    }
    let mut lo = T::zero();
    if !arikan_feasible(b, k, lo)? {
        return Err(Error::InvalidParams {
            b,
            k,
            reason: "infeasible at x = 0",
        });
    }
    let mut hi = T::from_u64(b as u64).log2();
    if arikan_feasible(b, k, hi)? {
        return Ok(hi);
    }
    let tol = T::from_f64(1e-9).max(T::epsilon() * T::from_f64(4.0));
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) / T::from_f64(2.0);
        if arikan_feasible(b, k, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
