//! The quantum bound for odd cycles.
//!
//! For an odd n-cycle exclusivity structure the maximum quantum total is
//! the Lovász number of the cycle graph,
//!
//! ```text
//! θ(C_n) = n cos(π/n) / (1 + cos(π/n)),
//! ```
//!
//! an irrational number for n ≥ 5. It is evaluated here to any requested
//! number of decimal digits in exact rational arithmetic: π via Machin's
//! formula, the cosine via its Taylor series, with enough guard digits
//! that the returned rational is within 10^-digits of the true value. No
//! floating point is involved, so two runs at different precisions agree
//! on all shared digits.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::bounds::RootValue;
use crate::error::Error;
use crate::rational::{pow10, pow10_inv, rat_int, round_to_digits, Rational};

/// Guard digits carried through the computation beyond what is returned.
/// The error analysis below shows a handful suffice; ten is comfortable.
const GUARD: u32 = 10;

/// A decimal approximation with a proven accuracy: `value` is an exact
/// rational within 10^-digits of the true quantity it approximates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaValue {
    digits: u32,
    value: Rational,
}

impl ThetaValue {
    /// The approximating rational (denominator a power of ten).
    pub fn value(&self) -> &Rational {
        &self.value
    }

    /// The guaranteed number of correct decimal digits.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// |value^degree - base| for a claimed exact root, as a rational.
    /// Comparing this against a tolerance decides agreement without ever
    /// leaving exact arithmetic.
    pub fn distance_to_root(&self, root: &RootValue) -> Rational {
        (self.value.pow(root.degree() as i32) - root.base()).abs()
    }

    /// Whether this approximation is consistent with the claimed root,
    /// allowing five digits of slack for the error amplification of
    /// raising to the `degree`-th power.
    pub fn agrees_with(&self, root: &RootValue) -> bool {
        let slack = self.digits.saturating_sub(5);
        self.distance_to_root(root) < pow10_inv(slack)
    }
}

impl fmt::Display for ThetaValue {
    /// Renders the fixed number of guaranteed decimal places.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = pow10(self.digits);
        let scaled = (&self.value * Rational::from_integer(scale.clone())).floor();
        let scaled = scaled.to_integer();
        let whole = &scaled / &scale;
        let frac = &scaled % &scale;
        let frac = frac.magnitude().to_str_radix(10);
        write!(
            f,
            "{}.{}{}",
            whole,
            "0".repeat(self.digits as usize - frac.len()),
            frac
        )
    }
}

/// Evaluates θ(C_n) = n·cos(π/n)/(1 + cos(π/n)) for odd n ≥ 3 to the
/// requested number of decimal digits.
pub fn theta_odd_cycle(n: u64, digits: u32) -> Result<ThetaValue, Error> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidCycleLength(n));
    }
    let prec = digits + GUARD;
    // π/n with error below 10^-(prec+2).
    let x = round_to_digits(&(pi(prec + 4) / rat_int(n as i64)), prec + 2);
    // cos is 1-Lipschitz, so cos(x) inherits x's error; the series adds
    // less than 10^-(prec+2) more. For odd n ≥ 3, x ≤ π/3 keeps the
    // series terms eventually decreasing fast.
    let c = cos(&x, prec + 2);
    // θ = n·c/(1+c): with c ∈ [1/2, 1], d/dc [n·c/(1+c)] = n/(1+c)² ≤ n,
    // so the accumulated error stays below n·10^-(prec+1), well under
    // 10^-digits for the ten guard digits carried.
    let theta = rat_int(n as i64) * &c / (Rational::one() + &c);
    Ok(ThetaValue {
        digits,
        value: round_to_digits(&theta, prec),
    })
}

/// π by Machin's formula, 16·atan(1/5) − 4·atan(1/239), with each series
/// truncated once its terms drop below 10^-(prec+2); the result is within
/// 10^-prec of π.
fn pi(prec: u32) -> Rational {
    rat_int(16) * atan_inv(5, prec + 2) - rat_int(4) * atan_inv(239, prec + 2)
}

/// atan(1/k) = Σ (−1)^m / ((2m+1) k^(2m+1)), truncated when a term drops
/// below 10^-prec. The series alternates with decreasing terms, so the
/// truncation error is below the first omitted term. Each term is rounded
/// to a working precision a little past `prec` so denominators stay powers
/// of ten; with O(prec) terms the rounding stays below 10^-(prec+4).
fn atan_inv(k: u64, prec: u32) -> Rational {
    let work = prec + 6 + prec.ilog10();
    let tolerance = pow10_inv(prec);
    let k = rat_int(k as i64);
    let k2 = &k * &k;
    let mut power = k.recip();
    let mut total = Rational::zero();
    let mut m = 0i64;
    loop {
        let term = round_to_digits(&(&power / rat_int(2 * m + 1)), work);
        if term < tolerance {
            break;
        }
        if m % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        power = round_to_digits(&(power / &k2), work);
        m += 1;
    }
    total
}

/// cos(x) for 0 ≤ x ≤ π/3 by Taylor series, truncated when the terms drop
/// below 10^-prec. Terms alternate and decrease from the start for such x,
/// bounding the truncation by the first omitted term; per-term rounding
/// adds a few units in the last guard digit.
fn cos(x: &Rational, prec: u32) -> Rational {
    let tolerance = pow10_inv(prec + 2);
    let x2 = round_to_digits(&(x * x), prec + 6);
    let mut term = Rational::one();
    let mut total = Rational::one();
    let mut m = 1i64;
    loop {
        term = round_to_digits(&(&term * &x2 / rat_int((2 * m - 1) * 2 * m)), prec + 6);
        if term.abs() < tolerance {
            break;
        }
        if m % 2 == 1 {
            total -= &term;
        } else {
            total += &term;
        }
        m += 1;
    }
    round_to_digits(&total, prec)
}
