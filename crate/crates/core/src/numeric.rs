//! Exact rational arithmetic shared by the box game criterion and the
//! branch-set Maker's subset conditions.
//!
//! Every comparison against a harmonic-number bound is done in `Ratio<i128>`
//! — no floating point. With the documented input caps (at most
//! [`MAX_HARMONIC_INDEX`] boxes, coin counts and biases below 2^40) all
//! intermediate products stay far inside the i128 range: lcm(1..=64) is
//! about 10^28 and i128 holds 1.7·10^38.

use num_rational::Ratio;

/// Exact rational used throughout the crate.
pub type Rat = Ratio<i128>;

/// Largest index for which harmonic numbers are provided. lcm(1..=64) still
/// leaves ten orders of magnitude of i128 headroom for the bound products.
pub const MAX_HARMONIC_INDEX: usize = 64;

/// Table of harmonic numbers h_i = 1 + 1/2 + ... + 1/i as exact rationals.
///
/// `h(0)` is 0 by convention, which the prefix-form criteria rely on.
#[derive(Clone, Debug)]
pub struct HarmonicTable {
    values: Vec<Rat>,
}

impl HarmonicTable {
    /// Table covering h_0 .. h_max_index.
    ///
    /// Panics if `max_index` exceeds [`MAX_HARMONIC_INDEX`].
    pub fn new(max_index: usize) -> Self {
        assert!(
            max_index <= MAX_HARMONIC_INDEX,
            "harmonic index {max_index} exceeds supported maximum {MAX_HARMONIC_INDEX}"
        );
        let mut values = Vec::with_capacity(max_index + 1);
        values.push(Rat::from_integer(0));
        for i in 1..=max_index {
            let prev = values[i - 1];
            values.push(prev + Rat::new(1, i as i128));
        }
        HarmonicTable { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// h_i. Panics if `i` is outside the table.
    pub fn h(&self, i: usize) -> Rat {
        self.values[i]
    }
}

/// Parse a plain decimal literal ("0.2", "3", ".75") into an exact rational.
///
/// Used for strategy parameters such as the slack ε, so that "0.2" means
/// exactly 1/5 rather than the nearest binary float.
pub fn parse_decimal_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1i128, rest),
        None => (1i128, s),
    };
    if digits.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    if frac_part.len() > 18 {
        return None; // denominator 10^19 would risk overflow in later products
    }
    let mut num: i128 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        num = num.checked_mul(10)?.checked_add((b - b'0') as i128)?;
    }
    let den = 10i128.checked_pow(frac_part.len() as u32)?;
    Some(Rat::new(sign * num, den))
}
