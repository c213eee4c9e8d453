//! Fixed-point interval reals with directed rounding.
//!
//! A [`Real`] is an interval `[lo, hi] / 2^PREC` guaranteed to contain the
//! exact value. Every operation rounds `lo` down and `hi` up, so any
//! inequality decided from the endpoints is rigorous. With `PREC = 320` the
//! intervals are about 95 significant decimal digits wide for values of
//! moderate size.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Fractional bits carried by every endpoint.
pub const PREC: u64 = 320;

#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    lo: BigInt,
    hi: BigInt,
}

fn one_fp() -> BigInt {
    BigInt::one() << PREC
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn floor_shr(a: &BigInt, bits: u64) -> BigInt {
    floor_div(a, &(BigInt::one() << bits))
}

fn ceil_shr(a: &BigInt, bits: u64) -> BigInt {
    ceil_div(a, &(BigInt::one() << bits))
}

impl Real {
    pub fn from_integer(v: impl Into<BigInt>) -> Real {
        let x = v.into() << PREC;
        Real {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_rational(q: &BigRational) -> Real {
        let num = q.numer() << PREC;
        Real {
            lo: floor_div(&num, q.denom()),
            hi: ceil_div(&num, q.denom()),
        }
    }

    /// Lower endpoint as an exact rational.
    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), one_fp())
    }

    /// Upper endpoint as an exact rational.
    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), one_fp())
    }

    /// Interval width in units of `2^-PREC`.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        let scaled = q.numer() << PREC;
        let lo_ok = &self.lo * q.denom() <= scaled;
        let hi_ok = &self.hi * q.denom() >= scaled;
        lo_ok && hi_ok
    }

    /// The largest `k / den` not exceeding the value.
    pub fn floor_to_denominator(&self, den: &BigInt) -> BigRational {
        BigRational::new(floor_shr(&(&self.lo * den), PREC), den.clone())
    }

    /// The smallest `k / den` not below the value.
    pub fn ceil_to_denominator(&self, den: &BigInt) -> BigRational {
        BigRational::new(ceil_shr(&(&self.hi * den), PREC), den.clone())
    }

    /// True when the whole interval is `>= q`.
    pub fn certainly_ge(&self, q: &BigRational) -> bool {
        &self.lo * q.denom() >= (q.numer() << PREC)
    }

    /// True when the whole interval is `<= q`.
    pub fn certainly_le(&self, q: &BigRational) -> bool {
        &self.hi * q.denom() <= (q.numer() << PREC)
    }

    /// Ordering when the intervals are disjoint; `None` if they overlap.
    pub fn try_cmp(&self, other: &Real) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Real) -> Real {
        Real {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Real) -> Real {
        Real {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Real) -> Real {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let min = products.iter().min().expect("nonempty");
        let max = products.iter().max().expect("nonempty");
        Real {
            lo: floor_shr(min, PREC),
            hi: ceil_shr(max, PREC),
        }
    }

    pub fn mul_int(&self, k: i64) -> Real {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k >= 0 {
            Real { lo: a, hi: b }
        } else {
            Real { lo: b, hi: a }
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Real {
        self.mul(&Real::from_rational(q))
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, k: i64) -> Real {
        assert!(k != 0, "division by zero");
        let kb = BigInt::from(k.abs());
        let (lo, hi) = (floor_div(&self.lo, &kb), ceil_div(&self.hi, &kb));
        let r = Real { lo, hi };
        if k < 0 {
            r.neg()
        } else {
            r
        }
    }

    /// Natural logarithm of a positive rational.
    pub fn ln_rational(q: &BigRational) -> Real {
        assert!(q.is_positive(), "logarithm of a non-positive number");
        // q = 2^k * r with 1 <= r < 2
        let mut k = q.numer().bits() as i64 - q.denom().bits() as i64;
        let shifted = |k: i64| -> BigRational {
            if k >= 0 {
                q / BigRational::from_integer(BigInt::one() << k as u64)
            } else {
                q * BigRational::from_integer(BigInt::one() << (-k) as u64)
            }
        };
        let mut r = shifted(k);
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        while r < one {
            k -= 1;
            r = shifted(k);
        }
        while r >= two {
            k += 1;
            r = shifted(k);
        }
        let y = (&r - &one) / (&r + &one);
        let ln_r = atanh_small(&y).mul_int(2);
        ln2().mul_int(k).add(&ln_r)
    }

    pub fn ln_integer(v: impl Into<BigInt>) -> Real {
        Real::ln_rational(&BigRational::from_integer(v.into()))
    }

    /// `e^x` for the whole interval.
    pub fn exp(&self) -> Real {
        Real {
            lo: exp_point(&self.lo).0,
            hi: exp_point(&self.hi).1,
        }
    }

    /// `base^(p/q)` for a positive rational base.
    pub fn pow_rational(base: &BigRational, p: i64, q: i64) -> Real {
        Real::ln_rational(base).mul_int(p).div_int(q).exp()
    }

    pub fn to_f64(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) >> 1u32;
        // keep 64 significant bits before converting
        let extra = mid.bits().saturating_sub(64);
        let top = (&mid >> extra).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(extra as i32 - PREC as i32)
    }

    /// Decimal string rounded half-up at `places` fractional digits.
    /// Returns `None` when the interval straddles a rounding boundary.
    pub fn to_fixed_checked(&self, places: usize) -> Option<String> {
        let a = round_fixed(&self.lo, places);
        let b = round_fixed(&self.hi, places);
        (a == b).then(|| format_scaled(&a, places))
    }

    /// Decimal string rounded half-up from the interval midpoint.
    pub fn to_fixed(&self, places: usize) -> String {
        let mid: BigInt = &self.lo + &self.hi;
        let scaled = round_scaled(&mid, PREC + 1, places);
        format_scaled(&scaled, places)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_fixed(40))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().unwrap_or(30);
        f.write_str(&self.to_fixed(places))
    }
}

fn round_fixed(x: &BigInt, places: usize) -> BigInt {
    round_scaled(x, PREC, places)
}

/// `round_half_up(x / 2^bits * 10^places)`.
fn round_scaled(x: &BigInt, bits: u64, places: usize) -> BigInt {
    let ten = BigInt::from(10).pow(places as u32);
    let num = (x * ten * 2) + (BigInt::one() << bits);
    floor_div(&num, &(BigInt::one() << (bits + 1)))
}

fn format_scaled(v: &BigInt, places: usize) -> String {
    let neg = v.sign() == Sign::Minus;
    let digits = v.abs().to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Decimal string of an exact rational, rounded half-up (away from zero on ties).
pub fn rational_to_fixed(q: &BigRational, places: usize) -> String {
    let ten = BigInt::from(10).pow(places as u32);
    let num = q.numer().abs() * ten * 2 + q.denom();
    let scaled = floor_div(&num, &(q.denom() * 2));
    let scaled = if q.is_negative() { -scaled } else { scaled };
    format_scaled(&scaled, places)
}

/// `atanh(y)` for an exact rational `0 <= y <= 1/3`.
fn atanh_small(y: &BigRational) -> Real {
    assert!(!y.is_negative() && *y <= BigRational::new(1.into(), 3.into()));
    let yr = Real::from_rational(y);
    let y2 = yr.mul(&yr);
    let mut power = yr.clone();
    let mut sum = Real::from_integer(0);
    let mut k: i64 = 1;
    loop {
        sum = sum.add(&power.div_int(k));
        power = power.mul(&y2);
        k += 2;
        if power.hi <= BigInt::one() {
            break;
        }
    }
    // tail <= y^k / (1 - y^2) <= (9/8) y^k < 2 ulps
    sum.hi += 2;
    sum
}

fn ln2() -> &'static Real {
    static LN2: OnceLock<Real> = OnceLock::new();
    LN2.get_or_init(|| atanh_small(&BigRational::new(1.into(), 3.into())).mul_int(2))
}

/// Bounds on `e^t` for the exact fixed-point value `t / 2^PREC`.
fn exp_point(t: &BigInt) -> (BigInt, BigInt) {
    if t.is_negative() {
        let (lo, hi) = exp_point(&-t);
        // 1/[lo, hi] = [1/hi, 1/lo]
        let one2 = BigInt::one() << (2 * PREC);
        return (floor_div(&one2, &hi), ceil_div(&one2, &lo));
    }
    // t / 2^s <= 1/2
    let int_bits = t.bits().saturating_sub(PREC);
    let s = int_bits + 1;
    let mut u = t.clone() >> s; // floor of t / 2^s, exact below
    let u_lo = u.clone();
    if &(&u << s) != t {
        u += 1;
    }
    let u_hi = u;
    let (mut lo, mut hi) = (taylor_exp(&u_lo).0, taylor_exp(&u_hi).1);
    for _ in 0..s {
        lo = floor_shr(&(&lo * &lo), PREC);
        hi = ceil_shr(&(&hi * &hi), PREC);
    }
    (lo, hi)
}

/// Bounds on `e^u` for fixed-point `0 <= u <= 1/2`.
fn taylor_exp(u: &BigInt) -> (BigInt, BigInt) {
    let mut lo_sum = one_fp();
    let mut hi_sum = one_fp();
    let mut lo_term = one_fp();
    let mut hi_term = one_fp();
    let mut i = 1u64;
    loop {
        lo_term = floor_div(&floor_shr(&(&lo_term * u), PREC), &BigInt::from(i));
        hi_term = ceil_div(&ceil_shr(&(&hi_term * u), PREC), &BigInt::from(i));
        lo_sum += &lo_term;
        hi_sum += &hi_term;
        i += 1;
        if hi_term <= BigInt::one() {
            break;
        }
    }
    // remaining terms sum to less than twice the last one (u <= 1/2)
    hi_sum += 2;
    (lo_sum, hi_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ln_of_known_values() {
        assert!(Real::ln_integer(1).contains(&q(0, 1)));
        let ln22 = Real::ln_rational(&q(11, 5));
        assert_eq!(ln22.to_fixed(6), "0.788457");
        assert_eq!(Real::ln_integer(3).to_fixed(20), "1.09861228866810969140");
        assert_eq!(Real::ln_rational(&q(1, 3)).to_fixed(12), "-1.098612288668");
        assert!(ln22.width_ulps() < BigInt::from(1u64 << 20));
    }

    #[test]
    fn exp_inverts_ln() {
        for v in [q(1, 7), q(5, 2), q(1000, 3), q(123456789, 1)] {
            let back = Real::ln_rational(&v).exp();
            assert!(back.contains(&v), "{v}: {back:?}");
        }
        assert_eq!(
            Real::from_integer(1).exp().to_fixed(25),
            "2.7182818284590452353602875"
        );
    }

    #[test]
    fn roots_and_formatting() {
        let r = Real::pow_rational(&q(16, 1), 1, 3);
        assert_eq!(r.to_fixed(6), "2.519842");
        assert_eq!(
            Real::pow_rational(&q(6, 1), 2, 5).to_fixed(9),
            "2.047672511"
        );
        assert_eq!(rational_to_fixed(&q(45, 8), 6), "5.625000");
        assert_eq!(rational_to_fixed(&q(11390625, 2000000), 6), "5.695313");
        assert_eq!(rational_to_fixed(&q(-1, 3), 3), "-0.333");
    }

    #[test]
    fn directed_bounds_bracket_the_value() {
        let x = Real::ln_rational(&q(11, 5));
        let den = BigInt::from(10u64.pow(12));
        let down = x.floor_to_denominator(&den);
        let up = x.ceil_to_denominator(&den);
        assert!(down < up);
        assert!(x.certainly_ge(&down));
        assert!(x.certainly_le(&up));
    }
}
