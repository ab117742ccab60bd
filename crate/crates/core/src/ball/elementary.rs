//! exp, ln, sqrt, factorial and the constants pi, e, ln 2 on balls.
//!
//! Series are summed in ball arithmetic, so every rounding is already in the
//! radius; the only hand-derived error term is the truncated tail, which is
//! bounded by a geometric majorant and added explicitly.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use super::{Ball, BallError, Dyadic, Round};

const GUARD_BITS: u32 = 24;

type ConstCache = RwLock<HashMap<u32, Ball>>;

/// Per-precision cache. Two threads racing to fill the same slot compute the
/// same ball, so the second insert is harmless.
fn cached(cache: &'static OnceLock<ConstCache>, prec: u32, compute: impl FnOnce() -> Ball) -> Ball {
    let cache = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(b) = cache.read().expect("cache lock").get(&prec) {
        return b.clone();
    }
    let b = compute();
    cache.write().expect("cache lock").entry(prec).or_insert_with(|| b.clone());
    b
}

/// `sum_{j>=0} (-1)^j / ((2j+1) k^(2j+1))`, i.e. `atan(1/k)` for an integer `k >= 2`.
fn atan_inv(k: u64, prec: u32) -> Ball {
    let k2 = Ball::from_int(k * k, prec);
    let mut power = Ball::from_int(1, prec)
        .try_div(&Ball::from_int(k, prec))
        .expect("k > 0");
    let mut sum = power.clone();
    let mut j: u64 = 0;
    // alternating series with decreasing terms: tail <= first omitted term <= k^-(2j+3)
    loop {
        j += 1;
        power = power.try_div(&k2).expect("k > 0");
        let term = power.try_div(&Ball::from_int(2 * j + 1, prec)).expect("nonzero");
        sum = if j % 2 == 1 { &sum - &term } else { &sum + &term };
        let next_mag = (2 * j + 3) as f64 * (k as f64).log2();
        if next_mag > prec as f64 + 4.0 {
            let tail = Dyadic::pow2(-(next_mag.floor() as i64));
            return sum.add_error(&tail);
        }
    }
}

/// Enclosure of pi with radius at most `2^(2-bits) * pi`.
pub fn const_pi(bits: u32) -> Ball {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    let bits = bits.max(2);
    cached(&CACHE, bits, || {
        let w = bits + GUARD_BITS;
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let a = atan_inv(5, w).mul_pow2(4);
        let b = atan_inv(239, w).mul_pow2(2);
        (&a - &b).set_prec(bits)
    })
}

/// `2 atanh(w) = ln((1+w)/(1-w))` for a ball with `|w| <= w_max <= 1/3`.
fn atanh_series(w: &Ball, w_max: &Dyadic, prec: u32) -> Ball {
    let w2 = w.sqr();
    let w2_max = w_max.mul(w_max).round(34, Round::Up);
    let mut power = w.clone();
    let mut sum = w.clone();
    let mut j: u64 = 0;
    // |tail| <= |w|^(2j+3)/(2j+3) / (1 - w^2) <= 2 |w|^(2j+3)
    let mut tail_mag = w_max.mul(&w2_max).round(34, Round::Up);
    let stop = Dyadic::pow2(-(prec as i64) - 4);
    while tail_mag > stop {
        j += 1;
        power = &power * &w2;
        let term = power.try_div(&Ball::from_int(2 * j + 1, prec)).expect("nonzero");
        sum = &sum + &term;
        tail_mag = tail_mag.mul(&w2_max).round(34, Round::Up);
    }
    sum.add_error(&tail_mag.mul_pow2(1)).mul_pow2(1)
}

pub fn const_ln2(bits: u32) -> Ball {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    let bits = bits.max(2);
    cached(&CACHE, bits, || {
        let w = bits + GUARD_BITS;
        let third = Ball::from_int(1, w).try_div(&Ball::from_int(3, w)).expect("nonzero");
        let third_max = Dyadic::one().div(&Dyadic::from_int(3), 34, Round::Up);
        atanh_series(&third, &third_max, w).set_prec(bits)
    })
}

pub fn const_e(bits: u32) -> Ball {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    let bits = bits.max(2);
    cached(&CACHE, bits, || exp_point(&Dyadic::one(), bits).expect("exp(1) is finite"))
}

/// exp of an exact dyadic.
fn exp_point(x: &Dyadic, prec: u32) -> Result<Ball, BallError> {
    if x.is_zero() {
        return Ok(Ball::from_int(1, prec));
    }
    if x.magnitude_exp() > 62 {
        return Err(BallError::Domain(format!("exp argument too large: {}", x.to_f64())));
    }
    let squarings = ((prec as f64).sqrt() / 2.0).ceil() as i64;
    let k = (x.to_f64() / std::f64::consts::LN_2).round() as i64;
    let k_bits = 64 - k.unsigned_abs().leading_zeros();
    let w = prec + GUARD_BITS + squarings as u32 + k_bits;
    // x = k ln2 + t with |t| <~ 0.35
    let t = &Ball::from_dyadic(x.clone(), w) - &(&const_ln2(w) * &Ball::from_int(k, w));
    let y = t.mul_pow2(-squarings);
    let y_max = y.abs_upper().round(34, Round::Up);
    if y_max > Dyadic::pow2(-1) {
        return Err(BallError::Domain("exp range reduction failed".into()));
    }
    let mut term = Ball::from_int(1, w);
    let mut sum = term.clone();
    // bound on |y|^j / j!
    let mut mag = Dyadic::one();
    let stop = Dyadic::pow2(-(w as i64) - 4);
    let mut j: u64 = 0;
    loop {
        j += 1;
        term = (&term * &y).try_div(&Ball::from_int(j, w)).expect("nonzero");
        sum = &sum + &term;
        mag = mag.mul(&y_max).div(&Dyadic::from_int(j), 34, Round::Up);
        // tail after index j: sum_{i>j} |y|^i/i! <= 2 |y|^(j+1)/(j+1)! for |y| <= 1/2
        let next = mag.mul(&y_max).div(&Dyadic::from_int(j + 1), 34, Round::Up);
        if next < stop {
            sum = sum.add_error(&next.mul_pow2(1));
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.sqr();
    }
    Ok(sum.mul_pow2(k).set_prec(prec))
}

pub(super) fn exp(x: &Ball) -> Result<Ball, BallError> {
    let prec = x.prec();
    if x.rad().is_zero() {
        return exp_point(x.mid(), prec);
    }
    if *x.rad() <= Dyadic::one() {
        // |exp(m+d) - exp(m)| <= exp(m) (e^r - 1) <= exp(m) r (1 + 2r) for r <= 1
        let e = exp_point(x.mid(), prec)?;
        let grow = x.rad().mul(&Dyadic::one().add(&x.rad().mul_pow2(1)));
        let extra = e.abs_upper().mul(&grow);
        return Ok(e.add_error(&extra));
    }
    let lo = exp_point(&x.lower(), prec)?;
    let hi = exp_point(&x.upper(), prec)?;
    Ok(Ball::from_endpoints(&lo.lower(), &hi.upper(), prec))
}

/// ln of an exact positive dyadic.
fn ln_point(x: &Dyadic, prec: u32) -> Ball {
    debug_assert!(x.is_positive());
    let mut e2 = x.magnitude_exp();
    let w = prec + GUARD_BITS + (64 - e2.unsigned_abs().leading_zeros());
    // f in [1/2, 1), then moved into [2/3, 4/3)
    let mut f = x.mul_pow2(-e2);
    if f.mul(&Dyadic::from_int(3)) < Dyadic::from_int(2) {
        f = f.mul_pow2(1);
        e2 -= 1;
    }
    let fb = Ball::from_dyadic(f.clone(), w);
    let one = Ball::from_int(1, w);
    let wball = (&fb - &one).try_div(&(&fb + &one)).expect("f + 1 > 0");
    // |(f-1)/(f+1)| < 1/5 on [2/3, 4/3)
    let w_max = wball.abs_upper().round(34, Round::Up);
    let mut out = atanh_series(&wball, &w_max, w);
    if e2 != 0 {
        out = &out + &(&const_ln2(w) * &Ball::from_int(e2, w));
    }
    out.set_prec(prec)
}

pub(super) fn ln(x: &Ball) -> Result<Ball, BallError> {
    if !x.is_positive() {
        return Err(BallError::Domain("ln needs a strictly positive argument".into()));
    }
    let prec = x.prec();
    let l = ln_point(x.mid(), prec);
    if x.rad().is_zero() {
        return Ok(l);
    }
    // |ln(m + d) - ln(m)| <= r / (m - r)
    let den = x.lower().round(RAD_GUARD, Round::Down);
    let extra = x.rad().div(&den, RAD_GUARD, Round::Up);
    Ok(l.add_error(&extra))
}

const RAD_GUARD: u32 = 34;

fn sqrt_dir(x: &Dyadic, prec: u32, up: bool) -> Dyadic {
    // x = man * 2^exp with man > 0
    let man = x.mantissa().clone();
    let exp = x.exponent();
    let mut t = (2 * prec as i64 + 2 - man.bits() as i64).max(0);
    if (exp - t).rem_euclid(2) != 0 {
        t += 1;
    }
    let m: BigInt = man << t as u64;
    let s = m.sqrt();
    let s = if up && &s * &s != m { s + 1 } else { s };
    let r = Dyadic::new(s, (exp - t) / 2);
    r.round(prec, if up { Round::Up } else { Round::Down })
}

pub(super) fn sqrt(x: &Ball) -> Result<Ball, BallError> {
    if !x.is_positive() {
        return Err(BallError::Domain("sqrt needs a strictly positive argument".into()));
    }
    let prec = x.prec();
    let lo = sqrt_dir(&x.lower(), prec + 2, false);
    let hi = sqrt_dir(&x.upper(), prec + 2, true);
    Ok(Ball::from_endpoints(&lo, &hi, prec))
}

/// `n!`, exact whenever it fits in `bits` mantissa bits.
pub fn factorial(n: u64, bits: u32) -> Ball {
    let w = bits + 8 + (64 - n.leading_zeros());
    let mut acc = Ball::from_int(1, w);
    let mut chunk: u128 = 1;
    for k in 2..=n {
        match chunk.checked_mul(k as u128) {
            Some(c) if c < (1u128 << 120) => chunk = c,
            _ => {
                acc = &acc * &Ball::from_int(chunk, w);
                chunk = k as u128;
            }
        }
    }
    acc = &acc * &Ball::from_int(chunk, w);
    acc.set_prec(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_rational::BigRational;

    fn near(b: &Ball, v: f64, tol: f64) -> bool {
        (b.to_f64() - v).abs() < tol
    }

    #[test]
    fn pi_and_e() {
        let pi = const_pi(64);
        assert!(near(&pi, std::f64::consts::PI, 1e-15));
        assert!(pi.lower().to_rational() > rat(314159265358979, 100000000000000));
        assert!(pi.upper().to_rational() < rat(314159265358980, 100000000000000));
        let e = const_e(64);
        assert!(e.lower().to_rational() > rat(271828182845904, 100000000000000));
        assert!(e.upper().to_rational() < rat(271828182845905, 100000000000000));
        assert!(const_pi(8).contains(&const_pi(256)));
        assert!(const_e(8).contains(&const_e(256)));
    }

    #[test]
    fn pi_radius_contract() {
        for bits in [2, 8, 53, 64, 200, 1000] {
            let pi = const_pi(bits);
            let bound = pi.mid().mul(&Dyadic::pow2(2 - bits as i64));
            assert!(*pi.rad() <= bound, "bits {bits}");
        }
    }

    #[test]
    fn exp_of_zero_and_ln_of_one() {
        let one = exp(&Ball::from_int(0, 64)).unwrap();
        assert_eq!(one, Ball::from_int(1, 64));
        let z = ln(&Ball::from_int(1, 64)).unwrap();
        assert!(z.contains_rational(&BigRational::from_integer(0.into())));
    }

    #[test]
    fn exp_and_ln_values() {
        assert!(near(&exp(&Ball::from_int(1, 128)).unwrap(), std::f64::consts::E, 1e-15));
        assert!(near(&exp(&Ball::from_int(-3, 128)).unwrap(), (-3f64).exp(), 1e-17));
        assert!(near(&exp(&Ball::from_int(700, 128)).unwrap(), 700f64.exp(), 700f64.exp() * 1e-14));
        assert!(near(&ln(&Ball::from_int(2, 128)).unwrap(), std::f64::consts::LN_2, 1e-16));
        assert!(near(&ln(&Ball::from_rational(&rat(1, 1000), 128)).unwrap(), (0.001f64).ln(), 1e-14));
        let l = ln(&exp(&Ball::from_rational(&rat(7, 3), 200)).unwrap()).unwrap();
        assert!(l.contains_rational(&rat(7, 3)));
    }

    #[test]
    fn ln_and_sqrt_reject_nonpositive() {
        assert!(matches!(ln(&Ball::from_int(0, 64)), Err(BallError::Domain(_))));
        assert!(matches!(sqrt(&Ball::from_int(-1, 64)), Err(BallError::Domain(_))));
        let straddle = Ball::with_radius(Dyadic::one(), Dyadic::from_int(2), 64);
        assert!(ln(&straddle).is_err());
    }

    #[test]
    fn sqrt_values() {
        let s = sqrt(&Ball::from_int(2, 128)).unwrap();
        assert!(near(&s, std::f64::consts::SQRT_2, 1e-16));
        assert!(s.sqr().contains_rational(&rat(2, 1)));
        let four = sqrt(&Ball::from_int(4, 64)).unwrap();
        assert!(four.contains_rational(&rat(2, 1)));
        assert!(*four.rad() <= Dyadic::pow2(-60));
    }

    #[test]
    fn small_factorials_are_exact() {
        let f = factorial(5, 64);
        assert!(f.is_exact());
        assert_eq!(f, Ball::from_int(120, 64));
        assert!(factorial(20, 64).contains_rational(&BigRational::from_integer(2432902008176640000u64.into())));
        let big = factorial(30, 64);
        let exact: BigInt = (1..=30u32).map(BigInt::from).product();
        assert!(big.contains_rational(&BigRational::from_integer(exact)));
    }

    #[test]
    fn wide_input_balls() {
        let x = Ball::with_radius(Dyadic::one(), Dyadic::pow2(-10), 64);
        let e = exp(&x).unwrap();
        for q in [rat(1023, 1024), rat(1, 1), rat(1025, 1024)] {
            // exp(q) for the three sample points inside x
            let ex = exp(&Ball::from_rational(&q, 128)).unwrap();
            assert!(e.contains(&ex));
        }
        let wide = Ball::with_radius(Dyadic::one(), Dyadic::from_int(3), 64);
        let ew = exp(&wide).unwrap();
        assert!(ew.contains(&exp(&Ball::from_int(-2, 128)).unwrap()));
        assert!(ew.contains(&exp(&Ball::from_int(4, 128)).unwrap()));
    }
}
