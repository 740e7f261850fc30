use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{FieldError, Rat};

/// Exact value `u + v·√d` with `d` square-free.
///
/// Rational values are stored with `v = 0, d = 1` whatever field they came
/// from, so they combine freely with any radicand. Two values with nonzero
/// radical parts over different radicands cannot be combined.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadVal {
    u: Rat,
    v: Rat,
    d: u64,
}

/// Arithmetic operation selector for [`qv_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Checked arithmetic entry point. `y` is ignored for `Neg`.
pub fn qv_arith(op: ArithOp, x: &QuadVal, y: &QuadVal) -> Result<QuadVal, FieldError> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
        ArithOp::Neg => Ok(-x),
    }
}

/// Splits `n = s²·f` with `f` square-free and returns `(s, f)`.
pub fn square_free_part(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (s, f * n)
}

pub fn is_square_free(n: u64) -> bool {
    n >= 1 && square_free_part(n).0 == 1
}

impl QuadVal {
    /// `u + v·√d`. Square factors of `d` are pulled into `v`; a perfect
    /// square `d` folds the value into the rationals.
    pub fn new(u: Rat, v: Rat, d: u64) -> Result<QuadVal, FieldError> {
        if d == 0 {
            return Ok(QuadVal::rational(u));
        }
        let (s, f) = square_free_part(d);
        let v = v * Rat::from_int(s as i64);
        if f == 1 {
            return Ok(QuadVal::rational(u + v));
        }
        Ok(QuadVal::canonical(u, v, f))
    }

    fn canonical(u: Rat, v: Rat, d: u64) -> QuadVal {
        if v.is_zero() || d == 1 {
            let u = if d == 1 { u + v } else { u };
            QuadVal {
                u,
                v: Rat::zero(),
                d: 1,
            }
        } else {
            QuadVal { u, v, d }
        }
    }

    pub fn rational(u: Rat) -> QuadVal {
        QuadVal {
            u,
            v: Rat::zero(),
            d: 1,
        }
    }

    pub fn int(n: i64) -> QuadVal {
        QuadVal::rational(Rat::from_int(n))
    }

    pub fn frac(n: i64, m: i64) -> QuadVal {
        QuadVal::rational(Rat::new(n, m))
    }

    pub fn zero() -> QuadVal {
        QuadVal::int(0)
    }

    pub fn one() -> QuadVal {
        QuadVal::int(1)
    }

    /// `(n/m)·√d`.
    pub fn surd(n: i64, m: i64, d: u64) -> QuadVal {
        QuadVal::new(Rat::zero(), Rat::new(n, m), d).expect("valid radicand")
    }

    pub fn u(&self) -> &Rat {
        &self.u
    }

    pub fn v(&self) -> &Rat {
        &self.v
    }

    /// Radicand; `1` for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// The rational value, if the radical part vanishes.
    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.u)
    }

    fn common_d(&self, o: &QuadVal) -> Result<u64, FieldError> {
        match (self.d, o.d) {
            (1, d) | (d, 1) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(FieldError::RadicandMismatch(a, b)),
        }
    }

    pub fn checked_add(&self, o: &QuadVal) -> Result<QuadVal, FieldError> {
        let d = self.common_d(o)?;
        Ok(QuadVal::canonical(&self.u + &o.u, &self.v + &o.v, d))
    }

    pub fn checked_sub(&self, o: &QuadVal) -> Result<QuadVal, FieldError> {
        let d = self.common_d(o)?;
        Ok(QuadVal::canonical(&self.u - &o.u, &self.v - &o.v, d))
    }

    pub fn checked_mul(&self, o: &QuadVal) -> Result<QuadVal, FieldError> {
        let d = self.common_d(o)?;
        if o.is_rational() {
            return Ok(self.scale(&o.u));
        }
        if self.is_rational() {
            return Ok(o.scale(&self.u));
        }
        let dr = Rat::from_int(d as i64);
        let u = &(&self.u * &o.u) + &(&(&self.v * &o.v) * &dr);
        let v = &(&self.u * &o.v) + &(&self.v * &o.u);
        Ok(QuadVal::canonical(u, v, d))
    }

    pub fn checked_div(&self, o: &QuadVal) -> Result<QuadVal, FieldError> {
        let inv = o.recip()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse via the conjugate: `1/(u+v√d) = (u−v√d)/(u²−v²d)`.
    pub fn recip(&self) -> Result<QuadVal, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(QuadVal::rational(self.u.recip()?));
        }
        let n = self.norm();
        let inv = n.recip()?;
        Ok(QuadVal::canonical(&self.u * &inv, -(&self.v * &inv), self.d))
    }

    /// Field norm `u² − v²d`.
    pub fn norm(&self) -> Rat {
        let dr = Rat::from_int(self.d as i64);
        &(&self.u * &self.u) - &(&(&self.v * &self.v) * &dr)
    }

    pub fn conjugate(&self) -> QuadVal {
        QuadVal::canonical(self.u.clone(), -&self.v, self.d)
    }

    pub fn scale(&self, r: &Rat) -> QuadVal {
        QuadVal::canonical(&self.u * r, &self.v * r, self.d)
    }

    /// Exact sign of `u + v√d`, by comparing `u²` with `v²d` when the two
    /// parts disagree in sign.
    pub fn signum(&self) -> i32 {
        let su = self.u.signum();
        let sv = self.v.signum();
        if sv == 0 {
            return su;
        }
        if su == 0 || su == sv {
            return sv;
        }
        let dr = Rat::from_int(self.d as i64);
        let uu = &self.u * &self.u;
        let vvd = &(&self.v * &self.v) * &dr;
        match uu.cmp(&vvd) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> QuadVal {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact `⌊x⌋`, found by bisection on integers using only [`signum`](Self::signum).
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.u.floor();
        }
        // |v|·√d ≤ |v|·d, so the value lies within this many units of u.
        let spread = (&self.v.abs() * &Rat::from_int(self.d as i64)).floor() + BigInt::one();
        let mut lo = self.u.floor() - &spread - BigInt::one();
        let mut hi = self.u.floor() + &spread + BigInt::one();
        debug_assert!(self.sub_int(&lo).signum() >= 0);
        debug_assert!(self.sub_int(&hi).signum() < 0);
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if self.sub_int(&mid).signum() >= 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    fn sub_int(&self, k: &BigInt) -> QuadVal {
        QuadVal::canonical(&self.u - &Rat::from_bigint(k.clone()), self.v.clone(), self.d)
    }

    /// Approximate value, for rendering and human-readable output only.
    pub fn to_f64(&self) -> f64 {
        self.u.to_f64() + self.v.to_f64() * (self.d as f64).sqrt()
    }

    /// Fully explicit literal `p/q+r/s*sqrt(d)` using the context radicand
    /// `ctx_d` when the value itself is rational.
    pub fn to_literal(&self, ctx_d: u64) -> String {
        let d = if self.is_rational() { ctx_d } else { self.d };
        let sign = if self.v.signum() < 0 { '-' } else { '+' };
        format!("{}{}{}*sqrt({})", self.u, sign, self.v.abs(), d)
    }
}

impl Ord for QuadVal {
    /// Exact comparison. Panics if both values carry different radicands.
    fn cmp(&self, o: &QuadVal) -> Ordering {
        let diff = self.checked_sub(o).expect("comparison across radicands");
        diff.signum().cmp(&0)
    }
}

impl PartialOrd for QuadVal {
    fn partial_cmp(&self, o: &QuadVal) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

macro_rules! op_impl {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadVal> for &'a QuadVal {
            type Output = QuadVal;
            fn $m(self, o: &QuadVal) -> QuadVal {
                self.$checked(o).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<QuadVal> for QuadVal {
            type Output = QuadVal;
            fn $m(self, o: QuadVal) -> QuadVal {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QuadVal> for QuadVal {
            type Output = QuadVal;
            fn $m(self, o: &QuadVal) -> QuadVal {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QuadVal> for &'a QuadVal {
            type Output = QuadVal;
            fn $m(self, o: QuadVal) -> QuadVal {
                self.$m(&o)
            }
        }
    };
}
op_impl!(Add, add, checked_add);
op_impl!(Sub, sub, checked_sub);
op_impl!(Mul, mul, checked_mul);
op_impl!(Div, div, checked_div);

impl Neg for &QuadVal {
    type Output = QuadVal;
    fn neg(self) -> QuadVal {
        QuadVal {
            u: -&self.u,
            v: -&self.v,
            d: self.d,
        }
    }
}

impl Neg for QuadVal {
    type Output = QuadVal;
    fn neg(self) -> QuadVal {
        -&self
    }
}

impl From<Rat> for QuadVal {
    fn from(r: Rat) -> QuadVal {
        QuadVal::rational(r)
    }
}

impl From<i64> for QuadVal {
    fn from(n: i64) -> QuadVal {
        QuadVal::int(n)
    }
}

impl fmt::Debug for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn compact(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

/// Compact form: `1`, `1/2*sqrt(3)`, `1/4+1/4*sqrt(5)`. Always re-parseable.
impl fmt::Display for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&compact(&self.u));
        }
        if self.u.is_zero() {
            return write!(f, "{}*sqrt({})", compact(&self.v), self.d);
        }
        let sign = if self.v.signum() < 0 { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt({})",
            compact(&self.u),
            sign,
            compact(&self.v.abs()),
            self.d
        )
    }
}

impl FromStr for QuadVal {
    type Err = FieldError;

    /// Parses `p/q`, `r/s*sqrt(d)`, `p/q+r/s*sqrt(d)` or `p/q-r/s*sqrt(d)`
    /// (no whitespace). Integers may omit `/1`; `sqrt(d)` alone means `1*sqrt(d)`.
    fn from_str(s: &str) -> Result<QuadVal, FieldError> {
        let bad = || FieldError::Parse(format!("invalid field literal `{}`", s));
        if s.is_empty() || s.contains(char::is_whitespace) {
            return Err(bad());
        }
        let Some(rad_start) = s.find("sqrt(") else {
            return Ok(QuadVal::rational(s.parse()?));
        };
        if !s.ends_with(')') {
            return Err(bad());
        }
        let d: u64 = s[rad_start + 5..s.len() - 1].parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        let head = &s[..rad_start];
        // head is "", "coef*", "u+coef*", "u-coef*", "+", "-", "u+", "u-"
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && &head[i - 1..i] != "/")
            .map(|(i, _)| i)
            .last();
        let (u_str, v_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let u: Rat = if u_str.is_empty() { Rat::zero() } else { u_str.parse()? };
        let v: Rat = match v_str {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            t => t.strip_prefix('+').unwrap_or(t).parse()?,
        };
        QuadVal::new(u, v, d)
    }
}

/// `⌊num/den⌋` clamped at zero, as an enumeration bound.
pub(crate) fn floor_ratio(num: &QuadVal, den: &QuadVal) -> Result<u64, FieldError> {
    let f = num.checked_div(den)?.floor();
    if f.is_negative() {
        return Ok(0);
    }
    f.to_u64().ok_or(FieldError::BoundTooLarge)
}
