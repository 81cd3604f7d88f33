//! Univariate polynomials and rational functions in `t` over Q.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{ExactDiv, Field, Rational, Ring};

/// Polynomial in `t`, coefficients from the constant term up; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }
    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }
    pub fn t() -> Self {
        UPoly(vec![Rational::zero(), Rational::one()])
    }
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }
    /// Largest power of `t` dividing the polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        Self::new((0..n).map(|i| self.0.get(i).unwrap_or(&z).add(o.0.get(i).unwrap_or(&z))).collect())
    }
    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| c.neg()).collect())
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j].add_mul(a, b);
            }
        }
        Self::new(c)
    }
    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.0.iter().map(|c| c.mul(s)).collect())
    }
    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.lead().inv()?;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return Ok((UPoly::default(), self.clone()));
        }
        let mut qv = vec![Rational::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let c = r[k + dd].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.0.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(b));
            }
            qv[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(qv), Self::new(r)))
    }
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        self.scale(&inv)
    }
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let abs = if neg { c.neg() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Element of Q(t), kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn from_parts(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.divrem(&g)?;
        let (mut d, _) = den.divrem(&g)?;
        let lc = d.lead();
        let inv = lc.inv()?;
        n = n.scale(&inv);
        d = d.scale(&inv);
        Ok(RatFunc { num: n, den: d })
    }
    pub fn poly(p: UPoly) -> Self {
        RatFunc { num: p, den: UPoly::constant(Rational::one()) }
    }
    pub fn t() -> Self {
        Self::poly(UPoly::t())
    }
    pub fn constant(c: Rational) -> Self {
        Self::poly(UPoly::constant(c))
    }
    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        let mut c = vec![Rational::zero(); k.unsigned_abs() as usize + 1];
        c[k.unsigned_abs() as usize] = Rational::one();
        let m = UPoly::new(c);
        if k >= 0 {
            Self::poly(m)
        } else {
            RatFunc { num: UPoly::constant(Rational::one()), den: m }
        }
    }
    pub fn numer(&self) -> &UPoly {
        &self.num
    }
    pub fn denom(&self) -> &UPoly {
        &self.den
    }
    /// Order of vanishing at `t = 0` (negative for a pole); `None` for zero.
    pub fn order_at_zero(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("nonzero denominator") as i64;
        Some(vn - vd)
    }
    pub fn has_pole_at_zero(&self) -> bool {
        self.order_at_zero().is_some_and(|o| o < 0)
    }
    /// Value at `t = a`; errors on a pole.
    pub fn eval(&self, a: &Rational) -> Result<Rational> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.num.eval(a).div(&d)
    }

    /// Parses expressions such as `t^-1`, `(t^2+1)/t`, `-3/2*t`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = ExprParser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!("unexpected `{}` at column {} in `{s}`", p.s[p.pos] as char, p.pos + 1)));
        }
        Ok(v)
    }
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at column {}", self.pos + 1))
    }
    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()? as i64;
            let mut acc = RatFunc::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return if neg { acc.inv() } else { Ok(acc) };
        }
        Ok(base)
    }
    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer too large"))
    }
    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let v = i64::try_from(v).map_err(|_| self.err("integer too large"))?;
                Ok(RatFunc::constant(Rational::integer(v)))
            }
            _ => Err(self.err("expected `t`, number or `(`")),
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: UPoly::default(), den: UPoly::constant(Rational::one()) }
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::from_parts(self.num.add(&o.num), self.den.clone()).expect("nonzero");
        }
        Self::from_parts(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
            .expect("nonzero")
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero")
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(Rational::integer(v))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::from_parts(self.den.clone(), self.num.clone())
    }
    fn characteristic() -> u64 {
        0
    }
    fn from_rational(q: &Rational) -> Result<Self> {
        Ok(Self::constant(q.clone()))
    }
    fn field_name() -> String {
        "Q(t)".to_string()
    }
}

impl ExactDiv for RatFunc {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div(d).ok()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UPoly| {
            let s = p.to_string();
            if p.0.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
