//! The ring Λ = Z[t1^±1, t2^±1].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("zero polynomial has no preferred generator")]
    Zero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("matrix determinant {0} is not ±1")]
    NotUnimodular(i64),
    #[error("polynomial syntax: {0}")]
    Syntax(String),
}

/// Exponent pair `(a, b)` for `t1^a t2^b`.
pub type Exp = (i64, i64);

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly2 {
    terms: BTreeMap<Exp, BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitMonomial {
    pub sign: i8,
    pub exp: Exp,
}

impl UnitMonomial {
    pub fn to_poly(self) -> LaurentPoly2 {
        LaurentPoly2::monomial(self.sign as i64, self.exp.0, self.exp.1)
    }
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: i64, a: i64, b: i64) -> Self {
        Self::monomial_big(BigInt::from(c), (a, b))
    }

    pub fn monomial_big(c: BigInt, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly2 { terms }
    }

    pub fn t1() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t2() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, BigInt)>) -> Self {
        let mut p = LaurentPoly2::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of Λ are `±t1^a t2^b`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.abs().is_one())
    }

    pub fn as_unit(&self) -> Option<UnitMonomial> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(UnitMonomial {
            sign: if c.is_positive() { 1 } else { -1 },
            exp: *e,
        })
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Leading exponent in lexicographic order.
    pub fn leading(&self) -> Option<(Exp, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly2 {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn shift(&self, a: i64, b: i64) -> Self {
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| ((e.0 + a, e.1 + b), x.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Minimum exponent of each variable; `(0,0)` for zero.
    pub fn min_exponents(&self) -> Exp {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    pub fn max_exponents(&self) -> Exp {
        let a = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        (a, b)
    }

    /// Substitutes `t1 -> img1`, `t2 -> img2` for monomial images.
    pub fn substitute_monomials(&self, img1: Exp, img2: Exp) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| {
            ((a * img1.0 + b * img2.0, a * img1.1 + b * img2.1), c.clone())
        }))
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_associate(&self, other: &LaurentPoly2) -> bool {
        match (preferred_generator(self), preferred_generator(other)) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// `self / g` when the division is exact in Λ.
    pub fn div_exact(&self, g: &LaurentPoly2) -> Option<LaurentPoly2> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (fa, fb) = self.min_exponents();
        let (ga, gb) = g.min_exponents();
        let f0 = self.shift(-fa, -fb);
        let g0 = g.shift(-ga, -gb);
        let (lg, lc) = g0.leading().map(|(e, c)| (e, c.clone()))?;
        let mut rem = f0;
        let mut quot = Self::zero();
        while let Some((le, c)) = rem.leading().map(|(e, c)| (e, c.clone())) {
            if le.0 < lg.0 || le.1 < lg.1 {
                return None;
            }
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let e = (le.0 - lg.0, le.1 - lg.1);
            let term = Self::monomial_big(q, e);
            rem = &rem - &(&g0 * &term);
            quot = &quot + &term;
        }
        Some(quot.shift(fa - ga, fb - gb))
    }

    pub fn divides(&self, f: &LaurentPoly2) -> bool {
        f.div_exact(self).is_some()
    }
}

impl Add<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly2> for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term((e1.0 + e2.0, e1.1 + e2.1), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly2> for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $m(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        -&self
    }
}

/// `t1 -> t1^-1`, `t2 -> t2^-1`.
pub fn involution_sigma(f: &LaurentPoly2) -> LaurentPoly2 {
    f.substitute_monomials((-1, 0), (0, -1))
}

/// `f(1,1)`
pub fn augmentation_eval(f: &LaurentPoly2) -> BigInt {
    f.terms.values().sum()
}

/// The associate with nonnegative exponents, no monomial factor, and a
/// positive coefficient on the lexicographically greatest exponent pair.
pub fn preferred_generator(f: &LaurentPoly2) -> Result<LaurentPoly2, LaurentError> {
    if f.is_zero() {
        return Err(LaurentError::Zero);
    }
    let (a, b) = f.min_exponents();
    let g = f.shift(-a, -b);
    let positive = g.leading().is_some_and(|(_, c)| c.is_positive());
    Ok(if positive { g } else { -&g })
}

/// Substitutes `t1 -> t1^m00 t2^m01`, `t2 -> t1^m10 t2^m11`.
pub fn sl2_substitute(f: &LaurentPoly2, m: [[i64; 2]; 2]) -> Result<LaurentPoly2, LaurentError> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() != 1 {
        return Err(LaurentError::NotUnimodular(det));
    }
    Ok(f.substitute_monomials((m[0][0], m[0][1]), (m[1][0], m[1][1])))
}

pub fn gcd_lambda(f: &LaurentPoly2, g: &LaurentPoly2) -> Result<LaurentPoly2, LaurentError> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(LaurentError::BothZero),
        (true, false) => return preferred_generator(g),
        (false, true) => return preferred_generator(f),
        _ => {}
    }
    let a = Biv::from_laurent(&preferred_generator(f)?);
    let b = Biv::from_laurent(&preferred_generator(g)?);
    preferred_generator(&biv_gcd(&a, &b).to_laurent())
}

pub fn gcd_many<'a>(
    it: impl IntoIterator<Item = &'a LaurentPoly2>,
) -> Result<LaurentPoly2, LaurentError> {
    let mut acc = LaurentPoly2::zero();
    for f in it {
        if f.is_zero() {
            continue;
        }
        acc = if acc.is_zero() {
            preferred_generator(f)?
        } else {
            gcd_lambda(&acc, f)?
        };
        if acc.is_unit() {
            break;
        }
    }
    if acc.is_zero() {
        Err(LaurentError::BothZero)
    } else {
        Ok(acc)
    }
}

// Dense univariate integer polynomials, index = exponent.
type UPoly = Vec<BigInt>;

fn u_trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn u_is_zero(p: &UPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(out)
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    u_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn u_content(p: &UPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn u_div_exact(a: &UPoly, b: &UPoly) -> UPoly {
    let a = u_trim(a.clone());
    let b = u_trim(b.clone());
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut rem = a;
    let mut q = vec![BigInt::zero(); rem.len().saturating_sub(db).max(1)];
    while rem.len() > db && !rem.is_empty() {
        let k = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] / lb;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
        rem = u_trim(rem);
    }
    debug_assert!(rem.is_empty(), "inexact univariate division");
    u_trim(q)
}

fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = u_trim(a.clone());
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r[r.len() - 1].clone();
        let mut next: UPoly = r.iter().map(|c| c * &lb).collect();
        for (j, bj) in b.iter().enumerate() {
            next[k + j] -= &lr * bj;
        }
        r = u_trim(next);
    }
    r
}

fn u_primitive(p: &UPoly) -> UPoly {
    let c = u_content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if p.last().is_some_and(|x| x.is_negative()) {
        -c
    } else {
        c
    };
    p.iter().map(|x| x / &sign).collect()
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let a = u_trim(a.clone());
    let b = u_trim(b.clone());
    if a.is_empty() {
        return u_primitive(&b).into_iter().map(|x| x * u_content(&b)).collect();
    }
    if b.is_empty() {
        return u_primitive(&a).into_iter().map(|x| x * u_content(&a)).collect();
    }
    let c = u_content(&a).gcd(&u_content(&b));
    let (mut x, mut y) = (u_primitive(&a), u_primitive(&b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = u_primitive(&u_prem(&x, &y));
        x = y;
        y = r;
    }
    x.into_iter().map(|v| v * &c).collect()
}

/// Bivariate polynomial as a polynomial in t2 with coefficients in Z[t1].
#[derive(Clone, Debug)]
struct Biv(Vec<UPoly>);

impl Biv {
    fn from_laurent(f: &LaurentPoly2) -> Self {
        let (ma, mb) = f.max_exponents();
        let mut rows = vec![vec![BigInt::zero(); ma as usize + 1]; mb as usize + 1];
        for (&(a, b), c) in f.terms() {
            rows[b as usize][a as usize] = c.clone();
        }
        Biv(rows.into_iter().map(u_trim).collect()).trim()
    }

    fn to_laurent(&self) -> LaurentPoly2 {
        LaurentPoly2::from_terms(self.0.iter().enumerate().flat_map(|(b, row)| {
            row.iter()
                .enumerate()
                .map(move |(a, c)| ((a as i64, b as i64), c.clone()))
        }))
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(u_is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(u_is_zero)
    }

    fn content(&self) -> UPoly {
        self.0.iter().fold(Vec::new(), |g, c| u_gcd(&g, c))
    }

    fn div_coeff(&self, c: &UPoly) -> Biv {
        Biv(self.0.iter().map(|x| u_div_exact(x, c)).collect()).trim()
    }

    fn primitive(&self) -> Biv {
        let c = self.content();
        if c.is_empty() {
            return Biv(Vec::new());
        }
        self.div_coeff(&c)
    }

    fn prem(&self, b: &Biv) -> Biv {
        let db = b.0.len() - 1;
        let lb = b.0[db].clone();
        let mut r = self.clone().trim();
        while r.0.len() > db && !r.is_zero() {
            let k = r.0.len() - 1 - db;
            let lr = r.0[r.0.len() - 1].clone();
            let mut next: Vec<UPoly> = r.0.iter().map(|c| u_mul(c, &lb)).collect();
            for (j, bj) in b.0.iter().enumerate() {
                next[k + j] = u_sub(&next[k + j], &u_mul(&lr, bj));
            }
            r = Biv(next).trim();
        }
        r
    }
}

fn biv_gcd(a: &Biv, b: &Biv) -> Biv {
    let c = u_gcd(&a.content(), &b.content());
    let (mut x, mut y) = (a.primitive(), b.primitive());
    if x.0.len() < y.0.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = x.prem(&y).primitive();
        x = y;
        y = r;
    }
    Biv(x.0.iter().map(|row| u_mul(row, &c)).collect()).trim()
}

/// Parses sums of terms `c*t1^a*t2^b`; `s` and `t` stand for `t1` and `t2`.
pub fn parse_poly(text: &str) -> Result<LaurentPoly2, LaurentError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(LaurentError::Syntax("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut out = LaurentPoly2::zero();
    for term in terms {
        let (neg, body) = match term.as_bytes().first() {
            Some(b'+') => (false, &term[1..]),
            Some(b'-') => (true, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(LaurentError::Syntax(format!("dangling sign in `{text}`")));
        }
        let mut coeff = BigInt::one();
        let mut exp = (0i64, 0i64);
        for factor in body.split('*') {
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => (
                    b,
                    p.parse::<i64>()
                        .map_err(|_| LaurentError::Syntax(format!("bad exponent `{p}`")))?,
                ),
                None => (factor, 1),
            };
            match base {
                "t1" | "s" => exp.0 += power,
                "t2" | "t" => exp.1 += power,
                _ => {
                    let c = BigInt::from_str(base)
                        .map_err(|_| LaurentError::Syntax(format!("bad factor `{factor}`")))?;
                    if base.starts_with(['+', '-']) {
                        return Err(LaurentError::Syntax(format!("bad factor `{factor}`")));
                    }
                    if !(0..=64).contains(&power) {
                        return Err(LaurentError::Syntax(format!("bad power on `{factor}`")));
                    }
                    coeff *= num_traits::pow(c, power as usize);
                }
            }
            if exp.0.abs() > 1_000_000 || exp.1.abs() > 1_000_000 {
                return Err(LaurentError::Syntax("exponent too large".into()));
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.add_term(exp, coeff);
    }
    Ok(out)
}

impl FromStr for LaurentPoly2 {
    type Err = LaurentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

fn fmt_var(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = [fmt_var("t1", a), fmt_var("t2", b)]
                .into_iter()
                .flatten()
                .collect();
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || vars.is_empty() {
                parts.push(mag.to_string());
            }
            parts.extend(vars);
            let body = parts.join("*");
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ({self})")
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}
