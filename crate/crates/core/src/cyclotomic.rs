//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! An element is stored in the power basis `1, z, ..., z^(phi(N)-1)` after
//! reduction modulo the cyclotomic polynomial `Phi_N`, with reduced rational
//! coordinates. The representation is canonical, so equality and hashing are
//! plain coefficient comparisons.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{gcd, modulo, phi};
use crate::error::{Error, Result};

pub type Rational = BigRational;

thread_local! {
    static CYCLOTOMIC_POLYS: RefCell<HashMap<u32, Rc<[i64]>>> = RefCell::new(HashMap::new());
}

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Rc<[i64]> {
    assert!(n >= 1);
    if let Some(p) = CYCLOTOMIC_POLYS.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // X^n - 1 divided by Phi_d for every proper divisor d.
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_int_div(&num, &div);
        }
    }
    let p: Rc<[i64]> = num.into();
    CYCLOTOMIC_POLYS.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

fn exact_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduce a polynomial in `z` (lowest degree first, any length) modulo `Phi_n`.
fn reduce(mut poly: Vec<Rational>, n: u32) -> Vec<Rational> {
    let p = cyclotomic_polynomial(n);
    let deg = p.len() - 1;
    if poly.len() <= deg {
        poly.resize(deg, Rational::zero());
        return poly;
    }
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[i], Rational::zero());
        for (j, &pj) in p[..deg].iter().enumerate() {
            if pj != 0 {
                poly[i - deg + j] -= &c * Rational::from_integer(BigInt::from(pj));
            }
        }
    }
    poly.truncate(deg);
    poly
}

/// An exact element of `Q(zeta_N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    conductor: u32,
    coeffs: Vec<Rational>,
}

/// The four ring operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Checked field arithmetic; `Neg` ignores `y` apart from the conductor check.
pub fn arith(op: ArithOp, x: &CycloNum, y: &CycloNum) -> Result<CycloNum> {
    x.check_conductor(y)?;
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Neg => -x,
    })
}

impl CycloNum {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        CycloNum {
            conductor,
            coeffs: vec![Rational::zero(); phi(conductor as u64) as usize],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_rational(conductor: u32, q: Rational) -> Self {
        let mut x = Self::zero(conductor);
        x.coeffs[0] = q;
        x
    }

    pub fn from_int(conductor: u32, v: i64) -> Self {
        Self::from_rational(conductor, Rational::from_integer(BigInt::from(v)))
    }

    /// `zeta_N^(k mod N)`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let k = modulo(k, conductor as u64) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        CycloNum {
            conductor,
            coeffs: reduce(poly, conductor),
        }
    }

    /// `sum q * zeta_N^k` over the given `(k, q)` terms.
    pub fn from_powers<I>(conductor: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let n = conductor as u64;
        let mut poly = vec![Rational::zero(); conductor as usize];
        for (k, q) in terms {
            poly[modulo(k, n) as usize] += q;
        }
        CycloNum {
            conductor,
            coeffs: reduce(poly, conductor),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coordinates in the power basis `1, z, ..., z^(phi(N)-1)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_conductor(&self, other: &Self) -> Result<()> {
        if self.conductor == other.conductor {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.conductor, other.conductor))
        }
    }

    fn scaled(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.conductor);
        }
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn as_poly(&self) -> Vec<Rational> {
        let mut p = self.coeffs.clone();
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Phi_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, q.recip()));
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        // Invariant: s0 * a == r0 and s1 * a == r1 modulo Phi_N.
        let (mut r0, mut r1) = (modulus, self.as_poly());
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while r1.len() != 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return Err(Error::integrity("cyclotomic polynomial is not irreducible"));
            }
        }
        let c = r1[0].recip();
        let inv: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Ok(CycloNum {
            conductor: self.conductor,
            coeffs: reduce(inv, self.conductor),
        })
    }

    /// The automorphism `zeta_N -> zeta_N^k`; requires `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.conductor as u64;
        let km = modulo(k, n);
        if gcd(km, n) != 1 && n != 1 {
            return Err(Error::InvalidAutomorphism {
                k,
                conductor: self.conductor,
            });
        }
        if self.as_rational().is_some() {
            return Ok(self.clone());
        }
        let mut poly = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[((j as u64 * km) % n) as usize] += c;
            }
        }
        Ok(CycloNum {
            conductor: self.conductor,
            coeffs: reduce(poly, self.conductor),
        })
    }

    /// Complex conjugate, i.e. `sigma_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// The same field element written over `Q(zeta_M)`; `N` must divide `M`.
    pub fn promote(&self, m: u32) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.conductor) {
            return Err(Error::NotDivisible {
                from: self.conductor,
                to: m,
            });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(m, q.clone()));
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Ok(CycloNum {
            conductor: m,
            coeffs: reduce(poly, m),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative order if the element is a root of unity.
    ///
    /// The roots of unity in `Q(zeta_N)` are `+-zeta_N^k`, so a canonical-form
    /// comparison against those is exhaustive.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let n = self.conductor as u64;
        if let Some(q) = self.as_rational() {
            return if q.is_one() {
                Some(1)
            } else if (-q).is_one() {
                Some(2)
            } else {
                None
            };
        }
        let neg = -self;
        for k in 0..n {
            let z = Self::root_of_unity(self.conductor, k as i64);
            if z == *self {
                return Some(n / gcd(n, k));
            }
            if z == neg {
                // -zeta_N^k = zeta_{2N}^{2k+N}
                let m = 2 * n;
                return Some(m / gcd(m, 2 * k + n));
            }
        }
        None
    }

    /// Floating-point value at `zeta_N = exp(2 pi i / N)`; diagnostics only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    poly_trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    poly_trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let lead = b[db].recip();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), poly_trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (poly_trim(quot), poly_trim(rem))
}

impl Add for &CycloNum {
    type Output = CycloNum;

    fn add(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        CycloNum {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;

    fn sub(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        CycloNum {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;

    fn mul(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        if let Some(q) = self.as_rational() {
            return rhs.scaled(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scaled(q);
        }
        let len = self.coeffs.len();
        let mut poly = vec![Rational::zero(); 2 * len - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        CycloNum {
            conductor: self.conductor,
            coeffs: reduce(poly, self.conductor),
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;

    fn neg(self) -> CycloNum {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serialized as `Q(zeta_N): a/b*z^k + ...`, or `Q(zeta_N): 0`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{}): ", self.conductor)?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.denom().is_one() {
                write!(f, "{}*z^{k}", c.numer())?;
            } else {
                write!(f, "{}/{}*z^{k}", c.numer(), c.denom())?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for CycloNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let s = s.trim();
        let rest = s
            .strip_prefix("Q(zeta_")
            .ok_or_else(|| bad("missing Q(zeta_N) header"))?;
        let close = rest.find(')').ok_or_else(|| bad("unclosed header"))?;
        let conductor: u32 = rest[..close]
            .trim()
            .parse()
            .map_err(|_| bad("bad conductor"))?;
        if conductor == 0 {
            return Err(bad("conductor must be positive"));
        }
        let body = rest[close + 1..]
            .trim_start()
            .strip_prefix(':')
            .ok_or_else(|| bad("missing ':'"))?
            .trim();
        if body == "0" {
            return Ok(CycloNum::zero(conductor));
        }
        let mut terms = Vec::new();
        for term in body.split(" + ") {
            let (coef, power) = term
                .trim()
                .split_once("*z^")
                .ok_or_else(|| bad("term without *z^k"))?;
            let k: i64 = power.trim().parse().map_err(|_| bad("bad exponent"))?;
            let q = match coef.split_once('/') {
                Some((a, b)) => {
                    let a: BigInt = a.trim().parse().map_err(|_| bad("bad numerator"))?;
                    let b: BigInt = b.trim().parse().map_err(|_| bad("bad denominator"))?;
                    if b.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    Rational::new(a, b)
                }
                None => {
                    Rational::from_integer(coef.trim().parse().map_err(|_| bad("bad integer"))?)
                }
            };
            terms.push((k, q));
        }
        Ok(CycloNum::from_powers(conductor, terms))
    }
}
