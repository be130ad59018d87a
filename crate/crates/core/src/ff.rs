//! Exact arithmetic in F_{p^m}.
//!
//! Elements are polynomials over F_p of degree < m, reduced modulo a fixed
//! monic irreducible polynomial. Internally an element is the base-p integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` of its coefficient vector, and
//! multiplication goes through discrete log / exponential tables built once
//! per context.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};

/// Largest supported field size. Table-driven arithmetic needs O(q) memory.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Above this size additions are done digit-wise instead of by table.
const ADD_TABLE_LIMIT: u32 = 256;

static NEXT_CTX_ID: AtomicU32 = AtomicU32::new(1);

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{m} exceeds the supported maximum of {MAX_FIELD_SIZE}")]
    TooLarge { p: u64, m: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients in [0, p), got {got:?}")]
    BadModulus { expected: u32, got: Vec<u64> },
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// Arithmetic operation selector for [`FieldCtx::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// An element of some [`FieldCtx`]. Cheap to copy; meaningless without its
/// context.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ctx: u32,
    value: u32,
}

impl FieldElem {
    /// Base-p integer encoding of the coefficient vector.
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn ctx_id(self) -> u32 {
        self.ctx
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F#{}[{}]", self.ctx, self.value)
    }
}

/// JSON form of a field context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// The field F_{p^m} with a fixed modulus. Immutable after construction.
pub struct FieldCtx {
    id: u32,
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for 0 <= i < 2(q-1), g the primitive element.
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("id", &self.id)
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over F_p, ascending coefficients, used only while
/// building a context.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo monic `b`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let p64 = p as u64;
        while r.len() > db {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                let t = (lead * bi as u64) % p64;
                let x = &mut r[shift + i];
                *x = ((*x as u64 + p64 - t) % p64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p64 = p as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// base-p digits of `idx`, lowest degree first.
    pub fn monic_from_index(mut idx: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            c.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        c.push(1);
        c
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        if deg <= 1 {
            return deg == 1;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d);
            for idx in 0..count {
                let g = monic_from_index(idx, d, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldCtx {
    /// Builds F_{p^m}. Without an explicit modulus the lexicographically
    /// smallest monic irreducible is chosen, comparing the ascending
    /// coefficient tuple `(c_0, ..., c_{m-1})` with `c_0` most significant.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).pow(m);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(FieldError::TooLarge { p, m });
        }
        let p32 = p as u32;
        let modulus = match modulus {
            Some(given) => {
                let ok = given.len() == m as usize + 1
                    && given.last() == Some(&1)
                    && given.iter().all(|&c| c < p);
                if !ok {
                    return Err(FieldError::BadModulus {
                        expected: m,
                        got: given.to_vec(),
                    });
                }
                let f: Vec<u32> = given.iter().map(|&c| c as u32).collect();
                if !poly::is_irreducible(&f, p32) {
                    return Err(FieldError::Reducible(f));
                }
                f
            }
            None => Self::smallest_irreducible(p32, m),
        };
        Ok(Self::build(p32, m, q as u32, modulus))
    }

    /// F_p itself.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self, FieldError> {
        let modulus: Vec<u64> = spec.modulus.iter().map(|&c| c as u64).collect();
        Self::new(spec.p, spec.m, Some(&modulus))
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p as u64,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
        let count = (p as u64).pow(m);
        // Enumerate tuples with c_0 as the most significant digit.
        for idx in 0..count {
            let mut digits = vec![0u32; m as usize];
            let mut rest = idx;
            for d in digits.iter_mut().rev() {
                *d = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            let mut f = digits;
            f.push(1);
            if poly::is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Self {
        let to_poly = |mut v: u32| {
            let mut c = Vec::with_capacity(m as usize);
            for _ in 0..m {
                c.push(v % p);
                v /= p;
            }
            poly::trim(&mut c);
            c
        };
        let from_poly = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let mulmod = |a: u32, b: u32| {
            let prod = poly::mul(&to_poly(a), &to_poly(b), p);
            from_poly(&poly::rem(&prod, &modulus, p))
        };
        let powmod = |a: u32, mut e: u64| {
            let mut base = a;
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, base);
                }
                base = mulmod(base, base);
                e >>= 1;
            }
            acc
        };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&l| powmod(g, order / l) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = mulmod(x, generator);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }

        let digit_add = |a: u32, b: u32, sign: bool| {
            let (mut a, mut b) = (a, b);
            let mut out = 0u32;
            let mut scale = 1u32;
            for _ in 0..m {
                let (x, y) = (a % p, b % p);
                let d = if sign { (x + p - y) % p } else { (x + y) % p };
                out += d * scale;
                scale = scale.wrapping_mul(p);
                a /= p;
                b /= p;
            }
            out
        };
        let neg = (0..q).map(|a| digit_add(0, a, true)).collect();
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, false);
                }
            }
            t
        });

        FieldCtx {
            id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
            p,
            m,
            q,
            modulus,
            exp,
            log,
            neg,
            add,
        }
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u64 {
        self.q as u64
    }

    /// Ascending-degree coefficients of the monic modulus (length m + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    fn wrap(&self, value: u32) -> FieldElem {
        FieldElem {
            ctx: self.id,
            value,
        }
    }

    #[inline]
    fn check(&self, a: FieldElem) {
        debug_assert_eq!(a.ctx, self.id, "field element from another context");
    }

    pub fn owns(&self, a: FieldElem) -> bool {
        a.ctx == self.id
    }

    pub fn zero(&self) -> FieldElem {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElem {
        self.wrap(1)
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> FieldElem {
        self.wrap(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element from ascending coefficients; shorter vectors are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem, FieldError> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::Parse(format!("{coeffs:?}")));
        }
        Ok(self.wrap(coeffs.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)))
    }

    /// Element with the given base-p encoding.
    pub fn from_value(&self, value: u32) -> Result<FieldElem, FieldError> {
        if value >= self.q {
            return Err(FieldError::Parse(value.to_string()));
        }
        Ok(self.wrap(value))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        self.check(a);
        let mut v = a.value;
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(|v| self.wrap(v))
    }

    /// The fixed primitive element used for the log tables.
    pub fn primitive(&self) -> FieldElem {
        self.wrap(self.exp[if self.q == 2 { 0 } else { 1 }])
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let v = if self.m == 1 {
            let s = a.value + b.value;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add {
            t[(a.value * self.q + b.value) as usize]
        } else {
            let (mut x, mut y) = (a.value, b.value);
            let mut out = 0u32;
            let mut scale = 1u32;
            for _ in 0..self.m {
                out += ((x % self.p + y % self.p) % self.p) * scale;
                scale = scale.wrapping_mul(self.p);
                x /= self.p;
                y /= self.p;
            }
            out
        };
        self.wrap(v)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.check(a);
        self.wrap(self.neg[a.value as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        if a.value == 0 || b.value == 0 {
            return self.zero();
        }
        let i = self.log[a.value as usize] + self.log[b.value as usize];
        self.wrap(self.exp[i as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a);
        if a.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a.value as usize];
        Ok(self.wrap(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` for any integer k; negative exponents invert first.
    pub fn pow(&self, a: FieldElem, k: i64) -> Result<FieldElem, FieldError> {
        self.check(a);
        if a.value == 0 {
            return match k.cmp(&0) {
                std::cmp::Ordering::Less => Err(FieldError::DivisionByZero),
                std::cmp::Ordering::Equal => Ok(self.one()),
                std::cmp::Ordering::Greater => Ok(self.zero()),
            };
        }
        let n = (self.q - 1) as i64;
        let l = self.log[a.value as usize] as i64;
        let e = (l * k.rem_euclid(n)).rem_euclid(n);
        Ok(self.wrap(self.exp[e as usize]))
    }

    /// Checked arithmetic entry point; `b` is ignored for negation.
    pub fn arith(&self, op: ArithOp, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        if a.ctx != self.id || b.ctx != self.id {
            return Err(FieldError::ContextMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElem) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.value as usize] as u64;
        Ok(n / gcd(n, l))
    }

    /// String of m base-p digits, lowest degree first ("21" = 2 + x in F_9).
    /// For p > 36 the digits are decimal and '.'-separated.
    pub fn format(&self, a: FieldElem) -> String {
        let c = self.coeffs(a);
        if self.p <= 36 {
            c.iter()
                .map(|&d| std::char::from_digit(d, self.p).unwrap())
                .collect()
        } else {
            c.iter().map(u32::to_string).collect::<Vec<_>>().join(".")
        }
    }

    pub fn parse(&self, s: &str) -> Result<FieldElem, FieldError> {
        let err = || FieldError::Parse(s.to_string());
        let s = s.trim();
        let digits: Vec<u32> = if self.p <= 36 {
            s.chars()
                .map(|ch| ch.to_digit(self.p).ok_or_else(err))
                .collect::<Result<_, _>>()?
        } else {
            s.split('.')
                .map(|t| t.parse::<u32>().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        };
        if digits.is_empty() || digits.len() != self.m as usize {
            return Err(err());
        }
        self.from_coeffs(&digits).map_err(|_| err())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
