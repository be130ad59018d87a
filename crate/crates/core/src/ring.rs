//! The twisted group ring F_q^alpha G.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use crate::cocycle::Cocycle;
use crate::ff::{FieldCtx, FieldElem, FieldError};
use crate::group::{Group, GroupError};
use crate::linalg::{LinalgError, RowSpace, Vector};

static NEXT_RING_ID: AtomicU32 = AtomicU32::new(1);

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("element belongs to a different ring")]
    Mismatch,
    #[error("coefficient vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("unknown group element name {0:?}")]
    UnknownElement(String),
    #[error("presentation does not describe the same group table")]
    DifferentGroup,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// sum_g a_g g-bar, coefficients in canonical element order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElem {
    ring: u32,
    coeffs: Vec<FieldElem>,
}

impl RingElem {
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> FieldElem {
        self.coeffs[g]
    }

    pub fn ring_id(&self) -> u32 {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Group elements with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&g| !self.coeffs[g].is_zero()).collect()
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }
}

#[derive(Clone)]
pub struct TwistedRing {
    id: u32,
    group: Arc<Group>,
    field: Arc<FieldCtx>,
    cocycle: Cocycle,
}

impl fmt::Debug for TwistedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwistedRing")
            .field("id", &self.id)
            .field("order", &self.group.order())
            .field("q", &self.field.size())
            .finish()
    }
}

impl TwistedRing {
    /// Builds the ring from a cocycle, normalizing it first.
    pub fn new(cocycle: &Cocycle) -> Self {
        let cocycle = if cocycle.is_normalized() {
            cocycle.clone()
        } else {
            cocycle.normalize()
        };
        TwistedRing {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            group: cocycle.group().clone(),
            field: cocycle.field().clone(),
            cocycle,
        }
    }

    /// The same ring with a different generating set and relators for its
    /// group. Elements of `self` remain valid elements of the result.
    pub fn with_presentation(&self, group: Group) -> Result<Self, RingError> {
        let n = self.group.order();
        if group.order() != n || (0..n).any(|x| (0..n).any(|y| group.mul(x, y) != self.group.mul(x, y))) {
            return Err(RingError::DifferentGroup);
        }
        let group = Arc::new(group);
        Ok(TwistedRing {
            id: self.id,
            cocycle: self.cocycle.rebind(&group),
            group,
            field: self.field.clone(),
        })
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// Dimension over F_q, i.e. |G|.
    pub fn dim(&self) -> usize {
        self.group.order()
    }

    #[inline]
    pub fn alpha(&self, x: usize, y: usize) -> FieldElem {
        self.cocycle.value(x, y)
    }

    fn check(&self, a: &RingElem) -> Result<(), RingError> {
        if a.ring != self.id {
            return Err(RingError::Mismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            ring: self.id,
            coeffs: vec![self.field.zero(); self.dim()],
        }
    }

    pub fn one(&self) -> RingElem {
        self.basis(self.group.identity())
    }

    pub fn basis(&self, g: usize) -> RingElem {
        self.term(self.field.one(), g)
    }

    /// c * g-bar.
    pub fn term(&self, c: FieldElem, g: usize) -> RingElem {
        let mut e = self.zero();
        e.coeffs[g] = c;
        e
    }

    pub fn scalar(&self, c: FieldElem) -> RingElem {
        self.term(c, self.group.identity())
    }

    pub fn from_coeffs(&self, coeffs: Vec<FieldElem>) -> Result<RingElem, RingError> {
        if coeffs.len() != self.dim() {
            return Err(RingError::WrongLength {
                expected: self.dim(),
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|&c| !self.field.owns(c)) {
            return Err(FieldError::ContextMismatch.into());
        }
        Ok(RingElem { ring: self.id, coeffs })
    }

    /// Sum of integer multiples of basis elements named by group index.
    pub fn from_int_terms(&self, terms: &[(i64, usize)]) -> RingElem {
        let mut e = self.zero();
        for &(c, g) in terms {
            e.coeffs[g] = self.field.add(e.coeffs[g], self.field.from_int(c));
        }
        e
    }

    /// Product of two basis elements: g-bar h-bar = alpha(g,h) (gh)-bar.
    pub fn basis_mul(&self, g: usize, h: usize) -> (FieldElem, usize) {
        (self.alpha(g, h), self.group.mul(g, h))
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.check(a)?;
        self.check(b)?;
        let f = &self.field;
        Ok(RingElem {
            ring: self.id,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.add(x, y)).collect(),
        })
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.check(a)?;
        self.check(b)?;
        let f = &self.field;
        Ok(RingElem {
            ring: self.id,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.sub(x, y)).collect(),
        })
    }

    pub fn neg(&self, a: &RingElem) -> Result<RingElem, RingError> {
        self.check(a)?;
        Ok(RingElem {
            ring: self.id,
            coeffs: a.coeffs.iter().map(|&x| self.field.neg(x)).collect(),
        })
    }

    pub fn scale(&self, c: FieldElem, a: &RingElem) -> Result<RingElem, RingError> {
        self.check(a)?;
        if !self.field.owns(c) {
            return Err(FieldError::ContextMismatch.into());
        }
        Ok(RingElem {
            ring: self.id,
            coeffs: a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect(),
        })
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.check(a)?;
        self.check(b)?;
        let f = &self.field;
        let mut out = self.zero();
        let b_support = b.support();
        for g in a.support() {
            let ag = a.coeffs[g];
            for &h in &b_support {
                let (al, gh) = self.basis_mul(g, h);
                let v = f.mul(f.mul(ag, b.coeffs[h]), al);
                out.coeffs[gh] = f.add(out.coeffs[gh], v);
            }
        }
        Ok(out)
    }

    /// g-bar * a.
    pub fn left_basis_mul(&self, g: usize, a: &RingElem) -> Result<RingElem, RingError> {
        self.check(a)?;
        let f = &self.field;
        let mut out = self.zero();
        for h in a.support() {
            let (al, gh) = self.basis_mul(g, h);
            out.coeffs[gh] = f.mul(a.coeffs[h], al);
        }
        Ok(out)
    }

    /// a * g-bar.
    pub fn right_basis_mul(&self, a: &RingElem, g: usize) -> Result<RingElem, RingError> {
        self.check(a)?;
        let f = &self.field;
        let mut out = self.zero();
        for h in a.support() {
            let (al, hg) = self.basis_mul(h, g);
            out.coeffs[hg] = f.mul(a.coeffs[h], al);
        }
        Ok(out)
    }

    /// a^k for k >= 0.
    pub fn pow(&self, a: &RingElem, k: u64) -> Result<RingElem, RingError> {
        self.check(a)?;
        let mut result = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            base = self.mul(&base, &base)?;
            k >>= 1;
        }
        Ok(result)
    }

    /// ab - ba.
    pub fn commutator(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.sub(&self.mul(a, b)?, &self.mul(b, a)?)
    }

    /// Least N >= 1 with g-bar^N = 1-bar.
    pub fn unit_order(&self, g: usize) -> u64 {
        let k = self.group.element_order(g);
        let mut c = self.field.one();
        let mut x = self.group.identity();
        for _ in 0..k {
            let (al, y) = self.basis_mul(x, g);
            c = self.field.mul(c, al);
            x = y;
        }
        k as u64 * self.field.mult_order(c).expect("cocycle values are units")
    }

    pub fn is_central(&self, a: &RingElem) -> Result<bool, RingError> {
        self.check(a)?;
        for g in 0..self.dim() {
            let b = self.basis(g);
            if self.mul(a, &b)? != self.mul(&b, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|g| {
            (g + 1..n).all(|h| self.group.commutes(g, h) && self.alpha(g, h) == self.alpha(h, g))
        })
    }

    /// Basis of Z(F_q^alpha G): solutions of
    /// a_{hgh^-1} alpha(hgh^-1, h) = a_g alpha(h, g) for all g, h.
    pub fn center_basis(&self) -> Vec<RingElem> {
        let n = self.dim();
        let f = &self.field;
        let mut space = RowSpace::new(f, n);
        for h in 0..n {
            let h_inv = self.group.inv(h);
            for g in 0..n {
                let c = self.group.mul(self.group.mul(h, g), h_inv);
                let mut row = vec![f.zero(); n];
                row[c] = f.add(row[c], self.alpha(c, h));
                row[g] = f.sub(row[g], self.alpha(h, g));
                space.insert(&row).expect("row length matches");
                if space.is_full() {
                    return Vec::new();
                }
            }
        }
        space
            .kernel_basis()
            .into_iter()
            .map(|coeffs| RingElem { ring: self.id, coeffs })
            .collect()
    }

    /// Coefficient vector of a list of ring elements, for span questions.
    pub fn vectors(&self, elems: &[RingElem]) -> Vec<Vector> {
        elems.iter().map(|e| e.coeffs.clone()).collect()
    }

    /// Human-readable form such as `r + 2*r^2*s`.
    pub fn format(&self, a: &RingElem) -> String {
        let one = self.field.one();
        let minus_one = self.field.neg(one);
        let mut out = String::new();
        for g in a.support() {
            let c = a.coeffs[g];
            let name = self.group.name(g);
            let (sign, body) = if c == one {
                ("+", name.to_string())
            } else if c == minus_one && self.field.characteristic() != 2 {
                ("-", name.to_string())
            } else {
                ("+", format!("{}*{}", self.field.format(c), name))
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// JSON form: element name to serialized coefficient, zeros omitted.
    pub fn to_json(&self, a: &RingElem) -> BTreeMap<String, String> {
        a.support()
            .into_iter()
            .map(|g| (self.group.name(g).to_string(), self.field.format(a.coeffs[g])))
            .collect()
    }

    pub fn from_json(&self, map: &BTreeMap<String, String>) -> Result<RingElem, RingError> {
        let mut e = self.zero();
        for (name, value) in map {
            let g = self
                .group
                .index_of(name)
                .ok_or_else(|| RingError::UnknownElement(name.clone()))?;
            e.coeffs[g] = self.field.add(e.coeffs[g], self.field.parse(value)?);
        }
        Ok(e)
    }
}
