//! Derivations of twisted group rings.
//!
//! A derivation is stored by the images of all basis elements. Maps on
//! generators are extended through their assigned words; relators decide
//! whether an extension exists.

mod abelian;
mod dihedral;
mod linear;
mod space;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ff::FieldElem;
use crate::group::GroupError;
use crate::linalg::{LinalgError, Vector};
use crate::ring::{RingElem, RingError, TwistedRing};

pub use abelian::abelian_partial_basis;
pub use dihedral::{dihedral_constraints, odd_alpha3_relations};
pub use space::{
    der_space_generators, der_space_oracle, hh1, hh1_from_parts, inn_space, GeneratorSystem, Hh1, InnSpace,
    OracleSpace, DEFAULT_ORACLE_BOUND,
};

use linear::{extend_all, word_derivative, LetterImages, Lin};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("extended map fails the Leibniz rule at basis pair ({0}, {1})")]
    LeibnizFailure(usize, usize),
    #[error("oracle is limited to |G| <= {bound}, group has order {order}")]
    OracleBound { order: usize, bound: usize },
    #[error("an inner derivation lies outside the computed derivation space")]
    InnerNotInDer,
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("generator map rejected by relator {relator}")]
    Rejected { relator: usize },
    #[error("closed form unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Images f(s) of the generators s of the group, in generator order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    images: Vec<RingElem>,
}

impl GeneratorMap {
    pub fn new(ring: &TwistedRing, images: Vec<RingElem>) -> Result<Self, DerivationError> {
        let k = ring.group().generators().len();
        if images.len() != k {
            return Err(DerivationError::ImageCount {
                expected: k,
                got: images.len(),
            });
        }
        if images.iter().any(|e| e.ring_id() != ring.id()) {
            return Err(RingError::Mismatch.into());
        }
        Ok(GeneratorMap { images })
    }

    pub fn zero(ring: &TwistedRing) -> Self {
        GeneratorMap {
            images: vec![ring.zero(); ring.group().generators().len()],
        }
    }

    /// From a vector of |S| * |G| coefficients, generator-major.
    pub fn from_vector(ring: &TwistedRing, v: &[FieldElem]) -> Result<Self, DerivationError> {
        let n = ring.dim();
        let k = ring.group().generators().len();
        if v.len() != n * k {
            return Err(DerivationError::ImageCount {
                expected: n * k,
                got: v.len(),
            });
        }
        let images = v
            .chunks(n)
            .map(|c| ring.from_coeffs(c.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorMap { images })
    }

    pub fn to_vector(&self) -> Vector {
        self.images.iter().flat_map(|e| e.coeffs().iter().copied()).collect()
    }

    pub fn images(&self) -> &[RingElem] {
        &self.images
    }

    pub fn to_json(&self, ring: &TwistedRing) -> GeneratorMapJson {
        GeneratorMapJson {
            f: self.images.iter().map(|e| ring.to_json(e)).collect(),
        }
    }

    pub fn from_json(ring: &TwistedRing, json: &GeneratorMapJson) -> Result<Self, DerivationError> {
        let images = json
            .f
            .iter()
            .map(|m| ring.from_json(m))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, images)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMapJson {
    pub f: Vec<BTreeMap<String, String>>,
}

/// An F_q-linear map given by the images of all basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    images: Vec<RingElem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub images: BTreeMap<String, BTreeMap<String, String>>,
}

impl Derivation {
    pub fn new(ring: &TwistedRing, images: Vec<RingElem>) -> Result<Self, DerivationError> {
        if images.len() != ring.dim() {
            return Err(DerivationError::ImageCount {
                expected: ring.dim(),
                got: images.len(),
            });
        }
        if images.iter().any(|e| e.ring_id() != ring.id()) {
            return Err(RingError::Mismatch.into());
        }
        Ok(Derivation { images })
    }

    pub fn zero(ring: &TwistedRing) -> Self {
        Derivation {
            images: vec![ring.zero(); ring.dim()],
        }
    }

    /// From |G|^2 coefficients; entry g * |G| + h is the h-coefficient of D(g-bar).
    pub fn from_flat(ring: &TwistedRing, v: &[FieldElem]) -> Result<Self, DerivationError> {
        let n = ring.dim();
        if v.len() != n * n {
            return Err(DerivationError::ImageCount {
                expected: n * n,
                got: v.len(),
            });
        }
        let images = v
            .chunks(n)
            .map(|c| ring.from_coeffs(c.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { images })
    }

    pub fn flatten(&self) -> Vector {
        self.images.iter().flat_map(|e| e.coeffs().iter().copied()).collect()
    }

    pub fn images(&self) -> &[RingElem] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &RingElem {
        &self.images[g]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(RingElem::is_zero)
    }

    /// Restriction to the generators, in the layout of [`GeneratorMap::to_vector`].
    pub fn generator_map(&self, ring: &TwistedRing) -> GeneratorMap {
        GeneratorMap {
            images: ring.group().generators().iter().map(|&s| self.images[s].clone()).collect(),
        }
    }

    pub fn apply(&self, ring: &TwistedRing, a: &RingElem) -> Result<RingElem, DerivationError> {
        let mut out = ring.zero();
        for g in a.support() {
            out = ring.add(&out, &ring.scale(a.coeff(g), &self.images[g])?)?;
        }
        Ok(out)
    }

    pub fn add(&self, ring: &TwistedRing, other: &Derivation) -> Result<Derivation, DerivationError> {
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| ring.add(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { images })
    }

    pub fn scale(&self, ring: &TwistedRing, c: FieldElem) -> Result<Derivation, DerivationError> {
        let images = self
            .images
            .iter()
            .map(|a| ring.scale(c, a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { images })
    }

    /// x -> g-bar D(x).
    pub fn left_basis_mul(&self, ring: &TwistedRing, g: usize) -> Result<Derivation, DerivationError> {
        let images = self
            .images
            .iter()
            .map(|a| ring.left_basis_mul(g, a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { images })
    }

    pub fn to_json(&self, ring: &TwistedRing) -> DerivationJson {
        DerivationJson {
            images: (0..ring.dim())
                .map(|g| (ring.group().name(g).to_string(), ring.to_json(&self.images[g])))
                .collect(),
        }
    }

    pub fn from_json(ring: &TwistedRing, json: &DerivationJson) -> Result<Self, DerivationError> {
        let mut images = vec![ring.zero(); ring.dim()];
        for (name, m) in &json.images {
            let g = ring
                .group()
                .index_of(name)
                .ok_or_else(|| RingError::UnknownElement(name.clone()))?;
            images[g] = ring.from_json(m)?;
        }
        Ok(Derivation { images })
    }
}

/// Outcome of extending a generator map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Accepted(Derivation),
    /// The word-derivative of relator `relator` is `residual`, not zero.
    Rejected { relator: usize, residual: RingElem },
}

impl Extension {
    pub fn accepted(self) -> Option<Derivation> {
        match self {
            Extension::Accepted(d) => Some(d),
            Extension::Rejected { .. } => None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, Extension::Accepted(_))
    }
}

/// Extends `f` to the whole ring through the assigned element words, after
/// checking that every relator has zero word-derivative. Accepted results
/// are verified against the Leibniz rule on all basis pairs.
pub fn extend(ring: &TwistedRing, f: &GeneratorMap) -> Result<Extension, DerivationError> {
    let k = ring.group().generators().len();
    if f.images.len() != k {
        return Err(DerivationError::ImageCount {
            expected: k,
            got: f.images.len(),
        });
    }
    if f.images.iter().any(|e| e.ring_id() != ring.id()) {
        return Err(RingError::Mismatch.into());
    }
    let letters = LetterImages::new(ring, f.images.iter().map(Lin::from_ring).collect());
    for (i, t) in ring.group().relators().iter().enumerate() {
        let residual = word_derivative(ring, &letters, t, 1);
        if !residual.is_zero() {
            return Ok(Extension::Rejected {
                relator: i,
                residual: residual.to_ring(ring),
            });
        }
    }
    let images = extend_all(ring, &letters, 1).iter().map(|l| l.to_ring(ring)).collect();
    let d = Derivation { images };
    if let Some((a, b)) = leibniz_violation(ring, &d) {
        return Err(DerivationError::LeibnizFailure(a, b));
    }
    Ok(Extension::Accepted(d))
}

/// First basis pair (a, b) where alpha(a,b) D(ab) != D(a) b + a D(b).
pub fn leibniz_violation(ring: &TwistedRing, d: &Derivation) -> Option<(usize, usize)> {
    let f = ring.field();
    let group = ring.group();
    let n = ring.dim();
    for a in 0..n {
        for b in 0..n {
            let ab = group.mul(a, b);
            let lhs = ring.scale(ring.alpha(a, b), &d.images[ab]).ok()?;
            let right = ring.right_basis_mul(&d.images[a], b).ok()?;
            let left = ring.left_basis_mul(a, &d.images[b]).ok()?;
            let ok = (0..n).all(|h| lhs.coeff(h) == f.add(right.coeff(h), left.coeff(h)));
            if !ok {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_derivation(ring: &TwistedRing, d: &Derivation) -> bool {
    d.images.len() == ring.dim()
        && d.images.iter().all(|e| e.ring_id() == ring.id())
        && leibniz_violation(ring, d).is_none()
}

/// x -> a x - x a.
pub fn inner_derivation(ring: &TwistedRing, a: &RingElem) -> Result<Derivation, DerivationError> {
    let images = (0..ring.dim())
        .map(|g| ring.commutator(a, &ring.basis(g)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derivation { images })
}
