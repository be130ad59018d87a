use crate::linalg::{Matrix, RowSpace, Vector};
use crate::ring::{RingElem, TwistedRing};

use super::linear::{word_derivative, LetterImages, Lin};
use super::{extend, inner_derivation, Derivation, DerivationError, Extension, GeneratorMap};

pub const DEFAULT_ORACLE_BOUND: usize = 24;

/// Relator constraints on the generator images.
#[derive(Debug, Clone)]
pub struct GeneratorSystem {
    pub dim: usize,
    /// Canonical kernel basis, |S| * |G| coordinates, generator-major.
    pub kernel: Vec<Vector>,
    pub basis: Vec<GeneratorMap>,
    /// One block of |G| rows per relator.
    pub matrix: Matrix,
}

impl GeneratorSystem {
    /// Extends every kernel basis vector to a full derivation.
    pub fn derivations(&self, ring: &TwistedRing) -> Result<Vec<Derivation>, DerivationError> {
        self.basis
            .iter()
            .map(|f| match extend(ring, f)? {
                Extension::Accepted(d) => Ok(d),
                Extension::Rejected { relator, .. } => Err(DerivationError::Internal(format!(
                    "kernel vector rejected by relator {relator}"
                ))),
            })
            .collect()
    }

    /// Whether a derivation's generator images satisfy the constraints.
    pub fn contains(&self, ring: &TwistedRing, d: &Derivation) -> Result<bool, DerivationError> {
        let mut space = RowSpace::new(ring.field(), self.matrix.cols());
        for v in &self.kernel {
            space.insert(v)?;
        }
        Ok(space.contains(&d.generator_map(ring).to_vector())?)
    }
}

/// Unknowns are the coefficients of f(s) for every generator s; every
/// relator's word-derivative, propagated symbolically, gives |G| rows.
pub fn der_space_generators(ring: &TwistedRing) -> GeneratorSystem {
    let n = ring.dim();
    let k = ring.group().generators().len();
    let width = n * k;
    let gens = (0..k).map(|j| Lin::unknowns(ring, width, j * n)).collect();
    let letters = LetterImages::new(ring, gens);
    let mut rows = Vec::with_capacity(ring.group().relators().len() * n);
    for t in ring.group().relators() {
        let wd = word_derivative(ring, &letters, t, width);
        rows.extend((0..n).map(|h| wd.row(h).to_vec()));
    }
    let matrix = Matrix::from_rows(ring.field(), width, &rows).expect("rows have the unknown count");
    let kernel = matrix.kernel_basis();
    let basis = kernel
        .iter()
        .map(|v| GeneratorMap::from_vector(ring, v).expect("length matches"))
        .collect();
    GeneratorSystem {
        dim: kernel.len(),
        kernel,
        basis,
        matrix,
    }
}

#[derive(Debug, Clone)]
pub struct OracleSpace {
    pub dim: usize,
    /// Kernel basis in |G|^2 coordinates, see [`Derivation::from_flat`].
    pub kernel: Vec<Vector>,
    pub basis: Vec<Derivation>,
}

/// Brute force: all |G|^2 coefficients of D on the basis are unknown and
/// the Leibniz rule is imposed on every basis pair. For a, b, h:
/// alpha(a,b) d(ab)_h - d(a)_{h b^-1} alpha(h b^-1, b) - alpha(a, a^-1 h) d(b)_{a^-1 h} = 0.
pub fn der_space_oracle(ring: &TwistedRing, bound: usize) -> Result<OracleSpace, DerivationError> {
    let n = ring.dim();
    if n > bound {
        return Err(DerivationError::OracleBound { order: n, bound });
    }
    let f = ring.field();
    let group = ring.group();
    let idx = |g: usize, h: usize| g * n + h;
    let mut space = RowSpace::new(f, n * n);
    let mut row = vec![f.zero(); n * n];
    for a in 0..n {
        let a_inv = group.inv(a);
        for b in 0..n {
            let ab = group.mul(a, b);
            let b_inv = group.inv(b);
            for h in 0..n {
                let x = group.mul(h, b_inv);
                let y = group.mul(a_inv, h);
                let entries = [
                    (idx(ab, h), ring.alpha(a, b)),
                    (idx(a, x), f.neg(ring.alpha(x, b))),
                    (idx(b, y), f.neg(ring.alpha(a, y))),
                ];
                for &(i, v) in &entries {
                    row[i] = f.add(row[i], v);
                }
                space.insert(&row)?;
                for &(i, _) in &entries {
                    row[i] = f.zero();
                }
            }
        }
    }
    let kernel = space.kernel_basis();
    let basis = kernel
        .iter()
        .map(|v| Derivation::from_flat(ring, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OracleSpace {
        dim: kernel.len(),
        kernel,
        basis,
    })
}

#[derive(Debug, Clone)]
pub struct InnSpace {
    pub dim: usize,
    pub center: Vec<RingElem>,
    /// Basis elements g-bar completing the center to the whole ring.
    pub representatives: Vec<RingElem>,
    pub basis: Vec<Derivation>,
}

impl InnSpace {
    /// Whether `d` is inner, by span membership of its generator images.
    pub fn contains(&self, ring: &TwistedRing, d: &Derivation) -> Result<bool, DerivationError> {
        let cols = ring.dim() * ring.group().generators().len();
        let mut space = RowSpace::new(ring.field(), cols);
        for b in &self.basis {
            space.insert(&b.generator_map(ring).to_vector())?;
        }
        Ok(space.contains(&d.generator_map(ring).to_vector())?)
    }
}

/// Inn is the image of a -> ad(a), whose kernel is the center. The basis
/// applies ad to basis elements completing a center basis.
pub fn inn_space(ring: &TwistedRing) -> Result<InnSpace, DerivationError> {
    let center = ring.center_basis();
    let mut space = RowSpace::new(ring.field(), ring.dim());
    for z in &center {
        space.insert(z.coeffs())?;
    }
    let mut representatives = Vec::new();
    for g in 0..ring.dim() {
        let e = ring.basis(g);
        if space.insert(e.coeffs())? {
            representatives.push(e);
        }
    }
    let basis = representatives
        .iter()
        .map(|a| inner_derivation(ring, a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InnSpace {
        dim: basis.len(),
        center,
        representatives,
        basis,
    })
}

#[derive(Debug, Clone)]
pub struct Hh1 {
    pub der: usize,
    pub inn: usize,
    pub dim: usize,
    /// Derivations whose classes form a basis of Der / Inn.
    pub representatives: Vec<Derivation>,
}

pub fn hh1(ring: &TwistedRing) -> Result<Hh1, DerivationError> {
    let sys = der_space_generators(ring);
    let inn = inn_space(ring)?;
    hh1_from_parts(ring, &sys, &inn)
}

/// Works in generator coordinates, where a derivation is determined by its
/// generator images. Checks Inn inside Der, then extends an Inn basis by
/// Der kernel vectors in order.
pub fn hh1_from_parts(ring: &TwistedRing, sys: &GeneratorSystem, inn: &InnSpace) -> Result<Hh1, DerivationError> {
    let cols = sys.matrix.cols();
    let f = ring.field();
    let mut der = RowSpace::new(f, cols);
    for v in &sys.kernel {
        der.insert(v)?;
    }
    let mut quotient = RowSpace::new(f, cols);
    for d in &inn.basis {
        let v = d.generator_map(ring).to_vector();
        if !der.contains(&v)? {
            return Err(DerivationError::InnerNotInDer);
        }
        quotient.insert(&v)?;
    }
    if quotient.dim() != inn.dim {
        return Err(DerivationError::Internal(
            "inner derivation basis is dependent on the generators".into(),
        ));
    }
    let mut representatives = Vec::new();
    for v in &sys.kernel {
        if quotient.insert(v)? {
            let map = GeneratorMap::from_vector(ring, v)?;
            match extend(ring, &map)? {
                Extension::Accepted(d) => representatives.push(d),
                Extension::Rejected { relator, .. } => {
                    return Err(DerivationError::Internal(format!(
                        "kernel vector rejected by relator {relator}"
                    )))
                }
            }
        }
    }
    Ok(Hh1 {
        der: sys.dim,
        inn: inn.dim,
        dim: sys.dim - inn.dim,
        representatives,
    })
}
