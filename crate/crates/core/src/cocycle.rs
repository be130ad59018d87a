//! 2-cocycles G x G -> F_q^* stored as full tables.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ff::{FieldCtx, FieldElem, FieldError};
use crate::group::{Group, GroupKind, Letter};

const EXHAUSTIVE_CHECK_LIMIT: usize = 256;
const SAMPLED_TRIPLES: usize = 200_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("cocycle table has {got} entries, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("cocycle value at ({0}, {1}) is zero")]
    ZeroEntry(usize, usize),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    NotCocycle(usize, usize, usize),
    #[error("1-chain value at {0} is zero")]
    ZeroChainValue(usize),
    #[error("{0} requires a dihedral group")]
    NotDihedral(&'static str),
    #[error("value belongs to a different field")]
    FieldMismatch,
    #[error("operands are defined over different groups or fields")]
    Mismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The sign cocycles on D_{2n}, with r^a s^b written as (a, b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DihedralSign {
    /// (-1)^{bc}
    Alpha1,
    /// (-1)^{ad}
    Alpha2,
    /// (-1)^{bd}
    Alpha3,
}

impl DihedralSign {
    pub fn label(self) -> &'static str {
        match self {
            DihedralSign::Alpha1 => "alpha1",
            DihedralSign::Alpha2 => "alpha2",
            DihedralSign::Alpha3 => "alpha3",
        }
    }

    fn exponent(self, (a, b): (usize, usize), (c, d): (usize, usize)) -> usize {
        match self {
            DihedralSign::Alpha1 => b * c,
            DihedralSign::Alpha2 => a * d,
            DihedralSign::Alpha3 => b * d,
        }
    }
}

/// JSON description of a cocycle. Table entries are serialized field
/// elements, `entries[x][y] = alpha(g_x, g_y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CocycleSpec {
    Trivial,
    DihedralAlpha1,
    DihedralAlpha2,
    DihedralAlpha3,
    Table { entries: Vec<Vec<String>> },
}

impl CocycleSpec {
    pub fn sign(&self) -> Option<DihedralSign> {
        match self {
            CocycleSpec::DihedralAlpha1 => Some(DihedralSign::Alpha1),
            CocycleSpec::DihedralAlpha2 => Some(DihedralSign::Alpha2),
            CocycleSpec::DihedralAlpha3 => Some(DihedralSign::Alpha3),
            _ => None,
        }
    }
}

#[derive(Clone)]
pub struct Cocycle {
    group: Arc<Group>,
    field: Arc<FieldCtx>,
    table: Vec<FieldElem>,
}

impl std::fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cocycle")
            .field("group", &self.group)
            .field("field", &self.field)
            .finish_non_exhaustive()
    }
}

/// A sign cocycle together with whether it collapsed to the trivial one
/// (characteristic 2, where -1 = 1).
#[derive(Debug, Clone)]
pub struct SignCocycle {
    pub cocycle: Cocycle,
    pub collapsed: bool,
}

/// Checks the cocycle identity alpha(x,y) alpha(xy,z) = alpha(y,z) alpha(x,yz)
/// on every triple (sampled for very large groups).
pub fn is_cocycle(group: &Group, field: &FieldCtx, table: &[FieldElem]) -> Result<bool, CocycleError> {
    Ok(first_violation(group, field, table)?.is_none())
}

fn first_violation(
    group: &Group,
    field: &FieldCtx,
    table: &[FieldElem],
) -> Result<Option<(usize, usize, usize)>, CocycleError> {
    let n = group.order();
    if table.len() != n * n {
        return Err(CocycleError::WrongSize {
            expected: n * n,
            got: table.len(),
        });
    }
    if table.iter().any(|&v| !field.owns(v)) {
        return Err(CocycleError::FieldMismatch);
    }
    if let Some(i) = table.iter().position(|v| v.is_zero()) {
        return Err(CocycleError::ZeroEntry(i / n, i % n));
    }
    let a = |x: usize, y: usize| table[x * n + y];
    let holds = |x: usize, y: usize, z: usize| {
        field.mul(a(x, y), a(group.mul(x, y), z)) == field.mul(a(y, z), a(x, group.mul(y, z)))
    };
    if n <= EXHAUSTIVE_CHECK_LIMIT {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !holds(x, y, z) {
                        return Ok(Some((x, y, z)));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0c7);
        for _ in 0..SAMPLED_TRIPLES {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !holds(x, y, z) {
                return Ok(Some((x, y, z)));
            }
        }
    }
    Ok(None)
}

impl Cocycle {
    /// Validates and wraps a table indexed `x * |G| + y`.
    pub fn new(group: &Arc<Group>, field: &Arc<FieldCtx>, table: Vec<FieldElem>) -> Result<Self, CocycleError> {
        if let Some((x, y, z)) = first_violation(group, field, &table)? {
            return Err(CocycleError::NotCocycle(x, y, z));
        }
        Ok(Cocycle {
            group: group.clone(),
            field: field.clone(),
            table,
        })
    }

    pub fn trivial(group: &Arc<Group>, field: &Arc<FieldCtx>) -> Self {
        let n = group.order();
        Cocycle {
            group: group.clone(),
            field: field.clone(),
            table: vec![field.one(); n * n],
        }
    }

    /// One of the sign cocycles on a dihedral group. In characteristic 2
    /// the signs collapse and the trivial cocycle is returned, flagged.
    pub fn dihedral(which: DihedralSign, group: &Arc<Group>, field: &Arc<FieldCtx>) -> Result<SignCocycle, CocycleError> {
        if !matches!(group.kind(), GroupKind::Dihedral { .. }) {
            return Err(CocycleError::NotDihedral(which.label()));
        }
        let minus_one = field.neg(field.one());
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let cx = group.dihedral_coords(x).unwrap();
            for y in 0..n {
                let cy = group.dihedral_coords(y).unwrap();
                let v = if which.exponent(cx, cy) % 2 == 1 { minus_one } else { field.one() };
                table.push(v);
            }
        }
        Ok(SignCocycle {
            cocycle: Cocycle::new(group, field, table)?,
            collapsed: field.characteristic() == 2,
        })
    }

    pub fn from_spec(spec: &CocycleSpec, group: &Arc<Group>, field: &Arc<FieldCtx>) -> Result<SignCocycle, CocycleError> {
        if let Some(sign) = spec.sign() {
            return Self::dihedral(sign, group, field);
        }
        let cocycle = match spec {
            CocycleSpec::Trivial => Self::trivial(group, field),
            CocycleSpec::Table { entries } => {
                let n = group.order();
                if entries.len() != n || entries.iter().any(|r| r.len() != n) {
                    return Err(CocycleError::WrongSize {
                        expected: n * n,
                        got: entries.iter().map(Vec::len).sum(),
                    });
                }
                let table = entries
                    .iter()
                    .flatten()
                    .map(|s| field.parse(s))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::new(group, field, table)?
            }
            _ => unreachable!(),
        };
        Ok(SignCocycle {
            cocycle,
            collapsed: false,
        })
    }

    /// Explicit table form of this cocycle.
    pub fn to_spec(&self) -> CocycleSpec {
        let n = self.group.order();
        CocycleSpec::Table {
            entries: (0..n)
                .map(|x| (0..n).map(|y| self.field.format(self.value(x, y))).collect())
                .collect(),
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> FieldElem {
        self.table[x * self.group.order() + y]
    }

    pub fn table(&self) -> &[FieldElem] {
        &self.table
    }

    pub fn is_normalized(&self) -> bool {
        let one = self.field.one();
        (0..self.group.order()).all(|g| self.value(0, g) == one && self.value(g, 0) == one)
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&v| v == self.field.one())
    }

    /// Divides by alpha(1,1). The cocycle identity forces
    /// alpha(1,g) = alpha(g,1) = alpha(1,1), so the result is normalized.
    pub fn normalize(&self) -> Cocycle {
        let inv = self.field.inv(self.value(0, 0)).expect("cocycle values are units");
        Cocycle {
            group: self.group.clone(),
            field: self.field.clone(),
            table: self.table.iter().map(|&v| self.field.mul(v, inv)).collect(),
        }
    }

    /// (alpha * d(phi))(x,y) = alpha(x,y) phi(x) phi(y) / phi(xy).
    pub fn twist(&self, phi: &OneChain) -> Result<Cocycle, CocycleError> {
        let boundary = coboundary(&self.group, &self.field, phi)?;
        Ok(self.pointwise_mul(&boundary))
    }

    fn pointwise_mul(&self, other: &Cocycle) -> Cocycle {
        Cocycle {
            group: self.group.clone(),
            field: self.field.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&a, &b)| self.field.mul(a, b))
                .collect(),
        }
    }

    /// Z_alpha(G): central z with alpha(z,x) = alpha(x,z) for all x.
    pub fn alpha_center(&self) -> Vec<usize> {
        let g = &self.group;
        g.center()
            .into_iter()
            .filter(|&z| (0..g.order()).all(|x| self.value(z, x) == self.value(x, z)))
            .collect()
    }

    /// beta_w = prod_{i<k} alpha(w_i, w_{i+1} ... w_k), so that the product
    /// of the letters' basis elements equals beta_w times the basis element
    /// of the word's value.
    pub fn beta_of_word(&self, word: &[Letter]) -> FieldElem {
        let g = &self.group;
        let mut beta = self.field.one();
        let mut suffix = 0usize;
        for (i, &l) in word.iter().enumerate().rev() {
            let x = g.letter_value(l);
            if i + 1 < word.len() {
                beta = self.field.mul(beta, self.value(x, suffix));
            }
            suffix = g.mul(x, suffix);
        }
        beta
    }

    /// Same cocycle re-attached to another presentation of the same table.
    pub(crate) fn rebind(&self, group: &Arc<Group>) -> Cocycle {
        debug_assert_eq!(group.order(), self.group.order());
        Cocycle {
            group: group.clone(),
            field: self.field.clone(),
            table: self.table.clone(),
        }
    }
}

/// A map phi: G -> F_q^*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneChain {
    values: Vec<FieldElem>,
}

impl OneChain {
    pub fn new(values: Vec<FieldElem>) -> Result<Self, CocycleError> {
        if let Some(i) = values.iter().position(|v| v.is_zero()) {
            return Err(CocycleError::ZeroChainValue(i));
        }
        Ok(OneChain { values })
    }

    pub fn constant(c: FieldElem, order: usize) -> Result<Self, CocycleError> {
        Self::new(vec![c; order])
    }

    /// Uniformly random nonzero values from a seeded generator.
    pub fn random(field: &FieldCtx, order: usize, rng: &mut impl Rng) -> Self {
        let q = field.size() as u32;
        let values = (0..order)
            .map(|_| field.from_value(rng.gen_range(1..q)).unwrap())
            .collect();
        OneChain { values }
    }

    pub fn values(&self) -> &[FieldElem] {
        &self.values
    }
}

/// d(phi)(x,y) = phi(x) phi(y) phi(xy)^{-1}.
pub fn coboundary(group: &Arc<Group>, field: &Arc<FieldCtx>, phi: &OneChain) -> Result<Cocycle, CocycleError> {
    let n = group.order();
    if phi.values.len() != n {
        return Err(CocycleError::WrongSize {
            expected: n,
            got: phi.values.len(),
        });
    }
    if phi.values.iter().any(|&v| !field.owns(v)) {
        return Err(CocycleError::FieldMismatch);
    }
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let num = field.mul(phi.values[x], phi.values[y]);
            table.push(field.div(num, phi.values[group.mul(x, y)])?);
        }
    }
    Ok(Cocycle {
        group: group.clone(),
        field: field.clone(),
        table,
    })
}
