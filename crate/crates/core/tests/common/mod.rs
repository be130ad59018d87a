#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use twder::derivation::{der_space_oracle, DEFAULT_ORACLE_BOUND};
use twder::{Cocycle, DihedralSign, FieldCtx, Group, RingElem, RowSpace, TwistedRing};

pub fn field(p: u64, m: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, m, None).unwrap())
}

pub fn dihedral(n: usize, p: u64, m: u32, sign: Option<DihedralSign>) -> TwistedRing {
    let g = Arc::new(Group::dihedral(n).unwrap());
    let f = field(p, m);
    let c = match sign {
        Some(s) => Cocycle::dihedral(s, &g, &f).unwrap().cocycle,
        None => Cocycle::trivial(&g, &f),
    };
    TwistedRing::new(&c)
}

pub fn abelian(orders: &[usize], p: u64, m: u32) -> TwistedRing {
    let g = Arc::new(Group::abelian(orders).unwrap());
    TwistedRing::new(&Cocycle::trivial(&g, &field(p, m)))
}

/// sum c * r^a s^b in a dihedral ring.
pub fn dih(r: &TwistedRing, terms: &[(i64, i64, usize)]) -> RingElem {
    let g = r.group();
    let t: Vec<(i64, usize)> = terms
        .iter()
        .map(|&(c, a, b)| (c, g.dihedral_elem(a, b).unwrap()))
        .collect();
    r.from_int_terms(&t)
}

pub fn random_elem(r: &TwistedRing, rng: &mut impl Rng) -> RingElem {
    let q = r.field().size() as u32;
    let coeffs = (0..r.dim())
        .map(|_| r.field().from_value(rng.gen_range(0..q)).unwrap())
        .collect();
    r.from_coeffs(coeffs).unwrap()
}

/// Dimension of { a : a g-bar = g-bar a for all g }, from full products of
/// basis elements.
pub fn brute_center(r: &TwistedRing) -> RowSpace {
    let n = r.dim();
    let f = r.field();
    let mut relations = RowSpace::new(f, n);
    for g in 0..n {
        let gb = r.basis(g);
        let images: Vec<RingElem> = (0..n)
            .map(|x| r.commutator(&r.basis(x), &gb).unwrap())
            .collect();
        for k in 0..n {
            let row: Vec<_> = (0..n).map(|x| images[x].coeff(k)).collect();
            relations.insert(&row).unwrap();
        }
    }
    let mut center = RowSpace::new(f, n);
    for v in relations.kernel_basis() {
        center.insert(&v).unwrap();
    }
    center
}

/// The oracle's derivation space restricted to generator images.
pub fn oracle_on_generators(r: &TwistedRing) -> RowSpace {
    let oracle = der_space_oracle(r, DEFAULT_ORACLE_BOUND).unwrap();
    let cols = r.dim() * r.group().generators().len();
    let mut space = RowSpace::new(r.field(), cols);
    for d in &oracle.basis {
        space.insert(&d.generator_map(r).to_vector()).unwrap();
    }
    space
}
