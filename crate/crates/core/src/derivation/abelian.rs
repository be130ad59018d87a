use crate::group::{abelian_relators, GroupKind};
use crate::linalg::span_dim;
use crate::ring::TwistedRing;

use super::{extend, leibniz_violation, Derivation, DerivationError, Extension, GeneratorMap};

/// Splits each cyclic factor of order p^a u (p not dividing u) into its
/// p-part and p'-part, so G = H x X with X a p-group on generators
/// x_1..x_k. Each map x_j -> delta_ij 1-bar (zero on H) extends to a
/// derivation d_i, and the result is { g-bar d_i : g in G, i = 1..k },
/// g-major. Requires H inside Z_alpha(G).
pub fn abelian_partial_basis(ring: &TwistedRing) -> Result<Vec<Derivation>, DerivationError> {
    let group = ring.group();
    let GroupKind::Abelian { orders } = group.kind() else {
        return Err(DerivationError::Hypothesis(
            "group must be built as a product of cyclic groups".into(),
        ));
    };
    let p = ring.field().characteristic() as usize;
    let (mut p_gens, mut p_orders) = (Vec::new(), Vec::new());
    let (mut q_gens, mut q_orders) = (Vec::new(), Vec::new());
    for (&x, &o) in group.generators().iter().zip(orders) {
        let mut pa = 1;
        while (o / pa) % p == 0 {
            pa *= p;
        }
        let u = o / pa;
        if pa > 1 {
            p_gens.push(group.pow(x, u as i64));
            p_orders.push(pa);
        }
        if u > 1 {
            q_gens.push(group.pow(x, pa as i64));
            q_orders.push(u);
        }
    }

    let center = ring.cocycle().alpha_center();
    if let Some(h) = (0..group.order()).find(|&h| group.element_order(h) % p != 0 && !center.contains(&h)) {
        return Err(DerivationError::Hypothesis(format!(
            "p-regular element {} is not in the alpha-center",
            group.name(h)
        )));
    }
    let k = p_gens.len();
    if k == 0 {
        return Ok(Vec::new());
    }

    let gens: Vec<usize> = p_gens.iter().chain(&q_gens).copied().collect();
    let all_orders: Vec<usize> = p_orders.iter().chain(&q_orders).copied().collect();
    let split = ring.with_presentation(group.with_presentation(&gens, abelian_relators(&all_orders))?)?;

    let mut partials = Vec::with_capacity(k);
    for i in 0..k {
        let mut images = vec![split.zero(); gens.len()];
        images[i] = split.one();
        match extend(&split, &GeneratorMap::new(&split, images)?)? {
            Extension::Accepted(d) => partials.push(d),
            Extension::Rejected { relator, .. } => return Err(DerivationError::Rejected { relator }),
        }
    }

    let mut out = Vec::with_capacity(group.order() * k);
    for g in 0..group.order() {
        for d in &partials {
            let e = d.left_basis_mul(ring, g)?;
            if let Some((a, b)) = leibniz_violation(ring, &e) {
                return Err(DerivationError::LeibnizFailure(a, b));
            }
            out.push(e);
        }
    }
    let flat: Vec<_> = out.iter().map(Derivation::flatten).collect();
    if span_dim(ring.field(), group.order() * group.order(), &flat)? != out.len() {
        return Err(DerivationError::Internal("partial derivations are dependent".into()));
    }
    Ok(out)
}
