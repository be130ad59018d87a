//! Closed-form relator constraints for D_{2n} = <r, s | r^n, s^2, (rs)^2>.
//!
//! Unknowns follow the generator-major layout of the generator system:
//! f(r) = sum gamma_i r^i + delta_i r^i s, f(s) = sum h_i r^i + t_i r^i s,
//! stored as (gamma_0.., delta_0.., h_0.., t_0..).

use std::sync::Arc;

use crate::ff::{FieldCtx, FieldElem};
use crate::group::GroupKind;
use crate::linalg::Matrix;
use crate::ring::TwistedRing;

use super::DerivationError;

struct Rows {
    n: usize,
    field: Arc<FieldCtx>,
    rows: Vec<Vec<FieldElem>>,
}

impl Rows {
    fn new(n: usize, field: &Arc<FieldCtx>) -> Self {
        Rows {
            n,
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    fn wrap(&self, i: i64) -> usize {
        i.rem_euclid(self.n as i64) as usize
    }

    /// Adds a row from (block, index, coefficient) terms, indices taken mod n.
    fn push(&mut self, terms: &[(usize, i64, FieldElem)]) {
        let mut row = vec![self.field.zero(); 4 * self.n];
        for &(block, i, c) in terms {
            let j = block * self.n + self.wrap(i);
            row[j] = self.field.add(row[j], c);
        }
        self.rows.push(row);
    }

    fn finish(self) -> Matrix {
        Matrix::from_rows(&self.field, 4 * self.n, &self.rows).expect("rows have 4n entries")
    }
}

const GAMMA: usize = 0;
const DELTA: usize = 1;
const H: usize = 2;
const T: usize = 3;

/// The constraint system for any normalized cocycle that is trivial on
/// rotations (alpha(r^a, r^c) = 1), which covers the sign cocycles:
///
/// - n gamma_i = 0 and A delta = 0 from r^n, where for each Omega
///   a_{Omega,i} = sum_k alpha(r^k, r^i s) alpha(r^{k+i} s, r^{n-k-1}) over
///   the k with 2k + i + 1 = Omega (two values for n even, one for n odd),
/// - h_{-i} alpha(s,s) + alpha(r^i,s) alpha(s,r^i s) h_i = 0 and
///   t_{-i} alpha(s,s) + alpha(r^i s,s) alpha(s,r^i) t_i = 0 from s^2,
/// - two families from (rs)^2, obtained from
///   X alpha(rs,rs) + (rs) X (rs) = 0 with X = f(r) s + r f(s).
pub fn dihedral_constraints(ring: &TwistedRing) -> Result<Matrix, DerivationError> {
    let group = ring.group();
    let GroupKind::Dihedral { n } = *group.kind() else {
        return Err(DerivationError::Unsupported("group is not dihedral".into()));
    };
    let el = |a: i64, b: usize| group.dihedral_elem(a, b).expect("dihedral group");
    let (r, s) = (el(1, 0), el(0, 1));
    if group.generators() != [r, s] {
        return Err(DerivationError::Unsupported(
            "generators must be the standard pair r, s".into(),
        ));
    }
    let one = ring.field().one();
    for a in 0..n as i64 {
        for c in 0..n as i64 {
            if ring.alpha(el(a, 0), el(c, 0)) != one {
                return Err(DerivationError::Unsupported("cocycle is not trivial on rotations".into()));
            }
        }
    }

    let f = ring.field();
    let al = |x: usize, y: usize| ring.alpha(x, y);
    let mul = |x: FieldElem, y: FieldElem| f.mul(x, y);
    let ni = n as i64;
    let mut rows = Rows::new(n, f);

    for i in 0..ni {
        rows.push(&[(GAMMA, i, f.from_int(ni))]);
    }

    for omega in 0..ni {
        let mut terms = Vec::new();
        for i in 0..ni {
            let ks: Vec<i64> = if n % 2 == 0 {
                let diff = (omega - i - 1).rem_euclid(ni);
                if diff % 2 != 0 {
                    continue;
                }
                vec![diff / 2, diff / 2 + ni / 2]
            } else {
                vec![((omega - i - 1) * (ni + 1) / 2).rem_euclid(ni)]
            };
            let mut a = f.zero();
            for k in ks {
                let v = mul(al(el(k, 0), el(i, 1)), al(el(k + i, 1), el(ni - k - 1, 0)));
                a = f.add(a, v);
            }
            terms.push((DELTA, i, a));
        }
        rows.push(&terms);
    }

    let ss = al(s, s);
    for i in 0..ni {
        rows.push(&[(H, -i, ss), (H, i, mul(al(el(i, 0), s), al(s, el(i, 1))))]);
    }
    for i in 0..ni {
        rows.push(&[(T, -i, ss), (T, i, mul(al(el(i, 1), s), al(s, el(i, 0))))]);
    }

    let rs = el(1, 1);
    let rsrs = al(rs, rs);
    for i in 0..ni {
        let c1 = mul(al(rs, el(i, 0)), al(el(1 - i, 1), rs));
        rows.push(&[
            (DELTA, i, mul(al(el(i, 1), s), c1)),
            (H, i - 1, mul(al(r, el(i - 1, 0)), c1)),
            (DELTA, -i, mul(al(el(-i, 1), s), rsrs)),
            (H, -i - 1, mul(al(r, el(-i - 1, 0)), rsrs)),
        ]);
    }
    for i in 0..ni {
        let c1 = mul(al(rs, el(i, 1)), al(el(1 - i, 0), rs));
        rows.push(&[
            (GAMMA, i, mul(al(el(i, 0), s), c1)),
            (T, i - 1, mul(al(r, el(i - 1, 1)), c1)),
            (GAMMA, 2 - i, mul(al(el(2 - i, 0), s), rsrs)),
            (T, 1 - i, mul(al(r, el(1 - i, 1)), rsrs)),
        ]);
    }
    Ok(rows.finish())
}

/// The reduced relation list for n odd under alpha3, taken term by term:
/// n gamma_i = 0, sum delta_i = 0, h_i + h_{n-i} = 0, t_i + t_{n-i} = 0,
/// delta_i + h_{i-1} + delta_{-i} + h_{-i-1} = 0, gamma_i + gamma_{2-i} = 0.
pub fn odd_alpha3_relations(n: usize, field: &Arc<FieldCtx>) -> Result<Matrix, DerivationError> {
    if n < 3 || n % 2 == 0 {
        return Err(DerivationError::Unsupported("relation list needs odd n >= 3".into()));
    }
    let one = field.one();
    let ni = n as i64;
    let mut rows = Rows::new(n, field);
    for i in 0..ni {
        rows.push(&[(GAMMA, i, field.from_int(ni))]);
    }
    let sum: Vec<_> = (0..ni).map(|i| (DELTA, i, one)).collect();
    rows.push(&sum);
    for i in 0..ni {
        rows.push(&[(H, i, one), (H, ni - i, one)]);
    }
    for i in 0..ni {
        rows.push(&[(T, i, one), (T, ni - i, one)]);
    }
    for i in 0..ni {
        rows.push(&[(DELTA, i, one), (H, i - 1, one), (DELTA, -i, one), (H, -i - 1, one)]);
    }
    for i in 0..ni {
        rows.push(&[(GAMMA, i, one), (GAMMA, 2 - i, one)]);
    }
    Ok(rows.finish())
}
