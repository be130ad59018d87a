//! Ring elements whose coefficients are vectors of a fixed width.
//!
//! Width 1 is an ordinary ring element. Width N holds, for every group
//! element, the coefficient as a linear form in N unknowns, which lets the
//! extension formulas run symbolically.

use crate::ff::{FieldCtx, FieldElem};
use crate::group::Letter;
use crate::ring::{RingElem, TwistedRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Lin {
    width: usize,
    data: Vec<FieldElem>,
}

impl Lin {
    pub fn zero(ring: &TwistedRing, width: usize) -> Self {
        Lin {
            width,
            data: vec![ring.field().zero(); ring.dim() * width],
        }
    }

    pub fn from_ring(a: &RingElem) -> Self {
        Lin {
            width: 1,
            data: a.coeffs().to_vec(),
        }
    }

    /// The ring element whose g-coefficient is unknown `offset + g`.
    pub fn unknowns(ring: &TwistedRing, width: usize, offset: usize) -> Self {
        let mut l = Self::zero(ring, width);
        for g in 0..ring.dim() {
            l.data[g * width + offset + g] = ring.field().one();
        }
        l
    }

    pub fn to_ring(&self, ring: &TwistedRing) -> RingElem {
        debug_assert_eq!(self.width, 1);
        ring.from_coeffs(self.data.clone()).expect("length matches")
    }

    /// Coefficient of g-bar as a linear form.
    pub fn row(&self, g: usize) -> &[FieldElem] {
        &self.data[g * self.width..(g + 1) * self.width]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    fn is_zero_row(&self, g: usize) -> bool {
        self.row(g).iter().all(|c| c.is_zero())
    }

    /// self += c * other.
    pub fn add_scaled(&mut self, f: &FieldCtx, c: FieldElem, other: &Lin) {
        if c.is_zero() {
            return;
        }
        for (x, &y) in self.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x = f.add(*x, f.mul(c, y));
            }
        }
    }

    pub fn scale(&self, f: &FieldCtx, c: FieldElem) -> Lin {
        Lin {
            width: self.width,
            data: self.data.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    /// g-bar * self.
    pub fn left_basis(&self, ring: &TwistedRing, g: usize) -> Lin {
        self.basis_mul(ring, g, true)
    }

    /// self * g-bar.
    pub fn right_basis(&self, ring: &TwistedRing, g: usize) -> Lin {
        self.basis_mul(ring, g, false)
    }

    fn basis_mul(&self, ring: &TwistedRing, g: usize, left: bool) -> Lin {
        let f = ring.field();
        let w = self.width;
        let mut out = Lin::zero(ring, w);
        for x in 0..ring.dim() {
            if self.is_zero_row(x) {
                continue;
            }
            let (c, y) = if left { ring.basis_mul(g, x) } else { ring.basis_mul(x, g) };
            for j in 0..w {
                let v = self.data[x * w + j];
                if !v.is_zero() {
                    out.data[y * w + j] = f.mul(c, v);
                }
            }
        }
        out
    }
}

/// Images of generators and of their inverse letters.
pub(crate) struct LetterImages {
    pub pos: Vec<Lin>,
    pub inv: Vec<Lin>,
}

impl LetterImages {
    /// f*(s^-1) = -alpha(s, s^-1)^-1 (s^-1)-bar f(s) (s^-1)-bar.
    pub fn new(ring: &TwistedRing, gens: Vec<Lin>) -> Self {
        let f = ring.field();
        let group = ring.group();
        let inv = gens
            .iter()
            .enumerate()
            .map(|(i, fs)| {
                let s = group.generators()[i];
                let u = group.inv(s);
                let c = f.neg(f.inv(ring.alpha(s, u)).expect("cocycle values are units"));
                fs.left_basis(ring, u).right_basis(ring, u).scale(f, c)
            })
            .collect();
        LetterImages { pos: gens, inv }
    }

    pub fn letter(&self, l: Letter) -> &Lin {
        if l.inverse {
            &self.inv[l.gen]
        } else {
            &self.pos[l.gen]
        }
    }
}

/// sum_i (w_1 ... w_{i-1})-bar f*(w_i) (w_{i+1} ... w_k)-bar, where each
/// partial product of letters is a scalar multiple of a basis element.
pub(crate) fn word_derivative(ring: &TwistedRing, images: &LetterImages, word: &[Letter], width: usize) -> Lin {
    let f = ring.field();
    let group = ring.group();
    let cocycle = ring.cocycle();
    let mut total = Lin::zero(ring, width);
    for i in 0..word.len() {
        let img = images.letter(word[i]);
        if img.is_zero() {
            continue;
        }
        let (pre, suf) = (&word[..i], &word[i + 1..]);
        let c = f.mul(cocycle.beta_of_word(pre), cocycle.beta_of_word(suf));
        let term = img
            .right_basis(ring, group.evaluate(suf))
            .left_basis(ring, group.evaluate(pre));
        total.add_scaled(f, c, &term);
    }
    total
}

/// D(g-bar) = beta_w^-1 * word_derivative(w) for the assigned word w of g.
pub(crate) fn extend_all(ring: &TwistedRing, images: &LetterImages, width: usize) -> Vec<Lin> {
    let f = ring.field();
    let group = ring.group();
    (0..ring.dim())
        .map(|g| {
            let w = group.word(g);
            let d = word_derivative(ring, images, w, width);
            let beta = ring.cocycle().beta_of_word(w);
            d.scale(f, f.inv(beta).expect("cocycle values are units"))
        })
        .collect()
}
