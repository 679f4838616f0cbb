//! The Hopf algebra `A = K[t]/(t²)` with `Δ(t) = 1⊗t + t⊗1` and
//! `R = 1⊗1 + t⊗t`, checked on the tensor powers of `A` directly.
//!
//! An element of `A^{⊗l}` is a vector of length `2^l`; bit `j` of an index
//! says whether tensor slot `j` holds `t` rather than `1`.

use serde::Serialize;

use crate::field::{FieldCtx, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Tensor {
    slots: u32,
    coeffs: Vec<FieldElem>,
}

impl Tensor {
    fn zero(field: &'static FieldCtx, slots: u32) -> Self {
        Tensor { slots, coeffs: vec![field.zero(); 1 << slots] }
    }

    fn field(&self) -> &'static FieldCtx {
        self.coeffs[0].field()
    }

    fn mul(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.slots, other.slots);
        let mut out = Tensor::zero(self.field(), self.slots);
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                // t·t = 0 in any slot
                if a & b == 0 {
                    out.coeffs[a | b] += ca * cb;
                }
            }
        }
        out
    }

    fn one(field: &'static FieldCtx, slots: u32) -> Tensor {
        let mut t = Tensor::zero(field, slots);
        t.coeffs[0] = field.one();
        t
    }

    /// Linear map induced by sending each basis monomial to `f(monomial)`.
    fn map(&self, slots: u32, f: impl Fn(usize) -> Vec<(usize, FieldElem)>) -> Tensor {
        let mut out = Tensor::zero(self.field(), slots);
        for (a, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (b, s) in f(a) {
                out.coeffs[b] += c * s;
            }
        }
        out
    }
}

/// `R = 1⊗1 + t⊗t` placed in slots `(i, j)` of `A^{⊗l}`.
fn r_in(field: &'static FieldCtx, slots: u32, i: u32, j: u32) -> Tensor {
    let mut r = Tensor::one(field, slots);
    r.coeffs[(1 << i) | (1 << j)] += field.one();
    r
}

/// Applies `Δ` to slot `s` of `A^{⊗l}`, producing `A^{⊗(l+1)}`.
fn delta_at(x: &Tensor, s: u32) -> Tensor {
    let one = x.field().one();
    let low = (1usize << s) - 1;
    x.map(x.slots + 1, |a| {
        let below = a & low;
        let above = (a >> (s + 1)) << (s + 2);
        if a & (1 << s) == 0 {
            vec![(below | above, one)]
        } else {
            vec![(below | above | (1 << s), one), (below | above | (1 << (s + 1)), one)]
        }
    })
}

fn swap_two(x: &Tensor) -> Tensor {
    let one = x.field().one();
    x.map(2, |a| vec![(((a & 1) << 1) | (a >> 1), one)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RMatrixReport {
    /// `(Δ ⊗ 1)(R) = R¹³R²³`
    pub delta_left: bool,
    /// `(1 ⊗ Δ)(R) = R¹³R¹²`
    pub delta_right: bool,
    /// `σ∘Δ(a) = R Δ(a) R⁻¹` for `a ∈ {1, t}`
    pub quasi_cocommutative: bool,
    /// `R⁻¹ = R²¹`
    pub inverse_is_flip: bool,
    /// `R² = 1`
    pub involutive: bool,
}

impl RMatrixReport {
    pub fn all_hold(&self) -> bool {
        self.delta_left && self.delta_right && self.quasi_cocommutative && self.inverse_is_flip && self.involutive
    }
}

pub fn check_r_matrix_axioms(field: &'static FieldCtx) -> RMatrixReport {
    let r = r_in(field, 2, 0, 1);
    let r21 = swap_two(&r);
    let one2 = Tensor::one(field, 2);

    let delta_left = delta_at(&r, 0) == r_in(field, 3, 0, 2).mul(&r_in(field, 3, 1, 2));
    let delta_right = delta_at(&r, 1) == r_in(field, 3, 0, 2).mul(&r_in(field, 3, 0, 1));

    // R·R21 = 1 identifies R21 as the inverse; use it for conjugation.
    let inverse_is_flip = r.mul(&r21) == one2 && r21.mul(&r) == one2;
    let quasi_cocommutative = [0usize, 1].iter().all(|&a| {
        let mut elem = Tensor::zero(field, 1);
        elem.coeffs[a] = field.one();
        let d = delta_at(&elem, 0);
        swap_two(&d) == r.mul(&d).mul(&r21)
    });
    let involutive = r.mul(&r) == one2;
    RMatrixReport { delta_left, delta_right, quasi_cocommutative, inverse_is_flip, involutive }
}
