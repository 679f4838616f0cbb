//! Divided square `Γ²(U) = ker(1 − c)`, Frobenius twist, and quadratic forms
//! as functionals on `Γ²(U)`.
//!
//! `Γ²(U)` splits into lines: each line is a top vector, possibly followed
//! by its image under `t`. A quadratic form kills every `t`-image, so it is
//! stored as one value per line top. The lines come in seven families:
//!
//! | family | top | image |
//! |---|---|---|
//! | 1 | `v_i⊗v_i` | |
//! | 2 | `v_i⊗v_j + v_j⊗v_i` (i<j) | |
//! | 3 | `v_i⊗w_k + w_k⊗v_i` | `v_i⊗x_k + x_k⊗v_i` |
//! | 4 | `x_k⊗x_k` | |
//! | 5 | `w_k⊗x_k + x_k⊗w_k` | |
//! | 6 | `w_k⊗x_l + x_l⊗w_k` (k<l) | `x_k⊗x_l + x_l⊗x_k` |
//! | 7 | `w_k⊗w_l + w_l⊗w_k + x_k⊗x_l` (k<l) | `x_k⊗w_l + w_k⊗x_l + x_l⊗w_k + w_l⊗x_k` |
//!
//! Lines are listed family by family with indices in lexicographic order.

use serde::Serialize;

use crate::bform::{BilinearForm, Subobject};
use crate::classify::{classify, CanonicalClass};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::{Matrix, Vector};
use crate::verobj::{braiding, tensor, Morphism, VerObject};

/// A tensor `Σ e_a ⊗ e_b` with unit coefficients, as a list of `(a, b)`.
pub type Terms = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma2Line {
    pub family: u8,
    /// Zero-based indices: `(i)`, `(i, j)`, `(i, k)`, `(k)`, `(k)`, `(k, l)`, `(k, l)`.
    pub indices: Vec<usize>,
    pub top: Terms,
    pub image: Option<Terms>,
    #[serde(skip)]
    top_pivot: (usize, usize),
    #[serde(skip)]
    image_pivot: Option<(usize, usize)>,
}

impl Gamma2Line {
    /// Human-readable form of the top, with 1-based indices.
    pub fn label(&self, obj: &VerObject) -> String {
        render(obj, &self.top)
    }

    pub fn image_label(&self, obj: &VerObject) -> Option<String> {
        self.image.as_ref().map(|t| render(obj, t))
    }
}

fn basis_name(obj: &VerObject, a: usize) -> String {
    if a < obj.m {
        format!("v{}", a + 1)
    } else {
        let k = (a - obj.m) / 2 + 1;
        if (a - obj.m).is_multiple_of(2) {
            format!("w{k}")
        } else {
            format!("x{k}")
        }
    }
}

fn render(obj: &VerObject, terms: &Terms) -> String {
    terms.iter().map(|&(a, b)| format!("{}⊗{}", basis_name(obj, a), basis_name(obj, b))).collect::<Vec<_>>().join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma2Basis {
    pub object: VerObject,
    pub lines: Vec<Gamma2Line>,
    /// Line indices in the order used to read off coordinates.
    #[serde(skip)]
    peel_order: Vec<(usize, bool)>,
}

impl Gamma2Basis {
    pub fn new(obj: &VerObject) -> Gamma2Basis {
        let (m, n) = (obj.m, obj.n);
        let (v, w, x) = (|i| obj.v(i), |k| obj.w(k), |k| obj.x(k));
        let mut lines = Vec::new();
        let mut push = |family, indices: Vec<usize>, top: Terms, tp, image: Option<Terms>, ip| {
            lines.push(Gamma2Line { family, indices, top, image, top_pivot: tp, image_pivot: ip });
        };
        for i in 0..m {
            push(1, vec![i], vec![(v(i), v(i))], (v(i), v(i)), None, None);
        }
        for i in 0..m {
            for j in i + 1..m {
                push(2, vec![i, j], vec![(v(i), v(j)), (v(j), v(i))], (v(i), v(j)), None, None);
            }
        }
        for i in 0..m {
            for k in 0..n {
                push(
                    3,
                    vec![i, k],
                    vec![(v(i), w(k)), (w(k), v(i))],
                    (v(i), w(k)),
                    Some(vec![(v(i), x(k)), (x(k), v(i))]),
                    Some((v(i), x(k))),
                );
            }
        }
        for k in 0..n {
            push(4, vec![k], vec![(x(k), x(k))], (x(k), x(k)), None, None);
        }
        for k in 0..n {
            push(5, vec![k], vec![(w(k), x(k)), (x(k), w(k))], (w(k), x(k)), None, None);
        }
        for k in 0..n {
            for l in k + 1..n {
                push(
                    6,
                    vec![k, l],
                    vec![(w(k), x(l)), (x(l), w(k))],
                    (w(k), x(l)),
                    Some(vec![(x(k), x(l)), (x(l), x(k))]),
                    Some((x(k), x(l))),
                );
            }
        }
        for k in 0..n {
            for l in k + 1..n {
                push(
                    7,
                    vec![k, l],
                    vec![(w(k), w(l)), (w(l), w(k)), (x(k), x(l))],
                    (w(k), w(l)),
                    Some(vec![(x(k), w(l)), (w(k), x(l)), (x(l), w(k)), (w(l), x(k))]),
                    Some((w(l), x(k))),
                );
            }
        }
        // Family 7 vectors share coordinates with family 6, so they are
        // read off first; every other pivot is untouched by later vectors.
        let mut peel_order = Vec::new();
        for fam in [7u8, 6] {
            for (idx, line) in lines.iter().enumerate().filter(|(_, l)| l.family == fam) {
                peel_order.push((idx, true));
                if line.image.is_some() {
                    peel_order.push((idx, false));
                }
            }
        }
        for (idx, line) in lines.iter().enumerate().filter(|(_, l)| l.family < 6) {
            peel_order.push((idx, true));
            if line.image.is_some() {
                peel_order.push((idx, false));
            }
        }
        Gamma2Basis { object: *obj, lines, peel_order }
    }

    /// `m + m(m−1)/2 + 2mn + 2n + 2n(n−1)`.
    pub fn formula_dim(obj: &VerObject) -> usize {
        let (m, n) = (obj.m, obj.n);
        m + m * m.saturating_sub(1) / 2 + 2 * m * n + 2 * n + 2 * n * n.saturating_sub(1)
    }

    pub fn dim(&self) -> usize {
        self.lines.iter().map(|l| if l.image.is_some() { 2 } else { 1 }).sum()
    }

    /// All basis vectors as dense columns of `U ⊗ U`.
    pub fn matrix(&self, field: &'static FieldCtx) -> Matrix {
        let d = self.object.dim();
        let mut cols = Vec::new();
        for line in &self.lines {
            cols.push(dense(field, d, &line.top));
            if let Some(img) = &line.image {
                cols.push(dense(field, d, img));
            }
        }
        Matrix::from_columns(field, d * d, &cols)
    }

    /// Coordinates of a tensor `z` (a `d×d` coefficient matrix) along the
    /// line tops and images. Returns `(tops, images, residual_is_zero)`;
    /// the residual vanishes exactly when `z ∈ Γ²(U)`.
    pub fn coordinates(&self, z: &Matrix) -> (Vector, Vector, bool) {
        let f = z.field();
        let mut r = z.clone();
        let mut tops = vec![f.zero(); self.lines.len()];
        let mut imgs = vec![f.zero(); self.lines.len()];
        for &(idx, is_top) in &self.peel_order {
            let line = &self.lines[idx];
            let (pivot, terms) =
                if is_top { (line.top_pivot, &line.top) } else { (line.image_pivot.expect("image"), line.image.as_ref().expect("image")) };
            let c = r[pivot];
            if c.is_zero() {
                continue;
            }
            for &ab in terms {
                r[ab] += c;
            }
            if is_top {
                tops[idx] = c;
            } else {
                imgs[idx] = c;
            }
        }
        (tops, imgs, r.is_zero())
    }
}

fn dense(field: &'static FieldCtx, d: usize, terms: &Terms) -> Vector {
    let mut v = vec![field.zero(); d * d];
    for &(a, b) in terms {
        v[a * d + b] += field.one();
    }
    v
}

pub fn gamma2(obj: &VerObject) -> Gamma2Basis {
    Gamma2Basis::new(obj)
}

/// `1 − c_{U,U}` on the Kronecker basis of `U ⊗ U`.
pub fn one_minus_c(obj: &VerObject, field: &'static FieldCtx) -> Matrix {
    &Matrix::identity(field, obj.dim() * obj.dim()) + &braiding(obj, obj, field)
}

/// Rank of the composite `Γ²(U) ↪ U⊗U ↠ S²(U) = U⊗U / im(1 − c)`.
pub fn frobenius_twist_rank(obj: &VerObject, field: &'static FieldCtx) -> usize {
    let g = gamma2(obj).matrix(field);
    let im = one_minus_c(obj, field);
    g.hstack(&im).rank() - im.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct A2Report {
    /// `rank(1 − c)`, the dimension of `𝐀²(U) = im(1 − c)`.
    pub rank_one_minus_c: usize,
    /// Dimension of `A²(U) = ker(Γ² → S²)`.
    pub a2_dim: usize,
    /// `dim (U⊗U) / ker(1 − c)`.
    pub quotient_dim: usize,
    pub holds: bool,
}

/// Checks `A²(U) = im(1 − c)` inside `U ⊗ U` and that `1 − c` induces an
/// isomorphism `(U⊗U)/ker(1 − c) → im(1 − c)`.
pub fn a2_iso_check(obj: &VerObject, field: &'static FieldCtx) -> A2Report {
    let d2 = obj.dim() * obj.dim();
    let omc = one_minus_c(obj, field);
    let g = gamma2(obj).matrix(field);
    let rank = omc.rank();
    let gamma_dim = g.rank();
    let twist = g.hstack(&omc).rank() - rank;
    let a2_dim = gamma_dim - twist;
    let squares_to_zero = (&omc * &omc).is_zero();
    // im(1−c) ⊆ Γ² and A² = Γ² ∩ im(1−c) has the same dimension as im(1−c).
    let im_in_gamma = g.hstack(&omc).rank() == gamma_dim || d2 == 0;
    let kernel_dim = omc.kernel().cols();
    let quotient_dim = d2 - kernel_dim;
    let holds = squares_to_zero && im_in_gamma && a2_dim == rank && quotient_dim == rank && kernel_dim == gamma_dim;
    A2Report { rank_one_minus_c: rank, a2_dim, quotient_dim, holds }
}

/// A quadratic form `q: Γ²(U) → 𝟙`, one value per line top.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    obj: VerObject,
    field: &'static FieldCtx,
    values: Vector,
}

impl PartialEq for QuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        self.obj == other.obj && self.field.k() == other.field.k() && self.values == other.values
    }
}

impl Eq for QuadraticForm {}

impl QuadraticForm {
    pub fn new(obj: VerObject, field: &'static FieldCtx, values: Vector) -> Result<QuadraticForm> {
        let lines = gamma2(&obj).lines.len();
        if values.len() != lines {
            return Err(Error::Dimension(format!("expected {lines} values, got {}", values.len())));
        }
        if let Some(v) = values.iter().find(|v| v.field().k() != field.k()) {
            return Err(Error::FieldMismatch(v.field().k(), field.k()));
        }
        Ok(QuadraticForm { obj, field, values })
    }

    pub fn from_ints(field: &'static FieldCtx, obj: VerObject, values: &[u32]) -> Result<QuadraticForm> {
        let vals = values.iter().map(|&b| field.elem(b)).collect::<Result<Vec<_>>>()?;
        QuadraticForm::new(obj, field, vals)
    }

    pub fn zero(obj: VerObject, field: &'static FieldCtx) -> QuadraticForm {
        let lines = gamma2(&obj).lines.len();
        QuadraticForm { obj, field, values: vec![field.zero(); lines] }
    }

    pub fn obj(&self) -> VerObject {
        self.obj
    }

    pub fn field(&self) -> &'static FieldCtx {
        self.field
    }

    pub fn values(&self) -> &[FieldElem] {
        &self.values
    }

    /// Evaluates `q` on an element of `Γ²(U)` given as a `d×d` coefficient
    /// matrix; fails if the tensor is not in `Γ²(U)`.
    pub fn eval(&self, z: &Matrix) -> Result<FieldElem> {
        let (tops, _, ok) = gamma2(&self.obj).coordinates(z);
        if !ok {
            return Err(Error::Dimension("tensor does not lie in the divided square".into()));
        }
        Ok(tops.iter().zip(&self.values).map(|(&a, &b)| a * b).fold(self.field.zero(), |s, x| s + x))
    }

    /// A bilinear form `B` on `U` (not compatible in general) whose linear
    /// extension to `U ⊗ U` agrees with `q` on `Γ²(U)`.
    pub fn lift(&self) -> Matrix {
        let d = self.obj.dim();
        let g = gamma2(&self.obj);
        let mut b = Matrix::zeros(self.field, d, d);
        let mut unit = Matrix::zeros(self.field, d, d);
        for a in 0..d {
            for c in 0..d {
                unit[(a, c)] = self.field.one();
                let (tops, _, _) = g.coordinates(&unit);
                b[(a, c)] = tops.iter().zip(&self.values).map(|(&x, &y)| x * y).fold(self.field.zero(), |s, t| s + t);
                unit[(a, c)] = self.field.zero();
            }
        }
        b
    }

    /// The quadratic form whose values are `B` evaluated on each line top.
    pub fn from_lift(obj: VerObject, lift: &Matrix) -> QuadraticForm {
        let f = lift.field();
        let values = gamma2(&obj).lines.iter().map(|l| l.top.iter().map(|&ab| lift[ab]).fold(f.zero(), |s, x| s + x)).collect();
        QuadraticForm { obj, field: f, values }
    }

    /// `β_q(u, u') = q((1 − c)(u ⊗ u'))`.
    pub fn beta_q(&self) -> BilinearForm {
        let b = self.lift();
        let t = self.obj.t_matrix(self.field);
        let bt = b.transpose();
        let gram = &(&b + &bt) + &bt.congruence(&t);
        BilinearForm::new(self.obj, gram).expect("β_q is t-compatible")
    }

    /// `q ∘ Γ²(φ)` for an equivariant `φ: S → U`.
    pub fn pullback(&self, m: &Morphism) -> Result<QuadraticForm> {
        if m.target != self.obj {
            return Err(Error::Dimension("pullback morphism does not land in the form's object".into()));
        }
        Ok(QuadraticForm::from_lift(m.source, &self.lift().congruence(&m.matrix)))
    }

    /// Restriction along `Γ²(S) ⊆ Γ²(U)`, on a standard basis of `S`.
    pub fn restrict(&self, s: &Subobject) -> Result<QuadraticForm> {
        if s.ambient() != self.obj {
            return Err(Error::Dimension("subobject lives in a different object".into()));
        }
        let d = s.standard_basis();
        Ok(QuadraticForm::from_lift(d.object, &self.lift().congruence(&d.basis)))
    }

    /// Builds `q` with `β_q = γ` from an alternating form `γ`. The values on
    /// the `v_i⊗v_i` lines are not determined by `γ` and are taken from
    /// `diagonal` (zeros if empty).
    pub fn from_polar(gamma: &BilinearForm, diagonal: &[FieldElem]) -> Result<QuadraticForm> {
        if !gamma.is_alternating() {
            return Err(Error::NotAlternating);
        }
        let obj = gamma.obj();
        let f = gamma.field();
        if !diagonal.is_empty() && diagonal.len() != obj.m {
            return Err(Error::Dimension(format!("expected {} diagonal values, got {}", obj.m, diagonal.len())));
        }
        let g = gamma.gram();
        let (v, w, x) = (|i| obj.v(i), |k| obj.w(k), |k| obj.x(k));
        let values = gamma2(&obj)
            .lines
            .iter()
            .map(|l| {
                let ix = &l.indices;
                match l.family {
                    1 => diagonal.get(ix[0]).copied().unwrap_or(f.zero()),
                    2 => g[(v(ix[0]), v(ix[1]))],
                    3 => g[(v(ix[0]), w(ix[1]))],
                    4 => g[(w(ix[0]), w(ix[0]))],
                    5 => g[(w(ix[0]), x(ix[0]))],
                    6 => g[(w(ix[0]), x(ix[1]))],
                    _ => g[(w(ix[0]), w(ix[1]))],
                }
            })
            .collect();
        Ok(QuadraticForm { obj, field: f, values })
    }
}

/// `q + r` on `U ⊕ R`, zero on the cross term `U ⊗ R`.
pub fn quad_sum(q: &QuadraticForm, r: &QuadraticForm) -> Result<QuadraticForm> {
    if q.field.k() != r.field.k() {
        return Err(Error::FieldMismatch(q.field.k(), r.field.k()));
    }
    let obj = q.obj.direct_sum(&r.obj);
    let (iq, ir) = crate::bform::sum_embedding(&q.obj, &r.obj);
    let (lq, lr) = (q.lift(), r.lift());
    let mut l = Matrix::zeros(q.field, obj.dim(), obj.dim());
    for (a, &i) in iq.iter().enumerate() {
        for (b, &j) in iq.iter().enumerate() {
            l[(i, j)] = lq[(a, b)];
        }
    }
    for (a, &i) in ir.iter().enumerate() {
        for (b, &j) in ir.iter().enumerate() {
            l[(i, j)] = lr[(a, b)];
        }
    }
    Ok(QuadraticForm::from_lift(obj, &l))
}

/// `γ.q` on `V ⊗ W` (standard basis of the tensor object).
///
/// Evaluates `(γ ⊗ B)((1 ⊗ c_{W,V} ⊗ 1)ξ)` on `ξ ∈ Γ²(V ⊗ W)`, where `B` is
/// a lift of `q`. The result does not depend on the lift, and its polar
/// form is the product `γ × β_q`.
pub fn quad_product(gamma: &BilinearForm, q: &QuadraticForm) -> Result<QuadraticForm> {
    if gamma.field().k() != q.field.k() {
        return Err(Error::FieldMismatch(gamma.field().k(), q.field.k()));
    }
    let f = q.field;
    let lift = product_lift(gamma.gram(), &gamma.obj(), &q.lift(), &q.obj);
    let d = tensor(&gamma.obj(), &q.obj, f);
    Ok(QuadraticForm::from_lift(d.object, &lift.congruence(&d.basis)))
}

/// `(g ⊗ b)(1 ⊗ c ⊗ 1)` as a Kronecker-basis Gram on `V ⊗ W`:
/// `g(v, v')·b(w, w') + g(v, t.v')·b(t.w, w')`.
pub(crate) fn product_lift(g: &Matrix, v: &VerObject, b: &Matrix, w: &VerObject) -> Matrix {
    let f = g.field();
    let tv = v.t_matrix(f);
    let tw = w.t_matrix(f);
    &g.kron(b) + &(g * &tv).kron(&(&tw.transpose() * b))
}

/// Outcome of classifying a non-degenerate quadratic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticClass {
    /// Number of hyperbolic planes on the trivial part (`m / 2`).
    pub hyperbolic: usize,
    /// Class of the bilinear form on the `nP` part.
    pub nil_part: CanonicalClass,
    /// For `n = 0` only: the Arf invariant `Σ Tr(q(e_i) q(f_i))` over a
    /// symplectic basis. Zero means a sum of hyperbolic planes over the
    /// base field itself.
    pub arf: Option<u8>,
}

/// `q ≅ (m/2)ℍ + q_γ`: the number of hyperbolic planes and the class of `γ`.
pub fn classify_quadratic(q: &QuadraticForm) -> Result<QuadraticClass> {
    let beta = q.beta_q();
    if !beta.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let obj = q.obj;
    if obj.m % 2 == 1 {
        return Err(Error::OddTrivialPart(obj.m));
    }
    let class = classify(&beta)?;
    let nil_part = class.with_trivial_part(0)?;
    let arf = if obj.n == 0 { Some(arf_invariant(q, &beta)) } else { None };
    Ok(QuadraticClass { hyperbolic: obj.m / 2, nil_part, arf })
}

fn trace(a: FieldElem) -> u8 {
    let mut s = a;
    let mut p = a;
    for _ in 1..a.field().k() {
        p = p.square();
        s += p;
    }
    s.bits() as u8
}

/// Arf invariant of a classical non-degenerate quadratic form.
fn arf_invariant(q: &QuadraticForm, beta: &BilinearForm) -> u8 {
    let f = q.field;
    let d = q.obj.dim();
    let lift = q.lift();
    let qv = |u: &[FieldElem]| lift.bilinear(u, u);
    // Symplectic basis by repeated splitting.
    let mut remaining: Vec<Vector> = (0..d).map(|i| crate::matrix::unit_vector(f, d, i)).collect();
    let mut total = 0u8;
    while let Some(e) = remaining.first().cloned() {
        let pos = remaining.iter().position(|u| !beta.eval(&e, u).is_zero()).expect("non-degenerate");
        let lam = beta.eval(&e, &remaining[pos]);
        let fv = crate::matrix::scale(lam.inv().expect("nonzero"), &remaining[pos]);
        total ^= trace(qv(&e) * qv(&fv));
        let rest: Vec<Vector> = remaining
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != 0 && i != pos)
            .map(|(_, u)| {
                // u − β(u,f)e − β(u,e)f
                let a = beta.eval(u, &fv);
                let b = beta.eval(u, &e);
                let t = crate::matrix::axpy(a, &e, u);
                crate::matrix::axpy(b, &fv, &t)
            })
            .collect();
        remaining = rest;
    }
    total
}
