//! Bilinear forms `β: U ⊗ U → 𝟙` stored as Gram matrices on the standard
//! basis, subject to `β(t.u, u') = β(u, t.u')`, i.e. `Tᵀ·G = G·T`.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::{EchelonBasis, Matrix, Vector};
use crate::verobj::{decompose, Decomposition, Morphism, RawTModule, VerObject};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    obj: VerObject,
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(obj: VerObject, gram: Matrix) -> Result<BilinearForm> {
        if gram.rows() != obj.dim() || gram.cols() != obj.dim() {
            return Err(Error::Dimension(format!("gram is {}x{} but the object has dimension {}", gram.rows(), gram.cols(), obj.dim())));
        }
        let t = obj.t_matrix(gram.field());
        if &t.transpose() * &gram != &gram * &t {
            return Err(Error::Incompatible);
        }
        Ok(BilinearForm { obj, gram })
    }

    pub fn from_rows(field: &'static FieldCtx, obj: VerObject, rows: &[Vec<u32>]) -> Result<BilinearForm> {
        let gram = if rows.is_empty() { Matrix::zeros(field, 0, 0) } else { Matrix::from_rows(field, rows)? };
        BilinearForm::new(obj, gram)
    }

    pub fn zero(obj: VerObject, field: &'static FieldCtx) -> BilinearForm {
        BilinearForm { obj, gram: Matrix::zeros(field, obj.dim(), obj.dim()) }
    }

    pub fn obj(&self) -> VerObject {
        self.obj
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn field(&self) -> &'static FieldCtx {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.obj.dim()
    }

    pub fn eval(&self, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
        self.gram.bilinear(u, v)
    }

    /// `β(b_i, b_i)` on each standard basis vector.
    pub fn q1_values(&self) -> Vector {
        self.gram.diagonal()
    }

    /// `β(b_i, t.b_i)` on each standard basis vector; nonzero only at `w_k`.
    pub fn q2_values(&self) -> Vector {
        let mut out = vec![self.field().zero(); self.dim()];
        for k in 0..self.obj.n {
            out[self.obj.w(k)] = self.gram[(self.obj.w(k), self.obj.x(k))];
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram.is_symmetric()
    }

    /// Symmetric with `β(u, u) = 0` for every `u ∈ ker t`.
    ///
    /// `u ↦ β(u, u)` is additive and Frobenius-semilinear on a symmetric
    /// form, so the basis vectors `v_i`, `x_k` decide it.
    pub fn is_alternating(&self) -> bool {
        self.is_symmetric() && self.obj.kernel_indices().iter().all(|&i| self.gram[(i, i)].is_zero())
    }

    /// Symmetric with `β(u, t.u) = 0` for every `u`.
    pub fn is_oscillating(&self) -> bool {
        self.is_symmetric() && self.q2_values().iter().all(|e| e.is_zero())
    }

    /// Symmetric with `β(u, u) = 0` for every `u`.
    pub fn is_super_alternating(&self) -> bool {
        self.is_symmetric() && self.q1_values().iter().all(|e| e.is_zero())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_invertible()
    }

    pub fn radical(&self) -> Subobject {
        Subobject { ambient: self.obj, span: self.gram.kernel() }
    }

    /// Pullback along `m: S → U`, with Gram `Mᵀ·G·M` on `S`.
    pub fn pullback(&self, m: &Morphism) -> Result<BilinearForm> {
        if m.target != self.obj {
            return Err(Error::Dimension("pullback morphism does not land in the form's object".into()));
        }
        Ok(BilinearForm { obj: m.source, gram: self.gram.congruence(&m.matrix) })
    }

    /// Orthogonal sum. Basis: own `v`'s, other's `v`'s, own P's, other's P's.
    pub fn direct_sum(&self, other: &BilinearForm) -> Result<BilinearForm> {
        if self.field().k() != other.field().k() {
            return Err(Error::FieldMismatch(self.field().k(), other.field().k()));
        }
        let obj = self.obj.direct_sum(&other.obj);
        let (ia, ib) = sum_embedding(&self.obj, &other.obj);
        let mut g = Matrix::zeros(self.field(), obj.dim(), obj.dim());
        for (a, &i) in ia.iter().enumerate() {
            for (b, &j) in ia.iter().enumerate() {
                g[(i, j)] = self.gram[(a, b)];
            }
        }
        for (a, &i) in ib.iter().enumerate() {
            for (b, &j) in ib.iter().enumerate() {
                g[(i, j)] = other.gram[(a, b)];
            }
        }
        Ok(BilinearForm { obj, gram: g })
    }

    /// The form restricted to `s`, on a standard basis of `s`.
    pub fn restrict(&self, s: &Subobject) -> BilinearForm {
        let d = s.standard_basis();
        BilinearForm { obj: d.object, gram: self.gram.congruence(&d.basis) }
    }

    /// `S^⊥ = {u : β(s, u) = 0 for all s ∈ S}`.
    pub fn orthogonal_complement(&self, s: &Subobject) -> Subobject {
        let m = (&s.span.transpose() * &self.gram).kernel();
        Subobject { ambient: self.obj, span: m }
    }

    /// `U = S ⊕ S^⊥`; fails when `β|_S` is degenerate.
    pub fn split(&self, s: &Subobject) -> Result<(Subobject, Subobject)> {
        if !self.restrict(s).is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        Ok((s.clone(), self.orthogonal_complement(s)))
    }
}

/// Positions of the summands' standard basis vectors inside `a ⊕ b`.
pub fn sum_embedding(a: &VerObject, b: &VerObject) -> (Vec<usize>, Vec<usize>) {
    let s = a.direct_sum(b);
    let mut ia = vec![0; a.dim()];
    let mut ib = vec![0; b.dim()];
    for i in 0..a.m {
        ia[a.v(i)] = s.v(i);
    }
    for i in 0..b.m {
        ib[b.v(i)] = s.v(a.m + i);
    }
    for k in 0..a.n {
        ia[a.w(k)] = s.w(k);
        ia[a.x(k)] = s.x(k);
    }
    for k in 0..b.n {
        ib[b.w(k)] = s.w(a.n + k);
        ib[b.x(k)] = s.x(a.n + k);
    }
    (ia, ib)
}

/// A t-stable subspace of a standard object, stored as independent columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subobject {
    ambient: VerObject,
    span: Matrix,
}

impl Subobject {
    pub fn new(ambient: VerObject, spanning: &Matrix) -> Result<Subobject> {
        if spanning.rows() != ambient.dim() {
            return Err(Error::Dimension(format!(
                "spanning vectors have length {}, ambient dimension is {}",
                spanning.rows(),
                ambient.dim()
            )));
        }
        let f = spanning.field();
        let mut eb = EchelonBasis::new(f);
        let cols: Vec<Vector> = spanning.columns().into_iter().filter(|c| eb.insert(c)).collect();
        for c in &cols {
            if !eb.contains(&ambient.apply_t(c)) {
                return Err(Error::NotStable);
            }
        }
        Ok(Subobject { ambient, span: Matrix::from_columns(f, ambient.dim(), &cols) })
    }

    pub fn ambient(&self) -> VerObject {
        self.ambient
    }

    pub fn span(&self) -> &Matrix {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.span.cols()
    }

    /// A standard basis of the subobject in ambient coordinates.
    pub fn standard_basis(&self) -> Decomposition {
        let f = self.span.field();
        let ts = &self.ambient.t_matrix(f) * &self.span;
        let local = self.span.solve(&ts).expect("subobject is t-stable");
        let raw = RawTModule::new(local).expect("restriction of a nilpotent action");
        let d = decompose(&raw);
        Decomposition { object: d.object, basis: &self.span * &d.basis }
    }
}
