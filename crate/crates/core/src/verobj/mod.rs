//! Objects `m𝟙 ⊕ nP` of Ver4+, their t-action, tensor products, duals and
//! the braiding `c(u⊗r) = r⊗u + t.r⊗t.u`.
//!
//! Vectors are columns. A tensor `u_i ⊗ r_j` sits at index `i * dim(R) + j`.

pub mod hopf;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::{EchelonBasis, Matrix, Vector};

/// The object `m𝟙 ⊕ nP` with basis `v_1..v_m, w_1, x_1, .., w_n, x_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VerObject {
    pub m: usize,
    pub n: usize,
}

impl VerObject {
    pub const ZERO: VerObject = VerObject { m: 0, n: 0 };
    pub const UNIT: VerObject = VerObject { m: 1, n: 0 };
    pub const P: VerObject = VerObject { m: 0, n: 1 };

    pub fn new(m: usize, n: usize) -> Self {
        VerObject { m, n }
    }

    pub fn dim(&self) -> usize {
        self.m + 2 * self.n
    }

    /// Index of `v_i` (zero-based `i`).
    pub fn v(&self, i: usize) -> usize {
        debug_assert!(i < self.m);
        i
    }

    /// Index of `w_k` (zero-based `k`).
    pub fn w(&self, k: usize) -> usize {
        debug_assert!(k < self.n);
        self.m + 2 * k
    }

    /// Index of `x_k = t.w_k` (zero-based `k`).
    pub fn x(&self, k: usize) -> usize {
        debug_assert!(k < self.n);
        self.m + 2 * k + 1
    }

    /// Indices spanning `ker t`: all `v_i` and `x_k`.
    pub fn kernel_indices(&self) -> Vec<usize> {
        (0..self.m).chain((0..self.n).map(|k| self.x(k))).collect()
    }

    pub fn t_matrix(&self, field: &'static FieldCtx) -> Matrix {
        let mut t = Matrix::zeros(field, self.dim(), self.dim());
        for k in 0..self.n {
            t[(self.x(k), self.w(k))] = field.one();
        }
        t
    }

    pub fn apply_t(&self, u: &[FieldElem]) -> Vector {
        let mut out = vec![u[0].zero_like(); u.len()];
        for k in 0..self.n {
            out[self.x(k)] = u[self.w(k)];
        }
        out
    }

    pub fn direct_sum(&self, other: &VerObject) -> VerObject {
        VerObject::new(self.m + other.m, self.n + other.n)
    }

    /// Sizes of `self ⊗ other`: `(mp, 2nq + mq + np)`.
    pub fn tensor_sizes(&self, other: &VerObject) -> VerObject {
        VerObject::new(self.m * other.m, 2 * self.n * other.n + self.m * other.n + self.n * other.m)
    }
}

/// A t-equivariant linear map between standard objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: VerObject,
    pub target: VerObject,
    pub matrix: Matrix,
}

impl Morphism {
    pub fn new(source: VerObject, target: VerObject, matrix: Matrix) -> Result<Morphism> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix cannot map an object of dim {} to one of dim {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let f = matrix.field();
        if &target.t_matrix(f) * &matrix != &matrix * &source.t_matrix(f) {
            return Err(Error::NotEquivariant);
        }
        Ok(Morphism { source, target, matrix })
    }

    pub fn identity(obj: VerObject, field: &'static FieldCtx) -> Morphism {
        Morphism { source: obj, target: obj, matrix: Matrix::identity(field, obj.dim()) }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if other.target != self.source {
            return Err(Error::Dimension("composition of non-matching morphisms".into()));
        }
        Ok(Morphism { source: other.source, target: self.target, matrix: &self.matrix * &other.matrix })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn inverse(&self) -> Result<Morphism> {
        Ok(Morphism { source: self.target, target: self.source, matrix: self.matrix.inverse()? })
    }
}

/// A module over `K[t]/(t²)` given by an arbitrary nilpotent matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTModule {
    t: Matrix,
}

impl RawTModule {
    pub fn new(t: Matrix) -> Result<RawTModule> {
        if !t.is_square() {
            return Err(Error::Dimension(format!("t-action must be square, got {}x{}", t.rows(), t.cols())));
        }
        if !(&t * &t).is_zero() {
            return Err(Error::NotNilpotent);
        }
        Ok(RawTModule { t })
    }

    pub fn from_object(obj: &VerObject, field: &'static FieldCtx) -> RawTModule {
        RawTModule { t: obj.t_matrix(field) }
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    /// t-action on `self ⊗ other`: `T ⊗ 1 + 1 ⊗ T'`.
    pub fn tensor(&self, other: &RawTModule) -> RawTModule {
        let f = self.t.field();
        let a = self.t.kron(&Matrix::identity(f, other.dim()));
        let b = Matrix::identity(f, self.dim()).kron(&other.t);
        RawTModule { t: &a + &b }
    }
}

/// A standard object together with a basis realizing it inside some module.
///
/// Column `j` of `basis` is the `j`-th standard basis vector written in the
/// module's own coordinates, so `T_module · basis = basis · T_standard`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub object: VerObject,
    pub basis: Matrix,
}

/// Splits a nilpotent module into `m𝟙 ⊕ nP`.
///
/// The P-summands come from scanning coordinate vectors `e_0, e_1, ..` and
/// keeping `e_j` whenever `T e_j` is independent of the images kept so far.
/// The trivial part is the greedy completion of `im T` to `ker T`.
pub fn decompose(raw: &RawTModule) -> Decomposition {
    let t = raw.t();
    let f = t.field();
    let dim = raw.dim();
    let mut images = EchelonBasis::new(f);
    let mut pairs: Vec<(Vector, Vector)> = Vec::new();
    for j in 0..dim {
        let tj = t.column(j);
        if images.insert(&tj) {
            pairs.push((crate::matrix::unit_vector(f, dim, j), tj));
        }
    }
    let mut span = images;
    let mut trivial = Vec::new();
    for kv in t.kernel().columns() {
        if span.insert(&kv) {
            trivial.push(kv);
        }
    }
    let object = VerObject::new(trivial.len(), pairs.len());
    let mut cols = trivial;
    for (w, x) in pairs {
        cols.push(w);
        cols.push(x);
    }
    Decomposition { object, basis: Matrix::from_columns(f, dim, &cols) }
}

/// `U ⊗ R` in standard form, with the basis change from the Kronecker basis.
pub fn tensor(u: &VerObject, r: &VerObject, field: &'static FieldCtx) -> Decomposition {
    let raw = RawTModule::from_object(u, field).tensor(&RawTModule::from_object(r, field));
    decompose(&raw)
}

/// Swap `U ⊗ R → R ⊗ U` on Kronecker bases.
pub fn swap_matrix(du: usize, dr: usize, field: &'static FieldCtx) -> Matrix {
    let mut s = Matrix::zeros(field, du * dr, du * dr);
    for i in 0..du {
        for j in 0..dr {
            s[(j * du + i, i * dr + j)] = field.one();
        }
    }
    s
}

/// Braiding `c_{U,R}: U ⊗ R → R ⊗ U` for arbitrary nilpotent actions.
pub fn braiding_raw(u: &RawTModule, r: &RawTModule) -> Matrix {
    let f = u.t().field();
    let s = swap_matrix(u.dim(), r.dim(), f);
    let twist = r.t().kron(u.t());
    &(&Matrix::identity(f, u.dim() * r.dim()) + &twist) * &s
}

/// Braiding on the Kronecker bases of standard objects.
pub fn braiding(u: &VerObject, r: &VerObject, field: &'static FieldCtx) -> Matrix {
    braiding_raw(&RawTModule::from_object(u, field), &RawTModule::from_object(r, field))
}

/// The braiding as a morphism between the standard forms of `U⊗R` and `R⊗U`.
pub fn braiding_morphism(u: &VerObject, r: &VerObject, field: &'static FieldCtx) -> Result<Morphism> {
    let ur = tensor(u, r, field);
    let ru = tensor(r, u, field);
    let c = braiding(u, r, field);
    let m = &(&ru.basis.inverse()? * &c) * &ur.basis;
    Morphism::new(ur.object, ru.object, m)
}

/// Dual object with the basis change from the dual basis.
///
/// On `U*` in the dual basis, `t` acts by `Tᵀ`, so `t.x*_k = w*_k`. The
/// standard basis of the dual object is `v*_i`, then `x*_k, w*_k` pairs.
pub fn dual(u: &VerObject, field: &'static FieldCtx) -> Decomposition {
    let d = u.dim();
    let mut cols: Vec<Vector> = (0..u.m).map(|i| crate::matrix::unit_vector(field, d, u.v(i))).collect();
    for k in 0..u.n {
        cols.push(crate::matrix::unit_vector(field, d, u.x(k)));
        cols.push(crate::matrix::unit_vector(field, d, u.w(k)));
    }
    Decomposition { object: *u, basis: Matrix::from_columns(field, d, &cols) }
}

/// Uniformly random t-equivariant endomorphism of `obj` (possibly singular).
///
/// Each `v_i` goes anywhere in `ker t`, each `w_k` anywhere, and `x_k`
/// follows as `t` applied to the image of `w_k`.
pub fn random_endomorphism<R: Rng + ?Sized>(obj: &VerObject, field: &'static FieldCtx, rng: &mut R) -> Matrix {
    let d = obj.dim();
    let order = field.order();
    let rand_elem = |rng: &mut R| field.elem_masked(rng.gen_range(0..order));
    let mut m = Matrix::zeros(field, d, d);
    let ker = obj.kernel_indices();
    for i in 0..obj.m {
        for &r in &ker {
            m[(r, obj.v(i))] = rand_elem(rng);
        }
    }
    for k in 0..obj.n {
        let img: Vector = (0..d).map(|_| rand_elem(rng)).collect();
        let timg = obj.apply_t(&img);
        for r in 0..d {
            m[(r, obj.w(k))] = img[r];
            m[(r, obj.x(k))] = timg[r];
        }
    }
    m
}

/// Random invertible t-equivariant automorphism of `obj`.
pub fn random_automorphism<R: Rng + ?Sized>(obj: &VerObject, field: &'static FieldCtx, rng: &mut R) -> Morphism {
    loop {
        let m = random_endomorphism(obj, field, rng);
        if m.is_invertible() {
            return Morphism { source: *obj, target: *obj, matrix: m };
        }
    }
}

/// Checks both hexagon identities for `(X, Y, Z)` on Kronecker bases.
///
/// `c_{X,Y⊗Z} = (1_Y ⊗ c_{X,Z})(c_{X,Y} ⊗ 1_Z)` and
/// `c_{X⊗Y,Z} = (c_{X,Z} ⊗ 1_Y)(1_X ⊗ c_{Y,Z})`.
pub fn hexagons_hold(x: &RawTModule, y: &RawTModule, z: &RawTModule) -> (bool, bool) {
    let f = x.t().field();
    let id = |m: &RawTModule| Matrix::identity(f, m.dim());
    let yz = y.tensor(z);
    let xy = x.tensor(y);
    let lhs1 = braiding_raw(x, &yz);
    let rhs1 = &id(y).kron(&braiding_raw(x, z)) * &braiding_raw(x, y).kron(&id(z));
    let lhs2 = braiding_raw(&xy, z);
    let rhs2 = &braiding_raw(x, z).kron(&id(y)) * &id(x).kron(&braiding_raw(y, z));
    (lhs1 == rhs1, lhs2 == rhs2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::matrix::unit_vector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> &'static FieldCtx {
        make_field(2).unwrap()
    }

    fn all_objects(max_dim: usize) -> Vec<VerObject> {
        let mut v = Vec::new();
        for n in 0..=max_dim / 2 {
            for m in 0..=max_dim - 2 * n {
                v.push(VerObject::new(m, n));
            }
        }
        v
    }

    #[test]
    fn decompose_examples() {
        let f = gf4();
        let zero = RawTModule::new(Matrix::zeros(f, 3, 3)).unwrap();
        assert_eq!(decompose(&zero).object, VerObject::new(3, 0));
        let jordan = RawTModule::new(Matrix::from_rows(f, &[vec![0, 0], vec![1, 0]]).unwrap()).unwrap();
        assert_eq!(decompose(&jordan).object, VerObject::P);
        let mut t = Matrix::zeros(f, 4, 4);
        t[(0, 3)] = f.elem(2).unwrap();
        t[(1, 3)] = f.one();
        let d = decompose(&RawTModule::new(t.clone()).unwrap());
        assert_eq!(d.object, VerObject::new(2, 1));
        assert_eq!(&t * &d.basis, &d.basis * &d.object.t_matrix(f));
        assert!(d.basis.is_invertible());
    }

    #[test]
    fn non_nilpotent_rejected() {
        let f = gf4();
        let t = Matrix::from_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(RawTModule::new(t), Err(Error::NotNilpotent));
    }

    #[test]
    fn p_tensor_p_is_two_p() {
        let f = gf4();
        let d = tensor(&VerObject::P, &VerObject::P, f);
        assert_eq!(d.object, VerObject::new(0, 2));
        // Kronecker basis: w⊗ω, w⊗χ, x⊗ω, x⊗χ. The span of w⊗χ and x⊗χ is a
        // P-summand: t(w⊗χ) = x⊗χ and t(x⊗χ) = 0.
        let raw = RawTModule::from_object(&VerObject::P, f).tensor(&RawTModule::from_object(&VerObject::P, f));
        let w_chi = unit_vector(f, 4, 1);
        let x_chi = unit_vector(f, 4, 3);
        assert_eq!(raw.t().mul_vec(&w_chi), x_chi);
        assert!(raw.t().mul_vec(&x_chi).iter().all(|e| e.is_zero()));
        // The second greedy summand is exactly that P.
        assert_eq!(d.basis.column(2), w_chi);
        assert_eq!(d.basis.column(3), x_chi);
    }

    #[test]
    fn tensor_sizes_match_rank() {
        let f = gf4();
        for u in all_objects(4) {
            for r in all_objects(4) {
                let d = tensor(&u, &r, f);
                assert_eq!(d.object, u.tensor_sizes(&r), "{u:?} ⊗ {r:?}");
                let raw = RawTModule::from_object(&u, f).tensor(&RawTModule::from_object(&r, f));
                assert_eq!(raw.t().rank(), d.object.n);
                assert_eq!(raw.t() * &d.basis, &d.basis * &d.object.t_matrix(f));
            }
        }
        assert_eq!(tensor(&VerObject::new(1, 1), &VerObject::new(1, 1), f).object, VerObject::new(1, 4));
    }

    #[test]
    fn unit_tensor_is_identity_basis() {
        let f = gf4();
        let u = VerObject::new(2, 2);
        let d = tensor(&VerObject::UNIT, &u, f);
        assert_eq!(d.object, u);
        assert_eq!(d.basis, Matrix::identity(f, u.dim()));
    }

    #[test]
    fn braiding_examples() {
        let f = gf4();
        let c = braiding(&VerObject::P, &VerObject::P, f);
        let ww = unit_vector(f, 4, 0);
        let xx = unit_vector(f, 4, 3);
        let expect: Vector = ww.iter().zip(&xx).map(|(&a, &b)| a + b).collect();
        assert_eq!(c.mul_vec(&ww), expect);
        assert_eq!(c.mul_vec(&xx), xx);
        let c11 = braiding(&VerObject::UNIT, &VerObject::UNIT, f);
        assert_eq!(c11, Matrix::identity(f, 1));
    }

    #[test]
    fn braiding_is_symmetric_and_equivariant() {
        let f = make_field(3).unwrap();
        for u in all_objects(4) {
            for r in all_objects(4) {
                let cur = braiding(&u, &r, f);
                let cru = braiding(&r, &u, f);
                assert_eq!(&cru * &cur, Matrix::identity(f, u.dim() * r.dim()));
                assert!(braiding_morphism(&u, &r, f).unwrap().is_isomorphism());
            }
        }
    }

    #[test]
    fn dual_is_standard() {
        let f = gf4();
        for u in all_objects(6) {
            let d = dual(&u, f);
            assert_eq!(d.object, u);
            let tdual = u.t_matrix(f).transpose();
            assert_eq!(&tdual * &d.basis, &d.basis * &u.t_matrix(f));
        }
        // t.x*_k = w*_k
        let p = VerObject::P;
        let tdual = p.t_matrix(f).transpose();
        assert_eq!(tdual.mul_vec(&unit_vector(f, 2, 1)), unit_vector(f, 2, 0));
    }

    #[test]
    fn hexagons_small() {
        let f = gf4();
        let objs = all_objects(3);
        for a in &objs {
            for b in &objs {
                for c in &objs {
                    if a.dim() + b.dim() + c.dim() > 6 {
                        continue;
                    }
                    let raws: Vec<RawTModule> = [a, b, c].iter().map(|o| RawTModule::from_object(o, f)).collect();
                    assert_eq!(hexagons_hold(&raws[0], &raws[1], &raws[2]), (true, true));
                }
            }
        }
    }

    #[test]
    fn decompose_recovers_type_after_base_change() {
        let f = make_field(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for obj in all_objects(8) {
            for _ in 0..5 {
                let g = loop {
                    let g = crate::matrix::Matrix::from_columns(
                        f,
                        obj.dim(),
                        &(0..obj.dim()).map(|_| (0..obj.dim()).map(|_| f.elem_masked(rng.gen_range(0..8))).collect()).collect::<Vec<_>>(),
                    );
                    if g.is_invertible() {
                        break g;
                    }
                };
                let t = &(&g * &obj.t_matrix(f)) * &g.inverse().unwrap();
                let d = decompose(&RawTModule::new(t.clone()).unwrap());
                assert_eq!(d.object, obj);
                assert_eq!(&t * &d.basis, &d.basis * &obj.t_matrix(f));
            }
        }
    }

    #[test]
    fn random_automorphisms_are_equivariant() {
        let f = make_field(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for obj in all_objects(8) {
            let a = random_automorphism(&obj, f, &mut rng);
            assert!(Morphism::new(obj, obj, a.matrix.clone()).is_ok());
            assert!(a.is_isomorphism());
        }
    }

    #[test]
    fn morphism_rejects_non_equivariant() {
        let f = gf4();
        let m = Matrix::from_rows(f, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(Morphism::new(VerObject::P, VerObject::P, m), Err(Error::NotEquivariant));
    }
}
