//! Isomorphism invariants of non-degenerate symmetric forms and the six
//! canonical families A–F.
//!
//! Writing `α₁` for the unit form on `𝟙`, `α₂` for the hyperbolic form on
//! `2𝟙`, `β_P(y) = [[y,1],[1,0]]` on `P`, and `β_2P(ε)` for the
//! anti-diagonal form on `2P` with `β(w_a, w_a) = ε`, the families are
//!
//! - `A[m,n]  = α₁^m ⊕ (n/2)·β_2P(0)`
//! - `B[m,n]  = α₁^m ⊕ n·β_P(0)`
//! - `C[m,n]  = α₂^(m/2) ⊕ (n/2)·β_2P(0)`
//! - `D[m,n]  = α₂^(m/2) ⊕ β_2P(1) ⊕ ((n−2)/2)·β_2P(0)`
//! - `E[m,n](a) = α₂^(m/2) ⊕ n·β_P(a)`
//! - `F[m,n](φ) = α₂^(m/2) ⊕ (n−2)·β_P(0) ⊕ β_P(1) ⊕ β_P(1+φ)`
//!
//! The F parameter is the form invariant `φ`, so that it adds under `⊕`.

mod canonicalize;

use std::fmt;

use serde::{Serialize, Serializer};

pub use canonicalize::canonicalize;

use crate::bform::BilinearForm;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::Matrix;
use crate::verobj::VerObject;

/// The good pairs `(k, l)` with `k·β(u, t.u) = l·β(u, u)` for all `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GoodPairSpace {
    Zero,
    /// Multiples of `(1, 0)`.
    KAxis,
    /// Multiples of `(a, 1)`.
    Line(FieldElem),
    Plane,
}

impl fmt::Display for GoodPairSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoodPairSpace::Zero => write!(f, "zero"),
            GoodPairSpace::KAxis => write!(f, "k-axis"),
            GoodPairSpace::Line(a) => write!(f, "line({a},1)"),
            GoodPairSpace::Plane => write!(f, "plane"),
        }
    }
}

impl Serialize for GoodPairSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl GoodPairSpace {
    pub fn contains(&self, k: FieldElem, l: FieldElem) -> bool {
        match *self {
            GoodPairSpace::Zero => k.is_zero() && l.is_zero(),
            GoodPairSpace::KAxis => l.is_zero(),
            GoodPairSpace::Line(a) => k == a * l,
            GoodPairSpace::Plane => true,
        }
    }

    /// Intersection of two subspaces of `K²`.
    pub fn intersect(&self, other: &GoodPairSpace) -> GoodPairSpace {
        use GoodPairSpace::*;
        match (*self, *other) {
            (Plane, x) | (x, Plane) => x,
            (Zero, _) | (_, Zero) => Zero,
            (KAxis, KAxis) => KAxis,
            (Line(a), Line(b)) if a == b => Line(a),
            _ => Zero,
        }
    }

    /// Solution space of `k·a₂ᵢ = l·a₁ᵢ` for the given coefficient pairs `(a₂ᵢ, a₁ᵢ)`.
    pub fn solve(rows: &[(FieldElem, FieldElem)]) -> GoodPairSpace {
        let mut first: Option<(FieldElem, FieldElem)> = None;
        for &(q2, q1) in rows {
            if q2.is_zero() && q1.is_zero() {
                continue;
            }
            match first {
                None => first = Some((q2, q1)),
                Some((p2, p1)) => {
                    if p2 * q1 != p1 * q2 {
                        return GoodPairSpace::Zero;
                    }
                }
            }
        }
        match first {
            None => GoodPairSpace::Plane,
            Some((q2, _)) if q2.is_zero() => GoodPairSpace::KAxis,
            Some((q2, q1)) => GoodPairSpace::Line(q1 / q2),
        }
    }
}

/// Good pairs of a symmetric form, decided on the standard basis since both
/// `u ↦ β(u,u)` and `u ↦ β(u,t.u)` are Frobenius-semilinear.
pub fn good_pairs(beta: &BilinearForm) -> Result<GoodPairSpace> {
    if !beta.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let rows: Vec<_> = beta.q2_values().into_iter().zip(beta.q1_values()).collect();
    Ok(GoodPairSpace::solve(&rows))
}

fn require_alternating_nondegenerate(beta: &BilinearForm) -> Result<()> {
    if !beta.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !beta.is_alternating() {
        return Err(Error::NotAlternating);
    }
    if !beta.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    Ok(())
}

/// The pairing `g(x_i, x_j) = β(x_i, w_j)` on `im t`, in the basis `x_1..x_n`.
pub fn x_matrix(beta: &BilinearForm) -> Result<Matrix> {
    require_alternating_nondegenerate(beta)?;
    let obj = beta.obj();
    let mut m = Matrix::zeros(beta.field(), obj.n, obj.n);
    for i in 0..obj.n {
        for j in 0..obj.n {
            m[(i, j)] = beta.gram()[(obj.x(i), obj.w(j))];
        }
    }
    Ok(m)
}

/// `f(x_k) = β(w_k, w_k)`.
pub fn x_function(beta: &BilinearForm) -> Result<Vec<FieldElem>> {
    require_alternating_nondegenerate(beta)?;
    let obj = beta.obj();
    Ok((0..obj.n).map(|k| beta.gram()[(obj.w(k), obj.w(k))]).collect())
}

/// `Σ f(x_i)·(M⁻¹)_ii` with `M` the X-matrix.
pub fn form_invariant(beta: &BilinearForm) -> Result<FieldElem> {
    let m = x_matrix(beta)?;
    let f = x_function(beta)?;
    let inv = m.inverse().map_err(|_| Error::Inconsistent("X-matrix of a non-degenerate alternating form is singular".into()))?;
    Ok(f.iter().enumerate().fold(beta.field().zero(), |s, (i, &fi)| s + fi * inv[(i, i)]))
}

/// The form invariant computed in an arbitrary basis of `im t`.
///
/// `ws` are preimages `u_i` whose images `x_i = t.u_i` form a basis of
/// `im t`; then `M_ij = β(x_i, u_j)` and `f(x_i) = β(u_i, u_i)`.
pub fn form_invariant_in_basis(beta: &BilinearForm, ws: &[Vec<FieldElem>]) -> Result<FieldElem> {
    require_alternating_nondegenerate(beta)?;
    let obj = beta.obj();
    let f = beta.field();
    let xs: Vec<_> = ws.iter().map(|u| obj.apply_t(u)).collect();
    let mut m = Matrix::zeros(f, ws.len(), ws.len());
    for i in 0..ws.len() {
        for j in 0..ws.len() {
            m[(i, j)] = beta.eval(&xs[i], &ws[j]);
        }
    }
    let inv = m.inverse()?;
    Ok((0..ws.len()).fold(f.zero(), |s, i| s + beta.eval(&ws[i], &ws[i]) * inv[(i, i)]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F];

    pub fn has_param(self) -> bool {
        matches!(self, Family::E | Family::F)
    }

    /// Whether `(m, n)` is admissible for the family, ignoring parameters.
    pub fn admits(self, m: usize, n: usize) -> bool {
        let (em, en) = (m.is_multiple_of(2), n.is_multiple_of(2));
        match self {
            Family::A => m > 0 && en,
            Family::B => m > 0 && n > 0,
            Family::C => em && en,
            Family::D => em && en && n >= 2,
            Family::E => em && n > 0,
            Family::F => em && n >= 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One of the families A–F with its sizes and parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalClass {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub param: Option<FieldElem>,
}

impl CanonicalClass {
    pub fn new(family: Family, m: usize, n: usize, param: Option<FieldElem>) -> Result<CanonicalClass> {
        let c = CanonicalClass { family, m, n, param };
        if family.has_param() != param.is_some() {
            return Err(Error::InvalidClass(format!("{family} {} a parameter", if family.has_param() { "requires" } else { "takes no" })));
        }
        if !family.admits(m, n) {
            return Err(Error::InvalidClass(format!("{family} does not exist on m = {m}, n = {n}")));
        }
        if family == Family::F && n == 2 && param.is_some_and(|p| p.is_zero()) {
            return Err(Error::InvalidClass("F with n = 2 needs a nonzero invariant".into()));
        }
        Ok(c)
    }

    pub fn object(&self) -> VerObject {
        VerObject::new(self.m, self.n)
    }

    /// The same family and parameter with a different trivial part.
    pub fn with_trivial_part(&self, m: usize) -> Result<CanonicalClass> {
        CanonicalClass::new(self.family, m, self.n, self.param)
    }

    pub fn label(&self) -> String {
        match self.param {
            Some(p) => format!("{}[{},{}]({})", self.family, self.m, self.n, p.bits()),
            None => format!("{}[{},{}]", self.family, self.m, self.n),
        }
    }

    /// Parses labels such as `A[2,0]` or `E[0,1](3)`.
    pub fn parse(s: &str, field: &'static FieldCtx) -> Result<CanonicalClass> {
        let err = || Error::Parse(format!("malformed class label {s:?}"));
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(err)? {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            _ => return Err(err()),
        };
        let rest = chars.as_str();
        let rest = rest.strip_prefix('[').ok_or_else(err)?;
        let (sizes, tail) = rest.split_once(']').ok_or_else(err)?;
        let (m, n) = sizes.split_once(',').ok_or_else(err)?;
        let m: usize = m.trim().parse().map_err(|_| err())?;
        let n: usize = n.trim().parse().map_err(|_| err())?;
        let param = if tail.is_empty() {
            None
        } else {
            let p = tail.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(err)?;
            Some(field.elem(p.trim().parse().map_err(|_| err())?)?)
        };
        CanonicalClass::new(family, m, n, param)
    }
}

impl fmt::Display for CanonicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for CanonicalClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

fn check_classifiable(beta: &BilinearForm) -> Result<()> {
    if beta.field().k() < 2 {
        return Err(Error::FieldTooSmall(beta.field().k()));
    }
    if !beta.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !beta.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    Ok(())
}

/// Assigns the canonical class from the invariants alone.
pub fn classify(beta: &BilinearForm) -> Result<CanonicalClass> {
    check_classifiable(beta)?;
    let obj = beta.obj();
    let (m, n) = (obj.m, obj.n);
    let gp = good_pairs(beta)?;
    let alt = beta.is_alternating();
    let (family, param) = match (alt, gp) {
        (false, GoodPairSpace::KAxis) => (Family::A, None),
        (false, GoodPairSpace::Zero) => (Family::B, None),
        (true, GoodPairSpace::Plane) => (Family::C, None),
        (true, GoodPairSpace::KAxis) => (Family::D, None),
        (true, GoodPairSpace::Line(a)) => (Family::E, Some(a)),
        (true, GoodPairSpace::Zero) => (Family::F, Some(form_invariant(beta)?)),
        (alt, gp) => {
            return Err(Error::Inconsistent(format!("alternating = {alt} with good pairs {gp}")));
        }
    };
    CanonicalClass::new(family, m, n, param).map_err(|e| Error::Inconsistent(format!("invariants point to an impossible class: {e}")))
}

fn alpha1(g: &mut Matrix, i: usize) {
    g[(i, i)] = g.field().one();
}

fn alpha2(g: &mut Matrix, i: usize) {
    let one = g.field().one();
    g[(i, i + 1)] = one;
    g[(i + 1, i)] = one;
}

fn beta_p(g: &mut Matrix, obj: &VerObject, k: usize, y: FieldElem) {
    let one = g.field().one();
    g[(obj.w(k), obj.w(k))] = y;
    g[(obj.w(k), obj.x(k))] = one;
    g[(obj.x(k), obj.w(k))] = one;
}

fn beta_2p(g: &mut Matrix, obj: &VerObject, k: usize, eps: bool) {
    let one = g.field().one();
    let (wa, xa, wb, xb) = (obj.w(k), obj.x(k), obj.w(k + 1), obj.x(k + 1));
    for (i, j) in [(wa, xb), (xb, wa), (xa, wb), (wb, xa)] {
        g[(i, j)] = one;
    }
    if eps {
        g[(wa, wa)] = one;
    }
}

/// The canonical representative of a class.
pub fn canonical_rep(class: &CanonicalClass, field: &'static FieldCtx) -> Result<BilinearForm> {
    let c = CanonicalClass::new(class.family, class.m, class.n, class.param)?;
    if let Some(p) = c.param {
        if p.field().k() != field.k() {
            return Err(Error::FieldMismatch(p.field().k(), field.k()));
        }
    }
    let obj = c.object();
    let mut g = Matrix::zeros(field, obj.dim(), obj.dim());
    match c.family {
        Family::A | Family::B => (0..c.m).for_each(|i| alpha1(&mut g, i)),
        _ => (0..c.m).step_by(2).for_each(|i| alpha2(&mut g, i)),
    }
    let zero = field.zero();
    match c.family {
        Family::A | Family::C => (0..c.n).step_by(2).for_each(|k| beta_2p(&mut g, &obj, k, false)),
        Family::D => {
            beta_2p(&mut g, &obj, 0, true);
            (2..c.n).step_by(2).for_each(|k| beta_2p(&mut g, &obj, k, false));
        }
        Family::B => (0..c.n).for_each(|k| beta_p(&mut g, &obj, k, zero)),
        Family::E => (0..c.n).for_each(|k| beta_p(&mut g, &obj, k, c.param.expect("E parameter"))),
        Family::F => {
            let phi = c.param.expect("F parameter");
            (0..c.n - 2).for_each(|k| beta_p(&mut g, &obj, k, zero));
            beta_p(&mut g, &obj, c.n - 2, field.one());
            beta_p(&mut g, &obj, c.n - 1, field.one() + phi);
        }
    }
    BilinearForm::new(obj, g)
}

/// Every valid class on `(m, n)` over the field, in family order and then
/// parameter encoding order.
pub fn all_classes(m: usize, n: usize, field: &'static FieldCtx) -> Vec<CanonicalClass> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        if !fam.admits(m, n) {
            continue;
        }
        if fam.has_param() {
            for p in field.elements() {
                if let Ok(c) = CanonicalClass::new(fam, m, n, Some(p)) {
                    out.push(c);
                }
            }
        } else {
            out.push(CanonicalClass::new(fam, m, n, None).expect("admissible"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::verobj::random_automorphism;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> &'static FieldCtx {
        make_field(2).unwrap()
    }

    fn p_form(f: &'static FieldCtx, y: u32) -> BilinearForm {
        BilinearForm::from_rows(f, VerObject::P, &[vec![y, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn good_pair_examples() {
        let f = gf4();
        let c = canonical_rep(&CanonicalClass::new(Family::C, 2, 2, None).unwrap(), f).unwrap();
        assert_eq!(good_pairs(&c).unwrap(), GoodPairSpace::Plane);
        assert_eq!(good_pairs(&p_form(f, 3)).unwrap(), GoodPairSpace::Line(f.elem(3).unwrap()));
        let b = canonical_rep(&CanonicalClass::new(Family::B, 1, 1, None).unwrap(), f).unwrap();
        assert_eq!(good_pairs(&b).unwrap(), GoodPairSpace::Zero);
    }

    #[test]
    fn x_data_examples() {
        let f = gf4();
        let a = f.elem(2).unwrap();
        let e = canonical_rep(&CanonicalClass::new(Family::E, 0, 3, Some(a)).unwrap(), f).unwrap();
        assert_eq!(x_matrix(&e).unwrap(), Matrix::identity(f, 3));
        assert_eq!(x_function(&e).unwrap(), vec![a; 3]);
        let c = canonical_rep(&CanonicalClass::new(Family::C, 0, 2, None).unwrap(), f).unwrap();
        assert_eq!(x_matrix(&c).unwrap().to_rows(), vec![vec![0, 1], vec![1, 0]]);
        let z = BilinearForm::zero(VerObject::ZERO, f);
        assert_eq!(x_matrix(&z).unwrap().rows(), 0);
        let id = BilinearForm::from_rows(f, VerObject::UNIT, &[vec![1]]).unwrap();
        assert_eq!(x_matrix(&id), Err(Error::NotAlternating));
    }

    #[test]
    fn invariant_examples() {
        let f = make_field(4).unwrap();
        for y in f.elements() {
            for n in 1..=4 {
                let e = canonical_rep(&CanonicalClass::new(Family::E, 0, n, Some(y)).unwrap(), f).unwrap();
                assert_eq!(form_invariant(&e).unwrap(), y.times(n));
            }
            let s = p_form(f, 1).direct_sum(&p_form(f, y.bits())).unwrap();
            assert_eq!(form_invariant(&s).unwrap(), f.one() + y);
        }
    }

    #[test]
    fn classify_examples() {
        let f = gf4();
        for y in 0..4 {
            assert_eq!(classify(&p_form(f, y)).unwrap().label(), format!("E[0,1]({y})"));
        }
        let id = BilinearForm::from_rows(f, VerObject::new(2, 0), &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(classify(&id).unwrap().label(), "A[2,0]");
        let d1 = canonical_rep(&CanonicalClass::new(Family::D, 0, 2, None).unwrap(), f).unwrap();
        let dd = d1.direct_sum(&d1).unwrap();
        assert_eq!(classify(&dd).unwrap().label(), "D[0,4]");
    }

    #[test]
    fn classify_rejections() {
        let f1 = make_field(1).unwrap();
        let p = p_form(f1, 1);
        assert_eq!(classify(&p), Err(Error::FieldTooSmall(1)));
        let f = gf4();
        let z = BilinearForm::zero(VerObject::P, f);
        assert_eq!(classify(&z), Err(Error::Degenerate));
        let asym = BilinearForm::from_rows(f, VerObject::new(2, 0), &[vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(classify(&asym), Err(Error::NotSymmetric));
    }

    #[test]
    fn canonical_rep_examples() {
        let f = gf4();
        let c = canonical_rep(&CanonicalClass::new(Family::C, 0, 2, None).unwrap(), f).unwrap();
        assert_eq!(c.gram().to_rows(), vec![vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        let d = canonical_rep(&CanonicalClass::new(Family::D, 0, 2, None).unwrap(), f).unwrap();
        assert_eq!(d.gram().to_rows(), vec![vec![1, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        assert!(CanonicalClass::new(Family::F, 0, 2, Some(f.zero())).is_err());
        assert!(CanonicalClass::new(Family::A, 0, 2, None).is_err());
        assert!(CanonicalClass::new(Family::E, 0, 1, None).is_err());
    }

    #[test]
    fn labels_roundtrip() {
        let f = make_field(3).unwrap();
        for m in 0..=4 {
            for n in 0..=4 {
                for c in all_classes(m, n, f) {
                    assert_eq!(CanonicalClass::parse(&c.label(), f).unwrap(), c);
                }
            }
        }
        assert!(CanonicalClass::parse("G[1,1]", f).is_err());
        assert!(CanonicalClass::parse("E[0,1](9)", f).is_err());
        assert!(CanonicalClass::parse("A[1,1]", f).is_err());
    }

    #[test]
    fn reps_classify_to_themselves() {
        let f = make_field(3).unwrap();
        for m in 0..=4 {
            for n in 0..=4 {
                for c in all_classes(m, n, f) {
                    let rep = canonical_rep(&c, f).unwrap();
                    assert!(rep.is_nondegenerate() && rep.is_symmetric());
                    assert_eq!(classify(&rep).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn invariant_is_additive() {
        let f = make_field(3).unwrap();
        let alt: Vec<CanonicalClass> =
            (0..=2).flat_map(|m| (0..=3).flat_map(move |n| all_classes(m, n, f))).filter(|c| c.family >= Family::C).collect();
        for a in &alt {
            for b in &alt {
                let (ra, rb) = (canonical_rep(a, f).unwrap(), canonical_rep(b, f).unwrap());
                let s = ra.direct_sum(&rb).unwrap();
                assert_eq!(form_invariant(&s).unwrap(), form_invariant(&ra).unwrap() + form_invariant(&rb).unwrap());
            }
        }
    }

    #[test]
    fn invariant_in_random_bases() {
        let f = make_field(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let c = CanonicalClass::new(Family::F, 2, 3, Some(f.elem(5).unwrap())).unwrap();
        let rep = canonical_rep(&c, f).unwrap();
        for _ in 0..50 {
            let auto = random_automorphism(&rep.obj(), f, &mut rng);
            let moved = rep.pullback(&auto).unwrap();
            assert_eq!(form_invariant(&moved).unwrap(), f.elem(5).unwrap());
            // explicit non-standard preimages: w-columns of a second automorphism
            let other = random_automorphism(&rep.obj(), f, &mut rng);
            let ws: Vec<_> = (0..3).map(|k| other.matrix.column(rep.obj().w(k))).collect();
            assert_eq!(form_invariant_in_basis(&rep, &ws).unwrap(), f.elem(5).unwrap());
        }
    }

    #[test]
    fn symmetric_forms_on_np_are_alternating() {
        let f = gf4();
        for n in 1..=2 {
            let obj = VerObject::new(0, n);
            let d = obj.dim();
            let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
            for code in 0..4u64.pow(pairs.len() as u32) {
                let mut g = Matrix::zeros(f, d, d);
                let mut c = code;
                for &(i, j) in &pairs {
                    let e = f.elem((c % 4) as u32).unwrap();
                    c /= 4;
                    g[(i, j)] = e;
                    g[(j, i)] = e;
                }
                if let Ok(b) = BilinearForm::new(obj, g) {
                    assert!(b.is_alternating());
                }
            }
        }
    }

    #[test]
    fn good_pair_intersection() {
        let f = gf4();
        let a = f.elem(2).unwrap();
        let b = f.elem(3).unwrap();
        use GoodPairSpace::*;
        assert_eq!(Plane.intersect(&Line(a)), Line(a));
        assert_eq!(Line(a).intersect(&Line(b)), Zero);
        assert_eq!(Line(a).intersect(&KAxis), Zero);
        assert_eq!(KAxis.intersect(&KAxis), KAxis);
        assert!(Line(a).contains(a, f.one()));
    }
}
