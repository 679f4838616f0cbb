//! Explicit congruence from a form to its canonical representative.
//!
//! The form is split as `V ⊕ V^⊥` with `V` spanned by the `v_i`. The
//! classical part is brought to an orthonormal or symplectic basis, and the
//! `nP` part is cut into `P` and `2P` blocks which are then recombined by
//! explicit base changes until they match the representative.

use crate::bform::{BilinearForm, Subobject};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::{axpy, scale, unit_vector, vadd, EchelonBasis, Matrix, Vector};
use crate::verobj::{Morphism, VerObject};

use super::{canonical_rep, classify, CanonicalClass, Family};

enum Block {
    /// `w` with `β(w, t.w) = 1`; `y = β(w, w)`.
    P { w: Vector, y: FieldElem },
    /// `β(p, t.q) = 1`, `β(p, p) = ε`, everything else zero.
    TwoP { p: Vector, q: Vector, eps: bool },
}

struct Work<'a> {
    beta: &'a BilinearForm,
    obj: VerObject,
}

fn inconsistent(msg: &str) -> Error {
    Error::Inconsistent(format!("canonicalization: {msg}"))
}

impl<'a> Work<'a> {
    fn b(&self, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
        self.beta.eval(u, v)
    }

    fn t(&self, u: &[FieldElem]) -> Vector {
        self.obj.apply_t(u)
    }

    fn q2(&self, u: &[FieldElem]) -> FieldElem {
        self.b(u, &self.t(u))
    }

    /// Orthonormal basis (`want_orthonormal`) or symplectic pairs of a
    /// non-degenerate classical subspace spanned by `vs`.
    fn classical(&self, vs: Vec<Vector>, want_orthonormal: bool) -> Result<Vec<Vector>> {
        let mut rest = vs;
        let mut ortho: Vec<Vector> = Vec::new();
        let mut pairs: Vec<(Vector, Vector)> = Vec::new();
        while !rest.is_empty() {
            let aniso = if want_orthonormal { rest.iter().position(|u| !self.b(u, u).is_zero()) } else { None };
            if let Some(i) = aniso {
                let u = rest.remove(i);
                let e = scale(self.b(&u, &u).sqrt().inv()?, &u);
                rest = rest.iter().map(|z| axpy(self.b(z, &e), &e, z)).collect();
                ortho.push(e);
            } else {
                let e = rest.remove(0);
                let j = rest.iter().position(|z| !self.b(&e, z).is_zero()).ok_or_else(|| inconsistent("degenerate trivial part"))?;
                let f0 = rest.remove(j);
                let f = scale(self.b(&e, &f0).inv()?, &f0);
                rest = rest
                    .iter()
                    .map(|z| {
                        let a = self.b(z, &f);
                        let c = self.b(z, &e);
                        axpy(c, &f, &axpy(a, &e, z))
                    })
                    .collect();
                pairs.push((e, f));
            }
        }
        if !want_orthonormal {
            return Ok(pairs.into_iter().flat_map(|(e, f)| [e, f]).collect());
        }
        if pairs.is_empty() {
            return Ok(ortho);
        }
        // (u, e, f) ↦ (u+e+f, u+e, u+f) turns a hyperbolic pair next to an
        // orthonormal vector into three orthonormal vectors.
        let mut u = ortho.pop().ok_or_else(|| inconsistent("no anisotropic vector in a non-alternating part"))?;
        for (e, f) in pairs {
            let ue = vadd(&u, &e);
            let uf = vadd(&u, &f);
            u = vadd(&ue, &f);
            ortho.push(ue);
            ortho.push(uf);
        }
        ortho.push(u);
        Ok(ortho)
    }

    /// Projects `ws` onto the orthogonal complement of `block` inside the
    /// span of `ws` and their t-images, and returns w-vectors of the result.
    fn complement(&self, ws: &[Vector], block: &[Vector]) -> Result<Vec<Vector>> {
        let f = self.beta.field();
        let d = self.obj.dim();
        let bm = Matrix::from_columns(f, d, block);
        let gb = self.beta.gram().congruence(&bm);
        let gb_inv = gb.inverse().map_err(|_| inconsistent("split-off block is degenerate"))?;
        let proj = |z: &Vector| -> Vector {
            let pairing: Vector = block.iter().map(|b| self.b(b, z)).collect();
            let coeffs = gb_inv.mul_vec(&pairing);
            vadd(z, &bm.mul_vec(&coeffs))
        };
        let mut images = EchelonBasis::new(f);
        let mut out = Vec::new();
        for w in ws {
            let pw = proj(w);
            if images.insert(&self.t(&pw)) {
                out.push(pw);
            }
        }
        if out.len() * 2 + block.len() != ws.len() * 2 {
            return Err(inconsistent("complement of a block has the wrong size"));
        }
        Ok(out)
    }

    /// Cuts the span of `ws` and their t-images into `P` and `2P` blocks.
    fn blocks(&self, mut ws: Vec<Vector>) -> Result<Vec<Block>> {
        let mut out = Vec::new();
        while !ws.is_empty() {
            if let Some(i) = ws.iter().position(|w| !self.q2(w).is_zero()) {
                let u = &ws[i];
                let w = scale(self.q2(u).sqrt().inv()?, u);
                let y = self.b(&w, &w);
                let tw = self.t(&w);
                ws = self.complement(&ws, &[w.clone(), tw])?;
                out.push(Block::P { w, y });
                continue;
            }
            let p0 = ws[0].clone();
            let tp0 = self.t(&p0);
            let j = ws.iter().position(|z| !self.b(&tp0, z).is_zero()).ok_or_else(|| inconsistent("image vector pairs trivially"))?;
            let lam = self.b(&tp0, &ws[j]);
            let s = lam.sqrt().inv()?;
            let p = scale(s, &p0);
            let q = scale(s, &ws[j]);
            let c = self.b(&p, &q);
            let q = axpy(c, &self.t(&q), &q);
            let (mut p, mut q) = (p, q);
            let (mut b, mut a) = (self.b(&p, &p), self.b(&q, &q));
            if b.is_zero() && !a.is_zero() {
                std::mem::swap(&mut p, &mut q);
                std::mem::swap(&mut a, &mut b);
            }
            let block = if b.is_zero() {
                Block::TwoP { p, q, eps: false }
            } else {
                let (ra, rb) = (a.sqrt(), b.sqrt());
                let p2 = axpy(ra, &self.t(&p), &scale(rb.inv()?, &p));
                let q2 = axpy(ra, &p, &scale(rb, &q));
                Block::TwoP { p: p2, q: q2, eps: true }
            };
            let Block::TwoP { p, q, .. } = &block else { unreachable!() };
            ws = self.complement(&ws, &[p.clone(), self.t(p), q.clone(), self.t(q)])?;
            out.push(block);
        }
        Ok(out)
    }

    /// `(y, z) ↦ (a, y+z+a)` on two orthogonal P-blocks with `y ≠ z`.
    fn replace(&self, u1: &[FieldElem], y: FieldElem, u2: &[FieldElem], z: FieldElem, a: FieldElem) -> Result<(Vector, Vector)> {
        if y == z {
            return Err(inconsistent("replacement needs distinct parameters"));
        }
        let k = ((z + a) / (z + y)).sqrt();
        let k1 = k + k.one_like();
        let tu1 = self.t(u1);
        let tu2 = self.t(u2);
        let mut u3 = scale(k, u1);
        u3 = axpy(k1, u2, &u3);
        u3 = axpy(k * y, &tu1, &u3);
        u3 = axpy(k1 * z, &tu2, &u3);
        let u4 = axpy(k, u2, &scale(k1, u1));
        Ok((u3, u4))
    }
}

struct Ys<'w, 'a> {
    work: &'w Work<'a>,
    ws: Vec<Vector>,
    ys: Vec<FieldElem>,
}

impl Ys<'_, '_> {
    fn replace(&mut self, i: usize, j: usize, a: FieldElem) -> Result<()> {
        let (u3, u4) = self.work.replace(&self.ws[i], self.ys[i], &self.ws[j], self.ys[j], a)?;
        let s = self.ys[i] + self.ys[j] + a;
        self.ws[i] = u3;
        self.ws[j] = u4;
        self.ys[i] = a;
        self.ys[j] = s;
        Ok(())
    }

    fn zeros(&self) -> usize {
        self.ys.iter().filter(|y| y.is_zero()).count()
    }

    fn nonzero(&self) -> Vec<usize> {
        (0..self.ys.len()).filter(|&i| !self.ys[i].is_zero()).collect()
    }

    /// Brings `n ≥ 2` P-blocks with at least two distinct parameters to
    /// `(n−2)·P(0) ⊕ P(1) ⊕ P(1+φ)`.
    fn reduce(&mut self, phi: FieldElem) -> Result<()> {
        let n = self.ys.len();
        let one = phi.one_like();
        let zero = phi.zero_like();
        if n == 2 {
            self.replace(0, 1, one)?;
        } else {
            if self.zeros() == 0 {
                let (i, j) = self.distinct_pair()?;
                self.replace(i, j, zero)?;
            }
            while self.zeros() < n - 2 {
                let z = (0..n).find(|&i| self.ys[i].is_zero()).expect("a zero parameter");
                let nz = self.nonzero();
                let (ia, ib, ic) = (nz[0], nz[1], nz[2]);
                let (ya, yb, yc) = (self.ys[ia], self.ys[ib], self.ys[ic]);
                let excluded = [zero, yb, ya + yc];
                let d = phi
                    .field()
                    .elements()
                    .find(|e| !excluded.contains(e))
                    .ok_or_else(|| inconsistent("field too small for the reduction"))?;
                self.replace(z, ia, d)?;
                self.replace(z, ib, zero)?;
                self.replace(ia, ic, zero)?;
            }
            let nz = self.nonzero();
            match nz.as_slice() {
                [i] => {
                    if self.ys[*i] != one {
                        let z = (0..n).find(|&j| self.ys[j].is_zero()).expect("zero");
                        self.replace(*i, z, one)?;
                    }
                }
                [i, j] => {
                    if self.ys[*i] != self.ys[*j] {
                        self.replace(*i, *j, one)?;
                    } else {
                        let z = (0..n).find(|&k| self.ys[k].is_zero()).expect("zero");
                        self.replace(z, *i, one)?;
                        self.replace(*i, *j, one)?;
                    }
                }
                _ => return Err(inconsistent("reduction left too many nonzero parameters")),
            }
        }
        self.order(phi)
    }

    fn distinct_pair(&self) -> Result<(usize, usize)> {
        let n = self.ys.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.ys[i] != self.ys[j] {
                    return Ok((i, j));
                }
            }
        }
        Err(inconsistent("all P parameters agree in a class without good pairs"))
    }

    /// Moves a `1` to position `n−2` and `1+φ` to position `n−1`.
    fn order(&mut self, phi: FieldElem) -> Result<()> {
        let n = self.ys.len();
        let one = phi.one_like();
        let mut idx: Vec<usize> = (0..n).collect();
        let i1 = idx.iter().position(|&i| self.ys[i] == one).ok_or_else(|| inconsistent("missing P(1)"))?;
        let a = idx.remove(i1);
        let i2 = idx.iter().position(|&i| self.ys[i] == one + phi).ok_or_else(|| inconsistent("missing P(1+φ)"))?;
        let b = idx.remove(i2);
        idx.push(a);
        idx.push(b);
        self.ws = idx.iter().map(|&i| self.ws[i].clone()).collect();
        self.ys = idx.iter().map(|&i| self.ys[i]).collect();
        Ok(())
    }
}

/// An invertible t-equivariant `T` from the canonical object to `β`'s object
/// with `Tᵀ·G·T` equal to the canonical representative's Gram matrix.
pub fn canonicalize(beta: &BilinearForm) -> Result<(Morphism, BilinearForm)> {
    let class = classify(beta)?;
    let f = beta.field();
    let obj = beta.obj();
    let work = Work { beta, obj };
    let d = obj.dim();

    let vs: Vec<Vector> = (0..obj.m).map(|i| unit_vector(f, d, obj.v(i))).collect();
    let orthonormal = matches!(class.family, Family::A | Family::B);
    let mut trivial = work.classical(vs.clone(), orthonormal)?;

    let vsub = Subobject::new(obj, &Matrix::from_columns(f, d, &vs))?;
    let perp = beta.orthogonal_complement(&vsub).standard_basis();
    let ws: Vec<Vector> = (0..perp.object.n).map(|k| perp.basis.column(perp.object.w(k))).collect();
    if perp.object.m != 0 || ws.len() != obj.n {
        return Err(inconsistent("complement of the trivial part is not free"));
    }
    let mut blocks = work.blocks(ws)?;

    // Fold 2P blocks into P blocks when the class has no 2P summands.
    if matches!(class.family, Family::B | Family::E | Family::F) {
        while let Some(i) = blocks.iter().position(|b| matches!(b, Block::TwoP { .. })) {
            let j = blocks.iter().position(|b| matches!(b, Block::P { .. })).ok_or_else(|| inconsistent("no P block to absorb 2P"))?;
            let (Block::TwoP { p, q, .. }, Block::P { w: r, .. }) = (&blocks[i], &blocks[j]) else { unreachable!() };
            let u = vadd(&vadd(p, q), r);
            let seeds = vec![u, q.clone(), r.clone()];
            let new = work.blocks(seeds)?;
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            blocks.remove(hi);
            blocks.remove(lo);
            blocks.extend(new);
        }
    }

    let mut nil_cols: Vec<Vector> = Vec::new();
    let push_p = |cols: &mut Vec<Vector>, w: &Vector| {
        cols.push(w.clone());
        cols.push(work.t(w));
    };
    match class.family {
        Family::A | Family::C | Family::D => {
            let mut twos: Vec<(Vector, Vector, bool)> = blocks
                .into_iter()
                .map(|b| match b {
                    Block::TwoP { p, q, eps } => Ok((p, q, eps)),
                    Block::P { .. } => Err(inconsistent("P block in an oscillating part")),
                })
                .collect::<Result<_>>()?;
            if class.family == Family::A {
                // α₁ ⊕ β_2P(1) ≅ α₁ ⊕ β_2P(0) via (u1, p, q) ↦ (u1 + t.q, u1 + p, q)
                let last = trivial.len() - 1;
                for (p, q, eps) in twos.iter_mut() {
                    if *eps {
                        let u1 = trivial[last].clone();
                        trivial[last] = vadd(&u1, &work.t(q));
                        *p = vadd(&u1, p);
                        *eps = false;
                    }
                }
            }
            if class.family == Family::D {
                // β_2P(1) ⊕ β_2P(1) ≅ β_2P(0) ⊕ β_2P(1)
                let ones: Vec<usize> = (0..twos.len()).filter(|&i| twos[i].2).collect();
                let keep = *ones.first().ok_or_else(|| inconsistent("D class without β_2P(1)"))?;
                for &other in &ones[1..] {
                    let (u1, u2) = (twos[keep].0.clone(), twos[keep].1.clone());
                    let (u3, u4) = (twos[other].0.clone(), twos[other].1.clone());
                    twos[other] = (vadd(&u1, &u3), u2.clone(), false);
                    twos[keep] = (vadd(&u3, &work.t(&u2)), vadd(&u2, &u4), true);
                }
                let k = twos.remove(keep);
                twos.insert(0, k);
            }
            for (p, q, eps) in &twos {
                if *eps != (class.family == Family::D && nil_cols.is_empty()) {
                    return Err(inconsistent("unexpected 2P block type"));
                }
                push_p(&mut nil_cols, p);
                push_p(&mut nil_cols, q);
            }
        }
        Family::B | Family::E | Family::F => {
            let (mut ws, mut ys) = (Vec::new(), Vec::new());
            for b in blocks {
                match b {
                    Block::P { w, y } => {
                        ws.push(w);
                        ys.push(y);
                    }
                    Block::TwoP { .. } => return Err(inconsistent("2P block left over")),
                }
            }
            match class.family {
                Family::B => {
                    // α₁ ⊕ β_P(y) ≅ α₁ ⊕ β_P(0) via (u1, w) ↦ (u1 + √y·t.w, √y·u1 + w)
                    let last = trivial.len() - 1;
                    for (w, y) in ws.iter_mut().zip(ys.iter_mut()) {
                        let r = y.sqrt();
                        let u1 = trivial[last].clone();
                        trivial[last] = axpy(r, &work.t(w), &u1);
                        *w = axpy(r, &u1, w);
                        *y = f.zero();
                    }
                }
                Family::E => {}
                _ => {
                    let phi = class.param.expect("F parameter");
                    let mut red = Ys { work: &work, ws, ys };
                    red.reduce(phi)?;
                    ws = red.ws;
                }
            }
            for w in &ws {
                push_p(&mut nil_cols, w);
            }
        }
    }

    let mut cols = trivial;
    cols.extend(nil_cols);
    let t = Matrix::from_columns(f, d, &cols);
    let canon = canonical_rep(&class, f)?;
    verify(beta, &class, &t, &canon)?;
    let m = Morphism::new(class.object(), obj, t).map_err(|_| inconsistent("base change is not equivariant"))?;
    Ok((m, canon))
}

fn verify(beta: &BilinearForm, class: &CanonicalClass, t: &Matrix, canon: &BilinearForm) -> Result<()> {
    if !t.is_invertible() {
        return Err(inconsistent(&format!("base change for {class} is singular")));
    }
    if &beta.gram().congruence(t) != canon.gram() {
        return Err(inconsistent(&format!("congruence does not reach the {class} representative")));
    }
    Ok(())
}
