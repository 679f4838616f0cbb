//! Brute-force orbit enumeration for small objects and fields.
//!
//! Every compatible symmetric non-degenerate form on `m𝟙 ⊕ nP` is listed
//! and the full group of equivariant automorphisms is applied to it, so the
//! orbit count comes from first principles and can be compared with the
//! classification.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::bform::BilinearForm;
use crate::classify::{all_classes, classify};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::matrix::Matrix;
use crate::verobj::VerObject;

pub const DEFAULT_BUDGET: u32 = 24;

/// Number of free gram entries of a compatible symmetric form on `obj`.
pub fn free_entries(obj: &VerObject) -> usize {
    let (m, n) = (obj.m, obj.n);
    m * (m + 1) / 2 + m * n + n * (n + 1)
}

/// Number of free coordinates of an equivariant endomorphism of `obj`.
pub fn group_parameters(obj: &VerObject) -> usize {
    obj.m * (obj.m + obj.n) + obj.n * obj.dim()
}

fn check_budget(entries: usize, field: &FieldCtx, budget: u32) -> Result<()> {
    let needed = u32::try_from(entries).unwrap_or(u32::MAX).saturating_mul(field.k());
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(())
}

/// Slots of the gram matrix set by each free entry, in enumeration order.
fn entry_slots(obj: &VerObject) -> Vec<Vec<(usize, usize)>> {
    let mut slots = Vec::new();
    let sym = |a: usize, b: usize| if a == b { vec![(a, a)] } else { vec![(a, b), (b, a)] };
    for i in 0..obj.m {
        for j in i..obj.m {
            slots.push(sym(obj.v(i), obj.v(j)));
        }
    }
    for i in 0..obj.m {
        for k in 0..obj.n {
            slots.push(sym(obj.v(i), obj.w(k)));
        }
    }
    for j in 0..obj.n {
        for k in j..obj.n {
            slots.push(sym(obj.w(j), obj.w(k)));
        }
    }
    for j in 0..obj.n {
        for k in j..obj.n {
            let mut s = vec![(obj.w(j), obj.x(k)), (obj.x(k), obj.w(j))];
            if j != k {
                s.extend([(obj.w(k), obj.x(j)), (obj.x(j), obj.w(k))]);
            }
            slots.push(s);
        }
    }
    slots
}

/// Mixed-radix counter over `len` digits in `0..order`.
fn for_each_tuple(len: usize, order: u32, mut visit: impl FnMut(&[u32]) -> Result<()>) -> Result<()> {
    let mut digits = vec![0u32; len];
    loop {
        visit(&digits)?;
        let mut i = 0;
        loop {
            if i == len {
                return Ok(());
            }
            digits[i] += 1;
            if digits[i] < order {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// All compatible symmetric non-degenerate forms on `m𝟙 ⊕ nP`.
pub fn enumerate_forms(m: usize, n: usize, field: &'static FieldCtx, budget: u32) -> Result<Vec<BilinearForm>> {
    let obj = VerObject::new(m, n);
    check_budget(free_entries(&obj), field, budget)?;
    let slots = entry_slots(&obj);
    let d = obj.dim();
    let mut out = Vec::new();
    for_each_tuple(slots.len(), field.order(), |digits| {
        let mut g = Matrix::zeros(field, d, d);
        for (cells, &bits) in slots.iter().zip(digits) {
            for &c in cells {
                g[c] = field.elem_masked(bits);
            }
        }
        let form = BilinearForm::new(obj, g)?;
        if form.is_nondegenerate() {
            out.push(form);
        }
        Ok(())
    })?;
    Ok(out)
}

/// Every invertible equivariant automorphism of `obj`.
pub fn automorphism_group(obj: &VerObject, field: &'static FieldCtx, budget: u32) -> Result<Vec<Matrix>> {
    check_budget(group_parameters(obj), field, budget)?;
    let d = obj.dim();
    let ker = obj.kernel_indices();
    let mut out = Vec::new();
    for_each_tuple(group_parameters(obj), field.order(), |digits| {
        let mut a = Matrix::zeros(field, d, d);
        let mut it = digits.iter().map(|&b| field.elem_masked(b));
        for i in 0..obj.m {
            for &r in &ker {
                a[(r, obj.v(i))] = it.next().expect("digit");
            }
        }
        for k in 0..obj.n {
            let img: Vec<_> = (0..d).map(|_| it.next().expect("digit")).collect();
            let timg = obj.apply_t(&img);
            for r in 0..d {
                a[(r, obj.w(k))] = img[r];
                a[(r, obj.x(k))] = timg[r];
            }
        }
        if a.is_invertible() {
            out.push(a);
        }
        Ok(())
    })?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitInfo {
    pub size: usize,
    pub representative: Vec<Vec<u32>>,
    /// Canonical label of the orbit, when the field supports classification.
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub m: usize,
    pub n: usize,
    pub k: u32,
    pub total_forms: usize,
    pub group_order: usize,
    pub orbits: Vec<OrbitInfo>,
    /// Every form classifies to the label of its orbit.
    pub labels_constant: bool,
    /// Different orbits carry different labels.
    pub labels_distinct: bool,
    pub predicted: Vec<String>,
    /// The orbit labels are exactly the predicted classes.
    pub matches_prediction: bool,
}

impl OrbitReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn concordant(&self) -> bool {
        self.labels_constant && self.labels_distinct && self.matches_prediction
    }
}

fn key(g: &Matrix) -> Vec<u32> {
    g.to_rows().concat()
}

/// Partitions the enumerated forms into orbits under the automorphism group.
pub fn orbit_classes(m: usize, n: usize, field: &'static FieldCtx, budget: u32) -> Result<OrbitReport> {
    let obj = VerObject::new(m, n);
    let forms = enumerate_forms(m, n, field, budget)?;
    let group = automorphism_group(&obj, field, budget)?;
    let index: HashMap<Vec<u32>, usize> = forms.iter().enumerate().map(|(i, f)| (key(f.gram()), i)).collect();
    let mut orbit_of = vec![usize::MAX; forms.len()];
    let mut seeds = Vec::new();
    for start in 0..forms.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = seeds.len();
        seeds.push(start);
        let g = forms[start].gram();
        for a in &group {
            let moved = g.congruence(a);
            let j = *index.get(&key(&moved)).ok_or_else(|| Error::Inconsistent("congruent form missing from the enumeration".into()))?;
            orbit_of[j] = id;
        }
    }
    let classifiable = field.k() >= 2;
    let labels: Vec<Option<String>> = if classifiable {
        forms.iter().map(|f| classify(f).map(|c| Some(c.label()))).collect::<Result<_>>()?
    } else {
        vec![None; forms.len()]
    };
    let mut orbits: Vec<OrbitInfo> =
        seeds.iter().map(|&s| OrbitInfo { size: 0, representative: forms[s].gram().to_rows(), label: labels[s].clone() }).collect();
    let mut labels_constant = true;
    for (i, &o) in orbit_of.iter().enumerate() {
        orbits[o].size += 1;
        labels_constant &= labels[i] == orbits[o].label;
    }
    let distinct: BTreeSet<&Option<String>> = orbits.iter().map(|o| &o.label).collect();
    let labels_distinct = classifiable && distinct.len() == orbits.len();
    let predicted: Vec<String> = if classifiable { all_classes(m, n, field).iter().map(|c| c.label()).collect() } else { Vec::new() };
    let observed: BTreeSet<String> = orbits.iter().filter_map(|o| o.label.clone()).collect();
    let matches_prediction =
        classifiable && observed == predicted.iter().cloned().collect::<BTreeSet<_>>() && predicted.len() == orbits.len();
    Ok(OrbitReport {
        m,
        n,
        k: field.k(),
        total_forms: forms.len(),
        group_order: group.len(),
        orbits,
        labels_constant: classifiable && labels_constant,
        labels_distinct,
        predicted,
        matches_prediction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn counts_over_gf4() {
        let f = make_field(2).unwrap();
        assert_eq!(enumerate_forms(0, 1, f, DEFAULT_BUDGET).unwrap().len(), 12);
        let r = orbit_classes(0, 1, f, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.orbit_count(), 4);
        assert!(r.concordant(), "{r:?}");
        assert_eq!(orbit_classes(1, 1, f, DEFAULT_BUDGET).unwrap().orbit_count(), 1);
        assert_eq!(orbit_classes(2, 0, f, DEFAULT_BUDGET).unwrap().orbit_count(), 2);
    }

    #[test]
    fn gf2_trivial_line() {
        let f = make_field(1).unwrap();
        let r = orbit_classes(1, 0, f, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.total_forms, 1);
        assert_eq!(r.orbit_count(), 1);
        assert_eq!(r.orbits[0].label, None);
    }

    #[test]
    fn budget_refused() {
        let f = make_field(4).unwrap();
        assert!(matches!(enumerate_forms(2, 2, f, DEFAULT_BUDGET), Err(Error::Budget { .. })));
    }

    #[test]
    fn group_orders() {
        let f = make_field(1).unwrap();
        // Aut(P) over GF(2): a + b t with a ≠ 0.
        assert_eq!(automorphism_group(&VerObject::P, f, DEFAULT_BUDGET).unwrap().len(), 2);
        assert_eq!(automorphism_group(&VerObject::new(2, 0), f, DEFAULT_BUDGET).unwrap().len(), 6);
    }
}
