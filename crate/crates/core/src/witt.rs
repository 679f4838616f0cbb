//! Direct sums and braided tensor products of forms, and the semi-ring
//! tables they induce on canonical classes.
//!
//! Table cells are indexed as (column, row) = (β on `m𝟙 ⊕ nP` with
//! parameter `a`, η on `p𝟙 ⊕ qP` with parameter `b`); cells below the
//! diagonal follow by commutativity. Integer coefficients such as `na` or
//! `pna` are read mod 2.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bform::BilinearForm;
use crate::classify::{all_classes, canonical_rep, classify, CanonicalClass, Family};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::matrix::Matrix;
use crate::verobj::{braiding, tensor};

pub fn direct_sum(beta: &BilinearForm, eta: &BilinearForm) -> Result<BilinearForm> {
    beta.direct_sum(eta)
}

fn same_field(beta: &BilinearForm, eta: &BilinearForm) -> Result<&'static FieldCtx> {
    if beta.field().k() != eta.field().k() {
        return Err(Error::FieldMismatch(beta.field().k(), eta.field().k()));
    }
    Ok(beta.field())
}

/// `(β×η)(u⊗r, u'⊗r') = β(u,u')·η(r,r') + β(u,t.u')·η(r,t.r')`, on the
/// standard basis of `U ⊗ R`.
pub fn tensor_product(beta: &BilinearForm, eta: &BilinearForm) -> Result<BilinearForm> {
    let f = same_field(beta, eta)?;
    let (u, r) = (beta.obj(), eta.obj());
    let gb = beta.gram();
    let ge = eta.gram();
    let kron = &gb.kron(ge) + &(gb * &u.t_matrix(f)).kron(&(ge * &r.t_matrix(f)));
    let d = tensor(&u, &r, f);
    BilinearForm::new(d.object, kron.congruence(&d.basis))
}

/// The same product computed as `(β ⊗ η) ∘ (1 ⊗ c_{R,U} ⊗ 1)` with the
/// braiding matrix itself.
pub fn tensor_product_via_braiding(beta: &BilinearForm, eta: &BilinearForm) -> Result<BilinearForm> {
    let f = same_field(beta, eta)?;
    let (u, r) = (beta.obj(), eta.obj());
    let (du, dr) = (u.dim(), r.dim());
    let c = braiding(&r, &u, f);
    let mut k = Matrix::zeros(f, du * dr, du * dr);
    for i in 0..du {
        for j in 0..dr {
            for i2 in 0..du {
                for j2 in 0..dr {
                    // c(r_j ⊗ u_i2) = Σ C[(a,b),(j,i2)] u_a ⊗ r_b
                    let col = j * du + i2;
                    let mut acc = f.zero();
                    for a in 0..du {
                        let ba = beta.gram()[(i, a)];
                        if ba.is_zero() {
                            continue;
                        }
                        for b in 0..dr {
                            let cv = c[(a * dr + b, col)];
                            if !cv.is_zero() {
                                acc += ba * cv * eta.gram()[(b, j2)];
                            }
                        }
                    }
                    k[(i * dr + j, i2 * dr + j2)] = acc;
                }
            }
        }
    }
    let d = tensor(&u, &r, f);
    BilinearForm::new(d.object, k.congruence(&d.basis))
}

pub fn sum_class(c1: &CanonicalClass, c2: &CanonicalClass, field: &'static FieldCtx) -> Result<CanonicalClass> {
    classify(&direct_sum(&canonical_rep(c1, field)?, &canonical_rep(c2, field)?)?)
}

pub fn product_class(c1: &CanonicalClass, c2: &CanonicalClass, field: &'static FieldCtx) -> Result<CanonicalClass> {
    classify(&tensor_product(&canonical_rep(c1, field)?, &canonical_rep(c2, field)?)?)
}

/// Column/row headings of the tables; the product table splits off `E(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TableFamily {
    A,
    B,
    C,
    D,
    E1,
    E,
    F,
}

impl TableFamily {
    pub const SUM: [TableFamily; 6] = [TableFamily::A, TableFamily::B, TableFamily::C, TableFamily::D, TableFamily::E, TableFamily::F];
    pub const PRODUCT: [TableFamily; 7] =
        [TableFamily::A, TableFamily::B, TableFamily::C, TableFamily::D, TableFamily::E1, TableFamily::E, TableFamily::F];

    fn of(c: &CanonicalClass, split_e1: bool) -> TableFamily {
        match c.family {
            Family::A => TableFamily::A,
            Family::B => TableFamily::B,
            Family::C => TableFamily::C,
            Family::D => TableFamily::D,
            Family::E if split_e1 && c.param.is_some_and(|p| p.is_one()) => TableFamily::E1,
            Family::E => TableFamily::E,
            Family::F => TableFamily::F,
        }
    }

    pub fn heading(self, param: &str) -> String {
        match self {
            TableFamily::E1 => "E(1)".into(),
            TableFamily::E => format!("E({param})"),
            TableFamily::F => format!("F({param})"),
            other => format!("{other:?}"),
        }
    }
}

/// Orders a pair so that the row family does not exceed the column family.
fn orient<'a>(c1: &'a CanonicalClass, c2: &'a CanonicalClass, split_e1: bool) -> (&'a CanonicalClass, &'a CanonicalClass) {
    if TableFamily::of(c2, split_e1) <= TableFamily::of(c1, split_e1) {
        (c1, c2)
    } else {
        (c2, c1)
    }
}

fn build(family: Family, m: usize, n: usize, param: Option<FieldElem>) -> Result<CanonicalClass> {
    CanonicalClass::new(family, m, n, param).map_err(|e| Error::Inconsistent(format!("table rule produced an invalid class: {e}")))
}

/// The sum table rule applied to a pair of classes.
pub fn expected_sum(c1: &CanonicalClass, c2: &CanonicalClass) -> Result<CanonicalClass> {
    use TableFamily as T;
    let (beta, eta) = orient(c1, c2, false);
    let (m, n, p, q) = (beta.m, beta.n, eta.m, eta.n);
    let (sm, sn) = (m + p, n + q);
    let a = beta.param;
    let b = eta.param;
    let pa = || a.expect("column parameter");
    let pb = || b.expect("row parameter");
    let (family, param) = match (TableFamily::of(eta, false), TableFamily::of(beta, false)) {
        (T::A, T::A | T::C | T::D) => (Family::A, None),
        (T::A, T::B | T::E | T::F) | (T::B, _) => (Family::B, None),
        (T::C, T::C) => (Family::C, None),
        (T::C, T::D) | (T::D, T::D) => (Family::D, None),
        (T::C, T::E) => (Family::E, a),
        (T::C, T::F) | (T::D, T::F) => (Family::F, a),
        (T::D, T::E) => (Family::F, Some(pa().times(n))),
        (T::E, T::E) if a == b => (Family::E, a),
        (T::E, T::E) => (Family::F, Some(pa().times(n) + pb().times(q))),
        (T::E, T::F) => (Family::F, Some(pa() + pb().times(q))),
        (T::F, T::F) => (Family::F, Some(pa() + pb())),
        (r, c) => return Err(Error::Inconsistent(format!("no sum rule for row {r:?}, column {c:?}"))),
    };
    build(family, sm, sn, param)
}

/// The product table rule applied to a pair of classes.
pub fn expected_product(c1: &CanonicalClass, c2: &CanonicalClass, field: &'static FieldCtx) -> Result<CanonicalClass> {
    use TableFamily as T;
    let (beta, eta) = orient(c1, c2, true);
    let (m, n, p, q) = (beta.m, beta.n, eta.m, eta.n);
    let (pm, pn) = (m * p, 2 * n * q + m * q + n * p);
    let a = beta.param;
    let b = eta.param;
    let pa = || a.expect("column parameter");
    let one = || field.one();
    let zero = || Some(field.zero());
    let (family, param) = match (TableFamily::of(eta, true), TableFamily::of(beta, true)) {
        (T::A, T::A) => (Family::A, None),
        (T::A | T::B, T::B) => (Family::B, None),
        (T::A | T::B | T::C, T::C) | (T::C, _) | (T::E1, T::E1) => (Family::C, None),
        (T::A | T::D, T::D) => (Family::D, None),
        (T::A | T::B | T::D, T::E1) | (T::E1, T::E | T::F) => (Family::E, Some(one())),
        (T::A | T::D, T::E) => (Family::E, a),
        (T::A | T::B, T::F) => (Family::F, Some(pa().times(p))),
        (T::B, T::D) | (T::D, T::F) | (T::E, T::F) | (T::F, T::F) => (Family::F, zero()),
        (T::B, T::E) => (Family::F, Some(pa().times(p * n))),
        (T::E, T::E) if a == b => (Family::D, None),
        (T::E, T::E) => {
            let (a, b) = (pa(), b.expect("row parameter"));
            (Family::E, Some((a * b + one()) / (a + b)))
        }
        (r, c) => return Err(Error::Inconsistent(format!("no product rule for row {r:?}, column {c:?}"))),
    };
    build(family, pm, pn, param)
}

pub fn sum_rule_text(row: TableFamily, col: TableFamily) -> &'static str {
    use TableFamily as T;
    let (row, col) = if row <= col { (row, col) } else { (col, row) };
    match (row, col) {
        (T::A, T::A | T::C | T::D) => "A",
        (T::A, _) | (T::B, _) => "B",
        (T::C, T::C) => "C",
        (T::C, T::D) | (T::D, T::D) => "D",
        (T::C, T::E) => "E(a)",
        (T::C, T::F) | (T::D, T::F) => "F(a)",
        (T::D, T::E) => "F(na)",
        (T::E, T::E) => "a=b → E(a); a≠b → F(na+qb)",
        (T::E, T::F) => "F(a+qb)",
        (T::F, T::F) => "F(a+b)",
        _ => "",
    }
}

pub fn product_rule_text(row: TableFamily, col: TableFamily) -> &'static str {
    use TableFamily as T;
    let (row, col) = if row <= col { (row, col) } else { (col, row) };
    match (row, col) {
        (T::A, T::A) => "A",
        (T::A | T::B, T::B) => "B",
        (T::C, _) | (_, T::C) | (T::E1, T::E1) => "C",
        (T::A | T::D, T::D) => "D",
        (_, T::E1) | (T::E1, _) => "E(1)",
        (T::A | T::D, T::E) => "E(a)",
        (T::A | T::B, T::F) => "F(pa)",
        (T::B, T::E) => "F(pna)",
        (T::B, T::D) | (_, T::F) => "F(0)",
        (T::E, T::E) => "a=b → D; a≠b → E((ab+1)/(a+b))",
        _ => "",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub left: String,
    pub right: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub row: TableFamily,
    pub col: TableFamily,
    pub rule: String,
    pub instances: usize,
    /// Instances where nonzero input parameters produce the parameter 0 (for
    /// example an even coefficient in `na`, or `a + b` with `a = b`).
    pub collapsed_to_zero: usize,
    /// Distinct result families observed.
    pub outcomes: Vec<String>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributivityReport {
    pub triples: usize,
    pub agreeing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub k: u32,
    pub max_size: usize,
    pub max_product_dim: usize,
    pub sum: Vec<CellReport>,
    pub product: Vec<CellReport>,
    pub distributivity: DistributivityReport,
}

impl TableReport {
    pub fn mismatch_count(&self) -> usize {
        self.sum.iter().chain(&self.product).map(|c| c.mismatches.len()).sum()
    }

    fn cells(&self, product: bool) -> &[CellReport] {
        if product {
            &self.product
        } else {
            &self.sum
        }
    }

    pub fn to_markdown(&self, product: bool) -> String {
        let heads: &[TableFamily] = if product { &TableFamily::PRODUCT } else { &TableFamily::SUM };
        let cells = self.cells(product);
        let lookup = |r: TableFamily, c: TableFamily| cells.iter().find(|x| x.row == r && x.col == c);
        let mut s = String::new();
        let op = if product { "×" } else { "+" };
        let _ = writeln!(s, "# {} table over GF(2^{}), sizes ≤ {}\n", if product { "Product" } else { "Sum" }, self.k, self.max_size);
        let _ = write!(s, "| {op} |");
        for h in heads {
            let _ = write!(s, " {} |", h.heading("a"));
        }
        let _ = write!(s, "\n|---|");
        for _ in heads {
            let _ = write!(s, "---|");
        }
        s.push('\n');
        for &r in heads {
            let _ = write!(s, "| {} |", r.heading("b"));
            for &c in heads {
                match lookup(r, c) {
                    Some(cell) if r <= c => {
                        let status = if cell.mismatches.is_empty() { "✓" } else { "✗" };
                        let _ = write!(s, " {} {status} ({}) |", cell.rule, cell.instances);
                    }
                    _ => s.push_str("  |"),
                }
            }
            s.push('\n');
        }
        let notes: Vec<&CellReport> = cells.iter().filter(|c| c.collapsed_to_zero > 0).collect();
        if !notes.is_empty() {
            s.push_str("\nSmall-field coincidences:\n\n");
            for c in notes {
                let _ = writeln!(
                    s,
                    "- {} {op} {}: nonzero parameters collapse to 0 in {} of {} instances; observed {}",
                    c.row.heading("b"),
                    c.col.heading("a"),
                    c.collapsed_to_zero,
                    c.instances,
                    c.outcomes.join(", ")
                );
            }
        }
        let mism: Vec<&Mismatch> = cells.iter().flat_map(|c| &c.mismatches).collect();
        let _ = writeln!(s, "\nMismatches: {}", mism.len());
        for m in mism {
            let _ = writeln!(s, "- {} {op} {}: expected {}, computed {}", m.left, m.right, m.expected, m.computed);
        }
        if product {
            let _ = writeln!(
                s,
                "\nDistributivity β×(η⊕γ) ≅ β×η ⊕ β×γ held on {} of {} sampled triples.",
                self.distributivity.agreeing, self.distributivity.triples
            );
        }
        s
    }

    pub fn to_csv(&self, product: bool) -> String {
        let mut s = String::from("row,column,rule,instances,collapsed_to_zero,mismatches\n");
        for c in self.cells(product) {
            let _ = writeln!(
                s,
                "{},{},\"{}\",{},{},{}",
                c.row.heading("b"),
                c.col.heading("a"),
                c.rule,
                c.instances,
                c.collapsed_to_zero,
                c.mismatches.len()
            );
        }
        s
    }
}

fn new_cell(row: TableFamily, col: TableFamily, product: bool) -> CellReport {
    let rule = if product { product_rule_text(row, col) } else { sum_rule_text(row, col) };
    CellReport { row, col, rule: rule.into(), instances: 0, collapsed_to_zero: 0, outcomes: Vec::new(), mismatches: Vec::new() }
}

fn record(
    cells: &mut BTreeMap<(TableFamily, TableFamily), CellReport>,
    product: bool,
    c1: &CanonicalClass,
    c2: &CanonicalClass,
    expected: &CanonicalClass,
    computed: &CanonicalClass,
) {
    let (beta, eta) = orient(c1, c2, product);
    let key = (TableFamily::of(eta, product), TableFamily::of(beta, product));
    let cell = cells.entry(key).or_insert_with(|| new_cell(key.0, key.1, product));
    cell.instances += 1;
    let nonzero_input = [beta.param, eta.param].iter().flatten().any(|p| !p.is_zero());
    if nonzero_input && expected.param.is_some_and(|p| p.is_zero()) && !cell.rule.ends_with("(0)") {
        cell.collapsed_to_zero += 1;
    }
    let fam = format!("{}", expected.family);
    if !cell.outcomes.contains(&fam) {
        cell.outcomes.push(fam);
        cell.outcomes.sort();
    }
    if expected != computed {
        cell.mismatches.push(Mismatch { left: beta.label(), right: eta.label(), expected: expected.label(), computed: computed.label() });
    }
}

/// Every class with `m, n ≤ max_size`.
pub fn class_grid(field: &'static FieldCtx, max_size: usize) -> Vec<CanonicalClass> {
    (0..=max_size).flat_map(|m| (0..=max_size).flat_map(move |n| all_classes(m, n, field))).collect()
}

/// Checks the sum table on all pairs from the grid, one family-ordered
/// representative per unordered pair.
pub fn check_sum_table(field: &'static FieldCtx, grid: &[CanonicalClass]) -> Result<Vec<CellReport>> {
    let reps: Vec<BilinearForm> = grid.iter().map(|c| canonical_rep(c, field)).collect::<Result<_>>()?;
    let mut cells = BTreeMap::new();
    for (i, c1) in grid.iter().enumerate() {
        for (j, c2) in grid.iter().enumerate() {
            let (f1, f2) = (TableFamily::of(c1, false), TableFamily::of(c2, false));
            if f2 > f1 || (f1 == f2 && j < i) {
                continue;
            }
            let expected = expected_sum(c1, c2)?;
            let computed = classify(&direct_sum(&reps[i], &reps[j])?)?;
            record(&mut cells, false, c1, c2, &expected, &computed);
        }
    }
    Ok(cells.into_values().collect())
}

/// Checks the product table on grid pairs whose product has dimension at
/// most `max_dim`.
pub fn check_product_table(field: &'static FieldCtx, grid: &[CanonicalClass], max_dim: usize) -> Result<Vec<CellReport>> {
    let reps: Vec<BilinearForm> = grid.iter().map(|c| canonical_rep(c, field)).collect::<Result<_>>()?;
    let mut cells = BTreeMap::new();
    for (i, c1) in grid.iter().enumerate() {
        for (j, c2) in grid.iter().enumerate() {
            let (f1, f2) = (TableFamily::of(c1, true), TableFamily::of(c2, true));
            if f2 > f1 || (f1 == f2 && j < i) {
                continue;
            }
            if c1.object().dim() * c2.object().dim() > max_dim {
                continue;
            }
            let expected = expected_product(c1, c2, field)?;
            let computed = classify(&tensor_product(&reps[i], &reps[j])?)?;
            record(&mut cells, true, c1, c2, &expected, &computed);
        }
    }
    Ok(cells.into_values().collect())
}

fn distributivity(field: &'static FieldCtx, grid: &[CanonicalClass], max_dim: usize) -> Result<DistributivityReport> {
    let small: Vec<&CanonicalClass> = grid.iter().filter(|c| c.object().dim() <= 3).collect();
    let mut triples = 0;
    let mut agreeing = 0;
    for (i, a) in small.iter().enumerate() {
        for b in small.iter().skip(i % 3).step_by(3) {
            for c in small.iter().skip(i % 5).step_by(5) {
                if a.object().dim() * (b.object().dim() + c.object().dim()) > max_dim {
                    continue;
                }
                let ra = canonical_rep(a, field)?;
                let (rb, rc) = (canonical_rep(b, field)?, canonical_rep(c, field)?);
                let lhs = classify(&tensor_product(&ra, &direct_sum(&rb, &rc)?)?)?;
                let rhs = classify(&direct_sum(&tensor_product(&ra, &rb)?, &tensor_product(&ra, &rc)?)?)?;
                triples += 1;
                if lhs == rhs {
                    agreeing += 1;
                }
            }
        }
    }
    Ok(DistributivityReport { triples, agreeing })
}

/// Computes every table cell over the size grid and diffs it against the
/// transcribed rules.
pub fn emit_tables(field: &'static FieldCtx, max_size: usize, max_product_dim: usize) -> Result<TableReport> {
    if field.k() < 2 {
        return Err(Error::FieldTooSmall(field.k()));
    }
    let grid = class_grid(field, max_size);
    Ok(TableReport {
        k: field.k(),
        max_size,
        max_product_dim,
        sum: check_sum_table(field, &grid)?,
        product: check_product_table(field, &grid, max_product_dim)?,
        distributivity: distributivity(field, &grid, max_product_dim)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{form_invariant, good_pairs, GoodPairSpace};
    use crate::field::make_field;
    use crate::verobj::random_automorphism;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cls(s: &str, f: &'static FieldCtx) -> CanonicalClass {
        CanonicalClass::parse(s, f).unwrap()
    }

    #[test]
    fn sum_examples() {
        let f = make_field(2).unwrap();
        assert_eq!(sum_class(&cls("E[0,1](2)", f), &cls("E[0,1](3)", f), f).unwrap().label(), "F[0,2](1)");
        assert_eq!(expected_sum(&cls("E[0,1](2)", f), &cls("E[0,1](3)", f)).unwrap().label(), "F[0,2](1)");
        let d = cls("D[0,2]", f);
        let e = cls("E[0,3](2)", f);
        assert_eq!(sum_class(&d, &e, f).unwrap(), expected_sum(&d, &e).unwrap());
        assert_eq!(expected_sum(&d, &e).unwrap().label(), "F[0,5](2)");
        assert_eq!(sum_class(&cls("A[1,0]", f), &cls("C[2,2]", f), f).unwrap().label(), "A[3,2]");
        assert_eq!(sum_class(&cls("A[1,0]", f), &cls("E[0,1](2)", f), f).unwrap().label(), "B[1,1]");
    }

    #[test]
    fn product_examples() {
        let f = make_field(2).unwrap();
        assert_eq!(product_class(&cls("E[0,1](2)", f), &cls("E[0,1](3)", f), f).unwrap().label(), "E[0,2](0)");
        assert_eq!(product_class(&cls("E[0,1](2)", f), &cls("E[0,1](2)", f), f).unwrap().label(), "D[0,2]");
        assert_eq!(product_class(&cls("B[1,1]", f), &cls("D[0,2]", f), f).unwrap().label(), "F[0,6](0)");
        for c in class_grid(f, 2) {
            assert_eq!(product_class(&cls("A[1,0]", f), &c, f).unwrap(), c);
            assert_eq!(product_class(&cls("C[2,0]", f), &c, f).unwrap().family, Family::C);
        }
    }

    #[test]
    fn unit_product_is_identity_up_to_congruence() {
        let f = make_field(3).unwrap();
        let unit = BilinearForm::from_rows(f, crate::verobj::VerObject::UNIT, &[vec![1]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in class_grid(f, 3) {
            let rep = canonical_rep(&c, f).unwrap();
            let moved = rep.pullback(&random_automorphism(&rep.obj(), f, &mut rng)).unwrap();
            assert_eq!(tensor_product(&unit, &moved).unwrap(), moved);
        }
    }

    #[test]
    fn braiding_path_agrees() {
        let f = make_field(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let grid = class_grid(f, 2);
        for a in &grid {
            for b in grid.iter().step_by(3) {
                let ra = canonical_rep(a, f).unwrap();
                let rb = canonical_rep(b, f).unwrap();
                let ra = ra.pullback(&random_automorphism(&ra.obj(), f, &mut rng)).unwrap();
                assert_eq!(tensor_product(&ra, &rb).unwrap(), tensor_product_via_braiding(&ra, &rb).unwrap());
            }
        }
    }

    #[test]
    fn product_evaluation_law() {
        // (β×η)(u⊗r, t(u⊗r)) = β(u,t.u)η(r,r) + β(u,u)η(r,t.r) on pure tensors.
        let f = make_field(3).unwrap();
        let beta = canonical_rep(&cls("B[1,1]", f), f).unwrap();
        let eta = canonical_rep(&cls("E[0,1](5)", f), f).unwrap();
        let (u, r) = (beta.obj(), eta.obj());
        let t_ur = crate::verobj::RawTModule::from_object(&u, f).tensor(&crate::verobj::RawTModule::from_object(&r, f));
        let gb = beta.gram();
        let ge = eta.gram();
        let kron = &gb.kron(ge) + &(gb * &u.t_matrix(f)).kron(&(ge * &r.t_matrix(f)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        use rand::Rng;
        for _ in 0..50 {
            let uv: Vec<FieldElem> = (0..u.dim()).map(|_| f.elem_masked(rng.gen_range(0..8))).collect();
            let rv: Vec<FieldElem> = (0..r.dim()).map(|_| f.elem_masked(rng.gen_range(0..8))).collect();
            let ur: Vec<FieldElem> = uv.iter().flat_map(|&a| rv.iter().map(move |&b| a * b)).collect();
            let tur = t_ur.t().mul_vec(&ur);
            let lhs = kron.bilinear(&ur, &tur);
            let rhs = beta.eval(&uv, &u.apply_t(&uv)) * eta.eval(&rv, &rv) + beta.eval(&uv, &uv) * eta.eval(&rv, &r.apply_t(&rv));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn commutativity_and_properties() {
        let f = make_field(2).unwrap();
        let grid = class_grid(f, 2);
        for a in &grid {
            for b in &grid {
                let (ra, rb) = (canonical_rep(a, f).unwrap(), canonical_rep(b, f).unwrap());
                let s = direct_sum(&ra, &rb).unwrap();
                let p = tensor_product(&ra, &rb).unwrap();
                assert!(s.is_nondegenerate() && p.is_nondegenerate());
                assert!(p.is_symmetric());
                assert_eq!(classify(&p).unwrap(), product_class(b, a, f).unwrap());
                assert_eq!(good_pairs(&s).unwrap(), good_pairs(&ra).unwrap().intersect(&good_pairs(&rb).unwrap()));
                assert_eq!(s.is_alternating(), ra.is_alternating() && rb.is_alternating());
                assert_eq!(p.is_alternating(), ra.is_alternating() || rb.is_alternating());
                if ra.is_alternating() && rb.is_alternating() {
                    assert_eq!(form_invariant(&s).unwrap(), form_invariant(&ra).unwrap() + form_invariant(&rb).unwrap());
                }
                if let (GoodPairSpace::Line(x), GoodPairSpace::Line(y)) = (good_pairs(&ra).unwrap(), good_pairs(&rb).unwrap()) {
                    // multiples of (k₁k₂ + l₁l₂, k₁l₂ + l₁k₂) with (k,l) = (x,1), (y,1)
                    let (k, l) = (x * y + f.one(), x + y);
                    assert!(good_pairs(&p).unwrap().contains(k, l));
                }
            }
        }
    }

    #[test]
    fn small_tables_clean() {
        let f = make_field(2).unwrap();
        let rep = emit_tables(f, 2, 16).unwrap();
        assert_eq!(rep.mismatch_count(), 0, "{}", rep.to_markdown(false));
        assert_eq!(rep.sum.len(), 21);
        assert_eq!(rep.product.len(), 28);
        assert_eq!(rep.distributivity.agreeing, rep.distributivity.triples);
        let md = rep.to_markdown(true);
        assert!(md.contains("Mismatches: 0"));
        assert!(rep.to_csv(false).lines().count() == 22);
    }
}
