//! Randomised consistency checks across the whole crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{all_classes, canonical_rep, canonicalize, classify};
use crate::divided::{a2_iso_check, gamma2, one_minus_c, Gamma2Basis};
use crate::error::Result;
use crate::field::make_field;
use crate::verobj::hopf::check_r_matrix_axioms;
use crate::verobj::{hexagons_hold, random_automorphism, RawTModule, VerObject};
use crate::witt::{expected_product, expected_sum, product_class, sum_class, tensor_product, tensor_product_via_braiding};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfCheckReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
}

impl SelfCheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, run: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    match run() {
        Ok((passed, detail)) => CheckResult { name: name.into(), passed, detail },
        Err(e) => CheckResult { name: name.into(), passed: false, detail: format!("error: {e}") },
    }
}

pub fn run_selfcheck(seed: u64, trials: usize) -> SelfCheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    checks.push(check("r-matrix axioms", || {
        let f = make_field(1)?;
        let r = check_r_matrix_axioms(f);
        Ok((r.all_hold(), format!("{r:?}")))
    }));

    checks.push(check("hexagons", || {
        let f = make_field(1)?;
        let objs = [VerObject::UNIT, VerObject::P, VerObject::new(1, 1)];
        let mut bad = 0;
        for x in &objs {
            for y in &objs {
                for z in &objs {
                    let (a, b) =
                        hexagons_hold(&RawTModule::from_object(x, f), &RawTModule::from_object(y, f), &RawTModule::from_object(z, f));
                    bad += usize::from(!(a && b));
                }
            }
        }
        Ok((bad == 0, format!("{bad} failing triples")))
    }));

    checks.push(check("divided powers", || {
        let f = make_field(1)?;
        let mut bad = Vec::new();
        for m in 0..=3 {
            for n in 0..=2 {
                let obj = VerObject::new(m, n);
                let basis = gamma2(&obj);
                let kernel = one_minus_c(&obj, f).kernel().cols();
                let a2 = a2_iso_check(&obj, f);
                if basis.dim() != Gamma2Basis::formula_dim(&obj) || basis.dim() != kernel || !a2.holds {
                    bad.push(format!("{m}𝟙+{n}P"));
                }
            }
        }
        let detail = if bad.is_empty() { "Γ² agrees on all objects up to 3𝟙 ⊕ 2P".into() } else { bad.join(", ") };
        Ok((bad.is_empty(), detail))
    }));

    checks.push(check("classification under congruence", || {
        let f = make_field(3)?;
        let mut runs = 0;
        for _ in 0..trials {
            let (m, n) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
            let classes = all_classes(m, n, f);
            if classes.is_empty() {
                continue;
            }
            let c = &classes[rng.gen_range(0..classes.len())];
            let rep = canonical_rep(c, f)?;
            let moved = rep.pullback(&random_automorphism(&rep.obj(), f, &mut rng))?;
            if classify(&moved)? != *c {
                return Ok((false, format!("{} misclassified", c.label())));
            }
            let (_, canon) = canonicalize(&moved)?;
            if canon != rep {
                return Ok((false, format!("{} canonicalized to a different gram", c.label())));
            }
            runs += 1;
        }
        Ok((true, format!("{runs} forms")))
    }));

    checks.push(check("semi-ring tables", || {
        let f = make_field(3)?;
        for _ in 0..trials {
            let pick = |rng: &mut ChaCha8Rng| loop {
                let (m, n) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                let classes = all_classes(m, n, f);
                if !classes.is_empty() {
                    return classes[rng.gen_range(0..classes.len())];
                }
            };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            if sum_class(&a, &b, f)? != expected_sum(&a, &b)? || product_class(&a, &b, f)? != expected_product(&a, &b, f)? {
                return Ok((false, format!("{} and {}", a.label(), b.label())));
            }
            let (ra, rb) = (canonical_rep(&a, f)?, canonical_rep(&b, f)?);
            if tensor_product(&ra, &rb)? != tensor_product_via_braiding(&ra, &rb)? {
                return Ok((false, format!("braiding path differs on {} and {}", a.label(), b.label())));
            }
        }
        Ok((true, format!("{trials} pairs")))
    }));

    SelfCheckReport { seed, trials, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selfcheck_passes() {
        let r = run_selfcheck(7, 20);
        assert!(r.all_passed(), "{r:#?}");
    }
}
