//! JSON documents for forms, quadratic forms and raw t-modules.

use serde::{Deserialize, Serialize};

use crate::bform::BilinearForm;
use crate::divided::QuadraticForm;
use crate::error::{Error, Result};
use crate::field::{make_field, FieldCtx};
use crate::matrix::Matrix;
use crate::verobj::{RawTModule, VerObject};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub k: u32,
}

impl FieldDoc {
    pub fn field(&self) -> Result<&'static FieldCtx> {
        make_field(self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDocument {
    pub field: FieldDoc,
    pub object: VerObject,
    pub gram: Vec<Vec<u32>>,
}

impl FormDocument {
    pub fn from_form(form: &BilinearForm) -> FormDocument {
        FormDocument { field: FieldDoc { k: form.field().k() }, object: form.obj(), gram: form.gram().to_rows() }
    }

    pub fn to_form(&self) -> Result<BilinearForm> {
        BilinearForm::from_rows(self.field.field()?, self.object, &self.gram)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadDocument {
    pub field: FieldDoc,
    pub object: VerObject,
    pub values: Vec<u32>,
}

impl QuadDocument {
    pub fn from_form(q: &QuadraticForm) -> QuadDocument {
        QuadDocument { field: FieldDoc { k: q.field().k() }, object: q.obj(), values: q.values().iter().map(|v| v.bits()).collect() }
    }

    pub fn to_form(&self) -> Result<QuadraticForm> {
        QuadraticForm::from_ints(self.field.field()?, self.object, &self.values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawModuleDocument {
    pub field: FieldDoc,
    pub dim: usize,
    pub t: Vec<Vec<u32>>,
}

impl RawModuleDocument {
    pub fn to_module(&self) -> Result<RawTModule> {
        let t = Matrix::from_rows(self.field.field()?, &self.t)?;
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::Dimension(format!("t is {}×{}, expected {}×{}", t.rows(), t.cols(), self.dim, self.dim)));
        }
        RawTModule::new(t)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_form(text: &str) -> Result<BilinearForm> {
    parse::<FormDocument>(text)?.to_form()
}

pub fn parse_quadratic(text: &str) -> Result<QuadraticForm> {
    parse::<QuadDocument>(text)?.to_form()
}

pub fn parse_raw_module(text: &str) -> Result<RawTModule> {
    parse::<RawModuleDocument>(text)?.to_module()
}

pub fn form_to_json(form: &BilinearForm) -> String {
    serde_json::to_string_pretty(&FormDocument::from_form(form)).expect("form documents serialize")
}

pub fn quadratic_to_json(q: &QuadraticForm) -> String {
    serde_json::to_string_pretty(&QuadDocument::from_form(q)).expect("quadratic documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_roundtrip() {
        let text = r#"{"field":{"k":2},"object":{"m":0,"n":1},"gram":[[2,1],[1,0]]}"#;
        let form = parse_form(text).unwrap();
        assert_eq!(form.obj(), VerObject::P);
        assert_eq!(parse_form(&form_to_json(&form)).unwrap(), form);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_form("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_form(r#"{"field":{"k":2},"object":{"m":0,"n":1},"gram":[[1,0],[0,1]]}"#), Err(Error::Incompatible)));
        assert!(matches!(parse_form(r#"{"field":{"k":2},"object":{"m":0,"n":1},"gram":[[7,1],[1,0]]}"#), Err(Error::ElementRange { .. })));
    }

    #[test]
    fn quadratic_and_raw() {
        let q = parse_quadratic(r#"{"field":{"k":2},"object":{"m":0,"n":1},"values":[1,0]}"#).unwrap();
        assert_eq!(parse_quadratic(&quadratic_to_json(&q)).unwrap(), q);
        let raw = parse_raw_module(r#"{"field":{"k":1},"dim":2,"t":[[0,0],[1,0]]}"#).unwrap();
        assert_eq!(raw.dim(), 2);
        assert!(matches!(parse_raw_module(r#"{"field":{"k":1},"dim":2,"t":[[1,0],[0,0]]}"#), Err(Error::NotNilpotent)));
    }
}
