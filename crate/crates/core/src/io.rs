//! JSON forms of fields and presentations.
//!
//! A field is `{"p": 3, "ext_min_poly": [v, u]}` for `μ² = uμ + v`; an algebra file
//! adds `"class"` and `"adjoint"`, where `adjoint[0]` is the pair of degree 2.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{ExtElem, ExtField};
use crate::maxclass::{validate, MaxClassPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescriptor {
    pub p: u32,
    pub ext_min_poly: [u32; 2],
}

impl FieldDescriptor {
    pub fn of(field: &ExtField) -> Self {
        let (u, v) = field.relation();
        FieldDescriptor {
            p: field.p(),
            ext_min_poly: [v, u],
        }
    }

    /// Rejects unreduced coefficients so that saving gives back the same text.
    pub fn field(&self) -> Result<ExtField> {
        let [v, u] = self.ext_min_poly;
        if self.p >= 2 && (u >= self.p || v >= self.p) {
            return Err(Error::Schema(format!("ext_min_poly must be reduced mod {}", self.p)));
        }
        ExtField::new(self.p, u, v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub p: u32,
    pub ext_min_poly: [u32; 2],
    pub class: usize,
    pub adjoint: Vec<(ExtElem, ExtElem)>,
}

impl AlgebraFile {
    pub fn of(pres: &MaxClassPresentation) -> Self {
        let d = FieldDescriptor::of(pres.field());
        AlgebraFile {
            p: d.p,
            ext_min_poly: d.ext_min_poly,
            class: pres.class(),
            adjoint: pres.adjoint().to_vec(),
        }
    }

    /// Schema checks only; see [`load_str`] for the Jacobi check.
    pub fn presentation(&self) -> Result<MaxClassPresentation> {
        let field = FieldDescriptor {
            p: self.p,
            ext_min_poly: self.ext_min_poly,
        }
        .field()?;
        MaxClassPresentation::new(field, self.class, self.adjoint.clone())
    }
}

/// Parses and validates an algebra file.
pub fn load_str(text: &str) -> Result<MaxClassPresentation> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let pres = file.presentation()?;
    let report = validate(&pres)?;
    if let Some(failure) = report.first_failure {
        return Err(Error::NotLie(failure.to_string()));
    }
    Ok(pres)
}

/// One line of compact JSON plus a newline.
pub fn to_string(pres: &MaxClassPresentation) -> String {
    let mut s = serde_json::to_string(&AlgebraFile::of(pres)).expect("plain data");
    s.push('\n');
    s
}

pub fn load_path(path: &Path) -> Result<MaxClassPresentation> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    load_str(&text)
}

pub fn save_path(pres: &MaxClassPresentation, path: &Path) -> Result<()> {
    std::fs::write(path, to_string(pres)).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}
