//! JSON descriptions of groups.

use serde::{Deserialize, Serialize};

use super::{PairElement, PairGroup, ProjectiveGroup};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `{"dim": 2|3, "projective": bool, "generators": [matrix, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub dim: usize,
    pub projective: bool,
    pub generators: Vec<Matrix>,
}

impl GroupSpec {
    pub fn from_group(g: &ProjectiveGroup) -> Self {
        GroupSpec { dim: g.dim(), projective: g.is_projective(), generators: g.generators().to_vec() }
    }

    pub fn build(&self) -> Result<ProjectiveGroup> {
        if !(2..=3).contains(&self.dim) {
            return Err(Error::DimensionMismatch(format!("dimension {} is not 2 or 3", self.dim)));
        }
        if self.generators.is_empty() {
            return Err(Error::Input("a group needs at least one generator".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.rows() != self.dim || g.cols() != self.dim {
                return Err(Error::DimensionMismatch(format!("generator {i} is not {0}x{0}", self.dim)));
            }
        }
        ProjectiveGroup::close(&self.generators, self.projective)
    }
}

/// `{"generators": [[a, b], …], "swap": [a, b] | null}`; the swap entry
/// stands for `(x, y) ↦ (a·y, b·x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairGroupSpec {
    pub generators: Vec<(Matrix, Matrix)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swap: Option<(Matrix, Matrix)>,
}

impl PairGroupSpec {
    pub fn elements(&self) -> Vec<PairElement> {
        let mut gens: Vec<PairElement> =
            self.generators.iter().map(|(a, b)| PairElement::new(a.clone(), b.clone())).collect();
        if let Some((a, b)) = &self.swap {
            gens.push(PairElement::swapping(a.clone(), b.clone()));
        }
        gens
    }

    pub fn build(&self) -> Result<PairGroup> {
        if self.generators.is_empty() && self.swap.is_none() {
            return Err(Error::Input("a pair group needs at least one generator".into()));
        }
        PairGroup::close(&self.elements())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_spec_roundtrip() {
        let json = r#"{"dim":2,"projective":true,"generators":[[[{"conductor":5,"coeffs":["0/1","1/1","0/1","0/1"]},{"conductor":1,"coeffs":["0/1"]}],[{"conductor":1,"coeffs":["0/1"]},{"conductor":1,"coeffs":["1/1"]}]]]}"#;
        let spec: GroupSpec = serde_json::from_str(json).unwrap();
        let g = spec.build().unwrap();
        assert_eq!(g.order(), 5);
        let back: GroupSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn wrong_shapes_are_input_errors() {
        let json = r#"{"dim":4,"projective":true,"generators":[]}"#;
        let spec: GroupSpec = serde_json::from_str(json).unwrap();
        assert!(spec.build().unwrap_err().is_input_error());
        assert!(serde_json::from_str::<GroupSpec>(r#"{"dim":2,"projective":true,"generators":[],"x":1}"#).is_err());
    }
}
