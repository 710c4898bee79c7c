//! JSON wire formats: matrices as separate real/imaginary row-major grids,
//! states tagged `"kind": "density"`, and (U, p) / (H, a) pairs for points
//! and tangents of the unfolded space.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{QigError, Result};
use crate::matcore::{CMatrix, Hermitian};
use crate::states::{DensityMatrix, ProbVector, TangentVector, UnfoldedPoint, UnfoldedTangent};

/// `{"dim": n, "re": [[..]], "im": [[..]]}`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_cmatrix(m: &CMatrix) -> Self {
        let n = m.dim();
        let grid = |f: fn(Complex<f64>) -> f64| {
            (0..n)
                .map(|i| (0..n).map(|j| f(m.get(i, j))).collect())
                .collect()
        };
        Self {
            dim: n,
            re: grid(|z| z.re),
            im: grid(|z| z.im),
        }
    }

    pub fn to_cmatrix(&self) -> Result<CMatrix> {
        let n = self.dim;
        let shape_ok = |g: &Vec<Vec<f64>>| g.len() == n && g.iter().all(|row| row.len() == n);
        if n == 0 || !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(QigError::Json(format!(
                "matrix grids are not {n}x{n} as declared"
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(Complex::new(self.re[i][j], self.im[i][j]));
            }
        }
        CMatrix::new(n, entries)
    }
}

/// Matrix schema plus `"kind": "density"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub kind: String,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

impl StateJson {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self {
            kind: "density".into(),
            matrix: MatrixJson::from_cmatrix(rho.matrix()),
        }
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        if self.kind != "density" {
            return Err(QigError::Json(format!(
                "expected kind \"density\", got \"{}\"",
                self.kind
            )));
        }
        DensityMatrix::from_matrix(self.matrix.to_cmatrix()?)
    }
}

/// `{"U": matrix, "p": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnfoldedPointJson {
    #[serde(rename = "U")]
    pub u: MatrixJson,
    pub p: Vec<f64>,
}

impl UnfoldedPointJson {
    pub fn from_point(x: &UnfoldedPoint) -> Self {
        Self {
            u: MatrixJson::from_cmatrix(x.unitary()),
            p: x.probabilities().as_slice().to_vec(),
        }
    }

    pub fn to_point(&self) -> Result<UnfoldedPoint> {
        UnfoldedPoint::new(self.u.to_cmatrix()?, ProbVector::new(self.p.clone())?)
    }
}

/// `{"H": matrix, "a": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnfoldedTangentJson {
    #[serde(rename = "H")]
    pub h: MatrixJson,
    pub a: Vec<f64>,
}

impl UnfoldedTangentJson {
    pub fn from_tangent(t: &UnfoldedTangent) -> Self {
        Self {
            h: MatrixJson::from_cmatrix(t.generator().matrix()),
            a: t.simplex().to_vec(),
        }
    }

    pub fn to_tangent(&self) -> Result<UnfoldedTangent> {
        UnfoldedTangent::new(Hermitian::new(self.h.to_cmatrix()?)?, self.a.clone())
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| QigError::Json(e.to_string()))
}

pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    parse::<StateJson>(text)?.to_state()
}

pub fn parse_tangent_vector(text: &str) -> Result<TangentVector> {
    let m: MatrixJson = parse(text)?;
    TangentVector::new(Hermitian::new(m.to_cmatrix()?)?)
}

pub fn parse_unfolded_point(text: &str) -> Result<UnfoldedPoint> {
    parse::<UnfoldedPointJson>(text)?.to_point()
}

pub fn parse_unfolded_tangent(text: &str) -> Result<UnfoldedTangent> {
    parse::<UnfoldedTangentJson>(text)?.to_tangent()
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string_pretty(&StateJson::from_state(rho)).expect("state serializes")
}

pub fn tangent_vector_to_json(v: &TangentVector) -> String {
    serde_json::to_string_pretty(&MatrixJson::from_cmatrix(v.matrix())).expect("matrix serializes")
}

pub fn unfolded_point_to_json(x: &UnfoldedPoint) -> String {
    serde_json::to_string_pretty(&UnfoldedPointJson::from_point(x)).expect("point serializes")
}

pub fn unfolded_tangent_to_json(t: &UnfoldedTangent) -> String {
    serde_json::to_string_pretty(&UnfoldedTangentJson::from_tangent(t)).expect("tangent serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{random_density, unfold};

    #[test]
    fn state_round_trip() {
        let rho = random_density(3, 5);
        let text = state_to_json(&rho);
        let back = parse_state(&text).unwrap();
        assert!(back.hermitian().max_abs_diff(rho.hermitian()) < 1e-15);
    }

    #[test]
    fn unfolded_point_round_trip() {
        let rho = random_density(3, 6);
        let x = unfold(&rho).unwrap();
        let back = parse_unfolded_point(&unfolded_point_to_json(&x)).unwrap();
        assert!(back.unitary().max_abs_diff(x.unitary()) < 1e-15);
    }

    #[test]
    fn malformed_and_invalid_inputs_are_rejected() {
        assert!(parse_state("{not json").is_err());
        assert!(
            parse_state("{\"kind\":\"density\",\"dim\":2,\"re\":[[1.0]],\"im\":[[0.0]]}").is_err()
        );
        // wrong tag
        let rho = random_density(2, 7);
        let text = state_to_json(&rho).replace("density", "tangent");
        assert!(parse_state(&text).is_err());
        // non-Hermitian tangent
        let bad = "{\"dim\":2,\"re\":[[0.0,1.0],[0.0,0.0]],\"im\":[[0.0,0.0],[0.0,0.0]]}";
        assert!(parse_tangent_vector(bad).is_err());
        // trace not one
        let not_state =
            "{\"kind\":\"density\",\"dim\":2,\"re\":[[0.9,0.0],[0.0,0.9]],\"im\":[[0.0,0.0],[0.0,0.0]]}";
        assert!(parse_state(not_state).is_err());
    }
}
