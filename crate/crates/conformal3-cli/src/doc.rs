//! On-disk document formats: subalgebra documents (JSON) and point-cloud
//! exports (CSV or JSON).

use nalgebra::{Matrix5, Vector3};
use serde::{Deserialize, Serialize};

use conformal3::euclid::ConfAlgElement;
use conformal3::lorentz::LorentzAlgElement;
use conformal3::orbit::{CloudData, OrbitPoint, PointCloud};
use conformal3::subalgebra::{ModelSubalgebra, Subalgebra};

/// A subalgebra as a human-writable JSON document.
///
/// ```json
/// { "model": "euclid",
///   "elements": [ { "a": 1.0, "rot": [1, 0, 0], "trans": [0, 0, 0] },
///                 { "a": 0.0, "rot": [0, 0, 0], "trans": [0, 0, 1] } ] }
/// ```
///
/// Euclidean elements list the homothety coefficient `a`, the coefficients
/// of the rotation generators `X, Y, Z`, and the translation generator.
/// Lorentz elements carry a 5x5 matrix as 25 row-major numbers.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum SubalgebraDocument {
    Euclid { elements: Vec<EuclidElementDoc> },
    Lorentz { elements: Vec<LorentzElementDoc> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EuclidElementDoc {
    /// Homothety coefficient.
    pub a: f64,
    /// Coefficients of the rotation generators `X, Y, Z`.
    pub rot: [f64; 3],
    /// Translation generator.
    pub trans: [f64; 3],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzElementDoc {
    /// 25 row-major entries of a matrix in the Lorentz algebra.
    pub matrix: Vec<f64>,
}

/// Document-level failures: empty documents, bad matrix shapes, matrices
/// outside the Lorentz algebra. All of these are parse errors (exit 1).
#[derive(Debug, PartialEq)]
pub enum DocError {
    Empty,
    BadMatrixLength(usize),
    NotInLorentzAlgebra(f64),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Empty => write!(f, "document contains no elements"),
            DocError::BadMatrixLength(n) => {
                write!(f, "lorentz element must have 25 entries, got {n}")
            }
            DocError::NotInLorentzAlgebra(d) => {
                write!(f, "matrix is not in the Lorentz algebra (defect {d:.3e})")
            }
        }
    }
}

impl SubalgebraDocument {
    /// Converts the document into a runtime subalgebra, validating type
    /// invariants (shape and q-skewness) but not bracket closure.
    pub fn to_subalgebra(&self, eps: f64) -> Result<ModelSubalgebra, DocError> {
        match self {
            SubalgebraDocument::Euclid { elements } => {
                if elements.is_empty() {
                    return Err(DocError::Empty);
                }
                let basis = elements
                    .iter()
                    .map(|e| {
                        ConfAlgElement::new(
                            e.a,
                            Vector3::from(e.rot),
                            Vector3::from(e.trans),
                        )
                    })
                    .collect();
                Ok(ModelSubalgebra::Euclid(Subalgebra::new(basis)))
            }
            SubalgebraDocument::Lorentz { elements } => {
                if elements.is_empty() {
                    return Err(DocError::Empty);
                }
                let mut basis = Vec::with_capacity(elements.len());
                for e in elements {
                    if e.matrix.len() != 25 {
                        return Err(DocError::BadMatrixLength(e.matrix.len()));
                    }
                    let m = Matrix5::from_row_slice(&e.matrix);
                    let elt = LorentzAlgElement::try_new(m, eps).map_err(|_| {
                        let j = conformal3::lorentz::metric();
                        DocError::NotInLorentzAlgebra((m.transpose() * j + j * m).norm())
                    })?;
                    basis.push(elt);
                }
                Ok(ModelSubalgebra::Lorentz(Subalgebra::new(basis)))
            }
        }
    }

    /// Builds a document from a runtime subalgebra.
    #[cfg(test)]
    pub fn from_subalgebra(alg: &ModelSubalgebra) -> SubalgebraDocument {
        match alg {
            ModelSubalgebra::Euclid(s) => SubalgebraDocument::Euclid {
                elements: s
                    .basis()
                    .iter()
                    .map(|b| EuclidElementDoc {
                        a: b.scalar,
                        rot: b.rot_coeffs().into(),
                        trans: b.translation.into(),
                    })
                    .collect(),
            },
            ModelSubalgebra::Lorentz(s) => SubalgebraDocument::Lorentz {
                elements: s
                    .basis()
                    .iter()
                    .map(|b| LorentzElementDoc {
                        matrix: b.matrix().transpose().as_slice().to_vec(),
                    })
                    .collect(),
            },
        }
    }
}

fn format_point(p: &OrbitPoint) -> String {
    match p {
        OrbitPoint::Euclid(v) => format!("{},{},{}", v[0], v[1], v[2]),
        OrbitPoint::Lorentz(s) => {
            let n = s.coords();
            format!("{},{},{},{},{}", n[0], n[1], n[2], n[3], n[4])
        }
    }
}

/// CSV rendering of a point cloud: a comment header carrying the label,
/// base point and seed, a column-name row, then one row per point.
pub fn cloud_to_csv(cloud: &PointCloud) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# label={} base={} seed={}\n",
        cloud.label,
        format_point(&cloud.base),
        cloud.seed
    ));
    match &cloud.points {
        CloudData::Euclid(pts) => {
            out.push_str("x,y,z\n");
            for p in pts {
                out.push_str(&format!("{},{},{}\n", p[0], p[1], p[2]));
            }
        }
        CloudData::Lorentz(pts) => {
            out.push_str("n1,n2,n3,n4,n5\n");
            for p in pts {
                out.push_str(&format!("{},{},{},{},{}\n", p[0], p[1], p[2], p[3], p[4]));
            }
        }
    }
    out
}

#[derive(Serialize)]
struct CloudJson<'a> {
    label: &'a str,
    model: &'a str,
    base: Vec<f64>,
    seed: u64,
    points: Vec<Vec<f64>>,
}

/// JSON rendering of a point cloud.
pub fn cloud_to_json(cloud: &PointCloud) -> String {
    let (model, base, points) = match &cloud.points {
        CloudData::Euclid(pts) => {
            let base = match &cloud.base {
                OrbitPoint::Euclid(v) => v.as_slice().to_vec(),
                OrbitPoint::Lorentz(s) => s.coords().as_slice().to_vec(),
            };
            (
                "euclid",
                base,
                pts.iter().map(|p| p.as_slice().to_vec()).collect(),
            )
        }
        CloudData::Lorentz(pts) => {
            let base = match &cloud.base {
                OrbitPoint::Euclid(v) => v.as_slice().to_vec(),
                OrbitPoint::Lorentz(s) => s.coords().as_slice().to_vec(),
            };
            (
                "lorentz",
                base,
                pts.iter().map(|p| p.as_slice().to_vec()).collect(),
            )
        }
    };
    serde_json::to_string_pretty(&CloudJson {
        label: &cloud.label,
        model,
        base,
        seed: cloud.seed,
        points,
    })
    .expect("cloud serialization")
}
