use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, CliffordError};
use crate::matrix::Matrix;
use crate::polymatrix::PolyMatrix;
use crate::scalar::CyclotomicScalar as Scalar;

/// Where a representation came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Constructed,
    UserSupplied,
    SplitOutput,
    DirectSum,
    Transformed,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Constructed => "constructed",
            Provenance::UserSupplied => "user-supplied",
            Provenance::SplitOutput => "split-output",
            Provenance::DirectSum => "direct-sum",
            Provenance::Transformed => "transformed",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Provenance {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "constructed" => Provenance::Constructed,
            "user-supplied" => Provenance::UserSupplied,
            "split-output" => Provenance::SplitOutput,
            "direct-sum" => Provenance::DirectSum,
            "transformed" => Provenance::Transformed,
            other => return Err(AlgebraError::Parse(format!("unknown provenance '{other}'"))),
        })
    }
}

/// Square matrices A₁, …, Aₙ of a common size m over Q(ζ_N), standing for
/// yᵢ ↦ Aᵢ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    matrices: Vec<Matrix>,
    provenance: Provenance,
}

impl Representation {
    pub fn new(matrices: Vec<Matrix>, provenance: Provenance) -> Result<Self, CliffordError> {
        let first = matrices
            .first()
            .ok_or_else(|| CliffordError::ShapeMismatch("a representation needs at least one matrix".into()))?;
        let (m, conductor) = (first.rows(), first.conductor());
        if m == 0 {
            return Err(CliffordError::ShapeMismatch("matrices must be nonempty".into()));
        }
        for a in &matrices {
            if !a.is_square() || a.rows() != m {
                return Err(CliffordError::ShapeMismatch(format!(
                    "expected {m}x{m} matrices, found {}x{}",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.conductor() != conductor {
                return Err(AlgebraError::ConductorMismatch { left: conductor, right: a.conductor() }.into());
            }
        }
        Ok(Representation { matrices, provenance })
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn nvars(&self) -> usize {
        self.matrices.len()
    }

    pub fn conductor(&self) -> u32 {
        self.matrices[0].conductor()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn pencil(&self) -> PolyMatrix {
        PolyMatrix::pencil(&self.matrices).expect("representation matrices are compatible")
    }

    /// θ Aᵢ θ⁻¹ for every i.
    pub fn conjugate(&self, theta: &Matrix) -> Result<Representation, CliffordError> {
        let inv = theta.inverse().ok_or(CliffordError::SingularMatrix)?;
        if theta.rows() != self.dim() {
            return Err(CliffordError::ShapeMismatch("conjugating matrix has the wrong size".into()));
        }
        let matrices = self.matrices.iter().map(|a| &(theta * a) * &inv).collect();
        Representation::new(matrices, Provenance::Transformed)
    }

    pub fn embed(&self, conductor: u32) -> Result<Representation, CliffordError> {
        let matrices = self.matrices.iter().map(|a| a.embed(conductor)).collect::<Result<_, _>>()?;
        Representation::new(matrices, self.provenance)
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(Matrix::is_zero)
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            m: self.dim(),
            n: self.nvars(),
            conductor: self.conductor(),
            matrices: self.matrices.iter().map(Matrix::to_string_rows).collect(),
            provenance: self.provenance.as_str().to_string(),
        }
    }

    pub fn from_json(json: &RepresentationJson) -> Result<Representation, CliffordError> {
        if json.matrices.len() != json.n {
            return Err(CliffordError::ShapeMismatch(format!(
                "n = {} but {} matrices given",
                json.n,
                json.matrices.len()
            )));
        }
        let mut matrices = Vec::with_capacity(json.n);
        for rows in &json.matrices {
            if rows.len() != json.m || rows.iter().any(|r| r.len() != json.m) {
                return Err(CliffordError::ShapeMismatch(format!("matrices must be {0}x{0}", json.m)));
            }
            let parsed: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| s.parse::<Scalar>().and_then(|c| c.embed(json.conductor)))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            matrices.push(Matrix::from_rows(parsed, json.conductor)?);
        }
        let provenance = json.provenance.parse().unwrap_or(Provenance::UserSupplied);
        Representation::new(matrices, provenance)
    }
}

/// Wire form of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub conductor: u32,
    pub matrices: Vec<Vec<Vec<String>>>,
    #[serde(default = "default_provenance")]
    pub provenance: String,
}

fn default_provenance() -> String {
    Provenance::UserSupplied.as_str().to_string()
}
