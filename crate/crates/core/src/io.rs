//! JSON file formats and lattice names understood by the command line.
//!
//! Matrices are row-major lists of rows. Setup and group files use the basis
//! orders documented in [`crate::enriques`].

use serde::{Deserialize, Serialize};

use crate::criterion::{GroupMode, GroupSpec};
use crate::enriques::{build_k3n_setup, build_kumn_setup, EnriquesSetup, WallPredicate};
use crate::error::{Error, Result};
use crate::group::{MatrixGroup, DEFAULT_GROUP_CAP};
use crate::isometry::Isometry;
use crate::lattice::{IntegerLattice, Signature};
use crate::matrix::IntMatrix;

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn matrix(rows: &[Vec<i64>]) -> Result<IntMatrix> {
    IntMatrix::from_rows(rows)
}

/// `{"rank": r, "gram": [[...]], "label": "..."}`; `rank` is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub gram: Vec<Vec<i64>>,
    #[serde(default)]
    pub label: String,
}

impl LatticeFile {
    pub fn from_lattice(l: &IntegerLattice) -> Self {
        LatticeFile { rank: Some(l.rank()), gram: l.gram().to_rows(), label: l.label().to_string() }
    }

    pub fn to_lattice(&self) -> Result<IntegerLattice> {
        if let Some(r) = self.rank {
            if r != self.gram.len() {
                return Err(Error::DimensionMismatch { expected: r, found: self.gram.len() });
            }
        }
        IntegerLattice::new(matrix(&self.gram)?, self.label.clone())
    }
}

pub fn parse_lattice(text: &str) -> Result<IntegerLattice> {
    parse::<LatticeFile>(text)?.to_lattice()
}

/// `{"lattice": {...}, "matrix": [[...]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryFile {
    pub lattice: LatticeFile,
    pub matrix: Vec<Vec<i64>>,
}

pub fn parse_isometry(text: &str) -> Result<Isometry> {
    let f: IsometryFile = parse(text)?;
    Isometry::new(&f.lattice.to_lattice()?, matrix(&f.matrix)?)
}

/// Named lattices: `U`, `E8`, `M`, `rank1:K`, `k3n-x:N`, `k3n-y:N`, `kumn-x:N`, `kumn-y:N:D`.
pub fn named_lattice(name: &str) -> Result<IntegerLattice> {
    let parts: Vec<&str> = name.split(':').collect();
    let int = |s: &str| s.parse::<i64>().map_err(|_| Error::Input(format!("bad integer '{s}' in lattice name")));
    match parts.as_slice() {
        ["U"] => Ok(IntegerLattice::hyperbolic_plane()),
        ["E8"] => Ok(IntegerLattice::e8_negative()),
        ["M"] => Ok(build_k3n_setup(3)?.m.expect("K3^[n] type carries M")),
        ["rank1", k] => IntegerLattice::rank_one(int(k)?),
        ["k3n-x", n] => Ok(build_k3n_setup(int(n)?)?.lambda_x),
        ["k3n-y", n] => Ok(build_k3n_setup(int(n)?)?.lambda_y),
        ["kumn-x", n] => {
            let n = int(n)?;
            let x = build_kumn_setup(n, 2).or_else(|_| build_kumn_setup(n, 3)).or_else(|_| build_kumn_setup(n, 4));
            Ok(x.map_err(|_| Error::BadIndex { n, d: 0 })?.lambda_x)
        }
        ["kumn-y", n, d] => Ok(build_kumn_setup(int(n)?, int(d)?)?.lambda_y),
        _ => Err(Error::Input(format!("unknown lattice name '{name}'"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WallsField {
    Named(String),
    Pairs(Vec<(i64, i64)>),
}

/// `{"family": "k3n"|"kumn", "n": N, "d": D?, "walls": "k3n"|"vacuous"|[[square, div], ...]?}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupFile {
    pub family: String,
    pub n: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walls: Option<WallsField>,
}

impl SetupFile {
    pub fn build(&self) -> Result<EnriquesSetup> {
        let setup = match self.family.as_str() {
            "k3n" => build_k3n_setup(self.n)?,
            "kumn" => {
                let d = self.d.ok_or_else(|| Error::Input("kumn setups need \"d\"".into()))?;
                build_kumn_setup(self.n, d)?
            }
            other => return Err(Error::Input(format!("unknown family '{other}'"))),
        };
        match &self.walls {
            None => Ok(setup),
            Some(WallsField::Named(s)) if s == "k3n" => setup.with_walls(WallPredicate::K3nWalls),
            Some(WallsField::Named(s)) if s == "vacuous" => setup.with_walls(WallPredicate::Vacuous),
            Some(WallsField::Named(s)) => Err(Error::Input(format!("unknown wall predicate '{s}'"))),
            Some(WallsField::Pairs(p)) => setup.with_walls(WallPredicate::UserSupplied(p.clone())),
        }
    }
}

pub fn parse_setup(text: &str) -> Result<EnriquesSetup> {
    parse::<SetupFile>(text)?.build()
}

/// `{"mode": "direct"|"gamma2m"|"lambday", "generators": [[[...]]], "cap": k}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub mode: String,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_GROUP_CAP
}

impl GroupFile {
    pub fn from_spec(spec: &GroupSpec) -> Self {
        let (mode, gens) = match &spec.mode {
            GroupMode::DirectOnLambdaX(g) => ("direct", g),
            GroupMode::FromGamma2M(g) => ("gamma2m", g),
            GroupMode::FromLambdaY(g) => ("lambday", g),
        };
        GroupFile { mode: mode.into(), generators: gens.iter().map(|m| m.to_rows()).collect(), cap: spec.cap }
    }

    pub fn to_spec(&self) -> Result<GroupSpec> {
        let gens = self.generators.iter().map(|g| matrix(g)).collect::<Result<Vec<_>>>()?;
        let mode = match self.mode.as_str() {
            "direct" => GroupMode::DirectOnLambdaX(gens),
            "gamma2m" => GroupMode::FromGamma2M(gens),
            "lambday" => GroupMode::FromLambdaY(gens),
            other => return Err(Error::Input(format!("unknown group mode '{other}'"))),
        };
        if self.cap == 0 {
            return Err(Error::Input("cap must be positive".into()));
        }
        Ok(GroupSpec { mode, cap: self.cap })
    }
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    parse::<GroupFile>(text)?.to_spec()
}

/// `{"lattice": label, "generators": [...], "cap": k}` for a group on a named lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGroupFile {
    pub lattice: String,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

impl MatrixGroupFile {
    pub fn to_group(&self) -> Result<MatrixGroup> {
        let l = named_lattice(&self.lattice)?;
        let gens = self
            .generators
            .iter()
            .map(|g| Isometry::new(&l, matrix(g)?))
            .collect::<Result<Vec<_>>>()?;
        MatrixGroup::generate(&l, &gens, self.cap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantReport {
    pub invariant_factors: Vec<i64>,
    pub order: i64,
    pub exponent: i64,
    /// Values of the discriminant form on the generators, modulo 2, as `"a/b"`.
    pub q_values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub label: String,
    pub rank: usize,
    pub signature: Signature,
    pub det: String,
    pub unimodular: bool,
    pub discriminant: DiscriminantReport,
}

pub fn lattice_report(l: &IntegerLattice) -> Result<LatticeReport> {
    let disc = l.discriminant_group()?;
    Ok(LatticeReport {
        label: l.label().to_string(),
        rank: l.rank(),
        signature: l.signature(),
        det: l.det().to_string(),
        unimodular: l.is_unimodular(),
        discriminant: DiscriminantReport {
            order: disc.order(),
            exponent: disc.exponent(),
            q_values: disc.q_values.iter().map(|q| q.to_string()).collect(),
            invariant_factors: disc.invariant_factors,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellReport {
    pub label: String,
    pub target: i64,
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: String,
    pub message: String,
    pub exit_code: i32,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport { error: e.kind().to_string(), message: e.to_string(), exit_code: e.exit_code() }
    }
}
