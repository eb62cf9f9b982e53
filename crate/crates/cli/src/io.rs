use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use lagdegen::harness::{Instance, InstanceJson};
use lagdegen::json::{matrix_from_json, ring_from_json, IdealJson, MatrixJson, PolyJson, RingJson};
use lagdegen::pairs::PairData;
use lagdegen::pfaffian::AlternatingMatrix;
use lagdegen::resolution::{Symmetry, VirtualSheaf};
use lagdegen::ring::{Field, Matrix, PolyRing, Scalar};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
}

/// What a command produced: a JSON document, its text rendering and whether
/// every check it ran passed.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

impl Output {
    pub fn new(json: Value, text: String) -> Output {
        Output { json, text, pass: true }
    }

    pub fn with_pass(mut self, pass: bool) -> Output {
        self.pass = pass;
        self
    }

    pub fn render(&self, out: OutFormat) -> String {
        match out {
            OutFormat::Json => serde_json::to_string(&self.json).expect("JSON values serialize"),
            OutFormat::Text => self.text.trim_end().to_string(),
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let j: InstanceJson = read_json(path)?;
    Ok(Instance::from_json(&j)?)
}

pub fn read_alternating(path: &Path) -> Result<AlternatingMatrix<PolyRing>> {
    match read_instance(path)? {
        Instance::Alternating { matrix } => Ok(matrix),
        _ => bail!("{}: expected an alternating instance", path.display()),
    }
}

pub fn read_pair(path: &Path) -> Result<PairData> {
    match read_instance(path)? {
        Instance::LagrangianPair { pair } => Ok(pair),
        _ => bail!("{}: expected a lagrangian-pair instance", path.display()),
    }
}

pub fn read_split(path: &Path) -> Result<(Matrix<PolyRing>, Matrix<PolyRing>)> {
    match read_instance(path)? {
        Instance::SplitPair { psi, phi } => Ok((psi, phi)),
        _ => bail!("{}: expected a split-pair instance", path.display()),
    }
}

/// Input of the `ideal` subcommands.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealInput {
    pub ring: RingJson,
    pub ideal: IdealJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<IdealJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<PolyJson>,
}

/// A pair of Lagrangians `E`, `F` of a symplectic form `ω`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymplecticInput {
    pub ring: RingJson,
    pub omega: MatrixJson,
    pub e: MatrixJson,
    pub f: MatrixJson,
}

impl SymplecticInput {
    pub fn load(&self) -> Result<lagdegen::degeneracy::SymplecticPair> {
        let r = ring_from_json(&self.ring)?;
        Ok(lagdegen::degeneracy::SymplecticPair::new(
            matrix_from_json(&r, &self.omega)?,
            matrix_from_json(&r, &self.e)?,
            matrix_from_json(&r, &self.f)?,
        )?)
    }
}

/// A virtual sum of line bundles on `P^n` with a twist `ℓ` for the parity test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VirtualInput {
    pub n: u32,
    #[serde(default)]
    pub l: i64,
    #[serde(default = "default_kind")]
    pub kind: Symmetry,
    pub sheaf: VirtualSheaf,
}

fn default_kind() -> Symmetry {
    Symmetry::Symmetric
}

/// Comma separated coordinates such as `1,-2,3/4`.
pub fn parse_point(field: Field, nvars: usize, s: &str) -> Result<Vec<Scalar>> {
    let pt = s
        .split(',')
        .map(|c| field.parse(c.trim()))
        .collect::<lagdegen::Result<Vec<_>>>()?;
    if pt.len() != nvars {
        bail!("point has {} coordinates, the ring has {nvars} variables", pt.len());
    }
    Ok(pt)
}

/// Coefficient and twist pairs such as `10:0,-1:3`.
pub fn parse_terms(s: &str) -> Result<VirtualSheaf> {
    let terms = s
        .split(',')
        .map(|t| {
            let (c, d) = t.split_once(':').with_context(|| format!("term `{t}` is not coeff:twist"))?;
            Ok((c.trim().parse()?, d.trim().parse()?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VirtualSheaf { terms })
}
