//! Input files and built-in fixtures.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::geometry::{LatticePoint, LatticePolytope, LatticeSimplex};
use crate::unimodular::{CoverKind, SimplicialCover};

/// `{"dim": 3, "vertices": [[0,0,0], ...], "name": "..."}`
///
/// Coordinates must be JSON integers; `1.0` is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let f: PolytopeFile = serde_json::from_str(text).map_err(InputError::json)?;
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), InputError> {
        if self.dim == 0 {
            return Err(InputError::new("dim must be positive"));
        }
        if self.vertices.is_empty() {
            return Err(InputError::new("at least one vertex is required"));
        }
        check_lengths(self.dim, self.vertices.iter())
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        self.vertices.iter().cloned().map(LatticePoint::new).collect()
    }

    pub fn polytope(&self) -> Result<LatticePolytope, InputError> {
        LatticePolytope::new(self.points()).map_err(InputError::from)
    }

    /// The listed vertices as a simplex, in file order.
    pub fn simplex(&self) -> Result<LatticeSimplex, InputError> {
        LatticeSimplex::new(self.points()).map_err(InputError::from)
    }
}

/// `{"dim": 2, "kind": "triangulation", "cells": [[[0,0],[1,0],[0,1]], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub dim: usize,
    pub kind: CoverKind,
    pub cells: Vec<Vec<Vec<i64>>>,
}

impl CoverFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let f: CoverFile = serde_json::from_str(text).map_err(InputError::json)?;
        if f.dim == 0 {
            return Err(InputError::new("dim must be positive"));
        }
        check_lengths(f.dim, f.cells.iter().flatten())?;
        Ok(f)
    }

    pub fn from_cover(c: &SimplicialCover) -> Self {
        Self {
            dim: c.target.dim(),
            kind: c.kind,
            cells: c
                .cells
                .iter()
                .map(|s| s.vertices().iter().map(|v| v.coords().to_vec()).collect())
                .collect(),
        }
    }

    pub fn simplices(&self) -> Result<Vec<LatticeSimplex>, InputError> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                let pts = cell.iter().cloned().map(LatticePoint::new).collect();
                LatticeSimplex::new(pts).map_err(|e| InputError::new(format!("cell {i}: {e}")))
            })
            .collect()
    }

    /// An unverified cover of `target`.
    pub fn cover_of(&self, target: &LatticePolytope) -> Result<SimplicialCover, InputError> {
        if self.dim != target.dim() {
            return Err(InputError::new(format!(
                "cover has dim {} but the polytope has dim {}",
                self.dim,
                target.dim()
            )));
        }
        Ok(SimplicialCover::new(target.clone(), self.simplices()?, self.kind))
    }
}

fn check_lengths<'a>(dim: usize, vs: impl Iterator<Item = &'a Vec<i64>>) -> Result<(), InputError> {
    for v in vs {
        if v.len() != dim {
            return Err(InputError::new(format!(
                "vector of length {} in a file with dim {dim}",
                v.len()
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl InputError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }

    fn json(e: serde_json::Error) -> Self {
        Self(format!("malformed input: {e}"))
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self(e.to_string())
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Names accepted by `--example`.
pub const EXAMPLES: &str = "std-simplex-N, a1, a2, cube-N, square";

/// Built-in fixtures.
///
/// * `std-simplex-N`: `conv{0, e_1, ..., e_N}`
/// * `a1`: `conv{0, e_1, e_2, 2e_3}`, index 2 with a fifth lattice point
/// * `a2`: `conv{0, e_1, e_2, e_1 + e_2 + 2e_3}`, index 2 and no other lattice points
/// * `cube-N`, `square`: `[0,1]^N`, `[0,1]^2`
pub fn example(name: &str) -> Result<PolytopeFile, InputError> {
    let unit = |n: usize, i: usize| LatticePoint::unit(n, i).into_coords();
    let bad = || InputError::new(format!("unknown example {name:?}; expected one of {EXAMPLES}"));
    let size = |rest: &str| -> Result<usize, InputError> {
        match rest.parse::<usize>() {
            Ok(n) if (1..=crate::geometry::MAX_AMBIENT_DIM).contains(&n) => Ok(n),
            _ => Err(bad()),
        }
    };
    let (dim, vertices) = match name {
        "a1" => (3, vec![vec![0, 0, 0], unit(3, 0), unit(3, 1), vec![0, 0, 2]]),
        "a2" => (3, vec![vec![0, 0, 0], unit(3, 0), unit(3, 1), vec![1, 1, 2]]),
        "square" => (2, cube_vertices(2)),
        _ => {
            if let Some(rest) = name.strip_prefix("std-simplex-") {
                let n = size(rest)?;
                let mut v = vec![vec![0; n]];
                v.extend((0..n).map(|i| unit(n, i)));
                (n, v)
            } else if let Some(rest) = name.strip_prefix("cube-") {
                let n = size(rest)?;
                (n, cube_vertices(n))
            } else {
                return Err(bad());
            }
        }
    };
    Ok(PolytopeFile {
        dim,
        vertices,
        name: Some(name.to_string()),
    })
}

fn cube_vertices(n: usize) -> Vec<Vec<i64>> {
    (0..1u32 << n)
        .map(|m| (0..n).map(|i| i64::from((m >> i) & 1)).collect())
        .collect()
}

/// Loaded input together with the bytes its digest is taken over.
pub struct Loaded<T> {
    pub value: T,
    pub bytes: Vec<u8>,
}

pub fn read_file(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError::new(format!("{}: {e}", path.display())))
}

pub fn load_polytope(path: Option<&Path>, example_name: Option<&str>) -> Result<Loaded<PolytopeFile>, InputError> {
    match (path, example_name) {
        (Some(p), None) => {
            let text = read_file(p)?;
            let value = PolytopeFile::parse(&text)
                .map_err(|e| InputError::new(format!("{}: {e}", p.display())))?;
            Ok(Loaded {
                value,
                bytes: text.into_bytes(),
            })
        }
        (None, Some(name)) => {
            let value = example(name)?;
            let bytes = serde_json::to_vec(&value).expect("fixture serializes");
            Ok(Loaded { value, bytes })
        }
        (None, None) => Err(InputError::new("an input FILE or --example is required")),
        (Some(_), Some(_)) => Err(InputError::new("give either FILE or --example, not both")),
    }
}

pub fn load_cover(path: &Path) -> Result<Loaded<CoverFile>, InputError> {
    let text = read_file(path)?;
    let value =
        CoverFile::parse(&text).map_err(|e| InputError::new(format!("{}: {e}", path.display())))?;
    Ok(Loaded {
        value,
        bytes: text.into_bytes(),
    })
}

/// SHA-256 over every input, in order, each prefixed by its length.
pub fn digest<'a>(inputs: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

/// Parses `1,2,-3`. Entries may be fractions such as `1/2`, which are
/// rejected as non-lattice points.
pub fn parse_point(s: &str) -> Result<LatticePoint, InputError> {
    use num_rational::BigRational;
    let coords = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigRational>()
                .map_err(|_| InputError::new(format!("bad coordinate {t:?} in point {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    crate::geometry::RatPoint::new(coords)
        .to_lattice()
        .map_err(|e| InputError::new(format!("point {s:?}: {e}")))
}
