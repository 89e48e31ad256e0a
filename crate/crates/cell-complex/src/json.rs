//! JSON interchange for cell complexes.
//!
//! `points` holds representative float coordinates, `time` the exact time of
//! each cell as a rational string in units of π. Exact coordinates of every
//! slot live under `exact` so the round trip is lossless.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{CellComplex, Geometry, Q};
use crate::CellError;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub id: u32,
    pub dim: u8,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExactRecord {
    pub labels: Vec<String>,
    pub periods: Vec<Option<String>>,
    pub time_slot: Option<usize>,
    pub point_dim: usize,
    pub coords: BTreeMap<u32, Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ComplexJson {
    pub cells: Vec<CellRecord>,
    pub incidence: Vec<(u32, u32, i8)>,
    pub points: BTreeMap<u32, Vec<f64>>,
    pub time: BTreeMap<u32, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactRecord>,
}

fn parse_q(s: &str) -> Result<Q, CellError> {
    s.parse::<Q>().map_err(|e| CellError::Json(format!("bad rational {s:?}: {e}")))
}

pub fn to_json(x: &CellComplex) -> ComplexJson {
    let n = x.len() as u32;
    let cells = (0..n).map(|id| CellRecord { id, dim: x.dim(id as usize) as u8 }).collect();
    let incidence = (0..n).flat_map(|c| x.facets(c as usize).iter().map(move |&(f, s)| (c, f, s))).collect();
    let mut points = BTreeMap::new();
    let mut time = BTreeMap::new();
    let mut exact = None;
    if let Some(g) = x.geometry() {
        if g.point_dim > 0 {
            points = (0..n).map(|c| (c, x.point(c as usize).to_vec())).collect();
        }
        if g.time_slot.is_some() {
            time = (0..n).map(|c| (c, x.time(c as usize).unwrap().to_string())).collect();
        }
        exact = Some(ExactRecord {
            labels: g.labels.clone(),
            periods: g.periods.iter().map(|p| p.map(|p| p.to_string())).collect(),
            time_slot: g.time_slot,
            point_dim: g.point_dim,
            coords: (0..n).map(|c| (c, x.exact(c as usize).iter().map(|q| q.to_string()).collect())).collect(),
        });
    }
    ComplexJson { cells, incidence, points, time, exact }
}

pub fn from_json(j: &ComplexJson) -> Result<CellComplex, CellError> {
    let n = j.cells.len();
    let mut dims = vec![0u8; n];
    for r in &j.cells {
        *dims.get_mut(r.id as usize).ok_or_else(|| CellError::Json(format!("cell id {} out of range", r.id)))? = r.dim;
    }
    let mut facets = vec![Vec::new(); n];
    for &(c, f, s) in &j.incidence {
        facets.get_mut(c as usize).ok_or_else(|| CellError::Json(format!("cell id {c} out of range")))?.push((f, s));
    }
    let geometry = match &j.exact {
        None => None,
        Some(e) => {
            let periods = e.periods.iter().map(|p| p.as_deref().map(parse_q).transpose()).collect::<Result<_, _>>()?;
            let mut exact = Vec::with_capacity(n * e.labels.len());
            let mut points = Vec::with_capacity(n * e.point_dim);
            for c in 0..n as u32 {
                let row = e.coords.get(&c).ok_or_else(|| CellError::Json(format!("missing coordinates of cell {c}")))?;
                for s in row {
                    exact.push(parse_q(s)?);
                }
                if e.point_dim > 0 {
                    points.extend(j.points.get(&c).ok_or_else(|| CellError::Json(format!("missing point of cell {c}")))?);
                }
            }
            Some(Geometry { labels: e.labels.clone(), periods, time_slot: e.time_slot, exact, point_dim: e.point_dim, points })
        }
    };
    CellComplex::new(dims, facets, geometry)
}

pub fn to_string(x: &CellComplex) -> String {
    serde_json::to_string_pretty(&to_json(x)).expect("serializable")
}

pub fn from_str(s: &str) -> Result<CellComplex, CellError> {
    let j: ComplexJson = serde_json::from_str(s).map_err(|e| CellError::Json(e.to_string()))?;
    from_json(&j)
}
