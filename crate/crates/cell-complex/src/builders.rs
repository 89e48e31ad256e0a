//! Constructors for the standard complexes.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use crate::complex::{exact_barycentre, CellComplex, Geometry, Q};
use crate::CellError;

/// Vertex data for [`simplicial`].
#[derive(Clone, Debug, Default)]
pub struct VertexData {
    pub labels: Vec<String>,
    pub periods: Vec<Option<Q>>,
    pub time_slot: Option<usize>,
    /// Exact coordinates per vertex (may be empty vectors when `labels` is empty).
    pub exact: Vec<Vec<Q>>,
    /// Representative points per vertex.
    pub points: Vec<Vec<f64>>,
    /// Block sizes of the point vector; each block is normalized to a unit vector.
    pub unit_blocks: Vec<usize>,
}

/// Simplicial complex generated by the given simplices (all faces are added).
/// Cells are numbered by (dimension, sorted vertex tuple); a face omitting the
/// `i`-th vertex has sign `(-1)^i`.
pub fn simplicial(data: &VertexData, simplices: &[Vec<u32>]) -> Result<CellComplex, CellError> {
    let nv = data.points.len().max(data.exact.len());
    let mut all: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    for s in simplices {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.iter().any(|&v| v as usize >= nv) {
            return Err(CellError::Invalid("simplex with unknown vertex".into()));
        }
        let k = s.len();
        for mask in 1u32..(1 << k) {
            all.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
        }
    }
    for v in 0..nv as u32 {
        all.insert(vec![v]);
    }
    let mut cells: Vec<Vec<u32>> = all.into_iter().collect();
    cells.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&[u32], u32> = cells.iter().enumerate().map(|(i, c)| (c.as_slice(), i as u32)).collect();
    let mut dims = Vec::with_capacity(cells.len());
    let mut facet_lists = Vec::with_capacity(cells.len());
    for c in &cells {
        dims.push((c.len() - 1) as u8);
        let mut fl = Vec::new();
        if c.len() > 1 {
            for i in 0..c.len() {
                let face: Vec<u32> = c.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &v)| v).collect();
                fl.push((index[face.as_slice()], if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        facet_lists.push(fl);
    }
    let geom = simplicial_geometry(data, &cells);
    CellComplex::new(dims, facet_lists, Some(geom))
}

fn simplicial_geometry(data: &VertexData, cells: &[Vec<u32>]) -> Geometry {
    let cd = data.labels.len();
    let pd: usize = data.unit_blocks.iter().sum::<usize>().max(data.points.first().map_or(0, |p| p.len()));
    let mut exact = Vec::with_capacity(cells.len() * cd);
    let mut points = Vec::with_capacity(cells.len() * pd);
    for c in cells {
        if cd > 0 {
            let coords: Vec<&[Q]> = c.iter().map(|&v| data.exact[v as usize].as_slice()).collect();
            exact.extend(exact_barycentre(&coords, &data.periods));
        }
        if pd > 0 {
            let mut p = vec![0.0; pd];
            for &v in c {
                for (x, y) in p.iter_mut().zip(&data.points[v as usize]) {
                    *x += y;
                }
            }
            let mut off = 0;
            for &b in &data.unit_blocks {
                let norm = p[off..off + b].iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 0.0 {
                    for x in &mut p[off..off + b] {
                        *x /= norm;
                    }
                }
                off += b;
            }
            if data.unit_blocks.is_empty() {
                for x in &mut p {
                    *x /= c.len() as f64;
                }
            }
            points.extend(p);
        }
    }
    Geometry {
        labels: data.labels.clone(),
        periods: data.periods.clone(),
        time_slot: data.time_slot,
        exact,
        point_dim: pd,
        points,
    }
}

fn angle_point(theta_over_pi: Q) -> Vec<f64> {
    let a = theta_over_pi.to_f64().unwrap() * std::f64::consts::PI;
    vec![a.cos(), a.sin()]
}

/// A single vertex.
pub fn point() -> CellComplex {
    CellComplex::new(vec![0], vec![vec![]], None).expect("valid")
}

/// The m-gon model of a circle, coordinate `theta` in units of π.
pub fn circle(m: usize) -> Result<CellComplex, CellError> {
    circle_labeled(m, "theta")
}

/// Circle with a custom coordinate label.
pub fn circle_labeled(m: usize, label: &str) -> Result<CellComplex, CellError> {
    if m < 3 {
        return Err(CellError::Param(format!("circle needs at least 3 vertices, got {m}")));
    }
    let exact: Vec<Vec<Q>> = (0..m).map(|k| vec![crate::complex::wrap(Q::new(2 * k as i64, m as i64), Q::from(2))]).collect();
    let data = VertexData {
        labels: vec![label.to_string()],
        periods: vec![Some(Q::from(2))],
        time_slot: None,
        points: exact.iter().map(|e| angle_point(e[0])).collect(),
        exact,
        unit_blocks: vec![2],
    };
    let edges: Vec<Vec<u32>> = (0..m).map(|k| vec![k as u32, ((k + 1) % m) as u32]).collect();
    simplicial(&data, &edges)
}

/// Subdivided time interval `[a, b]` (units of π): vertices at `a`, every
/// multiple of `step` strictly inside, and `b`.
pub fn interval_grid(a: Q, b: Q, step: Q) -> Result<CellComplex, CellError> {
    if a >= b || step <= Q::zero() {
        return Err(CellError::Param(format!("bad interval grid [{a}, {b}] step {step}")));
    }
    let mut ts = vec![a];
    let mut k = (a / step).floor().to_integer() + 1;
    loop {
        let t = step * k;
        if t >= b {
            break;
        }
        if t > a {
            ts.push(t);
        }
        k += 1;
    }
    ts.push(b);
    let data = VertexData {
        labels: vec!["t".into()],
        periods: vec![None],
        time_slot: Some(0),
        exact: ts.iter().map(|&t| vec![t]).collect(),
        points: Vec::new(),
        unit_blocks: Vec::new(),
    };
    let edges: Vec<Vec<u32>> = (0..ts.len() - 1).map(|i| vec![i as u32, i as u32 + 1]).collect();
    simplicial(&data, &edges)
}

/// A triangulated 2-sphere with the data needed by the staircase product.
#[derive(Clone, Debug)]
pub struct SphereMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
    /// Antipodal vertex of each vertex.
    pub antipode: Vec<u32>,
    /// A colouring, invariant under the antipode and injective on every triangle.
    pub colors: Option<Vec<u8>>,
}

/// Octahedron boundary subdivided `subdiv` times (each triangle into four).
pub fn sphere_mesh(subdiv: usize) -> SphereMesh {
    let mut vertices: Vec<[f64; 3]> = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut colors: Vec<u8> = vec![0, 0, 1, 1, 2, 2];
    let mut triangles: Vec<[u32; 3]> = Vec::new();
    for &x in &[0u32, 1] {
        for &y in &[2u32, 3] {
            for &z in &[4u32, 5] {
                triangles.push([x, y, z]);
            }
        }
    }
    for level in 0..subdiv {
        let mut mid: HashMap<(u32, u32), u32> = HashMap::new();
        let mut next = Vec::new();
        for t in &triangles {
            let mut m = [0u32; 3];
            for (k, (a, b)) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])].into_iter().enumerate() {
                let key = (a.min(b), a.max(b));
                m[k] = *mid.entry(key).or_insert_with(|| {
                    let (p, q) = (vertices[a as usize], vertices[b as usize]);
                    let s = [p[0] + q[0], p[1] + q[1], p[2] + q[2]];
                    let n = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
                    vertices.push([s[0] / n, s[1] / n, s[2] / n]);
                    // first level: colour a midpoint by the axis it does not touch
                    let c = if level == 0 {
                        let axis = |v: [f64; 3]| (0..3).find(|&i| v[i].abs() > 0.5).unwrap() as u8;
                        3 + (3 - axis(p) - axis(q))
                    } else {
                        u8::MAX
                    };
                    colors.push(c);
                    vertices.len() as u32 - 1
                });
            }
            next.push([t[0], m[0], m[2]]);
            next.push([t[1], m[1], m[0]]);
            next.push([t[2], m[2], m[1]]);
            next.push([m[0], m[1], m[2]]);
        }
        triangles = next;
    }
    let antipode = antipodes(&vertices);
    let colors = if subdiv <= 1 { Some(colors) } else { None };
    SphereMesh { vertices, triangles, antipode, colors }
}

fn antipodes(vs: &[[f64; 3]]) -> Vec<u32> {
    vs.iter()
        .map(|v| {
            vs.iter()
                .position(|w| (v[0] + w[0]).abs() + (v[1] + w[1]).abs() + (v[2] + w[2]).abs() < 1e-9)
                .expect("mesh is antipodally symmetric") as u32
        })
        .collect()
}

/// The 2-sphere as a subdivided octahedron with unit-vector representatives.
pub fn sphere2(subdiv: usize) -> Result<CellComplex, CellError> {
    let mesh = sphere_mesh(subdiv);
    let data = VertexData {
        points: mesh.vertices.iter().map(|v| v.to_vec()).collect(),
        unit_blocks: vec![3],
        ..Default::default()
    };
    let tris: Vec<Vec<u32>> = mesh.triangles.iter().map(|t| t.to_vec()).collect();
    simplicial(&data, &tris)
}

/// Staircase triangulation of `S² × S²` built from a coloured sphere mesh.
///
/// Vertex `(a, b)` has id `a * N + b`. Inside each product of triangles the
/// vertices are ordered by colour, and the top simplices are the monotone
/// lattice paths. Because colours are antipode-invariant, the diagonal and the
/// antidiagonal are subcomplexes.
pub fn sphere_square(mesh: &SphereMesh) -> Result<CellComplex, CellError> {
    let colors = mesh
        .colors
        .as_ref()
        .ok_or_else(|| CellError::Param("staircase product needs a coloured mesh (subdivision ≤ 1)".into()))?;
    let n = mesh.vertices.len() as u32;
    let mut tops: Vec<Vec<u32>> = Vec::new();
    for s in &mesh.triangles {
        let mut a = s.to_vec();
        a.sort_by_key(|&v| colors[v as usize]);
        for t in &mesh.triangles {
            let mut b = t.to_vec();
            b.sort_by_key(|&v| colors[v as usize]);
            // lattice paths from (0,0) to (2,2)
            for mask in 0u32..16 {
                if mask.count_ones() != 2 {
                    continue;
                }
                let (mut i, mut j) = (0usize, 0usize);
                let mut simplex = vec![a[0] * n + b[0]];
                for step in 0..4 {
                    if mask >> step & 1 == 1 {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    simplex.push(a[i] * n + b[j]);
                }
                tops.push(simplex);
            }
        }
    }
    let points: Vec<Vec<f64>> = (0..n * n)
        .map(|v| {
            let (a, b) = ((v / n) as usize, (v % n) as usize);
            let mut p = mesh.vertices[a].to_vec();
            p.extend_from_slice(&mesh.vertices[b]);
            p
        })
        .collect();
    let data = VertexData { points, unit_blocks: vec![3, 3], ..Default::default() };
    simplicial(&data, &tops)
}

/// Light-cone lattice on `u × t` (units of π): vertices where `t ± u` are
/// multiples of `1/m`, horizontal lines every `1/(2m)` in time, each lattice
/// diamond split along its horizontal diagonal. Lines `j_lo..=j_hi` are kept
/// (`t = j/(2m)`). With `periodic`, `u` lives on the circle of period 2;
/// otherwise vertices with `|u| <= u_max` are kept.
pub fn lightcone_lattice(m: usize, j_lo: i64, j_hi: i64, periodic: bool, u_max: Q) -> Result<CellComplex, CellError> {
    if m < 1 || j_lo >= j_hi {
        return Err(CellError::Param("bad light-cone lattice parameters".into()));
    }
    let m = m as i64;
    let den = 2 * m;
    let mut ids: HashMap<(i64, i64), u32> = HashMap::new();
    let mut exact = Vec::new();
    // vertex (j, k): u = (j + 2k) / (2m)
    let ks: Box<dyn Fn(i64) -> Vec<i64>> = if periodic {
        Box::new(move |_j| (0..den).collect())
    } else {
        let umax = u_max;
        Box::new(move |j| {
            let lo = ((-umax * den - j) / 2).ceil().to_integer();
            let hi = ((umax * den - j) / 2).floor().to_integer();
            (lo..=hi).collect()
        })
    };
    let norm_k = |k: i64| if periodic { k.rem_euclid(den) } else { k };
    for j in j_lo..=j_hi {
        for k in ks(j) {
            let u = Q::new(j + 2 * k, den);
            let u = if periodic { crate::complex::wrap(u, Q::from(2)) } else { u };
            ids.insert((j, k), exact.len() as u32);
            exact.push(vec![u, Q::new(j, den)]);
        }
    }
    let get = |j: i64, k: i64| ids.get(&(j, norm_k(k))).copied();
    let mut simplices = Vec::new();
    for j in j_lo..=j_hi {
        for k in ks(j) {
            let v = get(j, k).unwrap();
            if let Some(w) = get(j, k + 1) {
                simplices.push(vec![v, w]);
            }
            if j < j_hi {
                for (a, b, c) in [((j, k), (j, k + 1), (j + 1, k)), ((j + 1, k - 1), (j + 1, k), (j, k))] {
                    if let (Some(x), Some(y), Some(z)) = (get(a.0, a.1), get(b.0, b.1), get(c.0, c.1)) {
                        simplices.push(vec![x, y, z]);
                    }
                }
                for kk in [k, k - 1] {
                    if let Some(w) = get(j + 1, kk) {
                        simplices.push(vec![v, w]);
                    }
                }
            }
        }
    }
    let points = exact.iter().map(|e| angle_point(e[0])).collect();
    let data = VertexData {
        labels: vec!["u".into(), "t".into()],
        periods: vec![if periodic { Some(Q::from(2)) } else { None }, None],
        time_slot: Some(1),
        exact,
        points,
        unit_blocks: vec![2],
    };
    simplicial(&data, &simplices)
}
