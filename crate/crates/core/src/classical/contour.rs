use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::{PhasePoint, ReducedHamiltonian};

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub vertices: Vec<PhasePoint>,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Contour {
    pub level: f64,
    pub polylines: Vec<Polyline>,
}

impl Contour {
    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &PhasePoint> {
        self.polylines.iter().flat_map(|l| l.vertices.iter())
    }
}

/// Sampled values on `q ∈ [-π, π]`, `p ∈ [-1, 1]`, both ends included.
#[derive(Clone, Debug)]
pub struct ContourField {
    nq: usize,
    np: usize,
    values: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Edge {
    /// Between `(i, j)` and `(i + 1, j)`.
    AlongQ(usize, usize),
    /// Between `(i, j)` and `(i, j + 1)`.
    AlongP(usize, usize),
}

impl ContourField {
    pub fn sample(h: &ReducedHamiltonian, nq: usize, np: usize) -> Result<Self> {
        if nq < 2 || np < 2 {
            return Err(Error::InvalidParams(format!("contour grid needs at least 2x2 nodes, got {nq}x{np}")));
        }
        let mut values = Vec::with_capacity(nq * np);
        for i in 0..nq {
            let q = Self::q_at(nq, i);
            for j in 0..np {
                values.push(h.value_unchecked(q, Self::p_at(np, j)));
            }
        }
        Ok(Self { nq, np, values })
    }

    fn q_at(nq: usize, i: usize) -> f64 {
        -PI + 2.0 * PI * i as f64 / (nq - 1) as f64
    }

    fn p_at(np: usize, j: usize) -> f64 {
        -1.0 + 2.0 * j as f64 / (np - 1) as f64
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nq, self.np)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.np + j]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Diagonal of one grid cell.
    pub fn cell_diagonal(&self) -> f64 {
        let dq = 2.0 * PI / (self.nq - 1) as f64;
        let dp = 2.0 / (self.np - 1) as f64;
        dq.hypot(dp)
    }

    fn node(&self, i: usize, j: usize) -> PhasePoint {
        PhasePoint::new(Self::q_at(self.nq, i), Self::p_at(self.np, j))
    }

    fn crossing(&self, edge: Edge, level: f64) -> PhasePoint {
        let ((ia, ja), (ib, jb)) = match edge {
            Edge::AlongQ(i, j) => ((i, j), (i + 1, j)),
            Edge::AlongP(i, j) => ((i, j), (i, j + 1)),
        };
        let (za, zb) = (self.value(ia, ja), self.value(ib, jb));
        let t = if zb == za { 0.5 } else { ((level - za) / (zb - za)).clamp(0.0, 1.0) };
        let (a, b) = (self.node(ia, ja), self.node(ib, jb));
        PhasePoint::new(a.q + t * (b.q - a.q), a.p + t * (b.p - a.p))
    }

    /// Marching squares for one level; segments are stitched into polylines.
    pub fn trace(&self, level: f64) -> Contour {
        let mut segments: Vec<(Edge, Edge)> = Vec::new();
        for j in 0..self.np - 1 {
            for i in 0..self.nq - 1 {
                let z = [
                    self.value(i, j),
                    self.value(i + 1, j),
                    self.value(i + 1, j + 1),
                    self.value(i, j + 1),
                ];
                let above = z.map(|v| v >= level);
                let bottom = Edge::AlongQ(i, j);
                let right = Edge::AlongP(i + 1, j);
                let top = Edge::AlongQ(i, j + 1);
                let left = Edge::AlongP(i, j);
                // Corner k sits between sides[k] and the next side.
                let sides = [left, bottom, right, top];
                let case = above.iter().enumerate().fold(0u8, |acc, (k, &a)| acc | ((a as u8) << k));
                match case {
                    0 | 15 => {}
                    5 | 10 => {
                        let center_above = z.iter().sum::<f64>() / 4.0 >= level;
                        // Cut off the corners on the disconnected side.
                        let isolated_above = case == 5;
                        let corners = if center_above == isolated_above { [1, 3] } else { [0, 2] };
                        for k in corners {
                            segments.push((sides[k], sides[(k + 1) % 4]));
                        }
                    }
                    _ => {
                        let crossed: Vec<Edge> = [(0, 1, bottom), (1, 2, right), (2, 3, top), (3, 0, left)]
                            .iter()
                            .filter(|(a, b, _)| above[*a] != above[*b])
                            .map(|&(_, _, e)| e)
                            .collect();
                        segments.push((crossed[0], crossed[1]));
                    }
                }
            }
        }
        Contour {
            level,
            polylines: self.stitch(&segments, level),
        }
    }

    fn stitch(&self, segments: &[(Edge, Edge)], level: f64) -> Vec<Polyline> {
        let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
        for (k, &(a, b)) in segments.iter().enumerate() {
            by_edge.entry(a).or_default().push(k);
            by_edge.entry(b).or_default().push(k);
        }
        let mut used = vec![false; segments.len()];
        let mut lines = Vec::new();

        let walk = |start: usize, from: Edge, used: &mut Vec<bool>| -> (Vec<Edge>, bool) {
            let mut path = vec![from];
            let mut seg = start;
            let mut at = from;
            loop {
                used[seg] = true;
                let (a, b) = segments[seg];
                let next = if a == at { b } else { a };
                path.push(next);
                if next == from {
                    return (path, true);
                }
                match by_edge[&next].iter().find(|&&s| !used[s]) {
                    Some(&s) => {
                        seg = s;
                        at = next;
                    }
                    None => return (path, false),
                }
            }
        };

        // Open lines start on an edge touched by a single segment.
        for k in 0..segments.len() {
            if used[k] {
                continue;
            }
            let (a, b) = segments[k];
            let start = if by_edge[&a].len() == 1 {
                Some(a)
            } else if by_edge[&b].len() == 1 {
                Some(b)
            } else {
                None
            };
            if let Some(e) = start {
                let (path, closed) = walk(k, e, &mut used);
                lines.push(self.polyline(&path, closed, level));
            }
        }
        for k in 0..segments.len() {
            if !used[k] {
                let (path, closed) = walk(k, segments[k].0, &mut used);
                lines.push(self.polyline(&path, closed, level));
            }
        }
        lines
    }

    fn polyline(&self, path: &[Edge], looped: bool, level: f64) -> Polyline {
        let vertices: Vec<PhasePoint> = path.iter().map(|&e| self.crossing(e, level)).collect();
        let closed = looped || {
            let (a, b) = (vertices[0], vertices[vertices.len() - 1]);
            vertices.len() > 2 && (a.q - b.q).hypot(a.p - b.p) <= self.cell_diagonal()
        };
        Polyline { vertices, closed }
    }
}

/// Level sets of `h` on an `nq × np` grid.
pub fn trace_contours(h: &ReducedHamiltonian, levels: &[f64], nq: usize, np: usize) -> Result<Vec<Contour>> {
    let field = ContourField::sample(h, nq, np)?;
    Ok(levels.iter().map(|&l| field.trace(l)).collect())
}
