//! Breadth-first exploration of the Weyl groupoid: vertices are tuples up to
//! entrywise isomorphism, edges are reflections.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reflection::{reflect, YDTuple};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum EdgeTarget {
    Vertex(usize),
    /// Reflection undefined at this cutoff.
    Open { cutoff: usize },
    /// Not explored because of the vertex limit.
    Unexplored,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub pivot: usize,
    pub target: EdgeTarget,
    pub cartan_row: Option<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct WeylGroupoidGraph {
    pub vertices: Vec<YDTuple>,
    pub edges: Vec<Edge>,
    pub cutoff: usize,
    pub complete: bool,
}

fn find_vertex(vertices: &[YDTuple], t: &YDTuple) -> Option<usize> {
    vertices.iter().position(|v| v.isomorphic(t).is_some())
}

/// Closure of `m` under all reflections defined at `cutoff`, stopping once
/// `max_vertices` vertices are known.
pub fn weyl_groupoid(m: &YDTuple, cutoff: usize, max_vertices: usize) -> Result<WeylGroupoidGraph> {
    let theta = m.rank();
    let mut vertices = vec![m.clone()];
    let mut edges = Vec::new();
    let mut next = 0;
    let mut complete = true;
    while next < vertices.len() {
        let source = vertices[next].clone();
        // reflections at different pivots are independent
        let results: Vec<_> = (0..theta).into_par_iter().map(|i| reflect(&source, i, cutoff)).collect();
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(d) => {
                    let target = match find_vertex(&vertices, &d.result) {
                        Some(t) => EdgeTarget::Vertex(t),
                        None if vertices.len() < max_vertices => {
                            vertices.push(d.result);
                            EdgeTarget::Vertex(vertices.len() - 1)
                        }
                        None => {
                            complete = false;
                            EdgeTarget::Unexplored
                        }
                    };
                    edges.push(Edge { source: next, pivot: i, target, cartan_row: Some(d.cartan_row) });
                }
                Err(Error::NotDefinedAtCutoff { .. }) => {
                    complete = false;
                    edges.push(Edge { source: next, pivot: i, target: EdgeTarget::Open { cutoff }, cartan_row: None });
                }
                Err(e) => return Err(e),
            }
        }
        next += 1;
    }
    Ok(WeylGroupoidGraph { vertices, edges, cutoff, complete })
}

impl WeylGroupoidGraph {
    /// Cartan matrix of vertex `v`; rows of undefined reflections are `None`.
    pub fn cartan_matrix(&self, v: usize) -> Vec<Option<Vec<i64>>> {
        let theta = self.vertices[v].rank();
        (0..theta)
            .map(|i| self.edges.iter().find(|e| e.source == v && e.pivot == i).and_then(|e| e.cartan_row.clone()))
            .collect()
    }

    /// Every edge `(v, i) -> w` has `(w, i) -> v`.
    pub fn involutive(&self) -> bool {
        self.edges.iter().all(|e| match e.target {
            EdgeTarget::Vertex(w) => self
                .edges
                .iter()
                .any(|f| f.source == w && f.pivot == e.pivot && f.target == EdgeTarget::Vertex(e.source)),
            _ => true,
        })
    }

    /// `a_ij` agrees at both ends of every `i`-edge.
    pub fn cartan_invariant(&self) -> bool {
        self.edges.iter().all(|e| match e.target {
            EdgeTarget::Vertex(w) => self.cartan_matrix(w)[e.pivot] == e.cartan_row,
            _ => true,
        })
    }

    /// One line per edge: `vertex_id pivot target_id cartan_row`, pivots
    /// 1-based, `open` or `unexplored` in place of a target.
    pub fn adjacency(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let target = match e.target {
                EdgeTarget::Vertex(w) => w.to_string(),
                EdgeTarget::Open { .. } => "open".into(),
                EdgeTarget::Unexplored => "unexplored".into(),
            };
            let row = e.cartan_row.as_ref().map_or("-".into(), |r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            out.push_str(&format!("{} {} {} {}\n", e.source, e.pivot + 1, target, row));
        }
        out
    }

    /// Products `(R_i R_j)^k` that return to their start vertex, reported
    /// for exploration only.
    pub fn coxeter_orders(&self, limit: usize) -> Vec<(usize, usize, usize, Option<usize>)> {
        let step = |v: usize, i: usize| {
            self.edges.iter().find(|e| e.source == v && e.pivot == i).and_then(|e| match e.target {
                EdgeTarget::Vertex(w) => Some(w),
                _ => None,
            })
        };
        let theta = self.vertices.first().map_or(0, |v| v.rank());
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            for i in 0..theta {
                for j in (i + 1)..theta {
                    let mut cur = Some(v);
                    let mut order = None;
                    for k in 1..=limit {
                        cur = cur.and_then(|c| step(c, j)).and_then(|c| step(c, i));
                        if cur == Some(v) {
                            order = Some(k);
                            break;
                        }
                        if cur.is_none() {
                            break;
                        }
                    }
                    out.push((v, i, j, order));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::diagonal_type;
    use crate::yd::diagonal_modules;

    fn tuple(q: &[Vec<(u32, i64)>]) -> YDTuple {
        YDTuple::new(diagonal_modules(&diagonal_type(q).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn e1_is_a2_everywhere() {
        let e1 = tuple(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]]);
        let g = weyl_groupoid(&e1, 4, 10).unwrap();
        assert!(g.complete && g.involutive() && g.cartan_invariant());
        for v in 0..g.vertices.len() {
            let c: Vec<Vec<i64>> = g.cartan_matrix(v).into_iter().map(Option::unwrap).collect();
            assert_eq!(c, vec![vec![2, -1], vec![-1, 2]]);
        }
    }

    #[test]
    fn rank_one_has_self_edge() {
        let t = tuple(&[vec![(3, 1)]]);
        let g = weyl_groupoid(&t, 4, 10).unwrap();
        assert!(g.involutive());
        assert_eq!(g.adjacency().lines().count(), g.vertices.len());
    }
}
