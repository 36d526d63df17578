//! Positive roots of Dynkin quivers and the indecomposables attached to them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::quiver::{classify_underlying_graph, BoundQuiverAlgebra, GraphClass, Quiver};

use super::Representation;

/// A dimension vector, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(n: usize, v: usize) -> Root {
        let mut d = vec![0; n];
        d[v] = 1;
        Root(d)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x.max(0) as usize).collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `s_v(d) = d − (C d)_v · e_v` for the symmetrized Tits matrix `C`.
fn reflect(c: &[Vec<i64>], d: &[i64], v: usize) -> Vec<i64> {
    let cd: i64 = c[v].iter().zip(d).map(|(x, y)| x * y).sum();
    let mut out = d.to_vec();
    out[v] -= cd;
    out
}

/// All positive roots of a quiver whose components are Dynkin, sorted by
/// height then lexicographically.
pub fn positive_roots(q: &Quiver) -> Result<Vec<Root>> {
    let n = q.num_vertices();
    let c = q.symmetrized_tits_matrix();
    let mut all = BTreeSet::new();
    for comp in q.components() {
        let sub = q.induced(&comp);
        match classify_underlying_graph(&sub)? {
            GraphClass::Finite(_) => {}
            other => {
                return Err(Error::NotDynkin(format!(
                    "component {{{}}} is {other}",
                    comp.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>().join(",")
                )))
            }
        }
        let mut queue: VecDeque<Vec<i64>> = comp.iter().map(|&v| Root::simple(n, v).0).collect();
        let mut seen: BTreeSet<Vec<i64>> = queue.iter().cloned().collect();
        while let Some(d) = queue.pop_front() {
            for &v in &comp {
                let r = reflect(&c, &d, v);
                if r.iter().all(|&x| x >= 0) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        all.extend(seen);
    }
    let mut roots: Vec<Root> = all.into_iter().map(Root).collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(roots)
}

/// Vertices ordered so that every arrow's target precedes its source.
fn sink_order(n: usize, ends: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut out_deg = vec![0usize; n];
    for &(s, _) in ends {
        out_deg[s] += 1;
    }
    let mut ready: VecDeque<usize> = (0..n).filter(|&v| out_deg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_front() {
        order.push(v);
        for &(s, t) in ends {
            if t == v {
                out_deg[s] -= 1;
                if out_deg[s] == 0 {
                    ready.push_back(s);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::NotDynkin("quiver has an oriented cycle".into()));
    }
    Ok(order)
}

/// The indecomposable representation with dimension vector `root`, built by
/// reflection functors starting from a simple.
pub fn root_representation(
    algebra: &Arc<BoundQuiverAlgebra>,
    root: &Root,
    field: Field,
) -> Result<Representation> {
    let q = algebra.quiver();
    let n = q.num_vertices();
    if root.0.len() != n {
        return Err(Error::ShapeMismatch(format!("root {root} for {n} vertices")));
    }
    if !positive_roots(q)?.contains(root) {
        return Err(Error::NotARoot(root.0.clone()));
    }
    let c = q.symmetrized_tits_matrix();
    let mut ends: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
    let order = sink_order(n, &ends)?;

    // walk sinks until the vector becomes simple
    let mut d = root.0.clone();
    let mut stack = Vec::new();
    let mut j = 0usize;
    let start = loop {
        let w = order[j % n];
        j += 1;
        if d == Root::simple(n, w).0 {
            break w;
        }
        d = reflect(&c, &d, w);
        debug_assert!(d.iter().all(|&x| x >= 0));
        for e in ends.iter_mut().filter(|e| e.0 == w || e.1 == w) {
            *e = (e.1, e.0);
        }
        stack.push(w);
    };

    let mut dims = vec![0usize; n];
    dims[start] = 1;
    let mut mats: Vec<Mat> =
        ends.iter().map(|&(s, t)| Mat::zeros(field, dims[t], dims[s])).collect();

    // undo each flip with the source reflection functor at that vertex
    while let Some(w) = stack.pop() {
        let outs: Vec<usize> = (0..ends.len()).filter(|&a| ends[a].0 == w).collect();
        debug_assert!(ends.iter().all(|e| e.1 != w || e.0 == w));
        let rows: usize = outs.iter().map(|&a| dims[ends[a].1]).sum();
        let parts: Vec<&Mat> = outs.iter().map(|&a| &mats[a]).collect();
        let stacked = Mat::vstack(field, dims[w], &parts);
        debug_assert_eq!(stacked.rows(), rows);
        let pi = stacked.left_null_space();
        let new_dim = pi.rows();
        let mut offset = 0;
        for &a in &outs {
            let t = ends[a].1;
            mats[a] = pi.block(0, offset, new_dim, dims[t]);
            offset += dims[t];
            ends[a] = (t, w);
        }
        dims[w] = new_dim;
    }
    debug_assert_eq!(dims, root.dims());
    Representation::new(algebra.clone(), field, dims, mats)
}
