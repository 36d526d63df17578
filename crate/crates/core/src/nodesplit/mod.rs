//! Node detection and splitting for bound quiver algebras, the split/fuse
//! correspondence on representations, the square-zero endomorphism that
//! representations with both node maps nonzero carry, and brick censuses.

mod census;
mod verify;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::quiver::{example_one, BoundQuiverAlgebra, Path, Quiver};
use crate::rep::{positive_roots, Morphism, Representation, Root};

pub use census::{
    brick_census, census_budget, CensusClass, CensusCounts, CensusOptions, CensusReport,
    CensusScope, DEFAULT_BUDGET,
};
pub use verify::{verify_example1, Example1Options};

/// `v` is neither a source nor a sink and every 2-path through it is zero.
pub fn is_node(alg: &BoundQuiverAlgebra, v: usize) -> Result<bool> {
    let q = alg.quiver();
    if v >= q.num_vertices() {
        return Err(Error::NoSuchVertex(v.to_string()));
    }
    if q.is_source(v) || q.is_sink(v) {
        return Ok(false);
    }
    for b in q.in_arrows(v) {
        for a in q.out_arrows(v) {
            if alg.is_nonzero_word(&[a, b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// How a split algebra relates to the original one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitData {
    /// The node in the original algebra.
    pub vertex: usize,
    /// New vertex carrying the out-arrows of the node.
    pub source_side: usize,
    /// New vertex carrying the in-arrows of the node.
    pub sink_side: usize,
    /// Image of every original vertex other than the node.
    pub vertex_map: Vec<Option<usize>>,
    /// Arrows keep their index and name; these are the ones that moved.
    pub in_arrows: Vec<usize>,
    pub out_arrows: Vec<usize>,
    /// Relations that passed through the node and were dropped.
    pub dropped_relations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct NodeSplit {
    pub original: Arc<BoundQuiverAlgebra>,
    pub split: Arc<BoundQuiverAlgebra>,
    pub data: SplitData,
}

/// Whether a relation word passes through `v` (as an interior vertex).
fn passes_through(q: &Quiver, word: &[usize], v: usize) -> bool {
    word.windows(2).any(|w| q.arrows()[w[0]].source == v)
}

/// Replace the node `v` by `v'` (out-arrows) and `v''` (in-arrows).
pub fn split_at_node(alg: &Arc<BoundQuiverAlgebra>, v: usize) -> Result<NodeSplit> {
    if !is_node(alg, v)? {
        return Err(Error::NotANode(alg.quiver().vertex_name(v).to_string()));
    }
    let q = alg.quiver();
    let n = q.num_vertices();
    let name = q.vertex_name(v);
    let mut vertices: Vec<String> = Vec::with_capacity(n + 1);
    let mut vertex_map = vec![None; n];
    for w in 0..n {
        if w == v {
            vertices.push(format!("{name}'"));
            vertices.push(format!("{name}''"));
        } else {
            vertex_map[w] = Some(vertices.len());
            vertices.push(q.vertex_name(w).to_string());
        }
    }
    if vertices[..].iter().filter(|x| **x == vertices[v] || **x == vertices[v + 1]).count() != 2 {
        return Err(Error::MalformedQuiver(format!(
            "split vertex names {name}' / {name}'' clash with existing vertices"
        )));
    }
    let (src_side, sink_side) = (v, v + 1);
    let arrows: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| {
            let s = if a.source == v { src_side } else { vertex_map[a.source].unwrap() };
            let t = if a.target == v { sink_side } else { vertex_map[a.target].unwrap() };
            (a.name.clone(), vertices[s].clone(), vertices[t].clone())
        })
        .collect();
    let quiver = Quiver::new(&vertices, &arrows)?;
    let mut relations = Vec::new();
    let mut dropped = Vec::new();
    for r in alg.relations() {
        if passes_through(q, &r.arrows, v) {
            dropped.push(r.display(q).to_string());
        } else {
            relations.push(Path::from_arrows(&quiver, r.arrows.clone())?);
        }
    }
    let split = BoundQuiverAlgebra::new(quiver, relations)?;
    Ok(NodeSplit {
        original: alg.clone(),
        split: Arc::new(split),
        data: SplitData {
            vertex: v,
            source_side: src_side,
            sink_side,
            vertex_map,
            in_arrows: q.in_arrows(v),
            out_arrows: q.out_arrows(v),
            dropped_relations: dropped,
        },
    })
}

impl NodeSplit {
    /// Position in the split quiver of a vertex other than the node.
    fn kept_vertex(&self, w: usize) -> usize {
        self.data.vertex_map[w].expect("non-node vertices are kept")
    }

    /// `N_{v''} = Σ im(in-arrows)` and `N_{v'} = M_v / N_{v''}`, both in
    /// pivot-chosen coordinates; everything else is copied.
    pub fn split_rep(&self, m: &Representation) -> Result<Representation> {
        m.check_compatible_with(&self.original, m.field())?;
        let field = m.field();
        let v = self.data.vertex;
        let dv = m.dims()[v];
        let ins: Vec<&Mat> = self.data.in_arrows.iter().map(|&a| m.mat(a)).collect();
        let image = Mat::hstack(field, dv, &ins).column_basis();
        let r = image.cols();
        let aug = Mat::hstack(field, dv, &[&image, &Mat::identity(field, dv)]);
        let comp: Vec<usize> =
            aug.reduce().pivots.into_iter().filter(|&c| c >= r).map(|c| c - r).collect();
        let complement = Mat::identity(field, dv).select_cols(&comp);
        let t = Mat::hstack(field, dv, &[&image, &complement]);
        let t_inv = t.inverse().expect("image basis plus complement is a basis");
        let sub_coords = t_inv.select_rows(&(0..r).collect::<Vec<_>>());

        let n = self.split.num_vertices();
        let mut dims = vec![0; n];
        for (w, &d) in m.dims().iter().enumerate() {
            if w == v {
                dims[self.data.source_side] = dv - r;
                dims[self.data.sink_side] = r;
            } else {
                dims[self.kept_vertex(w)] = d;
            }
        }
        let mats = self
            .original
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut x = m.mat(a).clone();
                if arrow.target == v {
                    x = sub_coords.mul(&x);
                }
                if arrow.source == v {
                    // well defined: out-arrows kill the image of the in-arrows
                    x = x.mul(&complement);
                }
                x
            })
            .collect();
        Representation::new(self.split.clone(), field, dims, mats)
    }

    /// `M_v = N_{v'} ⊕ N_{v''}` (source-side block first).
    pub fn fuse_rep(&self, nrep: &Representation) -> Result<Representation> {
        nrep.check_compatible_with(&self.split, nrep.field())?;
        let field = nrep.field();
        let v = self.data.vertex;
        let c = nrep.dims()[self.data.source_side];
        let r = nrep.dims()[self.data.sink_side];
        let n = self.original.num_vertices();
        let dims: Vec<usize> = (0..n)
            .map(|w| if w == v { c + r } else { nrep.dims()[self.kept_vertex(w)] })
            .collect();
        let embed_sink = Mat::vstack(field, r, &[&Mat::zeros(field, c, r), &Mat::identity(field, r)]);
        let project_source =
            Mat::hstack(field, c, &[&Mat::identity(field, c), &Mat::zeros(field, c, r)]);
        let mats = self
            .original
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut x = nrep.mat(a).clone();
                if arrow.target == v {
                    x = embed_sink.mul(&x);
                }
                if arrow.source == v {
                    x = x.mul(&project_source);
                }
                x
            })
            .collect();
        Representation::new(self.original.clone(), field, dims, mats)
    }
}

/// `φ_v = w·fᵀ` with `w` in the image of the in-arrows at the node and `f`
/// vanishing on it; zero at every other vertex. Then `φ ≠ 0`, `φ² = 0` and
/// `φ` is a module map.
pub fn nilpotent_endo(m: &Representation, v: usize) -> Result<Morphism> {
    let alg = m.algebra();
    if !is_node(alg, v)? {
        return Err(Error::NotANode(alg.quiver().vertex_name(v).to_string()));
    }
    let q = alg.quiver();
    let field = m.field();
    let dv = m.dims()[v];
    if q.in_arrows(v).iter().all(|&a| m.mat(a).is_zero()) {
        return Err(Error::PreconditionFailed("every arrow into the node acts by zero".into()));
    }
    if q.out_arrows(v).iter().all(|&a| m.mat(a).is_zero()) {
        return Err(Error::PreconditionFailed("every arrow out of the node acts by zero".into()));
    }
    let ins: Vec<&Mat> = q.in_arrows(v).iter().map(|&a| m.mat(a)).collect();
    let image = Mat::hstack(field, dv, &ins);
    let w = (0..image.cols())
        .map(|j| image.column(j))
        .find(|c| !c.is_zero())
        .expect("some in-arrow is nonzero");
    let functionals = image.left_null_space();
    if functionals.rows() == 0 {
        return Err(Error::PreconditionFailed("in-arrows span the node space".into()));
    }
    let f = functionals.select_rows(&[0]);
    let phi: Vec<Mat> = m
        .dims()
        .iter()
        .enumerate()
        .map(|(u, &d)| if u == v { w.mul(&f) } else { Mat::zeros(field, d, d) })
        .collect();
    Ok(Morphism(phi))
}

/// Number of indecomposables of the first example algebra with `alpha = 0`
/// or `beta = 0`, counted as positive roots of the two deleted-arrow quivers.
pub fn structural_census(n: usize) -> Result<usize> {
    let alg = example_one(n)?;
    let q = alg.quiver();
    let count = |names: &[&str]| -> Result<usize> { Ok(positive_roots(&q.without_arrows(names)?)?.len()) };
    Ok(count(&["beta"])? + count(&["alpha"])? - count(&["alpha", "beta"])?)
}

/// Dimension vectors of the structural bricks, with multiplicity: roots of
/// the `beta`-deleted and `alpha`-deleted quivers, counting the common ones
/// (both arrows zero) once.
pub fn structural_dimension_vectors(n: usize) -> Result<Vec<Vec<usize>>> {
    let alg = example_one(n)?;
    let q = alg.quiver();
    let roots = |names: &[&str]| -> Result<Vec<Vec<usize>>> {
        Ok(positive_roots(&q.without_arrows(names)?)?.iter().map(Root::dims).collect())
    };
    let mut out = roots(&["beta"])?;
    out.extend(roots(&["alpha"])?);
    for common in roots(&["alpha", "beta"])? {
        let i = out.iter().position(|d| *d == common).expect("common roots occur twice");
        out.remove(i);
    }
    out.sort();
    Ok(out)
}

/// Field used when a census is requested for the first example.
pub(crate) fn prime_of(field: Field) -> Result<u32> {
    match field {
        Field::Prime(p) => Ok(p),
        Field::Rationals => Err(Error::BadParameter("a census needs a prime field".into())),
    }
}
