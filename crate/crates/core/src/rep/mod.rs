//! Representations of bound quiver algebras.
//!
//! A representation stores one matrix per arrow, of shape
//! `dims[target] × dims[source]`, acting on column vectors. Composites follow
//! the path convention: the rightmost arrow of a word is applied first.

mod endo;
mod hom;
mod roots;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::quiver::BoundQuiverAlgebra;

pub use endo::{end_analysis, EndAnalysis, Verdict, SCAN_CAP};
pub use hom::{are_isomorphic, hom_basis, HomSpace, Morphism};
pub use roots::{positive_roots, root_representation, Root};

#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<BoundQuiverAlgebra>,
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Mat>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
            && self.field == other.field
            && self.dims == other.dims
            && self.mats == other.mats
    }
}

impl Eq for Representation {}

/// The ways [`make_module`] can build a representation.
#[derive(Clone, Debug)]
pub enum ModuleSpec {
    Simple(usize),
    Projective(usize),
    DirectSum(Vec<Representation>),
    Explicit { dims: Vec<usize>, mats: Vec<Mat> },
}

pub fn make_module(
    algebra: &Arc<BoundQuiverAlgebra>,
    field: Field,
    spec: ModuleSpec,
) -> Result<Representation> {
    match spec {
        ModuleSpec::Simple(v) => Representation::simple(algebra, field, v),
        ModuleSpec::Projective(v) => Representation::projective(algebra, field, v),
        ModuleSpec::DirectSum(parts) => {
            for p in &parts {
                p.check_compatible_with(algebra, field)?;
            }
            let refs: Vec<&Representation> = parts.iter().collect();
            Ok(Representation::direct_sum_of(algebra, field, &refs))
        }
        ModuleSpec::Explicit { dims, mats } => {
            Representation::new(algebra.clone(), field, dims, mats)
        }
    }
}

impl Representation {
    /// Validates shapes, field and every relation.
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        field: Field,
        dims: Vec<usize>,
        mats: Vec<Mat>,
    ) -> Result<Representation> {
        let q = algebra.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.num_vertices()
            )));
        }
        if mats.len() != q.num_arrows() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                mats.len(),
                q.num_arrows()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&mats) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let rep = Representation { algebra, field, dims, mats };
        for r in rep.algebra.relations() {
            if !rep.word_matrix(&r.arrows).is_zero() {
                return Err(Error::RelationViolated(r.display(rep.algebra.quiver()).to_string()));
            }
        }
        Ok(rep)
    }

    pub fn zero(algebra: &Arc<BoundQuiverAlgebra>, field: Field) -> Representation {
        let n = algebra.num_vertices();
        Representation::with_dims_zero(algebra, field, vec![0; n])
    }

    /// All arrow maps zero.
    pub fn with_dims_zero(
        algebra: &Arc<BoundQuiverAlgebra>,
        field: Field,
        dims: Vec<usize>,
    ) -> Representation {
        let mats = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Mat::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        Representation { algebra: algebra.clone(), field, dims, mats }
    }

    pub fn simple(algebra: &Arc<BoundQuiverAlgebra>, field: Field, v: usize) -> Result<Representation> {
        let n = algebra.num_vertices();
        if v >= n {
            return Err(Error::NoSuchVertex(v.to_string()));
        }
        let mut dims = vec![0; n];
        dims[v] = 1;
        Ok(Representation::with_dims_zero(algebra, field, dims))
    }

    /// `P(v)`: basis the nonzero paths starting at `v`; arrows act by post-composition.
    pub fn projective(
        algebra: &Arc<BoundQuiverAlgebra>,
        field: Field,
        v: usize,
    ) -> Result<Representation> {
        let q = algebra.quiver();
        if v >= q.num_vertices() {
            return Err(Error::NoSuchVertex(v.to_string()));
        }
        let paths = algebra.paths_from(v);
        // position of each basis path inside its target space
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); q.num_vertices()];
        for &i in &paths {
            at[algebra.basis()[i].target].push(i);
        }
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let mut mats = Vec::with_capacity(q.num_arrows());
        for (a, arrow) in q.arrows().iter().enumerate() {
            let mut m = Mat::zeros(field, dims[arrow.target], dims[arrow.source]);
            for (col, &i) in at[arrow.source].iter().enumerate() {
                let p = &algebra.basis()[i];
                let mut word = vec![a];
                word.extend_from_slice(&p.arrows);
                if let Some(j) = algebra.basis_index(v, &word) {
                    let row = at[arrow.target].iter().position(|&x| x == j).expect("target path");
                    m.set(row, col, &field.one());
                }
            }
            mats.push(m);
        }
        Ok(Representation { algebra: algebra.clone(), field, dims, mats })
    }

    /// Basis paths of `P(v)` at each vertex, in the order used by [`Representation::projective`].
    pub fn projective_basis(algebra: &BoundQuiverAlgebra, v: usize) -> Vec<Vec<usize>> {
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); algebra.num_vertices()];
        for i in algebra.paths_from(v) {
            at[algebra.basis()[i].target].push(i);
        }
        at
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        other.check_compatible_with(&self.algebra, self.field)?;
        Ok(Representation::direct_sum_of(&self.algebra, self.field, &[self, other]))
    }

    pub fn direct_sum_of(
        algebra: &Arc<BoundQuiverAlgebra>,
        field: Field,
        parts: &[&Representation],
    ) -> Representation {
        let n = algebra.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let mats = (0..algebra.quiver().num_arrows())
            .map(|a| {
                let blocks: Vec<&Mat> = parts.iter().map(|p| &p.mats[a]).collect();
                Mat::direct_sum(field, &blocks)
            })
            .collect();
        Representation { algebra: algebra.clone(), field, dims, mats }
    }

    pub(crate) fn check_compatible_with(
        &self,
        algebra: &Arc<BoundQuiverAlgebra>,
        field: Field,
    ) -> Result<()> {
        if !(Arc::ptr_eq(&self.algebra, algebra) || *self.algebra == **algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if self.field != field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub(crate) fn check_compatible(&self, other: &Representation) -> Result<()> {
        other.check_compatible_with(&self.algebra, self.field)
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &Mat {
        &self.mats[arrow]
    }

    pub fn arrow_matrix(&self, name: &str) -> Result<&Mat> {
        Ok(&self.mats[self.algebra.quiver().arrow_index(name)?])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Composite along a word in composition order (rightmost applied first).
    pub fn word_matrix(&self, word: &[usize]) -> Mat {
        let q = self.algebra.quiver();
        let Some(&last) = word.last() else {
            panic!("word_matrix needs a nonempty word");
        };
        let mut acc = Mat::identity(self.field, self.dims[q.arrows()[last].source]);
        for &a in word.iter().rev() {
            acc = self.mats[a].mul(&acc);
        }
        acc
    }

    /// Canonical ordering key: dimension vector, then matrix entries.
    pub fn sort_key(&self) -> (Vec<usize>, Vec<Mat>) {
        (self.dims.clone(), self.mats.clone())
    }

    /// The submodule spanned by the columns of the given per-vertex inclusion
    /// matrices (each of full column rank), together with the inclusion itself.
    pub fn submodule(&self, incl: &[Mat]) -> Result<(Representation, Morphism)> {
        let q = self.algebra.quiver();
        let dims: Vec<usize> = incl.iter().map(Mat::cols).collect();
        let mut mats = Vec::with_capacity(q.num_arrows());
        for (a, arrow) in q.arrows().iter().enumerate() {
            let img = self.mats[a].mul(&incl[arrow.source]);
            let m = incl[arrow.target].solve(&img).ok_or_else(|| {
                Error::PreconditionFailed(format!("subspace not invariant under {}", arrow.name))
            })?;
            mats.push(m);
        }
        let sub = Representation { algebra: self.algebra.clone(), field: self.field, dims, mats };
        Ok((sub, Morphism(incl.to_vec())))
    }

    /// Quotient by an invariant subspace given by spanning columns (rank
    /// deficiency allowed), with the projection.
    pub fn quotient(&self, span: &[Mat]) -> Result<(Representation, Morphism)> {
        let q = self.algebra.quiver();
        let proj: Vec<Mat> = span.iter().map(Mat::left_null_space).collect();
        let sections: Vec<Mat> = proj
            .iter()
            .map(|p| {
                p.solve(&Mat::identity(self.field, p.rows()))
                    .expect("projection onto a cokernel is surjective")
            })
            .collect();
        let dims: Vec<usize> = proj.iter().map(Mat::rows).collect();
        let mut mats = Vec::with_capacity(q.num_arrows());
        for (a, arrow) in q.arrows().iter().enumerate() {
            // the induced map is well defined iff the subspace is invariant
            let image_of_sub = proj[arrow.target].mul(&self.mats[a]).mul(&span[arrow.source]);
            if !image_of_sub.is_zero() {
                return Err(Error::PreconditionFailed(format!(
                    "subspace not invariant under {}",
                    arrow.name
                )));
            }
            mats.push(proj[arrow.target].mul(&self.mats[a]).mul(&sections[arrow.source]));
        }
        let quo = Representation { algebra: self.algebra.clone(), field: self.field, dims, mats };
        Ok((quo, Morphism(proj)))
    }
}
