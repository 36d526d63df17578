use serde::{Deserialize, Serialize};

use crate::exactla::eigen::eigenvalues_in_field;
use crate::exactla::{Field, Mat, Scalar};

use super::hom::{hom_basis, scan_fp, scan_size, Morphism};
use super::Representation;

/// Upper bound on the number of elements any exhaustive scan may visit.
pub const SCAN_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Verdict::Unknown(_))
    }

    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

/// Brick = one-dimensional `End`; Schur = `End` is a division ring;
/// indecomposable = `End` is local.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndAnalysis {
    pub dim_end: usize,
    pub is_brick: bool,
    pub is_schur: Verdict,
    pub is_indecomposable: Verdict,
}

pub fn end_analysis(m: &Representation) -> EndAnalysis {
    let basis = hom_basis(m, m).expect("a module is compatible with itself").basis;
    analyse_basis(m, &basis)
}

pub(crate) fn analyse_basis(m: &Representation, basis: &[Morphism]) -> EndAnalysis {
    let e = basis.len();
    if m.is_zero() {
        return EndAnalysis {
            dim_end: 0,
            is_brick: false,
            is_schur: Verdict::No,
            is_indecomposable: Verdict::No,
        };
    }
    if e == 1 {
        return EndAnalysis {
            dim_end: 1,
            is_brick: true,
            is_schur: Verdict::Yes,
            is_indecomposable: Verdict::Yes,
        };
    }
    let algebra = EndAlgebra { module: m, basis };
    let is_indecomposable = algebra.local_verdict();
    let is_schur = if is_indecomposable.is_no() {
        Verdict::No
    } else {
        algebra.division_verdict()
    };
    EndAnalysis { dim_end: e, is_brick: false, is_schur, is_indecomposable }
}

struct EndAlgebra<'a> {
    module: &'a Representation,
    basis: &'a [Morphism],
}

/// Fitting: an endomorphism of an indecomposable module is nilpotent or invertible.
fn nil_or_iso(f: &Morphism) -> bool {
    f.is_iso() || f.is_nilpotent()
}

impl EndAlgebra<'_> {
    fn field(&self) -> Field {
        self.module.field()
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn element(&self, coeffs: &[Scalar]) -> Morphism {
        let mut acc = Morphism::zero(self.module, self.module);
        for (c, b) in coeffs.iter().zip(self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    fn scan_allowed(&self, len: usize) -> bool {
        match self.field() {
            Field::Prime(p) => scan_size(p, len) <= SCAN_CAP as u128,
            Field::Rationals => false,
        }
    }

    /// Dickson's trace-form criterion needs `char = 0` or `char > dim End`.
    fn trace_form_valid(&self) -> bool {
        match self.field() {
            Field::Rationals => true,
            Field::Prime(p) => p as usize > self.dim(),
        }
    }

    fn flatten(&self, f: &Morphism) -> Mat {
        let field = self.field();
        let entries: Vec<Scalar> = f.0.iter().flat_map(Mat::entries).collect();
        let n = entries.len();
        Mat::from_scalars(field, n, 1, entries)
    }

    /// Radical as coefficient columns (`dim × r`), via the kernel of
    /// `(x, y) ↦ tr(L_{xy})` on the left regular representation.
    fn radical(&self) -> Mat {
        let field = self.field();
        let e = self.dim();
        let cols: Vec<Mat> = self.basis.iter().map(|b| self.flatten(b)).collect();
        let refs: Vec<&Mat> = cols.iter().collect();
        let v = Mat::hstack(field, cols[0].rows(), &refs);
        // coords[i][j] = coordinates of b_i b_j
        let coords: Vec<Vec<Mat>> = (0..e)
            .map(|i| {
                (0..e)
                    .map(|j| {
                        let prod = self.flatten(&self.basis[i].compose(&self.basis[j]));
                        v.solve(&prod).expect("End is closed under composition")
                    })
                    .collect()
            })
            .collect();
        // tr(L_{b_k}) = Σ_j coord_j(b_k b_j)
        let tr_basis: Vec<Scalar> = (0..e)
            .map(|k| (0..e).fold(field.zero(), |acc, j| field.add(&acc, &coords[k][j].get(j, 0))))
            .collect();
        let mut form = Mat::zeros(field, e, e);
        for i in 0..e {
            for j in 0..e {
                let t = (0..e).fold(field.zero(), |acc, k| {
                    field.add(&acc, &field.mul(&coords[i][j].get(k, 0), &tr_basis[k]))
                });
                form.set(i, j, &t);
            }
        }
        form.null_space()
    }

    /// Coefficient vectors of basis elements spanning a complement of `rad`.
    fn complement(&self, rad: &Mat) -> Vec<Vec<Scalar>> {
        let field = self.field();
        let e = self.dim();
        let r = rad.cols();
        let aug = Mat::hstack(field, e, &[rad, &Mat::identity(field, e)]);
        aug.reduce()
            .pivots
            .into_iter()
            .filter(|&c| c >= r)
            .map(|c| {
                let mut v = vec![field.zero(); e];
                v[c - r] = field.one();
                v
            })
            .collect()
    }

    fn local_verdict(&self) -> Verdict {
        let field = self.field();
        // cheap witness first
        if self.basis.iter().any(|b| !nil_or_iso(b)) {
            return Verdict::No;
        }
        if let Field::Prime(p) = field {
            if self.scan_allowed(self.dim()) {
                let found = scan_fp(p, self.dim(), |c| !nil_or_iso(&self.element(c)));
                return Verdict::from_bool(!found);
            }
        }
        if !self.trace_form_valid() {
            return Verdict::Unknown(format!(
                "End has dimension {} over {field}: too large to scan and trace form invalid",
                self.dim()
            ));
        }
        let rad = self.radical();
        let comp = self.complement(&rad);
        if comp.len() == 1 {
            return Verdict::Yes;
        }
        let lift = |c: &[Scalar]| -> Morphism {
            let mut coeffs = vec![field.zero(); self.dim()];
            for (cj, v) in c.iter().zip(&comp) {
                for (k, x) in v.iter().enumerate() {
                    coeffs[k] = field.add(&coeffs[k], &field.mul(cj, x));
                }
            }
            self.element(&coeffs)
        };
        if let Field::Prime(p) = field {
            if self.scan_allowed(comp.len()) {
                // nilpotency and invertibility are decided modulo the radical
                let found = scan_fp(p, comp.len(), |c| !nil_or_iso(&lift(c)));
                return Verdict::from_bool(!found);
            }
        }
        // search for f − λ·1 that is neither nilpotent nor invertible
        let id = Morphism::identity(self.module);
        for v in &comp {
            let f = self.element(v);
            for block in &f.0 {
                if block.rows() == 0 {
                    continue;
                }
                let Some(eigs) = eigenvalues_in_field(block) else {
                    continue;
                };
                for l in eigs {
                    if !nil_or_iso(&f.sub(&id.scale(&l))) {
                        return Verdict::No;
                    }
                }
            }
        }
        Verdict::Unknown(format!(
            "End/rad has dimension {} and no splitting witness was found",
            comp.len()
        ))
    }

    fn division_verdict(&self) -> Verdict {
        let field = self.field();
        if self.basis.iter().any(|b| !b.is_iso()) {
            return Verdict::No;
        }
        if let Field::Prime(p) = field {
            if self.scan_allowed(self.dim()) {
                let found = scan_fp(p, self.dim(), |c| {
                    c.iter().any(|x| !x.is_zero()) && !self.element(c).is_iso()
                });
                return Verdict::from_bool(!found);
            }
        }
        if self.trace_form_valid() && self.radical().cols() > 0 {
            return Verdict::No;
        }
        Verdict::Unknown(format!(
            "semisimple End of dimension {} over {field} is not scanned",
            self.dim()
        ))
    }
}
