//! Projective covers, minimal projective resolutions, global dimension and Ext¹
//! with explicit middle terms.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::par::{self, Execution};
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::{hom_basis, Morphism, Representation};

/// A homological dimension that may only be bounded from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    Exact(usize),
    AtLeast(usize),
}

impl Dimension {
    pub fn exact(self) -> Option<usize> {
        match self {
            Dimension::Exact(d) => Some(d),
            Dimension::AtLeast(_) => None,
        }
    }

    fn lower_bound(self) -> usize {
        match self {
            Dimension::Exact(d) | Dimension::AtLeast(d) => d,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Exact(d) => write!(f, "{d}"),
            Dimension::AtLeast(d) => write!(f, ">= {d}"),
        }
    }
}

pub const DEFAULT_CAP: usize = 10;

/// `P → M` with `P = ⊕_v P(v)^{m_v}`, together with its kernel.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: Representation,
    /// Multiplicity of each `P(v)`.
    pub multiplicities: Vec<usize>,
    /// Vertex of each indecomposable summand, in block order.
    pub summands: Vec<usize>,
    pub epi: Morphism,
    pub kernel: Representation,
    /// `kernel → projective`.
    pub inclusion: Morphism,
}

/// Columns of the identity completing the column space of `span` to `k^n`.
fn complement_columns(field: Field, n: usize, span: &Mat) -> Vec<usize> {
    let r = span.cols();
    let aug = Mat::hstack(field, n, &[span, &Mat::identity(field, n)]);
    aug.reduce().pivots.into_iter().filter(|&c| c >= r).map(|c| c - r).collect()
}

/// `rad(M)_v = Σ_{a: · → v} im M_a`, as spanning columns.
fn radical_span(m: &Representation, v: usize) -> Mat {
    let q = m.algebra().quiver();
    let parts: Vec<&Mat> = q.in_arrows(v).into_iter().map(|a| m.mat(a)).collect();
    Mat::hstack(m.field(), m.dims()[v], &parts)
}

pub fn projective_cover(m: &Representation) -> Result<ProjectiveCover> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let alg = m.algebra();
    let field = m.field();
    let n = alg.num_vertices();
    // generators: a basis of a complement of rad(M) at each vertex
    let mut gens: Vec<(usize, Mat)> = Vec::new();
    for v in 0..n {
        let rad = radical_span(m, v);
        for j in complement_columns(field, m.dims()[v], &rad) {
            gens.push((v, Mat::identity(field, m.dims()[v]).column(j)));
        }
    }
    let mut multiplicities = vec![0; n];
    let mut parts = Vec::with_capacity(gens.len());
    for (v, _) in &gens {
        multiplicities[*v] += 1;
        parts.push(Representation::projective(alg, field, *v)?);
    }
    let refs: Vec<&Representation> = parts.iter().collect();
    let projective = Representation::direct_sum_of(alg, field, &refs);
    // a basis path p of P(v) goes to M_p · x
    let paths: Vec<Vec<Vec<usize>>> =
        gens.iter().map(|(v, _)| Representation::projective_basis(alg, *v)).collect();
    let epi = Morphism(
        (0..n)
            .map(|w| {
                let cols: Vec<Mat> = gens
                    .iter()
                    .zip(&paths)
                    .flat_map(|((_, x), at)| {
                        at[w].iter().map(move |&i| {
                            let word = &alg.basis()[i].arrows;
                            if word.is_empty() {
                                x.clone()
                            } else {
                                m.word_matrix(word).mul(x)
                            }
                        })
                    })
                    .collect();
                let refs: Vec<&Mat> = cols.iter().collect();
                Mat::hstack(field, m.dims()[w], &refs)
            })
            .collect(),
    );
    debug_assert!(epi.intertwines(&projective, m));
    let incl: Vec<Mat> = epi.0.iter().map(Mat::null_space).collect();
    let (kernel, inclusion) = projective.submodule(&incl)?;
    Ok(ProjectiveCover {
        projective,
        multiplicities,
        summands: gens.iter().map(|(v, _)| *v).collect(),
        epi,
        kernel,
        inclusion,
    })
}

/// `… → P_1 → P_0 → M → 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Representation,
    /// Projective terms `P_0, P_1, …`.
    pub terms: Vec<Representation>,
    /// Multiplicity vector of each term.
    pub multiplicities: Vec<Vec<usize>>,
    /// `maps[0] : P_0 → M`, `maps[i] : P_i → P_{i-1}`.
    pub maps: Vec<Morphism>,
    /// The last syzygy computed (zero when the resolution is finite).
    pub last_kernel: Representation,
    pub length: Dimension,
}

impl Resolution {
    /// Consecutive maps compose to zero and the complex is exact.
    pub fn is_exact(&self) -> bool {
        for i in 1..self.maps.len() {
            if !self.maps[i - 1].compose(&self.maps[i]).is_zero() {
                return false;
            }
        }
        // exactness via dimension count at each vertex
        if !self.maps[0].0.iter().zip(self.module.dims()).all(|(e, &d)| e.rank() == d) {
            return false;
        }
        let n = self.module.dims().len();
        for i in 0..self.terms.len() {
            for v in 0..n {
                let dim = self.terms[i].dims()[v];
                let rank_out = self.maps[i].0[v].rank();
                let rank_in = match self.maps.get(i + 1) {
                    Some(d) => d.0[v].rank(),
                    None => self.last_kernel.dims()[v],
                };
                if dim - rank_out != rank_in {
                    return false;
                }
            }
        }
        true
    }
}

/// Minimal projective resolution, stopped after `cap` terms.
pub fn min_resolution(m: &Representation, cap: usize) -> Result<Resolution> {
    if cap == 0 {
        return Err(Error::BadParameter("resolution cap must be at least 1".into()));
    }
    let mut terms = Vec::new();
    let mut multiplicities = Vec::new();
    let mut maps = Vec::new();
    let mut current = m.clone();
    let mut prev_incl: Option<Morphism> = None;
    for i in 0..cap {
        let cover = projective_cover(&current)?;
        let map = match &prev_incl {
            Some(incl) => incl.compose(&cover.epi),
            None => cover.epi.clone(),
        };
        terms.push(cover.projective);
        multiplicities.push(cover.multiplicities);
        maps.push(map);
        if cover.kernel.is_zero() {
            return Ok(Resolution {
                module: m.clone(),
                terms,
                multiplicities,
                maps,
                last_kernel: cover.kernel,
                length: Dimension::Exact(i),
            });
        }
        prev_incl = Some(cover.inclusion);
        current = cover.kernel;
    }
    Ok(Resolution {
        module: m.clone(),
        terms,
        multiplicities,
        maps,
        last_kernel: current,
        length: Dimension::AtLeast(cap),
    })
}

pub fn projective_dimension(m: &Representation, cap: usize) -> Result<Dimension> {
    if m.is_zero() {
        return Ok(Dimension::Exact(0));
    }
    Ok(min_resolution(m, cap)?.length)
}

/// Maximum projective dimension over the simples.
pub fn global_dimension(
    alg: &Arc<BoundQuiverAlgebra>,
    field: Field,
    cap: usize,
    exec: Execution,
) -> Result<Dimension> {
    let dims: Vec<Result<Dimension>> = par::map_range(exec, alg.num_vertices(), |v| {
        projective_dimension(&Representation::simple(alg, field, v)?, cap)
    });
    let mut best = Dimension::Exact(0);
    for d in dims {
        let d = d?;
        best = match (best, d) {
            (Dimension::AtLeast(_), _) => best,
            (_, Dimension::AtLeast(_)) => d,
            _ if d.lower_bound() > best.lower_bound() => d,
            _ => best,
        };
    }
    Ok(best)
}

/// A short exact sequence `0 → N → E → M → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Representation,
    /// `N → E`
    pub inclusion: Morphism,
    /// `E → M`
    pub projection: Morphism,
}

impl Extension {
    /// Injective, surjective, composite zero and dimensions additive.
    pub fn is_short_exact(&self, m: &Representation, n: &Representation) -> bool {
        let inj = self.inclusion.0.iter().zip(n.dims()).all(|(f, &d)| f.rank() == d);
        let surj = self.projection.0.iter().zip(m.dims()).all(|(f, &d)| f.rank() == d);
        let zero = self.projection.compose(&self.inclusion).is_zero();
        let additive =
            (0..m.dims().len()).all(|v| self.middle.dims()[v] == m.dims()[v] + n.dims()[v]);
        inj && surj && zero && additive
            && self.inclusion.intertwines(n, &self.middle)
            && self.projection.intertwines(&self.middle, m)
    }
}

/// `Ext¹(M, N) = coker(Hom(P_0, N) → Hom(ΩM, N))`, with representatives.
#[derive(Clone, Debug)]
pub struct Ext1Space {
    pub source: Representation,
    pub target: Representation,
    /// Cocycles `ψ : ΩM → N` whose classes form a basis.
    pub classes: Vec<Morphism>,
    cover: Option<ProjectiveCover>,
}

impl Ext1Space {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// The extension attached to `Σ c_i · class_i`, built as a pushout of
    /// `ΩM → P_0` along the cocycle.
    pub fn middle_term(&self, coeffs: &[Scalar]) -> Result<Extension> {
        if coeffs.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for an Ext space of dimension {}",
                coeffs.len(),
                self.dim()
            )));
        }
        let m = &self.source;
        let n = &self.target;
        let field = m.field();
        let Some(cover) = &self.cover else {
            // M = 0: the only extension is N itself
            return Ok(Extension {
                middle: n.clone(),
                inclusion: Morphism::identity(n),
                projection: Morphism::zero(n, m),
            });
        };
        let mut psi = Morphism::zero(&cover.kernel, n);
        for (c, b) in coeffs.iter().zip(&self.classes) {
            psi = psi.add(&b.scale(c));
        }
        let sum = n.direct_sum(&cover.projective)?;
        let nv = m.dims().len();
        let span: Vec<Mat> = (0..nv)
            .map(|v| {
                let k = cover.kernel.dims()[v];
                Mat::vstack(field, k, &[&psi.0[v].neg(), &cover.inclusion.0[v]])
            })
            .collect();
        let (middle, proj) = sum.quotient(&span)?;
        let inclusion = Morphism(
            (0..nv)
                .map(|v| {
                    let dn = n.dims()[v];
                    let dp = cover.projective.dims()[v];
                    let embed = Mat::vstack(
                        field,
                        dn,
                        &[&Mat::identity(field, dn), &Mat::zeros(field, dp, dn)],
                    );
                    proj.0[v].mul(&embed)
                })
                .collect(),
        );
        let projection = Morphism(
            (0..nv)
                .map(|v| {
                    let dn = n.dims()[v];
                    let to_m = Mat::hstack(
                        field,
                        m.dims()[v],
                        &[&Mat::zeros(field, m.dims()[v], dn), &cover.epi.0[v]],
                    );
                    let section = proj.0[v]
                        .solve(&Mat::identity(field, middle.dims()[v]))
                        .expect("quotient maps are surjective");
                    to_m.mul(&section)
                })
                .collect(),
        );
        Ok(Extension { middle, inclusion, projection })
    }
}

pub fn ext1(m: &Representation, n: &Representation) -> Result<Ext1Space> {
    m.check_compatible(n)?;
    if m.is_zero() {
        return Ok(Ext1Space { source: m.clone(), target: n.clone(), classes: vec![], cover: None });
    }
    let cover = projective_cover(m)?;
    let field = m.field();
    let hom_kn = hom_basis(&cover.kernel, n)?;
    let h = hom_kn.dim();
    if h == 0 {
        return Ok(Ext1Space {
            source: m.clone(),
            target: n.clone(),
            classes: vec![],
            cover: Some(cover),
        });
    }
    let flatten = |f: &Morphism| -> Mat {
        let entries: Vec<Scalar> = f.0.iter().flat_map(Mat::entries).collect();
        let len = entries.len();
        Mat::from_scalars(field, len, 1, entries)
    };
    let basis_cols: Vec<Mat> = hom_kn.basis.iter().map(flatten).collect();
    let basis_refs: Vec<&Mat> = basis_cols.iter().collect();
    let basis_mat = Mat::hstack(field, basis_cols[0].rows(), &basis_refs);
    let hom_pn = hom_basis(&cover.projective, n)?;
    let restricted: Vec<Mat> = hom_pn
        .basis
        .iter()
        .map(|f| {
            let coords = basis_mat.solve(&flatten(&f.compose(&cover.inclusion)));
            coords.expect("restriction of a module map is a module map")
        })
        .collect();
    let refs: Vec<&Mat> = restricted.iter().collect();
    let image = Mat::hstack(field, h, &refs);
    let classes = complement_columns(field, h, &image)
        .into_iter()
        .map(|j| hom_kn.basis[j].clone())
        .collect();
    Ok(Ext1Space { source: m.clone(), target: n.clone(), classes, cover: Some(cover) })
}

/// `Ext²(M, N) = Ext¹(ΩM, N)`.
pub fn ext2_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_compatible(n)?;
    if m.is_zero() {
        return Ok(0);
    }
    let cover = projective_cover(m)?;
    Ok(ext1(&cover.kernel, n)?.dim())
}

/// `E = (Cᵀ)⁻¹` so that `⟨x, y⟩ = xᵀ E y` is the Euler form of the algebra.
pub fn euler_matrix(alg: &BoundQuiverAlgebra) -> Result<Mat> {
    let q = Field::Rationals;
    let n = alg.num_vertices();
    let c: Vec<i64> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| alg.cartan()[i][j] as i64)
        .collect();
    let cartan = Mat::from_i64(q, n, n, &c);
    cartan
        .transpose()
        .inverse()
        .ok_or_else(|| Error::PreconditionFailed("Cartan matrix is singular".into()))
}

/// `⟨x, y⟩` as an exact rational number.
pub fn euler_form(alg: &BoundQuiverAlgebra, x: &[usize], y: &[usize]) -> Result<Scalar> {
    let q = Field::Rationals;
    let e = euler_matrix(alg)?;
    let n = alg.num_vertices();
    let xs: Vec<i64> = x.iter().map(|&v| v as i64).collect();
    let ys: Vec<i64> = y.iter().map(|&v| v as i64).collect();
    let xm = Mat::from_i64(q, 1, n, &xs);
    let ym = Mat::from_i64(q, n, 1, &ys);
    Ok(xm.mul(&e).mul(&ym).get(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{example_one, Quiver};
    use crate::rep::are_isomorphic;

    fn lam(n: usize) -> Arc<BoundQuiverAlgebra> {
        Arc::new(example_one(n).unwrap())
    }

    #[test]
    fn covers_over_lambda3() {
        let alg = lam(3);
        let f = Field::Prime(5);
        let p3 = Representation::projective(&alg, f, 2).unwrap();
        let c = projective_cover(&p3).unwrap();
        assert_eq!(c.multiplicities, vec![0, 0, 1]);
        assert!(c.kernel.is_zero());
        assert!(c.epi.is_iso());

        let s3 = Representation::simple(&alg, f, 2).unwrap();
        let c = projective_cover(&s3).unwrap();
        assert_eq!(c.multiplicities, vec![0, 0, 1]);
        assert_eq!(c.kernel.dims(), &[1, 1, 0]);

        let s2 = Representation::simple(&alg, f, 1).unwrap();
        let c = projective_cover(&s2).unwrap();
        assert_eq!(c.multiplicities, vec![0, 1, 0]);
        let s1 = Representation::simple(&alg, f, 0).unwrap();
        assert!(are_isomorphic(&c.kernel, &s1).unwrap());

        assert_eq!(
            projective_cover(&Representation::zero(&alg, f)).unwrap_err(),
            Error::ZeroModule
        );
    }

    #[test]
    fn resolutions_of_simples() {
        let alg = lam(3);
        let f = Field::Prime(5);
        let res = min_resolution(&Representation::simple(&alg, f, 2).unwrap(), 10).unwrap();
        assert_eq!(res.length, Dimension::Exact(2));
        assert_eq!(res.multiplicities, vec![vec![0, 0, 1], vec![1, 1, 0], vec![1, 0, 0]]);
        assert!(res.is_exact());

        let res = min_resolution(&Representation::simple(&alg, f, 0).unwrap(), 10).unwrap();
        assert_eq!(res.length, Dimension::Exact(0));

        let res = min_resolution(&Representation::simple(&alg, f, 1).unwrap(), 10).unwrap();
        assert_eq!(res.length, Dimension::Exact(1));
        assert_eq!(res.multiplicities, vec![vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(res.is_exact());
    }

    #[test]
    fn global_dimensions() {
        for n in [3, 6] {
            for exec in [Execution::Sequential, Execution::Parallel] {
                let d = global_dimension(&lam(n), Field::Rationals, DEFAULT_CAP, exec).unwrap();
                assert_eq!(d, Dimension::Exact(2));
            }
        }
        let a2 = Quiver::new(&["1", "2"], &[("a", "2", "1")]).unwrap();
        let a2 = Arc::new(BoundQuiverAlgebra::relation_free(a2).unwrap());
        assert_eq!(
            global_dimension(&a2, Field::Prime(2), 10, Execution::Sequential).unwrap(),
            Dimension::Exact(1)
        );
        let ss = Quiver::new::<&str>(&["1", "2"], &[]).unwrap();
        let ss = Arc::new(BoundQuiverAlgebra::relation_free(ss).unwrap());
        assert_eq!(
            global_dimension(&ss, Field::Prime(2), 10, Execution::Sequential).unwrap(),
            Dimension::Exact(0)
        );
    }

    #[test]
    fn cap_is_reported() {
        let alg = lam(3);
        let s3 = Representation::simple(&alg, Field::Prime(3), 2).unwrap();
        assert_eq!(min_resolution(&s3, 2).unwrap().length, Dimension::AtLeast(2));
    }

    #[test]
    fn ext_between_simples() {
        let alg = lam(3);
        let f = Field::Prime(5);
        let s = |v| Representation::simple(&alg, f, v).unwrap();
        let e = ext1(&s(1), &s(0)).unwrap();
        assert_eq!(e.dim(), 1);
        let ext = e.middle_term(&[f.one()]).unwrap();
        assert!(ext.is_short_exact(&s(1), &s(0)));
        assert!(!ext.middle.mat(0).is_zero());
        let split = e.middle_term(&[f.zero()]).unwrap();
        assert!(split.is_short_exact(&s(1), &s(0)));
        assert!(are_isomorphic(&split.middle, &s(1).direct_sum(&s(0)).unwrap()).unwrap());
        assert_eq!(ext1(&s(0), &s(1)).unwrap().dim(), 0);
        // the relation alpha*beta gives Ext²(S3, S1) = 1
        assert_eq!(ext2_dim(&s(2), &s(0)).unwrap(), 1);
    }

    #[test]
    fn projectives_have_no_extensions() {
        let alg = lam(4);
        let f = Field::Prime(3);
        for v in 0..4 {
            let p = Representation::projective(&alg, f, v).unwrap();
            for w in 0..4 {
                let s = Representation::simple(&alg, f, w).unwrap();
                assert_eq!(ext1(&p, &s).unwrap().dim(), 0);
            }
        }
    }

    #[test]
    fn euler_matrix_of_lambda3() {
        let alg = lam(3);
        let e = euler_matrix(&alg).unwrap();
        let q = Field::Rationals;
        // C = [[1,1,1],[0,1,1],[0,0,1]]
        assert_eq!(e, Mat::from_rows(q, &[vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 1]]));
        // ⟨S3, S1⟩ = 0 − 1 (gamma) + 1 (relation) = 0
        assert_eq!(euler_form(&alg, &[0, 0, 1], &[1, 0, 0]).unwrap(), q.from_i64(0));
    }
}
