use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};

use super::endo::SCAN_CAP;
use super::Representation;

/// A family of per-vertex linear maps `φ_v : M_v → N_v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism(pub Vec<Mat>);

impl Morphism {
    pub fn zero(m: &Representation, n: &Representation) -> Morphism {
        let f = m.field();
        Morphism(m.dims().iter().zip(n.dims()).map(|(&a, &b)| Mat::zeros(f, b, a)).collect())
    }

    pub fn identity(m: &Representation) -> Morphism {
        Morphism(m.dims().iter().map(|&d| Mat::identity(m.field(), d)).collect())
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism(self.0.iter().zip(&other.0).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        Morphism(self.0.iter().zip(&other.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism(self.0.iter().map(|a| a.scale(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Mat::is_zero)
    }

    /// Invertible at every vertex.
    pub fn is_iso(&self) -> bool {
        self.0.iter().all(Mat::is_invertible)
    }

    /// Nilpotent at every vertex (endomorphisms only).
    pub fn is_nilpotent(&self) -> bool {
        self.0.iter().all(Mat::is_nilpotent)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.0.iter().map(Mat::rank).collect()
    }

    /// `φ_t · M_a = N_a · φ_s` for every arrow.
    pub fn intertwines(&self, m: &Representation, n: &Representation) -> bool {
        m.algebra().quiver().arrows().iter().enumerate().all(|(a, arrow)| {
            self.0[arrow.target].mul(m.mat(a)) == n.mat(a).mul(&self.0[arrow.source])
        })
    }
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coeffs: &[Scalar]) -> Morphism {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut acc = Morphism::zero(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Offsets of the `φ_v` blocks inside the unknown vector.
fn layout(m: &Representation, n: &Representation) -> Vec<usize> {
    let mut off = Vec::with_capacity(m.dims().len() + 1);
    let mut acc = 0;
    for (&a, &b) in m.dims().iter().zip(n.dims()) {
        off.push(acc);
        acc += a * b;
    }
    off.push(acc);
    off
}

/// Coefficient matrix of `(φ_v) ↦ (φ_t M_a − N_a φ_s)_a`; unknowns are the
/// `φ_v` entries, row-major, vertex by vertex.
pub(crate) fn intertwiner_system(m: &Representation, n: &Representation) -> Mat {
    let f = m.field();
    let arrows = m.algebra().quiver().arrows();
    let off = layout(m, n);
    let unknowns = *off.last().unwrap();
    let eqs: usize = arrows.iter().map(|a| n.dims()[a.target] * m.dims()[a.source]).sum();
    let mut sys = Mat::zeros(f, eqs, unknowns);
    let mut row = 0;
    for (a, arrow) in arrows.iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (ma, na) = (m.mat(a), n.mat(a));
        let (ms, mt, ns) = (m.dims()[s], m.dims()[t], n.dims()[s]);
        for i in 0..n.dims()[t] {
            for j in 0..ms {
                // (φ_t M_a)_{ij} = Σ_k φ_t[i,k] M_a[k,j]
                for k in 0..mt {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let col = off[t] + i * mt + k;
                        let cur = sys.get(row, col);
                        sys.set(row, col, &f.add(&cur, &c));
                    }
                }
                // −(N_a φ_s)_{ij} = −Σ_k N_a[i,k] φ_s[k,j]
                for k in 0..ns {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let col = off[s] + k * ms + j;
                        let cur = sys.get(row, col);
                        sys.set(row, col, &f.sub(&cur, &c));
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

pub(crate) fn unpack(m: &Representation, n: &Representation, v: &Mat) -> Morphism {
    let f = m.field();
    let off = layout(m, n);
    let blocks = m
        .dims()
        .iter()
        .zip(n.dims())
        .enumerate()
        .map(|(vtx, (&cols, &rows))| {
            let entries = (0..rows * cols).map(|k| v.get(off[vtx] + k, 0)).collect();
            Mat::from_scalars(f, rows, cols, entries)
        })
        .collect();
    Morphism(blocks)
}

/// Basis of `Hom(M, N)` as the null space of the intertwiner system.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.check_compatible(n)?;
    let null = intertwiner_system(m, n).null_space();
    let basis = (0..null.cols()).map(|k| unpack(m, n, &null.column(k))).collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis })
}

/// Calls `visit` on every coefficient vector of `F_p^len` until it returns `true`.
pub(crate) fn scan_fp(p: u32, len: usize, mut visit: impl FnMut(&[Scalar]) -> bool) -> bool {
    let mut digits = vec![0u32; len];
    loop {
        let coeffs: Vec<Scalar> = digits.iter().map(|&d| Scalar::Fp(d)).collect();
        if visit(&coeffs) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == len {
                return false;
            }
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// `p^e`, saturating.
pub(crate) fn scan_size(p: u32, e: usize) -> u128 {
    (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// Exhaustive isomorphism test.
///
/// Over `F_p` every element of `Hom(M, N)` is tried when `p^dim ≤ 2²⁰`. Over
/// `Q` the determinant of a generic element is a polynomial of degree
/// `dim M` in the Hom coordinates, so it is nonzero somewhere on the grid
/// `{0..=dim M}^h` iff it is not identically zero; the grid is scanned under
/// the same cap.
pub fn are_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    m.check_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m == n {
        return Ok(true);
    }
    let hom = hom_basis(m, n)?;
    let h = hom.dim();
    if m.is_zero() {
        return Ok(true);
    }
    if h == 0 {
        return Ok(false);
    }
    // dim End M = dim Hom(M, N) = dim End N is necessary
    let end_m = hom_basis(m, m)?.dim();
    if end_m != h || hom_basis(n, n)?.dim() != h {
        return Ok(false);
    }
    match m.field() {
        Field::Prime(p) => {
            if scan_size(p, h) > SCAN_CAP as u128 {
                return Err(Error::Undecidable(format!("{p}^{h} Hom elements exceed the scan cap")));
            }
            Ok(scan_fp(p, h, |c| hom.element(c).is_iso()))
        }
        Field::Rationals => {
            let f = Field::Rationals;
            let side = m.total_dim() as u32 + 1;
            if scan_size(side, h) > SCAN_CAP as u128 {
                return Err(Error::Undecidable(format!(
                    "{side}^{h} grid points exceed the scan cap"
                )));
            }
            let mut digits = vec![0u32; h];
            loop {
                let coeffs: Vec<Scalar> = digits.iter().map(|&d| f.from_i64(d as i64)).collect();
                if hom.element(&coeffs).is_iso() {
                    return Ok(true);
                }
                let mut k = 0;
                loop {
                    if k == h {
                        return Ok(false);
                    }
                    digits[k] += 1;
                    if digits[k] < side {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
            }
        }
    }
}
