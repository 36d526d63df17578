//! Simple regular Kronecker modules over the two-vertex algebra `Λ′`
//! (arrows `alpha0, alpha1: 1 → 0`, `beta: 0 → 1`), regular-semisimplicity
//! testing, membership in the categories `C` and `D`, and the relative
//! `Ext¹_D` table.
//!
//! `C`: the restriction to the Kronecker arrows is a direct sum of simple
//! regular modules. `D`: there is a submodule `M′ ≅ R(∞)^s` with
//! `M/M′ ≅ ⊕ R(λ)`, `λ` finite, both with `beta = 0`.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::small::rank_mod_p;
use crate::exactla::{Field, Mat, Scalar};
use crate::homo::ext1;
use crate::par::{self, Execution};
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::{are_isomorphic, end_analysis, hom_basis, Representation, SCAN_CAP};
use crate::report::{Check, Status};

/// A point of `P¹(k) = k ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(Scalar),
    Infinity,
}

impl ProjPoint {
    /// `inf` (or `∞`) for the point at infinity, otherwise a field element.
    pub fn parse(field: Field, s: &str) -> Result<ProjPoint> {
        match s.trim() {
            "inf" | "∞" => Ok(ProjPoint::Infinity),
            t => Ok(ProjPoint::Finite(field.parse_scalar(t)?)),
        }
    }

    pub fn parse_list(field: Field, csv: &str) -> Result<Vec<ProjPoint>> {
        csv.split(',').map(|s| ProjPoint::parse(field, s)).collect()
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    /// All of `P¹(F_p)`, finite points ascending then `∞`.
    pub fn all(field: Field) -> Result<Vec<ProjPoint>> {
        if !field.is_finite() {
            return Err(Error::BadParameter("P1(Q) is infinite".into()));
        }
        let mut pts: Vec<ProjPoint> = field.elements().map(ProjPoint::Finite).collect();
        pts.push(ProjPoint::Infinity);
        Ok(pts)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Arrow and vertex positions of `Λ′`, looked up by name.
struct Kron {
    v0: usize,
    v1: usize,
    alpha0: usize,
    alpha1: usize,
    beta: usize,
}

impl Kron {
    fn of(alg: &BoundQuiverAlgebra) -> Result<Kron> {
        let q = alg.quiver();
        let k = Kron {
            v0: q.vertex_index("0")?,
            v1: q.vertex_index("1")?,
            alpha0: q.arrow_index("alpha0")?,
            alpha1: q.arrow_index("alpha1")?,
            beta: q.arrow_index("beta")?,
        };
        let arrows = q.arrows();
        for a in [k.alpha0, k.alpha1] {
            if (arrows[a].source, arrows[a].target) != (k.v1, k.v0) {
                return Err(Error::MalformedQuiver(format!("{} must go 1 -> 0", arrows[a].name)));
            }
        }
        if (arrows[k.beta].source, arrows[k.beta].target) != (k.v0, k.v1) {
            return Err(Error::MalformedQuiver("beta must go 0 -> 1".into()));
        }
        Ok(k)
    }
}

/// `R(λ)`: dims (1,1), `(α₀, α₁) = (1, λ)` for finite `λ`, `(0, 1)` for `∞`,
/// and `β = 0`.
pub fn simple_regular(
    alg: &Arc<BoundQuiverAlgebra>,
    lambda: &ProjPoint,
    field: Field,
) -> Result<Representation> {
    let k = Kron::of(alg)?;
    let (a0, a1) = match lambda {
        ProjPoint::Finite(x) => (field.one(), x.clone()),
        ProjPoint::Infinity => (field.zero(), field.one()),
    };
    let one_by_one = |s: Scalar| Mat::from_scalars(field, 1, 1, vec![s]);
    let mut mats = vec![Mat::zeros(field, 0, 0); 3];
    mats[k.alpha0] = one_by_one(a0);
    mats[k.alpha1] = one_by_one(a1);
    mats[k.beta] = one_by_one(field.zero());
    let mut dims = vec![0; 2];
    dims[k.v0] = 1;
    dims[k.v1] = 1;
    Representation::new(alg.clone(), field, dims, mats)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RegularFailure {
    /// Unequal dimensions or an identically singular pencil.
    NotRegular(String),
    /// Regular, but with a non-simple summand or a point outside the field.
    NotSemisimpleRegular(String),
}

impl fmt::Display for RegularFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegularFailure::NotRegular(why) => write!(f, "not regular: {why}"),
            RegularFailure::NotSemisimpleRegular(why) => write!(f, "not semisimple regular: {why}"),
        }
    }
}

/// Points with multiplicities, sorted.
pub type RegularDecomposition = std::result::Result<Vec<(ProjPoint, usize)>, RegularFailure>;

/// `x·α₀ + y·α₁`.
fn pencil(field: Field, a0: &Mat, a1: &Mat, x: &Scalar, y: &Scalar) -> Mat {
    Mat::lin_comb(field, a0.rows(), a0.cols(), &[(x.clone(), a0), (y.clone(), a1)])
}

/// The pencil vanishes at `(x : y)` exactly for `λ = −x/y`.
fn point_of(field: Field, x: &Scalar, y: &Scalar) -> ProjPoint {
    if y.is_zero() {
        ProjPoint::Infinity
    } else {
        ProjPoint::Finite(field.neg(&field.mul(x, &field.inv(y))))
    }
}

/// Pencil coordinates `(x, y)` of a point: `(−λ, 1)` or `(1, 0)`.
fn coords_of(field: Field, p: &ProjPoint) -> (Scalar, Scalar) {
    match p {
        ProjPoint::Finite(l) => (field.neg(l), field.one()),
        ProjPoint::Infinity => (field.one(), field.zero()),
    }
}

/// Decide whether the Kronecker restriction of `m` is a direct sum of simple
/// regular modules `R(λ)` with `λ ∈ P¹(k)`, and if so which.
///
/// For a Kronecker module with equal dimensions and a pencil that is not
/// identically singular (i.e. a regular module), the kernel of the pencil at
/// a point counts the summands of the tube at that point; the module is
/// semisimple regular with rational points exactly when those kernels add
/// up to the full dimension.
pub fn decompose_regular(m: &Representation) -> Result<RegularDecomposition> {
    let k = Kron::of(m.algebra())?;
    let field = m.field();
    let (d0, d1) = (m.dims()[k.v0], m.dims()[k.v1]);
    if d0 != d1 {
        return Ok(Err(RegularFailure::NotRegular(format!("dimensions ({d0},{d1}) differ"))));
    }
    let n = d0;
    let (a0, a1) = (m.mat(k.alpha0), m.mat(k.alpha1));
    if n == 0 {
        return Ok(Ok(Vec::new()));
    }
    // candidate points: all of P¹(F_p), or the eigenvalue points of a regular pencil over Q
    let candidates: Vec<ProjPoint> = match field {
        Field::Prime(p) => {
            let det = crate::exactla::poly::pencil_det(
                p,
                n,
                a0.residues().expect("prime field"),
                a1.residues().expect("prime field"),
            );
            if det.is_zero() {
                return Ok(Err(RegularFailure::NotRegular(
                    "det(x·alpha0 + y·alpha1) vanishes identically".into(),
                )));
            }
            ProjPoint::all(field)?
        }
        Field::Rationals => {
            // a nonzero binary form of degree n has at most n projective zeros
            let probes: Vec<(Scalar, Scalar)> = (0..=n as i64)
                .map(|i| if i == 0 { (field.zero(), field.one()) } else { (field.one(), field.from_i64(i - 1)) })
                .collect();
            let Some((c0, c1)) =
                probes.into_iter().find(|(x, y)| pencil(field, a0, a1, x, y).is_invertible())
            else {
                return Ok(Err(RegularFailure::NotRegular(format!(
                    "pencil singular at {} distinct points",
                    n + 1
                ))));
            };
            // (d0, d1) independent of (c0, c1)
            let (e0, e1) = if c0.is_zero() { (field.one(), field.zero()) } else { (field.zero(), field.one()) };
            let c = pencil(field, a0, a1, &c0, &c1);
            let d = pencil(field, a0, a1, &e0, &e1);
            let b = c.inverse().expect("probe is invertible").mul(&d);
            let Some(eigs) = crate::exactla::eigen::eigenvalues_in_field(&b) else {
                return Ok(Err(RegularFailure::NotSemisimpleRegular(
                    "characteristic polynomial too large to factor".into(),
                )));
            };
            // (d − μc) is singular at pencil coordinates (e0 − μc0, e1 − μc1)
            eigs.iter()
                .map(|mu| {
                    let x = field.sub(&e0, &field.mul(mu, &c0));
                    let y = field.sub(&e1, &field.mul(mu, &c1));
                    point_of(field, &x, &y)
                })
                .collect()
        }
    };
    let mut points = Vec::new();
    let mut total = 0;
    for pt in candidates {
        let (x, y) = coords_of(field, &pt);
        let kernel = n - pencil(field, a0, a1, &x, &y).rank();
        if kernel > 0 {
            total += kernel;
            points.push((pt, kernel));
        }
    }
    points.sort();
    if total != n {
        return Ok(Err(RegularFailure::NotSemisimpleRegular(format!(
            "pencil kernels at base-field points add up to {total}, not {n}"
        ))));
    }
    Ok(Ok(points))
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipWitness {
    /// Dimension vector of the trace of `R(∞)`.
    pub trace_dims: Vec<usize>,
    pub infinite_part: Option<Vec<(ProjPoint, usize)>>,
    pub finite_part: Option<Vec<(ProjPoint, usize)>>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub in_c: bool,
    pub in_d: bool,
    pub witness: MembershipWitness,
}

/// `C`- and `D`-membership, using the trace of `R(∞)` as the candidate `M′`.
pub fn membership(m: &Representation) -> Result<Membership> {
    let k = Kron::of(m.algebra())?;
    let field = m.field();
    let in_c = decompose_regular(m)?.is_ok();
    let r_inf = simple_regular(m.algebra(), &ProjPoint::Infinity, field)?;
    let homs = hom_basis(&r_inf, m)?;
    let incl: Vec<Mat> = (0..m.dims().len())
        .map(|v| {
            let cols: Vec<&Mat> = homs.basis.iter().map(|f| &f.0[v]).collect();
            Mat::hstack(field, m.dims()[v], &cols).column_basis()
        })
        .collect();
    let (trace, _) = m.submodule(&incl)?;
    let (quotient, _) = m.quotient(&incl)?;
    let mut witness = MembershipWitness {
        trace_dims: trace.dims().to_vec(),
        infinite_part: None,
        finite_part: None,
        reason: None,
    };
    let fail = |w: &mut MembershipWitness, why: String| {
        if w.reason.is_none() {
            w.reason = Some(why);
        }
    };
    if !trace.mat(k.beta).is_zero() {
        fail(&mut witness, "beta is nonzero on the trace of R(inf)".into());
    }
    match decompose_regular(&trace)? {
        Ok(pts) => {
            if pts.iter().any(|(p, _)| !p.is_infinite()) {
                fail(&mut witness, "trace of R(inf) has a finite summand".into());
            }
            witness.infinite_part = Some(pts);
        }
        Err(e) => fail(&mut witness, format!("trace: {e}")),
    }
    if !quotient.mat(k.beta).is_zero() {
        fail(&mut witness, "beta is nonzero on the quotient by the trace".into());
    }
    match decompose_regular(&quotient)? {
        Ok(pts) => {
            if pts.iter().any(|(p, _)| p.is_infinite()) {
                fail(&mut witness, "quotient by the trace has an R(inf) summand".into());
            }
            witness.finite_part = Some(pts);
        }
        Err(e) => fail(&mut witness, format!("quotient: {e}")),
    }
    let in_d = witness.reason.is_none();
    Ok(Membership { in_c, in_d, witness })
}

#[derive(Clone, Debug, Serialize)]
pub struct DExtCell {
    pub lambda: ProjPoint,
    pub mu: ProjPoint,
    /// `dim Ext¹(R(λ), R(μ))` in the whole module category.
    pub dim_ambient: usize,
    /// Ambient classes whose middle term lies in `D`.
    pub members: u128,
    /// `dim Ext¹_D`, present when those classes form a subspace.
    pub dim_d: Option<usize>,
    pub subspace_verified: bool,
}

/// `Ext¹_D(R(λ), R(μ))` by scanning every ambient class and testing its
/// middle term for `D`-membership.
pub fn ext1_d(
    alg: &Arc<BoundQuiverAlgebra>,
    lambda: &ProjPoint,
    mu: &ProjPoint,
    field: Field,
) -> Result<DExtCell> {
    let Field::Prime(p) = field else {
        return Err(Error::BadParameter("Ext_D tables need a prime field".into()));
    };
    let m = simple_regular(alg, lambda, field)?;
    let n = simple_regular(alg, mu, field)?;
    let ext = ext1(&m, &n)?;
    let e = ext.dim();
    let total = (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    if total > SCAN_CAP as u128 {
        return Err(Error::GuardTripped(format!("{p}^{e} ambient classes exceed the scan cap")));
    }
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut digits = vec![0u32; e];
    for _ in 0..total {
        let coeffs: Vec<Scalar> = digits.iter().map(|&d| Scalar::Fp(d)).collect();
        let ext_obj = ext.middle_term(&coeffs)?;
        if membership(&ext_obj.middle)?.in_d {
            members.push(digits.clone());
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    // a subset S of F_p^e is a subspace iff it is nonempty and |S| = p^{rank S}
    let rank = if members.is_empty() || e == 0 {
        0
    } else {
        let mut buf: Vec<u32> = members.concat();
        rank_mod_p(p, &mut buf, members.len(), e)
    };
    let count = members.len() as u128;
    let subspace_verified = count > 0 && count == (p as u128).pow(rank as u32);
    Ok(DExtCell {
        lambda: lambda.clone(),
        mu: mu.clone(),
        dim_ambient: e,
        members: count,
        dim_d: subspace_verified.then_some(rank),
        subspace_verified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DExtReport {
    pub field: Field,
    pub sample: Vec<ProjPoint>,
    /// Row `i`, column `j`: `Ext¹_D(R(sample[i]), R(sample[j]))`; `None` when
    /// the scan guard tripped.
    pub table: Vec<Vec<Option<DExtCell>>>,
    pub guard_trips: Vec<String>,
}

impl DExtReport {
    pub fn dims(&self) -> Vec<Vec<Option<usize>>> {
        self.table
            .iter()
            .map(|row| row.iter().map(|c| c.as_ref().and_then(|c| c.dim_d)).collect())
            .collect()
    }

    pub fn all_subspaces_verified(&self) -> bool {
        self.table.iter().flatten().all(|c| c.as_ref().is_some_and(|c| c.subspace_verified))
    }
}

/// The full `Ext¹_D` table over a sample of points.
pub fn verify_example2(
    alg: &Arc<BoundQuiverAlgebra>,
    field: Field,
    sample: &[ProjPoint],
    exec: Execution,
) -> Result<DExtReport> {
    if sample.is_empty() {
        return Err(Error::BadParameter("empty sample".into()));
    }
    for (i, x) in sample.iter().enumerate() {
        if sample[..i].contains(x) {
            return Err(Error::BadParameter(format!("point {x} repeated in the sample")));
        }
    }
    let s = sample.len();
    let cells = par::map_range(exec, s * s, |idx| {
        ext1_d(alg, &sample[idx / s], &sample[idx % s], field)
    });
    let mut table = vec![Vec::with_capacity(s); s];
    let mut guard_trips = Vec::new();
    for (idx, cell) in cells.into_iter().enumerate() {
        let (i, j) = (idx / s, idx % s);
        match cell {
            Ok(c) => table[i].push(Some(c)),
            Err(Error::GuardTripped(why)) => {
                guard_trips.push(format!("({}, {}): {why}", sample[i], sample[j]));
                table[i].push(None);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(DExtReport { field, sample: sample.to_vec(), table, guard_trips })
}

/// `1` exactly when `λ` is finite and `μ = ∞`.
pub fn expected_star(sample: &[ProjPoint]) -> Vec<Vec<usize>> {
    sample
        .iter()
        .map(|l| sample.iter().map(|m| usize::from(!l.is_infinite() && m.is_infinite())).collect())
        .collect()
}

/// Report checks for an `Ext¹_D` table and the objects it is built from.
pub fn example2_checks(alg: &Arc<BoundQuiverAlgebra>, report: &DExtReport) -> Result<Vec<Check>> {
    let field = report.field;
    let sample = &report.sample;
    let mut checks = Vec::new();

    let mut bad = Vec::new();
    let mut reps = Vec::new();
    for pt in sample {
        let r = simple_regular(alg, pt, field)?;
        let a = end_analysis(&r);
        let dec = decompose_regular(&r)?;
        let mem = membership(&r)?;
        if !a.is_brick || dec != Ok(vec![(pt.clone(), 1)]) || !mem.in_c || !mem.in_d {
            bad.push(pt.to_string());
        }
        reps.push(r);
    }
    let mut c = Check::compare(
        "simple_regulars",
        Vec::<String>::new(),
        bad.clone(),
        "each R(x) is a brick, decomposes as {x}, and lies in C and D",
    );
    if let Some(w) = bad.first() {
        c = c.witness(w);
    }
    checks.push(c);

    let mut iso_pairs = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if are_isomorphic(&reps[i], &reps[j])? {
                iso_pairs.push(format!("{} ~ {}", sample[i], sample[j]));
            }
        }
    }
    checks.push(Check::compare(
        "pairwise_non_isomorphic",
        Vec::<String>::new(),
        iso_pairs,
        "R(x) and R(y) are not isomorphic for x != y",
    ));

    let expected = expected_star(sample);
    let actual = report.dims();
    let status = if !report.guard_trips.is_empty() {
        Status::Skipped
    } else if actual
        .iter()
        .zip(&expected)
        .all(|(a, e)| a.iter().zip(e).all(|(x, y)| *x == Some(*y)))
    {
        Status::Pass
    } else {
        Status::Fail
    };
    let rows: Vec<String> = sample.iter().map(ProjPoint::to_string).collect();
    let mut details = format!("rows lambda, columns mu, over {field}; sample {}", rows.join(","));
    if !report.guard_trips.is_empty() {
        details.push_str(&format!("; guard tripped at {}", report.guard_trips.join("; ")));
    }
    let ambient: Vec<Vec<Option<usize>>> = report
        .table
        .iter()
        .map(|row| row.iter().map(|c| c.as_ref().map(|c| c.dim_ambient)).collect())
        .collect();
    checks.push(
        Check::with_status("ext_d_table", status, &expected, &actual, details)
            .witness(serde_json::json!({ "ambient": ambient })),
    );

    let unverified: Vec<String> = report
        .table
        .iter()
        .flatten()
        .flatten()
        .filter(|c| !c.subspace_verified)
        .map(|c| format!("({}, {})", c.lambda, c.mu))
        .collect();
    let status = if !unverified.is_empty() {
        Status::Fail
    } else if !report.guard_trips.is_empty() {
        Status::Skipped
    } else {
        Status::Pass
    };
    checks.push(Check::with_status(
        "subspace_verified",
        status,
        Vec::<String>::new(),
        &unverified,
        "classes with middle term in D form a subspace in every cell",
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::example_two;

    fn kron() -> Arc<BoundQuiverAlgebra> {
        Arc::new(example_two().unwrap())
    }

    fn pt(field: Field, s: &str) -> ProjPoint {
        ProjPoint::parse(field, s).unwrap()
    }

    fn sum(alg: &Arc<BoundQuiverAlgebra>, field: Field, pts: &[&str]) -> Representation {
        let parts: Vec<Representation> =
            pts.iter().map(|s| simple_regular(alg, &pt(field, s), field).unwrap()).collect();
        let refs: Vec<&Representation> = parts.iter().collect();
        Representation::direct_sum_of(alg, field, &refs)
    }

    #[test]
    fn normal_forms() {
        let alg = kron();
        let f7 = Field::Prime(7);
        let r0 = simple_regular(&alg, &pt(f7, "0"), f7).unwrap();
        assert_eq!(r0.arrow_matrix("alpha0").unwrap(), &Mat::from_rows(f7, &[vec![1]]));
        assert_eq!(r0.arrow_matrix("alpha1").unwrap(), &Mat::from_rows(f7, &[vec![0]]));
        assert_eq!(decompose_regular(&r0).unwrap(), Ok(vec![(pt(f7, "0"), 1)]));
        let ri = simple_regular(&alg, &ProjPoint::Infinity, f7).unwrap();
        assert_eq!(ri.arrow_matrix("alpha0").unwrap(), &Mat::from_rows(f7, &[vec![0]]));
        assert_eq!(decompose_regular(&ri).unwrap(), Ok(vec![(ProjPoint::Infinity, 1)]));
        let q = Field::Rationals;
        let r1 = simple_regular(&alg, &pt(q, "1"), q).unwrap();
        assert_eq!(r1.arrow_matrix("alpha1").unwrap(), &Mat::from_rows(q, &[vec![1]]));
        assert!(end_analysis(&r1).is_brick);
        let r12 = simple_regular(&alg, &pt(q, "1/2"), q).unwrap();
        assert_eq!(decompose_regular(&r12).unwrap(), Ok(vec![(pt(q, "1/2"), 1)]));
    }

    #[test]
    fn decompositions() {
        let alg = kron();
        let f7 = Field::Prime(7);
        let m = sum(&alg, f7, &["inf", "1"]);
        assert_eq!(
            decompose_regular(&m).unwrap(),
            Ok(vec![(pt(f7, "1"), 1), (ProjPoint::Infinity, 1)])
        );
        // every point of P1(F_2) at once: no invertible pencil over F_2
        let f2 = Field::Prime(2);
        let m = sum(&alg, f2, &["0", "1", "inf", "1"]);
        assert_eq!(
            decompose_regular(&m).unwrap(),
            Ok(vec![(pt(f2, "0"), 1), (pt(f2, "1"), 2), (ProjPoint::Infinity, 1)])
        );
        let q = Field::Rationals;
        let m = sum(&alg, q, &["3", "-2/5", "inf", "3"]);
        assert_eq!(
            decompose_regular(&m).unwrap(),
            Ok(vec![(pt(q, "-2/5"), 1), (pt(q, "3"), 2), (ProjPoint::Infinity, 1)])
        );
    }

    #[test]
    fn failures() {
        let alg = kron();
        for f in [Field::Prime(7), Field::Rationals] {
            let jordan = Representation::new(
                alg.clone(),
                f,
                vec![2, 2],
                vec![Mat::identity(f, 2), Mat::from_rows(f, &[vec![1, 1], vec![0, 1]]), Mat::zeros(f, 2, 2)],
            )
            .unwrap();
            assert!(matches!(
                decompose_regular(&jordan).unwrap(),
                Err(RegularFailure::NotSemisimpleRegular(_))
            ));
            let uneven = Representation::new(
                alg.clone(),
                f,
                vec![2, 1],
                vec![Mat::zeros(f, 2, 1), Mat::zeros(f, 2, 1), Mat::zeros(f, 1, 2)],
            )
            .unwrap();
            assert!(matches!(decompose_regular(&uneven).unwrap(), Err(RegularFailure::NotRegular(_))));
            // P ⊕ I-type module: the pencil is identically singular
            let sing = Representation::new(
                alg.clone(),
                f,
                vec![2, 2],
                vec![
                    Mat::from_rows(f, &[vec![1, 0], vec![0, 0]]),
                    Mat::from_rows(f, &[vec![0, 0], vec![1, 0]]),
                    Mat::zeros(f, 2, 2),
                ],
            )
            .unwrap();
            assert!(matches!(decompose_regular(&sing).unwrap(), Err(RegularFailure::NotRegular(_))));
        }
        // eigenvalues outside F_7: t^2 + 1 is irreducible mod 7
        let f7 = Field::Prime(7);
        let rot = Representation::new(
            alg,
            f7,
            vec![2, 2],
            vec![Mat::identity(f7, 2), Mat::from_rows(f7, &[vec![0, 6], vec![1, 0]]), Mat::zeros(f7, 2, 2)],
        )
        .unwrap();
        assert!(matches!(
            decompose_regular(&rot).unwrap(),
            Err(RegularFailure::NotSemisimpleRegular(_))
        ));
    }

    #[test]
    fn memberships() {
        let alg = kron();
        let f7 = Field::Prime(7);
        let ri = simple_regular(&alg, &ProjPoint::Infinity, f7).unwrap();
        let m = membership(&ri).unwrap();
        assert!(m.in_c && m.in_d);
        assert_eq!(m.witness.trace_dims, vec![1, 1]);
        let r1 = simple_regular(&alg, &pt(f7, "1"), f7).unwrap();
        let m = membership(&r1).unwrap();
        assert!(m.in_c && m.in_d);
        assert_eq!(m.witness.trace_dims, vec![0, 0]);
        // the beta-extension with R(inf) as submodule and R(1) on top
        let ext = ext1(&r1, &ri).unwrap();
        assert_eq!(ext.dim(), 1);
        let e = ext.middle_term(&[Scalar::Fp(1)]).unwrap().middle;
        assert!(!e.arrow_matrix("beta").unwrap().is_zero());
        let m = membership(&e).unwrap();
        assert!(m.in_c && m.in_d, "{m:?}");
        // the reverse extension is not in D
        let ext = ext1(&ri, &r1).unwrap();
        let e = ext.middle_term(&[Scalar::Fp(1)]).unwrap().middle;
        let m = membership(&e).unwrap();
        assert!(m.in_c && !m.in_d);
    }

    #[test]
    fn cells() {
        let alg = kron();
        let f7 = Field::Prime(7);
        let one = pt(f7, "1");
        let inf = ProjPoint::Infinity;
        let c = ext1_d(&alg, &one, &inf, f7).unwrap();
        assert_eq!((c.dim_ambient, c.dim_d, c.subspace_verified), (1, Some(1), true));
        let c = ext1_d(&alg, &inf, &one, f7).unwrap();
        assert_eq!(c.dim_d, Some(0));
        let c = ext1_d(&alg, &one, &one, f7).unwrap();
        assert_eq!((c.dim_ambient, c.dim_d), (2, Some(0)));
        let r = verify_example2(&alg, f7, &[inf.clone()], Execution::Sequential).unwrap();
        assert_eq!(r.dims(), vec![vec![Some(0)]]);
    }

    #[test]
    fn star_tables() {
        let alg = kron();
        for (p, csv) in [(2, "0,1,inf"), (7, "0,1,2,3,4,inf")] {
            let f = Field::Prime(p);
            let sample = ProjPoint::parse_list(f, csv).unwrap();
            let r = verify_example2(&alg, f, &sample, Execution::Parallel).unwrap();
            let expected: Vec<Vec<Option<usize>>> = expected_star(&sample)
                .into_iter()
                .map(|row| row.into_iter().map(Some).collect())
                .collect();
            assert_eq!(r.dims(), expected);
            assert!(r.all_subspaces_verified());
            let checks = example2_checks(&alg, &r).unwrap();
            assert!(checks.iter().all(Check::passed), "{checks:?}");
        }
    }
}
