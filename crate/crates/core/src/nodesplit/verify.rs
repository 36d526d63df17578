//! End-to-end verification of the first example family `Λ_n`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::homo::{global_dimension, Dimension, DEFAULT_CAP};
use crate::par::Execution;
use crate::quiver::{classify_underlying_graph, example_one};
use crate::rep::{are_isomorphic, positive_roots, root_representation, Representation, Verdict};
use crate::report::{Check, Status};

use super::{
    brick_census, is_node, nilpotent_endo, prime_of, split_at_node, structural_dimension_vectors,
    CensusOptions, CensusReport, CensusScope, NodeSplit, DEFAULT_BUDGET,
};

#[derive(Clone, Debug)]
pub struct Example1Options {
    pub n: usize,
    pub field: Field,
    /// Census bounds; census-based checks are skipped without them.
    pub bounds: Option<Vec<usize>>,
    pub budget: u128,
    pub exec: Execution,
}

impl Example1Options {
    pub fn new(n: usize, field: Field) -> Example1Options {
        Example1Options { n, field, bounds: None, budget: DEFAULT_BUDGET, exec: Execution::Parallel }
    }

    pub fn with_bounds(mut self, bounds: Vec<usize>) -> Example1Options {
        self.bounds = Some(bounds);
        self
    }
}

/// The node of `Λ_n` is the vertex named `2`.
const NODE: usize = 1;

const CENSUS_CHECKS: [&str; 6] =
    ["census_consistency", "lemma", "corollary", "census_equality", "fuse_split_roundtrip", "bijection_count"];

fn expected_kind(n: usize) -> &'static str {
    match n {
        3..=7 => "finite",
        8 => "tame",
        _ => "wild",
    }
}

pub fn verify_example1(opts: &Example1Options) -> Result<Vec<Check>> {
    let n = opts.n;
    let alg = Arc::new(example_one(n)?);
    if let Some(b) = &opts.bounds {
        if b.len() != n {
            return Err(Error::ShapeMismatch(format!("{} bounds for {n} vertices", b.len())));
        }
    }
    let mut checks = Vec::new();

    let gl = global_dimension(&alg, opts.field, DEFAULT_CAP, opts.exec)?;
    checks.push(Check::with_status(
        "global_dimension",
        if gl == Dimension::Exact(2) { Status::Pass } else { Status::Fail },
        "2",
        gl.to_string(),
        format!("maximum projective dimension of the {n} simples over {}", opts.field),
    ));

    let nodes: Vec<String> = (0..n)
        .filter_map(|v| match is_node(&alg, v) {
            Ok(true) => Some(Ok(alg.quiver().vertex_name(v).to_string())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    checks.push(Check::compare("node_detection", vec!["2".to_string()], nodes, "vertices that are nodes"));

    let split = split_at_node(&alg, NODE)?;
    let class = classify_underlying_graph(split.split.quiver())?;
    checks.push(Check::compare(
        "split_classification",
        expected_kind(n),
        class.kind(),
        format!("underlying graph of the split quiver: {class}"),
    ));

    checks.push(split_fuse_roundtrip(&split, opts.field));

    let Some(bounds) = &opts.bounds else {
        checks.extend(CENSUS_CHECKS.iter().map(|c| Check::skipped(c, Value::Null, "no census bounds given")));
        return Ok(checks);
    };
    let p = match prime_of(opts.field) {
        Ok(p) => p,
        Err(e) => {
            checks.extend(CENSUS_CHECKS.iter().map(|c| Check::skipped(c, Value::Null, e.to_string())));
            return Ok(checks);
        }
    };
    let copts = CensusOptions { scope: CensusScope::Indecomposables, budget: opts.budget, exec: opts.exec };
    let census = match brick_census(&alg, bounds, p, &copts) {
        Ok(c) => c,
        Err(e @ Error::BudgetExceeded { .. }) => {
            checks.extend(CENSUS_CHECKS.iter().map(|c| Check::skipped(c, Value::Null, e.to_string())));
            return Ok(checks);
        }
        Err(e) => return Err(e),
    };

    checks.push(Check::compare(
        "census_consistency",
        true,
        census.consistent,
        format!(
            "{} assignments, {} relation-satisfying, {} indecomposable classes, {} undecided",
            census.assignments,
            census.candidates,
            census.classes.len(),
            census.counts.undecided
        ),
    ));
    checks.push(lemma_check(&census));
    checks.push(corollary_check(&census));
    checks.push(census_equality(n, bounds, &census)?);
    checks.extend(bijection_checks(&split, bounds, p, &copts, &census)?);
    Ok(checks)
}

fn both_node_maps_nonzero(c: &super::CensusClass) -> bool {
    !c.arrow_is_zero("alpha") && !c.arrow_is_zero("beta")
}

/// Every indecomposable with `M_α ≠ 0 ≠ M_β` carries a square-zero
/// endomorphism of rank one, supported at the node.
fn lemma_check(census: &CensusReport) -> Check {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for c in census.classes.iter().filter(|c| both_node_maps_nonzero(c)) {
        if !c.analysis.is_indecomposable.is_yes() {
            continue;
        }
        checked += 1;
        let m = &c.module;
        let problem = match nilpotent_endo(m, NODE) {
            Err(e) => Some(e.to_string()),
            Ok(phi) => {
                if phi.is_zero() {
                    Some("phi = 0".into())
                } else if !phi.compose(&phi).is_zero() {
                    Some("phi^2 != 0".into())
                } else if phi.0[NODE].rank() != 1 {
                    Some(format!("rank phi_2 = {}", phi.0[NODE].rank()))
                } else if phi.0.iter().enumerate().any(|(v, b)| v != NODE && !b.is_zero()) {
                    Some("phi is supported away from the node".into())
                } else if !phi.intertwines(m, m) {
                    Some("phi is not a module map".into())
                } else {
                    None
                }
            }
        };
        if let Some(why) = problem {
            failures.push(json!({ "dims": m.dims(), "reason": why }));
        }
    }
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    let mut check = Check::with_status(
        "lemma",
        status,
        0,
        failures.len(),
        format!("{checked} indecomposable classes with both node maps nonzero"),
    );
    if let Some(first) = failures.first() {
        check = check.witness(first);
    }
    check
}

/// Every Schur class has `M_α = 0` or `M_β = 0`.
fn corollary_check(census: &CensusReport) -> Check {
    let schur: Vec<_> = census.classes.iter().filter(|c| c.analysis.is_schur.is_yes()).collect();
    let exceptions: Vec<_> = schur.iter().filter(|c| both_node_maps_nonzero(c)).collect();
    let undecided = census
        .classes
        .iter()
        .filter(|c| matches!(c.analysis.is_schur, Verdict::Unknown(_)))
        .count();
    let status = if !exceptions.is_empty() {
        Status::Fail
    } else if undecided > 0 {
        Status::Skipped
    } else {
        Status::Pass
    };
    let mut check = Check::with_status(
        "corollary",
        status,
        0,
        exceptions.len(),
        format!(
            "{} Schur classes ({} bricks), {undecided} with undecided Schur verdict",
            schur.len(),
            census.counts.bricks
        ),
    );
    if let Some(c) = exceptions.first() {
        check = check.witness(json!({ "dims": c.module.dims() }));
    }
    check
}

/// Brick dimension vectors versus the roots of the two deleted-arrow quivers
/// that fit inside the bounds.
fn census_equality(n: usize, bounds: &[usize], census: &CensusReport) -> Result<Check> {
    let structural = structural_dimension_vectors(n)?;
    let fits = |d: &Vec<usize>| d.iter().zip(bounds).all(|(x, b)| x <= b);
    let expected: Vec<Vec<usize>> = structural.iter().filter(|d| fits(d)).cloned().collect();
    let mut actual: Vec<Vec<usize>> = census.bricks().map(|c| c.module.dims().to_vec()).collect();
    actual.sort();
    let partial = expected.len() < structural.len();
    let status = if actual == expected { Status::Pass } else { Status::Fail };
    let details = if partial {
        format!(
            "partial: {} of {} structural bricks lie within the bounds",
            expected.len(),
            structural.len()
        )
    } else {
        format!("full: all {} structural bricks lie within the bounds", structural.len())
    };
    Ok(Check::with_status(
        "census_equality",
        status,
        json!({ "bricks": expected.len(), "partial": partial }),
        json!({ "bricks": actual.len(), "partial": partial }),
        details,
    )
    .witness(json!({ "brick_dims": actual })))
}

/// `fuse ∘ split ≅ id` on the census, and a class-count comparison with a
/// census of the split algebra under the transported bounds.
fn bijection_checks(
    split: &NodeSplit,
    bounds: &[usize],
    p: u32,
    copts: &CensusOptions,
    census: &CensusReport,
) -> Result<Vec<Check>> {
    let mut failures = Vec::new();
    let mut images = Vec::new();
    for c in &census.classes {
        let n = split.split_rep(&c.module)?;
        let back = split.fuse_rep(&n)?;
        if !are_isomorphic(&back, &c.module)? {
            failures.push(json!({ "dims": c.module.dims() }));
        }
        images.push(n);
    }
    let mut round = Check::with_status(
        "fuse_split_roundtrip",
        if failures.is_empty() { Status::Pass } else { Status::Fail },
        0,
        failures.len(),
        format!("{} census classes", census.classes.len()),
    );
    if let Some(w) = failures.first() {
        round = round.witness(w);
    }

    let d = &split.data;
    let mut split_bounds = vec![0; split.split.num_vertices()];
    for (w, &b) in bounds.iter().enumerate() {
        match d.vertex_map[w] {
            Some(x) => split_bounds[x] = b,
            None => {
                split_bounds[d.source_side] = b;
                split_bounds[d.sink_side] = b;
            }
        }
    }
    let node_bound = bounds[d.vertex];
    let count = match brick_census(&split.split, &split_bounds, p, copts) {
        Err(e @ Error::BudgetExceeded { .. }) => {
            Check::skipped("bijection_count", Value::Null, format!("split census: {e}"))
        }
        Err(e) => return Err(e),
        Ok(sc) => {
            let non_simple = |m: &Representation| m.total_dim() > 1;
            let targets: Vec<&Representation> = sc
                .classes
                .iter()
                .filter(|c| c.analysis.is_indecomposable.is_yes())
                .map(|c| &c.module)
                .filter(|m| non_simple(m))
                .filter(|m| m.dims()[d.source_side] + m.dims()[d.sink_side] <= node_bound)
                .collect();
            let sources: Vec<usize> = census
                .classes
                .iter()
                .enumerate()
                .filter(|(_, c)| c.analysis.is_indecomposable.is_yes() && non_simple(&c.module))
                .map(|(i, _)| i)
                .collect();
            let mut unmatched = Vec::new();
            for &i in &sources {
                let img = &images[i];
                let mut hit = false;
                for t in targets.iter().filter(|t| t.dims() == img.dims()) {
                    if are_isomorphic(t, img)? {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    unmatched.push(json!({ "dims": census.classes[i].module.dims() }));
                }
            }
            let ok = unmatched.is_empty() && sources.len() == targets.len();
            let mut c = Check::with_status(
                "bijection_count",
                if ok { Status::Pass } else { Status::Fail },
                targets.len(),
                sources.len(),
                "non-simple indecomposables of the split algebra within the transported bounds \
                 versus those of the original algebra",
            );
            if let Some(w) = unmatched.first() {
                c = c.witness(w);
            }
            c
        }
    };
    Ok(vec![round, count])
}

/// `split ∘ fuse ≅ id` on every root representation of the split quiver
/// with surjective sink-side map, and every non-simple one is surjective.
fn split_fuse_roundtrip(split: &NodeSplit, field: Field) -> Check {
    let name = "split_fuse_roundtrip";
    let q = split.split.quiver();
    let roots = match positive_roots(q) {
        Ok(r) => r,
        Err(e) => return Check::skipped(name, 0, format!("no root list: {e}")),
    };
    let sink = split.data.sink_side;
    let run = || -> Result<(usize, Vec<String>)> {
        let mut failures = Vec::new();
        for r in &roots {
            let m = root_representation(&split.split, r, field)?;
            if m.total_dim() == 1 {
                continue;
            }
            let ins: Vec<_> = q.in_arrows(sink).iter().map(|&a| m.mat(a)).collect();
            let span = Mat::hstack(field, m.dims()[sink], &ins).rank();
            if span != m.dims()[sink] {
                failures.push(format!("{r}: sink-side map not surjective"));
                continue;
            }
            let back = split.split_rep(&split.fuse_rep(&m)?)?;
            if !are_isomorphic(&back, &m)? {
                failures.push(format!("{r}: split(fuse(N)) is not isomorphic to N"));
            }
        }
        Ok((roots.len(), failures))
    };
    match run() {
        Ok((total, failures)) => {
            let mut c = Check::with_status(
                name,
                if failures.is_empty() { Status::Pass } else { Status::Fail },
                0,
                failures.len(),
                format!("{total} root representations of the split quiver over {field}"),
            );
            if let Some(w) = failures.first() {
                c = c.witness(w);
            }
            c
        }
        Err(e) => Check::with_status(name, Status::Fail, 0, Value::Null, e.to_string()),
    }
}
