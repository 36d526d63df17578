//! Exhaustive enumeration of representations over a small prime field.
//!
//! For every dimension vector below the bounds, every matrix assignment is
//! generated, checked against the relations, and its endomorphism dimension
//! is computed on raw residue buffers. Surviving assignments are grouped into
//! isomorphism classes, either by marking whole `GL(d)` orbits (small groups)
//! or by pairwise isomorphism tests, and each class is analysed once.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::small::{mul_mod_p, nullity_mod_p, rank_mod_p};
use crate::exactla::{Field, Mat};
use crate::par::{self, Execution};
use crate::quiver::BoundQuiverAlgebra;
use crate::rep::{
    are_isomorphic, end_analysis, hom_basis, EndAnalysis, Representation, Verdict, SCAN_CAP,
};

/// Default cap on the number of matrix assignments a census may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Above this group order classes are found by pairwise isomorphism tests.
const ORBIT_CAP: u128 = 1 << 16;

/// Upper bound on enumeration shards per dimension vector.
const MAX_SHARDS: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusScope {
    /// Representations with one-dimensional endomorphism algebra.
    Bricks,
    /// Representations with local endomorphism algebra.
    Indecomposables,
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub scope: CensusScope,
    pub budget: u128,
    pub exec: Execution,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            scope: CensusScope::Indecomposables,
            budget: DEFAULT_BUDGET,
            exec: Execution::Parallel,
        }
    }
}

/// One isomorphism class, represented by its lexicographically least assignment.
#[derive(Clone, Debug)]
pub struct CensusClass {
    pub module: Representation,
    pub analysis: EndAnalysis,
    /// Names of the arrows acting by zero.
    pub zero_arrows: Vec<String>,
    /// Number of assignments in the class.
    pub members: u128,
    /// `|Aut M|`, when small enough to count.
    pub automorphisms: Option<u128>,
}

impl CensusClass {
    pub fn arrow_is_zero(&self, name: &str) -> bool {
        self.zero_arrows.iter().any(|a| a == name)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub bricks: usize,
    pub schur: usize,
    pub indecomposables: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub field: Field,
    pub bounds: Vec<usize>,
    pub scope: CensusScope,
    pub classes: Vec<CensusClass>,
    pub counts: CensusCounts,
    /// Matrix assignments visited.
    pub assignments: u128,
    /// Assignments satisfying the relations and the scope filter.
    pub candidates: u128,
    /// Orbit sizes add up to the candidate count, and
    /// `members · |Aut| = |GL(d)|` for every class where `|Aut|` was counted.
    pub consistent: bool,
}

impl CensusReport {
    pub fn bricks(&self) -> impl Iterator<Item = &CensusClass> {
        self.classes.iter().filter(|c| c.analysis.is_brick)
    }
}

fn checked_pow(p: u32, e: usize) -> u128 {
    (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// All nonzero vectors `d ≤ bounds`, in lexicographic order.
fn dimension_vectors(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut d = vec![0; bounds.len()];
    loop {
        if d.iter().any(|&x| x > 0) {
            out.push(d.clone());
        }
        let mut k = bounds.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if d[k] < bounds[k] {
                d[k] += 1;
                break;
            }
            d[k] = 0;
        }
    }
}

fn assignments_for(alg: &BoundQuiverAlgebra, d: &[usize], p: u32) -> u128 {
    let entries: usize = alg.quiver().arrows().iter().map(|a| d[a.source] * d[a.target]).sum();
    checked_pow(p, entries)
}

/// Total number of assignments a census with these bounds visits.
pub fn census_budget(alg: &BoundQuiverAlgebra, bounds: &[usize], p: u32) -> u128 {
    dimension_vectors(bounds)
        .iter()
        .fold(0u128, |acc, d| acc.saturating_add(assignments_for(alg, d, p)))
}

/// `|GL_n(F_p)| = Π_{i<n} (pⁿ − pⁱ)`.
fn gl_order(p: u32, n: usize) -> u128 {
    (0..n).fold(1u128, |acc, i| {
        acc.saturating_mul(checked_pow(p, n).saturating_sub(checked_pow(p, i)))
    })
}

/// Index bookkeeping for one dimension vector.
struct Layout {
    p: u32,
    dims: Vec<usize>,
    ends: Vec<(usize, usize)>,
    key_off: Vec<usize>,
    key_len: usize,
    var_off: Vec<usize>,
    cols: usize,
    row_off: Vec<usize>,
    rows: usize,
    /// Key positions of arrows occurring in relations, then of the others.
    outer_pos: Vec<usize>,
    inner_pos: Vec<usize>,
    outer_arrows: Vec<usize>,
    inner_arrows: Vec<usize>,
    relations: Vec<Vec<usize>>,
}

impl Layout {
    fn new(alg: &BoundQuiverAlgebra, d: &[usize], p: u32) -> Layout {
        let q = alg.quiver();
        let ends: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
        let mut key_off = Vec::with_capacity(ends.len());
        let mut row_off = Vec::with_capacity(ends.len());
        let (mut key_len, mut rows) = (0, 0);
        for &(s, t) in &ends {
            key_off.push(key_len);
            row_off.push(rows);
            key_len += d[s] * d[t];
            rows += d[s] * d[t];
        }
        let mut var_off = Vec::with_capacity(d.len());
        let mut cols = 0;
        for &x in d {
            var_off.push(cols);
            cols += x * x;
        }
        let in_relation: Vec<bool> = (0..ends.len())
            .map(|a| alg.relations().iter().any(|r| r.arrows.contains(&a)))
            .collect();
        let outer_arrows: Vec<usize> = (0..ends.len()).filter(|&a| in_relation[a]).collect();
        let inner_arrows: Vec<usize> = (0..ends.len()).filter(|&a| !in_relation[a]).collect();
        let positions = |arrows: &[usize]| -> Vec<usize> {
            arrows
                .iter()
                .flat_map(|&a| key_off[a]..key_off[a] + d[ends[a].0] * d[ends[a].1])
                .collect()
        };
        Layout {
            p,
            dims: d.to_vec(),
            outer_pos: positions(&outer_arrows),
            inner_pos: positions(&inner_arrows),
            ends,
            key_off,
            key_len,
            var_off,
            cols,
            row_off,
            rows,
            outer_arrows,
            inner_arrows,
            relations: alg.relations().iter().map(|r| r.arrows.clone()).collect(),
        }
    }

    fn shape(&self, a: usize) -> (usize, usize) {
        let (s, t) = self.ends[a];
        (self.dims[t], self.dims[s])
    }

    fn arrow<'k>(&self, key: &'k [u32], a: usize) -> &'k [u32] {
        let (r, c) = self.shape(a);
        &key[self.key_off[a]..self.key_off[a] + r * c]
    }

    fn decode(&self, mut index: u64, positions: &[usize], key: &mut [u32]) {
        let p = self.p as u64;
        for &pos in positions {
            key[pos] = (index % p) as u32;
            index /= p;
        }
    }

    fn relations_hold(&self, key: &[u32]) -> bool {
        let p = self.p;
        self.relations.iter().all(|word| {
            let last = *word.last().expect("relations are nonempty");
            let (mut r, c) = self.shape(last);
            let mut acc = self.arrow(key, last).to_vec();
            for &a in word.iter().rev().skip(1) {
                let (ar, ac) = self.shape(a);
                debug_assert_eq!(ac, r);
                let mut out = vec![0u32; ar * c];
                mul_mod_p(p, self.arrow(key, a), &acc, ar, r, c, &mut out);
                acc = out;
                r = ar;
            }
            acc.iter().all(|&x| x == 0)
        })
    }

    /// Rows of the system `φ_t M_a − M_a φ_s = 0` belonging to arrow `a`.
    fn write_rows(&self, a: usize, key: &[u32], buf: &mut [u32]) {
        let p = self.p;
        let (s, t) = self.ends[a];
        let (dt, ds) = (self.dims[t], self.dims[s]);
        let m = self.arrow(key, a);
        let cols = self.cols;
        let base = self.row_off[a];
        buf[base * cols..(base + dt * ds) * cols].fill(0);
        for i in 0..dt {
            for j in 0..ds {
                let row = &mut buf[(base + i * ds + j) * cols..(base + i * ds + j + 1) * cols];
                for k in 0..dt {
                    let x = m[k * ds + j];
                    let col = self.var_off[t] + i * dt + k;
                    row[col] = (row[col] + x) % p;
                }
                for k in 0..ds {
                    let x = m[i * ds + k];
                    let col = self.var_off[s] + k * ds + j;
                    row[col] = (row[col] + p - x) % p;
                }
            }
        }
    }

    fn representation(&self, alg: &Arc<BoundQuiverAlgebra>, key: &[u32]) -> Result<Representation> {
        let mats = (0..self.ends.len())
            .map(|a| {
                let (r, c) = self.shape(a);
                Mat::from_residues(self.p, r, c, self.arrow(key, a).to_vec())
            })
            .collect();
        Representation::new(alg.clone(), Field::Prime(self.p), self.dims.clone(), mats)
    }

    /// Cheap isomorphism invariant: endomorphism dimension and arrow ranks.
    fn invariant(&self, key: &[u32], dim_end: usize) -> Vec<usize> {
        let mut inv = vec![dim_end];
        for a in 0..self.ends.len() {
            let (r, c) = self.shape(a);
            let mut buf = self.arrow(key, a).to_vec();
            inv.push(if r * c == 0 { 0 } else { rank_mod_p(self.p, &mut buf, r, c) });
        }
        inv
    }
}

/// Relation-satisfying assignments of one dimension vector, with `dim End`.
fn enumerate(layout: &Layout, scope: CensusScope, exec: Execution) -> Vec<(Vec<u32>, usize)> {
    let p = layout.p;
    let outer = checked_pow(p, layout.outer_pos.len()) as u64;
    let inner = checked_pow(p, layout.inner_pos.len()) as u64;
    let shards = outer.min(MAX_SHARDS);
    let chunks = par::map_range(exec, shards as usize, |s| {
        let lo = outer * s as u64 / shards;
        let hi = outer * (s as u64 + 1) / shards;
        let mut key = vec![0u32; layout.key_len];
        let mut base = vec![0u32; layout.rows * layout.cols];
        let mut work = vec![0u32; layout.rows * layout.cols];
        let mut found = Vec::new();
        for o in lo..hi {
            layout.decode(o, &layout.outer_pos, &mut key);
            if !layout.relations_hold(&key) {
                continue;
            }
            for &a in &layout.outer_arrows {
                layout.write_rows(a, &key, &mut base);
            }
            for i in 0..inner {
                layout.decode(i, &layout.inner_pos, &mut key);
                work.copy_from_slice(&base);
                for &a in &layout.inner_arrows {
                    layout.write_rows(a, &key, &mut work);
                }
                let dim_end = nullity_mod_p(p, &mut work, layout.rows, layout.cols);
                if scope == CensusScope::Indecomposables || dim_end == 1 {
                    found.push((key.clone(), dim_end));
                }
            }
        }
        found
    });
    let mut all: Vec<(Vec<u32>, usize)> = chunks.into_iter().flatten().collect();
    all.sort_unstable();
    all
}

/// Invertible `n × n` residue matrices paired with their inverses.
fn general_linear(p: u32, n: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let total = checked_pow(p, n * n) as u64;
    let mut out = Vec::new();
    let mut g = vec![0u32; n * n];
    for idx in 0..total {
        let mut x = idx;
        for e in g.iter_mut() {
            *e = (x % p as u64) as u32;
            x /= p as u64;
        }
        if let Some(inv) = Mat::from_residues(p, n, n, g.clone()).inverse() {
            out.push((g.clone(), inv.residues().expect("prime field").to_vec()));
        }
    }
    out
}

/// Every assignment in the `GL(d)`-orbit of `key`.
fn orbit(layout: &Layout, groups: &[Vec<(Vec<u32>, Vec<u32>)>], key: &[u32]) -> HashSet<Vec<u32>> {
    let p = layout.p;
    let n = groups.len();
    let mut choice = vec![0usize; n];
    let mut out = HashSet::new();
    let mut scratch = Vec::new();
    loop {
        let mut image = vec![0u32; layout.key_len];
        for a in 0..layout.ends.len() {
            let (s, t) = layout.ends[a];
            let (r, c) = layout.shape(a);
            if r * c == 0 {
                continue;
            }
            scratch.resize(r * c, 0);
            mul_mod_p(p, &groups[t][choice[t]].0, layout.arrow(key, a), r, r, c, &mut scratch);
            let off = layout.key_off[a];
            mul_mod_p(p, &scratch, &groups[s][choice[s]].1, r, c, c, &mut image[off..off + r * c]);
        }
        out.insert(image);
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            choice[k] += 1;
            if choice[k] < groups[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `|Aut M|` by scanning `End M`, when `p^{dim End}` is under the scan cap.
fn automorphism_count(m: &Representation, p: u32, dim_end: usize) -> Result<Option<u128>> {
    if dim_end == 1 {
        return Ok(Some(p as u128 - 1));
    }
    if checked_pow(p, dim_end) > SCAN_CAP as u128 {
        return Ok(None);
    }
    let end = hom_basis(m, m)?;
    let mut count = 0u128;
    let field = Field::Prime(p);
    let mut digits = vec![0u32; dim_end];
    loop {
        let coeffs: Vec<_> = digits.iter().map(|&x| field.from_i64(x as i64)).collect();
        if end.element(&coeffs).is_iso() {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == dim_end {
                return Ok(Some(count));
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

struct Found {
    key: Vec<u32>,
    dim_end: usize,
    members: u128,
}

/// Group sorted candidates into classes; the first member seen is the least.
fn classify(
    alg: &Arc<BoundQuiverAlgebra>,
    layout: &Layout,
    candidates: &[(Vec<u32>, usize)],
    group_order: u128,
    orbit_cap: u128,
) -> Result<Vec<Found>> {
    let p = layout.p;
    let mut found: Vec<Found> = Vec::new();
    if group_order <= orbit_cap {
        let groups: Vec<_> = layout.dims.iter().map(|&n| general_linear(p, n)).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for (key, dim_end) in candidates {
            if seen.contains(key) {
                continue;
            }
            let orb = orbit(layout, &groups, key);
            let members = orb.len() as u128;
            seen.extend(orb);
            found.push(Found { key: key.clone(), dim_end: *dim_end, members });
        }
    } else {
        let mut reps: Vec<(Vec<usize>, Representation)> = Vec::new();
        for (key, dim_end) in candidates {
            let inv = layout.invariant(key, *dim_end);
            let m = layout.representation(alg, key)?;
            let mut matched = None;
            for (i, (rinv, rep)) in reps.iter().enumerate() {
                if *rinv == inv && are_isomorphic(rep, &m)? {
                    matched = Some(i);
                    break;
                }
            }
            match matched {
                Some(i) => found[i].members += 1,
                None => {
                    reps.push((inv, m));
                    found.push(Found { key: key.clone(), dim_end: *dim_end, members: 1 });
                }
            }
        }
    }
    Ok(found)
}

/// Exhaustive census of bricks or indecomposables with dimension vector at
/// most `bounds`, over `F_p`.
pub fn brick_census(
    alg: &Arc<BoundQuiverAlgebra>,
    bounds: &[usize],
    p: u32,
    opts: &CensusOptions,
) -> Result<CensusReport> {
    run(alg, bounds, p, opts, ORBIT_CAP)
}

fn run(
    alg: &Arc<BoundQuiverAlgebra>,
    bounds: &[usize],
    p: u32,
    opts: &CensusOptions,
    orbit_cap: u128,
) -> Result<CensusReport> {
    let field = Field::prime(p as u64)?;
    let n = alg.num_vertices();
    if bounds.len() != n {
        return Err(Error::ShapeMismatch(format!("{} bounds for {n} vertices", bounds.len())));
    }
    let needed = census_budget(alg, bounds, p);
    if needed > opts.budget {
        return Err(Error::BudgetExceeded { needed, budget: opts.budget });
    }
    let q = alg.quiver();
    let mut classes = Vec::new();
    let mut candidates_total = 0u128;
    let mut consistent = true;
    for d in dimension_vectors(bounds) {
        let layout = Layout::new(alg, &d, p);
        let candidates = enumerate(&layout, opts.scope, opts.exec);
        candidates_total += candidates.len() as u128;
        let group = d.iter().fold(1u128, |acc, &x| acc.saturating_mul(gl_order(p, x)));
        let found = classify(alg, &layout, &candidates, group, orbit_cap)?;
        if found.iter().map(|f| f.members).sum::<u128>() != candidates.len() as u128 {
            consistent = false;
        }
        for f in found {
            let module = layout.representation(alg, &f.key)?;
            let analysis = if f.dim_end == 1 {
                EndAnalysis {
                    dim_end: 1,
                    is_brick: true,
                    is_schur: Verdict::Yes,
                    is_indecomposable: Verdict::Yes,
                }
            } else {
                end_analysis(&module)
            };
            if analysis.is_indecomposable.is_no() {
                continue;
            }
            let automorphisms = automorphism_count(&module, p, f.dim_end)?;
            if let Some(aut) = automorphisms {
                if f.members.saturating_mul(aut) != group {
                    consistent = false;
                }
            }
            let zero_arrows = q
                .arrows()
                .iter()
                .enumerate()
                .filter(|(a, _)| module.mat(*a).is_zero())
                .map(|(_, arrow)| arrow.name.clone())
                .collect();
            classes.push(CensusClass {
                module,
                analysis,
                zero_arrows,
                members: f.members,
                automorphisms,
            });
        }
    }
    classes.sort_by(|a, b| a.module.sort_key().cmp(&b.module.sort_key()));
    let mut counts = CensusCounts::default();
    for c in &classes {
        let a = &c.analysis;
        counts.bricks += a.is_brick as usize;
        counts.schur += a.is_schur.is_yes() as usize;
        counts.indecomposables += a.is_indecomposable.is_yes() as usize;
        counts.undecided += (!a.is_schur.is_decided() || !a.is_indecomposable.is_decided()) as usize;
    }
    Ok(CensusReport {
        field,
        bounds: bounds.to_vec(),
        scope: opts.scope,
        classes,
        counts,
        assignments: needed,
        candidates: candidates_total,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{example_one, Quiver};

    fn lam(n: usize) -> Arc<BoundQuiverAlgebra> {
        Arc::new(example_one(n).unwrap())
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(2, 3), 168);
        assert_eq!(gl_order(5, 1), 4);
        assert_eq!(gl_order(3, 0), 1);
        assert_eq!(general_linear(2, 2).len(), 6);
    }

    #[test]
    fn a2_has_three_indecomposables() {
        let q = Quiver::new(&["1", "2"], &[("a", "2", "1")]).unwrap();
        let alg = Arc::new(BoundQuiverAlgebra::relation_free(q).unwrap());
        let r = brick_census(&alg, &[1, 1], 2, &CensusOptions::default()).unwrap();
        assert_eq!(r.classes.len(), 3);
        assert_eq!(r.counts.bricks, 3);
        assert!(r.consistent);
    }

    #[test]
    fn lambda3_small_bounds() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let opts = CensusOptions { exec, ..CensusOptions::default() };
            let r = brick_census(&lam(3), &[1, 1, 1], 2, &opts).unwrap();
            let dims: Vec<&[usize]> = r.bricks().map(|c| c.module.dims()).collect();
            for v in 0..3 {
                let mut e = vec![0; 3];
                e[v] = 1;
                assert!(dims.contains(&e.as_slice()));
            }
            assert_eq!(r.counts.bricks, 8);
            assert!(r.consistent);
        }
    }

    #[test]
    fn lambda3_at_two() {
        let r = brick_census(&lam(3), &[2, 2, 2], 2, &CensusOptions::default()).unwrap();
        assert_eq!(r.counts.bricks, 8);
        assert_eq!(r.counts.undecided, 0);
        assert!(r.consistent);
        for c in r.bricks() {
            assert!(c.arrow_is_zero("alpha") || c.arrow_is_zero("beta"));
        }
        // the fused root module is indecomposable but not a brick
        assert!(r.classes.iter().any(|c| c.module.dims() == [1, 2, 1] && !c.analysis.is_brick));
        let bricks_only = CensusOptions { scope: CensusScope::Bricks, ..CensusOptions::default() };
        let b = brick_census(&lam(3), &[2, 2, 2], 2, &bricks_only).unwrap();
        assert_eq!(b.classes.len(), 8);
        assert!(b.consistent);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = CensusOptions { budget: 1000, ..CensusOptions::default() };
        match brick_census(&lam(3), &[2, 2, 2], 2, &opts) {
            Err(Error::BudgetExceeded { needed, budget }) => {
                assert_eq!(budget, 1000);
                assert_eq!(needed, census_budget(&lam(3), &[2, 2, 2], 2));
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn pairwise_mode_matches_orbit_mode() {
        let q = Quiver::new(&["1", "2"], &[("a", "2", "1")]).unwrap();
        let a2 = Arc::new(BoundQuiverAlgebra::relation_free(q).unwrap());
        for (alg, bounds, p) in [(a2, vec![2, 2], 2), (lam(3), vec![1, 2, 1], 3)] {
            let opts = CensusOptions::default();
            let orbits = run(&alg, &bounds, p, &opts, ORBIT_CAP).unwrap();
            let pairs = run(&alg, &bounds, p, &opts, 0).unwrap();
            assert!(orbits.consistent && pairs.consistent);
            assert_eq!(orbits.classes.len(), pairs.classes.len());
            for (x, y) in orbits.classes.iter().zip(&pairs.classes) {
                assert_eq!(x.module.sort_key(), y.module.sort_key());
                assert_eq!(x.members, y.members);
            }
        }
    }
}
