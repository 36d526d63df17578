//! Quivers, monomial relations and the finite path basis of a bound quiver algebra.
//!
//! Path words are written in composition order: `alpha*beta` traverses `beta`
//! first and `alpha` second. A [`Path`] stores its arrows the same way, so
//! `arrows[0]` is the last arrow walked.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are given as `(name, source id, target id)`.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() || v.contains(char::is_whitespace) {
                return Err(Error::MalformedQuiver(format!("bad vertex id {v:?}")));
            }
            if vertices[..i].contains(v) {
                return Err(Error::MalformedQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut q = Quiver { vertices, arrows: Vec::new() };
        for (name, s, t) in arrows {
            let name = name.as_ref();
            if name.is_empty() || name.contains(|c: char| c.is_whitespace() || c == '*') {
                return Err(Error::MalformedQuiver(format!("bad arrow name {name:?}")));
            }
            if q.arrows.iter().any(|a| a.name == name) {
                return Err(Error::MalformedQuiver(format!("duplicate arrow {name}")));
            }
            let source = q.vertex_index(s.as_ref())?;
            let target = q.vertex_index(t.as_ref())?;
            q.arrows.push(Arrow { name: name.to_string(), source, target });
        }
        Ok(q)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::NoSuchVertex(id.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::NoSuchArrow(name.to_string()))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_arrows(v).is_empty()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_arrows(v).is_empty()
    }

    /// Same vertices, with the named arrows removed.
    pub fn without_arrows(&self, names: &[&str]) -> Result<Quiver> {
        for n in names {
            self.arrow_index(n)?;
        }
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .filter(|a| !names.contains(&a.name.as_str()))
            .cloned()
            .collect();
        Ok(Quiver { vertices: self.vertices.clone(), arrows })
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            members.push(y);
                            queue.push_back(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Full subquiver on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let pos = |v: usize| vertices.iter().position(|&w| w == v);
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| {
                Some(Arrow { name: a.name.clone(), source: pos(a.source)?, target: pos(a.target)? })
            })
            .collect();
        Quiver { vertices: vertices.iter().map(|&v| self.vertices[v].clone()).collect(), arrows }
    }

    /// `q(d) = Σ d_v² − Σ_arrows d_s·d_t`.
    pub fn tits_form(&self, d: &[i64]) -> i64 {
        assert_eq!(d.len(), self.num_vertices());
        let sq: i64 = d.iter().map(|x| x * x).sum();
        let cross: i64 = self.arrows.iter().map(|a| d[a.source] * d[a.target]).sum();
        sq - cross
    }

    /// Symmetric matrix `C` with `q(d) = ½ dᵀ C d`.
    pub fn symmetrized_tits_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0i64; n]; n];
        for (v, row) in c.iter_mut().enumerate() {
            row[v] = 2;
        }
        for a in &self.arrows {
            c[a.source][a.target] -= 1;
            c[a.target][a.source] -= 1;
        }
        c
    }

    pub fn path_from_names(&self, word: &[&str]) -> Result<Path> {
        let idx: Vec<usize> = word.iter().map(|n| self.arrow_index(n)).collect::<Result<_>>()?;
        Path::from_arrows(self, idx)
    }

    /// Parses `a1*a2*...*ak` (composition order).
    pub fn parse_word(&self, s: &str) -> Result<Path> {
        let names: Vec<&str> = s.split('*').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::MalformedRelation(format!("empty factor in {s:?}")));
        }
        self.path_from_names(&names)
    }
}

/// A path in composition order; `arrows` empty means the stationary path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn stationary(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        let (Some(&first), Some(&last)) = (arrows.first(), arrows.last()) else {
            return Err(Error::MalformedRelation("empty word".into()));
        };
        for w in arrows.windows(2) {
            let (outer, inner) = (&q.arrows[w[0]], &q.arrows[w[1]]);
            if inner.target != outer.source {
                return Err(Error::MalformedRelation(format!(
                    "{}*{} is not composable",
                    outer.name, inner.name
                )));
            }
        }
        Ok(Path { source: q.arrows[last].source, target: q.arrows[first].target, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }

    fn contains_subword(&self, w: &[usize]) -> bool {
        w.len() <= self.arrows.len() && self.arrows.windows(w.len()).any(|s| s == w)
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_stationary() {
            return write!(f, "e_{}", self.quiver.vertex_name(self.path.source));
        }
        let names: Vec<&str> =
            self.path.arrows.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect();
        write!(f, "{}", names.join("*"))
    }
}

/// A path algebra modulo an ideal generated by paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    relations: Vec<Path>,
    basis: Vec<Path>,
    /// `cartan[v][w]` = number of basis paths from `w` to `v` = dim `P(w)_v`.
    cartan: Vec<Vec<usize>>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl BoundQuiverAlgebra {
    /// Path basis by breadth-first extension with the default length cap
    /// `1 + #arrows · #vertices`.
    pub fn new(quiver: Quiver, relations: Vec<Path>) -> Result<BoundQuiverAlgebra> {
        let cap = 1 + quiver.num_arrows() * quiver.num_vertices();
        BoundQuiverAlgebra::with_cap(quiver, relations, cap)
    }

    pub fn relation_free(quiver: Quiver) -> Result<BoundQuiverAlgebra> {
        BoundQuiverAlgebra::new(quiver, Vec::new())
    }

    pub fn with_cap(quiver: Quiver, relations: Vec<Path>, cap: usize) -> Result<BoundQuiverAlgebra> {
        for r in &relations {
            if r.len() < 2 {
                return Err(Error::MalformedRelation(format!(
                    "relation {} has length < 2",
                    r.display(&quiver)
                )));
            }
            // re-validate composability; paths may have been built by hand
            Path::from_arrows(&quiver, r.arrows.clone())?;
        }
        let mut basis: Vec<Path> = (0..quiver.num_vertices()).map(Path::stationary).collect();
        let mut frontier = basis.clone();
        let mut length = 0;
        while !frontier.is_empty() {
            length += 1;
            let mut next = Vec::new();
            for p in &frontier {
                for (a, arrow) in quiver.arrows.iter().enumerate() {
                    if arrow.source != p.target {
                        continue;
                    }
                    let mut word = Vec::with_capacity(p.len() + 1);
                    word.push(a);
                    word.extend_from_slice(&p.arrows);
                    // only prefixes are new subwords
                    if relations.iter().any(|r| word.starts_with(&r.arrows)) {
                        continue;
                    }
                    next.push(Path { source: p.source, target: arrow.target, arrows: word });
                }
            }
            if !next.is_empty() && length > cap {
                return Err(Error::NotAdmissible(format!(
                    "nonzero paths of length {length} exceed the cap {cap}"
                )));
            }
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        let n = quiver.num_vertices();
        let mut cartan = vec![vec![0usize; n]; n];
        for p in &basis {
            cartan[p.target][p.source] += 1;
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        Ok(BoundQuiverAlgebra { quiver, relations, basis, cartan, index })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn cartan(&self) -> &[Vec<usize>] {
        &self.cartan
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    /// Position of a path in the basis, `None` if the path is zero in the algebra.
    pub fn basis_index(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }

    /// Whether a composable word survives in the algebra.
    pub fn is_nonzero_word(&self, arrows: &[usize]) -> bool {
        match arrows.last() {
            None => true,
            Some(&a) => self.basis_index(self.quiver.arrows[a].source, arrows).is_some(),
        }
    }

    /// Basis paths starting at `v`, in basis order.
    pub fn paths_from(&self, v: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == v).collect()
    }

    /// Whether `word` contains some relation as a contiguous subword.
    pub fn word_hits_relation(&self, word: &Path) -> bool {
        self.relations.iter().any(|r| word.contains_subword(&r.arrows))
    }
}

/// The bound quiver of the first wild example: vertices `1..n`, arrows
/// `alpha: 2→1`, `beta: 3→2`, `gamma: 3→1`, `delta<i>: i→i−1` for `4 ≤ i ≤ n`,
/// and the zero relation `alpha*beta`.
pub fn example_one(n: usize) -> Result<BoundQuiverAlgebra> {
    if n < 3 {
        return Err(Error::BadParameter(format!("example one needs n >= 3, got {n}")));
    }
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows: Vec<(String, String, String)> = vec![
        ("alpha".into(), "2".into(), "1".into()),
        ("beta".into(), "3".into(), "2".into()),
        ("gamma".into(), "3".into(), "1".into()),
    ];
    for i in 4..=n {
        arrows.push((format!("delta{i}"), i.to_string(), (i - 1).to_string()));
    }
    let q = Quiver::new(&vertices, &arrows)?;
    let rel = q.path_from_names(&["alpha", "beta"])?;
    BoundQuiverAlgebra::new(q, vec![rel])
}

/// The two-vertex example: `alpha0, alpha1: 1→0`, `beta: 0→1`, relations
/// `beta*alpha0*beta = beta*alpha1*beta = 0`.
pub fn example_two() -> Result<BoundQuiverAlgebra> {
    let q = Quiver::new(
        &["0", "1"],
        &[("alpha0", "1", "0"), ("alpha1", "1", "0"), ("beta", "0", "1")],
    )?;
    let rels = vec![
        q.path_from_names(&["beta", "alpha0", "beta"])?,
        q.path_from_names(&["beta", "alpha1", "beta"])?,
    ];
    BoundQuiverAlgebra::new(q, rels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// `X_n`; for affine labels `rank + 1` is the vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinLabel {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for DynkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{fam}{}", self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphClass {
    Finite(Option<DynkinLabel>),
    TameAffine(Option<DynkinLabel>),
    Wild,
}

impl GraphClass {
    pub fn kind(&self) -> &'static str {
        match self {
            GraphClass::Finite(_) => "finite",
            GraphClass::TameAffine(_) => "tame",
            GraphClass::Wild => "wild",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::Finite(Some(l)) => write!(f, "finite ({l})"),
            GraphClass::Finite(None) => write!(f, "finite"),
            GraphClass::TameAffine(Some(l)) => write!(f, "tame (~{l})"),
            GraphClass::TameAffine(None) => write!(f, "tame"),
            GraphClass::Wild => write!(f, "wild"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Definiteness {
    Positive,
    Semi,
    Indefinite,
}

/// Exact test on a symmetric integer matrix by symmetric Gaussian elimination.
fn definiteness(c: &[Vec<i64>]) -> Definiteness {
    let n = c.len();
    let mut m: Vec<Vec<BigRational>> = c
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut strict = true;
    for k in 0..n {
        let piv = m[k][k].clone();
        if piv.is_negative() {
            return Definiteness::Indefinite;
        }
        if piv.is_zero() {
            if (k + 1..n).any(|j| !m[k][j].is_zero()) {
                return Definiteness::Indefinite;
            }
            strict = false;
            continue;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &piv;
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    if strict {
        Definiteness::Positive
    } else {
        Definiteness::Semi
    }
}

/// Finite / tame / wild verdict for the underlying graph, orientation ignored.
pub fn classify_underlying_graph(q: &Quiver) -> Result<GraphClass> {
    if q.num_vertices() == 0 || !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let c = q.symmetrized_tits_matrix();
    Ok(match definiteness(&c) {
        Definiteness::Positive => GraphClass::Finite(finite_label(q)),
        Definiteness::Semi => GraphClass::TameAffine(affine_label(q)),
        Definiteness::Indefinite => GraphClass::Wild,
    })
}

struct Shape {
    n: usize,
    edges: usize,
    simple: bool,
    degrees: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

fn shape(q: &Quiver) -> Shape {
    let n = q.num_vertices();
    let mut adj = vec![Vec::new(); n];
    let mut simple = true;
    for a in q.arrows() {
        if a.source == a.target || adj[a.source].contains(&a.target) {
            simple = false;
        }
        adj[a.source].push(a.target);
        if a.source != a.target {
            adj[a.target].push(a.source);
        }
    }
    let degrees = adj.iter().map(Vec::len).collect();
    Shape { n, edges: q.num_arrows(), simple, degrees, adj }
}

/// Lengths of the arms hanging off `center` in a tree.
fn arm_lengths(s: &Shape, center: usize) -> Vec<usize> {
    let mut arms = Vec::new();
    for &start in &s.adj[center] {
        let (mut prev, mut cur, mut len) = (center, start, 1);
        while s.degrees[cur] == 2 {
            let next = if s.adj[cur][0] == prev { s.adj[cur][1] } else { s.adj[cur][0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        if s.degrees[cur] != 1 {
            return Vec::new();
        }
        arms.push(len);
    }
    arms.sort_unstable();
    arms
}

fn finite_label(q: &Quiver) -> Option<DynkinLabel> {
    let s = shape(q);
    if !s.simple || s.edges + 1 != s.n {
        return None;
    }
    let branch: Vec<usize> = (0..s.n).filter(|&v| s.degrees[v] >= 3).collect();
    let label = |family, rank| Some(DynkinLabel { family, rank });
    match branch.as_slice() {
        [] => label(Family::A, s.n),
        [c] if s.degrees[*c] == 3 => match arm_lengths(&s, *c).as_slice() {
            [1, 1, _] => label(Family::D, s.n),
            [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => label(Family::E, s.n),
            _ => None,
        },
        _ => None,
    }
}

fn affine_label(q: &Quiver) -> Option<DynkinLabel> {
    let s = shape(q);
    let label = |family, rank| Some(DynkinLabel { family, rank });
    if s.edges == s.n {
        // a single cycle (loops and double edges included)
        return label(Family::A, s.n - 1);
    }
    if !s.simple || s.edges + 1 != s.n {
        return None;
    }
    let branch: Vec<usize> = (0..s.n).filter(|&v| s.degrees[v] >= 3).collect();
    match branch.as_slice() {
        [c] if s.degrees[*c] == 4 => label(Family::D, 4),
        [c] => match arm_lengths(&s, *c).as_slice() {
            [2, 2, 2] => label(Family::E, 6),
            [1, 3, 3] => label(Family::E, 7),
            [1, 2, 5] => label(Family::E, 8),
            _ => None,
        },
        [_, _] => label(Family::D, s.n - 1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_quiver(n: usize) -> Quiver {
        let v: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let a: Vec<(String, String, String)> =
            (1..n).map(|i| (format!("a{i}"), (i + 1).to_string(), i.to_string())).collect();
        Quiver::new(&v, &a).unwrap()
    }

    /// Star with arms of the given lengths, all arrows pointing at the centre `c`.
    fn star(arms: &[usize]) -> Quiver {
        let mut v = vec!["c".to_string()];
        let mut a = Vec::new();
        for (k, &len) in arms.iter().enumerate() {
            let mut prev = "c".to_string();
            for j in 0..len {
                let id = format!("v{k}_{j}");
                v.push(id.clone());
                a.push((format!("x{k}_{j}"), id.clone(), prev.clone()));
                prev = id;
            }
        }
        Quiver::new(&v, &a).unwrap()
    }

    #[test]
    fn example_one_n3_basis() {
        // e1 e2 e3 alpha beta gamma; alpha*beta is killed
        let alg = example_one(3).unwrap();
        assert_eq!(alg.dim(), 6);
        let q = alg.quiver();
        let (v1, v3) = (q.vertex_index("1").unwrap(), q.vertex_index("3").unwrap());
        let from3to1: Vec<String> = alg
            .basis()
            .iter()
            .filter(|p| p.source == v3 && p.target == v1)
            .map(|p| p.display(q).to_string())
            .collect();
        assert_eq!(from3to1, vec!["gamma"]);
        assert_eq!(alg.cartan(), &[vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]);
    }

    #[test]
    fn semisimple_algebra() {
        let q = Quiver::new::<&str>(&["a", "b", "c"], &[]).unwrap();
        let alg = BoundQuiverAlgebra::relation_free(q).unwrap();
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.cartan(), &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn example_two_has_thirteen_paths() {
        let alg = example_two().unwrap();
        let q = alg.quiver();
        let mut words: Vec<String> = alg.basis().iter().map(|p| p.display(q).to_string()).collect();
        words.sort();
        let mut expect = vec![
            "e_0", "e_1", "alpha0", "alpha1", "beta", "beta*alpha0", "beta*alpha1",
            "alpha0*beta", "alpha1*beta", "alpha0*beta*alpha0", "alpha0*beta*alpha1",
            "alpha1*beta*alpha0", "alpha1*beta*alpha1",
        ];
        expect.sort();
        assert_eq!(words, expect);
        assert_eq!(alg.relations().len(), 2);
    }

    #[test]
    fn cartan_sums_to_dimension() {
        for alg in [example_one(3).unwrap(), example_one(7).unwrap(), example_two().unwrap()] {
            let total: usize = alg.cartan().iter().flatten().sum();
            assert_eq!(total, alg.dim());
        }
    }

    /// Every composable word of the relation-free quiver, by depth-first walk.
    fn all_words(q: &Quiver) -> Vec<Vec<usize>> {
        fn walk(q: &Quiver, word: Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(word.clone());
            let end = q.arrows()[word[0]].target;
            for (a, arrow) in q.arrows().iter().enumerate() {
                if arrow.source == end {
                    let mut w = vec![a];
                    w.extend(&word);
                    walk(q, w, out);
                }
            }
        }
        let mut out = Vec::new();
        for a in 0..q.num_arrows() {
            walk(q, vec![a], &mut out);
        }
        out
    }

    #[test]
    fn example_one_dimension_matches_brute_force() {
        for n in 3..=6 {
            let alg = example_one(n).unwrap();
            let q = alg.quiver();
            let rel = q.path_from_names(&["alpha", "beta"]).unwrap();
            let words = all_words(q);
            let through = words.iter().filter(|w| w.windows(2).any(|s| s == rel.arrows)).count();
            assert_eq!(alg.dim(), n + words.len() - through, "n = {n}");
        }
    }

    #[test]
    fn relation_free_cycle_is_not_admissible() {
        let q = Quiver::new(&["0", "1"], &[("a", "0", "1"), ("b", "1", "0")]).unwrap();
        assert!(matches!(BoundQuiverAlgebra::relation_free(q), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn malformed_relations() {
        let q = Quiver::new(&["0", "1"], &[("a", "0", "1"), ("b", "0", "1")]).unwrap();
        assert!(matches!(q.parse_word("a*b"), Err(Error::MalformedRelation(_))));
        let single = q.parse_word("a").unwrap();
        assert!(matches!(
            BoundQuiverAlgebra::new(q, vec![single]),
            Err(Error::MalformedRelation(_))
        ));
    }

    #[test]
    fn example_constructors() {
        let a3 = example_one(3).unwrap();
        assert_eq!((a3.num_vertices(), a3.quiver().num_arrows(), a3.relations().len()), (3, 3, 1));
        let a5 = example_one(5).unwrap();
        assert_eq!((a5.num_vertices(), a5.quiver().num_arrows()), (5, 5));
        let no_beta = a5.quiver().without_arrows(&["beta"]).unwrap();
        assert_eq!(
            classify_underlying_graph(&no_beta).unwrap(),
            GraphClass::Finite(Some(DynkinLabel { family: Family::A, rank: 5 }))
        );
        let no_alpha = a5.quiver().without_arrows(&["alpha"]).unwrap();
        assert_eq!(
            classify_underlying_graph(&no_alpha).unwrap(),
            GraphClass::Finite(Some(DynkinLabel { family: Family::D, rank: 5 }))
        );
        assert!(matches!(example_one(2), Err(Error::BadParameter(_))));
        let two = example_two().unwrap();
        assert_eq!((two.num_vertices(), two.quiver().num_arrows(), two.dim()), (2, 3, 13));
    }

    #[test]
    fn graph_classes() {
        let a3 = classify_underlying_graph(&path_quiver(3)).unwrap();
        assert_eq!(a3, GraphClass::Finite(Some(DynkinLabel { family: Family::A, rank: 3 })));
        assert_eq!(
            classify_underlying_graph(&star(&[1, 2, 5])).unwrap(),
            GraphClass::TameAffine(Some(DynkinLabel { family: Family::E, rank: 8 }))
        );
        assert_eq!(classify_underlying_graph(&star(&[1, 2, 6])).unwrap(), GraphClass::Wild);
        assert_eq!(
            classify_underlying_graph(&star(&[1, 1, 1, 1])).unwrap(),
            GraphClass::TameAffine(Some(DynkinLabel { family: Family::D, rank: 4 }))
        );
        assert_eq!(
            classify_underlying_graph(&star(&[1, 1, 1, 1, 1])).unwrap(),
            GraphClass::Wild
        );
        let kronecker = Quiver::new(&["0", "1"], &[("a", "1", "0"), ("b", "1", "0")]).unwrap();
        assert_eq!(
            classify_underlying_graph(&kronecker).unwrap(),
            GraphClass::TameAffine(Some(DynkinLabel { family: Family::A, rank: 1 }))
        );
        let three = Quiver::new(&["0", "1"], &[("a", "1", "0"), ("b", "1", "0"), ("c", "1", "0")])
            .unwrap();
        assert_eq!(classify_underlying_graph(&three).unwrap(), GraphClass::Wild);
        let split = Quiver::new::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(classify_underlying_graph(&split), Err(Error::Disconnected));
    }

    #[test]
    fn e8_null_root_is_isotropic() {
        // arms 1,2,5 around the centre; null root of ~E8
        let q = star(&[1, 2, 5]);
        // vertex order: c, arm0 (len 1), arm1 (len 2), arm2 (len 5)
        let delta = [6, 3, 4, 2, 5, 4, 3, 2, 1];
        assert_eq!(q.tits_form(&delta), 0);
    }
}
