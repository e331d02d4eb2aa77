//! Higher-rank odd graphs and the involution class count built from them.
//!
//! The vertices of the rank-`k` odd graph are the `k`-subsets whose
//! subdiagram splits into types with central longest element. Two vertices
//! are joined when one arises from the other by swapping a single vertex
//! across an odd bond, both swapped vertices being isolated in their
//! subdiagrams. The number of involution classes of rank `k` is the number
//! of connected components of that graph.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::classify::{classify_component, coxeter_number, decompose, TypeDecomposition};
use crate::diagram::{components_within, CoxeterMatrix, VertexSet};
use crate::error::{Error, Result};

/// Guards against runaway subset enumeration.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_rank: usize,
    /// Maximum number of partial subsets examined per enumeration.
    pub subset_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 24,
            subset_budget: 10_000_000,
        }
    }
}

impl Limits {
    fn check_rank(&self, mat: &CoxeterMatrix) -> Result<()> {
        if mat.rank() > self.max_rank {
            return Err(Error::RankLimit {
                rank: mat.rank(),
                limit: self.max_rank,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    /// Odd-adjacency edges.
    Gamma,
    /// Edges between isomorphic parabolics.
    Omega,
}

#[derive(Debug, Clone)]
pub struct OddGraph {
    pub kind: GraphKind,
    pub k: usize,
    /// Sorted lexicographically.
    pub vertices: Vec<VertexSet>,
    /// Index pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Component label per vertex, numbered in order of each component's
    /// lexicographically smallest vertex.
    pub component_id: Vec<usize>,
}

impl OddGraph {
    fn assemble(
        kind: GraphKind,
        k: usize,
        vertices: Vec<VertexSet>,
        mut edges: Vec<(usize, usize)>,
    ) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut uf = UnionFind::<usize>::new(vertices.len());
        for &(a, b) in &edges {
            uf.union(a, b);
        }
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let component_id = (0..vertices.len())
            .map(|v| {
                let root = uf.find_mut(v);
                let next = relabel.len();
                *relabel.entry(root).or_insert(next)
            })
            .collect();
        OddGraph {
            kind,
            k,
            vertices,
            edges,
            component_id,
        }
    }

    pub fn component_count(&self) -> usize {
        self.component_id.iter().max().map_or(0, |&m| m + 1)
    }

    /// Vertex indices grouped by component, in component-id order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count()];
        for (v, &c) in self.component_id.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

struct Budget {
    examined: u64,
    limit: u64,
}

impl Budget {
    fn new(limits: &Limits) -> Self {
        Budget {
            examined: 0,
            limit: limits.subset_budget,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.examined += 1;
        if self.examined > self.limit {
            return Err(Error::BudgetExceeded {
                examined: self.examined,
                budget: self.limit,
            });
        }
        Ok(())
    }
}

/// All `k`-subsets of `allowed` whose components are all central types, in
/// lexicographic order.
///
/// Subsets grow in increasing index order. A partial subset is dropped as
/// soon as one of its components is non-spherical (no superset can repair
/// that), or a component that no remaining candidate touches is already
/// final and not central.
fn central_subsets(
    mat: &CoxeterMatrix,
    k: usize,
    allowed: VertexSet,
    budget: &mut Budget,
) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    let candidates = allowed.to_vec();
    let mut stack = Vec::with_capacity(k);
    extend(
        mat,
        k,
        &candidates,
        0,
        VertexSet::EMPTY,
        &mut stack,
        &mut out,
        budget,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    mat: &CoxeterMatrix,
    k: usize,
    candidates: &[usize],
    from: usize,
    current: VertexSet,
    stack: &mut Vec<usize>,
    out: &mut Vec<VertexSet>,
    budget: &mut Budget,
) -> Result<()> {
    if current.len() == k {
        out.push(current);
        return Ok(());
    }
    let need = k - current.len();
    if candidates.len() - from < need {
        return Ok(());
    }
    for pos in from..=candidates.len() - need {
        let v = candidates[pos];
        let next = current.with(v);
        budget.tick()?;
        let future = VertexSet::from_indices(candidates[pos + 1..].iter().copied());
        if viable(mat, next, future, next.len() == k) {
            stack.push(v);
            extend(mat, k, candidates, pos + 1, next, stack, out, budget)?;
            stack.pop();
        }
    }
    Ok(())
}

fn viable(mat: &CoxeterMatrix, set: VertexSet, future: VertexSet, complete: bool) -> bool {
    for comp in components_within(mat, set) {
        let t = classify_component(mat, comp);
        if !t.is_spherical() {
            return false;
        }
        let reachable = comp.iter().any(|v| !mat.neighbours(v).is_disjoint(future));
        if (complete || !reachable) && !t.has_central_longest() {
            return false;
        }
    }
    true
}

fn check_k(mat: &CoxeterMatrix, k: usize) -> Result<()> {
    if k == 0 || k > mat.rank() {
        return Err(Error::RankOutOfRange {
            k,
            rank: mat.rank(),
        });
    }
    Ok(())
}

/// Vertex set of the rank-`k` odd graph.
pub fn central_parabolics(
    mat: &CoxeterMatrix,
    k: usize,
    limits: &Limits,
) -> Result<Vec<VertexSet>> {
    limits.check_rank(mat)?;
    central_subsets(mat, k, mat.vertices(), &mut Budget::new(limits))
}

/// Single-swap odd adjacency between two vertices of the same odd graph.
pub fn odd_adjacent(mat: &CoxeterMatrix, j: VertexSet, k: VertexSet) -> bool {
    let only_j = j.difference(k);
    let only_k = k.difference(j);
    if only_j.len() != 1 || only_k.len() != 1 {
        return false;
    }
    let l = only_j.min().unwrap();
    let m = only_k.min().unwrap();
    mat.bond(l, m).is_odd() && mat.neighbours(l).is_disjoint(j) && mat.neighbours(m).is_disjoint(k)
}

pub fn gamma_k(mat: &CoxeterMatrix, k: usize) -> Result<OddGraph> {
    gamma_k_with(mat, k, &Limits::default())
}

/// Builds the rank-`k` odd graph. Edges are generated per odd bond `{i, j}`:
/// every central `(k-1)`-subset avoiding `i`, `j` and their neighbours
/// yields the edge `S + i -- S + j`, and nothing else does.
pub fn gamma_k_with(mat: &CoxeterMatrix, k: usize, limits: &Limits) -> Result<OddGraph> {
    check_k(mat, k)?;
    limits.check_rank(mat)?;
    let mut budget = Budget::new(limits);
    let vertices = central_subsets(mat, k, mat.vertices(), &mut budget)?;
    let index: HashMap<VertexSet, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for i in 0..mat.rank() {
        for j in mat.odd_neighbours(i).iter().filter(|&j| j > i) {
            let blocked = mat.neighbours(i).union(mat.neighbours(j)).with(i).with(j);
            let allowed = mat.vertices().difference(blocked);
            for rest in central_subsets(mat, k - 1, allowed, &mut budget)? {
                let a = index[&rest.with(i)];
                let b = index[&rest.with(j)];
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    Ok(OddGraph::assemble(GraphKind::Gamma, k, vertices, edges))
}

/// Rank-`k` odd graph built by testing every vertex pair with
/// [`odd_adjacent`]. Quadratic; kept as a cross-check for [`gamma_k`].
pub fn gamma_k_pairwise(mat: &CoxeterMatrix, k: usize) -> Result<OddGraph> {
    check_k(mat, k)?;
    let limits = Limits::default();
    let vertices = central_parabolics(mat, k, &limits)?;
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            if odd_adjacent(mat, vertices[a], vertices[b]) {
                edges.push((a, b));
            }
        }
    }
    Ok(OddGraph::assemble(GraphKind::Gamma, k, vertices, edges))
}

pub fn omega_k(mat: &CoxeterMatrix, k: usize) -> Result<OddGraph> {
    omega_k_with(mat, k, &Limits::default())
}

/// Same vertices as the odd graph; edges join vertices of equal type.
/// At `k = 1` this is the odd graph itself.
pub fn omega_k_with(mat: &CoxeterMatrix, k: usize, limits: &Limits) -> Result<OddGraph> {
    if k == 1 {
        let mut g = gamma_k_with(mat, 1, limits)?;
        g.kind = GraphKind::Omega;
        return Ok(g);
    }
    check_k(mat, k)?;
    let vertices = central_parabolics(mat, k, limits)?;
    let mut by_type: BTreeMap<TypeDecomposition, Vec<usize>> = BTreeMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        by_type.entry(decompose(mat, v)).or_default().push(i);
    }
    let mut edges = Vec::new();
    for members in by_type.values() {
        for (x, &a) in members.iter().enumerate() {
            edges.extend(members[x + 1..].iter().map(|&b| (a, b)));
        }
    }
    Ok(OddGraph::assemble(GraphKind::Omega, k, vertices, edges))
}

/// One involution class: its lexicographically smallest standard parabolic
/// and a word for that parabolic's longest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionClass {
    pub rank: usize,
    pub subset: VertexSet,
    pub decomposition: TypeDecomposition,
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionClassReport {
    /// `per_rank[k - 1]` counts classes of rank `k`, for `k = 1..=n`.
    pub per_rank: Vec<usize>,
    pub total: usize,
    pub classes: Vec<InvolutionClass>,
}

impl InvolutionClassReport {
    /// `"a+b+…+z=total"`. With `drop_top` the rank-`n` term is omitted,
    /// which is how sums for infinite groups are usually written (that term
    /// is always 0 there). A single term is printed alone.
    pub fn summation(&self, drop_top: bool) -> String {
        let terms = if drop_top && !self.per_rank.is_empty() {
            &self.per_rank[..self.per_rank.len() - 1]
        } else {
            &self.per_rank[..]
        };
        format_summation(terms, self.total)
    }
}

pub fn format_summation(terms: &[usize], total: usize) -> String {
    match terms {
        [] => total.to_string(),
        [only] if *only == total => total.to_string(),
        _ => {
            let parts: Vec<String> = terms.iter().map(usize::to_string).collect();
            format!("{}={}", parts.join("+"), total)
        }
    }
}

/// Longest element of a parabolic whose components are all central types:
/// for each component `C` (by smallest member), its generators in ascending
/// order repeated `h(C)/2` times.
pub fn longest_element_word(mat: &CoxeterMatrix, subset: VertexSet) -> Result<Vec<usize>> {
    let mut word = Vec::new();
    for comp in components_within(mat, subset) {
        let t = classify_component(mat, comp);
        if !t.has_central_longest() {
            return Err(Error::Precondition(format!(
                "component {t} has no central longest element"
            )));
        }
        let h = coxeter_number(t)? as usize;
        for _ in 0..h / 2 {
            word.extend(comp.iter());
        }
    }
    Ok(word)
}

pub fn cc2(mat: &CoxeterMatrix) -> Result<InvolutionClassReport> {
    cc2_with(mat, &Limits::default())
}

pub fn cc2_with(mat: &CoxeterMatrix, limits: &Limits) -> Result<InvolutionClassReport> {
    limits.check_rank(mat)?;
    let mut per_rank = Vec::with_capacity(mat.rank());
    let mut classes = Vec::new();
    for k in 1..=mat.rank() {
        let g = gamma_k_with(mat, k, limits)?;
        per_rank.push(g.component_count());
        for comp in g.components() {
            // vertices are lex-sorted, so the first member is the smallest
            let subset = g.vertices[comp[0]];
            classes.push(InvolutionClass {
                rank: k,
                subset,
                decomposition: decompose(mat, subset),
                word: longest_element_word(mat, subset)?,
            });
        }
    }
    Ok(InvolutionClassReport {
        total: per_rank.iter().sum(),
        per_rank,
        classes,
    })
}

/// Inclusion-maximal spherical subsets, sorted.
pub fn maximal_spherical_subsets(mat: &CoxeterMatrix, limits: &Limits) -> Result<Vec<VertexSet>> {
    limits.check_rank(mat)?;
    let all = mat.vertices();
    if decompose(mat, all).is_spherical() {
        return Ok(vec![all]);
    }
    // Sphericity is inherited by subsets, so depth-first growth from the
    // empty set reaches every spherical subset exactly once.
    let mut budget = Budget::new(limits);
    let mut spherical: HashSet<VertexSet> = HashSet::new();
    let mut stack = vec![VertexSet::EMPTY];
    spherical.insert(VertexSet::EMPTY);
    while let Some(s) = stack.pop() {
        let start = s.max().map_or(0, |m| m + 1);
        for v in start..mat.rank() {
            budget.tick()?;
            let t = s.with(v);
            if decompose(mat, t).is_spherical() {
                spherical.insert(t);
                stack.push(t);
            }
        }
    }
    let mut maximal: Vec<VertexSet> = spherical
        .iter()
        .copied()
        .filter(|&s| {
            all.difference(s)
                .iter()
                .all(|v| !spherical.contains(&s.with(v)))
        })
        .collect();
    maximal.sort_unstable();
    Ok(maximal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub omega_lower: usize,
    pub maximal_spherical_upper: usize,
    pub numeric_upper: u128,
    pub is_finite: bool,
}

pub fn bounds(mat: &CoxeterMatrix) -> Result<Bounds> {
    bounds_with(mat, &Limits::default())
}

pub fn bounds_with(mat: &CoxeterMatrix, limits: &Limits) -> Result<Bounds> {
    limits.check_rank(mat)?;
    let n = mat.rank();
    let mut omega_lower = 0;
    for k in 1..=n {
        omega_lower += omega_k_with(mat, k, limits)?.component_count();
    }
    let mut maximal_spherical_upper = 0;
    for delta in maximal_spherical_subsets(mat, limits)? {
        let sub = crate::diagram::induced(mat, delta)?;
        maximal_spherical_upper += cc2_with(&sub, limits)?.total;
    }
    let is_finite = decompose(mat, mat.vertices()).is_spherical();
    let full = (1u128 << n) - 1;
    let numeric_upper = if is_finite { full } else { full - 1 };
    Ok(Bounds {
        omega_lower,
        maximal_spherical_upper,
        numeric_upper,
        is_finite,
    })
}

fn vertex_name(subset: VertexSet, labels: Option<&[String]>) -> String {
    let names: Vec<String> = subset
        .iter()
        .map(|i| match labels {
            Some(l) => l[i].clone(),
            None => (i + 1).to_string(),
        })
        .collect();
    format!("W_{{{}}}", names.join(","))
}

/// Graphviz DOT, one cluster per component. Vertex names use the supplied
/// labels or 1-based indices.
pub fn export_dot(g: &OddGraph, labels: Option<&[String]>) -> String {
    let prefix = match g.kind {
        GraphKind::Gamma => "Gamma",
        GraphKind::Omega => "Omega",
    };
    let mut out = format!("graph {prefix}{} {{\n", g.k);
    let names: Vec<String> = g.vertices.iter().map(|&v| vertex_name(v, labels)).collect();
    let mut comp_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.component_count()];
    for &(a, b) in &g.edges {
        comp_edges[g.component_id[a]].push((a, b));
    }
    for (c, members) in g.components().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{c} {{");
        for &v in members {
            let _ = writeln!(out, "    \"{}\";", names[v]);
        }
        for &(a, b) in &comp_edges[c] {
            let _ = writeln!(out, "    \"{}\" -- \"{}\";", names[a], names[b]);
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_name;

    fn s(ix: &[usize]) -> VertexSet {
        VertexSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn g2_tilde_graphs() {
        // s1 -3- s2 -6- s3
        let g = parse_name("~G2").unwrap();
        let g1 = gamma_k(&g, 1).unwrap();
        assert_eq!(g1.vertices.len(), 3);
        assert_eq!(g1.edges, vec![(0, 1)]);
        assert_eq!(g1.component_count(), 2);

        let g2 = gamma_k(&g, 2).unwrap();
        assert_eq!(g2.vertices, vec![s(&[0, 2]), s(&[1, 2])]);
        assert!(g2.edges.is_empty());
        assert_eq!(g2.component_count(), 2);

        assert!(gamma_k(&g, 3).unwrap().is_empty());
        assert!(gamma_k(&g, 4).is_err());
        assert!(gamma_k(&g, 0).is_err());
    }

    #[test]
    fn odd_adjacency_examples() {
        let a4 = parse_name("A4").unwrap();
        assert!(odd_adjacent(&a4, s(&[0, 2]), s(&[0, 3])));
        assert!(odd_adjacent(&a4, s(&[0, 3]), s(&[1, 3])));
        assert!(!odd_adjacent(&a4, s(&[0, 2]), s(&[1, 3])));

        let g = parse_name("~G2").unwrap();
        // swapped vertex s2 is joined to s3 inside {s2, s3}
        assert!(!odd_adjacent(&g, s(&[0, 2]), s(&[1, 2])));

        let even = parse_name("~C3").unwrap();
        let verts = central_parabolics(&even, 2, &Limits::default()).unwrap();
        for &a in &verts {
            for &b in &verts {
                assert!(!odd_adjacent(&even, a, b));
            }
        }
    }

    #[test]
    fn disconnected_diagram_gives_isolated_vertices() {
        let m = parse_name("A1+A1+A1+A1").unwrap();
        let g = gamma_k(&m, 2).unwrap();
        assert_eq!(g.vertices.len(), 6);
        assert!(g.edges.is_empty());
        assert_eq!(g.component_count(), 6);
    }

    #[test]
    fn cc2_examples() {
        let r = cc2(&parse_name("~G2").unwrap()).unwrap();
        assert_eq!(r.per_rank, vec![2, 2, 0]);
        assert_eq!(r.total, 4);
        assert_eq!(r.summation(true), "2+2=4");

        let r = cc2(&CoxeterMatrix::empty()).unwrap();
        assert_eq!(r.total, 0);
        assert!(r.per_rank.is_empty());

        let r = cc2(&parse_name("A4").unwrap()).unwrap();
        assert_eq!(r.per_rank, vec![1, 1, 0, 0]);
        assert_eq!(r.total, 2);
        assert_eq!(r.classes[1].subset, s(&[0, 2]));
        assert_eq!(r.classes[1].word, vec![0, 2]);
    }

    #[test]
    fn representative_words() {
        let b2 = parse_name("B2").unwrap();
        assert_eq!(
            longest_element_word(&b2, b2.vertices()).unwrap(),
            vec![0, 1, 0, 1]
        );
        let m = parse_name("A1+G2").unwrap();
        assert_eq!(
            longest_element_word(&m, m.vertices()).unwrap(),
            vec![0, 1, 2, 1, 2, 1, 2]
        );
        assert!(longest_element_word(&parse_name("A2").unwrap(), s(&[0, 1])).is_err());
    }

    #[test]
    fn omega_examples() {
        let c2 = parse_name("~C2").unwrap();
        let o = omega_k(&c2, 2).unwrap();
        assert_eq!(o.vertices.len(), 3);
        assert_eq!(o.edges.len(), 1);
        assert_eq!(o.component_count(), 2);
        assert_eq!(gamma_k(&c2, 2).unwrap().component_count(), 3);

        let m = parse_name("I2(4)+I2(6)").unwrap();
        let o = omega_k(&m, 1).unwrap();
        assert_eq!(o.vertices.len(), 4);
        assert_eq!(o.component_count(), 4);

        let a4 = parse_name("A4").unwrap();
        let o = omega_k(&a4, 2).unwrap();
        assert_eq!(o.vertices.len(), 3);
        assert_eq!(o.edges.len(), 3);
        assert_eq!(o.component_count(), 1);
    }

    #[test]
    fn bounds_examples() {
        let b = bounds(&parse_name("~C2").unwrap()).unwrap();
        assert_eq!(b.numeric_upper, 6);
        assert!(!b.is_finite);

        let b = bounds(&parse_name("A1+A1+A1+A1").unwrap()).unwrap();
        assert_eq!(b.numeric_upper, 15);
        assert!(b.is_finite);

        let g = parse_name("~G2").unwrap();
        assert_eq!(
            maximal_spherical_subsets(&g, &Limits::default()).unwrap(),
            vec![s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]
        );
        // A2 + (A1 x A1) + G2
        let b = bounds(&g).unwrap();
        assert_eq!(b.maximal_spherical_upper, 1 + 3 + 3);
        assert_eq!(b.omega_lower, 4);
    }

    #[test]
    fn dot_export() {
        let g = gamma_k(&parse_name("~G2").unwrap(), 2).unwrap();
        let dot = export_dot(&g, None);
        assert!(dot.contains("\"W_{1,3}\""));
        assert!(dot.contains("\"W_{2,3}\""));
        assert!(!dot.contains("--"));

        let g = gamma_k(&parse_name("A4").unwrap(), 2).unwrap();
        let dot = export_dot(&g, None);
        assert!(dot.contains("\"W_{1,3}\" -- \"W_{1,4}\""));
        assert!(dot.contains("\"W_{1,4}\" -- \"W_{2,4}\""));
        assert_eq!(dot.matches("--").count(), 2);

        let empty = gamma_k(&parse_name("~G2").unwrap(), 3).unwrap();
        assert_eq!(export_dot(&empty, None), "graph Gamma3 {\n}\n");
    }

    #[test]
    fn rank_limit_enforced() {
        let m = parse_name("A30").unwrap();
        assert!(matches!(cc2(&m), Err(Error::RankLimit { .. })));
        let tight = Limits {
            max_rank: 64,
            subset_budget: 10,
        };
        assert!(matches!(
            cc2_with(&parse_name("A8").unwrap(), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
