//! Coxeter matrices, vertex subsets and the input formats that produce them.
//!
//! A [`CoxeterMatrix`] is always validated on construction; every other
//! operation in the crate assumes its invariants. Vertices are 0-based
//! internally. Optional display labels travel alongside in a [`Diagram`].

use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Largest rank representable by a [`VertexSet`] bitset.
pub const MAX_RANK: usize = 64;

/// Order of the product `s_i s_j` for a pair of generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinity,
}

impl Bond {
    /// Integer encoding used by the JSON format: `0` stands for infinity.
    pub fn from_code(code: u32) -> Self {
        if code == 0 {
            Bond::Infinity
        } else {
            Bond::Finite(code)
        }
    }

    pub fn code(self) -> u32 {
        match self {
            Bond::Finite(m) => m,
            Bond::Infinity => 0,
        }
    }

    /// Whether the pair is joined in the Coxeter diagram.
    pub fn is_edge(self) -> bool {
        match self {
            Bond::Finite(m) => m >= 3,
            Bond::Infinity => true,
        }
    }

    /// Finite odd bond of order at least 3.
    pub fn is_odd(self) -> bool {
        matches!(self, Bond::Finite(m) if m >= 3 && m % 2 == 1)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinity => None,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinity => f.write_str("inf"),
        }
    }
}

/// A subset of diagram vertices, stored as a bitset over `0..64`.
///
/// Ordering is lexicographic on the ascending member lists, so for sets of
/// equal size the smallest set is the one a lexicographic enumeration
/// produces first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VertexSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(VertexSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        VertexSet(self.0 | 1u64 << i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        VertexSet(self.0 & !(1u64 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_indices(iter)
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Symmetric matrix of bond orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    n: usize,
    bonds: Vec<Bond>,
    // Per-vertex diagram neighbours and odd-bond neighbours, as bitsets.
    adjacency: Vec<u64>,
    odd: Vec<u64>,
}

impl CoxeterMatrix {
    /// Builds a matrix from rows, validating every invariant.
    pub fn new(rows: Vec<Vec<Bond>>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_RANK {
            return Err(Error::RankLimit {
                rank: n,
                limit: MAX_RANK,
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "row {i} has {} entries, expected {n} (matrix must be square)",
                    row.len()
                )));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if i == j {
                    if b != Bond::Finite(1) {
                        return Err(Error::Validation(format!(
                            "diagonal entry ({i},{i}) is {}, expected 1",
                            b.code()
                        )));
                    }
                } else if let Bond::Finite(m) = b {
                    if m < 2 {
                        return Err(Error::Validation(format!(
                            "off-diagonal entry ({i},{j}) is {m}, must be at least 2 or 0 for infinity"
                        )));
                    }
                }
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate().skip(i + 1) {
                if b != rows[j][i] {
                    return Err(Error::Validation(format!(
                        "asymmetric at ({i},{j}): {} vs {}",
                        b.code(),
                        rows[j][i].code()
                    )));
                }
            }
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    fn from_rows_unchecked(rows: Vec<Vec<Bond>>) -> Self {
        let n = rows.len();
        let bonds: Vec<Bond> = rows.into_iter().flatten().collect();
        let mut adjacency = vec![0u64; n];
        let mut odd = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let b = bonds[i * n + j];
                if i != j && b.is_edge() {
                    adjacency[i] |= 1 << j;
                }
                if i != j && b.is_odd() {
                    odd[i] |= 1 << j;
                }
            }
        }
        CoxeterMatrix {
            n,
            bonds,
            adjacency,
            odd,
        }
    }

    /// Builds a matrix from off-diagonal bonds; unlisted pairs commute.
    pub fn from_edges(n: usize, edges: &[(usize, usize, Bond)]) -> Result<Self> {
        if n > MAX_RANK {
            return Err(Error::RankLimit {
                rank: n,
                limit: MAX_RANK,
            });
        }
        let mut rows = vec![vec![Bond::Finite(2); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Bond::Finite(1);
        }
        for &(i, j, b) in edges {
            for idx in [i, j] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        rank: n,
                    });
                }
            }
            if i == j {
                return Err(Error::Validation(format!("self-bond at vertex {i}")));
            }
            rows[i][j] = b;
            rows[j][i] = b;
        }
        Self::new(rows)
    }

    /// Rank-0 matrix.
    pub fn empty() -> Self {
        Self::from_rows_unchecked(Vec::new())
    }

    pub fn from_codes(rows: &[Vec<i64>]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, &c) in row.iter().enumerate() {
                if c < 0 {
                    return Err(Error::Validation(format!(
                        "entry ({i},{j}) is negative ({c})"
                    )));
                }
                let c = u32::try_from(c).map_err(|_| {
                    Error::Validation(format!("entry ({i},{j}) is too large ({c})"))
                })?;
                r.push(Bond::from_code(c));
            }
            out.push(r);
        }
        Self::new(out)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.bonds[i * self.n + j]
    }

    /// Diagram neighbours of `i`.
    pub fn neighbours(&self, i: usize) -> VertexSet {
        VertexSet(self.adjacency[i])
    }

    /// Neighbours of `i` across finite odd bonds.
    pub fn odd_neighbours(&self, i: usize) -> VertexSet {
        VertexSet(self.odd[i])
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Rows as integer codes (0 = infinity), the JSON representation.
    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.bond(i, j).code()).collect())
            .collect()
    }

    pub fn graph(&self) -> DiagramGraph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let b = self.bond(i, j);
                if b.is_edge() {
                    edges.push((i, j, b));
                }
            }
        }
        DiagramGraph {
            n: self.n,
            adjacency: self.adjacency.clone(),
            edges,
        }
    }

    /// Block-diagonal union; `other`'s vertices are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &CoxeterMatrix) -> Result<CoxeterMatrix> {
        let n = self.n + other.n;
        let mut edges = Vec::new();
        for (mat, offset) in [(self, 0), (other, self.n)] {
            for i in 0..mat.n {
                for j in i + 1..mat.n {
                    edges.push((i + offset, j + offset, mat.bond(i, j)));
                }
            }
        }
        CoxeterMatrix::from_edges(n, &edges)
    }

    /// Applies a vertex permutation: new vertex `perm[i]` is old vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<CoxeterMatrix> {
        if perm.len() != self.n {
            return Err(Error::Validation("permutation length mismatch".into()));
        }
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                edges.push((perm[i], perm[j], self.bond(i, j)));
            }
        }
        CoxeterMatrix::from_edges(self.n, &edges)
    }
}

impl fmt::Debug for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterMatrix")
            .field("rank", &self.n)
            .field("m", &self.to_codes())
            .finish()
    }
}

/// Unlabeled simple-graph view of a Coxeter matrix with a parallel label list.
#[derive(Debug, Clone)]
pub struct DiagramGraph {
    pub n: usize,
    adjacency: Vec<u64>,
    /// Edges `(i, j, bond)` with `i < j`.
    pub edges: Vec<(usize, usize, Bond)>,
}

impl DiagramGraph {
    pub fn neighbours(&self, i: usize) -> VertexSet {
        VertexSet(self.adjacency[i])
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count_ones() as usize
    }
}

/// A matrix together with optional display labels.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub matrix: CoxeterMatrix,
    pub labels: Option<Vec<String>>,
}

impl Diagram {
    pub fn unlabeled(matrix: CoxeterMatrix) -> Self {
        Diagram {
            matrix,
            labels: None,
        }
    }

    /// Display label of vertex `i`: the supplied label, else `i + 1`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => (i + 1).to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDocument {
    matrix: Vec<Vec<i64>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

/// Parses `{"matrix": [[int]], "labels": [string]?}`; `0` encodes infinity.
pub fn parse_document(text: &str) -> Result<Diagram> {
    let doc: MatrixDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let matrix = CoxeterMatrix::from_codes(&doc.matrix)?;
    if let Some(labels) = &doc.labels {
        if labels.len() != matrix.rank() {
            return Err(Error::Validation(format!(
                "{} labels supplied for rank {}",
                labels.len(),
                matrix.rank()
            )));
        }
    }
    Ok(Diagram {
        matrix,
        labels: doc.labels,
    })
}

pub fn parse_matrix(text: &str) -> Result<CoxeterMatrix> {
    parse_document(text).map(|d| d.matrix)
}

/// Serializes to the JSON document format.
pub fn to_document(diagram: &Diagram) -> String {
    let mut value = serde_json::json!({ "matrix": diagram.matrix.to_codes() });
    if let Some(labels) = &diagram.labels {
        value["labels"] = serde_json::json!(labels);
    }
    value.to_string()
}

fn parse_bond_token(tok: &str, line: usize) -> Result<Bond> {
    if tok.eq_ignore_ascii_case("inf") {
        return Ok(Bond::Infinity);
    }
    let m: u32 = tok
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad bond {tok:?}")))?;
    if m == 0 {
        Ok(Bond::Infinity)
    } else if m < 2 {
        Err(Error::Validation(format!(
            "line {line}: bond {m} must be at least 2"
        )))
    } else {
        Ok(Bond::Finite(m))
    }
}

/// Parses the edge-list text format: a `rank n` header, then `i j m` lines
/// (`m` may be `inf`). Unlisted pairs default to 2. `#` starts a comment.
/// A line `i j` with no bond is accepted and means `m = 2`.
pub fn parse_edge_list(text: &str) -> Result<CoxeterMatrix> {
    let mut rank: Option<usize> = None;
    let mut edges: Vec<(usize, usize, Bond)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if rank.is_none() {
            match toks.as_slice() {
                ["rank", n] => {
                    let n = n
                        .parse()
                        .map_err(|_| Error::Parse(format!("line {lineno}: bad rank {n:?}")))?;
                    rank = Some(n);
                    continue;
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {lineno}: expected `rank n` header"
                    )))
                }
            }
        }
        let idx = |t: &str| -> Result<usize> {
            t.parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad vertex index {t:?}")))
        };
        let (i, j, b) = match toks.as_slice() {
            [i, j] => (idx(i)?, idx(j)?, Bond::Finite(2)),
            [i, j, m] => (idx(i)?, idx(j)?, parse_bond_token(m, lineno)?),
            _ => {
                return Err(Error::Parse(format!(
                    "line {lineno}: expected `i j m`, got {line:?}"
                )))
            }
        };
        if let Some(&(_, _, prev)) = edges
            .iter()
            .find(|&&(a, c, _)| (a, c) == (i, j) || (a, c) == (j, i))
        {
            if prev != b {
                return Err(Error::Validation(format!(
                    "pair ({i},{j}) listed twice with bonds {prev} and {b}"
                )));
            }
        }
        edges.push((i, j, b));
    }
    let n = rank.ok_or_else(|| Error::Parse("missing `rank n` header".into()))?;
    CoxeterMatrix::from_edges(n, &edges)
}

/// Full subdiagram on `subset`, rows in ascending member order.
pub fn induced(mat: &CoxeterMatrix, subset: VertexSet) -> Result<CoxeterMatrix> {
    if let Some(max) = subset.max() {
        if max >= mat.rank() {
            return Err(Error::IndexOutOfRange {
                index: max,
                rank: mat.rank(),
            });
        }
    }
    let members = subset.to_vec();
    let rows = members
        .iter()
        .map(|&i| members.iter().map(|&j| mat.bond(i, j)).collect())
        .collect();
    Ok(CoxeterMatrix::from_rows_unchecked(rows))
}

/// Connected components of the diagram restricted to `within`, ordered by
/// smallest member.
pub fn components_within(mat: &CoxeterMatrix, within: VertexSet) -> Vec<VertexSet> {
    let mut remaining = within;
    let mut out = Vec::new();
    while let Some(start) = remaining.min() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(mat.neighbours(v));
            }
            frontier = next.intersection(within).difference(comp);
            comp = comp.union(frontier);
        }
        remaining = remaining.difference(comp);
        out.push(comp);
    }
    out
}

pub fn components(mat: &CoxeterMatrix) -> Vec<VertexSet> {
    components_within(mat, mat.vertices())
}

/// Vertices outside `set` joined to some member of `set`.
pub fn neighbourhood(mat: &CoxeterMatrix, set: VertexSet) -> VertexSet {
    set.iter()
        .fold(VertexSet::EMPTY, |acc, v| acc.union(mat.neighbours(v)))
        .difference(set)
}

// ---------------------------------------------------------------------------
// Named types

fn path(n: usize, special: &[(usize, u32)]) -> Vec<(usize, usize, Bond)> {
    (0..n.saturating_sub(1))
        .map(|i| {
            let m = special
                .iter()
                .find(|&&(e, _)| e == i)
                .map_or(3, |&(_, m)| m);
            (i, i + 1, Bond::Finite(m))
        })
        .collect()
}

fn bad(name: &str, reason: impl Into<String>) -> Error {
    Error::BadName {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn finite_family(term: &str, letter: char, n: usize) -> Result<CoxeterMatrix> {
    let e3 = |a, b| (a, b, Bond::Finite(3));
    let edges = match letter {
        'A' if n >= 1 => path(n, &[]),
        'B' | 'C' if n >= 2 => path(n, &[(n - 2, 4)]),
        'D' if n >= 4 => {
            let mut e = path(n - 1, &[]);
            e.push(e3(n - 3, n - 1));
            e
        }
        'E' if (6..=8).contains(&n) => {
            let mut e = path(n - 1, &[]);
            e.push(e3(2, n - 1));
            e
        }
        'F' if n == 4 => path(4, &[(1, 4)]),
        'G' if n == 2 => path(2, &[(0, 6)]),
        'H' if (2..=4).contains(&n) => path(n, &[(n - 2, 5)]),
        'A' | 'B' | 'C' | 'D' | 'E' | 'F' | 'G' | 'H' => {
            return Err(bad(
                term,
                format!("rank {n} outside the valid range of {letter}"),
            ))
        }
        _ => return Err(bad(term, format!("unknown family {letter:?}"))),
    };
    CoxeterMatrix::from_edges(n, &edges)
}

/// Affine diagram `~X n` on `n + 1` vertices.
fn affine_family(term: &str, letter: char, n: usize) -> Result<CoxeterMatrix> {
    let e3 = |a, b| (a, b, Bond::Finite(3));
    let (rank, edges) = match letter {
        'A' | 'I' if n == 1 => (2, vec![(0, 1, Bond::Infinity)]),
        'A' if n >= 2 => {
            let mut e = path(n + 1, &[]);
            e.push(e3(n, 0));
            (n + 1, e)
        }
        'B' if n >= 3 => {
            let mut e = path(n, &[(0, 4)]);
            e.push(e3(n - 2, n));
            (n + 1, e)
        }
        'C' if n >= 2 => (n + 1, path(n + 1, &[(0, 4), (n - 1, 4)])),
        'D' if n >= 4 => {
            let mut e = vec![e3(0, 2), e3(1, 2)];
            e.extend((2..n - 2).map(|i| e3(i, i + 1)));
            e.push(e3(n - 2, n - 1));
            e.push(e3(n - 2, n));
            (n + 1, e)
        }
        'E' if n == 6 => {
            let mut e = path(5, &[]);
            e.push(e3(2, 5));
            e.push(e3(5, 6));
            (7, e)
        }
        'E' if n == 7 => {
            let mut e = path(7, &[]);
            e.push(e3(3, 7));
            (8, e)
        }
        'E' if n == 8 => {
            let mut e = path(8, &[]);
            e.push(e3(2, 8));
            (9, e)
        }
        'F' if n == 4 => (5, path(5, &[(2, 4)])),
        'G' if n == 2 => (3, path(3, &[(1, 6)])),
        'A' | 'B' | 'C' | 'D' | 'E' | 'F' | 'G' | 'I' => {
            return Err(bad(
                term,
                format!("rank {n} outside the valid range of affine {letter}"),
            ))
        }
        _ => return Err(bad(term, format!("unknown affine family {letter:?}"))),
    };
    CoxeterMatrix::from_edges(rank, &edges)
}

struct Cursor<'a> {
    term: &'a str,
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn eat(&mut self, prefix: &str) -> bool {
        match self.rest.strip_prefix(prefix) {
            Some(r) => {
                self.rest = r.trim_start();
                true
            }
            None => false,
        }
    }

    fn expect(&mut self, prefix: &str) -> Result<()> {
        if self.eat(prefix) {
            Ok(())
        } else {
            Err(bad(
                self.term,
                format!("expected {prefix:?} at {:?}", self.rest),
            ))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let end = self
            .rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest.len());
        if end == 0 {
            return Err(bad(
                self.term,
                format!("expected a number at {:?}", self.rest),
            ));
        }
        let n = self.rest[..end]
            .parse()
            .map_err(|_| bad(self.term, "number too large"))?;
        self.rest = self.rest[end..].trim_start();
        Ok(n)
    }

    fn param(&mut self) -> Result<Bond> {
        if self.eat("inf") || self.eat("∞") {
            return Ok(Bond::Infinity);
        }
        let m = self.number()?;
        if m < 2 {
            return Err(bad(self.term, format!("parameter {m} must be at least 2")));
        }
        u32::try_from(m)
            .map(Bond::Finite)
            .map_err(|_| bad(self.term, "parameter too large"))
    }

    fn letter(&mut self) -> Result<char> {
        let c = self
            .rest
            .chars()
            .next()
            .ok_or_else(|| bad(self.term, "unexpected end of name"))?;
        self.rest = self.rest[c.len_utf8()..].trim_start();
        Ok(c)
    }
}

fn parse_term(term: &str) -> Result<CoxeterMatrix> {
    let mut cur = Cursor { term, rest: term };
    let mat = if cur.eat("~") {
        let letter = cur.letter()?;
        let n = cur.number()?;
        affine_family(term, letter, n)?
    } else if cur.eat("I2") {
        cur.expect("(")?;
        let m = cur.param()?;
        cur.expect(")")?;
        CoxeterMatrix::from_edges(2, &[(0, 1, m)])?
    } else if cur.eat("Delta") {
        cur.expect("(")?;
        let p = cur.param()?;
        cur.expect(",")?;
        let q = cur.param()?;
        cur.expect(",")?;
        let r = cur.param()?;
        cur.expect(")")?;
        CoxeterMatrix::from_edges(3, &[(0, 1, p), (0, 2, q), (1, 2, r)])?
    } else if cur.eat("U") {
        let n = cur.number()?;
        if n == 0 {
            return Err(bad(term, "universal diagram needs rank at least 1"));
        }
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j, Bond::Infinity)))
            .collect();
        CoxeterMatrix::from_edges(n, &edges)?
    } else {
        let letter = cur.letter()?;
        let n = cur.number()?;
        finite_family(term, letter, n)?
    };
    if !cur.rest.is_empty() {
        return Err(bad(term, format!("trailing input {:?}", cur.rest)));
    }
    Ok(mat)
}

/// Parses a type name such as `A4`, `~E7`, `I2(8)`, `Delta(2,3,inf)`, `U5`,
/// or a `+`-separated disjoint union of those.
pub fn parse_name(name: &str) -> Result<CoxeterMatrix> {
    let trimmed = name.trim();
    if trimmed.is_empty() {
        return Err(bad(name, "empty name"));
    }
    let mut acc = CoxeterMatrix::empty();
    for term in trimmed.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(bad(name, "empty summand"));
        }
        acc = acc.disjoint_union(&parse_term(term)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> VertexSet {
        VertexSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn parse_minimal_odd_edge() {
        let m = parse_matrix(r#"{"matrix":[[1,3],[3,1]]}"#).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.bond(0, 1), Bond::Finite(3));
    }

    #[test]
    fn parse_g2_tilde_json() {
        let m = parse_matrix(r#"{"matrix":[[1,6,2],[6,1,3],[2,3,1]]}"#).unwrap();
        assert_eq!(m.bond(0, 1), Bond::Finite(6));
        assert_eq!(m.bond(1, 2), Bond::Finite(3));
        assert!(!m.bond(0, 2).is_edge());
    }

    #[test]
    fn zero_means_infinity() {
        let m = parse_matrix(r#"{"matrix":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(m.bond(0, 1), Bond::Infinity);
        assert_ne!(m.bond(0, 1), Bond::Finite(0));
    }

    #[test]
    fn validation_errors_name_indices() {
        let cases = [
            (r#"{"matrix":[[1,2],[3,1]]}"#, "asymmetric at (0,1)"),
            (r#"{"matrix":[[1,2],[2]]}"#, "row 1"),
            (r#"{"matrix":[[2,2],[2,1]]}"#, "(0,0)"),
            (r#"{"matrix":[[1,1],[1,1]]}"#, "(0,1)"),
            (r#"{"matrix":[[1,-3],[-3,1]]}"#, "(0,1) is negative"),
        ];
        for (text, needle) in cases {
            let err = parse_matrix(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn labels_must_match_rank() {
        assert!(parse_document(r#"{"matrix":[[1,3],[3,1]],"labels":["a"]}"#).is_err());
        let d = parse_document(r#"{"matrix":[[1,3],[3,1]],"labels":["a","b"]}"#).unwrap();
        assert_eq!(d.label(1), "b");
    }

    #[test]
    fn names() {
        let a4 = parse_name("A4").unwrap();
        assert_eq!(a4.rank(), 4);
        for i in 0..3 {
            assert_eq!(a4.bond(i, i + 1), Bond::Finite(3));
        }
        assert_eq!(a4.bond(0, 2), Bond::Finite(2));

        let d = parse_name("Delta(inf,inf,inf)").unwrap();
        assert_eq!(d.rank(), 3);
        assert!((0..3).all(|i| (0..3).all(|j| i == j || d.bond(i, j) == Bond::Infinity)));

        let u = parse_name("A1+I2(4)").unwrap();
        assert_eq!(u.rank(), 3);
        assert_eq!(u.bond(1, 2), Bond::Finite(4));
        assert_eq!(u.bond(0, 1), Bond::Finite(2));

        assert_eq!(parse_name("B3").unwrap(), parse_name("C3").unwrap());
    }

    #[test]
    fn bad_names() {
        for name in [
            "D3", "~C1", "E9", "X3", "A", "I2(1)", "A3+", "A3 x", "~B2", "",
        ] {
            assert!(parse_name(name).is_err(), "{name}");
        }
    }

    #[test]
    fn affine_shapes() {
        let g = parse_name("~G2").unwrap();
        assert_eq!(g.bond(0, 1), Bond::Finite(3));
        assert_eq!(g.bond(1, 2), Bond::Finite(6));
        let a = parse_name("~A3").unwrap();
        assert_eq!(a.graph().edges.len(), 4);
        assert!((0..4).all(|i| a.graph().degree(i) == 2));
        let i1 = parse_name("~A1").unwrap();
        assert_eq!(i1.bond(0, 1), Bond::Infinity);
        assert_eq!(parse_name("~I1").unwrap(), i1);
    }

    #[test]
    fn induced_examples() {
        let g: CoxeterMatrix = parse_matrix(r#"{"matrix":[[1,6,2],[6,1,3],[2,3,1]]}"#).unwrap();
        assert_eq!(
            induced(&g, set(&[0, 1])).unwrap().to_codes(),
            vec![vec![1, 6], vec![6, 1]]
        );
        assert_eq!(induced(&g, VertexSet::EMPTY).unwrap().rank(), 0);
        let a4 = parse_name("A4").unwrap();
        assert_eq!(
            induced(&a4, set(&[0, 2])).unwrap().to_codes(),
            vec![vec![1, 2], vec![2, 1]]
        );
        assert!(induced(&a4, set(&[5])).is_err());
    }

    #[test]
    fn components_examples() {
        let u = parse_name("A1+I2(4)").unwrap();
        assert_eq!(components(&u), vec![set(&[0]), set(&[1, 2])]);
        assert_eq!(
            components(&parse_name("~G2").unwrap()),
            vec![set(&[0, 1, 2])]
        );
        assert!(components(&CoxeterMatrix::empty()).is_empty());
        // infinity bonds join components
        assert_eq!(components(&parse_name("~A1").unwrap()).len(), 1);
    }

    #[test]
    fn neighbourhood_examples() {
        let e8 = parse_name("~E8").unwrap();
        // s3, s4 in the figure numbering are vertices 2 and 3.
        assert_eq!(neighbourhood(&e8, set(&[2, 3])), set(&[1, 4, 8]));
        assert_eq!(neighbourhood(&e8, VertexSet::EMPTY), VertexSet::EMPTY);
        let a4 = parse_name("A4").unwrap();
        assert_eq!(neighbourhood(&a4, set(&[1])), set(&[0, 2]));
    }

    #[test]
    fn edge_list_format() {
        let m = parse_edge_list("# triangle\nrank 3\n0 1 3\n1 2 inf\n").unwrap();
        assert_eq!(m.bond(0, 1), Bond::Finite(3));
        assert_eq!(m.bond(1, 2), Bond::Infinity);
        assert_eq!(m.bond(0, 2), Bond::Finite(2));
        assert!(parse_edge_list("0 1 3").is_err());
        assert!(parse_edge_list("rank 2\n0 2 3").is_err());
        assert!(parse_edge_list("rank 2\n0 1 3\n1 0 4").is_err());
    }

    #[test]
    fn vertex_set_order_is_lexicographic() {
        assert!(set(&[0, 3]) < set(&[1, 2]));
        assert!(set(&[0, 2]) < set(&[0, 3]));
        assert!(set(&[0, 2]) < set(&[1]));
    }
}
