//! Closed forms for involution class counts of several families, and the
//! product rules for class counts of elements of a given order.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::classify::{decompose, IrreducibleType};
use crate::diagram::{Bond, CoxeterMatrix, VertexSet};
use crate::error::{Error, Result};

/// Triangle group parameters. Every operation is symmetric in the three
/// bonds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleParams {
    pub p: Bond,
    pub q: Bond,
    pub r: Bond,
}

impl TriangleParams {
    pub fn new(p: Bond, q: Bond, r: Bond) -> Self {
        TriangleParams { p, q, r }
    }

    pub fn bonds(&self) -> [Bond; 3] {
        [self.p, self.q, self.r]
    }

    /// `1/p + 1/q + 1/r <= 1`, with `1/inf = 0`.
    pub fn is_infinite(&self) -> bool {
        let finite: Vec<u64> = self
            .bonds()
            .iter()
            .filter_map(|b| b.finite())
            .map(u64::from)
            .collect();
        match finite[..] {
            [p, q, r] => q * r + p * r + p * q <= p * q * r,
            _ => true,
        }
    }

    /// The triangle diagram with `m01 = p`, `m02 = q`, `m12 = r`.
    pub fn matrix(&self) -> Result<CoxeterMatrix> {
        CoxeterMatrix::from_edges(3, &[(0, 1, self.p), (0, 2, self.q), (1, 2, self.r)])
    }
}

fn is_even(b: Bond) -> bool {
    matches!(b, Bond::Finite(m) if m % 2 == 0)
}

/// Involution classes of an infinite triangle group.
pub fn cc2_triangle(t: TriangleParams) -> Result<u64> {
    for b in t.bonds() {
        if b == Bond::Finite(0) || b == Bond::Finite(1) {
            return Err(Error::Validation(format!("triangle bond {b} is below 2")));
        }
    }
    if !t.is_infinite() {
        return Err(Error::Precondition(format!(
            "Delta({},{},{}) is finite; use the general algorithm",
            t.p, t.q, t.r
        )));
    }
    let finite: Vec<Bond> = t
        .bonds()
        .into_iter()
        .filter(|b| b.finite().is_some())
        .collect();
    let evens = finite.iter().filter(|&&b| is_even(b)).count();
    Ok(match (finite.len(), evens) {
        (3, 3) => 6,
        (3, 2) => 4,
        (3, 1) => 2,
        (3, _) => 1,
        (2, 2) => 5,
        (2, 1) => 3,
        (2, _) => 1,
        (1, 1) => 4,
        (1, _) => 2,
        _ => 3,
    })
}

fn require(n: usize, min: usize, family: &str) -> Result<()> {
    if n < min {
        return Err(Error::Precondition(format!(
            "{family} needs n >= {min}, got {n}"
        )));
    }
    Ok(())
}

pub fn cc2_a(n: usize) -> Result<u64> {
    require(n, 1, "A_n")?;
    let k = (n / 2) as u64;
    Ok(if n.is_multiple_of(2) { k } else { k + 1 })
}

pub fn cc2_c(n: usize) -> Result<u64> {
    require(n, 2, "C_n")?;
    let k = (n / 2) as u64;
    Ok(if n.is_multiple_of(2) {
        k * k + 2 * k
    } else {
        k * k + 3 * k + 1
    })
}

pub fn cc2_affine_a(n: usize) -> Result<u64> {
    require(n, 2, "affine A_n")?;
    let k = (n / 2) as u64;
    Ok(if n.is_multiple_of(2) { k } else { k + 2 })
}

pub fn cc2_affine_c(n: usize) -> Result<u64> {
    require(n, 2, "affine C_n")?;
    let k = (n / 2) as u64;
    Ok(if n.is_multiple_of(2) {
        4 * k * k + 2 * k
    } else {
        4 * k * k + 6 * k + 2
    })
}

/// Circle diagram on `n + 1 >= 3` vertices with all bonds odd and no `H3`
/// subdiagram.
pub fn cc2_odd_circle(mat: &CoxeterMatrix) -> Result<u64> {
    let v = mat.rank();
    if v < 3 {
        return Err(Error::Precondition(format!(
            "a circle needs at least 3 vertices, got {v}"
        )));
    }
    let graph = mat.graph();
    if graph.edges.len() != v || (0..v).any(|i| graph.degree(i) != 2) {
        return Err(Error::Precondition("diagram is not a single cycle".into()));
    }
    if crate::diagram::components(mat).len() != 1 {
        return Err(Error::Precondition("diagram is not a single cycle".into()));
    }
    for i in 0..v {
        for j in mat.neighbours(i).iter() {
            if !mat.bond(i, j).is_odd() {
                return Err(Error::Precondition(format!(
                    "bond ({i},{j}) = {} is not finite odd",
                    mat.bond(i, j)
                )));
            }
        }
    }
    // A path of three consecutive vertices spans an H3 exactly when its
    // two bonds are {3, 5}.
    for i in 0..v {
        let [a, b] = match mat.neighbours(i).to_vec()[..] {
            [a, b] => [a, b],
            _ => unreachable!(),
        };
        let sub = VertexSet::from_indices([a, i, b]);
        if decompose(mat, sub).parts() == [IrreducibleType::H(3)] {
            return Err(Error::Precondition(format!(
                "vertices {a},{i},{b} span an H3 subdiagram"
            )));
        }
    }
    let n = (v - 1) as u64;
    let l = n / 2;
    Ok(if n.is_multiple_of(2) { l } else { l + 2 })
}

/// Nonempty cliques of a simple graph given as adjacency bitmasks.
pub fn count_cliques(adjacency: &[u64]) -> BigUint {
    fn extend(adjacency: &[u64], candidates: u64) -> BigUint {
        let mut total = BigUint::from(0u32);
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // the clique ending at v, plus every extension by higher vertices
            total += 1u32;
            total += extend(adjacency, rest & adjacency[v]);
        }
        total
    }
    let n = adjacency.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    extend(adjacency, all)
}

/// Presentation graph of a right-angled Coxeter group: an edge marks a
/// commuting pair of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationGraph {
    adjacency: Vec<u64>,
}

impl PresentationGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > crate::diagram::MAX_RANK {
            return Err(Error::RankLimit {
                rank: n,
                limit: crate::diagram::MAX_RANK,
            });
        }
        let mut adjacency = vec![0u64; n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    rank: n,
                });
            }
            if i == j {
                return Err(Error::Validation(format!("loop at vertex {i}")));
            }
            adjacency[i] |= 1 << j;
            adjacency[j] |= 1 << i;
        }
        Ok(PresentationGraph { adjacency })
    }

    /// Same text format as diagram edge lists; a line `i j` (or `i j 2`)
    /// lists a commuting pair.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| -> Result<usize> {
                t.parse()
                    .map_err(|_| Error::Parse(format!("line {lineno}: bad number {t:?}")))
            };
            match (n, toks.as_slice()) {
                (None, ["rank", r]) => n = Some(num(r)?),
                (None, _) => {
                    return Err(Error::Parse(format!(
                        "line {lineno}: expected `rank n` header"
                    )))
                }
                (Some(_), [i, j]) | (Some(_), [i, j, "2"]) => edges.push((num(i)?, num(j)?)),
                (Some(_), _) => {
                    return Err(Error::Parse(format!(
                        "line {lineno}: expected `i j` for a commuting pair, got {line:?}"
                    )))
                }
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `rank n` header".into()))?;
        Self::new(n, &edges)
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adjacency
    }

    /// The Coxeter matrix: 2 on edges, infinity on non-edges.
    pub fn coxeter_matrix(&self) -> Result<CoxeterMatrix> {
        let n = self.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i == j, self.adjacency[i] >> j & 1 == 1) {
                        (true, _) => Bond::Finite(1),
                        (false, true) => Bond::Finite(2),
                        (false, false) => Bond::Infinity,
                    })
                    .collect()
            })
            .collect();
        CoxeterMatrix::new(rows)
    }
}

/// Involution classes of a right-angled Coxeter group: the nonempty cliques
/// of its presentation graph.
pub fn cc2_racg(graph: &PresentationGraph) -> BigUint {
    count_cliques(graph.adjacency())
}

/// Class counts add up over free products.
pub fn ccm_free_product(ccms: &[u64]) -> u64 {
    ccms.iter().sum()
}

/// Classes of order-`m` elements in `G x H`: the sum over `lcm(k, l) = m`
/// of `cc_k(G) * cc_l(H)`. Missing orders count as zero, except that order 1
/// always counts once (the identity).
pub fn ccm_direct_product(g: &BTreeMap<u64, u64>, h: &BTreeMap<u64, u64>, m: u64) -> u64 {
    let get = |map: &BTreeMap<u64, u64>, k: u64| {
        if k == 1 {
            1
        } else {
            map.get(&k).copied().unwrap_or(0)
        }
    };
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut total = 0;
    for &k in &divisors {
        for &l in &divisors {
            if lcm(k, l) == m {
                total += get(g, k) * get(h, l);
            }
        }
    }
    total
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
