//! Brute-force involution classes of a finite Coxeter group.
//!
//! The group is enumerated through its action on the dual of the geometric
//! representation: a point with positive value on every simple root has
//! trivial stabiliser, so its orbit is in bijection with the group. Orbit
//! points are deduplicated by a quantised hash. Class ranks are read off the
//! geometric representation matrices as the multiplicity of eigenvalue -1.
//! Nothing here depends on the odd-graph machinery.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::classify::decompose;
use crate::diagram::{Bond, CoxeterMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Grid used for hashing orbit points.
const QUANTUM: f64 = 1e6;
/// Two points closer than this (max-norm) are the same element.
const SAME_POINT: f64 = 1e-6;
/// Coordinates this close (in grid units) to a rounding boundary are also
/// looked up under the neighbouring grid value.
const BOUNDARY_SLACK: f64 = 1e-3;
const RANK_TOL: f64 = 1e-6;

/// `B(a_i, a_j) = -cos(pi / m_ij)`, exact for the common labels.
fn bilinear(bond: Bond) -> f64 {
    match bond {
        Bond::Finite(1) => 1.0,
        Bond::Finite(2) => 0.0,
        Bond::Finite(3) => -0.5,
        Bond::Finite(4) => -std::f64::consts::FRAC_1_SQRT_2,
        Bond::Finite(6) => -(3f64.sqrt()) / 2.0,
        Bond::Finite(m) => -(PI / f64::from(m)).cos(),
        Bond::Infinity => -1.0,
    }
}

/// Geometric reflection representation on the span of the simple roots.
#[derive(Debug, Clone)]
pub struct ReflectionRep {
    pub n: usize,
    pub form: DMatrix<f64>,
    /// `generators[i]` sends `e_j` to `e_j - 2 B(a_i, a_j) e_i`.
    pub generators: Vec<DMatrix<f64>>,
}

impl ReflectionRep {
    pub fn new(mat: &CoxeterMatrix) -> Self {
        let n = mat.rank();
        let form = DMatrix::from_fn(n, n, |i, j| bilinear(mat.bond(i, j)));
        let generators = (0..n)
            .map(|i| {
                let mut g = DMatrix::identity(n, n);
                for j in 0..n {
                    g[(i, j)] -= 2.0 * form[(i, j)];
                }
                g
            })
            .collect();
        ReflectionRep {
            n,
            form,
            generators,
        }
    }
}

/// Product of generator matrices in word order; the empty word gives the
/// identity.
pub fn evaluate_word(rep: &ReflectionRep, word: &[usize]) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::identity(rep.n, rep.n);
    for &g in word {
        let gen = rep.generators.get(g).ok_or(Error::IndexOutOfRange {
            index: g,
            rank: rep.n,
        })?;
        m *= gen;
    }
    Ok(m)
}

/// Multiplicity of eigenvalue -1 of an involution matrix, cross-checked
/// against its trace.
pub fn involution_rank(m: &DMatrix<f64>, diagram: &str) -> Result<usize> {
    let n = m.nrows();
    let shifted = m - DMatrix::<f64>::identity(n, n);
    let by_rank = shifted.rank(RANK_TOL);
    let half = (n as f64 - m.trace()) / 2.0;
    if (half - by_rank as f64).abs() > 1e-6 {
        return Err(Error::NumericDegeneracy {
            diagram: diagram.to_string(),
            detail: format!("rank(M - I) = {by_rank} but (n - trace)/2 = {half}"),
        });
    }
    Ok(by_rank)
}

/// Every element of a finite Coxeter group, with multiplication by
/// generators on both sides.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub name: String,
    pub rank: usize,
    /// `left[w * rank + i]` is the index of `s_i w`.
    left: Vec<u32>,
    /// `right[w * rank + i]` is the index of `w s_i`.
    right: Vec<u32>,
    inverse: Vec<u32>,
    /// BFS tree: element `w > 0` equals `s_{parent_gen[w]} * parent[w]`.
    parent: Vec<u32>,
    parent_gen: Vec<u8>,
}

struct PointIndex {
    n: usize,
    points: Vec<f64>,
    map: HashMap<u64, u32>,
}

impl PointIndex {
    fn key(q: &[i64]) -> u64 {
        // FNV-1a over the grid coordinates
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &c in q {
            for b in c.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }

    fn point(&self, idx: u32) -> &[f64] {
        let s = idx as usize * self.n;
        &self.points[s..s + self.n]
    }

    fn distance(&self, idx: u32, x: &[f64]) -> f64 {
        self.point(idx)
            .iter()
            .zip(x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Index of `x` if already present. A primary-key hit on a far point is
    /// a collision.
    fn find(&self, x: &[f64], primary: u64) -> std::result::Result<Option<u32>, ()> {
        if let Some(&idx) = self.map.get(&primary) {
            return if self.distance(idx, x) <= SAME_POINT {
                Ok(Some(idx))
            } else {
                Err(())
            };
        }
        let scaled: Vec<f64> = x.iter().map(|v| v * QUANTUM).collect();
        let base: Vec<i64> = scaled.iter().map(|v| v.round() as i64).collect();
        let ambiguous: Vec<usize> = (0..self.n)
            .filter(|&i| (scaled[i] - base[i] as f64).abs() > 0.5 - BOUNDARY_SLACK)
            .take(8)
            .collect();
        for mask in 1u32..1 << ambiguous.len() {
            let mut q = base.clone();
            for (bit, &i) in ambiguous.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    q[i] += if scaled[i] > base[i] as f64 { 1 } else { -1 };
                }
            }
            if let Some(&idx) = self.map.get(&Self::key(&q)) {
                if self.distance(idx, x) <= SAME_POINT {
                    return Ok(Some(idx));
                }
            }
        }
        Ok(None)
    }

    fn primary(x: &[f64]) -> u64 {
        let q: Vec<i64> = x.iter().map(|v| (v * QUANTUM).round() as i64).collect();
        Self::key(&q)
    }
}

/// Enumerates the group of `mat`, failing once more than `cap` elements
/// are found. Infinite groups therefore always end in
/// [`Error::CapExceeded`].
pub fn enumerate(mat: &CoxeterMatrix, cap: usize) -> Result<GroupTable> {
    let dec = decompose(mat, mat.vertices());
    let name = if dec.is_spherical() {
        dec.to_string()
    } else {
        format!("non-spherical rank-{} diagram", mat.rank())
    };
    enumerate_as(mat, &name, cap)
}

/// [`enumerate`] with the name used in error messages.
pub fn enumerate_as(mat: &CoxeterMatrix, name: &str, cap: usize) -> Result<GroupTable> {
    let n = mat.rank();
    if n > u8::MAX as usize {
        return Err(Error::RankLimit {
            rank: n,
            limit: u8::MAX as usize,
        });
    }
    let form: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| bilinear(mat.bond(i, j)))
        .collect();
    let mut index = PointIndex {
        n,
        points: vec![1.0; n],
        map: HashMap::new(),
    };
    index.map.insert(PointIndex::primary(index.point(0)), 0);
    let mut left: Vec<u32> = Vec::new();
    let mut parent = vec![0u32];
    let mut parent_gen = vec![0u8];
    let mut next = vec![0.0; n];
    let mut w = 0usize;
    let over = |reached: usize| Error::CapExceeded {
        diagram: name.to_string(),
        cap,
        reached,
    };
    if cap == 0 {
        return Err(over(1));
    }
    while w < parent.len() {
        for i in 0..n {
            // (s_i f)_j = f_j - 2 B_ij f_i
            let p = index.point(w as u32);
            let fi = p[i];
            for j in 0..n {
                next[j] = p[j] - 2.0 * form[i * n + j] * fi;
            }
            let primary = PointIndex::primary(&next);
            let target = match index.find(&next, primary) {
                Ok(Some(t)) => t,
                Ok(None) => {
                    let t = parent.len();
                    if t >= cap {
                        return Err(over(t + 1));
                    }
                    index.points.extend_from_slice(&next);
                    index.map.insert(primary, t as u32);
                    parent.push(w as u32);
                    parent_gen.push(i as u8);
                    t as u32
                }
                Err(()) => {
                    return Err(Error::HashCollision {
                        diagram: name.to_string(),
                        cap,
                        reached: parent.len(),
                    })
                }
            };
            left.push(target);
        }
        w += 1;
    }
    let size = parent.len();
    drop(index);

    // w = s_i u gives w s_j = s_i (u s_j) and w^-1 = u^-1 s_i; parents come
    // first in BFS order.
    let mut right = vec![0u32; size * n];
    let mut inverse = vec![0u32; size];
    right[..n].copy_from_slice(&left[..n]);
    for w in 1..size {
        let u = parent[w] as usize;
        let i = parent_gen[w] as usize;
        for j in 0..n {
            let us = right[u * n + j] as usize;
            right[w * n + j] = left[us * n + i];
        }
        inverse[w] = right[inverse[u] as usize * n + i];
    }
    Ok(GroupTable {
        name: name.to_string(),
        rank: n,
        left,
        right,
        inverse,
        parent,
        parent_gen,
    })
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// `s_i w`
    pub fn left(&self, w: usize, i: usize) -> usize {
        self.left[w * self.rank + i] as usize
    }

    /// `w s_i`
    pub fn right(&self, w: usize, i: usize) -> usize {
        self.right[w * self.rank + i] as usize
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w] as usize
    }

    pub fn is_involution(&self, w: usize) -> bool {
        w != 0 && self.inverse(w) == w
    }

    /// `s_i w s_i`
    pub fn conjugate(&self, w: usize, i: usize) -> usize {
        self.left(self.right(w, i), i)
    }

    /// A reduced word for `w`, read off the BFS tree.
    pub fn word(&self, w: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = w;
        while cur != 0 {
            out.push(self.parent_gen[cur] as usize);
            cur = self.parent[cur] as usize;
        }
        out
    }

    /// Element represented by a word, read left to right.
    pub fn locate_word(&self, word: &[usize]) -> Result<usize> {
        let mut w = 0;
        for &g in word {
            if g >= self.rank {
                return Err(Error::IndexOutOfRange {
                    index: g,
                    rank: self.rank,
                });
            }
            w = self.right(w, g);
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub size: usize,
    pub rank: usize,
    /// Smallest element index in the class.
    pub representative_index: usize,
}

#[derive(Debug, Clone)]
pub struct InvolutionClasses {
    /// Sorted by representative index.
    pub classes: Vec<ClassInfo>,
    /// Class number of each involution; `None` for other elements.
    class_of: Vec<Option<u32>>,
}

impl InvolutionClasses {
    pub fn class_of(&self, w: usize) -> Option<usize> {
        self.class_of.get(w).copied().flatten().map(|c| c as usize)
    }

    pub fn involution_count(&self) -> usize {
        self.classes.iter().map(|c| c.size).sum()
    }

    /// Number of classes of each rank `1..=n`.
    pub fn per_rank(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for c in &self.classes {
            out[c.rank - 1] += 1;
        }
        out
    }
}

/// Splits the involutions into conjugacy classes by orbit search under
/// conjugation by generators.
pub fn involution_classes(table: &GroupTable, mat: &CoxeterMatrix) -> Result<InvolutionClasses> {
    let rep = ReflectionRep::new(mat);
    let mut class_of: Vec<Option<u32>> = vec![None; table.len()];
    let mut classes = Vec::new();
    let mut queue = Vec::new();
    for seed in 0..table.len() {
        if class_of[seed].is_some() || !table.is_involution(seed) {
            continue;
        }
        let id = classes.len() as u32;
        class_of[seed] = Some(id);
        queue.clear();
        queue.push(seed);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for i in 0..table.rank {
                let y = table.conjugate(x, i);
                if class_of[y].is_none() {
                    class_of[y] = Some(id);
                    queue.push(y);
                }
            }
        }
        let m = evaluate_word(&rep, &table.word(seed))?;
        classes.push(ClassInfo {
            size: queue.len(),
            rank: involution_rank(&m, &table.name)?,
            representative_index: seed,
        });
    }
    Ok(InvolutionClasses { classes, class_of })
}
