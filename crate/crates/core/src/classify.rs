//! Recognition of finite irreducible Coxeter types.
//!
//! Classification walks each connected component once: bonds and degrees
//! rule out most non-spherical shapes, the rest is matched against paths
//! and three-legged forks.

use std::fmt;

use num_bigint::BigUint;

use crate::diagram::{components_within, Bond, CoxeterMatrix, VertexSet};
use crate::error::{Error, Result};

/// Type of a connected diagram. Low-rank coincidences are normalized:
/// `I2(3) = A2`, `I2(4) = B2`, `I2(6) = G2`, `H2 = I2(5)`, `D3 = A3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    H(usize),
    I2(u32),
    NonSpherical,
}

impl IrreducibleType {
    pub fn rank(self) -> Option<usize> {
        use IrreducibleType::*;
        match self {
            A(n) | B(n) | D(n) | E(n) | H(n) => Some(n),
            F4 => Some(4),
            G2 | I2(_) => Some(2),
            NonSpherical => None,
        }
    }

    pub fn is_spherical(self) -> bool {
        self != IrreducibleType::NonSpherical
    }

    /// Whether the longest element is central (the group has nontrivial centre).
    pub fn has_central_longest(self) -> bool {
        use IrreducibleType::*;
        match self {
            A(n) => n == 1,
            B(_) | E(7) | E(8) | F4 | G2 | H(3) | H(4) => true,
            D(n) => n % 2 == 0,
            I2(m) => m % 2 == 0,
            E(_) | H(_) | NonSpherical => false,
        }
    }

    fn dihedral(m: u32) -> Self {
        match m {
            3 => IrreducibleType::A(2),
            4 => IrreducibleType::B(2),
            6 => IrreducibleType::G2,
            _ => IrreducibleType::I2(m),
        }
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IrreducibleType::*;
        match self {
            A(n) => write!(f, "A{n}"),
            B(n) => write!(f, "B{n}"),
            D(n) => write!(f, "D{n}"),
            E(n) => write!(f, "E{n}"),
            F4 => f.write_str("F4"),
            G2 => f.write_str("G2"),
            H(n) => write!(f, "H{n}"),
            I2(m) => write!(f, "I2({m})"),
            NonSpherical => f.write_str("NS"),
        }
    }
}

/// Sorted multiset of component types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeDecomposition {
    parts: Vec<IrreducibleType>,
}

impl TypeDecomposition {
    pub fn new(mut parts: Vec<IrreducibleType>) -> Self {
        parts.sort_unstable();
        TypeDecomposition { parts }
    }

    pub fn parts(&self) -> &[IrreducibleType] {
        &self.parts
    }

    pub fn is_spherical(&self) -> bool {
        self.parts.iter().all(|t| t.is_spherical())
    }

    pub fn has_central_longest(&self) -> bool {
        self.parts.iter().all(|t| t.has_central_longest())
    }

    /// Sum of part ranks; `None` if some part is not spherical.
    pub fn rank(&self) -> Option<usize> {
        self.parts.iter().map(|t| t.rank()).sum()
    }
}

impl fmt::Display for TypeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Classifies the connected subdiagram on `comp` without materializing it.
pub fn classify_component(mat: &CoxeterMatrix, comp: VertexSet) -> IrreducibleType {
    use IrreducibleType::*;
    let n = comp.len();
    match n {
        0 => return NonSpherical,
        1 => return A(1),
        _ => {}
    }
    let members = comp.to_vec();
    if n == 2 {
        return match mat.bond(members[0], members[1]) {
            Bond::Finite(m) if m >= 3 => IrreducibleType::dihedral(m),
            // disconnected pair: not an irreducible input
            Bond::Finite(_) | Bond::Infinity => NonSpherical,
        };
    }

    // rank >= 3: tree with labels <= 5, at most one label, at most one branch.
    let mut edge_count = 0;
    let mut labeled: Option<(usize, usize, u32)> = None;
    let mut branch: Option<usize> = None;
    for (ai, &a) in members.iter().enumerate() {
        let deg = mat.neighbours(a).intersection(comp).len();
        match deg {
            0 => return NonSpherical,
            1 | 2 => {}
            3 if branch.is_none() => branch = Some(a),
            _ => return NonSpherical,
        }
        for &b in &members[ai + 1..] {
            match mat.bond(a, b) {
                Bond::Infinity => return NonSpherical,
                Bond::Finite(m) if m >= 6 => return NonSpherical,
                Bond::Finite(m) if m >= 3 => {
                    edge_count += 1;
                    if m >= 4 {
                        if labeled.is_some() {
                            return NonSpherical;
                        }
                        labeled = Some((a, b, m));
                    }
                }
                Bond::Finite(_) => {}
            }
        }
    }
    if edge_count != n - 1 {
        return NonSpherical;
    }

    if let Some(center) = branch {
        if labeled.is_some() {
            return NonSpherical;
        }
        let mut legs: Vec<usize> = mat
            .neighbours(center)
            .intersection(comp)
            .iter()
            .map(|start| leg_length(mat, comp, center, start))
            .collect();
        legs.sort_unstable();
        return match legs.as_slice() {
            [1, 1, k] => D(k + 3),
            [1, 2, 2] => E(6),
            [1, 2, 3] => E(7),
            [1, 2, 4] => E(8),
            _ => NonSpherical,
        };
    }

    // Path. Find the position of the labeled edge, if any.
    let Some((a, b, m)) = labeled else {
        return A(n);
    };
    let end_edge = mat.neighbours(a).intersection(comp).len() == 1
        || mat.neighbours(b).intersection(comp).len() == 1;
    match (m, end_edge, n) {
        (4, true, _) => B(n),
        (4, false, 4) => F4,
        (5, true, 3) => H(3),
        (5, true, 4) => H(4),
        _ => NonSpherical,
    }
}

fn leg_length(mat: &CoxeterMatrix, comp: VertexSet, center: usize, start: usize) -> usize {
    let mut prev = center;
    let mut cur = start;
    let mut len = 1;
    loop {
        let next = mat.neighbours(cur).intersection(comp).without(prev).min();
        match next {
            Some(nx) => {
                prev = cur;
                cur = nx;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Type of a connected matrix; the caller guarantees connectivity.
pub fn classify_irreducible(mat: &CoxeterMatrix) -> IrreducibleType {
    classify_component(mat, mat.vertices())
}

pub fn decompose(mat: &CoxeterMatrix, subset: VertexSet) -> TypeDecomposition {
    TypeDecomposition::new(
        components_within(mat, subset)
            .into_iter()
            .map(|c| classify_component(mat, c))
            .collect(),
    )
}

pub fn is_spherical(dec: &TypeDecomposition) -> bool {
    dec.is_spherical()
}

pub fn has_central_longest(dec: &TypeDecomposition) -> bool {
    dec.has_central_longest()
}

pub fn coxeter_number(t: IrreducibleType) -> Result<u32> {
    use IrreducibleType::*;
    let h = match t {
        A(n) => n + 1,
        B(n) => 2 * n,
        D(n) => 2 * n - 2,
        E(6) | F4 => 12,
        E(7) => 18,
        E(8) | H(4) => 30,
        G2 => 6,
        H(3) => 10,
        H(2) => 5,
        I2(m) => return Ok(m),
        E(_) | H(_) | NonSpherical => return Err(Error::NonSpherical(t.to_string())),
    };
    Ok(h as u32)
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k)
}

fn irreducible_order(t: IrreducibleType) -> Result<BigUint> {
    use IrreducibleType::*;
    Ok(match t {
        A(n) => factorial(n + 1),
        B(n) => (BigUint::from(1u32) << n) * factorial(n),
        D(n) => (BigUint::from(1u32) << (n - 1)) * factorial(n),
        E(6) => BigUint::from(51_840u32),
        E(7) => BigUint::from(2_903_040u32),
        E(8) => BigUint::from(696_729_600u32),
        F4 => BigUint::from(1152u32),
        G2 => BigUint::from(12u32),
        H(2) => BigUint::from(10u32),
        H(3) => BigUint::from(120u32),
        H(4) => BigUint::from(14_400u32),
        I2(m) => BigUint::from(2 * u64::from(m)),
        E(_) | H(_) | NonSpherical => return Err(Error::NonSpherical(t.to_string())),
    })
}

pub fn group_order(dec: &TypeDecomposition) -> Result<BigUint> {
    dec.parts().iter().try_fold(BigUint::from(1u32), |acc, &t| {
        Ok(acc * irreducible_order(t)?)
    })
}
