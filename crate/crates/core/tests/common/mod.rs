#![allow(dead_code)]

use coxinv::classify::group_order;
use coxinv::{decompose, parse_name, CoxeterMatrix};

pub const ORACLE_LIMIT: u64 = 1_000_000;

/// Finite types whose groups the oracle enumerates.
pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=8).map(|n| format!("A{n}")).collect();
    names.extend((2..=7).map(|n| format!("B{n}")));
    names.extend((4..=7).map(|n| format!("D{n}")));
    names.extend(["E6", "F4", "G2", "H3", "H4"].map(String::from));
    names.extend((3..=12).map(|m| format!("I2({m})")));
    names
}

pub fn order(mat: &CoxeterMatrix) -> u64 {
    let o = group_order(&decompose(mat, mat.vertices())).expect("spherical");
    u64::try_from(&o).unwrap_or(u64::MAX)
}

pub struct Entry {
    pub name: String,
    pub matrix: CoxeterMatrix,
    pub order: u64,
}

fn entry(name: String) -> Entry {
    let matrix = parse_name(&name).expect("corpus names parse");
    let order = order(&matrix);
    Entry {
        name,
        matrix,
        order,
    }
}

/// Every corpus type alone, then every unordered pair (a type may pair with
/// itself).
pub fn corpus_with_pairs() -> (Vec<Entry>, Vec<Entry>) {
    let names = corpus_names();
    let singles: Vec<Entry> = names.iter().cloned().map(entry).collect();
    let mut pairs = Vec::new();
    for i in 0..names.len() {
        for j in i..names.len() {
            pairs.push(entry(format!("{}+{}", names[i], names[j])));
        }
    }
    (singles, pairs)
}

use coxinv::classify::{classify_component, IrreducibleType};
use coxinv::diagram::{components_within, VertexSet};

/// Image of each vertex of the irreducible spherical component `comp` under
/// its opposition involution (`w0 s w0`). Identity unless the longest
/// element is non-central, in which case it is the unique non-trivial
/// diagram symmetry.
fn opposition(mat: &CoxeterMatrix, comp: VertexSet) -> Vec<(usize, usize)> {
    let ident = comp.iter().map(|v| (v, v)).collect();
    let degree = |v: usize| mat.neighbours(v).intersection(comp).len();
    let walk = |from: usize, avoid: usize| {
        // vertices along the arm starting at `from`, moving away from `avoid`
        let mut arm = vec![from];
        let mut prev = avoid;
        let mut cur = from;
        loop {
            let next: Vec<usize> = mat
                .neighbours(cur)
                .intersection(comp)
                .iter()
                .filter(|&x| x != prev)
                .collect();
            match next[..] {
                [x] => {
                    arm.push(x);
                    prev = cur;
                    cur = x;
                }
                _ => return arm,
            }
        }
    };
    match classify_component(mat, comp) {
        IrreducibleType::A(n) if n >= 2 => path_reversal(comp, &walk, &degree),
        IrreducibleType::I2(m) if m % 2 == 1 => path_reversal(comp, &walk, &degree),
        IrreducibleType::D(n) if n % 2 == 1 => {
            let b = comp.iter().find(|&v| degree(v) == 3).unwrap();
            let leaves: Vec<usize> = mat
                .neighbours(b)
                .intersection(comp)
                .iter()
                .filter(|&v| degree(v) == 1 && walk(v, b).len() == 1)
                .collect();
            let mut map: Vec<(usize, usize)> = comp.iter().map(|v| (v, v)).collect();
            for e in map.iter_mut() {
                if e.0 == leaves[0] {
                    e.1 = leaves[1];
                } else if e.0 == leaves[1] {
                    e.1 = leaves[0];
                }
            }
            map
        }
        IrreducibleType::E(6) => {
            let b = comp.iter().find(|&v| degree(v) == 3).unwrap();
            let long: Vec<Vec<usize>> = mat
                .neighbours(b)
                .intersection(comp)
                .iter()
                .map(|v| walk(v, b))
                .filter(|a| a.len() == 2)
                .collect();
            let mut map: Vec<(usize, usize)> = comp.iter().map(|v| (v, v)).collect();
            for e in map.iter_mut() {
                for i in 0..2 {
                    if let Some(p) = long[i].iter().position(|&x| x == e.0) {
                        e.1 = long[1 - i][p];
                    }
                }
            }
            map
        }
        _ => ident,
    }
}

fn path_reversal(
    comp: VertexSet,
    walk: &dyn Fn(usize, usize) -> Vec<usize>,
    degree: &dyn Fn(usize) -> usize,
) -> Vec<(usize, usize)> {
    let end = comp.iter().find(|&v| degree(v) == 1).unwrap();
    let path = walk(end, usize::MAX);
    let len = path.len();
    path.iter()
        .enumerate()
        .map(|(i, &v)| (v, path[len - 1 - i]))
        .collect()
}

/// Involution classes by rank, computed without odd graphs: classes of
/// subsets whose components have central longest element, under the
/// elementary equivalences `J -> w0(J + s) J w0(J + s)` for spherical
/// `J + s`.
pub fn elementary_equivalence_counts(mat: &CoxeterMatrix) -> Vec<usize> {
    let n = mat.rank();
    assert!(n <= 20, "exhaustive subset scan");
    let central: Vec<VertexSet> = (1u64..1 << n)
        .map(VertexSet::from_bits)
        .filter(|&j| decompose(mat, j).has_central_longest())
        .collect();
    let index: std::collections::HashMap<VertexSet, usize> =
        central.iter().enumerate().map(|(i, &j)| (j, i)).collect();
    let mut parent: Vec<usize> = (0..central.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let nx = p[c];
            p[c] = r;
            c = nx;
        }
        r
    }
    for (a, &j) in central.iter().enumerate() {
        for s in mat.vertices().difference(j).iter() {
            let u = j.with(s);
            if !decompose(mat, u).is_spherical() {
                continue;
            }
            let comp = components_within(mat, u)
                .into_iter()
                .find(|c| c.contains(s))
                .unwrap();
            let sigma = opposition(mat, comp);
            let k: VertexSet = j
                .iter()
                .map(|v| sigma.iter().find(|e| e.0 == v).map_or(v, |e| e.1))
                .collect();
            let b = index[&k];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut per_rank = vec![0; n];
    for (a, &j) in central.iter().enumerate() {
        if find(&mut parent, a) == a {
            per_rank[j.len() - 1] += 1;
        }
    }
    per_rank
}
