//! ADE recognition of the root sublattice of a negative definite lattice.

use std::collections::HashSet;

use super::enumerate::vectors_of_norm;
use super::intmat::{bilinear, integer_kernel, restrict_gram};
use super::label::{Component, RootLabel};
use super::{IntegralLattice, LatticeError};

/// Simple roots for the positive system of lexicographically positive roots.
pub fn simple_roots(roots: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let positive: Vec<&Vec<i64>> = roots.iter().filter(|r| lex_positive(r)).collect();
    let set: HashSet<&[i64]> = positive.iter().map(|r| r.as_slice()).collect();
    positive
        .iter()
        .filter(|&&alpha| {
            !positive.iter().any(|beta| {
                let diff: Vec<i64> = alpha.iter().zip(beta.iter()).map(|(a, b)| a - b).collect();
                set.contains(diff.as_slice())
            })
        })
        .map(|r| (*r).clone())
        .collect()
}

fn lex_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Dynkin type of a connected diagram given by its adjacency lists.
pub fn dynkin_type(adj: &[Vec<usize>]) -> Result<Component, LatticeError> {
    let k = adj.len() as u32;
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edges + 1 != adj.len() {
        return Err(LatticeError::NotAde("diagram is not a tree".into()));
    }
    let branch: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() > 2).collect();
    match branch.as_slice() {
        [] => Ok(Component::a(k)),
        [c] if adj[*c].len() == 3 => {
            let mut legs: Vec<u32> = adj[*c].iter().map(|&s| leg_length(adj, *c, s)).collect();
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, l] => Ok(Component::d(l + 3)),
                [1, 2, 2] => Ok(Component::e(6)),
                [1, 2, 3] => Ok(Component::e(7)),
                [1, 2, 4] => Ok(Component::e(8)),
                other => Err(LatticeError::NotAde(format!("star with legs {other:?}"))),
            }
        }
        _ => Err(LatticeError::NotAde("more than one branch node".into())),
    }
}

fn leg_length(adj: &[Vec<usize>], center: usize, start: usize) -> u32 {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&v| v != prev).collect();
        match next.as_slice() {
            [nxt] => {
                prev = cur;
                cur = *nxt;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Root label of `l`. With `extended`, one `D1` is appended for each member of
/// a maximal orthogonal family of norm -4 vectors in the orthogonal complement
/// of the root span.
pub fn classify_root_sublattice(
    l: &IntegralLattice,
    extended: bool,
) -> Result<RootLabel, LatticeError> {
    let gram = l.gram();
    let roots = vectors_of_norm(gram, -2)?;
    let simple = simple_roots(&roots);
    let k = simple.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            match bilinear(gram, &simple[i], &simple[j]) {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                other => {
                    return Err(LatticeError::NotAde(format!(
                        "simple roots with inner product {other}"
                    )))
                }
            }
        }
    }
    let mut comps = Vec::new();
    for nodes in connected_components(&adj) {
        let local: Vec<Vec<usize>> = nodes
            .iter()
            .map(|v| adj[*v].iter().map(|w| nodes.iter().position(|x| x == w).unwrap()).collect())
            .collect();
        comps.push(dynkin_type(&local)?);
    }
    if extended {
        let rows: Vec<Vec<i64>> = simple
            .iter()
            .map(|s| (0..gram.len()).map(|j| bilinear(gram, s, &unit(gram.len(), j))).collect())
            .collect();
        let basis = if rows.is_empty() {
            (0..gram.len()).map(|j| unit(gram.len(), j)).collect()
        } else {
            integer_kernel(&rows, gram.len())
        };
        if !basis.is_empty() {
            let cg = restrict_gram(gram, &basis);
            let fours = vectors_of_norm(&cg, -4)?;
            let mut chosen: Vec<Vec<i64>> = Vec::new();
            for v in fours.iter().filter(|v| lex_positive(v)) {
                if chosen.iter().all(|w| bilinear(&cg, v, w) == 0) {
                    chosen.push(v.clone());
                }
            }
            comps.extend(std::iter::repeat_n(Component::d(1), chosen.len()));
        }
    }
    Ok(RootLabel::new(comps))
}

fn unit(n: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[j] = 1;
    v
}

fn connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
