//! Exhaustive search for small emulations. Blocks are placed one at a time;
//! each new block's values are inserted into the running order type and
//! every label set containing the new label is checked before descending.

use rayon::prelude::*;

use super::{lis_over, verify_emulation, Block, Emulation};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::families::{Family, IdSet};

pub const MAX_SEARCH_LABELS: usize = 6;
pub const MAX_SEARCH_BLOCK: u32 = 3;

#[derive(Clone)]
struct State {
    order: Vec<usize>,
    sizes: Vec<u32>,
    ranks: Vec<u32>,
}

struct Problem {
    labels: Vec<u32>,
    member: Vec<bool>,
    max_block: u32,
}

/// Searches label orders, block sizes up to `max_block` and all order types
/// of `θ`. Returns the first emulation found, in lexicographic order of
/// those choices, or `None` when the space is exhausted.
pub fn search_emulation(f: &Family, max_block: u32) -> Result<Option<Emulation>> {
    let labels = f.universe().elements();
    if labels.len() > MAX_SEARCH_LABELS || max_block > MAX_SEARCH_BLOCK || max_block == 0 {
        return Err(Error::SearchSpaceExceeded(format!(
            "{} labels with blocks up to {max_block}; limits are {MAX_SEARCH_LABELS} and {MAX_SEARCH_BLOCK}",
            labels.len()
        )));
    }
    let n = labels.len();
    let member: Vec<bool> = (0..1u64 << n)
        .map(|m| f.contains(&IdSet::from_mask(&labels, m)))
        .collect();
    // the empty set has norm 0 and each singleton norm 1
    if !member[0] || (0..n).any(|i| !member[1 << i]) {
        return Ok(None);
    }
    let p = Problem {
        labels,
        member,
        max_block,
    };
    let root = State {
        order: vec![],
        sizes: vec![],
        ranks: vec![],
    };
    let mut prefixes = children(&p, &root);
    if n > 2 {
        prefixes = prefixes.iter().flat_map(|s| children(&p, s)).collect();
    }
    let found = prefixes.into_par_iter().find_map_first(|s| dfs(&p, s));
    let Some(s) = found else {
        return Ok(None);
    };
    let e = to_emulation(&p, &s)?;
    if !verify_emulation(&e, f, n)?.ok {
        return Err(Error::EquivalenceViolation("search produced an invalid emulation".into()));
    }
    Ok(Some(e))
}

fn dfs(p: &Problem, s: State) -> Option<State> {
    if s.order.len() == p.labels.len() {
        return Some(s);
    }
    children(p, &s).into_iter().find_map(|c| dfs(p, c))
}

fn children(p: &Problem, s: &State) -> Vec<State> {
    let mut out = Vec::new();
    for next in 0..p.labels.len() {
        if s.order.contains(&next) {
            continue;
        }
        for size in 1..=p.max_block {
            let m = s.ranks.len();
            let total = m + size as usize;
            for slots in combinations(total, size as usize) {
                let mut ranks = Vec::with_capacity(total);
                let mut free = (0..total as u32).filter(|r| !slots.contains(&(*r as usize)));
                for _ in 0..m {
                    ranks.push(0);
                }
                // old positions keep their relative order
                let mut old: Vec<usize> = (0..m).collect();
                old.sort_by_key(|&i| s.ranks[i]);
                for i in old {
                    ranks[i] = free.next().unwrap();
                }
                ranks.extend(slots.iter().rev().map(|&r| r as u32));
                let mut c = State {
                    order: s.order.clone(),
                    sizes: s.sizes.clone(),
                    ranks,
                };
                c.order.push(next);
                c.sizes.push(size);
                if consistent(p, &c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Checks every label set containing the newest block.
fn consistent(p: &Problem, s: &State) -> bool {
    let j = s.order.len() - 1;
    let mut starts = Vec::with_capacity(s.sizes.len() + 1);
    let mut acc = 0usize;
    for &z in &s.sizes {
        starts.push(acc);
        acc += z as usize;
    }
    for sub in 0..1u64 << j {
        let mask = sub | 1 << j;
        let mut ranges = Vec::new();
        let mut labels = 0u64;
        for b in 0..=j {
            if mask >> b & 1 == 1 {
                ranges.push(starts[b]..starts[b] + s.sizes[b] as usize);
                labels |= 1 << s.order[b];
            }
        }
        let full = lis_over(&s.ranks, &ranges) as usize == ranges.len();
        if full != p.member[labels as usize] {
            return false;
        }
    }
    true
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn to_emulation(p: &Problem, s: &State) -> Result<Emulation> {
    let blocks = s
        .order
        .iter()
        .zip(&s.sizes)
        .map(|(&i, &size)| Block {
            label: p.labels[i],
            size,
        })
        .collect();
    let theta = s.ranks.iter().map(|&r| Rat::from_integer(r.into())).collect();
    Emulation::new(blocks, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Universe;
    use crate::graphs::Graph;

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn finds_small_emulations() {
        let p3 = Graph::path(3);
        let f = Family::cliques(p3);
        let e = search_emulation(&f, 2).unwrap().unwrap();
        assert!(verify_emulation(&e, &f, 3).unwrap().ok);
        let c0 = Family::up_to(Universe::Explicit(IdSet::range(1, 3)), 1);
        assert!(search_emulation(&c0, 1).unwrap().is_some());
    }

    #[test]
    fn limits() {
        let f = Family::up_to(Universe::Explicit(IdSet::range(1, 7)), 1);
        assert!(matches!(search_emulation(&f, 1), Err(Error::SearchSpaceExceeded(_))));
    }
}
