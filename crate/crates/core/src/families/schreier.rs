use serde::{Deserialize, Serialize};

use super::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Star,
}

/// Membership of the sorted set `e` in `S_alpha` (or `S*_alpha`).
pub fn contains(alpha: &Ordinal, variant: Variant, e: &[u32]) -> bool {
    if e.is_empty() {
        return true;
    }
    match alpha {
        Ordinal::Zero => e.len() <= 1,
        Ordinal::Succ(beta) => schreier_op(e, |block| contains(beta, variant, block)),
        Ordinal::Limit(l) => {
            let Some(seq) = &l.seq else {
                return false;
            };
            let min = e[0];
            match variant {
                // D: some k <= min E with E in S_{ξ_k}.
                Variant::Standard => (1..=min).any(|k| contains(&seq(k), variant, e)),
                Variant::Star => {
                    let ladder: Vec<Ordinal> = (1..=min.min(e.len() as u32)).map(|k| seq(k)).collect();
                    dstar(e, min, |k, block| contains(&ladder[k as usize - 1], variant, block))
                }
            }
        }
    }
}

/// `E ∈ S(G)`: the fewest consecutive blocks from `G` covering `E` is at most
/// `min E`. Taking the longest member prefix each time is optimal because `G`
/// is hereditary.
pub fn schreier_op(e: &[u32], member: impl Fn(&[u32]) -> bool) -> bool {
    let min = e[0] as usize;
    let mut blocks = 0;
    let mut i = 0;
    while i < e.len() {
        let mut j = i + 1;
        if !member(&e[i..j]) {
            return false;
        }
        while j < e.len() && member(&e[i..=j]) {
            j += 1;
        }
        blocks += 1;
        if blocks > min {
            return false;
        }
        i = j;
    }
    true
}

/// `E ∈ D*((F_k)_k)`: for some `m <= min E`, `E = B_1 < ... < B_m` with
/// non-empty blocks and `B_j ∈ F_{m-j+1}`.
pub fn dstar(e: &[u32], min: u32, member: impl Fn(u32, &[u32]) -> bool) -> bool {
    let n = e.len();
    for m in 1..=(min as usize).min(n) {
        // reach[p]: the first p elements split into the first j blocks.
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for j in 1..=m {
            let k = (m - j + 1) as u32;
            let mut next = vec![false; n + 1];
            for p in 0..n {
                if !reach[p] {
                    continue;
                }
                for q in p + 1..=n {
                    if !next[q] && member(k, &e[p..q]) {
                        next[q] = true;
                    }
                }
            }
            reach = next;
        }
        if reach[n] {
            return true;
        }
    }
    false
}
