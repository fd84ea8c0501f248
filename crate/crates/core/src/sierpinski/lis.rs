use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::rat::{common_denominator, scaled_integer};
use crate::exact::Rat;

/// Prefix maxima over ranks `1..=n`.
struct Fenwick {
    tree: Vec<BigInt>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Self {
            tree: vec![BigInt::zero(); n + 1],
        }
    }

    /// Max over ranks `1..=i`.
    fn query(&self, mut i: usize) -> BigInt {
        let mut best = BigInt::zero();
        while i > 0 {
            if self.tree[i] > best {
                best = self.tree[i].clone();
            }
            i &= i - 1;
        }
        best
    }

    fn raise(&mut self, mut i: usize, v: &BigInt) {
        while i < self.tree.len() {
            if *v > self.tree[i] {
                self.tree[i] = v.clone();
            }
            i += i & i.wrapping_neg();
        }
    }
}

/// Maximum of `Σ |w_i|` over index sequences `i_1 < ... < i_k` with
/// `keys[i_1] < ... < keys[i_k]`, in `O(n log n)` big-integer operations.
pub fn weighted_lis(keys: &[Rat], weights: &[Rat]) -> Rat {
    assert_eq!(keys.len(), weights.len());
    let n = keys.len();
    if n == 0 {
        return Rat::zero();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    // Equal keys share a rank so they never chain.
    let mut rank = vec![0usize; n];
    let mut r = 0;
    for (pos, &i) in order.iter().enumerate() {
        if pos == 0 || keys[order[pos - 1]] != keys[i] {
            r += 1;
        }
        rank[i] = r;
    }
    let den = common_denominator(weights.iter());
    let mut fw = Fenwick::new(r);
    let mut best = BigInt::zero();
    for i in 0..n {
        let w = scaled_integer(&weights[i], &den).abs();
        let v = fw.query(rank[i] - 1) + w;
        if v > best {
            best = v.clone();
        }
        fw.raise(rank[i], &v);
    }
    Rat::new(best, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn small_cases() {
        let keys = [int(0), int(-1), int(1)];
        let ones = [int(1), int(1), int(1)];
        assert_eq!(weighted_lis(&keys, &ones), int(2));
        let w = [rat(1, 2), rat(-3, 1), rat(1, 3)];
        assert_eq!(weighted_lis(&keys, &w), rat(10, 3));
        assert_eq!(weighted_lis(&[int(1), int(1)], &ones[..2]), int(1));
    }
}
