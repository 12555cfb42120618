//! Reference implementations shared by integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Naive contraction: find the leftmost 1, remove it, decrement neighbours, repeat.
pub fn naive_blow_down(s: &[i64], rightmost: bool) -> Vec<i64> {
    let mut v = s.to_vec();
    loop {
        let pos = if rightmost { v.iter().rposition(|&x| x == 1) } else { v.iter().position(|&x| x == 1) };
        let Some(i) = pos else { return v };
        if i > 0 {
            v[i - 1] -= 1;
        }
        if i + 1 < v.len() {
            v[i + 1] -= 1;
        }
        v.remove(i);
    }
}

pub fn is_zero(k: &[i64]) -> bool {
    naive_blow_down(k, false) == vec![0]
}

/// Does `u` embed entrywise below `b` along an increasing subsequence?
pub fn embeds(u: &[i64], b: &[i64]) -> bool {
    let mut j = 0;
    for &x in u {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() {
            return false;
        }
        j += 1;
    }
    true
}

/// Every zero fraction of length s arises from [1,1] by s-2 blow-ups, each
/// inserting a 1 and raising its neighbours. A blow-down of a member of K
/// still embeds below b, which keeps the levels small.
pub fn blow_up_oracle(b: &[i64]) -> BTreeSet<Vec<i64>> {
    let s = b.len();
    if s == 1 {
        // Du Val convention: the Artin component
        return [vec![0]].into_iter().collect();
    }
    let mut level: BTreeSet<Vec<i64>> = BTreeSet::new();
    if embeds(&[1, 1], b) {
        level.insert(vec![1, 1]);
    }
    for m in 2..s {
        let mut next = BTreeSet::new();
        for u in &level {
            for i in 0..=m {
                let mut v = u.clone();
                v.insert(i, 1);
                if i > 0 {
                    v[i - 1] += 1;
                }
                if i < m {
                    v[i + 1] += 1;
                }
                if embeds(&v, b) {
                    next.insert(v);
                }
            }
        }
        level = next;
    }
    level.into_iter().filter(|k| k.iter().zip(b).all(|(x, y)| x <= y)).collect()
}
