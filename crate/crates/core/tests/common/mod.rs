//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ncproj::heart::{hn, Charge, SheafClass};

/// All valid charges with `0 <= rank <= bound` and `|deg| <= bound`.
pub fn bounded_charges(bound: i64) -> Vec<Charge> {
    (0..=bound)
        .flat_map(|r| (-bound..=bound).filter_map(move |d| Charge::new(r, d).ok()))
        .collect()
}

/// Multisets of at most `k` charges drawn from `pool`, as sorted lists.
pub fn multisets(pool: &[Charge], k: usize) -> Vec<Vec<Charge>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<Charge>)> = vec![(0, Vec::new())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, m) in &frontier {
            for (i, z) in pool.iter().enumerate().skip(*start) {
                let mut m2 = m.clone();
                m2.push(*z);
                out.push(m2.clone());
                next.push((i, m2));
            }
        }
        frontier = next;
    }
    out
}

/// Ordinal of each factor's slope among the distinct slopes present, by
/// integer cross-multiplication with torsion at the top.
fn slope_ordinals(factors: &[Charge]) -> Vec<usize> {
    let cmp = |a: &Charge, b: &Charge| match (a.rank(), b.rank()) {
        (0, 0) => std::cmp::Ordering::Equal,
        (0, _) => std::cmp::Ordering::Greater,
        (_, 0) => std::cmp::Ordering::Less,
        (ra, rb) => (a.deg() as i128 * rb as i128).cmp(&(b.deg() as i128 * ra as i128)),
    };
    factors
        .iter()
        .map(|z| {
            let mut below: Vec<&Charge> = factors.iter().filter(|w| cmp(w, z).is_lt()).collect();
            below.sort_by(|a, b| cmp(a, b));
            below.dedup_by(|a, b| cmp(a, b).is_eq());
            below.len()
        })
        .collect()
}

/// Every ordered partition of `factors` into blocks of one slope each, with
/// strictly increasing block slopes, deduplicated.
pub fn hn_candidates(factors: &[Charge]) -> BTreeSet<Vec<Vec<Charge>>> {
    let n = factors.len();
    let ord = slope_ordinals(factors);
    let mut found = BTreeSet::new();
    if n == 0 {
        found.insert(Vec::new());
        return found;
    }
    for k in 1..=n {
        let mut assign = vec![0usize; n];
        loop {
            if admissible(&ord, &assign, k) {
                let mut blocks: Vec<Vec<Charge>> = vec![Vec::new(); k];
                for (i, &b) in assign.iter().enumerate() {
                    blocks[b].push(factors[i]);
                }
                blocks.iter_mut().for_each(|b| b.sort());
                found.insert(blocks);
            }
            // odometer over the k^n assignments
            let mut i = 0;
            while i < n && assign[i] == k - 1 {
                assign[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            assign[i] += 1;
        }
    }
    found
}

fn admissible(ord: &[usize], assign: &[usize], k: usize) -> bool {
    let mut block_ord = [usize::MAX; 8];
    for (i, &b) in assign.iter().enumerate() {
        if block_ord[b] == usize::MAX {
            block_ord[b] = ord[i];
        } else if block_ord[b] != ord[i] {
            return false;
        }
    }
    block_ord[..k].iter().all(|&o| o != usize::MAX) && block_ord[..k].windows(2).all(|w| w[0] < w[1])
}

fn expand(c: &SheafClass) -> Vec<Charge> {
    c.factors().flat_map(|(z, m)| std::iter::repeat_n(z, m as usize)).collect()
}

/// `hn` layers as sorted charge lists.
pub fn hn_blocks(factors: &[Charge]) -> Vec<Vec<Charge>> {
    hn(&SheafClass::from_charges(factors.iter().copied())).layers.iter().map(|l| expand(&l.factors)).collect()
}

/// Checks `hn` against the brute-force oracle on every multiset of at most
/// `k` charges bounded by `bound`; returns the number of multisets checked.
pub fn check_hn_exhaustive(bound: i64, k: usize) -> Result<usize, String> {
    let pool = bounded_charges(bound);
    let all = multisets(&pool, k);
    for m in &all {
        let cands = hn_candidates(m);
        if cands.len() != 1 {
            return Err(format!("{m:?}: {} candidate filtrations", cands.len()));
        }
        let ours = hn_blocks(m);
        if cands.first() != Some(&ours) {
            return Err(format!("{m:?}: hn gives {ours:?}, oracle {cands:?}"));
        }
    }
    Ok(all.len())
}
