//! Counting normal words and estimating growth.

use std::collections::VecDeque;

use serde::Serialize;

use super::RewriteSystem;
use crate::error::{Error, Result};
use crate::field::Rational;

/// Consecutive dimension ratio at or above which growth is reported as exponential.
pub const GK_RATIO_THRESHOLD: (u128, u128) = (3, 2);

/// Estimates strictly inside this band carry the low-confidence flag.
pub const LOW_CONFIDENCE_BAND: (f64, f64) = (1.15, 1.85);

/// Aho–Corasick automaton over the rule leads. State 0 is the root; `dead`
/// marks states whose suffix set contains a lead.
struct LeadAutomaton {
    next: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl LeadAutomaton {
    fn new(sys: &RewriteSystem) -> Self {
        let n_gens = sys.ring.n_gens();
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; n_gens]];
        let mut dead = vec![false];
        for rule in &sys.rules {
            let mut s = 0;
            for &l in rule.lead.letters() {
                s = match children[s][l as usize] {
                    Some(t) => t,
                    None => {
                        children.push(vec![None; n_gens]);
                        dead.push(false);
                        let t = children.len() - 1;
                        children[s][l as usize] = Some(t);
                        t
                    }
                };
            }
            dead[s] = true;
        }
        let mut next = vec![vec![0; n_gens]; children.len()];
        let mut fail = vec![0; children.len()];
        let mut queue = VecDeque::new();
        for g in 0..n_gens {
            if let Some(t) = children[0][g] {
                next[0][g] = t;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for g in 0..n_gens {
                match children[s][g] {
                    Some(t) => {
                        fail[t] = next[fail[s]][g];
                        next[s][g] = t;
                        queue.push_back(t);
                    }
                    None => next[s][g] = next[fail[s]][g],
                }
            }
        }
        LeadAutomaton { next, dead }
    }
}

pub(super) fn count_normal_words(sys: &RewriteSystem, n: u32) -> Result<Vec<u128>> {
    let auto = LeadAutomaton::new(sys);
    let weights = sys.ring.weights();
    let n = n as usize;
    let states = auto.next.len();
    let mut table = vec![vec![0u128; states]; n + 1];
    table[0][0] = 1;
    for d in 0..n {
        for s in 0..states {
            let c = table[d][s];
            if c == 0 {
                continue;
            }
            for (g, &w) in weights.iter().enumerate() {
                let e = d + w as usize;
                let t = auto.next[s][g];
                if e > n || auto.dead[t] {
                    continue;
                }
                table[e][t] = table[e][t].checked_add(c).ok_or(Error::Overflow("normal words"))?;
            }
        }
    }
    table
        .iter()
        .map(|row| row.iter().try_fold(0u128, |acc, &c| acc.checked_add(c)).ok_or(Error::Overflow("normal words")))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GkEstimate {
    /// Least-squares slope, rounded to three decimals.
    Finite(Rational),
    Infinite,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub cutoff: u32,
    pub dims: Vec<u128>,
    pub filtration_dims: Vec<u128>,
    pub gk_estimate: GkEstimate,
    pub window: (u32, u32),
    pub ratio_threshold: String,
    pub low_confidence: bool,
}

/// Growth exponent of `n -> dim F^n A` fitted over `[N/2, N]`.
pub fn gk_estimate(sys: &RewriteSystem) -> Result<GrowthReport> {
    let n = sys.cutoff;
    let dims = sys.hilbert_function(n)?;
    let mut filtration_dims = Vec::with_capacity(dims.len());
    let mut acc = 0u128;
    for &d in &dims {
        acc = acc.checked_add(d).ok_or(Error::Overflow("filtration dimensions"))?;
        filtration_dims.push(acc);
    }
    let lo = (n / 2).max(1);
    let window = (lo, n);
    let (num, den) = GK_RATIO_THRESHOLD;
    let exponential = lo < n
        && (lo..n).all(|d| {
            let (a, b) = (dims[d as usize], dims[d as usize + 1]);
            a > 0 && b.checked_mul(den).zip(a.checked_mul(num)).is_none_or(|(l, r)| l >= r)
        });
    let (gk_estimate, low_confidence) = if exponential {
        (GkEstimate::Infinite, false)
    } else {
        let pts: Vec<(f64, f64)> =
            (lo..=n).map(|k| ((k as f64).ln(), (filtration_dims[k as usize] as f64).ln())).collect();
        let slope = least_squares_slope(&pts);
        let rounded = Rational::new((slope * 1000.0).round() as i64, 1000).expect("nonzero denominator");
        let low = slope > LOW_CONFIDENCE_BAND.0 && slope < LOW_CONFIDENCE_BAND.1;
        (GkEstimate::Finite(rounded), low)
    };
    Ok(GrowthReport {
        cutoff: n,
        dims,
        filtration_dims,
        gk_estimate,
        window,
        ratio_threshold: format!("{num}/{den}"),
        low_confidence,
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    if pts.len() < 2 {
        return 0.0;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}
