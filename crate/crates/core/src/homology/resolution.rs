//! Minimal free resolutions of graded left modules and the cohomology of
//! their duals.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{self, Echelon, Vector};

use super::tables::{DegreewiseModule, GradedAlgebra};

/// One free module `P_s = sum_j A(-l_j)` of a resolution with its differential.
#[derive(Clone, Debug, Default)]
pub(crate) struct Level {
    /// Generator degrees `l_j`, nondecreasing.
    pub gens: Vec<i64>,
    /// `d(e_j)` in the degree-`l_j` basis of the previous level.
    pub images: Vec<Vector>,
    /// Rows of the differential in each degree `t - lo`, one per basis element.
    rows: Vec<Vec<Vector>>,
}

/// A minimal free resolution computed in internal degrees `lo..=t_max`.
#[derive(Clone, Debug)]
pub(crate) struct Resolution {
    pub lo: i64,
    pub levels: Vec<Level>,
}

/// Basis layout of `sum_j A(-l_j)` in degree `t`: (offset, size) per generator.
pub(crate) fn layout(alg: &GradedAlgebra, gens: &[i64], t: i64) -> Vec<(usize, usize)> {
    let mut off = 0;
    gens.iter()
        .map(|&l| {
            let n = alg.dim(t - l);
            let r = (off, n);
            off += n;
            r
        })
        .collect()
}

fn free_dim(alg: &GradedAlgebra, gens: &[i64], t: i64) -> usize {
    gens.iter().map(|&l| alg.dim(t - l)).sum()
}

/// `x_g * v` for `v` in degree `t` of the free module on `gens`.
fn free_act(alg: &GradedAlgebra, gens: &[i64], g: usize, t: i64, v: &[Scalar]) -> Vector {
    let e = t + alg.weights()[g] as i64;
    let src = layout(alg, gens, t);
    let dst = layout(alg, gens, e);
    let mut out = linalg::zero_vector(alg.field(), dst.iter().map(|b| b.1).sum());
    for (j, &l) in gens.iter().enumerate() {
        for i in 0..src[j].1 {
            let c = &v[src[j].0 + i];
            if c.is_zero() {
                continue;
            }
            for (k, a) in alg.left(g, (t - l) as u32, i) {
                out[dst[j].0 + k] = &out[dst[j].0 + k] + &(c * a);
            }
        }
    }
    out
}

impl Resolution {
    /// Resolves `module` through homological degree `p_max` and internal degree `t_max`.
    pub fn compute(alg: &GradedAlgebra, module: &DegreewiseModule, p_max: usize, t_max: i64) -> Result<Self> {
        if t_max > module.hi() || t_max - module.lo() > alg.top() as i64 {
            return Err(Error::CutoffTooSmall {
                needed: (t_max - module.lo()).max(0) as u32,
                cutoff: alg.top().min((module.hi() - module.lo()).max(0) as u32),
            });
        }
        let lo = module.lo();
        let field = alg.field();
        let mut levels: Vec<Level> = vec![Level::default(); p_max + 1];
        for t in lo..=t_max {
            for s in 0..=p_max {
                let (before, rest) = levels.split_at_mut(s);
                let level = &mut rest[0];
                let target_gens = before.last().map(|l| l.gens.clone());
                let target_dim = match &target_gens {
                    None => module.dim(t),
                    Some(g) => free_dim(alg, g, t),
                };
                let act = |g: usize, deg: i64, v: &[Scalar]| -> Vector {
                    match &target_gens {
                        None => module.act_gen(g, deg, v),
                        Some(gens) => free_act(alg, gens, g, deg, v),
                    }
                };

                // Rows from generators of lower degree: (w, j) with w = g * w'.
                let mut rows = Vec::new();
                for (j, &l) in level.gens.iter().enumerate() {
                    let d = t - l;
                    if d < 0 {
                        continue;
                    }
                    if d == 0 {
                        rows.push(level.images[j].clone());
                        continue;
                    }
                    for i in 0..alg.dim(d) {
                        let (g, rest) = alg.split(d as u32, i);
                        let prev = t - alg.weights()[g as usize] as i64;
                        let off = layout(alg, &level.gens, prev)[j].0;
                        let src = &level.rows[(prev - lo) as usize][off + rest];
                        rows.push(act(g as usize, prev, src));
                    }
                }

                // Kernel of the previous differential in degree t.
                let kernel: Vec<Vector> = match before.last() {
                    None => (0..target_dim)
                        .map(|i| {
                            let mut e = linalg::zero_vector(field, target_dim);
                            e[i] = Scalar::one(field);
                            e
                        })
                        .collect(),
                    Some(prev) => linalg::left_kernel(field, &prev.rows[(t - lo) as usize]),
                };
                let mut image = Echelon::new(field, target_dim);
                for r in &rows {
                    image.insert(r);
                }
                for v in kernel {
                    if image.insert(&v) {
                        level.gens.push(t);
                        level.images.push(v.clone());
                        rows.push(v);
                    }
                }
                level.rows.push(rows);
            }
        }
        Ok(Resolution { lo, levels })
    }

    pub fn betti(&self) -> Vec<Vec<i64>> {
        self.levels.iter().map(|l| l.gens.clone()).collect()
    }

    /// Whether some differential has a nonzero entry of degree zero.
    pub fn is_minimal(&self, alg: &GradedAlgebra) -> bool {
        self.levels.windows(2).all(|w| {
            let (prev, cur) = (&w[0], &w[1]);
            cur.gens.iter().zip(&cur.images).all(|(&l, img)| {
                let lay = layout(alg, &prev.gens, l);
                prev.gens.iter().zip(&lay).all(|(&lk, &(off, n))| lk != l || img[off..off + n].iter().all(Scalar::is_zero))
            })
        })
    }

    /// Entry `a_jk` of `d(e_j) = sum_k a_jk e_k` at level `s`, as normal-word coordinates.
    fn entry(&self, alg: &GradedAlgebra, s: usize, j: usize, k: usize) -> Option<&[Scalar]> {
        let cur = &self.levels[s];
        let prev = &self.levels[s - 1];
        let l = cur.gens[j];
        let (off, n) = layout(alg, &prev.gens, l)[k];
        let v = &cur.images[j][off..off + n];
        if v.iter().all(Scalar::is_zero) {
            None
        } else {
            Some(v)
        }
    }

    /// Matrix of `delta: Hom(P_s, M[d]) -> Hom(P_{s+1}, M[d])` as rows over the source basis.
    fn coboundary(&self, alg: &GradedAlgebra, m: &DegreewiseModule, s: usize, d: i64) -> (usize, Vec<Vector>) {
        let field = alg.field();
        let src = &self.levels[s].gens;
        let dst = &self.levels[s + 1].gens;
        let dst_off: Vec<usize> = dst
            .iter()
            .scan(0, |acc, &l| {
                let o = *acc;
                *acc += m.dim(l + d);
                Some(o)
            })
            .collect();
        let dst_dim: usize = dst.iter().map(|&l| m.dim(l + d)).sum();
        let mut rows = Vec::new();
        for (k, &lk) in src.iter().enumerate() {
            let mk = m.dim(lk + d);
            for b in 0..mk {
                let mut e = linalg::zero_vector(field, mk);
                e[b] = Scalar::one(field);
                let mut row = linalg::zero_vector(field, dst_dim);
                for (j, &lj) in dst.iter().enumerate() {
                    let Some(a) = self.entry(alg, s + 1, j, k) else { continue };
                    let deg = (lj - lk) as u32;
                    for (w, c) in alg.element(deg, a) {
                        let img = m.act_word(w, lk + d, &e);
                        for (i, x) in img.iter().enumerate() {
                            if !x.is_zero() {
                                row[dst_off[j] + i] = &row[dst_off[j] + i] + &(&c * x);
                            }
                        }
                    }
                }
                rows.push(row);
            }
        }
        (dst_dim, rows)
    }

    /// Highest module degree touched when computing `Ext^s(-, M)_d`.
    pub fn needed_degree(&self, s: usize, d: i64) -> i64 {
        let hi = s.saturating_sub(1)..=(s + 1).min(self.levels.len() - 1);
        hi.flat_map(|i| self.levels[i].gens.iter().copied()).max().unwrap_or(self.lo) + d
    }

    /// `dim Ext^s(N, M)_d` where `N` is the resolved module.
    pub fn ext_dim(&self, alg: &GradedAlgebra, m: &DegreewiseModule, s: usize, d: i64) -> Result<usize> {
        if s + 1 >= self.levels.len() {
            return Err(Error::Precondition(format!(
                "resolution has {} levels, Ext^{s} needs {}",
                self.levels.len(),
                s + 2
            )));
        }
        let needed = self.needed_degree(s, d);
        if needed > m.hi() {
            return Err(Error::CutoffTooSmall { needed: needed.max(0) as u32, cutoff: m.hi().max(0) as u32 });
        }
        let dim_c: usize = self.levels[s].gens.iter().map(|&l| m.dim(l + d)).sum();
        let (n_out, rows_out) = self.coboundary(alg, m, s, d);
        let rank_out = linalg::rank(alg.field(), n_out, &rows_out);
        let rank_in = if s == 0 {
            0
        } else {
            let (n_in, rows_in) = self.coboundary(alg, m, s - 1, d);
            linalg::rank(alg.field(), n_in, &rows_in)
        };
        Ok(dim_c - rank_out - rank_in)
    }
}
