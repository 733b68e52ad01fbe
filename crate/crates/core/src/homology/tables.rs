//! Normal-word bases with generator multiplication tables, and graded modules
//! stored degree by degree.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::linalg::{self, Vector};
use crate::poly::{FreeAlgebra, NcPolynomial};
use crate::rewriting::RewriteSystem;
use crate::word::{Letter, Word};

pub(crate) type SparseVec = Vec<(usize, Scalar)>;

/// `v` as a list of its nonzero coordinates.
pub(crate) fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// `acc += c * v` for sparse `v`.
fn add_sparse(acc: &mut [Scalar], c: &Scalar, v: &SparseVec) {
    for (i, a) in v {
        acc[*i] = &acc[*i] + &(c * a);
    }
}

/// The algebra `A = T/I` in degrees `0..=top`, with left multiplication by
/// each generator tabulated on normal words.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    sys: Arc<RewriteSystem>,
    top: u32,
    bases: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    /// `split[d][i] = (g, j)` with `bases[d][i] = g * bases[d - w_g][j]`.
    split: Vec<Vec<(Letter, usize)>>,
    /// `left[g][d][i]` = normal form of `g * bases[d][i]`.
    left: Vec<Vec<Vec<SparseVec>>>,
}

impl GradedAlgebra {
    pub fn new(sys: &Arc<RewriteSystem>, top: u32) -> Result<Self> {
        if top > sys.cutoff() {
            return Err(Error::CutoffTooSmall { needed: top, cutoff: sys.cutoff() });
        }
        let ring = sys.ring().clone();
        let weights = ring.weights().to_vec();
        let mut bases = Vec::new();
        let mut index = Vec::new();
        for d in 0..=top {
            let b = sys.normal_words(d)?;
            index.push(b.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect::<HashMap<_, _>>());
            bases.push(b);
        }
        let split = bases
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|w| !w.is_empty())
                    .map(|w| {
                        let g = w.letters()[0];
                        let rest = w.slice(1, w.len(), &weights);
                        (g, index[rest.degree() as usize][&rest])
                    })
                    .collect()
            })
            .collect();
        let mut left = Vec::with_capacity(ring.n_gens());
        for (g, &wg) in weights.iter().enumerate().take(ring.n_gens()) {
            let gw = Word::letter(g as Letter, wg);
            let mut per_degree = Vec::new();
            for d in 0..=top {
                let e = d + wg;
                if e > top {
                    per_degree.push(Vec::new());
                    continue;
                }
                let rows = bases[d as usize]
                    .iter()
                    .map(|w| {
                        let nf = sys.reduce(&NcPolynomial::monomial(&ring, gw.concat(w).letters()));
                        let mut v: SparseVec = nf.iter().map(|(u, c)| (index[e as usize][u], c.clone())).collect();
                        v.sort_by_key(|(i, _)| *i);
                        v
                    })
                    .collect();
                per_degree.push(rows);
            }
            left.push(per_degree);
        }
        Ok(GradedAlgebra { sys: sys.clone(), top, bases, index, split, left })
    }

    pub fn system(&self) -> &Arc<RewriteSystem> {
        &self.sys
    }

    pub fn ring(&self) -> &Arc<FreeAlgebra> {
        self.sys.ring()
    }

    pub fn field(&self) -> FieldKind {
        self.sys.ring().field()
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn weights(&self) -> &[u32] {
        self.sys.ring().weights()
    }

    pub fn n_gens(&self) -> usize {
        self.sys.ring().n_gens()
    }

    /// `dim A_d`, zero for negative `d`. Panics above the table.
    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        assert!(d <= self.top as i64, "degree {d} above the algebra table ({})", self.top);
        self.bases[d as usize].len()
    }

    pub fn basis(&self, d: u32) -> &[Word] {
        &self.bases[d as usize]
    }

    pub(crate) fn split(&self, d: u32, i: usize) -> (Letter, usize) {
        self.split[d as usize][i]
    }

    pub(crate) fn left(&self, g: usize, d: u32, i: usize) -> &SparseVec {
        &self.left[g][d as usize][i]
    }

    /// Coordinates of a homogeneous element of degree `d` over the normal words.
    pub fn coords(&self, p: &NcPolynomial, d: u32) -> Result<Vector> {
        let nf = self.sys.normal_form(p)?;
        let mut v = linalg::zero_vector(self.field(), self.dim(d as i64));
        for (w, c) in nf.iter() {
            if w.degree() != d {
                return Err(Error::InvalidModule(format!("{p} is not homogeneous of degree {d}")));
            }
            v[self.index[d as usize][w]] = c.clone();
        }
        Ok(v)
    }

    /// The element with coordinates `v` in degree `d`, as (word, coefficient) pairs.
    pub(crate) fn element(&self, d: u32, v: &[Scalar]) -> Vec<(&Word, Scalar)> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (&self.bases[d as usize][i], c.clone()))
            .collect()
    }
}

/// A graded left module known in degrees `lo..=hi`, zero below `lo`.
///
/// `act[g][t - lo][i]` is `x_g * b_i` for the `i`-th basis vector of `M_t`,
/// written in the basis of `M_{t + w_g}`; it is empty when that degree lies
/// above `hi`.
#[derive(Clone, Debug)]
pub struct DegreewiseModule {
    field: FieldKind,
    weights: Vec<u32>,
    lo: i64,
    hi: i64,
    dims: Vec<usize>,
    act: Vec<Vec<Vec<SparseVec>>>,
}

impl DegreewiseModule {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    /// `dim M_t`; zero below `lo`. Panics above `hi`.
    pub fn dim(&self, t: i64) -> usize {
        if t < self.lo {
            return 0;
        }
        assert!(t <= self.hi, "degree {t} above the module range ({})", self.hi);
        self.dims[(t - self.lo) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `x_g * v` for `v` in `M_t`.
    pub fn act_gen(&self, g: usize, t: i64, v: &[Scalar]) -> Vector {
        let e = t + self.weights[g] as i64;
        let mut out = linalg::zero_vector(self.field, self.dim(e));
        if t < self.lo || out.is_empty() {
            return out;
        }
        let table = &self.act[g][(t - self.lo) as usize];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                add_sparse(&mut out, c, &table[i]);
            }
        }
        out
    }

    /// `w * v` for a word `w` and `v` in `M_t`.
    pub fn act_word(&self, w: &Word, t: i64, v: &[Scalar]) -> Vector {
        let mut cur = v.to_vec();
        let mut deg = t;
        for &g in w.letters().iter().rev() {
            cur = self.act_gen(g as usize, deg, &cur);
            deg += self.weights[g as usize] as i64;
        }
        cur
    }

    /// `M(-s)`: the same module with degrees raised by `s`.
    pub fn shifted(&self, s: i64) -> Self {
        DegreewiseModule { lo: self.lo + s, hi: self.hi + s, ..self.clone() }
    }

    /// `A(-s)` restricted to degrees `t` with `keep(t - s)`.
    fn from_algebra(alg: &GradedAlgebra, s: i64, keep: impl Fn(i64) -> bool) -> Self {
        let top = alg.top() as i64;
        let lo = s;
        let hi = top + s;
        let dims: Vec<usize> = (lo..=hi).map(|t| if keep(t - s) { alg.dim(t - s) } else { 0 }).collect();
        let act = (0..alg.n_gens())
            .map(|g| {
                let w = alg.weights()[g] as i64;
                (lo..=hi)
                    .map(|t| {
                        let d = t - s;
                        if d + w > top || !keep(d) || !keep(d + w) {
                            vec![Vec::new(); dims[(t - lo) as usize]]
                        } else {
                            (0..alg.dim(d)).map(|i| alg.left(g, d as u32, i).clone()).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        DegreewiseModule { field: alg.field(), weights: alg.weights().to_vec(), lo, hi, dims, act }
    }

    /// `A(-s)`.
    pub fn free(alg: &GradedAlgebra, s: i64) -> Self {
        Self::from_algebra(alg, s, |_| true)
    }

    /// `A_{>= n}`.
    pub fn truncation(alg: &GradedAlgebra, n: i64) -> Self {
        let mut m = Self::from_algebra(alg, 0, |d| d >= n);
        m.trim_below();
        m
    }

    /// `A / A_{>= n}`.
    pub fn quotient(alg: &GradedAlgebra, n: i64) -> Self {
        Self::from_algebra(alg, 0, |d| d < n)
    }

    /// The trivial module `k = A / A_+` in degree 0.
    pub fn trivial(alg: &GradedAlgebra) -> Self {
        Self::quotient(alg, 1)
    }

    fn trim_below(&mut self) {
        while self.lo < self.hi && self.dims[0] == 0 {
            self.dims.remove(0);
            for per_gen in &mut self.act {
                per_gen.remove(0);
            }
            self.lo += 1;
        }
    }

    /// Cokernel of `rows` inside `A(-l_1) + ... + A(-l_m)`.
    ///
    /// Row `i` lists the components of a homogeneous element; its degree is
    /// read off from its first nonzero entry.
    pub fn cokernel(alg: &GradedAlgebra, shifts: &[i64], rows: &[Vec<NcPolynomial>]) -> Result<Self> {
        let field = alg.field();
        let lo = shifts.iter().copied().min().unwrap_or(0);
        let hi = alg.top() as i64 + lo;
        let block = |t: i64| -> Vec<(usize, usize)> {
            let mut off = 0;
            shifts
                .iter()
                .map(|&l| {
                    let n = if t - l <= alg.top() as i64 { alg.dim(t - l) } else { 0 };
                    let r = (off, n);
                    off += n;
                    r
                })
                .collect()
        };
        let free_dim = |t: i64| block(t).iter().map(|b| b.1).sum::<usize>();
        // Relation vectors grouped by degree.
        let mut rel_by_degree: HashMap<i64, Vec<Vector>> = HashMap::new();
        for row in rows {
            if row.len() != shifts.len() {
                return Err(Error::DimensionMismatch { expected: shifts.len(), got: row.len() });
            }
            let Some(deg) = row.iter().zip(shifts).find_map(|(p, l)| p.degree().map(|d| d as i64 + l)) else {
                continue;
            };
            if deg > hi {
                return Err(Error::DegreeExceedsCutoff { degree: deg as u32, cutoff: hi as u32 });
            }
            let blocks = block(deg);
            let mut v = linalg::zero_vector(field, free_dim(deg));
            for ((p, &l), &(off, _)) in row.iter().zip(shifts).zip(&blocks) {
                if p.is_zero() {
                    continue;
                }
                if p.degree().map(|d| d as i64 + l) != Some(deg) || !p.is_homogeneous() {
                    return Err(Error::InvalidModule(format!("row entry {p} is not homogeneous for the shifts")));
                }
                let c = alg.coords(p, (deg - l) as u32)?;
                for (i, x) in c.into_iter().enumerate() {
                    v[off + i] = x;
                }
            }
            rel_by_degree.entry(deg).or_default().push(v);
        }

        let free_act = |g: usize, t: i64, v: &[Scalar]| -> Vector {
            let e = t + alg.weights()[g] as i64;
            let src = block(t);
            let dst = block(e);
            let mut out = linalg::zero_vector(field, free_dim(e));
            for (j, &l) in shifts.iter().enumerate() {
                let d = t - l;
                if d < 0 || e - l > alg.top() as i64 {
                    continue;
                }
                for i in 0..src[j].1 {
                    let c = &v[src[j].0 + i];
                    if !c.is_zero() {
                        for (k, a) in alg.left(g, d as u32, i) {
                            out[dst[j].0 + k] = &out[dst[j].0 + k] + &(c * a);
                        }
                    }
                }
            }
            out
        };

        // Submodule U_t and the quotient basis (non-pivot columns).
        let mut sub: Vec<Vec<(usize, Vector)>> = Vec::new();
        let mut free_cols: Vec<Vec<usize>> = Vec::new();
        for t in lo..=hi {
            let mut gens: Vec<Vector> = rel_by_degree.remove(&t).unwrap_or_default();
            for g in 0..alg.n_gens() {
                let s = t - alg.weights()[g] as i64;
                if s >= lo {
                    for (_, v) in &sub[(s - lo) as usize] {
                        gens.push(free_act(g, s, v));
                    }
                }
            }
            let n = free_dim(t);
            let r = linalg::rref(field, n, &gens);
            let mut is_pivot = vec![false; n];
            for (p, _) in &r {
                is_pivot[*p] = true;
            }
            free_cols.push((0..n).filter(|&c| !is_pivot[c]).collect());
            sub.push(r);
        }
        let project = |t: i64, v: &mut Vector| -> Vector {
            for (p, row) in &sub[(t - lo) as usize] {
                if !v[*p].is_zero() {
                    let c = -&v[*p];
                    linalg::axpy(v, &c, row);
                }
            }
            free_cols[(t - lo) as usize].iter().map(|&c| v[c].clone()).collect()
        };
        let dims: Vec<usize> = free_cols.iter().map(Vec::len).collect();
        let act = (0..alg.n_gens())
            .map(|g| {
                let w = alg.weights()[g] as i64;
                (lo..=hi)
                    .map(|t| {
                        let cols = &free_cols[(t - lo) as usize];
                        if t + w > hi {
                            return vec![Vec::new(); cols.len()];
                        }
                        cols.iter()
                            .map(|&c| {
                                let mut e = linalg::zero_vector(field, free_dim(t));
                                e[c] = Scalar::one(field);
                                let mut img = free_act(g, t, &e);
                                sparse(&project(t + w, &mut img))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(DegreewiseModule { field, weights: alg.weights().to_vec(), lo, hi, dims, act })
    }
}
