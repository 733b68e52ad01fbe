//! Graded algebra presentations, twists by graded automorphisms, and the
//! standard-algebra check.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::endo::GradedEndomorphism;
use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::linalg::{self, Matrix, Vector};
use crate::poly::{FreeAlgebra, NcPolynomial};
use crate::rewriting::{complete_truncated, RewriteSystem};
use crate::word::{Letter, Word};

/// `k{generators} / (relations)`, with the monomial order carried by the ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraPresentation {
    name: String,
    ring: Arc<FreeAlgebra>,
    relations: Vec<NcPolynomial>,
}

impl AlgebraPresentation {
    pub fn new(name: impl Into<String>, ring: Arc<FreeAlgebra>, relations: Vec<NcPolynomial>) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            if **r.ring() != *ring {
                return Err(Error::AlphabetMismatch);
            }
            if r.is_zero() {
                return Err(Error::ZeroRelation);
            }
            if !r.is_homogeneous() {
                return Err(Error::Inhomogeneous(r.to_string()));
            }
            if r.degree() == Some(0) {
                return Err(Error::InvalidPresentation(format!("constant relation {r}")));
            }
            rels.push(r.with_ring(&ring));
        }
        Ok(AlgebraPresentation { name: name.into(), ring, relations: rels })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Arc<FreeAlgebra> {
        &self.ring
    }

    pub fn field(&self) -> FieldKind {
        self.ring.field()
    }

    pub fn relations(&self) -> &[NcPolynomial] {
        &self.relations
    }

    pub fn generators(&self) -> Vec<(String, u32)> {
        self.ring.symbols().iter().cloned().zip(self.ring.weights().iter().copied()).collect()
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().filter_map(NcPolynomial::degree).max().unwrap_or(0)
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        AlgebraPresentation { name: name.into(), ..self.clone() }
    }

    /// The presentation in DSL form.
    pub fn to_dsl(&self) -> String {
        let gens: Vec<String> = self.generators().iter().map(|(s, w)| format!("{s}:{w}")).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        format!("algebra {} over {} {{ gens: {}; rels: {}; }}", self.name, self.field(), gens.join(", "), rels.join(", "))
    }

    fn require_unit_weights(&self) -> Result<()> {
        match self.ring.weights().iter().position(|&w| w != 1) {
            Some(g) => Err(Error::NotWeightOne(self.ring.symbols()[g].clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

impl Serialize for AlgebraPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Gen<'a> {
            symbol: &'a str,
            weight: u32,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            name: &'a str,
            field: FieldKind,
            generators: Vec<Gen<'a>>,
            relations: Vec<String>,
            dsl: String,
        }
        Repr {
            name: &self.name,
            field: self.field(),
            generators: self
                .ring
                .symbols()
                .iter()
                .zip(self.ring.weights())
                .map(|(s, &w)| Gen { symbol: s, weight: w })
                .collect(),
            relations: self.relations.iter().map(|r| r.to_string()).collect(),
            dsl: self.to_dsl(),
        }
        .serialize(s)
    }
}

/// Completed rewriting system of the relation ideal, truncated at `cutoff`.
pub fn build(p: &AlgebraPresentation, cutoff: u32) -> Result<RewriteSystem> {
    complete_truncated(&p.ring, &p.relations, cutoff)
}

/// Whether `sigma` maps every relation into the ideal, checked up to `cutoff`.
pub fn check_automorphism(p: &AlgebraPresentation, sigma: &GradedEndomorphism, cutoff: u32) -> Result<bool> {
    p.require_unit_weights()?;
    if !sigma.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let sys = build(p, cutoff.max(p.max_relation_degree()))?;
    for r in &p.relations {
        if !sys.normal_form(&sigma.apply(r)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates of a degree-`d` element over a fixed word list.
fn coords(p: &NcPolynomial, index: &HashMap<Word, usize>, field: FieldKind) -> Vector {
    let mut v = linalg::zero_vector(field, index.len());
    for (w, c) in p.iter() {
        v[index[w]] = c.clone();
    }
    v
}

/// All words of degree `d` over unit-weight generators, in descending order.
pub(crate) fn free_words_desc(ring: &Arc<FreeAlgebra>, d: u32) -> Vec<Word> {
    let n = ring.n_gens() as Letter;
    let mut words = vec![Vec::<Letter>::new()];
    for _ in 0..d {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    let mut words: Vec<Word> = words.into_iter().map(|l| ring.word(&l)).collect();
    let order = ring.order().clone();
    words.sort_by(|a, b| order.compare(b, a));
    words
}

/// Polynomials from the reduced row echelon rows of `vectors` over `words`.
fn rows_to_polys(ring: &Arc<FreeAlgebra>, words: &[Word], rows: Vec<(usize, Vector)>) -> Vec<NcPolynomial> {
    rows.into_iter()
        .map(|(_, row)| {
            let mut p = NcPolynomial::zero(ring);
            for (k, c) in row.iter().enumerate() {
                p.add_term(words[k].clone(), c);
            }
            p
        })
        .collect()
}

/// Presentation of the twisted algebra `A^sigma` with product `a * b = a sigma^{deg a}(b)`.
///
/// In each degree `s <= s_max` the relations are the kernel of the twisted
/// evaluation map on free words, taken modulo the ideal generated by the
/// twisted relations of lower degree, in reduced echelon form.
pub fn twist(p: &AlgebraPresentation, sigma: &GradedEndomorphism, cutoff: u32, s_max: u32) -> Result<AlgebraPresentation> {
    if !check_automorphism(p, sigma, cutoff)? {
        return Err(Error::NotAutomorphism);
    }
    let ring = &p.ring;
    let field = ring.field();
    let sys = build(p, cutoff.max(s_max))?;
    let n = ring.n_gens();

    // powers[k][g] = sigma^k(x_g)
    let mut powers: Vec<Vec<NcPolynomial>> = Vec::new();
    let mut current = GradedEndomorphism::identity(field, n);
    for _ in 0..s_max.max(1) {
        powers.push((0..n).map(|g| current.image_of_generator(ring, g)).collect());
        current = current.compose(sigma)?;
    }

    // images[w] = x_{i1} * x_{i2} * ... evaluated in A, for all words of the current degree.
    let mut images: Vec<(Vec<Letter>, NcPolynomial)> = vec![(Vec::new(), NcPolynomial::one(ring))];
    let mut relations: Vec<NcPolynomial> = Vec::new();
    for s in 1..=s_max {
        let mut next = Vec::with_capacity(images.len() * n);
        for (letters, img) in &images {
            for (g, pg) in powers[(s - 1) as usize].iter().enumerate().take(n) {
                let mut l = letters.clone();
                l.push(g as Letter);
                next.push((l, sys.reduce(&(img * pg))));
            }
        }
        images = next;

        let words = free_words_desc(ring, s);
        let word_index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let normal = sys.normal_words(s)?;
        let normal_index: HashMap<Word, usize> = normal.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

        // Row `i` of the evaluation matrix is the image of free word `words[i]`.
        let mut eval_rows = vec![Vec::new(); words.len()];
        for (letters, img) in &images {
            eval_rows[word_index[&ring.word(letters)]] = coords(img, &normal_index, field);
        }
        let kernel = linalg::left_kernel(field, &eval_rows);
        if kernel.is_empty() {
            continue;
        }

        let fresh = new_relations(ring, &relations, s, &words, &word_index, &kernel);
        relations.extend(fresh);
    }
    AlgebraPresentation::new(format!("{}_twisted", p.name), ring.clone(), relations)
}

/// Minimal new relations in degree `s`: the kernel vectors (over `words`)
/// reduced modulo the degree-`s` part of the ideal generated by `relations`.
pub(crate) fn new_relations(
    ring: &Arc<FreeAlgebra>,
    relations: &[NcPolynomial],
    s: u32,
    words: &[Word],
    word_index: &HashMap<Word, usize>,
    kernel: &[Vector],
) -> Vec<NcPolynomial> {
    let field = ring.field();
    let mut lower = Vec::new();
    for r in relations {
        let dr = r.degree().unwrap_or(0);
        for left_len in 0..=(s - dr) {
            let right_len = s - dr - left_len;
            for a in free_words_of_len(ring, left_len) {
                for b in free_words_of_len(ring, right_len) {
                    lower.push(coords(&r.sandwich(&a, &b), word_index, field));
                }
            }
        }
    }
    let lower_rref = linalg::rref(field, words.len(), &lower);
    let residues: Vec<Vector> = kernel
        .iter()
        .map(|k| {
            let mut v = k.clone();
            for (p, row) in &lower_rref {
                if !v[*p].is_zero() {
                    let c = -&v[*p];
                    linalg::axpy(&mut v, &c, row);
                }
            }
            v
        })
        .collect();
    rows_to_polys(ring, words, linalg::rref(field, words.len(), &residues))
}

fn free_words_of_len(ring: &Arc<FreeAlgebra>, len: u32) -> Vec<Word> {
    free_words_desc(ring, len)
}

/// Spans in each degree of two relation lists agree.
pub fn same_relation_span(a: &[NcPolynomial], b: &[NcPolynomial]) -> bool {
    let Some(ring) = a.first().or(b.first()).map(|p| p.ring().clone()) else {
        return true;
    };
    let field = ring.field();
    let degrees: std::collections::BTreeSet<u32> = a.iter().chain(b).filter_map(NcPolynomial::degree).collect();
    degrees.into_iter().all(|d| {
        let mut words: Vec<Word> =
            a.iter().chain(b).filter(|p| p.degree() == Some(d)).flat_map(|p| p.iter().map(|(w, _)| w.clone())).collect();
        words.sort();
        words.dedup();
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let rows = |v: &[NcPolynomial]| -> Vec<Vector> {
            v.iter().filter(|p| p.degree() == Some(d)).map(|p| coords(p, &index, field)).collect()
        };
        let (ra, rb) = (rows(a), rows(b));
        let rank_a = linalg::rank(field, words.len(), &ra);
        let rank_b = linalg::rank(field, words.len(), &rb);
        let all: Vec<Vector> = ra.into_iter().chain(rb).collect();
        rank_a == rank_b && linalg::rank(field, words.len(), &all) == rank_a
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StandardStatus {
    Standard,
    NotStandard,
    /// The linear system for `Q` has more than one solution.
    Ambiguous,
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct StandardCheckReport {
    pub r: usize,
    pub s: u32,
    /// `m[i][j]` with `f_i = sum_j m[i][j] * x_j`.
    pub m: Vec<Vec<NcPolynomial>>,
    pub q: Option<Matrix>,
    pub is_standard: bool,
    pub status: StandardStatus,
    pub relation_order: Vec<String>,
    pub reason: Option<String>,
}

impl Serialize for StandardCheckReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            r: usize,
            s: u32,
            m: Vec<Vec<String>>,
            q: Option<Vec<Vec<String>>>,
            is_standard: bool,
            status: &'a StandardStatus,
            relation_order: &'a [String],
            reason: &'a Option<String>,
        }
        Repr {
            r: self.r,
            s: self.s,
            m: self.m.iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect(),
            q: self
                .q
                .as_ref()
                .map(|q| (0..q.nrows()).map(|i| q.row(i).iter().map(|c| c.to_string()).collect()).collect()),
            is_standard: self.is_standard,
            status: &self.status,
            relation_order: &self.relation_order,
            reason: &self.reason,
        }
        .serialize(s)
    }
}

/// Solves `(x^t M)^t = Q f` for `Q`, with `M` the right-generator decomposition of the relations.
pub fn standard_check(p: &AlgebraPresentation) -> StandardCheckReport {
    let ring = &p.ring;
    let field = ring.field();
    let r = ring.n_gens();
    let s = p.max_relation_degree();
    let relation_order: Vec<String> = p.relations.iter().map(|f| f.to_string()).collect();
    let not_applicable = |reason: String| StandardCheckReport {
        r,
        s,
        m: Vec::new(),
        q: None,
        is_standard: false,
        status: StandardStatus::NotApplicable,
        relation_order: relation_order.clone(),
        reason: Some(reason),
    };
    if let Err(e) = p.require_unit_weights() {
        return not_applicable(e.to_string());
    }
    if p.relations.len() != r {
        return not_applicable(format!("{} generators but {} relations", r, p.relations.len()));
    }
    if p.relations.iter().any(|f| f.degree() != Some(s)) {
        return not_applicable("relations of mixed degree".into());
    }
    if !matches!((r, s), (2, 3) | (3, 2)) {
        return not_applicable(format!("(r, s) = ({r}, {s}) is neither (2, 3) nor (3, 2)"));
    }

    let weights = ring.weights();
    let m: Vec<Vec<NcPolynomial>> = p
        .relations
        .iter()
        .map(|f| {
            let mut row = vec![NcPolynomial::zero(ring); r];
            for (w, c) in f.iter() {
                let last = *w.letters().last().expect("positive degree") as usize;
                row[last].add_term(w.slice(0, w.len() - 1, weights), c);
            }
            row
        })
        .collect();
    // g_j = sum_i x_i m[i][j]
    let g: Vec<NcPolynomial> = (0..r)
        .map(|j| {
            let mut acc = NcPolynomial::zero(ring);
            for (i, row) in m.iter().enumerate() {
                acc = &acc + &row[j].sandwich(&ring.word(&[i as Letter]), &Word::empty());
            }
            acc
        })
        .collect();

    let mut words: Vec<Word> =
        p.relations.iter().chain(&g).flat_map(|f| f.iter().map(|(w, _)| w.clone())).collect();
    words.sort();
    words.dedup();
    let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let f_rows: Vec<Vector> = p.relations.iter().map(|f| coords(f, &index, field)).collect();

    // Row j of Q solves sum_k Q[j][k] f_k = g_j.
    let f_kernel = linalg::left_kernel(field, &f_rows);
    let mut q = Matrix::zeros(field, r, r);
    for (j, gj) in g.iter().enumerate() {
        let target = coords(gj, &index, field);
        match solve_left(field, &f_rows, &target) {
            Some(sol) => {
                for (k, c) in sol.into_iter().enumerate() {
                    q.set(j, k, c);
                }
            }
            None => {
                return StandardCheckReport {
                    r,
                    s,
                    m,
                    q: None,
                    is_standard: false,
                    status: StandardStatus::NotStandard,
                    relation_order,
                    reason: Some(format!("no Q solves the row for g_{}", j + 1)),
                }
            }
        }
    }
    if !f_kernel.is_empty() {
        return StandardCheckReport {
            r,
            s,
            m,
            q: None,
            is_standard: false,
            status: StandardStatus::Ambiguous,
            relation_order,
            reason: Some("relations are linearly dependent, so Q is not unique".into()),
        };
    }
    let invertible = q.determinant().is_ok_and(|d| !d.is_zero());
    StandardCheckReport {
        r,
        s,
        m,
        q: Some(q),
        is_standard: invertible,
        status: if invertible { StandardStatus::Standard } else { StandardStatus::NotStandard },
        relation_order,
        reason: if invertible { None } else { Some("Q is singular".into()) },
    }
}

/// Some `c` with `sum_k c_k rows_k = target`, if one exists.
fn solve_left(field: FieldKind, rows: &[Vector], target: &[Scalar]) -> Option<Vector> {
    let mut augmented: Vec<Vector> = rows.to_vec();
    augmented.push(target.to_vec());
    let kernel = linalg::left_kernel(field, &augmented);
    let last = rows.len();
    let k = kernel.into_iter().find(|k| !k[last].is_zero())?;
    let scale = (-&k[last]).inv().ok()?;
    Some(k[..last].iter().map(|c| c * &scale).collect())
}

/// Whether `H_A(t) (1 - r t + r t^s - t^{s+1}) = 1` modulo `t^{n+1}`.
pub fn resolution_shape_check(p: &AlgebraPresentation, r: u32, s: u32, n: u32) -> Result<bool> {
    let sys = build(p, n.max(p.max_relation_degree()))?;
    let h: Vec<BigInt> = sys.hilbert_function(n)?.into_iter().map(BigInt::from).collect();
    let mut factor = vec![BigInt::from(0); (s + 2) as usize];
    factor[0] += 1;
    factor[1] -= r;
    factor[s as usize] += r;
    factor[(s + 1) as usize] -= 1;
    Ok((0..=n as usize).all(|d| {
        let c: BigInt = (0..=d).filter(|&i| i < factor.len()).map(|i| &factor[i] * &h[d - i]).sum();
        c == BigInt::from(u32::from(d == 0))
    }))
}
