//! Degree-truncated two-sided Gröbner bases for homogeneous ideals.
//!
//! Completion runs degree by degree. In degree `d` the candidates are the
//! input relations of degree `d` together with the S-polynomials of all
//! overlaps of degree `d`; their normal forms are brought into reduced row
//! echelon form and each pivot becomes a new rule. Since every rule of degree
//! `d` is added in one batch and reduced against the others, the rule set is
//! interreduced at every stage.

mod growth;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg;
use crate::poly::{FreeAlgebra, NcPolynomial};
use crate::word::{Letter, Word};

pub use growth::{gk_estimate, GkEstimate, GrowthReport, GK_RATIO_THRESHOLD, LOW_CONFIDENCE_BAND};

/// `lead -> rhs`: the relation `lead - rhs` oriented towards smaller words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteRule {
    lead: Word,
    rhs: NcPolynomial,
}

impl RewriteRule {
    pub fn lead(&self) -> &Word {
        &self.lead
    }

    pub fn rhs(&self) -> &NcPolynomial {
        &self.rhs
    }

    /// The relation `lead - rhs`.
    pub fn relation(&self) -> NcPolynomial {
        let mut p = self.rhs.neg();
        p.add_term(self.lead.clone(), &Scalar::one(self.rhs.field()));
        p
    }
}

/// An overlap `u = h * s`, `v = s * t` of two rule leads, giving the ambiguity `h*s*t`.
#[derive(Clone, Debug)]
struct Overlap {
    word: Word,
    left: usize,
    right: usize,
    /// Length of the shared segment `s`.
    shared: usize,
}

/// A rewriting system confluent on all words of degree at most `cutoff`.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    ring: Arc<FreeAlgebra>,
    rules: Vec<RewriteRule>,
    cutoff: u32,
    index: HashMap<Vec<Letter>, usize>,
    lead_lengths: Vec<usize>,
}

impl RewriteSystem {
    fn empty(ring: &Arc<FreeAlgebra>, cutoff: u32) -> Self {
        RewriteSystem { ring: ring.clone(), rules: Vec::new(), cutoff, index: HashMap::new(), lead_lengths: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<FreeAlgebra> {
        &self.ring
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    fn push_rule(&mut self, rule: RewriteRule) {
        let len = rule.lead.len();
        self.index.insert(rule.lead.letters().to_vec(), self.rules.len());
        if !self.lead_lengths.contains(&len) {
            self.lead_lengths.push(len);
            self.lead_lengths.sort_unstable();
        }
        self.rules.push(rule);
    }

    /// First rule lead occurring in `letters`, as (position, rule index).
    fn find_lead(&self, letters: &[Letter]) -> Option<(usize, usize)> {
        for start in 0..letters.len() {
            for &len in &self.lead_lengths {
                if start + len > letters.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&letters[start..start + len]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    /// Whether some rule lead is a suffix of `letters`.
    fn has_lead_suffix(&self, letters: &[Letter]) -> bool {
        self.lead_lengths
            .iter()
            .take_while(|&&len| len <= letters.len())
            .any(|&len| self.index.contains_key(&letters[letters.len() - len..]))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_lead(w.letters()).is_none()
    }

    fn check_degree(&self, p: &NcPolynomial) -> Result<()> {
        if !Arc::ptr_eq(p.ring(), &self.ring) && **p.ring() != *self.ring {
            return Err(Error::AlphabetMismatch);
        }
        match p.degree() {
            Some(d) if d > self.cutoff => Err(Error::DegreeExceedsCutoff { degree: d, cutoff: self.cutoff }),
            _ => Ok(()),
        }
    }

    /// Normal form without the cutoff check; confluence is only guaranteed
    /// for degrees up to the cutoff.
    pub(crate) fn reduce(&self, p: &NcPolynomial) -> NcPolynomial {
        if self.rules.is_empty() {
            return p.clone();
        }
        let weights = self.ring.weights();
        let mut work = p.clone();
        let mut out = NcPolynomial::zero(&self.ring);
        while let Some((w, c)) = work.pop_leading() {
            match self.find_lead(w.letters()) {
                None => out.add_term(w, &c),
                Some((pos, r)) => {
                    let rule = &self.rules[r];
                    let prefix = w.slice(0, pos, weights);
                    let suffix = w.slice(pos + rule.lead.len(), w.len(), weights);
                    for (v, a) in rule.rhs.iter() {
                        let nw = prefix.concat(v).concat(&suffix);
                        work.add_term(nw, &(&c * a));
                    }
                }
            }
        }
        out
    }

    /// Normal form of `p`: no term contains a rule lead.
    pub fn normal_form(&self, p: &NcPolynomial) -> Result<NcPolynomial> {
        self.check_degree(p)?;
        Ok(self.reduce(p))
    }

    /// Whether `p` lies in the ideal, decided in degrees up to the cutoff.
    pub fn ideal_member_truncated(&self, p: &NcPolynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Normal words of degree `d`, ascending in the monomial order.
    pub fn normal_words(&self, d: u32) -> Result<Vec<Word>> {
        if d > self.cutoff {
            return Err(Error::DegreeExceedsCutoff { degree: d, cutoff: self.cutoff });
        }
        let weights = self.ring.weights();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.collect_normal(d, weights, &mut stack, &mut out);
        let mut words: Vec<Word> = out.into_iter().map(|l| Word::new(l, weights)).collect();
        if !self.ring.order().is_identity() {
            let ord = self.ring.order().clone();
            words.sort_by(|a, b| ord.compare(a, b));
        }
        Ok(words)
    }

    fn collect_normal(&self, remaining: u32, weights: &[u32], stack: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if remaining == 0 {
            out.push(stack.clone());
            return;
        }
        for (g, &w) in weights.iter().enumerate() {
            if w > remaining {
                continue;
            }
            stack.push(g as Letter);
            if !self.has_lead_suffix(stack) {
                self.collect_normal(remaining - w, weights, stack, out);
            }
            stack.pop();
        }
    }

    /// `dim A_d` for `d = 0..=n`, counted without listing words.
    pub fn hilbert_function(&self, n: u32) -> Result<Vec<u128>> {
        if n > self.cutoff {
            return Err(Error::DegreeExceedsCutoff { degree: n, cutoff: self.cutoff });
        }
        growth::count_normal_words(self, n)
    }

    /// Ambiguities of total degree at most the cutoff that fail to resolve.
    pub fn audit_confluence(&self) -> Vec<(Word, NcPolynomial)> {
        let mut failures = Vec::new();
        for ov in self.all_overlaps(self.cutoff) {
            let s = self.s_polynomial(&ov);
            let nf = self.reduce(&s);
            if !nf.is_zero() {
                failures.push((ov.word, nf));
            }
        }
        failures
    }

    fn overlaps_between(&self, i: usize, j: usize, max_degree: u32) -> Vec<Overlap> {
        let weights = self.ring.weights();
        let u = self.rules[i].lead.letters();
        let v = self.rules[j].lead.letters();
        let mut out = Vec::new();
        for k in 1..u.len().min(v.len()) {
            if u[u.len() - k..] == v[..k] {
                let mut letters = u.to_vec();
                letters.extend_from_slice(&v[k..]);
                let word = Word::new(letters, weights);
                if word.degree() <= max_degree {
                    out.push(Overlap { word, left: i, right: j, shared: k });
                }
            }
        }
        out
    }

    fn all_overlaps(&self, max_degree: u32) -> Vec<Overlap> {
        let mut out = Vec::new();
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                out.extend(self.overlaps_between(i, j, max_degree));
            }
        }
        out
    }

    /// The difference of the two one-step reductions of the overlap word.
    fn s_polynomial(&self, ov: &Overlap) -> NcPolynomial {
        let weights = self.ring.weights();
        let u = &self.rules[ov.left];
        let v = &self.rules[ov.right];
        let h = ov.word.slice(0, u.lead.len() - ov.shared, weights);
        let t = ov.word.slice(u.lead.len(), ov.word.len(), weights);
        let left = u.rhs.sandwich(&Word::empty(), &t);
        let right = v.rhs.sandwich(&h, &Word::empty());
        &left - &right
    }
}

/// Completes `relations` to a system confluent up to degree `cutoff`.
///
/// The monomial order is the one carried by `ring`.
pub fn complete_truncated(ring: &Arc<FreeAlgebra>, relations: &[NcPolynomial], cutoff: u32) -> Result<RewriteSystem> {
    let mut by_degree: BTreeMap<u32, Vec<NcPolynomial>> = BTreeMap::new();
    for r in relations {
        if !Arc::ptr_eq(r.ring(), ring) && **r.ring() != **ring {
            return Err(Error::AlphabetMismatch);
        }
        if r.is_zero() {
            return Err(Error::ZeroRelation);
        }
        if !r.is_homogeneous() {
            return Err(Error::Inhomogeneous(r.to_string()));
        }
        let d = r.degree().unwrap_or(0);
        if d > cutoff {
            return Err(Error::CutoffTooSmall { needed: d, cutoff });
        }
        by_degree.entry(d).or_default().push(r.with_ring(ring));
    }

    let mut sys = RewriteSystem::empty(ring, cutoff);
    let mut pending: BTreeMap<u32, Vec<Overlap>> = BTreeMap::new();
    let order = ring.order().clone();
    for d in 0..=cutoff {
        let mut candidates = by_degree.remove(&d).unwrap_or_default();
        if let Some(mut ovs) = pending.remove(&d) {
            ovs.sort_by(|a, b| order.compare(&a.word, &b.word));
            candidates.extend(ovs.iter().map(|ov| sys.s_polynomial(ov)));
        }
        let reduced: Vec<NcPolynomial> =
            candidates.iter().map(|c| sys.reduce(c)).filter(|c| !c.is_zero()).collect();
        if reduced.is_empty() {
            continue;
        }
        let first_new = sys.rules.len();
        for rule in echelon_rules(ring, &reduced) {
            sys.push_rule(rule);
        }
        // New overlaps: every ordered pair involving at least one new rule.
        for i in first_new..sys.rules.len() {
            for j in 0..=i {
                let mut ovs = sys.overlaps_between(i, j, cutoff);
                if i != j {
                    ovs.extend(sys.overlaps_between(j, i, cutoff));
                }
                for ov in ovs {
                    pending.entry(ov.word.degree()).or_default().push(ov);
                }
            }
        }
    }
    Ok(sys)
}

/// Rules from the reduced row echelon form of same-degree polynomials.
fn echelon_rules(ring: &Arc<FreeAlgebra>, polys: &[NcPolynomial]) -> Vec<RewriteRule> {
    let field = ring.field();
    let order = ring.order();
    let mut words: Vec<Word> = polys.iter().flat_map(|p| p.iter().map(|(w, _)| w.clone())).collect();
    words.sort_by(|a, b| order.compare(b, a));
    words.dedup();
    let col: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rows: Vec<linalg::Vector> = polys
        .iter()
        .map(|p| {
            let mut v = linalg::zero_vector(field, words.len());
            for (w, c) in p.iter() {
                v[col[w]] = c.clone();
            }
            v
        })
        .collect();
    linalg::rref(field, words.len(), &rows)
        .into_iter()
        .map(|(pivot, row)| {
            let mut rhs = NcPolynomial::zero(ring);
            for (k, c) in row.iter().enumerate() {
                if k != pivot && !c.is_zero() {
                    rhs.add_term(words[k].clone(), &-c);
                }
            }
            RewriteRule { lead: words[pivot].clone(), rhs }
        })
        .collect()
}

impl fmt::Display for RewriteSystem {
    /// One `lead -> rhs` line per rule, ascending by lead.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rules: Vec<&RewriteRule> = self.rules.iter().collect();
        let order = self.ring.order();
        rules.sort_by(|a, b| order.compare(&a.lead, &b.lead));
        for r in rules {
            writeln!(f, "{} -> {}", self.ring.render_word(&r.lead), r.rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;

    fn qplane(cutoff: u32) -> (Arc<FreeAlgebra>, RewriteSystem) {
        let r = FreeAlgebra::unit(FieldKind::RationalFunctions, &["x", "y"]);
        let rel = &NcPolynomial::monomial(&r, &[1, 0]) - &NcPolynomial::monomial(&r, &[0, 1]).scale(&Scalar::q());
        let sys = complete_truncated(&r, &[rel], cutoff).unwrap();
        (r, sys)
    }

    fn commutative3(cutoff: u32) -> RewriteSystem {
        let r = FreeAlgebra::unit(FieldKind::Rationals, &["x", "y", "z"]);
        let c = |a: u16, b: u16| &NcPolynomial::monomial(&r, &[a, b]) - &NcPolynomial::monomial(&r, &[b, a]);
        complete_truncated(&r, &[c(0, 1), c(1, 2), c(2, 0)], cutoff).unwrap()
    }

    #[test]
    fn quantum_plane_single_rule() {
        let (_, sys) = qplane(6);
        assert_eq!(sys.rules().len(), 1);
        assert_eq!(sys.to_string(), "y*x -> q*x*y\n");
        assert!(sys.audit_confluence().is_empty());
    }

    #[test]
    fn quantum_plane_normal_forms() {
        let (r, sys) = qplane(6);
        let q = Scalar::q();
        let yx = NcPolynomial::monomial(&r, &[1, 0]);
        assert_eq!(sys.normal_form(&yx).unwrap(), NcPolynomial::monomial(&r, &[0, 1]).scale(&q));
        let xxy = NcPolynomial::monomial(&r, &[0, 0, 1]);
        assert_eq!(sys.normal_form(&xxy).unwrap(), xxy);
        let yxy = NcPolynomial::monomial(&r, &[1, 0, 1]);
        assert_eq!(sys.normal_form(&yxy).unwrap(), NcPolynomial::monomial(&r, &[0, 1, 1]).scale(&q));
        let big = NcPolynomial::monomial(&r, &[0; 7]);
        assert!(matches!(sys.normal_form(&big), Err(Error::DegreeExceedsCutoff { .. })));
    }

    #[test]
    fn quantum_plane_membership() {
        let (r, sys) = qplane(6);
        let q = Scalar::q();
        let m = |l: &[u16]| NcPolynomial::monomial(&r, l);
        assert!(sys.ideal_member_truncated(&(&m(&[1, 0]) - &m(&[0, 1]).scale(&q))).unwrap());
        assert!(!sys.ideal_member_truncated(&(&m(&[0, 1]) - &m(&[1, 0]))).unwrap());
        let q2 = &q * &q;
        assert!(sys.ideal_member_truncated(&(&m(&[1, 1, 0]) - &m(&[0, 1, 1]).scale(&q2))).unwrap());
    }

    #[test]
    fn normal_word_lists() {
        let (r, sys) = qplane(6);
        let w2: Vec<String> = sys.normal_words(2).unwrap().iter().map(|w| r.render_word(w)).collect();
        assert_eq!(w2, ["x^2", "x*y", "y^2"]);
        assert_eq!(sys.normal_words(0).unwrap(), vec![Word::empty()]);
        let free = complete_truncated(&r, &[], 4).unwrap();
        assert_eq!(free.normal_words(3).unwrap().len(), 8);
    }

    #[test]
    fn hilbert_functions() {
        let (r, sys) = qplane(6);
        assert_eq!(sys.hilbert_function(5).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        let free = complete_truncated(&r, &[], 4).unwrap();
        assert_eq!(free.hilbert_function(4).unwrap(), vec![1, 2, 4, 8, 16]);
        let c3 = commutative3(6);
        assert_eq!(c3.rules().len(), 3);
        assert!(c3.audit_confluence().is_empty());
        assert_eq!(c3.hilbert_function(4).unwrap(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn rejects_bad_relations() {
        let r = FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"]);
        let inhom = &NcPolynomial::monomial(&r, &[0, 1]) - &NcPolynomial::monomial(&r, &[0]);
        assert!(matches!(complete_truncated(&r, &[inhom], 4), Err(Error::Inhomogeneous(_))));
        assert!(matches!(complete_truncated(&r, &[NcPolynomial::zero(&r)], 4), Err(Error::ZeroRelation)));
        let cubic = NcPolynomial::monomial(&r, &[0, 0, 0]);
        assert!(matches!(complete_truncated(&r, &[cubic], 2), Err(Error::CutoffTooSmall { needed: 3, cutoff: 2 })));
    }

    #[test]
    fn non_quadratic_completion_adds_rules() {
        // The self-overlap y*y*y of y^2 -> x*y resolves only after adding y*x*y -> x^2*y.
        let r = FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"]);
        let m = |l: &[u16]| NcPolynomial::monomial(&r, l);
        let sys = complete_truncated(&r, &[&m(&[1, 1]) - &m(&[0, 1])], 8).unwrap();
        assert!(sys.rules().len() > 1);
        assert!(sys.audit_confluence().is_empty());
        let dims = sys.hilbert_function(8).unwrap();
        for (d, &n) in dims.iter().enumerate() {
            assert_eq!(n as usize, sys.normal_words(d as u32).unwrap().len());
        }
    }
}
