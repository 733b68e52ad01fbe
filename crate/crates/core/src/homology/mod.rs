//! Graded homological algebra by degreewise linear algebra: minimal
//! resolutions, Hom and Ext dimensions, the Gorenstein condition, χ probes and
//! cohomology of Proj through truncation colimits.
//!
//! Modules are left modules unless stated otherwise. A right module over `A`
//! is handled as a left module over the opposite algebra, whose rewriting
//! system is rebuilt from the reversed rules.

mod resolution;
mod tables;

use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::NcPolynomial;
use crate::rewriting::{complete_truncated, RewriteSystem};
use crate::word::Word;

use resolution::Resolution;
pub use tables::{DegreewiseModule, GradedAlgebra};

/// Default homological bound used when a caller gives none.
pub const DEFAULT_P_MAX: usize = 6;

/// Length of the run of equal values that counts as a stabilized colimit.
pub const PLATEAU_LENGTH: u32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
enum ModuleSpec {
    Free(Vec<i64>),
    Trivial,
    Truncation(i64),
    Quotient(i64),
    Cokernel(Vec<i64>, Vec<Vec<NcPolynomial>>),
}

/// A finitely presented graded module over the algebra of `ambient`.
#[derive(Clone, Debug)]
pub struct GradedModulePresentation {
    side: Side,
    spec: ModuleSpec,
    ambient: Arc<RewriteSystem>,
}

impl GradedModulePresentation {
    fn new(ambient: &RewriteSystem, spec: ModuleSpec) -> Self {
        GradedModulePresentation { side: Side::Left, spec, ambient: Arc::new(ambient.clone()) }
    }

    /// `A(-l_1) + ... + A(-l_m)`.
    pub fn free(ambient: &RewriteSystem, shifts: Vec<i64>) -> Self {
        Self::new(ambient, ModuleSpec::Free(shifts))
    }

    /// The trivial module `k = A / A_+`.
    pub fn trivial(ambient: &RewriteSystem) -> Self {
        Self::new(ambient, ModuleSpec::Trivial)
    }

    /// `A_{>= n}`, generated by the normal words of degree `n`.
    pub fn truncation(ambient: &RewriteSystem, n: i64) -> Self {
        Self::new(ambient, ModuleSpec::Truncation(n))
    }

    /// `A / A_{>= n}`.
    pub fn quotient(ambient: &RewriteSystem, n: i64) -> Self {
        Self::new(ambient, ModuleSpec::Quotient(n))
    }

    /// Cokernel of the row map into `A(-l_1) + ... + A(-l_m)`.
    pub fn cokernel(ambient: &RewriteSystem, shifts: Vec<i64>, rows: Vec<Vec<NcPolynomial>>) -> Self {
        Self::new(ambient, ModuleSpec::Cokernel(shifts, rows))
    }

    /// The same presentation read as a right module.
    pub fn on_right(mut self) -> Self {
        self.side = Side::Right;
        self
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn ambient(&self) -> &Arc<RewriteSystem> {
        &self.ambient
    }

    /// Free cover shifts; synthesized from normal words for the truncations.
    pub fn shifts(&self) -> Vec<i64> {
        match &self.spec {
            ModuleSpec::Free(s) | ModuleSpec::Cokernel(s, _) => s.clone(),
            ModuleSpec::Trivial | ModuleSpec::Quotient(_) => vec![0],
            ModuleSpec::Truncation(n) => {
                let count = if *n <= self.ambient.cutoff() as i64 {
                    self.ambient.normal_words((*n).max(0) as u32).map(|w| w.len()).unwrap_or(0)
                } else {
                    0
                };
                vec![(*n).max(0); count]
            }
        }
    }

    /// Relation rows; for truncations these are synthesized from normal words.
    pub fn relation_rows(&self) -> Vec<Vec<NcPolynomial>> {
        let ring = self.ambient.ring();
        match &self.spec {
            ModuleSpec::Free(_) => Vec::new(),
            ModuleSpec::Cokernel(_, rows) => rows.clone(),
            ModuleSpec::Trivial => (0..ring.n_gens()).map(|g| vec![NcPolynomial::generator(ring, g as u16)]).collect(),
            ModuleSpec::Quotient(n) => self
                .ambient
                .normal_words((*n).max(0) as u32)
                .unwrap_or_default()
                .iter()
                .map(|w| vec![NcPolynomial::monomial(ring, w.letters())])
                .collect(),
            ModuleSpec::Truncation(_) => Vec::new(),
        }
    }

    fn algebra(&self, top: u32) -> Result<GradedAlgebra> {
        match self.side {
            Side::Left => GradedAlgebra::new(&self.ambient, top),
            Side::Right => GradedAlgebra::new(&Arc::new(opposite(&self.ambient)?), top),
        }
    }

    fn materialize(&self, alg: &GradedAlgebra) -> Result<DegreewiseModule> {
        Ok(match &self.spec {
            ModuleSpec::Free(shifts) if shifts.len() == 1 => DegreewiseModule::free(alg, shifts[0]),
            ModuleSpec::Free(shifts) => DegreewiseModule::cokernel(alg, shifts, &[])?,
            ModuleSpec::Trivial => DegreewiseModule::trivial(alg),
            ModuleSpec::Truncation(n) => DegreewiseModule::truncation(alg, *n),
            ModuleSpec::Quotient(n) => DegreewiseModule::quotient(alg, *n),
            ModuleSpec::Cokernel(shifts, rows) => {
                let rows = if self.side == Side::Right {
                    let ring = alg.ring().clone();
                    rows.iter().map(|r| r.iter().map(|p| reversed(p).with_ring(&ring)).collect()).collect()
                } else {
                    rows.clone()
                };
                DegreewiseModule::cokernel(alg, shifts, &rows)?
            }
        })
    }

    /// `dim M_t` for `t` in `range`.
    pub fn dims(&self, range: RangeInclusive<i64>) -> Result<Vec<usize>> {
        let alg = self.algebra(self.ambient.cutoff())?;
        let m = self.materialize(&alg)?;
        range
            .map(|t| {
                if t > m.hi() {
                    Err(Error::DegreeExceedsCutoff { degree: t as u32, cutoff: m.hi().max(0) as u32 })
                } else {
                    Ok(m.dim(t))
                }
            })
            .collect()
    }
}

fn reversed(p: &NcPolynomial) -> NcPolynomial {
    let ring = p.ring();
    let mut out = NcPolynomial::zero(ring);
    for (w, c) in p.iter() {
        let mut l = w.letters().to_vec();
        l.reverse();
        out.add_term(Word::new(l, ring.weights()), c);
    }
    out
}

/// Rewriting system of the opposite algebra, to the same cutoff.
pub fn opposite(sys: &RewriteSystem) -> Result<RewriteSystem> {
    let rels: Vec<NcPolynomial> = sys.rules().iter().map(|r| reversed(&r.relation())).collect();
    complete_truncated(sys.ring(), &rels, sys.cutoff())
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationBounds {
    pub p_max: usize,
    pub n: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    /// Internal shifts of the generators in each homological degree.
    pub betti: Vec<Vec<i64>>,
    pub truncated_at: TruncationBounds,
    pub minimal: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GlobalDimension {
    Finite(usize),
    AtLeast(usize),
}

impl Serialize for GlobalDimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GlobalDimension::Finite(d) => s.serialize_u64(*d as u64),
            GlobalDimension::AtLeast(p) => s.collect_str(&format_args!("AT_LEAST({p})")),
        }
    }
}

fn k_resolution(alg: &GradedAlgebra, p_max: usize, t_max: i64) -> Result<Resolution> {
    Resolution::compute(alg, &DegreewiseModule::trivial(alg), p_max, t_max)
}

fn check_bound(sys: &RewriteSystem, n: u32) -> Result<()> {
    if n > sys.cutoff() {
        return Err(Error::CutoffTooSmall { needed: n, cutoff: sys.cutoff() });
    }
    Ok(())
}

/// Minimal resolution of the trivial left module through `P_{p_max}`, in internal degrees up to `n`.
pub fn minimal_resolution(sys: &RewriteSystem, p_max: usize, n: u32) -> Result<ResolutionReport> {
    check_bound(sys, n)?;
    let alg = GradedAlgebra::new(&Arc::new(sys.clone()), n)?;
    let res = k_resolution(&alg, p_max, n as i64)?;
    let mut betti = res.betti();
    while betti.len() > 1 && betti.last().is_some_and(Vec::is_empty) {
        betti.pop();
    }
    Ok(ResolutionReport { betti, truncated_at: TruncationBounds { p_max, n }, minimal: res.is_minimal(&alg) })
}

fn global_dimension_of(res: &Resolution, p_max: usize) -> GlobalDimension {
    match res.levels.iter().position(|l| l.gens.is_empty()) {
        Some(0) => GlobalDimension::Finite(0),
        Some(s) if s <= p_max + 1 => GlobalDimension::Finite(s - 1),
        _ => GlobalDimension::AtLeast(p_max),
    }
}

/// Length of the minimal resolution of `k`, or a lower bound when it does not stop by `p_max`.
pub fn global_dimension(sys: &RewriteSystem, p_max: usize, n: u32) -> Result<GlobalDimension> {
    check_bound(sys, n)?;
    let alg = GradedAlgebra::new(&Arc::new(sys.clone()), n)?;
    let res = k_resolution(&alg, p_max + 1, n as i64)?;
    Ok(global_dimension_of(&res, p_max))
}

/// Graded pieces of one `Ext^i`, keyed by internal degree.
#[derive(Clone, Debug, Serialize)]
pub struct ExtTable {
    pub i: usize,
    /// `(t, dim)` pairs with `t = -d` for the twist `A[d]`.
    pub dims: Vec<(i64, usize)>,
}

impl ExtTable {
    pub fn total(&self) -> usize {
        self.dims.iter().map(|(_, d)| d).sum()
    }

    /// Degrees carrying a nonzero piece.
    pub fn support(&self) -> Vec<i64> {
        self.dims.iter().filter(|(_, d)| *d > 0).map(|(t, _)| *t).collect()
    }
}

/// Resolution bound and twist window used for `Ext(k, A)` at cutoff `n`.
fn ext_window(n: u32) -> (i64, RangeInclusive<i64>) {
    let t = (n / 2) as i64;
    (t, -t..=(n as i64 - t))
}

fn ext_tables(alg: &GradedAlgebra, res: &Resolution, upto: usize, n: u32) -> Result<Vec<ExtTable>> {
    let a = DegreewiseModule::free(alg, 0);
    let (_, window) = ext_window(n);
    (0..=upto)
        .map(|i| {
            let mut dims = Vec::new();
            for d in window.clone() {
                dims.push((-d, res.ext_dim(alg, &a, i, d)?));
            }
            dims.sort();
            Ok(ExtTable { i, dims })
        })
        .collect()
}

/// `Ext^i_A(k, A)` by internal degree, over the window allowed by cutoff `n`.
pub fn ext_k_a(sys: &RewriteSystem, i: usize, n: u32) -> Result<ExtTable> {
    check_bound(sys, n)?;
    if n < 2 {
        return Err(Error::Precondition("empty degree window: cutoff must be at least 2".into()));
    }
    let alg = GradedAlgebra::new(&Arc::new(sys.clone()), n)?;
    let (t, _) = ext_window(n);
    let res = k_resolution(&alg, i + 1, t)?;
    Ok(ext_tables(&alg, &res, i, n)?.pop().expect("one table per degree"))
}

#[derive(Clone, Debug, Serialize)]
pub struct GorensteinReport {
    pub passes: bool,
    pub global_dimension: GlobalDimension,
    pub ext: Vec<ExtTable>,
    pub cutoff: u32,
    pub p_max: usize,
}

/// Whether `Ext^i(k, A)` vanishes for `i != d` and is one-dimensional for `i = d`.
pub fn gorenstein_check(sys: &RewriteSystem, n: u32) -> Result<GorensteinReport> {
    gorenstein_check_with(sys, n, DEFAULT_P_MAX)
}

pub fn gorenstein_check_with(sys: &RewriteSystem, n: u32, p_max: usize) -> Result<GorensteinReport> {
    check_bound(sys, n)?;
    if n < 2 {
        return Err(Error::Precondition("empty degree window: cutoff must be at least 2".into()));
    }
    let alg = GradedAlgebra::new(&Arc::new(sys.clone()), n)?;
    let (t, _) = ext_window(n);
    let res = k_resolution(&alg, p_max + 1, t)?;
    let gd = global_dimension_of(&res, p_max);
    let (ext, passes) = match gd {
        GlobalDimension::Finite(d) => {
            let ext = ext_tables(&alg, &res, d, n)?;
            let ok = ext.iter().all(|e| if e.i == d { e.total() == 1 } else { e.total() == 0 });
            (ext, ok)
        }
        GlobalDimension::AtLeast(_) => (ext_tables(&alg, &res, p_max.min(2), n)?, false),
    };
    Ok(GorensteinReport { passes, global_dimension: gd, ext, cutoff: n, p_max })
}

fn same_ambient(a: &GradedModulePresentation, b: &GradedModulePresentation) -> Result<()> {
    if a.side != b.side {
        return Err(Error::InvalidModule("modules on different sides".into()));
    }
    if a.ambient.ring() != b.ambient.ring() || a.ambient.rules() != b.ambient.rules() {
        return Err(Error::InvalidModule("modules over different algebras".into()));
    }
    Ok(())
}

/// `dim Ext^s_Gr(N, M[d])`, exact when the minimal resolution of `N` has no
/// generators above the largest internal degree the cutoff allows.
pub fn ext_dim(n_mod: &GradedModulePresentation, m_mod: &GradedModulePresentation, s: usize, d: i64) -> Result<usize> {
    same_ambient(n_mod, m_mod)?;
    let alg = n_mod.algebra(n_mod.ambient.cutoff())?;
    let n = n_mod.materialize(&alg)?;
    let m = m_mod.materialize(&alg)?;
    let t_max = n.hi().min(alg.top() as i64 + n.lo()).min(m.hi() - d);
    if t_max < n.lo() {
        return Err(Error::CutoffTooSmall { needed: (n.lo() + d).max(0) as u32, cutoff: m.hi().max(0) as u32 });
    }
    let res = Resolution::compute(&alg, &n, s + 1, t_max)?;
    res.ext_dim(&alg, &m, s, d)
}

/// `dim Hom_Gr(M, P[d])`.
pub fn graded_hom_dim(m: &GradedModulePresentation, p: &GradedModulePresentation, d: i64) -> Result<usize> {
    ext_dim(m, p, 0, d)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiEntry {
    pub j: usize,
    pub d: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiProbeReport {
    pub j_max: usize,
    pub window: (i64, i64),
    pub per_degree_dims: Vec<ChiEntry>,
    pub right_bounded_up_to_cutoff: bool,
}

/// Dimensions of `Ext^j(A/A_+, M)_d` for `j <= j_max` over the twist window of cutoff `n`.
pub fn chi_probe(sys: &RewriteSystem, m_mod: &GradedModulePresentation, j_max: usize, n: u32) -> Result<ChiProbeReport> {
    check_bound(sys, n)?;
    let k = GradedModulePresentation::trivial(sys);
    let k = GradedModulePresentation { side: m_mod.side, ..k };
    same_ambient(&k, m_mod)?;
    let alg = k.algebra(n)?;
    let m = m_mod.materialize(&alg)?;
    let (t, _) = ext_window(n);
    let res = Resolution::compute(&alg, &DegreewiseModule::trivial(&alg), j_max + 1, t)?;
    let lo = -t;
    let hi = m.hi() - t;
    if hi < lo {
        return Err(Error::Precondition("empty degree window".into()));
    }
    let mut entries = Vec::new();
    for j in 0..=j_max {
        for d in lo..=hi {
            entries.push(ChiEntry { j, d, dim: res.ext_dim(&alg, &m, j, d)? });
        }
    }
    let threshold = lo + 3 * (hi - lo + 1) / 4;
    let right_bounded = entries.iter().all(|e| e.d < threshold || e.dim == 0);
    Ok(ChiProbeReport { j_max, window: (lo, hi), per_degree_dims: entries, right_bounded_up_to_cutoff: right_bounded })
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub j: u32,
    pub d: i64,
    /// `None` when no plateau of the required length appears.
    pub stabilized_dim: Option<usize>,
    pub stabilization_n: Option<u32>,
    /// Values for truncation indices `1..=n_max`.
    pub values: Vec<usize>,
    pub n_max: u32,
}

impl CohomologyReport {
    pub fn is_unstable(&self) -> bool {
        self.stabilized_dim.is_none()
    }
}

impl Serialize for CohomologyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CohomologyReport", 6)?;
        st.serialize_field("d", &self.d)?;
        match self.stabilized_dim {
            Some(v) => st.serialize_field("dim", &v)?,
            None => st.serialize_field("dim", "UNSTABLE")?,
        }
        st.serialize_field("j", &self.j)?;
        st.serialize_field("n_max", &self.n_max)?;
        st.serialize_field("stabilized_at", &self.stabilization_n)?;
        st.serialize_field("values", &self.values)?;
        st.end()
    }
}

/// Smallest `n0` with `values` constant on `[n0, n_max]` over at least `PLATEAU_LENGTH` indices.
fn plateau(values: &[usize]) -> Option<(usize, u32)> {
    let last = *values.last()?;
    let mut start = values.len();
    while start > 0 && values[start - 1] == last {
        start -= 1;
    }
    if (values.len() - start) as u32 >= PLATEAU_LENGTH {
        Some((last, start as u32 + 1))
    } else {
        None
    }
}

fn cohomology_cell(
    alg: &GradedAlgebra,
    m: &DegreewiseModule,
    j: u32,
    d: i64,
    n_max: u32,
    t_max: i64,
) -> Result<CohomologyReport> {
    let mut values = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max as i64 {
        let v = if j == 0 {
            let trunc = DegreewiseModule::truncation(alg, n);
            Resolution::compute(alg, &trunc, 1, t_max)?.ext_dim(alg, m, 0, d)?
        } else {
            let quot = DegreewiseModule::quotient(alg, n);
            Resolution::compute(alg, &quot, j as usize + 2, t_max)?.ext_dim(alg, m, j as usize + 1, d)?
        };
        values.push(v);
    }
    let p = plateau(&values);
    Ok(CohomologyReport { j, d, stabilized_dim: p.map(|x| x.0), stabilization_n: p.map(|x| x.1), values, n_max })
}

fn cohomology_setup(sys: &RewriteSystem, m_mod: &GradedModulePresentation, j: u32, d: i64, n_max: u32) -> Result<(GradedAlgebra, DegreewiseModule, i64)> {
    let alg = m_mod.algebra(sys.cutoff())?;
    let m = m_mod.materialize(&alg)?;
    let t_max = (m.hi() - d.max(0)).min(alg.top() as i64);
    let needed = n_max as i64 + j as i64 + 2;
    if t_max < needed {
        return Err(Error::CutoffTooSmall {
            needed: (needed + d.max(0)) as u32,
            cutoff: sys.cutoff(),
        });
    }
    Ok((alg, m, t_max))
}

/// `H^j(M)` in twist `d` as the stabilized value over truncations `R_{>= n}`, `n <= n_max`.
///
/// For `j = 0` this is `Hom(R_{>= n}, M[d])`; for `j >= 1` it is
/// `Ext^{j+1}(R / R_{>= n}, M[d])`.
pub fn proj_cohomology(sys: &RewriteSystem, m_mod: &GradedModulePresentation, j: u32, d: i64, n_max: u32) -> Result<CohomologyReport> {
    let (alg, m, t_max) = cohomology_setup(sys, m_mod, j, d, n_max)?;
    cohomology_cell(&alg, &m, j, d, n_max, t_max)
}

/// Largest `j <= j_max` with a nonzero stabilized `H^j(R[d])` for some `d` in `d_range`.
pub fn cd_estimate(sys: &RewriteSystem, j_max: u32, d_range: RangeInclusive<i64>, n_max: u32) -> Result<u32> {
    let r = GradedModulePresentation::free(sys, vec![0]);
    let mut cd = 0;
    for j in 0..=j_max {
        for d in d_range.clone() {
            let rep = proj_cohomology(sys, &r, j, d, n_max)?;
            match rep.stabilized_dim {
                None => return Err(Error::Unstable { j, d, n_max }),
                Some(v) if v > 0 => cd = cd.max(j),
                _ => {}
            }
        }
    }
    Ok(cd)
}
