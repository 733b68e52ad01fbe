//! Dispatch from parsed commands to the library, producing JSON reports.

use std::fs;

use ncproj::coord_rings::{self, P1Automorphism, Section, TwoPointTriple};
use ncproj::endo::GradedEndomorphism;
use ncproj::field::FieldKind;
use ncproj::heart::{self, Charge, SheafClass, Theta};
use ncproj::homology::{self, GradedModulePresentation};
use ncproj::linalg::Matrix;
use ncproj::presentation::{self, AlgebraPresentation};
use ncproj::real_mult::{self, SL2Matrix, ThetaLabel};
use ncproj::rewriting::gk_estimate;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::{AlgebraCmd, GammaCmd, Group, HeartCmd, Label, ProjCmd, RmCmd, Source, ThcrCmd};
use crate::dsl::{parse_presentation, Diagnostic};
use crate::literals;

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input; `origin` names the flag or file it came from.
    Parse { origin: String, diagnostic: Diagnostic },
    /// Well-formed input that the computation rejects.
    Domain(String),
}

type Run<T> = Result<T, Failure>;

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn parsed<T>(origin: &str, r: Result<T, Diagnostic>) -> Run<T> {
    r.map_err(|diagnostic| Failure::Parse { origin: origin.to_string(), diagnostic })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize to JSON")
}

/// A finished report: the command path, every input and cutoff used, and the result.
#[derive(Debug, Serialize)]
pub struct Output {
    pub command: String,
    pub parameters: Value,
    pub report: Value,
}

fn load(source: &Source) -> Run<AlgebraPresentation> {
    match (&source.file, &source.dsl) {
        (Some(path), _) => {
            let origin = path.display().to_string();
            let text = fs::read_to_string(path).map_err(|e| Failure::Parse {
                origin: origin.clone(),
                diagnostic: Diagnostic::error(format!("cannot read file: {e}"), None),
            })?;
            parsed(&origin, parse_presentation(&text))
        }
        (None, Some(text)) => parsed("--dsl", parse_presentation(text)),
        (None, None) => unreachable!("clap requires one input source"),
    }
}

pub fn run(group: &Group) -> Run<Output> {
    match group {
        Group::Algebra(c) => algebra(c),
        Group::Proj(c) => proj(c),
        Group::Thcr(c) => thcr(c),
        Group::Gamma(c) => gamma(c),
        Group::Heart(c) => heart_cmd(c),
        Group::Rm(c) => rm(c),
    }
}

fn out(command: &str, parameters: Value, report: Value) -> Run<Output> {
    Ok(Output { command: command.to_string(), parameters, report })
}

fn algebra(cmd: &AlgebraCmd) -> Run<Output> {
    match cmd {
        AlgebraCmd::Hilbert { source, n } => {
            let p = load(source)?;
            let sys = presentation::build(&p, *n).map_err(domain)?;
            let dims = sys.hilbert_function(*n).map_err(domain)?;
            let rules: Vec<String> = sys.to_string().lines().map(str::to_string).collect();
            out(
                "algebra hilbert",
                json!({ "algebra": p.to_dsl(), "N": n }),
                json!({ "dims": dims, "rules": rules, "confluent_to_cutoff": sys.audit_confluence().is_empty() }),
            )
        }
        AlgebraCmd::Gk { source, n } => {
            let p = load(source)?;
            let sys = presentation::build(&p, *n).map_err(domain)?;
            let rep = gk_estimate(&sys).map_err(domain)?;
            out("algebra gk", json!({ "algebra": p.to_dsl(), "N": n }), to_value(&rep))
        }
        AlgebraCmd::Twist { source, sigma, n, s_max } => {
            let p = load(source)?;
            let field = p.field();
            let rows = parsed("--sigma", literals::parse_scalar_matrix(sigma, Some(field)))?;
            let m = Matrix::from_rows(field, rows).map_err(domain)?;
            let sigma_map = GradedEndomorphism::new(m).map_err(domain)?;
            let s_max = s_max.unwrap_or(p.max_relation_degree() + 1);
            let tw = presentation::twist(&p, &sigma_map, *n, s_max).map_err(domain)?;
            let h = presentation::build(&tw, *n).and_then(|s| s.hilbert_function(*n)).map_err(domain)?;
            let h0 = presentation::build(&p, *n).and_then(|s| s.hilbert_function(*n)).map_err(domain)?;
            out(
                "algebra twist",
                json!({ "algebra": p.to_dsl(), "sigma": sigma, "N": n, "s_max": s_max }),
                json!({
                    "presentation": to_value(&tw),
                    "dims": h,
                    "original_dims": h0,
                    "same_hilbert_function": h == h0,
                }),
            )
        }
        AlgebraCmd::Gorenstein { source, n, p_max } => {
            let p = load(source)?;
            let sys = presentation::build(&p, *n).map_err(domain)?;
            let rep = homology::gorenstein_check_with(&sys, *n, *p_max).map_err(domain)?;
            let res = homology::minimal_resolution(&sys, *p_max, *n).map_err(domain)?;
            let mut v = to_value(&rep);
            v["betti"] = to_value(&res.betti);
            v["minimal"] = Value::Bool(res.minimal);
            out("algebra gorenstein", json!({ "algebra": p.to_dsl(), "N": n, "p_max": p_max }), v)
        }
        AlgebraCmd::StandardCheck { source } => {
            let p = load(source)?;
            out("algebra standard-check", json!({ "algebra": p.to_dsl() }), to_value(&presentation::standard_check(&p)))
        }
        AlgebraCmd::ResolutionCheck { source, r, s, n } => {
            let p = load(source)?;
            let holds = presentation::resolution_shape_check(&p, *r, *s, *n).map_err(domain)?;
            out(
                "algebra resolution-check",
                json!({ "algebra": p.to_dsl(), "r": r, "s": s, "N": n }),
                json!({ "holds": holds }),
            )
        }
    }
}

fn proj(cmd: &ProjCmd) -> Run<Output> {
    match cmd {
        ProjCmd::Cohomology { source, j, d, generator_degree, n_max, n } => {
            let p = load(source)?;
            let needed = n_max + j + 2 + d.max(&0).unsigned_abs() as u32 + generator_degree.unsigned_abs() as u32;
            let cutoff = n.unwrap_or(needed.max(p.max_relation_degree()));
            let sys = presentation::build(&p, cutoff).map_err(domain)?;
            let m = GradedModulePresentation::free(&sys, vec![*generator_degree]);
            let rep = homology::proj_cohomology(&sys, &m, *j, *d, *n_max).map_err(domain)?;
            out(
                "proj cohomology",
                json!({ "algebra": p.to_dsl(), "j": j, "d": d, "generator_degree": generator_degree, "n_max": n_max, "N": cutoff }),
                to_value(&rep),
            )
        }
        ProjCmd::Cd { source, j_max, d_min, d_max, n_max, n } => {
            if d_min > d_max {
                return Err(Failure::Parse {
                    origin: "--d-min".into(),
                    diagnostic: Diagnostic::error("--d-min must not exceed --d-max", None),
                });
            }
            let p = load(source)?;
            let needed = n_max + j_max + 2 + d_max.max(&0).unsigned_abs() as u32;
            let cutoff = n.unwrap_or(needed.max(p.max_relation_degree()));
            let sys = presentation::build(&p, cutoff).map_err(domain)?;
            let cd = homology::cd_estimate(&sys, *j_max, *d_min..=*d_max, *n_max).map_err(domain)?;
            let gl = homology::global_dimension(&sys, homology::DEFAULT_P_MAX, cutoff).map_err(domain)?;
            out(
                "proj cd",
                json!({ "algebra": p.to_dsl(), "j_max": j_max, "d_range": [d_min, d_max], "n_max": n_max, "N": cutoff, "p_max": homology::DEFAULT_P_MAX }),
                json!({ "cd": cd, "global_dimension": to_value(&gl) }),
            )
        }
    }
}

fn sigma_of(text: &str) -> Run<P1Automorphism> {
    let [a, b, c, d] = parsed("--sigma", literals::parse_sigma(text))?;
    P1Automorphism::new(a, b, c, d).map_err(domain)
}

fn sigma_entries(s: &P1Automorphism) -> Vec<String> {
    s.entries().iter().map(|e| e.to_string()).collect()
}

fn section_of(flag: &str, text: &str, field: FieldKind, k: u32) -> Run<Section> {
    let (level, coeffs) = parsed(flag, literals::parse_section(text, field))?;
    Section::new(level, k, coeffs).map_err(domain)
}

fn thcr(cmd: &ThcrCmd) -> Run<Output> {
    match cmd {
        ThcrCmd::Present { sigma, dmax, degree } => {
            let s = sigma_of(sigma)?;
            let p = coord_rings::thcr_presentation_with_degree(&s, *degree, *dmax).map_err(domain)?;
            let dims = presentation::build(&p, *dmax).and_then(|sys| sys.hilbert_function(*dmax)).map_err(domain)?;
            out(
                "thcr present",
                json!({ "sigma": sigma_entries(&s), "dmax": dmax, "degree": degree }),
                json!({ "presentation": to_value(&p), "relations": to_value(&p.relations().iter().map(|r| r.to_string()).collect::<Vec<_>>()), "dims": dims }),
            )
        }
        ThcrCmd::Multiply { sigma, f, g, degree } => {
            let s = sigma_of(sigma)?;
            let a = section_of("--f", f, s.field(), *degree)?;
            let b = section_of("--g", g, s.field(), *degree)?;
            let prod = coord_rings::thcr_multiply(&a, &b, &s).map_err(domain)?;
            out(
                "thcr multiply",
                json!({ "sigma": sigma_entries(&s), "f": a.to_string(), "g": b.to_string(), "degree": degree }),
                json!({ "level": prod.level(), "product": prod.to_string(), "coefficients": to_value(&prod.coeffs()) }),
            )
        }
    }
}

fn gamma(cmd: &GammaCmd) -> Run<Output> {
    let GammaCmd::TwoPoint { r1, r2, n } = cmd;
    let t = TwoPointTriple::new(*r1, *r2).map_err(domain)?;
    out(
        "gamma two-point",
        json!({ "r1": r1, "r2": r2, "n": n }),
        json!({ "dims": coord_rings::two_point_hilbert(t, *n) }),
    )
}

fn class_of(flag: &str, text: &str) -> Run<SheafClass> {
    if text.trim_start().starts_with('[') || text.trim() == "EMPTY" {
        parsed(flag, literals::parse_class(text))
    } else {
        Ok(SheafClass::from_charges([parsed(flag, literals::parse_charge(text))?]))
    }
}

fn theta_of(text: &str) -> Run<Theta> {
    parsed("--theta", literals::parse_theta(text))
}

fn single_charge(c: &SheafClass) -> Option<Charge> {
    let mut it = c.factors();
    match (it.next(), it.next()) {
        (Some((z, 1)), None) => Some(z),
        _ => None,
    }
}

fn heart_cmd(cmd: &HeartCmd) -> Run<Output> {
    match cmd {
        HeartCmd::Hn { class } => {
            let c = class_of("--class", class)?;
            let f = heart::hn(&c);
            out(
                "heart hn",
                json!({ "class": c.to_string() }),
                json!({ "layers": to_value(&f.layers), "mu_min": to_value(&f.mu_min()), "mu_max": to_value(&f.mu_max()) }),
            )
        }
        HeartCmd::Split { class, theta } => {
            let c = class_of("--class", class)?;
            let th = theta_of(theta)?;
            let (t, q) = heart::torsion_split(&c, &th);
            out(
                "heart split",
                json!({ "class": c.to_string(), "theta": th.to_string() }),
                json!({ "torsion": to_value(&t), "torsion_free": to_value(&q) }),
            )
        }
        HeartCmd::Hom { f, g } => {
            let a = class_of("--f", f)?;
            let b = class_of("--g", g)?;
            let mut report = json!({ "vanishing": to_value(&heart::hom_vanishes(&a, &b)) });
            if let (Some(z1), Some(z2)) = (single_charge(&a), single_charge(&b)) {
                if heart::stable_p(z1) && heart::stable_p(z2) {
                    let (hom, ext1) = heart::hom_dim_stable(z1, z2).map_err(domain)?;
                    report["hom"] = json!(hom);
                    report["ext1"] = json!(ext1);
                    report["chi"] = json!(heart::euler_pairing(z1, z2));
                }
            }
            out("heart hom", json!({ "f": a.to_string(), "g": b.to_string() }), report)
        }
        HeartCmd::Euler { z1, z2 } => {
            let a = parsed("--z1", literals::parse_charge(z1))?;
            let b = parsed("--z2", literals::parse_charge(z2))?;
            out(
                "heart euler",
                json!({ "z1": a.to_string(), "z2": b.to_string() }),
                json!({ "chi": heart::euler_pairing(a, b) }),
            )
        }
    }
}

fn quadratic(th: &Theta) -> Run<&ncproj::field::QuadraticFieldElement> {
    match th {
        Theta::Quadratic(x) => Ok(x),
        Theta::Rational(_) => Err(domain(ncproj::error::Error::RationalInput)),
    }
}

fn rm(cmd: &RmCmd) -> Run<Output> {
    match cmd {
        RmCmd::Reduce { theta } => {
            let th = theta_of(theta)?;
            let (reduced, word) = real_mult::morita_reduce(&th).map_err(domain)?;
            out(
                "rm reduce",
                json!({ "theta": th.to_string() }),
                json!({ "reduced": to_value(&reduced), "word": to_value(&word) }),
            )
        }
        RmCmd::Cf { theta, max_terms } => {
            let th = theta_of(theta)?;
            let x = quadratic(&th)?;
            let window = max_terms.unwrap_or_else(|| real_mult::default_window(x));
            let cf = real_mult::cf_expand(x, window).map_err(domain)?;
            out("rm cf", json!({ "theta": th.to_string(), "max_terms": window }), to_value(&cf))
        }
        RmCmd::Fix { theta } => {
            let th = theta_of(theta)?;
            let g = real_mult::fixing_matrix(&th).map_err(domain)?;
            out(
                "rm fix",
                json!({ "theta": th.to_string() }),
                json!({ "matrix": to_value(&g), "trace": g.trace().to_string() }),
            )
        }
        RmCmd::Hilbert { theta, f, g, n_max, label } => {
            let given = theta_of(theta)?;
            let (th, tag) = match label {
                Label::AsGiven => (given.clone(), ThetaLabel::AsGiven),
                Label::MoritaReduced => (real_mult::morita_reduce(&given).map_err(domain)?.0, ThetaLabel::MoritaReduced),
                Label::MinusInverse => (real_mult::minus_inverse(&given).map_err(domain)?, ThetaLabel::MinusInverse),
            };
            let fm: SL2Matrix = match f {
                Some(text) => parsed("--f", literals::parse_sl2(text))?,
                None => real_mult::fixing_matrix(&th).map_err(domain)?,
            };
            let gz = parsed("--g", literals::parse_charge(g))?;
            let rep = real_mult::rm_hilbert(&fm, gz, &th, *n_max).map_err(domain)?.with_label(tag);
            out(
                "rm hilbert",
                json!({ "theta": given.to_string(), "F": to_value(&fm), "G": gz.to_string(), "n_max": n_max, "label": to_value(&tag) }),
                to_value(&rep),
            )
        }
    }
}
