//! Command-line literals: θ values, matrices, charges, sheaf classes and sections.

use ncproj::field::{FieldKind, Scalar};
use ncproj::heart::{Charge, SheafClass, Theta};
use ncproj::real_mult::SL2Matrix;
use num_bigint::BigInt;

use crate::dsl::{infer_field, parse_scalar, Diagnostic, ParseResult, Span};

fn col(c: usize) -> Span {
    Span { line: 1, column: c + 1 }
}

/// Splits on commas at bracket and parenthesis depth zero, keeping byte offsets.
fn split_top(s: &str, offset: usize) -> ParseResult<Vec<(usize, &str)>> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Diagnostic::at(format!("unbalanced `{c}`"), col(offset + i)));
                }
            }
            ',' if depth == 0 => {
                parts.push((offset + start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Diagnostic::at("unbalanced brackets", col(offset + s.len())));
    }
    parts.push((offset + start, &s[start..]));
    Ok(parts)
}

/// Strips one pair of enclosing brackets, returning the inner offset and text.
fn bracketed(s: &str, offset: usize) -> ParseResult<(usize, &str)> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    if !t.starts_with('[') {
        return Err(Diagnostic::at("expected `[`", col(offset + lead)));
    }
    if !t.ends_with(']') {
        return Err(Diagnostic::at("expected `]`", col(offset + lead + t.len())));
    }
    Ok((offset + lead + 1, &t[1..t.len() - 1]))
}

/// `[[a, b], [c, d], ...]` as rows of entry strings with their offsets.
pub fn parse_matrix_cells(s: &str) -> ParseResult<Vec<Vec<(usize, String)>>> {
    let (off, inner) = bracketed(s, 0)?;
    let mut rows = Vec::new();
    for (roff, row) in split_top(inner, off)? {
        let (coff, cells) = bracketed(row, roff)?;
        rows.push(split_top(cells, coff)?.into_iter().map(|(o, c)| (o, c.trim().to_string())).collect::<Vec<_>>());
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Diagnostic::at("expected a nonempty square matrix", col(0)));
    }
    Ok(rows)
}

fn int(s: &str, offset: usize) -> ParseResult<BigInt> {
    s.trim().parse().map_err(|_| Diagnostic::at(format!("expected an integer, found `{}`", s.trim()), col(offset)))
}

fn small_int(s: &str, offset: usize) -> ParseResult<i64> {
    s.trim().parse().map_err(|_| Diagnostic::at(format!("expected an integer, found `{}`", s.trim()), col(offset)))
}

/// An integer matrix of determinant one, `[[a,b],[c,d]]`.
pub fn parse_sl2(s: &str) -> ParseResult<SL2Matrix> {
    let rows = parse_matrix_cells(s)?;
    if rows.len() != 2 {
        return Err(Diagnostic::at("expected a 2x2 matrix", col(0)));
    }
    let e = |i: usize, j: usize| int(&rows[i][j].1, rows[i][j].0);
    SL2Matrix::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?).map_err(|err| Diagnostic::at(err.to_string(), col(0)))
}

/// A square matrix of scalars; the field is inferred from the entries unless given.
pub fn parse_scalar_matrix(s: &str, field: Option<FieldKind>) -> ParseResult<Vec<Vec<Scalar>>> {
    let rows = parse_matrix_cells(s)?;
    let texts: Vec<&str> = rows.iter().flatten().map(|(_, t)| t.as_str()).collect();
    let field = match field {
        Some(f) => f,
        None => infer_field(&texts)?,
    };
    rows.iter()
        .map(|r| r.iter().map(|(o, t)| shifted(parse_scalar(t, field), *o)).collect())
        .collect()
}

fn shifted<T>(r: ParseResult<T>, offset: usize) -> ParseResult<T> {
    r.map_err(|mut d| {
        if let Some(s) = d.span.as_mut() {
            s.column += offset;
        }
        d
    })
}

/// Four scalars `a,b,c,d` for the fractional-linear map `u -> (a u + b)/(c u + d)`.
pub fn parse_sigma(s: &str) -> ParseResult<[Scalar; 4]> {
    let parts = split_top(s, 0)?;
    if parts.len() != 4 {
        return Err(Diagnostic::at(format!("expected four entries a,b,c,d, found {}", parts.len()), col(0)));
    }
    let texts: Vec<&str> = parts.iter().map(|(_, t)| *t).collect();
    let field = infer_field(&texts)?;
    let v: Vec<Scalar> = parts.iter().map(|(o, t)| shifted(parse_scalar(t, field), *o)).collect::<ParseResult<_>>()?;
    Ok(v.try_into().expect("four entries"))
}

/// `(p + s*sqrt(D))/q`, or a rational number.
pub fn parse_theta(s: &str) -> ParseResult<Theta> {
    let field = infer_field(&[s])?;
    match parse_scalar(s, field)? {
        Scalar::Rational(r) => Ok(Theta::Rational(r)),
        Scalar::Quadratic(x) => Ok(Theta::from(x)),
        Scalar::RationalFunction(_) => Err(Diagnostic::at("theta must be a real number", col(0))),
    }
}

/// `r:d`.
pub fn parse_charge(s: &str) -> ParseResult<Charge> {
    charge_at(s, 0)
}

fn charge_at(s: &str, offset: usize) -> ParseResult<Charge> {
    let Some((r, d)) = s.split_once(':') else {
        return Err(Diagnostic::at(format!("expected a charge `rank:deg`, found `{}`", s.trim()), col(offset)));
    };
    let rank = small_int(r, offset)?;
    let deg = small_int(d, offset + r.len() + 1)?;
    Charge::new(rank, deg).map_err(|e| Diagnostic::at(e.to_string(), col(offset)))
}

/// `[1:0, 2:1*3]`, `[]` or `EMPTY`.
pub fn parse_class(s: &str) -> ParseResult<SheafClass> {
    if s.trim() == "EMPTY" {
        return Ok(SheafClass::empty());
    }
    let (off, inner) = bracketed(s, 0)?;
    if inner.trim().is_empty() {
        return Ok(SheafClass::empty());
    }
    let mut factors = Vec::new();
    for (o, part) in split_top(inner, off)? {
        let (z, m) = match part.split_once('*') {
            Some((z, m)) => {
                let mult: u32 = m.trim().parse().ok().filter(|&m| m > 0).ok_or_else(|| {
                    Diagnostic::at(format!("expected a positive multiplicity, found `{}`", m.trim()), col(o + z.len() + 1))
                })?;
                (z, mult)
            }
            None => (part, 1),
        };
        factors.push((charge_at(z, o)?, m));
    }
    SheafClass::new(factors).map_err(|e| Diagnostic::at(e.to_string(), col(0)))
}

/// `level:c0,c1,...` with `c_i` the coefficient of `u^i`.
pub fn parse_section(s: &str, field: FieldKind) -> ParseResult<(u32, Vec<Scalar>)> {
    let Some((lvl, coeffs)) = s.split_once(':') else {
        return Err(Diagnostic::at("expected `level:c0,c1,...`", col(0)));
    };
    let level: u32 = lvl.trim().parse().map_err(|_| Diagnostic::at("expected a level", col(0)))?;
    let base = lvl.len() + 1;
    let cs = split_top(coeffs, base)?.into_iter().map(|(o, t)| shifted(parse_scalar(t, field), o)).collect::<ParseResult<_>>()?;
    Ok((level, cs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_literals() {
        let t = parse_theta("(-1+1*sqrt(5))/2").unwrap();
        assert_eq!(t.to_string(), "(-1 + sqrt(5))/2");
        assert_eq!(parse_theta("3/4").unwrap().to_string(), "3/4");
        assert_eq!(parse_theta("-sqrt(8)").unwrap().to_string(), "-2*sqrt(2)");
        assert!(parse_theta("q").is_err());
    }

    #[test]
    fn matrices() {
        let g = parse_sl2("[[1,1],[1,2]]").unwrap();
        assert_eq!(g, SL2Matrix::new(1, 1, 1, 2).unwrap());
        assert!(parse_sl2("[[1,1],[1,1]]").is_err());
        let d = parse_sl2("[[1,1],[1,x]]").unwrap_err();
        assert_eq!(d.span.unwrap().column, 11);
        let m = parse_scalar_matrix("[[q, 0], [0, 1]]", None).unwrap();
        assert_eq!(m[0][0], Scalar::q());
    }

    #[test]
    fn charges_and_classes() {
        assert_eq!(parse_charge("2:-3").unwrap(), Charge::new(2, -3).unwrap());
        assert!(parse_charge("0:-1").is_err());
        let c = parse_class("[1:0, 2:1*3]").unwrap();
        assert_eq!(c.to_string(), "[1:0, 2:1*3]");
        assert!(parse_class("EMPTY").unwrap().is_empty());
        assert_eq!(parse_class("[1:0, 2:1*0]").unwrap_err().span.unwrap().column, 11);
    }

    #[test]
    fn sigma_and_sections() {
        let s = parse_sigma("q,0,0,1").unwrap();
        assert_eq!(s[0], Scalar::q());
        let (lvl, cs) = parse_section("1:0,1", FieldKind::Rationals).unwrap();
        assert_eq!((lvl, cs.len()), (1, 2));
    }
}
