//! Text format for structure-constant algebras.
//!
//! ```text
//! # dual numbers over the scalars
//! dim 2
//! basis 1 x
//! const 0 0 0 1
//! const 0 1 1 1
//! const 1 0 1 1
//! unit 1 0
//! sub 1 0
//! ```
//!
//! `const i j k q` sets the coefficient of e_k in e_i e_j to q (0-based,
//! rational). `unit` and `sub` take one rational per basis element. Without
//! any `sub` line the subalgebra is the scalars.

use std::collections::BTreeSet;
use std::path::Path;

use num_traits::Zero;

use super::{parse_rational, SCAlgebra, SubalgebraSpec, MAX_ALGEBRA_DIM};
use crate::error::{Error, Result};
use crate::qlinalg::SparseVec;

const MAX_TOKEN: usize = 64;
const MAX_INPUT: usize = 1 << 20;

/// An algebra R together with a subalgebra S.
#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub name: String,
    pub algebra: SCAlgebra,
    pub subalgebra: SubalgebraSpec,
}

struct Line<'a> {
    number: usize,
    offset: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, column: usize, msg: impl std::fmt::Display) -> Error {
        Error::parse(self.offset + column, format!("line {}: {msg}", self.number))
    }

    /// Tokens with their byte columns.
    fn tokens(&self) -> Result<Vec<(usize, &str)>> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self
            .text
            .char_indices()
            .chain(std::iter::once((self.text.len(), ' ')))
        {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    if i - s > MAX_TOKEN {
                        return Err(self.error(s, format!("token longer than {MAX_TOKEN} bytes")));
                    }
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        Ok(out)
    }
}

fn index(line: &Line, (col, tok): (usize, &str), dim: usize) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(i) if i < dim => Ok(i),
        _ => Err(line.error(
            col,
            format!("expected a basis index below {dim}, found '{tok}'"),
        )),
    }
}

fn vector(line: &Line, toks: &[(usize, &str)], dim: usize) -> Result<SparseVec> {
    if toks.len() != dim {
        return Err(line.error(
            0,
            format!("expected {dim} coefficients, found {}", toks.len()),
        ));
    }
    let mut v = SparseVec::new();
    for (i, &(col, tok)) in toks.iter().enumerate() {
        let q = parse_rational(tok)
            .ok_or_else(|| line.error(col, format!("'{tok}' is not a rational")))?;
        if !q.is_zero() {
            v.insert(i, q);
        }
    }
    Ok(v)
}

/// Parses an algebra file. Syntax problems are parse errors carrying a byte
/// offset; axiom failures are input errors.
pub fn parse_algebra(text: &str, name: &str) -> Result<AlgebraFile> {
    if text.len() > MAX_INPUT {
        return Err(Error::resource(format!(
            "algebra file larger than {MAX_INPUT} bytes"
        )));
    }
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut products: Vec<Vec<SparseVec>> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut unit: Option<SparseVec> = None;
    let mut subs = Vec::new();

    let mut offset = 0;
    for (number, raw) in text.split_inclusive('\n').enumerate() {
        let line = Line {
            number: number + 1,
            offset,
            text: raw.split('#').next().unwrap_or(""),
        };
        offset += raw.len();
        let toks = line.tokens()?;
        let Some(&(kcol, keyword)) = toks.first() else {
            continue;
        };
        let args = &toks[1..];
        if keyword != "dim" && dim.is_none() {
            return Err(line.error(kcol, "the first directive must be 'dim'"));
        }
        let d = dim.unwrap_or(0);
        match keyword {
            "dim" => {
                if dim.is_some() {
                    return Err(line.error(kcol, "duplicate 'dim'"));
                }
                let [arg] = args else {
                    return Err(line.error(kcol, "'dim' takes one argument"));
                };
                match arg.1.parse::<usize>() {
                    Ok(n) if (1..=MAX_ALGEBRA_DIM).contains(&n) => {
                        dim = Some(n);
                        products = vec![vec![SparseVec::new(); n]; n];
                    }
                    _ => {
                        return Err(line
                            .error(arg.0, format!("dimension must be in 1..={MAX_ALGEBRA_DIM}")))
                    }
                }
            }
            "basis" => {
                if labels.is_some() {
                    return Err(line.error(kcol, "duplicate 'basis'"));
                }
                if args.len() != d {
                    return Err(
                        line.error(kcol, format!("expected {d} labels, found {}", args.len()))
                    );
                }
                labels = Some(args.iter().map(|t| t.1.to_string()).collect());
            }
            "const" => {
                let [a, b, c, q] = args else {
                    return Err(line.error(kcol, "'const' takes i j k q"));
                };
                let (i, j, k) = (
                    index(&line, *a, d)?,
                    index(&line, *b, d)?,
                    index(&line, *c, d)?,
                );
                let q = parse_rational(q.1)
                    .ok_or_else(|| line.error(q.0, format!("'{}' is not a rational", q.1)))?;
                if !seen.insert((i, j, k)) {
                    return Err(line.error(kcol, format!("duplicate constant for ({i}, {j}, {k})")));
                }
                if !q.is_zero() {
                    products[i][j].insert(k, q);
                }
            }
            "unit" => {
                if unit.is_some() {
                    return Err(line.error(kcol, "duplicate 'unit'"));
                }
                unit = Some(vector(&line, args, d)?);
            }
            "sub" => subs.push(vector(&line, args, d)?),
            other => return Err(line.error(kcol, format!("unknown directive '{other}'"))),
        }
    }

    let Some(d) = dim else {
        return Err(Error::parse(text.len(), "missing 'dim'"));
    };
    let Some(unit) = unit else {
        return Err(Error::parse(text.len(), "missing 'unit'"));
    };
    let labels = labels.unwrap_or_else(|| (0..d).map(|i| format!("e{i}")).collect());
    let algebra = SCAlgebra::new(labels, products, unit)?;
    let subalgebra = if subs.is_empty() {
        SubalgebraSpec::scalars(&algebra)
    } else {
        SubalgebraSpec::new(&algebra, subs)?
    };
    Ok(AlgebraFile {
        name: name.to_string(),
        algebra,
        subalgebra,
    })
}

/// `builtin:field`, `builtin:dual` or `builtin:m2`, each over the scalars
/// except `m2`, which is taken over itself.
pub fn builtin_algebra(name: &str) -> Option<AlgebraFile> {
    let (algebra, whole) = match name {
        "field" => (SCAlgebra::field(), false),
        "dual" => (SCAlgebra::dual_numbers(), false),
        "m2" => (SCAlgebra::matrix_units(2).ok()?, true),
        _ => return None,
    };
    let subalgebra = if whole {
        SubalgebraSpec::whole(&algebra)
    } else {
        SubalgebraSpec::scalars(&algebra)
    };
    Some(AlgebraFile {
        name: format!("builtin:{name}"),
        algebra,
        subalgebra,
    })
}

/// Loads a file path or a `builtin:` name.
pub fn load_algebra(source: &str) -> Result<AlgebraFile> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin_algebra(name)
            .ok_or_else(|| Error::input(format!("unknown builtin algebra '{name}'")));
    }
    let path = Path::new(source);
    let bytes =
        std::fs::read(path).map_err(|e| Error::input(format!("cannot read {source}: {e}")))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| Error::parse(e.valid_up_to(), "file is not UTF-8"))?;
    parse_algebra(text, source)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str =
        "# dual numbers\ndim 2\nbasis 1 x\nconst 0 0 0 1\nconst 0 1 1 1\nconst 1 0 1 1\nunit 1 0\n";

    #[test]
    fn parses_dual_numbers() {
        let f = parse_algebra(DUAL, "dual").unwrap();
        assert_eq!(f.algebra, SCAlgebra::dual_numbers());
        assert_eq!(f.subalgebra.dim(), 1);
    }

    #[test]
    fn rational_constants_and_sub_lines() {
        // The idempotent basis f = 1/2(1 + g), 1 − f of ℚC₂ written in (1, g).
        let text = "dim 2\nconst 0 0 0 1\nconst 0 1 1 1\nconst 1 0 1 1\nconst 1 1 0 1\nunit 1 0\nsub 1/2 1/2\nsub 1/2 -1/2\n";
        let f = parse_algebra(text, "c2").unwrap();
        assert_eq!(f.subalgebra.dim(), 2);
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse_algebra("dim 2\nconst 0 0 5 1\n", "x").unwrap_err();
        assert_eq!(
            err,
            Error::parse(16, "line 2: expected a basis index below 2, found '5'")
        );
        assert!(matches!(parse_algebra("", "x"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_algebra("unit 1\n", "x"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_algebra("dim 1\nunit 1\nunit 1\n", "x"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_algebra("dim 1\nconst 0 0 0 1\nconst 0 0 0 1\nunit 1\n", "x"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_algebra("dim 1\nunit 1/0\n", "x"),
            Err(Error::Parse { .. })
        ));
        let long = format!("dim 1\nbasis {}\nunit 1\n", "a".repeat(65));
        assert!(matches!(
            parse_algebra(&long, "x"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn axiom_failures_are_input_errors() {
        // Missing e_0 e_0 = e_0.
        let text = "dim 1\nunit 1\n";
        assert!(matches!(parse_algebra(text, "x"), Err(Error::Input(_))));
        let bad_sub = "dim 2\nconst 0 0 0 1\nconst 0 1 1 1\nconst 1 0 1 1\nunit 1 0\nsub 0 1\n";
        assert!(matches!(parse_algebra(bad_sub, "x"), Err(Error::Input(_))));
    }

    #[test]
    fn builtins() {
        assert_eq!(load_algebra("builtin:m2").unwrap().subalgebra.dim(), 4);
        assert!(matches!(load_algebra("builtin:nope"), Err(Error::Input(_))));
        assert!(matches!(
            load_algebra("/nonexistent/file.alg"),
            Err(Error::Input(_))
        ));
    }
}
