//! Text format for group specs.
//!
//! ```text
//! S4  A5  C12  D8  C11:C5@3  perm:(1 2)(3 4),(1 2 3)
//! ```
//!
//! `Dn` is the dihedral group of order n. `Cp:Cq@a` is the affine group
//! generated by x -> x+1 and x -> a*x on Z/p; `a` must have multiplicative
//! order exactly q. Points in cycle notation are 1-based.

use super::Perm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyclic(usize),
    Dihedral(usize),
    Semidirect {
        p: usize,
        q: usize,
        action: usize,
    },
    /// Generators in cycle notation, 0-based points.
    Perms(Vec<Vec<Vec<usize>>>),
}

/// Hard limit on numeric parameters, to keep malformed input from
/// requesting absurd allocations before any group is enumerated.
const MAX_PARAM: usize = 100_000;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match text.parse::<usize>() {
            Ok(v) if v <= MAX_PARAM => Ok(v),
            _ => Err(Error::parse(start, format!("number {text} is too large"))),
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let found = match self.peek() {
            Some(c) if c.is_ascii_graphic() => format!(", found '{}'", c as char),
            Some(_) => ", found a non-printable byte".to_string(),
            None => ", found end of input".to_string(),
        };
        Error::parse(self.pos, format!("{}{}", msg.into(), found))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.bytes.len()
    }
}

/// Parses a group spec; errors carry the byte offset of the problem.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    cur.skip_ws();
    if cur.bytes[cur.pos..].starts_with(b"perm:") {
        cur.pos += 5;
        let gens = parse_perm_list(&mut cur)?;
        return Ok(GroupSpec::Perms(gens));
    }
    let family = cur.peek().ok_or_else(|| cur.error("empty group spec"))?;
    cur.pos += 1;
    let spec = match family {
        b'S' => GroupSpec::Sym(cur.number()?),
        b'A' => GroupSpec::Alt(cur.number()?),
        b'D' => GroupSpec::Dihedral(cur.number()?),
        b'C' => {
            let n = cur.number()?;
            cur.skip_ws();
            if cur.peek() == Some(b':') {
                cur.pos += 1;
                cur.expect(b'C')?;
                let q = cur.number()?;
                cur.expect(b'@')?;
                let action = cur.number()?;
                GroupSpec::Semidirect { p: n, q, action }
            } else {
                GroupSpec::Cyclic(n)
            }
        }
        _ => {
            cur.pos -= 1;
            return Err(cur.error("unknown group family (expected S, A, C, D or perm:)"));
        }
    };
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(spec)
}

fn parse_perm_list(cur: &mut Cursor<'_>) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut gens = Vec::new();
    loop {
        let mut cycles = Vec::new();
        cur.skip_ws();
        if cur.peek() != Some(b'(') {
            return Err(cur.error("expected '(' to start a cycle"));
        }
        while {
            cur.skip_ws();
            cur.peek() == Some(b'(')
        } {
            let open = cur.pos;
            cur.pos += 1;
            let mut cycle = Vec::new();
            loop {
                cur.skip_ws();
                match cur.peek() {
                    Some(b')') => {
                        cur.pos += 1;
                        break;
                    }
                    Some(b'0'..=b'9') => {
                        let start = cur.pos;
                        let pt = cur.number()?;
                        if pt == 0 {
                            return Err(Error::parse(start, "points are numbered from 1"));
                        }
                        if cycle.contains(&(pt - 1)) {
                            return Err(Error::parse(
                                start,
                                format!("point {pt} repeated in cycle"),
                            ));
                        }
                        cycle.push(pt - 1);
                    }
                    _ => return Err(cur.error("expected a point or ')'")),
                }
            }
            if cycle.len() == 1 {
                return Err(Error::parse(open, "a cycle needs at least two points"));
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        gens.push(cycles);
        cur.skip_ws();
        match cur.peek() {
            Some(b',') => cur.pos += 1,
            None => break,
            _ => return Err(cur.error("expected ',' or end of input")),
        }
    }
    Ok(gens)
}

impl GroupSpec {
    /// Natural number of points for this spec.
    pub fn natural_degree(&self) -> usize {
        match self {
            GroupSpec::Sym(n) | GroupSpec::Alt(n) | GroupSpec::Cyclic(n) => (*n).max(1),
            GroupSpec::Dihedral(n) => match n {
                0..=2 => 2,
                4 => 4,
                _ => n / 2,
            },
            GroupSpec::Semidirect { p, .. } => *p,
            GroupSpec::Perms(gens) => gens
                .iter()
                .flatten()
                .flatten()
                .map(|&x| x + 1)
                .max()
                .unwrap_or(1),
        }
    }

    /// Standard generators on `max(natural degree, min_degree)` points.
    pub fn realize(&self, min_degree: usize) -> Result<(usize, Vec<Perm>)> {
        let degree = self.natural_degree().max(min_degree).max(1);
        let cyc = |cycles: &[Vec<usize>]| Perm::from_cycles(degree, cycles).expect("valid cycles");
        let gens = match self {
            GroupSpec::Sym(n) => (0..n.saturating_sub(1))
                .map(|i| cyc(&[vec![i, i + 1]]))
                .collect(),
            GroupSpec::Alt(n) => (2..*n).map(|i| cyc(&[vec![0, 1, i]])).collect(),
            GroupSpec::Cyclic(n) => {
                if *n == 0 {
                    return Err(Error::input("cyclic group order must be positive"));
                }
                if *n == 1 {
                    Vec::new()
                } else {
                    vec![cyc(&[(0..*n).collect()])]
                }
            }
            GroupSpec::Dihedral(n) => match n {
                0 => return Err(Error::input("dihedral group order must be positive")),
                1 => Vec::new(),
                2 => vec![cyc(&[vec![0, 1]])],
                4 => vec![
                    cyc(&[vec![0, 1], vec![2, 3]]),
                    cyc(&[vec![0, 2], vec![1, 3]]),
                ],
                n if n % 2 == 1 => {
                    return Err(Error::input(format!(
                        "dihedral group order {n} must be even"
                    )))
                }
                n => {
                    let m = n / 2;
                    let rotation = cyc(&[(0..m).collect()]);
                    let reflection: Vec<Vec<usize>> = (1..m)
                        .filter(|&i| i < m - i)
                        .map(|i| vec![i, m - i])
                        .collect();
                    vec![rotation, cyc(&reflection)]
                }
            },
            GroupSpec::Semidirect { p, q, action } => {
                let (p, q, a) = (*p, *q, *action);
                if p < 2 || q < 1 {
                    return Err(Error::input("semidirect product needs p >= 2 and q >= 1"));
                }
                if crate::modp::gcd(a as u64, p as u64) != 1 {
                    return Err(Error::input(format!(
                        "action exponent {a} is not a unit mod {p}"
                    )));
                }
                let mut ord = 1;
                let mut x = a % p;
                while x != 1 {
                    x = x * a % p;
                    ord += 1;
                }
                if ord != q {
                    return Err(Error::input(format!(
                        "{a} has multiplicative order {ord} mod {p}, expected {q}"
                    )));
                }
                let mut translation: Vec<u32> = (1..=p as u32).collect();
                translation[p - 1] = 0;
                translation.extend(p as u32..degree as u32);
                let mut mult: Vec<u32> = (0..p).map(|x| (x * a % p) as u32).collect();
                mult.extend(p as u32..degree as u32);
                let mut gens = vec![Perm::from_images(translation).unwrap()];
                if q > 1 {
                    gens.push(Perm::from_images(mult).unwrap());
                }
                gens
            }
            GroupSpec::Perms(gens) => gens
                .iter()
                .map(|cycles| {
                    Perm::from_cycles(degree, cycles)
                        .ok_or_else(|| Error::input("invalid cycle in permutation generator"))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok((degree, gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_families() {
        assert_eq!(parse_group_spec("S4").unwrap(), GroupSpec::Sym(4));
        assert_eq!(parse_group_spec(" A5 ").unwrap(), GroupSpec::Alt(5));
        assert_eq!(parse_group_spec("D8").unwrap(), GroupSpec::Dihedral(8));
        assert_eq!(
            parse_group_spec("C11:C5@3").unwrap(),
            GroupSpec::Semidirect {
                p: 11,
                q: 5,
                action: 3
            }
        );
    }

    #[test]
    fn cycle_notation() {
        let spec = parse_group_spec("perm:(1 2)(3 4),(1 2 3)").unwrap();
        assert_eq!(
            spec,
            GroupSpec::Perms(vec![vec![vec![0, 1], vec![2, 3]], vec![vec![0, 1, 2]]])
        );
        assert_eq!(spec.natural_degree(), 4);
        assert_eq!(
            parse_group_spec("perm:()").unwrap(),
            GroupSpec::Perms(vec![vec![]])
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_group_spec("perm:(1 2,(3 4)").unwrap_err();
        assert_eq!(err, Error::parse(9, "expected a point or ')', found ','"));
        assert!(matches!(
            parse_group_spec("X4"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_group_spec("S4x"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_group_spec("perm:(0 1)"),
            Err(Error::Parse { position: 6, .. })
        ));
        assert!(matches!(
            parse_group_spec("perm:(1 1)"),
            Err(Error::Parse { position: 8, .. })
        ));
        assert!(matches!(
            parse_group_spec(""),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_group_spec("S999999999999"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn semidirect_action_order_checked() {
        let spec = parse_group_spec("C11:C5@2").unwrap();
        assert!(matches!(spec.realize(1), Err(Error::Input(_))));
        let spec = parse_group_spec("C11:C5@3").unwrap();
        assert_eq!(spec.realize(1).unwrap().1.len(), 2);
    }

    #[test]
    fn padding_to_parent_degree() {
        let (deg, gens) = GroupSpec::Sym(3).realize(4).unwrap();
        assert_eq!(deg, 4);
        assert!(gens.iter().all(|g| g.apply(3) == 3));
    }
}
