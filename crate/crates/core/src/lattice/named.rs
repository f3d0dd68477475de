use std::fmt;

use super::IntegerLattice;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedLattice {
    H,
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    Scalar(i64),
    K3,
}

impl fmt::Display for NamedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedLattice::H => write!(f, "H"),
            NamedLattice::A(n) => write!(f, "A{n}"),
            NamedLattice::D(n) => write!(f, "D{n}"),
            NamedLattice::E6 => write!(f, "E6"),
            NamedLattice::E7 => write!(f, "E7"),
            NamedLattice::E8 => write!(f, "E8"),
            NamedLattice::Scalar(m) => write!(f, "<{m}>"),
            NamedLattice::K3 => write!(f, "K3"),
        }
    }
}

fn cartan(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    // edges use 1-based Bourbaki labels
    for &(a, b) in edges {
        g[a - 1][b - 1] = -1;
        g[b - 1][a - 1] = -1;
    }
    g
}

fn e_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = vec![(1, 3), (2, 4)];
    edges.extend((3..n).map(|i| (i, i + 1)));
    edges
}

pub fn make_named(name: NamedLattice, negate: bool) -> Result<IntegerLattice> {
    let gram = match name {
        NamedLattice::H => vec![vec![0, 1], vec![1, 0]],
        NamedLattice::A(n) => {
            if n < 1 {
                return Err(Error::BadParameter("A(n) needs n >= 1".into()));
            }
            cartan(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>())
        }
        NamedLattice::D(n) => {
            if n < 4 {
                return Err(Error::BadParameter("D(n) needs n >= 4".into()));
            }
            let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((n - 2, n));
            cartan(n, &edges)
        }
        NamedLattice::E6 => cartan(6, &e_edges(6)),
        NamedLattice::E7 => cartan(7, &e_edges(7)),
        NamedLattice::E8 => cartan(8, &e_edges(8)),
        NamedLattice::Scalar(m) => {
            if m == 0 || m % 2 != 0 {
                return Err(Error::BadParameter(format!("<{m}> must be nonzero and even")));
            }
            vec![vec![m]]
        }
        NamedLattice::K3 => {
            let h = make_named(NamedLattice::H, false)?;
            let e = make_named(NamedLattice::E8, true)?;
            let l = h.direct_sum(&h).direct_sum(&h).direct_sum(&e).direct_sum(&e);
            return Ok(if negate { l.negated() } else { l });
        }
    };
    let l = IntegerLattice::new(gram)?;
    Ok(if negate { l.negated() } else { l })
}

/// Grammar: `term ('+' term)*`, `term := [count] atom`,
/// `atom := '(' atom ')' | '-' atom | '<' int '>' | name`,
/// `name := H | U | A<n> | D<n> | E6 | E7 | E8 | K3`. Whitespace is ignored.
pub(super) fn parse_sum(text: &str) -> Result<IntegerLattice> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty lattice expression".into()));
    }
    let mut parts = Vec::new();
    for term in split_terms(&cleaned)? {
        let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
        let count = if digits.is_empty() {
            1
        } else {
            digits.parse::<usize>().map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?
        };
        if count == 0 {
            return Err(Error::Parse(format!("zero multiplicity in {term:?}")));
        }
        let atom = parse_atom(&term[digits.len()..])?;
        for _ in 0..count {
            parts.push(atom.clone());
        }
    }
    Ok(IntegerLattice::direct_sum_all(parts.iter()).expect("at least one term"))
}

// split on '+' outside angle brackets, so "<+4>" stays whole
fn split_terms(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '<' | '(' => depth += 1,
            '>' | ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    if out.iter().any(|t| t.is_empty()) {
        return Err(Error::Parse(format!("empty summand in {s:?}")));
    }
    Ok(out)
}

fn parse_atom(s: &str) -> Result<IntegerLattice> {
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return parse_atom(inner);
    }
    if let Some(rest) = s.strip_prefix('-') {
        return Ok(parse_atom(rest)?.negated());
    }
    if let Some(inner) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        let m: i64 = inner.parse().map_err(|_| Error::Parse(format!("bad scalar lattice <{inner}>")))?;
        return make_named(NamedLattice::Scalar(m), false);
    }
    let name = match s {
        "H" | "U" => NamedLattice::H,
        "E6" => NamedLattice::E6,
        "E7" => NamedLattice::E7,
        "E8" => NamedLattice::E8,
        "K3" => NamedLattice::K3,
        _ => {
            let (head, tail) = s.split_at(s.len().min(1));
            let n: usize = tail.parse().map_err(|_| Error::Parse(format!("unknown lattice name {s:?}")))?;
            match head {
                "A" => NamedLattice::A(n),
                "D" => NamedLattice::D(n),
                _ => return Err(Error::Parse(format!("unknown lattice name {s:?}"))),
            }
        }
    };
    make_named(name, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ade_determinants() {
        let cases = [
            (NamedLattice::A(1), 2),
            (NamedLattice::A(3), 4),
            (NamedLattice::D(4), 4),
            (NamedLattice::D(7), 4),
            (NamedLattice::E6, 3),
            (NamedLattice::E7, 2),
            (NamedLattice::E8, 1),
        ];
        for (name, disc) in cases {
            let l = make_named(name, false).unwrap();
            assert_eq!(l.discriminant(), disc, "{name}");
            assert_eq!(l.signature().positive, l.rank());
        }
    }

    #[test]
    fn negated_a1() {
        assert_eq!(make_named(NamedLattice::A(1), true).unwrap().gram(), &[vec![-2]]);
    }

    #[test]
    fn k3_lattice() {
        let k3 = make_named(NamedLattice::K3, false).unwrap();
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.signature(), super::super::SignaturePair { positive: 3, negative: 19 });
        assert_eq!(k3.discriminant(), 1);
        assert!(k3.is_even());
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(make_named(NamedLattice::A(0), false), Err(Error::BadParameter(_))));
        assert!(matches!(make_named(NamedLattice::D(3), false), Err(Error::BadParameter(_))));
        assert!(matches!(make_named(NamedLattice::Scalar(3), false), Err(Error::BadParameter(_))));
        assert!(matches!(make_named(NamedLattice::Scalar(0), false), Err(Error::BadParameter(_))));
    }

    #[test]
    fn sum_grammar() {
        let l = parse_sum("H + 2(-E8) + <-4>").unwrap();
        assert_eq!(l.rank(), 19);
        assert_eq!(l.gram()[18][18], -4);
        assert_eq!(parse_sum("-A1").unwrap().gram(), &[vec![-2]]);
        assert_eq!(parse_sum("3H").unwrap().rank(), 6);
        assert!(matches!(parse_sum("F4"), Err(Error::Parse(_))));
        assert!(matches!(parse_sum("H++H"), Err(Error::Parse(_))));
        assert!(matches!(parse_sum("0H"), Err(Error::Parse(_))));
    }
}
