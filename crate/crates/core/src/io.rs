//! Text formats: complexes, cocycles and exact rationals.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chain::{is_cocycle, Cochain};
use crate::complex::{build_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::ring::Ring;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Top simplices from the complex file format: one simplex per line,
/// whitespace-separated vertex labels, `#` comments.
pub fn parse_complex(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut tops = Vec::new();
    let mut arity = None;
    for (line, l) in content_lines(text) {
        let simplex = l
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("bad vertex label '{t}'") }))
            .collect::<Result<Vec<_>>>()?;
        match arity {
            None => arity = Some(simplex.len()),
            Some(a) if a != simplex.len() => {
                return Err(Error::Parse { line, message: format!("expected {a} vertices, found {}", simplex.len()) })
            }
            _ => {}
        }
        tops.push(simplex);
    }
    if tops.is_empty() {
        return Err(Error::EmptyComplex);
    }
    Ok(tops)
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path).map_err(|_| Error::FileMissing(path.display().to_string()))?;
    build_complex(&parse_complex(&text)?)
}

/// A 1-cochain from lines `u v value` (original labels). The value is taken
/// on the edge oriented from `u` to `v`; unlisted edges are zero. The result
/// must be a cocycle over `ring`.
pub fn parse_cocycle(k: &SimplicialComplex, text: &str, ring: Ring) -> Result<Cochain> {
    if k.dim() < 1 {
        return Err(Error::WrongDimension { expected: 1, found: k.dim() });
    }
    let mut values = vec![BigInt::zero(); k.count(1)];
    let mut seen = vec![false; k.count(1)];
    for (line, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse { line, message: "expected 'u v value'".into() });
        }
        let label = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("bad vertex label '{t}'") });
        let (a, b) = (label(fields[0])?, label(fields[1])?);
        let value: BigInt =
            fields[2].parse().map_err(|_| Error::Parse { line, message: format!("bad integer value '{}'", fields[2]) })?;
        let u = k.vertex_of_label(a).ok_or(Error::UnknownVertex(a))?;
        let v = k.vertex_of_label(b).ok_or(Error::UnknownVertex(b))?;
        let e = k.edge_index(u, v).ok_or_else(|| Error::UnknownEdge(format!("{a} {b}")))?;
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::Parse { line, message: format!("edge {a} {b} listed twice") });
        }
        values[e] = if u < v { value } else { -value };
    }
    let phi = Cochain::new(1, ring, values);
    if !is_cocycle(k, &phi)? {
        return Err(Error::NotACocycle);
    }
    Ok(phi)
}

pub fn read_cocycle(k: &SimplicialComplex, path: &Path, ring: Ring) -> Result<Cochain> {
    let text = std::fs::read_to_string(path).map_err(|_| Error::FileMissing(path.display().to_string()))?;
    parse_cocycle(k, &text, ring)
}

/// An exact rational written `p/q` or `p`; decimal and exponent forms are
/// rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(s.to_string());
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let digits = |t: &str| {
        let body = t.strip_prefix(['-', '+']).unwrap_or(t);
        !body.is_empty() && body.bytes().all(|c| c.is_ascii_digit())
    };
    if !digits(p) || !digits(q) {
        return Err(bad());
    }
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_file() {
        let tops = parse_complex("# tetrahedron\n0 1 2\n\n0 1 3\n0 2 3\n1 2 3\n").unwrap();
        assert_eq!(tops.len(), 4);
        assert!(matches!(parse_complex("0 1 2\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_complex("0 x 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_complex("# nothing\n"), Err(Error::EmptyComplex)));
    }

    #[test]
    fn cocycle_file() {
        let k = build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        // δ of the indicator of vertex 0
        let phi = parse_cocycle(&k, "1 0 1\n2 0 1\n0 3 -1\n", Ring::Integers).unwrap();
        assert_eq!(phi.values[0], BigInt::from(-1));
        assert!(matches!(parse_cocycle(&k, "0 1 1\n", Ring::Integers), Err(Error::NotACocycle)));
        assert!(matches!(parse_cocycle(&k, "0 9 1\n", Ring::Integers), Err(Error::UnknownVertex(9))));
        assert!(matches!(parse_cocycle(&k, "0 1 1\n1 0 1\n", Ring::Integers), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("2/4").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        for bad in ["0.5", "1e-1", "1/0", "", "/2", "a/b", ".5/1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
    }
}
