//! Chains, cochains, boundary matrices and the evaluation pairing.

use num_bigint::BigInt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::ring::Ring;

/// A `degree`-chain: one coefficient per `degree`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub ring: Ring,
    pub coeffs: Vec<BigInt>,
}

/// A `degree`-cochain: one value per `degree`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<BigInt>,
}

impl Chain {
    pub fn new(degree: usize, ring: Ring, coeffs: Vec<BigInt>) -> Self {
        Self { degree, ring, coeffs: ring.reduce_vec(coeffs) }
    }

    pub fn zero(k: &SimplicialComplex, degree: usize, ring: Ring) -> Self {
        Self { degree, ring, coeffs: vec![BigInt::from(0); k.count(degree)] }
    }

    /// The elementary chain of simplex `(degree, index)`.
    pub fn unit(k: &SimplicialComplex, degree: usize, index: usize, ring: Ring) -> Self {
        let mut c = Self::zero(k, degree, ring);
        c.coeffs[index] = BigInt::from(1);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c == &BigInt::ZERO)
    }

    pub fn check_on(&self, k: &SimplicialComplex) -> Result<()> {
        check_len(k, self.degree, self.coeffs.len())
    }
}

impl Cochain {
    pub fn new(degree: usize, ring: Ring, values: Vec<BigInt>) -> Self {
        Self { degree, ring, values: ring.reduce_vec(values) }
    }

    pub fn zero(k: &SimplicialComplex, degree: usize, ring: Ring) -> Self {
        Self { degree, ring, values: vec![BigInt::from(0); k.count(degree)] }
    }

    /// The indicator cochain of simplex `(degree, index)`.
    pub fn indicator(k: &SimplicialComplex, degree: usize, index: usize, ring: Ring) -> Self {
        let mut c = Self::zero(k, degree, ring);
        c.values[index] = BigInt::from(1);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|c| c == &BigInt::ZERO)
    }

    pub fn check_on(&self, k: &SimplicialComplex) -> Result<()> {
        check_len(k, self.degree, self.values.len())
    }
}

fn check_len(k: &SimplicialComplex, degree: usize, len: usize) -> Result<()> {
    if k.count(degree) != len {
        return Err(Error::LengthMismatch { degree, expected: k.count(degree), found: len });
    }
    Ok(())
}

/// Matrix of the boundary map `C_k -> C_{k-1}` for `1 <= k <= n`.
///
/// Face `i` of a simplex carries the sign `(-1)^i`; over `Z2` every sign is 1.
pub fn boundary_matrix(k: &SimplicialComplex, degree: usize, ring: Ring) -> Result<IntegerMatrix> {
    if degree == 0 || degree > k.dim() {
        return Err(Error::DegreeOutOfRange { degree, max: k.dim() });
    }
    Ok(boundary_or_zero(k, degree, ring))
}

/// Boundary matrix for any degree, with `∂_0` and `∂_{n+1}` the zero maps of
/// the appropriate shape.
pub(crate) fn boundary_or_zero(k: &SimplicialComplex, degree: usize, ring: Ring) -> IntegerMatrix {
    let rows = if degree == 0 { 0 } else { k.count(degree - 1) };
    let cols = k.count(degree);
    if degree == 0 || degree > k.dim() {
        return IntegerMatrix::zeros(rows, cols);
    }
    let mut entries = Vec::with_capacity(cols * (degree + 1));
    for j in 0..cols {
        for (i, f) in k.facets(degree, j).into_iter().enumerate() {
            let s = if i % 2 == 1 && ring == Ring::Integers { -1 } else { 1 };
            entries.push((f, j, BigInt::from(s)));
        }
    }
    IntegerMatrix::from_triplets(rows, cols, entries)
}

/// Matrix of the coboundary `δ_k = ∂_{k+1}^T : C^k -> C^{k+1}`.
pub fn coboundary_matrix(k: &SimplicialComplex, degree: usize, ring: Ring) -> IntegerMatrix {
    boundary_or_zero(k, degree + 1, ring).transpose()
}

/// `∂c`, a chain of degree `c.degree - 1`.
pub fn boundary(k: &SimplicialComplex, c: &Chain) -> Result<Chain> {
    c.check_on(k)?;
    if c.degree == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, max: k.dim() });
    }
    let v = boundary_or_zero(k, c.degree, c.ring).mul_vec(&c.coeffs);
    Ok(Chain::new(c.degree - 1, c.ring, v))
}

/// `δφ`, a cochain of degree `φ.degree + 1` (empty above the dimension).
pub fn coboundary(k: &SimplicialComplex, phi: &Cochain) -> Result<Cochain> {
    phi.check_on(k)?;
    let v = coboundary_matrix(k, phi.degree, phi.ring).mul_vec(&phi.values);
    Ok(Cochain::new(phi.degree + 1, phi.ring, v))
}

pub fn is_cycle(k: &SimplicialComplex, c: &Chain) -> Result<bool> {
    if c.degree == 0 {
        c.check_on(k)?;
        return Ok(true);
    }
    Ok(boundary(k, c)?.is_zero())
}

pub fn is_cocycle(k: &SimplicialComplex, phi: &Cochain) -> Result<bool> {
    Ok(coboundary(k, phi)?.is_zero())
}

/// The pairing `Σ φ(σ) c(σ)`, reduced into the common ring.
pub fn evaluate(phi: &Cochain, c: &Chain) -> Result<BigInt> {
    if phi.degree != c.degree {
        return Err(Error::DegreeMismatch { expected: phi.degree, found: c.degree });
    }
    if phi.ring != c.ring {
        return Err(Error::RingMismatch { expected: phi.ring, found: c.ring });
    }
    if phi.values.len() != c.coeffs.len() {
        return Err(Error::LengthMismatch { degree: c.degree, expected: phi.values.len(), found: c.coeffs.len() });
    }
    let sum: BigInt = phi.values.iter().zip(&c.coeffs).map(|(a, b)| a * b).sum();
    Ok(phi.ring.reduce(sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;

    fn sphere2() -> SimplicialComplex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn edge_boundary() {
        let k = build_complex(&[vec![0, 1]]).unwrap();
        let d = boundary_matrix(&k, 1, Ring::Integers).unwrap();
        assert_eq!(d, IntegerMatrix::from_i64(&[vec![-1], vec![1]]));
        assert_eq!(boundary_matrix(&k, 1, Ring::Mod2).unwrap(), IntegerMatrix::from_i64(&[vec![1], vec![1]]));
    }

    #[test]
    fn degree_range() {
        let k = sphere2();
        assert!(matches!(boundary_matrix(&k, 0, Ring::Integers), Err(Error::DegreeOutOfRange { .. })));
        assert!(matches!(boundary_matrix(&k, 3, Ring::Integers), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let k = sphere2();
        for ring in [Ring::Integers, Ring::Mod2] {
            let d1 = boundary_matrix(&k, 1, ring).unwrap();
            let d2 = boundary_matrix(&k, 2, ring).unwrap();
            assert!(d1.mul(&d2).reduce(ring).is_zero());
        }
    }

    #[test]
    fn evaluation_pairing() {
        let k = sphere2();
        let phi = Cochain::indicator(&k, 1, 2, Ring::Integers);
        assert_eq!(evaluate(&phi, &Chain::unit(&k, 1, 2, Ring::Integers)).unwrap(), BigInt::from(1));
        assert_eq!(evaluate(&Cochain::zero(&k, 1, Ring::Integers), &Chain::unit(&k, 1, 0, Ring::Integers)).unwrap(), BigInt::from(0));
        assert!(matches!(evaluate(&phi, &Chain::unit(&k, 2, 0, Ring::Integers)), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(evaluate(&phi, &Chain::unit(&k, 1, 0, Ring::Mod2)), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn coboundaries_vanish_on_cycles() {
        let k = sphere2();
        let g = Cochain::new(0, Ring::Integers, vec![3, -1, 4, 1].into_iter().map(BigInt::from).collect());
        let dg = coboundary(&k, &g).unwrap();
        let z = boundary(&k, &Chain::unit(&k, 2, 1, Ring::Integers)).unwrap();
        assert!(is_cycle(&k, &z).unwrap());
        assert_eq!(evaluate(&dg, &z).unwrap(), BigInt::from(0));
        assert!(is_cocycle(&k, &dg).unwrap());
    }
}
