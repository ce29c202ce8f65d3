//! Homology and cohomology with explicit generators.
//!
//! For `H = ker A / im B` the kernel of `A` is read off the right transform of
//! its Smith form, `B` is rewritten in that kernel basis, and a second Smith
//! form of the rewritten `B` splits the kernel into boundaries, torsion and
//! free parts. Both transforms are kept so every cycle can be mapped to its
//! class coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::chain::boundary_or_zero;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::matrix::{sv_axpy, sv_dot_dense, sv_to_dense, IntegerMatrix, SparseMatrix, SparseVec};
use crate::report::bigint_list;
use crate::ring::{Coefficient, Ring, Z2};
use crate::snf::{rank as snf_rank, reduce, smith_normal_form, SnfCertificate, Track};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Homology,
    Cohomology,
}

/// A finitely generated group `Z^betti ⊕ ⊕ Z/t_i` with generator cycles and
/// the linear functionals that read off class coordinates.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: usize,
    pub ring: Ring,
    pub variance: Variance,
    pub betti: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
    /// Free generators first, then one per torsion factor.
    pub generators: Vec<Vec<BigInt>>,
    coordinates: Vec<SparseVec<BigInt>>,
    cycle_test: IntegerMatrix,
}

/// Line/record form of a group, as emitted in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyRecord {
    pub degree: usize,
    pub ring: Ring,
    pub betti: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    /// Number of generators (free rank plus torsion summands).
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Order of each generator: `None` for free ones.
    pub fn orders(&self) -> Vec<Option<BigInt>> {
        (0..self.betti).map(|_| None).chain(self.torsion.iter().cloned().map(Some)).collect()
    }

    pub fn is_trivial_group(&self) -> bool {
        self.generators.is_empty()
    }

    /// Class of a cycle in the generator basis; torsion coordinates are
    /// reduced modulo their order.
    pub fn class_coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.cycle_test.cols() {
            return Err(Error::LengthMismatch { degree: self.degree, expected: self.cycle_test.cols(), found: z.len() });
        }
        let z = self.ring.reduce_vec(z.to_vec());
        if self.cycle_test.mul_vec(&z).into_iter().any(|x| self.ring.reduce(x) != BigInt::ZERO) {
            return Err(Error::NotACycle);
        }
        Ok(self
            .coordinates
            .iter()
            .zip(self.orders())
            .map(|(row, order)| {
                let x = self.ring.reduce(sv_dot_dense(row, &z));
                match order {
                    Some(d) => x.mod_floor(&d),
                    None => x,
                }
            })
            .collect())
    }

    /// True when `z` is a cycle whose class vanishes.
    pub fn is_boundary(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.class_coordinates(z)?.iter().all(|x| x == &BigInt::ZERO))
    }

    pub fn record(&self) -> HomologyRecord {
        HomologyRecord { degree: self.degree, ring: self.ring, betti: self.betti, torsion: self.torsion.clone() }
    }
}

struct Presentation<R> {
    /// `(order, generator, coordinate functional)`; `order == None` for free.
    parts: Vec<(Option<R>, Vec<R>, SparseVec<R>)>,
}

fn present<R: Coefficient>(a: &SparseMatrix<R>, b: &SparseMatrix<R>) -> Presentation<R> {
    let m = a.cols();
    debug_assert_eq!(b.rows(), m);
    let ra = reduce(a, Track { right: true, right_inv: true, ..Track::NONE });
    let rank_a = ra.rank();
    let kernel: Vec<SparseVec<R>> = ra.right.expect("tracked").split_off(rank_a);
    let proj: Vec<SparseVec<R>> = ra.right_inv.expect("tracked").split_off(rank_a);

    // B rewritten in the kernel basis
    let b_rows: Vec<SparseVec<R>> = proj
        .iter()
        .map(|p| {
            let mut acc: SparseVec<R> = Vec::new();
            for (j, c) in p {
                acc = sv_axpy(&acc, c, b.row(*j));
            }
            acc
        })
        .collect();
    let b_kernel = SparseMatrix::from_sparse_rows(kernel.len(), b.cols(), b_rows);
    let rb = reduce(&b_kernel, Track { left: true, left_inv: true, ..Track::NONE });
    let left = rb.left.expect("tracked");
    let left_inv = rb.left_inv.expect("tracked");

    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for t in 0..kernel.len() {
        let order = rb.diagonal.get(t).cloned();
        if order.as_ref().is_some_and(|d| d.is_unit()) {
            continue;
        }
        let mut coord: SparseVec<R> = Vec::new();
        for (i, c) in &left[t] {
            coord = sv_axpy(&coord, c, &proj[*i]);
        }
        let mut gen: SparseVec<R> = Vec::new();
        for (i, c) in &left_inv[t] {
            gen = sv_axpy(&gen, c, &kernel[*i]);
        }
        let part = (order.clone(), sv_to_dense(&gen, m), coord);
        if order.is_some() {
            torsion.push(part);
        } else {
            free.push(part);
        }
    }
    free.extend(torsion);
    Presentation { parts: free }
}

/// Homology of a chain complex fragment `C_{k+1} --b--> C_k --a--> C_{k-1}`.
///
/// `a` and `b` must compose to zero over `ring`.
pub fn homology_from_boundaries(
    a: &IntegerMatrix,
    b: &IntegerMatrix,
    degree: usize,
    ring: Ring,
    variance: Variance,
) -> HomologyGroup {
    fn convert<R: Coefficient>(p: Presentation<R>) -> Vec<(Option<BigInt>, Vec<BigInt>, SparseVec<BigInt>)> {
        p.parts
            .into_iter()
            .map(|(o, g, c)| {
                (
                    o.map(|x| x.to_bigint()),
                    g.iter().map(|x| x.to_bigint()).collect(),
                    c.into_iter().map(|(i, x)| (i, x.to_bigint())).collect(),
                )
            })
            .collect()
    }
    let parts = match ring {
        Ring::Integers => convert(present::<BigInt>(a, b)),
        Ring::Mod2 => convert(present::<Z2>(&a.to_coeff(), &b.to_coeff())),
    };
    let mut torsion = Vec::new();
    let mut generators = Vec::new();
    let mut coordinates = Vec::new();
    let mut betti = 0;
    for (order, g, c) in parts {
        match order {
            Some(d) => torsion.push(d),
            None => betti += 1,
        }
        generators.push(g);
        coordinates.push(c);
    }
    HomologyGroup { degree, ring, variance, betti, torsion, generators, coordinates, cycle_test: a.reduce(ring) }
}

/// `H_k(K; ring)` for `0 <= k <= n`.
pub fn homology(k: &SimplicialComplex, degree: usize, ring: Ring) -> Result<HomologyGroup> {
    if degree > k.dim() {
        return Err(Error::DegreeOutOfRange { degree, max: k.dim() });
    }
    let a = boundary_or_zero(k, degree, ring);
    let b = boundary_or_zero(k, degree + 1, ring);
    Ok(homology_from_boundaries(&a, &b, degree, ring, Variance::Homology))
}

/// `H^k(K; ring)` as the homology of `δ_k = ∂_{k+1}^T`; generators are cocycles.
pub fn cohomology(k: &SimplicialComplex, degree: usize, ring: Ring) -> Result<HomologyGroup> {
    if degree > k.dim() {
        return Err(Error::DegreeOutOfRange { degree, max: k.dim() });
    }
    let a = boundary_or_zero(k, degree + 1, ring).transpose();
    let b = boundary_or_zero(k, degree, ring).transpose();
    Ok(homology_from_boundaries(&a, &b, degree, ring, Variance::Cohomology))
}

/// Records for every degree `0..=n`.
pub fn homology_table(k: &SimplicialComplex, ring: Ring, variance: Variance) -> Vec<HomologyRecord> {
    (0..=k.dim())
        .map(|d| {
            let g = match variance {
                Variance::Homology => homology(k, d, ring),
                Variance::Cohomology => cohomology(k, d, ring),
            };
            g.expect("degree in range").record()
        })
        .collect()
}

/// A homomorphism between two computed groups, written in their generator
/// bases: column `j` holds the class coordinates of the image of source
/// generator `j`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub ring: Ring,
    pub matrix: IntegerMatrix,
    /// Smith form of `matrix` over the integers; `None` over `Z2`.
    pub certificate: Option<SnfCertificate>,
    /// Nonzero invariant factors of `matrix` (all ones over `Z2`).
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub iso: bool,
}

/// Builds the matrix of the map induced by `chain_map` and decides whether it
/// is an isomorphism.
///
/// Over the integers the groups must have equal invariants and the columns of
/// the matrix together with the torsion relations of the target must span the
/// whole coordinate lattice; a surjection between isomorphic finitely
/// generated groups is an isomorphism. Over `Z2` the matrix must be square of
/// full rank.
pub fn induced_map(
    source: &HomologyGroup,
    target: &HomologyGroup,
    chain_map: impl Fn(&[BigInt]) -> Vec<BigInt>,
) -> Result<InducedMap> {
    if source.ring != target.ring {
        return Err(Error::RingMismatch { expected: target.ring, found: source.ring });
    }
    let ring = source.ring;
    let rows = target.rank();
    let mut entries = Vec::new();
    for (j, g) in source.generators.iter().enumerate() {
        let coords = target.class_coordinates(&chain_map(g))?;
        entries.extend(coords.into_iter().enumerate().map(|(i, x)| (i, j, x)));
    }
    let matrix = IntegerMatrix::from_triplets(rows, source.rank(), entries);
    match ring {
        Ring::Integers => {
            let certificate = smith_normal_form(&matrix);
            let invariant_factors = certificate.invariant_factors();
            let rank = invariant_factors.len();
            let same_group = source.betti == target.betti && source.torsion == target.torsion;
            let relations = IntegerMatrix::from_triplets(
                rows,
                target.torsion.len(),
                target.torsion.iter().enumerate().map(|(j, d)| (target.betti + j, j, d.clone())),
            );
            let augmented = reduce(&matrix.hcat(&relations), Track::NONE);
            let onto = augmented.rank() == rows && augmented.diagonal.iter().all(|d| d.is_unit());
            Ok(InducedMap { ring, matrix, certificate: Some(certificate), invariant_factors, rank, iso: same_group && onto })
        }
        Ring::Mod2 => {
            let rank = snf_rank(&matrix.to_coeff::<Z2>());
            let iso = matrix.rows() == matrix.cols() && rank == rows;
            Ok(InducedMap { ring, matrix, certificate: None, invariant_factors: vec![BigInt::from(1); rank], rank, iso })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{boundary, Chain};
    use crate::complex::build_complex;

    fn rp2() -> SimplicialComplex {
        let t = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
            [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
        ];
        build_complex(&t.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn sphere2() -> SimplicialComplex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn sphere_betti() {
        let k = sphere2();
        let b: Vec<usize> = (0..=2).map(|d| homology(&k, d, Ring::Integers).unwrap().betti).collect();
        assert_eq!(b, vec![1, 0, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        let k = rp2();
        let h: Vec<_> = (0..=2).map(|d| homology(&k, d, Ring::Integers).unwrap()).collect();
        assert_eq!((h[0].betti, h[1].betti, h[2].betti), (1, 0, 0));
        assert_eq!(h[1].torsion, vec![BigInt::from(2)]);
        let c: Vec<_> = (0..=2).map(|d| cohomology(&k, d, Ring::Integers).unwrap()).collect();
        assert_eq!(c[2].torsion, vec![BigInt::from(2)]);
        assert!(c[1].torsion.is_empty() && c[1].betti == 0);
        let m: Vec<usize> = (0..=2).map(|d| homology(&k, d, Ring::Mod2).unwrap().betti).collect();
        assert_eq!(m, vec![1, 1, 1]);
    }

    #[test]
    fn generators_are_nontrivial_cycles() {
        let k = rp2();
        let h1 = homology(&k, 1, Ring::Integers).unwrap();
        let g = &h1.generators[0];
        assert!(crate::chain::is_cycle(&k, &Chain::new(1, Ring::Integers, g.clone())).unwrap());
        assert_eq!(h1.class_coordinates(g).unwrap(), vec![BigInt::from(1)]);
        // twice the generator bounds
        let twice: Vec<BigInt> = g.iter().map(|x| x * 2).collect();
        assert!(h1.is_boundary(&twice).unwrap());
    }

    #[test]
    fn boundaries_have_zero_class() {
        let k = sphere2();
        let h1 = homology(&k, 1, Ring::Integers).unwrap();
        let z = boundary(&k, &Chain::unit(&k, 2, 0, Ring::Integers)).unwrap();
        assert!(h1.is_boundary(&z.coeffs).unwrap());
        let not_cycle = Chain::unit(&k, 1, 0, Ring::Integers);
        assert!(matches!(h1.class_coordinates(&not_cycle.coeffs), Err(Error::NotACycle)));
    }

    #[test]
    fn connected_cohomology_degree_zero() {
        let c0 = cohomology(&rp2(), 0, Ring::Integers).unwrap();
        assert_eq!(c0.betti, 1);
        assert!(c0.generators[0].iter().all(|x| x == &c0.generators[0][0]));
    }
}
