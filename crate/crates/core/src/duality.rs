//! Cap product and the duality map `D_k = [M] ⌢ - : H^k -> H_{n-k}`.
//!
//! Front-face convention: for `σ = [v_0 ... v_p]` and a `k`-cochain `φ`,
//! `σ ⌢ φ = φ([v_0 ... v_k]) [v_k ... v_p]`. With this convention
//! `∂(σ ⌢ φ) = (-1)^k (∂σ ⌢ φ - σ ⌢ δφ)`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::chain::{Chain, Cochain};
use crate::complex::{fundamental_class, ManifoldCertificate, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{cohomology, homology, induced_map, HomologyGroup, InducedMap};
use crate::matrix::IntegerMatrix;
use crate::report::{bigint_list, bigint_matrix, format_list, format_matrix};
use crate::ring::Ring;
use crate::snf::smith_normal_form;

/// `c ⌢ φ` for a `p`-chain and a `k`-cochain with `k <= p`.
pub fn cap_chain(k: &SimplicialComplex, c: &Chain, phi: &Cochain) -> Result<Chain> {
    c.check_on(k)?;
    phi.check_on(k)?;
    if phi.ring != c.ring {
        return Err(Error::RingMismatch { expected: c.ring, found: phi.ring });
    }
    if phi.degree > c.degree {
        return Err(Error::DegreeMismatch { expected: c.degree, found: phi.degree });
    }
    let (p, q) = (c.degree, phi.degree);
    let mut out = vec![BigInt::ZERO; k.count(p - q)];
    for (i, coeff) in c.coeffs.iter().enumerate() {
        if coeff == &BigInt::ZERO {
            continue;
        }
        let s = k.simplex(p, i);
        let front = k.index_of(&s[..=q]).expect("face present");
        let value = &phi.values[front];
        if value == &BigInt::ZERO {
            continue;
        }
        let back = k.index_of(&s[q..]).expect("face present");
        out[back] += coeff * value;
    }
    Ok(Chain::new(p - q, c.ring, out))
}

/// Matrix of `φ ↦ c ⌢ φ` from `C^k` to `C_{p-k}`.
pub fn cap_matrix(k: &SimplicialComplex, c: &Chain, degree: usize) -> Result<IntegerMatrix> {
    c.check_on(k)?;
    if degree > c.degree {
        return Err(Error::DegreeMismatch { expected: c.degree, found: degree });
    }
    let p = c.degree;
    let entries = c.coeffs.iter().enumerate().filter(|(_, x)| *x != &BigInt::ZERO).map(|(i, x)| {
        let s = k.simplex(p, i);
        let front = k.index_of(&s[..=degree]).expect("face present");
        let back = k.index_of(&s[degree..]).expect("face present");
        (back, front, x.clone())
    });
    Ok(IntegerMatrix::from_triplets(k.count(p - degree), k.count(degree), entries).reduce(c.ring))
}

#[derive(Clone, Debug)]
pub struct DualityMap {
    pub k: isize,
    pub ring: Ring,
    /// `C^k -> C_{n-k}`; empty for degrees outside `0..=n`.
    pub chain_matrix: IntegerMatrix,
    /// `H^k`, absent for degrees outside `0..=n`.
    pub source: Option<HomologyGroup>,
    /// `H_{n-k}`, absent for degrees outside `0..=n`.
    pub target: Option<HomologyGroup>,
    pub induced: InducedMap,
}

impl DualityMap {
    pub fn iso(&self) -> bool {
        self.induced.iso
    }
}

fn check_preconditions(cert: &ManifoldCertificate, ring: Ring) -> Result<()> {
    if !cert.is_closed_and_connected() {
        return Err(Error::NotClosed);
    }
    if ring == Ring::Integers && !cert.orientable {
        return Err(Error::NotOrientable);
    }
    Ok(())
}

/// The duality map in degree `k`; degrees outside `0..=n` give the zero map
/// between zero groups, which is an isomorphism.
pub fn duality_map(k: &SimplicialComplex, cert: &ManifoldCertificate, ring: Ring, degree: isize) -> Result<DualityMap> {
    check_preconditions(cert, ring)?;
    let n = k.dim();
    if degree < 0 || degree as usize > n {
        let empty = IntegerMatrix::zeros(0, 0);
        let certificate = (ring == Ring::Integers).then(|| smith_normal_form(&empty));
        return Ok(DualityMap {
            k: degree,
            ring,
            chain_matrix: empty.clone(),
            source: None,
            target: None,
            induced: InducedMap { ring, matrix: empty, certificate, invariant_factors: Vec::new(), rank: 0, iso: true },
        });
    }
    let d = degree as usize;
    let fundamental = fundamental_class(k, cert, ring)?;
    let chain_matrix = cap_matrix(k, &fundamental.chain, d)?;
    let source = cohomology(k, d, ring)?;
    let target = homology(k, n - d, ring)?;
    let induced = induced_map(&source, &target, |g| ring.reduce_vec(chain_matrix.mul_vec(g))).map_err(|e| match e {
        Error::NotACycle => Error::Invariant(format!("cap product sends a degree {d} cocycle to a non-cycle")),
        other => other,
    })?;
    Ok(DualityMap { k: degree, ring, chain_matrix, source: Some(source), target: Some(target), induced })
}

/// One generator written as `coefficient*[labels]` terms.
#[derive(Clone, Debug, Serialize)]
pub struct BasisTerm {
    pub simplex: Vec<usize>,
    #[serde(serialize_with = "crate::report::serialize_bigint")]
    pub coefficient: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityRecord {
    pub k: isize,
    pub ring: Ring,
    pub source_betti: usize,
    #[serde(with = "bigint_list")]
    pub source_torsion: Vec<BigInt>,
    pub target_betti: usize,
    #[serde(with = "bigint_list")]
    pub target_torsion: Vec<BigInt>,
    #[serde(serialize_with = "bigint_matrix::serialize")]
    pub induced_matrix: Vec<Vec<BigInt>>,
    #[serde(with = "bigint_list")]
    pub invariant_factors: Vec<BigInt>,
    pub iso: bool,
    pub source_basis: Vec<Vec<BasisTerm>>,
    pub target_basis: Vec<Vec<BasisTerm>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub n: usize,
    pub ring: Ring,
    pub degrees: Vec<DualityRecord>,
    pub pass: bool,
}

fn basis(k: &SimplicialComplex, degree: usize, g: &HomologyGroup) -> Vec<Vec<BasisTerm>> {
    let labels = k.labels();
    g.generators
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| *x != &BigInt::ZERO)
                .map(|(i, x)| BasisTerm {
                    simplex: k.simplex(degree, i).iter().map(|&u| labels[u]).collect(),
                    coefficient: x.clone(),
                })
                .collect()
        })
        .collect()
}

impl DualityRecord {
    pub fn from_map(k: &SimplicialComplex, map: &DualityMap) -> Self {
        let n = k.dim() as isize;
        let summary = |g: &Option<HomologyGroup>| g.as_ref().map_or((0, Vec::new()), |g| (g.betti, g.torsion.clone()));
        let (source_betti, source_torsion) = summary(&map.source);
        let (target_betti, target_torsion) = summary(&map.target);
        DualityRecord {
            k: map.k,
            ring: map.ring,
            source_betti,
            source_torsion,
            target_betti,
            target_torsion,
            induced_matrix: map.induced.matrix.to_dense(),
            invariant_factors: map.induced.invariant_factors.clone(),
            iso: map.induced.iso,
            source_basis: map.source.as_ref().map_or_else(Vec::new, |g| basis(k, map.k as usize, g)),
            target_basis: map.target.as_ref().map_or_else(Vec::new, |g| basis(k, (n - map.k) as usize, g)),
        }
    }
}

/// Runs the duality map in every degree `0..=n`.
pub fn verify_duality(k: &SimplicialComplex, cert: &ManifoldCertificate, ring: Ring) -> Result<DualityReport> {
    check_preconditions(cert, ring)?;
    let degrees = (0..=k.dim() as isize)
        .map(|d| duality_map(k, cert, ring, d).map(|m| DualityRecord::from_map(k, &m)))
        .collect::<Result<Vec<_>>>()?;
    let pass = degrees.iter().all(|r| r.iso);
    Ok(DualityReport { n: k.dim(), ring, degrees, pass })
}

fn format_basis(b: &[Vec<BasisTerm>]) -> String {
    let gens: Vec<String> = b
        .iter()
        .map(|g| {
            let terms: Vec<String> = g.iter().map(|t| format!("{}*{}", t.coefficient, format_list(&t.simplex))).collect();
            format!("{{{}}}", terms.join(" "))
        })
        .collect();
    format!("[{}]", gens.join(","))
}

impl DualityReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("duality n={} ring={}\n", self.n, self.ring);
        for r in &self.degrees {
            out += &format!(
                "k={} ring={} source_betti={} source_torsion={} target_betti={} target_torsion={} matrix={} factors={} iso={}\n",
                r.k,
                r.ring,
                r.source_betti,
                format_list(&r.source_torsion),
                r.target_betti,
                format_list(&r.target_torsion),
                format_matrix(&r.induced_matrix),
                format_list(&r.invariant_factors),
                r.iso
            );
            out += &format!("basis k={} side=source generators={}\n", r.k, format_basis(&r.source_basis));
            out += &format!("basis k={} side=target generators={}\n", r.k, format_basis(&r.target_basis));
        }
        out += &format!("verdict={}\n", if self.pass { "pass" } else { "fail" });
        out
    }
}
