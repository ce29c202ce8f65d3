//! The dual block cellulation of a closed pseudomanifold.
//!
//! The dual `k`-cell of an `(n-k)`-simplex `σ` is the union of the
//! subdivision simplices spanned by flags `σ = τ_0 < τ_1 < ... < τ_k` running
//! from `σ` up to a top simplex. Over the integers each flag simplex is
//! weighted by the sign it carries in the subdivided fundamental class,
//! relative to the lexicographic flag of `σ` itself, so the blocks are
//! oriented transversally to `σ`. Incidence numbers are read off the
//! boundaries of these chains and checked exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::chain::coboundary_matrix;
use crate::complex::{barycentric_subdivision, flag_sign, ManifoldCertificate, SimplicialComplex, Subdivision};
use crate::error::{Error, Result};
use crate::homology::{cohomology, homology_from_boundaries, induced_map, HomologyGroup, HomologyRecord, InducedMap, Variance};
use crate::matrix::IntegerMatrix;
use crate::report::{bigint_list, bigint_matrix, format_list, format_matrix};
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct DualCell {
    /// Index of the centre simplex, of dimension `n - k`.
    pub center: usize,
    /// Subdivision `k`-simplices making up the block, with coefficients.
    pub block: Vec<(usize, BigInt)>,
}

#[derive(Clone, Debug)]
pub struct DualComplex {
    pub n: usize,
    /// `Integers` when built from an orientation, otherwise `Mod2`.
    pub ring: Ring,
    pub subdivision: Subdivision,
    /// `cells[k][i]` is the dual `k`-cell of the simplex `(n - k, i)`.
    pub cells: Vec<Vec<DualCell>>,
    /// `incidence[k]`: dual `k`-cells to dual `(k-1)`-cells; `incidence[0]` has no rows.
    pub incidence: Vec<IntegerMatrix>,
}

impl DualComplex {
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) }).sum()
    }

    /// Incidence matrix `k` over `ring`.
    pub fn incidence_over(&self, k: usize, ring: Ring) -> Result<IntegerMatrix> {
        if ring == Ring::Integers && self.ring != Ring::Integers {
            return Err(Error::NotOrientable);
        }
        Ok(self.incidence[k].reduce(ring))
    }

    /// Cellular homology of the dual complex in degree `j`.
    pub fn homology(&self, j: usize, ring: Ring) -> Result<HomologyGroup> {
        if j > self.n {
            return Err(Error::DegreeOutOfRange { degree: j, max: self.n });
        }
        let a = self.incidence_over(j, ring)?;
        let b = if j < self.n {
            self.incidence_over(j + 1, ring)?
        } else {
            IntegerMatrix::zeros(self.cells[j].len(), 0)
        };
        Ok(homology_from_boundaries(&a, &b, j, ring, Variance::Homology))
    }
}

/// Builds the dual block complex.
pub fn dual_complex(k: &SimplicialComplex, cert: &ManifoldCertificate) -> Result<DualComplex> {
    if !cert.is_closed_pseudomanifold {
        return Err(Error::NotClosed);
    }
    let n = k.dim();
    let sd = barycentric_subdivision(k);
    let ring = if cert.orientable { Ring::Integers } else { Ring::Mod2 };
    let orientation = cert.orientation.as_deref();
    let cofaces: Vec<Vec<Vec<usize>>> = (0..=n).map(|d| k.cofaces(d)).collect();

    let mut cells = Vec::with_capacity(n + 1);
    for dk in 0..=n {
        let d = n - dk;
        let mut level = Vec::with_capacity(k.count(d));
        for center in 0..k.count(d) {
            let mut block = Vec::new();
            let mut ordering = k.simplex(d, center).clone();
            let mut path = vec![sd.barycenter(d, center)];
            collect_flags(k, &sd, &cofaces, d, center, &mut ordering, &mut path, &mut |ordering, path, top| {
                let idx = sd.complex.index_of(path).expect("flag present");
                let c = match orientation {
                    Some(o) => i64::from(o[top]) * i64::from(flag_sign(ordering)),
                    None => 1,
                };
                block.push((idx, BigInt::from(c)));
            });
            block.sort_by_key(|e| e.0);
            level.push(DualCell { center, block });
        }
        cells.push(level);
    }

    let mut incidence = vec![IntegerMatrix::zeros(0, cells[0].len())];
    for dk in 1..=n {
        let d = n - dk;
        let mut entries = Vec::new();
        for (col, cell) in cells[dk].iter().enumerate() {
            let mut bd: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (idx, c) in &cell.block {
                for (i, f) in sd.complex.facets(dk, *idx).into_iter().enumerate() {
                    let term = if i % 2 == 0 { c.clone() } else { -c };
                    *bd.entry(f).or_default() += term;
                }
            }
            for &tau in &cofaces[d][col] {
                let (probe, c0) = &cells[dk - 1][tau].block[0];
                let inc = ring.reduce(bd.get(probe).cloned().unwrap_or_default() * c0);
                for (idx, c) in &cells[dk - 1][tau].block {
                    *bd.entry(*idx).or_default() -= &inc * c;
                }
                if inc != BigInt::ZERO {
                    entries.push((tau, col, inc));
                }
            }
            if bd.into_values().any(|x| ring.reduce(x) != BigInt::ZERO) {
                return Err(Error::Invariant(format!("boundary of dual {dk}-cell {col} is not a sum of dual cells")));
            }
        }
        incidence.push(IntegerMatrix::from_triplets(cells[dk - 1].len(), cells[dk].len(), entries));
    }
    Ok(DualComplex { n, ring, subdivision: sd, cells, incidence })
}

#[allow(clippy::too_many_arguments)]
fn collect_flags(
    k: &SimplicialComplex,
    sd: &Subdivision,
    cofaces: &[Vec<Vec<usize>>],
    d: usize,
    current: usize,
    ordering: &mut Vec<usize>,
    path: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize], &[usize], usize),
) {
    if d == k.dim() {
        visit(ordering, path, current);
        return;
    }
    let here = k.simplex(d, current);
    for &tau in &cofaces[d][current] {
        let added = *k.simplex(d + 1, tau).iter().find(|v| !here.contains(v)).expect("coface adds a vertex");
        ordering.push(added);
        path.push(sd.barycenter(d + 1, tau));
        collect_flags(k, sd, cofaces, d + 1, tau, ordering, path, visit);
        ordering.pop();
        path.pop();
    }
}

/// The cochain-to-dual-chain correspondence `T_k : C^k(K) -> C_{n-k}(dual)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCorrespondence {
    pub ring: Ring,
    /// `signs[k][i]`: `T_k` sends the indicator of `(k, i)` to this sign times its dual cell.
    pub signs: Vec<Vec<i8>>,
    /// `eps[k]` for `0 <= k < n`, with `T_{k+1} δ_k = eps[k] ∂ T_k`.
    pub eps: Vec<i8>,
}

impl DualCorrespondence {
    pub fn apply(&self, degree: usize, values: &[BigInt]) -> Vec<BigInt> {
        values.iter().zip(&self.signs[degree]).map(|(v, &s)| self.ring.reduce(v * BigInt::from(s))).collect()
    }
}

/// Computes `T` and measures the sign table, verifying the chain-map identity
/// in every degree.
pub fn dual_correspondence(k: &SimplicialComplex, dual: &DualComplex, ring: Ring) -> Result<DualCorrespondence> {
    let n = dual.n;
    let signs: Vec<Vec<i8>> = (0..=n).map(|d| vec![1; k.count(d)]).collect();
    let mut eps = Vec::with_capacity(n);
    for d in 0..n {
        let delta = coboundary_matrix(k, d, ring);
        let inc = dual.incidence_over(n - d, ring)?;
        let e: i8 = match ring {
            Ring::Mod2 => 1,
            Ring::Integers => {
                let (j, v) = delta.row(0).first().expect("coboundary is nonzero").clone();
                if inc.get(0, j) == v {
                    1
                } else {
                    -1
                }
            }
        };
        let scaled = delta.map(|x| x * BigInt::from(e));
        if scaled != inc {
            return Err(Error::Invariant(format!("dual incidence in degree {} is not a signed coboundary", n - d)));
        }
        eps.push(e);
    }
    Ok(DualCorrespondence { ring, signs, eps })
}

/// The map `H^k(K) -> H_{n-k}(dual)` induced by `T_k`.
pub fn dual_induced_map(
    k: &SimplicialComplex,
    dual: &DualComplex,
    corr: &DualCorrespondence,
    degree: usize,
) -> Result<(HomologyGroup, HomologyGroup, InducedMap)> {
    let source = cohomology(k, degree, corr.ring)?;
    let target = dual.homology(dual.n - degree, corr.ring)?;
    let map = induced_map(&source, &target, |g| corr.apply(degree, g))?;
    Ok((source, target, map))
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceRecord {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    #[serde(serialize_with = "bigint_matrix::serialize")]
    pub entries: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualMapRecord {
    pub k: usize,
    pub source: HomologyRecord,
    pub target: HomologyRecord,
    #[serde(serialize_with = "bigint_matrix::serialize")]
    pub induced_matrix: Vec<Vec<BigInt>>,
    #[serde(with = "bigint_list")]
    pub invariant_factors: Vec<BigInt>,
    pub iso: bool,
}

/// Dump of the dual complex together with the correspondence verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct DualReport {
    pub n: usize,
    pub ring: Ring,
    pub cells: Vec<usize>,
    pub incidence: Vec<IncidenceRecord>,
    pub homology: Vec<HomologyRecord>,
    pub eps: Vec<i8>,
    pub maps: Vec<DualMapRecord>,
    pub pass: bool,
}

pub fn dual_report(k: &SimplicialComplex, cert: &ManifoldCertificate, ring: Ring) -> Result<DualReport> {
    if ring == Ring::Integers && !cert.orientable {
        return Err(Error::NotOrientable);
    }
    let dual = dual_complex(k, cert)?;
    let corr = dual_correspondence(k, &dual, ring)?;
    let incidence = (1..=dual.n)
        .map(|d| {
            let m = dual.incidence_over(d, ring).expect("ring checked");
            IncidenceRecord { degree: d, rows: m.rows(), cols: m.cols(), entries: m.to_dense() }
        })
        .collect();
    let homology = (0..=dual.n).map(|j| dual.homology(j, ring).map(|h| h.record())).collect::<Result<_>>()?;
    let mut maps = Vec::new();
    for d in 0..=dual.n {
        let (source, target, map) = dual_induced_map(k, &dual, &corr, d)?;
        maps.push(DualMapRecord {
            k: d,
            source: source.record(),
            target: target.record(),
            induced_matrix: map.matrix.to_dense(),
            invariant_factors: map.invariant_factors,
            iso: map.iso,
        });
    }
    let pass = maps.iter().all(|m| m.iso);
    Ok(DualReport { n: dual.n, ring, cells: dual.cell_counts(), incidence, homology, eps: corr.eps, maps, pass })
}

impl DualReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("dual n={} ring={}\n", self.n, self.ring);
        for (d, c) in self.cells.iter().enumerate() {
            out += &format!("cells degree={d} count={c}\n");
        }
        for r in &self.incidence {
            out += &format!("incidence degree={} rows={} cols={} entries={}\n", r.degree, r.rows, r.cols, format_matrix(&r.entries));
        }
        for h in &self.homology {
            out += &format!("dual_homology degree={} ring={} betti={} torsion={}\n", h.degree, h.ring, h.betti, format_list(&h.torsion));
        }
        for (d, e) in self.eps.iter().enumerate() {
            out += &format!("eps k={d} value={e}\n");
        }
        for m in &self.maps {
            out += &format!(
                "map k={} source_betti={} source_torsion={} target_betti={} target_torsion={} matrix={} factors={} iso={}\n",
                m.k,
                m.source.betti,
                format_list(&m.source.torsion),
                m.target.betti,
                format_list(&m.target.torsion),
                format_matrix(&m.induced_matrix),
                format_list(&m.invariant_factors),
                m.iso
            );
        }
        out += &format!("verdict={}\n", if self.pass { "pass" } else { "fail" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, validate_closed_manifold};

    fn sphere2() -> SimplicialComplex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    fn torus7() -> SimplicialComplex {
        let mut t = Vec::new();
        for i in 0..7 {
            t.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            t.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        build_complex(&t).unwrap()
    }

    #[test]
    fn sphere_cells_and_incidence() {
        let k = sphere2();
        let cert = validate_closed_manifold(&k);
        let dual = dual_complex(&k, &cert).unwrap();
        assert_eq!(dual.cell_counts(), vec![4, 6, 4]);
        assert_eq!(dual.euler_characteristic(), 2);
        assert!(dual.incidence[1].mul(&dual.incidence[2]).is_zero());
        for cell in &dual.cells[2] {
            // a vertex of the sphere has three cofaces, six flags to a triangle
            assert_eq!(cell.block.len(), 6);
        }
    }

    #[test]
    fn torus_correspondence() {
        let k = torus7();
        let cert = validate_closed_manifold(&k);
        let dual = dual_complex(&k, &cert).unwrap();
        assert_eq!(dual.cell_counts(), vec![14, 21, 7]);
        let corr = dual_correspondence(&k, &dual, Ring::Integers).unwrap();
        assert_eq!(corr.eps.len(), 2);
        for d in 0..=2 {
            let (_, _, map) = dual_induced_map(&k, &dual, &corr, d).unwrap();
            assert!(map.iso, "degree {d}");
        }
    }

    #[test]
    fn open_complex_rejected() {
        let k = build_complex(&[vec![0, 1]]).unwrap();
        let cert = validate_closed_manifold(&k);
        assert!(matches!(dual_complex(&k, &cert), Err(Error::NotClosed)));
    }
}
