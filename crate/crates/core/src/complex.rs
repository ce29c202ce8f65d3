//! Simplicial complexes: construction, closed-pseudomanifold validation,
//! orientation, fundamental class and barycentric subdivision.

use std::collections::{BTreeSet, HashMap, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;

use crate::chain::{boundary_or_zero, Chain};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Strictly increasing vertex tuple.
pub type Simplex = Vec<usize>;

/// A finite pure simplicial complex with canonically ordered simplices.
///
/// Simplices of each dimension are sorted lexicographically; that order fixes
/// the row and column indices of every matrix built from the complex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    labels: Vec<usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices && self.labels == other.labels
    }
}

impl SimplicialComplex {
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Number of `k`-simplices; zero above the dimension.
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, |s| s.len())
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], |s| s.as_slice())
    }

    pub fn simplex(&self, k: usize, i: usize) -> &Simplex {
        &self.simplices[k][i]
    }

    /// Index of a sorted vertex tuple within its dimension.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.index.get(k)?.get(simplex).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Original vertex label of each dense vertex index.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Dense index of an original vertex label.
    pub fn vertex_of_label(&self, label: usize) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Indices of the facets of `(k, i)`; facet `j` omits vertex `j`.
    pub fn facets(&self, k: usize, i: usize) -> Vec<usize> {
        let s = &self.simplices[k][i];
        (0..s.len())
            .map(|j| {
                let mut f = s.clone();
                f.remove(j);
                self.index[k - 1][&f]
            })
            .collect()
    }

    /// Edge index of the pair `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return None;
        }
        self.index_of(&[u.min(v), u.max(v)])
    }

    /// For each `d`-simplex, the indices of the `(d+1)`-simplices containing it.
    pub fn cofaces(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count(d)];
        if d < self.dim() {
            for t in 0..self.count(d + 1) {
                for f in self.facets(d + 1, t) {
                    out[f].push(t);
                }
            }
        }
        out
    }

    /// Top simplices written with the original vertex labels.
    pub fn top_simplices_labelled(&self) -> Vec<Vec<usize>> {
        self.simplices(self.dim()).iter().map(|s| s.iter().map(|&v| self.labels[v]).collect()).collect()
    }
}

/// Builds the face closure of a list of top simplices.
///
/// Vertex labels may be sparse; they are re-indexed densely in increasing
/// label order and the mapping is kept in [`SimplicialComplex::labels`].
pub fn build_complex(top_simplices: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let first = top_simplices.first().ok_or(Error::EmptyComplex)?;
    let arity = first.len();
    if arity == 0 {
        return Err(Error::EmptyComplex);
    }
    for (index, s) in top_simplices.iter().enumerate() {
        if s.len() != arity {
            return Err(Error::MixedDimension { index, expected: arity, found: s.len() });
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DegenerateSimplex { index, vertex: w[0] });
        }
    }
    let labels: Vec<usize> = top_simplices.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let dense = |v: usize| labels.binary_search(&v).expect("label present");

    let n = arity - 1;
    let mut levels: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); n + 1];
    for s in top_simplices {
        let mut t: Simplex = s.iter().map(|&v| dense(v)).collect();
        t.sort_unstable();
        for mask in 1u64..(1u64 << arity) {
            let face: Simplex = (0..arity).filter(|b| mask >> b & 1 == 1).map(|b| t[b]).collect();
            levels[face.len() - 1].insert(face);
        }
    }
    let simplices: Vec<Vec<Simplex>> = levels.into_iter().map(|l| l.into_iter().collect()).collect();
    let index = simplices
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    Ok(SimplicialComplex { simplices, index, labels })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    /// A codimension-one simplex with a number of cofaces other than two.
    CofaceCount(usize),
    /// Top simplices fall into more than one component across shared facets.
    Disconnected,
    /// Orientation propagation reached this facet with inconsistent signs.
    OrientationConflict,
    ZeroDimensional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub dimension: usize,
    /// Vertices, in original labels.
    pub simplex: Vec<usize>,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldCertificate {
    pub is_closed_pseudomanifold: bool,
    pub is_connected: bool,
    pub orientable: bool,
    /// Sign of each top simplex; present iff orientable.
    pub orientation: Option<Vec<i8>>,
    pub failures: Vec<Diagnostic>,
}

impl ManifoldCertificate {
    pub fn is_closed_and_connected(&self) -> bool {
        self.is_closed_pseudomanifold && self.is_connected
    }
}

/// Checks the closed-pseudomanifold condition and propagates an orientation.
///
/// Connectivity is strong connectivity: top simplices linked through shared
/// codimension-one faces. Orientation propagation starts at the first top
/// simplex of each component with sign `+1` and proceeds breadth-first.
pub fn validate_closed_manifold(k: &SimplicialComplex) -> ManifoldCertificate {
    let n = k.dim();
    let label = |s: &Simplex| s.iter().map(|&v| k.labels[v]).collect::<Vec<_>>();
    if n == 0 {
        return ManifoldCertificate {
            is_closed_pseudomanifold: false,
            is_connected: k.vertex_count() == 1,
            orientable: false,
            orientation: None,
            failures: vec![Diagnostic { dimension: 0, simplex: Vec::new(), reason: FailureReason::ZeroDimensional }],
        };
    }
    let tops = k.count(n);
    // codimension-one face -> (top, position of the omitted vertex)
    let mut cofaces: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k.count(n - 1)];
    for t in 0..tops {
        for (pos, f) in k.facets(n, t).into_iter().enumerate() {
            cofaces[f].push((t, pos));
        }
    }
    let mut failures = Vec::new();
    for (f, cs) in cofaces.iter().enumerate() {
        if cs.len() != 2 {
            failures.push(Diagnostic {
                dimension: n - 1,
                simplex: label(k.simplex(n - 1, f)),
                reason: FailureReason::CofaceCount(cs.len()),
            });
        }
    }
    let closed = failures.is_empty();

    let mut sign: Vec<i8> = vec![0; tops];
    let mut components = 0;
    let mut conflict = false;
    for root in 0..tops {
        if sign[root] != 0 {
            continue;
        }
        components += 1;
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            for (pos, f) in k.facets(n, t).into_iter().enumerate() {
                for &(u, upos) in &cofaces[f] {
                    if u == t {
                        continue;
                    }
                    // induced signs sign[t]*(-1)^pos and sign[u]*(-1)^upos must cancel
                    let want = if (pos + upos) % 2 == 0 { -sign[t] } else { sign[t] };
                    if sign[u] == 0 {
                        sign[u] = want;
                        queue.push_back(u);
                    } else if closed && sign[u] != want && t < u {
                        conflict = true;
                        failures.push(Diagnostic {
                            dimension: n - 1,
                            simplex: label(k.simplex(n - 1, f)),
                            reason: FailureReason::OrientationConflict,
                        });
                    }
                }
            }
        }
    }
    let connected = components == 1;
    if !connected {
        failures.push(Diagnostic { dimension: n, simplex: Vec::new(), reason: FailureReason::Disconnected });
    }
    let orientable = closed && !conflict;
    ManifoldCertificate {
        is_closed_pseudomanifold: closed,
        is_connected: connected,
        orientable,
        orientation: orientable.then_some(sign),
        failures,
    }
}

/// The fundamental cycle `[M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalClass {
    pub ring: Ring,
    pub chain: Chain,
}

pub fn fundamental_class(k: &SimplicialComplex, cert: &ManifoldCertificate, ring: Ring) -> Result<FundamentalClass> {
    if !cert.is_closed_and_connected() {
        return Err(Error::NotClosed);
    }
    let n = k.dim();
    let coeffs: Vec<BigInt> = match ring {
        Ring::Integers => {
            let orientation = cert.orientation.as_ref().ok_or(Error::NotOrientable)?;
            orientation.iter().map(|&s| BigInt::from(s)).collect()
        }
        Ring::Mod2 => vec![BigInt::from(1); k.count(n)],
    };
    let chain = Chain::new(n, ring, coeffs);
    let bd = boundary_or_zero(k, n, ring).mul_vec(&chain.coeffs);
    if bd.iter().any(|x| ring.reduce(x.clone()) != BigInt::from(0)) {
        return Err(Error::Invariant("fundamental class is not a cycle".into()));
    }
    Ok(FundamentalClass { ring, chain })
}

/// Barycentric subdivision together with the vertex provenance map.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// New vertex -> `(dimension, index)` of the simplex it is the barycenter of.
    pub provenance: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl Subdivision {
    /// Vertex of the subdivision sitting at the barycenter of `(k, i)`.
    pub fn barycenter(&self, k: usize, i: usize) -> usize {
        self.offsets[k] + i
    }

    /// Subdivision simplex spanned by a flag given as a vertex ordering of a
    /// simplex of the original complex: the flag is the chain of prefixes.
    pub(crate) fn flag_simplex(&self, original: &SimplicialComplex, ordering: &[usize]) -> usize {
        let verts: Vec<usize> = (1..=ordering.len())
            .map(|len| {
                let mut prefix = ordering[..len].to_vec();
                prefix.sort_unstable();
                self.barycenter(len - 1, original.index_of(&prefix).expect("face present"))
            })
            .collect();
        self.complex.index_of(&verts).expect("flag present")
    }

    /// The subdivision chain map on a chain of the original complex.
    pub fn subdivide_chain(&self, original: &SimplicialComplex, chain: &Chain) -> Chain {
        let k = chain.degree;
        let mut out = vec![BigInt::from(0); self.complex.count(k)];
        for (i, c) in chain.coeffs.iter().enumerate() {
            if c == &BigInt::from(0) {
                continue;
            }
            let sigma = original.simplex(k, i);
            for ordering in sigma.iter().copied().permutations(k + 1) {
                let s = flag_sign(&ordering);
                let idx = self.flag_simplex(original, &ordering);
                out[idx] += c * BigInt::from(s);
            }
        }
        Chain::new(k, chain.ring, out)
    }
}

/// Sign of a flag in the subdivision of its top simplex, given as the order
/// in which the vertices are added.
pub(crate) fn flag_sign(ordering: &[usize]) -> i8 {
    let mut parity = 0usize;
    for j in 1..ordering.len() {
        let pos = ordering[..j].iter().filter(|&&v| v < ordering[j]).count();
        parity += j + pos;
    }
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> Subdivision {
    let n = k.dim();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut provenance = Vec::new();
    for d in 0..=n {
        offsets.push(provenance.len());
        provenance.extend((0..k.count(d)).map(|i| (d, i)));
    }
    let mut tops = Vec::with_capacity(k.count(n) * (1..=n + 1).product::<usize>());
    for top in k.simplices(n) {
        for ordering in top.iter().copied().permutations(n + 1) {
            let flag: Vec<usize> = (1..=n + 1)
                .map(|len| {
                    let mut prefix = ordering[..len].to_vec();
                    prefix.sort_unstable();
                    offsets[len - 1] + k.index_of(&prefix).expect("face present")
                })
                .collect();
            tops.push(flag);
        }
    }
    let complex = build_complex(&tops).expect("flags form a pure complex");
    Subdivision { complex, provenance, offsets }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere2() -> SimplicialComplex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        let t = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
            [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
        ];
        build_complex(&t.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn tetrahedron_boundary_f_vector() {
        assert_eq!(sphere2().f_vector(), vec![4, 6, 4]);
    }

    #[test]
    fn single_edge() {
        let k = build_complex(&[vec![0, 1]]).unwrap();
        assert_eq!(k.f_vector(), vec![2, 1]);
        let cert = validate_closed_manifold(&k);
        assert!(!cert.is_closed_pseudomanifold);
        let bad: Vec<_> = cert.failures.iter().filter(|d| d.reason == FailureReason::CofaceCount(1)).collect();
        assert_eq!(bad.len(), 2);
        assert!(matches!(fundamental_class(&k, &cert, Ring::Mod2), Err(Error::NotClosed)));
    }

    #[test]
    fn input_errors() {
        assert!(matches!(build_complex(&[vec![0, 1, 2], vec![1, 2]]), Err(Error::MixedDimension { index: 1, .. })));
        assert!(matches!(build_complex(&[vec![0, 1, 1]]), Err(Error::DegenerateSimplex { vertex: 1, .. })));
        assert!(matches!(build_complex(&[]), Err(Error::EmptyComplex)));
    }

    #[test]
    fn sparse_labels_are_reindexed() {
        let k = build_complex(&[vec![10, 30, 20]]).unwrap();
        assert_eq!(k.labels(), &[10, 20, 30]);
        assert_eq!(k.simplex(2, 0), &vec![0, 1, 2]);
        assert_eq!(k.vertex_of_label(30), Some(2));
        assert_eq!(k.top_simplices_labelled(), vec![vec![10, 20, 30]]);
    }

    #[test]
    fn duplicate_tops_collapse() {
        let k = build_complex(&[vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn sphere_orientation_is_coherent() {
        let k = sphere2();
        let cert = validate_closed_manifold(&k);
        assert!(cert.is_closed_pseudomanifold && cert.is_connected && cert.orientable);
        let o = cert.orientation.clone().unwrap();
        assert_eq!(o[0], 1);
        let fc = fundamental_class(&k, &cert, Ring::Integers).unwrap();
        assert!(fc.chain.coeffs.iter().all(|c| c == &BigInt::from(1) || c == &BigInt::from(-1)));
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        let k = rp2();
        let cert = validate_closed_manifold(&k);
        assert!(cert.is_closed_pseudomanifold && cert.is_connected);
        assert!(!cert.orientable && cert.orientation.is_none());
        assert!(cert.failures.iter().any(|d| d.reason == FailureReason::OrientationConflict));
        assert!(matches!(fundamental_class(&k, &cert, Ring::Integers), Err(Error::NotOrientable)));
        let fc = fundamental_class(&k, &cert, Ring::Mod2).unwrap();
        assert!(fc.chain.coeffs.iter().all(|c| c == &BigInt::from(1)));
    }

    #[test]
    fn two_disjoint_spheres_are_disconnected() {
        let mut t: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        t.extend(t.clone().into_iter().map(|s| s.into_iter().map(|v| v + 4).collect::<Vec<_>>()));
        let cert = validate_closed_manifold(&build_complex(&t).unwrap());
        assert!(cert.is_closed_pseudomanifold && !cert.is_connected);
    }

    #[test]
    fn subdivision_counts() {
        let edge = barycentric_subdivision(&build_complex(&[vec![0, 1]]).unwrap());
        assert_eq!(edge.complex.f_vector(), vec![3, 2]);
        assert_eq!(edge.provenance[2], (1, 0));
        let s = barycentric_subdivision(&sphere2());
        assert_eq!(s.complex.f_vector(), vec![14, 36, 24]);
        assert_eq!(s.complex.euler_characteristic(), 2);
    }

    #[test]
    fn subdivision_commutes_with_boundary() {
        let k = sphere2();
        let sd = barycentric_subdivision(&k);
        for d in 1..=2 {
            for i in 0..k.count(d) {
                let mut coeffs = vec![BigInt::from(0); k.count(d)];
                coeffs[i] = BigInt::from(1);
                let c = Chain::new(d, Ring::Integers, coeffs);
                let lhs = boundary_or_zero(&sd.complex, d, Ring::Integers).mul_vec(&sd.subdivide_chain(&k, &c).coeffs);
                let bc = Chain::new(d - 1, Ring::Integers, boundary_or_zero(&k, d, Ring::Integers).mul_vec(&c.coeffs));
                assert_eq!(lhs, sd.subdivide_chain(&k, &bc).coeffs);
            }
        }
    }

    #[test]
    fn flag_signs_of_an_edge() {
        assert_eq!(flag_sign(&[0, 1]), 1);
        assert_eq!(flag_sign(&[1, 0]), -1);
    }
}
