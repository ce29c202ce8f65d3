//! Level sets of the circle-valued map defined by a 1-cocycle.
//!
//! A cocycle is first normalized to vanish on a breadth-first spanning tree.
//! On each top simplex `[a, ...]` the normalized cocycle lifts to an integer
//! function with `f(a) = 0` and `f(x) = φ(a, x)`; its affine extension is the
//! local lift of the circle-valued map, and the level set at `t` is the union
//! of the lifted levels `t + m`. A crossing point is identified by its edge
//! and its position `s` along the edge from the smaller to the larger vertex,
//! which does not depend on the simplex used to compute it.
//!
//! Over `Z2` each edge with odd value is crossed once, at `s = t`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::chain::{boundary, is_cocycle, is_cycle, Chain, Cochain};
use crate::complex::{build_complex, validate_closed_manifold, SimplicialComplex};
use crate::error::{Error, Result};
use crate::io::format_rational;
use crate::ring::Ring;

/// The integrated form of a 1-cocycle.
#[derive(Clone, Debug)]
pub struct VertexPotential {
    pub ring: Ring,
    /// Circle-valued potential at the vertices; zero for integral cocycles.
    pub h: Vec<BigRational>,
    pub root: usize,
    /// Spanning forest as `(parent, child)` edges in discovery order.
    pub tree: Vec<(usize, usize)>,
    /// Integer potential `g` with `φ - δg` vanishing on the tree.
    pub g: Vec<BigInt>,
    /// The normalized cocycle `φ - δg`.
    pub normalized: Cochain,
}

impl VertexPotential {
    /// Normalized value on the edge oriented `u -> v`.
    pub fn directed(&self, k: &SimplicialComplex, u: usize, v: usize) -> BigInt {
        directed(k, &self.normalized.values, u, v)
    }
}

fn directed(k: &SimplicialComplex, values: &[BigInt], u: usize, v: usize) -> BigInt {
    let e = k.edge_index(u, v).expect("edge present");
    if u < v {
        values[e].clone()
    } else {
        -&values[e]
    }
}

fn potential(k: &SimplicialComplex, phi: &Cochain) -> Result<VertexPotential> {
    if phi.degree != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: phi.degree });
    }
    phi.check_on(k)?;
    if !is_cocycle(k, phi)? {
        return Err(Error::NotACocycle);
    }
    let ring = phi.ring;
    let nv = k.vertex_count();
    let mut neighbours = vec![Vec::new(); nv];
    for e in k.simplices(1) {
        neighbours[e[0]].push(e[1]);
        neighbours[e[1]].push(e[0]);
    }
    for n in &mut neighbours {
        n.sort_unstable();
    }
    let mut g = vec![BigInt::zero(); nv];
    let mut seen = vec![false; nv];
    let mut tree = Vec::new();
    for root in 0..nv {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &neighbours[u] {
                if !seen[v] {
                    seen[v] = true;
                    g[v] = ring.reduce(&g[u] + directed(k, &phi.values, u, v));
                    tree.push((u, v));
                    queue.push_back(v);
                }
            }
        }
    }
    let values = k
        .simplices(1)
        .iter()
        .zip(&phi.values)
        .map(|(e, x)| ring.reduce(x - (&g[e[1]] - &g[e[0]])))
        .collect();
    Ok(VertexPotential {
        ring,
        h: vec![BigRational::zero(); nv],
        root: 0,
        tree,
        g,
        normalized: Cochain::new(1, ring, values),
    })
}

/// Integrates a 1-cocycle on a surface along the breadth-first spanning tree
/// from vertex 0.
pub fn integrate_cocycle(k: &SimplicialComplex, phi: &Cochain) -> Result<VertexPotential> {
    if k.dim() != 2 {
        return Err(Error::NotASurface(k.dim()));
    }
    potential(k, phi)
}

fn regular(t: &BigRational) -> Result<BigRational> {
    let r = t - t.floor();
    if r.is_zero() {
        return Err(Error::NotRegularValue(format_rational(t)));
    }
    Ok(r)
}

/// A point where a level set crosses an edge `[u, v]`, `u < v`, at
/// `(1 - s) u + s v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CrossingPoint {
    pub edge: usize,
    pub s: BigRational,
}

/// Crossing positions along an edge with normalized value `d`.
fn edge_crossings(d: &BigInt, ring: Ring, t: &BigRational) -> Vec<BigRational> {
    match ring {
        Ring::Mod2 => {
            if d.is_odd() {
                vec![t.clone()]
            } else {
                Vec::new()
            }
        }
        Ring::Integers => {
            let n = d.to_i64().expect("edge value fits in i64");
            let range = if n >= 0 { 0..n } else { n..0 };
            let den = BigRational::from_integer(d.clone());
            let mut out: Vec<BigRational> =
                range.map(|j| (t + BigRational::from_integer(BigInt::from(j))) / &den).collect();
            out.sort();
            out
        }
    }
}

struct PointTable {
    offsets: Vec<usize>,
    positions: Vec<Vec<BigRational>>,
}

impl PointTable {
    fn new(positions: Vec<Vec<BigRational>>, base: usize) -> Self {
        let mut offsets = Vec::with_capacity(positions.len());
        let mut next = base;
        for p in &positions {
            offsets.push(next);
            next += p.len();
        }
        PointTable { offsets, positions }
    }

    fn id(&self, edge: usize, s: &BigRational) -> Result<usize> {
        self.positions[edge]
            .binary_search(s)
            .map(|i| self.offsets[edge] + i)
            .map_err(|_| Error::Invariant(format!("level crossing on edge {edge} at {} not registered", format_rational(s))))
    }

    fn points(&self) -> Vec<CrossingPoint> {
        self.positions
            .iter()
            .enumerate()
            .flat_map(|(edge, ps)| ps.iter().map(move |s| CrossingPoint { edge, s: s.clone() }))
            .collect()
    }

    fn weights(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p.len()).collect()
    }
}

fn crossing_signs(pot: &VertexPotential, weights: &[usize]) -> Vec<i8> {
    pot.normalized
        .values
        .iter()
        .zip(weights)
        .map(|(x, &w)| match (w, pot.ring) {
            (0, _) => 0,
            (_, Ring::Mod2) => 1,
            _ => {
                if x.is_positive() {
                    1
                } else {
                    -1
                }
            }
        })
        .collect()
}

/// Local lift of the normalized cocycle on a simplex.
fn lift(k: &SimplicialComplex, pot: &VertexPotential, simplex: &[usize]) -> Vec<BigInt> {
    simplex.iter().map(|&x| if x == simplex[0] { BigInt::zero() } else { pot.directed(k, simplex[0], x) }).collect()
}

/// Level values `t + m` strictly between the extreme lift values.
fn levels(f: &[BigInt], t: &BigRational) -> Vec<BigRational> {
    let lo = f.iter().min().expect("nonempty").clone();
    let hi = f.iter().max().expect("nonempty").clone();
    num_iter(lo, hi).map(|m| t + BigRational::from_integer(m)).collect()
}

fn num_iter(lo: BigInt, hi: BigInt) -> impl Iterator<Item = BigInt> {
    let mut m = lo;
    std::iter::from_fn(move || {
        if m < hi {
            let out = m.clone();
            m += 1;
            Some(out)
        } else {
            None
        }
    })
}

/// Position along the edge between positions `i < j` of a simplex where the
/// lift takes the value `level`.
fn crossing_position(f: &[BigInt], i: usize, j: usize, level: &BigRational) -> Option<BigRational> {
    let (fi, fj) = (BigRational::from_integer(f[i].clone()), BigRational::from_integer(f[j].clone()));
    let crosses = (&fi < level && level < &fj) || (&fj < level && level < &fi);
    crosses.then(|| (level - &fi) / (fj - fi))
}

/// Signed or mod-2 crossing data shared by level curves and surfaces.
pub trait EdgeCrossings {
    fn ring(&self) -> Ring;
    /// Number of crossing points on each edge.
    fn edge_weights(&self) -> &[usize];
    /// Direction in which the potential increases along each edge, `0` when uncrossed.
    fn crossing_signs(&self) -> &[i8];
}

/// A level curve on a surface.
#[derive(Clone, Debug)]
pub struct NormalCurve {
    pub ring: Ring,
    pub t: BigRational,
    pub points: Vec<CrossingPoint>,
    pub edge_weights: Vec<usize>,
    pub crossing_signs: Vec<i8>,
    /// Normal arcs `(triangle, p, q)` with `p < q`.
    pub arcs: Vec<(usize, usize, usize)>,
    /// Closed components as cyclic sequences of point ids.
    pub components: Vec<Vec<usize>>,
}

impl EdgeCrossings for NormalCurve {
    fn ring(&self) -> Ring {
        self.ring
    }
    fn edge_weights(&self) -> &[usize] {
        &self.edge_weights
    }
    fn crossing_signs(&self) -> &[i8] {
        &self.crossing_signs
    }
}

fn require_closed(k: &SimplicialComplex) -> Result<()> {
    if !validate_closed_manifold(k).is_closed_pseudomanifold {
        return Err(Error::NotClosed);
    }
    Ok(())
}

/// Arcs of the level set at `t` inside one triangle, as pairs of point ids.
fn triangle_arcs(
    k: &SimplicialComplex,
    pot: &VertexPotential,
    table: &PointTable,
    tri: &[usize],
    t: &BigRational,
) -> Result<Vec<(BigRational, usize, usize)>> {
    let f = lift(k, pot, tri);
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let edge = |i: usize, j: usize| k.edge_index(tri[i], tri[j]).expect("edge present");
    let mut out = Vec::new();
    match pot.ring {
        Ring::Mod2 => {
            let odd: Vec<usize> =
                pairs.iter().map(|&(i, j)| edge(i, j)).filter(|&e| pot.normalized.values[e].is_odd()).collect();
            match odd.len() {
                0 => {}
                2 => {
                    let (p, q) = (table.id(odd[0], t)?, table.id(odd[1], t)?);
                    out.push((t.clone(), p.min(q), p.max(q)));
                }
                n => return Err(Error::Invariant(format!("triangle with {n} odd edges"))),
            }
        }
        Ring::Integers => {
            for level in levels(&f, t) {
                let mut ends = Vec::with_capacity(2);
                for &(i, j) in &pairs {
                    if let Some(s) = crossing_position(&f, i, j, &level) {
                        ends.push(table.id(edge(i, j), &s)?);
                    }
                }
                if ends.len() != 2 {
                    return Err(Error::Invariant("level meets a triangle in other than two edges".into()));
                }
                out.push((level, ends[0].min(ends[1]), ends[0].max(ends[1])));
            }
        }
    }
    Ok(out)
}

fn table_for(pot: &VertexPotential, ts: &[BigRational], base: usize) -> PointTable {
    let positions = pot
        .normalized
        .values
        .iter()
        .map(|d| {
            let mut ps: Vec<BigRational> = ts.iter().flat_map(|t| edge_crossings(d, pot.ring, t)).collect();
            ps.sort();
            ps.dedup();
            ps
        })
        .collect();
    PointTable::new(positions, base)
}

/// The level curve of `φ` at the regular value `t`.
pub fn level_curve(k: &SimplicialComplex, phi: &Cochain, t: &BigRational) -> Result<NormalCurve> {
    let pot = integrate_cocycle(k, phi)?;
    require_closed(k)?;
    let t = regular(t)?;
    let table = table_for(&pot, std::slice::from_ref(&t), 0);
    let points = table.points();
    let mut arcs = Vec::new();
    for (i, tri) in k.simplices(2).iter().enumerate() {
        arcs.extend(triangle_arcs(k, &pot, &table, tri, &t)?.into_iter().map(|(_, p, q)| (i, p, q)));
    }
    let components = trace_components(points.len(), &arcs)?;
    let edge_weights = table.weights();
    let crossing_signs = crossing_signs(&pot, &edge_weights);
    Ok(NormalCurve { ring: pot.ring, t, points, edge_weights, crossing_signs, arcs, components })
}

fn trace_components(n: usize, arcs: &[(usize, usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, &(_, p, q)) in arcs.iter().enumerate() {
        at[p].push(a);
        at[q].push(a);
    }
    if let Some(p) = at.iter().position(|v| v.len() != 2) {
        return Err(Error::Invariant(format!("crossing point {p} is an endpoint of {} arcs", at[p].len())));
    }
    let mut used = vec![false; arcs.len()];
    let mut components = Vec::new();
    for start in 0..n {
        if at[start].iter().all(|&a| used[a]) {
            continue;
        }
        let mut cycle = vec![start];
        let mut cur = start;
        let mut arc = at[start][0];
        loop {
            used[arc] = true;
            let (_, p, q) = arcs[arc];
            let next = if p == cur { q } else { p };
            if next == start {
                break;
            }
            cycle.push(next);
            cur = next;
            arc = *at[cur].iter().find(|&&a| !used[a]).expect("degree two");
        }
        components.push(cycle);
    }
    Ok(components)
}

/// Signed (or mod-2) count of crossings of a level set with a 1-cycle.
pub fn intersection_number(k: &SimplicialComplex, level: &impl EdgeCrossings, z: &Chain) -> Result<BigInt> {
    if z.degree != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: z.degree });
    }
    if z.ring != level.ring() {
        return Err(Error::RingMismatch { expected: level.ring(), found: z.ring });
    }
    if !is_cycle(k, z)? {
        return Err(Error::NotACycle);
    }
    let total: BigInt = z
        .coeffs
        .iter()
        .zip(level.edge_weights().iter().zip(level.crossing_signs()))
        .map(|(c, (&w, &s))| c * BigInt::from(w) * BigInt::from(s))
        .sum();
    Ok(level.ring().reduce(total))
}

/// Intersection numbers of a level set with each generator of `H_1(K; ring)`,
/// paired with the values of `φ` on the same cycles.
pub fn pairing_table(k: &SimplicialComplex, level: &impl EdgeCrossings, phi: &Cochain) -> Result<Vec<(BigInt, BigInt)>> {
    let h1 = crate::homology::homology(k, 1, phi.ring)?;
    h1.generators
        .iter()
        .map(|g| {
            let z = Chain::new(1, phi.ring, g.clone());
            Ok((intersection_number(k, level, &z)?, crate::chain::evaluate(phi, &z)?))
        })
        .collect()
}

/// Vertex of the refinement used by [`deform_level`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefinedVertex {
    Vertex(usize),
    Crossing(CrossingPoint),
}

/// A 2-chain whose boundary is the difference of two level curves.
#[derive(Clone, Debug)]
pub struct CoboundingChain {
    pub t0: BigRational,
    pub t1: BigRational,
    /// The surface cut along both level curves, each piece fan-triangulated.
    pub refinement: SimplicialComplex,
    /// Position of each refinement vertex label.
    pub positions: Vec<RefinedVertex>,
    pub w: Chain,
    /// The level curve at `t0` as an oriented 1-cycle of the refinement.
    pub l0: Chain,
    pub l1: Chain,
}

type Point2 = (BigRational, BigRational);

fn frame(tri: &[usize], v: &RefinedVertex, k: &SimplicialComplex) -> Point2 {
    let weight = |x: usize| -> BigRational {
        match v {
            RefinedVertex::Vertex(u) => {
                if *u == x {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            RefinedVertex::Crossing(c) => {
                let e = k.simplex(1, c.edge);
                if e[0] == x {
                    BigRational::one() - &c.s
                } else if e[1] == x {
                    c.s.clone()
                } else {
                    BigRational::zero()
                }
            }
        }
    };
    (weight(tri[1]), weight(tri[2]))
}

fn orient(p: &Point2, q: &Point2, r: &Point2) -> i8 {
    let cross = (&q.0 - &p.0) * (&r.1 - &p.1) - (&q.1 - &p.1) * (&r.0 - &p.0);
    if cross.is_positive() {
        1
    } else if cross.is_negative() {
        -1
    } else {
        0
    }
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// The region swept between the level curves at `t0` and `t1`.
///
/// Each triangle is cut along every lifted level of both values into convex
/// slices, which are fan-triangulated from their lexicographically smallest
/// corner. `W` is the sum of the slices on which the potential lies between
/// `t0` and `t1` (going up, modulo 1), oriented by the surface orientation;
/// the curves are oriented as boundaries of the sublevel sets. The identity
/// `∂W = L(t1) - L(t0)` is checked exactly before returning.
pub fn deform_level(k: &SimplicialComplex, phi: &Cochain, t0: &BigRational, t1: &BigRational) -> Result<CoboundingChain> {
    let pot = integrate_cocycle(k, phi)?;
    if pot.ring != Ring::Integers {
        return Err(Error::RingMismatch { expected: Ring::Integers, found: pot.ring });
    }
    let cert = validate_closed_manifold(k);
    if !cert.is_closed_pseudomanifold {
        return Err(Error::NotClosed);
    }
    let orientation = cert.orientation.ok_or(Error::NotOrientable)?;
    let (t0, t1) = (regular(t0)?, regular(t1)?);
    let nv = k.vertex_count();
    let table = table_for(&pot, &[t0.clone(), t1.clone()], nv);
    let mut positions: Vec<RefinedVertex> = (0..nv).map(RefinedVertex::Vertex).collect();
    positions.extend(table.points().into_iter().map(RefinedVertex::Crossing));
    let band = frac(&(&t1 - &t0));

    let mut tops: Vec<Vec<usize>> = Vec::new();
    let mut w_terms: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    let mut curve_terms: [BTreeMap<(usize, usize), i64>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for (ti, tri) in k.simplices(2).iter().enumerate() {
        let o = i64::from(orientation[ti]);
        let f = lift(k, &pot, tri);
        let coords = |id: usize| frame(tri, &positions[id], k);
        let level_points = |level: &BigRational| -> Result<Vec<usize>> {
            let mut ids = Vec::with_capacity(2);
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                if let Some(s) = crossing_position(&f, i, j, level) {
                    ids.push(table.id(k.edge_index(tri[i], tri[j]).expect("edge"), &s)?);
                }
            }
            Ok(ids)
        };

        // oriented level arcs
        let lowest = (0..3).min_by_key(|&i| &f[i]).expect("three vertices");
        for (c, t) in [&t0, &t1].into_iter().enumerate() {
            for level in levels(&f, t) {
                let ends = level_points(&level)?;
                let (p, q) = (ends[0].min(ends[1]), ends[0].max(ends[1]));
                let s = orient(&coords(p), &coords(q), &coords(tri[lowest]));
                *curve_terms[c].entry((p, q)).or_default() += o * i64::from(s);
            }
        }

        // slices between consecutive cuts
        let mut cuts: Vec<BigRational> = levels(&f, &t0).into_iter().chain(levels(&f, &t1)).collect();
        cuts.sort();
        cuts.dedup();
        let fmin = BigRational::from_integer(f.iter().min().expect("nonempty").clone());
        let fmax = BigRational::from_integer(f.iter().max().expect("nonempty").clone());
        for i in 0..=cuts.len() {
            let lo = (i > 0).then(|| cuts[i - 1].clone());
            let hi = cuts.get(i).cloned();
            let mut ids: Vec<usize> = Vec::new();
            for bound in lo.iter().chain(hi.iter()) {
                ids.extend(level_points(bound)?);
            }
            for (j, &x) in tri.iter().enumerate() {
                let fx = BigRational::from_integer(f[j].clone());
                if lo.as_ref().is_none_or(|l| &fx > l) && hi.as_ref().is_none_or(|h| &fx < h) {
                    ids.push(x);
                }
            }
            let mid = (lo.unwrap_or_else(|| fmin.clone()) + hi.unwrap_or_else(|| fmax.clone())) / BigRational::from_integer(2.into());
            let in_band = frac(&(&mid - &t0)) < band;
            for fan in fan_triangulate(&ids, &coords)? {
                let mut sorted = fan.to_vec();
                sorted.sort_unstable();
                if in_band {
                    let s = orient(&coords(sorted[0]), &coords(sorted[1]), &coords(sorted[2]));
                    *w_terms.entry(sorted.clone()).or_default() += o * i64::from(s);
                }
                tops.push(sorted);
            }
        }
    }

    let refinement = build_complex(&tops)?;
    let vertex = |label: usize| refinement.vertex_of_label(label).expect("label present");
    let mut w = vec![BigInt::zero(); refinement.count(2)];
    for (simplex, c) in &w_terms {
        let local: Vec<usize> = simplex.iter().map(|&x| vertex(x)).collect();
        w[refinement.index_of(&local).expect("slice present")] += *c;
    }
    let curve = |terms: &BTreeMap<(usize, usize), i64>| {
        let mut v = vec![BigInt::zero(); refinement.count(1)];
        for (&(p, q), c) in terms {
            v[refinement.edge_index(vertex(p), vertex(q)).expect("arc is a refinement edge")] += *c;
        }
        Chain::new(1, Ring::Integers, v)
    };
    let (l0, l1) = (curve(&curve_terms[0]), curve(&curve_terms[1]));
    let w = Chain::new(2, Ring::Integers, w);
    let bw = boundary(&refinement, &w)?;
    let diff: Vec<BigInt> = l1.coeffs.iter().zip(&l0.coeffs).map(|(a, b)| a - b).collect();
    if bw.coeffs != diff {
        return Err(Error::Invariant("boundary of the swept region differs from L(t1) - L(t0)".into()));
    }
    let positions = refinement.labels().iter().map(|&l| positions[l].clone()).collect();
    Ok(CoboundingChain { t0, t1, refinement, positions, w, l0, l1 })
}

fn fan_triangulate(ids: &[usize], coords: &impl Fn(usize) -> Point2) -> Result<Vec<[usize; 3]>> {
    if ids.len() < 3 {
        return Err(Error::Invariant("slice with fewer than three corners".into()));
    }
    let pts: Vec<(usize, Point2)> = ids.iter().map(|&i| (i, coords(i))).collect();
    let v0 = pts.iter().min_by(|a, b| a.1.cmp(&b.1)).expect("nonempty").clone();
    let mut rest: Vec<(usize, Point2)> = pts.into_iter().filter(|p| p.0 != v0.0).collect();
    rest.sort_by(|a, b| match orient(&v0.1, &a.1, &b.1) {
        1 => std::cmp::Ordering::Less,
        -1 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    Ok(rest.windows(2).map(|w| [v0.0, w[0].0, w[1].0]).collect())
}

/// Normal patch inside a tetrahedron; vertices are positions `0..4` in the
/// sorted tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatchKind {
    /// Triangle cutting off one vertex.
    Triangle { vertex: usize },
    /// Quadrilateral separating `pair` from the other two vertices.
    Quad { pair: [usize; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub tetrahedron: usize,
    pub kind: PatchKind,
    /// Corner points in cyclic order.
    pub points: Vec<usize>,
}

/// A level surface in a 3-dimensional complex.
#[derive(Clone, Debug)]
pub struct NormalSurface {
    pub ring: Ring,
    pub t: BigRational,
    pub points: Vec<CrossingPoint>,
    pub edge_weights: Vec<usize>,
    pub crossing_signs: Vec<i8>,
    pub patches: Vec<Patch>,
    /// Per tetrahedron: triangle counts by cut-off vertex, quad counts by
    /// the partner of vertex 0.
    pub coordinates: Vec<([usize; 4], [usize; 3])>,
}

impl EdgeCrossings for NormalSurface {
    fn ring(&self) -> Ring {
        self.ring
    }
    fn edge_weights(&self) -> &[usize] {
        &self.edge_weights
    }
    fn crossing_signs(&self) -> &[i8] {
        &self.crossing_signs
    }
}

/// The level surface of `φ` at the regular value `t`.
pub fn level_surface_3d(k: &SimplicialComplex, phi: &Cochain, t: &BigRational) -> Result<NormalSurface> {
    if k.dim() != 3 {
        return Err(Error::WrongDimension { expected: 3, found: k.dim() });
    }
    let pot = potential(k, phi)?;
    require_closed(k)?;
    let t = regular(t)?;
    let table = table_for(&pot, std::slice::from_ref(&t), 0);
    let mut patches = Vec::new();
    let mut coordinates = Vec::with_capacity(k.count(3));
    for (ti, tet) in k.simplices(3).iter().enumerate() {
        let f = lift(k, &pot, tet);
        let below_sets: Vec<(Option<BigRational>, Vec<usize>)> = match pot.ring {
            Ring::Mod2 => {
                let even: Vec<usize> = (0..4).filter(|&i| f[i].is_even()).collect();
                if even.len() == 4 {
                    Vec::new()
                } else {
                    vec![(None, even)]
                }
            }
            Ring::Integers => levels(&f, &t)
                .into_iter()
                .map(|l| {
                    let below = (0..4).filter(|&i| BigRational::from_integer(f[i].clone()) < l).collect();
                    (Some(l), below)
                })
                .collect(),
        };
        let mut counts = ([0usize; 4], [0usize; 3]);
        for (level, below) in below_sets {
            let above: Vec<usize> = (0..4).filter(|i| !below.contains(i)).collect();
            let point = |i: usize, j: usize| -> Result<usize> {
                let (i, j) = (i.min(j), i.max(j));
                let e = k.edge_index(tet[i], tet[j]).expect("edge present");
                let s = match &level {
                    Some(l) => crossing_position(&f, i, j, l).expect("edge crosses level"),
                    None => t.clone(),
                };
                table.id(e, &s)
            };
            let (kind, corners) = match (below.len(), above.len()) {
                (1, 3) | (3, 1) => {
                    let (lone, others) = if below.len() == 1 { (below[0], &above) } else { (above[0], &below) };
                    counts.0[lone] += 1;
                    (PatchKind::Triangle { vertex: lone }, others.iter().map(|&o| point(lone, o)).collect::<Result<Vec<_>>>()?)
                }
                (2, 2) => {
                    let (a, b, c, d) = (below[0], below[1], above[0], above[1]);
                    let partner = if a == 0 { b } else if b == 0 { a } else if c == 0 { d } else { c };
                    counts.1[partner - 1] += 1;
                    (PatchKind::Quad { pair: [a, b] }, vec![point(a, c)?, point(a, d)?, point(b, d)?, point(b, c)?])
                }
                _ => return Err(Error::Invariant("level misses a tetrahedron it should cross".into())),
            };
            patches.push(Patch { tetrahedron: ti, kind, points: corners });
        }
        if counts.1.iter().filter(|&&q| q > 0).count() > 1 {
            return Err(Error::Invariant(format!("tetrahedron {ti} carries two quadrilateral types")));
        }
        coordinates.push(counts);
    }
    let points = table.points();
    check_face_matching(k, &points, &patches)?;
    let edge_weights = table.weights();
    let crossing_signs = crossing_signs(&pot, &edge_weights);
    Ok(NormalSurface { ring: pot.ring, t, points, edge_weights, crossing_signs, patches, coordinates })
}

fn check_face_matching(k: &SimplicialComplex, points: &[CrossingPoint], patches: &[Patch]) -> Result<()> {
    let edge_of = |p: usize| points[p].edge;
    let mut arcs: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for patch in patches {
        let m = patch.points.len();
        for i in 0..m {
            let (p, q) = (patch.points[i], patch.points[(i + 1) % m]);
            let mut face: Vec<usize> = k.simplex(1, edge_of(p)).iter().chain(k.simplex(1, edge_of(q))).copied().collect();
            face.sort_unstable();
            face.dedup();
            let f = k.index_of(&face).ok_or_else(|| Error::Invariant("patch side leaves its face".into()))?;
            arcs.entry((f, patch.tetrahedron)).or_default().push((p.min(q), p.max(q)));
        }
    }
    for (face, cofaces) in k.cofaces(2).iter().enumerate() {
        let mut sides: Vec<Vec<(usize, usize)>> =
            cofaces.iter().map(|&c| arcs.get(&(face, c)).cloned().unwrap_or_default()).collect();
        for s in &mut sides {
            s.sort_unstable();
        }
        if sides.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::FaceMatchingFailure { face });
        }
    }
    Ok(())
}

fn point_line(k: &SimplicialComplex, id: usize, p: &CrossingPoint) -> String {
    let e = k.simplex(1, p.edge);
    let labels = k.labels();
    format!("p {id} edge {} {} s {}\n", labels[e[0]], labels[e[1]], format_rational(&p.s))
}

/// Line-based geometry export of a level curve. Points are given by the
/// edge they lie on and the exact parameter `s` along it.
pub fn export_curve(k: &SimplicialComplex, curve: &NormalCurve) -> String {
    let labels = k.labels();
    let mut out = format!("# level curve\nring {}\nt {}\npoints {}\n", curve.ring, format_rational(&curve.t), curve.points.len());
    for (i, p) in curve.points.iter().enumerate() {
        out += &point_line(k, i, p);
    }
    out += &format!("arcs {}\n", curve.arcs.len());
    for (tri, p, q) in &curve.arcs {
        let t: Vec<String> = k.simplex(2, *tri).iter().map(|&v| labels[v].to_string()).collect();
        out += &format!("a triangle {} {p} {q}\n", t.join(" "));
    }
    out += &format!("components {}\n", curve.components.len());
    for c in &curve.components {
        out += &format!("c {}\n", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    }
    out
}

/// Line-based geometry export of a level surface.
pub fn export_surface(k: &SimplicialComplex, surface: &NormalSurface) -> String {
    let labels = k.labels();
    let mut out =
        format!("# level surface\nring {}\nt {}\npoints {}\n", surface.ring, format_rational(&surface.t), surface.points.len());
    for (i, p) in surface.points.iter().enumerate() {
        out += &point_line(k, i, p);
    }
    out += &format!("patches {}\n", surface.patches.len());
    for patch in &surface.patches {
        let tet: Vec<String> = k.simplex(3, patch.tetrahedron).iter().map(|&v| labels[v].to_string()).collect();
        let kind = match patch.kind {
            PatchKind::Triangle { .. } => "tri",
            PatchKind::Quad { .. } => "quad",
        };
        let pts: Vec<String> = patch.points.iter().map(|x| x.to_string()).collect();
        out += &format!("f {kind} tetrahedron {} points {}\n", tet.join(" "), pts.join(" "));
    }
    out
}

/// Export of a cobounding chain: refinement vertices, then the nonzero
/// coefficients of `W`, `L(t0)` and `L(t1)`.
pub fn export_cobounding(k: &SimplicialComplex, c: &CoboundingChain) -> String {
    let labels = k.labels();
    let r = &c.refinement;
    let mut out = format!(
        "# cobounding chain\nt0 {}\nt1 {}\nvertices {}\n",
        format_rational(&c.t0),
        format_rational(&c.t1),
        r.vertex_count()
    );
    for (i, pos) in c.positions.iter().enumerate() {
        match pos {
            RefinedVertex::Vertex(v) => out += &format!("v {i} vertex {}\n", labels[*v]),
            RefinedVertex::Crossing(p) => {
                let e = k.simplex(1, p.edge);
                out += &format!("v {i} edge {} {} s {}\n", labels[e[0]], labels[e[1]], format_rational(&p.s));
            }
        }
    }
    for (name, chain) in [("w", &c.w), ("l0", &c.l0), ("l1", &c.l1)] {
        let terms: Vec<String> = chain
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| {
                let s: Vec<String> = r.simplex(chain.degree, i).iter().map(|v| v.to_string()).collect();
                format!("{x}*[{}]", s.join(","))
            })
            .collect();
        out += &format!("{name} {}\n", terms.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::get_complex;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    fn torus_meridian_dual(k: &SimplicialComplex) -> Cochain {
        let text = std::fs::read_to_string(crate::zoo::default_data_dir().join("torus7_meridian.cyc")).unwrap();
        crate::io::parse_cocycle(k, &text, Ring::Integers).unwrap()
    }

    #[test]
    fn zero_cocycle_gives_empty_curve() {
        let k = get_complex("torus7").unwrap();
        let phi = Cochain::zero(&k, 1, Ring::Integers);
        let pot = integrate_cocycle(&k, &phi).unwrap();
        assert!(pot.h.iter().all(|x| x.is_zero()));
        let c = level_curve(&k, &phi, &half()).unwrap();
        assert!(c.points.is_empty() && c.components.is_empty());
    }

    #[test]
    fn tree_edges_vanish_after_normalization() {
        let k = get_complex("torus7").unwrap();
        let pot = integrate_cocycle(&k, &torus_meridian_dual(&k)).unwrap();
        assert_eq!(pot.tree.len(), 6);
        for &(u, v) in &pot.tree {
            assert!(pot.directed(&k, u, v).is_zero());
        }
    }

    #[test]
    fn meridian_dual_curve_is_one_circle() {
        let k = get_complex("torus7").unwrap();
        let c = level_curve(&k, &torus_meridian_dual(&k), &half()).unwrap();
        assert_eq!(c.components.len(), 1);
    }

    #[test]
    fn integer_levels_are_not_regular() {
        let k = get_complex("torus7").unwrap();
        let phi = torus_meridian_dual(&k);
        assert!(matches!(level_curve(&k, &phi, &BigRational::one()), Err(Error::NotRegularValue(_))));
    }

    #[test]
    fn deform_equal_values_is_zero() {
        let k = get_complex("torus7").unwrap();
        let phi = torus_meridian_dual(&k);
        let c = deform_level(&k, &phi, &half(), &half()).unwrap();
        assert!(c.w.is_zero());
        assert_eq!(c.l0, c.l1);
    }

    #[test]
    fn deform_thirds() {
        let k = get_complex("torus7").unwrap();
        let phi = torus_meridian_dual(&k);
        let third = BigRational::new(1.into(), 3.into());
        let c = deform_level(&k, &phi, &third, &(BigRational::one() - &third)).unwrap();
        assert!(!c.w.is_zero());
        assert!(!c.l0.is_zero());
    }

    #[test]
    fn sphere3_surface_is_empty() {
        let k = get_complex("sphere3").unwrap();
        let g: Vec<BigInt> = (0..5).map(|i| BigInt::from(i * i)).collect();
        let values = k.simplices(1).iter().map(|e| &g[e[1]] - &g[e[0]]).collect();
        let phi = Cochain::new(1, Ring::Integers, values);
        let s = level_surface_3d(&k, &phi, &half()).unwrap();
        assert!(s.patches.is_empty());
    }
}
