use num_bigint::BigInt;
use proptest::prelude::*;

use poincare::zoo;
use poincare::{
    boundary, cap_chain, coboundary, dual_complex, dual_correspondence, dual_report, duality_map, get_complex,
    homology, validate_closed_manifold, verify_duality, Chain, Cochain, Error, Ring,
};

fn leibniz_holds(name: &str, p: usize, q: usize, sigma: &[i64], phi: &[i64]) -> bool {
    let k = get_complex(name).unwrap();
    let pick = |v: &[i64], n: usize| (0..n).map(|i| BigInt::from(v[i % v.len()])).collect::<Vec<_>>();
    let sigma = Chain::new(p, Ring::Integers, pick(sigma, k.count(p)));
    let phi = Cochain::new(q, Ring::Integers, pick(phi, k.count(q)));
    let lhs = boundary(&k, &cap_chain(&k, &sigma, &phi).unwrap()).unwrap();
    let a = cap_chain(&k, &boundary(&k, &sigma).unwrap(), &phi).unwrap();
    let b = cap_chain(&k, &sigma, &coboundary(&k, &phi).unwrap()).unwrap();
    let sign = if q.is_multiple_of(2) { 1 } else { -1 };
    lhs.coeffs.iter().zip(a.coeffs.iter().zip(&b.coeffs)).all(|(l, (x, y))| l == &((x - y) * sign))
}

proptest! {
    #[test]
    fn cap_leibniz(
        name in prop::sample::select(zoo::NAMES.to_vec()),
        p in 1usize..=3,
        q in 0usize..3,
        sigma in prop::collection::vec(-3i64..=3, 1..12),
        phi in prop::collection::vec(-3i64..=3, 1..12),
    ) {
        let n = get_complex(name).unwrap().dim();
        prop_assume!(p <= n && q < p);
        prop_assert!(leibniz_holds(name, p, q, &sigma, &phi));
    }
}

#[test]
fn duality_passes_across_the_zoo() {
    for e in zoo::entries() {
        let k = get_complex(e.name).unwrap();
        let cert = validate_closed_manifold(&k);
        let rings = if e.expected.orientable { vec![Ring::Integers, Ring::Mod2] } else { vec![Ring::Mod2] };
        for ring in rings {
            let report = verify_duality(&k, &cert, ring).unwrap();
            assert!(report.pass, "{} over {ring}", e.name);
            let dual = dual_report(&k, &cert, ring).unwrap();
            let a: Vec<bool> = report.degrees.iter().map(|d| d.iso).collect();
            let b: Vec<bool> = dual.maps.iter().map(|m| m.iso).collect();
            assert_eq!(a, b, "{} over {ring}", e.name);
        }
    }
}

#[test]
fn duality_is_refused_over_z_on_non_orientable() {
    for name in ["projective_plane6", "klein_bottle8"] {
        let k = get_complex(name).unwrap();
        let cert = validate_closed_manifold(&k);
        assert!(matches!(verify_duality(&k, &cert, Ring::Integers), Err(Error::NotOrientable)));
        assert!(matches!(dual_report(&k, &cert, Ring::Integers), Err(Error::NotOrientable)));
    }
}

#[test]
fn top_degree_sends_unit_cocycle_to_point() {
    for name in ["sphere3", "projective_space11"] {
        let k = get_complex(name).unwrap();
        let cert = validate_closed_manifold(&k);
        let map = duality_map(&k, &cert, Ring::Mod2, 3).unwrap();
        assert!(map.iso(), "{name}");
        assert_eq!(map.induced.matrix.to_dense(), vec![vec![BigInt::from(1)]]);
    }
}

#[test]
fn degenerate_degrees_are_vacuous() {
    let k = get_complex("torus7").unwrap();
    let cert = validate_closed_manifold(&k);
    for d in [-1, 3, 10] {
        let map = duality_map(&k, &cert, Ring::Integers, d).unwrap();
        assert!(map.iso() && map.source.is_none() && map.target.is_none());
    }
}

#[test]
fn dual_complex_invariants() {
    for e in zoo::entries() {
        let k = get_complex(e.name).unwrap();
        let cert = validate_closed_manifold(&k);
        let dual = dual_complex(&k, &cert).unwrap();
        let n = k.dim();
        let mut reversed = k.f_vector();
        reversed.reverse();
        assert_eq!(dual.cell_counts(), reversed, "{}", e.name);
        assert_eq!(dual.euler_characteristic(), k.euler_characteristic() * if n.is_multiple_of(2) { 1 } else { -1 });
        let rings = if e.expected.orientable { vec![Ring::Integers, Ring::Mod2] } else { vec![Ring::Mod2] };
        for ring in rings {
            for j in 1..n {
                let a = dual.incidence_over(j, ring).unwrap();
                let b = dual.incidence_over(j + 1, ring).unwrap();
                assert!(a.mul(&b).reduce(ring).is_zero(), "{} degree {j}", e.name);
            }
            for j in 0..=n {
                let h = dual.homology(j, ring).unwrap();
                let g = homology(&k, j, ring).unwrap();
                assert_eq!((h.betti, h.torsion.clone()), (g.betti, g.torsion.clone()), "{} degree {j} over {ring}", e.name);
            }
            let corr = dual_correspondence(&k, &dual, ring).unwrap();
            assert_eq!(corr.eps.len(), n);
            if ring == Ring::Mod2 {
                assert!(corr.eps.iter().all(|&s| s == 1));
            }
        }
    }
}

#[test]
fn suspended_torus_fails_duality() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/suspended_torus.txt");
    let k = poincare::read_complex(&path).unwrap();
    let cert = validate_closed_manifold(&k);
    let report = verify_duality(&k, &cert, Ring::Integers).unwrap();
    assert!(!report.pass);
    assert!(report.degrees.iter().any(|d| !d.iso));
}
