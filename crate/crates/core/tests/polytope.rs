mod common;

use gtlax_core::gtsystem::{gt_pattern, ActionVector, GTPattern};
use gtlax_core::numerics::{eig_hermitian, rng_from_seed, HermitianMatrix};
use gtlax_core::orbit::OrbitSpec;
use gtlax_core::polytope::{
    membership, reconstruct, reconstruct_levels, sample_interior, vertices, Membership, PolytopeSpec, SAMPLE_MARGIN,
};

#[test]
fn reconstruction_roundtrip() {
    for (name, spec) in common::all_specs() {
        let ps = PolytopeSpec::new(&spec);
        for seed in 0..200 {
            let a = sample_interior(&ps, &mut rng_from_seed(seed));
            let z = reconstruct(&ps, &a).unwrap();
            let back = gt_pattern(&z).unwrap().action();
            for (x, y) in a.values().iter().zip(back.values()) {
                assert!((x - y).abs() < 1e-7, "{name} seed {seed}: {a:?} vs {back:?}");
            }
            let vals = eig_hermitian(&z.z).unwrap().values;
            for (x, y) in vals.iter().zip(&spec.lambda) {
                assert!((x - y).abs() < 1e-7);
            }
        }
    }
}

#[test]
fn every_reconstruction_level_has_its_row_spectrum() {
    for (_, spec) in common::all_specs() {
        let ps = PolytopeSpec::new(&spec);
        for seed in 0..50 {
            let p = GTPattern::from_action(&spec, &sample_interior(&ps, &mut rng_from_seed(seed))).unwrap();
            for (k, level) in reconstruct_levels(&p).unwrap().iter().enumerate() {
                let vals = eig_hermitian(level).unwrap().values;
                for (x, y) in vals.iter().zip(p.row(k + 1)) {
                    assert!((x - y).abs() < 1e-7);
                }
            }
        }
    }
}

#[test]
fn worked_bordering_example() {
    let spec = OrbitSpec::new(&[2.0, 0.0, -2.0]).unwrap();
    let p = GTPattern::from_rows(&spec, vec![vec![0.0], vec![1.0, -1.0], vec![2.0, 0.0, -2.0]]).unwrap();
    let levels = reconstruct_levels(&p).unwrap();
    assert_eq!(levels[1], HermitianMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]));
    let a3 = &levels[2];
    assert!(a3[(2, 2)].norm() < 1e-15);
    let eig2 = eig_hermitian(&levels[1]).unwrap();
    let border: Vec<_> = (0..2).map(|i| a3[(i, 2)]).collect();
    for i in 0..2 {
        // coefficient of the border along the i-th eigenvector of A_2
        let v = eig2.vector(i);
        let coef: num_complex::Complex64 = v.iter().zip(&border).map(|(a, b)| a.conj() * b).sum();
        assert!((coef.norm() - 1.5f64.sqrt()).abs() < 1e-12);
    }
    let vals = eig_hermitian(a3).unwrap().values;
    for (x, y) in vals.iter().zip([2.0, 0.0, -2.0]) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn samples_respect_the_margin() {
    for (name, spec) in common::all_specs() {
        let ps = PolytopeSpec::new(&spec);
        let mut rng = rng_from_seed(31);
        for _ in 0..1000 {
            let a = sample_interior(&ps, &mut rng);
            assert_eq!(membership(&ps, &a, 0.0).unwrap(), Membership::Interior, "{name}");
            let p = GTPattern::from_action(&spec, &a).unwrap();
            for &(j, k) in &ps.coords {
                let (hi, lo) = (p.entry(j, k + 1), p.entry(j + 1, k + 1));
                let x = p.entry(j, k);
                let margin = SAMPLE_MARGIN * (hi - lo) * (1.0 - 1e-9);
                assert!(x - lo >= margin && hi - x >= margin);
            }
            if name == "gr24" {
                let a23 = p.entry(2, 3);
                assert!(a23 > -1.0 && a23 < 1.0);
            }
        }
    }
}

#[test]
fn sampling_is_deterministic() {
    let ps = PolytopeSpec::new(&common::u4());
    let a: Vec<ActionVector> = (0..5).map(|s| sample_interior(&ps, &mut rng_from_seed(s))).collect();
    let b: Vec<ActionVector> = (0..5).map(|s| sample_interior(&ps, &mut rng_from_seed(s))).collect();
    assert_eq!(a, b);
}

/// Independent vertex oracle for `u(3)` with integer spectrum: scan the
/// integer points of the bounding box, keep feasible ones whose active
/// interlacing inequalities have rank 3. Coordinates `(a12, a22, a11)`.
fn u3_lattice_vertices(l: [i32; 3]) -> Vec<[i32; 3]> {
    let mut out = Vec::new();
    for a12 in l[2]..=l[0] {
        for a22 in l[2]..=l[0] {
            for a11 in l[2]..=l[0] {
                let rows: [([i32; 3], i32); 6] = [
                    ([1, 0, 0], l[0] - a12),
                    ([-1, 0, 0], a12 - l[1]),
                    ([0, 1, 0], l[1] - a22),
                    ([0, -1, 0], a22 - l[2]),
                    ([-1, 0, 1], a12 - a11),
                    ([0, 1, -1], a11 - a22),
                ];
                if rows.iter().any(|&(_, s)| s < 0) {
                    continue;
                }
                let active: Vec<[f64; 3]> = rows
                    .iter()
                    .filter(|&&(_, s)| s == 0)
                    .map(|&(r, _)| [r[0] as f64, r[1] as f64, r[2] as f64])
                    .collect();
                if rank3(&active) == 3 {
                    out.push([a12, a22, a11]);
                }
            }
        }
    }
    out
}

fn rank3(rows: &[[f64; 3]]) -> usize {
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            for c in b + 1..rows.len() {
                let (x, y, z) = (rows[a], rows[b], rows[c]);
                let det = x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0])
                    + x[2] * (y[0] * z[1] - y[1] * z[0]);
                if det != 0.0 {
                    return 3;
                }
            }
        }
    }
    rows.len().min(2)
}

#[test]
fn u3_vertices_match_lattice_oracle() {
    let spec = OrbitSpec::new(&[2.0, 0.0, -2.0]).unwrap();
    let ps = PolytopeSpec::new(&spec);
    let got = vertices(&ps).unwrap();
    let mut oracle = u3_lattice_vertices([2, 0, -2]);
    oracle.sort_by(|a, b| b.cmp(a));
    assert_eq!(got.len(), 7);
    let listed = [
        [2, 0, 2],
        [2, 0, 0],
        [2, -2, 2],
        [2, -2, -2],
        [0, 0, 0],
        [0, -2, 0],
        [0, -2, -2],
    ];
    let mut listed_sorted = listed.to_vec();
    listed_sorted.sort_by(|a, b| b.cmp(a));
    assert_eq!(oracle, listed_sorted);
    for (v, o) in got.iter().zip(&oracle) {
        let o: Vec<f64> = o.iter().map(|&x| x as f64).collect();
        assert_eq!(v.values(), o.as_slice());
        assert!(matches!(membership(&ps, v, 1e-12).unwrap(), Membership::Boundary(_)));
    }
}

#[test]
fn vertex_entries_sit_on_a_parent() {
    for lam in [vec![2.0, 0.5, -1.5], vec![1.0, 1.0, -1.0, -1.0], vec![3.0, 1.0, 1.0, -2.0]] {
        let spec = OrbitSpec::new(&lam).unwrap();
        let ps = PolytopeSpec::new(&spec);
        let vs = vertices(&ps).unwrap();
        assert!(!vs.is_empty());
        for v in vs {
            let p = GTPattern::from_action(&spec, &v).unwrap();
            for &(j, k) in &ps.coords {
                let x = p.entry(j, k);
                let on_parent = (x - p.entry(j, k + 1)).abs() < 1e-9 || (x - p.entry(j + 1, k + 1)).abs() < 1e-9;
                assert!(on_parent, "{lam:?} {v:?}");
            }
        }
    }
}
