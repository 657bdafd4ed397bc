use binomat::net::{
    check_net_property, compositions, star_discrepancy_1d, star_discrepancy_grid,
    star_discrepancy_points,
};
use binomat::search::{search_third_matrix, GeneratorRegistry};
use binomat::verify::radical_inverse;
use binomat::{
    digital_points, stacked_rank_ok, star_discrepancy, t_value, Family, GeneratingSet, NetError,
    PointSet,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Star discrepancy of points whose coordinates all lie on the grid
/// `{0, 1/den, ..., (den-1)/den}`: counts are constant between grid lines,
/// so open boxes with grid corners and closed boxes with grid corners reach
/// both the supremum deficit and the supremum excess.
fn lattice_discrepancy_oracle(points: &[Vec<BigRational>], den: i64) -> BigRational {
    let n = BigRational::from_integer(BigInt::from(points.len()));
    let s = points[0].len();
    let mut best = BigRational::zero();
    let mut idx = vec![0i64; s];
    loop {
        let corner: Vec<BigRational> = idx.iter().map(|&k| q(k, den)).collect();
        let vol = corner.iter().fold(BigRational::one(), |a, c| a * c);
        let open = points
            .iter()
            .filter(|p| p.iter().zip(&corner).all(|(x, c)| x < c))
            .count();
        let closed = points
            .iter()
            .filter(|p| p.iter().zip(&corner).all(|(x, c)| x <= c))
            .count();
        best = best
            .max(&vol - BigRational::from_integer(open.into()) / &n)
            .max(BigRational::from_integer(closed.into()) / &n - &vol);
        let mut d = 0;
        loop {
            if d == s {
                return best;
            }
            idx[d] += 1;
            if idx[d] <= den {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

#[test]
fn van_der_corput_first_points() {
    let gs = GeneratingSet::from_families(2, &[Family::P1(0)]).unwrap();
    let ps = digital_points(&gs, 8, 3).unwrap();
    let want = [
        (0, 1),
        (1, 2),
        (1, 4),
        (3, 4),
        (1, 8),
        (5, 8),
        (3, 8),
        (7, 8),
    ];
    for (pt, &(n, d)) in ps.points.iter().zip(&want) {
        assert_eq!(pt, &vec![q(n, d)]);
    }
    assert!(ps.is_well_formed(3));
}

#[test]
fn identity_generator_is_radical_inverse() {
    for p in [2u64, 3, 5, 7] {
        let gs = GeneratingSet::from_families(p, &[Family::M1(0)]).unwrap();
        let ps = digital_points(&gs, p.pow(3), 3).unwrap();
        for (i, pt) in ps.points.iter().enumerate() {
            assert_eq!(pt[0], radical_inverse(i as u64, p));
        }
    }
}

#[test]
fn too_many_points_is_rejected() {
    let gs = GeneratingSet::from_families(2, &[Family::P1(0)]).unwrap();
    assert!(matches!(
        digital_points(&gs, 9, 3),
        Err(NetError::TooManyPoints { n: 9, .. })
    ));
}

#[test]
fn non_prime_base_is_rejected() {
    assert!(GeneratingSet::from_families(4, &[Family::P1(0)]).is_err());
    assert!(matches!(
        GeneratingSet::from_families(3, &[]),
        Err(NetError::EmptyGeneratingSet)
    ));
}

#[test]
fn stacked_rank_validates_inputs() {
    let gs = GeneratingSet::from_families(3, &[Family::M1(0), Family::M1(1)]).unwrap();
    assert!(matches!(
        stacked_rank_ok(&gs, 2, 3, &[0, 0]),
        Err(NetError::TExceedsM { .. })
    ));
    assert!(matches!(
        stacked_rank_ok(&gs, 3, 0, &[1, 1]),
        Err(NetError::CompositionSum { .. })
    ));
    assert!(matches!(
        stacked_rank_ok(&gs, 3, 0, &[3]),
        Err(NetError::CompositionLength { .. })
    ));
    assert!(stacked_rank_ok(&gs, 3, 0, &[1, 2]).unwrap());
}

#[test]
fn compositions_count_and_order() {
    let c = compositions(3, 2);
    assert_eq!(c, vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
    // C(m + s - 1, s - 1)
    assert_eq!(compositions(8, 3).len(), 45);
    assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
}

#[test]
fn discrepancy_examples() {
    let two = PointSet::new(2, 1, vec![vec![q(0, 1)], vec![q(1, 2)]]);
    assert_eq!(star_discrepancy(&two).unwrap(), q(1, 2));

    for n in [1i64, 3, 10, 64] {
        let lattice: Vec<Vec<BigRational>> = (0..n).map(|i| vec![q(i, n)]).collect();
        assert_eq!(star_discrepancy_points(1, &lattice).unwrap(), q(1, n));
    }

    let gs = GeneratingSet::from_families(2, &[Family::M1(0)]).unwrap();
    let vdc = digital_points(&gs, 4, 3).unwrap();
    assert_eq!(star_discrepancy(&vdc).unwrap(), q(1, 4));

    assert!(matches!(
        star_discrepancy_points(1, &[]),
        Err(NetError::EmptyPointSet)
    ));
    assert!(matches!(
        star_discrepancy_points(3, &[vec![q(0, 1); 3]]),
        Err(NetError::UnsupportedDimension(3))
    ));
}

#[test]
fn one_dimensional_formula_matches_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(1..40);
        let den = rng.gen_range(1..50);
        let xs: Vec<BigRational> = (0..n).map(|_| q(rng.gen_range(0..den), den)).collect();
        let pts: Vec<Vec<BigRational>> = xs.iter().map(|x| vec![x.clone()]).collect();
        let fast = star_discrepancy_1d(&xs);
        assert_eq!(fast, star_discrepancy_grid(&pts));
        assert_eq!(fast, lattice_discrepancy_oracle(&pts, den));
    }
}

#[test]
fn two_dimensional_grid_matches_lattice_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let n = rng.gen_range(1..20);
        let den = rng.gen_range(1..12);
        let pts: Vec<Vec<BigRational>> = (0..n)
            .map(|_| vec![q(rng.gen_range(0..den), den), q(rng.gen_range(0..den), den)])
            .collect();
        assert_eq!(
            star_discrepancy_points(2, &pts).unwrap(),
            lattice_discrepancy_oracle(&pts, den)
        );
    }
    let gs = GeneratingSet::from_families(2, &[Family::P1(0), Family::P1(1)]).unwrap();
    let ps = digital_points(&gs, 16, 4).unwrap();
    assert_eq!(
        star_discrepancy(&ps).unwrap(),
        lattice_discrepancy_oracle(&ps.points, 16)
    );
}

#[test]
fn hammersley_type_net_has_box_property() {
    // (0,2,2)-net in base 2: four points, every elementary box of volume 1/4 holds one.
    let gs = GeneratingSet::from_families(2, &[Family::M1(0), Family::M1(1)]).unwrap();
    let ps = digital_points(&gs, 4, 2).unwrap();
    assert_eq!(check_net_property(&ps, 2, 0), Ok(3));

    // A repeated coordinate is not a (0,2,2)-net.
    let bad = PointSet::new(
        2,
        2,
        ps.points
            .iter()
            .map(|p| vec![p[0].clone(), p[0].clone()])
            .collect(),
    );
    assert!(check_net_property(&bad, 2, 0).is_err());
}

#[test]
fn van_der_corput_discrepancy_envelope() {
    let gs = GeneratingSet::from_families(2, &[Family::M1(0)]).unwrap();
    let ps = digital_points(&gs, 1024, 10).unwrap();
    for n in 1..=1024usize {
        let xs: Vec<BigRational> = ps.points[..n].iter().map(|p| p[0].clone()).collect();
        let d = star_discrepancy_1d(&xs);
        // D*_N <= (log2 N + 1) / N.
        let bound = ((n as f64).log2() + 1.0) / n as f64;
        let approx = num_traits::ToPrimitive::to_f64(&d).unwrap();
        assert!(approx <= bound + 1e-12, "N = {n}: {approx} > {bound}");
        assert!(d >= q(1, 2 * n as i64));
    }
}

#[test]
fn faure_and_m1_pairs_have_t_zero() {
    for p in [2u64, 3, 5] {
        let faure: Vec<Family> = (0..p as i64).map(Family::P1).collect();
        let prof = t_value(&GeneratingSet::from_families(p, &faure).unwrap(), 6).unwrap();
        assert_eq!(prof.per_m, vec![0; 6], "Faure p = {p}");
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                if a == b {
                    continue;
                }
                let gs = GeneratingSet::from_families(p, &[Family::M1(a), Family::M1(b)]).unwrap();
                assert_eq!(t_value(&gs, 6).unwrap().t, 0, "M1({a}), M1({b}) mod {p}");
            }
        }
    }
}

#[test]
fn equal_m1_pair_is_not_t_zero() {
    let gs = GeneratingSet::from_families(3, &[Family::M1(1), Family::M1(1)]).unwrap();
    assert!(t_value(&gs, 4).unwrap().t > 0);
}

#[test]
fn m1_triple_degenerates_at_depth_three() {
    let gs =
        GeneratingSet::from_families(3, &[Family::M1(0), Family::M1(1), Family::M1(2)]).unwrap();
    assert!(!stacked_rank_ok(&gs, 3, 0, &[1, 1, 1]).unwrap());
    assert!(t_value(&gs, 3).unwrap().per_m[2] >= 1);
}

#[test]
fn search_budget_zero_is_empty() {
    let reg = GeneratorRegistry::builtin();
    for g in reg.iter() {
        let report = search_third_matrix(3, 3, g, 0, 1).unwrap();
        assert!(report.results.is_empty());
        assert!(report.best_per_m.is_empty());
    }
}

#[test]
fn search_m1_family_candidate_two() {
    let reg = GeneratorRegistry::builtin();
    let report = search_third_matrix(3, 3, reg.lookup("m1-family").unwrap(), 1, 0).unwrap();
    assert_eq!(report.results[0].candidate, "M1:a=2");
    assert!(report.results[0].t >= 1);
}

#[test]
fn search_is_seed_deterministic() {
    let reg = GeneratorRegistry::builtin();
    let g = reg.lookup("random").unwrap();
    let a = search_third_matrix(3, 4, g, 5, 42).unwrap();
    let b = search_third_matrix(3, 4, g, 5, 42).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert!(reg.lookup("nope").is_err());
}

#[test]
fn exhaustive_generator_enumerates_all_unitriangular() {
    let reg = GeneratorRegistry::builtin();
    let g = reg.lookup("exhaustive").unwrap();
    // 3 free entries over F_2: 8 matrices, then the odometer stops.
    assert_eq!(g.candidates(2, 3, 100, 0).len(), 8);
    assert_eq!(g.candidates(3, 3, 5, 0).len(), 5);
}
