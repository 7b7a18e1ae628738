use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use quantvol::basisdiv::{
    basis_divisor_from_exponents, delta_mp_fixed_point, exponents_at_vertex, jet_separation,
    lct_snc, mult_at_p, LocalBasisDivisor, SectionExponents, Threshold,
};
use quantvol::harness::{
    parse_polytopes, scan_conjecture, FindingKind, PolytopeRecord, Relation, ScanOptions,
};
use quantvol::hilbert::{
    compute_m0, ehrhart_fit, fujita_check, h0_pn, hrr_dim2, hrr_dim3, FujitaStatus, HrrCoefficients,
};
use quantvol::jets::{avg_vanishing, profile_from_exponents};
use quantvol::lattice::{
    count_interior_points, count_lattice_points, normal_form, normalized_volume, EnumerationConfig,
};
use quantvol::LatticePolytope;

fn load(name: &str) -> Vec<PolytopeRecord> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    parse_polytopes(&path).unwrap().records
}

fn low_dim_records() -> Vec<PolytopeRecord> {
    let mut records = load("reflexive_polygons.txt");
    records.extend(load("threefolds.txt"));
    records.extend(
        load("projective_spaces.txt")
            .into_iter()
            .filter(|r| r.dim() <= 3),
    );
    records.extend(load("products.txt").into_iter().filter(|r| r.dim() <= 3));
    records
}

fn all_records() -> Vec<PolytopeRecord> {
    [
        "projective_spaces.txt",
        "products.txt",
        "threefolds.txt",
        "reflexive_polygons.txt",
    ]
    .iter()
    .flat_map(|f| load(f))
    .collect()
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Product of elementary row operations applied to the identity.
fn unimodular(dim: usize, ops: &[(usize, usize, i64, bool)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j, k, flip) in ops {
        let (i, j) = (i % dim, j % dim);
        if flip {
            u.swap(i, j);
            u[i].iter_mut().for_each(|x| *x = -*x);
        } else if i != j {
            let row = u[j].clone();
            u[i].iter_mut().zip(row).for_each(|(x, y)| *x += k * y);
        }
    }
    u
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64, bool)>> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2, any::<bool>()), 0..6)
}

fn coefficient_vector(max_len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((0i64..=12, 1i64..=6), 1..=max_len)
        .prop_map(|v| v.into_iter().map(|(p, q)| ratio(p, q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unimodular_invariance(index in 0usize..64, ops in ops()) {
        let records = low_dim_records();
        let record = &records[index % records.len()];
        let p = &record.polytope;
        let q = p.transform(&unimodular(p.dim(), &ops)).unwrap();
        let cfg = EnumerationConfig::default();
        prop_assert_eq!(q.is_reflexive(), p.is_reflexive());
        prop_assert_eq!(q.is_smooth().unwrap(), p.is_smooth().unwrap());
        prop_assert_eq!(normalized_volume(&q).unwrap(), normalized_volume(p).unwrap());
        prop_assert_eq!(normal_form(&q), normal_form(p));
        for m in 0..=3 {
            prop_assert_eq!(
                count_lattice_points(&q, m, &cfg).unwrap(),
                count_lattice_points(p, m, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn duality_and_round_trip(index in 0usize..64, ops in ops()) {
        let records = low_dim_records();
        let p = &records[index % records.len()].polytope;
        let q = p.transform(&unimodular(p.dim(), &ops)).unwrap();
        prop_assert_eq!(&q.dual().unwrap().dual().unwrap(), &q);
        let mut from_facets = q.facets().solution_vertices().unwrap();
        from_facets.sort();
        prop_assert_eq!(from_facets.as_slice(), q.vertices());
    }

    #[test]
    fn smooth_surfaces_follow_riemann_roch(index in 0usize..16, ops in ops(), m in 1u64..=12) {
        let records = load("reflexive_polygons.txt");
        let record = &records[index];
        prop_assume!(record.smooth);
        let q = record.polytope.transform(&unimodular(2, &ops)).unwrap();
        let count = count_lattice_points(&q, m, &EnumerationConfig::default()).unwrap();
        prop_assert_eq!(BigInt::from(count), hrr_dim2(record.vol, m));
    }

    #[test]
    fn lct_scaling(a in coefficient_vector(5), p in 1i64..=20, q in 1i64..=20) {
        prop_assume!(a.iter().any(|x| !x.is_zero()));
        let lambda = ratio(p, q);
        let d = LocalBasisDivisor::from_coefficients(a).unwrap();
        let base = lct_snc(&d).finite().cloned().unwrap();
        let scaled = lct_snc(&d.scaled(&lambda)).finite().cloned().unwrap();
        prop_assert_eq!(scaled * lambda, base);
    }

    #[test]
    fn monotone_coupling(
        raw in prop::collection::btree_set(prop::collection::vec(0u64..6, 2), 1..12),
        which in 0usize..12,
        coord in 0usize..2,
        bump in 1u64..4,
    ) {
        let entries: Vec<Vec<u64>> = raw.into_iter().collect();
        let before = SectionExponents::new(2, 2, entries.clone()).unwrap();
        let mut bumped = entries;
        let i = which % bumped.len();
        bumped[i][coord] += bump;
        prop_assume!(!bumped.iter().enumerate().any(|(j, e)| j != i && *e == bumped[i]));
        let after = SectionExponents::new(2, 2, bumped).unwrap();
        let a = avg_vanishing(&profile_from_exponents(&before)).unwrap();
        let b = avg_vanishing(&profile_from_exponents(&after)).unwrap();
        prop_assert!(b >= a);
    }

    #[test]
    fn m0_threshold_holds_past_m0(n in 1usize..=3, numer in 1i64..=40, denom in 1i64..=4) {
        let bound = ratio(numer, denom);
        let Ok(m0) = compute_m0(n, &bound) else {
            return Ok(());
        };
        let pn = HrrCoefficients::projective_space(n);
        let top = (n as u64 + 1).pow(n as u32);
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        for m in m0..=m0 + 200 {
            let mq = BigRational::from_integer(m.into());
            let tail: BigRational = (0..n).map(|i| num_traits::pow(mq.clone(), i)).sum();
            let reference = pn.eval(m);
            for vol in 1..top {
                // Worst admissible X: leading vol/n!, every lower coefficient A.
                let lead = num_traits::pow(mq.clone(), n) * BigRational::new(vol.into(), fact.clone());
                prop_assert!(lead + &bound * &tail < reference, "n={} vol={} m={}", n, vol, m);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplicity_criterion(a in coefficient_vector(5)) {
        let n = a.len();
        let d = LocalBasisDivisor::from_coefficients(a).unwrap();
        let total = mult_at_p(&d);
        let lct = lct_snc(&d);
        if total > BigRational::from_integer(n.into()) {
            prop_assert!(lct < Threshold::Finite(BigRational::one()));
        }
        if lct >= Threshold::Finite(BigRational::one()) {
            prop_assert!(total <= BigRational::from_integer(n.into()));
        }
    }
}

#[test]
fn ehrhart_reciprocity() {
    let cfg = EnumerationConfig::default();
    for r in all_records() {
        let top = if r.dim() == 4 { 3 } else { 5 };
        for m in 1..=top {
            assert_eq!(
                count_interior_points(&r.polytope, m, &cfg).unwrap(),
                count_lattice_points(&r.polytope, m - 1, &cfg).unwrap(),
                "{} m={m}",
                r.id
            );
        }
    }
}

#[test]
fn smooth_threefolds_follow_riemann_roch() {
    let cfg = EnumerationConfig::default();
    for r in all_records().iter().filter(|r| r.smooth && r.dim() == 3) {
        for m in 1..=8 {
            let count = count_lattice_points(&r.polytope, m, &cfg).unwrap();
            assert_eq!(
                BigInt::from(count),
                hrr_dim3(r.vol, m).unwrap(),
                "{} m={m}",
                r.id
            );
        }
    }
}

#[test]
fn equality_volume_means_projective_leading_term() {
    let cfg = EnumerationConfig::default();
    for r in all_records() {
        let n = r.dim();
        if fujita_check(r.vol, n as u32).status != FujitaStatus::Equality {
            continue;
        }
        let samples: Vec<(u64, u64)> = (0..=n as u64 + 1)
            .map(|m| (m, count_lattice_points(&r.polytope, m, &cfg).unwrap()))
            .collect();
        let fit = ehrhart_fit(&samples, n).unwrap();
        assert_eq!(
            fit.leading(),
            HrrCoefficients::projective_space(n).leading(),
            "{}",
            r.id
        );
    }
}

/// Toric end-to-end checks at every smooth vertex of every bundled record:
/// the jet estimate, agreement of the averaged vanishing order with the
/// divisor, and the consequences of a fixed-point delta of at least one.
#[test]
fn basis_divisor_end_to_end() {
    let cfg = EnumerationConfig::default();
    for r in all_records().iter().filter(|r| r.reflexive) {
        let n = r.dim();
        let top = if n == 4 { 3 } else { 5 };
        let pn_class =
            normal_form(&r.polytope) == normal_form(&LatticePolytope::projective_space(n));
        for m in 1..=top {
            let count = count_lattice_points(&r.polytope, m, &cfg).unwrap();
            let h0 = h0_pn(n as u64, m);
            for v in r.polytope.smooth_vertices() {
                let sections = exponents_at_vertex(&r.polytope, m, v, &cfg).unwrap();
                let profile = profile_from_exponents(&sections);
                assert!(profile.is_weakly_decreasing() && profile.satisfies_jet_estimate());
                let divisor = basis_divisor_from_exponents(&sections);
                let total: BigRational = divisor.coefficients.iter().sum();
                assert_eq!(avg_vanishing(&profile).unwrap(), total, "{} m={m}", r.id);

                let delta = delta_mp_fixed_point(&r.polytope, m, v, &cfg).unwrap();
                if delta >= BigRational::one() {
                    assert!(divisor
                        .coefficients
                        .iter()
                        .all(|a| *a <= BigRational::one()));
                    assert!(total <= BigRational::from_integer(n.into()));
                    assert!(count <= h0.clone().try_into().unwrap(), "{} m={m}", r.id);
                    if num_bigint::BigUint::from(count) == h0 {
                        assert!(jet_separation(&sections) && pn_class, "{} m={m}", r.id);
                    }
                }
            }
        }
    }
}

#[test]
fn greater_rows_are_findings() {
    let records = all_records();
    let report = scan_conjecture(
        &records,
        &ScanOptions {
            m_max: 3,
            ..ScanOptions::default()
        },
    );
    let greater: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.relation == Relation::Greater)
        .collect();
    assert!(!greater.is_empty());
    for row in greater {
        assert!(report.findings.iter().any(|f| f.id == row.id
            && f.m == Some(row.m)
            && f.kind == FindingKind::ExceedsProjectiveCount));
    }
    for row in report.rows.iter().filter(|r| r.relation == Relation::Equal) {
        assert_eq!(row.jet_sep, Some(true), "{} m={}", row.id, row.m);
    }
}

#[test]
fn scan_independent_of_thread_count() {
    let records = load("reflexive_polygons.txt");
    let options = ScanOptions {
        m_max: 12,
        ..ScanOptions::default()
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| scan_conjecture(&records, &options))
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.rows, four.rows);
    assert_eq!(one.findings, four.findings);
}
