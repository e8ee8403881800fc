use super::*;
use crate::group::norm;

fn d(f: Family) -> SubgroupDescriptor {
    SubgroupDescriptor::new(f)
}

fn all_families() -> Vec<Family> {
    vec![
        Family::Levi,
        Family::MaximalCompact,
        Family::Diagonal,
        Family::Borel,
        Family::BorelFull,
        Family::UnipotentUpper,
        Family::UnipotentC(2.0),
        Family::TildeNPlus,
        Family::LineV(Slope::Finite(-1.0)),
        Family::LineV(Slope::Infinite),
        Family::HeisenbergLine { a: 1.0, b: 2.0, c: 3.0 },
        Family::NPlusSemidirectR2,
        Family::R2Full,
        Family::NPlusTimesXAxis,
    ]
}

#[test]
fn parametrize_examples() {
    let h = parametrize(&d(Family::HeisenbergLine { a: 1.0, b: 2.0, c: 3.0 }), &[1.0]).unwrap();
    assert_eq!(h, GroupElement::new(Mat2::upper_unipotent(1.0), Vec2::new(4.0, 2.0)));
    let v = parametrize(&d(Family::LineV(Slope::Finite(0.0))), &[5.0]).unwrap();
    assert_eq!(v, GroupElement::from_translation(Vec2::new(5.0, 0.0)));
    let u = parametrize(&d(Family::UnipotentC(2.0)), &[3.0]).unwrap();
    assert_eq!(u, GroupElement::new(Mat2::upper_unipotent(3.0), Vec2::new(6.0, 0.0)));
    assert_eq!(
        parametrize(&d(Family::Levi), &[1.0]),
        Err(Error::Arity { expected: 3, got: 1 })
    );
}

#[test]
fn dimension_table_matches_basis_rank() {
    let expected = [3, 1, 1, 2, 4, 1, 1, 1, 1, 1, 1, 3, 2, 2];
    for (f, k) in all_families().into_iter().zip(expected) {
        assert_eq!(f.dimension(), k, "{f:?}");
        let (basis, disconnected) = lie_algebra_basis(&d(f));
        assert_eq!(basis.len(), k);
        assert_eq!(rank(&basis, 1e-10), k, "{f:?}");
        assert_eq!(disconnected, f == Family::TildeNPlus);
        for b in &basis {
            assert!(b.m.trace().abs() <= 1e-12);
        }
    }
}

#[test]
fn basis_examples() {
    let (b, _) = lie_algebra_basis(&d(Family::Diagonal));
    assert_eq!(b, vec![LieAlgebraElement::new(Mat2::diag(1.0, -1.0), Vec2::ZERO)]);
    let (b, _) = lie_algebra_basis(&d(Family::HeisenbergLine { a: 1.0, b: 0.0, c: 0.7 }));
    assert_eq!(b, vec![LieAlgebraElement::new(Mat2::new(0.0, 1.0, 0.0, 0.0), Vec2::new(0.7, 0.0))]);
}

#[test]
fn basis_is_tangent_to_the_parametrization() {
    let h = GroupElement::new(Mat2::new(1.0, 2.0, 0.5, 2.0), Vec2::new(1.0, -1.0));
    for f in all_families() {
        let desc = SubgroupDescriptor::with_conjugator(f, h);
        let (basis, _) = lie_algebra_basis(&desc);
        let k = f.dimension();
        // Tangent vectors from finite differences must lie in the basis span.
        let eps = 1e-6;
        let mut all = basis.clone();
        for j in 0..k {
            let mut p = vec![0.0; k];
            p[j] = eps;
            let a = desc.element(&p, 1.0).to_array();
            p[j] = -eps;
            let b = desc.element(&p, 1.0).to_array();
            let t: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * eps)).collect();
            all.push(LieAlgebraElement::from_array(&t));
        }
        assert_eq!(rank(&all, 1e-6), k, "{f:?}");
    }
}

#[test]
fn one_param_examples() {
    let h = d(Family::HeisenbergLine { a: 1.0, b: 2.0, c: 3.0 });
    assert!(one_param_check(&h, 1.0, -1.0).unwrap() <= 1e-10);
    let v = d(Family::LineV(Slope::Finite(2.5)));
    assert_eq!(one_param_check(&v, 0.3, 1.7).unwrap(), 0.0);
    assert!(one_param_check(&d(Family::Diagonal), 0.3, 0.4).unwrap() <= 1e-10);
    assert!(one_param_check(&d(Family::Borel), 0.3, 0.4).is_err());
}

#[test]
fn conjugation_examples() {
    let base = d(Family::UnipotentUpper);
    assert_eq!(conjugate_descriptor(&GroupElement::IDENTITY, &base), base);
    let beta = 7.0;
    let s = 0.4;
    let c = conjugate_descriptor(&GroupElement::from_translation(Vec2::new(0.0, beta)), &base);
    let x = parametrize(&c, &[s]).unwrap();
    let expected = GroupElement::new(Mat2::upper_unipotent(s), Vec2::new(-s * beta, 0.0));
    assert!(dist(&x, &expected) <= 1e-12);

    let h1 = GroupElement::new(Mat2::new(2.0, 1.0, 1.0, 1.0), Vec2::new(0.3, 0.1));
    let h2 = GroupElement::new(Mat2::rotation(0.4), Vec2::new(-1.0, 2.0));
    let lhs = conjugate_descriptor(&h2, &conjugate_descriptor(&h1, &d(Family::Levi)));
    let rhs = conjugate_descriptor(&mul(&h2, &h1), &d(Family::Levi));
    let p = [0.3, -0.2, 0.5];
    assert!(dist(&parametrize(&lhs, &p).unwrap(), &parametrize(&rhs, &p).unwrap()) <= 1e-12);
}

#[test]
fn vertical_line_distance() {
    let x = GroupElement::from_translation(Vec2::new(2.0, 0.0));
    assert!((distance_to(&d(Family::LineV(Slope::Infinite)), &x) - 2.0).abs() <= 1e-12);
}

#[test]
fn heisenberg_rotation_distance_matches_grid_oracle() {
    let x = GroupElement::from_matrix(Mat2::rotation(0.5));
    let target = d(Family::NPlusSemidirectR2);
    // Oracle: scan the unipotent parameter directly.
    let mut oracle = f64::INFINITY;
    for i in 0..=200_000 {
        let s = -5.0 + i as f64 * 5e-5;
        oracle = oracle.min((x.matrix - Mat2::upper_unipotent(s)).frobenius());
    }
    let got = distance_to(&target, &x);
    assert!((got - oracle).abs() <= 1e-6, "{got} vs {oracle}");
    let numeric = Prepared::numeric(&target, &Window::default()).distance(&x);
    assert!(numeric.certified);
    assert!((numeric.value - oracle).abs() <= 1e-6, "{} vs {oracle}", numeric.value);
}

#[test]
fn numeric_and_closed_forms_agree() {
    let w = Window::default();
    let probes = [
        GroupElement::new(Mat2::new(1.2, 0.3, -0.4, 0.9333333333333333), Vec2::new(0.5, -0.7)),
        GroupElement::new(Mat2::rotation(2.0), Vec2::new(-1.0, 0.2)),
        GroupElement::from_translation(Vec2::new(1.0, 1.5)),
        GroupElement::new(Mat2::upper_unipotent(-1.1).scale(-1.0), Vec2::new(0.1, 0.0)),
    ];
    for f in [
        Family::UnipotentUpper,
        Family::UnipotentC(2.0),
        Family::TildeNPlus,
        Family::LineV(Slope::Finite(-0.5)),
        Family::NPlusSemidirectR2,
        Family::R2Full,
        Family::NPlusTimesXAxis,
        Family::Levi,
    ] {
        let desc = SubgroupDescriptor::with_conjugator(
            f,
            GroupElement::from_matrix(Mat2::rotation(0.3)),
        );
        let prep = Prepared::numeric(&desc, &w);
        for x in &probes {
            let x = GroupElement::new(x.matrix.renormalized(), x.translation);
            let exact = closed_form(&desc, &x).unwrap();
            let num = prep.distance(&x);
            assert!((num.value - exact).abs() <= 1e-6, "{f:?} {x}: {} vs {exact}", num.value);
        }
    }
}

#[test]
fn line_sample_is_the_expected_grid() {
    let pts = sample(&d(Family::LineV(Slope::Finite(0.0))), &Window { radius: 2.0, mesh: 0.1 });
    assert_eq!(pts.len(), 41);
    for p in &pts {
        assert_eq!(p.matrix, Mat2::IDENTITY);
        assert_eq!(p.translation.y, 0.0);
        let k = p.translation.x / 0.1;
        assert!((k - k.round()).abs() < 1e-9);
    }
}

#[test]
fn tilde_sample_contains_minus_identity() {
    let pts = sample(&d(Family::TildeNPlus), &Window::default());
    assert!(pts.iter().any(|p| dist(p, &GroupElement::from_matrix(-Mat2::IDENTITY)) < 1e-12));
}

#[test]
fn samples_lie_in_family_and_window() {
    let w = Window::new(2.0, 0.1).unwrap();
    let h = GroupElement::new(Mat2::new(1.0, 1.0, 0.0, 1.0), Vec2::new(0.5, 0.0));
    for f in all_families() {
        let desc = SubgroupDescriptor::with_conjugator(f, h);
        let prep = Prepared::new(&desc, &w);
        assert!(!prep.samples().is_empty());
        for x in prep.samples().iter().step_by(37) {
            assert!(norm(x) <= w.radius * (1.0 + 1e-9));
            let r = prep.distance(x);
            assert!(r.value <= 1e-8, "{f:?}: {x} at {}", r.value);
        }
    }
}

#[test]
fn one_dimensional_samples_cover_at_mesh() {
    let w = Window::new(3.0, 0.05).unwrap();
    let desc = SubgroupDescriptor::with_conjugator(
        Family::MaximalCompact,
        GroupElement::from_matrix(Mat2::upper_unipotent(30.0)),
    );
    let pts = sample(&desc, &w);
    // Dense walk along the family: every in-window point must be near a sample.
    for i in 0..20_000 {
        let theta = -std::f64::consts::PI + i as f64 * (2.0 * std::f64::consts::PI / 20_000.0);
        let y = desc.element(&[theta], 1.0);
        if norm(&y) > w.radius {
            continue;
        }
        let nearest = pts.iter().map(|p| dist(p, &y)).fold(f64::INFINITY, f64::min);
        assert!(nearest <= w.mesh * 1.0001, "theta {theta}: {nearest}");
    }
}

#[test]
fn display_and_heisenberg_validation() {
    assert!(Family::heisenberg(0.0, 0.0, 0.0).is_err());
    let s = d(Family::LineV(Slope::Infinite)).to_string();
    assert_eq!(s, "LineV(inf)");
}
