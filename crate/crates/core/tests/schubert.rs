use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sclab::combinat::{problem_degree_usize, Partition, SchubertProblem};
use sclab::sampling::{all_real_type, draw_config, random_linear_form, random_rational};
use sclab::schubert::*;
use sclab_exact::field::rat;
use sclab_exact::linalg;
use sclab_exact::*;

fn boxes(k: usize, n: usize) -> SchubertProblem {
    SchubertProblem::new(k, n, vec![Partition::box_one(); k * (n - k)]).unwrap()
}

fn form_q(c: &[i64]) -> Retained<BigRational> {
    Retained::Linear(c.iter().map(|&x| rat(x, 1)).collect())
}

fn poly(c: &[i64]) -> UniPoly<RationalField> {
    UniPoly::from_i64s(RationalField, c)
}

/// Row space orthogonal to the forms under `<f, x> = Σ c_j j! x_j`, so that
/// `<f, γ^{(r)}(t)> = f^{(r)}(t)`.
fn annihilator(forms: &[UniPoly<RationalField>], n: usize) -> Vec<Vec<BigRational>> {
    let mut fact = BigRational::one();
    let mut weights = Vec::new();
    for j in 0..n {
        if j > 0 {
            fact *= rat(j as i64, 1);
        }
        weights.push(fact.clone());
    }
    let rows: Vec<Vec<BigRational>> = forms
        .iter()
        .map(|f| (0..n).map(|j| f.coeffs().get(j).cloned().unwrap_or_else(BigRational::zero) * &weights[j]).collect())
        .collect();
    linalg::kernel(&RationalField, &rows, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn osculating_flags_are_unimodular(n in 1usize..=8, num in -999i64..=999, den in 1i64..=50) {
        let t = Param::Finite(rat(num, den));
        prop_assert_eq!(flag_det(&osculating_flag(&RationalField, &t, n).unwrap()), BigRational::one());
    }

    /// A point t lies on the Wronskian of the forms exactly when their
    /// annihilator meets F_{n-k}(t).
    #[test]
    fn wronskian_roots_are_schubert_points(
        n in 4usize..=5,
        coeffs in prop::collection::vec(prop::collection::vec(-9i64..=9, 5), 3),
        mu in prop::collection::vec(-3i64..=3, 3),
        tail in prop::collection::vec(-5i64..=5, 2),
        t0 in (-6i64..=6, 1i64..=3),
    ) {
        let k = 2;
        let m = n - k;
        let t0 = rat(t0.0, t0.1);
        let mut forms: Vec<UniPoly<RationalField>> = coeffs[..m - 1].iter().map(|c| poly(&c[..n])).collect();
        // a last form vanishing to order m at t0 puts t0 on the Wronskian
        let mut last = UniPoly::linear_root(RationalField, &t0);
        for _ in 1..m {
            last = last.mul(&UniPoly::linear_root(RationalField, &t0));
        }
        last = last.mul(&poly(&tail[..n - m]));
        for (f, c) in forms.iter().zip(&mu) {
            last = last.add(&f.scale(&rat(*c, 1)));
        }
        forms.push(last);
        let h = annihilator(&forms, n);
        prop_assume!(h.len() == k);
        let w = wronskian(&forms);
        prop_assume!(!w.is_zero());
        prop_assert!(w.eval(&t0).is_zero());
        let mut pts = vec![t0];
        pts.extend((-8..=8).map(|j| rat(j, 2)));
        for t in pts {
            let flag = osculating_flag(&RationalField, &Param::Finite(t.clone()), n).unwrap();
            let member = membership_check(&RationalField, &h, &Partition::box_one(), &flag).unwrap();
            prop_assert_eq!(member, w.eval(&t).is_zero(), "t = {}", t);
        }
    }
}

#[test]
fn random_configs_give_finite_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let problems = [
        boxes(2, 4),
        boxes(2, 5),
        SchubertProblem::new(2, 5, vec![Partition::of(&[2]), Partition::of(&[2]), Partition::box_one(), Partition::box_one()])
            .unwrap(),
        SchubertProblem::new(2, 6, vec![Partition::of(&[2, 1]), Partition::of(&[3]), Partition::of(&[2])]).unwrap(),
    ];
    for p in &problems {
        let d = problem_degree_usize(p);
        let t = all_real_type(p);
        let mut exact = 0;
        for _ in 0..100 {
            let cfg = draw_config(&mut rng, p, &t, &[]).unwrap();
            let sys = assemble_instance(p, &cfg).unwrap();
            let form = random_linear_form(&mut rng, p.dim());
            let e = groebner_eliminate(&sys, &form_q(&form), ElimOptions::default()).unwrap();
            if e.poly.degree() == Some(d) {
                exact += 1;
            }
        }
        assert!(exact >= 95, "{}: {exact}/100 of degree {d}", p.render());
    }
}

#[test]
fn equation_styles_generate_the_same_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let problems = [
        boxes(2, 5),
        SchubertProblem::new(3, 6, vec![Partition::of(&[2, 1]), Partition::of(&[2, 1]), Partition::of(&[1, 1, 1])]).unwrap(),
        SchubertProblem::new(2, 6, vec![Partition::of(&[2, 1]), Partition::of(&[3]), Partition::of(&[2])]).unwrap(),
    ];
    for p in &problems {
        for _ in 0..5 {
            let cfg = draw_config(&mut rng, p, &all_real_type(p), &[]).unwrap();
            let form = form_q(&random_linear_form(&mut rng, p.dim()));
            let a = assemble_instance_with(p, &cfg, EquationStyle::Stacked).unwrap();
            let b = assemble_instance_with(p, &cfg, EquationStyle::Compact).unwrap();
            let ea = groebner_eliminate(&a, &form, ElimOptions::default()).unwrap();
            let eb = groebner_eliminate(&b, &form, ElimOptions::default()).unwrap();
            assert_eq!(ea.poly, eb.poly, "{}", p.render());
        }
    }
}

#[test]
fn conjugate_pairs_keep_their_solutions() {
    let p = boxes(2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let (a, b) = (random_rational(&mut rng), loop {
            let b = random_rational(&mut rng);
            if !b.is_zero() {
                break b;
            }
        });
        let z = Gaussian::new(a, b);
        let (r1, r2) = (random_rational(&mut rng), random_rational(&mut rng));
        assert_ne!(r1, r2);
        let cfg = OsculationConfig {
            points: vec![
                OscPoint::Pair { value: z.clone(), partner: 1 },
                OscPoint::Pair { value: z.conj(), partner: 0 },
                OscPoint::Real(Param::Finite(r1.clone())),
                OscPoint::Real(Param::Finite(r2.clone())),
            ],
        };
        let form = [7i64, -3, 5, 2];
        let realized = groebner_eliminate(&assemble_instance(&p, &cfg).unwrap(), &form_q(&form), ElimOptions::default())
            .unwrap();
        assert_eq!(realized.poly.degree(), Some(2));

        let g = GaussianField;
        let params = [z.clone(), z.conj(), Gaussian::real(r1), Gaussian::real(r2)];
        let flags: Vec<_> =
            params.iter().map(|t| osculating_flag(&g, &Param::Finite(t.clone()), 4).unwrap()).collect();
        let gsys = assemble_with_flags_in(&g, &p, &flags, EquationStyle::Stacked).unwrap();
        let retained = Retained::Linear(form.iter().map(|&c| Gaussian::real(rat(c, 1))).collect());
        let over_i = groebner_eliminate(&gsys, &retained, ElimOptions::default()).unwrap();
        assert_eq!(over_i.poly.degree(), Some(2));
        let expect: Vec<Gaussian> = realized.poly.coeffs().iter().map(|c| Gaussian::real(c.clone())).collect();
        assert_eq!(over_i.poly.coeffs(), &expect[..]);
    }
}

#[test]
fn membership_examples() {
    let f = RationalField;
    let flag0 = osculating_flag(&f, &Param::Finite(BigRational::zero()), 4).unwrap();
    let mut h = flag0[..1].to_vec();
    h.push(vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
    assert!(membership_check(&f, &h, &Partition::box_one(), &flag0).unwrap());
    let x = [[3i64, -1], [2, 5]];
    let generic: Vec<Vec<BigRational>> = (0..2)
        .map(|r| {
            let mut row = vec![rat(0, 1); 4];
            row[r] = rat(1, 1);
            row[2] = rat(x[r][0], 1);
            row[3] = rat(x[r][1], 1);
            row
        })
        .collect();
    assert!(!membership_check(&f, &generic, &Partition::box_one(), &flag0).unwrap());
    assert!(membership_check(&f, &generic, &Partition::empty(), &flag0).unwrap());
    let deficient = vec![h[0].clone(), h[0].clone()];
    assert!(membership_check(&f, &deficient, &Partition::box_one(), &flag0).is_err());
}
