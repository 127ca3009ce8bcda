use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sclab_exact::descartes::count_real_roots_squarefree;
use sclab_exact::eliminate::{back_substitute, lex_eliminate};
use sclab_exact::factor::distinct_degree;
use sclab_exact::field::rat;
use sclab_exact::sturm::to_primitive_integer;
use sclab_exact::*;

fn fp_poly(p: u64, coeffs: &[u64]) -> UniPoly<PrimeField> {
    let f = PrimeField::new(p);
    UniPoly::new(f, coeffs.iter().map(|c| c % p).collect())
}

fn q_poly(c: &[i64]) -> UniPoly<RationalField> {
    UniPoly::from_i64s(RationalField, c)
}

fn from_roots(roots: &[i64]) -> UniPoly<RationalField> {
    roots.iter().fold(q_poly(&[1]), |acc, &r| acc.mul(&UniPoly::linear_root(RationalField, &rat(r, 1))))
}

/// Sign changes of `f` over the half-integer grid on `[-r, r]`: the real
/// root count when the real roots are distinct integers inside, found by
/// evaluation alone.
fn grid_root_count(f: &UniPoly<RationalField>, r: i64) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for j in -2 * r..=2 * r {
        let v = f.eval(&BigRational::new(BigInt::from(2 * j + 1), BigInt::from(2)));
        let pos = v > rat(0, 1);
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factor_product_round_trip(
        coeffs in prop::collection::vec(0u64..1 << 20, 2..14),
        lead in 1u64..1000,
        seed in any::<u64>(),
    ) {
        for p in [101u64, 10007, 11311] {
            let mut c = coeffs.clone();
            c.push(lead);
            let f = fp_poly(p, &c);
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let fac = factor_mod_p(&f, &mut rng);
            prop_assert_eq!(fac.expand(PrimeField::new(p)), f.clone());
            prop_assert_eq!(fac.degree_pattern().iter().sum::<usize>(), f.degree().unwrap());
            for (g, _) in &fac.factors {
                prop_assert_eq!(g.leading_coeff(), Some(&1));
                let dd = distinct_degree(g);
                prop_assert_eq!(dd.len(), 1);
                prop_assert_eq!(dd[0].1, g.degree().unwrap());
            }
        }
    }

    #[test]
    fn sturm_counts_known_roots(
        roots in prop::collection::btree_set(-40i64..40, 0..7),
        quads in prop::collection::vec((-5i64..5, 1i64..20), 0..3),
    ) {
        let roots: Vec<i64> = roots.into_iter().collect();
        let mut f = from_roots(&roots);
        for (b, c) in &quads {
            // x^2 + b x + (b^2 + c): negative discriminant
            f = f.mul(&q_poly(&[b * b + c, *b, 1]));
        }
        prop_assume!(f.degree().unwrap() >= 1 && f.degree().unwrap() <= 12);
        prop_assume!(f.is_squarefree());
        let s = sturm_count(&f).unwrap();
        prop_assert_eq!(s, roots.len());
        prop_assert_eq!(grid_root_count(&f, 41), s);
    }

    #[test]
    fn sturm_matches_bisection_isolator(coeffs in prop::collection::vec(-1000i64..1000, 2..14)) {
        let f = q_poly(&coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1 && f.is_squarefree());
        let s = sturm_count(&f).unwrap();
        prop_assert_eq!(count_real_roots_squarefree(&to_primitive_integer(&f)), s);
        prop_assert_eq!(gated_real_count(&f, f.degree().unwrap()), Some(s));
    }

    #[test]
    fn prime_field_axioms(
        p in prop::sample::select(vec![101u64, 10007, 11311, 4611686018427387847]),
        a in any::<u64>(), b in any::<u64>(), c in any::<u64>(),
    ) {
        let f = PrimeField::new(p);
        let (a, b, c) = (a % p, b % p, c % p);
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if a != 0 {
            prop_assert_eq!(f.pow(&a, p - 1), 1);
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn wronskian_row_operations(
        polys in prop::collection::vec(prop::collection::vec(0u64..10007, 1..7), 2..4),
        s in 1u64..10007,
        t in 0u64..10007,
    ) {
        let p = 10007;
        let fs: Vec<UniPoly<PrimeField>> = polys.iter().map(|c| fp_poly(p, c)).collect();
        let w = wronskian(&fs);
        let mut sheared = fs.clone();
        sheared[0] = fs[0].add(&fs[1].scale(&t));
        prop_assert_eq!(wronskian(&sheared), w.clone());
        let mut scaled = fs.clone();
        scaled[1] = fs[1].scale(&s);
        prop_assert_eq!(wronskian(&scaled), w.scale(&s));
        let mut swapped = fs.clone();
        swapped.swap(0, 1);
        prop_assert_eq!(wronskian(&swapped), w.neg());
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lex_back_substitution(
        sets in prop::collection::vec(prop::collection::btree_set(-6i64..6, 1..4), 2..5),
        form in prop::collection::vec(prop::sample::select(vec![-19i64, -11, -5, 3, 7, 13, 17]), 4),
    ) {
        // prod (x_i - a) over a in sets[i]: a grid of points
        let q = RationalField;
        let nv = sets.len();
        let one = MultiPoly::constant(q, nv, rat(1, 1));
        let mut sys = PolySystem::new(q, (0..nv).map(|i| format!("x{i}")).collect());
        for (i, s) in sets.iter().enumerate() {
            let x = MultiPoly::var(q, nv, i);
            sys.push(s.iter().fold(one.clone(), |acc, &r| acc.mul(&x.sub(&one.scale(&rat(r, 1))))));
        }
        let mut points: Vec<Vec<i64>> = vec![vec![]];
        for s in &sets {
            points = points.iter().flat_map(|p| s.iter().map(move |&a| [p.clone(), vec![a]].concat())).collect();
        }
        let value = |p: &[i64]| p.iter().zip(&form).map(|(a, c)| a * c).sum::<i64>();
        let mut values: Vec<i64> = points.iter().map(|p| value(p)).collect();
        values.sort();
        values.dedup();
        prop_assume!(values.len() == points.len());
        let c: Vec<BigRational> = form[..nv].iter().map(|&c| rat(c, 1)).collect();
        let retained = Retained::Linear(c);
        let shape = groebner_shape(&sys, &retained, ElimOptions::default()).unwrap().unwrap();
        prop_assert_eq!(shape.eliminant.degree(), Some(points.len()));
        for p in &points {
            let r = rat(value(p), 1);
            prop_assert_eq!(shape.eliminant.eval(&r), rat(0, 1));
            let pt = shape.point(&r);
            let expect: Vec<BigRational> = p.iter().map(|&a| rat(a, 1)).collect();
            prop_assert_eq!(&pt, &expect);
            prop_assert!(sys.satisfied_by(&pt));
        }
        // Buchberger under lex agrees where it is cheap
        if points.len() <= 8 {
            let l = lex_eliminate(&sys, &retained, GbOptions::default()).unwrap();
            prop_assert_eq!(&l.eliminant.poly, &shape.eliminant);
            for p in &points {
                let r = rat(value(p), 1);
                prop_assert_eq!(&back_substitute(&l.basis, &r).unwrap()[..nv], &shape.point(&r)[..]);
            }
        }
    }
}

#[test]
fn grid_oracle_sees_every_integer_root() {
    let f = from_roots(&[-3, -2, 1, 2, 30]).mul(&q_poly(&[5, 0, 1]));
    assert_eq!(grid_root_count(&f, 41), 5);
    assert_eq!(sturm_count(&f).unwrap(), 5);
}
