use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use taut_circles::algebra::{automorphism_group, inner_automorphisms, outer_classes, smith_normal_form, GroupMap, IntMatrix};
use taut_circles::su2::{build_group, SubgroupSpec};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-50i64..=50, r * c).prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

/// Sparse matrices hit rank deficiency and nontrivial factors far more often.
fn sparse_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![4 => Just(0i64), 1 => -6i64..=6], r * c)
            .prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

fn check_snf(m: &IntMatrix) {
    let s = smith_normal_form(m);
    assert_eq!(s.u.determinant().abs(), BigInt::from(1));
    assert_eq!(s.v.determinant().abs(), BigInt::from(1));
    assert_eq!(s.u.mul(m).mul(&s.v), s.diagonal_matrix(m.rows(), m.cols()));
    for w in s.d.windows(2) {
        assert!(!w[0].is_negative() && !w[1].is_negative());
        if w[0].is_zero() {
            assert!(w[1].is_zero());
        } else {
            assert!(w[1].is_multiple_of(&w[0]), "{} does not divide {}", w[0], w[1]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_round_trip(m in matrix()) {
        check_snf(&m);
    }

    #[test]
    fn snf_round_trip_sparse(m in sparse_matrix()) {
        check_snf(&m);
    }

    /// The product of invariant factors of a square matrix is |det|.
    #[test]
    fn snf_determinant(n in 1usize..=6, e in proptest::collection::vec(-20i64..=20, 36)) {
        let m = IntMatrix::from_i64(n, n, &e[..n * n]);
        let s = smith_normal_form(&m);
        let prod = s.d.iter().fold(BigInt::from(1), |a, x| a * x);
        prop_assert_eq!(prod, m.determinant().abs());
    }
}

fn all_specs() -> Vec<SubgroupSpec> {
    let mut v: Vec<SubgroupSpec> = [1u32, 2, 3, 6, 12, 60].into_iter().map(SubgroupSpec::Cyclic).collect();
    v.extend([8u32, 12, 16, 20, 24, 48, 100, 200].into_iter().map(SubgroupSpec::Dstar));
    v.extend([SubgroupSpec::Tstar, SubgroupSpec::Ostar, SubgroupSpec::Istar]);
    v
}

#[test]
fn closures_satisfy_group_axioms() {
    for spec in all_specs() {
        let g = build_group(spec).unwrap();
        let t = &g.table;
        assert_eq!(t.order, spec.expected_order(), "{spec}");
        assert!(t.verify_axioms(), "{spec}");
        assert!(t.generates(&t.generator_indices), "{spec}");
        // exhaustive associativity in addition to the library's own check
        for a in 0..t.order {
            assert_eq!(t.m(0, a), a);
            assert_eq!(t.m(a, t.inv[a]), 0);
            for b in 0..t.order {
                let ab = t.m(a, b);
                for c in 0..t.order {
                    assert_eq!(t.m(ab, c), t.m(a, t.m(b, c)));
                }
            }
        }
    }
}

#[test]
fn inner_automorphisms_form_a_normal_subgroup() {
    for spec in [SubgroupSpec::q8(), SubgroupSpec::Dstar(12), SubgroupSpec::Dstar(16), SubgroupSpec::Tstar, SubgroupSpec::Ostar] {
        let g = build_group(spec).unwrap();
        let t = &g.table;
        let auts = automorphism_group(t);
        let inn = inner_automorphisms(t);
        assert_eq!(inn.len(), t.order / t.center().len(), "{spec}");
        for a in &auts {
            assert!(t.is_homomorphism(a));
            for i in &inn {
                let c = a.compose(i).compose(&a.inverse());
                assert!(inn.contains(&c), "{spec}: Inn not normal");
            }
        }
        let out = outer_classes(t, &auts);
        assert_eq!(out.count() * inn.len(), auts.len());
    }
}

/// Independent oracle: every bijective homomorphism of D*₁₂ is fixed by the images
/// of its two generators, so try all pairs and check the whole table.
#[test]
fn brute_force_automorphisms_of_dstar12() {
    let g = build_group(SubgroupSpec::Dstar(12)).unwrap();
    let t = &g.table;
    let gens = &t.generator_indices;
    // words over the generators reaching every element
    let mut word: Vec<Option<Vec<usize>>> = vec![None; t.order];
    word[0] = Some(vec![]);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = vec![];
        for &e in &frontier {
            for (k, &s) in gens.iter().enumerate() {
                let f = t.m(e, s);
                if word[f].is_none() {
                    let mut w = word[e].clone().unwrap();
                    w.push(k);
                    word[f] = Some(w);
                    next.push(f);
                }
            }
        }
        frontier = next;
    }
    let mut found = vec![];
    for a in 0..t.order {
        for b in 0..t.order {
            let imgs = [a, b];
            let images: Vec<usize> =
                word.iter().map(|w| w.as_ref().unwrap().iter().fold(0, |acc, &k| t.m(acc, imgs[k]))).collect();
            let mut sorted = images.clone();
            sorted.sort_unstable();
            if sorted != (0..t.order).collect::<Vec<_>>() {
                continue;
            }
            let hom = (0..t.order).all(|x| (0..t.order).all(|y| images[t.m(x, y)] == t.m(images[x], images[y])));
            if hom {
                found.push(GroupMap { images, bijective: true });
            }
        }
    }
    found.sort();
    assert_eq!(found.len(), 12);
    assert_eq!(found, automorphism_group(t));
    assert_eq!(inner_automorphisms(t).len(), 6);
}
