use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use taut_circles::algebra::IntMatrix;
use taut_circles::seifert::{
    chi_orb, det_c, euler_number, fibre_index, h1, matrix_c, parse_seifert, raymond_vasquez, SeifertData,
};
use taut_circles::weil::lift_uniqueness;

fn cone() -> impl Strategy<Value = (i64, i64)> {
    (2i64..=30).prop_flat_map(|a| (Just(a), (1..a).prop_filter("coprime", move |b| b.gcd(&a) == 1)))
}

fn tuple() -> impl Strategy<Value = SeifertData> {
    (0u32..=3, -6i64..=6, proptest::collection::vec(cone(), 0..=6))
        .prop_map(|(g, b, cones)| SeifertData::new(g, b, cones).unwrap())
}

/// Tuples built backwards from a fibre index, so that most of them carry a certificate.
fn rv_tuple() -> impl Strategy<Value = SeifertData> {
    (0u32..=3, prop_oneof![1i64..=12, -12i64..=-1], proptest::collection::vec(2i64..=30, 0..=6)).prop_filter_map(
        "no integral b",
        |(g, r, alphas)| {
            let mut cones = vec![];
            let mut sum_k = 0;
            for a in alphas {
                if r.gcd(&a) != 1 {
                    return None;
                }
                // βⱼ ≡ (αⱼ − 1)/r mod αⱼ
                let inv = (1..a).find(|x| (x * r).rem_euclid(a) == 1)?;
                let be = ((a - 1) * inv).rem_euclid(a);
                if be == 0 {
                    return None;
                }
                sum_k += (r * be - a + 1) / a;
                cones.push((a, be));
            }
            let num = 2 * g as i64 - 2 - sum_k;
            let s = SeifertData::new(g, (num % r == 0).then_some(num / r)?, cones).unwrap();
            (!euler_number(&s).is_zero()).then_some(s)
        },
    )
}

/// det C by cofactor expansion, independent of the library's elimination.
fn det_cofactor(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor: Vec<Vec<i64>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| i64::try_from(m.get(i, c).clone()).unwrap()).collect())
            .collect();
        let term = m.get(0, j) * det_cofactor(&IntMatrix::from_rows(&minor));
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_identity(s in tuple()) {
        let e = euler_number(&s).clone();
        let expect = BigRational::from_integer(s.alpha_product()) * e;
        prop_assert!(expect.is_integer());
        let det = det_c(&s);
        prop_assert_eq!(&BigRational::from_integer(det.clone()), &expect);
        prop_assert_eq!(det_cofactor(&matrix_c(&s)), det);
    }

    #[test]
    fn homology_torsion_is_det_c(s in tuple()) {
        let h = h1(&s);
        let det = det_c(&s);
        if det.is_zero() {
            prop_assert_eq!(h.rank, 2 * s.g as usize + 1);
        } else {
            prop_assert_eq!(h.rank, 2 * s.g as usize);
            prop_assert_eq!(BigInt::from(h.torsion_order()), det.abs());
        }
        for w in h.torsion.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn lift_uniqueness_is_det_c_nonzero(s in tuple()) {
        prop_assert_eq!(lift_uniqueness(&s).unique, !det_c(&s).is_zero());
    }

    #[test]
    fn certificates_satisfy_the_equations(s in rv_tuple()) {
        let cert = raymond_vasquez(&s);
        prop_assert!(cert.is_some(), "{}", s);
        let cert = cert.unwrap();
        let r = BigRational::from_integer(BigInt::from(cert.r));
        prop_assert_eq!(&r, &(chi_orb(&s) / euler_number(&s)));
        prop_assert_eq!(r, fibre_index(&s).unwrap());
        let sum_k: i64 = cert.k.iter().sum();
        prop_assert_eq!(cert.r * s.b, 2 * s.g as i64 - 2 - sum_k);
        for (&(a, be), &k) in s.cones.iter().zip(&cert.k) {
            prop_assert_eq!(cert.r * be, a - 1 + k * a);
        }
        // equal orders force equal β
        for (i, &(a, be)) in s.cones.iter().enumerate() {
            for &(a2, be2) in &s.cones[i + 1..] {
                if a == a2 {
                    prop_assert_eq!(be, be2);
                }
            }
        }
    }

    #[test]
    fn text_form_round_trips(s in tuple()) {
        prop_assert_eq!(parse_seifert(&s.to_string()).unwrap(), s);
    }
}

#[test]
fn certificate_examples() {
    let s = parse_seifert("g=0 b=-2 (2,1) (3,2) (7,6)").unwrap();
    assert_eq!(raymond_vasquez(&s).unwrap().r, 1);
    // orientation reversal flips the sign of r
    let t = parse_seifert("g=0 b=-1 (2,1) (3,1) (7,1)").unwrap();
    assert_eq!(raymond_vasquez(&t).unwrap().r, -1);
    // r = 5/3
    let u = parse_seifert("g=2 b=1 (2,1)").unwrap();
    assert!(raymond_vasquez(&u).is_none());
}
