use num_traits::{One, Zero};
use proptest::prelude::*;
use sturmian_apr::continued_fraction::expand;
use sturmian_apr::{BigConvergents, BigInt, ContinuedFraction, FieldElement};

fn q(s: &str) -> FieldElement {
    s.parse().unwrap()
}

fn cf_strategy() -> impl Strategy<Value = ContinuedFraction> {
    (prop::collection::vec(1u64..=9, 0..=4), prop::collection::vec(1u64..=9, 1..=4))
        .prop_map(|(pre, per)| ContinuedFraction::new(pre, per).unwrap())
}

fn element(d: i64) -> impl Strategy<Value = FieldElement> {
    (-50i64..=50, -20i64..=20, 1i64..=30).prop_map(move |(a, b, c)| {
        FieldElement::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d)).unwrap()
    })
}

#[test]
fn worked_values() {
    assert_eq!(q("1") - q("(-1+sqrt(5))/2"), q("(3-sqrt(5))/2"));
    assert!(q("(-1+sqrt(5))/2") > q("3/5"));
    assert!(q("(-1+sqrt(5))/2") < q("5/8"));
    assert_eq!(q("sqrt(2)") * q("sqrt(2)"), q("2"));
    let silver: ContinuedFraction = "[0;1,(2)]".parse().unwrap();
    assert_eq!(silver.value::<BigInt>().unwrap(), q("sqrt(2)/2"));
    let e = expand(&q("(3-sqrt(5))/2"), 4).unwrap();
    assert_eq!(e.digits, vec![2, 1, 1, 1]);
    let half = expand(&q("1/2"), 4).unwrap();
    assert_eq!((half.digits, half.terminated), (vec![2], true));
}

#[test]
fn golden_convergents() {
    let golden: ContinuedFraction = "[0;(1)]".parse().unwrap();
    let conv = BigConvergents::of(&golden, 6);
    let p: Vec<i64> = (0..=6).map(|k| conv.p(k).try_into().unwrap()).collect();
    let qs: Vec<i64> = (0..=6).map(|k| conv.q(k).try_into().unwrap()).collect();
    assert_eq!(p, vec![0, 1, 1, 2, 3, 5, 8]);
    assert_eq!(qs, vec![1, 1, 2, 3, 5, 8, 13]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn continued_fraction_round_trip(cf in cf_strategy(), n in 1usize..=50) {
        let value = cf.value::<BigInt>().unwrap();
        prop_assert_eq!(ContinuedFraction::from_value(&value).unwrap(), cf.clone());
        let e = expand(&value, n).unwrap();
        prop_assert_eq!(e.digits, cf.unfolded(n));
        prop_assert!(!e.terminated);
    }

    #[test]
    fn text_round_trip(cf in cf_strategy()) {
        let text = cf.to_string();
        prop_assert_eq!(text.parse::<ContinuedFraction>().unwrap(), cf.clone());
        let value = cf.value::<BigInt>().unwrap();
        prop_assert_eq!(value.to_string().parse::<FieldElement>().unwrap(), value);
    }

    #[test]
    fn convergent_determinant(cf in cf_strategy(), k in 0usize..=40) {
        let conv = BigConvergents::of(&cf, k);
        for j in 0..=k as isize {
            let det = conv.p(j) * conv.q(j - 1) - conv.p(j - 1) * conv.q(j);
            let sign = if j % 2 == 0 { -BigInt::one() } else { BigInt::one() };
            prop_assert_eq!(det, sign);
        }
    }

    #[test]
    fn order_agrees_with_floats_away_from_ties(x in element(7), y in element(7)) {
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(x < y, fx < fy);
        }
    }

    #[test]
    fn field_axioms(x in element(5), y in element(5), z in element(5)) {
        prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z.clone());
        prop_assert_eq!(x.clone() - x.clone(), FieldElement::zero());
        if !y.is_zero() {
            prop_assert_eq!(x.clone() / y.clone() * y.clone(), x);
        }
    }
}
