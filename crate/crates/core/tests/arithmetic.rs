use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallkit_core::exact::Scalar;

/// Decimal digits carried by the fixed-point oracle.
const DIGITS: u32 = 60;

fn pow10() -> BigInt {
    BigInt::from(10u32).pow(DIGITS)
}

/// floor(√3 · 10^DIGITS) by integer Newton iteration, independent of `Scalar`.
fn sqrt3_fixed() -> BigInt {
    let n = BigInt::from(3u32) * pow10() * pow10();
    let mut x = n.clone();
    loop {
        let y = (&x + &n / &x) / 2u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `s` scaled by 10^DIGITS and truncated; absolute error below |b| + 1 units.
fn fixed(s: &Scalar, r3: &BigInt) -> BigInt {
    let (a, b, d) = s.parts();
    (a * pow10() + b * r3) / d
}

fn scalar(a: i64, b: i64, d: i64) -> Scalar {
    Scalar::new(a, b, d)
}

fn small() -> impl Strategy<Value = Scalar> {
    (-50i64..50, -50i64..50, 1i64..30).prop_map(|(a, b, d)| scalar(a, b, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn field_axioms(x in small(), y in small(), z in small()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, Scalar::ZERO);
        prop_assert_eq!(&x * &Scalar::ONE, x.clone());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), Scalar::ONE);
        } else {
            prop_assert!(x.recip().is_err());
        }
    }

    #[test]
    fn order_is_compatible(x in small(), y in small(), z in small()) {
        if x < y {
            prop_assert!(&x + &z < &y + &z);
            if z.is_positive() {
                prop_assert!(&x * &z < &y * &z);
            }
        }
        prop_assert_eq!(x.cmp(&y), (&x - &y).signum().cmp(&0));
    }
}

#[test]
fn ten_thousand_scalars_agree_with_decimal_oracle() {
    let r3 = sqrt3_fixed();
    let one = pow10();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let draw = |rng: &mut ChaCha8Rng| {
        // mix small values with ones that overflow the i64 fast path
        let big = rng.gen_bool(0.2);
        let m = if big { 1i64 << 40 } else { 1000 };
        let s = scalar(rng.gen_range(-m..m), rng.gen_range(-m..m), rng.gen_range(1..m));
        if big {
            &s * &s
        } else {
            s
        }
    };
    let tol = |s: &Scalar| -> BigInt {
        let (_, b, _) = s.parts();
        b.magnitude().clone().into()
    };
    for _ in 0..10_000 {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let (fx, fy) = (fixed(&x, &r3), fixed(&y, &r3));
        let slack = tol(&x) + tol(&y) + 4u32;
        // sum
        let fs = fixed(&(&x + &y), &r3);
        assert!((&fs - (&fx + &fy)).magnitude() <= slack.magnitude(), "{x} + {y}");
        // product, compared at the oracle's precision
        let p = &x * &y;
        let fp = fixed(&p, &r3);
        let approx = &fx * &fy / &one;
        let err = (&fp - &approx).magnitude().clone();
        let bound: BigInt = (fx.magnitude() + fy.magnitude() + one.magnitude()).into();
        assert!(BigInt::from(err) * &one <= bound * (&slack + tol(&p) + 4u32) * 4u32, "{x} * {y}");
        // order
        let diff = &fx - &fy;
        if diff.magnitude() > slack.magnitude() {
            assert_eq!(x > y, diff > BigInt::from(0), "{x} vs {y}");
        }
        assert_eq!(x == y, x.parts() == y.parts());
        // quotient round trip
        if !y.is_zero() {
            assert_eq!(&x.checked_div(&y).unwrap() * &y, x);
        }
    }
}

#[test]
fn sqrt3_is_irrational_and_positive() {
    let s = Scalar::sqrt3();
    assert_eq!(&s * &s, Scalar::int(3));
    assert!(s > Scalar::ratio(1732, 1000) && s < Scalar::ratio(1733, 1000));
    assert!(!s.is_rational());
}
