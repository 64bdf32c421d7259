mod common;

use abax_core::board::{apply_move, commit, normalize, stage};
use abax_core::codecs::{format_positional, format_roman, parse_positional, parse_roman, RomanStyle, Style};
use abax_core::exactnum::{balanced_expand, from_positional, to_positional};
use abax_core::workbench::{add, divide, load, multiply, read_scaled, Strategy as Plan};
use abax_core::{BaseConfig, BigInt, BoardState, Rational, Rounding, Scaled, Zone, ZoneSel};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config_strategy() -> impl Strategy<Value = BaseConfig> {
    prop::sample::select(configs())
}

/// A value with at most `digits` significant digits in `base`.
fn operand(base: u32, digits: usize) -> impl Strategy<Value = Scaled> {
    let top = (base as i64).pow(digits as u32);
    (1..top, any::<bool>(), -3i64..=3).prop_map(move |(n, neg, shift)| {
        let f = q(if neg { -n } else { n }, top);
        Scaled::from_value(&(f * abax_core::exactnum::pow_base::<BigInt>(base, shift)), base)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn balanced_expand_rebuilds_its_input(c in config_strategy(), v in 0i64..1_000_000_000) {
        let values = rung_values(&c, 10);
        let factors: Vec<u32> = (0..10).flat_map(|_| c.ladder.iter().map(|r| r.factor)).collect();
        let e = balanced_expand(&v, &factors).unwrap();
        let total: i64 = e.iter().zip(&values).map(|(n, r)| n * r).sum();
        prop_assert_eq!(total, v);
        for (i, n) in e.iter().enumerate() {
            prop_assert!(n.unsigned_abs() <= c.canonical_bound(i % c.ladder.len()) as u64);
        }
    }

    #[test]
    fn positional_round_trip(c in config_strategy(), n in -1_000_000i64..1_000_000, d_exp in 0u32..6, digits in 1usize..12) {
        let x = q(n, (c.base as i64).pow(d_exp));
        let p = to_positional(&x, c.base, digits, Rounding::Truncate);
        let back: Rational = from_positional(&p).unwrap();
        // Exact whenever the digits suffice.
        let needed = to_positional(&x, c.base, 64, Rounding::Truncate).digits.len();
        if needed <= digits {
            prop_assert_eq!(back.clone(), x.clone());
        }
        let text = format_positional(&p, Style::Exponent);
        let parsed = parse_positional(&text, c.base).unwrap();
        prop_assert_eq!(parsed.number.to_rational::<BigInt>().unwrap(), back);
    }

    #[test]
    fn stage_and_commit_add_values(c in config_strategy(), a in 1i64..100_000, b in -100_000i64..100_000) {
        let board = BoardState::new(c.clone());
        let base = c.base;
        let sa = scaled(&q(a, 1), base);
        let board = commit(&stage(&board, &sa.fraction, sa.shift).unwrap()).unwrap();
        let sb = scaled(&q(b, 1), base);
        let staged = stage(&board, &sb.fraction, sb.shift).unwrap();
        prop_assert_eq!(staged.value(ZoneSel::Both), q(a + b, 1));
        let done = commit(&staged).unwrap();
        prop_assert_eq!(done.value(ZoneSel::Committed), q(a + b, 1));
        prop_assert!(done.is_canonical(Zone::Committed));
    }

    #[test]
    fn board_add_matches_rationals((c, x, y) in config_strategy().prop_flat_map(|c| {
        let b = c.base;
        (Just(c), operand(b, 4), operand(b, 4))
    })) {
        let base = c.base;
        let b = load(&BoardState::working(c.clone()), &x).unwrap();
        let (out, t) = add(&b, &y).unwrap();
        prop_assert_eq!(out.value(ZoneSel::Committed), x.value(base) + y.value(base));
        prop_assert!(t.replay().is_ok());
    }

    #[test]
    fn decimal_multiply_and_divide(x in operand(10, 6), y in operand(10, 6)) {
        let c = BaseConfig::decimal();
        let exact = x.value(10) * y.value(10);
        let (p, t) = multiply(&c, &x, &y, &Plan::DemoteFirst, 10).unwrap();
        prop_assert_eq!(p.value(10), round_sig(&exact, 10, 10));
        prop_assert!(t.replay().is_ok());
        let out = divide(&c, &x, &y, 8).unwrap();
        prop_assert_eq!(out.quotient.value(10), round_sig(&(x.value(10) / y.value(10)), 10, 8));
        prop_assert!(out.trace.replay().is_ok());
    }

    #[test]
    fn roman_round_trip(n in 1u64..=abax_core::codecs::ROMAN_MAX) {
        for style in [RomanStyle::Classic, RomanStyle::Extended] {
            let s = format_roman(n, style).unwrap();
            prop_assert_eq!(parse_roman(&s, style).unwrap(), n);
        }
    }
}

#[test]
fn preserving_moves_and_normalization_keep_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for c in configs() {
        for _ in 0..500 {
            let mut b = random_pile(&mut rng, &c);
            let v = b.value(ZoneSel::Both);
            for _ in 0..20 {
                let m = random_preserving_move(&mut rng, &b);
                let mut next = b.clone();
                if apply_move(&mut next, &m).is_ok() {
                    assert_eq!(next.value(ZoneSel::Both), v, "{m:?}");
                    b = next;
                }
            }
            let n = normalize(&b).unwrap();
            assert_eq!(n.value(ZoneSel::Both), v);
            assert!(n.is_canonical(Zone::Staged) && n.is_canonical(Zone::Committed));
        }
    }
}

#[test]
fn balanced_expand_is_minimal_below_ten_thousand() {
    for c in configs() {
        let values = rung_values(&c, 8);
        let factors: Vec<u32> = (0..8).flat_map(|_| c.ladder.iter().map(|r| r.factor)).collect();
        let oracle = bfs_min_pebbles(&values[..values.len().min(12)], 10_000, 200_000);
        for v in 0..10_000i64 {
            let e = balanced_expand(&v, &factors).unwrap();
            let total: u32 = e.iter().map(|n| n.unsigned_abs() as u32).sum();
            assert_eq!(total, oracle[v as usize], "base {} value {v}", c.base);
        }
    }
}

#[test]
fn loading_then_reading_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    use rand::Rng;
    for c in configs() {
        let top = (c.base as i64).pow(c.fraction_digits as u32);
        for _ in 0..300 {
            let n = rng.gen_range(-top + 1..top);
            let shift = rng.gen_range(-5..=5);
            let x = Scaled::from_value(&(q(n, top) * abax_core::exactnum::pow_base::<BigInt>(c.base, shift)), c.base);
            match load(&BoardState::new(c.clone()), &x) {
                Ok(b) => assert_eq!(read_scaled(&b), x.normalized(c.base)),
                Err(e) => panic!("{e} for {x:?}"),
            }
        }
    }
}
