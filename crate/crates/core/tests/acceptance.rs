//! One line per acceptance criterion. Criteria known to be unreachable are
//! still computed in full and reported as FAIL; any other failure fails the
//! test.

mod common;

use std::time::{Duration, Instant};

use abax_core::analysis::*;
use abax_core::board::{apply_move, normalize};
use abax_core::codecs::{board_roman_reading, format_positional, format_roman, parse_positional, parse_roman, RomanStyle, Style};
use abax_core::exactnum::{pow_base, to_positional};
use abax_core::workbench::*;
use abax_core::{BaseConfig, BigInt, BoardState, GridId, Layout, Rational, Rounding, Scaled, Side, Zone, ZoneSel};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dec(n: i64, d: i64) -> Scaled {
    scaled(&q(n, d), 10)
}

fn b12(text: &str) -> Scaled {
    Scaled::from_positional(&parse_positional(text, 12).unwrap().number).unwrap()
}

fn clues() -> Check {
    let start = load(&BoardState::new(BaseConfig::decimal()), &dec(-1946, 1)).map_err(|e| e.to_string())?;
    let (b, _) = add(&start, &dec(2009, 1)).map_err(|e| e.to_string())?;
    ensure(b.value(ZoneSel::Committed) == q(63, 1), || "sum is not 63".into())?;
    let scale = pow_base::<BigInt>(10, b.shift());
    let pattern: Vec<(Rational, i64)> = b.committed_pattern().into_iter().map(|(v, n)| (v * &scale, n)).collect();
    ensure(pattern == vec![(q(1, 1), -2), (q(5, 1), 1), (q(10, 1), 1), (q(50, 1), 1)], || format!("pattern {pattern:?}"))?;
    let reading = board_roman_reading(&b).map_err(|e| e.to_string())?;
    match parse_roman("LXIIIV", RomanStyle::Extended) {
        Ok(63) => Ok(format!("63, board reads {reading}")),
        Ok(n) => Err(format!("LXIIIV parses as {n}")),
        Err(e) => Err(format!("63 with pebbles L X V -II (read {reading}); \"LXIIIV\" rejected: {e}")),
    }
}

fn multiplication() -> Check {
    use MultiplyStep::*;
    let script = Strategy::Scripted(vec![Line, Line, Line, DoubleHalve, Line]);
    let (p, t) = multiply_with_layout(&BaseConfig::decimal(), &dec(84, 100), &dec(93, 100), &script, 10, Layout::Digitwise)
        .map_err(|e| e.to_string())?;
    let sums: Vec<Rational> = t
        .events
        .iter()
        .filter(|e| e.board == BoardId::Right && e.action == Action::Commit)
        .map(|e| &e.fraction * pow_base::<BigInt>(10, e.shift))
        .collect();
    let want = vec![q(84, 100), q(756, 1000), q(7392, 10000), q(7812, 10000)];
    ensure(sums == want, || format!("accumulations {sums:?}"))?;
    ensure(p.value(10) == q(7812, 10000), || "product".into())?;
    t.replay().map_err(|e| e.to_string())?;
    Ok("0.84, 0.756, 0.7392, 0.7812".into())
}

fn division() -> Check {
    let out = divide(&BaseConfig::decimal(), &dec(84, 100), &dec(93, 100), 10).map_err(|e| e.to_string())?;
    ensure(out.quotient.value(10) == q(9_032_258_065, 10_000_000_000), || format!("quotient {:?}", out.quotient))?;
    out.trace.replay().map_err(|e| e.to_string())?;
    if out.increments != DIVISION_TABLE {
        let first = out.increments.iter().zip(DIVISION_TABLE.iter()).position(|(a, b)| a != b);
        return Err(format!(
            "quotient 0.9032258065 matches, increments differ from position {:?}: greedy {:?}, table {:?}",
            first.map(|i| DIVISION_TABLE[i].0),
            &out.increments[first.unwrap_or(0)..],
            &DIVISION_TABLE[first.unwrap_or(0)..]
        ));
    }
    Ok("0.9032258065 with the printed increments".into())
}

fn sqrt_two_base60() -> Check {
    let out = heron_sqrt(&BaseConfig::sexagesimal(), &scaled(&q(2, 1), 60), 4).map_err(|e| e.to_string())?;
    let text = format_positional(&out.root.to_positional(60, 4, Rounding::Truncate), Style::Plain);
    ensure(text == "1;24,51,10", || text.clone())?;
    ensure(out.iterations == 3, || format!("{} iterations", out.iterations))?;
    ensure(out.states[3].a == q(577, 408), || format!("a3 = {}", out.states[3].a))?;
    Ok(format!("{text}, a3 = 577/408"))
}

fn frontinus() -> Check {
    let c = BaseConfig::duodecimal();
    let (num, _) = multiply(&c, &b12("1;4"), &b12("1;4"), &Strategy::DemoteFirst, 5).map_err(|e| e.to_string())?;
    let (den, _) = multiply(&c, &b12("1;3"), &b12("1;3"), &Strategy::DemoteFirst, 5).map_err(|e| e.to_string())?;
    let out = divide(&c, &num, &den, 4).map_err(|e| e.to_string())?;
    let text = format_positional(&out.quotient.to_positional(12, 4, Rounding::Nearest), Style::Plain);
    ensure(text == "1;1,7,10", || text.clone())?;
    ensure(out.quotient.value(12) > b12("1;1,6").value(12), || "not above 1;1,6".into())?;
    Ok(format!("{text} > 1;1,6"))
}

fn efficiency_table_check() -> Check {
    let values = rung_values(&BaseConfig::decimal(), 7);
    let signed = bfs_min_pebbles(&values, 20_000, 2_000_000);
    let plain = unsigned_min_pebbles(&values, 20_000);
    for k in 0..=8 {
        let (s, p) = (max_sequential_count(k, true).unwrap(), max_sequential_count(k, false).unwrap());
        ensure(s == brute_max_count(&signed, k) && p == brute_max_count(&plain, k), || format!("oracle disagrees at k = {k}"))?;
    }
    let mut wrong = Vec::new();
    for k in 0..32u32 {
        let p = max_sequential_count(k, false).unwrap();
        let s = max_sequential_count(k, true).unwrap();
        if p != PUBLISHED_PLAIN[k as usize] {
            wrong.push(format!("plain k={k}: {p}"));
        }
        if s != PUBLISHED_SIGNED[k as usize] {
            wrong.push(format!("signed k={k}: {s}"));
        }
    }
    let s31 = max_sequential_count(31, true).unwrap();
    let p31 = max_sequential_count(31, false).unwrap();
    let ratio = (2 * s31 + p31) / (2 * p31);
    if wrong.is_empty() && ratio == 9259 {
        return Ok("64 cells, ratio 9259".into());
    }
    Err(format!(
        "{} of 64 cells differ (first: {}), exact ratio at k = 31 is {ratio}; small-k oracle agrees",
        wrong.len(),
        wrong.first().cloned().unwrap_or_default()
    ))
}

fn cost_model() -> Check {
    let (p, c) = table_method_cost(5, 5).map_err(|e| e.to_string())?;
    let got = (p, c.additions, c.table_lookups, c.doublings, c.subtractions, c.halvings, c.total);
    ensure(got == (19, 56, 38, 8, 38, 38, 178), || format!("{got:?}"))?;
    Ok("19 products, 56/38/8/38/38 = 178".into())
}

fn footnote() -> Check {
    let p = embedded_zero_probability(60, 5);
    let expected = Rational::from_integer(1.into())
        - Rational::new(BigInt::from(59).pow(5) - 1, BigInt::from(58) * BigInt::from(60).pow(4));
    ensure(p == expected, || format!("{p}"))?;
    let d = to_positional(&p, 10, 12, Rounding::Truncate);
    let digits: String = d.digits.iter().map(|x| x.to_string()).collect();
    ensure(d.shift == -1 && digits == "488980709876", || format!("expansion {digits} shift {}", d.shift))?;
    let (with, all) = enumerate_embedded_zeros(10, 3);
    ensure(embedded_zero_probability(10, 3) == q(with as i64, all as i64), || "enumeration".into())?;
    Ok(format!("{p} = 0.0488980709876..."))
}

fn random_operand<R: Rng>(rng: &mut R, c: &BaseConfig) -> Scaled {
    let top = (c.base as i64).pow(c.fraction_digits as u32);
    let mut n = rng.gen_range(1..top);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    let shift = rng.gen_range(-3..=3);
    Scaled::from_value(&(q(n, top) * pow_base::<BigInt>(c.base, shift)), c.base)
}

/// The randomized suites for one configuration: a quarter of the move
/// sequences and layouts, and all of its operand pairs.
fn properties_for(c: &BaseConfig, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..25_000 {
        let mut b = random_pile(&mut rng, c);
        let v = b.value(ZoneSel::Both);
        for _ in 0..8 {
            let m = random_preserving_move(&mut rng, &b);
            let mut next = b.clone();
            if apply_move(&mut next, &m).is_ok() {
                ensure(next.value(ZoneSel::Both) == v, || format!("{m:?} changed the value"))?;
                b = next;
            }
        }
        let n = normalize(&b).map_err(|e| e.to_string())?;
        ensure(n.value(ZoneSel::Both) == v && n.is_canonical(Zone::Committed), || "normalization".into())?;
    }

    let fd = c.fraction_digits;
    for _ in 0..1000 {
        let (x, y) = (random_operand(&mut rng, c), random_operand(&mut rng, c));
        let (xv, yv) = (x.value(c.base), y.value(c.base));
        let b = load(&BoardState::working(c.clone()), &x).map_err(|e| e.to_string())?;
        let (s, _) = add(&b, &y).map_err(|e| e.to_string())?;
        ensure(s.value(ZoneSel::Committed) == &xv + &yv, || format!("add {xv} {yv}"))?;
        let (p, _) = multiply(c, &x, &y, &Strategy::DemoteFirst, fd).map_err(|e| e.to_string())?;
        ensure(p.value(c.base) == round_sig(&(&xv * &yv), c.base, fd), || format!("mul {xv} {yv}"))?;
        let d = divide(c, &x, &y, fd).map_err(|e| e.to_string())?;
        ensure(d.quotient.value(c.base) == round_sig(&(&xv / &yv), c.base, fd), || format!("div {xv} {yv}"))?;
    }

    for _ in 0..25_000 {
        let b = load(&BoardState::new(c.clone()), &random_operand(&mut rng, c)).map_err(|e| e.to_string())?;
        for g in [GridId::Lower, GridId::Upper] {
            for at in b.rungs_bottom_up(g) {
                let k = b.counts(at);
                let bound = c.canonical_bound(at.rung) as u64;
                let n = k.get(Zone::Committed, Side::Additive).max(k.get(Zone::Committed, Side::Subtractive));
                ensure(n <= bound && k.ca.min(k.cs) == 0, || format!("{at}: {k:?}"))?;
            }
        }
    }
    Ok(())
}

fn codecs_to_ten_thousand() -> Result<(), String> {
    for n in 1..=10_000u64 {
        for style in [RomanStyle::Classic, RomanStyle::Extended] {
            let s = format_roman(n, style).map_err(|e| e.to_string())?;
            ensure(parse_roman(&s, style) == Ok(n), || s.clone())?;
        }
        for base in [10, 12, 60] {
            let x = q(n as i64, 1);
            for y in [x.clone(), -x.clone(), x / q(base as i64, 1).pow(3)] {
                let p = to_positional(&y, base, 16, Rounding::Truncate);
                for style in [Style::Plain, Style::Exponent] {
                    let text = format_positional(&p, style);
                    let back: Rational = parse_positional(&text, base).map_err(|e| e.to_string())?.number.to_rational().unwrap();
                    ensure(back == y, || text.clone())?;
                }
            }
        }
    }
    Ok(())
}

fn properties() -> Check {
    let configs = configs();
    std::thread::scope(|scope| {
        let workers: Vec<_> = configs
            .iter()
            .enumerate()
            .map(|(i, c)| scope.spawn(move || properties_for(c, 2009 + i as u64)))
            .collect();
        codecs_to_ten_thousand()?;
        for w in workers {
            w.join().map_err(|_| "worker panicked".to_string())??;
        }
        Ok("1e5 move sequences, 1e3 operand pairs x 4 configs, 1e5 layouts, codecs to 1e4".into())
    })
}

fn capacity() -> Check {
    let c = BaseConfig::decimal();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let top = 10i64.pow(10);
    let mut most = 0;
    for _ in 0..100_000 {
        let n = rng.gen_range(-top + 1..top);
        if n == 0 {
            continue;
        }
        let shift = rng.gen_range(-9999..=9999);
        let x = Scaled::new(q(n, top), shift).normalized(10);
        let b = load(&BoardState::new(c.clone()), &x).map_err(|e| format!("{e} for {x:?}"))?;
        most = most.max(b.pebble_count());
    }
    ensure(most < 110, || format!("{most} pebbles"))?;
    Ok(format!("at most {most} pebbles"))
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Check,
    /// Why the criterion cannot pass, when that is known.
    known_red: Option<&'static str>,
}

/// Written to the stdout handle rather than through `println!`, so the report
/// shows up even when the harness captures test output.
fn report(line: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "clues addition", budget: secs(1), run: clues, known_red: Some("run of three I before V") },
        Criterion { name: "multiplication table", budget: secs(1), run: multiplication, known_red: None },
        Criterion { name: "division table", budget: secs(1), run: division, known_red: Some("printed step at 10^-10 is not the nearest multiple") },
        Criterion { name: "square root of 2, base 60", budget: secs(1), run: sqrt_two_base60, known_red: None },
        Criterion { name: "duodecimal ratio", budget: secs(1), run: frontinus, known_red: None },
        Criterion { name: "pebble efficiency table", budget: secs(30), run: efficiency_table_check, known_red: Some("printed signed column is low from k = 8") },
        Criterion { name: "table method cost", budget: secs(1), run: cost_model, known_red: None },
        Criterion { name: "embedded zero probability", budget: secs(5), run: footnote, known_red: None },
        Criterion { name: "property suites", budget: None, run: properties, known_red: None },
        Criterion { name: "operand capacity", budget: None, run: capacity, known_red: None },
    ];
    let mut unexpected = Vec::new();
    for c in &criteria {
        let t = Instant::now();
        let mut result = (c.run)();
        let took = t.elapsed();
        if let (Ok(_), Some(b)) = (&result, c.budget) {
            if took > b {
                result = Err(format!("took {took:.2?}, budget {b:?}"));
            }
        }
        match &result {
            Ok(detail) => report(format!("PASS  {:<28} {detail} [{took:.2?}]", c.name)),
            Err(why) => {
                report(format!("FAIL  {:<28} {why} [{took:.2?}]", c.name));
                match c.known_red {
                    Some(reason) => report(format!("      known: {reason}")),
                    None => unexpected.push(c.name),
                }
            }
        }
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}
