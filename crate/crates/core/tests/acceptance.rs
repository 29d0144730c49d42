//! Acceptance checks, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always shown.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use prmachine::codec::{
    all_codes, all_values, cantor_pair, cantor_unpair, decode_code, decode_value, encode_code,
    encode_value, Basic, Code, XValue,
};
use prmachine::deduction::{freyd_addition, freyd_by_hand, eval_tree, soundness_search, ArgVerdict};
use prmachine::evaluator::{complexity, denote, eval, step, EvalState, Val};
use prmachine::ordinal::OrdPoly;
use prmachine::partial::{mu, while_loop, while_loop_static, PartialResult};
use prmachine::term::{comp, constant, erase, id, induced, proj_l, proj_r, stdlib, succ, TypedTerm};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn lib(name: &str) -> TypedTerm {
    stdlib(name).unwrap().term.clone()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn num(n: u64) -> XValue {
    XValue::Num(n)
}

fn pair(a: XValue, b: XValue) -> XValue {
    XValue::pair(a, b)
}

fn complexity_spot_values() -> Outcome {
    ensure(complexity(&Code::ID).is_zero(), || "c(id) is not 0".into())?;
    for b in &Basic::ALL[1..] {
        ensure(complexity(&Code::Ba(*b)) == OrdPoly::one(), || format!("c({}) is not 1", b.name()))?;
    }
    let two_omega = OrdPoly::from_coeffs([0u32, 2]);
    let plus = erase(&lib("plus")).map_err(|e| e.to_string())?;
    ensure(complexity(&plus) == two_omega, || format!("c(+) = {}", complexity(&plus)))?;
    ensure(complexity(&Code::iter(Code::Ba(Basic::Succ))) == two_omega, || "c(s^$) is not 2w".into())?;
    Ok("c(id)=0, c(basic)=1, c(+)=c(s^$)=2w".into())
}

/// Steps from (u, x) to a zero-complexity state, checking strict descent on
/// the way and stationarity at the end.
fn descends(u: &Code, x: &XValue) -> Result<(), String> {
    let mut state = EvalState::new(u.clone(), x.clone());
    let mut c = complexity(&state.code);
    for k in 1..=1_000_000u64 {
        let next = step(&state);
        if c.is_zero() {
            return ensure(next == state, || format!("zero-complexity state moved at step {k}"));
        }
        let c_next = complexity(&next.code);
        ensure(c_next < c, || format!("step {k}: {c} to {c_next}"))?;
        state = next;
        c = c_next;
    }
    Err("not finished within 10^6 steps".into())
}

fn descent_lemma() -> Outcome {
    let codes = all_codes(6);
    let mut args = all_values(2, 3);
    args.push(XValue::Bottom);
    let violations: Vec<String> = codes
        .par_iter()
        .flat_map_iter(|u| {
            args.iter().filter_map(move |x| descends(u, x).err().map(|e| format!("{u} on {x}: {e}")))
        })
        .collect();
    ensure(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))?;
    Ok(format!("{} codes x {} arguments, 0 violations", codes.len(), args.len()))
}

fn objectivity() -> Outcome {
    let names = ["plus", "times", "monus", "sign", "le", "eq", "max", "min", "div", "rem", "gcd", "isPrime"];
    let mut cases = Vec::new();
    for name in names {
        let e = stdlib(name).unwrap();
        let code = erase(&e.term).map_err(|err| err.to_string())?;
        let grids: Vec<Vec<u64>> = match e.arity {
            1 => (0..=6).map(|a| vec![a]).collect(),
            _ => (0..=6).flat_map(|a| (0..=6).map(move |b| vec![a, b])).collect(),
        };
        for args in grids {
            cases.push((e, code.clone(), args));
        }
    }
    let mismatches: Vec<String> = cases
        .par_iter()
        .filter_map(|(e, code, args)| {
            let v = Val::tuple(args);
            let expected = (e.oracle)(args);
            let denoted = denote(&e.term, &v).ok().and_then(|d| d.as_nat());
            let evaluated = eval(code, &v.to_x(), 100_000_000);
            (denoted != Some(expected) || evaluated != Ok(num(expected)))
                .then(|| format!("{} {args:?}: oracle {expected}, denote {denoted:?}, eval {evaluated:?}", e.name))
        })
        .collect();
    ensure(mismatches.is_empty(), || format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))?;
    let monus = erase(&lib("monus")).unwrap();
    let spot = |a, b| eval(&monus, &pair(num(a), num(b)), 1_000_000).ok();
    ensure(spot(5, 3) == Some(num(2)) && spot(3, 5) == Some(num(0)), || "monus spot values".into())?;
    Ok(format!("{} cases, 0 mismatches; 5-3=2, 3-5=0", cases.len()))
}

fn sample_values(seed: u64, count: usize) -> Vec<XValue> {
    fn value(rng: &mut ChaCha8Rng, depth: usize) -> XValue {
        match rng.gen_range(0..10) {
            0 => XValue::Bottom,
            k if k < 5 || depth == 0 => num(rng.gen_range(0..=5)),
            _ => pair(value(rng, depth - 1), value(rng, depth - 1)),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| value(&mut rng, 2)).collect()
}

fn dominated_characterisation() -> Outcome {
    const M: u64 = 10_000;
    let codes = all_codes(4);
    let samples = sample_values(2024, 50);
    let ev = |u: &Code, x: &XValue| eval(u, x, M).ok();
    let mut checked = 0u64;
    let mut violations = Vec::new();
    let mut check = |family: &str, lhs: &Code, x: &XValue, rhs: Option<XValue>| {
        if let Some(l) = ev(lhs, x) {
            checked += 1;
            if rhs.as_ref() != Some(&l) {
                violations.push(format!("{family}: {lhs} on {x}: {l} vs {rhs:?}"));
            }
        }
    };
    let by_size = |k: usize| codes.iter().filter(move |c| c.size() <= k);
    for u in by_size(2) {
        for v in by_size(3 - u.size()) {
            for x in &samples {
                let seq = ev(u, x).and_then(|y| ev(v, &y));
                check("composition", &Code::comp(v.clone(), u.clone()), x, seq);
                let both = ev(u, x).zip(ev(v, x)).map(|(a, b)| pair(a, b));
                check("induced", &Code::ind(u.clone(), v.clone()), x, both);
                let each = match x {
                    XValue::Pair(y, z) => ev(u, y).zip(ev(v, z)).map(|(a, b)| pair(a, b)),
                    _ => Some(XValue::Bottom),
                };
                check("product", &Code::prod(u.clone(), v.clone()), x, each);
            }
        }
    }
    for u in by_size(3) {
        let it = Code::iter(u.clone());
        for x in &samples {
            check("anchor", &it, &pair(x.clone(), num(0)), Some(x.clone()));
            for n in 0..4 {
                let prev = ev(&it, &pair(x.clone(), num(n))).and_then(|y| ev(u, &y));
                check("step", &it, &pair(x.clone(), num(n + 1)), prev);
            }
        }
    }
    ensure(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))?;
    Ok(format!("{checked} terminating instances, 0 violations"))
}

fn codec_round_trips() -> Outcome {
    let codes = all_codes(4);
    let mut seen = HashSet::new();
    for c in &codes {
        let g = encode_code(c);
        ensure(decode_code(&g).as_ref() == Ok(c), || format!("decode(encode({c})) differs"))?;
        ensure(seen.insert(g), || format!("encoding of {c} collides"))?;
    }
    // numerals are written as codes, so value encodings get their own set
    let mut seen = HashSet::new();
    let mut values = all_values(2, 3);
    values.push(XValue::Bottom);
    for x in &values {
        let g = encode_value(x);
        ensure(decode_value(&g).as_ref() == Ok(x), || format!("decode(encode({x})) differs"))?;
        ensure(seen.insert(g), || format!("encoding of {x} collides"))?;
    }
    let mut decoded = 0;
    for k in 1u32..=200_000 {
        let g = BigUint::from(k);
        if let Ok(c) = decode_code(&g) {
            decoded += 1;
            ensure(encode_code(&c) == g, || format!("encode(decode({k})) differs"))?;
        }
        if let Ok(x) = decode_value(&g) {
            decoded += 1;
            ensure(encode_value(&x) == g, || format!("encode(decode({k})) differs"))?;
        }
    }
    let mut images = HashSet::new();
    for m in 0..=50 {
        for n in 0..=50 {
            let k = cantor_pair(m, n);
            ensure(cantor_unpair(k) == (m, n), || format!("unpair(pair({m},{n}))"))?;
            ensure(images.insert(k), || format!("pair({m},{n}) collides"))?;
        }
    }
    for k in 0..=5_000 {
        let (m, n) = cantor_unpair(k);
        ensure(cantor_pair(m, n) == k, || format!("pair(unpair({k}))"))?;
    }
    Ok(format!(
        "{} codes, {} values, {decoded} decodable integers <= 200000, Cantor on 51x51",
        codes.len(),
        values.len()
    ))
}

fn search_samples() -> Vec<XValue> {
    vec![num(0), num(1), pair(num(1), num(2)), pair(pair(num(3), num(0)), num(2))]
}

fn deduction_soundness() -> Outcome {
    let r = soundness_search(3, 3, &search_samples(), 10_000);
    ensure(r.unsound == 0, || r.to_text())?;
    ensure(r.truth_roots == 0, || r.to_text())?;
    Ok(format!(
        "{} trees, {} evaluations: {} sound, {} exhausted, {} ill-argumented, 0 unsound, 0 true=false roots",
        r.trees, r.evaluations, r.sound, r.exhausted, r.ill_argumented
    ))
}

fn freyd_instance() -> Outcome {
    for t in [freyd_addition(), freyd_by_hand()] {
        for y in 0..=5 {
            for n in 0..=5 {
                let x = pair(num(y), num(n));
                let v = eval_tree(&t, &x, 1_000_000);
                ensure(v == ArgVerdict::Sound(num(y + n), num(y + n)), || format!("{t}\non {x}: {v}"))?;
            }
        }
    }
    Ok("both uniqueness trees sound with value y+n on 36 arguments".into())
}

fn mu_and_while() -> Outcome {
    let nn = comp(lib("times"), induced(proj_r(), proj_r()));
    let square_reaches = comp(lib("le"), induced(proj_l(), nn));
    let twice = comp(lib("plus"), induced(proj_r(), proj_r()));
    let halves = comp(lib("eq"), induced(twice, proj_l()));
    let mut cases = 0;
    for phi in [&square_reaches, &halves] {
        for a in 0..=30 {
            for bound in [0, 5, 40] {
                let brute = (0..=bound).find(|&n| {
                    denote(phi, &Val::tuple(&[a, n])).unwrap() != Val::Nat(0)
                });
                let expected = brute.map_or(PartialResult::Undefined(bound + 1), PartialResult::Defined);
                let got = mu(phi, &Val::Nat(a), bound).map_err(|e| e.to_string())?;
                ensure(got == expected, || format!("mu at a={a}, bound {bound}: {got} vs {expected}"))?;
                cases += 1;
            }
        }
    }
    let loops = [
        (lib("sign"), lib("pred")),
        (comp(lib("lt"), induced(id(), constant(7))), succ()),
        (comp(lib("lt"), induced(id(), constant(50))), comp(lib("times"), induced(id(), constant(2)))),
        (comp(lib("true"), prmachine::term::pi()), id()),
    ];
    for (chi, f) in &loops {
        for a in 0..=12 {
            for bound in [0, 3, 10] {
                let x = Val::Nat(a);
                let direct = while_loop(chi, f, &x, bound).map_err(|e| e.to_string())?;
                let fixed = while_loop_static(chi, f, &x, bound).map_err(|e| e.to_string())?;
                ensure(direct == fixed, || format!("while {chi} do {f} at {a}: {direct} vs {fixed}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn ordinal_order() -> Outcome {
    let mut polys = Vec::new();
    for k in 0..4u32.pow(4) {
        let coeffs: Vec<u32> = (0..4).map(|j| (k / 4u32.pow(j)) % 4).collect();
        polys.push((coeffs.clone(), OrdPoly::from_coeffs(coeffs)));
    }
    // independent reference: compare coefficient vectors from ω^3 down
    let reference = |a: &[u32], b: &[u32]| a.iter().rev().cmp(b.iter().rev());
    for (ca, a) in &polys {
        for (cb, b) in &polys {
            ensure(a.cmp(b) == reference(ca, cb), || format!("{a} vs {b}"))?;
            ensure(a.cmp(b) == b.cmp(a).reverse(), || format!("antisymmetry at {a}, {b}"))?;
            ensure((a == b) == (ca == cb), || format!("equality at {a}, {b}"))?;
        }
    }
    for (_, a) in &polys {
        for (_, b) in polys.iter().filter(|(_, b)| a <= b) {
            for (_, c) in &polys {
                ensure(!(b <= c) || a <= c, || format!("transitivity at {a}, {b}, {c}"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut samples: Vec<OrdPoly> = all_codes(4).iter().map(complexity).collect();
    samples.extend((0..200).map(|_| OrdPoly::from_coeffs((0..4).map(|_| rng.gen_range(0u32..20)))));
    for c in &samples {
        let bound = c.succ().mul_omega();
        for n in 0..=64u32 {
            let lhs = c.nat_mul(&BigUint::from(n)).add(&OrdPoly::from_nat(n.saturating_sub(1)));
            ensure(lhs < bound, || format!("{n}*({c}) + {} is not below w*({c}+1)", n.saturating_sub(1)))?;
        }
    }
    Ok(format!("{} polynomials exhaustively; descent bound on {} samples x n<=64", polys.len(), samples.len()))
}

fn determinism() -> Outcome {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let r = soundness_search(3, 3, &search_samples(), 10_000);
            (r.to_text(), r.to_sexp())
        })
    };
    let reference = run(1);
    for threads in [1, 2, 4, 8] {
        ensure(run(threads) == reference, || format!("report differs with {threads} threads"))?;
    }
    Ok("identical reports with 1, 2, 4 and 8 worker threads".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("complexity spot values", complexity_spot_values, Duration::from_secs(1)),
        ("descent lemma", descent_lemma, Duration::from_secs(60)),
        ("objectivity", objectivity, Duration::from_secs(120)),
        ("dominated characterisation", dominated_characterisation, Duration::from_secs(60)),
        ("codec round trips", codec_round_trips, Duration::from_secs(30)),
        ("deduction soundness", deduction_soundness, Duration::from_secs(300)),
        ("uniqueness instance", freyd_instance, Duration::from_secs(10)),
        ("mu and while", mu_and_while, Duration::from_secs(10)),
        ("ordinal order", ordinal_order, Duration::from_secs(5)),
        ("determinism", determinism, Duration::from_secs(300)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f, target)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str()) || *p == n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let timing = format!("{:.2}s, target {}s", took.as_secs_f64(), target.as_secs());
        match outcome {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} ({timing})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {detail} ({timing})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
