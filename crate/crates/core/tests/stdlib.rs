use prmachine::evaluator::{denote, eval, Val};
use prmachine::term::{
    comp, constant, desugar_if, desugar_pr, erase, id, induced, parse_term, pi, proj_l, proj_r,
    stdlib, stdlib_entries, succ, typecheck, zero, ObjType, TypedTerm,
};

fn apply(name: &str, args: &[u64]) -> u64 {
    let e = stdlib(name).unwrap();
    denote(&e.term, &Val::tuple(args)).unwrap().as_nat().unwrap()
}

fn apply_term(t: &TypedTerm, args: &[u64]) -> u64 {
    denote(t, &Val::tuple(args)).unwrap().as_nat().unwrap()
}

#[test]
fn monus_spot_values() {
    assert_eq!(apply("monus", &[5, 3]), 2);
    assert_eq!(apply("monus", &[3, 5]), 0);
}

#[test]
fn gcd_spot_value() {
    assert_eq!(apply("gcd", &[12, 18]), 6);
}

#[test]
fn primality_pattern() {
    let got: Vec<u64> = (0..=20).map(|p| apply("isPrime", &[p])).collect();
    let want = [0, 0, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0];
    assert_eq!(got, want);
}

#[test]
fn prime_enumeration() {
    let got: Vec<u64> = (0..=5).map(|n| apply("primeCount", &[n])).collect();
    assert_eq!(got, [2, 3, 5, 7, 11, 13]);
}

#[test]
fn division_spot_value() {
    assert_eq!(apply("div", &[7, 2]), 3);
    assert_eq!(apply("rem", &[7, 2]), 1);
}

#[test]
fn truth_constants() {
    assert_eq!(apply("true", &[]), 1);
    assert_eq!(apply("false", &[]), 0);
}

#[test]
fn denotation_matches_oracles_on_a_grid() {
    for e in stdlib_entries() {
        let bound = match e.name {
            "nthPrime" => 5,
            "gcd" | "nextPrime" | "isPrime" | "div" | "rem" | "divides" => 8,
            _ => 12,
        };
        let grid: Vec<Vec<u64>> = match e.arity {
            0 => vec![vec![]],
            1 => (0..=bound).map(|a| vec![a]).collect(),
            _ => (0..=bound).flat_map(|a| (0..=bound).map(move |b| vec![a, b])).collect(),
        };
        for args in grid {
            let v = denote(&e.term, &Val::tuple(&args)).unwrap();
            assert!(v.has_type(&e.cod));
            assert_eq!(v.as_nat().unwrap(), (e.oracle)(&args), "{} at {args:?}", e.name);
        }
    }
}

#[test]
fn erased_terms_evaluate_like_their_denotation() {
    for name in ["plus", "times", "monus", "sign", "le", "lt", "eq", "max", "min", "div", "rem"] {
        let e = stdlib(name).unwrap();
        let code = erase(&e.term).unwrap();
        for a in 0..=4 {
            for b in 0..=4 {
                let args = [a, b];
                let x = Val::tuple(&args[..e.arity]);
                let want = denote(&e.term, &x).unwrap().to_x();
                assert_eq!(eval(&code, &x.to_x(), 1_000_000).unwrap(), want, "{name} at ({a},{b})");
            }
        }
    }
}

#[test]
fn plus_evaluates_within_a_small_budget() {
    let code = erase(&stdlib("+").unwrap().term).unwrap();
    assert_eq!(eval(&code, &Val::tuple(&[2, 3]).to_x(), 64).unwrap(), Val::Nat(5).to_x());
}

#[test]
fn primitive_recursion_anchor_and_addition() {
    let f = desugar_pr(id(), proj_r()).unwrap();
    assert_eq!(typecheck(&f).unwrap(), (ObjType::nat_power(2), ObjType::Nat));
    for a in 0..=16 {
        assert_eq!(apply_term(&f, &[a, 0]), a);
    }
    let add = desugar_pr(id(), comp(succ(), proj_r())).unwrap();
    for a in 0..=8 {
        for n in 0..=8 {
            assert_eq!(apply_term(&add, &[a, n]), a + n);
        }
    }
}

#[test]
fn primitive_recursion_multiplication() {
    let plus_step = comp(stdlib("plus").unwrap().term.clone(), induced(proj_r(), comp(proj_l(), proj_l())));
    let mul = desugar_pr(comp(zero(), pi()), plus_step).unwrap();
    for a in 0..=8 {
        for n in 0..=8 {
            assert_eq!(apply_term(&mul, &[a, n]), a * n);
        }
    }
}

#[test]
fn primitive_recursion_step_equation() {
    // f(a, n+1) = h((a, n), f(a, n)) for h((a,k),b) = b + k
    let h = comp(stdlib("plus").unwrap().term.clone(), induced(proj_r(), comp(proj_r(), proj_l())));
    let f = desugar_pr(succ(), h).unwrap();
    for a in 0..=6 {
        for n in 0..=6 {
            let prev = apply_term(&f, &[a, n]);
            assert_eq!(apply_term(&f, &[a, n + 1]), prev + n);
        }
    }
}

#[test]
fn case_distinction() {
    let lt3 = comp(stdlib("lt").unwrap().term.clone(), induced(id(), constant(3)));
    let t = desugar_if(lt3, succ(), comp(zero(), pi())).unwrap();
    let got: Vec<u64> = (0..=5).map(|a| apply_term(&t, &[a])).collect();
    assert_eq!(got, [1, 2, 3, 0, 0, 0]);

    let always = comp(stdlib("true").unwrap().term.clone(), pi());
    let never = comp(stdlib("false").unwrap().term.clone(), pi());
    let g = comp(succ(), succ());
    let h = id();
    let t_true = desugar_if(always, g.clone(), h.clone()).unwrap();
    let t_false = desugar_if(never, g, h).unwrap();
    for a in 0..=10 {
        assert_eq!(apply_term(&t_true, &[a]), a + 2);
        assert_eq!(apply_term(&t_false, &[a]), a);
    }
    assert!(desugar_if(id(), succ(), pi()).is_err());
}

#[test]
fn goodstein_laws() {
    let plus = |a, b| apply("plus", &[a, b]);
    let times = |a, b| apply("times", &[a, b]);
    let monus = |a, b| apply("monus", &[a, b]);
    for a in 0..=12 {
        assert_eq!(monus(a, a), 0);
        for b in 0..=12 {
            assert_eq!(plus(a, b), plus(b, a));
            assert_eq!(times(a, b), times(b, a));
            assert_eq!(monus(plus(a, b), b), a);
            assert_eq!(apply("max", &[a, b]), apply("max", &[b, a]));
        }
    }
    for a in 0..=6 {
        for b in 0..=6 {
            for c in 0..=6 {
                assert_eq!(plus(plus(a, b), c), plus(a, plus(b, c)));
                assert_eq!(times(times(a, b), c), times(a, times(b, c)));
                assert_eq!(times(a, plus(b, c)), plus(times(a, b), times(a, c)));
            }
        }
    }
}

#[test]
fn trichotomy() {
    for a in 0..=20 {
        for b in 0..=20 {
            let holds = apply("lt", &[a, b]) + apply("eq", &[a, b]) + apply("lt", &[b, a]);
            assert_eq!(holds, 1, "({a},{b})");
        }
    }
}

#[test]
fn leibniz_substitutivity() {
    for e in stdlib_entries().iter().filter(|e| e.arity == 1 && e.name != "nthPrime") {
        for a in 0..=12 {
            for a2 in 0..=12 {
                if apply("eq", &[a, a2]) == 1 {
                    let (fa, fa2) = (apply(e.name, &[a]), apply(e.name, &[a2]));
                    assert_eq!(apply("eq", &[fa, fa2]), 1);
                }
            }
        }
    }
}

#[test]
fn parsed_library_references() {
    let t = parse_term("(@plus o <id ; (s o (zero o pi))>)").unwrap();
    assert_eq!(apply_term(&t, &[4]), 5);
    assert_eq!(typecheck(&t).unwrap(), (ObjType::Nat, ObjType::Nat));
}
