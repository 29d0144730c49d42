//! Derived schemes (full primitive recursion, case distinction) and a small
//! library of arithmetic terms, each paired with a native oracle.

use std::sync::OnceLock;

use thiserror::Error;

use super::{
    chain, comp, constant, id, induced, iter, pi, prod, proj_l, proj_r, succ, typecheck, zero,
    ObjType, TypeError, TypedTerm,
};

/// Full primitive recursion without type checking.
///
/// For g : A → B and h : (A×ℕ)×B → B this is f : A×ℕ → B with f(a,0) = g(a)
/// and f(a, n+1) = h((a,n), f(a,n)), realized as an iteration over the state
/// object (A×ℕ)×B started at ((a,0), g(a)).
pub(crate) fn pr_scheme(g: TypedTerm, h: TypedTerm) -> TypedTerm {
    let init = induced(induced(id(), comp(zero(), pi())), g);
    let step = induced(comp(prod(id(), succ()), proj_l()), h);
    chain([proj_r(), iter(step), prod(init, id())])
}

/// Case distinction for ℕ-valued branches: a ↦ g(a) if χ(a) ≠ 0, else h(a),
/// computed as g·sign(χ) + h·(1 ∸ χ).
pub(crate) fn if_scheme(chi: TypedTerm, g: TypedTerm, h: TypedTerm) -> TypedTerm {
    let then_part = comp(times(), induced(g, comp(sign(), chi.clone())));
    let else_part = comp(times(), induced(h, comp(neg(), chi)));
    comp(plus(), induced(then_part, else_part))
}

/// Full primitive recursion, checked: g : A → B, h : (A×ℕ)×B → B.
pub fn desugar_pr(g: TypedTerm, h: TypedTerm) -> Result<TypedTerm, TypeError> {
    typecheck(&g)?;
    typecheck(&h)?;
    let f = pr_scheme(g, h);
    typecheck(&f)?;
    Ok(f)
}

/// Case distinction, checked: χ, g, h : A → ℕ.
pub fn desugar_if(chi: TypedTerm, g: TypedTerm, h: TypedTerm) -> Result<TypedTerm, TypeError> {
    let t = if_scheme(chi, g, h);
    typecheck(&t)?;
    Ok(t)
}

/// Σ_{k<n} φ(a,k) as a map A×ℕ → ℕ, for φ : A×ℕ → ℕ.
fn sum_below(phi: TypedTerm) -> TypedTerm {
    pr_scheme(comp(zero(), pi()), comp(plus(), induced(proj_r(), comp(phi, proj_l()))))
}

fn swap() -> TypedTerm {
    induced(proj_r(), proj_l())
}

fn plus() -> TypedTerm {
    iter(succ())
}

fn pred() -> TypedTerm {
    comp(pr_scheme(zero(), comp(proj_r(), proj_l())), induced(pi(), id()))
}

fn monus() -> TypedTerm {
    iter(pred())
}

fn times() -> TypedTerm {
    // h((a,k),b) = b + a
    pr_scheme(comp(zero(), pi()), comp(plus(), induced(proj_r(), comp(proj_l(), proj_l()))))
}

fn sign() -> TypedTerm {
    comp(pr_scheme(zero(), constant(1)), induced(pi(), id()))
}

fn neg() -> TypedTerm {
    comp(monus(), induced(constant(1), id()))
}

fn le() -> TypedTerm {
    comp(neg(), monus())
}

fn lt() -> TypedTerm {
    chain([sign(), monus(), swap()])
}

fn eq() -> TypedTerm {
    chain([neg(), plus(), induced(monus(), comp(monus(), swap()))])
}

fn and() -> TypedTerm {
    comp(sign(), times())
}

fn or() -> TypedTerm {
    comp(sign(), plus())
}

fn max() -> TypedTerm {
    // a + (b ∸ a)
    comp(plus(), induced(proj_l(), comp(monus(), swap())))
}

fn min() -> TypedTerm {
    // a ∸ (a ∸ b)
    comp(monus(), induced(proj_l(), monus()))
}

fn div() -> TypedTerm {
    // a ÷ b = #{c ∈ 1..a : b·c ≤ a}, the largest c ≤ a with b·c ≤ a
    let bc = comp(times(), induced(comp(proj_r(), proj_l()), comp(succ(), proj_r())));
    let phi = comp(le(), induced(bc, comp(proj_l(), proj_l())));
    comp(sum_below(phi), induced(id(), proj_l()))
}

fn rem() -> TypedTerm {
    comp(monus(), induced(proj_l(), comp(times(), induced(proj_r(), div()))))
}

fn divides() -> TypedTerm {
    // [d | a] on (d, a)
    chain([neg(), rem(), swap()])
}

fn gcd() -> TypedTerm {
    // (x, y) ↦ (y + x·¬y, rem(x,y)·sign(y)), stationary once y = 0; b rounds suffice
    let first = comp(plus(), induced(proj_r(), comp(times(), induced(proj_l(), comp(neg(), proj_r())))));
    let second = comp(times(), induced(rem(), comp(sign(), proj_r())));
    chain([proj_l(), iter(induced(first, second)), induced(id(), proj_r())])
}

fn is_prime() -> TypedTerm {
    // exactly two divisors in 1..p
    let phi = comp(divides(), induced(comp(succ(), proj_r()), proj_l()));
    let count = comp(sum_below(phi), induced(id(), id()));
    comp(eq(), induced(count, constant(2)))
}

fn next_prime() -> TypedTerm {
    // q ↦ q + ¬isPrime(q), run p+1 times from p+1; Bertrand keeps the search inside the bound
    let step = comp(plus(), induced(id(), comp(neg(), is_prime())));
    comp(iter(step), induced(succ(), succ()))
}

fn nth_prime() -> TypedTerm {
    comp(iter(next_prime()), induced(constant(2), id()))
}

fn is_prime_native(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn gcd_native(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn next_prime_native(p: u64) -> u64 {
    (p + 1..).find(|&q| is_prime_native(q)).unwrap()
}

fn nth_prime_native(n: u64) -> u64 {
    (0..n).fold(2, |p, _| next_prime_native(p))
}

/// A closed library term with its signature ℕ^arity → ℕ and a native oracle.
#[derive(Clone, Debug)]
pub struct StdlibEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub term: TypedTerm,
    pub dom: ObjType,
    pub cod: ObjType,
    pub arity: usize,
    pub oracle: fn(&[u64]) -> u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown stdlib name: {0}")]
pub struct UnknownName(pub String);

fn entry(
    name: &'static str,
    aliases: &'static [&'static str],
    arity: usize,
    term: TypedTerm,
    oracle: fn(&[u64]) -> u64,
) -> StdlibEntry {
    StdlibEntry { name, aliases, term, dom: ObjType::nat_power(arity), cod: ObjType::Nat, arity, oracle }
}

fn build() -> Vec<StdlibEntry> {
    vec![
        entry("true", &[], 0, comp(succ(), zero()), |_| 1),
        entry("false", &[], 0, zero(), |_| 0),
        entry("plus", &["+"], 2, plus(), |a| a[0] + a[1]),
        entry("times", &["*", "·"], 2, times(), |a| a[0] * a[1]),
        entry("pred", &[], 1, pred(), |a| a[0].saturating_sub(1)),
        entry("monus", &["∸", "-"], 2, monus(), |a| a[0].saturating_sub(a[1])),
        entry("sign", &[], 1, sign(), |a| a[0].min(1)),
        entry("neg", &["not", "¬"], 1, neg(), |a| (a[0] == 0) as u64),
        entry("and", &["∧"], 2, and(), |a| (a[0] != 0 && a[1] != 0) as u64),
        entry("or", &["∨"], 2, or(), |a| (a[0] != 0 || a[1] != 0) as u64),
        entry("le", &["≤", "<="], 2, le(), |a| (a[0] <= a[1]) as u64),
        entry("lt", &["<"], 2, lt(), |a| (a[0] < a[1]) as u64),
        entry("eq", &["≐", "=="], 2, eq(), |a| (a[0] == a[1]) as u64),
        entry("max", &[], 2, max(), |a| a[0].max(a[1])),
        entry("min", &[], 2, min(), |a| a[0].min(a[1])),
        entry("div", &["÷"], 2, div(), |a| a[0].checked_div(a[1]).unwrap_or(a[0])),
        entry("rem", &["mod"], 2, rem(), |a| if a[1] == 0 { a[0] } else { a[0] % a[1] }),
        entry("divides", &["|"], 2, divides(), |a| if a[0] == 0 { (a[1] == 0) as u64 } else { (a[1] % a[0] == 0) as u64 }),
        entry("gcd", &[], 2, gcd(), |a| gcd_native(a[0], a[1])),
        entry("isPrime", &["prime"], 1, is_prime(), |a| is_prime_native(a[0]) as u64),
        entry("nextPrime", &[], 1, next_prime(), |a| next_prime_native(a[0])),
        entry("nthPrime", &["primeCount"], 1, nth_prime(), |a| nth_prime_native(a[0])),
    ]
}

/// All library entries in a fixed order.
pub fn stdlib_entries() -> &'static [StdlibEntry] {
    static ENTRIES: OnceLock<Vec<StdlibEntry>> = OnceLock::new();
    ENTRIES.get_or_init(build)
}

/// Looks an entry up by name or alias.
pub fn stdlib(name: &str) -> Result<&'static StdlibEntry, UnknownName> {
    stdlib_entries()
        .iter()
        .find(|e| e.name == name || e.aliases.contains(&name))
        .ok_or_else(|| UnknownName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_has_its_declared_signature() {
        for e in stdlib_entries() {
            assert_eq!(typecheck(&e.term).unwrap(), (e.dom.clone(), e.cod.clone()), "{}", e.name);
        }
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(stdlib("+").unwrap().name, "plus");
        assert_eq!(stdlib("primeCount").unwrap().name, "nthPrime");
        assert_eq!(stdlib("nope").unwrap_err(), UnknownName("nope".into()));
    }

    #[test]
    fn checked_pr_rejects_bad_signatures() {
        // h must land in B = ℕ but l ∘ l lands in A = 1 here
        assert!(desugar_pr(zero(), comp(proj_l(), proj_l())).is_err());
        assert!(desugar_pr(id(), proj_r()).is_ok());
    }

    #[test]
    fn native_prime_helpers() {
        let primes: Vec<u64> = (0..6).map(nth_prime_native).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13]);
        assert_eq!(next_prime_native(0), 2);
        assert_eq!(gcd_native(0, 0), 0);
    }
}
