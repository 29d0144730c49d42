//! The universal value set X⊥ (numerals, nested pairs of numerals, trash),
//! untyped map codes, prime-power Gödel integers for both, and Cantor pairing.
//!
//! Numerals are stored as a count (`Num(n)`); the nested-successor string
//! `(s ⊙ (s ⊙ … 0))` is only materialized when a value is Gödel-encoded.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// An element of X⊥.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XValue {
    /// Trash. Never nested inside a pair.
    Bottom,
    Num(u64),
    Pair(Arc<XValue>, Arc<XValue>),
}

impl XValue {
    /// Pairs two values; trash in either slot makes the whole pair trash.
    pub fn pair(left: XValue, right: XValue) -> XValue {
        if left.is_bottom() || right.is_bottom() {
            XValue::Bottom
        } else {
            XValue::Pair(Arc::new(left), Arc::new(right))
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, XValue::Bottom)
    }

    /// Nesting depth of pairs; numerals and trash have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            XValue::Pair(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }
}

impl fmt::Display for XValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XValue::Bottom => f.write_str("bot"),
            XValue::Num(n) => write!(f, "{n}"),
            XValue::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Numeralisation ν.
pub fn nu(n: u64) -> XValue {
    XValue::Num(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("not a numeral: {0}")]
    NotANumeral(XValue),
    #[error("integer does not encode an element of X⊥")]
    NotInX,
    #[error("integer does not encode a map code")]
    NotACode,
    #[error("value literal syntax error at column {column}: expected {expected}")]
    ValueSyntax { column: usize, expected: String },
}

/// Inverse of [`nu`] on numerals.
pub fn nu_inverse(x: &XValue) -> Result<u64, CodecError> {
    match x {
        XValue::Num(n) => Ok(*n),
        other => Err(CodecError::NotANumeral(other.clone())),
    }
}

/// The basic map constants of the universe monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basic {
    Id,
    Zero,
    Succ,
    Pi,
    Delta,
    L,
    R,
}

impl Basic {
    pub const ALL: [Basic; 7] =
        [Basic::Id, Basic::Zero, Basic::Succ, Basic::Pi, Basic::Delta, Basic::L, Basic::R];

    pub fn name(self) -> &'static str {
        match self {
            Basic::Id => "id",
            Basic::Zero => "zero",
            Basic::Succ => "s",
            Basic::Pi => "pi",
            Basic::Delta => "delta",
            Basic::L => "l",
            Basic::R => "r",
        }
    }

    pub fn from_name(name: &str) -> Option<Basic> {
        Basic::ALL.into_iter().find(|b| b.name() == name)
    }
}

/// An untyped map code. `Comp(v, u)` is ⟨v ⊙ u⟩: run `u` first, then `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Code {
    Ba(Basic),
    Comp(Arc<Code>, Arc<Code>),
    Ind(Arc<Code>, Arc<Code>),
    Prod(Arc<Code>, Arc<Code>),
    Iter(Arc<Code>),
}

impl Code {
    pub const ID: Code = Code::Ba(Basic::Id);

    pub fn comp(v: Code, u: Code) -> Code {
        Code::Comp(Arc::new(v), Arc::new(u))
    }

    pub fn ind(u: Code, v: Code) -> Code {
        Code::Ind(Arc::new(u), Arc::new(v))
    }

    pub fn prod(u: Code, v: Code) -> Code {
        Code::Prod(Arc::new(u), Arc::new(v))
    }

    pub fn iter(u: Code) -> Code {
        Code::Iter(Arc::new(u))
    }

    pub fn is_id(&self) -> bool {
        matches!(self, Code::Ba(Basic::Id))
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Code::Ba(_) => 1,
            Code::Comp(a, b) | Code::Ind(a, b) | Code::Prod(a, b) => 1 + a.size() + b.size(),
            Code::Iter(a) => 1 + a.size(),
        }
    }
}

impl From<Basic> for Code {
    fn from(b: Basic) -> Self {
        Code::Ba(b)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Code::Ba(b) => f.write_str(b.name()),
            Code::Comp(v, u) => write!(f, "({v} o {u})"),
            Code::Ind(u, v) => write!(f, "<{u} ; {v}>"),
            Code::Prod(u, v) => write!(f, "<{u} # {v}>"),
            Code::Iter(u) => write!(f, "iter({u})"),
        }
    }
}

/// All codes of size exactly `1..=max_size`, indexed by size, each bucket in
/// a fixed deterministic order.
pub fn codes_by_size(max_size: usize) -> Vec<Vec<Code>> {
    let mut by_size: Vec<Vec<Code>> = vec![Vec::new(); max_size + 1];
    for n in 1..=max_size {
        let mut bucket = Vec::new();
        if n == 1 {
            bucket.extend(Basic::ALL.into_iter().map(Code::Ba));
        } else {
            bucket.extend(by_size[n - 1].iter().map(|u| Code::iter(u.clone())));
            for k in 1..n - 1 {
                for a in &by_size[k] {
                    for b in &by_size[n - 1 - k] {
                        bucket.push(Code::comp(a.clone(), b.clone()));
                        bucket.push(Code::ind(a.clone(), b.clone()));
                        bucket.push(Code::prod(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size[n] = bucket;
    }
    by_size
}

/// Every code of size at most `max_size`, smallest first.
pub fn all_codes(max_size: usize) -> Vec<Code> {
    codes_by_size(max_size).into_iter().flatten().collect()
}

/// Every non-trash value of pair depth at most `depth` with numerals at most `max_num`.
pub fn all_values(depth: usize, max_num: u64) -> Vec<XValue> {
    let mut vals: Vec<XValue> = (0..=max_num).map(XValue::Num).collect();
    for _ in 0..depth {
        let prev = vals.clone();
        let mut next: Vec<XValue> = (0..=max_num).map(XValue::Num).collect();
        for a in &prev {
            for b in &prev {
                next.push(XValue::pair(a.clone(), b.clone()));
            }
        }
        vals = next;
    }
    vals
}

/// Symbols of the Gödel alphabet together with their exponent codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Open,
    Close,
    Comma,
    Circ,
    Hash,
    Semi,
    Dollar,
    Basic(Basic),
    Bot,
}

impl Symbol {
    pub fn code(self) -> u32 {
        match self {
            Symbol::Open => 1,
            Symbol::Close => 2,
            Symbol::Comma => 3,
            Symbol::Circ => 4,
            Symbol::Hash => 5,
            Symbol::Semi => 6,
            Symbol::Dollar => 7,
            Symbol::Basic(b) => 8 + b as u32,
            Symbol::Bot => 15,
        }
    }

    pub fn from_code(c: u32) -> Option<Symbol> {
        Some(match c {
            1 => Symbol::Open,
            2 => Symbol::Close,
            3 => Symbol::Comma,
            4 => Symbol::Circ,
            5 => Symbol::Hash,
            6 => Symbol::Semi,
            7 => Symbol::Dollar,
            8..=14 => Symbol::Basic(Basic::ALL[(c - 8) as usize]),
            15 => Symbol::Bot,
            _ => return None,
        })
    }
}

/// Symbol string of a value; numerals expand to nested successor strings.
pub fn value_symbols(x: &XValue) -> Vec<Symbol> {
    fn go(x: &XValue, out: &mut Vec<Symbol>) {
        match x {
            XValue::Bottom => out.push(Symbol::Bot),
            XValue::Num(n) => {
                for _ in 0..*n {
                    out.extend([Symbol::Open, Symbol::Basic(Basic::Succ), Symbol::Circ]);
                }
                out.push(Symbol::Basic(Basic::Zero));
                out.extend(std::iter::repeat_n(Symbol::Close, *n as usize));
            }
            XValue::Pair(a, b) => {
                out.push(Symbol::Open);
                go(a, out);
                out.push(Symbol::Comma);
                go(b, out);
                out.push(Symbol::Close);
            }
        }
    }
    let mut out = Vec::new();
    go(x, &mut out);
    out
}

/// Symbol string of a code: ⟨v⊙u⟩ ↦ `( v ⊙ u )`, ⟨u;v⟩ ↦ `( u ; v )`,
/// ⟨u#v⟩ ↦ `( u # v )`, u^$ ↦ `u $`.
pub fn code_symbols(c: &Code) -> Vec<Symbol> {
    fn go(c: &Code, out: &mut Vec<Symbol>) {
        let binary = |a: &Code, op: Symbol, b: &Code, out: &mut Vec<Symbol>| {
            out.push(Symbol::Open);
            go(a, out);
            out.push(op);
            go(b, out);
            out.push(Symbol::Close);
        };
        match c {
            Code::Ba(b) => out.push(Symbol::Basic(*b)),
            Code::Comp(v, u) => binary(v, Symbol::Circ, u, out),
            Code::Ind(u, v) => binary(u, Symbol::Semi, v, out),
            Code::Prod(u, v) => binary(u, Symbol::Hash, v, out),
            Code::Iter(u) => {
                go(u, out);
                out.push(Symbol::Dollar);
            }
        }
    }
    let mut out = Vec::new();
    go(c, &mut out);
    out
}

/// Incrementally extended table of primes by trial division.
struct Primes(Vec<u64>);

impl Primes {
    fn new() -> Self {
        Primes(vec![2, 3])
    }

    fn get(&mut self, i: usize) -> u64 {
        while self.0.len() <= i {
            let mut cand = self.0.last().unwrap() + 2;
            while self.0.iter().take_while(|&&p| p * p <= cand).any(|&p| cand.is_multiple_of(p)) {
                cand += 2;
            }
            self.0.push(cand);
        }
        self.0[i]
    }
}

/// Gödel integer of a symbol string: Π p_i^code_i.
pub fn godel_of_symbols(symbols: &[Symbol]) -> BigUint {
    let mut primes = Primes::new();
    let mut g = BigUint::one();
    for (i, s) in symbols.iter().enumerate() {
        g *= BigUint::from(primes.get(i)).pow(s.code());
    }
    g
}

/// Factors `g` over consecutive primes. Fails unless every prime up to the
/// last used one occurs with a valid symbol exponent and nothing is left over.
pub fn symbols_of_godel(g: &BigUint) -> Option<Vec<Symbol>> {
    if g.is_zero() {
        return None;
    }
    let mut rest = g.clone();
    let mut primes = Primes::new();
    let mut out = Vec::new();
    let mut i = 0;
    while !rest.is_one() {
        let p = BigUint::from(primes.get(i));
        let mut e = 0u32;
        loop {
            let (q, r) = (&rest / &p, &rest % &p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
            if e > 15 {
                return None;
            }
        }
        out.push(Symbol::from_code(e)?);
        i += 1;
    }
    Some(out)
}

struct SymbolParser<'a> {
    syms: &'a [Symbol],
    pos: usize,
}

impl SymbolParser<'_> {
    fn peek(&self) -> Option<Symbol> {
        self.syms.get(self.pos).copied()
    }

    fn eat(&mut self, s: Symbol) -> Option<()> {
        (self.peek()? == s).then(|| self.pos += 1)
    }

    fn code(&mut self) -> Option<Code> {
        let mut c = match self.peek()? {
            Symbol::Basic(b) => {
                self.pos += 1;
                Code::Ba(b)
            }
            Symbol::Open => {
                self.pos += 1;
                let a = self.code()?;
                let op = self.peek()?;
                self.pos += 1;
                let b = self.code()?;
                self.eat(Symbol::Close)?;
                match op {
                    Symbol::Circ => Code::comp(a, b),
                    Symbol::Semi => Code::ind(a, b),
                    Symbol::Hash => Code::prod(a, b),
                    _ => return None,
                }
            }
            _ => return None,
        };
        while self.eat(Symbol::Dollar).is_some() {
            c = Code::iter(c);
        }
        Some(c)
    }

    fn numeral_tail(&mut self) -> Option<u64> {
        // after "( s ⊙": a numeral then ")"
        let n = self.numeral()?;
        self.eat(Symbol::Close)?;
        Some(n + 1)
    }

    fn numeral(&mut self) -> Option<u64> {
        match self.peek()? {
            Symbol::Basic(Basic::Zero) => {
                self.pos += 1;
                Some(0)
            }
            Symbol::Open => {
                self.pos += 1;
                self.eat(Symbol::Basic(Basic::Succ))?;
                self.eat(Symbol::Circ)?;
                self.numeral_tail()
            }
            _ => None,
        }
    }

    fn value(&mut self) -> Option<XValue> {
        match self.peek()? {
            Symbol::Basic(Basic::Zero) => {
                self.pos += 1;
                Some(XValue::Num(0))
            }
            Symbol::Open => {
                self.pos += 1;
                if self.eat(Symbol::Basic(Basic::Succ)).is_some() {
                    self.eat(Symbol::Circ)?;
                    return self.numeral_tail().map(XValue::Num);
                }
                let a = self.value()?;
                self.eat(Symbol::Comma)?;
                let b = self.value()?;
                self.eat(Symbol::Close)?;
                Some(XValue::pair(a, b))
            }
            _ => None,
        }
    }

    fn finished(&self) -> bool {
        self.pos == self.syms.len()
    }
}

pub fn encode_value(x: &XValue) -> BigUint {
    godel_of_symbols(&value_symbols(x))
}

pub fn decode_value(g: &BigUint) -> Result<XValue, CodecError> {
    let syms = symbols_of_godel(g).ok_or(CodecError::NotInX)?;
    if syms == [Symbol::Bot] {
        return Ok(XValue::Bottom);
    }
    let mut p = SymbolParser { syms: &syms, pos: 0 };
    match p.value() {
        Some(v) if p.finished() => Ok(v),
        _ => Err(CodecError::NotInX),
    }
}

pub fn encode_code(c: &Code) -> BigUint {
    godel_of_symbols(&code_symbols(c))
}

pub fn decode_code(g: &BigUint) -> Result<Code, CodecError> {
    let syms = symbols_of_godel(g).ok_or(CodecError::NotACode)?;
    let mut p = SymbolParser { syms: &syms, pos: 0 };
    match p.code() {
        Some(c) if p.finished() => Ok(c),
        _ => Err(CodecError::NotACode),
    }
}

/// Membership predicate for (Gödel integers of) X⊥.
pub fn is_x(g: &BigUint) -> bool {
    decode_value(g).is_ok()
}

/// Cantor's diagonal pairing ℕ×ℕ → ℕ. Panics if the result exceeds `u64`.
pub fn cantor_pair(m: u64, n: u64) -> u64 {
    let s = m as u128 + n as u128;
    let k = s * (s + 1) / 2 + n as u128;
    u64::try_from(k).expect("cantor pair exceeds u64")
}

pub fn cantor_unpair(k: u64) -> (u64, u64) {
    let k = k as u128;
    let mut w = ((8 * k + 1).isqrt() - 1) / 2;
    // guard against rounding at the diagonal boundaries
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    let n = k - w * (w + 1) / 2;
    let m = w - n;
    (m as u64, n as u64)
}

/// Parses the value literal syntax: decimal numerals, `(x,y)` pairs, `bot`.
pub fn parse_value(text: &str) -> Result<XValue, CodecError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let v = parse_value_at(&chars, &mut pos, true)?;
    skip_ws(&chars, &mut pos);
    if pos != chars.len() {
        return Err(CodecError::ValueSyntax { column: pos + 1, expected: "end of input".into() });
    }
    Ok(v)
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while chars.get(*pos).is_some_and(|c| c.is_whitespace()) {
        *pos += 1;
    }
}

fn parse_value_at(chars: &[char], pos: &mut usize, top: bool) -> Result<XValue, CodecError> {
    let err = |pos: usize, what: &str| CodecError::ValueSyntax { column: pos + 1, expected: what.into() };
    skip_ws(chars, pos);
    match chars.get(*pos) {
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let digits: String = chars[start..*pos].iter().collect();
            digits.parse::<u64>().map(XValue::Num).map_err(|_| err(start, "numeral fitting in 64 bits"))
        }
        Some('(') => {
            *pos += 1;
            let a = parse_value_at(chars, pos, false)?;
            skip_ws(chars, pos);
            if chars.get(*pos) != Some(&',') {
                return Err(err(*pos, "','"));
            }
            *pos += 1;
            let b = parse_value_at(chars, pos, false)?;
            skip_ws(chars, pos);
            if chars.get(*pos) != Some(&')') {
                return Err(err(*pos, "')'"));
            }
            *pos += 1;
            Ok(XValue::pair(a, b))
        }
        Some('b') if chars[*pos..].starts_with(&['b', 'o', 't']) => {
            if !top {
                return Err(err(*pos, "numeral or pair (bot only at top level)"));
            }
            *pos += 3;
            Ok(XValue::Bottom)
        }
        _ => Err(err(*pos, "numeral, '(' or 'bot'")),
    }
}

/// Number of bits of a Gödel integer, used to guard printing.
pub fn bit_len(g: &BigUint) -> u64 {
    g.bits()
}

/// Small Gödel integers as `u64`, when they fit.
pub fn godel_to_u64(g: &BigUint) -> Option<u64> {
    g.to_u64()
}
