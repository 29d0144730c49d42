//! Concrete syntax for terms and codes.
//!
//! ```text
//! term := "id" | "zero" | "s" | "pi" | "delta" | "l" | "r"   (optionally ":" type)
//!       | "(" term "o" term ")"        composition, right operand runs first
//!       | "<" term ";" term ">"        induced map
//!       | "<" term "#" term ">"        product of maps
//!       | "iter" "(" term ")"
//!       | "pr" "(" term "," term ")"
//!       | "if" "(" term "," term "," term ")"
//!       | "@" identifier               stdlib reference
//! type := "1" | "N" | "(" type "*" type ")"
//! ```

use thiserror::Error;

use super::{
    erase_unchecked, stdlib::{if_scheme, pr_scheme}, stdlib, ObjType, TypedTerm,
};
use crate::codec::Code;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: expected {expected}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    At(String),
    Punct(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer, SyntaxError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    let word_char = |c: char| c.is_ascii_alphanumeric() || c == '_';
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if word_char(c) || c == '@' {
            let at = c == '@';
            if at {
                chars.next();
                col += 1;
            }
            let mut w = String::new();
            while let Some(&d) = chars.peek() {
                if !word_char(d) {
                    break;
                }
                w.push(d);
                chars.next();
                col += 1;
            }
            if at {
                if w.is_empty() {
                    return Err(SyntaxError { line: l0, column: c0 + 1, expected: "identifier after '@'".into() });
                }
                toks.push((Tok::At(w), l0, c0));
            } else {
                toks.push((Tok::Word(w), l0, c0));
            }
        } else if "()<>;#,:*".contains(c) {
            chars.next();
            col += 1;
            toks.push((Tok::Punct(c), l0, c0));
        } else {
            return Err(SyntaxError { line: l0, column: c0, expected: "a term".into() });
        }
    }
    Ok(Lexer { toks, end: (line, col) })
}

struct Parser {
    lx: Lexer,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.lx.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.lx.end)
    }

    fn fail<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        let (line, column) = self.here();
        Err(SyntaxError { line, column, expected: expected.to_string() })
    }

    fn punct(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("'{c}'"))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(&Tok::Punct(c));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn ty(&mut self) -> Result<ObjType, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Word(w)) if w == "1" => {
                self.pos += 1;
                Ok(ObjType::Terminal)
            }
            Some(Tok::Word(w)) if w == "N" => {
                self.pos += 1;
                Ok(ObjType::Nat)
            }
            Some(Tok::Punct('(')) => {
                self.pos += 1;
                let a = self.ty()?;
                self.punct('*')?;
                let b = self.ty()?;
                self.punct(')')?;
                Ok(ObjType::prod(a, b))
            }
            _ => self.fail("object type '1', 'N' or '(A*B)'"),
        }
    }

    fn ascription(&mut self) -> Result<Option<ObjType>, SyntaxError> {
        if self.eat_punct(':') {
            self.ty().map(Some)
        } else {
            Ok(None)
        }
    }

    fn product_ascription(&mut self) -> Result<Option<(ObjType, ObjType)>, SyntaxError> {
        let at = self.here();
        match self.ascription()? {
            None => Ok(None),
            Some(ObjType::Prod(a, b)) => Ok(Some((*a, *b))),
            Some(_) => Err(SyntaxError { line: at.0, column: at.1, expected: "product type for a projection".into() }),
        }
    }

    fn term(&mut self) -> Result<TypedTerm, SyntaxError> {
        let tok = match self.peek().cloned() {
            Some(t) => t,
            None => return self.fail("a term"),
        };
        match tok {
            Tok::At(name) => {
                let at = self.here();
                self.pos += 1;
                stdlib(&name).map(|e| e.term.clone()).map_err(|_| SyntaxError {
                    line: at.0,
                    column: at.1,
                    expected: format!("known stdlib name (got @{name})"),
                })
            }
            Tok::Word(w) => {
                self.pos += 1;
                match w.as_str() {
                    "id" => Ok(TypedTerm::Id(self.ascription()?)),
                    "zero" => Ok(TypedTerm::Zero),
                    "s" => Ok(TypedTerm::Succ),
                    "pi" => Ok(TypedTerm::Terminal(self.ascription()?)),
                    "delta" => Ok(TypedTerm::Diag(self.ascription()?)),
                    "l" => Ok(TypedTerm::ProjL(self.product_ascription()?)),
                    "r" => Ok(TypedTerm::ProjR(self.product_ascription()?)),
                    "iter" => {
                        self.punct('(')?;
                        let f = self.term()?;
                        self.punct(')')?;
                        Ok(super::iter(f))
                    }
                    "pr" => {
                        self.punct('(')?;
                        let g = self.term()?;
                        self.punct(',')?;
                        let h = self.term()?;
                        self.punct(')')?;
                        Ok(pr_scheme(g, h))
                    }
                    "if" => {
                        self.punct('(')?;
                        let chi = self.term()?;
                        self.punct(',')?;
                        let g = self.term()?;
                        self.punct(',')?;
                        let h = self.term()?;
                        self.punct(')')?;
                        Ok(if_scheme(chi, g, h))
                    }
                    _ => {
                        self.pos -= 1;
                        self.fail("a term")
                    }
                }
            }
            Tok::Punct('(') => {
                self.pos += 1;
                let g = self.term()?;
                match self.peek() {
                    Some(Tok::Word(w)) if w == "o" => self.pos += 1,
                    _ => return self.fail("'o'"),
                }
                let f = self.term()?;
                self.punct(')')?;
                Ok(super::comp(g, f))
            }
            Tok::Punct('<') => {
                self.pos += 1;
                let f = self.term()?;
                let induced = if self.eat_punct(';') {
                    true
                } else if self.eat_punct('#') {
                    false
                } else {
                    return self.fail("';' or '#'");
                };
                let g = self.term()?;
                self.punct('>')?;
                Ok(if induced { super::induced(f, g) } else { super::prod(f, g) })
            }
            Tok::Punct(_) => self.fail("a term"),
        }
    }
}

/// Parses a typed term. `pr`, `if` and `@name` are expanded during parsing.
pub fn parse_term(text: &str) -> Result<TypedTerm, SyntaxError> {
    let mut p = Parser { lx: lex(text)?, pos: 0 };
    let t = p.term()?;
    if p.pos != p.lx.toks.len() {
        return p.fail("end of input");
    }
    Ok(t)
}

/// Parses a code: the term grammar with ascriptions ignored and no typing.
pub fn parse_code(text: &str) -> Result<Code, SyntaxError> {
    parse_term(text).map(|t| erase_unchecked(&t))
}

fn write_term(t: &TypedTerm, monoidal: bool, out: &mut String) {
    use std::fmt::Write;
    let ann = |out: &mut String, a: &Option<ObjType>| {
        if let Some(a) = a {
            let _ = write!(out, ":{a}");
        }
    };
    match t {
        TypedTerm::Id(a) => {
            out.push_str("id");
            ann(out, a);
        }
        TypedTerm::Zero => out.push_str("zero"),
        TypedTerm::Succ => out.push('s'),
        TypedTerm::Terminal(a) => {
            out.push_str("pi");
            ann(out, a);
        }
        TypedTerm::Diag(a) => {
            out.push_str("delta");
            ann(out, a);
        }
        TypedTerm::ProjL(ab) | TypedTerm::ProjR(ab) => {
            out.push_str(if matches!(t, TypedTerm::ProjL(_)) { "l" } else { "r" });
            ann(out, &ab.as_ref().map(|(a, b)| ObjType::prod(a.clone(), b.clone())));
        }
        TypedTerm::Comp(g, f) => {
            out.push('(');
            write_term(g, monoidal, out);
            out.push_str(" o ");
            write_term(f, monoidal, out);
            out.push(')');
        }
        TypedTerm::Induced(f, g) if monoidal => {
            // (f, g) = (f × g) ∘ Δ
            out.push_str("(<");
            write_term(f, monoidal, out);
            out.push_str(" # ");
            write_term(g, monoidal, out);
            out.push_str("> o delta)");
        }
        TypedTerm::Induced(f, g) | TypedTerm::Prod(f, g) => {
            out.push('<');
            write_term(f, monoidal, out);
            out.push_str(if matches!(t, TypedTerm::Induced(..)) { " ; " } else { " # " });
            write_term(g, monoidal, out);
            out.push('>');
        }
        TypedTerm::Iter(f) => {
            out.push_str("iter(");
            write_term(f, monoidal, out);
            out.push(')');
        }
    }
}

/// Canonical text; `parse_term(&print_term(t)) == t`.
pub fn print_term(t: &TypedTerm) -> String {
    let mut out = String::new();
    write_term(t, false, &mut out);
    out
}

/// Like [`print_term`] but spells induced maps as `(<f # g> o delta)`.
pub fn print_monoidal(t: &TypedTerm) -> String {
    let mut out = String::new();
    write_term(t, true, &mut out);
    out
}

impl std::fmt::Display for TypedTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_term(self))
    }
}
