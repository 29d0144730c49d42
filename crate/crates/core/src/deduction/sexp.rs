//! Line-oriented s-expression syntax for deduction trees:
//! `(Rule LHS RHS premise*)`, one node per line, premises indented.

use thiserror::Error;

use super::{DTree, RuleTag};
use crate::codec::Code;
use crate::term::parse_code;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("proof syntax error at offset {offset}: {message}")]
pub struct ProofSyntaxError {
    pub offset: usize,
    pub message: String,
}

fn write_tree(t: &DTree, indent: usize, out: &mut String) {
    out.push_str(&"  ".repeat(indent));
    out.push_str(&format!("({} {} {}", t.rule, t.lhs, t.rhs));
    for p in &t.premises {
        out.push('\n');
        write_tree(p, indent + 1, out);
    }
    out.push(')');
}

pub fn print_tree(t: &DTree) -> String {
    let mut out = String::new();
    write_tree(t, 0, &mut out);
    out
}

struct Reader<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ProofSyntaxError> {
        Err(ProofSyntaxError { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ProofSyntaxError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn word(&mut self) -> &'a str {
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '@'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    /// Advances past a bracket group starting at the current position.
    fn group(&mut self) -> Result<(), ProofSyntaxError> {
        let mut depth = 0usize;
        for (i, c) in self.text[self.pos..].char_indices() {
            match c {
                '(' | '<' => depth += 1,
                ')' | '>' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos += i + 1;
                        return Ok(());
                    }
                }
                _ => {}
            }
        }
        self.fail("unbalanced brackets in code")
    }

    fn code(&mut self) -> Result<Code, ProofSyntaxError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(' | '<') => self.group()?,
            Some(c) if c.is_alphabetic() => {
                self.word();
                if self.peek() == Some('(') {
                    self.group()?;
                }
            }
            _ => return self.fail("expected a code"),
        }
        let src = &self.text[start..self.pos];
        parse_code(src).map_err(|e| ProofSyntaxError { offset: start, message: format!("bad code {src:?}: {e}") })
    }

    /// True when the next token opens a premise rather than a code.
    fn at_premise(&mut self) -> bool {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        rest.starts_with('(') && rest[1..].trim_start().starts_with(|c: char| c.is_ascii_uppercase())
    }

    fn tree(&mut self) -> Result<DTree, ProofSyntaxError> {
        self.expect('(')?;
        self.skip_ws();
        let at = self.pos;
        let name = self.word();
        let Some(rule) = RuleTag::from_name(name) else {
            self.pos = at;
            return self.fail(format!("unknown rule {name:?}"));
        };
        let lhs = self.code()?;
        let rhs = self.code()?;
        let mut premises = Vec::new();
        while self.at_premise() {
            premises.push(self.tree()?);
        }
        self.expect(')')?;
        Ok(DTree::new(rule, lhs, rhs, premises))
    }
}

/// Parses one tree. The result is not checked against the rule schemas.
pub fn parse_tree(text: &str) -> Result<DTree, ProofSyntaxError> {
    let mut r = Reader { text, pos: 0 };
    let t = r.tree()?;
    r.skip_ws();
    if r.pos != text.len() {
        return r.fail("trailing input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::Basic;

    #[test]
    fn round_trip() {
        let s = Code::Ba(Basic::Succ);
        let t = DTree::trans(
            DTree::ax_neutral_l(Code::iter(s.clone())),
            DTree::sym(DTree::ax_neutral_r(Code::iter(s))),
        );
        let text = print_tree(&t);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(parse_tree(&text), Ok(t));
    }

    #[test]
    fn errors() {
        assert!(parse_tree("(Nope id id)").unwrap_err().message.contains("unknown rule"));
        assert!(parse_tree("(Refl id id").is_err());
        assert!(parse_tree("(Refl id id) x").is_err());
        assert!(parse_tree("(Refl (id o id) id)").is_ok());
    }
}
