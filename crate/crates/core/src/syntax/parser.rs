//! Formula text grammar.
//!
//! ```text
//! iff     := imp ( ("<->" | "⇔" | "↔") imp )*
//! imp     := or ( ("->" | "<-" | "!->" | "!<-") imp )?        right-assoc
//! or      := and ( ("|" | "^" | "!|") and )*
//! and     := unary ( ("&" | "!&") unary )*
//! unary   := ("!" | "¬" | "~") unary | primary
//! primary := "(" iff ")" | "true" | "false" | name | name "=" value
//! ```
//!
//! A bare `name` abbreviates `name=T` and is only valid for binary variables.

use crate::error::{Error, Result};
use crate::logic::formula::{Connective, Formula};
use crate::logic::space::{is_identifier, is_value_char, Space, Variable};

/// A parsed but not yet bound formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    True,
    False,
    Atom {
        name: String,
        value: Option<String>,
        position: usize,
    },
    Not(Box<Expr>),
    Bin(Connective, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Not,
    Bin(Connective),
    Eq,
    Word(String),
}

/// Token plus its 1-based character column.
type Spanned = (Tok, usize);

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let starts = |i: usize, s: &str| -> bool {
        let s: Vec<char> = s.chars().collect();
        chars.len() >= i + s.len() && chars[i..i + s.len()] == s[..]
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        // longest ASCII operators first
        let ascii: [(&str, Tok); 11] = [
            ("<->", Tok::Bin(Connective::Iff)),
            ("!->", Tok::Bin(Connective::NotImplies)),
            ("!<-", Tok::Bin(Connective::NotImpliedBy)),
            ("->", Tok::Bin(Connective::Implies)),
            ("<-", Tok::Bin(Connective::ImpliedBy)),
            ("!&", Tok::Bin(Connective::Nand)),
            ("!|", Tok::Bin(Connective::Nor)),
            ("&", Tok::Bin(Connective::And)),
            ("|", Tok::Bin(Connective::Or)),
            ("^", Tok::Bin(Connective::Xor)),
            ("!", Tok::Not),
        ];
        if let Some((s, t)) = ascii.iter().find(|(s, _)| starts(i, s)) {
            out.push((t.clone(), pos));
            i += s.chars().count();
            continue;
        }
        let glyph = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Eq),
            '¬' | '~' => Some(Tok::Not),
            '∧' => Some(Tok::Bin(Connective::And)),
            '∨' => Some(Tok::Bin(Connective::Or)),
            '⇒' | '→' => Some(Tok::Bin(Connective::Implies)),
            '⇐' | '←' => Some(Tok::Bin(Connective::ImpliedBy)),
            '⇔' | '↔' => Some(Tok::Bin(Connective::Iff)),
            '⊕' | '⊻' => Some(Tok::Bin(Connective::Xor)),
            '↑' => Some(Tok::Bin(Connective::Nand)),
            '↓' => Some(Tok::Bin(Connective::Nor)),
            '⇏' => Some(Tok::Bin(Connective::NotImplies)),
            '⇍' => Some(Tok::Bin(Connective::NotImpliedBy)),
            '⊤' => Some(Tok::Word("true".into())),
            '⊥' => Some(Tok::Word("false".into())),
            _ => None,
        };
        if let Some(t) = glyph {
            out.push((t, pos));
            i += 1;
            continue;
        }
        if is_value_char(c) {
            let start = i;
            while i < chars.len() && is_value_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Word(chars[start..i].iter().collect()), pos));
            continue;
        }
        return Err(Error::Parse {
            position: pos,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn peek_bin(&self, allowed: &[Connective]) -> Option<Connective> {
        match self.peek() {
            Some(Tok::Bin(c)) if allowed.contains(c) => Some(*c),
            _ => None,
        }
    }

    fn iff(&mut self) -> Result<Expr> {
        let mut lhs = self.imp()?;
        while let Some(c) = self.peek_bin(&[Connective::Iff]) {
            self.at += 1;
            let rhs = self.imp()?;
            lhs = Expr::Bin(c, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Expr> {
        let lhs = self.or()?;
        const LEVEL: [Connective; 4] = [
            Connective::Implies,
            Connective::ImpliedBy,
            Connective::NotImplies,
            Connective::NotImpliedBy,
        ];
        if let Some(c) = self.peek_bin(&LEVEL) {
            self.at += 1;
            let rhs = self.imp()?;
            return Ok(Expr::Bin(c, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut lhs = self.and()?;
        while let Some(c) = self.peek_bin(&[Connective::Or, Connective::Xor, Connective::Nor]) {
            self.at += 1;
            let rhs = self.and()?;
            lhs = Expr::Bin(c, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.peek_bin(&[Connective::And, Connective::Nand]) {
            self.at += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(c, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Not) {
            self.at += 1;
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr> {
        let position = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.iff()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected `)`");
                }
                self.at += 1;
                Ok(e)
            }
            Some(Tok::Word(w)) if w == "true" => {
                self.at += 1;
                Ok(Expr::True)
            }
            Some(Tok::Word(w)) if w == "false" => {
                self.at += 1;
                Ok(Expr::False)
            }
            Some(Tok::Word(name)) => {
                if !is_identifier(&name) {
                    return self.error(format!("`{name}` is not a variable name"));
                }
                self.at += 1;
                let value = if self.peek() == Some(&Tok::Eq) {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Word(v)) => {
                            self.at += 1;
                            Some(v)
                        }
                        _ => return self.error("expected a value after `=`"),
                    }
                } else {
                    None
                };
                Ok(Expr::Atom {
                    name,
                    value,
                    position,
                })
            }
            Some(_) => self.error("expected a proposition"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses formula text without resolving names.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        end: text.chars().count() + 1,
        toks,
        at: 0,
    };
    let e = p.iff()?;
    if p.at != p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Resolves names and values against a space.
    pub fn bind(&self, space: &Space) -> Result<Formula> {
        Ok(match self {
            Expr::True => Formula::True,
            Expr::False => Formula::False,
            Expr::Atom { name, value, .. } => {
                let vi = space
                    .variable_index(name)
                    .ok_or_else(|| Error::Unbound(format!("unknown variable `{name}`")))?;
                let var = &space.variables()[vi];
                let value = match value {
                    Some(v) => var.value_index(v).ok_or_else(|| {
                        Error::Unbound(format!("unknown value `{v}` for `{name}`"))
                    })?,
                    None if var.is_binary() => 0,
                    None => {
                        return Err(Error::Unbound(format!(
                            "`{name}` is not binary; write `{name}=<value>`"
                        )))
                    }
                };
                Formula::atom(vi, value)
            }
            Expr::Not(e) => Formula::not(e.bind(space)?),
            Expr::Bin(c, f, g) => Formula::bin(*c, f.bind(space)?, g.bind(space)?),
        })
    }

    fn collect_letters(&self, names: &mut Vec<String>) -> Result<()> {
        match self {
            Expr::True | Expr::False => Ok(()),
            Expr::Atom {
                name,
                value,
                position,
            } => {
                if let Some(v) = value {
                    if v != "T" && v != "F" {
                        return Err(Error::Parse {
                            position: *position,
                            message: format!(
                                "cannot infer the domain of `{name}`; only T/F values are allowed without a scenario"
                            ),
                        });
                    }
                }
                if !names.contains(name) {
                    names.push(name.clone());
                }
                Ok(())
            }
            Expr::Not(e) => e.collect_letters(names),
            Expr::Bin(_, f, g) => {
                f.collect_letters(names)?;
                g.collect_letters(names)
            }
        }
    }
}

/// Parses and binds a formula against a space.
pub fn parse_formula(text: &str, space: &Space) -> Result<Formula> {
    parse_expr(text)?.bind(space)
}

/// Parses several formulas whose letters are all propositional; the space
/// is made of the letters in order of first appearance.
pub fn parse_propositional(texts: &[&str]) -> Result<(Space, Vec<Formula>)> {
    let exprs = texts.iter().map(|t| parse_expr(t)).collect::<Result<Vec<_>>>()?;
    let mut names = Vec::new();
    for e in &exprs {
        e.collect_letters(&mut names)?;
    }
    if names.is_empty() {
        names.push("a".to_string());
    }
    let space = Space::new(
        names
            .iter()
            .map(Variable::binary)
            .collect::<Result<Vec<_>>>()?,
    )?;
    let fs = exprs
        .iter()
        .map(|e| e.bind(&space))
        .collect::<Result<Vec<_>>>()?;
    Ok((space, fs))
}
