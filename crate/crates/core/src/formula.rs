//! Modal formulas: AST, parser, renderer, desugaring and bounded enumeration.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "[]" unary | "<>" unary | atom | "(" formula ")"
//! atom    := [A-Za-z_][A-Za-z0-9_']*
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    Diamond(Arc<Formula>),
}

impl Formula {
    pub fn atom(name: impl AsRef<str>) -> Formula {
        Formula::Atom(Arc::from(name.as_ref()))
    }

    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Arc::new(f), Arc::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Arc::new(f), Arc::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::Implies(Arc::new(f), Arc::new(g))
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Arc::new(f))
    }

    pub fn diamond(f: Formula) -> Formula {
        Formula::Diamond(Arc::new(f))
    }

    /// Number of atom and connective nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Box(f) | Formula::Diamond(f) => 1 + f.size(),
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) => {
                1 + f.size() + g.size()
            }
        }
    }

    /// Modal nesting depth.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(f) => f.depth(),
            Formula::Box(f) | Formula::Diamond(f) => 1 + f.depth(),
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) => {
                f.depth().max(g.depth())
            }
        }
    }

    /// Atom names occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Not(f) | Formula::Box(f) | Formula::Diamond(f) => f.collect_atoms(out),
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) => {
                f.collect_atoms(out);
                g.collect_atoms(out);
            }
        }
    }

    pub fn contains_implies(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Implies(..) => true,
            Formula::Not(f) | Formula::Box(f) | Formula::Diamond(f) => f.contains_implies(),
            Formula::And(f, g) | Formula::Or(f, g) => f.contains_implies() || g.contains_implies(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", render(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {}", .expected.join(", "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Tilde,
    Amp,
    Bar,
    Arrow,
    BoxOp,
    DiamondOp,
    LParen,
    RParen,
    Ident(String),
    End,
}

const OPERAND: &[&str] = &["`~`", "`[]`", "`<>`", "atom", "`(`"];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    tok: Token,
    tok_start: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, SyntaxError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            tok: Token::End,
            tok_start: 0,
        };
        p.advance()?;
        Ok(p)
    }

    fn error(&self, expected: &[&'static str]) -> SyntaxError {
        SyntaxError {
            offset: self.tok_start,
            expected: expected.to_vec(),
        }
    }

    fn advance(&mut self) -> Result<(), SyntaxError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_start = self.pos;
        let rest = &self.src[self.pos..];
        let (tok, len) = match rest {
            [] => (Token::End, 0),
            [b'~', ..] => (Token::Tilde, 1),
            [b'&', ..] => (Token::Amp, 1),
            [b'|', ..] => (Token::Bar, 1),
            [b'(', ..] => (Token::LParen, 1),
            [b')', ..] => (Token::RParen, 1),
            [b'-', b'>', ..] => (Token::Arrow, 2),
            [b'[', b']', ..] => (Token::BoxOp, 2),
            [b'<', b'>', ..] => (Token::DiamondOp, 2),
            [c, ..] if c.is_ascii_alphabetic() || *c == b'_' => {
                let len = rest
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == b'_' || **c == b'\'')
                    .count();
                let name = String::from_utf8_lossy(&rest[..len]).into_owned();
                (Token::Ident(name), len)
            }
            _ => {
                return Err(SyntaxError {
                    offset: self.pos,
                    expected: vec![
                        "`~`", "`&`", "`|`", "`->`", "`[]`", "`<>`", "atom", "`(`", "`)`",
                    ],
                })
            }
        };
        self.tok = tok;
        self.pos += len;
        Ok(())
    }

    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if self.tok == Token::Arrow {
            self.advance()?;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while self.tok == Token::Bar {
            self.advance()?;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.tok == Token::Amp {
            self.advance()?;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match std::mem::replace(&mut self.tok, Token::End) {
            Token::Tilde => {
                self.advance()?;
                Ok(Formula::negate(self.unary()?))
            }
            Token::BoxOp => {
                self.advance()?;
                Ok(Formula::boxed(self.unary()?))
            }
            Token::DiamondOp => {
                self.advance()?;
                Ok(Formula::diamond(self.unary()?))
            }
            Token::Ident(name) => {
                self.advance()?;
                Ok(Formula::atom(name))
            }
            Token::LParen => {
                self.advance()?;
                let inner = self.implication()?;
                if self.tok != Token::RParen {
                    return Err(self.error(&["`&`", "`|`", "`->`", "`)`"]));
                }
                self.advance()?;
                Ok(inner)
            }
            other => {
                self.tok = other;
                Err(self.error(OPERAND))
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text)?;
    let f = p.implication()?;
    if p.tok != Token::End {
        return Err(p.error(&["`&`", "`|`", "`->`", "end of input"]));
    }
    Ok(f)
}

/// Renders with the fewest parentheses that parse back to the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    render_into(f, &mut out);
    out
}

fn render_child(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        render_into(f, out);
        out.push(')');
    } else {
        render_into(f, out);
    }
}

fn render_into(f: &Formula, out: &mut String) {
    match f {
        Formula::Atom(p) => out.push_str(p),
        Formula::Not(g) | Formula::Box(g) | Formula::Diamond(g) => {
            out.push_str(match f {
                Formula::Not(_) => "~",
                Formula::Box(_) => "[]",
                _ => "<>",
            });
            render_child(g, g.precedence() < 4, out);
        }
        Formula::And(g, h) | Formula::Or(g, h) => {
            let (prec, op) = if matches!(f, Formula::And(..)) {
                (3, " & ")
            } else {
                (2, " | ")
            };
            // Left-associative: only the right operand needs parens at equal precedence.
            render_child(g, g.precedence() < prec, out);
            out.push_str(op);
            render_child(h, h.precedence() <= prec, out);
        }
        Formula::Implies(g, h) => {
            render_child(g, g.precedence() <= 1, out);
            out.push_str(" -> ");
            render_child(h, h.precedence() < 1, out);
        }
    }
}

/// Rewrites every `φ -> ψ` as `~φ | ψ`. Modal operators are kept.
pub fn desugar(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::negate(desugar(g)),
        Formula::Box(g) => Formula::boxed(desugar(g)),
        Formula::Diamond(g) => Formula::diamond(desugar(g)),
        Formula::And(g, h) => Formula::and(desugar(g), desugar(h)),
        Formula::Or(g, h) => Formula::or(desugar(g), desugar(h)),
        Formula::Implies(g, h) => Formula::or(Formula::negate(desugar(g)), desugar(h)),
    }
}

/// All implication-free formulas over `atoms` with at most `max_size`
/// nodes, grouped by size. Within a size the constructor order is atom,
/// `~`, `&`, `|`, `[]`, `<>`; binary nodes list smaller left operands
/// first, and operands follow their own position in this order.
pub fn enumerate_formulas<S: AsRef<str>>(atoms: &[S], max_size: usize) -> Vec<Formula> {
    let mut names: Vec<&str> = Vec::new();
    for a in atoms {
        if !names.contains(&a.as_ref()) {
            names.push(a.as_ref());
        }
    }
    if names.is_empty() || max_size == 0 {
        return Vec::new();
    }

    let mut levels: Vec<Vec<Arc<Formula>>> = vec![Vec::new()];
    levels.push(names.iter().map(|p| Arc::new(Formula::atom(p))).collect());
    for size in 2..=max_size {
        let mut level = Vec::new();
        for g in &levels[size - 1] {
            level.push(Arc::new(Formula::Not(g.clone())));
        }
        for binary in [Formula::And as fn(_, _) -> _, Formula::Or] {
            for left in 1..size - 1 {
                for g in &levels[left] {
                    for h in &levels[size - 1 - left] {
                        level.push(Arc::new(binary(g.clone(), h.clone())));
                    }
                }
            }
        }
        for unary in [Formula::Box as fn(_) -> _, Formula::Diamond] {
            for g in &levels[size - 1] {
                level.push(Arc::new(unary(g.clone())));
            }
        }
        levels.push(level);
    }
    levels
        .into_iter()
        .flatten()
        .map(|f| Arc::try_unwrap(f).unwrap_or_else(|f| (*f).clone()))
        .collect()
}
