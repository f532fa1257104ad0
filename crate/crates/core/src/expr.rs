//! Text front end: a small Boolean expression language.
//!
//! Grammar, loosest-binding first (NOT binds tighter than AND, AND than
//! XOR, XOR than OR):
//!
//! ```text
//! expr  := or
//! or    := xor (("|" | "OR") xor)*
//! xor   := and (("^" | "+") and)*
//! and   := unary (("&" | "*" | "AND") unary)*
//! unary := ("!" | "~" | "NOT") unary | atom
//! atom  := ident | "0" | "1" | "(" expr ")"
//! ```
//!
//! `+` is addition over F2, i.e. XOR, matching polynomial notation.
//! Identifiers start with a letter or underscore; the uppercase keywords
//! `OR`, `AND`, `NOT` are reserved. There is no implicit product: `xy` is
//! one identifier, `x*y` a product.

use crate::anf::AnfPolynomial;
use crate::error::{Error, Result};
use crate::table::{TruthTable, VarIndex};

/// Parsed expression tree. N-ary nodes always have at least two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpressionAst {
    Var(String),
    Const(bool),
    Not(Box<ExpressionAst>),
    And(Vec<ExpressionAst>),
    Or(Vec<ExpressionAst>),
    Xor(Vec<ExpressionAst>),
}

impl ExpressionAst {
    /// Parses the expression grammar; does not bind variables.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, at: 0 };
        let ast = p.or_expr()?;
        if let Some(tok) = p.peek() {
            return Err(err_at(tok.pos, "unexpected trailing input"));
        }
        Ok(ast)
    }

    /// Variable names in order of first appearance.
    pub fn variable_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        self.collect_names(&mut names);
        names
    }

    fn collect_names(&self, names: &mut Vec<String>) {
        match self {
            ExpressionAst::Var(name) => {
                if !names.iter().any(|n| n == name) {
                    names.push(name.clone());
                }
            }
            ExpressionAst::Const(_) => {}
            ExpressionAst::Not(child) => child.collect_names(names),
            ExpressionAst::And(cs) | ExpressionAst::Or(cs) | ExpressionAst::Xor(cs) => {
                for c in cs {
                    c.collect_names(names);
                }
            }
        }
    }

    /// Evaluates to a truth table over the given variable binding.
    pub fn to_truth_table(&self, names: &[String]) -> Result<TruthTable> {
        let arity = names.len();
        match self {
            ExpressionAst::Var(name) => {
                let idx = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| err_at(0, format!("unbound variable '{name}'")))?;
                TruthTable::variable(arity, VarIndex::new(idx + 1))
            }
            ExpressionAst::Const(c) => Ok(TruthTable::constant(arity, *c)),
            ExpressionAst::Not(child) => Ok(child.to_truth_table(names)?.complement()),
            ExpressionAst::And(cs) => fold_tables(cs, names, TruthTable::and),
            ExpressionAst::Or(cs) => fold_tables(cs, names, TruthTable::or),
            ExpressionAst::Xor(cs) => fold_tables(cs, names, TruthTable::xor),
        }
    }
}

fn fold_tables(
    children: &[ExpressionAst],
    names: &[String],
    op: impl Fn(&TruthTable, &TruthTable) -> TruthTable,
) -> Result<TruthTable> {
    let mut acc = children[0].to_truth_table(names)?;
    for c in &children[1..] {
        acc = op(&acc, &c.to_truth_table(names)?);
    }
    Ok(acc)
}

/// Most variables an expression may bind; keeps truth tables at a sane size.
pub const MAX_EXPRESSION_VARS: usize = 24;

/// Parses `text` into its algebraic normal form and the variable binding.
///
/// Variables bind in order of first appearance unless `variable_order` is
/// given, in which case that list is the complete closed variable set and
/// any name outside it is an error. OR desugars as `a + b + a*b` and NOT
/// as `a + 1` via truth-table evaluation.
pub fn parse_expression(
    text: &str,
    variable_order: Option<&[String]>,
) -> Result<(AnfPolynomial, Vec<String>)> {
    let tokens = tokenize(text)?;
    if let Some(order) = variable_order {
        for tok in &tokens {
            if let TokenKind::Ident(name) = &tok.kind {
                if !order.iter().any(|n| n == name) {
                    return Err(err_at(tok.pos, format!("unknown variable '{name}'")));
                }
            }
        }
    }
    let mut p = Parser { tokens, at: 0 };
    let ast = p.or_expr()?;
    if let Some(tok) = p.peek() {
        return Err(err_at(tok.pos, "unexpected trailing input"));
    }
    let names = match variable_order {
        Some(order) => order.to_vec(),
        None => ast.variable_names(),
    };
    if names.len() > MAX_EXPRESSION_VARS {
        return Err(Error::UnsupportedArity {
            arity: names.len(),
            detail: "expression binds more variables than supported",
        });
    }
    let table = ast.to_truth_table(&names)?;
    Ok((AnfPolynomial::from_truth_table(&table), names))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Ident(String),
    Const(bool),
    Or,
    Xor,
    And,
    Not,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn err_at(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let pos = i;
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => out.push(Token { kind: TokenKind::LParen, pos }),
            b')' => out.push(Token { kind: TokenKind::RParen, pos }),
            b'|' => out.push(Token { kind: TokenKind::Or, pos }),
            b'^' | b'+' => out.push(Token { kind: TokenKind::Xor, pos }),
            b'&' | b'*' => out.push(Token { kind: TokenKind::And, pos }),
            b'!' | b'~' => out.push(Token { kind: TokenKind::Not, pos }),
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let lit = &text[i..j];
                let kind = match lit {
                    "0" => TokenKind::Const(false),
                    "1" => TokenKind::Const(true),
                    _ => return Err(err_at(pos, format!("'{lit}' is not a Boolean constant"))),
                };
                out.push(Token { kind, pos });
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                let kind = match word {
                    "OR" => TokenKind::Or,
                    "AND" => TokenKind::And,
                    "NOT" => TokenKind::Not,
                    _ => TokenKind::Ident(word.to_string()),
                };
                out.push(Token { kind, pos });
                i = j;
                continue;
            }
            other => {
                return Err(err_at(pos, format!("unexpected character '{}'", other as char)))
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn chain(
        &mut self,
        op: TokenKind,
        mut sub: impl FnMut(&mut Self) -> Result<ExpressionAst>,
        wrap: impl Fn(Vec<ExpressionAst>) -> ExpressionAst,
    ) -> Result<ExpressionAst> {
        let first = sub(self)?;
        let mut children = vec![first];
        while self.eat(&op) {
            children.push(sub(self)?);
        }
        if children.len() == 1 {
            Ok(children.pop().expect("one child"))
        } else {
            Ok(wrap(children))
        }
    }

    fn or_expr(&mut self) -> Result<ExpressionAst> {
        self.chain(TokenKind::Or, Self::xor_expr, ExpressionAst::Or)
    }

    fn xor_expr(&mut self) -> Result<ExpressionAst> {
        self.chain(TokenKind::Xor, Self::and_expr, ExpressionAst::Xor)
    }

    fn and_expr(&mut self) -> Result<ExpressionAst> {
        self.chain(TokenKind::And, Self::unary, ExpressionAst::And)
    }

    fn unary(&mut self) -> Result<ExpressionAst> {
        if self.eat(&TokenKind::Not) {
            return Ok(ExpressionAst::Not(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ExpressionAst> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => {
                let end = self.tokens.last().map(|t| t.pos + 1).unwrap_or(0);
                return Err(err_at(end, "expected an operand"));
            }
        };
        self.at += 1;
        match tok.kind {
            TokenKind::Ident(name) => Ok(ExpressionAst::Var(name)),
            TokenKind::Const(c) => Ok(ExpressionAst::Const(c)),
            TokenKind::LParen => {
                let inner = self.or_expr()?;
                if !self.eat(&TokenKind::RParen) {
                    let pos = self.peek().map(|t| t.pos).unwrap_or(tok.pos + 1);
                    return Err(err_at(pos, "expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(err_at(tok.pos, "expected an operand")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn masks(p: &AnfPolynomial) -> Vec<u64> {
        p.term_masks().collect()
    }

    #[test]
    fn product_with_xor_factor() {
        let (p, ns) = parse_expression("x*y*(z+w)", None).unwrap();
        assert_eq!(ns, names(&["x", "y", "z", "w"]));
        // {x,y,z} and {x,y,w}: masks 0b0111 and 0b1011.
        assert_eq!(masks(&p), vec![0b0111, 0b1011]);
    }

    #[test]
    fn xor_of_two_vars() {
        let (p, ns) = parse_expression("x1 ^ x2", None).unwrap();
        assert_eq!(ns, names(&["x1", "x2"]));
        assert_eq!(masks(&p), vec![0b01, 0b10]);
    }

    #[test]
    fn or_desugars_over_f2() {
        let (p, _) = parse_expression("a | b", None).unwrap();
        // a + b + a*b.
        assert_eq!(masks(&p), vec![0b01, 0b10, 0b11]);
    }

    #[test]
    fn not_and_keywords() {
        let (p1, _) = parse_expression("!a & b", None).unwrap();
        let (p2, _) = parse_expression("NOT a AND b", None).unwrap();
        assert_eq!(p1, p2);
        // Lowercase words are plain identifiers, not keywords.
        let (_, ns) = parse_expression("not & and", None).unwrap();
        assert_eq!(ns, names(&["not", "and"]));
    }

    #[test]
    fn precedence_not_and_xor_or() {
        // a | b + c * !d parses as a | (b + (c * (!d))).
        let ast = ExpressionAst::parse("a | b + c * !d").unwrap();
        match ast {
            ExpressionAst::Or(cs) => {
                assert_eq!(cs.len(), 2);
                assert!(matches!(cs[1], ExpressionAst::Xor(_)));
            }
            other => panic!("expected Or at the root, got {other:?}"),
        }
    }

    #[test]
    fn explicit_order_admits_unused_variables() {
        let order = names(&["Ge", "Le", "L", "E"]);
        let (p, ns) = parse_expression("L & E", Some(&order)).unwrap();
        assert_eq!(ns, order);
        assert_eq!(p.arity(), 4);
        assert_eq!(masks(&p), vec![0b1100]);
    }

    #[test]
    fn closed_order_rejects_unknown_names() {
        let order = names(&["a", "b"]);
        let err = parse_expression("a & c", Some(&order)).unwrap_err();
        match err {
            Error::Syntax { position, message } => {
                assert_eq!(position, 4);
                assert!(message.contains("'c'"));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(
            parse_expression("a &", None),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_expression("a % b", None),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_expression("(a | b", None),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_expression("a 2", None),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn constant_expressions_have_arity_zero() {
        let (p, ns) = parse_expression("!0 & 1", None).unwrap();
        assert!(ns.is_empty());
        assert_eq!(p.arity(), 0);
        assert!(!p.is_zero());
    }

    #[test]
    fn chained_xor_is_nary() {
        let ast = ExpressionAst::parse("a + b + c").unwrap();
        assert_eq!(
            ast,
            ExpressionAst::Xor(vec![
                ExpressionAst::Var("a".into()),
                ExpressionAst::Var("b".into()),
                ExpressionAst::Var("c".into()),
            ])
        );
    }
}
