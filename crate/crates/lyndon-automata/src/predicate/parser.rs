//! Recursive-descent parser for the predicate language.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! formula  := or ( "=>" formula )?
//! or       := and ( "|" and )*
//! and      := unary ( "&" unary )*
//! unary    := "~" unary | ("E" | "A") ident+ unary | "(" formula ")" | atom
//! atom     := operand rel operand
//! operand  := ident "[" term "]" | term
//! term     := item ( "+" item )*
//! item     := number | ident
//! rel      := "=" | "!=" | "<" | "<=" | ">" | ">="
//! ```
//!
//! `E` and `A` are the quantifiers and are reserved words. A quantifier binds
//! the unit immediately after its variables, so bodies are usually written in
//! parentheses. Comparisons relate exactly two operands; `a < b < c` is
//! rejected with a hint to split it.

use crate::error::{Error, Result};
use crate::predicate::ast::{PredicateAst, Rel, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Plus,
    Amp,
    Pipe,
    Tilde,
    Arrow,
    Rel(Rel),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> char {
        let c = self.chars.next().unwrap();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn error(&self, line: usize, col: usize, message: String) -> Error {
        Error::Syntax { line, col, message }
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut lx = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(&c) = lx.chars.peek() {
        let (line, col) = (lx.line, lx.col);
        let mut push = |tok| out.push(Spanned { tok, line, col });
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                lx.bump();
            }
            '(' => {
                lx.bump();
                push(Tok::LParen);
            }
            ')' => {
                lx.bump();
                push(Tok::RParen);
            }
            '[' => {
                lx.bump();
                push(Tok::LBracket);
            }
            ']' => {
                lx.bump();
                push(Tok::RBracket);
            }
            '+' => {
                lx.bump();
                push(Tok::Plus);
            }
            '&' => {
                lx.bump();
                push(Tok::Amp);
            }
            '|' => {
                lx.bump();
                push(Tok::Pipe);
            }
            '~' => {
                lx.bump();
                push(Tok::Tilde);
            }
            '=' => {
                lx.bump();
                if lx.chars.peek() == Some(&'>') {
                    lx.bump();
                    push(Tok::Arrow);
                } else {
                    push(Tok::Rel(Rel::Eq));
                }
            }
            '!' => {
                lx.bump();
                if lx.chars.peek() == Some(&'=') {
                    lx.bump();
                    push(Tok::Rel(Rel::Ne));
                } else {
                    return Err(lx.error(line, col, "expected `!=`".into()));
                }
            }
            '<' => {
                lx.bump();
                if lx.chars.peek() == Some(&'=') {
                    lx.bump();
                    push(Tok::Rel(Rel::Le));
                } else {
                    push(Tok::Rel(Rel::Lt));
                }
            }
            '>' => {
                lx.bump();
                if lx.chars.peek() == Some(&'=') {
                    lx.bump();
                    push(Tok::Rel(Rel::Ge));
                } else {
                    push(Tok::Rel(Rel::Gt));
                }
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                while let Some(d) = lx.chars.peek().and_then(|c| c.to_digit(10)) {
                    lx.bump();
                    value = value
                        .checked_mul(10)
                        .and_then(|x| x.checked_add(d as u64))
                        .ok_or_else(|| lx.error(line, col, "integer literal too large".into()))?;
                }
                push(Tok::Int(value));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = lx.chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(lx.bump());
                    } else {
                        break;
                    }
                }
                push(Tok::Ident(name));
            }
            other => {
                return Err(lx.error(line, col, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

#[derive(Debug)]
enum Operand {
    Term(Term),
    Index(String, Term),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_ahead(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn error_here(&self, message: String) -> Error {
        if let Some(t) = self.tokens.get(self.pos) {
            Error::Syntax {
                line: t.line,
                col: t.col,
                message,
            }
        } else if let Some(t) = self.tokens.last() {
            Error::Syntax {
                line: t.line,
                col: t.col + 1,
                message,
            }
        } else {
            Error::Syntax {
                line: 1,
                col: 1,
                message,
            }
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(format!("expected {what}")))
        }
    }

    fn formula(&mut self) -> Result<PredicateAst> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<PredicateAst> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<PredicateAst> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PredicateAst> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(Tok::Ident(name)) if name == "E" || name == "A" => {
                let existential = name == "E";
                self.pos += 1;
                let vars = self.quantified_vars()?;
                let body = self.unary()?;
                Ok(vars.into_iter().rev().fold(body, |acc, v| {
                    if existential {
                        PredicateAst::Exists(v, Box::new(acc))
                    } else {
                        PredicateAst::ForAll(v, Box::new(acc))
                    }
                }))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(_) => self.atom(),
            None => Err(self.error_here("unexpected end of input".into())),
        }
    }

    /// Consumes the variable list after a quantifier. An identifier starts the
    /// body instead when it is itself a quantifier or is followed by `[`, an
    /// operator or a closing bracket.
    fn quantified_vars(&mut self) -> Result<Vec<String>> {
        let mut vars = Vec::new();
        while let Some(Tok::Ident(v)) = self.peek() {
            if v == "E" || v == "A" {
                break;
            }
            match self.peek_ahead(1) {
                Some(Tok::LBracket | Tok::Rel(_) | Tok::Plus | Tok::RBracket) => break,
                None => break,
                _ => {}
            }
            vars.push(v.clone());
            self.pos += 1;
        }
        if vars.is_empty() {
            return Err(self.error_here("expected a variable after the quantifier".into()));
        }
        Ok(vars)
    }

    fn atom(&mut self) -> Result<PredicateAst> {
        let lhs = self.operand()?;
        let rel = match self.peek() {
            Some(&Tok::Rel(rel)) => {
                self.pos += 1;
                rel
            }
            _ => return Err(self.error_here("expected a comparison".into())),
        };
        let rhs = self.operand()?;
        if matches!(self.peek(), Some(Tok::Rel(_))) {
            return Err(self.error_here(
                "comparisons chain pairwise only; write `a < b & b < c`".into(),
            ));
        }
        self.build_atom(rel, lhs, rhs)
    }

    fn build_atom(&self, rel: Rel, lhs: Operand, rhs: Operand) -> Result<PredicateAst> {
        match (lhs, rhs) {
            (Operand::Term(a), Operand::Term(b)) => Ok(PredicateAst::Cmp(rel, a, b)),
            (Operand::Index(s1, t1), Operand::Index(s2, t2)) => {
                Ok(PredicateAst::SeqIndexCmp(rel, s1, t1, s2, t2))
            }
            (Operand::Index(seq, t), Operand::Term(Term::Const(c)))
            | (Operand::Term(Term::Const(c)), Operand::Index(seq, t)) => match rel {
                Rel::Eq => Ok(PredicateAst::SeqIndexEq(seq, t, c)),
                Rel::Ne => Ok(PredicateAst::SeqIndexEq(seq, t, c).not()),
                _ => Err(self.error_here(
                    "letters compare with `=` or `!=` against constants".into(),
                )),
            },
            _ => Err(self.error_here(
                "cannot compare a sequence letter with an arithmetic term".into(),
            )),
        }
    }

    fn operand(&mut self) -> Result<Operand> {
        let mut term = match self.item()? {
            Item::Index(seq, t) => {
                if self.peek() == Some(&Tok::Plus) {
                    return Err(
                        self.error_here("sequence letters are not arithmetic".into())
                    );
                }
                return Ok(Operand::Index(seq, t));
            }
            Item::Term(t) => t,
        };
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            match self.item()? {
                Item::Term(t) => term = term.add(t),
                Item::Index(..) => {
                    return Err(
                        self.error_here("sequence letters are not arithmetic".into())
                    )
                }
            }
        }
        Ok(Operand::Term(term))
    }

    fn item(&mut self) -> Result<Item> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Item::Term(Term::Const(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LBracket) {
                    self.pos += 1;
                    let index = match self.operand()? {
                        Operand::Term(t) => t,
                        Operand::Index(..) => {
                            return Err(self.error_here("index expressions cannot nest".into()))
                        }
                    };
                    self.expect(Tok::RBracket, "`]`")?;
                    Ok(Item::Index(name, index))
                } else {
                    Ok(Item::Term(Term::Var(name)))
                }
            }
            _ => Err(self.error_here("expected a number, variable or indexing".into())),
        }
    }
}

enum Item {
    Term(Term),
    Index(String, Term),
}

/// Parses a predicate. Scope and sequence-name checks happen in
/// [`crate::predicate::Session::parse`].
pub fn parse(text: &str) -> Result<PredicateAst> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax {
            line: 1,
            col: 1,
            message: "empty predicate".into(),
        });
    }
    let mut parser = Parser { tokens, pos: 0 };
    let ast = parser.formula()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error_here("trailing input after predicate".into()));
    }
    Ok(ast)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicate::ast::{PredicateAst as P, Rel, Term};

    #[test]
    fn parses_exists() {
        let ast = parse("E d (0 < d & d < n & d + n < 20)").unwrap();
        match ast {
            P::Exists(v, _) => assert_eq!(v, "d"),
            other => panic!("expected Exists, got {other:?}"),
        }
    }

    #[test]
    fn parses_seq_cmp() {
        let ast = parse("t[i] = t[j]").unwrap();
        assert_eq!(
            ast,
            P::SeqIndexCmp(Rel::Eq, "t".into(), Term::var("i"), "t".into(), Term::var("j"))
        );
    }

    #[test]
    fn parses_forall_implication() {
        let ast = parse("A j (j > i => t[j] = 0)").unwrap();
        match ast {
            P::ForAll(v, body) => {
                assert_eq!(v, "j");
                assert!(matches!(*body, P::Implies(..)));
            }
            other => panic!("expected ForAll, got {other:?}"),
        }
    }

    #[test]
    fn letter_constants() {
        assert_eq!(
            parse("t[i] = 1").unwrap(),
            P::SeqIndexEq("t".into(), Term::var("i"), 1)
        );
        assert_eq!(
            parse("t[i] != 1").unwrap(),
            P::SeqIndexEq("t".into(), Term::var("i"), 1).not()
        );
        assert!(parse("t[i] < 1").is_err());
    }

    #[test]
    fn multi_binder_quantifier() {
        let ast = parse("E u v (u + v = 5)").unwrap();
        match ast {
            P::Exists(u, body) => {
                assert_eq!(u, "u");
                assert!(matches!(*body, P::Exists(..)));
            }
            other => panic!("expected Exists, got {other:?}"),
        }
    }

    #[test]
    fn chained_comparison_is_rejected() {
        let err = parse("a < b < c").unwrap_err();
        assert!(err.to_string().contains("pairwise"));
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse("a <\n ?") {
            Err(crate::Error::Syntax { line, col, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(col, 2);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn letters_are_not_arithmetic() {
        assert!(parse("t[i] + 1 = 2").is_err());
        assert!(parse("1 + t[i] = 2").is_err());
    }

    #[test]
    fn trailing_tokens_error() {
        assert!(parse("a = b b").is_err());
    }
}
