//! Recursive-descent parser for the formula syntax.
//!
//! Precedence, tightest first: `!`, `&`, `|`, `->`, `<->`. `&` and `|` are
//! left-associative, `->` is right-associative. `[a]` and `<a>` apply to the
//! immediately following atom, constant, negation or parenthesized formula.

use super::{Atom, CondAtom, Formula, InterventionSpec, Literal, Modality, PropFormula};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("unexpected {found} at offset {pos}, expected {expected}")]
    Unexpected { pos: usize, found: String, expected: &'static str },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("invalid atom {text:?} at offset {pos}")]
    BadAtom { pos: usize, text: String },
    #[error("antecedent at offset {pos} is not a conjunction of literals")]
    AntecedentNotIntervention { pos: usize },
    #[error("antecedent indices not strictly increasing at offset {pos}: X{prev} then X{next}")]
    AntecedentOrder { pos: usize, prev: u32, next: u32 },
    #[error("nested conditional at offset {pos}: consequents must be propositional")]
    NestedConditional { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(u32),
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Atom(i) => format!("`X{i}`"),
            Tok::Top => "`T`".into(),
            Tok::Bottom => "`F`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'X' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start + 1..i];
                match digits.parse::<u32>() {
                    Ok(n) if n >= 1 => Tok::Atom(n),
                    _ => return Err(FormulaError::BadAtom { pos: start, text: text[start..i].to_string() }),
                }
            }
            b'T' => {
                i += 1;
                Tok::Top
            }
            b'F' => {
                i += 1;
                Tok::Bottom
            }
            b'!' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'[' => {
                i += 1;
                Tok::LBracket
            }
            b']' => {
                i += 1;
                Tok::RBracket
            }
            b'>' => {
                i += 1;
                Tok::RAngle
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 3;
                Tok::Iff
            }
            b'<' => {
                i += 1;
                Tok::LAngle
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(FormulaError::UnexpectedChar { pos: i, ch });
            }
        };
        if matches!(tok, Tok::Top | Tok::Bottom) && bytes.get(i).is_some_and(|b| b.is_ascii_alphanumeric()) {
            return Err(FormulaError::UnexpectedChar { pos: i, ch: bytes[i] as char });
        }
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, FormulaError> {
        Ok(Parser { toks: lex(text)?, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &'static str) -> FormulaError {
        match self.toks.get(self.pos) {
            Some((pos, tok)) => FormulaError::Unexpected { pos: *pos, found: tok.describe(), expected },
            None => FormulaError::UnexpectedEnd { expected },
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), FormulaError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn finish(&self) -> Result<(), FormulaError> {
        if self.pos < self.toks.len() {
            Err(self.unexpected("end of input"))
        } else {
            Ok(())
        }
    }

    // `prop` is true inside a consequent, where conditionals are forbidden.
    fn iff(&mut self, prop: bool) -> Result<Formula, FormulaError> {
        let mut lhs = self.implication(prop)?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implication(prop)?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self, prop: bool) -> Result<Formula, FormulaError> {
        let lhs = self.disjunction(prop)?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication(prop)?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self, prop: bool) -> Result<Formula, FormulaError> {
        let mut lhs = self.conjunction(prop)?;
        while self.eat(&Tok::Or) {
            lhs = lhs.or(self.conjunction(prop)?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self, prop: bool) -> Result<Formula, FormulaError> {
        let mut lhs = self.unary(prop)?;
        while self.eat(&Tok::And) {
            lhs = lhs.and(self.unary(prop)?);
        }
        Ok(lhs)
    }

    fn unary(&mut self, prop: bool) -> Result<Formula, FormulaError> {
        let start = self.offset();
        match self.bump() {
            Some(Tok::Not) => Ok(self.unary(prop)?.not()),
            Some(Tok::Atom(i)) => Ok(Formula::Atom(Atom::new(i))),
            Some(Tok::Top) => Ok(Formula::Top),
            Some(Tok::Bottom) => Ok(Formula::Bottom),
            Some(Tok::LParen) => {
                let inner = self.iff(prop)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(open @ (Tok::LBracket | Tok::LAngle)) => {
                if prop {
                    return Err(FormulaError::NestedConditional { pos: start });
                }
                let (modality, close) = if open == Tok::LBracket {
                    (Modality::Box, Tok::RBracket)
                } else {
                    (Modality::Diamond, Tok::RAngle)
                };
                let antecedent = self.intervention(&close)?;
                self.expect(close, if modality == Modality::Box { "`]`" } else { "`>`" })?;
                let consequent = to_prop(self.unary(true)?);
                Ok(Formula::Cond(CondAtom { antecedent, consequent, modality }))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a formula"))
            }
        }
    }

    /// `T` or `&`-joined literals with strictly increasing indices.
    fn intervention(&mut self, close: &Tok) -> Result<InterventionSpec, FormulaError> {
        let start = self.offset();
        if self.eat(&Tok::Top) {
            self.check_intervention_end(close, start)?;
            return Ok(InterventionSpec::top());
        }
        let mut lits: Vec<Literal> = Vec::new();
        loop {
            let lit_pos = self.offset();
            let positive = !self.eat(&Tok::Not);
            let atom = match self.bump() {
                Some(Tok::Atom(i)) => Atom::new(i),
                Some(_) => return Err(FormulaError::AntecedentNotIntervention { pos: start }),
                None => return Err(FormulaError::UnexpectedEnd { expected: "a literal" }),
            };
            if let Some(prev) = lits.last() {
                if prev.atom >= atom {
                    return Err(FormulaError::AntecedentOrder {
                        pos: lit_pos,
                        prev: prev.atom.index(),
                        next: atom.index(),
                    });
                }
            }
            lits.push(Literal::new(atom, positive));
            if !self.eat(&Tok::And) {
                break;
            }
        }
        self.check_intervention_end(close, start)?;
        Ok(InterventionSpec::new(lits).expect("order checked while parsing"))
    }

    fn check_intervention_end(&self, close: &Tok, start: usize) -> Result<(), FormulaError> {
        match self.peek() {
            Some(t) if t == close => Ok(()),
            None => Err(FormulaError::UnexpectedEnd { expected: "end of antecedent" }),
            Some(_) => Err(FormulaError::AntecedentNotIntervention { pos: start }),
        }
    }
}

fn to_prop(f: Formula) -> PropFormula {
    match f {
        Formula::Atom(a) => PropFormula::Atom(a),
        Formula::Top => PropFormula::Top,
        Formula::Bottom => PropFormula::Bottom,
        Formula::Not(p) => to_prop(*p).not(),
        Formula::And(a, b) => to_prop(*a).and(to_prop(*b)),
        Formula::Or(a, b) => to_prop(*a).or(to_prop(*b)),
        Formula::Cond(_) => unreachable!("consequent parsing rejects conditionals"),
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let mut p = Parser::new(text)?;
    let f = p.iff(false)?;
    p.finish()?;
    Ok(f)
}

/// Parses a purely propositional formula; conditionals are rejected.
pub fn parse_prop(text: &str) -> Result<PropFormula, FormulaError> {
    let mut p = Parser::new(text)?;
    let f = p.iff(true)?;
    p.finish()?;
    Ok(to_prop(f))
}

/// Parses an intervention such as `X1 & !X3` or `T`. Blank input is `T`.
pub fn parse_intervention(text: &str) -> Result<InterventionSpec, FormulaError> {
    let mut p = Parser::new(text)?;
    if p.peek().is_none() {
        return Ok(InterventionSpec::top());
    }
    let start = p.offset();
    if p.eat(&Tok::Top) {
        p.finish()?;
        return Ok(InterventionSpec::top());
    }
    let mut lits = Vec::new();
    loop {
        let positive = !p.eat(&Tok::Not);
        match p.bump() {
            Some(Tok::Atom(i)) => lits.push(Literal::new(Atom::new(i), positive)),
            Some(_) => return Err(FormulaError::AntecedentNotIntervention { pos: start }),
            None => return Err(FormulaError::UnexpectedEnd { expected: "a literal" }),
        }
        if !p.eat(&Tok::And) {
            break;
        }
    }
    if p.peek().is_some() {
        return Err(FormulaError::AntecedentNotIntervention { pos: start });
    }
    InterventionSpec::new(lits).map_err(|e| FormulaError::AntecedentOrder { pos: start, prev: e.prev, next: e.next })
}
