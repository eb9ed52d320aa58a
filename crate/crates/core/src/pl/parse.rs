use super::{Condition, PLProgram, Source, Statement};
use crate::formula::Atom;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProgramError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("invalid variable {text:?} at offset {pos}")]
    BadVariable { pos: usize, text: String },
    #[error("unexpected {found} at offset {pos}, expected {expected}")]
    Unexpected { pos: usize, found: String, expected: &'static str },
    #[error("unexpected end of program, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(u32),
    Bit(bool),
    Assign,
    Eq,
    Neq,
    Not,
    And,
    Semi,
    Keyword(&'static str),
}

const KEYWORDS: [&str; 8] = ["if", "then", "else", "end", "choose", "or", "loop", "skip"];

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Var(i) => format!("`X{i}`"),
            Tok::Bit(b) => format!("`{}`", u8::from(*b)),
            Tok::Assign => "`:=`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Keyword(k) => format!("`{k}`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ProgramError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b':' if bytes.get(i + 1) == Some(&b'=') => {
                i += 2;
                Tok::Assign
            }
            b'!' if bytes.get(i + 1) == Some(&b'=') => {
                i += 2;
                Tok::Neq
            }
            b'!' => {
                i += 1;
                Tok::Not
            }
            b'=' => {
                i += 1;
                Tok::Eq
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b';' => {
                i += 1;
                Tok::Semi
            }
            b'0' | b'1' if !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric()) => {
                i += 1;
                Tok::Bit(c == b'1')
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                if let Some(k) = KEYWORDS.iter().find(|k| **k == word) {
                    Tok::Keyword(k)
                } else {
                    match word.strip_prefix('X').and_then(|d| d.parse::<u32>().ok()) {
                        Some(n) if n >= 1 && word[1..].bytes().all(|b| b.is_ascii_digit()) => Tok::Var(n),
                        _ => return Err(ProgramError::BadVariable { pos: start, text: word.to_string() }),
                    }
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ProgramError::UnexpectedChar { pos: i, ch });
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
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

    fn unexpected(&self, expected: &'static str) -> ProgramError {
        match self.toks.get(self.pos) {
            Some((pos, tok)) => ProgramError::Unexpected { pos: *pos, found: tok.describe(), expected },
            None => ProgramError::UnexpectedEnd { expected },
        }
    }

    fn keyword(&mut self, k: &'static str) -> Result<(), ProgramError> {
        if self.eat(&Tok::Keyword(k)) {
            Ok(())
        } else {
            Err(self.unexpected(k))
        }
    }

    fn var(&mut self) -> Result<Atom, ProgramError> {
        match self.peek() {
            Some(Tok::Var(i)) => {
                let a = Atom::new(*i);
                self.pos += 1;
                Ok(a)
            }
            _ => Err(self.unexpected("a variable")),
        }
    }

    fn sequence(&mut self) -> Result<Statement, ProgramError> {
        let mut items = vec![self.item()?];
        while self.eat(&Tok::Semi) {
            items.push(self.item()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Statement::Seq(items) })
    }

    fn item(&mut self) -> Result<Statement, ProgramError> {
        match self.peek() {
            None | Some(Tok::Semi) | Some(Tok::Keyword("else" | "end" | "or")) => Ok(Statement::Empty),
            Some(Tok::Keyword("skip")) => {
                self.pos += 1;
                Ok(Statement::Empty)
            }
            Some(Tok::Keyword("loop")) => {
                self.pos += 1;
                Ok(Statement::Loop)
            }
            Some(Tok::Keyword("if")) => {
                self.pos += 1;
                let cond = self.condition()?;
                self.keyword("then")?;
                let then_branch = self.sequence()?;
                self.keyword("else")?;
                let else_branch = self.sequence()?;
                self.keyword("end")?;
                Ok(Statement::if_else(cond, then_branch, else_branch))
            }
            Some(Tok::Keyword("choose")) => {
                self.pos += 1;
                let mut branches = vec![self.sequence()?];
                while self.eat(&Tok::Keyword("or")) {
                    branches.push(self.sequence()?);
                }
                self.keyword("end")?;
                Ok(Statement::choose(branches))
            }
            Some(Tok::Var(_)) => {
                let target = self.var()?;
                if !self.eat(&Tok::Assign) {
                    return Err(self.unexpected("`:=`"));
                }
                let source = match self.bump() {
                    Some(Tok::Bit(b)) => Source::Const(b),
                    Some(Tok::Var(i)) => Source::Var(Atom::new(i)),
                    Some(Tok::Not) => Source::NegVar(self.var()?),
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("`0`, `1`, a variable or `!`"));
                    }
                };
                Ok(Statement::Assign { target, source })
            }
            Some(_) => Err(self.unexpected("a statement")),
        }
    }

    fn condition(&mut self) -> Result<Condition, ProgramError> {
        let mut parts = vec![self.comparison()?];
        while self.eat(&Tok::And) {
            parts.push(self.comparison()?);
        }
        Ok(Condition::all(parts).expect("at least one comparison"))
    }

    fn comparison(&mut self) -> Result<Condition, ProgramError> {
        let lhs = self.var()?;
        if self.eat(&Tok::Eq) {
            match self.bump() {
                Some(Tok::Bit(b)) => Ok(Condition::VarEqConst(lhs, b)),
                Some(Tok::Var(i)) => Ok(Condition::VarEqVar(lhs, Atom::new(i))),
                _ => {
                    self.pos -= 1;
                    Err(self.unexpected("`0`, `1` or a variable"))
                }
            }
        } else if self.eat(&Tok::Neq) {
            Ok(Condition::VarNeqVar(lhs, self.var()?))
        } else {
            Err(self.unexpected("`=` or `!=`"))
        }
    }
}

pub fn parse_program(text: &str) -> Result<PLProgram, ProgramError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let body = p.sequence()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected("`;` or end of program"));
    }
    Ok(PLProgram::new(body))
}
