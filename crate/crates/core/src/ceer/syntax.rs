//! S-expression syntax for [`CeerSpec`]:
//!
//! ```text
//! (id) (idn 3) (mod 5) (intervals 2 2 3) (uni {0,1,2}) (uni-ce 17)
//! (pairs 23) (cyl E) (join E F) (restrict E 12)
//! ```
//!
//! Whitespace (including newlines) separates tokens; `;` starts a comment
//! running to the end of the line.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::spec::{CeerSpec, SpecError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    LBrace,
    RBrace,
    Comma,
    Atom(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, SpecError> {
    let mut tokens = Vec::new();
    for (ln, line_text) in text.lines().enumerate() {
        let line = ln + 1;
        let mut chars = line_text.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            let column = line_text[..i].chars().count() + 1;
            let single = match c {
                '(' => Some(Tok::Open),
                ')' => Some(Tok::Close),
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                ',' => Some(Tok::Comma),
                _ => None,
            };
            if let Some(tok) = single {
                tokens.push(Token { tok, line, column });
                chars.next();
            } else if c == ';' {
                break;
            } else if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_alphanumeric() || c == '-' {
                let mut atom = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        atom.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token { tok: Tok::Atom(atom), line, column });
            } else {
                return Err(SpecError::Parse { line, column, message: format!("unexpected character {c:?}") });
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> SpecError {
        let (line, column) = self.tokens.get(pos).map_or(self.end, |t| (t.line, t.column));
        SpecError::Parse { line, column, message: message.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SpecError> {
        let at = self.pos;
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(_) => Err(self.error_at(at, format!("expected {what}"))),
            None => Err(self.error_at(at, format!("expected {what}, found end of input"))),
        }
    }

    fn natural(&mut self) -> Result<u64, SpecError> {
        let at = self.pos;
        match self.next() {
            Some(Tok::Atom(a)) => a.parse().map_err(|_| self.error_at(at, format!("expected a natural, found `{a}`"))),
            _ => Err(self.error_at(at, "expected a natural")),
        }
    }

    fn index(&mut self) -> Result<BigUint, SpecError> {
        let at = self.pos;
        match self.next() {
            Some(Tok::Atom(a)) if a.bytes().all(|b| b.is_ascii_digit()) => {
                Ok(a.parse().expect("decimal digits"))
            }
            _ => Err(self.error_at(at, "expected a program index")),
        }
    }

    fn set(&mut self) -> Result<BTreeSet<u64>, SpecError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut set = BTreeSet::new();
        if self.peek() == Some(&Tok::RBrace) {
            self.next();
            return Ok(set);
        }
        loop {
            set.insert(self.natural()?);
            let at = self.pos;
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBrace) => return Ok(set),
                _ => return Err(self.error_at(at, "expected `,` or `}`")),
            }
        }
    }

    fn expr(&mut self) -> Result<CeerSpec, SpecError> {
        self.expect(Tok::Open, "`(`")?;
        let head_at = self.pos;
        let head = match self.next() {
            Some(Tok::Atom(a)) => a,
            _ => return Err(self.error_at(head_at, "expected a combinator name")),
        };
        let spec = match head.as_str() {
            "id" => CeerSpec::IdOmega,
            "idn" => CeerSpec::IdN(self.natural()?),
            "mod" => CeerSpec::Mod(self.natural()?),
            "intervals" => {
                let mut sizes = Vec::new();
                while matches!(self.peek(), Some(Tok::Atom(_))) {
                    sizes.push(self.natural()?);
                }
                CeerSpec::Intervals(sizes)
            }
            "uni" => CeerSpec::Unidimensional(self.set()?),
            "uni-ce" => CeerSpec::UnidimensionalCe(self.index()?),
            "pairs" => CeerSpec::FromPairs(self.index()?),
            "cyl" => CeerSpec::Cylindrify(Box::new(self.expr()?)),
            "join" => {
                let l = self.expr()?;
                let r = self.expr()?;
                CeerSpec::UniformJoin(Box::new(l), Box::new(r))
            }
            "restrict" => {
                let inner = self.expr()?;
                CeerSpec::Restrict(Box::new(inner), self.index()?)
            }
            other => return Err(self.error_at(head_at, format!("unknown combinator `{other}`"))),
        };
        self.expect(Tok::Close, "`)`")?;
        Ok(spec)
    }
}

/// Parses and validates a spec document.
pub fn parse_spec(text: &str) -> Result<CeerSpec, SpecError> {
    let tokens = tokenize(text)?;
    let end = text
        .lines()
        .enumerate()
        .last()
        .map_or((1, 1), |(n, l)| (n + 1, l.chars().count() + 1));
    let mut parser = Parser { tokens, pos: 0, end };
    let spec = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error_at(parser.pos, "trailing input after spec"));
    }
    spec.validate().map_err(|e| match e {
        SpecError::Shape(m) => SpecError::Parse { line: 1, column: 1, message: m },
        other => other,
    })?;
    Ok(spec)
}
