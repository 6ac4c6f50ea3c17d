use std::fmt;

/// A source position, 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    /// Single punctuation character, or `==`.
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(z) => write!(f, "`{z}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

/// A positioned parse failure with the tokens that would have been accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

const PUNCT: &[&str] = &["{", "}", "(", ")", "[", "]", ",", ".", ":", ";", "=", "#"];

pub fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };

    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };

    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut pos);
        } else if c == '/' {
            chars.next();
            advance(c, &mut pos);
            if chars.peek() != Some(&'/') {
                return Err(Diagnostic {
                    pos: start,
                    message: "unexpected character `/`".into(),
                    expected: vec!["`//` comment".into()],
                });
            }
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                advance(c, &mut pos);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                chars.next();
                advance(c, &mut pos);
            }
            out.push((Tok::Ident(s), start));
        } else if c.is_ascii_digit() || c == '-' {
            let mut s = String::new();
            s.push(c);
            chars.next();
            advance(c, &mut pos);
            while let Some(&c) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                chars.next();
                advance(c, &mut pos);
            }
            let z = s.parse::<i64>().map_err(|_| Diagnostic {
                pos: start,
                message: format!("invalid integer literal `{s}`"),
                expected: Vec::new(),
            })?;
            out.push((Tok::Int(z), start));
        } else if c == '=' {
            chars.next();
            advance(c, &mut pos);
            if chars.peek() == Some(&'=') {
                chars.next();
                advance('=', &mut pos);
                out.push((Tok::Punct("=="), start));
            } else {
                out.push((Tok::Punct("="), start));
            }
        } else if let Some(p) = PUNCT.iter().find(|p| p.starts_with(c)) {
            chars.next();
            advance(c, &mut pos);
            out.push((Tok::Punct(p), start));
        } else {
            return Err(Diagnostic {
                pos: start,
                message: format!("unexpected character {c:?}"),
                expected: Vec::new(),
            });
        }
    }
    out.push((Tok::Eof, pos));
    Ok(out)
}
