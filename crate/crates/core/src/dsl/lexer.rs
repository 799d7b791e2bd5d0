use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

impl Tok {
    pub(super) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(s) => format!("number {s}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eq => "'='".into(),
        }
    }
}

/// A token with its 1-based column.
#[derive(Clone, Debug)]
pub(super) struct Spanned {
    pub tok: Tok,
    pub col: usize,
}

/// Splits one line (comments already removed) into tokens. Identifiers may
/// contain `-` when it is followed by a letter, so `degree-offset` is one
/// word while `n-m` is three tokens.
pub(super) fn tokenize(line: &str, line_no: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let mut word: String = chars[start..i].iter().collect();
            if word == "degree" && chars.get(i) == Some(&'-') && chars.get(i + 1).is_some_and(|c| c.is_ascii_alphabetic()) {
                let rest = i + 1;
                let mut j = rest;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                word = format!("{word}-{}", chars[rest..j].iter().collect::<String>());
                i = j;
            }
            out.push(Spanned { tok: Tok::Ident(word), col });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Int(chars[start..i].iter().collect()), col });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            other => {
                return Err(Error::Parse { line: line_no, column: col, message: format!("unexpected character {other:?}") })
            }
        };
        out.push(Spanned { tok, col });
        i += 1;
    }
    Ok(out)
}
