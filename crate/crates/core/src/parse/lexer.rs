use super::{ParseError, SourceSpan};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(u64),
    Colon,
    Dot,
    Arrow,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Semi,
    Star,
    Sort,
    Lvl,
    Eq,
    LZero,
    LSuc,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(n) => format!("numeral `{n}`"),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::Sort => "`Sort`".into(),
            Tok::Lvl => "`Lvl`".into(),
            Tok::Eq => "`Eq`".into(),
            Tok::LZero => "`lzero`".into(),
            Tok::LSuc => "`lsuc`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub start: usize,
    pub end: usize,
}

/// Byte offset to line/column conversion.
pub(crate) struct LineIndex {
    file: Option<Arc<str>>,
    starts: Vec<usize>,
    text_len: usize,
}

impl LineIndex {
    pub fn new(text: &str, file: Option<Arc<str>>) -> Self {
        let mut starts = vec![0];
        for (i, b) in text.bytes().enumerate() {
            if b == b'\n' {
                starts.push(i + 1);
            }
        }
        LineIndex {
            file,
            starts,
            text_len: text.len(),
        }
    }

    fn line_col(&self, text: &str, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.text_len);
        let line = match self.starts.binary_search(&offset) {
            Ok(l) => l,
            Err(l) => l - 1,
        };
        let col = text[self.starts[line]..offset].chars().count();
        (line + 1, col + 1)
    }

    pub fn span(&self, text: &str, start: usize, end: usize) -> SourceSpan {
        let (start_line, start_col) = self.line_col(text, start);
        let (end_line, end_col) = self.line_col(text, end);
        SourceSpan {
            file: self.file.clone(),
            start,
            end,
            start_line,
            start_col,
            end_line,
            end_col,
        }
    }
}

pub(crate) fn lex(text: &str, index: &LineIndex) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'-' && bytes.get(i + 1) == Some(&b'-') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = match c {
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            b':' => single(&mut i, Tok::Colon),
            b'.' => single(&mut i, Tok::Dot),
            b'{' => single(&mut i, Tok::LBrace),
            b'}' => single(&mut i, Tok::RBrace),
            b'[' => single(&mut i, Tok::LBrack),
            b']' => single(&mut i, Tok::RBrack),
            b'(' => single(&mut i, Tok::LParen),
            b')' => single(&mut i, Tok::RParen),
            b';' => single(&mut i, Tok::Semi),
            b'*' => single(&mut i, Tok::Star),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<u64>().map_err(|_| {
                    ParseError::new(index.span(text, start, i), "numeral too large", vec![])
                })?;
                Tok::Num(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                match &text[start..i] {
                    "Sort" => Tok::Sort,
                    "Lvl" => Tok::Lvl,
                    "Eq" => Tok::Eq,
                    "lzero" => Tok::LZero,
                    "lsuc" => Tok::LSuc,
                    s => Tok::Ident(s.to_string()),
                }
            }
            _ => {
                let ch_len = text[i..].chars().next().map_or(1, char::len_utf8);
                let ch = &text[i..i + ch_len];
                return Err(ParseError::new(
                    index.span(text, i, i + ch_len),
                    format!("unexpected character `{ch}`"),
                    vec![],
                ));
            }
        };
        out.push(Token {
            tok,
            start,
            end: i,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        start: text.len(),
        end: text.len(),
    });
    Ok(out)
}

fn single(i: &mut usize, t: Tok) -> Tok {
    *i += 1;
    t
}

pub(crate) const KEYWORDS: &[&str] = &["Sort", "Lvl", "Eq", "lzero", "lsuc"];
