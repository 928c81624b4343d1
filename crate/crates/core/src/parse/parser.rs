use super::lexer::{lex, LineIndex, Tok, Token};
use super::{ParseError, SourceSpan, SurfaceDecl};
use crate::syntax::{Binder, Class, Name, Object};
use std::sync::Arc;

/// Concrete syntax tree. The same tree lowers to a class or an object
/// depending on the position it occurs in.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Ident(String),
    Num(u64),
    Bullet,
    Sort,
    Lvl,
    LZero,
    LSuc(Box<Expr>),
    Pi(String, Box<Expr>, Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    Lam(String, Box<Expr>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Eq(Box<Expr>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn children(&self) -> Vec<&Expr> {
        match &self.kind {
            ExprKind::Ident(_)
            | ExprKind::Num(_)
            | ExprKind::Bullet
            | ExprKind::Sort
            | ExprKind::Lvl
            | ExprKind::LZero => vec![],
            ExprKind::LSuc(e) => vec![e],
            ExprKind::Pi(_, a, b)
            | ExprKind::Arrow(a, b)
            | ExprKind::Lam(_, a, b)
            | ExprKind::App(a, b) => vec![a, b],
            ExprKind::Eq(a, b, c) => vec![a, b, c],
        }
    }
}

pub(crate) struct Parser<'t> {
    text: &'t str,
    index: LineIndex,
    toks: Vec<Token>,
    pos: usize,
}

impl<'t> Parser<'t> {
    pub fn new(text: &'t str, file: Option<&str>) -> Result<Self, ParseError> {
        let index = LineIndex::new(text, file.map(Arc::from));
        let toks = lex(text, &index)?;
        Ok(Parser {
            text,
            index,
            toks,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn span(&self, start: usize, end: usize) -> SourceSpan {
        self.index.span(self.text, start, end)
    }

    fn error_here(&self, expected: &[&str]) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::new(
            self.span(t.start, t.end),
            format!("unexpected {}", t.tok.describe()),
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.error_here(&[what]))
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.bump())),
            _ => Err(self.error_here(&["identifier"])),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error_here(&["end of input"]))
        }
    }

    pub fn decls(&mut self) -> Result<Vec<SurfaceDecl>, ParseError> {
        let mut out = Vec::new();
        while !self.at_eof() {
            let (name, first) = self.ident()?;
            self.expect(Tok::Colon, "`:`")?;
            let class_expr = self.expr()?;
            let dot = self.expect(Tok::Dot, "`.`")?;
            let class = lower_class(&class_expr, &mut Vec::new())?;
            out.push(SurfaceDecl {
                name,
                class,
                span: self.span(first.start, dot.end),
                expr: class_expr,
            });
        }
        Ok(out)
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let start = self.toks[self.pos].start;
        match self.peek() {
            Tok::LBrace | Tok::LBrack => {
                let is_pi = *self.peek() == Tok::LBrace;
                self.bump();
                let (x, _) = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let dom = self.expr()?;
                if is_pi {
                    self.expect(Tok::RBrace, "`}`")?;
                } else {
                    self.expect(Tok::RBrack, "`]`")?;
                }
                let body = self.expr()?;
                let span = self.span(start, body.span.end);
                let kind = if is_pi {
                    ExprKind::Pi(x, Box::new(dom), Box::new(body))
                } else {
                    ExprKind::Lam(x, Box::new(dom), Box::new(body))
                };
                Ok(Expr { kind, span })
            }
            _ => {
                let lhs = self.application()?;
                if *self.peek() == Tok::Arrow {
                    self.bump();
                    let rhs = self.expr()?;
                    let span = self.span(start, rhs.span.end);
                    Ok(Expr {
                        kind: ExprKind::Arrow(Box::new(lhs), Box::new(rhs)),
                        span,
                    })
                } else {
                    Ok(lhs)
                }
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::Num(_)
                | Tok::Star
                | Tok::Sort
                | Tok::Lvl
                | Tok::LZero
                | Tok::Eq
                | Tok::LParen
        )
    }

    fn application(&mut self) -> Result<Expr, ParseError> {
        let start = self.toks[self.pos].start;
        let mut head = if *self.peek() == Tok::LSuc {
            self.bump();
            let arg = self.atom()?;
            Expr {
                span: self.span(start, arg.span.end),
                kind: ExprKind::LSuc(Box::new(arg)),
            }
        } else {
            self.atom()?
        };
        while self.starts_atom() {
            let arg = self.atom()?;
            head = Expr {
                span: self.span(start, arg.span.end),
                kind: ExprKind::App(Box::new(head), Box::new(arg)),
            };
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.toks[self.pos].clone();
        let simple = |kind| Expr {
            kind,
            span: self.span(t.start, t.end),
        };
        let e = match &t.tok {
            Tok::Ident(s) => simple(ExprKind::Ident(s.clone())),
            Tok::Num(n) => simple(ExprKind::Num(*n)),
            Tok::Star => simple(ExprKind::Bullet),
            Tok::Sort => simple(ExprKind::Sort),
            Tok::Lvl => simple(ExprKind::Lvl),
            Tok::LZero => simple(ExprKind::LZero),
            Tok::Eq => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let s = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                let a = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                let b = self.expr()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                return Ok(Expr {
                    kind: ExprKind::Eq(Box::new(s), Box::new(a), Box::new(b)),
                    span: self.span(t.start, close.end),
                });
            }
            Tok::LParen => {
                self.bump();
                let mut inner = self.expr()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                inner.span = self.span(t.start, close.end);
                return Ok(inner);
            }
            _ => {
                return Err(self.error_here(&[
                    "identifier", "numeral", "`*`", "`Sort`", "`Lvl`", "`lzero`", "`Eq`", "`(`",
                ]))
            }
        };
        self.bump();
        Ok(e)
    }
}

/// Bound names in scope, innermost last. `None` is an anonymous arrow binder.
type Scope = Vec<Option<String>>;

fn resolve(name: &str, scope: &Scope) -> Object {
    for (depth, b) in scope.iter().rev().enumerate() {
        if b.as_deref() == Some(name) {
            return Object::Bound(depth as u32);
        }
    }
    Object::Var(Name::new(name))
}

pub(crate) fn lower_class(e: &Expr, scope: &mut Scope) -> Result<Class, ParseError> {
    match &e.kind {
        ExprKind::Sort => Ok(Class::Sort),
        ExprKind::Pi(x, d, b) => {
            let dom = lower_class(d, scope)?;
            scope.push(Some(x.clone()));
            let body = lower_class(b, scope);
            scope.pop();
            Ok(Class::Pi(Arc::new(dom), Binder::new(x), Arc::new(body?)))
        }
        ExprKind::Arrow(d, b) => {
            let dom = lower_class(d, scope)?;
            scope.push(None);
            let body = lower_class(b, scope);
            scope.pop();
            Ok(Class::Pi(Arc::new(dom), Binder::new("_"), Arc::new(body?)))
        }
        ExprKind::Eq(s, a, b) => Ok(Class::Eq(
            Arc::new(lower_class(s, scope)?),
            Arc::new(lower_object(a, scope)?),
            Arc::new(lower_object(b, scope)?),
        )),
        _ => Ok(Class::incl(lower_object(e, scope)?)),
    }
}

pub(crate) fn lower_object(e: &Expr, scope: &mut Scope) -> Result<Object, ParseError> {
    match &e.kind {
        ExprKind::Ident(s) => Ok(resolve(s, scope)),
        ExprKind::Num(n) => Ok(crate::eval_t::numeral(*n)),
        ExprKind::Bullet => Ok(Object::Bullet),
        ExprKind::Lvl => Ok(Object::Lvl),
        ExprKind::LZero => Ok(Object::LZero),
        ExprKind::LSuc(a) => Ok(Object::lsuc(lower_object(a, scope)?)),
        ExprKind::App(f, a) => Ok(Object::app(
            lower_object(f, scope)?,
            lower_object(a, scope)?,
        )),
        ExprKind::Lam(x, d, b) | ExprKind::Pi(x, d, b) => {
            let dom = lower_class(d, scope)?;
            scope.push(Some(x.clone()));
            let body = lower_object(b, scope);
            scope.pop();
            let (dom, body) = (Arc::new(dom), Arc::new(body?));
            Ok(match e.kind {
                ExprKind::Lam(..) => Object::Lam(dom, Binder::new(x), body),
                _ => Object::PiSort(dom, Binder::new(x), body),
            })
        }
        ExprKind::Arrow(d, b) => {
            let dom = lower_class(d, scope)?;
            scope.push(None);
            let body = lower_object(b, scope);
            scope.pop();
            Ok(Object::PiSort(Arc::new(dom), Binder::new("_"), Arc::new(body?)))
        }
        ExprKind::Sort => Err(ParseError::new(
            e.span.clone(),
            "`Sort` is a class and cannot be used as an object",
            vec!["object".into()],
        )),
        ExprKind::Eq(..) => Err(ParseError::new(
            e.span.clone(),
            "an equality class cannot be used as an object",
            vec!["object".into()],
        )),
    }
}
