use std::collections::HashSet;

use super::ast::*;
use super::lexer::{tokenize, Pos, Tok};
use crate::error::{Error, Result};

pub struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: tokenize(src)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.pos().error(format!("expected {}, found {}", t.describe(), self.peek().describe())))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.bump() {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => Err(p.error(format!("expected a name, found {}", t.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            t => Err(self.pos().error(format!("expected `{kw}`, found {}", t.describe()))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            return Ok(Expr::bin(BinOp::Caret, base, self.power()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            (Tok::Num(n), _) => Ok(Expr::Num(n)),
            (Tok::Ident(s), p) => Ok(Expr::Name(s, p)),
            (Tok::LParen, _) => {
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            (t, p) => Err(p.error(format!("expected an expression, found {}", t.describe()))),
        }
    }

    fn expr_list(&mut self) -> Result<Vec<Expr>> {
        let mut v = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            v.push(self.expr()?);
        }
        self.expect(&Tok::Semi)?;
        Ok(v)
    }

    fn name_list(&mut self) -> Result<Vec<String>> {
        let mut v = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            v.push(self.ident()?.0);
            self.eat(&Tok::Comma);
        }
        self.expect(&Tok::Semi)?;
        Ok(v)
    }

    fn assignments(&mut self) -> Result<Vec<(String, Expr)>> {
        let mut v = Vec::new();
        loop {
            let (name, _) = self.ident()?;
            self.expect(&Tok::Eq)?;
            v.push((name, self.expr()?));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::Semi)?;
        Ok(v)
    }

    fn space(&mut self) -> Result<SpaceDecl> {
        let name = self.ident()?.0;
        self.expect(&Tok::LBrace)?;
        let mut d = SpaceDecl { name, vars: vec![], eqs: vec![], nzd: None };
        while !self.eat(&Tok::RBrace) {
            let (kw, p) = self.ident()?;
            match kw.as_str() {
                "vars" => d.vars.extend(self.name_list()?),
                "eq" => d.eqs.extend(self.expr_list()?),
                "nzd" => {
                    d.nzd = Some(self.expr()?);
                    self.expect(&Tok::Semi)?;
                }
                _ => return Err(p.error(format!("unknown space clause `{kw}`"))),
            }
        }
        Ok(d)
    }

    fn chart(&mut self) -> Result<ChartDecl> {
        let name = self.ident()?.0;
        self.keyword("from")?;
        let parent = self.ident()?.0;
        self.expect(&Tok::LBrace)?;
        let mut d = ChartDecl { name, parent, vars: vec![], eqs: vec![], map: vec![], exceptional: vec![] };
        while !self.eat(&Tok::RBrace) {
            let (kw, p) = self.ident()?;
            match kw.as_str() {
                "vars" => d.vars.extend(self.name_list()?),
                "eq" => d.eqs.extend(self.expr_list()?),
                "map" => d.map.extend(self.assignments()?),
                "exceptional" => d.exceptional.extend(self.expr_list()?),
                _ => return Err(p.error(format!("unknown chart clause `{kw}`"))),
            }
        }
        Ok(d)
    }

    fn decl(&mut self) -> Result<Decl> {
        let (kw, p) = self.ident()?;
        Ok(match kw.as_str() {
            "space" => Decl::Space(self.space()?),
            "form" => {
                let name = self.ident()?.0;
                self.keyword("on")?;
                let space = self.ident()?.0;
                self.expect(&Tok::Eq)?;
                let expr = self.expr()?;
                self.expect(&Tok::Semi)?;
                Decl::Form(FormDecl { name, space, expr })
            }
            "chart" => Decl::Chart(self.chart()?),
            "resolution" => {
                let name = self.ident()?.0;
                self.keyword("of")?;
                let space = self.ident()?.0;
                self.expect(&Tok::LBrace)?;
                self.keyword("charts")?;
                let charts = self.name_list()?;
                self.expect(&Tok::RBrace)?;
                Decl::Resolution(ResolutionDecl { name, space, charts })
            }
            "relation" => {
                let name = self.ident()?.0;
                self.keyword("for")?;
                let form = self.ident()?.0;
                self.keyword("in")?;
                let (sym, sp) = self.ident()?;
                let degree = sym
                    .strip_prefix("Sym")
                    .and_then(|d| d.parse::<u32>().ok())
                    .filter(|&d| d > 0)
                    .ok_or_else(|| sp.error(format!("expected `Sym<m>` with m > 0, found `{sym}`")))?;
                self.expect(&Tok::LBrace)?;
                let lhs = self.expr()?;
                let expr = if self.eat(&Tok::Eq) {
                    let rhs = self.expr()?;
                    if matches!(&rhs, Expr::Num(n) if n == &0.into()) {
                        lhs
                    } else {
                        Expr::bin(BinOp::Sub, lhs, rhs)
                    }
                } else {
                    lhs
                };
                self.expect(&Tok::Semi)?;
                self.expect(&Tok::RBrace)?;
                Decl::Relation(RelationDecl { name, form, degree, expr })
            }
            "map" => {
                let name = self.ident()?.0;
                self.keyword("from")?;
                let source = self.ident()?.0;
                self.keyword("to")?;
                let target = self.ident()?.0;
                self.expect(&Tok::LBrace)?;
                let images = self.assignments()?;
                self.expect(&Tok::RBrace)?;
                Decl::Map(MapDecl { name, source, target, images })
            }
            "graph" => {
                let name = self.ident()?.0;
                self.keyword("of")?;
                let space = self.ident()?.0;
                self.expect(&Tok::LBrace)?;
                let mut fiber = None;
                if self.at_keyword("fiber") {
                    self.bump();
                    let f = self.ident()?.0;
                    fiber = (f != "auto").then_some(f);
                    self.expect(&Tok::Semi)?;
                }
                self.expect(&Tok::RBrace)?;
                Decl::Graph(GraphDecl { name, space, fiber })
            }
            _ => return Err(p.error(format!("unknown declaration `{kw}`"))),
        })
    }

    fn at_end(&self) -> bool {
        *self.peek() == Tok::Eof
    }
}

/// Parses a whole session, checking that names are unique per kind.
pub fn parse_session(src: &str) -> Result<SessionFile> {
    let mut p = Parser::new(src)?;
    let mut decls = Vec::new();
    let mut seen: HashSet<(&'static str, String)> = HashSet::new();
    while !p.at_end() {
        let pos = p.pos();
        let d = p.decl()?;
        let key = (kind_class(d.kind()), d.name().to_string());
        if !seen.insert(key) {
            return Err(Error::Parse {
                line: pos.line,
                col: pos.col,
                msg: format!("duplicate {} `{}`", d.kind(), d.name()),
            });
        }
        decls.push(d);
    }
    Ok(SessionFile { decls })
}

/// Spaces and charts share a namespace since charts are spaces too.
fn kind_class(kind: &'static str) -> &'static str {
    if kind == "chart" {
        "space"
    } else {
        kind
    }
}

/// Parses a single expression filling the whole input.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.pos().error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(e)
}
