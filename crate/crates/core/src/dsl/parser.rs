use super::ast::*;
use super::diag::Diagnostic;
use super::lexer::{lex, Span, Tok, Token};

const KEYWORDS: &[&str] = &[
    "relation", "coproduct", "counit", "antipode", "expansion", "orthogonal", "map", "action", "coaction",
    "bracket", "dual",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let s = self.span();
        Err(Diagnostic::new(s.line, s.col, msg))
    }

    fn expect_punct(&mut self, c: char) -> PResult<Span> {
        if *self.peek() == Tok::Punct(c) {
            Ok(self.bump().span)
        } else {
            self.err(format!("expected `{c}`, found {}", self.peek().describe()))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().span;
                Ok((s, sp))
            }
            other => self.err(format!("expected identifier, found {}", other.describe())),
        }
    }

    fn small_int(&mut self, what: &str) -> PResult<u8> {
        match *self.peek() {
            Tok::Int(n) if (1..=255).contains(&n) => {
                self.bump();
                Ok(n as u8)
            }
            _ => self.err(format!("expected positive {what}, found {}", self.peek().describe())),
        }
    }

    fn file(&mut self) -> PResult<Vec<Decl>> {
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(decls)
    }

    fn decl(&mut self) -> PResult<Decl> {
        let (kw, span) = self.ident()?;
        let kind = match kw.as_str() {
            "presentation" => DeclKind::Presentation,
            "elements" => DeclKind::Elements,
            "bicross" => DeclKind::Bicross,
            "comodule" => DeclKind::Comodule,
            "lie" => DeclKind::Lie,
            _ => {
                return Err(Diagnostic::new(
                    span.line,
                    span.col,
                    format!("expected a declaration (presentation, elements, bicross, comodule, lie), found `{kw}`"),
                ))
            }
        };
        let (name, _) = self.ident()?;
        let mut over = None;
        if kind == DeclKind::Elements {
            let (kw, sp) = self.ident()?;
            if kw != "over" {
                return Err(Diagnostic::new(sp.line, sp.col, "expected `over PRESENTATION`"));
            }
            over = Some(self.ident()?);
        }
        self.expect_punct('{')?;
        let mut sections = Vec::new();
        while *self.peek() != Tok::Punct('}') {
            if *self.peek() == Tok::Eof {
                return self.err(format!("unterminated declaration `{name}`"));
            }
            let sp = self.span();
            sections.push((self.section(kind)?, sp));
        }
        self.bump();
        Ok(Decl { kind, name, over, sections, span })
    }

    fn ident_list(&mut self) -> PResult<Vec<(String, Span)>> {
        let mut out = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            out.push(self.ident()?);
        }
        self.expect_punct(';')?;
        Ok(out)
    }

    fn genref(&mut self) -> PResult<GenRef> {
        let (name, span) = self.ident()?;
        let indices = if *self.peek() == Tok::Punct('[') { self.index_list()? } else { Vec::new() };
        Ok(GenRef { name, indices, span })
    }

    fn index_list(&mut self) -> PResult<Vec<Index>> {
        self.expect_punct('[')?;
        let mut out = vec![self.index()?];
        while self.eat_punct(',') {
            out.push(self.index()?);
        }
        self.expect_punct(']')?;
        Ok(out)
    }

    fn index(&mut self) -> PResult<Index> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Index::Var(s))
            }
            Tok::Int(_) => Ok(Index::Lit(self.small_int("index")?)),
            other => self.err(format!("expected index, found {}", other.describe())),
        }
    }

    fn section(&mut self, kind: DeclKind) -> PResult<Section> {
        let (word, span) = self.ident()?;
        if self.eat_punct(':') {
            return match word.as_str() {
                "params" => Ok(Section::Params(self.ident_list()?)),
                "order" => Ok(Section::Order(self.ident_list()?)),
                "generators" => self.generators(),
                _ => Ok(Section::Setting(word, self.ident_list()?, span)),
            };
        }
        if kind == DeclKind::Elements || !KEYWORDS.contains(&word.as_str()) {
            if kind != DeclKind::Elements {
                return Err(Diagnostic::new(span.line, span.col, format!("unknown section `{word}`")));
            }
            self.expect_punct('=')?;
            let e = self.expr()?;
            self.expect_punct(';')?;
            return Ok(Section::Item(word, e, span));
        }
        let sec = match word.as_str() {
            "relation" => {
                let l = self.expr()?;
                self.expect_punct('=')?;
                let r = self.expr()?;
                Section::Relation(l, r)
            }
            "orthogonal" => {
                let (n, sp) = self.ident()?;
                Section::Orthogonal(n, sp)
            }
            "action" => {
                let a = self.genref()?;
                let op = match self.peek() {
                    Tok::Act(op) => *op,
                    other => return self.err(format!("expected `|>` or `<|`, found {}", other.describe())),
                };
                self.bump();
                let b = self.genref()?;
                self.expect_punct('=')?;
                Section::Action(a, op, b, self.expr()?)
            }
            "bracket" => {
                let a = self.genref()?;
                self.expect_punct(',')?;
                let b = self.genref()?;
                self.expect_punct('=')?;
                Section::Bracket(a, b, self.expr()?)
            }
            "dual" => {
                let g = self.genref()?;
                self.expect_punct('=')?;
                let (n, sp) = self.ident()?;
                Section::Dual(g, n, sp)
            }
            _ => {
                let g = self.genref()?;
                self.expect_punct('=')?;
                let e = self.expr()?;
                match word.as_str() {
                    "coproduct" => Section::Coproduct(g, e),
                    "counit" => Section::Counit(g, e),
                    "antipode" => Section::Antipode(g, e),
                    "expansion" => Section::Expansion(g, e),
                    "map" => Section::Map(g, e),
                    _ => Section::Coaction(g, e),
                }
            }
        };
        self.expect_punct(';')?;
        Ok(sec)
    }

    fn generators(&mut self) -> PResult<Section> {
        let mut fams = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            let (name, span) = self.ident()?;
            let mut dims = Vec::new();
            if self.eat_punct('[') {
                dims.push(self.small_int("dimension")?);
                while self.eat_punct(',') {
                    dims.push(self.small_int("dimension")?);
                }
                self.expect_punct(']')?;
            }
            let mut grouplike = false;
            if let Tok::Ident(w) = self.peek() {
                if w == "grouplike" {
                    self.bump();
                    grouplike = true;
                }
            }
            fams.push(FamilyDecl { name, dims, grouplike, span });
        }
        self.expect_punct(';')?;
        Ok(Section::Generators(fams))
    }

    pub fn expr(&mut self) -> PResult<Expr> {
        let span = self.span();
        let mut terms = vec![self.tens()?];
        loop {
            if self.eat_punct('+') {
                terms.push(self.tens()?);
            } else if *self.peek() == Tok::Punct('-') {
                let sp = self.bump().span;
                let t = self.tens()?;
                terms.push(Expr::new(ExprKind::Neg(Box::new(t)), sp));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::new(ExprKind::Sum(terms), span) })
    }

    fn tens(&mut self) -> PResult<Expr> {
        let span = self.span();
        let mut parts = vec![self.prod()?];
        while *self.peek() == Tok::Tensor {
            self.bump();
            parts.push(self.prod()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::new(ExprKind::Tensor(parts), span) })
    }

    fn prod(&mut self) -> PResult<Expr> {
        let mut acc = self.unary()?;
        loop {
            let span = self.span();
            if self.eat_punct('*') {
                let r = self.unary()?;
                acc = Expr::new(ExprKind::Mul(Box::new(acc), Box::new(r)), span);
            } else if self.eat_punct('/') {
                let r = self.unary()?;
                acc = Expr::new(ExprKind::Div(Box::new(acc), Box::new(r)), span);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Punct('-') {
            let span = self.bump().span;
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Punct('^') {
            return Ok(base);
        }
        let span = self.bump().span;
        let neg = self.eat_punct('-');
        let n = match *self.peek() {
            Tok::Int(n) if n <= i32::MAX as u64 => {
                self.bump();
                n as i32
            }
            _ => return self.err(format!("expected integer exponent, found {}", self.peek().describe())),
        };
        Ok(Expr::new(ExprKind::Pow(Box::new(base), if neg { -n } else { n }), span))
    }

    fn atom(&mut self) -> PResult<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::new(ExprKind::Int(n), span))
            }
            Tok::Punct('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(')')?;
                Ok(Expr::new(ExprKind::Group(Box::new(inner)), span))
            }
            Tok::Punct('[') => {
                self.bump();
                let a = self.expr()?;
                self.expect_punct(',')?;
                let b = self.expr()?;
                self.expect_punct(']')?;
                Ok(Expr::new(ExprKind::Bracket(Box::new(a), Box::new(b)), span))
            }
            Tok::Ident(name) if (name == "eps" || name == "delta") && *self.peek_at(1) == Tok::Punct('(') => {
                self.bump();
                self.bump();
                let mut idx = vec![self.index()?];
                while self.eat_punct(',') {
                    idx.push(self.index()?);
                }
                self.expect_punct(')')?;
                let want = if name == "eps" { 3 } else { 2 };
                if idx.len() != want {
                    return Err(Diagnostic::new(
                        span.line,
                        span.col,
                        format!("`{name}` takes {want} indices, got {}", idx.len()),
                    ));
                }
                Ok(Expr::new(if name == "eps" { ExprKind::Eps(idx) } else { ExprKind::Delta(idx) }, span))
            }
            Tok::Ident(name) => {
                self.bump();
                let idx = if *self.peek() == Tok::Punct('[') { self.index_list()? } else { Vec::new() };
                Ok(Expr::new(ExprKind::Name(name, idx), span))
            }
            other => self.err(format!("expected expression, found {}", other.describe())),
        }
    }
}

pub fn parse_file(text: &str) -> Result<Vec<Decl>, Diagnostic> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.file()
}

/// Parses a standalone expression (for command-line and test use).
pub fn parse_expr(text: &str) -> Result<Expr, Diagnostic> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after expression", p.peek().describe()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("a*b (x) c + d").unwrap();
        let ExprKind::Sum(terms) = e.kind else { panic!() };
        assert!(matches!(terms[0].kind, ExprKind::Tensor(_)));
        let e = parse_expr("-E^-1").unwrap();
        let ExprKind::Neg(inner) = e.kind else { panic!() };
        assert!(matches!(inner.kind, ExprKind::Pow(_, -1)));
    }

    #[test]
    fn empty_body() {
        let d = parse_file("presentation empty { }").unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].sections.is_empty());
    }

    #[test]
    fn syntax_error_has_span() {
        let e = parse_file("presentation p {\n  relation a = ;\n}").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
