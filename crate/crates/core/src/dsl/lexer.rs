use super::diag::Diagnostic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    /// `(x)`, the tensor-slot separator.
    Tensor,
    /// `|>` and `<|`.
    Act(&'static str),
    Punct(char),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Tensor => "`(x)`".into(),
            Tok::Act(s) => format!("`{s}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut line, &mut col, 1);
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), span });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col, 1);
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse::<u64>()
                .map_err(|_| Diagnostic::new(span.line, span.col, format!("integer literal `{s}` too large")))?;
            out.push(Token { tok: Tok::Int(n), span });
        } else if c == '(' && chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') {
            advance(&mut i, &mut line, &mut col, 3);
            out.push(Token { tok: Tok::Tensor, span });
        } else if c == '|' && chars.get(i + 1) == Some(&'>') {
            advance(&mut i, &mut line, &mut col, 2);
            out.push(Token { tok: Tok::Act("|>"), span });
        } else if c == '<' && chars.get(i + 1) == Some(&'|') {
            advance(&mut i, &mut line, &mut col, 2);
            out.push(Token { tok: Tok::Act("<|"), span });
        } else if "{}[](),;:=+-*/^".contains(c) {
            advance(&mut i, &mut line, &mut col, 1);
            out.push(Token { tok: Tok::Punct(c), span });
        } else {
            return Err(Diagnostic::new(line, col, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::Eof, span: Span { line, col } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_and_comments() {
        let toks = lex("a (x) b # note\n(x[1])").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("a".into()),
                Tok::Tensor,
                Tok::Ident("b".into()),
                Tok::Punct('('),
                Tok::Ident("x".into()),
                Tok::Punct('['),
                Tok::Int(1),
                Tok::Punct(']'),
                Tok::Punct(')'),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn reports_position() {
        let err = lex("ab\n  $").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
    }
}
