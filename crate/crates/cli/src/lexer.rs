use crate::ast::Span;
use crate::diagnostic::Diagnostic;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Unsigned decimal literal as written (`3`, `0.25`, `1e-3`).
    Number(String),
    /// A number immediately followed by `i`.
    Imag(String),
    Str(String),
    Eq,
    Colon,
    Arrow,
    Comma,
    Semi,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Star,
    Plus,
    Minus,
    Slash,
    Meet,
    Join,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Imag(s) => format!("`{s}i`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Eq => "=",
            Tok::Colon => ":",
            Tok::Arrow => "->",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Star => "*",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Slash => "/",
            Tok::Meet => "/\\",
            Tok::Join => "\\/",
            _ => "?",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let span = Span { line, col };
        let ch = chars[i];
        let peek = chars.get(i + 1).copied();
        let mut advance = 1;
        let tok = match ch {
            '\n' => Some(Tok::Newline),
            c if c.is_whitespace() => None,
            '-' if peek == Some('-') => {
                while i + advance < chars.len() && chars[i + advance] != '\n' {
                    advance += 1;
                }
                None
            }
            '-' if peek == Some('>') => {
                advance = 2;
                Some(Tok::Arrow)
            }
            '/' if peek == Some('\\') => {
                advance = 2;
                Some(Tok::Meet)
            }
            '\\' if peek == Some('/') => {
                advance = 2;
                Some(Tok::Join)
            }
            '=' => Some(Tok::Eq),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '*' => Some(Tok::Star),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.get(i + advance) {
                        Some('"') => {
                            advance += 1;
                            break;
                        }
                        Some('\n') | None => {
                            return Err(Diagnostic::new(span, "unterminated string"));
                        }
                        Some(&c) => {
                            s.push(c);
                            advance += 1;
                        }
                    }
                }
                Some(Tok::Str(s))
            }
            c if c.is_ascii_digit() || (c == '.' && peek.is_some_and(|p| p.is_ascii_digit())) => {
                let start = i;
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '.' {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                    let mut k = j + 1;
                    if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let text: String = chars[start..j].iter().collect();
                let imaginary = chars.get(j) == Some(&'i')
                    && !chars.get(j + 1).is_some_and(|&c| is_ident_char(c));
                advance = j - i;
                if imaginary {
                    advance += 1;
                    Some(Tok::Imag(text))
                } else {
                    if chars.get(j).is_some_and(|&c| is_ident_char(c)) {
                        let pos = Span {
                            line,
                            col: col + (j - i),
                        };
                        return Err(Diagnostic::new(pos, "unexpected character after number"));
                    }
                    Some(Tok::Number(text))
                }
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                advance = j - i;
                Some(Tok::Ident(chars[i..j].iter().collect()))
            }
            other => {
                return Err(Diagnostic::new(
                    span,
                    format!("unexpected character `{other}`"),
                ));
            }
        };
        if let Some(tok) = tok {
            out.push(Token { tok, span });
        }
        for c in &chars[i..i + advance] {
            if *c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        i += advance;
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
    });
    Ok(out)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn complex_literals_and_comments() {
        assert_eq!(
            toks("0.1-0.2i -- note\n"),
            vec![
                Tok::Number("0.1".into()),
                Tok::Minus,
                Tok::Imag("0.2".into()),
                Tok::Newline,
                Tok::Eof
            ]
        );
        assert_eq!(toks("i"), vec![Tok::Ident("i".into()), Tok::Eof]);
        assert!(tokenize("2in").is_err());
    }

    #[test]
    fn operators_and_positions() {
        let t = tokenize("R /\\ S \\/ T -> X").unwrap();
        let kinds: Vec<_> = t.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[1], Tok::Meet);
        assert_eq!(kinds[3], Tok::Join);
        assert_eq!(kinds[5], Tok::Arrow);
        assert_eq!(t[5].span, Span { line: 1, col: 13 });
    }

    #[test]
    fn eof_position_after_trailing_space() {
        let t = tokenize("rel R : Q -> ").unwrap();
        assert_eq!(t.last().unwrap().span, Span { line: 1, col: 14 });
    }

    #[test]
    fn bad_characters_are_reported_with_position() {
        let e = tokenize("set X = atom 2\nset Y = @").unwrap_err();
        assert_eq!(e.span, Span { line: 2, col: 9 });
    }
}
