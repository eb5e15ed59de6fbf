use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    If,
    And,
    Is,
    Not,
    Weight,
    Arrow,
    LParen,
    RParen,
    Identifier,
    Number,
    /// A character sequence that is not part of the language.
    Invalid,
    EndOfLine,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenKind::If => "'if'",
            TokenKind::And => "'and'",
            TokenKind::Is => "'is'",
            TokenKind::Not => "'not'",
            TokenKind::Weight => "'weight'",
            TokenKind::Arrow => "'->'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::Identifier => "identifier",
            TokenKind::Number => "number",
            TokenKind::Invalid => "invalid input",
            TokenKind::EndOfLine => "end of line",
        })
    }
}

/// 1-based line and column; columns count characters, not bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleToken {
    pub kind: TokenKind,
    pub lexeme: String,
    pub position: Position,
}

fn keyword(word: &str) -> Option<TokenKind> {
    Some(match word {
        "if" => TokenKind::If,
        "and" => TokenKind::And,
        "is" => TokenKind::Is,
        "not" => TokenKind::Not,
        "weight" => TokenKind::Weight,
        _ => return None,
    })
}

pub fn is_keyword(word: &str) -> bool {
    keyword(word).is_some()
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `source` into tokens, skipping whitespace and `#` comments. The
/// stream always ends with an [`TokenKind::EndOfLine`] token placed one column
/// past the last character of the final line.
pub fn tokenize(source: &str, first_line: usize) -> Vec<RuleToken> {
    let mut tokens = Vec::new();
    let mut line = first_line;
    let mut column = 1;
    let mut chars = source.chars().peekable();

    while let Some(&c) = chars.peek() {
        let position = Position { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
                column += 1;
            }
            continue;
        }

        let mut lexeme = String::new();
        let kind = if is_ident_start(c) {
            while let Some(&c) = chars.peek().filter(|c| is_ident_continue(**c)) {
                lexeme.push(c);
                chars.next();
            }
            keyword(&lexeme).unwrap_or(TokenKind::Identifier)
        } else if c.is_ascii_digit() {
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                lexeme.push(c);
                chars.next();
            }
            if chars.peek() == Some(&'.') {
                lexeme.push('.');
                chars.next();
                let mut fraction = false;
                while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    lexeme.push(c);
                    chars.next();
                    fraction = true;
                }
                if fraction {
                    TokenKind::Number
                } else {
                    TokenKind::Invalid
                }
            } else {
                TokenKind::Number
            }
        } else {
            chars.next();
            lexeme.push(c);
            match c {
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '→' => TokenKind::Arrow,
                '-' if chars.peek() == Some(&'>') => {
                    chars.next();
                    lexeme.push('>');
                    TokenKind::Arrow
                }
                _ => TokenKind::Invalid,
            }
        };
        column += lexeme.chars().count();
        tokens.push(RuleToken {
            kind,
            lexeme,
            position,
        });
    }
    tokens.push(RuleToken {
        kind: TokenKind::EndOfLine,
        lexeme: String::new(),
        position: Position { line, column },
    });
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src, 1).into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lexes_a_full_rule() {
        use TokenKind::*;
        assert_eq!(
            kinds("if (tf_1 is not high) -> (relevance is high) weight 0.25"),
            vec![
                If, LParen, Identifier, Is, Not, Identifier, RParen, Arrow, LParen, Identifier, Is,
                Identifier, RParen, Weight, Number, EndOfLine
            ]
        );
    }

    #[test]
    fn unicode_arrow_counts_as_one_column() {
        let toks = tokenize("(a is b) → (c", 1);
        let arrow = &toks[5];
        assert_eq!(arrow.kind, TokenKind::Arrow);
        assert_eq!(arrow.position.column, 10);
        assert_eq!(toks[6].position.column, 12);
    }

    #[test]
    fn positions_increase_within_a_line() {
        let toks = tokenize("if (overlap is high) -> (relevance is high)", 3);
        assert!(toks.iter().all(|t| t.position.line == 3));
        assert!(toks
            .windows(2)
            .all(|w| w[0].position.column < w[1].position.column));
        assert_eq!(toks.last().unwrap().position.column, 44);
    }

    #[test]
    fn keywords_are_case_sensitive() {
        assert_eq!(kinds("If")[0], TokenKind::Identifier);
        assert_eq!(kinds("if")[0], TokenKind::If);
    }

    #[test]
    fn stray_characters_are_invalid_tokens() {
        assert_eq!(kinds("- $ 1.")[..3], [TokenKind::Invalid; 3]);
        assert_eq!(
            kinds("x # trailing comment"),
            vec![TokenKind::Identifier, TokenKind::EndOfLine]
        );
    }
}
