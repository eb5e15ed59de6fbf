use std::fmt;

use thiserror::Error;

use super::lexer::{tokenize, Position, RuleToken, TokenKind};
use crate::fuzzy::{Clause, RuleAst};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub message: String,
    pub position: Position,
    pub expected: Vec<TokenKind>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.position, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("{position}: rule weight {value} is outside (0, 1]")]
    WeightRange { value: f64, position: Position },
}

impl DslError {
    pub fn position(&self) -> Position {
        match self {
            DslError::Parse(e) => e.position,
            DslError::WeightRange { position, .. } => *position,
        }
    }
}

struct Parser {
    tokens: Vec<RuleToken>,
    next: usize,
}

impl Parser {
    fn peek(&self) -> &RuleToken {
        &self.tokens[self.next]
    }

    fn error(&self, expected: &[TokenKind]) -> DslError {
        let found = self.peek();
        let found_text = match found.kind {
            TokenKind::EndOfLine => "end of line".to_string(),
            _ => format!("'{}'", found.lexeme),
        };
        let alternatives = expected
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" or ");
        DslError::Parse(ParseError {
            message: format!("expected {alternatives} but found {found_text}"),
            position: found.position,
            expected: expected.to_vec(),
        })
    }

    fn expect(&mut self, kind: TokenKind) -> Result<RuleToken, DslError> {
        if self.peek().kind == kind {
            let token = self.tokens[self.next].clone();
            self.next += 1;
            Ok(token)
        } else {
            Err(self.error(&[kind]))
        }
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.peek().kind == kind {
            self.next += 1;
            true
        } else {
            false
        }
    }

    // clause := "(" ident "is" ["not"] ident ")"
    fn clause(&mut self) -> Result<Clause, DslError> {
        self.expect(TokenKind::LParen)?;
        let variable = self.expect(TokenKind::Identifier)?.lexeme;
        self.expect(TokenKind::Is)?;
        let negated = self.eat(TokenKind::Not);
        if self.peek().kind != TokenKind::Identifier {
            let expected: &[TokenKind] = if negated {
                &[TokenKind::Identifier]
            } else {
                &[TokenKind::Not, TokenKind::Identifier]
            };
            return Err(self.error(expected));
        }
        let set = self.expect(TokenKind::Identifier)?.lexeme;
        self.expect(TokenKind::RParen)?;
        Ok(Clause {
            variable,
            set,
            negated,
        })
    }

    // rule := "if" clause ("and" clause)* "->" clause ["weight" number]
    fn rule(&mut self) -> Result<RuleAst, DslError> {
        self.expect(TokenKind::If)?;
        let mut antecedent = vec![self.clause()?];
        loop {
            match self.peek().kind {
                TokenKind::And => {
                    self.next += 1;
                    antecedent.push(self.clause()?);
                }
                TokenKind::Arrow => {
                    self.next += 1;
                    break;
                }
                _ => return Err(self.error(&[TokenKind::And, TokenKind::Arrow])),
            }
        }
        let consequent = self.clause()?;
        let weight = match self.peek().kind {
            TokenKind::Weight => {
                self.next += 1;
                let number = self.expect(TokenKind::Number)?;
                let value: f64 = number
                    .lexeme
                    .parse()
                    .map_err(|_| self.error(&[TokenKind::Number]))?;
                if !RuleAst::weight_in_range(value) {
                    return Err(DslError::WeightRange {
                        value,
                        position: number.position,
                    });
                }
                value
            }
            TokenKind::EndOfLine => 1.0,
            _ => return Err(self.error(&[TokenKind::Weight, TokenKind::EndOfLine])),
        };
        self.expect(TokenKind::EndOfLine)?;
        Ok(RuleAst {
            antecedent,
            consequent,
            weight,
        })
    }
}

fn parse_tokens(tokens: Vec<RuleToken>) -> Result<RuleAst, DslError> {
    Parser { tokens, next: 0 }.rule()
}

/// Parses one rule, reporting positions on line 1.
///
/// ```
/// use frank_core::dsl::parse_rule;
/// let rule = parse_rule("if (overlap is high) → (relevance is high)").unwrap();
/// assert_eq!(rule.antecedent[0].variable, "overlap");
/// assert_eq!(rule.weight, 1.0);
/// ```
pub fn parse_rule(source: &str) -> Result<RuleAst, DslError> {
    parse_rule_at(source, 1)
}

/// Parses one rule whose first line is line `line` of some larger text.
pub fn parse_rule_at(source: &str, line: usize) -> Result<RuleAst, DslError> {
    parse_tokens(tokenize(source, line))
}

fn is_blank(line: &str) -> bool {
    let trimmed = line.trim();
    trimmed.is_empty() || trimmed.starts_with('#')
}

/// Parses a block with one rule per line. Blank and comment-only lines are
/// skipped; the first malformed line aborts the whole block.
pub fn parse_rules_block(source: &str) -> Result<Vec<RuleAst>, DslError> {
    source
        .lines()
        .enumerate()
        .filter(|(_, line)| !is_blank(line))
        .map(|(i, line)| parse_rule_at(line, i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(src: &str) -> ParseError {
        match parse_rule(src).unwrap_err() {
            DslError::Parse(e) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn single_clause_rule() {
        let rule = parse_rule("if (overlap is high) -> (relevance is high)").unwrap();
        assert_eq!(rule.antecedent, vec![Clause::is("overlap", "high")]);
        assert_eq!(rule.consequent, Clause::is("relevance", "high"));
        assert_eq!(rule.weight, 1.0);
    }

    #[test]
    fn negated_conjunction() {
        let rule =
            parse_rule("if (tf is not high) and (idf is not high) -> (relevance is not high)")
                .unwrap();
        assert_eq!(
            rule.antecedent,
            vec![Clause::is_not("tf", "high"), Clause::is_not("idf", "high")]
        );
        assert_eq!(rule.consequent, Clause::is_not("relevance", "high"));
    }

    #[test]
    fn explicit_weight() {
        let rule = parse_rule("if (tf is high) -> (relevance is high) weight 0.25").unwrap();
        assert_eq!(rule.weight, 0.25);
    }

    #[test]
    fn missing_parenthesis_is_reported_at_identifier() {
        let e = parse_err("if tf is high -> (relevance is high)");
        assert_eq!(e.position, Position { line: 1, column: 4 });
        assert_eq!(e.expected, vec![TokenKind::LParen]);
        assert!(e.message.contains("'tf'"), "{}", e.message);
        assert!(e.message.contains("'('"), "{}", e.message);
    }

    #[test]
    fn error_messages_name_found_and_expected() {
        let e = parse_err("if (tf is high)");
        assert_eq!(e.expected, vec![TokenKind::And, TokenKind::Arrow]);
        assert_eq!(e.message, "expected 'and' or '->' but found end of line");
        let e = parse_err("if (tf is high) -> (relevance is high) 0.5");
        assert_eq!(e.expected, vec![TokenKind::Weight, TokenKind::EndOfLine]);
        let e = parse_err("if (tf is $) -> (r is high)");
        assert_eq!(e.position.column, 11);
        assert!(e.message.contains("'$'"));
    }

    #[test]
    fn weight_range_is_checked() {
        for bad in ["0", "1.5", "0.0"] {
            let src = format!("if (a is b) -> (c is d) weight {bad}");
            assert!(matches!(
                parse_rule(&src),
                Err(DslError::WeightRange { .. })
            ));
        }
        assert!(parse_rule("if (a is b) -> (c is d) weight 1").is_ok());
        assert!(matches!(
            parse_rule("if (a is b) -> (c is d) weight -0.5"),
            Err(DslError::Parse(_))
        ));
    }

    #[test]
    fn blocks_skip_comments_and_track_lines() {
        assert_eq!(parse_rules_block("").unwrap(), vec![]);
        assert_eq!(
            parse_rules_block("# only\n\n   # comments\n").unwrap(),
            vec![]
        );
        let block = "# rules\nif (a is b) -> (c is d)\n\nif (a is not b) -> (c is not d) # tail\n";
        assert_eq!(parse_rules_block(block).unwrap().len(), 2);
        let err = parse_rules_block("if (a is b) -> (c is d)\n\nif (a b) -> (c is d)").unwrap_err();
        assert_eq!(err.position(), Position { line: 3, column: 7 });
    }
}
