//! The textual rule language.
//!
//! ```text
//! rule   := "if" clause ("and" clause)* "->" clause ["weight" number]
//! clause := "(" ident "is" ["not"] ident ")"
//! ```
//!
//! `→` is accepted for `->`. Identifiers are `[A-Za-z_][A-Za-z0-9_]*` and
//! case-sensitive; `#` starts a comment.

mod lexer;
mod parser;

pub use lexer::{is_keyword, tokenize, Position, RuleToken, TokenKind};
pub use parser::{parse_rule, parse_rule_at, parse_rules_block, DslError, ParseError};

use crate::fuzzy::{Clause, RuleAst};

fn print_clause(out: &mut String, clause: &Clause) {
    out.push('(');
    out.push_str(&clause.variable);
    out.push_str(" is ");
    if clause.negated {
        out.push_str("not ");
    }
    out.push_str(&clause.set);
    out.push(')');
}

/// Canonical text of a rule: ASCII arrow, single spaces, and a weight clause
/// only when the weight is not 1. Weights print with the fewest digits that
/// parse back to the same value.
pub fn print_rule(rule: &RuleAst) -> String {
    let mut out = String::from("if ");
    for (i, clause) in rule.antecedent.iter().enumerate() {
        if i > 0 {
            out.push_str(" and ");
        }
        print_clause(&mut out, clause);
    }
    out.push_str(" -> ");
    print_clause(&mut out, &rule.consequent);
    if rule.weight != 1.0 {
        out.push_str(&format!(" weight {}", rule.weight));
    }
    out
}
