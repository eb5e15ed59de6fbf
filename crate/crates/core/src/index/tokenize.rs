/// Words removed by [`tokenize`]. Fixed so every downstream number is reproducible.
pub const STOPWORDS: [&str; 30] = [
    "an", "and", "are", "as", "at", "be", "but", "by", "for", "if", "in", "into", "is", "it", "no",
    "not", "of", "on", "or", "that", "the", "their", "there", "these", "they", "this", "to", "was",
    "will", "with",
];

pub fn is_stopword(token: &str) -> bool {
    STOPWORDS.contains(&token)
}

/// Lowercases, splits on every non-alphanumeric character, and drops tokens
/// shorter than two characters and stopwords. No stemming.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2 && !is_stopword(t))
        .map(str::to_string)
        .collect()
}

/// Distinct tokens of a query, in order of first occurrence.
pub fn query_terms(text: &str) -> Vec<String> {
    let mut terms: Vec<String> = Vec::new();
    for token in tokenize(text) {
        if !terms.contains(&token) {
            terms.push(token);
        }
    }
    terms
}
