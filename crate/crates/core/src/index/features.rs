use super::{IndexError, InvertedIndex};

#[derive(Debug, Clone, PartialEq)]
pub struct TermFeatures {
    pub token: String,
    pub tf_norm: f64,
    pub idf_norm: f64,
}

/// Ranking inputs for one (query, document) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryFeatures {
    /// One entry per distinct query token, in first-occurrence order.
    pub terms: Vec<TermFeatures>,
    /// Fraction of distinct query tokens present in the document.
    pub overlap: f64,
    pub matched_count: usize,
}

impl InvertedIndex {
    /// Per-term normalized tf/idf and the overlap fraction of `query_tokens`
    /// against one document. Repeated tokens count once.
    pub fn extract_features<S: AsRef<str>>(
        &self,
        query_tokens: &[S],
        ordinal: usize,
    ) -> Result<QueryFeatures, IndexError> {
        if ordinal >= self.total_docs() {
            return Err(IndexError::NoSuchDocument(ordinal));
        }
        let mut distinct: Vec<&str> = Vec::new();
        for t in query_tokens {
            if !distinct.contains(&t.as_ref()) {
                distinct.push(t.as_ref());
            }
        }
        if distinct.is_empty() {
            return Err(IndexError::EmptyQuery);
        }
        let terms: Vec<TermFeatures> = distinct
            .iter()
            .map(|&token| TermFeatures {
                token: token.to_string(),
                tf_norm: self.tf_norm(ordinal, token),
                idf_norm: self.idf_norm(token),
            })
            .collect();
        let matched_count = distinct
            .iter()
            .filter(|t| self.term_frequency(ordinal, t) > 0)
            .count();
        Ok(QueryFeatures {
            overlap: matched_count as f64 / distinct.len() as f64,
            matched_count,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::index::{build_index, Document, IndexError};

    #[test]
    fn overlap_counts_distinct_matches() {
        let index = build_index(vec![
            Document::new("a", "fuzzy ranking fuzzy"),
            Document::new("b", "boolean ranking"),
        ])
        .unwrap();
        let f = index
            .extract_features(&["fuzzy", "ranking", "model", "fuzzy"], 0)
            .unwrap();
        assert_eq!(f.terms.len(), 3);
        assert_eq!(f.matched_count, 2);
        assert_eq!(f.overlap, 2.0 / 3.0);
        assert_eq!(f.terms[2].tf_norm, 0.0);
        assert_eq!(f.terms[2].idf_norm, 0.0);
        // "fuzzy" is absent from b but still carries its corpus idf
        let g = index.extract_features(&["fuzzy", "ranking"], 1).unwrap();
        assert_eq!(g.terms[0].tf_norm, 0.0);
        assert_eq!(g.terms[0].idf_norm, 1.0);
        assert_eq!(g.overlap, 0.5);

        let all = index.extract_features(&["ranking"], 1).unwrap();
        assert_eq!(all.overlap, 1.0);
    }

    #[test]
    fn empty_query_and_bad_ordinal() {
        let index = build_index(vec![Document::new("a", "text")]).unwrap();
        let none: [&str; 0] = [];
        assert!(matches!(
            index.extract_features(&none, 0),
            Err(IndexError::EmptyQuery)
        ));
        assert!(matches!(
            index.extract_features(&["text"], 4),
            Err(IndexError::NoSuchDocument(4))
        ));
    }
}
