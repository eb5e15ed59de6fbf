use super::{RankError, RankedList};
use crate::index::{query_terms, InvertedIndex};

/// Factors of the vector-space score
/// `Σ tf · idf · boost · lengthNorm · overlap · queryNorm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineParams {
    pub boost: f64,
}

impl Default for BaselineParams {
    fn default() -> Self {
        Self { boost: 1.0 }
    }
}

impl BaselineParams {
    /// `1 / sqrt(token_count)`, 0 for an empty document.
    pub fn length_norm(&self, token_count: u32) -> f64 {
        if token_count == 0 {
            0.0
        } else {
            1.0 / f64::from(token_count).sqrt()
        }
    }

    /// `1 / sqrt(Σ idf_raw²)` over query terms present in the corpus; 1 when
    /// that sum is 0.
    pub fn query_norm<S: AsRef<str>>(&self, index: &InvertedIndex, terms: &[S]) -> f64 {
        let sum: f64 = terms
            .iter()
            .map(|t| index.idf_raw(t.as_ref()).powi(2))
            .sum();
        if sum > 0.0 {
            1.0 / sum.sqrt()
        } else {
            1.0
        }
    }

    /// Fraction of distinct query terms matched.
    pub fn coord(&self, matched: usize, distinct: usize) -> f64 {
        matched as f64 / distinct as f64
    }
}

/// tf-idf baseline over the same candidates as the fuzzy ranker.
pub fn score_baseline(
    index: &InvertedIndex,
    params: &BaselineParams,
    query_id: &str,
    query_text: &str,
    k: usize,
) -> Result<RankedList, RankError> {
    let terms = query_terms(query_text);
    if terms.is_empty() {
        return Err(RankError::EmptyQuery);
    }
    let query_norm = params.query_norm(index, &terms);
    let scored = index
        .matching_documents(&terms)
        .into_iter()
        .map(|ordinal| {
            let doc = &index.docs()[ordinal];
            let length_norm = params.length_norm(doc.token_count);
            let features = index.extract_features(&terms, ordinal)?;
            let sum: f64 = features
                .terms
                .iter()
                .filter(|t| t.tf_norm > 0.0)
                .map(|t| t.tf_norm * index.idf_raw(&t.token) * params.boost * length_norm)
                .sum();
            let score = sum * params.coord(features.matched_count, terms.len()) * query_norm;
            Ok((doc.doc_id.clone(), score))
        })
        .collect::<Result<Vec<_>, RankError>>()?;
    Ok(RankedList::from_scores(query_id, scored, k))
}
