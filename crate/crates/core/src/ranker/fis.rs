use super::{FisTemplate, RankError, RankedList, UnmatchedTerms};
use crate::index::{query_terms, InvertedIndex, QueryFeatures};

/// Crisp inputs in the order produced by [`FisTemplate::instantiate`]:
/// every term's tf, then every term's idf, then overlap.
pub fn fis_inputs(features: &QueryFeatures) -> Vec<f64> {
    let mut values: Vec<f64> = features.terms.iter().map(|t| t.tf_norm).collect();
    values.extend(features.terms.iter().map(|t| t.idf_norm));
    values.push(features.overlap);
    values
}

/// Scores every document that contains at least one query term with the
/// query's instantiated inference system and returns the top `k`.
pub fn score_fis(
    index: &InvertedIndex,
    template: &FisTemplate,
    query_id: &str,
    query_text: &str,
    k: usize,
) -> Result<RankedList, RankError> {
    let terms = query_terms(query_text);
    if terms.is_empty() {
        return Err(RankError::EmptyQuery);
    }
    let kept: Vec<&str> = terms
        .iter()
        .map(String::as_str)
        .filter(|t| {
            template.unmatched_terms() == UnmatchedTerms::Zero || index.document_frequency(t) > 0
        })
        .collect();
    if kept.is_empty() {
        // nothing in the corpus matches, so there are no candidates either
        return Ok(RankedList::from_scores(query_id, Vec::new(), k));
    }
    let config = template.instantiate(kept.len())?;
    let scored = index
        .matching_documents(&terms)
        .into_iter()
        .map(|ordinal| {
            let mut features = index.extract_features(&terms, ordinal)?;
            features.terms.retain(|t| kept.contains(&t.token.as_str()));
            let score = config.evaluate_values(&fis_inputs(&features))?;
            Ok((index.docs()[ordinal].doc_id.clone(), score))
        })
        .collect::<Result<Vec<_>, RankError>>()?;
    Ok(RankedList::from_scores(query_id, scored, k))
}
