//! Corpus ingestion and an immutable inverted index supplying normalized
//! term frequency, inverse document frequency and query overlap.

mod codec;
mod corpus;
mod features;
mod tokenize;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

pub use corpus::{read_corpus, Document};
pub use features::{QueryFeatures, TermFeatures};
pub use tokenize::{is_stopword, query_terms, tokenize, STOPWORDS};

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("duplicate doc_id '{0}'")]
    DuplicateDocId(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("index file: {0}")]
    Format(String),
    #[error("query has no terms after tokenization")]
    EmptyQuery,
    #[error("document ordinal {0} out of range")]
    NoSuchDocument(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    pub doc_ordinal: u32,
    pub term_frequency: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocEntry {
    pub doc_id: String,
    pub token_count: u32,
    pub max_term_frequency: u32,
}

/// Token → postings map plus per-document statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertedIndex {
    terms: BTreeMap<String, Vec<Posting>>,
    docs: Vec<DocEntry>,
    ordinals: HashMap<String, u32>,
}

/// Builds an index from documents in stream order; ordinals follow that order.
/// Documents that tokenize to nothing are kept and count toward N.
pub fn build_index(
    corpus: impl IntoIterator<Item = Document>,
) -> Result<InvertedIndex, IndexError> {
    let mut terms: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
    let mut docs = Vec::new();
    let mut ordinals = HashMap::new();

    for doc in corpus {
        let ordinal = u32::try_from(docs.len())
            .map_err(|_| IndexError::Format("more than u32::MAX documents".into()))?;
        if ordinals.insert(doc.doc_id.clone(), ordinal).is_some() {
            return Err(IndexError::DuplicateDocId(doc.doc_id));
        }
        let tokens = tokenize(&doc.text);
        let mut counts: BTreeMap<String, u32> = BTreeMap::new();
        for token in &tokens {
            *counts.entry(token.clone()).or_default() += 1;
        }
        let max_term_frequency = counts.values().copied().max().unwrap_or(0);
        for (token, term_frequency) in counts {
            terms.entry(token).or_default().push(Posting {
                doc_ordinal: ordinal,
                term_frequency,
            });
        }
        docs.push(DocEntry {
            doc_id: doc.doc_id,
            token_count: tokens.len() as u32,
            max_term_frequency,
        });
    }
    if docs.is_empty() {
        return Err(IndexError::EmptyCorpus);
    }
    Ok(InvertedIndex {
        terms,
        docs,
        ordinals,
    })
}

impl InvertedIndex {
    pub(crate) fn from_parts(
        terms: BTreeMap<String, Vec<Posting>>,
        docs: Vec<DocEntry>,
    ) -> Result<Self, IndexError> {
        if docs.is_empty() {
            return Err(IndexError::EmptyCorpus);
        }
        let mut ordinals = HashMap::with_capacity(docs.len());
        for (i, d) in docs.iter().enumerate() {
            if ordinals.insert(d.doc_id.clone(), i as u32).is_some() {
                return Err(IndexError::DuplicateDocId(d.doc_id.clone()));
            }
        }
        for (token, postings) in &terms {
            let sorted = postings
                .windows(2)
                .all(|w| w[0].doc_ordinal < w[1].doc_ordinal);
            let valid = postings
                .iter()
                .all(|p| p.term_frequency >= 1 && (p.doc_ordinal as usize) < docs.len());
            if postings.is_empty() || !sorted || !valid {
                return Err(IndexError::Format(format!(
                    "corrupt postings for '{token}'"
                )));
            }
        }
        Ok(Self {
            terms,
            docs,
            ordinals,
        })
    }

    /// Number of documents, N.
    pub fn total_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_tokens(&self) -> u64 {
        self.docs.iter().map(|d| u64::from(d.token_count)).sum()
    }

    pub fn docs(&self) -> &[DocEntry] {
        &self.docs
    }

    pub fn doc(&self, ordinal: usize) -> Option<&DocEntry> {
        self.docs.get(ordinal)
    }

    pub fn ordinal(&self, doc_id: &str) -> Option<usize> {
        self.ordinals.get(doc_id).map(|&o| o as usize)
    }

    /// Terms with their postings, in token order.
    pub fn terms(&self) -> impl Iterator<Item = (&str, &[Posting])> {
        self.terms.iter().map(|(t, p)| (t.as_str(), p.as_slice()))
    }

    pub fn postings(&self, token: &str) -> &[Posting] {
        self.terms.get(token).map_or(&[], Vec::as_slice)
    }

    /// Number of documents containing `token`, n.
    pub fn document_frequency(&self, token: &str) -> usize {
        self.postings(token).len()
    }

    pub fn term_frequency(&self, ordinal: usize, token: &str) -> u32 {
        let postings = self.postings(token);
        postings
            .binary_search_by_key(&(ordinal as u32), |p| p.doc_ordinal)
            .map_or(0, |i| postings[i].term_frequency)
    }

    /// `ln(N / n)`; 0 for a token absent from the corpus.
    pub fn idf_raw(&self, token: &str) -> f64 {
        let n = self.document_frequency(token);
        if n == 0 {
            return 0.0;
        }
        (self.total_docs() as f64 / n as f64).ln()
    }

    /// `ln(N / n) / ln(N)`: 1 for a term in one document, 0 for a term in all of
    /// them. 0 when N is 1 or the token is absent.
    pub fn idf_norm(&self, token: &str) -> f64 {
        let total = self.total_docs();
        if total <= 1 || self.document_frequency(token) == 0 {
            return 0.0;
        }
        self.idf_raw(token) / (total as f64).ln()
    }

    /// Raw count divided by the document's largest term count; 0 when absent.
    pub fn tf_norm(&self, ordinal: usize, token: &str) -> f64 {
        let tf = self.term_frequency(ordinal, token);
        match self.docs.get(ordinal) {
            Some(doc) if tf > 0 => f64::from(tf) / f64::from(doc.max_term_frequency),
            _ => 0.0,
        }
    }

    /// Ordinals of documents containing at least one of `tokens`, ascending.
    pub fn matching_documents<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<usize> {
        let mut ordinals: Vec<usize> = tokens
            .iter()
            .flat_map(|t| self.postings(t.as_ref()))
            .map(|p| p.doc_ordinal as usize)
            .collect();
        ordinals.sort_unstable();
        ordinals.dedup();
        ordinals
    }
}
