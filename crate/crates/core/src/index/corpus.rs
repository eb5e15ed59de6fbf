use std::io::BufRead;

use serde::Deserialize;

use super::IndexError;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub text: String,
}

impl Document {
    pub fn new(doc_id: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            doc_id: doc_id.into(),
            text: text.into(),
        }
    }
}

/// Reads a JSON Lines corpus: one object per line with string fields
/// `doc_id` and `text`. Other fields are ignored; blank lines are skipped.
pub fn read_corpus(reader: impl BufRead) -> Result<Vec<Document>, IndexError> {
    let mut docs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: Document = serde_json::from_str(&line).map_err(|e| IndexError::Corpus {
            line: line_no,
            message: e.to_string(),
        })?;
        if doc.doc_id.is_empty() {
            return Err(IndexError::Corpus {
                line: line_no,
                message: "doc_id is empty".into(),
            });
        }
        docs.push(doc);
    }
    Ok(docs)
}
