//! Single-file binary form of an [`InvertedIndex`].
//!
//! ```text
//! "FRIX1" version:u8
//! doc_count:u32   { id:str token_count:u32 max_tf:u32 }*
//! term_count:u32  { token:str posting_count:u32 { ordinal:u32 tf:u32 }* }*
//! ```
//!
//! Integers are little-endian; `str` is a `u32` byte length followed by UTF-8.
//! Terms are written in token order, so equal indexes encode to equal bytes.

use std::collections::BTreeMap;

use super::{DocEntry, IndexError, InvertedIndex, Posting};

pub const MAGIC: &[u8; 5] = b"FRIX1";
pub const VERSION: u8 = 1;

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    put_u32(out, s.len() as u32);
    out.extend_from_slice(s.as_bytes());
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], IndexError> {
        let end = self
            .at
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| IndexError::Format(format!("truncated at byte {}", self.at)))?;
        let slice = &self.bytes[self.at..end];
        self.at = end;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32, IndexError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn string(&mut self) -> Result<String, IndexError> {
        let len = self.u32()? as usize;
        let at = self.at;
        String::from_utf8(self.take(len)?.to_vec())
            .map_err(|_| IndexError::Format(format!("invalid UTF-8 at byte {at}")))
    }
}

impl InvertedIndex {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        put_u32(&mut out, self.docs.len() as u32);
        for doc in &self.docs {
            put_str(&mut out, &doc.doc_id);
            put_u32(&mut out, doc.token_count);
            put_u32(&mut out, doc.max_term_frequency);
        }
        put_u32(&mut out, self.terms.len() as u32);
        for (token, postings) in &self.terms {
            put_str(&mut out, token);
            put_u32(&mut out, postings.len() as u32);
            for p in postings {
                put_u32(&mut out, p.doc_ordinal);
                put_u32(&mut out, p.term_frequency);
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, IndexError> {
        let mut r = Reader { bytes, at: 0 };
        if r.take(MAGIC.len()).ok() != Some(MAGIC.as_slice()) {
            return Err(IndexError::Format("not an index file (bad magic)".into()));
        }
        let version = r.take(1)?[0];
        if version != VERSION {
            return Err(IndexError::Format(format!("unsupported version {version}")));
        }
        let doc_count = r.u32()?;
        let mut docs = Vec::new();
        for _ in 0..doc_count {
            docs.push(DocEntry {
                doc_id: r.string()?,
                token_count: r.u32()?,
                max_term_frequency: r.u32()?,
            });
        }
        let term_count = r.u32()?;
        let mut terms = BTreeMap::new();
        for _ in 0..term_count {
            let token = r.string()?;
            let n = r.u32()?;
            let mut postings = Vec::new();
            for _ in 0..n {
                postings.push(Posting {
                    doc_ordinal: r.u32()?,
                    term_frequency: r.u32()?,
                });
            }
            if terms.insert(token.clone(), postings).is_some() {
                return Err(IndexError::Format(format!("duplicate term '{token}'")));
            }
        }
        if r.at != bytes.len() {
            return Err(IndexError::Format(format!(
                "{} trailing bytes",
                bytes.len() - r.at
            )));
        }
        Self::from_parts(terms, docs)
    }
}
