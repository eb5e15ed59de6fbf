#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub doc_id: String,
    pub score: f64,
    /// 1-based.
    pub rank: usize,
}

/// Results for one query: scores non-increasing, ties broken by ascending
/// doc_id, ranks contiguous from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub query_id: String,
    pub entries: Vec<RankedEntry>,
}

impl RankedList {
    /// Orders `scored` and keeps the first `k`.
    pub fn from_scores(
        query_id: impl Into<String>,
        mut scored: Vec<(String, f64)>,
        k: usize,
    ) -> Self {
        scored.sort_by(|(da, sa), (db, sb)| sb.total_cmp(sa).then_with(|| da.cmp(db)));
        scored.truncate(k);
        let entries = scored
            .into_iter()
            .enumerate()
            .map(|(i, (doc_id, score))| RankedEntry {
                doc_id,
                score,
                rank: i + 1,
            })
            .collect();
        Self {
            query_id: query_id.into(),
            entries,
        }
    }

    pub fn doc_ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.doc_id.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ties_break_by_doc_id() {
        let list = RankedList::from_scores(
            "q",
            vec![("b".into(), 0.5), ("c".into(), 0.9), ("a".into(), 0.5)],
            10,
        );
        let ids: Vec<&str> = list.doc_ids().collect();
        assert_eq!(ids, ["c", "a", "b"]);
        assert_eq!(
            list.entries.iter().map(|e| e.rank).collect::<Vec<_>>(),
            [1, 2, 3]
        );
        let top = RankedList::from_scores("q", vec![("b".into(), 0.5), ("a".into(), 0.5)], 1);
        assert_eq!(top.doc_ids().collect::<Vec<_>>(), ["a"]);
    }

    proptest! {
        #[test]
        fn ordering_is_total_and_stable(
            scores in prop::collection::btree_map("[a-f]{1,3}", 0u8..4, 0..30),
            k in 0usize..40,
        ) {
            let scored: Vec<(String, f64)> =
                scores.iter().map(|(d, s)| (d.clone(), f64::from(*s) / 4.0)).collect();
            let list = RankedList::from_scores("q", scored.clone(), k);
            prop_assert_eq!(list.len(), k.min(scored.len()));
            for w in list.entries.windows(2) {
                prop_assert!(w[0].score > w[1].score
                    || (w[0].score == w[1].score && w[0].doc_id < w[1].doc_id));
            }
            let mut reversed = scored;
            reversed.reverse();
            prop_assert_eq!(RankedList::from_scores("q", reversed, k), list.clone());
            let again: Vec<(String, f64)> =
                list.entries.iter().map(|e| (e.doc_id.clone(), e.score)).collect();
            prop_assert_eq!(RankedList::from_scores("q", again, k), list);
        }
    }
}
