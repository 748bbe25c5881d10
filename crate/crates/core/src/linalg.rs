//! Incremental row echelon form over ℚ(√2) for sparse vectors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::QuadExt;

pub type SparseVector<K> = BTreeMap<K, QuadExt>;

/// Basis of a growing subspace. Each row is scaled so its largest key has
/// coefficient 1, and no two rows share that key.
#[derive(Clone, Debug)]
pub struct SpanBasis<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVector<K>>,
}

impl<K: Ord + Clone> Default for SpanBasis<K> {
    fn default() -> Self {
        SpanBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SpanBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot it meets.
    pub fn reduce(&self, v: &SparseVector<K>) -> SparseVector<K> {
        let mut v = v.clone();
        v.retain(|_, c| !c.is_zero());
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next_back().cloned(),
                Some(c) => v.range(..c.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let factor = v[&k].clone();
                for (rk, rc) in row {
                    let e = v.entry(rk.clone()).or_insert_with(QuadExt::zero);
                    *e -= &(rc * &factor);
                    if e.is_zero() {
                        v.remove(rk);
                    }
                }
            }
            cursor = Some(k);
        }
        v
    }

    pub fn contains(&self, v: &SparseVector<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVector<K>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next_back() else { return false };
        let inv = lead.inverse().expect("nonzero leading coefficient");
        let pivot = pivot.clone();
        let row = r.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVector<K>]) -> usize {
    let mut basis = SpanBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}
