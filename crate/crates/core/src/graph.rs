//! Dense simple graphs with bitset adjacency rows and per-vertex labels.

use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph<L> {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Vec<L>,
}

impl<L> Graph<L> {
    /// Edgeless graph on the given labels.
    pub fn new(labels: Vec<L>) -> Self {
        let n = labels.len();
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            labels,
        }
    }

    /// Builds every adjacency row independently; `fill(i, row)` must set the
    /// neighbor bits of vertex `i` and the result must be symmetric.
    pub fn from_rows<F>(labels: Vec<L>, fill: F) -> Self
    where
        F: Fn(usize, &mut [u64]) + Sync + Send,
    {
        let mut g = Graph::new(labels);
        let words = g.words;
        par::for_each_chunk_mut(&mut g.rows, words, fill);
        g
    }

    pub fn from_edges(labels: Vec<L>, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(labels);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j, "self-loop at {i}");
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.rows[j * self.words + i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(i))
    }

    pub fn common_neighbor_count(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn common_neighbors(&self, i: usize, j: usize) -> Vec<usize> {
        let row: Vec<u64> = self
            .row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| a & b)
            .collect();
        bits(&row).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| {
                self.neighbors(i)
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| !self.has_edge(i, i) && self.neighbors(i).all(|j| self.has_edge(j, i)))
    }

    /// Same adjacency, new labels.
    pub fn relabel<M>(&self, labels: Vec<M>) -> Graph<M> {
        assert_eq!(labels.len(), self.n);
        Graph {
            n: self.n,
            words: self.words,
            rows: self.rows.clone(),
            labels,
        }
    }
}

/// Indices of the set bits of a bitset, ascending.
pub fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_basics() {
        let g = Graph::from_edges(vec![(); 4], &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(g.common_neighbors(0, 2), vec![1, 3]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(g.is_symmetric());
    }

    #[test]
    fn wide_rows() {
        let n = 200;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edges(vec![(); n], &edges);
        assert!(g.has_edge(199, 0));
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        let h = Graph::from_rows(vec![(); n], |i, row| {
            for j in [(i + 1) % n, (i + n - 1) % n] {
                row[j / 64] |= 1 << (j % 64);
            }
        });
        assert_eq!(g, h);
    }
}
