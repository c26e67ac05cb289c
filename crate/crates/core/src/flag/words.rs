//! Reduced words of the longest element of the symmetric group and the
//! graph of 2-moves and 3-moves between them.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Letters `i` in `1..n`, standing for the transposition `s_i = (i, i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReducedWord(pub Vec<usize>);

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", letters.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Move {
    /// `(i, j) ↔ (j, i)` for `|i − j| > 1`.
    Commutation,
    /// `(i, j, i) ↔ (j, i, j)` for `|i − j| = 1`.
    Braid,
}

impl Move {
    /// 2 for a commutation, 3 for a braid move.
    pub fn length(self) -> usize {
        match self {
            Move::Commutation => 2,
            Move::Braid => 3,
        }
    }
}

const MAX_RANK: usize = 6;

fn check_range(n: usize) -> Result<()> {
    if (2..=MAX_RANK).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("n = {n} is outside 2..={MAX_RANK}")))
    }
}

/// One-line notation of `s_{i_1} ⋯ s_{i_l}` acting on `0..n`.
pub fn word_permutation(n: usize, word: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for &i in word {
        perm.swap(i - 1, i);
    }
    perm
}

pub fn longest_length(n: usize) -> usize {
    n * (n - 1) / 2
}

/// True when `word` has length `n(n−1)/2` and multiplies to the longest
/// element `i ↦ n − 1 − i`.
pub fn is_reduced_word_for_longest(n: usize, word: &[usize]) -> bool {
    word.len() == longest_length(n)
        && word.iter().all(|&i| (1..n).contains(&i))
        && word_permutation(n, word)
            .iter()
            .enumerate()
            .all(|(i, &p)| p == n - 1 - i)
}

/// All reduced words of the longest element of `S_n`, in lexicographic order.
pub fn reduced_words(n: usize) -> Result<Vec<ReducedWord>> {
    check_range(n)?;
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut word = Vec::with_capacity(longest_length(n));
    extend_words(n, &mut perm, &mut word, &mut out);
    Ok(out)
}

// Right multiplication by s_i lengthens w exactly when w(i) < w(i+1).
fn extend_words(n: usize, perm: &mut Vec<usize>, word: &mut Vec<usize>, out: &mut Vec<ReducedWord>) {
    if word.len() == longest_length(n) {
        out.push(ReducedWord(word.clone()));
        return;
    }
    for i in 1..n {
        if perm[i - 1] < perm[i] {
            perm.swap(i - 1, i);
            word.push(i);
            extend_words(n, perm, word, out);
            word.pop();
            perm.swap(i - 1, i);
        }
    }
}

/// Words obtained from `word` by a single move, with the move used.
pub fn move_neighbors(word: &[usize]) -> Vec<(ReducedWord, Move)> {
    let mut out = Vec::new();
    for p in 0..word.len().saturating_sub(1) {
        let (a, b) = (word[p], word[p + 1]);
        if a.abs_diff(b) > 1 {
            let mut w = word.to_vec();
            w.swap(p, p + 1);
            out.push((ReducedWord(w), Move::Commutation));
        }
        if p + 2 < word.len() && a.abs_diff(b) == 1 && word[p + 2] == a {
            let mut w = word.to_vec();
            w[p] = b;
            w[p + 1] = a;
            w[p + 2] = b;
            out.push((ReducedWord(w), Move::Braid));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct MoveGraph {
    pub words: Vec<ReducedWord>,
    /// `(a, b, move)` with `a < b` indexing into `words`.
    pub edges: Vec<(usize, usize, Move)>,
}

impl MoveGraph {
    pub fn index_of(&self, word: &ReducedWord) -> Option<usize> {
        self.words.binary_search(word).ok()
    }

    fn components(&self, keep: impl Fn(Move) -> bool) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.words.len()];
        for &(a, b, m) in &self.edges {
            if keep(m) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; self.words.len()];
        let mut comps = Vec::new();
        for s in 0..self.words.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components(|_| true).len() == 1
    }

    /// Classes of words related by commutations alone.
    pub fn commutation_classes(&self) -> Vec<Vec<usize>> {
        self.components(|m| m == Move::Commutation)
    }
}

pub fn move_graph(n: usize) -> Result<MoveGraph> {
    let words = reduced_words(n)?;
    let index: HashMap<&ReducedWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    for (a, w) in words.iter().enumerate() {
        for (nb, m) in move_neighbors(&w.0) {
            let b = index[&nb];
            if a < b {
                edges.push((a, b, m));
            }
        }
    }
    edges.sort_unstable();
    Ok(MoveGraph { words, edges })
}

/// Words reachable from `start` by moves; equals all reduced words when the
/// move graph is connected.
pub fn move_closure(start: &ReducedWord) -> Vec<ReducedWord> {
    let mut seen = std::collections::BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(w) = queue.pop_front() {
        for (nb, _) in move_neighbors(&w.0) {
            if seen.insert(nb.clone()) {
                queue.push_back(nb);
            }
        }
    }
    seen.into_iter().collect()
}

/// The word obtained by the diagram automorphism `i ↦ n − i`.
pub fn dynkin_flip(n: usize, word: &ReducedWord) -> ReducedWord {
    ReducedWord(word.0.iter().map(|&i| n - i).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(reduced_words(2).unwrap(), vec![ReducedWord(vec![1])]);
        assert_eq!(
            reduced_words(3).unwrap(),
            vec![ReducedWord(vec![1, 2, 1]), ReducedWord(vec![2, 1, 2])]
        );
        assert_eq!(reduced_words(4).unwrap().len(), 16);
        assert!(reduced_words(1).is_err());
        assert!(reduced_words(7).is_err());
    }

    #[test]
    fn rank_three_graph() {
        let g = move_graph(3).unwrap();
        assert_eq!(g.edges, vec![(0, 1, Move::Braid)]);
        assert!(g.is_connected());
    }

    #[test]
    fn products() {
        for w in reduced_words(5).unwrap() {
            assert!(is_reduced_word_for_longest(5, &w.0));
        }
        assert!(!is_reduced_word_for_longest(3, &[1, 1, 2]));
        assert!(!is_reduced_word_for_longest(3, &[1, 2]));
    }

    #[test]
    fn neighbors_and_display() {
        let w = ReducedWord(vec![3, 2, 1, 3, 2, 3]);
        let nbs = move_neighbors(&w.0);
        assert!(nbs.contains(&(ReducedWord(vec![3, 2, 3, 1, 2, 3]), Move::Commutation)));
        assert!(nbs.contains(&(ReducedWord(vec![3, 2, 1, 2, 3, 2]), Move::Braid)));
        assert_eq!(w.to_string(), "(3,2,1,3,2,3)");
        assert_eq!(dynkin_flip(4, &ReducedWord(vec![1, 2, 1, 3, 2, 1])), ReducedWord(vec![3, 2, 3, 1, 2, 3]));
    }
}
