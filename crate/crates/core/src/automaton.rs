//! Complete deterministic automata, the word action, and structural queries.
//!
//! States are `0..n` internally; the `.aut` file format and all reports use
//! 1-based state names `q1..qn` to match the usual presentation.

use std::collections::VecDeque;

use thiserror::Error;

/// Hard guard for subset-construction searches (`2^n` state sets).
pub const SUBSET_BFS_MAX_STATES: usize = 24;

/// Validation errors for directly constructed automata.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("automaton needs at least one state")]
    NoStates,
    #[error("automaton needs at least one letter")]
    NoLetters,
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("row for `{letter}` has {got} targets, expected {expected}")]
    WrongRowLength {
        letter: String,
        got: usize,
        expected: usize,
    },
    #[error("target {target} out of range for `{letter}` (states: {n})")]
    TargetOutOfRange {
        letter: String,
        target: usize,
        n: usize,
    },
}

/// A complete deterministic automaton: a right action of the letters on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automaton {
    n: usize,
    letters: Vec<String>,
    /// `delta[x][q]` is `q · x`.
    delta: Vec<Vec<usize>>,
}

/// A word as a sequence of letter indices; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation `self · other` (apply `self` first).
    pub fn concat(&self, other: &Word) -> Word {
        let mut seq = self.0.clone();
        seq.extend_from_slice(&other.0);
        Word(seq)
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> Word {
        let mut seq = Vec::with_capacity(self.0.len() * k);
        for _ in 0..k {
            seq.extend_from_slice(&self.0);
        }
        Word(seq)
    }
}

/// A total map `Q -> Q`, the image of a word in the transition monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    map: Vec<usize>,
}

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation {
            map: (0..n).collect(),
        }
    }

    pub fn new(map: Vec<usize>) -> Self {
        debug_assert!(map.iter().all(|&t| t < map.len()));
        Transformation { map }
    }

    pub fn apply(&self, q: usize) -> usize {
        self.map[q]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// `|Q · u|`, the number of distinct images.
    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.map.len()];
        let mut count = 0;
        for &t in &self.map {
            if !seen[t] {
                seen[t] = true;
                count += 1;
            }
        }
        count
    }

    /// `n - rank`; reads the paper's `df(u)` as the defect of the word.
    pub fn defect(&self) -> usize {
        self.map.len() - self.rank()
    }

    /// First state (if any) whose image is shared with no other state.
    pub fn isolated_state(&self) -> Option<usize> {
        let n = self.map.len();
        let mut hits = vec![0usize; n];
        for &t in &self.map {
            hits[t] += 1;
        }
        (0..n).find(|&q| hits[self.map[q]] == 1)
    }
}

/// Witness that a letter acts as a single `n`-cycle, plus the canonical
/// relabeling that turns it into `i -> i+1 (mod n)` starting at state 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularStructure {
    pub letter: usize,
    /// `relabel[q]` is the canonical position of state `q` on the cycle.
    pub relabel: Vec<usize>,
}

impl CircularStructure {
    /// The circular metric `d(p,q) = min{k >= 0 | p·a^k = q or q·a^k = p}`.
    ///
    /// In canonical coordinates this is `min{j-i, n-j+i}`; it is 0 exactly on
    /// the diagonal and at most `n/2` otherwise.
    pub fn distance(&self, p: usize, q: usize) -> usize {
        let n = self.relabel.len();
        let i = self.relabel[p];
        let j = self.relabel[q];
        let fwd = (j + n - i) % n;
        fwd.min((n - fwd) % n)
    }
}

/// Outcome of the bounded shortest-reset-word search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResetLength {
    Length(usize),
    NotSynchronizing,
    /// The depth cap was hit before a singleton was reached.
    CapExceeded,
}

impl ResetLength {
    pub fn length(&self) -> Option<usize> {
        match self {
            ResetLength::Length(len) => Some(*len),
            _ => None,
        }
    }
}

/// Error for subset-construction searches beyond the hard state guard.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("state-space too large for subset search: {n} states (guard: {guard})")]
pub struct StateSpaceTooLarge {
    pub n: usize,
    pub guard: usize,
}

impl Automaton {
    pub fn new(
        letters: Vec<String>,
        delta: Vec<Vec<usize>>,
        n: usize,
    ) -> Result<Self, AutomatonError> {
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if letters.is_empty() || letters.len() != delta.len() {
            return Err(AutomatonError::NoLetters);
        }
        for (i, name) in letters.iter().enumerate() {
            if letters[..i].contains(name) {
                return Err(AutomatonError::DuplicateLetter(name.clone()));
            }
        }
        for (name, row) in letters.iter().zip(&delta) {
            if row.len() != n {
                return Err(AutomatonError::WrongRowLength {
                    letter: name.clone(),
                    got: row.len(),
                    expected: n,
                });
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(AutomatonError::TargetOutOfRange {
                    letter: name.clone(),
                    target: t + 1,
                    n,
                });
            }
        }
        Ok(Automaton { n, letters, delta })
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn letter_count(&self) -> usize {
        self.delta.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    /// `q · x` for a single letter.
    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[letter][q]
    }

    /// `q · u`, folding the transition table over the word.
    pub fn act(&self, q: usize, word: &Word) -> usize {
        word.0.iter().fold(q, |s, &x| self.delta[x][s])
    }

    /// `Q · u` as a sorted state list; its length is the rank of the word.
    pub fn image_set(&self, word: &Word) -> Vec<usize> {
        let mut hit = vec![false; self.n];
        for q in 0..self.n {
            hit[self.act(q, word)] = true;
        }
        (0..self.n).filter(|&q| hit[q]).collect()
    }

    /// `rank(u) = |Q · u|`.
    pub fn rank(&self, word: &Word) -> usize {
        self.image_set(word).len()
    }

    pub fn letter_transformation(&self, letter: usize) -> Transformation {
        Transformation::new(self.delta[letter].clone())
    }

    pub fn word_transformation(&self, word: &Word) -> Transformation {
        Transformation::new((0..self.n).map(|q| self.act(q, word)).collect())
    }

    /// Compose a transformation with one more letter: `t_{ux}(q) = t_u(q) · x`.
    pub fn extend_transformation(&self, t: &Transformation, letter: usize) -> Transformation {
        Transformation::new(t.as_slice().iter().map(|&q| self.delta[letter][q]).collect())
    }

    /// Parse a word over this automaton's letter names; each name is a token.
    pub fn word_from_names(&self, names: &[&str]) -> Option<Word> {
        names
            .iter()
            .map(|name| self.letter_index(name))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// True iff some word has rank 1.
    ///
    /// Decided by pair-automaton reachability: the automaton is synchronizing
    /// exactly when every unordered pair of states can reach a merged pair.
    pub fn is_synchronizing(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        let pair_id = |p: usize, q: usize| {
            let (a, b) = if p < q { (p, q) } else { (q, p) };
            a * self.n + b
        };
        // Reverse edges of the pair automaton, then BFS from the pairs that
        // merge in one step; synchronizing iff every pair is reached.
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); self.n * self.n];
        let mut queue = VecDeque::new();
        let mut reached = vec![false; self.n * self.n];
        for p in 0..self.n {
            for q in (p + 1)..self.n {
                let src = pair_id(p, q);
                for x in 0..self.delta.len() {
                    let (ip, iq) = (self.delta[x][p], self.delta[x][q]);
                    if ip == iq {
                        if !reached[src] {
                            reached[src] = true;
                            queue.push_back(src);
                        }
                    } else {
                        preds[pair_id(ip, iq)].push(src);
                    }
                }
            }
        }
        let mut remaining = self.n * (self.n - 1) / 2 - queue.len();
        while let Some(node) = queue.pop_front() {
            for &src in &preds[node] {
                if !reached[src] {
                    reached[src] = true;
                    remaining -= 1;
                    queue.push_back(src);
                }
            }
        }
        remaining == 0
    }

    /// Minimal length of a rank-1 word, by BFS on the subset automaton from `Q`.
    ///
    /// `cap` bounds the explored depth; `None` explores exhaustively. States
    /// beyond [`SUBSET_BFS_MAX_STATES`] are rejected.
    pub fn shortest_reset_length(
        &self,
        cap: Option<usize>,
    ) -> Result<ResetLength, StateSpaceTooLarge> {
        if self.n > SUBSET_BFS_MAX_STATES {
            return Err(StateSpaceTooLarge {
                n: self.n,
                guard: SUBSET_BFS_MAX_STATES,
            });
        }
        if self.n == 1 {
            return Ok(ResetLength::Length(0));
        }
        let full: u32 = (1u32 << self.n) - 1;
        let mut visited = vec![false; 1usize << self.n];
        let mut frontier = vec![full];
        visited[full as usize] = true;
        let mut depth = 0usize;
        while !frontier.is_empty() {
            if let Some(cap) = cap {
                if depth >= cap {
                    return Ok(ResetLength::CapExceeded);
                }
            }
            let mut next = Vec::new();
            for &mask in &frontier {
                for row in &self.delta {
                    let mut image = 0u32;
                    let mut m = mask;
                    while m != 0 {
                        let q = m.trailing_zeros() as usize;
                        m &= m - 1;
                        image |= 1 << row[q];
                    }
                    if image.count_ones() == 1 {
                        return Ok(ResetLength::Length(depth + 1));
                    }
                    if !visited[image as usize] {
                        visited[image as usize] = true;
                        next.push(image);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        Ok(ResetLength::NotSynchronizing)
    }

    /// All values `|Q · u|` over words `u`, by BFS on reachable image sets.
    ///
    /// These are exactly the ranks occurring in the transition monoid, so
    /// questions like "is there a rank-2 word" are decided without a cap.
    pub fn reachable_ranks(&self) -> Result<Vec<usize>, StateSpaceTooLarge> {
        if self.n > SUBSET_BFS_MAX_STATES {
            return Err(StateSpaceTooLarge {
                n: self.n,
                guard: SUBSET_BFS_MAX_STATES,
            });
        }
        let full: u32 = (1u32 << self.n) - 1;
        let mut visited = vec![false; 1usize << self.n];
        let mut stack = vec![full];
        visited[full as usize] = true;
        let mut ranks = vec![false; self.n + 1];
        ranks[self.n] = true;
        while let Some(mask) = stack.pop() {
            for row in &self.delta {
                let mut image = 0u32;
                let mut m = mask;
                while m != 0 {
                    let q = m.trailing_zeros() as usize;
                    m &= m - 1;
                    image |= 1 << row[q];
                }
                if !visited[image as usize] {
                    visited[image as usize] = true;
                    ranks[image.count_ones() as usize] = true;
                    stack.push(image);
                }
            }
        }
        Ok((0..=self.n).filter(|&r| ranks[r]).collect())
    }

    /// Every letter has rank at least `n - 1`.
    pub fn is_weakly_defective(&self) -> bool {
        (0..self.delta.len()).all(|x| self.letter_transformation(x).rank() + 1 >= self.n)
    }

    /// First letter (in declaration order) acting as a single `n`-cycle,
    /// with the relabeling fixing state 0.
    ///
    /// A letter satisfies the circulating condition (any two states connected
    /// by powers of the letter) exactly when its functional graph is one
    /// cycle through all `n` states.
    pub fn find_circular_structure(&self) -> Option<CircularStructure> {
        'letters: for (x, row) in self.delta.iter().enumerate() {
            let mut relabel = vec![usize::MAX; self.n];
            let mut q = 0usize;
            for pos in 0..self.n {
                if relabel[q] != usize::MAX {
                    continue 'letters; // revisited before covering Q
                }
                relabel[q] = pos;
                q = row[q];
            }
            if q == 0 {
                return Some(CircularStructure { letter: x, relabel });
            }
        }
        None
    }

    /// Relabel states by `perm` (`perm[q]` is the new name of `q`).
    pub fn relabel(&self, perm: &[usize]) -> Automaton {
        let mut delta = vec![vec![0usize; self.n]; self.delta.len()];
        for (x, row) in self.delta.iter().enumerate() {
            for q in 0..self.n {
                delta[x][perm[q]] = perm[row[q]];
            }
        }
        Automaton {
            n: self.n,
            letters: self.letters.clone(),
            delta,
        }
    }

    /// The automaton in canonical circular coordinates (`cs.letter` becomes
    /// the standard cycle `i -> i+1 mod n`).
    pub fn canonicalize(&self, cs: &CircularStructure) -> Automaton {
        self.relabel(&cs.relabel)
    }

    /// Render a word using this automaton's letter names.
    pub fn format_word(&self, word: &Word) -> String {
        let single = self.letters.iter().all(|l| l.chars().count() == 1);
        let names: Vec<&str> = word.0.iter().map(|&x| self.letters[x].as_str()).collect();
        if single {
            names.concat()
        } else {
            names.join(" ")
        }
    }
}
