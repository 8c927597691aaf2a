//! Finite abstract reduction systems, decided by exhaustive search.
//!
//! Used both as an analysis in its own right (`rwkit ars`) and as the oracle
//! for the relation-level properties the term-level analyses rely on.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};

/// Interned carrier element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureKind {
    Reflexive,
    Symmetric,
    Transitive,
    ReflexiveTransitive,
    Equivalence,
}

/// A binary relation over a finite, non-empty carrier.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteArs {
    names: IndexSet<String>,
    steps: BTreeSet<(Elem, Elem)>,
}

impl FiniteArs {
    pub fn new<S: AsRef<str>>(
        carrier: impl IntoIterator<Item = S>,
        steps: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let names: IndexSet<String> = carrier
            .into_iter()
            .map(|s| s.as_ref().to_string())
            .collect();
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let lookup = |s: &str| {
            names
                .get_index_of(s)
                .map(Elem)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let steps = steps
            .into_iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(FiniteArs { names, steps })
    }

    /// Carrier `0..n` named by index, with the given edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let names: IndexSet<String> = (0..n).map(|i| i.to_string()).collect();
        let steps = edges
            .into_iter()
            .map(|(a, b)| {
                if a >= n || b >= n {
                    Err(Error::UnknownElement(a.max(b).to_string()))
                } else {
                    Ok((Elem(a), Elem(b)))
                }
            })
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(FiniteArs { names, steps })
    }

    /// Parses `x -> y` lines. A line holding a single identifier declares an
    /// isolated element; blank lines and `;` comments are ignored. The carrier
    /// is the set of mentioned identifiers, in order of first mention.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: IndexSet<String> = IndexSet::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split(';').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |column: usize, message: String| Error::Parse {
                line: lineno + 1,
                column,
                message,
            };
            let parts: Vec<&str> = line.split("->").map(str::trim).collect();
            match parts.as_slice() {
                [single] if is_ident(single) => {
                    names.insert(single.to_string());
                }
                [a, b] if is_ident(a) && is_ident(b) => {
                    names.insert(a.to_string());
                    names.insert(b.to_string());
                    edges.push((a.to_string(), b.to_string()));
                }
                _ => {
                    let column = raw.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
                    return Err(err(column, format!("expected `x -> y`, found `{line}`")));
                }
            }
        }
        let carrier: Vec<String> = names.into_iter().collect();
        FiniteArs::new(carrier, edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.names.len()).map(Elem)
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        self.names
            .get_index_of(name)
            .map(Elem)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.0]
    }

    pub fn steps(&self) -> &BTreeSet<(Elem, Elem)> {
        &self.steps
    }

    pub fn contains_step(&self, a: Elem, b: Elem) -> bool {
        self.steps.contains(&(a, b))
    }

    fn successors(&self) -> Vec<Vec<Elem>> {
        let mut succ = vec![Vec::new(); self.len()];
        for &(a, b) in &self.steps {
            succ[a.0].push(b);
        }
        succ
    }

    fn with_steps(&self, steps: BTreeSet<(Elem, Elem)>) -> FiniteArs {
        FiniteArs {
            names: self.names.clone(),
            steps,
        }
    }

    fn check(&self, e: Elem) -> Result<()> {
        if e.0 < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(e.0.to_string()))
        }
    }

    /// Least superset of the steps closed under `kind`.
    pub fn close(&self, kind: ClosureKind) -> FiniteArs {
        match kind {
            ClosureKind::Reflexive => {
                let mut steps = self.steps.clone();
                steps.extend(self.elements().map(|e| (e, e)));
                self.with_steps(steps)
            }
            ClosureKind::Symmetric => {
                let mut steps = self.steps.clone();
                steps.extend(self.steps.iter().map(|&(a, b)| (b, a)));
                self.with_steps(steps)
            }
            ClosureKind::Transitive => {
                // saturate: each element's one-or-more-step successors
                let succ = self.successors();
                let mut steps = BTreeSet::new();
                for a in self.elements() {
                    let mut seen = vec![false; self.len()];
                    let mut work: Vec<Elem> = succ[a.0].clone();
                    while let Some(b) = work.pop() {
                        if !seen[b.0] {
                            seen[b.0] = true;
                            steps.insert((a, b));
                            work.extend(succ[b.0].iter().copied());
                        }
                    }
                }
                self.with_steps(steps)
            }
            ClosureKind::ReflexiveTransitive => self
                .close(ClosureKind::Transitive)
                .close(ClosureKind::Reflexive),
            ClosureKind::Equivalence => self
                .close(ClosureKind::Symmetric)
                .close(ClosureKind::ReflexiveTransitive),
        }
    }

    /// Elements reachable from `x` in zero or more steps, breadth-first.
    fn reach_bfs(&self, succ: &[Vec<Elem>], x: Elem) -> Vec<Elem> {
        let mut seen = vec![false; self.len()];
        seen[x.0] = true;
        let mut order = vec![x];
        let mut queue = VecDeque::from([x]);
        while let Some(a) = queue.pop_front() {
            for &b in &succ[a.0] {
                if !seen[b.0] {
                    seen[b.0] = true;
                    order.push(b);
                    queue.push_back(b);
                }
            }
        }
        order
    }

    fn reach_sets(&self) -> Vec<BitSet> {
        let succ = self.successors();
        self.elements()
            .map(|x| BitSet::from_elems(self.len(), self.reach_bfs(&succ, x)))
            .collect()
    }

    /// A common reduct of `x` and `y`: the first element reachable from `x`
    /// in breadth-first order that is also reachable from `y`.
    pub fn joinable(&self, x: Elem, y: Elem) -> Result<Option<Elem>> {
        self.check(x)?;
        self.check(y)?;
        let succ = self.successors();
        let from_y = BitSet::from_elems(self.len(), self.reach_bfs(&succ, y));
        Ok(self
            .reach_bfs(&succ, x)
            .into_iter()
            .find(|z| from_y.contains(z.0)))
    }

    pub fn confluent(&self) -> bool {
        let reach = self.reach_sets();
        reach.iter().all(|from_x| {
            let rs: Vec<usize> = from_x.iter().collect();
            rs.iter()
                .enumerate()
                .all(|(i, &y)| rs[i + 1..].iter().all(|&z| reach[y].intersects(&reach[z])))
        })
    }

    pub fn locally_confluent(&self) -> bool {
        let reach = self.reach_sets();
        self.successors().iter().all(|succ| {
            succ.iter().enumerate().all(|(i, y)| {
                succ[i + 1..]
                    .iter()
                    .all(|z| reach[y.0].intersects(&reach[z.0]))
            })
        })
    }

    /// No infinite chain; on a finite carrier, no cycle.
    pub fn noetherian(&self) -> bool {
        let succ = self.successors();
        let mut indegree = vec![0usize; self.len()];
        for &(_, b) in &self.steps {
            indegree[b.0] += 1;
        }
        let mut ready: Vec<usize> = (0..self.len()).filter(|&i| indegree[i] == 0).collect();
        let mut removed = 0;
        while let Some(a) = ready.pop() {
            removed += 1;
            for b in &succ[a] {
                indegree[b.0] -= 1;
                if indegree[b.0] == 0 {
                    ready.push(b.0);
                }
            }
        }
        removed == self.len()
    }
}

impl fmt::Debug for FiniteArs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteArs")
            .field("carrier", &self.names)
            .field(
                "steps",
                &self
                    .steps
                    .iter()
                    .map(|&(a, b)| format!("{} -> {}", self.name(a), self.name(b)))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "_'+*-".contains(c))
}

#[derive(Clone, Debug)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn from_elems(n: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for e in elems {
            words[e.0 / 64] |= 1 << (e.0 % 64);
        }
        BitSet { words }
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.words.len() * 64).filter(|&i| self.contains(i))
    }
}
