//! Splitting an invertible polynomial into loop and chain atoms.
//!
//! Every monomial of a loop or chain is `x_a^p` or `x_a^p·x_b` where `x_b`
//! (the successor) has exponent 1. Each monomial is assigned its own
//! variable `x_a`; the assignment must be a bijection and every variable may
//! be the successor of at most one monomial. The successor graph then splits
//! into paths (chains, ending in a pure power) and cycles (loops). When a
//! monomial is `x_a·x_b` both readings are tried.

use super::parse::entry_u64;
use super::InvertiblePolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    Loop,
    Chain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub kind: AtomKind,
    /// Variables in cycle/path order; loops start at their smallest index.
    pub variables: Vec<usize>,
    /// Monomial owning each variable, aligned with `variables`.
    pub monomials: Vec<usize>,
    /// `p_i`: exponent of each variable in its own monomial.
    pub exponents: Vec<u64>,
}

impl Atom {
    /// Atoms with some `p_i = 1`, which are invertible but may fail to have
    /// an isolated critical point.
    pub fn has_unit_exponent(&self) -> bool {
        self.exponents.contains(&1)
    }

    /// Description independent of variable names: kind plus exponents
    /// (loops rotated to their lexicographically least form).
    pub fn signature(&self) -> (AtomKind, Vec<u64>) {
        match self.kind {
            AtomKind::Chain => (self.kind, self.exponents.clone()),
            AtomKind::Loop => {
                let m = self.exponents.len();
                let best = (0..m)
                    .map(|r| (0..m).map(|i| self.exponents[(r + i) % m]).collect::<Vec<_>>())
                    .min()
                    .expect("loop has at least two exponents");
                (self.kind, best)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicDecomposition {
    pub atoms: Vec<Atom>,
    pub non_degenerate: bool,
}

impl AtomicDecomposition {
    fn failed() -> Self {
        AtomicDecomposition {
            atoms: Vec::new(),
            non_degenerate: false,
        }
    }

    /// Sorted atom signatures; equal for permutation-equivalent inputs.
    pub fn signature(&self) -> Vec<(AtomKind, Vec<u64>)> {
        let mut s: Vec<_> = self.atoms.iter().map(Atom::signature).collect();
        s.sort();
        s
    }
}

/// (own variable, successor) readings of one monomial.
fn readings(row: &[Option<u64>]) -> Option<Vec<(usize, Option<usize>)>> {
    let support: Vec<usize> = (0..row.len()).filter(|&j| row[j] != Some(0)).collect();
    if row.iter().any(Option::is_none) {
        return None;
    }
    match support.as_slice() {
        [a] => Some(vec![(*a, None)]),
        [a, b] => {
            let mut out = Vec::new();
            if row[*b] == Some(1) {
                out.push((*a, Some(*b)));
            }
            if row[*a] == Some(1) {
                out.push((*b, Some(*a)));
            }
            (!out.is_empty()).then_some(out)
        }
        _ => None,
    }
}

struct Search<'a> {
    options: &'a [Vec<(usize, Option<usize>)>],
    owner: Vec<Option<usize>>,
    successor: Vec<Option<usize>>,
    targeted: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, row: usize) -> bool {
        if row == self.options.len() {
            return true;
        }
        for &(own, succ) in &self.options[row] {
            if self.owner[own].is_some() || succ.is_some_and(|s| self.targeted[s]) {
                continue;
            }
            self.owner[own] = Some(row);
            self.successor[own] = succ;
            if let Some(s) = succ {
                self.targeted[s] = true;
            }
            if self.run(row + 1) {
                return true;
            }
            self.owner[own] = None;
            self.successor[own] = None;
            if let Some(s) = succ {
                self.targeted[s] = false;
            }
        }
        false
    }
}

pub(super) fn decompose(f: &InvertiblePolynomial) -> AtomicDecomposition {
    let n = f.n();
    let e = f.exponents();
    let mut options = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<Option<u64>> = e.row(i).iter().map(entry_u64).collect();
        match readings(&row) {
            Some(r) => options.push(r),
            None => return AtomicDecomposition::failed(),
        }
    }
    let mut search = Search {
        options: &options,
        owner: vec![None; n],
        successor: vec![None; n],
        targeted: vec![false; n],
    };
    if !search.run(0) {
        return AtomicDecomposition::failed();
    }
    let owner: Vec<usize> = search.owner.iter().map(|o| o.expect("bijection")).collect();
    let successor = search.successor;
    let targeted = search.targeted;
    let exponent = |v: usize| entry_u64(&e[(owner[v], v)]).expect("checked non-negative");

    let mut visited = vec![false; n];
    let mut atoms = Vec::new();
    let build = |start: usize, kind: AtomKind, visited: &mut Vec<bool>| {
        let mut vars = Vec::new();
        let mut v = Some(start);
        while let Some(x) = v {
            if visited[x] {
                break;
            }
            visited[x] = true;
            vars.push(x);
            v = successor[x];
        }
        Atom {
            kind,
            monomials: vars.iter().map(|&x| owner[x]).collect(),
            exponents: vars.iter().map(|&x| exponent(x)).collect(),
            variables: vars,
        }
    };
    for (start, &t) in targeted.iter().enumerate() {
        if !t {
            atoms.push(build(start, AtomKind::Chain, &mut visited));
        }
    }
    for start in 0..n {
        if !visited[start] {
            atoms.push(build(start, AtomKind::Loop, &mut visited));
        }
    }
    AtomicDecomposition {
        atoms,
        non_degenerate: true,
    }
}
