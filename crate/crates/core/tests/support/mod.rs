//! Brute-force models of finite abelian groups and their coset spaces, used
//! as oracles independent of the lattice formulas in the library.

use std::collections::HashMap;
use std::sync::Arc;

use saito_core::group::{GroupElement, GroupPresentation, SubgroupKey};
use saito_core::{BigInt, RationalVector};

/// Every element of a group as an integer vector `d·β mod d`, with an
/// addition table built from componentwise addition.
pub struct Table {
    pub d: i64,
    pub elems: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    sums: Vec<usize>,
}

impl Table {
    pub fn new(group: &Arc<GroupPresentation>) -> Table {
        let d: i64 = group.scale().try_into().unwrap();
        let elems: Vec<Vec<i64>> = group
            .elements()
            .unwrap()
            .iter()
            .map(|g| g.scaled_coords().iter().map(|x| x.try_into().unwrap()).collect())
            .collect();
        let index = elems.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut t = Table {
            d,
            elems,
            index,
            sums: Vec::new(),
        };
        let n = t.len();
        if n <= 1000 {
            t.sums = (0..n * n).map(|ij| t.sum(ij / n, ij % n)).collect();
        }
        t
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn lookup(&self, v: &[i64]) -> usize {
        let r: Vec<i64> = v.iter().map(|x| x.rem_euclid(self.d)).collect();
        self.index[&r]
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        if self.sums.is_empty() {
            self.sum(i, j)
        } else {
            self.sums[i * self.len() + j]
        }
    }

    fn sum(&self, i: usize, j: usize) -> usize {
        let v: Vec<i64> = self.elems[i]
            .iter()
            .zip(&self.elems[j])
            .map(|(a, b)| a + b)
            .collect();
        self.lookup(&v)
    }

    /// Indices of the basis columns of a subgroup key.
    pub fn key_generators(&self, key: &SubgroupKey) -> Vec<usize> {
        let b = key.basis();
        (0..b.cols())
            .map(|j| {
                let col: Vec<i64> = b.column(j).iter().map(|x| x.try_into().unwrap()).collect();
                self.lookup(&col)
            })
            .collect()
    }

    /// Closure of `gens` under addition.
    pub fn span(&self, gens: &[usize]) -> Vec<bool> {
        let zero = self.lookup(&vec![0; self.elems[0].len()]);
        let mut member = vec![false; self.len()];
        member[zero] = true;
        let mut stack = vec![zero];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        member
    }

    pub fn members(&self, key: &SubgroupKey) -> Vec<bool> {
        self.span(&self.key_generators(key))
    }

    pub fn element_in(&self, i: usize, owner: &Arc<GroupPresentation>) -> GroupElement {
        let v: Vec<BigInt> = self.elems[i].iter().map(|&x| BigInt::from(x)).collect();
        owner
            .element(&RationalVector::new(v, BigInt::from(self.d)).unwrap())
            .unwrap()
    }

    /// The subgroup with the given member set, as a key of `owner`.
    pub fn key_of(&self, member: &[bool], owner: &Arc<GroupPresentation>) -> SubgroupKey {
        let mut gens = Vec::new();
        let mut reached = self.span(&gens);
        for (i, &m) in member.iter().enumerate() {
            if m && !reached[i] {
                gens.push(i);
                reached = self.span(&gens);
            }
        }
        assert_eq!(reached, member, "member set is not a subgroup");
        let elements: Vec<GroupElement> = gens.iter().map(|&i| self.element_in(i, owner)).collect();
        owner.subgroup_generated_by(&elements).unwrap()
    }

    /// Coset labels `0..|G/H|` for the subgroup generated by `gens`.
    pub fn cosets(&self, gens: &[usize]) -> Vec<usize> {
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            for &g in gens {
                uf.union(x, self.add(x, g));
            }
        }
        uf.labels()
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Dense component labels in order of first appearance.
    pub fn labels(&mut self) -> Vec<usize> {
        let mut map = HashMap::new();
        (0..self.parent.len())
            .map(|x| {
                let r = self.find(x);
                let next = map.len();
                *map.entry(r).or_insert(next)
            })
            .collect()
    }
}

/// Orbits of the subgroup `acting` (member set) on `G/S`, where `cosets`
/// labels `G/S`: one stabilizer member set per orbit.
pub fn orbit_stabilizers(t: &Table, cosets: &[usize], acting: &[bool]) -> Vec<Vec<bool>> {
    let act: Vec<usize> = (0..t.len()).filter(|&i| acting[i]).collect();
    let mut uf = UnionFind::new(t.len());
    let mut first = HashMap::new();
    for (x, &c) in cosets.iter().enumerate() {
        uf.union(x, *first.entry(c).or_insert(x));
        for &a in &act {
            uf.union(x, t.add(x, a));
        }
    }
    let orbit = uf.labels();
    let count = orbit.iter().max().map_or(0, |m| m + 1);
    let mut out = Vec::with_capacity(count);
    let mut seen = vec![false; count];
    for x in 0..t.len() {
        if seen[orbit[x]] {
            continue;
        }
        seen[orbit[x]] = true;
        let mut stab = vec![false; t.len()];
        for &a in &act {
            if cosets[t.add(x, a)] == cosets[x] {
                stab[a] = true;
            }
        }
        out.push(stab);
    }
    out
}

/// Stabilizers of the `G`-orbits on `G/H × G/K`, one per orbit.
pub fn product_stabilizers(t: &Table, h_cosets: &[usize], k_cosets: &[usize]) -> Vec<Vec<bool>> {
    let nh = h_cosets.iter().max().unwrap() + 1;
    let nk = k_cosets.iter().max().unwrap() + 1;
    let mut rep_h = vec![usize::MAX; nh];
    let mut rep_k = vec![usize::MAX; nk];
    for x in 0..t.len() {
        if rep_h[h_cosets[x]] == usize::MAX {
            rep_h[h_cosets[x]] = x;
        }
        if rep_k[k_cosets[x]] == usize::MAX {
            rep_k[k_cosets[x]] = x;
        }
    }
    let point = |a: usize, b: usize| a * nk + b;
    let mut uf = UnionFind::new(nh * nk);
    for a in 0..nh {
        for b in 0..nk {
            for g in 0..t.len() {
                let p = point(h_cosets[t.add(rep_h[a], g)], k_cosets[t.add(rep_k[b], g)]);
                uf.union(point(a, b), p);
            }
        }
    }
    let orbit = uf.labels();
    let mut seen = vec![false; nh * nk];
    let mut out = Vec::new();
    for a in 0..nh {
        for b in 0..nk {
            let o = orbit[point(a, b)];
            if seen[o] {
                continue;
            }
            seen[o] = true;
            let (x, y) = (rep_h[a], rep_k[b]);
            let stab = (0..t.len())
                .map(|g| h_cosets[t.add(x, g)] == a && k_cosets[t.add(y, g)] == b)
                .collect();
            out.push(stab);
        }
    }
    out
}
