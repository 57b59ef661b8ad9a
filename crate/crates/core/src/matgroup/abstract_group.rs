//! Finite groups given by a Cayley table.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Isomorphism type among the small families the classification needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AbstractGroupId {
    Trivial,
    Cyclic(usize),
    /// Dihedral group of the given order; `Dihedral(4)` is the Klein four-group.
    Dihedral(usize),
    Alt4,
    Sym4,
    Alt5,
    Sym3,
    Other(usize),
}

impl AbstractGroupId {
    pub fn order(&self) -> usize {
        match *self {
            AbstractGroupId::Trivial => 1,
            AbstractGroupId::Cyclic(n) | AbstractGroupId::Dihedral(n) | AbstractGroupId::Other(n) => n,
            AbstractGroupId::Alt4 => 12,
            AbstractGroupId::Sym4 => 24,
            AbstractGroupId::Alt5 => 60,
            AbstractGroupId::Sym3 => 6,
        }
    }

    /// Trivial, cyclic or dihedral (the Klein four-group and `S_3` included).
    pub fn is_cyclic_or_dihedral(&self) -> bool {
        matches!(
            self,
            AbstractGroupId::Trivial
                | AbstractGroupId::Cyclic(_)
                | AbstractGroupId::Dihedral(_)
                | AbstractGroupId::Sym3
        )
    }

    pub fn is_polyhedral(&self) -> bool {
        matches!(self, AbstractGroupId::Alt4 | AbstractGroupId::Sym4 | AbstractGroupId::Alt5)
    }

    /// Same group up to the `S_3 = D_6` identification.
    pub fn same_as(&self, other: &AbstractGroupId) -> bool {
        let norm = |g: &AbstractGroupId| match g {
            AbstractGroupId::Sym3 => AbstractGroupId::Dihedral(6),
            x => *x,
        };
        norm(self) == norm(other)
    }
}

impl fmt::Display for AbstractGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbstractGroupId::Trivial => write!(f, "1"),
            AbstractGroupId::Cyclic(n) => write!(f, "C{n}"),
            AbstractGroupId::Dihedral(n) => write!(f, "D{n}"),
            AbstractGroupId::Alt4 => write!(f, "A4"),
            AbstractGroupId::Sym4 => write!(f, "S4"),
            AbstractGroupId::Alt5 => write!(f, "A5"),
            AbstractGroupId::Sym3 => write!(f, "S3"),
            AbstractGroupId::Other(n) => write!(f, "order {n}"),
        }
    }
}

/// A subgroup or subset, as sorted element indices.
pub type Subset = Vec<usize>;

/// A finite group on elements `0..n`, with `0` the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    /// `element = parent · generators[gen]` along a breadth-first spanning tree.
    tree: Vec<Option<(usize, usize)>>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking the axioms.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != n * n || n == 0 {
            return Err(Error::NotClosed("table has the wrong size".into()));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::NotClosed("entry out of range".into()));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::NotClosed("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u32;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::NotClosed(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(Error::NotClosed("table is not associative".into()));
                    }
                }
            }
        }
        let mut g = FiniteGroup { n, table, inv, generators: Vec::new(), tree: Vec::new() };
        let gens = g.small_generating_set(&(0..n).collect::<Vec<_>>());
        g.set_generators(gens);
        Ok(g)
    }

    /// Table-based constructor for callers that already know the table is a
    /// group (closures), with the generator indices and spanning tree they
    /// computed.
    pub(crate) fn from_closure(
        n: usize,
        table: Vec<u32>,
        generators: Vec<usize>,
        tree: Vec<Option<(usize, usize)>>,
    ) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        FiniteGroup { n, table, inv, generators, tree }
    }

    /// Builds a group table from right-multiplication-by-generator maps and
    /// a spanning tree: `right[e][k]` is the index of `e · g_k`.
    pub(crate) fn from_right_actions(
        right: &[Vec<usize>],
        generators: Vec<usize>,
        tree: Vec<Option<(usize, usize)>>,
        bfs_order: &[usize],
    ) -> Self {
        let n = right.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for &b in bfs_order {
                let v = match tree[b] {
                    None => a,
                    Some((p, k)) => right[table[a * n + p] as usize][k],
                };
                table[a * n + b] = v as u32;
            }
        }
        FiniteGroup::from_closure(n, table, generators, tree)
    }

    /// The permutation group generated by the given permutations of `0..m`.
    pub fn from_permutations(gens: &[Vec<u32>], cap: usize) -> Result<(Self, Vec<Vec<u32>>)> {
        let m = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let mut seen = vec![false; m];
            if g.len() != m || g.iter().any(|&x| x as usize >= m || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(Error::NotAnAction("generator is not a permutation".into()));
            }
        }
        let identity: Vec<u32> = (0..m as u32).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut tree = vec![None];
        let mut queue = VecDeque::from([0usize]);
        let mut order = Vec::new();
        while let Some(e) = queue.pop_front() {
            order.push(e);
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                // e · g acts as e ∘ g
                let p: Vec<u32> = g.iter().map(|&x| elems[e][x as usize]).collect();
                let idx = match index.get(&p) {
                    Some(&i) => i,
                    None => {
                        let i = elems.len();
                        if i >= cap {
                            return Err(Error::OrderCapExceeded { cap });
                        }
                        index.insert(p.clone(), i);
                        elems.push(p);
                        tree.push(Some((e, k)));
                        queue.push_back(i);
                        i
                    }
                };
                row.push(idx);
            }
            if right.len() <= e {
                right.resize(e + 1, Vec::new());
            }
            right[e] = row;
        }
        right.resize(elems.len(), Vec::new());
        let generators: Vec<usize> = gens
            .iter()
            .map(|g| index[g])
            .collect();
        let g = FiniteGroup::from_right_actions(&right, generators, tree, &order);
        Ok((g, elems))
    }

    fn set_generators(&mut self, gens: Vec<usize>) {
        let n = self.n;
        let mut tree = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let x = self.mul(e, g);
                if !seen[x] {
                    seen[x] = true;
                    tree[x] = Some((e, k));
                    queue.push_back(x);
                }
            }
        }
        self.generators = gens;
        self.tree = tree;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Expresses `e` as a word `[k_1, …, k_r]` with `e = g_{k_1}⋯g_{k_r}`.
    pub fn word(&self, mut e: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, k)) = self.tree[e] {
            w.push(k);
            e = p;
        }
        w.reverse();
        w
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for a in 0..self.n {
            *h.entry(self.element_order(a)).or_insert(0) += 1;
        }
        h
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn subgroup_is_abelian(&self, h: &[usize]) -> bool {
        h.iter().all(|&a| h.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by a set of elements.
    pub fn generate(&self, gens: &[usize]) -> Subset {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let x = self.mul(e, g);
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                    queue.push_back(x);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A generating set of the subgroup `h`, chosen greedily by element order.
    pub fn small_generating_set(&self, h: &[usize]) -> Vec<usize> {
        let mut candidates: Vec<usize> = h.iter().copied().filter(|&x| x != 0).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut current = vec![0usize];
        for x in candidates {
            if current.len() == h.len() {
                break;
            }
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = self.generate(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: HashSet<usize> = h.iter().copied().collect();
        set.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: HashSet<usize> = h.iter().copied().collect();
        self.generators.iter().all(|&g| h.iter().all(|&x| set.contains(&self.conj(g, x))))
    }

    pub fn normal_closure(&self, xs: &[usize]) -> Subset {
        let mut gens: Vec<usize> = Vec::new();
        for &x in xs {
            for g in 0..self.n {
                gens.push(self.conj(g, x));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.generate(&gens)
    }

    pub fn conjugacy_classes(&self) -> Vec<Subset> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.n).map(|g| self.conj(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn center(&self) -> Subset {
        (0..self.n)
            .filter(|&a| self.generators.iter().all(|&g| self.mul(a, g) == self.mul(g, a)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Subset {
        let mut comms: Vec<usize> = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                comms.push(self.commutator(a, b));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generate(&comms)
    }

    /// The subgroup `h` as a group in its own right, with the embedding map.
    pub fn subgroup(&self, h: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let pos: HashMap<usize, usize> = h.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let m = h.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in h.iter().enumerate() {
            for (j, &b) in h.iter().enumerate() {
                table[i * m + j] = pos[&self.mul(a, b)] as u32;
            }
        }
        let mut g = FiniteGroup::from_closure(m, table, Vec::new(), Vec::new());
        let gens = g.small_generating_set(&(0..m).collect::<Vec<_>>());
        g.set_generators(gens);
        (g, h.to_vec())
    }

    /// Quotient by a normal subgroup, with the projection of every element.
    pub fn quotient(&self, normal: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut coset = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for a in 0..self.n {
            if coset[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &k in normal {
                coset[self.mul(a, k)] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset[self.mul(a, b)] as u32;
            }
        }
        let mut g = FiniteGroup::from_closure(m, table, Vec::new(), Vec::new());
        let gens = g.small_generating_set(&(0..m).collect::<Vec<_>>());
        g.set_generators(gens);
        (g, coset)
    }

    /// All normal subgroups, as joins of normal closures of conjugacy classes.
    pub fn normal_subgroups(&self) -> Vec<Subset> {
        let mut found: Vec<Subset> = Vec::new();
        let mut seen: HashSet<Subset> = HashSet::new();
        let trivial = vec![0usize];
        seen.insert(trivial.clone());
        found.push(trivial);
        let minimal: Vec<Subset> = self
            .conjugacy_classes()
            .into_iter()
            .map(|c| self.normal_closure(&c[..1]))
            .filter(|s| seen.insert(s.clone()))
            .collect();
        found.extend(minimal.iter().cloned());
        let mut frontier = minimal.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for t in &minimal {
                    let mut gens = s.clone();
                    gens.extend_from_slice(t);
                    let gens = self.small_generating_set(&{
                        let mut u = gens.clone();
                        u.sort_unstable();
                        u.dedup();
                        u
                    });
                    let j = self.generate(&gens);
                    if seen.insert(j.clone()) {
                        next.push(j.clone());
                        found.push(j);
                    }
                }
            }
            frontier = next;
        }
        found.sort_by_key(|s| (s.len(), s.clone()));
        found
    }

    pub fn is_simple(&self) -> bool {
        self.n > 1 && self.normal_subgroups().iter().all(|s| s.len() == 1 || s.len() == self.n)
    }

    /// Invariant factors `d_1 | d_2 | …` of an abelian subgroup (all `> 1`).
    pub fn abelian_invariants(&self, h: &[usize]) -> Vec<usize> {
        debug_assert!(self.subgroup_is_abelian(h));
        let order = h.len();
        let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
        for p in crate::exact_arith::prime_factors(order as u64).into_iter().map(|p| p as usize) {
            // c_k = #{x : x^{p^k} = 1}
            let mut counts = vec![1usize];
            let mut pk = 1;
            loop {
                pk *= p;
                let c = h.iter().filter(|&&x| self.pow(x, pk) == 0).count();
                if c == *counts.last().expect("nonempty") {
                    break;
                }
                counts.push(c);
            }
            // number of cyclic factors of order >= p^k is log_p(c_k / c_{k-1})
            let at_least: Vec<u32> = counts.windows(2).map(|w| ilog(w[1] / w[0], p)).collect();
            let mut exps = Vec::new();
            for (k, &cnt) in at_least.iter().enumerate() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(cnt - next) {
                    exps.push(k as u32 + 1);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            per_prime.push((p, exps));
        }
        let rank = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors = vec![1usize; rank];
        for (p, exps) in &per_prime {
            for (i, &e) in exps.iter().enumerate() {
                factors[rank - 1 - i] *= p.pow(e);
            }
        }
        factors
    }

    /// Minimal number of generators of an abelian subgroup.
    pub fn abelian_rank(&self, h: &[usize]) -> usize {
        self.abelian_invariants(h).len()
    }

    /// Image of every element under the homomorphism determined by the images
    /// of the generators, as permutations composed left-to-right like
    /// matrices. Fails when the images do not define a homomorphism.
    pub fn extend_to_permutations(&self, gen_images: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
        assert_eq!(gen_images.len(), self.generators.len());
        let m = gen_images.first().map_or(0, |p| p.len());
        let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { b.iter().map(|&x| a[x as usize]).collect() };
        let mut img: Vec<Option<Vec<u32>>> = vec![None; self.n];
        img[0] = Some((0..m as u32).collect());
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&e| self.word(e).len());
        for e in order {
            if let Some((p, k)) = self.tree[e] {
                let base = img[p].as_ref().expect("parent precedes child");
                img[e] = Some(compose(base, &gen_images[k]));
            }
        }
        let img: Vec<Vec<u32>> = img.into_iter().map(|x| x.expect("spanning tree covers the group")).collect();
        for a in 0..self.n {
            for (k, &g) in self.generators.iter().enumerate() {
                if compose(&img[a], &gen_images[k]) != img[self.mul(a, g)] {
                    return Err(Error::NotAnAction("generator images violate a group relation".into()));
                }
            }
        }
        Ok(img)
    }

    /// Isomorphism type among trivial, cyclic, dihedral, `A_4`, `S_4`, `A_5`.
    pub fn recognize(&self) -> AbstractGroupId {
        let n = self.n;
        if n == 1 {
            return AbstractGroupId::Trivial;
        }
        let hist = self.order_histogram();
        if hist.contains_key(&n) {
            return AbstractGroupId::Cyclic(n);
        }
        if self.is_abelian() {
            return if n == 4 { AbstractGroupId::Dihedral(4) } else { AbstractGroupId::Other(n) };
        }
        if n.is_multiple_of(2) && self.is_dihedral() {
            return AbstractGroupId::Dihedral(n);
        }
        let h = |k: usize| hist.get(&k).copied().unwrap_or(0);
        match n {
            12 if h(3) == 8 && hist.keys().all(|&k| k <= 3) => AbstractGroupId::Alt4,
            24 if h(1) == 1 && h(2) == 9 && h(3) == 8 && h(4) == 6 => AbstractGroupId::Sym4,
            60 if h(1) == 1 && h(2) == 15 && h(3) == 20 && h(5) == 24 && self.is_simple() => AbstractGroupId::Alt5,
            _ => AbstractGroupId::Other(n),
        }
    }

    fn is_dihedral(&self) -> bool {
        let half = self.n / 2;
        (0..self.n).filter(|&r| self.element_order(r) == half).any(|r| {
            let rot: HashSet<usize> = self.generate(&[r]).into_iter().collect();
            (0..self.n).filter(|x| !rot.contains(x)).all(|x| self.element_order(x) == 2)
        })
    }
}

fn ilog(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Exhaustive isomorphism test by extending generator images.
pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() || a.order_histogram() != b.order_histogram() {
        return false;
    }
    let gens = a.small_generating_set(&(0..a.order()).collect::<Vec<_>>());
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..b.order()).filter(|&y| b.element_order(y) == a.element_order(g)).collect())
        .collect();
    // breadth-first words of `a` over `gens`
    let n = a.order();
    let mut tree: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let e = order[i];
        for (k, &g) in gens.iter().enumerate() {
            let x = a.mul(e, g);
            if !seen[x] {
                seen[x] = true;
                tree[x] = Some((e, k));
                order.push(x);
            }
        }
        i += 1;
    }
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if try_extend(a, b, &gens, &images, &tree, &order) {
            return true;
        }
        // odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn try_extend(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    tree: &[Option<(usize, usize)>],
    order: &[usize],
) -> bool {
    let n = a.order();
    let mut phi = vec![usize::MAX; n];
    phi[0] = 0;
    for &e in &order[1..] {
        let (p, k) = tree[e].expect("non-identity has a parent");
        phi[e] = b.mul(phi[p], images[k]);
    }
    let mut hit = vec![false; n];
    for &y in &phi {
        if std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..n).all(|x| gens.iter().zip(images).all(|(&g, &img)| phi[a.mul(x, g)] == b.mul(phi[x], img)))
}

/// Permutation models used as references in tests and for abstract inputs.
pub mod models {
    use super::*;

    pub fn cyclic(n: usize) -> FiniteGroup {
        let gen: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        FiniteGroup::from_permutations(&[gen], usize::MAX).expect("cyclic").0
    }

    pub fn dihedral(order: usize) -> FiniteGroup {
        let n = order / 2;
        let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
        FiniteGroup::from_permutations(&[rot, refl], usize::MAX).expect("dihedral").0
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let mut swap: Vec<u32> = (0..n as u32).collect();
        swap.swap(0, 1);
        FiniteGroup::from_permutations(&[cycle, swap], usize::MAX).expect("symmetric").0
    }

    /// Alternating group generated by the 3-cycles `(0 1 k)`.
    pub fn alternating(n: usize) -> FiniteGroup {
        let gens: Vec<Vec<u32>> = (2..n)
            .map(|k| {
                let mut p: Vec<u32> = (0..n as u32).collect();
                p[0] = 1;
                p[1] = k as u32;
                p[k] = 0;
                p
            })
            .collect();
        FiniteGroup::from_permutations(&gens, usize::MAX).expect("alternating").0
    }

    /// Direct product of cyclic groups of the given orders.
    pub fn abelian(orders: &[usize]) -> FiniteGroup {
        let total: usize = orders.iter().sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for &m in orders {
            let mut p: Vec<u32> = (0..total as u32).collect();
            for i in 0..m {
                p[offset + i] = (offset + (i + 1) % m) as u32;
            }
            gens.push(p);
            offset += m;
        }
        if gens.is_empty() {
            gens.push(vec![0]);
        }
        FiniteGroup::from_permutations(&gens, usize::MAX).expect("abelian").0
    }
}

#[cfg(test)]
mod tests {
    use super::models::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn model_orders() {
        assert_eq!(cyclic(6).order(), 6);
        assert_eq!(dihedral(10).order(), 10);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
    }

    #[test]
    fn recognition_matches_isomorphism_oracle() {
        let cases: Vec<(FiniteGroup, AbstractGroupId)> = vec![
            (cyclic(1), AbstractGroupId::Trivial),
            (cyclic(2), AbstractGroupId::Cyclic(2)),
            (cyclic(7), AbstractGroupId::Cyclic(7)),
            (abelian(&[2, 2]), AbstractGroupId::Dihedral(4)),
            (dihedral(10), AbstractGroupId::Dihedral(10)),
            (symmetric(3), AbstractGroupId::Dihedral(6)),
            (alternating(4), AbstractGroupId::Alt4),
            (symmetric(4), AbstractGroupId::Sym4),
            (alternating(5), AbstractGroupId::Alt5),
            (abelian(&[3, 3]), AbstractGroupId::Other(9)),
            (dihedral(24), AbstractGroupId::Dihedral(24)),
        ];
        for (g, want) in &cases {
            assert_eq!(g.recognize(), *want);
            let model = match want {
                AbstractGroupId::Trivial => cyclic(1),
                AbstractGroupId::Cyclic(n) => cyclic(*n),
                AbstractGroupId::Dihedral(4) => abelian(&[2, 2]),
                AbstractGroupId::Dihedral(n) => dihedral(*n),
                AbstractGroupId::Alt4 => alternating(4),
                AbstractGroupId::Sym4 => symmetric(4),
                AbstractGroupId::Alt5 => alternating(5),
                _ => continue,
            };
            assert!(is_isomorphic(g, &model));
        }
    }

    #[test]
    fn look_alikes_are_separated() {
        // C2 x C6 and D12 share order; A4 and D12 share order 12
        assert_eq!(abelian(&[2, 6]).recognize(), AbstractGroupId::Other(12));
        assert!(!is_isomorphic(&alternating(4), &dihedral(12)));
        assert!(!is_isomorphic(&abelian(&[2, 6]), &dihedral(12)));
        // SL(2,3) has order 24 but is not S4
        assert!(!is_isomorphic(&symmetric(4), &abelian(&[2, 3, 4])));
    }

    #[test]
    fn structure_of_s4() {
        let g = symmetric(4);
        let classes = g.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(g.derived_subgroup().len(), 12);
        assert_eq!(g.center().len(), 1);
        let normals: Vec<usize> = g.normal_subgroups().iter().map(Vec::len).collect();
        assert_eq!(normals, vec![1, 4, 12, 24]);
        let (q, _) = g.quotient(&g.normal_subgroups()[1]);
        assert_eq!(q.recognize(), AbstractGroupId::Dihedral(6));
    }

    #[test]
    fn a5_is_simple() {
        assert!(alternating(5).is_simple());
        assert!(!alternating(4).is_simple());
    }

    #[test]
    fn abelian_invariants_and_rank() {
        let g = abelian(&[2, 4, 3]);
        let all: Vec<usize> = (0..g.order()).collect();
        assert_eq!(g.abelian_invariants(&all), vec![2, 12]);
        assert_eq!(g.abelian_rank(&all), 2);
        let g = abelian(&[2, 2, 2]);
        let all: Vec<usize> = (0..g.order()).collect();
        assert_eq!(g.abelian_rank(&all), 3);
        let g = cyclic(6);
        assert_eq!(g.abelian_invariants(&(0..6).collect::<Vec<_>>()), vec![6]);
    }

    #[test]
    fn permutation_extension_detects_non_actions() {
        let g = cyclic(3);
        let ok = g.extend_to_permutations(&[vec![1, 2, 0]]).unwrap();
        assert_eq!(ok.len(), 3);
        // a transposition cannot be the image of an element of order 3
        assert!(g.extend_to_permutations(&[vec![1, 0, 2]]).is_err());
    }

    #[test]
    fn table_axioms_checked() {
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        let g = FiniteGroup::from_table(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(g.recognize(), AbstractGroupId::Cyclic(2));
    }

    proptest! {
        #[test]
        fn lagrange_for_classes_and_normal_subgroups(which in 0usize..6) {
            let g = match which {
                0 => symmetric(4),
                1 => alternating(4),
                2 => dihedral(16),
                3 => abelian(&[2, 6]),
                4 => dihedral(18),
                _ => alternating(5),
            };
            let n = g.order();
            let classes = g.conjugacy_classes();
            prop_assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), n);
            for c in &classes {
                prop_assert_eq!(n % c.len(), 0);
            }
            for s in g.normal_subgroups() {
                prop_assert_eq!(n % s.len(), 0);
                prop_assert!(g.is_subgroup(&s));
                prop_assert!(g.is_normal(&s));
            }
        }
    }
}
