use crate::error::{Error, Result};
use rayon::prelude::*;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

/// Multiplication table of a finite group. Index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    pub order: usize,
    pub labels: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub generator_indices: Vec<usize>,
}

/// A map between group tables given by the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMap {
    pub images: Vec<usize>,
    pub bijective: bool,
}

impl GroupMap {
    pub fn identity(order: usize) -> Self {
        GroupMap { images: (0..order).collect(), bijective: true }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
            bijective: self.bijective && other.bijective,
        }
    }

    pub fn inverse(&self) -> GroupMap {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        GroupMap { images, bijective: self.bijective }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }
}

/// Elements produced by closure, carried alongside their table.
pub struct Closure<T> {
    pub table: FiniteGroupTable,
    pub elements: Vec<T>,
}

/// Closes `generators` under multiplication.
///
/// Elements are compared through `Eq + Hash`, so the representation must be canonical.
/// Only `order * generators` products are evaluated with `mul`; the rest of the table
/// is filled in by composing right-multiplications along spanning-tree words.
pub fn group_closure<T, M, L>(
    identity: T,
    generators: &[T],
    mul: M,
    label: L,
    cap: usize,
) -> Result<Closure<T>>
where
    T: Clone + Eq + Hash,
    M: Fn(&T, &T) -> T,
    L: Fn(&T) -> String,
{
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::new();
    index.insert(identity, 0);
    // word[x] = (parent, generator) with x = parent * gen
    let mut word: Vec<Option<(usize, usize)>> = vec![None];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(x) = queue.pop_front() {
        let mut row = Vec::with_capacity(generators.len());
        for (s, g) in generators.iter().enumerate() {
            let p = mul(&elements[x], g);
            let id = match index.get(&p) {
                Some(&id) => id,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::GroupNotFinite { cap });
                    }
                    let id = elements.len();
                    index.insert(p.clone(), id);
                    elements.push(p);
                    word.push(Some((x, s)));
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        if right.len() <= x {
            right.resize(x + 1, Vec::new());
        }
        right[x] = row;
    }

    let n = elements.len();
    // words in generator indices, root to leaf
    let words: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut w = Vec::new();
            let mut cur = x;
            while let Some((p, s)) = word[cur] {
                w.push(s);
                cur = p;
            }
            w.reverse();
            w
        })
        .collect();

    let mut mul_table = vec![vec![0usize; n]; n];
    for (g, row) in mul_table.iter_mut().enumerate() {
        for (h, w) in words.iter().enumerate() {
            let mut cur = g;
            for &s in w {
                cur = right[cur][s];
            }
            row[h] = cur;
        }
    }
    let inv = (0..n)
        .map(|g| mul_table[g].iter().position(|&p| p == 0).expect("closure of a finite set of invertibles"))
        .collect();
    let generator_indices = generators.iter().map(|g| index[g]).collect();
    let labels = elements.iter().map(&label).collect();
    Ok(Closure {
        table: FiniteGroupTable { order: n, labels, mul: mul_table, inv, generator_indices },
        elements,
    })
}

impl FiniteGroupTable {
    /// Builds a table directly from a multiplication oracle on indices `0..order`
    /// (0 must be the identity).
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize, generators: Vec<usize>) -> Self {
        let mul: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| f(a, b)).collect()).collect();
        let inv = (0..order).map(|g| mul[g].iter().position(|&p| p == 0).expect("no inverse")).collect();
        FiniteGroupTable {
            order,
            labels: (0..order).map(|i| format!("g{i}")).collect(),
            mul,
            inv,
            generator_indices: generators,
        }
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut cur = x;
        while cur != 0 {
            cur = self.mul[cur][x];
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.element_order(x)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| (0..self.order).all(|g| self.mul[z][g] == self.mul[g][z])).collect()
    }

    /// Exhaustive check of identity, inverses and associativity.
    pub fn verify_axioms(&self) -> bool {
        let n = self.order;
        let identity = (0..n).all(|g| self.mul[0][g] == g && self.mul[g][0] == g);
        let inverses = (0..n).all(|g| self.mul[g][self.inv[g]] == 0 && self.mul[self.inv[g]][g] == 0);
        let assoc = (0..n).into_par_iter().all(|a| {
            (0..n).all(|b| {
                let ab = self.mul[a][b];
                (0..n).all(|c| self.mul[ab][c] == self.mul[a][self.mul[b][c]])
            })
        });
        identity && inverses && assoc
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let p = self.mul[x][s];
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated_subgroup(gens).len() == self.order
    }

    pub fn conjugation(&self, g: usize) -> GroupMap {
        let gi = self.inv[g];
        GroupMap { images: (0..self.order).map(|x| self.mul[self.mul[g][x]][gi]).collect(), bijective: true }
    }

    /// Checks that `map` respects the tables (source = target = self).
    pub fn is_homomorphism(&self, map: &GroupMap) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| map.images[self.mul[a][b]] == self.mul[map.images[a]][map.images[b]]))
    }

    /// A small generating set minimising the number of order-compatible image tuples.
    pub fn search_generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut class_size: HashMap<usize, usize> = HashMap::new();
        for &o in &orders {
            *class_size.entry(o).or_default() += 1;
        }
        let cost = |x: usize| class_size[&orders[x]];
        if self.order == 1 {
            return vec![];
        }
        let mut singles: Vec<usize> = (1..self.order).collect();
        singles.sort_by_key(|&x| (cost(x), x));
        if let Some(&g) = singles.iter().find(|&&g| orders[g] == self.order) {
            return vec![g];
        }
        let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
        for a in 1..self.order {
            for b in a + 1..self.order {
                pairs.push((cost(a) * cost(b), a, b));
            }
        }
        pairs.sort_unstable();
        for (_, a, b) in pairs {
            if self.generates(&[a, b]) {
                return vec![a, b];
            }
        }
        // fall back to a greedy set
        let mut gens = Vec::new();
        let mut covered = self.generated_subgroup(&gens);
        for x in singles {
            if covered.len() == self.order {
                break;
            }
            if !covered.contains(&x) {
                gens.push(x);
                covered = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// Extends images of `gens` to a map defined on every element, if the
    /// assignment is consistent with the table.
    pub fn extend_map(&self, gens: &[usize], images: &[usize]) -> Option<GroupMap> {
        let mut img = vec![usize::MAX; self.order];
        img[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut order_seen = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for (s, &g) in gens.iter().enumerate() {
                let p = self.mul[x][g];
                let want = self.mul[img[x]][images[s]];
                if img[p] == usize::MAX {
                    img[p] = want;
                    queue.push_back(p);
                    order_seen.push(p);
                } else if img[p] != want {
                    return None;
                }
            }
        }
        if order_seen.len() != self.order {
            return None;
        }
        let mut hit = vec![false; self.order];
        for &y in &img {
            if hit[y] {
                return None;
            }
            hit[y] = true;
        }
        Some(GroupMap { images: img, bijective: true })
    }
}

/// All automorphisms, sorted by image list.
pub fn automorphism_group(g: &FiniteGroupTable) -> Vec<GroupMap> {
    if g.order == 1 {
        return vec![GroupMap::identity(1)];
    }
    let gens = g.search_generating_set();
    let orders = g.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..g.order).filter(|&y| orders[y] == orders[s]).collect())
        .collect();

    let first = &candidates[0];
    let mut auts: Vec<GroupMap> = first
        .par_iter()
        .flat_map_iter(|&y0| {
            let mut found = Vec::new();
            let mut images = vec![y0];
            enumerate_images(g, &gens, &candidates, &mut images, &mut found);
            found
        })
        .collect();
    auts.sort();
    auts
}

fn enumerate_images(
    g: &FiniteGroupTable,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    found: &mut Vec<GroupMap>,
) {
    if images.len() == gens.len() {
        if let Some(m) = g.extend_map(gens, images) {
            found.push(m);
        }
        return;
    }
    for &y in &candidates[images.len()] {
        images.push(y);
        enumerate_images(g, gens, candidates, images, found);
        images.pop();
    }
}

/// Distinct inner automorphisms, sorted.
pub fn inner_automorphisms(g: &FiniteGroupTable) -> Vec<GroupMap> {
    let set: HashSet<GroupMap> = (0..g.order).map(|x| g.conjugation(x)).collect();
    let mut v: Vec<GroupMap> = set.into_iter().collect();
    v.sort();
    v
}

/// Outer automorphism classes of a finite group.
#[derive(Clone, Debug)]
pub struct OuterClasses {
    /// One representative per coset, the smallest in the sorted Aut list.
    pub representatives: Vec<GroupMap>,
    /// `class_of[i]` is the coset index of `auts[i]`.
    pub class_of: Vec<usize>,
    pub inner_count: usize,
}

pub fn outer_classes(g: &FiniteGroupTable, auts: &[GroupMap]) -> OuterClasses {
    let inner = inner_automorphisms(g);
    let position: HashMap<&GroupMap, usize> = auts.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut class_of = vec![usize::MAX; auts.len()];
    let mut representatives = Vec::new();
    for i in 0..auts.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(auts[i].clone());
        for inn in &inner {
            let m = auts[i].compose(inn);
            let j = position[&m];
            class_of[j] = c;
        }
    }
    OuterClasses { representatives, class_of, inner_count: inner.len() }
}

impl OuterClasses {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    /// Index of the outer class containing `m`.
    pub fn class_index(&self, auts: &[GroupMap], m: &GroupMap) -> usize {
        let i = auts.binary_search(m).expect("map is not an automorphism in the list");
        self.class_of[i]
    }

    /// Multiplication table of Out = Aut/Inn.
    pub fn quotient_table(&self, auts: &[GroupMap]) -> FiniteGroupTable {
        let k = self.count();
        let ident_class = self.class_index(auts, &GroupMap::identity(auts[0].images.len()));
        // order classes so that the identity class is index 0
        let mut order: Vec<usize> = (0..k).collect();
        order.swap(0, ident_class);
        let mut pos = vec![0; k];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        FiniteGroupTable::from_fn(
            k,
            |a, b| {
                let m = self.representatives[order[a]].compose(&self.representatives[order[b]]);
                pos[self.class_index(auts, &m)]
            },
            vec![],
        )
    }
}

/// Short structural name for small groups: `1`, `C2`, `S3`, ...
pub fn structure_tag(g: &FiniteGroupTable) -> String {
    let n = g.order;
    if n == 1 {
        return "1".into();
    }
    let orders = g.element_orders();
    if orders.contains(&n) {
        return format!("C{n}");
    }
    if n == 6 {
        return "S3".into();
    }
    if n == 4 {
        return "V4".into();
    }
    format!("order{n}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroupTable {
        FiniteGroupTable::from_fn(n, |a, b| (a + b) % n, vec![1])
    }

    #[test]
    fn cyclic_five_automorphisms() {
        let c5 = cyclic(5);
        assert!(c5.verify_axioms());
        assert_eq!(automorphism_group(&c5).len(), 4);
    }

    #[test]
    fn abelian_out_equals_aut() {
        let c8 = cyclic(8);
        let auts = automorphism_group(&c8);
        let outer = outer_classes(&c8, &auts);
        assert_eq!(outer.inner_count, 1);
        assert_eq!(outer.count(), auts.len());
    }

    #[test]
    fn integer_closure_mod_seven() {
        let c = group_closure(1u32, &[3u32], |a, b| a * b % 7, |x| x.to_string(), 100).unwrap();
        assert_eq!(c.table.order, 6);
        assert!(c.table.verify_axioms());
    }

    #[test]
    fn closure_cap() {
        let r = group_closure(0u64, &[1u64], |a, b| a + b, |x| x.to_string(), 50);
        assert!(matches!(r, Err(Error::GroupNotFinite { cap: 50 })));
    }
}
