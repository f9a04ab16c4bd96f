use std::collections::HashMap;

use super::category::{MorphId, OmegaCategory};
use super::complex::{union, CellComplex, CellId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PastingTree {
    Leaf(CellId),
    Node(usize, Box<PastingTree>, Box<PastingTree>),
}

impl PastingTree {
    pub fn leaves(&self) -> Vec<CellId> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<CellId>) {
        match self {
            PastingTree::Leaf(c) => out.push(*c),
            PastingTree::Node(_, l, r) => {
                l.collect(out);
                r.collect(out);
            }
        }
    }

    /// Renames leaves, keeping the shape.
    pub fn map_leaves(&self, f: &impl Fn(CellId) -> CellId) -> PastingTree {
        match self {
            PastingTree::Leaf(c) => PastingTree::Leaf(f(*c)),
            PastingTree::Node(p, l, r) => PastingTree::Node(*p, Box::new(l.map_leaves(f)), Box::new(r.map_leaves(f))),
        }
    }

    pub fn render(&self, complex: &CellComplex) -> String {
        match self {
            PastingTree::Leaf(c) => complex.cell(*c).label.clone(),
            PastingTree::Node(p, l, r) => format!("({} *{} {})", l.render(complex), p, r.render(complex)),
        }
    }
}

/// Memoizing decomposer for molecules of one complex.
pub struct Decomposer<'a> {
    complex: &'a CellComplex,
    memo: HashMap<Vec<CellId>, Option<PastingTree>>,
}

/// Subsets of the tall maximal cells tried exhaustively up to this count.
const EXHAUSTIVE_SPLIT: usize = 12;

impl<'a> Decomposer<'a> {
    pub fn new(complex: &'a CellComplex) -> Self {
        Decomposer { complex, memo: HashMap::new() }
    }

    pub fn decompose(&mut self, set: &[CellId]) -> Result<PastingTree> {
        self.search(set).ok_or(Error::NotDecomposable)
    }

    fn search(&mut self, set: &[CellId]) -> Option<PastingTree> {
        if let Some(hit) = self.memo.get(set) {
            return hit.clone();
        }
        let found = self.split(set);
        self.memo.insert(set.to_vec(), found.clone());
        found
    }

    fn split(&mut self, set: &[CellId]) -> Option<PastingTree> {
        let cx = self.complex;
        if set.is_empty() {
            return None;
        }
        let maximal = cx.maximal_cells(set);
        if maximal.len() == 1 {
            return (cx.cell(maximal[0]).closure == set).then_some(PastingTree::Leaf(maximal[0]));
        }
        let dim = cx.dim_of(set);
        for p in (0..dim).rev() {
            let tall: Vec<CellId> = maximal.iter().copied().filter(|&c| cx.cell(c).dim > p).collect();
            if tall.len() < 2 {
                continue;
            }
            let s = cx.boundary(set, p, false);
            let t = cx.boundary(set, p, true);
            for left in Self::candidates(tall.len()) {
                let (l, r): (Vec<CellId>, Vec<CellId>) = {
                    let mut l = Vec::new();
                    let mut r = Vec::new();
                    for (k, &c) in tall.iter().enumerate() {
                        if left[k] {
                            l.push(c);
                        } else {
                            r.push(c);
                        }
                    }
                    (l, r)
                };
                let a = union(&s, &cx.closure_of(l));
                let b = union(&t, &cx.closure_of(r));
                if union(&a, &b) != set {
                    continue;
                }
                if cx.compose(&a, &b, p).is_none() {
                    continue;
                }
                if let (Some(ta), Some(tb)) = (self.search(&a), self.search(&b)) {
                    return Some(PastingTree::Node(p, Box::new(ta), Box::new(tb)));
                }
            }
        }
        None
    }

    /// Nonempty proper subsets as membership masks, smallest first; for
    /// many cells only prefixes and single cells are tried.
    fn candidates(n: usize) -> Vec<Vec<bool>> {
        if n <= EXHAUSTIVE_SPLIT {
            let mut masks: Vec<u32> = (1..(1u32 << n) - 1).collect();
            masks.sort_by_key(|m| (m.count_ones(), *m));
            masks.into_iter().map(|m| (0..n).map(|k| m >> k & 1 == 1).collect()).collect()
        } else {
            let mut out = Vec::new();
            for k in 1..n {
                out.push((0..n).map(|i| i < k).collect());
            }
            for k in 0..n {
                out.push((0..n).map(|i| i == k).collect());
            }
            out
        }
    }
}

/// Evaluates a pasting tree in `target`, sending each leaf through `image`.
pub fn evaluate(
    tree: &PastingTree,
    target: &OmegaCategory,
    image: &impl Fn(CellId) -> MorphId,
) -> Result<MorphId> {
    match tree {
        PastingTree::Leaf(c) => Ok(image(*c)),
        PastingTree::Node(p, l, r) => {
            let a = evaluate(l, target, image)?;
            let b = evaluate(r, target, image)?;
            target.compose(a, b, *p).ok_or(Error::IncompatibleAssignment)
        }
    }
}

/// Same as [`evaluate`] but returns `None` instead of an error; used in
/// the enumeration hot path.
pub fn try_evaluate(tree: &PastingTree, target: &OmegaCategory, image: &impl Fn(CellId) -> MorphId) -> Option<MorphId> {
    match tree {
        PastingTree::Leaf(c) => Some(image(*c)),
        PastingTree::Node(p, l, r) => {
            let a = try_evaluate(l, target, image)?;
            let b = try_evaluate(r, target, image)?;
            target.compose(a, b, *p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::category::DEFAULT_BUDGET;

    fn ids(c: &CellComplex, words: &[&str]) -> Vec<CellId> {
        c.closure_of(words.iter().map(|w| c.cells().iter().position(|x| &x.label == w).unwrap() as CellId))
    }

    #[test]
    fn atom_is_leaf() {
        let c = CellComplex::cube(2);
        let mut d = Decomposer::new(&c);
        assert_eq!(d.decompose(&ids(&c, &["00"])).unwrap(), PastingTree::Leaf(4));
    }

    #[test]
    fn source_of_three_cube() {
        let c = CellComplex::cube(3);
        let top = ids(&c, &["000"]);
        let s = c.boundary(&top, 1, false);
        let mut d = Decomposer::new(&c);
        let tree = d.decompose(&s).unwrap();
        let s2 = c.boundary(&top, 2, false);
        let tree2 = d.decompose(&s2).unwrap();
        let mut leaves = tree2.leaves();
        leaves.sort_unstable();
        let max = c.maximal_cells(&s2);
        for m in &max {
            assert!(leaves.contains(m));
        }
        assert_eq!(c.closure_of(tree.leaves()), s);
        assert_eq!(c.closure_of(tree2.leaves()), s2);
    }

    #[test]
    fn every_cube_morphism_round_trips() {
        for n in 0..=3 {
            let cat = OmegaCategory::free("I", CellComplex::cube(n), DEFAULT_BUDGET).unwrap();
            let cx = cat.complex().unwrap();
            let mut d = Decomposer::new(cx);
            for m in cat.morphisms() {
                let set = m.cells.as_ref().unwrap();
                let tree = d.decompose(set).unwrap();
                let atom = |c: CellId| cat.lookup_cells(&cx.cell(c).closure).unwrap();
                let v = evaluate(&tree, &cat, &atom).unwrap();
                assert_eq!(cat.morph(v).cells.as_ref(), Some(set));
            }
        }
    }

    #[test]
    fn non_molecule_is_rejected() {
        let c = CellComplex::cube(2);
        let mut d = Decomposer::new(&c);
        // two disjoint edges
        assert!(d.decompose(&ids(&c, &["-0", "+0"])).is_err());
    }
}
