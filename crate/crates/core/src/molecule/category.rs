use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::complex::{is_subset, union, CellComplex, CellId};
use crate::error::{Error, Result};

pub type MorphId = u32;

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub dim: usize,
    /// `src[k]` for `k < dim`.
    pub src: Vec<MorphId>,
    pub tgt: Vec<MorphId>,
    /// Underlying molecule for categories generated by a cell complex.
    pub cells: Option<Vec<CellId>>,
    pub label: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Meta {
    pub non_contracting: bool,
    pub length_at_most_one: bool,
}

/// Finite globular category stored as an explicit table. Compositions
/// `a *_p b` are stored for `p < min(dim a, dim b)`; the remaining cases
/// are unit laws and are resolved on the fly.
#[derive(Clone, Debug)]
pub struct OmegaCategory {
    name: String,
    morphs: Vec<Morphism>,
    by_dim: Vec<Vec<MorphId>>,
    comp: HashMap<(MorphId, MorphId, u8), MorphId>,
    atoms: Vec<MorphId>,
    complex: Option<Arc<CellComplex>>,
    by_cells: HashMap<Vec<CellId>, MorphId>,
    meta: Meta,
}

impl OmegaCategory {
    /// Assembles a category from a table. `comp` lists `(a, b, p, c)` for
    /// `p < min(dim a, dim b)`.
    pub fn from_table(
        name: &str,
        morphs: Vec<Morphism>,
        comp: impl IntoIterator<Item = (MorphId, MorphId, usize, MorphId)>,
        atoms: Vec<MorphId>,
    ) -> OmegaCategory {
        let mut c = OmegaCategory {
            name: name.to_string(),
            morphs: Vec::new(),
            by_dim: Vec::new(),
            comp: HashMap::new(),
            atoms,
            complex: None,
            by_cells: HashMap::new(),
            meta: Meta::default(),
        };
        for m in morphs {
            c.push(m);
        }
        for (a, b, p, r) in comp {
            c.comp.insert((a, b, p as u8), r);
        }
        c.meta = c.compute_meta();
        c
    }

    fn push(&mut self, m: Morphism) -> MorphId {
        let id = self.morphs.len() as MorphId;
        while self.by_dim.len() <= m.dim {
            self.by_dim.push(Vec::new());
        }
        self.by_dim[m.dim].push(id);
        if let Some(cells) = &m.cells {
            self.by_cells.insert(cells.clone(), id);
        }
        self.morphs.push(m);
        id
    }

    fn compute_meta(&self) -> Meta {
        let non_contracting = self.morphs.iter().all(|m| m.dim < 2 || (self.dim(m.src[1]) == 1 && self.dim(m.tgt[1]) == 1));
        let length_at_most_one = self.comp.keys().all(|&(_, _, p)| p != 0);
        Meta { non_contracting, length_at_most_one }
    }

    /// Free category on a loop-free cell complex: atoms are the face
    /// closures of cells, closed under every union composition.
    pub fn free(name: &str, complex: CellComplex, budget: usize) -> Result<OmegaCategory> {
        let complex = Arc::new(complex);
        let mut cat = OmegaCategory {
            name: name.to_string(),
            morphs: Vec::new(),
            by_dim: Vec::new(),
            comp: HashMap::new(),
            atoms: Vec::new(),
            complex: Some(complex.clone()),
            by_cells: HashMap::new(),
            meta: Meta::default(),
        };
        let top = complex.max_dim();
        // by_src[p][s] lists morphisms of dim > p with p-source s
        let mut by_src: Vec<HashMap<MorphId, Vec<MorphId>>> = vec![HashMap::new(); top];
        let mut by_tgt: Vec<HashMap<MorphId, Vec<MorphId>>> = vec![HashMap::new(); top];
        for d in 0..=top {
            let mut queue = VecDeque::new();
            for cell in complex.cells() {
                if cell.dim != d {
                    continue;
                }
                let set = cell.closure.clone();
                let id = match cat.by_cells.get(&set) {
                    Some(&id) => id,
                    None => {
                        let (src, tgt) = cat.atom_boundaries(&complex, &set, d)?;
                        let id = cat.push(Morphism { dim: d, src, tgt, cells: Some(set), label: cell.label.clone() });
                        queue.push_back(id);
                        id
                    }
                };
                cat.atoms.push(id);
            }
            while let Some(m) = queue.pop_front() {
                for p in 0..d {
                    let t = cat.morphs[m as usize].tgt[p];
                    let partners: Vec<MorphId> = by_src[p].get(&t).cloned().unwrap_or_default();
                    for b in partners {
                        if let Some(new) = cat.try_compose(&complex, m, b, p)? {
                            queue.push_back(new);
                        }
                    }
                    let s = cat.morphs[m as usize].src[p];
                    let partners: Vec<MorphId> = by_tgt[p].get(&s).cloned().unwrap_or_default();
                    for a in partners {
                        if let Some(new) = cat.try_compose(&complex, a, m, p)? {
                            queue.push_back(new);
                        }
                    }
                }
                for p in 0..d {
                    let (s, t) = (cat.morphs[m as usize].src[p], cat.morphs[m as usize].tgt[p]);
                    by_src[p].entry(s).or_default().push(m);
                    by_tgt[p].entry(t).or_default().push(m);
                }
                if cat.morphs.len() > budget {
                    return Err(Error::ClosureBudgetExceeded(budget));
                }
            }
        }
        cat.meta = cat.compute_meta();
        Ok(cat)
    }

    fn atom_boundaries(&self, complex: &CellComplex, set: &[CellId], d: usize) -> Result<(Vec<MorphId>, Vec<MorphId>)> {
        let mut src = Vec::with_capacity(d);
        let mut tgt = Vec::with_capacity(d);
        for k in 0..d {
            for (plus, out) in [(false, &mut src), (true, &mut tgt)] {
                let b = complex.boundary(set, k, plus);
                let id = *self.by_cells.get(&b).ok_or(Error::NotDecomposable)?;
                out.push(id);
            }
        }
        Ok((src, tgt))
    }

    /// Records `a *_p b` if the union condition holds; returns the id when
    /// the composite is new.
    fn try_compose(&mut self, complex: &CellComplex, a: MorphId, b: MorphId, p: usize) -> Result<Option<MorphId>> {
        if self.comp.contains_key(&(a, b, p as u8)) {
            return Ok(None);
        }
        let (ma, mb) = (&self.morphs[a as usize], &self.morphs[b as usize]);
        let (ca, cb) = (ma.cells.as_ref().unwrap(), mb.cells.as_ref().unwrap());
        let t = self.morphs[ma.tgt[p] as usize].cells.as_ref().unwrap();
        let meet: Vec<CellId> = ca.iter().copied().filter(|c| cb.binary_search(c).is_ok()).collect();
        if !is_subset(&meet, t) {
            return Ok(None);
        }
        let set = union(ca, cb);
        if let Some(&id) = self.by_cells.get(&set) {
            self.comp.insert((a, b, p as u8), id);
            return Ok(None);
        }
        let dim = ma.dim.max(mb.dim);
        let mut src = Vec::with_capacity(dim);
        let mut tgt = Vec::with_capacity(dim);
        for k in 0..dim {
            let (s, t) = if k < p {
                (self.src(a, k), self.tgt(a, k))
            } else if k == p {
                (self.src(a, p), self.tgt(b, p))
            } else {
                let s = self.compose(self.src(a, k), self.src(b, k), p).ok_or(Error::NotDecomposable)?;
                let t = self.compose(self.tgt(a, k), self.tgt(b, k), p).ok_or(Error::NotDecomposable)?;
                (s, t)
            };
            src.push(s);
            tgt.push(t);
        }
        let label = complex.format(&set);
        let id = self.push(Morphism { dim, src, tgt, cells: Some(set), label });
        self.comp.insert((a, b, p as u8), id);
        Ok(Some(id))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.morphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphs.is_empty()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphs
    }

    pub fn morph(&self, m: MorphId) -> &Morphism {
        &self.morphs[m as usize]
    }

    pub fn dim(&self, m: MorphId) -> usize {
        self.morphs[m as usize].dim
    }

    pub fn label(&self, m: MorphId) -> &str {
        &self.morphs[m as usize].label
    }

    pub fn max_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn of_dim(&self, d: usize) -> &[MorphId] {
        self.by_dim.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn atoms(&self) -> &[MorphId] {
        &self.atoms
    }

    pub fn complex(&self) -> Option<&CellComplex> {
        self.complex.as_deref()
    }

    pub fn meta(&self) -> Meta {
        self.meta
    }

    pub fn lookup_cells(&self, cells: &[CellId]) -> Option<MorphId> {
        self.by_cells.get(cells).copied()
    }

    pub fn lookup_label(&self, label: &str) -> Option<MorphId> {
        self.morphs.iter().position(|m| m.label == label).map(|i| i as MorphId)
    }

    /// s_k, equal to the morphism itself when `k >= dim`.
    pub fn src(&self, m: MorphId, k: usize) -> MorphId {
        let x = &self.morphs[m as usize];
        if k < x.dim {
            x.src[k]
        } else {
            m
        }
    }

    pub fn tgt(&self, m: MorphId, k: usize) -> MorphId {
        let x = &self.morphs[m as usize];
        if k < x.dim {
            x.tgt[k]
        } else {
            m
        }
    }

    pub fn boundary(&self, m: MorphId, k: usize, plus: bool) -> MorphId {
        if plus {
            self.tgt(m, k)
        } else {
            self.src(m, k)
        }
    }

    /// `a *_p b`, or `None` when undefined.
    pub fn compose(&self, a: MorphId, b: MorphId, p: usize) -> Option<MorphId> {
        if self.tgt(a, p) != self.src(b, p) {
            return None;
        }
        if self.dim(a) <= p {
            return Some(b);
        }
        if self.dim(b) <= p {
            return Some(a);
        }
        self.comp.get(&(a, b, p as u8)).copied()
    }

    /// Stored compositions `(a, b, p, a *_p b)` in a deterministic order.
    pub fn compositions(&self) -> Vec<(MorphId, MorphId, usize, MorphId)> {
        let mut v: Vec<_> = self.comp.iter().map(|(&(a, b, p), &c)| (a, b, p as usize, c)).collect();
        v.sort_unstable();
        v
    }

    /// Checks the globular axioms on the whole table.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        for m in &self.morphs {
            for k in 0..m.dim {
                for (side, x) in [("s", m.src[k]), ("t", m.tgt[k])] {
                    if self.dim(x) > k {
                        return Err(format!("{side}_{k} of {} has dimension {}", m.label, self.dim(x)));
                    }
                    for j in 0..k {
                        if self.src(x, j) != m.src[j] || self.tgt(x, j) != m.tgt[j] {
                            return Err(format!("globularity fails for {} at {j} < {k}", m.label));
                        }
                    }
                }
            }
            if m.dim > 0 && self.dim(m.src[m.dim - 1]) == m.dim {
                return Err(format!("{} is its own source", m.label));
            }
        }
        for (a, b, p, c) in self.compositions() {
            let dim = self.dim(c);
            if dim != self.dim(a).max(self.dim(b)) {
                return Err(format!("dimension of {} *_{p} {}", self.label(a), self.label(b)));
            }
            for k in 0..dim {
                let (s, t) = if k < p {
                    (Some(self.src(a, k)), Some(self.tgt(a, k)))
                } else if k == p {
                    (Some(self.src(a, p)), Some(self.tgt(b, p)))
                } else {
                    (
                        self.compose(self.src(a, k), self.src(b, k), p),
                        self.compose(self.tgt(a, k), self.tgt(b, k), p),
                    )
                };
                if s != Some(self.src(c, k)) || t != Some(self.tgt(c, k)) {
                    return Err(format!("boundary {k} of {} *_{p} {}", self.label(a), self.label(b)));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(n: usize) -> OmegaCategory {
        OmegaCategory::free("I", CellComplex::cube(n), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn small_cubes() {
        assert_eq!(cube(0).len(), 1);
        let i1 = cube(1);
        assert_eq!(i1.len(), 3);
        let e = i1.lookup_label("0").unwrap();
        assert_eq!(i1.label(i1.src(e, 0)), "-");
        assert_eq!(i1.label(i1.tgt(e, 0)), "+");
    }

    #[test]
    fn square_sources() {
        let i2 = cube(2);
        let top = i2.lookup_label("00").unwrap();
        assert_eq!(i2.label(i2.src(top, 1)), "{-0,0+}");
        assert_eq!(i2.label(i2.tgt(top, 1)), "{0-,+0}");
        assert!(i2.check_axioms().is_ok());
        assert!(i2.meta().non_contracting);
        assert!(!i2.meta().length_at_most_one);
    }

    #[test]
    fn globes() {
        for (p, tops, count) in [(1, vec!["A"], 3), (2, vec!["A"], 5), (2, vec!["A", "B"], 6), (3, vec!["A", "B"], 8)] {
            let g = OmegaCategory::free("G", CellComplex::globe(p, &tops), DEFAULT_BUDGET).unwrap();
            assert_eq!(g.len(), count);
            assert!(g.meta().length_at_most_one);
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            OmegaCategory::free("I", CellComplex::cube(3), 10),
            Err(Error::ClosureBudgetExceeded(10))
        ));
    }
}
