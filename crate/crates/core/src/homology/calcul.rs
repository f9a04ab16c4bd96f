//! Simplicial nerve of an ω-category through the orientals, and the
//! comparison of its homology after the path shift with branching homology.

use std::collections::HashMap;

use super::chain::{free_homology, ChainComplex, Group, SparseVec};
use super::corner::{CornerComplex, Side};
use crate::error::{Error, Result};
use crate::molecule::{path_shift, try_evaluate, CellComplex, Decomposer, MorphId, OmegaCategory, PastingTree};

/// An ω-functor from the m-th oriental, stored as the image of every cell.
/// Cell ids follow the bitmask order of `CellComplex::oriental`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub m: usize,
    pub images: Vec<MorphId>,
}

impl Simplex {
    /// d_i: restriction along the coface map skipping the vertex i.
    pub fn face(&self, i: usize) -> Simplex {
        let cells = (1u32 << self.m) - 1;
        let images = (1..=cells)
            .map(|s| {
                let low = s & ((1 << i) - 1);
                let high = (s >> i) << (i + 1);
                self.images[((low | high) - 1) as usize]
            })
            .collect();
        Simplex { m: self.m - 1, images }
    }
}

struct OrientalShape {
    dims: Vec<usize>,
    /// Trees of s_{p-1} and t_{p-1} of every cell of dimension p >= 1.
    bounds: Vec<Option<(PastingTree, PastingTree)>>,
}

fn oriental_shape(m: usize) -> Result<OrientalShape> {
    let complex = CellComplex::oriental(m);
    let mut dec = Decomposer::new(&complex);
    let mut dims = Vec::new();
    let mut bounds = Vec::new();
    for cell in complex.cells() {
        dims.push(cell.dim);
        if cell.dim == 0 {
            bounds.push(None);
            continue;
        }
        let s = dec.decompose(&complex.boundary(&cell.closure, cell.dim - 1, false))?;
        let t = dec.decompose(&complex.boundary(&cell.closure, cell.dim - 1, true))?;
        bounds.push(Some((s, t)));
    }
    Ok(OrientalShape { dims, bounds })
}

/// All ω-functors from the orientals of dimension `0..=top` into `d`,
/// found by assigning cells in increasing dimension.
pub fn simplicial_nerve(d: &OmegaCategory, top: usize) -> Result<Vec<Vec<Simplex>>> {
    let mut by_boundary: Vec<HashMap<(MorphId, MorphId), Vec<MorphId>>> = Vec::new();
    for k in 0..top {
        let mut map: HashMap<(MorphId, MorphId), Vec<MorphId>> = HashMap::new();
        for u in 0..d.len() as MorphId {
            if d.dim(u) <= k + 1 {
                map.entry((d.src(u, k), d.tgt(u, k))).or_default().push(u);
            }
        }
        by_boundary.push(map);
    }
    let mut levels = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let shape = oriental_shape(m)?;
        let mut order: Vec<usize> = (0..shape.dims.len()).collect();
        order.sort_by_key(|&c| shape.dims[c]);
        let mut out = Vec::new();
        let mut images = vec![MorphId::MAX; shape.dims.len()];
        extend(d, &shape, &order, &by_boundary, &mut images, 0, &mut |im| out.push(Simplex { m, images: im.to_vec() }));
        out.sort();
        levels.push(out);
    }
    Ok(levels)
}

fn extend(
    d: &OmegaCategory,
    shape: &OrientalShape,
    order: &[usize],
    by_boundary: &[HashMap<(MorphId, MorphId), Vec<MorphId>>],
    images: &mut Vec<MorphId>,
    depth: usize,
    emit: &mut impl FnMut(&[MorphId]),
) {
    let Some(&cell) = order.get(depth) else {
        emit(images);
        return;
    };
    let candidates: Vec<MorphId> = match &shape.bounds[cell] {
        None => d.of_dim(0).to_vec(),
        Some((s, t)) => {
            let image = |c| images[c as usize];
            let (Some(s), Some(t)) = (try_evaluate(s, d, &image), try_evaluate(t, d, &image)) else { return };
            by_boundary[shape.dims[cell] - 1].get(&(s, t)).cloned().unwrap_or_default()
        }
    };
    for u in candidates {
        images[cell] = u;
        extend(d, shape, order, by_boundary, images, depth + 1, emit);
    }
    images[cell] = MorphId::MAX;
}

/// Non-normalized chain complex of the simplicial nerve, with boundary
/// Σ (-1)^i d_i.
pub fn simplicial_complex(d: &OmegaCategory, top: usize) -> Result<ChainComplex> {
    let levels = simplicial_nerve(d, top)?;
    let labels = levels
        .iter()
        .map(|l| l.iter().map(|x| x.images.iter().map(|&u| d.label(u)).collect::<Vec<_>>().join(" ")).collect())
        .collect();
    let mut boundaries = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let cols = levels[m]
            .iter()
            .map(|x| {
                let mut col = SparseVec::new();
                if m > 0 {
                    for i in 0..=m {
                        let j = levels[m - 1].binary_search(&x.face(i)).map_err(|_| {
                            Error::IllFormedComplex(format!("face {i} of a {m}-simplex is not a simplex"))
                        })?;
                        col.add_entry(j, if i % 2 == 0 { 1 } else { -1 });
                    }
                }
                Ok(col)
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(cols);
    }
    Ok(ChainComplex::new(labels, boundaries))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalculRow {
    pub n: usize,
    /// H_{n+1}^-(C).
    pub branching: Group,
    /// H_n(PC).
    pub shifted: Group,
}

impl CalculRow {
    pub fn matches(&self) -> bool {
        self.branching.betti == self.shifted.betti && self.branching.torsion == self.shifted.torsion
    }
}

#[derive(Clone, Debug)]
pub struct CalculReport {
    pub category: String,
    pub rows: Vec<CalculRow>,
}

impl CalculReport {
    pub fn matches(&self) -> bool {
        self.rows.iter().all(CalculRow::matches)
    }
}

/// Compares H_{n+1}^-(C) with the homology of the simplicial nerve of PC
/// for 1 <= n <= up_to - 1.
pub fn calcul_crosscheck(c: &OmegaCategory, up_to: usize) -> Result<CalculReport> {
    let pc = path_shift(c)?;
    let top = up_to.max(1);
    let corner = CornerComplex::build(c, Side::Branching, top + 1)?;
    let branching = free_homology(&corner.complex, top)?;
    let shifted = free_homology(&simplicial_complex(&pc, top)?, top - 1)?;
    let rows = (1..top)
        .map(|n| CalculRow { n, branching: branching.group(n + 1).clone(), shifted: shifted.group(n).clone() })
        .collect();
    Ok(CalculReport { category: c.name().to_string(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::{build_oriental, build_presented, Presented};

    #[test]
    fn nerve_of_an_arrow() {
        // one arrow a -> b: two objects, three 1-simplices
        let c = build_presented(Presented::Arrow, 1, 3).unwrap();
        let levels = simplicial_nerve(&c, 2).unwrap();
        assert_eq!(levels[0].len(), 2);
        assert_eq!(levels[1].len(), 3);
        assert_eq!(levels[2].len(), 4);
        let h = free_homology(&simplicial_complex(&c, 2).unwrap(), 1).unwrap();
        assert!(h.group(0).is_z() && h.group(1).is_zero());
    }

    #[test]
    fn faces_are_simplicial() {
        let d = build_oriental(2, 3).unwrap();
        let levels = simplicial_nerve(&d, 3).unwrap();
        for x in &levels[3] {
            for j in 0..=3 {
                for i in 0..j {
                    assert_eq!(x.face(j).face(i), x.face(i).face(j - 1));
                }
            }
        }
        // the identity of the oriental is one of its 2-simplices
        let id: Vec<MorphId> = (1u32..8).map(|s| d.lookup_cells(&CellComplex::oriental(2).closure_of([s - 1])).unwrap()).collect();
        assert!(levels[2].contains(&Simplex { m: 2, images: id }));
    }

    #[test]
    fn shifted_globes() {
        for (kind, p, top) in [(Presented::Arrow, 2, 2), (Presented::Pair, 2, 2)] {
            let c = build_presented(kind, p, 3).unwrap();
            let report = calcul_crosscheck(&c, top).unwrap();
            assert!(report.matches(), "{report:?}");
        }
    }
}
