//! Chain complexes built from the cubical nerve: branching and merging
//! corner complexes, the reduced (thin) quotient, the formal complex on
//! morphisms, and the T-equivalence solver.

use num_bigint::BigInt;

use super::chain::{ChainComplex, QuotientComplex, SparseVec};
use super::linalg::{Lattice, Sparse};
use crate::error::{Error, Result};
use crate::molecule::{MorphId, OmegaCategory};
use crate::nerve::{is_thin, Filter, Nerve, SingularCube};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Branching,
    Merging,
}

impl Side {
    fn filter(self) -> Filter {
        match self {
            Side::Branching => Filter::Branching,
            Side::Merging => Filter::Merging,
        }
    }

    fn plus(self) -> bool {
        self == Side::Merging
    }
}

/// The branching (or merging) cubes of degrees `0..=top` with the
/// boundary Σ(-1)^(i+1) ∂_i^∓.
pub struct CornerComplex<'c> {
    pub cat: &'c OmegaCategory,
    pub side: Side,
    pub cubes: Vec<Vec<SingularCube>>,
    pub complex: ChainComplex,
}

impl<'c> CornerComplex<'c> {
    pub fn build(cat: &'c OmegaCategory, side: Side, top: usize) -> Result<CornerComplex<'c>> {
        let mut nerve = Nerve::new(cat);
        let cubes = (0..=top).map(|n| nerve.enumerate(n, side.filter())).collect::<Result<Vec<_>>>()?;
        let labels = cubes.iter().map(|level| level.iter().map(|x| x.render(cat)).collect()).collect();
        let mut boundaries = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let cols = cubes[n]
                .iter()
                .map(|x| {
                    if n == 0 {
                        return Ok(SparseVec::new());
                    }
                    let mut col = SparseVec::new();
                    for i in 1..=n {
                        let f = x.face(i, side.plus())?;
                        let j = find(&cubes[n - 1], &f).ok_or_else(|| {
                            Error::IllFormedComplex(format!("face {i} of {} leaves the complex", x.render(cat)))
                        })?;
                        col.add_entry(j, if i % 2 == 1 { 1 } else { -1 });
                    }
                    Ok(col)
                })
                .collect::<Result<Vec<_>>>()?;
            boundaries.push(cols);
        }
        Ok(CornerComplex { cat, side, cubes, complex: ChainComplex::new(labels, boundaries) })
    }

    pub fn top(&self) -> usize {
        self.cubes.len() - 1
    }

    pub fn index(&self, x: &SingularCube) -> Option<usize> {
        self.cubes.get(x.n).and_then(|level| find(level, x))
    }

    /// The chain Σ c·x, failing if some x is not a basis cube.
    pub fn chain(&self, terms: &[(i64, &SingularCube)]) -> Result<SparseVec> {
        let pairs = terms
            .iter()
            .map(|&(c, x)| {
                self.index(x)
                    .map(|j| (j, c))
                    .ok_or_else(|| Error::InvalidInput(format!("{} is not a basis cube", x.render(self.cat))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseVec::from_pairs(pairs))
    }

    /// Thin cubes of degree `n` and boundaries of thin cubes of degree n+1.
    pub fn thin_relators(&self, n: usize) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = self.cubes[n]
            .iter()
            .enumerate()
            .filter(|(_, x)| is_thin(self.cat, x))
            .map(|(j, _)| SparseVec::unit(j))
            .collect();
        if n < self.top() {
            for (j, x) in self.cubes[n + 1].iter().enumerate() {
                if is_thin(self.cat, x) {
                    let d = &self.complex.boundary(n + 1)[j];
                    if !d.is_zero() {
                        out.push(d.clone());
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The reduced complex; relators are complete in degrees below `top`.
    pub fn reduced(&self) -> QuotientComplex {
        let relators = (0..self.top()).map(|n| self.thin_relators(n)).collect();
        QuotientComplex { complex: self.complex.clone(), relators }
    }

    /// Images of degenerate simplices: Γ_j^- y for y of degree n-1,
    /// 1 <= j <= n-1.
    pub fn degenerate_chains(&self, n: usize) -> Result<Vec<SparseVec>> {
        let mut out = Vec::new();
        if n < 2 {
            return Ok(out);
        }
        for y in &self.cubes[n - 1] {
            for j in 1..n {
                let g = y.connection(j, self.side.plus())?;
                out.push(self.chain(&[(1, &g)])?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Solver for T-equivalence in degree `n < top`.
    pub fn t_solver(&self, n: usize) -> Result<TSolver> {
        if n >= self.top() {
            return Err(Error::DimensionCap { requested: n + 1, cap: self.top() });
        }
        let gens: Vec<Sparse<i64>> = self.thin_relators(n).iter().map(|v| v.to_sparse()).collect();
        Ok(TSolver { lattice: Lattice::from_generators(&gens, true), degree: n })
    }

    /// Lattice of boundaries plus degenerate chains in degree `n < top`.
    pub fn normalized_boundaries(&self, n: usize) -> Result<Lattice> {
        if n >= self.top() {
            return Err(Error::DimensionCap { requested: n + 1, cap: self.top() });
        }
        let mut gens: Vec<Sparse<i64>> = self.complex.boundary(n + 1).iter().map(|v| v.to_sparse()).collect();
        gens.extend(self.degenerate_chains(n)?.iter().map(|v| v.to_sparse()));
        gens.retain(|g| !g.is_empty());
        gens.sort_unstable();
        gens.dedup();
        Ok(Lattice::from_generators(&gens, false))
    }
}

fn find(level: &[SingularCube], x: &SingularCube) -> Option<usize> {
    level.binary_search(x).ok()
}

/// Decides membership in the span of thin cubes and boundaries of thin
/// cubes in a fixed degree.
pub struct TSolver {
    lattice: Lattice,
    pub degree: usize,
}

impl TSolver {
    /// Whether x - y is a combination of the thin relators; the
    /// certificate gives its coefficients on the relator list.
    pub fn equivalent(&mut self, x: &SparseVec, y: &SparseVec) -> Option<Sparse<BigInt>> {
        let diff = x.scaled_add(-1, y);
        self.lattice.solve(&diff.to_sparse()).map(|(_, cert)| cert)
    }

    pub fn is_null(&mut self, x: &SparseVec) -> bool {
        self.lattice.contains(&x.to_sparse())
    }
}

/// The formal complex on morphisms, divided by the composition relators.
pub fn formal_complex(cat: &OmegaCategory, top: usize) -> QuotientComplex {
    let basis: Vec<Vec<MorphId>> = (0..=top).map(|n| cat.of_dim(n).to_vec()).collect();
    let pos = |n: usize, m: MorphId| -> Option<usize> {
        if cat.dim(m) == n {
            basis[n].binary_search(&m).ok()
        } else {
            None
        }
    };
    let labels = basis.iter().map(|b| b.iter().map(|&m| cat.label(m).to_string()).collect()).collect();
    let boundaries = (0..=top)
        .map(|n| {
            basis[n]
                .iter()
                .map(|&m| match n {
                    0 => SparseVec::new(),
                    1 => SparseVec::unit(pos(0, cat.src(m, 0)).expect("objects")),
                    _ => SparseVec::from_pairs(
                        pos(n - 1, cat.src(m, n - 1))
                            .map(|j| (j, 1))
                            .into_iter()
                            .chain(pos(n - 1, cat.tgt(m, n - 1)).map(|j| (j, -1))),
                    ),
                })
                .collect()
        })
        .collect();
    let mut relators: Vec<Vec<SparseVec>> = vec![Vec::new(); top + 1];
    for (a, b, p, c) in cat.compositions() {
        let n = cat.dim(c);
        if n > top || cat.dim(a) <= p || cat.dim(b) <= p {
            continue;
        }
        let mut terms = vec![(pos(n, c).expect("composite"), 1)];
        terms.extend(pos(n, a).map(|j| (j, -1)));
        if p > 0 {
            terms.extend(pos(n, b).map(|j| (j, -1)));
        }
        let r = SparseVec::from_pairs(terms);
        if !r.is_zero() {
            relators[n].push(r);
        }
    }
    for r in &mut relators {
        r.sort_unstable();
        r.dedup();
    }
    QuotientComplex { complex: ChainComplex::new(labels, boundaries), relators }
}
