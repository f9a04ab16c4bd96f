use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::linalg::{invariant_factors, Lattice, Sparse};
use crate::error::{Error, Result};

/// Sparse integer column with sorted indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(Vec<(usize, i64)>);

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> SparseVec {
        SparseVec(vec![(i, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i64)>) -> SparseVec {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (i, v) in pairs {
            *acc.entry(i).or_insert(0) += v;
        }
        SparseVec(acc.into_iter().filter(|(_, v)| *v != 0).collect())
    }

    pub fn add_entry(&mut self, i: usize, v: i64) {
        match self.0.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => {
                self.0[k].1 += v;
                if self.0[k].1 == 0 {
                    self.0.remove(k);
                }
            }
            Err(k) => {
                if v != 0 {
                    self.0.insert(k, (i, v));
                }
            }
        }
    }

    pub fn entries(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0.binary_search_by_key(&i, |e| e.0).map_or(0, |k| self.0[k].1)
    }

    pub fn scaled_add(&self, k: i64, other: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(self.0.iter().copied().chain(other.0.iter().map(|&(i, v)| (i, k * v))))
    }

    pub fn to_sparse(&self) -> Sparse<i64> {
        self.0.clone()
    }
}

/// Free chain complex: `boundaries[n][j]` is the image of the j-th basis
/// element of degree n, written in the degree n-1 basis.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    labels: Vec<Vec<String>>,
    boundaries: Vec<Vec<SparseVec>>,
}

impl ChainComplex {
    pub fn new(labels: Vec<Vec<String>>, boundaries: Vec<Vec<SparseVec>>) -> ChainComplex {
        assert_eq!(labels.len(), boundaries.len());
        for (l, b) in labels.iter().zip(boundaries.iter()) {
            assert_eq!(l.len(), b.len());
        }
        ChainComplex { labels, boundaries }
    }

    /// Highest degree stored.
    pub fn top(&self) -> usize {
        self.labels.len().saturating_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, |l| l.len())
    }

    pub fn labels(&self, n: usize) -> &[String] {
        self.labels.get(n).map_or(&[], |l| l.as_slice())
    }

    pub fn boundary(&self, n: usize) -> &[SparseVec] {
        self.boundaries.get(n).map_or(&[], |b| b.as_slice())
    }

    /// Image of a chain of degree `n`.
    pub fn apply(&self, n: usize, chain: &SparseVec) -> SparseVec {
        let cols = self.boundary(n);
        SparseVec::from_pairs(
            chain.entries().iter().flat_map(|&(j, c)| cols[j].entries().iter().map(move |&(i, v)| (i, c * v))),
        )
    }

    pub fn check(&self) -> Result<()> {
        for n in 2..=self.top() {
            for (j, col) in self.boundary(n).iter().enumerate() {
                if !self.apply(n - 1, col).is_zero() {
                    return Err(Error::IllFormedComplex(format!(
                        "boundary of boundary of {} is nonzero",
                        self.labels[n][j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Same complex with the basis of every degree permuted by `perm[n]`
    /// (new position of old element j is perm[n][j]).
    pub fn permuted(&self, perm: &[Vec<usize>]) -> ChainComplex {
        let mut labels = self.labels.clone();
        let mut boundaries = self.boundaries.clone();
        for n in 0..=self.top() {
            for (j, &p) in perm[n].iter().enumerate() {
                labels[n][p] = self.labels[n][j].clone();
                let col = &self.boundaries[n][j];
                boundaries[n][p] = if n == 0 {
                    col.clone()
                } else {
                    SparseVec::from_pairs(col.entries().iter().map(|&(i, v)| (perm[n - 1][i], v)))
                };
            }
        }
        ChainComplex { labels, boundaries }
    }
}

/// A free complex divided, degree by degree, by the span of relator chains.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub complex: ChainComplex,
    pub relators: Vec<Vec<SparseVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub groups: Vec<Group>,
}

impl HomologySummary {
    pub fn group(&self, n: usize) -> &Group {
        &self.groups[n]
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn to_json(&self, theory: &str) -> serde_json::Value {
        #[derive(Serialize)]
        struct G {
            degree: usize,
            betti: usize,
            torsion: Vec<serde_json::Value>,
        }
        let groups: Vec<G> = self
            .groups
            .iter()
            .map(|g| G {
                degree: g.degree,
                betti: g.betti,
                torsion: g
                    .torsion
                    .iter()
                    .map(|t| match u64::try_from(t) {
                        Ok(v) => serde_json::Value::from(v),
                        Err(_) => serde_json::Value::from(t.to_string()),
                    })
                    .collect(),
            })
            .collect();
        serde_json::json!({ "theory": theory, "groups": groups })
    }
}

fn summary_from_ranks(
    sizes: &[usize],
    boundaries: &[Vec<Sparse<BigInt>>],
    up_to: usize,
) -> HomologySummary {
    // factors[n] = invariant factors of the boundary out of degree n
    let factors: Vec<Vec<BigInt>> = (0..=up_to + 1)
        .map(|n| {
            if n == 0 || n >= boundaries.len() {
                Vec::new()
            } else {
                invariant_factors(&boundaries[n])
            }
        })
        .collect();
    let groups = (0..=up_to)
        .map(|n| {
            let size = sizes.get(n).copied().unwrap_or(0);
            let betti = size - factors[n].len() - factors[n + 1].len();
            let torsion = factors[n + 1].iter().filter(|f| !f.is_one()).cloned().collect();
            Group { degree: n, betti, torsion }
        })
        .collect();
    HomologySummary { groups }
}

fn widen(v: &SparseVec) -> Sparse<BigInt> {
    v.entries().iter().map(|&(i, x)| (i, BigInt::from(x))).collect()
}

/// Homology of a free complex in degrees `0..=up_to`; degrees above the
/// stored top contribute zero.
pub fn free_homology(c: &ChainComplex, up_to: usize) -> Result<HomologySummary> {
    c.check()?;
    let sizes: Vec<usize> = (0..=up_to + 1).map(|n| c.rank(n)).collect();
    let boundaries: Vec<Vec<Sparse<BigInt>>> =
        (0..=up_to + 1).map(|n| c.boundary(n).iter().map(widen).collect()).collect();
    Ok(summary_from_ranks(&sizes, &boundaries, up_to))
}

/// Homology of a quotient complex, via the mapping cone of the inclusion of
/// the relator subcomplex (presented on an echelon basis, hence injective).
pub fn quotient_homology(q: &QuotientComplex, up_to: usize) -> Result<HomologySummary> {
    let c = &q.complex;
    c.check()?;
    let top = up_to.min(c.top());
    let mut bases: Vec<Vec<Sparse<BigInt>>> = Vec::new();
    let mut lattices: Vec<Lattice> = Vec::new();
    for n in 0..=top {
        let rel: Vec<Sparse<i64>> = q.relators.get(n).map_or(Vec::new(), |r| r.iter().map(|v| v.to_sparse()).collect());
        let mut l = Lattice::from_generators(&rel, false);
        bases.push(l.basis());
        lattices.push(l);
    }
    // e[n]: relator basis of degree n mapped to relator basis of degree n-1
    let mut e: Vec<Vec<Sparse<BigInt>>> = vec![Vec::new(); top + 1];
    for n in 1..=top {
        let pivots = lattices[n - 1].pivots();
        let position: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        for rho in &bases[n] {
            let image = apply_big(c.boundary(n), rho);
            let (coords, _) = lattices[n - 1].solve(&image).ok_or_else(|| {
                Error::IllFormedComplex(format!("relators of degree {n} do not map into relators of degree {}", n - 1))
            })?;
            e[n].push(coords.into_iter().map(|(p, v)| (position[&p], v)).collect());
        }
    }
    let b = |n: usize| c.rank(n);
    let r = |n: usize| bases.get(n).map_or(0, |x| x.len());
    let mut sizes = Vec::new();
    let mut cone: Vec<Vec<Sparse<BigInt>>> = Vec::new();
    for n in 0..=up_to + 1 {
        let size = b(n) + if n > 0 { r(n - 1) } else { 0 };
        sizes.push(size);
        let mut cols: Vec<Sparse<BigInt>> = Vec::new();
        if n > 0 {
            for col in c.boundary(n) {
                cols.push(widen(col));
            }
            if n - 1 <= top {
                let offset = b(n - 1);
                for (j, rho) in bases[n - 1].iter().enumerate() {
                    let mut col = rho.clone();
                    if n >= 2 {
                        for (k, v) in &e[n - 1][j] {
                            col.push((offset + k, -v.clone()));
                        }
                    }
                    cols.push(col);
                }
            }
        }
        cone.push(cols);
    }
    Ok(summary_from_ranks(&sizes, &cone, up_to))
}

fn apply_big(cols: &[SparseVec], chain: &Sparse<BigInt>) -> Sparse<BigInt> {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (j, c) in chain {
        for &(i, v) in cols[*j].entries() {
            *acc.entry(i).or_insert_with(BigInt::zero) += c * BigInt::from(v);
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}
