//! Identities of reduced branching homology checked on concrete categories.

use num_bigint::BigInt;

use super::chain::SparseVec;
use super::corner::{CornerComplex, Side};
use super::linalg::{kernel, Lattice, Sparse};
use crate::error::{Error, Result};
use crate::folding::box_minus;
use crate::molecule::{MorphId, OmegaCategory};
use crate::nerve::SingularCube;

#[derive(Clone, Debug, Default)]
pub struct DiffReport {
    pub n: usize,
    pub cubes: usize,
    /// Renderings of the cubes where the s_{n-1} identity fails.
    pub source_failures: Vec<String>,
    pub target_failures: Vec<String>,
}

impl DiffReport {
    pub fn ok(&self) -> bool {
        self.source_failures.is_empty() && self.target_failures.is_empty()
    }
}

/// For every branching n-cube x, checks up to T-equivalence
/// □_{n-1}^-(s_{n-1} x(0_n)) = Σ_{i odd} □_{n-1}^-((∂_i^- x)(0_{n-1}))
/// and the same with t_{n-1} and even i.
pub fn diff_formula_check(cat: &OmegaCategory, n: usize) -> Result<DiffReport> {
    if n < 2 {
        return Err(Error::InvalidInput("the identities start in degree 2".into()));
    }
    let corner = CornerComplex::build(cat, Side::Branching, n)?;
    let mut solver = corner.t_solver(n - 1)?;
    let mut report = DiffReport { n, cubes: corner.cubes[n].len(), ..DiffReport::default() };
    for x in &corner.cubes[n] {
        let u = x.interior();
        for (plus, parity) in [(false, 1), (true, 0)] {
            let lhs = box_minus(cat, cat.boundary(u, n - 1, plus), n - 1)?;
            let terms = (1..=n)
                .filter(|i| i % 2 == parity)
                .map(|i| box_minus(cat, x.face(i, false)?.interior(), n - 1))
                .collect::<Result<Vec<_>>>()?;
            let rhs = corner.chain(&terms.iter().map(|t| (1, t)).collect::<Vec<_>>())?;
            if solver.equivalent(&corner.chain(&[(1, &lhs)])?, &rhs).is_none() {
                let failures = if plus { &mut report.target_failures } else { &mut report.source_failures };
                failures.push(x.render(cat));
            }
        }
    }
    Ok(report)
}

/// Checks that `f` (indexed by the morphisms of `src`) is an ω-functor.
pub fn check_functor(src: &OmegaCategory, tgt: &OmegaCategory, f: &[MorphId]) -> Result<()> {
    let bad = |what: String| Err(Error::InvalidInput(format!("not an ω-functor: {what}")));
    if f.len() != src.len() {
        return bad("wrong number of images".into());
    }
    for m in 0..src.len() as MorphId {
        let d = src.dim(m);
        if tgt.dim(f[m as usize]) > d {
            return bad(format!("{} gains dimension", src.label(m)));
        }
        for k in 0..d {
            if tgt.src(f[m as usize], k) != f[src.src(m, k) as usize] || tgt.tgt(f[m as usize], k) != f[src.tgt(m, k) as usize] {
                return bad(format!("boundary of {}", src.label(m)));
            }
        }
    }
    for (a, b, p, c) in src.compositions() {
        if tgt.compose(f[a as usize], f[b as usize], p) != Some(f[c as usize]) {
            return bad(format!("{} *{p} {}", src.label(a), src.label(b)));
        }
    }
    Ok(())
}

/// f ∘ x.
pub fn push_forward(f: &[MorphId], x: &SingularCube) -> SingularCube {
    SingularCube { n: x.n, images: x.images.iter().map(|&m| f[m as usize]).collect() }
}

fn push_chain(source: &CornerComplex, target: &CornerComplex, f: &[MorphId], n: usize, z: &Sparse<BigInt>) -> Result<SparseVec> {
    let mut out = SparseVec::new();
    for (j, c) in z {
        let y = push_forward(f, &source.cubes[n][*j]);
        let k = target.index(&y).ok_or_else(|| {
            Error::InvalidInput(format!("{} is not a branching cube of the target", y.render(target.cat)))
        })?;
        let c = i64::try_from(c).map_err(|_| Error::InvalidInput("coefficient overflow".into()))?;
        out.add_entry(k, c);
    }
    Ok(out)
}

/// Whether the maps induced by `f` and `g` on reduced branching homology
/// agree, degree by degree in `0..top`. Cycles of the source are taken
/// modulo thin relators; agreement is tested modulo boundaries and thin
/// relators of the target.
pub fn invariance_check(
    src: &OmegaCategory,
    tgt: &OmegaCategory,
    f: &[MorphId],
    g: &[MorphId],
    top: usize,
) -> Result<Vec<(usize, bool)>> {
    check_functor(src, tgt, f)?;
    check_functor(src, tgt, g)?;
    let source = CornerComplex::build(src, Side::Branching, top)?;
    let target = CornerComplex::build(tgt, Side::Branching, top)?;
    let mut out = Vec::new();
    for n in 0..top {
        let count = source.cubes[n].len();
        let mut cols: Vec<Sparse<i64>> = if n == 0 {
            vec![Vec::new(); count]
        } else {
            source.complex.boundary(n).iter().map(|v| v.to_sparse()).collect()
        };
        if n > 0 {
            cols.extend(source.thin_relators(n - 1).iter().map(|v| v.to_sparse()));
        }
        let cycles: Vec<Sparse<BigInt>> = kernel(&cols)
            .into_iter()
            .map(|k| k.into_iter().filter(|(j, _)| *j < count).collect::<Sparse<BigInt>>())
            .filter(|k| !k.is_empty())
            .collect();
        let mut nulls: Vec<Sparse<i64>> = target.thin_relators(n).iter().map(|v| v.to_sparse()).collect();
        nulls.extend(target.complex.boundary(n + 1).iter().map(|v| v.to_sparse()));
        let mut nulls = Lattice::from_generators(&nulls, false);
        let mut agree = true;
        for z in &cycles {
            let d = push_chain(&source, &target, f, n, z)?.scaled_add(-1, &push_chain(&source, &target, g, n, z)?);
            agree &= nulls.contains(&d.to_sparse());
        }
        out.push((n, agree));
    }
    Ok(out)
}
