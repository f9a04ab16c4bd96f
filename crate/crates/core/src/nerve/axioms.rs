//! Cubical-set and cubical ω-category axioms on the nerve, checked on
//! enumerated cubes.

use std::collections::{BTreeMap, HashMap};

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cube::{compose_cubes, SingularCube};
use super::shapes::SHAPE_CAP;
use crate::error::Result;
use crate::molecule::OmegaCategory;

/// Structure maps of the nerve. Tests substitute a faulty implementation
/// to see the report catch it.
pub trait CubeOps {
    fn face(&self, x: &SingularCube, i: usize, plus: bool) -> Result<SingularCube>;
    fn degeneracy(&self, x: &SingularCube, i: usize) -> Result<SingularCube>;
    fn connection(&self, x: &SingularCube, i: usize, plus: bool) -> Result<SingularCube>;
    fn compose(&self, x: &SingularCube, y: &SingularCube, j: usize) -> Result<SingularCube>;
}

pub struct NerveOps<'c>(pub &'c OmegaCategory);

impl CubeOps for NerveOps<'_> {
    fn face(&self, x: &SingularCube, i: usize, plus: bool) -> Result<SingularCube> {
        x.face(i, plus)
    }

    fn degeneracy(&self, x: &SingularCube, i: usize) -> Result<SingularCube> {
        x.degeneracy(i)
    }

    fn connection(&self, x: &SingularCube, i: usize, plus: bool) -> Result<SingularCube> {
        x.connection(i, plus)
    }

    fn compose(&self, x: &SingularCube, y: &SingularCube, j: usize) -> Result<SingularCube> {
        compose_cubes(self.0, x, y, j)
    }
}

/// Axiom name to (passed, failed) counts.
pub type AxiomReport = BTreeMap<String, (usize, usize)>;

struct Checker<'a> {
    ops: &'a dyn CubeOps,
    report: AxiomReport,
}

impl Checker<'_> {
    fn eq(&mut self, name: &str, lhs: Result<SingularCube>, rhs: Result<SingularCube>) {
        let ok = matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b);
        let e = self.report.entry(name.to_string()).or_default();
        if ok {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }

    fn d(&self, x: &SingularCube, i: usize, a: bool) -> Result<SingularCube> {
        self.ops.face(x, i, a)
    }

    fn e(&self, x: &SingularCube, i: usize) -> Result<SingularCube> {
        self.ops.degeneracy(x, i)
    }

    fn g(&self, x: &SingularCube, i: usize, a: bool) -> Result<SingularCube> {
        self.ops.connection(x, i, a)
    }

    fn p(&self, x: &SingularCube, y: &SingularCube, j: usize) -> Result<SingularCube> {
        self.ops.compose(x, y, j)
    }

    /// Axioms on a single n-cube.
    fn unary(&mut self, x: &SingularCube) {
        let n = x.n;
        let signs = [false, true];
        for i in 1..=n {
            for j in i + 1..=n {
                for a in signs {
                    for b in signs {
                        let l = self.d(x, j, b).and_then(|y| self.d(&y, i, a));
                        let r = self.d(x, i, a).and_then(|y| self.d(&y, j - 1, b));
                        self.eq("cubical 1: d_i d_j = d_j-1 d_i (i<j)", l, r);
                    }
                }
            }
        }
        for j in 1..=n + 1 {
            for i in 1..=j {
                let l = self.e(x, j).and_then(|y| self.e(&y, i));
                let r = self.e(x, i).and_then(|y| self.e(&y, j + 1));
                self.eq("cubical 2: e_i e_j = e_j+1 e_i (i<=j)", l, r);
            }
            for i in 1..=n + 1 {
                for a in signs {
                    let l = self.e(x, j).and_then(|y| self.d(&y, i, a));
                    if i < j {
                        let r = self.d(x, i, a).and_then(|y| self.e(&y, j - 1));
                        self.eq("cubical 3: d_i e_j = e_j-1 d_i (i<j)", l, r);
                    } else if i > j {
                        let r = self.d(x, i - 1, a).and_then(|y| self.e(&y, j));
                        self.eq("cubical 4: d_i e_j = e_j d_i-1 (i>j)", l, r);
                    } else {
                        self.eq("cubical 5: d_i e_i = id", l, Ok(x.clone()));
                    }
                }
            }
        }
        if n == 0 {
            return;
        }
        for j in 1..=n {
            for b in signs {
                let gx = self.g(x, j, b);
                let gx = gx.as_ref().map_err(Clone::clone);
                for i in 1..=n + 1 {
                    for a in signs {
                        let l = gx.clone().and_then(|y| self.d(y, i, a));
                        if i < j {
                            let r = self.d(x, i, a).and_then(|y| self.g(&y, j - 1, b));
                            self.eq("1: d_i G_j = G_j-1 d_i (i<j)", l, r);
                        } else if i > j + 1 {
                            let r = self.d(x, i - 1, a).and_then(|y| self.g(&y, j, b));
                            self.eq("2: d_i G_j = G_j d_i-1 (i>j+1)", l, r);
                        } else if a == b {
                            self.eq("3: d_j G_j = d_j+1 G_j = id (same sign)", l, Ok(x.clone()));
                        } else {
                            let r = self.d(x, j, a).and_then(|y| self.e(&y, j));
                            self.eq("4: d_j G_j = d_j+1 G_j = e_j d_j (opposite sign)", l, r);
                        }
                    }
                }
                for i in 1..=n + 1 {
                    for c in signs {
                        let l = gx.clone().and_then(|y| self.g(y, i, c));
                        if c == b && i <= j {
                            let r = self.g(x, i, c).and_then(|y| self.g(&y, j + 1, b));
                            self.eq("5: G_i G_j = G_j+1 G_i (same sign, i<=j)", l, r);
                        } else if c != b && i < j {
                            let r = self.g(x, i, c).and_then(|y| self.g(&y, j + 1, b));
                            self.eq("6: G_i G_j = G_j+1 G_i (opposite sign, i<j)", l, r);
                        } else if c != b && i > j + 1 {
                            let r = self.g(x, i - 1, c).and_then(|y| self.g(&y, j, b));
                            self.eq("7: G_i G_j = G_j G_i-1 (opposite sign, i>j+1)", l, r);
                        }
                    }
                }
            }
        }
        for j in 1..=n + 1 {
            for i in 1..=n + 1 {
                for c in signs {
                    let l = self.e(x, j).and_then(|y| self.g(&y, i, c));
                    if i < j {
                        let r = self.g(x, i, c).and_then(|y| self.e(&y, j + 1));
                        self.eq("8: G_i e_j = e_j+1 G_i (i<j)", l, r);
                    } else if i == j {
                        let r = self.e(x, i).and_then(|y| self.e(&y, i));
                        self.eq("9: G_i e_i = e_i e_i", l, r);
                    } else {
                        let r = self.g(x, i - 1, c).and_then(|y| self.e(&y, j));
                        self.eq("10: G_i e_j = e_j G_i-1 (i>j)", l, r);
                    }
                }
            }
        }
        if n < SHAPE_CAP {
            for j in 1..=n {
                let plus = self.g(x, j, true);
                let minus = self.g(x, j, false);
                if let (Ok(gp), Ok(gm)) = (&plus, &minus) {
                    self.eq("20: G_j+ x +_j+1 G_j- x = e_j x", self.p(gp, gm, j + 1), self.e(x, j));
                    self.eq("20: G_j+ x +_j G_j- x = e_j+1 x", self.p(gp, gm, j), self.e(x, j + 1));
                } else {
                    self.eq("20: G_j+ x +_j+1 G_j- x = e_j x", plus, minus);
                }
            }
        }
        for j in 1..=n {
            let l = self.d(x, j, false).and_then(|f| self.e(&f, j)).and_then(|u| self.p(&u, x, j));
            self.eq("21: e_j d_j- x +_j x = x", l, Ok(x.clone()));
            let r = self.d(x, j, true).and_then(|f| self.e(&f, j)).and_then(|u| self.p(x, &u, j));
            self.eq("21: x +_j e_j d_j+ x = x", r, Ok(x.clone()));
        }
    }

    /// Axioms on a composable pair x +_j y.
    fn binary(&mut self, x: &SingularCube, y: &SingularCube, j: usize) {
        let n = x.n;
        let Ok(xy) = self.p(x, y, j) else {
            self.eq("composite exists", Err(crate::Error::NotComposable(j)), Ok(x.clone()));
            return;
        };
        self.eq("12: d_j-(x +_j y) = d_j- x", self.d(&xy, j, false), self.d(x, j, false));
        self.eq("13: d_j+(x +_j y) = d_j+ y", self.d(&xy, j, true), self.d(y, j, true));
        for i in (1..=n).filter(|&i| i != j) {
            for a in [false, true] {
                let k = if i < j { j - 1 } else { j };
                let r = self.d(x, i, a).and_then(|u| self.p(&u, &self.d(y, i, a)?, k));
                self.eq("14: d_i(x +_j y) = d_i x + d_i y", self.d(&xy, i, a), r);
            }
        }
        if n + 1 > SHAPE_CAP {
            return;
        }
        for i in 1..=n + 1 {
            let k = if i <= j { j + 1 } else { j };
            let r = self.e(x, i).and_then(|u| self.p(&u, &self.e(y, i)?, k));
            self.eq("16: e_i(x +_j y) = e_i x + e_i y", self.e(&xy, i), r);
        }
        for i in (1..=n).filter(|&i| i != j) {
            for c in [false, true] {
                let k = if i < j { j + 1 } else { j };
                let r = self.g(x, i, c).and_then(|u| self.p(&u, &self.g(y, i, c)?, k));
                self.eq("17: G_i(x +_j y) = G_i x + G_i y", self.g(&xy, i, c), r);
            }
        }
        let ops = self.ops;
        let block = |rows: [[Result<SingularCube>; 2]; 2]| -> Result<SingularCube> {
            let [[a, b], [c, d]] = rows;
            let (a, b, c, d) = (a?, b?, c?, d?);
            let bottom = ops.compose(&c, &d, j + 1)?;
            let top = ops.compose(&a, &b, j + 1)?;
            ops.compose(&bottom, &top, j)
        };
        let r18 = block([
            [self.e(y, j + 1), self.g(y, j, false)],
            [self.g(x, j, false), self.e(y, j)],
        ]);
        self.eq("18: G_j-(x +_j y) block", self.g(&xy, j, false), r18);
        let r19 = block([
            [self.e(x, j), self.g(y, j, true)],
            [self.g(x, j, true), self.e(x, j + 1)],
        ]);
        self.eq("19: G_j+(x +_j y) block", self.g(&xy, j, true), r19);
    }
}

/// Which cubes to visit: all of them, or a seeded random sample per degree.
#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub per_degree: Option<usize>,
    pub seed: u64,
}

fn partners(cubes: &[SingularCube], ops: &dyn CubeOps, j: usize) -> HashMap<SingularCube, Vec<usize>> {
    let mut by_face: HashMap<SingularCube, Vec<usize>> = HashMap::new();
    for (k, y) in cubes.iter().enumerate() {
        if let Ok(f) = ops.face(y, j, false) {
            by_face.entry(f).or_default().push(k);
        }
    }
    by_face
}

/// Checks the cubical-set axioms and the 21 cubical ω-category axioms on
/// the cubes of each degree, with composable partners drawn from the
/// same degree.
pub fn axiom_report_with(ops: &dyn CubeOps, levels: &[Vec<SingularCube>], sampling: Sampling) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut c = Checker { ops, report: AxiomReport::new() };
    for cubes in levels {
        if cubes.is_empty() {
            continue;
        }
        let picks: Vec<usize> = match sampling.per_degree {
            Some(k) if k < cubes.len() => index::sample(&mut rng, cubes.len(), k).into_vec(),
            _ => (0..cubes.len()).collect(),
        };
        let n = cubes[0].n;
        let tables: Vec<_> = (1..=n).map(|j| partners(cubes, ops, j)).collect();
        let next = |x: &SingularCube, j: usize, rng: &mut ChaCha8Rng| -> Option<usize> {
            let f = ops.face(x, j, true).ok()?;
            tables[j - 1].get(&f)?.choose(rng).copied()
        };
        for &k in &picks {
            let x = &cubes[k];
            c.unary(x);
            for j in 1..=n {
                let Some(yk) = next(x, j, &mut rng) else { continue };
                let y = &cubes[yk];
                c.binary(x, y, j);
                if let Some(zk) = next(y, j, &mut rng) {
                    let z = &cubes[zk];
                    let l = c.p(x, y, j).and_then(|u| c.p(&u, z, j));
                    let r = c.p(y, z, j).and_then(|u| c.p(x, &u, j));
                    c.eq("11: +_j associative", l, r);
                }
                // interchange: x +_i y over z +_i w, stacked along j
                for i in (1..=n).filter(|&i| i != j) {
                    let Some(yk) = next(x, i, &mut rng) else { continue };
                    let y = &cubes[yk];
                    let Some(zk) = next(x, j, &mut rng) else { continue };
                    let z = &cubes[zk];
                    let (Ok(zi), Ok(yj)) = (ops.face(z, i, true), ops.face(y, j, true)) else { continue };
                    let w = tables[i - 1].get(&zi).into_iter().flatten().find(|&&wk| {
                        ops.face(&cubes[wk], j, false).is_ok_and(|f| f == yj)
                    });
                    let Some(&wk) = w else { continue };
                    let w = &cubes[wk];
                    let l = c.p(x, y, i).and_then(|u| c.p(&u, &c.p(z, w, i)?, j));
                    let r = c.p(x, z, j).and_then(|u| c.p(&u, &c.p(y, w, j)?, i));
                    c.eq("15: interchange", l, r);
                }
            }
        }
    }
    c.report
}

pub fn axiom_report(cat: &OmegaCategory, levels: &[Vec<SingularCube>], sampling: Sampling) -> AxiomReport {
    axiom_report_with(&NerveOps(cat), levels, sampling)
}
