use serde::Serialize;

use super::shapes::{center, glued_cell, gluing, letters, pow3, shapes, word_dim, SHAPE_CAP};
use crate::error::{Error, Result};
use crate::molecule::{evaluate, word_label, CellId, MorphId, OmegaCategory};

/// An ω-functor from the n-cube, stored as the images of all its atoms
/// indexed by word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularCube {
    pub n: usize,
    pub images: Vec<MorphId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubeClass {
    pub branching: bool,
    pub merging: bool,
    pub thin: bool,
}

fn check_index(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        Err(Error::BadIndex { index: i, max })
    } else {
        Ok(())
    }
}

/// Splits a word index around 1-based position `i` of an n-letter word:
/// returns (high part, low part, 3^(n-i)).
fn split(w: usize, n: usize, i: usize) -> (usize, usize, usize) {
    let low = pow3(n - i);
    (w / (3 * low), w % low, low)
}

impl SingularCube {
    pub fn vertex(m: MorphId) -> SingularCube {
        SingularCube { n: 0, images: vec![m] }
    }

    pub fn interior(&self) -> MorphId {
        self.images[center(self.n)]
    }

    pub fn image(&self, word: &[u8]) -> MorphId {
        self.images[super::shapes::word_index(word)]
    }

    /// ∂_i^α: insert the letter α at position i.
    pub fn face(&self, i: usize, plus: bool) -> Result<SingularCube> {
        check_index(i, self.n)?;
        let m = self.n - 1;
        let alpha = if plus { 2 } else { 0 };
        let low = pow3(m + 1 - i);
        let images = (0..pow3(m))
            .map(|w| {
                let (hi, lo) = (w / low, w % low);
                self.images[(hi * 3 + alpha) * low + lo]
            })
            .collect();
        Ok(SingularCube { n: m, images })
    }

    /// ε_i: delete the letter at position i.
    pub fn degeneracy(&self, i: usize) -> Result<SingularCube> {
        check_index(i, self.n + 1)?;
        let m = self.n + 1;
        let images = (0..pow3(m))
            .map(|w| {
                let (hi, lo, low) = split(w, m, i);
                self.images[hi * low + lo]
            })
            .collect();
        Ok(SingularCube { n: m, images })
    }

    /// Γ_i^- merges letters i, i+1 by maximum, Γ_i^+ by minimum, in the
    /// order - < 0 < +.
    pub fn connection(&self, i: usize, plus: bool) -> Result<SingularCube> {
        check_index(i, self.n)?;
        let m = self.n + 1;
        let low = pow3(m - i - 1);
        let images = (0..pow3(m))
            .map(|w| {
                let lo = w % low;
                let b = (w / low) % 3;
                let a = (w / low / 3) % 3;
                let hi = w / low / 9;
                let c = if plus { a.min(b) } else { a.max(b) };
                self.images[(hi * 3 + c) * low + lo]
            })
            .collect();
        Ok(SingularCube { n: m, images })
    }

    pub fn to_json(&self, cat: &OmegaCategory) -> serde_json::Value {
        let images: serde_json::Map<String, serde_json::Value> = self
            .images
            .iter()
            .enumerate()
            .map(|(w, &m)| (word_label(&letters(w, self.n)), serde_json::Value::from(cat.label(m))))
            .collect();
        serde_json::Value::Object(images)
    }

    pub fn render(&self, cat: &OmegaCategory) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(w, _)| self.n == 0 || word_dim(*w, self.n) > 0)
            .map(|(w, &m)| format!("{}={}", word_label(&letters(w, self.n)), cat.label(m)))
            .collect();
        format!("[{}]", parts.join(" "))
    }
}

/// x +_j y, defined when ∂_j^+ x = ∂_j^- y.
pub fn compose_cubes(cat: &OmegaCategory, x: &SingularCube, y: &SingularCube, j: usize) -> Result<SingularCube> {
    if x.n != y.n {
        return Err(Error::NotComposable(j));
    }
    check_index(j, x.n)?;
    if x.n > SHAPE_CAP {
        return Err(Error::DimensionCap { requested: x.n, cap: SHAPE_CAP });
    }
    if x.face(j, true)? != y.face(j, false)? {
        return Err(Error::NotComposable(j));
    }
    let n = x.n;
    let glue = gluing(n, j);
    let low = pow3(n - j);
    let image = |c: CellId| {
        let (second, w) = glued_cell(c, n, j);
        if second {
            y.images[w]
        } else {
            x.images[w]
        }
    };
    let mut images = Vec::with_capacity(pow3(n));
    for w in 0..pow3(n) {
        let img = match (w / low) % 3 {
            0 => x.images[w],
            2 => y.images[w],
            _ => evaluate(glue.trees[w].as_ref().unwrap(), cat, &image)?,
        };
        images.push(img);
    }
    Ok(SingularCube { n, images })
}

/// Checks that the atom images form an ω-functor.
pub fn is_functor(cat: &OmegaCategory, x: &SingularCube) -> bool {
    if x.n > SHAPE_CAP || x.images.len() != pow3(x.n) {
        return false;
    }
    let sh = shapes(x.n);
    let image = |c: CellId| x.images[c as usize];
    (0..pow3(x.n)).all(|w| {
        let u = x.images[w];
        (u as usize) < cat.len()
            && cat.dim(u) <= word_dim(w, x.n)
            && sh.bounds[w].iter().enumerate().all(|(k, (s, t))| {
                evaluate(s, cat, &image).ok() == Some(cat.src(u, k)) && evaluate(t, cat, &image).ok() == Some(cat.tgt(u, k))
            })
    })
}

pub fn is_thin(cat: &OmegaCategory, x: &SingularCube) -> bool {
    cat.dim(x.interior()) < x.n
}

fn paths_are_one_dimensional(cat: &OmegaCategory, x: &SingularCube, initial: bool) -> bool {
    let sh = shapes(x.n);
    let image = |c: CellId| x.images[c as usize];
    let paths = if initial { &sh.from_initial } else { &sh.to_final };
    paths.iter().all(|p| evaluate(p, cat, &image).is_ok_and(|m| cat.dim(m) == 1))
}

pub fn is_branching(cat: &OmegaCategory, x: &SingularCube) -> bool {
    paths_are_one_dimensional(cat, x, true)
}

pub fn is_merging(cat: &OmegaCategory, x: &SingularCube) -> bool {
    paths_are_one_dimensional(cat, x, false)
}

pub fn classify(cat: &OmegaCategory, x: &SingularCube) -> Result<CubeClass> {
    if !cat.meta().non_contracting {
        return Err(Error::NotNonContracting(cat.name().to_string()));
    }
    Ok(CubeClass { branching: is_branching(cat, x), merging: is_merging(cat, x), thin: is_thin(cat, x) })
}
