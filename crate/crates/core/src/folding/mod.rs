//! Folding operators on the cubical nerve and their decomposition into
//! elementary moves.

mod laws;
mod moves;
mod witness;

pub use laws::{law_report, Tally};
pub use moves::{apply_move, apply_pipeline, fold_pipeline, matrix, Family, Move};
pub use witness::{boundary_minus, composition_witness, explains, plus_witness, t_witness, Chain};

use crate::error::{Error, Result};
use crate::molecule::{MorphId, OmegaCategory};
use crate::nerve::{fill_with, is_branching, Shell, SingularCube};

fn one_cube(cat: &OmegaCategory, u: MorphId) -> SingularCube {
    SingularCube { n: 1, images: vec![cat.src(u, 0), u, cat.tgt(u, 0)] }
}

fn check_dim(cat: &OmegaCategory, u: MorphId, n: usize) -> Result<()> {
    if cat.dim(u) > n {
        return Err(Error::InvalidInput(format!("{} has dimension above {n}", cat.label(u))));
    }
    Ok(())
}

/// □_n^- (or its mirror □_n^+ when `plus`): the folded n-cube with
/// interior `u`.
fn folded(cat: &OmegaCategory, u: MorphId, n: usize, plus: bool) -> Result<SingularCube> {
    check_dim(cat, u, n)?;
    match n {
        0 => return Ok(SingularCube::vertex(u)),
        1 => return Ok(one_cube(cat, u)),
        _ => {}
    }
    // the mirror swaps faces, connections and sources with targets
    let base = cat.boundary(u, n - 1, plus);
    let lower = folded(cat, base, n - 1, plus)?;
    let mut faces = Vec::with_capacity(n);
    for i in 1..=n - 2 {
        faces.push([
            lower.face(i, false)?.connection(n - 2, plus)?,
            lower.face(i, true)?.connection(n - 2, plus)?,
        ]);
    }
    for i in n - 1..=n {
        // (-)^i picks the source for odd i
        let side = if plus { i % 2 == 1 } else { i % 2 == 0 };
        let folded_face = folded(cat, cat.boundary(u, n - 1, side), n - 1, plus)?;
        let flat = lower.face(n - 1, !plus)?.degeneracy(n - 1)?;
        faces.push(if plus { [flat, folded_face] } else { [folded_face, flat] });
    }
    fill_with(cat, &Shell { n: n - 1, faces }, u)
}

pub fn box_minus(cat: &OmegaCategory, u: MorphId, n: usize) -> Result<SingularCube> {
    folded(cat, u, n, false)
}

/// Mirror image of □_n^- under the reversal of every coordinate.
pub fn box_plus(cat: &OmegaCategory, u: MorphId, n: usize) -> Result<SingularCube> {
    folded(cat, u, n, true)
}

/// The usual folding □_n, concentrated on the first coordinate.
pub fn box_usual(cat: &OmegaCategory, u: MorphId, n: usize) -> Result<SingularCube> {
    check_dim(cat, u, n)?;
    match n {
        0 => return Ok(SingularCube::vertex(u)),
        1 => return Ok(one_cube(cat, u)),
        _ => {}
    }
    let lower = box_usual(cat, cat.src(u, n - 1), n - 1)?;
    let mut faces = vec![[box_usual(cat, cat.src(u, n - 1), n - 1)?, box_usual(cat, cat.tgt(u, n - 1), n - 1)?]];
    for i in 2..=n {
        faces.push([lower.face(i - 1, false)?.degeneracy(1)?, lower.face(i - 1, true)?.degeneracy(1)?]);
    }
    fill_with(cat, &Shell { n: n - 1, faces }, u)
}

/// Φ_n^-(x) = □_n^-(x(0_n)).
pub fn phi_minus(cat: &OmegaCategory, x: &SingularCube) -> Result<SingularCube> {
    if !is_branching(cat, x) {
        return Err(Error::NotBranching);
    }
    box_minus(cat, x.interior(), x.n)
}

fn is_constant(cat: &OmegaCategory, x: &SingularCube) -> bool {
    let v = x.images[0];
    cat.dim(v) == 0 && x.images.iter().all(|&m| m == v)
}

/// Positive faces are constant and ∂_i^- lies in the image of
/// Γ_{n-2}^- ... Γ_i^- for i <= n-2.
pub fn is_folded(cat: &OmegaCategory, x: &SingularCube) -> bool {
    let n = x.n;
    if n == 0 {
        return true;
    }
    let positive = (1..=n).all(|i| x.face(i, true).is_ok_and(|f| is_constant(cat, &f)));
    let negative = (1..=n.saturating_sub(2)).all(|i| {
        let Ok(z) = x.face(i, false) else { return false };
        // z = Γ_{n-2} ... Γ_i y forces y = ∂_{i+1}^- ... ∂_{n-1}^- z
        let mut y = z.clone();
        for k in (i + 1..=n - 1).rev() {
            y = y.face(k, false).expect("index in range");
        }
        let mut back = y;
        for k in i..=n - 2 {
            back = back.connection(k, false).expect("index in range");
        }
        back == z
    });
    positive && negative
}
