//! Explicit thin cubes whose boundaries realize T-equivalences.

use std::collections::BTreeMap;

use super::moves::{apply_move, Family, Move};
use super::box_minus;
use crate::error::{Error, Result};
use crate::molecule::{MorphId, OmegaCategory};
use crate::nerve::{compose_cubes, fill_thin, is_branching, is_thin, Shell, SingularCube};

/// Formal integer combination of cubes.
pub type Chain = BTreeMap<SingularCube, i64>;

pub fn add_to(chain: &mut Chain, x: SingularCube, c: i64) {
    let e = chain.entry(x).or_insert(0);
    *e += c;
    if *e == 0 {
        chain.retain(|_, v| *v != 0);
    }
}

/// Σ (-1)^(i+1) ∂_i^- x.
pub fn boundary_minus(x: &SingularCube) -> Result<Chain> {
    let mut out = Chain::new();
    for i in 1..=x.n {
        add_to(&mut out, x.face(i, false)?, if i % 2 == 1 { 1 } else { -1 });
    }
    Ok(out)
}

/// Part of ∂^-(Σ c·w) - target not supported on thin cubes.
pub fn residue(cat: &OmegaCategory, witnesses: &[(i64, SingularCube)], target: &Chain) -> Result<Chain> {
    let mut rest = Chain::new();
    for (c, w) in witnesses {
        for (f, k) in boundary_minus(w)? {
            add_to(&mut rest, f, c * k);
        }
    }
    for (x, &k) in target {
        add_to(&mut rest, x.clone(), -k);
    }
    rest.retain(|x, _| !is_thin(cat, x));
    Ok(rest)
}

/// Whether ∂^- of the witness combination equals `target` up to thin cubes.
pub fn explains(cat: &OmegaCategory, witnesses: &[(i64, SingularCube)], target: &Chain) -> Result<bool> {
    Ok(residue(cat, witnesses, target)?.is_empty())
}

fn difference(y: &SingularCube, x: &SingularCube) -> Chain {
    let mut t = Chain::new();
    add_to(&mut t, y.clone(), 1);
    add_to(&mut t, x.clone(), -1);
    t
}

/// Signs `w` so that ∂^- w = y - x up to thin cubes.
fn oriented(cat: &OmegaCategory, w: SingularCube, y: &SingularCube, x: &SingularCube) -> Result<(i64, SingularCube)> {
    let t = difference(y, x);
    for c in [1, -1] {
        if explains(cat, &[(c, w.clone())], &t)? {
            return Ok((c, w));
        }
    }
    Err(Error::InvalidInput(format!("{} does not explain the move", w.render(cat))))
}

/// Thin cubes whose signed ∂^- is move(x) - x up to thin cubes.
pub fn t_witness(cat: &OmegaCategory, x: &SingularCube, m: Move) -> Result<Vec<(i64, SingularCube)>> {
    if !is_branching(cat, x) {
        return Err(Error::NotBranching);
    }
    let y = apply_move(cat, x, m)?;
    let i = m.i;
    let w = match (m.family, m.plus) {
        (Family::HPsi, false) => apply_move(cat, &x.connection(i + 1, false)?, Move::h(i, false))?,
        (Family::VPsi, false) => apply_move(cat, &x.connection(i, false)?, Move::v(i + 1, false))?,
        (Family::Theta, _) if x.n == 3 => theta_witness(cat, x)?,
        (Family::Theta, _) => {
            return Err(Error::InvalidInput("the theta witness is only built for 3-cubes".into()));
        }
        // positive moves leave the branching cubes
        _ => return Err(Error::InvalidInput(format!("no witness for the positive move {m}"))),
    };
    Ok(vec![oriented(cat, w, &y, x)?])
}

/// The thin 4-cube ω(x) with ∂_2^- ω = θ_1 x and ∂_3^- ω = x. The two
/// faces in direction 4 are thin, so they are filled from the other six.
fn theta_witness(cat: &OmegaCategory, x: &SingularCube) -> Result<SingularCube> {
    let d = |y: &SingularCube, i: usize, plus: bool| y.face(i, plus);
    let bottom = compose_cubes(
        cat,
        &d(&d(x, 1, false)?, 2, true)?.connection(1, false)?,
        &d(&d(x, 2, true)?, 2, true)?.degeneracy(2)?,
        1,
    )?;
    let mut faces = vec![
        [
            d(x, 1, false)?.connection(2, false)?,
            apply_move(cat, &d(x, 1, true)?.connection(1, false)?, Move::v(2, false))?,
        ],
        [apply_move(cat, x, Move::theta(1))?, d(x, 2, true)?.connection(2, false)?],
        [x.clone(), bottom.degeneracy(3)?],
    ];
    let mut last = Vec::with_capacity(2);
    for plus in [false, true] {
        // d_i^a d_4^b ω = d_3^b d_i^a ω
        let shell = (1..=3)
            .map(|i| Ok([d(&faces[i - 1][0], 3, plus)?, d(&faces[i - 1][1], 3, plus)?]))
            .collect::<Result<Vec<_>>>()?;
        last.push(fill_thin(cat, &Shell { n: 2, faces: shell })?);
    }
    faces.push([last[0].clone(), last[1].clone()]);
    fill_thin(cat, &Shell { n: 3, faces })
}

/// z = Γ_j^- x +_j ε_{j+1} y, with ∂_j^- z = x and ∂_{j+1}^- z = x +_j y.
pub fn plus_witness(cat: &OmegaCategory, x: &SingularCube, y: &SingularCube, j: usize) -> Result<SingularCube> {
    compose_cubes(cat, &x.connection(j, false)?, &y.degeneracy(j + 1)?, j)
}

/// The thin (n+1)-cube relating □_n^-(x *_{n-1} y) to □_n^- x + □_n^- y.
pub fn composition_witness(cat: &OmegaCategory, x: MorphId, y: MorphId) -> Result<SingularCube> {
    let n = cat.dim(x);
    if n < 2 || cat.dim(y) != n {
        return Err(Error::InvalidInput("needs two morphisms of the same dimension >= 2".into()));
    }
    let xy = cat.compose(x, y, n - 1).ok_or(Error::NotComposable(n - 1))?;
    let flat = box_minus(cat, cat.tgt(x, 0), n)?;
    let mut faces = Vec::with_capacity(n + 1);
    for h in 1..=n - 2 {
        let mut c = box_minus(cat, cat.boundary(x, h, h % 2 == 0), h)?;
        for k in h..=n - 1 {
            c = c.connection(k, false)?;
        }
        faces.push([c, flat.clone()]);
    }
    faces.push([box_minus(cat, x, n)?, flat.clone()]);
    faces.push([box_minus(cat, xy, n)?, flat.clone()]);
    faces.push([box_minus(cat, y, n)?, flat]);
    fill_thin(cat, &Shell { n, faces })
}
