use std::fmt;

use crate::error::{Error, Result};
use crate::molecule::OmegaCategory;
use crate::nerve::shapes::SHAPE_CAP;
use crate::nerve::{compose_cubes, SingularCube};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    VPsi,
    HPsi,
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub family: Family,
    pub plus: bool,
    pub i: usize,
}

impl Move {
    pub fn v(i: usize, plus: bool) -> Move {
        Move { family: Family::VPsi, plus, i }
    }

    pub fn h(i: usize, plus: bool) -> Move {
        Move { family: Family::HPsi, plus, i }
    }

    pub fn theta(i: usize) -> Move {
        Move { family: Family::Theta, plus: false, i }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.plus { '+' } else { '-' };
        match self.family {
            Family::VPsi => write!(f, "vpsi{}{sign}", self.i),
            Family::HPsi => write!(f, "hpsi{}{sign}", self.i),
            Family::Theta => write!(f, "theta{}-", self.i),
        }
    }
}

/// The 2x2 block [[a, b], [c, d]] read with columns along direction j and
/// rows along direction i, bottom row first.
pub fn matrix(cat: &OmegaCategory, rows: [[&SingularCube; 2]; 2], j: usize, i: usize) -> Result<SingularCube> {
    let [[a, b], [c, d]] = rows;
    let bottom = compose_cubes(cat, c, d, j)?;
    let top = compose_cubes(cat, a, b, j)?;
    compose_cubes(cat, &bottom, &top, i)
}

pub fn apply_move(cat: &OmegaCategory, x: &SingularCube, m: Move) -> Result<SingularCube> {
    let n = x.n;
    let max = if m.family == Family::Theta { n.saturating_sub(2) } else { n.saturating_sub(1) };
    if m.i == 0 || m.i > max {
        return Err(Error::BadIndex { index: m.i, max });
    }
    if m.family == Family::Theta && m.plus {
        return Err(Error::InvalidInput("only the negative theta move exists".into()));
    }
    let i = m.i;
    match (m.family, m.plus) {
        (Family::VPsi, false) => compose_cubes(cat, x, &x.face(i, true)?.connection(i, false)?, i),
        (Family::VPsi, true) => compose_cubes(cat, &x.face(i, false)?.connection(i, true)?, x, i),
        (Family::HPsi, false) => compose_cubes(cat, x, &x.face(i + 1, true)?.connection(i, false)?, i + 1),
        (Family::HPsi, true) => compose_cubes(cat, &x.face(i + 1, false)?.connection(i, true)?, x, i + 1),
        (Family::Theta, _) => {
            let y = apply_move(cat, x, Move::v(i, true))?;
            apply_move(cat, &y, Move::v(i + 1, false))
        }
    }
}

/// Moves realizing Φ_n^-, in order of application: the horizontal and
/// vertical sweeps for k = n-1 down to 1, then the theta blocks.
pub fn fold_pipeline(n: usize) -> Result<Vec<Move>> {
    if n > SHAPE_CAP {
        return Err(Error::DimensionCap { requested: n, cap: SHAPE_CAP });
    }
    if n < 2 {
        return Err(Error::InvalidInput("the pipeline starts in degree 2".into()));
    }
    let mut out = Vec::new();
    for k in (1..n).rev() {
        out.extend((1..=k).map(|i| Move::h(i, false)));
        out.extend((1..=k).map(|i| Move::v(i, false)));
    }
    for k in 1..=n - 2 {
        out.extend((k..=n - 2).rev().map(Move::theta));
    }
    Ok(out)
}

pub fn apply_pipeline(cat: &OmegaCategory, pipeline: &[Move], x: &SingularCube) -> Result<SingularCube> {
    pipeline.iter().try_fold(x.clone(), |y, &m| apply_move(cat, &y, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_words() {
        let p2: Vec<String> = fold_pipeline(2).unwrap().iter().map(|m| m.to_string()).collect();
        assert_eq!(p2, ["hpsi1-", "vpsi1-"]);
        let p3: Vec<String> = fold_pipeline(3).unwrap().iter().map(|m| m.to_string()).collect();
        assert_eq!(p3, ["hpsi1-", "hpsi2-", "vpsi1-", "vpsi2-", "hpsi1-", "vpsi1-", "theta1-"]);
        let p4 = fold_pipeline(4).unwrap();
        assert_eq!(p4.iter().filter(|m| m.family == Family::Theta).count(), 3);
    }
}
