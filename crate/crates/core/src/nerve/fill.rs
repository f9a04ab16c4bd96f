use super::cube::SingularCube;
use super::shapes::{center, letters, pow3, shapes, SHAPE_CAP};
use crate::error::{Error, Result};
use crate::molecule::{try_evaluate, CellId, MorphId, OmegaCategory};

/// The 2(n+1) faces of a prospective (n+1)-cube; `faces[i-1][0]` is the
/// face d_i^- and `faces[i-1][1]` is d_i^+.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shell {
    pub n: usize,
    pub faces: Vec<[SingularCube; 2]>,
}

impl Shell {
    pub fn of(x: &SingularCube) -> Result<Shell> {
        let faces = (1..=x.n).map(|i| Ok([x.face(i, false)?, x.face(i, true)?])).collect::<Result<_>>()?;
        Ok(Shell { n: x.n - 1, faces })
    }

    pub fn face(&self, i: usize, plus: bool) -> &SingularCube {
        &self.faces[i - 1][plus as usize]
    }

    /// Checks d_i^a x_j^b = d_{j-1}^b x_i^a for i < j.
    pub fn check(&self) -> Result<()> {
        let m = self.n + 1;
        if self.faces.len() != m || self.faces.iter().flatten().any(|f| f.n != self.n) {
            return Err(Error::NotFillable("faces have the wrong degree".into()));
        }
        for i in 1..=m {
            for j in i + 1..=m {
                for a in [false, true] {
                    for b in [false, true] {
                        if self.face(j, b).face(i, a)? != self.face(i, a).face(j - 1, b)? {
                            return Err(Error::NotFillable(format!("faces ({i},{a}) and ({j},{b}) disagree")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Images of every non-central word, with a placeholder at the centre.
    pub fn images(&self) -> Vec<MorphId> {
        let m = self.n + 1;
        (0..pow3(m))
            .map(|w| {
                let l = letters(w, m);
                match l.iter().position(|&c| c != 1) {
                    None => MorphId::MAX,
                    Some(i) => {
                        let mut rest = l.clone();
                        rest.remove(i);
                        self.faces[i][(l[i] == 2) as usize].image(&rest)
                    }
                }
            })
            .collect()
    }

    /// Evaluated (n-source, n-target) of the shell, when defined.
    pub fn boundary(&self, cat: &OmegaCategory) -> Option<(MorphId, MorphId)> {
        let m = self.n + 1;
        let images = self.images();
        let image = |c: CellId| images[c as usize];
        let (s, t) = &shapes(m).bounds[center(m)][m - 1];
        Some((try_evaluate(s, cat, &image)?, try_evaluate(t, cat, &image)?))
    }
}

fn in_source(i: usize, plus: bool) -> bool {
    plus == i.is_multiple_of(2)
}

/// Fills any consistent shell whose evaluated boundary matches `u`.
pub fn fill_with(cat: &OmegaCategory, shell: &Shell, u: MorphId) -> Result<SingularCube> {
    if shell.n + 1 > SHAPE_CAP {
        return Err(Error::DimensionCap { requested: shell.n + 1, cap: SHAPE_CAP });
    }
    shell.check()?;
    fill(cat, shell, u)
}

fn fill(cat: &OmegaCategory, shell: &Shell, u: MorphId) -> Result<SingularCube> {
    let m = shell.n + 1;
    let (s, t) = shell.boundary(cat).ok_or(Error::SourceMismatch)?;
    if cat.dim(u) > m || cat.src(u, m - 1) != s || cat.tgt(u, m - 1) != t {
        return Err(Error::SourceMismatch);
    }
    let mut images = shell.images();
    images[center(m)] = u;
    Ok(SingularCube { n: m, images })
}

/// Fills a shell whose source and target parity classes each contain
/// exactly one non-thin face.
pub fn fill_shell(cat: &OmegaCategory, shell: &Shell, u: MorphId) -> Result<SingularCube> {
    if shell.n + 1 > SHAPE_CAP {
        return Err(Error::DimensionCap { requested: shell.n + 1, cap: SHAPE_CAP });
    }
    shell.check()?;
    for source in [true, false] {
        let thick = (1..=shell.n + 1)
            .flat_map(|i| [(i, false), (i, true)])
            .filter(|&(i, p)| in_source(i, p) == source && cat.dim(shell.face(i, p).interior()) == shell.n)
            .count();
        if thick != 1 {
            let side = if source { "source" } else { "target" };
            return Err(Error::NotFillable(format!("{thick} non-thin faces in the {side} class")));
        }
    }
    fill(cat, shell, u)
}

/// Fills a shell whose evaluated source and target coincide, with that
/// common value as interior.
pub fn fill_thin(cat: &OmegaCategory, shell: &Shell) -> Result<SingularCube> {
    if shell.n + 1 > SHAPE_CAP {
        return Err(Error::DimensionCap { requested: shell.n + 1, cap: SHAPE_CAP });
    }
    shell.check()?;
    let (s, t) = shell.boundary(cat).ok_or(Error::SourceMismatch)?;
    if s != t {
        return Err(Error::SourceMismatch);
    }
    fill(cat, shell, s)
}
