//! Small precubical sets used by the command line and the test suites.

use crate::molecule::word_label;
use crate::precub::{CubeSpec, PrecubicalSet};

/// Two independent branches leaving `s`: u: s->a, v: a->b, w: s->c, x: c->d.
pub fn two_branches() -> PrecubicalSet {
    PrecubicalSet::from_specs(vec![
        CubeSpec::vertex("s"),
        CubeSpec::vertex("a"),
        CubeSpec::vertex("b"),
        CubeSpec::vertex("c"),
        CubeSpec::vertex("d"),
        CubeSpec::new("u", &[("s", "a")]),
        CubeSpec::new("v", &[("a", "b")]),
        CubeSpec::new("w", &[("s", "c")]),
        CubeSpec::new("x", &[("c", "d")]),
    ])
    .expect("fixture is well formed")
}

/// The path a -u-> b -v-> c.
pub fn path() -> PrecubicalSet {
    PrecubicalSet::from_specs(vec![
        CubeSpec::vertex("a"),
        CubeSpec::vertex("b"),
        CubeSpec::vertex("c"),
        CubeSpec::new("u", &[("a", "b")]),
        CubeSpec::new("v", &[("b", "c")]),
    ])
    .expect("fixture is well formed")
}

/// The full n-cube; cube ids are words over {-,0,+} and d_i^a replaces
/// the i-th letter 0 by a.
pub fn standard_cube(n: usize) -> PrecubicalSet {
    let mut specs = Vec::new();
    let total = 3usize.pow(n as u32);
    for idx in 0..total {
        let mut letters = vec![0u8; n];
        let mut rest = idx;
        for i in (0..n).rev() {
            letters[i] = (rest % 3) as u8;
            rest /= 3;
        }
        let zeros: Vec<usize> = (0..n).filter(|&i| letters[i] == 1).collect();
        let faces = zeros
            .iter()
            .map(|&z| {
                let mut lo = letters.clone();
                lo[z] = 0;
                let mut hi = letters.clone();
                hi[z] = 2;
                [word_label(&lo), word_label(&hi)]
            })
            .collect();
        specs.push(CubeSpec { id: word_label(&letters), dim: zeros.len(), faces });
    }
    PrecubicalSet::from_specs(specs).expect("fixture is well formed")
}
