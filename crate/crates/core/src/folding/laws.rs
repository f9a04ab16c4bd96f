//! Identities satisfied by the elementary moves, checked cube by cube.

use std::collections::BTreeMap;

use super::moves::{apply_move, apply_pipeline, fold_pipeline, Move};
use super::{is_folded, phi_minus};
use crate::error::Result;
use crate::molecule::OmegaCategory;
use crate::nerve::shapes::SHAPE_CAP;
use crate::nerve::{compose_cubes, is_branching, SingularCube};

/// Law name to (passed, failed) counts.
pub type Tally = BTreeMap<String, (usize, usize)>;

fn record(tally: &mut Tally, name: &str, ok: bool) {
    let e = tally.entry(name.to_string()).or_default();
    if ok {
        e.0 += 1;
    } else {
        e.1 += 1;
    }
}

/// Records `lhs == rhs`; an evaluation error counts as a failure.
fn check(tally: &mut Tally, name: &str, lhs: Result<SingularCube>, rhs: Result<SingularCube>) {
    let ok = matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b);
    record(tally, name, ok);
}

fn d(y: &SingularCube, i: usize, plus: bool) -> Result<SingularCube> {
    y.face(i, plus)
}

fn sign(plus: bool) -> char {
    if plus {
        '+'
    } else {
        '-'
    }
}

/// Face and connection identities of the moves on one cube.
pub fn commutation_laws(cat: &OmegaCategory, x: &SingularCube, tally: &mut Tally) {
    let n = x.n;
    let mv = |y: &SingularCube, m: Move| apply_move(cat, y, m);
    for i in 1..n {
        for (name, m) in [("vpsi", Move::v as fn(usize, bool) -> Move), ("hpsi", Move::h)] {
            let y = mv(x, m(i, false));
            for a in [false, true] {
                for j in 1..i {
                    check(
                        tally,
                        &format!("d_j {name}_i- (j<i)"),
                        y.as_ref().map_err(Clone::clone).and_then(|y| d(y, j, a)),
                        d(x, j, a).and_then(|f| mv(&f, m(i - 1, false))),
                    );
                }
                for j in i + 2..=n {
                    check(
                        tally,
                        &format!("d_j {name}_i- (j>i+1)"),
                        y.as_ref().map_err(Clone::clone).and_then(|y| d(y, j, a)),
                        d(x, j, a).and_then(|f| mv(&f, m(i, false))),
                    );
                }
            }
        }
        let v = mv(x, Move::v(i, false));
        let h = mv(x, Move::h(i, false));
        let face = |y: &Result<SingularCube>, k: usize, a: bool| y.as_ref().map_err(Clone::clone).and_then(|y| d(y, k, a));
        check(tally, "d_i- vpsi_i-", face(&v, i, false), d(x, i, false));
        check(tally, "d_i+ vpsi_i-", face(&v, i, true), d(x, i, true).and_then(|f| d(&f, i, true)).and_then(|f| f.degeneracy(i)));
        check(
            tally,
            "d_i+1- vpsi_i-",
            face(&v, i + 1, false),
            d(x, i + 1, false).and_then(|a| compose_cubes(cat, &a, &d(x, i, true)?, i)),
        );
        check(tally, "d_i+1+ vpsi_i-", face(&v, i + 1, true), d(x, i + 1, true));
        check(
            tally,
            "d_i- hpsi_i-",
            face(&h, i, false),
            d(x, i, false).and_then(|a| compose_cubes(cat, &a, &d(x, i + 1, true)?, i)),
        );
        check(tally, "d_i+ hpsi_i-", face(&h, i, true), d(x, i, true));
        check(tally, "d_i+1- hpsi_i-", face(&h, i + 1, false), d(x, i + 1, false));
        check(
            tally,
            "d_i+1+ hpsi_i-",
            face(&h, i + 1, true),
            d(x, i + 1, true).and_then(|f| d(&f, i, true)).and_then(|f| f.degeneracy(i)),
        );
    }
    for i in 1..=n.saturating_sub(2) {
        let t = mv(x, Move::theta(i));
        let face = |k: usize, a: bool| t.as_ref().map_err(Clone::clone).and_then(|y| d(y, k, a));
        for a in [false, true] {
            for j in 1..i {
                check(tally, "d_j theta_i (j<i)", face(j, a), d(x, j, a).and_then(|f| mv(&f, Move::theta(i - 1))));
            }
            for j in i + 3..=n {
                check(tally, "d_j theta_i (j>i+2)", face(j, a), d(x, j, a).and_then(|f| mv(&f, Move::theta(i))));
            }
        }
        check(
            tally,
            "d_i- theta_i",
            face(i, false),
            d(x, i, false).and_then(|f| d(&f, i, false)).and_then(|f| f.connection(i, false)),
        );
        check(tally, "d_i+ theta_i", face(i, true), d(x, i, true).and_then(|f| mv(&f, Move::v(i, false))));
        check(tally, "d_i+1- theta_i", face(i + 1, false), d(x, i + 1, false));
        check(
            tally,
            "d_i+1+ theta_i",
            face(i + 1, true),
            (|| {
                let l = d(&d(x, i, false)?, i + 1, true)?.degeneracy(i + 1)?;
                let r = d(&d(x, i + 1, true)?, i + 1, true)?.degeneracy(i + 1)?;
                compose_cubes(cat, &l, &r, i)
            })(),
        );
        check(
            tally,
            "d_i+2- theta_i",
            face(i + 2, false),
            (|| {
                let block = d(&d(x, i, false)?, i + 1, false)?.connection(i, true)?;
                let a = d(x, i + 2, false)?;
                let b = d(x, i + 1, true)?;
                let c = d(x, i, false)?;
                super::matrix(cat, [[&a, &b], [&block, &c]], i + 1, i)
            })(),
        );
        check(tally, "d_i+2+ theta_i", face(i + 2, true), d(x, i + 2, true).and_then(|f| mv(&f, Move::v(i, true))));
    }
    // theta on connections: theta_i lives on the (n+1)-cube Γ_j^- x
    if n + 1 > SHAPE_CAP {
        return;
    }
    for j in 1..=n {
        let g = match x.connection(j, false) {
            Ok(g) => g,
            Err(_) => continue,
        };
        for i in 1..n {
            if j < i {
                let lhs = mv(&g, Move::theta(i));
                let rhs = mv(x, Move::theta(i - 1)).and_then(|y| y.connection(j, false));
                // the instance j = i-1 fails in general since ∂_i^+ Γ_{i-1}^- = ε ∂
                if j + 1 < i {
                    check(tally, "theta_i G_j- (j<i-1)", lhs.clone(), rhs.clone());
                }
                check(tally, "theta_i G_j- (j<i)", lhs, rhs);
            }
            if j > i + 2 {
                check(tally, "theta_i G_j- (j>i+2)", mv(&g, Move::theta(i)), mv(x, Move::theta(i)).and_then(|y| y.connection(j, false)));
            }
            if j == i {
                check(tally, "theta_i G_i-", mv(&g, Move::theta(i)), x.connection(i + 1, false));
            }
            if j == i + 1 {
                check(tally, "theta_i G_i+1-", mv(&g, Move::theta(i)), x.connection(i + 1, false));
            }
        }
    }
}

/// Idempotence, commutation and braid relations between the ψ moves.
pub fn move_algebra(cat: &OmegaCategory, x: &SingularCube, tally: &mut Tally) {
    let n = x.n;
    let run = |ms: &[Move]| apply_pipeline(cat, ms, x);
    for i in 1..n {
        for plus in [false, true] {
            let s = sign(plus);
            let (v, h) = (Move::v(i, plus), Move::h(i, plus));
            check(tally, &format!("vpsi{s} idempotent"), run(&[v, v]), run(&[v]));
            check(tally, &format!("hpsi{s} idempotent"), run(&[h, h]), run(&[h]));
            check(tally, &format!("vpsi_i{s} hpsi_i{s} commute"), run(&[h, v]), run(&[v, h]));
            if i + 1 < n {
                let (v1, h1) = (Move::v(i + 1, plus), Move::h(i + 1, plus));
                check(tally, &format!("hpsi_i+1{s} vpsi_i{s} commute"), run(&[v, h1]), run(&[h1, v]));
                check(tally, &format!("vpsi{s} braid"), run(&[v, v1, v]), run(&[v1, v, v1]));
                check(tally, &format!("hpsi{s} braid"), run(&[h, h1, h]), run(&[h1, h, h1]));
            }
            for j in 1..n {
                if i.abs_diff(j) >= 2 {
                    for beta in [false, true] {
                        let hj = Move::h(j, beta);
                        check(tally, "vpsi_i hpsi_j commute (|i-j|>=2)", run(&[hj, v]), run(&[v, hj]));
                    }
                }
            }
        }
    }
}

/// The ψ part of the pipeline sends every positive face to the final vertex.
pub fn aspiration(cat: &OmegaCategory, x: &SingularCube, tally: &mut Tally) {
    let n = x.n;
    if n < 2 {
        return;
    }
    let Ok(pipeline) = fold_pipeline(n) else { return };
    let psi: Vec<Move> = pipeline.into_iter().take(n * (n - 1)).collect();
    let y = apply_pipeline(cat, &psi, x);
    let mut corner = x.clone();
    for _ in 0..n {
        corner = corner.face(1, true).expect("nonempty cube");
    }
    let flat = (1..n).try_fold(corner, |c, _| c.degeneracy(1));
    for i in 1..=n {
        check(tally, "aspiration", y.as_ref().map_err(Clone::clone).and_then(|y| d(y, i, true)), flat.clone());
    }
}

/// Pipeline against Φ_n^-, idempotence and the folded characterization.
pub fn fold_laws(cat: &OmegaCategory, x: &SingularCube, tally: &mut Tally) {
    if x.n < 2 || !is_branching(cat, x) {
        return;
    }
    let phi = phi_minus(cat, x);
    let piped = fold_pipeline(x.n).and_then(|p| apply_pipeline(cat, &p, x));
    check(tally, "pipeline = phi", piped, phi.clone());
    let Ok(phi) = phi else { return };
    check(tally, "phi idempotent", phi_minus(cat, &phi), Ok(phi.clone()));
    record(tally, "phi folded", is_folded(cat, &phi));
    record(tally, "folded iff fixed", is_folded(cat, x) == (phi == *x));
}

/// All of the above on every cube of `cubes`.
pub fn law_report<'a>(cat: &OmegaCategory, cubes: impl IntoIterator<Item = &'a SingularCube>) -> Tally {
    let mut tally = Tally::new();
    for x in cubes {
        commutation_laws(cat, x, &mut tally);
        move_algebra(cat, x, &mut tally);
        aspiration(cat, x, &mut tally);
        fold_laws(cat, x, &mut tally);
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::build_cube;
    use crate::nerve::{Filter, Nerve};

    #[test]
    fn laws_on_the_cube() {
        let cat = build_cube(3, 3).unwrap();
        let mut nerve = Nerve::new(&cat);
        for n in 2..=3 {
            let cubes = nerve.enumerate(n, Filter::Branching).unwrap();
            let tally = law_report(&cat, &cubes);
            let failed: Vec<_> = tally.iter().filter(|(_, &(_, f))| f > 0).map(|(k, _)| k.as_str()).collect();
            let expect: &[&str] = if n == 3 { &["theta_i G_j- (j<i)"] } else { &[] };
            assert_eq!(failed, expect, "n={n}: {tally:?}");
            assert!(tally.contains_key("pipeline = phi"));
        }
    }
}
