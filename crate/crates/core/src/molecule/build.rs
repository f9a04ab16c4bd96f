use super::category::{OmegaCategory, DEFAULT_BUDGET};
use super::complex::CellComplex;
use super::ops::quotient;
use crate::error::{Error, Result};
use crate::precub::{validate, PrecubicalSet};

fn check_cap(requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::DimensionCap { requested, cap })
    } else {
        Ok(())
    }
}

/// The free category on the n-cube.
pub fn build_cube(n: usize, cap: usize) -> Result<OmegaCategory> {
    check_cap(n, cap)?;
    OmegaCategory::free(&format!("I^{n}"), CellComplex::cube(n), DEFAULT_BUDGET)
}

/// The n-th oriental.
pub fn build_oriental(n: usize, cap: usize) -> Result<OmegaCategory> {
    check_cap(n, cap)?;
    OmegaCategory::free(&format!("D^{n}"), CellComplex::oriental(n), DEFAULT_BUDGET)
}

/// Free category on a validated, acyclic precubical set.
pub fn build_free_category(k: &PrecubicalSet, budget: usize) -> Result<OmegaCategory> {
    let report = validate(k);
    if !report.ok {
        let first = &report.violations[0];
        return Err(Error::InvalidInput(format!("{} ({} violations)", first.message, report.violations.len())));
    }
    OmegaCategory::free("F(K)", CellComplex::from_precubical(k)?, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presented {
    /// Free category on one p-morphism.
    Arrow,
    /// Free category on two parallel p-morphisms A and B.
    Pair,
}

pub fn build_presented(kind: Presented, p: usize, cap: usize) -> Result<OmegaCategory> {
    if p == 0 {
        return Err(Error::InvalidInput("presented categories need p >= 1".into()));
    }
    check_cap(p, cap)?;
    let (name, tops): (String, &[&str]) = match kind {
        Presented::Arrow => (format!("2_{p}"), &["A"]),
        Presented::Pair => (format!("G_{p}"), &["A", "B"]),
    };
    OmegaCategory::free(&name, CellComplex::globe(p, tops), DEFAULT_BUDGET)
}

/// Free category on two n-morphisms X and Y with t_p X = s_p Y.
pub fn build_composable_pair(n: usize, p: usize, cap: usize) -> Result<OmegaCategory> {
    check_cap(n, cap)?;
    if p >= n {
        return Err(Error::InvalidInput(format!("cannot glue {n}-globes along dimension {p}")));
    }
    OmegaCategory::free(&format!("X*{p}Y"), CellComplex::composable_pair(n, p), DEFAULT_BUDGET)
}

/// The square with its left and bottom edges identified, the two paths
/// around it identified, and the square itself identified with the
/// common composite (so the identity 2-cube becomes thin).
pub fn thin_counterexample() -> Result<OmegaCategory> {
    let i2 = build_cube(2, 2)?;
    let l = |s: &str| i2.lookup_label(s).expect("cube label");
    quotient(
        &i2,
        "I^2/~",
        &[(l("-0"), l("0-")), (l("{-0,0+}"), l("{0-,+0}")), (l("00"), l("{-0,0+}"))],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precub::CubeSpec;

    #[test]
    fn caps() {
        assert!(matches!(build_cube(5, 4), Err(Error::DimensionCap { requested: 5, cap: 4 })));
        assert!(build_presented(Presented::Arrow, 0, 3).is_err());
    }

    #[test]
    fn orientals() {
        assert_eq!(build_oriental(0, 4).unwrap().len(), 1);
        assert_eq!(build_oriental(1, 4).unwrap().len(), 3);
        let d2 = build_oriental(2, 4).unwrap();
        // 3 vertices, 3 edges, 01*12, the 2-cell
        assert_eq!(d2.len(), 8);
        assert!(d2.check_axioms().is_ok());
    }

    #[test]
    fn composable_pairs() {
        for n in 1..=3 {
            for p in 0..n {
                let c = build_composable_pair(n, p, 3).unwrap();
                assert!(c.check_axioms().is_ok());
                let (x, y) = (c.lookup_label("X").unwrap(), c.lookup_label("Y").unwrap());
                assert_eq!(c.tgt(x, p), c.src(y, p));
                let xy = c.compose(x, y, p).expect("X *p Y");
                assert_eq!(c.src(xy, p), c.src(x, p));
                assert_eq!(c.tgt(xy, p), c.tgt(y, p));
                assert_eq!(c.compose(y, x, p), None);
            }
        }
        assert!(build_composable_pair(2, 2, 3).is_err());
    }

    #[test]
    fn free_on_path() {
        let k = PrecubicalSet::from_specs(vec![
            CubeSpec::vertex("a"),
            CubeSpec::vertex("b"),
            CubeSpec::vertex("c"),
            CubeSpec::new("u", &[("a", "b")]),
            CubeSpec::new("v", &[("b", "c")]),
        ])
        .unwrap();
        let f = build_free_category(&k, DEFAULT_BUDGET).unwrap();
        assert_eq!(f.len(), 6);
        let (u, v) = (f.lookup_label("u").unwrap(), f.lookup_label("v").unwrap());
        assert_eq!(f.label(f.compose(u, v, 0).unwrap()), "{u,v}");
        assert_eq!(f.compose(v, u, 0), None);
    }

    #[test]
    fn cyclic_input_is_rejected() {
        let k = PrecubicalSet::from_specs(vec![
            CubeSpec::vertex("a"),
            CubeSpec::vertex("b"),
            CubeSpec::new("u", &[("a", "b")]),
            CubeSpec::new("v", &[("b", "a")]),
        ])
        .unwrap();
        assert!(matches!(build_free_category(&k, DEFAULT_BUDGET), Err(Error::InvalidInput(_))));
    }
}
