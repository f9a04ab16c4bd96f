//! Acceptance run: one PASS/FAIL line per criterion, with its wall time
//! and the time limit it is held to.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use corner::fixtures::{standard_cube, two_branches};
use corner::folding::{box_minus, law_report, phi_minus, Tally};
use corner::homology::linalg::{Lattice, Sparse};
use corner::homology::{
    calcul_crosscheck, diff_formula_check, formal_complex, free_homology, quotient_homology, ChainComplex, CornerComplex,
    HomologySummary, Side, SparseVec,
};
use corner::molecule::{
    bilocalize, build_composable_pair, build_cube, build_free_category, build_presented, thin_counterexample,
    word_label, MorphId, OmegaCategory, Presented, DEFAULT_BUDGET,
};
use corner::nerve::{
    axiom_report, brute_force_cubes, compose_cubes, is_branching, is_thin, Filter, Nerve, Sampling, SingularCube,
};
use corner::precub::goubault_complex;
use corner::Result;

type Verdict = Result<(bool, String)>;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Runs one criterion and prints its line; a run over `limit` fails.
fn criterion(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let outcome = f();
    let took = start.elapsed();
    let (ok, detail) = match outcome {
        Ok((ok, detail)) => (ok && took <= limit, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let tag = if ok { "PASS" } else { "FAIL" };
    println!(
        "[{tag}] {id:>2} {name} ({:.2} s, limit {} s): {detail}",
        took.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn groups(h: &HomologySummary) -> String {
    h.groups.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}

/// Free of torsion with the given Betti numbers.
fn is(h: &HomologySummary, bettis: &[usize]) -> bool {
    h.bettis() == bettis && h.groups.iter().all(|g| g.torsion.is_empty())
}

/// Z in degree 0 and in `p`, zero elsewhere up to `top`.
fn globe_bettis(p: usize, top: usize) -> Vec<usize> {
    (0..=top).map(|n| usize::from(n == 0 || n == p)).collect()
}

fn failures(t: &Tally) -> Vec<String> {
    t.iter().filter(|(_, &(_, f))| f > 0).map(|(k, &(p, f))| format!("{k} ({p} ok, {f} failed)")).collect()
}

fn total(t: &Tally) -> usize {
    t.values().map(|&(p, f)| p + f).sum()
}

fn f1() -> Result<OmegaCategory> {
    build_free_category(&two_branches(), DEFAULT_BUDGET)
}

fn cube_with_label(c: &CornerComplex, n: usize, label: &str) -> SingularCube {
    c.cubes[n].iter().find(|x| c.cat.label(x.interior()) == label).expect("labelled cube").clone()
}

fn c1_goubault() -> Verdict {
    let k = two_branches();
    let minus = free_homology(&goubault_complex(&k, false)?, 0)?;
    let plus = free_homology(&goubault_complex(&k, true)?, 0)?;
    Ok((is(&minus, &[2]) && is(&plus, &[1]), format!("H0- = {}, H0+ = {}", groups(&minus), groups(&plus))))
}

/// Branching complex of `cat` rebuilt from the exhaustive cube search.
fn brute_force_branching(cat: &OmegaCategory, top: usize) -> (Vec<Vec<SingularCube>>, ChainComplex) {
    let cubes: Vec<Vec<SingularCube>> = (0..=top)
        .map(|n| {
            let mut v: Vec<_> = brute_force_cubes(cat, n).into_iter().filter(|x| is_branching(cat, x)).collect();
            v.sort();
            v
        })
        .collect();
    let mut boundaries = Vec::new();
    for n in 0..=top {
        let cols = cubes[n]
            .iter()
            .map(|x| {
                let mut col = SparseVec::new();
                for i in 1..=n {
                    let f = x.face(i, false).expect("face index");
                    let j = cubes[n - 1].iter().position(|y| *y == f).expect("face is branching");
                    col.add_entry(j, if i % 2 == 1 { 1 } else { -1 });
                }
                col
            })
            .collect();
        boundaries.push(cols);
    }
    let labels = cubes.iter().map(|l| l.iter().map(|x| x.render(cat)).collect()).collect();
    (cubes.clone(), ChainComplex::new(labels, boundaries))
}

fn c2_branching_f1() -> Verdict {
    let cat = f1()?;
    let corner = CornerComplex::build(&cat, Side::Branching, 2)?;
    let h = free_homology(&corner.complex, 1)?;
    let (oracle_cubes, oracle_complex) = brute_force_branching(&cat, 2);
    let oracle = free_homology(&oracle_complex, 1)?;
    let same_cubes = oracle_cubes == corner.cubes;

    let lookup = |a: &str, b: &str| cat.compose(cat.lookup_label(a).unwrap(), cat.lookup_label(b).unwrap(), 0).unwrap();
    let chain = |terms: &[(i64, &SingularCube)]| corner.chain(terms);
    let (u, w) = (cube_with_label(&corner, 1, "u"), cube_with_label(&corner, 1, "w"));
    let uv = corner.cubes[1].iter().find(|x| x.interior() == lookup("u", "v")).unwrap().clone();
    let wx = corner.cubes[1].iter().find(|x| x.interior() == lookup("w", "x")).unwrap().clone();
    let class = chain(&[(1, &u), (-1, &w)])?;
    let other = chain(&[(1, &uv), (-1, &wx)])?;
    let is_cycle = corner.complex.apply(1, &class).is_zero();
    let gens: Vec<Sparse<i64>> = corner.complex.boundary(2).iter().map(|v| v.to_sparse()).collect();
    let mut boundaries = Lattice::from_generators(&gens, false);
    let nonzero = !boundaries.contains(&class.to_sparse());
    let equal = boundaries.contains(&class.scaled_add(-1, &other).to_sparse());

    let ok = is(&h, &[2, 1]) && is(&oracle, &[2, 1]) && same_cubes && is_cycle && nonzero && equal;
    Ok((
        ok,
        format!(
            "H = [{}], oracle = [{}], same cubes: {same_cubes}, [u-w] cycle {is_cycle}, nonzero {nonzero}, = [uv-wx] {equal}",
            groups(&h),
            groups(&oracle)
        ),
    ))
}

/// H, HR and HF of a presented category in degrees 0..=3.
fn three_theories(cat: &OmegaCategory) -> Result<[HomologySummary; 3]> {
    let corner = CornerComplex::build(cat, Side::Branching, 4)?;
    Ok([
        free_homology(&corner.complex, 3)?,
        quotient_homology(&corner.reduced(), 3)?,
        quotient_homology(&formal_complex(cat, 4), 3)?,
    ])
}

fn presented_family(kind: Presented, expect: impl Fn(usize) -> Vec<usize>) -> Verdict {
    let mut ok = true;
    let mut detail = String::new();
    for p in 1..=3 {
        let cat = build_presented(kind, p, 4)?;
        let start = Instant::now();
        let [h, hr, hf] = three_theories(&cat)?;
        let want = expect(p);
        let good = is(&h, &want) && is(&hr, &want) && is(&hf, &want) && start.elapsed() <= secs(30);
        ok &= good;
        let _ = write!(
            detail,
            "{}: H [{}] HR [{}] HF [{}] {:.1} s; ",
            cat.name(),
            groups(&h),
            groups(&hr),
            groups(&hf),
            start.elapsed().as_secs_f64()
        );
    }
    Ok((ok, detail.trim_end_matches("; ").to_string()))
}

fn c5_formal_cubes() -> Verdict {
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=3 {
        let cat = build_cube(n, 4)?;
        let hf = quotient_homology(&formal_complex(&cat, 4), 3)?;
        ok &= is(&hf, &[1, 0, 0, 0]);
        let _ = write!(detail, "HF(I^{n}) [{}]; ", groups(&hf));
    }
    Ok((ok, detail.trim_end_matches("; ").to_string()))
}

fn corners_of(cat: &OmegaCategory) -> (MorphId, MorphId) {
    let n = cat.max_dim();
    let lo = cat.lookup_label(&"-".repeat(n)).expect("initial corner");
    let hi = cat.lookup_label(&"+".repeat(n)).expect("final corner");
    (lo, hi)
}

fn c6_bilocalized() -> Verdict {
    let start = Instant::now();
    let i2 = build_cube(2, 4)?;
    let (lo, hi) = corners_of(&i2);
    let b = bilocalize(&i2, &[lo], &[hi])?;
    let h = free_homology(&CornerComplex::build(&b, Side::Branching, 3)?.complex, 2)?;
    let ok = h.group(1).is_zero() && h.group(2).is_zero() && start.elapsed() <= secs(60);
    let mut detail = format!("I^2[--,++]: [{}] in {:.1} s", groups(&h), start.elapsed().as_secs_f64());

    // the three-dimensional case is informational
    let start = Instant::now();
    let i3 = build_cube(3, 4)?;
    let (lo, hi) = corners_of(&i3);
    let attempt = bilocalize(&i3, &[lo], &[hi])
        .and_then(|b3| free_homology(&CornerComplex::build(&b3, Side::Branching, 4)?.complex, 3));
    match attempt {
        Ok(h3) => {
            let _ = write!(detail, "; I^3[---,+++] (not required): [{}] in {:.1} s", groups(&h3), start.elapsed().as_secs_f64());
        }
        Err(e) => {
            let _ = write!(detail, "; I^3[---,+++] (not required): {e}");
        }
    }
    Ok((ok, detail))
}

/// The cube of the quotient whose image of each word is the class of that
/// word in the square.
fn identity_square(q: &OmegaCategory) -> SingularCube {
    let class = |word: &str| -> MorphId {
        (0..q.len() as MorphId)
            .find(|&m| {
                let l = q.label(m);
                l == word || l.strip_prefix('[').and_then(|r| r.strip_suffix(']')).is_some_and(|r| r.split('=').any(|s| s == word))
            })
            .expect("every word has a class")
    };
    let images = (0..9u8).map(|w| class(&word_label(&[w / 3, w % 3]))).collect();
    SingularCube { n: 2, images }
}

fn c7_thin_counterexample() -> Verdict {
    let q = thin_counterexample()?;
    let corner = CornerComplex::build(&q, Side::Branching, 3)?;
    let x = identity_square(&q);
    let branching = is_branching(&q, &x);
    let thin = is_thin(&q, &x);
    let chain = corner.chain(&[(1, &x)])?;
    let cycle = corner.complex.apply(2, &chain).is_zero();
    let gens: Vec<Sparse<i64>> = corner.complex.boundary(3).iter().map(|v| v.to_sparse()).collect();
    let boundary = Lattice::from_generators(&gens, false).contains(&chain.to_sparse());
    Ok((
        branching && thin && cycle && !boundary,
        format!("{}: branching {branching}, thin {thin}, cycle {cycle}, boundary {boundary}", x.render(&q)),
    ))
}

fn c8_operator_suite(fixtures: &[(String, OmegaCategory)]) -> Verdict {
    let mut ok = true;
    let mut detail = String::new();
    for (name, cat) in fixtures {
        let mut nerve = Nerve::new(cat);
        let levels = (0..=3).map(|n| nerve.enumerate(n, Filter::All)).collect::<Result<Vec<_>>>()?;
        let axioms = axiom_report(cat, &levels, Sampling { per_degree: None, seed: 0 });
        let mut branching = Vec::new();
        for n in 2..=3 {
            branching.extend(nerve.enumerate(n, Filter::Branching)?);
        }
        let laws = law_report(cat, &branching);
        let (fa, fl) = (failures(&axioms), failures(&laws));
        ok &= fa.is_empty() && fl.is_empty();
        let _ = write!(detail, "{name}: {} axiom checks, {} law checks", total(&axioms), total(&laws));
        for f in fa.iter().chain(&fl) {
            let _ = write!(detail, ", FAILED {f}");
        }
        detail.push_str("; ");
    }
    Ok((ok, detail.trim_end_matches("; ").to_string()))
}

#[derive(Default)]
struct Count {
    checked: usize,
    failed: Vec<String>,
}

impl Count {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed.push(what());
        }
    }

    fn summary(&self, name: &str) -> String {
        let mut s = format!("{name} {}/{}", self.checked - self.failed.len(), self.checked);
        if let Some(first) = self.failed.first() {
            let _ = write!(s, " (first failure: {first})");
        }
        s
    }
}

/// x ~ Φ(x) on the branching cubes of degree `n`, and the folding of
/// every composite x +_j y whose three interiors have dimension >= 1.
/// Φ only depends on the interior, so verdicts are cached by interiors.
fn folding_checks(corner: &CornerComplex, n: usize, phi: &mut Count, plus: &mut Count) -> Result<()> {
    let cat = corner.cat;
    let mut solver = corner.t_solver(n)?;
    let chain_of = |x: &SingularCube| corner.chain(&[(1, x)]);
    for x in &corner.cubes[n] {
        let ok = match phi_minus(cat, x).and_then(|f| chain_of(&f)) {
            Ok(f) => solver.equivalent(&chain_of(x)?, &f).is_some(),
            Err(_) => false,
        };
        phi.record(ok, || x.render(cat));
    }

    let folded = |u: MorphId| box_minus(cat, u, n).and_then(|f| chain_of(&f)).ok();
    let mut one_of: HashMap<(MorphId, MorphId, MorphId), bool> = HashMap::new();
    let mut to_x: HashMap<(MorphId, usize), bool> = HashMap::new();
    let all = Nerve::new(cat).enumerate(n, Filter::All)?;
    let positive = |x: &SingularCube| cat.dim(x.interior()) >= 1;
    for j in 1..=n {
        let mut by_start: HashMap<SingularCube, Vec<&SingularCube>> = HashMap::new();
        for y in all.iter().filter(|y| positive(y)) {
            by_start.entry(y.face(j, false)?).or_default().push(y);
        }
        for x in all.iter().filter(|x| positive(x)) {
            let Some(ys) = by_start.get(&x.face(j, true)?) else { continue };
            let branching = corner.index(x);
            for y in ys {
                let xy = compose_cubes(cat, x, y, j)?;
                let (u, v, w) = (xy.interior(), x.interior(), y.interior());
                if cat.dim(u) < 1 {
                    continue;
                }
                let what = || format!("{} +{j} {}", x.render(cat), y.render(cat));
                let ok = *one_of.entry((u, v, w)).or_insert_with(|| {
                    let (Some(fu), Some(fv), Some(fw)) = (folded(u), folded(v), folded(w)) else { return false };
                    let sum = fv.scaled_add(1, &fw);
                    [&fv, &fw, &sum].iter().any(|t| solver.equivalent(&fu, t).is_some())
                });
                plus.record(ok, what);
                if let Some(k) = branching {
                    let ok = *to_x.entry((u, k)).or_insert_with(|| {
                        folded(u).is_some_and(|fu| solver.equivalent(&fu, &SparseVec::unit(k)).is_some())
                    });
                    plus.record(ok, what);
                }
            }
        }
    }
    Ok(())
}

/// □_n(a *_p b) against □_n(a) (p = 0) or □_n(a) + □_n(b) (p >= 1) for
/// every stored composition whose factors fit in degree n, plus the
/// normalized form when p = n - 1 and both factors are n-dimensional.
fn composition_checks(corner: &CornerComplex, n: usize, glob: &mut Count, normalized: &mut Count) -> Result<()> {
    let cat = corner.cat;
    let mut solver = corner.t_solver(n)?;
    let mut normal = corner.normalized_boundaries(n)?;
    let boxed = |u: MorphId| box_minus(cat, u, n).and_then(|x| corner.chain(&[(1, &x)]));
    for (a, b, p, c) in cat.compositions() {
        if cat.dim(a).max(cat.dim(b)) > n {
            continue;
        }
        let what = || format!("{} *{p} {} in degree {n}", cat.label(a), cat.label(b));
        let (Ok(lhs), Ok(ba), Ok(bb)) = (boxed(c), boxed(a), boxed(b)) else {
            glob.record(false, what);
            continue;
        };
        let rhs = if p == 0 { ba.clone() } else { ba.scaled_add(1, &bb) };
        glob.record(solver.equivalent(&lhs, &rhs).is_some(), what);
        if p + 1 == n && cat.dim(a) == n && cat.dim(b) == n {
            let d = lhs.scaled_add(-1, &ba).scaled_add(-1, &bb);
            normalized.record(normal.contains(&d.to_sparse()), what);
        }
    }
    Ok(())
}

fn c9_t_equivalence(fixtures: &[(String, OmegaCategory)]) -> Verdict {
    let (mut phi, mut plus, mut glob, mut normalized) = (Count::default(), Count::default(), Count::default(), Count::default());
    let mut pairs = Vec::new();
    for n in 2..=3 {
        for p in 0..n {
            pairs.push((format!("X*{p}Y ({n})"), build_composable_pair(n, p, 4)?));
        }
    }
    for (_, cat) in fixtures.iter().chain(&pairs) {
        let top = cat.max_dim().clamp(2, 3);
        let corner = CornerComplex::build(cat, Side::Branching, top + 1)?;
        for n in 2..=top {
            folding_checks(&corner, n, &mut phi, &mut plus)?;
            composition_checks(&corner, n, &mut glob, &mut normalized)?;
        }
    }
    let counts = [(&phi, "x~Phi(x)"), (&plus, "Phi(x+_j y)"), (&glob, "box of composites"), (&normalized, "normalized")];
    let ok = counts.iter().all(|(c, _)| c.failed.is_empty() && c.checked > 0);
    Ok((ok, counts.iter().map(|(c, name)| c.summary(name)).collect::<Vec<_>>().join("; ")))
}

fn c10_calcul() -> Verdict {
    let mut ok = true;
    let mut detail = String::new();
    for (kind, p) in [(Presented::Arrow, 2), (Presented::Arrow, 3), (Presented::Pair, 2), (Presented::Pair, 3)] {
        let cat = build_presented(kind, p, 4)?;
        let report = calcul_crosscheck(&cat, 3)?;
        ok &= report.matches() && report.rows.len() == 2;
        let rows: Vec<String> = report
            .rows
            .iter()
            .map(|r| format!("H{}-={} H{}(P)={}", r.n + 1, r.branching, r.n, r.shifted))
            .collect();
        let _ = write!(detail, "{}: {}; ", report.category, rows.join(" "));
    }
    Ok((ok, detail.trim_end_matches("; ").to_string()))
}

fn c11_diff(fixtures: &[(String, OmegaCategory)]) -> Verdict {
    let mut ok = true;
    let mut detail = String::new();
    for (name, cat) in fixtures {
        for n in 2..=3 {
            let r = diff_formula_check(cat, n)?;
            ok &= r.ok();
            let _ = write!(
                detail,
                "{name} n={n}: {} cubes, {} failures; ",
                r.cubes,
                r.source_failures.len() + r.target_failures.len()
            );
        }
    }
    Ok((ok, detail.trim_end_matches("; ").to_string()))
}

fn c12_table(fixtures: &[(String, OmegaCategory)]) -> Verdict {
    let mut extra = Vec::new();
    for p in 1..=3 {
        extra.push((format!("2_{p}"), build_presented(Presented::Arrow, p, 4)?, true));
        extra.push((format!("G_{p}"), build_presented(Presented::Pair, p, 4)?, true));
    }
    let i2 = build_cube(2, 4)?;
    let (lo, hi) = corners_of(&i2);
    extra.push(("I^2[--,++]".into(), bilocalize(&i2, &[lo], &[hi])?, true));
    extra.push(("thin quotient".into(), thin_counterexample()?, false));
    let rows = fixtures.iter().map(|(n, c)| (n.clone(), c.clone(), true)).chain(extra);
    let mut table = String::from("\n      fixture        free  H^- (0..2)           HR^- (0..2)          agree\n");
    let mut free_agree = true;
    for (name, cat, free) in rows {
        let corner = CornerComplex::build(&cat, Side::Branching, 3)?;
        let h = free_homology(&corner.complex, 2)?;
        let hr = quotient_homology(&corner.reduced(), 2)?;
        let agree = h == hr;
        if free {
            free_agree &= agree;
        }
        let _ = writeln!(table, "      {name:<14} {:<5} {:<20} {:<20} {agree}", free, groups(&h), groups(&hr));
    }
    let _ = write!(table, "      agreement on all free fixtures: {free_agree}");
    Ok((true, table))
}

type Check<'a> = (usize, &'a str, u64, Box<dyn FnOnce() -> Verdict + 'a>);

/// Criterion numbers given on the command line select a subset.
fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let fixtures = || -> Result<Vec<(String, OmegaCategory)>> {
        Ok(vec![
            ("F(F1)".to_string(), f1()?),
            ("I^2".to_string(), build_free_category(&standard_cube(2), DEFAULT_BUDGET)?),
            ("I^3".to_string(), build_free_category(&standard_cube(3), DEFAULT_BUDGET)?),
        ])
    };
    let fixtures = fixtures().expect("fixtures build");
    let fx = &fixtures;
    let checks: Vec<Check> = vec![
        (1, "Goubault baseline on F1", 1, Box::new(c1_goubault)),
        (2, "branching homology of F(F1)", 10, Box::new(c2_branching_f1)),
        (3, "H, HR, HF of 2_p", 90, Box::new(|| presented_family(Presented::Arrow, |_| globe_bettis(0, 3)))),
        (4, "H, HR, HF of G_p", 90, Box::new(|| presented_family(Presented::Pair, |p| globe_bettis(p, 3)))),
        (5, "formal homology of I^n", 30, Box::new(c5_formal_cubes)),
        (6, "bilocalized square", 60 + 600, Box::new(c6_bilocalized)),
        (7, "thin cycle that is not a boundary", 30, Box::new(c7_thin_counterexample)),
        (8, "cubical axioms and operator laws", 300, Box::new(move || c8_operator_suite(fx))),
        (9, "T-equivalence suite", 300, Box::new(move || c9_t_equivalence(fx))),
        (10, "path shift cross-check", 120, Box::new(c10_calcul)),
        (11, "boundary identities of folded cubes", 120, Box::new(move || c11_diff(fx))),
        (12, "H^- against HR^-", 600, Box::new(move || c12_table(fx))),
    ];
    let started = Instant::now();
    let mut results = Vec::new();
    for (id, name, limit, f) in checks {
        if only.is_empty() || only.contains(&id) {
            results.push(criterion(id, name, secs(limit), f));
        }
    }
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed in {:.1} s", results.len(), started.elapsed().as_secs_f64());
}
