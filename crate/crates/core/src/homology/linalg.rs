//! Exact integer linear algebra. Every routine runs on checked `i64` first
//! and reruns on `BigInt` when an intermediate value overflows.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

type Res<T> = std::result::Result<T, Overflow>;

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Res<Self>;
    fn to_big(&self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn neg(&self) -> Res<Self>;
    fn add(&self, o: &Self) -> Res<Self>;
    fn sub(&self, o: &Self) -> Res<Self>;
    fn mul(&self, o: &Self) -> Res<Self>;
    /// Euclidean quotient (remainder in `0..|o|`).
    fn div_euclid(&self, o: &Self) -> Res<Self>;
    fn abs_cmp(&self, o: &Self) -> std::cmp::Ordering;
    /// (g, s, t) with g = s*a + t*b and g > 0.
    fn xgcd(a: &Self, b: &Self) -> Res<(Self, Self, Self)>;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn from_big(v: &BigInt) -> Res<Self> {
        v.to_i64().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Res<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn add(&self, o: &Self) -> Res<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Res<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Res<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn div_euclid(&self, o: &Self) -> Res<Self> {
        self.checked_div_euclid(*o).ok_or(Overflow)
    }
    fn abs_cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.unsigned_abs().cmp(&o.unsigned_abs())
    }
    fn xgcd(a: &Self, b: &Self) -> Res<(Self, Self, Self)> {
        let (mut r0, mut r1) = (*a as i128, *b as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0.div_euclid(r1);
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 < 0 {
            (r0, s0, t0) = (-r0, -s0, -t0);
        }
        let cv = |v: i128| i64::try_from(v).map_err(|_| Overflow);
        Ok((cv(r0)?, cv(s0)?, cv(t0)?))
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Res<Self> {
        Ok(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Res<Self> {
        Ok(-self)
    }
    fn add(&self, o: &Self) -> Res<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Res<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Res<Self> {
        Ok(self * o)
    }
    fn div_euclid(&self, o: &Self) -> Res<Self> {
        let (q, r) = self.div_mod_floor(o);
        // floor division leaves r with the sign of o; shift to a nonnegative remainder
        if Signed::is_negative(&r) {
            Ok(q + 1)
        } else {
            Ok(q)
        }
    }
    fn abs_cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.magnitude().cmp(o.magnitude())
    }
    fn xgcd(a: &Self, b: &Self) -> Res<(Self, Self, Self)> {
        let e = a.extended_gcd(b);
        if Signed::is_negative(&e.gcd) {
            Ok((-e.gcd, -e.x, -e.y))
        } else {
            Ok((e.gcd, e.x, e.y))
        }
    }
}

/// Sparse vector sorted by index without explicit zeros.
pub type Sparse<T> = Vec<(usize, T)>;

fn lead<T>(v: &Sparse<T>) -> Option<&(usize, T)> {
    v.first()
}

fn get<T: Coeff>(v: &Sparse<T>, idx: usize) -> Option<&T> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

/// a*x + b*y
fn comb<T: Coeff>(a: &T, x: &Sparse<T>, b: &T, y: &Sparse<T>) -> Res<Sparse<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (idx, val) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let r = (x[i].0, a.mul(&x[i].1)?);
            i += 1;
            r
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let r = (y[j].0, b.mul(&y[j].1)?);
            j += 1;
            r
        } else {
            let r = (x[i].0, a.mul(&x[i].1)?.add(&b.mul(&y[j].1)?)?);
            i += 1;
            j += 1;
            r
        };
        if !val.is_nil() {
            out.push((idx, val));
        }
    }
    Ok(out)
}

fn convert<S: Coeff, T: Coeff>(v: &Sparse<S>) -> Res<Sparse<T>> {
    v.iter().map(|(i, x)| Ok((*i, T::from_big(&x.to_big())?))).collect()
}

fn run_with_fallback<S: Coeff, R>(
    input: &[Sparse<S>],
    small: impl Fn(&[Sparse<i64>]) -> Res<R>,
    big: impl Fn(&[Sparse<BigInt>]) -> R,
) -> R {
    let as_small: Res<Vec<Sparse<i64>>> = input.iter().map(convert).collect();
    if let Ok(cols) = as_small {
        if let Ok(r) = small(&cols) {
            return r;
        }
    }
    let cols: Vec<Sparse<BigInt>> = input.iter().map(|v| convert(v).expect("bigint")).collect();
    big(&cols)
}

/// Nonzero invariant factors of the matrix whose columns are `cols`, in
/// divisibility order.
pub fn invariant_factors<S: Coeff>(cols: &[Sparse<S>]) -> Vec<BigInt> {
    run_with_fallback(cols, factors_generic::<i64>, |c| factors_generic::<BigInt>(c).expect("no overflow"))
}

pub fn rank<S: Coeff>(cols: &[Sparse<S>]) -> usize {
    invariant_factors(cols).len()
}

fn factors_generic<T: Coeff>(input: &[Sparse<T>]) -> Res<Vec<BigInt>> {
    let mut cols: Vec<Option<Sparse<T>>> =
        input.iter().map(|c| if c.is_empty() { None } else { Some(c.clone()) }).collect();
    let mut row_cols: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (c, col) in cols.iter().enumerate() {
        if let Some(col) = col {
            for (r, _) in col {
                row_cols.entry(*r).or_default().insert(c);
            }
        }
    }
    let mut units = 0usize;
    let mut candidates: BTreeSet<(usize, usize)> = cols
        .iter()
        .enumerate()
        .filter_map(|(c, col)| col.as_ref().map(|v| (v.len(), c)))
        .collect();
    while let Some((_, c)) = candidates.pop_first() {
        let Some(col) = cols[c].clone() else { continue };
        // pick the unit entry whose row is shortest
        let pivot = col
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(r, _)| row_cols.get(r).map_or(0, |s| s.len()));
        let Some((r, pv)) = pivot.cloned() else { continue };
        let others: Vec<usize> = row_cols[&r].iter().copied().filter(|&o| o != c).collect();
        for o in others {
            let ocol = cols[o].take().expect("indexed column");
            let factor = get(&ocol, r).expect("indexed entry").mul(&pv)?.neg()?;
            let updated = comb(&T::from_i64(1), &ocol, &factor, &col)?;
            for (rr, _) in &ocol {
                row_cols.get_mut(rr).map(|s| s.remove(&o));
            }
            candidates.remove(&(ocol.len(), o));
            if !updated.is_empty() {
                for (rr, _) in &updated {
                    row_cols.entry(*rr).or_default().insert(o);
                }
                candidates.insert((updated.len(), o));
                cols[o] = Some(updated);
            }
        }
        for (rr, _) in &col {
            row_cols.get_mut(rr).map(|s| s.remove(&c));
        }
        cols[c] = None;
        units += 1;
    }
    let rest: Vec<Sparse<T>> = cols.into_iter().flatten().collect();
    let mut out = vec![BigInt::one(); units];
    if !rest.is_empty() {
        let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
        for col in &rest {
            for (r, _) in col {
                rows.insert(*r, 0);
            }
        }
        for (k, v) in rows.values_mut().enumerate() {
            *v = k;
        }
        let mut dense = vec![vec![BigInt::zero(); rest.len()]; rows.len()];
        for (c, col) in rest.iter().enumerate() {
            for (r, v) in col {
                dense[rows[r]][c] = v.to_big();
            }
        }
        let d = smith_diagonal(dense);
        out.extend(d);
    }
    Ok(out)
}

/// Result of [`smith_normal_form`]: `u * m * v = d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl Smith {
    pub fn factors(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|k| self.d[k][k].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
}

/// Dense Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Smith {
    let a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    snf_dense(a, true)
}

fn smith_diagonal(a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    snf_dense(a, false).factors()
}

fn snf_dense(mut a: Vec<Vec<BigInt>>, track: bool) -> Smith {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut u = if track { identity(rows) } else { Vec::new() };
    let mut v = if track { identity(cols) } else { Vec::new() };
    let swap_rows = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        a.swap(i, j);
        if track {
            u.swap(i, j);
        }
    };
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
        if track {
            for r in v.iter_mut() {
                r.swap(i, j);
            }
        }
    };
    // row_i -= q * row_j
    let row_op = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize, q: &BigInt| {
        let src = a[j].clone();
        for (x, y) in a[i].iter_mut().zip(src.iter()) {
            *x -= q * y;
        }
        if track {
            let src = u[j].clone();
            for (x, y) in u[i].iter_mut().zip(src.iter()) {
                *x -= q * y;
            }
        }
    };
    let col_op = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize, q: &BigInt| {
        for r in a.iter_mut() {
            let y = r[j].clone();
            r[i] -= q * y;
        }
        if track {
            for r in v.iter_mut() {
                let y = r[j].clone();
                r[i] -= q * y;
            }
        }
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].magnitude() < a[bi][bj].magnitude())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut a, &mut u, t, bi);
        swap_cols(&mut a, &mut v, t, bj);
        loop {
            let mut again = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_op(&mut a, &mut u, i, t, &q);
                    if !a[i][t].is_zero() {
                        swap_rows(&mut a, &mut u, t, i);
                        again = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_op(&mut a, &mut v, j, t, &q);
                    if !a[t][j].is_zero() {
                        swap_cols(&mut a, &mut v, t, j);
                        again = true;
                    }
                }
            }
            if again {
                continue;
            }
            // divisibility of the remaining block
            let mut fix = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    row_op(&mut a, &mut u, t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            if track {
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        t += 1;
    }
    Smith { u, d: a, v }
}

/// Echelon basis of a sublattice of Z^n built by incremental insertion.
/// When `track` is set each basis row remembers its expression in the
/// inserted generators, which yields membership certificates.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    rows: BTreeMap<usize, (Sparse<T>, Sparse<T>)>,
    track: bool,
    generators: usize,
    /// Tracked combinations of the generators that reduced to zero.
    relations: Vec<Sparse<T>>,
}

impl<T: Coeff> Echelon<T> {
    pub fn new(track: bool) -> Self {
        Echelon { rows: BTreeMap::new(), track, generators: 0, relations: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: Sparse<T>) -> Res<()> {
        let gen = self.generators;
        self.generators += 1;
        let mut v = v;
        let mut e: Sparse<T> = if self.track { vec![(gen, T::from_i64(1))] } else { vec![] };
        loop {
            let Some((c, a)) = lead(&v).cloned() else {
                if self.track {
                    self.relations.push(e);
                }
                return Ok(());
            };
            match self.rows.get_mut(&c) {
                None => {
                    if a.is_neg() {
                        let m1 = T::from_i64(-1);
                        v = comb(&m1, &v, &T::from_i64(0), &vec![])?;
                        e = comb(&m1, &e, &T::from_i64(0), &vec![])?;
                    }
                    self.rows.insert(c, (v, e));
                    return Ok(());
                }
                Some((r, re)) => {
                    let h = r[0].1.clone();
                    let q = a.div_euclid(&h)?;
                    if q.mul(&h)? == a {
                        let mq = q.neg()?;
                        v = comb(&T::from_i64(1), &v, &mq, r)?;
                        e = comb(&T::from_i64(1), &e, &mq, re)?;
                    } else {
                        let (g, s, t) = T::xgcd(&h, &a)?;
                        let hg = h.div_euclid(&g)?;
                        let ag = a.div_euclid(&g)?;
                        let new_r = comb(&s, r, &t, &v)?;
                        let new_re = comb(&s, re, &t, &e)?;
                        let v2 = comb(&ag, r, &hg.neg()?, &v)?;
                        let e2 = comb(&ag, re, &hg.neg()?, &e)?;
                        *r = new_r;
                        *re = new_re;
                        v = v2;
                        e = e2;
                    }
                }
            }
        }
    }

    /// Coefficients of `v` on the basis rows (keyed by pivot column) and,
    /// when tracked, on the generators; `None` if `v` is not in the lattice.
    fn reduce(&self, v: &Sparse<T>) -> Res<Option<(Sparse<T>, Sparse<T>)>> {
        let mut v = v.clone();
        let mut coords: Sparse<T> = Vec::new();
        let mut cert: Sparse<T> = Vec::new();
        while let Some((c, a)) = lead(&v).cloned() {
            let Some((r, re)) = self.rows.get(&c) else { return Ok(None) };
            let h = &r[0].1;
            let q = a.div_euclid(h)?;
            if q.mul(h)? != a {
                return Ok(None);
            }
            v = comb(&T::from_i64(1), &v, &q.neg()?, r)?;
            if self.track {
                cert = comb(&T::from_i64(1), &cert, &q, re)?;
            }
            coords.push((c, q));
        }
        Ok(Some((coords, cert)))
    }
}

/// A Z-basis of the integer relations Σ c_j cols[j] = 0.
pub fn kernel<S: Coeff>(cols: &[Sparse<S>]) -> Vec<Sparse<BigInt>> {
    let mut e: Echelon<BigInt> = Echelon::new(true);
    for c in cols {
        e.insert(convert(c).expect("bigint")).expect("no overflow");
    }
    e.relations
}

/// Integer lattice given by generators, with exact membership queries.
#[derive(Clone, Debug)]
pub struct Lattice {
    gens: Vec<Sparse<BigInt>>,
    small: Option<Echelon<i64>>,
    big: Option<Echelon<BigInt>>,
    track: bool,
}

impl Lattice {
    pub fn new(track: bool) -> Lattice {
        Lattice { gens: Vec::new(), small: Some(Echelon::new(track)), big: None, track }
    }

    pub fn from_generators<S: Coeff>(gens: &[Sparse<S>], track: bool) -> Lattice {
        let mut l = Lattice::new(track);
        for g in gens {
            l.insert(g);
        }
        l
    }

    pub fn insert<S: Coeff>(&mut self, v: &Sparse<S>) {
        let vb: Sparse<BigInt> = convert(v).expect("bigint");
        self.gens.push(vb.clone());
        if let Some(small) = self.small.as_mut() {
            let ok = convert::<BigInt, i64>(&vb).and_then(|vs| small.insert(vs));
            if ok.is_ok() {
                return;
            }
            self.small = None;
            let mut big = Echelon::new(self.track);
            for g in &self.gens {
                big.insert(g.clone()).expect("no overflow");
            }
            self.big = Some(big);
            return;
        }
        self.big.as_mut().expect("big echelon").insert(vb).expect("no overflow");
    }

    pub fn rank(&self) -> usize {
        match (&self.small, &self.big) {
            (Some(s), _) => s.rank(),
            (_, Some(b)) => b.rank(),
            _ => 0,
        }
    }

    fn promote(&mut self) {
        if self.big.is_none() {
            let mut big = Echelon::new(self.track);
            for g in &self.gens {
                big.insert(g.clone()).expect("no overflow");
            }
            self.big = Some(big);
        }
    }

    /// Basis coordinates (by pivot column) and generator certificate.
    pub fn solve<S: Coeff>(&mut self, v: &Sparse<S>) -> Option<(Sparse<BigInt>, Sparse<BigInt>)> {
        let vb: Sparse<BigInt> = convert(v).expect("bigint");
        if let Some(small) = &self.small {
            if let Ok(vs) = convert::<BigInt, i64>(&vb) {
                match small.reduce(&vs) {
                    Ok(None) => return None,
                    Ok(Some((c, e))) => {
                        return Some((convert(&c).expect("bigint"), convert(&e).expect("bigint")))
                    }
                    Err(Overflow) => {}
                }
            }
        }
        self.promote();
        self.big.as_ref().expect("big").reduce(&vb).expect("no overflow")
    }

    pub fn contains<S: Coeff>(&mut self, v: &Sparse<S>) -> bool {
        self.solve(v).is_some()
    }

    /// Basis rows in pivot order.
    pub fn basis(&mut self) -> Vec<Sparse<BigInt>> {
        match (&self.small, &self.big) {
            (_, Some(b)) => b.rows.values().map(|(r, _)| r.clone()).collect(),
            (Some(s), None) => s.rows.values().map(|(r, _)| convert(r).expect("bigint")).collect(),
            _ => Vec::new(),
        }
    }

    pub fn pivots(&self) -> Vec<usize> {
        match (&self.small, &self.big) {
            (_, Some(b)) => b.rows.keys().copied().collect(),
            (Some(s), None) => s.rows.keys().copied().collect(),
            _ => Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Sparse<BigInt>] {
        &self.gens
    }
}
