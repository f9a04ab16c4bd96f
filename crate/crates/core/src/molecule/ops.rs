use std::collections::{BTreeMap, HashMap};

use super::category::{MorphId, Morphism, OmegaCategory};
use crate::error::{Error, Result};

struct UnionFind(Vec<MorphId>);

impl UnionFind {
    fn find(&mut self, x: MorphId) -> MorphId {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut y = x;
        while self.0[y as usize] != r {
            let next = self.0[y as usize];
            self.0[y as usize] = r;
            y = next;
        }
        r
    }

    /// Keeps the smaller id as representative.
    fn union(&mut self, a: MorphId, b: MorphId) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi as usize] = lo;
        true
    }
}

/// Quotient of `base` by the congruence generated by `relations`.
pub fn quotient(base: &OmegaCategory, name: &str, relations: &[(MorphId, MorphId)]) -> Result<OmegaCategory> {
    let n = base.len();
    let mut uf = UnionFind((0..n as MorphId).collect());
    for &(a, b) in relations {
        uf.union(a, b);
    }
    let comps = base.compositions();
    let top = base.max_dim();
    loop {
        let mut changed = false;
        // boundaries of identified morphisms are identified
        let mut rep_bounds: HashMap<MorphId, MorphId> = HashMap::new();
        for m in 0..n as MorphId {
            let r = uf.find(m);
            let first = *rep_bounds.entry(r).or_insert(m);
            if first != m {
                for k in 0..top {
                    changed |= uf.union(base.src(first, k), base.src(m, k));
                    changed |= uf.union(base.tgt(first, k), base.tgt(m, k));
                }
            }
        }
        // compositions of identified pairs are identified
        let mut seen: HashMap<(MorphId, MorphId, usize), MorphId> = HashMap::new();
        for &(a, b, p, c) in &comps {
            let key = (uf.find(a), uf.find(b), p);
            match seen.get(&key) {
                Some(&d) => changed |= uf.union(c, d),
                None => {
                    seen.insert(key, c);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut class_of: BTreeMap<MorphId, MorphId> = BTreeMap::new();
    for m in 0..n as MorphId {
        let r = uf.find(m);
        let next = class_of.len() as MorphId;
        class_of.entry(r).or_insert(next);
    }
    let cls = |uf: &mut UnionFind, m: MorphId| class_of[&uf.find(m)];
    let reps: Vec<MorphId> = class_of.keys().copied().collect();
    let mut morphs = Vec::with_capacity(reps.len());
    for &r in &reps {
        let me = cls(&mut uf, r);
        let dim = (0..=base.dim(r)).find(|&k| cls(&mut uf, base.src(r, k)) == me).unwrap();
        let src: Vec<MorphId> = (0..dim).map(|k| cls(&mut uf, base.src(r, k))).collect();
        let tgt: Vec<MorphId> = (0..dim).map(|k| cls(&mut uf, base.tgt(r, k))).collect();
        for m in 0..n as MorphId {
            if uf.find(m) == r {
                for k in 0..dim {
                    if cls(&mut uf, base.src(m, k)) != src[k] || cls(&mut uf, base.tgt(m, k)) != tgt[k] {
                        return Err(Error::BadQuotient(format!("boundaries of {} disagree", base.label(r))));
                    }
                }
            }
        }
        let members: Vec<&str> = (0..n as MorphId).filter(|&m| uf.find(m) == r).map(|m| base.label(m)).collect();
        let label = if members.len() == 1 { members[0].to_string() } else { format!("[{}]", members.join("=")) };
        morphs.push(Morphism { dim, src, tgt, cells: None, label });
    }
    let dims: Vec<usize> = morphs.iter().map(|m| m.dim).collect();
    let mut table: BTreeMap<(MorphId, MorphId, usize), MorphId> = BTreeMap::new();
    for &(a, b, p, c) in &comps {
        let (qa, qb, qc) = (cls(&mut uf, a), cls(&mut uf, b), cls(&mut uf, c));
        if p >= dims[qa as usize] || p >= dims[qb as usize] {
            let unit = if p >= dims[qa as usize] { qb } else { qa };
            if unit != qc {
                return Err(Error::BadQuotient(format!("unit law fails for {} *{p} {}", base.label(a), base.label(b))));
            }
            continue;
        }
        table.insert((qa, qb, p), qc);
    }
    let atoms = base.atoms().iter().map(|&a| cls(&mut uf, a)).collect::<std::collections::BTreeSet<_>>();
    let q = OmegaCategory::from_table(name, morphs, table.iter().map(|(&(a, b, p), &c)| (a, b, p, c)), atoms.into_iter().collect());
    // every composable pair must have a composite
    for a in 0..q.len() as MorphId {
        for b in 0..q.len() as MorphId {
            for p in 0..q.dim(a).min(q.dim(b)) {
                if q.tgt(a, p) == q.src(b, p) && q.compose(a, b, p).is_none() {
                    return Err(Error::BadQuotient(format!("{} *{p} {} has no composite", q.label(a), q.label(b))));
                }
            }
        }
    }
    q.check_axioms().map_err(Error::BadQuotient)?;
    Ok(q)
}

/// Drops the objects and shifts every dimension down by one.
pub fn path_shift(c: &OmegaCategory) -> Result<OmegaCategory> {
    let meta = c.meta();
    if !meta.non_contracting {
        return Err(Error::NotNonContracting(c.name().to_string()));
    }
    if !meta.length_at_most_one {
        return Err(Error::NotLengthAtMostOne);
    }
    let kept: Vec<MorphId> = (0..c.len() as MorphId).filter(|&m| c.dim(m) >= 1).collect();
    let new_id: HashMap<MorphId, MorphId> = kept.iter().enumerate().map(|(i, &m)| (m, i as MorphId)).collect();
    let morphs = kept
        .iter()
        .map(|&m| {
            let x = c.morph(m);
            Morphism {
                dim: x.dim - 1,
                src: x.src[1..].iter().map(|s| new_id[s]).collect(),
                tgt: x.tgt[1..].iter().map(|t| new_id[t]).collect(),
                cells: None,
                label: x.label.clone(),
            }
        })
        .collect();
    let comp: Vec<_> = c
        .compositions()
        .into_iter()
        .map(|(a, b, p, r)| (new_id[&a], new_id[&b], p - 1, new_id[&r]))
        .collect();
    let atoms = c.atoms().iter().filter_map(|a| new_id.get(a).copied()).collect();
    Ok(OmegaCategory::from_table(&format!("P({})", c.name()), morphs, comp, atoms))
}

/// Sub-category of morphisms of positive dimension starting in `initial`
/// and ending in `fin`, together with those objects.
pub fn bilocalize(c: &OmegaCategory, initial: &[MorphId], fin: &[MorphId]) -> Result<OmegaCategory> {
    for &s in initial.iter().chain(fin) {
        if s as usize >= c.len() || c.dim(s) != 0 {
            return Err(Error::UnknownState(s.to_string()));
        }
    }
    let keep = |m: MorphId| {
        if c.dim(m) == 0 {
            initial.contains(&m) || fin.contains(&m)
        } else {
            initial.contains(&c.src(m, 0)) && fin.contains(&c.tgt(m, 0))
        }
    };
    let kept: Vec<MorphId> = (0..c.len() as MorphId).filter(|&m| keep(m)).collect();
    let new_id: HashMap<MorphId, MorphId> = kept.iter().enumerate().map(|(i, &m)| (m, i as MorphId)).collect();
    let morphs = kept
        .iter()
        .map(|&m| {
            let x = c.morph(m);
            Morphism {
                dim: x.dim,
                src: x.src.iter().map(|s| new_id[s]).collect(),
                tgt: x.tgt.iter().map(|t| new_id[t]).collect(),
                cells: x.cells.clone(),
                label: x.label.clone(),
            }
        })
        .collect();
    let comp: Vec<_> = c
        .compositions()
        .into_iter()
        .filter(|&(a, b, _, _)| keep(a) && keep(b))
        .map(|(a, b, p, r)| (new_id[&a], new_id[&b], p, new_id[&r]))
        .collect();
    let atoms = c.atoms().iter().filter_map(|a| new_id.get(a).copied()).collect();
    Ok(OmegaCategory::from_table(&format!("{}[I,F]", c.name()), morphs, comp, atoms))
}
