use std::collections::HashMap;

use rayon::prelude::*;

use super::cube::{is_branching, is_merging, SingularCube};
use super::shapes::{center, letters, pow3, shapes, SHAPE_CAP};
use crate::error::{Error, Result};
use crate::molecule::{try_evaluate, CellId, MorphId, OmegaCategory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    All,
    Branching,
    Merging,
}

impl Filter {
    fn admits(self, cat: &OmegaCategory, x: &SingularCube) -> bool {
        match self {
            Filter::All => true,
            Filter::Branching => is_branching(cat, x),
            Filter::Merging => is_merging(cat, x),
        }
    }
}

/// Degree-by-degree enumeration of the cubical singular nerve. Complete
/// levels are kept; the top requested degree may be enumerated filtered
/// without storing the full level.
pub struct Nerve<'c> {
    cat: &'c OmegaCategory,
    levels: Vec<Vec<SingularCube>>,
    /// `interiors[k][(s, t)]`: morphisms u of dim <= k+1 with s_k u = s,
    /// t_k u = t.
    interiors: Vec<HashMap<(MorphId, MorphId), Vec<MorphId>>>,
}

impl<'c> Nerve<'c> {
    pub fn new(cat: &'c OmegaCategory) -> Nerve<'c> {
        let top = cat.max_dim() + SHAPE_CAP;
        let interiors = (0..=top)
            .map(|k| {
                let mut map: HashMap<(MorphId, MorphId), Vec<MorphId>> = HashMap::new();
                for m in 0..cat.len() as MorphId {
                    if cat.dim(m) <= k + 1 {
                        map.entry((cat.src(m, k), cat.tgt(m, k))).or_default().push(m);
                    }
                }
                map
            })
            .collect();
        let vertices = cat.of_dim(0).iter().map(|&m| SingularCube::vertex(m)).collect();
        Nerve { cat, levels: vec![vertices], interiors }
    }

    pub fn category(&self) -> &'c OmegaCategory {
        self.cat
    }

    /// Highest degree stored in full.
    pub fn complete_degree(&self) -> usize {
        self.levels.len() - 1
    }

    /// All cubes of degree `n`, enumerating lower degrees as needed.
    pub fn cubes(&mut self, n: usize) -> Result<&[SingularCube]> {
        while self.levels.len() <= n {
            let d = self.levels.len();
            let next = self.level(d, Filter::All)?;
            self.levels.push(next);
        }
        Ok(&self.levels[n])
    }

    /// Cubes of degree `n` admitted by `filter`, sorted by image table.
    pub fn enumerate(&mut self, n: usize, filter: Filter) -> Result<Vec<SingularCube>> {
        if filter != Filter::All && !self.cat.meta().non_contracting {
            return Err(Error::NotNonContracting(self.cat.name().to_string()));
        }
        if n < self.levels.len() {
            let cat = self.cat;
            return Ok(self.levels[n].iter().filter(|x| filter.admits(cat, x)).cloned().collect());
        }
        if n > SHAPE_CAP {
            return Err(Error::DimensionCap { requested: n, cap: SHAPE_CAP });
        }
        self.cubes(n - 1)?;
        self.level(n, filter)
    }

    fn level(&self, n: usize, filter: Filter) -> Result<Vec<SingularCube>> {
        if n > SHAPE_CAP {
            return Err(Error::DimensionCap { requested: n, cap: SHAPE_CAP });
        }
        let cat = self.cat;
        let mut out: Vec<SingularCube> = if n == 1 {
            (0..cat.len() as MorphId)
                .filter(|&u| cat.dim(u) <= 1)
                .map(|u| SingularCube { n: 1, images: vec![cat.src(u, 0), u, cat.tgt(u, 0)] })
                .filter(|x| filter.admits(cat, x))
                .collect()
        } else {
            ShellSearch::new(self, n, filter).run()
        };
        out.sort_unstable();
        Ok(out)
    }
}

/// Backtracking over the 2n faces of an n-cube, ordered
/// (1,-),...,(n,-),(1,+),...,(n,+).
struct ShellSearch<'a, 'c> {
    nerve: &'a Nerve<'c>,
    n: usize,
    filter: Filter,
    lower: &'a [SingularCube],
    /// `fids[c][slot]` interned id of face slot of lower cube c, where
    /// slot = 2(k-1) + sign for face d_k^sign.
    fids: Vec<Vec<u32>>,
    buckets: HashMap<(usize, u32), Vec<u32>>,
    allowed: [Vec<bool>; 2],
    order: Vec<(usize, bool)>,
    /// For each non-central word: (face position in `order`, word in face).
    lookup: Vec<Option<(usize, usize)>>,
}

impl<'a, 'c> ShellSearch<'a, 'c> {
    fn new(nerve: &'a Nerve<'c>, n: usize, filter: Filter) -> Self {
        let cat = nerve.cat;
        let lower = &nerve.levels[n - 1][..];
        let mut intern: HashMap<SingularCube, u32> = HashMap::new();
        let fids: Vec<Vec<u32>> = lower
            .iter()
            .map(|c| {
                (1..n)
                    .flat_map(|k| [(k, false), (k, true)])
                    .map(|(k, p)| {
                        let f = c.face(k, p).expect("face index in range");
                        let next = intern.len() as u32;
                        *intern.entry(f).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        let mut buckets: HashMap<(usize, u32), Vec<u32>> = HashMap::new();
        for (c, f) in fids.iter().enumerate() {
            for (slot, &id) in f.iter().enumerate() {
                buckets.entry((slot, id)).or_default().push(c as u32);
            }
        }
        // a branching cube has branching negative faces, dually for merging
        let allowed = [
            lower.iter().map(|c| filter != Filter::Branching || is_branching(cat, c)).collect(),
            lower.iter().map(|c| filter != Filter::Merging || is_merging(cat, c)).collect(),
        ];
        let order: Vec<(usize, bool)> = [false, true].iter().flat_map(|&p| (1..=n).map(move |i| (i, p))).collect();
        let lookup = (0..pow3(n))
            .map(|w| {
                let l = letters(w, n);
                let i = l.iter().position(|&c| c != 1)?;
                let pos = order.iter().position(|&(k, p)| k == i + 1 && p == (l[i] == 2)).unwrap();
                let mut rest = l.clone();
                rest.remove(i);
                Some((pos, super::shapes::word_index(&rest)))
            })
            .collect();
        ShellSearch { nerve, n, filter, lower, fids, buckets, allowed, order, lookup }
    }

    fn slot(k: usize, plus: bool) -> usize {
        2 * (k - 1) + plus as usize
    }

    /// Candidates for position `t` given the faces chosen so far.
    fn candidates(&self, t: usize, chosen: &[u32]) -> Vec<u32> {
        let (j, b) = self.order[t];
        let mut reqs: Vec<(usize, u32)> = Vec::new();
        for (s, &c) in chosen.iter().enumerate() {
            let (i, a) = self.order[s];
            if i < j {
                reqs.push((Self::slot(i, a), self.fids[c as usize][Self::slot(j - 1, b)]));
            } else if i > j {
                reqs.push((Self::slot(i - 1, a), self.fids[c as usize][Self::slot(j, b)]));
            }
        }
        let allowed = &self.allowed[b as usize];
        let pool: Vec<u32> = match reqs.first() {
            None => (0..self.lower.len() as u32).collect(),
            Some(key) => self.buckets.get(key).cloned().unwrap_or_default(),
        };
        pool.into_iter()
            .filter(|&c| allowed[c as usize] && reqs.iter().all(|&(slot, id)| self.fids[c as usize][slot] == id))
            .collect()
    }

    fn run(&self) -> Vec<SingularCube> {
        let first = self.candidates(0, &[]);
        first
            .par_iter()
            .flat_map_iter(|&c| {
                let mut out = Vec::new();
                let mut chosen = vec![c];
                self.extend(&mut chosen, &mut out);
                out
            })
            .collect()
    }

    fn extend(&self, chosen: &mut Vec<u32>, out: &mut Vec<SingularCube>) {
        if chosen.len() == self.order.len() {
            self.fill(chosen, out);
            return;
        }
        for c in self.candidates(chosen.len(), chosen) {
            chosen.push(c);
            self.extend(chosen, out);
            chosen.pop();
        }
    }

    fn fill(&self, chosen: &[u32], out: &mut Vec<SingularCube>) {
        let cat = self.nerve.cat;
        let n = self.n;
        let mut images: Vec<MorphId> = self
            .lookup
            .iter()
            .map(|l| l.map_or(MorphId::MAX, |(pos, w)| self.lower[chosen[pos] as usize].images[w]))
            .collect();
        let image = |c: CellId| images[c as usize];
        let (s, t) = &shapes(n).bounds[center(n)][n - 1];
        let (Some(s), Some(t)) = (try_evaluate(s, cat, &image), try_evaluate(t, cat, &image)) else {
            return;
        };
        let Some(us) = self.nerve.interiors[n - 1].get(&(s, t)) else {
            return;
        };
        for &u in us {
            images[center(n)] = u;
            let x = SingularCube { n, images: images.clone() };
            if self.filter.admits(cat, &x) {
                out.push(x);
            }
        }
    }
}

/// Independent enumeration by assigning atoms in order of dimension and
/// checking every source and target condition directly.
pub fn brute_force_cubes(cat: &OmegaCategory, n: usize) -> Vec<SingularCube> {
    let sh = shapes(n);
    let mut order: Vec<usize> = (0..pow3(n)).collect();
    order.sort_by_key(|&w| (super::shapes::word_dim(w, n), w));
    let mut out = Vec::new();
    let mut images = vec![MorphId::MAX; pow3(n)];
    fn go(
        cat: &OmegaCategory,
        n: usize,
        sh: &super::shapes::Shapes,
        order: &[usize],
        t: usize,
        images: &mut Vec<MorphId>,
        out: &mut Vec<SingularCube>,
    ) {
        if t == order.len() {
            out.push(SingularCube { n, images: images.clone() });
            return;
        }
        let w = order[t];
        let d = super::shapes::word_dim(w, n);
        for u in 0..cat.len() as MorphId {
            if cat.dim(u) > d {
                continue;
            }
            let ok = sh.bounds[w].iter().enumerate().all(|(k, (s, tt))| {
                let image = |c: CellId| images[c as usize];
                try_evaluate(s, cat, &image) == Some(cat.src(u, k)) && try_evaluate(tt, cat, &image) == Some(cat.tgt(u, k))
            });
            if ok {
                images[w] = u;
                go(cat, n, sh, order, t + 1, images, out);
                images[w] = MorphId::MAX;
            }
        }
    }
    go(cat, n, sh, &order, 0, &mut images, &mut out);
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::{build_cube, build_presented, Presented};
    use crate::nerve::cube::is_functor;

    #[test]
    fn matches_brute_force_on_small_categories() {
        let cats = vec![
            build_cube(1, 4).unwrap(),
            build_cube(2, 4).unwrap(),
            build_presented(Presented::Arrow, 2, 3).unwrap(),
            build_presented(Presented::Pair, 1, 3).unwrap(),
        ];
        for cat in &cats {
            let mut nerve = Nerve::new(cat);
            for n in 0..=2 {
                let fast = nerve.cubes(n).unwrap().to_vec();
                assert_eq!(fast, brute_force_cubes(cat, n), "{} degree {n}", cat.name());
                assert!(fast.iter().all(|x| is_functor(cat, x)));
            }
        }
    }

    #[test]
    fn filtered_top_level_agrees() {
        let cat = build_cube(2, 4).unwrap();
        let mut nerve = Nerve::new(&cat);
        nerve.cubes(2).unwrap();
        let full: Vec<_> = brute_force_cubes(&cat, 3);
        for filter in [Filter::Branching, Filter::Merging] {
            let fast = nerve.enumerate(3, filter).unwrap();
            let slow: Vec<_> = full.iter().filter(|x| filter.admits(&cat, x)).cloned().collect();
            assert_eq!(fast, slow);
        }
    }
}
