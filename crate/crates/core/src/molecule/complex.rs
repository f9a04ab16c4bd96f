use crate::error::{Error, Result};
use crate::precub::PrecubicalSet;

pub type CellId = u32;

/// A generating cell of a free globular category together with its
/// source and target faces (cells of dimension `dim - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub label: String,
    pub src: Vec<CellId>,
    pub tgt: Vec<CellId>,
    /// Sorted face closure, including the cell itself.
    pub closure: Vec<CellId>,
}

/// Finite loop-free cell complex. Morphisms of the generated category are
/// face-closed cell sets (molecules) and composition is union.
#[derive(Clone, Debug)]
pub struct CellComplex {
    cells: Vec<Cell>,
}

/// Letters of a word in increasing order.
pub const LETTERS: [char; 3] = ['-', '0', '+'];

pub fn word_label(letters: &[u8]) -> String {
    letters.iter().map(|&l| LETTERS[l as usize]).collect()
}

pub(crate) fn union(a: &[CellId], b: &[CellId]) -> Vec<CellId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn is_subset(a: &[CellId], b: &[CellId]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

impl CellComplex {
    /// Builds a complex from `(dim, label, src, tgt)` rows indexed by
    /// position. Faces must have dimension exactly one less.
    pub fn new(rows: Vec<(usize, String, Vec<CellId>, Vec<CellId>)>) -> Result<CellComplex> {
        let n = rows.len();
        for (k, (dim, label, src, tgt)) in rows.iter().enumerate() {
            for &f in src.iter().chain(tgt.iter()) {
                if f as usize >= n || rows[f as usize].0 + 1 != *dim {
                    return Err(Error::InvalidInput(format!("cell {k} ({label}) has a bad face {f}")));
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| rows[k].0);
        let mut closures: Vec<Vec<CellId>> = vec![Vec::new(); n];
        for &k in &order {
            let mut acc = vec![k as CellId];
            for &f in rows[k].2.iter().chain(rows[k].3.iter()) {
                acc = union(&acc, &closures[f as usize]);
            }
            closures[k] = acc;
        }
        let cells = rows
            .into_iter()
            .zip(closures)
            .map(|((dim, label, mut src, mut tgt), closure)| {
                src.sort_unstable();
                src.dedup();
                tgt.sort_unstable();
                tgt.dedup();
                Cell { dim, label, src, tgt, closure }
            })
            .collect();
        Ok(CellComplex { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, c: CellId) -> &Cell {
        &self.cells[c as usize]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn closure_of(&self, ids: impl IntoIterator<Item = CellId>) -> Vec<CellId> {
        let mut acc = Vec::new();
        for c in ids {
            acc = union(&acc, &self.cells[c as usize].closure);
        }
        acc
    }

    pub fn dim_of(&self, set: &[CellId]) -> usize {
        set.iter().map(|&c| self.cells[c as usize].dim).max().unwrap_or(0)
    }

    /// Cells of `set` that are not a face of another cell of `set`.
    pub fn maximal_cells(&self, set: &[CellId]) -> Vec<CellId> {
        let covered: Vec<CellId> = {
            let mut v: Vec<CellId> = set
                .iter()
                .flat_map(|&c| {
                    let cell = &self.cells[c as usize];
                    cell.src.iter().chain(cell.tgt.iter()).copied()
                })
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        set.iter().copied().filter(|c| covered.binary_search(c).is_err()).collect()
    }

    /// k-source (`plus = false`) or k-target of a molecule. Returns the set
    /// itself when `k` is at least its dimension.
    pub fn boundary(&self, set: &[CellId], k: usize, plus: bool) -> Vec<CellId> {
        if k >= self.dim_of(set) {
            return set.to_vec();
        }
        // k-cells hit by the opposite-side faces of (k+1)-cells are interior
        let mut hidden: Vec<CellId> = set
            .iter()
            .filter(|&&c| self.cells[c as usize].dim == k + 1)
            .flat_map(|&c| {
                let cell = &self.cells[c as usize];
                if plus { cell.src.iter() } else { cell.tgt.iter() }.copied()
            })
            .collect();
        hidden.sort_unstable();
        hidden.dedup();
        let maximal = self.maximal_cells(set);
        let gens = set.iter().copied().filter(|&c| {
            let d = self.cells[c as usize].dim;
            (d == k && hidden.binary_search(&c).is_err()) || (d < k && maximal.contains(&c))
        });
        self.closure_of(gens)
    }

    /// `a *_p b` when `t_p a = s_p b` and the two sets meet exactly there.
    pub fn compose(&self, a: &[CellId], b: &[CellId], p: usize) -> Option<Vec<CellId>> {
        let t = self.boundary(a, p, true);
        if t != self.boundary(b, p, false) {
            return None;
        }
        let meet: Vec<CellId> = a.iter().copied().filter(|c| b.binary_search(c).is_ok()).collect();
        (meet == t).then(|| union(a, b))
    }

    pub fn format(&self, set: &[CellId]) -> String {
        let max = self.maximal_cells(set);
        if max.len() == 1 {
            return self.cells[max[0] as usize].label.clone();
        }
        let labels: Vec<&str> = max.iter().map(|&c| self.cells[c as usize].label.as_str()).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// Product of subdivided intervals: coordinate `i` runs over
    /// `0..=2*segs[i]`, even values being vertices and odd values edges.
    /// Cell ids are mixed-radix numbers with the first coordinate most
    /// significant, so for unit segments the id of a word over {-,0,+}
    /// is its base-3 value.
    pub fn grid(segs: &[usize]) -> CellComplex {
        let radix: Vec<usize> = segs.iter().map(|&s| 2 * s + 1).collect();
        let total: usize = radix.iter().product();
        let unit = segs.iter().all(|&s| s == 1);
        let encode = |coords: &[usize]| coords.iter().zip(&radix).fold(0usize, |acc, (&c, &r)| acc * r + c);
        let mut rows = Vec::with_capacity(total);
        let mut coords = vec![0usize; segs.len()];
        for id in 0..total {
            let mut rest = id;
            for i in (0..segs.len()).rev() {
                coords[i] = rest % radix[i];
                rest /= radix[i];
            }
            let dim = coords.iter().filter(|&&c| c % 2 == 1).count();
            let mut src = Vec::new();
            let mut tgt = Vec::new();
            let mut l = 0;
            for i in 0..segs.len() {
                if coords[i] % 2 == 1 {
                    l += 1;
                    let mut lo = coords.clone();
                    lo[i] -= 1;
                    let mut hi = coords.clone();
                    hi[i] += 1;
                    let (lo, hi) = (encode(&lo) as CellId, encode(&hi) as CellId);
                    if l % 2 == 1 {
                        src.push(lo);
                        tgt.push(hi);
                    } else {
                        src.push(hi);
                        tgt.push(lo);
                    }
                }
            }
            let label = if unit {
                coords.iter().map(|&c| LETTERS[c]).collect()
            } else {
                coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
            };
            rows.push((dim, label, src, tgt));
        }
        CellComplex::new(rows).expect("grid faces are well formed")
    }

    /// The n-cube; cell ids are word indices.
    pub fn cube(n: usize) -> CellComplex {
        CellComplex::grid(&vec![1; n])
    }

    /// The n-th oriental. Cells are nonempty subsets of {0..n}; deleting an
    /// element at an odd position gives a source face, at an even position
    /// a target face. Cell ids enumerate subsets by bitmask order.
    pub fn oriental(n: usize) -> CellComplex {
        let masks: Vec<u32> = (1u32..(1 << (n + 1))).collect();
        let id_of = |m: u32| (m - 1) as CellId;
        let rows = masks
            .iter()
            .map(|&m| {
                let elems: Vec<u32> = (0..=n as u32).filter(|b| m >> b & 1 == 1).collect();
                let dim = elems.len() - 1;
                let mut src = Vec::new();
                let mut tgt = Vec::new();
                if dim > 0 {
                    for (j, e) in elems.iter().enumerate() {
                        let face = id_of(m & !(1 << e));
                        if j % 2 == 1 {
                            src.push(face);
                        } else {
                            tgt.push(face);
                        }
                    }
                }
                let label = elems.iter().map(|e| e.to_string()).collect::<String>();
                (dim, label, src, tgt)
            })
            .collect();
        CellComplex::new(rows).expect("oriental faces are well formed")
    }

    /// Cells are the cubes of `k` (same indices). The source of an n-cube is
    /// made of the faces d_l^a with a = - for odd l and + for even l.
    pub fn from_precubical(k: &PrecubicalSet) -> Result<CellComplex> {
        let rows = k
            .cubes()
            .iter()
            .map(|c| {
                let mut src = Vec::new();
                let mut tgt = Vec::new();
                for (l0, f) in c.faces.iter().enumerate() {
                    let odd = l0 % 2 == 0;
                    src.push(f[!odd as usize] as CellId);
                    tgt.push(f[odd as usize] as CellId);
                }
                (c.dim, c.id.clone(), src, tgt)
            })
            .collect();
        CellComplex::new(rows)
    }

    /// Globe of dimension `p` with `tops` parallel top cells. Cells are
    /// a_k^- , a_k^+ for k < p followed by the top cells.
    pub fn globe(p: usize, tops: &[&str]) -> CellComplex {
        let mut rows = Vec::new();
        for k in 0..p {
            for sign in ['-', '+'] {
                let (src, tgt) = if k == 0 {
                    (vec![], vec![])
                } else {
                    (vec![(2 * k - 2) as CellId], vec![(2 * k - 1) as CellId])
                };
                rows.push((k, format!("a{k}{sign}"), src, tgt));
            }
        }
        for t in tops {
            let (src, tgt) = if p == 0 {
                (vec![], vec![])
            } else {
                (vec![(2 * p - 2) as CellId], vec![(2 * p - 1) as CellId])
            };
            rows.push((p, t.to_string(), src, tgt));
        }
        CellComplex::new(rows).expect("globe faces are well formed")
    }

    /// Two n-globes X and Y glued along t_p X = s_p Y, for p < n. Cells of
    /// dimension < p are shared; at dimension p there are the outer faces
    /// x_p^-, y_p^+ and the common face m.
    pub fn composable_pair(n: usize, p: usize) -> CellComplex {
        assert!(p < n, "gluing dimension must be below the globe dimension");
        let mut rows: Vec<(usize, String, Vec<CellId>, Vec<CellId>)> = Vec::new();
        let push = |rows: &mut Vec<_>, dim: usize, label: String, src: Vec<CellId>, tgt: Vec<CellId>| {
            rows.push((dim, label, src, tgt));
            (rows.len() - 1) as CellId
        };
        let mut below: Option<(CellId, CellId)> = None;
        for k in 0..p {
            let (s, t) = below.map_or((vec![], vec![]), |(a, b)| (vec![a], vec![b]));
            let a = push(&mut rows, k, format!("a{k}-"), s.clone(), t.clone());
            let b = push(&mut rows, k, format!("a{k}+"), s, t);
            below = Some((a, b));
        }
        let (s, t) = below.map_or((vec![], vec![]), |(a, b)| (vec![a], vec![b]));
        let xp = push(&mut rows, p, format!("x{p}-"), s.clone(), t.clone());
        let m = push(&mut rows, p, format!("m{p}"), s.clone(), t.clone());
        let yp = push(&mut rows, p, format!("y{p}+"), s, t);
        let mut sides = Vec::new();
        for (name, lo, hi) in [("x", xp, m), ("y", m, yp)] {
            let (mut lo, mut hi) = (lo, hi);
            for k in p + 1..n {
                let a = push(&mut rows, k, format!("{name}{k}-"), vec![lo], vec![hi]);
                let b = push(&mut rows, k, format!("{name}{k}+"), vec![lo], vec![hi]);
                (lo, hi) = (a, b);
            }
            sides.push((lo, hi));
        }
        push(&mut rows, n, "X".into(), vec![sides[0].0], vec![sides[0].1]);
        push(&mut rows, n, "Y".into(), vec![sides[1].0], vec![sides[1].1]);
        CellComplex::new(rows).expect("glued globes are well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(c: &CellComplex, s: &str) -> CellId {
        c.cells().iter().position(|x| x.label == s).unwrap() as CellId
    }

    fn closure(c: &CellComplex, words: &[&str]) -> Vec<CellId> {
        c.closure_of(words.iter().map(|w| word(c, w)))
    }

    #[test]
    fn cube_ids_are_word_indices() {
        let c = CellComplex::cube(2);
        assert_eq!(c.len(), 9);
        assert_eq!(c.cell(0).label, "--");
        assert_eq!(c.cell(4).label, "00");
        assert_eq!(c.cell(5).label, "0+");
        assert_eq!(c.cell(4).closure.len(), 9);
    }

    #[test]
    fn interval_boundaries() {
        let c = CellComplex::cube(1);
        let r0 = c.cell(1).closure.clone();
        assert_eq!(c.boundary(&r0, 0, false), vec![0]);
        assert_eq!(c.boundary(&r0, 0, true), vec![2]);
        assert_eq!(c.boundary(&r0, 1, true), r0);
    }

    #[test]
    fn square_boundaries() {
        let c = CellComplex::cube(2);
        let top = c.cell(4).closure.clone();
        assert_eq!(c.boundary(&top, 1, false), closure(&c, &["-0", "0+"]));
        assert_eq!(c.boundary(&top, 1, true), closure(&c, &["0-", "+0"]));
        assert_eq!(c.boundary(&top, 0, false), closure(&c, &["--"]));
        assert_eq!(c.boundary(&top, 0, true), closure(&c, &["++"]));
    }

    #[test]
    fn union_composition() {
        let c = CellComplex::cube(2);
        let a = closure(&c, &["-0"]);
        let b = closure(&c, &["0+"]);
        assert_eq!(c.compose(&a, &b, 0), Some(closure(&c, &["-0", "0+"])));
        assert_eq!(c.compose(&b, &a, 0), None);
        // unit law
        let t = c.boundary(&a, 0, true);
        assert_eq!(c.compose(&a, &t, 0), Some(a.clone()));
    }

    #[test]
    fn oriental_orientation() {
        let o = CellComplex::oriental(2);
        let e01 = closure(&o, &["01"]);
        assert_eq!(o.boundary(&e01, 0, false), closure(&o, &["0"]));
        assert_eq!(o.boundary(&e01, 0, true), closure(&o, &["1"]));
        let top = closure(&o, &["012"]);
        assert_eq!(o.boundary(&top, 1, false), closure(&o, &["02"]));
        assert_eq!(o.boundary(&top, 1, true), closure(&o, &["01", "12"]));
    }

    #[test]
    fn globe_counts() {
        assert_eq!(CellComplex::globe(2, &["A"]).len(), 5);
        assert_eq!(CellComplex::globe(2, &["A", "B"]).len(), 6);
    }

    #[test]
    fn grid_gluing_shares_middle_face() {
        let j = CellComplex::grid(&[2, 1]);
        assert_eq!(j.len(), 15);
        assert_eq!(j.cells().iter().filter(|c| c.dim == 2).count(), 2);
    }
}
