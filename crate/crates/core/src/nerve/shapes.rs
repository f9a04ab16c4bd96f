//! Pasting trees of the cube categories, computed once per dimension.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::molecule::{CellComplex, CellId, Decomposer, OmegaCategory, PastingTree, DEFAULT_BUDGET};

/// Highest cube dimension for which shapes are available.
pub const SHAPE_CAP: usize = 5;

pub fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Index of the all-zero word.
pub fn center(n: usize) -> usize {
    (pow3(n) - 1) / 2
}

pub fn letters(mut idx: usize, n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for i in (0..n).rev() {
        out[i] = (idx % 3) as u8;
        idx /= 3;
    }
    out
}

pub fn word_index(letters: &[u8]) -> usize {
    letters.iter().fold(0, |acc, &l| acc * 3 + l as usize)
}

pub fn word_dim(idx: usize, n: usize) -> usize {
    letters(idx, n).iter().filter(|&&l| l == 1).count()
}

pub struct Shapes {
    pub n: usize,
    pub complex: CellComplex,
    /// `bounds[w][k]` = (tree of s_k R(w), tree of t_k R(w)) for k < dim w.
    pub bounds: Vec<Vec<(PastingTree, PastingTree)>>,
    /// 1-morphisms starting at the initial vertex.
    pub from_initial: Vec<PastingTree>,
    /// 1-morphisms ending at the final vertex.
    pub to_final: Vec<PastingTree>,
}

fn build(n: usize) -> Shapes {
    let complex = CellComplex::cube(n);
    let cat = OmegaCategory::free("I", complex.clone(), DEFAULT_BUDGET).expect("cube closure");
    let mut dec = Decomposer::new(&complex);
    let bounds = (0..pow3(n))
        .map(|w| {
            let set = complex.cell(w as CellId).closure.clone();
            (0..word_dim(w, n))
                .map(|k| {
                    let s = dec.decompose(&complex.boundary(&set, k, false)).expect("cube boundary decomposes");
                    let t = dec.decompose(&complex.boundary(&set, k, true)).expect("cube boundary decomposes");
                    (s, t)
                })
                .collect()
        })
        .collect();
    let (initial, terminal) = (0, pow3(n) - 1);
    let mut from_initial = Vec::new();
    let mut to_final = Vec::new();
    for &m in cat.of_dim(1) {
        let cells = cat.morph(m).cells.as_ref().unwrap();
        let start = cat.morph(cat.src(m, 0)).cells.as_ref().unwrap()[0] as usize;
        let end = cat.morph(cat.tgt(m, 0)).cells.as_ref().unwrap()[0] as usize;
        if start == initial {
            from_initial.push(dec.decompose(cells).expect("paths decompose"));
        }
        if end == terminal {
            to_final.push(dec.decompose(cells).expect("paths decompose"));
        }
    }
    Shapes { n, complex, bounds, from_initial, to_final }
}

pub fn shapes(n: usize) -> &'static Shapes {
    static CACHE: [OnceLock<Shapes>; SHAPE_CAP + 1] = [const { OnceLock::new() }; SHAPE_CAP + 1];
    assert!(n <= SHAPE_CAP, "cube shapes are available up to dimension {SHAPE_CAP}");
    CACHE[n].get_or_init(|| build(n))
}

/// Trees computing `x +_j y` on the words whose j-th letter is 0. Leaves
/// are cells of the doubled cube, whose j-th coordinate runs over 0..=4.
pub struct Gluing {
    pub trees: Vec<Option<PastingTree>>,
}

pub fn gluing(n: usize, j: usize) -> Arc<Gluing> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Gluing>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(&(n, j)) {
        return g.clone();
    }
    let mut segs = vec![1; n];
    segs[j - 1] = 2;
    let grid = CellComplex::grid(&segs);
    let radix: Vec<usize> = segs.iter().map(|s| 2 * s + 1).collect();
    let encode = |coords: &[usize]| coords.iter().zip(&radix).fold(0usize, |acc, (&c, &r)| acc * r + c) as CellId;
    let mut dec = Decomposer::new(&grid);
    let trees = (0..pow3(n))
        .map(|w| {
            let l = letters(w, n);
            if l[j - 1] != 1 {
                return None;
            }
            let mut c: Vec<usize> = l.iter().map(|&x| x as usize).collect();
            c[j - 1] = 1;
            let a = encode(&c);
            c[j - 1] = 3;
            let b = encode(&c);
            Some(dec.decompose(&grid.closure_of([a, b])).expect("glued cells decompose"))
        })
        .collect();
    let g = Arc::new(Gluing { trees });
    cache.lock().unwrap().insert((n, j), g.clone());
    g
}

/// Decodes a cell of the doubled cube: returns (second copy?, word index
/// in that copy).
pub fn glued_cell(cell: CellId, n: usize, j: usize) -> (bool, usize) {
    let mut rest = cell as usize;
    let mut coords = vec![0usize; n];
    for i in (0..n).rev() {
        let r = if i == j - 1 { 5 } else { 3 };
        coords[i] = rest % r;
        rest /= r;
    }
    let v = coords[j - 1];
    let second = v > 2;
    coords[j - 1] = if second { v - 2 } else { v };
    (second, coords.iter().fold(0, |acc, &c| acc * 3 + c))
}
