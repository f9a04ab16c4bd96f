//! Finite precubical sets: wire format, validation and the baseline corner
//! complexes built directly on the cubes.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, SparseVec};

pub type CubeId = String;

/// Index of a cube inside a [`PrecubicalSet`] (position in (dim, id) order).
pub type CubeIx = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cube {
    pub id: CubeId,
    pub dim: usize,
    /// `faces[i - 1][0]` is the face d_i^-, `faces[i - 1][1]` is d_i^+.
    pub faces: Vec<[CubeIx; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecubicalSet {
    cubes: Vec<Cube>,
    index: HashMap<CubeId, CubeIx>,
}

/// Unresolved cube description used for programmatic construction.
#[derive(Clone, Debug)]
pub struct CubeSpec {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<[String; 2]>,
}

impl CubeSpec {
    pub fn vertex(id: &str) -> CubeSpec {
        CubeSpec { id: id.into(), dim: 0, faces: vec![] }
    }

    /// `faces` lists (d_i^-, d_i^+) for i = 1..=dim.
    pub fn new(id: &str, faces: &[(&str, &str)]) -> CubeSpec {
        CubeSpec {
            id: id.into(),
            dim: faces.len(),
            faces: faces.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WireDoc {
    cubes: Vec<WireCube>,
}

#[derive(Serialize, Deserialize)]
struct WireCube {
    id: String,
    dim: usize,
    #[serde(default)]
    faces: BTreeMap<String, String>,
}

fn face_key(i: usize, plus: bool) -> String {
    format!("d{}{}", i, if plus { '+' } else { '-' })
}

fn parse_face_key(key: &str) -> Option<(usize, bool)> {
    let rest = key.strip_prefix('d')?;
    let (num, sign) = rest.split_at(rest.len().checked_sub(1)?);
    let plus = match sign {
        "+" => true,
        "-" => false,
        _ => return None,
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) || num.starts_with('0') {
        return None;
    }
    Some((num.parse().ok()?, plus))
}

impl PrecubicalSet {
    /// Resolves ids and sorts cubes by (dim, id). Face dimensions are not
    /// checked here; see [`validate`].
    pub fn from_specs(specs: Vec<CubeSpec>) -> Result<PrecubicalSet> {
        let mut specs = specs;
        specs.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        let mut index = HashMap::new();
        for (k, s) in specs.iter().enumerate() {
            if s.id.is_empty() {
                return Err(Error::Syntax("empty cube id".into()));
            }
            if index.insert(s.id.clone(), k).is_some() {
                return Err(Error::Syntax(format!("duplicate cube id {}", s.id)));
            }
        }
        let mut cubes = Vec::with_capacity(specs.len());
        for s in &specs {
            if s.faces.len() != s.dim {
                return Err(Error::Syntax(format!(
                    "cube {} of dimension {} lists {} face pairs",
                    s.id,
                    s.dim,
                    s.faces.len()
                )));
            }
            let mut faces = Vec::with_capacity(s.dim);
            for (i, pair) in s.faces.iter().enumerate() {
                let mut out = [0; 2];
                for (k, target) in pair.iter().enumerate() {
                    out[k] = *index.get(target).ok_or_else(|| Error::DanglingFace {
                        cube: s.id.clone(),
                        face: face_key(i + 1, k == 1),
                        target: target.clone(),
                    })?;
                }
                faces.push(out);
            }
            cubes.push(Cube { id: s.id.clone(), dim: s.dim, faces });
        }
        Ok(PrecubicalSet { cubes, index })
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn lookup(&self, id: &str) -> Option<CubeIx> {
        self.index.get(id).copied()
    }

    pub fn cube(&self, c: CubeIx) -> &Cube {
        &self.cubes[c]
    }

    /// d_i^alpha of cube `c`, with 1-based `i`.
    pub fn face(&self, c: CubeIx, i: usize, plus: bool) -> CubeIx {
        self.cubes[c].faces[i - 1][plus as usize]
    }

    pub fn max_dim(&self) -> usize {
        self.cubes.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn of_dim(&self, n: usize) -> impl Iterator<Item = CubeIx> + '_ {
        (0..self.cubes.len()).filter(move |&c| self.cubes[c].dim == n)
    }

    pub fn to_json(&self) -> String {
        let doc = WireDoc {
            cubes: self
                .cubes
                .iter()
                .map(|c| WireCube {
                    id: c.id.clone(),
                    dim: c.dim,
                    faces: c
                        .faces
                        .iter()
                        .enumerate()
                        .flat_map(|(i, f)| {
                            [
                                (face_key(i + 1, false), self.cubes[f[0]].id.clone()),
                                (face_key(i + 1, true), self.cubes[f[1]].id.clone()),
                            ]
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}

pub fn parse_precubical(text: &str) -> Result<PrecubicalSet> {
    let doc: WireDoc = serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
    let mut specs = Vec::with_capacity(doc.cubes.len());
    for c in doc.cubes {
        let mut faces: Vec<[Option<String>; 2]> = vec![[None, None]; c.dim];
        for (key, target) in c.faces {
            let (i, plus) = parse_face_key(&key)
                .ok_or_else(|| Error::Syntax(format!("cube {}: bad face key {key:?}", c.id)))?;
            if i == 0 || i > c.dim {
                return Err(Error::Syntax(format!(
                    "cube {}: face key {key} out of range for dimension {}",
                    c.id, c.dim
                )));
            }
            faces[i - 1][plus as usize] = Some(target);
        }
        let mut resolved = Vec::with_capacity(c.dim);
        for (i, [m, p]) in faces.into_iter().enumerate() {
            match (m, p) {
                (Some(m), Some(p)) => resolved.push([m, p]),
                (m, _) => {
                    return Err(Error::Syntax(format!(
                        "cube {}: missing face {}",
                        c.id,
                        face_key(i + 1, m.is_some())
                    )))
                }
            }
        }
        specs.push(CubeSpec { id: c.id, dim: c.dim, faces: resolved });
    }
    let set = PrecubicalSet::from_specs(specs)?;
    for c in &set.cubes {
        for (i, f) in c.faces.iter().enumerate() {
            for (k, &t) in f.iter().enumerate() {
                let found = set.cubes[t].dim;
                if found + 1 != c.dim {
                    return Err(Error::DimensionMismatch {
                        cube: c.id.clone(),
                        face: face_key(i + 1, k == 1),
                        expected: c.dim - 1,
                        found,
                    });
                }
            }
        }
    }
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    FaceDimension,
    CubeAxiom,
    Acyclicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub cube: String,
    pub indices: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

pub fn validate(k: &PrecubicalSet) -> ValidationReport {
    let mut violations = Vec::new();
    let cubes = &k.cubes;
    let mut well_dimensioned = vec![true; cubes.len()];
    for (c, cube) in cubes.iter().enumerate() {
        for (i, f) in cube.faces.iter().enumerate() {
            for (s, &t) in f.iter().enumerate() {
                if cubes[t].dim + 1 != cube.dim {
                    well_dimensioned[c] = false;
                    violations.push(Violation {
                        rule: Rule::FaceDimension,
                        cube: cube.id.clone(),
                        indices: vec![i + 1],
                        message: format!(
                            "{} is {} of dimension {}",
                            face_key(i + 1, s == 1),
                            cubes[t].id,
                            cubes[t].dim
                        ),
                    });
                }
            }
        }
    }
    for (c, cube) in cubes.iter().enumerate() {
        if !well_dimensioned[c] {
            continue;
        }
        for j in 2..=cube.dim {
            for i in 1..j {
                let mut bad = Vec::new();
                for a in [false, true] {
                    for b in [false, true] {
                        let fj = k.face(c, j, b);
                        let fi = k.face(c, i, a);
                        if !well_dimensioned[fj] || !well_dimensioned[fi] {
                            continue;
                        }
                        let lhs = k.face(fj, i, a);
                        let rhs = k.face(fi, j - 1, b);
                        if lhs != rhs {
                            bad.push(format!(
                                "d{i}{}d{j}{} = {} but d{}{}d{i}{} = {}",
                                sign(a),
                                sign(b),
                                cubes[lhs].id,
                                j - 1,
                                sign(b),
                                sign(a),
                                cubes[rhs].id
                            ));
                        }
                    }
                }
                if !bad.is_empty() {
                    violations.push(Violation {
                        rule: Rule::CubeAxiom,
                        cube: cube.id.clone(),
                        indices: vec![i, j],
                        message: bad.join("; "),
                    });
                }
            }
        }
    }
    for cycle in directed_cycles(k) {
        let names: Vec<&str> = cycle.iter().map(|&e| cubes[e].id.as_str()).collect();
        violations.push(Violation {
            rule: Rule::Acyclicity,
            cube: names[0].to_string(),
            indices: vec![],
            message: format!("edges {} lie on a directed cycle", names.join(", ")),
        });
    }
    ValidationReport { ok: violations.is_empty(), violations }
}

fn sign(plus: bool) -> char {
    if plus {
        '+'
    } else {
        '-'
    }
}

/// Edges of each strongly connected component of the 1-skeleton that
/// contains a cycle.
fn directed_cycles(k: &PrecubicalSet) -> Vec<Vec<CubeIx>> {
    let n = k.cubes.len();
    let edges: Vec<(CubeIx, CubeIx, CubeIx)> = k
        .cubes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim == 1)
        .map(|(e, c)| (e, c.faces[0][0], c.faces[0][1]))
        .filter(|&(_, a, b)| k.cubes[a].dim == 0 && k.cubes[b].dim == 0)
        .collect();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for &(_, a, b) in &edges {
        succ[a].push(b);
        pred[b].push(a);
    }
    // Kosaraju
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((v, next)) = stack.pop() {
            if next < succ[v].len() {
                stack.push((v, next + 1));
                let w = succ[v][next];
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = ncomp;
        while let Some(v) = stack.pop() {
            for &w in &pred[v] {
                if comp[w] == usize::MAX {
                    comp[w] = ncomp;
                    stack.push(w);
                }
            }
        }
        ncomp += 1;
    }
    let mut by_comp: BTreeMap<usize, Vec<CubeIx>> = BTreeMap::new();
    for &(e, a, b) in &edges {
        if comp[a] == comp[b] {
            by_comp.entry(comp[a]).or_default().push(e);
        }
    }
    by_comp.into_values().collect()
}

/// Sign-alternating corner complex (Z K_*, d^alpha) with
/// d^alpha = sum_i (-1)^(i+1) d_i^alpha.
pub fn goubault_complex(k: &PrecubicalSet, plus: bool) -> Result<ChainComplex> {
    let report = validate(k);
    if !report.ok {
        return Err(Error::InvalidInput(report.violations[0].message.clone()));
    }
    let top = k.max_dim();
    let mut position = vec![0usize; k.len()];
    let mut labels = vec![Vec::new(); top + 1];
    for (c, cube) in k.cubes.iter().enumerate() {
        position[c] = labels[cube.dim].len();
        labels[cube.dim].push(cube.id.clone());
    }
    let mut boundaries: Vec<Vec<SparseVec>> = vec![Vec::new(); top + 1];
    boundaries[0] = vec![SparseVec::new(); labels[0].len()];
    for (c, cube) in k.cubes.iter().enumerate() {
        if cube.dim == 0 {
            continue;
        }
        let mut col = SparseVec::new();
        for i in 1..=cube.dim {
            let coef = if i % 2 == 1 { 1 } else { -1 };
            col.add_entry(position[k.face(c, i, plus)], coef);
        }
        boundaries[cube.dim].push(col);
    }
    Ok(ChainComplex::new(labels, boundaries))
}
