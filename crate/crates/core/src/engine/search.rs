use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::inner::{Bbox, Solid};
use super::{EngineError, Tet, Triangulation};
use crate::exact::{orient3d, tets_classify, Scalar, Sign, TetContact};
use crate::surface::{signed_volume6, sorted3, with_points, TriMesh};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Stop at the first triangulation.
    Any,
    /// Enumerate every triangulation.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    Exhausted,
    NotTriangulable,
    BudgetExceeded,
}

/// Outcome of a search. Sizes and the count range over the triangulations
/// found; they are exact over all triangulations when the status is
/// `exhausted`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub candidates: usize,
    pub t_min: Option<usize>,
    pub t_max: Option<usize>,
    pub count_of_triangulations: Option<u64>,
    pub witness_min: Option<Triangulation>,
    pub witness_max: Option<Triangulation>,
    pub nodes_explored: u64,
}

/// Candidate tets with their faces numbered and their pairwise conflicts
/// (overlapping interiors) precomputed.
struct Problem {
    tets: Vec<Tet>,
    /// Per candidate: its four face ids, each with the side of the face the
    /// tet lies on.
    sides: Vec<[(usize, Sign); 4]>,
    /// Per face id: candidates lying on its negative / positive side.
    by_face: Vec<[Vec<usize>; 2]>,
    conflicts: Vec<Vec<usize>>,
    /// Boundary face ids with the side the solid lies on.
    boundary: Vec<(usize, Sign)>,
}

fn side_slot(s: Sign) -> usize {
    usize::from(s == Sign::Positive)
}

/// Parity of the permutation sorting three distinct values.
fn is_even_order(f: &[usize; 3]) -> bool {
    let inversions = usize::from(f[0] > f[1]) + usize::from(f[0] > f[2]) + usize::from(f[1] > f[2]);
    inversions % 2 == 0
}

impl Problem {
    fn build<S: Scalar>(solid: &Solid<'_, S>, tets: Vec<Tet>) -> Result<Problem, EngineError> {
        let pts = solid.pts;
        let mut ids: BTreeMap<[usize; 3], usize> = BTreeMap::new();
        for f in solid.faces.iter().map(sorted3).chain(tets.iter().flat_map(|t| t.faces().map(|(f, _)| f))) {
            ids.entry(f).or_insert(0);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        let mut by_face: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; ids.len()];
        let mut sides = Vec::with_capacity(tets.len());
        for (ti, t) in tets.iter().enumerate() {
            let s = t.faces().map(|(f, opp)| {
                let side = orient3d(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[opp]);
                (ids[&f], side)
            });
            for &(fid, side) in &s {
                by_face[fid][side_slot(side)].push(ti);
            }
            sides.push(s);
        }
        // the solid is on the negative side of an outward face; flip for
        // inward meshes and for faces whose sorting is an odd permutation
        let outward = signed_volume6(pts, solid.faces).sign() != Sign::Negative;
        let boundary = solid
            .faces
            .iter()
            .map(|f| {
                let inside = if outward == is_even_order(f) { Sign::Negative } else { Sign::Positive };
                (ids[&sorted3(f)], inside)
            })
            .collect();
        let corners: Vec<_> = tets.iter().map(|t| solid.corners(t)).collect();
        let boxes: Vec<_> = corners.iter().map(|c| Bbox::of(c)).collect();
        let mut conflicts = vec![Vec::new(); tets.len()];
        for i in 0..tets.len() {
            for j in i + 1..tets.len() {
                if boxes[i].interiors_apart(&boxes[j]) {
                    continue;
                }
                if tets_classify(&corners[i], &corners[j])? == TetContact::ImproperOverlap {
                    conflicts[i].push(j);
                    conflicts[j].push(i);
                }
            }
        }
        Ok(Problem { tets, sides, by_face, conflicts, boundary })
    }
}

enum Flow {
    Continue,
    Stop,
}

struct Searcher<'p> {
    p: &'p Problem,
    label: String,
    mode: SearchMode,
    budget: u64,
    nodes: u64,
    over_budget: bool,
    /// Face id -> side still needing a tet.
    front: BTreeMap<usize, Sign>,
    blocked: Vec<u32>,
    chosen: Vec<usize>,
    seen: HashSet<Vec<usize>>,
    t_min: Option<(usize, Vec<usize>)>,
    t_max: Option<(usize, Vec<usize>)>,
}

impl Searcher<'_> {
    fn record(&mut self) {
        let mut set = self.chosen.clone();
        set.sort_unstable();
        let k = set.len();
        if self.t_min.as_ref().map_or(true, |(m, _)| k < *m) {
            self.t_min = Some((k, set.clone()));
        }
        if self.t_max.as_ref().map_or(true, |(m, _)| k > *m) {
            self.t_max = Some((k, set.clone()));
        }
        self.seen.insert(set);
    }

    /// Adds candidate `c`, returning the front changes to undo, or `None`
    /// when one of its faces is already needed from its own side.
    fn push(&mut self, c: usize) -> Option<Vec<(usize, Option<Sign>)>> {
        let mut undo = Vec::with_capacity(4);
        for &(fid, side) in &self.p.sides[c] {
            match self.front.get(&fid).copied() {
                Some(need) if need == side => {
                    self.front.remove(&fid);
                    undo.push((fid, Some(need)));
                }
                Some(_) => {
                    self.restore(undo);
                    return None;
                }
                None => {
                    self.front.insert(fid, side.flip());
                    undo.push((fid, None));
                }
            }
        }
        self.blocked[c] += 1;
        for &o in &self.p.conflicts[c] {
            self.blocked[o] += 1;
        }
        self.chosen.push(c);
        Some(undo)
    }

    fn restore(&mut self, undo: Vec<(usize, Option<Sign>)>) {
        for (fid, prev) in undo.into_iter().rev() {
            match prev {
                Some(s) => self.front.insert(fid, s),
                None => self.front.remove(&fid),
            };
        }
    }

    fn pop(&mut self, undo: Vec<(usize, Option<Sign>)>) {
        let c = self.chosen.pop().expect("pop after push");
        self.blocked[c] -= 1;
        for &o in &self.p.conflicts[c] {
            self.blocked[o] -= 1;
        }
        self.restore(undo);
    }

    fn open(&self, fid: usize, need: Sign) -> impl Iterator<Item = usize> + '_ {
        self.p.by_face[fid][side_slot(need)].iter().copied().filter(|&c| self.blocked[c] == 0)
    }

    fn dfs(&mut self) -> Flow {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.over_budget = true;
            return Flow::Stop;
        }
        let Some((&fid, &need)) = self.front.iter().next() else {
            self.record();
            return match self.mode {
                SearchMode::Any => Flow::Stop,
                SearchMode::Exhaustive => Flow::Continue,
            };
        };
        // every open face must still be coverable
        if self.front.iter().any(|(&f, &s)| self.open(f, s).next().is_none()) {
            return Flow::Continue;
        }
        let options: Vec<usize> = self.open(fid, need).collect();
        for c in options {
            if self.blocked[c] > 0 {
                continue;
            }
            let Some(undo) = self.push(c) else { continue };
            let flow = self.dfs();
            self.pop(undo);
            if let Flow::Stop = flow {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    fn witness(&self, w: &Option<(usize, Vec<usize>)>) -> Option<Triangulation> {
        w.as_ref().map(|(_, set)| Triangulation::new(self.label.clone(), set.iter().map(|&c| self.p.tets[c]).collect()))
    }
}

fn run(p: &Problem, label: &str, mode: SearchMode, budget: u64) -> SearchResult {
    let mut s = Searcher {
        p,
        label: label.to_string(),
        mode,
        budget,
        nodes: 0,
        over_budget: false,
        front: p.boundary.iter().copied().collect(),
        blocked: vec![0; p.tets.len()],
        chosen: Vec::new(),
        seen: HashSet::new(),
        t_min: None,
        t_max: None,
    };
    s.dfs();
    let found = !s.seen.is_empty();
    let status = match (s.over_budget, found, mode) {
        (true, _, _) => SearchStatus::BudgetExceeded,
        (false, false, _) => SearchStatus::NotTriangulable,
        (false, true, SearchMode::Any) => SearchStatus::Found,
        (false, true, SearchMode::Exhaustive) => SearchStatus::Exhausted,
    };
    SearchResult {
        status,
        candidates: p.tets.len(),
        t_min: s.t_min.as_ref().map(|w| w.0),
        t_max: s.t_max.as_ref().map(|w| w.0),
        count_of_triangulations: found.then_some(s.seen.len() as u64),
        witness_min: s.witness(&s.t_min),
        witness_max: s.witness(&s.t_max),
        nodes_explored: s.nodes,
    }
}

/// Backtracking search over face-to-face triangulations by inner tets.
///
/// The front holds triangles that still need a tet on a given side; it
/// starts as the boundary. Each node branches on the least front triangle
/// over the non-conflicting candidates on the needed side, so every
/// triangulation is reached along exactly one path and the branching order
/// is fixed.
pub fn search(mesh: &TriMesh, mode: SearchMode, budget: u64) -> Result<SearchResult, EngineError> {
    if !mesh.is_geometric() {
        return Err(EngineError::AbstractMesh);
    }
    let emb = mesh.embedding()?;
    with_points!(&emb, |pts| {
        let solid = Solid::new(pts, mesh.faces());
        let problem = Problem::build(&solid, solid.candidates()?)?;
        Ok(run(&problem, mesh.label(), mode, budget))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::is_valid_triangulation;
    use crate::exact::pt;

    fn octahedron() -> TriMesh {
        let coords = vec![pt(1, 0, 0), pt(-1, 0, 0), pt(0, 1, 0), pt(0, -1, 0), pt(0, 0, 1), pt(0, 0, -1)];
        let faces = vec![
            [0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4],
            [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5],
        ];
        TriMesh::normalized("octahedron", 6, Some(coords), faces).unwrap()
    }

    #[test]
    fn octahedron_has_three_four_tet_triangulations() {
        let r = search(&octahedron(), SearchMode::Exhaustive, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.status, SearchStatus::Exhausted);
        assert_eq!((r.t_min, r.t_max, r.count_of_triangulations), (Some(4), Some(4), Some(3)));
        let w = r.witness_min.unwrap();
        assert!(is_valid_triangulation(&octahedron(), &w.tets).unwrap().valid);
    }

    #[test]
    fn any_mode_stops_early() {
        let r = search(&octahedron(), SearchMode::Any, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert_eq!(r.count_of_triangulations, Some(1));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let r = search(&octahedron(), SearchMode::Exhaustive, 2).unwrap();
        assert_eq!(r.status, SearchStatus::BudgetExceeded);
        assert_eq!(r.nodes_explored, 3);
    }

    #[test]
    fn inward_orientation_gives_the_same_result() {
        let m = octahedron();
        let flipped: Vec<_> = m.faces().iter().map(|f| [f[0], f[2], f[1]]).collect();
        let inward = TriMesh::new("octahedron", 6, m.coords().map(|c| c.to_vec()), flipped).unwrap();
        assert_eq!(
            search(&inward, SearchMode::Exhaustive, DEFAULT_BUDGET).unwrap(),
            search(&m, SearchMode::Exhaustive, DEFAULT_BUDGET).unwrap()
        );
    }
}
