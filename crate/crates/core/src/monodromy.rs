//! Simple branched-covering data and Euler-characteristic bookkeeping.
//!
//! The ground truth for every Euler-characteristic formula in the crate is
//! `oracle_euler`: it explicitly constructs the cells of a branched cover of
//! a closed surface and counts them. Edge permutations define a covering of
//! the 1-skeleton; each face lifts to one face per cycle of its boundary
//! monodromy, so branch points sit at face centers and the n sheet copies of
//! a branched cell merge per its cycle structure. Closed formulas
//! (`riemann_hurwitz_surface`, `sector_cover_euler`) are treated as
//! conjectures and validated against the oracle in tests.

use crate::perm::{Permutation, UnionFind};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("edge {0} references vertex out of range")]
    BadEdge(usize),
    #[error("face walk is empty")]
    EmptyFace,
    #[error("face {0} walk references edge out of range")]
    BadFaceEdge(usize),
    #[error("face {0} walk is not closed at position {1}")]
    OpenFaceWalk(usize, usize),
    #[error("dart of edge {0} used {1} times across faces (each side must be used exactly once)")]
    DartMultiplicity(usize, usize),
    #[error("complex is not a closed surface: {0} link orbits for {1} vertices")]
    NotASurface(usize, usize),
    #[error("vertex {0} has no incident edge")]
    IsolatedVertex(usize),
    #[error("edge permutation count {0} does not match edge count {1}")]
    PermCount(usize, usize),
    #[error("edge permutation {0} has degree {1}, expected {2}")]
    PermDegree(usize, usize, usize),
    #[error("branch datum {0:?}: cycle lengths sum to {1}, expected {2}")]
    BadPartition(String, usize, usize),
    #[error("covering degree must be at least 1")]
    BadDegree,
    #[error("meridian {0:?} is not a transposition")]
    NotATransposition(String),
    #[error("meridian {0:?} has degree {1}, expected {2}")]
    MeridianDegree(String, usize, usize),
    #[error("unknot piece needs 1 transposition, got {0}")]
    UnknotArity(usize),
    #[error("hopf piece needs 2 commuting transpositions")]
    HopfConstraint,
    #[error("trefoil piece needs 2 transpositions satisfying the braid relation")]
    TrefoilConstraint,
    #[error("piece transposition has degree {0}, expected {1}")]
    PieceDegree(usize, usize),
    #[error("sector cover is disconnected ({0} components)")]
    DisconnectedSector(usize),
}

// ---------------------------------------------------------------------------
// Base cell complexes
// ---------------------------------------------------------------------------

/// A closed oriented surface as a polygonal cell complex. Faces are closed
/// walks of signed 1-based edge references (`+e` traverses edge `e-1`
/// tail-to-head, `-e` the reverse). Parallel edges and loops are allowed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellComplex {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<i64>>,
}

impl CellComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    fn dart_tail(&self, dart: usize) -> usize {
        let (t, h) = self.edges[dart / 2];
        if dart % 2 == 0 {
            t
        } else {
            h
        }
    }

    /// Validate that the complex is a coherently oriented closed surface:
    /// every dart appears exactly once among the face walks and the link
    /// orbits are in bijection with the vertices.
    pub fn validate(&self) -> Result<(), MonodromyError> {
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if t >= self.vertices || h >= self.vertices {
                return Err(MonodromyError::BadEdge(i));
            }
        }
        let ndarts = 2 * self.edges.len();
        let mut next_in_face = vec![usize::MAX; ndarts];
        let mut use_count = vec![0usize; ndarts];
        for (fi, walk) in self.faces.iter().enumerate() {
            if walk.is_empty() {
                return Err(MonodromyError::EmptyFace);
            }
            let darts: Vec<usize> = walk
                .iter()
                .map(|&s| {
                    let e = s.unsigned_abs() as usize;
                    if s == 0 || e > self.edges.len() {
                        return Err(MonodromyError::BadFaceEdge(fi));
                    }
                    Ok(2 * (e - 1) + if s > 0 { 0 } else { 1 })
                })
                .collect::<Result<_, _>>()?;
            for (k, &d) in darts.iter().enumerate() {
                let nxt = darts[(k + 1) % darts.len()];
                // head of d must equal tail of the next dart
                if self.dart_tail(d ^ 1) != self.dart_tail(nxt) {
                    return Err(MonodromyError::OpenFaceWalk(fi, k));
                }
                use_count[d] += 1;
                next_in_face[d] = nxt;
            }
        }
        for d in 0..ndarts {
            if use_count[d] != 1 {
                return Err(MonodromyError::DartMultiplicity(d / 2 + 1, use_count[d]));
            }
        }
        let mut incident = vec![false; self.vertices];
        for &(t, h) in &self.edges {
            incident[t] = true;
            incident[h] = true;
        }
        if let Some(v) = incident.iter().position(|&b| !b) {
            return Err(MonodromyError::IsolatedVertex(v));
        }
        // Link orbits of sigma = phi . iota must match the vertex set.
        let mut seen = vec![false; ndarts];
        let mut orbits = 0usize;
        for start in 0..ndarts {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let tail = self.dart_tail(start);
            let mut d = start;
            loop {
                seen[d] = true;
                if self.dart_tail(d) != tail {
                    return Err(MonodromyError::NotASurface(orbits, self.vertices));
                }
                d = next_in_face[d ^ 1];
                if d == start {
                    break;
                }
            }
        }
        if orbits != self.vertices {
            return Err(MonodromyError::NotASurface(orbits, self.vertices));
        }
        Ok(())
    }
}

/// Local multiplicity structure of the monodromy around one branch point:
/// the cycle lengths partition the covering degree.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BranchDatum {
    pub component: String,
    pub cycles: Vec<usize>,
}

impl BranchDatum {
    pub fn deficiency(&self, n: usize) -> Result<i64, MonodromyError> {
        let total: usize = self.cycles.iter().sum();
        if total != n {
            return Err(MonodromyError::BadPartition(
                self.component.clone(),
                total,
                n,
            ));
        }
        Ok(n as i64 - self.cycles.len() as i64)
    }
}

/// Riemann-Hurwitz for surfaces:
/// chi(cover) = n * chi(base) - sum over branch points of (n - #cycles).
pub fn riemann_hurwitz_surface(
    n: usize,
    chi_base: i64,
    branch_points: &[BranchDatum],
) -> Result<i64, MonodromyError> {
    if n == 0 {
        return Err(MonodromyError::BadDegree);
    }
    let mut chi = n as i64 * chi_base;
    for bp in branch_points {
        chi -= bp.deficiency(n)?;
    }
    Ok(chi)
}

// ---------------------------------------------------------------------------
// The cell-complex cover oracle
// ---------------------------------------------------------------------------

/// Covering data over a base complex: `edge_perms[e]` carries sheet `s` at
/// the tail of edge `e` to sheet `edge_perms[e](s)` at its head.
#[derive(Clone, Debug)]
pub struct CellComplexCover {
    pub base: CellComplex,
    pub sheets: usize,
    pub edge_perms: Vec<Permutation>,
}

/// The explicitly constructed cover, with realized branch data per face.
#[derive(Clone, Debug)]
pub struct CoverComplex {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    /// For each base face: the cycle type of its boundary monodromy.
    pub face_branch_data: Vec<BranchDatum>,
}

impl CoverComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }

    /// Branch data restricted to genuinely branched faces.
    pub fn branch_points(&self, n: usize) -> Vec<BranchDatum> {
        self.face_branch_data
            .iter()
            .filter(|bd| bd.cycles.len() != n)
            .cloned()
            .collect()
    }
}

pub fn build_cell_cover(cc: &CellComplexCover) -> Result<CoverComplex, MonodromyError> {
    cc.base.validate()?;
    let n = cc.sheets;
    if n == 0 {
        return Err(MonodromyError::BadDegree);
    }
    if cc.edge_perms.len() != cc.base.edges.len() {
        return Err(MonodromyError::PermCount(
            cc.edge_perms.len(),
            cc.base.edges.len(),
        ));
    }
    for (i, p) in cc.edge_perms.iter().enumerate() {
        if p.degree() != n {
            return Err(MonodromyError::PermDegree(i, p.degree(), n));
        }
    }

    // Lifted 1-skeleton: vertex (v, s) indexed v * n + s, edge (e, s) joins
    // (tail, s) to (head, perm_e(s)).
    let mut uf = UnionFind::new(cc.base.vertices * n);
    for (e, &(t, h)) in cc.base.edges.iter().enumerate() {
        for s in 0..n {
            uf.union(t * n + s, h * n + cc.edge_perms[e].apply(s));
        }
    }

    // Faces lift per cycle of the boundary monodromy.
    let mut lifted_faces = 0usize;
    let mut face_branch_data = Vec::with_capacity(cc.base.faces.len());
    for (fi, walk) in cc.base.faces.iter().enumerate() {
        let mut bd = Permutation::identity(n);
        for &sgn in walk {
            let e = sgn.unsigned_abs() as usize - 1;
            let step = if sgn > 0 {
                cc.edge_perms[e].clone()
            } else {
                cc.edge_perms[e].inverse()
            };
            bd = bd.then(&step).expect("degree");
        }
        let cycle_type = bd.cycle_type();
        lifted_faces += cycle_type.len();
        face_branch_data.push(BranchDatum {
            component: format!("face{}", fi),
            cycles: cycle_type,
        });
    }

    Ok(CoverComplex {
        vertices: cc.base.vertices * n,
        edges: cc.base.edges.len() * n,
        faces: lifted_faces,
        components: uf.count(),
        face_branch_data,
    })
}

/// V - E + F of the explicitly constructed cover.
pub fn oracle_euler(cc: &CellComplexCover) -> Result<i64, MonodromyError> {
    Ok(build_cell_cover(cc)?.euler_characteristic())
}

// ---------------------------------------------------------------------------
// Covering specifications (meridians -> transpositions)
// ---------------------------------------------------------------------------

/// A simple branched covering: every named meridian maps to a transposition
/// in S_n. Degree 1 is the identity covering and carries no meridians.
#[derive(Clone, Debug)]
pub struct CoveringSpec {
    pub degree: usize,
    pub meridians: BTreeMap<String, Permutation>,
}

#[derive(Serialize, Deserialize)]
struct CoveringSpecWire {
    degree: usize,
    meridians: BTreeMap<String, Vec<Vec<usize>>>,
}

impl Serialize for CoveringSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = CoveringSpecWire {
            degree: self.degree,
            meridians: self
                .meridians
                .iter()
                .map(|(k, p)| {
                    (
                        k.clone(),
                        p.cycles()
                            .into_iter()
                            .map(|c| c.into_iter().map(|v| v + 1).collect())
                            .collect(),
                    )
                })
                .collect(),
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoveringSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = CoveringSpecWire::deserialize(d)?;
        let mut meridians = BTreeMap::new();
        for (k, cycles) in wire.meridians {
            let p = Permutation::from_cycles(wire.degree, &cycles)
                .map_err(serde::de::Error::custom)?;
            meridians.insert(k, p);
        }
        Ok(CoveringSpec {
            degree: wire.degree,
            meridians,
        })
    }
}

impl CoveringSpec {
    pub fn identity() -> Self {
        CoveringSpec {
            degree: 1,
            meridians: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<(), MonodromyError> {
        if self.degree == 0 {
            return Err(MonodromyError::BadDegree);
        }
        for (name, p) in &self.meridians {
            if p.degree() != self.degree {
                return Err(MonodromyError::MeridianDegree(
                    name.clone(),
                    p.degree(),
                    self.degree,
                ));
            }
            if !p.is_transposition() {
                return Err(MonodromyError::NotATransposition(name.clone()));
            }
        }
        Ok(())
    }

    pub fn meridian(&self, name: &str) -> Option<&Permutation> {
        self.meridians.get(name)
    }
}

/// True iff the subgroup generated by the meridian images acts transitively
/// on the sheets; a disconnected cover fails this.
pub fn is_transitive(spec: &CoveringSpec) -> bool {
    let gens: Vec<Permutation> = spec.meridians.values().cloned().collect();
    Permutation::orbit_count(spec.degree, &gens) == 1
}

/// The Hopf-link constraint: its two meridians must commute.
pub fn hopf_constraint(x: &Permutation, y: &Permutation) -> bool {
    x.commutes_with(y)
}

/// The trefoil (cusp) constraint: xyx = yxy.
pub fn trefoil_constraint(x: &Permutation, y: &Permutation) -> bool {
    let lhs = x.then(y).and_then(|p| p.then(x));
    let rhs = y.then(x).and_then(|p| p.then(y));
    lhs.ok() == rhs.ok()
}

// ---------------------------------------------------------------------------
// Sector covers (4-ball / 1-handlebody pieces)
// ---------------------------------------------------------------------------

/// Classification of a capped link component in a sector boundary:
/// a trivial disk, a pair of transversely intersecting disks (node), or a
/// cone on the right-handed trefoil (cusp).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKind {
    Unknot,
    Hopf,
    Trefoil,
}

/// One capped component of the branch locus inside a sector, with the
/// transpositions of its disks.
#[derive(Clone, Debug)]
pub struct SectorPiece {
    pub kind: LinkKind,
    pub transpositions: Vec<Permutation>,
}

impl SectorPiece {
    pub fn validate(&self, n: usize) -> Result<(), MonodromyError> {
        for p in &self.transpositions {
            if p.degree() != n {
                return Err(MonodromyError::PieceDegree(p.degree(), n));
            }
            if !p.is_transposition() {
                return Err(MonodromyError::NotATransposition(format!("{}", p)));
            }
        }
        match self.kind {
            LinkKind::Unknot => {
                if self.transpositions.len() != 1 {
                    return Err(MonodromyError::UnknotArity(self.transpositions.len()));
                }
            }
            LinkKind::Hopf => {
                if self.transpositions.len() != 2
                    || !hopf_constraint(&self.transpositions[0], &self.transpositions[1])
                {
                    return Err(MonodromyError::HopfConstraint);
                }
            }
            LinkKind::Trefoil => {
                if self.transpositions.len() != 2
                    || !trefoil_constraint(&self.transpositions[0], &self.transpositions[1])
                {
                    return Err(MonodromyError::TrefoilConstraint);
                }
            }
        }
        Ok(())
    }

    /// Sheets lost over this piece: n minus the orbit count of its local
    /// monodromy subgroup. A trivial disk with transposition monodromy loses
    /// exactly one sheet; a node loses one per distinct disk transposition;
    /// the 3-fold cusp model merges three sheets into one cone.
    pub fn deficiency(&self, n: usize) -> Result<i64, MonodromyError> {
        self.validate(n)?;
        let orbits = Permutation::orbit_count(n, &self.transpositions);
        Ok(n as i64 - orbits as i64)
    }
}

/// Euler characteristic of the cover of a 4-ball sector containing the given
/// capped pieces: chi = n * chi(B^4) - sum of piece deficiencies.
pub fn sector_cover_euler(n: usize, pieces: &[SectorPiece]) -> Result<i64, MonodromyError> {
    if n == 0 {
        return Err(MonodromyError::BadDegree);
    }
    let mut chi = n as i64;
    for piece in pieces {
        chi -= piece.deficiency(n)?;
    }
    Ok(chi)
}

/// Independent count for the sector cover: decompose the sector into one
/// sub-ball per piece plus the complement, lift each part explicitly (cones
/// per local sheet orbit, n contractible copies of the complement, gluing
/// 3-manifolds contributing zero), and sum.
pub fn sector_oracle_euler(n: usize, pieces: &[SectorPiece]) -> Result<i64, MonodromyError> {
    if n == 0 {
        return Err(MonodromyError::BadDegree);
    }
    let mut chi = n as i64 * (1 - pieces.len() as i64);
    for piece in pieces {
        piece.validate(n)?;
        let mut uf = UnionFind::new(n);
        for t in &piece.transpositions {
            for s in 0..n {
                uf.union(s, t.apply(s));
            }
        }
        chi += uf.count() as i64;
    }
    Ok(chi)
}

/// `k` of the 1-handlebody sector cover (the boundary connected sum of k
/// copies of S^1 x B^3 has chi = 1 - k). Errors when the sector cover is
/// disconnected.
pub fn sector_handlebody_k(n: usize, pieces: &[SectorPiece]) -> Result<i64, MonodromyError> {
    let chi = sector_cover_euler(n, pieces)?;
    let gens: Vec<Permutation> = pieces
        .iter()
        .flat_map(|p| p.transpositions.iter().cloned())
        .collect();
    let components = Permutation::orbit_count(n, &gens);
    if components != 1 {
        return Err(MonodromyError::DisconnectedSector(components));
    }
    Ok(1 - chi)
}

// ---------------------------------------------------------------------------
// Standard base complexes (used by the oracle sweeps and the pullback)
// ---------------------------------------------------------------------------

/// Sphere as m orange slices: two poles, m meridian edges, m bigon faces.
pub fn sphere_complex(m: usize) -> CellComplex {
    assert!(m >= 2);
    CellComplex {
        vertices: 2,
        edges: (0..m).map(|_| (0, 1)).collect(),
        faces: (0..m)
            .map(|i| vec![(i + 1) as i64, -(((i + 1) % m + 1) as i64)])
            .collect(),
    }
}

/// Torus as a stack of m annular bands: m vertices, m circle edges, m rungs.
pub fn torus_complex(m: usize) -> CellComplex {
    assert!(m >= 1);
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((i, i)); // edge i: circle loop at vertex i
    }
    for i in 0..m {
        edges.push((i, (i + 1) % m)); // edge m+i: rung i -> i+1
    }
    let faces = (0..m)
        .map(|i| {
            let c_lo = (i + 1) as i64;
            let c_hi = ((i + 1) % m + 1) as i64;
            let r = (m + i + 1) as i64;
            // band between circle i and circle i+1: r c_hi r^-1 c_lo^-1
            vec![r, c_hi, -r, -c_lo]
        })
        .collect();
    CellComplex {
        vertices: m,
        edges,
        faces,
    }
}

/// Genus-2 surface: fan triangulation of the identified octagon
/// (one vertex, 4 octagon edges, 5 diagonals, 6 triangles).
pub fn genus2_complex() -> CellComplex {
    let sides: [i64; 8] = [1, 2, -1, -2, 3, 4, -3, -4];
    let edges = vec![(0, 0); 9];
    // Fan triangles over corners (0, i+1, i+2); diagonal i has edge ref 4+i.
    let mut faces = Vec::new();
    for i in 0..6 {
        let first: i64 = if i == 0 { sides[0] } else { 4 + i as i64 };
        let last: i64 = if i == 5 { sides[7] } else { -(5 + i as i64) };
        faces.push(vec![first, sides[i + 1], last]);
    }
    CellComplex {
        vertices: 1,
        edges,
        faces,
    }
}
