//! Trisection-parameter algebra and pullback under branched coverings.
//!
//! A (g; k1,k2,k3)-trisection decomposes a closed 4-manifold into three
//! 1-handlebodies meeting in a spine; only the parameters are modeled here.
//! The Euler characteristic 2 + g - k1 - k2 - k3 follows from
//! inclusion-exclusion over the strata and is cross-checked against the
//! cell-complex oracle in tests. `pullback_cp2` computes the parameters of
//! the cover of the standard genus-1 decomposition induced by a torus
//! diagram and a simple covering specification.

use crate::monodromy::{
    self, build_cell_cover, torus_complex, CellComplexCover, CoveringSpec, MonodromyError,
    SectorPiece,
};
use crate::perm::Permutation;
use crate::torus_diagram::{DiagramError, TorusDiagram};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TrisectionError {
    #[error("genus {0} smaller than sector parameter max {1}")]
    GenusTooSmall(u64, u64),
    #[error("page genus {0} exceeds trisection genus {1}")]
    PageGenusTooLarge(u64, u64),
    #[error("relative trisection needs at least one boundary component")]
    NoBoundary,
    #[error("sector index {0} invalid, expected 1..=3")]
    InvalidSector(u8),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error("covering specification is not transitive: cover disconnected")]
    NotTransitive,
    #[error("diagram references meridian {0:?} absent from the covering spec")]
    MissingMeridian(String),
    #[error("bridge point count {0} is odd; no closed central surface")]
    OddBridgeCount(usize),
    #[error("central surface cover is disconnected ({0} components)")]
    CentralSurfaceDisconnected(usize),
    #[error("nonempty diagram requires branch transpositions, impossible at degree 1")]
    BranchedDegreeOne,
}

/// The tuple (g; k1,k2,k3) with g >= max k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrisectionParams {
    pub g: u64,
    pub k: [u64; 3],
}

impl TrisectionParams {
    pub fn new(g: u64, k: [u64; 3]) -> Result<Self, TrisectionError> {
        let m = *k.iter().max().unwrap();
        if g < m {
            return Err(TrisectionError::GenusTooSmall(g, m));
        }
        Ok(TrisectionParams { g, k })
    }

    /// chi = 2 + g - k1 - k2 - k3, by inclusion-exclusion over the three
    /// sectors, three handlebodies, and the central surface.
    pub fn euler_characteristic(&self) -> i64 {
        2 + self.g as i64 - self.k.iter().sum::<u64>() as i64
    }

    /// Componentwise sum: connected sum along central-surface points.
    pub fn connected_sum(&self, other: &TrisectionParams) -> TrisectionParams {
        TrisectionParams {
            g: self.g + other.g,
            k: [
                self.k[0] + other.k[0],
                self.k[1] + other.k[1],
                self.k[2] + other.k[2],
            ],
        }
    }

    /// Sector-lambda stabilization: connected sum with the unbalanced
    /// genus-1 trisection of S^4 carrying its 1-handle in sector lambda.
    pub fn stabilize(&self, sector: u8) -> Result<TrisectionParams, TrisectionError> {
        if !(1..=3).contains(&sector) {
            return Err(TrisectionError::InvalidSector(sector));
        }
        let mut k = self.k;
        k[(sector - 1) as usize] += 1;
        Ok(TrisectionParams { g: self.g + 1, k })
    }
}

impl fmt::Display for TrisectionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {},{},{})", self.g, self.k[0], self.k[1], self.k[2])
    }
}

/// Parameters (g,k1,k2,k3;p,b) of a relative trisection; carried at the
/// parameter level only (no compression-body combinatorics).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeTrisectionParams {
    pub g: u64,
    pub k: [u64; 3],
    pub page_genus: u64,
    pub boundary_components: u64,
}

impl RelativeTrisectionParams {
    pub fn new(
        g: u64,
        k: [u64; 3],
        page_genus: u64,
        boundary_components: u64,
    ) -> Result<Self, TrisectionError> {
        if page_genus > g {
            return Err(TrisectionError::PageGenusTooLarge(page_genus, g));
        }
        if boundary_components == 0 {
            return Err(TrisectionError::NoBoundary);
        }
        Ok(RelativeTrisectionParams {
            g,
            k,
            page_genus,
            boundary_components,
        })
    }
}

impl fmt::Display for RelativeTrisectionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{};{},{})",
            self.g, self.k[0], self.k[1], self.k[2], self.page_genus, self.boundary_components
        )
    }
}

// ---------------------------------------------------------------------------
// Pullback of the standard genus-1 decomposition
// ---------------------------------------------------------------------------

/// Result of pulling back the standard trisection along a simple branched
/// covering described by a diagram and covering spec, together with the
/// oracle cross-checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PullbackReport {
    pub params: TrisectionParams,
    pub degree: usize,
    pub central_chi: i64,
    pub sector_chi: [i64; 3],
    pub total_chi: i64,
    pub oracle_central_chi: i64,
    pub oracle_central_components: usize,
    pub oracle_sector_chi: [i64; 3],
    /// Tuple chi equals the alternating strata sum.
    pub strata_consistent: bool,
    /// Formula values agree with the explicit cell counts.
    pub oracle_consistent: bool,
}

fn act_sigma(s: &Permutation, t: &Permutation) -> (Permutation, Permutation) {
    let conj = s
        .then(t)
        .and_then(|p| p.then(&s.inverse()))
        .expect("degree");
    (conj, s.clone())
}

fn act_sigma_inv(s: &Permutation, t: &Permutation) -> (Permutation, Permutation) {
    let conj = t
        .inverse()
        .then(s)
        .and_then(|p| p.then(t))
        .expect("degree");
    (t.clone(), conj)
}

fn lane_meridian(spec: &CoveringSpec, name: &str) -> Result<Permutation, TrisectionError> {
    spec.meridian(name)
        .cloned()
        .ok_or_else(|| TrisectionError::MissingMeridian(name.to_string()))
}

/// Transpositions of the branch points in a canonical schedule order:
/// per block, its mini-stabilization pairs then its quad in y-order with the
/// half-twist action threaded through the strand ladder; then perturbation
/// pairs; then any remaining points by their static meridian.
fn bridge_transpositions(
    d: &TorusDiagram,
    spec: &CoveringSpec,
) -> Result<Vec<Permutation>, TrisectionError> {
    let mut covered = vec![false; d.bridge_points.len()];
    let mut ladder: BTreeMap<usize, Permutation> = BTreeMap::new();
    let mut out = Vec::new();

    for blk in &d.blocks {
        let (a, b) = blk.lanes;
        for lane in [a, b] {
            if !ladder.contains_key(&lane) {
                ladder.insert(lane, lane_meridian(spec, &format!("x{}", lane))?);
            }
        }
        for &(lane, ids) in &blk.ministabs {
            let tau = match ladder.get(&lane) {
                Some(t) => t.clone(),
                None => {
                    let t = lane_meridian(spec, &format!("x{}", lane))?;
                    ladder.insert(lane, t.clone());
                    t
                }
            };
            out.push(tau.clone());
            out.push(tau);
            for id in ids {
                covered[id] = true;
            }
        }
        let s = ladder[&a].clone();
        let t = ladder[&b].clone();
        let (u, v) = match blk.exponent {
            1 => act_sigma(&s, &t),
            2 => {
                let (s1, t1) = act_sigma(&s, &t);
                act_sigma(&s1, &t1)
            }
            3 => {
                let (s1, t1) = act_sigma(&s, &t);
                let (s2, t2) = act_sigma(&s1, &t1);
                act_sigma(&s2, &t2)
            }
            -2 => {
                let (s1, t1) = act_sigma_inv(&s, &t);
                act_sigma_inv(&s1, &t1)
            }
            other => {
                return Err(TrisectionError::Diagram(DiagramError::Braid(
                    crate::braid::BraidError::BadExponent(other),
                )))
            }
        };
        // y-order of the quad points and their sheet transpositions
        let [p1, p2, p3, p4] = blk.quad;
        let schedule: [(usize, &Permutation); 4] = if blk.exponent == 1 {
            [(p1, &s), (p4, &t), (p2, &v), (p3, &u)]
        } else {
            [(p1, &s), (p3, &u), (p2, &t), (p4, &v)]
        };
        for (id, tau) in schedule {
            out.push(tau.clone());
            covered[id] = true;
        }
        ladder.insert(a, u);
        ladder.insert(b, v);
    }

    for pair in &d.pairs {
        let tau = lane_meridian(spec, &pair.meridian)?;
        out.push(tau.clone());
        out.push(tau);
        covered[pair.plus] = true;
        covered[pair.minus] = true;
    }

    for (id, bp) in d.bridge_points.iter().enumerate() {
        if !covered[id] {
            out.push(lane_meridian(spec, &bp.meridian)?);
        }
    }
    Ok(out)
}

/// Central-surface cover as an explicit cell complex: the torus as a stack
/// of annular bands, one branch point per band, circle monodromies threaded
/// by the partial products of the branch transpositions.
fn central_surface_cover(n: usize, taus: &[Permutation]) -> CellComplexCover {
    let b = taus.len().max(1);
    let base = torus_complex(b);
    let mut perms = Vec::with_capacity(2 * b);
    let mut c = Permutation::identity(n);
    for i in 0..b {
        perms.push(c.clone());
        if let Some(tau) = taus.get(i) {
            c = tau.then(&c).expect("degree");
        }
    }
    perms.extend(std::iter::repeat(Permutation::identity(n)).take(b));
    CellComplexCover {
        base,
        sheets: n,
        edge_perms: perms,
    }
}

fn sector_pieces(
    d: &TorusDiagram,
    spec: &CoveringSpec,
    sector: u8,
) -> Result<Vec<SectorPiece>, TrisectionError> {
    let mut pieces = Vec::new();
    for sl in d.sector_links.iter().filter(|sl| sl.sector == sector) {
        let transpositions = sl
            .meridians
            .iter()
            .map(|m| lane_meridian(spec, m))
            .collect::<Result<Vec<_>, _>>()?;
        pieces.push(SectorPiece {
            kind: sl.kind,
            transpositions,
        });
    }
    Ok(pieces)
}

/// Pull the standard genus-1 decomposition back along the covering: the
/// central-surface genus comes from Riemann-Hurwitz over the torus with one
/// simple branch point per bridge point, and each sector parameter from the
/// Euler characteristic of its capped-piece cover.
pub fn pullback_cp2(
    d: &TorusDiagram,
    spec: &CoveringSpec,
) -> Result<PullbackReport, TrisectionError> {
    d.validate()?;
    spec.validate()?;
    let n = spec.degree;
    if n == 1 && !d.bridge_points.is_empty() {
        return Err(TrisectionError::BranchedDegreeOne);
    }
    if n > 1 && !monodromy::is_transitive(spec) {
        return Err(TrisectionError::NotTransitive);
    }
    let b = d.bridge_points.len();
    if b % 2 != 0 {
        return Err(TrisectionError::OddBridgeCount(b));
    }

    // Sector parameters.
    let mut sector_chi = [0i64; 3];
    let mut ks = [0u64; 3];
    let mut oracle_sector_chi = [0i64; 3];
    for sector in 1u8..=3 {
        let pieces = sector_pieces(d, spec, sector)?;
        let idx = (sector - 1) as usize;
        sector_chi[idx] = monodromy::sector_cover_euler(n, &pieces)?;
        oracle_sector_chi[idx] = monodromy::sector_oracle_euler(n, &pieces)?;
        ks[idx] = monodromy::sector_handlebody_k(n, &pieces)? as u64;
    }

    // Central surface: formula and explicit complex.
    let central_chi = if n > 1 { -(b as i64) } else { 0 };
    let taus = if n > 1 {
        bridge_transpositions(d, spec)?
    } else {
        Vec::new()
    };
    let cover = central_surface_cover(n, &taus);
    let built = build_cell_cover(&cover)?;
    if built.components != 1 {
        return Err(TrisectionError::CentralSurfaceDisconnected(built.components));
    }
    let oracle_central_chi = built.euler_characteristic();
    // Realized branch data must be one transposition per bridge point.
    let realized = built.branch_points(n);
    let realized_simple = if n > 1 {
        realized.len() == b && realized.iter().all(|bd| bd.cycles.len() == n - 1)
    } else {
        realized.is_empty()
    };

    let g = ((2 - central_chi) / 2) as u64;
    let params = TrisectionParams::new(g, ks)?;
    let total_chi = params.euler_characteristic();

    // Alternating strata sum: three sector covers, minus three tangle-branched
    // handlebody covers (chi = -arcs each for n > 1), plus the central surface.
    let chi_handlebodies: i64 = (0..3)
        .map(|li| {
            let arcs = d.arcs.iter().filter(|a| a.label.index() == li).count() as i64;
            if n > 1 {
                -arcs
            } else {
                0
            }
        })
        .sum();
    let strata_total = sector_chi.iter().sum::<i64>() - chi_handlebodies + central_chi;

    Ok(PullbackReport {
        params,
        degree: n,
        central_chi,
        sector_chi,
        total_chi,
        oracle_central_chi,
        oracle_central_components: built.components,
        oracle_sector_chi,
        strata_consistent: strata_total == total_chi,
        oracle_consistent: oracle_central_chi == central_chi
            && realized_simple
            && oracle_sector_chi == sector_chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{Factor, Factorization};
    use crate::torus_diagram::build::build_from_factorization;

    fn params(g: u64, k: [u64; 3]) -> TrisectionParams {
        TrisectionParams::new(g, k).unwrap()
    }

    #[test]
    fn euler_characteristic_values() {
        assert_eq!(params(0, [0, 0, 0]).euler_characteristic(), 2); // S^4
        assert_eq!(params(1, [1, 0, 0]).euler_characteristic(), 2); // unbalanced S^4
        assert_eq!(params(1, [0, 0, 0]).euler_characteristic(), 3); // CP^2
    }

    #[test]
    fn invariant_enforced() {
        assert_eq!(
            TrisectionParams::new(0, [1, 0, 0]),
            Err(TrisectionError::GenusTooSmall(0, 1))
        );
    }

    #[test]
    fn connected_sum_adds() {
        let s4 = params(1, [1, 0, 0]);
        let cp2 = params(1, [0, 0, 0]);
        assert_eq!(cp2.connected_sum(&s4), params(2, [1, 0, 0]));
        assert_eq!(cp2.connected_sum(&params(0, [0, 0, 0])), cp2);
        assert_eq!(
            cp2.connected_sum(&cp2),
            TrisectionParams::new(2, [0, 0, 0]).unwrap()
        );
        // chi(sum) = chi1 + chi2 - 2
        assert_eq!(
            cp2.connected_sum(&s4).euler_characteristic(),
            cp2.euler_characteristic() + s4.euler_characteristic() - 2
        );
    }

    #[test]
    fn stabilize_behaviour() {
        let cp2 = params(1, [0, 0, 0]);
        assert_eq!(cp2.stabilize(2).unwrap(), params(2, [0, 1, 0]));
        assert_eq!(
            cp2.stabilize(2).unwrap().euler_characteristic(),
            cp2.euler_characteristic()
        );
        // three unbalanced stabilizations balance the increase
        let t = cp2
            .stabilize(1)
            .and_then(|t| t.stabilize(2))
            .and_then(|t| t.stabilize(3))
            .unwrap();
        assert_eq!(t, params(4, [1, 1, 1]));
        assert!(cp2.stabilize(0).is_err());
    }

    #[test]
    fn relative_params_validate() {
        assert!(RelativeTrisectionParams::new(2, [1, 1, 1], 1, 1).is_ok());
        assert_eq!(
            RelativeTrisectionParams::new(1, [0, 0, 0], 2, 1),
            Err(TrisectionError::PageGenusTooLarge(2, 1))
        );
        assert_eq!(
            RelativeTrisectionParams::new(1, [0, 0, 0], 0, 0),
            Err(TrisectionError::NoBoundary)
        );
    }

    #[test]
    fn identity_pullback_of_empty_diagram_is_cp2() {
        let d = TorusDiagram::empty();
        let spec = CoveringSpec::identity();
        let report = pullback_cp2(&d, &spec).unwrap();
        assert_eq!(report.params, params(1, [0, 0, 0]));
        assert!(report.oracle_consistent);
        assert!(report.strata_consistent);
        assert_eq!(report.total_chi, 3);
    }

    #[test]
    fn empty_diagram_degree_two_is_disconnected() {
        let d = TorusDiagram::empty();
        let spec: CoveringSpec =
            serde_json::from_str(r#"{"degree":2,"meridians":{"x1":[[1,2]]}}"#).unwrap();
        // Sector covers split into two sheets with no branch pieces.
        assert!(matches!(
            pullback_cp2(&d, &spec),
            Err(TrisectionError::Monodromy(
                MonodromyError::DisconnectedSector(2)
            ))
        ));
    }

    fn two_twelve_spec() -> CoveringSpec {
        serde_json::from_str(r#"{"degree":2,"meridians":{"x1":[[1,2]],"x2":[[1,2]]}}"#).unwrap()
    }

    #[test]
    fn conic_double_cover_is_quadric() {
        // Two tangency factors of Delta^2_2: the double branched cover of the
        // projective plane over a smooth conic, chi = 4.
        let f = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![
                Factor {
                    conjugator: vec![],
                    exponent: 1,
                },
                Factor {
                    conjugator: vec![],
                    exponent: 1,
                },
            ],
        };
        let d = build_from_factorization(&f).unwrap();
        let report = pullback_cp2(&d, &two_twelve_spec()).unwrap();
        assert_eq!(report.params, params(5, [1, 1, 1]));
        assert_eq!(report.total_chi, 4);
        assert!(report.oracle_consistent, "{report:?}");
        assert!(report.strata_consistent, "{report:?}");
    }

    #[test]
    fn node_double_cover() {
        let f = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![Factor {
                conjugator: vec![],
                exponent: 2,
            }],
        };
        let d = build_from_factorization(&f).unwrap();
        let report = pullback_cp2(&d, &two_twelve_spec()).unwrap();
        // One node with equal transpositions: deficiency 1 in sector 3.
        assert_eq!(report.params, params(3, [1, 1, 0]));
        assert!(report.oracle_consistent, "{report:?}");
        assert!(report.strata_consistent, "{report:?}");
    }

    #[test]
    fn cusp_triple_cover_consistency() {
        let f = Factorization {
            strands: 3,
            degree: 3,
            factors: vec![
                Factor {
                    conjugator: vec![],
                    exponent: 3,
                },
                Factor {
                    conjugator: vec![-1, 2],
                    exponent: 1,
                },
                Factor {
                    conjugator: vec![2],
                    exponent: 1,
                },
                Factor {
                    conjugator: vec![1, 2],
                    exponent: 1,
                },
            ],
        };
        let d = build_from_factorization(&f).unwrap();
        let spec: CoveringSpec = serde_json::from_str(
            r#"{"degree":3,"meridians":{"x1":[[1,2]],"x2":[[2,3]],"x3":[[2,3]]}}"#,
        )
        .unwrap();
        let report = pullback_cp2(&d, &spec).unwrap();
        assert!(report.oracle_consistent, "{report:?}");
        assert!(report.strata_consistent, "{report:?}");
        assert!(report.params.g >= *report.params.k.iter().max().unwrap());
    }

    #[test]
    fn finger_perturbation_matches_stabilization() {
        let f = Factorization {
            strands: 2,
            degree: 2,
            factors: vec![
                Factor {
                    conjugator: vec![],
                    exponent: 1,
                },
                Factor {
                    conjugator: vec![],
                    exponent: 1,
                },
            ],
        };
        let d = build_from_factorization(&f).unwrap();
        let spec = two_twelve_spec();
        let before = pullback_cp2(&d, &spec).unwrap();
        for bridge in 0..d.bridge_count() {
            for sector in 1u8..=3 {
                let perturbed =
                    crate::torus_diagram::finger_perturbation(&d, bridge, sector).unwrap();
                let after = pullback_cp2(&perturbed, &spec).unwrap();
                let expected = before.params.stabilize(sector % 3 + 1).unwrap();
                assert_eq!(after.params, expected, "bridge {bridge} sector {sector}");
            }
        }
    }
}
