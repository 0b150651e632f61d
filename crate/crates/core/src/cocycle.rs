//! Discrete symplectic 1-cocycle verification on triangulated surfaces.
//!
//! Forms live on directed edges (antisymmetric under reversal) and are
//! closed when every face sum vanishes. Wedge positivity is evaluated per
//! face through the affine reconstruction of covectors from edge values,
//! which needs rational displacement vectors on the edges; meshes without
//! geometry support only the combinatorial checks. Everything here has an
//! exact rational path; the local pullback model additionally exposes a
//! floating evaluation.

use crate::rational::Frac;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("edge {0} references vertex out of range")]
    BadEdge(usize),
    #[error("face {0} references edge out of range")]
    BadFaceEdge(usize),
    #[error("face {0} walk is not closed at corner {1}")]
    OpenFace(usize, usize),
    #[error("dart of edge {0} used {1} times (each side exactly once)")]
    DartMultiplicity(usize, usize),
    #[error("form has {0} values for {1} edges")]
    FormLength(usize, usize),
    #[error("face {0} displacements do not close up")]
    InconsistentDisplacements(usize),
    #[error("face {0} has degenerate geometry")]
    DegenerateFace(usize),
    #[error("mesh carries no displacement vectors; positivity needs geometry")]
    NoGeometry,
    #[error("zero vertex {0} out of range")]
    BadZeroVertex(usize),
    #[error("zero vertex {0} has sign {1}, expected +1 or -1")]
    BadZeroSign(usize, i8),
    #[error("grid resolution must be at least 2")]
    ResolutionTooSmall,
}

/// Oriented triangulated closed surface. Faces are triangles of signed
/// 1-based edge references; `displacements` are the geometric edge vectors
/// (present for flat meshes such as the torus, absent for abstract ones).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangulatedSurface {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub displacements: Option<Vec<(Frac, Frac)>>,
}

impl TriangulatedSurface {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    fn dart_tail(&self, e: usize, positive: bool) -> usize {
        let (t, h) = self.edges[e];
        if positive {
            t
        } else {
            h
        }
    }

    /// Signed displacement of one face side.
    fn side_vector(&self, sgn: i64) -> Option<(Frac, Frac)> {
        let disp = self.displacements.as_ref()?;
        let e = sgn.unsigned_abs() as usize - 1;
        let (dx, dy) = &disp[e];
        Some(if sgn > 0 {
            (dx.clone(), dy.clone())
        } else {
            (-dx, -dy)
        })
    }

    pub fn validate(&self) -> Result<(), CocycleError> {
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if t >= self.vertices || h >= self.vertices {
                return Err(CocycleError::BadEdge(i));
            }
        }
        let mut used = vec![0usize; 2 * self.edges.len()];
        for (fi, walk) in self.faces.iter().enumerate() {
            for (k, &sgn) in walk.iter().enumerate() {
                let e = sgn.unsigned_abs() as usize;
                if sgn == 0 || e > self.edges.len() {
                    return Err(CocycleError::BadFaceEdge(fi));
                }
                let nxt = walk[(k + 1) % 3];
                let ne = nxt.unsigned_abs() as usize;
                if nxt == 0 || ne > self.edges.len() {
                    return Err(CocycleError::BadFaceEdge(fi));
                }
                // head of this side = tail of the next
                let head = self.dart_tail(e - 1, sgn < 0);
                let tail = self.dart_tail(ne - 1, nxt > 0);
                if head != tail {
                    return Err(CocycleError::OpenFace(fi, k));
                }
                used[2 * (e - 1) + if sgn > 0 { 0 } else { 1 }] += 1;
            }
        }
        for (d, &count) in used.iter().enumerate() {
            if count != 1 {
                return Err(CocycleError::DartMultiplicity(d / 2 + 1, count));
            }
        }
        if let Some(disp) = &self.displacements {
            if disp.len() != self.edges.len() {
                return Err(CocycleError::FormLength(disp.len(), self.edges.len()));
            }
            for (fi, walk) in self.faces.iter().enumerate() {
                let mut sx = Frac::zero();
                let mut sy = Frac::zero();
                for &sgn in walk {
                    let (dx, dy) = self.side_vector(sgn).unwrap();
                    sx += &dx;
                    sy += &dy;
                }
                if !sx.is_zero() || !sy.is_zero() {
                    return Err(CocycleError::InconsistentDisplacements(fi));
                }
                // positively oriented, non-degenerate
                let (e1x, e1y) = self.side_vector(walk[0]).unwrap();
                let (e2x, e2y) = self.side_vector(walk[1]).unwrap();
                let det = &(&e1x * &e2y) - &(&e1y * &e2x);
                if !det.is_positive() {
                    return Err(CocycleError::DegenerateFace(fi));
                }
            }
        }
        Ok(())
    }
}

/// A real value per directed edge, antisymmetric under reversal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteOneForm {
    pub values: Vec<Frac>,
}

impl DiscreteOneForm {
    pub fn value(&self, sgn: i64) -> Frac {
        let e = sgn.unsigned_abs() as usize - 1;
        if sgn > 0 {
            self.values[e].clone()
        } else {
            -&self.values[e]
        }
    }

    /// Closedness: the values around every face sum to zero exactly.
    pub fn is_closed(&self, surface: &TriangulatedSurface) -> bool {
        surface.faces.iter().all(|walk| {
            let mut s = Frac::zero();
            for &sgn in walk {
                s += &self.value(sgn);
            }
            s.is_zero()
        })
    }
}

/// Three 1-forms on a common surface plus the matched zero data: 2g-2
/// vertices with local signs summing to zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleTriple {
    pub surface: TriangulatedSurface,
    pub forms: [DiscreteOneForm; 3],
    pub zeros: Vec<ZeroVertex>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroVertex {
    pub v: usize,
    pub f: i8,
}

impl CocycleTriple {
    pub fn validate(&self) -> Result<(), CocycleError> {
        self.surface.validate()?;
        for form in &self.forms {
            if form.values.len() != self.surface.edges.len() {
                return Err(CocycleError::FormLength(
                    form.values.len(),
                    self.surface.edges.len(),
                ));
            }
        }
        for z in &self.zeros {
            if z.v >= self.surface.vertices {
                return Err(CocycleError::BadZeroVertex(z.v));
            }
            if z.f != 1 && z.f != -1 {
                return Err(CocycleError::BadZeroSign(z.v, z.f));
            }
        }
        Ok(())
    }
}

/// The cocycle condition: beta_1 + beta_2 + beta_3 = 0 edgewise.
pub fn check_cocycle_sum(t: &CocycleTriple) -> Result<bool, CocycleError> {
    t.validate()?;
    Ok((0..t.surface.edges.len()).all(|e| {
        let s = &(&t.forms[0].values[e] + &t.forms[1].values[e]) + &t.forms[2].values[e];
        s.is_zero()
    }))
}

/// Per-face wedge data for one cyclic pair of forms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WedgeViolation {
    pub pair: (u8, u8),
    pub face: usize,
    pub density: Frac,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PositivityReport {
    pub violations: Vec<WedgeViolation>,
    /// Wedge densities per face for the cyclic pairs (1,2), (2,3), (3,1).
    pub densities: Vec<[Frac; 3]>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reconstruct the constant covector of each form on each face and test the
/// pairwise wedge determinants beta_l ^ beta_{l+1} >= 0 against the face
/// orientation. Needs displacement geometry.
pub fn check_pairwise_positivity(t: &CocycleTriple) -> Result<PositivityReport, CocycleError> {
    t.validate()?;
    if t.surface.displacements.is_none() {
        return Err(CocycleError::NoGeometry);
    }
    let mut report = PositivityReport::default();
    for (fi, walk) in t.surface.faces.iter().enumerate() {
        let (e1x, e1y) = t.surface.side_vector(walk[0]).unwrap();
        let (e2x, e2y) = t.surface.side_vector(walk[1]).unwrap();
        let det = &(&e1x * &e2y) - &(&e1y * &e2x);
        if det.is_zero() {
            return Err(CocycleError::DegenerateFace(fi));
        }
        let covector = |form: &DiscreteOneForm| {
            let a1 = form.value(walk[0]);
            let a2 = form.value(walk[1]);
            let ux = &(&(&a1 * &e2y) - &(&a2 * &e1y)) / &det;
            let uy = &(&(&e1x * &a2) - &(&e2x * &a1)) / &det;
            (ux, uy)
        };
        let us: Vec<(Frac, Frac)> = t.forms.iter().map(covector).collect();
        let mut ds: [Frac; 3] = [Frac::zero(), Frac::zero(), Frac::zero()];
        for l in 0..3 {
            let (ax, ay) = &us[l];
            let (bx, by) = &us[(l + 1) % 3];
            let density = &(ax * by) - &(ay * bx);
            if density.is_negative() {
                report.violations.push(WedgeViolation {
                    pair: ((l + 1) as u8, ((l + 1) % 3 + 1) as u8),
                    face: fi,
                    density: density.clone(),
                });
            }
            ds[l] = density;
        }
        report.densities.push(ds);
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ZeroStructureReport {
    pub zero_count: usize,
    pub expected_count: i64,
    pub count_ok: bool,
    pub sign_sum: i64,
    pub sign_sum_ok: bool,
    /// Zero vertices with a non-vanishing incident edge.
    pub not_vanishing: Vec<usize>,
    /// Edges where all three forms vanish away from the listed zeros.
    pub stray_zero_edges: Vec<usize>,
}

impl ZeroStructureReport {
    pub fn passed(&self) -> bool {
        self.count_ok
            && self.sign_sum_ok
            && self.not_vanishing.is_empty()
            && self.stray_zero_edges.is_empty()
    }
}

/// All three forms must vanish on every edge incident to each listed zero
/// vertex and nowhere else; the zero count is 2g - 2 and the local signs
/// cancel.
pub fn check_zero_structure(t: &CocycleTriple) -> Result<ZeroStructureReport, CocycleError> {
    t.validate()?;
    let mut report = ZeroStructureReport {
        zero_count: t.zeros.len(),
        expected_count: 2 * t.surface.genus() - 2,
        ..Default::default()
    };
    report.count_ok = report.zero_count as i64 == report.expected_count.max(0);
    report.sign_sum = t.zeros.iter().map(|z| z.f as i64).sum();
    report.sign_sum_ok = report.sign_sum == 0;

    let is_zero_vertex = |v: usize| t.zeros.iter().any(|z| z.v == v);
    for (e, &(u, v)) in t.surface.edges.iter().enumerate() {
        let all_zero = t.forms.iter().all(|f| f.values[e].is_zero());
        if all_zero && !is_zero_vertex(u) && !is_zero_vertex(v) {
            report.stray_zero_edges.push(e);
        }
    }
    for z in &t.zeros {
        let bad = t.surface.edges.iter().enumerate().any(|(e, &(u, v))| {
            (u == z.v || v == z.v) && t.forms.iter().any(|f| !f.values[e].is_zero())
        });
        if bad {
            report.not_vanishing.push(z.v);
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// The local branched-cover pullback model
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PullbackModelReport {
    pub samples: usize,
    /// Exact equality of the wedge density with 16 e^2 (x^2 + y^2).
    pub density_matches_closed_form: bool,
    pub density_nonnegative: bool,
    /// beta_1 vanishes at the origin only.
    pub unique_zero_at_origin: bool,
    /// The linearization of beta_1's covector field at the origin has
    /// negative determinant (a saddle).
    pub beta1_zero_hyperbolic: bool,
    /// Largest floating-point deviation from the closed form.
    pub max_float_error: f64,
}

impl PullbackModelReport {
    pub fn passed(&self) -> bool {
        self.density_matches_closed_form
            && self.density_nonnegative
            && self.unique_zero_at_origin
            && self.beta1_zero_hyperbolic
            && self.max_float_error <= 1e-12
    }
}

/// Sample the pulled-back pair near a branch point of sign `eps`:
/// beta_1 = -4e d(xy) and beta_2 = -2e d(y^2 - x^2), whose wedge density
/// is exactly 16 e^2 (x^2 + y^2), on a (2r+1)^2 rational grid over [-1,1]^2.
pub fn pullback_local_model(
    eps: i8,
    resolution: usize,
) -> Result<PullbackModelReport, CocycleError> {
    if resolution < 2 {
        return Err(CocycleError::ResolutionTooSmall);
    }
    let e = Frac::int(eps as i64);
    let r = resolution as i64;
    let mut report = PullbackModelReport {
        samples: 0,
        density_matches_closed_form: true,
        density_nonnegative: true,
        unique_zero_at_origin: true,
        beta1_zero_hyperbolic: true,
        max_float_error: 0.0,
    };
    let four_e = &Frac::int(4) * &e;
    let sixteen_e2 = &Frac::int(16) * &(&e * &e);
    for i in -r..=r {
        for j in -r..=r {
            let x = Frac::new(i, r);
            let y = Frac::new(j, r);
            // beta_1 = -4e (y dx + x dy); beta_2 = 4e x dx - 4e y dy
            let u1 = (-&(&four_e * &y), -&(&four_e * &x));
            let u2 = (&four_e * &x, -&(&four_e * &y));
            let density = &(&u1.0 * &u2.1) - &(&u1.1 * &u2.0);
            let closed = &sixteen_e2 * &(&(&x * &x) + &(&y * &y));
            if density != closed {
                report.density_matches_closed_form = false;
            }
            if density.is_negative() {
                report.density_nonnegative = false;
            }
            let at_origin = x.is_zero() && y.is_zero();
            let beta1_zero = u1.0.is_zero() && u1.1.is_zero();
            if beta1_zero != at_origin {
                report.unique_zero_at_origin = false;
            }
            // float path
            let df = u1.0.to_f64() * u2.1.to_f64() - u1.1.to_f64() * u2.0.to_f64();
            let cf = 16.0
                * (eps as f64)
                * (eps as f64)
                * (x.to_f64() * x.to_f64() + y.to_f64() * y.to_f64());
            let err = (df - cf).abs();
            if err > report.max_float_error {
                report.max_float_error = err;
            }
            report.samples += 1;
        }
    }
    // d(beta_1 covector) at 0 is [[0, -4e], [-4e, 0]]: determinant -16 e^2.
    report.beta1_zero_hyperbolic = (-&sixteen_e2).is_negative();
    Ok(report)
}

// ---------------------------------------------------------------------------
// Standard meshes and the projective-plane fixture
// ---------------------------------------------------------------------------

/// Flat k x k triangulated torus with exact displacement geometry.
pub fn torus_mesh(k: usize) -> TriangulatedSurface {
    assert!(k >= 1);
    let v = |i: usize, j: usize| (i % k) * k + (j % k);
    let mut edges = Vec::new();
    let mut disp = Vec::new();
    // edge layout per vertex: right, up, diagonal
    let right = |i: usize, j: usize| 3 * (i * k + j);
    let up = |i: usize, j: usize| 3 * (i * k + j) + 1;
    let diag = |i: usize, j: usize| 3 * (i * k + j) + 2;
    for i in 0..k {
        for j in 0..k {
            edges.push((v(i, j), v(i + 1, j)));
            disp.push((Frac::new(1, k as i64), Frac::zero()));
            edges.push((v(i, j), v(i, j + 1)));
            disp.push((Frac::zero(), Frac::new(1, k as i64)));
            edges.push((v(i, j), v(i + 1, j + 1)));
            disp.push((Frac::new(1, k as i64), Frac::new(1, k as i64)));
        }
    }
    let mut faces = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let lower = [
                (right(i, j) + 1) as i64,
                (up((i + 1) % k, j) + 1) as i64,
                -((diag(i, j) + 1) as i64),
            ];
            let upper = [
                (diag(i, j) + 1) as i64,
                -((right(i, (j + 1) % k) + 1) as i64),
                -((up(i, j) + 1) as i64),
            ];
            faces.push(lower);
            faces.push(upper);
        }
    }
    TriangulatedSurface {
        vertices: k * k,
        edges,
        faces,
        displacements: Some(disp),
    }
}

/// The standard cocycle triple on the central torus of the genus-1
/// decomposition of the projective plane: (2 d theta_1, 2 d theta_2,
/// -2 d theta_1 - 2 d theta_2), with empty zero set.
pub fn standard_cp2_triple(k: usize) -> CocycleTriple {
    let surface = torus_mesh(k);
    let disp = surface.displacements.clone().unwrap();
    let two = Frac::int(2);
    let b1 = DiscreteOneForm {
        values: disp.iter().map(|(dx, _)| &two * dx).collect(),
    };
    let b2 = DiscreteOneForm {
        values: disp.iter().map(|(_, dy)| &two * dy).collect(),
    };
    let b3 = DiscreteOneForm {
        values: disp
            .iter()
            .map(|(dx, dy)| -&(&(&two * dx) + &(&two * dy)))
            .collect(),
    };
    CocycleTriple {
        surface,
        forms: [b1, b2, b3],
        zeros: Vec::new(),
    }
}

/// Abstract genus-2 surface (coned octagon), no displacement geometry.
pub fn genus2_mesh() -> TriangulatedSurface {
    // edges 0..3: octagon classes a, b, c, d (loops at the rim vertex 1);
    // edges 4..11: spokes from the center 0 to the rim.
    let word: [i64; 8] = [1, 2, -1, -2, 3, 4, -3, -4];
    let mut edges = vec![(1, 1); 4];
    for _ in 0..8 {
        edges.push((0, 1));
    }
    let spoke = |i: usize| (4 + (i % 8) + 1) as i64;
    let mut faces = Vec::new();
    for (i, &side) in word.iter().enumerate() {
        faces.push([spoke(i), side, -spoke(i + 1)]);
    }
    TriangulatedSurface {
        vertices: 2,
        edges,
        faces,
        displacements: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meshes_validate() {
        for k in 1..=4 {
            let m = torus_mesh(k);
            m.validate().unwrap();
            assert_eq!(m.euler_characteristic(), 0);
            assert_eq!(m.genus(), 1);
        }
        let g2 = genus2_mesh();
        g2.validate().unwrap();
        assert_eq!(g2.genus(), 2);
    }

    #[test]
    fn standard_triple_passes_all_checks() {
        let t = standard_cp2_triple(4);
        for form in &t.forms {
            assert!(form.is_closed(&t.surface));
        }
        assert!(check_cocycle_sum(&t).unwrap());
        let pos = check_pairwise_positivity(&t).unwrap();
        assert!(pos.passed());
        // every wedge equals 4 d theta_1 ^ d theta_2
        let four = Frac::int(4);
        for ds in &pos.densities {
            for d in ds {
                assert_eq!(d, &four);
            }
        }
        let zs = check_zero_structure(&t).unwrap();
        assert!(zs.passed());
        assert_eq!(zs.expected_count, 0);
    }

    #[test]
    fn cocycle_sum_counterexamples() {
        let mut t = standard_cp2_triple(2);
        // (beta, -beta, 0) passes
        t.forms[1] = DiscreteOneForm {
            values: t.forms[0].values.iter().map(|v| -v).collect(),
        };
        t.forms[2] = DiscreteOneForm {
            values: vec![Frac::zero(); t.surface.edges.len()],
        };
        assert!(check_cocycle_sum(&t).unwrap());
        // (beta, beta, beta) with beta != 0 fails
        t.forms[1] = t.forms[0].clone();
        t.forms[2] = t.forms[0].clone();
        assert!(!check_cocycle_sum(&t).unwrap());
    }

    #[test]
    fn positivity_detects_sign_flip() {
        // (dy, dx, -dx-dy) fails on the pair (1,2)
        let surface = torus_mesh(3);
        let disp = surface.displacements.clone().unwrap();
        let t = CocycleTriple {
            forms: [
                DiscreteOneForm {
                    values: disp.iter().map(|(_, dy)| dy.clone()).collect(),
                },
                DiscreteOneForm {
                    values: disp.iter().map(|(dx, _)| dx.clone()).collect(),
                },
                DiscreteOneForm {
                    values: disp.iter().map(|(dx, dy)| -&(dx + dy)).collect(),
                },
            ],
            surface,
            zeros: Vec::new(),
        };
        let report = check_pairwise_positivity(&t).unwrap();
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.pair == (1, 2)));

        // (dx, dy, -dx-dy) passes
        let surface = torus_mesh(3);
        let disp = surface.displacements.clone().unwrap();
        let t2 = CocycleTriple {
            forms: [
                DiscreteOneForm {
                    values: disp.iter().map(|(dx, _)| dx.clone()).collect(),
                },
                DiscreteOneForm {
                    values: disp.iter().map(|(_, dy)| dy.clone()).collect(),
                },
                DiscreteOneForm {
                    values: disp.iter().map(|(dx, dy)| -&(dx + dy)).collect(),
                },
            ],
            surface,
            zeros: Vec::new(),
        };
        assert!(check_pairwise_positivity(&t2).unwrap().passed());
    }

    #[test]
    fn positivity_invariant_under_rescaling() {
        let t = standard_cp2_triple(2);
        let scaled = CocycleTriple {
            surface: t.surface.clone(),
            forms: [0, 1, 2].map(|i| DiscreteOneForm {
                values: t.forms[i]
                    .values
                    .iter()
                    .map(|v| &Frac::new(7, 3) * v)
                    .collect(),
            }),
            zeros: Vec::new(),
        };
        assert!(check_pairwise_positivity(&scaled).unwrap().passed());
    }

    #[test]
    fn third_form_determined_by_cocycle_condition() {
        let surface = torus_mesh(2);
        let disp = surface.displacements.clone().unwrap();
        let b1 = DiscreteOneForm {
            values: disp.iter().map(|(dx, dy)| &(dx + dy) + dx).collect(),
        };
        let b2 = DiscreteOneForm {
            values: disp.iter().map(|(dx, dy)| dy - dx).collect(),
        };
        let b3 = DiscreteOneForm {
            values: (0..surface.edges.len())
                .map(|e| -&(&b1.values[e] + &b2.values[e]))
                .collect(),
        };
        let t = CocycleTriple {
            surface,
            forms: [b1, b2, b3],
            zeros: Vec::new(),
        };
        assert!(check_cocycle_sum(&t).unwrap());
    }

    #[test]
    fn zero_structure_genus2() {
        let surface = genus2_mesh();
        let zero_form = || DiscreteOneForm {
            values: vec![Frac::zero(); surface.edges.len()],
        };
        let mut t = CocycleTriple {
            forms: [zero_form(), zero_form(), zero_form()],
            surface,
            zeros: vec![ZeroVertex { v: 0, f: 1 }, ZeroVertex { v: 1, f: -1 }],
        };
        let r = check_zero_structure(&t).unwrap();
        assert!(r.passed());
        assert_eq!(r.expected_count, 2);

        t.zeros.pop();
        let r = check_zero_structure(&t).unwrap();
        assert!(!r.count_ok);
        assert!(!r.passed());
    }

    #[test]
    fn zero_structure_detects_nonvanishing() {
        let mut t = standard_cp2_triple(2);
        t.zeros = vec![ZeroVertex { v: 0, f: 1 }, ZeroVertex { v: 1, f: -1 }];
        let r = check_zero_structure(&t).unwrap();
        // torus: expected count 0, and the forms do not vanish there
        assert!(!r.count_ok);
        assert!(!r.not_vanishing.is_empty());
    }

    #[test]
    fn pullback_model_exact() {
        for eps in [1i8, -1] {
            let r = pullback_local_model(eps, 16).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        // epsilon = +1 at (1, 0): density 16
        let e = Frac::int(1);
        let x = Frac::one();
        let four_e = &Frac::int(4) * &e;
        let u1 = (Frac::zero(), -&(&four_e * &x));
        let u2 = (&four_e * &x, Frac::zero());
        let density = &(&u1.0 * &u2.1) - &(&u1.1 * &u2.0);
        assert_eq!(density, Frac::int(16));
        assert!(pullback_local_model(1, 1).is_err());
    }
}
