//! Declarative geometry/material model and its rasterization onto the
//! staggered simulation grid.
//!
//! All geometry is axis-aligned circular cylinders: a finite cylinder with a
//! flat facet models a nanotip, a cylinder running out of the domain models a
//! nanowire. The world frame is centered on the origin; the primary structure
//! extends along +z; "radial" means x, "azimuthal" means y, "axial" means z.

use crate::error::{Error, Result};
use crate::grid::{Axis, GridDims};
use serde::{Deserialize, Serialize};

/// Clearance between the dipole and the nearest facet, um (10 nm).
pub const DIPOLE_CLEARANCE: f64 = 0.010;

/// Design refractive indices at the 620 nm operating wavelength.
pub const SILICA_INDEX: f64 = 1.457;
pub const DIAMOND_INDEX: f64 = 2.410;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub name: String,
    pub refractive_index: f64,
}

impl Material {
    pub fn vacuum() -> Self {
        Material {
            name: "vacuum".into(),
            refractive_index: 1.0,
        }
    }

    pub fn silica() -> Self {
        Material {
            name: "silica".into(),
            refractive_index: SILICA_INDEX,
        }
    }

    pub fn diamond() -> Self {
        Material {
            name: "diamond".into(),
            refractive_index: DIAMOND_INDEX,
        }
    }

    /// Relative permittivity (lossless, nonmagnetic).
    pub fn permittivity(&self) -> f64 {
        self.refractive_index * self.refractive_index
    }
}

/// Signed axis along which a cylinder body extends, pointing away from its
/// facet end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignedAxis {
    #[serde(rename = "+x")]
    Xp,
    #[serde(rename = "-x")]
    Xn,
    #[serde(rename = "+y")]
    Yp,
    #[serde(rename = "-y")]
    Yn,
    #[serde(rename = "+z")]
    Zp,
    #[serde(rename = "-z")]
    Zn,
}

impl SignedAxis {
    pub fn axis(self) -> Axis {
        match self {
            SignedAxis::Xp | SignedAxis::Xn => Axis::X,
            SignedAxis::Yp | SignedAxis::Yn => Axis::Y,
            SignedAxis::Zp | SignedAxis::Zn => Axis::Z,
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            SignedAxis::Xp | SignedAxis::Yp | SignedAxis::Zp => 1.0,
            _ => -1.0,
        }
    }

    pub fn unit(self) -> [f64; 3] {
        let mut u = [0.0; 3];
        u[self.axis().index()] = self.sign();
        u
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderPrimitive {
    pub name: String,
    /// Body direction; the facet is the flat end the axis points away from.
    pub axis: SignedAxis,
    /// Geometric center of the axis segment, um.
    pub center: [f64; 3],
    pub radius: f64,
    pub length: f64,
    pub material: Material,
}

impl CylinderPrimitive {
    /// Center of the facet disk (the axial end nearest the dipole).
    pub fn facet_center(&self) -> [f64; 3] {
        let u = self.axis.unit();
        let mut p = self.center;
        for a in 0..3 {
            p[a] -= 0.5 * self.length * u[a];
        }
        p
    }

    /// Axial coordinate of `p` relative to the center, along the body axis.
    fn axial(&self, p: [f64; 3]) -> f64 {
        let u = self.axis.unit();
        (0..3).map(|a| (p[a] - self.center[a]) * u[a]).sum()
    }

    /// Distance from `p` to the cylinder axis line.
    fn radial(&self, p: [f64; 3]) -> f64 {
        let ai = self.axis.axis().index();
        let mut s = 0.0;
        for a in 0..3 {
            if a != ai {
                let d = p[a] - self.center[a];
                s += d * d;
            }
        }
        s.sqrt()
    }

    pub fn contains(&self, p: [f64; 3]) -> bool {
        self.axial(p).abs() <= 0.5 * self.length && self.radial(p) <= self.radius
    }

    /// Signed distance to the cylinder surface; negative inside.
    pub fn signed_distance(&self, p: [f64; 3]) -> f64 {
        let dr = self.radial(p) - self.radius;
        let dt = self.axial(p).abs() - 0.5 * self.length;
        if dr > 0.0 && dt > 0.0 {
            (dr * dr + dt * dt).sqrt()
        } else {
            dr.max(dt)
        }
    }
}

/// Pairing metadata: which primitives form the facing pair and their
/// surface-to-surface separation along the primary axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairInfo {
    pub primary: usize,
    pub secondary: Option<usize>,
    pub gap_d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    /// Requested extents, um.
    pub extents: [f64; 3],
    /// Uniform grid step, um.
    pub grid_step: f64,
    /// PML thickness per face, cells.
    pub pml_cells: usize,
}

impl Domain {
    pub fn grid(&self) -> GridDims {
        GridDims::centered(self.extents, self.grid_step)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub domain: Domain,
    pub primitives: Vec<CylinderPrimitive>,
    pub pair: Option<PairInfo>,
    /// Dipole location, um; validation enforces the vacuum clearance rule.
    pub dipole_position: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub subject: String,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

/// Rasterized relative permittivity, one value per E-component sample point
/// on the shared node lattice.
pub struct PermittivityGrid {
    pub dims: GridDims,
    /// eps_r at Ex, Ey, Ez sample points (node-lattice layout).
    pub eps: [Vec<f32>; 3],
}

impl Scene {
    /// Relative permittivity of the innermost primitive containing `point`,
    /// or 1 for the vacuum background. Errors outside the domain.
    pub fn permittivity_at(&self, point: [f64; 3]) -> Result<f64> {
        if !self.domain.grid().contains(point) {
            return Err(Error::OutOfDomain(point[0], point[1], point[2]));
        }
        Ok(self.eps_at_unchecked(point))
    }

    /// Permittivity lookup without the domain-bounds check (primitives may
    /// legitimately extend beyond the grid).
    pub fn eps_at_unchecked(&self, point: [f64; 3]) -> f64 {
        for prim in &self.primitives {
            if prim.contains(point) {
                return prim.material.permittivity();
            }
        }
        1.0
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let d = &self.domain;
        let mut push = |subject: &str, message: String| {
            out.push(Violation {
                subject: subject.to_string(),
                message,
            })
        };

        if d.extents.iter().any(|&e| e <= 0.0) {
            push(
                "domain",
                format!("extents must be positive, got {:?}", d.extents),
            );
        }
        if d.grid_step <= 0.0 {
            push(
                "domain",
                format!("grid_step must be positive, got {}", d.grid_step),
            );
        }
        if d.pml_cells < 8 {
            push(
                "domain",
                format!("pml_cells must be >= 8, got {}", d.pml_cells),
            );
        }
        if d.grid_step > 0.0 && d.extents.iter().all(|&e| e > 0.0) {
            let g = d.grid();
            let need = 2 * d.pml_cells + 10;
            for (n, name) in [(g.nx, "nx"), (g.ny, "ny"), (g.nz, "nz")] {
                if n < need {
                    push(
                        "domain",
                        format!("{name} = {n} cells < 2*pml_cells + 10 = {need}"),
                    );
                }
            }
        }

        for prim in &self.primitives {
            if prim.radius <= 0.0 {
                push(
                    &prim.name,
                    format!("radius must be positive, got {}", prim.radius),
                );
            }
            if prim.length <= 0.0 {
                push(
                    &prim.name,
                    format!("length must be positive, got {}", prim.length),
                );
            }
            if prim.material.refractive_index < 1.0 {
                push(
                    &prim.name,
                    format!(
                        "refractive index must be >= 1, got {}",
                        prim.material.refractive_index
                    ),
                );
            }
        }

        // Pairwise disjointness.
        for a in 0..self.primitives.len() {
            for b in a + 1..self.primitives.len() {
                if primitives_overlap(&self.primitives[a], &self.primitives[b]) {
                    let name_a = self.primitives[a].name.clone();
                    push(
                        &name_a,
                        format!("overlaps primitive '{}'", self.primitives[b].name),
                    );
                }
            }
        }

        // Dipole clearance: in vacuum, at least 10 nm from every surface.
        let dip = self.dipole_position;
        for prim in &self.primitives {
            let sd = prim.signed_distance(dip);
            if sd < DIPOLE_CLEARANCE - 1e-9 {
                push(
                    "dipole",
                    format!(
                        "must stay {DIPOLE_CLEARANCE} um clear of '{}' (distance {sd:.4} um)",
                        prim.name
                    ),
                );
            }
        }

        // Dipole inside the non-PML region of the domain.
        let g = d.grid();
        let (lo, hi) = g.bounds();
        let pml = d.pml_cells as f64 * d.grid_step;
        for a in 0..3 {
            if dip[a] < lo[a] + pml || dip[a] > hi[a] - pml {
                push(
                    "dipole",
                    format!("axis {a}: position {} um lies in or beyond the PML", dip[a]),
                );
                break;
            }
        }

        if let Some(pair) = &self.pair {
            if pair.gap_d < 0.0 {
                push(
                    "pair",
                    format!("gap must be non-negative, got {}", pair.gap_d),
                );
            }
            if pair.primary >= self.primitives.len()
                || pair.secondary.is_some_and(|s| s >= self.primitives.len())
            {
                push("pair", "pair indices out of range".to_string());
            } else if pair.secondary.is_some() {
                // The dipole must sit in the gap between the facing surfaces.
                let p = &self.primitives[pair.primary];
                let ai = p.axis.axis().index();
                let sign = p.axis.sign();
                let facet = p.facet_center()[ai];
                let dipole_ax = dip[ai];
                let sec_edge = facet - sign * pair.gap_d;
                let inside = if sign > 0.0 {
                    dipole_ax < facet && dipole_ax > sec_edge
                } else {
                    dipole_ax > facet && dipole_ax < sec_edge
                };
                if !inside {
                    push("pair", "dipole does not lie inside the pair gap".to_string());
                }
            }
        }

        out
    }

    /// Rasterize relative permittivity onto the three E-component lattices.
    /// Cells cut by a material boundary get a 4x4x4 subsampled
    /// volume-fraction average.
    pub fn rasterize(&self) -> Result<PermittivityGrid> {
        let dims = self.domain.grid();
        for prim in &self.primitives {
            if prim.radius < 2.0 * dims.dx {
                return Err(Error::Resolution(format!(
                    "primitive '{}' radius {} um < 2 grid steps ({} um)",
                    prim.name,
                    prim.radius,
                    2.0 * dims.dx
                )));
            }
        }

        let half_diag = 0.5 * dims.dx * 3f64.sqrt();
        let mut eps: [Vec<f32>; 3] = [
            vec![1.0; dims.len()],
            vec![1.0; dims.len()],
            vec![1.0; dims.len()],
        ];

        use rayon::prelude::*;
        for (ci, axis) in [Axis::X, Axis::Y, Axis::Z].into_iter().enumerate() {
            let plane = dims.sx() * dims.sy();
            eps[ci]
                .par_chunks_mut(plane)
                .enumerate()
                .for_each(|(k, slab)| {
                    for j in 0..dims.sy() {
                        for i in 0..dims.sx() {
                            let p = dims.e_pos(axis, i, j, k);
                            slab[j * dims.sx() + i] = self.sample_eps(p, half_diag) as f32;
                        }
                    }
                });
        }

        Ok(PermittivityGrid { dims, eps })
    }

    fn sample_eps(&self, p: [f64; 3], half_diag: f64) -> f64 {
        // Cells far from every surface take the exact value at the center.
        let mut near_boundary = false;
        for prim in &self.primitives {
            if prim.signed_distance(p).abs() <= half_diag {
                near_boundary = true;
                break;
            }
        }
        if !near_boundary {
            return self.eps_at_unchecked(p);
        }
        // 4x4x4 volume-fraction average over the dx cube centered on p.
        let dx = self.domain.grid_step;
        let mut sum = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let q = [
                        p[0] + dx * ((a as f64 + 0.5) / 4.0 - 0.5),
                        p[1] + dx * ((b as f64 + 0.5) / 4.0 - 0.5),
                        p[2] + dx * ((c as f64 + 0.5) / 4.0 - 0.5),
                    ];
                    sum += self.eps_at_unchecked(q);
                }
            }
        }
        sum / 64.0
    }
}

/// Overlap test for axis-aligned cylinders: exact for parallel axes, AABB +
/// dense sampling fallback for skew pairs.
fn primitives_overlap(a: &CylinderPrimitive, b: &CylinderPrimitive) -> bool {
    let (amin, amax) = cylinder_aabb(a);
    let (bmin, bmax) = cylinder_aabb(b);
    let mut lo = [0.0; 3];
    let mut hi = [0.0; 3];
    for i in 0..3 {
        lo[i] = amin[i].max(bmin[i]);
        hi[i] = amax[i].min(bmax[i]);
        if lo[i] > hi[i] {
            return false;
        }
    }

    if a.axis.axis() == b.axis.axis() {
        let ai = a.axis.axis().index();
        let axial_gap = (a.center[ai] - b.center[ai]).abs() - 0.5 * (a.length + b.length);
        let mut radial2 = 0.0;
        for i in 0..3 {
            if i != ai {
                let d = a.center[i] - b.center[i];
                radial2 += d * d;
            }
        }
        return axial_gap < 0.0 && radial2.sqrt() < a.radius + b.radius;
    }

    // Skew pair: sample the AABB intersection on a 24^3 lattice.
    const N: usize = 24;
    for i in 0..N {
        for j in 0..N {
            for k in 0..N {
                let p = [
                    lo[0] + (hi[0] - lo[0]) * (i as f64 + 0.5) / N as f64,
                    lo[1] + (hi[1] - lo[1]) * (j as f64 + 0.5) / N as f64,
                    lo[2] + (hi[2] - lo[2]) * (k as f64 + 0.5) / N as f64,
                ];
                if a.contains(p) && b.contains(p) {
                    return true;
                }
            }
        }
    }
    false
}

fn cylinder_aabb(c: &CylinderPrimitive) -> ([f64; 3], [f64; 3]) {
    let ai = c.axis.axis().index();
    let mut lo = [0.0; 3];
    let mut hi = [0.0; 3];
    for i in 0..3 {
        let half = if i == ai { 0.5 * c.length } else { c.radius };
        lo[i] = c.center[i] - half;
        hi[i] = c.center[i] + half;
    }
    (lo, hi)
}

/// Partner structure kind for pair scenes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartnerKind {
    /// Coaxial cylinder, facet facing the primary facet.
    Tip,
    /// Transverse cylinder (axis along y), centered on the primary axis.
    Wire,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondarySpec {
    pub kind: PartnerKind,
    pub radius: f64,
    pub material: Material,
    /// Tip length; wires always span the lateral domain.
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairSceneParams {
    pub domain: Domain,
    pub primary_radius: f64,
    pub primary_length: f64,
    pub primary_material: Material,
    pub secondary: Option<SecondarySpec>,
    pub gap: f64,
    /// Dipole distance from the low-z domain edge, um.
    pub source_margin: f64,
}

/// Build the canonical experiment geometry: primary cylinder along +z with
/// its facet 10 nm beyond the dipole, optional partner structure on the
/// other side of the dipole at surface-to-surface distance `gap`.
pub fn build_pair_scene(p: &PairSceneParams) -> Scene {
    let grid = p.domain.grid();
    let (lo, hi) = grid.bounds();
    let dipole_z = lo[2] + p.source_margin;
    let facet_z = dipole_z + DIPOLE_CLEARANCE;

    let mut primitives = vec![CylinderPrimitive {
        name: "primary".into(),
        axis: SignedAxis::Zp,
        center: [0.0, 0.0, facet_z + 0.5 * p.primary_length],
        radius: p.primary_radius,
        length: p.primary_length,
        material: p.primary_material.clone(),
    }];

    let mut pair = PairInfo {
        primary: 0,
        secondary: None,
        gap_d: p.gap,
    };

    if let Some(sec) = &p.secondary {
        let prim = match sec.kind {
            PartnerKind::Tip => CylinderPrimitive {
                name: "partner".into(),
                axis: SignedAxis::Zn,
                center: [0.0, 0.0, facet_z - p.gap - 0.5 * sec.length],
                radius: sec.radius,
                length: sec.length,
                material: sec.material.clone(),
            },
            PartnerKind::Wire => {
                // Long enough that both caps sit outside the grid.
                let span = 1.5 * (hi[1] - lo[1]);
                CylinderPrimitive {
                    name: "partner".into(),
                    axis: SignedAxis::Yp,
                    center: [0.0, 0.0, facet_z - p.gap - sec.radius],
                    radius: sec.radius,
                    length: span,
                    material: sec.material.clone(),
                }
            }
        };
        primitives.push(prim);
        pair.secondary = Some(1);
    }

    Scene {
        domain: p.domain,
        primitives,
        pair: Some(pair),
        dipole_position: [0.0, 0.0, dipole_z],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sellmeier form for fused silica (three-term fit, wavelength in um).
    fn silica_sellmeier_n(lambda: f64) -> f64 {
        let l2 = lambda * lambda;
        let n2 = 1.0
            + 0.696_166_3 * l2 / (l2 - 0.068_404_3_f64.powi(2))
            + 0.407_942_6 * l2 / (l2 - 0.116_241_4_f64.powi(2))
            + 0.897_479_4 * l2 / (l2 - 9.896_161_f64.powi(2));
        n2.sqrt()
    }

    /// Two-term dispersion fit for diamond (wavelength in um).
    fn diamond_dispersion_n(lambda: f64) -> f64 {
        let l2 = lambda * lambda;
        let n2 =
            1.0 + 0.3306 * l2 / (l2 - 0.175_f64.powi(2)) + 4.3356 * l2 / (l2 - 0.106_f64.powi(2));
        n2.sqrt()
    }

    fn desk_domain() -> Domain {
        Domain {
            extents: [3.0, 3.0, 8.0],
            grid_step: 0.025,
            pml_cells: 10,
        }
    }

    fn snt_params(radius: f64) -> PairSceneParams {
        PairSceneParams {
            domain: desk_domain(),
            primary_radius: radius,
            primary_length: 25.0,
            primary_material: Material::silica(),
            secondary: None,
            gap: 0.0,
            source_margin: 2.0,
        }
    }

    #[test]
    fn design_indices_match_published_dispersion() {
        // The fixed design values are the published dispersion formulas
        // evaluated at 620 nm, to better than 0.3%.
        let n_silica = silica_sellmeier_n(0.62);
        assert!(
            (n_silica - SILICA_INDEX).abs() < 2e-3,
            "Sellmeier gives {n_silica}"
        );
        let n_diamond = diamond_dispersion_n(0.62);
        assert!(
            (n_diamond - DIAMOND_INDEX).abs() < 6e-3,
            "dispersion fit gives {n_diamond}"
        );
    }

    #[test]
    fn snt_scene_validates_clean() {
        let scene = build_pair_scene(&snt_params(0.43));
        let violations = scene.validate();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn zero_radius_names_the_primitive() {
        let mut scene = build_pair_scene(&snt_params(0.43));
        scene.primitives[0].radius = 0.0;
        let violations = scene.validate();
        assert!(violations.iter().any(|v| v.subject == "primary"));
    }

    #[test]
    fn coaxial_pair_with_small_gap_is_valid() {
        // Gap 0.05: dipole at 10 nm from the primary facet, 40 nm from the
        // partner facet -- inside the gap and clear of both surfaces.
        let mut params = snt_params(0.43);
        params.secondary = Some(SecondarySpec {
            kind: PartnerKind::Tip,
            radius: 0.43,
            material: Material::silica(),
            length: 25.0,
        });
        params.gap = 0.05;
        let scene = build_pair_scene(&params);
        let violations = scene.validate();
        assert!(violations.is_empty(), "{violations:?}");

        // Brute-force containment oracle: the dipole lies in neither
        // cylinder and between the two facet planes.
        let dip = scene.dipole_position;
        for prim in &scene.primitives {
            assert!(!prim.contains(dip));
        }
        let facet_primary = scene.primitives[0].facet_center()[2];
        let facet_partner = scene.primitives[1].facet_center()[2];
        assert!(dip[2] < facet_primary && dip[2] > facet_partner);
    }

    #[test]
    fn dipole_too_close_is_flagged() {
        let mut scene = build_pair_scene(&snt_params(0.43));
        scene.dipole_position[2] += 0.005; // 5 nm from the facet
        let violations = scene.validate();
        assert!(violations.iter().any(|v| v.subject == "dipole"));
    }

    #[test]
    fn overlapping_tips_are_flagged() {
        let mut params = snt_params(0.43);
        params.secondary = Some(SecondarySpec {
            kind: PartnerKind::Tip,
            radius: 0.43,
            material: Material::silica(),
            length: 30.0,
        });
        params.gap = 0.05;
        let mut scene = build_pair_scene(&params);
        // Slide the partner forward until it spears through the primary.
        scene.primitives[1].center[2] += 3.0;
        let violations = scene.validate();
        assert!(violations.iter().any(|v| v.message.contains("overlaps")));
    }

    #[test]
    fn wire_partner_does_not_overlap_tip() {
        let mut params = snt_params(0.43);
        params.secondary = Some(SecondarySpec {
            kind: PartnerKind::Wire,
            radius: 0.43,
            material: Material::diamond(),
            length: 0.0,
        });
        params.gap = 0.23;
        let scene = build_pair_scene(&params);
        let violations = scene.validate();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn permittivity_inside_silica_matches_sellmeier_oracle() {
        let scene = build_pair_scene(&snt_params(0.43));
        // Half a micron into the tip along its axis.
        let facet_z = scene.primitives[0].facet_center()[2];
        let got = scene.permittivity_at([0.0, 0.0, facet_z + 0.5]).unwrap();
        assert_eq!(got, SILICA_INDEX * SILICA_INDEX);
        assert!((got - 2.123).abs() < 1e-3);
        let eps_oracle = silica_sellmeier_n(0.62).powi(2);
        assert!((got - eps_oracle).abs() / eps_oracle < 3e-3);
    }

    #[test]
    fn permittivity_in_background_is_one() {
        let scene = build_pair_scene(&snt_params(0.43));
        assert_eq!(scene.permittivity_at([1.0, 1.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn permittivity_inside_diamond_matches_dispersion_oracle() {
        let mut params = snt_params(0.4);
        params.primary_material = Material::diamond();
        let scene = build_pair_scene(&params);
        let facet_z = scene.primitives[0].facet_center()[2];
        let got = scene.permittivity_at([0.0, 0.0, facet_z + 1.0]).unwrap();
        assert_eq!(got, DIAMOND_INDEX * DIAMOND_INDEX);
        assert!((got - 5.808).abs() < 1e-2);
        let eps_oracle = diamond_dispersion_n(0.62).powi(2);
        assert!((got - eps_oracle).abs() / eps_oracle < 6e-3);
    }

    #[test]
    fn permittivity_outside_domain_errors() {
        let scene = build_pair_scene(&snt_params(0.43));
        assert!(scene.permittivity_at([5.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn permittivity_is_shift_consistent() {
        let scene = build_pair_scene(&snt_params(0.43));
        let mut shifted = scene.clone();
        let dv = [0.13, -0.07, 0.4];
        for prim in &mut shifted.primitives {
            for a in 0..3 {
                prim.center[a] += dv[a];
            }
        }
        for p in [[0.0, 0.0, 0.5], [0.2, 0.1, -1.0], [0.0, 0.41, 1.3]] {
            let q = [p[0] + dv[0], p[1] + dv[1], p[2] + dv[2]];
            assert_eq!(
                scene.eps_at_unchecked(p),
                shifted.eps_at_unchecked(q),
                "shift inconsistency at {p:?}"
            );
        }
    }

    fn tiny_domain() -> Domain {
        Domain {
            extents: [1.0, 1.0, 1.5],
            grid_step: 0.05,
            pml_cells: 8,
        }
    }

    fn tiny_rod_scene() -> Scene {
        Scene {
            domain: tiny_domain(),
            primitives: vec![CylinderPrimitive {
                name: "rod".into(),
                axis: SignedAxis::Zp,
                center: [0.0, 0.0, 0.35],
                radius: 0.2,
                length: 3.0,
                material: Material::silica(),
            }],
            pair: None,
            dipole_position: [0.0, 0.0, -0.4],
        }
    }

    #[test]
    fn rasterize_vacuum_is_uniform_one() {
        let scene = Scene {
            domain: tiny_domain(),
            primitives: vec![],
            pair: None,
            dipole_position: [0.0, 0.0, 0.0],
        };
        let grid = scene.rasterize().unwrap();
        for comp in &grid.eps {
            assert!(comp.iter().all(|&e| e == 1.0));
        }
    }

    #[test]
    fn rasterize_interior_boundary_and_bounds() {
        let scene = tiny_rod_scene();
        let grid = scene.rasterize().unwrap();
        let dims = grid.dims;
        let eps_si = SILICA_INDEX * SILICA_INDEX;

        // Deep interior Ex sample.
        let (i, j, k) = (dims.nx / 2, dims.ny / 2, dims.nz / 2 + 3);
        let interior = f64::from(grid.eps[0][dims.idx(i, j, k)]);
        assert!((interior - eps_si).abs() < 1e-5);
        assert!((interior - 2.123).abs() < 1e-3);

        let mut saw_boundary = false;
        for v in &grid.eps[0] {
            let v = f64::from(*v);
            assert!(
                (1.0..=eps_si + 1e-6).contains(&v),
                "eps out of bounds: {v}"
            );
            if v > 1.0 + 1e-6 && v < eps_si - 1e-6 {
                saw_boundary = true;
            }
        }
        assert!(saw_boundary, "no subpixel-averaged boundary cells found");
    }

    #[test]
    fn rasterize_rejects_unresolvable_radius() {
        let mut scene = tiny_rod_scene();
        scene.primitives[0].radius = 0.02;
        assert!(matches!(scene.rasterize(), Err(Error::Resolution(_))));
    }

    #[test]
    fn quarter_turn_permutes_rasterized_grid() {
        // Axisymmetric scene: rotating by 90 degrees about z maps the Ex
        // lattice onto the Ey lattice with (i,j) -> (j,i).
        let scene = tiny_rod_scene();
        let grid = scene.rasterize().unwrap();
        let dims = grid.dims;
        for k in [10, 15, 20] {
            for j in 0..dims.sy() {
                for i in 0..dims.nx {
                    let ex = grid.eps[0][dims.idx(i, j, k)];
                    let ey = grid.eps[1][dims.idx(j, i, k)];
                    assert!(
                        (ex - ey).abs() < 1e-6,
                        "rotation mismatch at i={i} j={j} k={k}: {ex} vs {ey}"
                    );
                }
            }
        }
    }

    #[test]
    fn refinement_only_moves_boundary_cells() {
        let mut scene = tiny_rod_scene();
        let coarse = scene.rasterize().unwrap();
        scene.domain.grid_step *= 0.5;
        let fine = scene.rasterize().unwrap();

        let cd = coarse.dims;
        let fd = fine.dims;
        let prim = &scene.primitives[0];
        for k in 0..cd.nz {
            for j in 0..cd.sy() {
                for i in 0..cd.nx {
                    let p = cd.e_pos(Axis::X, i, j, k);
                    // Cells within one coarse cell of the surface may change.
                    if prim.signed_distance(p).abs() < 2.0 * cd.dx * 3f64.sqrt() {
                        continue;
                    }
                    let cv = coarse.eps[0][cd.idx(i, j, k)];
                    // The same physical x-offset point on the fine grid sits
                    // a quarter coarse cell away; both points are far from
                    // the boundary so both must carry the pure value.
                    let fv = fine.eps[0][fd.idx(2 * i, 2 * j, 2 * k)];
                    assert!(
                        (cv - fv).abs() < 1e-6,
                        "far-from-boundary cell changed under refinement at ({i},{j},{k})"
                    );
                }
            }
        }
    }
}
