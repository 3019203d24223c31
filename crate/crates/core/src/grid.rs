//! Uniform staggered-grid bookkeeping shared by the rasterizer, the FDTD
//! engine and the monitors.
//!
//! Cells are `dx` cubes; node (0,0,0) sits at `(x0, y0, z0)` and the domain
//! is centered on the origin in all three axes. Every field component is
//! stored on the same `(nx+1) x (ny+1) x (nz+1)` node lattice (the unused
//! outermost entries stay zero), which keeps index arithmetic identical for
//! all components:
//!
//! - `Ex` lives at `(i+1/2, j, k)`, `Ey` at `(i, j+1/2, k)`, `Ez` at `(i, j, k+1/2)`
//! - `Hx` lives at `(i, j+1/2, k+1/2)`, `Hy` at `(i+1/2, j, k+1/2)`, `Hz` at `(i+1/2, j+1/2, k)`

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridDims {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub dx: f64,
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
}

/// The three Cartesian field components / axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn unit(self) -> [f64; 3] {
        match self {
            Axis::X => [1.0, 0.0, 0.0],
            Axis::Y => [0.0, 1.0, 0.0],
            Axis::Z => [0.0, 0.0, 1.0],
        }
    }
}

impl GridDims {
    /// Centered grid covering `extents` (um) with step `dx`.
    pub fn centered(extents: [f64; 3], dx: f64) -> Self {
        let nx = (extents[0] / dx).round().max(1.0) as usize;
        let ny = (extents[1] / dx).round().max(1.0) as usize;
        let nz = (extents[2] / dx).round().max(1.0) as usize;
        GridDims {
            nx,
            ny,
            nz,
            dx,
            x0: -0.5 * nx as f64 * dx,
            y0: -0.5 * ny as f64 * dx,
            z0: -0.5 * nz as f64 * dx,
        }
    }

    #[inline]
    pub fn sx(&self) -> usize {
        self.nx + 1
    }
    #[inline]
    pub fn sy(&self) -> usize {
        self.ny + 1
    }
    #[inline]
    pub fn sz(&self) -> usize {
        self.nz + 1
    }

    /// Total node-lattice length of one component array.
    #[inline]
    pub fn len(&self) -> usize {
        self.sx() * self.sy() * self.sz()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.sy() + j) * self.sx() + i
    }

    /// World position of node (i, j, k).
    #[inline]
    pub fn node_pos(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        [
            self.x0 + i as f64 * self.dx,
            self.y0 + j as f64 * self.dx,
            self.z0 + k as f64 * self.dx,
        ]
    }

    /// World position of the E-component sample point with lattice index
    /// (i, j, k); `axis` selects which half-step offset applies.
    #[inline]
    pub fn e_pos(&self, axis: Axis, i: usize, j: usize, k: usize) -> [f64; 3] {
        let mut p = self.node_pos(i, j, k);
        p[axis.index()] += 0.5 * self.dx;
        p
    }

    /// World position of the H-component sample point (offset on the two
    /// axes transverse to `axis`).
    #[inline]
    pub fn h_pos(&self, axis: Axis, i: usize, j: usize, k: usize) -> [f64; 3] {
        let mut p = self.node_pos(i, j, k);
        for a in [Axis::X, Axis::Y, Axis::Z] {
            if a != axis {
                p[a.index()] += 0.5 * self.dx;
            }
        }
        p
    }

    /// Domain bounds actually covered by the grid (may differ from the
    /// requested extents by up to dx/2 of rounding per side).
    pub fn bounds(&self) -> ([f64; 3], [f64; 3]) {
        (
            [self.x0, self.y0, self.z0],
            [
                self.x0 + self.nx as f64 * self.dx,
                self.y0 + self.ny as f64 * self.dx,
                self.z0 + self.nz as f64 * self.dx,
            ],
        )
    }

    pub fn contains(&self, p: [f64; 3]) -> bool {
        let (lo, hi) = self.bounds();
        (0..3).all(|a| p[a] >= lo[a] && p[a] <= hi[a])
    }

    /// Nearest node plane index along `axis` for world coordinate `w`.
    pub fn nearest_node(&self, axis: Axis, w: f64) -> usize {
        let origin = [self.x0, self.y0, self.z0][axis.index()];
        let n = [self.nx, self.ny, self.nz][axis.index()];
        (((w - origin) / self.dx).round().max(0.0) as usize).min(n)
    }
}
