//! Axis-aligned box domains with uniform Cartesian grids.
//!
//! Cells are enumerated in lexicographic order of their index tuples (axis 0
//! most significant). Boundary faces are enumerated axis by axis, low side
//! then high side, transverse indices lexicographic; that order is the
//! `face_id` used by boundary schedules and their CSV form.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("domain corner {axis}: upper must exceed lower")]
    InvalidDomain { axis: usize },
    #[error("direction vector must be nonzero and finite")]
    InvalidDirection,
    #[error("axis {axis}: need at least 2 cells, got {n}")]
    InvalidResolution { axis: usize, n: usize },
}

/// Axis-aligned open box in R^d.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, GridError> {
        assert_eq!(lower.len(), upper.len());
        assert!(!lower.is_empty());
        for (axis, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && hi > lo) {
                return Err(GridError::InvalidDomain { axis });
            }
        }
        Ok(Self { lower, upper })
    }

    /// 1D interval (a, b).
    pub fn interval(a: f64, b: f64) -> Result<Self, GridError> {
        Self::new(vec![a], vec![b])
    }

    /// Unit box (0,1)^d.
    pub fn unit(d: usize) -> Self {
        Self::new(vec![0.0; d], vec![1.0; d]).unwrap()
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Width of the domain along a direction: sup <w,x> - inf <w,x> over the
    /// box, which for boxes is exactly sum_i |w_i| (upper_i - lower_i).
    pub fn width_along(&self, w: &[f64]) -> Result<f64, GridError> {
        assert_eq!(w.len(), self.dimension());
        if w.iter().any(|x| !x.is_finite()) || w.iter().all(|&x| x == 0.0) {
            return Err(GridError::InvalidDirection);
        }
        Ok(w.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(wi, (lo, hi))| wi.abs() * (hi - lo))
            .sum())
    }

    /// Scales the box about the origin; used by certificate scaling tests.
    pub fn scaled(&self, s: f64) -> Self {
        assert!(s > 0.0);
        Self {
            lower: self.lower.iter().map(|x| x * s).collect(),
            upper: self.upper.iter().map(|x| x * s).collect(),
        }
    }
}

/// Which side of an axis a boundary face sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Low,
    High,
}

/// A boundary face with its outer normal (+/- e_axis) and area.
#[derive(Debug, Clone)]
pub struct BoundaryFace {
    pub id: usize,
    pub axis: usize,
    pub side: Side,
    /// flat index of the unique adjacent interior cell
    pub cell: usize,
    pub area: f64,
}

impl BoundaryFace {
    /// Outer unit normal as a signed axis direction.
    pub fn normal_sign(&self) -> f64 {
        match self.side {
            Side::Low => -1.0,
            Side::High => 1.0,
        }
    }

    pub fn normal(&self, d: usize) -> Vec<f64> {
        let mut n = vec![0.0; d];
        n[self.axis] = self.normal_sign();
        n
    }
}

/// Uniform Cartesian grid over a box domain.
#[derive(Debug, Clone)]
pub struct Grid {
    domain: BoxDomain,
    cells_per_axis: Vec<usize>,
    dx: Vec<f64>,
    strides: Vec<usize>,
    n_cells: usize,
    cell_volume: f64,
    faces: Vec<BoundaryFace>,
    /// faces[face_offset[axis][side as usize] + transverse_flat] is the face
    /// for that axis/side/transverse position
    face_offsets: Vec<[usize; 2]>,
    /// per axis: flat indices of the cells with index 0 along that axis, in
    /// lexicographic transverse order (one entry per grid line)
    line_starts: Vec<Vec<usize>>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.cells_per_axis == other.cells_per_axis
    }
}

impl Grid {
    pub fn build(domain: BoxDomain, cells_per_axis: &[usize]) -> Result<Self, GridError> {
        let d = domain.dimension();
        assert_eq!(cells_per_axis.len(), d);
        for (axis, &n) in cells_per_axis.iter().enumerate() {
            if n < 2 {
                return Err(GridError::InvalidResolution { axis, n });
            }
        }
        let dx: Vec<f64> = (0..d)
            .map(|i| (domain.upper[i] - domain.lower[i]) / cells_per_axis[i] as f64)
            .collect();
        let mut strides = vec![1usize; d];
        for i in (0..d.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * cells_per_axis[i + 1];
        }
        let n_cells: usize = cells_per_axis.iter().product();
        let cell_volume: f64 = dx.iter().product();

        // grid lines per axis: enumerate transverse index tuples lexicographically
        let mut line_starts = Vec::with_capacity(d);
        for axis in 0..d {
            let mut starts = Vec::new();
            let mut idx = vec![0usize; d];
            'outer: loop {
                let flat: usize = idx
                    .iter()
                    .zip(&strides)
                    .map(|(i, s)| i * s)
                    .sum();
                starts.push(flat);
                // advance transverse counter (skip `axis`, which stays 0)
                for j in (0..d).rev() {
                    if j == axis {
                        continue;
                    }
                    idx[j] += 1;
                    if idx[j] < cells_per_axis[j] {
                        continue 'outer;
                    }
                    idx[j] = 0;
                }
                break;
            }
            line_starts.push(starts);
        }

        let mut faces = Vec::new();
        let mut face_offsets = Vec::with_capacity(d);
        for axis in 0..d {
            let area: f64 = (0..d).filter(|&j| j != axis).map(|j| dx[j]).product();
            let low_offset = faces.len();
            for &base in &line_starts[axis] {
                faces.push(BoundaryFace {
                    id: faces.len(),
                    axis,
                    side: Side::Low,
                    cell: base,
                    area,
                });
            }
            let high_offset = faces.len();
            for &base in &line_starts[axis] {
                faces.push(BoundaryFace {
                    id: faces.len(),
                    axis,
                    side: Side::High,
                    cell: base + (cells_per_axis[axis] - 1) * strides[axis],
                    area,
                });
            }
            face_offsets.push([low_offset, high_offset]);
        }

        Ok(Self {
            domain,
            cells_per_axis: cells_per_axis.to_vec(),
            dx,
            strides,
            n_cells,
            cell_volume,
            faces,
            face_offsets,
            line_starts,
        })
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn dimension(&self) -> usize {
        self.domain.dimension()
    }

    pub fn cells_per_axis(&self) -> &[usize] {
        &self.cells_per_axis
    }

    pub fn dx(&self) -> &[f64] {
        &self.dx
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn cell_volume(&self) -> f64 {
        self.cell_volume
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn boundary_faces(&self) -> &[BoundaryFace] {
        &self.faces
    }

    pub fn n_boundary_faces(&self) -> usize {
        self.faces.len()
    }

    /// Face id for (axis, side, transverse line index).
    pub fn face_id(&self, axis: usize, side: Side, line: usize) -> usize {
        let s = match side {
            Side::Low => 0,
            Side::High => 1,
        };
        self.face_offsets[axis][s] + line
    }

    /// Flat cell indices of the first cell of every grid line along `axis`.
    pub fn line_starts(&self, axis: usize) -> &[usize] {
        &self.line_starts[axis]
    }

    /// Multi-index of a flat cell index.
    pub fn cell_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.dimension()];
        for i in 0..self.dimension() {
            idx[i] = flat / self.strides[i];
            flat %= self.strides[i];
        }
        idx
    }

    /// Center coordinates of a cell.
    pub fn cell_center(&self, flat: usize) -> Vec<f64> {
        self.cell_index(flat)
            .iter()
            .enumerate()
            .map(|(i, &k)| self.domain.lower[i] + (k as f64 + 0.5) * self.dx[i])
            .collect()
    }

    /// True if the cell touches no boundary face (full interior stencil).
    pub fn is_interior_cell(&self, flat: usize) -> bool {
        self.cell_index(flat)
            .iter()
            .zip(&self.cells_per_axis)
            .all(|(&k, &n)| k > 0 && k + 1 < n)
    }
}
