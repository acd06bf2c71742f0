//! Hexagonal cell layout and the link-gain matrix derived from it.
//!
//! Cells are laid out as a parallelogram in axial coordinates `(a, b)` with
//! `a` running along a row and `b` selecting the row. Cell `b * cols + a`
//! has its center at `(a + b/2, b·√3/2)`, so adjacent centers are exactly
//! one unit apart.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a cell in `[0, C)`.
pub type CellId = usize;

/// Axial hex coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Axial {
    pub a: i64,
    pub b: i64,
}

impl Axial {
    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// Planar center with unit spacing between neighbors.
    pub fn center(self) -> (f64, f64) {
        let (a, b) = (self.a as f64, self.b as f64);
        (a + b / 2.0, b * 3f64.sqrt() / 2.0)
    }

    /// Number of hex steps between two coordinates.
    pub fn hex_distance(self, other: Axial) -> i64 {
        let da = self.a - other.a;
        let db = self.b - other.b;
        (da.abs() + db.abs() + (da + db).abs()) / 2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridGeometry {
    rows: usize,
    cols: usize,
    coords: Vec<Axial>,
    centers: Vec<(f64, f64)>,
}

/// Builds a `rows × cols` parallelogram of hexagonal cells.
pub fn build_grid(rows: usize, cols: usize) -> Result<GridGeometry> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidGrid { rows, cols });
    }
    let coords: Vec<Axial> = (0..rows)
        .flat_map(|b| (0..cols).map(move |a| Axial::new(a as i64, b as i64)))
        .collect();
    let centers = coords.iter().map(|c| c.center()).collect();
    Ok(GridGeometry {
        rows,
        cols,
        coords,
        centers,
    })
}

impl GridGeometry {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_cells(&self) -> usize {
        self.coords.len()
    }

    pub fn axial(&self, cell: CellId) -> Result<Axial> {
        self.coords
            .get(cell)
            .copied()
            .ok_or(Error::InvalidCell {
                cell,
                cells: self.num_cells(),
            })
    }

    pub fn center(&self, cell: CellId) -> Result<(f64, f64)> {
        self.centers.get(cell).copied().ok_or(Error::InvalidCell {
            cell,
            cells: self.num_cells(),
        })
    }

    /// Cell at the given axial coordinate, if it lies on the grid.
    pub fn cell_at(&self, coord: Axial) -> Option<CellId> {
        let in_range = |v: i64, n: usize| v >= 0 && (v as usize) < n;
        (in_range(coord.a, self.cols) && in_range(coord.b, self.rows))
            .then(|| coord.b as usize * self.cols + coord.a as usize)
    }

    /// Normalized Euclidean distance between two cell centers.
    pub fn distance(&self, i: CellId, j: CellId) -> Result<f64> {
        let (xi, yi) = self.center(i)?;
        let (xj, yj) = self.center(j)?;
        Ok((xi - xj).hypot(yi - yj))
    }

    /// Full `C × C` distance table, row-major.
    pub fn distance_table(&self) -> Vec<Vec<f64>> {
        let n = self.num_cells();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.distance(i, j).expect("ids in range"))
                    .collect()
            })
            .collect()
    }
}

/// Power-law propagation model: `g_ij = max(d_ij, d_min)^(-α)` off the
/// diagonal and a configured constant on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainModel {
    pub path_loss_exponent: f64,
    pub min_distance: f64,
    pub self_gain: f64,
}

impl Default for GainModel {
    fn default() -> Self {
        Self {
            path_loss_exponent: 2.0,
            min_distance: 1.0,
            self_gain: 1.8,
        }
    }
}

impl GainModel {
    pub fn validate(&self) -> Result<()> {
        let ok = self.path_loss_exponent > 0.0
            && self.path_loss_exponent.is_finite()
            && self.min_distance > 0.0
            && self.min_distance <= 1.0
            && self.self_gain > 0.0
            && self.self_gain.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGainModel(format!(
                "need alpha > 0, 0 < d_min <= 1, self_gain > 0; got alpha={}, d_min={}, self_gain={}",
                self.path_loss_exponent, self.min_distance, self.self_gain
            )))
        }
    }

    /// Gain at normalized distance `d` between two distinct cells.
    pub fn cross_gain(&self, d: f64) -> f64 {
        d.max(self.min_distance).powf(-self.path_loss_exponent)
    }
}

/// Dense `C × C` link-gain matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GainMatrix {
    n: usize,
    g: Vec<f64>,
}

/// Evaluates the gain model over every cell pair of `geom`.
pub fn build_gain_matrix(geom: &GridGeometry, model: &GainModel) -> Result<GainMatrix> {
    model.validate()?;
    let n = geom.num_cells();
    let mut g = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            g[i * n + j] = if i == j {
                model.self_gain
            } else {
                model.cross_gain(geom.distance(i, j)?)
            };
        }
    }
    GainMatrix::from_flat(n, g)
}

impl GainMatrix {
    /// Builds a matrix from explicit rows, checking that it is square,
    /// strictly positive, symmetric, and that every off-diagonal entry is
    /// below its row's diagonal.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGainMatrix("matrix is not square".into()));
        }
        Self::from_flat(n, rows.into_iter().flatten().collect())
    }

    fn from_flat(n: usize, g: Vec<f64>) -> Result<Self> {
        for i in 0..n {
            let gii = g[i * n + i];
            for j in 0..n {
                let gij = g[i * n + j];
                if !(gij > 0.0 && gij.is_finite()) {
                    return Err(Error::InvalidGainMatrix(format!(
                        "g[{i}][{j}] = {gij} is not strictly positive"
                    )));
                }
                if gij != g[j * n + i] {
                    return Err(Error::InvalidGainMatrix(format!(
                        "g[{i}][{j}] != g[{j}][{i}]"
                    )));
                }
                if i != j && gij >= gii {
                    return Err(Error::InvalidGainMatrix(format!(
                        "cross gain g[{i}][{j}] = {gij} is not below self gain {gii}"
                    )));
                }
            }
        }
        Ok(Self { n, g })
    }

    pub fn num_cells(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: CellId, j: CellId) -> f64 {
        self.g[i * self.n + j]
    }

    pub fn row(&self, i: CellId) -> &[f64] {
        &self.g[i * self.n..(i + 1) * self.n]
    }

    /// Row-major CSV, one line per receiving cell, full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}
