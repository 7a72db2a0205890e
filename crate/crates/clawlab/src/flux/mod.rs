//! Flux functions f: R -> R^d, their derivatives, monotone numerical fluxes
//! and the non-degeneracy audit.
//!
//! A [`Flux`] is a list of scalar components f_i with derivatives f_i'.
//! Builtins come with closed-form antiderivatives of |f_i'| so the
//! Engquist-Osher integral is exact; tabulated fluxes fall back to
//! quadrature.

mod audit;
mod numerical;

pub use audit::{audit_nondegeneracy, NondegeneracyReport, NondegeneracyVerdict, DEGENERACY_THRESHOLD};
pub use numerical::{engquist_osher_flux, godunov_flux, numerical_flux_raw, NumericalFluxKind};

use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FluxError {
    #[error("flux evaluation produced a non-finite value at u = {u}")]
    Evaluation { u: f64 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("flux table: {0}")]
    Table(String),
}

/// Sampled flux table: strictly increasing abscissae, one value column per
/// component. Evaluation is piecewise linear, extrapolated with end slopes.
#[derive(Debug, Clone)]
pub struct FluxTable {
    u: Vec<f64>,
    values: Vec<Vec<f64>>, // values[comp][row]
}

impl FluxTable {
    pub fn new(u: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self, FluxError> {
        if u.len() < 2 {
            return Err(FluxError::Table("need at least two rows".into()));
        }
        if !u.windows(2).all(|w| w[1] > w[0]) {
            return Err(FluxError::Table("u column must be strictly increasing".into()));
        }
        if values.is_empty() || values.iter().any(|c| c.len() != u.len()) {
            return Err(FluxError::Table("column length mismatch".into()));
        }
        let finite =
            u.iter().all(|x| x.is_finite()) && values.iter().flatten().all(|x| x.is_finite());
        if !finite {
            return Err(FluxError::Table("non-finite entry".into()));
        }
        Ok(Self { u, values })
    }

    /// Index of the segment whose left node is at or below `x`, clamped to
    /// valid segments so extrapolation uses the end slopes.
    #[inline]
    fn segment(&self, x: f64) -> usize {
        let k = self.u.partition_point(|&u| u <= x);
        k.saturating_sub(1).min(self.u.len() - 2)
    }

    #[inline]
    fn eval(&self, comp: usize, x: f64) -> f64 {
        let j = self.segment(x);
        let (u0, u1) = (self.u[j], self.u[j + 1]);
        let (f0, f1) = (self.values[comp][j], self.values[comp][j + 1]);
        f0 + (f1 - f0) / (u1 - u0) * (x - u0)
    }

    #[inline]
    fn slope(&self, comp: usize, x: f64) -> f64 {
        let j = self.segment(x);
        (self.values[comp][j + 1] - self.values[comp][j]) / (self.u[j + 1] - self.u[j])
    }
}

/// One scalar flux component with its derivative.
#[derive(Debug, Clone)]
pub enum FluxComponent {
    /// f(u) = u^p / p, p >= 2
    Power { p: u32 },
    /// f(u) = slope * u + offset
    Affine { slope: f64, offset: f64 },
    /// piecewise-linear table column
    Tabulated { table: Arc<FluxTable>, comp: usize },
}

impl FluxComponent {
    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            FluxComponent::Power { p } => u.powi(*p as i32) / *p as f64,
            FluxComponent::Affine { slope, offset } => slope * u + offset,
            FluxComponent::Tabulated { table, comp } => table.eval(*comp, u),
        }
    }

    #[inline]
    pub fn derivative(&self, u: f64) -> f64 {
        match self {
            FluxComponent::Power { p } => u.powi(*p as i32 - 1),
            FluxComponent::Affine { slope, .. } => *slope,
            FluxComponent::Tabulated { table, comp } => table.slope(*comp, u),
        }
    }

    /// Closed-form antiderivative of |f'|, available for the closed-form
    /// variants only.
    #[inline]
    pub fn abs_derivative_antiderivative(&self, u: f64) -> Option<f64> {
        match self {
            FluxComponent::Power { p } => {
                // d/du [ sign(u) |u|^p / p ] = |u|^(p-1) = |f'(u)|
                let p = *p as f64;
                Some(crate::numerics::sign(u) * u.abs().powf(p) / p)
            }
            FluxComponent::Affine { slope, .. } => Some(slope.abs() * u),
            FluxComponent::Tabulated { .. } => None,
        }
    }

    /// Largest |f'| over `[lo, hi]`, sampled at `n` equally spaced points
    /// including both endpoints.
    pub fn max_abs_derivative(&self, lo: f64, hi: f64, n: usize) -> f64 {
        debug_assert!(n >= 2 && hi >= lo);
        if lo == hi {
            return self.derivative(lo).abs();
        }
        let mut best = 0.0f64;
        for k in 0..n {
            let u = lo + (hi - lo) * k as f64 / (n - 1) as f64;
            best = best.max(self.derivative(u).abs());
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxKind {
    BuiltinClosedForm,
    Tabulated,
}

/// A flux function f: R -> R^d.
///
/// Immutable after construction; shared freely across threads.
#[derive(Debug, Clone)]
pub struct Flux {
    name: String,
    kind: FluxKind,
    components: Vec<FluxComponent>,
}

impl Flux {
    /// 1D Burgers flux u^2/2.
    pub fn burgers() -> Self {
        Self {
            name: "burgers".into(),
            kind: FluxKind::BuiltinClosedForm,
            components: vec![FluxComponent::Power { p: 2 }],
        }
    }

    /// 1D cubic flux u^3/3 (nonconvex).
    pub fn cubic() -> Self {
        Self {
            name: "cubic".into(),
            kind: FluxKind::BuiltinClosedForm,
            components: vec![FluxComponent::Power { p: 3 }],
        }
    }

    /// d-dimensional diagonal Burgers flux (u^2/2, ..., u^2/2).
    pub fn diagonal_burgers(d: usize) -> Self {
        assert!(d >= 1);
        Self {
            name: format!("diagonal_burgers_{d}d"),
            kind: FluxKind::BuiltinClosedForm,
            components: (0..d).map(|_| FluxComponent::Power { p: 2 }).collect(),
        }
    }

    /// d-dimensional skew flux (u^2/2, u^3/3, u^4/4, ...).
    pub fn skew(d: usize) -> Self {
        assert!(d >= 1);
        Self {
            name: format!("skew_{d}d"),
            kind: FluxKind::BuiltinClosedForm,
            components: (0..d)
                .map(|i| FluxComponent::Power { p: i as u32 + 2 })
                .collect(),
        }
    }

    /// Affine flux f_i(u) = slope_i * u; degenerate by construction, kept for
    /// negative tests of the audit.
    pub fn affine(slopes: Vec<f64>) -> Self {
        assert!(!slopes.is_empty());
        Self {
            name: "affine".into(),
            kind: FluxKind::BuiltinClosedForm,
            components: slopes
                .into_iter()
                .map(|slope| FluxComponent::Affine { slope, offset: 0.0 })
                .collect(),
        }
    }

    /// Flux from explicit components; kind is tabulated if any component is.
    pub fn from_components(name: &str, components: Vec<FluxComponent>) -> Self {
        assert!(!components.is_empty());
        let kind = if components
            .iter()
            .any(|c| matches!(c, FluxComponent::Tabulated { .. }))
        {
            FluxKind::Tabulated
        } else {
            FluxKind::BuiltinClosedForm
        };
        Self { name: name.into(), kind, components }
    }

    pub fn from_table(name: &str, table: FluxTable) -> Self {
        let table = Arc::new(table);
        let d = table.values.len();
        Self {
            name: name.into(),
            kind: FluxKind::Tabulated,
            components: (0..d)
                .map(|comp| FluxComponent::Tabulated { table: Arc::clone(&table), comp })
                .collect(),
        }
    }

    /// Loads a tabulated flux from CSV with header `u,f1,...,fd`, rows sorted
    /// strictly increasing in u.
    pub fn from_table_csv(path: &Path) -> Result<Self, FluxError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FluxError::Table(format!("{}: {e}", path.display())))?;
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| FluxError::Table("empty file".into()))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.len() < 2 || cols[0] != "u" {
            return Err(FluxError::Table("header must be u,f1,...,fd".into()));
        }
        for (i, c) in cols[1..].iter().enumerate() {
            if *c != format!("f{}", i + 1) {
                return Err(FluxError::Table(format!("unexpected column `{c}`")));
            }
        }
        let d = cols.len() - 1;
        let mut u = Vec::new();
        let mut values = vec![Vec::new(); d];
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != d + 1 {
                return Err(FluxError::Table(format!("line {}: wrong field count", lineno + 1)));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| FluxError::Table(format!("line {}: bad number `{s}`", lineno + 1)))
            };
            u.push(parse(fields[0])?);
            for (i, f) in fields[1..].iter().enumerate() {
                values[i].push(parse(f)?);
            }
        }
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "table".into());
        Ok(Self::from_table(&stem, FluxTable::new(u, values)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FluxKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &FluxComponent {
        &self.components[i]
    }

    pub fn components(&self) -> &[FluxComponent] {
        &self.components
    }

    /// Godunov for closed-form fluxes, Engquist-Osher for tabulated ones
    /// (EO only needs derivative values, which tables provide robustly).
    pub fn default_numerical(&self) -> NumericalFluxKind {
        match self.kind {
            FluxKind::BuiltinClosedForm => NumericalFluxKind::Godunov,
            FluxKind::Tabulated => NumericalFluxKind::EngquistOsher,
        }
    }

    /// Evaluates (f_1(u), ..., f_d(u)).
    pub fn eval(&self, u: f64) -> Result<Vec<f64>, FluxError> {
        if !u.is_finite() {
            return Err(FluxError::Evaluation { u });
        }
        let out: Vec<f64> = self.components.iter().map(|c| c.eval(u)).collect();
        if out.iter().any(|v| !v.is_finite()) {
            return Err(FluxError::Evaluation { u });
        }
        Ok(out)
    }

    /// Evaluates (f_1'(u), ..., f_d'(u)) without allocation checks; used by
    /// samplers that validate downstream.
    pub fn derivative(&self, u: f64) -> Vec<f64> {
        self.components.iter().map(|c| c.derivative(u)).collect()
    }

    /// <f(u), eta> for a direction eta.
    pub fn directional_value(&self, u: f64, eta: &[f64]) -> f64 {
        debug_assert_eq!(eta.len(), self.dimension());
        self.components
            .iter()
            .zip(eta)
            .map(|(c, e)| c.eval(u) * e)
            .sum()
    }

    /// <f'(u), w> for a direction w.
    pub fn directional_derivative(&self, u: f64, w: &[f64]) -> f64 {
        debug_assert_eq!(w.len(), self.dimension());
        self.components
            .iter()
            .zip(w)
            .map(|(c, e)| c.derivative(u) * e)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let f = Flux::burgers();
        assert_eq!(f.eval(-1.0).unwrap(), vec![0.5]);
        assert_eq!(f.eval(0.0).unwrap(), vec![0.0]);
        let g = Flux::diagonal_burgers(2);
        assert_eq!(g.eval(2.0).unwrap(), vec![2.0, 2.0]);
        assert_eq!(g.eval(0.0).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn eval_rejects_non_finite() {
        let f = Flux::burgers();
        assert!(matches!(f.eval(f64::NAN), Err(FluxError::Evaluation { .. })));
        assert!(matches!(f.eval(f64::INFINITY), Err(FluxError::Evaluation { .. })));
    }

    #[test]
    fn builtin_derivatives_match_finite_differences() {
        // invariant: centered difference agrees to 1e-6 relative on 1e3
        // points of an interval of length <= 10
        let fluxes = [Flux::burgers(), Flux::cubic(), Flux::skew(3), Flux::affine(vec![2.0, -1.0])];
        for f in &fluxes {
            for c in f.components() {
                let h = 1e-6;
                for k in 0..1000 {
                    let u = -5.0 + 10.0 * k as f64 / 999.0;
                    let fd = (c.eval(u + h) - c.eval(u - h)) / (2.0 * h);
                    let ex = c.derivative(u);
                    let scale = ex.abs().max(1.0);
                    assert!(
                        (fd - ex).abs() <= 1e-6 * scale,
                        "derivative mismatch at {u}: {fd} vs {ex}"
                    );
                }
            }
        }
    }

    #[test]
    fn power_abs_antiderivative_differentiates_back() {
        for p in 2..=4u32 {
            let c = FluxComponent::Power { p };
            let h = 1e-6;
            for k in 0..200 {
                let u = -2.0 + 4.0 * k as f64 / 199.0;
                let g = |x: f64| c.abs_derivative_antiderivative(x).unwrap();
                let fd = (g(u + h) - g(u - h)) / (2.0 * h);
                assert!(
                    (fd - c.derivative(u).abs()).abs() < 1e-5,
                    "p={p} u={u}: {fd} vs {}",
                    c.derivative(u).abs()
                );
            }
        }
    }

    #[test]
    fn table_interpolates_and_extrapolates() {
        let u: Vec<f64> = (0..21).map(|k| -1.0 + 0.1 * k as f64).collect();
        let col: Vec<f64> = u.iter().map(|x| x * x / 2.0).collect();
        let f = Flux::from_table("t", FluxTable::new(u, vec![col]).unwrap());
        let c = f.component(0);
        // exact at nodes, chord values between them
        assert!((c.eval(0.5) - 0.125).abs() < 1e-12);
        assert!((c.eval(0.55) - 0.5 * (0.125 + 0.18)).abs() < 1e-12);
        // end-slope extrapolation stays finite and linear
        let s = c.derivative(2.0);
        assert!((s - c.derivative(0.95)).abs() < 1e-12);
        assert_eq!(f.default_numerical(), NumericalFluxKind::EngquistOsher);
    }

    #[test]
    fn table_rejects_unsorted() {
        let err = FluxTable::new(vec![0.0, 0.0, 1.0], vec![vec![0.0, 0.1, 0.2]]);
        assert!(err.is_err());
    }

    #[test]
    fn table_csv_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("flux.csv");
        let mut text = String::from("u,f1,f2\n");
        for k in 0..11 {
            let u = -1.0 + 0.2 * k as f64;
            text.push_str(&format!("{},{},{}\n", u, u * u / 2.0, u * u * u / 3.0));
        }
        std::fs::write(&path, text).unwrap();
        let f = Flux::from_table_csv(&path).unwrap();
        assert_eq!(f.dimension(), 2);
        assert!((f.component(0).eval(0.2) - 0.02).abs() < 1e-12);
    }

    #[test]
    fn table_csv_rejects_bad_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("flux.csv");
        std::fs::write(&path, "x,f1\n0,0\n1,1\n").unwrap();
        assert!(Flux::from_table_csv(&path).is_err());
    }
}
