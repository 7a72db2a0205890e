//! Piecewise-constant-in-time boundary data, one trace per boundary face.
//!
//! A value applies on `[start_j, start_{j+1})`; the last value extends to
//! all later times. Schedules are sampled at the beginning of each solver
//! step (left endpoint rule), which together with exact breakpoints makes
//! replays bit-identical.

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error("schedule breakpoints must start at a finite time and increase strictly")]
    InvalidBreakpoints,
    #[error("schedule values must be finite")]
    NonFiniteValue,
    #[error("schedule face count {got} does not match grid ({expected})")]
    FaceCountMismatch { got: usize, expected: usize },
    #[error("schedule csv line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One face's piecewise-constant trace.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstant {
    starts: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseConstant {
    pub fn new(starts: Vec<f64>, values: Vec<f64>) -> Result<Self, ScheduleError> {
        if starts.is_empty() || starts.len() != values.len() {
            return Err(ScheduleError::InvalidBreakpoints);
        }
        if starts.iter().any(|t| !t.is_finite()) || !starts.windows(2).all(|w| w[1] > w[0]) {
            return Err(ScheduleError::InvalidBreakpoints);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(ScheduleError::NonFiniteValue);
        }
        Ok(Self { starts, values })
    }

    pub fn constant(value: f64) -> Self {
        Self::new(vec![0.0], vec![value]).expect("constant schedule")
    }

    /// Value at time t. Times before the first breakpoint clamp to the first
    /// value; times at or past the last breakpoint take the last value.
    #[inline]
    pub fn value_at(&self, t: f64) -> f64 {
        let k = self.starts.partition_point(|&s| s <= t);
        self.values[k.saturating_sub(1)]
    }

    pub fn starts(&self) -> &[f64] {
        &self.starts
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Time-shifted copy: the new segment j starts at `starts[j] + offset`.
    pub fn shifted(&self, offset: f64) -> Self {
        Self {
            starts: self.starts.iter().map(|t| t + offset).collect(),
            values: self.values.clone(),
        }
    }
}

/// Boundary data for every face of a grid, indexed by face id.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySchedule {
    faces: Vec<PiecewiseConstant>,
}

impl BoundarySchedule {
    pub fn new(faces: Vec<PiecewiseConstant>) -> Self {
        assert!(!faces.is_empty());
        Self { faces }
    }

    /// Same constant datum on every face.
    pub fn constant(n_faces: usize, value: f64) -> Self {
        Self::new(vec![PiecewiseConstant::constant(value); n_faces])
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, id: usize) -> &PiecewiseConstant {
        &self.faces[id]
    }

    pub fn faces(&self) -> &[PiecewiseConstant] {
        &self.faces
    }

    #[inline]
    pub fn value_at(&self, face: usize, t: f64) -> f64 {
        self.faces[face].value_at(t)
    }

    /// Range of every value the schedule ever takes.
    pub fn value_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for f in &self.faces {
            for &v in &f.values {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    }

    /// CSV form: header `face_id,t_start,value`, rows grouped by face in
    /// ascending id, breakpoints in order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("face_id,t_start,value\n");
        for (id, f) in self.faces.iter().enumerate() {
            for (t, v) in f.starts.iter().zip(&f.values) {
                out.push_str(&format!("{id},{t},{v}\n"));
            }
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), ScheduleError> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn from_csv_str(text: &str) -> Result<Self, ScheduleError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == "face_id,t_start,value" => {}
            _ => {
                return Err(ScheduleError::Csv {
                    line: 1,
                    message: "expected header face_id,t_start,value".into(),
                })
            }
        }
        let mut per_face: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let err = |message: &str| ScheduleError::Csv {
                line: lineno + 1,
                message: message.into(),
            };
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(err("expected 3 fields"));
            }
            let id: usize = fields[0].trim().parse().map_err(|_| err("bad face_id"))?;
            let t: f64 = fields[1].trim().parse().map_err(|_| err("bad t_start"))?;
            let v: f64 = fields[2].trim().parse().map_err(|_| err("bad value"))?;
            if id == per_face.len() {
                per_face.push((Vec::new(), Vec::new()));
            } else if id != per_face.len() - 1 {
                return Err(err("rows must be grouped by ascending face_id"));
            }
            let slot = per_face.last_mut().unwrap();
            slot.0.push(t);
            slot.1.push(v);
        }
        if per_face.is_empty() {
            return Err(ScheduleError::Csv { line: 1, message: "no rows".into() });
        }
        let faces = per_face
            .into_iter()
            .map(|(starts, values)| PiecewiseConstant::new(starts, values))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(faces))
    }

    pub fn read_csv(path: &Path) -> Result<Self, ScheduleError> {
        Self::from_csv_str(&std::fs::read_to_string(path)?)
    }
}
