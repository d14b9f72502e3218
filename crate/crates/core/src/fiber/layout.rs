use crate::error::{Error, Result};

/// One core of a multi-core fiber.
#[derive(Debug, Clone, PartialEq)]
pub struct Core {
    pub id: usize,
    /// Position relative to the fiber axis, m.
    pub x: f64,
    pub y: f64,
    /// Number of adjacent cores (N_AC): cores exactly one pitch away.
    pub n_adjacent: usize,
}

/// Core positions and the adjacency they imply.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreLayout {
    pitch: f64,
    cores: Vec<Core>,
}

const ADJACENCY_TOLERANCE: f64 = 1e-9;

impl CoreLayout {
    /// Cores at `positions` (m). Two cores are adjacent when their distance
    /// equals `pitch` within 1e-9 relative; no pair may sit closer than that.
    pub fn from_positions(pitch: f64, positions: &[(f64, f64)]) -> Result<Self> {
        if !(pitch > 0.0) {
            return Err(Error::invalid("core pitch must be positive"));
        }
        if positions.len() < 2 {
            return Err(Error::invalid(
                "a multi-core layout needs at least two cores",
            ));
        }
        let mut cores: Vec<Core> = positions
            .iter()
            .enumerate()
            .map(|(id, &(x, y))| Core {
                id,
                x,
                y,
                n_adjacent: 0,
            })
            .collect();
        for i in 0..cores.len() {
            for j in (i + 1)..cores.len() {
                let d = (cores[i].x - cores[j].x).hypot(cores[i].y - cores[j].y);
                let rel = (d - pitch) / pitch;
                if rel < -ADJACENCY_TOLERANCE {
                    return Err(Error::invalid(format!(
                        "cores {i} and {j} are closer than the pitch"
                    )));
                }
                if rel.abs() <= ADJACENCY_TOLERANCE {
                    cores[i].n_adjacent += 1;
                    cores[j].n_adjacent += 1;
                }
            }
        }
        Ok(Self { pitch, cores })
    }

    /// Four cores on the corners of a square of side `pitch`.
    pub fn square(pitch: f64) -> Self {
        let h = pitch / 2.0;
        Self::from_positions(pitch, &[(-h, -h), (h, -h), (h, h), (-h, h)])
            .expect("square layout is valid")
    }

    /// Hexagonal close-packed seven-core layout: one centre core and six
    /// outer cores on a ring of radius `pitch`.
    pub fn hexagonal(pitch: f64) -> Self {
        let mut pos = vec![(0.0, 0.0)];
        for k in 0..6 {
            let a = std::f64::consts::FRAC_PI_3 * k as f64;
            pos.push((pitch * a.cos(), pitch * a.sin()));
        }
        Self::from_positions(pitch, &pos).expect("hexagonal layout is valid")
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn cores(&self) -> &[Core] {
        &self.cores
    }

    pub fn core_count(&self) -> usize {
        self.cores.len()
    }

    pub fn max_adjacency(&self) -> usize {
        self.cores.iter().map(|c| c.n_adjacent).max().unwrap_or(0)
    }

    /// Distance of the outermost core centre from the fiber axis, m.
    pub fn outer_radius(&self) -> f64 {
        self.cores
            .iter()
            .map(|c| c.x.hypot(c.y))
            .fold(0.0, f64::max)
    }

    /// Distinct adjacency counts present, ascending.
    pub fn adjacency_classes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.cores.iter().map(|c| c.n_adjacent).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}
