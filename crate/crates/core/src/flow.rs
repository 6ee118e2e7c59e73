//! The Lorenz system and symbolic itineraries of its trajectories.
//!
//! Symbols are read at local maxima of `z`: `L` when `x < 0`, `R` when
//! `x > 0`. Itineraries are numerical and sensitive to the initial state, so
//! only short prefixes are meaningful.

use std::io::{self, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::words::Letter;

/// Largest accepted step.
pub const MAX_DT: f64 = 0.01;
/// Section events with `|x|` below this are ambiguous.
pub const DEAD_BAND: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("step {0} outside (0, {MAX_DT}]")]
    InvalidStep(f64),
    #[error("parameters must be positive and finite")]
    InvalidParams,
    #[error("at least one step is required")]
    ZeroSteps,
    #[error("start state is not finite")]
    NonFiniteStart,
    #[error("trajectory diverged at step {step}")]
    NonFinite { step: usize },
    #[error("sample times must be strictly increasing")]
    NonMonotoneTime,
    #[error("no section events after the transient")]
    NoEvents,
    #[error("ambiguous symbol at t = {t}: |x| = {x:e} below the dead band")]
    AmbiguousSymbol { t: f64, x: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowParams {
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
}

impl Default for FlowParams {
    fn default() -> Self {
        Self {
            sigma: 10.0,
            rho: 28.0,
            beta: 8.0 / 3.0,
        }
    }
}

pub type State = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub state: State,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    samples: Vec<Sample>,
}

impl FlowParams {
    fn validate(&self) -> Result<(), FlowError> {
        let ok = [self.sigma, self.rho, self.beta]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if ok {
            Ok(())
        } else {
            Err(FlowError::InvalidParams)
        }
    }

    pub fn vector_field(&self, [x, y, z]: State) -> State {
        [
            self.sigma * (y - x),
            self.rho * x - y - x * z,
            x * y - self.beta * z,
        ]
    }

    /// One classical Runge–Kutta step.
    pub fn rk4_step(&self, s: State, dt: f64) -> State {
        let add = |a: State, k: State, h: f64| [a[0] + h * k[0], a[1] + h * k[1], a[2] + h * k[2]];
        let k1 = self.vector_field(s);
        let k2 = self.vector_field(add(s, k1, dt / 2.0));
        let k3 = self.vector_field(add(s, k2, dt / 2.0));
        let k4 = self.vector_field(add(s, k3, dt));
        std::array::from_fn(|i| s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
    }

    /// `steps + 1` samples starting at `t = 0`.
    pub fn integrate(&self, start: State, dt: f64, steps: usize) -> Result<Trajectory, FlowError> {
        self.validate()?;
        if !(dt > 0.0 && dt <= MAX_DT) {
            return Err(FlowError::InvalidStep(dt));
        }
        if steps == 0 {
            return Err(FlowError::ZeroSteps);
        }
        if !start.iter().all(|v| v.is_finite()) {
            return Err(FlowError::NonFiniteStart);
        }
        let mut samples = Vec::with_capacity(steps + 1);
        let mut s = start;
        samples.push(Sample { t: 0.0, state: s });
        for k in 1..=steps {
            s = self.rk4_step(s, dt);
            if !s.iter().all(|v| v.is_finite()) {
                return Err(FlowError::NonFinite { step: k });
            }
            samples.push(Sample {
                t: k as f64 * dt,
                state: s,
            });
        }
        Ok(Trajectory { samples })
    }

    /// Integrates independent starts in parallel, preserving order.
    pub fn integrate_many(
        &self,
        starts: &[State],
        dt: f64,
        steps: usize,
    ) -> Vec<Result<Trajectory, FlowError>> {
        starts
            .par_iter()
            .map(|&s| self.integrate(s, dt, steps))
            .collect()
    }
}

pub fn vector_field(state: State) -> State {
    FlowParams::default().vector_field(state)
}

pub fn integrate(start: State, dt: f64, steps: usize) -> Result<Trajectory, FlowError> {
    FlowParams::default().integrate(start, dt, steps)
}

impl Trajectory {
    pub fn new(samples: Vec<Sample>) -> Result<Self, FlowError> {
        if samples.windows(2).any(|w| w[0].t >= w[1].t) {
            return Err(FlowError::NonMonotoneTime);
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// Samples from index `from` on.
    pub fn tail(&self, from: usize) -> Self {
        Self {
            samples: self.samples[from.min(self.samples.len())..].to_vec(),
        }
    }

    /// Shifts every time stamp by `offset`.
    pub fn shifted(&self, offset: f64) -> Self {
        Self {
            samples: self
                .samples
                .iter()
                .map(|s| Sample {
                    t: s.t + offset,
                    ..*s
                })
                .collect(),
        }
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,x,y,z")?;
        for s in &self.samples {
            let [x, y, z] = s.state;
            writeln!(out, "{},{},{},{}", s.t, x, y, z)?;
        }
        Ok(())
    }
}

/// Symbols at the local maxima of `z` occurring at least `skip_transient`
/// time units after the first sample.
pub fn itinerary(traj: &Trajectory, skip_transient: f64) -> Result<Vec<Letter>, FlowError> {
    let samples = traj.samples();
    let Some(first) = samples.first() else {
        return Err(FlowError::NoEvents);
    };
    let mut letters = Vec::new();
    for w in samples.windows(3) {
        let (prev, cur, next) = (w[0].state[2], w[1].state[2], w[2].state[2]);
        if !(prev < cur && cur >= next) || w[1].t - first.t < skip_transient {
            continue;
        }
        let x = w[1].state[0];
        if x.abs() < DEAD_BAND {
            return Err(FlowError::AmbiguousSymbol { t: w[1].t, x });
        }
        letters.push(if x < 0.0 { Letter::L } else { Letter::R });
    }
    if letters.is_empty() {
        return Err(FlowError::NoEvents);
    }
    Ok(letters)
}
