//! Dynamic multi-objective benchmark problems: the FDA family after Farina,
//! Deb and Amato, "Dynamic multiobjective optimization problems: test cases,
//! approximations, and applications" (IEEE TEC 8(5), 2004), and the dMOP
//! family after Goh and Tan, "A competitive-cooperative coevolutionary
//! paradigm for dynamic multiobjective optimization" (IEEE TEC 13(1), 2009).
//!
//! Environments are indexed by a rational time `t` produced by the usual
//! discrete clock `t = (1/n_t) * floor(tau / tau_t)`, where `tau` counts
//! optimizer generations, `tau_t` is the change frequency and `n_t` the
//! change severity. Every problem is pure: evaluating the same decision
//! vector at the same time always yields the same objectives.
//!
//! Definitions follow the forms in common use; where the printed originals
//! put the time-dependent optimum outside the feasible box (or make the
//! supposedly static optimal set drift), the widely used corrected variants
//! are implemented instead, so that each problem's analytic optimum stays
//! feasible and its change type holds exactly: FDA2 and dMOP1 keep a static
//! optimal set (`x_i = 0`) under a front that bends with `H(t)`, and the
//! dMOP problems use `G(t) = |sin(pi t / 2)|` to stay inside `[0,1]`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Discrete environment clock `t = (1/n_t) * floor(tau / tau_t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeController {
    /// Change severity `n_t`: the number of time steps per unit of `t`.
    pub severity: u32,
    /// Change frequency `tau_t`: generations between changes.
    pub frequency: u32,
    /// Generation counter `tau`.
    pub generation: u64,
}

impl TimeController {
    pub fn new(severity: u32, frequency: u32) -> Self {
        assert!(
            severity >= 1 && frequency >= 1,
            "severity and frequency must be at least 1"
        );
        TimeController {
            severity,
            frequency,
            generation: 0,
        }
    }

    /// Environment time of the current generation.
    pub fn time(&self) -> f64 {
        (self.generation / u64::from(self.frequency)) as f64 / f64::from(self.severity)
    }

    /// Advance the clock by one generation.
    pub fn advance(&mut self) {
        self.generation += 1;
    }
}

/// How the optimum responds to time, after Farina et al.'s classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChangeType {
    /// Type I: the optimal decision vectors move, the front is static.
    TypeI,
    /// Type II: both the optimal decision vectors and the front move.
    TypeII,
    /// Type III: the front moves, the optimal decision vectors are static.
    TypeIII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemName {
    Fda1,
    Fda2,
    Fda3,
    Fda4,
    Fda5,
    DMop1,
    DMop2,
    DMop3,
}

impl ProblemName {
    pub const ALL: [ProblemName; 8] = [
        ProblemName::Fda1,
        ProblemName::Fda2,
        ProblemName::Fda3,
        ProblemName::Fda4,
        ProblemName::Fda5,
        ProblemName::DMop1,
        ProblemName::DMop2,
        ProblemName::DMop3,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemName::Fda1 => "FDA1",
            ProblemName::Fda2 => "FDA2",
            ProblemName::Fda3 => "FDA3",
            ProblemName::Fda4 => "FDA4",
            ProblemName::Fda5 => "FDA5",
            ProblemName::DMop1 => "dMOP1",
            ProblemName::DMop2 => "dMOP2",
            ProblemName::DMop3 => "dMOP3",
        }
    }
}

impl fmt::Display for ProblemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "FDA1" => Ok(ProblemName::Fda1),
            "FDA2" => Ok(ProblemName::Fda2),
            "FDA3" => Ok(ProblemName::Fda3),
            "FDA4" => Ok(ProblemName::Fda4),
            "FDA5" => Ok(ProblemName::Fda5),
            "DMOP1" => Ok(ProblemName::DMop1),
            "DMOP2" => Ok(ProblemName::DMop2),
            "DMOP3" => Ok(ProblemName::DMop3),
            _ => Err(Error::UnknownProblem(s.to_string())),
        }
    }
}

/// A dynamic multi-objective benchmark instance.
#[derive(Debug, Clone)]
pub struct DynamicProblem {
    name: ProblemName,
    objectives: usize,
    dimension: usize,
    bounds: Vec<(f64, f64)>,
    change_type: ChangeType,
    /// Seed for per-environment randomness (dMOP3 redraws which variable
    /// controls the front at every change).
    seed: u64,
}

impl DynamicProblem {
    /// A problem with its literature-standard dimension.
    pub fn new(name: ProblemName) -> Self {
        let dimension = match name {
            ProblemName::Fda1 => 20,
            ProblemName::Fda2 => 31,
            ProblemName::Fda3 => 30,
            ProblemName::Fda4 | ProblemName::Fda5 => 12,
            ProblemName::DMop1 | ProblemName::DMop2 | ProblemName::DMop3 => 10,
        };
        Self::with_dimension(name, dimension)
    }

    /// A problem with a custom decision-space dimension.
    pub fn with_dimension(name: ProblemName, dimension: usize) -> Self {
        let objectives = match name {
            ProblemName::Fda4 | ProblemName::Fda5 => 3,
            _ => 2,
        };
        assert!(
            dimension > objectives,
            "{name} needs more variables than objectives"
        );
        let bounds = match name {
            // First variable spans [0,1], the tail spans [-1,1].
            ProblemName::Fda1 | ProblemName::Fda2 | ProblemName::Fda3 => {
                let mut b = vec![(-1.0, 1.0); dimension];
                b[0] = (0.0, 1.0);
                b
            }
            // Everything in [0,1].
            _ => vec![(0.0, 1.0); dimension],
        };
        let change_type = match name {
            ProblemName::Fda1 | ProblemName::Fda4 | ProblemName::DMop3 => ChangeType::TypeI,
            ProblemName::Fda3 | ProblemName::Fda5 | ProblemName::DMop2 => ChangeType::TypeII,
            ProblemName::Fda2 | ProblemName::DMop1 => ChangeType::TypeIII,
        };
        DynamicProblem {
            name,
            objectives,
            dimension,
            bounds,
            change_type,
            seed: 0,
        }
    }

    /// Parse a problem by its conventional name (`"FDA1"` … `"dMOP3"`).
    pub fn by_name(name: &str) -> Result<Self, Error> {
        Ok(Self::new(name.parse()?))
    }

    /// All eight problems at their default dimensions.
    pub fn all() -> Vec<Self> {
        ProblemName::ALL.iter().map(|&n| Self::new(n)).collect()
    }

    /// Reseed the problem's internal per-environment randomness.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn name(&self) -> ProblemName {
        self.name
    }

    /// Number of objectives `m`.
    pub fn objectives(&self) -> usize {
        self.objectives
    }

    /// Number of decision variables `n`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Per-variable `(lower, upper)` bounds.
    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn change_type(&self) -> ChangeType {
        self.change_type
    }

    /// Objective values of `x` at environment time `t`.
    pub fn evaluate(&self, x: &[f64], t: f64) -> Result<Vec<f64>, Error> {
        if x.len() != self.dimension {
            return Err(Error::WrongDimension {
                problem: self.name.as_str(),
                expected: self.dimension,
                got: x.len(),
            });
        }
        for (dimension, (&value, &(lower, upper))) in x.iter().zip(&self.bounds).enumerate() {
            if !(lower..=upper).contains(&value) {
                return Err(Error::OutOfBounds {
                    problem: self.name.as_str(),
                    dimension,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(match self.name {
            ProblemName::Fda1 => {
                let g_t = (0.5 * PI * t).sin();
                let f1 = x[0];
                let g = 1.0 + x[1..].iter().map(|&v| (v - g_t).powi(2)).sum::<f64>();
                vec![f1, g * (1.0 - (f1 / g).sqrt())]
            }
            ProblemName::Fda2 => {
                let h_t = 0.75 + 0.7 * (0.5 * PI * t).sin();
                let f1 = x[0];
                let g = 1.0 + x[1..].iter().map(|&v| v * v).sum::<f64>();
                vec![f1, g * (1.0 - (f1 / g).powf(h_t))]
            }
            ProblemName::Fda3 => {
                let g_t = (0.5 * PI * t).sin().abs();
                let f_t = 10.0_f64.powf(2.0 * (0.5 * PI * t).sin());
                let f1 = x[0].powf(f_t);
                let g = 1.0 + g_t + x[1..].iter().map(|&v| (v - g_t).powi(2)).sum::<f64>();
                vec![f1, g * (1.0 - (f1 / g).sqrt())]
            }
            ProblemName::Fda4 => {
                let g_t = (0.5 * PI * t).sin().abs();
                let g = x[2..].iter().map(|&v| (v - g_t).powi(2)).sum::<f64>();
                sphere_objectives(1.0 + g, x[0], x[1])
            }
            ProblemName::Fda5 => {
                let g_t = (0.5 * PI * t).sin().abs();
                let f_t = 1.0 + 100.0 * (0.5 * PI * t).sin().powi(4);
                let g = g_t + x[2..].iter().map(|&v| (v - g_t).powi(2)).sum::<f64>();
                sphere_objectives(1.0 + g, x[0].powf(f_t), x[1].powf(f_t))
            }
            ProblemName::DMop1 => {
                let h_t = 0.75 * (0.5 * PI * t).sin() + 1.25;
                let f1 = x[0];
                let g = 1.0 + 9.0 * x[1..].iter().map(|&v| v * v).sum::<f64>();
                vec![f1, g * (1.0 - (f1 / g).powf(h_t))]
            }
            ProblemName::DMop2 => {
                let h_t = 0.75 * (0.5 * PI * t).sin() + 1.25;
                let g_t = (0.5 * PI * t).sin().abs();
                let f1 = x[0];
                let g = 1.0 + 9.0 * x[1..].iter().map(|&v| (v - g_t).powi(2)).sum::<f64>();
                vec![f1, g * (1.0 - (f1 / g).powf(h_t))]
            }
            ProblemName::DMop3 => {
                let g_t = (0.5 * PI * t).sin().abs();
                let r = self.front_variable(t);
                let f1 = x[r];
                let g = 1.0
                    + x.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != r)
                        .map(|(_, &v)| (v - g_t).powi(2))
                        .sum::<f64>();
                vec![f1, g * (1.0 - (f1 / g).sqrt())]
            }
        })
    }

    /// Which variable spans dMOP3's front at time `t`. Redrawn per
    /// environment from the instance seed, so runs are reproducible and
    /// independent of evaluation order.
    fn front_variable(&self, t: f64) -> usize {
        let mixed = splitmix64(self.seed ^ t.to_bits());
        (mixed % self.dimension as u64) as usize
    }

    /// `count` points sampled from the analytic Pareto-optimal front at
    /// time `t`.
    ///
    /// Bi-objective fronts are sampled on a uniform `f1` grid; tri-objective
    /// fronts on a `k x k` grid of the spherical parameterization with
    /// `k = ceil(sqrt(count))`, truncated to exactly `count` points.
    pub fn sample_true_pof(&self, t: f64, count: usize) -> Vec<Vec<f64>> {
        assert!(count >= 2, "a front sample needs at least two points");
        match self.name {
            ProblemName::Fda1 | ProblemName::DMop3 => {
                f1_grid(count, |f1| vec![f1, 1.0 - f1.sqrt()])
            }
            ProblemName::Fda2 => {
                let h_t = 0.75 + 0.7 * (0.5 * PI * t).sin();
                f1_grid(count, |f1| vec![f1, 1.0 - f1.powf(h_t)])
            }
            ProblemName::Fda3 => {
                let g_t = (0.5 * PI * t).sin().abs();
                f1_grid(count, |f1| {
                    vec![f1, (1.0 + g_t) * (1.0 - (f1 / (1.0 + g_t)).sqrt())]
                })
            }
            ProblemName::Fda4 => sphere_grid(count, 1.0),
            ProblemName::Fda5 => {
                let g_t = (0.5 * PI * t).sin().abs();
                sphere_grid(count, 1.0 + g_t)
            }
            ProblemName::DMop1 | ProblemName::DMop2 => {
                let h_t = 0.75 * (0.5 * PI * t).sin() + 1.25;
                f1_grid(count, |f1| vec![f1, 1.0 - f1.powf(h_t)])
            }
        }
    }
}

/// The three-objective surface `radius * (cos a cos b, cos a sin b, sin a)`
/// with angles `x1 * pi/2` and `x2 * pi/2`.
fn sphere_objectives(radius: f64, x1: f64, x2: f64) -> Vec<f64> {
    let (a, b) = (0.5 * PI * x1, 0.5 * PI * x2);
    vec![
        radius * a.cos() * b.cos(),
        radius * a.cos() * b.sin(),
        radius * a.sin(),
    ]
}

fn f1_grid(count: usize, front: impl Fn(f64) -> Vec<f64>) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| front(i as f64 / (count - 1) as f64))
        .collect()
}

fn sphere_grid(count: usize, radius: f64) -> Vec<Vec<f64>> {
    let k = (count as f64).sqrt().ceil() as usize;
    let mut points = Vec::with_capacity(count);
    'outer: for i in 0..k {
        for j in 0..k {
            if points.len() == count {
                break 'outer;
            }
            let u = i as f64 / (k - 1) as f64;
            let v = j as f64 / (k - 1) as f64;
            points.push(sphere_objectives(radius, u, v));
        }
    }
    points
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
