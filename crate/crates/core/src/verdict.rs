//! Sampled verdicts, sampling grids and the deterministic worst-case
//! reduction shared by the checks.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

/// Per-sample absolute error budget before degree scaling.
pub const BASE_BUDGET: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    HoldsSampled,
    Fails,
    Inconclusive,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::HoldsSampled => "HOLDS_SAMPLED",
            Status::Fails => "FAILS",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }

    /// Exit code contribution: HOLDS 0, FAILS 1, INCONCLUSIVE 2.
    pub fn code(&self) -> i32 {
        match self {
            Status::HoldsSampled => 0,
            Status::Fails => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    /// Smallest slack of the checked inequality over the samples.
    /// Negative means the inequality was violated somewhere.
    pub margin: f64,
    /// Where the violation happened; only set on `Fails`.
    pub witness: Option<Complex64>,
    pub samples: usize,
    /// Budget used to classify the margin.
    pub budget: f64,
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds(margin: f64, samples: usize, budget: f64) -> Self {
        Verdict {
            status: Status::HoldsSampled,
            margin,
            witness: None,
            samples,
            budget,
            note: None,
        }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Self {
        Verdict {
            status: Status::Inconclusive,
            margin: f64::NAN,
            witness: None,
            samples: 0,
            budget: 0.0,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::HoldsSampled
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    /// Worst of several verdicts: FAILS over INCONCLUSIVE over HOLDS, then
    /// smaller margin.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let rank = |s: Status| match s {
            Status::HoldsSampled => 0,
            Status::Inconclusive => 1,
            Status::Fails => 2,
        };
        let mut samples = 0;
        let mut worst: Option<Verdict> = None;
        for v in verdicts {
            samples += v.samples;
            worst = Some(match worst {
                None => v,
                Some(w) => {
                    let key = (rank(v.status), -v.margin);
                    let wkey = (rank(w.status), -w.margin);
                    if key.0 > wkey.0 || (key.0 == wkey.0 && key.1 > wkey.1) {
                        v
                    } else {
                        w
                    }
                }
            });
        }
        let mut w = worst.unwrap_or_else(|| Verdict::holds(f64::INFINITY, 0, 0.0));
        w.samples = samples;
        w
    }
}

/// Budget for a polynomial of the given degree.
pub fn degree_budget(degree: usize) -> f64 {
    BASE_BUDGET * (degree as f64 + 1.0)
}

/// Sample points in the closed unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGrid {
    pub radii: Vec<f64>,
    pub angles_per_radius: usize,
}

impl Default for BoundaryGrid {
    fn default() -> Self {
        BoundaryGrid::geometric(64, 1024)
    }
}

impl BoundaryGrid {
    /// `radii` radii `1 - 10^{-6 (j+1)/radii}`, ending at `1 - 1e-6`.
    pub fn geometric(radii: usize, angles: usize) -> Self {
        let radii = (0..radii)
            .map(|j| 1.0 - 10f64.powf(-6.0 * (j + 1) as f64 / radii as f64))
            .collect();
        BoundaryGrid {
            radii,
            angles_per_radius: angles,
        }
    }

    /// Both dimensions doubled.
    pub fn refined(&self) -> Self {
        BoundaryGrid::geometric(2 * self.radii.len(), 2 * self.angles_per_radius)
    }

    /// Angles `2 pi (i + 1/2) / m`; the half step keeps `z = 1` off the grid.
    pub fn angles(&self) -> Vec<f64> {
        let m = self.angles_per_radius as f64;
        (0..self.angles_per_radius)
            .map(|i| 2.0 * PI * (i as f64 + 0.5) / m)
            .collect()
    }

    /// Points ordered by radius then angle; `unit_circle` appends `r = 1`.
    pub fn points(&self, unit_circle: bool) -> Vec<GridPoint> {
        let angles = self.angles();
        let mut radii = self.radii.clone();
        if unit_circle {
            radii.push(1.0);
        }
        radii
            .iter()
            .flat_map(|&r| angles.iter().map(move |&t| GridPoint { r, theta: t }))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub r: f64,
    pub theta: f64,
}

impl GridPoint {
    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

/// What a check found at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample {
    /// Slack of the inequality (>= 0 when it holds).
    Slack(f64),
    /// The quantity is undefined here (e.g. a zero under a fractional power).
    Undefined,
}

/// Evaluate `f` at every point in parallel and reduce to a verdict.
///
/// Violations up to `budget` count as numerical noise; violations beyond
/// `10 * budget` are FAILS; anything in between is INCONCLUSIVE. Ties in
/// the worst slack go to the smaller angle, then the smaller radius.
pub fn reduce_samples(points: &[GridPoint], budget: f64, f: impl Fn(&GridPoint) -> Sample + Sync) -> Verdict {
    let results: Vec<Sample> = points.par_iter().map(&f).collect();
    let mut worst: Option<(f64, GridPoint)> = None;
    let mut undefined: Option<GridPoint> = None;
    for (p, s) in points.iter().zip(&results) {
        match *s {
            Sample::Undefined => {
                if undefined.is_none() {
                    undefined = Some(*p);
                }
            }
            Sample::Slack(v) => {
                let replace = match worst {
                    None => true,
                    Some((w, q)) => match v.total_cmp(&w) {
                        Ordering::Less => true,
                        Ordering::Equal => (p.theta, p.r) < (q.theta, q.r),
                        Ordering::Greater => false,
                    },
                };
                if replace {
                    worst = Some((v, *p));
                }
            }
        }
    }
    let samples = points.len();
    let Some((margin, at)) = worst else {
        return Verdict {
            samples,
            budget,
            ..Verdict::inconclusive("no evaluable samples")
        };
    };
    if margin.is_nan() {
        return Verdict {
            samples,
            budget,
            margin,
            ..Verdict::inconclusive(format!("NaN at r = {}, theta = {}", at.r, at.theta))
        };
    }
    if margin < -10.0 * budget {
        return Verdict {
            status: Status::Fails,
            margin,
            witness: Some(at.z()),
            samples,
            budget,
            note: None,
        };
    }
    if let Some(u) = undefined {
        return Verdict {
            margin,
            samples,
            budget,
            ..Verdict::inconclusive(format!(
                "undefined at r = {}, theta = {}",
                u.r, u.theta
            ))
        };
    }
    if margin < -budget {
        return Verdict {
            status: Status::Inconclusive,
            margin,
            witness: None,
            samples,
            budget,
            note: Some("violation within ten times the error budget".into()),
        };
    }
    Verdict::holds(margin, samples, budget)
}

/// Schwarz-form test of `G < (1-z)^p`: slack `|z| - |1 - G^{1/p}|`.
///
/// Principal branches are exact here for `0 < |p| < 2` because
/// `(1-w)^p` keeps its argument inside `(-pi, pi)` on the disc.
pub fn power_subordination_slack(z: Complex64, g: Complex64, p: f64) -> Sample {
    if g == Complex64::new(0.0, 0.0) && p < 0.0 {
        return Sample::Undefined;
    }
    if !g.re.is_finite() || !g.im.is_finite() {
        return Sample::Undefined;
    }
    let w = g.powf(1.0 / p);
    let h = Complex64::new(1.0, 0.0) - w;
    Sample::Slack(z.norm() - h.norm())
}
