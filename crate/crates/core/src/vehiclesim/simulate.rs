use std::fmt::Write as _;

use num_traits::Float;

use super::signal::PiecewiseSignal;
use super::statespace::{build_follower, build_leader, StateSpace};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Parameters of one vehicle-following run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig<F> {
    /// Headway in seconds.
    pub h: F,
    /// Spacing-error decay rate in 1/s.
    pub k: F,
    /// Leader damping in 1/s.
    pub c: F,
    pub horizon: F,
    pub step: F,
    /// Leader `(position, velocity)` at `t = 0`.
    pub leader_initial: [F; 2],
    /// Follower `(position, velocity)` at `t = 0`.
    pub follower_initial: [F; 2],
}

impl<F: Float> Default for ScenarioConfig<F> {
    /// `h = k = 1`, leader damping 0.25, 30 s at 1 ms, leader starting at
    /// `(0, 1)` and follower placed so the spacing error starts at 1.
    fn default() -> Self {
        let c = |x: f64| F::from(x).unwrap();
        ScenarioConfig {
            h: F::one(),
            k: F::one(),
            c: c(0.25),
            horizon: c(30.0),
            step: c(1e-3),
            leader_initial: [F::zero(), F::one()],
            follower_initial: [F::zero(), F::one()],
        }
    }
}

impl<F: Float> ScenarioConfig<F> {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.h, self.k, self.c, self.horizon, self.step]
            .iter()
            .chain(&self.leader_initial)
            .chain(&self.follower_initial)
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidConfig("non-finite parameter".into()));
        }
        if !(self.h > F::zero()) {
            return Err(Error::InvalidConfig("headway h must be positive".into()));
        }
        if !(self.k > F::zero()) {
            return Err(Error::InvalidConfig("gain k must be positive".into()));
        }
        if !(self.step > F::zero()) || !(self.horizon > F::zero()) {
            return Err(Error::InvalidConfig("step and horizon must be positive".into()));
        }
        Ok(())
    }

    /// Keep the follower velocity and move its position so that
    /// `y1 - u1 + h y2 = eps0` at `t = 0`.
    pub fn with_initial_spacing_error(mut self, eps0: F) -> Self {
        let y2 = self.follower_initial[1];
        self.follower_initial[0] = self.leader_initial[0] + eps0 - self.h * y2;
        self
    }

    pub fn initial_spacing_error(&self) -> F {
        self.follower_initial[0] - self.leader_initial[0] + self.h * self.follower_initial[1]
    }

    pub fn steps(&self) -> usize {
        (self.horizon / self.step).round().to_usize().unwrap_or(0)
    }
}

/// Uniformly sampled outputs; `samples[i]` is taken at `i * time_step`.
/// Holds `steps + 1` samples including `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<F> {
    pub time_step: F,
    pub labels: Vec<String>,
    pub samples: Vec<Vec<F>>,
}

impl<F: Float> Trajectory<F> {
    pub fn channel(&self, label: &str) -> Result<Vec<F>> {
        let idx = self
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::MissingChannel(label.to_string()))?;
        Ok(self.samples.iter().map(|s| s[idx]).collect())
    }

    pub fn times(&self) -> Vec<F> {
        (0..self.samples.len())
            .map(|i| F::from(i).unwrap() * self.time_step)
            .collect()
    }
}

impl<F: Float + std::fmt::Display> Trajectory<F> {
    /// CSV with header `t,u1,u2,y1,y2,eps`.
    pub fn to_csv(&self, h: F) -> Result<String> {
        let eps = spacing_error(self, h)?;
        let cols = ["u1", "u2", "y1", "y2"]
            .iter()
            .map(|l| self.channel(l))
            .collect::<Result<Vec<_>>>()?;
        let mut out = String::from("t,u1,u2,y1,y2,eps\n");
        for (i, t) in self.times().into_iter().enumerate() {
            write!(out, "{t}").unwrap();
            for col in &cols {
                write!(out, ",{}", col[i]).unwrap();
            }
            writeln!(out, ",{}", eps[i]).unwrap();
        }
        Ok(out)
    }
}

/// Leader followed by the controlled vehicle, driven by `l`.
pub fn vehicle_cascade<F: Float + Scalar>(cfg: &ScenarioConfig<F>) -> Result<StateSpace<F>> {
    cfg.validate()?;
    build_leader(cfg.c).cascade(&build_follower(cfg.h, cfg.k)?)
}

/// Classical fixed-step RK4 of the cascade. Outputs are labelled
/// `u1, u2, y1, y2`.
pub fn simulate<F: Float + Scalar>(
    sys: &StateSpace<F>,
    l: &PiecewiseSignal<F>,
    cfg: &ScenarioConfig<F>,
) -> Result<Trajectory<F>> {
    cfg.validate()?;
    if sys.n_states() != 4 || sys.n_inputs() != 1 || sys.n_outputs() != 4 {
        return Err(Error::DimensionMismatch(
            "expected the 4-state leader/follower cascade".into(),
        ));
    }
    let n = sys.n_states();
    let dt = cfg.step;
    let half = dt / (F::one() + F::one());
    let six = F::from(6.0).unwrap();
    let two = F::one() + F::one();

    let deriv = |t: F, x: &[F], out: &mut [F]| {
        let u = [l.eval(t)];
        out.iter_mut().for_each(|o| *o = F::zero());
        sys.a.mul_vec_into(x, out);
        sys.b.mul_vec_into(&u, out);
    };
    let output = |t: F, x: &[F]| {
        let mut y = vec![F::zero(); sys.n_outputs()];
        sys.c.mul_vec_into(x, &mut y);
        sys.d.mul_vec_into(&[l.eval(t)], &mut y);
        y
    };

    let mut x: Vec<F> = cfg.leader_initial.iter().chain(&cfg.follower_initial).copied().collect();
    let steps = cfg.steps();
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(output(F::zero(), &x));

    let (mut k1, mut k2, mut k3, mut k4) = (vec![F::zero(); n], vec![F::zero(); n], vec![F::zero(); n], vec![F::zero(); n]);
    let mut tmp = vec![F::zero(); n];
    for i in 0..steps {
        let t = F::from(i).unwrap() * dt;
        deriv(t, &x, &mut k1);
        for j in 0..n {
            tmp[j] = x[j] + half * k1[j];
        }
        deriv(t + half, &tmp, &mut k2);
        for j in 0..n {
            tmp[j] = x[j] + half * k2[j];
        }
        deriv(t + half, &tmp, &mut k3);
        for j in 0..n {
            tmp[j] = x[j] + dt * k3[j];
        }
        deriv(t + dt, &tmp, &mut k4);
        for j in 0..n {
            x[j] = x[j] + dt / six * (k1[j] + two * k2[j] + two * k3[j] + k4[j]);
        }
        samples.push(output(F::from(i + 1).unwrap() * dt, &x));
    }

    Ok(Trajectory {
        time_step: dt,
        labels: ["u1", "u2", "y1", "y2"].iter().map(|s| s.to_string()).collect(),
        samples,
    })
}

/// `eps = y1 - u1 + h y2` at every sample.
pub fn spacing_error<F: Float>(traj: &Trajectory<F>, h: F) -> Result<Vec<F>> {
    let u1 = traj.channel("u1")?;
    let y1 = traj.channel("y1")?;
    let y2 = traj.channel("y2")?;
    Ok(u1
        .iter()
        .zip(&y1)
        .zip(&y2)
        .map(|((&u1, &y1), &y2)| y1 - u1 + h * y2)
        .collect())
}

/// `max_t |eps(t) - eps(0) e^{-k t}|`.
pub fn max_decay_deviation<F: Float>(eps: &[F], k: F, step: F) -> F {
    let Some(&eps0) = eps.first() else {
        return F::zero();
    };
    eps.iter()
        .enumerate()
        .map(|(i, &e)| (e - eps0 * (-k * F::from(i).unwrap() * step).exp()).abs())
        .fold(F::zero(), F::max)
}

/// Every sample within `rel_tol * max(|eps(0)|, 1)` of `eps(0) e^{-k t}`.
pub fn check_exponential_decay<F: Float>(eps: &[F], k: F, step: F, rel_tol: F) -> bool {
    let Some(&eps0) = eps.first() else {
        return false;
    };
    let bound = rel_tol * eps0.abs().max(F::one());
    max_decay_deviation(eps, k, step) <= bound
}
