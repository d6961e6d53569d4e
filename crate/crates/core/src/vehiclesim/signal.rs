use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignalShape<F> {
    Constant(F),
    /// `offset + amplitude * sin(frequency * t + phase)`
    Sinusoid { amplitude: F, frequency: F, phase: F, offset: F },
}

impl<F: Float> SignalShape<F> {
    pub fn eval(&self, t: F) -> F {
        match *self {
            SignalShape::Constant(c) => c,
            SignalShape::Sinusoid { amplitude, frequency, phase, offset } => {
                offset + amplitude * (frequency * t + phase).sin()
            }
        }
    }
}

/// A piece covers `(previous end, end]`; the first piece starts at `-inf`
/// and a piece without an end runs forever.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece<F> {
    pub end: Option<F>,
    pub shape: SignalShape<F>,
}

/// Scalar input signal defined by closed-form segments.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseSignal<F> {
    pieces: Vec<Piece<F>>,
}

impl<F: Float> PiecewiseSignal<F> {
    pub fn new(pieces: Vec<Piece<F>>) -> Result<Self> {
        let Some((last, init)) = pieces.split_last() else {
            return Err(Error::InvalidConfig("signal has no pieces".into()));
        };
        if last.end.is_some() {
            return Err(Error::InvalidConfig("last signal piece must be unbounded".into()));
        }
        let ends: Vec<F> = init
            .iter()
            .map(|p| p.end.ok_or_else(|| Error::InvalidConfig("only the last piece may be unbounded".into())))
            .collect::<Result<_>>()?;
        if ends.windows(2).any(|w| !(w[0] < w[1])) || ends.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidConfig("breakpoints must be finite and strictly increasing".into()));
        }
        Ok(PiecewiseSignal { pieces })
    }

    pub fn constant(c: F) -> Self {
        PiecewiseSignal { pieces: vec![Piece { end: None, shape: SignalShape::Constant(c) }] }
    }

    pub fn pieces(&self) -> &[Piece<F>] {
        &self.pieces
    }

    pub fn eval(&self, t: F) -> F {
        self.pieces
            .iter()
            .find(|p| p.end.is_none_or(|e| t <= e))
            .expect("last piece is unbounded")
            .shape
            .eval(t)
    }
}

impl<F: Float + FloatConst> PiecewiseSignal<F> {
    /// Leader excitation of the vehicle-following demonstration: `1` on
    /// `[0, 1]`, then `1/2 + sin(3π/8 t + 3π/16)`.
    pub fn vehicle_demo() -> Self {
        let c = |x: f64| F::from(x).unwrap();
        let pi = F::PI();
        PiecewiseSignal {
            pieces: vec![
                Piece { end: Some(F::one()), shape: SignalShape::Constant(F::one()) },
                Piece {
                    end: None,
                    shape: SignalShape::Sinusoid {
                        amplitude: F::one(),
                        frequency: c(3.0) * pi / c(8.0),
                        phase: c(3.0) * pi / c(16.0),
                        offset: c(0.5),
                    },
                },
            ],
        }
    }
}
