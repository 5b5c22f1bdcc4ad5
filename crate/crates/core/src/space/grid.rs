use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::special::Lattice;

/// Default distance kept from every pole locus.
pub const POLE_DELTA: f64 = 1e-3;

const MAX_RESAMPLES: usize = 10_000;

/// The set `{z : Σ c_i z_i − offset ∈ lattice}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleLocus {
    pub coeffs: Vec<f64>,
    pub offset: Complex64,
    pub lattice: Lattice,
}

impl PoleLocus {
    /// `z_i − z_j − offset ∈ lattice`
    pub fn difference(
        arity: usize,
        i: usize,
        j: usize,
        offset: Complex64,
        lattice: Lattice,
    ) -> Self {
        let mut coeffs = vec![0.0; arity];
        coeffs[i] += 1.0;
        coeffs[j] -= 1.0;
        PoleLocus {
            coeffs,
            offset,
            lattice,
        }
    }

    pub fn distance(&self, z: &[Complex64]) -> f64 {
        let u: Complex64 = self
            .coeffs
            .iter()
            .zip(z)
            .map(|(c, x)| *c * x)
            .sum::<Complex64>()
            - self.offset;
        self.lattice.distance(u)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    pub points: Vec<Vec<Complex64>>,
    pub delta: f64,
}

impl SampleGrid {
    /// Points with every coordinate in `Re ∈ [0,1], Im ∈ [−0.2, 0.2]`,
    /// resampled until each keeps distance `delta` from every locus.
    pub fn random<R: Rng>(
        arity: usize,
        count: usize,
        loci: &[PoleLocus],
        delta: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let mut points = Vec::with_capacity(count);
        for _ in 0..count {
            let mut tries = 0;
            loop {
                let p: Vec<Complex64> = (0..arity)
                    .map(|_| {
                        Complex64::new(rng.random_range(0.0..1.0), rng.random_range(-0.2..0.2))
                    })
                    .collect();
                if loci.iter().all(|l| l.distance(&p) >= delta) {
                    points.push(p);
                    break;
                }
                tries += 1;
                if tries > MAX_RESAMPLES {
                    return Err(Error::Pole(
                        "could not sample a point away from the declared pole loci".into(),
                    ));
                }
            }
        }
        Ok(SampleGrid { points, delta })
    }

    pub fn from_points(points: Vec<Vec<Complex64>>, delta: f64) -> Self {
        SampleGrid { points, delta }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// First point violating the guard, if any.
    pub fn violation(&self, loci: &[PoleLocus]) -> Option<usize> {
        self.points
            .iter()
            .position(|p| loci.iter().any(|l| l.distance(p) < self.delta))
    }
}
