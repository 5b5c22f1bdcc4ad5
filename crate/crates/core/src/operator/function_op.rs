use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::point_map::PointMap;
use crate::error::{Error, Result};
use crate::space::{PoleLocus, SampleGrid};

/// A coefficient function of the operator's variables.
pub type CoeffFn = Arc<dyn Fn(&[Complex64]) -> Result<Complex64> + Send + Sync>;

/// `coeff(z) · φ*`, with the loci where `coeff` is singular.
#[derive(Clone)]
pub struct OperatorTerm {
    pub coeff: CoeffFn,
    pub map: PointMap,
    pub loci: Vec<PoleLocus>,
}

impl fmt::Debug for OperatorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorTerm")
            .field("map", &self.map)
            .field("loci", &self.loci)
            .finish_non_exhaustive()
    }
}

impl PoleLocus {
    /// The locus of `z ↦ L(φ(z))`.
    pub(crate) fn pull_back(&self, map: &PointMap) -> PoleLocus {
        let mut coeffs = vec![0.0; map.arity()];
        let mut offset = self.offset;
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[map.perm()[i]] += c;
            offset -= c * map.shifts()[i];
        }
        PoleLocus {
            coeffs,
            offset,
            lattice: self.lattice,
        }
    }

    fn lift(&self, slots: [usize; 2]) -> PoleLocus {
        let mut coeffs = vec![0.0; 3];
        coeffs[slots[0]] = self.coeffs[0];
        coeffs[slots[1]] = self.coeffs[1];
        PoleLocus {
            coeffs,
            offset: self.offset,
            lattice: self.lattice,
        }
    }
}

/// A finite sum `Σ c_t(z) φ_t*` acting on functions of 2 or 3 variables.
#[derive(Clone, Debug)]
pub struct FunctionOperator {
    arity: usize,
    terms: Vec<OperatorTerm>,
}

impl FunctionOperator {
    pub fn new(arity: usize, terms: Vec<OperatorTerm>) -> Result<Self> {
        for t in &terms {
            if t.map.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: t.map.arity(),
                });
            }
        }
        Ok(FunctionOperator { arity, terms })
    }

    /// The operator `f ↦ f ∘ map`.
    pub fn from_map(map: PointMap) -> Self {
        let one: CoeffFn = Arc::new(|_| Ok(Complex64::new(1.0, 0.0)));
        FunctionOperator {
            arity: map.arity(),
            terms: vec![OperatorTerm {
                coeff: one,
                map,
                loci: Vec::new(),
            }],
        }
    }

    pub fn identity(arity: usize) -> Self {
        Self::from_map(PointMap::identity(arity))
    }

    /// `P f(z₁, z₂) = f(z₂, z₁)`
    pub fn swap() -> Self {
        Self::from_map(PointMap::swap())
    }

    /// `f(z₁, z₂) ↦ f(z₁ + s, z₂ − s)`
    pub fn opposite_shift(s: Complex64) -> Self {
        Self::from_map(PointMap::shift(vec![s, -s]))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    /// Every declared pole locus, deduplicated.
    pub fn loci(&self) -> Vec<PoleLocus> {
        let mut out: Vec<PoleLocus> = Vec::new();
        for l in self.terms.iter().flat_map(|t| &t.loci) {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }

    /// `(op·f)(z)`
    pub fn eval(
        &self,
        f: &dyn Fn(&[Complex64]) -> Complex64,
        z: &[Complex64],
    ) -> Result<Complex64> {
        if z.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: z.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            acc += (t.coeff)(z)? * f(&t.map.act(z));
        }
        Ok(acc)
    }

    /// `op·f` at every grid point; points closer than the grid's δ to a
    /// pole locus are rejected.
    pub fn apply(
        &self,
        f: &dyn Fn(&[Complex64]) -> Complex64,
        grid: &SampleGrid,
    ) -> Result<Vec<Complex64>> {
        if let Some(i) = grid.violation(&self.loci()) {
            return Err(Error::Pole(format!(
                "sample point {i} lies within {} of a pole locus",
                grid.delta
            )));
        }
        grid.points.iter().map(|p| self.eval(f, p)).collect()
    }

    /// The product with `apply(compose(a, b), f) = apply(a, apply(b, f))`.
    pub fn compose(a: &FunctionOperator, b: &FunctionOperator) -> Result<FunctionOperator> {
        if a.arity != b.arity {
            return Err(Error::ArityMismatch {
                left: a.arity,
                right: b.arity,
            });
        }
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for ta in &a.terms {
            for tb in &b.terms {
                let (ca, cb, ma) = (ta.coeff.clone(), tb.coeff.clone(), ta.map.clone());
                let coeff: CoeffFn = Arc::new(move |z| Ok(ca(z)? * cb(&ma.act(z))?));
                let mut loci = ta.loci.clone();
                loci.extend(tb.loci.iter().map(|l| l.pull_back(&ta.map)));
                terms.push(OperatorTerm {
                    coeff,
                    map: ta.map.then(&tb.map),
                    loci,
                });
            }
        }
        Ok(FunctionOperator {
            arity: a.arity,
            terms,
        })
    }

    /// `R_{ij}`: a two-variable operator acting on variables `i < j` of
    /// three (1-based, as in `R₁₃`).
    pub fn lift(&self, i: usize, j: usize) -> Result<FunctionOperator> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch {
                left: 2,
                right: self.arity,
            });
        }
        if !(1 <= i && i < j && j <= 3) {
            return Err(Error::BadSlots { i, j });
        }
        let slots = [i - 1, j - 1];
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let c = t.coeff.clone();
                let coeff: CoeffFn = Arc::new(move |z| c(&[z[slots[0]], z[slots[1]]]));
                OperatorTerm {
                    coeff,
                    map: t.map.lift(slots),
                    loci: t.loci.iter().map(|l| l.lift(slots)).collect(),
                }
            })
            .collect();
        Ok(FunctionOperator { arity: 3, terms })
    }

    pub fn scale(&self, s: Complex64) -> FunctionOperator {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let c = t.coeff.clone();
                OperatorTerm {
                    coeff: Arc::new(move |z| Ok(s * c(z)?)),
                    map: t.map.clone(),
                    loci: t.loci.clone(),
                }
            })
            .collect();
        FunctionOperator {
            arity: self.arity,
            terms,
        }
    }

    pub fn sum(&self, other: &FunctionOperator) -> Result<FunctionOperator> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(FunctionOperator {
            arity: self.arity,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::Lattice;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f2(z: &[Complex64]) -> Complex64 {
        (0.3 * z[0]).exp() * (z[1] * z[1] + c(0.5, 0.1) * z[0])
    }

    fn f3(z: &[Complex64]) -> Complex64 {
        z[0] * z[1] * z[2] + (z[0] - 2.0 * z[2]).exp()
    }

    /// A generic two-term operator with a singular coefficient.
    fn generic(a: Complex64, s: Complex64) -> FunctionOperator {
        let t1 = OperatorTerm {
            coeff: Arc::new(move |z: &[Complex64]| Ok(a / (z[0] - z[1] - 0.1))),
            map: PointMap::swap_shift(s, -s),
            loci: vec![PoleLocus::difference(2, 0, 1, c(0.1, 0.0), Lattice::Origin)],
        };
        let t2 = OperatorTerm {
            coeff: Arc::new(move |z: &[Complex64]| Ok(z[0] + a * z[1])),
            map: PointMap::shift(vec![s * 2.0, c(0.0, 0.3)]),
            loci: Vec::new(),
        };
        FunctionOperator::new(2, vec![t1, t2]).unwrap()
    }

    fn pts2() -> Vec<[Complex64; 2]> {
        vec![
            [c(0.3, 0.1), c(0.9, -0.1)],
            [c(0.7, 0.0), c(0.2, 0.15)],
            [c(0.05, -0.2), c(0.5, 0.05)],
        ]
    }

    #[test]
    fn identity_and_swap() {
        let id = FunctionOperator::identity(2);
        let p = FunctionOperator::swap();
        let pp = FunctionOperator::compose(&p, &p).unwrap();
        for z in pts2() {
            assert_eq!(id.eval(&f2, &z).unwrap(), f2(&z));
            assert_eq!(p.eval(&f2, &z).unwrap(), f2(&[z[1], z[0]]));
            assert_eq!(pp.eval(&f2, &z).unwrap(), f2(&z));
        }
    }

    #[test]
    fn shifts_add() {
        let (s, t) = (c(0.2, 0.1), c(-0.05, 0.3));
        let st = FunctionOperator::compose(
            &FunctionOperator::opposite_shift(s),
            &FunctionOperator::opposite_shift(t),
        )
        .unwrap();
        let direct = FunctionOperator::opposite_shift(s + t);
        for z in pts2() {
            let a = st.eval(&f2, &z).unwrap();
            let b = direct.eval(&f2, &z).unwrap();
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn compose_is_nested_application() {
        let a = generic(c(1.3, -0.2), c(0.11, 0.0));
        let b = generic(c(-0.4, 0.9), c(0.0, 0.07));
        let ab = FunctionOperator::compose(&a, &b).unwrap();
        assert_eq!(ab.terms().len(), 4);
        let bf = |z: &[Complex64]| b.eval(&f2, z).unwrap();
        for z in pts2() {
            let x = ab.eval(&f2, &z).unwrap();
            let y = a.eval(&bf, &z).unwrap();
            assert!((x - y).norm() <= 1e-12 * y.norm());
        }
    }

    #[test]
    fn composed_loci_are_pulled_back() {
        let a = generic(c(1.0, 0.0), c(0.2, 0.0));
        let b = generic(c(1.0, 0.0), c(0.0, 0.0));
        let ab = FunctionOperator::compose(&a, &b).unwrap();
        // b's coefficient z₁ − z₂ − 0.1 after a's swap-shift by ±0.2 is
        // (z₂ + 0.2) − (z₁ − 0.2) − 0.1, singular on z₁ − z₂ = 0.3
        let z = [c(0.5, 0.0), c(0.2, 0.0)];
        assert!(ab.loci().iter().any(|l| l.distance(&z) < 1e-15));
    }

    #[test]
    fn lift_acts_on_the_right_slots() {
        let p12 = FunctionOperator::swap().lift(1, 2).unwrap();
        let p13 = FunctionOperator::swap().lift(1, 3).unwrap();
        let z = [c(0.1, 0.0), c(0.2, 0.1), c(0.7, -0.1)];
        assert_eq!(p12.eval(&f3, &z).unwrap(), f3(&[z[1], z[0], z[2]]));
        assert_eq!(p13.eval(&f3, &z).unwrap(), f3(&[z[2], z[1], z[0]]));
        let id = FunctionOperator::identity(2).lift(2, 3).unwrap();
        assert_eq!(id.eval(&f3, &z).unwrap(), f3(&z));
        assert!(matches!(
            FunctionOperator::swap().lift(2, 1),
            Err(Error::BadSlots { .. })
        ));
        assert!(matches!(
            FunctionOperator::swap().lift(0, 2),
            Err(Error::BadSlots { .. })
        ));
    }

    #[test]
    fn lift_respects_composition() {
        let a = generic(c(1.3, -0.2), c(0.11, 0.0));
        let b = generic(c(-0.4, 0.9), c(0.0, 0.07));
        let z = [c(0.1, 0.0), c(0.6, 0.1), c(0.3, -0.15)];
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let l = FunctionOperator::compose(&a, &b)
                .unwrap()
                .lift(i, j)
                .unwrap();
            let r =
                FunctionOperator::compose(&a.lift(i, j).unwrap(), &b.lift(i, j).unwrap()).unwrap();
            let (x, y) = (l.eval(&f3, &z).unwrap(), r.eval(&f3, &z).unwrap());
            assert!((x - y).norm() <= 1e-13 * x.norm());
        }
    }

    #[test]
    fn apply_refuses_points_on_a_locus() {
        let a = generic(c(1.0, 0.0), c(0.0, 0.0));
        let grid = SampleGrid::from_points(vec![vec![c(0.6, 0.0), c(0.5, 0.0)]], 1e-3);
        assert!(matches!(a.apply(&f2, &grid), Err(Error::Pole(_))));
    }

    #[test]
    fn arity_mismatch() {
        let e = FunctionOperator::compose(
            &FunctionOperator::identity(2),
            &FunctionOperator::identity(3),
        );
        assert!(matches!(e, Err(Error::ArityMismatch { .. })));
    }
}
