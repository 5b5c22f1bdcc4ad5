use num_complex::Complex64;

use crate::error::{Error, Result};

/// A swap-and-shift map `(z_1..z_k) ↦ (z_{perm(1)} + s_1, …, z_{perm(k)} + s_k)`,
/// acting on functions by pull-back `f ↦ f ∘ φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMap {
    perm: Vec<usize>,
    shift: Vec<Complex64>,
}

impl PointMap {
    pub fn new(perm: Vec<usize>, shift: Vec<Complex64>) -> Result<Self> {
        if perm.len() != shift.len() {
            return Err(Error::ArityMismatch {
                left: perm.len(),
                right: shift.len(),
            });
        }
        let k = perm.len();
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || seen[p] {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(PointMap { perm, shift })
    }

    pub fn identity(arity: usize) -> Self {
        PointMap {
            perm: (0..arity).collect(),
            shift: vec![Complex64::new(0.0, 0.0); arity],
        }
    }

    /// `(z_1, z_2) ↦ (z_2, z_1)`
    pub fn swap() -> Self {
        PointMap {
            perm: vec![1, 0],
            shift: vec![Complex64::new(0.0, 0.0); 2],
        }
    }

    /// Pure translation by `s`.
    pub fn shift(s: Vec<Complex64>) -> Self {
        PointMap {
            perm: (0..s.len()).collect(),
            shift: s,
        }
    }

    /// `(z_1, z_2) ↦ (z_2 + s_1, z_1 + s_2)`
    pub fn swap_shift(s1: Complex64, s2: Complex64) -> Self {
        PointMap {
            perm: vec![1, 0],
            shift: vec![s1, s2],
        }
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn shifts(&self) -> &[Complex64] {
        &self.shift
    }

    pub fn act(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.perm
            .iter()
            .zip(&self.shift)
            .map(|(&p, &s)| z[p] + s)
            .collect()
    }

    /// The map `z ↦ other(self(z))`.
    pub fn then(&self, other: &PointMap) -> PointMap {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let shift = other
            .perm
            .iter()
            .zip(&other.shift)
            .map(|(&p, &s)| self.shift[p] + s)
            .collect();
        PointMap { perm, shift }
    }

    /// Embed a two-variable map into three variables on slots `i < j`
    /// (0-based), fixing the remaining slot.
    pub(crate) fn lift(&self, slots: [usize; 2]) -> PointMap {
        let mut out = PointMap::identity(3);
        for (a, &slot) in slots.iter().enumerate() {
            out.perm[slot] = slots[self.perm[a]];
            out.shift[slot] = self.shift[a];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn then_matches_sequential_action() {
        let a = PointMap::new(vec![2, 0, 1], vec![c(0.1, 0.0), c(0.0, 0.3), c(-1.0, 0.2)]).unwrap();
        let b = PointMap::new(vec![1, 2, 0], vec![c(0.5, -0.1), c(0.2, 0.0), c(0.0, 0.0)]).unwrap();
        let z = [c(1.0, 2.0), c(3.0, -1.0), c(0.25, 0.5)];
        let seq = b.act(&a.act(&z));
        let comp = a.then(&b).act(&z);
        for (x, y) in seq.iter().zip(&comp) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let s = PointMap::swap();
        assert_eq!(s.then(&s), PointMap::identity(2));
    }

    #[test]
    fn lift_fixes_the_third_slot() {
        let m = PointMap::swap_shift(c(0.5, 0.0), c(-0.5, 0.0)).lift([0, 2]);
        let z = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        assert_eq!(m.act(&z), vec![c(3.5, 0.0), c(2.0, 0.0), c(0.5, 0.0)]);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(PointMap::new(vec![0, 0], vec![c(0.0, 0.0); 2]).is_err());
        assert!(PointMap::new(vec![0, 1], vec![c(0.0, 0.0)]).is_err());
    }
}
