//! Classification of a spectrum into real clusters and complex-conjugate pairs
//! with matching multiplicities, and the involutory swap operator T built from
//! that classification.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::spectral::Eigensystem;

/// Partition of eigenvalue clusters. All entries are cluster indices into
/// [`Eigensystem::clusters`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumPairing {
    pub real: Vec<usize>,
    /// `(plus, minus)`: Im > 0 cluster first, its conjugate partner second.
    pub pairs: Vec<(usize, usize)>,
    pub unmatched: Vec<usize>,
    /// Absolute tolerance used, tol·max(1, ‖H‖).
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairTag {
    Real,
    Plus,
    Minus,
    Unmatched,
}

impl SpectrumPairing {
    /// Tag and partner cluster for a given cluster.
    pub fn tag(&self, cluster: usize) -> (PairTag, Option<usize>) {
        if self.real.contains(&cluster) {
            return (PairTag::Real, None);
        }
        for &(p, m) in &self.pairs {
            if p == cluster {
                return (PairTag::Plus, Some(m));
            }
            if m == cluster {
                return (PairTag::Minus, Some(p));
            }
        }
        (PairTag::Unmatched, None)
    }

    pub fn all_real(&self) -> bool {
        self.pairs.is_empty() && self.unmatched.is_empty()
    }
}

/// Greedy nearest-conjugate matching of the clusters of `e`.
///
/// A cluster is real when |Im E| ≤ tol·max(1, ‖H‖). Each Im > 0 cluster takes
/// the closest unused Im < 0 cluster whose conjugate lies within the same
/// tolerance; if the multiplicities differ both go to `unmatched`.
pub fn classify_spectrum(e: &Eigensystem, tol: f64) -> SpectrumPairing {
    let abs_tol = tol * e.norm.max(1.0);
    let reps: Vec<Complex64> = (0..e.clusters.len()).map(|c| e.cluster_value(c)).collect();

    let mut real = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (c, z) in reps.iter().enumerate() {
        if z.im.abs() <= abs_tol {
            real.push(c);
        } else if z.im > 0.0 {
            plus.push(c);
        } else {
            minus.push(c);
        }
    }

    let mut used = vec![false; reps.len()];
    let mut pairs = Vec::new();
    let mut unmatched = Vec::new();
    for &p in &plus {
        let target = reps[p].conj();
        let best = minus
            .iter()
            .copied()
            .filter(|&m| !used[m])
            .map(|m| (m, (reps[m] - target).norm()))
            .filter(|&(_, d)| d <= abs_tol)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((m, _)) => {
                used[m] = true;
                if e.clusters[p].len() == e.clusters[m].len() {
                    pairs.push((p, m));
                } else {
                    unmatched.push(p);
                    unmatched.push(m);
                }
            }
            None => unmatched.push(p),
        }
    }
    unmatched.extend(minus.iter().copied().filter(|&m| !used[m]));
    unmatched.sort_unstable();

    SpectrumPairing {
        real,
        pairs,
        unmatched,
        tol: abs_tol,
    }
}

/// The spectral condition for (weak) pseudo-Hermiticity: every non-real
/// cluster has a conjugate partner of equal multiplicity.
pub fn is_ph_spectrum(p: &SpectrumPairing) -> bool {
    p.unmatched.is_empty()
}

/// Index permutation exchanging the a-th member of each plus cluster with the
/// a-th member of its partner; fixed on real clusters.
pub fn swap_permutation(e: &Eigensystem, p: &SpectrumPairing) -> Result<Vec<usize>> {
    if !is_ph_spectrum(p) {
        return Err(Error::SpectrumNotPaired {
            unmatched: p.unmatched.len(),
        });
    }
    let mut perm: Vec<usize> = (0..e.dim()).collect();
    for &(plus, minus) in &p.pairs {
        let (a, b) = (&e.clusters[plus], &e.clusters[minus]);
        if a.len() != b.len() {
            return Err(Error::SpectrumNotPaired { unmatched: 2 });
        }
        for (&i, &j) in a.iter().zip(b) {
            perm[i] = j;
            perm[j] = i;
        }
    }
    Ok(perm)
}

/// T = Σ_real |ψ⟩⟨φ| + Σ_pairs (|ψ₋⟩⟨φ₊| + |ψ₊⟩⟨φ₋|).
pub fn build_t(e: &Eigensystem, p: &SpectrumPairing) -> Result<ComplexMatrix> {
    let perm = swap_permutation(e, p)?;
    let n = e.dim();
    let permuted = ComplexMatrix::from_fn(n, n, |r, c| e.right[(r, perm[c])]);
    Ok(permuted * &e.left_adjoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{self, diag, from_real_rows};
    use crate::spectral::{conjugated_spectrum, eigensystem, DEFAULT_TOL};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn values(e: &Eigensystem, clusters: &[usize]) -> Vec<Complex64> {
        clusters.iter().map(|&k| e.cluster_value(k)).collect()
    }

    #[test]
    fn exact_conjugates_pair_up() {
        let e = eigensystem(
            &diag(&[c(2.0, 1.0), c(1.0, 0.0), c(2.0, -1.0)]),
            DEFAULT_TOL,
        )
        .unwrap();
        let p = classify_spectrum(&e, DEFAULT_TOL);
        assert_eq!(values(&e, &p.real), vec![c(1.0, 0.0)]);
        assert_eq!(p.pairs.len(), 1);
        let (plus, minus) = p.pairs[0];
        assert_eq!(e.cluster_value(plus), c(2.0, 1.0));
        assert_eq!(e.cluster_value(minus), c(2.0, -1.0));
        assert!(p.unmatched.is_empty());
        assert!(is_ph_spectrum(&p));
    }

    #[test]
    fn multiplicity_mismatch_is_unmatched() {
        let e = eigensystem(
            &diag(&[c(0.0, 1.0), c(0.0, 1.0), c(0.0, -1.0)]),
            DEFAULT_TOL,
        )
        .unwrap();
        let p = classify_spectrum(&e, DEFAULT_TOL);
        assert_eq!(p.unmatched.len(), 2);
        assert!(p.pairs.is_empty());
        assert!(!is_ph_spectrum(&p));
        assert!(matches!(
            build_t(&e, &p),
            Err(Error::SpectrumNotPaired { .. })
        ));
    }

    #[test]
    fn tiny_imaginary_parts_count_as_real() {
        let e = eigensystem(&diag(&[c(3.0, 1e-12), c(5.0, 0.0)]), 1e-8).unwrap();
        let p = classify_spectrum(&e, 1e-8);
        assert_eq!(p.real.len(), 2);
        assert!(p.all_real());
    }

    #[test]
    fn real_spectrum_gives_identity_t() {
        let h = from_real_rows(&[&[1.0, 3.0], &[0.0, 2.0]]);
        let e = eigensystem(&h, DEFAULT_TOL).unwrap();
        let p = classify_spectrum(&e, DEFAULT_TOL);
        let t = build_t(&e, &p).unwrap();
        assert!(matrix::norm(&(t - matrix::identity(2))) < 1e-14);
    }

    #[test]
    fn rotation_generator_swaps_eigenvectors() {
        // Eigenvalues ±i with eigenvectors (1, ±i)/√2.
        let h = from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let e = eigensystem(&h, DEFAULT_TOL).unwrap();
        let p = classify_spectrum(&e, DEFAULT_TOL);
        let t = build_t(&e, &p).unwrap();
        let id = matrix::identity(2);
        assert!(matrix::norm(&(&t * &t - &id)) <= 1e-12);
        let lhs = &t * &h * &t;
        assert!(matrix::norm(&(lhs - conjugated_spectrum(&e))) <= 1e-12);
        // T maps ψ₊ onto ψ₋.
        let (plus, minus) = p.pairs[0];
        let psi_plus = e.right_vector(e.clusters[plus][0]);
        let psi_minus = e.right_vector(e.clusters[minus][0]);
        assert!(matrix::vec_norm(&(&t * psi_plus - psi_minus)) < 1e-12);
    }

    #[test]
    fn hermitian_spectrum_is_ph() {
        let h = ComplexMatrix::from_fn(4, 4, |r, cc| c((r + cc) as f64, r as f64 - cc as f64));
        let e = eigensystem(&h, DEFAULT_TOL).unwrap();
        let p = classify_spectrum(&e, DEFAULT_TOL);
        assert!(p.all_real());
        assert!(is_ph_spectrum(&p));
    }

    #[test]
    fn classification_is_deterministic() {
        let h = from_real_rows(&[&[0.0, 2.0, 1.0], &[-2.0, 0.5, 0.0], &[0.3, 0.0, 1.0]]);
        let a = classify_spectrum(&eigensystem(&h, DEFAULT_TOL).unwrap(), DEFAULT_TOL);
        let b = classify_spectrum(&eigensystem(&h, DEFAULT_TOL).unwrap(), DEFAULT_TOL);
        assert_eq!(a, b);
    }
}
