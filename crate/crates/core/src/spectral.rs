//! Biorthonormal eigensystems of diagonalizable complex matrices.
//!
//! Right eigenvectors are the columns of an invertible matrix `V`; left
//! eigenvectors are the conjugated rows of `V⁻¹`, so that ⟨φ_m|ψ_n⟩ = δ_mn
//! holds up to inversion error and Σ_m |ψ_m⟩⟨φ_m| = 1.

use nalgebra::linalg::Schur;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_COND_CEILING: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Clustering tolerance, scaled by max(1, ‖H‖).
    pub tol: f64,
    /// Largest accepted condition number of the eigenvector matrix.
    pub cond_ceiling: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            cond_ceiling: DEFAULT_COND_CEILING,
        }
    }
}

/// Eigenvalues with paired right/left eigenvectors and degeneracy clusters.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    /// The decomposed matrix H.
    pub matrix: ComplexMatrix,
    pub eigenvalues: Vec<Complex64>,
    /// `V`: column m is ψ_m.
    pub right: ComplexMatrix,
    /// `V⁻¹`: row m is φ_m†.
    pub left_adjoint: ComplexMatrix,
    /// Degeneracy clusters; cluster members are contiguous, ascending indices.
    pub clusters: Vec<Vec<usize>>,
    /// 2-norm condition number of `V`.
    pub cond_estimate: f64,
    /// Frobenius norm of H.
    pub norm: f64,
    pub tol: f64,
}

impl Eigensystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Absolute tolerance used for clustering and pairing, tol·max(1, ‖H‖).
    pub fn abs_tol(&self) -> f64 {
        self.tol * self.norm.max(1.0)
    }

    /// ψ_m as a column.
    pub fn right_vector(&self, m: usize) -> nalgebra::DVector<Complex64> {
        self.right.column(m).into_owned()
    }

    /// φ_m as a column.
    pub fn left_vector(&self, m: usize) -> nalgebra::DVector<Complex64> {
        self.left_adjoint.row(m).adjoint()
    }

    /// Matrix whose columns are the left vectors φ_m, i.e. `(V⁻¹)†`.
    pub fn left(&self) -> ComplexMatrix {
        self.left_adjoint.adjoint()
    }

    /// Cluster index and position inside the cluster for eigen-index `m`
    /// (the degeneracy labels (n, a)).
    pub fn label(&self, m: usize) -> (usize, usize) {
        for (c, members) in self.clusters.iter().enumerate() {
            if let Some(a) = members.iter().position(|&i| i == m) {
                return (c, a);
            }
        }
        unreachable!("index {m} is not in any cluster")
    }

    /// Mean eigenvalue of a cluster.
    pub fn cluster_value(&self, cluster: usize) -> Complex64 {
        let members = &self.clusters[cluster];
        members
            .iter()
            .map(|&i| self.eigenvalues[i])
            .sum::<Complex64>()
            / members.len() as f64
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0, |acc, e| acc.max(e.im.abs()))
    }
}

/// Eigensystem with the default condition ceiling.
pub fn eigensystem(h: &ComplexMatrix, tol: f64) -> Result<Eigensystem> {
    eigensystem_with(
        h,
        &EigenOptions {
            tol,
            ..EigenOptions::default()
        },
    )
}

pub fn eigensystem_with(h: &ComplexMatrix, opts: &EigenOptions) -> Result<Eigensystem> {
    let n = matrix::validate(h)?;
    let norm = matrix::norm(h);
    if n == 0 {
        return Ok(Eigensystem {
            matrix: h.clone(),
            eigenvalues: Vec::new(),
            right: h.clone(),
            left_adjoint: h.clone(),
            clusters: Vec::new(),
            cond_estimate: 1.0,
            norm,
            tol: opts.tol,
        });
    }
    let abs_tol = opts.tol * norm.max(1.0);

    let (balanced, scale) = balance(h);
    let (q, t) = schur(balanced)?;
    let diag: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let schur_clusters = cluster_labels(&diag, abs_tol);

    let x = triangular_eigenvectors(&t, &schur_clusters, abs_tol);
    let mut v = q * x;
    for (r, s) in scale.iter().enumerate() {
        v.row_mut(r).scale_mut(*s);
    }
    for c in 0..n {
        normalize_column(&mut v, c);
    }

    // Deterministic order: lexicographic (re, im), then clusters made
    // contiguous, members ordered by the position of their dominant component.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        diag[a]
            .re
            .total_cmp(&diag[b].re)
            .then(diag[a].im.total_cmp(&diag[b].im))
    });
    let sorted_vals: Vec<Complex64> = order.iter().map(|&i| diag[i]).collect();
    let labels = cluster_labels(&sorted_vals, abs_tol);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of_label: Vec<Option<usize>> = vec![None; n];
    for (pos, &lab) in labels.iter().enumerate() {
        let g = *group_of_label[lab].get_or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(order[pos]);
    }
    for g in &mut groups {
        g.sort_by_key(|&i| dominant_index(&v, i));
    }

    let final_order: Vec<usize> = groups.iter().flatten().copied().collect();
    let eigenvalues: Vec<Complex64> = final_order.iter().map(|&i| diag[i]).collect();
    let right = ComplexMatrix::from_fn(n, n, |r, c| v[(r, final_order[c])]);
    let mut clusters = Vec::with_capacity(groups.len());
    let mut next = 0;
    for g in &groups {
        clusters.push((next..next + g.len()).collect());
        next += g.len();
    }

    let cond_estimate = matrix::cond(&right);
    if !(cond_estimate <= opts.cond_ceiling) {
        return Err(Error::NotDiagonalizable {
            cond: cond_estimate,
            ceiling: opts.cond_ceiling,
        });
    }
    let left_adjoint = matrix::inverse(&right).ok_or(Error::NotDiagonalizable {
        cond: f64::INFINITY,
        ceiling: opts.cond_ceiling,
    })?;

    Ok(Eigensystem {
        matrix: h.clone(),
        eigenvalues,
        right,
        left_adjoint,
        clusters,
        cond_estimate,
        norm,
        tol: opts.tol,
    })
}

/// Eigenvalues only (balanced Schur form), in lexicographic (re, im) order.
pub fn eigenvalues(h: &ComplexMatrix) -> Result<Vec<Complex64>> {
    matrix::validate(h)?;
    let (balanced, _) = balance(h);
    let (_, t) = schur(balanced)?;
    let mut vals: Vec<Complex64> = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    sort_lexicographic(&mut vals);
    Ok(vals)
}

pub fn sort_lexicographic(vals: &mut [Complex64]) {
    vals.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// (max |Gram − 1|, max |Σ|ψ_m⟩⟨φ_m| − 1|).
pub fn verify_biorthonormality(e: &Eigensystem) -> (f64, f64) {
    let n = e.dim();
    let id = matrix::identity(n);
    let gram = &e.left_adjoint * &e.right;
    let completeness = &e.right * &e.left_adjoint;
    (
        matrix::max_abs(&(gram - &id)),
        matrix::max_abs(&(completeness - id)),
    )
}

/// Σ_m |ψ_m⟩ E_m ⟨φ_m|.
pub fn reconstruct(e: &Eigensystem) -> ComplexMatrix {
    spectral_sum(e, |z| z)
}

/// Σ_m |ψ_m⟩ E_m* ⟨φ_m|, the operator with the conjugated spectrum on the same
/// biorthonormal basis.
pub fn conjugated_spectrum(e: &Eigensystem) -> ComplexMatrix {
    spectral_sum(e, |z| z.conj())
}

fn spectral_sum(e: &Eigensystem, f: impl Fn(Complex64) -> Complex64) -> ComplexMatrix {
    let mut scaled = e.right.clone();
    for (c, val) in e.eigenvalues.iter().enumerate() {
        scaled.column_mut(c).scale_mut_complex(f(*val));
    }
    scaled * &e.left_adjoint
}

trait ScaleComplex {
    fn scale_mut_complex(&mut self, s: Complex64);
}

impl<S> ScaleComplex for nalgebra::Matrix<Complex64, nalgebra::Dyn, nalgebra::U1, S>
where
    S: nalgebra::StorageMut<Complex64, nalgebra::Dyn, nalgebra::U1>,
{
    fn scale_mut_complex(&mut self, s: Complex64) {
        for z in self.iter_mut() {
            *z *= s;
        }
    }
}

/// O = Σ_m |ψ_m⟩⟨u_m| with u_m the standard basis: the right-eigenvector matrix.
pub fn build_o(e: &Eigensystem) -> ComplexMatrix {
    e.right.clone()
}

/// Largest distance between matched eigenvalues of two spectra, using greedy
/// closest-pair matching. Infinite when the lengths differ.
pub fn spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst = 0.0_f64;
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

/// Diagonal similarity D⁻¹AD with power-of-two scalings that equalize row and
/// column norms. Returns the balanced matrix and the diagonal of D.
pub fn balance(a: &ComplexMatrix) -> (ComplexMatrix, Vec<f64>) {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    let mut b = a.clone();
    let mut scale = vec![1.0; n];
    let l1 = |z: Complex64| z.re.abs() + z.im.abs();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += l1(b[(j, i)]);
                    r += l1(b[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                scale[i] *= f;
                b.row_mut(i).scale_mut(1.0 / f);
                b.column_mut(i).scale_mut(f);
            }
        }
    }
    (b, scale)
}

fn schur(m: ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = m.nrows();
    let s = Schur::try_new(m, f64::EPSILON, 100 * n.max(10)).ok_or(Error::SchurFailed)?;
    Ok(s.unpack())
}

/// Union-find clustering of values within `abs_tol`; returns a representative
/// label per value (labels are indices into `values`).
fn cluster_labels(values: &[Complex64], abs_tol: f64) -> Vec<usize> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= abs_tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

/// Eigenvectors of an upper-triangular matrix by back substitution, returned
/// as the columns of an upper-triangular matrix.
///
/// Inside a degeneracy cluster a residual at roundoff level means the
/// eigenspace is genuinely multi-dimensional and the component is set to zero;
/// a larger residual is a Jordan coupling and is divided through the
/// (near-zero) gap, which makes the eigenvectors nearly parallel and is then
/// caught by the condition estimate.
fn triangular_eigenvectors(t: &ComplexMatrix, labels: &[usize], abs_tol: f64) -> ComplexMatrix {
    let n = t.nrows();
    let tnorm = matrix::norm(t);
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);
    let mut x = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let lambda = t[(j, j)];
        x[(j, j)] = Complex64::new(1.0, 0.0);
        let mut xmax = 1.0_f64;
        for i in (0..j).rev() {
            let mut r = Complex64::new(0.0, 0.0);
            for l in i + 1..=j {
                r -= t[(i, l)] * x[(l, j)];
            }
            let mut denom = t[(i, i)] - lambda;
            if labels[i] == labels[j] && r.norm() <= abs_tol * xmax {
                x[(i, j)] = Complex64::new(0.0, 0.0);
                continue;
            }
            if denom.norm() < smin {
                denom = Complex64::new(smin, 0.0);
            }
            let xi = r / denom;
            x[(i, j)] = xi;
            xmax = xmax.max(xi.norm());
            // Rescale to keep the column bounded.
            if xmax > 1e100 {
                let s = 1.0 / xmax;
                for l in i..=j {
                    x[(l, j)] *= s;
                }
                xmax = 1.0;
            }
        }
    }
    x
}

fn normalize_column(v: &mut ComplexMatrix, c: usize) {
    let k = dominant_index(v, c);
    let pivot = v[(k, c)];
    if pivot.norm() == 0.0 {
        return;
    }
    let phase = pivot.conj() / pivot.norm();
    let mut col = v.column_mut(c);
    for z in col.iter_mut() {
        *z *= phase;
    }
    let nrm = matrix::vec_norm(&col.clone_owned());
    for z in col.iter_mut() {
        *z /= nrm;
    }
}

/// Row index of the largest-magnitude entry of column `c` (first on ties).
fn dominant_index(v: &ComplexMatrix, c: usize) -> usize {
    let mut best = 0;
    let mut best_val = -1.0;
    for r in 0..v.nrows() {
        let a = v[(r, c)].norm();
        if a > best_val {
            best = r;
            best_val = a;
        }
    }
    best
}
