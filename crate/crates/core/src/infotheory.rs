//! Classical and quantum entropy.
//!
//! Shannon entropy over labelled finite distributions, the
//! prior/posterior decomposition behind an eavesdropper's information
//! gain, von Neumann entropy of small density matrices, and the Holevo
//! quantity of an ensemble. Everything is in bits (log base 2).

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::PureState;

const PROB_SUM_TOL: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm is below this.
const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Probability distribution over labelled outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<L: Ord + Clone> {
    probs: BTreeMap<L, f64>,
}

impl<L: Ord + Clone> Distribution<L> {
    pub fn new(probs: BTreeMap<L, f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let mut sum = 0.0;
        for &p in probs.values() {
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
            if p < 0.0 {
                return Err(Error::NegativeProbability { value: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::ProbabilitySum { sum });
        }
        Ok(Distribution { probs })
    }

    pub fn uniform(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        let labels: Vec<L> = labels.into_iter().collect();
        if labels.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let p = 1.0 / labels.len() as f64;
        Ok(Distribution {
            probs: labels.into_iter().map(|l| (l, p)).collect(),
        })
    }

    pub fn probs(&self) -> &BTreeMap<L, f64> {
        &self.probs
    }

    pub fn prob(&self, label: &L) -> f64 {
        self.probs.get(label).copied().unwrap_or(0.0)
    }
}

/// Joint distribution over (secret, result) pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<S: Ord + Clone, R: Ord + Clone> {
    probs: BTreeMap<(S, R), f64>,
}

impl<S: Ord + Clone, R: Ord + Clone> JointDistribution<S, R> {
    pub fn new(probs: BTreeMap<(S, R), f64>) -> Result<Self> {
        // Same validity conditions as a plain distribution.
        Distribution::new(probs.clone())?;
        Ok(JointDistribution { probs })
    }

    /// Normalized joint from event counts.
    pub fn from_counts(counts: &BTreeMap<(S, R), u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::EmptyDistribution);
        }
        JointDistribution::new(
            counts
                .iter()
                .map(|(k, &n)| (k.clone(), n as f64 / total as f64))
                .collect(),
        )
    }

    pub fn probs(&self) -> &BTreeMap<(S, R), f64> {
        &self.probs
    }

    pub fn secret_marginal(&self) -> Distribution<S> {
        let mut probs: BTreeMap<S, f64> = BTreeMap::new();
        for ((s, _), &p) in &self.probs {
            *probs.entry(s.clone()).or_insert(0.0) += p;
        }
        Distribution { probs }
    }

    pub fn result_marginal(&self) -> Distribution<R> {
        let mut probs: BTreeMap<R, f64> = BTreeMap::new();
        for ((_, r), &p) in &self.probs {
            *probs.entry(r.clone()).or_insert(0.0) += p;
        }
        Distribution { probs }
    }

    /// Conditional distribution of the secret given one result.
    pub fn given_result(&self, result: &R) -> Result<Distribution<S>> {
        let mut probs: BTreeMap<S, f64> = BTreeMap::new();
        let mut total = 0.0;
        for ((s, r), &p) in &self.probs {
            if r == result {
                *probs.entry(s.clone()).or_insert(0.0) += p;
                total += p;
            }
        }
        if total <= 0.0 {
            return Err(Error::EmptyDistribution);
        }
        for p in probs.values_mut() {
            *p /= total;
        }
        Ok(Distribution { probs })
    }
}

fn entropy_of_probs<'a>(probs: impl IntoIterator<Item = &'a f64>) -> f64 {
    probs
        .into_iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// -sum p log2 p with the 0 log 0 = 0 convention.
pub fn shannon_entropy<L: Ord + Clone>(d: &Distribution<L>) -> f64 {
    entropy_of_probs(d.probs.values())
}

/// Average remaining uncertainty about the secret once the result is
/// known: sum_r P(r) H(secret | r).
pub fn posterior_entropy<S: Ord + Clone, R: Ord + Clone>(joint: &JointDistribution<S, R>) -> f64 {
    let mut by_result: BTreeMap<&R, (f64, Vec<f64>)> = BTreeMap::new();
    for ((_, r), &p) in &joint.probs {
        let slot = by_result.entry(r).or_insert((0.0, Vec::new()));
        slot.0 += p;
        slot.1.push(p);
    }
    by_result
        .values()
        .filter(|(p_r, _)| *p_r > 0.0)
        .map(|(p_r, cell)| {
            let conditional: Vec<f64> = cell.iter().map(|p| p / p_r).collect();
            p_r * entropy_of_probs(conditional.iter())
        })
        .sum()
}

/// Information gained from observing the result: prior entropy minus
/// posterior entropy. The joint's secret marginal must reproduce the
/// prior.
pub fn info_gain<S: Ord + Clone, R: Ord + Clone>(
    prior: &Distribution<S>,
    joint: &JointDistribution<S, R>,
) -> Result<f64> {
    let marginal = joint.secret_marginal();
    let mut max_dev: f64 = 0.0;
    for (label, &p) in prior.probs() {
        max_dev = max_dev.max((p - marginal.prob(label)).abs());
    }
    for (label, &p) in marginal.probs() {
        max_dev = max_dev.max((p - prior.prob(label)).abs());
    }
    if max_dev > PROB_SUM_TOL {
        return Err(Error::MarginalMismatch { max_dev });
    }
    Ok(shannon_entropy(prior) - posterior_entropy(joint))
}

/// Density matrix of a one- or two-qubit system.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates shape, Hermiticity, unit trace and spectrum
    /// non-negativity (down to -1e-10 for round-off).
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::MatrixDim { dim });
        }
        check_hermitian(dim, &entries)?;
        let trace: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::Trace { trace });
        }
        let m = DensityMatrix { dim, entries };
        if let Some(&lambda) = m
            .eigenvalues()
            .iter()
            .find(|&&lambda| lambda < EIGENVALUE_FLOOR)
        {
            return Err(Error::NegativeEigenvalue { value: lambda });
        }
        Ok(m)
    }

    /// |psi><psi| for a pure state.
    pub fn from_pure(state: &PureState) -> Self {
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for &a in amps {
            for &b in amps {
                entries.push(a * b.conj());
            }
        }
        DensityMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entry(i, i).re).sum()
    }

    /// Descending real eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvals_hermitian(self.dim, &self.entries)
            .expect("a constructed density matrix is Hermitian")
    }
}

fn check_hermitian(dim: usize, entries: &[Complex64]) -> Result<()> {
    let expected = dim * dim;
    if entries.len() != expected {
        return Err(Error::MatrixShape {
            dim,
            expected,
            got: entries.len(),
        });
    }
    if entries
        .iter()
        .any(|e| !e.re.is_finite() || !e.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    let mut max_dev: f64 = 0.0;
    for i in 0..dim {
        for j in i..dim {
            let dev = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
            max_dev = max_dev.max(dev);
        }
    }
    if max_dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { max_dev });
    }
    Ok(())
}

/// Eigenvalues of a complex Hermitian matrix, descending.
///
/// Realized as cyclic Jacobi rotations on the real symmetric 2d x 2d
/// embedding [[Re H, -Im H], [Im H, Re H]], iterated until the
/// off-diagonal Frobenius norm drops below 1e-13. Each eigenvalue of H
/// appears twice in the embedding and is deduplicated by pairing after
/// sorting.
pub fn eigvals_hermitian(dim: usize, entries: &[Complex64]) -> Result<Vec<f64>> {
    check_hermitian(dim, entries)?;
    let n = 2 * dim;
    let mut m = vec![vec![0.0f64; n]; n];
    for i in 0..dim {
        for j in 0..dim {
            let e = entries[i * dim + j];
            m[i][j] = e.re;
            m[i + dim][j + dim] = e.re;
            m[i][j + dim] = -e.im;
            m[i + dim][j] = e.im;
        }
    }
    jacobi_sweeps(&mut m)?;
    let mut doubled: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    doubled.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    Ok(doubled.into_iter().step_by(2).collect())
}

/// Cyclic Jacobi diagonalization of a real symmetric matrix in place.
fn jacobi_sweeps(m: &mut [Vec<f64>]) -> Result<()> {
    let n = m.len();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * m[p][q] * m[p][q];
            }
        }
        if off.sqrt() < JACOBI_OFF_TOL {
            return Ok(());
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = m[p][q];
                if apq.abs() < JACOBI_OFF_TOL / (n * n) as f64 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // M <- J^T M J with the rotation J in the (p, q) plane.
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    Err(Error::NoConvergence)
}

/// Von Neumann entropy -sum lambda log2 lambda in bits. Eigenvalues are
/// clipped into [0, 1] to absorb round-off on rank-deficient input.
pub fn vn_entropy(m: &DensityMatrix) -> f64 {
    m.eigenvalues()
        .into_iter()
        .map(|lambda| lambda.clamp(0.0, 1.0))
        .filter(|&lambda| lambda > 0.0)
        .map(|lambda| -lambda * lambda.log2())
        .sum()
}

/// Weighted ensemble of density matrices.
#[derive(Debug, Clone)]
pub struct Ensemble {
    members: Vec<(f64, DensityMatrix)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        let Some(dim) = members.first().map(|(_, m)| m.dim()) else {
            return Err(Error::EmptyEnsemble);
        };
        if members.iter().any(|(_, m)| m.dim() != dim) {
            return Err(Error::MixedDimensions);
        }
        let mut sum = 0.0;
        for &(p, _) in &members {
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
            if p < 0.0 {
                return Err(Error::NegativeProbability { value: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::ProbabilitySum { sum });
        }
        Ok(Ensemble { members })
    }

    pub fn uniform(states: impl IntoIterator<Item = DensityMatrix>) -> Result<Self> {
        let states: Vec<DensityMatrix> = states.into_iter().collect();
        let p = 1.0 / states.len().max(1) as f64;
        Ensemble::new(states.into_iter().map(|m| (p, m)).collect())
    }

    pub fn members(&self) -> &[(f64, DensityMatrix)] {
        &self.members
    }

    /// The mixture sum_i p_i rho_i.
    pub fn mixture(&self) -> DensityMatrix {
        let dim = self.members[0].1.dim();
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for (p, m) in &self.members {
            for (slot, &e) in entries.iter_mut().zip(m.entries()) {
                *slot += e * *p;
            }
        }
        DensityMatrix { dim, entries }
    }
}

/// Holevo quantity chi = S(sum p_i rho_i) - sum p_i S(rho_i), the upper
/// bound on classical information extractable from the ensemble.
pub fn holevo_chi(ensemble: &Ensemble) -> f64 {
    let mixed = vn_entropy(&ensemble.mixture());
    let average: f64 = ensemble
        .members()
        .iter()
        .map(|(p, m)| p * vn_entropy(m))
        .sum();
    mixed - average
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::BellOutcome;
    use approx::assert_abs_diff_eq;

    fn dist_from(pairs: &[(&'static str, f64)]) -> Distribution<&'static str> {
        Distribution::new(pairs.iter().cloned().collect()).unwrap()
    }

    #[test]
    fn shannon_entropy_of_uniform_support() {
        let sixteen: Vec<u32> = (0..16).collect();
        let d = Distribution::uniform(sixteen).unwrap();
        assert_abs_diff_eq!(shannon_entropy(&d), 4.0, epsilon = 1e-12);

        let four = Distribution::uniform(0..4u32).unwrap();
        assert_abs_diff_eq!(shannon_entropy(&four), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn shannon_entropy_of_point_mass() {
        let d = dist_from(&[("only", 1.0)]);
        assert_abs_diff_eq!(shannon_entropy(&d), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_invalid_distributions() {
        assert!(matches!(
            Distribution::<u32>::new(BTreeMap::new()),
            Err(Error::EmptyDistribution)
        ));
        assert!(matches!(
            Distribution::new([(0u32, 0.7), (1, 0.7)].into_iter().collect()),
            Err(Error::ProbabilitySum { .. })
        ));
        assert!(matches!(
            Distribution::new([(0u32, -0.5), (1, 1.5)].into_iter().collect()),
            Err(Error::NegativeProbability { .. })
        ));
    }

    #[test]
    fn posterior_entropy_of_independent_joint() {
        // Secret uniform over 4, result uniform over 2, independent.
        let mut probs = BTreeMap::new();
        for s in 0..4u32 {
            for r in 0..2u32 {
                probs.insert((s, r), 0.125);
            }
        }
        let joint = JointDistribution::new(probs).unwrap();
        assert_abs_diff_eq!(posterior_entropy(&joint), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn posterior_entropy_of_determined_secret() {
        let mut probs = BTreeMap::new();
        for s in 0..4u32 {
            probs.insert((s, s), 0.25);
        }
        let joint = JointDistribution::new(probs).unwrap();
        assert_abs_diff_eq!(posterior_entropy(&joint), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn info_gain_cases() {
        // Independent: no gain.
        let mut probs = BTreeMap::new();
        for s in 0..4u32 {
            for r in 0..2u32 {
                probs.insert((s, r), 0.125);
            }
        }
        let joint = JointDistribution::new(probs).unwrap();
        let prior = Distribution::uniform(0..4u32).unwrap();
        assert_abs_diff_eq!(info_gain(&prior, &joint).unwrap(), 0.0, epsilon = 1e-12);

        // Fully determined 16-outcome secret: gain equals the prior.
        let mut probs = BTreeMap::new();
        for s in 0..16u32 {
            probs.insert((s, s), 1.0 / 16.0);
        }
        let joint = JointDistribution::new(probs).unwrap();
        let prior = Distribution::uniform(0..16u32).unwrap();
        assert_abs_diff_eq!(info_gain(&prior, &joint).unwrap(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn info_gain_rejects_mismatched_prior() {
        let mut probs = BTreeMap::new();
        probs.insert((0u32, 0u32), 0.5);
        probs.insert((1, 0), 0.5);
        let joint = JointDistribution::new(probs).unwrap();
        let prior = dist_from(&[("unused", 1.0)]);
        let prior = Distribution::new(
            prior
                .probs()
                .iter()
                .enumerate()
                .map(|(i, (_, &p))| (i as u32, p))
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            info_gain(&prior, &joint),
            Err(Error::MarginalMismatch { .. })
        ));
    }

    #[test]
    fn eigenvalues_of_maximally_mixed() {
        let dim = 4;
        let mut entries = vec![Complex64::ZERO; 16];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(0.25, 0.0);
        }
        let m = DensityMatrix::new(dim, entries).unwrap();
        for lambda in m.eigenvalues() {
            assert_abs_diff_eq!(lambda, 0.25, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(vn_entropy(&m), 2.0, epsilon = 1e-10);
    }

    #[test]
    fn eigenvalues_of_pure_singlet() {
        let m = DensityMatrix::from_pure(&BellOutcome::PsiMinus.state());
        let eigs = m.eigenvalues();
        assert_abs_diff_eq!(eigs[0], 1.0, epsilon = 1e-10);
        for &lambda in &eigs[1..] {
            assert_abs_diff_eq!(lambda, 0.0, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(vn_entropy(&m), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn eigenvalues_of_diagonal_matrix() {
        let values = [0.5, 0.3, 0.2, 0.0];
        let mut entries = vec![Complex64::ZERO; 16];
        for (i, &v) in values.iter().enumerate() {
            entries[i * 4 + i] = Complex64::new(v, 0.0);
        }
        let m = DensityMatrix::new(4, entries).unwrap();
        let eigs = m.eigenvalues();
        for (got, want) in eigs.iter().zip(values) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut entries = vec![Complex64::ZERO; 4];
        entries[0] = Complex64::new(0.5, 0.0);
        entries[1] = Complex64::new(0.1, 0.2);
        entries[2] = Complex64::new(0.1, 0.2); // should be the conjugate
        entries[3] = Complex64::new(0.5, 0.0);
        assert!(matches!(
            eigvals_hermitian(2, &entries),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn rejects_bad_density_matrices() {
        assert!(matches!(
            DensityMatrix::new(3, vec![Complex64::ZERO; 9]),
            Err(Error::MatrixDim { dim: 3 })
        ));
        let mut entries = vec![Complex64::ZERO; 4];
        entries[0] = Complex64::new(0.9, 0.0);
        entries[3] = Complex64::new(0.9, 0.0);
        assert!(matches!(
            DensityMatrix::new(2, entries),
            Err(Error::Trace { .. })
        ));
        // Hermitian, unit trace, but indefinite.
        let entries = vec![
            Complex64::new(1.2, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(-0.2, 0.0),
        ];
        assert!(matches!(
            DensityMatrix::new(2, entries),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn bell_mixture_has_one_bit_of_entropy() {
        let half = Ensemble::new(vec![
            (0.5, DensityMatrix::from_pure(&BellOutcome::PsiMinus.state())),
            (0.5, DensityMatrix::from_pure(&BellOutcome::PsiPlus.state())),
        ])
        .unwrap();
        assert_abs_diff_eq!(vn_entropy(&half.mixture()), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn holevo_chi_of_bell_ensemble_is_two_bits() {
        let ensemble = Ensemble::uniform(
            BellOutcome::ALL
                .iter()
                .map(|b| DensityMatrix::from_pure(&b.state())),
        )
        .unwrap();
        assert_abs_diff_eq!(holevo_chi(&ensemble), 2.0, epsilon = 1e-10);
    }

    #[test]
    fn holevo_chi_of_single_member_is_zero() {
        let ensemble = Ensemble::new(vec![(
            1.0,
            DensityMatrix::from_pure(&BellOutcome::PhiPlus.state()),
        )])
        .unwrap();
        assert_abs_diff_eq!(holevo_chi(&ensemble), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn holevo_chi_of_conjugate_basis_states_is_one_bit() {
        let states = [
            PureState::ket0(),
            PureState::ket1(),
            PureState::plus(),
            PureState::minus(),
        ];
        let ensemble =
            Ensemble::uniform(states.iter().map(DensityMatrix::from_pure)).unwrap();
        assert_abs_diff_eq!(holevo_chi(&ensemble), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn ensemble_rejects_mixed_dimensions() {
        let members = vec![
            (0.5, DensityMatrix::from_pure(&PureState::ket0())),
            (0.5, DensityMatrix::from_pure(&BellOutcome::PsiMinus.state())),
        ];
        assert!(matches!(
            Ensemble::new(members),
            Err(Error::MixedDimensions)
        ));
    }
}
