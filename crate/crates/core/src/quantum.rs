//! Exact state-vector mechanics for one- and two-qubit systems.
//!
//! States are dense complex amplitude vectors over the computational
//! basis, last qubit varying fastest; a two-qubit state is ordered
//! |00>, |01>, |10>, |11> with qubit A first and qubit B second.
//!
//! Global phases carry no physical meaning, so comparison and Bell
//! classification are phase-insensitive throughout. Normalization is
//! checked to 1e-9 on construction; closed algebraic identities hold to
//! 1e-12 since nothing here exceeds dimension four.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Complex amplitude of one basis state.
pub type Amplitude = Complex64;

const NORM_TOL: f64 = 1e-9;
const OVERLAP_TOL: f64 = 1e-9;
/// Probabilities below this are treated as an impossible branch.
const PROB_FLOOR: f64 = 1e-12;

/// Which qubit of a shared pair a party holds or acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Party {
    A,
    B,
}

impl Party {
    pub fn label(self) -> &'static str {
        match self {
            Party::A => "A",
            Party::B => "B",
        }
    }
}

/// The four encoding unitaries and the two-bit messages they carry:
/// `S00` = I, `S01` = sigma_x, `S10` = i*sigma_y, `S11` = sigma_z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLabel {
    S00,
    S01,
    S10,
    S11,
}

impl PauliLabel {
    pub const ALL: [PauliLabel; 4] = [
        PauliLabel::S00,
        PauliLabel::S01,
        PauliLabel::S10,
        PauliLabel::S11,
    ];

    /// The two message bits this operation encodes.
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliLabel::S00 => (false, false),
            PauliLabel::S01 => (false, true),
            PauliLabel::S10 => (true, false),
            PauliLabel::S11 => (true, true),
        }
    }

    pub fn from_bits(hi: bool, lo: bool) -> Self {
        match (hi, lo) {
            (false, false) => PauliLabel::S00,
            (false, true) => PauliLabel::S01,
            (true, false) => PauliLabel::S10,
            (true, true) => PauliLabel::S11,
        }
    }

    pub fn index(self) -> usize {
        let (hi, lo) = self.bits();
        (hi as usize) << 1 | lo as usize
    }

    pub fn from_index(index: usize) -> Self {
        Self::from_bits(index & 2 != 0, index & 1 != 0)
    }

    /// ASCII form used in transcripts, e.g. `s01`.
    pub fn label(self) -> &'static str {
        match self {
            PauliLabel::S00 => "s00",
            PauliLabel::S01 => "s01",
            PauliLabel::S10 => "s10",
            PauliLabel::S11 => "s11",
        }
    }

    /// Display form with the sigma prefix, e.g. `σ01`.
    pub fn symbol(self) -> &'static str {
        match self {
            PauliLabel::S00 => "σ00",
            PauliLabel::S01 => "σ01",
            PauliLabel::S10 => "σ10",
            PauliLabel::S11 => "σ11",
        }
    }
}

/// Fixed 2x2 matrix for an encoding operation.
pub fn pauli_matrix(label: PauliLabel) -> [[Amplitude; 2]; 2] {
    let o = Complex64::ZERO;
    let p = Complex64::ONE;
    let m = -Complex64::ONE;
    match label {
        PauliLabel::S00 => [[p, o], [o, p]],
        PauliLabel::S01 => [[o, p], [p, o]],
        PauliLabel::S10 => [[o, p], [m, o]],
        PauliLabel::S11 => [[p, o], [o, m]],
    }
}

/// Result of a Bell-basis measurement, the only thing announced publicly
/// in message mode of the pair protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BellOutcome {
    PsiMinus,
    PsiPlus,
    PhiMinus,
    PhiPlus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PsiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PhiPlus,
    ];

    /// The Bell vector for this outcome. Psi-+ = (|01> -+ |10>)/sqrt(2),
    /// Phi-+ = (|00> -+ |11>)/sqrt(2).
    pub fn state(self) -> PureState {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let o = Complex64::ZERO;
        let amps = match self {
            BellOutcome::PsiMinus => [o, h, -h, o],
            BellOutcome::PsiPlus => [o, h, h, o],
            BellOutcome::PhiMinus => [h, o, o, -h],
            BellOutcome::PhiPlus => [h, o, o, h],
        };
        PureState::new(amps.to_vec()).expect("Bell vectors are normalized")
    }

    pub fn label(self) -> &'static str {
        match self {
            BellOutcome::PsiMinus => "psi-",
            BellOutcome::PsiPlus => "psi+",
            BellOutcome::PhiMinus => "phi-",
            BellOutcome::PhiPlus => "phi+",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BellOutcome::PsiMinus => "Ψ-",
            BellOutcome::PsiPlus => "Ψ+",
            BellOutcome::PhiMinus => "Φ-",
            BellOutcome::PhiPlus => "Φ+",
        }
    }
}

/// Single-qubit measurement basis: Z with eigenvectors {|0>, |1>}, X with
/// {|+>, |->}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeasurementBasis {
    Z,
    X,
}

impl MeasurementBasis {
    pub const ALL: [MeasurementBasis; 2] = [MeasurementBasis::Z, MeasurementBasis::X];

    /// Eigenvector for outcome bit 0 or 1.
    pub fn eigenvector(self, bit: bool) -> PureState {
        match (self, bit) {
            (MeasurementBasis::Z, false) => PureState::ket0(),
            (MeasurementBasis::Z, true) => PureState::ket1(),
            (MeasurementBasis::X, false) => PureState::plus(),
            (MeasurementBasis::X, true) => PureState::minus(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MeasurementBasis::Z => "z",
            MeasurementBasis::X => "x",
        }
    }
}

/// Normalized pure state of one or two qubits.
#[derive(Debug, Clone)]
pub struct PureState {
    num_qubits: u8,
    amps: Vec<Amplitude>,
}

impl PureState {
    /// Builds a state from 2 or 4 amplitudes, rejecting non-finite
    /// entries and vectors that are not normalized to within 1e-9.
    pub fn new(amps: Vec<Amplitude>) -> Result<Self> {
        let num_qubits = match amps.len() {
            2 => 1,
            4 => 2,
            len => return Err(Error::StateLength { len }),
        };
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(PureState { num_qubits, amps })
    }

    pub fn ket0() -> Self {
        PureState::new(vec![Complex64::ONE, Complex64::ZERO]).expect("normalized")
    }

    pub fn ket1() -> Self {
        PureState::new(vec![Complex64::ZERO, Complex64::ONE]).expect("normalized")
    }

    pub fn plus() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        PureState::new(vec![h, h]).expect("normalized")
    }

    pub fn minus() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        PureState::new(vec![h, -h]).expect("normalized")
    }

    pub fn num_qubits(&self) -> u8 {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// <self|other>.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        self.check_qubits(other.num_qubits)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Product state a (x) b of two single-qubit states.
    pub fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
        a.check_qubits(1)?;
        b.check_qubits(1)?;
        let mut amps = Vec::with_capacity(4);
        for &x in &a.amps {
            for &y in &b.amps {
                amps.push(x * y);
            }
        }
        PureState::new(amps)
    }

    fn check_qubits(&self, expected: u8) -> Result<()> {
        if self.num_qubits != expected {
            return Err(Error::QubitCount {
                expected,
                got: self.num_qubits,
            });
        }
        Ok(())
    }
}

/// Applies an encoding operation to one qubit of a two-qubit state,
/// leaving the other untouched.
pub fn apply_on_qubit(op: PauliLabel, which: Party, state: &PureState) -> Result<PureState> {
    if state.num_qubits() != 2 {
        return Err(Error::QubitCount {
            expected: 2,
            got: state.num_qubits(),
        });
    }
    let u = pauli_matrix(op);
    let old = state.amplitudes();
    let mut amps = vec![Complex64::ZERO; 4];
    for a in 0..2 {
        for b in 0..2 {
            amps[a << 1 | b] = match which {
                Party::A => u[a][0] * old[b] + u[a][1] * old[2 | b],
                Party::B => u[b][0] * old[a << 1] + u[b][1] * old[a << 1 | 1],
            };
        }
    }
    PureState::new(amps)
}

/// Applies an encoding operation to a single-qubit state.
pub fn apply_single(op: PauliLabel, state: &PureState) -> Result<PureState> {
    if state.num_qubits() != 1 {
        return Err(Error::QubitCount {
            expected: 1,
            got: state.num_qubits(),
        });
    }
    let u = pauli_matrix(op);
    let old = state.amplitudes();
    PureState::new(vec![
        u[0][0] * old[0] + u[0][1] * old[1],
        u[1][0] * old[0] + u[1][1] * old[1],
    ])
}

/// Born probabilities of the four Bell outcomes for a two-qubit state.
pub fn bell_probabilities(state: &PureState) -> Result<[f64; 4]> {
    let mut probs = [0.0; 4];
    for (slot, outcome) in probs.iter_mut().zip(BellOutcome::ALL) {
        *slot = outcome.state().inner(state)?.norm_sqr();
    }
    Ok(probs)
}

/// Projective measurement in the Bell basis. The state is consumed by the
/// measurement; only the sampled outcome survives to be announced.
pub fn bell_measure(state: &PureState, rng: &mut impl Rng) -> Result<BellOutcome> {
    let probs = bell_probabilities(state)?;
    Ok(BellOutcome::ALL[sample_outcome(&probs, rng)])
}

/// Measures a single qubit in the given basis, returning the outcome bit
/// and the eigenvector the state collapsed to.
pub fn measure_in_basis(
    state: &PureState,
    basis: MeasurementBasis,
    rng: &mut impl Rng,
) -> Result<(bool, PureState)> {
    state.check_qubits(1)?;
    let p0 = basis.eigenvector(false).inner(state)?.norm_sqr();
    let p1 = basis.eigenvector(true).inner(state)?.norm_sqr();
    let bit = sample_outcome(&[p0, p1], rng) == 1;
    Ok((bit, basis.eigenvector(bit)))
}

/// Measures one qubit of a pair in the given basis. Returns the outcome
/// bit and the renormalized single-qubit state left on the other side.
pub fn measure_one_of_pair(
    state: &PureState,
    which: Party,
    basis: MeasurementBasis,
    rng: &mut impl Rng,
) -> Result<(bool, PureState)> {
    state.check_qubits(2)?;
    let amps = state.amplitudes();
    // Unnormalized remainder for each outcome: contract the measured
    // qubit with the outcome eigenvector.
    let project = |bit: bool| -> [Complex64; 2] {
        let v = basis.eigenvector(bit);
        let v = v.amplitudes();
        let mut rem = [Complex64::ZERO; 2];
        for (other, slot) in rem.iter_mut().enumerate() {
            *slot = match which {
                Party::A => v[0].conj() * amps[other] + v[1].conj() * amps[2 | other],
                Party::B => v[0].conj() * amps[other << 1] + v[1].conj() * amps[other << 1 | 1],
            };
        }
        rem
    };
    let rem0 = project(false);
    let rem1 = project(true);
    let p0 = rem0[0].norm_sqr() + rem0[1].norm_sqr();
    let p1 = rem1[0].norm_sqr() + rem1[1].norm_sqr();
    let bit = sample_outcome(&[p0, p1], rng) == 1;
    let (rem, p) = if bit { (rem1, p1) } else { (rem0, p0) };
    let scale = Complex64::new(1.0 / p.sqrt(), 0.0);
    PureState::new(vec![rem[0] * scale, rem[1] * scale]).map(|s| (bit, s))
}

/// Phase-insensitive equality: |<a|b>| > 1 - 1e-9.
pub fn equal_up_to_phase(a: &PureState, b: &PureState) -> Result<bool> {
    Ok(a.inner(b)?.norm() > 1.0 - OVERLAP_TOL)
}

/// Identifies which Bell state a two-qubit vector is, up to global phase.
pub fn classify_bell(state: &PureState) -> Result<BellOutcome> {
    for outcome in BellOutcome::ALL {
        if equal_up_to_phase(state, &outcome.state())? {
            return Ok(outcome);
        }
    }
    Err(Error::BellClassification)
}

/// Samples an index by the given probabilities. Branches below the
/// probability floor are never returned, even when the running sum falls
/// short of the drawn uniform variate through round-off.
fn sample_outcome(probs: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last_live = None;
    for (k, &p) in probs.iter().enumerate() {
        if p < PROB_FLOOR {
            continue;
        }
        last_live = Some(k);
        acc += p;
        if u < acc {
            return k;
        }
    }
    last_live.expect("some outcome must have nonzero probability")
}
