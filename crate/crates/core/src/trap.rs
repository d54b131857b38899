//! Physical parameterisation of the trap: frequencies, the hamiltonian as an
//! operator polynomial, the analytic spectrum, constants of motion, and
//! quantum-number conversions.
//!
//! All internal energies are dimensionless, in units of `ħωz`; physical SI
//! units enter only through [`PhysicalTrap`]. Frequency arithmetic is exact
//! rational whenever `σ`, `g` are rational and `σ² − 2` is a perfect rational
//! square (all the catalog points: `σ = 3/2, 9/4, 11/6` give
//! `Ω = 1/2, 7/4, 7/6`); otherwise it degrades to double precision with a
//! documented comparison tolerance of `1e−12`.

use crate::algebra::{ratio, OperatorPoly, Symbol};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Tolerance for equality of double-precision frequencies.
pub const APPROX_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum TrapError {
    /// Trapping requires `σ > √2` (the `k = 0` boundary is excluded).
    #[error("sigma = {0} is not above the trapping limit sqrt(2)")]
    SigmaBelowTrappingLimit(f64),
    /// Axial trapping requires `qV > 0` and positive magnitudes.
    #[error("physical trap parameters must satisfy qV > 0 with positive m, d, |B|")]
    SignViolation,
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    /// Operation requires exact rational frequencies.
    #[error("operation requires exact rational frequencies at this (sigma, g)")]
    InexactFrequencies,
}

/// An exact rational or a double-precision value. Exactness is preserved by
/// arithmetic and lost only where mathematics demands it (irrational square
/// roots) or an operand is already approximate.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::Exact(ratio(n, d))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx(x) => *x,
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        exact: impl Fn(&BigRational, &BigRational) -> BigRational,
        approx: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Approx(approx(self.to_f64(), other.to_f64())),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.binop(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.binop(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.binop(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.binop(other, |a, b| a / b, |a, b| a / b)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(x) => Scalar::Approx(x.abs()),
        }
    }

    /// Square root; stays exact only for perfect rational squares.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                if r.is_negative() {
                    return Scalar::Approx(f64::NAN);
                }
                let n = r.numer();
                let d = r.denom();
                let sn = n.sqrt();
                let sd = d.sqrt();
                if &(&sn * &sn) == n && &(&sd * &sd) == d {
                    Scalar::Exact(BigRational::new(sn, sd))
                } else {
                    Scalar::Approx(self.to_f64().sqrt())
                }
            }
            Scalar::Approx(x) => Scalar::Approx(x.sqrt()),
        }
    }

    /// Equality: structural for two exact values, `1e−12` otherwise.
    pub fn equals(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= APPROX_TOL,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Approx(x) => *x > 0.0,
        }
    }
}

/// A Fock basis label `|Na, Nb, Nc, Nf⟩`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize)]
pub struct StateLabel {
    pub na: u32,
    pub nb: u32,
    pub nc: u32,
    pub nf: u8,
}

impl StateLabel {
    pub fn new(na: u32, nb: u32, nc: u32, nf: u8) -> Result<StateLabel, TrapError> {
        if nf > 1 {
            return Err(TrapError::InvalidQuantumNumbers(format!(
                "Nf must be 0 or 1, got {nf}"
            )));
        }
        Ok(StateLabel { na, nb, nc, nf })
    }
}

impl std::fmt::Display for StateLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|{},{},{},{}>", self.na, self.nb, self.nc, self.nf)
    }
}

/// Dimensionless trap parameters `(σ, g)` with the derived frequencies in
/// units of `ωz`: `ωc = σ`, `Ω = √(σ² − 2)`, `ω± = (σ ± Ω)/2`, `ωz = 1`,
/// `ωg = |g|σ/2`, `k = Ω/σ`.
#[derive(Clone, Debug)]
pub struct TrapParameters {
    sigma: Scalar,
    g: Scalar,
    omega: Scalar,
}

impl TrapParameters {
    pub fn new(sigma: Scalar, g: Scalar) -> Result<TrapParameters, TrapError> {
        let sigma_f = sigma.to_f64();
        // σ > √2 strictly; the k = 0 boundary is excluded. For exact input
        // the comparison is rational; for floats it is against the rounded-up
        // f64 representation of √2.
        let above_limit = match &sigma {
            Scalar::Exact(_) => sigma.mul(&sigma).sub(&Scalar::from_int(2)).is_positive(),
            Scalar::Approx(x) => *x > std::f64::consts::SQRT_2,
        };
        if !above_limit {
            return Err(TrapError::SigmaBelowTrappingLimit(sigma_f));
        }
        let omega = sigma.mul(&sigma).sub(&Scalar::from_int(2)).sqrt();
        Ok(TrapParameters { sigma, g, omega })
    }

    pub fn from_rationals(sigma: (i64, i64), g: (i64, i64)) -> Result<TrapParameters, TrapError> {
        TrapParameters::new(Scalar::from_ratio(sigma.0, sigma.1), Scalar::from_ratio(g.0, g.1))
    }

    pub fn from_f64(sigma: f64, g: f64) -> Result<TrapParameters, TrapError> {
        TrapParameters::new(Scalar::Approx(sigma), Scalar::Approx(g))
    }

    pub fn sigma(&self) -> &Scalar {
        &self.sigma
    }

    pub fn g(&self) -> &Scalar {
        &self.g
    }

    /// `Ω = √(σ² − 2)`, the frequency split of the radial modes.
    pub fn big_omega(&self) -> &Scalar {
        &self.omega
    }

    pub fn omega_c(&self) -> Scalar {
        self.sigma.clone()
    }

    pub fn omega_z(&self) -> Scalar {
        Scalar::one()
    }

    pub fn omega_plus(&self) -> Scalar {
        self.sigma.add(&self.omega).div(&Scalar::from_int(2))
    }

    pub fn omega_minus(&self) -> Scalar {
        self.sigma.sub(&self.omega).div(&Scalar::from_int(2))
    }

    pub fn omega_g(&self) -> Scalar {
        self.g.abs().mul(&self.sigma).div(&Scalar::from_int(2))
    }

    /// `k = Ω/ωc ∈ (0, 1]`.
    pub fn k(&self) -> Scalar {
        self.omega.div(&self.sigma)
    }

    /// `(ω+, ω−, ωz, ωg)` in units of `ωz`.
    pub fn frequencies(&self) -> [Scalar; 4] {
        [self.omega_plus(), self.omega_minus(), self.omega_z(), self.omega_g()]
    }

    /// True when `σ`, `g`, and `Ω` are all rational.
    pub fn is_exact(&self) -> bool {
        self.sigma.is_exact() && self.g.is_exact() && self.omega.is_exact()
    }

    /// `E/ħωz = ω+(Na+½) − ω−(Nb+½) + ωz(Nc+½) + ωg(Nf−½)`.
    pub fn energy(&self, state: &StateLabel) -> Scalar {
        let half = Scalar::from_ratio(1, 2);
        let na = Scalar::from_int(state.na as i64).add(&half);
        let nb = Scalar::from_int(state.nb as i64).add(&half);
        let nc = Scalar::from_int(state.nc as i64).add(&half);
        let nf = Scalar::from_int(state.nf as i64).sub(&half);
        self.omega_plus()
            .mul(&na)
            .sub(&self.omega_minus().mul(&nb))
            .add(&self.omega_z().mul(&nc))
            .add(&self.omega_g().mul(&nf))
    }

    /// The full hamiltonian as an operator polynomial in units of `ħωz`.
    /// Requires exact frequencies: the coefficient field is rational.
    pub fn hamiltonian_poly(&self) -> Result<OperatorPoly, TrapError> {
        if !self.is_exact() {
            return Err(TrapError::InexactFrequencies);
        }
        let rat = |s: &Scalar| s.as_exact().expect("exactness checked").clone();
        let half = ratio(1, 2);
        let n_a = OperatorPoly::word(&[Symbol::ADag, Symbol::A]);
        let n_b = OperatorPoly::word(&[Symbol::BDag, Symbol::B]);
        let n_c = OperatorPoly::word(&[Symbol::CDag, Symbol::C]);
        let n_f = OperatorPoly::word(&[Symbol::FDag, Symbol::F]);
        let shifted = |n: &OperatorPoly, offset: BigRational| n.add(&OperatorPoly::constant(offset));
        let h = shifted(&n_a, half.clone())
            .scale(&rat(&self.omega_plus()))
            .sub(&shifted(&n_b, half.clone()).scale(&rat(&self.omega_minus())))
            .add(&shifted(&n_c, half.clone()))
            .add(&shifted(&n_f, -half).scale(&rat(&self.omega_g())));
        Ok(h)
    }
}

/// The four constants of motion of the `σ = 3/2` configuration plus the
/// axial angular momentum, all in units of `ħωz`.
#[derive(Clone, Debug)]
pub struct ConservedSet {
    /// `Hρ = ¼(a†a + b†b + 1)`: planar oscillator energy at frequency `ωz/4`.
    pub h_rho: OperatorPoly,
    /// `Hφ = (ωc/2)(a†a − b†b) = −(ωc/2) Lz`: rotational energy about `z`.
    pub h_phi: OperatorPoly,
    /// `Hz = c†c + ½`: axial oscillator energy.
    pub h_z: OperatorPoly,
    /// `Hf = ωg(f†f − ½)`: spin-splitting energy.
    pub h_f: OperatorPoly,
    /// `Lz = b†b − a†a`.
    pub l_z: OperatorPoly,
}

impl ConservedSet {
    pub fn members(&self) -> [(&'static str, &OperatorPoly); 5] {
        [
            ("H_rho", &self.h_rho),
            ("H_phi", &self.h_phi),
            ("H_z", &self.h_z),
            ("H_f", &self.h_f),
            ("L_z", &self.l_z),
        ]
    }
}

/// Constants of motion at the given parameters. The set is constructible at
/// any exact `(σ, g)`; the decomposition `H = Hρ + Hφ + Hz + Hf` holds only
/// at `σ = 3/2`.
pub fn constants_of_motion(params: &TrapParameters) -> Result<ConservedSet, TrapError> {
    if !params.is_exact() {
        return Err(TrapError::InexactFrequencies);
    }
    let n_a = OperatorPoly::word(&[Symbol::ADag, Symbol::A]);
    let n_b = OperatorPoly::word(&[Symbol::BDag, Symbol::B]);
    let n_c = OperatorPoly::word(&[Symbol::CDag, Symbol::C]);
    let n_f = OperatorPoly::word(&[Symbol::FDag, Symbol::F]);
    let omega_c = params.omega_c().as_exact().expect("exact").clone();
    let omega_g = params.omega_g().as_exact().expect("exact").clone();

    let h_rho = n_a.add(&n_b).add(&OperatorPoly::one()).scale(&ratio(1, 4));
    let l_z = n_b.sub(&n_a);
    let h_phi = l_z.neg().scale(&(omega_c / BigInt::from(2)));
    let h_z = n_c.add(&OperatorPoly::constant(ratio(1, 2)));
    let h_f = n_f.add(&OperatorPoly::constant(ratio(-1, 2))).scale(&omega_g);
    Ok(ConservedSet { h_rho, h_phi, h_z, h_f, l_z })
}

/// Bosonic quantum-number conversion `(N, K̂, M̂) → (Na, Nb, Nc)`:
/// `Na = (N − M̂)/2`, `Nb = (N + M̂)/2`, `Nc = K̂`. The fermionic label is
/// untouched (returned as `Nf = 0`).
pub fn state_from_nkm(n: u32, k_hat: u32, m_hat: i64) -> Result<StateLabel, TrapError> {
    let n_i = n as i64;
    if m_hat.unsigned_abs() > n as u64 {
        return Err(TrapError::InvalidQuantumNumbers(format!(
            "need N >= |M|, got N = {n}, M = {m_hat}"
        )));
    }
    if (n_i - m_hat) % 2 != 0 {
        return Err(TrapError::InvalidQuantumNumbers(format!(
            "N - M must be even, got N = {n}, M = {m_hat}"
        )));
    }
    Ok(StateLabel {
        na: ((n_i - m_hat) / 2) as u32,
        nb: ((n_i + m_hat) / 2) as u32,
        nc: k_hat,
        nf: 0,
    })
}

/// Inverse of [`state_from_nkm`]: recovers `(N, K̂, M̂)` from the bosonic part.
pub fn nkm_from_state(state: &StateLabel) -> (u32, u32, i64) {
    (
        state.na + state.nb,
        state.nc,
        state.nb as i64 - state.na as i64,
    )
}

/// Laboratory parameters of a hyperbolic-electrode trap, SI units.
#[derive(Clone, Copy, Debug)]
pub struct PhysicalTrap {
    /// Charge `q` in coulomb.
    pub charge: f64,
    /// Mass `m` in kilogram.
    pub mass: f64,
    /// Magnetic field `B` in tesla.
    pub field: f64,
    /// Electrode voltage `V` in volt.
    pub voltage: f64,
    /// Trap size `d` in metre.
    pub size: f64,
}

/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
/// Electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.1093837015e-31;
/// Proton mass, kg.
pub const PROTON_MASS: f64 = 1.67262192369e-27;

/// `σ = √(qB²d²/(mV))`. Requires `qV > 0` and positive magnitudes.
pub fn sigma_from_physical(trap: &PhysicalTrap) -> Result<f64, TrapError> {
    if trap.charge * trap.voltage <= 0.0 || trap.mass <= 0.0 || trap.size <= 0.0 || trap.field == 0.0
    {
        return Err(TrapError::SignViolation);
    }
    Ok((trap.charge * trap.field * trap.field * trap.size * trap.size / (trap.mass * trap.voltage))
        .sqrt())
}

/// Strong-field limit `σ → ∞` with `ωc` fixed:
/// `E/ħ = ωc[(Na + ½ g Nf) − ½ (g−2)/2]`.
pub fn large_sigma_energy(state: &StateLabel, omega_c: f64, g: f64) -> f64 {
    omega_c * ((state.na as f64 + 0.5 * g * state.nf as f64) - 0.5 * (g - 2.0) / 2.0)
}
