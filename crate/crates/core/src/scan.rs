//! Numerical exploration over `(σ, g)`: frequency curves, rational-ratio
//! detection, level-crossing location, and degeneracy grouping over a `σ`
//! grid. Grid points and state pairs are independent work items and are
//! evaluated in parallel; output is ordered by `σ` then state index.

use crate::exec;
use crate::trap::{Scalar, StateLabel, TrapParameters};
use num::ToPrimitive;
use serde::Serialize;

/// Root-location tolerance in `σ` for bisection.
pub const BISECTION_TOL: f64 = 1e-12;
/// Crossings closer than this in `σ` are treated as one cluster.
pub const CROSSING_CLUSTER_TOL: f64 = 1e-9;
/// Tolerance for accepting a reconstructed rational frequency ratio.
pub const RATIO_TOL: f64 = 1e-12;
/// A located σ is snapped to a nearby small-denominator rational within this
/// distance, so exact points get exact answers.
pub const SNAP_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ScanError {
    #[error("sigma range [{0}, {1}] must lie above sqrt(2) with min < max")]
    BadSigmaRange(f64, f64),
    #[error("grid needs at least two points, got {0}")]
    TooFewPoints(usize),
}

/// Inclusive per-mode maxima for state enumeration; `Nf` always ranges over
/// `{0, 1}`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct StateCaps {
    pub na: u32,
    pub nb: u32,
    pub nc: u32,
}

impl StateCaps {
    /// The state ranges of the published g = 2/3 level plot.
    pub fn figure2() -> StateCaps {
        StateCaps { na: 2, nb: 3, nc: 1 }
    }

    /// The state ranges of the published g = 4/3 level plot.
    pub fn figure3() -> StateCaps {
        StateCaps { na: 2, nb: 2, nc: 1 }
    }
}

/// Scan configuration over a σ grid at fixed g.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub sigma_min: f64,
    pub sigma_max: f64,
    /// Number of grid intervals; the grid has `steps + 1` points.
    pub steps: usize,
    pub g: f64,
    pub caps: StateCaps,
    /// Energy tolerance for degeneracy grouping, units `ħωz`.
    pub energy_tol: f64,
    /// Maximum denominator for rational-ratio detection.
    pub max_denominator: u64,
}

impl ScanConfig {
    pub fn new(sigma_min: f64, sigma_max: f64, steps: usize, g: f64) -> ScanConfig {
        ScanConfig {
            sigma_min,
            sigma_max,
            steps,
            g,
            caps: StateCaps::figure2(),
            energy_tol: 1e-9,
            max_denominator: 16,
        }
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        if !(self.sigma_min > std::f64::consts::SQRT_2 && self.sigma_max > self.sigma_min) {
            return Err(ScanError::BadSigmaRange(self.sigma_min, self.sigma_max));
        }
        if self.steps < 1 {
            return Err(ScanError::TooFewPoints(self.steps + 1));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let h = (self.sigma_max - self.sigma_min) / self.steps as f64;
        (0..=self.steps).map(|i| self.sigma_min + i as f64 * h).collect()
    }
}

/// `(ω+, ω−, ωz, ωg)` in units of `ωz`, double precision.
pub fn frequencies_f64(sigma: f64, g: f64) -> [f64; 4] {
    let omega = (sigma * sigma - 2.0).sqrt();
    [(sigma + omega) / 2.0, (sigma - omega) / 2.0, 1.0, g.abs() * sigma / 2.0]
}

/// `E/ħωz` for a state, double precision.
pub fn energy_f64(state: &StateLabel, sigma: f64, g: f64) -> f64 {
    let [wp, wm, wz, wg] = frequencies_f64(sigma, g);
    wp * (state.na as f64 + 0.5) - wm * (state.nb as f64 + 0.5)
        + wz * (state.nc as f64 + 0.5)
        + wg * (state.nf as f64 - 0.5)
}

/// All states within the caps, ordered by `(Na, Nb, Nc, Nf)`.
pub fn enumerate_states(caps: &StateCaps) -> Vec<StateLabel> {
    let mut out = Vec::new();
    for na in 0..=caps.na {
        for nb in 0..=caps.nb {
            for nc in 0..=caps.nc {
                for nf in 0..=1u8 {
                    out.push(StateLabel { na, nb, nc, nf });
                }
            }
        }
    }
    out
}

/// Energy series per state over the σ grid.
#[derive(Clone, Debug, Serialize)]
pub struct LevelScan {
    pub g: f64,
    pub sigmas: Vec<f64>,
    pub states: Vec<StateLabel>,
    /// `energies[i][j]` = energy of `states[j]` at `sigmas[i]`.
    pub energies: Vec<Vec<f64>>,
}

pub fn scan_levels(config: &ScanConfig) -> Result<LevelScan, ScanError> {
    config.validate()?;
    let sigmas = config.grid();
    let states = enumerate_states(&config.caps);
    let energies = exec::map_indices(sigmas.len(), |i| {
        states.iter().map(|s| energy_f64(s, sigmas[i], config.g)).collect::<Vec<f64>>()
    });
    Ok(LevelScan { g: config.g, sigmas, states, energies })
}

/// A cluster of level crossings at one σ location.
#[derive(Clone, Debug, Serialize)]
pub struct CrossingCluster {
    pub sigma: f64,
    pub pairs: Vec<(StateLabel, StateLabel)>,
}

fn bisect_root(mut lo: f64, mut hi: f64, mut f_lo: f64, f: impl Fn(f64) -> f64) -> f64 {
    if f_lo == 0.0 {
        return lo;
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_lo < 0.0) == (f_mid < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Locate every level crossing in the range by bracketing sign changes of
/// pairwise energy differences on the grid and bisecting to `1e−12` in σ.
/// Roots are deduplicated into clusters `1e−9` wide.
pub fn find_crossings(config: &ScanConfig) -> Result<Vec<CrossingCluster>, ScanError> {
    config.validate()?;
    let sigmas = config.grid();
    let states = enumerate_states(&config.caps);
    let n = states.len();
    let g = config.g;
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();

    let located = exec::map_indices(pairs.len(), |p| {
        let (i, j) = pairs[p];
        let diff = |sigma: f64| energy_f64(&states[i], sigma, g) - energy_f64(&states[j], sigma, g);
        let mut roots = Vec::new();
        let mut prev = diff(sigmas[0]);
        for w in 1..sigmas.len() {
            let cur = diff(sigmas[w]);
            if prev == 0.0 {
                roots.push(sigmas[w - 1]);
            } else if prev * cur < 0.0 {
                roots.push(bisect_root(sigmas[w - 1], sigmas[w], prev, diff));
            }
            prev = cur;
        }
        if prev == 0.0 {
            roots.push(*sigmas.last().expect("grid is nonempty"));
        }
        (i, j, roots)
    });

    let mut events: Vec<(f64, usize, usize)> = located
        .into_iter()
        .flat_map(|(i, j, roots)| roots.into_iter().map(move |s| (s, i, j)))
        .collect();
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut clusters: Vec<CrossingCluster> = Vec::new();
    for (sigma, i, j) in events {
        match clusters.last_mut() {
            Some(c) if (sigma - c.sigma).abs() <= CROSSING_CLUSTER_TOL => {
                c.pairs.push((states[i], states[j]));
            }
            _ => clusters.push(CrossingCluster { sigma, pairs: vec![(states[i], states[j])] }),
        }
    }
    Ok(clusters)
}

/// An integer frequency tuple `(n+, n−, nz, ng)` with gcd 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrequencyRatio(pub [i64; 4]);

/// Best rational approximation `p/q` of `x ≥ 0` with `q ≤ max_denominator`,
/// by continued-fraction convergents.
pub fn best_rational(x: f64, max_denominator: u64) -> (i64, i64) {
    debug_assert!(x >= 0.0);
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as i64;
        frac = inv - inv.floor();
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 as u64 > max_denominator {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    (p1, q1)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn ratio_from_fractions(fracs: [(i64, i64); 4]) -> Option<FrequencyRatio> {
    let lcm = fracs.iter().try_fold(1i64, |acc, &(_, q)| {
        if q == 0 {
            None
        } else {
            Some(acc / gcd(acc, q) * q)
        }
    })?;
    let mut tuple = [0i64; 4];
    for (i, &(p, q)) in fracs.iter().enumerate() {
        tuple[i] = p * (lcm / q);
    }
    let g = tuple.iter().fold(0i64, |acc, &v| gcd(acc, v));
    if g == 0 {
        return None;
    }
    for v in tuple.iter_mut() {
        *v /= g;
    }
    Some(FrequencyRatio(tuple))
}

/// Detect an exact rational frequency tuple at `(σ, g)`. Each `ωi/ωz` is
/// approximated by continued fractions with denominator ≤ `max_denominator`;
/// the tuple is accepted only if every reconstructed ratio matches to
/// `1e−12`. A σ within `1e−9` of a small-denominator rational is evaluated on
/// the exact side first, so located crossings at exact points detect cleanly.
pub fn detect_rational_ratios(sigma: f64, g: f64, max_denominator: u64) -> Option<FrequencyRatio> {
    // Exact path: snap σ and g to nearby small-denominator rationals.
    let (sp, sq) = best_rational(sigma, 64);
    let (gp, gq) = best_rational(g.abs(), 64);
    if sq > 0 && gq > 0 && (sigma - sp as f64 / sq as f64).abs() <= SNAP_TOL {
        if let Ok(params) = TrapParameters::from_rationals((sp, sq), (gp, gq)) {
            if params.is_exact() {
                let fracs: Option<Vec<(i64, i64)>> = params
                    .frequencies()
                    .iter()
                    .map(|w| {
                        let r = w.as_exact()?;
                        let p = r.numer().to_i64()?;
                        let q = r.denom().to_i64()?;
                        ((q as u64) <= max_denominator).then_some((p, q))
                    })
                    .collect();
                if let Some(f) = fracs {
                    let tuple = ratio_from_fractions([f[0], f[1], f[2], f[3]])?;
                    if verify_ratio(&tuple, sigma, g) {
                        return Some(tuple);
                    }
                }
                return None;
            }
        }
    }
    // Floating path.
    let freqs = frequencies_f64(sigma, g);
    let mut fracs = [(0i64, 1i64); 4];
    for (i, &w) in freqs.iter().enumerate() {
        fracs[i] = best_rational(w, max_denominator);
    }
    let tuple = ratio_from_fractions(fracs)?;
    verify_ratio(&tuple, sigma, g).then_some(tuple)
}

fn verify_ratio(tuple: &FrequencyRatio, sigma: f64, g: f64) -> bool {
    let freqs = frequencies_f64(sigma, g);
    let nz = tuple.0[2];
    if nz <= 0 {
        return false;
    }
    freqs
        .iter()
        .zip(tuple.0.iter())
        .all(|(&w, &n)| (w - n as f64 / nz as f64).abs() <= RATIO_TOL)
}

/// Superalgebra families reachable by frequency coincidences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassifiedCase {
    /// `ωg` equals exactly one bosonic frequency, the others distinct.
    Su11Family,
    /// Two pairs of equal frequencies: `ω+ = ωz`, `ωg = ω−`.
    So3Su11,
    /// Three equal frequencies: `ω+ = ωz = ωg`.
    Su21,
}

impl ClassifiedCase {
    pub fn name(self) -> &'static str {
        match self {
            ClassifiedCase::Su11Family => "su11_family",
            ClassifiedCase::So3Su11 => "so3_su11",
            ClassifiedCase::Su21 => "su21",
        }
    }
}

/// Classify a parameter point by which frequencies coincide. Among the
/// bosonic frequencies only `ω+ = ωz` is possible (at `σ = 3/2`); `ω−` can
/// never meet `ωz`.
pub fn classify_point(sigma: f64, g: f64) -> Result<Option<ClassifiedCase>, ScanError> {
    if sigma <= std::f64::consts::SQRT_2 {
        return Err(ScanError::BadSigmaRange(sigma, sigma));
    }
    let [wp, wm, wz, wg] = frequencies_f64(sigma, g);
    let eq = |x: f64, y: f64| (x - y).abs() <= RATIO_TOL;
    let bosonic_pair = eq(wp, wz);
    Ok(if bosonic_pair && eq(wg, wp) {
        Some(ClassifiedCase::Su21)
    } else if bosonic_pair && eq(wg, wm) {
        Some(ClassifiedCase::So3Su11)
    } else if !bosonic_pair && (eq(wg, wp) ^ eq(wg, wm) ^ eq(wg, wz)) {
        Some(ClassifiedCase::Su11Family)
    } else {
        None
    })
}

/// A group of states degenerate at one σ point.
#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyGroup {
    pub energy: f64,
    pub members: Vec<StateLabel>,
}

impl DegeneracyGroup {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// Partition the capped state set into groups of equal energy at `(σ, g)`,
/// within `tol`.
pub fn degeneracy_groups(sigma: f64, g: f64, caps: &StateCaps, tol: f64) -> Vec<DegeneracyGroup> {
    let states = enumerate_states(caps);
    let mut with_energy: Vec<(f64, StateLabel)> =
        states.iter().map(|s| (energy_f64(s, sigma, g), *s)).collect();
    with_energy.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut groups: Vec<DegeneracyGroup> = Vec::new();
    for (e, s) in with_energy {
        match groups.last_mut() {
            Some(gr) if (e - gr.energy).abs() <= tol => gr.members.push(s),
            _ => groups.push(DegeneracyGroup { energy: e, members: vec![s] }),
        }
    }
    groups
}

/// Exact degeneracy grouping at an exact parameter point.
pub fn degeneracy_groups_exact(
    params: &TrapParameters,
    caps: &StateCaps,
) -> Vec<(Scalar, Vec<StateLabel>)> {
    use std::collections::BTreeMap;
    let mut by_energy: BTreeMap<num::BigRational, Vec<StateLabel>> = BTreeMap::new();
    for s in enumerate_states(caps) {
        let e = params
            .energy(&s)
            .as_exact()
            .expect("exact grouping requires exact parameters")
            .clone();
        by_energy.entry(e).or_default().push(s);
    }
    by_energy
        .into_iter()
        .map(|(e, members)| (Scalar::Exact(e), members))
        .collect()
}

/// Degenerate groups per σ grid point plus the located crossing clusters.
#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyReport {
    pub g: f64,
    pub points: Vec<SigmaGroups>,
    pub crossings: Vec<CrossingCluster>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaGroups {
    pub sigma: f64,
    pub groups: Vec<DegeneracyGroup>,
}

pub fn degeneracy_report(config: &ScanConfig) -> Result<DegeneracyReport, ScanError> {
    config.validate()?;
    let sigmas = config.grid();
    let points = exec::map_indices(sigmas.len(), |i| SigmaGroups {
        sigma: sigmas[i],
        groups: degeneracy_groups(sigmas[i], config.g, &config.caps, config.energy_tol),
    });
    let crossings = find_crossings(config)?;
    Ok(DegeneracyReport { g: config.g, points, crossings })
}

/// One row of the frequency-curve data: the four trap frequencies plus the
/// spin frequency at each requested g.
#[derive(Clone, Debug, Serialize)]
pub struct Figure1Row {
    pub sigma: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub omega_z: f64,
    pub omega_g: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Figure1Data {
    pub g_values: Vec<f64>,
    pub rows: Vec<Figure1Row>,
}

/// Frequency curves over the grid. Every grid point satisfies
/// `ω+ ω− = ωz²/2`, hence `ω− ≤ ωz/√2 < ωz`: no four-fold coincidence can
/// exist anywhere.
pub fn figure1_data(g_values: &[f64], sigma_grid: &[f64]) -> Result<Figure1Data, ScanError> {
    if sigma_grid.len() < 2 {
        return Err(ScanError::TooFewPoints(sigma_grid.len()));
    }
    for &s in sigma_grid {
        if s <= std::f64::consts::SQRT_2 {
            return Err(ScanError::BadSigmaRange(s, s));
        }
    }
    let rows = exec::map_indices(sigma_grid.len(), |i| {
        let sigma = sigma_grid[i];
        let [wp, wm, wz, _] = frequencies_f64(sigma, 1.0);
        Figure1Row {
            sigma,
            omega_plus: wp,
            omega_minus: wm,
            omega_z: wz,
            omega_g: g_values.iter().map(|&g| g.abs() * sigma / 2.0).collect(),
        }
    });
    Ok(Figure1Data { g_values: g_values.to_vec(), rows })
}

/// A σ grid of exact hundredths `h/100` for `h ∈ [min_h, max_h]`; the magic
/// points 1.50 and 2.25 are then grid values with no rounding drift.
pub fn hundredths_grid(min_h: u32, max_h: u32) -> Vec<f64> {
    (min_h..=max_h).map(|h| h as f64 / 100.0).collect()
}

/// Finite-difference slope of `ω±(σ)` just above the `σ = √2` wall; grows
/// without bound as `h → 0`.
pub fn omega_pm_slope_near_wall(h: f64) -> f64 {
    let s0 = std::f64::consts::SQRT_2;
    let w = |s: f64| ((s * s - 2.0).max(0.0)).sqrt();
    (w(s0 + 2.0 * h) - w(s0 + h)) / h / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(na: u32, nb: u32, nc: u32, nf: u8) -> StateLabel {
        StateLabel { na, nb, nc, nf }
    }

    #[test]
    fn config_validation() {
        assert!(ScanConfig::new(1.45, 3.0, 100, 2.0 / 3.0).validate().is_ok());
        assert!(ScanConfig::new(1.3, 3.0, 100, 2.0 / 3.0).validate().is_err());
        assert!(ScanConfig::new(1.45, 1.44, 100, 2.0 / 3.0).validate().is_err());
    }

    #[test]
    fn levels_fall_on_half_integer_lattice_at_supersymmetric_point() {
        // g = 2/3 at σ = 3/2: H = (Na + Nc + 1) − ½(Nb − Nf + 1), so every
        // energy is a half-integer.
        let caps = StateCaps { na: 3, nb: 4, nc: 2 };
        for state in enumerate_states(&caps) {
            let e = energy_f64(&state, 1.5, 2.0 / 3.0);
            assert!(
                ((2.0 * e).round() - 2.0 * e).abs() < 1e-12,
                "E({state}) = {e} is off the lattice"
            );
        }
        // g = 4/3 at σ = 3/2: pairwise differences are half-integers.
        let states = enumerate_states(&caps);
        let e0 = energy_f64(&states[0], 1.5, 4.0 / 3.0);
        for state in &states {
            let d = energy_f64(state, 1.5, 4.0 / 3.0) - e0;
            assert!(((2.0 * d).round() - 2.0 * d).abs() < 1e-12);
        }
    }

    #[test]
    fn scan_levels_shape_and_order() {
        let config = ScanConfig::new(1.45, 3.0, 31, 4.0 / 3.0);
        let scan = scan_levels(&config).unwrap();
        assert_eq!(scan.sigmas.len(), 32);
        assert_eq!(scan.energies.len(), 32);
        assert_eq!(scan.energies[0].len(), scan.states.len());
        assert!(scan.sigmas.windows(2).all(|w| w[0] < w[1]));
        // Single ground state at σ = 3/2 for g = 4/3 has energy 1/4.
        let idx = scan.sigmas.iter().position(|&x| (x - 1.5).abs() < 1e-9).unwrap();
        let ground = scan.states.iter().position(|st| *st == s(0, 0, 0, 0)).unwrap();
        assert!((scan.energies[idx][ground] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn crossings_for_figure_two_ranges() {
        let mut config = ScanConfig::new(1.45, 3.0, 310, 2.0 / 3.0);
        config.caps = StateCaps::figure2();
        let clusters = find_crossings(&config).unwrap();
        let near = |target: f64| {
            clusters
                .iter()
                .filter(move |c| (c.sigma - target).abs() <= 1e-6)
                .count()
        };
        assert!(near(1.5) >= 1, "no crossing cluster at 1.5");
        assert!(near(2.25) >= 1, "no crossing cluster at 2.25");
    }

    #[test]
    fn analytic_crossing_of_quoted_pair() {
        // |1,0,0,0> and |0,0,2,0> cross where ω+ = 2ωz, i.e. σ = 9/4.
        let mut config = ScanConfig::new(2.0, 2.5, 200, 2.0 / 3.0);
        config.caps = StateCaps { na: 1, nb: 0, nc: 2 };
        let clusters = find_crossings(&config).unwrap();
        let hit = clusters
            .iter()
            .find(|c| c.pairs.iter().any(|(x, y)| {
                (*x, *y) == (s(0, 0, 2, 0), s(1, 0, 0, 0)) || (*x, *y) == (s(1, 0, 0, 0), s(0, 0, 2, 0))
            }))
            .expect("pair must cross in range");
        assert!((hit.sigma - 2.25).abs() < 1e-9, "crossing at {}", hit.sigma);
    }

    #[test]
    fn crossing_location_is_grid_stable() {
        let locate = |steps: usize| {
            let config = ScanConfig::new(1.45, 3.0, steps, 4.0 / 3.0);
            find_crossings(&config)
                .unwrap()
                .iter()
                .find(|c| (c.sigma - 1.5).abs() < 1e-3)
                .map(|c| c.sigma)
                .expect("crossing near 1.5")
        };
        let coarse = locate(155);
        let fine = locate(310);
        assert!((coarse - fine).abs() < 1e-8);
    }

    #[test]
    fn rational_ratio_examples() {
        assert_eq!(
            detect_rational_ratios(2.25, 2.0 / 9.0, 16),
            Some(FrequencyRatio([8, 1, 4, 1]))
        );
        assert_eq!(
            detect_rational_ratios(1.5, 4.0 / 3.0, 16),
            Some(FrequencyRatio([2, 1, 2, 2]))
        );
        assert_eq!(
            detect_rational_ratios(2.25, 2.0 / 3.0, 16),
            Some(FrequencyRatio([8, 1, 4, 3]))
        );
        assert_eq!(detect_rational_ratios(1.5 + 1e-6, 4.0 / 3.0, 16), None);
    }

    #[test]
    fn ratio_respects_denominator_cap() {
        // (11/6, 18/11): frequencies (3/2, 1/3, 1, 3/2) → (9, 2, 6, 9).
        let sigma = 11.0 / 6.0;
        let g = 18.0 / 11.0;
        assert_eq!(detect_rational_ratios(sigma, g, 16), Some(FrequencyRatio([9, 2, 6, 9])));
        assert_eq!(detect_rational_ratios(sigma, g, 2), None);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_point(1.5, 4.0 / 3.0).unwrap(), Some(ClassifiedCase::Su21));
        assert_eq!(classify_point(1.5, 2.0 / 3.0).unwrap(), Some(ClassifiedCase::So3Su11));
        assert_eq!(
            classify_point(11.0 / 6.0, 18.0 / 11.0).unwrap(),
            Some(ClassifiedCase::Su11Family)
        );
        assert_eq!(
            classify_point(2.25, 2.0 / 9.0).unwrap(),
            Some(ClassifiedCase::Su11Family)
        );
        // (3/2, 1): ωg = 3/4 matches nothing.
        assert_eq!(classify_point(1.5, 1.0).unwrap(), None);
        // (9/4, 2/3): all four distinct (but rationally related).
        assert_eq!(classify_point(2.25, 2.0 / 3.0).unwrap(), None);
        assert!(classify_point(1.2, 1.0).is_err());
    }

    #[test]
    fn groups_partition_states() {
        let caps = StateCaps::figure2();
        let groups = degeneracy_groups(1.5, 2.0 / 3.0, &caps, 1e-9);
        let total: usize = groups.iter().map(DegeneracyGroup::multiplicity).sum();
        assert_eq!(total, enumerate_states(&caps).len());
        assert!(groups.iter().any(|g| g.multiplicity() >= 2));
        for g in &groups {
            let spread = g
                .members
                .iter()
                .map(|s| energy_f64(s, 1.5, 2.0 / 3.0))
                .fold((f64::MAX, f64::MIN), |(lo, hi), e| (lo.min(e), hi.max(e)));
            assert!(spread.1 - spread.0 <= 1e-9);
        }
    }

    #[test]
    fn exact_grouping_matches_float_grouping_at_catalog_point() {
        let params = TrapParameters::from_rationals((3, 2), (2, 3)).unwrap();
        let caps = StateCaps::figure2();
        let exact = degeneracy_groups_exact(&params, &caps);
        let float = degeneracy_groups(1.5, 2.0 / 3.0, &caps, 1e-9);
        assert_eq!(exact.len(), float.len());
        let total: usize = exact.iter().map(|(_, m)| m.len()).sum();
        assert_eq!(total, enumerate_states(&caps).len());
    }

    #[test]
    fn figure1_identities() {
        let grid = hundredths_grid(143, 300);
        let data = figure1_data(&[4.0 / 3.0, 2.0 / 3.0], &grid).unwrap();
        for row in &data.rows {
            assert_eq!(row.omega_z, 1.0);
            // ω+ ω− = 1/2 exactly (to rounding).
            assert!((row.omega_plus * row.omega_minus - 0.5).abs() < 1e-12);
            // ω− stays strictly below ωz; no four-fold coincidence exists.
            assert!(row.omega_minus / row.omega_z < 0.7072);
        }
        // Triple intersection at σ = 3/2 for g = 4/3, exact in f64 because the
        // grid value 1.5 and Ω = 1/2 are dyadic.
        let at = data.rows.iter().find(|r| r.sigma == 1.5).expect("grid holds 1.5");
        assert_eq!(at.omega_plus, 1.0);
        assert_eq!(at.omega_z, 1.0);
        assert_eq!(at.omega_g[0], 1.0);
        // And exactly on the rational side.
        let params = TrapParameters::from_rationals((3, 2), (4, 3)).unwrap();
        let [wp, _, wz, wg] = params.frequencies();
        assert!(wp.equals(&wz) && wz.equals(&wg));
    }

    #[test]
    fn crossing_pairs_match_exact_degeneracies() {
        // At a detected rational point the crossing pairs are exactly the
        // state pairs with equal exact energies.
        for (sigma, point) in [((3i64, 2i64), 1.5f64), ((9, 4), 2.25)] {
            let params = TrapParameters::from_rationals(sigma, (2, 3)).unwrap();
            let caps = StateCaps::figure2();
            let states = enumerate_states(&caps);
            let mut exact_pairs = Vec::new();
            for i in 0..states.len() {
                for j in (i + 1)..states.len() {
                    if params.energy(&states[i]).equals(&params.energy(&states[j])) {
                        exact_pairs.push((states[i], states[j]));
                    }
                }
            }
            let mut config = ScanConfig::new(1.45, 3.0, 310, 2.0 / 3.0);
            config.caps = caps;
            let clusters = find_crossings(&config).unwrap();
            let mut located: Vec<(StateLabel, StateLabel)> = clusters
                .iter()
                .filter(|c| (c.sigma - point).abs() <= 1e-6)
                .flat_map(|c| c.pairs.iter().copied())
                .collect();
            located.sort();
            located.dedup();
            exact_pairs.sort();
            assert_eq!(located, exact_pairs, "pair sets differ at sigma = {point}");
        }
    }

    #[test]
    fn omega_slopes_blow_up_at_the_wall() {
        let mut last = 0.0;
        for h in [1e-3, 1e-5, 1e-7, 1e-9] {
            let slope = omega_pm_slope_near_wall(h);
            assert!(slope > last, "slope must grow as the grid refines");
            last = slope;
        }
        assert!(last > 1e3);
    }
}
