//! Truncated Fock-space matrix realization: the independent double-precision
//! oracle for the exact engine.
//!
//! Basis states `|Na, Nb, Nc, Nf⟩` are enumerated lexicographically with `Na`
//! outermost and `Nf` innermost: `index = ((Na·Cb + Nb)·Cc + Nc)·2 + Nf`.
//! All ladder matrix elements are `√n` factors, hence real. Truncation
//! artifacts are controlled by asserting relations only on an interior
//! subspace whose per-mode margin covers the raising power of everything in
//! the check. The exact engine is authoritative; these matrices exist to
//! catch engine bugs, not to define truth.

use crate::algebra::{Monomial, OperatorPoly, Symbol};
use crate::exec;
use crate::trap::StateLabel;
use num::ToPrimitive;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FockError {
    #[error("margin {margin} must be smaller than the cutoff {cutoff}")]
    MarginTooLarge { margin: u32, cutoff: u32 },
    #[error("operator dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A truncated Fock basis with per-mode bosonic cutoffs; dimension
/// `Ca·Cb·Cc·2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockBasis {
    ca: u32,
    cb: u32,
    cc: u32,
}

impl FockBasis {
    pub fn new(ca: u32, cb: u32, cc: u32) -> FockBasis {
        assert!(ca >= 1 && cb >= 1 && cc >= 1, "cutoffs must be positive");
        FockBasis { ca, cb, cc }
    }

    pub fn uniform(cutoff: u32) -> FockBasis {
        FockBasis::new(cutoff, cutoff, cutoff)
    }

    pub fn cutoffs(&self) -> [u32; 3] {
        [self.ca, self.cb, self.cc]
    }

    pub fn dimension(&self) -> usize {
        self.ca as usize * self.cb as usize * self.cc as usize * 2
    }

    /// Index of a state, or `None` outside the cutoffs.
    pub fn index(&self, s: &StateLabel) -> Option<usize> {
        if s.na >= self.ca || s.nb >= self.cb || s.nc >= self.cc || s.nf > 1 {
            return None;
        }
        Some(
            ((s.na as usize * self.cb as usize + s.nb as usize) * self.cc as usize
                + s.nc as usize)
                * 2
                + s.nf as usize,
        )
    }

    /// Inverse of [`FockBasis::index`].
    pub fn state(&self, index: usize) -> StateLabel {
        assert!(index < self.dimension());
        let nf = (index % 2) as u8;
        let rest = index / 2;
        let nc = (rest % self.cc as usize) as u32;
        let rest = rest / self.cc as usize;
        let nb = (rest % self.cb as usize) as u32;
        let na = (rest / self.cb as usize) as u32;
        StateLabel { na, nb, nc, nf }
    }

    pub fn states(&self) -> impl Iterator<Item = StateLabel> + '_ {
        (0..self.dimension()).map(|i| self.state(i))
    }
}

/// A real sparse matrix stored row-major; explicit zeros are never kept.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    rows: Vec<BTreeMap<usize, f64>>,
}

impl SparseOperator {
    pub fn zero(dim: usize) -> SparseOperator {
        SparseOperator { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> SparseOperator {
        let mut m = SparseOperator::zero(dim);
        for i in 0..dim {
            m.rows[i].insert(i, 1.0);
        }
        m
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.rows[row].get(&col).copied().unwrap_or(0.0)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    fn add_to(&mut self, row: usize, col: usize, value: f64) {
        if value == 0.0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.rows[row].entry(col) {
            Entry::Vacant(e) => {
                e.insert(value);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + value;
                if sum == 0.0 {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SparseOperator) -> Result<SparseOperator, FockError> {
        if self.dim != other.dim {
            return Err(FockError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for (&c, &v) in row {
                out.add_to(r, c, v);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseOperator) -> Result<SparseOperator, FockError> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, factor: f64) -> SparseOperator {
        if factor == 0.0 {
            return SparseOperator::zero(self.dim);
        }
        SparseOperator {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(&c, &v)| (c, v * factor)).collect())
                .collect(),
        }
    }

    pub fn matmul(&self, other: &SparseOperator) -> Result<SparseOperator, FockError> {
        if self.dim != other.dim {
            return Err(FockError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = SparseOperator::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (&k, &v) in row {
                for (&c, &w) in &other.rows[k] {
                    out.add_to(r, c, v * w);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SparseOperator {
        let mut out = SparseOperator::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, &v) in row {
                out.add_to(c, r, v);
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|row| row.values())
            .fold(0.0f64, |acc, &v| acc.max(v.abs()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(r, row)| row.keys().all(|&c| c == r))
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.entry(i, i)).collect()
    }

    /// Row-major coordinate-list entries.
    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, &v)| (r, c, v)))
            .collect()
    }

    /// Coordinate-list text dump, one `row col value` line per entry.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in self.triplets() {
            out.push_str(&format!("{r} {c} {v}\n"));
        }
        out
    }
}

/// Apply a canonical monomial to a basis state: lowering factors act first,
/// raising last, mode by mode; raising past a cutoff annihilates the state.
/// The single fermionic mode carries no sign string.
fn apply_monomial(m: &Monomial, s: &StateLabel, basis: &FockBasis) -> Option<(StateLabel, f64)> {
    let mut amp = 1.0f64;

    let mut nf = s.nf;
    if m.qf == 1 {
        if nf == 0 {
            return None;
        }
        nf = 0;
    }
    if m.pf == 1 {
        if nf == 1 {
            return None;
        }
        nf = 1;
    }

    let mut bose = |n0: u32, lower: u8, raise: u8, cutoff: u32| -> Option<u32> {
        let mut n = n0;
        for _ in 0..lower {
            if n == 0 {
                return None;
            }
            amp *= (n as f64).sqrt();
            n -= 1;
        }
        for _ in 0..raise {
            amp *= ((n + 1) as f64).sqrt();
            n += 1;
        }
        if n >= cutoff {
            return None;
        }
        Some(n)
    };

    let na = bose(s.na, m.qa, m.pa, basis.ca)?;
    let nb = bose(s.nb, m.qb, m.pb, basis.cb)?;
    let nc = bose(s.nc, m.qc, m.pc, basis.cc)?;
    Some((StateLabel { na, nb, nc, nf }, amp))
}

/// Matrix of a single ladder symbol on the truncated basis.
pub fn ladder_matrix(symbol: Symbol, basis: &FockBasis) -> SparseOperator {
    to_matrix(&OperatorPoly::symbol(symbol), basis)
}

/// Matrix of an operator polynomial: sum over monomials of the ladder-factor
/// products in the monomial's written order, scaled by the (rational → f64)
/// coefficients.
pub fn to_matrix(p: &OperatorPoly, basis: &FockBasis) -> SparseOperator {
    let dim = basis.dimension();
    let mut out = SparseOperator::zero(dim);
    for (m, coeff) in p.iter() {
        let c = coeff.to_f64().expect("rational converts to f64");
        for col in 0..dim {
            let s = basis.state(col);
            if let Some((target, amp)) = apply_monomial(m, &s, basis) {
                let row = basis.index(&target).expect("target within cutoffs");
                out.add_to(row, col, c * amp);
            }
        }
    }
    out
}

/// Diagonal projector onto states at least `margin` below each bosonic
/// cutoff. Relation checks are asserted only on this subspace.
pub fn interior_projector(basis: &FockBasis, margin: &[u32; 3]) -> Result<SparseOperator, FockError> {
    let cutoffs = basis.cutoffs();
    for i in 0..3 {
        if margin[i] >= cutoffs[i] {
            return Err(FockError::MarginTooLarge { margin: margin[i], cutoff: cutoffs[i] });
        }
    }
    let mut p = SparseOperator::zero(basis.dimension());
    for (i, s) in basis.states().enumerate() {
        if s.na < basis.ca - margin[0] && s.nb < basis.cb - margin[1] && s.nc < basis.cc - margin[2]
        {
            p.add_to(i, i, 1.0);
        }
    }
    Ok(p)
}

/// Per-mode margin that makes truncation artifacts impossible for a check
/// combining the given polynomials multiplicatively: the raising exponents
/// add along a product, so the margins sum.
pub fn product_margin(factors: &[&OperatorPoly]) -> [u32; 3] {
    let mut m = [0u32; 3];
    for p in factors {
        let r = p.max_raising();
        for i in 0..3 {
            m[i] += r[i];
        }
    }
    m
}

/// Outcome of a numeric relation check.
#[derive(Clone, Copy, Debug)]
pub struct RelationCheck {
    pub residual: f64,
    pub pass: bool,
}

/// Max interior residual `|P (M(lhs) − M(rhs)) P|`; passes iff `≤ tol`.
pub fn check_relation_numeric(
    lhs: &OperatorPoly,
    rhs: &OperatorPoly,
    basis: &FockBasis,
    margin: &[u32; 3],
    tol: f64,
) -> Result<RelationCheck, FockError> {
    let diff = to_matrix(lhs, basis).sub(&to_matrix(rhs, basis))?;
    let projector = interior_projector(basis, margin)?;
    let residual = projector.matmul(&diff)?.matmul(&projector)?.max_abs();
    Ok(RelationCheck { residual, pass: residual <= tol })
}

/// Max interior residual of `A·B − (−1)^{|A||B|} B·A − M(expected)` where the
/// bracket is formed from the generator matrices themselves. This is the
/// genuinely independent route: the product side never consults the exact
/// engine's multiplication.
pub fn check_bracket_numeric(
    lhs: &OperatorPoly,
    rhs: &OperatorPoly,
    expected: &OperatorPoly,
    basis: &FockBasis,
    tol: f64,
) -> Result<RelationCheck, FockError> {
    let both_odd = matches!(
        (lhs.grading(), rhs.grading()),
        (crate::algebra::Grading::Odd, crate::algebra::Grading::Odd)
    );
    let a = to_matrix(lhs, basis);
    let b = to_matrix(rhs, basis);
    let forward = a.matmul(&b)?;
    let backward = b.matmul(&a)?;
    let bracket = if both_odd { forward.add(&backward)? } else { forward.sub(&backward)? };
    let diff = bracket.sub(&to_matrix(expected, basis))?;
    let margin = product_margin(&[lhs, rhs]);
    let expected_margin = expected.max_raising();
    let margin = [
        margin[0].max(expected_margin[0]),
        margin[1].max(expected_margin[1]),
        margin[2].max(expected_margin[2]),
    ];
    let projector = interior_projector(basis, &margin)?;
    let residual = projector.matmul(&diff)?.matmul(&projector)?.max_abs();
    Ok(RelationCheck { residual, pass: residual <= tol })
}

/// Numeric product check `M(p)·M(q)` vs `M(pq)` on the interior subspace,
/// parallel over nothing (the matrices are small) but batched for callers.
pub fn product_agreement(
    p: &OperatorPoly,
    q: &OperatorPoly,
    basis: &FockBasis,
) -> Result<f64, FockError> {
    let exact_route = to_matrix(&p.multiply(q), basis);
    let matrix_route = to_matrix(p, basis).matmul(&to_matrix(q, basis))?;
    let margin = product_margin(&[p, q]);
    let projector = interior_projector(basis, &margin)?;
    let diff = matrix_route.sub(&exact_route)?;
    Ok(projector.matmul(&diff)?.matmul(&projector)?.max_abs())
}

/// Batch variant of [`check_bracket_numeric`], parallel over the checks.
pub fn check_brackets_numeric(
    checks: &[(OperatorPoly, OperatorPoly, OperatorPoly)],
    basis: &FockBasis,
    tol: f64,
) -> Result<Vec<RelationCheck>, FockError> {
    let results = exec::map_indices(checks.len(), |i| {
        let (lhs, rhs, expected) = &checks[i];
        check_bracket_numeric(lhs, rhs, expected, basis, tol)
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn state(na: u32, nb: u32, nc: u32, nf: u8) -> StateLabel {
        StateLabel::new(na, nb, nc, nf).unwrap()
    }

    #[test]
    fn index_is_a_bijection() {
        let basis = FockBasis::new(3, 4, 2);
        for i in 0..basis.dimension() {
            let s = basis.state(i);
            assert_eq!(basis.index(&s), Some(i));
        }
        assert_eq!(basis.index(&state(3, 0, 0, 0)), None);
    }

    #[test]
    fn ladder_amplitudes() {
        let basis = FockBasis::uniform(4);
        let a = ladder_matrix(Symbol::A, &basis);
        let adag = ladder_matrix(Symbol::ADag, &basis);
        let from = basis.index(&state(1, 0, 0, 0)).unwrap();
        // a |1,0,0,0> = 1.0 |0,0,0,0>
        assert_eq!(a.entry(basis.index(&state(0, 0, 0, 0)).unwrap(), from), 1.0);
        // a† |1,0,0,0> = √2 |2,0,0,0>
        let up = basis.index(&state(2, 0, 0, 0)).unwrap();
        assert!((adag.entry(up, from) - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn fermion_ladder_saturates() {
        let basis = FockBasis::uniform(2);
        let fdag = ladder_matrix(Symbol::FDag, &basis);
        let occupied = basis.index(&state(0, 0, 0, 1)).unwrap();
        // f† on an occupied state vanishes
        for r in 0..basis.dimension() {
            assert_eq!(fdag.entry(r, occupied), 0.0);
        }
        let empty = basis.index(&state(0, 0, 0, 0)).unwrap();
        assert_eq!(fdag.entry(occupied, empty), 1.0);
    }

    #[test]
    fn raising_past_cutoff_is_zero() {
        let basis = FockBasis::uniform(3);
        let adag = ladder_matrix(Symbol::ADag, &basis);
        let top = basis.index(&state(2, 0, 0, 0)).unwrap();
        for r in 0..basis.dimension() {
            assert_eq!(adag.entry(r, top), 0.0, "a† on the top state must vanish");
        }
    }

    #[test]
    fn number_matrix_is_diagonal() {
        let basis = FockBasis::uniform(3);
        let nf = to_matrix(&OperatorPoly::word(&[Symbol::FDag, Symbol::F]), &basis);
        assert!(nf.is_diagonal());
        for (i, s) in basis.states().enumerate() {
            assert_eq!(nf.entry(i, i), s.nf as f64);
        }
    }

    #[test]
    fn commutation_holds_on_interior_only() {
        let basis = FockBasis::uniform(8);
        let a = OperatorPoly::symbol(Symbol::A);
        let adag = OperatorPoly::symbol(Symbol::ADag);
        // [a, a†] formed from the matrices fails on the top state without a
        // projection: a† annihilates it in the truncated space.
        let ma = to_matrix(&a, &basis);
        let mad = to_matrix(&adag, &basis);
        let bracket = ma.matmul(&mad).unwrap().sub(&mad.matmul(&ma).unwrap()).unwrap();
        let raw = bracket.sub(&SparseOperator::identity(basis.dimension())).unwrap();
        assert!(raw.max_abs() >= 1.0);
        // With margin 1 the identity holds to rounding.
        let check = check_bracket_numeric(&a, &adag, &OperatorPoly::one(), &basis, 1e-12).unwrap();
        assert!(check.pass, "residual = {}", check.residual);
    }

    #[test]
    fn projector_rank_matches_count() {
        let basis = FockBasis::uniform(8);
        let p = interior_projector(&basis, &[2, 2, 2]).unwrap();
        let rank: f64 = p.diagonal().iter().sum();
        assert_eq!(rank, (6 * 6 * 6 * 2) as f64);
        let identity = interior_projector(&basis, &[0, 0, 0]).unwrap();
        assert_eq!(identity, SparseOperator::identity(basis.dimension()));
    }

    #[test]
    fn margin_at_cutoff_is_rejected() {
        let basis = FockBasis::uniform(4);
        assert_eq!(
            interior_projector(&basis, &[4, 0, 0]).unwrap_err(),
            FockError::MarginTooLarge { margin: 4, cutoff: 4 }
        );
    }

    #[test]
    fn hamiltonian_diagonal_matches_energy() {
        use crate::trap::TrapParameters;
        let params = TrapParameters::from_rationals((3, 2), (4, 3)).unwrap();
        let h = params.hamiltonian_poly().unwrap();
        let basis = FockBasis::uniform(6);
        let m = to_matrix(&h, &basis);
        assert!(m.is_diagonal());
        for (i, s) in basis.states().enumerate() {
            let expected = params.energy(&s).to_f64();
            assert!((m.entry(i, i) - expected).abs() < 1e-12, "state {s}");
        }
        // Ground-state entry is 1/4 at this point.
        let ground = basis.index(&state(0, 0, 0, 0)).unwrap();
        assert_eq!(m.entry(ground, ground), 0.25);
    }

    #[test]
    fn deliberately_wrong_relation_has_large_residual() {
        // {F+2, F−2} equals K̄ = b†b − f†f + 1, not K = b†b + f†f.
        let basis = FockBasis::uniform(8);
        let fp = OperatorPoly::word(&[Symbol::BDag, Symbol::FDag]);
        let fm = OperatorPoly::word(&[Symbol::B, Symbol::F]);
        let k = OperatorPoly::word(&[Symbol::BDag, Symbol::B])
            .add(&OperatorPoly::word(&[Symbol::FDag, Symbol::F]));
        let kbar = OperatorPoly::word(&[Symbol::BDag, Symbol::B])
            .sub(&OperatorPoly::word(&[Symbol::FDag, Symbol::F]))
            .add(&OperatorPoly::one());
        let good = check_bracket_numeric(&fp, &fm, &kbar, &basis, 1e-12).unwrap();
        assert!(good.pass, "residual = {}", good.residual);
        let bad = check_bracket_numeric(&fp, &fm, &k, &basis, 1e-12).unwrap();
        assert!(bad.residual >= 1.0);
    }

    #[test]
    fn empty_relation_has_zero_residual() {
        let basis = FockBasis::uniform(4);
        let zero = OperatorPoly::zero();
        let check = check_relation_numeric(&zero, &zero, &basis, &[0, 0, 0], 1e-12).unwrap();
        assert_eq!(check.residual, 0.0);
    }

    #[test]
    fn monomials_shift_states_by_their_signature() {
        let basis = FockBasis::uniform(5);
        let p = OperatorPoly::parse("1 ad^2 b c f").unwrap();
        let m = to_matrix(&p, &basis);
        for (r, c, _) in m.triplets() {
            let target = basis.state(r);
            let source = basis.state(c);
            assert_eq!(target.na as i32 - source.na as i32, 2);
            assert_eq!(target.nb as i32 - source.nb as i32, -1);
            assert_eq!(target.nc as i32 - source.nc as i32, -1);
            assert_eq!(target.nf as i32 - source.nf as i32, -1);
        }
    }

    #[test]
    fn dagger_transposes_the_matrix() {
        let basis = FockBasis::uniform(4);
        for text in ["1 ad c", "1 bd fd", "1 ad a + 1 fd f", "1/2 ad^2 b"] {
            let p = OperatorPoly::parse(text).unwrap();
            let lhs = to_matrix(&p.dagger(), &basis);
            let rhs = to_matrix(&p, &basis).transpose();
            assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-15, "failed for {text}");
        }
    }

    #[test]
    fn product_agreement_on_interior() {
        let basis = FockBasis::uniform(8);
        let p = OperatorPoly::word(&[Symbol::ADag, Symbol::A]);
        let q = p.clone();
        // (a†a)(a†a) = (a†)²a² + a†a checked through the matrix route.
        let sq = p.multiply(&q);
        let expected = OperatorPoly::word(&[Symbol::ADag, Symbol::ADag, Symbol::A, Symbol::A])
            .add(&OperatorPoly::word(&[Symbol::ADag, Symbol::A]));
        assert_eq!(sq, expected);
        assert!(product_agreement(&p, &q, &basis).unwrap() < 1e-12);
        let r = OperatorPoly::parse("1 a bd f + 1/3 cd").unwrap().scale(&ratio(2, 1));
        let s = OperatorPoly::parse("1 ad^2 + 1 b fd").unwrap();
        assert!(product_agreement(&r, &s, &basis).unwrap() < 1e-12);
    }
}
