//! Exact canonical arithmetic for normal-ordered operator polynomials in
//! three bosonic modes (`a`, `b`, `c`) and one fermionic mode (`f`).
//!
//! A [`Monomial`] is the normal-ordered word
//! `(a†)^pa a^qa (b†)^pb b^qb (c†)^pc c^qc (f†)^pf f^qf` encoded by its
//! exponent tuple; an [`OperatorPoly`] maps monomials to arbitrary-precision
//! rational coefficients. Products rewrite to canonical form on the fly using
//! `a a† = a†a + 1` (per bosonic mode), `f f† = 1 − f†f`, and
//! `f² = (f†)² = 0`; fermionic factors anticommute with each other and
//! commute with every bosonic factor. Equality of canonical forms is
//! structural, so operator identities are decidable and exact.
//!
//! Values are immutable after construction and all operations are pure, so
//! polynomials can be shared freely across threads.

mod parse;

pub use parse::ParseError;

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// The eight ladder symbols, in the global normal-ordering precedence used
/// for the canonical written form of a monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    ADag,
    A,
    BDag,
    B,
    CDag,
    C,
    FDag,
    F,
}

impl Symbol {
    pub const ALL: [Symbol; 8] = [
        Symbol::ADag,
        Symbol::A,
        Symbol::BDag,
        Symbol::B,
        Symbol::CDag,
        Symbol::C,
        Symbol::FDag,
        Symbol::F,
    ];

    /// Text token used by the plain-text serialization.
    pub fn token(self) -> &'static str {
        match self {
            Symbol::ADag => "ad",
            Symbol::A => "a",
            Symbol::BDag => "bd",
            Symbol::B => "b",
            Symbol::CDag => "cd",
            Symbol::C => "c",
            Symbol::FDag => "fd",
            Symbol::F => "f",
        }
    }

    pub fn from_token(token: &str) -> Option<Symbol> {
        Symbol::ALL.iter().copied().find(|s| s.token() == token)
    }

    pub fn dagger(self) -> Symbol {
        match self {
            Symbol::ADag => Symbol::A,
            Symbol::A => Symbol::ADag,
            Symbol::BDag => Symbol::B,
            Symbol::B => Symbol::BDag,
            Symbol::CDag => Symbol::C,
            Symbol::C => Symbol::CDag,
            Symbol::FDag => Symbol::F,
            Symbol::F => Symbol::FDag,
        }
    }

    pub fn is_fermionic(self) -> bool {
        matches!(self, Symbol::F | Symbol::FDag)
    }

    pub fn is_creation(self) -> bool {
        matches!(self, Symbol::ADag | Symbol::BDag | Symbol::CDag | Symbol::FDag)
    }
}

/// Fermion-number parity of a homogeneous operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Result of [`OperatorPoly::grading`]: the parity when every monomial shares
/// one, `Mixed` otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    Even,
    Odd,
    Mixed,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    /// Graded brackets are only defined between operators of definite parity.
    #[error("supercommutator requires operands of definite parity (lhs {lhs:?}, rhs {rhs:?})")]
    MixedGrade { lhs: Grading, rhs: Grading },
    /// Automorphism lookup by name failed.
    #[error("unknown automorphism `{0}` (expected `ab-swap` or `spin-flip`)")]
    UnknownAutomorphism(String),
}

/// Symbol permutations that extend to algebra automorphisms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Automorphism {
    /// `a ↔ b`, `a† ↔ b†`, `f ↔ f†`. Exchanges the ordinary and inverted
    /// radial oscillators; an involution.
    AbSwap,
    /// `f ↔ f†` alone: the map reaching the opposite sign of `gq`.
    SpinFlip,
}

impl Automorphism {
    pub fn name(self) -> &'static str {
        match self {
            Automorphism::AbSwap => "ab-swap",
            Automorphism::SpinFlip => "spin-flip",
        }
    }

    pub fn from_name(name: &str) -> Result<Automorphism, AlgebraError> {
        match name {
            "ab-swap" => Ok(Automorphism::AbSwap),
            "spin-flip" => Ok(Automorphism::SpinFlip),
            other => Err(AlgebraError::UnknownAutomorphism(other.to_string())),
        }
    }
}

/// A normal-ordered word `(a†)^pa a^qa (b†)^pb b^qb (c†)^pc c^qc (f†)^pf f^qf`.
///
/// Two equal monomials compare equal structurally; `Ord` fixes the global
/// monomial order used everywhere (printing, coefficient maps, matrix
/// assembly): reverse-lexicographic in the exponent tuple, so `a`-mode terms
/// sort first and the constant term last.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub pa: u8,
    pub qa: u8,
    pub pb: u8,
    pub qb: u8,
    pub pc: u8,
    pub qc: u8,
    pub pf: u8,
    pub qf: u8,
}

impl Monomial {
    fn exponent_tuple(&self) -> [u8; 8] {
        [self.pa, self.qa, self.pb, self.qb, self.pc, self.qc, self.pf, self.qf]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.exponent_tuple().cmp(&self.exponent_tuple())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// The empty word (the unit of the algebra).
    pub fn identity() -> Monomial {
        Monomial::default()
    }

    pub fn is_identity(&self) -> bool {
        *self == Monomial::default()
    }

    pub fn from_symbol(s: Symbol) -> Monomial {
        let mut m = Monomial::default();
        match s {
            Symbol::ADag => m.pa = 1,
            Symbol::A => m.qa = 1,
            Symbol::BDag => m.pb = 1,
            Symbol::B => m.qb = 1,
            Symbol::CDag => m.pc = 1,
            Symbol::C => m.qc = 1,
            Symbol::FDag => m.pf = 1,
            Symbol::F => m.qf = 1,
        }
        m
    }

    pub fn degree(&self) -> u32 {
        [self.pa, self.qa, self.pb, self.qb, self.pc, self.qc, self.pf, self.qf]
            .iter()
            .map(|&e| e as u32)
            .sum()
    }

    pub fn parity(&self) -> Parity {
        if (self.pf + self.qf).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Monomial-wise hermitian conjugate: reverse the word and dagger each
    /// factor, which in canonical form just swaps raising and lowering
    /// exponents per mode.
    pub fn dagger(&self) -> Monomial {
        Monomial {
            pa: self.qa,
            qa: self.pa,
            pb: self.qb,
            qb: self.pb,
            pc: self.qc,
            qc: self.pc,
            pf: self.qf,
            qf: self.pf,
        }
    }

    /// Raising exponents per bosonic mode `(a, b, c)`; drives the truncation
    /// margins of the numeric oracle.
    pub fn raising(&self) -> [u32; 3] {
        [self.pa as u32, self.pb as u32, self.pc as u32]
    }

    /// Net shift of the number operators `(ΔNa, ΔNb, ΔNc, ΔNf)`.
    pub fn net_shift(&self) -> [i32; 4] {
        [
            self.pa as i32 - self.qa as i32,
            self.pb as i32 - self.qb as i32,
            self.pc as i32 - self.qc as i32,
            self.pf as i32 - self.qf as i32,
        ]
    }

    /// The factors of the canonical written form, mode by mode.
    pub fn factors(&self) -> Vec<(Symbol, u8)> {
        let mut out = Vec::new();
        for (sym, e) in [
            (Symbol::ADag, self.pa),
            (Symbol::A, self.qa),
            (Symbol::BDag, self.pb),
            (Symbol::B, self.qb),
            (Symbol::CDag, self.pc),
            (Symbol::C, self.qc),
            (Symbol::FDag, self.pf),
            (Symbol::F, self.qf),
        ] {
            if e > 0 {
                out.push((sym, e));
            }
        }
        out
    }
}

/// `k! C(q, k) C(p, k)`: the contraction count when `a^q` passes `(a†)^p`.
fn contraction_coeff(q: u8, p: u8, k: u8) -> BigInt {
    let mut c = BigInt::one();
    // k! * C(q,k) * C(p,k) = prod_{j=0}^{k-1} (q-j)(p-j)/(j+1) * (j+1) ... computed directly
    for j in 0..k {
        c *= BigInt::from((q - j) as u64) * BigInt::from((p - j) as u64);
    }
    for j in 1..=k {
        c /= BigInt::from(j as u64);
    }
    c
}

/// `a^q1 (a†)^p2 = Σ_k k! C(q1,k) C(p2,k) (a†)^{p2−k} a^{q1−k}` lifted to the
/// product of two canonical single-mode words.
fn bosonic_mode_product(p1: u8, q1: u8, p2: u8, q2: u8) -> Vec<(u8, u8, BigInt)> {
    let kmax = q1.min(p2);
    (0..=kmax)
        .map(|k| (p1 + p2 - k, q1 + q2 - k, contraction_coeff(q1, p2, k)))
        .collect()
}

/// Product of two canonical fermionic words `f†^r f^s`; coefficients are ±1.
fn fermionic_mode_product(r1: u8, s1: u8, r2: u8, s2: u8) -> Vec<(u8, u8, i8)> {
    if s1 == 1 && r2 == 1 {
        // f f† = 1 − f†f sandwiched between f†^r1 and f^s2.
        let mut out = vec![(r1, s2, 1)];
        if r1 == 0 && s2 == 0 {
            out.push((1, 1, -1));
        }
        out
    } else {
        let r = r1 + r2;
        let s = s1 + s2;
        if r > 1 || s > 1 {
            Vec::new() // nilpotency
        } else {
            vec![(r, s, 1)]
        }
    }
}

fn monomial_product(m1: &Monomial, m2: &Monomial) -> Vec<(Monomial, BigRational)> {
    let a = bosonic_mode_product(m1.pa, m1.qa, m2.pa, m2.qa);
    let b = bosonic_mode_product(m1.pb, m1.qb, m2.pb, m2.qb);
    let c = bosonic_mode_product(m1.pc, m1.qc, m2.pc, m2.qc);
    let f = fermionic_mode_product(m1.pf, m1.qf, m2.pf, m2.qf);
    let mut out = Vec::with_capacity(a.len() * b.len() * c.len() * f.len());
    for (pa, qa, ca) in &a {
        for (pb, qb, cb) in &b {
            for (pc, qc, cc) in &c {
                for (pf, qf, cf) in &f {
                    let m = Monomial {
                        pa: *pa,
                        qa: *qa,
                        pb: *pb,
                        qb: *qb,
                        pc: *pc,
                        qc: *qc,
                        pf: *pf,
                        qf: *qf,
                    };
                    let coeff = ca * cb * cc * BigInt::from(*cf as i64);
                    out.push((m, BigRational::from_integer(coeff)));
                }
            }
        }
    }
    out
}

/// A normal-ordered operator polynomial with exact rational coefficients.
///
/// The coefficient map never stores zeros, so the representation is unique
/// and `==` decides operator equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OperatorPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl OperatorPoly {
    pub fn zero() -> OperatorPoly {
        OperatorPoly::default()
    }

    pub fn one() -> OperatorPoly {
        OperatorPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> OperatorPoly {
        OperatorPoly::from_monomial(Monomial::identity(), c)
    }

    pub fn from_monomial(m: Monomial, c: BigRational) -> OperatorPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        OperatorPoly { terms }
    }

    pub fn symbol(s: Symbol) -> OperatorPoly {
        OperatorPoly::from_monomial(Monomial::from_symbol(s), BigRational::one())
    }

    /// Product of single symbols, normal-ordered left to right.
    pub fn word(symbols: &[Symbol]) -> OperatorPoly {
        let mut p = OperatorPoly::one();
        for &s in symbols {
            p = p.multiply(&OperatorPoly::symbol(s));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &OperatorPoly) -> OperatorPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_add(&mut terms, *m, c.clone());
        }
        OperatorPoly { terms }
    }

    pub fn sub(&self, other: &OperatorPoly) -> OperatorPoly {
        self.add(&other.scale(&BigRational::from_integer(BigInt::from(-1))))
    }

    pub fn scale(&self, c: &BigRational) -> OperatorPoly {
        if c.is_zero() {
            return OperatorPoly::zero();
        }
        OperatorPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> OperatorPoly {
        self.scale(&BigRational::from_integer(BigInt::from(-1)))
    }

    /// Normal-ordered product. Total: every rewrite terminates in the
    /// canonical form with exact coefficients.
    pub fn multiply(&self, other: &OperatorPoly) -> OperatorPoly {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c12 = c1 * c2;
                for (m, k) in monomial_product(m1, m2) {
                    Self::insert_add(&mut terms, m, k * &c12);
                }
            }
        }
        OperatorPoly { terms }
    }

    /// Grading of the polynomial: `Even`/`Odd` when homogeneous (the zero
    /// polynomial counts as `Even`), `Mixed` otherwise.
    pub fn grading(&self) -> Grading {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Grading::Even,
            Some(m) => m.parity(),
        };
        if it.all(|m| m.parity() == first) {
            match first {
                Parity::Even => Grading::Even,
                Parity::Odd => Grading::Odd,
            }
        } else {
            Grading::Mixed
        }
    }

    pub fn parity(&self) -> Option<Parity> {
        match self.grading() {
            Grading::Even => Some(Parity::Even),
            Grading::Odd => Some(Parity::Odd),
            Grading::Mixed => None,
        }
    }

    /// Monomial-wise hermitian conjugate.
    pub fn dagger(&self) -> OperatorPoly {
        OperatorPoly {
            terms: self.terms.iter().map(|(m, c)| (m.dagger(), c.clone())).collect(),
        }
    }

    /// Maximum raising exponent per bosonic mode over all monomials.
    pub fn max_raising(&self) -> [u32; 3] {
        let mut r = [0u32; 3];
        for m in self.terms.keys() {
            let mr = m.raising();
            for i in 0..3 {
                r[i] = r[i].max(mr[i]);
            }
        }
        r
    }

    /// Relabel symbols according to `map` and re-normal-order. The fermion
    /// swap reorders `f`-factors and may produce sign and constant terms.
    pub fn apply_automorphism(&self, map: Automorphism) -> OperatorPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut base = *m;
            if map == Automorphism::AbSwap {
                base = Monomial {
                    pa: m.pb,
                    qa: m.qb,
                    pb: m.pa,
                    qb: m.qa,
                    ..*m
                };
            }
            // f†^pf f^qf  ↦  f^pf f†^qf, re-normal-ordered.
            let images: &[(u8, u8, i8)] = match (base.pf, base.qf) {
                (0, 0) => &[(0, 0, 1)],
                (1, 0) => &[(0, 1, 1)],
                (0, 1) => &[(1, 0, 1)],
                (1, 1) => &[(0, 0, 1), (1, 1, -1)],
                _ => unreachable!("fermionic flags exceed 1"),
            };
            for &(pf, qf, sign) in images {
                let mut img = base;
                img.pf = pf;
                img.qf = qf;
                Self::insert_add(&mut terms, img, c * BigRational::from_integer(BigInt::from(sign as i64)));
            }
        }
        OperatorPoly { terms }
    }
}

/// Graded bracket `[p, q} = pq − (−1)^{|p||q|} qp`: the anticommutator for two
/// odd operands, the commutator otherwise. Mixed-grade input is rejected.
pub fn supercommutator(p: &OperatorPoly, q: &OperatorPoly) -> Result<OperatorPoly, AlgebraError> {
    let (gp, gq) = (p.grading(), q.grading());
    let (pp, pq) = match (gp, gq) {
        (Grading::Mixed, _) | (_, Grading::Mixed) => {
            return Err(AlgebraError::MixedGrade { lhs: gp, rhs: gq })
        }
        (a, b) => (a, b),
    };
    let forward = p.multiply(q);
    let backward = q.multiply(p);
    Ok(if pp == Grading::Odd && pq == Grading::Odd {
        forward.add(&backward)
    } else {
        forward.sub(&backward)
    })
}

impl fmt::Display for OperatorPoly {
    /// Canonical plain-text form, e.g. `3/2 ad a + 1 bd f`. Lossless under
    /// [`OperatorPoly::parse`].
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(out, "-")?;
                }
            } else if negative {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            write!(out, "{}", c.abs())?;
            for (sym, e) in m.factors() {
                if e == 1 {
                    write!(out, " {}", sym.token())?;
                } else {
                    write!(out, " {}^{}", sym.token(), e)?;
                }
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for OperatorPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl OperatorPoly {
    pub fn parse(s: &str) -> Result<OperatorPoly, ParseError> {
        parse::parse(s)
    }
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: Symbol) -> OperatorPoly {
        OperatorPoly::symbol(s)
    }

    #[test]
    fn a_times_adag_rewrites() {
        // a · a† → a†a + 1
        let prod = sym(Symbol::A).multiply(&sym(Symbol::ADag));
        let expected = OperatorPoly::word(&[Symbol::ADag, Symbol::A]).add(&OperatorPoly::one());
        assert_eq!(prod, expected);
    }

    #[test]
    fn fermion_nilpotency() {
        let f2 = sym(Symbol::F).multiply(&sym(Symbol::F));
        assert!(f2.is_zero());
        let fd2 = sym(Symbol::FDag).multiply(&sym(Symbol::FDag));
        assert!(fd2.is_zero());
    }

    #[test]
    fn f_fdag_rewrites() {
        // f f† = 1 − f†f
        let prod = sym(Symbol::F).multiply(&sym(Symbol::FDag));
        let expected = OperatorPoly::one().sub(&OperatorPoly::word(&[Symbol::FDag, Symbol::F]));
        assert_eq!(prod, expected);
    }

    #[test]
    fn number_operator_square() {
        // (a†a)·(a†a) = (a†)²a² + a†a
        let n = OperatorPoly::word(&[Symbol::ADag, Symbol::A]);
        let sq = n.multiply(&n);
        let expected = OperatorPoly::word(&[Symbol::ADag, Symbol::ADag, Symbol::A, Symbol::A]).add(&n);
        assert_eq!(sq, expected);
    }

    #[test]
    fn higher_contraction_coefficients() {
        // a² (a†)² = (a†)²a² + 4 a†a + 2
        let lhs = OperatorPoly::word(&[Symbol::A, Symbol::A])
            .multiply(&OperatorPoly::word(&[Symbol::ADag, Symbol::ADag]));
        let expected = OperatorPoly::word(&[Symbol::ADag, Symbol::ADag, Symbol::A, Symbol::A])
            .add(&OperatorPoly::word(&[Symbol::ADag, Symbol::A]).scale(&ratio(4, 1)))
            .add(&OperatorPoly::constant(ratio(2, 1)));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn anticommutator_f_fdag_is_one() {
        // {f†, f} = 1
        let br = supercommutator(&sym(Symbol::FDag), &sym(Symbol::F)).unwrap();
        assert_eq!(br, OperatorPoly::one());
    }

    #[test]
    fn anticommutator_quadratic_fermionic() {
        // {b†f†, bf} = b†b − f†f + 1
        let fp = OperatorPoly::word(&[Symbol::BDag, Symbol::FDag]);
        let fm = OperatorPoly::word(&[Symbol::B, Symbol::F]);
        let br = supercommutator(&fp, &fm).unwrap();
        let expected = OperatorPoly::word(&[Symbol::BDag, Symbol::B])
            .sub(&OperatorPoly::word(&[Symbol::FDag, Symbol::F]))
            .add(&OperatorPoly::one());
        assert_eq!(br, expected);
    }

    #[test]
    fn commutator_number_with_ladder() {
        // [a†a, a†] = a†, brute-forced from both orders.
        let n = OperatorPoly::word(&[Symbol::ADag, Symbol::A]);
        let ad = sym(Symbol::ADag);
        let direct = n.multiply(&ad).sub(&ad.multiply(&n));
        assert_eq!(direct, ad);
        assert_eq!(supercommutator(&n, &ad).unwrap(), ad);
    }

    #[test]
    fn supercommutator_rejects_mixed_grade() {
        let mixed = sym(Symbol::ADag).add(&sym(Symbol::FDag));
        let err = supercommutator(&mixed, &sym(Symbol::A)).unwrap_err();
        assert!(matches!(err, AlgebraError::MixedGrade { .. }));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let p = OperatorPoly::word(&[Symbol::ADag, Symbol::F]).scale(&ratio(3, 2));
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn equals_after_normal_ordering() {
        let lhs = OperatorPoly::word(&[Symbol::ADag, Symbol::A]).add(&OperatorPoly::one());
        let rhs = sym(Symbol::A).multiply(&sym(Symbol::ADag));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scale_keeps_canonical_form() {
        let p = OperatorPoly::word(&[Symbol::FDag, Symbol::F]).scale(&ratio(2, 1));
        assert_eq!(p.coefficient(&Monomial { pf: 1, qf: 1, ..Default::default() }), ratio(2, 1));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn grading_examples() {
        assert_eq!(OperatorPoly::word(&[Symbol::ADag, Symbol::C]).grading(), Grading::Even);
        assert_eq!(OperatorPoly::word(&[Symbol::BDag, Symbol::FDag]).grading(), Grading::Odd);
        let mixed = sym(Symbol::ADag).add(&sym(Symbol::FDag));
        assert_eq!(mixed.grading(), Grading::Mixed);
        assert_eq!(OperatorPoly::zero().grading(), Grading::Even);
    }

    #[test]
    fn spin_flip_on_number_operator() {
        // f†f ↦ f f† = 1 − f†f
        let nf = OperatorPoly::word(&[Symbol::FDag, Symbol::F]);
        let flipped = nf.apply_automorphism(Automorphism::SpinFlip);
        assert_eq!(flipped, OperatorPoly::one().sub(&nf));
    }

    #[test]
    fn automorphisms_are_involutions() {
        let gens = [
            OperatorPoly::word(&[Symbol::ADag, Symbol::F]),
            OperatorPoly::word(&[Symbol::BDag, Symbol::FDag]),
            OperatorPoly::word(&[Symbol::ADag, Symbol::A]).add(&OperatorPoly::word(&[Symbol::FDag, Symbol::F])),
            OperatorPoly::word(&[Symbol::ADag, Symbol::BDag, Symbol::C, Symbol::F]),
        ];
        for g in &gens {
            for map in [Automorphism::AbSwap, Automorphism::SpinFlip] {
                let twice = g.apply_automorphism(map).apply_automorphism(map);
                assert_eq!(&twice, g, "map {:?} is not an involution on {}", map, g);
            }
        }
    }

    #[test]
    fn ab_swap_maps_a_number_to_b_number() {
        let na = OperatorPoly::word(&[Symbol::ADag, Symbol::A]);
        let nb = OperatorPoly::word(&[Symbol::BDag, Symbol::B]);
        assert_eq!(na.apply_automorphism(Automorphism::AbSwap), nb);
    }

    #[test]
    fn dagger_is_antiautomorphism_on_samples() {
        let p = OperatorPoly::word(&[Symbol::ADag, Symbol::F]);
        let q = OperatorPoly::word(&[Symbol::BDag, Symbol::B, Symbol::FDag]);
        let lhs = p.multiply(&q).dagger();
        let rhs = q.dagger().multiply(&p.dagger());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_matches_expected_tokens() {
        let p = OperatorPoly::word(&[Symbol::ADag, Symbol::A])
            .scale(&ratio(3, 2))
            .add(&OperatorPoly::word(&[Symbol::BDag, Symbol::F]));
        assert_eq!(p.to_string(), "3/2 ad a + 1 bd f");
        assert_eq!(OperatorPoly::zero().to_string(), "0");
    }
}
