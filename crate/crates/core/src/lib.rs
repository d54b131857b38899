//! Exact symbolic operator algebra and numerics for a spin-1/2 particle in a
//! Penning trap.
//!
//! The library is organised around an exact normal-ordered polynomial algebra
//! in three bosonic modes (`a`, `b`, `c`) and one fermionic mode (`f`):
//!
//! * [`algebra`] — canonical arithmetic for normal-ordered operator
//!   polynomials with arbitrary-precision rational coefficients, graded
//!   brackets, and a lossless text form.
//! * [`fock`] — truncated Fock-space sparse matrices, used as an independent
//!   floating-point oracle for the exact engine.
//! * [`trap`] — trap parameterisation (`σ`, `g`), frequencies, the
//!   hamiltonian, its analytic spectrum, and constants of motion. Frequency
//!   arithmetic is exact rational whenever `√(σ² − 2)` is rational.
//! * [`catalog`] — the named degeneracy superalgebras, their relation tables,
//!   structure constants, and verification machinery.
//! * [`scan`] — frequency curves, rational-ratio detection, level-crossing
//!   location, and degeneracy grouping over a `σ` grid.
//! * [`wavefunction`] — coordinate-space eigenfunctions built from
//!   generalized Laguerre and Hermite polynomials, with quadrature and PDE
//!   residual checks.
//!
//! With the default `parallel` feature the data-parallel inner loops (bracket
//! grids, Jacobi triple scans, σ grids, quadrature batches) run on rayon;
//! without it every loop falls back to a plain sequential iterator.

pub mod algebra;
pub mod catalog;
mod exec;
pub mod fock;
pub mod scan;
pub mod trap;
pub mod wavefunction;
