//! Momentum-space expectation values for hydrogenic bound states.
//!
//! The central quantity is the dimensionless inverse-momentum expectation
//! `<hbar kappa / P>_{n l}` with `kappa = 1/(n a)`. It is computed exactly,
//! carried as a rational multiple of `1/pi`, by two independent series and by
//! closed forms for `l = 0, n-1, n-2`. Every exact result is cross-checked
//! against quadrature of the momentum wavefunctions, a double-integral
//! representation, sum rules over `l`, and large-`n` asymptotics.
//!
//! Module map:
//!
//! * [`exactnum`]: rationals, pi-graded scalars, half-integer gamma values.
//! * [`specfun`]: Gegenbauer/Chebyshev/Legendre/Laguerre polynomials,
//!   spherical Bessel functions, digamma (floating and exact).
//! * [`wavefun`]: position and momentum radial wavefunctions, the generating
//!   function, and a direct Fourier-transform oracle.
//! * [`quadrature`]: Gauss rules, adaptive Gauss-Kronrod, and the numerical
//!   expectation-value oracles.
//! * [`invp`]: exact `<hbar kappa / P>` by series and closed forms.
//! * [`sumrules`]: sum rules over `l`, the `J_n` integrals, and the addition theorem.
//! * [`asympt`]: large-`n` estimators and extrapolation.
//! * [`physics`]: physical units, first-order energy shifts.

pub mod asympt;
pub mod error;
pub mod exactnum;
pub mod invp;
pub mod physics;
pub mod quadrature;
pub mod specfun;
pub mod sumrules;
pub mod wavefun;

pub use error::{Error, Result};
pub use exactnum::{BigRational, PiGraded, PiSum};
pub use quadrature::{ExpectationResult, Method, QuadratureSpec};
pub use wavefun::{PhysicalScales, QuantumState};
