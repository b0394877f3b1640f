//! Gap probabilities of generalized Airy determinantal point processes.
//!
//! The crate is `no_std` (with `alloc`) and contains the whole algorithmic
//! stack:
//!
//! * [`exactalg`]: big rationals, the field `Q(beta)` with
//!   `beta^(2n) = C(2n, n)`, and residues of fractional polynomial powers.
//! * [`hierarchy`]: differential polynomials, Lenard recursion and the
//!   members of the Painleve II hierarchy.
//! * [`specfun`]: the deformed Airy function `phi` and its derivatives by
//!   quadrature on rotated contours.
//! * [`kernel`]: the correlation kernel in factored and double contour form.
//! * [`fredholm`]: Nystrom evaluation of `F(s; rho)` and extraction of `q`.
//! * [`asympt`]: exact large gap coefficients and comparison with numerics.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asympt;
pub mod exactalg;
pub mod fredholm;
pub mod hierarchy;
pub mod kernel;
pub mod quad;
pub mod specfun;
