//! Exact computation with Askey-Wilson polynomials.
//!
//! The crate builds the symmetric polynomials `P_n` and the nonsymmetric
//! `E_n` over exact rationals, implements the difference operators `D`, `D'`
//! and the Hecke operators `T0`, `T1`, `Y` on Laurent polynomials, and checks
//! the raising and lowering identities between them with exactly zero
//! residuals.
//!
//! ```
//! use awlab_core::{askey_wilson_P, apply_D, lambda_n, ParamSet, Scalar};
//!
//! let p = ParamSet::parse_assignments("q=1/2,a=1/3,b=1/5,c=1/7,d=1/11", 4).unwrap();
//! let p3 = askey_wilson_P(3, &p).unwrap();
//! assert_eq!(apply_D(&p3, &p).unwrap(), p3.scale(&lambda_n(3, &p)));
//! ```

mod error;
pub mod laurent;
pub mod linalg;
pub mod operators;
pub mod params;
pub mod polynomials;
pub mod quantities;
pub mod random;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{LaurentFraction, LaurentPoly, NotDivisible, Proportionality, Substitution};
pub use operators::{
    apply_D, apply_Dprime, apply_T0, apply_T1, apply_Y, apply_t0_T0_inv, DprimeForm, Hecke,
    OperatorExpr,
};
pub use params::{check_genericity, Condition, GenericityError, ParamSet};
pub use polynomials::{
    askey_wilson_P, askey_wilson_P_oracle, nonsymmetric_E, recurrence_ratio, symmetrize,
    OrderedBasisIndex,
};
pub use quantities::{alpha_n, beta_n, e1, e3, kappa_n, lambda_n, mu_n, q_pochhammer};
pub use scalar::{ParseScalarError, Scalar};
pub use random::{random_params, random_params_list, rng_from_seed, SeededRng};
pub use verify::{run_suite, Fault, IdentityReport, Skipped, SuiteConfig, SuiteResult, Verifier};
