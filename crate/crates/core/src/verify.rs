//! Exact checks of every operator identity, one report per identity and
//! index, and a suite runner.
//!
//! A check passes only when its residual is exactly the zero polynomial.
//! Claims of the form "`f` is a multiple of `g`" pass only with a nonzero
//! constant. Statements about the dual polynomials `Q_n = gamma_n P_n` are
//! checked after dividing out `gamma_n`, using the ratio
//! `gamma_(n-1)/gamma_n` extracted from the three-term recurrence.

#![allow(non_snake_case)]

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{LaurentFraction, LaurentPoly, Proportionality, Substitution};
use crate::operators::{DprimeForm, Hecke, OperatorExpr};
use crate::params::ParamSet;
use crate::polynomials::{
    askey_wilson_P_oracle, build_p, extract_recurrence_ratio, NonsymmetricTable,
};
use crate::quantities::{alpha_n, beta_n, e1, e3, kappa_n, lambda_n, mu_n};
use crate::random::{random_asymmetric, random_laurent, random_symmetric, sub_rng};
use crate::scalar::Scalar;

/// Identity names used in reports.
pub mod ids {
    pub const ORACLE_EQUIVALENCE: &str = "oracle-equivalence";
    pub const Q_DIFFERENCE: &str = "q-difference";
    pub const RECURRENCE: &str = "recurrence";
    pub const LADDER_RAISING: &str = "ladder-raising";
    pub const LADDER_LOWERING: &str = "ladder-lowering";
    pub const HECKE_QUADRATIC: &str = "hecke-quadratic";
    pub const R_SUM: &str = "r-sum";
    pub const HECKE_INVERSE: &str = "hecke-inverse";
    pub const COMMUTATION: &str = "commutation";
    pub const SYMMETRY_CRITERION: &str = "symmetry-criterion";
    pub const FACTORIZATION: &str = "dprime-factorization";
    pub const DPRIME_SYMMETRIC: &str = "dprime-equals-d";
    pub const E_EIGEN: &str = "e-eigen";
    pub const SYMMETRIZATION: &str = "symmetrization";
    pub const PROJECTION: &str = "projection";
    pub const INTERTWINER: &str = "intertwiner";
    pub const HECKE_RAISING: &str = "hecke-raising";
    pub const HECKE_RAISING_LEADING: &str = "hecke-raising-leading";
    pub const HECKE_LOWERING: &str = "hecke-lowering";
    pub const ALPHA_BETA: &str = "alpha-beta";
    pub const D_DPRIME_RELATION: &str = "d-dprime-relation";
}

/// Deliberate corruption of one closed-form scalar, for negative controls.
/// The faulted value is the true value plus one. For `beta` only the
/// nonnegative indices are shifted, so that `beta_n - beta_-n` changes too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    Lambda,
    Alpha,
    Beta,
    Kappa,
}

impl Fault {
    pub const ALL: [Fault; 4] = [Fault::Lambda, Fault::Alpha, Fault::Beta, Fault::Kappa];

    /// Identities whose checks read the faulted scalar.
    pub fn dependents(self) -> &'static [&'static str] {
        match self {
            Fault::Lambda => &[ids::Q_DIFFERENCE, ids::LADDER_RAISING, ids::LADDER_LOWERING],
            Fault::Alpha => &[
                ids::RECURRENCE,
                ids::LADDER_RAISING,
                ids::LADDER_LOWERING,
                ids::HECKE_LOWERING,
                ids::ALPHA_BETA,
            ],
            Fault::Beta => &[ids::HECKE_RAISING, ids::HECKE_LOWERING, ids::ALPHA_BETA],
            Fault::Kappa => &[ids::INTERTWINER],
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fault::Lambda => "lambda",
            Fault::Alpha => "alpha",
            Fault::Beta => "beta",
            Fault::Kappa => "kappa",
        })
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(Fault::Lambda),
            "alpha" => Ok(Fault::Alpha),
            "beta" => Ok(Fault::Beta),
            "kappa" => Ok(Fault::Kappa),
            other => Err(Error::InvalidInput(format!("unknown fault {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Random inputs per operator relation.
    pub trials: usize,
    pub seed: u64,
    /// Random inputs are supported in `-window..=window`.
    pub window: i64,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 25,
            seed: 42,
            window: 6,
            fault: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub n: Option<i64>,
    pub passed: bool,
    /// Nonzero witness on failure, absent on success.
    pub residual: Option<LaurentPoly>,
    pub params: ParamSet,
    pub seed: u64,
    pub elapsed: Duration,
    /// Human-readable detail on failure.
    pub note: Option<String>,
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IdentityReport", 6)?;
        s.serialize_field("identity", self.identity)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("passed", &self.passed)?;
        s.serialize_field("residual", &self.residual)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("seed", &self.seed)?;
        s.end()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let n = self.n.map(|n| format!("n={n}")).unwrap_or_else(|| "-".into());
        write!(f, "{verdict} {:<22} {:<6}", self.identity, n)?;
        if let Some(note) = &self.note {
            write!(f, " {note}")?;
        }
        if let Some(r) = &self.residual {
            write!(f, " residual: {r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub identity: &'static str,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub reports: Vec<IdentityReport>,
    pub skipped: Vec<Skipped>,
}

impl SuiteResult {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

/// One unit of work in the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Task {
    OracleEquivalence(u32),
    QDifference(u32),
    Recurrence(u32),
    LadderRaising(u32),
    LadderLowering(u32),
    Quadratic,
    RSum,
    Inverse,
    Commutation,
    SymmetryCriterion,
    Factorization,
    DprimeSymmetric,
    EEigen(i64),
    Symmetrization(i64),
    Projection(u32),
    Intertwiner(i64),
    HeckeRaising(u32),
    HeckeRaisingLeading(u32),
    HeckeLowering(u32),
    AlphaBeta(u32),
    DDprimeRelation,
}

/// Residual of a check, or a failure with a witness and an explanation.
enum Outcome {
    Residual(LaurentPoly),
    Failed { witness: LaurentPoly, note: String },
}

impl From<LaurentPoly> for Outcome {
    fn from(r: LaurentPoly) -> Self {
        Outcome::Residual(r)
    }
}

fn failure_from_error(e: Error) -> Outcome {
    let witness = match &e {
        Error::Extraction { residual, .. } if !residual.is_zero() => residual.clone(),
        Error::NotDivisible(nd) => nd.remainder.clone(),
        _ => LaurentPoly::one(),
    };
    Outcome::Failed {
        witness,
        note: e.to_string(),
    }
}

/// Residual certifying `f = c g` with `c != 0`: zero on success, otherwise
/// `f - c g` for the best-fitting `c`, or `g` itself when `f` vanishes.
fn proportional_residual(f: &LaurentPoly, g: &LaurentPoly) -> Outcome {
    match f.proportional(g) {
        Proportionality::Multiple(c) if !c.is_zero() => LaurentPoly::zero().into(),
        Proportionality::Multiple(_) => Outcome::Failed {
            witness: g.clone(),
            note: "image vanishes, proportionality constant is zero".into(),
        },
        Proportionality::BothZero => Outcome::Failed {
            witness: LaurentPoly::one(),
            note: "target polynomial vanishes".into(),
        },
        Proportionality::NotProportional => {
            let witness = match g.max_deg() {
                Some(k) => f - &g.scale(&(f.coeff(k) / g.coeff(k))),
                None => f.clone(),
            };
            Outcome::Failed {
                witness,
                note: "not proportional".into(),
            }
        }
    }
}

/// Checks at one parameter point, with shared polynomial tables.
pub struct Verifier {
    p: ParamSet,
    config: SuiteConfig,
    polys: Vec<LaurentPoly>,
    e_table: OnceLock<std::result::Result<NonsymmetricTable, Error>>,
}

impl Verifier {
    pub fn new(p: &ParamSet, config: SuiteConfig) -> Self {
        let polys = (0..=p.n_max() + 1).map(|n| build_p(n, p)).collect();
        Verifier {
            p: p.clone(),
            config,
            polys,
            e_table: OnceLock::new(),
        }
    }

    pub fn params(&self) -> &ParamSet {
        &self.p
    }

    fn nmax(&self) -> i64 {
        i64::from(self.p.n_max())
    }

    fn poly(&self, n: u32) -> &LaurentPoly {
        &self.polys[n as usize]
    }

    fn e(&self, n: i64) -> Result<LaurentPoly> {
        let table = self
            .e_table
            .get_or_init(|| NonsymmetricTable::new(self.p.n_max(), &self.p))
            .as_ref()
            .map_err(Clone::clone)?;
        table.e(n)
    }

    fn bump(&self, v: Scalar, fault: Fault) -> Scalar {
        if self.config.fault == Some(fault) {
            v + Scalar::one()
        } else {
            v
        }
    }

    fn lambda(&self, n: i64) -> Scalar {
        self.bump(lambda_n(n, &self.p), Fault::Lambda)
    }

    fn alpha(&self, n: u32) -> Scalar {
        self.bump(alpha_n(n, &self.p), Fault::Alpha)
    }

    fn beta(&self, n: i64) -> Scalar {
        let v = beta_n(n, &self.p);
        if n >= 0 {
            self.bump(v, Fault::Beta)
        } else {
            v
        }
    }

    fn kappa(&self, n: i64) -> Scalar {
        self.bump(kappa_n(n, &self.p), Fault::Kappa)
    }

    fn hecke(&self) -> Hecke<'_> {
        Hecke::new(&self.p)
    }

    fn require(&self, what: &'static str, n: i64, range: std::ops::RangeInclusive<i64>) -> Result<()> {
        if range.contains(&n) {
            Ok(())
        } else {
            Err(Error::OutOfRange { what, n })
        }
    }

    fn finish(&self, identity: &'static str, n: Option<i64>, start: Instant, outcome: Result<Outcome>) -> IdentityReport {
        let outcome = outcome.unwrap_or_else(failure_from_error);
        let (passed, residual, note) = match outcome {
            Outcome::Residual(r) if r.is_zero() => (true, None, None),
            Outcome::Residual(r) => (false, Some(r), None),
            Outcome::Failed { witness, note } => (false, Some(witness), Some(note)),
        };
        IdentityReport {
            identity,
            n,
            passed,
            residual,
            params: self.p.clone(),
            seed: self.config.seed,
            elapsed: start.elapsed(),
            note,
        }
    }

    /// First nonzero residual over the seeded random trials.
    fn over_trials<F>(&self, label: &str, mut body: F) -> Result<Outcome>
    where
        F: FnMut(&mut crate::random::SeededRng) -> Result<LaurentPoly>,
    {
        for t in 0..self.config.trials {
            let mut rng = sub_rng(self.config.seed, label, t as i64);
            let r = body(&mut rng)?;
            if !r.is_zero() {
                return Ok(Outcome::Failed {
                    witness: r,
                    note: format!("trial {t}"),
                });
            }
        }
        Ok(LaurentPoly::zero().into())
    }

    fn recurrence_ratio(&self, n: u32) -> Result<Scalar> {
        extract_recurrence_ratio(
            i64::from(n),
            self.poly(n - 1),
            self.poly(n),
            self.poly(n + 1),
            &self.alpha(n),
        )
    }

    fn apply_d(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        crate::operators::apply_D(f, &self.p)
    }

    pub fn check_oracle_equivalence(&self, n: u32) -> Result<IdentityReport> {
        self.require("oracle equivalence", i64::from(n), 0..=self.nmax())?;
        let start = Instant::now();
        let out = askey_wilson_P_oracle(n, &self.p).map(|o| (self.poly(n) - &o).into());
        Ok(self.finish(ids::ORACLE_EQUIVALENCE, Some(i64::from(n)), start, out))
    }

    /// `D P_n - lambda_n P_n`.
    pub fn check_q_difference(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("the q-difference equation", ni, 0..=self.nmax())?;
        let start = Instant::now();
        let pn = self.poly(n);
        let out = self
            .apply_d(pn)
            .map(|dp| (dp - pn.scale(&self.lambda(ni))).into());
        Ok(self.finish(ids::Q_DIFFERENCE, Some(ni), start, out))
    }

    /// `(z + 1/z) P_n = P_(n+1) + alpha_n P_n + c_n P_(n-1)` with `c_n != 0`.
    pub fn check_recurrence(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("the recurrence (2 <= n <= n_max - 1)", ni, 2..=self.nmax() - 1)?;
        let start = Instant::now();
        let out = self.recurrence_ratio(n).map(|_| LaurentPoly::zero().into());
        Ok(self.finish(ids::RECURRENCE, Some(ni), start, out))
    }

    fn ladder_lhs(&self, n: u32, shift: &Scalar) -> Result<LaurentPoly> {
        // [D(z+1/z) - lambda_shift (z+1/z) - alpha_n (lambda_n - lambda_shift)] P_n
        let ni = i64::from(n);
        let pn = self.poly(n);
        let zp_pn = LaurentPoly::z_plus_inv() * pn;
        let d_part = self.apply_d(&zp_pn)?;
        let diag = self.alpha(n) * (self.lambda(ni) - shift);
        Ok(d_part - zp_pn.scale(shift) - pn.scale(&diag))
    }

    pub fn check_theorem1_raising(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("the classical ladder (2 <= n <= n_max - 1)", ni, 2..=self.nmax() - 1)?;
        let start = Instant::now();
        let out = (|| {
            let multiple = self.lambda(ni + 1) - self.lambda(ni - 1);
            let next = self.poly(n + 1);
            if multiple.is_zero() {
                return Ok(Outcome::Failed {
                    witness: next.clone(),
                    note: "raising multiple vanishes".into(),
                });
            }
            let lhs = self.ladder_lhs(n, &self.lambda(ni - 1))?;
            Ok((lhs - next.scale(&multiple)).into())
        })();
        Ok(self.finish(ids::LADDER_RAISING, Some(ni), start, out))
    }

    /// Lowering relation for `Q_n`, divided through by `gamma_n`.
    pub fn check_theorem1_lowering(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("the classical ladder (2 <= n <= n_max - 1)", ni, 2..=self.nmax() - 1)?;
        let start = Instant::now();
        let out = (|| {
            let ratio = self.recurrence_ratio(n)?;
            let multiple = ratio * (self.lambda(ni - 1) - self.lambda(ni + 1));
            let prev = self.poly(n - 1);
            if multiple.is_zero() {
                return Ok(Outcome::Failed {
                    witness: prev.clone(),
                    note: "lowering multiple vanishes".into(),
                });
            }
            let lhs = self.ladder_lhs(n, &self.lambda(ni + 1))?;
            Ok((lhs - prev.scale(&multiple)).into())
        })();
        Ok(self.finish(ids::LADDER_LOWERING, Some(ni), start, out))
    }

    fn window(&self) -> i64 {
        self.config.window
    }

    /// `(T_i - t_i)(T_i + 1) = 0` for `i = 0, 1`.
    pub fn check_quadratic(&self) -> IdentityReport {
        let start = Instant::now();
        let h = self.hecke();
        let w = self.window();
        let rels = [(h.t0(), self.p.t0().clone()), (h.t1(), self.p.t1().clone())]
            .map(|(t, ti)| {
                let left = t.clone().plus_scalar(-ti);
                let right = t.plus_scalar(Scalar::one());
                left.of(right)
            });
        let out = self.over_trials(ids::HECKE_QUADRATIC, |rng| {
            let f = random_laurent(rng, -w, w);
            let mut acc = LaurentPoly::zero();
            for rel in &rels {
                acc = rel.apply(&f)?;
                if !acc.is_zero() {
                    break;
                }
            }
            Ok(acc)
        });
        self.finish(ids::HECKE_QUADRATIC, None, start, out)
    }

    /// `r_i + s_i(r_i) = t_i + 1` as rational functions.
    pub fn check_r_sum(&self) -> IdentityReport {
        let start = Instant::now();
        let h = self.hecke();
        let q = self.p.q();
        let cases = [
            (h.r0(), Substitution::QReflection, self.p.t0()),
            (h.r1(), Substitution::Inversion, self.p.t1()),
        ];
        let mut residual = LaurentPoly::zero();
        for (r, rule, t) in cases {
            let sum = &r + &r.substitute(rule, q);
            let target = LaurentFraction::from(LaurentPoly::constant(t + Scalar::one()));
            let diff = &sum - &target;
            if !diff.is_zero() {
                residual = diff.num().clone();
                break;
            }
        }
        self.finish(ids::R_SUM, None, start, Ok(residual.into()))
    }

    /// `(T_i - t_i + 1) T_i = T_i (T_i - t_i + 1) = t_i`.
    pub fn check_inverse(&self) -> IdentityReport {
        let start = Instant::now();
        let h = self.hecke();
        let w = self.window();
        let pairs = [(h.t0(), h.t0_t0_inv(), self.p.t0().clone()), (h.t1(), h.t1_t1_inv(), self.p.t1().clone())];
        let out = self.over_trials(ids::HECKE_INVERSE, |rng| {
            let f = random_laurent(rng, -w, w);
            for (t, tinv, ti) in &pairs {
                let expected = f.scale(ti);
                let left = tinv.apply(&t.apply(&f)?)? - &expected;
                if !left.is_zero() {
                    return Ok(left);
                }
                let right = t.apply(&tinv.apply(&f)?)? - &expected;
                if !right.is_zero() {
                    return Ok(right);
                }
            }
            Ok(LaurentPoly::zero())
        });
        self.finish(ids::HECKE_INVERSE, None, start, out)
    }

    /// The three commutation relations between `T_i` and multiplication by
    /// `z`, with `T1^{-1}` written through `t1 T1^{-1} = T1 - t1 + 1`.
    pub fn check_commutation(&self) -> IdentityReport {
        let start = Instant::now();
        let h = self.hecke();
        let p = &self.p;
        let w = self.window();
        let x = p.a() + p.b();
        let y = p.c() + p.d();
        let t1 = p.t1().clone();

        // z t0 T0^{-1} = q T0 z^{-1} + (c + d)
        let lhs0 = OperatorExpr::mul_z_pow(1).of(h.t0_t0_inv());
        let rhs0 = h
            .t0()
            .of(OperatorExpr::mul_z_pow(-1))
            .scaled(p.q().clone())
            .plus_scalar(y);
        // (T1 + 1) z^{-1} = t1 z^{-1} + z T1 + (a + b)
        let lhs1 = h.t1().plus_scalar(Scalar::one()).of(OperatorExpr::mul_z_pow(-1));
        let rhs1 = OperatorExpr::mul_poly(LaurentPoly::monomial(t1.clone(), -1))
            .plus(OperatorExpr::mul_z_pow(1).of(h.t1()))
            .plus_scalar(x.clone());
        // t1 (T1 + 1) z = t1 z + t1 z^{-1} (T1 - t1 + 1) - t1 (a + b)
        let lhs2 = h
            .t1()
            .plus_scalar(Scalar::one())
            .of(OperatorExpr::mul_z_pow(1))
            .scaled(t1.clone());
        let rhs2 = OperatorExpr::mul_poly(LaurentPoly::monomial(t1.clone(), 1))
            .plus(OperatorExpr::mul_poly(LaurentPoly::monomial(t1.clone(), -1)).of(h.t1_t1_inv()))
            .plus_scalar(-(&t1 * &x));
        let rels = [(lhs0, rhs0), (lhs1, rhs1), (lhs2, rhs2)];

        let out = self.over_trials(ids::COMMUTATION, |rng| {
            let f = random_laurent(rng, -w, w);
            for (l, r) in &rels {
                let d = l.apply(&f)? - r.apply(&f)?;
                if !d.is_zero() {
                    return Ok(d);
                }
            }
            Ok(LaurentPoly::zero())
        });
        self.finish(ids::COMMUTATION, None, start, out)
    }

    /// `T1 f = t1 f` exactly for symmetric `f`, never for asymmetric `f`,
    /// and `(T1 + 1) g` is always symmetric.
    pub fn check_symmetry_criterion(&self) -> IdentityReport {
        let start = Instant::now();
        let t1 = self.hecke().t1();
        let t1v = self.p.t1().clone();
        let w = self.window();
        let q = self.p.q().clone();
        let out = self.over_trials(ids::SYMMETRY_CRITERION, |rng| {
            let f = random_symmetric(rng, w);
            let r = t1.apply(&f)? - f.scale(&t1v);
            if !r.is_zero() {
                return Ok(r);
            }
            let g = random_asymmetric(rng, w);
            let tg = t1.apply(&g)?;
            if tg == g.scale(&t1v) {
                // asymmetric input fixed up to t1: the criterion fails
                return Ok(g);
            }
            let sym = tg + &g;
            Ok(&sym - &sym.substitute(Substitution::Inversion, &q))
        });
        self.finish(ids::SYMMETRY_CRITERION, None, start, out)
    }

    /// `(T1 + 1)(T0 - t0)` equals the rational-coefficient form of `D'`.
    pub fn check_factorization(&self) -> IdentityReport {
        let start = Instant::now();
        let h = self.hecke();
        let direct = h.dprime(DprimeForm::Direct);
        let factored = h.dprime(DprimeForm::Factored);
        let w = self.window();
        let out = self.over_trials(ids::FACTORIZATION, |rng| {
            let f = random_laurent(rng, -w, w);
            Ok(direct.apply(&f)? - factored.apply(&f)?)
        });
        self.finish(ids::FACTORIZATION, None, start, out)
    }

    /// `D' f = D f` for symmetric `f`.
    pub fn check_dprime_symmetric(&self) -> IdentityReport {
        let start = Instant::now();
        let dprime = self.hecke().dprime(DprimeForm::Factored);
        let w = self.window();
        let out = self.over_trials(ids::DPRIME_SYMMETRIC, |rng| {
            let f = random_symmetric(rng, w);
            Ok(dprime.apply(&f)? - self.apply_d(&f)?)
        });
        self.finish(ids::DPRIME_SYMMETRIC, None, start, out)
    }

    /// `Y E_n = mu_n E_n`.
    pub fn check_E_eigen(&self, n: i64) -> Result<IdentityReport> {
        self.require("nonsymmetric eigen check", n, -(self.nmax() - 1)..=self.nmax() - 1)?;
        let start = Instant::now();
        let y = self.hecke().y();
        let out = self.e(n).and_then(|e| {
            let ye = y.apply(&e)?;
            Ok((ye - e.scale(&mu_n(n, &self.p))).into())
        });
        Ok(self.finish(ids::E_EIGEN, Some(n), start, out))
    }

    /// `(T1 + 1) E_n` is a nonzero multiple of `P_|n|`, `n != 0`.
    pub fn check_PE(&self, n: i64) -> Result<IdentityReport> {
        self.require("symmetrization (n != 0)", n, -(self.nmax() - 1)..=self.nmax() - 1)?;
        if n == 0 {
            return Err(Error::OutOfRange { what: "symmetrization (n != 0)", n });
        }
        let start = Instant::now();
        let sym = self.hecke().t1().plus_scalar(Scalar::one());
        let out = self.e(n).and_then(|e| {
            let image = sym.apply(&e)?;
            Ok(proportional_residual(&image, self.poly(n.unsigned_abs() as u32)))
        });
        Ok(self.finish(ids::SYMMETRIZATION, Some(n), start, out))
    }

    /// `(t0 T0^{-1} - mu_-n) P_n` is a nonzero multiple of `E_-n`, `n >= 0`.
    pub fn check_projection(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("projection", ni, 0..=self.nmax() - 1)?;
        let start = Instant::now();
        let op = self.hecke().t0_t0_inv().plus_scalar(-mu_n(-ni, &self.p));
        let out = self.e(-ni).and_then(|e| {
            let image = op.apply(self.poly(n))?;
            Ok(proportional_residual(&image, &e))
        });
        Ok(self.finish(ids::PROJECTION, Some(ni), start, out))
    }

    /// `(t0 T0^{-1} z - kappa_n) E_-n` is a nonzero multiple of `E_(n-1)`.
    pub fn check_intertwiner(&self, n: i64) -> Result<IdentityReport> {
        let reach = self.nmax() - 1;
        self.require("intertwiner", n, -reach + 1..=reach)?;
        let start = Instant::now();
        let op = self
            .hecke()
            .t0_t0_inv()
            .of(OperatorExpr::mul_z_pow(1))
            .plus_scalar(-self.kappa(n));
        let out = (|| {
            let source = self.e(-n)?;
            let target = self.e(n - 1)?;
            let image = op.apply(&source)?;
            Ok(proportional_residual(&image, &target))
        })();
        Ok(self.finish(ids::INTERTWINER, Some(n), start, out))
    }

    /// `[D' z + (1 - coef)(z + 1/z) + beta] P_n`, with `D'` in factored form.
    fn hecke_ladder_lhs(&self, n: u32, coef: &Scalar, beta: &Scalar) -> Result<LaurentPoly> {
        let pn = self.poly(n);
        let dz = self
            .hecke()
            .dprime(DprimeForm::Factored)
            .apply(&(&LaurentPoly::z_pow(1) * pn))?;
        let zp = LaurentPoly::z_plus_inv() * pn;
        Ok(dz + zp.scale(&(Scalar::one() - coef)) + pn.scale(beta))
    }

    fn raise_multiple(&self, n: i64) -> Scalar {
        let q = self.p.q();
        q.pow(n) * self.p.abcd() - q.pow(1 - n)
    }

    /// Hecke-algebra raising operator: image is `(q^n abcd - q^(1-n)) P_(n+1)`.
    pub fn check_sraise_raise(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("Hecke raising (0 <= n <= n_max - 1)", ni, 0..=self.nmax() - 1)?;
        let start = Instant::now();
        let out = (|| {
            let lhs = self.hecke_ladder_lhs(n, &self.p.q().pow(1 - ni), &self.beta(-ni))?;
            Ok((lhs - self.poly(n + 1).scale(&self.raise_multiple(ni))).into())
        })();
        Ok(self.finish(ids::HECKE_RAISING, Some(ni), start, out))
    }

    /// Coefficient of `z^(n+1)` in the raising image equals
    /// `q^n abcd - q^(1-n)`.
    pub fn check_sraise_leading(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("Hecke raising (0 <= n <= n_max - 1)", ni, 0..=self.nmax() - 1)?;
        let start = Instant::now();
        let out = (|| {
            let lhs = self.hecke_ladder_lhs(n, &self.p.q().pow(1 - ni), &self.beta(-ni))?;
            let diff = lhs.coeff(ni + 1) - self.raise_multiple(ni);
            Ok(LaurentPoly::constant(diff).into())
        })();
        Ok(self.finish(ids::HECKE_RAISING_LEADING, Some(ni), start, out))
    }

    /// Hecke-algebra lowering operator for `Q_n`, divided by `gamma_n`. At
    /// `n = 1` the ratio is not available, so only a nonzero multiple of
    /// `P_0` is required.
    pub fn check_sraise_lower(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("Hecke lowering (1 <= n <= n_max)", ni, 1..=self.nmax())?;
        let start = Instant::now();
        let out = (|| {
            let coef = self.p.q().pow(ni) * self.p.abcd();
            let lhs = self.hecke_ladder_lhs(n, &coef, &self.beta(ni))?;
            if n == 1 {
                return Ok(proportional_residual(&lhs, self.poly(0)));
            }
            let ratio = self.recurrence_ratio(n)?;
            let multiple = -self.raise_multiple(ni) * ratio;
            Ok((lhs - self.poly(n - 1).scale(&multiple)).into())
        })();
        Ok(self.finish(ids::HECKE_LOWERING, Some(ni), start, out))
    }

    /// `alpha_n (q^n abcd - q^(1-n)) = beta_n - beta_-n`.
    pub fn check_alpha_beta(&self, n: u32) -> Result<IdentityReport> {
        let ni = i64::from(n);
        self.require("alpha/beta identity", ni, 1..=self.nmax())?;
        let start = Instant::now();
        let diff = self.alpha(n) * self.raise_multiple(ni) - (self.beta(ni) - self.beta(-ni));
        Ok(self.finish(ids::ALPHA_BETA, Some(ni), start, Ok(LaurentPoly::constant(diff).into())))
    }

    /// `[(1-q^2) D' z + q^2 D (z+1/z) - q (z+1/z) D] f
    ///   = (1-q) [(e1 - e3) - (1 - abcd)(z + 1/z)] f` on symmetric `f`.
    pub fn check_referee_identity(&self) -> IdentityReport {
        let start = Instant::now();
        let p = &self.p;
        let q = p.q();
        let one = Scalar::one();
        let dprime = self.hecke().dprime(DprimeForm::Factored);
        let zp = LaurentPoly::z_plus_inv();
        let rhs_mult = (LaurentPoly::constant(e1(p) - e3(p))
            - zp.scale(&(&one - p.abcd())))
        .scale(&(&one - q));
        let w = self.window();
        let out = self.over_trials(ids::D_DPRIME_RELATION, |rng| {
            let f = random_symmetric(rng, w);
            let t1 = dprime.apply(&(&LaurentPoly::z_pow(1) * &f))?.scale(&(&one - q * q));
            let t2 = self.apply_d(&(&zp * &f))?.scale(&(q * q));
            let t3 = (&zp * &self.apply_d(&f)?).scale(q);
            Ok(t1 + t2 - t3 - (&rhs_mult * &f))
        });
        self.finish(ids::D_DPRIME_RELATION, None, start, out)
    }

    fn tasks(&self) -> (Vec<Task>, Vec<Skipped>) {
        let nm = self.nmax();
        let mut tasks = Vec::new();
        let mut skipped = Vec::new();
        let mut range = |id: &'static str, lo: i64, hi: i64, make: &dyn Fn(i64) -> Task| {
            if lo > hi {
                skipped.push(Skipped {
                    identity: id,
                    reason: format!("empty index range {lo}..={hi} at n_max = {nm}"),
                });
            }
            for n in lo..=hi {
                tasks.push(make(n));
            }
        };
        let u = |n: i64| n as u32;
        range(ids::ORACLE_EQUIVALENCE, 0, nm, &|n| Task::OracleEquivalence(u(n)));
        range(ids::Q_DIFFERENCE, 0, nm, &|n| Task::QDifference(u(n)));
        range(ids::RECURRENCE, 2, nm - 1, &|n| Task::Recurrence(u(n)));
        range(ids::LADDER_RAISING, 2, nm - 1, &|n| Task::LadderRaising(u(n)));
        range(ids::LADDER_LOWERING, 2, nm - 1, &|n| Task::LadderLowering(u(n)));
        range(ids::E_EIGEN, -(nm - 1), nm - 1, &Task::EEigen);
        range(ids::SYMMETRIZATION, 1, nm - 1, &Task::Symmetrization);
        range(ids::SYMMETRIZATION, -(nm - 1), -1, &Task::Symmetrization);
        range(ids::PROJECTION, 0, nm - 1, &|n| Task::Projection(u(n)));
        range(ids::INTERTWINER, -(nm - 2), nm - 1, &Task::Intertwiner);
        range(ids::HECKE_RAISING, 0, nm - 1, &|n| Task::HeckeRaising(u(n)));
        range(ids::HECKE_RAISING_LEADING, 0, nm - 1, &|n| Task::HeckeRaisingLeading(u(n)));
        range(ids::HECKE_LOWERING, 1, nm, &|n| Task::HeckeLowering(u(n)));
        range(ids::ALPHA_BETA, 1, nm, &|n| Task::AlphaBeta(u(n)));
        tasks.extend([
            Task::Quadratic,
            Task::RSum,
            Task::Inverse,
            Task::Commutation,
            Task::SymmetryCriterion,
            Task::Factorization,
            Task::DprimeSymmetric,
            Task::DDprimeRelation,
        ]);
        (tasks, skipped)
    }

    fn run_task(&self, task: Task) -> IdentityReport {
        let r = match task {
            Task::OracleEquivalence(n) => self.check_oracle_equivalence(n),
            Task::QDifference(n) => self.check_q_difference(n),
            Task::Recurrence(n) => self.check_recurrence(n),
            Task::LadderRaising(n) => self.check_theorem1_raising(n),
            Task::LadderLowering(n) => self.check_theorem1_lowering(n),
            Task::Quadratic => Ok(self.check_quadratic()),
            Task::RSum => Ok(self.check_r_sum()),
            Task::Inverse => Ok(self.check_inverse()),
            Task::Commutation => Ok(self.check_commutation()),
            Task::SymmetryCriterion => Ok(self.check_symmetry_criterion()),
            Task::Factorization => Ok(self.check_factorization()),
            Task::DprimeSymmetric => Ok(self.check_dprime_symmetric()),
            Task::EEigen(n) => self.check_E_eigen(n),
            Task::Symmetrization(n) => self.check_PE(n),
            Task::Projection(n) => self.check_projection(n),
            Task::Intertwiner(n) => self.check_intertwiner(n),
            Task::HeckeRaising(n) => self.check_sraise_raise(n),
            Task::HeckeRaisingLeading(n) => self.check_sraise_leading(n),
            Task::HeckeLowering(n) => self.check_sraise_lower(n),
            Task::AlphaBeta(n) => self.check_alpha_beta(n),
            Task::DDprimeRelation => Ok(self.check_referee_identity()),
        };
        r.expect("suite tasks are generated inside their valid ranges")
    }

    /// Runs every check over its valid index range. Reports come back in
    /// declaration order whatever order the checks finish in.
    pub fn run(&self) -> SuiteResult {
        let (tasks, skipped) = self.tasks();
        let reports = tasks.par_iter().map(|t| self.run_task(*t)).collect();
        SuiteResult { reports, skipped }
    }
}

/// Runs the full suite at `p` re-certified to horizon `n_max`.
pub fn run_suite(p: &ParamSet, n_max: u32, trials: usize, seed: u64) -> Result<SuiteResult> {
    let p = if p.n_max() == n_max {
        p.clone()
    } else {
        p.with_horizon(n_max)?
    };
    let config = SuiteConfig {
        trials,
        seed,
        ..SuiteConfig::default()
    };
    Ok(Verifier::new(&p, config).run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::check_genericity;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn pi0(n_max: u32) -> ParamSet {
        check_genericity(s(1, 2), s(1, 3), s(1, 5), s(1, 7), s(1, 11), n_max).unwrap()
    }

    fn quick(fault: Option<Fault>) -> Verifier {
        Verifier::new(
            &pi0(5),
            SuiteConfig {
                trials: 4,
                seed: 7,
                window: 4,
                fault,
            },
        )
    }

    #[test]
    fn reference_point_passes() {
        let v = quick(None);
        let res = v.run();
        for r in &res.reports {
            assert!(r.passed, "{r}");
        }
        assert!(res.skipped.is_empty());
    }

    #[test]
    fn perturbed_lambda_fails_q_difference() {
        let v = quick(Some(Fault::Lambda));
        for n in 0..=5 {
            let r = v.check_q_difference(n).unwrap();
            assert!(!r.passed);
            // D P_n - (lambda_n + 1) P_n = -P_n
            assert_eq!(r.residual.unwrap(), -v.poly(n));
        }
    }

    #[test]
    fn swapped_lambdas_break_raising() {
        // Raising with lambda_(n-1) and lambda_(n+1) exchanged.
        let v = quick(None);
        let n = 2u32;
        let lo = v.lambda(1);
        let hi = v.lambda(3);
        let lhs = v.ladder_lhs(n, &hi).unwrap();
        let residual = lhs - v.poly(n + 1).scale(&(lo - hi));
        assert!(!residual.is_zero());
    }

    #[test]
    fn lowering_multiple_nonzero() {
        let v = quick(None);
        for n in 2..=4u32 {
            let c = v.recurrence_ratio(n).unwrap();
            let m = c * (v.lambda(i64::from(n) - 1) - v.lambda(i64::from(n) + 1));
            assert!(!m.is_zero());
        }
    }

    #[test]
    fn out_of_range_indices_are_rejected() {
        let v = quick(None);
        assert!(v.check_recurrence(1).is_err());
        assert!(v.check_theorem1_raising(1).is_err());
        assert!(v.check_sraise_lower(0).is_err());
        assert!(v.check_PE(0).is_err());
        assert!(v.check_q_difference(6).is_err());
    }

    #[test]
    fn raise_at_zero_is_direct() {
        // [D'z + (1-q)(z+1/z) + beta_0] 1 = (abcd - q) P_1
        let v = quick(None);
        let r = v.check_sraise_raise(0).unwrap();
        assert!(r.passed, "{r}");
        let p = v.params();
        let lhs = v
            .hecke_ladder_lhs(0, p.q(), &beta_n(0, p))
            .unwrap();
        assert_eq!(lhs, v.poly(1).scale(&(p.abcd() - p.q())));
    }

    #[test]
    fn intertwiner_at_one_lands_on_constants() {
        let v = quick(None);
        let e1 = v.e(-1).unwrap();
        let op = v
            .hecke()
            .t0_t0_inv()
            .of(OperatorExpr::mul_z_pow(1))
            .plus_scalar(-kappa_n(1, v.params()));
        let image = op.apply(&e1).unwrap();
        assert_eq!(image.max_deg(), Some(0));
        assert_eq!(image.min_deg(), Some(0));
    }

    #[test]
    fn projection_at_zero() {
        let v = quick(None);
        let r = v.check_projection(0).unwrap();
        assert!(r.passed);
        // t0 T0^{-1} 1 = 1, so the image is (1 - mu_0)
        let image = v
            .hecke()
            .t0_t0_inv()
            .plus_scalar(-mu_n(0, v.params()))
            .apply(&LaurentPoly::one())
            .unwrap();
        assert_eq!(image, LaurentPoly::constant(Scalar::one() - mu_n(0, v.params())));
    }

    #[test]
    fn referee_identity_on_constant() {
        // With f = 1 the term (z + 1/z) D f vanishes.
        let p = pi0(3);
        let q = p.q();
        let one = Scalar::one();
        let dz = Hecke::new(&p)
            .dprime(DprimeForm::Factored)
            .apply(&LaurentPoly::z_pow(1))
            .unwrap()
            .scale(&(&one - q * q))
            + crate::operators::apply_D(&LaurentPoly::z_plus_inv(), &p)
                .unwrap()
                .scale(&(q * q));
        let rhs = (LaurentPoly::constant(e1(&p) - e3(&p))
            - LaurentPoly::z_plus_inv().scale(&(&one - p.abcd())))
        .scale(&(&one - q));
        assert_eq!(dz, rhs);
    }

    #[test]
    fn faults_flip_exactly_their_dependents() {
        for fault in Fault::ALL {
            let res = quick(Some(fault)).run();
            let deps = fault.dependents();
            for r in &res.reports {
                if deps.contains(&r.identity) {
                    continue;
                }
                assert!(r.passed, "{fault}: unexpected failure {r}");
            }
            for id in deps {
                let failing = res
                    .reports
                    .iter()
                    .filter(|r| r.identity == *id && !r.passed)
                    .count();
                assert!(failing > 0, "{fault}: {id} did not fail");
            }
            for r in res.failures() {
                assert!(r.residual.as_ref().is_some_and(|w| !w.is_zero()));
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let v = quick(None);
        let r = v.check_alpha_beta(1).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"identity":"alpha-beta","n":1,"passed":true,"residual":null,"params":{"q":"1/2""#));
        assert!(json.ends_with(r#""seed":7}"#));
    }

    #[test]
    fn small_horizon_skips_empty_ranges() {
        let res = run_suite(&pi0(1), 1, 2, 1).unwrap();
        assert!(res.all_passed());
        assert!(res.skipped.iter().any(|s| s.identity == ids::RECURRENCE));
    }
}
