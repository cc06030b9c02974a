//! Operators on Laurent polynomials: the `q`-shifts, the reflections `s0`,
//! `s1`, the Hecke operators `T0`, `T1`, their scaled inverses, `Y = T1 T0`,
//! the symmetric difference operator `D` and its variant `D'`.
//!
//! Operators are built as [`OperatorExpr`] trees and evaluated in
//! [`LaurentFraction`] form. A [`OperatorExpr::Reduced`] node marks a
//! boundary where the intermediate fraction must be a Laurent polynomial;
//! failure to reduce there is reported as [`NotDivisible`].

#![allow(non_snake_case)]

use crate::error::{Error, Result};
use crate::laurent::{LaurentFraction, LaurentPoly, NotDivisible, Substitution};
use crate::params::ParamSet;
use crate::scalar::Scalar;

/// A linear operator on Laurent polynomials, as an expression tree.
#[derive(Debug, Clone)]
pub enum OperatorExpr {
    Identity,
    /// Multiplication by a constant.
    Scale(Scalar),
    /// Multiplication by a Laurent polynomial.
    MulPoly(LaurentPoly),
    /// Multiplication by a rational function.
    MulFrac(LaurentFraction),
    Subst { rule: Substitution, q: Scalar },
    Sum(Vec<OperatorExpr>),
    /// Applied left to right: the first element acts first.
    Compose(Vec<OperatorExpr>),
    /// Evaluates the inner operator and reduces the result to a Laurent
    /// polynomial.
    Reduced(Box<OperatorExpr>),
}

impl OperatorExpr {
    pub fn scalar(c: Scalar) -> Self {
        OperatorExpr::Scale(c)
    }

    pub fn mul_poly(f: LaurentPoly) -> Self {
        OperatorExpr::MulPoly(f)
    }

    /// Multiplication by `z^k`.
    pub fn mul_z_pow(k: i64) -> Self {
        OperatorExpr::MulPoly(LaurentPoly::z_pow(k))
    }

    pub fn subst(rule: Substitution, q: &Scalar) -> Self {
        OperatorExpr::Subst { rule, q: q.clone() }
    }

    pub fn reduced(self) -> Self {
        OperatorExpr::Reduced(Box::new(self))
    }

    /// `next ∘ self`: apply `self`, then `next`.
    pub fn then(self, next: OperatorExpr) -> Self {
        match self {
            OperatorExpr::Compose(mut v) => {
                v.push(next);
                OperatorExpr::Compose(v)
            }
            other => OperatorExpr::Compose(vec![other, next]),
        }
    }

    /// `self ∘ inner`, matching the written order of an operator product.
    pub fn of(self, inner: OperatorExpr) -> Self {
        inner.then(self)
    }

    pub fn plus(self, other: OperatorExpr) -> Self {
        match self {
            OperatorExpr::Sum(mut v) => {
                v.push(other);
                OperatorExpr::Sum(v)
            }
            s => OperatorExpr::Sum(vec![s, other]),
        }
    }

    pub fn minus(self, other: OperatorExpr) -> Self {
        self.plus(other.scaled(-Scalar::one()))
    }

    /// `self + c`, with `c` acting as multiplication by a constant.
    pub fn plus_scalar(self, c: Scalar) -> Self {
        self.plus(OperatorExpr::Scale(c))
    }

    pub fn scaled(self, c: Scalar) -> Self {
        self.then(OperatorExpr::Scale(c))
    }

    pub fn apply_fraction(&self, f: &LaurentFraction) -> Result<LaurentFraction, NotDivisible> {
        Ok(match self {
            OperatorExpr::Identity => f.clone(),
            OperatorExpr::Scale(c) => f.scale(c),
            OperatorExpr::MulPoly(g) => f.mul_poly(g),
            OperatorExpr::MulFrac(r) => f * r,
            OperatorExpr::Subst { rule, q } => f.substitute(*rule, q),
            OperatorExpr::Sum(terms) => {
                let mut acc: Option<LaurentFraction> = None;
                for t in terms {
                    let v = t.apply_fraction(f)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => &a + &v,
                    });
                }
                acc.unwrap_or_else(|| LaurentPoly::zero().into())
            }
            OperatorExpr::Compose(steps) => {
                let mut cur = f.clone();
                for s in steps {
                    cur = s.apply_fraction(&cur)?;
                }
                cur
            }
            OperatorExpr::Reduced(inner) => inner.apply_fraction(f)?.reduce()?.into(),
        })
    }

    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly, NotDivisible> {
        self.apply_fraction(&f.clone().into())?.reduce()
    }
}

/// Which route to use for `D'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DprimeForm {
    /// Rational-coefficient form `A(z)(T_q - s1) + A(1/z)(T_{1/q} s1 - 1)`,
    /// reduced only after both terms are combined.
    Direct,
    /// `(T1 + 1)(T0 - t0)`.
    Factored,
}

/// Operator and coefficient builders for one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct Hecke<'a> {
    p: &'a ParamSet,
}

impl<'a> Hecke<'a> {
    pub fn new(p: &'a ParamSet) -> Self {
        Hecke { p }
    }

    pub fn params(&self) -> &'a ParamSet {
        self.p
    }

    fn one_minus(x: &Scalar, k: i64) -> LaurentPoly {
        // 1 - x z^k
        LaurentPoly::from_terms([(0, Scalar::one()), (k, -x)])
    }

    /// `r0 = (z - c)(z - d) / (z^2 - q)`.
    pub fn r0(&self) -> LaurentFraction {
        let p = self.p;
        let num = LaurentPoly::from_terms([(1, Scalar::one()), (0, -p.c())])
            * LaurentPoly::from_terms([(1, Scalar::one()), (0, -p.d())]);
        let den = LaurentPoly::from_terms([(2, Scalar::one()), (0, -p.q())]);
        LaurentFraction::new(num, den)
    }

    /// `r1 = (1 - az)(1 - bz) / (1 - z^2)`.
    pub fn r1(&self) -> LaurentFraction {
        let p = self.p;
        let num = Self::one_minus(p.a(), 1) * Self::one_minus(p.b(), 1);
        let den = Self::one_minus(&Scalar::one(), 2);
        LaurentFraction::new(num, den)
    }

    /// `A(z) = (1-az)(1-bz)(1-cz)(1-dz) / ((1-z^2)(1-qz^2))`.
    pub fn a_coefficient(&self) -> LaurentFraction {
        let p = self.p;
        let num = [p.a(), p.b(), p.c(), p.d()]
            .into_iter()
            .fold(LaurentPoly::one(), |acc, x| acc * Self::one_minus(x, 1));
        let den = Self::one_minus(&Scalar::one(), 2) * Self::one_minus(p.q(), 2);
        LaurentFraction::new(num, den)
    }

    /// `A(1/z)`.
    pub fn a_coefficient_inv(&self) -> LaurentFraction {
        self.a_coefficient()
            .substitute(Substitution::Inversion, self.p.q())
    }

    pub fn t_q(&self) -> OperatorExpr {
        OperatorExpr::subst(Substitution::QShift, self.p.q())
    }

    pub fn t_q_inv(&self) -> OperatorExpr {
        OperatorExpr::subst(Substitution::QInverseShift, self.p.q())
    }

    /// `s0 f(z) = f(q/z)`.
    pub fn s0(&self) -> OperatorExpr {
        OperatorExpr::subst(Substitution::QReflection, self.p.q())
    }

    /// `s1 f(z) = f(1/z)`.
    pub fn s1(&self) -> OperatorExpr {
        OperatorExpr::subst(Substitution::Inversion, self.p.q())
    }

    fn hecke(t: &Scalar, r: LaurentFraction, s: OperatorExpr) -> OperatorExpr {
        // t + r (s - 1)
        let reflect_part = s.minus(OperatorExpr::Identity).then(OperatorExpr::MulFrac(r));
        OperatorExpr::Scale(t.clone()).plus(reflect_part).reduced()
    }

    pub fn t0(&self) -> OperatorExpr {
        Self::hecke(self.p.t0(), self.r0(), self.s0())
    }

    pub fn t1(&self) -> OperatorExpr {
        Self::hecke(self.p.t1(), self.r1(), self.s1())
    }

    /// `t0 T0^{-1} = T0 - t0 + 1`.
    pub fn t0_t0_inv(&self) -> OperatorExpr {
        self.t0().plus_scalar(Scalar::one() - self.p.t0())
    }

    /// `t1 T1^{-1} = T1 - t1 + 1`.
    pub fn t1_t1_inv(&self) -> OperatorExpr {
        self.t1().plus_scalar(Scalar::one() - self.p.t1())
    }

    /// `Y = T1 T0`.
    pub fn y(&self) -> OperatorExpr {
        self.t1().of(self.t0())
    }

    /// `A(z)(T_q - 1) + A(1/z)(T_{1/q} - 1)`.
    pub fn d(&self) -> OperatorExpr {
        let up = self
            .t_q()
            .minus(OperatorExpr::Identity)
            .then(OperatorExpr::MulFrac(self.a_coefficient()));
        let down = self
            .t_q_inv()
            .minus(OperatorExpr::Identity)
            .then(OperatorExpr::MulFrac(self.a_coefficient_inv()));
        up.plus(down).reduced()
    }

    pub fn dprime(&self, form: DprimeForm) -> OperatorExpr {
        match form {
            DprimeForm::Direct => {
                let up = self
                    .t_q()
                    .minus(self.s1())
                    .then(OperatorExpr::MulFrac(self.a_coefficient()));
                let down = self
                    .s1()
                    .then(self.t_q_inv())
                    .minus(OperatorExpr::Identity)
                    .then(OperatorExpr::MulFrac(self.a_coefficient_inv()));
                up.plus(down).reduced()
            }
            DprimeForm::Factored => {
                let lower = self.t0().plus_scalar(-self.p.t0());
                let upper = self.t1().plus_scalar(Scalar::one());
                upper.of(lower)
            }
        }
    }
}

pub fn apply_T1(f: &LaurentPoly, p: &ParamSet) -> Result<LaurentPoly> {
    Ok(Hecke::new(p).t1().apply(f)?)
}

pub fn apply_T0(f: &LaurentPoly, p: &ParamSet) -> Result<LaurentPoly> {
    Ok(Hecke::new(p).t0().apply(f)?)
}

/// `t0 T0^{-1} f = T0 f - t0 f + f`.
pub fn apply_t0_T0_inv(f: &LaurentPoly, p: &ParamSet) -> Result<LaurentPoly> {
    Ok(Hecke::new(p).t0_t0_inv().apply(f)?)
}

/// The symmetric difference operator. Only defined here on symmetric inputs.
pub fn apply_D(f: &LaurentPoly, p: &ParamSet) -> Result<LaurentPoly> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(Hecke::new(p).d().apply(f)?)
}

pub fn apply_Dprime(f: &LaurentPoly, p: &ParamSet, form: DprimeForm) -> Result<LaurentPoly> {
    Ok(Hecke::new(p).dprime(form).apply(f)?)
}

pub fn apply_Y(f: &LaurentPoly, p: &ParamSet) -> Result<LaurentPoly> {
    Ok(Hecke::new(p).y().apply(f)?)
}
