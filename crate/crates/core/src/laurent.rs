//! Sparse Laurent polynomials in `z` over exact rationals, and quotients of
//! them.
//!
//! Substitutions act on polynomials monomial-wise, e.g. the `q`-shift sends
//! `z^k` to `q^k z^k`. This is the polynomial-action convention, not
//! function composition, and it is what makes `s1 s0` equal the `q`-shift.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not divisible, remainder {remainder}")]
pub struct NotDivisible {
    pub remainder: LaurentPoly,
}

/// Monomial substitutions used by the shift and reflection operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Substitution {
    /// `z -> qz`: `z^k -> q^k z^k`.
    QShift,
    /// `z -> z/q`: `z^k -> q^-k z^k`.
    QInverseShift,
    /// `z -> 1/z`: `z^k -> z^-k`.
    Inversion,
    /// `z -> q/z`: `z^k -> q^k z^-k`.
    QReflection,
}

impl Substitution {
    fn map(self, k: i64, c: &Scalar, q: &Scalar) -> (i64, Scalar) {
        match self {
            Substitution::QShift => (k, c * q.pow(k)),
            Substitution::QInverseShift => (k, c * q.pow(-k)),
            Substitution::Inversion => (-k, c.clone()),
            Substitution::QReflection => (-k, c * q.pow(k)),
        }
    }
}

/// Finitely supported map from degree to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Scalar>,
}

/// Result of [`LaurentPoly::proportional`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proportionality {
    /// Both polynomials vanish, so any multiple works.
    BothZero,
    /// `f = c * g`.
    Multiple(Scalar),
    NotProportional,
}

impl Proportionality {
    /// The constant when it exists and is nonzero.
    pub fn nonzero_multiple(&self) -> Option<&Scalar> {
        match self {
            Proportionality::Multiple(c) if !c.is_zero() => Some(c),
            _ => None,
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c z^k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    /// `z^k`.
    pub fn z_pow(k: i64) -> Self {
        Self::monomial(Scalar::one(), k)
    }

    /// `z + 1/z`.
    pub fn z_plus_inv() -> Self {
        Self::from_terms([(1, Scalar::one()), (-1, Scalar::one())])
    }

    /// Sums repeated degrees and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(terms: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn min_deg(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_deg(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, v)| (d + k, v.clone())).collect(),
        }
    }

    pub fn substitute(&self, rule: Substitution, q: &Scalar) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| rule.map(*k, c, q))
                .collect(),
        }
    }

    /// `f(1/z) == f`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(k, c)| self.coeffs.get(&-k) == Some(c))
    }

    /// Finds `c` with `self = c * g`.
    pub fn proportional(&self, g: &LaurentPoly) -> Proportionality {
        let Some((&k, lead)) = g.coeffs.iter().next_back() else {
            return if self.is_zero() {
                Proportionality::BothZero
            } else {
                Proportionality::NotProportional
            };
        };
        let c = self.coeff(k) / lead;
        if *self == g.scale(&c) {
            Proportionality::Multiple(c)
        } else {
            Proportionality::NotProportional
        }
    }

    /// Returns `h` with `h * den = self`, or the nonzero remainder of the
    /// division. Panics if `den` is zero.
    pub fn exact_quotient(&self, den: &LaurentPoly) -> Result<LaurentPoly, NotDivisible> {
        assert!(!den.is_zero(), "division by the zero Laurent polynomial");
        let Some(num_lo) = self.min_deg() else {
            return Ok(LaurentPoly::zero());
        };
        if den.num_terms() == 1 {
            let (k, c) = den.terms().next().unwrap();
            return Ok(self.shift(-k).scale(&c.recip()));
        }
        let den_lo = den.min_deg().unwrap();
        // Ordinary polynomials with nonzero constant terms; divisibility in
        // the Laurent ring is divisibility of these.
        let mut rem = dense(self, num_lo);
        let divisor = dense(den, den_lo);
        let dlen = divisor.len();
        if rem.len() < dlen {
            return Err(NotDivisible {
                remainder: self.clone(),
            });
        }
        let lead_inv = divisor[dlen - 1].recip();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![Scalar::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let factor = top * &lead_inv;
            for (j, dc) in divisor.iter().enumerate() {
                if !dc.is_zero() {
                    let t = &factor * dc;
                    rem[i + j] -= &t;
                }
            }
            quot[i] = factor;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            let remainder = LaurentPoly::from_terms(
                rem.into_iter()
                    .enumerate()
                    .map(|(i, c)| (i as i64 + num_lo, c)),
            );
            return Err(NotDivisible { remainder });
        }
        Ok(LaurentPoly::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + num_lo - den_lo, c)),
        ))
    }

    /// Total bits of all coefficients; a rough size measure.
    pub fn height_bits(&self) -> u64 {
        self.coeffs.values().map(Scalar::height_bits).sum()
    }
}

fn dense(f: &LaurentPoly, lo: i64) -> Vec<Scalar> {
    let hi = f.max_deg().unwrap();
    let mut out = vec![Scalar::zero(); (hi - lo + 1) as usize];
    for (k, c) in f.terms() {
        out[(k - lo) as usize] = c.clone();
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.coeffs.iter().rev().enumerate() {
            let negative = c.numer().sign() == num_bigint::Sign::Minus;
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let m = c.abs();
            match (*k, m.is_one()) {
                (0, _) => write!(f, "{m}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "({m})*z")?,
                (k, true) => write!(f, "z^{k}")?,
                (k, false) => write!(f, "({m})*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, &-c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Scalar::one())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Scalar> for LaurentPoly {
    fn from(c: Scalar) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<i64, Scalar>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.len()))?;
                for (k, c) in self.0 {
                    m.serialize_entry(&k.to_string(), c)?;
                }
                m.end()
            }
        }
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry("var", "z")?;
        m.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            var: String,
            coeffs: BTreeMap<String, Scalar>,
        }
        let r = Repr::deserialize(deserializer)?;
        if r.var != "z" {
            return Err(D::Error::custom(format!("unsupported variable {:?}", r.var)));
        }
        let mut out = LaurentPoly::zero();
        for (k, c) in r.coeffs {
            let deg: i64 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad degree {k:?}")))?;
            out.add_term(deg, &c);
        }
        Ok(out)
    }
}

/// A quotient `num / den` of Laurent polynomials. Never simplified by gcd;
/// equality is by cross-multiplication.
#[derive(Clone)]
pub struct LaurentFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentFraction {
    /// Panics when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "LaurentFraction with zero denominator");
        LaurentFraction { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LaurentFraction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, g: &LaurentPoly) -> Self {
        LaurentFraction {
            num: &self.num * g,
            den: self.den.clone(),
        }
    }

    pub fn substitute(&self, rule: Substitution, q: &Scalar) -> Self {
        LaurentFraction {
            num: self.num.substitute(rule, q),
            den: self.den.substitute(rule, q),
        }
    }

    /// The Laurent polynomial equal to this fraction.
    pub fn reduce(&self) -> Result<LaurentPoly, NotDivisible> {
        self.num.exact_quotient(&self.den)
    }
}

impl From<LaurentPoly> for LaurentFraction {
    fn from(p: LaurentPoly) -> Self {
        LaurentFraction {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

impl PartialEq for LaurentFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for LaurentFraction {}

impl fmt::Debug for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Add<&LaurentFraction> for &LaurentFraction {
    type Output = LaurentFraction;
    fn add(self, rhs: &LaurentFraction) -> LaurentFraction {
        if self.den == rhs.den {
            return LaurentFraction {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        LaurentFraction {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub<&LaurentFraction> for &LaurentFraction {
    type Output = LaurentFraction;
    fn sub(self, rhs: &LaurentFraction) -> LaurentFraction {
        self + &rhs.scale(&-Scalar::one())
    }
}

impl Mul<&LaurentFraction> for &LaurentFraction {
    type Output = LaurentFraction;
    fn mul(self, rhs: &LaurentFraction) -> LaurentFraction {
        LaurentFraction {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}
