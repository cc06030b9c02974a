//! Parameter points and their genericity certificate.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;

/// Which genericity condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `q` must avoid `0, 1, -1`.
    G1,
    /// `a, b, c, d` nonzero.
    G2,
    /// `abcd * q^j != 1`.
    G3,
    /// `p * q^j != 1` for each pairwise product `p`.
    G4,
    /// nonsymmetric eigenvalues `mu` pairwise distinct.
    G5,
    /// symmetric eigenvalues `lambda` pairwise distinct.
    G6,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::G1 => "G1",
            Condition::G2 => "G2",
            Condition::G3 => "G3",
            Condition::G4 => "G4",
            Condition::G5 => "G5",
            Condition::G6 => "G6",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("GenericityError({condition}): {witness}")]
pub struct GenericityError {
    pub condition: Condition,
    pub witness: String,
}

impl GenericityError {
    fn new(condition: Condition, witness: impl Into<String>) -> Self {
        GenericityError {
            condition,
            witness: witness.into(),
        }
    }
}

/// Lowest power of `q` checked by G3. The closed form for `alpha_0` and the
/// `n = 0` projection involve `abcd/q^2` and `abcd/q`, so the window starts
/// below zero.
pub(crate) const G3_MIN_EXP: i64 = -2;

/// A certified parameter point `(q, a, b, c, d)` with genericity horizon
/// `n_max`. Construct through [`ParamSet::new`]; every field is immutable.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamSet {
    q: Scalar,
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    n_max: u32,
    t0: Scalar,
    t1: Scalar,
    abcd: Scalar,
}

impl fmt::Debug for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ParamSet(q={}, a={}, b={}, c={}, d={}, n_max={})",
            self.q, self.a, self.b, self.c, self.d, self.n_max
        )
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={},a={},b={},c={},d={}",
            self.q, self.a, self.b, self.c, self.d
        )
    }
}

/// `lambda_n` from `q` and `abcd` alone, used before a certificate exists.
pub(crate) fn raw_lambda(n: i64, q: &Scalar, abcd: &Scalar) -> Scalar {
    let m = n.abs();
    (q.pow(-m) - Scalar::one()) * (Scalar::one() - abcd * q.pow(m - 1))
}

pub(crate) fn raw_mu(n: i64, q: &Scalar, abcd: &Scalar) -> Scalar {
    if n < 0 {
        q.pow(n)
    } else {
        q.pow(n - 1) * abcd
    }
}

/// Validates `(q, a, b, c, d)` against conditions G1 to G6 up to `n_max` and
/// returns the certified point, or the first violated condition.
pub fn check_genericity(
    q: Scalar,
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    n_max: u32,
) -> Result<ParamSet, GenericityError> {
    use Condition::*;

    let one = Scalar::one();
    if q.is_zero() || q == one || q == -&one {
        return Err(GenericityError::new(
            G1,
            format!("q = {q} is excluded (q must avoid 0, 1, -1)"),
        ));
    }
    for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
        if v.is_zero() {
            return Err(GenericityError::new(G2, format!("{name} = 0")));
        }
    }

    let nm = i64::from(n_max);
    let abcd = &a * &b * &c * &d;
    for j in G3_MIN_EXP..=2 * nm + 2 {
        if (&abcd * q.pow(j)).is_one() {
            return Err(GenericityError::new(G3, format!("abcd·q^{j} = 1")));
        }
    }

    let pairs = [
        ("ab", &a * &b),
        ("ac", &a * &c),
        ("ad", &a * &d),
        ("bc", &b * &c),
        ("bd", &b * &d),
        ("cd", &c * &d),
    ];
    for (name, p) in &pairs {
        for j in 0..=nm {
            if (p * q.pow(j)).is_one() {
                return Err(GenericityError::new(G4, format!("{name}·q^{j} = 1")));
            }
        }
    }

    check_distinct_mu(&q, &abcd, nm)?;
    check_distinct_lambda(&q, &abcd, nm)?;

    let t0 = -(&c * &d) / &q;
    let t1 = -(&a * &b);
    Ok(ParamSet {
        q,
        a,
        b,
        c,
        d,
        n_max,
        t0,
        t1,
        abcd,
    })
}

/// G5. Over the rationals this is implied by G3, since `mu_m = mu_k` forces
/// `abcd * q^j = 1` for some `j` in G3's window; it is still checked.
fn check_distinct_mu(q: &Scalar, abcd: &Scalar, nm: i64) -> Result<(), GenericityError> {
    let mus: Vec<(i64, Scalar)> = (-nm - 1..=nm + 1)
        .map(|m| (m, raw_mu(m, q, abcd)))
        .collect();
    for (i, (m, mu_m)) in mus.iter().enumerate() {
        for (k, mu_k) in &mus[i + 1..] {
            if mu_m == mu_k {
                return Err(GenericityError::new(
                    Condition::G5,
                    format!("mu_{m} = mu_{k} = {mu_m}"),
                ));
            }
        }
    }
    Ok(())
}

/// G6. Also implied by G3 (`lambda_m = lambda_k` iff `abcd * q^(m+k-1) = 1`).
fn check_distinct_lambda(q: &Scalar, abcd: &Scalar, nm: i64) -> Result<(), GenericityError> {
    let lambdas: Vec<(i64, Scalar)> = (0..=nm + 1)
        .map(|m| (m, raw_lambda(m, q, abcd)))
        .collect();
    for (i, (m, l_m)) in lambdas.iter().enumerate() {
        for (k, l_k) in &lambdas[i + 1..] {
            if l_m == l_k {
                return Err(GenericityError::new(
                    Condition::G6,
                    format!("lambda_{m} = lambda_{k} = {l_m}"),
                ));
            }
        }
    }
    Ok(())
}

impl ParamSet {
    /// Alias for [`check_genericity`].
    pub fn new(
        q: Scalar,
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
        n_max: u32,
    ) -> Result<Self, GenericityError> {
        check_genericity(q, a, b, c, d, n_max)
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }
    pub fn a(&self) -> &Scalar {
        &self.a
    }
    pub fn b(&self) -> &Scalar {
        &self.b
    }
    pub fn c(&self) -> &Scalar {
        &self.c
    }
    pub fn d(&self) -> &Scalar {
        &self.d
    }
    pub fn n_max(&self) -> u32 {
        self.n_max
    }
    /// `t0 = -cd/q`.
    pub fn t0(&self) -> &Scalar {
        &self.t0
    }
    /// `t1 = -ab`.
    pub fn t1(&self) -> &Scalar {
        &self.t1
    }
    pub fn abcd(&self) -> &Scalar {
        &self.abcd
    }

    /// The same point with the four parameters reordered.
    pub fn permuted(&self, order: [usize; 4]) -> Result<Self, GenericityError> {
        let v = [&self.a, &self.b, &self.c, &self.d];
        check_genericity(
            self.q.clone(),
            v[order[0]].clone(),
            v[order[1]].clone(),
            v[order[2]].clone(),
            v[order[3]].clone(),
            self.n_max,
        )
    }

    /// Re-certifies the point with a different horizon.
    pub fn with_horizon(&self, n_max: u32) -> Result<Self, GenericityError> {
        check_genericity(
            self.q.clone(),
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            n_max,
        )
    }

    /// Parses `q=..,a=..,b=..,c=..,d=..` (any order, all five required).
    pub fn parse_assignments(s: &str, n_max: u32) -> Result<Self, crate::Error> {
        let mut slots: [Option<Scalar>; 5] = Default::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| crate::Error::InvalidInput(format!("expected key=value, got {part:?}")))?;
            let idx = match key.trim() {
                "q" => 0,
                "a" => 1,
                "b" => 2,
                "c" => 3,
                "d" => 4,
                other => {
                    return Err(crate::Error::InvalidInput(format!(
                        "unknown parameter {other:?}"
                    )))
                }
            };
            if slots[idx].is_some() {
                return Err(crate::Error::InvalidInput(format!(
                    "parameter {} given twice",
                    key.trim()
                )));
            }
            slots[idx] = Some(value.trim().parse()?);
        }
        let names = ["q", "a", "b", "c", "d"];
        let mut vals = Vec::with_capacity(5);
        for (slot, name) in slots.into_iter().zip(names) {
            vals.push(slot.ok_or_else(|| crate::Error::InvalidInput(format!("missing parameter {name}")))?);
        }
        let [q, a, b, c, d]: [Scalar; 5] = vals.try_into().expect("five values");
        Ok(check_genericity(q, a, b, c, d, n_max)?)
    }
}

#[derive(Serialize, Deserialize)]
struct ParamSetRepr {
    q: Scalar,
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    n_max: u32,
}

impl Serialize for ParamSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ParamSetRepr {
            q: self.q.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
            n_max: self.n_max,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParamSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = ParamSetRepr::deserialize(deserializer)?;
        check_genericity(r.q, r.a, r.b, r.c, r.d, r.n_max).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn base(n_max: u32) -> Result<ParamSet, GenericityError> {
        check_genericity(s(1, 2), s(1, 3), s(1, 5), s(1, 7), s(1, 11), n_max)
    }

    #[test]
    fn reference_point_is_generic() {
        let p = base(8).unwrap();
        assert_eq!(p.t0(), &s(-2, 77));
        assert_eq!(p.t1(), &s(-1, 15));
        assert_eq!(p.abcd(), &s(1, 1155));
    }

    #[test]
    fn q_one_is_g1() {
        let e = check_genericity(s(1, 1), s(1, 3), s(1, 5), s(1, 7), s(1, 11), 8).unwrap_err();
        assert_eq!(e.condition, Condition::G1);
        assert!(e.to_string().starts_with("GenericityError(G1)"));
        for q in [s(0, 1), s(-1, 1)] {
            let e = check_genericity(q, s(1, 3), s(1, 5), s(1, 7), s(1, 11), 8).unwrap_err();
            assert_eq!(e.condition, Condition::G1);
        }
    }

    #[test]
    fn zero_parameter_is_g2() {
        let e = check_genericity(s(1, 2), s(1, 3), s(0, 1), s(1, 7), s(1, 11), 8).unwrap_err();
        assert_eq!(e.condition, Condition::G2);
    }

    #[test]
    fn ab_equal_one_is_g4() {
        let e = check_genericity(s(1, 2), s(2, 1), s(1, 2), s(1, 7), s(1, 11), 8).unwrap_err();
        assert_eq!(e.condition, Condition::G4);
        assert!(e.witness.contains("ab·q^0"));
    }

    #[test]
    fn abcd_hitting_power_of_q_is_g3() {
        // abcd = 1/4 = q^2 with q = 1/2 gives abcd * q^-2 = 1
        let e = check_genericity(s(1, 2), s(1, 1), s(1, 1), s(-1, 2), s(-1, 2), 8).unwrap_err();
        assert_eq!(e.condition, Condition::G3);
        // abcd = 2^6 hits q^6
        let e = check_genericity(s(1, 2), s(4, 1), s(4, 1), s(-2, 1), s(-2, 1), 8).unwrap_err();
        assert_eq!(e.condition, Condition::G3);
    }

    #[test]
    fn coinciding_mu_is_g5() {
        // abcd = q^{2-2n} at n = 2 gives mu_1 = mu_{-2}; check_genericity
        // reports it as G3 first.
        let q = s(1, 2);
        let e = check_genericity(q.clone(), s(2, 1), s(-2, 1), s(3, 1), s(-1, 3), 8).unwrap_err();
        assert_eq!(e.condition, Condition::G3);
        let e = check_distinct_mu(&q, &s(4, 1), 8).unwrap_err();
        assert_eq!(e.condition, Condition::G5);
        assert!(e.witness.contains("mu_"));
        assert!(check_distinct_mu(&q, &s(1, 1155), 8).is_ok());
    }

    #[test]
    fn coinciding_lambda_is_g6() {
        // lambda_1 = lambda_2 iff abcd * q^2 = 1
        let q = s(1, 3);
        let e = check_distinct_lambda(&q, &s(9, 1), 8).unwrap_err();
        assert_eq!(e.condition, Condition::G6);
        assert!(check_distinct_lambda(&q, &s(1, 1155), 8).is_ok());
    }

    #[test]
    fn serde_round_trip_recertifies() {
        let p = base(4).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"q":"1/2","a":"1/3","b":"1/5","c":"1/7","d":"1/11","n_max":4}"#
        );
        let back: ParamSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"q":"1","a":"1/3","b":"1/5","c":"1/7","d":"1/11","n_max":4}"#;
        assert!(serde_json::from_str::<ParamSet>(bad).is_err());
    }

    #[test]
    fn parse_assignments_accepts_any_order() {
        let p = ParamSet::parse_assignments("a=1/3, q=1/2,b=1/5,d=1/11,c=1/7", 8).unwrap();
        assert_eq!(p, base(8).unwrap());
        assert!(ParamSet::parse_assignments("q=1/2,a=1/3,b=1/5,c=1/7", 8).is_err());
        assert!(ParamSet::parse_assignments("q=1/2,a=1/3,b=1/5,c=1/7,d=0.1", 8).is_err());
        assert!(ParamSet::parse_assignments("q=1/2,a=1/3,b=1/5,c=1/7,d=1/11,e=2", 8).is_err());
    }
}
