//! Symmetric Askey-Wilson polynomials `P_n` (from the terminating
//! basic hypergeometric sum, and independently as eigenvectors of `D`), the
//! nonsymmetric polynomials `E_n` (eigenvectors of `Y`), symmetrization, and
//! the extracted recurrence ratio.

#![allow(non_snake_case)]

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Proportionality};
use crate::linalg::null_space;
use crate::operators::{apply_T1, Hecke};
use crate::params::ParamSet;
use crate::quantities::{alpha_n, lambda_n, mu_n, q_pochhammer};
use crate::scalar::Scalar;

/// The order `0, -1, 1, -2, 2, ...` on monomial degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderedBasisIndex;

impl OrderedBasisIndex {
    pub fn position(k: i64) -> usize {
        match k {
            0 => 0,
            k if k < 0 => (2 * -k - 1) as usize,
            k => (2 * k) as usize,
        }
    }

    pub fn degree_at(pos: usize) -> i64 {
        let p = pos as i64;
        if p % 2 == 1 {
            -(p + 1) / 2
        } else {
            p / 2
        }
    }

    /// `j ⪯ k`.
    pub fn precedes_eq(j: i64, k: i64) -> bool {
        Self::position(j) <= Self::position(k)
    }
}

fn check_horizon(n: i64, p: &ParamSet) -> Result<()> {
    if n.unsigned_abs() > u64::from(p.n_max()) {
        return Err(Error::OutOfHorizon { n, n_max: p.n_max() });
    }
    Ok(())
}

/// Monic `P_n` from the terminating sum. Requires `n <= n_max`.
pub fn askey_wilson_P(n: u32, p: &ParamSet) -> Result<LaurentPoly> {
    check_horizon(i64::from(n), p)?;
    Ok(build_p(n, p))
}

/// Builds `P_n` without the horizon check. Valid up to `n_max + 1`: every
/// denominator involved is covered by G1 to G4 at that index.
pub(crate) fn build_p(n: u32, p: &ParamSet) -> LaurentPoly {
    let (q, a, b, c, d) = (p.q(), p.a(), p.b(), p.c(), p.d());
    let ni = i64::from(n);
    let ab = a * b;
    let ac = a * c;
    let ad = a * d;
    let top = p.abcd() * q.pow(ni - 1);
    let q_neg_n = q.pow(-ni);

    let mut sum = LaurentPoly::zero();
    // (az)_k (a/z)_k, extended one factor per step
    let mut w = LaurentPoly::one();
    for k in 0..=n {
        let coeff = q_pochhammer(&top, k, q)
            / (q_pochhammer(&ab, k, q) * q_pochhammer(&ac, k, q) * q_pochhammer(&ad, k, q))
            * q_pochhammer(&q_neg_n, k, q)
            * q.pow(i64::from(k))
            / q_pochhammer(q, k, q);
        sum = sum + w.scale(&coeff);
        // (1 - a q^k z)(1 - a q^k / z) = (1 + a^2 q^2k) - a q^k (z + 1/z)
        let aqk = a * q.pow(i64::from(k));
        let factor = LaurentPoly::from_terms([
            (0, Scalar::one() + &aqk * &aqk),
            (1, -&aqk),
            (-1, -&aqk),
        ]);
        w = w * factor;
    }
    let prefactor = q_pochhammer(&ab, n, q) * q_pochhammer(&ac, n, q) * q_pochhammer(&ad, n, q)
        / (a.pow(ni) * q_pochhammer(&top, n, q));
    sum.scale(&prefactor)
}

/// `z^k + z^-k`, or `1` for `k = 0`.
fn symmetric_monomial(k: i64) -> LaurentPoly {
    if k == 0 {
        LaurentPoly::one()
    } else {
        LaurentPoly::z_pow(k) + LaurentPoly::z_pow(-k)
    }
}

/// Matrix of `D` on `{1, z + 1/z, ..., z^n + z^-n}`, row-major, with
/// `m[i][j]` the coordinate of `D(m_j)` on `m_i`. Errors if `D` leaves the
/// span or is not upper triangular with diagonal `lambda_j`.
pub fn symmetric_d_matrix(n: u32, p: &ParamSet) -> Result<Vec<Vec<Scalar>>> {
    let size = n as usize + 1;
    let d = Hecke::new(p).d();
    let mut m = vec![vec![Scalar::zero(); size]; size];
    for j in 0..size {
        let image = d.apply(&symmetric_monomial(j as i64))?;
        let fail = |reason: String| Error::EigenSolve {
            n: i64::from(n),
            reason,
        };
        if !image.is_symmetric() {
            return Err(fail(format!("D(m_{j}) is not symmetric")));
        }
        if image.max_deg().is_some_and(|k| k > j as i64) {
            return Err(fail(format!("D(m_{j}) has degree above {j}")));
        }
        for (i, row) in m.iter_mut().enumerate().take(j + 1) {
            row[j] = image.coeff(i as i64);
        }
        if m[j][j] != lambda_n(j as i64, p) {
            return Err(fail(format!("diagonal entry {j} differs from lambda_{j}")));
        }
    }
    Ok(m)
}

/// Matrix of `Y` on the monomials `z^k` for positions `0..=last` in
/// [`OrderedBasisIndex`] order. Errors if `Y` is not triangular there or the
/// diagonal differs from `mu`.
pub fn y_matrix(last: usize, p: &ParamSet) -> Result<Vec<Vec<Scalar>>> {
    let size = last + 1;
    let y = Hecke::new(p).y();
    let mut m = vec![vec![Scalar::zero(); size]; size];
    for j in 0..size {
        let deg = OrderedBasisIndex::degree_at(j);
        let image = y.apply(&LaurentPoly::z_pow(deg))?;
        for (k, c) in image.terms() {
            let i = OrderedBasisIndex::position(k);
            if i > j {
                return Err(Error::EigenSolve {
                    n: deg,
                    reason: format!("Y(z^{deg}) has a term z^{k} beyond z^{deg} in basis order"),
                });
            }
            m[i][j] = c.clone();
        }
        if m[j][j] != mu_n(deg, p) {
            return Err(Error::EigenSolve {
                n: deg,
                reason: format!("diagonal entry for z^{deg} differs from mu_{deg}"),
            });
        }
    }
    Ok(m)
}

/// Eigenvector of the leading `size x size` block of `m` at `eigenvalue`,
/// normalized so coordinate `size - 1` is one.
fn leading_eigenvector(
    m: &[Vec<Scalar>],
    size: usize,
    eigenvalue: &Scalar,
    n: i64,
) -> Result<Vec<Scalar>> {
    let shifted: Vec<Vec<Scalar>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        &m[i][j] - eigenvalue
                    } else {
                        m[i][j].clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut ns = null_space(&shifted, size);
    if ns.len() != 1 {
        return Err(Error::EigenSolve {
            n,
            reason: format!("null space has dimension {}", ns.len()),
        });
    }
    let v = ns.pop().unwrap();
    let lead = v[size - 1].checked_recip().ok_or_else(|| Error::EigenSolve {
        n,
        reason: "eigenvector has zero leading coordinate".into(),
    })?;
    Ok(v.into_iter().map(|x| x * &lead).collect())
}

/// `P_n` as the normalized eigenvector of `D` with eigenvalue `lambda_n` on
/// symmetric Laurent polynomials of degree at most `n`. Independent of the
/// hypergeometric construction.
pub fn askey_wilson_P_oracle(n: u32, p: &ParamSet) -> Result<LaurentPoly> {
    check_horizon(i64::from(n), p)?;
    let m = symmetric_d_matrix(n, p)?;
    let v = leading_eigenvector(&m, n as usize + 1, &lambda_n(i64::from(n), p), i64::from(n))?;
    Ok(v.iter()
        .enumerate()
        .fold(LaurentPoly::zero(), |acc, (k, c)| {
            acc + symmetric_monomial(k as i64).scale(c)
        }))
}

/// Precomputed `Y` matrix for solving several `E_n` at one parameter point.
#[derive(Debug, Clone)]
pub struct NonsymmetricTable {
    matrix: Vec<Vec<Scalar>>,
    params: ParamSet,
}

impl NonsymmetricTable {
    /// Covers every `E_n` with `|n| <= reach`.
    pub fn new(reach: u32, p: &ParamSet) -> Result<Self> {
        check_horizon(i64::from(reach), p)?;
        let last = OrderedBasisIndex::position(i64::from(reach));
        Ok(NonsymmetricTable {
            matrix: y_matrix(last, p)?,
            params: p.clone(),
        })
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn e(&self, n: i64) -> Result<LaurentPoly> {
        check_horizon(n, &self.params)?;
        let size = OrderedBasisIndex::position(n) + 1;
        if size > self.matrix.len() {
            return Err(Error::OutOfRange {
                what: "the precomputed Y matrix",
                n,
            });
        }
        let v = leading_eigenvector(&self.matrix, size, &mu_n(n, &self.params), n)?;
        Ok(LaurentPoly::from_terms(
            v.into_iter()
                .enumerate()
                .map(|(i, c)| (OrderedBasisIndex::degree_at(i), c)),
        ))
    }
}

/// `E_n`, normalized to coefficient one at `z^n`, supported on monomials
/// `⪯ z^n`.
pub fn nonsymmetric_E(n: i64, p: &ParamSet) -> Result<LaurentPoly> {
    check_horizon(n, p)?;
    let table = NonsymmetricTable {
        matrix: y_matrix(OrderedBasisIndex::position(n), p)?,
        params: p.clone(),
    };
    table.e(n)
}

/// `(T1 + 1) f`, always symmetric.
pub fn symmetrize(f: &LaurentPoly, p: &ParamSet) -> Result<LaurentPoly> {
    Ok(apply_T1(f, p)? + f)
}

/// Extracts `c` from `(z + 1/z) P_n - P_(n+1) - alpha P_n = c P_(n-1)`.
/// The extraction fails unless the residual is a nonzero multiple of
/// `P_(n-1)`.
pub fn extract_recurrence_ratio(
    n: i64,
    prev: &LaurentPoly,
    cur: &LaurentPoly,
    next: &LaurentPoly,
    alpha: &Scalar,
) -> Result<Scalar> {
    let residual = LaurentPoly::z_plus_inv() * cur - next - cur.scale(alpha);
    match residual.proportional(prev) {
        Proportionality::Multiple(c) if !c.is_zero() => Ok(c),
        _ => Err(Error::Extraction { n, residual }),
    }
}

/// The ratio `gamma_(n-1) / gamma_n` read off the three-term recurrence.
/// Accepts `2 <= n <= n_max`; the top index uses `P_(n_max + 1)`, which the
/// genericity certificate still covers.
pub fn recurrence_ratio(n: u32, p: &ParamSet) -> Result<Scalar> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "the three-term recurrence (n >= 2)",
            n: i64::from(n),
        });
    }
    check_horizon(i64::from(n), p)?;
    extract_recurrence_ratio(
        i64::from(n),
        &build_p(n - 1, p),
        &build_p(n, p),
        &build_p(n + 1, p),
        &alpha_n(n, p),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::apply_Y;
    use crate::params::check_genericity;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn pi0() -> ParamSet {
        check_genericity(s(1, 2), s(1, 3), s(1, 5), s(1, 7), s(1, 11), 8).unwrap()
    }

    #[test]
    fn basis_order_positions() {
        let expected = [(0, 0), (-1, 1), (1, 2), (-2, 3), (2, 4), (-3, 5), (3, 6)];
        for (k, pos) in expected {
            assert_eq!(OrderedBasisIndex::position(k), pos);
            assert_eq!(OrderedBasisIndex::degree_at(pos), k);
        }
        for pos in 0..200 {
            assert_eq!(
                OrderedBasisIndex::position(OrderedBasisIndex::degree_at(pos)),
                pos
            );
        }
        assert!(OrderedBasisIndex::precedes_eq(-1, 1));
        assert!(!OrderedBasisIndex::precedes_eq(2, -2));
    }

    #[test]
    fn p0_and_p1() {
        let p = pi0();
        assert_eq!(askey_wilson_P(0, &p).unwrap(), LaurentPoly::one());
        let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
        let one = Scalar::one();
        let k = (&one - a * b) * (&one - a * c) * (&one - a * d) / (a * (&one - p.abcd()));
        let expected = LaurentPoly::z_plus_inv() + LaurentPoly::constant(k - a - a.recip());
        assert_eq!(askey_wilson_P(1, &p).unwrap(), expected);
    }

    #[test]
    fn p_is_monic_symmetric() {
        let p = pi0();
        for n in 0..=8u32 {
            let pn = askey_wilson_P(n, &p).unwrap();
            let ni = i64::from(n);
            assert!(pn.is_symmetric());
            assert_eq!(pn.coeff(ni), Scalar::one());
            assert_eq!(pn.min_deg(), Some(-ni));
            assert_eq!(pn.max_deg(), Some(ni));
        }
    }

    #[test]
    fn p_beyond_horizon_is_rejected() {
        let p = pi0();
        assert!(matches!(
            askey_wilson_P(9, &p),
            Err(Error::OutOfHorizon { n: 9, n_max: 8 })
        ));
        assert!(matches!(
            nonsymmetric_E(-9, &p),
            Err(Error::OutOfHorizon { .. })
        ));
    }

    #[test]
    fn oracle_agrees_with_sum() {
        let p = pi0();
        for n in 0..=8u32 {
            assert_eq!(
                askey_wilson_P_oracle(n, &p).unwrap(),
                askey_wilson_P(n, &p).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn d_matrix_is_triangular() {
        let p = pi0();
        let m = symmetric_d_matrix(5, &p).unwrap();
        for i in 0..6 {
            assert_eq!(m[i][i], lambda_n(i as i64, &p));
            for j in 0..i {
                assert!(m[i][j].is_zero());
            }
        }
    }

    #[test]
    fn y_matrix_is_triangular() {
        let p = pi0();
        let m = y_matrix(8, &p).unwrap();
        for j in 0..9 {
            assert_eq!(m[j][j], mu_n(OrderedBasisIndex::degree_at(j), &p));
            for i in j + 1..9 {
                assert!(m[i][j].is_zero());
            }
        }
    }

    #[test]
    fn e0_and_e_minus_one() {
        let p = pi0();
        assert_eq!(nonsymmetric_E(0, &p).unwrap(), LaurentPoly::one());
        // Independent 2x2 solve on {1, 1/z}: Y 1 = mu_0, Y(1/z) = y01 + y11/z.
        let y_inv = apply_Y(&LaurentPoly::z_pow(-1), &p).unwrap();
        let mu0 = mu_n(0, &p);
        let mu_m1 = mu_n(-1, &p);
        assert_eq!(y_inv.coeff(-1), mu_m1);
        // (Y - mu_-1)(1/z + c0) = 0 on the constant term:
        // y01 + c0 (mu0 - mu_-1) = 0
        let c0 = -y_inv.coeff(0) / (&mu0 - &mu_m1);
        let expected = LaurentPoly::z_pow(-1) + LaurentPoly::constant(c0);
        assert_eq!(nonsymmetric_E(-1, &p).unwrap(), expected);
    }

    #[test]
    fn e_eigen_and_support() {
        let p = pi0();
        let table = NonsymmetricTable::new(4, &p).unwrap();
        for n in -4..=4 {
            let e = table.e(n).unwrap();
            assert_eq!(e, nonsymmetric_E(n, &p).unwrap());
            assert_eq!(e.coeff(n), Scalar::one());
            assert!(e.terms().all(|(k, _)| OrderedBasisIndex::precedes_eq(k, n)));
            assert_eq!(apply_Y(&e, &p).unwrap(), e.scale(&mu_n(n, &p)));
        }
    }

    #[test]
    fn symmetrize_cases() {
        let p = pi0();
        assert_eq!(
            symmetrize(&LaurentPoly::one(), &p).unwrap(),
            LaurentPoly::constant(p.t1() + Scalar::one())
        );
        for n in [1i64, 2, 3] {
            for sign in [1, -1] {
                let e = nonsymmetric_E(sign * n, &p).unwrap();
                let sym = symmetrize(&e, &p).unwrap();
                let pn = askey_wilson_P(n as u32, &p).unwrap();
                assert!(sym.proportional(&pn).nonzero_multiple().is_some(), "n = {}", sign * n);
            }
        }
    }

    #[test]
    fn recurrence_ratio_range() {
        let p = pi0();
        assert!(matches!(
            recurrence_ratio(1, &p),
            Err(Error::OutOfRange { .. })
        ));
        for n in 2..=8 {
            let c = recurrence_ratio(n, &p).unwrap();
            assert!(!c.is_zero());
        }
        assert!(recurrence_ratio(9, &p).is_err());
    }

    #[test]
    fn perturbed_alpha_breaks_extraction() {
        let p = pi0();
        let n = 3u32;
        let bad = alpha_n(n, &p) + Scalar::one();
        let err = extract_recurrence_ratio(
            3,
            &build_p(2, &p),
            &build_p(3, &p),
            &build_p(4, &p),
            &bad,
        )
        .unwrap_err();
        match err {
            Error::Extraction { residual, .. } => assert!(!residual.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn p_is_parameter_permutation_invariant() {
        let p = pi0();
        let swapped = p.permuted([1, 0, 3, 2]).unwrap();
        let rotated = p.permuted([3, 2, 0, 1]).unwrap();
        for n in 0..=6 {
            let base = askey_wilson_P(n, &p).unwrap();
            assert_eq!(askey_wilson_P(n, &swapped).unwrap(), base);
            assert_eq!(askey_wilson_P(n, &rotated).unwrap(), base);
        }
    }
}
