//! Closed-form scalar quantities: q-Pochhammer products, the eigenvalues
//! `lambda_n` and `mu_n`, the recurrence coefficient `alpha_n`, the ladder
//! coefficient `beta_n` and the intertwiner shift `kappa_n`.

use crate::params::{raw_lambda, raw_mu, ParamSet};
use crate::scalar::Scalar;

/// `(x; q)_k = (1 - x)(1 - xq)...(1 - xq^(k-1))`, with the empty product 1.
pub fn q_pochhammer(x: &Scalar, k: u32, q: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &(Scalar::one() - &term);
        term *= q;
    }
    acc
}

/// Eigenvalue of the symmetric difference operator on `P_|n|`:
/// `(q^-|n| - 1)(1 - abcd q^(|n|-1))`. Even in `n`.
pub fn lambda_n(n: i64, p: &ParamSet) -> Scalar {
    raw_lambda(n, p.q(), p.abcd())
}

/// Eigenvalue of `Y = T1 T0` on `E_n`: `q^n` for `n < 0`, `q^(n-1) abcd`
/// otherwise.
pub fn mu_n(n: i64, p: &ParamSet) -> Scalar {
    raw_mu(n, p.q(), p.abcd())
}

/// `e1 = a + b + c + d`.
pub fn e1(p: &ParamSet) -> Scalar {
    p.a() + p.b() + p.c() + p.d()
}

/// `e3 = abc + abd + acd + bcd`.
pub fn e3(p: &ParamSet) -> Scalar {
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    a * b * c + a * b * d + a * c * d + b * c * d
}

/// Diagonal coefficient of the monic three-term recurrence.
pub fn alpha_n(n: u32, p: &ParamSet) -> Scalar {
    let (q, a, b, c, d) = (p.q(), p.a(), p.b(), p.c(), p.d());
    let n = i64::from(n);
    let one = Scalar::one();
    let lin = |x: Scalar| &one - x;
    let abcd = p.abcd();

    let qn1 = q.pow(n - 1);
    let qn = q.pow(n);
    let num1 = a
        * lin(b * c * &qn1)
        * lin(b * d * &qn1)
        * lin(c * d * &qn1)
        * lin(qn.clone());
    let den1 = q_pochhammer(&(abcd * q.pow(2 * n - 2)), 2, q);

    let num2 = lin(a * b * &qn) * lin(a * c * &qn) * lin(a * d * &qn) * lin(abcd * &qn1);
    let den2 = a * q_pochhammer(&(abcd * q.pow(2 * n - 1)), 2, q);

    a + a.recip() - num1 / den1 - num2 / den2
}

/// Constant term of the Hecke-algebra ladder operators, defined for all
/// integers `n`.
pub fn beta_n(n: i64, p: &ParamSet) -> Scalar {
    let one = Scalar::one();
    let mu_prev = mu_n(n - 1, p);
    let gap = &mu_prev - mu_n(-n, p);
    let coeff1 = (lambda_n(n, p) + &one - &mu_prev) / &gap;
    let coeff3 = (&one - &mu_prev) / &gap;
    coeff1 * e1(p) - coeff3 * e3(p)
}

/// `(mu_(n-1) (c+d) + t0 (a+b)) / (mu_(n-1) - mu_(-n))`.
pub fn kappa_n(n: i64, p: &ParamSet) -> Scalar {
    let x = p.a() + p.b();
    let y = p.c() + p.d();
    let mu_prev = mu_n(n - 1, p);
    let gap = &mu_prev - mu_n(-n, p);
    (&mu_prev * y + p.t0() * x) / gap
}
