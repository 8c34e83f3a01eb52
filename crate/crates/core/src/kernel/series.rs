use super::ratfunc::RationalFunction;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// First `terms` Taylor coefficients of `f` at `t = 0`.
pub fn series_expand(f: &RationalFunction, terms: usize) -> Result<Vec<ExactScalar>> {
    if f.is_zero() {
        return Ok(vec![ExactScalar::zero(); terms]);
    }
    let ord = f.order_at_zero().unwrap();
    if ord < 0 {
        return Err(Error::PoleAtZero);
    }
    // denominator has constant term 1, so division never needs an inverse
    let den: Vec<ExactScalar> = (0..terms as i64).map(|e| f.den().coeff(e)).collect();
    let mut out = vec![ExactScalar::zero(); terms];
    for k in 0..terms {
        let mut acc = f.num().coeff(k as i64);
        for j in 1..=k {
            if !den[j].is_zero() {
                acc = &acc - &(&den[j] * &out[k - j]);
            }
        }
        out[k] = acc;
    }
    Ok(out)
}

/// Given `s = 1 + s_1 t + …`, returns `L_1..L_terms` with
/// `s ≡ exp(Σ L_m t^m / m)` modulo `t^{terms+1}`.
pub fn log_coefficients(series: &[ExactScalar], terms: usize) -> Result<Vec<ExactScalar>> {
    let c0 = series.first().cloned().unwrap_or_else(ExactScalar::zero);
    if !c0.is_one() {
        return Err(Error::ConstantTermNotOne(c0.to_string()));
    }
    let s = |i: usize| series.get(i).cloned().unwrap_or_else(ExactScalar::zero);
    // t·s'/s = Σ L_m t^m, i.e. m·s_m = Σ_{j=1}^{m} L_j s_{m−j}
    let mut l: Vec<ExactScalar> = Vec::with_capacity(terms);
    for m in 1..=terms {
        let mut acc = &s(m) * &ExactScalar::from_i64(m as i64);
        for j in 1..m {
            acc = &acc - &(&l[j - 1] * &s(m - j));
        }
        l.push(acc);
    }
    Ok(l)
}

/// Inverse of [`log_coefficients`]: the series `exp(Σ L_m t^m / m)` to `terms + 1` coefficients.
pub fn exp_from_log_coefficients(l: &[ExactScalar], terms: usize) -> Vec<ExactScalar> {
    let mut s = vec![ExactScalar::one()];
    for m in 1..=terms {
        let mut acc = ExactScalar::zero();
        for j in 1..=m {
            if let Some(lj) = l.get(j - 1) {
                acc = &acc + &(lj * &s[m - j]);
            }
        }
        s.push(&acc / &ExactScalar::from_i64(m as i64));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::laurent::LaurentPolynomial;

    fn ints(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| ExactScalar::from_i64(x)).collect()
    }

    fn zeta_a211() -> RationalFunction {
        RationalFunction::new(
            LaurentPolynomial::from_i64s(&[(0, 1), (1, -3), (2, 1)]),
            LaurentPolynomial::from_i64s(&[(0, 1), (1, -2), (2, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn expansion_examples() {
        let geo = RationalFunction::new(LaurentPolynomial::one(), LaurentPolynomial::from_i64s(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(series_expand(&geo, 4).unwrap(), ints(&[1, 1, 1, 1]));
        // (1 - 3t + t^2)(1 + 2t + 3t^2 + ...) = 1 - t - 2t^2 + ...
        assert_eq!(series_expand(&zeta_a211(), 3).unwrap(), ints(&[1, -1, -2]));
        assert_eq!(series_expand(&RationalFunction::zero(), 3).unwrap(), ints(&[0, 0, 0]));
        let pole = RationalFunction::from_laurent(LaurentPolynomial::from_i64s(&[(-1, 1)]));
        assert_eq!(series_expand(&pole, 2), Err(Error::PoleAtZero));
    }

    #[test]
    fn log_examples() {
        let geo = RationalFunction::new(LaurentPolynomial::one(), LaurentPolynomial::from_i64s(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(log_coefficients(&series_expand(&geo, 4).unwrap(), 3).unwrap(), ints(&[1, 1, 1]));
        let s = series_expand(&zeta_a211(), 4).unwrap();
        assert_eq!(log_coefficients(&s, 3).unwrap(), ints(&[-1, -5, -16]));
        assert_eq!(log_coefficients(&ints(&[1]), 5).unwrap(), ints(&[0, 0, 0, 0, 0]));
        assert!(matches!(log_coefficients(&ints(&[2, 1]), 1), Err(Error::ConstantTermNotOne(_))));
    }

    #[test]
    fn exp_inverts_log() {
        let s = series_expand(&zeta_a211(), 9).unwrap();
        let l = log_coefficients(&s, 8).unwrap();
        assert_eq!(exp_from_log_coefficients(&l, 8), s);
    }
}
