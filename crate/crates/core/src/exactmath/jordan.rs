//! Additive Jordan–Chevalley decomposition over the rationals.

use super::matrix::RationalMatrix;
use super::MathError;

/// Splits `M = S + N` with `S` semisimple, `N` nilpotent, `SN = NS`.
///
/// Newton iteration on the squarefree part `s` of the characteristic
/// polynomial: `S ← S − s(S)·s'(S)⁻¹`. Every iterate is a polynomial in `M`
/// and the iteration stops once `s(S) = 0`, which takes at most
/// `⌈log₂ n⌉ + 1` steps.
pub fn jordan_chevalley(m: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix), MathError> {
    let n = m.rows();
    let chi = m.charpoly()?;
    let s = chi.squarefree_part();
    let ds = s.derivative();
    let mut semi = m.clone();
    let budget = usize::BITS as usize;
    for _ in 0..budget {
        let residual = semi.eval_poly(&s);
        if residual.is_zero() {
            let nil = m - &semi;
            return Ok((semi, nil));
        }
        // s' is coprime to s, hence s'(S) is invertible at every step
        let correction = &residual * &semi.eval_poly(&ds).inverse()?;
        semi = &semi - &correction;
    }
    Err(MathError::DimensionMismatch(format!(
        "Jordan–Chevalley iteration did not converge for a {n}×{n} matrix"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &RationalMatrix) -> (RationalMatrix, RationalMatrix) {
        let (s, nil) = jordan_chevalley(m).unwrap();
        assert_eq!(&s + &nil, *m);
        assert!(nil.is_nilpotent());
        assert!(s.commutes_with(&nil));
        let sq = s.charpoly().unwrap().squarefree_part();
        assert!(s.eval_poly(&sq).is_zero(), "S is not semisimple");
        (s, nil)
    }

    #[test]
    fn nilpotent_block() {
        let m = RationalMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let (s, nil) = check(&m);
        assert!(s.is_zero());
        assert_eq!(nil, m);
    }

    #[test]
    fn diagonal_is_semisimple() {
        let m = RationalMatrix::from_i64(&[&[3, 0], &[0, -1]]);
        let (s, nil) = check(&m);
        assert_eq!(s, m);
        assert!(nil.is_zero());
    }

    #[test]
    fn distinct_eigenvalues_upper_triangular() {
        // spectrum {1, 2} is simple, so M itself is semisimple
        let m = RationalMatrix::from_i64(&[&[1, 1], &[0, 2]]);
        let (s, nil) = check(&m);
        assert_eq!(s.charpoly().unwrap(), m.charpoly().unwrap());
        assert!(nil.is_zero());
    }

    #[test]
    fn jordan_block_plus_rotation() {
        // diag(J₂(1), rotation block)
        let m = RationalMatrix::from_i64(&[
            &[1, 1, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 0, -1],
            &[0, 0, 1, 0],
        ]);
        let (s, nil) = check(&m);
        assert_eq!(
            s,
            RationalMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
        );
        assert!(!nil.is_zero());
    }

    #[test]
    fn idempotent_on_semisimple_part() {
        let m = RationalMatrix::from_i64(&[&[2, 1, 3], &[0, 2, 1], &[0, 0, 5]]);
        let (s, _) = check(&m);
        let (s2, n2) = jordan_chevalley(&s).unwrap();
        assert_eq!(s2, s);
        assert!(n2.is_zero());
    }
}
