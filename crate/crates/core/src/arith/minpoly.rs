use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NumberFieldElement;
use crate::poly::Polynomial;
use crate::scalar::Ring;

/// Monic minimal polynomial over ℚ: the squarefree part of the characteristic
/// polynomial of multiplication by `beta`.
pub fn minimal_polynomial_of(beta: &NumberFieldElement) -> Polynomial<BigRational> {
    let field = match (beta.as_rational(), beta.field()) {
        (Some(q), _) => {
            return Polynomial::from_coeffs(vec![-q, BigRational::one()]);
        }
        (None, Some(f)) => f.clone(),
        (None, None) => unreachable!("irrational element carries a field"),
    };
    let d = field.degree();
    // column j = coordinates of beta * t^j
    let mut cols = Vec::with_capacity(d);
    let mut power = NumberFieldElement::integer(1).in_field(&field);
    let t = NumberFieldElement::generator(&field);
    for _ in 0..d {
        cols.push(beta.mul_ref(&power).coords_padded(d));
        power = power.mul_ref(&t);
    }
    let a: Vec<Vec<BigRational>> = (0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect();
    charpoly(&a).squarefree_part()
}

/// Faddeev–LeVerrier.
pub(crate) fn charpoly(a: &[Vec<BigRational>]) -> Polynomial<BigRational> {
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = matmul(a, &m);
        let trace: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigRational::from_integer(k.into());
    }
    Polynomial::from_coeffs(coeffs)
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDescriptor;
    use crate::scalar::Field;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        assert_eq!(
            minimal_polynomial_of(&NumberFieldElement::integer(3)),
            Polynomial::from_i64s(&[-3, 1])
        );
        let gi = FieldDescriptor::from_integer_poly("t", &Polynomial::from_i64s(&[1, 0, 1])).unwrap();
        assert_eq!(
            minimal_polynomial_of(&NumberFieldElement::generator(&gi)),
            Polynomial::from_i64s(&[1, 0, 1])
        );
        let k5 = FieldDescriptor::from_integer_poly("t", &Polynomial::from_i64s(&[-5, 0, 1])).unwrap();
        let golden = NumberFieldElement::from_coords(&k5, vec![q(1, 2), q(1, 2)]);
        assert_eq!(minimal_polynomial_of(&golden), Polynomial::from_i64s(&[-1, -1, 1]));
        assert!(golden.is_algebraic_integer());
        assert!(!NumberFieldElement::rational(q(1, 2)).is_algebraic_integer());
        assert!(NumberFieldElement::integer(7).is_algebraic_integer());
    }

    #[test]
    fn subfield_element_has_smaller_degree() {
        // t² in ℚ(t)/(t⁴+1) is i
        let k8 = FieldDescriptor::from_integer_poly("t", &Polynomial::from_i64s(&[1, 0, 0, 0, 1])).unwrap();
        let t = NumberFieldElement::generator(&k8);
        assert_eq!(minimal_polynomial_of(&t.mul_ref(&t)), Polynomial::from_i64s(&[1, 0, 1]));
    }
}
