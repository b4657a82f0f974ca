use super::{Field, Polynomial};

/// Determinant of a non-empty square matrix by fraction-free (Bareiss)
/// elimination.
pub fn determinant<C: Field>(mut m: Vec<Vec<Polynomial<C>>>) -> Polynomial<C> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square non-empty matrix");
    let ctx = m[0][0].ctx().clone();
    let mut negate = false;
    let mut prev = Polynomial::one(&ctx);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Polynomial::zero(&ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, VarContext};

    #[test]
    fn symbolic_two_by_two_and_pivoting() {
        let c = VarContext::new(&["a", "b", "c", "d"]).unwrap();
        let v = |s: &str| Poly::parse(&c, s).unwrap();
        assert_eq!(determinant(vec![vec![v("a"), v("b")], vec![v("c"), v("d")]]), v("a*d - b*c"));
        let m = vec![
            vec![v("0"), v("1"), v("0")],
            vec![v("1"), v("0"), v("0")],
            vec![v("0"), v("0"), v("a")],
        ];
        assert_eq!(determinant(m), v("-a"));
    }
}
