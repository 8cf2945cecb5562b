//! Division-free characteristic polynomials and determinants.
//!
//! The production path is Berkowitz's algorithm, which uses only ring
//! additions and multiplications and is therefore sound over rings with zero
//! divisors such as `Z/4Z` or `(Z/4Z)[x, x⁻¹]`. The determinant is read off
//! the constant coefficient. `char_poly_by_minor_sums` is a second,
//! independent route (principal-minor sums, each minor expanded over column
//! subsets) kept for cross-checking.

use crate::error::{Error, Result};
use crate::polymat::{CharPoly, RingMatrix, UPoly};
use crate::ring::Ring;

/// Largest dimension accepted by the `2^n` minor-sum oracle.
pub const MINOR_SUM_MAX_DIM: usize = 12;

fn require_square<R: Ring>(a: &RingMatrix<R>) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", a.rows(), a.cols()),
        })
    }
}

/// `det(tI_n - A)` by Berkowitz's algorithm.
pub fn char_poly<R: Ring>(a: &RingMatrix<R>) -> Result<CharPoly<R>> {
    let n = require_square(a)?;
    let ctx = a.ctx().clone();
    // descending coefficients of the char poly of the trailing (n-k)x(n-k) block
    let mut desc: Vec<R> = vec![R::one(&ctx)];
    for k in (0..n).rev() {
        let s = n - k - 1;
        // Toeplitz column: 1, -a_kk, -R C, -R B C, ..., -R B^{s-1} C
        let mut toeplitz = Vec::with_capacity(s + 2);
        toeplitz.push(R::one(&ctx));
        toeplitz.push(a.get(k, k).negated());
        // v = B^j C, starting from C = column k below the diagonal
        let mut v: Vec<R> = (k + 1..n).map(|i| a.get(i, k).clone()).collect();
        for j in 0..s {
            let rc = (0..s).fold(R::zero(&ctx), |acc, idx| {
                let r = a.get(k, k + 1 + idx);
                if r.is_zero() || v[idx].is_zero() {
                    acc
                } else {
                    acc.plus(&r.times(&v[idx]))
                }
            });
            toeplitz.push(rc.negated());
            if j + 1 < s {
                v = (0..s)
                    .map(|row| {
                        (0..s).fold(R::zero(&ctx), |acc, col| {
                            let b = a.get(k + 1 + row, k + 1 + col);
                            if b.is_zero() || v[col].is_zero() {
                                acc
                            } else {
                                acc.plus(&b.times(&v[col]))
                            }
                        })
                    })
                    .collect();
            }
        }
        let next: Vec<R> = (0..s + 2)
            .map(|i| {
                (0..=i.min(s)).fold(R::zero(&ctx), |acc, j| {
                    let t = &toeplitz[i - j];
                    let q = &desc[j];
                    if t.is_zero() || q.is_zero() {
                        acc
                    } else {
                        acc.plus(&t.times(q))
                    }
                })
            })
            .collect();
        desc = next;
    }
    desc.reverse();
    CharPoly::new(desc)
}

/// Determinant as `(-1)^n a_0` of the characteristic polynomial.
pub fn determinant<R: Ring>(a: &RingMatrix<R>) -> Result<R> {
    let n = require_square(a)?;
    let chi = char_poly(a)?;
    let a0 = chi.coeff(0).clone();
    Ok(if n % 2 == 0 { a0 } else { a0.negated() })
}

/// Determinant by Laplace expansion over column subsets (`O(2^n n)` ring ops).
fn det_by_expansion<R: Ring>(a: &RingMatrix<R>) -> R {
    let n = a.rows();
    let ctx = a.ctx();
    // partial[mask] = signed sum over assignments of the first |mask| rows to the columns in mask
    let mut partial = vec![R::zero(ctx); 1 << n];
    partial[0] = R::one(ctx);
    for mask in 0usize..(1 << n) {
        if partial[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        let mut free_before = 0;
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let entry = a.get(row, col);
            if !entry.is_zero() {
                let mut term = partial[mask].times(entry);
                if free_before % 2 == 1 {
                    term = term.negated();
                }
                let next = mask | (1 << col);
                partial[next] = partial[next].plus(&term);
            }
            free_before += 1;
        }
    }
    partial[(1 << n) - 1].clone()
}

/// Characteristic polynomial via `a_k = (-1)^{n-k} Σ_{|P|=n-k} det(sub_P^P A)`.
///
/// Enumerates all `2^n` principal minors; only meant as an oracle.
pub fn char_poly_by_minor_sums<R: Ring>(a: &RingMatrix<R>) -> Result<CharPoly<R>> {
    let n = require_square(a)?;
    if n > MINOR_SUM_MAX_DIM {
        return Err(Error::BudgetExceeded(format!(
            "minor-sum expansion limited to n <= {MINOR_SUM_MAX_DIM}, got {n}"
        )));
    }
    let ctx = a.ctx().clone();
    let mut sums = vec![R::zero(&ctx); n + 1];
    for subset in 0usize..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| subset & (1 << i) != 0).collect();
        let minor = det_by_expansion(&a.principal_submatrix(&idx, &idx)?);
        let size = idx.len();
        sums[size] = sums[size].plus(&minor);
    }
    let coeffs = (0..=n)
        .map(|k| {
            let s = sums[n - k].clone();
            if (n - k) % 2 == 1 {
                s.negated()
            } else {
                s
            }
        })
        .collect();
    CharPoly::new(coeffs)
}

/// `det B` where `B` keeps the columns of `A` indexed by `subset` (0-based) and
/// takes the remaining columns from the identity.
pub fn column_replace_det<R: Ring>(a: &RingMatrix<R>, subset: &[usize]) -> Result<R> {
    let n = require_square(a)?;
    if let Some(&bad) = subset.iter().find(|&&j| j >= n) {
        return Err(Error::IndexOutOfRange { index: bad, dim: n });
    }
    let mut b = RingMatrix::identity(a.ctx().clone(), n);
    for &j in subset {
        for i in 0..n {
            b.set(i, j, a.get(i, j).clone());
        }
    }
    determinant(&b)
}

/// Whether `χ_A(A)` evaluates to the zero matrix.
pub fn cayley_hamilton_check<R: Ring>(a: &RingMatrix<R>) -> Result<bool> {
    let chi = char_poly(a)?;
    Ok(chi.to_poly().eval_matrix(a)?.is_zero())
}

/// Companion matrix in Frobenius normal form: ones on the superdiagonal and
/// `-a_0, …, -a_{n-1}` in the last row.
pub fn frobenius_companion<R: Ring>(chi: &UPoly<R>) -> Result<RingMatrix<R>> {
    if !chi.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = chi.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: "degree at least 1".into(),
            found: "0".into(),
        });
    }
    let ctx = chi.ctx().clone();
    let mut out = RingMatrix::zero(ctx.clone(), n, n);
    for i in 0..n - 1 {
        out.set(i, i + 1, R::one(&ctx));
    }
    for j in 0..n {
        out.set(n - 1, j, chi.coeff(j).negated());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::modring::Residue;

    fn lmat(m: u64, rows: &[&[&str]]) -> RingMatrix<LaurentPoly> {
        RingMatrix::from_rows(
            m,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| LaurentPoly::parse(s, m).unwrap())
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    fn rmat(m: u64, rows: &[&[i64]]) -> RingMatrix<Residue> {
        RingMatrix::from_rows(
            m,
            rows.iter()
                .map(|r| r.iter().map(|&v| Residue::new(v, m)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn values(chi: &CharPoly<Residue>) -> Vec<u64> {
        chi.coeffs().iter().map(Residue::value).collect()
    }

    #[test]
    fn unipotent_example_over_z4() {
        let a = lmat(4, &[&["1", "x"], &["0", "1"]]);
        let chi = char_poly(&a).unwrap();
        let expect: Vec<_> = [1, 2, 1]
            .iter()
            .map(|&c| LaurentPoly::constant(c, 4))
            .collect();
        assert_eq!(chi.coeffs(), &expect[..]);
        assert_eq!(determinant(&a).unwrap(), LaurentPoly::one(4));
        assert!(cayley_hamilton_check(&a).unwrap());
        let sq = a.pow(2).unwrap();
        assert_eq!(sq, lmat(4, &[&["1", "2x"], &["0", "1"]]));
    }

    #[test]
    fn small_char_polys() {
        assert_eq!(
            values(&char_poly(&RingMatrix::zero(5, 3, 3)).unwrap()),
            vec![0, 0, 0, 1]
        );
        // diag(a, b) -> t^2 - (a+b) t + ab
        let d = rmat(7, &[&[3, 0], &[0, 5]]);
        assert_eq!(
            values(&char_poly(&d).unwrap()),
            vec![15 % 7, (7 - 8 % 7), 1]
        );
        assert_eq!(
            determinant(&RingMatrix::<Residue>::identity(9, 3))
                .unwrap()
                .value(),
            1
        );
        let swap = lmat(2, &[&["0", "1"], &["x", "0"]]);
        assert_eq!(determinant(&swap).unwrap(), LaurentPoly::x(2));
    }

    #[test]
    fn general_3x3_matches_cofactor_formula() {
        let a = rmat(1000003, &[&[2, 7, 1], &[8, 2, 8], &[1, 8, 2]]);
        // det by the rule of Sarrus
        let det = 2 * (2 * 2 - 8 * 8) - 7 * (8 * 2 - 8) + (8 * 8 - 2);
        assert_eq!(determinant(&a).unwrap(), Residue::new(det, 1000003));
        assert_eq!(char_poly(&a).unwrap(), char_poly_by_minor_sums(&a).unwrap());
    }

    #[test]
    fn submatrix_examples() {
        // rows a, a', a'', a''' encoded as 10*row + column
        let a = rmat(
            1000,
            &(0..4)
                .map(|i| (0..4).map(|j| 10 * i + j).collect::<Vec<i64>>())
                .collect::<Vec<_>>()
                .iter()
                .map(Vec::as_slice)
                .collect::<Vec<_>>(),
        );
        let sub = a.principal_submatrix(&[1, 3], &[0, 3]).unwrap();
        assert_eq!(sub, rmat(1000, &[&[10, 13], &[30, 33]]));
        let all = [0, 1, 2, 3];
        assert_eq!(a.principal_submatrix(&all, &all).unwrap(), a);
        let empty = a.principal_submatrix(&[], &[]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
        assert_eq!(determinant(&empty).unwrap().value(), 1);
        assert_eq!(
            a.principal_submatrix(&[4], &[0]),
            Err(Error::IndexOutOfRange { index: 4, dim: 4 })
        );
    }

    #[test]
    fn column_replacement_examples() {
        let a = lmat(
            5,
            &[
                &["1", "x", "2", "3"],
                &["x^-1", "2", "x", "1"],
                &["4", "1", "x^2", "2"],
                &["3", "x", "1", "1 + x"],
            ],
        );
        assert_eq!(
            column_replace_det(&a, &[0, 1, 2, 3]).unwrap(),
            determinant(&a).unwrap()
        );
        assert_eq!(column_replace_det(&a, &[]).unwrap(), LaurentPoly::one(5));
        // P = {2, 4} in 1-based indexing: det [[b', d'], [b''', d''']]
        let expect = LaurentPoly::parse("2", 5)
            .unwrap()
            .times(&LaurentPoly::parse("1 + x", 5).unwrap())
            .minus(&LaurentPoly::parse("x", 5).unwrap());
        assert_eq!(column_replace_det(&a, &[1, 3]).unwrap(), expect);
    }

    #[test]
    fn minor_sum_edge_coefficients() {
        let a = lmat(
            6,
            &[&["x", "1", "2"], &["3", "x^-1", "1"], &["0", "5", "1 + x"]],
        );
        let chi = char_poly_by_minor_sums(&a).unwrap();
        assert!(chi.coeff(3).is_one());
        assert_eq!(chi.coeff(0).clone(), determinant(&a).unwrap().negated());
        assert_eq!(chi, char_poly(&a).unwrap());
        let big = RingMatrix::<Residue>::identity(7, 13);
        assert!(matches!(
            char_poly_by_minor_sums(&big),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn companion_examples() {
        let ctx = 4u64;
        let chi = UPoly::new(
            ctx,
            vec![Residue::new(1, 4), Residue::new(2, 4), Residue::new(1, 4)],
        );
        let comp = frobenius_companion(&chi).unwrap();
        assert_eq!(comp, rmat(4, &[&[0, 1], &[3, 2]]));
        assert_eq!(char_poly(&comp).unwrap().to_poly(), chi);
        let t = UPoly::monomial(Residue::new(1, 4), 1);
        assert_eq!(frobenius_companion(&t).unwrap(), rmat(4, &[&[0]]));
        let t3 = UPoly::monomial(Residue::new(1, 4), 3);
        let shift = frobenius_companion(&t3).unwrap();
        assert_eq!(shift, rmat(4, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]));
        assert!(shift.pow(3).unwrap().is_zero());
        let not_monic = UPoly::new(ctx, vec![Residue::new(1, 4), Residue::new(2, 4)]);
        assert_eq!(frobenius_companion(&not_monic), Err(Error::NotMonic));
    }

    #[test]
    fn cayley_hamilton_on_diagonal() {
        let d = rmat(12, &[&[5, 0, 0], &[0, 7, 0], &[0, 0, 11]]);
        assert!(cayley_hamilton_check(&d).unwrap());
    }
}
