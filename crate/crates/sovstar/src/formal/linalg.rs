//! Exact linear algebra over Gaussian rationals and over jet rings, for the
//! small dense matrices this crate works with (at most (n+1) × (n+1)).

use super::jet::Jet;
use super::scalar::GaussianRational;
use crate::error::{Error, Result};

/// Gauss-Jordan inverse of a square matrix of Gaussian rationals.
pub fn invert_scalar_matrix(m: &[Vec<GaussianRational>]) -> Result<Vec<Vec<GaussianRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<GaussianRational>> = m.to_vec();
    let mut inv: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::NotInvertible)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&factor * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&factor * &inv[col][j]);
            }
        }
    }
    Ok(inv)
}

/// Exact kernel basis of a (possibly rectangular) matrix over the Gaussian
/// rationals. Returns one vector per free column after row reduction.
pub fn kernel_basis(m: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    if m.is_empty() {
        return Vec::new();
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<GaussianRational>> = m.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let p = a[r][c].inv().expect("nonzero pivot");
        for j in 0..cols {
            a[r][j] = &a[r][j] * &p;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    a[i][j] = &a[i][j] - &(&f * &a[r][j]);
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_cols: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().cloned().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![GaussianRational::zero(); cols];
        v[free] = GaussianRational::one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Constant terms of a jet matrix.
pub fn constant_part(m: &[Vec<Jet>]) -> Vec<Vec<GaussianRational>> {
    m.iter()
        .map(|row| row.iter().map(|j| j.constant_term()).collect())
        .collect()
}

/// Gauss-Jordan inverse over the jet ring. A pivot must have a nonzero
/// constant term; such a pivot exists at every step iff the constant matrix
/// is invertible.
pub fn invert_jet_matrix(m: &[Vec<Jet>]) -> Result<Vec<Vec<Jet>>> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    let dim = m[0][0].dim();
    let base = m[0][0].base().to_vec();
    let order = m
        .iter()
        .flat_map(|r| r.iter().map(|j| j.order()))
        .min()
        .unwrap();
    let mut a: Vec<Vec<Jet>> = m
        .iter()
        .map(|r| r.iter().map(|j| j.truncated(order)).collect())
        .collect();
    let mut inv: Vec<Vec<Jet>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Jet::one(dim, &base, order)
                    } else {
                        Jet::zero(dim, &base, order)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].constant_term().is_zero())
            .ok_or(Error::NotInvertible)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].checked_mul(&p)?;
            inv[col][j] = inv[col][j].checked_mul(&p)?;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].checked_sub(&factor.checked_mul(&a[col][j])?)?;
                inv[r][j] = inv[r][j].checked_sub(&factor.checked_mul(&inv[col][j])?)?;
            }
        }
    }
    Ok(inv)
}

/// Product of two square jet matrices.
pub fn jet_matmul(a: &[Vec<Jet>], b: &[Vec<Jet>]) -> Result<Vec<Vec<Jet>>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = a[i][0].checked_mul(&b[0][j])?;
            for k in 1..n {
                acc = acc.checked_add(&a[i][k].checked_mul(&b[k][j])?)?;
            }
            row.push(acc);
        }
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::multiindex::MultiIndex;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn scalar_inverse_2x2() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(3)]];
        let inv = invert_scalar_matrix(&m).unwrap();
        assert_eq!(inv, vec![vec![q(-3), q(2)], vec![q(2), q(-1)]]);
    }

    #[test]
    fn singular_scalar_matrix_rejected() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(matches!(invert_scalar_matrix(&m), Err(Error::NotInvertible)));
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let m = vec![
            vec![q(1), q(0), q(1)],
            vec![q(0), q(0), q(0)],
            vec![q(1), q(0), q(0)],
        ];
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![q(0), q(1), q(0)]]);
        let full = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert!(kernel_basis(&full).is_empty());
    }

    #[test]
    fn jet_matrix_inverse_roundtrip() {
        let base = vec![GaussianRational::zero()];
        let one = Jet::one(1, &base, 3);
        let z = Jet::from_terms(
            1,
            &base,
            3,
            vec![(MultiIndex(vec![1, 0]), GaussianRational::one())],
        );
        let two = Jet::constant(q(2), 1, &base, 3);
        // [[1, z],[z̄? use z again], [2]] -> pick an invertible constant part
        let m = vec![
            vec![one.clone(), z.clone()],
            vec![z.conj(), two.clone()],
        ];
        let inv = invert_jet_matrix(&m).unwrap();
        let prod = jet_matmul(&m, &inv).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j {
                    Jet::one(1, &base, 3)
                } else {
                    Jet::zero(1, &base, 3)
                };
                assert_eq!(prod[i][j], expect, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn jet_matrix_with_singular_constants_rejected() {
        let base = vec![GaussianRational::zero()];
        let z = Jet::from_terms(
            1,
            &base,
            3,
            vec![(MultiIndex(vec![1, 0]), GaussianRational::one())],
        );
        let m = vec![vec![z.clone()]];
        assert!(matches!(invert_jet_matrix(&m), Err(Error::NotInvertible)));
    }
}
