//! Small exact linear algebra over `BigRational`: dot products, Gaussian
//! elimination, and null space bases.  Everything here is deterministic; no
//! pivoting heuristics beyond "first nonzero entry".

use crate::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Vector = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(n: usize) -> Vector {
    vec![Rat::zero(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Rat]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Solve the square system `m x = rhs`.  Returns `None` when `m` is singular.
pub fn solve(m: &[Vector], rhs: &[Rat]) -> Option<Vector> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n) && rhs.len() == n);
    let mut a: Vec<Vector> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col].clone();
                for c in col..=n {
                    let t = &a[col][c] * &f;
                    a[row][c] = &a[row][c] - &t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Basis of `{x : m x = 0}` for a rectangular matrix, via reduced row echelon
/// form.  Basis vectors are normalized to primitive integer entries with a
/// positive leading entry and emitted in order of their free column.
pub fn nullspace(m: &[Vector], n_cols: usize) -> Vec<Vector> {
    let mut a: Vec<Vector> = m.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0;
    for col in 0..n_cols {
        if let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) {
            a.swap(row, p);
            let inv = a[row][col].recip();
            for x in a[row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..a.len() {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..n_cols {
                        let t = &a[row][c] * &f;
                        a[r][c] = &a[r][c] - &t;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == a.len() {
                break;
            }
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..n_cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = zeros(n_cols);
        v[free] = Rat::one();
        for &(r, c) in &pivots {
            v[c] = -&a[r][free];
        }
        basis.push(primitive(&v));
    }
    basis
}

/// Scale a rational vector to coprime integer entries, first nonzero positive.
pub fn primitive(v: &[Rat]) -> Vector {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = num_integer::gcd(gcd, i.clone());
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|i| !i.is_zero())
        .map(|i| if i.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    let gcd = gcd * BigInt::from(sign);
    ints.into_iter().map(|i| Rat::from_integer(i / &gcd)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_2x2() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let x = solve(&m, &[rat(5), rat(10)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(3)]);
    }

    #[test]
    fn singular_detected() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(solve(&m, &[rat(1), rat(2)]).is_none());
    }

    #[test]
    fn nullspace_line() {
        // x + y + z = 0, x - z = 0  =>  span{(1, -2, 1)}
        let m = vec![vec![rat(1), rat(1), rat(1)], vec![rat(1), rat(0), rat(-1)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns, vec![vec![rat(1), rat(-2), rat(1)]]);
    }

    #[test]
    fn primitive_normalizes_sign_and_denominators() {
        let v = vec![ratio(-3, 4), ratio(3, 2), rat(0)];
        assert_eq!(primitive(&v), vec![rat(1), rat(-2), rat(0)]);
    }
}
