//! Exact linear algebra over the rationals.
//!
//! Everything here works on dense row-major matrices of small size. Ranks are
//! computed with fraction-free (Bareiss) elimination on integerized rows;
//! reduced row echelon forms and null spaces use plain rational elimination.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Scales a rational row by the lcm of its denominators.
///
/// The result is an integer row on the same positive ray; it is not reduced.
pub fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

/// Divides an integer row by the gcd of its entries. A zero row is returned
/// unchanged.
pub fn primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut row {
            *x /= &g;
        }
    }
    row
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rational(a: &[BigInt], x: &[Rational]) -> Rational {
    a.iter().zip(x).map(|(c, q)| q * c).fold(Rational::zero(), |acc, t| acc + t)
}

/// Rank of a rational matrix via fraction-free Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    integer_rank(&mut m)
}

/// Bareiss elimination in place; returns the rank.
pub fn integer_rank(m: &mut [Vec<BigInt>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..nrows {
            for j in (col + 1)..ncols {
                let num = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form with the list of pivot columns. Zero rows are
/// dropped, so `rows.len() == pivots.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

pub fn rref(input: &[Vec<Rational>], ncols: usize) -> Rref {
    let mut m: Vec<Vec<Rational>> = input.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in 0..m[i].len() {
                    let t = &factor * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Rref { rows: m, pivots }
}

/// Basis of `{ x : rows · x = 0 }`, one vector per free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let Rref { rows: red, pivots } = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let augmented: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let red = rref(&augmented, n);
    if red.pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(red.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn first_nonzero_is_negative(row: &[BigInt]) -> bool {
    row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&q(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&q(&[&[0, 1, 0], &[0, 0, 1], &[0, 1, 1]])), 2);
        assert_eq!(rank(&q(&[&[2, 0, 1], &[0, 3, 1], &[1, 1, 5]])), 3);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let rows = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), rational(1)]];
        assert_eq!(rank(&rows), 1);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = q(&[&[1, 1, 1, 1], &[1, -1, 0, 2]]);
        let ns = nullspace(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, q(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn primitive_rows() {
        let r = primitive(vec![BigInt::from(4), BigInt::from(-6), BigInt::from(0)]);
        assert_eq!(r, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
        assert_eq!(clear_denominators(&[ratio(1, 2), ratio(2, 3)]), vec![BigInt::from(3), BigInt::from(4)]);
    }

    proptest::proptest! {
        #[test]
        fn bareiss_rank_matches_rational_rref(
            entries in proptest::collection::vec(-3i64..=3, 12)
        ) {
            let rows: Vec<Vec<Rational>> = entries.chunks(4).map(|c| c.iter().map(|&x| rational(x)).collect()).collect();
            proptest::prop_assert_eq!(rank(&rows), rref(&rows, 4).pivots.len());
        }
    }
}
