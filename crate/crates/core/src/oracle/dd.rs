//! Double description method for pointed polyhedral cones.

use num::{BigInt, Signed, Zero};

use crate::linalg::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

fn combine(p: &Ray, sp: &BigInt, n: &Ray, sn: &BigInt) -> Vec<BigInt> {
    // sp > 0 > sn; the result is tight on the new row
    let v = p.v.iter().zip(&n.v).map(|(a, b)| a * (-sn) + b * sp).collect();
    linalg::primitive(v)
}

/// Greedily picks linearly independent rows, in order.
fn independent_rows(rows: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, _) in rows.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        let mut m: Vec<Vec<BigInt>> = chosen.iter().chain([&i]).map(|&k| rows[k].clone()).collect();
        if linalg::integer_rank(&mut m) == chosen.len() + 1 {
            chosen.push(i);
        }
    }
    chosen
}

/// Extreme rays of `{ z : rows · z >= 0 }`, each primitive.
///
/// The rows must have rank `dim` (the number of columns), which makes the
/// cone pointed. Output order follows the order in which rays are found.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let basis = independent_rows(rows, dim);
    assert_eq!(basis.len(), dim, "constraint rows must have full column rank");

    let b: Vec<Vec<Rational>> =
        basis.iter().map(|&i| rows[i].iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let inv = linalg::inverse(&b).expect("independent rows");

    let mut processed = vec![false; m];
    for &i in &basis {
        processed[i] = true;
    }
    let zeros_of = |v: &[BigInt], processed: &[bool]| {
        let mut z = Bits::new(m);
        for (i, r) in rows.iter().enumerate() {
            if processed[i] && linalg::dot(r, v).is_zero() {
                z.set(i);
            }
        }
        z
    };

    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<Rational> = inv.iter().map(|r| r[j].clone()).collect();
            let v = linalg::primitive(linalg::clear_denominators(&col));
            let zeros = zeros_of(&v, &processed);
            Ray { v, zeros }
        })
        .collect();

    for k in 0..m {
        if processed[k] {
            continue;
        }
        let slack: Vec<BigInt> = rays.iter().map(|r| linalg::dot(&rows[k], &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| slack[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| slack[i].is_negative()).collect();

        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let blocked =
                    rays.iter().enumerate().any(|(r, ray)| r != p && r != n && ray.zeros.contains_all(&common));
                if blocked {
                    continue;
                }
                let v = combine(&rays[p], &slack[p], &rays[n], &slack[n]);
                let mut zeros = common;
                zeros.set(k);
                fresh.push(Ray { v, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if slack[i].is_negative() {
                continue;
            }
            if slack[i].is_zero() {
                r.zeros.set(k);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
        processed[k] = true;
    }
    rays.into_iter().map(|r| r.v).collect()
}
