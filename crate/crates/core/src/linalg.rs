//! Fraction-free row echelon form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Divides out the content and makes the first nonzero entry positive.
/// Returns `None` for the zero vector.
pub fn primitive(mut v: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let first = v.iter().position(|x| !x.is_zero())?;
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let sign_flip = v[first].is_negative();
    for x in &mut v {
        *x = &*x / &g;
        if sign_flip {
            *x = -&*x;
        }
    }
    Some(v)
}

/// An integer row space kept in echelon form. Rows are primitive and have
/// distinct pivot columns.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot of the space from `v` by integer cross
    /// multiplication. The result is zero iff `v` lies in the span.
    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let a = row[*pivot].clone();
            let b = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &a - r * &b;
            }
            if let Some(p) = primitive(v.clone()) {
                v = p;
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pivot) => {
                let row = primitive(r).expect("nonzero after reduction");
                self.rows.push((pivot, row));
                true
            }
        }
    }
}

/// Rank of a list of integer vectors.
pub fn rank<'a>(vectors: impl IntoIterator<Item = &'a Vec<BigInt>>) -> usize {
    let mut space = RowSpace::new();
    for v in vectors {
        space.insert(v);
    }
    space.rank()
}

pub(crate) fn unit_vector_difference(n: usize, i: usize, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i - 1] = BigInt::one();
    v[j - 1] = -BigInt::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitive_form() {
        assert_eq!(primitive(ints(&[0, -4, 6])), Some(ints(&[0, 2, -3])));
        assert_eq!(primitive(ints(&[0, 0])), None);
    }

    #[test]
    fn rank_and_membership() {
        let rows = [ints(&[1, -1, 0]), ints(&[0, 1, -1]), ints(&[1, 0, -1])];
        assert_eq!(rank(rows.iter()), 2);
        let mut s = RowSpace::new();
        s.insert(&rows[0]);
        assert!(!s.contains(&rows[2]));
        s.insert(&rows[1]);
        assert!(s.contains(&rows[2]));
        assert!(s.contains(&ints(&[3, -5, 2])));
        assert!(!s.contains(&ints(&[1, 1, 1])));
    }
}
