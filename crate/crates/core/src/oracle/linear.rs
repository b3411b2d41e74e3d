use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::hyperplane_set::HyperplaneSet;
use crate::lattice::{FlatId, IntersectionLattice};

type Matrix = Vec<Vec<BigRational>>;

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in &mut m[r] {
            *x = &*x * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{ x : row . x = 0 for every row }` in dimension `n`.
fn nullspace(rows: Matrix, n: usize) -> Matrix {
    let (m, pivots) = rref(rows);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank of the normals of `s` by rational Gaussian elimination.
pub fn naive_rank(a: &Arrangement, s: HyperplaneSet) -> usize {
    let rows: Matrix = s.iter().map(|h| to_rational(a.normal(h))).collect();
    rref(rows).1.len()
}

/// Whether `X + Y` is a flat for every flat `Y`, computed from explicit
/// bases of the subspaces.
pub fn naive_modular(l: &IntersectionLattice, x: FlatId) -> bool {
    let a = l.arrangement();
    let n = a.dim();
    let normals: Vec<Vec<BigRational>> = a.normals().iter().map(|v| to_rational(v)).collect();
    let subspace = |y: FlatId| {
        nullspace(
            l.hyperplanes(y).iter().map(|h| normals[h].clone()).collect(),
            n,
        )
    };
    let bx = subspace(x);
    (0..l.len()).all(|y| {
        let mut sum = bx.clone();
        sum.extend(subspace(y));
        let (basis, _) = rref(sum);
        // Hyperplanes containing the sum, and the dimension they cut out.
        let containing: Matrix = normals
            .iter()
            .filter(|nv| basis.iter().all(|b| dot(nv, b).is_zero()))
            .cloned()
            .collect();
        n - rref(containing).1.len() == basis.len()
    })
}
