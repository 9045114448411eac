use crate::error::{Error, Result};
use crate::rings::Ring;

pub const MAX_DET_DIM: usize = 12;

/// Exact determinant of a square matrix over any [`Ring`].
///
/// Integer matrices of dimension 7 to 12 use fraction-free Bareiss
/// elimination; everything else uses cofactor expansion along rows with the
/// minors over each column subset shared, which needs `m·2^(m−1)` products
/// and no division.
pub fn det_exact<R: Ring>(matrix: &[Vec<R>]) -> Result<R> {
    let m = matrix.len();
    if m == 0 {
        return Err(Error::NotSquare("empty matrix".into()));
    }
    if let Some((i, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != m) {
        return Err(Error::NotSquare(format!(
            "row {i} has {} entries in a {m}-row matrix",
            row.len()
        )));
    }
    if m > MAX_DET_DIM {
        return Err(Error::TooLarge(format!(
            "determinant of dimension {m} exceeds {MAX_DET_DIM}"
        )));
    }
    let tag = matrix[0][0].tag();
    if matrix.iter().flatten().any(|x| x.tag() != tag) {
        return Err(Error::RingMismatch(
            "matrix entries from different rings".into(),
        ));
    }
    if R::FRACTION_FREE_DET && m >= 7 {
        Ok(bareiss(matrix))
    } else {
        Ok(cofactor(matrix))
    }
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn cofactor<R: Ring>(matrix: &[Vec<R>]) -> R {
    let m = matrix.len();
    let one = matrix[0][0].one_like();
    // minors[mask] = det of the bottom popcount(mask) rows restricted to the
    // columns in mask
    let mut minors: Vec<Option<R>> = vec![None; 1 << m];
    minors[0] = Some(one);
    for size in 1..=m {
        let row = &matrix[m - size];
        for mask in 0usize..(1 << m) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = row[0].zero_like();
            for (pos, col) in (0..m).filter(|c| mask & (1 << c) != 0).enumerate() {
                let entry = &row[col];
                if entry.vanishes() {
                    continue;
                }
                let sub = minors[mask & !(1 << col)]
                    .as_ref()
                    .expect("computed at previous size");
                if sub.vanishes() {
                    continue;
                }
                let term = entry.times(sub);
                acc = if pos % 2 == 0 {
                    acc.plus(&term)
                } else {
                    acc.minus(&term)
                };
            }
            minors[mask] = Some(acc);
        }
        // free the minors two sizes down
        if size >= 2 {
            for mask in 0usize..(1 << m) {
                if mask.count_ones() as usize == size - 2 {
                    minors[mask] = None;
                }
            }
        }
    }
    minors[(1 << m) - 1].take().expect("full minor")
}

pub(crate) fn bareiss<R: Ring>(matrix: &[Vec<R>]) -> R {
    let m = matrix.len();
    let mut a: Vec<Vec<R>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = a[0][0].one_like();
    for k in 0..m - 1 {
        if a[k][k].vanishes() {
            match (k + 1..m).find(|&i| !a[i][k].vanishes()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return a[0][0].zero_like(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let num = a[i][j].times(&a[k][k]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[m - 1][m - 1].clone();
    if negate {
        det.negate()
    } else {
        det
    }
}
