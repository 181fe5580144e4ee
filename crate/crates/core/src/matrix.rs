//! Dense exact linear algebra over the rationals: solving, determinants
//! and tolerance-free classification of symmetric forms.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Exact classification of a symmetric bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    Zero,
    NegativeDefinite,
    NegativeSemidefinite,
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Usage(format!(
                "matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Usage("ragged matrix rows".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let n = idx.len();
        let mut m = Self::zeros(n, n);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                *m.at_mut(a, b) = self.at(i, j).clone();
            }
        }
        m
    }

    /// m · v
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Usage(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect())
    }

    /// vᵀ · m · w
    pub fn pair(&self, v: &[Rat], w: &[Rat]) -> Result<Rat> {
        let mw = self.mul_vec(w)?;
        if v.len() != self.rows {
            return Err(Error::Usage("vector length mismatch".into()));
        }
        Ok(v.iter().zip(mw.iter()).map(|(a, b)| a * b).sum())
    }

    /// Exact solution of m·x = b by Gaussian elimination with exact
    /// pivoting; `Err(Singular)` when m is not invertible.
    pub fn solve_linear(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        if !self.is_square() {
            return Err(Error::Usage("solve_linear requires a square matrix".into()));
        }
        let n = self.rows;
        if b.len() != n {
            return Err(Error::Usage(format!(
                "right-hand side length {} does not match dimension {n}",
                b.len()
            )));
        }
        let mut a = self.entries.clone();
        let mut rhs = b.to_vec();
        let at = |a: &Vec<Rat>, i: usize, j: usize| a[i * n + j].clone();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !a[r * n + col].is_zero()) {
                Some(r) => r,
                None => return Err(Error::Singular),
            };
            if pivot_row != col {
                for j in 0..n {
                    a.swap(pivot_row * n + j, col * n + j);
                }
                rhs.swap(pivot_row, col);
            }
            let pivot = at(&a, col, col);
            for r in (col + 1)..n {
                let factor = &at(&a, r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &factor * &at(&a, col, j);
                    a[r * n + j] = &a[r * n + j] - &sub;
                }
                let sub = &factor * &rhs[col];
                rhs[r] = &rhs[r] - &sub;
            }
        }
        let mut x = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in (i + 1)..n {
                acc -= &at(&a, i, j) * &x[j];
            }
            x[i] = &acc / &at(&a, i, i);
        }
        Ok(x)
    }

    pub fn determinant(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::Usage("determinant requires a square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !a[r * n + col].is_zero()) {
                Some(r) => r,
                None => return Ok(Rat::zero()),
            };
            if pivot_row != col {
                for j in 0..n {
                    a.swap(pivot_row * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in (col + 1)..n {
                let factor = &a[r * n + col] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &factor * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &sub;
                }
            }
        }
        Ok(det)
    }

    /// Classifies a symmetric matrix by recursive symmetric elimination.
    /// Congruence preserves signature, so pivoting on a nonzero diagonal
    /// entry and passing to the Schur complement is exact; a zero diagonal
    /// with a nonzero off-diagonal entry contributes a hyperbolic plane.
    pub fn definiteness(&self) -> Result<Definiteness> {
        if !self.is_symmetric() {
            return Err(Error::Usage("definiteness requires a symmetric matrix".into()));
        }
        let (pos, neg, zero) = self.signature_counts();
        Ok(match (pos > 0, neg > 0, zero > 0) {
            (false, false, _) => Definiteness::Zero,
            (true, true, _) => Definiteness::Indefinite,
            (false, true, false) => Definiteness::NegativeDefinite,
            (false, true, true) => Definiteness::NegativeSemidefinite,
            (true, false, false) => Definiteness::PositiveDefinite,
            (true, false, true) => Definiteness::PositiveSemidefinite,
        })
    }

    /// (n_plus, n_minus, n_zero) of the symmetric form.
    pub fn signature_counts(&self) -> (usize, usize, usize) {
        let mut m = self.clone();
        let mut pos = 0usize;
        let mut neg = 0usize;
        let zero = 0usize;
        loop {
            let n = m.rows;
            if n == 0 {
                return (pos, neg, zero);
            }
            if let Some(p) = (0..n).find(|&i| !m.at(i, i).is_zero()) {
                let d = m.at(p, p).clone();
                if d.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
                let mut next = RationalMatrix::zeros(rest.len(), rest.len());
                for (a, &i) in rest.iter().enumerate() {
                    for (b, &j) in rest.iter().enumerate() {
                        let corr = &(m.at(i, p) * m.at(p, j)) / &d;
                        *next.at_mut(a, b) = m.at(i, j) - &corr;
                    }
                }
                m = next;
            } else {
                let mut found = None;
                'scan: for i in 0..n {
                    for j in 0..n {
                        if !m.at(i, j).is_zero() {
                            found = Some((i, j));
                            break 'scan;
                        }
                    }
                }
                match found {
                    None => return (pos, neg, zero + n),
                    Some((i, j)) => {
                        // zero diagonal, m[i][j] != 0: the congruence
                        // e_i <- e_i + e_j makes the diagonal entry 2·m[i][j]
                        for k in 0..n {
                            let add = m.at(j, k).clone();
                            *m.at_mut(i, k) += add;
                        }
                        for k in 0..n {
                            let add = m.at(k, j).clone();
                            *m.at_mut(k, i) += add;
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn solve_one_by_one() {
        let x = m(&[vec![-2]]).solve_linear(&[int(-1)]).unwrap();
        assert_eq!(x, vec![rat(1, 2)]);
    }

    #[test]
    fn solve_a2_system() {
        // verified by substitution: m·x = b
        let a = m(&[vec![-2, 1], vec![1, -2]]);
        let b = vec![int(1), int(0)];
        let x = a.solve_linear(&b).unwrap();
        assert_eq!(x, vec![rat(-2, 3), rat(-1, 3)]);
        assert_eq!(a.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn solve_singular() {
        let a = m(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(a.solve_linear(&[int(1), int(0)]), Err(Error::Singular));
    }

    #[test]
    fn solve_shape_errors() {
        let a = m(&[vec![1, 2]]);
        assert!(matches!(a.solve_linear(&[int(1)]), Err(Error::Usage(_))));
        let b = m(&[vec![1]]);
        assert!(matches!(b.solve_linear(&[int(1), int(2)]), Err(Error::Usage(_))));
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[vec![-2]]).determinant().unwrap(), int(-2));
        assert_eq!(m(&[vec![-2, 1], vec![1, -2]]).determinant().unwrap(), int(3));
        assert_eq!(RationalMatrix::identity(3).determinant().unwrap(), int(1));
    }

    #[test]
    fn determinant_block_diagonal_multiplies() {
        let a = m(&[vec![-2, 1, 0], vec![1, -2, 0], vec![0, 0, -3]]);
        let d1 = m(&[vec![-2, 1], vec![1, -2]]).determinant().unwrap();
        let d2 = m(&[vec![-3]]).determinant().unwrap();
        assert_eq!(a.determinant().unwrap(), d1 * d2);
    }

    #[test]
    fn definiteness_classification() {
        assert_eq!(m(&[vec![-2]]).definiteness().unwrap(), Definiteness::NegativeDefinite);
        assert_eq!(
            m(&[vec![-2, 1], vec![1, -2]]).definiteness().unwrap(),
            Definiteness::NegativeDefinite
        );
        assert_eq!(
            m(&[vec![-2, 1], vec![1, 0]]).definiteness().unwrap(),
            Definiteness::Indefinite
        );
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).definiteness().unwrap(), Definiteness::Indefinite);
        assert_eq!(m(&[vec![0, 0], vec![0, 0]]).definiteness().unwrap(), Definiteness::Zero);
        assert_eq!(
            m(&[vec![1, 1], vec![1, 1]]).definiteness().unwrap(),
            Definiteness::PositiveSemidefinite
        );
        assert_eq!(
            m(&[vec![-1, 1], vec![1, -1]]).definiteness().unwrap(),
            Definiteness::NegativeSemidefinite
        );
        assert_eq!(RationalMatrix::identity(2).definiteness().unwrap(), Definiteness::PositiveDefinite);
        assert!(m(&[vec![0, 1], vec![2, 0]]).definiteness().is_err());
    }

    /// Brute-force sign probes must never contradict the classification.
    #[test]
    fn definiteness_agrees_with_probes() {
        let cases = vec![
            m(&[vec![-2, 1], vec![1, -2]]),
            m(&[vec![-2, 1], vec![1, 0]]),
            m(&[vec![1, 1], vec![1, 1]]),
            m(&[vec![0, 0], vec![0, 0]]),
            m(&[vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]),
            m(&[vec![2, 0, 0, 0], vec![0, -1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]),
        ];
        let probe_coords: Vec<Rat> =
            vec![int(-2), int(-1), rat(-1, 2), int(0), rat(1, 3), int(1), int(2)];
        for mat in cases {
            let class = mat.definiteness().unwrap();
            let n = mat.rows();
            let mut probes: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n]];
            for i in 0..n {
                for c in &probe_coords {
                    for base in [None, Some(i.saturating_sub(1))] {
                        let mut v = vec![Rat::zero(); n];
                        v[i] = c.clone();
                        if let Some(b) = base {
                            v[b] = &v[b] + &int(1);
                        }
                        probes.push(v);
                    }
                }
            }
            for v in probes {
                let q = mat.pair(&v, &v).unwrap();
                match class {
                    Definiteness::NegativeDefinite | Definiteness::NegativeSemidefinite => {
                        assert!(!q.is_positive())
                    }
                    Definiteness::PositiveDefinite | Definiteness::PositiveSemidefinite => {
                        assert!(!q.is_negative())
                    }
                    Definiteness::Zero => assert!(q.is_zero()),
                    Definiteness::Indefinite => {}
                }
            }
        }
    }
}
