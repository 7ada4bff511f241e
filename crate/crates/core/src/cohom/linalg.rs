use num_traits::{One, Zero};

use crate::scalars::GaussQ;

/// Dense matrix over Q(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussQ>,
}

/// Row echelon form with unit pivots, computed by exact elimination over
/// Q(i); `pivots[k]` is the pivot column of row `k`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub m: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![GaussQ::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<GaussQ>>) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussQ {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussQ) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GaussQ] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `[self | b]`.
    pub fn augment(&self, b: &[GaussQ]) -> Matrix {
        assert_eq!(b.len(), self.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            m.set(i, self.cols, b[i].clone());
        }
        m
    }

    pub fn mul_vec(&self, x: &[GaussQ]) -> Vec<GaussQ> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `y^T A`.
    pub fn left_mul_vec(&self, y: &[GaussQ]) -> Vec<GaussQ> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![GaussQ::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += &(yi * self.get(i, j));
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in r + 1..m.rows {
                let lead = m.get(i, c).clone();
                if lead.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if !rj.is_zero() {
                        let v = m.get(i, j) - &(&lead * rj);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Some `x` with `A x = b`, or the ranks `(rank A, rank [A|b])` when
    /// there is none.
    pub fn solve(&self, b: &[GaussQ]) -> Result<Vec<GaussQ>, (usize, usize)> {
        let ech = self.augment(b).echelon();
        if ech.pivots.last() == Some(&self.cols) {
            let rank_ab = ech.pivots.len();
            return Err((rank_ab - 1, rank_ab));
        }
        Ok(ech.back_substitute(self.cols, None))
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<GaussQ>> {
        let ech = self.echelon();
        (0..self.cols)
            .filter(|c| !ech.pivots.contains(c))
            .map(|f| ech.back_substitute(self.cols, Some(f)))
            .collect()
    }
}

impl Echelon {
    /// Back substitution over the first `n` columns. With `free = Some(f)`
    /// the homogeneous system is solved with `x_f = 1` and every other free
    /// variable 0; otherwise column `n` is the right-hand side and free
    /// variables are 0.
    fn back_substitute(&self, n: usize, free: Option<usize>) -> Vec<GaussQ> {
        let mut x = vec![GaussQ::zero(); n];
        if let Some(f) = free {
            x[f] = GaussQ::one();
        }
        for (k, &pc) in self.pivots.iter().enumerate().rev() {
            let row = self.m.row(k);
            let mut acc = if free.is_some() { GaussQ::zero() } else { row[n].clone() };
            for j in pc + 1..n {
                if !x[j].is_zero() {
                    acc -= &(&row[j] * &x[j]);
                }
            }
            x[pc] = acc.div(&row[pc]).expect("pivot is nonzero");
        }
        x
    }
}

pub fn dot(a: &[GaussQ], b: &[GaussQ]) -> GaussQ {
    let mut acc = GaussQ::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussQ {
        GaussQ::from_int(n)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn solve_and_kernel() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1), q(0)], vec![q(0), GaussQ::i(), q(1)]]);
        let b = vec![q(3), q(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inconsistent_system_reports_ranks() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert_eq!(m.solve(&[q(1), q(3)]), Err((1, 2)));
    }
}
