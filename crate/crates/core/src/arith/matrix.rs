//! Linear algebra over the fraction field, by fraction-free (Bareiss) elimination.

use super::gcd::lcm;
use super::mpoly::MPoly;
use super::ratfunc::RatFunc;

/// Rectangular matrix of rational functions.
#[derive(Clone, Debug, PartialEq)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

/// Outcome of [`ff_solve`].
#[derive(Clone, Debug, PartialEq)]
pub enum SolveResult {
    Unique(Vec<RatFunc>),
    /// Consistent and underdetermined: a particular solution plus a nullspace basis.
    Space { particular: Vec<RatFunc>, nullspace: Vec<Vec<RatFunc>> },
    Inconsistent,
}

impl FFMatrix {
    pub fn zeros(rows: usize, cols: usize) -> FFMatrix {
        FFMatrix { rows, cols, data: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> FFMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        FFMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> FFMatrix {
        let mut m = FFMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, z: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(z.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(z)
                    .fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<RatFunc>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut m = clear_rows(&rows);
        echelon(&mut m, self.cols).len()
    }
}

/// Multiplies each row by the lcm of its denominators.
fn clear_rows(rows: &[Vec<RatFunc>]) -> Vec<Vec<MPoly>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .filter(|r| !r.is_zero())
                .fold(MPoly::one(), |acc, r| lcm(&acc, r.den()));
            row.iter()
                .map(|r| {
                    if r.is_zero() {
                        MPoly::zero()
                    } else {
                        &r.num().clone() * &l.div_exact(r.den()).unwrap()
                    }
                })
                .collect()
        })
        .collect()
}

/// Bareiss elimination on the first `pivot_cols` columns; returns the pivot columns.
fn echelon(m: &mut [Vec<MPoly>], pivot_cols: usize) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = MPoly::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        // Smallest nonzero pivot keeps intermediate sizes down.
        let Some(p) = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].len())
        else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = MPoly::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A z = b` over the fraction field.
pub fn ff_solve(a: &FFMatrix, b: &[RatFunc]) -> SolveResult {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let rows: Vec<Vec<RatFunc>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut m = clear_rows(&rows);
    let pivots = echelon(&mut m, n);
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[n].is_zero()) {
        return SolveResult::Inconsistent;
    }
    let back = |rhs: &dyn Fn(usize) -> RatFunc, free: &[RatFunc]| -> Vec<RatFunc> {
        let mut z = vec![RatFunc::zero(); n];
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        for (k, &c) in free_cols.iter().enumerate() {
            z[c] = free[k].clone();
        }
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut acc = rhs(r);
            for j in c + 1..n {
                if !m[r][j].is_zero() && !z[j].is_zero() {
                    acc = &acc - &(&RatFunc::from(m[r][j].clone()) * &z[j]);
                }
            }
            z[c] = &acc / &RatFunc::from(m[r][c].clone());
        }
        z
    };
    let nfree = n - rank;
    let particular = back(&|r| RatFunc::from(m[r][n].clone()), &vec![RatFunc::zero(); nfree]);
    if nfree == 0 {
        return SolveResult::Unique(particular);
    }
    let nullspace = (0..nfree)
        .map(|k| {
            let free: Vec<RatFunc> = (0..nfree)
                .map(|i| if i == k { RatFunc::one() } else { RatFunc::zero() })
                .collect();
            back(&|_| RatFunc::zero(), &free)
        })
        .collect();
    SolveResult::Space { particular, nullspace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rat as pr;

    #[test]
    fn identity_system() {
        let b = vec![pr("x1 + u"), pr("k1/x2")];
        assert_eq!(ff_solve(&FFMatrix::identity(2), &b), SolveResult::Unique(b.clone()));
    }

    #[test]
    fn inconsistent_system() {
        let a = FFMatrix::from_rows(vec![
            vec![pr("u"), RatFunc::zero()],
            vec![RatFunc::zero(), RatFunc::zero()],
        ]);
        assert_eq!(ff_solve(&a, &[pr("x1"), pr("1")]), SolveResult::Inconsistent);
    }

    #[test]
    fn underdetermined_system() {
        let a = FFMatrix::from_rows(vec![vec![pr("x1"), pr("x2")]]);
        match ff_solve(&a, &[pr("1")]) {
            SolveResult::Space { particular, nullspace } => {
                assert_eq!(a.mul_vec(&particular), vec![pr("1")]);
                assert_eq!(nullspace.len(), 1);
                assert!(a.mul_vec(&nullspace[0])[0].is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn symbolic_unique_solution() {
        let a = FFMatrix::from_rows(vec![
            vec![pr("1/x1"), pr("u")],
            vec![pr("x2"), pr("x1 + 1")],
        ]);
        let b = vec![pr("1"), pr("x2/(x1 - u)")];
        let SolveResult::Unique(z) = ff_solve(&a, &b) else { panic!() };
        assert_eq!(a.mul_vec(&z), b);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let a = FFMatrix::from_rows(vec![
            vec![pr("1"), pr("2*x1")],
            vec![pr("x2"), pr("2*x1*x2")],
        ]);
        assert_eq!(a.rank(), 1);
        assert_eq!(FFMatrix::identity(3).rank(), 3);
    }
}
