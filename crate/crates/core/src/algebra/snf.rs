use super::intmat::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Smith normal form `u * m * v = diag(d)`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Diagonal entries, length `min(rows, cols)`; zeros trail the positive factors.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, x) in self.d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Columns of `v` spanning the integer kernel of the original matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        (r..self.v.cols())
            .map(|j| (0..self.v.rows()).map(|i| self.v.get(i, j).clone()).collect())
            .collect()
    }
}

fn min_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        let Some((pi, pj)) = min_nonzero(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder survived: move the smallest entry of row/column t to the pivot
                let mut best = (t, t);
                let mut best_abs = a.get(t, t).abs();
                for i in t + 1..rows {
                    let x = a.get(i, t).abs();
                    if !x.is_zero() && x < best_abs {
                        best = (i, t);
                        best_abs = x;
                    }
                }
                for j in t + 1..cols {
                    let x = a.get(t, j).abs();
                    if !x.is_zero() && x < best_abs {
                        best = (t, j);
                        best_abs = x;
                    }
                }
                a.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // row and column cleared; enforce divisibility of the remaining block
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let d = (0..steps).map(|i| a.get(i, i).clone()).collect();
    SnfResult { d, u, v }
}

/// Finitely generated abelian group `Z^rank + Z_{t1} + ... `.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(rank: usize, mut torsion: Vec<u64>) -> Self {
        torsion.retain(|&t| t > 1);
        torsion.sort_unstable();
        AbelianGroup { rank, torsion }
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    /// Rendered as `Z^3`, `Z+Z2+Z2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Abelian group presented by `generators` and the rows of `relations`.
pub fn abelianization(relations: &IntMatrix, generators: usize) -> AbelianGroup {
    assert_eq!(relations.cols(), generators, "relation matrix must have one column per generator");
    if relations.rows() == 0 {
        return AbelianGroup::new(generators, vec![]);
    }
    let snf = smith_normal_form(relations);
    let rank = generators - snf.rank();
    let torsion = snf
        .d
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| u64::try_from(x.clone()).expect("torsion coefficient exceeds u64"))
        .collect();
    AbelianGroup::new(rank, torsion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).d, ints(&[1, 6]));
    }

    #[test]
    fn identity_is_fixed() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.d, ints(&[1, 1, 1]));
    }

    #[test]
    fn period_three_monodromy() {
        let m = IntMatrix::from_rows(&[vec![-1, 1], vec![-1, -2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, ints(&[1, 3]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.diagonal_matrix(2, 2));
    }

    #[test]
    fn zero_matrix() {
        let s = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert_eq!(s.d, ints(&[0, 0]));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn free_group_with_no_relations() {
        let g = abelianization(&IntMatrix::zeros(0, 3), 3);
        assert_eq!(g.to_string(), "Z^3");
    }

    #[test]
    fn kernel_basis_annihilates() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let s = smith_normal_form(&m);
        let ker = s.kernel_basis();
        assert_eq!(ker.len(), 2);
        for k in ker {
            for i in 0..2 {
                let dot: BigInt = (0..3).map(|j| m.get(i, j) * &k[j]).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
