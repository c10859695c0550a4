//! Incremental row echelon form over a cyclotomic field.

use crate::scalars::Cyclotomic;

/// Rows kept in insertion order; each stored row has a unit pivot and vanishes at the
/// pivots of all earlier rows, so reducing a vector is a single forward pass.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    conductor: u32,
    rows: Vec<Vec<(usize, Cyclotomic)>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize, conductor: u32) -> Self {
        EchelonBasis {
            dim,
            conductor,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The residue of `v` after elimination against the stored rows.
    pub fn reduce(&self, mut v: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.dim, "vector length");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (j, a) in row {
                v[*j] -= &(&c * a);
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<Cyclotomic>) -> bool {
        self.reduce(v).iter().all(Cyclotomic::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Cyclotomic>) -> bool {
        if self.is_full() {
            return false;
        }
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        let row: Vec<(usize, Cyclotomic)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, &c * &inv))
            .collect();
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    /// Dense copies of the stored rows.
    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.rows.iter().map(|r| self.densify(r)).collect()
    }

    fn densify(&self, row: &[(usize, Cyclotomic)]) -> Vec<Cyclotomic> {
        let mut v = vec![Cyclotomic::zero(self.conductor); self.dim];
        for (j, c) in row {
            v[*j] = c.clone();
        }
        v
    }

    /// Reduced row echelon form, rows sorted by pivot column.
    pub fn rref(&self) -> Vec<Vec<Cyclotomic>> {
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by_key(|&k| self.pivots[k]);
        let mut rows: Vec<Vec<Cyclotomic>> = order.iter().map(|&k| self.densify(&self.rows[k])).collect();
        let pivots: Vec<usize> = order.iter().map(|&k| self.pivots[k]).collect();
        for k in (0..rows.len()).rev() {
            let p = pivots[k];
            for r in 0..rows.len() {
                if r == k || rows[r][p].is_zero() {
                    continue;
                }
                let c = rows[r][p].clone();
                let pivot_row = rows[k].clone();
                for (j, a) in pivot_row.iter().enumerate() {
                    if !a.is_zero() {
                        rows[r][j] -= &(&c * a);
                    }
                }
            }
        }
        rows
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of(vectors: impl IntoIterator<Item = Vec<Cyclotomic>>, dim: usize, conductor: u32) -> usize {
    let mut basis = EchelonBasis::new(dim, conductor);
    for v in vectors {
        basis.insert(v);
        if basis.is_full() {
            break;
        }
    }
    basis.rank()
}
