//! Integral homology through Smith normal form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{double_nerve, LpCategory, NerveSimplicialSet};

/// Column-major sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    cols: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix {
            n_rows,
            n_cols,
            cols: vec![BTreeMap::new(); n_cols],
        }
    }

    /// Adds `v` to entry `(row, col)`.
    pub fn push(&mut self, row: usize, col: usize, v: i64) {
        let e = self.cols[col].entry(row).or_insert(0);
        *e += v;
        if *e == 0 {
            self.cols[col].remove(&row);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.cols[col].get(&row).copied().unwrap_or(0)
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.cols[col].iter().map(|(&r, &v)| (r, v))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n_cols, other.n_rows);
        let mut out = SparseMatrix::new(self.n_rows, other.n_cols);
        for j in 0..other.n_cols {
            for (k, b) in other.column(j) {
                for (i, a) in self.column(k) {
                    out.push(i, j, a * b);
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n_rows, self.n_cols);
        for j in 0..self.n_cols {
            for (i, v) in self.column(j) {
                m.set(i, j, v);
            }
        }
        m
    }
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow("matrix product"))?;
                    let s = out.get(i, j).checked_add(p).ok_or(Error::Overflow("matrix product"))?;
                    out.set(i, j, s);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for j in 0..self.cols {
            let v = self.get(src, j);
            if v != 0 {
                let p = q.checked_mul(v).ok_or(Error::Overflow("Smith normal form"))?;
                let n = self.get(dst, j).checked_sub(p).ok_or(Error::Overflow("Smith normal form"))?;
                self.set(dst, j, n);
            }
        }
        Ok(())
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for i in 0..self.rows {
            let v = self.get(i, src);
            if v != 0 {
                let p = q.checked_mul(v).ok_or(Error::Overflow("Smith normal form"))?;
                let n = self.get(i, dst).checked_sub(p).ok_or(Error::Overflow("Smith normal form"))?;
                self.set(i, dst, n);
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }
}

/// `left * input * right = diagonal` with unimodular `left` and `right`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub factors: Vec<i64>,
    pub rank: usize,
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

struct Ops<'a> {
    left: Option<&'a mut IntMatrix>,
    right: Option<&'a mut IntMatrix>,
}

impl Ops<'_> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(l) = self.left.as_deref_mut() {
            l.swap_rows(a, b);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(r) = self.right.as_deref_mut() {
            r.swap_cols(a, b);
        }
    }
    fn row_sub(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        match self.left.as_deref_mut() {
            Some(l) => l.row_sub(dst, src, q),
            None => Ok(()),
        }
    }
    fn col_sub(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        match self.right.as_deref_mut() {
            Some(r) => r.col_sub(dst, src, q),
            None => Ok(()),
        }
    }
    fn negate_row(&mut self, i: usize) {
        if let Some(l) = self.left.as_deref_mut() {
            l.negate_row(i);
        }
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j).abs();
            if v != 0 && best.is_none_or(|b| v < b.0) {
                best = Some((v, i, j));
                if v == 1 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

/// Reduces `a` in place to diagonal form with each factor dividing the next.
fn diagonalize(a: &mut IntMatrix, ops: &mut Ops<'_>) -> Result<Vec<i64>> {
    let mut factors = Vec::new();
    let n = a.rows.min(a.cols);
    for t in 0..n {
        let Some((pi, pj)) = min_abs_entry(a, t) else { break };
        a.swap_rows(t, pi);
        ops.swap_rows(t, pi);
        a.swap_cols(t, pj);
        ops.swap_cols(t, pj);
        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for i in t + 1..a.rows {
                let v = a.get(i, t);
                if v != 0 {
                    let q = v / p;
                    a.row_sub(i, t, q)?;
                    ops.row_sub(i, t, q)?;
                    if a.get(i, t) != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..a.cols {
                let v = a.get(t, j);
                if v != 0 {
                    let q = v / p;
                    a.col_sub(j, t, q)?;
                    ops.col_sub(j, t, q)?;
                    if a.get(t, j) != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remainder in row/column t onto the pivot
                let mut best = (a.get(t, t).abs(), t, t);
                for i in t + 1..a.rows {
                    let v = a.get(i, t).abs();
                    if v != 0 && v < best.0 {
                        best = (v, i, t);
                    }
                }
                for j in t + 1..a.cols {
                    let v = a.get(t, j).abs();
                    if v != 0 && v < best.0 {
                        best = (v, t, j);
                    }
                }
                a.swap_rows(t, best.1);
                ops.swap_rows(t, best.1);
                a.swap_cols(t, best.2);
                ops.swap_cols(t, best.2);
                continue;
            }
            // enforce divisibility of the remaining block
            let mut offender = None;
            'scan: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if a.get(i, j) % p != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    a.row_sub(t, i, -1)?;
                    ops.row_sub(t, i, -1)?;
                }
                None => break,
            }
        }
        if a.get(t, t) < 0 {
            a.negate_row(t);
            ops.negate_row(t);
        }
        factors.push(a.get(t, t));
    }
    Ok(factors)
}

/// Smith normal form with recorded transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Snf> {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let factors = {
        let mut ops = Ops {
            left: Some(&mut left),
            right: Some(&mut right),
        };
        diagonalize(&mut a, &mut ops)?
    };
    Ok(Snf {
        rank: factors.len(),
        factors,
        diagonal: a,
        left,
        right,
    })
}

/// Nonzero invariant factors of a sparse matrix. Unit pivots are eliminated sparsely and
/// the remaining block is diagonalized densely.
pub fn invariant_factors(m: &SparseMatrix) -> Result<Vec<i64>> {
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.n_rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.n_cols];
    for j in 0..m.n_cols {
        for (i, v) in m.column(j) {
            rows[i].insert(j, v);
            col_rows[j].insert(i);
        }
    }
    let mut units = 0usize;
    loop {
        let mut order: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
        order.sort_by_key(|&r| (rows[r].len(), r));
        let mut progressed = false;
        for r in order {
            if rows[r].is_empty() {
                continue;
            }
            let pivot = rows[r]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(&c, _)| (col_rows[c].len(), c))
                .map(|(&c, &v)| (c, v));
            let Some((c, u)) = pivot else { continue };
            let pivot_row: Vec<(usize, i64)> = rows[r].iter().map(|(&c, &v)| (c, v)).collect();
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let factor = rows[i][&c] * u;
                for &(cc, v) in &pivot_row {
                    let delta = factor.checked_mul(v).ok_or(Error::Overflow("sparse elimination"))?;
                    let cur = rows[i].get(&cc).copied().unwrap_or(0);
                    let new = cur.checked_sub(delta).ok_or(Error::Overflow("sparse elimination"))?;
                    if new == 0 {
                        rows[i].remove(&cc);
                        col_rows[cc].remove(&i);
                    } else {
                        rows[i].insert(cc, new);
                        col_rows[cc].insert(i);
                    }
                }
            }
            for &(cc, _) in &pivot_row {
                col_rows[cc].remove(&r);
            }
            rows[r].clear();
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..col_rows.len()).filter(|&c| !col_rows[c].is_empty()).collect();
    let mut factors = vec![1; units];
    if !live_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (i, &r) in live_rows.iter().enumerate() {
            for (&c, &v) in &rows[r] {
                dense.set(i, col_pos[&c], v);
            }
        }
        let mut ops = Ops {
            left: None,
            right: None,
        };
        factors.extend(diagonalize(&mut dense, &mut ops)?);
    }
    factors.sort_unstable();
    Ok(factors)
}

/// Chain complex with `boundaries[n - 1]` the differential `C_n -> C_{n-1}`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Panics if consecutive differentials do not compose to zero.
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Self {
        assert_eq!(boundaries.len() + 1, dims.len().max(1));
        for (k, b) in boundaries.iter().enumerate() {
            assert_eq!((b.n_rows, b.n_cols), (dims[k], dims[k + 1]));
        }
        for w in boundaries.windows(2) {
            assert!(w[0].mul(&w[1]).is_zero(), "boundary of boundary is nonzero");
        }
        ChainComplex { dims, boundaries }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<i64>>,
}

impl HomologyProfile {
    /// Drops trailing degrees with vanishing homology, keeping degree 0.
    pub fn trimmed(mut self) -> Self {
        while self.betti.len() > 1 && *self.betti.last().unwrap() == 0 && self.torsion.last().unwrap().is_empty() {
            self.betti.pop();
            self.torsion.pop();
        }
        self
    }

    pub fn betti_padded(&self, n: usize) -> Vec<usize> {
        let mut b = self.betti.clone();
        b.resize(n.max(b.len()), 0);
        b
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn is_point(&self) -> bool {
        self.betti == [1] && self.torsion.iter().all(Vec::is_empty)
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (&b, t)) in self.betti.iter().zip(&self.torsion).enumerate() {
            let mut parts = Vec::new();
            if b > 0 || t.is_empty() {
                parts.push(if b == 0 { "0".to_string() } else { format!("Z^{b}") });
            }
            parts.extend(t.iter().map(|d| format!("Z/{d}")));
            writeln!(f, "H_{n} = {}", parts.join(" + "))?;
        }
        let torsion: Vec<String> = self
            .torsion
            .iter()
            .map(|t| format!("[{}]", t.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        writeln!(
            f,
            "betti: [{}]",
            self.betti.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
        )?;
        write!(f, "torsion: [{}]", torsion.join(", "))
    }
}

pub fn homology(c: &ChainComplex) -> Result<HomologyProfile> {
    let mut ranks = vec![0usize; c.dims.len() + 1];
    let mut torsion = vec![Vec::new(); c.dims.len()];
    for (k, b) in c.boundaries.iter().enumerate() {
        let f = invariant_factors(b)?;
        ranks[k + 1] = f.len();
        torsion[k] = f.into_iter().filter(|&d| d > 1).collect();
    }
    let betti = c
        .dims
        .iter()
        .enumerate()
        .map(|(n, &d)| d - ranks[n] - ranks[n + 1])
        .collect();
    Ok(HomologyProfile { betti, torsion }.trimmed())
}

/// Normalized chains of a nerve: nondegenerate simplices with the alternating face sum.
pub fn normalized_chains(n: &NerveSimplicialSet) -> ChainComplex {
    let dims: Vec<usize> = (0..n.n_dims()).map(|d| n.count(d)).collect();
    let mut boundaries = Vec::new();
    for d in 1..dims.len() {
        let mut m = SparseMatrix::new(dims[d - 1], dims[d]);
        for j in 0..dims[d] {
            for (i, face) in n.faces(d, j).into_iter().enumerate() {
                if let Some(f) = face {
                    m.push(f, j, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    if dims.is_empty() {
        return ChainComplex::new(vec![0], Vec::new());
    }
    ChainComplex::new(dims, boundaries)
}

/// Total complex of the normalized double nerve, with differential `d_h + (-1)^n d_v`.
pub fn classifying_chains(c: &LpCategory, bound: usize) -> Result<ChainComplex> {
    let cells = double_nerve(c, bound)?;
    if cells.is_empty() {
        return Ok(ChainComplex::new(vec![0], Vec::new()));
    }
    let index: Vec<std::collections::HashMap<&crate::lp::BarCell, usize>> =
        cells.iter().map(|l| l.iter().enumerate().map(|(i, b)| (b, i)).collect()).collect();
    let dims: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut boundaries = Vec::new();
    for d in 1..dims.len() {
        let mut m = SparseMatrix::new(dims[d - 1], dims[d]);
        let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (j, cell) in cells[d].iter().enumerate() {
            let n = cell.horizontal();
            if n > 0 {
                for i in 0..=n {
                    if let Some(face) = cell.horizontal_face(c, i) {
                        *entries.entry((index[d - 1][&face], j)).or_default() += if i % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            let outer = if n % 2 == 0 { 1 } else { -1 };
            for k in 0..=cell.vertical() {
                if cell.vertical() == 0 {
                    break;
                }
                let face = cell.vertical_face(k);
                *entries.entry((index[d - 1][&face], j)).or_default() += outer * if k % 2 == 0 { 1 } else { -1 };
            }
        }
        for ((r, col), v) in entries {
            if v != 0 {
                m.push(r, col, v);
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplex::new(dims, boundaries))
}

/// Integral homology of the classifying space of an LP-category.
pub fn classifying_homology(c: &LpCategory, bound: usize) -> Result<HomologyProfile> {
    homology(&classifying_chains(c, bound)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m).unwrap();
        let prod = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert_eq!(prod, s.diagonal);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if i != j {
                    assert_eq!(s.diagonal.get(i, j), 0);
                }
            }
        }
        for w in s.factors.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(check_snf(&IntMatrix::zeros(3, 4)).rank, 0);
        assert_eq!(check_snf(&IntMatrix::identity(4)).factors, vec![1, 1, 1, 1]);
    }

    #[test]
    fn classic_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check_snf(&m).factors, vec![2, 6, 12]);
    }

    #[test]
    fn divisibility_fixup() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(check_snf(&m).factors, vec![1, 6]);
    }

    #[test]
    fn sparse_matches_dense() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4, 1], vec![-6, 6, 12, 0], vec![10, -4, -16, 0]]);
        let mut s = SparseMatrix::new(3, 4);
        for i in 0..3 {
            for j in 0..4 {
                s.push(i, j, m.get(i, j));
            }
        }
        assert_eq!(invariant_factors(&s).unwrap(), check_snf(&m).factors);
    }

    #[test]
    fn overflow_reported() {
        let big = i64::MAX / 2;
        let m = IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 3, big]]);
        match smith_normal_form(&m) {
            Ok(s) => {
                assert_eq!(s.rank, 2);
            }
            Err(e) => assert!(matches!(e, Error::Overflow(_))),
        }
    }

    #[test]
    fn display_format() {
        let h = HomologyProfile {
            betti: vec![1, 0],
            torsion: vec![vec![], vec![2]],
        };
        assert_eq!(h.to_string(), "H_0 = Z^1\nH_1 = Z/2\nbetti: [1, 0]\ntorsion: [[], [2]]");
    }
}
