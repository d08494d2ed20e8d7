//! Smith normal form over the integers.
//!
//! Matrices are stored as sparse rows of arbitrary-precision integers; the
//! relation matrices coming out of Reidemeister-Schreier rewriting have
//! thousands of rows with a handful of nonzeros each.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An integer matrix with sparse rows `(column, value)`, sorted by column
/// and free of explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                r.iter()
                    .enumerate()
                    .map(|(j, v)| (j, v.clone().into()))
                    .filter(|(_, v): &(usize, BigInt)| !v.is_zero())
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_sparse_rows(cols: usize, mut data: Vec<Vec<(usize, BigInt)>>) -> Self {
        for row in &mut data {
            row.sort_by_key(|(c, _)| *c);
            row.retain(|(_, v)| !v.is_zero());
            debug_assert!(row.iter().all(|(c, _)| *c < cols));
        }
        IntMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn nonzeros(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }
}

/// `dst += factor * src` on sparse rows.
fn axpy(dst: &[(usize, BigInt)], factor: &BigInt, src: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            out.push((src[j].0, factor * &src[j].1));
            j += 1;
        } else {
            let v = &dst[i].1 + factor * &src[j].1;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Working state for elimination: live rows plus a column-to-rows index.
struct Elim {
    rows: Vec<Option<Vec<(usize, BigInt)>>>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl Elim {
    fn new(m: &IntMatrix) -> Self {
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        let mut rows = Vec::with_capacity(m.rows);
        for (i, r) in m.data.iter().enumerate() {
            if r.is_empty() {
                rows.push(None);
                continue;
            }
            for (j, _) in r {
                col_rows[*j].insert(i);
            }
            rows.push(Some(r.clone()));
        }
        Elim { rows, col_rows }
    }

    fn replace_row(&mut self, i: usize, new: Vec<(usize, BigInt)>) {
        if let Some(old) = &self.rows[i] {
            for (j, _) in old {
                self.col_rows[*j].remove(&i);
            }
        }
        for (j, _) in &new {
            self.col_rows[*j].insert(i);
        }
        self.rows[i] = if new.is_empty() { None } else { Some(new) };
    }

    /// Entry of smallest absolute value, ties broken by fill-in estimate and
    /// then position.
    fn pick_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(&num_bigint::BigUint, usize, usize, usize)> = None;
        for (i, r) in self.rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for (j, v) in r {
                let a = v.magnitude();
                let better = match &best {
                    None => true,
                    Some((ba, bc, _, _)) => {
                        a < *ba || (a == *ba && (r.len() - 1) * (self.col_rows[*j].len() - 1) < *bc)
                    }
                };
                if better {
                    let cost = (r.len() - 1) * (self.col_rows[*j].len() - 1);
                    best = Some((a, cost, i, *j));
                }
            }
            if let Some((a, 0, _, _)) = &best {
                if a.is_one() {
                    break;
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }
}

/// Diagonal of the Smith normal form, one entry per column: the nonzero
/// invariant factors `d₁ | d₂ | …` followed by zeros (one per unit of free
/// rank in the cokernel `ℤ^cols / rowspace`).
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut e = Elim::new(m);
    let mut diag: Vec<BigInt> = Vec::new();
    while let Some((pi, pj)) = e.pick_pivot() {
        let prow = e.rows[pi].clone().expect("pivot row live");
        let pval = prow
            .iter()
            .find(|(c, _)| *c == pj)
            .expect("pivot entry")
            .1
            .clone();
        // Clear the pivot column by row operations.
        let mut all_divisible = true;
        let others: Vec<usize> = e.col_rows[pj]
            .iter()
            .copied()
            .filter(|&i| i != pi)
            .collect();
        for i in others {
            let row = e.rows[i].as_ref().expect("indexed row live");
            let a = &row.iter().find(|(c, _)| *c == pj).expect("indexed entry").1;
            let q = a.div_floor(&pval);
            let new = axpy(row, &(-q), &prow);
            if new.iter().any(|(c, _)| *c == pj) {
                all_divisible = false;
            }
            e.replace_row(i, new);
        }
        if !all_divisible {
            continue;
        }
        // Column operations only touch the pivot row now; a remainder left
        // there becomes a smaller pivot on the next round.
        let mut reduced = Vec::new();
        let mut rest_divisible = true;
        for (c, v) in &prow {
            if *c == pj {
                continue;
            }
            let r = v.mod_floor(&pval);
            if !r.is_zero() {
                rest_divisible = false;
                reduced.push((*c, r));
            }
        }
        if rest_divisible {
            diag.push(pval.abs());
            e.replace_row(pi, Vec::new());
        } else {
            reduced.push((pj, pval));
            reduced.sort_by_key(|(c, _)| *c);
            e.replace_row(pi, reduced);
        }
    }
    normalize_diagonal(diag, m.cols)
}

/// Turns an arbitrary nonzero diagonal into invariant factors and pads with
/// zeros to `cols` entries.
fn normalize_diagonal(diag: Vec<BigInt>, cols: usize) -> Vec<BigInt> {
    let rank = diag.len();
    let mut out: Vec<BigInt> = diag.iter().filter(|d| d.is_one()).cloned().collect();
    let mut rest: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    let n = rest.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    out.extend(rest);
    out.sort_by(|a, b| match (a.is_one(), b.is_one()) {
        (true, false) => std::cmp::Ordering::Less,
        (false, true) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    out.extend(std::iter::repeat_n(
        BigInt::zero(),
        cols.saturating_sub(rank),
    ));
    out
}

/// Torsion coefficients (> 1) and free rank of `ℤ^cols / rowspace`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

pub fn abelian_invariants(m: &IntMatrix) -> AbelianInvariants {
    let d = smith_normal_form(m);
    AbelianInvariants {
        torsion: d.iter().filter(|x| **x > BigInt::one()).cloned().collect(),
        free_rank: d.iter().filter(|x| x.is_zero()).count(),
    }
}
