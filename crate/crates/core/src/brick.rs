//! λ-brick tabloids of shape μ.
//!
//! A tabloid fills each row of the Ferrers diagram of `μ` with bricks whose
//! lengths are the parts of `λ`. Bricks of equal length are
//! indistinguishable, so a filling is the ordered list of brick lengths in
//! each row. The weight is the product of the rightmost brick length of every
//! row.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BrickTabloid {
    pub shape: Partition,
    /// Brick lengths left to right, one list per row of `shape`.
    pub rows: Vec<Vec<usize>>,
}

impl BrickTabloid {
    pub fn weight(&self) -> BigInt {
        self.rows
            .iter()
            .map(|row| BigInt::from(*row.last().expect("rows are nonempty")))
            .product()
    }
}

#[derive(Clone, Debug)]
pub struct BrickTabloids {
    pub tabloids: Vec<BrickTabloid>,
    pub total_weight: BigInt,
}

struct Bricks {
    sizes: Vec<usize>,
    counts: Vec<usize>,
}

impl Bricks {
    fn of(lambda: &Partition) -> Self {
        let (sizes, counts) = lambda.multiplicities().into_iter().rev().unzip();
        Bricks { sizes, counts }
    }
}

fn check(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.n() != mu.n() {
        return Err(Error::DegreeMismatch {
            expected: lambda.n(),
            got: mu.n(),
        });
    }
    Ok(())
}

/// Every tabloid in `BT_{λ,μ}` and their total weight.
pub fn brick_tabloids(lambda: &Partition, mu: &Partition) -> Result<BrickTabloids> {
    check(lambda, mu)?;
    let bricks = Bricks::of(lambda);
    let mut counts = bricks.counts.clone();
    let mut rows = Vec::new();
    let mut out = Vec::new();
    fill_rows(mu.parts(), &bricks.sizes, &mut counts, &mut rows, &mut |rows| {
        out.push(BrickTabloid {
            shape: mu.clone(),
            rows: rows.to_vec(),
        })
    });
    let total_weight = out.iter().map(BrickTabloid::weight).sum();
    Ok(BrickTabloids {
        tabloids: out,
        total_weight,
    })
}

fn fill_rows(
    row_lengths: &[usize],
    sizes: &[usize],
    counts: &mut [usize],
    rows: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    let Some((&len, rest)) = row_lengths.split_first() else {
        if counts.iter().all(|&c| c == 0) {
            emit(rows);
        }
        return;
    };
    let mut row = Vec::new();
    fill_one_row(len, sizes, counts, &mut row, &mut |counts, row| {
        rows.push(row.to_vec());
        fill_rows(rest, sizes, counts, rows, emit);
        rows.pop();
    });
}

fn fill_one_row(
    remaining: usize,
    sizes: &[usize],
    counts: &mut [usize],
    row: &mut Vec<usize>,
    done: &mut dyn FnMut(&mut [usize], &[usize]),
) {
    if remaining == 0 {
        done(counts, row);
        return;
    }
    for k in 0..sizes.len() {
        if counts[k] > 0 && sizes[k] <= remaining {
            counts[k] -= 1;
            row.push(sizes[k]);
            fill_one_row(remaining - sizes[k], sizes, counts, row, done);
            row.pop();
            counts[k] += 1;
        }
    }
}

/// `Σ_{B ∈ BT_{λ,μ}} w(B)` without listing the tabloids. Memoized on the
/// remaining brick multiset and row position.
pub fn brick_weight_sum(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    check(lambda, mu)?;
    let bricks = Bricks::of(lambda);
    let mut memo = HashMap::new();
    Ok(weight_rows(0, mu.parts(), &bricks.sizes, bricks.counts.clone(), &mut memo))
}

fn weight_rows(
    row: usize,
    row_lengths: &[usize],
    sizes: &[usize],
    counts: Vec<usize>,
    memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
) -> BigInt {
    if row == row_lengths.len() {
        return if counts.iter().all(|&c| c == 0) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let key = (row, counts);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // Collect the multisets left after filling this row, with the summed
    // weight of the rightmost brick over all fillings reaching them.
    let mut outcomes: HashMap<Vec<usize>, BigInt> = HashMap::new();
    let mut counts = key.1.clone();
    let mut row_bricks = Vec::new();
    fill_one_row(row_lengths[row], sizes, &mut counts, &mut row_bricks, &mut |left, bricks| {
        let w = BigInt::from(*bricks.last().expect("row length is positive"));
        *outcomes.entry(left.to_vec()).or_insert_with(BigInt::zero) += w;
    });
    let mut total = BigInt::zero();
    for (left, w) in outcomes {
        let rest = weight_rows(row + 1, row_lengths, sizes, left, memo);
        total += w * rest;
    }
    memo.insert(key, total.clone());
    total
}

/// `M^λ(μ) = (-1)^{l(λ) - l(μ)} Σ w(B)`, the inverse Frobenius image of `m_λ`.
pub fn m_inverse_value(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    let sum = brick_weight_sum(lambda, mu)?;
    Ok(if (lambda.len() + mu.len()) % 2 == 0 { sum } else { -sum })
}

/// `F^λ(μ) = (-1)^{n - l(μ)} Σ w(B)`, the inverse Frobenius image of `f_λ`.
pub fn f_inverse_value(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    let sum = brick_weight_sum(lambda, mu)?;
    Ok(if mu.sign() > 0 { sum } else { -sum })
}
