use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::EfpParams;
use crate::bigfloat::{working_precision, BigFloat};
use crate::error::{EfpError, Result};
use crate::exact::{rational_pow, ExactRational};
use crate::scalar::Real;

/// Largest lattice side the brute-force enumeration accepts.
pub const MAX_ENUMERATION_N: u32 = 6;

/// Vertex types `w₁ … w₆` as `(left, right, top, bottom)` arrows.
/// Horizontal arrows are `+1` pointing right, vertical `+1` pointing up.
const VERTICES: [(i8, i8, i8, i8); 6] = [
    (1, 1, 1, 1),
    (-1, -1, -1, -1),
    (1, 1, -1, -1),
    (-1, -1, 1, 1),
    (1, -1, 1, -1),
    (-1, 1, -1, 1),
];

/// Configuration counts grouped by `(n₁+n₂, n₃+n₄)`.
///
/// With `w₁ = w₂ = √(1−α)`, `w₃ = w₄ = √α`, `w₅ = w₆ = 1` a configuration's
/// squared weight is `(1−α)^{n₁+n₂} α^{n₃+n₄}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightTable {
    pub all: BTreeMap<(u32, u32), u64>,
    pub frozen: BTreeMap<(u32, u32), u64>,
}

impl WeightTable {
    pub fn total_configurations(&self) -> u64 {
        self.all.values().sum()
    }

    pub fn frozen_configurations(&self) -> u64 {
        self.frozen.values().sum()
    }

    fn all_even(&self) -> bool {
        self.all
            .keys()
            .chain(self.frozen.keys())
            .all(|(a, b)| a % 2 == 0 && b % 2 == 0)
    }
}

/// Probability from enumeration: exact whenever every weight is rational.
#[derive(Clone, Debug, PartialEq)]
pub enum EfpValue {
    Exact(ExactRational),
    Approximate { value: BigFloat, precision_bits: u32 },
}

impl EfpValue {
    pub fn exact(&self) -> Option<&ExactRational> {
        match self {
            EfpValue::Exact(q) => Some(q),
            EfpValue::Approximate { .. } => None,
        }
    }
}

struct Walker {
    n: usize,
    rows: usize,
    cols: usize,
    horizontal: Vec<i8>,
    vertical: Vec<i8>,
    counts: [u32; 6],
    frozen: bool,
    table: WeightTable,
}

impl Walker {
    fn visit(&mut self, cell: usize) {
        let n = self.n;
        if cell == n * n {
            // bottom boundary arrows point up
            if self.vertical.iter().all(|&a| a == 1) {
                let key = (
                    self.counts[0] + self.counts[1],
                    self.counts[2] + self.counts[3],
                );
                *self.table.all.entry(key).or_default() += 1;
                if self.frozen {
                    *self.table.frozen.entry(key).or_default() += 1;
                }
            }
            return;
        }
        let (i, j) = (cell / n, cell % n);
        let left = self.horizontal[i];
        let top = self.vertical[j];
        for (t, &(l, r, u, d)) in VERTICES.iter().enumerate() {
            if l != left || u != top {
                continue;
            }
            // right boundary arrows point right
            if j == n - 1 && r != 1 {
                continue;
            }
            let saved_frozen = self.frozen;
            if i < self.rows && j < self.cols && t != 1 {
                self.frozen = false;
            }
            self.counts[t] += 1;
            self.horizontal[i] = r;
            self.vertical[j] = d;
            self.visit(cell + 1);
            self.vertical[j] = top;
            self.horizontal[i] = left;
            self.counts[t] -= 1;
            self.frozen = saved_frozen;
        }
    }
}

/// Enumerates every six-vertex configuration with domain wall boundaries on
/// the `N × N` lattice, `N = r + s + q`, recording which ones have the top
/// `s × (s+q)` corner frozen in type 2.
pub fn dwbc_weight_table(p: &EfpParams) -> Result<WeightTable> {
    let n = p.lattice_size();
    if n > MAX_ENUMERATION_N {
        return Err(EfpError::TooLarge {
            method: "lattice enumeration",
            detail: format!("N = r+s+q = {n} exceeds the bound {MAX_ENUMERATION_N}"),
        });
    }
    let n = n as usize;
    let mut w = Walker {
        n,
        rows: p.s as usize,
        cols: (p.s + p.q) as usize,
        // left boundary arrows point left, top boundary arrows point down
        horizontal: vec![-1; n],
        vertical: vec![-1; n],
        counts: [0; 6],
        frozen: true,
        table: WeightTable::default(),
    };
    w.visit(0);
    Ok(w.table)
}

/// EFP at `α` by exhaustive enumeration, `N = r+s+q ≤ 6`.
pub fn efp_enumerate(p: &EfpParams, alpha: &ExactRational) -> Result<EfpValue> {
    let table = dwbc_weight_table(p)?;
    let one_minus = ExactRational::one() - alpha;
    if table.all_even() {
        let sum = |m: &BTreeMap<(u32, u32), u64>| {
            m.iter().fold(ExactRational::zero(), |acc, (&(a, b), &c)| {
                acc + ExactRational::from_integer(BigInt::from(c))
                    * rational_pow(&one_minus, a / 2)
                    * rational_pow(alpha, b / 2)
            })
        };
        return Ok(EfpValue::Exact(sum(&table.frozen) / sum(&table.all)));
    }
    let a = BigFloat::from_rational(alpha);
    let b = BigFloat::from_rational(&one_minus);
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let sum = |m: &BTreeMap<(u32, u32), u64>| {
        m.iter().fold(BigFloat::zero(), |acc, (&(x, y), &c)| {
            acc + BigFloat::from_i64(c as i64) * sb.powi(x as i32) * sa.powi(y as i32)
        })
    };
    Ok(EfpValue::Approximate {
        value: sum(&table.frozen) / sum(&table.all),
        precision_bits: working_precision(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn alternating_sign_matrix_counts() {
        let counts: Vec<u64> = (1..=6)
            .map(|n| {
                dwbc_weight_table(&EfpParams::new(n, 0, 0).unwrap())
                    .unwrap()
                    .total_configurations()
            })
            .collect();
        assert_eq!(counts, vec![1, 2, 7, 42, 429, 7436]);
    }

    #[test]
    fn partition_function_is_one() {
        let t = dwbc_weight_table(&EfpParams::new(3, 1, 1).unwrap()).unwrap();
        let z: ExactRational = t.all.iter().fold(ExactRational::zero(), |acc, (&(a, b), &c)| {
            acc + int(c as i64) * rational_pow(&rat(2, 3), a / 2) * rational_pow(&rat(1, 3), b / 2)
        });
        assert_eq!(z, int(1));
    }

    #[test]
    fn examples() {
        let f = |r, s, q, a| efp_enumerate(&EfpParams::new(r, s, q).unwrap(), &a).unwrap();
        assert_eq!(f(1, 1, 0, rat(1, 3)), EfpValue::Exact(rat(2, 3)));
        assert_eq!(f(2, 1, 0, rat(1, 2)), EfpValue::Exact(rat(3, 4)));
        assert_eq!(f(3, 0, 2, rat(2, 7)), EfpValue::Exact(int(1)));
    }

    #[test]
    fn refuses_large_lattices() {
        let p = EfpParams::new(4, 2, 1).unwrap();
        assert!(matches!(efp_enumerate(&p, &rat(1, 2)), Err(EfpError::TooLarge { .. })));
    }
}
