//! Affine systems over GF(2) with bit-packed rows.

/// A growable row of bits packed into `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(bits: usize) -> Self {
        Self { words: vec![0; bits.div_ceil(64)] }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }
}

/// Outcome of solving `M s = b` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    /// A solution with every free variable at 0, plus the free columns.
    Solvable { solution: Vec<bool>, free: Vec<usize> },
    /// Original equations whose sum is `0 = 1`.
    Inconsistent { witness: Vec<usize> },
}

/// An affine system with `vars` unknowns; each equation is a row plus its
/// right-hand side bit.
#[derive(Debug, Clone)]
pub struct Gf2System {
    vars: usize,
    rows: Vec<BitRow>,
    rhs: Vec<bool>,
}

impl Gf2System {
    pub fn new(vars: usize) -> Self {
        Self { vars, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn push(&mut self, cols: impl IntoIterator<Item = usize>, rhs: bool) {
        let mut row = BitRow::zeros(self.vars);
        for c in cols {
            row.flip(c);
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Gauss-Jordan elimination. Each working row carries the set of
    /// original equations it is the sum of, which becomes the witness when a
    /// row collapses to `0 = 1`.
    pub fn solve(&self) -> Gf2Solution {
        let m = self.rows.len();
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        let mut provenance: Vec<BitRow> = (0..m)
            .map(|i| {
                let mut p = BitRow::zeros(m);
                p.set(i, true);
                p
            })
            .collect();

        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut next = 0;
        for col in 0..self.vars {
            let Some(pr) = (next..m).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, pr);
            rhs.swap(next, pr);
            provenance.swap(next, pr);
            let (pivot_row, pivot_rhs, pivot_prov) = (rows[next].clone(), rhs[next], provenance[next].clone());
            for r in 0..m {
                if r != next && rows[r].get(col) {
                    rows[r].xor_assign(&pivot_row);
                    rhs[r] ^= pivot_rhs;
                    provenance[r].xor_assign(&pivot_prov);
                }
            }
            pivots.push((next, col));
            next += 1;
            if next == m {
                break;
            }
        }

        if let Some(r) = (next..m).find(|&r| rhs[r]) {
            debug_assert!(rows[r].is_zero());
            return Gf2Solution::Inconsistent { witness: provenance[r].ones().collect() };
        }
        let mut solution = vec![false; self.vars];
        let mut is_pivot = vec![false; self.vars];
        for &(r, c) in &pivots {
            solution[c] = rhs[r];
            is_pivot[c] = true;
        }
        let free = (0..self.vars).filter(|&c| !is_pivot[c]).collect();
        Gf2Solution::Solvable { solution, free }
    }

    /// Whether `s` satisfies every equation.
    pub fn check(&self, s: &[bool]) -> bool {
        self.rows
            .iter()
            .zip(&self.rhs)
            .all(|(row, &b)| row.ones().fold(false, |acc, c| acc ^ s[c]) == b)
    }

    /// Whether the listed equations sum to `0 = 1`.
    pub fn is_contradiction(&self, witness: &[usize]) -> bool {
        let mut acc = BitRow::zeros(self.vars);
        let mut b = false;
        for &i in witness {
            acc.xor_assign(&self.rows[i]);
            b ^= self.rhs[i];
        }
        acc.is_zero() && b
    }
}
