//! Dense linear algebra over a prime field F_p on plain `u32` digits.
//!
//! Used for kernels and ranks of F_p-linear maps, where the matrix entries
//! are the digit vectors of packed field elements.

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is tiny; Fermat via square-and-multiply
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Reduces `rows` in place to reduced row echelon form over the first
/// `ncols` columns and returns the pivot columns in increasing order.
pub(crate) fn rref(rows: &mut [Vec<u32>], ncols: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = ((*v as u64 + f as u64 * pv as u64) % p as u64) as u32;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space {x : A x = 0}, one vector per free column
/// in increasing order, from the reduced row echelon form.
pub(crate) fn nullspace(mut rows: Vec<Vec<u32>>, ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let pivots = rref(&mut rows, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u32; ncols];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - rows[r][f]) % p;
            }
            x
        })
        .collect()
}

/// Inverts the left square block of an augmented matrix `[A | B]` in place,
/// leaving `[I | A^{-1} B]`. Returns `None` when `A` is singular.
pub(crate) fn invert_augmented(rows: &mut [Vec<u32>], p: u32) -> Option<()> {
    let n = rows.len();
    let pivots = rref(rows, n, p);
    (pivots.len() == n).then_some(())
}

/// Incremental F_p row space used to test membership in a growing span.
#[derive(Debug, Clone)]
pub(crate) struct Span {
    p: u32,
    /// Echelon rows with their pivot column.
    rows: Vec<(usize, Vec<u32>)>,
}

impl Span {
    pub(crate) fn new(p: u32) -> Span {
        Span { p, rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c == 0 {
                continue;
            }
            let f = (self.p - c) as u64;
            for (x, &r) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + f * r as u64) % p) as u32;
            }
        }
    }

    pub(crate) fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], self.p) as u64;
        for x in w.iter_mut() {
            *x = (*x as u64 * inv % self.p as u64) as u32;
        }
        // keep earlier rows reduced at the new pivot
        let p = self.p as u64;
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let f = (self.p - c) as u64;
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = ((*x as u64 + f * r as u64) % p) as u32;
                }
            }
        }
        self.rows.push((pc, w));
        true
    }
}
