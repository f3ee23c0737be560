//! Smith normal form over the integers, with the unimodular transforms kept on
//! both sides, plus the integer kernel computation built on top of it.
//!
//! Everything here is exact `i128` arithmetic. The matrices involved are tiny
//! (group ranks at most ~a dozen), so no effort is spent on anything cleverer
//! than the classical elimination with a divisibility fix-up pass.

/// Dense integer matrix, row major. Rows may be empty only if the matrix is 0×n.
pub type IntMatrix = Vec<Vec<i128>>;

/// Result of `smith_normal_form`: `u * a * v = s` with `s` diagonal,
/// `s[0][0] | s[1][1] | ...`, and `u`, `v` unimodular with tracked inverses.
#[derive(Debug, Clone)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.s.len().min(if self.s.is_empty() { 0 } else { self.s[0].len() });
        (0..n).take_while(|&i| self.s[i][i] != 0).count()
    }

    /// The nonzero diagonal entries d₁ | d₂ | … .
    pub fn invariant_entries(&self) -> Vec<i128> {
        let n = self.s.len().min(if self.s.is_empty() { 0 } else { self.s[0].len() });
        (0..n).map(|i| self.s[i][i]).take_while(|&d| d != 0).collect()
    }
}

pub fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    assert!(b.len() == inner, "dimension mismatch in mat_mul");
    let mut out = vec![vec![0i128; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IntMatrix, x: &[i128]) -> Vec<i128> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(&r, &v)| r * v).sum())
        .collect()
}

/// Classical Smith normal form by row/column elimination.
///
/// Row operations are mirrored into `u` (and inverted into `u_inv`), column
/// operations into `v` (and `v_inv`), so `u * a * v = s` holds exactly and
/// `u * u_inv = v * v_inv = I`.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut s = a.clone();
    let mut u = identity_matrix(rows);
    let mut u_inv = identity_matrix(rows);
    let mut v = identity_matrix(cols);
    let mut v_inv = identity_matrix(cols);

    // Row op: row_i += k * row_j  (on s and u); inverse col op on u_inv.
    let row_add = |s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize, k: i128| {
        for c in 0..cols {
            s[i][c] += k * s[j][c];
        }
        for c in 0..rows {
            u[i][c] += k * u[j][c];
        }
        for r in 0..rows {
            u_inv[r][j] -= k * u_inv[r][i];
        }
    };
    let col_add = |s: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize, k: i128| {
        // col_i += k * col_j
        for r in 0..rows {
            s[r][i] += k * s[r][j];
        }
        for r in 0..cols {
            v[r][i] += k * v[r][j];
        }
        for c in 0..cols {
            v_inv[j][c] -= k * v_inv[i][c];
        }
    };
    let row_swap = |s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize| {
        s.swap(i, j);
        u.swap(i, j);
        for r in 0..rows {
            u_inv[r].swap(i, j);
        }
    };
    let col_swap = |s: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize| {
        for r in 0..rows {
            s[r].swap(i, j);
        }
        for r in 0..cols {
            v[r].swap(i, j);
        }
        v_inv.swap(i, j);
    };
    let row_negate = |s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize| {
        for c in 0..cols {
            s[i][c] = -s[i][c];
        }
        for c in 0..rows {
            u[i][c] = -u[i][c];
        }
        for r in 0..rows {
            u_inv[r][i] = -u_inv[r][i];
        }
    };

    let mut t = 0;
    while t < rows && t < cols {
        // Deterministic pivot: smallest |entry| in the trailing block, ties by (row, col).
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s[i][j] != 0 {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => s[i][j].abs() < s[pi][pj].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            row_swap(&mut s, &mut u, &mut u_inv, pi, t);
        }
        if pj != t {
            col_swap(&mut s, &mut v, &mut v_inv, pj, t);
        }

        // Clear row t and column t against the pivot; repeat until stable
        // (each pass strictly shrinks |pivot| or finishes).
        loop {
            let mut dirty = false;
            for i in (t + 1)..rows {
                if s[i][t] != 0 {
                    let q = s[i][t].div_euclid(s[t][t]);
                    row_add(&mut s, &mut u, &mut u_inv, i, t, -q);
                    if s[i][t] != 0 {
                        // Remainder became the new, smaller pivot candidate.
                        row_swap(&mut s, &mut u, &mut u_inv, i, t);
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..cols {
                if s[t][j] != 0 {
                    let q = s[t][j].div_euclid(s[t][t]);
                    col_add(&mut s, &mut v, &mut v_inv, j, t, -q);
                    if s[t][j] != 0 {
                        col_swap(&mut s, &mut v, &mut v_inv, j, t);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // Divisibility fix-up: the pivot must divide every remaining entry.
        let mut fixed = true;
        'scan: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if s[i][j] % s[t][t] != 0 {
                    row_add(&mut s, &mut u, &mut u_inv, t, i, 1);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue; // redo elimination at the same t with the new row
        }
        if s[t][t] < 0 {
            row_negate(&mut s, &mut u, &mut u_inv, t);
        }
        t += 1;
    }

    Snf { s, u, u_inv, v, v_inv }
}

/// Basis of the integer kernel lattice { x : a·x = 0 }, as column vectors.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<i128>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    if a.is_empty() || cols == 0 {
        return identity_matrix(cols);
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    // a·v·e_j = u⁻¹·s·e_j = 0 exactly for the columns past the rank.
    (r..cols)
        .map(|j| (0..cols).map(|i| snf.v[i][j]).collect())
        .collect()
}
