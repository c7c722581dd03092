//! Dense linear algebra over a prime field `F_p`, `p` small.

pub(crate) type Mat = Vec<Vec<u64>>;

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    t0.rem_euclid(p as i64) as u64
}

/// Row-reduces in place; returns the pivot columns.
pub(crate) fn rref(m: &mut Mat, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                for j in 0..cols {
                    m[k][j] = (m[k][j] + (p - f) * m[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub(crate) fn rank(m: &Mat, p: u64) -> usize {
    rref(&mut m.clone(), p).len()
}

/// Basis of `{x : m x = 0}`.
pub(crate) fn kernel(m: &Mat, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut r = m.clone();
    let pivots = rref(&mut r, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; cols];
            x[f] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                x[pc] = (p - row[f]) % p;
            }
            x
        })
        .collect()
}

/// Entries of `index` written in base `p`, least significant first.
pub(crate) fn digits(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for x in out.iter_mut() {
        *x = index % p;
        index /= p;
    }
    out
}

/// Every `k`-dimensional subspace of `F_p^n`, as the rows of its RREF basis.
pub(crate) fn subspaces(n: usize, k: usize, p: u64) -> Vec<Mat> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for pivots in combinations(n, k) {
        // free slots: row r, column c > pivots[r], c not a pivot
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                (pivots[r] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = p.pow(slots.len() as u32);
        for idx in 0..total {
            let vals = digits(idx, p, slots.len());
            let mut m = vec![vec![0; n]; k];
            for (r, &c) in pivots.iter().enumerate() {
                m[r][c] = 1;
            }
            for (&(r, c), &v) in slots.iter().zip(&vals) {
                m[r][c] = v;
            }
            out.push(m);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `m v` for `m` of shape `rows x v.len()`.
pub(crate) fn apply(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b % p).sum::<u64>() % p)
        .collect()
}

/// Whether `v` lies in the row span of the RREF matrix `basis` with the
/// given pivot columns.
pub(crate) fn in_span(basis: &Mat, pivots: &[usize], v: &[u64], p: u64) -> bool {
    let mut w = v.to_vec();
    for (row, &c) in basis.iter().zip(pivots) {
        let f = w[c];
        if f != 0 {
            for (x, y) in w.iter_mut().zip(row) {
                *x = (*x + (p - f) * y) % p;
            }
        }
    }
    w.iter().all(|&x| x == 0)
}

/// `u^T g w`.
pub(crate) fn pairing(u: &[u64], g: &Mat, w: &[u64], p: u64) -> u64 {
    let gw = apply(g, w, p);
    u.iter().zip(&gw).map(|(a, b)| a * b % p).sum::<u64>() % p
}

/// Number of invertible `n x n` matrices, by building columns one at a time.
pub(crate) fn count_gl(n: usize, p: u64) -> u64 {
    fn go(cols: &mut Mat, n: usize, p: u64) -> u64 {
        if cols.len() == n {
            return 1;
        }
        let mut total = 0;
        for idx in 0..p.pow(n as u32) {
            let v = digits(idx, p, n);
            cols.push(v);
            if rank(cols, p) == cols.len() {
                total += go(cols, n, p);
            }
            cols.pop();
        }
        total
    }
    go(&mut Vec::new(), n, p)
}

/// Number of `g` with `g^T form g = form`, by building columns one at a time.
pub(crate) fn count_isometries(form: &Mat, p: u64) -> u64 {
    let n = form.len();
    fn go(cols: &mut Mat, form: &Mat, n: usize, p: u64) -> u64 {
        let k = cols.len();
        if k == n {
            return 1;
        }
        let mut total = 0;
        for idx in 0..p.pow(n as u32) {
            let v = digits(idx, p, n);
            let ok = (0..k).all(|j| {
                pairing(&cols[j], form, &v, p) == form[j][k] && pairing(&v, form, &cols[j], p) == form[k][j]
            }) && pairing(&v, form, &v, p) == form[k][k];
            if ok {
                cols.push(v);
                total += go(cols, form, n, p);
                cols.pop();
            }
        }
        total
    }
    go(&mut Vec::new(), form, n, p)
}

/// Smallest quadratic nonresidue mod `p`.
pub(crate) fn nonsquare(p: u64) -> u64 {
    (2..p).find(|&a| (1..p).all(|x| x * x % p != a)).expect("odd prime")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        assert_eq!(subspaces(2, 1, 3).len(), 4);
        assert_eq!(subspaces(3, 1, 3).len(), 13);
        assert_eq!(subspaces(3, 2, 3).len(), 13);
        assert_eq!(subspaces(4, 2, 3).len(), 130);
        assert_eq!(subspaces(2, 0, 5).len(), 1);
    }

    #[test]
    fn kernel_and_span() {
        let m = vec![vec![1, 2, 0], vec![0, 0, 1]];
        let k = kernel(&m, 3, 5);
        assert_eq!(k, vec![vec![3, 1, 0]]);
        let mut b = vec![vec![1, 1, 0]];
        let piv = rref(&mut b, 3);
        assert!(in_span(&b, &piv, &[2, 2, 0], 3));
        assert!(!in_span(&b, &piv, &[1, 0, 0], 3));
    }

    #[test]
    fn group_counts() {
        assert_eq!(count_gl(2, 3), 48);
        assert_eq!(count_gl(1, 5), 4);
        assert_eq!(count_gl(0, 5), 1);
        let j = vec![vec![0, 1], vec![2, 0]];
        assert_eq!(count_isometries(&j, 3), 24);
        let id = vec![vec![1, 0], vec![0, 1]];
        // x^2 + y^2 over F_3 is anisotropic: O^-_2
        assert_eq!(count_isometries(&id, 3), 8);
        assert_eq!(nonsquare(5), 2);
        assert_eq!(inv_mod(3, 7), 5);
    }
}
