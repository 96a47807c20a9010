//! Exact rational kernels via modular elimination and p-adic lifting.
//!
//! A prime `p` fixes the pivot structure; the pivot block is then inverted
//! mod `p` and the kernel is lifted p-adically until rational
//! reconstruction yields vectors that annihilate every row exactly. Any
//! returned basis is therefore verified over Q, and its size equals the
//! modular nullity, which bounds the rational nullity from above.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{DenseMatrix, Zp, PRIMES};
use crate::rational::{lcm_of_denominators, Q};

/// Sparse row: `(column, value)` pairs.
pub type SparseRow = Vec<(usize, Q)>;

const MAX_LIFT_STEPS: usize = 2048;

fn integer_rows(rows: &[SparseRow]) -> Vec<Vec<(usize, BigInt)>> {
    rows.iter()
        .map(|r| {
            let l = lcm_of_denominators(r.iter().map(|(_, x)| x));
            r.iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (*c, (x * Q::from_integer(l.clone())).to_integer()))
                .collect()
        })
        .collect()
}

/// Rational reconstruction of `u mod m` with numerator and denominator
/// bounded by `sqrt(m/2)`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let g = r1.gcd(&t1);
    if !g.is_one() {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Solves `M X = B` over Q by Dixon lifting with prime `p`; `m_inv` is
/// `M^{-1} mod p`. Calls `accept` with each reconstructed candidate and
/// returns the first one it accepts.
fn dixon_lift(
    f: Zp,
    m: &[Vec<(usize, BigInt)>],
    m_inv: &DenseMatrix,
    b: &[Vec<BigInt>],
    mut accept: impl FnMut(&[Vec<Q>]) -> bool,
) -> Option<Vec<Vec<Q>>> {
    let r = m_inv.rows;
    let s = b.first().map_or(0, |row| row.len());
    let p = BigInt::from(f.modulus());
    let small = m.iter().flatten().all(|(_, x)| x.abs() < BigInt::from(1u64 << 40));
    let m_small: Vec<Vec<(usize, i128)>> = if small {
        m.iter()
            .map(|row| row.iter().map(|(c, x)| (*c, x.to_i128().unwrap())).collect())
            .collect()
    } else {
        Vec::new()
    };
    let mut resid: Vec<Vec<BigInt>> = b.to_vec();
    let mut acc: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); s]; r];
    let mut pk = BigInt::one();
    let mut next_check = 2;
    for step in 1..=MAX_LIFT_STEPS {
        // x = M^{-1} resid mod p, symmetric lift.
        let resid_p: Vec<Vec<u64>> = resid.iter().map(|row| row.iter().map(|v| f.from_bigint(v)).collect()).collect();
        let mut x = vec![vec![0i64; s]; r];
        for i in 0..r {
            let inv_row = m_inv.row(i);
            for l in 0..s {
                let mut t = 0u64;
                for (j, &c) in inv_row.iter().enumerate() {
                    if c != 0 {
                        t = f.add(t, f.mul(c, resid_p[j][l]));
                    }
                }
                x[i][l] = f.lift(t);
            }
        }
        for i in 0..r {
            for l in 0..s {
                if x[i][l] != 0 {
                    acc[i][l] += &pk * BigInt::from(x[i][l]);
                }
            }
        }
        // resid = (resid - M x) / p
        for (i, row) in m.iter().enumerate() {
            for l in 0..s {
                let mx: BigInt = if small {
                    let v: i128 = m_small[i].iter().map(|(c, a)| a * x[*c][l] as i128).sum();
                    BigInt::from(v)
                } else {
                    row.iter().map(|(c, a)| a * BigInt::from(x[*c][l])).sum()
                };
                let t = &resid[i][l] - mx;
                debug_assert!((&t % &p).is_zero());
                resid[i][l] = t / &p;
            }
        }
        pk *= &p;
        if step == next_check || resid.iter().flatten().all(|v| v.is_zero()) {
            next_check = step + step / 2 + 1;
            let cand: Option<Vec<Vec<Q>>> = acc
                .iter()
                .map(|row| row.iter().map(|u| rational_reconstruct(u, &pk)).collect())
                .collect();
            if let Some(c) = cand {
                if accept(&c) {
                    return Some(c);
                }
            }
        }
    }
    None
}

fn annihilates(rows: &[Vec<(usize, BigInt)>], v: &[Q]) -> bool {
    let d = lcm_of_denominators(v.iter());
    let vi: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(d.clone())).to_integer()).collect();
    rows.iter().all(|row| row.iter().map(|(c, a)| a * &vi[*c]).sum::<BigInt>().is_zero())
}

/// Exact kernel of a sparse rational matrix with `cols` columns, returned
/// as dense vectors normalized to 1 on their free column.
pub fn exact_kernel(rows: &[SparseRow], cols: usize) -> Vec<Vec<Q>> {
    let int_rows = integer_rows(rows);
    for &prime in &PRIMES {
        let f = Zp::new(prime);
        let mut dense = DenseMatrix::zeros(int_rows.len(), cols);
        for (i, row) in int_rows.iter().enumerate() {
            for (c, x) in row {
                dense.set(i, *c, f.from_bigint(x));
            }
        }
        let e = dense.eliminate(f, false);
        if e.rank == cols {
            return Vec::new();
        }
        let mut col_pos = vec![usize::MAX; cols];
        for (j, &c) in e.pivot_cols.iter().enumerate() {
            col_pos[c] = j;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| col_pos[c] == usize::MAX).collect();
        let mut free_pos = vec![usize::MAX; cols];
        for (l, &c) in free.iter().enumerate() {
            free_pos[c] = l;
        }
        let r = e.rank;
        let s = free.len();
        let mut m: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(r);
        let mut b: Vec<Vec<BigInt>> = Vec::with_capacity(r);
        let mut m_p = DenseMatrix::zeros(r, r);
        for (i, &ri) in e.pivot_rows.iter().enumerate() {
            let mut mrow = Vec::new();
            let mut brow = vec![BigInt::zero(); s];
            for (c, x) in &int_rows[ri] {
                if col_pos[*c] != usize::MAX {
                    mrow.push((col_pos[*c], x.clone()));
                    m_p.set(i, col_pos[*c], f.from_bigint(x));
                } else {
                    brow[free_pos[*c]] = -x.clone();
                }
            }
            m.push(mrow);
            b.push(brow);
        }
        let assemble = |x: &[Vec<Q>]| -> Vec<Vec<Q>> {
            (0..s)
                .map(|l| {
                    let mut v = vec![Q::zero(); cols];
                    v[free[l]] = Q::one();
                    for (j, &pc) in e.pivot_cols.iter().enumerate() {
                        v[pc] = x[j][l].clone();
                    }
                    v
                })
                .collect()
        };
        if r == 0 {
            let k = assemble(&[]);
            if k.iter().all(|v| annihilates(&int_rows, v)) {
                return k;
            }
            continue;
        }
        let m_inv = m_p.inverse(f).expect("pivot block is invertible mod p");
        let lifted = dixon_lift(f, &m, &m_inv, &b, |x| {
            assemble(x).iter().all(|v| annihilates(&int_rows, v))
        });
        if let Some(x) = lifted {
            return assemble(&x);
        }
    }
    panic!("exact kernel: no prime produced a verified kernel");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::exact;
    use crate::rational::{q, qi};

    fn dense_to_sparse(m: &[Vec<Q>]) -> Vec<SparseRow> {
        m.iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect())
            .collect()
    }

    #[test]
    fn reconstruct_simple_fraction() {
        let m = BigInt::from(1_000_003i64);
        let inv3 = BigInt::from(3).modpow(&(&m - 2), &m);
        let u = (BigInt::from(-2) * inv3).mod_floor(&m);
        assert_eq!(rational_reconstruct(&u, &m), Some(q(-2, 3)));
    }

    #[test]
    fn agrees_with_rational_elimination() {
        let m = vec![
            vec![q(1, 3), qi(2), qi(0), q(-5, 7)],
            vec![qi(2), qi(4), q(1, 2), qi(0)],
            vec![q(7, 3), qi(6), q(1, 2), q(-5, 7)],
        ];
        let want = exact::kernel(&m, 4);
        let got = exact_kernel(&dense_to_sparse(&m), 4);
        assert_eq!(got, want);
    }

    #[test]
    fn large_entries_and_full_rank() {
        let big = Q::from_integer(BigInt::from(10).pow(40));
        let m = vec![vec![big.clone(), qi(1)], vec![qi(1), big.clone() + qi(1)]];
        assert!(exact_kernel(&dense_to_sparse(&m), 2).is_empty());
        let m = vec![vec![big.clone(), qi(3), big.clone()]];
        let k = exact_kernel(&dense_to_sparse(&m), 3);
        assert_eq!(k, exact::kernel(&m, 3));
    }

    #[test]
    fn entries_divisible_by_the_first_prime() {
        let p = Q::from_integer(BigInt::from(PRIMES[0]));
        let m = vec![vec![p.clone(), p.clone() * qi(2)]];
        let k = exact_kernel(&dense_to_sparse(&m), 2);
        assert_eq!(k, vec![vec![qi(-2), qi(1)]]);
    }
}
