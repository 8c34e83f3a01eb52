use super::matrix::Matrix;
use super::ring::{EuclideanRing, Ring};

/// Smith normal form `P·A·Q = D` with `P`, `Q` invertible and the nonzero
/// diagonal entries `d_0 | d_1 | …` in preferred-associate form.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub d: Matrix<T>,
    pub p: Matrix<T>,
    pub q: Matrix<T>,
    pub q_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: EuclideanRing> SmithForm<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

fn row_axpy<T: Ring>(a: &mut Matrix<T>, dst: usize, src: usize, c: &T) {
    // row dst -= c·row src
    for j in 0..a.cols() {
        let v = a[(src, j)].mul(c);
        if !v.is_zero() {
            a[(dst, j)] = a[(dst, j)].sub(&v);
        }
    }
}

fn col_axpy<T: Ring>(a: &mut Matrix<T>, dst: usize, src: usize, c: &T) {
    // col dst -= c·col src
    for i in 0..a.rows() {
        let v = a[(i, src)].mul(c);
        if !v.is_zero() {
            a[(i, dst)] = a[(i, dst)].sub(&v);
        }
    }
}

pub fn smith_normal_form<T: EuclideanRing>(a: &Matrix<T>) -> SmithForm<T> {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut p = Matrix::<T>::identity(m);
    let mut q = Matrix::<T>::identity(n);
    let mut q_inv = Matrix::<T>::identity(n);

    // `col dst -= c·col src` is right multiplication by E = I − c·e_src·e_dstᵀ,
    // so Q ← Q·E and Q⁻¹ ← E⁻¹·Q⁻¹.
    let col_op = |d: &mut Matrix<T>, q: &mut Matrix<T>, qi: &mut Matrix<T>, dst: usize, src: usize, c: &T| {
        col_axpy(d, dst, src, c);
        col_axpy(q, dst, src, c);
        row_axpy(qi, src, dst, &c.neg());
    };
    let col_swap = |d: &mut Matrix<T>, q: &mut Matrix<T>, qi: &mut Matrix<T>, a: usize, b: usize| {
        d.swap_cols(a, b);
        q.swap_cols(a, b);
        qi.swap_rows(a, b);
    };

    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            // pivot of minimal norm in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| d[(i, j)].norm() < d[(bi, bj)].norm()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            p.swap_rows(t, pi);
            col_swap(&mut d, &mut q, &mut q_inv, t, pj);

            let piv = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (c, r) = d[(i, t)].div_rem(&piv);
                row_axpy(&mut d, i, t, &c);
                row_axpy(&mut p, i, t, &c);
                dirty |= !r.is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (c, r) = d[(t, j)].div_rem(&piv);
                col_op(&mut d, &mut q, &mut q_inv, j, t, &c);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].div_rem(&piv).1.is_zero()));
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, &T::one().neg());
                    row_axpy(&mut p, t, i, &T::one().neg());
                }
                None => break,
            }
        }
        if d[(t, t)].is_zero() {
            break;
        }
        let (u, u_inv) = d[(t, t)].normalizing_unit();
        for i in 0..m {
            d[(i, t)] = d[(i, t)].mul(&u);
        }
        for i in 0..n {
            q[(i, t)] = q[(i, t)].mul(&u);
            q_inv[(t, i)] = q_inv[(t, i)].mul(&u_inv);
        }
        rank += 1;
    }
    SmithForm { d, p, q, q_inv, rank }
}

/// Rank over the fraction field.
pub fn rank<T: EuclideanRing>(a: &Matrix<T>) -> usize {
    smith_normal_form(a).rank
}
