//! Smith and Hermite normal forms over the integers.

use super::matrix::IntMatrix;

/// Result of [`smith_normal_form`]: `u · m · v = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `s`, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let k = self.s.nrows().min(self.s.ncols());
        (0..k).map(|i| self.s[(i, i)]).filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Integer solutions `m_ij` of `e_i = Σ_j m_ij a_j` (rows of the returned `d × n`
    /// matrix), available when every invariant factor is 1 and the rank is full.
    ///
    /// With `U·A·V = [I 0]`, the matrix `M = V[:, 0..d]·U` satisfies `A·M = I`, so the
    /// representation matrix is `Mᵀ`.
    pub fn lattice_representation(&self) -> Option<IntMatrix> {
        let d = self.s.nrows();
        let factors = self.invariant_factors();
        if factors.len() != d || factors.iter().any(|&f| f != 1) {
            return None;
        }
        let cols: Vec<usize> = (0..d).collect();
        let right = self.v.select_cols(&cols).mul(&self.u).ok()?;
        Some(right.transpose())
    }
}

/// Smith normal form with unimodular transforms `u`, `v` such that `u·m·v = s` is
/// diagonal, nonnegative, and each diagonal entry divides the next.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block moves to (t, t)
            let mut best: Option<(usize, usize, i64)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s[(i, j)].abs();
                    if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                        best = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return finish(u, s, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = s[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[(i, t)] / p;
                s.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if s[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = s[(t, j)] / p;
                s.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if s[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block
            let offender =
                (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| s[(i, j)] % p != 0);
            match offender {
                Some((i, _)) => {
                    s.add_row_multiple(t, i, 1);
                    u.add_row_multiple(t, i, 1);
                }
                None => break,
            }
        }
        if s[(t, t)] < 0 {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, s, v)
}

fn finish(mut u: IntMatrix, mut s: IntMatrix, v: IntMatrix) -> SmithForm {
    for t in 0..s.nrows().min(s.ncols()) {
        if s[(t, t)] < 0 {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

/// Column-style Hermite normal form: `m · v = h` with `h` lower triangular in its pivot
/// structure, positive pivots, and entries left of each pivot reduced modulo it.
/// Also returns `v⁻¹`, tracked through the same elementary operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub pivots: Vec<(usize, usize)>,
}

pub fn column_hermite_form(m: &IntMatrix) -> HermiteForm {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut h = m.clone();
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut pc = 0;

    // column ops on h and v, mirrored as inverse row ops on v_inv
    let add_col = |h: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst, src, q| {
        h.add_col_multiple(dst, src, q);
        v.add_col_multiple(dst, src, q);
        vi.add_row_multiple(src, dst, -q);
    };
    let swap_col = |h: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, a, b| {
        h.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };

    for r in 0..rows {
        if pc == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (pc..cols).filter(|&j| h[(r, j)] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let &jmin = nz.iter().min_by_key(|&&j| h[(r, j)].abs()).unwrap();
            swap_col(&mut h, &mut v, &mut v_inv, pc, jmin);
            let p = h[(r, pc)];
            let mut done = true;
            for j in pc + 1..cols {
                let q = h[(r, j)] / p;
                add_col(&mut h, &mut v, &mut v_inv, j, pc, -q);
                if h[(r, j)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pc < cols && h[(r, pc)] != 0 {
            if h[(r, pc)] < 0 {
                h.negate_col(pc);
                v.negate_col(pc);
                v_inv.negate_row(pc);
            }
            let p = h[(r, pc)];
            for j in 0..pc {
                let q = h[(r, j)].div_euclid(p);
                add_col(&mut h, &mut v, &mut v_inv, j, pc, -q);
            }
            pivots.push((r, pc));
            pc += 1;
        }
    }
    HermiteForm { h, v, v_inv, pivots }
}

/// Extends the `k` rows of `top` to a `d × d` unimodular matrix whose first `k` rows are
/// exactly `top`. Possible iff the rows of `top` have all Smith invariant factors equal
/// to 1.
pub fn complete_to_unimodular(top: &IntMatrix) -> Option<IntMatrix> {
    let k = top.nrows();
    let d = top.ncols();
    if k > d {
        return None;
    }
    let hf = column_hermite_form(top);
    // top·v = [L 0] with L lower triangular; unit invariant factors force L = I
    if hf.pivots.len() != k {
        return None;
    }
    for i in 0..k {
        for j in 0..d {
            let expect = i64::from(i == j);
            if hf.h[(i, j)] != expect {
                return None;
            }
        }
    }
    let u = hf.v_inv;
    debug_assert_eq!(u.select_rows(&(0..k).collect::<Vec<_>>()), *top);
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &IntMatrix) -> SmithForm {
        let sf = smith_normal_form(m);
        assert!(sf.u.is_unimodular());
        assert!(sf.v.is_unimodular());
        assert_eq!(sf.u.mul(m).unwrap().mul(&sf.v).unwrap(), sf.s);
        let f = sf.invariant_factors();
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        sf
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]).unwrap();
        let sf = check_smith(&m);
        assert_eq!(sf.s, IntMatrix::diagonal(&[1, 6]));
    }

    #[test]
    fn identity_is_its_own_smith_form() {
        let sf = check_smith(&IntMatrix::identity(2));
        assert_eq!(sf.s, IntMatrix::identity(2));
    }

    #[test]
    fn single_row() {
        let m = IntMatrix::from_rows(&[[4, 6]]).unwrap();
        let sf = check_smith(&m);
        assert_eq!(sf.s, IntMatrix::from_rows(&[[2, 0]]).unwrap());
    }

    #[test]
    fn index_four_sublattice() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 2]]).unwrap();
        assert_eq!(check_smith(&m).invariant_factors(), vec![2, 2]);
    }

    #[test]
    fn representation_of_unit_vectors() {
        let a = IntMatrix::from_rows(&[[1, 0, 0, -1], [0, 1, 0, 1], [0, 0, 1, 1]]).unwrap();
        let sf = check_smith(&a);
        let rep = sf.lattice_representation().unwrap();
        // e_i = Σ_j m_ij a_j  ⇔  A · repᵀ = I
        assert_eq!(a.mul(&rep.transpose()).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn hermite_completion_of_xi() {
        let xi = IntMatrix::from_rows(&[[1, 1, 1]]).unwrap();
        let u = complete_to_unimodular(&xi).unwrap();
        assert!(u.is_unimodular());
        assert_eq!(u.row(0), &[1, 1, 1]);
        let bad = IntMatrix::from_rows(&[[2, 4, 0]]).unwrap();
        assert!(complete_to_unimodular(&bad).is_none());
    }

    #[test]
    fn hermite_tracks_inverse() {
        let m = IntMatrix::from_rows(&[[3, 5, 7], [2, -4, 1]]).unwrap();
        let hf = column_hermite_form(&m);
        assert_eq!(m.mul(&hf.v).unwrap(), hf.h);
        assert_eq!(hf.v.mul(&hf.v_inv).unwrap(), IntMatrix::identity(3));
    }
}
