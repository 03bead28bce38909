use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{normalize_leading, rational_to_string, AlgebraError, Rational, UniPoly};

/// Dense matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// A Jordan chain of `M - lambda I`: `vectors[0]` is the eigenvector and
/// `(M - lambda I) vectors[j] = vectors[j - 1]`. Its length is the size of
/// the corresponding Jordan block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanChain {
    pub vectors: Vec<Vec<Rational>>,
}

impl JordanChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    /// Builds from column vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self, AlgebraError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(AlgebraError::DimensionMismatch("column length".into()));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::int(x)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self - lambda I`.
    pub fn shifted(&self, lambda: &Rational) -> Result<RatMatrix, AlgebraError> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - lambda;
            m.set(i, i, v);
        }
        Ok(m)
    }

    pub fn pow(&self, e: usize) -> Result<RatMatrix, AlgebraError> {
        self.require_square()?;
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    fn require_square(&self) -> Result<(), AlgebraError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Reduced row echelon form and the strictly increasing pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).recip();
            for j in c..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..a.cols {
                    let rj = a.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = a.get(i, j) - &f * rj;
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel; every vector has leading nonzero entry one.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            normalize_leading(&mut v);
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self x = b`, free variables set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Monic `det(lambda I - M)` by the Faddeev-LeVerrier recurrence.
    pub fn char_poly(&self) -> Result<UniPoly, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut aux = Self::zeros(n, n);
        for k in 1..=n {
            // aux_k = M aux_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&aux)?;
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let t = self.mul(&next)?.trace();
            coeffs[n - k] = -t / Rational::from_integer(BigInt::from(k));
            aux = next;
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    /// Basis of `ker (M - lambda I)^n`.
    pub fn generalized_eigenspace(
        &self,
        lambda: &Rational,
    ) -> Result<Vec<Vec<Rational>>, AlgebraError> {
        let shifted = self.shifted(lambda)?;
        if shifted.rank() == self.rows {
            return Ok(Vec::new());
        }
        Ok(shifted.pow(self.rows)?.nullspace())
    }

    /// Jordan chains of `M - lambda I` spanning the generalized eigenspace,
    /// longest first.
    pub fn jordan_chains(&self, lambda: &Rational) -> Result<Vec<JordanChain>, AlgebraError> {
        let nil = self.shifted(lambda)?;
        let n = self.rows;
        if nil.rank() == n {
            return Err(AlgebraError::NotEigenvalue(lambda.clone()));
        }
        // kernels[j] = ker N^j until the chain of kernels stabilizes
        let mut kernels: Vec<Vec<Vec<Rational>>> = vec![Vec::new()];
        let mut power = Self::identity(n);
        loop {
            power = power.mul(&nil)?;
            let k = power.nullspace();
            if k.len() == kernels.last().unwrap().len() {
                break;
            }
            kernels.push(k);
        }
        let height = kernels.len() - 1;

        let mut chains: Vec<JordanChain> = Vec::new();
        for level in (1..=height).rev() {
            let mut span: Vec<Vec<Rational>> = kernels[level - 1].clone();
            for chain in &chains {
                // a chain of length L contributes N^{L-level} top at this level
                span.push(chain.vectors[level - 1].clone());
            }
            let mut rank = rank_of(&span);
            for candidate in &kernels[level] {
                span.push(candidate.clone());
                let r = rank_of(&span);
                if r == rank {
                    span.pop();
                    continue;
                }
                rank = r;
                let mut vectors = vec![candidate.clone()];
                for _ in 1..level {
                    let next = nil.mul_vec(vectors.last().unwrap());
                    vectors.push(next);
                }
                vectors.reverse();
                chains.push(JordanChain { vectors });
            }
        }
        chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
        Ok(chains)
    }
}

/// Rank of a list of equal-length vectors.
pub(crate) fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vectors.to_vec())
        .map(|m| m.rank())
        .unwrap_or(0)
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rational_to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat};
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_ints(rows)
    }

    #[test]
    fn rref_examples() {
        assert_eq!(m(&[&[1, 0], &[0, 1]]).rref(), (m(&[&[1, 0], &[0, 1]]), vec![0, 1]));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).rref(), (m(&[&[1, 1], &[0, 0]]), vec![0]));
        assert_eq!(m(&[&[0, 1], &[0, 0]]).rref(), (m(&[&[0, 1], &[0, 0]]), vec![1]));
    }

    #[test]
    fn nullspace_examples() {
        assert!(m(&[&[1, 0], &[0, 1]]).nullspace().is_empty());
        assert_eq!(m(&[&[1, 1], &[1, 1]]).nullspace(), vec![vec![int(1), int(-1)]]);
        assert_eq!(RatMatrix::zeros(2, 3).nullspace().len(), 3);
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(m(&[&[0, 1], &[0, 0]]).char_poly().unwrap(), UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(m(&[&[1, 0], &[0, -1]]).char_poly().unwrap(), UniPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(m(&[&[5]]).char_poly().unwrap(), UniPoly::from_ints(&[-5, 1]));
        assert_eq!(
            RatMatrix::zeros(2, 3).char_poly(),
            Err(AlgebraError::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn generalized_eigenspace_examples() {
        assert_eq!(m(&[&[0, 1], &[0, 0]]).generalized_eigenspace(&int(0)).unwrap().len(), 2);
        assert_eq!(
            m(&[&[1, 0], &[0, -1]]).generalized_eigenspace(&int(1)).unwrap(),
            vec![vec![int(1), int(0)]]
        );
        assert!(m(&[&[1, 0], &[0, -1]]).generalized_eigenspace(&int(3)).unwrap().is_empty());
    }

    #[test]
    fn jordan_chain_examples() {
        let lens = |mat: RatMatrix, l: i64| -> Vec<usize> {
            mat.jordan_chains(&int(l)).unwrap().iter().map(JordanChain::len).collect()
        };
        assert_eq!(lens(m(&[&[0, 1], &[0, 0]]), 0), vec![2]);
        assert_eq!(lens(RatMatrix::zeros(2, 2), 0), vec![1, 1]);
        assert_eq!(lens(m(&[&[1, 1], &[0, 1]]), 1), vec![2]);
        assert_eq!(
            m(&[&[1, 1], &[0, 1]]).jordan_chains(&int(2)),
            Err(AlgebraError::NotEigenvalue(int(2)))
        );
    }

    #[test]
    fn jordan_chains_mixed_blocks() {
        // blocks J3(0) + J1(0) + J2(2), conjugated by a unimodular matrix
        let j = m(&[
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 2, 1],
            &[0, 0, 0, 0, 0, 2],
        ]);
        let p = m(&[
            &[1, 2, 0, 1, 0, 0],
            &[0, 1, 1, 0, -1, 3],
            &[0, 0, 1, 0, 1, 0],
            &[0, 0, 0, 1, 0, 2],
            &[0, 0, 0, 0, 1, 1],
            &[0, 0, 0, 0, 0, 1],
        ]);
        let pinv = p.inverse().unwrap();
        let a = p.mul(&j).unwrap().mul(&pinv).unwrap();
        let zero: Vec<usize> = a.jordan_chains(&int(0)).unwrap().iter().map(JordanChain::len).collect();
        assert_eq!(zero, vec![3, 1]);
        let two = a.jordan_chains(&int(2)).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].len(), 2);
        let n = a.shifted(&int(2)).unwrap();
        assert!(n.mul_vec(&two[0].vectors[0]).iter().all(Zero::is_zero));
        assert_eq!(n.mul_vec(&two[0].vectors[1]), two[0].vectors[0]);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[int(1), int(2)]).is_none());
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), rows * cols).prop_map(move |v| {
            RatMatrix::new(rows, cols, v.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let (r1, p1) = a.rref();
            let (r2, p2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn nullspace_is_kernel_and_rank_nullity(a in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let ns = a.nullspace();
            for v in &ns {
                prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
                prop_assert!(v.iter().find(|x| !x.is_zero()).unwrap().is_one());
            }
            prop_assert_eq!(a.rank() + ns.len(), a.cols());
            prop_assert_eq!(rank_of(&ns), ns.len());
        }

        #[test]
        fn eigenspace_dimensions_bounded(a in (1usize..5).prop_flat_map(|n| small_matrix(n, n))) {
            let cp = a.char_poly().unwrap();
            let split = cp.rational_roots().unwrap();
            let mut total = 0;
            for (root, mult) in &split.roots {
                let dim = a.generalized_eigenspace(root).unwrap().len();
                prop_assert_eq!(dim, *mult);
                total += dim;
                let chains = a.jordan_chains(root).unwrap();
                prop_assert_eq!(chains.iter().map(JordanChain::len).sum::<usize>(), dim);
                let all: Vec<Vec<Rational>> = chains.iter().flat_map(|c| c.vectors.clone()).collect();
                prop_assert_eq!(rank_of(&all), dim);
            }
            prop_assert!(total <= a.rows());
            prop_assert_eq!(total == a.rows(), split.residual.is_constant());
        }
    }
}
