use super::{AlgebraError, RatMatrix, Rational, UniPoly};

/// Dense matrix over `Q[lambda]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<UniPoly>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<UniPoly>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &UniPoly {
        &self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: UniPoly) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Substitutes a rational value for `lambda`.
    pub fn eval(&self, x: &Rational) -> RatMatrix {
        RatMatrix::new(self.rows, self.cols, self.data.iter().map(|p| p.eval(x)).collect())
            .expect("shape preserved")
    }

    /// Fraction-free elimination; returns the pivot polynomials in the order
    /// they were used. The number of pivots is the rank over `Q(lambda)`.
    ///
    /// Each pivot is, up to sign, a minor of the input, and the last one is a
    /// maximal nonvanishing minor. Away from the roots of the pivots the rank
    /// of the evaluated matrix therefore equals the generic rank. Pivots are
    /// chosen column by column, lowest degree first, ties broken by
    /// coefficients and then by row index. Division by the previous pivot is
    /// always exact (Sylvester's identity), which keeps degrees linear in the
    /// step count.
    pub fn pivots(&self) -> Vec<UniPoly> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prev = UniPoly::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let best = (r..a.rows)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by(|&i, &j| a.get(i, c).pivot_cmp(a.get(j, c)).then(i.cmp(&j)));
            let Some(p) = best else { continue };
            a.swap_rows(p, r);
            let pivot = a.get(r, c).clone();
            for i in (r + 1)..a.rows {
                let lead = a.get(i, c).clone();
                for j in (c + 1)..a.cols {
                    let v = &(&pivot * a.get(i, j)) - &(&lead * a.get(r, j));
                    a.set(i, j, v.exact_div(&prev));
                }
                a.set(i, c, UniPoly::zero());
            }
            prev = pivot.clone();
            pivots.push(pivot);
            r += 1;
        }
        pivots
    }

    /// Rank over `Q(lambda)`.
    pub fn generic_rank(&self) -> usize {
        self.pivots().len()
    }

    /// Rank over `Q[lambda]/(modulus)` if that ring behaves like a field for
    /// this matrix; otherwise a proper factor of the modulus that was
    /// discovered as a zero divisor.
    fn rank_mod(&self, modulus: &UniPoly) -> Result<usize, UniPoly> {
        let mut a: Vec<Vec<UniPoly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).rem(modulus)).collect())
            .collect();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            let g = a[p][c].gcd(modulus);
            if !g.is_constant() {
                return Err(g);
            }
            let inv = a[p][c].inverse_mod(modulus).expect("coprime to modulus");
            a.swap(p, r);
            for j in c..self.cols {
                a[r][j] = (&a[r][j] * &inv).rem(modulus);
            }
            for i in 0..self.rows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in c..self.cols {
                    let v = &a[i][j] - &(&f * &a[r][j]);
                    a[i][j] = v.rem(modulus);
                }
            }
            r += 1;
        }
        Ok(r)
    }

    /// Factors of the squarefree part of `candidate` at whose roots (in an
    /// algebraic closure) the rank falls below `generic_rank`.
    ///
    /// Works over `Q[lambda]/(f)` and splits `f` whenever a pivot turns out to
    /// be a zero divisor, so no factorization over `Q` is needed.
    pub fn rank_drop_factors(&self, candidate: &UniPoly, generic_rank: usize) -> Vec<UniPoly> {
        let mut out = Vec::new();
        if candidate.is_zero() {
            return out;
        }
        let mut work = vec![candidate.squarefree_part()];
        while let Some(f) = work.pop() {
            if f.is_constant() {
                continue;
            }
            match self.rank_mod(&f) {
                Ok(rank) if rank < generic_rank => out.push(f),
                Ok(_) => {}
                Err(g) => {
                    let h = f.exact_div(&g).monic();
                    work.push(g);
                    work.push(h);
                }
            }
        }
        out.sort_by(|a, b| a.pivot_cmp(b));
        out
    }
}

/// Fraction-free pivots of a polynomial matrix.
pub fn poly_matrix_pivots(m: &PolyMatrix) -> Vec<UniPoly> {
    m.pivots()
}
