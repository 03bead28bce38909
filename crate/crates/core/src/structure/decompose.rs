use num_traits::Zero;

use super::{ShiftAction, StructureError};
use crate::algebra::{RatMatrix, Rational};
use crate::jet::{canonical_exp_poly, combine, ExpPolyElement, ExpPolyExpr};

/// One block of the exponential-polynomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Eigenvalue of each shift matrix on the block.
    pub lambda: Vec<Rational>,
    /// Nilpotency index of `S_s - lambda_s` on the block.
    pub k: Vec<u32>,
    /// Coordinates of the block elements in the input basis.
    pub vectors: Vec<Vec<Rational>>,
    pub elements: Vec<ExpPolyExpr>,
    pub forms: Vec<ExpPolyElement>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.vectors.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub action: ShiftAction,
    pub blocks: Vec<Block>,
    /// Columns are the new basis vectors in input coordinates.
    pub change_of_basis: RatMatrix,
    pub inverse: RatMatrix,
}

impl BlockDecomposition {
    /// Number of blocks.
    pub fn rho(&self) -> usize {
        self.blocks.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = (&ExpPolyExpr, &ExpPolyElement)> {
        self.blocks.iter().flat_map(|b| b.elements.iter().zip(&b.forms))
    }
}

fn apply(b: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    let n = b.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); n];
    for (col, c) in b.iter().zip(x) {
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(col) {
            *o += v * c;
        }
    }
    out
}

/// Matrix of `s` restricted to the invariant subspace spanned by `b`.
fn restrict(s: &RatMatrix, b: &[Vec<Rational>]) -> RatMatrix {
    let bm = RatMatrix::from_columns(s.rows(), b).expect("consistent shape");
    let cols: Vec<Vec<Rational>> = b
        .iter()
        .map(|v| bm.solve(&s.mul_vec(v)).expect("subspace is invariant"))
        .collect();
    RatMatrix::from_columns(b.len(), &cols).expect("square shape")
}

/// Rational eigenvalues in ascending order, or the factors without rational
/// roots.
fn split_spectrum(m: &RatMatrix) -> Result<Vec<Rational>, StructureError> {
    let split = m.char_poly()?.rational_roots()?;
    if !split.residual.is_constant() {
        return Err(StructureError::UnresolvedSpectrum {
            factors: vec![split.residual.squarefree_part()],
        });
    }
    let mut roots: Vec<Rational> = split.roots.into_iter().map(|(r, _)| r).collect();
    roots.sort();
    Ok(roots)
}

fn nilpotency(s: &RatMatrix, lambda: &Rational, vectors: &[Vec<Rational>]) -> u32 {
    let nil = s.shifted(lambda).expect("square");
    let mut current: Vec<Vec<Rational>> = vectors.to_vec();
    let mut k = 0;
    while current.iter().any(|v| v.iter().any(|x| !x.is_zero())) {
        current = current.iter().map(|v| nil.mul_vec(v)).collect();
        k += 1;
    }
    k
}

/// Regroups the basis into blocks on which every shift acts as
/// `lambda_s + nilpotent`.
///
/// With one selected coordinate the blocks are Jordan chains. With several,
/// they are joint generalized eigenspaces, found by splitting along `S_1`,
/// then refining each piece along `S_2`, and so on. Blocks are ordered by
/// eigenvalue tuple, then by size.
pub fn decompose_shift_action(action: &ShiftAction) -> Result<BlockDecomposition, StructureError> {
    let n = action.basis.len();
    let g = action.matrices.len();
    let identity: Vec<Vec<Rational>> = RatMatrix::identity(n).to_rows();
    let mut pieces: Vec<(Vec<Rational>, Vec<Vec<Rational>>)> = if n == 0 {
        Vec::new()
    } else {
        vec![(Vec::new(), identity)]
    };
    for m in &action.matrices {
        let mut next = Vec::new();
        for (lam, b) in pieces {
            let x = restrict(m, &b);
            for root in split_spectrum(&x)? {
                if g == 1 {
                    for chain in x.jordan_chains(&root)? {
                        let vs = chain.vectors.iter().map(|v| apply(&b, v)).collect();
                        next.push((vec![root.clone()], vs));
                    }
                } else {
                    let sub = x.generalized_eigenspace(&root)?;
                    let vs = sub.iter().map(|v| apply(&b, v)).collect();
                    let mut l = lam.clone();
                    l.push(root.clone());
                    next.push((l, vs));
                }
            }
        }
        pieces = next;
    }
    pieces.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.len().cmp(&b.1.len())));

    let selected = action.selected.coords();
    let mut blocks = Vec::with_capacity(pieces.len());
    for (lambda, vectors) in pieces {
        let elements: Vec<ExpPolyExpr> = vectors.iter().map(|v| combine(&action.basis, v)).collect();
        let forms = elements
            .iter()
            .map(|e| canonical_exp_poly(e, selected))
            .collect::<Result<Vec<_>, _>>()?;
        let k = action
            .matrices
            .iter()
            .zip(&lambda)
            .map(|(m, l)| nilpotency(m, l, &vectors))
            .collect();
        blocks.push(Block {
            lambda,
            k,
            vectors,
            elements,
            forms,
        });
    }
    let columns: Vec<Vec<Rational>> = blocks.iter().flat_map(|b| b.vectors.iter().cloned()).collect();
    let change_of_basis = RatMatrix::from_columns(n, &columns).expect("square shape");
    let inverse = change_of_basis
        .inverse()
        .ok_or_else(|| StructureError::InternalInconsistency("block vectors are not a basis".into()))?;
    Ok(BlockDecomposition {
        action: action.clone(),
        blocks,
        change_of_basis,
        inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, UniPoly};
    use crate::jet::Coord;
    use crate::structure::{shift_matrices, SelectedVariables};

    fn uj(l: u32) -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::jet(l))
    }
    fn y() -> ExpPolyExpr {
        ExpPolyExpr::var(Coord::Y)
    }

    #[test]
    fn heat_blocks() {
        let basis = vec![ExpPolyExpr::one(), y(), uj(0), uj(1)];
        let a = shift_matrices(&basis, &SelectedVariables::y()).unwrap();
        let d = decompose_shift_action(&a).unwrap();
        let sizes: Vec<usize> = d.blocks.iter().map(Block::size).collect();
        assert_eq!(sizes, [1, 1, 2]);
        assert_eq!(d.rho(), 3);
        let rendered: Vec<Vec<String>> = d
            .blocks
            .iter()
            .map(|b| b.elements.iter().map(ToString::to_string).collect())
            .collect();
        assert_eq!(rendered, [vec!["u"], vec!["u_1"], vec!["1", "y"]]);
        assert_eq!(d.blocks[2].k, vec![2]);
        assert_eq!(
            d.change_of_basis.mul(&d.inverse).unwrap(),
            RatMatrix::identity(4)
        );
    }

    #[test]
    fn diagonal_action() {
        let e = |w| ExpPolyExpr::exp(Coord::Y, int(w)).unwrap();
        let a = shift_matrices(&[e(1), e(-1)], &SelectedVariables::y()).unwrap();
        let d = decompose_shift_action(&a).unwrap();
        let lambdas: Vec<Vec<Rational>> = d.blocks.iter().map(|b| b.lambda.clone()).collect();
        assert_eq!(lambdas, [vec![int(-1)], vec![int(1)]]);
        assert!(d.blocks.iter().all(|b| b.k == vec![1]));
    }

    #[test]
    fn empty_basis() {
        let a = shift_matrices(&[], &SelectedVariables::y()).unwrap();
        let d = decompose_shift_action(&a).unwrap();
        assert_eq!(d.rho(), 0);
    }

    #[test]
    fn rotation_is_unresolved() {
        // d/dy on {cos y, sin y}
        let a = ShiftAction::from_matrices(
            SelectedVariables::y(),
            vec![uj(0), uj(1)],
            vec![RatMatrix::from_ints(&[&[0, 1], &[-1, 0]])],
        )
        .unwrap();
        match decompose_shift_action(&a) {
            Err(StructureError::UnresolvedSpectrum { factors }) => {
                assert_eq!(factors, vec![UniPoly::from_ints(&[1, 0, 1])]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_coordinates() {
        let ey = ExpPolyExpr::exp(Coord::Y, int(1)).unwrap();
        let basis = vec![ExpPolyExpr::one(), uj(0), ey.clone(), &ey * &uj(0)];
        let sel = SelectedVariables::new(vec![Coord::Y, Coord::U]).unwrap();
        let d = decompose_shift_action(&shift_matrices(&basis, &sel).unwrap()).unwrap();
        let lambdas: Vec<Vec<Rational>> = d.blocks.iter().map(|b| b.lambda.clone()).collect();
        assert_eq!(lambdas, [vec![int(0), int(0)], vec![int(1), int(0)]]);
        assert_eq!(d.blocks[1].k, vec![1, 2]);
        for (_, f) in d.elements() {
            assert_eq!(f.selected, vec![Coord::Y, Coord::U]);
        }
    }
}
