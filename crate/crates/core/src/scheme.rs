//! Association schemes stored as a color matrix.
//!
//! A scheme of order `n` and rank `d + 1` is an `n × n` matrix of relation
//! indices in `0..=d`. Relation `i` corresponds to the 0/1 adjacency matrix
//! `A_i` with ones exactly where the color is `i`. Storing colors makes the
//! partition axiom structural; the remaining axioms (identity relation,
//! closure under transposition and multiplication) are checked on
//! construction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("expected at least one relation matrix")]
    Empty,
    #[error("relation {relation} is {rows}x{cols}, expected {order}x{order}")]
    BadShape {
        relation: usize,
        rows: usize,
        cols: usize,
        order: usize,
    },
    #[error("relation {relation} has a non 0/1 entry at ({row}, {col})")]
    NotZeroOne { relation: usize, row: usize, col: usize },
    #[error("color matrix has {got} entries, expected {expected}")]
    ColorCount { expected: usize, got: usize },
    #[error("color {color} at ({row}, {col}) is out of range for rank {rank}")]
    ColorOutOfRange {
        color: usize,
        row: usize,
        col: usize,
        rank: usize,
    },
    #[error("condition (1) fails: A_0 is not the identity at ({row}, {col})")]
    IdentityRelation { row: usize, col: usize },
    #[error("condition (2) fails: relations sum to {count} at ({row}, {col}), expected 1")]
    Partition { row: usize, col: usize, count: usize },
    #[error("relation {relation} is empty")]
    EmptyRelation { relation: usize },
    #[error(
        "condition (3) fails: transpose of A_{relation} is not a relation \
         (cells ({row}, {col}) and ({row2}, {col2}))"
    )]
    NotTransposeClosed {
        relation: usize,
        row: usize,
        col: usize,
        row2: usize,
        col2: usize,
    },
    #[error("relation {relation} has row sum {got} in row {row}, expected {expected}")]
    NonConstantValency {
        relation: usize,
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error(
        "condition (3) fails: A_{i} A_{j} is not a combination of relations \
         (cell ({row}, {col}) of color {k} has coefficient {got}, expected {expected})"
    )]
    ProductNotInSpan {
        i: usize,
        j: usize,
        k: usize,
        row: usize,
        col: usize,
        expected: u64,
        got: u64,
    },
    #[error("scheme is not thin: relation {relation} has valency {valency}")]
    NotThin { relation: usize, valency: u64 },
}

/// Intersection numbers `p[i][j][k]` with `A_i A_j = Σ_k p[i][j][k] A_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    p: Vec<u64>,
    transpose_map: Vec<usize>,
}

impl StructureConstants {
    /// `p` is indexed `(i * rank + j) * rank + k`. Panics on a length mismatch.
    pub fn from_tensor(rank: usize, p: Vec<u64>, transpose_map: Vec<usize>) -> Self {
        assert_eq!(p.len(), rank * rank * rank, "tensor length");
        assert_eq!(transpose_map.len(), rank, "transpose map length");
        Self {
            rank,
            p,
            transpose_map,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.p[(i * self.rank + j) * self.rank + k]
    }

    /// Coefficient vector of `A_i A_j` over all relations.
    pub fn product(&self, i: usize, j: usize) -> &[u64] {
        let start = (i * self.rank + j) * self.rank;
        &self.p[start..start + self.rank]
    }

    /// Index `i'` with `A_{i'} = ᵗA_i`.
    pub fn transpose_of(&self, i: usize) -> usize {
        self.transpose_map[i]
    }

    pub fn transpose_map(&self) -> &[usize] {
        &self.transpose_map
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| self.product(i, j) == self.product(j, i)))
    }
}

#[derive(Clone)]
pub struct AssociationScheme {
    order: usize,
    rank: usize,
    colors: Vec<usize>,
    constants: StructureConstants,
}

// Structure constants are derived from the colors.
impl PartialEq for AssociationScheme {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.rank == other.rank && self.colors == other.colors
    }
}

impl Eq for AssociationScheme {}

impl fmt::Debug for AssociationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AssociationScheme")
            .field("order", &self.order)
            .field("rank", &self.rank)
            .finish_non_exhaustive()
    }
}

impl AssociationScheme {
    /// Validates a color matrix (row-major, `order × order`) against every
    /// scheme axiom and certifies its structure constants.
    pub fn from_colors(order: usize, rank: usize, colors: Vec<usize>) -> Result<Self, SchemeError> {
        if colors.len() != order * order {
            return Err(SchemeError::ColorCount {
                expected: order * order,
                got: colors.len(),
            });
        }
        for (idx, &color) in colors.iter().enumerate() {
            let (row, col) = (idx / order, idx % order);
            if color >= rank {
                return Err(SchemeError::ColorOutOfRange {
                    color,
                    row,
                    col,
                    rank,
                });
            }
            if (row == col) != (color == 0) {
                return Err(SchemeError::IdentityRelation { row, col });
            }
        }
        let mut seen = vec![false; rank];
        for &c in &colors {
            seen[c] = true;
        }
        if let Some(relation) = seen.iter().position(|s| !s) {
            return Err(SchemeError::EmptyRelation { relation });
        }
        let constants = compute_structure_constants(order, rank, &colors)?;
        Ok(Self {
            order,
            rank,
            colors,
            constants,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn color(&self, row: usize, col: usize) -> usize {
        self.colors[row * self.order + col]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Adjacency matrix `A_i`.
    pub fn relation_matrix(&self, i: usize) -> IntMatrix {
        IntMatrix::from_fn(self.order, self.order, |r, c| {
            if self.color(r, c) == i {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn relation_matrices(&self) -> Vec<IntMatrix> {
        (0..self.rank).map(|i| self.relation_matrix(i)).collect()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn valencies(&self) -> Vec<u64> {
        let sc = self.structure_constants();
        (0..self.rank).map(|i| sc.get(i, sc.transpose_of(i), 0)).collect()
    }

    pub fn symmetric_relation_count(&self) -> usize {
        let sc = self.structure_constants();
        (0..self.rank).filter(|&i| sc.transpose_of(i) == i).count()
    }

    pub fn is_commutative(&self) -> bool {
        self.structure_constants().is_commutative()
    }

    /// Matrix trace of `A_i`: the order for the identity relation, zero otherwise.
    pub fn relation_trace(&self, i: usize) -> usize {
        (0..self.order).filter(|&v| self.color(v, v) == i).count()
    }

    pub fn is_thin(&self) -> bool {
        self.valencies().iter().all(|&v| v == 1)
    }

    /// Group multiplication table of a thin scheme: `table[i][j]` is the
    /// single relation with `A_i A_j = A_k`.
    pub fn group_table(&self) -> Result<Vec<Vec<usize>>, SchemeError> {
        if let Some((relation, &valency)) =
            self.valencies().iter().enumerate().find(|(_, &v)| v != 1)
        {
            return Err(SchemeError::NotThin { relation, valency });
        }
        let sc = self.structure_constants();
        Ok((0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| {
                        sc.product(i, j)
                            .iter()
                            .position(|&c| c == 1)
                            .expect("thin product is a single relation")
                    })
                    .collect()
            })
            .collect())
    }

    /// Sorted element orders of the group a thin scheme represents.
    pub fn group_element_orders(&self) -> Result<Vec<usize>, SchemeError> {
        let table = self.group_table()?;
        let mut orders: Vec<usize> = (0..self.rank)
            .map(|g| {
                let mut power = g;
                let mut order = 1;
                while power != 0 {
                    power = table[power][g];
                    order += 1;
                }
                order
            })
            .collect();
        orders.sort_unstable();
        Ok(orders)
    }

    pub fn thin_group_profile(&self) -> ThinGroupProfile {
        ThinGroupProfile {
            is_thin: self.is_thin(),
            element_orders: self.group_element_orders().ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinGroupProfile {
    pub is_thin: bool,
    pub element_orders: Option<Vec<usize>>,
}

impl ThinGroupProfile {
    pub fn involution_count(&self) -> Option<usize> {
        self.element_orders
            .as_ref()
            .map(|o| o.iter().filter(|&&k| k == 2).count())
    }
}

/// Color-counting computation of the intersection numbers.
///
/// For every cell `(x, y)` of color `k` the number of `z` with
/// `c(x, z) = i` and `c(z, y) = j` must equal `p[i][j][k]`; this is checked
/// on all cells, which is exactly condition (3) for products. Closure under
/// transposition and constant valencies are checked first so that failures
/// get a specific diagnostic.
fn compute_structure_constants(
    order: usize,
    rank: usize,
    colors: &[usize],
) -> Result<StructureConstants, SchemeError> {
    let color = |r: usize, c: usize| colors[r * order + c];

    let mut transpose_map: Vec<Option<(usize, usize, usize)>> = vec![None; rank];
    for row in 0..order {
        for col in 0..order {
            let (i, t) = (color(row, col), color(col, row));
            match transpose_map[i] {
                None => transpose_map[i] = Some((t, row, col)),
                Some((prev, row2, col2)) if prev != t => {
                    return Err(SchemeError::NotTransposeClosed {
                        relation: i,
                        row,
                        col,
                        row2,
                        col2,
                    })
                }
                Some(_) => {}
            }
        }
    }
    let transpose_map: Vec<usize> = transpose_map
        .into_iter()
        .map(|t| t.expect("every relation is non-empty").0)
        .collect();

    let mut valency = vec![None; rank];
    for row in 0..order {
        let mut counts = vec![0usize; rank];
        for col in 0..order {
            counts[color(row, col)] += 1;
        }
        for (relation, &got) in counts.iter().enumerate() {
            match valency[relation] {
                None => valency[relation] = Some(got),
                Some(expected) if expected != got => {
                    return Err(SchemeError::NonConstantValency {
                        relation,
                        row,
                        expected,
                        got,
                    })
                }
                Some(_) => {}
            }
        }
    }

    let mut p: Vec<Option<Vec<u64>>> = vec![None; rank];
    let mut counts = vec![0u64; rank * rank];
    for row in 0..order {
        for col in 0..order {
            counts.iter_mut().for_each(|c| *c = 0);
            for z in 0..order {
                counts[color(row, z) * rank + color(z, col)] += 1;
            }
            let k = color(row, col);
            match &p[k] {
                None => p[k] = Some(counts.clone()),
                Some(expected) => {
                    if let Some(idx) = (0..rank * rank).find(|&idx| expected[idx] != counts[idx]) {
                        return Err(SchemeError::ProductNotInSpan {
                            i: idx / rank,
                            j: idx % rank,
                            k,
                            row,
                            col,
                            expected: expected[idx],
                            got: counts[idx],
                        });
                    }
                }
            }
        }
    }

    let per_k: Vec<Vec<u64>> = p
        .into_iter()
        .map(|v| v.expect("every relation is non-empty"))
        .collect();
    let mut flat = vec![0u64; rank * rank * rank];
    for (k, table) in per_k.iter().enumerate() {
        for (ij, &v) in table.iter().enumerate() {
            flat[ij * rank + k] = v;
        }
    }
    Ok(StructureConstants {
        rank,
        p: flat,
        transpose_map,
    })
}

/// Validates a list of relation matrices `A_0, …, A_d` and returns the scheme.
pub fn validate_scheme(matrices: &[IntMatrix]) -> Result<AssociationScheme, SchemeError> {
    let first = matrices.first().ok_or(SchemeError::Empty)?;
    let order = first.rows();
    for (relation, m) in matrices.iter().enumerate() {
        if m.rows() != order || m.cols() != order {
            return Err(SchemeError::BadShape {
                relation,
                rows: m.rows(),
                cols: m.cols(),
                order,
            });
        }
        if let Some(idx) = m.entries().iter().position(|e| !(e.is_zero() || e.is_one())) {
            return Err(SchemeError::NotZeroOne {
                relation,
                row: idx / order,
                col: idx % order,
            });
        }
    }
    for row in 0..order {
        for col in 0..order {
            if first.get(row, col).is_one() != (row == col) {
                return Err(SchemeError::IdentityRelation { row, col });
            }
        }
    }
    let mut colors = vec![0usize; order * order];
    for row in 0..order {
        for col in 0..order {
            let hits: Vec<usize> = (0..matrices.len())
                .filter(|&i| matrices[i].get(row, col).is_one())
                .collect();
            if hits.len() != 1 {
                return Err(SchemeError::Partition {
                    row,
                    col,
                    count: hits.len(),
                });
            }
            colors[row * order + col] = hits[0];
        }
    }
    AssociationScheme::from_colors(order, matrices.len(), colors)
}

/// Structure constants obtained from full matrix products `A_i A_j`.
///
/// Independent of the color-counting path in [`AssociationScheme::from_colors`]:
/// the coefficient on `A_k` is read off one cell of color `k` and the whole
/// product is then compared against the resulting linear combination.
pub fn structure_constants_via_products(
    s: &AssociationScheme,
) -> Result<StructureConstants, SchemeError> {
    let rank = s.rank();
    let mats = s.relation_matrices();
    let representative: Vec<(usize, usize)> = (0..rank)
        .map(|k| {
            let idx = s.colors().iter().position(|&c| c == k).expect("non-empty");
            (idx / s.order(), idx % s.order())
        })
        .collect();
    let mut p = vec![0u64; rank * rank * rank];
    for i in 0..rank {
        for j in 0..rank {
            let prod = &mats[i] * &mats[j];
            for (k, &(r, c)) in representative.iter().enumerate() {
                let coeff: u64 = prod
                    .get(r, c)
                    .try_into()
                    .expect("product entries are small non-negative integers");
                p[(i * rank + j) * rank + k] = coeff;
            }
            for row in 0..s.order() {
                for col in 0..s.order() {
                    let k = s.color(row, col);
                    let expected = p[(i * rank + j) * rank + k];
                    let got = u64::try_from(prod.get(row, col)).unwrap_or(u64::MAX);
                    if got != expected {
                        return Err(SchemeError::ProductNotInSpan {
                            i,
                            j,
                            k,
                            row,
                            col,
                            expected,
                            got,
                        });
                    }
                }
            }
        }
    }
    let transpose_map = (0..rank)
        .map(|i| {
            let t = mats[i].transpose();
            mats.iter().position(|m| *m == t).ok_or({
                let (row, col) = representative[i];
                SchemeError::NotTransposeClosed {
                    relation: i,
                    row,
                    col,
                    row2: col,
                    col2: row,
                }
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(StructureConstants {
        rank,
        p,
        transpose_map,
    })
}

/// Which family a scheme belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Rank3,
    D,
    Q,
    Other,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Rank3 => "rank3",
            Variant::D => "D",
            Variant::Q => "Q",
            Variant::Other => "other",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "rank3" => Variant::Rank3,
            "D" => Variant::D,
            "Q" => Variant::Q,
            "other" => Variant::Other,
            _ => return None,
        })
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Provenance of a constructed scheme: its family, its parameters and the
/// canonical name of each relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeMeta {
    pub variant: Variant,
    pub params: BTreeMap<String, i64>,
    pub labels: Vec<String>,
}

impl SchemeMeta {
    pub fn new(variant: Variant, n: i64, a: i64, b: i64, labels: Vec<String>) -> Self {
        let params = [("n", n), ("a", a), ("b", b)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        Self {
            variant,
            params,
            labels,
        }
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}
