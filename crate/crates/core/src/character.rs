//! Character tables, multiplicities and Frobenius–Schur indicators of the
//! rank-8 pair.
//!
//! Tables are instantiated in closed form and then certified against the
//! structure constants of a built scheme: degree-1 rows must be algebra
//! homomorphisms, the degree-2 row must be the trace of an explicit 2×2
//! representation, and the multiplicities must be the unique solution of the
//! standard-character equations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::construct::relation_index;
use crate::dihedral::DihedralElement as G;
use crate::gauss::GaussRational;
use crate::linalg::{solve_exact, vector_rank, GaussMatrix, LinalgError, Matrix, RatMatrix};
use crate::scheme::{AssociationScheme, SchemeMeta, StructureConstants, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("a = {a} must be 1 or congruent to 3 mod 4")]
    BadParameter { a: u64 },
    #[error("no closed form for variant {0}")]
    UnsupportedVariant(Variant),
    #[error("scheme metadata lacks parameter {0}")]
    MissingParameter(&'static str),
    #[error("table is {rows}x{cols}, scheme has rank {rank}")]
    Shape { rows: usize, cols: usize, rank: usize },
    #[error("row {row} has unsupported degree {degree}")]
    UnsupportedDegree { row: usize, degree: BigRational },
    #[error("degree-1 row {row} is not multiplicative on A_{i} A_{j}")]
    NotMultiplicative { row: usize, i: usize, j: usize },
    #[error("row {row} differs from the representation trace at column {col}")]
    TraceMismatch { row: usize, col: usize },
    #[error("character rows are linearly dependent (rank {rank} < {rows})")]
    DependentRows { rank: usize, rows: usize },
    #[error("multiplicity system: {0}")]
    MultiplicitySystem(#[from] LinalgError),
    #[error("multiplicity of row {row} is {found}, solution gives {expected}")]
    Multiplicity {
        row: usize,
        expected: BigRational,
        found: BigRational,
    },
    #[error("sum of m_i chi_i(A_0) is {found}, scheme order is {order}")]
    Dimension { found: BigRational, order: usize },
    #[error("representation is not a homomorphism on A_{i} A_{j}")]
    NotHomomorphism { i: usize, j: usize },
    #[error("indicator sum {lhs} differs from symmetric relation count {rhs}")]
    IndicatorSum { lhs: BigRational, rhs: usize },
}

/// Character values `χ_i(A_j)` for each irreducible character (rows) and
/// relation (columns), with multiplicities and Frobenius–Schur indicators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub values: RatMatrix,
    pub multiplicities: Vec<BigRational>,
    pub indicators: Vec<i32>,
}

impl CharacterTable {
    pub fn degree(&self, row: usize) -> &BigRational {
        self.values.get(row, 0)
    }

    pub fn degrees(&self) -> Vec<BigRational> {
        (0..self.values.rows()).map(|r| self.degree(r).clone()).collect()
    }

    pub fn row_count(&self) -> usize {
        self.values.rows()
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn check_parameter(a: u64) -> Result<(), CharacterError> {
    if a == 1 || a % 4 == 3 {
        Ok(())
    } else {
        Err(CharacterError::BadParameter { a })
    }
}

/// The closed-form table in the fixed relation order. The value grid is the
/// same for both variants; only the indicator of the degree-2 character
/// differs (`+1` for `D`, `−1` for `Q`).
pub fn closed_form_table(variant: Variant, a: u64) -> Result<CharacterTable, CharacterError> {
    check_parameter(a)?;
    let nu5 = match variant {
        Variant::D => 1,
        Variant::Q => -1,
        other => return Err(CharacterError::UnsupportedVariant(other)),
    };
    let a = a as i64;
    let grid: [[i64; 8]; 5] = [
        [1, 1, 1, 1, a, a, a, a],
        [1, 1, -1, -1, a, a, -a, -a],
        [1, 1, 1, 1, -1, -1, -1, -1],
        [1, 1, -1, -1, -1, -1, 1, 1],
        [2, -2, 0, 0, 0, 0, 0, 0],
    ];
    let flat: Vec<i64> = grid.iter().flatten().copied().collect();
    Ok(CharacterTable {
        values: RatMatrix::from_i64(5, 8, &flat),
        multiplicities: [1, 1, a, a, a + 1].into_iter().map(rat).collect(),
        indicators: vec![1, 1, 1, 1, nu5],
    })
}

/// A matrix representation given by the image of every relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeRepresentation {
    pub images: Vec<GaussMatrix>,
}

impl SchemeRepresentation {
    pub fn degree(&self) -> usize {
        self.images.first().map_or(0, GaussMatrix::rows)
    }

    /// Checks `T(A_i)T(A_j) = Σ_k p[i][j][k] T(A_k)` for all pairs and `T(A_0) = I`.
    pub fn check_homomorphism(&self, sc: &StructureConstants) -> Result<(), CharacterError> {
        let rank = sc.rank();
        if self.images.len() != rank || self.images[0] != GaussMatrix::identity(self.degree()) {
            return Err(CharacterError::NotHomomorphism { i: 0, j: 0 });
        }
        let refs: Vec<&GaussMatrix> = self.images.iter().collect();
        for i in 0..rank {
            for j in 0..rank {
                let coeffs: Vec<GaussRational> = sc
                    .product(i, j)
                    .iter()
                    .map(|&c| GaussRational::from(c as i64))
                    .collect();
                let lhs = &self.images[i] * &self.images[j];
                let rhs = Matrix::linear_combination(&coeffs, &refs)?;
                if lhs != rhs {
                    return Err(CharacterError::NotHomomorphism { i, j });
                }
            }
        }
        Ok(())
    }

    /// Traces of all images.
    pub fn character(&self) -> Vec<GaussRational> {
        self.images.iter().map(GaussMatrix::trace).collect()
    }
}

fn gauss2(entries: [(i64, i64); 4]) -> GaussMatrix {
    GaussMatrix::from_fn(2, 2, |r, c| {
        let (re, im) = entries[r * 2 + c];
        GaussRational::from_ints(re, im)
    })
}

/// Degree-2 images of all eight relations, extended from the generators
/// through the product rules of the construction.
///
/// * `D`: `T(σ_x²) = −I`, `T(σ_y) = diag(1, −1)`, `T(μ_x) = [[0, −1], [a, 0]]`
/// * `Q`: `T(σ_x) = diag(i, −i)`, `T(τ_y) = [[0, −1], [a, 0]]`
pub fn degree2_images(variant: Variant, a: u64) -> Result<Vec<GaussMatrix>, CharacterError> {
    check_parameter(a)?;
    let a = a as i64;
    let one = GaussMatrix::identity(2);
    let outer = gauss2([(0, 0), (-1, 0), (a, 0), (0, 0)]);
    let mut images = vec![GaussMatrix::zeros(2, 2); 8];
    let mut put = |g: G, m: GaussMatrix| images[relation_index(variant, g).expect("D or Q")] = m;
    match variant {
        Variant::D => {
            let sx2 = one.neg();
            let sy = gauss2([(1, 0), (0, 0), (0, 0), (-1, 0)]);
            put(G::ONE, one.clone());
            put(G::X2, sx2.clone());
            put(G::Y, sy.clone());
            put(G::X2Y, &sx2 * &sy);
            put(G::X, outer.clone());
            put(G::X3, &outer * &sx2);
            put(G::XY, &outer * &sy);
            put(G::X3Y, &(&outer * &sx2) * &sy);
        }
        Variant::Q => {
            let sx = gauss2([(0, 1), (0, 0), (0, 0), (0, -1)]);
            let sx2 = &sx * &sx;
            let sx3 = &sx2 * &sx;
            put(G::ONE, one.clone());
            put(G::X, sx.clone());
            put(G::X2, sx2.clone());
            put(G::X3, sx3.clone());
            put(G::Y, outer.clone());
            put(G::XY, &sx * &outer);
            put(G::X2Y, &sx2 * &outer);
            put(G::X3Y, &sx3 * &outer);
        }
        other => return Err(CharacterError::UnsupportedVariant(other)),
    }
    Ok(images)
}

/// The degree-2 representation, certified against the structure constants
/// of the built scheme.
pub fn rep_degree2(
    variant: Variant,
    a: u64,
    sc: &StructureConstants,
) -> Result<SchemeRepresentation, CharacterError> {
    let rep = SchemeRepresentation {
        images: degree2_images(variant, a)?,
    };
    rep.check_homomorphism(sc)?;
    Ok(rep)
}

/// Evidence that a table passed [`verify_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCertificate {
    pub degree_one_rows: Vec<usize>,
    pub degree_two_rows: Vec<usize>,
    pub multiplicities: Vec<BigRational>,
    pub dimension: BigRational,
}

fn meta_a(meta: &SchemeMeta) -> Result<u64, CharacterError> {
    meta.param("a")
        .and_then(|a| u64::try_from(a).ok())
        .ok_or(CharacterError::MissingParameter("a"))
}

/// Certifies `t` as the character table of `s`.
pub fn verify_table(
    s: &AssociationScheme,
    meta: &SchemeMeta,
    t: &CharacterTable,
) -> Result<TableCertificate, CharacterError> {
    let rank = s.rank();
    let rows = t.row_count();
    if t.values.cols() != rank || t.multiplicities.len() != rows {
        return Err(CharacterError::Shape {
            rows,
            cols: t.values.cols(),
            rank,
        });
    }
    let sc = s.structure_constants();
    let mut degree_one_rows = Vec::new();
    let mut degree_two_rows = Vec::new();
    for row in 0..rows {
        let degree = t.degree(row);
        if degree.is_one() {
            degree_one_rows.push(row);
        } else if *degree == rat(2) {
            degree_two_rows.push(row);
        } else {
            return Err(CharacterError::UnsupportedDegree {
                row,
                degree: degree.clone(),
            });
        }
    }

    for &row in &degree_one_rows {
        let chi = t.values.row(row);
        for i in 0..rank {
            for j in 0..rank {
                let rhs = sc
                    .product(i, j)
                    .iter()
                    .zip(chi)
                    .fold(BigRational::zero(), |acc, (&p, v)| acc + rat(p as i64) * v);
                if &chi[i] * &chi[j] != rhs {
                    return Err(CharacterError::NotMultiplicative { row, i, j });
                }
            }
        }
    }

    if !degree_two_rows.is_empty() {
        let rep = rep_degree2(meta.variant, meta_a(meta)?, sc)?;
        let traces = rep.character();
        for &row in &degree_two_rows {
            let chi = t.values.row(row);
            if let Some(col) = (0..rank).find(|&c| GaussRational::from(chi[c].clone()) != traces[c]) {
                return Err(CharacterError::TraceMismatch { row, col });
            }
        }
    }

    let vectors: Vec<Vec<BigRational>> = (0..rows).map(|r| t.values.row(r).to_vec()).collect();
    let row_rank = vector_rank(&vectors);
    if row_rank < rows {
        return Err(CharacterError::DependentRows {
            rank: row_rank,
            rows,
        });
    }

    // Σ_i m_i χ_i(A_j) = trace(A_j)
    let system = t.values.transpose();
    let traces = RatMatrix::from_fn(rank, 1, |j, _| rat(s.relation_trace(j) as i64));
    let solution = solve_exact(&system, &traces)?;
    for row in 0..rows {
        let expected = solution.x.get(row, 0);
        if *expected != t.multiplicities[row] {
            return Err(CharacterError::Multiplicity {
                row,
                expected: expected.clone(),
                found: t.multiplicities[row].clone(),
            });
        }
    }

    let dimension = (0..rows).fold(BigRational::zero(), |acc, r| {
        acc + &t.multiplicities[r] * t.degree(r)
    });
    if dimension != rat(s.order() as i64) {
        return Err(CharacterError::Dimension {
            found: dimension,
            order: s.order(),
        });
    }

    Ok(TableCertificate {
        degree_one_rows,
        degree_two_rows,
        multiplicities: t.multiplicities.clone(),
        dimension,
    })
}

/// Frobenius–Schur indicator of row `row`:
/// `ν(χ) = m_χ / (N·χ(A_0)) · Σ_j χ(A_j²) / n_j`, where `N` is the order of
/// the scheme and `χ(A_j²) = Σ_k p[j][j][k] χ(A_k)`.
pub fn fs_indicator(s: &AssociationScheme, t: &CharacterTable, row: usize) -> BigRational {
    let sc = s.structure_constants();
    let chi = t.values.row(row);
    let valencies = s.valencies();
    let sum = (0..s.rank()).fold(BigRational::zero(), |acc, j| {
        let square = sc
            .product(j, j)
            .iter()
            .zip(chi)
            .fold(BigRational::zero(), |acc, (&p, v)| acc + rat(p as i64) * v);
        acc + square / rat(valencies[j] as i64)
    });
    let scale = &t.multiplicities[row] / (rat(s.order() as i64) * t.degree(row));
    scale * sum
}

pub fn computed_indicators(s: &AssociationScheme, t: &CharacterTable) -> Vec<BigRational> {
    (0..t.row_count()).map(|r| fs_indicator(s, t, r)).collect()
}

/// Both sides of `Σ ν(χ)χ(A_0) = #{symmetric relations}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorSumCertificate {
    pub indicator_sum: BigRational,
    pub symmetric_relations: usize,
}

/// Checks the indicator sum, using indicators computed from the scheme.
pub fn fs_sum_check(
    s: &AssociationScheme,
    t: &CharacterTable,
) -> Result<IndicatorSumCertificate, CharacterError> {
    let lhs = computed_indicators(s, t)
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (r, nu)| acc + nu * t.degree(r));
    let rhs = s.symmetric_relation_count();
    if lhs != rat(rhs as i64) {
        return Err(CharacterError::IndicatorSum { lhs, rhs });
    }
    Ok(IndicatorSumCertificate {
        indicator_sum: lhs,
        symmetric_relations: rhs,
    })
}

/// Tab-separated table: a header of relation labels, one row per character
/// with integer values, then the `m` and `nu` columns.
pub fn table_tsv(t: &CharacterTable, labels: &[String], row_prefix: &str) -> String {
    let mut out = String::from("char");
    for label in labels {
        out.push('\t');
        out.push_str(label);
    }
    out.push_str("\tm\tnu\n");
    for r in 0..t.row_count() {
        out.push_str(&format!("{row_prefix}_{}", r + 1));
        for v in t.values.row(r) {
            out.push('\t');
            out.push_str(&v.to_string());
        }
        out.push_str(&format!("\t{}\t{}\n", t.multiplicities[r], t.indicators[r]));
    }
    out
}

/// Converts an exact indicator to the integer stored in a table, if it is one.
pub fn indicator_value(nu: &BigRational) -> Option<i32> {
    if nu.is_integer() {
        nu.to_integer().to_i32()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, build_degenerate};
    use crate::rank3::paley_tournament;

    fn built(variant: Variant, q: u64) -> (AssociationScheme, SchemeMeta) {
        build(variant, &paley_tournament(q).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_d3() {
        let t = closed_form_table(Variant::D, 3).unwrap();
        assert_eq!(t.values.row(4), RatMatrix::from_i64(1, 8, &[2, -2, 0, 0, 0, 0, 0, 0]).row(0));
        let m: Vec<_> = [1, 1, 3, 3, 4].into_iter().map(rat).collect();
        assert_eq!(t.multiplicities, m);
    }

    #[test]
    fn closed_form_grids_agree() {
        for a in [1, 3, 7, 11, 19, 23] {
            let d = closed_form_table(Variant::D, a).unwrap();
            let q = closed_form_table(Variant::Q, a).unwrap();
            assert_eq!(d.values, q.values);
            assert_eq!(d.multiplicities, q.multiplicities);
            assert_eq!(&d.indicators[..4], &q.indicators[..4]);
            assert_ne!(d.indicators[4], q.indicators[4]);
        }
        assert_eq!(closed_form_table(Variant::Q, 3).unwrap().indicators[4], -1);
    }

    #[test]
    fn closed_form_rejects_bad_a() {
        assert_eq!(
            closed_form_table(Variant::D, 5),
            Err(CharacterError::BadParameter { a: 5 })
        );
        assert!(closed_form_table(Variant::Rank3, 3).is_err());
    }

    #[test]
    fn degree2_traces_give_last_row() {
        for variant in [Variant::D, Variant::Q] {
            let (s, _) = built(variant, 3);
            let rep = rep_degree2(variant, 3, s.structure_constants()).unwrap();
            let expected: Vec<_> = [2, -2, 0, 0, 0, 0, 0, 0].into_iter().map(GaussRational::from).collect();
            assert_eq!(rep.character(), expected);
        }
    }

    #[test]
    fn q_representation_relations() {
        let images = degree2_images(Variant::Q, 3).unwrap();
        let idx = |g| relation_index(Variant::Q, g).unwrap();
        let (sx, ty, txy) = (&images[idx(G::X)], &images[idx(G::Y)], &images[idx(G::XY)]);
        let one = GaussMatrix::identity(2);
        assert_eq!(ty * ty, one.scale(&GaussRational::from(-3)));
        assert_eq!(sx * ty, *txy);
        assert_eq!((ty * sx).neg(), *txy);
        // T'(τ_xy) = [[0, −i], [−3i, 0]]
        assert_eq!(*txy, gauss2([(0, 0), (0, -1), (0, -3), (0, 0)]));
    }

    #[test]
    fn wrong_representation_is_rejected() {
        let (s, _) = built(Variant::D, 3);
        let mut rep = SchemeRepresentation {
            images: degree2_images(Variant::D, 3).unwrap(),
        };
        rep.images.swap(4, 5);
        assert!(matches!(
            rep.check_homomorphism(s.structure_constants()),
            Err(CharacterError::NotHomomorphism { .. })
        ));
        // Q images do not represent D
        let q_images = SchemeRepresentation {
            images: degree2_images(Variant::Q, 3).unwrap(),
        };
        assert!(q_images.check_homomorphism(s.structure_constants()).is_err());
    }

    #[test]
    fn table_certifies() {
        for variant in [Variant::D, Variant::Q] {
            let (s, meta) = built(variant, 3);
            let t = closed_form_table(variant, 3).unwrap();
            let cert = verify_table(&s, &meta, &t).unwrap();
            assert_eq!(cert.degree_one_rows, vec![0, 1, 2, 3]);
            assert_eq!(cert.degree_two_rows, vec![4]);
            assert_eq!(cert.dimension, rat(16));
        }
    }

    #[test]
    fn swapped_rows_still_certify() {
        let (s, meta) = built(Variant::D, 3);
        let mut t = closed_form_table(Variant::D, 3).unwrap();
        let rows: Vec<Vec<BigRational>> = (0..5).map(|r| t.values.row(r).to_vec()).collect();
        let order = [0, 3, 2, 1, 4];
        let permuted: Vec<Vec<BigRational>> = order.iter().map(|&r| rows[r].clone()).collect();
        t.values = RatMatrix::from_rows(&permuted);
        t.multiplicities = order.iter().map(|&r| t.multiplicities[r].clone()).collect();
        assert!(verify_table(&s, &meta, &t).is_ok());
        assert_ne!(t, closed_form_table(Variant::D, 3).unwrap());
    }

    #[test]
    fn perturbed_entries_fail() {
        let (s, meta) = built(Variant::D, 3);
        let base = closed_form_table(Variant::D, 3).unwrap();
        for row in 0..5 {
            for col in 1..8 {
                let mut rows: Vec<Vec<BigRational>> =
                    (0..5).map(|r| base.values.row(r).to_vec()).collect();
                rows[row][col] = &rows[row][col] + rat(1);
                let t = CharacterTable {
                    values: RatMatrix::from_rows(&rows),
                    ..base.clone()
                };
                let err = verify_table(&s, &meta, &t).unwrap_err();
                assert!(
                    matches!(
                        err,
                        CharacterError::NotMultiplicative { .. } | CharacterError::TraceMismatch { .. }
                    ),
                    "row {row} col {col}: {err:?}"
                );
            }
        }
        let t = CharacterTable {
            multiplicities: [1, 1, 3, 4, 4].into_iter().map(rat).collect(),
            ..base
        };
        assert!(matches!(
            verify_table(&s, &meta, &t),
            Err(CharacterError::Multiplicity { row: 3, .. })
        ));
    }

    #[test]
    fn indicators() {
        for (variant, expected) in [(Variant::D, [1, 1, 1, 1, 1]), (Variant::Q, [1, 1, 1, 1, -1])] {
            for q in [3, 7] {
                let (s, _) = built(variant, q);
                let t = closed_form_table(variant, q).unwrap();
                let nus: Vec<i32> = computed_indicators(&s, &t)
                    .iter()
                    .map(|nu| indicator_value(nu).unwrap())
                    .collect();
                assert_eq!(nus, expected);
            }
        }
    }

    #[test]
    fn trivial_character_has_indicator_one() {
        // The valency row of any scheme is a degree-1 character with multiplicity 1.
        let (s, _) = built(Variant::Q, 7);
        let vals: Vec<i64> = s.valencies().iter().map(|&v| v as i64).collect();
        let t = CharacterTable {
            values: RatMatrix::from_i64(1, 8, &vals),
            multiplicities: vec![rat(1)],
            indicators: vec![1],
        };
        assert_eq!(fs_indicator(&s, &t, 0), rat(1));
    }

    #[test]
    fn indicator_sums() {
        for (variant, count) in [(Variant::D, 6), (Variant::Q, 2)] {
            let (s, _) = built(variant, 3);
            let t = closed_form_table(variant, 3).unwrap();
            let cert = fs_sum_check(&s, &t).unwrap();
            assert_eq!(cert.symmetric_relations, count);
            assert_eq!(cert.indicator_sum, rat(count as i64));
        }
        let (d, _) = build_degenerate(Variant::D).unwrap();
        let t = closed_form_table(Variant::D, 1).unwrap();
        assert_eq!(fs_sum_check(&d, &t).unwrap().indicator_sum, rat(6));
    }

    #[test]
    fn tsv_layout() {
        let t = closed_form_table(Variant::D, 3).unwrap();
        let labels = crate::construct::relation_labels(Variant::D).unwrap();
        let tsv = table_tsv(&t, &labels, "chi");
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(
            lines[0],
            "char\tsigma_1\tsigma_x2\tsigma_y\tsigma_x2y\tmu_x\tmu_x3\tmu_xy\tmu_x3y\tm\tnu"
        );
        assert_eq!(lines[2], "chi_2\t1\t1\t-1\t-1\t3\t3\t-3\t-3\t1\t1");
        assert_eq!(lines[5], "chi_5\t2\t-2\t0\t0\t0\t0\t0\t0\t4\t1");
    }

    use proptest::prelude::*;

    proptest! {
        // For every admissible a the two tables share a value grid, the
        // multiplicities sum to the dimension and only the last indicator differs.
        #[test]
        fn closed_form_pattern(k in 0u64..200) {
            let a = 4 * k + 3;
            let d = closed_form_table(Variant::D, a).unwrap();
            let q = closed_form_table(Variant::Q, a).unwrap();
            prop_assert_eq!(&d.values, &q.values);
            prop_assert_eq!(&d.multiplicities, &q.multiplicities);
            let dim = d
                .multiplicities
                .iter()
                .zip(d.degrees())
                .fold(BigRational::zero(), |acc, (m, deg)| acc + m * deg);
            prop_assert_eq!(dim, rat(4 * (a as i64 + 1)));
            prop_assert_eq!(&d.indicators[..4], &q.indicators[..4]);
            prop_assert_eq!((d.indicators[4], q.indicators[4]), (1, -1));
        }
    }
}
