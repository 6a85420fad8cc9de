//! Rational structure of the adjacency algebras.
//!
//! The four degree-1 characters are rational and each contributes a copy of
//! the rationals. The degree-2 block is identified from the image of the
//! explicit representation: for `D` the image spans all of `M_2(Q)`, for `Q`
//! it is the quaternion algebra `Q(−1, −a)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::character::{CharacterTable, SchemeRepresentation};
use crate::construct::relation_index;
use crate::dihedral::DihedralElement as G;
use crate::gauss::GaussRational;
use crate::linalg::{span_dimension, GaussMatrix, LinalgError, ScalarField};
use crate::scheme::Variant;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("representation has degree {0}, expected 2")]
    Degree(usize),
    #[error("image of relation {0} has non-rational entries")]
    NotRational(usize),
    #[error("rational span has dimension {0}, expected 4")]
    SpanDimension(usize),
    #[error("quaternion relation fails: {0}")]
    Relation(&'static str),
    #[error("quaternion parameters must be nonzero")]
    ZeroParameter,
    #[error("division criterion only covers negative parameters, got ({r}, {s})")]
    UnsupportedSigns { r: BigRational, s: BigRational },
    #[error("table has {found} degree-1 rows and {blocks} degree-2 rows, expected 4 and 1")]
    TableShape { found: usize, blocks: usize },
    #[error("variant {0} has no rational decomposition")]
    UnsupportedVariant(Variant),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The image of a degree-2 representation spans `M_2(Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullMatrixCertificate {
    pub dimension: usize,
}

/// `Q(r, s)` with matrix witnesses for `i`, `j` and `k = ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionPresentation {
    pub r: BigRational,
    pub s: BigRational,
    pub witness_i: GaussMatrix,
    pub witness_j: GaussMatrix,
    pub witness_k: GaussMatrix,
}

/// How the degree-2 block was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degree2Certificate {
    FullMatrix(FullMatrixCertificate),
    Quaternion(QuaternionPresentation),
}

pub fn certify_full_matrix(
    rep: &SchemeRepresentation,
) -> Result<FullMatrixCertificate, AlgebraError> {
    if rep.degree() != 2 {
        return Err(AlgebraError::Degree(rep.degree()));
    }
    if let Some(idx) = rep.images.iter().position(|m| m.to_rational().is_none()) {
        return Err(AlgebraError::NotRational(idx));
    }
    let dimension = span_dimension(&rep.images, ScalarField::Rationals)?;
    if dimension != 4 {
        return Err(AlgebraError::SpanDimension(dimension));
    }
    Ok(FullMatrixCertificate { dimension })
}

/// Reads the presentation off the `Q` representation: `i = T(σ_x)`,
/// `j = T(τ_y)`, `k = T(τ_xy)`, with `(r, s) = (−1, −a)`.
pub fn certify_quaternion(
    rep: &SchemeRepresentation,
    a: u64,
) -> Result<QuaternionPresentation, AlgebraError> {
    if rep.degree() != 2 {
        return Err(AlgebraError::Degree(rep.degree()));
    }
    let idx = |g| relation_index(Variant::Q, g).expect("Q relation order");
    let witness_i = rep.images[idx(G::X)].clone();
    let witness_j = rep.images[idx(G::Y)].clone();
    let witness_k = rep.images[idx(G::XY)].clone();
    let r = -BigRational::one();
    let s = -BigRational::from_integer(BigInt::from(a));

    let one = GaussMatrix::identity(2);
    let times = |q: &BigRational| one.scale(&GaussRational::from(q.clone()));
    let check = |ok: bool, what: &'static str| {
        if ok {
            Ok(())
        } else {
            Err(AlgebraError::Relation(what))
        }
    };
    check(&witness_i * &witness_i == times(&r), "i^2 = r")?;
    check(&witness_j * &witness_j == times(&s), "j^2 = s")?;
    check(&witness_i * &witness_j == witness_k, "ij = k")?;
    check((&witness_j * &witness_i).neg() == witness_k, "ji = -k")?;
    check(&witness_k * &witness_k == times(&-(&r * &s)), "k^2 = -rs")?;

    let basis = [one, witness_i.clone(), witness_j.clone(), witness_k.clone()];
    let basis_dim = span_dimension(&basis, ScalarField::Rationals)?;
    if basis_dim != 4 {
        return Err(AlgebraError::SpanDimension(basis_dim));
    }
    let mut all = basis.to_vec();
    all.extend(rep.images.iter().cloned());
    let image_dim = span_dimension(&all, ScalarField::Rationals)?;
    if image_dim != 4 {
        return Err(AlgebraError::SpanDimension(image_dim));
    }
    Ok(QuaternionPresentation {
        r,
        s,
        witness_i,
        witness_j,
        witness_k,
    })
}

/// `Q(r, s)` is a division algebra when both parameters are negative. Other
/// sign patterns are not decided here.
pub fn is_division(r: &BigRational, s: &BigRational) -> Result<bool, AlgebraError> {
    if r.is_zero() || s.is_zero() {
        return Err(AlgebraError::ZeroParameter);
    }
    if r.is_negative() && s.is_negative() {
        Ok(true)
    } else {
        Err(AlgebraError::UnsupportedSigns {
            r: r.clone(),
            s: s.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degree2Block {
    FullMatrix2,
    Quaternion {
        r: BigRational,
        s: BigRational,
        division: bool,
    },
}

/// Wedderburn decomposition of the rational adjacency algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSummary {
    pub variant: Variant,
    /// One rational field per degree-1 character.
    pub commutative_part: Vec<&'static str>,
    pub degree2_part: Degree2Block,
}

impl AlgebraSummary {
    pub fn dimension(&self) -> usize {
        self.commutative_part.len() + 4
    }
}

impl fmt::Display for AlgebraSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{} = ", self.variant)?;
        for field in &self.commutative_part {
            write!(f, "{field} + ")?;
        }
        match &self.degree2_part {
            Degree2Block::FullMatrix2 => write!(f, "M2(Q)"),
            Degree2Block::Quaternion { r, s, division } => {
                write!(f, "Quaternion({r},{s})")?;
                if *division {
                    write!(f, " [division]")?;
                }
                Ok(())
            }
        }
    }
}

pub fn algebra_summary(
    variant: Variant,
    table: &CharacterTable,
    cert: &Degree2Certificate,
) -> Result<AlgebraSummary, AlgebraError> {
    if !matches!(variant, Variant::D | Variant::Q) {
        return Err(AlgebraError::UnsupportedVariant(variant));
    }
    let degrees = table.degrees();
    let linear = degrees.iter().filter(|d| d.is_one()).count();
    let blocks = degrees
        .iter()
        .filter(|d| **d == BigRational::from_integer(BigInt::from(2)))
        .count();
    if linear != 4 || blocks != 1 {
        return Err(AlgebraError::TableShape {
            found: linear,
            blocks,
        });
    }
    let degree2_part = match cert {
        Degree2Certificate::FullMatrix(c) => {
            if c.dimension != 4 {
                return Err(AlgebraError::SpanDimension(c.dimension));
            }
            Degree2Block::FullMatrix2
        }
        Degree2Certificate::Quaternion(p) => Degree2Block::Quaternion {
            r: p.r.clone(),
            s: p.s.clone(),
            division: is_division(&p.r, &p.s)?,
        },
    };
    Ok(AlgebraSummary {
        variant,
        commutative_part: vec!["Q"; linear],
        degree2_part,
    })
}
