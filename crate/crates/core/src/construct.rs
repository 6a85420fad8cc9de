//! The rank-8 schemes `D` and `Q` of order `4n` built from a rank-3 input.
//!
//! Both are assembled from `n × n` blocks tensored with the 4×4 permutation
//! matrices of the dihedral group:
//!
//! * `D`: `σ_h = I_n ⊗ h` for `h ∈ H = {1, x², y, x²y}` and
//!   `μ_g = E ⊗ g + Ã_1 ⊗ gy + Ã_2 ⊗ gx²y` for `g ∉ H`;
//! * `Q`: `σ_k = I_n ⊗ k` for `k ∈ K = {1, x, x², x³}` and
//!   `τ_g = Â_1 ⊗ g + Â_2 ⊗ gx²` for `g ∉ K`.
//!
//! Relations are numbered in a fixed order (see [`relation_elements`]) so that
//! character tables can be compared positionally.

use num_bigint::BigInt;
use thiserror::Error;

use crate::dihedral::DihedralElement as G;
use crate::linalg::IntMatrix;
use crate::rank3::Rank3Input;
use crate::scheme::{validate_scheme, AssociationScheme, SchemeError, SchemeMeta, StructureConstants, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("block identity fails: {0}")]
    Precondition(&'static str),
    #[error("variant {0} cannot be constructed")]
    UnsupportedVariant(Variant),
    /// The assembled matrices are not a scheme. Cannot happen for certified input.
    #[error("internal error: constructed relations are not a scheme: {0}")]
    Internal(#[from] SchemeError),
}

/// What the construction consumes: the rank-3 relation matrices (size
/// `n − 1`) and the parameters `a = n − 1`, `b = (n − 2)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank3Blocks {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub a1: IntMatrix,
    pub a2: IntMatrix,
}

impl From<&Rank3Input> for Rank3Blocks {
    fn from(r: &Rank3Input) -> Self {
        Self {
            n: r.n(),
            a: r.a(),
            b: r.b(),
            a1: r.a1(),
            a2: r.a2(),
        }
    }
}

impl Rank3Blocks {
    /// `n = 2`, `a = 1`, `b = 0` with `A_1 = A_2` the 1×1 zero matrix. The
    /// construction then yields the regular representations of D8 and Q8.
    pub fn degenerate() -> Self {
        Self {
            n: 2,
            a: 1,
            b: 0,
            a1: IntMatrix::zeros(1, 1),
            a2: IntMatrix::zeros(1, 1),
        }
    }
}

/// The `n × n` blocks `E`, `Ã_1`, `Ã_2`, `Â_1`, `Â_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockIngredients {
    pub e: IntMatrix,
    pub atilde1: IntMatrix,
    pub atilde2: IntMatrix,
    pub ahat1: IntMatrix,
    pub ahat2: IntMatrix,
}

fn bordered(inner: &IntMatrix, first_row: i64, first_col: i64) -> IntMatrix {
    let n = inner.rows() + 1;
    IntMatrix::from_fn(n, n, |r, c| match (r, c) {
        (0, 0) => BigInt::from(0),
        (0, _) => BigInt::from(first_row),
        (_, 0) => BigInt::from(first_col),
        _ => inner.get(r - 1, c - 1).clone(),
    })
}

/// Builds the blocks and checks every identity the two constructions need.
pub fn build_ingredients(blocks: &Rank3Blocks) -> Result<BlockIngredients, ConstructionError> {
    let m = blocks.a1.rows();
    let zero = IntMatrix::zeros(m, m);
    let e = bordered(&zero, 1, 1);
    let atilde1 = bordered(&blocks.a1, 0, 0);
    let atilde2 = bordered(&blocks.a2, 0, 0);
    let ahat1 = bordered(&blocks.a1, 1, 0);
    let ahat2 = bordered(&blocks.a2, 0, 1);

    let n = m + 1;
    let i = IntMatrix::identity(n);
    let j = IntMatrix::ones(n);
    let a = BigInt::from(blocks.a);
    let b = BigInt::from(blocks.b);
    let check = |ok: bool, what: &'static str| {
        if ok {
            Ok(())
        } else {
            Err(ConstructionError::Precondition(what))
        }
    };
    let (at1, at2, ah1, ah2) = (&atilde1, &atilde2, &ahat1, &ahat2);
    let b_sum = &at1.scale(&b) + &at2.scale(&b);

    check(&(&e + at1) + at2 == &j - &i, "E + At1 + At2 = J - I")?;
    check(&(&i + ah1) + ah2 == j, "I + Ah1 + Ah2 = J")?;
    check(
        &(&(&e * &e) + &(at1 * at2)) + &(at2 * at1) == &i.scale(&a) + &b_sum,
        "E^2 + At1 At2 + At2 At1 = aI + b At1 + b At2",
    )?;
    check(&(at1 * at1) + &(at2 * at2) == b_sum, "At1^2 + At2^2 = b At1 + b At2")?;
    let be = e.scale(&b);
    check(&(&e * at1) + &(at2 * &e) == be, "E At1 + At2 E = bE")?;
    check(&(&e * at2) + &(at1 * &e) == be, "E At2 + At1 E = bE")?;
    check(
        &(ah1 * ah1) + &(ah2 * ah2) == (&j - &i).scale(&b),
        "Ah1^2 + Ah2^2 = b(J - I)",
    )?;
    check(
        &(ah1 * ah2) + &(ah2 * ah1) == &j.scale(&b) + &i.scale(&(&a - &b)),
        "Ah1 Ah2 + Ah2 Ah1 = bJ + (a - b)I",
    )?;

    Ok(BlockIngredients {
        e,
        atilde1,
        atilde2,
        ahat1,
        ahat2,
    })
}

/// Group element indexing each relation, in the fixed relation order:
///
/// * `D`: `σ_1, σ_x², σ_y, σ_x²y, μ_x, μ_x³, μ_xy, μ_x³y`
/// * `Q`: `σ_1, σ_x², σ_x, σ_x³, τ_xy, τ_x³y, τ_y, τ_x²y`
///
/// The first four relations are the `σ` ones in both variants.
pub fn relation_elements(variant: Variant) -> Result<[G; 8], ConstructionError> {
    match variant {
        Variant::D => Ok([G::ONE, G::X2, G::Y, G::X2Y, G::X, G::X3, G::XY, G::X3Y]),
        Variant::Q => Ok([G::ONE, G::X2, G::X, G::X3, G::XY, G::X3Y, G::Y, G::X2Y]),
        other => Err(ConstructionError::UnsupportedVariant(other)),
    }
}

/// Canonical relation names matching [`relation_elements`].
pub fn relation_labels(variant: Variant) -> Result<Vec<String>, ConstructionError> {
    let elements = relation_elements(variant)?;
    let outer = if variant == Variant::D { "mu" } else { "tau" };
    Ok(elements
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            let head = if idx < 4 { "sigma" } else { outer };
            format!("{head}_{g}")
        })
        .collect())
}

/// Index of the relation attached to group element `g`.
pub fn relation_index(variant: Variant, g: G) -> Result<usize, ConstructionError> {
    let elements = relation_elements(variant)?;
    Ok(elements.iter().position(|&e| e == g).expect("bijection onto the group"))
}

/// Runs the construction on raw blocks.
pub fn assemble_from(
    variant: Variant,
    blocks: &Rank3Blocks,
) -> Result<(AssociationScheme, SchemeMeta), ConstructionError> {
    let parts = build_ingredients(blocks)?;
    let elements = relation_elements(variant)?;
    let n = blocks.n as usize;
    let identity = IntMatrix::identity(n);
    let matrices: Vec<IntMatrix> = elements
        .iter()
        .enumerate()
        .map(|(idx, &g)| {
            if idx < 4 {
                return identity.kronecker(&g.matrix());
            }
            match variant {
                Variant::D => {
                    let e = parts.e.kronecker(&g.matrix());
                    let t1 = parts.atilde1.kronecker(&(g * G::Y).matrix());
                    let t2 = parts.atilde2.kronecker(&(g * G::X2Y).matrix());
                    &(&e + &t1) + &t2
                }
                _ => {
                    let h1 = parts.ahat1.kronecker(&g.matrix());
                    let h2 = parts.ahat2.kronecker(&(g * G::X2).matrix());
                    &h1 + &h2
                }
            }
        })
        .collect();
    let scheme = validate_scheme(&matrices)?;
    let meta = SchemeMeta::new(
        variant,
        blocks.n as i64,
        blocks.a as i64,
        blocks.b as i64,
        relation_labels(variant)?,
    );
    Ok((scheme, meta))
}

pub fn build_d(r: &Rank3Input) -> Result<(AssociationScheme, SchemeMeta), ConstructionError> {
    assemble_from(Variant::D, &r.into())
}

pub fn build_q(r: &Rank3Input) -> Result<(AssociationScheme, SchemeMeta), ConstructionError> {
    assemble_from(Variant::Q, &r.into())
}

pub fn build(
    variant: Variant,
    r: &Rank3Input,
) -> Result<(AssociationScheme, SchemeMeta), ConstructionError> {
    assemble_from(variant, &r.into())
}

/// The order-8 thin schemes obtained from [`Rank3Blocks::degenerate`].
pub fn build_degenerate(
    variant: Variant,
) -> Result<(AssociationScheme, SchemeMeta), ConstructionError> {
    assemble_from(variant, &Rank3Blocks::degenerate())
}

/// Structure constants predicted by the product rules of the construction,
/// derived from the group table alone:
///
/// * `D`: `σ_hσ_h' = σ_hh'`, `σ_hμ_g = μ_hg`, `μ_gσ_h = μ_gh`,
///   `μ_gμ_g' = aσ_gg' + bμ_gg'x + bμ_gg'x³`;
/// * `Q`: `σ_kσ_k' = σ_kk'`, `σ_kτ_g = τ_kg`, `τ_gσ_k = τ_gk`,
///   `τ_gτ_g' = aσ_gg'x² + bτ_gg'xy + bτ_gg'x³y`.
///
/// Transposes: `ᵗσ_h = σ_h⁻¹`, `ᵗμ_g = μ_g⁻¹` and `ᵗτ_g = τ_gx²`.
pub fn closed_form_constants(
    variant: Variant,
    a: u64,
    b: u64,
) -> Result<StructureConstants, ConstructionError> {
    let elements = relation_elements(variant)?;
    let idx = |g: G| relation_index(variant, g).expect("valid variant");
    let mut p = vec![0u64; 8 * 8 * 8];
    for (i, &g) in elements.iter().enumerate() {
        for (j, &h) in elements.iter().enumerate() {
            let slot = |k: usize| (i * 8 + j) * 8 + k;
            let gh = g * h;
            if i < 4 || j < 4 {
                p[slot(idx(gh))] += 1;
            } else {
                let (shift, tail1, tail2) = match variant {
                    Variant::D => (G::ONE, G::X, G::X3),
                    _ => (G::X2, G::XY, G::X3Y),
                };
                p[slot(idx(gh * shift))] += a;
                p[slot(idx(gh * tail1))] += b;
                p[slot(idx(gh * tail2))] += b;
            }
        }
    }
    let transpose_map = elements
        .iter()
        .enumerate()
        .map(|(i, &g)| match variant {
            Variant::Q if i >= 4 => idx(g * G::X2),
            _ => idx(g.inverse()),
        })
        .collect();
    Ok(StructureConstants::from_tensor(8, p, transpose_map))
}
