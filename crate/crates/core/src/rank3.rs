//! Non-symmetric rank-3 association schemes, i.e. doubly regular tournaments.
//!
//! Relation 1 is the tournament `A_1` and relation 2 its transpose. A scheme
//! of order `n − 1` determines the parameters `a = n − 1` and
//! `b = (n − 2)/2` used by the rank-8 construction.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::scheme::{AssociationScheme, SchemeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rank3Error {
    #[error("q = {q} must be a prime congruent to 3 mod 4")]
    BadPaleyParameter { q: u64 },
    #[error("expected rank 3, found rank {rank}")]
    NotRank3 { rank: usize },
    #[error("rank-3 scheme is symmetric (A_1 equals its transpose)")]
    Symmetric,
    #[error("transpose of A_1 is not A_2")]
    NotTransposePair,
    #[error("order {order} is not congruent to 3 mod 4")]
    OrderNotThreeModFour { order: usize },
    #[error("rank-3 identities fail: {}", format_failures(.0))]
    Identity(Vec<IdentityFailure>),
    #[error("not an association scheme: {0}")]
    Scheme(#[from] SchemeError),
    #[error("not a skew-Hadamard matrix: {0}")]
    NotSkewHadamard(String),
}

fn format_failures(failures: &[IdentityFailure]) -> String {
    failures
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A violated clause of the rank-3 product identities:
/// (1) `A_1² = ((b−1)/2)A_1 + ((b+1)/2)A_2`,
/// (2) `A_2² = ((b+1)/2)A_1 + ((b−1)/2)A_2`,
/// (3) `A_1A_2 = A_2A_1 = bA_0 + ((b−1)/2)(A_1 + A_2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub clause: u8,
    pub product: &'static str,
    pub relation: usize,
    pub row: usize,
    pub col: usize,
    pub expected: BigInt,
    pub found: BigInt,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "identity ({}) {}: coefficient on A_{} at ({}, {}) is {}, expected {}",
            self.clause, self.product, self.relation, self.row, self.col, self.found, self.expected
        )
    }
}

/// A certified non-symmetric rank-3 scheme together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank3Input {
    scheme: AssociationScheme,
    n: u64,
    a: u64,
    b: u64,
}

impl Rank3Input {
    pub fn scheme(&self) -> &AssociationScheme {
        &self.scheme
    }

    /// The order of the scheme plus one.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// The tournament matrix `A_1`.
    pub fn a1(&self) -> IntMatrix {
        self.scheme.relation_matrix(1)
    }

    /// `A_2 = ᵗA_1`.
    pub fn a2(&self) -> IntMatrix {
        self.scheme.relation_matrix(2)
    }
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// The Paley tournament on `GF(q)`: `i → j` iff `j − i` is a nonzero square.
pub fn paley_tournament(q: u64) -> Result<Rank3Input, Rank3Error> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Rank3Error::BadPaleyParameter { q });
    }
    let residues = quadratic_residues(q);
    let order = q as usize;
    let colors = (0..order * order)
        .map(|idx| {
            let (i, j) = ((idx / order) as u64, (idx % order) as u64);
            let diff = (j + q - i) % q;
            if diff == 0 {
                0
            } else if residues[diff as usize] {
                1
            } else {
                2
            }
        })
        .collect::<Vec<_>>();
    validate_rank3_colors(order, &colors)
}

/// `residues[k]` is true iff `k` is a nonzero square mod `q`.
fn quadratic_residues(q: u64) -> Vec<bool> {
    let mut residues = vec![false; q as usize];
    for x in 1..q {
        residues[(x * x % q) as usize] = true;
    }
    residues
}

/// Certifies an already validated scheme as a non-symmetric rank-3 input.
pub fn validate_rank3(s: &AssociationScheme) -> Result<Rank3Input, Rank3Error> {
    validate_rank3_colors(s.order(), s.colors())
}

/// Certifies a raw color matrix as a non-symmetric rank-3 scheme.
///
/// Unlike [`AssociationScheme::from_colors`] this checks the rank-3 product
/// identities directly, so an arbitrary tournament is rejected with the
/// failing identities named rather than with a generic axiom violation.
pub fn validate_rank3_colors(order: usize, colors: &[usize]) -> Result<Rank3Input, Rank3Error> {
    if colors.len() != order * order {
        return Err(SchemeError::ColorCount {
            expected: order * order,
            got: colors.len(),
        }
        .into());
    }
    let rank = colors.iter().max().map_or(0, |&m| m + 1);
    if rank != 3 {
        return Err(Rank3Error::NotRank3 { rank });
    }
    let color = |r: usize, c: usize| colors[r * order + c];
    for r in 0..order {
        for c in 0..order {
            if (r == c) != (color(r, c) == 0) {
                return Err(SchemeError::IdentityRelation { row: r, col: c }.into());
            }
        }
    }
    let off_diagonal = || (0..order).flat_map(|r| (0..order).map(move |c| (r, c))).filter(|(r, c)| r != c);
    if off_diagonal().all(|(r, c)| color(r, c) == color(c, r)) {
        return Err(Rank3Error::Symmetric);
    }
    if off_diagonal().any(|(r, c)| color(r, c) + color(c, r) != 3) {
        return Err(Rank3Error::NotTransposePair);
    }
    if order % 4 != 3 {
        return Err(Rank3Error::OrderNotThreeModFour { order });
    }

    let n = order as u64 + 1;
    let b = (n - 2) / 2;
    let relation = |i: usize| {
        IntMatrix::from_fn(order, order, |r, c| {
            if color(r, c) == i {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    };
    let (a1, a2) = (relation(1), relation(2));
    let lo = BigInt::from((b as i64 - 1) / 2);
    let hi = BigInt::from(b.div_ceil(2));
    let b_int = BigInt::from(b);

    // Expected coefficient on A_0, A_1, A_2 for each product.
    let a1a2 = &a1 * &a2;
    let a2a1 = &a2 * &a1;
    let checks: [(u8, &'static str, IntMatrix, [BigInt; 3]); 4] = [
        (1, "A_1^2", &a1 * &a1, [BigInt::zero(), lo.clone(), hi.clone()]),
        (2, "A_2^2", &a2 * &a2, [BigInt::zero(), hi.clone(), lo.clone()]),
        (3, "A_1A_2", a1a2, [b_int.clone(), lo.clone(), lo.clone()]),
        (3, "A_2A_1", a2a1, [b_int, lo.clone(), lo]),
    ];
    let mut failures = Vec::new();
    for (clause, product, m, coeffs) in checks {
        let bad = (0..order)
            .flat_map(|r| (0..order).map(move |c| (r, c)))
            .find(|&(r, c)| *m.get(r, c) != coeffs[color(r, c)]);
        if let Some((row, col)) = bad {
            let k = color(row, col);
            failures.push(IdentityFailure {
                clause,
                product,
                relation: k,
                row,
                col,
                expected: coeffs[k].clone(),
                found: m.get(row, col).clone(),
            });
        }
    }
    if !failures.is_empty() {
        return Err(Rank3Error::Identity(failures));
    }

    let scheme = AssociationScheme::from_colors(order, 3, colors.to_vec())?;
    Ok(Rank3Input {
        scheme,
        n,
        a: n - 1,
        b,
    })
}

/// A ±1 matrix `H` with `H·ᵗH = nI` and `H + ᵗH = 2I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewHadamard(IntMatrix);

impl SkewHadamard {
    pub fn new(h: IntMatrix) -> Result<Self, Rank3Error> {
        let bad = |msg: String| Err(Rank3Error::NotSkewHadamard(msg));
        if !h.is_square() {
            return bad(format!("matrix is {}x{}", h.rows(), h.cols()));
        }
        let n = h.rows();
        if let Some(idx) = h
            .entries()
            .iter()
            .position(|e| !(e.is_one() || *e == -BigInt::one()))
        {
            return bad(format!("entry at ({}, {}) is not +-1", idx / n, idx % n));
        }
        let ht = h.transpose();
        if &h * &ht != IntMatrix::identity(n).scale(&BigInt::from(n)) {
            return bad("H * H^T != nI".into());
        }
        if &h + &ht != IntMatrix::identity(n).scale(&BigInt::from(2)) {
            return bad("H + H^T != 2I".into());
        }
        Ok(Self(h))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }
}

/// The skew-Hadamard matrix of order `q + 1` obtained by bordering the
/// signed Paley tournament: `H = I + S` with first row of `S` all `+1`.
pub fn paley_skew_hadamard(q: u64) -> Result<SkewHadamard, Rank3Error> {
    let tournament = paley_tournament(q)?;
    let s = tournament.scheme();
    let n = q as usize + 1;
    let h = IntMatrix::from_fn(n, n, |r, c| {
        BigInt::from(match (r, c) {
            _ if r == c => 1,
            (0, _) => 1,
            (_, 0) => -1,
            _ if s.color(r - 1, c - 1) == 1 => 1,
            _ => -1,
        })
    });
    SkewHadamard::new(h)
}

/// Recovers the doubly regular tournament from a skew-Hadamard matrix.
///
/// Scanning `j = 1, 2, …`, whenever `H[0][j] = −1` column `j` and then row `j`
/// are negated, which keeps `H` skew. Afterwards row 0 is `+1` off the
/// diagonal (so column 0 is `−1`), and deleting both leaves a tournament
/// with `i → j` iff the entry is `+1`.
pub fn skew_hadamard_to_rank3(h: &SkewHadamard) -> Result<Rank3Input, Rank3Error> {
    let n = h.order();
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|r| h.matrix().row(r).to_vec()).collect();
    for j in 1..n {
        if m[0][j] == -BigInt::one() {
            for row in m.iter_mut() {
                row[j] = -row[j].clone();
            }
            for v in m[j].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    let order = n.saturating_sub(1);
    let colors: Vec<usize> = (0..order * order)
        .map(|idx| {
            let (r, c) = (idx / order, idx % order);
            if r == c {
                0
            } else if m[r + 1][c + 1].is_one() {
                1
            } else {
                2
            }
        })
        .collect();
    validate_rank3_colors(order, &colors)
}
