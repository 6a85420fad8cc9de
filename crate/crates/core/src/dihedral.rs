//! The dihedral group of order 8 as 4×4 permutation matrices.
//!
//! `x` is the 4-cycle `(1,2,3,4)` and `y` the double transposition
//! `(1,2)(3,4)`; entry `(i, j)` of a permutation matrix is 1 when `i` maps
//! to `j`. Products are plain matrix products, and every group fact used by
//! the construction is checked in [`self_test`].

use std::fmt;
use std::sync::OnceLock;

use crate::linalg::IntMatrix;

/// The element `x^k · y^e` with `k < 4`, `e < 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    rotation: u8,
    reflection: bool,
}

impl DihedralElement {
    pub const ONE: Self = Self::new(0, false);
    pub const X: Self = Self::new(1, false);
    pub const X2: Self = Self::new(2, false);
    pub const X3: Self = Self::new(3, false);
    pub const Y: Self = Self::new(0, true);
    pub const XY: Self = Self::new(1, true);
    pub const X2Y: Self = Self::new(2, true);
    pub const X3Y: Self = Self::new(3, true);

    pub const ALL: [Self; 8] = [
        Self::ONE,
        Self::X,
        Self::X2,
        Self::X3,
        Self::Y,
        Self::XY,
        Self::X2Y,
        Self::X3Y,
    ];

    const fn new(rotation: u8, reflection: bool) -> Self {
        Self {
            rotation,
            reflection,
        }
    }

    /// Position in [`Self::ALL`].
    pub fn index(self) -> usize {
        self.rotation as usize + if self.reflection { 4 } else { 0 }
    }

    /// Short ASCII name: `1`, `x`, `x2`, `x3y`, …
    pub fn name(self) -> &'static str {
        ["1", "x", "x2", "x3", "y", "xy", "x2y", "x3y"][self.index()]
    }

    pub fn matrix(self) -> IntMatrix {
        let x = x_matrix();
        let mut m = IntMatrix::identity(4);
        for _ in 0..self.rotation {
            m = &m * &x;
        }
        if self.reflection {
            m = &m * &y_matrix();
        }
        m
    }

    /// Group product, read off the multiplication table.
    pub fn mul(self, other: Self) -> Self {
        group_table()[self.index()][other.index()]
    }

    pub fn inverse(self) -> Self {
        *Self::ALL
            .iter()
            .find(|&&g| self.mul(g) == Self::ONE)
            .expect("every group element is invertible")
    }

    /// Membership in `H = C_G(y) = {1, x², y, x²y}`.
    pub fn in_h(self) -> bool {
        self.rotation.is_multiple_of(2)
    }

    /// Membership in `K = C_G(x) = {1, x, x², x³}`.
    pub fn in_k(self) -> bool {
        !self.reflection
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::ops::Mul for DihedralElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        DihedralElement::mul(self, rhs)
    }
}

pub fn x_matrix() -> IntMatrix {
    IntMatrix::from_i64(4, 4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0])
}

pub fn y_matrix() -> IntMatrix {
    IntMatrix::from_i64(4, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0])
}

/// `table[g][h] = g·h`, obtained by multiplying the permutation matrices and
/// matching the result against the eight element matrices.
pub fn group_table() -> &'static [[DihedralElement; 8]; 8] {
    static TABLE: OnceLock<[[DihedralElement; 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mats: Vec<IntMatrix> = DihedralElement::ALL.iter().map(|g| g.matrix()).collect();
        let mut table = [[DihedralElement::ONE; 8]; 8];
        for (i, gi) in mats.iter().enumerate() {
            for (j, gj) in mats.iter().enumerate() {
                let prod = gi * gj;
                let k = mats
                    .iter()
                    .position(|m| *m == prod)
                    .expect("matrix group is closed");
                table[i][j] = DihedralElement::ALL[k];
            }
        }
        table
    })
}

/// Checks the group identities the construction relies on and returns a
/// description of the first failure.
pub fn self_test() -> Result<(), String> {
    use DihedralElement as G;
    let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
    let mats: Vec<IntMatrix> = G::ALL.iter().map(|g| g.matrix()).collect();
    for i in 0..8 {
        for j in 0..i {
            check(mats[i] != mats[j], "group elements are not distinct")?;
        }
    }
    let one = IntMatrix::identity(4);
    check(G::X.matrix() == x_matrix() && G::Y.matrix() == y_matrix(), "generator matrices")?;
    let x4 = (0..4).fold(one.clone(), |m, _| &m * &x_matrix());
    check(x4 == one, "x^4 = 1")?;
    check(&y_matrix() * &y_matrix() == one, "y^2 = 1")?;
    check(
        &one + &G::X2.matrix() == &G::XY.matrix() + &G::X3Y.matrix(),
        "1 + x^2 = xy + x^3y",
    )?;
    check(G::Y * G::X == G::X3Y, "yx = x^3y")?;
    for g in G::ALL {
        for h in G::ALL {
            check(
                (g * h).matrix() == &g.matrix() * &h.matrix(),
                "multiplication table",
            )?;
        }
    }
    let sum = |keep: &dyn Fn(G) -> bool| {
        G::ALL
            .iter()
            .filter(|&&g| keep(g))
            .fold(IntMatrix::zeros(4, 4), |acc, g| &acc + &g.matrix())
    };
    let j4 = IntMatrix::ones(4);
    check(sum(&|g| g.in_h()) == j4, "sum over H = J_4")?;
    check(sum(&|g| !g.in_h()) == j4, "sum over G \\ H = J_4")?;
    check(sum(&|g| g.in_k()) == j4, "sum over K = J_4")?;
    check(sum(&|g| !g.in_k()) == j4, "sum over G \\ K = J_4")?;
    for g in G::ALL {
        check((g * G::Y == G::Y * g) == g.in_h(), "H is the centralizer of y")?;
        check((g * G::X == G::X * g) == g.in_k(), "K is the centralizer of x")?;
    }
    Ok(())
}
