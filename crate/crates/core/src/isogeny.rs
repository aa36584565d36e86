//! The rational 2-isogeny between curves in (A,B)-form, its dual, and the
//! balanced predicate.
//!
//! For E: y² = x(x² + Ax + B) with kernel {∞, (0,0)}, the quotient curve is
//! E′: y² = x(x² − 2Ax + (A² − 4B)) and the map is
//! φ(x, y) = (y²/x², y(B − x²)/x²). The dual goes the same way from E′ and
//! lands on (4A, 16B), which is identified with (A, B) by (x, y) ↦ (x/4, y/8).

use crate::arith::{self, Int, Rat};
use crate::model::{AffinePoint, WeierstrassModel};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsogenyError {
    #[error("domain or codomain is singular: B(A² − 4B) must be nonzero")]
    SingularCurve,
}

/// A 2-isogeny in (A,B)-form with kernel {∞, (0,0)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoIsogeny {
    pub a: Int,
    pub b: Int,
    /// Codomain coefficients (−2A, A² − 4B).
    pub a_prime: Int,
    pub b_prime: Int,
}

/// Squarefree s with Q(E[2]) = Q(√s); s = 1 means fully rational 2-torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionFieldClass(pub Int);

/// Builds the 2-isogeny with domain y² = x(x² + Ax + B).
pub fn two_isogeny(a: &Int, b: &Int) -> Result<TwoIsogeny, IsogenyError> {
    let a_prime: Int = -2 * a;
    let b_prime: Int = a * a - 4 * b;
    if b.is_zero() || b_prime.is_zero() {
        return Err(IsogenyError::SingularCurve);
    }
    Ok(TwoIsogeny { a: a.clone(), b: b.clone(), a_prime, b_prime })
}

impl TwoIsogeny {
    pub fn domain(&self) -> WeierstrassModel {
        WeierstrassModel::from_ab(self.a.clone(), self.b.clone())
    }

    pub fn codomain(&self) -> WeierstrassModel {
        WeierstrassModel::from_ab(self.a_prime.clone(), self.b_prime.clone())
    }

    /// Twists both sides by a squarefree D; the codomain coefficients become
    /// (A′D, B′D²), matching the twist of the codomain.
    pub fn twist(&self, d: &Int) -> Result<TwoIsogeny, IsogenyError> {
        two_isogeny(&(&self.a * d), &(&self.b * d * d))
    }

    /// Evaluates φ; the kernel {∞, (0,0)} goes to ∞.
    pub fn eval(&self, p: &AffinePoint) -> AffinePoint {
        match p {
            AffinePoint::Infinity => AffinePoint::Infinity,
            AffinePoint::Xy { x, y } => {
                if x.is_zero() {
                    return AffinePoint::Infinity;
                }
                let b = Rat::from(self.b.clone());
                let xx = x * x;
                AffinePoint::Xy {
                    x: (y * y) / &xx,
                    y: y * (&b - &xx) / &xx,
                }
            }
        }
    }

    /// The dual 2-isogeny from (A′, B′), composed with the scaling
    /// (x, y) ↦ (x/4, y/8) so it lands literally on (A, B).
    pub fn dual(&self) -> DualIsogeny {
        let raw = two_isogeny(&self.a_prime, &self.b_prime)
            .expect("dual of a valid isogeny is valid");
        DualIsogeny { raw }
    }
}

/// The dual map φ̂: E′ → E, including the identification of the raw codomain
/// (4A, 16B) with (A, B).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualIsogeny {
    pub raw: TwoIsogeny,
}

impl DualIsogeny {
    /// Codomain of the un-scaled map; equals (4A, 16B) of the original domain.
    pub fn raw_codomain(&self) -> WeierstrassModel {
        self.raw.codomain()
    }

    pub fn eval(&self, p: &AffinePoint) -> AffinePoint {
        match self.raw.eval(p) {
            AffinePoint::Infinity => AffinePoint::Infinity,
            AffinePoint::Xy { x, y } => AffinePoint::Xy {
                x: x / Rat::from(Int::from(4)),
                y: y / Rat::from(Int::from(8)),
            },
        }
    }
}

/// Q(E[2]) for E in (A,B)-form: the class of the squarefree part of A² − 4B.
pub fn two_division_field(a: &Int, b: &Int) -> Result<DivisionFieldClass, arith::ArithError> {
    Ok(DivisionFieldClass(arith::squarefree_part(&(a * a - 4 * b))?))
}

/// Balanced means the 2-division fields of domain and codomain agree, i.e.
/// sf(A² − 4B) = sf(B).
pub fn is_balanced(iso: &TwoIsogeny) -> Result<bool, arith::ArithError> {
    let dom = two_division_field(&iso.a, &iso.b)?;
    let cod = two_division_field(&iso.a_prime, &iso.b_prime)?;
    debug_assert_eq!(cod.0, arith::squarefree_part(&iso.b)?);
    Ok(dom == cod)
}
