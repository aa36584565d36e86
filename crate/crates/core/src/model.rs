//! Integral Weierstrass models over Q: standard invariants, the group law on
//! rational points, quadratic twists and coordinate changes.

use crate::arith::{self, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("model is singular (discriminant zero)")]
    SingularModel,
    #[error("twisting requires a short form (a1 = a3 = 0)")]
    NotShortForm,
    #[error("twist parameter must be a nonzero squarefree integer")]
    NotSquarefree,
}

/// Long Weierstrass equation y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 with
/// integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    pub a1: Int,
    pub a2: Int,
    pub a3: Int,
    pub a4: Int,
    pub a6: Int,
}

/// The b-, c-invariants, discriminant and j-invariant of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedInvariants {
    pub b2: Int,
    pub b4: Int,
    pub b6: Int,
    pub b8: Int,
    pub c4: Int,
    pub c6: Int,
    pub delta: Int,
    pub j: Rat,
}

/// A rational point in affine coordinates, or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffinePoint {
    Infinity,
    Xy { x: Rat, y: Rat },
}

impl AffinePoint {
    pub fn xy(x: impl Into<Rat>, y: impl Into<Rat>) -> Self {
        AffinePoint::Xy { x: x.into(), y: y.into() }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, AffinePoint::Infinity)
    }
}

impl WeierstrassModel {
    pub fn new(
        a1: impl Into<Int>,
        a2: impl Into<Int>,
        a3: impl Into<Int>,
        a4: impl Into<Int>,
        a6: impl Into<Int>,
    ) -> Self {
        WeierstrassModel {
            a1: a1.into(),
            a2: a2.into(),
            a3: a3.into(),
            a4: a4.into(),
            a6: a6.into(),
        }
    }

    /// The (A,B)-form y² = x(x² + Ax + B).
    pub fn from_ab(a: impl Into<Int>, b: impl Into<Int>) -> Self {
        WeierstrassModel::new(0, a.into(), 0, b.into(), 0)
    }

    /// Returns (A, B) when the model is y² = x³ + Ax² + Bx.
    pub fn as_ab(&self) -> Option<(Int, Int)> {
        if self.a1.is_zero() && self.a3.is_zero() && self.a6.is_zero() {
            Some((self.a2.clone(), self.a4.clone()))
        } else {
            None
        }
    }

    pub fn ainvs(&self) -> [Int; 5] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ]
    }

    pub fn b_invariants(&self) -> (Int, Int, Int, Int) {
        let b2 = &self.a1 * &self.a1 + 4 * &self.a2;
        let b4 = 2 * &self.a4 + &self.a1 * &self.a3;
        let b6 = &self.a3 * &self.a3 + 4 * &self.a6;
        let b8 = &self.a1 * &self.a1 * &self.a6 + 4 * &self.a2 * &self.a6
            - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4;
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> Int {
        let (b2, b4, b6, b8) = self.b_invariants();
        -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    pub fn derived_invariants(&self) -> Result<DerivedInvariants, ModelError> {
        let (b2, b4, b6, b8) = self.b_invariants();
        let c4 = &b2 * &b2 - 24 * &b4;
        let c6 = -&b2 * &b2 * &b2 + 36 * &b2 * &b4 - 216 * &b6;
        let delta: Int =
            -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        if delta.is_zero() {
            return Err(ModelError::SingularModel);
        }
        let j = Rat::new(&c4 * &c4 * &c4, delta.clone());
        Ok(DerivedInvariants { b2, b4, b6, b8, c4, c6, delta, j })
    }

    /// Quadratic twist by a squarefree D of a short-form model:
    /// (a2, a4, a6) ↦ (a2·D, a4·D², a6·D³).
    pub fn quadratic_twist(&self, d: &Int) -> Result<WeierstrassModel, ModelError> {
        if !self.a1.is_zero() || !self.a3.is_zero() {
            return Err(ModelError::NotShortForm);
        }
        if d.is_zero() || arith::squarefree_part(d).map_err(|_| ModelError::NotSquarefree)? != *d {
            return Err(ModelError::NotSquarefree);
        }
        Ok(WeierstrassModel::new(
            0,
            &self.a2 * d,
            0,
            &self.a4 * d * d,
            &self.a6 * d * d * d,
        ))
    }

    /// Translation (x, y) ↦ (x + r, y + s·x + t); always yields an integral
    /// model for integer r, s, t and leaves the discriminant unchanged.
    pub fn translate(&self, r: &Int, s: &Int, t: &Int) -> WeierstrassModel {
        let a1 = &self.a1 + 2 * s;
        let a2 = &self.a2 - s * &self.a1 + 3 * r - s * s;
        let a3 = &self.a3 + r * &self.a1 + 2 * t;
        let a4 = &self.a4 - s * &self.a3 + 2 * r * &self.a2 - (t + r * s) * &self.a1 + 3 * r * r
            - 2 * s * t;
        let a6 = &self.a6 + r * &self.a4 + r * r * &self.a2 + r * r * r
            - t * &self.a3
            - t * t
            - r * t * &self.a1;
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    /// Scaling (x, y) ↦ (x/m², y/m³): a_i ↦ a_i·m^i. Multiplies Δ by m^12.
    pub fn scale_up(&self, m: &Int) -> WeierstrassModel {
        WeierstrassModel {
            a1: &self.a1 * m,
            a2: &self.a2 * m.pow(2),
            a3: &self.a3 * m.pow(3),
            a4: &self.a4 * m.pow(4),
            a6: &self.a6 * m.pow(6),
        }
    }

    /// Inverse of [`scale_up`]; panics unless every a_i is divisible by m^i.
    pub fn scale_down(&self, m: &Int) -> WeierstrassModel {
        let div = |a: &Int, k: u32| {
            let (q, r) = a.div_rem(&m.pow(k));
            assert!(r.is_zero(), "scale_down: non-integral result");
            q
        };
        WeierstrassModel {
            a1: div(&self.a1, 1),
            a2: div(&self.a2, 2),
            a3: div(&self.a3, 3),
            a4: div(&self.a4, 4),
            a6: div(&self.a6, 6),
        }
    }

    /// Exact check that the point satisfies the model equation.
    pub fn on_curve(&self, p: &AffinePoint) -> bool {
        match p {
            AffinePoint::Infinity => true,
            AffinePoint::Xy { x, y } => {
                let a1 = Rat::from(self.a1.clone());
                let a2 = Rat::from(self.a2.clone());
                let a3 = Rat::from(self.a3.clone());
                let a4 = Rat::from(self.a4.clone());
                let a6 = Rat::from(self.a6.clone());
                y * y + &a1 * x * y + &a3 * y == x * x * x + &a2 * x * x + &a4 * x + &a6
            }
        }
    }

    pub fn point_neg(&self, p: &AffinePoint) -> AffinePoint {
        match p {
            AffinePoint::Infinity => AffinePoint::Infinity,
            AffinePoint::Xy { x, y } => {
                let a1 = Rat::from(self.a1.clone());
                let a3 = Rat::from(self.a3.clone());
                AffinePoint::Xy { x: x.clone(), y: -y - a1 * x - a3 }
            }
        }
    }

    /// Chord-and-tangent addition with infinity as identity.
    pub fn point_add(&self, p: &AffinePoint, q: &AffinePoint) -> AffinePoint {
        debug_assert!(self.on_curve(p) && self.on_curve(q));
        let (x1, y1) = match p {
            AffinePoint::Infinity => return q.clone(),
            AffinePoint::Xy { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            AffinePoint::Infinity => return p.clone(),
            AffinePoint::Xy { x, y } => (x, y),
        };
        let a1 = Rat::from(self.a1.clone());
        let a2 = Rat::from(self.a2.clone());
        let a3 = Rat::from(self.a3.clone());
        let a4 = Rat::from(self.a4.clone());
        let two = Rat::from(Int::from(2));
        let three = Rat::from(Int::from(3));
        let lambda;
        let nu;
        if x1 == x2 {
            if *q == self.point_neg(p) {
                return AffinePoint::Infinity;
            }
            let denom = &two * y1 + &a1 * x1 + &a3;
            lambda = (&three * x1 * x1 + &two * &a2 * x1 + &a4 - &a1 * y1) / &denom;
            nu = (-(x1 * x1 * x1) + &a4 * x1 + &two * Rat::from(self.a6.clone()) - &a3 * y1)
                / &denom;
        } else {
            lambda = (y2 - y1) / (x2 - x1);
            nu = (y1 * x2 - y2 * x1) / (x2 - x1);
        }
        let x3 = &lambda * &lambda + &a1 * &lambda - &a2 - x1 - x2;
        let y3 = -(&lambda + &a1) * &x3 - &nu - &a3;
        let out = AffinePoint::Xy { x: x3, y: y3 };
        debug_assert!(self.on_curve(&out));
        out
    }

    pub fn point_double(&self, p: &AffinePoint) -> AffinePoint {
        self.point_add(p, p)
    }

    pub fn point_mul(&self, n: u32, p: &AffinePoint) -> AffinePoint {
        let mut acc = AffinePoint::Infinity;
        for _ in 0..n {
            acc = self.point_add(&acc, p);
        }
        acc
    }

    /// #Ẽ(F_p) for a prime of good reduction, counted through the quadratic
    /// character of the completed square.
    pub fn count_points_mod_p(&self, p: &Int) -> Int {
        if p.to_u32() == Some(2) {
            let two = Int::from(2);
            let mut count = Int::one(); // infinity
            for x in 0..2i64 {
                for y in 0..2i64 {
                    let x = Int::from(x);
                    let y = Int::from(y);
                    let lhs = &y * &y + &self.a1 * &x * &y + &self.a3 * &y;
                    let rhs =
                        &x * &x * &x + &self.a2 * &x * &x + &self.a4 * &x + &self.a6;
                    if (lhs - rhs).mod_floor(&two).is_zero() {
                        count += 1;
                    }
                }
            }
            return count;
        }
        let (b2, b4, b6, _) = self.b_invariants();
        let mut count = p + 1u32;
        let mut x = Int::zero();
        while &x < p {
            let g: Int = 4 * &x * &x * &x + &b2 * &x * &x + 2 * &b4 * &x + &b6;
            let g = g.mod_floor(p);
            count += arith::jacobi(&g, p) as i64;
            x += 1u32;
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn e1() -> WeierstrassModel {
        WeierstrassModel::from_ab(25350, 2471625)
    }

    fn e2() -> WeierstrassModel {
        WeierstrassModel::from_ab(-50700, 632736000i64)
    }

    #[test]
    fn invariants_of_the_38025_pair() {
        let inv = e1().derived_invariants().unwrap();
        // oracle for (A,B)-form: Δ = 16·B²·(A² − 4B)
        let a = int(25350);
        let b = int(2471625);
        let delta_oracle = 16 * &b * &b * (&a * &a - 4 * &b);
        assert_eq!(inv.delta, delta_oracle);
        assert_eq!(
            inv.delta,
            int(2).pow(12) * int(3).pow(6) * int(5).pow(9) * int(13).pow(9)
        );
        assert_eq!(inv.j, Rat::from(int(257).pow(3)));

        let inv2 = e2().derived_invariants().unwrap();
        assert_eq!(inv2.j, Rat::from(int(17).pow(3)));
        assert_eq!(
            inv2.delta,
            int(2).pow(24) * int(3).pow(6) * int(5).pow(9) * int(13).pow(9)
        );
    }

    #[test]
    fn invariants_of_a_tiny_curve() {
        // y² = x³ − x
        let e = WeierstrassModel::new(0, 0, 0, -1, 0);
        let inv = e.derived_invariants().unwrap();
        assert_eq!(inv.delta, int(64));
        assert_eq!(inv.j, Rat::from(int(1728)));
    }

    #[test]
    fn singular_model_is_rejected() {
        let e = WeierstrassModel::new(0, 0, 0, 0, 0);
        assert_eq!(e.derived_invariants(), Err(ModelError::SingularModel));
    }

    #[test]
    fn twist_matches_definition() {
        let d = int(17);
        let t = e1().quadratic_twist(&d).unwrap();
        assert_eq!(t, WeierstrassModel::from_ab(25350 * 17, 2471625i64 * 17 * 17));
        assert_eq!(e1().quadratic_twist(&int(1)).unwrap(), e1());
        let tm = e1().quadratic_twist(&int(-195)).unwrap();
        assert_eq!(tm.a2, int(25350) * -195);
        assert!(e1().quadratic_twist(&int(12)).is_err());
        assert!(WeierstrassModel::new(1, 0, 0, -1, 0).quadratic_twist(&d).is_err());
    }

    #[test]
    fn two_torsion_addition() {
        let e = e1();
        let p = AffinePoint::xy(Rat::zero(), Rat::zero());
        assert!(e.on_curve(&p));
        assert_eq!(e.point_add(&p, &p), AffinePoint::Infinity);
        assert_eq!(e.point_add(&p, &AffinePoint::Infinity), p);
    }

    #[test]
    fn doubling_matches_fp_bruteforce() {
        // y² = x³ − x over F_31: reduce an exact doubling of a rational point
        // and compare with the chord-tangent slope computed mod 31.
        let e = WeierstrassModel::new(0, 0, 0, -1, 0);
        // rational point of infinite order on y² = x³ − x? none exist (rank 0),
        // so check instead over the rationals that exact doubling of points
        // reduced from F_31 matches brute-force doubling mod 31 on a curve
        // with a point of infinite order: y² = x³ + 17 and P = (-1, 4).
        let e17 = WeierstrassModel::new(0, 0, 0, 0, 17);
        let p = AffinePoint::xy(Rat::from(int(-1)), Rat::from(int(4)));
        assert!(e17.on_curve(&p));
        let dp = e17.point_double(&p);
        let (dx, dy) = match &dp {
            AffinePoint::Xy { x, y } => (x.clone(), y.clone()),
            _ => panic!("finite expected"),
        };
        // mod-31 chord-tangent oracle: λ = 3x²/(2y), x3 = λ² − 2x, y3 = λ(x−x3) − y
        let p31 = 31i64;
        let inv = |a: i64| -> i64 {
            (1..p31).find(|b| (a.rem_euclid(p31) * b) % p31 == 1).unwrap()
        };
        let (x, y) = (-1i64, 4i64);
        let lam = (3 * x * x).rem_euclid(p31) * inv(2 * y) % p31;
        let x3 = (lam * lam - 2 * x).rem_euclid(p31);
        let y3 = (lam * (x - x3) - y).rem_euclid(p31);
        // reduce the exact result mod 31
        let red = |q: &Rat| -> i64 {
            let num = q.numer().mod_floor(&int(p31)).to_i64().unwrap();
            let den = q.denom().mod_floor(&int(p31)).to_i64().unwrap();
            (num * inv(den)).rem_euclid(p31)
        };
        assert_eq!(red(&dx), x3);
        assert_eq!(red(&dy), y3);
        // and the group law stays on the curve
        assert!(e17.on_curve(&dp));
        assert!(e.on_curve(&AffinePoint::xy(Rat::zero(), Rat::zero())));
    }

    #[test]
    fn count_points_small_primes() {
        let e = WeierstrassModel::new(0, 0, 0, -1, 0);
        // brute-force oracle values for y² = x³ − x
        for (p, expected) in [(5i64, 8i64), (7, 8), (31, 32)] {
            let mut naive = 1i64;
            for x in 0..p {
                for y in 0..p {
                    if (y * y - (x * x * x - x)).rem_euclid(p) == 0 {
                        naive += 1;
                    }
                }
            }
            assert_eq!(naive, expected);
            assert_eq!(e.count_points_mod_p(&int(p)), int(expected));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn syzygies_hold(
            a1 in -20i64..20, a2 in -50i64..50, a3 in -20i64..20,
            a4 in -200i64..200, a6 in -500i64..500,
        ) {
            let e = WeierstrassModel::new(a1, a2, a3, a4, a6);
            if let Ok(inv) = e.derived_invariants() {
                prop_assert_eq!(4 * &inv.b8, &inv.b2 * &inv.b6 - &inv.b4 * &inv.b4);
                prop_assert_eq!(
                    1728 * &inv.delta,
                    &inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6
                );
                prop_assert_eq!(inv.j, Rat::new(&inv.c4 * &inv.c4 * &inv.c4, inv.delta.clone()));
            }
        }
    }

    proptest! {
        #[test]
        fn twist_scales_discriminant(
            a in -50i64..50, b in prop_oneof![-300i64..=-1, 1i64..=300],
            d in prop_oneof![-30i64..=-1, 2i64..=30],
        ) {
            let e = WeierstrassModel::from_ab(a, b);
            prop_assume!(!e.discriminant().is_zero());
            let d = arith::squarefree_part(&int(d)).unwrap();
            let t = e.quadratic_twist(&d).unwrap();
            prop_assert_eq!(t.discriminant(), e.discriminant() * d.pow(6));
            if let (Ok(i1), Ok(i2)) = (e.derived_invariants(), t.derived_invariants()) {
                prop_assert_eq!(i1.j, i2.j);
            }
        }

        #[test]
        fn translation_preserves_discriminant(
            a1 in -5i64..5, a2 in -10i64..10, a3 in -5i64..5, a4 in -30i64..30, a6 in -50i64..50,
            r in -5i64..5, s in -5i64..5, t in -5i64..5,
        ) {
            let e = WeierstrassModel::new(a1, a2, a3, a4, a6);
            let f = e.translate(&int(r), &int(s), &int(t));
            prop_assert_eq!(e.discriminant(), f.discriminant());
            if let Ok(i1) = e.derived_invariants() {
                let i2 = f.derived_invariants().unwrap();
                prop_assert_eq!(i1.c4, i2.c4);
                prop_assert_eq!(i1.c6, i2.c6);
            }
        }

        #[test]
        fn group_law_identity_and_associativity(
            xs in proptest::collection::vec(0usize..6, 3),
        ) {
            // small rational points of y² = x³ + 1 (torsion and 2·3-multiples)
            let e = WeierstrassModel::new(0, 0, 0, 0, 1);
            let base = [
                AffinePoint::Infinity,
                AffinePoint::xy(Rat::from(int(-1)), Rat::zero()),
                AffinePoint::xy(Rat::zero(), Rat::from(int(1))),
                AffinePoint::xy(Rat::zero(), Rat::from(int(-1))),
                AffinePoint::xy(Rat::from(int(2)), Rat::from(int(3))),
                AffinePoint::xy(Rat::from(int(2)), Rat::from(int(-3))),
            ];
            let p = &base[xs[0]];
            let q = &base[xs[1]];
            let r = &base[xs[2]];
            let lhs = e.point_add(&e.point_add(p, q), r);
            let rhs = e.point_add(p, &e.point_add(q, r));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(e.point_add(p, &AffinePoint::Infinity), p.clone());
        }
    }
}
