//! Tate's algorithm per prime, and its aggregation into conductor, minimal
//! discriminant, Kodaira symbols and Tamagawa numbers.
//!
//! The algorithm works on a (possibly non-minimal) integral model and applies
//! translations and rescalings until the reduction type at p is identified.
//! Outputs are minimal local data regardless of the input model.

use crate::arith::{self, ArithError, Int};
use crate::model::WeierstrassModel;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Reduction-type label of the special fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaSymbol {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaSymbol {
    /// Geometric component count m of the special fiber.
    pub fn components(&self) -> u32 {
        match self {
            KodairaSymbol::I0 => 1,
            KodairaSymbol::In(n) => *n,
            KodairaSymbol::II => 1,
            KodairaSymbol::III => 2,
            KodairaSymbol::IV => 3,
            KodairaSymbol::I0Star => 5,
            KodairaSymbol::InStar(n) => n + 5,
            KodairaSymbol::IVStar => 7,
            KodairaSymbol::IIIStar => 8,
            KodairaSymbol::IIStar => 9,
        }
    }
}

impl std::fmt::Display for KodairaSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KodairaSymbol::I0 => write!(f, "I0"),
            KodairaSymbol::In(n) => write!(f, "I{n}"),
            KodairaSymbol::II => write!(f, "II"),
            KodairaSymbol::III => write!(f, "III"),
            KodairaSymbol::IV => write!(f, "IV"),
            KodairaSymbol::I0Star => write!(f, "I0*"),
            KodairaSymbol::InStar(n) => write!(f, "I{n}*"),
            KodairaSymbol::IVStar => write!(f, "IV*"),
            KodairaSymbol::IIIStar => write!(f, "III*"),
            KodairaSymbol::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for KodairaSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Minimal local data of a curve at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalData {
    pub p: Int,
    pub kodaira: KodairaSymbol,
    /// Conductor exponent.
    pub f: u32,
    /// Tamagawa number.
    pub c: u32,
    /// Geometric component count of the special fiber.
    pub m: u32,
    /// Valuation of the minimal discriminant.
    pub v_delta_min: u32,
}

/// Conductor, signed minimal discriminant, and per-prime local data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalData {
    pub conductor: Int,
    pub delta_min: Int,
    /// Local data at every prime dividing the input model's discriminant,
    /// sorted by p; primes where the minimal model has good reduction appear
    /// with symbol I0.
    pub per_prime: Vec<LocalData>,
}

impl GlobalData {
    /// Local data at the bad primes only (f ≥ 1).
    pub fn bad_primes(&self) -> impl Iterator<Item = &LocalData> {
        self.per_prime.iter().filter(|ld| ld.f > 0)
    }

    pub fn tamagawa_product(&self) -> Int {
        let mut c = Int::one();
        for ld in self.bad_primes() {
            c *= Int::from(ld.c);
        }
        c
    }
}

/// Ogg's relation v(Δmin) = f + m − 1 at bad primes, v = 0 at good ones.
pub fn ogg_check(ld: &LocalData) -> bool {
    if ld.f == 0 {
        ld.v_delta_min == 0 && ld.m == 1
    } else {
        ld.v_delta_min == ld.f + ld.m - 1
    }
}

// ---------------------------------------------------------------------------
// F_p polynomial helpers (little-endian coefficient vectors).

fn pnorm(mut f: Vec<Int>, p: &Int) -> Vec<Int> {
    for c in f.iter_mut() {
        *c = c.mod_floor(p);
    }
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn pderiv(f: &[Int], p: &Int) -> Vec<Int> {
    let mut d = Vec::new();
    for (i, c) in f.iter().enumerate().skip(1) {
        d.push((c * Int::from(i as u64)).mod_floor(p));
    }
    pnorm(d, p)
}

fn peval(f: &[Int], x: &Int, p: &Int) -> Int {
    let mut acc = Int::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(p);
    }
    acc
}

fn pdivrem(num: &[Int], den: &[Int], p: &Int) -> (Vec<Int>, Vec<Int>) {
    assert!(!den.is_empty());
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = arith::inv_mod(den.last().unwrap(), p).expect("leading coeff invertible");
    let mut quo = vec![Int::zero(); num.len().saturating_sub(dd)];
    while rem.len() > dd && !rem.is_empty() {
        let k = rem.len() - 1 - dd;
        let coef = (rem.last().unwrap() * &lead_inv).mod_floor(p);
        if !coef.is_zero() {
            quo[k] = coef.clone();
            for i in 0..=dd {
                let idx = k + i;
                rem[idx] = (&rem[idx] - &coef * &den[i]).mod_floor(p);
            }
        }
        rem.pop();
        rem = pnorm(rem, p);
        if rem.len() <= dd {
            break;
        }
    }
    (pnorm(quo, p), pnorm(rem, p))
}

fn pgcd(a: &[Int], b: &[Int], p: &Int) -> Vec<Int> {
    let mut a = pnorm(a.to_vec(), p);
    let mut b = pnorm(b.to_vec(), p);
    while !b.is_empty() {
        let (_, r) = pdivrem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        let inv = arith::inv_mod(&lead, p).unwrap();
        a = pnorm(a.iter().map(|c| c * &inv).collect(), p);
    }
    a
}

fn pmulmod(a: &[Int], b: &[Int], m: &[Int], p: &Int) -> Vec<Int> {
    let mut prod = vec![Int::zero(); a.len() + b.len()];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            prod[i + j] = (&prod[i + j] + ca * cb).mod_floor(p);
        }
    }
    let (_, r) = pdivrem(&pnorm(prod, p), m, p);
    r
}

/// x^e mod (m, p) by square-and-multiply.
fn ppow_x_mod(e: &Int, m: &[Int], p: &Int) -> Vec<Int> {
    let mut base = pnorm(vec![Int::zero(), Int::one()], p);
    base = pdivrem(&base, m, p).1;
    let mut acc = pnorm(vec![Int::one()], p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = pmulmod(&acc, &acc, m, p);
        if e.bit(i) {
            acc = pmulmod(&acc, &base, m, p);
        }
    }
    acc
}

/// Number of distinct roots in F_p of a squarefree polynomial.
fn count_distinct_roots(f: &[Int], p: &Int) -> usize {
    if let Some(small) = p.to_u64() {
        if small <= 64 {
            return (0..small)
                .filter(|x| peval(f, &Int::from(*x), p).is_zero())
                .count();
        }
    }
    // gcd(x^p − x, f)
    let mut xp = ppow_x_mod(p, f, p);
    // subtract x
    if xp.len() < 2 {
        xp.resize(2, Int::zero());
    }
    let shifted: Int = &xp[1] - 1;
    xp[1] = shifted.mod_floor(p);
    let g = pgcd(f, &pnorm(xp, p), p);
    g.len().saturating_sub(1)
}

/// Roots in F_p of αY² + βY + γ with α ≢ 0.
fn quadratic_roots(alpha: &Int, beta: &Int, gamma: &Int, p: &Int) -> Vec<Int> {
    if p.to_u32() == Some(2) {
        return (0..2i64)
            .map(Int::from)
            .filter(|y| ((alpha * y * y + beta * y + gamma).mod_floor(p)).is_zero())
            .collect();
    }
    let disc: Int = beta * beta - 4 * alpha * gamma;
    let disc = disc.mod_floor(p);
    match arith::sqrt_mod_p(&disc, p) {
        None => Vec::new(),
        Some(s) => {
            let twice: Int = 2 * alpha;
            let inv = arith::inv_mod(&twice.mod_floor(p), p).unwrap();
            let r1 = ((-beta + &s) * &inv).mod_floor(p);
            let r2 = ((-beta - &s) * &inv).mod_floor(p);
            if r1 == r2 {
                vec![r1]
            } else {
                vec![r1, r2]
            }
        }
    }
}

/// Repeated root of a monic cubic mod p, with its multiplicity (2 or 3).
fn repeated_root_of_cubic(f: &[Int], p: &Int) -> Option<(Int, u32)> {
    debug_assert_eq!(f.len(), 4);
    let d = pderiv(f, p);
    let r = if d.is_empty() {
        // only in char 3 with f ≡ T³ + c: the triple root is −c (cubing is
        // the identity on F_3)
        debug_assert_eq!(p.to_u32(), Some(3));
        (-&f[0]).mod_floor(p)
    } else {
        let h = pgcd(f, &d, p);
        match h.len() {
            0 | 1 => return None,
            2 => ((-&h[0]) * arith::inv_mod(&h[1], p).unwrap()).mod_floor(p),
            3 => {
                // in char 2 the gcd can be (T − r)² for either multiplicity;
                // its unique root still is the repeated root of f
                let c2 = &h[2];
                if p.to_u32() == Some(2) {
                    // (T + r)² = T² + r² over F_2: the constant term is r
                    (&h[0] * arith::inv_mod(c2, p).unwrap()).mod_floor(p)
                } else {
                    let twice: Int = 2 * c2;
                    ((-&h[1]) * arith::inv_mod(&twice.mod_floor(p), p).unwrap()).mod_floor(p)
                }
            }
            _ => unreachable!("gcd of a cubic with its derivative has degree ≤ 2"),
        }
    };
    // multiplicity by explicit division, robust in every characteristic
    debug_assert!(peval(f, &r, p).is_zero());
    let linear = [(-&r).mod_floor(p), Int::one()];
    let mut mult = 0u32;
    let mut g = pnorm(f.to_vec(), p);
    while !g.is_empty() && peval(&g, &r, p).is_zero() {
        let (q, rem) = pdivrem(&g, &linear, p);
        debug_assert!(rem.is_empty());
        g = q;
        mult += 1;
    }
    debug_assert!(mult >= 2);
    Some((r, mult))
}

// ---------------------------------------------------------------------------

fn vp(n: &Int, p: &Int) -> u32 {
    if n.is_zero() {
        u32::MAX // treat 0 as having infinite valuation in divisibility tests
    } else {
        arith::valuation_int(n, p)
    }
}

fn div_exact(n: &Int, d: &Int) -> Int {
    let (q, r) = n.div_rem(d);
    debug_assert!(r.is_zero(), "exact division expected");
    q
}

/// Singular point of the reduced curve mod p, as integer representatives.
fn singular_point(e: &WeierstrassModel, p: &Int) -> (Int, Int) {
    if p.to_u32() == Some(2) {
        let two = Int::from(2);
        for x in 0..2i64 {
            for y in 0..2i64 {
                let x = Int::from(x);
                let y = Int::from(y);
                let fx: Int = &e.a1 * &y - 3 * &x * &x - 2 * &e.a2 * &x - &e.a4;
                let fy: Int = 2 * &y + &e.a1 * &x + &e.a3;
                let f0: Int = &y * &y + &e.a1 * &x * &y + &e.a3 * &y
                    - &x * &x * &x
                    - &e.a2 * &x * &x
                    - &e.a4 * &x
                    - &e.a6;
                let (fx, fy, f0) = (fx.mod_floor(&two), fy.mod_floor(&two), f0.mod_floor(&two));
                if fx.is_zero() && fy.is_zero() && f0.is_zero() {
                    return (x, y);
                }
            }
        }
        unreachable!("singular point exists when p | Δ");
    }
    let (b2, b4, b6, _) = e.b_invariants();
    let g = pnorm(vec![b6, 2 * &b4, b2.clone(), Int::from(4)], p);
    let g_full = [
        Int::zero(),
        Int::zero(),
        Int::zero(),
        Int::zero(),
    ];
    let _ = g_full;
    let g = if g.len() < 4 {
        // leading coefficient 4 vanishes only for p = 2
        unreachable!("cubic stays cubic for odd p")
    } else {
        g
    };
    let (x0, _) = repeated_root_of_cubic(&g, p).expect("repeated root exists when p | Δ");
    let inv2 = arith::inv_mod(&Int::from(2), p).unwrap();
    let y0 = ((-(&e.a1 * &x0 + &e.a3)) * inv2).mod_floor(p);
    (x0, y0)
}

/// Split/non-split test for multiplicative reduction.
fn is_split_multiplicative(e: &WeierstrassModel, p: &Int) -> bool {
    if p.to_u32() == Some(2) {
        let (x0, y0) = singular_point(e, p);
        let t = e.translate(&x0, &Int::zero(), &y0);
        // tangent cone y² + a1·xy − a2·x²: rational slopes iff T² + a1·T − a2
        // has a root in F_2
        let two = Int::from(2);
        let c0 = (-&t.a2).mod_floor(&two);
        let c1 = (Int::one() + &t.a1 - &t.a2).mod_floor(&two);
        return c0.is_zero() || c1.is_zero();
    }
    let (b2, b4, b6, _) = e.b_invariants();
    let g = pnorm(vec![b6, 2 * &b4, b2.clone(), Int::from(4)], p);
    let (x0, mult) = repeated_root_of_cubic(&g, p).expect("node exists");
    debug_assert_eq!(mult, 2);
    // 4(x − x0)²(x − β) with 2x0 + β = −b2/4
    let inv4 = arith::inv_mod(&Int::from(4), p).unwrap();
    let beta: Int = (-&b2) * inv4 - 2 * &x0;
    let beta = beta.mod_floor(p);
    let tangent: Int = &x0 - beta;
    arith::jacobi(&tangent.mod_floor(p), p) == 1
}

/// Tate's algorithm at p. The returned data describe the minimal model at p
/// even when the input model is non-minimal there.
pub fn tate_algorithm(e: &WeierstrassModel, p: &Int) -> LocalData {
    let mut e = e.clone();
    let two = Int::from(2);
    let is2 = *p == two;
    loop {
        let delta = e.discriminant();
        assert!(!delta.is_zero(), "nonsingular model required");
        let n = vp(&delta, p);
        if n == 0 {
            return LocalData {
                p: p.clone(),
                kodaira: KodairaSymbol::I0,
                f: 0,
                c: 1,
                m: 1,
                v_delta_min: 0,
            };
        }
        let inv = e.derived_invariants().expect("nonsingular");
        if vp(&inv.c4, p) == 0 {
            // multiplicative reduction: type I_n
            let split = is_split_multiplicative(&e, p);
            let c = if split {
                n
            } else if n % 2 == 0 {
                2
            } else {
                1
            };
            return LocalData {
                p: p.clone(),
                kodaira: KodairaSymbol::In(n),
                f: 1,
                c,
                m: n,
                v_delta_min: n,
            };
        }

        // additive reduction; move the singular point to the origin
        let (r, t) = singular_point(&e, p);
        e = e.translate(&r, &Int::zero(), &t);
        debug_assert!(vp(&e.a3, p) >= 1 && vp(&e.a4, p) >= 1 && vp(&e.a6, p) >= 1);

        if vp(&e.a6, p) < 2 {
            return LocalData {
                p: p.clone(),
                kodaira: KodairaSymbol::II,
                f: n,
                c: 1,
                m: 1,
                v_delta_min: n,
            };
        }
        let (_, _, b6, b8) = e.b_invariants();
        if vp(&b8, p) < 3 {
            return LocalData {
                p: p.clone(),
                kodaira: KodairaSymbol::III,
                f: n - 1,
                c: 2,
                m: 2,
                v_delta_min: n,
            };
        }
        if vp(&b6, p) < 3 {
            let a3t = div_exact(&e.a3, p);
            let a6t = div_exact(&e.a6, &(p * p));
            let c = if quadratic_roots(&Int::one(), &a3t, &(-a6t), p).len() == 2 {
                3
            } else {
                1
            };
            return LocalData {
                p: p.clone(),
                kodaira: KodairaSymbol::IV,
                f: n - 2,
                c,
                m: 3,
                v_delta_min: n,
            };
        }

        // normalize to p | a1, a2; p² | a3, a4; p³ | a6
        if is2 {
            let s = e.a2.mod_floor(&two);
            let t = if vp(&e.a6, p) == 2 {
                2 * div_exact(&e.a6, &Int::from(4)).mod_floor(&two)
            } else {
                Int::zero()
            };
            e = e.translate(&Int::zero(), &s, &t);
        } else {
            let inv2 = arith::inv_mod(&two, p).unwrap();
            let s = ((-&e.a1) * &inv2).mod_floor(p);
            e = e.translate(&Int::zero(), &s, &Int::zero());
            let p2 = p * p;
            let inv2_p2 = arith::inv_mod(&two, &p2).unwrap();
            let t = ((-&e.a3) * inv2_p2).mod_floor(&p2);
            e = e.translate(&Int::zero(), &Int::zero(), &t);
        }
        debug_assert!(
            vp(&e.a1, p) >= 1
                && vp(&e.a2, p) >= 1
                && vp(&e.a3, p) >= 2
                && vp(&e.a4, p) >= 2
                && vp(&e.a6, p) >= 3,
            "normalization failed at p = {p}"
        );

        // P(T) = T³ + a2,1·T² + a4,2·T + a6,3
        let p2 = p * p;
        let p3 = &p2 * p;
        let cubic = pnorm(
            vec![
                div_exact(&e.a6, &p3),
                div_exact(&e.a4, &p2),
                div_exact(&e.a2, p),
                Int::one(),
            ],
            p,
        );
        match repeated_root_of_cubic(&cubic, p) {
            None => {
                // distinct roots: I0*
                let c = 1 + count_distinct_roots(&cubic, p) as u32;
                return LocalData {
                    p: p.clone(),
                    kodaira: KodairaSymbol::I0Star,
                    f: n - 4,
                    c,
                    m: 5,
                    v_delta_min: n,
                };
            }
            Some((r0, 2)) => {
                // I_ν* for some ν ≥ 1: walk the chain of quadratics
                e = e.translate(&(p * &r0), &Int::zero(), &Int::zero());
                debug_assert!(
                    vp(&e.a2, p) == 1 && vp(&e.a4, p) >= 3 && vp(&e.a6, p) >= 4,
                    "double-root translation failed"
                );
                let mut ix = 3u32;
                let mut iy = 3u32;
                let mut mx = p * p;
                let mut my = p * p;
                let c;
                loop {
                    let a2t = div_exact(&e.a2, p);
                    let a3t = div_exact(&e.a3, &my);
                    let a6t = div_exact(&e.a6, &(&mx * &my));
                    // Y² + a3t·Y − a6t
                    let disc: Int = &a3t * &a3t + 4 * &a6t;
                    let disc = disc.mod_floor(p);
                    if !disc.is_zero() {
                        c = if quadratic_roots(&Int::one(), &a3t, &(-&a6t), p).len() == 2 {
                            4
                        } else {
                            2
                        };
                        break;
                    }
                    let y0 = if is2 {
                        a6t.mod_floor(&two)
                    } else {
                        ((-&a3t) * arith::inv_mod(&two, p).unwrap()).mod_floor(p)
                    };
                    e = e.translate(&Int::zero(), &Int::zero(), &(&my * y0));
                    iy += 1;
                    my = &my * p;

                    let a4t = div_exact(&e.a4, &(p * &mx));
                    let a6t = div_exact(&e.a6, &(&mx * &my));
                    // a2t·X² + a4t·X + a6t
                    let disc: Int = &a4t * &a4t - 4 * &a2t * &a6t;
                    let disc = disc.mod_floor(p);
                    if !disc.is_zero() {
                        c = if quadratic_roots(&a2t, &a4t, &a6t, p).len() == 2 {
                            4
                        } else {
                            2
                        };
                        break;
                    }
                    let x0 = if is2 {
                        (&a6t * &a2t).mod_floor(&two)
                    } else {
                        let twice: Int = 2 * &a2t;
                        ((-&a4t) * arith::inv_mod(&twice.mod_floor(p), p).unwrap()).mod_floor(p)
                    };
                    e = e.translate(&(&mx * x0), &Int::zero(), &Int::zero());
                    ix += 1;
                    mx = &mx * p;
                }
                let nu = ix + iy - 5;
                return LocalData {
                    p: p.clone(),
                    kodaira: KodairaSymbol::InStar(nu),
                    f: n - nu - 4,
                    c,
                    m: nu + 5,
                    v_delta_min: n,
                };
            }
            Some((r0, _)) => {
                // triple root
                e = e.translate(&(p * &r0), &Int::zero(), &Int::zero());
                debug_assert!(
                    vp(&e.a2, p) >= 2 && vp(&e.a4, p) >= 3 && vp(&e.a6, p) >= 4,
                    "triple-root translation failed"
                );
                let p4 = &p2 * &p2;
                let a3t = div_exact(&e.a3, &p2);
                let a6t = div_exact(&e.a6, &p4);
                // Y² + a3,2·Y − a6,4
                let disc: Int = &a3t * &a3t + 4 * &a6t;
                let disc = disc.mod_floor(p);
                if !disc.is_zero() {
                    let c = if quadratic_roots(&Int::one(), &a3t, &(-&a6t), p).len() == 2 {
                        3
                    } else {
                        1
                    };
                    return LocalData {
                        p: p.clone(),
                        kodaira: KodairaSymbol::IVStar,
                        f: n - 6,
                        c,
                        m: 7,
                        v_delta_min: n,
                    };
                }
                let y0 = if is2 {
                    a6t.mod_floor(&two)
                } else {
                    ((-&a3t) * arith::inv_mod(&two, p).unwrap()).mod_floor(p)
                };
                e = e.translate(&Int::zero(), &Int::zero(), &(&p2 * y0));
                debug_assert!(vp(&e.a3, p) >= 3 && vp(&e.a6, p) >= 5);
                if vp(&e.a4, p) < 4 {
                    return LocalData {
                        p: p.clone(),
                        kodaira: KodairaSymbol::IIIStar,
                        f: n - 7,
                        c: 2,
                        m: 8,
                        v_delta_min: n,
                    };
                }
                if vp(&e.a6, p) < 6 {
                    return LocalData {
                        p: p.clone(),
                        kodaira: KodairaSymbol::IIStar,
                        f: n - 8,
                        c: 1,
                        m: 9,
                        v_delta_min: n,
                    };
                }
                // non-minimal at p: rescale and restart
                e = e.scale_down(p);
            }
        }
    }
}

/// Runs Tate's algorithm at every prime dividing Δ(E) and aggregates.
pub fn global_data(e: &WeierstrassModel) -> Result<GlobalData, ArithError> {
    let delta = e.discriminant();
    assert!(!delta.is_zero(), "nonsingular model required");
    let fac = arith::factor(&delta)?;
    let mut per_prime = Vec::new();
    let mut conductor = Int::one();
    let mut delta_min = Int::from(fac.sign);
    for (p, _) in &fac.factors {
        let ld = tate_algorithm(e, p);
        assert!(ogg_check(&ld), "Ogg relation violated at p = {p}");
        conductor *= p.pow(ld.f);
        delta_min *= p.pow(ld.v_delta_min);
        per_prime.push(ld);
    }
    Ok(GlobalData { conductor, delta_min, per_prime })
}
