//! The numerical layer of Bridgeland stability: charges, slopes, heart
//! classification, Bogomolov checks, the support form and wall loci.

use num::{Signed, Zero};

use crate::chern::{discriminant, MumfordChern};
use crate::divisor::{intersect, is_numerically_ample, pushforward, DivisorClass, Level};
use crate::error::{Error, Result};
use crate::rat::{int, rat, format_rat, GaussianRational, Rat};
use crate::surface::SurfaceModel;

/// (H, B, C): the polarization pair and the support constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityParams {
    pub h: DivisorClass,
    pub b: DivisorClass,
    pub c: Rat,
}

impl StabilityParams {
    /// Checks that H is numerically ample relative to the inventory and
    /// that C >= 0.
    pub fn new(s: &SurfaceModel, h: DivisorClass, b: DivisorClass, c: Rat) -> Result<Self> {
        if !is_numerically_ample(s, &h)? {
            return Err(Error::Usage(
                "H is not numerically ample relative to the curve inventory".into(),
            ));
        }
        Self::new_unchecked(s, h, b, c)
    }

    /// Skips the ampleness check (the inventory may be incomplete); the
    /// shape constraints on the classes are still enforced.
    pub fn new_unchecked(s: &SurfaceModel, h: DivisorClass, b: DivisorClass, c: Rat) -> Result<Self> {
        if h.level != Level::Base || b.level != Level::Base {
            return Err(Error::Usage("H and B must be base-level classes".into()));
        }
        if h.surface != s.name || b.surface != s.name {
            return Err(Error::Usage("H and B must live on the given surface".into()));
        }
        if c.is_negative() {
            return Err(Error::Usage("support constant C must be >= 0".into()));
        }
        Ok(StabilityParams { h, b, c })
    }
}

/// Lower slope bound of a Harder-Narasimhan filtration; torsion sheaves
/// have slope +infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuMin {
    Finite(Rat),
    PlusInfinity,
}

/// A class with optional slope data. HN bounds are inputs, never
/// computed from a sheaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalObject {
    pub chern: MumfordChern,
    pub hn_bounds: Option<(MuMin, Rat)>,
    pub torsion_flag: bool,
}

impl NumericalObject {
    pub fn new(
        chern: MumfordChern,
        hn_bounds: Option<(MuMin, Rat)>,
        torsion_flag: bool,
    ) -> Result<Self> {
        if torsion_flag {
            if chern.ch0 != 0 {
                return Err(Error::Usage("torsion objects must have ch0 = 0".into()));
            }
            if let Some((mu_min, _)) = &hn_bounds {
                if *mu_min != MuMin::PlusInfinity {
                    return Err(Error::Usage("torsion objects have mu_min = +infinity".into()));
                }
            }
        }
        if let Some((MuMin::Finite(lo), hi)) = &hn_bounds {
            if lo > hi {
                return Err(Error::Usage("mu_min exceeds mu_max".into()));
            }
        }
        Ok(NumericalObject { chern, hn_bounds, torsion_flag })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeartSide {
    /// μ_min > B·H: enters the heart unshifted.
    TorsionSide,
    /// torsion free with μ_max <= B·H: enters the heart shifted by [1].
    FreeSide,
    Mixed,
    InsufficientData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BogomolovOutcome {
    pub holds: bool,
    pub margin: Rat,
}

/// μ_H = ch₁·H / ch₀, for positive rank.
pub fn slope(s: &SurfaceModel, params: &StabilityParams, mc: &MumfordChern) -> Result<Rat> {
    if mc.ch0 <= 0 {
        return Err(Error::Usage("slope requires ch0 > 0".into()));
    }
    Ok(intersect(s, &mc.ch1, &params.h)? / int(mc.ch0))
}

/// margin = Δ + C·ch₀²; the inequality holds iff the margin is >= 0.
pub fn bogomolov_check(
    s: &SurfaceModel,
    params: &StabilityParams,
    mc: &MumfordChern,
) -> Result<BogomolovOutcome> {
    let margin = discriminant(s, mc)? + &params.c * int(mc.ch0) * int(mc.ch0);
    Ok(BogomolovOutcome { holds: !margin.is_negative(), margin })
}

/// Z = −[ch₂ − ch₁·(B+iH) + ½ch₀(B+iH)²] + (C/2)·ch₀, evaluated with
/// the Mumford pairing.
pub fn charge(
    s: &SurfaceModel,
    params: &StabilityParams,
    mc: &MumfordChern,
) -> Result<GaussianRational> {
    let ch0 = int(mc.ch0);
    let c1b = intersect(s, &mc.ch1, &params.b)?;
    let c1h = intersect(s, &mc.ch1, &params.h)?;
    let b2 = intersect(s, &params.b, &params.b)?;
    let h2 = intersect(s, &params.h, &params.h)?;
    let bh = intersect(s, &params.b, &params.h)?;
    let re = -&mc.ch2 + c1b - &ch0 * (b2 - h2) * rat(1, 2) + &params.c * &ch0 * rat(1, 2);
    let im = c1h - &ch0 * bh;
    Ok(GaussianRational::new(re, im))
}

/// Verifies the closed form of the real part,
/// ℜZ = Δ/(2ch₀) − (ch₁−ch₀B)²/(2ch₀) + (ch₀/2)(H²+C),
/// against the direct expansion. A polynomial identity: always true.
pub fn real_part_identity_check(
    s: &SurfaceModel,
    params: &StabilityParams,
    mc: &MumfordChern,
) -> Result<bool> {
    if mc.ch0 <= 0 {
        return Err(Error::Usage("real part identity requires ch0 > 0".into()));
    }
    let z = charge(s, params, mc)?;
    let r = int(mc.ch0);
    let delta = discriminant(s, mc)?;
    let ch1b = mc.ch1.sub(&params.b.scale(&r))?;
    let ch1b_sq = intersect(s, &ch1b, &ch1b)?;
    let h2 = intersect(s, &params.h, &params.h)?;
    let half_r = rat(1, 2) / &r;
    let rhs = delta * &half_r - ch1b_sq * &half_r + &r * (h2 + &params.c) * rat(1, 2);
    Ok(z.re == rhs)
}

/// Places an object relative to the torsion pair at level B·H.
pub fn classify_heart(
    s: &SurfaceModel,
    params: &StabilityParams,
    obj: &NumericalObject,
    assume_semistable: bool,
) -> Result<HeartSide> {
    let bh = intersect(s, &params.b, &params.h)?;
    if obj.torsion_flag {
        return Ok(HeartSide::TorsionSide);
    }
    let bounds = match &obj.hn_bounds {
        Some(b) => b.clone(),
        None => {
            if obj.chern.ch0 > 0 && assume_semistable {
                let mu = slope(s, params, &obj.chern)?;
                (MuMin::Finite(mu.clone()), mu)
            } else {
                return Ok(HeartSide::InsufficientData);
            }
        }
    };
    match bounds {
        (MuMin::PlusInfinity, _) => Ok(HeartSide::TorsionSide),
        (MuMin::Finite(mu_min), mu_max) => {
            if mu_min > bh {
                Ok(HeartSide::TorsionSide)
            } else if mu_max <= bh {
                Ok(HeartSide::FreeSide)
            } else {
                Ok(HeartSide::Mixed)
            }
        }
    }
}

/// Exact phase descriptor of a heart object: either phase one (Z on the
/// negative real axis) or the cotangent ℜ/ℑ with ℑ > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phase {
    One,
    Cotangent(Rat),
}

/// Phase of a charge value, with free-side objects passed through their
/// shift (negated charge) by the caller via `shifted`.
pub fn phase(z: &GaussianRational, shifted: bool) -> Result<Phase> {
    let z = if shifted { -z.clone() } else { z.clone() };
    if z.im.is_positive() {
        Ok(Phase::Cotangent(&z.re / &z.im))
    } else if z.im.is_zero() && z.re.is_negative() {
        Ok(Phase::One)
    } else {
        Err(Error::Consistency(format!(
            "charge {z} lies outside the allowed half-plane; bad inputs or C too small"
        )))
    }
}

/// Image of a class in Z ⊕ N(S) ⊕ Z: rank, integer coordinates of ch₁
/// on the non-exceptional generators, and ch₂ scaled to an integer by
/// the denominator bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaVector {
    pub rank: i64,
    pub ns_part: Vec<num::BigInt>,
    pub degree: num::BigInt,
}

pub fn lambda_vector(s: &SurfaceModel, mc: &MumfordChern) -> Result<LambdaVector> {
    let mut ns_part = Vec::new();
    for (i, c) in mc.ch1.coords.iter().enumerate() {
        if s.is_exceptional_index(i) {
            continue;
        }
        if !c.is_integer() {
            return Err(Error::Usage(format!(
                "ch1 coordinate {} on {} is not an integer: not a Weil class in this presentation",
                format_rat(c),
                s.basis[i]
            )));
        }
        ns_part.push(c.numer().clone());
    }
    let n = s.denominator_bound()?;
    let scaled = &mc.ch2 * &n;
    if !scaled.is_integer() {
        return Err(Error::Usage(format!(
            "ch2 = {} is not in (1/N)Z for N = {}",
            format_rat(&mc.ch2),
            format_rat(&n)
        )));
    }
    Ok(LambdaVector { rank: mc.ch0, ns_part, degree: scaled.numer().clone() })
}

/// Enlarges a Bogomolov constant so that C·(H·D)² + D² >= 0 for every
/// inventory curve D.
pub fn support_constant(
    s: &SurfaceModel,
    h: &DivisorClass,
    bogomolov_c: &Rat,
) -> Result<Rat> {
    if !is_numerically_ample(s, h)? {
        return Err(Error::Usage(
            "support_constant requires H numerically ample relative to the inventory".into(),
        ));
    }
    let mut best = bogomolov_c.clone();
    for curve in &s.curve_inventory {
        let cv: Vec<Rat> = curve.coords.iter().map(|&x| int(x)).collect();
        let d_res = DivisorClass::resolution(s, cv)?;
        let d = pushforward(s, &d_res)?;
        let d2 = intersect(s, &d, &d)?;
        if !d2.is_negative() {
            continue;
        }
        let hd = intersect(s, h, &d)?;
        if hd.is_zero() {
            return Err(Error::Usage(format!(
                "inventory curve {} has H·D = 0 and D² < 0: H is not numerically ample",
                curve.name
            )));
        }
        let candidate = -d2 / (&hd * &hd);
        if candidate > best {
            best = candidate;
        }
    }
    Ok(best)
}

/// Q(α) = Δ(α) + C·((ch₁ − ch₀B)·H)².
pub fn support_form(
    s: &SurfaceModel,
    params: &StabilityParams,
    mc: &MumfordChern,
) -> Result<Rat> {
    let delta = discriminant(s, mc)?;
    let ch1b = mc.ch1.sub(&params.b.scale(&int(mc.ch0)))?;
    let t = intersect(s, &ch1b, &params.h)?;
    Ok(delta + &params.c * &t * &t)
}

/// Coefficients of ℑ(conj(Z(w))·Z(v)) = t·(q_bb·b² + q_tt·t² + q_b·b +
/// q_t·t + q_1) over the slice (B₀ + bH₀, tH₀), t > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCoefficients {
    pub q_bb: Rat,
    pub q_tt: Rat,
    pub q_b: Rat,
    pub q_t: Rat,
    pub q_1: Rat,
}

impl WallCoefficients {
    /// Evaluates t·(q_bb b² + q_tt t² + q_b b + q_t t + q_1).
    pub fn eval(&self, b: &Rat, t: &Rat) -> Rat {
        let inner = &self.q_bb * b * b + &self.q_tt * t * t + &self.q_b * b + &self.q_t * t
            + &self.q_1;
        t * inner
    }

    pub fn is_zero(&self) -> bool {
        self.q_bb.is_zero()
            && self.q_tt.is_zero()
            && self.q_b.is_zero()
            && self.q_t.is_zero()
            && self.q_1.is_zero()
    }
}

/// Geometry of a wall in the (b,t) upper half-plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WallShape {
    /// identically zero locus: the two classes are proportional in Λ
    Degenerate,
    Empty,
    VerticalLine { b: Rat },
    Semicircle { center_b: Rat, radius_sq: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallLocus {
    pub coefficients: WallCoefficients,
    pub shape: WallShape,
}

/// Wall of the pair (v, w) for the charge family Z_{tH₀, B₀+bH₀}.
/// The support constant enters the real parts of both charges.
pub fn wall_locus(
    s: &SurfaceModel,
    h0: &DivisorClass,
    b0: &DivisorClass,
    v: &MumfordChern,
    w: &MumfordChern,
    c: &Rat,
) -> Result<WallLocus> {
    if !is_numerically_ample(s, h0)? {
        return Err(Error::Usage(
            "wall_locus requires H0 numerically ample relative to the inventory".into(),
        ));
    }
    wall_locus_unchecked(s, h0, b0, v, w, c)
}

/// Same as `wall_locus` but trusts the caller about ampleness of H0
/// (the inventory may be empty or incomplete).
pub fn wall_locus_unchecked(
    s: &SurfaceModel,
    h0: &DivisorClass,
    b0: &DivisorClass,
    v: &MumfordChern,
    w: &MumfordChern,
    c: &Rat,
) -> Result<WallLocus> {
    let h0h0 = intersect(s, h0, h0)?;
    let b0h0 = intersect(s, b0, h0)?;
    let b0b0 = intersect(s, b0, b0)?;
    // per class: Re Z = A + alpha·b − (beta/2)·b² + (beta/2)·t²,
    //            Im Z = t·(alpha − beta·b)
    let abc = |mc: &MumfordChern| -> Result<(Rat, Rat, Rat)> {
        let ch0 = int(mc.ch0);
        let alpha = intersect(s, &mc.ch1, h0)? - &ch0 * &b0h0;
        let beta = &ch0 * &h0h0;
        let a = -&mc.ch2 + intersect(s, &mc.ch1, b0)? - &ch0 * &b0b0 * rat(1, 2)
            + c * &ch0 * rat(1, 2);
        Ok((a, alpha, beta))
    };
    let (av, alv, bev) = abc(v)?;
    let (aw, alw, bew) = abc(w)?;
    // Im(conj(Zw)·Zv) = t·[ K2·(b² + t²) + K1·b + K0 ]
    let k2 = (&alv * &bew - &alw * &bev) * rat(1, 2);
    let k1 = &bew * &av - &bev * &aw;
    let k0 = &aw * &alv - &alw * &av;
    let coefficients = WallCoefficients {
        q_bb: k2.clone(),
        q_tt: k2.clone(),
        q_b: k1.clone(),
        q_t: Rat::zero(),
        q_1: k0.clone(),
    };
    let shape = if coefficients.is_zero() {
        WallShape::Degenerate
    } else if !k2.is_zero() {
        let center = -&k1 / (int(2) * &k2);
        let radius_sq = &center * &center - &k0 / &k2;
        if radius_sq.is_positive() {
            WallShape::Semicircle { center_b: center, radius_sq }
        } else {
            WallShape::Empty
        }
    } else if !k1.is_zero() {
        WallShape::VerticalLine { b: -&k0 / &k1 }
    } else {
        WallShape::Empty
    };
    Ok(WallLocus { coefficients, shape })
}

/// Charge of a class at a point of the wall slice, for brute-force
/// cross-checks of `wall_locus`.
pub fn slice_charge(
    s: &SurfaceModel,
    h0: &DivisorClass,
    b0: &DivisorClass,
    c: &Rat,
    mc: &MumfordChern,
    b: &Rat,
    t: &Rat,
) -> Result<GaussianRational> {
    let h = h0.scale(t);
    let bcl = b0.add(&h0.scale(b))?;
    let params = StabilityParams::new_unchecked(s, h, bcl, c.clone())?;
    charge(s, &params, mc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::canonical_class;
    use crate::surface::builtin_surface;

    fn p2_params() -> (SurfaceModel, StabilityParams) {
        let s = builtin_surface("projective-plane").unwrap();
        let h = DivisorClass::base_from_ints(&s, &[1]).unwrap();
        let b = DivisorClass::zero(&s, Level::Base);
        let params = StabilityParams::new(&s, h, b, Rat::zero()).unwrap();
        (s, params)
    }

    fn p2_mc(s: &SurfaceModel, ch0: i64, d: i64, ch2: Rat) -> MumfordChern {
        MumfordChern::new(s, ch0, DivisorClass::base_from_ints(s, &[d]).unwrap(), ch2).unwrap()
    }

    #[test]
    fn slopes() {
        let (s, params) = p2_params();
        assert_eq!(slope(&s, &params, &p2_mc(&s, 1, 1, Rat::zero())).unwrap(), int(1));
        assert_eq!(slope(&s, &params, &p2_mc(&s, 1, 0, Rat::zero())).unwrap(), int(0));
        assert!(slope(&s, &params, &p2_mc(&s, 0, 0, int(1))).is_err());

        let qc = builtin_surface("quadric-cone").unwrap();
        let h = DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap();
        let params = StabilityParams::new(&qc, h, DivisorClass::zero(&qc, Level::Base), Rat::zero())
            .unwrap();
        let mc = MumfordChern::new(
            &qc,
            2,
            DivisorClass::base_from_ints(&qc, &[0, 3]).unwrap(),
            Rat::zero(),
        )
        .unwrap();
        assert_eq!(slope(&qc, &params, &mc).unwrap(), rat(3, 4));
    }

    #[test]
    fn bogomolov_examples() {
        let (s, params) = p2_params();
        let tangent = p2_mc(&s, 2, 3, rat(3, 2));
        let r = bogomolov_check(&s, &params, &tangent).unwrap();
        assert!(r.holds);
        assert_eq!(r.margin, int(3));
        let ideal = p2_mc(&s, 1, 0, int(-1));
        let r = bogomolov_check(&s, &params, &ideal).unwrap();
        assert!(r.holds);
        assert_eq!(r.margin, int(2));
        let bad = p2_mc(&s, 1, 0, int(1));
        let r = bogomolov_check(&s, &params, &bad).unwrap();
        assert!(!r.holds);
        assert_eq!(r.margin, int(-2));
    }

    #[test]
    fn charge_examples() {
        let (s, params) = p2_params();
        assert_eq!(
            charge(&s, &params, &p2_mc(&s, 1, 0, Rat::zero())).unwrap(),
            GaussianRational::from_real(rat(1, 2))
        );
        assert_eq!(
            charge(&s, &params, &p2_mc(&s, 0, 0, int(1))).unwrap(),
            GaussianRational::from_real(int(-1))
        );
        assert_eq!(
            charge(&s, &params, &p2_mc(&s, 1, 1, rat(1, 2))).unwrap(),
            GaussianRational::i()
        );
    }

    #[test]
    fn real_part_identity() {
        let (s, params) = p2_params();
        for (ch0, d, ch2) in [(1, 0, int(0)), (2, 3, rat(3, 2)), (3, -2, rat(7, 3))] {
            assert!(real_part_identity_check(&s, &params, &p2_mc(&s, ch0, d, ch2)).unwrap());
        }
        let qc = builtin_surface("quadric-cone").unwrap();
        let h = DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap();
        let params =
            StabilityParams::new(&qc, h, DivisorClass::zero(&qc, Level::Base), Rat::zero()).unwrap();
        let mc = MumfordChern::new(
            &qc,
            1,
            DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap(),
            Rat::zero(),
        )
        .unwrap();
        assert!(real_part_identity_check(&qc, &params, &mc).unwrap());
    }

    #[test]
    fn heart_classification() {
        let (s, params) = p2_params();
        let sky = NumericalObject::new(p2_mc(&s, 0, 0, int(1)), None, true).unwrap();
        assert_eq!(classify_heart(&s, &params, &sky, false).unwrap(), HeartSide::TorsionSide);

        let o = NumericalObject::new(
            p2_mc(&s, 1, 0, Rat::zero()),
            Some((MuMin::Finite(int(0)), int(0))),
            false,
        )
        .unwrap();
        assert_eq!(classify_heart(&s, &params, &o, false).unwrap(), HeartSide::FreeSide);

        let o1 = NumericalObject::new(
            p2_mc(&s, 1, 1, rat(1, 2)),
            Some((MuMin::Finite(int(1)), int(1))),
            false,
        )
        .unwrap();
        assert_eq!(classify_heart(&s, &params, &o1, false).unwrap(), HeartSide::TorsionSide);

        let unknown = NumericalObject::new(p2_mc(&s, 2, 1, Rat::zero()), None, false).unwrap();
        assert_eq!(
            classify_heart(&s, &params, &unknown, false).unwrap(),
            HeartSide::InsufficientData
        );
        assert_eq!(
            classify_heart(&s, &params, &unknown, true).unwrap(),
            HeartSide::TorsionSide
        );

        let mixed = NumericalObject::new(
            p2_mc(&s, 2, 1, Rat::zero()),
            Some((MuMin::Finite(int(-1)), int(1))),
            false,
        )
        .unwrap();
        assert_eq!(classify_heart(&s, &params, &mixed, false).unwrap(), HeartSide::Mixed);
    }

    #[test]
    fn phases() {
        let (s, params) = p2_params();
        let sky = charge(&s, &params, &p2_mc(&s, 0, 0, int(1))).unwrap();
        assert_eq!(phase(&sky, false).unwrap(), Phase::One);
        // O enters the heart shifted; its negated charge is -1/2
        let o = charge(&s, &params, &p2_mc(&s, 1, 0, Rat::zero())).unwrap();
        assert_eq!(phase(&o, true).unwrap(), Phase::One);
        let o1 = charge(&s, &params, &p2_mc(&s, 1, 1, rat(1, 2))).unwrap();
        assert_eq!(phase(&o1, false).unwrap(), Phase::Cotangent(int(0)));
        // unshifted O sits on the positive real axis: forbidden
        assert!(matches!(phase(&o, false), Err(Error::Consistency(_))));
    }

    #[test]
    fn lambda_vectors() {
        let qc = builtin_surface("quadric-cone").unwrap();
        let trivial = MumfordChern::new(
            &qc,
            1,
            DivisorClass::zero(&qc, Level::Base),
            Rat::zero(),
        )
        .unwrap();
        let lv = lambda_vector(&qc, &trivial).unwrap();
        assert_eq!(lv.rank, 1);
        assert_eq!(lv.ns_part, vec![num::BigInt::from(0)]);
        assert_eq!(lv.degree, num::BigInt::from(0));

        let ol = MumfordChern::new(
            &qc,
            1,
            DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap(),
            Rat::zero(),
        )
        .unwrap();
        assert_eq!(lambda_vector(&qc, &ol).unwrap().ns_part, vec![num::BigInt::from(1)]);

        let half = MumfordChern::new(
            &qc,
            1,
            DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap(),
            rat(1, 2),
        )
        .unwrap();
        assert_eq!(lambda_vector(&qc, &half).unwrap().degree, num::BigInt::from(1));

        let bad = MumfordChern::new(
            &qc,
            1,
            DivisorClass::base(&qc, vec![int(0), rat(1, 2)]).unwrap(),
            Rat::zero(),
        )
        .unwrap();
        assert!(lambda_vector(&qc, &bad).is_err());
    }

    #[test]
    fn support_constants() {
        let f2 = builtin_surface("hirzebruch-2").unwrap();
        let h = DivisorClass::base_from_ints(&f2, &[1, 3]).unwrap();
        assert_eq!(support_constant(&f2, &h, &Rat::zero()).unwrap(), int(2));

        let qc = builtin_surface("quadric-cone").unwrap();
        let l = DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap();
        assert_eq!(support_constant(&qc, &l, &Rat::zero()).unwrap(), int(0));

        let p2 = builtin_surface("projective-plane").unwrap();
        let hp = DivisorClass::base_from_ints(&p2, &[1]).unwrap();
        assert_eq!(support_constant(&p2, &hp, &Rat::zero()).unwrap(), int(0));
    }

    #[test]
    fn support_form_values() {
        let (s, params) = p2_params();
        assert_eq!(support_form(&s, &params, &p2_mc(&s, 1, 2, int(2))).unwrap(), int(0));
        assert_eq!(support_form(&s, &params, &p2_mc(&s, 2, 3, rat(3, 2))).unwrap(), int(3));

        let f2 = builtin_surface("hirzebruch-2").unwrap();
        let h = DivisorClass::base_from_ints(&f2, &[1, 3]).unwrap();
        let params = StabilityParams::new(&f2, h, DivisorClass::zero(&f2, Level::Base), int(2))
            .unwrap();
        let mc = MumfordChern::new(
            &f2,
            1,
            DivisorClass::base_from_ints(&f2, &[1, 0]).unwrap(),
            int(-1),
        )
        .unwrap();
        assert_eq!(support_form(&f2, &params, &mc).unwrap(), int(2));
    }

    #[test]
    fn wall_examples() {
        let s = builtin_surface("projective-plane").unwrap();
        let h0 = DivisorClass::base_from_ints(&s, &[1]).unwrap();
        let b0 = DivisorClass::zero(&s, Level::Base);
        let o = p2_mc(&s, 1, 0, Rat::zero());
        let sky = p2_mc(&s, 0, 0, int(1));
        let wall = wall_locus(&s, &h0, &b0, &o, &sky, &Rat::zero()).unwrap();
        assert_eq!(wall.shape, WallShape::VerticalLine { b: int(0) });

        let degenerate = wall_locus(&s, &h0, &b0, &o, &o, &Rat::zero()).unwrap();
        assert_eq!(degenerate.shape, WallShape::Degenerate);

        let o1 = p2_mc(&s, 1, 1, rat(1, 2));
        let wall = wall_locus(&s, &h0, &b0, &o, &o1, &Rat::zero()).unwrap();
        match &wall.shape {
            WallShape::Semicircle { center_b, radius_sq } => {
                assert_eq!(center_b, &rat(1, 2));
                assert_eq!(radius_sq, &rat(1, 4));
            }
            other => panic!("expected a semicircle, got {other:?}"),
        }
        // sample rational points of the circle b² + t² = b and check the
        // bracket against direct charge evaluation
        for m in [int(1), int(2), int(3), rat(1, 2), rat(1, 3)] {
            let denom = int(1) + &m * &m;
            let b = int(1) / &denom;
            let t = &m / &denom;
            assert!(wall.coefficients.eval(&b, &t).is_zero());
            let zv = slice_charge(&s, &h0, &b0, &Rat::zero(), &o, &b, &t).unwrap();
            let zw = slice_charge(&s, &h0, &b0, &Rat::zero(), &o1, &b, &t).unwrap();
            assert!((zw.conj() * zv).im.is_zero());
        }
    }

    #[test]
    fn wall_bracket_matches_direct_evaluation_off_wall() {
        let qc = builtin_surface("quadric-cone").unwrap();
        let h0 = DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap();
        let b0 = DivisorClass::zero(&qc, Level::Base);
        let k = canonical_class(&qc).unwrap();
        let v = MumfordChern::new(&qc, 1, k, rat(3, 2)).unwrap();
        let w = MumfordChern::new(
            &qc,
            2,
            DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap(),
            rat(-1, 2),
        )
        .unwrap();
        let c = rat(1, 3);
        let wall = wall_locus(&qc, &h0, &b0, &v, &w, &c).unwrap();
        for (b, t) in [(int(0), int(1)), (rat(1, 2), rat(1, 3)), (int(-2), rat(5, 7))] {
            let zv = slice_charge(&qc, &h0, &b0, &c, &v, &b, &t).unwrap();
            let zw = slice_charge(&qc, &h0, &b0, &c, &w, &b, &t).unwrap();
            assert_eq!(wall.coefficients.eval(&b, &t), (zw.conj() * zv).im);
        }
    }
}
