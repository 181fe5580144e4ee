//! Mumford pullback and pushforward of Weil divisor classes, the
//! intersection pairing on the base surface, and positivity checks
//! relative to the declared curve inventory.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Definiteness, RationalMatrix};
use crate::rat::{int, Rat};
use crate::surface::SurfaceModel;

/// Where a divisor class lives: on the resolution, or as a Weil class on
/// the base surface (represented by strict-transform coordinates that
/// vanish on exceptional generators).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Resolution,
    Base,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub surface: String,
    pub level: Level,
    pub coords: Vec<Rat>,
}

impl DivisorClass {
    pub fn resolution(s: &SurfaceModel, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != s.rank() {
            return Err(Error::Usage("divisor coordinate length mismatch".into()));
        }
        Ok(DivisorClass { surface: s.name.clone(), level: Level::Resolution, coords })
    }

    /// A base class; coordinates on exceptional generators must vanish.
    pub fn base(s: &SurfaceModel, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != s.rank() {
            return Err(Error::Usage("divisor coordinate length mismatch".into()));
        }
        for i in s.exceptional_indices() {
            if !coords[i].is_zero() {
                return Err(Error::Usage(format!(
                    "base class has nonzero coordinate on exceptional generator {}",
                    s.basis[i]
                )));
            }
        }
        Ok(DivisorClass { surface: s.name.clone(), level: Level::Base, coords })
    }

    pub fn base_from_ints(s: &SurfaceModel, coords: &[i64]) -> Result<Self> {
        Self::base(s, coords.iter().map(|&c| int(c)).collect())
    }

    pub fn resolution_from_ints(s: &SurfaceModel, coords: &[i64]) -> Result<Self> {
        Self::resolution(s, coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(s: &SurfaceModel, level: Level) -> Self {
        DivisorClass { surface: s.name.clone(), level, coords: vec![Rat::zero(); s.rank()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        DivisorClass {
            surface: self.surface.clone(),
            level: self.level,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &DivisorClass) -> Result<Self> {
        if self.surface != other.surface || self.level != other.level {
            return Err(Error::Usage("cannot add classes on different surfaces or levels".into()));
        }
        Ok(DivisorClass {
            surface: self.surface.clone(),
            level: self.level,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    fn check_surface(&self, s: &SurfaceModel) -> Result<()> {
        if self.surface != s.name {
            return Err(Error::Usage(format!(
                "class on surface `{}` used with surface `{}`",
                self.surface, s.name
            )));
        }
        Ok(())
    }
}

/// The unique resolution class agreeing with the strict transform away
/// from the exceptional locus and orthogonal to every exceptional curve.
pub fn mumford_pullback(s: &SurfaceModel, d: &DivisorClass) -> Result<DivisorClass> {
    d.check_surface(s)?;
    if d.level != Level::Base {
        return Err(Error::Usage("mumford_pullback expects a base-level class".into()));
    }
    let n = s.rank();
    let mut coords = d.coords.clone();
    for p in &s.singular_points {
        let block = s.gram.submatrix(&p.exceptional);
        let rhs: Vec<Rat> = p
            .exceptional
            .iter()
            .map(|&j| {
                let mut e = vec![Rat::zero(); n];
                e[j] = int(1);
                s.gram.pair(&d.coords, &e).map(|v| -v)
            })
            .collect::<Result<_>>()?;
        let corr = block.solve_linear(&rhs)?;
        for (&i, a) in p.exceptional.iter().zip(corr) {
            coords[i] = &coords[i] + &a;
        }
    }
    DivisorClass::resolution(s, coords)
}

/// Drops exceptional coordinates, landing in the base presentation.
pub fn pushforward(s: &SurfaceModel, d: &DivisorClass) -> Result<DivisorClass> {
    d.check_surface(s)?;
    if d.level != Level::Resolution {
        return Err(Error::Usage("pushforward expects a resolution-level class".into()));
    }
    let mut coords = d.coords.clone();
    for i in s.exceptional_indices() {
        coords[i] = Rat::zero();
    }
    DivisorClass::base(s, coords)
}

fn as_resolution(s: &SurfaceModel, d: &DivisorClass) -> Result<Vec<Rat>> {
    match d.level {
        Level::Resolution => {
            d.check_surface(s)?;
            Ok(d.coords.clone())
        }
        Level::Base => Ok(mumford_pullback(s, d)?.coords),
    }
}

/// Mumford intersection number. Base classes are pulled back first;
/// resolution classes are paired as-is.
pub fn intersect(s: &SurfaceModel, a: &DivisorClass, b: &DivisorClass) -> Result<Rat> {
    a.check_surface(s)?;
    b.check_surface(s)?;
    let va = as_resolution(s, a)?;
    let vb = as_resolution(s, b)?;
    s.gram.pair(&va, &vb)
}

/// The canonical Weil class of the base surface.
pub fn canonical_class(s: &SurfaceModel) -> Result<DivisorClass> {
    let k_res = DivisorClass::resolution(s, s.canonical_resolution_rat())?;
    pushforward(s, &k_res)
}

fn inventory_pairings(s: &SurfaceModel, h: &DivisorClass) -> Result<Vec<(String, Rat)>> {
    if s.curve_inventory.is_empty() {
        return Err(Error::Usage(format!(
            "surface `{}` has an empty curve inventory; nef/ampleness checks are meaningless",
            s.name
        )));
    }
    let hv = as_resolution(s, h)?;
    s.curve_inventory
        .iter()
        .map(|c| {
            let cv: Vec<Rat> = c.coords.iter().map(|&x| int(x)).collect();
            Ok((c.name.clone(), s.gram.pair(&hv, &cv)?))
        })
        .collect()
}

/// h·C >= 0 for every inventory curve. Relative to the inventory only.
pub fn is_nef(s: &SurfaceModel, h: &DivisorClass) -> Result<bool> {
    Ok(inventory_pairings(s, h)?.iter().all(|(_, v)| !v.is_negative()))
}

/// h·C > 0 for every inventory curve and h² > 0. Relative to the inventory.
pub fn is_numerically_ample(s: &SurfaceModel, h: &DivisorClass) -> Result<bool> {
    let all_positive = inventory_pairings(s, h)?.iter().all(|(_, v)| v.is_positive());
    Ok(all_positive && intersect(s, h, h)?.is_positive())
}

/// Projects each probe class to the h-orthogonal complement and returns
/// the definiteness of the resulting Gram form. For a numerically ample
/// h this is the Hodge index statement: negative (semi)definite or zero.
pub fn hodge_index_check(
    s: &SurfaceModel,
    h: &DivisorClass,
    probes: &[DivisorClass],
) -> Result<Definiteness> {
    let h2 = intersect(s, h, h)?;
    if !h2.is_positive() {
        return Err(Error::Usage("hodge_index_check requires h with h² > 0".into()));
    }
    let hv = as_resolution(s, h)?;
    let projected: Vec<Vec<Rat>> = probes
        .iter()
        .map(|p| {
            let pv = as_resolution(s, p)?;
            let ph = s.gram.pair(&pv, &hv)?;
            let c = &ph / &h2;
            Ok(pv.iter().zip(&hv).map(|(a, b)| a - &(&c * b)).collect())
        })
        .collect::<Result<_>>()?;
    let k = projected.len();
    let mut form = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            *form.at_mut(i, j) = s.gram.pair(&projected[i], &projected[j])?;
        }
    }
    form.definiteness()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::surface::builtin_surface;

    #[test]
    fn quadric_cone_pullbacks() {
        let s = builtin_surface("quadric-cone").unwrap();
        let l = DivisorClass::base_from_ints(&s, &[0, 1]).unwrap();
        let fl = mumford_pullback(&s, &l).unwrap();
        assert_eq!(fl.coords, vec![rat(1, 2), int(1)]);
        let two_l = DivisorClass::base_from_ints(&s, &[0, 2]).unwrap();
        let f2l = mumford_pullback(&s, &two_l).unwrap();
        assert_eq!(f2l.coords, vec![int(1), int(2)]);
        // classes already orthogonal to the exceptional locus are unchanged
        let s2 = builtin_surface("projective-plane").unwrap();
        let h = DivisorClass::base_from_ints(&s2, &[1]).unwrap();
        assert_eq!(mumford_pullback(&s2, &h).unwrap().coords, h.coords);
    }

    #[test]
    fn pushforward_drops_exceptional() {
        let s = builtin_surface("quadric-cone").unwrap();
        let c = DivisorClass::resolution(&s, vec![rat(1, 2), int(1)]).unwrap();
        assert_eq!(pushforward(&s, &c).unwrap().coords, vec![int(0), int(1)]);
        let k = DivisorClass::resolution_from_ints(&s, &[-2, -4]).unwrap();
        assert_eq!(pushforward(&s, &k).unwrap().coords, vec![int(0), int(-4)]);
        let sigma = DivisorClass::resolution_from_ints(&s, &[1, 0]).unwrap();
        assert!(pushforward(&s, &sigma).unwrap().is_zero());
    }

    #[test]
    fn quadric_cone_intersections() {
        let s = builtin_surface("quadric-cone").unwrap();
        let l = DivisorClass::base_from_ints(&s, &[0, 1]).unwrap();
        assert_eq!(intersect(&s, &l, &l).unwrap(), rat(1, 2));
        let k = canonical_class(&s).unwrap();
        assert_eq!(k.coords, vec![int(0), int(-4)]);
        assert_eq!(intersect(&s, &k, &l).unwrap(), int(-2));
        let p2 = builtin_surface("projective-plane").unwrap();
        let h = DivisorClass::base_from_ints(&p2, &[1]).unwrap();
        assert_eq!(intersect(&p2, &h, &h).unwrap(), int(1));
    }

    #[test]
    fn base_class_rejects_exceptional_support() {
        let s = builtin_surface("quadric-cone").unwrap();
        assert!(DivisorClass::base_from_ints(&s, &[1, 0]).is_err());
    }

    #[test]
    fn mixed_surface_rejected() {
        let s = builtin_surface("quadric-cone").unwrap();
        let p2 = builtin_surface("projective-plane").unwrap();
        let l = DivisorClass::base_from_ints(&s, &[0, 1]).unwrap();
        let h = DivisorClass::base_from_ints(&p2, &[1]).unwrap();
        assert!(intersect(&s, &l, &h).is_err());
    }

    #[test]
    fn nef_and_ample_checks() {
        let p2 = builtin_surface("projective-plane").unwrap();
        let h = DivisorClass::base_from_ints(&p2, &[1]).unwrap();
        assert!(is_nef(&p2, &h).unwrap());

        let f2 = builtin_surface("hirzebruch-2").unwrap();
        let sigma = DivisorClass::base_from_ints(&f2, &[1, 0]).unwrap();
        assert!(!is_nef(&f2, &sigma).unwrap());
        let s2f = DivisorClass::base_from_ints(&f2, &[1, 2]).unwrap();
        assert!(is_nef(&f2, &s2f).unwrap());
        assert!(!is_numerically_ample(&f2, &s2f).unwrap());
        let s3f = DivisorClass::base_from_ints(&f2, &[1, 3]).unwrap();
        assert!(is_numerically_ample(&f2, &s3f).unwrap());

        let qc = builtin_surface("quadric-cone").unwrap();
        let l = DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap();
        assert!(is_numerically_ample(&qc, &l).unwrap());
    }

    #[test]
    fn empty_inventory_is_usage_error() {
        let mut s = builtin_surface("projective-plane").unwrap();
        s.curve_inventory.clear();
        let h = DivisorClass::base_from_ints(&s, &[1]).unwrap();
        assert!(matches!(is_nef(&s, &h), Err(Error::Usage(_))));
    }

    #[test]
    fn hodge_index_examples() {
        let f2 = builtin_surface("hirzebruch-2").unwrap();
        let h = DivisorClass::base_from_ints(&f2, &[1, 3]).unwrap();
        let probes = vec![
            DivisorClass::resolution_from_ints(&f2, &[1, 0]).unwrap(),
            DivisorClass::resolution_from_ints(&f2, &[0, 1]).unwrap(),
        ];
        assert_eq!(
            hodge_index_check(&f2, &h, &probes).unwrap(),
            Definiteness::NegativeSemidefinite
        );
        // restricted to sigma - F the form is strictly negative
        let d = DivisorClass::resolution_from_ints(&f2, &[1, -1]).unwrap();
        assert_eq!(intersect(&f2, &d, &d).unwrap(), int(-4));

        let p2 = builtin_surface("projective-plane").unwrap();
        let hp = DivisorClass::base_from_ints(&p2, &[1]).unwrap();
        assert_eq!(
            hodge_index_check(&p2, &hp, &[hp.clone()]).unwrap(),
            Definiteness::Zero
        );

        let qc = builtin_surface("quadric-cone").unwrap();
        let l = DivisorClass::base_from_ints(&qc, &[0, 1]).unwrap();
        assert_eq!(hodge_index_check(&qc, &l, &[l.clone()]).unwrap(), Definiteness::Zero);
    }

    #[test]
    fn hodge_index_requires_positive_square() {
        let f2 = builtin_surface("hirzebruch-2").unwrap();
        let f = DivisorClass::base_from_ints(&f2, &[0, 1]).unwrap();
        assert!(hodge_index_check(&f2, &f, &[f.clone()]).is_err());
    }
}
