//! Mumford's Chern character computed from resolution-side sheaf data,
//! the discriminant, Riemann-Roch and the discriminant-difference formula.

use std::collections::BTreeMap;

use num::Zero;

use crate::divisor::{canonical_class, intersect, mumford_pullback, pushforward, DivisorClass, Level};
use crate::error::{Error, Result};
use crate::rat::{int, rat, Rat};
use crate::surface::SurfaceModel;

/// Local invariants of a sheaf at one singular point. `chi_local` is
/// χ(x,F) = l_x(E/f_*F) + l_x(R¹f_*F); `r1_length` is the R¹ summand
/// alone, which the discriminant-difference formula needs separately.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalSheafInvariant {
    pub chi_local: u32,
    pub r1_length: u32,
}

/// The resolution-side presentation of a reflexive sheaf: a vector
/// bundle F with its rank, first Chern class, integrated ch₂ and local
/// invariants keyed by singular-point name (absent means zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionSheafData {
    pub rank: u32,
    pub c1: DivisorClass,
    pub ch2: Rat,
    pub locals: BTreeMap<String, LocalSheafInvariant>,
}

impl ResolutionSheafData {
    pub fn new(s: &SurfaceModel, rank: u32, c1: DivisorClass, ch2: Rat) -> Result<Self> {
        Self::with_locals(s, rank, c1, ch2, BTreeMap::new())
    }

    pub fn with_locals(
        s: &SurfaceModel,
        rank: u32,
        c1: DivisorClass,
        ch2: Rat,
        locals: BTreeMap<String, LocalSheafInvariant>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Usage(
                "resolution sheaf data requires rank >= 1; enter torsion classes directly".into(),
            ));
        }
        if c1.level != Level::Resolution {
            return Err(Error::Usage("c1 must be a resolution-level class".into()));
        }
        if !c1.coords.iter().all(|c| c.is_integer()) {
            return Err(Error::Usage("c1 must have integer coordinates".into()));
        }
        for (point, inv) in &locals {
            if !s.singular_points.iter().any(|p| &p.name == point) {
                return Err(Error::Usage(format!("unknown singular point `{point}` in locals")));
            }
            if inv.r1_length > inv.chi_local {
                return Err(Error::Usage(format!(
                    "r1_length exceeds chi_local at point `{point}`"
                )));
            }
        }
        Ok(ResolutionSheafData { rank, c1, ch2, locals })
    }

    /// Line bundle O(c1) on the resolution: rank 1, ch2 = c1²/2.
    pub fn line_bundle(s: &SurfaceModel, c1: DivisorClass) -> Result<Self> {
        let sq = s.gram.pair(&c1.coords, &c1.coords)?;
        Self::new(s, 1, c1, sq * rat(1, 2))
    }

    fn local(&self, point: &str) -> LocalSheafInvariant {
        self.locals.get(point).cloned().unwrap_or_default()
    }
}

/// The triple (ch₀, ch₁, ch₂) of a class on the base surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordChern {
    pub ch0: i64,
    pub ch1: DivisorClass,
    pub ch2: Rat,
}

impl MumfordChern {
    pub fn new(s: &SurfaceModel, ch0: i64, ch1: DivisorClass, ch2: Rat) -> Result<Self> {
        if ch1.level != Level::Base || ch1.surface != s.name {
            return Err(Error::Usage("ch1 must be a base-level class on the same surface".into()));
        }
        Ok(MumfordChern { ch0, ch1, ch2 })
    }

    pub fn add(&self, other: &MumfordChern) -> Result<MumfordChern> {
        Ok(MumfordChern {
            ch0: self.ch0 + other.ch0,
            ch1: self.ch1.add(&other.ch1)?,
            ch2: &self.ch2 + &other.ch2,
        })
    }

    /// Twist by a Cartier class: the exponential rule on (ch0, ch1, ch2).
    pub fn twist(&self, s: &SurfaceModel, cartier: &DivisorClass) -> Result<MumfordChern> {
        let l2 = intersect(s, cartier, cartier)?;
        let c1l = intersect(s, &self.ch1, cartier)?;
        Ok(MumfordChern {
            ch0: self.ch0,
            ch1: self.ch1.add(&cartier.scale(&int(self.ch0)))?,
            ch2: &self.ch2 + c1l + int(self.ch0) * l2 * rat(1, 2),
        })
    }
}

/// c₁(f,F): the exceptional part of c₁, i.e. c1 − f*f_*c1. Supported on
/// exceptional indices and negative-definite in square when nonzero.
pub fn exceptional_part(s: &SurfaceModel, fdata: &ResolutionSheafData) -> Result<DivisorClass> {
    let pushed = pushforward(s, &fdata.c1)?;
    let pulled = mumford_pullback(s, &pushed)?;
    fdata.c1.sub(&pulled)
}

/// The exceptional part over one singular point only.
fn exceptional_part_at(
    s: &SurfaceModel,
    full: &DivisorClass,
    point_indices: &[usize],
) -> Result<DivisorClass> {
    let mut coords = vec![Rat::zero(); s.rank()];
    for &i in point_indices {
        coords[i] = full.coords[i].clone();
    }
    DivisorClass::resolution(s, coords)
}

/// Mumford Chern character of E = (f_*F)^** from the F-side data:
/// ch₂ = ch₂(F) + Σ_x [ χ(x,F) − χ(x,O)·rank − ½ c₁(x,F)·K ].
pub fn chern_from_resolution(
    s: &SurfaceModel,
    fdata: &ResolutionSheafData,
) -> Result<MumfordChern> {
    let ch1 = pushforward(s, &fdata.c1)?;
    let exc = exceptional_part(s, fdata)?;
    let k_res = s.canonical_resolution_rat();
    let mut ch2 = fdata.ch2.clone();
    for p in &s.singular_points {
        let local = fdata.local(&p.name);
        let cx = exceptional_part_at(s, &exc, &p.exceptional)?;
        let cxk = s.gram.pair(&cx.coords, &k_res)?;
        ch2 += int(local.chi_local as i64)
            - int(p.local_structure_euler as i64) * int(fdata.rank as i64)
            - cxk * rat(1, 2);
    }
    MumfordChern::new(s, fdata.rank as i64, ch1, ch2)
}

/// c₂ = ½ c₁² − ch₂.
pub fn c2_mumford(s: &SurfaceModel, mc: &MumfordChern) -> Result<Rat> {
    let c1sq = intersect(s, &mc.ch1, &mc.ch1)?;
    Ok(c1sq * rat(1, 2) - &mc.ch2)
}

/// Δ = ch₁² − 2·ch₀·ch₂.
pub fn discriminant(s: &SurfaceModel, mc: &MumfordChern) -> Result<Rat> {
    let c1sq = intersect(s, &mc.ch1, &mc.ch1)?;
    Ok(c1sq - int(2 * mc.ch0) * &mc.ch2)
}

/// χ(S,E) = ch₂ − ½ ch₁·K + ch₀·χ(O_S). Integrality is a diagnostic for
/// genuine sheaf classes, not enforced here.
pub fn riemann_roch_chi(s: &SurfaceModel, mc: &MumfordChern) -> Result<Rat> {
    let k = canonical_class(s)?;
    let c1k = intersect(s, &mc.ch1, &k)?;
    Ok(&mc.ch2 - c1k * rat(1, 2) + int(mc.ch0) * int(s.chi_structure_base()))
}

/// The same Euler characteristic through the discriminant:
/// χ = −Δ/(2r) + (1/2r)·D·(D − rK) + r·χ(O_S). Must agree with
/// `riemann_roch_chi` identically for r > 0.
pub fn riemann_roch_via_discriminant(s: &SurfaceModel, mc: &MumfordChern) -> Result<Rat> {
    if mc.ch0 <= 0 {
        return Err(Error::Usage("discriminant route requires ch0 > 0".into()));
    }
    let r = int(mc.ch0);
    let delta = discriminant(s, mc)?;
    let k = canonical_class(s)?;
    let shifted = mc.ch1.sub(&k.scale(&r))?;
    let d_term = intersect(s, &mc.ch1, &shifted)?;
    let half_r = rat(1, 2) / &r;
    Ok(-delta * &half_r + d_term * &half_r + r * int(s.chi_structure_base()))
}

/// ∫Δ(F) − ∫Δ(E) via the resolution formula:
/// 2r·Σ l_x(R¹f_*F) − 2r²·Σ l_x(R¹f_*O) + c₁(f,F)² − r·c₁(f,F)·K.
pub fn discriminant_difference(s: &SurfaceModel, fdata: &ResolutionSheafData) -> Result<Rat> {
    let r = int(fdata.rank as i64);
    let r1_sum: i64 = s
        .singular_points
        .iter()
        .map(|p| fdata.local(&p.name).r1_length as i64)
        .sum();
    let o_sum: i64 =
        s.singular_points.iter().map(|p| p.local_structure_euler as i64).sum();
    let exc = exceptional_part(s, fdata)?;
    let exc_sq = s.gram.pair(&exc.coords, &exc.coords)?;
    let exc_k = s.gram.pair(&exc.coords, &s.canonical_resolution_rat())?;
    Ok(int(2) * &r * int(r1_sum) - int(2) * &r * &r * int(o_sum) + exc_sq - &r * exc_k)
}

/// The F-side discriminant c₁² − 2·rank·ch₂, for cross-checking the
/// difference formula by direct subtraction.
pub fn discriminant_resolution_side(s: &SurfaceModel, fdata: &ResolutionSheafData) -> Result<Rat> {
    let c1sq = s.gram.pair(&fdata.c1.coords, &fdata.c1.coords)?;
    Ok(c1sq - int(2 * fdata.rank as i64) * &fdata.ch2)
}
