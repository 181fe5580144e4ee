//! The workspace document format: a UTF-8 JSON file describing a
//! surface, named divisor classes, named sheaf data and optional
//! stability parameters. Rationals are strings "p/q" or integers.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use nsurf_core::chern::LocalSheafInvariant;
use nsurf_core::surface::{ExceptionalComponent, NamedCurve, SingularPoint};
use nsurf_core::{
    int, parse_rat, DivisorClass, Error, Level, MumfordChern, Rat, RationalMatrix,
    ResolutionSheafData, StabilityParams, SurfaceModel,
};

/// "p/q" string or plain integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatSpec {
    Int(i64),
    Str(String),
}

impl RatSpec {
    pub fn to_rat(&self) -> Result<Rat, Error> {
        match self {
            RatSpec::Int(n) => Ok(int(*n)),
            RatSpec::Str(s) => parse_rat(s),
        }
    }

}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalSpec {
    pub self_intersection: i64,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularPointSpec {
    pub name: String,
    pub exceptional: Vec<String>,
    #[serde(default)]
    pub chi_local_structure: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub name: String,
    pub coords: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    #[serde(default = "default_surface_name")]
    pub name: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    #[serde(default)]
    pub exceptional: BTreeMap<String, ExceptionalSpec>,
    #[serde(default)]
    pub singular_points: Vec<SingularPointSpec>,
    pub canonical: Vec<i64>,
    pub chi_structure_resolution: i64,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
}

fn default_surface_name() -> String {
    "surface".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorSpec {
    pub level: String,
    pub coords: Vec<RatSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum C1Spec {
    Name(String),
    Coords(Vec<RatSpec>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalSpec {
    #[serde(default)]
    pub chi: u32,
    #[serde(default)]
    pub r1: u32,
}

/// Either resolution-side F-data or a direct Chern triple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SheafSpec {
    Resolution {
        rank: u32,
        c1: C1Spec,
        ch2: RatSpec,
        #[serde(default)]
        locals: BTreeMap<String, LocalSpec>,
    },
    Direct {
        ch0: i64,
        ch1: C1Spec,
        ch2: RatSpec,
    },
}

/// C is a number, a "p/q" string, or the policy string
/// "auto-duval-char0" (resolved against the surface at use time).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilitySpec {
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: RatSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorkspaceDocument {
    pub surface: SurfaceSpec,
    #[serde(default)]
    pub divisors: BTreeMap<String, DivisorSpec>,
    #[serde(default)]
    pub sheaves: BTreeMap<String, SheafSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilitySpec>,
}

/// A sheaf entry compiled against the surface. F-side entries keep their
/// resolution data so difference formulas stay available; both carry the
/// Chern triple.
#[derive(Clone, Debug)]
pub enum CompiledSheaf {
    Resolution { fdata: ResolutionSheafData, chern: MumfordChern, defaulted_points: Vec<String> },
    Direct { chern: MumfordChern },
}

impl CompiledSheaf {
    pub fn chern(&self) -> &MumfordChern {
        match self {
            CompiledSheaf::Resolution { chern, .. } => chern,
            CompiledSheaf::Direct { chern } => chern,
        }
    }
}

/// The fully validated, cross-referenced workspace.
#[derive(Debug)]
pub struct Workspace {
    pub surface: SurfaceModel,
    pub divisors: BTreeMap<String, DivisorClass>,
    pub sheaves: BTreeMap<String, CompiledSheaf>,
    pub stability: Option<ResolvedStability>,
}

#[derive(Debug)]
pub struct ResolvedStability {
    pub h_name: String,
    pub b_name: String,
    /// None means the "auto-duval-char0" policy was requested.
    pub c: Option<Rat>,
}

impl ResolvedStability {
    /// Resolves the C policy against the surface: the automatic constant
    /// is 0 and is only valid when every exceptional curve has K·E = 0.
    pub fn resolve_c(&self, s: &SurfaceModel) -> Result<Rat, Error> {
        match &self.c {
            Some(c) => Ok(c.clone()),
            None => {
                if s.all_du_val()? {
                    Ok(Rat::from_integer(0.into()))
                } else {
                    Err(Error::Validation(vec![
                        "C policy auto-duval-char0 requires all singular points du Val; \
                         supply C_S explicitly"
                            .into(),
                    ]))
                }
            }
        }
    }

    pub fn params(&self, ws: &Workspace, unchecked_ample: bool) -> Result<StabilityParams, Error> {
        let h = ws.divisor(&self.h_name)?.clone();
        let b = ws.divisor(&self.b_name)?.clone();
        let c = self.resolve_c(&ws.surface)?;
        if unchecked_ample {
            StabilityParams::new_unchecked(&ws.surface, h, b, c)
        } else {
            StabilityParams::new(&ws.surface, h, b, c)
        }
    }
}

impl Workspace {
    pub fn divisor(&self, name: &str) -> Result<&DivisorClass, Error> {
        self.divisors
            .get(name)
            .ok_or_else(|| Error::Validation(vec![format!("unresolved reference `{name}`")]))
    }

    pub fn sheaf(&self, name: &str) -> Result<&CompiledSheaf, Error> {
        self.sheaves
            .get(name)
            .ok_or_else(|| Error::Validation(vec![format!("unresolved reference `{name}`")]))
    }

    pub fn stability(&self) -> Result<&ResolvedStability, Error> {
        self.stability
            .as_ref()
            .ok_or_else(|| Error::Usage("this command requires a `stability` section".into()))
    }
}

fn compile_surface(spec: &SurfaceSpec) -> Result<SurfaceModel, Error> {
    let gram = RationalMatrix::from_int_rows(&spec.gram)?;
    let index_of = |name: &str| -> Result<usize, Error> {
        spec.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::Validation(vec![format!("unresolved reference `{name}`")]))
    };
    let mut exceptional_meta = BTreeMap::new();
    for (name, e) in &spec.exceptional {
        exceptional_meta.insert(
            index_of(name)?,
            ExceptionalComponent {
                name: name.clone(),
                self_intersection: e.self_intersection,
                arithmetic_genus: e.genus,
            },
        );
    }
    let singular_points = spec
        .singular_points
        .iter()
        .map(|p| {
            Ok(SingularPoint {
                name: p.name.clone(),
                exceptional: p
                    .exceptional
                    .iter()
                    .map(|n| index_of(n))
                    .collect::<Result<_, Error>>()?,
                local_structure_euler: p.chi_local_structure,
            })
        })
        .collect::<Result<_, Error>>()?;
    let model = SurfaceModel {
        name: spec.name.clone(),
        basis: spec.basis.clone(),
        gram,
        exceptional_meta,
        singular_points,
        canonical_resolution: spec.canonical.clone(),
        chi_structure_resolution: spec.chi_structure_resolution,
        curve_inventory: spec
            .curves
            .iter()
            .map(|c| NamedCurve { name: c.name.clone(), coords: c.coords.clone() })
            .collect(),
    };
    model.validate()?;
    Ok(model)
}

fn coords_from_specs(specs: &[RatSpec]) -> Result<Vec<Rat>, Error> {
    specs.iter().map(|r| r.to_rat()).collect()
}

fn compile_divisor(s: &SurfaceModel, spec: &DivisorSpec) -> Result<DivisorClass, Error> {
    let coords = coords_from_specs(&spec.coords)?;
    match spec.level.as_str() {
        "base" => DivisorClass::base(s, coords),
        "resolution" => DivisorClass::resolution(s, coords),
        other => Err(Error::Validation(vec![format!(
            "divisor level must be `base` or `resolution`, got `{other}`"
        )])),
    }
}

fn resolve_c1(
    s: &SurfaceModel,
    divisors: &BTreeMap<String, DivisorClass>,
    spec: &C1Spec,
    level: Level,
) -> Result<DivisorClass, Error> {
    match spec {
        C1Spec::Name(name) => {
            let d = divisors
                .get(name)
                .ok_or_else(|| Error::Validation(vec![format!("unresolved reference `{name}`")]))?;
            if d.level != level {
                return Err(Error::Validation(vec![format!(
                    "divisor `{name}` has the wrong level for this sheaf field"
                )]));
            }
            Ok(d.clone())
        }
        C1Spec::Coords(coords) => {
            let coords = coords_from_specs(coords)?;
            match level {
                Level::Base => DivisorClass::base(s, coords),
                Level::Resolution => DivisorClass::resolution(s, coords),
            }
        }
    }
}

fn compile_sheaf(
    s: &SurfaceModel,
    divisors: &BTreeMap<String, DivisorClass>,
    spec: &SheafSpec,
) -> Result<CompiledSheaf, Error> {
    match spec {
        SheafSpec::Resolution { rank, c1, ch2, locals } => {
            let c1 = resolve_c1(s, divisors, c1, Level::Resolution)?;
            let locals_map: BTreeMap<String, LocalSheafInvariant> = locals
                .iter()
                .map(|(p, l)| {
                    (p.clone(), LocalSheafInvariant { chi_local: l.chi, r1_length: l.r1 })
                })
                .collect();
            let defaulted_points = s
                .singular_points
                .iter()
                .filter(|p| !locals_map.contains_key(&p.name))
                .map(|p| p.name.clone())
                .collect();
            let fdata =
                ResolutionSheafData::with_locals(s, *rank, c1, ch2.to_rat()?, locals_map)?;
            let chern = nsurf_core::chern_from_resolution(s, &fdata)?;
            Ok(CompiledSheaf::Resolution { fdata, chern, defaulted_points })
        }
        SheafSpec::Direct { ch0, ch1, ch2 } => {
            let ch1 = resolve_c1(s, divisors, ch1, Level::Base)?;
            let chern = MumfordChern::new(s, *ch0, ch1, ch2.to_rat()?)?;
            Ok(CompiledSheaf::Direct { chern })
        }
    }
}

pub fn compile(document: &WorkspaceDocument) -> Result<Workspace, Error> {
    let surface = compile_surface(&document.surface)?;
    let mut divisors = BTreeMap::new();
    for (name, spec) in &document.divisors {
        divisors.insert(name.clone(), compile_divisor(&surface, spec)?);
    }
    let mut sheaves = BTreeMap::new();
    for (name, spec) in &document.sheaves {
        sheaves.insert(name.clone(), compile_sheaf(&surface, &divisors, spec)?);
    }
    let stability = match &document.stability {
        None => None,
        Some(st) => {
            for name in [&st.h, &st.b] {
                if !divisors.contains_key(name.as_str()) {
                    return Err(Error::Validation(vec![format!(
                        "unresolved reference `{name}`"
                    )]));
                }
            }
            let c = match &st.c {
                RatSpec::Str(s) if s == "auto-duval-char0" => None,
                other => Some(other.to_rat()?),
            };
            Some(ResolvedStability { h_name: st.h.clone(), b_name: st.b.clone(), c })
        }
    };
    Ok(Workspace { surface, divisors, sheaves, stability })
}

pub fn parse_workspace(path: &Path) -> Result<Workspace, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(vec![format!("cannot read {}: {e}", path.display())]))?;
    let document: WorkspaceDocument = serde_json::from_str(&text)
        .map_err(|e| Error::Validation(vec![format!("{}: {e}", path.display())]))?;
    compile(&document)
}
