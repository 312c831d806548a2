//! Combinatorial descriptor of a round fold map in normal form.
//!
//! Regions are the closures of the components of the regular value set,
//! indexed from the proper core (0) outward to the unbounded region (`l`).
//! Singular component `k` (1-based) is the sphere separating regions `k-1`
//! and `k`; its normal fiber receives the fibers of both neighbouring
//! regions through inclusion-induced maps in degrees 0, 1 and 2.

mod catalog;
mod format;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::abelian::{HomMatrix, Ring};
use crate::error::{Error, Result};
use crate::homology::ManifoldHomology;

pub use catalog::{
    bundle_over_sphere, case3_connected_sum, catalog, connected_sum_sphere_bundles,
    special_generic_sphere, spun_disc_family, spun_torus_family, two_component_special_generic,
    CATALOG_NAMES,
};
pub use format::{parse_descriptor, serialize_descriptor};

/// Degrees for which inclusion maps are recorded.
pub const DEGREES: [usize; 3] = [0, 1, 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImageKind {
    Disc,
    Annulus,
    FullPlaneComplement,
}

impl ImageKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ImageKind::Disc => "disc",
            ImageKind::Annulus => "annulus",
            ImageKind::FullPlaneComplement => "full-plane-complement",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "disc" => Some(ImageKind::Disc),
            "annulus" => Some(ImageKind::Annulus),
            "full-plane-complement" => Some(ImageKind::FullPlaneComplement),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Inner => "inner",
            Side::Outer => "outer",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub index: usize,
    pub fiber: ManifoldHomology,
    pub is_proper_core_region: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularComponent {
    pub index: usize,
    pub normal_fiber: ManifoldHomology,
    pub inner_boundary_fiber: ManifoldHomology,
    pub outer_boundary_fiber: ManifoldHomology,
    pub incl_inner: BTreeMap<(usize, Ring), HomMatrix>,
    pub incl_outer: BTreeMap<(usize, Ring), HomMatrix>,
}

impl SingularComponent {
    pub fn boundary_fiber(&self, side: Side) -> &ManifoldHomology {
        match side {
            Side::Inner => &self.inner_boundary_fiber,
            Side::Outer => &self.outer_boundary_fiber,
        }
    }

    pub fn inclusions(&self, side: Side) -> &BTreeMap<(usize, Ring), HomMatrix> {
        match side {
            Side::Inner => &self.incl_inner,
            Side::Outer => &self.incl_outer,
        }
    }

    pub fn inclusions_mut(&mut self, side: Side) -> &mut BTreeMap<(usize, Ring), HomMatrix> {
        match side {
            Side::Inner => &mut self.incl_inner,
            Side::Outer => &mut self.incl_outer,
        }
    }

    pub fn inclusion(&self, side: Side, degree: usize, ring: Ring) -> Option<&HomMatrix> {
        self.inclusions(side).get(&(degree, ring))
    }

    /// Region index on the given side of this component.
    pub fn region_on(&self, side: Side) -> usize {
        match side {
            Side::Inner => self.index - 1,
            Side::Outer => self.index,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapFlags {
    pub l_trivial: bool,
    pub s_trivial: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldMapDescriptor {
    pub name: Option<String>,
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub image_kind: ImageKind,
    pub regions: Vec<Region>,
    pub singular: Vec<SingularComponent>,
    pub flags: MapFlags,
    /// Homology of the preimage of an axis, when known.
    pub axis: Option<ManifoldHomology>,
}

impl FoldMapDescriptor {
    pub fn fiber_dim(&self) -> usize {
        self.m.saturating_sub(self.n)
    }

    pub fn region(&self, i: usize) -> &Region {
        &self.regions[i]
    }

    /// Singular component by its 1-based index.
    pub fn component(&self, k: usize) -> &SingularComponent {
        &self.singular[k - 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.regions.len()
    }

    /// Inclusion map, or a descriptor-incomplete error naming the slot.
    pub fn require_inclusion(
        &self,
        k: usize,
        side: Side,
        degree: usize,
        ring: Ring,
    ) -> Result<&HomMatrix> {
        self.component(k)
            .inclusion(side, degree, ring)
            .ok_or_else(|| {
                Error::Incomplete(format!(
                    "singular component {k} has no {} inclusion for H_{degree} over {ring}",
                    side.as_str()
                ))
            })
    }

    pub fn is_valid(&self) -> bool {
        validate(self).is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let diags = validate(self);
        if diags.is_empty() {
            Ok(())
        } else {
            let text: Vec<String> = diags.iter().map(ToString::to_string).collect();
            Err(Error::InvalidDescriptor(text.join("; ")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    DimensionRange,
    LengthMismatch,
    IndexMismatch,
    CoreRegion,
    FiberDimension,
    EmptyNormalFiber,
    BoundaryMismatch,
    ImageKind,
    GroupMismatch,
    RingMismatch,
    DegreeRange,
    InvalidH0Map,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::DimensionRange => "dimension-range",
            Rule::LengthMismatch => "length-mismatch",
            Rule::IndexMismatch => "index-mismatch",
            Rule::CoreRegion => "core-region",
            Rule::FiberDimension => "fiber-dimension",
            Rule::EmptyNormalFiber => "empty-normal-fiber",
            Rule::BoundaryMismatch => "boundary-mismatch",
            Rule::ImageKind => "image-kind",
            Rule::GroupMismatch => "group-mismatch",
            Rule::RingMismatch => "ring-mismatch",
            Rule::DegreeRange => "degree-range",
            Rule::InvalidH0Map => "invalid-h0-map",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub field: String,
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: [{}] {}", self.field, self.rule.as_str(), self.message)
    }
}

pub fn validate(d: &FoldMapDescriptor) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |field: String, rule: Rule, message: String| {
        out.push(Diagnostic {
            field,
            rule,
            message,
        })
    };

    if !(d.m >= d.n && d.n >= 2) {
        push(
            "map".into(),
            Rule::DimensionRange,
            format!("need m >= n >= 2, got m = {}, n = {}", d.m, d.n),
        );
    }
    if d.l == 0 {
        push("map.l".into(), Rule::LengthMismatch, "l must be at least 1".into());
    }
    if d.regions.len() != d.l + 1 {
        push(
            "regions".into(),
            Rule::LengthMismatch,
            format!("l = {} needs {} regions, found {}", d.l, d.l + 1, d.regions.len()),
        );
    }
    if d.singular.len() != d.l {
        push(
            "singular".into(),
            Rule::LengthMismatch,
            format!(
                "l = {} needs {} singular components, found {}",
                d.l,
                d.l,
                d.singular.len()
            ),
        );
    }

    let fiber_dim = d.fiber_dim();
    for (i, r) in d.regions.iter().enumerate() {
        let field = format!("region[{i}]");
        if r.index != i {
            push(
                field.clone(),
                Rule::IndexMismatch,
                format!("stored index {} at position {i}", r.index),
            );
        }
        if r.is_proper_core_region != (i == 0) {
            push(
                field.clone(),
                Rule::CoreRegion,
                "only region 0 is the proper core region".into(),
            );
        }
        if !r.fiber.is_empty() && r.fiber.dim() != fiber_dim {
            push(
                format!("{field}.fiber"),
                Rule::FiberDimension,
                format!("fiber has dimension {}, expected m - n = {fiber_dim}", r.fiber.dim()),
            );
        }
    }

    if let (Some(core), Some(outer)) = (d.regions.first(), d.regions.last()) {
        let (core_empty, outer_empty) = (core.fiber.is_empty(), outer.fiber.is_empty());
        let consistent = match d.image_kind {
            ImageKind::Disc => !core_empty && outer_empty,
            ImageKind::Annulus => core_empty && outer_empty,
            ImageKind::FullPlaneComplement => !outer_empty,
        };
        if !consistent {
            push(
                "map.image_kind".into(),
                Rule::ImageKind,
                format!(
                    "image kind {} does not match core fiber {} and unbounded fiber {}",
                    d.image_kind.as_str(),
                    if core_empty { "empty" } else { "non-empty" },
                    if outer_empty { "empty" } else { "non-empty" },
                ),
            );
        }
    }

    for (pos, c) in d.singular.iter().enumerate() {
        let field = format!("singular[{}]", pos + 1);
        if c.index != pos + 1 {
            push(
                field.clone(),
                Rule::IndexMismatch,
                format!("stored index {} at position {}", c.index, pos + 1),
            );
            continue;
        }
        if c.normal_fiber.is_empty() {
            push(
                format!("{field}.normal_fiber"),
                Rule::EmptyNormalFiber,
                "normal fiber is empty".into(),
            );
        } else if c.normal_fiber.dim() != fiber_dim + 1 {
            push(
                format!("{field}.normal_fiber"),
                Rule::FiberDimension,
                format!(
                    "normal fiber has dimension {}, expected m - n + 1 = {}",
                    c.normal_fiber.dim(),
                    fiber_dim + 1
                ),
            );
        }
        for side in [Side::Inner, Side::Outer] {
            let region = c.region_on(side);
            let bfield = format!("{field}.{}_fiber", side.as_str());
            if let Some(r) = d.regions.get(region) {
                if !c.boundary_fiber(side).same_homology(&r.fiber) {
                    push(
                        bfield.clone(),
                        Rule::BoundaryMismatch,
                        format!(
                            "{} differs from the fiber {} of region {region}",
                            c.boundary_fiber(side),
                            r.fiber
                        ),
                    );
                }
            }
            for (&(degree, ring), h) in c.inclusions(side) {
                let ifield = format!("{field}.incl_{}[h{degree},{}]", side.as_str(), ring.short_name());
                if degree > 2 {
                    push(ifield.clone(), Rule::DegreeRange, "only degrees 0, 1, 2 are stored".into());
                    continue;
                }
                if h.ring() != ring {
                    push(ifield.clone(), Rule::RingMismatch, format!("matrix is over {}", h.ring()));
                }
                let want_src = c.boundary_fiber(side).group(degree, ring);
                let want_tgt = c.normal_fiber.group(degree, ring);
                if h.source() != &want_src {
                    push(
                        ifield.clone(),
                        Rule::GroupMismatch,
                        format!(
                            "source {} is not H_{degree}({}) = {}",
                            h.source().to_compact(),
                            c.boundary_fiber(side),
                            want_src.to_compact()
                        ),
                    );
                }
                if h.target() != &want_tgt {
                    push(
                        ifield.clone(),
                        Rule::GroupMismatch,
                        format!(
                            "target {} is not H_{degree}({}) = {}",
                            h.target().to_compact(),
                            c.normal_fiber,
                            want_tgt.to_compact()
                        ),
                    );
                }
                if degree == 0 && ring == Ring::Integers && h.source() == &want_src && h.target() == &want_tgt {
                    let m = h.matrix();
                    for j in 0..m.cols() {
                        let col = m.column(j);
                        let ones = col.iter().filter(|&&x| x == 1).count();
                        if ones != 1 || col.iter().any(|&x| x != 0 && x != 1) {
                            push(
                                ifield.clone(),
                                Rule::InvalidH0Map,
                                format!("column {j} must be a unit vector (each boundary component lies in one component)"),
                            );
                        }
                    }
                }
            }
        }
    }
    out
}
