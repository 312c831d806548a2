//! Circle bundles over the source of a fold map, described by their
//! characteristic-class evaluations on region fibers plus triviality flags
//! over boundary spheres, and the engine deciding which lifting criterion
//! applies to a given bundle.
//!
//! Evaluations are keyed by `(region, generator)`: generator `g` of region
//! `s` is the `g`-th generator of `H_1(F_s; Z/2)` for `w1` and the `g`-th
//! free generator of `H_2(F_s; Z)` for the Euler class. Flags are keyed by
//! `(component, side)`, the side naming the boundary sphere of the tubular
//! neighbourhood that faces the region on that side.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::abelian::Ring;
use crate::error::{Error, Result};
use crate::foldmap::{FoldMapDescriptor, ImageKind, Side};
use crate::graphs::{self, RegionGraph};
use crate::text::{self, Entry};

/// Start sets are searched exhaustively up to this many regions; larger
/// descriptors only try the minimal starting sets of the relevant graph.
pub const EXHAUSTIVE_REGIONS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BundleDescriptor {
    /// `w1 = 0` globally. Implies every `w1` evaluation is zero.
    pub orientable: bool,
    pub w1: BTreeMap<(usize, usize), bool>,
    pub euler: BTreeMap<(usize, usize), i64>,
    pub section_trivial: BTreeMap<(usize, Side), bool>,
    pub torus_trivial: BTreeMap<(usize, Side), bool>,
    /// Missing keys read as the trivial bundle's values.
    pub fill_trivial: bool,
}

impl BundleDescriptor {
    /// The product bundle `M x S^1`.
    pub fn trivial() -> Self {
        BundleDescriptor {
            orientable: true,
            fill_trivial: true,
            ..Default::default()
        }
    }

    pub fn w1_value(&self, region: usize, gen: usize) -> Option<bool> {
        if self.orientable {
            return Some(false);
        }
        self.w1
            .get(&(region, gen))
            .copied()
            .or(self.fill_trivial.then_some(false))
    }

    pub fn euler_value(&self, region: usize, gen: usize) -> Option<i64> {
        self.euler
            .get(&(region, gen))
            .copied()
            .or(self.fill_trivial.then_some(0))
    }

    pub fn section_flag(&self, k: usize, side: Side) -> Option<bool> {
        self.section_trivial
            .get(&(k, side))
            .copied()
            .or(self.fill_trivial.then_some(true))
    }

    pub fn torus_flag(&self, k: usize, side: Side) -> Option<bool> {
        self.torus_trivial
            .get(&(k, side))
            .copied()
            .or(self.fill_trivial.then_some(true))
    }

    /// Checks that every key names a region, generator or component of `d`.
    pub fn check_against(&self, d: &FoldMapDescriptor) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidDescriptor(format!("bundle data: {what}")));
        for &(s, g) in self.w1.keys() {
            match d.regions.get(s) {
                None => return bad(format!("w1 names region {s}, which does not exist")),
                Some(r) if g >= r.fiber.mod2_dim(1) => {
                    return bad(format!(
                        "w1 names generator {g} of region {s}, but H_1 of its fiber over Z/2 has {} generators",
                        r.fiber.mod2_dim(1)
                    ))
                }
                _ => {}
            }
        }
        for &(s, g) in self.euler.keys() {
            match d.regions.get(s) {
                None => return bad(format!("euler names region {s}, which does not exist")),
                Some(r) if g >= r.fiber.group(2, Ring::Integers).rank() => {
                    return bad(format!(
                        "euler names generator {g} of region {s}, but H_2 of its fiber has rank {}",
                        r.fiber.group(2, Ring::Integers).rank()
                    ))
                }
                _ => {}
            }
        }
        for (name, map) in [("section_trivial", &self.section_trivial), ("torus_trivial", &self.torus_trivial)] {
            for &(k, _) in map.keys() {
                if k == 0 || k > d.l {
                    return bad(format!("{name} names component {k}, components are 1..={}", d.l));
                }
            }
        }
        Ok(())
    }
}

/// Reads a `[bundle]` block:
///
/// ```text
/// [bundle]
/// orientable = false
/// fill = trivial
/// w1 0.1 = 1
/// euler 2.0 = -3
/// section_trivial 1.outer = true
/// torus_trivial 2.inner = false
/// ```
pub fn parse_bundle(src: &str) -> Result<BundleDescriptor> {
    let sections = text::parse_sections(src)?;
    let mut found = None;
    for s in &sections {
        if s.name != "bundle" || s.arg.is_some() {
            return Err(Error::parse(s.line, 1, format!("unexpected section [{}]", s.header())));
        }
        if found.is_some() {
            return Err(Error::parse(s.line, 1, "only one [bundle] section is allowed"));
        }
        found = Some(s);
    }
    let Some(section) = found else {
        return Err(Error::parse(1, 1, "missing [bundle] section"));
    };

    let mut b = BundleDescriptor {
        orientable: section.require("orientable")?.parse_bool()?,
        ..Default::default()
    };
    for e in &section.entries {
        let mut words = e.key.split_whitespace();
        let kind = words.next().unwrap_or_default();
        let arg = words.next();
        if words.next().is_some() {
            return Err(Error::parse(e.line, 1, format!("malformed key `{}`", e.key)));
        }
        match (kind, arg) {
            ("orientable", None) => {}
            ("fill", None) => match e.value.as_str() {
                "trivial" => b.fill_trivial = true,
                "none" => b.fill_trivial = false,
                v => return Err(e.error(format!("`fill` expects trivial or none, got `{v}`"))),
            },
            ("w1", Some(a)) => {
                let key = index_pair(e, a)?;
                let v = match e.value.as_str() {
                    "0" => false,
                    "1" => true,
                    v => return Err(e.error(format!("w1 values are 0 or 1, got `{v}`"))),
                };
                if v && b.orientable {
                    return Err(e.error("an orientable bundle has w1 = 0 everywhere"));
                }
                b.w1.insert(key, v);
            }
            ("euler", Some(a)) => {
                if !b.orientable {
                    return Err(Error::parse(
                        e.line,
                        1,
                        "Euler data requires `orientable = true`",
                    ));
                }
                b.euler.insert(index_pair(e, a)?, e.parse_int()?);
            }
            ("section_trivial", Some(a)) => {
                b.section_trivial.insert(side_key(e, a)?, e.parse_bool()?);
            }
            ("torus_trivial", Some(a)) => {
                b.torus_trivial.insert(side_key(e, a)?, e.parse_bool()?);
            }
            _ => return Err(Error::parse(e.line, 1, format!("unknown key `{}`", e.key))),
        }
    }
    Ok(b)
}

fn index_pair(e: &Entry, arg: &str) -> Result<(usize, usize)> {
    let parsed = arg
        .split_once('.')
        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
    parsed.ok_or_else(|| Error::parse(e.line, 1, format!("expected `region.generator`, got `{arg}`")))
}

fn side_key(e: &Entry, arg: &str) -> Result<(usize, Side)> {
    let parsed = arg.split_once('.').and_then(|(k, side)| {
        let side = match side {
            "inner" => Side::Inner,
            "outer" => Side::Outer,
            _ => return None,
        };
        Some((k.parse().ok()?, side))
    });
    parsed.ok_or_else(|| {
        Error::parse(e.line, 1, format!("expected `component.inner` or `component.outer`, got `{arg}`"))
    })
}

pub fn serialize_bundle(b: &BundleDescriptor) -> String {
    let mut out = String::from("[bundle]\n");
    out.push_str(&format!("orientable = {}\n", b.orientable));
    if b.fill_trivial {
        out.push_str("fill = trivial\n");
    }
    for (&(s, g), &v) in &b.w1 {
        out.push_str(&format!("w1 {s}.{g} = {}\n", u8::from(v)));
    }
    for (&(s, g), &v) in &b.euler {
        out.push_str(&format!("euler {s}.{g} = {v}\n"));
    }
    for (&(k, side), &v) in &b.section_trivial {
        out.push_str(&format!("section_trivial {k}.{} = {v}\n", side.as_str()));
    }
    for (&(k, side), &v) in &b.torus_trivial {
        out.push_str(&format!("torus_trivial {k}.{} = {v}\n", side.as_str()));
    }
    out
}

/// The criterion a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    Prop3,
    Prop4Part1,
    Prop4Part2,
    Thm1High,
    Thm1Three,
    Thm1Two,
    Thm2Three,
    Cor1,
    Thm2Two,
    Thm3High,
    Thm3Three,
    Thm3Two,
    Thm4,
    Cor2,
    /// No clause certified the bundle.
    None,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::Prop3 => "Prop 3",
            Clause::Prop4Part1 => "Prop 4 part 1",
            Clause::Prop4Part2 => "Prop 4 part 2",
            Clause::Thm1High => "Thm 1 case n≥4",
            Clause::Thm1Three => "Thm 1 case n=3",
            Clause::Thm1Two => "Thm 1 case n=2",
            Clause::Thm2Three => "Thm 2 case n=3",
            Clause::Cor1 => "Cor 1",
            Clause::Thm2Two => "Thm 2 case n=2",
            Clause::Thm3High => "Thm 3 case n≥4",
            Clause::Thm3Three => "Thm 3 case n=3",
            Clause::Thm3Two => "Thm 3 case n=2",
            Clause::Thm4 => "Thm 4",
            Clause::Cor2 => "Cor 2",
            Clause::None => "none",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Hypotheses a clause can fail on. Failures are listed in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    TargetDimension,
    ImageKind,
    SourceConnected,
    H2Vanishing,
    H1TorsionFree,
    H1Vanishing,
    H1Mod2Vanishing,
    StartingSet,
    StartEquivalentH0,
    StartEquivalentH1,
    Orientable,
    W1Vanishing,
    EulerVanishing,
    SectionTrivial,
    TorusTrivial,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::TargetDimension => "target-dimension",
            Condition::ImageKind => "image-kind",
            Condition::SourceConnected => "source-connected",
            Condition::H2Vanishing => "h2-vanishing",
            Condition::H1TorsionFree => "h1-torsion-free",
            Condition::H1Vanishing => "h1-vanishing",
            Condition::H1Mod2Vanishing => "h1-mod2-vanishing",
            Condition::StartingSet => "starting-set",
            Condition::StartEquivalentH0 => "start-equivalent-h0",
            Condition::StartEquivalentH1 => "start-equivalent-h1",
            Condition::Orientable => "orientable",
            Condition::W1Vanishing => "w1-vanishing",
            Condition::EulerVanishing => "euler-vanishing",
            Condition::SectionTrivial => "section-trivial",
            Condition::TorusTrivial => "torus-trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedCondition {
    pub clause: Clause,
    pub condition: Condition,
    pub location: String,
    pub detail: String,
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} at {}: {}",
            self.clause,
            self.condition.as_str(),
            self.location,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApplicabilityReport {
    pub applicable: bool,
    pub rule: Clause,
    pub starting_set_used: Option<BTreeSet<usize>>,
    pub failed_conditions: Vec<FailedCondition>,
}

impl ApplicabilityReport {
    fn from_failures(rule: Clause, s: Option<&BTreeSet<usize>>, mut failed: Vec<FailedCondition>) -> Self {
        failed.sort_by_key(|f| f.condition);
        ApplicabilityReport {
            applicable: failed.is_empty(),
            rule,
            starting_set_used: s.cloned(),
            failed_conditions: failed,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let set = match &self.starting_set_used {
            Some(s) => format!(
                "{{{}}}",
                s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            ),
            None => "-".into(),
        };
        if self.applicable {
            out.push_str(&format!("applicable: yes\nrule: {}\nstarting set: {set}\n", self.rule));
        } else {
            out.push_str(&format!("applicable: no\nrule: {}\nstarting set: {set}\n", self.rule));
            for f in &self.failed_conditions {
                out.push_str(&format!("failed: {f}\n"));
            }
        }
        out
    }
}

/// Which criterion `check` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleChoice {
    Auto,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Prop34,
}

impl std::str::FromStr for RuleChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => RuleChoice::Auto,
            "thm1" => RuleChoice::Thm1,
            "thm2" => RuleChoice::Thm2,
            "thm3" => RuleChoice::Thm3,
            "thm4" => RuleChoice::Thm4,
            "prop34" => RuleChoice::Prop34,
            _ => {
                return Err(Error::Parameter(format!(
                    "unknown rule `{s}` (expected auto, thm1, thm2, thm3, thm4 or prop34)"
                )))
            }
        })
    }
}

pub fn check_h2_vanishing(d: &FoldMapDescriptor) -> bool {
    d.singular
        .iter()
        .all(|c| c.normal_fiber.cohomology(2, Ring::Integers).is_zero())
}

pub fn check_h1_torsion_free(d: &FoldMapDescriptor) -> bool {
    d.singular
        .iter()
        .all(|c| c.normal_fiber.group(1, Ring::Integers).is_free())
}

/// Number of connected components of the source, read off the `H_0`
/// inclusions of every normal fiber.
pub fn source_components(d: &FoldMapDescriptor) -> Result<usize> {
    d.ensure_valid()?;
    // Nodes: components of each region fiber, then of each normal fiber.
    let mut offsets = Vec::new();
    let mut total = 0;
    for r in &d.regions {
        offsets.push(total);
        total += r.fiber.components();
    }
    let mut normal_offsets = Vec::new();
    for c in &d.singular {
        normal_offsets.push(total);
        total += c.normal_fiber.components();
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (pos, c) in d.singular.iter().enumerate() {
        for side in [Side::Inner, Side::Outer] {
            let h = d.require_inclusion(c.index, side, 0, Ring::Integers)?;
            let m = h.matrix();
            let base = offsets[c.region_on(side)];
            for j in 0..m.cols() {
                for i in 0..m.rows() {
                    if m.get(i, j) != 0 {
                        let a = find(&mut parent, base + j);
                        let b = find(&mut parent, normal_offsets[pos] + i);
                        parent[a] = b;
                    }
                }
            }
        }
    }
    Ok((0..total).filter(|&x| find(&mut parent, x) == x).count())
}

/// Region graphs and derived data, built on first use.
struct Context<'a> {
    d: &'a FoldMapDescriptor,
    b: &'a BundleDescriptor,
    h1_z2: OnceCell<RegionGraph>,
    h1_z: OnceCell<RegionGraph>,
    h2_z: OnceCell<RegionGraph>,
    h0_all: OnceCell<RegionGraph>,
    connected: OnceCell<bool>,
}

#[derive(Clone, Copy)]
enum Which {
    H1Z2,
    H1Z,
    H2Z,
    H0All,
}

impl<'a> Context<'a> {
    fn new(d: &'a FoldMapDescriptor, b: &'a BundleDescriptor) -> Result<Self> {
        d.ensure_valid()?;
        if !d.flags.l_trivial {
            return Err(Error::Precondition(
                "the criteria need an L-trivial map (L_trivial = true)".into(),
            ));
        }
        b.check_against(d)?;
        Ok(Context {
            d,
            b,
            h1_z2: OnceCell::new(),
            h1_z: OnceCell::new(),
            h2_z: OnceCell::new(),
            h0_all: OnceCell::new(),
            connected: OnceCell::new(),
        })
    }

    fn graph(&self, which: Which) -> Result<&RegionGraph> {
        let (cell, build): (_, Box<dyn Fn() -> Result<RegionGraph>>) = match which {
            Which::H1Z2 => (&self.h1_z2, Box::new(|| graphs::build_graph(self.d, 1, Ring::ModTwo))),
            Which::H1Z => (&self.h1_z, Box::new(|| graphs::build_graph(self.d, 1, Ring::Integers))),
            Which::H2Z => (&self.h2_z, Box::new(|| graphs::build_graph(self.d, 2, Ring::Integers))),
            Which::H0All => (&self.h0_all, Box::new(|| graphs::h0_all_rings_graph(self.d))),
        };
        if let Some(g) = cell.get() {
            return Ok(g);
        }
        let g = build()?;
        Ok(cell.get_or_init(|| g))
    }

    fn connected(&self) -> Result<bool> {
        if let Some(&c) = self.connected.get() {
            return Ok(c);
        }
        let c = source_components(self.d)? == 1;
        Ok(*self.connected.get_or_init(|| c))
    }
}

/// Collects failures for one clause.
struct Failures {
    clause: Clause,
    list: Vec<FailedCondition>,
}

impl Failures {
    fn new(clause: Clause) -> Self {
        Failures {
            clause,
            list: Vec::new(),
        }
    }

    fn push(&mut self, condition: Condition, location: impl Into<String>, detail: impl Into<String>) {
        self.list.push(FailedCondition {
            clause: self.clause,
            condition,
            location: location.into(),
            detail: detail.into(),
        });
    }

    fn finish(self, s: Option<&BTreeSet<usize>>) -> ApplicabilityReport {
        ApplicabilityReport::from_failures(self.clause, s, self.list)
    }

    fn normal_fibers(&mut self, d: &FoldMapDescriptor, condition: Condition) {
        for c in &d.singular {
            let fiber = &c.normal_fiber;
            let bad = match condition {
                Condition::H2Vanishing => Some(("H^2", fiber.cohomology(2, Ring::Integers))),
                Condition::H1Vanishing => Some(("H^1", fiber.cohomology(1, Ring::Integers))),
                Condition::H1Mod2Vanishing => Some(("H^1 over Z/2", fiber.cohomology(1, Ring::ModTwo))),
                Condition::H1TorsionFree => {
                    let h1 = fiber.group(1, Ring::Integers);
                    (!h1.is_free()).then_some(("H_1", h1))
                }
                _ => None,
            };
            if let Some((name, g)) = bad {
                if !g.is_zero() {
                    self.push(
                        condition,
                        format!("singular[{}].normal_fiber", c.index),
                        format!("{name}({}) = {}", fiber.label(), g.to_compact()),
                    );
                }
            }
        }
    }

    fn starting_set(&mut self, g: &RegionGraph, s: &BTreeSet<usize>) -> Result<()> {
        if !graphs::is_starting_set(g, s)? {
            let mut covered = vec![false; g.vertex_count()];
            for &v in s {
                for (c, r) in covered.iter_mut().zip(g.reachable_from(v)) {
                    *c |= r;
                }
            }
            let missed: Vec<String> = covered
                .iter()
                .enumerate()
                .filter(|(_, c)| !**c)
                .map(|(i, _)| i.to_string())
                .collect();
            self.push(
                Condition::StartingSet,
                format!("graph {}", g.kind.title()),
                format!("regions {} are not reachable", missed.join(",")),
            );
        }
        Ok(())
    }

    fn start_equivalent(
        &mut self,
        condition: Condition,
        g1: &RegionGraph,
        g2: &RegionGraph,
        s: &BTreeSet<usize>,
    ) -> Result<()> {
        if !graphs::start_equivalent(g1, g2, s)? {
            self.push(
                condition,
                format!("graphs {} and {}", g1.kind.title(), g2.kind.title()),
                "reachable sets from the starting set differ",
            );
        }
        Ok(())
    }

    fn w1_on(&mut self, ctx: &Context, s: &BTreeSet<usize>) -> Result<()> {
        for &r in s {
            for g in 0..ctx.d.region(r).fiber.mod2_dim(1) {
                let v = ctx.b.w1_value(r, g).ok_or_else(|| {
                    Error::MissingBundleData(format!("w1 {r}.{g} (region {r}, H_1 generator {g})"))
                })?;
                if v {
                    self.push(
                        Condition::W1Vanishing,
                        format!("region[{r}]"),
                        format!("w1 is nonzero on H_1 generator {g}"),
                    );
                }
            }
        }
        Ok(())
    }

    fn euler_on(&mut self, ctx: &Context, s: &BTreeSet<usize>) -> Result<()> {
        for &r in s {
            for g in 0..ctx.d.region(r).fiber.group(2, Ring::Integers).rank() {
                let v = ctx.b.euler_value(r, g).ok_or_else(|| {
                    Error::MissingBundleData(format!("euler {r}.{g} (region {r}, H_2 generator {g})"))
                })?;
                if v != 0 {
                    self.push(
                        Condition::EulerVanishing,
                        format!("region[{r}]"),
                        format!("Euler class evaluates to {v} on H_2 generator {g}"),
                    );
                }
            }
        }
        Ok(())
    }

    /// For each `s` with a non-empty fiber, some boundary sphere facing `s`
    /// must carry a true flag.
    fn flags_facing(&mut self, ctx: &Context, s: &BTreeSet<usize>, torus: bool) -> Result<()> {
        let d = ctx.d;
        for &r in s {
            if d.region(r).fiber.is_empty() {
                continue;
            }
            let facing: Vec<(usize, Side)> = [(r + 1, Side::Inner), (r, Side::Outer)]
                .into_iter()
                .filter(|&(k, _)| k >= 1 && k <= d.l)
                .collect();
            let values: Vec<Option<bool>> = facing
                .iter()
                .map(|&(k, side)| flag(ctx.b, k, side, torus))
                .collect();
            if values.iter().all(Option::is_none) {
                let keys: Vec<String> = facing
                    .iter()
                    .map(|(k, side)| format!("{} {k}.{}", flag_name(torus), side.as_str()))
                    .collect();
                return Err(Error::MissingBundleData(format!(
                    "need one of {} for region {r}",
                    keys.join(", ")
                )));
            }
            if !values.contains(&Some(true)) {
                self.push(
                    flag_condition(torus),
                    format!("region[{r}]"),
                    format!("no boundary sphere facing region {r} has {} = true", flag_name(torus)),
                );
            }
        }
        Ok(())
    }

    /// Some boundary sphere inside the image carries a true flag.
    fn flag_anywhere(&mut self, ctx: &Context, torus: bool) -> Result<()> {
        let values: Vec<Option<bool>> = nonempty_sides(ctx.d)
            .map(|(k, side)| flag(ctx.b, k, side, torus))
            .collect();
        if values.iter().all(Option::is_none) {
            return Err(Error::MissingBundleData(format!(
                "no {} entry for any boundary sphere in the image",
                flag_name(torus)
            )));
        }
        if !values.contains(&Some(true)) {
            self.push(
                flag_condition(torus),
                "image",
                format!("no boundary sphere in the image has {} = true", flag_name(torus)),
            );
        }
        Ok(())
    }
}

fn flag(b: &BundleDescriptor, k: usize, side: Side, torus: bool) -> Option<bool> {
    if torus {
        b.torus_flag(k, side)
    } else {
        b.section_flag(k, side)
    }
}

fn flag_name(torus: bool) -> &'static str {
    if torus {
        "torus_trivial"
    } else {
        "section_trivial"
    }
}

fn flag_condition(torus: bool) -> Condition {
    if torus {
        Condition::TorusTrivial
    } else {
        Condition::SectionTrivial
    }
}

/// Boundary spheres `(component, side)` whose preimage is non-empty.
fn nonempty_sides(d: &FoldMapDescriptor) -> impl Iterator<Item = (usize, Side)> + '_ {
    d.singular.iter().flat_map(move |c| {
        [Side::Inner, Side::Outer]
            .into_iter()
            .filter(move |&side| !d.region(c.region_on(side)).fiber.is_empty())
            .map(move |side| (c.index, side))
    })
}

fn check_start(d: &FoldMapDescriptor, s: &BTreeSet<usize>) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Precondition("the starting set must be non-empty".into()));
    }
    if let Some(&v) = s.iter().find(|&&v| v > d.l) {
        return Err(Error::Precondition(format!("region {v} does not exist (regions are 0..={})", d.l)));
    }
    Ok(())
}

fn thm1(ctx: &Context, s: &BTreeSet<usize>) -> Result<ApplicabilityReport> {
    let d = ctx.d;
    check_start(d, s)?;
    let clause = match d.n {
        n if n >= 4 => Clause::Thm1High,
        3 => Clause::Thm1Three,
        _ => Clause::Thm1Two,
    };
    let mut f = Failures::new(clause);
    f.normal_fibers(d, Condition::H2Vanishing);
    let g = ctx.graph(Which::H1Z2)?;
    f.starting_set(g, s)?;
    if d.n <= 3 {
        f.start_equivalent(Condition::StartEquivalentH0, g, ctx.graph(Which::H0All)?, s)?;
    }
    if d.n == 2 {
        f.start_equivalent(Condition::StartEquivalentH1, g, ctx.graph(Which::H1Z)?, s)?;
    }
    f.w1_on(ctx, s)?;
    match d.n {
        3 => f.flags_facing(ctx, s, false)?,
        2 => f.flags_facing(ctx, s, true)?,
        _ => {}
    }
    Ok(f.finish(Some(s)))
}

fn thm2(ctx: &Context, s: &BTreeSet<usize>) -> Result<ApplicabilityReport> {
    let d = ctx.d;
    check_start(d, s)?;
    let clause = match (d.n, d.image_kind) {
        (3, ImageKind::Disc) => Clause::Cor1,
        (3, _) => Clause::Thm2Three,
        _ => Clause::Thm2Two,
    };
    let mut f = Failures::new(clause);
    if d.n > 3 {
        f.push(
            Condition::TargetDimension,
            "map.n",
            format!("this criterion covers n = 2 and n = 3, got n = {}", d.n),
        );
        return Ok(f.finish(Some(s)));
    }
    if !ctx.connected()? {
        f.push(Condition::SourceConnected, "map", "the source manifold is not connected");
    }
    f.normal_fibers(d, Condition::H2Vanishing);
    let g = ctx.graph(Which::H1Z2)?;
    f.starting_set(g, s)?;
    if d.n == 2 {
        f.start_equivalent(Condition::StartEquivalentH1, g, ctx.graph(Which::H1Z)?, s)?;
    }
    f.w1_on(ctx, s)?;
    match clause {
        Clause::Thm2Three => f.flag_anywhere(ctx, false)?,
        Clause::Thm2Two => f.flags_facing(ctx, s, true)?,
        _ => {}
    }
    Ok(f.finish(Some(s)))
}

fn require_orientable(b: &BundleDescriptor) -> Result<()> {
    if b.orientable {
        Ok(())
    } else {
        Err(Error::Precondition(
            "the Euler-class criteria need an oriented bundle (orientable = true)".into(),
        ))
    }
}

fn thm3(ctx: &Context, s: &BTreeSet<usize>) -> Result<ApplicabilityReport> {
    let d = ctx.d;
    check_start(d, s)?;
    require_orientable(ctx.b)?;
    let clause = match d.n {
        n if n >= 4 => Clause::Thm3High,
        3 => Clause::Thm3Three,
        _ => Clause::Thm3Two,
    };
    let mut f = Failures::new(clause);
    f.normal_fibers(d, Condition::H1TorsionFree);
    let g = ctx.graph(Which::H2Z)?;
    f.starting_set(g, s)?;
    match d.n {
        3 => f.start_equivalent(Condition::StartEquivalentH0, g, ctx.graph(Which::H0All)?, s)?,
        2 => f.start_equivalent(Condition::StartEquivalentH1, g, ctx.graph(Which::H1Z)?, s)?,
        _ => {}
    }
    f.euler_on(ctx, s)?;
    match d.n {
        3 => f.flags_facing(ctx, s, false)?,
        2 => f.flags_facing(ctx, s, true)?,
        _ => {}
    }
    Ok(f.finish(Some(s)))
}

fn thm4(ctx: &Context, s: &BTreeSet<usize>) -> Result<ApplicabilityReport> {
    let d = ctx.d;
    check_start(d, s)?;
    require_orientable(ctx.b)?;
    let clause = if d.image_kind == ImageKind::Disc {
        Clause::Cor2
    } else {
        Clause::Thm4
    };
    let mut f = Failures::new(clause);
    if d.n != 3 {
        f.push(
            Condition::TargetDimension,
            "map.n",
            format!("this criterion covers n = 3 only, got n = {}", d.n),
        );
        return Ok(f.finish(Some(s)));
    }
    if !ctx.connected()? {
        f.push(Condition::SourceConnected, "map", "the source manifold is not connected");
    }
    f.normal_fibers(d, Condition::H1TorsionFree);
    f.starting_set(ctx.graph(Which::H2Z)?, s)?;
    f.euler_on(ctx, s)?;
    if clause == Clause::Thm4 {
        f.flag_anywhere(ctx, false)?;
    }
    Ok(f.finish(Some(s)))
}

fn props(ctx: &Context) -> Result<ApplicabilityReport> {
    let d = ctx.d;
    let b = ctx.b;
    if d.n >= 3 {
        let mut f = Failures::new(Clause::Prop3);
        if d.n == 3 {
            if d.image_kind != ImageKind::Disc {
                f.push(
                    Condition::ImageKind,
                    "map.image_kind",
                    format!("n = 3 needs a disc image, got {}", d.image_kind.as_str()),
                );
            }
            if !ctx.connected()? {
                f.push(Condition::SourceConnected, "map", "the source manifold is not connected");
            }
        }
        f.normal_fibers(d, Condition::H2Vanishing);
        if !b.orientable {
            f.normal_fibers(d, Condition::H1Mod2Vanishing);
        }
        return Ok(f.finish(None));
    }

    let mut part1 = Failures::new(Clause::Prop4Part1);
    part1.normal_fibers(d, Condition::H1Vanishing);
    part1.normal_fibers(d, Condition::H2Vanishing);
    if !b.orientable {
        for (k, side) in nonempty_sides(d) {
            if b.torus_flag(k, side) != Some(true) {
                part1.push(
                    Condition::Orientable,
                    format!("singular[{k}].{}", side.as_str()),
                    "the bundle is not known to be orientable over this boundary",
                );
            }
        }
    }
    let part1 = part1.finish(None);
    if part1.applicable {
        return Ok(part1);
    }
    let mut part2 = Failures::new(Clause::Prop4Part2);
    part2.normal_fibers(d, Condition::H1Vanishing);
    part2.normal_fibers(d, Condition::H2Vanishing);
    if d.image_kind != ImageKind::Disc {
        part2.push(
            Condition::ImageKind,
            "map.image_kind",
            format!("needs a disc image, got {}", d.image_kind.as_str()),
        );
    }
    if !ctx.connected()? {
        part2.push(Condition::SourceConnected, "map", "the source manifold is not connected");
    }
    let part2 = part2.finish(None);
    if part2.applicable {
        return Ok(part2);
    }
    let mut failed = part1.failed_conditions;
    failed.extend(part2.failed_conditions);
    Ok(ApplicabilityReport {
        applicable: false,
        rule: Clause::Prop4Part1,
        starting_set_used: None,
        failed_conditions: failed,
    })
}

pub fn check_theorem_1(d: &FoldMapDescriptor, b: &BundleDescriptor, s: &BTreeSet<usize>) -> Result<ApplicabilityReport> {
    thm1(&Context::new(d, b)?, s)
}

pub fn check_theorem_2(d: &FoldMapDescriptor, b: &BundleDescriptor, s: &BTreeSet<usize>) -> Result<ApplicabilityReport> {
    thm2(&Context::new(d, b)?, s)
}

pub fn check_theorem_3(d: &FoldMapDescriptor, b: &BundleDescriptor, s: &BTreeSet<usize>) -> Result<ApplicabilityReport> {
    thm3(&Context::new(d, b)?, s)
}

pub fn check_theorem_4(d: &FoldMapDescriptor, b: &BundleDescriptor, s: &BTreeSet<usize>) -> Result<ApplicabilityReport> {
    thm4(&Context::new(d, b)?, s)
}

/// Evaluates the two criteria that need no region graph. For `n = 2`
/// the report names whichever part applies, or part 1 with the failures of
/// both parts.
pub fn check_propositions_34(d: &FoldMapDescriptor, b: &BundleDescriptor) -> Result<ApplicabilityReport> {
    props(&Context::new(d, b)?)
}

/// Candidate starting sets: every non-empty subset by size then
/// lexicographically for small descriptors, otherwise the minimal starting
/// sets of `g`.
fn candidates(d: &FoldMapDescriptor, g: &RegionGraph) -> Result<Vec<BTreeSet<usize>>> {
    let n = d.vertex_count();
    if n > EXHAUSTIVE_REGIONS {
        return graphs::minimal_starting_sets(g);
    }
    let mut sets: Vec<BTreeSet<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(sets)
}

type Check = fn(&Context, &BTreeSet<usize>) -> Result<ApplicabilityReport>;

/// Evaluates a criterion on a given start set, or searches one when `s` is
/// `None`. `Auto` tries the propositions, then Theorems 2 and 4, then
/// Theorems 1 and 3, and cites the first clause that applies.
pub fn check(
    d: &FoldMapDescriptor,
    b: &BundleDescriptor,
    rule: RuleChoice,
    s: Option<&BTreeSet<usize>>,
) -> Result<ApplicabilityReport> {
    let ctx = Context::new(d, b)?;
    let thms: Vec<(Check, Which)> = match rule {
        RuleChoice::Prop34 => return props(&ctx),
        RuleChoice::Thm1 => vec![(thm1, Which::H1Z2)],
        RuleChoice::Thm2 => vec![(thm2, Which::H1Z2)],
        RuleChoice::Thm3 => vec![(thm3, Which::H2Z)],
        RuleChoice::Thm4 => vec![(thm4, Which::H2Z)],
        RuleChoice::Auto => {
            let mut v: Vec<(Check, Which)> = Vec::new();
            if d.n <= 3 {
                v.push((thm2, Which::H1Z2));
            }
            if d.n == 3 && b.orientable {
                v.push((thm4, Which::H2Z));
            }
            v.push((thm1, Which::H1Z2));
            if b.orientable {
                v.push((thm3, Which::H2Z));
            }
            v
        }
    };
    let mut failed = Vec::new();
    if rule == RuleChoice::Auto {
        let p = props(&ctx)?;
        if p.applicable {
            return Ok(p);
        }
        failed.extend(p.failed_conditions);
    }
    let single = rule != RuleChoice::Auto;
    for (thm, which) in thms {
        let sets = match s {
            Some(s) => vec![s.clone()],
            None => candidates(d, ctx.graph(which)?)?,
        };
        let mut first: Option<ApplicabilityReport> = None;
        for set in &sets {
            let r = thm(&ctx, set)?;
            if r.applicable {
                return Ok(r);
            }
            first.get_or_insert(r);
        }
        if let Some(r) = first {
            if single {
                return Ok(r);
            }
            failed.extend(r.failed_conditions);
        }
    }
    Ok(ApplicabilityReport {
        applicable: false,
        rule: Clause::None,
        starting_set_used: s.cloned(),
        failed_conditions: failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldmap::{
        bundle_over_sphere, case3_connected_sum, connected_sum_sphere_bundles, special_generic_sphere,
        spun_disc_family, spun_torus_family, two_component_special_generic,
    };
    use crate::homology::parse_manifold;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    fn non_orientable(flags: bool) -> BundleDescriptor {
        BundleDescriptor {
            orientable: false,
            fill_trivial: flags,
            ..Default::default()
        }
    }

    #[test]
    fn h2_vanishing_examples() {
        assert!(check_h2_vanishing(&special_generic_sphere(6, 3).unwrap()));
        // Pants of dimension m - n + 1 have H_2 = 0 once m - n > 2.
        assert!(check_h2_vanishing(&connected_sum_sphere_bundles(9, 4, 3).unwrap()));
        assert!(!check_h2_vanishing(&connected_sum_sphere_bundles(6, 4, 2).unwrap()));
        let f = parse_manifold("sphere(2)").unwrap();
        assert!(!check_h2_vanishing(&bundle_over_sphere(&f, 3).unwrap()));
    }

    #[test]
    fn h1_torsion_examples() {
        assert!(check_h1_torsion_free(&special_generic_sphere(4, 2).unwrap()));
        for (m, n) in [(5, 3), (6, 3), (9, 4)] {
            assert!(check_h1_torsion_free(&connected_sum_sphere_bundles(m, n, 3).unwrap()));
        }
        let f = parse_manifold("explicit(3: Z, Z/2, 0, Z)").unwrap();
        assert!(!check_h1_torsion_free(&bundle_over_sphere(&f, 3).unwrap()));
    }

    #[test]
    fn theorem1_high_codimension() {
        let d = connected_sum_sphere_bundles(9, 4, 2).unwrap();
        let r = check_theorem_1(&d, &BundleDescriptor::trivial(), &set(&[0])).unwrap();
        assert!(r.applicable, "{r:?}");
        assert_eq!(r.rule.as_str(), "Thm 1 case n≥4");
        assert_eq!(r.starting_set_used, Some(set(&[0])));
    }

    #[test]
    fn theorem1_reports_h2() {
        let d = connected_sum_sphere_bundles(6, 4, 2).unwrap();
        let r = check_theorem_1(&d, &BundleDescriptor::trivial(), &set(&[0])).unwrap();
        assert!(!r.applicable);
        assert!(r.failed_conditions.iter().any(|f| f.condition == Condition::H2Vanishing));
    }

    #[test]
    fn theorem1_three_dimensional_target() {
        let d = two_component_special_generic(6, 3).unwrap();
        let r = check_theorem_1(&d, &BundleDescriptor::trivial(), &set(&[1])).unwrap();
        assert!(r.applicable, "{r:?}");
        assert_eq!(r.rule, Clause::Thm1Three);

        let mut b = BundleDescriptor::trivial();
        b.section_trivial.insert((1, Side::Outer), false);
        b.section_trivial.insert((2, Side::Inner), false);
        let r = check_theorem_1(&d, &b, &set(&[1])).unwrap();
        assert_eq!(
            r.failed_conditions.iter().map(|f| f.condition).collect::<Vec<_>>(),
            vec![Condition::SectionTrivial]
        );
    }

    #[test]
    fn missing_data_is_an_error() {
        let d = connected_sum_sphere_bundles(5, 4, 2).unwrap();
        let b = non_orientable(false);
        assert!(matches!(
            check_theorem_1(&d, &b, &set(&[0])),
            Err(Error::MissingBundleData(_))
        ));
        assert!(matches!(
            check_theorem_1(&d, &b, &BTreeSet::new()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn corollary1_needs_no_flag() {
        let d = special_generic_sphere(5, 3).unwrap();
        let mut b = BundleDescriptor::trivial();
        b.section_trivial.insert((1, Side::Inner), false);
        let r = check_theorem_2(&d, &b, &set(&[0])).unwrap();
        assert!(r.applicable, "{r:?}");
        assert_eq!(r.rule, Clause::Cor1);
    }

    #[test]
    fn theorem2_annulus_needs_a_flag() {
        let d = two_component_special_generic(5, 3).unwrap();
        let mut b = BundleDescriptor::trivial();
        for k in 1..=2 {
            for side in [Side::Inner, Side::Outer] {
                b.section_trivial.insert((k, side), false);
            }
        }
        let r = check_theorem_2(&d, &b, &set(&[1])).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.rule, Clause::Thm2Three);
        assert_eq!(r.failed_conditions[0].condition, Condition::SectionTrivial);
        assert!(check_theorem_2(&d, &BundleDescriptor::trivial(), &set(&[1])).unwrap().applicable);
    }

    #[test]
    fn codimension_two_needs_the_h2_criterion() {
        for n in [2, 3, 4] {
            let d = connected_sum_sphere_bundles(n + 2, n, 2).unwrap();
            let b = BundleDescriptor::trivial();
            let s = set(&[0]);
            assert!(!check_theorem_1(&d, &b, &s).unwrap().applicable);
            assert!(!check_propositions_34(&d, &b).unwrap().applicable);
            let r = check_theorem_3(&d, &b, &s).unwrap();
            assert!(r.applicable, "n = {n}: {r:?}");
            if n == 3 {
                assert!(check_theorem_4(&d, &b, &s).unwrap().applicable);
            }
        }
    }

    #[test]
    fn euler_failure_and_orientation() {
        let d = spun_torus_family(4, 2).unwrap();
        let mut b = BundleDescriptor::trivial();
        let r = check_theorem_3(&d, &b, &set(&[2])).unwrap();
        assert!(r.applicable, "{r:?}");
        let rank = d.region(2).fiber.group(2, Ring::Integers).rank();
        assert!(rank > 0);
        b.euler.insert((2, 0), 3);
        let r = check_theorem_3(&d, &b, &set(&[2])).unwrap();
        assert_eq!(r.failed_conditions[0].condition, Condition::EulerVanishing);
        assert!(matches!(
            check_theorem_3(&d, &non_orientable(true), &set(&[2])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn corollary2_and_theorem4() {
        let d = spun_disc_family(5, 3).unwrap();
        let r = check(&d, &BundleDescriptor::trivial(), RuleChoice::Thm4, None).unwrap();
        assert!(r.applicable, "{r:?}");
        assert_eq!(r.rule, Clause::Cor2);
        let f = parse_manifold("explicit(3: Z, Z/2, 0, Z)").unwrap();
        let d = bundle_over_sphere(&f, 3).unwrap();
        let r = check(&d, &BundleDescriptor::trivial(), RuleChoice::Thm4, None).unwrap();
        assert!(r.failed_conditions.iter().any(|f| f.condition == Condition::H1TorsionFree));
    }

    #[test]
    fn propositions_on_connected_sums() {
        let b = BundleDescriptor::trivial();
        let d = connected_sum_sphere_bundles(9, 4, 2).unwrap();
        let r = check_propositions_34(&d, &b).unwrap();
        assert!(r.applicable);
        assert_eq!(r.rule, Clause::Prop3);
        // Codimension one: pants surfaces carry H^1, so an arbitrary bundle
        // is not covered, while the graph criterion still is.
        let d = connected_sum_sphere_bundles(6, 5, 2).unwrap();
        let nb = non_orientable(true);
        assert!(!check_propositions_34(&d, &nb).unwrap().applicable);
        assert!(check_theorem_1(&d, &nb, &set(&[0])).unwrap().applicable);
        let d = connected_sum_sphere_bundles(3, 2, 2).unwrap();
        assert!(!check_propositions_34(&d, &b).unwrap().applicable);
        assert!(check_theorem_1(&d, &b, &set(&[0])).unwrap().applicable);
    }

    #[test]
    fn auto_prefers_weakest_clause() {
        let b = BundleDescriptor::trivial();
        let d = connected_sum_sphere_bundles(9, 4, 2).unwrap();
        assert_eq!(check(&d, &b, RuleChoice::Auto, None).unwrap().rule, Clause::Prop3);
        let d = connected_sum_sphere_bundles(6, 4, 2).unwrap();
        assert_eq!(check(&d, &b, RuleChoice::Auto, None).unwrap().rule, Clause::Thm3High);
        let d = case3_connected_sum(5, 2).unwrap();
        let r = check(&d, &b, RuleChoice::Auto, None).unwrap();
        assert!(r.applicable, "{r:?}");
    }

    #[test]
    fn connectivity() {
        assert_eq!(source_components(&special_generic_sphere(4, 2).unwrap()).unwrap(), 1);
        assert_eq!(source_components(&connected_sum_sphere_bundles(6, 2, 3).unwrap()).unwrap(), 1);
        let f = parse_manifold("copies(2, sphere(1))").unwrap();
        assert_eq!(source_components(&bundle_over_sphere(&f, 3).unwrap()).unwrap(), 2);
    }

    #[test]
    fn bundle_text_round_trip() {
        let src = "[bundle]\norientable = false\nw1 0.1 = 1\nw1 0.0 = 0\nsection_trivial 1.outer = true\ntorus_trivial 2.inner = false\n";
        let b = parse_bundle(src).unwrap();
        assert!(!b.orientable);
        assert_eq!(b.w1_value(0, 1), Some(true));
        assert_eq!(b.w1_value(0, 2), None);
        assert_eq!(b.torus_flag(2, Side::Inner), Some(false));
        assert_eq!(parse_bundle(&serialize_bundle(&b)).unwrap(), b);
        let t = BundleDescriptor::trivial();
        assert_eq!(parse_bundle(&serialize_bundle(&t)).unwrap(), t);
    }

    #[test]
    fn bundle_text_errors() {
        assert!(parse_bundle("[bundle]\n").is_err());
        assert!(parse_bundle("[bundle]\norientable = true\nw1 0.0 = 1\n").is_err());
        assert!(parse_bundle("[bundle]\norientable = false\neuler 0.0 = 1\n").is_err());
        assert!(parse_bundle("[bundle]\norientable = true\nsection_trivial 1.up = true\n").is_err());
        assert!(parse_bundle("[bundle]\norientable = true\n[map]\n").is_err());
        match parse_bundle("[bundle]\norientable = true\nw1 0.0 = 2\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 10)),
            other => panic!("{other:?}"),
        }
        let d = special_generic_sphere(4, 2).unwrap();
        let mut b = BundleDescriptor::trivial();
        b.euler.insert((5, 0), 1);
        assert!(b.check_against(&d).is_err());
    }

    fn fixtures() -> Vec<FoldMapDescriptor> {
        vec![
            special_generic_sphere(5, 2).unwrap(),
            special_generic_sphere(6, 3).unwrap(),
            two_component_special_generic(6, 4).unwrap(),
            connected_sum_sphere_bundles(7, 2, 3).unwrap(),
            connected_sum_sphere_bundles(4, 3, 2).unwrap(),
            spun_torus_family(5, 3).unwrap(),
            spun_disc_family(6, 2).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn trivial_bundle_is_monotone_in_start_set(idx in 0usize..7, mask in 1u32..64, extra in 1u32..64) {
            let d = &fixtures()[idx];
            let n = d.vertex_count();
            let s: BTreeSet<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            prop_assume!(!s.is_empty());
            let bigger: BTreeSet<usize> = s.iter().copied().chain((0..n).filter(|&i| extra & (1 << i) != 0)).collect();
            let b = BundleDescriptor::trivial();
            for check in [check_theorem_1, check_theorem_2, check_theorem_3, check_theorem_4] {
                if check(d, &b, &s).unwrap().applicable {
                    prop_assert!(check(d, &b, &bigger).unwrap().applicable);
                }
            }
        }

        #[test]
        fn reports_are_consistent(idx in 0usize..7, mask in 1u32..64) {
            let d = &fixtures()[idx];
            let s: BTreeSet<usize> = (0..d.vertex_count()).filter(|&i| mask & (1 << i) != 0).collect();
            prop_assume!(!s.is_empty());
            let b = BundleDescriptor::trivial();
            let r = check_theorem_1(d, &b, &s).unwrap();
            prop_assert_eq!(r.applicable, r.failed_conditions.is_empty());
            prop_assert_eq!(&r, &check_theorem_1(d, &b, &s).unwrap());
            let order: Vec<Condition> = r.failed_conditions.iter().map(|f| f.condition).collect();
            let mut sorted = order.clone();
            sorted.sort();
            prop_assert_eq!(order, sorted);
        }
    }
}
