//! Text form of a descriptor.
//!
//! ```text
//! [map]
//! name = special_generic_sphere(4,2)
//! m = 4
//! n = 2
//! l = 1
//! image_kind = disc            # disc | annulus | full-plane-complement
//! L_trivial = true
//! S_trivial = true             # true | false | undetermined (default)
//! axis = disc(3)               # optional
//!
//! [region 0]
//! fiber = sphere(2)
//!
//! [singular 1]
//! normal_fiber = disc(3)
//! inner_fiber = sphere(2)      # optional, defaults to the region fiber
//! inner.h0.z = [[1]]           # SIDE.hDEGREE.RING = matrix | auto
//! inner.h2.z2 = auto
//! ```
//!
//! Region and boundary fibers use the expression grammar of
//! [`crate::homology::parse_manifold`]. `auto` resolves to the zero map when
//! either group is zero and to the identity when the groups coincide.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::abelian::{HomMatrix, IntMatrix, Ring};
use crate::error::{Error, Result};
use crate::foldmap::{
    FoldMapDescriptor, ImageKind, MapFlags, Region, Side, SingularComponent,
};
use crate::homology::{parse_manifold, ManifoldHomology};
use crate::text::{parse_matrix, parse_sections, Entry, Section};

pub fn serialize_descriptor(d: &FoldMapDescriptor) -> String {
    let mut s = String::new();
    s.push_str("[map]\n");
    if let Some(name) = &d.name {
        let _ = writeln!(s, "name = {name}");
    }
    let _ = writeln!(s, "m = {}", d.m);
    let _ = writeln!(s, "n = {}", d.n);
    let _ = writeln!(s, "l = {}", d.l);
    let _ = writeln!(s, "image_kind = {}", d.image_kind.as_str());
    let _ = writeln!(s, "L_trivial = {}", d.flags.l_trivial);
    match d.flags.s_trivial {
        Some(v) => {
            let _ = writeln!(s, "S_trivial = {v}");
        }
        None => s.push_str("S_trivial = undetermined\n"),
    }
    if let Some(axis) = &d.axis {
        let _ = writeln!(s, "axis = {}", axis.label());
    }
    for r in &d.regions {
        let _ = write!(s, "\n[region {}]\nfiber = {}\n", r.index, r.fiber.label());
    }
    for c in &d.singular {
        let _ = write!(s, "\n[singular {}]\nnormal_fiber = {}\n", c.index, c.normal_fiber.label());
        for side in [Side::Inner, Side::Outer] {
            let region_fiber = d.regions.get(c.region_on(side)).map(|r| &r.fiber);
            let b = c.boundary_fiber(side);
            if region_fiber != Some(b) {
                let _ = writeln!(s, "{}_fiber = {}", side.as_str(), b.label());
            }
        }
        for side in [Side::Inner, Side::Outer] {
            for ((degree, ring), h) in c.inclusions(side) {
                let _ = writeln!(
                    s,
                    "{}.h{degree}.{} = {}",
                    side.as_str(),
                    ring.short_name(),
                    h.matrix()
                );
            }
        }
    }
    s
}

fn fiber_entry(e: &Entry, fiber_dim: usize) -> Result<ManifoldHomology> {
    let m = parse_manifold(&e.value).map_err(|err| e.relocate(err))?;
    Ok(if m.is_empty() {
        ManifoldHomology::empty(fiber_dim)
    } else {
        m
    })
}

fn index_arg(section: &Section) -> Result<usize> {
    section
        .arg
        .as_deref()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| {
            Error::parse(
                section.line,
                1,
                format!("section [{}] needs a numeric index", section.name),
            )
        })
}

fn reject_unknown(section: &Section, known: &[&str]) -> Result<()> {
    for e in &section.entries {
        if !known.contains(&e.key.as_str()) {
            return Err(Error::parse(
                e.line,
                1,
                format!("unknown key `{}` in [{}]", e.key, section.header()),
            ));
        }
    }
    Ok(())
}

pub fn parse_descriptor(src: &str) -> Result<FoldMapDescriptor> {
    let sections = parse_sections(src)?;
    let map = sections
        .iter()
        .find(|s| s.name == "map")
        .ok_or_else(|| Error::parse(1, 1, "missing [map] section"))?;
    reject_unknown(
        map,
        &["name", "m", "n", "l", "image_kind", "L_trivial", "S_trivial", "axis"],
    )?;
    let m: usize = map.require("m")?.parse_int()?;
    let n: usize = map.require("n")?.parse_int()?;
    let l: usize = map.require("l")?.parse_int()?;
    let kind_entry = map.require("image_kind")?;
    let image_kind = ImageKind::parse(&kind_entry.value).ok_or_else(|| {
        kind_entry.error(format!(
            "image_kind must be disc, annulus or full-plane-complement, got `{}`",
            kind_entry.value
        ))
    })?;
    let l_trivial = match map.get("L_trivial") {
        Some(e) => e.parse_bool()?,
        None => true,
    };
    let s_trivial = match map.get("S_trivial") {
        None => None,
        Some(e) if e.value == "undetermined" => None,
        Some(e) => Some(e.parse_bool()?),
    };
    let fiber_dim = m.saturating_sub(n);
    let axis = map
        .get("axis")
        .map(|e| parse_manifold(&e.value).map_err(|err| e.relocate(err)))
        .transpose()?;

    let mut regions: BTreeMap<usize, Region> = BTreeMap::new();
    let mut singular_sections: BTreeMap<usize, &Section> = BTreeMap::new();
    for s in &sections {
        match s.name.as_str() {
            "map" => {}
            "region" => {
                reject_unknown(s, &["fiber"])?;
                let i = index_arg(s)?;
                if i > l {
                    return Err(Error::parse(s.line, 1, format!("region {i} exceeds l = {l}")));
                }
                let fiber = fiber_entry(s.require("fiber")?, fiber_dim)?;
                if regions
                    .insert(
                        i,
                        Region {
                            index: i,
                            fiber,
                            is_proper_core_region: i == 0,
                        },
                    )
                    .is_some()
                {
                    return Err(Error::parse(s.line, 1, format!("duplicate [region {i}]")));
                }
            }
            "singular" => {
                let k = index_arg(s)?;
                if k == 0 || k > l {
                    return Err(Error::parse(
                        s.line,
                        1,
                        format!("singular component {k} is outside 1..={l}"),
                    ));
                }
                if singular_sections.insert(k, s).is_some() {
                    return Err(Error::parse(s.line, 1, format!("duplicate [singular {k}]")));
                }
            }
            other => {
                return Err(Error::parse(s.line, 1, format!("unknown section [{other}]")));
            }
        }
    }
    for i in 0..=l {
        if !regions.contains_key(&i) {
            return Err(Error::parse(map.line, 1, format!("missing section [region {i}]")));
        }
    }
    let regions: Vec<Region> = regions.into_values().collect();

    let mut singular = Vec::with_capacity(l);
    for k in 1..=l {
        let s = singular_sections
            .get(&k)
            .ok_or_else(|| Error::parse(map.line, 1, format!("missing section [singular {k}]")))?;
        singular.push(parse_singular(s, k, &regions, fiber_dim)?);
    }

    Ok(FoldMapDescriptor {
        name: map.get("name").map(|e| e.value.clone()),
        m,
        n,
        l,
        image_kind,
        regions,
        singular,
        flags: MapFlags {
            l_trivial,
            s_trivial,
        },
        axis,
    })
}

fn parse_singular(
    s: &Section,
    k: usize,
    regions: &[Region],
    fiber_dim: usize,
) -> Result<SingularComponent> {
    let normal_fiber = fiber_entry(s.require("normal_fiber")?, fiber_dim + 1)?;
    let inner_boundary_fiber = match s.get("inner_fiber") {
        Some(e) => fiber_entry(e, fiber_dim)?,
        None => regions[k - 1].fiber.clone(),
    };
    let outer_boundary_fiber = match s.get("outer_fiber") {
        Some(e) => fiber_entry(e, fiber_dim)?,
        None => regions[k].fiber.clone(),
    };
    let mut c = SingularComponent {
        index: k,
        normal_fiber,
        inner_boundary_fiber,
        outer_boundary_fiber,
        incl_inner: BTreeMap::new(),
        incl_outer: BTreeMap::new(),
    };
    for e in &s.entries {
        if matches!(e.key.as_str(), "normal_fiber" | "inner_fiber" | "outer_fiber") {
            continue;
        }
        let (side, degree, ring) = parse_map_key(e)?;
        let src = c.boundary_fiber(side).group(degree, ring);
        let tgt = c.normal_fiber.group(degree, ring);
        let matrix = if e.value == "auto" {
            if src.is_zero() || tgt.is_zero() {
                IntMatrix::zeros(tgt.generator_count(), src.generator_count())
            } else if src == tgt {
                IntMatrix::identity(src.generator_count())
            } else {
                return Err(e.error(format!(
                    "`auto` cannot choose a map {} -> {}; give the matrix",
                    src.to_compact(),
                    tgt.to_compact()
                )));
            }
        } else {
            parse_matrix(&e.value, tgt.generator_count(), src.generator_count())
                .map_err(|err| e.relocate(err))?
        };
        let h = HomMatrix::new(src, tgt, matrix, ring).map_err(|err| e.error(err.to_string()))?;
        c.inclusions_mut(side).insert((degree, ring), h);
    }
    Ok(c)
}

fn parse_map_key(e: &Entry) -> Result<(Side, usize, Ring)> {
    let bad = || {
        Error::parse(
            e.line,
            1,
            format!(
                "unknown key `{}`; expected SIDE.hDEGREE.RING such as inner.h1.z2",
                e.key
            ),
        )
    };
    let parts: Vec<&str> = e.key.split('.').collect();
    let [side, degree, ring] = parts[..] else {
        return Err(bad());
    };
    let side = match side {
        "inner" => Side::Inner,
        "outer" => Side::Outer,
        _ => return Err(bad()),
    };
    let degree: usize = degree
        .strip_prefix('h')
        .and_then(|d| d.parse().ok())
        .filter(|&d| d <= 2)
        .ok_or_else(bad)?;
    let ring = match ring {
        "z" => Ring::Integers,
        "z2" => Ring::ModTwo,
        _ => return Err(bad()),
    };
    Ok((side, degree, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldmap::{catalog, special_generic_sphere, validate};

    #[test]
    fn catalog_round_trip() {
        for (name, params) in [
            ("special_generic_sphere", vec!["4", "2"]),
            ("connected_sum_sphere_bundles", vec!["6", "2", "3"]),
            ("connected_sum_sphere_bundles", vec!["3", "2", "2"]),
            ("spun_torus_family", vec!["5", "2"]),
            ("bundle_over_sphere", vec!["explicit(3: Z, Z+Z/2, 0, Z)", "2"]),
        ] {
            let params: Vec<String> = params.into_iter().map(String::from).collect();
            let d = catalog(name, &params).unwrap();
            let text = serialize_descriptor(&d);
            let back = parse_descriptor(&text).unwrap();
            assert_eq!(back, d, "{text}");
            assert_eq!(serialize_descriptor(&back), text);
        }
    }

    #[test]
    fn handwritten_file_with_auto() {
        let text = "\
[map]
name = special_generic_sphere(4,2)
m = 4
n = 2
l = 1
image_kind = disc
L_trivial = true
S_trivial = true
axis = disc(3)

[region 0]
fiber = sphere(2)

[region 1]
fiber = empty

[singular 1]
normal_fiber = sphere_minus_discs(3,1)
inner.h0.z = auto
inner.h0.z2 = auto
inner.h1.z = auto
inner.h1.z2 = auto
inner.h2.z = []
inner.h2.z2 = auto
outer.h0.z = auto
outer.h0.z2 = auto
outer.h1.z = auto
outer.h1.z2 = auto
outer.h2.z = auto
outer.h2.z2 = auto
";
        let d = parse_descriptor(text).unwrap();
        assert_eq!(validate(&d), vec![]);
        assert_eq!(d, special_generic_sphere(4, 2).unwrap());
    }

    #[test]
    fn missing_field_is_named() {
        let text = "[map]\nn = 2\nl = 1\nimage_kind = disc\n";
        match parse_descriptor(text) {
            Err(Error::Parse { message, line, .. }) => {
                assert!(message.contains("`m`"), "{message}");
                assert_eq!(line, 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let base = serialize_descriptor(&special_generic_sphere(4, 2).unwrap());
        let broken = base.replace("fiber = sphere(2)", "fiber = sphere(x)");
        match parse_descriptor(&broken) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 12);
                assert_eq!(column, 16);
            }
            other => panic!("{other:?}"),
        }
        let broken = base.replace("inner.h0.z = [[1]]", "inner.h0.z = [[1,0]]");
        assert!(matches!(parse_descriptor(&broken), Err(Error::Parse { .. })));
        let broken = base.replace("inner.h0.z =", "inner.h3.z =");
        assert!(parse_descriptor(&broken).is_err());
        let broken = base.replace("[region 1]", "[region 7]");
        assert!(parse_descriptor(&broken).is_err());
    }
}
