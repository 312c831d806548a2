//! Descriptors of the standard examples, built from a small piece model.
//!
//! Every regular fiber in these examples is a disjoint union of copies of
//! `S^k` (`k = m - n`) and every normal fiber is a disjoint union of pieces
//! `S^{k+1}` minus `b` open discs, one boundary sphere per removed disc.

use std::collections::BTreeMap;

use crate::abelian::{AbGroup, HomMatrix, IntMatrix, Ring};
use crate::error::{Error, Result};
use crate::foldmap::{
    FoldMapDescriptor, ImageKind, MapFlags, Region, Side, SingularComponent, DEGREES,
};
use crate::homology::{self, ManifoldHomology};

pub const CATALOG_NAMES: [&str; 7] = [
    "special_generic_sphere",
    "bundle_over_sphere",
    "connected_sum_sphere_bundles",
    "two_component_special_generic",
    "spun_torus_family",
    "spun_disc_family",
    "case3_connected_sum",
];

/// One connected piece of a normal fiber: the copies of `S^k` on each side
/// that bound it.
#[derive(Debug, Clone)]
struct Piece {
    inner: Vec<usize>,
    outer: Vec<usize>,
}

impl Piece {
    fn new(inner: &[usize], outer: &[usize]) -> Self {
        Piece {
            inner: inner.to_vec(),
            outer: outer.to_vec(),
        }
    }

    fn boundary_count(&self) -> usize {
        self.inner.len() + self.outer.len()
    }

    fn slots(&self) -> impl Iterator<Item = (Side, usize)> + '_ {
        self.inner
            .iter()
            .map(|&c| (Side::Inner, c))
            .chain(self.outer.iter().map(|&c| (Side::Outer, c)))
    }

    fn copies_on(&self, side: Side) -> &[usize] {
        match side {
            Side::Inner => &self.inner,
            Side::Outer => &self.outer,
        }
    }
}

fn sphere_copies(k: usize, count: usize) -> Result<ManifoldHomology> {
    homology::copies(count as i64, &homology::sphere(k as i64)?)
}

fn pieces_fiber(k: usize, pieces: &[Piece]) -> Result<ManifoldHomology> {
    let mut out: Option<ManifoldHomology> = None;
    let mut i = 0;
    while i < pieces.len() {
        let b = pieces[i].boundary_count();
        let run = pieces[i..]
            .iter()
            .take_while(|p| p.boundary_count() == b)
            .count();
        let one = homology::sphere_minus_discs(k as i64 + 1, b as i64)?;
        let block = homology::copies(run as i64, &one)?;
        out = Some(match out {
            None => block,
            Some(acc) => homology::disjoint_union(&acc, &block)?,
        });
        i += run;
    }
    out.ok_or_else(|| Error::Parameter("a normal fiber needs at least one piece".into()))
}

fn component_from_pieces(
    index: usize,
    k: usize,
    inner_count: usize,
    outer_count: usize,
    pieces: &[Piece],
) -> Result<SingularComponent> {
    let normal = pieces_fiber(k, pieces)?;
    let inner = sphere_copies(k, inner_count)?;
    let outer = sphere_copies(k, outer_count)?;
    let comps_per_copy = if k == 0 { 2 } else { 1 };

    let mut h_k_offsets = Vec::with_capacity(pieces.len());
    let mut acc = 0;
    for p in pieces {
        h_k_offsets.push(acc);
        acc += p.boundary_count() - 1;
    }

    let mut maps: [BTreeMap<(usize, Ring), HomMatrix>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for (slot, side) in [Side::Inner, Side::Outer].into_iter().enumerate() {
        let fiber = if side == Side::Inner { &inner } else { &outer };
        for degree in DEGREES {
            let src = fiber.group(degree, Ring::Integers);
            let tgt = normal.group(degree, Ring::Integers);
            let mut m = IntMatrix::zeros(tgt.generator_count(), src.generator_count());
            if degree == 0 {
                for (p, piece) in pieces.iter().enumerate() {
                    for &c in piece.copies_on(side) {
                        for t in 0..comps_per_copy {
                            m.set(p, c * comps_per_copy + t, 1);
                        }
                    }
                }
            } else if degree == k {
                for (p, piece) in pieces.iter().enumerate() {
                    let b = piece.boundary_count();
                    for (s, (sd, c)) in piece.slots().enumerate() {
                        if sd != side {
                            continue;
                        }
                        if s + 1 < b {
                            m.set(h_k_offsets[p] + s, c, 1);
                        } else {
                            for t in 0..b - 1 {
                                m.set(h_k_offsets[p] + t, c, -1);
                            }
                        }
                    }
                }
            }
            let mod2 = m.map_entries(|x| x.rem_euclid(2));
            maps[slot].insert(
                (degree, Ring::ModTwo),
                HomMatrix::new(
                    fiber.group(degree, Ring::ModTwo),
                    normal.group(degree, Ring::ModTwo),
                    mod2,
                    Ring::ModTwo,
                )?,
            );
            maps[slot].insert(
                (degree, Ring::Integers),
                HomMatrix::new(src, tgt, m, Ring::Integers)?,
            );
        }
    }
    let [incl_inner, incl_outer] = maps;
    Ok(SingularComponent {
        index,
        normal_fiber: normal,
        inner_boundary_fiber: inner,
        outer_boundary_fiber: outer,
        incl_inner,
        incl_outer,
    })
}

/// Assembles a descriptor whose regions carry `counts[i]` copies of `S^k`.
fn sphere_descriptor(
    name: String,
    m: usize,
    n: usize,
    counts: &[usize],
    layouts: &[Vec<Piece>],
    image_kind: ImageKind,
    axis: ManifoldHomology,
) -> Result<FoldMapDescriptor> {
    let k = m - n;
    let regions = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            Ok(Region {
                index: i,
                fiber: sphere_copies(k, c)?,
                is_proper_core_region: i == 0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let singular = layouts
        .iter()
        .enumerate()
        .map(|(i, pieces)| component_from_pieces(i + 1, k, counts[i], counts[i + 1], pieces))
        .collect::<Result<Vec<_>>>()?;
    Ok(FoldMapDescriptor {
        name: Some(name),
        m,
        n,
        l: layouts.len(),
        image_kind,
        regions,
        singular,
        flags: MapFlags {
            l_trivial: true,
            s_trivial: Some(true),
        },
        axis: Some(axis),
    })
}

fn check(cond: bool, name: &str, constraint: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} requires {constraint}")))
    }
}

fn disc_in(side: Side) -> Vec<Piece> {
    match side {
        Side::Inner => vec![Piece::new(&[0], &[])],
        Side::Outer => vec![Piece::new(&[], &[0])],
    }
}

fn merge() -> Vec<Piece> {
    vec![Piece::new(&[0, 1], &[0])]
}

fn split() -> Vec<Piece> {
    vec![Piece::new(&[0], &[0, 1])]
}

/// Special generic map with connected singular set: `S^m` into the `n`-disc.
pub fn special_generic_sphere(m: usize, n: usize) -> Result<FoldMapDescriptor> {
    check(m >= n && n >= 2, "special_generic_sphere(m,n)", "m >= n >= 2")?;
    let k = m - n;
    sphere_descriptor(
        format!("special_generic_sphere({m},{n})"),
        m,
        n,
        &[1, 0],
        &[disc_in(Side::Inner)],
        ImageKind::Disc,
        homology::disc(k as i64 + 1)?,
    )
}

/// Composition of an `F`-bundle over `S^n` with the canonical projection
/// `S^n -> R^n`: two copies of `F` over the core, one fold sphere.
pub fn bundle_over_sphere(f: &ManifoldHomology, n: usize) -> Result<FoldMapDescriptor> {
    check(n >= 2, "bundle_over_sphere(F,n)", "n >= 2")?;
    check(!f.is_empty(), "bundle_over_sphere(F,n)", "a non-empty fiber F")?;
    let interval = homology::disc(1)?;
    let normal = homology::kunneth_with(f, &interval)?;
    let core = homology::copies(2, f)?;
    let empty = ManifoldHomology::empty(f.dim());

    let mut incl_inner = BTreeMap::new();
    let mut incl_outer = BTreeMap::new();
    for degree in DEGREES {
        let orders = f.group(degree, Ring::Integers).generator_orders();
        let g = orders.len();
        let doubled: Vec<u64> = orders.iter().chain(&orders).copied().collect();
        let mut both = IntMatrix::zeros(g, 2 * g);
        for i in 0..g {
            both.set(i, i, 1);
            both.set(i, g + i, 1);
        }
        incl_inner.insert(
            (degree, Ring::Integers),
            HomMatrix::from_naive(&doubled, &orders, &both, Ring::Integers)?,
        );
        let d = f.mod2_dim(degree);
        let mut both2 = IntMatrix::zeros(d, 2 * d);
        for i in 0..d {
            both2.set(i, i, 1);
            both2.set(i, d + i, 1);
        }
        incl_inner.insert(
            (degree, Ring::ModTwo),
            HomMatrix::new(
                core.group(degree, Ring::ModTwo),
                normal.group(degree, Ring::ModTwo),
                both2,
                Ring::ModTwo,
            )?,
        );
        for ring in Ring::ALL {
            incl_outer.insert(
                (degree, ring),
                HomMatrix::zero(AbGroup::zero(), normal.group(degree, ring), ring)?,
            );
        }
    }

    let m = f.dim() + n;
    Ok(FoldMapDescriptor {
        name: Some(format!("bundle_over_sphere({},{n})", f.label())),
        m,
        n,
        l: 1,
        image_kind: ImageKind::Disc,
        regions: vec![
            Region {
                index: 0,
                fiber: core.clone(),
                is_proper_core_region: true,
            },
            Region {
                index: 1,
                fiber: empty.clone(),
                is_proper_core_region: false,
            },
        ],
        singular: vec![SingularComponent {
            index: 1,
            normal_fiber: normal.clone(),
            inner_boundary_fiber: core,
            outer_boundary_fiber: empty,
            incl_inner,
            incl_outer,
        }],
        flags: MapFlags {
            l_trivial: true,
            s_trivial: Some(true),
        },
        axis: Some(normal),
    })
}

/// Round fold map on a connected sum of `l` copies of `S^{m-n}`-bundles over
/// `S^n`: region `r` carries `l - r` spheres, and each fold merges two of them
/// while the rest pass through cylinders.
pub fn connected_sum_sphere_bundles(m: usize, n: usize, l: usize) -> Result<FoldMapDescriptor> {
    check(
        m > n && n >= 2,
        "connected_sum_sphere_bundles(m,n,l)",
        "m > n >= 2",
    )?;
    check(l >= 1, "connected_sum_sphere_bundles(m,n,l)", "l >= 1")?;
    let k = m - n;
    let counts: Vec<usize> = (0..=l).map(|r| l - r).collect();
    let mut layouts = Vec::with_capacity(l);
    for c in 1..=l {
        let inner = counts[c - 1];
        if inner == 1 {
            layouts.push(disc_in(Side::Inner));
            continue;
        }
        let mut pieces = merge();
        for i in 0..inner - 2 {
            pieces.push(Piece::new(&[i + 2], &[i + 1]));
        }
        layouts.push(pieces);
    }
    sphere_descriptor(
        format!("connected_sum_sphere_bundles({m},{n},{l})"),
        m,
        n,
        &counts,
        &layouts,
        ImageKind::Disc,
        homology::sphere_minus_discs(k as i64 + 1, l as i64)?,
    )
}

/// Special generic map onto an annulus with two fold spheres; the source is
/// `S^{n-1} x S^{m-n+1}`.
pub fn two_component_special_generic(m: usize, n: usize) -> Result<FoldMapDescriptor> {
    check(m >= n && n >= 2, "two_component_special_generic(m,n)", "m >= n >= 2")?;
    let k = m - n;
    sphere_descriptor(
        format!("two_component_special_generic({m},{n})"),
        m,
        n,
        &[0, 1, 0],
        &[disc_in(Side::Outer), disc_in(Side::Inner)],
        ImageKind::Annulus,
        homology::sphere(k as i64 + 1)?,
    )
}

/// Annulus image, four fold spheres, regular fibers of one or two spheres,
/// axis preimage `S^1 x S^{m-n}`.
pub fn spun_torus_family(m: usize, n: usize) -> Result<FoldMapDescriptor> {
    check(m > n && n >= 2, "spun_torus_family(m,n)", "m > n >= 2")?;
    let k = m - n;
    sphere_descriptor(
        format!("spun_torus_family({m},{n})"),
        m,
        n,
        &[0, 1, 2, 1, 0],
        &[disc_in(Side::Outer), split(), merge(), disc_in(Side::Inner)],
        ImageKind::Annulus,
        homology::kunneth_with(&homology::sphere(1)?, &homology::sphere(k as i64)?)?,
    )
}

fn punctured_circle_times_sphere(k: usize) -> Result<ManifoldHomology> {
    let mut groups = vec![AbGroup::zero(); k + 2];
    groups[0] = AbGroup::free(1);
    groups[1] = AbGroup::free(1);
    groups[k] = crate::abelian::direct_sum(&groups[k], &AbGroup::free(1))?;
    ManifoldHomology::explicit(k + 1, groups)
}

/// Disc image, three fold spheres, axis preimage `S^1 x S^{m-n}` minus a disc.
pub fn spun_disc_family(m: usize, n: usize) -> Result<FoldMapDescriptor> {
    check(m > n && n >= 2, "spun_disc_family(m,n)", "m > n >= 2")?;
    let k = m - n;
    sphere_descriptor(
        format!("spun_disc_family({m},{n})"),
        m,
        n,
        &[1, 2, 1, 0],
        &[split(), merge(), disc_in(Side::Inner)],
        ImageKind::Disc,
        punctured_circle_times_sphere(k)?,
    )
}

/// Two copies of the disc-image family glued along a proper core: five fold
/// spheres, regions alternating one and two spheres.
pub fn case3_connected_sum(m: usize, n: usize) -> Result<FoldMapDescriptor> {
    check(
        m > n && n >= 2 && m >= 2 * n && m - n >= 3,
        "case3_connected_sum(m,n)",
        "m > n >= 2, m >= 2n and m - n >= 3",
    )?;
    let k = m - n;
    let mut groups = vec![AbGroup::zero(); k + 2];
    groups[0] = AbGroup::free(1);
    groups[1] = AbGroup::free(2);
    groups[k] = AbGroup::free(2);
    sphere_descriptor(
        format!("case3_connected_sum({m},{n})"),
        m,
        n,
        &[1, 2, 1, 2, 1, 0],
        &[split(), merge(), split(), merge(), disc_in(Side::Inner)],
        ImageKind::Disc,
        ManifoldHomology::explicit(k + 1, groups)?,
    )
}

fn int_param(name: &str, params: &[String], i: usize) -> Result<usize> {
    let raw = params
        .get(i)
        .ok_or_else(|| Error::Parameter(format!("{name} is missing parameter {}", i + 1)))?;
    raw.trim()
        .parse()
        .map_err(|_| Error::Parameter(format!("{name}: `{raw}` is not a non-negative integer")))
}

fn arity(name: &str, params: &[String], n: usize) -> Result<()> {
    if params.len() == n {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "{name} takes {n} parameters, got {}",
            params.len()
        )))
    }
}

/// Looks up a catalog item by name; `bundle_over_sphere` takes a fiber
/// expression as its first parameter.
pub fn catalog(name: &str, params: &[String]) -> Result<FoldMapDescriptor> {
    match name {
        "special_generic_sphere" => {
            arity(name, params, 2)?;
            special_generic_sphere(int_param(name, params, 0)?, int_param(name, params, 1)?)
        }
        "bundle_over_sphere" => {
            arity(name, params, 2)?;
            let f = homology::parse_manifold(&params[0])?;
            bundle_over_sphere(&f, int_param(name, params, 1)?)
        }
        "connected_sum_sphere_bundles" => {
            arity(name, params, 3)?;
            connected_sum_sphere_bundles(
                int_param(name, params, 0)?,
                int_param(name, params, 1)?,
                int_param(name, params, 2)?,
            )
        }
        "two_component_special_generic" => {
            arity(name, params, 2)?;
            two_component_special_generic(int_param(name, params, 0)?, int_param(name, params, 1)?)
        }
        "spun_torus_family" => {
            arity(name, params, 2)?;
            spun_torus_family(int_param(name, params, 0)?, int_param(name, params, 1)?)
        }
        "spun_disc_family" => {
            arity(name, params, 2)?;
            spun_disc_family(int_param(name, params, 0)?, int_param(name, params, 1)?)
        }
        "case3_connected_sum" => {
            arity(name, params, 2)?;
            case3_connected_sum(int_param(name, params, 0)?, int_param(name, params, 1)?)
        }
        other => Err(Error::Parameter(format!(
            "unknown catalog item `{other}`; known: {}",
            CATALOG_NAMES.join(", ")
        ))),
    }
}
