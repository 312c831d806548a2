//! P-operations at the level of descriptor data.
//!
//! A P-operation by a fiber `F` turns a round fold map `f: M -> R^n` into
//! one on the total space of an `F`-bundle over `M`. Over every piece the
//! bundle is a product, so each fiber `X` of the descriptor becomes `X x F`
//! and each inclusion-induced map becomes `h ⊗ id` on `H_*(X) ⊗ H_*(F)`.
//! The Morse functions glued in along the way change the map but not this
//! data, and are not modelled.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abelian::{HomMatrix, IntMatrix, Ring};
use crate::bundles::ApplicabilityReport;
use crate::error::{Error, Result};
use crate::foldmap::{FoldMapDescriptor, Region, Side, SingularComponent, DEGREES};
use crate::gysin::{self, FamilyReport, S2Bundle};
use crate::homology::{self, kunneth_generators, KunnethGenerator, ManifoldHomology};

/// Why the bundle is trivial over each piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Justification {
    /// An applicability report that certified the bundle.
    Report { report: ApplicabilityReport },
    /// The bundle is globally the product `M x F`.
    ProductBundle,
    /// A family statement about circle bundles over this map.
    Family { family: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct POperationResult {
    pub result: FoldMapDescriptor,
    pub fiber_used: ManifoldHomology,
    pub source_name: Option<String>,
    pub justification: Justification,
}

pub fn apply_p_operation(
    d: &FoldMapDescriptor,
    f: &ManifoldHomology,
    justification: Justification,
) -> Result<POperationResult> {
    if let Justification::Report { report } = &justification {
        if !report.applicable {
            return Err(Error::NotApplicable(format!(
                "the bundle is not certified ({} failed)",
                report.rule
            )));
        }
    }
    d.ensure_valid()?;
    if !d.flags.l_trivial {
        return Err(Error::Precondition("P-operations need an L-trivial map".into()));
    }
    if f.is_empty() {
        return Err(Error::Parameter("the fiber of a P-operation must be non-empty".into()));
    }
    if f.components() != 1 {
        return Err(Error::Parameter(format!(
            "the fiber of a P-operation must be connected, {} has {} components",
            f.label(),
            f.components()
        )));
    }

    let times = |x: &ManifoldHomology| homology::kunneth_with(x, f);
    let regions = d
        .regions
        .iter()
        .map(|r| {
            Ok(Region {
                index: r.index,
                fiber: times(&r.fiber)?,
                is_proper_core_region: r.is_proper_core_region,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut singular = Vec::with_capacity(d.singular.len());
    for c in &d.singular {
        let mut out = SingularComponent {
            index: c.index,
            normal_fiber: times(&c.normal_fiber)?,
            inner_boundary_fiber: times(&c.inner_boundary_fiber)?,
            outer_boundary_fiber: times(&c.outer_boundary_fiber)?,
            incl_inner: BTreeMap::new(),
            incl_outer: BTreeMap::new(),
        };
        for side in [Side::Inner, Side::Outer] {
            let src = c.boundary_fiber(side);
            for degree in DEGREES {
                let z = tensor_integral(c, side, src, &c.normal_fiber, f, degree)?;
                out.inclusions_mut(side).insert((degree, Ring::Integers), z);
                let z2 = tensor_mod2(c, side, src, &c.normal_fiber, f, degree)?;
                out.inclusions_mut(side).insert((degree, Ring::ModTwo), z2);
            }
        }
        singular.push(out);
    }

    let result = FoldMapDescriptor {
        name: Some(format!(
            "p_operation({},{})",
            d.name.as_deref().unwrap_or("unnamed"),
            f.label()
        )),
        m: d.m + f.dim(),
        n: d.n,
        l: d.l,
        image_kind: d.image_kind,
        regions,
        singular,
        flags: crate::foldmap::MapFlags {
            l_trivial: true,
            s_trivial: None,
        },
        axis: d.axis.as_ref().map(times).transpose()?,
    };
    result.ensure_valid()?;
    Ok(POperationResult {
        result,
        fiber_used: f.clone(),
        source_name: d.name.clone(),
        justification,
    })
}

fn stored(c: &SingularComponent, side: Side, degree: usize, ring: Ring) -> Result<&HomMatrix> {
    c.inclusion(side, degree, ring).ok_or_else(|| {
        Error::Incomplete(format!(
            "singular component {} has no {} inclusion for H_{degree} over {ring}",
            c.index,
            side.as_str()
        ))
    })
}

/// `(h ⊗ id)` in degree `n` between the Künneth presentations over Z.
fn tensor_integral(
    c: &SingularComponent,
    side: Side,
    x: &ManifoldHomology,
    y: &ManifoldHomology,
    f: &ManifoldHomology,
    n: usize,
) -> Result<HomMatrix> {
    if x.is_empty() {
        let target = homology::kunneth_with(y, f)?.group(n, Ring::Integers);
        return HomMatrix::zero(crate::abelian::AbGroup::zero(), target, Ring::Integers);
    }
    let src: Vec<KunnethGenerator> = kunneth_generators(x, f, n)?;
    let tgt: Vec<KunnethGenerator> = kunneth_generators(y, f, n)?;
    let mut naive = IntMatrix::zeros(tgt.len(), src.len());
    for (col, s) in src.iter().enumerate() {
        let h = stored(c, side, s.p, Ring::Integers)?.matrix();
        for (row, t) in tgt.iter().enumerate() {
            if t.p == s.p && t.f_index == s.f_index {
                naive.set(row, col, h.get(t.x_index, s.x_index));
            }
        }
    }
    let so: Vec<u64> = src.iter().map(|g| g.order).collect();
    let to: Vec<u64> = tgt.iter().map(|g| g.order).collect();
    HomMatrix::from_naive(&so, &to, &naive, Ring::Integers)
}

/// Mod-2 basis of `H_n(X x F)`: pairs of basis vectors ordered by the degree
/// in `X`, then the index in `X`, then the index in `F`.
fn mod2_basis(x: &ManifoldHomology, f: &ManifoldHomology, n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..=n.min(x.dim()) {
        let q = n - p;
        if q > f.dim() {
            continue;
        }
        for i in 0..x.mod2_dim(p) {
            for j in 0..f.mod2_dim(q) {
                out.push((p, i, j));
            }
        }
    }
    out
}

fn tensor_mod2(
    c: &SingularComponent,
    side: Side,
    x: &ManifoldHomology,
    y: &ManifoldHomology,
    f: &ManifoldHomology,
    n: usize,
) -> Result<HomMatrix> {
    let src = mod2_basis(x, f, n);
    let tgt = mod2_basis(y, f, n);
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (col, &(p, i, j)) in src.iter().enumerate() {
        let h = stored(c, side, p, Ring::ModTwo)?.matrix();
        for (row, &(tp, ti, tj)) in tgt.iter().enumerate() {
            if tp == p && tj == j {
                m.set(row, col, h.get(ti, i).rem_euclid(2));
            }
        }
    }
    let source = if x.is_empty() {
        crate::abelian::AbGroup::zero()
    } else {
        crate::abelian::AbGroup::elementary_two(src.len())
    };
    HomMatrix::new(source, crate::abelian::AbGroup::elementary_two(tgt.len()), m, Ring::ModTwo)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S1FamilyReport {
    pub family: FamilyReport,
    pub operation: POperationResult,
}

/// Circle-bundle report for the catalog families with a known answer:
/// the spun torus and spun disc families and the case-three connected sum
/// into the plane, and the maps on `#l S^2 x S^2` into the plane.
///
/// `euler` holds `k` for the single-class families, `(k1, k2)` for the
/// connected sum and the coordinates of the Euler class for `#l S^2 x S^2`.
pub fn s1_family_report(d: &FoldMapDescriptor, euler: &[i64]) -> Result<S1FamilyReport> {
    let name = d.name.as_deref().unwrap_or_default();
    let family = name.split('(').next().unwrap_or_default();
    let arity = |k: usize| {
        if euler.len() == k {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "{family} takes {k} Euler parameter(s), got {}",
                euler.len()
            )))
        }
    };
    let plane = |what: &str| {
        if d.n == 2 {
            Ok(())
        } else {
            Err(Error::NotApplicable(format!("{what} is stated for maps into the plane, got n = {}", d.n)))
        }
    };
    let report = match family {
        "spun_torus_family" => {
            plane(family)?;
            arity(1)?;
            gysin::family_h1_theorem6(euler[0], d.m)?
        }
        "spun_disc_family" => {
            plane(family)?;
            arity(1)?;
            gysin::family_h1_theorem7(euler[0])
        }
        "case3_connected_sum" => {
            plane(family)?;
            arity(2)?;
            gysin::family_h1_theorem8(euler[0], euler[1])?
        }
        "connected_sum_sphere_bundles" if d.m == 4 && d.n == 2 => {
            gysin::family_theorem5(&vec![S2Bundle::Trivial; d.l], euler)?
        }
        _ => {
            return Err(Error::NotApplicable(format!(
                "no circle-bundle family is known for `{}`",
                if name.is_empty() { "unnamed" } else { name }
            )))
        }
    };
    let circle = homology::sphere(1)?;
    let mut operation = apply_p_operation(
        d,
        &circle,
        Justification::Family {
            family: report.family.clone(),
        },
    )?;
    operation.result.flags.s_trivial = report.s_trivial;
    Ok(S1FamilyReport {
        family: report,
        operation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbGroup;
    use crate::foldmap::{
        bundle_over_sphere, case3_connected_sum, connected_sum_sphere_bundles, special_generic_sphere,
        spun_disc_family, spun_torus_family, two_component_special_generic,
    };
    use crate::graphs::build_graph;
    use crate::homology::parse_manifold;

    fn fiber(s: &str) -> ManifoldHomology {
        parse_manifold(s).unwrap()
    }

    fn product(d: &FoldMapDescriptor, f: &str) -> FoldMapDescriptor {
        apply_p_operation(d, &fiber(f), Justification::ProductBundle)
            .unwrap()
            .result
    }

    #[test]
    fn special_generic_gives_bundle_over_sphere_shape() {
        for n in [2, 3, 4] {
            let d = special_generic_sphere(n, n).unwrap();
            for f in ["sphere(1)", "sphere(2)", "torus(1)"] {
                let r = product(&d, f);
                let want = bundle_over_sphere(&fiber(f), n).unwrap();
                assert_eq!(r.region(0).fiber.components(), 2);
                assert!(r.region(0).fiber.same_homology(&want.region(0).fiber));
                assert!(r.axis.as_ref().unwrap().same_homology(want.axis.as_ref().unwrap()));
                assert!(r.component(1).normal_fiber.same_homology(&want.component(1).normal_fiber));
                for degree in DEGREES {
                    for ring in Ring::ALL {
                        assert_eq!(
                            build_graph(&r, degree, ring).unwrap().edges,
                            build_graph(&want, degree, ring).unwrap().edges
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn point_fiber_is_identity() {
        for d in [
            connected_sum_sphere_bundles(6, 2, 3).unwrap(),
            spun_torus_family(5, 2).unwrap(),
            two_component_special_generic(4, 3).unwrap(),
        ] {
            let r = product(&d, "point");
            assert_eq!(r.m, d.m);
            assert_eq!(r.regions, d.regions);
            assert_eq!(r.singular, d.singular);
            assert_eq!(r.axis, d.axis);
        }
    }

    #[test]
    fn circle_over_connected_sum() {
        let d = connected_sum_sphere_bundles(6, 2, 2).unwrap();
        let r = product(&d, "sphere(1)");
        assert_eq!(r.m, 7);
        assert_eq!(r.l, d.l);
        let core = &r.region(0).fiber;
        assert_eq!(core.components(), 2);
        // Each component is S^4 x S^1.
        assert_eq!(core.group(1, Ring::Integers), AbGroup::free(2));
        assert_eq!(core.group(4, Ring::Integers), AbGroup::free(2));
    }

    #[test]
    fn rejects_uncertified_bundle() {
        let d = connected_sum_sphere_bundles(6, 4, 2).unwrap();
        let b = crate::bundles::BundleDescriptor::trivial();
        let s = [0].into_iter().collect();
        let report = crate::bundles::check_theorem_1(&d, &b, &s).unwrap();
        assert!(matches!(
            apply_p_operation(&d, &fiber("sphere(1)"), Justification::Report { report }),
            Err(Error::NotApplicable(_))
        ));
        assert!(apply_p_operation(&d, &fiber("copies(2,point)"), Justification::ProductBundle).is_err());
        let rp2 = fiber("explicit(2: Z, Z/2, 0)");
        let tw = bundle_over_sphere(&rp2, 3).unwrap();
        assert!(matches!(
            apply_p_operation(&tw, &rp2, Justification::ProductBundle),
            Err(Error::UnsupportedTor(_))
        ));
    }

    #[test]
    fn mod2_surjectivity_preserved() {
        for d in [
            special_generic_sphere(5, 3).unwrap(),
            connected_sum_sphere_bundles(7, 3, 2).unwrap(),
            spun_disc_family(5, 2).unwrap(),
        ] {
            let r = product(&d, "torus(1)");
            for degree in DEGREES {
                let before = build_graph(&d, degree, Ring::ModTwo).unwrap();
                let after = build_graph(&r, degree, Ring::ModTwo).unwrap();
                for &e in &before.edges {
                    let all_before = (0..=degree).all(|p| build_graph(&d, p, Ring::ModTwo).unwrap().edges.contains(&e));
                    if all_before {
                        assert!(after.edges.contains(&e), "{:?} degree {degree} edge {e:?}", d.name);
                    }
                }
            }
        }
    }

    #[test]
    fn family_dispatch() {
        let r = s1_family_report(&spun_torus_family(5, 2).unwrap(), &[3]).unwrap();
        assert_eq!(r.family.family, "thm6");
        assert_eq!(r.operation.result.flags.s_trivial, Some(false));
        assert_eq!(r.operation.result.m, 6);
        let r = s1_family_report(&spun_disc_family(5, 2).unwrap(), &[2]).unwrap();
        assert_eq!(r.family.family, "thm7");
        let r = s1_family_report(&case3_connected_sum(5, 2).unwrap(), &[2, 3]).unwrap();
        assert_eq!(r.family.group("H_1(M_(k1,k2))").unwrap().to_compact(), "Z^2+Z/6");
        let r = s1_family_report(&connected_sum_sphere_bundles(4, 2, 2).unwrap(), &[1, 0, 0, 0]).unwrap();
        assert_eq!(r.family.total_space, "#3 S^2×S^3");
        assert!(s1_family_report(&special_generic_sphere(4, 2).unwrap(), &[1]).is_err());
        assert!(s1_family_report(&spun_torus_family(6, 3).unwrap(), &[1]).is_err());
        assert!(s1_family_report(&case3_connected_sum(5, 2).unwrap(), &[1]).is_err());
    }
}
