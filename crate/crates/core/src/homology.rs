//! Integral homology of the building-block manifolds that appear as fibers,
//! with Künneth products and a small expression grammar.
//!
//! Only integral groups are stored. Z/2 groups are derived on demand by the
//! universal coefficient theorem, so the two coefficient systems can never
//! disagree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{gcd, AbGroup, CanonicalPresentation, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ManifoldHomology {
    dim: usize,
    components: usize,
    groups: Vec<AbGroup>,
    label: String,
}

impl ManifoldHomology {
    /// The empty manifold: no components, every group zero.
    pub fn empty(dim: usize) -> Self {
        ManifoldHomology {
            dim,
            components: 0,
            groups: vec![AbGroup::zero(); dim + 1],
            label: "empty".into(),
        }
    }

    pub fn point() -> Self {
        ManifoldHomology {
            dim: 0,
            components: 1,
            groups: vec![AbGroup::free(1)],
            label: "disc(0)".into(),
        }
    }

    /// Builds from integral groups `H_0, ..., H_dim`; missing top degrees are zero.
    pub fn explicit(dim: usize, groups: Vec<AbGroup>) -> Result<Self> {
        if groups.len() > dim + 1 {
            return Err(Error::Parameter(format!(
                "{} groups given for a manifold of dimension {dim}",
                groups.len()
            )));
        }
        let mut groups = groups;
        groups.resize(dim + 1, AbGroup::zero());
        if !groups[0].is_free() {
            return Err(Error::Parameter("H_0 must be free".into()));
        }
        let components = groups[0].rank();
        if components == 0 && groups.iter().any(|g| !g.is_zero()) {
            return Err(Error::Parameter(
                "an empty manifold (H_0 = 0) cannot carry homology".into(),
            ));
        }
        let label = if components == 0 {
            "empty".to_string()
        } else {
            let body: Vec<String> = groups.iter().map(AbGroup::to_compact).collect();
            format!("explicit({dim}: {})", body.join(", "))
        };
        Ok(ManifoldHomology {
            dim,
            components,
            groups,
            label,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_empty(&self) -> bool {
        self.components == 0
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Integral groups `H_0 .. H_dim`.
    pub fn integral_groups(&self) -> &[AbGroup] {
        &self.groups
    }

    pub fn group(&self, k: usize, ring: Ring) -> AbGroup {
        match ring {
            Ring::Integers => self.integral(k),
            Ring::ModTwo => AbGroup::elementary_two(self.mod2_dim(k)),
        }
    }

    fn integral(&self, k: usize) -> AbGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    /// `dim H_k(X; Z/2) = rank H_k + #even(H_k) + #even(H_{k-1})`.
    pub fn mod2_dim(&self, k: usize) -> usize {
        let h = self.integral(k);
        let below = if k == 0 {
            0
        } else {
            self.integral(k - 1).even_torsion_count()
        };
        h.rank() + h.even_torsion_count() + below
    }

    /// Cohomology by universal coefficients: `H^k(X;Z) = Free(H_k) ⊕ Tors(H_{k-1})`.
    pub fn cohomology(&self, k: usize, ring: Ring) -> AbGroup {
        match ring {
            Ring::ModTwo => AbGroup::elementary_two(self.mod2_dim(k)),
            Ring::Integers => {
                let mut orders = vec![0; self.integral(k).rank()];
                if k > 0 {
                    orders.extend_from_slice(self.integral(k - 1).torsion());
                }
                AbGroup::from_orders(&orders).unwrap_or_default()
            }
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.rank() as i64 } else { -(g.rank() as i64) })
            .sum()
    }

    /// Equality of the homological data, ignoring labels; any two empty
    /// manifolds are equal.
    pub fn same_homology(&self, other: &ManifoldHomology) -> bool {
        if self.is_empty() || other.is_empty() {
            return self.is_empty() && other.is_empty();
        }
        self.dim == other.dim && self.groups == other.groups
    }
}

impl fmt::Display for ManifoldHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

pub fn sphere(k: i64) -> Result<ManifoldHomology> {
    let k = non_negative(k, "sphere dimension")?;
    let mut groups = vec![AbGroup::zero(); k + 1];
    if k == 0 {
        groups[0] = AbGroup::free(2);
    } else {
        groups[0] = AbGroup::free(1);
        groups[k] = AbGroup::free(1);
    }
    Ok(ManifoldHomology {
        dim: k,
        components: if k == 0 { 2 } else { 1 },
        groups,
        label: format!("sphere({k})"),
    })
}

pub fn disc(k: i64) -> Result<ManifoldHomology> {
    let k = non_negative(k, "disc dimension")?;
    let mut groups = vec![AbGroup::zero(); k + 1];
    groups[0] = AbGroup::free(1);
    Ok(ManifoldHomology {
        dim: k,
        components: 1,
        groups,
        label: format!("disc({k})"),
    })
}

/// `S^k` with the interiors of `holes` disjoint closed discs removed.
pub fn sphere_minus_discs(k: i64, holes: i64) -> Result<ManifoldHomology> {
    if k < 1 {
        return Err(Error::Parameter(format!(
            "sphere_minus_discs needs k >= 1, got {k}"
        )));
    }
    if holes < 1 {
        return Err(Error::Parameter(format!(
            "sphere_minus_discs needs at least one hole, got {holes}; use sphere({k})"
        )));
    }
    let (k, h) = (k as usize, holes as usize);
    let mut groups = vec![AbGroup::zero(); k + 1];
    let components = if k == 1 {
        groups[0] = AbGroup::free(h);
        h
    } else {
        groups[0] = AbGroup::free(1);
        groups[k - 1] = AbGroup::free(h - 1);
        1
    };
    Ok(ManifoldHomology {
        dim: k,
        components,
        groups,
        label: format!("sphere_minus_discs({k},{h})"),
    })
}

/// Closed orientable surface of genus `g`.
pub fn torus(g: i64) -> Result<ManifoldHomology> {
    let g = non_negative(g, "genus")?;
    Ok(ManifoldHomology {
        dim: 2,
        components: 1,
        groups: vec![AbGroup::free(1), AbGroup::free(2 * g), AbGroup::free(1)],
        label: format!("torus({g})"),
    })
}

pub fn disjoint_union(a: &ManifoldHomology, b: &ManifoldHomology) -> Result<ManifoldHomology> {
    if a.is_empty() {
        return Ok(b.clone());
    }
    if b.is_empty() {
        return Ok(a.clone());
    }
    if a.dim != b.dim {
        return Err(Error::Parameter(format!(
            "disjoint union of a {}-manifold and a {}-manifold",
            a.dim, b.dim
        )));
    }
    let groups = a
        .groups
        .iter()
        .zip(&b.groups)
        .map(|(x, y)| crate::abelian::direct_sum(x, y))
        .collect::<Result<_>>()?;
    Ok(ManifoldHomology {
        dim: a.dim,
        components: a.components + b.components,
        groups,
        label: format!("disjoint_union({},{})", a.label, b.label),
    })
}

/// `n` disjoint copies of `x`.
pub fn copies(n: i64, x: &ManifoldHomology) -> Result<ManifoldHomology> {
    let n = non_negative(n, "copy count")?;
    if n == 0 || x.is_empty() {
        return Ok(ManifoldHomology::empty(x.dim));
    }
    if n == 1 {
        return Ok(x.clone());
    }
    let groups = x
        .groups
        .iter()
        .map(|g| {
            let orders: Vec<u64> = std::iter::repeat_n(g.generator_orders(), n)
                .flatten()
                .collect();
            AbGroup::from_orders(&orders)
        })
        .collect::<Result<_>>()?;
    Ok(ManifoldHomology {
        dim: x.dim,
        components: x.components * n,
        groups,
        label: format!("copies({n},{})", x.label),
    })
}

/// One naive generator of `H_n(X × F)`: `x_p ⊗ g_q` with `p + q = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KunnethGenerator {
    pub p: usize,
    pub x_index: usize,
    pub f_index: usize,
    /// 0 for a free generator.
    pub order: u64,
}

/// Tensor-product generators of degree `n`, ordered by `p`, then the index in
/// `H_p(X)`, then the index in `H_{n-p}(F)`. Fails when a Tor term of total
/// degree `n` or `n-1` is nonzero.
pub fn kunneth_generators(
    x: &ManifoldHomology,
    f: &ManifoldHomology,
    n: usize,
) -> Result<Vec<KunnethGenerator>> {
    check_tor(x, f, n)?;
    let mut out = Vec::new();
    for p in 0..=n.min(x.dim) {
        let q = n - p;
        if q > f.dim {
            continue;
        }
        let xo = x.integral(p).generator_orders();
        let fo = f.integral(q).generator_orders();
        for (xi, &a) in xo.iter().enumerate() {
            for (fi, &b) in fo.iter().enumerate() {
                let order = gcd(a as i64, b as i64) as u64;
                if order != 1 {
                    out.push(KunnethGenerator {
                        p,
                        x_index: xi,
                        f_index: fi,
                        order,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn check_tor(x: &ManifoldHomology, f: &ManifoldHomology, n: usize) -> Result<()> {
    for total in [n.checked_sub(1), Some(n)].into_iter().flatten() {
        for p in 0..=total.min(x.dim) {
            let q = total - p;
            for &a in x.integral(p).torsion() {
                for &b in f.integral(q).torsion() {
                    if gcd(a as i64, b as i64) > 1 {
                        return Err(Error::UnsupportedTor(format!(
                            "Z/{a} in H_{p}({}) and Z/{b} in H_{q}({})",
                            x.label, f.label
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Canonical form of `H_n(X × F; Z)` with the change of basis from the naive
/// tensor generators of [`kunneth_generators`].
pub fn kunneth_presentation(
    x: &ManifoldHomology,
    f: &ManifoldHomology,
    n: usize,
) -> Result<(Vec<KunnethGenerator>, CanonicalPresentation)> {
    let gens = kunneth_generators(x, f, n)?;
    let orders: Vec<u64> = gens.iter().map(|g| g.order).collect();
    let canon = crate::abelian::canonicalize_orders(&orders)?;
    Ok((gens, canon))
}

/// Homology of `X × F` over Z by the Künneth formula.
pub fn kunneth_with(x: &ManifoldHomology, f: &ManifoldHomology) -> Result<ManifoldHomology> {
    let dim = x.dim + f.dim;
    if x.is_empty() || f.is_empty() {
        return Ok(ManifoldHomology::empty(dim));
    }
    let groups = (0..=dim)
        .map(|n| kunneth_presentation(x, f, n).map(|(_, c)| c.group))
        .collect::<Result<_>>()?;
    let label = if f.label == "disc(0)" {
        x.label.clone()
    } else if x.label == "disc(0)" {
        f.label.clone()
    } else {
        format!("product({},{})", x.label, f.label)
    };
    Ok(ManifoldHomology {
        dim,
        components: x.components * f.components,
        groups,
        label,
    })
}

fn non_negative(v: i64, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Parameter(format!("{what} must be non-negative, got {v}")))
}

/// Parses a fiber expression such as `copies(2,sphere(3))` or
/// `explicit(3: Z, 0, Z/2, Z)`. Errors carry the column; line is 1.
pub fn parse_manifold(s: &str) -> Result<ManifoldHomology> {
    let mut p = ExprParser {
        src: s,
        pos: 0,
    };
    let m = p.expr()?;
    p.skip_ws();
    if p.pos != s.len() {
        return Err(p.error("trailing characters"));
    }
    Ok(m)
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::parse(1, self.src[..self.pos].chars().count() + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a manifold name"));
        }
        let id = &self.rest()[..len];
        self.pos += len;
        Ok(id)
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let len = self
            .rest()
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
            .map_or(self.rest().len(), |(i, _)| i);
        let text = &self.rest()[..len];
        let v = text.parse().map_err(|_| self.error("expected an integer"))?;
        self.pos += len;
        Ok(v)
    }

    fn expr(&mut self) -> Result<ManifoldHomology> {
        let start = self.pos;
        let name = self.ident()?;
        if name == "empty" {
            return Ok(ManifoldHomology::empty(0));
        }
        if name == "point" {
            return Ok(ManifoldHomology::point());
        }
        self.eat('(')?;
        let built = match name {
            "sphere" => {
                let k = self.int()?;
                sphere(k)
            }
            "disc" => {
                let k = self.int()?;
                disc(k)
            }
            "torus" => {
                let g = self.int()?;
                torus(g)
            }
            "sphere_minus_discs" => {
                let k = self.int()?;
                self.eat(',')?;
                let h = self.int()?;
                sphere_minus_discs(k, h)
            }
            "copies" => {
                let n = self.int()?;
                self.eat(',')?;
                let x = self.expr()?;
                copies(n, &x)
            }
            "product" => {
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                kunneth_with(&a, &b)
            }
            "disjoint_union" => {
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                disjoint_union(&a, &b)
            }
            "explicit" => self.explicit_body(),
            _ => {
                self.pos = start;
                return Err(self.error(&format!("unknown manifold `{name}`")));
            }
        };
        let m = built.map_err(|e| match e {
            e @ Error::Parse { .. } => e,
            other => {
                let mut at = ExprParser {
                    src: self.src,
                    pos: start,
                };
                at.skip_ws();
                at.error(&other.to_string())
            }
        })?;
        self.eat(')')?;
        Ok(m)
    }

    fn explicit_body(&mut self) -> Result<ManifoldHomology> {
        let dim = self.int()?;
        let dim = usize::try_from(dim).map_err(|_| self.error("negative dimension"))?;
        self.eat(':')?;
        let close = self
            .rest()
            .find(')')
            .ok_or_else(|| self.error("unterminated explicit(...)"))?;
        let body = &self.rest()[..close];
        let groups = body
            .split(',')
            .map(|g| g.parse::<AbGroup>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| self.error(&e.to_string()))?;
        self.pos += close;
        ManifoldHomology::explicit(dim, groups)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(r: usize) -> AbGroup {
        AbGroup::free(r)
    }

    #[test]
    fn spheres() {
        let s2 = sphere(2).unwrap();
        assert_eq!(s2.integral_groups(), &[z(1), z(0), z(1)]);
        assert_eq!(sphere(0).unwrap().integral_groups(), &[z(2)]);
        let s3 = sphere(3).unwrap();
        let mod2: Vec<usize> = (0..=3).map(|k| s3.mod2_dim(k)).collect();
        assert_eq!(mod2, vec![1, 0, 0, 1]);
        assert!(sphere(-1).is_err());
    }

    #[test]
    fn discs() {
        assert_eq!(disc(3).unwrap().integral_groups(), &[z(1), z(0), z(0), z(0)]);
        assert_eq!(disc(0).unwrap().integral_groups(), &[z(1)]);
        let d5 = disc(5).unwrap();
        assert_eq!(d5.group(0, Ring::ModTwo), AbGroup::elementary_two(1));
        assert!((1..=5).all(|k| d5.group(k, Ring::ModTwo).is_zero()));
    }

    /// χ(S^k minus h open discs) = χ(S^k) - h(1 - χ(S^{k-1})), and the
    /// complement is connected for k >= 2 with homology in degrees 0 and k-1.
    fn punctured_sphere_oracle(k: i64, h: i64) -> (i64, usize) {
        let chi_sphere = |d: i64| if d % 2 == 0 { 2 } else { 0 };
        let chi = chi_sphere(k) - h * (1 - chi_sphere(k - 1));
        let comps = if k == 1 { h as usize } else { 1 };
        (chi, comps)
    }

    #[test]
    fn punctured_spheres() {
        let x = sphere_minus_discs(4, 3).unwrap();
        assert_eq!(x.integral(0), z(1));
        assert_eq!(x.integral(3), z(2));
        assert_eq!(
            (x.euler_characteristic(), x.components()),
            punctured_sphere_oracle(4, 3)
        );
        assert!(sphere_minus_discs(2, 1).unwrap().same_homology(&disc(2).unwrap()));
        let annulus = sphere_minus_discs(3, 2).unwrap();
        assert!(annulus.same_homology(&kunneth_with(&sphere(2).unwrap(), &disc(1).unwrap()).unwrap()));
        assert_eq!(sphere_minus_discs(1, 3).unwrap().components(), 3);
        assert!(sphere_minus_discs(3, 0).is_err());
        for k in 1..6 {
            for h in 1..5 {
                let x = sphere_minus_discs(k, h).unwrap();
                assert_eq!(
                    (x.euler_characteristic(), x.components()),
                    punctured_sphere_oracle(k, h)
                );
            }
        }
    }

    #[test]
    fn torus_product() {
        let t = kunneth_with(&sphere(1).unwrap(), &sphere(1).unwrap()).unwrap();
        assert_eq!(t.integral_groups(), &[z(1), z(2), z(1)]);
        assert!(t.same_homology(&torus(1).unwrap()));
    }

    /// Cellular model with zero differentials: the cell count in each degree
    /// of a product is the convolution of the factors' cell counts.
    #[test]
    fn circle_times_punctured_sphere_matches_cells() {
        let x = sphere_minus_discs(3, 3).unwrap();
        let prod = kunneth_with(&sphere(1).unwrap(), &x).unwrap();
        let circle_cells = [1usize, 1];
        let x_cells = [1usize, 0, 2, 0];
        let mut expect = vec![0usize; 5];
        for (i, a) in circle_cells.iter().enumerate() {
            for (j, b) in x_cells.iter().enumerate() {
                expect[i + j] += a * b;
            }
        }
        let got: Vec<usize> = prod.integral_groups().iter().map(AbGroup::rank).collect();
        assert_eq!(got, expect);
        for n in 1..=4 {
            let shifted = x.integral(n - 1).rank() + x.integral(n).rank();
            assert_eq!(prod.integral(n).rank(), shifted);
        }
    }

    #[test]
    fn contractible_factor_changes_nothing() {
        let f = torus(2).unwrap();
        let p = kunneth_with(&disc(3).unwrap(), &f).unwrap();
        assert_eq!(&p.integral_groups()[..3], f.integral_groups());
        assert!(p.integral_groups()[3..].iter().all(AbGroup::is_zero));
    }

    #[test]
    fn torsion_products() {
        let rp = ManifoldHomology::explicit(3, vec![z(1), AbGroup::cyclic(2), z(0), z(1)]).unwrap();
        let p = kunneth_with(&rp, &sphere(1).unwrap()).unwrap();
        assert_eq!(p.integral(1), AbGroup::new(1, vec![2]).unwrap());
        assert_eq!(p.integral(2), AbGroup::cyclic(2));
        assert!(matches!(kunneth_with(&rp, &rp), Err(Error::UnsupportedTor(_))));
        let l3 = ManifoldHomology::explicit(3, vec![z(1), AbGroup::cyclic(3), z(0), z(1)]).unwrap();
        assert!(kunneth_with(&rp, &l3).is_ok());
    }

    #[test]
    fn mod_two_from_universal_coefficients() {
        let rp3 = ManifoldHomology::explicit(3, vec![z(1), AbGroup::cyclic(2), z(0), z(1)]).unwrap();
        let dims: Vec<usize> = (0..=3).map(|k| rp3.mod2_dim(k)).collect();
        assert_eq!(dims, vec![1, 1, 1, 1]);
        assert_eq!(rp3.cohomology(2, Ring::Integers), AbGroup::cyclic(2));
        assert_eq!(rp3.cohomology(1, Ring::Integers), AbGroup::zero());
    }

    #[test]
    fn empty_is_absorbing() {
        let e = ManifoldHomology::empty(2);
        assert!(kunneth_with(&e, &sphere(1).unwrap()).unwrap().is_empty());
        let s = sphere(2).unwrap();
        assert_eq!(disjoint_union(&e, &s).unwrap(), s);
        assert!(copies(0, &s).unwrap().is_empty());
        assert!(e.same_homology(&ManifoldHomology::empty(5)));
    }

    #[test]
    fn parse_round_trips_and_reports_columns() {
        for text in [
            "sphere(3)",
            "copies(3,sphere(2))",
            "product(sphere(1),sphere_minus_discs(3,3))",
            "disjoint_union(sphere(2),disc(2))",
            "explicit(3: Z, Z/2, 0, Z)",
            "torus(2)",
            "empty",
        ] {
            let m = parse_manifold(text).unwrap();
            assert_eq!(m.label(), text);
            assert_eq!(parse_manifold(m.label()).unwrap(), m);
        }
        assert_eq!(parse_manifold(" sphere( 2 ) ").unwrap().label(), "sphere(2)");
        match parse_manifold("copies(2,sphre(2))") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_manifold("sphere(2").is_err());
        assert!(parse_manifold("sphere(2) x").is_err());
        assert!(parse_manifold("product(sphere(2),sphere(1)").is_err());
    }

    fn catalog_manifold() -> impl Strategy<Value = ManifoldHomology> {
        prop_oneof![
            (0i64..5).prop_map(|k| sphere(k).unwrap()),
            (0i64..5).prop_map(|k| disc(k).unwrap()),
            (1i64..5, 1i64..4).prop_map(|(k, h)| sphere_minus_discs(k, h).unwrap()),
            (0i64..3).prop_map(|g| torus(g).unwrap()),
            (1i64..3, 1i64..4).prop_map(|(n, k)| copies(n, &sphere(k).unwrap()).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn kunneth_laws(x in catalog_manifold(), f in catalog_manifold()) {
            let xf = kunneth_with(&x, &f).unwrap();
            let fx = kunneth_with(&f, &x).unwrap();
            prop_assert!(xf.same_homology(&fx));
            prop_assert_eq!(
                xf.euler_characteristic(),
                x.euler_characteristic() * f.euler_characteristic()
            );
            prop_assert_eq!(xf.components(), x.components() * f.components());
            for k in 0..=xf.dim() {
                prop_assert!(xf.mod2_dim(k) >= xf.integral(k).rank());
            }
        }

        #[test]
        fn mod_two_dims_match_field_kunneth(x in catalog_manifold(), f in catalog_manifold()) {
            let xf = kunneth_with(&x, &f).unwrap();
            for n in 0..=xf.dim() {
                let field: usize = (0..=n)
                    .map(|p| x.mod2_dim(p) * f.mod2_dim(n - p))
                    .sum();
                prop_assert_eq!(xf.mod2_dim(n), field);
            }
        }
    }
}
