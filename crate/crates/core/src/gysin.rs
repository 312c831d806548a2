//! Circle bundles over closed 4-manifolds built from `S^2`-bundles over
//! `S^2`, and over surfaces: homology of total spaces from the Gysin
//! sequence, the simply-connected 5-manifold dichotomy, and the `H_1`
//! formulas for the circle-bundle families over spun maps.
//!
//! A class `alpha` in `H^2(M)` is given by coordinates in the basis dual to
//! the form, so its evaluation on the `i`-th basis cycle is `(form * alpha)_i`.

use std::fmt;

use serde::Serialize;

use crate::abelian::{
    gcd_all, is_primitive, lcm, smith_decomposition, smith_normal_form, AbGroup, HomMatrix, IntMatrix, Ring,
};
use crate::error::{Error, Result};
use crate::text;

/// `H_1` of the total space of an oriented circle bundle with Euler number
/// `k` over the closed oriented surface of genus `g`: `Z^{2g} + Z/|k|`.
pub fn circle_bundle_over_surface_h1(genus: usize, euler_number: i64) -> AbGroup {
    let mut orders = vec![0u64; 2 * genus];
    orders.push(euler_number.unsigned_abs());
    AbGroup::from_orders(&orders).expect("orders are valid")
}

/// Oriented `S^2`-bundle over `S^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum S2Bundle {
    /// `S^2 x S^2`.
    Trivial,
    /// The non-trivial bundle.
    Twisted,
}

impl S2Bundle {
    pub fn as_str(self) -> &'static str {
        match self {
            S2Bundle::Trivial => "trivial",
            S2Bundle::Twisted => "twisted",
        }
    }

    /// Intersection form and `w2` evaluations on (fiber, base).
    fn block(self) -> ([[i64; 2]; 2], [u8; 2]) {
        match self {
            S2Bundle::Trivial => ([[0, 1], [1, 0]], [0, 0]),
            // A section of odd self-intersection, so w2 is odd on it.
            S2Bundle::Twisted => ([[0, 1], [1, 1]], [0, 1]),
        }
    }
}

impl std::str::FromStr for S2Bundle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "trivial" => Ok(S2Bundle::Trivial),
            "twisted" => Ok(S2Bundle::Twisted),
            other => Err(Error::Parameter(format!(
                "unknown factor `{other}` (expected trivial or twisted)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "class", content = "factor", rename_all = "lowercase")]
pub enum BasisClass {
    Fiber(usize),
    Base(usize),
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisClass::Fiber(i) => write!(f, "fiber{i}"),
            BasisClass::Base(i) => write!(f, "base{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourManifold {
    pub b2: usize,
    pub form: IntMatrix,
    /// Evaluations of `w2` on the basis cycles, each 0 or 1.
    pub w2: Vec<u8>,
    pub basis_labels: Vec<BasisClass>,
}

impl FourManifold {
    pub fn new(form: IntMatrix, w2: Vec<u8>, basis_labels: Vec<BasisClass>) -> Result<Self> {
        let b2 = form.rows();
        if form.cols() != b2 || form.transpose() != form {
            return Err(Error::Dimension(format!(
                "an intersection form must be square and symmetric, got {}x{}",
                form.rows(),
                form.cols()
            )));
        }
        if w2.len() != b2 || basis_labels.len() != b2 {
            return Err(Error::Dimension(format!(
                "form has rank {b2} but w2 has {} entries and {} labels",
                w2.len(),
                basis_labels.len()
            )));
        }
        if w2.iter().any(|&x| x > 1) {
            return Err(Error::Parameter("w2 entries are 0 or 1".into()));
        }
        let snf = smith_normal_form(&form)?;
        if snf.rank != b2 || snf.invariant_factors.iter().any(|&d| d != 1) {
            return Err(Error::Parameter("the intersection form is not unimodular".into()));
        }
        Ok(FourManifold {
            b2,
            form,
            w2,
            basis_labels,
        })
    }

    /// Connected sum of `S^2`-bundles over `S^2`, basis ordered
    /// `fiber0, base0, fiber1, base1, ...`.
    pub fn connected_sum(factors: &[S2Bundle]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Parameter("need at least one S^2-bundle factor".into()));
        }
        let mut form = IntMatrix::zeros(0, 0);
        let mut w2 = Vec::new();
        let mut labels = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            let (block, w) = f.block();
            form = form.block_diag(&IntMatrix::from_rows(&[block[0].to_vec(), block[1].to_vec()], 2)?);
            w2.extend(w);
            labels.extend([BasisClass::Fiber(i), BasisClass::Base(i)]);
        }
        FourManifold::new(form, w2, labels)
    }

    pub fn w2_vanishes(&self) -> bool {
        self.w2.iter().all(|&x| x == 0)
    }

    fn check_alpha(&self, alpha: &[i64]) -> Result<()> {
        if alpha.len() != self.b2 {
            return Err(Error::Dimension(format!(
                "alpha has {} entries, H^2 has rank {}",
                alpha.len(),
                self.b2
            )));
        }
        Ok(())
    }

    /// Values of `alpha` on the basis cycles.
    pub fn evaluations(&self, alpha: &[i64]) -> Result<Vec<i64>> {
        self.check_alpha(alpha)?;
        self.form.mul_vec(alpha)
    }

    /// Coordinates of the class taking the given values on the basis cycles.
    pub fn alpha_from_evaluations(&self, values: &[i64]) -> Result<Vec<i64>> {
        self.check_alpha(values)?;
        // U Q V = I, so Q^{-1} = V U.
        let s = smith_decomposition(&self.form)?;
        s.v.mul(&s.u)?.mul_vec(values)
    }
}

/// Reads a `[fourmanifold]` block with `factors = trivial, twisted, ...` and
/// an optional `alpha = 1, 0, ...`.
pub fn parse_four_manifold(src: &str) -> Result<(FourManifold, Option<Vec<i64>>)> {
    let sections = text::parse_sections(src)?;
    let [section] = sections.as_slice() else {
        return Err(Error::parse(1, 1, "expected exactly one [fourmanifold] section"));
    };
    if section.name != "fourmanifold" || section.arg.is_some() {
        return Err(Error::parse(section.line, 1, format!("unexpected section [{}]", section.header())));
    }
    for e in &section.entries {
        if e.key != "factors" && e.key != "alpha" {
            return Err(Error::parse(e.line, 1, format!("unknown key `{}`", e.key)));
        }
    }
    let entry = section.require("factors")?;
    let factors: Vec<S2Bundle> = entry
        .value
        .split(',')
        .map(|f| f.parse().map_err(|e: Error| entry.error(e.to_string())))
        .collect::<Result<_>>()?;
    let m = FourManifold::connected_sum(&factors).map_err(|e| entry.error(e.to_string()))?;
    let alpha = match section.get("alpha") {
        Some(e) => {
            let v = parse_int_list(&e.value).map_err(|err| e.relocate(err))?;
            m.check_alpha(&v).map_err(|err| e.error(err.to_string()))?;
            Some(v)
        }
        None => None,
    };
    Ok((m, alpha))
}

/// Parses `1, -2, 0` into integers.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in s.split(',') {
        let t = part.trim();
        let lead = part.len() - part.trim_start().len();
        out.push(
            t.parse()
                .map_err(|_| Error::parse(1, col + lead, format!("expected an integer, got `{t}`")))?,
        );
        col += part.chars().count() + 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GysinGroups {
    /// `H^0 .. H^5` of the total space.
    pub cohomology: Vec<AbGroup>,
    /// `H_0 .. H_5` of the total space.
    pub homology: Vec<AbGroup>,
}

/// Integral (co)homology of the circle bundle with Euler class `alpha`.
///
/// With `H^odd(M) = 0` the Gysin sequence splits into
/// `0 -> H^3 -> H^2(M) -> H^4(M) = Z -> H^4 -> 0`, where the middle map is
/// the cup product with `alpha`, together with `H^1 = ker(Z -> H^2(M))`,
/// `H^2 = coker(Z -> H^2(M))` for `1 -> alpha`, and `H^5 = Z`. Homology
/// follows by Poincaré duality.
pub fn gysin_h_star(m: &FourManifold, alpha: &[i64]) -> Result<GysinGroups> {
    let ev = m.evaluations(alpha)?;
    let b2 = m.b2;
    let cup = HomMatrix::new(
        AbGroup::free(b2),
        AbGroup::free(1),
        IntMatrix::from_rows(std::slice::from_ref(&ev), b2)?,
        Ring::Integers,
    )?;
    let cup_rank = usize::from(ev.iter().any(|&x| x != 0));
    let h3 = AbGroup::free(b2 - cup_rank);
    let h4 = cup.cokernel()?;
    let unit = HomMatrix::new(
        AbGroup::free(1),
        AbGroup::free(b2),
        IntMatrix::from_columns(&[alpha.to_vec()], b2)?,
        Ring::Integers,
    )?;
    let h2 = unit.cokernel()?;
    let h1 = AbGroup::free(1 - usize::from(alpha.iter().any(|&x| x != 0)));
    let cohomology = vec![AbGroup::free(1), h1, h2, h3, h4, AbGroup::free(1)];
    let homology = cohomology.iter().rev().cloned().collect();
    Ok(GysinGroups { cohomology, homology })
}

/// The total space is simply connected exactly when cup product with
/// `alpha` onto `H^4(M) = Z` is onto.
pub fn is_simply_connected_total_space(m: &FourManifold, alpha: &[i64]) -> Result<bool> {
    Ok(gcd_all(&m.evaluations(alpha)?) == 1)
}

/// Evaluations of `alpha` vanish on every fiber cycle.
pub fn theorem5_alpha_constraint(m: &FourManifold, alpha: &[i64]) -> Result<bool> {
    let ev = m.evaluations(alpha)?;
    Ok(m
        .basis_labels
        .iter()
        .zip(&ev)
        .all(|(label, &v)| !matches!(label, BasisClass::Fiber(_)) || v == 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiveManifoldKind {
    /// `#count S^2 x S^3`, with `count = 0` meaning `S^5`.
    ConnectedSumS2xS3 { count: usize },
    /// `#count_s2xs3 S^2 x S^3 # S^3 x~ S^2`.
    ConnectedSumWithTwisted { count_s2xs3: usize },
}

impl fmt::Display for FiveManifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sum = |n: usize| match n {
            0 => None,
            1 => Some("S^2×S^3".to_string()),
            n => Some(format!("#{n} S^2×S^3")),
        };
        match *self {
            FiveManifoldKind::ConnectedSumS2xS3 { count } => {
                f.write_str(&sum(count).unwrap_or_else(|| "S^5".into()))
            }
            FiveManifoldKind::ConnectedSumWithTwisted { count_s2xs3 } => match sum(count_s2xs3) {
                Some(s) => write!(f, "{s} # S^3×~S^2"),
                None => f.write_str("S^3×~S^2"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiveManifoldClass {
    pub kind: FiveManifoldKind,
    pub h1: AbGroup,
    pub h2: AbGroup,
}

/// Diffeomorphism type of a simply-connected total space: a sum of copies
/// of `S^2 x S^3`, with one copy replaced by the non-trivial `S^3`-bundle
/// over `S^2` exactly when `w2(M) != 0` and `alpha != w2` mod 2.
pub fn classify_five_manifold(m: &FourManifold, alpha: &[i64]) -> Result<FiveManifoldClass> {
    if !is_primitive(alpha, m.b2)? {
        return Err(Error::NotApplicable(
            "classification needs a simply-connected total space, so alpha must be primitive".into(),
        ));
    }
    let g = gysin_h_star(m, alpha)?;
    let ev = m.evaluations(alpha)?;
    let agrees = ev
        .iter()
        .zip(&m.w2)
        .all(|(&v, &w)| v.rem_euclid(2) == i64::from(w));
    let kind = if !m.w2_vanishes() && !agrees {
        FiveManifoldKind::ConnectedSumWithTwisted {
            count_s2xs3: m.b2 - 2,
        }
    } else {
        FiveManifoldKind::ConnectedSumS2xS3 { count: m.b2 - 1 }
    };
    Ok(FiveManifoldClass {
        kind,
        h1: g.homology[1].clone(),
        h2: g.homology[2].clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub parameters: Vec<i64>,
    pub total_space: String,
    pub axis_preimage: String,
    /// Named groups in presentation order.
    pub groups: Vec<(String, AbGroup)>,
    /// `None` when the family data does not decide S-triviality.
    pub s_trivial: Option<bool>,
    pub notes: Vec<String>,
}

impl FamilyReport {
    pub fn group(&self, name: &str) -> Option<&AbGroup> {
        self.groups.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn to_text(&self) -> String {
        let params: Vec<String> = self.parameters.iter().map(ToString::to_string).collect();
        let mut out = format!("family: {} ({})\n", self.family, params.join(", "));
        out.push_str(&format!("total space: {}\n", self.total_space));
        out.push_str(&format!("axis preimage: {}\n", self.axis_preimage));
        for (name, g) in &self.groups {
            out.push_str(&format!("{name} = {g}\n"));
        }
        let s = match self.s_trivial {
            Some(true) => "true",
            Some(false) => "false",
            None => "undetermined",
        };
        out.push_str(&format!("S-trivial: {s}\n"));
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// Circle bundles with Euler number `k` over the spun two-torus family:
/// the total space is (bundle over `T^2`) x `S^{m-2}`.
pub fn family_h1_theorem6(k: i64, m: usize) -> Result<FamilyReport> {
    if m < 5 {
        return Err(Error::Parameter(format!("this family needs m >= 5, got m = {m}")));
    }
    let piece = circle_bundle_over_surface_h1(1, k);
    Ok(FamilyReport {
        family: "thm6".into(),
        parameters: vec![k, m as i64],
        total_space: format!("(circle bundle over T^2 with Euler number {k}) × S^{}", m - 2),
        axis_preimage: format!("S^1 × S^{} × S^1", m - 2),
        groups: vec![
            ("H_1(circle bundle over T^2)".into(), piece.clone()),
            ("H_1(M_k)".into(), piece),
        ],
        s_trivial: Some(k == 0),
        notes: vec![format!("source dimension {}", m + 1)],
    })
}

/// Circle bundles with Euler class `k` times a generator over the spun
/// disc family.
pub fn family_h1_theorem7(k: i64) -> FamilyReport {
    let torsion = k.unsigned_abs();
    FamilyReport {
        family: "thm7".into(),
        parameters: vec![k],
        total_space: format!("circle bundle with Euler class {k}ν"),
        axis_preimage: "(axis preimage of f) × S^1".into(),
        groups: vec![
            (
                "H_1(restriction over the complement of the core)".into(),
                AbGroup::from_orders(&[0, 0, torsion]).expect("valid orders"),
            ),
            ("H_1(M_k)".into(), AbGroup::from_orders(&[0, torsion]).expect("valid orders")),
        ],
        s_trivial: Some(k == 0),
        notes: Vec::new(),
    }
}

/// Circle bundles with Euler class `k1 ν1 + k2 ν2` over the connected sum
/// of two spun disc maps.
pub fn family_h1_theorem8(k1: i64, k2: i64) -> Result<FamilyReport> {
    let (a, b) = (k1.unsigned_abs(), k2.unsigned_abs());
    let global = if k1 != 0 && k2 != 0 {
        let k0 = lcm(k1.abs(), k2.abs())?;
        AbGroup::from_orders(&[0, 0, k0 as u64])?
    } else {
        AbGroup::free(2)
    };
    let s_trivial = match (k1, k2) {
        (0, 0) => Some(true),
        (0, _) | (_, 0) => None,
        _ => Some(false),
    };
    Ok(FamilyReport {
        family: "thm8".into(),
        parameters: vec![k1, k2],
        total_space: format!("circle bundle with Euler class {k1}ν1 + {k2}ν2"),
        axis_preimage: "(axis preimage of f) × S^1".into(),
        groups: vec![
            ("H_1(restriction over the first piece)".into(), AbGroup::from_orders(&[0, 0, a])?),
            ("H_1(restriction over the second piece)".into(), AbGroup::from_orders(&[0, 0, b])?),
            ("H_1(M_(k1,k2))".into(), global),
        ],
        s_trivial,
        notes: Vec::new(),
    })
}

/// `Some(true)` when the two maps of the pair family are known to be
/// inequivalent, `None` when the data does not decide.
pub fn theorem8_inequivalent(a: (i64, i64), b: (i64, i64)) -> Option<bool> {
    (a.0.abs() != b.0.abs() || a.1.abs() != b.1.abs()).then_some(true)
}

/// Report on the circle bundle with Euler class `alpha` over a connected sum
/// of `S^2`-bundles over `S^2`.
pub fn family_theorem5(factors: &[S2Bundle], alpha: &[i64]) -> Result<FamilyReport> {
    let m = FourManifold::connected_sum(factors)?;
    let g = gysin_h_star(&m, alpha)?;
    let names: Vec<&str> = factors.iter().map(|f| f.as_str()).collect();
    let mut notes = Vec::new();
    notes.push(format!(
        "alpha vanishes on fiber cycles: {}",
        theorem5_alpha_constraint(&m, alpha)?
    ));
    let total_space = if is_simply_connected_total_space(&m, alpha)? {
        classify_five_manifold(&m, alpha)?.kind.to_string()
    } else {
        notes.push("alpha is not primitive, so the total space is not simply connected".into());
        "not simply connected".into()
    };
    let mut groups = Vec::new();
    for (k, h) in g.homology.iter().enumerate().skip(1).take(4) {
        groups.push((format!("H_{k}(M(alpha))"), h.clone()));
    }
    Ok(FamilyReport {
        family: "thm5".into(),
        parameters: alpha.to_vec(),
        total_space,
        axis_preimage: format!("base: connected sum of {}", names.join(", ")),
        groups,
        s_trivial: None,
        notes,
    })
}
