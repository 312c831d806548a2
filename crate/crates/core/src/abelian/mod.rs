//! Finitely generated abelian groups over Z and Z/2 with exact, overflow-checked
//! arithmetic.
//!
//! Every [`AbGroup`] is kept in invariant-factor form, so two groups are
//! isomorphic exactly when they compare equal.
//!
//! ```
//! use roundfold::abelian::{AbGroup, HomMatrix, IntMatrix, Ring};
//!
//! let target: AbGroup = "Z+Z/4".parse().unwrap();
//! let h = HomMatrix::new(
//!     AbGroup::free(1),
//!     target,
//!     IntMatrix::from_rows(&[vec![0], vec![2]], 1).unwrap(),
//!     Ring::Integers,
//! )
//! .unwrap();
//! assert_eq!(h.cokernel().unwrap().to_string(), "Z ⊕ Z/2");
//! ```

mod matrix;
mod snf;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use matrix::{gcd, gcd_all, lcm, IntMatrix};
pub use snf::{rank_mod2, smith_decomposition, smith_normal_form, SmithForm, SmithNormalForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    ModTwo,
}

impl Ring {
    pub const ALL: [Ring; 2] = [Ring::Integers, Ring::ModTwo];

    pub fn short_name(self) -> &'static str {
        match self {
            Ring::Integers => "z",
            Ring::ModTwo => "z2",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Integers => "Z",
            Ring::ModTwo => "Z/2",
        })
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "integers" => Ok(Ring::Integers),
            "z2" | "z/2" | "modtwo" => Ok(Ring::ModTwo),
            other => Err(Error::Parameter(format!("unknown ring `{other}`"))),
        }
    }
}

/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` with `2 <= d_1 | d_2 | ... | d_t`.
///
/// Generators are ordered free part first, then torsion in the order of
/// `torsion`. Homomorphism matrices are written against this basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbGroup {
    rank: usize,
    torsion: Vec<u64>,
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/d`, with `d = 0` read as `Z` and `d = 1` as the zero group.
    pub fn cyclic(d: u64) -> Self {
        match d {
            0 => AbGroup::free(1),
            1 => AbGroup::zero(),
            d => AbGroup {
                rank: 0,
                torsion: vec![d],
            },
        }
    }

    /// `(Z/2)^dim`, the shape of every Z/2 homology group.
    pub fn elementary_two(dim: usize) -> Self {
        AbGroup {
            rank: 0,
            torsion: vec![2; dim],
        }
    }

    /// Validating constructor for data that is already in canonical form.
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!(
                "torsion coefficient {d} is below 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!(
                "torsion coefficients {} and {} do not form a divisibility chain",
                w[0], w[1]
            )));
        }
        Ok(AbGroup { rank, torsion })
    }

    /// Canonical form of `⊕ Z/o_i`, where `o_i = 0` stands for `Z`.
    pub fn from_orders(orders: &[u64]) -> Result<Self> {
        Ok(canonicalize_orders(orders)?.group)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of each generator, `0` for free generators.
    pub fn generator_orders(&self) -> Vec<u64> {
        let mut v = vec![0; self.rank];
        v.extend_from_slice(&self.torsion);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_elementary_two(&self) -> bool {
        self.rank == 0 && self.torsion.iter().all(|&d| d == 2)
    }

    /// Number of torsion summands of even order; each contributes one Z/2
    /// to both `G ⊗ Z/2` and `Tor(G, Z/2)`.
    pub fn even_torsion_count(&self) -> usize {
        self.torsion.iter().filter(|&&d| d % 2 == 0).count()
    }

    /// Free part only.
    pub fn free_part(&self) -> AbGroup {
        AbGroup::free(self.rank)
    }

    /// Torsion subgroup only.
    pub fn torsion_part(&self) -> AbGroup {
        AbGroup {
            rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Cardinality, or `None` when the group is infinite or the count overflows.
    pub fn order(&self) -> Option<u64> {
        if self.rank > 0 {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// ASCII form accepted by [`FromStr`], e.g. `Z^2+Z/2`.
    pub fn to_compact(&self) -> String {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for AbGroup {
    /// Human form with every summand spelled out: `Z ⊕ Z ⊕ Z/12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = vec!["Z".to_string(); self.rank];
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" ⊕ "))
    }
}

impl FromStr for AbGroup {
    type Err = Error;

    /// Accepts summands `0`, `Z`, `Z^r`, `Z/d`, `(Z/d)^r` joined by `+` or `⊕`.
    fn from_str(s: &str) -> Result<Self> {
        let mut orders = Vec::new();
        for raw in s.split(['+', '⊕']) {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if term.is_empty() {
                return Err(Error::Parameter(format!("empty summand in group `{s}`")));
            }
            if term == "0" {
                continue;
            }
            let (base, power) = split_power(&term)?;
            let order = if base == "Z" {
                0
            } else if let Some(d) = base.strip_prefix("Z/") {
                d.parse::<u64>()
                    .map_err(|_| Error::Parameter(format!("bad cyclic order in `{term}`")))?
            } else {
                return Err(Error::Parameter(format!("unrecognised summand `{term}`")));
            };
            if order == 1 {
                continue;
            }
            orders.extend(std::iter::repeat_n(order, power));
        }
        AbGroup::from_orders(&orders)
    }
}

fn split_power(term: &str) -> Result<(&str, usize)> {
    let Some((base, exp)) = term.rsplit_once('^') else {
        return Ok((term, 1));
    };
    let base = base
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .unwrap_or(base);
    let power = exp
        .parse()
        .map_err(|_| Error::Parameter(format!("bad exponent in `{term}`")))?;
    Ok((base, power))
}

pub fn direct_sum(a: &AbGroup, b: &AbGroup) -> Result<AbGroup> {
    let mut orders = a.generator_orders();
    orders.extend(b.generator_orders());
    AbGroup::from_orders(&orders)
}

/// A group given by generators of prescribed orders, together with the
/// change of basis to its canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPresentation {
    pub group: AbGroup,
    /// Canonical coordinates of each naive generator (canonical gens × naive gens).
    pub to_canonical: IntMatrix,
    /// Naive coordinates of each canonical generator (naive gens × canonical gens).
    pub from_canonical: IntMatrix,
}

pub fn canonicalize_orders(orders: &[u64]) -> Result<CanonicalPresentation> {
    let diag = orders
        .iter()
        .map(|&o| i64::try_from(o).map_err(|_| Error::Overflow("group order")))
        .collect::<Result<Vec<_>>>()?;
    let s = smith_decomposition(&IntMatrix::diagonal(&diag))?;
    let free: Vec<usize> = (0..diag.len()).filter(|&i| s.diagonal[i] == 0).collect();
    let tors: Vec<usize> = (0..diag.len()).filter(|&i| s.diagonal[i] >= 2).collect();
    let picked: Vec<usize> = free.iter().chain(&tors).copied().collect();

    let mut to = IntMatrix::zeros(picked.len(), diag.len());
    let mut from = IntMatrix::zeros(diag.len(), picked.len());
    for (k, &i) in picked.iter().enumerate() {
        let modulus = s.diagonal[i];
        for j in 0..diag.len() {
            let x = s.u.get(i, j);
            to.set(k, j, if modulus > 0 { x.rem_euclid(modulus) } else { x });
            from.set(j, k, s.u_inv.get(j, i));
        }
    }
    let group = AbGroup {
        rank: free.len(),
        torsion: tors.iter().map(|&i| s.diagonal[i] as u64).collect(),
    };
    Ok(CanonicalPresentation {
        group,
        to_canonical: to,
        from_canonical: from,
    })
}

pub fn is_primitive(v: &[i64], ambient_rank: usize) -> Result<bool> {
    if ambient_rank == 0 {
        return Err(Error::Parameter("ambient rank must be at least 1".into()));
    }
    if v.len() != ambient_rank {
        return Err(Error::Dimension(format!(
            "vector of length {} in a free group of rank {ambient_rank}",
            v.len()
        )));
    }
    Ok(gcd_all(v) == 1)
}

/// A homomorphism between canonical groups, as a matrix against their
/// generator bases. Torsion rows are kept reduced into `[0, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomMatrix {
    source: AbGroup,
    target: AbGroup,
    matrix: IntMatrix,
    ring: Ring,
}

impl HomMatrix {
    pub fn new(source: AbGroup, target: AbGroup, matrix: IntMatrix, ring: Ring) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count()
        {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but the map {} -> {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.to_compact(),
                target.to_compact(),
                target.generator_count(),
                source.generator_count()
            )));
        }
        if ring == Ring::ModTwo {
            for (g, name) in [(&source, "source"), (&target, "target")] {
                if !g.is_elementary_two() {
                    return Err(Error::InvalidGroup(format!(
                        "{name} {} is not a Z/2 vector space",
                        g.to_compact()
                    )));
                }
            }
        }
        let src_orders = source.generator_orders();
        let tgt_orders = target.generator_orders();
        let mut matrix = matrix;
        for (j, &d) in src_orders.iter().enumerate() {
            for (i, &e) in tgt_orders.iter().enumerate() {
                let a = matrix.get(i, j);
                if e == 0 {
                    if d != 0 && a != 0 {
                        return Err(Error::IllDefinedHom {
                            generator: j,
                            reason: format!(
                                "generator of order {d} is sent to a non-torsion element (row {i})"
                            ),
                        });
                    }
                    continue;
                }
                let e = e as i128;
                if d != 0 && (d as i128 * a as i128) % e != 0 {
                    return Err(Error::IllDefinedHom {
                        generator: j,
                        reason: format!(
                            "generator of order {d} is sent to {a} in Z/{e} (row {i}), whose order does not divide {d}"
                        ),
                    });
                }
                matrix.set(i, j, (a as i128).rem_euclid(e) as i64);
            }
        }
        Ok(HomMatrix {
            source,
            target,
            matrix,
            ring,
        })
    }

    pub fn zero(source: AbGroup, target: AbGroup, ring: Ring) -> Result<Self> {
        let m = IntMatrix::zeros(target.generator_count(), source.generator_count());
        HomMatrix::new(source, target, m, ring)
    }

    pub fn identity(group: AbGroup, ring: Ring) -> Result<Self> {
        let m = IntMatrix::identity(group.generator_count());
        HomMatrix::new(group.clone(), group, m, ring)
    }

    /// Rewrites a matrix between naive presentations `⊕ Z/o_i` into the
    /// canonical bases of source and target.
    pub fn from_naive(
        source_orders: &[u64],
        target_orders: &[u64],
        naive: &IntMatrix,
        ring: Ring,
    ) -> Result<Self> {
        let src = canonicalize_orders(source_orders)?;
        let tgt = canonicalize_orders(target_orders)?;
        let m = tgt.to_canonical.mul(naive)?.mul(&src.from_canonical)?;
        HomMatrix::new(src.group, tgt.group, m, ring)
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomMatrix) -> Result<HomMatrix> {
        if other.target != self.source || other.ring != self.ring {
            return Err(Error::Dimension(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.to_compact(),
                self.target.to_compact(),
                other.source.to_compact(),
                other.target.to_compact()
            )));
        }
        let m = self.matrix.mul(&other.matrix)?;
        HomMatrix::new(other.source.clone(), self.target.clone(), m, self.ring)
    }

    pub fn cokernel(&self) -> Result<AbGroup> {
        let relations: Vec<Vec<i64>> = self
            .target
            .generator_orders()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                let mut col = vec![0; self.target.generator_count()];
                col[i] = e as i64;
                col
            })
            .collect();
        let rel = IntMatrix::from_columns(&relations, self.target.generator_count())?;
        let presentation = self.matrix.hstack(&rel)?;
        let s = smith_normal_form(&presentation)?;
        let torsion = s
            .invariant_factors
            .iter()
            .filter(|&&d| d >= 2)
            .map(|&d| d as u64)
            .collect();
        Ok(AbGroup {
            rank: self.target.generator_count() - s.rank,
            torsion,
        })
    }

    pub fn is_surjective(&self) -> Result<bool> {
        match self.ring {
            Ring::ModTwo => Ok(rank_mod2(&self.matrix) == self.target.generator_count()),
            Ring::Integers => Ok(self.cokernel()?.is_zero()),
        }
    }
}

pub fn cokernel(h: &HomMatrix) -> Result<AbGroup> {
    h.cokernel()
}

pub fn is_surjective(h: &HomMatrix) -> Result<bool> {
    h.is_surjective()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> AbGroup {
        s.parse().unwrap()
    }

    fn hom(src: &str, tgt: &str, rows: &[Vec<i64>], ring: Ring) -> Result<HomMatrix> {
        let src = g(src);
        let m = IntMatrix::from_rows(rows, src.generator_count()).unwrap();
        HomMatrix::new(src, g(tgt), m, ring)
    }

    #[test]
    fn group_parse_and_print() {
        assert_eq!(g("Z^2+Z/12").to_string(), "Z ⊕ Z ⊕ Z/12");
        assert_eq!(g("Z ⊕ Z/2 ⊕ Z/3").to_compact(), "Z+Z/6");
        assert_eq!(g("(Z/2)^3").torsion(), &[2, 2, 2]);
        assert_eq!(g("0"), AbGroup::zero());
        assert_eq!(g("Z/1"), AbGroup::zero());
        assert_eq!(AbGroup::zero().to_string(), "0");
        assert!("Q".parse::<AbGroup>().is_err());
        assert!("Z+".parse::<AbGroup>().is_err());
    }

    #[test]
    fn canonical_constructor_rejects_bad_chains() {
        assert!(AbGroup::new(0, vec![2, 3]).is_err());
        assert!(AbGroup::new(0, vec![1]).is_err());
        assert!(AbGroup::new(1, vec![2, 4]).is_ok());
    }

    #[test]
    fn cokernel_examples() {
        let h = hom("Z", "Z", &[vec![2]], Ring::Integers).unwrap();
        assert_eq!(h.cokernel().unwrap(), AbGroup::cyclic(2));
        let h = HomMatrix::identity(AbGroup::free(2), Ring::Integers).unwrap();
        assert!(h.cokernel().unwrap().is_zero());
        let h = hom("Z", "Z+Z/4", &[vec![0], vec![2]], Ring::Integers).unwrap();
        assert_eq!(h.cokernel().unwrap(), AbGroup::new(1, vec![2]).unwrap());
    }

    #[test]
    fn surjectivity_examples() {
        let h = hom("Z^2", "Z", &[vec![1, 0]], Ring::Integers).unwrap();
        assert!(h.is_surjective().unwrap());
        let h = hom("Z", "Z", &[vec![2]], Ring::Integers).unwrap();
        assert!(!h.is_surjective().unwrap());
        let h = hom("(Z/2)^2", "(Z/2)^2", &[vec![1, 1], vec![0, 1]], Ring::ModTwo).unwrap();
        assert!(h.is_surjective().unwrap());
    }

    #[test]
    fn ill_defined_maps_name_the_generator() {
        let err = hom("Z+Z/2", "Z", &[vec![0, 1]], Ring::Integers).unwrap_err();
        assert!(matches!(err, Error::IllDefinedHom { generator: 1, .. }));
        let err = hom("Z/4", "Z/6", &[vec![1]], Ring::Integers).unwrap_err();
        assert!(matches!(err, Error::IllDefinedHom { generator: 0, .. }));
        assert!(hom("Z/4", "Z/6", &[vec![3]], Ring::Integers).is_ok());
        assert!(hom("Z", "Z/2", &[vec![1]], Ring::ModTwo).is_err());
    }

    #[test]
    fn torsion_rows_are_reduced() {
        let h = hom("Z", "Z/4", &[vec![-3]], Ring::Integers).unwrap();
        assert_eq!(h.matrix().get(0, 0), 1);
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(
            direct_sum(&AbGroup::free(1), &AbGroup::cyclic(2)).unwrap(),
            AbGroup::new(1, vec![2]).unwrap()
        );
        assert_eq!(
            direct_sum(&AbGroup::cyclic(2), &AbGroup::cyclic(3)).unwrap(),
            AbGroup::cyclic(6)
        );
        assert!(direct_sum(&AbGroup::zero(), &AbGroup::zero()).unwrap().is_zero());
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&[1, 0, 0, 0], 4).unwrap());
        assert!(!is_primitive(&[2, 4], 2).unwrap());
        assert!(is_primitive(&[6, 10, 15], 3).unwrap());
        assert!(!is_primitive(&[0, 0], 2).unwrap());
        assert!(is_primitive(&[1], 2).is_err());
        assert!(is_primitive(&[], 0).is_err());
    }

    #[test]
    fn canonical_change_of_basis_round_trips() {
        let p = canonicalize_orders(&[2, 0, 3, 4, 1]).unwrap();
        assert_eq!(p.group, AbGroup::new(1, vec![2, 12]).unwrap());
        // Canonical -> naive -> canonical is the identity modulo the canonical orders.
        let back = p.to_canonical.mul(&p.from_canonical).unwrap();
        let orders = p.group.generator_orders();
        for i in 0..back.rows() {
            for j in 0..back.cols() {
                let want = i64::from(i == j);
                let got = back.get(i, j);
                match orders[i] {
                    0 => assert_eq!(got, want),
                    o => assert_eq!((got - want).rem_euclid(o as i64), 0),
                }
            }
        }
    }

    #[test]
    fn from_naive_matches_direct_construction() {
        // Z -> Z/2 ⊕ Z/3 sending 1 to (1, 1) is a surjection onto Z/6.
        let h = HomMatrix::from_naive(
            &[0],
            &[2, 3],
            &IntMatrix::from_rows(&[vec![1], vec![1]], 1).unwrap(),
            Ring::Integers,
        )
        .unwrap();
        assert_eq!(h.target(), &AbGroup::cyclic(6));
        assert!(h.is_surjective().unwrap());
        let h = HomMatrix::from_naive(
            &[0],
            &[2, 3],
            &IntMatrix::from_rows(&[vec![0], vec![1]], 1).unwrap(),
            Ring::Integers,
        )
        .unwrap();
        assert_eq!(h.cokernel().unwrap(), AbGroup::cyclic(2));
    }

    #[test]
    fn composition() {
        let a = hom("Z", "Z", &[vec![2]], Ring::Integers).unwrap();
        let b = hom("Z", "Z/4", &[vec![1]], Ring::Integers).unwrap();
        let c = b.compose(&a).unwrap();
        assert_eq!(c.matrix().get(0, 0), 2);
        assert!(a.compose(&b).is_err());
    }

    fn arb_group() -> impl Strategy<Value = AbGroup> {
        proptest::collection::vec(prop_oneof![Just(0u64), 2u64..10], 0..4)
            .prop_map(|o| AbGroup::from_orders(&o).unwrap())
    }

    proptest! {
        #[test]
        fn direct_sum_is_commutative_and_associative(
            a in arb_group(), b in arb_group(), c in arb_group()
        ) {
            prop_assert_eq!(direct_sum(&a, &b).unwrap(), direct_sum(&b, &a).unwrap());
            let left = direct_sum(&direct_sum(&a, &b).unwrap(), &c).unwrap();
            let right = direct_sum(&a, &direct_sum(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn primitive_iff_single_unit_factor(v in proptest::collection::vec(-12i64..=12, 1..5)) {
            let col = IntMatrix::from_columns(std::slice::from_ref(&v), v.len()).unwrap();
            let f = smith_normal_form(&col).unwrap().invariant_factors;
            prop_assert_eq!(is_primitive(&v, v.len()).unwrap(), f == vec![1]);
        }

        #[test]
        fn group_text_round_trips(a in arb_group()) {
            prop_assert_eq!(a.to_compact().parse::<AbGroup>().unwrap(), a.clone());
            prop_assert_eq!(a.to_string().parse::<AbGroup>().unwrap(), a);
        }
    }
}
