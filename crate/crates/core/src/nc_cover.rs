//! Cover invariants for arrangements given as an explicit normal-crossing
//! configuration on the blown-up base surface.
//!
//! This generalizes the closed-form homogeneous computation: components may
//! sit in different classes, so the model carries each component's Euler
//! characteristic, self-intersection and canonical degree plus the pairwise
//! transversal intersection counts. Models describe the arrangement AFTER
//! all essential singular points have been blown up, so every crossing is a
//! double point.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arrangements::{ArrangementCombinatorics, CurveProfile, SurfaceModel};
use crate::error::Error;

/// One irreducible branch component after resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcComponent {
    pub id: String,
    /// Topological Euler characteristic of the component.
    pub euler: i64,
    /// Self-intersection on the blown-up surface.
    pub self_int: i64,
    /// Degree against the canonical class of the blown-up surface.
    pub k_deg: i64,
    /// True for exceptional curves introduced by the resolution.
    pub exceptional: bool,
}

/// A resolved branch configuration: base invariants, components, and
/// symmetric pairwise crossing counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalCrossingModel {
    k: i64,
    base_euler: i64,
    base_ksq: i64,
    components: Vec<NcComponent>,
    /// Keyed by component index pairs with `i < j`.
    pairwise: BTreeMap<(usize, usize), i64>,
}

impl NormalCrossingModel {
    /// Builds and validates a model. `pairwise` entries reference
    /// components by id; duplicate entries for the same unordered pair are
    /// summed.
    ///
    /// Validation: `k >= 3`; component ids unique; every component smooth,
    /// i.e. adjunction holds as `euler = -(self_int + k_deg)`; crossing
    /// counts nonnegative between distinct known components.
    pub fn new(
        k: i64,
        base_euler: i64,
        base_ksq: i64,
        components: Vec<NcComponent>,
        pairwise: &[(String, String, i64)],
    ) -> Result<Self, Error> {
        if k < 3 {
            return Err(Error::ModelInconsistent(format!(
                "at least 3 branch curves are required, got k = {k}"
            )));
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            if index.insert(c.id.as_str(), i).is_some() {
                return Err(Error::ModelInconsistent(format!("duplicate component id {:?}", c.id)));
            }
            if c.euler != -(c.self_int + c.k_deg) {
                return Err(Error::ModelInconsistent(format!(
                    "component {:?} violates adjunction: euler {} != -(self_int {} + k_deg {})",
                    c.id, c.euler, c.self_int, c.k_deg
                )));
            }
        }
        let mut map: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (a, b, count) in pairwise {
            let &ia = index
                .get(a.as_str())
                .ok_or_else(|| Error::ModelInconsistent(format!("unknown component id {a:?}")))?;
            let &ib = index
                .get(b.as_str())
                .ok_or_else(|| Error::ModelInconsistent(format!("unknown component id {b:?}")))?;
            if ia == ib {
                return Err(Error::ModelInconsistent(format!(
                    "self-crossing entry for component {a:?}; models must be resolved"
                )));
            }
            if *count < 0 {
                return Err(Error::ModelInconsistent(format!(
                    "negative crossing count {count} between {a:?} and {b:?}"
                )));
            }
            *map.entry((ia.min(ib), ia.max(ib))).or_insert(0) += count;
        }
        map.retain(|_, c| *c != 0);
        Ok(NormalCrossingModel { k, base_euler, base_ksq, components, pairwise: map })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn base_euler(&self) -> i64 {
        self.base_euler
    }

    pub fn base_ksq(&self) -> i64 {
        self.base_ksq
    }

    pub fn components(&self) -> &[NcComponent] {
        &self.components
    }

    /// Symmetric crossing counts as `(id_a, id_b, count)` triples in index
    /// order.
    pub fn pairwise(&self) -> Vec<(String, String, i64)> {
        self.pairwise
            .iter()
            .map(|(&(i, j), &c)| (self.components[i].id.clone(), self.components[j].id.clone(), c))
            .collect()
    }

    /// Total number of double points of the branch divisor.
    pub fn double_points(&self) -> i64 {
        self.pairwise.values().sum()
    }

    /// Double points lying on the component at `index`.
    fn double_points_on(&self, index: usize) -> i64 {
        self.pairwise
            .iter()
            .filter(|(&(i, j), _)| i == index || j == index)
            .map(|(_, &c)| c)
            .sum()
    }
}

/// Euler characteristic of the exponent-`n` Kummer cover of the model,
/// stratified over base, smooth branch locus and double points:
/// `e(Y) = n^{k-1} e(Z - D) + n^{k-2} sum_j e(D_j deg) + n^{k-3} N`.
pub fn cover_euler_nc(model: &NormalCrossingModel, n: i64) -> Result<BigInt, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("exponent must be >= 2, got n = {n}")));
    }
    let n_big = BigInt::from(n);
    let total_double = model.double_points();
    let sum_euler: i64 = model.components.iter().map(|c| c.euler).sum();
    // Open strata: e(D_j minus crossings) per component, and the open base.
    let open_components: i64 = model
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| c.euler - model.double_points_on(i))
        .sum();
    let open_base = model.base_euler - sum_euler + total_double;
    let k = model.k as u32;
    Ok(n_big.pow(k - 1) * BigInt::from(open_base)
        + n_big.pow(k - 2) * BigInt::from(open_components)
        + n_big.pow(k - 3) * BigInt::from(total_double))
}

/// Self-intersection of the canonical class of the exponent-`n` cover:
/// `c1^2(Y) = n^{k-1} (K_Z + ((n-1)/n) D)^2`, expanded exactly.
pub fn cover_c1sq_nc(model: &NormalCrossingModel, n: i64) -> Result<BigInt, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("exponent must be >= 2, got n = {n}")));
    }
    let sum_k_deg: i64 = model.components.iter().map(|c| c.k_deg).sum();
    let d_sq: i64 =
        model.components.iter().map(|c| c.self_int).sum::<i64>() + 2 * model.double_points();
    let ratio = BigRational::new(BigInt::from(n - 1), BigInt::from(n));
    let value = (BigRational::from(BigInt::from(model.base_ksq))
        + BigRational::from(BigInt::from(2 * sum_k_deg)) * &ratio
        + BigRational::from(BigInt::from(d_sq)) * &ratio * &ratio)
        * BigRational::from(BigInt::from(n).pow(model.k as u32 - 1));
    if !value.is_integer() {
        return Err(Error::ModelInconsistent(format!(
            "c1^2 scaled by the cover order is not an integer ({value}); intersection data is invalid"
        )));
    }
    Ok(value.to_integer())
}

/// Expands a homogeneous combinatorics into an explicit resolved model:
/// `k` strict transforms plus one exceptional component per essential
/// point.
///
/// Strict transform of a curve through `gamma_j` essential points: Euler
/// characteristic `-(a+b)`, self-intersection `a - gamma_j`, canonical
/// degree `b + gamma_j`. Exceptional components are `(2, -1, -1)` and meet
/// the `r` strict transforms through their point once each.
///
/// When `profiles` are given they must validate against the combinatorics
/// and fix each curve's incidences; otherwise points are distributed
/// round-robin, which is invariant-equivalent because the cover invariants
/// depend only on aggregate counts.
pub fn blowup_homogeneous(
    surface: &SurfaceModel,
    combo: &ArrangementCombinatorics,
    profiles: Option<&[CurveProfile]>,
) -> Result<NormalCrossingModel, Error> {
    let p = surface.params()?;
    let k = combo.k();
    let f = combo.f_moments();
    let t2 = combo.t(2);

    // Per-curve incidence targets for each multiplicity.
    let mut targets: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    if let Some(profiles) = profiles {
        let report = crate::arrangements::validate_profiles(surface, combo, profiles)?;
        if !report.passed() {
            return Err(Error::Rejected(report));
        }
        for (&r, _) in combo.t_map() {
            targets.insert(r, profiles.iter().map(|pr| pr.count(r)).collect());
        }
    }

    let mut components: Vec<NcComponent> = Vec::new();
    let mut gamma = alloc::vec![0i64; k as usize];
    // (curve index, other index, count) with usize indices into `components`.
    let mut pairwise: Vec<(String, String, i64)> = Vec::new();

    for j in 0..k {
        components.push(NcComponent {
            id: format!("C{}", j + 1),
            euler: -(p.a + p.b),
            self_int: p.a, // adjusted below once gamma is known
            k_deg: p.b,
            exceptional: false,
        });
    }

    // Assigns `count` points of multiplicity `r`, each to `r` distinct
    // curves, returning the list of curve index sets.
    let assign = |r: i64, count: i64, residuals: Option<Vec<i64>>| -> Result<Vec<Vec<usize>>, Error> {
        let mut sets = Vec::new();
        match residuals {
            None => {
                let mut cursor: usize = 0;
                for _ in 0..count {
                    let set: Vec<usize> =
                        (0..r).map(|i| (cursor + i as usize) % k as usize).collect();
                    cursor = (cursor + r as usize) % k as usize;
                    sets.push(set);
                }
            }
            Some(mut residuals) => {
                for _ in 0..count {
                    // Greedy: the r curves with the largest remaining
                    // demand; realizes any profile-consistent degree
                    // sequence.
                    let mut order: Vec<usize> = (0..residuals.len()).collect();
                    order.sort_by_key(|&j| (-residuals[j], j));
                    let set: Vec<usize> = order.into_iter().take(r as usize).collect();
                    for &j in &set {
                        if residuals[j] == 0 {
                            return Err(Error::InvalidProfile(format!(
                                "profiles cannot be realized: multiplicity {r} demand exceeds the point supply"
                            )));
                        }
                        residuals[j] -= 1;
                    }
                    sets.push(set);
                }
                if residuals.iter().any(|&x| x != 0) {
                    return Err(Error::InvalidProfile(format!(
                        "profiles cannot be realized: unmet multiplicity-{r} incidences remain"
                    )));
                }
            }
        }
        Ok(sets)
    };

    let mut exc_seq = 0usize;
    for (&r, &count) in combo.t_map() {
        let sets = assign(r, count, targets.remove(&r))?;
        if r == 2 {
            for set in sets {
                pairwise.push((format!("C{}", set[0] + 1), format!("C{}", set[1] + 1), 1));
            }
        } else {
            for set in sets {
                exc_seq += 1;
                let id = format!("E{exc_seq}");
                components.push(NcComponent {
                    id: id.clone(),
                    euler: 2,
                    self_int: -1,
                    k_deg: -1,
                    exceptional: true,
                });
                for &j in &set {
                    gamma[j] += 1;
                    pairwise.push((format!("C{}", j + 1), id.clone(), 1));
                }
            }
        }
    }

    for (j, g) in gamma.iter().enumerate() {
        components[j].self_int = p.a - g;
        components[j].k_deg = p.b + g;
    }

    let essential = f.f0 - t2;
    let base_euler =
        i64::try_from(i128::from(p.euler) + i128::from(essential)).map_err(|_| {
            Error::ModelInconsistent(String::from("blown-up Euler characteristic overflows"))
        })?;
    let base_ksq = p.ksq - essential;
    NormalCrossingModel::new(k, base_euler, base_ksq, components, &pairwise)
}
