//! Surface models, arrangement combinatorics, and the combinatorial
//! identities every arrangement must satisfy.
//!
//! The two identities enforced here are the global incidence count
//! `a(k^2 - k) = sum_r (r^2 - r) t_r` and its per-curve refinement
//! `a(k - 1) = sum_{p on C_j} (r_p - 1)`. All arithmetic is exact.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;

/// The base surface family an arrangement lives on.
///
/// Every invariant formula in this crate consumes only the quadruple
/// `(a, b, e(W), K_W^2)` resolved by [`SurfaceModel::params`], where `a` is
/// the self-intersection of the curve class and `b` its canonical degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SurfaceModel {
    /// Sections in `|(e+1)F + Gamma|` on the Hirzebruch surface `F_e`.
    Hirzebruch { e: i64 },
    /// Curves in an ample effective system `|A|` on a surface with nef and
    /// effective canonical divisor; `a = A^2`, `b = K_W.C_j`.
    NefCanonical { euler: i64, ksq: i64, a: i64, b: i64 },
    /// Degree-`d` configurations of smooth plane curves, `d >= 2`.
    Plane { d: i64 },
}

/// Resolved surface parameters: `(a, b, e(W), K_W^2)` plus the base
/// surface's own BMY gap `delta = 3 e(W) - K_W^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceParams {
    pub a: i64,
    pub b: i64,
    pub euler: i64,
    pub ksq: i64,
    pub delta: i64,
}

impl SurfaceModel {
    /// Resolves the parameter quadruple, validating the family bounds.
    ///
    /// `Hirzebruch { e }` resolves to `(e+2, -e-4, 4, 8)`, `Plane { d }` to
    /// `(d^2, -3d, 3, 9)`, and `NefCanonical` passes its fields through after
    /// checking `a >= 1`, `b >= 0`, and `delta >= 0`.
    pub fn params(&self) -> Result<SurfaceParams, Error> {
        match *self {
            SurfaceModel::Hirzebruch { e } => {
                if e < 0 {
                    return Err(Error::InvalidSurface(format!(
                        "hirzebruch surface requires e >= 0, got e = {e}"
                    )));
                }
                Ok(SurfaceParams { a: e + 2, b: -e - 4, euler: 4, ksq: 8, delta: 4 })
            }
            SurfaceModel::Plane { d } => {
                if d < 2 {
                    return Err(Error::InvalidSurface(format!(
                        "plane configurations require d >= 2, got d = {d}"
                    )));
                }
                Ok(SurfaceParams { a: d * d, b: -3 * d, euler: 3, ksq: 9, delta: 0 })
            }
            SurfaceModel::NefCanonical { euler, ksq, a, b } => {
                if a < 1 {
                    return Err(Error::InvalidSurface(format!(
                        "ampleness requires a >= 1, got a = {a}"
                    )));
                }
                if b < 0 {
                    return Err(Error::InvalidSurface(format!(
                        "nef canonical divisor requires b >= 0, got b = {b}"
                    )));
                }
                let delta = 3 * euler - ksq;
                if delta < 0 {
                    return Err(Error::InvalidSurface(format!(
                        "base surface violates its own BMY bound: 3e(W) - K^2 = {delta} < 0"
                    )));
                }
                Ok(SurfaceParams { a, b, euler, ksq, delta })
            }
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            SurfaceModel::Hirzebruch { .. } => "hirzebruch",
            SurfaceModel::NefCanonical { .. } => "nef_canonical",
            SurfaceModel::Plane { .. } => "plane",
        }
    }
}

/// Resolves the parameter quadruple plus `delta`; see [`SurfaceModel::params`].
pub fn surface_parameters(surface: &SurfaceModel) -> Result<SurfaceParams, Error> {
    surface.params()
}

/// The moments `f_i = sum_{r>=2} r^i t_r` for `i = 0, 1, 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FMoments {
    pub f0: i64,
    pub f1: i64,
    pub f2: i64,
}

/// The intersection combinatorics of an arrangement of `k` curves: the
/// number `t_r` of points where exactly `r` curves meet, stored sparsely.
///
/// The moments `f_i` are always derived, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementCombinatorics {
    k: i64,
    t: BTreeMap<i64, i64>,
    star_property: bool,
}

impl ArrangementCombinatorics {
    /// Builds a combinatorics value, validating `k >= 3`, `2 <= r <= k`, and
    /// `t_r >= 0`. Entries with `t_r = 0` are dropped.
    ///
    /// `star_property` records the condition that the arrangement contains
    /// four sections meeting only at double and triple points; it is only
    /// meaningful on Hirzebruch surfaces.
    pub fn new(k: i64, t: BTreeMap<i64, i64>, star_property: bool) -> Result<Self, Error> {
        if k < 3 {
            return Err(Error::InvalidCombinatorics(format!(
                "arrangements require k >= 3, got k = {k}"
            )));
        }
        let mut clean = BTreeMap::new();
        for (&r, &count) in &t {
            if r < 2 {
                return Err(Error::InvalidCombinatorics(format!(
                    "multiplicity r must be >= 2, got r = {r}"
                )));
            }
            if r > k {
                return Err(Error::InvalidCombinatorics(format!(
                    "multiplicity r = {r} exceeds the number of curves k = {k}"
                )));
            }
            if count < 0 {
                return Err(Error::InvalidCombinatorics(format!(
                    "t_{r} must be nonnegative, got {count}"
                )));
            }
            if count > 0 {
                clean.insert(r, count);
            }
        }
        Ok(Self { k, t: clean, star_property })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// The count `t_r`, zero for multiplicities outside the support.
    pub fn t(&self, r: i64) -> i64 {
        self.t.get(&r).copied().unwrap_or(0)
    }

    pub fn t_map(&self) -> &BTreeMap<i64, i64> {
        &self.t
    }

    pub fn star_property(&self) -> bool {
        self.star_property
    }

    /// `f_i = sum_{r>=2} r^i t_r` for `i in {0, 1, 2}`.
    pub fn f_moments(&self) -> FMoments {
        let mut f = FMoments { f0: 0, f1: 0, f2: 0 };
        for (&r, &count) in &self.t {
            f.f0 += count;
            f.f1 += r * count;
            f.f2 += r * r * count;
        }
        f
    }
}

/// How many `r`-fold points of the arrangement lie on one fixed curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveProfile {
    j: usize,
    r_profile: BTreeMap<i64, i64>,
}

impl CurveProfile {
    pub fn new(j: usize, r_profile: BTreeMap<i64, i64>) -> Result<Self, Error> {
        let mut clean = BTreeMap::new();
        for (&r, &count) in &r_profile {
            if r < 2 {
                return Err(Error::InvalidProfile(format!(
                    "profile of curve {j}: multiplicity r must be >= 2, got r = {r}"
                )));
            }
            if count < 0 {
                return Err(Error::InvalidProfile(format!(
                    "profile of curve {j}: count at r = {r} must be nonnegative, got {count}"
                )));
            }
            if count > 0 {
                clean.insert(r, count);
            }
        }
        Ok(Self { j, r_profile: clean })
    }

    pub fn index(&self) -> usize {
        self.j
    }

    pub fn count(&self, r: i64) -> i64 {
        self.r_profile.get(&r).copied().unwrap_or(0)
    }

    pub fn r_profile(&self) -> &BTreeMap<i64, i64> {
        &self.r_profile
    }

    /// `r_j`: the total number of singular points lying on the curve.
    pub fn total(&self) -> i64 {
        self.r_profile.values().sum()
    }

    /// `gamma_j`: the number of essential (multiplicity >= 3) points on the curve.
    pub fn essential(&self) -> i64 {
        self.r_profile.iter().filter(|(&r, _)| r >= 3).map(|(_, &c)| c).sum()
    }

    /// `r_{j,2}`: the number of double points on the curve.
    pub fn doubles(&self) -> i64 {
        self.count(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// One validation rule outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub rule: &'static str,
    pub passed: bool,
    pub severity: Severity,
    pub detail: String,
}

/// The result of running a validator: one [`Finding`] per rule, in rule order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn finding(&self, rule: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.rule == rule)
    }

    /// True when no error-severity rule failed. Warnings do not count.
    pub fn passed(&self) -> bool {
        self.findings
            .iter()
            .all(|f| f.passed || f.severity == Severity::Warning)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| !f.passed && f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| !f.passed && f.severity == Severity::Warning)
    }

    fn push(&mut self, rule: &'static str, passed: bool, severity: Severity, detail: String) {
        self.findings.push(Finding { rule, passed, severity, detail });
    }
}

/// Checks the definitional constraints an arrangement must satisfy on its
/// surface. All findings land in the report; callers decide severity.
///
/// - R1: `a(k^2 - k) = f_2 - f_1` exactly.
/// - R2: multiplicity cap — `t_r = 0` for `r >= k - 2` on Hirzebruch
///   surfaces, `t_k = 0` on the other families.
/// - R3: `k >= 5` where the family demands it (Hirzebruch and nef-canonical
///   arrangements; plane configurations carry no minimum).
/// - R4: `f_0 >= e + 6` on Hirzebruch surfaces, reported as a warning only
///   (it holds for realizable arrangements, not for arbitrary count vectors).
pub fn validate_combinatorics(
    surface: &SurfaceModel,
    combo: &ArrangementCombinatorics,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let params = match surface.params() {
        Ok(p) => p,
        Err(err) => {
            report.push("surface", false, Severity::Error, format!("{err}"));
            return report;
        }
    };
    report.push("surface", true, Severity::Error, String::from("surface parameters well-formed"));

    let k = combo.k();
    let f = combo.f_moments();
    let lhs = params.a * (k * k - k);
    let rhs = f.f2 - f.f1;
    report.push(
        "R1",
        lhs == rhs,
        Severity::Error,
        format!("a(k^2 - k) = {lhs} vs sum r(r-1) t_r = {rhs}"),
    );

    match surface {
        SurfaceModel::Hirzebruch { .. } => {
            let bad: Vec<i64> = combo
                .t_map()
                .keys()
                .copied()
                .filter(|&r| r >= k - 2)
                .collect();
            report.push(
                "R2",
                bad.is_empty(),
                Severity::Error,
                if bad.is_empty() {
                    format!("all multiplicities below k - 2 = {}", k - 2)
                } else {
                    format!("multiplicities {bad:?} reach the cap k - 2 = {}", k - 2)
                },
            );
        }
        _ => {
            let tk = combo.t(k);
            report.push(
                "R2",
                tk == 0,
                Severity::Error,
                format!("t_k = t_{k} = {tk} (no point on all curves allowed)"),
            );
        }
    }

    let needs_five = !matches!(surface, SurfaceModel::Plane { .. });
    report.push(
        "R3",
        !needs_five || k >= 5,
        Severity::Error,
        if needs_five {
            format!("family requires k >= 5, got k = {k}")
        } else {
            format!("no minimum on k for this family (k = {k})")
        },
    );

    if let SurfaceModel::Hirzebruch { e } = surface {
        let floor = e + 6;
        report.push(
            "R4",
            f.f0 >= floor,
            Severity::Warning,
            format!("f_0 = {} vs realizability floor e + 6 = {floor}", f.f0),
        );
    }

    report
}

/// Checks a full set of per-curve profiles against the arrangement:
///
/// - P1: for each curve `j`, `sum_r (r - 1) r_{j,r} = a(k - 1)`;
/// - P2: for each multiplicity `r`, `sum_j r_{j,r} = r t_r`;
/// - P3: when P1 and P2 both hold, the global identity
///   `a(k^2 - k) = sum_r r(r-1) t_r` is re-derived and asserted.
///
/// Errors only on a length mismatch; rule outcomes land in the report.
pub fn validate_profiles(
    surface: &SurfaceModel,
    combo: &ArrangementCombinatorics,
    profiles: &[CurveProfile],
) -> Result<ValidationReport, Error> {
    let k = combo.k();
    if profiles.len() as i64 != k {
        return Err(Error::InvalidProfile(format!(
            "expected exactly k = {k} profiles, got {}",
            profiles.len()
        )));
    }
    let params = surface.params().map_err(|e| Error::InvalidProfile(format!("{e}")))?;

    let mut report = ValidationReport::default();

    let per_curve = params.a * (k - 1);
    let mut bad_curves = Vec::new();
    for profile in profiles {
        let weight: i64 = profile
            .r_profile()
            .iter()
            .map(|(&r, &count)| (r - 1) * count)
            .sum();
        if weight != per_curve {
            bad_curves.push((profile.index(), weight));
        }
    }
    report.push(
        "P1",
        bad_curves.is_empty(),
        Severity::Error,
        if bad_curves.is_empty() {
            format!("every curve carries incidence weight a(k-1) = {per_curve}")
        } else {
            format!("curves with weight != a(k-1) = {per_curve}: {bad_curves:?}")
        },
    );

    let mut support: Vec<i64> = combo.t_map().keys().copied().collect();
    for profile in profiles {
        for &r in profile.r_profile().keys() {
            if !support.contains(&r) {
                support.push(r);
            }
        }
    }
    support.sort_unstable();
    let mut bad_r = Vec::new();
    for &r in &support {
        let total: i64 = profiles.iter().map(|p| p.count(r)).sum();
        if total != r * combo.t(r) {
            bad_r.push((r, total, r * combo.t(r)));
        }
    }
    report.push(
        "P2",
        bad_r.is_empty(),
        Severity::Error,
        if bad_r.is_empty() {
            String::from("sum_j r_{j,r} = r t_r for every multiplicity")
        } else {
            format!("(r, sum_j r_{{j,r}}, r t_r) mismatches: {bad_r:?}")
        },
    );

    if bad_curves.is_empty() && bad_r.is_empty() {
        // Summing P1 over j and substituting P2 must reproduce R1.
        let f = combo.f_moments();
        let consistent = params.a * (k * k - k) == f.f2 - f.f1;
        report.push(
            "P3",
            consistent,
            Severity::Error,
            format!(
                "derived consistency a(k^2-k) = {} vs f_2 - f_1 = {}",
                params.a * (k * k - k),
                f.f2 - f.f1
            ),
        );
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn combo(k: i64, pairs: &[(i64, i64)]) -> ArrangementCombinatorics {
        ArrangementCombinatorics::new(k, pairs.iter().copied().collect(), true).unwrap()
    }

    #[test]
    fn surface_parameters_hirzebruch() {
        let p = SurfaceModel::Hirzebruch { e: 2 }.params().unwrap();
        assert_eq!((p.a, p.b, p.euler, p.ksq, p.delta), (4, -6, 4, 8, 4));
    }

    #[test]
    fn surface_parameters_plane() {
        let p = SurfaceModel::Plane { d: 2 }.params().unwrap();
        assert_eq!((p.a, p.b, p.euler, p.ksq, p.delta), (4, -6, 3, 9, 0));
    }

    #[test]
    fn surface_parameters_nef_passthrough() {
        let p = SurfaceModel::NefCanonical { euler: 0, ksq: 0, a: 1, b: 0 }
            .params()
            .unwrap();
        assert_eq!((p.a, p.b, p.euler, p.ksq, p.delta), (1, 0, 0, 0, 0));
    }

    #[test]
    fn surface_parameters_rejects_bad_bounds() {
        assert!(SurfaceModel::Hirzebruch { e: -1 }.params().is_err());
        assert!(SurfaceModel::Plane { d: 1 }.params().is_err());
        assert!(SurfaceModel::NefCanonical { euler: 0, ksq: 0, a: 0, b: 0 }.params().is_err());
        assert!(SurfaceModel::NefCanonical { euler: 0, ksq: 0, a: 1, b: -1 }.params().is_err());
        assert!(SurfaceModel::NefCanonical { euler: 0, ksq: 1, a: 1, b: 0 }.params().is_err());
    }

    #[test]
    fn f_moments_single_term() {
        let f = combo(5, &[(2, 40)]).f_moments();
        assert_eq!((f.f0, f.f1, f.f2), (40, 80, 160));
    }

    #[test]
    fn f_moments_sixfold_against_independent_loop() {
        let c = combo(11, &[(6, 33)]);
        let f = c.f_moments();
        assert_eq!((f.f0, f.f1, f.f2), (33, 198, 1188));
        // Independent summation loop over the stated support.
        let mut expect = [0i64; 3];
        for r in 2i64..=11 {
            let t = if r == 6 { 33 } else { 0 };
            for (i, slot) in expect.iter_mut().enumerate() {
                *slot += r.pow(i as u32) * t;
            }
        }
        assert_eq!((f.f0, f.f1, f.f2), (expect[0], expect[1], expect[2]));
    }

    #[test]
    fn f_moments_empty() {
        let f = combo(5, &[]).f_moments();
        assert_eq!((f.f0, f.f1, f.f2), (0, 0, 0));
    }

    #[test]
    fn f_moment_difference_identity() {
        // f_2 - f_1 = sum r(r-1) t_r, exactly.
        let c = combo(9, &[(2, 7), (3, 5), (6, 2)]);
        let f = c.f_moments();
        let direct: i64 = c.t_map().iter().map(|(&r, &t)| r * (r - 1) * t).sum();
        assert_eq!(f.f2 - f.f1, direct);
        assert!(f.f0 <= f.f1 && f.f1 <= f.f2);
    }

    #[test]
    fn constructor_rejects_bad_values() {
        assert!(ArrangementCombinatorics::new(2, BTreeMap::new(), false).is_err());
        assert!(ArrangementCombinatorics::new(5, [(1, 3)].into_iter().collect(), false).is_err());
        assert!(ArrangementCombinatorics::new(5, [(6, 1)].into_iter().collect(), false).is_err());
        assert!(ArrangementCombinatorics::new(5, [(2, -1)].into_iter().collect(), false).is_err());
    }

    #[test]
    fn validate_f2_k5_all_pass() {
        let surface = SurfaceModel::Hirzebruch { e: 2 };
        let report = validate_combinatorics(&surface, &combo(5, &[(2, 40)]));
        assert!(report.passed(), "{report:?}");
        assert!(report.finding("R1").unwrap().passed);
        assert!(report.finding("R4").unwrap().passed);
    }

    #[test]
    fn validate_plane_sixfold_all_pass() {
        let surface = SurfaceModel::Plane { d: 3 };
        let report = validate_combinatorics(&surface, &combo(11, &[(6, 33)]));
        assert!(report.passed(), "{report:?}");
        // 9 * 110 = 30 * 33
        assert!(report.finding("R1").unwrap().passed);
    }

    #[test]
    fn validate_off_by_one_fails_r1() {
        let surface = SurfaceModel::Hirzebruch { e: 2 };
        let report = validate_combinatorics(&surface, &combo(5, &[(2, 39)]));
        assert!(!report.passed());
        assert!(!report.finding("R1").unwrap().passed);
    }

    #[test]
    fn validate_r2_multiplicity_cap() {
        let surface = SurfaceModel::Hirzebruch { e: 2 };
        // r = 3 = k - 2 hits the cap for k = 5.
        let c = combo(5, &[(2, 37), (3, 1)]);
        let report = validate_combinatorics(&surface, &c);
        assert!(!report.finding("R2").unwrap().passed);

        let plane = SurfaceModel::Plane { d: 2 };
        let c = combo(5, &[(5, 4)]);
        let report = validate_combinatorics(&plane, &c);
        assert!(!report.finding("R2").unwrap().passed);
    }

    #[test]
    fn validate_r4_is_warning_only() {
        // f_0 = 14 sits below the floor e + 6 = 16 for e = 10.
        let surface = SurfaceModel::Hirzebruch { e: 10 };
        let c = combo(7, &[(4, 14)]);
        let report = validate_combinatorics(&surface, &c);
        let r4 = report.finding("R4").unwrap();
        assert!(!r4.passed);
        assert_eq!(r4.severity, Severity::Warning);
    }

    #[test]
    fn profiles_plane_sixfold_pass() {
        let surface = SurfaceModel::Plane { d: 3 };
        let c = combo(11, &[(6, 33)]);
        let profiles: Vec<CurveProfile> = (0..11)
            .map(|j| CurveProfile::new(j, [(6, 18)].into_iter().collect()).unwrap())
            .collect();
        let report = validate_profiles(&surface, &c, &profiles).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.finding("P3").unwrap().passed);
    }

    #[test]
    fn profiles_f2_doubles_pass() {
        let surface = SurfaceModel::Hirzebruch { e: 2 };
        let c = combo(5, &[(2, 40)]);
        let profiles: Vec<CurveProfile> = (0..5)
            .map(|j| CurveProfile::new(j, [(2, 16)].into_iter().collect()).unwrap())
            .collect();
        let report = validate_profiles(&surface, &c, &profiles).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn profiles_perturbed_fail_p2() {
        let surface = SurfaceModel::Hirzebruch { e: 2 };
        let c = combo(5, &[(2, 40)]);
        let mut profiles: Vec<CurveProfile> = (0..5)
            .map(|j| CurveProfile::new(j, [(2, 16)].into_iter().collect()).unwrap())
            .collect();
        profiles[3] = CurveProfile::new(3, [(2, 17)].into_iter().collect()).unwrap();
        let report = validate_profiles(&surface, &c, &profiles).unwrap();
        assert!(!report.finding("P2").unwrap().passed);
    }

    #[test]
    fn profiles_length_mismatch_errors() {
        let surface = SurfaceModel::Hirzebruch { e: 2 };
        let c = combo(5, &[(2, 40)]);
        assert!(validate_profiles(&surface, &c, &[]).is_err());
    }

    #[test]
    fn profile_derived_counts() {
        let p = CurveProfile::new(0, [(2, 5), (3, 2), (6, 1)].into_iter().collect()).unwrap();
        assert_eq!(p.total(), 8);
        assert_eq!(p.essential(), 3);
        assert_eq!(p.doubles(), 5);
        assert_eq!(p.total(), p.essential() + p.doubles());
    }
}
