//! Proportionality-deviation conditions, the forced singularity counts for
//! exponent two, and machine-checked replays of the nonexistence
//! derivations.
//!
//! A [`Certificate`] is an ordered list of steps, each an exact identity or
//! a sign statement. Identities are verified by exact polynomial
//! arithmetic; sign statements by the shift criterion of
//! [`crate::symbolic::Poly::positive_on`], backed by an exhaustive numeric
//! confirmation on an integer grid. A certificate is VALID only if every
//! step verifies.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::arrangements::{ArrangementCombinatorics, CurveProfile, SurfaceModel};
use crate::error::Error;
use crate::symbolic::Poly;

/// The proportionality deviation of one exceptional-component preimage:
/// `prop = n^{r-2} ((r-2)(n-1) - 4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropValue {
    pub n: i64,
    pub r: i64,
    pub value: BigInt,
}

/// Evaluates the exceptional-component proportionality deviation.
///
/// `r >= 3` is required: double points are not blown up, so the formula
/// only applies to essential singularities.
pub fn prop_exceptional(n: i64, r: i64) -> Result<PropValue, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("exponent must be >= 2, got n = {n}")));
    }
    if r < 3 {
        return Err(Error::Domain(format!(
            "proportionality deviation applies to essential singularities only (r >= 3), got r = {r}"
        )));
    }
    let value = BigInt::from(n).pow((r - 2) as u32) * BigInt::from((r - 2) * (n - 1) - 4);
    Ok(PropValue { n, r, value })
}

/// All integer solutions of `(n-1)(r-2) = 4` with `2 <= n <= n_max` and
/// `3 <= r <= r_max`, sorted by `n`. The full set is
/// `{(2,6), (3,4), (5,3)}`.
pub fn admissible_pairs(n_max: i64, r_max: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for (p, q) in [(1i64, 4i64), (2, 2), (4, 1)] {
        let (n, r) = (p + 1, q + 2);
        if n <= n_max && r <= r_max {
            out.push((n, r));
        }
    }
    out
}

/// The admissible essential multiplicity for an exponent in `{2, 3, 5}`.
pub fn admissible_multiplicity(n: i64) -> Result<i64, Error> {
    match n {
        2 => Ok(6),
        3 => Ok(4),
        5 => Ok(3),
        _ => Err(Error::Domain(format!(
            "no admissible multiplicity exists for exponent n = {n}"
        ))),
    }
}

/// Outcome of the ball-quotient necessary-condition filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterOutcome {
    pub pass: bool,
    /// The essential multiplicity `r*` paired with the exponent.
    pub admissible_r: i64,
    /// Multiplicities with `t_r > 0` outside `{2, r*}`.
    pub offending: Vec<i64>,
}

/// Passes iff `t_r = 0` for every multiplicity outside `{2, r*}`, where
/// `(n, r*)` is the admissible pair for the exponent.
pub fn necessary_condition_filter(
    combo: &ArrangementCombinatorics,
    n: i64,
) -> Result<FilterOutcome, Error> {
    let admissible_r = admissible_multiplicity(n)?;
    let offending: Vec<i64> = combo
        .t_map()
        .keys()
        .copied()
        .filter(|&r| r != 2 && r != admissible_r)
        .collect();
    Ok(FilterOutcome { pass: offending.is_empty(), admissible_r, offending })
}

/// The scaled per-curve proportionality deviation
/// `prop(D_j)/n^{k-3} = prop(C_j) + (n-1)(r_j - e(C_j)) - 2 gamma_j`
/// with `prop(C_j) = 3a + b` and `e(C_j) = -(a+b)` by adjunction.
pub fn prop_curve_component(
    surface: &SurfaceModel,
    n: i64,
    profile: &CurveProfile,
) -> Result<i64, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("exponent must be >= 2, got n = {n}")));
    }
    let p = surface.params()?;
    let euler_curve = -(p.a + p.b);
    Ok(3 * p.a + p.b + (n - 1) * (profile.total() - euler_curve) - 2 * profile.essential())
}

/// The forced double/sixfold counts for an exponent-two ball-quotient
/// candidate, as exact rationals, plus the feasibility verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleSixfold {
    pub t2: BigRational,
    pub t6: BigRational,
    /// True iff both counts are nonnegative integers.
    pub feasible: bool,
    /// The integer counts when feasible.
    pub counts: Option<(i64, i64)>,
}

/// Solves for the only double/sixfold counts an exponent-two ball-quotient
/// candidate may carry:
/// `t2 = (a k^2 - 21 a k - 10 b k)/12`, `t6 = (a k^2 + 3 a k + 2 b k)/36`.
///
/// Infeasibility (a negative or non-integer count) is a result, not an
/// error; it is itself a nonexistence witness.
pub fn required_double_sixfold(a: i64, b: i64, k: i64) -> Result<DoubleSixfold, Error> {
    if a < 1 {
        return Err(Error::Domain(format!("ampleness requires a >= 1, got a = {a}")));
    }
    if k < 5 {
        return Err(Error::Domain(format!("requires k >= 5, got k = {k}")));
    }
    let (a, b, k) = (a as i128, b as i128, k as i128);
    let t2 = BigRational::new(BigInt::from(a * k * k - 21 * a * k - 10 * b * k), BigInt::from(12));
    let t6 = BigRational::new(BigInt::from(a * k * k + 3 * a * k + 2 * b * k), BigInt::from(36));
    let integral = t2.is_integer() && t6.is_integer();
    let nonneg = !t2.is_negative() && !t6.is_negative();
    let feasible = integral && nonneg;
    let counts = if feasible {
        Some((
            t2.to_integer().to_i64().expect("desk-scale count"),
            t6.to_integer().to_i64().expect("desk-scale count"),
        ))
    } else {
        None
    };
    Ok(DoubleSixfold { t2, t6, feasible, counts })
}

/// A surface family, either fully symbolic over its parameter or pinned to
/// a concrete instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyPattern {
    Hirzebruch { e: Option<i64> },
    NefCanonical { fixed: Option<NefParams> },
    Plane { d: Option<i64> },
}

/// A concrete nef-canonical instance for numeric certificate replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NefParams {
    pub a: i64,
    pub b: i64,
    pub delta: i64,
}

impl FamilyPattern {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilyPattern::Hirzebruch { .. } => "hirzebruch",
            FamilyPattern::NefCanonical { .. } => "nef_canonical",
            FamilyPattern::Plane { .. } => "plane",
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(
            self,
            FamilyPattern::Hirzebruch { e: None }
                | FamilyPattern::NefCanonical { fixed: None }
                | FamilyPattern::Plane { d: None }
        )
    }
}

/// One verified relation in a certificate. `anchor` names the displayed
/// equation the step instantiates, so a failure localizes immediately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertStep {
    pub relation: String,
    pub anchor: String,
    pub verified: bool,
}

/// The contradictory relation a certificate ends in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conclusion {
    pub relation: String,
    pub detail: String,
}

/// A structured replay of one nonexistence derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub id: String,
    pub family: FamilyPattern,
    pub n: i64,
    pub steps: Vec<CertStep>,
    pub conclusion: Conclusion,
    pub valid: bool,
}

fn t_var(r: i64) -> &'static str {
    match r {
        2 => "t2",
        3 => "t3",
        4 => "t4",
        6 => "t6",
        _ => unreachable!("only admissible supports occur in certificates"),
    }
}

/// The general Hirzebruch polynomial `H(n)` as a polynomial in
/// `a, b, delta, k` and the `t_r` of the given support.
fn h_general(n: i64, support: &[i64]) -> Poly {
    let a = Poly::var("a");
    let b = Poly::var("b");
    let delta = Poly::var("delta");
    let k = Poly::var("k");
    let mut f0 = Poly::zero();
    let mut f1 = Poly::zero();
    for &r in support {
        let t = Poly::var(t_var(r));
        f0 = f0.add(&t);
        f1 = f1.add(&t.scale(&BigRational::from(BigInt::from(r))));
    }
    let t2 = if support.contains(&2) { Poly::var("t2") } else { Poly::zero() };

    let c2 = delta
        .add(&Poly::int(2).mul(&a).add(&b).mul(&k))
        .add(&f0);
    let c1 = Poly::zero()
        .sub(&a.add(&b).mul(&k))
        .sub(&f1.scale(&BigRational::from(BigInt::from(2))))
        .add(&f0.scale(&BigRational::from(BigInt::from(2))));
    let c0 = Poly::zero()
        .sub(&a.mul(&k))
        .add(&f1.scale(&BigRational::from(BigInt::from(2))))
        .add(&f0)
        .sub(&t2.scale(&BigRational::from(BigInt::from(4))));

    c2.scale(&BigRational::from(BigInt::from(n * n)))
        .add(&c1.scale(&BigRational::from(BigInt::from(n))))
        .add(&c0)
}

/// The forced counts of [`required_double_sixfold`] as polynomials in
/// `a, b, k`.
fn forced_counts_polys() -> (Poly, Poly) {
    let a = Poly::var("a");
    let b = Poly::var("b");
    let k = Poly::var("k");
    let k2 = k.mul(&k);
    let t2 = a
        .mul(&k2)
        .sub(&a.mul(&k).scale(&BigRational::from(BigInt::from(21))))
        .sub(&b.mul(&k).scale(&BigRational::from(BigInt::from(10))))
        .scale(&BigRational::new(BigInt::from(1), BigInt::from(12)));
    let t6 = a
        .mul(&k2)
        .add(&a.mul(&k).scale(&BigRational::from(BigInt::from(3))))
        .add(&b.mul(&k).scale(&BigRational::from(BigInt::from(2))))
        .scale(&BigRational::new(BigInt::from(1), BigInt::from(36)));
    (t2, t6)
}

struct FamilyContext {
    /// Substitutions taking `(a, b, delta)` to the family parameterization.
    subs: Vec<(&'static str, Poly)>,
    /// Lower bounds for the free variables after substitution (without t's).
    bounds: Vec<(&'static str, i64)>,
    id: String,
    label: String,
}

fn family_context(family: &FamilyPattern, n: i64) -> Result<FamilyContext, Error> {
    match *family {
        FamilyPattern::Hirzebruch { e } => {
            if let Some(e) = e {
                if e < 2 {
                    return Err(Error::UnsupportedCase(format!(
                        "the Hirzebruch derivation requires e >= 2, got e = {e}"
                    )));
                }
            }
            let e_poly = match e {
                Some(value) => Poly::int(value),
                None => Poly::var("e"),
            };
            let mut bounds = alloc::vec![("k", 5)];
            if e.is_none() {
                bounds.push(("e", 2));
            }
            Ok(FamilyContext {
                subs: alloc::vec![
                    ("a", e_poly.add(&Poly::int(2))),
                    ("b", e_poly.neg().sub(&Poly::int(4))),
                    ("delta", Poly::int(4)),
                ],
                bounds,
                id: match e {
                    Some(e) => format!("hirzebruch-e{e}-n{n}"),
                    None => format!("hirzebruch-n{n}"),
                },
                label: match e {
                    Some(e) => format!("Hirzebruch surface, e = {e}"),
                    None => String::from("Hirzebruch surface, symbolic e >= 2"),
                },
            })
        }
        FamilyPattern::Plane { d } => {
            let d_min = if n == 2 { 3 } else { 2 };
            if let Some(d) = d {
                if d < d_min {
                    return Err(Error::UnsupportedCase(format!(
                        "the plane derivation at n = {n} requires d >= {d_min}, got d = {d}"
                    )));
                }
            }
            let d_poly = match d {
                Some(value) => Poly::int(value),
                None => Poly::var("d"),
            };
            let mut bounds = alloc::vec![("k", 5)];
            if d.is_none() {
                bounds.push(("d", d_min));
            }
            Ok(FamilyContext {
                subs: alloc::vec![
                    ("a", d_poly.mul(&d_poly)),
                    ("b", d_poly.scale(&BigRational::from(BigInt::from(-3)))),
                    ("delta", Poly::zero()),
                ],
                bounds,
                id: match d {
                    Some(d) => format!("plane-d{d}-n{n}"),
                    None => format!("plane-n{n}"),
                },
                label: match d {
                    Some(d) => format!("plane configurations, d = {d}"),
                    None => format!("plane configurations, symbolic d >= {d_min}"),
                },
            })
        }
        FamilyPattern::NefCanonical { fixed } => {
            if let Some(p) = fixed {
                if p.a < 1 || p.b < 0 || p.delta < 0 {
                    return Err(Error::UnsupportedCase(format!(
                        "nef-canonical instance requires a >= 1, b >= 0, delta >= 0, got (a, b, delta) = ({}, {}, {})",
                        p.a, p.b, p.delta
                    )));
                }
            }
            let (subs, mut bounds) = match fixed {
                Some(p) => (
                    alloc::vec![
                        ("a", Poly::int(p.a)),
                        ("b", Poly::int(p.b)),
                        ("delta", Poly::int(p.delta)),
                    ],
                    alloc::vec![],
                ),
                None => (alloc::vec![], alloc::vec![("a", 1), ("b", 0), ("delta", 0)]),
            };
            bounds.push(("k", 5));
            Ok(FamilyContext {
                subs,
                bounds,
                id: match fixed {
                    Some(p) => format!("nef-a{}-b{}-delta{}-n{n}", p.a, p.b, p.delta),
                    None => format!("nef-n{n}"),
                },
                label: match fixed {
                    Some(p) => format!(
                        "nef canonical surface, (a, b, delta) = ({}, {}, {})",
                        p.a, p.b, p.delta
                    ),
                    None => String::from("nef canonical surface, symbolic a >= 1, b >= 0, delta >= 0"),
                },
            })
        }
    }
}

fn apply_subs(poly: &Poly, subs: &[(&'static str, Poly)]) -> Poly {
    let mut out = poly.clone();
    for (var, replacement) in subs {
        out = out.substitute(var, replacement);
    }
    out
}

/// Grid ranges used for the numeric confirmation steps.
const GRID_PARAM_MAX: i64 = 50;
const GRID_K_MAX: i64 = 200;
const GRID_T_SAMPLES: [i64; 2] = [0, 7];

/// Numerically confirms that `poly > 0` over the integer grid spanned by
/// `bounds` (parameters up to [`GRID_PARAM_MAX`], `k` up to
/// [`GRID_K_MAX`], t-counts sampled from [`GRID_T_SAMPLES`]). Returns the
/// number of grid points checked and the number of violations.
fn grid_confirm_positive(poly: &Poly, bounds: &[(&'static str, i64)]) -> (u64, u64) {
    use num_integer::Integer;
    use num_traits::One;

    let vars = poly.variables();

    // Clear denominators once so grid points evaluate in machine integers;
    // the scale factor is positive, so the sign test is unchanged.
    let raw = poly.terms();
    let mut denom_lcm = BigInt::one();
    for (_, c) in &raw {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let terms: Vec<(Vec<(usize, u32)>, i128)> = raw
        .iter()
        .map(|(m, c)| {
            let coeff = (c * BigRational::from(denom_lcm.clone()))
                .to_integer()
                .to_i128()
                .expect("certificate coefficients are small");
            let idx = m
                .iter()
                .map(|&(v, e)| (vars.iter().position(|&x| x == v).expect("own variable"), e))
                .collect();
            (idx, coeff)
        })
        .collect();

    fn values_for(var: &str, lb: i64) -> Vec<i64> {
        if var == "k" {
            (lb..=GRID_K_MAX).collect()
        } else if var.starts_with('t') {
            GRID_T_SAMPLES.iter().copied().filter(|&t| t >= lb).collect()
        } else if var == "delta" {
            // Representative base-surface gaps.
            [0, 1, 4, 9].into_iter().filter(|&v| v >= lb).collect()
        } else if var == "a" || var == "b" {
            // Coarser box for the two-parameter family axis.
            (lb..=20).collect()
        } else {
            (lb..=GRID_PARAM_MAX).collect()
        }
    }

    let axes: Vec<Vec<i64>> = vars
        .iter()
        .map(|&v| {
            let lb = bounds.iter().find(|(b, _)| *b == v).map(|&(_, lb)| lb).unwrap_or(0);
            values_for(v, lb)
        })
        .collect();

    fn recurse(
        terms: &[(Vec<(usize, u32)>, i128)],
        axes: &[Vec<i64>],
        depth: usize,
        values: &mut [i128],
        checked: &mut u64,
        violations: &mut u64,
    ) {
        if depth == axes.len() {
            *checked += 1;
            let mut total: i128 = 0;
            for (m, c) in terms {
                let mut term = *c;
                for &(vi, e) in m {
                    for _ in 0..e {
                        term *= values[vi];
                    }
                }
                total += term;
            }
            if total <= 0 {
                *violations += 1;
            }
            return;
        }
        for &value in &axes[depth] {
            values[depth] = value as i128;
            recurse(terms, axes, depth + 1, values, checked, violations);
        }
    }

    let mut values = alloc::vec![0i128; vars.len()];
    let mut checked = 0u64;
    let mut violations = 0u64;
    recurse(&terms, &axes, 0, &mut values, &mut checked, &mut violations);
    (checked, violations)
}

/// Replays the nonexistence derivation for the family at exponent
/// `n in {2, 3, 5}` and returns the machine-checked certificate.
///
/// Symbolic families verify sign statements by polynomial coefficient
/// analysis over the family's constraint box; fixed instances substitute
/// the parameter first. Both end with an exhaustive numeric confirmation
/// on an integer grid.
pub fn certify_nonexistence(family: &FamilyPattern, n: i64) -> Result<Certificate, Error> {
    if !matches!(n, 2 | 3 | 5) {
        return Err(Error::UnsupportedCase(format!(
            "no admissible multiplicity exists for exponent n = {n}; nothing to certify"
        )));
    }
    let ctx = family_context(family, n)?;
    let mut steps = Vec::new();
    let push = |steps: &mut Vec<CertStep>, relation: String, anchor: String, verified: bool| {
        steps.push(CertStep { relation, anchor, verified });
    };

    let four = BigRational::from(BigInt::from(4));

    let conclusion;
    match n {
        3 => {
            // H(3) on double/quadruple support collapses to a strictly
            // positive expression.
            let h = h_general(3, &[2, 4]);
            let reduced = Poly::var("delta")
                .scale(&BigRational::new(BigInt::from(9), BigInt::from(4)))
                .add(
                    &Poly::var("a")
                        .scale(&BigRational::new(BigInt::from(7), BigInt::from(2)))
                        .add(&Poly::var("b").scale(&BigRational::new(BigInt::from(3), BigInt::from(2))))
                        .mul(&Poly::var("k")),
                )
                .add(&Poly::var("t2"));
            let identity = h.sub(&reduced.scale(&four)).is_zero();
            push(
                &mut steps,
                String::from(
                    "H(3) with only double and quadruple points equals 4 * ((9/4)delta + ((7/2)a + (3/2)b)k + t2)",
                ),
                String::from("H(3) = 0 reduction on {2,4}-support"),
                identity,
            );

            let specialized = apply_subs(&reduced, &ctx.subs);
            let mut bounds = ctx.bounds.clone();
            bounds.push(("t2", 0));
            let positive = specialized.positive_on(&bounds);
            push(
                &mut steps,
                format!("the reduced form is strictly positive for {}", ctx.label),
                String::from("0 = (9/4)delta(W) + ((7/2)a + (3/2)b)k + t2 > 0"),
                positive,
            );

            let (checked, violations) = grid_confirm_positive(&specialized, &bounds);
            push(
                &mut steps,
                format!("numeric grid confirmation: {checked} points, {violations} violations"),
                String::from("exhaustive grid replay of the positivity step"),
                violations == 0 && checked > 0,
            );

            conclusion = match family {
                FamilyPattern::Hirzebruch { .. } => Conclusion {
                    relation: String::from("0 = 9 + (2e+1)k + t2 > 0"),
                    detail: format!("contradiction for {}; no exponent-3 ball-quotient cover", ctx.label),
                },
                _ => Conclusion {
                    relation: String::from("0 = (9/4)delta(W) + ((7/2)a + (3/2)b)k + t2 > 0"),
                    detail: format!("contradiction for {}; no exponent-3 ball-quotient cover", ctx.label),
                },
            };
            // For the Hirzebruch family, tie the reduced form to the
            // classical display 9 + (2e+1)k + t2.
            if matches!(family, FamilyPattern::Hirzebruch { e: None }) {
                let display = Poly::int(9)
                    .add(
                        &Poly::var("e")
                            .scale(&BigRational::from(BigInt::from(2)))
                            .add(&Poly::int(1))
                            .mul(&Poly::var("k")),
                    )
                    .add(&Poly::var("t2"));
                push(
                    &mut steps,
                    String::from("specialization identity: reduced form equals 9 + (2e+1)k + t2"),
                    String::from("0 = H(3)/4 = 9 + (2e+1)k + t2"),
                    specialized.sub(&display).is_zero(),
                );
            }
        }
        5 => {
            let h = h_general(5, &[2, 3]);
            let reduced = Poly::var("delta")
                .scale(&BigRational::new(BigInt::from(25), BigInt::from(4)))
                .add(
                    &Poly::var("a")
                        .scale(&BigRational::from(BigInt::from(11)))
                        .add(&Poly::var("b").scale(&BigRational::from(BigInt::from(5))))
                        .mul(&Poly::var("k")),
                )
                .add(&Poly::var("t2").scale(&four))
                .add(&Poly::var("t3").scale(&BigRational::from(BigInt::from(3))));
            let identity = h.sub(&reduced.scale(&four)).is_zero();
            push(
                &mut steps,
                String::from(
                    "H(5) with only double and triple points equals 4 * ((25/4)delta + (11a + 5b)k + 4 t2 + 3 t3)",
                ),
                String::from("H(5) = 0 reduction on {2,3}-support"),
                identity,
            );

            let specialized = apply_subs(&reduced, &ctx.subs);
            let mut bounds = ctx.bounds.clone();
            bounds.push(("t2", 0));
            bounds.push(("t3", 0));
            let positive = specialized.positive_on(&bounds);
            push(
                &mut steps,
                format!("the reduced form is strictly positive for {}", ctx.label),
                String::from("0 = (25/4)delta(W) + (11a + 5b)k + 4t2 + 3t3 > 0"),
                positive,
            );

            let (checked, violations) = grid_confirm_positive(&specialized, &bounds);
            push(
                &mut steps,
                format!("numeric grid confirmation: {checked} points, {violations} violations"),
                String::from("exhaustive grid replay of the positivity step"),
                violations == 0 && checked > 0,
            );

            conclusion = match family {
                FamilyPattern::Hirzebruch { .. } => Conclusion {
                    relation: String::from("0 = 25 + (6e+2)k + 4t2 + 3t3 > 0"),
                    detail: format!("contradiction for {}; no exponent-5 ball-quotient cover", ctx.label),
                },
                _ => Conclusion {
                    relation: String::from("0 = (25/4)delta(W) + (11a + 5b)k + 4t2 + 3t3 > 0"),
                    detail: format!("contradiction for {}; no exponent-5 ball-quotient cover", ctx.label),
                },
            };
            if matches!(family, FamilyPattern::Hirzebruch { e: None }) {
                let display = Poly::int(25)
                    .add(
                        &Poly::var("e")
                            .scale(&BigRational::from(BigInt::from(6)))
                            .add(&Poly::int(2))
                            .mul(&Poly::var("k")),
                    )
                    .add(&Poly::var("t2").scale(&four))
                    .add(&Poly::var("t3").scale(&BigRational::from(BigInt::from(3))));
                push(
                    &mut steps,
                    String::from("specialization identity: reduced form equals 25 + (6e+2)k + 4t2 + 3t3"),
                    String::from("0 = H(5)/4 = 25 + (6e+2)k + 4t2 + 3t3"),
                    specialized.sub(&display).is_zero(),
                );
            }
        }
        2 => {
            // Step 1: H(2) on double/sixfold support is the exponent-two
            // ball-quotient condition 4 delta + (5a+2b)k + t2 - 3 t6.
            let h = h_general(2, &[2, 6]);
            let condition = Poly::var("delta")
                .scale(&four)
                .add(
                    &Poly::var("a")
                        .scale(&BigRational::from(BigInt::from(5)))
                        .add(&Poly::var("b").scale(&BigRational::from(BigInt::from(2))))
                        .mul(&Poly::var("k")),
                )
                .add(&Poly::var("t2"))
                .sub(&Poly::var("t6").scale(&BigRational::from(BigInt::from(3))));
            push(
                &mut steps,
                String::from(
                    "H(2) with only double and sixfold points equals 4 delta + (5a+2b)k + t2 - 3 t6",
                ),
                String::from("4 delta(W) + (5a+2b)k + t2 = 3 t6"),
                h.sub(&condition).is_zero(),
            );

            // Step 2: substituting the forced counts simplifies the
            // condition to 4 delta + (3a+b)k.
            let (t2_forced, t6_forced) = forced_counts_polys();
            let substituted = condition
                .substitute("t2", &t2_forced)
                .substitute("t6", &t6_forced);
            let simplified = Poly::var("delta").scale(&four).add(
                &Poly::var("a")
                    .scale(&BigRational::from(BigInt::from(3)))
                    .add(&Poly::var("b"))
                    .mul(&Poly::var("k")),
            );
            push(
                &mut steps,
                String::from(
                    "substituting t2 = (a k^2 - 21 a k - 10 b k)/12 and t6 = (a k^2 + 3 a k + 2 b k)/36 yields 4 delta + (3a+b)k",
                ),
                String::from("t2 = (ak^2 - 21ak - 10bk)/12 , t6 = (ak^2 + 3ak + 2bk)/36"),
                substituted.sub(&simplified).is_zero(),
            );

            // Step 3: specialize to the family and verify the final
            // contradiction by sign analysis.
            let specialized = apply_subs(&simplified, &ctx.subs);
            let bounds = ctx.bounds.clone();
            match family {
                FamilyPattern::Hirzebruch { .. } => {
                    // 16 + (2e+2)k = 2((e+1)k + 8).
                    let e_poly = match family {
                        FamilyPattern::Hirzebruch { e: Some(e) } => Poly::int(*e),
                        _ => Poly::var("e"),
                    };
                    let half = e_poly
                        .add(&Poly::int(1))
                        .mul(&Poly::var("k"))
                        .add(&Poly::int(8));
                    push(
                        &mut steps,
                        String::from("specialization identity: 4 delta + (3a+b)k = 2((e+1)k + 8)"),
                        String::from("-8 = (e+1)k"),
                        specialized
                            .sub(&half.scale(&BigRational::from(BigInt::from(2))))
                            .is_zero(),
                    );
                    push(
                        &mut steps,
                        format!("(e+1)k + 8 is strictly positive for {}", ctx.label),
                        String::from("-8 = (e+1)k is impossible"),
                        half.positive_on(&bounds),
                    );
                    let (checked, violations) = grid_confirm_positive(&half, &bounds);
                    push(
                        &mut steps,
                        format!("numeric grid confirmation: {checked} points, {violations} violations"),
                        String::from("exhaustive grid replay of the final identity"),
                        violations == 0 && checked > 0,
                    );
                    conclusion = Conclusion {
                        relation: String::from("-8 = (e+1)k"),
                        detail: format!(
                            "impossible for {}, k >= 5; no exponent-2 ball-quotient cover",
                            ctx.label
                        ),
                    };
                }
                FamilyPattern::Plane { .. } => {
                    // 12 * (3d^2 - 3d)k = 36 d(d-1) k.
                    let d_poly = match family {
                        FamilyPattern::Plane { d: Some(d) } => Poly::int(*d),
                        _ => Poly::var("d"),
                    };
                    let dd1k = d_poly
                        .mul(&d_poly.sub(&Poly::int(1)))
                        .mul(&Poly::var("k"));
                    push(
                        &mut steps,
                        String::from("specialization identity: 12 * (4 delta + (3a+b)k) = 36 d(d-1) k"),
                        String::from("36 d(d-1) = 0"),
                        specialized
                            .scale(&BigRational::from(BigInt::from(12)))
                            .sub(&dd1k.scale(&BigRational::from(BigInt::from(36))))
                            .is_zero(),
                    );
                    push(
                        &mut steps,
                        format!("d(d-1)k is strictly positive for {}", ctx.label),
                        String::from("36 d(d-1) = 0 is impossible"),
                        dd1k.positive_on(&bounds),
                    );
                    let (checked, violations) = grid_confirm_positive(&dd1k, &bounds);
                    push(
                        &mut steps,
                        format!("numeric grid confirmation: {checked} points, {violations} violations"),
                        String::from("exhaustive grid replay of the final identity"),
                        violations == 0 && checked > 0,
                    );
                    conclusion = Conclusion {
                        relation: String::from("36d(d-1) = 0"),
                        detail: format!(
                            "impossible for {}, k >= 5; no exponent-2 ball-quotient cover",
                            ctx.label
                        ),
                    };
                }
                FamilyPattern::NefCanonical { .. } => {
                    // The condition forces (3a+b)k = -4 delta with
                    // (3a+b)k > 0 and -4 delta <= 0.
                    let strict = apply_subs(
                        &Poly::var("a")
                            .scale(&BigRational::from(BigInt::from(3)))
                            .add(&Poly::var("b"))
                            .mul(&Poly::var("k")),
                        &ctx.subs,
                    );
                    let delta_term = apply_subs(&Poly::var("delta").scale(&four), &ctx.subs);
                    push(
                        &mut steps,
                        String::from("(3a+b)k is strictly positive on the constraint box"),
                        String::from("0 < (3a+b)k"),
                        strict.positive_on(&bounds),
                    );
                    push(
                        &mut steps,
                        String::from("4 delta(W) is nonnegative on the constraint box"),
                        String::from("-4 delta(W) <= 0"),
                        delta_term.nonneg_on(&bounds),
                    );
                    let (checked, violations) = grid_confirm_positive(&strict, &bounds);
                    push(
                        &mut steps,
                        format!("numeric grid confirmation: {checked} points, {violations} violations"),
                        String::from("exhaustive grid replay of the strict-positivity step"),
                        violations == 0 && checked > 0,
                    );
                    conclusion = Conclusion {
                        relation: String::from("0 < (3a+b)k = -4*delta(W) <= 0"),
                        detail: format!(
                            "contradiction for {}, k >= 5; no exponent-2 ball-quotient cover",
                            ctx.label
                        ),
                    };
                }
            }
        }
        _ => unreachable!(),
    }

    let valid = steps.iter().all(|s| s.verified);
    Ok(Certificate { id: ctx.id, family: *family, n, steps, conclusion, valid })
}
