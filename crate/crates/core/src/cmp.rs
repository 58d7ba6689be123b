//! The C_F^1-set family for m = 3 and its identification with the
//! non-linear family through the semilinear map
//! `θ(c_1, c_2, c_3) = (c_2^{q²}, c_3^{q²}, c_1^{q²})`.

use std::sync::Arc;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::codes::{
    self, build_axis, build_family, build_j, build_pi, norm_representative, Component, DistanceMode,
    MrdReport, RankCode, SymmetryGroup,
};
use crate::error::{Error, Result};
use crate::geometry::{self, exterior_splash, proj_image, ProjPoint};
use crate::gfield::{Elt, FieldCtx};
use crate::io::fq_label;
use crate::linforms::{singer_act, Word};

fn require_m3(ctx: &FieldCtx) -> Result<()> {
    if ctx.m() != 3 {
        return Err(Error::InvalidParameter(format!("needs m = 3, got {}", ctx.m())));
    }
    Ok(())
}

fn require_fq_star(ctx: &FieldCtx, a: Elt) -> Result<()> {
    if a.is_zero() || !ctx.in_fq(a) {
        return Err(Error::NotInFqStar);
    }
    Ok(())
}

/// γ_a = {(λ, λx^{q+1}, λx^q) : λ ≠ 0, N(x) = a}.
pub fn build_gamma(ctx: &FieldCtx, a: Elt) -> Result<IndexSet<Word>> {
    require_m3(ctx)?;
    let fiber = ctx.norm_fiber(a)?;
    let mut out = IndexSet::new();
    for lambda in ctx.units() {
        for &x in &fiber {
            let xq = ctx.frobenius(x, 1);
            out.insert(Word(vec![lambda, ctx.mul(lambda, ctx.mul(xq, x)), ctx.mul(lambda, xq)]));
        }
    }
    Ok(out)
}

/// Z_a = {(λx, -λαx^q, 0) : λ, x ≠ 0} with N(α) = a.
pub fn build_z(ctx: &FieldCtx, a: Elt) -> Result<IndexSet<Word>> {
    require_m3(ctx)?;
    let alpha = norm_representative(ctx, a)?;
    let rep = Word(vec![Elt::ONE, ctx.neg(alpha), Elt::ZERO]);
    let mut out = IndexSet::new();
    for lambda in ctx.units() {
        for x in ctx.units() {
            out.insert(singer_act(ctx, &rep, lambda, x));
        }
    }
    Ok(out)
}

/// A'_2 = {(0, x, 0) : x ≠ 0}.
pub fn build_middle_axis(ctx: &FieldCtx) -> Result<IndexSet<Word>> {
    require_m3(ctx)?;
    Ok(ctx.units().map(|x| Word::unit(3, 1, x)).collect())
}

/// `θ(c_1, c_2, c_3) = (c_2^{q²}, c_3^{q²}, c_1^{q²})`.
pub fn theta(ctx: &FieldCtx, v: &Word) -> Result<Word> {
    require_m3(ctx)?;
    if v.len() != 3 {
        return Err(Error::WordLength { expected: 3, got: v.len() });
    }
    let f = |x: Elt| ctx.frobenius(x, 2);
    Ok(Word(vec![f(v.0[1]), f(v.0[2]), f(v.0[0])]))
}

/// Inverse of [`theta`]: `(c_3^q, c_1^q, c_2^q)`.
pub fn theta_inv(ctx: &FieldCtx, v: &Word) -> Result<Word> {
    require_m3(ctx)?;
    if v.len() != 3 {
        return Err(Error::WordLength { expected: 3, got: v.len() });
    }
    let f = |x: Elt| ctx.frobenius(x, 1);
    Ok(Word(vec![f(v.0[2]), f(v.0[0]), f(v.0[1])]))
}

fn theta_set(ctx: &FieldCtx, s: &IndexSet<Word>) -> IndexSet<Word> {
    s.iter().map(|w| theta(ctx, w).unwrap()).collect()
}

/// `γ_a (a ∈ I) ∪ Z_b (b ∉ I ∪ {0}) ∪ A_1 ∪ A'_2 ∪ {0}`.
#[derive(Clone, Debug)]
pub struct CmpFamily {
    pub set: Vec<Elt>,
    pub words: IndexSet<Word>,
}

impl CmpFamily {
    pub fn build(ctx: &FieldCtx, set: &[Elt]) -> Result<CmpFamily> {
        require_m3(ctx)?;
        let set = codes::normalize_set(ctx, set)?;
        if set.is_empty() {
            return Err(Error::InvalidParameter("the parameter set must be nonempty".into()));
        }
        let mut words = IndexSet::new();
        for &a in &set {
            words.extend(build_gamma(ctx, a)?);
        }
        for b in ctx.fq_units() {
            if !set.contains(&b) {
                words.extend(build_z(ctx, b)?);
            }
        }
        words.extend(build_axis(ctx, 1)?);
        words.extend(build_middle_axis(ctx)?);
        words.insert(Word::zero(3));
        Ok(CmpFamily { set, words })
    }

    /// The words as a code with claimed distance 2.
    pub fn to_code(&self, ctx: Arc<FieldCtx>) -> Result<RankCode> {
        let entries = self.words.iter().map(|w| {
            let tag = if w.is_zero() { Component::Zero } else { Component::Other };
            (w.clone(), tag)
        });
        RankCode::new(ctx, 2, self.set.clone(), entries)
    }
}

/// The Singer symmetry conjugated by θ, which preserves the family.
pub fn conjugated_singer() -> SymmetryGroup {
    let gens = SymmetryGroup::singer()
        .generators()
        .iter()
        .map(|g| {
            let g = g.clone();
            Arc::new(move |ctx: &FieldCtx, w: &Word| {
                theta_inv(ctx, &g(ctx, &theta(ctx, w).unwrap())).unwrap()
            }) as Arc<dyn Fn(&FieldCtx, &Word) -> Word + Send + Sync>
        })
        .collect();
    SymmetryGroup::new(gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub pass: bool,
}

/// For every `a ∈ F_q*`: θ(γ_a) = π_{a⁻¹}, θ(Z_a) = J_{a⁻¹}; also
/// θ(A_1) = A_2 and θ(A'_2) = A_1.
pub fn verify_theta_components(ctx: &FieldCtx) -> Result<Vec<NamedCheck>> {
    require_m3(ctx)?;
    let mut out = Vec::new();
    for a in ctx.fq_units() {
        let inv = ctx.inv(a).unwrap();
        out.push(NamedCheck {
            name: format!("theta(gamma_{}) = pi_inv", fq_label(ctx, a)),
            pass: theta_set(ctx, &build_gamma(ctx, a)?) == build_pi(ctx, inv)?,
        });
        out.push(NamedCheck {
            name: format!("theta(Z_{}) = J_inv", fq_label(ctx, a)),
            pass: theta_set(ctx, &build_z(ctx, a)?) == build_j(ctx, inv)?,
        });
    }
    out.push(NamedCheck {
        name: "theta(A_1) = A_2".into(),
        pass: theta_set(ctx, &build_axis(ctx, 1)?) == build_axis(ctx, 2)?,
    });
    out.push(NamedCheck {
        name: "theta(A'_2) = A_1".into(),
        pass: theta_set(ctx, &build_middle_axis(ctx)?) == build_axis(ctx, 1)?,
    });
    Ok(out)
}

/// Whether every γ_a, A_1 and A'_2 point lies on `X_1 X_2^q - X_3^{q+1} = 0`.
pub fn on_cf1_set(ctx: &FieldCtx) -> Result<bool> {
    require_m3(ctx)?;
    let on = |w: &Word| {
        let [x1, x2, x3] = [w.0[0], w.0[1], w.0[2]];
        let lhs = ctx.mul(x1, ctx.frobenius(x2, 1));
        let rhs = ctx.mul(x3, ctx.frobenius(x3, 1));
        lhs == rhs
    };
    for a in ctx.fq_units() {
        if !build_gamma(ctx, a)?.iter().all(on) {
            return Ok(false);
        }
    }
    Ok(build_axis(ctx, 1)?.iter().all(on) && build_middle_axis(ctx)?.iter().all(on))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmpEquivalenceReport {
    pub size: usize,
    /// θ of the C_F^1 family for I equals the family built on `I⁻¹`.
    pub theta_image_is_family: bool,
    pub mrd: MrdReport,
    pub pass: bool,
}

/// θ maps the C_F^1 family for I onto the non-linear family for I⁻¹, and
/// the C_F^1 family is itself MRD with minimum distance 2.
pub fn verify_cmp_equivalence(ctx: Arc<FieldCtx>, set: &[Elt]) -> Result<CmpEquivalenceReport> {
    let fam = CmpFamily::build(&ctx, set)?;
    let inv: Vec<Elt> = fam.set.iter().map(|&a| ctx.inv(a).unwrap()).collect();
    let target = build_family(ctx.clone(), &inv)?;
    let image = theta_set(&ctx, &fam.words);
    let theta_image_is_family = image.len() == target.len() && image.iter().all(|w| target.contains(w));

    let code = fam.to_code(ctx.clone())?;
    let group = conjugated_singer();
    let min_distance = codes::min_distance_with(&code, DistanceMode::Orbit, &group).ok();
    let bound = code.singleton_bound();
    let mrd = MrdReport {
        size: code.len(),
        claimed_distance: 2,
        singleton_bound: bound.to_string(),
        min_distance,
        mrd: code.len() as u128 == bound && min_distance == Some(2),
    };
    Ok(CmpEquivalenceReport {
        size: fam.words.len(),
        theta_image_is_family,
        pass: theta_image_is_family && mrd.mrd,
        mrd,
    })
}

fn theta_point(ctx: &FieldCtx, p: &ProjPoint) -> ProjPoint {
    let w = theta(ctx, &Word(p.coords().to_vec())).unwrap();
    ProjPoint::new(ctx, &w.0).unwrap()
}

/// Whether the exterior splash of [π_a] on [W] is [J_{a^{m-1}}].
pub fn pi_splash_is_j(ctx: &FieldCtx, a: Elt) -> Result<bool> {
    require_m3(ctx)?;
    let sub = proj_image(ctx, &build_pi(ctx, a)?);
    let splash = exterior_splash(ctx, &sub, &geometry::axis_line(ctx))?;
    let j = proj_image(ctx, &build_j(ctx, ctx.pow(a, 2))?);
    Ok(splash == j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSplashReport {
    pub a: u32,
    pub splash_points: usize,
    pub expected_points: usize,
    /// The splash is `{[(1, x, 0)] : N(x) = -a²}`.
    pub matches_norm_formula: bool,
    pub z_points: usize,
    pub equals_z: bool,
    pub disjoint_from_z: bool,
    /// θ(splash of [γ_a] on [U]) = splash of [π_{a⁻¹}] on [W].
    pub theta_maps_splash: bool,
    pub pass: bool,
}

/// Exterior splash of [γ_a] on the line `X_3 = 0`, compared with the norm
/// formula and with [Z_a]. Passes when the formula holds and, for a ≠ 1,
/// the splash differs from [Z_a]; at a = 1 equality is only reported.
pub fn verify_gamma_splash(ctx: &FieldCtx, a: Elt) -> Result<GammaSplashReport> {
    require_m3(ctx)?;
    require_fq_star(ctx, a)?;
    let sub = proj_image(ctx, &build_gamma(ctx, a)?);
    let u = geometry::third_coordinate_line(ctx);
    let splash = exterior_splash(ctx, &sub, &u)?;
    let target = ctx.neg(ctx.mul(a, a));
    let expected: IndexSet<ProjPoint> = ctx
        .units()
        .filter(|&x| ctx.norm(x) == target)
        .map(|x| ProjPoint::new(ctx, &[Elt::ONE, x, Elt::ZERO]).unwrap())
        .collect();
    let z = proj_image(ctx, &build_z(ctx, a)?);
    let matches_norm_formula = splash == expected;
    let equals_z = splash == z;
    let disjoint_from_z = splash.is_disjoint(&z);

    let inv = ctx.inv(a).unwrap();
    let pi_sub = proj_image(ctx, &build_pi(ctx, inv)?);
    let pi_splash = exterior_splash(ctx, &pi_sub, &geometry::axis_line(ctx))?;
    let moved: IndexSet<ProjPoint> = splash.iter().map(|p| theta_point(ctx, p)).collect();
    let theta_maps_splash = moved == pi_splash;

    let q = ctx.q();
    let size = ((q.pow(3) - 1) / (q - 1)) as usize;
    let pass = matches_norm_formula
        && theta_maps_splash
        && splash.len() == size
        && (a == Elt::ONE || !equals_z);
    Ok(GammaSplashReport {
        a: a.packed(),
        splash_points: splash.len(),
        expected_points: expected.len(),
        matches_norm_formula,
        z_points: z.len(),
        equals_z,
        disjoint_from_z,
        theta_maps_splash,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linforms::all_words;

    fn f27() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(3, 1, 3, None).unwrap())
    }

    #[test]
    fn component_sizes() {
        let ctx = f27();
        let two = ctx.from_int(2);
        let g2 = build_gamma(&ctx, two).unwrap();
        let g1 = build_gamma(&ctx, Elt::ONE).unwrap();
        assert_eq!(g2.len(), 338);
        assert!(g1.is_disjoint(&g2));
        let z = build_z(&ctx, two).unwrap();
        assert_eq!(z.len(), 338);
        assert!(z.iter().all(|w| w.0[2].is_zero()));
        assert!(build_gamma(&ctx, Elt::ZERO).is_err());
        let f16 = FieldCtx::new(2, 1, 4, None).unwrap();
        assert!(build_gamma(&f16, Elt::ONE).is_err());
    }

    #[test]
    fn theta_cubed_is_identity() {
        let ctx = f27();
        for w in all_words(&ctx) {
            let t = theta(&ctx, &w).unwrap();
            assert_eq!(theta_inv(&ctx, &t).unwrap(), w);
            let t3 = theta(&ctx, &theta(&ctx, &t).unwrap()).unwrap();
            assert_eq!(t3, w);
        }
    }

    #[test]
    fn theta_components_q3() {
        let ctx = f27();
        assert!(verify_theta_components(&ctx).unwrap().iter().all(|c| c.pass));
        assert!(on_cf1_set(&ctx).unwrap());
    }

    #[test]
    fn equivalence_q3() {
        let ctx = f27();
        let r = verify_cmp_equivalence(ctx.clone(), &[ctx.from_int(2)]).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.size, 729);
        assert!(verify_cmp_equivalence(ctx.clone(), &[]).is_err());
    }

    #[test]
    fn gamma_splash_q3() {
        let ctx = f27();
        let r = verify_gamma_splash(&ctx, ctx.from_int(2)).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(!r.equals_z && r.disjoint_from_z);
        assert_eq!(r.splash_points, 13);
        let r1 = verify_gamma_splash(&ctx, Elt::ONE).unwrap();
        assert!(r1.pass, "{r1:?}");
        assert!(pi_splash_is_j(&ctx, ctx.from_int(2)).unwrap());
        assert!(pi_splash_is_j(&ctx, Elt::ONE).unwrap());
    }
}
