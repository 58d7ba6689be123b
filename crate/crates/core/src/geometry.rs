//! Projective images of words, linear sets, field reduction and the spread
//! and Segre structure of PG(m²-1, q).
//!
//! Two models of V(m, q^m) are used. In the u-model a vector `β` is reduced
//! by [`field_reduce`] to the m×m matrix over F_q whose k-th column holds the
//! coordinates of `β_k` in the basis `u_i = g^{i-1}`. In the cyclic model a
//! vector `α` is the Dickson generator of [`cyclic_reduce`]. The two are tied
//! by the Moore matrix `T` with `T[j][i] = u_i^{q^j}`:
//!
//! ```text
//! dickson(T β) = T · field_reduce(β) · Tᵀ
//! ```
//!
//! so a code word `w` becomes the point `field_reduce(T⁻¹ w)` of
//! PG(m²-1, q), with the same rank.

use std::collections::HashMap;

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{self, pi_coefficients};
use crate::error::{Error, Result};
use crate::io::fq_label;
use crate::fp::Span;
use crate::gfield::{Elt, FieldCtx};
use crate::linforms::{self, dickson, DicksonMat, Word};
use crate::matrix::Matrix;

/// A projective point: nonzero coordinates scaled so the first nonzero one
/// is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint(Vec<Elt>);

impl ProjPoint {
    /// Normalizes `v`; `None` for the zero vector.
    pub fn new(ctx: &FieldCtx, v: &[Elt]) -> Option<ProjPoint> {
        let lead = *v.iter().find(|x| !x.is_zero())?;
        let inv = ctx.inv(lead).unwrap();
        Some(ProjPoint(v.iter().map(|&x| ctx.mul(x, inv)).collect()))
    }

    pub fn coords(&self) -> &[Elt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `[X] = {[v] : v ∈ X, v ≠ 0}`.
pub fn proj_image<'a>(ctx: &FieldCtx, vs: impl IntoIterator<Item = &'a Word>) -> IndexSet<ProjPoint> {
    vs.into_iter()
        .filter_map(|w| ProjPoint::new(ctx, w.coords()))
        .collect()
}

/// All points of PG(n-1, q^m), in lexicographic order of normalized
/// coordinates.
pub fn all_points(ctx: &FieldCtx, n: usize) -> Vec<ProjPoint> {
    let elems: Vec<Elt> = ctx.elements().collect();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = elems.len().pow(free as u32);
        for mut idx in 0..total {
            let mut v = vec![Elt::ZERO; n];
            v[lead] = Elt::ONE;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = elems[idx % elems.len()];
                idx /= elems.len();
            }
            out.push(ProjPoint(v));
        }
    }
    out
}

/// F_q-span of vectors over F_{q^m}, as an F_p-span closed under the
/// F_q generator.
pub struct FqSpan<'a> {
    ctx: &'a FieldCtx,
    span: Span,
}

impl<'a> FqSpan<'a> {
    pub fn new(ctx: &'a FieldCtx) -> FqSpan<'a> {
        FqSpan {
            ctx,
            span: Span::new(ctx.p()),
        }
    }

    fn digits(&self, v: &[Elt]) -> Vec<u32> {
        v.iter().flat_map(|&x| self.ctx.coeffs(x)).collect()
    }

    /// Adds `v`; returns whether the F_q-dimension grew.
    pub fn insert(&mut self, v: &[Elt]) -> bool {
        let ctx = self.ctx;
        let w = ctx.fq_generator();
        let mut c = Elt::ONE;
        let mut grew = false;
        for _ in 0..ctx.h() {
            let scaled: Vec<Elt> = v.iter().map(|&x| ctx.mul(c, x)).collect();
            let d = self.digits(&scaled);
            grew |= self.span.insert(&d);
            c = ctx.mul(c, w);
        }
        grew
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        self.span.contains(&self.digits(v))
    }

    pub fn dim(&self) -> usize {
        self.span.dim() / self.ctx.h()
    }
}

/// All F_q-combinations of `basis`, zero included.
fn fq_span_vectors(ctx: &FieldCtx, basis: &[Vec<Elt>]) -> Vec<Vec<Elt>> {
    let n = basis.first().map_or(0, Vec::len);
    let mut out = vec![vec![Elt::ZERO; n]];
    let fq = ctx.fq_elements();
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * fq.len());
        for v in &out {
            for &c in &fq {
                next.push(
                    v.iter()
                        .zip(b)
                        .map(|(&x, &y)| ctx.add(x, ctx.mul(c, y)))
                        .collect(),
                );
            }
        }
        out = next;
    }
    out
}

/// Whether the F_q-span of `basis` (rank r) has `(q^r - 1)/(q - 1)`
/// projective points.
pub fn is_scattered(ctx: &FieldCtx, basis: &[Vec<Elt>]) -> Result<bool> {
    let mut span = FqSpan::new(ctx);
    for b in basis {
        if !span.insert(b) {
            return Err(Error::DependentBasis);
        }
    }
    let r = basis.len() as u32;
    let points: IndexSet<ProjPoint> = fq_span_vectors(ctx, basis)
        .iter()
        .filter_map(|v| ProjPoint::new(ctx, v))
        .collect();
    let q = ctx.q();
    Ok(points.len() as u64 == (q.pow(r) - 1) / (q - 1))
}

/// F_q-basis `(u, u^q, …, u^{q^{m-1}})`, `u = g^i`, of the cyclic model of
/// V(m, q); its nonzero vectors are π_1 up to F_{q^m}-scalars.
pub fn cyclic_model_basis(ctx: &FieldCtx) -> Vec<Vec<Elt>> {
    (0..ctx.m())
        .map(|i| {
            let u = ctx.exp_of(i as u64);
            (0..ctx.m()).map(|j| ctx.frobenius(u, j)).collect()
        })
        .collect()
}

/// F_q-basis `(u, 0, …, 0, -α u^{q^{m-1}})` with N(α) = a, whose nonzero
/// vectors form J_a up to F_{q^m}-scalars.
pub fn pseudoregulus_basis(ctx: &FieldCtx, a: Elt) -> Result<Vec<Vec<Elt>>> {
    let alpha = codes::norm_representative(ctx, a)?;
    let m = ctx.m();
    Ok((0..m)
        .map(|i| {
            let u = ctx.exp_of(i as u64);
            let mut v = vec![Elt::ZERO; m];
            v[0] = u;
            v[m - 1] = ctx.neg(ctx.mul(alpha, ctx.frobenius(u, m - 1)));
            v
        })
        .collect())
}

/// `τ_α(v) = (v_0, α v_1, α^{1+q} v_2, …)`.
pub fn tau(ctx: &FieldCtx, alpha: Elt, v: &[Elt]) -> Result<Vec<Elt>> {
    if alpha.is_zero() {
        return Err(Error::InvalidParameter("tau needs a nonzero alpha".into()));
    }
    if v.len() != ctx.m() {
        return Err(Error::WordLength {
            expected: ctx.m(),
            got: v.len(),
        });
    }
    let c = pi_coefficients(ctx, alpha);
    Ok(v.iter().zip(c).map(|(&x, c)| ctx.mul(x, c)).collect())
}

/// An m×m matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorMat(Matrix);

impl TensorMat {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.0.rank(ctx)
    }

    /// Row-major entries, as a point of PG(m²-1, q) when nonzero.
    pub fn point(&self, ctx: &FieldCtx) -> Option<ProjPoint> {
        ProjPoint::new(ctx, self.0.entries())
    }

    /// The u-model vector whose reduction this is.
    pub fn unreduce(&self, ctx: &FieldCtx) -> Vec<Elt> {
        let m = self.0.cols();
        (0..m)
            .map(|k| {
                let col: Vec<Elt> = (0..m).map(|j| self.0.get(j, k)).collect();
                ctx.from_fq_coordinates(&col)
            })
            .collect()
    }
}

/// Column k holds the F_q-coordinates of `β_k` in the basis `1, g, …`.
pub fn field_reduce(ctx: &FieldCtx, beta: &[Elt]) -> TensorMat {
    let m = beta.len();
    let cols: Vec<Vec<Elt>> = beta.iter().map(|&b| ctx.fq_coordinates(b)).collect();
    TensorMat(Matrix::from_fn(m, m, |j, k| cols[k][j]))
}

/// The Dickson matrix generated by `alpha`.
pub fn cyclic_reduce(ctx: &FieldCtx, alpha: &[Elt]) -> DicksonMat {
    dickson(ctx, &Word::new(alpha.to_vec()))
}

/// The Moore matrix `T[j][i] = u_i^{q^j}` of the u-basis.
pub fn moore_matrix(ctx: &FieldCtx) -> Matrix {
    let m = ctx.m();
    Matrix::from_fn(m, m, |j, i| ctx.frobenius(ctx.exp_of(i as u64), j))
}

/// Matrix over F_q of multiplication by g in the u-basis (a Singer cycle).
pub fn singer_matrix(ctx: &FieldCtx) -> Matrix {
    let m = ctx.m();
    let cols: Vec<Vec<Elt>> = (0..m)
        .map(|i| ctx.fq_coordinates(ctx.exp_of(i as u64 + 1)))
        .collect();
    Matrix::from_fn(m, m, |j, i| cols[i][j])
}

/// Change of basis to the Singer eigenbasis: row j is the left eigenvector
/// of [`singer_matrix`] for the eigenvalue `g^{q^j}`, scaled so that its
/// value on the coordinates of 1 is 1.
pub fn singer_eigenbasis(ctx: &FieldCtx) -> Result<Matrix> {
    let m = ctx.m();
    let s = singer_matrix(ctx);
    let st = s.transpose();
    let mut rows = Vec::with_capacity(m);
    for j in 0..m {
        let lambda = ctx.frobenius(ctx.generator(), j);
        let shifted = Matrix::from_fn(m, m, |a, b| {
            let x = st.get(a, b);
            if a == b {
                ctx.sub(x, lambda)
            } else {
                x
            }
        });
        let ns = shifted.nullspace(ctx);
        if ns.len() != 1 {
            return Err(Error::Singular);
        }
        let v = &ns[0];
        let one = ctx.fq_coordinates(Elt::ONE);
        let at_one = v
            .iter()
            .zip(&one)
            .fold(Elt::ZERO, |acc, (&x, &c)| ctx.add(acc, ctx.mul(x, c)));
        let inv = ctx.inv(at_one).ok_or(Error::Singular)?;
        rows.push(v.iter().map(|&x| ctx.mul(x, inv)).collect::<Vec<_>>());
    }
    Ok(Matrix::from_fn(m, m, |j, i| rows[j][i]))
}

/// The change of basis between the u-model and the cyclic model.
#[derive(Clone, Debug)]
pub struct Reduction {
    t: Matrix,
    t_inv: Matrix,
}

impl Reduction {
    pub fn new(ctx: &FieldCtx) -> Result<Reduction> {
        let t = singer_eigenbasis(ctx)?;
        let t_inv = t.inverse(ctx)?;
        Ok(Reduction { t, t_inv })
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn t_inv(&self) -> &Matrix {
        &self.t_inv
    }

    /// `T β`.
    pub fn to_cyclic(&self, ctx: &FieldCtx, beta: &[Elt]) -> Vec<Elt> {
        self.t.mul_vec(ctx, beta)
    }

    /// `T⁻¹ α`.
    pub fn to_u_model(&self, ctx: &FieldCtx, alpha: &[Elt]) -> Vec<Elt> {
        self.t_inv.mul_vec(ctx, alpha)
    }

    /// `field_reduce(T⁻¹ α)`, the tensor of a cyclic-model vector.
    pub fn tensor(&self, ctx: &FieldCtx, alpha: &[Elt]) -> TensorMat {
        field_reduce(ctx, &self.to_u_model(ctx, alpha))
    }

    pub fn tensor_point(&self, ctx: &FieldCtx, alpha: &[Elt]) -> Option<ProjPoint> {
        self.tensor(ctx, alpha).point(ctx)
    }

    /// Image of a point of PG(m²-1, q) under the map induced by `τ_α` on
    /// the cyclic model.
    pub fn tau_point(&self, ctx: &FieldCtx, alpha: Elt, point: &ProjPoint) -> Result<ProjPoint> {
        let m = ctx.m();
        let x = TensorMat(Matrix::from_fn(m, m, |i, j| point.0[i * m + j]));
        let a = self.to_cyclic(ctx, &x.unreduce(ctx));
        let img = tau(ctx, alpha, &a)?;
        Ok(self.tensor_point(ctx, &img).unwrap())
    }
}

/// Deterministic sample of `n` vectors of F_{q^m}^m from a ChaCha8 stream.
pub fn sample_vectors(ctx: &FieldCtx, n: usize, seed: u64) -> Vec<Vec<Elt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = ctx.order() as u32;
    (0..n)
        .map(|_| {
            (0..ctx.m())
                .map(|_| ctx.elt(rng.gen_range(0..order)).unwrap())
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub checked: usize,
    /// Sample positions where `dickson(Tβ) ≠ T·field_reduce(β)·Tᵀ` or the
    /// ranks differ.
    pub failures: Vec<usize>,
    pub pass: bool,
}

/// Checks `cyclic_reduce(Tβ) = T · field_reduce(β) · Tᵀ` and the rank
/// equality for every `β` in the sample.
pub fn verify_singer_congruence(ctx: &FieldCtx, red: &Reduction, sample: &[Vec<Elt>]) -> CongruenceReport {
    let tt = red.t.transpose();
    let failures: Vec<usize> = sample
        .par_iter()
        .enumerate()
        .filter(|(_, beta)| {
            let x = field_reduce(ctx, beta);
            let lhs = cyclic_reduce(ctx, &red.to_cyclic(ctx, beta));
            let rhs = red.t.mul(ctx, &x.0).mul(ctx, &tt);
            *lhs.matrix() != rhs || lhs.rank(ctx) != x.rank(ctx)
        })
        .map(|(i, _)| i)
        .collect();
    CongruenceReport {
        checked: sample.len(),
        pass: failures.is_empty(),
        failures,
    }
}

/// Over all nonzero `β`: count of those where
/// rank(cyclic_reduce(Tβ)) ≠ rank(field_reduce(β)). Returns (checked,
/// mismatches).
pub fn rank_agreement(ctx: &FieldCtx, red: &Reduction) -> (usize, usize) {
    let words: Vec<Word> = linforms::all_words(ctx).filter(|w| !w.is_zero()).collect();
    let mismatches = words
        .par_iter()
        .filter(|w| {
            let alpha = Word::new(red.to_cyclic(ctx, w.coords()));
            linforms::rank(ctx, &alpha) != field_reduce(ctx, w.coords()).rank(ctx)
        })
        .count();
    (words.len(), mismatches)
}

/// `Φ(j) = {tensor(α e_j)}`: checks each has F_q-dimension m and that their
/// sum is direct of dimension m².
pub fn verify_cyclic_decomposition(ctx: &FieldCtx, red: &Reduction) -> bool {
    let m = ctx.m();
    let mut total = FqSpan::new(ctx);
    for j in 0..m {
        let mut part = FqSpan::new(ctx);
        for i in 0..m {
            let v = red.tensor(ctx, &Word::unit(m, j, ctx.exp_of(i as u64)).0);
            part.insert(v.0.entries());
            total.insert(v.0.entries());
        }
        if part.dim() != m {
            return false;
        }
    }
    total.dim() == m * m
}

/// Largest q^{m²} for which the spread of PG(m²-1, q) is materialized.
pub const SPREAD_BOUND: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadElement {
    /// The point of PG(m-1, q^m) (u-model) the element comes from.
    pub rep: ProjPoint,
    pub points: Vec<ProjPoint>,
}

/// The Desarguesian spread of PG(m²-1, q) as a point partition.
#[derive(Clone, Debug)]
pub struct Spread {
    elements: Vec<SpreadElement>,
    owner: HashMap<ProjPoint, usize>,
}

impl Spread {
    pub fn elements(&self) -> &[SpreadElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn point_count(&self) -> usize {
        self.owner.len()
    }

    /// Index of the element containing `point`.
    pub fn element_of(&self, point: &ProjPoint) -> Option<usize> {
        self.owner.get(point).copied()
    }
}

/// `k_β = {[field_reduce(λβ)] : λ ≠ 0}` for every point `[β]` of
/// PG(m-1, q^m); fails unless the elements partition PG(m²-1, q).
pub fn spread_partition(ctx: &FieldCtx) -> Result<Spread> {
    let m = ctx.m() as u32;
    let q = ctx.q();
    let total = q.checked_pow(m * m).filter(|&n| n <= SPREAD_BOUND);
    let Some(total) = total else {
        return Err(Error::TooLarge {
            order: q.checked_pow(m * m),
            bound: SPREAD_BOUND,
        });
    };
    let elements: Vec<SpreadElement> = all_points(ctx, ctx.m())
        .into_par_iter()
        .map(|rep| {
            let points: IndexSet<ProjPoint> = ctx
                .units()
                .filter_map(|l| {
                    let v: Vec<Elt> = rep.0.iter().map(|&x| ctx.mul(l, x)).collect();
                    field_reduce(ctx, &v).point(ctx)
                })
                .collect();
            SpreadElement {
                rep,
                points: points.into_iter().collect(),
            }
        })
        .collect();
    let mut owner = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        for p in &e.points {
            if owner.insert(p.clone(), i).is_some() {
                return Err(Error::NotDisjoint(format!("spread elements meet at {p:?}")));
            }
        }
    }
    if owner.len() as u64 != (total - 1) / (q - 1) {
        return Err(Error::InvalidParameter("spread does not cover PG(m²-1, q)".into()));
    }
    Ok(Spread { elements, owner })
}

/// Points `[c rᵀ]` of the Segre variety S_{m,m}(F_q).
pub fn segre_points(ctx: &FieldCtx) -> IndexSet<ProjPoint> {
    let m = ctx.m();
    let vecs: Vec<Vec<Elt>> = fq_span_vectors(ctx, &unit_vectors(m))
        .into_iter()
        .filter(|v| ProjPoint::new(ctx, v).is_some_and(|p| p.0 == *v))
        .collect();
    let mut out = IndexSet::new();
    for c in &vecs {
        for r in &vecs {
            let x = Matrix::from_fn(m, m, |i, j| ctx.mul(c[i], r[j]));
            out.insert(ProjPoint::new(ctx, x.entries()).unwrap());
        }
    }
    out
}

fn unit_vectors(m: usize) -> Vec<Vec<Elt>> {
    (0..m)
        .map(|i| {
            let mut v = vec![Elt::ZERO; m];
            v[i] = Elt::ONE;
            v
        })
        .collect()
}

/// Whether the map induced by `τ_α` sends the Segre variety onto itself.
pub fn segre_invariant_under_tau(ctx: &FieldCtx, red: &Reduction, alpha: Elt) -> Result<bool> {
    let segre = segre_points(ctx);
    for p in &segre {
        if !segre.contains(&red.tau_point(ctx, alpha, p)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spread elements (indices into `spread`) through the points of [J_a]:
/// one per point of the pseudoregulus set.
pub fn hyperregulus_points(ctx: &FieldCtx, red: &Reduction, spread: &Spread, a: Elt) -> Result<Vec<usize>> {
    let j = codes::build_j(ctx, a)?;
    let mut out = IndexSet::new();
    for w in proj_image(ctx, &j) {
        let p = red.tensor_point(ctx, w.coords()).unwrap();
        out.insert(spread.element_of(&p).unwrap());
    }
    Ok(out.into_iter().collect())
}

/// `{[(1, 0, …, 0, y)] : N(y) = c}` in PG(m-1, q^m).
pub fn bruck_points(ctx: &FieldCtx, c: Elt) -> IndexSet<ProjPoint> {
    let m = ctx.m();
    ctx.units()
        .filter(|&y| ctx.norm(y) == c)
        .map(|y| {
            let mut v = vec![Elt::ZERO; m];
            v[0] = Elt::ONE;
            v[m - 1] = y;
            ProjPoint(v)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImageKind {
    Point,
    Subgeometry,
    Pseudoregulus,
}

/// A named point set of PG(m-1, q^m) with its expected shape.
#[derive(Clone, Debug)]
pub struct ImageComponent {
    pub name: String,
    pub kind: ImageKind,
    pub points: IndexSet<ProjPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCheck {
    pub name: String,
    pub kind: ImageKind,
    pub points: usize,
    pub expected: usize,
    /// For pseudoregulus sets: every point on the line [A_1][A_2].
    pub on_axis_line: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSetReport {
    pub components: Vec<ComponentCheck>,
    /// Pairs of components sharing a point.
    pub overlaps: Vec<(String, String)>,
    pub pass: bool,
}

fn check_set(ctx: &FieldCtx, set: &[Elt]) -> Result<Vec<Elt>> {
    let set = codes::normalize_set(ctx, set)?;
    if set.is_empty() {
        return Err(Error::InvalidParameter("the parameter set must be nonempty".into()));
    }
    Ok(set)
}

/// The projective images of the family's components: [A_1], [A_2], [π_a]
/// for `a ∈ I`, [J_b] for the other `b ≠ 0`.
pub fn family_images(ctx: &FieldCtx, set: &[Elt]) -> Result<Vec<ImageComponent>> {
    let set = check_set(ctx, set)?;
    let mut out = vec![
        ImageComponent {
            name: "A_1".into(),
            kind: ImageKind::Point,
            points: proj_image(ctx, &codes::build_axis(ctx, 1)?),
        },
        ImageComponent {
            name: "A_2".into(),
            kind: ImageKind::Point,
            points: proj_image(ctx, &codes::build_axis(ctx, 2)?),
        },
    ];
    for &a in &set {
        out.push(ImageComponent {
            name: format!("pi_{}", fq_label(ctx, a)),
            kind: ImageKind::Subgeometry,
            points: proj_image(ctx, &codes::build_pi(ctx, a)?),
        });
    }
    for b in ctx.fq_units() {
        if !set.contains(&b) {
            out.push(ImageComponent {
                name: format!("J_{}", fq_label(ctx, b)),
                kind: ImageKind::Pseudoregulus,
                points: proj_image(ctx, &codes::build_j(ctx, b)?),
            });
        }
    }
    Ok(out)
}

/// Checks sizes, line containment and mutual disjointness of image
/// components.
pub fn check_linear_set_union(ctx: &FieldCtx, comps: &[ImageComponent]) -> LinearSetReport {
    let q = ctx.q();
    let m = ctx.m();
    let theta = ((q.pow(m as u32) - 1) / (q - 1)) as usize;
    let mut components = Vec::new();
    let mut pass = true;
    for c in comps {
        let expected = match c.kind {
            ImageKind::Point => 1,
            _ => theta,
        };
        let on_axis_line = (c.kind == ImageKind::Pseudoregulus)
            .then(|| c.points.iter().all(|p| p.0[1..m - 1].iter().all(|x| x.is_zero())));
        pass &= c.points.len() == expected && on_axis_line != Some(false);
        components.push(ComponentCheck {
            name: c.name.clone(),
            kind: c.kind,
            points: c.points.len(),
            expected,
            on_axis_line,
        });
    }
    let mut overlaps = Vec::new();
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            if !a.points.is_disjoint(&b.points) {
                overlaps.push((a.name.clone(), b.name.clone()));
            }
        }
    }
    pass &= overlaps.is_empty();
    LinearSetReport {
        components,
        overlaps,
        pass,
    }
}

/// The family's projective image is two points, |I| disjoint scattered
/// subgeometries and q-1-|I| pseudoregulus sets on the line [A_1][A_2].
pub fn verify_linear_set_union(ctx: &FieldCtx, set: &[Elt]) -> Result<LinearSetReport> {
    Ok(check_linear_set_union(ctx, &family_images(ctx, set)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpreadKind {
    Axis,
    Segre,
    Hyperregulus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadComponentCheck {
    pub name: String,
    pub kind: SpreadKind,
    pub points: usize,
    pub spread_elements: usize,
    pub expected_elements: usize,
    /// The image is the full union of the spread elements it meets.
    pub union_of_elements: bool,
    /// Axis: one element. Segre: equals the τ-image of the Segre variety.
    /// Hyperregulus: equals the elements through [J_b].
    pub shape: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadDecompositionReport {
    pub spread_elements: usize,
    pub components: Vec<SpreadComponentCheck>,
    /// No spread element is used by two components.
    pub pairwise_disjoint: bool,
    /// The J and A images lie in the F_q-span of the two axis elements.
    pub in_axis_span: bool,
    pub axis_span_dim: usize,
    pub pass: bool,
}

/// The family's image in PG(m²-1, q) is a union of spread elements: two
/// axis elements, |I| Segre varieties and q-1-|I| hyperreguli, with the J
/// and A parts inside the span of the two axis elements.
pub fn verify_spread_decomposition(ctx: &FieldCtx, set: &[Elt]) -> Result<SpreadDecompositionReport> {
    let set = check_set(ctx, set)?;
    let red = Reduction::new(ctx)?;
    let spread = spread_partition(ctx)?;
    let segre = segre_points(ctx);
    let q = ctx.q();
    let theta = ((q.pow(ctx.m() as u32) - 1) / (q - 1)) as usize;

    let mut parts: Vec<(String, SpreadKind, Elt, IndexSet<Word>)> = vec![
        ("A_1".into(), SpreadKind::Axis, Elt::ZERO, codes::build_axis(ctx, 1)?),
        ("A_2".into(), SpreadKind::Axis, Elt::ZERO, codes::build_axis(ctx, 2)?),
    ];
    for &a in &set {
        parts.push((
            format!("pi_{}", fq_label(ctx, a)),
            SpreadKind::Segre,
            a,
            codes::build_pi(ctx, a)?,
        ));
    }
    for b in ctx.fq_units() {
        if !set.contains(&b) {
            parts.push((
                format!("J_{}", fq_label(ctx, b)),
                SpreadKind::Hyperregulus,
                b,
                codes::build_j(ctx, b)?,
            ));
        }
    }

    let mut components = Vec::new();
    let mut used: Vec<Vec<usize>> = Vec::new();
    let mut images: Vec<IndexSet<ProjPoint>> = Vec::new();
    for (name, kind, a, words) in &parts {
        let points: IndexSet<ProjPoint> = words
            .iter()
            .map(|w| red.tensor_point(ctx, w.coords()).unwrap())
            .collect();
        let elems: IndexSet<usize> = points
            .iter()
            .map(|p| spread.element_of(p).unwrap())
            .collect();
        let union_of_elements = elems
            .iter()
            .all(|&e| spread.elements[e].points.iter().all(|p| points.contains(p)));
        let (expected_elements, shape) = match kind {
            SpreadKind::Axis => (1, elems.len() == 1),
            SpreadKind::Segre => {
                let alpha = codes::norm_representative(ctx, *a)?;
                let moved: IndexSet<ProjPoint> = segre
                    .iter()
                    .map(|p| red.tau_point(ctx, alpha, p))
                    .collect::<Result<_>>()?;
                (theta, moved.len() == points.len() && moved.iter().all(|p| points.contains(p)))
            }
            SpreadKind::Hyperregulus => {
                let hr: IndexSet<usize> =
                    hyperregulus_points(ctx, &red, &spread, *a)?.into_iter().collect();
                (theta, hr == elems)
            }
        };
        components.push(SpreadComponentCheck {
            name: name.clone(),
            kind: *kind,
            points: points.len(),
            spread_elements: elems.len(),
            expected_elements,
            union_of_elements,
            shape,
        });
        used.push(elems.into_iter().collect());
        images.push(points);
    }

    let mut seen = IndexSet::new();
    let pairwise_disjoint = used.iter().flatten().all(|&e| seen.insert(e));

    let mut axis_span = FqSpan::new(ctx);
    for &e in used[0].iter().chain(&used[1]) {
        for p in &spread.elements[e].points {
            axis_span.insert(&p.0);
        }
    }
    let in_axis_span = parts
        .iter()
        .zip(&images)
        .filter(|((_, kind, _, _), _)| *kind != SpreadKind::Segre)
        .all(|(_, pts)| pts.iter().all(|p| axis_span.contains(&p.0)));
    let axis_span_dim = axis_span.dim();

    let pass = pairwise_disjoint
        && in_axis_span
        && axis_span_dim == 2 * ctx.m()
        && components.iter().all(|c| {
            c.union_of_elements && c.shape && c.spread_elements == c.expected_elements
        });
    Ok(SpreadDecompositionReport {
        spread_elements: spread.len(),
        components,
        pairwise_disjoint,
        in_axis_span,
        axis_span_dim,
        pass,
    })
}

/// A line of PG(2, q^3), by line coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    coords: [Elt; 3],
}

fn cross(ctx: &FieldCtx, a: &[Elt], b: &[Elt]) -> [Elt; 3] {
    let f = |i: usize, j: usize| ctx.sub(ctx.mul(a[i], b[j]), ctx.mul(a[j], b[i]));
    [f(1, 2), f(2, 0), f(0, 1)]
}

impl Line {
    /// The line through two distinct points.
    pub fn through(ctx: &FieldCtx, a: &ProjPoint, b: &ProjPoint) -> Result<Line> {
        if a.len() != 3 || b.len() != 3 {
            return Err(Error::InvalidParameter("lines need m = 3".into()));
        }
        let c = cross(ctx, &a.0, &b.0);
        if c.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidParameter("points coincide".into()));
        }
        Ok(Line { coords: c })
    }

    pub fn contains(&self, ctx: &FieldCtx, p: &ProjPoint) -> bool {
        self.coords
            .iter()
            .zip(&p.0)
            .fold(Elt::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            .is_zero()
    }

    pub fn points(&self, ctx: &FieldCtx) -> IndexSet<ProjPoint> {
        all_points(ctx, 3)
            .into_iter()
            .filter(|p| self.contains(ctx, p))
            .collect()
    }

    fn meet(&self, ctx: &FieldCtx, other: &[Elt; 3]) -> Option<ProjPoint> {
        ProjPoint::new(ctx, &cross(ctx, &self.coords, other))
    }
}

/// Points of `line` on a line joining two distinct points of `sub`.
pub fn exterior_splash(ctx: &FieldCtx, sub: &IndexSet<ProjPoint>, line: &Line) -> Result<IndexSet<ProjPoint>> {
    if ctx.m() != 3 {
        return Err(Error::InvalidParameter("exterior splash needs m = 3".into()));
    }
    if let Some(p) = sub.iter().find(|p| line.contains(ctx, p)) {
        return Err(Error::NotDisjoint(format!("line meets the subgeometry at {p:?}")));
    }
    let pts: Vec<&ProjPoint> = sub.iter().collect();
    let found: Vec<Vec<ProjPoint>> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            pts[i + 1..]
                .iter()
                .filter_map(|b| line.meet(ctx, &cross(ctx, &pts[i].0, &b.0)))
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// The line `[W]` through `[A_1] = (1,0,0)` and `[A_2] = (0,0,1)`.
pub fn axis_line(ctx: &FieldCtx) -> Line {
    let a = ProjPoint(vec![Elt::ONE, Elt::ZERO, Elt::ZERO]);
    let b = ProjPoint(vec![Elt::ZERO, Elt::ZERO, Elt::ONE]);
    Line::through(ctx, &a, &b).unwrap()
}

/// The line `X_3 = 0`.
pub fn third_coordinate_line(ctx: &FieldCtx) -> Line {
    let a = ProjPoint(vec![Elt::ONE, Elt::ZERO, Elt::ZERO]);
    let b = ProjPoint(vec![Elt::ZERO, Elt::ONE, Elt::ZERO]);
    Line::through(ctx, &a, &b).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f27() -> FieldCtx {
        FieldCtx::new(3, 1, 3, None).unwrap()
    }

    #[test]
    fn projective_images() {
        let ctx = f27();
        assert_eq!(proj_image(&ctx, &codes::build_pi(&ctx, Elt::ONE).unwrap()).len(), 13);
        let j1 = proj_image(&ctx, &codes::build_j(&ctx, Elt::ONE).unwrap());
        assert_eq!(j1.len(), 13);
        assert!(j1.iter().all(|p| p.coords()[1].is_zero()));
        assert_eq!(proj_image(&ctx, &codes::build_axis(&ctx, 1).unwrap()).len(), 1);
        assert_eq!(all_points(&ctx, 3).len(), 757);
    }

    #[test]
    fn scatteredness() {
        let ctx = f27();
        assert!(is_scattered(&ctx, &cyclic_model_basis(&ctx)).unwrap());
        for a in ctx.fq_units() {
            assert!(is_scattered(&ctx, &pseudoregulus_basis(&ctx, a).unwrap()).unwrap());
        }
        let e = vec![Elt::ONE, Elt::ZERO, Elt::ZERO];
        let ge = vec![ctx.generator(), Elt::ZERO, Elt::ZERO];
        assert!(!is_scattered(&ctx, &[e.clone(), ge]).unwrap());
        assert!(matches!(
            is_scattered(&ctx, &[e.clone(), e]),
            Err(Error::DependentBasis)
        ));
    }

    #[test]
    fn tau_maps_components() {
        let ctx = f27();
        let pi1 = codes::build_pi(&ctx, Elt::ONE).unwrap();
        let j1 = codes::build_j(&ctx, Elt::ONE).unwrap();
        assert_eq!(tau(&ctx, Elt::ONE, &pi1[5].0).unwrap(), pi1[5].0);
        assert!(tau(&ctx, Elt::ZERO, &pi1[0].0).is_err());
        for alpha in ctx.units().step_by(5) {
            let a = ctx.norm(alpha);
            let img: IndexSet<Word> = pi1
                .iter()
                .map(|w| Word(tau(&ctx, alpha, &w.0).unwrap()))
                .collect();
            assert_eq!(img, codes::build_pi(&ctx, a).unwrap());
            let b = ctx.pow(a, 2);
            let img: IndexSet<Word> = j1
                .iter()
                .map(|w| Word(tau(&ctx, alpha, &w.0).unwrap()))
                .collect();
            let jb: IndexSet<Word> = codes::build_j(&ctx, b).unwrap();
            assert!(img.len() == jb.len() && img.iter().all(|w| jb.contains(w)));
        }
    }

    #[test]
    fn field_reduce_shapes() {
        let ctx = f27();
        let x = field_reduce(&ctx, &[Elt::ONE, Elt::ZERO, Elt::ZERO]);
        assert_eq!(x.rank(&ctx), 1);
        assert_eq!(x.unreduce(&ctx), vec![Elt::ONE, Elt::ZERO, Elt::ZERO]);
        // (c_1 u, c_2 u, c_3 u) with c_i ∈ F_q: rank one
        let u = ctx.exp_of(7);
        let v = [u, ctx.neg(u), Elt::ZERO];
        assert_eq!(field_reduce(&ctx, &v).rank(&ctx), 1);
        assert!(cyclic_reduce(&ctx, &[Elt::ZERO; 3]).matrix().is_zero());
    }

    #[test]
    fn eigenbasis_is_moore_matrix() {
        for (p, h, m) in [(3, 1, 3), (2, 2, 3), (5, 1, 3), (3, 1, 4), (2, 1, 4)] {
            let ctx = FieldCtx::new(p, h, m, None).unwrap();
            assert_eq!(singer_eigenbasis(&ctx).unwrap(), moore_matrix(&ctx));
        }
    }

    #[test]
    fn cyclic_model_vectors_have_rank_one() {
        let ctx = f27();
        let red = Reduction::new(&ctx).unwrap();
        for w in codes::build_pi(&ctx, Elt::ONE).unwrap().iter().take(50) {
            assert_eq!(cyclic_reduce(&ctx, &w.0).rank(&ctx), 1);
            assert_eq!(red.tensor(&ctx, &w.0).rank(&ctx), 1);
        }
    }

    #[test]
    fn congruence_on_small_field() {
        let ctx = FieldCtx::new(2, 2, 3, None).unwrap();
        let red = Reduction::new(&ctx).unwrap();
        let report = verify_singer_congruence(&ctx, &red, &sample_vectors(&ctx, 300, 7));
        assert!(report.pass, "{report:?}");
        assert!(verify_cyclic_decomposition(&ctx, &red));
    }

    #[test]
    fn same_tuple_ranks_differ_without_change_of_basis() {
        let ctx = f27();
        let v = [Elt::ONE, Elt::ONE, Elt::ZERO];
        assert_eq!(cyclic_reduce(&ctx, &v).rank(&ctx), 3);
        assert_eq!(field_reduce(&ctx, &v).rank(&ctx), 1);
    }

    #[test]
    fn splash_of_subgeometry() {
        let ctx = f27();
        let pi1 = proj_image(&ctx, &codes::build_pi(&ctx, Elt::ONE).unwrap());
        let w = axis_line(&ctx);
        assert_eq!(w.points(&ctx).len(), 28);
        let splash = exterior_splash(&ctx, &pi1, &w).unwrap();
        let j1 = proj_image(&ctx, &codes::build_j(&ctx, Elt::ONE).unwrap());
        assert_eq!(splash.len(), 13);
        assert!(splash.iter().all(|p| j1.contains(p)));
        let a1 = proj_image(&ctx, &codes::build_axis(&ctx, 1).unwrap());
        assert!(exterior_splash(&ctx, &a1, &w).is_err());
    }

    #[test]
    fn bruck_set_is_j1() {
        let ctx = f27();
        let j1: IndexSet<ProjPoint> = proj_image(&ctx, &codes::build_j(&ctx, Elt::ONE).unwrap());
        let b = bruck_points(&ctx, ctx.from_int(-1));
        assert_eq!(j1.len(), b.len());
        assert!(b.iter().all(|p| j1.contains(p)));
    }

    #[test]
    fn linear_set_union_q4() {
        let ctx = FieldCtx::new(2, 2, 3, None).unwrap();
        let units = ctx.fq_units();
        let set: Vec<Elt> = units[1..].to_vec();
        let report = verify_linear_set_union(&ctx, &set).unwrap();
        assert!(report.pass);
        let pts: Vec<usize> = report.components.iter().map(|c| c.points).collect();
        assert_eq!(pts, vec![1, 1, 21, 21, 21]);
        assert!(verify_linear_set_union(&ctx, &[]).is_err());
    }

    #[test]
    fn injected_overlap_fails() {
        let ctx = f27();
        let mut comps = family_images(&ctx, &[ctx.from_int(2)]).unwrap();
        let stolen = comps[2].points[0].clone();
        comps[3].points.pop();
        comps[3].points.insert(stolen);
        let report = check_linear_set_union(&ctx, &comps);
        assert!(!report.pass);
        assert_eq!(report.overlaps.len(), 1);
    }

    #[test]
    fn spread_and_segre_q3() {
        let ctx = FieldCtx::new(3, 1, 3, None).unwrap();
        let spread = spread_partition(&ctx).unwrap();
        assert_eq!(spread.len(), 757);
        assert!(spread.elements().iter().all(|e| e.points.len() == 13));
        assert_eq!(spread.point_count(), 9841);
        assert_eq!(segre_points(&ctx).len(), 169);
        let report = verify_spread_decomposition(&ctx, &[ctx.from_int(2)]).unwrap();
        assert!(report.pass, "{report:?}");
        let red = Reduction::new(&ctx).unwrap();
        assert_eq!(rank_agreement(&ctx, &red), (19682, 0));
        for alpha in ctx.units() {
            let inv = segre_invariant_under_tau(&ctx, &red, alpha).unwrap();
            assert_eq!(inv, ctx.norm(alpha) == Elt::ONE);
        }
    }
}
