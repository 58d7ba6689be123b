//! Linearized polynomials, Dickson matrices and the bilinear forms they
//! define.
//!
//! A [`Word`] `(a_0, …, a_{m-1})` over F_{q^m} plays three roles at once:
//! the linearized polynomial `L(x) = Σ a_i x^{q^i}`, the first row of the
//! Dickson matrix `D` with `D[i][j] = a_{j-i}^{q^i}` (0-based, indices mod m),
//! and the bilinear form `f(x, x') = Tr(L(x') x)` on F_{q^m} viewed as
//! an m-dimensional F_q-space. Words are the canonical key everywhere.
//!
//! Conventions fixed here:
//!
//! * `D_a · v(x) = v(L_a(x))` for the column `v(x) = (x, x^q, …)`, hence
//!   `D_a D_b` is the Dickson matrix of `L_a ∘ L_b`.
//! * An [`AutElt`] acts on matrices as `M ↦ D1ᵀ · t(M^σ) · D2`, where `σ` is
//!   the absolute Frobenius `x ↦ x^{p^k}` applied entrywise and `t` is the
//!   optional transposition.

use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp;
use crate::gfield::{Elt, FieldCtx};
use crate::matrix::Matrix;

/// Maximum supported h·m for the stack-allocated rank kernel.
const MAX_DEGREE: usize = 24;

/// An m-tuple over F_{q^m}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Elt>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u32> = self.0.iter().map(|e| e.packed()).collect();
        write!(f, "Word{v:?}")
    }
}

impl Word {
    pub fn new(coords: Vec<Elt>) -> Word {
        Word(coords)
    }

    pub fn zero(m: usize) -> Word {
        Word(vec![Elt::ZERO; m])
    }

    /// `(0, …, 0, x, 0, …, 0)` with `x` in position `i`.
    pub fn unit(m: usize, i: usize, x: Elt) -> Word {
        let mut w = Word::zero(m);
        w.0[i] = x;
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn coords(&self) -> &[Elt] {
        &self.0
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Word) -> Word {
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| ctx.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Word) -> Word {
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| ctx.sub(a, b))
                .collect(),
        )
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Elt) -> Word {
        Word(self.0.iter().map(|&a| ctx.mul(c, a)).collect())
    }

    /// Entrywise absolute Frobenius `x ↦ x^{p^k}`.
    pub fn frobenius_p(&self, ctx: &FieldCtx, k: usize) -> Word {
        Word(self.0.iter().map(|&a| ctx.frobenius_p(a, k)).collect())
    }

    /// F_p digit vector of all coordinates, concatenated.
    pub(crate) fn digits(&self, ctx: &FieldCtx) -> Vec<u32> {
        self.0.iter().flat_map(|&a| ctx.coeffs(a)).collect()
    }

    /// Serializes as an array of little-endian F_p coefficient vectors.
    pub fn to_coeffs(&self, ctx: &FieldCtx) -> Vec<Vec<u32>> {
        self.0.iter().map(|&a| ctx.coeffs(a)).collect()
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: &[Vec<u32>]) -> Result<Word> {
        if coeffs.len() != ctx.m() {
            return Err(Error::WordLength {
                expected: ctx.m(),
                got: coeffs.len(),
            });
        }
        Ok(Word(
            coeffs
                .iter()
                .map(|c| ctx.from_coeffs(c))
                .collect::<Result<_>>()?,
        ))
    }
}

fn check_len(ctx: &FieldCtx, w: &Word) {
    assert_eq!(w.len(), ctx.m(), "word length must equal m");
}

/// L_w(x) = Σ a_i x^{q^i}.
pub fn eval_linpoly(ctx: &FieldCtx, w: &Word, x: Elt) -> Elt {
    check_len(ctx, w);
    w.0.iter().enumerate().fold(Elt::ZERO, |acc, (i, &a)| {
        ctx.add(acc, ctx.mul(a, ctx.frobenius(x, i)))
    })
}

/// F_q-basis of the root space {x : L_w(x) = 0}.
///
/// L_w is written as an F_p-linear map in the polynomial basis
/// `1, t, …, t^{hm-1}` and its null space is reduced to echelon form; an
/// F_q-basis is then picked greedily from the F_p-basis vectors in order.
pub fn kernel(ctx: &FieldCtx, w: &Word) -> Vec<Elt> {
    check_len(ctx, w);
    let deg = ctx.degree();
    let p = ctx.p();
    let mut rows = vec![vec![0u32; deg]; deg];
    let mut basis_elt = 1u32;
    for j in 0..deg {
        let image = eval_linpoly(ctx, w, Elt(basis_elt));
        for (row, d) in rows.iter_mut().zip(ctx.coeffs(image)) {
            row[j] = d;
        }
        basis_elt = basis_elt.wrapping_mul(p);
    }
    let null = fp::nullspace(rows, deg, p);

    let omega = ctx.fq_generator();
    let mut span = fp::Span::new(p);
    let mut out = Vec::new();
    for v in null {
        if span.contains(&v) {
            continue;
        }
        let x = ctx.from_coeffs(&v).expect("null vector is a valid element");
        out.push(x);
        for k in 0..ctx.h() {
            let y = ctx.mul(x, ctx.pow(omega, k as u64));
            span.insert(&ctx.coeffs(y));
        }
    }
    out
}

/// Rank of the bilinear form f_w: m minus the F_q-dimension of the kernel
/// of L_w.
pub fn rank(ctx: &FieldCtx, w: &Word) -> usize {
    check_len(ctx, w);
    let deg = ctx.degree();
    assert!(deg <= MAX_DEGREE);
    let p = ctx.p();
    let mut a = [[0u32; MAX_DEGREE]; MAX_DEGREE];
    let mut basis_elt = 1u32;
    for j in 0..deg {
        let mut image = eval_linpoly(ctx, w, Elt(basis_elt)).packed();
        for row in a.iter_mut().take(deg) {
            row[j] = image % p;
            image /= p;
        }
        basis_elt = basis_elt.wrapping_mul(p);
    }
    fp_rank_dense(&mut a, deg, p) / ctx.h()
}

fn fp_rank_dense(a: &mut [[u32; MAX_DEGREE]; MAX_DEGREE], n: usize, p: u32) -> usize {
    let mut r = 0;
    for c in 0..n {
        let Some(sel) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, sel);
        let pivot = a[r][c];
        // inverse by search: p is small
        let inv = (1..p).find(|&x| pivot * x % p == 1).unwrap();
        for i in r + 1..n {
            if a[i][c] == 0 {
                continue;
            }
            let f = (p - a[i][c]) * inv % p;
            let (head, tail) = a.split_at_mut(i);
            for (x, &y) in tail[0][c..n].iter_mut().zip(&head[r][c..n]) {
                *x = (*x + f * y) % p;
            }
        }
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

/// Rank of `a - b`, the rank distance.
pub fn rank_distance(ctx: &FieldCtx, a: &Word, b: &Word) -> usize {
    rank(ctx, &a.sub(ctx, b))
}

/// A Dickson (q-circulant) matrix, determined by its first row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DicksonMat(Matrix);

impl DicksonMat {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    /// The generating word (first row).
    pub fn word(&self) -> Word {
        Word(self.0.row(0).to_vec())
    }

    /// Checks the q-circulant pattern; returns the matrix wrapped on success.
    pub fn from_matrix(ctx: &FieldCtx, m: Matrix) -> Result<DicksonMat> {
        let d = dickson(ctx, &Word(m.row(0).to_vec()));
        if d.0 == m {
            Ok(d)
        } else {
            Err(Error::NotDickson)
        }
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.0.rank(ctx)
    }
}

/// Dickson matrix generated by `w`: entry (i, j) is `a_{j-i mod m}^{q^i}`.
pub fn dickson(ctx: &FieldCtx, w: &Word) -> DicksonMat {
    check_len(ctx, w);
    let m = ctx.m();
    DicksonMat(Matrix::from_fn(m, m, |i, j| {
        ctx.frobenius(w.0[(j + m - i) % m], i)
    }))
}

/// f_w(x, x') = Tr(L_w(x') · x).
pub fn form_eval(ctx: &FieldCtx, w: &Word, x: Elt, x2: Elt) -> Elt {
    ctx.trace(ctx.mul(eval_linpoly(ctx, w, x2), x))
}

/// Matrix product of two Dickson matrices, checked to be Dickson again.
pub fn dickson_mul(ctx: &FieldCtx, a: &DicksonMat, b: &DicksonMat) -> Result<DicksonMat> {
    DicksonMat::from_matrix(ctx, a.0.mul(ctx, &b.0))
}

/// Word of `L_a ∘ L_b` reduced mod `x^{q^m} - x`:
/// `c_k = Σ_{i+j ≡ k} a_i b_j^{q^i}`.
pub fn compose(ctx: &FieldCtx, a: &Word, b: &Word) -> Word {
    let m = ctx.m();
    let mut c = vec![Elt::ZERO; m];
    for (i, &ai) in a.0.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.0.iter().enumerate() {
            let k = (i + j) % m;
            c[k] = ctx.add(c[k], ctx.mul(ai, ctx.frobenius(bj, i)));
        }
    }
    Word(c)
}

/// Word whose Dickson matrix is the transpose of `dickson(w)`:
/// `w'_0 = a_0`, `w'_i = a_{m-i}^{q^i}`.
pub fn dickson_transpose(ctx: &FieldCtx, w: &Word) -> Word {
    check_len(ctx, w);
    let m = ctx.m();
    Word(
        (0..m)
            .map(|i| ctx.frobenius(w.0[(m - i) % m], i))
            .collect(),
    )
}

/// An element of (B_m × B_m) ⋊ ⟨t⟩ ⋊ Aut, acting as
/// `M ↦ D1ᵀ · t(M^σ) · D2` with `σ = x ↦ x^{p^frob_power}`.
#[derive(Clone, Debug)]
pub struct AutElt {
    d1: Word,
    d2: Word,
    transpose: bool,
    frob_power: usize,
}

impl AutElt {
    pub fn new(
        ctx: &FieldCtx,
        d1: Word,
        d2: Word,
        transpose: bool,
        frob_power: usize,
    ) -> Result<AutElt> {
        let m = ctx.m();
        if d1.len() != m || d2.len() != m {
            return Err(Error::WordLength {
                expected: m,
                got: d1.len().min(d2.len()),
            });
        }
        if rank(ctx, &d1) != m || rank(ctx, &d2) != m {
            return Err(Error::Singular);
        }
        Ok(AutElt {
            d1,
            d2,
            transpose,
            frob_power: frob_power % ctx.degree(),
        })
    }

    pub fn identity(ctx: &FieldCtx) -> AutElt {
        let one = Word::unit(ctx.m(), 0, Elt::ONE);
        AutElt {
            d1: one.clone(),
            d2: one,
            transpose: false,
            frob_power: 0,
        }
    }

    pub fn transposition(ctx: &FieldCtx) -> AutElt {
        AutElt {
            transpose: true,
            ..AutElt::identity(ctx)
        }
    }

    pub fn d1(&self) -> &Word {
        &self.d1
    }

    pub fn d2(&self) -> &Word {
        &self.d2
    }

    pub fn transpose(&self) -> bool {
        self.transpose
    }

    pub fn frob_power(&self) -> usize {
        self.frob_power
    }
}

/// Image of `w` under `e`, computed on words by composition.
pub fn apply_aut(ctx: &FieldCtx, e: &AutElt, w: &Word) -> Word {
    check_len(ctx, w);
    let mut x = w.frobenius_p(ctx, e.frob_power);
    if e.transpose {
        x = dickson_transpose(ctx, &x);
    }
    let left = dickson_transpose(ctx, &e.d1);
    compose(ctx, &left, &compose(ctx, &x, &e.d2))
}

/// Image of `w` under the Singer pair `(λ, x)`: `a_i ↦ λ a_i x^{q^i}`.
pub fn singer_act(ctx: &FieldCtx, w: &Word, lambda: Elt, x: Elt) -> Word {
    Word(
        w.0.iter()
            .enumerate()
            .map(|(i, &a)| ctx.mul(lambda, ctx.mul(a, ctx.frobenius(x, i))))
            .collect(),
    )
}

/// The (S × S)-orbit of `w`, in (λ, x) enumeration order.
pub fn singer_orbit(ctx: &FieldCtx, w: &Word) -> IndexSet<Word> {
    check_len(ctx, w);
    let mut out = IndexSet::new();
    for lambda in ctx.units() {
        for x in ctx.units() {
            out.insert(singer_act(ctx, w, lambda, x));
        }
    }
    out
}

/// All (q^m)^m words, in lexicographic order of canonical element order.
pub fn all_words(ctx: &FieldCtx) -> impl Iterator<Item = Word> + '_ {
    let elems: Vec<Elt> = ctx.elements().collect();
    let m = ctx.m();
    let n = elems.len();
    let total = (n as u64).pow(m as u32);
    (0..total).map(move |mut idx| {
        let mut w = Vec::with_capacity(m);
        for _ in 0..m {
            w.push(elems[(idx % n as u64) as usize]);
            idx /= n as u64;
        }
        Word(w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f27() -> FieldCtx {
        FieldCtx::new(3, 1, 3, None).unwrap()
    }

    fn w(ctx: &FieldCtx, logs: [Option<u64>; 3]) -> Word {
        Word(
            logs.iter()
                .map(|l| l.map_or(Elt::ZERO, |k| ctx.exp_of(k)))
                .collect(),
        )
    }

    #[test]
    fn eval_examples() {
        let ctx = f27();
        let g = ctx.generator();
        let id = Word::unit(3, 0, Elt::ONE);
        let fr = Word::unit(3, 1, Elt::ONE);
        for x in ctx.elements() {
            assert_eq!(eval_linpoly(&ctx, &id, x), x);
            assert_eq!(eval_linpoly(&ctx, &fr, x), ctx.pow(x, 3));
        }
        let v = Word(vec![Elt::ONE, Elt::ZERO, ctx.from_int(-1)]);
        assert_eq!(eval_linpoly(&ctx, &v, g), ctx.sub(g, ctx.pow(g, 9)));
    }

    #[test]
    fn kernel_examples() {
        let ctx = f27();
        assert!(kernel(&ctx, &Word::unit(3, 0, Elt::ONE)).is_empty());
        let ones = Word(vec![Elt::ONE; 3]);
        assert_eq!(kernel(&ctx, &ones).len(), 2);
        let v = Word(vec![Elt::ONE, Elt::ZERO, ctx.from_int(-1)]);
        let k = kernel(&ctx, &v);
        assert_eq!(k.len(), 1);
        // brute-force roots are exactly F_3
        let roots: Vec<Elt> = ctx
            .elements()
            .filter(|&x| eval_linpoly(&ctx, &v, x).is_zero())
            .collect();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|&r| ctx.in_fq(r)));
        assert_eq!(kernel(&ctx, &Word::zero(3)).len(), 3);
    }

    #[test]
    fn kernel_over_extension_base() {
        // q = 4: the kernel basis is over F_4, so its size is m - rank
        let ctx = FieldCtx::new(2, 2, 3, None).unwrap();
        for word in [
            Word(vec![Elt::ONE; 3]),
            Word::unit(3, 2, ctx.generator()),
            Word::zero(3),
            Word(vec![Elt::ONE, ctx.from_int(1), Elt::ZERO]),
        ] {
            let k = kernel(&ctx, &word);
            assert_eq!(k.len(), 3 - rank(&ctx, &word));
            for &x in &k {
                assert!(eval_linpoly(&ctx, &word, x).is_zero());
            }
            let roots = ctx
                .elements()
                .filter(|&x| eval_linpoly(&ctx, &word, x).is_zero())
                .count() as u64;
            assert_eq!(roots, 4u64.pow(k.len() as u32));
        }
    }

    #[test]
    fn rank_examples() {
        let ctx = f27();
        assert_eq!(rank(&ctx, &Word::zero(3)), 0);
        for mu in ctx.units() {
            assert_eq!(rank(&ctx, &Word::unit(3, 2, mu)), 3);
        }
        for x in ctx.elements() {
            for y in ctx.elements() {
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                let v = Word(vec![x, Elt::ZERO, y]);
                assert!(rank(&ctx, &v) >= 2);
            }
        }
    }

    #[test]
    fn dickson_examples() {
        let ctx = f27();
        let v = w(&ctx, [Some(1), Some(5), Some(7)]);
        let d = dickson(&ctx, &v);
        let a = &v.0;
        let f = |x: Elt, i| ctx.frobenius(x, i);
        assert_eq!(d.matrix().row(0), &[a[0], a[1], a[2]]);
        assert_eq!(d.matrix().row(1), &[f(a[2], 1), f(a[0], 1), f(a[1], 1)]);
        assert_eq!(d.matrix().row(2), &[f(a[1], 2), f(a[2], 2), f(a[0], 2)]);
        assert_eq!(
            dickson(&ctx, &Word::unit(3, 0, Elt::ONE)).matrix(),
            &Matrix::identity(3)
        );
        assert!(dickson(&ctx, &Word::zero(3)).matrix().is_zero());
        assert_eq!(d.word(), v);
    }

    #[test]
    fn form_eval_examples() {
        let ctx = f27();
        let g = ctx.generator();
        let any = w(&ctx, [Some(3), None, Some(11)]);
        assert_eq!(form_eval(&ctx, &any, Elt::ZERO, g), Elt::ZERO);
        let id = Word::unit(3, 0, Elt::ONE);
        assert_eq!(form_eval(&ctx, &id, Elt::ONE, Elt::ONE), ctx.trace(Elt::ONE));

        // v · D · v'^T with v = (x, x^q, x^{q^2})
        let ones = Word(vec![Elt::ONE; 3]);
        let (x, x2) = (g, ctx.mul(g, g));
        let v: Vec<Elt> = (0..3).map(|i| ctx.frobenius(x, i)).collect();
        let v2: Vec<Elt> = (0..3).map(|i| ctx.frobenius(x2, i)).collect();
        let dv2 = dickson(&ctx, &ones).matrix().mul_vec(&ctx, &v2);
        let bil = v
            .iter()
            .zip(&dv2)
            .fold(Elt::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)));
        assert_eq!(form_eval(&ctx, &ones, x, x2), bil);
    }

    #[test]
    fn dickson_mul_examples() {
        let ctx = f27();
        let id = dickson(&ctx, &Word::unit(3, 0, Elt::ONE));
        let b = dickson(&ctx, &w(&ctx, [Some(2), Some(9), None]));
        assert_eq!(dickson_mul(&ctx, &id, &b).unwrap(), b);
        let fr = dickson(&ctx, &Word::unit(3, 1, Elt::ONE));
        assert_eq!(
            dickson_mul(&ctx, &fr, &fr).unwrap().word(),
            Word::unit(3, 2, Elt::ONE)
        );
        let not_dickson = Matrix::from_fn(3, 3, |i, j| if i == 0 && j == 1 { Elt::ONE } else { Elt::ZERO });
        assert!(DicksonMat::from_matrix(&ctx, not_dickson).is_err());
    }

    #[test]
    fn transpose_examples() {
        let ctx = f27();
        let a0 = ctx.exp_of(4);
        assert_eq!(
            dickson_transpose(&ctx, &Word::unit(3, 0, a0)),
            Word::unit(3, 0, a0)
        );
        let v = w(&ctx, [Some(1), Some(5), Some(7)]);
        let t = dickson_transpose(&ctx, &v);
        assert_eq!(
            t,
            Word(vec![
                v.0[0],
                ctx.frobenius(v.0[2], 1),
                ctx.frobenius(v.0[1], 2)
            ])
        );
        assert_eq!(dickson(&ctx, &t).matrix(), &dickson(&ctx, &v).matrix().transpose());
    }

    #[test]
    fn aut_examples() {
        let ctx = f27();
        let v = w(&ctx, [Some(1), None, Some(7)]);
        assert_eq!(apply_aut(&ctx, &AutElt::identity(&ctx), &v), v);
        assert_eq!(
            apply_aut(&ctx, &AutElt::transposition(&ctx), &v),
            dickson_transpose(&ctx, &v)
        );
        assert!(AutElt::new(&ctx, Word::zero(3), Word::unit(3, 0, Elt::ONE), false, 0).is_err());
    }

    #[test]
    fn aut_matches_matrix_convention() {
        let ctx = f27();
        let invertible = |start: u64| {
            (start..)
                .map(|k| w(&ctx, [Some(k), Some(k + 1), Some(2 * k + 5)]))
                .find(|c| rank(&ctx, c) == 3)
                .unwrap()
        };
        let d1 = invertible(2);
        let d2 = invertible(7);
        assert_ne!(d1, d2);
        let e = AutElt::new(&ctx, d1.clone(), d2.clone(), true, 1).unwrap();
        let v = w(&ctx, [Some(1), Some(8), Some(19)]);
        let m = dickson(&ctx, &v).matrix().map(|x| ctx.frobenius_p(x, 1)).transpose();
        let expect = dickson(&ctx, &d1)
            .matrix()
            .transpose()
            .mul(&ctx, &m)
            .mul(&ctx, dickson(&ctx, &d2).matrix());
        assert_eq!(dickson(&ctx, &apply_aut(&ctx, &e, &v)).matrix(), &expect);
    }

    #[test]
    fn singer_orbit_examples() {
        let ctx = f27();
        assert_eq!(singer_orbit(&ctx, &Word::zero(3)).len(), 1);
        // (1, α, α^{1+q}) for α = g: orbit size (q^m-1)^2/(q-1)
        let g = ctx.generator();
        let rep = Word(vec![Elt::ONE, g, ctx.pow(g, 4)]);
        assert_eq!(singer_orbit(&ctx, &rep).len(), 338);
    }

    #[test]
    fn all_words_count() {
        let ctx = FieldCtx::new(2, 1, 2, None).unwrap();
        let words: IndexSet<Word> = all_words(&ctx).collect();
        assert_eq!(words.len(), 16);
    }
}
