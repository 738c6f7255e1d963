//! Rank-2 multiarrangements: Ziegler restriction, exact layer dimensions of
//! the logarithmic derivation module, multiexponents, and Saito-determinant
//! basis verification.
//!
//! A rank-2 multiarrangement is a list of pairwise non-proportional linear
//! binary forms with positive multiplicities. Its derivation module is free,
//! so it is determined by two exponents `(d1, d2)` with `d1 + d2 = |m|`;
//! `d1` is the smallest degree with a nonzero derivation layer. Layer
//! dimensions are computed as exact nullities: tangency to order `m` along a
//! form is encoded by the vanishing of the first `m` remainder coefficients
//! after the linear substitution that turns the form into a coordinate.

use std::fmt;

use serde::Serialize;

use crate::exactnum::{FieldContext, QuadScalar};
use crate::geometry::{meet, Arrangement, GeomError, HomogeneousTriple};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultiError {
    #[error("a multiarrangement line needs a nonzero linear form")]
    ZeroForm,
    #[error("multiplicities must be positive")]
    BadMultiplicity,
    #[error("two lines have proportional forms")]
    DuplicateDirection,
    #[error("derivation components must share one degree")]
    DegreeMismatch,
    #[error("coefficients belong to different field contexts")]
    MixedField,
    #[error("a derivation fails a tangency condition of the multiarrangement")]
    NotLogarithmic,
    #[error("line index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("Ziegler restriction needs at least two lines")]
    SingleLine,
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// A homogeneous binary form of a fixed degree: `coeffs[i]` multiplies
/// `u^(degree-i) * v^i`. The zero form of any degree is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<QuadScalar>,
}

impl BinaryForm {
    pub fn new(ctx: FieldContext, coeffs: Vec<QuadScalar>) -> Result<Self, MultiError> {
        if coeffs.is_empty() {
            return Err(MultiError::ZeroForm);
        }
        if coeffs.iter().any(|c| c.context() != ctx) {
            return Err(MultiError::MixedField);
        }
        Ok(BinaryForm { degree: coeffs.len() - 1, coeffs })
    }

    pub fn from_ints(ctx: FieldContext, coeffs: &[i64]) -> Result<Self, MultiError> {
        Self::new(ctx, coeffs.iter().map(|&n| QuadScalar::from_int(ctx, n)).collect())
    }

    pub fn zero(ctx: FieldContext, degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![QuadScalar::zero(ctx); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[QuadScalar] {
        &self.coeffs
    }

    pub fn context(&self) -> FieldContext {
        self.coeffs[0].context()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QuadScalar::is_zero)
    }

    pub fn scaled(&self, c: &QuadScalar) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, MultiError> {
        if self.degree != other.degree {
            return Err(MultiError::DegreeMismatch);
        }
        Ok(BinaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, MultiError> {
        self.try_add(&other.scaled(&-QuadScalar::one(other.context())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ctx = self.context();
        let degree = self.degree + other.degree;
        let mut coeffs = vec![QuadScalar::zero(ctx); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BinaryForm { degree, coeffs }
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = BinaryForm::new(self.context(), vec![QuadScalar::one(self.context())])
            .expect("constant one form");
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            let (du, dv) = (self.degree - i, i);
            if du > 0 {
                write!(f, "u^{du}")?;
            }
            if dv > 0 {
                write!(f, "v^{dv}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A linear form `p*u + q*v` with a positive multiplicity, normalized so the
/// leftmost nonzero coefficient is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiLine {
    form: BinaryForm,
    mult: usize,
}

impl MultiLine {
    pub fn new(p: QuadScalar, q: QuadScalar, mult: usize) -> Result<Self, MultiError> {
        if p.context() != q.context() {
            return Err(MultiError::MixedField);
        }
        if mult == 0 {
            return Err(MultiError::BadMultiplicity);
        }
        if p.is_zero() && q.is_zero() {
            return Err(MultiError::ZeroForm);
        }
        let pivot = if p.is_zero() { q.clone() } else { p.clone() };
        let coeffs = vec![
            p.try_div(&pivot).expect("pivot nonzero"),
            q.try_div(&pivot).expect("pivot nonzero"),
        ];
        Ok(MultiLine {
            form: BinaryForm { degree: 1, coeffs },
            mult,
        })
    }

    pub fn from_ints(ctx: FieldContext, p: i64, q: i64, mult: usize) -> Result<Self, MultiError> {
        Self::new(QuadScalar::from_int(ctx, p), QuadScalar::from_int(ctx, q), mult)
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn p(&self) -> &QuadScalar {
        &self.form.coeffs[0]
    }

    pub fn q(&self) -> &QuadScalar {
        &self.form.coeffs[1]
    }

    pub fn mult(&self) -> usize {
        self.mult
    }
}

/// A rank-2 multiarrangement: pairwise non-proportional linear forms with
/// multiplicities, `|m|` their total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multiarrangement2 {
    ctx: FieldContext,
    lines: Vec<MultiLine>,
    total_mult: usize,
}

impl Multiarrangement2 {
    pub fn new(ctx: FieldContext, lines: Vec<MultiLine>) -> Result<Self, MultiError> {
        for (i, l) in lines.iter().enumerate() {
            if l.form.context() != ctx {
                return Err(MultiError::MixedField);
            }
            if lines[..i].iter().any(|m| m.form == l.form) {
                return Err(MultiError::DuplicateDirection);
            }
        }
        let total_mult = lines.iter().map(|l| l.mult).sum();
        Ok(Multiarrangement2 { ctx, lines, total_mult })
    }

    pub fn empty(ctx: FieldContext) -> Self {
        Multiarrangement2 { ctx, lines: Vec::new(), total_mult: 0 }
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn lines(&self) -> &[MultiLine] {
        &self.lines
    }

    /// |m|, the sum of all multiplicities.
    pub fn total_mult(&self) -> usize {
        self.total_mult
    }

    /// The multiset of multiplicities, sorted descending.
    pub fn mult_multiset(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.lines.iter().map(|l| l.mult).collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }

    /// The defining form, the product of all lines with multiplicity.
    pub fn defining_form(&self) -> BinaryForm {
        let mut acc = BinaryForm::new(self.ctx, vec![QuadScalar::one(self.ctx)])
            .expect("constant one form");
        for l in &self.lines {
            acc = acc.mul(&l.form.pow(l.mult));
        }
        acc
    }
}

/// A derivation `theta = f*d/du + g*d/dv` with homogeneous components of one
/// shared degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation2 {
    f: BinaryForm,
    g: BinaryForm,
}

impl Derivation2 {
    pub fn new(f: BinaryForm, g: BinaryForm) -> Result<Self, MultiError> {
        if f.degree != g.degree {
            return Err(MultiError::DegreeMismatch);
        }
        if f.context() != g.context() {
            return Err(MultiError::MixedField);
        }
        Ok(Derivation2 { f, g })
    }

    pub fn f(&self) -> &BinaryForm {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.f.degree
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// theta applied to a linear form `p*u + q*v`, i.e. `p*f + q*g`.
    pub fn applied_to(&self, p: &QuadScalar, q: &QuadScalar) -> BinaryForm {
        self.f
            .scaled(p)
            .try_add(&self.g.scaled(q))
            .expect("components share a degree")
    }
}

/// The multiexponents `(d1, d2)` of a rank-2 multiarrangement, sorted,
/// with `d1 + d2 = |m|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MultiExponents {
    pub d1: usize,
    pub d2: usize,
}

impl MultiExponents {
    pub fn product(&self) -> usize {
        self.d1 * self.d2
    }

    /// Layer dimension of a free rank-2 module with these exponents.
    pub fn layer_dim(&self, d: usize) -> usize {
        let part = |e: usize| (d + 1).saturating_sub(e);
        part(self.d1) + part(self.d2)
    }
}

impl fmt::Display for MultiExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// The Ziegler restriction of an arrangement onto the line `pivot`: the
/// other `ell - 1` lines are grouped by their intersection point with the
/// pivot, and each group of size k becomes one restricted line of
/// multiplicity k, so `|m| = ell - 1`.
///
/// Coordinates on the pivot are fixed by a deterministic rule: the two
/// lexicographically smallest canonical intersection points span the basis
/// (with a fallback second point when all other lines pass through one
/// point). Any basis gives the same exponents; the rule pins the forms.
pub fn ziegler_restriction(
    arr: &Arrangement,
    pivot: usize,
) -> Result<Multiarrangement2, MultiError> {
    if arr.len() < 2 {
        return Err(MultiError::SingleLine);
    }
    let pivot_line = arr.line(pivot).map_err(MultiError::from)?;
    let ctx = arr.context();

    let mut groups: Vec<(HomogeneousTriple, usize)> = Vec::new();
    for (j, line) in arr.lines().iter().enumerate() {
        if j == pivot {
            continue;
        }
        let q = meet(pivot_line, line).expect("arrangement lines are distinct");
        match groups.iter_mut().find(|(p, _)| p == &q) {
            Some((_, k)) => *k += 1,
            None => groups.push((q, 1)),
        }
    }
    groups.sort_by(|(p, _), (q, _)| p.cmp(q));

    let p0 = groups[0].0.clone();
    let p1 = match groups.get(1) {
        Some((p, _)) => p.clone(),
        None => fallback_point(pivot_line, &p0),
    };

    let mut lines = Vec::with_capacity(groups.len());
    for (point, mult) in &groups {
        let (alpha, beta) = coordinates_in_basis(point, &p0, &p1);
        // The form vanishing at alpha*P0 + beta*P1 is beta*u - alpha*v.
        lines.push(MultiLine::new(beta, -alpha, *mult)?);
    }
    Multiarrangement2::new(ctx, lines)
}

/// A deterministic second basis point on `line`, distinct from `p0`.
fn fallback_point(line: &HomogeneousTriple, p0: &HomogeneousTriple) -> HomogeneousTriple {
    let ctx = line.context();
    let mut candidates: Vec<HomogeneousTriple> = (0..3)
        .filter_map(|k| {
            let mut coords = [
                QuadScalar::zero(ctx),
                QuadScalar::zero(ctx),
                QuadScalar::zero(ctx),
            ];
            coords[k] = QuadScalar::one(ctx);
            let axis = HomogeneousTriple::new(coords[0].clone(), coords[1].clone(), coords[2].clone())
                .expect("unit triple");
            meet(line, &axis).ok()
        })
        .filter(|p| p != p0)
        .collect();
    candidates.sort();
    candidates.into_iter().next().expect("a projective line holds more than one point")
}

/// Solves `point = alpha*p0 + beta*p1` exactly (the point lies on the span).
fn coordinates_in_basis(
    point: &HomogeneousTriple,
    p0: &HomogeneousTriple,
    p1: &HomogeneousTriple,
) -> (QuadScalar, QuadScalar) {
    let a = p0.coords();
    let b = p1.coords();
    let y = point.coords();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let det = &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
            if det.is_zero() {
                continue;
            }
            let alpha = &(&(&y[i] * &b[j]) - &(&y[j] * &b[i])) / &det;
            let beta = &(&(&a[i] * &y[j]) - &(&a[j] * &y[i])) / &det;
            return (alpha, beta);
        }
    }
    unreachable!("basis points are projectively distinct");
}

/// Dimension over the field of the degree-`d` layer of the logarithmic
/// derivation module: pairs `(f, g)` of degree-`d` forms with
/// `p*f + q*g` divisible by `(p*u + q*v)^m` for every line.
///
/// Each line contributes `min(m, d+1)` exact linear conditions on the
/// `2(d+1)` unknown coefficients; the dimension is the nullity.
pub fn derivation_dim(m: &Multiarrangement2, d: usize) -> usize {
    let unknowns = 2 * (d + 1);
    let mut rows: Vec<Vec<QuadScalar>> = Vec::new();
    for line in &m.lines {
        for weights in remainder_rows(line.p(), line.q(), line.mult, d) {
            let mut row = Vec::with_capacity(unknowns);
            for w in &weights {
                row.push(line.p() * w);
            }
            for w in &weights {
                row.push(line.q() * w);
            }
            rows.push(row);
        }
    }
    unknowns - linalg::rank(rows)
}

/// Weight vectors over the coefficients of a degree-`d` form `h` whose
/// vanishing says `(p*u + q*v)^m` divides `h`.
///
/// For `q != 0`, substituting `v = (w - p*u)/q` and scaling by `q^d` turns
/// the coefficient of `w^j` into `sum_i C(i,j) (-p)^(i-j) q^(d-i) h_i`;
/// divisibility by `w^m` is the vanishing of the first `min(m, d+1)` of
/// them. For `q = 0` the form is a multiple of `u` and the conditions are
/// `h_(d-j) = 0` directly.
fn remainder_rows(p: &QuadScalar, q: &QuadScalar, mult: usize, d: usize) -> Vec<Vec<QuadScalar>> {
    let ctx = p.context();
    let conditions = mult.min(d + 1);
    let mut rows = Vec::with_capacity(conditions);
    if q.is_zero() {
        for j in 0..conditions {
            let mut row = vec![QuadScalar::zero(ctx); d + 1];
            row[d - j] = QuadScalar::one(ctx);
            rows.push(row);
        }
        return rows;
    }
    let neg_p = -p.clone();
    // q_pows[k] = q^k, neg_p_pows[k] = (-p)^k
    let mut q_pows = vec![QuadScalar::one(ctx)];
    let mut neg_p_pows = vec![QuadScalar::one(ctx)];
    for k in 1..=d {
        q_pows.push(&q_pows[k - 1] * q);
        neg_p_pows.push(&neg_p_pows[k - 1] * &neg_p);
    }
    for j in 0..conditions {
        let mut row = vec![QuadScalar::zero(ctx); d + 1];
        for (i, slot) in row.iter_mut().enumerate().skip(j) {
            let c = QuadScalar::from_int(ctx, binomial(i, j));
            *slot = &(&c * &neg_p_pows[i - j]) * &q_pows[d - i];
        }
        rows.push(row);
    }
    rows
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// The multiexponents: the first degree with a nonzero derivation layer and
/// its complement to `|m|`. For a rank-2 multiarrangement the module is free,
/// so the first exponent never exceeds `|m|/2`.
pub fn multi_exponents(m: &Multiarrangement2) -> MultiExponents {
    let total = m.total_mult();
    for d in 0..=(total / 2) {
        if derivation_dim(m, d) > 0 {
            return MultiExponents { d1: d, d2: total - d };
        }
    }
    unreachable!("a rank-2 derivation module has a layer of degree at most |m|/2");
}

/// Whether a derivation satisfies every tangency condition of `m`.
pub fn is_logarithmic(m: &Multiarrangement2, theta: &Derivation2) -> bool {
    m.lines.iter().all(|line| {
        let h = theta.applied_to(line.p(), line.q());
        divisible_by_power(&h, line.p(), line.q(), line.mult)
    })
}

/// Exact check that `(p*u + q*v)^m` divides the concrete form `h`.
fn divisible_by_power(h: &BinaryForm, p: &QuadScalar, q: &QuadScalar, mult: usize) -> bool {
    if h.is_zero() {
        return true;
    }
    if h.degree() < mult {
        return false;
    }
    remainder_rows(p, q, mult, h.degree()).iter().all(|weights| {
        let mut acc = QuadScalar::zero(h.context());
        for (w, c) in weights.iter().zip(h.coeffs()) {
            acc = &acc + &(w * c);
        }
        acc.is_zero()
    })
}

/// Saito's criterion for a pair of derivations: both must be logarithmic,
/// and the pair is a basis iff the coefficient determinant equals a nonzero
/// scalar multiple of the defining form.
pub fn saito_check(
    m: &Multiarrangement2,
    t1: &Derivation2,
    t2: &Derivation2,
) -> Result<bool, MultiError> {
    if !is_logarithmic(m, t1) || !is_logarithmic(m, t2) {
        return Err(MultiError::NotLogarithmic);
    }
    let det = t1
        .f
        .mul(&t2.g)
        .try_sub(&t2.f.mul(&t1.g))
        .expect("products share the degree sum");
    if det.is_zero() || det.degree() != m.total_mult() {
        return Ok(false);
    }
    let defining = m.defining_form();
    let k = defining
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("defining form of a multiarrangement is nonzero");
    if det.coeffs()[k].is_zero() {
        return Ok(false);
    }
    let scale = det.coeffs()[k].try_div(&defining.coeffs()[k]).expect("nonzero divisor");
    Ok(det == defining.scaled(&scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldContext;

    fn qctx() -> FieldContext {
        FieldContext::rational()
    }

    /// u^3 v^3 (u+v)^3: the well-known free submultiarrangement with
    /// exponents (4, 5).
    fn three_cubed() -> Multiarrangement2 {
        let ctx = qctx();
        Multiarrangement2::new(
            ctx,
            vec![
                MultiLine::from_ints(ctx, 1, 0, 3).unwrap(),
                MultiLine::from_ints(ctx, 0, 1, 3).unwrap(),
                MultiLine::from_ints(ctx, 1, 1, 3).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn empty_multiarrangement_has_two_constants() {
        let m = Multiarrangement2::empty(qctx());
        assert_eq!(derivation_dim(&m, 0), 2);
        assert_eq!(multi_exponents(&m), MultiExponents { d1: 0, d2: 0 });
    }

    #[test]
    fn simple_crossing_has_exponents_one_one() {
        let ctx = qctx();
        let m = Multiarrangement2::new(
            ctx,
            vec![
                MultiLine::from_ints(ctx, 1, 0, 1).unwrap(),
                MultiLine::from_ints(ctx, 0, 1, 1).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(derivation_dim(&m, 0), 0);
        assert_eq!(derivation_dim(&m, 1), 2);
        assert_eq!(multi_exponents(&m), MultiExponents { d1: 1, d2: 1 });
    }

    #[test]
    fn simple_multiplicities_give_one_and_k_minus_one() {
        let ctx = qctx();
        for k in 1..=5usize {
            let lines: Vec<MultiLine> = (0..k)
                .map(|t| {
                    if t == 0 {
                        MultiLine::from_ints(ctx, 0, 1, 1).unwrap()
                    } else {
                        MultiLine::from_ints(ctx, 1, (t as i64) - 1, 1).unwrap()
                    }
                })
                .collect();
            let m = Multiarrangement2::new(ctx, lines).unwrap();
            let exps = multi_exponents(&m);
            let expected = if k == 1 {
                MultiExponents { d1: 0, d2: 1 }
            } else {
                MultiExponents { d1: 1, d2: k - 1 }
            };
            assert_eq!(exps, expected, "k = {k}");
        }
    }

    #[test]
    fn three_cubed_exponents_and_layers() {
        let m = three_cubed();
        assert_eq!(derivation_dim(&m, 3), 0);
        assert_eq!(derivation_dim(&m, 4), 1);
        let exps = multi_exponents(&m);
        assert_eq!(exps, MultiExponents { d1: 4, d2: 5 });
        // The whole dimension profile matches the free-module layer formula.
        for d in 0..=m.total_mult() {
            assert_eq!(derivation_dim(&m, d), exps.layer_dim(d), "degree {d}");
        }
    }

    #[test]
    fn derivation_dim_is_nondecreasing() {
        let m = three_cubed();
        let dims: Vec<usize> = (0..=9).map(|d| derivation_dim(&m, d)).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn layer_formula_holds_on_random_multiarrangements() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let ctx = qctx();
        for _ in 0..200 {
            let nlines = rng.gen_range(1..=4);
            let mut lines: Vec<MultiLine> = Vec::new();
            let mut guard = 0;
            while lines.len() < nlines && guard < 100 {
                guard += 1;
                let p = rng.gen_range(-2..=2);
                let q = rng.gen_range(-2..=2);
                let mult = rng.gen_range(1..=3);
                if let Ok(l) = MultiLine::from_ints(ctx, p, q, mult) {
                    if !lines.iter().any(|m| m.form() == l.form()) {
                        lines.push(l);
                    }
                }
            }
            let m = Multiarrangement2::new(ctx, lines).unwrap();
            let exps = multi_exponents(&m);
            assert_eq!(exps.d1 + exps.d2, m.total_mult());
            // The module is free of rank 2, so every layer dimension is
            // pinned by the exponents.
            for d in 0..=m.total_mult() {
                assert_eq!(
                    derivation_dim(&m, d),
                    exps.layer_dim(d),
                    "dims of {m:?} at degree {d}"
                );
            }
        }
    }

    #[test]
    fn saito_accepts_the_displayed_basis_of_three_cubed() {
        let ctx = qctx();
        let m = three_cubed();
        // t1 = (u+2v)u^3 d/du - (2u+v)v^3 d/dv, degree 4.
        let t1 = Derivation2::new(
            BinaryForm::from_ints(ctx, &[1, 2, 0, 0, 0]).unwrap(),
            BinaryForm::from_ints(ctx, &[0, 0, 0, -2, -1]).unwrap(),
        )
        .unwrap();
        // t2 = (u+3v)v u^3 d/du + (3u+v)u v^3 d/dv, degree 5.
        let t2 = Derivation2::new(
            BinaryForm::from_ints(ctx, &[0, 1, 3, 0, 0, 0]).unwrap(),
            BinaryForm::from_ints(ctx, &[0, 0, 0, 3, 1, 0]).unwrap(),
        )
        .unwrap();
        assert!(is_logarithmic(&m, &t1));
        assert!(is_logarithmic(&m, &t2));
        assert!(saito_check(&m, &t1, &t2).unwrap());
        // A dependent pair has zero determinant.
        assert!(!saito_check(&m, &t1, &t1).unwrap());
    }

    #[test]
    fn saito_on_the_simple_crossing() {
        let ctx = qctx();
        let m = Multiarrangement2::new(
            ctx,
            vec![
                MultiLine::from_ints(ctx, 1, 0, 1).unwrap(),
                MultiLine::from_ints(ctx, 0, 1, 1).unwrap(),
            ],
        )
        .unwrap();
        // u d/du and v d/dv: det = uv.
        let t1 = Derivation2::new(
            BinaryForm::from_ints(ctx, &[1, 0]).unwrap(),
            BinaryForm::from_ints(ctx, &[0, 0]).unwrap(),
        )
        .unwrap();
        let t2 = Derivation2::new(
            BinaryForm::from_ints(ctx, &[0, 0]).unwrap(),
            BinaryForm::from_ints(ctx, &[0, 1]).unwrap(),
        )
        .unwrap();
        assert!(saito_check(&m, &t1, &t2).unwrap());
        // The Euler derivation alone is logarithmic but (t_E, t_E) is not a basis.
        let euler = Derivation2::new(
            BinaryForm::from_ints(ctx, &[1, 0]).unwrap(),
            BinaryForm::from_ints(ctx, &[0, 1]).unwrap(),
        )
        .unwrap();
        assert!(is_logarithmic(&m, &euler));
        assert!(!saito_check(&m, &euler, &euler).unwrap());
        // A non-logarithmic input is rejected, not judged.
        let bad = Derivation2::new(
            BinaryForm::from_ints(ctx, &[0, 1]).unwrap(),
            BinaryForm::from_ints(ctx, &[0, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(saito_check(&m, &bad, &t2), Err(MultiError::NotLogarithmic));
    }

    #[test]
    fn ziegler_restriction_of_a_pencil() {
        let ctx = qctx();
        let lines = vec![
            HomogeneousTriple::from_ints(ctx, [1, 0, 0]).unwrap(),
            HomogeneousTriple::from_ints(ctx, [0, 1, 0]).unwrap(),
            HomogeneousTriple::from_ints(ctx, [1, -1, 0]).unwrap(),
        ];
        let arr = Arrangement::new(ctx, lines).unwrap();
        let m = ziegler_restriction(&arr, 0).unwrap();
        assert_eq!(m.mult_multiset(), vec![2]);
        assert_eq!(m.total_mult(), 2);
        // One restricted line of multiplicity 2: exponents (0, 2).
        assert_eq!(multi_exponents(&m), MultiExponents { d1: 0, d2: 2 });
    }

    #[test]
    fn ziegler_restriction_of_the_dual_hesse_arrangement() {
        // Each line carries four triple points, so the restriction onto any
        // pivot is four points of multiplicity two.
        let arr = crate::catalog::get(
            crate::catalog::CatalogName::DualHesse,
            crate::catalog::CatalogParams::default(),
        )
        .unwrap()
        .arrangement;
        let lat = arr.lattice();
        for pivot in 0..arr.len() {
            let m = ziegler_restriction(&arr, pivot).unwrap();
            assert_eq!(m.mult_multiset(), vec![2, 2, 2, 2]);
            // Oracle: the multiplicities are the mu values of the lattice
            // points on the pivot line.
            let mut mus: Vec<usize> = lat.points_on_line(pivot).map(|p| p.mu).collect();
            mus.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(m.mult_multiset(), mus);
        }
    }

    #[test]
    fn ziegler_restriction_errors() {
        let ctx = qctx();
        let one_line = Arrangement::new(
            ctx,
            vec![HomogeneousTriple::from_ints(ctx, [1, 0, 0]).unwrap()],
        )
        .unwrap();
        assert_eq!(ziegler_restriction(&one_line, 0), Err(MultiError::SingleLine));
        let two = Arrangement::new(
            ctx,
            vec![
                HomogeneousTriple::from_ints(ctx, [1, 0, 0]).unwrap(),
                HomogeneousTriple::from_ints(ctx, [0, 1, 0]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(
            ziegler_restriction(&two, 5),
            Err(MultiError::Geometry(GeomError::IndexOutOfRange(5)))
        ));
    }
}
