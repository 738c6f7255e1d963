//! Projective points and lines over Q(sqrt(d)), arrangements, and the
//! intersection lattice.
//!
//! A central plane arrangement in C^3 is treated as a line arrangement in
//! the projective plane. Points and lines share one canonically normalized
//! coordinate type (projective duality), so building the lattice of multiple
//! points reduces to exact deduplication of pairwise meets.

mod iso;

pub use iso::{lattice_isomorphic, verify_iso_witness};

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::exactnum::{FieldContext, QuadScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("all three coordinates are zero")]
    ZeroTriple,
    #[error("coordinates belong to different field contexts")]
    MixedField,
    #[error("the two lines are equal")]
    EqualLines,
    #[error("duplicate line in arrangement")]
    DuplicateLine,
    #[error("line index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("an affine line needs a nonzero x or y coefficient")]
    NotAffineLine,
    #[error("the empty arrangement has no characteristic polynomial")]
    EmptyArrangement,
    #[error("transformation matrix is singular")]
    SingularMatrix,
}

/// A projective point, or dually a projective line, as a canonically
/// normalized coefficient triple: the leftmost nonzero coordinate equals 1.
/// Equality, hashing and ordering are therefore exact and canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HomogeneousTriple {
    coords: [QuadScalar; 3],
}

impl HomogeneousTriple {
    pub fn new(c0: QuadScalar, c1: QuadScalar, c2: QuadScalar) -> Result<Self, GeomError> {
        let ctx = c0.context();
        if c1.context() != ctx || c2.context() != ctx {
            return Err(GeomError::MixedField);
        }
        let coords = [c0, c1, c2];
        let pivot = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(GeomError::ZeroTriple)?
            .clone();
        let normalized = coords.map(|c| {
            c.try_div(&pivot).expect("pivot is nonzero in the shared context")
        });
        Ok(HomogeneousTriple { coords: normalized })
    }

    pub fn from_ints(ctx: FieldContext, c: [i64; 3]) -> Result<Self, GeomError> {
        let [c0, c1, c2] = c.map(|n| QuadScalar::from_int(ctx, n));
        Self::new(c0, c1, c2)
    }

    pub fn coords(&self) -> &[QuadScalar; 3] {
        &self.coords
    }

    pub fn context(&self) -> FieldContext {
        self.coords[0].context()
    }

    /// Exact inner product of a line's coefficients with a point's
    /// coordinates: zero iff the point lies on the line.
    pub fn dot(&self, other: &Self) -> QuadScalar {
        let mut acc = QuadScalar::zero(self.context());
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            acc = &acc + &(a * b);
        }
        acc
    }

    pub fn is_incident(&self, other: &Self) -> bool {
        self.dot(other).is_zero()
    }

    /// Coefficientwise Galois conjugate.
    pub fn conjugate(&self) -> Self {
        let [c0, c1, c2] = self.coords.clone();
        Self::new(c0.conjugate(), c1.conjugate(), c2.conjugate())
            .expect("conjugation preserves nonzero triples")
    }

    /// Applies an invertible linear substitution, given by matrix rows, to
    /// the coefficient triple.
    pub fn transformed(&self, rows: &[[QuadScalar; 3]; 3]) -> Result<Self, GeomError> {
        let mut out = Vec::with_capacity(3);
        for row in rows {
            let mut acc = QuadScalar::zero(self.context());
            for (m, c) in row.iter().zip(self.coords.iter()) {
                acc = &acc + &(m * c);
            }
            out.push(acc);
        }
        let [c0, c1, c2]: [QuadScalar; 3] = out.try_into().unwrap();
        Self::new(c0, c1, c2).map_err(|_| GeomError::SingularMatrix)
    }
}

impl fmt::Display for HomogeneousTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// The unique intersection point of two distinct lines: the cross product of
/// the coefficient triples, canonically normalized. Dually, the line spanned
/// by two distinct points.
pub fn meet(l1: &HomogeneousTriple, l2: &HomogeneousTriple) -> Result<HomogeneousTriple, GeomError> {
    if l1 == l2 {
        return Err(GeomError::EqualLines);
    }
    let a = l1.coords();
    let b = l2.coords();
    let c0 = &(&a[1] * &b[2]) - &(&a[2] * &b[1]);
    let c1 = &(&a[2] * &b[0]) - &(&a[0] * &b[2]);
    let c2 = &(&a[0] * &b[1]) - &(&a[1] * &b[0]);
    HomogeneousTriple::new(c0, c1, c2)
}

/// A central arrangement: an ordered list of pairwise distinct lines over a
/// fixed field context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    ctx: FieldContext,
    lines: Vec<HomogeneousTriple>,
}

impl Arrangement {
    pub fn new(ctx: FieldContext, lines: Vec<HomogeneousTriple>) -> Result<Self, GeomError> {
        for (i, l) in lines.iter().enumerate() {
            if l.context() != ctx {
                return Err(GeomError::MixedField);
            }
            if lines[..i].contains(l) {
                return Err(GeomError::DuplicateLine);
            }
        }
        Ok(Arrangement { ctx, lines })
    }

    pub fn empty(ctx: FieldContext) -> Self {
        Arrangement { ctx, lines: Vec::new() }
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[HomogeneousTriple] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> Result<&HomogeneousTriple, GeomError> {
        self.lines.get(i).ok_or(GeomError::IndexOutOfRange(i))
    }

    pub fn position(&self, line: &HomogeneousTriple) -> Option<usize> {
        self.lines.iter().position(|l| l == line)
    }

    pub fn with_line_added(&self, line: HomogeneousTriple) -> Result<Self, GeomError> {
        if line.context() != self.ctx {
            return Err(GeomError::MixedField);
        }
        if self.lines.contains(&line) {
            return Err(GeomError::DuplicateLine);
        }
        let mut lines = self.lines.clone();
        lines.push(line);
        Ok(Arrangement { ctx: self.ctx, lines })
    }

    pub fn with_line_removed(&self, i: usize) -> Result<Self, GeomError> {
        if i >= self.lines.len() {
            return Err(GeomError::IndexOutOfRange(i));
        }
        let mut lines = self.lines.clone();
        lines.remove(i);
        Ok(Arrangement { ctx: self.ctx, lines })
    }

    /// Coefficientwise Galois conjugate arrangement; it has the same
    /// intersection lattice.
    pub fn conjugate(&self) -> Self {
        Arrangement {
            ctx: self.ctx,
            lines: self.lines.iter().map(HomogeneousTriple::conjugate).collect(),
        }
    }

    pub fn transformed(&self, rows: &[[QuadScalar; 3]; 3]) -> Result<Self, GeomError> {
        let lines = self
            .lines
            .iter()
            .map(|l| l.transformed(rows))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.ctx, lines)
    }

    pub fn lattice(&self) -> Lattice {
        compute_lattice(self)
    }
}

/// Homogenizes affine lines `a*x + b*y + c = 0` into projective lines
/// `a*x + b*y + c*z = 0`, optionally appending the infinity line `z = 0`.
pub fn cone(
    ctx: FieldContext,
    affine: &[(QuadScalar, QuadScalar, QuadScalar)],
    add_infinity: bool,
) -> Result<Arrangement, GeomError> {
    let mut lines = Vec::with_capacity(affine.len() + 1);
    for (a, b, c) in affine {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::NotAffineLine);
        }
        lines.push(HomogeneousTriple::new(a.clone(), b.clone(), c.clone())?);
    }
    if add_infinity {
        lines.push(HomogeneousTriple::from_ints(ctx, [0, 0, 1])?);
    }
    Arrangement::new(ctx, lines)
}

/// One multiple point of an arrangement: its location, the sorted set of
/// incident line indices (0-based), and the Moebius value mu = |incident| - 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub point: HomogeneousTriple,
    pub incident: Vec<usize>,
    pub mu: usize,
}

/// All intersection points of an arrangement, canonically sorted. Every
/// unordered pair of lines appears in exactly one point's incident set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lattice {
    points: Vec<LatticePoint>,
    ell: usize,
    mu_total: usize,
}

/// Groups all pairwise meets of the arrangement's lines by canonical point.
pub fn compute_lattice(arr: &Arrangement) -> Lattice {
    let ell = arr.len();
    let mut groups: HashMap<HomogeneousTriple, Vec<usize>> = HashMap::new();
    for i in 0..ell {
        for j in (i + 1)..ell {
            let p = meet(&arr.lines[i], &arr.lines[j]).expect("arrangement lines are distinct");
            let entry = groups.entry(p).or_default();
            if !entry.contains(&i) {
                entry.push(i);
            }
            if !entry.contains(&j) {
                entry.push(j);
            }
        }
    }
    let mut points: Vec<LatticePoint> = groups
        .into_iter()
        .map(|(point, mut incident)| {
            incident.sort_unstable();
            let mu = incident.len() - 1;
            LatticePoint { point, incident, mu }
        })
        .collect();
    points.sort_by(|p, q| p.point.cmp(&q.point));
    let mu_total = points.iter().map(|p| p.mu).sum();
    let lat = Lattice { points, ell, mu_total };
    debug_assert!(lat.pair_count_holds());
    lat
}

impl Lattice {
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// mu_A, the sum of mu over all multiple points.
    pub fn mu_total(&self) -> usize {
        self.mu_total
    }

    pub fn max_mu(&self) -> usize {
        self.points.iter().map(|p| p.mu).max().unwrap_or(0)
    }

    pub fn points_on_line(&self, i: usize) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter().filter(move |p| p.incident.binary_search(&i).is_ok())
    }

    /// n_{A,H}: the number of distinct intersection points on line `i`.
    pub fn line_n(&self, i: usize) -> usize {
        self.points_on_line(i).count()
    }

    /// Index of the point whose incident set equals `lines` (sorted, 0-based).
    pub fn point_with_lines(&self, lines: &[usize]) -> Option<usize> {
        self.points.iter().position(|p| p.incident == lines)
    }

    /// Pair-count identity: sum over points of C(mu+1, 2) equals C(ell, 2).
    pub fn pair_count_holds(&self) -> bool {
        let lhs: usize = self.points.iter().map(|p| binom2(p.mu + 1)).sum();
        lhs == binom2(self.ell)
    }
}

pub(crate) fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Counts of multiple points by multiplicity: entry i (1-based) is
/// F_i = |M_i|, the number of points with mu = i. Trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FVector {
    entries: Vec<usize>,
}

impl FVector {
    pub fn new(mut entries: Vec<usize>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        FVector { entries }
    }

    pub fn from_counts(counts: &[usize]) -> Self {
        Self::new(counts.to_vec())
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// F_i for 1-based multiplicity i.
    pub fn count_mu(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.entries.get(i - 1).copied().unwrap_or(0)
        }
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// F(A): entry i counts lattice points with mu = i.
pub fn f_vector(lat: &Lattice) -> FVector {
    let mut counts = vec![0usize; lat.max_mu()];
    for p in lat.points() {
        counts[p.mu - 1] += 1;
    }
    FVector::new(counts)
}

/// Per-line incidence profile: n_{A,H}, the restricted F-vector F_H(A), and
/// mu_{A,H} (which always equals ell - 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineProfile {
    pub line_index: usize,
    pub n: usize,
    pub fh: FVector,
    pub mu_line: usize,
}

pub fn line_profile(lat: &Lattice, i: usize) -> Result<LineProfile, GeomError> {
    if i >= lat.ell() {
        return Err(GeomError::IndexOutOfRange(i));
    }
    let mut counts = vec![0usize; lat.max_mu()];
    let mut n = 0;
    let mut mu_line = 0;
    for p in lat.points_on_line(i) {
        counts[p.mu - 1] += 1;
        n += 1;
        mu_line += p.mu;
    }
    debug_assert!(lat.ell() < 1 || mu_line == lat.ell() - 1);
    Ok(LineProfile { line_index: i, n, fh: FVector::new(counts), mu_line })
}

/// The quadratic cofactor of the characteristic polynomial:
/// chi(A, t) = (t - 1) * (t^2 - (ell-1) t + (mu_A - ell + 1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    pub ell: usize,
    /// Coefficient of -t, equal to ell - 1.
    pub linear: i64,
    /// Constant term, equal to mu_A - ell + 1.
    pub constant: i64,
}

pub fn char_poly(lat: &Lattice) -> Result<CharPoly, GeomError> {
    if lat.ell() == 0 {
        return Err(GeomError::EmptyArrangement);
    }
    Ok(CharPoly {
        ell: lat.ell(),
        linear: (lat.ell() - 1) as i64,
        constant: lat.mu_total() as i64 - lat.ell() as i64 + 1,
    })
}

impl CharPoly {
    pub fn eval(&self, t: i64) -> i64 {
        t * t - self.linear * t + self.constant
    }

    /// Rechecks the lattice this polynomial was derived from.
    pub fn consistent_with(&self, lat: &Lattice) -> bool {
        self.ell == lat.ell()
            && self.linear == (lat.ell() - 1) as i64
            && self.constant == lat.mu_total() as i64 - lat.ell() as i64 + 1
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t - 1)(t^2 - {}t + {})", self.linear, self.constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat_int, QuadScalar, Rational};

    fn rational_lines(coeffs: &[[i64; 3]]) -> Arrangement {
        let ctx = FieldContext::rational();
        let lines = coeffs
            .iter()
            .map(|c| HomogeneousTriple::from_ints(ctx, *c).unwrap())
            .collect();
        Arrangement::new(ctx, lines).unwrap()
    }

    #[test]
    fn normalization_makes_leftmost_nonzero_one() {
        let ctx = FieldContext::rational();
        let t = HomogeneousTriple::from_ints(ctx, [2, 4, 6]).unwrap();
        assert_eq!(t, HomogeneousTriple::from_ints(ctx, [1, 2, 3]).unwrap());
        let u = HomogeneousTriple::from_ints(ctx, [0, 0, -5]).unwrap();
        assert_eq!(u, HomogeneousTriple::from_ints(ctx, [0, 0, 1]).unwrap());
        assert_eq!(
            HomogeneousTriple::from_ints(ctx, [0, 0, 0]),
            Err(GeomError::ZeroTriple)
        );
    }

    #[test]
    fn meet_of_coordinate_axes() {
        let ctx = FieldContext::rational();
        let x = HomogeneousTriple::from_ints(ctx, [1, 0, 0]).unwrap();
        let y = HomogeneousTriple::from_ints(ctx, [0, 1, 0]).unwrap();
        let p = meet(&x, &y).unwrap();
        assert_eq!(p, HomogeneousTriple::from_ints(ctx, [0, 0, 1]).unwrap());
        assert_eq!(meet(&x, &x), Err(GeomError::EqualLines));
        // meet is symmetric and the point lies on both lines.
        assert_eq!(p, meet(&y, &x).unwrap());
        assert!(x.is_incident(&p) && y.is_incident(&p));
    }

    #[test]
    fn meet_of_shifted_lines() {
        let ctx = FieldContext::rational();
        let l1 = HomogeneousTriple::from_ints(ctx, [1, 0, -1]).unwrap();
        let l2 = HomogeneousTriple::from_ints(ctx, [0, 1, -1]).unwrap();
        assert_eq!(
            meet(&l1, &l2).unwrap(),
            HomogeneousTriple::from_ints(ctx, [1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn dual_hesse_pencil_point() {
        // h1 = x and h5 = y + omega*x meet at [0:0:1], which also lies on h3 = y.
        let ctx = FieldContext::quadratic(-3).unwrap();
        let omega = QuadScalar::new(ctx, crate::exactnum::rat(-1, 2), crate::exactnum::rat(1, 2)).unwrap();
        let h1 = HomogeneousTriple::from_ints(ctx, [1, 0, 0]).unwrap();
        let h5 = HomogeneousTriple::new(omega, QuadScalar::one(ctx), QuadScalar::zero(ctx)).unwrap();
        let h3 = HomogeneousTriple::from_ints(ctx, [0, 1, 0]).unwrap();
        let p = meet(&h1, &h5).unwrap();
        assert_eq!(p, HomogeneousTriple::from_ints(ctx, [0, 0, 1]).unwrap());
        assert!(h3.is_incident(&p));
    }

    #[test]
    fn pencil_lattice() {
        let arr = rational_lines(&[[1, 0, 0], [0, 1, 0], [1, -1, 0]]);
        let lat = arr.lattice();
        assert_eq!(lat.points().len(), 1);
        assert_eq!(lat.points()[0].mu, 2);
        assert_eq!(lat.points()[0].incident, vec![0, 1, 2]);
        assert_eq!(f_vector(&lat), FVector::new(vec![0, 1]));
        assert!(lat.pair_count_holds());
    }

    #[test]
    fn triangle_lattice_and_char_poly() {
        let arr = rational_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let lat = arr.lattice();
        assert_eq!(lat.points().len(), 3);
        assert_eq!(f_vector(&lat), FVector::new(vec![3]));
        let chi = char_poly(&lat).unwrap();
        assert_eq!((chi.linear, chi.constant), (2, 1));
        assert!(chi.consistent_with(&lat));
    }

    #[test]
    fn empty_char_poly_is_an_error() {
        let arr = Arrangement::empty(FieldContext::rational());
        assert_eq!(char_poly(&arr.lattice()), Err(GeomError::EmptyArrangement));
    }

    #[test]
    fn cone_parallel_lines_meet_at_infinity() {
        let ctx = FieldContext::rational();
        let one = QuadScalar::one(ctx);
        let zero = QuadScalar::zero(ctx);
        // x = 1, x = 2, y = 0, plus the infinity line.
        let affine = vec![
            (one.clone(), zero.clone(), QuadScalar::from_int(ctx, -1)),
            (one.clone(), zero.clone(), QuadScalar::from_int(ctx, -2)),
            (zero.clone(), one.clone(), zero.clone()),
        ];
        let arr = cone(ctx, &affine, true).unwrap();
        assert_eq!(arr.len(), 4);
        let p = meet(arr.line(0).unwrap(), arr.line(1).unwrap()).unwrap();
        assert_eq!(p, HomogeneousTriple::from_ints(ctx, [0, 1, 0]).unwrap());
        assert!(arr.line(3).unwrap().is_incident(&p));
        // Without the infinity line only the two parallels and the axis remain.
        assert_eq!(cone(ctx, &affine[..2], false).unwrap().len(), 2);
    }

    #[test]
    fn cone_rejects_duplicates_and_degenerate_lines() {
        let ctx = FieldContext::rational();
        let one = QuadScalar::one(ctx);
        let zero = QuadScalar::zero(ctx);
        let dup = vec![
            (one.clone(), zero.clone(), zero.clone()),
            (QuadScalar::from_int(ctx, 2), zero.clone(), zero.clone()),
        ];
        assert_eq!(cone(ctx, &dup, false), Err(GeomError::DuplicateLine));
        let degenerate = vec![(zero.clone(), zero.clone(), one.clone())];
        assert_eq!(cone(ctx, &degenerate, false), Err(GeomError::NotAffineLine));
    }

    #[test]
    fn conjugate_arrangement_is_involutive_and_fixes_rationals() {
        let ctx = FieldContext::quadratic(5).unwrap();
        let zeta = QuadScalar::new(ctx, crate::exactnum::rat(1, 2), crate::exactnum::rat(1, 2)).unwrap();
        let lines = vec![
            HomogeneousTriple::from_ints(ctx, [1, 0, 0]).unwrap(),
            HomogeneousTriple::new(zeta, QuadScalar::one(ctx), QuadScalar::zero(ctx)).unwrap(),
        ];
        let arr = Arrangement::new(ctx, lines).unwrap();
        assert_eq!(arr.conjugate().conjugate(), arr);
        assert_ne!(arr.conjugate(), arr);

        let rational = rational_lines(&[[1, 0, 0], [0, 1, 0]]);
        assert_eq!(rational.conjugate(), rational);
    }

    #[test]
    fn line_profiles_satisfy_identities() {
        // Two pencils sharing a line make uneven profiles.
        let arr = rational_lines(&[[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1], [1, 0, -1]]);
        let lat = arr.lattice();
        let ell = arr.len();
        for i in 0..ell {
            let p = line_profile(&lat, i).unwrap();
            assert_eq!(p.fh.entries().iter().sum::<usize>(), p.n);
            let weighted: usize = p
                .fh
                .entries()
                .iter()
                .enumerate()
                .map(|(k, f)| (k + 1) * f)
                .sum();
            assert_eq!(weighted, ell - 1);
            assert_eq!(p.mu_line, ell - 1);
        }
        assert!(line_profile(&lat, ell).is_err());
    }

    #[test]
    fn transform_preserves_f_vector() {
        let arr = rational_lines(&[[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1]]);
        let ctx = arr.context();
        let m = [
            [rat_int(1), rat_int(2), rat_int(0)],
            [rat_int(0), rat_int(1), rat_int(3)],
            [rat_int(1), rat_int(0), rat_int(1)],
        ]
        .map(|row| row.map(|r: Rational| QuadScalar::from_rational(ctx, r)));
        let moved = arr.transformed(&m).unwrap();
        assert_eq!(f_vector(&moved.lattice()), f_vector(&arr.lattice()));
    }
}
