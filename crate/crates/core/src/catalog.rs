//! Exact constructors for the named arrangements, each validated against
//! its expected intersection-lattice invariants at construction time.

use std::fmt;

use serde::Serialize;

use crate::exactnum::{rat, FieldContext, NumError, QuadScalar, Rational};
use crate::geometry::{cone, f_vector, Arrangement, FVector, GeomError, HomogeneousTriple};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("lambda = {0} is not generic for the 13-line arrangement")]
    NonGenericLambda(Rational),
    #[error("family `{0}` needs a size parameter k >= {1}")]
    MissingSize(&'static str, usize),
    #[error("catalog validation failed for `{name}`: {detail}")]
    ValidationFailed { name: &'static str, detail: String },
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CatalogName {
    DualHesse,
    DualHesseAffine,
    Pentagonal,
    G443,
    G443Affine,
    Ch13,
    Pencil,
    NearPencil,
}

impl CatalogName {
    pub const ALL: [CatalogName; 8] = [
        CatalogName::DualHesse,
        CatalogName::DualHesseAffine,
        CatalogName::Pentagonal,
        CatalogName::G443,
        CatalogName::G443Affine,
        CatalogName::Ch13,
        CatalogName::Pencil,
        CatalogName::NearPencil,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogName::DualHesse => "dual_hesse",
            CatalogName::DualHesseAffine => "dual_hesse_affine",
            CatalogName::Pentagonal => "pentagonal",
            CatalogName::G443 => "g443",
            CatalogName::G443Affine => "g443_affine",
            CatalogName::Ch13 => "ch13",
            CatalogName::Pencil => "pencil",
            CatalogName::NearPencil => "near_pencil",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        Self::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| CatalogError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Optional construction parameters: `lambda` for the 13-line arrangement,
/// `k` for the pencil and near-pencil families.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CatalogParams {
    #[serde(serialize_with = "serialize_rational_opt")]
    pub lambda: Option<Rational>,
    pub k: Option<usize>,
}

fn serialize_rational_opt<S: serde::Serializer>(
    v: &Option<Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub params: CatalogParams,
    pub arrangement: Arrangement,
    pub expected_f: FVector,
    /// Expected exponents (a, b) of exp = (1, a, b).
    pub expected_exponents: (usize, usize),
}

/// Builds a named arrangement and validates its lattice against the
/// expected invariants, failing loudly on any mismatch.
pub fn get(name: CatalogName, params: CatalogParams) -> Result<CatalogEntry, CatalogError> {
    let (arrangement, expected_f, expected_exponents) = match name {
        CatalogName::DualHesse => (dual_hesse()?, FVector::new(vec![0, 12]), (4, 4)),
        CatalogName::DualHesseAffine => (dual_hesse_affine()?, FVector::new(vec![0, 12]), (4, 4)),
        CatalogName::Pentagonal => (pentagonal()?, FVector::new(vec![10, 5, 5]), (5, 5)),
        CatalogName::G443 => (g443()?, FVector::new(vec![0, 16, 3]), (5, 6)),
        CatalogName::G443Affine => (g443_affine()?, FVector::new(vec![0, 16, 3]), (5, 6)),
        CatalogName::Ch13 => {
            let lambda = params.lambda.clone().unwrap_or_else(|| rat(2, 3));
            let arr = ch13(&lambda)?;
            validate_ch13(&arr)?;
            (arr, FVector::new(vec![21, 3, 3, 3]), (6, 6))
        }
        CatalogName::Pencil => {
            let k = params.k.ok_or(CatalogError::MissingSize("pencil", 1))?;
            if k < 1 {
                return Err(CatalogError::MissingSize("pencil", 1));
            }
            let mut f = vec![0; k.saturating_sub(1)];
            if k >= 2 {
                f[k - 2] = 1;
            }
            (pencil(k)?, FVector::new(f), (0, k - 1))
        }
        CatalogName::NearPencil => {
            let k = params.k.ok_or(CatalogError::MissingSize("near_pencil", 3))?;
            if k < 3 {
                return Err(CatalogError::MissingSize("near_pencil", 3));
            }
            let mut f = vec![0; k - 2];
            f[0] = k - 1;
            f[k - 3] += 1;
            (near_pencil(k)?, FVector::new(f), (1, k - 2))
        }
    };
    let actual_f = f_vector(&arrangement.lattice());
    if actual_f != expected_f {
        return Err(CatalogError::ValidationFailed {
            name: name.as_str(),
            detail: format!("F-vector {actual_f}, expected {expected_f}"),
        });
    }
    Ok(CatalogEntry { name, params, arrangement, expected_f, expected_exponents })
}

/// omega = (-1 + s(-3))/2, a primitive third root of unity.
fn omega(ctx: FieldContext) -> QuadScalar {
    QuadScalar::new(ctx, rat(-1, 2), rat(1, 2)).expect("quadratic context")
}

/// zeta = (1 + s(5))/2, the golden ratio, root of z^2 - z - 1.
fn zeta(ctx: FieldContext) -> QuadScalar {
    QuadScalar::new(ctx, rat(1, 2), rat(1, 2)).expect("quadratic context")
}

/// The nine lines of (x^3 - y^3)(y^3 - z^3)(z^3 - x^3) over Q(s(-3)).
fn dual_hesse() -> Result<Arrangement, CatalogError> {
    let ctx = FieldContext::quadratic(-3)?;
    let w = omega(ctx);
    let one = QuadScalar::one(ctx);
    let zero = QuadScalar::zero(ctx);
    let mut lines = Vec::with_capacity(9);
    let mut wk = one.clone();
    let mut powers = Vec::with_capacity(3);
    for _ in 0..3 {
        powers.push(wk.clone());
        wk = &wk * &w;
    }
    for p in &powers {
        lines.push(HomogeneousTriple::new(one.clone(), -p.clone(), zero.clone())?);
    }
    for p in &powers {
        lines.push(HomogeneousTriple::new(zero.clone(), one.clone(), -p.clone())?);
    }
    for p in &powers {
        lines.push(HomogeneousTriple::new(-p.clone(), zero.clone(), one.clone())?);
    }
    Ok(Arrangement::new(ctx, lines)?)
}

/// The coned coordinate realization of the dual Hesse arrangement, with the
/// infinity line last (index 8).
fn dual_hesse_affine() -> Result<Arrangement, CatalogError> {
    let ctx = FieldContext::quadratic(-3)?;
    let w = omega(ctx);
    let w2 = &w * &w;
    let one = QuadScalar::one(ctx);
    let zero = QuadScalar::zero(ctx);
    let neg_one = -one.clone();
    let affine = vec![
        // h1 = x, h2 = x - 1, h3 = y, h4 = y - 1
        (one.clone(), zero.clone(), zero.clone()),
        (one.clone(), zero.clone(), neg_one.clone()),
        (zero.clone(), one.clone(), zero.clone()),
        (zero.clone(), one.clone(), neg_one.clone()),
        // h5 = y + w x, h6 = y + w x + w^2
        (w.clone(), one.clone(), zero.clone()),
        (w.clone(), one.clone(), w2.clone()),
        // h7 = y - w^2 x - 1, h8 = y - w^2 x + w^2
        (-w2.clone(), one.clone(), neg_one.clone()),
        (-w2.clone(), one.clone(), w2.clone()),
    ];
    Ok(cone(ctx, &affine, true)?)
}

/// The pentagonal arrangement in golden-ratio coordinates, coned with the
/// infinity line last (index 10).
fn pentagonal() -> Result<Arrangement, CatalogError> {
    let ctx = FieldContext::quadratic(5)?;
    let z = zeta(ctx);
    let one = QuadScalar::one(ctx);
    let zero = QuadScalar::zero(ctx);
    let neg_one = -one.clone();
    let affine = vec![
        // h1 = x, h2 = x + y - 1, h3 = y - 1, h4 = x - zeta y + zeta, h5 = y
        (one.clone(), zero.clone(), zero.clone()),
        (one.clone(), one.clone(), neg_one.clone()),
        (zero.clone(), one.clone(), neg_one.clone()),
        (one.clone(), -z.clone(), z.clone()),
        (zero.clone(), one.clone(), zero.clone()),
        // h6 = x - zeta y, h7 = zeta x - y, h8 = zeta x - y - zeta
        (one.clone(), -z.clone(), zero.clone()),
        (z.clone(), neg_one.clone(), zero.clone()),
        (z.clone(), neg_one.clone(), -z.clone()),
        // h9 = x - 1, h10 = x + y - (zeta + 1)
        (one.clone(), zero.clone(), neg_one.clone()),
        (one.clone(), one.clone(), -(&z + &one)),
    ];
    Ok(cone(ctx, &affine, true)?)
}

/// The twelve lines of (x^4 - y^4)(y^4 - z^4)(z^4 - x^4) over Q(s(-1)).
fn g443() -> Result<Arrangement, CatalogError> {
    let ctx = FieldContext::quadratic(-1)?;
    let i = QuadScalar::radical(ctx)?;
    let one = QuadScalar::one(ctx);
    let zero = QuadScalar::zero(ctx);
    let mut powers = Vec::with_capacity(4);
    let mut ik = one.clone();
    for _ in 0..4 {
        powers.push(ik.clone());
        ik = &ik * &i;
    }
    let mut lines = Vec::with_capacity(12);
    for p in &powers {
        lines.push(HomogeneousTriple::new(one.clone(), -p.clone(), zero.clone())?);
    }
    for p in &powers {
        lines.push(HomogeneousTriple::new(zero.clone(), one.clone(), -p.clone())?);
    }
    for p in &powers {
        lines.push(HomogeneousTriple::new(-p.clone(), zero.clone(), one.clone())?);
    }
    Ok(Arrangement::new(ctx, lines)?)
}

/// The affine model of the G(4,4,3) arrangement with scale fixed by
/// {p, q} = {s(-1), 1 + s(-1)}; twelve lines, no infinity line.
fn g443_affine() -> Result<Arrangement, CatalogError> {
    let ctx = FieldContext::quadratic(-1)?;
    let i = QuadScalar::radical(ctx)?;
    let one = QuadScalar::one(ctx);
    let zero = QuadScalar::zero(ctx);
    let neg_one = -one.clone();
    let p = i.clone();
    let q = &one + &i;
    let affine = vec![
        // h1..h4: x, x - 1, x - p, x - q
        (one.clone(), zero.clone(), zero.clone()),
        (one.clone(), zero.clone(), neg_one.clone()),
        (one.clone(), zero.clone(), -p.clone()),
        (one.clone(), zero.clone(), -q.clone()),
        // h5..h8: y, y - 1, y - p, y - q
        (zero.clone(), one.clone(), zero.clone()),
        (zero.clone(), one.clone(), neg_one.clone()),
        (zero.clone(), one.clone(), -p.clone()),
        (zero.clone(), one.clone(), -q.clone()),
        // h9 = x - y and the three remaining factors of the quartic
        (one.clone(), neg_one.clone(), zero.clone()),
        (one.clone(), -i.clone(), neg_one.clone()),
        (one.clone(), one.clone(), -q.clone()),
        (one.clone(), i.clone(), -i.clone()),
    ];
    Ok(cone(ctx, &affine, false)?)
}

/// The thirteen-line arrangement over Q(s(3)): twelve affine lines with a
/// rational parameter plus the infinity line (index 12).
fn ch13(lambda: &Rational) -> Result<Arrangement, CatalogError> {
    if !is_generic_lambda(lambda) {
        return Err(CatalogError::NonGenericLambda(lambda.clone()));
    }
    let ctx = FieldContext::quadratic(3)?;
    let s3 = QuadScalar::radical(ctx)?;
    let lam = QuadScalar::from_rational(ctx, lambda.clone());
    let one = QuadScalar::one(ctx);
    let two = QuadScalar::from_int(ctx, 2);
    let zero = QuadScalar::zero(ctx);
    let lam_p1 = &lam + &one;
    let lam_m2 = &lam - &two;
    let one_m2lam = &one - &(&two * &lam);
    // -lambda^2 + lambda - 1, the shared constant of h10, h11, h12.
    let c = &(&lam - &(&lam * &lam)) - &one;
    let affine = vec![
        // h1 = -s3 x - y + (lambda + 1)
        (-s3.clone(), -one.clone(), lam_p1.clone()),
        // h2 = 2y + (lambda + 1)
        (zero.clone(), two.clone(), lam_p1.clone()),
        // h3 = s3 x - y + (lambda + 1)
        (s3.clone(), -one.clone(), lam_p1.clone()),
        // h4 = s3 x - y + (lambda - 2)
        (s3.clone(), -one.clone(), lam_m2.clone()),
        // h5 = -s3 x - y + (lambda - 2)
        (-s3.clone(), -one.clone(), lam_m2.clone()),
        // h6 = 2y + (lambda - 2)
        (zero.clone(), two.clone(), lam_m2.clone()),
        // h7 = 2y + (1 - 2 lambda)
        (zero.clone(), two.clone(), one_m2lam.clone()),
        // h8 = s3 x - y + (1 - 2 lambda)
        (s3.clone(), -one.clone(), one_m2lam.clone()),
        // h9 = -s3 x - y + (1 - 2 lambda)
        (-s3.clone(), -one.clone(), one_m2lam.clone()),
        // h10 = s3 (1 - lambda) x + (lambda + 1) y + c
        (&s3 * &(&one - &lam), lam_p1.clone(), c.clone()),
        // h11 = s3 lambda x + (lambda - 2) y + c
        (&s3 * &lam, lam_m2.clone(), c.clone()),
        // h12 = -s3 x + (1 - 2 lambda) y + c
        (-s3.clone(), one_m2lam.clone(), c.clone()),
    ];
    Ok(cone(ctx, &affine, true)?)
}

/// The genericity condition on the rational parameter:
/// lambda (lambda-1) (lambda-2) (2 lambda-1) (lambda+1) (lambda^2-lambda+1)
/// must not vanish.
pub fn is_generic_lambda(lambda: &Rational) -> bool {
    let l = lambda.clone();
    let factors = [
        l.clone(),
        &l - &rat(1, 1),
        &l - &rat(2, 1),
        &(&l * &rat(2, 1)) - &rat(1, 1),
        &l + &rat(1, 1),
        &(&l * &l) - &(&l - &rat(1, 1)),
    ];
    factors.iter().all(|f| !num_traits::Zero::is_zero(f))
}

/// The reference multiple-point families of the 13-line arrangement
/// (1-based line indices).
pub const CH13_M2: [[usize; 3]; 3] = [[1, 6, 8], [2, 4, 9], [3, 5, 7]];
pub const CH13_M3: [[usize; 4]; 3] = [[1, 5, 9, 13], [2, 6, 7, 13], [3, 4, 8, 13]];
pub const CH13_M4: [[usize; 5]; 3] = [[1, 4, 7, 10, 11], [2, 5, 8, 11, 12], [3, 6, 9, 10, 12]];

/// Checks the 13-line lattice against the reference point families: a
/// lambda passing the polynomial condition could still degenerate, so the
/// lattice itself is validated.
fn validate_ch13(arr: &Arrangement) -> Result<(), CatalogError> {
    let lat = arr.lattice();
    let fail = |detail: String| CatalogError::ValidationFailed { name: "ch13", detail };
    let check = |sets: Vec<Vec<usize>>, mu: usize| -> Result<(), CatalogError> {
        for set in sets {
            let zero_based: Vec<usize> = set.iter().map(|i| i - 1).collect();
            match lat.point_with_lines(&zero_based) {
                Some(idx) if lat.points()[idx].mu == mu => {}
                _ => {
                    return Err(fail(format!(
                        "expected a multiplicity-{mu} point on lines {set:?}"
                    )))
                }
            }
        }
        Ok(())
    };
    check(CH13_M2.iter().map(|s| s.to_vec()).collect(), 2)?;
    check(CH13_M3.iter().map(|s| s.to_vec()).collect(), 3)?;
    check(CH13_M4.iter().map(|s| s.to_vec()).collect(), 4)?;
    for i in 0..arr.len() {
        if lat.line_n(i) != 6 {
            return Err(fail(format!("line {} has n = {}, expected 6", i + 1, lat.line_n(i))));
        }
    }
    Ok(())
}

/// k concurrent lines through [0 : 0 : 1].
fn pencil(k: usize) -> Result<Arrangement, CatalogError> {
    let ctx = FieldContext::rational();
    let mut lines = vec![HomogeneousTriple::from_ints(ctx, [0, 1, 0])?];
    for t in 0..k.saturating_sub(1) {
        lines.push(HomogeneousTriple::from_ints(ctx, [1, -(t as i64), 0])?);
    }
    Ok(Arrangement::new(ctx, lines)?)
}

/// k - 1 concurrent lines plus one line missing their center.
fn near_pencil(k: usize) -> Result<Arrangement, CatalogError> {
    let ctx = FieldContext::rational();
    let base = pencil(k - 1)?;
    let mut lines = base.lines().to_vec();
    lines.push(HomogeneousTriple::from_ints(ctx, [0, 0, 1])?);
    Ok(Arrangement::new(ctx, lines)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{char_poly, lattice_isomorphic, line_profile};

    fn entry(name: CatalogName) -> CatalogEntry {
        get(name, CatalogParams::default()).expect("catalog entry validates")
    }

    #[test]
    fn dual_hesse_has_twelve_triple_points() {
        let e = entry(CatalogName::DualHesse);
        assert_eq!(e.arrangement.len(), 9);
        let lat = e.arrangement.lattice();
        assert_eq!(f_vector(&lat), FVector::new(vec![0, 12]));
        // Every line meets the others in exactly four triple points.
        for i in 0..9 {
            let p = line_profile(&lat, i).unwrap();
            assert_eq!(p.n, 4);
            assert_eq!(p.fh.entries(), &[0, 4]);
        }
        let chi = char_poly(&lat).unwrap();
        assert_eq!((chi.linear, chi.constant), (8, 16));
    }

    #[test]
    fn dual_hesse_realizations_are_isomorphic() {
        let canonical = entry(CatalogName::DualHesse);
        let affine = entry(CatalogName::DualHesseAffine);
        assert!(lattice_isomorphic(&canonical.arrangement, &affine.arrangement).is_some());
    }

    #[test]
    fn pentagonal_profiles() {
        let e = entry(CatalogName::Pentagonal);
        assert_eq!(e.arrangement.len(), 11);
        let lat = e.arrangement.lattice();
        // Lines 1..10 carry [2,1,2]; the coned line carries [0,5,0].
        for i in 0..10 {
            let p = line_profile(&lat, i).unwrap();
            assert_eq!(p.fh.entries(), &[2, 1, 2], "line {}", i + 1);
        }
        let coned = line_profile(&lat, 10).unwrap();
        assert_eq!(coned.fh.entries(), &[0, 5]);
        assert_eq!(coned.n, 5);
    }

    #[test]
    fn g443_realizations_are_isomorphic() {
        let canonical = entry(CatalogName::G443);
        let affine = entry(CatalogName::G443Affine);
        assert_eq!(canonical.arrangement.len(), 12);
        assert_eq!(affine.arrangement.len(), 12);
        assert!(lattice_isomorphic(&canonical.arrangement, &affine.arrangement).is_some());
    }

    #[test]
    fn ch13_lattice_matches_reference_families() {
        let e = entry(CatalogName::Ch13);
        assert_eq!(e.arrangement.len(), 13);
        let lat = e.arrangement.lattice();
        assert_eq!(f_vector(&lat), FVector::new(vec![21, 3, 3, 3]));
        let chi = char_poly(&lat).unwrap();
        assert_eq!((chi.linear, chi.constant), (12, 36));
        for m4 in CH13_M4 {
            let zero_based: Vec<usize> = m4.iter().map(|i| i - 1).collect();
            let idx = lat.point_with_lines(&zero_based).expect("reference quintuple point");
            assert_eq!(lat.points()[idx].mu, 4);
        }
    }

    #[test]
    fn ch13_rejects_non_generic_lambda() {
        for bad in [rat(1, 1), rat(0, 1), rat(2, 1), rat(1, 2), rat(-1, 1)] {
            let r = get(
                CatalogName::Ch13,
                CatalogParams { lambda: Some(bad.clone()), k: None },
            );
            assert!(
                matches!(r, Err(CatalogError::NonGenericLambda(_))),
                "lambda = {bad}"
            );
        }
    }

    #[test]
    fn ch13_other_generic_lambda_still_validates() {
        let e = get(
            CatalogName::Ch13,
            CatalogParams { lambda: Some(rat(3, 5)), k: None },
        )
        .unwrap();
        assert_eq!(e.arrangement.len(), 13);
    }

    #[test]
    fn pencil_and_near_pencil_families() {
        for k in 1..=6 {
            let e = get(CatalogName::Pencil, CatalogParams { lambda: None, k: Some(k) }).unwrap();
            assert_eq!(e.arrangement.len(), k);
        }
        for k in 3..=6 {
            let e = get(CatalogName::NearPencil, CatalogParams { lambda: None, k: Some(k) }).unwrap();
            assert_eq!(e.arrangement.len(), k);
        }
        assert!(get(CatalogName::Pencil, CatalogParams::default()).is_err());
    }

    #[test]
    fn name_round_trip() {
        for n in CatalogName::ALL {
            assert_eq!(CatalogName::parse(n.as_str()).unwrap(), n);
        }
        assert!(CatalogName::parse("hesse").is_err());
    }

    /// Finds the lattice point with exactly this 1-based incident set.
    fn point_at(lat: &crate::geometry::Lattice, lines_1b: &[usize]) -> HomogeneousTriple {
        let mut z: Vec<usize> = lines_1b.iter().map(|i| i - 1).collect();
        z.sort_unstable();
        let idx = lat.point_with_lines(&z).unwrap_or_else(|| panic!("point {lines_1b:?}"));
        lat.points()[idx].point.clone()
    }

    #[test]
    fn dual_hesse_affine_solved_coordinates() {
        // The coordinate solve pins (p, q, r, s) = (-w^2, -w, -w, -w^2):
        // {1,6,8} = (0,p), {2,5,7} = (1,q), {3,6,7} = (r,0), {4,5,8} = (s,1).
        let e = entry(CatalogName::DualHesseAffine);
        let ctx = e.arrangement.context();
        let lat = e.arrangement.lattice();
        let w = omega(ctx);
        let w2 = &w * &w;
        let one = QuadScalar::one(ctx);
        let zero = QuadScalar::zero(ctx);
        let affine = |x: QuadScalar, y: QuadScalar| {
            HomogeneousTriple::new(x, y, one.clone()).unwrap()
        };
        assert_eq!(point_at(&lat, &[1, 6, 8]), affine(zero.clone(), -w2.clone()));
        assert_eq!(point_at(&lat, &[2, 5, 7]), affine(one.clone(), -w.clone()));
        assert_eq!(point_at(&lat, &[3, 6, 7]), affine(-w.clone(), zero.clone()));
        assert_eq!(point_at(&lat, &[4, 5, 8]), affine(-w2.clone(), one.clone()));
    }

    #[test]
    fn pentagonal_double_points_have_reference_coordinates() {
        let e = entry(CatalogName::Pentagonal);
        let ctx = e.arrangement.context();
        let lat = e.arrangement.lattice();
        let z = zeta(ctx);
        let one = QuadScalar::one(ctx);
        let zero = QuadScalar::zero(ctx);
        let zp1 = &z + &one;
        let zm1 = &z - &one;
        let two = QuadScalar::from_int(ctx, 2);
        let affine = |x: &QuadScalar, y: &QuadScalar| {
            HomogeneousTriple::new(x.clone(), y.clone(), one.clone()).unwrap()
        };
        let table: Vec<(&[usize], QuadScalar, QuadScalar)> = vec![
            (&[1, 8], zero.clone(), -z.clone()),
            (&[1, 10], zero.clone(), zp1.clone()),
            (&[2, 6], zm1.clone(), &two - &z),
            (&[4, 5], -z.clone(), zero.clone()),
            (&[5, 10], zp1.clone(), zero.clone()),
            (&[2, 7], &two - &z, zm1.clone()),
            (&[3, 7], zm1.clone(), one.clone()),
            (&[3, 9], one.clone(), one.clone()),
            (&[4, 8], zp1.clone(), zp1.clone()),
            (&[6, 9], one.clone(), zm1.clone()),
        ];
        for (lines, x, y) in table {
            assert_eq!(point_at(&lat, lines), affine(&x, &y), "point {lines:?}");
        }
    }

    #[test]
    fn ch13_double_point_table() {
        // The 21 double points, by incident line pairs.
        let e = entry(CatalogName::Ch13);
        let lat = e.arrangement.lattice();
        let expected: [[usize; 2]; 21] = [
            [1, 2], [2, 10], [4, 5], [5, 10], [7, 8], [8, 10], [10, 13],
            [2, 3], [3, 11], [5, 6], [6, 11], [8, 9], [9, 11], [11, 13],
            [1, 3], [1, 12], [4, 6], [4, 12], [7, 9], [7, 12], [12, 13],
        ];
        let mut got: Vec<Vec<usize>> = lat
            .points()
            .iter()
            .filter(|p| p.mu == 1)
            .map(|p| p.incident.iter().map(|i| i + 1).collect())
            .collect();
        got.sort();
        let mut want: Vec<Vec<usize>> = expected
            .iter()
            .map(|pair| {
                let mut v = pair.to_vec();
                v.sort_unstable();
                v
            })
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn ch13_lattice_admits_the_rotation_automorphism() {
        // Cycling 3i-2 -> 3i-1 -> 3i within each block of three lines and
        // fixing the infinity line permutes the point family onto itself.
        let e = entry(CatalogName::Ch13);
        let mut sigma = vec![0usize; 13];
        for block in 0..4 {
            let base = 3 * block;
            sigma[base] = base + 1;
            sigma[base + 1] = base + 2;
            sigma[base + 2] = base;
        }
        sigma[12] = 12;
        assert!(crate::geometry::verify_iso_witness(
            &e.arrangement,
            &e.arrangement,
            &sigma
        ));
    }

    #[test]
    fn g443_affine_shared_column_points() {
        // The diagonal line x - y pairs the vertical and horizontal pencils:
        // {1,5,9}, {2,6,9}, {3,7,9}, {4,8,9} are its triple points.
        let e = entry(CatalogName::G443Affine);
        let lat = e.arrangement.lattice();
        for set in [[1usize, 5, 9], [2, 6, 9], [3, 7, 9], [4, 8, 9]] {
            let z: Vec<usize> = set.iter().map(|i| i - 1).collect();
            let idx = lat.point_with_lines(&z).expect("triple point on the diagonal");
            assert_eq!(lat.points()[idx].mu, 2);
        }
    }
}
