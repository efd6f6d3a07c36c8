//! Two Lie groups with polynomial charts, so the difference-set argument can
//! be checked in exact rational arithmetic.
//!
//! * The torus `R^d / Z^d` with the identity chart: `K = [-δ,δ]^{d-1} × C`.
//! * The Heisenberg group with `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy')`,
//!   `V = span{X, Y}` and the central direction `Z`. Here
//!   `exp(aX + bY) = (a, b, ab/2)`, `exp(tZ) = (0, 0, t)` and the chart is
//!   `Θ(v, t) = exp(v) exp(tZ)`.
//!
//! With `Z` central, `Θ(v,t) Θ(0,s)^-1 = exp(v) exp((t-s)Z)` is an exact
//! identity. The general argument only needs `exp(0) = e` for the same
//! identity; centrality is a property of this instance, not a requirement.

use std::ops::Mul;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cantor::{
    cantor_stage, covers, minkowski_difference, CantorError, Interval, IntervalUnion,
};
use crate::rational::{ratio, serialize_exact, Exact, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("delta must be positive, got {0}")]
    NonPositiveDelta(Rational),
    #[error("delta {0} exceeds 1/4: the construction would wrap around the torus")]
    Wraparound(Rational),
    #[error("grid must be at least 1")]
    EmptyGrid,
    #[error(transparent)]
    Cantor(#[from] CantorError),
}

/// `K = [-δ,δ]^{d-1} × C_n` in the identity chart of the `d`-torus.
#[derive(Debug, Clone)]
pub struct TorusConstruction {
    d: usize,
    delta: Rational,
    stage: u32,
    factors: Vec<IntervalUnion>,
}

impl TorusConstruction {
    pub fn new(d: usize, delta: Rational, stage: u32) -> Result<Self, LieError> {
        if d == 0 {
            return Err(LieError::ZeroDimension);
        }
        if !delta.is_positive() {
            return Err(LieError::NonPositiveDelta(delta));
        }
        if delta > ratio(1, 4) {
            return Err(LieError::Wraparound(delta));
        }
        let mut factors = vec![IntervalUnion::single(Interval::symmetric(&delta)); d - 1];
        factors.push(cantor_stage(&delta, stage)?);
        Ok(TorusConstruction {
            d,
            delta,
            stage,
            factors,
        })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn factors(&self) -> &[IntervalUnion] {
        &self.factors
    }

    /// Product of the factor lengths: `(2δ)^{d-1} δ (2/3)^n`.
    pub fn measure(&self) -> Rational {
        self.factors
            .iter()
            .map(crate::cantor::total_length)
            .product()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub coordinate: usize,
    pub cantor: bool,
    pub interval_count: usize,
    pub difference_interval_count: usize,
    pub covered: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusReport {
    pub d: usize,
    #[serde(serialize_with = "serialize_exact")]
    pub delta: Rational,
    pub stage: u32,
    #[serde(serialize_with = "serialize_exact")]
    pub measure: Rational,
    pub covered: bool,
    pub factor_reports: Vec<FactorReport>,
}

/// `K K^-1` of a product set in an abelian group is the product of the
/// factor differences, so coverage of `[-δ,δ]^d` is checked per coordinate.
pub fn torus_difference_check(tc: &TorusConstruction) -> TorusReport {
    let target = Interval::symmetric(&tc.delta);
    let factor_reports: Vec<FactorReport> = tc
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let diff = minkowski_difference(f, f);
            FactorReport {
                coordinate: i,
                cantor: i + 1 == tc.d,
                interval_count: f.len(),
                difference_interval_count: diff.len(),
                covered: covers(&diff, &target).covered,
            }
        })
        .collect();
    TorusReport {
        d: tc.d,
        delta: tc.delta.clone(),
        stage: tc.stage,
        measure: tc.measure(),
        covered: factor_reports.iter().all(|r| r.covered),
        factor_reports,
    }
}

/// A point of the Heisenberg group in exponential-free coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeisenbergPoint {
    #[serde(serialize_with = "serialize_exact")]
    pub x: Rational,
    #[serde(serialize_with = "serialize_exact")]
    pub y: Rational,
    #[serde(serialize_with = "serialize_exact")]
    pub z: Rational,
}

impl HeisenbergPoint {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        HeisenbergPoint { x, y, z }
    }

    pub fn identity() -> Self {
        HeisenbergPoint::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// `(-x, -y, -z + xy)`
    pub fn inverse(&self) -> Self {
        HeisenbergPoint::new(
            -self.x.clone(),
            -self.y.clone(),
            &self.x * &self.y - &self.z,
        )
    }
}

impl Mul for &HeisenbergPoint {
    type Output = HeisenbergPoint;

    fn mul(self, rhs: &HeisenbergPoint) -> HeisenbergPoint {
        HeisenbergPoint::new(
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            &self.z + &rhs.z + &self.x * &rhs.y,
        )
    }
}

/// `exp(aX + bY) = (a, b, ab/2)`
pub fn exp_plane(v: &(Rational, Rational)) -> HeisenbergPoint {
    let half = ratio(1, 2);
    HeisenbergPoint::new(v.0.clone(), v.1.clone(), &v.0 * &v.1 * half)
}

/// `exp(tZ) = (0, 0, t)`
pub fn exp_center(t: &Rational) -> HeisenbergPoint {
    HeisenbergPoint::new(Rational::zero(), Rational::zero(), t.clone())
}

/// `Θ(v, t) = exp(v) exp(tZ) = (v1, v2, v1 v2 / 2 + t)`.
pub fn heisenberg_theta(v: &(Rational, Rational), t: &Rational) -> HeisenbergPoint {
    &exp_plane(v) * &exp_center(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub lhs: HeisenbergPoint,
    pub rhs: HeisenbergPoint,
    pub equal: bool,
}

/// Evaluates `Θ(v,t) Θ(0,s)^-1` and `exp(v) exp((t-s)Z)` with the group law.
pub fn heisenberg_difference_identity_check(
    v: &(Rational, Rational),
    t: &Rational,
    s: &Rational,
) -> IdentityCheck {
    let zero = (Rational::zero(), Rational::zero());
    let lhs = &heisenberg_theta(v, t) * &heisenberg_theta(&zero, s).inverse();
    let rhs = &exp_plane(v) * &exp_center(&(t - s));
    let equal = lhs == rhs;
    IdentityCheck { lhs, rhs, equal }
}

/// `grid` evenly spaced points of `[-δ, δ]` (just `0` when `grid == 1`).
pub fn grid_points(delta: &Rational, grid: usize) -> Vec<Rational> {
    if grid == 1 {
        return vec![Rational::zero()];
    }
    let step = delta * Rational::from_integer(2.into())
        / Rational::from_integer(((grid - 1) as i64).into());
    (0..grid)
        .map(|i| -delta.clone() + &step * Rational::from_integer((i as i64).into()))
        .collect()
}

/// Points `t, s` of a union with `t - s = u`, if any.
///
/// For each interval `I` of the union the partner interval is located by
/// binary search; `t` is then the least admissible point of `I`.
pub fn difference_witness(c: &IntervalUnion, u: &Rational) -> Option<(Rational, Rational)> {
    let ivs = c.intervals();
    for ia in ivs {
        // need J with lo_J <= hi_I - u and hi_J >= lo_I - u; the last J with small lo has the largest hi
        let bound = &ia.hi - u;
        let idx = ivs.partition_point(|j| j.lo <= bound);
        if idx == 0 {
            continue;
        }
        let jb = &ivs[idx - 1];
        if jb.hi >= &ia.lo - u {
            let t = std::cmp::max(ia.lo.clone(), u + &jb.lo);
            let s = &t - u;
            debug_assert!(ia.contains(&t) && jb.contains(&s));
            return Some((t, s));
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct GridWitness {
    pub v: (Exact, Exact),
    #[serde(serialize_with = "serialize_exact")]
    pub u: Rational,
    #[serde(serialize_with = "serialize_exact")]
    pub t: Rational,
    #[serde(serialize_with = "serialize_exact")]
    pub s: Rational,
    pub point: HeisenbergPoint,
    pub identity_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageDemo {
    #[serde(serialize_with = "serialize_exact")]
    pub delta: Rational,
    pub stage: u32,
    pub grid: usize,
    pub checks: usize,
    pub passed: usize,
    /// Interval-level certificate: `C_n - C_n ⊇ [-δ, δ]`.
    pub interval_coverage: bool,
    #[serde(serialize_with = "serialize_exact")]
    pub stage_length: Rational,
    pub witnesses: Vec<GridWitness>,
}

impl CoverageDemo {
    pub fn all_passed(&self) -> bool {
        self.interval_coverage && self.passed == self.checks
    }
}

/// For every grid point `(v, u)` of `[-δ,δ]^2 × [-δ,δ]`, finds `t, s ∈ C_n`
/// with `t - s = u` and certifies `Θ(v,t) Θ(0,s)^-1 = exp(v) exp(uZ)`.
pub fn heisenberg_coverage_demo(
    delta: &Rational,
    stage: u32,
    grid: usize,
) -> Result<CoverageDemo, LieError> {
    if grid == 0 {
        return Err(LieError::EmptyGrid);
    }
    if !delta.is_positive() {
        return Err(LieError::NonPositiveDelta(delta.clone()));
    }
    let c = cantor_stage(delta, stage)?;
    let interval_coverage =
        covers(&minkowski_difference(&c, &c), &Interval::symmetric(delta)).covered;
    let points = grid_points(delta, grid);
    let pairs: Vec<Option<(Rational, Rational)>> =
        points.iter().map(|u| difference_witness(&c, u)).collect();

    let mut witnesses = Vec::with_capacity(grid * grid * grid);
    let mut passed = 0;
    for v1 in &points {
        for v2 in &points {
            let v = (v1.clone(), v2.clone());
            for (u, pair) in points.iter().zip(&pairs) {
                let Some((t, s)) = pair else { continue };
                let check = heisenberg_difference_identity_check(&v, t, s);
                let expected = &exp_plane(&v) * &exp_center(u);
                let ok = check.equal
                    && check.lhs == expected
                    && c.contains_point(t)
                    && c.contains_point(s);
                passed += usize::from(ok);
                witnesses.push(GridWitness {
                    v: (Exact(v.0.clone()), Exact(v.1.clone())),
                    u: u.clone(),
                    t: t.clone(),
                    s: s.clone(),
                    point: check.lhs,
                    identity_holds: ok,
                });
            }
        }
    }
    Ok(CoverageDemo {
        delta: delta.clone(),
        stage,
        grid,
        checks: grid * grid * grid,
        passed,
        interval_coverage,
        stage_length: crate::cantor::total_length(&c),
        witnesses,
    })
}

/// Random rational with numerator in `[-bound, bound]` and denominator in `[1, bound]`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    ratio(
        rng.random_range(-bound..=bound),
        rng.random_range(1..=bound),
    )
}

/// Seeded sample of `count` triples `(v, t, s)` for property checks.
pub fn random_identity_inputs(
    seed: u64,
    count: usize,
) -> Vec<((Rational, Rational), Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = (
                random_rational(&mut rng, 1000),
                random_rational(&mut rng, 1000),
            );
            (
                v,
                random_rational(&mut rng, 1000),
                random_rational(&mut rng, 1000),
            )
        })
        .collect()
}

/// `Θ(0, 0)` is the identity.
pub fn theta_at_origin_is_identity() -> bool {
    heisenberg_theta(&(Rational::zero(), Rational::zero()), &Rational::zero())
        == HeisenbergPoint::identity()
}

/// Returns whether the group law is associative with the expected identity and inverses on `points`.
pub fn check_group_laws(points: &[HeisenbergPoint]) -> bool {
    let e = HeisenbergPoint::identity();
    let units = points
        .iter()
        .all(|p| &e * p == *p && p * &e == *p && p * &p.inverse() == e && &p.inverse() * p == e);
    let assoc = points
        .chunks_exact(3)
        .all(|w| &(&w[0] * &w[1]) * &w[2] == &w[0] * &(&w[1] * &w[2]));
    units && assoc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pt(x: Rational, y: Rational, z: Rational) -> HeisenbergPoint {
        HeisenbergPoint::new(x, y, z)
    }

    #[test]
    fn theta_examples() {
        assert!(theta_at_origin_is_identity());
        assert_eq!(
            heisenberg_theta(&(int(1), int(1)), &ratio(1, 3)),
            pt(int(1), int(1), ratio(5, 6))
        );
        assert_eq!(
            heisenberg_theta(&(int(2), int(0)), &int(7)),
            pt(int(2), int(0), int(7))
        );
    }

    #[test]
    fn identity_examples() {
        let c = heisenberg_difference_identity_check(&(int(0), int(0)), &int(3), &int(3));
        assert!(c.equal);
        assert_eq!(c.lhs, HeisenbergPoint::identity());

        let c = heisenberg_difference_identity_check(&(int(1), int(1)), &ratio(1, 3), &ratio(1, 4));
        assert!(c.equal);
        assert_eq!(c.lhs, pt(int(1), int(1), ratio(7, 12)));

        let c = heisenberg_difference_identity_check(&(int(-3), int(2)), &int(0), &int(5));
        assert!(c.equal);
        assert_eq!(c.lhs.z, int(-8));
    }

    #[test]
    fn group_laws_on_sample() {
        let pts: Vec<HeisenbergPoint> = random_identity_inputs(11, 300)
            .into_iter()
            .map(|(v, t, s)| pt(v.0, v.1, t - s))
            .collect();
        assert!(check_group_laws(&pts));
        // non-commutative
        let a = pt(int(1), int(0), int(0));
        let b = pt(int(0), int(1), int(0));
        assert_ne!(&a * &b, &b * &a);
    }

    #[test]
    fn torus_examples() {
        let tc = TorusConstruction::new(1, ratio(1, 4), 8).unwrap();
        let r = torus_difference_check(&tc);
        assert!(r.covered);
        let direct = covers(
            &minkowski_difference(&tc.factors()[0], &tc.factors()[0]),
            &Interval::symmetric(&ratio(1, 4)),
        );
        assert_eq!(r.covered, direct.covered);

        let tc = TorusConstruction::new(3, ratio(1, 5), 6).unwrap();
        let r = torus_difference_check(&tc);
        assert!(r.covered);
        assert_eq!(r.measure, ratio(256, 91125));
        assert_eq!(r.factor_reports.len(), 3);

        let tc = TorusConstruction::new(1, ratio(1, 4), 0).unwrap();
        assert!(torus_difference_check(&tc).covered);
        assert_eq!(tc.measure(), ratio(1, 4));

        assert!(matches!(
            TorusConstruction::new(2, ratio(1, 3), 2),
            Err(LieError::Wraparound(_))
        ));
        assert!(matches!(
            TorusConstruction::new(0, ratio(1, 5), 2),
            Err(LieError::ZeroDimension)
        ));
        assert!(matches!(
            TorusConstruction::new(2, int(0), 2),
            Err(LieError::NonPositiveDelta(_))
        ));
    }

    #[test]
    fn grids() {
        assert_eq!(grid_points(&ratio(1, 4), 1), vec![int(0)]);
        assert_eq!(
            grid_points(&ratio(1, 4), 3),
            vec![ratio(-1, 4), int(0), ratio(1, 4)]
        );
        let demo = heisenberg_coverage_demo(&ratio(1, 4), 6, 1).unwrap();
        assert_eq!(demo.checks, 1);
        let w = &demo.witnesses[0];
        assert_eq!(w.t, w.s);
        assert_eq!(w.point, HeisenbergPoint::identity());

        let demo = heisenberg_coverage_demo(&ratio(1, 4), 0, 5).unwrap();
        assert!(demo.all_passed());
        assert!(heisenberg_coverage_demo(&ratio(1, 4), 3, 0).is_err());
    }

    #[test]
    fn witnesses_lie_in_stage() {
        let c = cantor_stage(&int(1), 5).unwrap();
        for u in grid_points(&int(1), 41) {
            let (t, s) = difference_witness(&c, &u).expect("stage differences cover [-1, 1]");
            assert_eq!(&t - &s, u);
            assert!(c.contains_point(&t) && c.contains_point(&s));
        }
        assert!(difference_witness(&c, &ratio(3, 2)).is_none());
    }
}
