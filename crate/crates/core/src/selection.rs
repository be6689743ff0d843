//! Thin families of increasing triangles in the planar stretched grid, with
//! exact counts of the triangles containing a probe point, and the type-class
//! counting behind the first selection lemma.
//!
//! Triangle vertices are indexed 1-based, `(i, j)` naming the grid point
//! `(x_1i, x_2j)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial_u64, for_each_combination};
use crate::convex::conv_contains_points;
use crate::enclosure::{ln_enclosure, DEFAULT_BITS};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{Point, PointSet};
use crate::grid::GridSpec;
use crate::scalar::{big, format_scalar, int, lcm_of_denominators, serde_scalar, Scalar};
use crate::stair::point_types;

/// Default cap on the number of generated triangles.
pub const DEFAULT_FAMILY_CAP: usize = 20_000_000;

/// Default cap on the number of `(d+1)`-subsets enumerated by
/// [`count_simplices_containing`].
pub const DEFAULT_SIMPLEX_CAP: u64 = 10_000_000;

/// Coefficient of `m` in the per-class containment bound.
pub const CLASS_SLACK: u64 = 8;

/// `rho = C t / (n^3 ln(n^3 / t))`, rounded up by taking the lower end of
/// the logarithm's enclosure.
pub fn rho_for(n: u64, t: u64, c: &Scalar) -> Result<Scalar> {
    if c <= &int(0) {
        return Err(Error::Precondition(format!("C = {} must be positive", format_scalar(c))));
    }
    let n3 = BigInt::from(n).pow(3);
    let choose3 = BigInt::from(n) * BigInt::from(n.saturating_sub(1)) * BigInt::from(n.saturating_sub(2)) / 6;
    let tb = BigInt::from(t);
    if t == 0 || tb > choose3 || tb >= n3 {
        return Err(Error::OutOfDomain(format!("t = {t} outside [1, C({n}, 3)]")));
    }
    let ln = ln_enclosure(&(big(n3.clone()) / big(tb.clone())), DEFAULT_BITS)?;
    if !ln.lo.is_positive() {
        return Err(Error::OutOfDomain(format!("log(n^3 / t) too close to zero for n = {n}, t = {t}")));
    }
    Ok(c * big(tb) / (big(n3) * ln.lo))
}

/// Whether `n^(5/2) ln n <= t <= C(n, 3)` holds for certain.
pub fn in_theorem_range(n: u64, t: u64) -> bool {
    let choose3 = u128::from(n) * u128::from(n.saturating_sub(1)) * u128::from(n.saturating_sub(2)) / 6;
    if n < 2 || u128::from(t) > choose3 {
        return false;
    }
    let ln = match ln_enclosure(&int(n as i64), DEFAULT_BITS) {
        Ok(l) => l,
        Err(_) => return false,
    };
    // t >= n^(5/2) ln n  <=>  t^2 >= n^5 ln^2 n
    let lhs = big(BigInt::from(t).pow(2));
    let rhs = big(BigInt::from(n).pow(5)) * &ln.hi * &ln.hi;
    lhs >= rhs
}

/// Horizontal and vertical dimensions of an increasing triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dims {
    pub h12: usize,
    pub h23: usize,
    pub v12: usize,
    pub v23: usize,
}

/// A triangle `p1 p2 p3` of grid points with both index sequences strictly
/// increasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTriangle", into = "RawTriangle")]
pub struct IncreasingTriangle {
    i: [usize; 3],
    j: [usize; 3],
}

#[derive(Serialize, Deserialize)]
struct RawTriangle {
    i: [usize; 3],
    j: [usize; 3],
}

impl TryFrom<RawTriangle> for IncreasingTriangle {
    type Error = Error;
    fn try_from(raw: RawTriangle) -> Result<Self> {
        IncreasingTriangle::new(raw.i, raw.j)
    }
}

impl From<IncreasingTriangle> for RawTriangle {
    fn from(t: IncreasingTriangle) -> Self {
        RawTriangle { i: t.i, j: t.j }
    }
}

impl IncreasingTriangle {
    pub fn new(i: [usize; 3], j: [usize; 3]) -> Result<Self> {
        let increasing = |v: &[usize; 3]| v[0] >= 1 && v[0] < v[1] && v[1] < v[2];
        if !increasing(&i) || !increasing(&j) {
            return Err(Error::Precondition(format!(
                "triangle indices {i:?}, {j:?} are not 1-based and strictly increasing"
            )));
        }
        Ok(IncreasingTriangle { i, j })
    }

    /// Builds the triangle from its middle vertex and dimensions.
    pub fn from_middle(i2: usize, j2: usize, dims: Dims) -> Result<Self> {
        let i1 = i2.checked_sub(dims.h12).unwrap_or(0);
        let j1 = j2.checked_sub(dims.v12).unwrap_or(0);
        Self::new([i1, i2, i2 + dims.h23], [j1, j2, j2 + dims.v23])
    }

    pub fn i(&self) -> [usize; 3] {
        self.i
    }

    pub fn j(&self) -> [usize; 3] {
        self.j
    }

    pub fn dims(&self) -> Dims {
        Dims {
            h12: self.i[1] - self.i[0],
            h23: self.i[2] - self.i[1],
            v12: self.j[1] - self.j[0],
            v23: self.j[2] - self.j[1],
        }
    }

    pub fn vertices(&self, spec: &GridSpec) -> Result<[Point; 3]> {
        check_dim(2, spec.d())?;
        if self.i[2] > spec.m() || self.j[2] > spec.m() {
            return Err(Error::OutOfDomain(format!("triangle {self:?} leaves the grid")));
        }
        Ok([0, 1, 2].map(|v| spec.point(&[self.i[v] - 1, self.j[v] - 1])))
    }
}

/// Bounds shared by the generator and the validator.
#[derive(Clone, Copy, Debug)]
struct Window {
    mid_lo: usize,
    mid_hi: usize,
    dim_max: usize,
}

impl Window {
    fn for_m(m: usize) -> Self {
        Window {
            mid_lo: m.div_ceil(3),
            mid_hi: 2 * m / 3,
            dim_max: m / 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleFamily {
    pub spec: GridSpec,
    #[serde(with = "serde_scalar")]
    pub rho: Scalar,
    pub triangles: Vec<IncreasingTriangle>,
}

impl TriangleFamily {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// `n = m^2`, the number of grid points.
    pub fn n(&self) -> u64 {
        (self.spec.m() as u64).pow(2)
    }

    /// Whether `t` satisfies the window, dimension and hyperbola constraints
    /// of this family.
    pub fn admits(&self, t: &IncreasingTriangle) -> bool {
        let m = self.spec.m();
        let w = Window::for_m(m);
        let d = t.dims();
        let mid_ok = |v: usize| (w.mid_lo..=w.mid_hi).contains(&v);
        let dims_ok = [d.h12, d.h23, d.v12, d.v23].iter().all(|&h| h <= w.dim_max);
        mid_ok(t.i[1])
            && mid_ok(t.j[1])
            && dims_ok
            && t.i[2] <= m
            && t.j[2] <= m
            && int((d.h12 * d.v23) as i64) <= &self.rho * int(self.n() as i64)
    }

    /// Re-checks every member against the constraints.
    pub fn validate(&self) -> Result<()> {
        check_dim(2, self.spec.d())?;
        match self.triangles.iter().find(|t| !self.admits(t)) {
            Some(t) => Err(Error::Precondition(format!("triangle {t:?} violates the family constraints"))),
            None => Ok(()),
        }
    }

    /// Members grouped by dimensions.
    pub fn class_sizes(&self) -> BTreeMap<Dims, u64> {
        let mut sizes = BTreeMap::new();
        for t in &self.triangles {
            *sizes.entry(t.dims()).or_insert(0) += 1;
        }
        sizes
    }
}

pub fn gen_thin_triangles(spec: &GridSpec, rho: &Scalar) -> Result<TriangleFamily> {
    gen_thin_triangles_capped(spec, rho, DEFAULT_FAMILY_CAP)
}

/// Every increasing triangle with `ceil(m/3) <= i2, j2 <= floor(2m/3)`, all
/// dimensions in `1..=floor(m/3)`, vertices inside the grid and
/// `h12 v23 <= rho n`.
pub fn gen_thin_triangles_capped(spec: &GridSpec, rho: &Scalar, cap: usize) -> Result<TriangleFamily> {
    check_dim(2, spec.d())?;
    if rho.is_negative() {
        return Err(Error::Precondition(format!("rho = {} is negative", format_scalar(rho))));
    }
    let m = spec.m();
    let w = Window::for_m(m);
    let limit = rho * int((m * m) as i64);
    let mut triangles = Vec::new();
    for i2 in w.mid_lo..=w.mid_hi {
        for j2 in w.mid_lo..=w.mid_hi {
            for h12 in 1..=w.dim_max.min(i2 - 1) {
                for v23 in 1..=w.dim_max.min(m - j2) {
                    if int((h12 * v23) as i64) > limit {
                        break;
                    }
                    for h23 in 1..=w.dim_max.min(m - i2) {
                        for v12 in 1..=w.dim_max.min(j2 - 1) {
                            if triangles.len() == cap {
                                return Err(Error::guard("triangle family size", cap + 1, cap));
                            }
                            triangles.push(IncreasingTriangle {
                                i: [i2 - h12, i2, i2 + h23],
                                j: [j2 - v12, j2, j2 + v23],
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(TriangleFamily {
        spec: spec.clone(),
        rho: rho.clone(),
        triangles,
    })
}

/// Per-probe containment counts, in total and by dimension class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeCounts {
    pub total: u64,
    pub by_class: BTreeMap<Dims, u64>,
}

/// A probe scaled to integers: the point `(x, y) / den`.
struct ScaledProbe {
    x: BigInt,
    y: BigInt,
    den: BigInt,
    /// Per axis, the number of grid coordinates strictly below and at most
    /// the probe coordinate.
    below: [usize; 2],
    upto: [usize; 2],
}

/// Exact containment tests of probes against a fixed family, memoizing the
/// side of each directed grid segment.
pub struct FamilyProber<'a> {
    family: &'a TriangleFamily,
}

impl<'a> FamilyProber<'a> {
    pub fn new(family: &'a TriangleFamily) -> Result<Self> {
        check_dim(2, family.spec.d())?;
        Ok(FamilyProber { family })
    }

    fn coord(&self, axis: usize, idx: usize) -> &BigInt {
        self.family.spec.coord(axis, idx - 1)
    }

    fn scale(&self, q: &Point) -> ScaledProbe {
        let den = lcm_of_denominators(q.coords().iter());
        let scaled = |c: &Scalar| c.numer() * (&den / c.denom());
        let x = scaled(&q[0]);
        let y = scaled(&q[1]);
        let axis_pos = |axis: usize, v: &BigInt| {
            let coords = self.family.spec.axis(axis);
            let below = coords.partition_point(|c| &(c * &den) < v);
            let upto = coords.partition_point(|c| &(c * &den) <= v);
            (below, upto)
        };
        let (bx, ux) = axis_pos(0, &x);
        let (by, uy) = axis_pos(1, &y);
        ScaledProbe {
            x,
            y,
            den,
            below: [bx, by],
            upto: [ux, uy],
        }
    }

    /// Sign of the cross product `(b - a) x (q - a)`.
    fn side(&self, q: &ScaledProbe, a: (usize, usize), b: (usize, usize)) -> i8 {
        let (ax, ay) = (self.coord(0, a.0), self.coord(1, a.1));
        let (bx, by) = (self.coord(0, b.0), self.coord(1, b.1));
        let lhs = (bx - ax) * (&q.y - ay * &q.den);
        let rhs = (by - ay) * (&q.x - ax * &q.den);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }

    pub fn probe(&self, q: &Point) -> Result<ProbeCounts> {
        check_dim(2, q.dim())?;
        let sq = self.scale(q);
        let mut memo: HashMap<[usize; 4], i8> = HashMap::new();
        let mut side = |a: (usize, usize), b: (usize, usize)| {
            *memo.entry([a.0, a.1, b.0, b.1]).or_insert_with(|| self.side(&sq, a, b))
        };
        let mut total = 0;
        let mut by_class = BTreeMap::new();
        for t in &self.family.triangles {
            // bounding-box prefilter on indices: x_i1 <= q_x <= x_i3, same for y
            if t.i[0] > sq.upto[0] || t.i[2] <= sq.below[0] || t.j[0] > sq.upto[1] || t.j[2] <= sq.below[1] {
                continue;
            }
            let v = [0, 1, 2].map(|k| (t.i[k], t.j[k]));
            let s = [side(v[0], v[1]), side(v[1], v[2]), side(v[2], v[0])];
            // closed triangle; a degenerate one gives mixed signs off its line
            let inside = !(s.contains(&1) && s.contains(&-1));
            if inside {
                total += 1;
                *by_class.entry(t.dims()).or_insert(0) += 1;
            }
        }
        Ok(ProbeCounts { total, by_class })
    }
}

/// Number of (closed) family members containing `q`.
pub fn count_containing(q: &Point, family: &TriangleFamily) -> Result<u64> {
    Ok(FamilyProber::new(family)?.probe(q)?.total)
}

/// Probes evaluated in parallel; results follow the input order.
pub fn probe_all(family: &TriangleFamily, probes: &[Point]) -> Result<Vec<ProbeCounts>> {
    let prober = FamilyProber::new(family)?;
    probes.par_iter().map(|q| prober.probe(q)).collect()
}

/// `h12 v23 + 8m`.
pub fn class_bound(dims: Dims, m: usize) -> u64 {
    (dims.h12 * dims.v23) as u64 + CLASS_SLACK * m as u64
}

/// Members of the class `dims` containing `q`, with the class bound.
pub fn class_count_bound(q: &Point, family: &TriangleFamily, dims: Dims) -> Result<(u64, u64)> {
    if !family.triangles.iter().any(|t| t.dims() == dims) {
        return Err(Error::Precondition(format!("class {dims:?} does not occur in the family")));
    }
    let counts = FamilyProber::new(family)?.probe(q)?;
    let count = counts.by_class.get(&dims).copied().unwrap_or(0);
    Ok((count, class_bound(dims, family.spec.m())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeClassSizes {
    /// `sizes[j]` counts the points of type `j` with respect to the probe.
    pub sizes: Vec<usize>,
    /// Set when some point shares a coordinate with the probe; such points
    /// may have several types and are counted once per type.
    pub shared_coordinate: bool,
}

impl TypeClassSizes {
    pub fn product(&self) -> u128 {
        self.sizes.iter().map(|&s| s as u128).product()
    }
}

pub fn type_class_sizes(q: &Point, x: &PointSet) -> Result<TypeClassSizes> {
    check_dim(x.dim(), q.dim())?;
    let mut sizes = vec![0; q.dim() + 1];
    let mut shared_coordinate = false;
    for p in x {
        shared_coordinate |= p.coords().iter().zip(q.coords()).any(|(a, b)| a == b);
        for t in point_types(p, q)? {
            sizes[t] += 1;
        }
    }
    Ok(TypeClassSizes { sizes, shared_coordinate })
}

/// Number of `(d+1)`-subsets of `X` whose convex hull contains `q`. With
/// `far_apart_in` set, only subsets whose vertices are all far apart from
/// `q` in that grid are counted.
pub fn count_simplices_containing(q: &Point, x: &PointSet, far_apart_in: Option<&GridSpec>) -> Result<u64> {
    count_simplices_containing_capped(q, x, far_apart_in, DEFAULT_SIMPLEX_CAP)
}

pub fn count_simplices_containing_capped(
    q: &Point,
    x: &PointSet,
    far_apart_in: Option<&GridSpec>,
    cap: u64,
) -> Result<u64> {
    check_dim(x.dim(), q.dim())?;
    let d = q.dim();
    let subsets = binomial_u64(x.len() as u64, d as u64 + 1);
    if subsets > cap {
        return Err(Error::guard("simplex enumeration", subsets, cap));
    }
    let pool: Vec<&Point> = match far_apart_in {
        Some(spec) => {
            let mut kept = Vec::new();
            for p in x {
                if spec.far_apart(p, q)? {
                    kept.push(p);
                }
            }
            kept
        }
        None => x.points().iter().collect(),
    };
    let mut count = 0u64;
    for_each_combination(pool.len(), d + 1, |idx| {
        let chosen: Vec<&Point> = idx.iter().map(|&i| pool[i]).collect();
        if conv_contains_points(&chosen, q) {
            count += 1;
        }
        true
    });
    Ok(count)
}

/// `(n / (d+1))^(d+1)`, the balanced maximum of a product of `d + 1` class
/// sizes summing to `n`.
pub fn balanced_product_bound(n: usize, d: usize) -> Scalar {
    let base = Scalar::new(BigInt::from(n), BigInt::from(d + 1));
    let mut out = int(1);
    for _ in 0..=d {
        out *= &base;
    }
    out
}

/// Whether `q` shares a coordinate with some point of `X`.
pub fn shares_coordinate(q: &Point, x: &PointSet) -> bool {
    x.iter().any(|p| p.coords().iter().zip(q.coords()).any(|(a, b)| a == b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::conv_contains;
    use crate::grid::{build_grid, build_grid_with};
    use crate::scalar::ratio;

    fn family(m: usize, rho: Scalar) -> TriangleFamily {
        gen_thin_triangles(&build_grid(2, m).unwrap(), &rho).unwrap()
    }

    /// Containment of `q` decided by the convex-hull solver instead of
    /// orientation signs.
    fn hull_oracle(q: &Point, f: &TriangleFamily) -> u64 {
        f.triangles
            .iter()
            .filter(|t| {
                let v = t.vertices(&f.spec).unwrap();
                conv_contains(&PointSet::new(2, v.to_vec()).unwrap(), q).unwrap()
            })
            .count() as u64
    }

    /// Direct enumeration over all index sextuples, with no loop pruning.
    fn naive_family_size(m: usize, rho_n: usize) -> usize {
        let w = Window::for_m(m);
        let mut count = 0;
        for i in 1..=m {
            for j in 1..=m {
                for i1 in 1..i {
                    for i3 in i + 1..=m {
                        for j1 in 1..j {
                            for j3 in j + 1..=m {
                                let ok = (w.mid_lo..=w.mid_hi).contains(&i)
                                    && (w.mid_lo..=w.mid_hi).contains(&j)
                                    && [i - i1, i3 - i, j - j1, j3 - j].iter().all(|&h| h <= w.dim_max)
                                    && (i - i1) * (j3 - j) <= rho_n;
                                count += ok as usize;
                            }
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn rho_formula() {
        assert!(rho_for(10, 1000, &int(1)).is_err());
        assert!(rho_for(10, 0, &int(1)).is_err());
        assert!(rho_for(10, 121, &int(1)).is_err());
        assert!(rho_for(10, 100, &int(0)).is_err());
        let r = rho_for(81, 40_000, &int(1)).unwrap();
        // 40000 / (531441 ln(531441/40000)), ln(13.286) = 2.58673...
        assert!(r > ratio(2909, 100_000) && r < ratio(2910, 100_000));
        assert_eq!(rho_for(81, 40_000, &int(2)).unwrap(), &r * int(2));
        let ln = ln_enclosure(&ratio(531_441, 40_000), DEFAULT_BITS).unwrap();
        assert!(r >= int(40_000) / (int(531_441) * ln.hi));
    }

    #[test]
    fn theorem_range() {
        assert!(!in_theorem_range(81, 40_000));
        assert!(!in_theorem_range(900, 30_000_000));
        // n = 10^4: n^(5/2) ln n = 9.21e10 <= C(n,3) = 1.67e11
        assert!(in_theorem_range(10_000, 100_000_000_000));
        assert!(!in_theorem_range(10_000, 90_000_000_000));
    }

    #[test]
    fn nine_by_nine_family() {
        let f = family(9, ratio(1, 9));
        assert_eq!(f.len(), naive_family_size(9, 9));
        // i2 = 3 only allows h12 <= 2 with 1-based indices
        assert_eq!(f.len(), 33 * 33);
        f.validate().unwrap();
        assert!(family(9, ratio(1, 100)).is_empty());
        let doubled = family(9, ratio(2, 81));
        assert_eq!(doubled.len(), naive_family_size(9, 2));
        assert!(doubled.len() > family(9, ratio(1, 81)).len());
        let mut seen = f.triangles.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), f.len());
    }

    #[test]
    fn counts_for_simple_probes() {
        let f = family(9, ratio(1, 9));
        let far = Point::from_ints(&[-1, -1]);
        assert_eq!(count_containing(&far, &f).unwrap(), 0);
        let t = f.triangles[17];
        let one = TriangleFamily {
            triangles: vec![t],
            ..f.clone()
        };
        let v = t.vertices(&f.spec).unwrap();
        assert_eq!(count_containing(&v[1], &one).unwrap(), 1);
        let centroid = Point::new((0..2).map(|a| (&v[0][a] + &v[1][a] + &v[2][a]) / int(3)).collect());
        assert_eq!(count_containing(&centroid, &f).unwrap(), hull_oracle(&centroid, &f));
        assert!(count_containing(&centroid, &f).unwrap() >= 1);
    }

    #[test]
    fn class_bounds() {
        let f = family(9, ratio(1, 9));
        let dims = Dims { h12: 3, h23: 1, v12: 2, v23: 3 };
        let far = Point::from_ints(&[-1, -1]);
        assert_eq!(class_count_bound(&far, &f, dims).unwrap(), (0, 9 + 72));
        let absent = Dims { h12: 4, h23: 1, v12: 1, v23: 1 };
        assert!(class_count_bound(&far, &f, absent).is_err());
        let sizes = f.class_sizes();
        for q in [(5, 70), (17, 4097), (300, 5_000_000), (1000, 1 << 30)] {
            let q = Point::from_ints(&[q.0, q.1]);
            let counts = FamilyProber::new(&f).unwrap().probe(&q).unwrap();
            for (dims, &c) in &counts.by_class {
                assert!(c <= sizes[dims]);
                assert!(c <= class_bound(*dims, 9));
            }
            assert_eq!(counts.by_class.values().sum::<u64>(), counts.total);
        }
        assert!(class_bound(Dims { h12: 2, h23: 1, v12: 1, v23: 2 }, 9) < class_bound(dims, 9));
    }

    #[test]
    fn type_classes_on_small_grid() {
        let g = build_grid(2, 3).unwrap();
        let x = g.points();
        let q = Point::from_ints(&[5, 65]);
        let t = type_class_sizes(&q, &x).unwrap();
        assert_eq!(t.sizes, vec![4, 2, 3]);
        assert!(!t.shared_coordinate);
        let far = count_simplices_containing(&q, &x, Some(&g)).unwrap();
        assert!(far as u128 <= t.product());
        let low = Point::new(vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(type_class_sizes(&low, &x).unwrap().sizes[0], 0);
        assert_eq!(count_simplices_containing(&low, &x, None).unwrap(), 0);
        let single = PointSet::new(2, vec![Point::from_ints(&[1, 1])]).unwrap();
        assert_eq!(count_simplices_containing(&q, &single, None).unwrap(), 0);
        let shared = type_class_sizes(&Point::from_ints(&[4, 65]), &x).unwrap();
        assert!(shared.shared_coordinate);
        assert_eq!(balanced_product_bound(9, 2), int(27));
    }

    #[test]
    fn far_apart_count_reaches_the_product() {
        let g = build_grid_with(2, 3, 2, 1000).unwrap();
        let x = g.points();
        // one grid step above each middle coordinate, far apart from every grid line
        let q = Point::new(vec![big(g.k(0) * g.coord(0, 1)), big(g.k(1) * g.coord(1, 1))]);
        let t = type_class_sizes(&q, &x).unwrap();
        let far = count_simplices_containing(&q, &x, Some(&g)).unwrap();
        assert_eq!(far as u128, t.product());
    }

    #[test]
    fn simplex_guard() {
        let g = build_grid(2, 5).unwrap();
        let q = Point::from_ints(&[5, 70]);
        assert!(count_simplices_containing_capped(&q, &g.points(), None, 100).unwrap_err().is_guard());
    }

    #[test]
    fn family_json_round_trip() {
        let f = family(6, ratio(1, 6));
        let text = serde_json::to_string(&f).unwrap();
        let back: TriangleFamily = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<IncreasingTriangle>(r#"{"i":[2,2,3],"j":[1,2,3]}"#).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn orientation_counts_match_hull_oracle(qx in 0i64..80, qy in 0i64..80, num in 0i64..8) {
            let f = family(6, ratio(num, 36));
            let g = &f.spec;
            // probe in the unit-square picture, pulled back into the grid box
            let u = Point::new(vec![ratio(qx, 79), ratio(qy, 79)]);
            let q = g.pi_inverse(&u).unwrap();
            proptest::prop_assert_eq!(count_containing(&q, &f).unwrap(), hull_oracle(&q, &f));
        }

        #[test]
        fn counts_ignore_order_and_translation(qx in 1i64..70, qy in 1i64..5000, shift in 1i64..50, seed in 0u64..1000) {
            let f = family(5, ratio(1, 5));
            let q = Point::from_ints(&[qx, qy]);
            let base = count_containing(&q, &f).unwrap();
            let mut shuffled = f.clone();
            let len = shuffled.triangles.len();
            for k in 0..len {
                let swap = (k as u64 * 7919 + seed) as usize % len;
                shuffled.triangles.swap(k, swap);
            }
            proptest::prop_assert_eq!(count_containing(&q, &shuffled).unwrap(), base);
            // translation moves the vertices off the grid, so use the hull oracle
            let by = Point::from_ints(&[shift, -shift]);
            let moved = f
                .triangles
                .iter()
                .filter(|t| {
                    let v = t.vertices(&f.spec).unwrap().map(|p| p.translate(&by));
                    conv_contains(&PointSet::new(2, v.to_vec()).unwrap(), &q.translate(&by)).unwrap()
                })
                .count() as u64;
            proptest::prop_assert_eq!(moved, base);
        }

        #[test]
        fn generated_members_satisfy_constraints(m in 3usize..10, num in 0i64..30) {
            let f = family(m, ratio(num, (m * m) as i64));
            proptest::prop_assert!(f.validate().is_ok());
            proptest::prop_assert_eq!(f.len(), naive_family_size(m, num as usize));
        }
    }
}
