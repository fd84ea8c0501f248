use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{integer_rank, null_space, solve};
use super::rat::{common_denominator, scaled_integer, Rat};
use super::simplex;
use crate::error::{Error, Result};

pub const DEFAULT_DIMENSION_LIMIT: usize = 10;

/// One inequality `normal · x <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "super::rat::serde_vec")]
    pub normal: Vec<Rat>,
    #[serde(with = "super::rat::serde_str")]
    pub bound: Rat,
}

/// A polytope in H-representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    dimension: usize,
    inequalities: Vec<Halfspace>,
}

impl Polytope {
    pub fn new(dimension: usize, inequalities: Vec<Halfspace>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Invalid("polytope dimension must be at least 1".into()));
        }
        for h in &inequalities {
            if h.normal.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: h.normal.len(),
                });
            }
        }
        Ok(Self {
            dimension,
            inequalities,
        })
    }

    pub fn from_rows(dimension: usize, rows: Vec<(Vec<Rat>, Rat)>) -> Result<Self> {
        Self::new(
            dimension,
            rows.into_iter()
                .map(|(normal, bound)| Halfspace { normal, bound })
                .collect(),
        )
    }

    /// The box `[lo, hi]^d`.
    pub fn cube(dimension: usize, lo: Rat, hi: Rat) -> Self {
        let mut rows = Vec::new();
        for i in 0..dimension {
            let mut up = vec![Rat::zero(); dimension];
            up[i] = Rat::one();
            let mut down = vec![Rat::zero(); dimension];
            down[i] = -Rat::one();
            rows.push(Halfspace {
                normal: up,
                bound: hi.clone(),
            });
            rows.push(Halfspace {
                normal: down,
                bound: -lo.clone(),
            });
        }
        Self {
            dimension,
            inequalities: rows,
        }
    }

    /// `{y : p·y <= 1 for every p in points}`, the polar of `conv(points)`.
    pub fn polar_of_points(dimension: usize, points: &[Vec<Rat>]) -> Result<Self> {
        Self::new(
            dimension,
            points
                .iter()
                .map(|p| Halfspace {
                    normal: p.clone(),
                    bound: Rat::one(),
                })
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.inequalities
            .iter()
            .all(|h| dot(&h.normal, point) <= h.bound)
    }

    /// Indices of the inequalities satisfied with equality at `point`.
    pub fn active(&self, point: &[Rat]) -> Vec<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, h)| dot(&h.normal, point) == h.bound)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn vertices(&self) -> Result<Vec<Vec<Rat>>> {
        self.vertices_with_limit(DEFAULT_DIMENSION_LIMIT)
    }

    /// Exact vertex set, sorted lexicographically.
    pub fn vertices_with_limit(&self, limit: usize) -> Result<Vec<Vec<Rat>>> {
        if self.dimension > limit {
            return Err(Error::DimensionLimitExceeded {
                dimension: self.dimension,
                limit,
            });
        }
        double_description(self)
    }

    /// Maximizes `objective · x`; the witness is a vertex of the polytope.
    pub fn lp_maximize(&self, objective: &[Rat]) -> Result<(Rat, Vec<Rat>)> {
        let d = self.dimension;
        if objective.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: objective.len(),
            });
        }
        let m = self.inequalities.len();
        // x = u - w with u, w >= 0, plus one slack per row.
        let n = 2 * d + m;
        let mut a = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        for (i, h) in self.inequalities.iter().enumerate() {
            let mut row = vec![Rat::zero(); n];
            for j in 0..d {
                row[j] = h.normal[j].clone();
                row[d + j] = -h.normal[j].clone();
            }
            row[2 * d + i] = Rat::one();
            a.push(row);
            b.push(h.bound.clone());
        }
        let mut c = vec![Rat::zero(); n];
        for j in 0..d {
            c[j] = objective[j].clone();
            c[d + j] = -objective[j].clone();
        }
        let (value, sol) = simplex::maximize_standard(&a, &b, &c)?;
        let x: Vec<Rat> = (0..d).map(|j| &sol[j] - &sol[d + j]).collect();
        let x = self.purify(x)?;
        debug_assert_eq!(dot(objective, &x), value);
        Ok((value, x))
    }

    /// Moves an optimal point inside the optimal face until the active
    /// constraints pin it down, keeping the objective value.
    fn purify(&self, mut x: Vec<Rat>) -> Result<Vec<Rat>> {
        let d = self.dimension;
        loop {
            let act = self.active(&x);
            let rows: Vec<Vec<Rat>> = act
                .iter()
                .map(|&i| self.inequalities[i].normal.clone())
                .collect();
            let ns = null_space(&rows, d);
            let Some(z) = ns.into_iter().next() else {
                return Ok(x);
            };
            // Walk along z (or -z) to the first blocking inequality.
            let mut step: Option<Rat> = None;
            for dir in [Rat::one(), -Rat::one()] {
                for h in &self.inequalities {
                    let az = dot(&h.normal, &z) * &dir;
                    if az.is_positive() {
                        let t = (&h.bound - dot(&h.normal, &x)) / az;
                        if step.as_ref().is_none_or(|s| t.abs() < s.abs()) {
                            step = Some(&t * &dir);
                        }
                    }
                }
                if step.is_some() {
                    break;
                }
            }
            let t = step.ok_or(Error::Unbounded)?;
            for (xi, zi) in x.iter_mut().zip(&z) {
                *xi += &t * zi;
            }
        }
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Whether `point` is a convex combination of `generators`, decided by an
/// exact feasibility LP.
pub fn in_hull(point: &[Rat], generators: &[Vec<Rat>]) -> Result<bool> {
    let d = point.len();
    for g in generators {
        if g.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: g.len(),
            });
        }
    }
    if generators.is_empty() {
        return Ok(false);
    }
    if generators.iter().any(|g| g.as_slice() == point) {
        return Ok(true);
    }
    let k = generators.len();
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    for i in 0..d {
        a.push(generators.iter().map(|g| g[i].clone()).collect::<Vec<_>>());
        b.push(point[i].clone());
    }
    a.push(vec![Rat::one(); k]);
    b.push(Rat::one());
    Ok(simplex::feasible_point(&a, &b, k).is_some())
}

// ---------------------------------------------------------------------------
// Double description

#[derive(Clone)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: Bits,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn contains_all(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of the homogenized cone `{(x, t) : t >= 0, b t - a·x >= 0}`
/// computed incrementally; the rays with `t > 0` are the vertices.
fn double_description(p: &Polytope) -> Result<Vec<Vec<Rat>>> {
    let d = p.dimension;
    let dim = d + 1;
    // Cone rows m·y >= 0 scaled to integers.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(p.inequalities.len() + 1);
    for h in &p.inequalities {
        let mut r: Vec<Rat> = h.normal.iter().map(|v| -v.clone()).collect();
        r.push(h.bound.clone());
        let den = common_denominator(r.iter());
        rows.push(primitive(r.iter().map(|v| scaled_integer(v, &den)).collect()));
    }
    let mut t_row = vec![BigInt::zero(); dim];
    t_row[d] = BigInt::one();
    rows.push(t_row);
    let nrows = rows.len();

    // Initial simplicial cone from `dim` independent rows.
    let mut basis: Vec<usize> = Vec::new();
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    // Prefer the t >= 0 row first so the start cone is well anchored.
    for i in std::iter::once(nrows - 1).chain(0..nrows - 1) {
        chosen.push(rows[i].clone());
        if integer_rank(&chosen) == chosen.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    if basis.len() < dim {
        // Non-trivial lineality space: the set is unbounded or empty.
        return if simplex_feasible(p) {
            Err(Error::Unbounded)
        } else {
            Ok(Vec::new())
        };
    }
    let bmat: Vec<Vec<Rat>> = basis
        .iter()
        .map(|&i| rows[i].iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![Rat::zero(); dim];
        e[j] = Rat::one();
        let col = solve(&bmat, &e).expect("independent rows");
        let den = common_denominator(col.iter());
        let coords = primitive(col.iter().map(|v| scaled_integer(v, &den)).collect());
        let mut zeros = Bits::new(nrows);
        for (k, &bi) in basis.iter().enumerate() {
            if k != j {
                zeros.set(bi);
            }
        }
        rays.push(Ray { coords, zeros });
    }
    let mut done = vec![false; nrows];
    for &bi in &basis {
        done[bi] = true;
    }

    for i in 0..nrows {
        if done[i] {
            continue;
        }
        done[i] = true;
        let row = &rows[i];
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(row, &r.coords)).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (k, v) in vals.iter().enumerate() {
            if v.is_positive() {
                pos.push(k);
            } else if v.is_negative() {
                neg.push(k);
            }
        }
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    r.zeros.set(i);
                }
            }
            continue;
        }
        for &pk in &pos {
            for &nk in &neg {
                let common = rays[pk].zeros.and(&rays[nk].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == pk || k == nk || !r.zeros.contains_all(&common)
                });
                if !adjacent {
                    continue;
                }
                let a = &vals[pk];
                let b = -&vals[nk];
                let coords: Vec<BigInt> = rays[pk]
                    .coords
                    .iter()
                    .zip(&rays[nk].coords)
                    .map(|(x, y)| &b * x + a * y)
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                next.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_zero() {
                r.zeros.set(i);
                next.push(r);
            } else if vals[k].is_positive() {
                next.push(r);
            }
        }
        rays = next;
        if rays.is_empty() {
            return Ok(Vec::new());
        }
    }

    let mut out = BTreeSet::new();
    let mut recession = false;
    for r in &rays {
        let t = &r.coords[d];
        if t.is_zero() {
            recession = true;
            continue;
        }
        let tr = Rat::from_integer(t.clone());
        out.insert(
            r.coords[..d]
                .iter()
                .map(|c| Rat::from_integer(c.clone()) / &tr)
                .collect::<Vec<_>>(),
        );
    }
    if recession && !out.is_empty() {
        return Err(Error::Unbounded);
    }
    Ok(out.into_iter().collect())
}

fn simplex_feasible(p: &Polytope) -> bool {
    let zero = vec![Rat::zero(); p.dimension];
    !matches!(p.lp_maximize(&zero), Err(Error::Infeasible))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{half, int, rat};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn triangle() -> Polytope {
        Polytope::from_rows(
            2,
            vec![
                (ints(&[-1, 0]), int(0)),
                (ints(&[0, -1]), int(0)),
                (ints(&[1, 1]), int(1)),
            ],
        )
        .unwrap()
    }

    /// `x >= 0`, `x_i + x_{i+1} <= 1` around the 5-cycle.
    fn c5_qstab() -> Polytope {
        let mut rows = Vec::new();
        for i in 0..5 {
            let mut low = vec![int(0); 5];
            low[i] = int(-1);
            rows.push((low, int(0)));
            let mut e = vec![int(0); 5];
            e[i] = int(1);
            e[(i + 1) % 5] = int(1);
            rows.push((e, int(1)));
        }
        Polytope::from_rows(5, rows).unwrap()
    }

    #[test]
    fn square_and_triangle_vertices() {
        let sq = Polytope::cube(2, int(-1), int(1));
        let v = sq.vertices().unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.contains(&ints(&[-1, 1])));
        let t = triangle().vertices().unwrap();
        assert_eq!(t, vec![ints(&[0, 0]), ints(&[0, 1]), ints(&[1, 0])]);
    }

    #[test]
    fn c5_fractional_vertex() {
        let v = c5_qstab().vertices().unwrap();
        // 11 stable sets (the empty one included) plus the all-halves point.
        assert_eq!(v.len(), 12);
        assert!(v.contains(&vec![half(); 5]));
        let (val, w) = c5_qstab().lp_maximize(&ints(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(val, rat(5, 2));
        assert_eq!(w, vec![half(); 5]);
    }

    #[test]
    fn lp_on_square_returns_vertex() {
        let sq = Polytope::cube(2, int(-1), int(1));
        let (val, w) = sq.lp_maximize(&ints(&[1, 0])).unwrap();
        assert_eq!(val, int(1));
        assert_eq!(w[0], int(1));
        assert!(sq.vertices().unwrap().contains(&w));
        let (val, w) = sq.lp_maximize(&ints(&[0, 0])).unwrap();
        assert_eq!(val, int(0));
        assert!(sq.vertices().unwrap().contains(&w));
    }

    #[test]
    fn unbounded_and_empty() {
        let half_plane = Polytope::from_rows(2, vec![(ints(&[1, 0]), int(1))]).unwrap();
        assert_eq!(half_plane.vertices(), Err(Error::Unbounded));
        assert_eq!(half_plane.lp_maximize(&ints(&[0, 1])), Err(Error::Unbounded));
        let empty = Polytope::from_rows(
            1,
            vec![(ints(&[1]), int(-1)), (ints(&[-1]), int(-1))],
        )
        .unwrap();
        assert_eq!(empty.vertices().unwrap(), Vec::<Vec<Rat>>::new());
        assert_eq!(empty.lp_maximize(&ints(&[1])), Err(Error::Infeasible));
    }

    #[test]
    fn hull_membership() {
        let gens = vec![ints(&[1, 0]), ints(&[-1, 0]), ints(&[0, 1]), ints(&[0, -1])];
        assert!(in_hull(&ints(&[0, 0]), &gens).unwrap());
        assert!(!in_hull(&ints(&[1, 1]), &gens).unwrap());
        assert!(in_hull(&[half(), half()], &gens).unwrap());
        assert!(in_hull(&ints(&[1]), &gens).is_err());
    }

    #[test]
    fn dimension_limit() {
        let big = Polytope::cube(11, int(0), int(1));
        assert!(matches!(
            big.vertices(),
            Err(Error::DimensionLimitExceeded { dimension: 11, limit: 10 })
        ));
    }
}
