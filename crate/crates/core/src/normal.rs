//! The normal complex: each maximal cone truncated by the hyperplanes
//! `Σ_{i ∈ I_j} x_i = δ^n_{|I_j|}`, where a point of the support is written
//! `Σ x_i e_i^{a_i}` with `x_i >= 0`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{feasible_nonnegative, Rational, SpanSolver};
use crate::fan::ray_vector;
use crate::guard::Guards;
use crate::lattice::{enumerate_chains, enumerate_decorated_subsets, ArrangementSpec, Chain, DecoratedSubset};
use crate::tropical::curve_from_point;

/// `δ^n_k = n + (n-1) + ... + (n-k+1)`.
pub fn delta(n: usize, k: usize) -> Result<u64> {
    if k > n {
        return Err(Error::Parse(format!("delta needs 0 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok((n - k + 1..=n).map(|t| t as u64).sum())
}

/// `z_I = δ^n_{|I|}` for every ray.
pub fn z_vector(spec: &ArrangementSpec) -> BTreeMap<DecoratedSubset, u64> {
    enumerate_decorated_subsets(spec)
        .into_iter()
        .map(|d| {
            let z = delta(spec.n(), d.len()).expect("|I| <= n");
            (d, z)
        })
        .collect()
}

/// `normal · v <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Vec<Rational>,
    pub bound: Rational,
}

impl Constraint {
    pub fn value(&self, v: &[Rational]) -> Rational {
        self.normal.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn holds(&self, v: &[Rational]) -> bool {
        self.value(v) <= self.bound
    }

    pub fn is_tight(&self, v: &[Rational]) -> bool {
        self.value(v) == self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub h_rep: Vec<Constraint>,
    pub v_rep: Vec<Vec<Rational>>,
    pub label: Chain,
}

impl Polytope {
    pub fn contains(&self, p: &[Rational]) -> bool {
        self.h_rep.iter().all(|c| c.holds(p))
    }
}

/// Vertices of `{x >= 0, a x <= b}` (assumed bounded) by the double
/// description method on the homogenized cone `{(x, t) >= 0, a x <= b t}`.
pub fn orthant_vertices(a: &[Vec<Rational>], b: &[Rational]) -> Vec<Vec<Rational>> {
    let d = a.first().map_or(0, Vec::len);
    // each ray carries its tight set over all constraints seen so far;
    // the orthant facets are indices 0..=d (index d is t >= 0)
    let mut rays: Vec<(Vec<Rational>, BTreeSet<usize>)> = (0..=d)
        .map(|k| {
            let v = (0..=d)
                .map(|j| if j == k { Rational::one() } else { Rational::zero() })
                .collect();
            (v, (0..=d).filter(|&j| j != k).collect())
        })
        .collect();
    for (row, (ai, bi)) in a.iter().zip(b).enumerate() {
        let id = d + 1 + row;
        let slack =
            |v: &[Rational]| -> Rational { ai.iter().zip(v).map(|(x, y)| x * y).sum::<Rational>() - bi * &v[d] };
        let values: Vec<Rational> = rays.iter().map(|(v, _)| slack(v)).collect();
        let mut next = Vec::new();
        for ((v, z), s) in rays.iter().zip(&values) {
            if !s.is_positive() {
                let mut z = z.clone();
                if s.is_zero() {
                    z.insert(id);
                }
                next.push((v.clone(), z));
            }
        }
        for (p, sp) in values.iter().enumerate().filter(|(_, s)| s.is_negative()) {
            for (q, sq) in values.iter().enumerate().filter(|(_, s)| s.is_positive()) {
                let common: BTreeSet<usize> = rays[p].1.intersection(&rays[q].1).copied().collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(w, (_, zw))| w == p || w == q || !common.is_subset(zw));
                if !adjacent {
                    continue;
                }
                // sq * v_p - sp * v_q has slack zero
                let v: Vec<Rational> = rays[p].0.iter().zip(&rays[q].0).map(|(x, y)| sq * x - sp * y).collect();
                let mut z = common;
                z.insert(id);
                next.push((v, z));
            }
        }
        rays = next;
    }
    let mut vertices: Vec<Vec<Rational>> = rays
        .into_iter()
        .filter(|(v, _)| v[d].is_positive())
        .map(|(v, _)| v[..d].iter().map(|x| x / &v[d]).collect())
        .collect();
    vertices.sort();
    vertices.dedup();
    vertices
}

/// `G u` for the inner product `∗` in which every `e_i^b`, `b ∈ Z_r`, is a
/// unit vector and `e_i^a ∗ e_i^b = -1/(r-1)` for `a != b`; distinct factors
/// are orthogonal. For `r = 2` this is the coordinate dot product.
pub fn gram_apply(spec: &ArrangementSpec, u: &[Rational]) -> Vec<Rational> {
    let width = spec.r() as usize - 1;
    let off = Rational::new((-1).into(), (width as i64).into());
    let mut out = Vec::with_capacity(u.len());
    for block in u.chunks(width.max(1)) {
        let total: Rational = block.iter().sum();
        for x in block {
            // x + off * (total - x)
            out.push(x + &off * (&total - x));
        }
    }
    out
}

/// `v ∗ u`.
pub fn star(spec: &ArrangementSpec, v: &[Rational], u: &[Rational]) -> Rational {
    gram_apply(spec, u).iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Truncation matrix in cone coordinates: row `j` is `Σ_{i ∈ I_j} x_i` as a
/// function of the generator coefficients, `min(|I_j|, |I_k|)` in column `k`.
fn truncation_rows(chain: &Chain) -> Vec<Vec<Rational>> {
    let sizes: Vec<usize> = chain.levels().iter().map(DecoratedSubset::len).collect();
    sizes
        .iter()
        .map(|&sj| {
            sizes
                .iter()
                .map(|&sk| Rational::from_integer(sj.min(sk).into()))
                .collect()
        })
        .collect()
}

/// The truncated cone of a maximal chain.
pub fn cell_polytope(chain: &Chain, spec: &ArrangementSpec) -> Result<Polytope> {
    if !chain.is_maximal(spec) {
        return Err(Error::InvalidChain(format!(
            "{chain} is not a maximal chain for r = {}, n = {}",
            spec.r(),
            spec.n()
        )));
    }
    let generators: Vec<Vec<Rational>> = chain
        .levels()
        .iter()
        .map(|d| ray_vector(d, spec).to_rational())
        .collect();
    let solver = SpanSolver::new(&generators, spec.dim());
    let rows = truncation_rows(chain);
    let bounds: Vec<Rational> = chain
        .levels()
        .iter()
        .map(|d| Rational::from_integer(delta(spec.n(), d.len()).expect("|I| <= n").into()))
        .collect();

    let mut h_rep = Vec::new();
    for row in solver.coefficient_rows() {
        h_rep.push(Constraint {
            normal: row.iter().map(|x| -x).collect(),
            bound: Rational::zero(),
        });
    }
    for row in solver.complement_rows() {
        h_rep.push(Constraint {
            normal: row.clone(),
            bound: Rational::zero(),
        });
        h_rep.push(Constraint {
            normal: row.iter().map(|x| -x).collect(),
            bound: Rational::zero(),
        });
    }
    for (u, bound) in generators.iter().zip(&bounds) {
        h_rep.push(Constraint {
            normal: gram_apply(spec, u),
            bound: bound.clone(),
        });
    }

    let mut v_rep: Vec<Vec<Rational>> = orthant_vertices(&rows, &bounds)
        .into_iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); spec.dim()];
            for (ck, g) in c.iter().zip(&generators) {
                for (x, y) in v.iter_mut().zip(g) {
                    *x += ck * y;
                }
            }
            v
        })
        .collect();
    v_rep.sort();
    Ok(Polytope {
        h_rep,
        v_rep,
        label: chain.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalComplex {
    spec: ArrangementSpec,
    cells: Vec<Polytope>,
}

impl NormalComplex {
    pub fn spec(&self) -> &ArrangementSpec {
        &self.spec
    }

    pub fn cells(&self) -> &[Polytope] {
        &self.cells
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.contains(p))
    }

    pub fn cell(&self, chain: &Chain) -> Option<&Polytope> {
        self.cells.iter().find(|c| &c.label == chain)
    }
}

/// One cell per maximal chain.
pub fn complex_cells(spec: &ArrangementSpec, guards: &Guards) -> Result<NormalComplex> {
    guards.check_normal(spec)?;
    let cells = enumerate_chains(spec, spec.n())
        .filter(|c| c.is_maximal(spec))
        .map(|c| cell_polytope(&c, spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(NormalComplex { spec: *spec, cells })
}

/// Membership in the support together with `Σ_{i ∈ I} x_i <= δ^n_{|I|}`
/// for every `I`; the binding subsets are those of the largest `x_i`.
pub fn in_delta(p: &[Rational], spec: &ArrangementSpec) -> bool {
    let Some(curve) = curve_from_point(p, spec) else {
        return false;
    };
    let mut x: Vec<&Rational> = curve.points().iter().map(|(_, l)| l).collect();
    x.sort_by(|a, b| b.cmp(a));
    let mut sum = Rational::zero();
    for (k, xi) in x.into_iter().enumerate() {
        sum += xi;
        if sum > Rational::from_integer(delta(spec.n(), k + 1).expect("k < n").into()) {
            return false;
        }
    }
    true
}

/// Extreme points of the convex hull of all cell vertices.
pub fn union_extremes(complex: &NormalComplex) -> Vec<Vec<Rational>> {
    let points: Vec<Vec<Rational>> = complex
        .cells
        .iter()
        .flat_map(|c| c.v_rep.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let dim = complex.spec.dim();
    points
        .iter()
        .enumerate()
        .filter(|&(k, p)| {
            let others: Vec<&Vec<Rational>> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, q)| q)
                .collect();
            // p = Σ λ_j q_j, Σ λ_j = 1, λ >= 0
            let mut a: Vec<Vec<Rational>> = (0..dim)
                .map(|row| others.iter().map(|q| q[row].clone()).collect())
                .collect();
            a.push(vec![Rational::one(); others.len()]);
            let mut b = p.clone();
            b.push(Rational::one());
            !feasible_nonnegative(&a, &b)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, solve_columns};
    use crate::lattice::Chain;

    fn spec(r: u32, n: usize) -> ArrangementSpec {
        ArrangementSpec::new(r, n).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    /// Vertices by solving every square subsystem of tight constraints.
    fn brute_vertices(a: &[Vec<Rational>], b: &[Rational]) -> Vec<Vec<Rational>> {
        let d = a[0].len();
        let mut rows: Vec<(Vec<Rational>, Rational)> = (0..d)
            .map(|k| ((0..d).map(|j| if j == k { -rat(1) } else { rat(0) }).collect(), rat(0)))
            .collect();
        rows.extend(a.iter().cloned().zip(b.iter().cloned()));
        let mut out = BTreeSet::new();
        let m = rows.len();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != d {
                continue;
            }
            let chosen: Vec<&(Vec<Rational>, Rational)> =
                (0..m).filter(|k| mask >> k & 1 == 1).map(|k| &rows[k]).collect();
            let columns: Vec<Vec<Rational>> = (0..d)
                .map(|j| chosen.iter().map(|(r, _)| r[j].clone()).collect())
                .collect();
            let target: Vec<Rational> = chosen.iter().map(|(_, b)| b.clone()).collect();
            if crate::exact::rank(&chosen.iter().map(|(r, _)| r.clone()).collect::<Vec<_>>()) < d {
                continue;
            }
            let Some(x) = solve_columns(&columns, &target) else {
                continue;
            };
            let feasible = rows
                .iter()
                .all(|(r, b)| r.iter().zip(&x).map(|(p, q)| p * q).sum::<Rational>() <= *b);
            if feasible {
                out.insert(x);
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(2, 1).unwrap(), 2);
        assert_eq!(delta(2, 2).unwrap(), 3);
        assert_eq!(delta(3, 3).unwrap(), 6);
        assert_eq!(delta(4, 0).unwrap(), 0);
        assert!(delta(2, 3).is_err());
    }

    #[test]
    fn z_examples() {
        let z = z_vector(&spec(2, 2));
        assert!(z.iter().all(|(d, &v)| v == if d.len() == 1 { 2 } else { 3 }));
        assert!(z_vector(&spec(3, 1)).values().all(|&v| v == 1));
        let z = z_vector(&spec(2, 3));
        assert!(z.iter().all(|(d, &v)| v == [0, 3, 5, 6][d.len()]));
    }

    #[test]
    fn cell_example_2_2() {
        let s = spec(2, 2);
        let chain: Chain = "{1:0}<{1:0,2:0}".parse().unwrap();
        let cell = cell_polytope(&chain, &s).unwrap();
        // x-coordinates (x_1, x_2) of the points 2 e_1^0 + ..., with e^0 = -e^1
        let xs: BTreeSet<Vec<Rational>> = cell.v_rep.iter().map(|p| p.iter().map(|c| -c).collect()).collect();
        let expected: BTreeSet<Vec<Rational>> = [v(&[0, 0]), v(&[2, 0]), v(&[2, 1]), vec![ratio(3, 2), ratio(3, 2)]]
            .into_iter()
            .collect();
        assert_eq!(xs, expected);
    }

    #[test]
    fn cell_example_3_1() {
        let s = spec(3, 1);
        let cell = cell_polytope(&"{1:0}".parse().unwrap(), &s).unwrap();
        assert_eq!(cell.v_rep, vec![v(&[-1, -1]), v(&[0, 0])]);
    }

    #[test]
    fn non_maximal_rejected() {
        assert!(cell_polytope(&"{1:0}".parse().unwrap(), &spec(2, 2)).is_err());
    }

    #[test]
    fn vertices_are_feasible_and_tight() {
        for (r, n) in [(2, 2), (3, 2), (2, 3)] {
            let s = spec(r, n);
            for cell in complex_cells(&s, &Guards::default()).unwrap().cells() {
                assert!(cell.v_rep.contains(&vec![rat(0); s.dim()]));
                for p in &cell.v_rep {
                    let tight: Vec<Vec<Rational>> = cell
                        .h_rep
                        .iter()
                        .filter(|c| c.is_tight(p))
                        .map(|c| c.normal.clone())
                        .collect();
                    assert!(cell.contains(p));
                    assert_eq!(crate::exact::rank(&tight), s.dim(), "{} {:?}", cell.label, p);
                }
            }
        }
    }

    #[test]
    fn double_description_matches_brute_force() {
        for (r, n) in [(2, 2), (2, 3), (3, 3)] {
            let s = spec(r, n);
            let chain = enumerate_chains(&s, n).find(|c| c.is_maximal(&s)).unwrap();
            let a = truncation_rows(&chain);
            let b: Vec<Rational> = chain
                .levels()
                .iter()
                .map(|d| rat(delta(n, d.len()).unwrap() as i64))
                .collect();
            assert_eq!(orthant_vertices(&a, &b), brute_vertices(&a, &b));
        }
        let a = vec![v(&[1, 1, 1]), v(&[1, 2, 0]), v(&[0, 1, 3])];
        let b = v(&[4, 5, 6]);
        assert_eq!(orthant_vertices(&a, &b), brute_vertices(&a, &b));
    }

    #[test]
    fn complex_counts() {
        let g = Guards::default();
        let c = complex_cells(&spec(2, 2), &g).unwrap();
        assert_eq!(c.cells().len(), 8);
        assert!(c.cells().iter().all(|p| p.v_rep.len() == 4));
        let c = complex_cells(&spec(3, 1), &g).unwrap();
        assert_eq!(c.cells().len(), 3);
        let c = complex_cells(&spec(2, 1), &g).unwrap();
        assert_eq!(union_extremes(&c), vec![v(&[-1]), v(&[1])]);
        assert!(complex_cells(&spec(2, 4), &g).is_err());
    }

    #[test]
    fn in_delta_examples() {
        let s = spec(2, 2);
        assert!(in_delta(&v(&[0, 0]), &s));
        assert!(in_delta(&v(&[-2, -1]), &s));
        assert!(!in_delta(&v(&[-2, -2]), &s));
        assert!(!in_delta(&v(&[1, 1, 0, 0]), &spec(3, 2)));
    }

    #[test]
    fn star_gives_unit_spokes() {
        for r in [2, 3, 4] {
            let s = spec(r, 1);
            let spokes: Vec<Vec<Rational>> = (0..r)
                .map(|b| {
                    let d = DecoratedSubset::singleton(1, s.residue(-(b as i64)));
                    ray_vector(&d, &s).to_rational()
                })
                .collect();
            for (a, x) in spokes.iter().enumerate() {
                for (b, y) in spokes.iter().enumerate() {
                    let want = if a == b { rat(1) } else { ratio(-1, r as i64 - 1) };
                    assert_eq!(star(&s, x, y), want);
                }
            }
        }
    }

    #[test]
    fn octagon() {
        let c = complex_cells(&spec(2, 2), &Guards::default()).unwrap();
        let got: BTreeSet<Vec<Rational>> = union_extremes(&c).into_iter().collect();
        let mut expected = BTreeSet::new();
        for (a, b) in [(1, 2), (2, 1)] {
            for sa in [-1, 1] {
                for sb in [-1, 1] {
                    expected.insert(v(&[sa * a, sb * b]));
                }
            }
        }
        assert_eq!(got, expected);
    }
}
