//! Nested-set fans in `V = (R^r / R)^n`.
//!
//! Coordinates use the basis `e_i^j` for `i ∈ {1..n}`, `j ∈ {1..r-1}`; the
//! remaining vector `e_i^0` is eliminated as `-(e_i^1 + ... + e_i^{r-1})`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{elementary_divisors, Rational, SpanSolver};
use crate::lattice::{
    enumerate_chains, enumerate_nested_sets, is_nested, ArrangementSpec, BuildingSet, Chain, DecoratedSubset, Residue,
};

/// Integer vector in the `e_i^j` basis, `j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn zero(spec: &ArrangementSpec) -> Self {
        Self(vec![0; spec.dim()])
    }

    pub fn from_coords(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Adds `e_i^j` (with `e_i^0` expanded).
    pub fn add_basis(&mut self, spec: &ArrangementSpec, i: usize, j: Residue, times: i64) {
        let width = spec.r() as usize - 1;
        let block = (i - 1) * width;
        if j == 0 {
            for c in &mut self.0[block..block + width] {
                *c -= times;
            }
        } else {
            self.0[block + j as usize - 1] += times;
        }
    }

    pub fn is_primitive(&self) -> bool {
        let g = self.0.iter().fold(0i64, |g, &c| num_integer::gcd(g, c));
        g == 1
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| Rational::from_integer(c.into())).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Basis labels `e_i^j` in coordinate order.
pub fn basis_labels(spec: &ArrangementSpec) -> Vec<String> {
    (1..=spec.n())
        .flat_map(|i| (1..spec.r()).map(move |j| format!("e_{i}^{j}")))
        .collect()
}

/// `u = Σ_{i ∈ I} e_i^{-a(i)}`, the primitive generator of the ray of `d`.
pub fn ray_vector(d: &DecoratedSubset, spec: &ArrangementSpec) -> LatticeVector {
    let mut v = LatticeVector::zero(spec);
    for &(i, a) in d.entries() {
        v.add_basis(spec, i, spec.residue(-(a as i64)), 1);
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rays: Vec<DecoratedSubset>,
    generators: Vec<LatticeVector>,
}

impl Cone {
    fn new(spec: &ArrangementSpec, mut rays: Vec<DecoratedSubset>) -> Self {
        rays.sort();
        let generators = rays.iter().map(|d| ray_vector(d, spec)).collect();
        Self { rays, generators }
    }

    /// Builds a cone from explicit generators (not necessarily from the fan).
    pub fn from_generators(generators: Vec<LatticeVector>) -> Self {
        Self {
            rays: Vec::new(),
            generators,
        }
    }

    pub fn rays(&self) -> &[DecoratedSubset] {
        &self.rays
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// The chain labelling this cone, if its rays are totally ordered.
    pub fn chain(&self) -> Option<Chain> {
        Chain::new(self.rays.clone()).ok()
    }

    fn generator_set(&self) -> BTreeSet<LatticeVector> {
        self.generators.iter().cloned().collect()
    }
}

/// Smith-normal-form unimodularity: the generators extend to a basis of the
/// lattice.
pub fn is_smooth_cone(cone: &Cone) -> bool {
    if cone.generators.is_empty() {
        return true;
    }
    let m: Vec<Vec<BigInt>> = cone
        .generators
        .iter()
        .map(|g| g.coords().iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let divisors = elementary_divisors(&m);
    divisors.len() == cone.generators.len() && divisors.iter().all(One::is_one)
}

/// Simplicial fan whose cones are labelled by nested sets of a building set.
#[derive(Clone, Debug)]
pub struct Fan {
    spec: ArrangementSpec,
    building_set: BuildingSet,
    rays: BTreeMap<DecoratedSubset, LatticeVector>,
    cones: BTreeMap<Vec<DecoratedSubset>, Cone>,
    maximal: Vec<(Vec<DecoratedSubset>, SpanSolver)>,
}

impl Fan {
    /// Assembles a fan from face-closed cone labels.
    pub fn from_cones(
        spec: &ArrangementSpec,
        building_set: BuildingSet,
        labels: impl IntoIterator<Item = Vec<DecoratedSubset>>,
    ) -> Self {
        let mut cones = BTreeMap::new();
        for mut label in labels {
            label.sort();
            let cone = Cone::new(spec, label.clone());
            cones.insert(label, cone);
        }
        let rays: BTreeMap<_, _> = cones
            .keys()
            .filter(|k| k.len() == 1)
            .map(|k| (k[0].clone(), ray_vector(&k[0], spec)))
            .collect();
        let mut covered: BTreeSet<Vec<DecoratedSubset>> = BTreeSet::new();
        for k in cones.keys() {
            for skip in 0..k.len() {
                let mut facet = k.clone();
                facet.remove(skip);
                covered.insert(facet);
            }
        }
        let maximal = cones
            .iter()
            .filter(|(k, _)| !covered.contains(*k))
            .map(|(k, cone)| {
                let cols: Vec<Vec<Rational>> = cone.generators.iter().map(LatticeVector::to_rational).collect();
                (k.clone(), SpanSolver::new(&cols, spec.dim()))
            })
            .collect();
        Self {
            spec: *spec,
            building_set,
            rays,
            cones,
            maximal,
        }
    }

    pub fn spec(&self) -> &ArrangementSpec {
        &self.spec
    }

    pub fn building_set(&self) -> &BuildingSet {
        &self.building_set
    }

    pub fn rays(&self) -> &BTreeMap<DecoratedSubset, LatticeVector> {
        &self.rays
    }

    /// All cones, including the zero cone, keyed by their sorted ray labels.
    pub fn cones(&self) -> &BTreeMap<Vec<DecoratedSubset>, Cone> {
        &self.cones
    }

    pub fn cone(&self, label: &[DecoratedSubset]) -> Option<&Cone> {
        let mut key = label.to_vec();
        key.sort();
        self.cones.get(&key)
    }

    pub fn cone_of_chain(&self, chain: &Chain) -> Option<&Cone> {
        self.cones.get(chain.levels())
    }

    pub fn cones_of_dim(&self, dim: usize) -> impl Iterator<Item = &Cone> {
        self.cones.values().filter(move |c| c.dim() == dim)
    }

    /// Cones that are not proper faces of another cone.
    pub fn maximal_cones(&self) -> impl Iterator<Item = &Cone> {
        self.maximal.iter().map(|(k, _)| &self.cones[k])
    }

    /// The cone containing `p` in its relative interior, if `p` is in the
    /// support.
    pub fn locate_cone(&self, p: &[Rational]) -> Option<&Cone> {
        if p.len() != self.spec.dim() {
            return None;
        }
        for (label, solver) in &self.maximal {
            let Some(coeffs) = solver.solve(p) else { continue };
            if coeffs.iter().any(Signed::is_negative) {
                continue;
            }
            let face: Vec<DecoratedSubset> = label
                .iter()
                .zip(&coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(d, _)| d.clone())
                .collect();
            return self.cones.get(&face);
        }
        None
    }

    /// Chain of the cone containing `p` in its relative interior.
    pub fn locate_point(&self, p: &[Rational]) -> Option<Chain> {
        self.locate_cone(p).and_then(Cone::chain)
    }
}

pub fn locate_point(fan: &Fan, p: &[Rational]) -> Option<Chain> {
    fan.locate_point(p)
}

/// One cone per `G`-nested set.
pub fn build_fan(spec: &ArrangementSpec, g: &BuildingSet) -> Result<Fan> {
    if !g.is_validated() {
        return Err(Error::UnvalidatedBuildingSet);
    }
    let labels: Vec<Vec<DecoratedSubset>> = if g.is_maximal() {
        // nested sets of the maximal building set are exactly the chains
        enumerate_chains(spec, spec.n()).map(|c| c.levels().to_vec()).collect()
    } else {
        enumerate_nested_sets(g)
    };
    Ok(Fan::from_cones(spec, g.clone(), labels))
}

/// Builds the fan from the product of the factor fans by stellar
/// subdivision at `v_C` for every non-singleton `C ∈ G`, smallest
/// subvariety (largest index set) first, then drops cones that are not
/// `G`-nested.
pub fn build_fan_stellar(spec: &ArrangementSpec, g: &BuildingSet) -> Result<Fan> {
    if !g.is_validated() {
        return Err(Error::UnvalidatedBuildingSet);
    }
    let factors: Vec<Vec<DecoratedSubset>> = (1..=spec.n()).map(|i| g.factor(i)).collect();
    for (k, f) in factors.iter().enumerate() {
        if f.len() != spec.r() as usize {
            return Err(Error::NotBuildingSet(format!(
                "factor {} has {} of its {} points",
                k + 1,
                f.len(),
                spec.r()
            )));
        }
    }

    // product fan: at most one ray per factor
    let mut cones: BTreeSet<Vec<DecoratedSubset>> = BTreeSet::new();
    cones.insert(Vec::new());
    for f in &factors {
        let extended: Vec<Vec<DecoratedSubset>> = cones
            .iter()
            .flat_map(|c| {
                f.iter().map(move |d| {
                    let mut c = c.clone();
                    c.push(d.clone());
                    c.sort();
                    c
                })
            })
            .collect();
        cones.extend(extended);
    }

    let mut centres: Vec<&DecoratedSubset> = g.elements().iter().filter(|d| d.len() > 1).collect();
    centres.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    for c in centres {
        cones = stellar_subdivide(spec, &cones, c)?;
    }

    let nested = cones.into_iter().filter(|s| is_nested(s, g));
    Ok(Fan::from_cones(spec, g.clone(), nested))
}

/// Star subdivision of a face-closed simplicial fan at the ray of `centre`.
fn stellar_subdivide(
    spec: &ArrangementSpec,
    cones: &BTreeSet<Vec<DecoratedSubset>>,
    centre: &DecoratedSubset,
) -> Result<BTreeSet<Vec<DecoratedSubset>>> {
    let v = ray_vector(centre, spec).to_rational();
    let mut tau: Option<Vec<DecoratedSubset>> = None;
    for label in cones {
        let cols: Vec<Vec<Rational>> = label.iter().map(|d| ray_vector(d, spec).to_rational()).collect();
        let solver = SpanSolver::new(&cols, spec.dim());
        if let Some(c) = solver.solve(&v) {
            if c.iter().all(Signed::is_positive) {
                tau = Some(label.clone());
                break;
            }
        }
    }
    let tau = tau.ok_or_else(|| Error::Internal(format!("{centre} lies outside the fan")))?;
    let contains_tau = |s: &Vec<DecoratedSubset>| tau.iter().all(|t| s.binary_search(t).is_ok());

    let mut out: BTreeSet<Vec<DecoratedSubset>> = cones.iter().filter(|s| !contains_tau(s)).cloned().collect();
    for face in cones.iter().filter(|s| !contains_tau(s)) {
        let mut with_tau = face.clone();
        with_tau.extend(tau.iter().cloned());
        with_tau.sort();
        with_tau.dedup();
        if cones.contains(&with_tau) {
            let mut joined = face.clone();
            joined.push(centre.clone());
            joined.sort();
            out.insert(joined);
        }
    }
    Ok(out)
}

/// Same cones, compared as sets of generator sets.
pub fn fans_equal(a: &Fan, b: &Fan) -> bool {
    if a.spec != b.spec {
        return false;
    }
    let set = |f: &Fan| -> BTreeSet<BTreeSet<LatticeVector>> { f.cones.values().map(Cone::generator_set).collect() };
    set(a) == set(b)
}

/// Product of the factor fans, before any subdivision.
pub fn product_fan(spec: &ArrangementSpec) -> Fan {
    let singles: Vec<DecoratedSubset> = (1..=spec.n())
        .flat_map(|i| (0..spec.r()).map(move |a| DecoratedSubset::singleton(i, a)))
        .collect();
    let g = BuildingSet::validated(spec, singles).expect("singletons form a building set");
    build_fan(spec, &g).expect("validated")
}
