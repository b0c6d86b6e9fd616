//! Chow ring of the compactified moduli space, presented by boundary
//! divisors `D_I` (one per decorated subset) modulo
//!
//! * `D_I · D_J = 0` unless `I` and `J` are comparable, and
//! * `Σ_{i ∈ I, a(i) = a} D_I = Σ_{i ∈ I, a(i) = b} D_I` for every factor `i`
//!   and residues `a, b`.
//!
//! Graded ranks are computed twice: from the direct-sum decomposition indexed
//! by jump types, and by linear algebra in the quotient ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{rank, Rational, SparseRank};
use crate::guard::Guards;
use crate::lattice::{
    enumerate_chains, enumerate_decorated_subsets, ArrangementSpec, Chain, DecoratedSubset, JumpType, Residue,
};

/// `Σ_{i ∈ I, a(i) = a} D_I - Σ_{i ∈ I, a(i) = b} D_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub factor: usize,
    pub a: Residue,
    pub b: Residue,
    /// `(generator index, coefficient)`, sorted by index.
    pub terms: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct ChowPresentation {
    spec: ArrangementSpec,
    generators: Vec<DecoratedSubset>,
    linear_relations: Vec<LinearRelation>,
    reduced: Vec<usize>,
}

impl ChowPresentation {
    pub fn spec(&self) -> &ArrangementSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[DecoratedSubset] {
        &self.generators
    }

    /// One relation per factor and residue pair `a < b`.
    pub fn linear_relations(&self) -> &[LinearRelation] {
        &self.linear_relations
    }

    /// A maximal independent subset of the linear relations.
    pub fn reduced_relations(&self) -> impl Iterator<Item = &LinearRelation> {
        self.reduced.iter().map(|&k| &self.linear_relations[k])
    }

    pub fn independent_relation_count(&self) -> usize {
        self.reduced.len()
    }

    /// The quadratic monomial relation: `D_x · D_y` vanishes when `x`, `y`
    /// are incomparable.
    pub fn product_vanishes(&self, x: usize, y: usize) -> bool {
        !self.generators[x].comparable(&self.generators[y])
    }

    pub fn generator_index(&self, d: &DecoratedSubset) -> Option<usize> {
        self.generators.binary_search(d).ok()
    }
}

pub fn presentation(spec: &ArrangementSpec) -> ChowPresentation {
    let generators = enumerate_decorated_subsets(spec);
    let mut linear_relations = Vec::new();
    for i in 1..=spec.n() {
        for a in 0..spec.r() {
            for b in a + 1..spec.r() {
                let terms = generators
                    .iter()
                    .enumerate()
                    .filter_map(|(k, d)| match d.decoration(i) {
                        Some(x) if x == a => Some((k, 1)),
                        Some(x) if x == b => Some((k, -1)),
                        _ => None,
                    })
                    .collect();
                linear_relations.push(LinearRelation { factor: i, a, b, terms });
            }
        }
    }
    let dense = |rel: &LinearRelation| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); generators.len()];
        for &(k, c) in &rel.terms {
            v[k] = Rational::from_integer(c.into());
        }
        v
    };
    let mut reduced = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (k, rel) in linear_relations.iter().enumerate() {
        basis.push(dense(rel));
        if rank(&basis) == basis.len() {
            reduced.push(k);
        } else {
            basis.pop();
        }
    }
    ChowPresentation {
        spec: *spec,
        generators,
        linear_relations,
        reduced,
    }
}

/// Chain of the stratum cut out by `Π D`, or `None` when the product is
/// zero by the monomial relations.
pub fn product_support(ds: &[DecoratedSubset]) -> Option<Chain> {
    let mut levels = ds.to_vec();
    levels.sort();
    levels.dedup();
    if levels.iter().any(DecoratedSubset::is_empty) {
        return None;
    }
    Chain::new(levels).ok()
}

/// Ranks `b_0, ..., b_n` of the graded Chow groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims(pub Vec<BigUint>);

impl GradedDims {
    pub fn dims(&self) -> &[BigUint] {
        &self.0
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn as_u64(&self) -> Option<Vec<u64>> {
        self.0.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl From<Vec<u64>> for GradedDims {
    fn from(v: Vec<u64>) -> Self {
        Self(v.into_iter().map(BigUint::from).collect())
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

fn binomial(m: usize, k: usize) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(m - t) / BigUint::from(t + 1);
    }
    acc
}

fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, t| acc * BigUint::from(t))
}

/// Number of chains of jump type `j`: `n! / (j_1! ⋯ j_l! (n-|j|)!) · r^{|j|}`.
pub fn chains_of_jump_type(spec: &ArrangementSpec, j: &JumpType) -> BigUint {
    let total = j.total();
    if total > spec.n() || j.parts().contains(&0) {
        return BigUint::zero();
    }
    let denom = j
        .parts()
        .iter()
        .fold(factorial(spec.n() - total), |acc, &p| acc * factorial(p));
    factorial(spec.n()) / denom * BigUint::from(spec.r()).pow(total as u32)
}

/// Compositions of at most `bound` with every part at least `min_part`.
pub fn compositions(bound: usize, min_part: usize) -> Vec<JumpType> {
    fn go(rest: usize, min_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<JumpType>) {
        for p in min_part.max(1)..=rest {
            prefix.push(p);
            out.push(JumpType(prefix.clone()));
            go(rest - p, min_part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, min_part, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Closed form: `b_k = C(n,k) + Σ_j N_j Σ_{μ ∈ M_j} C(n-|j|, k-|μ|)` over jump
/// types `j` with all parts at least 2 (other jump types have empty `M_j`).
pub fn betti_closed_form(spec: &ArrangementSpec) -> GradedDims {
    let n = spec.n();
    let mut dims: Vec<BigUint> = (0..=n).map(|k| binomial(n, k)).collect();
    for j in compositions(n, 2) {
        let weight = chains_of_jump_type(spec, &j);
        // distribution of |μ| over 1 <= μ_i < j_i
        let mut mu: Vec<BigUint> = vec![BigUint::one()];
        for &part in j.parts() {
            let mut next = vec![BigUint::zero(); mu.len() + part - 1];
            for (s, count) in mu.iter().enumerate() {
                for m in 1..part {
                    next[s + m] += count;
                }
            }
            mu = next;
        }
        let rest = n - j.total();
        for (k, b) in dims.iter_mut().enumerate() {
            for (size, count) in mu.iter().enumerate() {
                if count.is_zero() || size > k {
                    continue;
                }
                *b += &weight * count * binomial(rest, k - size);
            }
        }
    }
    GradedDims(dims)
}

/// Monomials of one degree whose support is a chain, indexed for the
/// relation matrix. A monomial is a sorted list of generator indices.
struct MonomialBasis {
    index: HashMap<Vec<usize>, usize>,
    len: usize,
}

fn chain_monomials(chains: &[Vec<usize>], degree: usize) -> MonomialBasis {
    let mut all: Vec<Vec<usize>> = Vec::new();
    if degree == 0 {
        all.push(Vec::new());
    }
    for c in chains.iter().filter(|c| !c.is_empty() && c.len() <= degree) {
        // exponents >= 1 summing to degree
        let mut stack = vec![(Vec::<usize>::new(), 0usize)];
        while let Some((exps, used)) = stack.pop() {
            if exps.len() == c.len() {
                if used == degree {
                    let mut mono = Vec::with_capacity(degree);
                    for (&g, &e) in c.iter().zip(&exps) {
                        mono.extend(std::iter::repeat_n(g, e));
                    }
                    mono.sort_unstable();
                    all.push(mono);
                }
                continue;
            }
            let left = c.len() - exps.len() - 1;
            for e in 1..=degree.saturating_sub(used + left) {
                let mut next = exps.clone();
                next.push(e);
                stack.push((next, used + e));
            }
        }
    }
    all.sort();
    let index: HashMap<Vec<usize>, usize> = all.into_iter().enumerate().map(|(k, m)| (m, k)).collect();
    let len = index.len();
    MonomialBasis { index, len }
}

/// Degree-`k` relation space of the quotient ring, reduced modulo the
/// monomial relations.
pub struct DegreeReduction {
    basis: MonomialBasis,
    span: SparseRank,
}

impl DegreeReduction {
    pub fn monomial_count(&self) -> usize {
        self.basis.len
    }

    pub fn relation_rank(&self) -> usize {
        self.span.rank()
    }

    pub fn betti(&self) -> usize {
        self.basis.len - self.span.rank()
    }

    /// Whether the monomial `Π D_g` (generator indices) is zero in the
    /// quotient.
    pub fn vanishes(&self, monomial: &[usize]) -> bool {
        let mut m = monomial.to_vec();
        m.sort_unstable();
        match self.basis.index.get(&m) {
            None => true,
            Some(&col) => self.span.in_span(vec![(col, BigInt::one())]),
        }
    }
}

fn chain_indices(p: &ChowPresentation) -> Vec<Vec<usize>> {
    enumerate_chains(&p.spec, p.spec.n())
        .map(|c| {
            c.levels()
                .iter()
                .map(|d| p.generator_index(d).expect("generator"))
                .collect()
        })
        .collect()
}

fn reduce_degree(p: &ChowPresentation, chains: &[Vec<usize>], degree: usize) -> DegreeReduction {
    let basis = chain_monomials(chains, degree);
    let mut span = SparseRank::new();
    if degree > 0 {
        let lower = chain_monomials(chains, degree - 1);
        let mut multipliers: Vec<(&Vec<usize>, &usize)> = lower.index.iter().collect();
        multipliers.sort_by_key(|(_, &k)| k);
        for rel in p.reduced_relations() {
            for (m, _) in &multipliers {
                let mut row: BTreeMap<usize, i64> = BTreeMap::new();
                for &(g, c) in &rel.terms {
                    let mut prod = (*m).clone();
                    prod.push(g);
                    prod.sort_unstable();
                    if let Some(&col) = basis.index.get(&prod) {
                        *row.entry(col).or_insert(0) += c;
                    }
                }
                let row: Vec<(usize, BigInt)> = row
                    .into_iter()
                    .filter(|(_, c)| *c != 0)
                    .map(|(k, c)| (k, BigInt::from(c)))
                    .collect();
                if !row.is_empty() {
                    span.insert(row);
                }
            }
        }
    }
    DegreeReduction { basis, span }
}

fn oracle_guard(spec: &ArrangementSpec, guards: &Guards) -> Result<()> {
    let gens = spec.decorated_subset_count();
    if gens > guards.max_oracle_generators {
        return Err(Error::Feasibility {
            what: "number of Chow generators (1+r)^n - 1",
            value: gens.to_string(),
            bound: guards.max_oracle_generators,
        });
    }
    Ok(())
}

/// Reductions for every degree `0..=n`, one thread per degree.
pub fn oracle_reductions(spec: &ArrangementSpec, guards: &Guards) -> Result<Vec<DegreeReduction>> {
    oracle_guard(spec, guards)?;
    let p = presentation(spec);
    let chains = chain_indices(&p);
    let reductions = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..=spec.n())
            .map(|k| {
                let (p, chains) = (&p, &chains);
                scope.spawn(move || reduce_degree(p, chains, k))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("degree reduction panicked"))
            .collect()
    });
    Ok(reductions)
}

/// Graded ranks by Gaussian elimination in the quotient ring.
pub fn betti_oracle(spec: &ArrangementSpec, guards: &Guards) -> Result<GradedDims> {
    let reductions = oracle_reductions(spec, guards)?;
    Ok(GradedDims(
        reductions.iter().map(|r| BigUint::from(r.betti())).collect(),
    ))
}

/// Number of nonempty chains of each jump type, by enumeration.
pub fn jump_census(spec: &ArrangementSpec) -> BTreeMap<JumpType, BigUint> {
    let mut census: BTreeMap<JumpType, BigUint> = compositions(spec.n(), 1)
        .into_iter()
        .map(|j| (j, BigUint::zero()))
        .collect();
    for c in enumerate_chains(spec, spec.n()).filter(|c| !c.is_empty()) {
        *census.entry(c.jump_type()).or_default() += 1u32;
    }
    census
}
