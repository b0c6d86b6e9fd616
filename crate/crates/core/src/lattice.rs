//! Intersection lattice of the product arrangement of `r` points on each of
//! `n` projective lines.
//!
//! Every nonempty lattice element is a decorated subset `(I, a)`: a set of
//! factor indices `I ⊆ {1..n}` together with a residue `a(i) ∈ Z_r` for each
//! `i ∈ I`. Order is containment with agreeing decorations; the join of two
//! elements exists exactly when their decorations agree on the overlap.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Residue class in `Z_r`, stored as `0..r`.
pub type Residue = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArrangementSpec {
    r: u32,
    n: usize,
}

impl ArrangementSpec {
    pub fn new(r: u32, n: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidOrder(r));
        }
        Ok(Self { r, n })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the ambient lattice, `n(r-1)`.
    pub fn dim(&self) -> usize {
        self.n * (self.r as usize - 1)
    }

    /// `(1+r)^n - 1`, saturating at `u128::MAX`.
    pub fn decorated_subset_count(&self) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..self.n {
            acc = acc.saturating_mul(1 + self.r as u128);
        }
        acc - 1
    }

    /// `n! r^n`, saturating.
    pub fn maximal_chain_count(&self) -> u128 {
        let mut acc: u128 = 1;
        for k in 1..=self.n as u128 {
            acc = acc.saturating_mul(k).saturating_mul(self.r as u128);
        }
        acc
    }

    pub fn residue(&self, value: i64) -> Residue {
        value.rem_euclid(self.r as i64) as Residue
    }
}

/// A `Z_r`-decorated subset of `{1..n}`; indices are 1-based and ascending.
///
/// The empty decorated subset is the bottom element of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedSubset {
    entries: Vec<(usize, Residue)>,
}

impl DecoratedSubset {
    pub fn new(mut entries: Vec<(usize, Residue)>) -> Result<Self> {
        entries.sort_unstable();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidSubset(format!("index {} repeated", w[0].0)));
            }
        }
        if entries.iter().any(|&(i, _)| i == 0) {
            return Err(Error::InvalidSubset("indices are 1-based".into()));
        }
        Ok(Self { entries })
    }

    pub fn bottom() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn singleton(index: usize, residue: Residue) -> Self {
        Self {
            entries: vec![(index, residue)],
        }
    }

    /// Checks indices and residues against `spec`.
    pub fn check(&self, spec: &ArrangementSpec) -> Result<()> {
        for &(i, a) in &self.entries {
            if i > spec.n() {
                return Err(Error::InvalidSubset(format!("index {i} exceeds n = {}", spec.n())));
            }
            if a >= spec.r() {
                return Err(Error::InvalidSubset(format!("residue {a} not in Z_{}", spec.r())));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[(usize, Residue)] {
        &self.entries
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn decoration(&self, index: usize) -> Option<Residue> {
        self.entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .ok()
            .map(|k| self.entries[k].1)
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.decoration(index).is_some()
    }

    /// Restriction of the decoration to the indices in `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self {
            entries: self.entries.iter().copied().filter(|&(i, _)| keep(i)).collect(),
        }
    }

    /// `I ⊆ J` and the decorations agree on `I`.
    pub fn leq(&self, other: &Self) -> bool {
        let mut theirs = other.entries.iter().peekable();
        'outer: for &(i, a) in &self.entries {
            while let Some(&&(j, b)) = theirs.peek() {
                match j.cmp(&i) {
                    Ordering::Less => {
                        theirs.next();
                    }
                    Ordering::Equal => {
                        if a != b {
                            return false;
                        }
                        theirs.next();
                        continue 'outer;
                    }
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn comparable(&self, other: &Self) -> bool {
        self.leq(other) || other.leq(self)
    }

    /// Least upper bound; absent when the decorations conflict on the overlap.
    pub fn join(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some(&&(i, a)), Some(&&(j, b))) => match i.cmp(&j) {
                    Ordering::Less => {
                        out.push((i, a));
                        x.next();
                    }
                    Ordering::Greater => {
                        out.push((j, b));
                        y.next();
                    }
                    Ordering::Equal => {
                        if a != b {
                            return None;
                        }
                        out.push((i, a));
                        x.next();
                        y.next();
                    }
                },
                (Some(&&e), None) => {
                    out.push(e);
                    x.next();
                }
                (None, Some(&&e)) => {
                    out.push(e);
                    y.next();
                }
                (None, None) => break,
            }
        }
        Some(Self { entries: out })
    }
}

impl Ord for DecoratedSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for DecoratedSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DecoratedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, a)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}:{a}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for DecoratedSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{i:a,...}}, got {s:?}")))?;
        let mut entries = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (i, a) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected i:a, got {item:?}")))?;
            let i = i.trim().parse().map_err(|_| Error::Parse(format!("bad index {i:?}")))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue {a:?}")))?;
            entries.push((i, a));
        }
        let d = DecoratedSubset::new(entries)?;
        Ok(d)
    }
}

/// All nonempty decorated subsets, sorted by size and then lexicographically
/// on the `(i, a(i))` pairs.
pub fn enumerate_decorated_subsets(spec: &ArrangementSpec) -> Vec<DecoratedSubset> {
    let n = spec.n();
    let r = spec.r();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let idx: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        let mut deco = vec![0 as Residue; idx.len()];
        'odometer: loop {
            out.push(DecoratedSubset {
                entries: idx.iter().copied().zip(deco.iter().copied()).collect(),
            });
            for slot in deco.iter_mut().rev() {
                *slot += 1;
                if *slot < r {
                    continue 'odometer;
                }
                *slot = 0;
            }
            break;
        }
    }
    out.sort();
    out
}

/// A `Z_r`-decorated chain `I_1 ⊊ ... ⊊ I_l` with a decoration on `I_l`,
/// stored as its sequence of decorated prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    levels: Vec<DecoratedSubset>,
}

impl Chain {
    pub fn empty() -> Self {
        Self { levels: Vec::new() }
    }

    /// Builds a chain from decorated subsets; they are sorted and must be
    /// strictly increasing under [`DecoratedSubset::leq`].
    pub fn new(mut levels: Vec<DecoratedSubset>) -> Result<Self> {
        levels.sort();
        for w in levels.windows(2) {
            if w[0] == w[1] || !w[0].leq(&w[1]) {
                return Err(Error::InvalidChain(format!("{} is not below {}", w[0], w[1])));
            }
        }
        if levels.first().is_some_and(|d| d.is_empty()) {
            return Err(Error::InvalidChain("levels must be nonempty".into()));
        }
        Ok(Self { levels })
    }

    /// Builds a chain from its sets and the decoration of the largest one.
    pub fn from_sets(sets: &[Vec<usize>], top: &DecoratedSubset) -> Result<Self> {
        let levels = sets
            .iter()
            .map(|s| {
                let want: BTreeSet<usize> = s.iter().copied().collect();
                if !want.iter().all(|&i| top.contains_index(i)) {
                    return Err(Error::InvalidChain(format!("set {s:?} not inside top {top}")));
                }
                Ok(top.restrict(|i| want.contains(&i)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(levels)
    }

    pub fn levels(&self) -> &[DecoratedSubset] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn top(&self) -> Option<&DecoratedSubset> {
        self.levels.last()
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.levels.iter().map(|d| d.indices().collect()).collect()
    }

    /// Maximal chains have length `n` and top set `{1..n}`.
    pub fn is_maximal(&self, spec: &ArrangementSpec) -> bool {
        self.len() == spec.n() && self.top().map_or(spec.n() == 0, |t| t.len() == spec.n())
    }

    pub fn jump_type(&self) -> JumpType {
        let mut prev = 0;
        JumpType(
            self.levels
                .iter()
                .map(|d| {
                    let j = d.len() - prev;
                    prev = d.len();
                    j
                })
                .collect(),
        )
    }

    /// Intersection of the corresponding cones: the decorated prefixes the
    /// two chains have in common.
    pub fn intersect(&self, other: &Self) -> Self {
        let levels = self
            .levels
            .iter()
            .filter(|d| other.levels.binary_search(d).is_ok())
            .cloned()
            .collect();
        Self { levels }
    }
}

impl Ord for Chain {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.levels.cmp(&other.levels))
    }
}

impl PartialOrd for Chain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.levels.iter().enumerate() {
            if k > 0 {
                f.write_str("<")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Chain::empty());
        }
        let levels = s.split('<').map(str::parse).collect::<Result<Vec<_>>>()?;
        Chain::new(levels)
    }
}

pub fn chain_intersect(a: &Chain, b: &Chain) -> Chain {
    a.intersect(b)
}

/// Successive set-size increments along a chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JumpType(pub Vec<usize>);

impl JumpType {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for JumpType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str(")")
    }
}

pub fn jump_type(chain: &Chain) -> JumpType {
    chain.jump_type()
}

/// All chains of length at most `max_length`, shortest first and then in
/// lexicographic order of their decorated prefixes.
pub fn enumerate_chains(spec: &ArrangementSpec, max_length: usize) -> impl Iterator<Item = Chain> + 'static {
    let elements = enumerate_decorated_subsets(spec);
    (0..=max_length.min(spec.n())).flat_map(move |len| chains_of_length(&elements, len))
}

fn chains_of_length(elements: &[DecoratedSubset], len: usize) -> Vec<Chain> {
    fn extend(elements: &[DecoratedSubset], prefix: &mut Vec<DecoratedSubset>, len: usize, out: &mut Vec<Chain>) {
        if prefix.len() == len {
            out.push(Chain { levels: prefix.clone() });
            return;
        }
        for d in elements {
            let ok = match prefix.last() {
                Some(last) => d.len() > last.len() && last.leq(d),
                None => true,
            };
            if ok {
                prefix.push(d.clone());
                extend(elements, prefix, len, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(elements, &mut Vec::with_capacity(len), len, &mut out);
    out
}

/// A subset of the lattice above the bottom element, optionally checked to
/// satisfy the building-set axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingSet {
    spec: ArrangementSpec,
    elements: BTreeSet<DecoratedSubset>,
    validated: bool,
}

impl BuildingSet {
    /// All nonempty decorated subsets.
    pub fn maximal(spec: &ArrangementSpec) -> Self {
        Self {
            spec: *spec,
            elements: enumerate_decorated_subsets(spec).into_iter().collect(),
            validated: true,
        }
    }

    pub fn unvalidated(spec: &ArrangementSpec, elements: impl IntoIterator<Item = DecoratedSubset>) -> Result<Self> {
        let elements: BTreeSet<_> = elements.into_iter().collect();
        for d in &elements {
            d.check(spec)?;
            if d.is_empty() {
                return Err(Error::InvalidSubset("the bottom element is not allowed".into()));
            }
        }
        Ok(Self {
            spec: *spec,
            elements,
            validated: false,
        })
    }

    pub fn validated(spec: &ArrangementSpec, elements: impl IntoIterator<Item = DecoratedSubset>) -> Result<Self> {
        let mut g = Self::unvalidated(spec, elements)?;
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&mut self) -> Result<()> {
        if let Some(x) = building_set_witness(&self.elements, &self.spec) {
            return Err(Error::NotBuildingSet(format!("interval below {x} does not factor")));
        }
        self.validated = true;
        Ok(())
    }

    pub fn spec(&self) -> &ArrangementSpec {
        &self.spec
    }

    pub fn elements(&self) -> &BTreeSet<DecoratedSubset> {
        &self.elements
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn contains(&self, d: &DecoratedSubset) -> bool {
        self.elements.contains(d)
    }

    pub fn is_maximal(&self) -> bool {
        self.elements.len() as u128 == self.spec.decorated_subset_count()
    }

    /// Elements supported on the single factor `i`.
    pub fn factor(&self, i: usize) -> Vec<DecoratedSubset> {
        self.elements
            .iter()
            .filter(|d| d.len() == 1 && d.entries()[0].0 == i)
            .cloned()
            .collect()
    }
}

/// Building-set test: below every lattice element `X`, the maximal members
/// of `G` must factor the interval `[0, X]`. Small intervals are checked by
/// an explicit poset isomorphism, larger ones by the equivalent partition
/// criterion on index sets.
pub fn is_building_set(g: &BTreeSet<DecoratedSubset>, spec: &ArrangementSpec) -> bool {
    building_set_witness(g, spec).is_none()
}

fn building_set_witness(g: &BTreeSet<DecoratedSubset>, spec: &ArrangementSpec) -> Option<DecoratedSubset> {
    enumerate_decorated_subsets(spec).into_iter().find(|x| {
        let maxima = maximal_below(g, x);
        let ok = if x.len() <= 4 {
            interval_factors(x, &maxima)
        } else {
            maxima_partition(x, &maxima)
        };
        !ok
    })
}

/// Maximal elements of `g` below `x`.
pub fn maximal_below(g: &BTreeSet<DecoratedSubset>, x: &DecoratedSubset) -> Vec<DecoratedSubset> {
    let below: Vec<&DecoratedSubset> = g.iter().filter(|d| d.leq(x)).collect();
    below
        .iter()
        .filter(|d| !below.iter().any(|e| e != *d && d.leq(e)))
        .map(|d| (*d).clone())
        .collect()
}

/// Index sets of `maxima` partition the index set of `x`.
pub fn maxima_partition(x: &DecoratedSubset, maxima: &[DecoratedSubset]) -> bool {
    let mut seen = BTreeSet::new();
    for m in maxima {
        for i in m.indices() {
            if !seen.insert(i) {
                return false;
            }
        }
    }
    seen.len() == x.len()
}

/// Lower interval `[0, d]`, bottom included.
pub fn lower_interval(d: &DecoratedSubset) -> Vec<DecoratedSubset> {
    let k = d.len();
    (0u64..(1u64 << k))
        .map(|mask| DecoratedSubset {
            entries: (0..k).filter(|b| mask >> b & 1 == 1).map(|b| d.entries[b]).collect(),
        })
        .collect()
}

/// Whether `(y_1, ..., y_t) -> y_1 ∨ ... ∨ y_t` is a poset isomorphism
/// `∏ [0, m_j] -> [0, x]`.
pub fn interval_factors(x: &DecoratedSubset, maxima: &[DecoratedSubset]) -> bool {
    let factors: Vec<Vec<DecoratedSubset>> = maxima.iter().map(lower_interval).collect();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in &factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.len()).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    let target = lower_interval(x);
    if tuples.len() != target.len() {
        return false;
    }
    let mut images = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let mut acc = DecoratedSubset::bottom();
        for (f, &k) in factors.iter().zip(t) {
            match acc.join(&f[k]) {
                Some(j) => acc = j,
                None => return false,
            }
        }
        images.push(acc);
    }
    let distinct: BTreeSet<&DecoratedSubset> = images.iter().collect();
    if distinct.len() != target.len() || !images.iter().all(|y| y.leq(x)) {
        return false;
    }
    for (s, ys) in tuples.iter().enumerate() {
        for (t, yt) in tuples.iter().enumerate() {
            let componentwise = factors
                .iter()
                .zip(ys.iter().zip(yt))
                .all(|(f, (&a, &b))| f[a].leq(&f[b]));
            if componentwise != images[s].leq(&images[t]) {
                return false;
            }
        }
    }
    true
}

/// Nested-set test: every antichain of size at least two must have a join,
/// and that join must lie outside `G`. A missing join (empty intersection)
/// makes the set non-nested.
pub fn is_nested(s: &[DecoratedSubset], g: &BuildingSet) -> bool {
    let items: Vec<&DecoratedSubset> = s.iter().collect::<BTreeSet<_>>().into_iter().collect();
    let k = items.len();
    if k > 24 {
        // nested sets have at most n elements; anything this large is not one
        return false;
    }
    for mask in 1u32..(1u32 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<&DecoratedSubset> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| items[b]).collect();
        let antichain = chosen
            .iter()
            .enumerate()
            .all(|(a, x)| chosen[a + 1..].iter().all(|y| !x.comparable(y)));
        if !antichain {
            continue;
        }
        let mut acc = DecoratedSubset::bottom();
        for x in chosen {
            match acc.join(x) {
                Some(j) => acc = j,
                None => return false,
            }
        }
        if g.contains(&acc) {
            return false;
        }
    }
    true
}

/// All `G`-nested sets (including the empty one), each sorted in the global
/// order.
pub fn enumerate_nested_sets(g: &BuildingSet) -> Vec<Vec<DecoratedSubset>> {
    let elements: Vec<DecoratedSubset> = g.elements().iter().cloned().collect();
    let mut out = vec![Vec::new()];
    let mut stack: Vec<(Vec<DecoratedSubset>, usize)> = vec![(Vec::new(), 0)];
    while let Some((set, start)) = stack.pop() {
        for (k, d) in elements.iter().enumerate().skip(start) {
            let mut next = set.clone();
            next.push(d.clone());
            if is_nested(&next, g) {
                out.push(next.clone());
                stack.push((next, k + 1));
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DecoratedSubset {
        s.parse().unwrap()
    }

    #[test]
    fn spec_rejects_r_one() {
        assert_eq!(ArrangementSpec::new(1, 3), Err(Error::InvalidOrder(1)));
        assert!(ArrangementSpec::new(2, 0).is_ok());
    }

    #[test]
    fn enumeration_small_cases() {
        let s = ArrangementSpec::new(2, 1).unwrap();
        assert_eq!(enumerate_decorated_subsets(&s), vec![d("{1:0}"), d("{1:1}")]);
        assert_eq!(
            enumerate_decorated_subsets(&ArrangementSpec::new(2, 2).unwrap()).len(),
            8
        );
        assert_eq!(
            enumerate_decorated_subsets(&ArrangementSpec::new(3, 2).unwrap()).len(),
            15
        );
        assert!(enumerate_decorated_subsets(&ArrangementSpec::new(3, 0).unwrap()).is_empty());
    }

    #[test]
    fn enumeration_counts_exhaustive() {
        for r in 2..=4 {
            for n in 0..=3 {
                let s = ArrangementSpec::new(r, n).unwrap();
                let all = enumerate_decorated_subsets(&s);
                assert_eq!(all.len() as u128, s.decorated_subset_count());
                let distinct: BTreeSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
            }
        }
    }

    #[test]
    fn order_examples() {
        assert!(d("{1:0}").leq(&d("{1:0,2:1}")));
        assert!(!d("{1:0}").leq(&d("{1:1}")));
        assert!(!d("{1:0,2:1}").leq(&d("{1:0}")));
        assert!(DecoratedSubset::bottom().leq(&d("{2:1}")));
    }

    #[test]
    fn join_examples() {
        assert_eq!(d("{1:0}").join(&d("{2:1}")), Some(d("{1:0,2:1}")));
        assert_eq!(d("{1:0}").join(&d("{1:1}")), None);
        assert_eq!(d("{1:0}").join(&d("{1:0,2:1}")), Some(d("{1:0,2:1}")));
    }

    #[test]
    fn text_form_round_trip() {
        let c: Chain = "{3:0}<{2:1,3:0,4:2}".parse().unwrap();
        assert_eq!(c.to_string(), "{3:0}<{2:1,3:0,4:2}");
        assert_eq!(c.sets(), vec![vec![3], vec![2, 3, 4]]);
        assert!("{1:0}<{1:1}".parse::<Chain>().is_err());
        assert!("{1:0".parse::<DecoratedSubset>().is_err());
        assert!("{1:0,1:1}".parse::<DecoratedSubset>().is_err());
        assert_eq!("".parse::<Chain>().unwrap(), Chain::empty());
    }

    #[test]
    fn chain_intersect_examples() {
        let a: Chain = "{1:0,2:1}".parse().unwrap();
        let b: Chain = "{1:0,2:0}".parse().unwrap();
        // distinct rays meet only at the origin
        assert_eq!(chain_intersect(&a, &b), Chain::empty());
        assert_eq!(chain_intersect(&a, &a), a);
        let x: Chain = "{1:0}".parse().unwrap();
        let y: Chain = "{2:1}".parse().unwrap();
        assert_eq!(chain_intersect(&x, &y), Chain::empty());
        let p: Chain = "{1:0}<{1:0,2:0}".parse().unwrap();
        let q: Chain = "{2:0}<{1:0,2:0}".parse().unwrap();
        assert_eq!(chain_intersect(&p, &q), "{1:0,2:0}".parse().unwrap());
    }

    #[test]
    fn jump_type_examples() {
        let c: Chain = "{3:0}<{2:1,3:0,4:2}".parse().unwrap();
        assert_eq!(c.jump_type(), JumpType(vec![1, 2]));
        assert_eq!(Chain::empty().jump_type(), JumpType(vec![]));
        let c: Chain = "{1:0,2:1}".parse().unwrap();
        assert_eq!(jump_type(&c), JumpType(vec![2]));
    }

    #[test]
    fn from_sets_restricts_decoration() {
        let top = d("{2:1,3:0,4:2}");
        let c = Chain::from_sets(&[vec![3], vec![2, 3, 4]], &top).unwrap();
        assert_eq!(c.to_string(), "{3:0}<{2:1,3:0,4:2}");
        assert!(Chain::from_sets(&[vec![1]], &top).is_err());
    }

    #[test]
    fn chain_counts() {
        let s = ArrangementSpec::new(2, 2).unwrap();
        let maximal = enumerate_chains(&s, 2).filter(|c| c.is_maximal(&s)).count();
        assert_eq!(maximal, 8);
        let s = ArrangementSpec::new(3, 2).unwrap();
        assert_eq!(enumerate_chains(&s, 2).filter(|c| c.is_maximal(&s)).count(), 18);
        let zero: Vec<_> = enumerate_chains(&s, 0).collect();
        assert_eq!(zero, vec![Chain::empty()]);
    }

    #[test]
    fn building_set_examples() {
        let s = ArrangementSpec::new(2, 2).unwrap();
        let all: BTreeSet<_> = enumerate_decorated_subsets(&s).into_iter().collect();
        assert!(is_building_set(&all, &s));
        let singletons: BTreeSet<_> = all.iter().filter(|d| d.len() == 1).cloned().collect();
        assert!(is_building_set(&singletons, &s));
        let bad: BTreeSet<_> = [d("{1:0,2:0}")].into_iter().collect();
        assert!(!is_building_set(&bad, &s));
        assert!(BuildingSet::validated(&s, bad).is_err());
    }

    #[test]
    fn partition_and_isomorphism_criteria_agree() {
        // every subset of the (2,2) lattice: both criteria per element
        let s = ArrangementSpec::new(2, 2).unwrap();
        let all = enumerate_decorated_subsets(&s);
        for mask in 0u32..(1 << all.len()) {
            let g: BTreeSet<_> = (0..all.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| all[b].clone())
                .collect();
            for x in &all {
                let m = maximal_below(&g, x);
                assert_eq!(interval_factors(x, &m), maxima_partition(x, &m), "{x}");
            }
        }
    }

    #[test]
    fn nested_examples() {
        let s = ArrangementSpec::new(2, 2).unwrap();
        let g = BuildingSet::maximal(&s);
        assert!(is_nested(&[d("{1:0}"), d("{1:0,2:1}")], &g));
        assert!(!is_nested(&[d("{1:0}"), d("{2:0}")], &g));
        assert!(!is_nested(&[d("{1:0}"), d("{1:1}")], &g));
    }

    #[test]
    fn nested_sets_of_maximal_set_are_chains() {
        for (r, n) in [(2, 2), (3, 2)] {
            let s = ArrangementSpec::new(r, n).unwrap();
            let g = BuildingSet::maximal(&s);
            let nested: BTreeSet<Vec<DecoratedSubset>> = enumerate_nested_sets(&g).into_iter().collect();
            let chains: BTreeSet<Vec<DecoratedSubset>> = enumerate_chains(&s, n).map(|c| c.levels().to_vec()).collect();
            assert_eq!(nested, chains);
            // and directly: every subset of size <= 3 is nested iff totally ordered
            let all = enumerate_decorated_subsets(&s);
            for a in &all {
                for b in &all {
                    let set = vec![a.clone(), b.clone()];
                    assert_eq!(is_nested(&set, &g), a.comparable(b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn product_building_set_nestedness_factors() {
        // G = union of the factor building sets (all decorated singletons)
        let s = ArrangementSpec::new(2, 2).unwrap();
        let singles: Vec<_> = enumerate_decorated_subsets(&s)
            .into_iter()
            .filter(|d| d.len() == 1)
            .collect();
        let g = BuildingSet::validated(&s, singles.clone()).unwrap();
        let factor_sets: Vec<BuildingSet> = (1..=2)
            .map(|i| BuildingSet::unvalidated(&s, g.factor(i)).unwrap())
            .collect();
        for mask in 0u32..(1 << singles.len()) {
            let set: Vec<_> = (0..singles.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| singles[b].clone())
                .collect();
            let per_factor = factor_sets.iter().enumerate().all(|(k, gi)| {
                let part: Vec<_> = set.iter().filter(|d| d.entries()[0].0 == k + 1).cloned().collect();
                is_nested(&part, gi)
            });
            assert_eq!(is_nested(&set, &g), per_factor);
        }
    }
}
