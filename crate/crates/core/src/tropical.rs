//! Tropical `(r,n)`-curves in reduced coordinates.
//!
//! A curve is recorded by, for each light orbit `i`, the distance `L_i` of
//! its representative marked point from the central vertex and the spoke
//! `ℓ_i` it lies on. Its image in the fan is `Σ L_i e_i^{ℓ_i}`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::lattice::{ArrangementSpec, Chain, DecoratedSubset, Residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spoke {
    Center,
    Spoke(Residue),
}

impl fmt::Display for Spoke {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spoke::Center => f.write_str("c"),
            Spoke::Spoke(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalCurve {
    points: Vec<(Spoke, Rational)>,
}

impl TropicalCurve {
    /// `points[i-1] = (ℓ_i, L_i)`.
    pub fn new(spec: &ArrangementSpec, points: Vec<(Spoke, Rational)>) -> Result<Self> {
        if points.len() != spec.n() {
            return Err(Error::DimensionMismatch {
                expected: spec.n(),
                got: points.len(),
            });
        }
        for (k, (spoke, len)) in points.iter().enumerate() {
            let i = k + 1;
            match spoke {
                Spoke::Center if !len.is_zero() => {
                    return Err(Error::InvalidCurve(format!(
                        "point {i} is on the center at length {len}"
                    )))
                }
                Spoke::Spoke(_) if !len.is_positive() => {
                    return Err(Error::InvalidCurve(format!("point {i} is on a spoke at length {len}")))
                }
                Spoke::Spoke(l) if *l >= spec.r() => {
                    return Err(Error::InvalidCurve(format!(
                        "spoke {l} of point {i} is not below r = {}",
                        spec.r()
                    )))
                }
                _ => {}
            }
        }
        Ok(Self { points })
    }

    pub fn zero(spec: &ArrangementSpec) -> Self {
        Self {
            points: vec![(Spoke::Center, Rational::zero()); spec.n()],
        }
    }

    pub fn points(&self) -> &[(Spoke, Rational)] {
        &self.points
    }

    pub fn spoke(&self, i: usize) -> Spoke {
        self.points[i - 1].0
    }

    pub fn length(&self, i: usize) -> &Rational {
        &self.points[i - 1].1
    }

    /// All lengths multiplied by `lambda > 0`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        assert!(lambda.is_positive(), "scale must be positive");
        Self {
            points: self.points.iter().map(|(s, l)| (*s, l * lambda)).collect(),
        }
    }

    /// Text form `i:spoke:length` for points off the center, comma separated.
    pub fn to_text(&self) -> String {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| *s != Spoke::Center)
            .map(|(k, (s, l))| format!("{}:{}:{}", k + 1, s, format_rational(l)))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses `i:spoke:length,...`; spoke `c` means the center. Unlisted
    /// points sit on the center.
    pub fn parse(text: &str, spec: &ArrangementSpec) -> Result<Self> {
        let mut points = vec![None; spec.n()];
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let fields: Vec<&str> = item.split(':').collect();
            let [i, s, l] = fields[..] else {
                return Err(Error::Parse(format!("expected i:spoke:length, got {item:?}")));
            };
            let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad index in {item:?}")))?;
            if i == 0 || i > spec.n() {
                return Err(Error::Parse(format!("index {i} out of range 1..={}", spec.n())));
            }
            let spoke = match s {
                "c" | "C" => Spoke::Center,
                _ => Spoke::Spoke(s.parse().map_err(|_| Error::Parse(format!("bad spoke in {item:?}")))?),
            };
            if points[i - 1].replace((spoke, parse_rational(l)?)).is_some() {
                return Err(Error::Parse(format!("index {i} given twice")));
            }
        }
        let points = points
            .into_iter()
            .map(|p| p.unwrap_or((Spoke::Center, Rational::zero())))
            .collect();
        Self::new(spec, points)
    }

    /// Dual graph of the curve as text: the central vertex, then one ring of
    /// `r` vertices per distinct length (outermost first), each listing the
    /// orbit representatives attached to it.
    pub fn pinwheel(&self, spec: &ArrangementSpec) -> String {
        let mut out = String::new();
        let center: Vec<String> = self
            .points
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| *s == Spoke::Center)
            .map(|(k, _)| (k + 1).to_string())
            .collect();
        out.push_str(&format!(
            "central vertex (fixed by the rotation): points [{}]\n",
            center.join(",")
        ));
        let mut lengths: Vec<&Rational> = self
            .points
            .iter()
            .filter(|(s, _)| *s != Spoke::Center)
            .map(|(_, l)| l)
            .collect();
        lengths.sort_by(|a, b| b.cmp(a));
        lengths.dedup();
        for len in lengths {
            out.push_str(&format!(
                "ring at distance {} ({} vertices):",
                format_rational(len),
                spec.r()
            ));
            for (k, (s, l)) in self.points.iter().enumerate() {
                if let (Spoke::Spoke(j), true) = (s, l == len) {
                    out.push_str(&format!(" z_{}^0 on spoke {}", k + 1, j));
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for TropicalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `Σ L_i e_i^{ℓ_i}` in the `e_i^j`, `j >= 1` coordinates.
pub fn embed(c: &TropicalCurve, spec: &ArrangementSpec) -> Vec<Rational> {
    let width = spec.r() as usize - 1;
    let mut v = vec![Rational::zero(); spec.dim()];
    for (k, (spoke, len)) in c.points.iter().enumerate() {
        let block = &mut v[k * width..(k + 1) * width];
        match spoke {
            Spoke::Center => {}
            Spoke::Spoke(0) => block.iter_mut().for_each(|x| *x -= len),
            Spoke::Spoke(j) => block[*j as usize - 1] += len,
        }
    }
    v
}

/// The chain whose cone contains `embed(c)` in its relative interior.
pub fn combinatorial_type(c: &TropicalCurve, spec: &ArrangementSpec) -> Chain {
    let mut placed: Vec<(&Rational, usize, Residue)> = c
        .points
        .iter()
        .enumerate()
        .filter_map(|(k, (s, l))| match s {
            Spoke::Center => None,
            Spoke::Spoke(j) => Some((l, k + 1, spec.residue(-(*j as i64)))),
        })
        .collect();
    placed.sort_by(|a, b| b.0.cmp(a.0).then(a.1.cmp(&b.1)));
    let mut levels = Vec::new();
    let mut entries = Vec::new();
    for (k, &(len, i, a)) in placed.iter().enumerate() {
        entries.push((i, a));
        if placed.get(k + 1).is_none_or(|next| next.0 != len) {
            levels.push(DecoratedSubset::new(entries.clone()).expect("distinct indices"));
        }
    }
    Chain::new(levels).expect("levels are nested")
}

/// Inverse of [`embed`] on the support `{Σ x_i e_i^{a_i} : x_i >= 0}`.
pub fn curve_from_point(p: &[Rational], spec: &ArrangementSpec) -> Option<TropicalCurve> {
    if p.len() != spec.dim() {
        return None;
    }
    let width = spec.r() as usize - 1;
    let mut points = Vec::with_capacity(spec.n());
    for block in p.chunks(width.max(1)).take(spec.n()) {
        let nonzero: Vec<usize> = (0..width).filter(|&j| !block[j].is_zero()).collect();
        let point = match nonzero[..] {
            [] => (Spoke::Center, Rational::zero()),
            [j] if block[j].is_positive() => (Spoke::Spoke(j as Residue + 1), block[j].clone()),
            _ if nonzero.len() == width && block[0].is_negative() && block.iter().all(|x| *x == block[0]) => {
                (Spoke::Spoke(0), -block[0].clone())
            }
            _ => return None,
        };
        points.push(point);
    }
    Some(TropicalCurve { points })
}

/// Whether `p` lies in the support of the fan.
pub fn in_support(p: &[Rational], spec: &ArrangementSpec) -> bool {
    curve_from_point(p, spec).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn spec(r: u32, n: usize) -> ArrangementSpec {
        ArrangementSpec::new(r, n).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn chain(s: &str) -> Chain {
        s.parse().unwrap()
    }

    #[test]
    fn embed_examples() {
        let s = spec(3, 2);
        assert_eq!(embed(&TropicalCurve::zero(&s), &s), v(&[0, 0, 0, 0]));
        let c = TropicalCurve::parse("1:0:2,2:2:1", &s).unwrap();
        assert_eq!(embed(&c, &s), v(&[-2, -2, 0, 1]));
        let s = spec(2, 2);
        let c = TropicalCurve::parse("1:1:1,2:0:3", &s).unwrap();
        assert_eq!(embed(&c, &s), v(&[1, -3]));
    }

    #[test]
    fn type_examples() {
        let s = spec(3, 3);
        assert_eq!(combinatorial_type(&TropicalCurve::zero(&s), &s), Chain::empty());
        let c = TropicalCurve::parse("1:1:2,2:2:2,3:c:0", &s).unwrap();
        assert_eq!(combinatorial_type(&c, &s), chain("{1:2,2:1}"));
        let s = spec(2, 2);
        let c = TropicalCurve::parse("1:0:3,2:0:1", &s).unwrap();
        assert_eq!(combinatorial_type(&c, &s), chain("{1:0}<{1:0,2:0}"));
    }

    #[test]
    fn inverse_examples() {
        let s = spec(3, 2);
        assert_eq!(curve_from_point(&v(&[0, 0, 0, 0]), &s), Some(TropicalCurve::zero(&s)));
        assert_eq!(
            curve_from_point(&v(&[-2, -2, 0, 1]), &s),
            Some(TropicalCurve::parse("1:0:2,2:2:1", &s).unwrap())
        );
        assert_eq!(curve_from_point(&v(&[1, 1, 0, 0]), &s), None);
        assert_eq!(curve_from_point(&v(&[-1, -2, 0, 0]), &s), None);
        assert_eq!(curve_from_point(&v(&[1, -1, 0, 0]), &s), None);
    }

    #[test]
    fn r2_support_is_everything() {
        let s = spec(2, 2);
        for p in [[1, -3], [0, 5], [-2, 0]] {
            assert!(in_support(&v(&p), &s));
        }
    }

    #[test]
    fn parse_errors() {
        let s = spec(3, 2);
        assert!(TropicalCurve::parse("1:3:1", &s).is_err());
        assert!(TropicalCurve::parse("1:0:0", &s).is_err());
        assert!(TropicalCurve::parse("1:c:2", &s).is_err());
        assert!(TropicalCurve::parse("3:0:1", &s).is_err());
        assert!(TropicalCurve::parse("1:0:1,1:1:1", &s).is_err());
        assert!(TropicalCurve::parse("1:0", &s).is_err());
        assert!(TropicalCurve::parse("1:0:-1", &s).is_err());
        let c = TropicalCurve::parse(" 2:1:1/2 ", &s).unwrap();
        assert_eq!(c.length(2), &ratio(1, 2));
        assert_eq!(c.to_text(), "2:1:1/2");
    }

    #[test]
    fn pinwheel_lists_rings() {
        let s = spec(3, 3);
        let c = TropicalCurve::parse("1:1:2,2:2:2,3:0:1", &s).unwrap();
        let text = c.pinwheel(&s);
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("ring at distance 2 (3 vertices): z_1^0 on spoke 1 z_2^0 on spoke 2"));
    }
}
