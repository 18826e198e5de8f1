//! Probability vectors, Rényi quantities and finite patterns.

use std::fmt;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Element, GroupCtx, Shape};

/// Dense symbol index.
pub type Symbol = u8;

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 256;

/// A distribution on the alphabet `{0, .., q-1}` with at least two symbols of
/// positive mass.
///
/// Vectors built from rationals (including decimal strings, which are parsed
/// exactly) carry an exact copy used by the rational-mode probability code.
#[derive(Clone, Debug)]
pub struct ProbVector {
    weights: Vec<f64>,
    exact: Option<Vec<BigRational>>,
    sampler: WeightedIndex<f64>,
}

impl PartialEq for ProbVector {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && self.exact == other.exact
    }
}

impl ProbVector {
    pub fn uniform(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidProbability("empty alphabet".into()));
        }
        Self::from_rationals(vec![BigRational::new(BigInt::one(), BigInt::from(q)); q])
    }

    pub fn from_rationals(p: Vec<BigRational>) -> Result<Self> {
        if p.iter().any(|x| x.is_negative()) {
            return Err(Error::InvalidProbability("negative weight".into()));
        }
        let total: BigRational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidProbability(format!("weights sum to {total}, not 1")));
        }
        let weights = p.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        Self::build(weights, Some(p))
    }

    pub fn from_f64(p: Vec<f64>) -> Result<Self> {
        if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidProbability("weights must be finite and nonnegative".into()));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidProbability(format!("weights sum to {total}, not 1")));
        }
        Self::build(p, None)
    }

    /// Parses weights written as fractions (`"1/3"`) or decimals (`"0.25"`).
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let p = items.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::from_rationals(p)
    }

    fn build(weights: Vec<f64>, exact: Option<Vec<BigRational>>) -> Result<Self> {
        if weights.len() > MAX_ALPHABET {
            return Err(Error::InvalidProbability(format!("alphabet larger than {MAX_ALPHABET}")));
        }
        if weights.iter().filter(|&&x| x > 0.0).count() < 2 {
            return Err(Error::InvalidProbability("fewer than two symbols have positive mass".into()));
        }
        let sampler = WeightedIndex::new(&weights).map_err(|e| Error::InvalidProbability(e.to_string()))?;
        Ok(Self { weights, exact, sampler })
    }

    pub fn alphabet(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    /// `pi_i(p) = sum_a p_a^i`, the probability that `i` independent draws agree.
    pub fn pi(&self, i: u32) -> Result<f64> {
        if i == 0 {
            return Err(Error::InvalidArgument("pi_i needs i >= 1".into()));
        }
        Ok(self.weights.iter().map(|w| w.powi(i as i32)).sum())
    }

    pub fn pi_exact(&self, i: u32) -> Result<BigRational> {
        if i == 0 {
            return Err(Error::InvalidArgument("pi_i needs i >= 1".into()));
        }
        let exact = self.exact.as_ref().ok_or_else(|| Error::InvalidProbability("no exact weights".into()))?;
        Ok(exact.iter().map(|w| num::pow(w.clone(), i as usize)).sum())
    }

    pub fn pi2(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum()
    }

    /// Second-order Rényi entropy in nats.
    pub fn renyi2(&self) -> f64 {
        -self.pi2().ln()
    }

    /// `2 / H_2(p)`.
    pub fn lambda_c(&self) -> f64 {
        2.0 / self.renyi2()
    }

    pub fn sample_symbol<R: Rng + ?Sized>(&self, rng: &mut R) -> Symbol {
        self.sampler.sample(rng) as Symbol
    }
}

pub fn pi_i(p: &ProbVector, i: u32) -> Result<f64> {
    p.pi(i)
}

pub fn renyi2(p: &ProbVector) -> f64 {
    p.renyi2()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidProbability(format!("cannot parse weight {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let int = if int.is_empty() { "0" } else { int };
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(BigRational::new(digits, num::pow(BigInt::from(10), frac.len())))
}

/// A map from a finite shape to symbols, stored in the shape's canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    shape: Shape,
    symbols: Vec<Symbol>,
}

impl Pattern {
    pub fn new(shape: Shape, symbols: Vec<Symbol>) -> Result<Self> {
        if shape.len() != symbols.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} symbols for a shape of {} cells",
                symbols.len(),
                shape.len()
            )));
        }
        Ok(Self { shape, symbols })
    }

    /// Builds a pattern from a digit string such as `"0110"`.
    pub fn from_digits(shape: Shape, digits: &str) -> Result<Self> {
        let symbols = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as Symbol))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidPattern(format!("not a digit string: {digits:?}")))?;
        Self::new(shape, symbols)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn get(&self, h: &Element) -> Option<Symbol> {
        self.shape.index_of(h).map(|i| self.symbols[i])
    }

    pub fn check_alphabet(&self, q: usize) -> Result<()> {
        match self.symbols.iter().find(|&&s| s as usize >= q) {
            Some(s) => Err(Error::InvalidPattern(format!("symbol {s} outside alphabet of size {q}"))),
            None => Ok(()),
        }
    }

    /// `sigma^g(w)`, living on `g^{-1} F`, with `sigma^g(w)(h) = w(gh)`.
    pub fn translate(&self, ctx: &GroupCtx, g: &Element) -> Result<Pattern> {
        let gi = ctx.inv(g)?;
        let mut cells = self
            .shape
            .iter()
            .zip(&self.symbols)
            .map(|(x, &s)| Ok((ctx.mul(&gi, x)?, s)))
            .collect::<Result<Vec<_>>>()?;
        cells.sort();
        let symbols = cells.iter().map(|c| c.1).collect();
        Ok(Pattern { shape: Shape::from_elements(cells.into_iter().map(|c| c.0)), symbols })
    }

    /// `w|_E`.
    pub fn restrict(&self, e: &Shape) -> Result<Pattern> {
        let symbols = e
            .iter()
            .map(|h| self.get(h))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::ShapeMismatch("restriction to a set outside the pattern's shape".into()))?;
        Ok(Pattern { shape: e.clone(), symbols })
    }

    /// Draws every cell of `shape` independently from `p`.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, shape: &Shape, p: &ProbVector) -> Pattern {
        let symbols = (0..shape.len()).map(|_| p.sample_symbol(rng)).collect();
        Pattern { shape: shape.clone(), symbols }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.iter().all(|&s| s < 10) {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Parses the pattern file format: the alphabet size on the first line, then
/// one `element : symbol` line per cell. Blank lines and `#` comments are
/// skipped.
pub fn parse_pattern_text(ctx: &GroupCtx, text: &str) -> Result<(usize, Pattern)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let q: usize = lines
        .next()
        .ok_or_else(|| Error::InvalidPattern("empty pattern file".into()))?
        .parse()
        .map_err(|_| Error::InvalidPattern("first line must be the alphabet size".into()))?;
    let mut cells = Vec::new();
    for line in lines {
        let (coords, sym) = line
            .rsplit_once(':')
            .ok_or_else(|| Error::InvalidPattern(format!("expected `element : symbol`, got {line:?}")))?;
        let sym: Symbol =
            sym.trim().parse().map_err(|_| Error::InvalidPattern(format!("bad symbol in {line:?}")))?;
        cells.push((ctx.parse(coords)?, sym));
    }
    cells.sort();
    if cells.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InvalidPattern("cell listed twice".into()));
    }
    let symbols = cells.iter().map(|c| c.1).collect();
    let w = Pattern::new(Shape::from_elements(cells.into_iter().map(|c| c.0)), symbols)?;
    w.check_alphabet(q)?;
    Ok((q, w))
}

pub fn format_pattern_text(ctx: &GroupCtx, q: usize, w: &Pattern) -> String {
    let mut out = format!("{q}\n");
    for (h, s) in w.shape().iter().zip(w.symbols()) {
        out.push_str(&format!("{} : {s}\n", ctx.format(h)));
    }
    out
}
