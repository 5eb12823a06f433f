use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

use crate::scalar::Scalar;

/// Exponent vector of a monomial `x^a y^b`: the first `n` entries are the
/// (signed) `x` exponents, the last `n` the (nonnegative) `y` exponents.
pub type Exponent = SmallVec<[i32; 8]>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("division is not exact in the Laurent ring")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Element of `K[x_1^±, ..., x_n^±, y_1, ..., y_n]` with coefficients in `T`.
///
/// Terms are kept sorted by exponent in increasing lexicographic order, with
/// no zero coefficients, so equal polynomials have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<T: Scalar> {
    n: usize,
    terms: Vec<(Exponent, T)>,
}

fn add_exp(a: &Exponent, b: &Exponent) -> Exponent {
    a.iter().zip(b).map(|(u, v)| u + v).collect()
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, smallvec![0; 2 * n], T::one())
    }

    pub fn monomial(n: usize, exp: Exponent, coeff: T) -> Self {
        assert_eq!(exp.len(), 2 * n, "exponent length");
        let terms = if coeff.is_zero() { Vec::new() } else { vec![(exp, coeff)] };
        LaurentPoly { n, terms }
    }

    /// The cluster variable `x_i` (0-based).
    pub fn x(n: usize, i: usize) -> Self {
        let mut e: Exponent = smallvec![0; 2 * n];
        e[i] = 1;
        Self::monomial(n, e, T::one())
    }

    /// The coefficient `y_j` (0-based).
    pub fn y(n: usize, j: usize) -> Self {
        let mut e: Exponent = smallvec![0; 2 * n];
        e[n + j] = 1;
        Self::monomial(n, e, T::one())
    }

    fn from_map(n: usize, map: HashMap<Exponent, T>) -> Self {
        let mut terms: Vec<(Exponent, T)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { n, terms }
    }

    /// Builds from `(coefficient, x exponents, y exponents)` triples, merging like terms.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (T, Vec<i32>, Vec<u32>)>,
    ) -> Result<Self, LaurentError> {
        let mut map: HashMap<Exponent, T> = HashMap::new();
        for (c, x, y) in terms {
            if x.len() != n {
                return Err(LaurentError::RankMismatch(x.len(), n));
            }
            if y.len() != n {
                return Err(LaurentError::RankMismatch(y.len(), n));
            }
            let e: Exponent = x.iter().copied().chain(y.iter().map(|&v| v as i32)).collect();
            accumulate(&mut map, e, c);
        }
        Ok(Self::from_map(n, map))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &T)> {
        self.terms.iter().map(|(e, c)| (e, c))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &T| if negate { -c.clone() } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0.clone(), sign(&b[j].1)));
                j += 1;
            } else {
                let c = a[i].1.clone() + sign(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly { n: self.n, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: HashMap<Exponent, T> = HashMap::with_capacity((self.terms.len() * other.terms.len()).min(1 << 16));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                accumulate(&mut map, add_exp(a, b), ca.clone() * cb.clone());
            }
        }
        Self::from_map(self.n, map)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Coordinatewise minimum and maximum of the exponent vectors.
    fn exponent_box(&self) -> (Vec<i32>, Vec<i32>) {
        let mut lo = vec![i32::MAX; 2 * self.n];
        let mut hi = vec![i32::MIN; 2 * self.n];
        for (e, _) in &self.terms {
            for (i, &v) in e.iter().enumerate() {
                lo[i] = lo[i].min(v);
                hi[i] = hi[i].max(v);
            }
        }
        (lo, hi)
    }

    /// Exact quotient `self / d`.
    ///
    /// Heap-based long division producing quotient terms in decreasing
    /// lexicographic order. Exponents of an exact quotient lie in the box
    /// `[min(N) - min(D), max(N) - max(D)]`, so a quotient term outside the box
    /// (or a coefficient that does not divide) proves the division is not exact.
    pub fn div_exact(&self, d: &Self) -> Result<Self, LaurentError> {
        if self.n != d.n {
            return Err(LaurentError::RankMismatch(self.n, d.n));
        }
        if d.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.n));
        }
        let (nlo, nhi) = self.exponent_box();
        let (dlo, dhi) = d.exponent_box();
        let dt: Vec<&(Exponent, T)> = d.terms.iter().rev().collect();
        let (dlead, dc) = (&dt[0].0, &dt[0].1);
        let nt: Vec<&(Exponent, T)> = self.terms.iter().rev().collect();
        let mut q: Vec<(Exponent, T)> = Vec::new();
        // pending products q[i] * dt[j], keyed by exponent
        let mut heap: BinaryHeap<(Exponent, Reverse<usize>, usize)> = BinaryHeap::new();
        let mut p = 0;
        loop {
            let top = match (nt.get(p), heap.peek()) {
                (None, None) => break,
                (Some(t), None) => t.0.clone(),
                (None, Some(h)) => h.0.clone(),
                (Some(t), Some(h)) => t.0.clone().max(h.0.clone()),
            };
            let mut c = T::zero();
            if nt.get(p).is_some_and(|t| t.0 == top) {
                c = nt[p].1.clone();
                p += 1;
            }
            while heap.peek().is_some_and(|h| h.0 == top) {
                let (_, Reverse(i), j) = heap.pop().unwrap();
                c = c - q[i].1.clone() * dt[j].1.clone();
                if j + 1 < dt.len() {
                    heap.push((add_exp(&q[i].0, &dt[j + 1].0), Reverse(i), j + 1));
                }
            }
            if c.is_zero() {
                continue;
            }
            let e: Exponent = top.iter().zip(dlead).map(|(a, b)| a - b).collect();
            let inside = (0..e.len()).all(|i| e[i] >= nlo[i] - dlo[i] && e[i] <= nhi[i] - dhi[i]);
            if !inside || e[self.n..].iter().any(|&v| v < 0) {
                return Err(LaurentError::InexactDivision);
            }
            let qc = c.checked_exact_div(dc).ok_or(LaurentError::InexactDivision)?;
            if dt.len() > 1 {
                heap.push((add_exp(&e, &dt[1].0), Reverse(q.len()), 1));
            }
            q.push((e, qc));
        }
        q.reverse();
        Ok(LaurentPoly { n: self.n, terms: q })
    }

    /// Substitutes `x_i -> 1` for all `i`, leaving a polynomial in `y`.
    pub fn specialize_x_to_one(&self) -> Self {
        let mut map = HashMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[..self.n].iter_mut().for_each(|v| *v = 0);
            accumulate(&mut map, f, c.clone());
        }
        Self::from_map(self.n, map)
    }

    /// Writes `self = F / x^d` with `d >= 0` minimal.
    pub fn as_fraction(&self) -> Fraction<T> {
        let mut d = vec![0u32; self.n];
        for (e, _) in &self.terms {
            for i in 0..self.n {
                if e[i] < 0 {
                    d[i] = d[i].max((-e[i]) as u32);
                }
            }
        }
        let shift: Exponent = d.iter().map(|&v| v as i32).chain(std::iter::repeat_n(0, self.n)).collect();
        let terms = self.terms.iter().map(|(e, c)| (add_exp(e, &shift), c.clone())).collect();
        let num = LaurentPoly { n: self.n, terms };
        Fraction { numerator: num, denominator: d }
    }

    pub fn all_coefficients_positive_integers(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.to_integer().is_some_and(|v| v > num_bigint::BigInt::zero()))
    }

    pub fn check_laurent(&self) -> bool {
        check_laurent(&self.as_fraction())
    }

    pub fn to_json_value(&self) -> LaurentJson {
        LaurentJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    coeff: c.to_string(),
                    x: e[..self.n].to_vec(),
                    y: e[self.n..].iter().map(|&v| v as u32).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json_value(j: &LaurentJson) -> Result<Self, LaurentError> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let c = T::parse(&t.coeff).ok_or_else(|| LaurentError::Parse(format!("coefficient {:?}", t.coeff)))?;
                Ok((c, t.x.clone(), t.y.clone()))
            })
            .collect::<Result<Vec<_>, LaurentError>>()?;
        Self::from_terms(j.n, terms)
    }
}

fn accumulate<T: Scalar>(map: &mut HashMap<Exponent, T>, e: Exponent, c: T) {
    match map.get_mut(&e) {
        Some(v) => *v = v.clone() + c,
        None => {
            map.insert(e, c);
        }
    }
}

/// `numerator / x^denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction<T: Scalar> {
    pub numerator: LaurentPoly<T>,
    pub denominator: Vec<u32>,
}

/// `true` iff `f` is a polynomial in `x` and `y` over a monomial in `x`, in
/// lowest terms: no exponent of the numerator is negative and no `x_i` with a
/// positive denominator power divides every numerator term.
pub fn check_laurent<T: Scalar>(f: &Fraction<T>) -> bool {
    let n = f.numerator.n;
    if f.denominator.len() != n || f.numerator.is_zero() {
        return false;
    }
    if f.numerator.terms.iter().any(|(e, _)| e.iter().any(|&v| v < 0)) {
        return false;
    }
    (0..n).all(|i| f.denominator[i] == 0 || f.numerator.terms.iter().any(|(e, _)| e[i] == 0))
}

/// Serialized form of a Laurent polynomial.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LaurentJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub x: Vec<i32>,
    pub y: Vec<u32>,
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[i32], n: usize) -> Result<bool, fmt::Error> {
    let mut first = true;
    for (i, &v) in e.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let name = if i < n { format!("x{}", i + 1) } else { format!("y{}", i - n + 1) };
        if v == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{v}")?;
        }
    }
    Ok(!first)
}

/// Canonical text: `(F)/x1^a*x2^b` with the terms of `F` in increasing lexicographic order.
impl<T: Scalar> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let frac = self.as_fraction();
        let has_den = frac.denominator.iter().any(|&d| d > 0);
        let wrap = has_den && frac.numerator.len() > 1;
        if wrap {
            write!(f, "(")?;
        }
        for (idx, (e, c)) in frac.numerator.terms.iter().enumerate() {
            let neg = *c < T::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let unit = abs == T::one();
            if !unit {
                write!(f, "{abs}")?;
            }
            if e.iter().all(|&v| v == 0) {
                if unit {
                    write!(f, "1")?;
                }
                continue;
            }
            if !unit {
                write!(f, "*")?;
            }
            write_monomial(f, e, self.n)?;
        }
        if wrap {
            write!(f, ")")?;
        }
        if has_den {
            let d: Vec<i32> =
                frac.denominator.iter().map(|&v| v as i32).chain(std::iter::repeat_n(0, self.n)).collect();
            let product = d.iter().filter(|&&v| v > 0).count() > 1;
            write!(f, "{}", if product { "/(" } else { "/" })?;
            write_monomial(f, &d, self.n)?;
            if product {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}
