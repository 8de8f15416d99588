//! Small multivariate polynomials over the rationals, just enough for the
//! symbolic section solver: the residue coordinates of a section candidate
//! with unknown coefficients are quadratics in those unknowns.

use crate::error::Error;
use crate::rat::{rat_to_string, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// A polynomial in a fixed number of variables; terms keyed by exponent
/// vectors, zero coefficients never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(exp, &Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Rat) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &(c * s));
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.add_scaled(self, s);
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree() == 0
    }

    /// Monic with respect to the largest monomial in exponent-vector order;
    /// the canonical representative of the line through this polynomial.
    pub fn normalized(&self) -> Poly {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, lead)) => self.scale(&lead.recip()),
        }
    }

    /// Coefficients `(linear, constant)` when the total degree is at most 1.
    pub fn affine_parts(&self) -> Option<(Vec<Rat>, Rat)> {
        if self.total_degree() > 1 {
            return None;
        }
        let mut linear = vec![Rat::zero(); self.nvars];
        let mut constant = Rat::zero();
        for (exp, c) in &self.terms {
            match exp.iter().position(|&e| e > 0) {
                None => constant = c.clone(),
                Some(i) => linear[i] = c.clone(),
            }
        }
        Some((linear, constant))
    }

    /// The single variable this polynomial depends on, if there is exactly
    /// one; `None` for constants or genuinely multivariate polynomials.
    pub fn single_variable(&self) -> Option<usize> {
        let mut var = None;
        for exp in self.terms.keys() {
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match var {
                    None => var = Some(i),
                    Some(v) if v != i => return None,
                    _ => {}
                }
            }
        }
        var
    }

    /// Dense coefficient list `c_0..c_d` of a polynomial in one variable.
    pub fn univariate_coeffs(&self, var: usize) -> Vec<Rat> {
        let d = self
            .terms
            .keys()
            .map(|e| e[var])
            .max()
            .unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); d + 1];
        for (exp, c) in &self.terms {
            coeffs[exp[var] as usize] = c.clone();
        }
        coeffs
    }

    /// All rational roots of a polynomial in the given single variable, by
    /// the rational root theorem on the denominator-cleared coefficients.
    pub fn rational_roots(&self, var: usize) -> Result<Vec<Rat>, Error> {
        if self.is_zero() {
            return Err(Error::InvalidParams(
                "zero polynomial has every root".into(),
            ));
        }
        let coeffs = self.univariate_coeffs(var);
        // clear denominators
        let mut lcm = BigInt::one();
        for c in &coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let low = match ints.iter().position(|c| !c.is_zero()) {
            Some(i) => i,
            None => unreachable!("nonzero polynomial"),
        };
        if low > 0 {
            roots.push(Rat::zero());
        }
        let reduced = &ints[low..];
        if reduced.len() == 1 {
            roots.sort();
            return Ok(roots); // nonzero constant after stripping x^low
        }
        let trailing = reduced[0].magnitude().clone();
        let leading = reduced[reduced.len() - 1].magnitude().clone();
        let eval_int = |x: &Rat| -> Rat {
            let mut acc = Rat::zero();
            for c in reduced.iter().rev() {
                acc = acc * x + Rat::from_integer(c.clone());
            }
            acc
        };
        for p in divisors(&BigInt::from_biguint(num_bigint::Sign::Plus, trailing))? {
            for q in divisors(&BigInt::from_biguint(
                num_bigint::Sign::Plus,
                leading.clone(),
            ))? {
                for sign in [1i64, -1] {
                    let cand = Rat::new(&p * BigInt::from(sign), q.clone());
                    if eval_int(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    pub fn to_display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (exp, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in exp.iter().enumerate() {
                if e == 1 {
                    factors.push(names[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[i], e));
                }
            }
            let coeff = rat_to_string(c);
            if factors.is_empty() {
                parts.push(coeff);
            } else if c.is_one() {
                parts.push(factors.join("*"));
            } else if *c == -Rat::one() {
                parts.push(format!("-{}", factors.join("*")));
            } else {
                parts.push(format!("{}*{}", coeff, factors.join("*")));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(exp, c)| {
                let monomial: BTreeMap<String, u32> = exp
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (names[i].clone(), e))
                    .collect();
                json!({"coeff": rat_to_string(c), "monomial": monomial})
            })
            .collect();
        json!({"display": self.to_display(names), "terms": terms})
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, Error> {
    let small: i128 = n.try_into().map_err(|_| {
        Error::Unsupported("coefficient too large for rational root scan".into())
    })?;
    let small = small.abs();
    if small == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let mut out = Vec::new();
    let mut d = 1i128;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d != small / d {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}
