//! Sparse multivariate polynomials in named variables.
//!
//! Every polynomial carries its own variable context (sorted names).
//! Binary operations lift both sides to the union context, so callers never
//! manage a global registry.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::Scalar;

pub type Exponents = Vec<u16>;

#[derive(Clone, PartialEq)]
pub struct MultiPoly<S> {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, S>,
}

fn context(names: impl IntoIterator<Item = String>) -> Arc<[String]> {
    let set: BTreeSet<String> = names.into_iter().collect();
    set.into_iter().collect::<Vec<_>>().into()
}

/// Below this many term products multiplication stays on one thread.
const PAR_THRESHOLD: usize = 1 << 14;

impl<S: Scalar> MultiPoly<S> {
    pub fn zero() -> Self {
        MultiPoly { vars: Arc::from(Vec::<String>::new()), terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero();
        if !c.is_negligible() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn var(name: &str) -> Self {
        MultiPoly { vars: context([name.to_string()]), terms: BTreeMap::from([(vec![1], S::one())]) }
    }

    /// Builds from `(monomial, coefficient)` pairs where a monomial lists
    /// `(variable, exponent)`.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (Vec<(&'a str, u16)>, S)>) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let vars = context(terms.iter().flat_map(|(m, _)| m.iter().map(|(v, _)| v.to_string())));
        let mut p = MultiPoly { vars: vars.clone(), terms: BTreeMap::new() };
        for (m, c) in terms {
            let mut e = vec![0u16; vars.len()];
            for (v, k) in m {
                e[vars.binary_search_by(|x| x.as_str().cmp(v)).unwrap()] += k;
            }
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &S)> {
        self.terms.iter()
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .binary_search_by(|x| x.as_str().cmp(name))
            .map_err(|_| Error::Domain(format!("unknown variable {name}")))
    }

    fn add_term(&mut self, e: Exponents, c: S) {
        if c.is_negligible() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_negligible() {
                    o.remove();
                }
            }
        }
    }

    /// Re-expresses the polynomial over a larger sorted context.
    fn lift(&self, vars: &Arc<[String]>) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || self.vars[..] == vars[..] {
            return MultiPoly { vars: vars.clone(), terms: self.terms.clone() };
        }
        let map: Vec<usize> = self.vars.iter().map(|v| vars.binary_search(v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0u16; vars.len()];
                for (i, &k) in e.iter().enumerate() {
                    f[map[i]] = k;
                }
                (f, c.clone())
            })
            .collect();
        MultiPoly { vars: vars.clone(), terms }
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        if self.vars[..] == other.vars[..] {
            return (self.clone(), other.lift(&self.vars));
        }
        let vars = context(self.vars.iter().chain(other.vars.iter()).cloned());
        (self.lift(&vars), other.lift(&vars))
    }

    /// Extends the context with extra variable names (no effect on value).
    pub fn with_vars<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Self {
        let vars = context(self.vars.iter().cloned().chain(names.into_iter().map(String::from)));
        self.lift(&vars)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.unify(other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_negligible() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        let bt: Vec<(&Exponents, &S)> = b.terms.iter().collect();
        let product = |chunk: &[(&Exponents, &S)]| {
            let mut acc: HashMap<Exponents, S> = HashMap::new();
            for (ea, ca) in chunk {
                for (eb, cb) in &bt {
                    let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                    let c = (*ca).clone() * *cb;
                    match acc.get_mut(&e) {
                        Some(x) => *x += c,
                        None => {
                            acc.insert(e, c);
                        }
                    }
                }
            }
            acc
        };
        let at: Vec<(&Exponents, &S)> = a.terms.iter().collect();
        let parts: Vec<HashMap<Exponents, S>> = if at.len() * bt.len() < PAR_THRESHOLD {
            vec![product(&at)]
        } else {
            let chunk = (at.len() / (4 * rayon::current_num_threads())).max(1);
            at.par_chunks(chunk).map(product).collect()
        };
        // Exact addition is associative, so merging partial sums in chunk
        // order gives the same result regardless of scheduling.
        let mut out = MultiPoly { vars: a.vars.clone(), terms: BTreeMap::new() };
        for part in parts {
            for (e, c) in part {
                out.add_term(e, c);
            }
        }
        out
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one().lift(&self.vars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces each named variable by a polynomial.
    pub fn substitute(&self, map: &BTreeMap<String, MultiPoly<S>>) -> Result<Self> {
        for name in map.keys() {
            self.var_index(name)?;
        }
        let idx: Vec<Option<&MultiPoly<S>>> = self.vars.iter().map(|v| map.get(v)).collect();
        let keep: Vec<String> = self.vars.iter().filter(|v| !map.contains_key(*v)).cloned().collect();
        let mut all_vars: Vec<String> = keep.clone();
        for p in map.values() {
            all_vars.extend(p.vars.iter().cloned());
        }
        let vars = context(all_vars);
        let mut out = MultiPoly { vars: vars.clone(), terms: BTreeMap::new() };
        let mut pow_cache: HashMap<(usize, u16), MultiPoly<S>> = HashMap::new();
        for (e, c) in &self.terms {
            let mut base = vec![0u16; vars.len()];
            let mut factor = MultiPoly::constant(c.clone()).lift(&vars);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match idx[i] {
                    None => base[vars.binary_search(&self.vars[i]).unwrap()] = k,
                    Some(p) => {
                        let pk = pow_cache.entry((i, k)).or_insert_with(|| p.pow(k as u32).lift(&vars));
                        factor = factor.mul(pk);
                    }
                }
            }
            for (f, x) in factor.terms {
                let m: Exponents = f.iter().zip(&base).map(|(a, b)| a + b).collect();
                out.add_term(m, x);
            }
        }
        Ok(out)
    }

    /// Coefficient of a monomial in a chosen subset of variables; the result
    /// is a polynomial in the remaining variables.
    pub fn coeff_of(&self, monomial: &[(&str, u16)]) -> Result<Self> {
        let mut want: Vec<(usize, u16)> = Vec::new();
        for (v, k) in monomial {
            want.push((self.var_index(v)?, *k));
        }
        let mut out = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if want.iter().all(|&(i, k)| e[i] == k) {
                let mut f = e.clone();
                for &(i, _) in &want {
                    f[i] = 0;
                }
                out.add_term(f, c.clone());
            }
        }
        Ok(out)
    }

    pub fn degree_in(&self, var: &str) -> Result<Option<u16>> {
        let i = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[i]).max())
    }

    /// Coefficient of `var^degree`, required to be the top power of `var`.
    pub fn leading_coeff_in(&self, var: &str, degree: u16) -> Result<Self> {
        if let Some(top) = self.degree_in(var)? {
            if top > degree {
                return Err(Error::Domain(format!("{var} appears with degree {top} > {degree}")));
            }
        }
        self.coeff_of(&[(var, degree)])
    }

    /// Total degree of every term restricted to `vars` equals `degree`.
    /// Names absent from the context contribute degree zero.
    pub fn is_homogeneous(&self, vars: &[&str], degree: u32) -> bool {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.var_index(v).ok()).collect();
        self.terms.keys().all(|e| idx.iter().map(|&i| e[i] as u32).sum::<u32>() == degree)
    }

    /// Every term contains `var` to a positive power.
    pub fn divisible_by(&self, var: &str) -> bool {
        match self.var_index(var) {
            Ok(i) => self.terms.keys().all(|e| e[i] > 0),
            Err(_) => self.is_zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&k| k as u32).sum()).max()
    }

    pub fn evaluate(&self, values: &BTreeMap<String, S>) -> Result<S> {
        let vals: Vec<S> = self
            .vars
            .iter()
            .map(|v| values.get(v).cloned().ok_or_else(|| Error::Domain(format!("no value for {v}"))))
            .collect::<Result<_>>()?;
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Drops variables that occur in no term.
    pub fn trimmed(&self) -> Self {
        let used: Vec<usize> = (0..self.vars.len()).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect();
        let vars: Arc<[String]> = used.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>().into();
        let terms = self.terms.iter().map(|(e, c)| (used.iter().map(|&i| e[i]).collect(), c.clone())).collect();
        MultiPoly { vars, terms }
    }

    /// Structural equality up to the variable context.
    pub fn same_as(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// `[{"monomial": {var: exp}, "coeff": "p/q"}, ...]` in term order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let mono: serde_json::Map<String, Value> = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (self.vars[i].clone(), json!(k)))
                        .collect();
                    json!({"monomial": mono, "coeff": c.to_repr()})
                })
                .collect(),
        )
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", c.to_repr())?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*{}", self.vars[i])?,
                    _ => write!(f, "*{}^{}", self.vars[i], k)?,
                }
            }
        }
        Ok(())
    }
}
