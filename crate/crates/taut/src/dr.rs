//! Formal double ramification cycles on the open moduli space.
//!
//! A symbol `DR_g(prod m_{a_i} prod m~_{b_j})` is stored with its forgotten
//! multiplicities sorted and with a canonical global sign, which the class
//! does not see. Degree rules and the zero-forgotten convention turn some raw
//! symbols into zero; rewrites that hit the latter are counted in an
//! [`Audit`] so they can be reviewed.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{factorial, rat, rat_int, rat_str};
use crate::error::{domain, Result};
use crate::{Rat, TautVector};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DrSymbol {
    pub g: u32,
    #[serde(rename = "m")]
    pub marked: Vec<i64>,
    #[serde(rename = "t")]
    pub forgotten: Vec<i64>,
}

impl fmt::Debug for DrSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DR{}({:?}; {:?})", self.g, self.marked, self.forgotten)
    }
}

impl DrSymbol {
    pub fn k(&self) -> usize {
        self.forgotten.len()
    }

    pub fn n(&self) -> usize {
        self.marked.len()
    }

    /// Cohomological degree `g - k`.
    pub fn degree(&self) -> i64 {
        self.g as i64 - self.k() as i64
    }

    pub fn to_json(&self) -> Value {
        json!({"g": self.g, "m": self.marked, "t": self.forgotten})
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ZeroReason {
    /// No forgotten points: a degree-g class, which vanishes on the open part.
    NoForgotten,
    /// More than g forgotten points.
    TooManyForgotten,
    /// A forgotten point of multiplicity zero.
    ZeroForgotten,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Symbol(DrSymbol),
    Zero(ZeroReason),
}

impl Normalized {
    pub fn symbol(self) -> Option<DrSymbol> {
        match self {
            Normalized::Symbol(s) => Some(s),
            Normalized::Zero(_) => None,
        }
    }
}

/// Canonical form of a raw symbol.
pub fn normalize(g: u32, marked: &[i64], forgotten: &[i64]) -> Result<Normalized> {
    let total: i64 = marked.iter().chain(forgotten).sum();
    if total != 0 {
        return domain(format!("multiplicities {marked:?}; {forgotten:?} sum to {total}"));
    }
    // checked first: the psi_1 rule can absorb the last forgotten point and
    // leave an all-zero marked list, which is still a vanishing degree-g class
    let k = forgotten.len();
    if k == 0 {
        return Ok(Normalized::Zero(ZeroReason::NoForgotten));
    }
    if marked.iter().chain(forgotten).all(|&x| x == 0) {
        return domain("all multiplicities are zero");
    }
    if k > g as usize {
        return Ok(Normalized::Zero(ZeroReason::TooManyForgotten));
    }
    if forgotten.contains(&0) {
        return Ok(Normalized::Zero(ZeroReason::ZeroForgotten));
    }
    let mut f = forgotten.to_vec();
    f.sort_unstable();
    let nm: Vec<i64> = marked.iter().map(|x| -x).collect();
    let mut nf: Vec<i64> = forgotten.iter().map(|x| -x).collect();
    nf.sort_unstable();
    let pos = marked.iter().chain(&f);
    let neg = nm.iter().chain(&nf);
    if neg.cmp(pos) == std::cmp::Ordering::Greater {
        Ok(Normalized::Symbol(DrSymbol { g, marked: nm, forgotten: nf }))
    } else {
        Ok(Normalized::Symbol(DrSymbol { g, marked: marked.to_vec(), forgotten: f }))
    }
}

/// Record of rewrite outputs that were dropped by the zero-forgotten rule.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub zero_forgotten: Vec<(Vec<i64>, Vec<i64>)>,
}

impl Audit {
    pub fn merge(&mut self, other: Audit) {
        self.zero_forgotten.extend(other.zero_forgotten);
    }
}

/// Accumulates raw terms into a normalized vector.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    pub g: u32,
    pub vector: TautVector,
    pub audit: Audit,
}

impl Builder {
    pub fn new(g: u32) -> Self {
        Builder { g, vector: TautVector::new(), audit: Audit::default() }
    }

    pub fn add(&mut self, marked: &[i64], forgotten: &[i64], c: Rat) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match normalize(self.g, marked, forgotten)? {
            Normalized::Symbol(s) => self.vector.add_term(s, c),
            Normalized::Zero(ZeroReason::ZeroForgotten) => {
                self.audit.zero_forgotten.push((marked.to_vec(), forgotten.to_vec()));
            }
            Normalized::Zero(_) => {}
        }
        Ok(())
    }

    pub fn add_vec(&mut self, v: &TautVector, c: &Rat) {
        self.vector.add_scaled(v, c);
    }

    pub fn finish(self) -> TautVector {
        self.vector
    }
}

/// Basis vector of a raw symbol (zero if it normalizes to zero).
pub fn dr(g: u32, marked: &[i64], forgotten: &[i64]) -> Result<TautVector> {
    let mut b = Builder::new(g);
    b.add(marked, forgotten, Rat::one())?;
    Ok(b.finish())
}

/// Degree-zero evaluation `g! prod b_j^2` of a symbol with `k = g`.
pub fn top_value(s: &DrSymbol) -> Result<Rat> {
    top_value_raw(s.g, &s.forgotten)
}

fn top_value_raw(g: u32, forgotten: &[i64]) -> Result<Rat> {
    if forgotten.len() != g as usize {
        return domain(format!("top value needs k = g = {g}, got k = {}", forgotten.len()));
    }
    let mut v = Rat::from_integer(factorial(g as u64));
    for &b in forgotten {
        v *= rat_int(b * b);
    }
    Ok(v)
}

/// The raw terms of the psi_1 product formula, before normalization.
fn psi1_terms(g: u32, a: &[i64], b: &[i64]) -> Vec<(Vec<i64>, Vec<i64>, Rat)> {
    let (n, k) = (a.len() as i64, b.len() as i64);
    let r = 2 * g as i64 - 2 + n + k;
    let ra1 = r * a[0];
    let without = |skip: &[usize]| -> Vec<i64> {
        b.iter().enumerate().filter(|(l, _)| !skip.contains(l)).map(|(_, &x)| x).collect()
    };
    let mut out = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let mut f = vec![b[i] + b[j]];
            f.extend(without(&[i, j]));
            out.push((a.to_vec(), f, rat(-(b[i] + b[j]), ra1)));
        }
    }
    for i in 1..a.len() {
        for (j, &bj) in b.iter().enumerate() {
            let mut m = a.to_vec();
            m[i] += bj;
            out.push((m, without(&[j]), rat(-(a[i] + bj), ra1)));
        }
    }
    for (j, &bj) in b.iter().enumerate() {
        let mut m = a.to_vec();
        m[0] += bj;
        out.push((m, without(&[j]), rat(-a[0] + (r - 1) * bj, ra1)));
    }
    out
}

fn check_psi1_input(a: &[i64], b: &[i64]) -> Result<()> {
    if a.is_empty() {
        return domain("psi_1 product needs at least one marked point");
    }
    if b.is_empty() {
        return domain("psi_1 product needs k >= 1");
    }
    if a.iter().chain(b).any(|&x| x == 0) {
        return domain(format!("zero multiplicity in {a:?}; {b:?}"));
    }
    if a.iter().chain(b).sum::<i64>() != 0 {
        return domain("multiplicities must sum to zero");
    }
    Ok(())
}

/// `psi_1 * DR_g(prod m_a prod m~_b)` expanded by the product formula, with
/// the audit of dropped zero-forgotten terms. `k = g + 1` gives zero.
pub fn psi1_mul_raw_audit(g: u32, a: &[i64], b: &[i64]) -> Result<(TautVector, Audit)> {
    check_psi1_input(a, b)?;
    if b.len() > g as usize + 1 {
        return domain(format!("k = {} exceeds g + 1", b.len()));
    }
    let mut out = Builder::new(g);
    if b.len() == g as usize + 1 {
        return Ok((out.vector, out.audit));
    }
    for (m, f, c) in psi1_terms(g, a, b) {
        out.add(&m, &f, c)?;
    }
    Ok((out.vector, out.audit))
}

pub fn psi1_mul_raw(g: u32, a: &[i64], b: &[i64]) -> Result<TautVector> {
    Ok(psi1_mul_raw_audit(g, a, b)?.0)
}

pub fn psi1_mul(s: &DrSymbol) -> Result<TautVector> {
    psi1_mul_raw(s.g, &s.marked, &s.forgotten)
}

/// Linear extension of [`psi1_mul`].
pub fn psi1_vec(v: &TautVector) -> Result<TautVector> {
    let mut out = TautVector::new();
    for (s, c) in v.iter() {
        out.add_scaled(&psi1_mul(s)?, c);
    }
    Ok(out)
}

/// For `k = g + 1`, substitutes the top value into every term of the
/// product formula and checks that the sum vanishes.
pub fn intpsi_top_vanishing(g: u32, a: &[i64], b: &[i64]) -> Result<bool> {
    check_psi1_input(a, b)?;
    if b.len() != g as usize + 1 {
        return domain(format!("needs k = g + 1 = {}, got {}", g + 1, b.len()));
    }
    let mut total = Rat::zero();
    for (_, f, c) in psi1_terms(g, a, b) {
        total += c * top_value_raw(g, &f)?;
    }
    Ok(total.is_zero())
}

/// Running point combination `sum_i b_i DR_g(m_{b_i} prod_{j != i} m~_{b_j} prod m_a)`
/// with the rotating point inserted at marked position `pos`.
pub fn running_point_at(g: u32, b: &[i64], a: &[i64], pos: usize) -> Result<TautVector> {
    if b.is_empty() || b.len() > g as usize {
        return domain(format!("running point needs 1 <= k <= g, got k = {}", b.len()));
    }
    running_point_formal(g, b, a, pos)
}

/// [`running_point_at`] without the upper bound on `k`. The socle arguments
/// use the same formal combination with `k = g + 1` and `k = g + 2`.
pub fn running_point_formal(g: u32, b: &[i64], a: &[i64], pos: usize) -> Result<TautVector> {
    if b.is_empty() {
        return domain("running point needs k >= 1");
    }
    if pos > a.len() {
        return domain(format!("position {pos} outside 0..={}", a.len()));
    }
    if b.iter().chain(a).any(|&x| x == 0) {
        return domain("running point multiplicities must be nonzero");
    }
    if b.iter().chain(a).sum::<i64>() != 0 {
        return domain("multiplicities must sum to zero");
    }
    let mut out = Builder::new(g);
    for i in 0..b.len() {
        let mut m = a.to_vec();
        m.insert(pos, b[i]);
        let f: Vec<i64> = b.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        out.add(&m, &f, rat_int(b[i]))?;
    }
    Ok(out.finish())
}

/// Running point at the first marked position.
pub fn running_point(g: u32, b: &[i64], a: &[i64]) -> Result<TautVector> {
    running_point_at(g, b, a, 0)
}

/// Swaps two marked positions of a symbol.
pub fn swap_marked(s: &DrSymbol, p: usize, q: usize) -> Result<TautVector> {
    let mut m = s.marked.clone();
    m.swap(p, q);
    dr(s.g, &m, &s.forgotten)
}

/// Why a vector is asserted to vanish, modulo the relevant subspace K or exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Tag {
    /// Exact identity among symbols.
    ExactZero(String),
    /// Generator of K.
    KMember(String),
    /// Identity taken from an external theorem and used as an axiom.
    Imported(String),
}

#[derive(Clone, Debug)]
pub struct Tagged {
    pub vector: TautVector,
    pub tag: Tag,
}

/// JSON list of `{sym, coeff}`.
pub fn vector_json(v: &TautVector) -> Value {
    Value::Array(v.iter().map(|(s, c)| json!({"sym": s.to_json(), "coeff": rat_str(c)})).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(g: u32, m: &[i64], t: &[i64]) -> DrSymbol {
        normalize(g, m, t).unwrap().symbol().unwrap()
    }

    #[test]
    fn sign_rule() {
        assert_eq!(sym(2, &[-5], &[2, 3]), sym(2, &[5], &[-2, -3]));
        assert_eq!(normalize(2, &[-3], &[1, 1, 1]).unwrap(), Normalized::Zero(ZeroReason::TooManyForgotten));
        assert_eq!(normalize(2, &[-3, 3], &[]).unwrap(), Normalized::Zero(ZeroReason::NoForgotten));
        assert_eq!(normalize(2, &[-3, 3], &[0]).unwrap(), Normalized::Zero(ZeroReason::ZeroForgotten));
        assert!(normalize(2, &[1], &[1]).is_err());
    }

    #[test]
    fn top_values() {
        assert_eq!(top_value(&sym(2, &[-5], &[2, 3])).unwrap(), rat_int(72));
        assert_eq!(top_value(&sym(2, &[-2], &[1, 1])).unwrap(), rat_int(2));
        assert_eq!(top_value(&sym(3, &[-3], &[1, 1, 1])).unwrap(), rat_int(6));
        assert!(top_value(&sym(3, &[-2], &[1, 1])).is_err());
    }

    #[test]
    fn psi1_example() {
        // r = 5, a_1 = -5
        let v = psi1_mul(&sym(2, &[-5], &[2, 3])).unwrap();
        let mut want = TautVector::new();
        want.add_term(sym(2, &[-5], &[5]), rat(1, 5));
        want.add_term(sym(2, &[-3], &[3]), rat(-13, 25));
        want.add_term(sym(2, &[-2], &[2]), rat(-17, 25));
        assert_eq!(v, want);
    }

    #[test]
    fn psi1_top_degree_is_zero() {
        assert!(psi1_mul_raw(2, &[-7], &[1, 2, 4]).unwrap().is_zero());
        assert!(psi1_mul_raw(2, &[0, -1], &[1]).is_err());
    }

    #[test]
    fn psi1_cancelling_pair_has_zero_coefficient() {
        let (v, audit) = psi1_mul_raw_audit(3, &[-1, -1], &[2, 1, -1]).unwrap();
        assert!(audit.zero_forgotten.is_empty());
        assert!(v.labels().all(|s| !s.forgotten.contains(&0)));
    }

    #[test]
    fn builder_audits_zero_forgotten() {
        let mut b = Builder::new(3);
        b.add(&[3, -1], &[-2, 0], rat_int(1)).unwrap();
        b.add(&[3, -1], &[-2], rat_int(1)).unwrap();
        assert_eq!(b.audit.zero_forgotten, vec![(vec![3, -1], vec![-2, 0])]);
        assert_eq!(b.finish().len(), 1);
    }

    #[test]
    fn intpsi_examples() {
        assert!(intpsi_top_vanishing(2, &[-7], &[1, 2, 4]).unwrap());
        assert!(intpsi_top_vanishing(3, &[-3, -4], &[1, 1, 2, 3]).unwrap());
    }

    #[test]
    fn running_point_examples() {
        assert!(running_point(2, &[3], &[-3]).unwrap().is_zero());
        let v = running_point(2, &[1, 1], &[-2]).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.coeff(&sym(2, &[1, -2], &[1])), rat_int(2));
        let w = running_point(2, &[2, 3], &[-5]).unwrap();
        assert_eq!(w.coeff(&sym(2, &[2, -5], &[3])), rat_int(2));
        assert_eq!(w.coeff(&sym(2, &[3, -5], &[2])), rat_int(3));
        assert!(running_point(2, &[1, 1, 1], &[-3]).is_err());
    }
}
