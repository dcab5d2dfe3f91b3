//! Top intersection coefficients: Faber's pushforward constant, the
//! generalized top expansion in the classes psi_i^{g-1}, and the pairing
//! matrix against the linear forms alpha_s.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{a_g, c_const, double_factorial, factorial, rat_int};
use crate::error::{domain, Result};
use crate::{Rat, RatMatrix};

/// Degrees `d` of psi-powers at the n points and indices `k` of a
/// multi-index kappa, with `sum d + sum k = g - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopProfile {
    pub g: i64,
    pub d: Vec<i64>,
    pub k: Vec<i64>,
}

impl TopProfile {
    pub fn new(g: i64, d: Vec<i64>, k: Vec<i64>) -> Result<Self> {
        let p = TopProfile { g, d, k };
        p.validate()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.g < 2 {
            return domain(format!("genus {} < 2", self.g));
        }
        if self.d.is_empty() {
            return domain("profile needs at least one point");
        }
        if self.d.iter().chain(&self.k).any(|&x| x < 0) {
            return domain("profile entries must be non-negative");
        }
        let s: i64 = self.d.iter().chain(&self.k).sum();
        if s != self.g - 1 {
            return domain(format!("profile degree {s} != g-1 = {}", self.g - 1));
        }
        Ok(())
    }

    pub fn c(&self) -> Result<Rat> {
        c_const(self.g, &self.d, &self.k)
    }
}

/// Coefficient of kappa_{g-2} in the pushforward of prod psi_i^{l_i+1}.
pub fn faber_coeff(g: i64, l: &[i64]) -> Result<Rat> {
    if g < 2 {
        return domain(format!("genus {g} < 2"));
    }
    if l.is_empty() {
        return domain("empty exponent list");
    }
    if l.iter().any(|&x| x < -1) {
        return domain("exponents must be >= -1");
    }
    if l.iter().filter(|&&x| x == -1).count() > 1 {
        return domain("at most one exponent may equal -1");
    }
    let s: i64 = l.iter().sum();
    if s != g - 2 {
        return domain(format!("exponent sum {s} != g-2 = {}", g - 2));
    }
    let n = l.len() as i64;
    let mut den = Rat::from_integer(factorial(2 * g as u64 - 2));
    for &x in l {
        den *= double_factorial(2 * x + 1)?;
    }
    Ok(Rat::from_integer(factorial((2 * g - 3 + n) as u64)) * double_factorial(2 * g - 3)? / den)
}

/// For a profile with one entry equal to -1, compares the coefficient with
/// the string-equation sum over the remaining entries, each decremented in
/// turn. Profiles without a -1 entry hold trivially.
pub fn faber_string_recursion_holds(g: i64, l: &[i64]) -> Result<bool> {
    let value = faber_coeff(g, l)?;
    let Some(pos) = l.iter().position(|&x| x == -1) else {
        return Ok(true);
    };
    let rest: Vec<i64> = l.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &x)| x).collect();
    if rest.is_empty() {
        return Ok(false);
    }
    let mut sum = Rat::zero();
    for i in 0..rest.len() {
        let mut m = rest.clone();
        m[i] -= 1;
        sum += faber_coeff(g, &m)?;
    }
    Ok(sum == value)
}

/// Coefficients of psi_i^{g-1} in the generalized top expansion of
/// prod psi_i^{d_i} kappa_{k}.
pub fn gen_top_coeffs(p: &TopProfile) -> Result<Vec<Rat>> {
    p.validate()?;
    let g = p.g;
    let n = p.n() as i64;
    let sk: i64 = p.k.iter().sum();
    let pre = p.c()? * Rat::from_integer(factorial(2 * g as u64 - 1))
        / Rat::from_integer(factorial((2 * g - 2 + n) as u64))
        / rat_int(g - 1);
    Ok(p.d.iter().map(|&di| pre.clone() * rat_int((2 * g - 2 + n) * di + sk)).collect())
}

/// Integral of prod psi^{d} kappa_{k} against alpha_s (1-based `s`).
pub fn alpha_pairing(p: &TopProfile, s: usize) -> Result<Rat> {
    p.validate()?;
    if s == 0 || s > p.n() {
        return domain(format!("alpha index {s} outside 1..={}", p.n()));
    }
    Ok(p.c()? * rat_int(2 * p.d[s - 1] + 1) * a_g(p.g)?)
}

#[derive(Clone, Debug)]
pub struct MatrixM {
    pub matrix: RatMatrix,
    /// Common factor `C * A_g` with `M = factor * (U + (2g-2) Id)`.
    pub factor: Rat,
    pub determinant: Rat,
    /// `factor^n (2g-2)^{n-1} (2g-2+n)`.
    pub predicted_determinant: Rat,
    pub nondegenerate: bool,
}

/// The matrix `M_{is}` of integrals of psi_i^{g-1} against alpha_s.
pub fn matrix_m(g: i64, n: usize) -> Result<MatrixM> {
    if g < 2 || n == 0 {
        return domain(format!("matrix_m needs g >= 2 and n >= 1, got g={g}, n={n}"));
    }
    let profile = |i: usize| {
        let mut d = vec![0; n];
        d[i] = g - 1;
        TopProfile { g, d, k: vec![] }
    };
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        let p = profile(i);
        for (s, e) in row.iter_mut().enumerate() {
            *e = alpha_pairing(&p, s + 1)?;
        }
    }
    let matrix = RatMatrix::from_rows(entries);
    let factor = profile(0).c()? * a_g(g)?;
    let determinant = matrix.determinant();
    let mut predicted = rat_int(2 * g - 2 + n as i64);
    for _ in 0..n {
        predicted *= &factor;
    }
    for _ in 1..n {
        predicted *= rat_int(2 * g - 2);
    }
    Ok(MatrixM { nondegenerate: !determinant.is_zero(), matrix, factor, determinant, predicted_determinant: predicted })
}

/// `M == factor * (U + (2g-2) Id)` entrywise.
pub fn matrix_m_has_expected_shape(m: &MatrixM, g: i64) -> bool {
    let n = m.matrix.nrows();
    (0..n).all(|i| {
        (0..n).all(|s| {
            let want = if i == s { m.factor.clone() * rat_int(2 * g - 1) } else { m.factor.clone() };
            m.matrix[(i, s)] == want
        })
    })
}

/// Pairing of the class with each alpha_s agrees with the pairing of its
/// generalized top expansion.
pub fn verify_pairing_consistency(p: &TopProfile) -> Result<bool> {
    let coeffs = gen_top_coeffs(p)?;
    let pure = |i: usize| {
        let mut d = vec![0; p.n()];
        d[i] = p.g - 1;
        TopProfile { g: p.g, d, k: vec![] }
    };
    for s in 0..p.n() {
        let mut rhs = Rat::zero();
        for (i, c) in coeffs.iter().enumerate() {
            rhs += c.clone() * alpha_pairing(&pure(i), s + 1)?;
        }
        if rhs != alpha_pairing(p, s + 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All compositions of `total` into `parts` non-negative entries.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every valid profile with the given genus and shape sizes.
pub fn all_profiles(g: i64, n: usize, m: usize) -> Vec<TopProfile> {
    compositions(g - 1, n + m).into_iter().map(|v| TopProfile { g, d: v[..n].to_vec(), k: v[n..].to_vec() }).collect()
}

/// Identity check `det(M) == predicted`.
pub fn determinant_formula_holds(m: &MatrixM) -> bool {
    m.determinant == m.predicted_determinant && !m.predicted_determinant.is_zero()
}
