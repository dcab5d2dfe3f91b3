//! The V and Z cycles: fixed rational combinations of DR symbols in which
//! the basic relation becomes the much shorter main relation.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{rat, rat_int, rat_str};
use crate::dr::{self, Builder, Tag};
use crate::error::{domain, Result};
use crate::exactla::{FreeModule, Subspace};
use crate::{Rat, RatMatrix, TautVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    V,
    Z,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VzSymbol {
    pub kind: Kind,
    pub g: u32,
    pub f: Vec<i64>,
}

impl fmt::Debug for VzSymbol {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{:?}{}{:?}", self.kind, self.g, self.f)
    }
}

impl VzSymbol {
    pub fn n(&self) -> usize {
        self.f.len() - 1
    }

    pub fn d(&self) -> i64 {
        self.f.iter().sum()
    }

    /// `(|d| + sum |f_i|) / 2`, the degree used to order the socle inductions.
    pub fn size(&self) -> i64 {
        size_of(&self.f)
    }

    pub fn to_json(&self) -> Value {
        json!({"kind": format!("{:?}", self.kind), "g": self.g, "f": self.f})
    }
}

pub fn size_of(f: &[i64]) -> i64 {
    let d: i64 = f.iter().sum();
    (d.abs() + f.iter().map(|x| x.abs()).sum::<i64>()) / 2
}

/// Combination of V/Z symbols.
pub type VzVector = FreeModule<VzSymbol, Rat>;

/// Canonical symbol and the sign relating it to the raw one, or `None` when
/// the raw symbol vanishes (`f_2 = 0` for V, `sum f = 0` for Z).
pub fn canon(kind: Kind, g: u32, f: &[i64]) -> Result<Option<(VzSymbol, i64)>> {
    if f.len() < 2 {
        return domain("V/Z symbols need at least two entries");
    }
    if f.iter().all(|&x| x == 0) {
        return domain("V/Z symbol with all entries zero");
    }
    let d: i64 = f.iter().sum();
    match kind {
        Kind::V if d == 0 => return domain(format!("V with d = 0: {f:?}")),
        Kind::V if f[1] == 0 => return Ok(None),
        Kind::Z if d == 0 => return Ok(None),
        _ => {}
    }
    let neg: Vec<i64> = f.iter().map(|x| -x).collect();
    if neg.as_slice() > f {
        Ok(Some((VzSymbol { kind, g, f: neg }, -1)))
    } else {
        Ok(Some((VzSymbol { kind, g, f: f.to_vec() }, 1)))
    }
}

/// Adds `c * kind(f)` to a V/Z combination, applying the sign rule and the
/// vanishing rules.
pub fn push(v: &mut VzVector, kind: Kind, g: u32, f: &[i64], c: Rat) -> Result<()> {
    if let Some((s, sign)) = canon(kind, g, f)? {
        v.add_term(s, c * rat_int(sign));
    }
    Ok(())
}

pub fn vz(kind: Kind, g: u32, f: &[i64]) -> Result<VzVector> {
    let mut v = VzVector::new();
    push(&mut v, kind, g, f, Rat::one())?;
    Ok(v)
}

/// Defining expansion of a raw V or Z symbol into DR symbols.
pub fn expand_raw(kind: Kind, g: u32, f: &[i64]) -> Result<TautVector> {
    if f.len() < 2 {
        return domain("V/Z symbols need at least two entries");
    }
    let n = f.len() as i64 - 1;
    let r = 2 * g as i64 + n + 1;
    let d: i64 = f.iter().sum();
    let mut out = Builder::new(g);
    match kind {
        Kind::Z => {
            if d == 0 {
                return Ok(out.finish());
            }
            let rest = &f[2..];
            let with_head = |h: i64| -> Vec<i64> { std::iter::once(h).chain(rest.iter().copied()).collect() };
            out.add(&with_head(f[1]), &[-d, f[0]], rat(f[0] - (r - n - 2) * f[1], r))?;
            out.add(&with_head(f[0]), &[-d, f[1]], rat(f[1] - (r - n - 2) * f[0], r))?;
            for l in 2..f.len() {
                let mut m = with_head(f[1]);
                m[l - 1] = f[0];
                out.add(&m, &[-d, f[l]], rat(f[1] - f[0], r))?;
            }
        }
        Kind::V => {
            if d == 0 {
                return domain(format!("V with d = 0: {f:?}"));
            }
            let (f1, f2) = (f[0], f[1]);
            let tail = &f[1..];
            // (f2/r)(r-n-2+f1/d) and -(f2/r)(1+f1/d)
            out.add(tail, &[-d, f1], rat(f2, r) * (rat_int(r - n - 2) + rat(f1, d)))?;
            let c = -rat(f2, r) * (Rat::one() + rat(f1, d));
            for l in 1..f.len() {
                let mut m = tail.to_vec();
                m[l - 1] = f1;
                out.add(&m, &[-d, f[l]], c.clone())?;
            }
        }
    }
    Ok(out.finish())
}

pub fn expand(s: &VzSymbol) -> Result<TautVector> {
    expand_raw(s.kind, s.g, &s.f)
}

pub fn expand_vec(v: &VzVector) -> Result<TautVector> {
    let mut out = TautVector::new();
    for (s, c) in v.iter() {
        out.add_scaled(&expand(s)?, c);
    }
    Ok(out)
}

/// The relations among V/Z cycles used by the socle argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rel {
    /// `f_i V(f) + f_2 V(f with f_2, f_i swapped)`, `3 <= i <= n+1` (1-based).
    Sym2I(usize),
    /// `V(f) + V(f with f_i, f_j swapped)`, `3 <= i < j <= n+1`.
    SymIJ(usize, usize),
    /// `V(f) - V(-d, f_2, ...)`, `f_1 != 0`.
    Sym1,
    /// `V(f) - Z(f_1, -d, f_3, ...)`.
    Sym2,
    /// `V(f) + V(f_2, f_1, ...) + Z(f)`.
    VVZ,
    /// `V(a f) - a^{2g+1} V(f)` for `n = 1`, a consequence of Hain's formula.
    Scaling(i64),
}

#[derive(Clone, Debug)]
pub struct VzTagged {
    pub vector: VzVector,
    pub tag: Tag,
}

/// One relation instance at `f`, or `None` when its parameters are out of
/// range for this `f`.
pub fn relation(g: u32, f: &[i64], rel: Rel) -> Result<Option<VzTagged>> {
    let n = f.len() - 1;
    let d: i64 = f.iter().sum();
    if d == 0 {
        return domain(format!("relations need d != 0, got {f:?}"));
    }
    let mut v = VzVector::new();
    let tag = match rel {
        Rel::Sym2I(i) => {
            if !(3..=n + 1).contains(&i) {
                return domain(format!("(2,i)-symmetry index {i} outside 3..={}", n + 1));
            }
            let mut h = f.to_vec();
            h.swap(1, i - 1);
            push(&mut v, Kind::V, g, f, rat_int(f[i - 1]))?;
            push(&mut v, Kind::V, g, &h, rat_int(f[1]))?;
            Tag::KMember(format!("(2,{i})-symmetry"))
        }
        Rel::SymIJ(i, j) => {
            if !(3 <= i && i < j && j <= n + 1) {
                return domain(format!("(i,j)-symmetry indices ({i},{j}) out of range"));
            }
            let mut h = f.to_vec();
            h.swap(i - 1, j - 1);
            push(&mut v, Kind::V, g, f, Rat::one())?;
            push(&mut v, Kind::V, g, &h, Rat::one())?;
            Tag::KMember(format!("({i},{j})-symmetry"))
        }
        Rel::Sym1 => {
            if f[0] == 0 {
                return Ok(None);
            }
            let mut h = f.to_vec();
            h[0] = -d;
            push(&mut v, Kind::V, g, f, Rat::one())?;
            push(&mut v, Kind::V, g, &h, -Rat::one())?;
            Tag::KMember("1-symmetry".into())
        }
        Rel::Sym2 => {
            let mut h = f.to_vec();
            h[1] = -d;
            push(&mut v, Kind::V, g, f, Rat::one())?;
            push(&mut v, Kind::Z, g, &h, -Rat::one())?;
            Tag::KMember("2-symmetry".into())
        }
        Rel::VVZ => {
            let mut h = f.to_vec();
            h.swap(0, 1);
            push(&mut v, Kind::V, g, f, Rat::one())?;
            push(&mut v, Kind::V, g, &h, Rat::one())?;
            push(&mut v, Kind::Z, g, f, Rat::one())?;
            Tag::KMember("V+V+Z".into())
        }
        Rel::Scaling(a) => {
            if n != 1 || a == 0 {
                return Ok(None);
            }
            let h: Vec<i64> = f.iter().map(|x| a * x).collect();
            let mut pw = Rat::one();
            for _ in 0..2 * g + 1 {
                pw *= rat_int(a);
            }
            push(&mut v, Kind::V, g, &h, Rat::one())?;
            push(&mut v, Kind::V, g, f, -pw)?;
            Tag::Imported("scaling from Hain's formula".into())
        }
    };
    Ok(Some(VzTagged { vector: v, tag }))
}

/// All symmetry relations applicable at `f` (without scaling).
pub fn relation_generators(g: u32, f: &[i64], with_sign_changing: bool) -> Result<Vec<VzTagged>> {
    let n = f.len() - 1;
    let mut rels = Vec::new();
    for i in 3..=n + 1 {
        rels.push(Rel::Sym2I(i));
    }
    for i in 3..=n + 1 {
        for j in i + 1..=n + 1 {
            rels.push(Rel::SymIJ(i, j));
        }
    }
    rels.push(Rel::VVZ);
    if with_sign_changing {
        rels.push(Rel::Sym1);
        rels.push(Rel::Sym2);
    }
    let mut out = Vec::new();
    for r in rels {
        if let Some(t) = relation(g, f, r)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// `expand(V(f)) + expand(V(-f))`, which vanishes identically.
pub fn sign_rule_vector(g: u32, f: &[i64]) -> Result<TautVector> {
    let neg: Vec<i64> = f.iter().map(|x| -x).collect();
    Ok(&expand_raw(Kind::V, g, f)? + &expand_raw(Kind::V, g, &neg)?)
}

fn check_triple(b: &[i64; 3], b4: i64, a: &[i64]) -> Result<()> {
    if b.iter().chain(std::iter::once(&b4)).chain(a).any(|&x| x == 0) {
        return domain("basic relation entries must be nonzero");
    }
    if b.iter().sum::<i64>() + b4 + a.iter().sum::<i64>() != 0 {
        return domain("basic relation entries must sum to zero");
    }
    Ok(())
}

const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
const PERMS: [(usize, usize, usize); 6] = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)];

fn prepend(h: i64, a: &[i64]) -> Vec<i64> {
    std::iter::once(h).chain(a.iter().copied()).collect()
}

/// The five-sum relation obtained by multiplying the four-point running
/// point relation by psi_1. Here `n = a.len() + 1` and `r = 2g + n + 1`.
pub fn basic_relation(g: u32, b: &[i64; 3], b4: i64, a: &[i64]) -> Result<TautVector> {
    check_triple(b, b4, a)?;
    let n = a.len() as i64 + 1;
    let r = 2 * g as i64 + n + 1;
    let one = Rat::one();
    let mut out = Builder::new(g);
    for (i, j, k) in PAIRS {
        let s = b[i] + b[j];
        out.add(&prepend(s, a), &[b4, b[k]], rat(s, r) * (rat_int(r - 2) + rat(s, b4)))?;
        out.add(&prepend(b[k], a), &[b4, s], -rat(s, r) * (one.clone() - rat(b[k], b4)))?;
    }
    for l in 0..a.len() {
        for (i, j, k) in PERMS {
            let mut aa = a.to_vec();
            aa[l] += b[i];
            out.add(&prepend(b[j], &aa), &[b4, b[k]], -rat(b[i] + a[l], r) * (one.clone() - rat(b[j], b4)))?;
        }
        for (i, j, k) in PAIRS {
            let mut aa = a.to_vec();
            aa[l] = b[j];
            out.add(&prepend(b[i], &aa), &[b4 + a[l], b[k]], rat(b[j] - b[i], r))?;
        }
    }
    for (i, j, k) in PERMS {
        out.add(&prepend(b[i], a), &[b4 + b[k], b[j]], -rat(b4 + b[k] + (r - 2) * b[i], r))?;
    }
    Ok(out.finish())
}

/// Sum over the three splittings of `V(b_k, b_i + b_j, a) + Z(b_i, b_j, a)`.
pub fn main_relation(g: u32, b: &[i64; 3], b4: i64, a: &[i64]) -> Result<VzVector> {
    check_triple(b, b4, a)?;
    let mut out = VzVector::new();
    for (i, j, k) in PAIRS {
        let mut fv = vec![b[k], b[i] + b[j]];
        fv.extend_from_slice(a);
        push(&mut out, Kind::V, g, &fv, Rat::one())?;
        let mut fz = vec![b[i], b[j]];
        fz.extend_from_slice(a);
        push(&mut out, Kind::Z, g, &fz, Rat::one())?;
    }
    Ok(out)
}

/// The closed form of the weighted sum of four basic relations attached to
/// the marked point `p` (0-based index into `a`).
pub fn newrelation2(g: u32, b: &[i64; 3], b4: i64, a: &[i64], p: usize) -> Result<TautVector> {
    check_triple(b, b4, a)?;
    if p >= a.len() {
        return domain(format!("point index {p} outside 0..{}", a.len()));
    }
    let c = [b[0], b[1], b[2], a[p]];
    let mut out = Builder::new(g);
    for i in 0..4 {
        for j in i + 1..4 {
            let others: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
            for (k, l) in [(others[0], others[1]), (others[1], others[0])] {
                let mut aa = a.to_vec();
                aa[p] = c[k];
                out.add(&prepend(c[i] + c[j], &aa), &[b4, c[l]], rat_int(c[i] + c[j]) * (Rat::one() - rat(c[k], b4)))?;
                let mut aa = a.to_vec();
                aa[p] = c[j];
                out.add(&prepend(c[i], &aa), &[b4 + c[l], c[k]], rat_int(c[j] - c[i]))?;
            }
        }
    }
    Ok(out.finish())
}

/// The four auxiliary basic relations for point `p`, weighted by
/// `1 - a_p/b_4`, `1 - b_3/b_4`, `1 - b_2/b_4`, `1 - b_1/b_4`.
pub fn weighted_basic_sum(g: u32, b: &[i64; 3], b4: i64, a: &[i64], p: usize) -> Result<TautVector> {
    check_triple(b, b4, a)?;
    if p >= a.len() {
        return domain(format!("point index {p} outside 0..{}", a.len()));
    }
    let rep = |x: i64| {
        let mut aa = a.to_vec();
        aa[p] = x;
        aa
    };
    let [b1, b2, b3] = *b;
    let ap = a[p];
    let parts = [
        ([b1, b2, b3], a.to_vec(), ap),
        ([b1, b2, ap], rep(b3), b3),
        ([b1, ap, b3], rep(b2), b2),
        ([ap, b2, b3], rep(b1), b1),
    ];
    let mut out = TautVector::new();
    for (t, aa, w) in parts {
        out.add_scaled(&basic_relation(g, &t, b4, &aa)?, &(Rat::one() - rat(w, b4)));
    }
    Ok(out)
}

/// Compares the closed form with the weighted sum of basic relations. The
/// two agree modulo symmetrizations.
pub fn newrelation2_identity(g: u32, b: &[i64; 3], b4: i64, a: &[i64], p: usize) -> Result<DerivationStatus> {
    let lhs = newrelation2(g, b, b4, a, p)?;
    let rhs = weighted_basic_sum(g, b, b4, a, p)?;
    classify(&(&lhs - &rhs), &[&lhs, &rhs])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DerivationStatus {
    Exact,
    /// The difference is a combination of symmetrizations
    /// `alpha + (alpha with two marked points swapped)`.
    ModuloSymmetrizations,
    Fails,
}

impl DerivationStatus {
    pub fn holds(self) -> bool {
        self != DerivationStatus::Fails
    }
}

/// Span of `alpha + swap_{pq}(alpha)` for every symbol of the given vectors
/// and every pair of marked positions.
pub fn symmetrization_span(vectors: &[&TautVector]) -> Result<Subspace<dr::DrSymbol, Rat>> {
    let mut s = Subspace::new();
    for v in vectors {
        for sym in v.labels() {
            for p in 0..sym.n() {
                for q in p + 1..sym.n() {
                    let w = &TautVector::basis(sym.clone()) + &dr::swap_marked(sym, p, q)?;
                    s.insert_vec(&w);
                }
            }
        }
    }
    Ok(s)
}

fn classify(diff: &TautVector, context: &[&TautVector]) -> Result<DerivationStatus> {
    if diff.is_zero() {
        return Ok(DerivationStatus::Exact);
    }
    let mut vs: Vec<&TautVector> = context.to_vec();
    vs.push(diff);
    if symmetrization_span(&vs)?.contains_vec(diff) {
        Ok(DerivationStatus::ModuloSymmetrizations)
    } else {
        Ok(DerivationStatus::Fails)
    }
}

/// Compares the expanded main relation with the basic relation minus
/// `1/r` times the sum over `p` of the four-relation combinations.
pub fn derivation_check(g: u32, b: &[i64; 3], b4: i64, a: &[i64]) -> Result<DerivationStatus> {
    let n = a.len() as i64 + 1;
    let r = 2 * g as i64 + n + 1;
    let mut rhs = basic_relation(g, b, b4, a)?;
    for p in 0..a.len() {
        rhs.add_scaled(&newrelation2(g, b, b4, a, p)?, &-rat(1, r));
    }
    let lhs = expand_vec(&main_relation(g, b, b4, a)?)?;
    let diff = &lhs - &rhs;
    classify(&diff, &[&lhs, &rhs])
}

/// Status of `V(f) + V(f_2, f_1, ...) + Z(f)` after expansion.
pub fn vvz_status(g: u32, f: &[i64]) -> Result<DerivationStatus> {
    let mut h = f.to_vec();
    h.swap(0, 1);
    let sum = &(&expand_raw(Kind::V, g, f)? + &expand_raw(Kind::V, g, &h)?) + &expand_raw(Kind::Z, g, f)?;
    classify(&sum, &[])
}

#[derive(Clone, Debug)]
pub struct GMatrices {
    pub g_mat: RatMatrix,
    pub g_tilde: RatMatrix,
    pub det_g_tilde: Rat,
    /// `(r-n-3)^n (r-1)`.
    pub predicted_det: Rat,
    /// `G == D * G~ * diag(-1, 1, ..., 1)`.
    pub factorization_holds: bool,
}

/// The change-of-basis matrix between the cycles `beta_i` (rotations of V)
/// and the DR symbols `alpha_j`, together with its rescaled form.
pub fn g_matrices(g: u32, f: &[i64]) -> Result<GMatrices> {
    if f.len() < 2 {
        return domain("need at least two entries");
    }
    if f.contains(&0) {
        return domain("entries must be nonzero");
    }
    let d: i64 = f.iter().sum();
    if d == 0 {
        return domain("d = 0");
    }
    let m = f.len();
    let n = m as i64 - 1;
    let r = 2 * g as i64 + n + 1;
    let sign = |e: i64| if e.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
    let fnext = |i: usize| f[(i + 1) % m];
    let g_tilde =
        RatMatrix::from_fn(
            m,
            m,
            |i, j| {
                if i == j {
                    rat_int(r - n - 2) + rat(f[i], d)
                } else {
                    Rat::one() + rat(f[i], d)
                }
            },
        );
    // 1-based i in the exponent: (i-1) n + 1 (+1 in the first column)
    let g_mat = RatMatrix::from_fn(m, m, |i, j| {
        let e = i as i64 * n + 1 + i64::from(j == 0);
        sign(e) * rat(fnext(i), r) * g_tilde[(i, j)].clone()
    });
    let dmat =
        RatMatrix::from_fn(m, m, |i, j| if i == j { sign(i as i64 * n + 1) * rat(fnext(i), r) } else { Rat::zero() });
    let flip = RatMatrix::from_fn(m, m, |i, j| match (i == j, i) {
        (true, 0) => -Rat::one(),
        (true, _) => Rat::one(),
        _ => Rat::zero(),
    });
    let factorization_holds = dmat.mul(&g_tilde).mul(&flip) == g_mat;
    let mut predicted = rat_int(r - 1);
    for _ in 0..n {
        predicted *= rat_int(r - n - 3);
    }
    Ok(GMatrices { det_g_tilde: g_tilde.determinant(), g_mat, g_tilde, predicted_det: predicted, factorization_holds })
}

pub fn vz_vector_json(v: &VzVector) -> Value {
    Value::Array(v.iter().map(|(s, c)| json!({"sym": s.to_json(), "coeff": rat_str(c)})).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dr::normalize;

    #[test]
    fn v_example() {
        let v = expand_raw(Kind::V, 2, &[1, 1]).unwrap();
        let s = normalize(2, &[1], &[-2, 1]).unwrap().symbol().unwrap();
        assert_eq!(v, TautVector::basis(s).scaled(&rat(1, 3)));
    }

    #[test]
    fn vanishing_rules() {
        assert!(canon(Kind::V, 2, &[3, 0]).unwrap().is_none());
        assert!(canon(Kind::Z, 2, &[3, -3]).unwrap().is_none());
        assert!(canon(Kind::V, 2, &[3, -3]).is_err());
        assert!(expand_raw(Kind::V, 2, &[3, 0]).unwrap().is_zero());
        assert!(expand_raw(Kind::Z, 2, &[3, -3]).unwrap().is_zero());
    }

    #[test]
    fn sign_rule_exact() {
        assert!(sign_rule_vector(2, &[1, 1]).unwrap().is_zero());
        assert!(sign_rule_vector(3, &[2, -5, 1]).unwrap().is_zero());
        let (s, sign) = canon(Kind::V, 2, &[-1, -1]).unwrap().unwrap();
        assert_eq!((s.f, sign), (vec![1, 1], -1));
    }

    #[test]
    fn sym_2i_on_fixed_symbol() {
        let t = relation(2, &[1, 2, 2], Rel::Sym2I(3)).unwrap().unwrap();
        let (s, _) = canon(Kind::V, 2, &[1, 2, 2]).unwrap().unwrap();
        assert_eq!(t.vector, VzVector::basis(s).scaled(&rat_int(4)));
        assert!(matches!(t.tag, Tag::KMember(_)));
    }

    #[test]
    fn scaling_relation_vector() {
        let t = relation(2, &[1, 1], Rel::Scaling(2)).unwrap().unwrap();
        let (s22, _) = canon(Kind::V, 2, &[2, 2]).unwrap().unwrap();
        let (s11, _) = canon(Kind::V, 2, &[1, 1]).unwrap().unwrap();
        assert_eq!(t.vector.coeff(&s22), rat_int(1));
        assert_eq!(t.vector.coeff(&s11), rat_int(-32));
        assert!(matches!(t.tag, Tag::Imported(_)));
    }

    #[test]
    fn basic_relation_symmetric_in_triple() {
        let x = basic_relation(2, &[1, 2, 3], -6, &[]).unwrap();
        let y = basic_relation(2, &[2, 3, 1], -6, &[]).unwrap();
        assert_eq!(x, y);
        // with marked points the fourth sum is ordered, symmetric only up to swaps
        let x = basic_relation(2, &[1, 2, 3], -7, &[1]).unwrap();
        let y = basic_relation(2, &[2, 1, 3], -7, &[1]).unwrap();
        let diff = &x - &y;
        assert!(!diff.is_zero());
        assert!(symmetrization_span(&[&x, &y]).unwrap().contains_vec(&diff));
        assert!(basic_relation(2, &[1, 1, 1], -3, &[]).unwrap().len() <= 9);
        assert!(basic_relation(2, &[1, 0, 1], -2, &[]).is_err());
    }

    #[test]
    fn main_relation_zero_rules() {
        // b_1 + b_2 = 0 removes that V term
        let m = main_relation(2, &[1, -1, 2], -2, &[]).unwrap();
        assert!(m.labels().all(|s| !(s.kind == Kind::V && s.f.contains(&0))));
        let full = main_relation(2, &[1, 1, 1], -3, &[]).unwrap();
        // V(1,2) three times and Z(1,1) three times
        assert_eq!(full.len(), 2);
    }

    #[test]
    fn derivation_examples() {
        assert_eq!(derivation_check(2, &[1, 1, 1], -3, &[]).unwrap(), DerivationStatus::Exact);
        assert!(derivation_check(2, &[1, 1, 2], -3, &[-1]).unwrap().holds());
        assert!(newrelation2_identity(2, &[1, 1, 2], -3, &[-1], 0).unwrap().holds());
        assert!(newrelation2_identity(3, &[1, 2, 3], -7, &[1], 0).unwrap().holds());
    }

    #[test]
    fn g_matrix_example() {
        let m = g_matrices(2, &[1, 1]).unwrap();
        assert_eq!(m.det_g_tilde, rat_int(10));
        assert_eq!(m.predicted_det, rat_int(10));
        assert!(m.factorization_holds);
    }
}
