//! Exp-polynomial functions: finite sums of terms
//! `c * n1^k1 ... nr^kr * a1^n1 ... ar^nr` with [`Scalar`] coefficients and
//! nonzero rational bases.
//!
//! The representation is canonical: term keys are pairwise distinct and no
//! coefficient is zero, so structural equality coincides with functional
//! equality on the integer lattice. Bases stay in `Q*` while coefficients may
//! carry the transcendental `p`; evaluation therefore lands in [`Scalar`].

mod parse;

pub use parse::parse_exppoly;

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, Scalar};
use itertools::Itertools;
use num::{BigRational, One, Zero};
use std::collections::BTreeMap;

/// Key of one term: exponent vector `k` and base vector `a`.
///
/// A base equal to 1 means "no exponential part" in that variable; keys are
/// ordered lexicographically on (exponents, bases), which fixes the canonical
/// serialization order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub powers: Vec<u32>,
    pub bases: Vec<BigRational>,
}

impl serde::Serialize for TermKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TermKey", 2)?;
        st.serialize_field("powers", &self.powers)?;
        let bases: Vec<String> = self.bases.iter().map(|b| b.to_string()).collect();
        st.serialize_field("bases", &bases)?;
        st.end()
    }
}

impl TermKey {
    pub fn unit(arity: usize) -> TermKey {
        TermKey {
            powers: vec![0; arity],
            bases: vec![BigRational::one(); arity],
        }
    }

    pub fn arity(&self) -> usize {
        self.powers.len()
    }

    pub fn is_unit(&self) -> bool {
        self.powers.iter().all(|&k| k == 0) && self.bases.iter().all(|b| b.is_one())
    }

    /// Evaluate the term function `n^k a^n` at an integer point.
    pub fn eval_rational(&self, x: &[i64]) -> BigRational {
        let mut acc = BigRational::one();
        for (v, (&k, b)) in self.powers.iter().zip(&self.bases).enumerate() {
            let xv = BigRational::from_integer(x[v].into());
            for _ in 0..k {
                acc *= &xv;
            }
            if !b.is_one() {
                acc *= Scalar::rational_pow(b, x[v]);
            }
        }
        acc
    }
}

/// Canonical exp-polynomial function `Z^r -> Q(p)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpPoly {
    arity: usize,
    terms: BTreeMap<TermKey, Scalar>,
}

/// The three closure operations of the exp-polynomial algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Mul,
    Scale,
}

impl ExpPoly {
    pub fn zero(arity: usize) -> ExpPoly {
        ExpPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> ExpPoly {
        let mut e = ExpPoly::zero(arity);
        if !c.is_zero() {
            e.terms.insert(TermKey::unit(arity), c);
        }
        e
    }

    /// The coordinate function `n_{j}` (0-based index).
    pub fn var(arity: usize, j: usize) -> ExpPoly {
        assert!(j < arity);
        let mut key = TermKey::unit(arity);
        key.powers[j] = 1;
        let mut e = ExpPoly::zero(arity);
        e.terms.insert(key, Scalar::one());
        e
    }

    /// The exponential `base^{n_j}` (0-based index); base must be nonzero.
    pub fn exp_base(arity: usize, j: usize, base: BigRational) -> Result<ExpPoly> {
        assert!(j < arity);
        if base.is_zero() {
            return Err(Error::InvalidBase("zero exponential base".into()));
        }
        let mut key = TermKey::unit(arity);
        key.bases[j] = base;
        let mut e = ExpPoly::zero(arity);
        e.terms.insert(key, Scalar::one());
        Ok(e)
    }

    pub fn term(
        arity: usize,
        powers: Vec<u32>,
        bases: Vec<BigRational>,
        coeff: Scalar,
    ) -> Result<ExpPoly> {
        normalize(arity, vec![(TermKey { powers, bases }, coeff)])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: TermKey, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &ExpPoly) -> Result<ExpPoly> {
        if self.arity != other.arity {
            return Err(Error::Arity(format!(
                "add of arity {} with arity {}",
                self.arity, other.arity
            )));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ExpPoly) -> Result<ExpPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero(self.arity);
        }
        ExpPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &ExpPoly) -> Result<ExpPoly> {
        if self.arity != other.arity {
            return Err(Error::Arity(format!(
                "mul of arity {} with arity {}",
                self.arity, other.arity
            )));
        }
        let mut out = ExpPoly::zero(self.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = TermKey {
                    powers: k1
                        .powers
                        .iter()
                        .zip(&k2.powers)
                        .map(|(a, b)| a + b)
                        .collect(),
                    bases: k1.bases.iter().zip(&k2.bases).map(|(a, b)| a * b).collect(),
                };
                out.insert(key, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<ExpPoly> {
        let mut acc = ExpPoly::constant(self.arity, Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact evaluation at an integer lattice point.
    pub fn evaluate(&self, x: &[i64]) -> Result<Scalar> {
        if x.len() != self.arity {
            return Err(Error::Arity(format!(
                "evaluate: point has {} coordinates, function has arity {}",
                x.len(),
                self.arity
            )));
        }
        let mut acc = Scalar::zero();
        for (key, coeff) in &self.terms {
            let factor = Scalar::from_rational(key.eval_rational(x));
            acc = &acc + &(coeff * &factor);
        }
        Ok(acc)
    }

    /// Symbolic substitution `n := A*y + b`, where `A` has one row per
    /// variable of `self` and one column per variable of the result.
    ///
    /// The returned function satisfies `result(y) = self(A*y + b)` for every
    /// integer point `y`; powers are expanded binomially and exponentials are
    /// split into per-variable bases times a rational constant.
    pub fn substitute_affine(&self, a: &[Vec<i64>], b: &[i64]) -> Result<ExpPoly> {
        let r = self.arity;
        if a.len() != r || b.len() != r {
            return Err(Error::Shape(format!(
                "substitution needs {r} rows, got {} and offset {}",
                a.len(),
                b.len()
            )));
        }
        let new_arity = a.first().map_or(0, Vec::len);
        if a.iter().any(|row| row.len() != new_arity) {
            return Err(Error::Shape("ragged substitution matrix".into()));
        }
        let mut out = ExpPoly::zero(new_arity);
        for (key, coeff) in &self.terms {
            // exponential part: a_j^{(Ay+b)_j} over all j
            let mut const_factor = BigRational::one();
            let mut new_bases = vec![BigRational::one(); new_arity];
            for (j, base) in key.bases.iter().enumerate() {
                if base.is_one() {
                    continue;
                }
                const_factor *= Scalar::rational_pow(base, b[j]);
                for (v, nb) in new_bases.iter_mut().enumerate() {
                    *nb *= Scalar::rational_pow(base, a[j][v]);
                }
            }
            let mut acc = ExpPoly::term(
                new_arity,
                vec![0; new_arity],
                new_bases,
                coeff * &Scalar::from_rational(const_factor),
            )?;
            // polynomial part: ((Ay+b)_j)^{k_j} expanded symbolically
            for (j, &k) in key.powers.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut linear = ExpPoly::constant(new_arity, Scalar::from_int(b[j]));
                for (v, &coef) in a[j].iter().enumerate() {
                    if coef != 0 {
                        linear = linear
                            .add(&ExpPoly::var(new_arity, v).scale(&Scalar::from_int(coef)))?;
                    }
                }
                acc = acc.mul(&linear.pow(k)?)?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Split off the variables in `subset`: returns pairs `(f_p, sig_p)` with
    /// pairwise-distinct signatures over `subset` such that
    /// `self = sum_p f_p * sig_p` exactly. `f_p` lives on the complement
    /// variables (in their original order).
    pub fn expand_in_subset(&self, subset: &[usize]) -> Vec<(ExpPoly, TermKey)> {
        let complement: Vec<usize> = (0..self.arity).filter(|v| !subset.contains(v)).collect();
        let mut groups: BTreeMap<TermKey, ExpPoly> = BTreeMap::new();
        for (key, coeff) in &self.terms {
            let sig = TermKey {
                powers: subset.iter().map(|&v| key.powers[v]).collect(),
                bases: subset.iter().map(|&v| key.bases[v].clone()).collect(),
            };
            let rest = TermKey {
                powers: complement.iter().map(|&v| key.powers[v]).collect(),
                bases: complement.iter().map(|&v| key.bases[v].clone()).collect(),
            };
            groups
                .entry(sig)
                .or_insert_with(|| ExpPoly::zero(complement.len()))
                .insert(rest, coeff.clone());
        }
        groups.into_iter().map(|(sig, f)| (f, sig)).collect()
    }

    /// Re-embed into a larger arity, sending variable `v` to `var_map[v]`.
    pub fn promote(&self, new_arity: usize, var_map: &[usize]) -> Result<ExpPoly> {
        if var_map.len() != self.arity {
            return Err(Error::Arity("promote: map length != arity".into()));
        }
        if var_map.iter().any(|&v| v >= new_arity) {
            return Err(Error::Arity("promote: target variable out of range".into()));
        }
        let mut out = ExpPoly::zero(new_arity);
        for (key, coeff) in &self.terms {
            let mut nk = TermKey::unit(new_arity);
            for (v, &target) in var_map.iter().enumerate() {
                nk.powers[target] += key.powers[v];
                let nb = &nk.bases[target] * &key.bases[v];
                nk.bases[target] = nb;
            }
            out.insert(nk, coeff.clone());
        }
        Ok(out)
    }
}

/// Build a canonical exp-polynomial from raw `(key, coefficient)` pairs.
///
/// Duplicate keys are merged and zero coefficients dropped; zero bases and
/// inconsistent arities are rejected.
pub fn normalize(arity: usize, raw: Vec<(TermKey, Scalar)>) -> Result<ExpPoly> {
    let mut out = ExpPoly::zero(arity);
    for (key, coeff) in raw {
        if key.powers.len() != arity || key.bases.len() != arity {
            return Err(Error::Arity(format!(
                "term arity {} != declared arity {arity}",
                key.powers.len().max(key.bases.len())
            )));
        }
        if key.bases.iter().any(|b| b.is_zero()) {
            return Err(Error::InvalidBase("term with zero base".into()));
        }
        out.insert(key, coeff);
    }
    Ok(out)
}

/// The closure operations behind one entry point, mirroring the module
/// contract. `Scale` reads its scalar from `scale_by`.
pub fn combine(
    op: CombineOp,
    f: &ExpPoly,
    g: Option<&ExpPoly>,
    scale_by: Option<&Scalar>,
) -> Result<ExpPoly> {
    match op {
        CombineOp::Add => f.add(g.ok_or_else(|| Error::Arity("add needs two operands".into()))?),
        CombineOp::Mul => f.mul(g.ok_or_else(|| Error::Arity("mul needs two operands".into()))?),
        CombineOp::Scale => {
            Ok(f.scale(scale_by.ok_or_else(|| Error::Arity("scale needs a scalar".into()))?))
        }
    }
}

/// Reassemble `sum_p f_p * sig_p` from [`ExpPoly::expand_in_subset`] output.
pub fn recombine(pairs: &[(ExpPoly, TermKey)], subset: &[usize], arity: usize) -> Result<ExpPoly> {
    let complement: Vec<usize> = (0..arity).filter(|v| !subset.contains(v)).collect();
    let mut out = ExpPoly::zero(arity);
    for (f, sig) in pairs {
        let f_embedded = f.promote(arity, &complement)?;
        let sig_embedded = normalize(
            arity,
            vec![(
                TermKey {
                    powers: {
                        let mut p = vec![0; arity];
                        for (&v, &pw) in subset.iter().zip(&sig.powers) {
                            p[v] = pw;
                        }
                        p
                    },
                    bases: {
                        let mut b = vec![BigRational::one(); arity];
                        for (&v, base) in subset.iter().zip(&sig.bases) {
                            b[v] = base.clone();
                        }
                        b
                    },
                },
                Scalar::one(),
            )],
        )?;
        out = out.add(&f_embedded.mul(&sig_embedded)?)?;
    }
    Ok(out)
}

/// Tensor grid on which the given distinct term signatures are linearly
/// independent as functions.
///
/// Per variable, the factor set is completed to full power ranges per base
/// (powers `0..=max`), and the grid takes the points `0..s_v-1` where `s_v`
/// is the completed factor count. The evaluation matrix of the completed
/// tensor family on this grid is a Kronecker product of extended Vandermonde
/// matrices, hence invertible; the input functions are a subset of that
/// family, so their value vectors on the grid stay independent.
pub fn independence_grid(signatures: &[TermKey]) -> Result<Vec<Vec<i64>>> {
    if signatures.is_empty() {
        return Ok(vec![]);
    }
    let arity = signatures[0].arity();
    let mut seen = std::collections::BTreeSet::new();
    for sig in signatures {
        if sig.arity() != arity {
            return Err(Error::Arity("signatures of mixed arity".into()));
        }
        if !seen.insert(sig.clone()) {
            return Err(Error::Duplicate(format!("signature repeated: {sig:?}")));
        }
    }
    let mut ranges: Vec<Vec<i64>> = Vec::with_capacity(arity);
    for v in 0..arity {
        let mut max_pow: BTreeMap<BigRational, u32> = BTreeMap::new();
        for sig in signatures {
            let e = max_pow.entry(sig.bases[v].clone()).or_insert(0);
            *e = (*e).max(sig.powers[v]);
        }
        let s_v: u32 = max_pow.values().map(|&m| m + 1).sum();
        ranges.push((0..s_v as i64).collect());
    }
    Ok(ranges.into_iter().multi_cartesian_product().collect())
}

/// Value matrix of the signature functions on a grid: one row per grid
/// point, one column per signature.
pub fn grid_matrix(signatures: &[TermKey], grid: &[Vec<i64>]) -> ExactMatrix {
    let mut m = ExactMatrix::zero(grid.len(), signatures.len());
    for (r, point) in grid.iter().enumerate() {
        for (c, sig) in signatures.iter().enumerate() {
            m.set(r, c, Scalar::from_rational(sig.eval_rational(point)));
        }
    }
    m
}

fn fmt_base(b: &BigRational) -> String {
    if b.denom().is_one() && !num::Signed::is_negative(b) {
        format!("{}", b.numer())
    } else if b.denom().is_one() {
        format!("({})", b.numer())
    } else {
        format!("({}/{})", b.numer(), b.denom())
    }
}

impl std::fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (key, coeff) in &self.terms {
            let mut factors = Vec::new();
            let cs = coeff.to_string();
            let simple = !cs.contains(' ') && !cs.contains('/') && !cs.starts_with('-');
            if !coeff.is_one() || key.is_unit() {
                factors.push(if simple { cs } else { format!("({cs})") });
            }
            for (v, (&k, b)) in key.powers.iter().zip(&key.bases).enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("n{}", v + 1)),
                    _ => factors.push(format!("n{}^{}", v + 1, k)),
                }
                if !b.is_one() {
                    factors.push(format!("{}^n{}", fmt_base(b), v + 1));
                }
            }
            parts.push(factors.join("*"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for ExpPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
