//! Exp-polynomial modules over the degree-zero part of an extragraded
//! algebra: lattice-graded modules with basis `v_j(beta)` and
//! finite-dimensional ones with basis `v_j`.
//!
//! Actions are tables `(k in K_0, j in J) -> [(s, h)]` where `h` is an
//! exp-polynomial in `(alpha, beta)` for the graded kind (the generator's
//! lattice weight and the target vector's weight) and in `alpha` alone for
//! the finite kind.

mod file;
mod registry;

pub use file::parse_module_file;
pub use registry::registry_module;

use crate::algebra::{AlgebraSpec, Generator, LieElement, SampleSpec};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::exppoly::ExpPoly;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModuleKind {
    Graded,
    Finite,
}

/// One action entry: targets and exp-polynomial coefficients.
pub type ActionTerms = Vec<(usize, ExpPoly)>;

pub(crate) type ActionRule = Arc<dyn Fn(usize, usize) -> ActionTerms + Send + Sync>;
pub(crate) type ActionMap = BTreeMap<(usize, usize), ActionTerms>;

#[derive(Clone)]
pub(crate) enum ActionTable {
    Rule(ActionRule),
    Table(ActionMap),
}

/// Memoized lookups shared across clones; contents are immutable once
/// computed.
type Memo<K, V> = Arc<Mutex<HashMap<K, V>>>;

#[derive(Clone, Default)]
pub(crate) struct ModuleCaches {
    action: Memo<(usize, usize), Arc<ActionTerms>>,
    act: Memo<(Generator, usize, Vec<i64>), VectorInV>,
}

/// A `G^(0)` module with exp-polynomial action.
#[derive(Clone)]
pub struct ModuleSpec {
    pub(crate) name: String,
    pub(crate) algebra: String,
    pub(crate) kind: ModuleKind,
    pub(crate) n: usize,
    pub(crate) basis: Vec<String>,
    pub(crate) k0_count: usize,
    pub(crate) action: ActionTable,
    pub(crate) caches: ModuleCaches,
}

impl std::fmt::Debug for ModuleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleSpec")
            .field("name", &self.name)
            .field("algebra", &self.algebra)
            .field("kind", &self.kind)
            .field("basis", &self.basis)
            .finish()
    }
}

/// Element of `V`: finite combination of `(j, weight)` basis vectors.
/// The weight is empty for the finite kind.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VectorInV {
    terms: BTreeMap<(usize, Vec<i64>), Scalar>,
}

impl VectorInV {
    pub fn zero() -> Self {
        VectorInV::default()
    }

    pub fn basis_vector(j: usize, weight: Vec<i64>) -> Self {
        let mut v = VectorInV::zero();
        v.insert(j, weight, Scalar::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, j: usize, weight: Vec<i64>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((j, weight)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &VectorInV) -> VectorInV {
        let mut out = self.clone();
        for ((j, w), c) in &other.terms {
            out.insert(*j, w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> VectorInV {
        if c.is_zero() {
            return VectorInV::zero();
        }
        VectorInV {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, Vec<i64>), &Scalar)> {
        self.terms.iter()
    }
}

impl ModuleSpec {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        name: String,
        algebra: String,
        kind: ModuleKind,
        n: usize,
        basis: Vec<String>,
        k0_count: usize,
        action: ActionTable,
    ) -> Self {
        ModuleSpec {
            name,
            algebra,
            kind,
            n,
            basis,
            k0_count,
            action,
            caches: ModuleCaches::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Name of the algebra this module pairs with.
    pub fn algebra_name(&self) -> &str {
        &self.algebra
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn lattice_rank(&self) -> usize {
        self.n
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    /// Arity of the action functions: 2n for graded, n for finite.
    pub fn action_arity(&self) -> usize {
        match self.kind {
            ModuleKind::Graded => 2 * self.n,
            ModuleKind::Finite => self.n,
        }
    }

    /// Raw action entry for `(k in K_0, j in J)`. Memoized.
    pub fn action(&self, k: usize, j: usize) -> Result<Arc<ActionTerms>> {
        if k >= self.k0_count {
            return Err(Error::Unknown(format!("family index {k} not in K_0")));
        }
        if j >= self.basis.len() {
            return Err(Error::Unknown(format!("basis index {j} out of range")));
        }
        if let Some(hit) = self.caches.action.lock().unwrap().get(&(k, j)) {
            return Ok(hit.clone());
        }
        let entry = Arc::new(match &self.action {
            ActionTable::Rule(rule) => rule(k, j),
            ActionTable::Table(t) => t.get(&(k, j)).cloned().unwrap_or_default(),
        });
        self.caches
            .action
            .lock()
            .unwrap()
            .insert((k, j), entry.clone());
        Ok(entry)
    }

    /// Weight vector for the finite kind (empty) or a lattice point.
    pub fn unit_weight(&self) -> Vec<i64> {
        match self.kind {
            ModuleKind::Graded => vec![0; self.n],
            ModuleKind::Finite => Vec::new(),
        }
    }
}

/// Apply a degree-zero generator to a vector; generators of nonzero
/// extragrading degree are rejected here.
pub fn act(g: &Generator, v: &VectorInV, m: &ModuleSpec) -> Result<VectorInV> {
    if g.degree.i != 0 {
        return Err(Error::Degree(format!(
            "only G^(0) acts on V; generator has degree {}",
            g.degree.i
        )));
    }
    if g.degree.alpha.len() != m.n {
        return Err(Error::Arity(
            "generator lattice weight has wrong rank".into(),
        ));
    }
    let mut out = VectorInV::zero();
    for ((j, weight), coeff) in v.iter() {
        let base = act_on_basis(g, *j, weight, m)?;
        out = out.add(&base.scale(coeff));
    }
    Ok(out)
}

/// Action on a single basis vector, memoized.
fn act_on_basis(g: &Generator, j: usize, weight: &[i64], m: &ModuleSpec) -> Result<VectorInV> {
    let key = (g.clone(), j, weight.to_vec());
    if let Some(hit) = m.caches.act.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let point: Vec<i64> = match m.kind {
        ModuleKind::Graded => g
            .degree
            .alpha
            .iter()
            .chain(weight.iter())
            .copied()
            .collect(),
        ModuleKind::Finite => g.degree.alpha.clone(),
    };
    let target_weight: Vec<i64> = match m.kind {
        ModuleKind::Graded => g
            .degree
            .alpha
            .iter()
            .zip(weight.iter())
            .map(|(a, b)| a + b)
            .collect(),
        ModuleKind::Finite => Vec::new(),
    };
    let mut out = VectorInV::zero();
    for (s, h) in m.action(g.family, j)?.iter() {
        let c = h.evaluate(&point)?;
        out.insert(*s, target_weight.clone(), c);
    }
    m.caches.act.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// Apply a degree-zero Lie element linearly.
pub fn act_elem(x: &LieElement, v: &VectorInV, m: &ModuleSpec) -> Result<VectorInV> {
    let mut out = VectorInV::zero();
    for (g, c) in x.iter() {
        out = out.add(&act(g, v, m)?.scale(c));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatReport {
    pub module: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CompatReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify `g.(h.v) - h.(g.v) = [g,h].v` exactly on sampled degree-zero
/// generator pairs and basis vectors.
pub fn check_compatibility(
    m: &ModuleSpec,
    a: &AlgebraSpec,
    sample: &SampleSpec,
) -> Result<CompatReport> {
    if m.algebra != a.name() {
        return Err(Error::Param(format!(
            "module `{}` pairs with algebra `{}`, got `{}`",
            m.name,
            m.algebra,
            a.name()
        )));
    }
    let coords: Vec<i64> = (-sample.coord_bound..=sample.coord_bound).collect();
    let points = crate::algebra::lattice_box(m.n, &coords);
    let mut gens = Vec::new();
    for k in 0..a.family_count(0) {
        for alpha in &points {
            gens.push(Generator::new(0, alpha.clone(), k));
        }
    }
    let mut vectors = Vec::new();
    for j in 0..m.basis_len() {
        match m.kind {
            ModuleKind::Graded => {
                for w in &points {
                    vectors.push(VectorInV::basis_vector(j, w.clone()));
                }
            }
            ModuleKind::Finite => vectors.push(VectorInV::basis_vector(j, Vec::new())),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sample.seed);
    let mut violations = Vec::new();
    let mut checked = 0;
    for _ in 0..sample.samples {
        let g = gens.choose(&mut rng).expect("nonempty generators");
        let h = gens.choose(&mut rng).expect("nonempty generators");
        let v = vectors.choose(&mut rng).expect("nonempty basis");
        let lhs =
            act(g, &act(h, v, m)?, m)?.add(&act(h, &act(g, v, m)?, m)?.scale(&-&Scalar::one()));
        let rhs = act_elem(&a.bracket(g, h)?, v, m)?;
        checked += 1;
        if lhs != rhs {
            violations.push(format!("compatibility fails at g={g:?}, h={h:?}, v={v:?}"));
        }
    }
    Ok(CompatReport {
        module: m.name.clone(),
        checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::registry_algebra;
    use std::collections::BTreeMap as Map;

    fn params(pairs: &[(&str, &str)]) -> Map<String, String> {
        pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn example17_action() {
        // L_{0,1} v_0 = f(1) v_1 with f(k) = 2^k
        let a = registry_algebra("virasoro-like", &params(&[])).unwrap();
        let m = registry_module("vlike", &params(&[("f", "2^n1")]), &a).unwrap();
        let g = Generator::new(0, vec![1], 0);
        let v = VectorInV::basis_vector(0, vec![0]);
        let out = act(&g, &v, &m).unwrap();
        let terms: Vec<_> = out.iter().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, &(0, vec![1]));
        assert_eq!(*terms[0].1, Scalar::from_int(2));
    }

    #[test]
    fn example23_vanishing_highest_weight() {
        // t^0 . 1 = f(0) = 0 for f(alpha) = alpha_1
        let a = registry_algebra("quantum-torus", &params(&[])).unwrap();
        let m = registry_module("highest", &params(&[("f", "n1")]), &a).unwrap();
        let g = Generator::new(0, vec![0], 0);
        let v = VectorInV::basis_vector(0, Vec::new());
        assert!(act(&g, &v, &m).unwrap().is_zero());
    }

    #[test]
    fn vir_module_action_examples() {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        // lambda = mu = 0: d_a v_b = b v_{a+b} (in units of p); b = 0 kills
        let m0 = registry_module("vir", &params(&[("lambda", "0"), ("mu", "0")]), &a).unwrap();
        let g = Generator::new(0, vec![1], 0);
        let out = act(&g, &VectorInV::basis_vector(0, vec![0]), &m0).unwrap();
        assert!(out.is_zero());
        let out2 = act(&g, &VectorInV::basis_vector(0, vec![2]), &m0).unwrap();
        let terms: Vec<_> = out2.iter().collect();
        assert_eq!(terms[0].0, &(0, vec![3]));
        assert_eq!(*terms[0].1, &Scalar::from_int(2) * &Scalar::p());

        // generic: a = p, b = 2p gives (2p + 1/2 + p/3) = 1/2 + (7/3) p
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        let out3 = act(&g, &VectorInV::basis_vector(0, vec![2]), &m).unwrap();
        let terms3: Vec<_> = out3.iter().collect();
        assert_eq!(terms3[0].0, &(0, vec![3]));
        let want = &Scalar::rational(1, 2) + &(&Scalar::rational(7, 3) * &Scalar::p());
        assert_eq!(*terms3[0].1, want);
    }

    #[test]
    fn example20_action() {
        // t^(1) . t^(0) = 2^1 t^(1) for f(alpha, beta) = 2^{alpha_1}
        let a = registry_algebra("quantum-torus", &params(&[])).unwrap();
        let m = registry_module("qtorus", &params(&[("f", "2^n1")]), &a).unwrap();
        let g = Generator::new(0, vec![1], 0);
        let out = act(&g, &VectorInV::basis_vector(0, vec![0]), &m).unwrap();
        let terms: Vec<_> = out.iter().collect();
        assert_eq!(terms[0].0, &(0, vec![1]));
        assert_eq!(*terms[0].1, Scalar::from_int(2));
    }

    #[test]
    fn zero_vector_and_degree_errors() {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        let g = Generator::new(0, vec![1], 0);
        assert!(act(&g, &VectorInV::zero(), &m).unwrap().is_zero());
        let raising = Generator::new(1, vec![0], 0);
        assert!(matches!(
            act(&raising, &VectorInV::basis_vector(0, vec![0]), &m),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn compatibility_on_registry_modules() {
        let sample = SampleSpec {
            degree_bound: 0,
            coord_bound: 2,
            samples: 60,
            seed: 5,
        };
        type Case = (
            &'static str,
            Map<String, String>,
            &'static str,
            Map<String, String>,
        );
        let cases: Vec<Case> = vec![
            ("toroidal-sl2", params(&[]), "loop", params(&[("q", "2")])),
            ("virasoro-like", params(&[]), "vlike", params(&[])),
            ("quantum-torus", params(&[]), "qtorus", params(&[])),
            ("toroidal-sl2", params(&[]), "tensor", params(&[("q", "2")])),
            ("quantum-torus", params(&[]), "highest", params(&[])),
            ("generalized-virasoro", params(&[]), "vir", params(&[])),
        ];
        for (aname, aps, mname, mps) in cases {
            let a = registry_algebra(aname, &aps).unwrap();
            let m = registry_module(mname, &mps, &a).unwrap();
            let report = check_compatibility(&m, &a, &sample).unwrap();
            assert!(report.passed(), "{mname}: {:?}", report.violations);
        }
    }

    #[test]
    fn perturbed_action_fails_compatibility() {
        let a = registry_algebra("generalized-virasoro", &params(&[])).unwrap();
        let m = registry_module("vir", &params(&[]), &a).unwrap();
        // shift the action coefficient by alpha^2, breaking the module axiom
        let ActionTable::Rule(rule) = m.action.clone() else {
            panic!("registry module uses a rule");
        };
        let bad = ModuleSpec::new(
            "perturbed".into(),
            m.algebra.clone(),
            m.kind,
            m.n,
            m.basis.clone(),
            m.k0_count,
            ActionTable::Rule(Arc::new(move |k, j| {
                rule(k, j)
                    .into_iter()
                    .map(|(s, h)| {
                        let sq = ExpPoly::var(2, 0).pow(2).unwrap();
                        (s, h.add(&sq).unwrap())
                    })
                    .collect()
            })),
        );
        let report = check_compatibility(&bad, &a, &SampleSpec::default()).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn abelian_zero_part_compatibility_is_cancellation() {
        // quantum-torus K_0 is abelian: the bracket side vanishes and the
        // two action orders must cancel exactly
        let a = registry_algebra("quantum-torus", &params(&[])).unwrap();
        let m = registry_module("qtorus", &params(&[]), &a).unwrap();
        let g = Generator::new(0, vec![2], 0);
        let h = Generator::new(0, vec![-1], 0);
        assert!(a.bracket(&g, &h).unwrap().is_zero());
        let v = VectorInV::basis_vector(0, vec![1]);
        let gh = act(&g, &act(&h, &v, &m).unwrap(), &m).unwrap();
        let hg = act(&h, &act(&g, &v, &m).unwrap(), &m).unwrap();
        assert_eq!(gh, hg);
    }
}
