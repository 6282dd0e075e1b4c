//! Poisson (2-3)-algebras given by structure constants.
//!
//! An [`Algebra`] is a finite-dimensional vector space carrying a commutative
//! associative product and an alternating ternary bracket, both stored as
//! sparse tensors over basis indices. Products are canonically keyed by
//! `i <= j` and brackets by `i < j < k`; evaluation resolves arbitrary index
//! tuples through commutativity resp. antisymmetry. The maps may also hold
//! redundant non-canonical entries (a test surface for the axiom checker),
//! in which case [`Algebra::check_axioms`] re-verifies their consistency.

use crate::scalar::{add_scaled, FieldDesc, Scalar, ScalarError};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// Default cap on the dimension admitted to the O(n^5) axiom scan.
pub const DEFAULT_DIMENSION_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate structure-constant entry at {key}")]
    DuplicateEntry { key: String },
    #[error("coordinate vector has length {got}, expected {expected}")]
    CoordsLength { got: usize, expected: usize },
    #[error("labels list has length {got}, expected {expected}")]
    LabelsLength { got: usize, expected: usize },
    #[error("operands belong to different algebras (dimension or field mismatch)")]
    Mismatch,
    #[error("dimension {dim} exceeds the axiom-scan cap {cap} (override with --max-dim)")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("change-of-basis matrix is singular")]
    SingularBasis,
}

/// An element of an algebra: a coordinate vector over the algebra's field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.coords.len(), other.coords.len());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.coords.len(), other.coords.len());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            coords: self.coords.iter().map(|a| c * a).collect(),
        }
    }
}

/// Named axiom (or derived-identity) families reported by the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomKind {
    Commutativity,
    Associativity,
    Alternating,
    Filippov,
    Leibniz,
    Identity,
    BracketSigns,
    DerivationSlot2,
    DerivationSlot3,
    ProductExpansionSlot1,
    ProductExpansionSlot2,
    ProductExpansionSlot3,
    TripleProductExpansion,
    PowerRule,
}

impl AxiomKind {
    pub fn name(&self) -> &'static str {
        match self {
            AxiomKind::Commutativity => "commutativity",
            AxiomKind::Associativity => "associativity",
            AxiomKind::Alternating => "alternating",
            AxiomKind::Filippov => "filippov",
            AxiomKind::Leibniz => "leibniz",
            AxiomKind::Identity => "identity",
            AxiomKind::BracketSigns => "bracket_signs",
            AxiomKind::DerivationSlot2 => "derivation_slot2",
            AxiomKind::DerivationSlot3 => "derivation_slot3",
            AxiomKind::ProductExpansionSlot1 => "product_expansion_slot1",
            AxiomKind::ProductExpansionSlot2 => "product_expansion_slot2",
            AxiomKind::ProductExpansionSlot3 => "product_expansion_slot3",
            AxiomKind::TripleProductExpansion => "triple_product_expansion",
            AxiomKind::PowerRule => "power_rule",
        }
    }
}

/// One failed identity instance. Witness indices are 1-based, matching the
/// `e_1, ..., e_n` numbering used in files and reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: AxiomKind,
    pub witness: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

/// Outcome of an axiom or derived-identity verification.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: AxiomKind, witness: Vec<usize>, lhs: Vec<Scalar>, rhs: Vec<Scalar>) {
        self.violations.push(Violation {
            axiom,
            witness,
            lhs,
            rhs,
        });
    }

    fn sort(&mut self) {
        self.violations
            .sort_by(|a, b| (a.axiom, &a.witness).cmp(&(b.axiom, &b.witness)));
    }
}

/// A finite-dimensional Poisson (2-3)-algebra over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    field: FieldDesc,
    product: BTreeMap<(usize, usize), Vec<Scalar>>,
    bracket: BTreeMap<(usize, usize, usize), Vec<Scalar>>,
    identity: Option<Vec<Scalar>>,
    labels: Option<Vec<String>>,
}

/// Incremental construction of an [`Algebra`], validating indices, lengths
/// and field membership entry by entry. Keys may be given in any index
/// order; the exact same key twice is rejected.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    inner: Algebra,
}

impl AlgebraBuilder {
    pub fn new(dim: usize, field: FieldDesc) -> Self {
        AlgebraBuilder {
            inner: Algebra {
                dim,
                field,
                product: BTreeMap::new(),
                bracket: BTreeMap::new(),
                identity: None,
                labels: None,
            },
        }
    }

    fn check_coords(&self, coords: &[Scalar]) -> Result<(), AlgebraError> {
        if coords.len() != self.inner.dim {
            return Err(AlgebraError::CoordsLength {
                got: coords.len(),
                expected: self.inner.dim,
            });
        }
        for c in coords {
            if c.field() != self.inner.field {
                return Err(ScalarError::FieldMismatch(c.field(), self.inner.field).into());
            }
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<(), AlgebraError> {
        if index >= self.inner.dim {
            return Err(AlgebraError::IndexOutOfRange {
                index,
                dim: self.inner.dim,
            });
        }
        Ok(())
    }

    /// Sets the coordinates of `e_i * e_j` (0-based indices).
    pub fn product_entry(
        &mut self,
        i: usize,
        j: usize,
        coords: Vec<Scalar>,
    ) -> Result<&mut Self, AlgebraError> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_coords(&coords)?;
        if self.inner.product.contains_key(&(i, j)) {
            return Err(AlgebraError::DuplicateEntry {
                key: format!("product ({}, {})", i + 1, j + 1),
            });
        }
        self.inner.product.insert((i, j), coords);
        Ok(self)
    }

    /// Sets the coordinates of `[e_i, e_j, e_k]` (0-based indices).
    pub fn bracket_entry(
        &mut self,
        i: usize,
        j: usize,
        k: usize,
        coords: Vec<Scalar>,
    ) -> Result<&mut Self, AlgebraError> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_index(k)?;
        self.check_coords(&coords)?;
        if self.inner.bracket.contains_key(&(i, j, k)) {
            return Err(AlgebraError::DuplicateEntry {
                key: format!("bracket ({}, {}, {})", i + 1, j + 1, k + 1),
            });
        }
        self.inner.bracket.insert((i, j, k), coords);
        Ok(self)
    }

    pub fn identity(&mut self, coords: Vec<Scalar>) -> Result<&mut Self, AlgebraError> {
        self.check_coords(&coords)?;
        self.inner.identity = Some(coords);
        Ok(self)
    }

    pub fn labels(&mut self, labels: Vec<String>) -> Result<&mut Self, AlgebraError> {
        if labels.len() != self.inner.dim {
            return Err(AlgebraError::LabelsLength {
                got: labels.len(),
                expected: self.inner.dim,
            });
        }
        self.inner.labels = Some(labels);
        Ok(self)
    }

    /// Finishes construction. All-zero coordinate vectors are dropped so
    /// that structurally equal algebras have identical sparse maps.
    pub fn build(self) -> Algebra {
        let mut alg = self.inner;
        alg.product.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        alg.bracket.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        alg
    }
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn identity(&self) -> Option<&[Scalar]> {
        self.identity.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn identity_element(&self) -> Option<Element> {
        self.identity.as_ref().map(|c| Element { coords: c.clone() })
    }

    /// Stored product entries, keys 0-based in storage order.
    pub fn product_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Scalar>)> {
        self.product.iter()
    }

    /// Stored bracket entries, keys 0-based in storage order.
    pub fn bracket_entries(
        &self,
    ) -> impl Iterator<Item = (&(usize, usize, usize), &Vec<Scalar>)> {
        self.bracket.iter()
    }

    pub fn zero_coords(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn zero_element(&self) -> Element {
        Element {
            coords: self.zero_coords(),
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        assert!(i < self.dim, "basis index out of range");
        let mut coords = self.zero_coords();
        coords[i] = self.field.one();
        Element { coords }
    }

    /// Wraps a coordinate vector, validating its length and field.
    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        if coords.len() != self.dim {
            return Err(AlgebraError::CoordsLength {
                got: coords.len(),
                expected: self.dim,
            });
        }
        for c in &coords {
            if c.field() != self.field {
                return Err(ScalarError::FieldMismatch(c.field(), self.field).into());
            }
        }
        Ok(Element { coords })
    }

    /// Convenience constructor from small integers.
    pub fn element_from_i64(&self, coords: &[i64]) -> Result<Element, AlgebraError> {
        self.element(coords.iter().map(|&n| self.field.from_i64(n)).collect())
    }

    pub fn is_compatible(&self, e: &Element) -> bool {
        e.coords.len() == self.dim && e.coords.iter().all(|c| c.field() == self.field)
    }

    fn check_compatible(&self, e: &Element) -> Result<(), AlgebraError> {
        if self.is_compatible(e) {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch)
        }
    }

    // ---- tensor lookups ----

    fn product_table(&self, i: usize, j: usize) -> Option<&Vec<Scalar>> {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.product.get(&(a, b)).or_else(|| self.product.get(&(b, a)))
    }

    /// Resolves `[e_i, e_j, e_k]` from stored entries; the bool asks for
    /// negation of the stored row. Repeated indices resolve to zero unless a
    /// (corrupt) entry is stored at exactly that key.
    fn bracket_table(&self, i: usize, j: usize, k: usize) -> Option<(&Vec<Scalar>, bool)> {
        if i == j || j == k || i == k {
            return self.bracket.get(&(i, j, k)).map(|v| (v, false));
        }
        let mut s = [i, j, k];
        s.sort_unstable();
        let candidates = [
            (s[0], s[1], s[2]),
            (s[0], s[2], s[1]),
            (s[1], s[0], s[2]),
            (s[1], s[2], s[0]),
            (s[2], s[0], s[1]),
            (s[2], s[1], s[0]),
        ];
        for key in candidates {
            if let Some(v) = self.bracket.get(&key) {
                return Some((v, parity_differs(key, (i, j, k))));
            }
        }
        None
    }

    // ---- evaluation on raw coordinate rows ----

    /// Coordinates of `e_i * e_j`.
    pub(crate) fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        match self.product_table(i, j) {
            Some(v) => v.clone(),
            None => self.zero_coords(),
        }
    }

    /// Coordinates of `[e_i, e_j, e_k]`.
    pub(crate) fn bracket_basis(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        match self.bracket_table(i, j, k) {
            Some((v, negate)) => {
                if negate {
                    v.iter().map(|c| -c).collect()
                } else {
                    v.clone()
                }
            }
            None => self.zero_coords(),
        }
    }

    /// Bilinear product of coordinate rows.
    pub(crate) fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_coords();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                if let Some(v) = self.product_table(i, j) {
                    add_scaled(&mut out, &(xi * yj), v);
                }
            }
        }
        out
    }

    /// Trilinear bracket of coordinate rows.
    pub(crate) fn bracket_coords(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_coords();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, zk) in z.iter().enumerate() {
                    if zk.is_zero() {
                        continue;
                    }
                    if let Some((v, negate)) = self.bracket_table(i, j, k) {
                        let mut w = &c * zk;
                        if negate {
                            w = -&w;
                        }
                        add_scaled(&mut out, &w, v);
                    }
                }
            }
        }
        out
    }

    /// `v * e_k` for a coordinate row `v`.
    pub(crate) fn mul_row_basis(&self, v: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = self.zero_coords();
        for (l, vl) in v.iter().enumerate() {
            if vl.is_zero() {
                continue;
            }
            if let Some(w) = self.product_table(l, k) {
                add_scaled(&mut out, vl, w);
            }
        }
        out
    }

    /// `[v, e_j, e_k]`, `[e_i, v, e_k]` or `[e_i, e_j, v]` depending on `slot`.
    fn bracket_row_basis(&self, slot: usize, v: &[Scalar], a: usize, b: usize) -> Vec<Scalar> {
        let mut out = self.zero_coords();
        for (l, vl) in v.iter().enumerate() {
            if vl.is_zero() {
                continue;
            }
            let resolved = match slot {
                0 => self.bracket_table(l, a, b),
                1 => self.bracket_table(a, l, b),
                _ => self.bracket_table(a, b, l),
            };
            if let Some((w, negate)) = resolved {
                let c = if negate { -vl } else { vl.clone() };
                add_scaled(&mut out, &c, w);
            }
        }
        out
    }

    /// `[v, e_j, e_k]` for a coordinate row `v`.
    pub(crate) fn bracket_row_first(&self, v: &[Scalar], j: usize, k: usize) -> Vec<Scalar> {
        self.bracket_row_basis(0, v, j, k)
    }

    // ---- public evaluation ----

    pub fn product(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_compatible(x)?;
        self.check_compatible(y)?;
        Ok(Element {
            coords: self.mul_coords(&x.coords, &y.coords),
        })
    }

    pub fn bracket(&self, x: &Element, y: &Element, z: &Element) -> Result<Element, AlgebraError> {
        self.check_compatible(x)?;
        self.check_compatible(y)?;
        self.check_compatible(z)?;
        Ok(Element {
            coords: self.bracket_coords(&x.coords, &y.coords, &z.coords),
        })
    }

    // ---- axiom verification ----

    /// Runs the full axiom scan with the default dimension cap.
    pub fn check_axioms(&self) -> Result<AxiomReport, AlgebraError> {
        self.check_axioms_capped(DEFAULT_DIMENSION_CAP)
    }

    /// Verifies the defining identities on basis tuples (sufficient by
    /// multilinearity): consistency of redundant stored entries, identity
    /// element action, associativity on all n^3 triples, the Filippov
    /// identity on all n^5 tuples and the Leibniz identity on all n^4
    /// tuples. In characteristic 2 the alternating axiom is additionally
    /// checked on repeated basis tuples and on sums of basis pairs, where
    /// antisymmetry of the stored entries would not imply it.
    pub fn check_axioms_capped(&self, cap: usize) -> Result<AxiomReport, AlgebraError> {
        if self.dim > cap {
            return Err(AlgebraError::DimensionCapExceeded { dim: self.dim, cap });
        }
        let n = self.dim;
        let mut report = AxiomReport::default();

        // commutativity of redundant product entries
        for (&(i, j), stored) in &self.product {
            if i > j {
                if let Some(canonical) = self.product.get(&(j, i)) {
                    if canonical != stored {
                        report.push(
                            AxiomKind::Commutativity,
                            vec![j + 1, i + 1],
                            canonical.clone(),
                            stored.clone(),
                        );
                    }
                }
            }
        }

        // alternating, part 1: stored entries must respect the sign rules.
        // Entries with a repeated index survive build() only when nonzero;
        // all stored permutations of one index triple must agree up to sign
        // with the entry evaluation resolves to (the first stored candidate
        // in lookup preference order).
        type IndexTriple = (usize, usize, usize);
        let mut groups: BTreeMap<IndexTriple, Vec<IndexTriple>> = BTreeMap::new();
        for (&(i, j, k), stored) in &self.bracket {
            if i == j || j == k || i == k {
                report.push(
                    AxiomKind::Alternating,
                    vec![i + 1, j + 1, k + 1],
                    stored.clone(),
                    self.zero_coords(),
                );
                continue;
            }
            let mut s = [i, j, k];
            s.sort_unstable();
            groups.entry((s[0], s[1], s[2])).or_default().push((i, j, k));
        }
        for (&(a, b, c), keys) in &groups {
            if keys.len() < 2 {
                continue;
            }
            let candidates = [
                (a, b, c),
                (a, c, b),
                (b, a, c),
                (b, c, a),
                (c, a, b),
                (c, b, a),
            ];
            let reference = *candidates
                .iter()
                .find(|key| self.bracket.contains_key(key))
                .expect("group is nonempty");
            let ref_coords = &self.bracket[&reference];
            for &key in keys {
                if key == reference {
                    continue;
                }
                let negate = parity_differs(reference, key);
                let expected: Vec<Scalar> = if negate {
                    ref_coords.iter().map(|x| -x).collect()
                } else {
                    ref_coords.clone()
                };
                let stored = &self.bracket[&key];
                if expected != *stored {
                    report.push(
                        AxiomKind::Alternating,
                        vec![key.0 + 1, key.1 + 1, key.2 + 1],
                        stored.clone(),
                        expected,
                    );
                }
            }
        }

        // alternating, part 2 (char 2 only): antisymmetry does not imply the
        // alternating axiom, so check vanishing explicitly.
        if self.field.is_char_two() {
            for i in 0..n {
                for j in 0..n {
                    let v = self.bracket_basis(i, i, j);
                    if v.iter().any(|c| !c.is_zero()) {
                        report.push(
                            AxiomKind::Alternating,
                            vec![i + 1, i + 1, j + 1],
                            v,
                            self.zero_coords(),
                        );
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let mut x = self.zero_coords();
                    x[i] = self.field.one();
                    x[j] = self.field.one();
                    for z in 0..n {
                        let mut ez = self.zero_coords();
                        ez[z] = self.field.one();
                        let v = self.bracket_coords(&x, &x, &ez);
                        if v.iter().any(|c| !c.is_zero()) {
                            report.push(
                                AxiomKind::Alternating,
                                vec![i + 1, j + 1, z + 1],
                                v,
                                self.zero_coords(),
                            );
                        }
                    }
                }
            }
        }

        // associativity on basis triples
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    let lhs = self.mul_row_basis(&ij, k);
                    let jk = self.mul_basis(j, k);
                    let rhs = self.mul_row_basis(&jk, i);
                    if lhs != rhs {
                        report.push(AxiomKind::Associativity, vec![i + 1, j + 1, k + 1], lhs, rhs);
                    }
                }
            }
        }

        // Filippov identity on basis 5-tuples
        for a1 in 0..n {
            for a2 in 0..n {
                for a3 in 0..n {
                    let inner = self.bracket_basis(a1, a2, a3);
                    for b in 0..n {
                        for c in 0..n {
                            let lhs = self.bracket_row_basis(0, &inner, b, c);
                            let t1 = self.bracket_row_basis(0, &self.bracket_basis(a1, b, c), a2, a3);
                            let t2 = self.bracket_row_basis(1, &self.bracket_basis(a2, b, c), a1, a3);
                            let t3 = self.bracket_row_basis(2, &self.bracket_basis(a3, b, c), a1, a2);
                            let rhs = add_rows(&add_rows(&t1, &t2), &t3);
                            if lhs != rhs {
                                report.push(
                                    AxiomKind::Filippov,
                                    vec![a1 + 1, a2 + 1, a3 + 1, b + 1, c + 1],
                                    lhs,
                                    rhs,
                                );
                            }
                        }
                    }
                }
            }
        }

        // Leibniz (2-3)-identity on basis 4-tuples
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for b in 0..n {
                    for c in 0..n {
                        let lhs = self.bracket_row_basis(0, &ij, b, c);
                        let t1 = self.mul_row_basis(&self.bracket_basis(i, b, c), j);
                        let t2 = self.mul_row_basis(&self.bracket_basis(j, b, c), i);
                        let rhs = add_rows(&t1, &t2);
                        if lhs != rhs {
                            report.push(
                                AxiomKind::Leibniz,
                                vec![i + 1, j + 1, b + 1, c + 1],
                                lhs,
                                rhs,
                            );
                        }
                    }
                }
            }
        }

        // declared identity element
        if let Some(one) = &self.identity {
            for i in 0..n {
                let mut ei = self.zero_coords();
                ei[i] = self.field.one();
                let lhs = self.mul_coords(one, &ei);
                if lhs != ei {
                    report.push(AxiomKind::Identity, vec![i + 1], lhs, ei);
                }
            }
        }

        report.sort();
        Ok(report)
    }

    /// Verifies the theorem-level consequences of the axioms on `trials`
    /// seeded pseudo-random element tuples: the six sign relations of the
    /// bracket, the bracket acting as a derivation in slots 2 and 3, the
    /// product-expansion identities for up to three factors per slot, and
    /// the power rule `[a^k, b^s, c^t] = kst a^(k-1) b^(s-1) c^(t-1) [a,b,c]`
    /// for exponents in {1,2,3}. Failures indicate an implementation bug,
    /// never a property of the input, provided the axioms hold.
    pub fn verify_derived_identities(&self, trials: u32, seed: u64) -> AxiomReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = AxiomReport::default();
        let exponent_grid: Vec<(usize, usize, usize)> = (1..=3)
            .flat_map(|k| (1..=3).flat_map(move |s| (1..=3).map(move |t| (k, s, t))))
            .collect();

        for trial in 1..=(trials as usize) {
            let a = self.sample(&mut rng);
            let b = self.sample(&mut rng);
            let c = self.sample(&mut rng);
            let base = self.bracket_coords(&a, &b, &c);

            // sign relations: [a,b,c] = [b,c,a] = [c,a,b]
            //                                     = -[a,c,b] = -[b,a,c] = -[c,b,a]
            let neg_base: Vec<Scalar> = base.iter().map(|x| -x).collect();
            type SignRelation<'a> = (&'a [Scalar], &'a [Scalar], &'a [Scalar], &'a Vec<Scalar>);
            let relations: [SignRelation; 5] = [
                (&b, &c, &a, &base),
                (&c, &a, &b, &base),
                (&a, &c, &b, &neg_base),
                (&b, &a, &c, &neg_base),
                (&c, &b, &a, &neg_base),
            ];
            for (idx, (x, y, z, expected)) in relations.iter().enumerate() {
                let got = self.bracket_coords(x, y, z);
                if got != **expected {
                    report.push(
                        AxiomKind::BracketSigns,
                        vec![trial, idx + 1],
                        got,
                        (*expected).clone(),
                    );
                }
            }

            // derivation in slot 2: [a, b*b2, c] = b2[a,b,c] + b[a,b2,c]
            let b2 = self.sample(&mut rng);
            let lhs = self.bracket_coords(&a, &self.mul_coords(&b, &b2), &c);
            let rhs = add_rows(
                &self.mul_coords(&b2, &base),
                &self.mul_coords(&b, &self.bracket_coords(&a, &b2, &c)),
            );
            if lhs != rhs {
                report.push(AxiomKind::DerivationSlot2, vec![trial], lhs, rhs);
            }

            // derivation in slot 3: [a, b, c*c2] = c2[a,b,c] + c[a,b,c2]
            let c2 = self.sample(&mut rng);
            let lhs = self.bracket_coords(&a, &b, &self.mul_coords(&c, &c2));
            let rhs = add_rows(
                &self.mul_coords(&c2, &base),
                &self.mul_coords(&c, &self.bracket_coords(&a, &b, &c2)),
            );
            if lhs != rhs {
                report.push(AxiomKind::DerivationSlot3, vec![trial], lhs, rhs);
            }

            // product expansions, one multi-factor slot at a time
            for count in 1..=3usize {
                let factors: Vec<Vec<Scalar>> = (0..count).map(|_| self.sample(&mut rng)).collect();
                for (slot, kind) in [
                    (0, AxiomKind::ProductExpansionSlot1),
                    (1, AxiomKind::ProductExpansionSlot2),
                    (2, AxiomKind::ProductExpansionSlot3),
                ] {
                    let prod = self.fold_product(&factors);
                    let (x, y, z): (&[Scalar], &[Scalar], &[Scalar]) = match slot {
                        0 => (&prod, &b, &c),
                        1 => (&a, &prod, &c),
                        _ => (&a, &b, &prod),
                    };
                    let lhs = self.bracket_coords(x, y, z);
                    let mut rhs = self.zero_coords();
                    for i in 0..count {
                        let inner = match slot {
                            0 => self.bracket_coords(&factors[i], &b, &c),
                            1 => self.bracket_coords(&a, &factors[i], &c),
                            _ => self.bracket_coords(&a, &b, &factors[i]),
                        };
                        let term = self.multiply_rest(inner, &factors, i);
                        rhs = add_rows(&rhs, &term);
                    }
                    if lhs != rhs {
                        report.push(kind, vec![trial, count, slot + 1], lhs, rhs);
                    }
                }
            }

            // full triple-product expansion, cycling one exponent triple per trial
            let (k, s, t) = exponent_grid[(trial - 1) % exponent_grid.len()];
            let fa: Vec<Vec<Scalar>> = (0..k).map(|_| self.sample(&mut rng)).collect();
            let fb: Vec<Vec<Scalar>> = (0..s).map(|_| self.sample(&mut rng)).collect();
            let fc: Vec<Vec<Scalar>> = (0..t).map(|_| self.sample(&mut rng)).collect();
            let lhs = self.bracket_coords(
                &self.fold_product(&fa),
                &self.fold_product(&fb),
                &self.fold_product(&fc),
            );
            let mut rhs = self.zero_coords();
            for i in 0..k {
                for j in 0..s {
                    for r in 0..t {
                        let mut term = self.bracket_coords(&fa[i], &fb[j], &fc[r]);
                        term = self.multiply_rest(term, &fa, i);
                        term = self.multiply_rest(term, &fb, j);
                        term = self.multiply_rest(term, &fc, r);
                        rhs = add_rows(&rhs, &term);
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    AxiomKind::TripleProductExpansion,
                    vec![trial, k, s, t],
                    lhs,
                    rhs,
                );
            }

            // power rule for all exponent triples in {1,2,3}^3
            let pa = self.powers(&a);
            let pb = self.powers(&b);
            let pc = self.powers(&c);
            for &(k, s, t) in &exponent_grid {
                let lhs = self.bracket_coords(&pa[k - 1], &pb[s - 1], &pc[t - 1]);
                let mut rhs = base.clone();
                if k > 1 {
                    rhs = self.mul_coords(&pa[k - 2], &rhs);
                }
                if s > 1 {
                    rhs = self.mul_coords(&pb[s - 2], &rhs);
                }
                if t > 1 {
                    rhs = self.mul_coords(&pc[t - 2], &rhs);
                }
                let kst = self.field.from_i64((k * s * t) as i64);
                for x in rhs.iter_mut() {
                    *x = &kst * x;
                }
                if lhs != rhs {
                    report.push(AxiomKind::PowerRule, vec![trial, k, s, t], lhs, rhs);
                }
            }
        }

        report.sort();
        report
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> Vec<Scalar> {
        sample_coords(self.dim, self.field, rng)
    }

    /// Product of a nonempty factor list (left fold).
    fn fold_product(&self, factors: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = self.mul_coords(&acc, f);
        }
        acc
    }

    /// Multiplies `v` by every factor except `skip`; an empty rest list is
    /// the empty product and leaves `v` unchanged (no identity needed).
    fn multiply_rest(&self, mut v: Vec<Scalar>, factors: &[Vec<Scalar>], skip: usize) -> Vec<Scalar> {
        for (idx, f) in factors.iter().enumerate() {
            if idx != skip {
                v = self.mul_coords(&v, f);
            }
        }
        v
    }

    /// `[x, x^2, x^3]`.
    fn powers(&self, x: &[Scalar]) -> [Vec<Scalar>; 3] {
        let x2 = self.mul_coords(x, x);
        let x3 = self.mul_coords(&x2, x);
        [x.to_vec(), x2, x3]
    }

    /// Adjoins a multiplicative identity: the algebra `A x F` with product
    /// `(a, s)(b, t) = (ab + sb + ta, st)` and bracket acting on the first
    /// component only. Applies whether or not `self` already has an
    /// identity; the adjoined unit is the new basis vector `e_{n+1}`.
    pub fn unitalize(&self) -> Unitalization {
        let n = self.dim;
        let mut builder = AlgebraBuilder::new(n + 1, self.field);
        let pad = |v: &[Scalar]| {
            let mut w = v.to_vec();
            w.push(self.field.zero());
            w
        };
        for (&(i, j), v) in &self.product {
            builder.product_entry(i, j, pad(v)).expect("valid source entry");
        }
        for (&(i, j, k), v) in &self.bracket {
            builder.bracket_entry(i, j, k, pad(v)).expect("valid source entry");
        }
        let mut unit = vec![self.field.zero(); n + 1];
        unit[n] = self.field.one();
        for i in 0..n {
            let mut ei = vec![self.field.zero(); n + 1];
            ei[i] = self.field.one();
            builder.product_entry(i, n, ei).expect("fresh entry");
        }
        builder.product_entry(n, n, unit.clone()).expect("fresh entry");
        builder.identity(unit).expect("valid identity");
        if let Some(labels) = &self.labels {
            let mut l = labels.clone();
            l.push("1".to_string());
            builder.labels(l).expect("valid labels");
        }
        let algebra = builder.build();
        let embed = (0..n)
            .map(|i| {
                let mut row = vec![self.field.zero(); n + 1];
                row[i] = self.field.one();
                row
            })
            .collect();
        Unitalization { algebra, embed }
    }
}

/// Result of adjoining an identity: the enlarged algebra and the embedding
/// of the original one as the first `n` coordinates.
#[derive(Debug, Clone)]
pub struct Unitalization {
    pub algebra: Algebra,
    /// n x (n+1) matrix; row `i` is the image of `e_i`.
    pub embed: Vec<Vec<Scalar>>,
}

pub(crate) fn add_rows(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Deterministic small-box sampling: coordinates uniform in {-3, ..., 3}
/// embedded into the field.
pub(crate) fn sample_coords<R: Rng>(dim: usize, field: FieldDesc, rng: &mut R) -> Vec<Scalar> {
    (0..dim).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect()
}

/// Whether reordering `from` into `to` (triples of the same three distinct
/// values) is an odd permutation.
fn parity_differs(from: (usize, usize, usize), to: (usize, usize, usize)) -> bool {
    let f = [from.0, from.1, from.2];
    let t = [to.0, to.1, to.2];
    let pos = |v: usize| f.iter().position(|&x| x == v).expect("same index set");
    let perm = [pos(t[0]), pos(t[1]), pos(t[2])];
    let mut inversions = 0;
    for a in 0..3 {
        for b in a + 1..3 {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}
