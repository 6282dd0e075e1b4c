//! Canonical example algebras and deterministic random sampling.
//!
//! Every fixture is reproducible bit for bit from its name and field; the
//! repository corpus under `corpus/` is generated from this registry.

use crate::algebra::{sample_coords, Algebra, AlgebraBuilder, AlgebraError, Element};
use crate::scalar::{FieldDesc, Scalar};
use crate::subspace::invert_matrix;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Product choices for [`make_abelian`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbelianProduct {
    Zero,
    TruncatedPolynomial,
}

/// An abelian algebra (zero bracket) of dimension `n`: either the zero
/// product or the truncated polynomial algebra `F[u]/(u^n)` with basis
/// `{1, u, ..., u^(n-1)}` and declared identity.
pub fn make_abelian(n: usize, field: FieldDesc, product: AbelianProduct) -> Algebra {
    let mut b = AlgebraBuilder::new(n, field);
    match product {
        AbelianProduct::Zero => {
            if n > 0 {
                b.labels((1..=n).map(|i| format!("e{i}")).collect())
                    .expect("label count matches");
            }
        }
        AbelianProduct::TruncatedPolynomial => {
            for i in 0..n {
                for j in i..n {
                    if i + j < n {
                        let mut coords = vec![field.zero(); n];
                        coords[i + j] = field.one();
                        b.product_entry(i, j, coords).expect("valid entry");
                    }
                }
            }
            if n > 0 {
                let mut one = vec![field.zero(); n];
                one[0] = field.one();
                b.identity(one).expect("valid identity");
                b.labels(
                    (0..n)
                        .map(|i| match i {
                            0 => "1".to_string(),
                            1 => "u".to_string(),
                            _ => format!("u^{i}"),
                        })
                        .collect(),
                )
                .expect("label count matches");
            }
        }
    }
    b.build()
}

/// The 4-dimensional Lie 3-algebra with zero product and bracket
/// `[e_i, e_j, e_k] = sum_l eps_{ijkl} e_l` (Levi-Civita structure
/// constants). The smallest standard nonabelian fixture.
pub fn make_nambu4(field: FieldDesc) -> Algebra {
    let mut b = AlgebraBuilder::new(4, field);
    for i in 0..4usize {
        for j in i + 1..4 {
            for k in j + 1..4 {
                let l = 6 - i - j - k;
                let mut coords = vec![field.zero(); 4];
                coords[l] = field.from_i64(perm_sign(&[i, j, k, l]));
                b.bracket_entry(i, j, k, coords).expect("valid entry");
            }
        }
    }
    b.labels((1..=4).map(|i| format!("e{i}")).collect())
        .expect("label count matches");
    b.build()
}

/// Sign of a permutation given as an array of distinct values, by inversion
/// count.
fn perm_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Componentwise direct sum with zero cross terms. The identity is declared
/// exactly when both summands declare one (then it is `(1_A, 1_B)`).
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    if a.field() != b.field() {
        return Err(AlgebraError::Mismatch);
    }
    let field = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let pad_left = |v: &[Scalar]| {
        let mut w = v.to_vec();
        w.resize(n, field.zero());
        w
    };
    let pad_right = |v: &[Scalar]| {
        let mut w = vec![field.zero(); na];
        w.extend_from_slice(v);
        w
    };
    let mut builder = AlgebraBuilder::new(n, field);
    for (&(i, j), v) in a.product_entries() {
        builder.product_entry(i, j, pad_left(v))?;
    }
    for (&(i, j), v) in b.product_entries() {
        builder.product_entry(i + na, j + na, pad_right(v))?;
    }
    for (&(i, j, k), v) in a.bracket_entries() {
        builder.bracket_entry(i, j, k, pad_left(v))?;
    }
    for (&(i, j, k), v) in b.bracket_entries() {
        builder.bracket_entry(i + na, j + na, k + na, pad_right(v))?;
    }
    if let (Some(ia), Some(ib)) = (a.identity(), b.identity()) {
        let mut one = ia.to_vec();
        one.extend_from_slice(ib);
        builder.identity(one)?;
    }
    let label = |alg: &Algebra, i: usize, offset: usize| match alg.labels() {
        Some(l) => l[i].clone(),
        None => format!("e{}", i + offset + 1),
    };
    if a.labels().is_some() || b.labels().is_some() {
        let mut labels: Vec<String> = (0..na).map(|i| label(a, i, 0)).collect();
        labels.extend((0..nb).map(|i| label(b, i, na)));
        builder.labels(labels)?;
    }
    Ok(builder.build())
}

/// Transports an algebra along a change of basis. Row `i` of `rows` gives
/// the new basis vector `f_i` in old coordinates; the result has the same
/// operations expressed in the `f` basis. Errors if the matrix is singular.
pub fn change_basis(a: &Algebra, rows: &[Vec<Scalar>]) -> Result<Algebra, AlgebraError> {
    let n = a.dim();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::CoordsLength {
            got: rows.len(),
            expected: n,
        });
    }
    // old coords -> new coords is the inverse of the transpose of `rows`
    let mut transpose = vec![vec![a.field().zero(); n]; n];
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in r.iter().enumerate() {
            transpose[j][i] = c.clone();
        }
    }
    let to_new = invert_matrix(a.field(), &transpose).ok_or(AlgebraError::SingularBasis)?;
    let apply = |v: &[Scalar]| -> Vec<Scalar> {
        (0..n)
            .map(|r| {
                let mut acc = a.field().zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(&to_new[r][c] * x);
                    }
                }
                acc
            })
            .collect()
    };
    let mut builder = AlgebraBuilder::new(n, a.field());
    for i in 0..n {
        for j in i..n {
            let v = a.mul_coords(&rows[i], &rows[j]);
            builder.product_entry(i, j, apply(&v))?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = a.bracket_coords(&rows[i], &rows[j], &rows[k]);
                builder.bracket_entry(i, j, k, apply(&v))?;
            }
        }
    }
    if let Some(one) = a.identity() {
        builder.identity(apply(one))?;
    }
    Ok(builder.build())
}

/// Deterministic pseudo-random element with coordinates in {-3, ..., 3}.
pub fn random_element(a: &Algebra, seed: u64) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    a.element(sample_coords(a.dim(), a.field(), &mut rng))
        .expect("sampled coordinates lie in the algebra's field")
}

/// The algebras every test surface runs over (axiom suite, Schur pipeline,
/// derived identities), in a fixed order.
pub fn corpus_names() -> &'static [&'static str] {
    &[
        "t3",
        "nambu4",
        "unit-t3",
        "unit-nambu4",
        "nambu4-plus-ab2",
        "rotated-unit-nambu4",
    ]
}

/// All emittable fixtures: the corpus, two degenerate algebras, and the
/// single-constant mutants used to exercise failure reporting.
pub fn fixture_names() -> &'static [&'static str] {
    &[
        "empty",
        "ab2",
        "t3",
        "nambu4",
        "unit-t3",
        "unit-nambu4",
        "nambu4-plus-ab2",
        "rotated-unit-nambu4",
        "mutated-nambu4",
        "mutant-assoc-t3",
        "mutant-leibniz-unit-nambu4",
        "mutant-identity-t3",
    ]
}

/// Builds a fixture by registry name, or `None` for unknown names.
pub fn make_fixture(name: &str, field: FieldDesc) -> Option<Algebra> {
    let t3 = || make_abelian(3, field, AbelianProduct::TruncatedPolynomial);
    let ab2 = || make_abelian(2, field, AbelianProduct::Zero);
    match name {
        "empty" => Some(make_abelian(0, field, AbelianProduct::Zero)),
        "ab2" => Some(ab2()),
        "t3" => Some(t3()),
        "nambu4" => Some(make_nambu4(field)),
        "unit-t3" => Some(t3().unitalize().algebra),
        "unit-nambu4" => Some(make_nambu4(field).unitalize().algebra),
        "nambu4-plus-ab2" => Some(
            direct_sum(&make_nambu4(field), &ab2()).expect("summands share the field"),
        ),
        "rotated-unit-nambu4" => Some(rotated_unit_nambu4(field)),
        "mutated-nambu4" => Some(mutated_nambu4(field)),
        "mutant-assoc-t3" => Some(mutant_assoc_t3(field)),
        "mutant-leibniz-unit-nambu4" => Some(mutant_leibniz_unit_nambu4(field)),
        "mutant-identity-t3" => Some(mutant_identity_t3(field)),
        _ => None,
    }
}

/// unitalize(nambu4) pushed through the basis change f2 = e2 + e3,
/// f5 = e4 + e5 (others fixed). Its center, span{f5 - f4}, is not spanned
/// by basis vectors, and neither is its identity.
fn rotated_unit_nambu4(field: FieldDesc) -> Algebra {
    let un4 = make_nambu4(field).unitalize().algebra;
    let n = un4.dim();
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut r = vec![field.zero(); n];
            r[i] = field.one();
            r
        })
        .collect();
    rows[1][2] = field.one(); // f2 = e2 + e3
    rows[4][3] = field.one(); // f5 = e4 + e5
    change_basis(&un4, &rows).expect("rotation matrix is invertible")
}

/// nambu4 with the single constant t[1][2][3] redirected from e4 to e3:
/// breaks the Filippov identity while staying file-representable. (Scaling
/// the constant instead would NOT break it; the scaled bracket is still a
/// Filippov bracket, verified by brute force over all 4^5 tuples.)
fn mutated_nambu4(field: FieldDesc) -> Algebra {
    let n4 = make_nambu4(field);
    let mut b = AlgebraBuilder::new(4, field);
    for (&(i, j, k), v) in n4.bracket_entries() {
        let coords = if (i, j, k) == (0, 1, 2) {
            let mut w = vec![field.zero(); 4];
            w[2] = field.one();
            w
        } else {
            v.clone()
        };
        b.bracket_entry(i, j, k, coords).expect("valid entry");
    }
    if let Some(l) = n4.labels() {
        b.labels(l.to_vec()).expect("label count matches");
    }
    b.build()
}

/// t3 with the extra product entry u * u^2 = 1: breaks associativity at the
/// basis triple (u, u, u^2).
fn mutant_assoc_t3(field: FieldDesc) -> Algebra {
    let t3 = make_abelian(3, field, AbelianProduct::TruncatedPolynomial);
    let mut b = AlgebraBuilder::new(3, field);
    for (&(i, j), v) in t3.product_entries() {
        b.product_entry(i, j, v.clone()).expect("valid entry");
    }
    let mut one = vec![field.zero(); 3];
    one[0] = field.one();
    b.product_entry(1, 2, one).expect("fresh entry");
    b.identity(t3.identity().unwrap().to_vec()).expect("valid identity");
    if let Some(l) = t3.labels() {
        b.labels(l.to_vec()).expect("label count matches");
    }
    b.build()
}

/// unitalize(nambu4) with the bracket [e1,e2,e3] leaking into the unit
/// coordinate: breaks the Leibniz (2-3)-identity.
fn mutant_leibniz_unit_nambu4(field: FieldDesc) -> Algebra {
    let un4 = make_nambu4(field).unitalize().algebra;
    let mut b = AlgebraBuilder::new(5, field);
    for (&(i, j), v) in un4.product_entries() {
        b.product_entry(i, j, v.clone()).expect("valid entry");
    }
    for (&(i, j, k), v) in un4.bracket_entries() {
        let coords = if (i, j, k) == (0, 1, 2) {
            let mut w = v.clone();
            w[4] = field.one();
            w
        } else {
            v.clone()
        };
        b.bracket_entry(i, j, k, coords).expect("valid entry");
    }
    b.identity(un4.identity().unwrap().to_vec()).expect("valid identity");
    if let Some(l) = un4.labels() {
        b.labels(l.to_vec()).expect("label count matches");
    }
    b.build()
}

/// t3 with the declared identity changed to 1 + u.
fn mutant_identity_t3(field: FieldDesc) -> Algebra {
    let t3 = make_abelian(3, field, AbelianProduct::TruncatedPolynomial);
    let mut b = AlgebraBuilder::new(3, field);
    for (&(i, j), v) in t3.product_entries() {
        b.product_entry(i, j, v.clone()).expect("valid entry");
    }
    let mut one = vec![field.zero(); 3];
    one[0] = field.one();
    one[1] = field.one();
    b.identity(one).expect("valid identity");
    if let Some(l) = t3.labels() {
        b.labels(l.to_vec()).expect("label count matches");
    }
    b.build()
}
