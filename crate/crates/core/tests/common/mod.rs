//! Shared oracles for the integration suites. Everything here is
//! independent of the library code paths it is used to check: subspaces are
//! member sets of base-5 coded vectors, and tensor evaluation for witness
//! re-checks reads the raw file entries with plain i64 arithmetic.

#![allow(dead_code)]

use poisson23::algebra::Algebra;
use poisson23::format::AlgebraFile;
use poisson23::scalar::Scalar;
use poisson23::subspace::Subspace;
use std::collections::BTreeSet;
use std::path::PathBuf;

pub fn corpus_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(rel)
}

pub fn read_corpus(rel: &str) -> Vec<u8> {
    std::fs::read(corpus_path(rel)).unwrap_or_else(|e| panic!("read corpus {rel}: {e}"))
}

// ---- F5 coded vectors: code digit i (base 5) = coordinate i ----

pub fn decode(code: usize, n: usize) -> Vec<i64> {
    let mut c = code;
    (0..n)
        .map(|_| {
            let d = (c % 5) as i64;
            c /= 5;
            d
        })
        .collect()
}

pub fn encode(coords: &[i64]) -> usize {
    coords
        .iter()
        .rev()
        .fold(0usize, |acc, &d| acc * 5 + (d.rem_euclid(5) as usize))
}

fn add_codes(a: usize, b: usize, n: usize) -> usize {
    let (va, vb) = (decode(a, n), decode(b, n));
    encode(&va.iter().zip(&vb).map(|(x, y)| x + y).collect::<Vec<_>>())
}

fn scale_code(a: usize, c: i64, n: usize) -> usize {
    encode(&decode(a, n).iter().map(|x| x * c).collect::<Vec<_>>())
}

/// All member codes of the span of the given generator codes.
pub fn span_set(n: usize, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = [0usize].into();
    for &g in gens {
        let mut next = BTreeSet::new();
        for &s in &set {
            for c in 0..5 {
                next.insert(add_codes(s, scale_code(g, c, n), n));
            }
        }
        set = next;
    }
    set
}

/// Every subspace of F5^n as a member set, enumerated by repeatedly
/// extending lower-dimensional subspaces by outside vectors.
pub fn all_subspaces(n: usize) -> Vec<BTreeSet<usize>> {
    let total = 5usize.pow(n as u32);
    let mut all: Vec<BTreeSet<usize>> = Vec::new();
    let mut level: BTreeSet<BTreeSet<usize>> = [[0usize].into()].into();
    all.extend(level.iter().cloned());
    while !level.is_empty() {
        let mut next: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for space in &level {
            for v in 1..total {
                if !space.contains(&v) {
                    let mut grown = BTreeSet::new();
                    for &s in space {
                        for c in 0..5 {
                            grown.insert(add_codes(s, scale_code(v, c, n), n));
                        }
                    }
                    next.insert(grown);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

pub fn scalar_residue(s: &Scalar) -> i64 {
    match s {
        Scalar::Mod { value, .. } => *value as i64,
        Scalar::Rat(_) => panic!("expected an F5 scalar"),
    }
}

/// Member set of a library subspace over F5.
pub fn subspace_members(s: &Subspace) -> BTreeSet<usize> {
    let gens: Vec<usize> = s
        .basis()
        .iter()
        .map(|row| encode(&row.iter().map(scalar_residue).collect::<Vec<_>>()))
        .collect();
    span_set(s.ambient_dim(), &gens)
}

fn code_to_element(alg: &Algebra, code: usize) -> poisson23::Element {
    alg.element_from_i64(&decode(code, alg.dim())).unwrap()
}

fn element_code(_alg: &Algebra, e: &poisson23::Element) -> usize {
    encode(&e.coords().iter().map(scalar_residue).collect::<Vec<_>>())
}

/// Is the member set closed under right multiplication by basis vectors
/// (and, when `poisson`, under bracketing with basis pairs)? Checked on
/// every member element, not just generators.
pub fn set_is_closed(alg: &Algebra, set: &BTreeSet<usize>, poisson: bool) -> bool {
    let n = alg.dim();
    for &code in set {
        let x = code_to_element(alg, code);
        for j in 0..n {
            let ej = alg.basis_element(j);
            let prod = alg.product(&x, &ej).unwrap();
            if !set.contains(&element_code(alg, &prod)) {
                return false;
            }
            if poisson {
                for k in j + 1..n {
                    let ek = alg.basis_element(k);
                    let br = alg.bracket(&x, &ej, &ek).unwrap();
                    if !set.contains(&element_code(alg, &br)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Minimal closed subspace containing the seed, by filtering the full
/// subspace enumeration and intersecting the survivors.
pub fn oracle_minimal_closure(
    alg: &Algebra,
    seed_codes: &[usize],
    poisson: bool,
    spaces: &[BTreeSet<usize>],
) -> BTreeSet<usize> {
    let candidates: Vec<&BTreeSet<usize>> = spaces
        .iter()
        .filter(|s| seed_codes.iter().all(|c| s.contains(c)))
        .filter(|s| set_is_closed(alg, s, poisson))
        .collect();
    assert!(!candidates.is_empty(), "the full space is always closed");
    let mut minimal = candidates[0].clone();
    for c in &candidates[1..] {
        minimal = minimal.intersection(c).cloned().collect();
    }
    // the intersection of closed-and-containing subspaces must itself be
    // one of the enumerated candidates
    assert!(
        candidates.iter().any(|c| **c == minimal),
        "intersection of closed subspaces is closed"
    );
    minimal
}

// ---- independent tensor evaluation from the raw file entries ----

/// Basis products and brackets evaluated directly from an algebra file's
/// sparse entries, in i64 arithmetic (entries in the mutant fixtures are
/// small integers). Indices are 0-based here; file entries are 1-based.
pub struct FileTensor {
    pub dim: usize,
    product: Vec<((usize, usize), Vec<i64>)>,
    bracket: Vec<((usize, usize, usize), Vec<i64>)>,
    pub identity: Option<Vec<i64>>,
}

impl FileTensor {
    pub fn parse(bytes: &[u8]) -> Self {
        let file: AlgebraFile = serde_json::from_slice(bytes).expect("valid file JSON");
        let ints = |coords: &[String]| -> Vec<i64> {
            coords
                .iter()
                .map(|s| s.parse::<i64>().expect("integer entry"))
                .collect()
        };
        FileTensor {
            dim: file.dim,
            product: file
                .product
                .iter()
                .map(|e| ((e.i - 1, e.j - 1), ints(&e.coords)))
                .collect(),
            bracket: file
                .bracket
                .iter()
                .map(|e| ((e.i - 1, e.j - 1, e.k - 1), ints(&e.coords)))
                .collect(),
            identity: file.identity.as_deref().map(ints),
        }
    }

    pub fn prod_basis(&self, i: usize, j: usize) -> Vec<i64> {
        let key = (i.min(j), i.max(j));
        self.product
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| vec![0; self.dim])
    }

    pub fn brk_basis(&self, i: usize, j: usize, k: usize) -> Vec<i64> {
        if i == j || j == k || i == k {
            return vec![0; self.dim];
        }
        let mut s = [i, j, k];
        s.sort();
        let sign = {
            let perm = [i, j, k];
            let mut inv = 0;
            for a in 0..3 {
                for b in a + 1..3 {
                    if perm[a] > perm[b] {
                        inv += 1;
                    }
                }
            }
            if inv % 2 == 0 {
                1
            } else {
                -1
            }
        };
        self.bracket
            .iter()
            .find(|(key, _)| *key == (s[0], s[1], s[2]))
            .map(|(_, v)| v.iter().map(|x| x * sign).collect())
            .unwrap_or_else(|| vec![0; self.dim])
    }

    fn prod_vec_basis(&self, v: &[i64], k: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (m, &c) in v.iter().enumerate() {
            if c != 0 {
                for (l, &x) in self.prod_basis(m, k).iter().enumerate() {
                    out[l] += c * x;
                }
            }
        }
        out
    }

    fn brk_vec_slot(&self, slot: usize, v: &[i64], a: usize, b: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (m, &c) in v.iter().enumerate() {
            if c != 0 {
                let w = match slot {
                    0 => self.brk_basis(m, a, b),
                    1 => self.brk_basis(a, m, b),
                    _ => self.brk_basis(a, b, m),
                };
                for (l, &x) in w.iter().enumerate() {
                    out[l] += c * x;
                }
            }
        }
        out
    }

    /// Both sides of the Filippov identity at a basis 5-tuple (0-based).
    pub fn filippov_sides(&self, t: [usize; 5]) -> (Vec<i64>, Vec<i64>) {
        let [a1, a2, a3, b, c] = t;
        let lhs = self.brk_vec_slot(0, &self.brk_basis(a1, a2, a3), b, c);
        let t1 = self.brk_vec_slot(0, &self.brk_basis(a1, b, c), a2, a3);
        let t2 = self.brk_vec_slot(1, &self.brk_basis(a2, b, c), a1, a3);
        let t3 = self.brk_vec_slot(2, &self.brk_basis(a3, b, c), a1, a2);
        let rhs = (0..self.dim).map(|l| t1[l] + t2[l] + t3[l]).collect();
        (lhs, rhs)
    }

    /// Both sides of the Leibniz identity at a basis 4-tuple (0-based).
    pub fn leibniz_sides(&self, t: [usize; 4]) -> (Vec<i64>, Vec<i64>) {
        let [i, j, b, c] = t;
        let lhs = self.brk_vec_slot(0, &self.prod_basis(i, j), b, c);
        let t1 = self.prod_vec_basis(&self.brk_basis(i, b, c), j);
        let t2 = self.prod_vec_basis(&self.brk_basis(j, b, c), i);
        let rhs = (0..self.dim).map(|l| t1[l] + t2[l]).collect();
        (lhs, rhs)
    }

    /// Both sides of associativity at a basis triple (0-based).
    pub fn assoc_sides(&self, t: [usize; 3]) -> (Vec<i64>, Vec<i64>) {
        let [i, j, k] = t;
        let lhs = self.prod_vec_basis(&self.prod_basis(i, j), k);
        let rhs = self.prod_vec_basis(&self.prod_basis(j, k), i);
        (lhs, rhs)
    }

    /// `identity * e_i` at a basis index (0-based).
    pub fn identity_side(&self, i: usize) -> Vec<i64> {
        self.prod_vec_basis(self.identity.as_ref().expect("identity declared"), i)
    }
}

pub fn scalars_as_i64(v: &[Scalar]) -> Vec<i64> {
    v.iter()
        .map(|s| s.render().parse::<i64>().expect("integer scalar"))
        .collect()
}
