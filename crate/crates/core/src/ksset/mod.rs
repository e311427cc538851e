//! Kochen-Specker pairs assembled from even-order S-Hadamard matrices.
//!
//! A Kochen-Specker pair `(V, B)` in `C^n` is a finite vector set `V` and an
//! odd-length list `B` of orthogonal bases drawn from `V`, such that every
//! vector lies in an even number of the bases. No 0/1 marking of `V` can then
//! pick exactly one vector from every basis: counting bases modulo 2 gives a
//! contradiction.
//!
//! [`build_ks`] takes a dephased S-Hadamard matrix with rows `h_1 = 1, h_2, ..,
//! h_n` and labels vectors by unordered pairs `{r, s}` of `1..=n+1`:
//!
//! * `v{1,s} = h_{s-1}`,
//! * `v{2,s} = h_{s-1} ∘ h_{s-1}` for `s > 2`,
//! * `v{r,s} = h_{r-1} ∘ h_{s-1}` for `2 < r < s`,
//!
//! and the basis `B_r` collects `v{r,i}` for all `i ≠ r`.

pub mod noncolor;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{inner_product, CycInt};
use crate::error::{Error, Result};
use crate::shadamard::{dephase, verify_shadamard, SHadamard};

/// Coordinatewise product `x ∘ y`.
pub fn hadamard_product(x: &[CycInt], y: &[CycInt]) -> Result<Vec<CycInt>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    x.iter().zip(y).map(|(a, b)| a.mul(b)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSVector {
    pub coords: Vec<CycInt>,
    /// Unordered pairs `{r, s}` stored as `[r, s]` with `1 <= r < s`.
    pub labels: Vec<[u32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "KsRepr", into = "KsRepr")]
pub struct KSPair {
    n: usize,
    root_order: usize,
    vectors: Vec<KSVector>,
    bases: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KsRepr {
    kind: String,
    n: usize,
    root_order: usize,
    vectors: Vec<KSVector>,
    bases: Vec<Vec<usize>>,
}

impl TryFrom<KsRepr> for KSPair {
    type Error = Error;

    fn try_from(r: KsRepr) -> Result<Self> {
        if r.kind != "ks_pair" {
            return Err(Error::Schema(format!("expected kind \"ks_pair\", found {:?}", r.kind)));
        }
        KSPair::new(r.n, r.root_order, r.vectors, r.bases)
    }
}

impl From<KSPair> for KsRepr {
    fn from(p: KSPair) -> Self {
        Self { kind: "ks_pair".into(), n: p.n, root_order: p.root_order, vectors: p.vectors, bases: p.bases }
    }
}

impl KSPair {
    /// Checks the structural invariants: coordinates of length `n` over a
    /// common `Z[ζ_L]`, no zero vector, nonempty well-formed labels, and bases
    /// of exactly `n` distinct in-range indices. Parity of `|B|` is a property
    /// checked by [`verify_ks`], not an invariant of the type.
    pub fn new(
        n: usize,
        root_order: usize,
        mut vectors: Vec<KSVector>,
        bases: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        if root_order == 0 {
            return Err(Error::ZeroOrder);
        }
        for (i, v) in vectors.iter_mut().enumerate() {
            if v.coords.len() != n {
                return Err(Error::Malformed(format!(
                    "vector {i} has {} coordinates, expected {n}",
                    v.coords.len()
                )));
            }
            if let Some(c) = v.coords.iter().find(|c| c.order() != root_order) {
                return Err(Error::OrderMismatch { left: root_order, right: c.order() });
            }
            if v.coords.iter().all(CycInt::is_zero) {
                return Err(Error::Malformed(format!("vector {i} is zero")));
            }
            if v.labels.is_empty() {
                return Err(Error::Malformed(format!("vector {i} has no labels")));
            }
            if v.labels.iter().any(|&[r, s]| r == 0 || r >= s) {
                return Err(Error::Malformed(format!("vector {i} has a label not of the form 1 <= r < s")));
            }
            v.labels.sort_unstable();
            v.labels.dedup();
        }
        for (b, basis) in bases.iter().enumerate() {
            if basis.len() != n {
                return Err(Error::Malformed(format!("basis {b} has {} members, expected {n}", basis.len())));
            }
            let mut seen = basis.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!("basis {b} repeats a vector")));
            }
            if seen.last().is_some_and(|&i| i >= vectors.len()) {
                return Err(Error::Malformed(format!("basis {b} refers to a missing vector")));
            }
        }
        Ok(Self { n, root_order, vectors, bases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root_order(&self) -> usize {
        self.root_order
    }

    pub fn vectors(&self) -> &[KSVector] {
        &self.vectors
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn into_parts(self) -> (Vec<KSVector>, Vec<Vec<usize>>) {
        (self.vectors, self.bases)
    }

    /// Number of bases containing each vector (with multiplicity for repeated bases).
    pub fn memberships(&self) -> Vec<usize> {
        let mut counts = vec![0; self.vectors.len()];
        for &i in self.bases.iter().flatten() {
            counts[i] += 1;
        }
        counts
    }

    /// Drops basis `b`; vectors are kept as they are.
    pub fn without_basis(&self, b: usize) -> Result<Self> {
        if b >= self.bases.len() {
            return Err(Error::Parameter(format!("no basis {b}")));
        }
        let mut bases = self.bases.clone();
        bases.remove(b);
        Self::new(self.n, self.root_order, self.vectors.clone(), bases)
    }
}

/// Builds the Kochen-Specker pair of an even-order S-Hadamard matrix: `n + 1`
/// bases over at most `C(n+1, 2)` vectors. The matrix is dephased first.
///
/// Two labels that yield coordinatewise equal vectors share one element of
/// `V`. Vectors that differ only by a scalar phase are kept apart.
pub fn build_ks(h: &SHadamard) -> Result<KSPair> {
    let n = h.n();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if !verify_shadamard(h).pass {
        return Err(Error::NotVerified("S-Hadamard matrix"));
    }
    let d = dephase(h);
    let l = d.root_order();
    // h_k (1-based) is row k - 1
    let row = |k: usize| d.row(k - 1);
    let combine = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| (x + y) % l).collect() };

    let top = n as u32 + 1;
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut exps: Vec<Vec<u32>> = Vec::new();
    let mut labels: Vec<Vec<[u32; 2]>> = Vec::new();
    let mut label_of: HashMap<[u32; 2], usize> = HashMap::new();
    for r in 1..top {
        for s in r + 1..=top {
            let (ri, si) = (r as usize, s as usize);
            // A monomial ζ^a equals ζ^b exactly when a ≡ b (mod L), so
            // exponent vectors are exact keys for coordinatewise equality.
            let v = match r {
                1 => row(si - 1).to_vec(),
                2 => combine(row(si - 1), row(si - 1)),
                _ => combine(row(ri - 1), row(si - 1)),
            };
            let idx = *index.entry(v.clone()).or_insert_with(|| {
                exps.push(v);
                labels.push(Vec::new());
                exps.len() - 1
            });
            labels[idx].push([r, s]);
            label_of.insert([r, s], idx);
        }
    }

    let bases = (1..=top)
        .map(|r| (1..=top).filter(|&i| i != r).map(|i| label_of[&[r.min(i), r.max(i)]]).collect())
        .collect();
    let vectors = exps
        .into_iter()
        .zip(labels)
        .map(|(e, labels)| KSVector {
            coords: e
                .iter()
                .map(|&x| CycInt::root(l as usize, x as i64).expect("root order is positive"))
                .collect(),
            labels,
        })
        .collect();
    KSPair::new(n, l as usize, vectors, bases)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityFailure {
    pub basis: usize,
    pub vectors: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsReport {
    pub pass: bool,
    pub basis_count: usize,
    pub odd_basis_count: bool,
    /// Bases whose size is not `n` or which repeat a vector.
    pub malformed_bases: Vec<usize>,
    /// Basis members with `<v, v> = 0`.
    pub null_vectors: Vec<usize>,
    pub orthogonality_failures: Vec<OrthogonalityFailure>,
    pub memberships: Vec<usize>,
    /// Vectors lying in an odd number of bases.
    pub parity_failures: Vec<usize>,
    /// Vectors whose basis count is not twice their number of labels.
    pub label_failures: Vec<usize>,
}

/// Checks every defining condition of a Kochen-Specker pair exactly: each
/// basis consists of `n` distinct, nonzero, pairwise orthogonal vectors, the
/// number of bases is odd and every vector lies in an even number of bases.
/// Also checks that a vector carrying `t` labels lies in exactly `2t` bases.
pub fn verify_ks(p: &KSPair) -> KsReport {
    let conj: Vec<Vec<CycInt>> =
        p.vectors.iter().map(|v| v.coords.iter().map(CycInt::conj).collect()).collect();
    let dot = |a: usize, b: usize| -> CycInt {
        let mut acc = CycInt::zero(p.root_order).expect("root order is positive");
        for (x, y) in p.vectors[a].coords.iter().zip(&conj[b]) {
            acc = acc.add(&x.mul(y).expect("uniform order")).expect("uniform order");
        }
        acc
    };

    let mut malformed_bases = Vec::new();
    let mut orthogonality_failures = Vec::new();
    let mut in_some_basis = vec![false; p.vectors.len()];
    for (b, basis) in p.bases.iter().enumerate() {
        let mut sorted = basis.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if basis.len() != p.n || sorted.len() != basis.len() {
            malformed_bases.push(b);
        }
        for (i, &u) in basis.iter().enumerate() {
            in_some_basis[u] = true;
            for &w in &basis[i + 1..] {
                if !dot(u, w).is_zero() {
                    orthogonality_failures.push(OrthogonalityFailure { basis: b, vectors: [u, w] });
                }
            }
        }
    }
    let null_vectors: Vec<usize> =
        (0..p.vectors.len()).filter(|&v| in_some_basis[v] && dot(v, v).is_zero()).collect();

    let memberships = p.memberships();
    let parity_failures: Vec<usize> = (0..memberships.len()).filter(|&v| memberships[v] % 2 == 1).collect();
    let label_failures: Vec<usize> =
        (0..memberships.len()).filter(|&v| memberships[v] != 2 * p.vectors[v].labels.len()).collect();
    let odd_basis_count = p.bases.len() % 2 == 1;
    let pass = odd_basis_count
        && malformed_bases.is_empty()
        && null_vectors.is_empty()
        && orthogonality_failures.is_empty()
        && parity_failures.is_empty()
        && label_failures.is_empty();
    KsReport {
        pass,
        basis_count: p.bases.len(),
        odd_basis_count,
        malformed_bases,
        null_vectors,
        orthogonality_failures,
        memberships,
        parity_failures,
        label_failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsStats {
    pub n: usize,
    pub vectors: usize,
    pub bases: usize,
    /// `C(n+1, 2)`, the largest possible `|V|` for the construction.
    pub vector_bound: usize,
    /// basis count → number of vectors with that count
    pub memberships: BTreeMap<usize, usize>,
    /// label count → number of vectors with that many labels
    pub label_multiplicities: BTreeMap<usize, usize>,
    /// Pairs of distinct vectors that are scalar multiples of each other.
    /// Diagnostic only: such vectors are not merged.
    pub parallel_pairs: Vec<[usize; 2]>,
}

pub fn ks_stats(p: &KSPair) -> KsStats {
    let mut memberships = BTreeMap::new();
    for c in p.memberships() {
        *memberships.entry(c).or_insert(0) += 1;
    }
    let mut label_multiplicities = BTreeMap::new();
    for v in &p.vectors {
        *label_multiplicities.entry(v.labels.len()).or_insert(0) += 1;
    }
    KsStats {
        n: p.n,
        vectors: p.vectors.len(),
        bases: p.bases.len(),
        vector_bound: (p.n + 1) * p.n / 2,
        memberships,
        label_multiplicities,
        parallel_pairs: parallel_pairs(p),
    }
}

/// `v ∥ w` iff `|<v, w>|² = <v, v><w, w>` (equality in Cauchy-Schwarz).
fn parallel_pairs(p: &KSPair) -> Vec<[usize; 2]> {
    let ip = |a: usize, b: usize| {
        inner_product(&p.vectors[a].coords, &p.vectors[b].coords).expect("uniform vectors")
    };
    let norms: Vec<CycInt> = (0..p.vectors.len()).map(|v| ip(v, v)).collect();
    let mut out = Vec::new();
    for a in 0..p.vectors.len() {
        for b in a + 1..p.vectors.len() {
            let x = ip(a, b);
            let lhs = x.mul(&x.conj()).expect("uniform order");
            let rhs = norms[a].mul(&norms[b]).expect("uniform order");
            if lhs.value_eq(&rhs).expect("uniform order") {
                out.push([a, b]);
            }
        }
    }
    out
}

pub fn ks_export(p: &KSPair) -> String {
    serde_json::to_string(p).expect("KS pairs always serialize")
}

/// Parses a KS JSON document and verifies it.
pub fn ks_import(data: &str) -> Result<(KSPair, KsReport)> {
    let p: KSPair = serde_json::from_str(data)?;
    let report = verify_ks(&p);
    Ok((p, report))
}
