//! Butson-type S-Hadamard matrices.
//!
//! An S-Hadamard matrix `H` of order `n` has unimodular entries, satisfies
//! `HH* = nI`, and in addition the entrywise squares of any two distinct rows
//! are orthogonal. Entries here are `L`-th roots of unity stored as exponents,
//! so unimodularity holds by construction and squaring a row is doubling its
//! exponents.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ghmat::{verify_gh, GHMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShRepr", into = "ShRepr")]
pub struct SHadamard {
    n: usize,
    root_order: u32,
    exponents: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShRepr {
    kind: String,
    n: usize,
    root_order: u32,
    exponents: Vec<Vec<i64>>,
}

impl TryFrom<ShRepr> for SHadamard {
    type Error = Error;

    fn try_from(r: ShRepr) -> Result<Self> {
        if r.kind != "shadamard" {
            return Err(Error::Schema(format!("expected kind \"shadamard\", found {:?}", r.kind)));
        }
        if r.exponents.len() != r.n {
            return Err(Error::Malformed(format!("order {} but {} rows", r.n, r.exponents.len())));
        }
        let rows = r
            .exponents
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| {
                        u32::try_from(e).map_err(|_| Error::Malformed(format!("exponent {e} is negative")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SHadamard::new(r.root_order, rows)
    }
}

impl From<SHadamard> for ShRepr {
    fn from(h: SHadamard) -> Self {
        let exponents = h.rows().map(|r| r.iter().map(|&e| e as i64).collect()).collect();
        Self { kind: "shadamard".into(), n: h.n, root_order: h.root_order, exponents }
    }
}

impl SHadamard {
    /// Square matrix with entry `(i, j)` equal to `ζ_L^{rows[i][j]}`.
    pub fn new(root_order: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        if root_order == 0 {
            return Err(Error::ZeroOrder);
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty matrix".into()));
        }
        let mut exponents = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(e) = row.iter().find(|&&e| e >= root_order) {
                return Err(Error::Malformed(format!(
                    "exponent {e} in row {i} is not below the root order {root_order}"
                )));
            }
            exponents.extend(row);
        }
        Ok(Self { n, root_order, exponents })
    }

    /// The Fourier matrix `(ζ_n^{ij})`.
    pub fn fourier(n: usize) -> Result<Self> {
        let l = u32::try_from(n).map_err(|_| Error::Overflow)?;
        let rows = (0..n).map(|i| (0..n).map(|j| ((i * j) % n) as u32).collect()).collect();
        Self::new(l, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exponents[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.exponents[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.exponents.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    /// Row `i` as a vector over `Z[ζ_L]`.
    pub fn row_vector(&self, i: usize) -> Vec<CycInt> {
        self.row(i)
            .iter()
            .map(|&e| CycInt::root(self.root_order as usize, e as i64).expect("root order is positive"))
            .collect()
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.n)?;
        let rows = perm.iter().map(|&p| self.row(p).to_vec()).collect();
        Self::new(self.root_order, rows)
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.n)?;
        let rows = self.rows().map(|r| perm.iter().map(|&p| r[p]).collect()).collect();
        Self::new(self.root_order, rows)
    }

    /// `Σ_j ζ^{scale·(a_j - b_j)}` for rows `a = k`, `b = l`: the inner product
    /// of rows (scale 1) or of squared rows (scale 2), collected by exponent.
    fn row_product(&self, k: usize, l: usize, scale: u64) -> CycInt {
        let order = self.root_order as u64;
        let mut hist = vec![0i64; order as usize];
        for (&a, &b) in self.row(k).iter().zip(self.row(l)) {
            let d = (scale * (a as u64 + order - b as u64)) % order;
            hist[d as usize] += 1;
        }
        CycInt::new(order as usize, hist).expect("histogram has one slot per exponent")
    }
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Parameter("not a permutation".into()));
    }
    Ok(())
}

/// A failing row pair. `condition` is 1 for `HH* = nI` (a diagonal failure has
/// `k == l`) and 3 for orthogonality of squared rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShFailure {
    pub rows: [usize; 2],
    pub condition: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShReport {
    pub pass: bool,
    /// `HH* = nI`
    pub condition1: bool,
    /// `|h_ij| = 1`, structural for root-of-unity entries
    pub condition2: bool,
    /// squared rows pairwise orthogonal
    pub condition3: bool,
    /// Sorted by `(k, l)`, then condition.
    pub failures: Vec<ShFailure>,
}

impl ShReport {
    pub fn failed_conditions(&self) -> Vec<u8> {
        let mut c: Vec<u8> = self.failures.iter().map(|f| f.condition).collect();
        c.sort_unstable();
        c.dedup();
        c
    }
}

pub fn verify_shadamard(h: &SHadamard) -> ShReport {
    let n = h.n as i64;
    let mut failures = Vec::new();
    for k in 0..h.n {
        if h.row_product(k, k, 1).as_integer() != Some(n) {
            failures.push(ShFailure { rows: [k, k], condition: 1 });
        }
        for l in k + 1..h.n {
            if !h.row_product(k, l, 1).is_zero() {
                failures.push(ShFailure { rows: [k, l], condition: 1 });
            }
            if !h.row_product(k, l, 2).is_zero() {
                failures.push(ShFailure { rows: [k, l], condition: 3 });
            }
        }
    }
    let condition1 = !failures.iter().any(|f| f.condition == 1);
    let condition3 = !failures.iter().any(|f| f.condition == 3);
    ShReport { pass: failures.is_empty(), condition1, condition2: true, condition3, failures }
}

/// Exponentiates a verified GH(g, λ) over `Z_g` with `g > 2` into an
/// S-Hadamard matrix of order `gλ` with `h_ij = ζ_g^{m_ij}`.
pub fn from_gh(m: &GHMatrix) -> Result<SHadamard> {
    if m.g() <= 2 {
        return Err(Error::GroupTooSmall(m.g()));
    }
    if !verify_gh(m).pass {
        return Err(Error::NotVerified("generalized Hadamard matrix"));
    }
    SHadamard::new(m.g(), m.to_rows())
}

/// Divides every column by its first-row entry so row 0 becomes all ones.
pub fn dephase(h: &SHadamard) -> SHadamard {
    let l = h.root_order;
    let first = h.row(0).to_vec();
    let exponents =
        h.rows().flat_map(|r| r.iter().zip(&first).map(move |(&e, &f)| (e + l - f) % l)).collect();
    SHadamard { n: h.n, root_order: l, exponents }
}

/// Parses an S-Hadamard JSON document and verifies it. Loading a matrix that
/// fails verification is not an error; the report says so.
pub fn shad_import(data: &str) -> Result<(SHadamard, ShReport)> {
    let h: SHadamard = serde_json::from_str(data)?;
    let report = verify_shadamard(&h);
    Ok((h, report))
}

pub fn shad_export(h: &SHadamard) -> String {
    serde_json::to_string(h).expect("S-Hadamard matrices always serialize")
}
