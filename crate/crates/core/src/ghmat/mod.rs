//! Generalized Hadamard matrices GH(g, λ) over the cyclic group `Z_g`.
//!
//! A `gλ × gλ` matrix over `Z_g` is a GH(g, λ) when, for every pair of
//! distinct rows, each residue occurs exactly λ times among the entrywise
//! differences.

pub mod plan;
pub mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A candidate GH(g, λ). Whether it actually is one is decided by [`verify_gh`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GhRepr", into = "GhRepr")]
pub struct GHMatrix {
    g: u32,
    lambda: u32,
    side: usize,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GhRepr {
    kind: String,
    g: u32,
    lambda: u32,
    entries: Vec<Vec<i64>>,
}

impl TryFrom<GhRepr> for GHMatrix {
    type Error = Error;

    fn try_from(r: GhRepr) -> Result<Self> {
        if r.kind != "gh" {
            return Err(Error::Schema(format!("expected kind \"gh\", found {:?}", r.kind)));
        }
        let rows = r
            .entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| {
                        u32::try_from(e).map_err(|_| Error::Malformed(format!("entry {e} is not a residue")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GHMatrix::new(r.g, r.lambda, rows)
    }
}

impl From<GHMatrix> for GhRepr {
    fn from(m: GHMatrix) -> Self {
        let entries = m.rows().map(|r| r.iter().map(|&e| e as i64).collect()).collect();
        Self { kind: "gh".into(), g: m.g, lambda: m.lambda, entries }
    }
}

impl GHMatrix {
    pub fn new(g: u32, lambda: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        if g < 2 {
            return Err(Error::Malformed(format!("group order must be at least 2, got {g}")));
        }
        if lambda == 0 {
            return Err(Error::Malformed("lambda must be positive".into()));
        }
        let side = g as usize * lambda as usize;
        if rows.len() != side {
            return Err(Error::Malformed(format!(
                "GH({g}, {lambda}) needs {side} rows, found {}",
                rows.len()
            )));
        }
        let mut entries = Vec::with_capacity(side * side);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != side {
                return Err(Error::Malformed(format!("row {i} has {} entries, expected {side}", row.len())));
            }
            if let Some(e) = row.iter().find(|&&e| e >= g) {
                return Err(Error::Malformed(format!("entry {e} in row {i} is outside Z_{g}")));
            }
            entries.extend(row);
        }
        Ok(Self { g, lambda, side, entries })
    }

    fn from_fn(g: u32, lambda: u32, f: impl Fn(usize, usize) -> u32) -> Self {
        let side = g as usize * lambda as usize;
        let entries = (0..side * side).map(|k| f(k / side, k % side) % g).collect();
        Self { g, lambda, side, entries }
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.side + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.side..(i + 1) * self.side]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.entries.chunks(self.side)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    /// Adds `c` (mod g) to every entry of row `i`.
    pub fn shift_row(&self, i: usize, c: u32) -> Self {
        let g = self.g;
        Self::from_fn(g, self.lambda, |r, col| self.get(r, col) + if r == i { c % g } else { 0 })
    }

    /// Adds `c` (mod g) to every entry of column `j`.
    pub fn shift_col(&self, j: usize, c: u32) -> Self {
        let g = self.g;
        Self::from_fn(g, self.lambda, |r, col| self.get(r, col) + if col == j { c % g } else { 0 })
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.side)?;
        Ok(Self::from_fn(self.g, self.lambda, |r, c| self.get(perm[r], c)))
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.side)?;
        Ok(Self::from_fn(self.g, self.lambda, |r, c| self.get(r, perm[c])))
    }

    /// Translates rows and columns so the first row and first column are zero.
    pub fn normalized(&self) -> Self {
        let g = self.g;
        Self::from_fn(g, self.lambda, |r, c| {
            // m[r][c] - m[r][0] - m[0][c] + m[0][0]
            self.get(r, c) + (g - self.get(r, 0)) + (g - self.get(0, c)) + self.get(0, 0)
        })
    }
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::Parameter(format!("permutation has length {}, expected {n}", perm.len())));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Parameter("not a permutation".into()));
        }
    }
    Ok(())
}

/// Outcome of [`verify_gh`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhReport {
    pub pass: bool,
    pub witness: Option<GhWitness>,
}

/// First failing row pair `(k, l)`, `k < l`, with the histogram of
/// `(m[k][j] - m[l][j]) mod g` indexed by residue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhWitness {
    pub rows: [usize; 2],
    pub histogram: Vec<usize>,
}

/// Checks the GH(g, λ) difference condition for every row pair.
pub fn verify_gh(m: &GHMatrix) -> GhReport {
    let g = m.g as usize;
    let lambda = m.lambda as usize;
    let mut hist = vec![0usize; g];
    for k in 0..m.side {
        let rk = m.row(k);
        for l in k + 1..m.side {
            hist.iter_mut().for_each(|h| *h = 0);
            for (&a, &b) in rk.iter().zip(m.row(l)) {
                hist[(a as usize + g - b as usize) % g] += 1;
            }
            if hist.iter().any(|&h| h != lambda) {
                return GhReport { pass: false, witness: Some(GhWitness { rows: [k, l], histogram: hist }) };
            }
        }
    }
    GhReport { pass: true, witness: None }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The multiplication table of `Z_p`, a GH(p, 1).
pub fn gh_cyclic_prime(p: u32) -> Result<GHMatrix> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    Ok(GHMatrix::from_fn(p, 1, |i, j| ((i * j) % p as usize) as u32))
}

/// Kronecker sum: entry `((i, j), (k, l))` is `a[i][k] + b[j][l] mod g`.
///
/// Two GH matrices over the same `Z_g` compose into a GH(g, g·λ_A·λ_B).
pub fn gh_compose(a: &GHMatrix, b: &GHMatrix) -> Result<GHMatrix> {
    if a.g != b.g {
        return Err(Error::GroupMismatch { left: a.g, right: b.g });
    }
    let lambda = a.g.checked_mul(a.lambda).and_then(|x| x.checked_mul(b.lambda)).ok_or(Error::Overflow)?;
    let sb = b.side;
    Ok(GHMatrix::from_fn(a.g, lambda, |r, c| a.get(r / sb, c / sb) + b.get(r % sb, c % sb)))
}

/// Parses a GH JSON document. The result always carries a fresh verification.
pub fn gh_import(data: &str) -> Result<(GHMatrix, GhReport)> {
    let m: GHMatrix = serde_json::from_str(data)?;
    let report = verify_gh(&m);
    Ok((m, report))
}

pub fn gh_export(m: &GHMatrix) -> String {
    serde_json::to_string(m).expect("GH matrices always serialize")
}
