//! Decomposition multiplicities: the V-matrix recursion, the ℓ-vector and
//! Bruhat posets of rank at most two.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::compat::{compatibility_battery, Recollement};
use crate::error::{Error, Result};
use crate::kernel::{Field, Matrix, Scalar};
use crate::modules::{comp_mult, hom_dim};
use crate::strat::{LabelPoset, StratDatum};

/// `costd_comp[j][k] = [∇_j : L_k]`, `hom_std[j][i] = dim Hom(Δ_j, Δ_i)` and
/// `std_comp[i][j] = [Δ_i : L_j]`, indexed by the poset labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTables {
    pub poset: LabelPoset,
    pub costd_comp: Vec<Vec<i64>>,
    pub hom_std: Vec<Vec<i64>>,
    pub std_comp: Vec<Vec<i64>>,
}

impl MultTables {
    pub fn new(
        poset: LabelPoset,
        costd_comp: Vec<Vec<i64>>,
        hom_std: Vec<Vec<i64>>,
        std_comp: Vec<Vec<i64>>,
    ) -> Result<MultTables> {
        let n = poset.len();
        for (name, m) in [
            ("costd_comp", &costd_comp),
            ("hom_std", &hom_std),
            ("std_comp", &std_comp),
        ] {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidTables(format!("{name} must be {n}x{n}")));
            }
            if m.iter().flatten().any(|&x| x < 0) {
                return Err(Error::InvalidTables(format!("{name} has a negative entry")));
            }
        }
        for i in 0..n {
            let l = &poset.labels()[i];
            if costd_comp[i][i] != 1 {
                return Err(Error::InvalidTables(format!("[∇_{l} : L_{l}] must be 1")));
            }
            if std_comp[i][i] != 1 {
                return Err(Error::InvalidTables(format!("[Δ_{l} : L_{l}] must be 1")));
            }
            for j in 0..n {
                let m = &poset.labels()[j];
                if std_comp[i][j] != 0 && !poset.leq(j, i) {
                    return Err(Error::InvalidTables(format!(
                        "[Δ_{l} : L_{m}] ≠ 0 but {m} is not below {l}"
                    )));
                }
                if costd_comp[i][j] != 0 && !poset.leq(j, i) {
                    return Err(Error::InvalidTables(format!(
                        "[∇_{l} : L_{m}] ≠ 0 but {m} is not below {l}"
                    )));
                }
            }
        }
        Ok(MultTables {
            poset,
            costd_comp,
            hom_std,
            std_comp,
        })
    }

    /// Every multiplicity allowed by the order equals one.
    pub fn all_ones(poset: &LabelPoset) -> MultTables {
        let n = poset.len();
        let below = |i: usize, j: usize| i64::from(poset.leq(j, i));
        let lower: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| below(i, j)).collect()).collect();
        let hom = (0..n).map(|j| (0..n).map(|i| below(i, j)).collect()).collect();
        MultTables::new(poset.clone(), lower.clone(), hom, lower).expect("consistent by construction")
    }

    /// Tables of a quasi-hereditary algebra.
    pub fn from_algebra(d: &StratDatum) -> Result<MultTables> {
        let a = &d.algebra;
        if a.field().characteristic() != 0 {
            return Err(Error::UnsupportedField(format!(
                "multiplicity tables need characteristic 0, got {}",
                a.field()
            )));
        }
        if !d.quasi_hereditary().is_yes() {
            return Err(Error::NotQuasiHereditary);
        }
        let labels = d.labels();
        let n = labels.len();
        let comp = |m: &crate::modules::Module| -> Result<Vec<i64>> {
            labels.iter().map(|l| Ok(comp_mult(a, m, l)? as i64)).collect()
        };
        let costd_comp = d.costandard.iter().map(comp).collect::<Result<_>>()?;
        let std_comp = d.left.standard.iter().map(comp).collect::<Result<_>>()?;
        let hom_std = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| hom_dim(a, &d.left.standard[j], &d.left.standard[i]) as i64)
                    .collect()
            })
            .collect();
        MultTables::new(d.poset.clone(), costd_comp, hom_std, std_comp)
    }

    pub fn from_json(v: &Value) -> Result<MultTables> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("tables must be an object".into()))?;
        for k in obj.keys() {
            if !["labels", "poset", "costd_comp", "hom_std", "std_comp"].contains(&k.as_str()) {
                return Err(Error::Parse(format!("unknown key {k:?} in tables")));
            }
        }
        let pairs: Vec<(String, String)> = serde_json::from_value(obj.get("poset").cloned().unwrap_or(json!([])))
            .map_err(|e| Error::Parse(format!("tables poset: {e}")))?;
        let labels: Vec<String> = match obj.get("labels") {
            Some(l) => serde_json::from_value(l.clone()).map_err(|e| Error::Parse(format!("tables labels: {e}")))?,
            None => {
                let mut seen = Vec::new();
                for (a, b) in &pairs {
                    for x in [a, b] {
                        if !seen.contains(x) {
                            seen.push(x.clone());
                        }
                    }
                }
                seen
            }
        };
        let poset = LabelPoset::from_pairs(labels, &pairs)?;
        let matrix = |key: &str| -> Result<Vec<Vec<i64>>> {
            let m = obj
                .get(key)
                .ok_or_else(|| Error::Parse(format!("tables need {key:?}")))?;
            serde_json::from_value(m.clone()).map_err(|e| Error::Parse(format!("tables {key}: {e}")))
        };
        MultTables::new(poset, matrix("costd_comp")?, matrix("hom_std")?, matrix("std_comp")?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "labels": self.poset.labels(),
            "poset": self.poset.cover_pairs(),
            "costd_comp": self.costd_comp,
            "hom_std": self.hom_std,
            "std_comp": self.std_comp,
        })
    }
}

/// Square integer matrix indexed by labels; row `i` is `v_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VMatrix {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

impl VMatrix {
    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn get(&self, i: &str, j: &str) -> Result<i64> {
        Ok(self.rows[self.index(i)?][self.index(j)?])
    }

    /// Ones on the diagonal and `v_ij = 0` unless `j ⊴ i`.
    pub fn is_unitriangular(&self, poset: &LabelPoset) -> bool {
        let p = poset.reorder(&self.labels).expect("same labels");
        let n = self.labels.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self.rows[i][j] == 1
                } else {
                    self.rows[i][j] == 0 || p.lt(j, i)
                }
            })
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(|&x| x >= 0)
    }

    pub fn determinant(&self) -> Scalar {
        let rows: Vec<&[i64]> = self.rows.iter().map(Vec::as_slice).collect();
        Matrix::from_i64(Field::Q, &rows).determinant()
    }

    /// Entries `v_ij` with `j` immediately below `i` in the linear extension;
    /// informational only.
    pub fn subdiagonal(&self, poset: &LabelPoset) -> Vec<(String, String, i64)> {
        let p = poset.reorder(&self.labels).expect("same labels");
        let ext = p.linear_extension(false);
        ext.windows(2)
            .map(|w| {
                (
                    self.labels[w[1]].clone(),
                    self.labels[w[0]].clone(),
                    self.rows[w[1]][w[0]],
                )
            })
            .collect()
    }

    /// Principal submatrix on the given labels, in that order.
    pub fn restrict(&self, labels: &[String]) -> Result<VMatrix> {
        let idx: Vec<usize> = labels.iter().map(|l| self.index(l)).collect::<Result<_>>()?;
        Ok(VMatrix {
            labels: labels.to_vec(),
            rows: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.rows[i][j]).collect())
                .collect(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({"labels": self.labels, "rows": self.rows})
    }
}

impl fmt::Display for VMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.labels.iter().map(String::len).max().unwrap_or(1);
        for (l, r) in self.labels.iter().zip(&self.rows) {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "{l:>w$} |{}", cells.join(""))?;
        }
        Ok(())
    }
}

fn overflow() -> Error {
    Error::InvalidTables("integer overflow in the recursion".into())
}

fn recursion(t: &MultTables, ext: &[usize]) -> Result<Vec<Vec<i64>>> {
    let p = &t.poset;
    let n = p.len();
    let mut v = vec![vec![0i64; n]; n];
    for &i in ext {
        let mut row = vec![0i64; n];
        row[i] = 1;
        for j in (0..n).filter(|&j| p.lt(j, i)) {
            for k in (0..n).filter(|&k| p.leq(k, j)) {
                let c = t.costd_comp[j][k].checked_mul(t.hom_std[j][i]).ok_or_else(overflow)?;
                if c != 0 {
                    for (x, y) in row.iter_mut().zip(&v[k]) {
                        *x = c.checked_mul(*y).and_then(|m| x.checked_add(m)).ok_or_else(overflow)?;
                    }
                }
            }
            let c = t.std_comp[i][j];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&v[j]) {
                    *x = c.checked_mul(*y).and_then(|m| x.checked_sub(m)).ok_or_else(overflow)?;
                }
            }
        }
        v[i] = row;
    }
    Ok(v)
}

/// Runs the recursion along the first linear extension and checks the
/// result against a second one.
pub fn v_matrix_from_tables(t: &MultTables) -> Result<VMatrix> {
    let first = recursion(t, &t.poset.linear_extension(false))?;
    let second = recursion(t, &t.poset.linear_extension(true))?;
    assert_eq!(first, second, "recursion depends on the linear extension");
    Ok(VMatrix {
        labels: t.poset.labels().to_vec(),
        rows: first,
    })
}

pub fn v_matrix_from_algebra(d: &StratDatum) -> Result<VMatrix> {
    v_matrix_from_tables(&MultTables::from_algebra(d)?)
}

/// Row sums of `V`.
pub fn ell(v: &VMatrix) -> Vec<i64> {
    v.rows.iter().map(|r| r.iter().sum()).collect()
}

/// Solution of `V x = dims` when it is strictly positive. `V` must be
/// unitriangular for `poset`.
pub fn regular_borel_existence(v: &VMatrix, poset: &LabelPoset, dims: &[i64]) -> Option<Vec<i64>> {
    let p = poset.reorder(&v.labels).expect("same labels");
    let mut x = vec![0i64; v.labels.len()];
    for i in p.linear_extension(false) {
        let mut s = dims[i];
        for j in (0..x.len()).filter(|&j| j != i) {
            s -= v.rows[i][j] * x[j];
        }
        x[i] = s;
    }
    x.iter().all(|&c| c > 0).then_some(x)
}

/// Comparison of `V(A)` with the matrices of `A/AeA` and `eAe`.
#[derive(Clone, Debug)]
pub struct BlockCheck {
    pub support: Vec<String>,
    pub complement: Vec<String>,
    pub full: VMatrix,
    pub quotient: Option<VMatrix>,
    pub corner: Option<VMatrix>,
    /// `v_ij = 0` for `i` outside the support and `j` inside.
    pub upper_right_zero: bool,
    pub quotient_block: bool,
    pub corner_block: bool,
    /// `ℓ_i^A = ℓ_i^{A/AeA}` off the support.
    pub quotient_ell_equal: bool,
    /// `ℓ_i^A ≥ ℓ_i^{eAe}` on the support.
    pub corner_ell_bounded: bool,
    /// `ℓ_i^{eAe} = ℓ_i^A` on the support; fails whenever the lower left
    /// block is nonzero.
    pub corner_ell_equal: bool,
    /// `ℓ_i^A ≥ ℓ_i^{A/AeA}` off the support.
    pub quotient_ell_bounded: bool,
}

impl BlockCheck {
    /// Block form and the row-sum relations it forces.
    pub fn holds(&self) -> bool {
        self.upper_right_zero
            && self.quotient_block
            && self.corner_block
            && self.quotient_ell_equal
            && self.corner_ell_bounded
    }

    /// Lower left block `v_ij`, `i` in the support, `j` outside.
    pub fn lower_left_zero(&self) -> bool {
        self.support
            .iter()
            .all(|i| self.complement.iter().all(|j| self.full.get(i, j) == Ok(0)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "support": self.support,
            "complement": self.complement,
            "v": self.full.to_json(),
            "v_quotient": self.quotient.as_ref().map(VMatrix::to_json),
            "v_corner": self.corner.as_ref().map(VMatrix::to_json),
            "upper_right_zero": self.upper_right_zero,
            "quotient_block": self.quotient_block,
            "corner_block": self.corner_block,
            "quotient_ell_equal": self.quotient_ell_equal,
            "corner_ell_bounded": self.corner_ell_bounded,
            "corner_ell_equal": self.corner_ell_equal,
            "quotient_ell_bounded": self.quotient_ell_bounded,
            "holds": self.holds(),
        })
    }
}

/// Block form of `V` along a compatible idempotent.
pub fn block_structure_check(d: &StratDatum, e: &[Scalar]) -> Result<BlockCheck> {
    let report = compatibility_battery(d, e)?;
    if !(report.cond4.is_yes() && report.cond5.is_yes()) {
        return Err(Error::Incompatible(format!(
            "support {:?} (quotient Δ-filtered: {}, dual quotient ∇̄-filtered: {})",
            report.support, report.cond4, report.cond5
        )));
    }
    let full = v_matrix_from_algebra(d)?;
    let r = Recollement::new(d, e)?;
    let quotient = r.quotient.as_ref().map(|(_, q)| v_matrix_from_algebra(q)).transpose()?;
    let corner = r.corner.as_ref().map(|(_, c)| v_matrix_from_algebra(c)).transpose()?;
    let mut upper_right_zero = true;
    for i in &r.complement {
        for j in &r.support {
            upper_right_zero &= full.get(i, j)? == 0;
        }
    }
    let block_eq = |m: &Option<VMatrix>, labels: &[String]| -> Result<bool> {
        Ok(match m {
            None => labels.is_empty(),
            Some(m) => full.restrict(labels)? == m.restrict(labels)?,
        })
    };
    let quotient_block = block_eq(&quotient, &r.complement)?;
    let corner_block = block_eq(&corner, &r.support)?;
    let ell_full = ell(&full);
    let ell_of = |m: &VMatrix, l: &str| -> Result<i64> { Ok(ell(m)[m.index(l)?]) };
    let (mut corner_ell_equal, mut corner_ell_bounded) = (true, true);
    if let Some(c) = &corner {
        for l in &r.support {
            let (x, y) = (ell_full[full.index(l)?], ell_of(c, l)?);
            corner_ell_equal &= x == y;
            corner_ell_bounded &= x >= y;
        }
    }
    let (mut quotient_ell_equal, mut quotient_ell_bounded) = (true, true);
    if let Some(q) = &quotient {
        for l in &r.complement {
            let (x, y) = (ell_full[full.index(l)?], ell_of(q, l)?);
            quotient_ell_equal &= x == y;
            quotient_ell_bounded &= x >= y;
        }
    }
    Ok(BlockCheck {
        support: r.support.clone(),
        complement: r.complement.clone(),
        full,
        quotient,
        corner,
        upper_right_zero,
        quotient_block,
        corner_block,
        quotient_ell_equal,
        corner_ell_bounded,
        corner_ell_equal,
        quotient_ell_bounded,
    })
}

/// Weyl groups handled by the Bruhat order routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylType {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
}

impl WeylType {
    pub fn parse(s: &str) -> Result<WeylType> {
        match s.to_ascii_uppercase().replace(['×', '*'], "X").as_str() {
            "A1" => Ok(WeylType::A1),
            "A1XA1" => Ok(WeylType::A1xA1),
            "A2" => Ok(WeylType::A2),
            "B2" | "C2" => Ok(WeylType::B2),
            "G2" => Ok(WeylType::G2),
            _ => Err(Error::UnsupportedType(s.to_string())),
        }
    }

    /// Order of the product of the two simple reflections.
    fn m(self) -> usize {
        match self {
            WeylType::A1 => 1,
            WeylType::A1xA1 => 2,
            WeylType::A2 => 3,
            WeylType::B2 => 4,
            WeylType::G2 => 6,
        }
    }
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WeylType::A1 => "A1",
            WeylType::A1xA1 => "A1xA1",
            WeylType::A2 => "A2",
            WeylType::B2 => "B2",
            WeylType::G2 => "G2",
        };
        f.write_str(s)
    }
}

/// Element `r^k s^f` of the dihedral group of order `2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Dihedral {
    k: usize,
    f: bool,
}

impl Dihedral {
    fn mul(self, o: Dihedral, m: usize) -> Dihedral {
        let k = if self.f {
            (self.k + m - o.k) % m
        } else {
            (self.k + o.k) % m
        };
        Dihedral { k, f: self.f ^ o.f }
    }
}

/// Weyl group with its Bruhat order; `heights[i]` is the length of a longest
/// chain from the identity.
#[derive(Clone, Debug)]
pub struct BruhatPoset {
    pub weyl: WeylType,
    pub poset: LabelPoset,
    pub heights: Vec<usize>,
    /// Reduced word of each element, over the letters `s` and `t`.
    pub words: Vec<String>,
}

impl BruhatPoset {
    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn height(&self, label: &str) -> Result<usize> {
        Ok(self.heights[self.poset.index(label)?])
    }
}

fn word_value(word: &[u8], m: usize) -> Dihedral {
    let s = Dihedral { k: 0, f: true };
    let t = Dihedral {
        k: 1 % m.max(1),
        f: true,
    };
    word.iter().fold(Dihedral { k: 0, f: false }, |acc, &c| {
        acc.mul(if c == b's' { s } else { t }, m.max(1))
    })
}

/// Bruhat order from the subword property on reduced words.
pub fn bruhat_poset(weyl: WeylType) -> BruhatPoset {
    let m = weyl.m();
    let mut words: Vec<String> = vec![String::new()];
    if m == 1 {
        words.push("s".into());
    } else {
        for len in 1..m {
            for first in *b"st" {
                let w: String = (0..len)
                    .map(|i| if (i % 2 == 0) == (first == b's') { 's' } else { 't' })
                    .collect();
                words.push(w);
            }
        }
        words.push((0..m).map(|i| if i % 2 == 0 { 's' } else { 't' }).collect());
    }
    let mm = m.max(1);
    let values: Vec<Dihedral> = if m == 1 {
        vec![Dihedral { k: 0, f: false }, Dihedral { k: 0, f: true }]
    } else {
        words.iter().map(|w| word_value(w.as_bytes(), mm)).collect()
    };
    let n = words.len();
    for i in 0..n {
        for j in 0..i {
            assert_ne!(values[i], values[j], "reduced words of distinct elements");
        }
    }
    let mut leq = vec![vec![false; n]; n];
    for (wi, w) in words.iter().enumerate() {
        let bytes = w.as_bytes();
        for mask in 0..1usize << bytes.len() {
            let sub: Vec<u8> = (0..bytes.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| bytes[b])
                .collect();
            let val = if m == 1 {
                Dihedral {
                    k: 0,
                    f: sub.len() % 2 == 1,
                }
            } else {
                word_value(&sub, mm)
            };
            let u = values.iter().position(|x| *x == val).expect("group element");
            leq[u][wi] = true;
        }
    }
    let labels: Vec<String> = words
        .iter()
        .map(|w| if w.is_empty() { "e".to_string() } else { w.clone() })
        .collect();
    let poset = LabelPoset::from_relation(labels, leq).expect("Bruhat order is a partial order");
    let order = poset.linear_extension(false);
    let mut heights = vec![0usize; n];
    for &w in &order {
        heights[w] = (0..n)
            .filter(|&u| poset.lt(u, w))
            .map(|u| heights[u] + 1)
            .max()
            .unwrap_or(0);
    }
    BruhatPoset {
        weyl,
        poset,
        heights,
        words,
    }
}

/// `ℓ_w = 1` for the minimal element and `3^{ht(w) - 1}` otherwise.
pub fn reference_ell_formula(weyl: WeylType) -> Result<Vec<(String, u64)>> {
    if !matches!(weyl, WeylType::A2 | WeylType::B2 | WeylType::G2) {
        return Err(Error::UnsupportedType(weyl.to_string()));
    }
    let b = bruhat_poset(weyl);
    Ok(b.poset
        .labels()
        .iter()
        .zip(&b.heights)
        .map(|(l, &h)| (l.clone(), if h == 0 { 1 } else { 3u64.pow(h as u32 - 1) }))
        .collect())
}

/// Tables of the principal block for types where every relevant
/// multiplicity is one; other types need user-supplied tables.
pub fn builtin_tables(weyl: WeylType) -> Result<MultTables> {
    match weyl {
        WeylType::A1 | WeylType::A1xA1 => Ok(MultTables::all_ones(&bruhat_poset(weyl).poset)),
        _ => Err(Error::UnsupportedType(format!(
            "{weyl} has no built-in tables; supply them with --tables"
        ))),
    }
}

/// Dimension of each simple, for the existence test.
pub fn simple_dims(a: &Algebra) -> Vec<i64> {
    a.labels()
        .iter()
        .map(|l| a.idempotents().iter().filter(|e| &e.label == l).count() as i64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn a1_is_identity() {
        let t = builtin_tables(WeylType::A1).unwrap();
        let v = v_matrix_from_tables(&t).unwrap();
        assert_eq!(v.rows, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(ell(&v), vec![1, 1]);
        assert_eq!(regular_borel_existence(&v, &t.poset, &[1, 1]), Some(vec![1, 1]));
    }

    #[test]
    fn a1xa1_longest_row() {
        let t = builtin_tables(WeylType::A1xA1).unwrap();
        let v = v_matrix_from_tables(&t).unwrap();
        // by hand: v_st = ε_st + (v_e) + (v_e + v_s) + (v_e + v_t) - (v_e + v_s + v_t)
        assert_eq!(v.get("st", "e").unwrap(), 2);
        assert_eq!(v.get("st", "st").unwrap(), 1);
        assert_eq!(v.get("st", "s").unwrap(), 0);
        let l = ell(&v);
        let idx = |x: &str| v.index(x).unwrap();
        assert_eq!([l[idx("e")], l[idx("s")], l[idx("t")], l[idx("st")]], [1, 1, 1, 3]);
        assert!(v.is_unitriangular(&t.poset));
        assert!(v.determinant().is_one());
        // back substitution: x_e = 1, x_s = x_t = 1, x_st = 1 - 2 = -1
        assert_eq!(regular_borel_existence(&v, &t.poset, &[1, 1, 1, 1]), None);
        let dims: Vec<i64> = l.clone();
        assert_eq!(regular_borel_existence(&v, &t.poset, &dims), Some(vec![1, 1, 1, 1]));
    }

    #[test]
    fn bruhat_heights() {
        for (w, size, h) in [
            (WeylType::A1, 2, 1),
            (WeylType::A1xA1, 4, 2),
            (WeylType::A2, 6, 3),
            (WeylType::B2, 8, 4),
            (WeylType::G2, 12, 6),
        ] {
            let b = bruhat_poset(w);
            assert_eq!(b.poset.len(), size);
            assert_eq!(b.max_height(), h);
            // height equals word length
            for (word, ht) in b.words.iter().zip(&b.heights) {
                assert_eq!(word.len(), *ht);
            }
        }
        let b = bruhat_poset(WeylType::A1xA1);
        let p = &b.poset;
        let (s1, s2) = (p.index("s").unwrap(), p.index("t").unwrap());
        assert!(!p.leq(s1, s2) && !p.leq(s2, s1));
    }

    #[test]
    fn reference_values() {
        let f = reference_ell_formula(WeylType::A2).unwrap();
        assert_eq!(f.iter().find(|(l, _)| l == "e").unwrap().1, 1);
        assert_eq!(f.iter().map(|x| x.1).max(), Some(9));
        let g = reference_ell_formula(WeylType::G2).unwrap();
        assert_eq!(g.iter().map(|x| x.1).max(), Some(243));
        assert!(reference_ell_formula(WeylType::A1xA1).is_err());
    }

    #[test]
    fn tables_validation_and_json() {
        let p = LabelPoset::chain(s(&["1", "2"]));
        let bad = MultTables::new(
            p.clone(),
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![1, 0], vec![1, 1]],
        );
        assert!(matches!(bad, Err(Error::InvalidTables(_))));
        let t = MultTables::all_ones(&p);
        assert_eq!(MultTables::from_json(&t.to_json()).unwrap(), t);
        let mut j = t.to_json();
        j["extra"] = json!(1);
        assert!(MultTables::from_json(&j).is_err());
    }
}
