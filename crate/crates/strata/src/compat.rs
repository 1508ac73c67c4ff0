//! Compatibility of idempotents with a left standardly stratified structure.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Scalar, Span};
use crate::modules::{
    corner_apply, corner_hom, corner_tensor, direct_sum, dual, inflate, iso_test, power, quotient_by_span,
    quotient_hom, quotient_tensor, regular, simple, top, CornerData, IsoVerdict, Module, QuotientData,
};
use crate::strat::{essential_order, LabelPoset, StratDatum, Verdict};

/// Chain steps: mask of the labels added and the layer multiplicities.
type Steps = Vec<(usize, Vec<(String, usize)>)>;

/// Labels `i` with `e L_i ≠ 0`.
pub fn support(a: &Algebra, e: &[Scalar]) -> Vec<String> {
    a.labels()
        .iter()
        .filter(|l| !simple(a, l).expect("label").act(e).is_zero())
        .cloned()
        .collect()
}

/// Sum of every distinguished idempotent carrying one of the labels.
pub fn idempotent_for_labels(a: &Algebra, labels: &[String]) -> Result<Vec<Scalar>> {
    let subset = a.idempotents_with_labels(labels)?;
    Ok(a.idempotent_sum(&subset))
}

/// All subset sums of the distinguished idempotent family, by bitmask.
pub fn subset_idempotents(a: &Algebra) -> Vec<Vec<Scalar>> {
    let n = a.idempotents().len();
    (0..1usize << n)
        .map(|mask| {
            let subset: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
            a.idempotent_sum(&subset)
        })
        .collect()
}

/// `A/AeA` as a left `A`-module.
pub fn quotient_module(a: &Algebra, e: &[Scalar]) -> Module {
    quotient_by_span(&regular(a), &a.idempotent_ideal(e)).module
}

/// `D(A/AeA)` for the right module `A/AeA`.
pub fn dual_quotient_module(a: &Algebra, e: &[Scalar]) -> Module {
    let op = a.opposite();
    dual(&quotient_by_span(&regular(&op), &op.idempotent_ideal(e)).module)
}

/// Chain `0 = J_0 ⊂ ... ⊂ J_n = A` of idempotent ideals `J_k = A e_{T_k} A`.
#[derive(Clone, Debug)]
pub struct StratificationChain {
    /// Labels added at each step.
    pub blocks: Vec<Vec<String>>,
    /// Bases of the ideals `J_1, ..., J_n` inside `A`.
    pub ideals: Vec<Matrix>,
    /// Position with `J_l = AeA`.
    pub position: usize,
    /// Standard summands `(label, multiplicity)` of each layer.
    pub layers: Vec<Vec<(String, usize)>>,
}

impl StratificationChain {
    pub fn to_json(&self) -> Value {
        json!({
            "blocks": self.blocks,
            "ideal_dims": self.ideals.iter().map(Matrix::cols).collect::<Vec<_>>(),
            "position": self.position,
            "layers": self.layers.iter().map(|l| l.iter().map(|(x, t)| json!({"label": x, "multiplicity": t})).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub enum ChainSearch {
    Found(StratificationChain),
    NotFound,
    Undetermined,
}

impl ChainSearch {
    pub fn verdict(&self) -> Verdict {
        match self {
            ChainSearch::Found(_) => Verdict::Yes,
            ChainSearch::NotFound => Verdict::No,
            ChainSearch::Undetermined => Verdict::Undetermined,
        }
    }
}

#[derive(Clone, Debug)]
enum Layer {
    Standard(Vec<(String, usize)>),
    Not,
    Unknown,
}

struct ChainSearcher<'a> {
    d: &'a StratDatum,
    labels: Vec<String>,
    target: usize,
    ideals: HashMap<usize, Span>,
    layers: HashMap<(usize, usize), Layer>,
    dead: HashMap<usize, bool>,
    undetermined: bool,
}

impl<'a> ChainSearcher<'a> {
    fn set(&self, mask: usize) -> Vec<String> {
        (0..self.labels.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| self.labels[k].clone())
            .collect()
    }

    fn ideal(&mut self, mask: usize) -> Span {
        if let Some(s) = self.ideals.get(&mask) {
            return s.clone();
        }
        let a = &self.d.algebra;
        let e = idempotent_for_labels(a, &self.set(mask)).expect("labels of A");
        let s = a.idempotent_ideal(&e);
        self.ideals.insert(mask, s.clone());
        s
    }

    /// Whether `J_{T ∪ B} / J_T` is a direct sum of standard modules.
    fn layer(&mut self, t: usize, b: usize) -> Layer {
        if let Some(l) = self.layers.get(&(t, b)) {
            return l.clone();
        }
        let a = &self.d.algebra;
        let lower = self.ideal(t);
        let upper = self.ideal(t | b);
        let reg = regular(a);
        let sub = crate::modules::submodule(&reg, &upper.basis_matrix());
        let left = sub.inclusion.left_inverse();
        let mut inner = Span::new(a.field(), upper.dim());
        for v in lower.basis() {
            inner.insert(&left.mul_vec(v));
        }
        let m = quotient_by_span(&sub.module, &inner).module;
        let hd = top(a, &m).module;
        let mult: Vec<(String, usize)> = a
            .labels()
            .iter()
            .map(|l| (l.clone(), crate::modules::comp_mult(a, &hd, l).expect("label")))
            .filter(|(_, t)| *t > 0)
            .collect();
        let parts: Vec<Module> = mult
            .iter()
            .map(|(l, t)| power(a, self.d.standard(l).expect("label"), *t))
            .collect();
        let refs: Vec<&Module> = parts.iter().collect();
        let result = match iso_test(a, &m, &direct_sum(a, &refs)) {
            IsoVerdict::Isomorphic(_) => Layer::Standard(mult),
            IsoVerdict::NotIsomorphic(_) => Layer::Not,
            IsoVerdict::Undetermined => Layer::Unknown,
        };
        self.layers.insert((t, b), result.clone());
        result
    }

    /// Depth-first search for a chain from `mask` to the full set.
    fn extend(&mut self, mask: usize) -> Option<Steps> {
        let full = (1usize << self.labels.len()) - 1;
        if mask == full {
            return Some(Vec::new());
        }
        if self.dead.get(&mask).copied().unwrap_or(false) {
            return None;
        }
        let rest = full & !mask;
        let mut b = rest;
        let mut blocks = Vec::new();
        while b > 0 {
            blocks.push(b);
            b = (b - 1) & rest;
        }
        blocks.sort_unstable();
        for b in blocks {
            let next = mask | b;
            let passes_target = if mask & self.target == mask && mask != self.target {
                next & self.target == next
            } else {
                true
            };
            if !passes_target {
                continue;
            }
            match self.layer(mask, b) {
                Layer::Standard(mult) => {
                    if let Some(mut tail) = self.extend(next) {
                        tail.insert(0, (b, mult));
                        return Some(tail);
                    }
                }
                Layer::Not => {}
                Layer::Unknown => self.undetermined = true,
            }
        }
        self.dead.insert(mask, true);
        None
    }
}

/// Searches for a chain of idempotent ideals with standard layers passing
/// through `AeA`.
pub fn build_stratification_chain(d: &StratDatum, e: &[Scalar]) -> Result<ChainSearch> {
    let a = &d.algebra;
    a.idempotent_subset(e)?;
    let labels = a.labels().to_vec();
    let supp = support(a, e);
    let target = (0..labels.len())
        .filter(|&k| supp.contains(&labels[k]))
        .fold(0, |m, k| m | 1 << k);
    let mut s = ChainSearcher {
        d,
        labels: labels.clone(),
        target,
        ideals: HashMap::new(),
        layers: HashMap::new(),
        dead: HashMap::new(),
        undetermined: false,
    };
    let Some(steps) = s.extend(0) else {
        return Ok(if s.undetermined {
            ChainSearch::Undetermined
        } else {
            ChainSearch::NotFound
        });
    };
    let mut mask = 0;
    let mut chain = StratificationChain {
        blocks: Vec::new(),
        ideals: Vec::new(),
        position: 0,
        layers: Vec::new(),
    };
    if target == 0 {
        chain.position = 0;
    }
    for (k, (b, mult)) in steps.into_iter().enumerate() {
        mask |= b;
        chain.blocks.push(s.set(b));
        chain.ideals.push(s.ideal(mask).basis_matrix());
        chain.layers.push(mult);
        if mask == target {
            chain.position = k + 1;
        }
    }
    Ok(ChainSearch::Found(chain))
}

/// Outcome of one recollement identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identity {
    Holds,
    Fails,
    Undetermined,
    Skipped(String),
}

impl Identity {
    fn from_iso(v: IsoVerdict) -> Identity {
        match v {
            IsoVerdict::Isomorphic(_) => Identity::Holds,
            IsoVerdict::NotIsomorphic(_) => Identity::Fails,
            IsoVerdict::Undetermined => Identity::Undetermined,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub label: String,
    pub outcome: Identity,
}

/// Corner and quotient algebras of an idempotent with their stratification
/// data; absent when the algebra would be zero.
pub struct Recollement {
    pub support: Vec<String>,
    pub complement: Vec<String>,
    pub corner: Option<(CornerData, StratDatum)>,
    pub quotient: Option<(QuotientData, StratDatum)>,
}

impl Recollement {
    pub fn new(d: &StratDatum, e: &[Scalar]) -> Result<Recollement> {
        let a = &d.algebra;
        a.idempotent_subset(e)?;
        let supp = support(a, e);
        let complement: Vec<String> = a.labels().iter().filter(|l| !supp.contains(l)).cloned().collect();
        let corner = if supp.is_empty() {
            None
        } else {
            let c = CornerData::new(a, e)?;
            let p = d.poset.restrict(&supp);
            let sd = StratDatum::new(&c.algebra, &p)?;
            Some((c, sd))
        };
        let quotient = if complement.is_empty() {
            None
        } else {
            let q = QuotientData::new(a, e)?;
            let p = d.poset.restrict(&complement);
            let sd = StratDatum::new(&q.algebra, &p)?;
            Some((q, sd))
        };
        Ok(Recollement {
            support: supp,
            complement,
            corner,
            quotient,
        })
    }
}

/// Identities between standard objects of `A`, `A/AeA` and `eAe`; entries
/// whose hypothesis fails are skipped.
pub fn recollement_identity_suite(
    d: &StratDatum,
    r: &Recollement,
    cond4: Verdict,
    cond5: Verdict,
) -> Vec<IdentityCheck> {
    let a = &d.algebra;
    let mut out = Vec::new();
    let mut push = |name: &str, label: &str, outcome: Identity| {
        out.push(IdentityCheck {
            name: name.into(),
            label: label.into(),
            outcome,
        })
    };
    let skip = |c: Verdict, what: &str| Identity::Skipped(format!("{what} is {c}"));
    if let Some((q, qd)) = &r.quotient {
        let qa = &q.algebra;
        for l in &r.complement {
            let get = |v: &Vec<Module>| v[qd.index(l).expect("label")].clone();
            let full = |v: &Vec<Module>| v[d.index(l).expect("label")].clone();
            push(
                "quotient standard is A/AeA ⊗ Δ",
                l,
                Identity::from_iso(iso_test(
                    qa,
                    &get(&qd.left.standard),
                    &quotient_tensor(a, q, &full(&d.left.standard)),
                )),
            );
            push(
                "quotient proper standard is A/AeA ⊗ Δ̄",
                l,
                Identity::from_iso(iso_test(
                    qa,
                    &get(&qd.left.proper_standard),
                    &quotient_tensor(a, q, &full(&d.left.proper_standard)),
                )),
            );
            push(
                "quotient costandard is Hom(A/AeA, ∇)",
                l,
                Identity::from_iso(iso_test(
                    qa,
                    &get(&qd.costandard),
                    &quotient_hom(a, q, &full(&d.costandard)),
                )),
            );
            push(
                "quotient proper costandard is Hom(A/AeA, ∇̄)",
                l,
                Identity::from_iso(iso_test(
                    qa,
                    &get(&qd.proper_costandard),
                    &quotient_hom(a, q, &full(&d.proper_costandard)),
                )),
            );
            push(
                "inflated quotient standard is Δ",
                l,
                if cond4.is_yes() {
                    Identity::from_iso(iso_test(
                        a,
                        &inflate(a, q, &get(&qd.left.standard)),
                        &full(&d.left.standard),
                    ))
                } else {
                    skip(cond4, "A/AeA ∈ F(Δ)")
                },
            );
            push(
                "inflated quotient proper costandard is ∇̄",
                l,
                if cond5.is_yes() {
                    Identity::from_iso(iso_test(
                        a,
                        &inflate(a, q, &get(&qd.proper_costandard)),
                        &full(&d.proper_costandard),
                    ))
                } else {
                    skip(cond5, "D(A/AeA) ∈ F(∇̄)")
                },
            );
        }
    }
    if let Some((c, cd)) = &r.corner {
        let ca = &c.algebra;
        let either = if cond4.is_yes() || cond5.is_yes() {
            Verdict::Yes
        } else {
            cond4.and(cond5)
        };
        for l in &r.support {
            let get = |v: &Vec<Module>| v[cd.index(l).expect("label")].clone();
            let full = |v: &Vec<Module>| v[d.index(l).expect("label")].clone();
            push(
                "corner standard is eΔ",
                l,
                if either.is_yes() {
                    Identity::from_iso(iso_test(
                        ca,
                        &get(&cd.left.standard),
                        &corner_apply(c, &full(&d.left.standard)),
                    ))
                } else {
                    skip(either, "a filtration hypothesis")
                },
            );
            push(
                "corner proper costandard is e∇̄",
                l,
                if either.is_yes() {
                    Identity::from_iso(iso_test(
                        ca,
                        &get(&cd.proper_costandard),
                        &corner_apply(c, &full(&d.proper_costandard)),
                    ))
                } else {
                    skip(either, "a filtration hypothesis")
                },
            );
            push(
                "Hom(eA, corner proper costandard) is ∇̄",
                l,
                if cond4.is_yes() {
                    Identity::from_iso(iso_test(
                        a,
                        &corner_hom(a, c, &get(&cd.proper_costandard)),
                        &full(&d.proper_costandard),
                    ))
                } else {
                    skip(cond4, "A/AeA ∈ F(Δ)")
                },
            );
            push(
                "Ae ⊗ corner standard is Δ",
                l,
                if cond5.is_yes() {
                    Identity::from_iso(iso_test(
                        a,
                        &corner_tensor(a, c, &get(&cd.left.standard)),
                        &full(&d.left.standard),
                    ))
                } else {
                    skip(cond5, "D(A/AeA) ∈ F(∇̄)")
                },
            );
        }
    }
    out
}

/// Conditions (1)-(6) for one idempotent, with certificates.
#[derive(Clone, Debug)]
pub struct CompatReport {
    pub idempotent: Vec<Scalar>,
    pub support: Vec<String>,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    /// Support is a coideal of the order.
    pub cond1: Verdict,
    /// A chain of idempotent ideals with standard layers passes through `AeA`.
    pub cond2: Verdict,
    pub chain: Option<StratificationChain>,
    /// Support is a coideal of the essential order.
    pub cond3: Verdict,
    /// `A/AeA ∈ F(Δ)`.
    pub cond4: Verdict,
    /// `D(A/AeA) ∈ F(∇̄)`.
    pub cond5: Verdict,
    /// Quotient and corner are left standardly stratified.
    pub cond6: Verdict,
    pub quotient_left_ss: Verdict,
    pub corner_left_ss: Verdict,
    pub diagram_consistent: bool,
    pub identities: Vec<IdentityCheck>,
}

impl CompatReport {
    pub fn conditions(&self) -> [Verdict; 6] {
        [self.cond1, self.cond2, self.cond3, self.cond4, self.cond5, self.cond6]
    }

    pub fn inconclusive(&self) -> bool {
        self.conditions().contains(&Verdict::Undetermined)
            || self.identities.iter().any(|c| c.outcome == Identity::Undetermined)
    }

    pub fn failed_identities(&self) -> Vec<&IdentityCheck> {
        self.identities
            .iter()
            .filter(|c| c.outcome == Identity::Fails)
            .collect()
    }

    pub fn to_json(&self, a: &Algebra) -> Value {
        json!({
            "idempotent": a.vector_name(&self.idempotent),
            "support": self.support,
            "ideal_dim": self.ideal_dim,
            "quotient_dim": self.quotient_dim,
            "conditions": {
                "1_support_coideal": self.cond1.as_str(),
                "2_stratifying_chain": self.cond2.as_str(),
                "3_support_essential_coideal": self.cond3.as_str(),
                "4_quotient_delta_filtered": self.cond4.as_str(),
                "5_dual_quotient_proper_costandard_filtered": self.cond5.as_str(),
                "6_quotient_and_corner_stratified": self.cond6.as_str(),
            },
            "quotient_left_standardly_stratified": self.quotient_left_ss.as_str(),
            "corner_left_standardly_stratified": self.corner_left_ss.as_str(),
            "chain": self.chain.as_ref().map(StratificationChain::to_json),
            "implication_diagram_consistent": self.diagram_consistent,
            "identities": self.identities.iter().map(|c| {
                let (status, reason) = match &c.outcome {
                    Identity::Holds => ("holds", None),
                    Identity::Fails => ("fails", None),
                    Identity::Undetermined => ("undetermined", None),
                    Identity::Skipped(r) => ("skipped", Some(r.clone())),
                };
                json!({"name": c.name, "label": c.label, "status": status, "reason": reason})
            }).collect::<Vec<_>>(),
        })
    }
}

/// `p ⇒ q` unless one side is undetermined.
fn implies(p: Verdict, q: Verdict) -> bool {
    !(p.is_yes() && q.is_no())
}

fn equivalent(p: Verdict, q: Verdict) -> bool {
    implies(p, q) && implies(q, p)
}

/// The implication diagram (1)⇒(2)⇔(3)⇔(4)∧(5), (4)⇒(6), (5)⇒(6).
pub fn diagram_holds(c: [Verdict; 6]) -> bool {
    implies(c[0], c[1])
        && equivalent(c[1], c[2])
        && equivalent(c[2], c[3].and(c[4]))
        && implies(c[3], c[5])
        && implies(c[4], c[5])
}

/// Evaluates all six conditions independently and the identity suite.
pub fn compatibility_battery(d: &StratDatum, e: &[Scalar]) -> Result<CompatReport> {
    if !d.left_ss().is_yes() {
        return Err(Error::InvalidPoset(format!(
            "algebra is not left standardly stratified for {} (verdict {})",
            d.poset,
            d.left_ss()
        )));
    }
    let a = &d.algebra;
    let r = Recollement::new(d, e)?;
    let ess = essential_order(d)?;
    let cond1 = Verdict::from_bool(d.poset.is_coideal(&r.support));
    let cond3 = Verdict::from_bool(ess.is_coideal(&r.support));
    let cond4 = d.in_delta(&quotient_module(a, e));
    let cond5 = d.in_proper_costandard(&dual_quotient_module(a, e));
    let quotient_left_ss = r.quotient.as_ref().map_or(Verdict::Yes, |(_, q)| q.left_ss());
    let corner_left_ss = r.corner.as_ref().map_or(Verdict::Yes, |(_, c)| c.left_ss());
    let cond6 = quotient_left_ss.and(corner_left_ss);
    let search = build_stratification_chain(d, e)?;
    let cond2 = search.verdict();
    let chain = match search {
        ChainSearch::Found(c) => Some(c),
        _ => None,
    };
    let ideal_dim = a.idempotent_ideal(e).dim();
    let quotient_dim = r.quotient.as_ref().map_or(0, |(q, _)| q.algebra.dim());
    let identities = recollement_identity_suite(d, &r, cond4, cond5);
    let conds = [cond1, cond2, cond3, cond4, cond5, cond6];
    Ok(CompatReport {
        idempotent: e.to_vec(),
        support: r.support,
        ideal_dim,
        quotient_dim,
        cond1,
        cond2,
        chain,
        cond3,
        cond4,
        cond5,
        cond6,
        quotient_left_ss,
        corner_left_ss,
        diagram_consistent: diagram_holds(conds),
        identities,
    })
}

/// Reports for every subset sum of the idempotent family.
pub fn all_idempotent_reports(d: &StratDatum) -> Result<Vec<CompatReport>> {
    subset_idempotents(&d.algebra)
        .iter()
        .map(|e| compatibility_battery(d, e))
        .collect()
}

/// Whether the induced order on a subset is the restriction; helper for
/// callers that need the sub-poset explicitly.
pub fn induced_poset(p: &LabelPoset, labels: &[String]) -> LabelPoset {
    p.restrict(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compile_quiver, QuiverPresentation};
    use crate::kernel::Field;

    fn quiver(arrows: &[(&str, &str, &str)], vertices: &[&str], rels: &[&[(i64, &[&str])]], n: usize) -> Algebra {
        let p = QuiverPresentation {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
            relations: rels
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, p)| (Field::Q.int(*c), p.iter().map(|s| s.to_string()).collect()))
                        .collect()
                })
                .collect(),
            max_path_length: n,
        };
        compile_quiver(&p, Field::Q).unwrap()
    }

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn sl2_block_at_e1() {
        let a = quiver(
            &[("α", "1", "2"), ("β", "2", "1")],
            &["1", "2"],
            &[&[(1, &["α", "β"])]],
            3,
        );
        let d = StratDatum::new(&a, &LabelPoset::chain(s(&["1", "2"]))).unwrap();
        let e1 = idempotent_for_labels(&a, &s(&["1"])).unwrap();
        let r = compatibility_battery(&d, &e1).unwrap();
        assert_eq!(r.support, s(&["1"]));
        assert_eq!(r.cond4, Verdict::No);
        assert_eq!(r.cond5, Verdict::No);
        assert_eq!(r.cond6, Verdict::Yes);
        assert!(r.diagram_consistent);
        let e2 = idempotent_for_labels(&a, &s(&["2"])).unwrap();
        let r2 = compatibility_battery(&d, &e2).unwrap();
        assert_eq!(r2.conditions(), [Verdict::Yes; 6]);
        assert!(r2.failed_identities().is_empty());
        let chain = r2.chain.unwrap();
        assert_eq!(chain.ideals[0].cols(), 4);
        assert_eq!(chain.layers[0], vec![("2".to_string(), 2)]);
    }

    #[test]
    fn trivial_idempotents() {
        let a = quiver(&[("α", "1", "2")], &["1", "2"], &[], 2);
        let d = StratDatum::new(&a, &LabelPoset::chain(s(&["1", "2"]))).unwrap();
        for e in [a.zero(), a.unit().to_vec()] {
            let r = compatibility_battery(&d, &e).unwrap();
            assert_eq!(r.conditions(), [Verdict::Yes; 6]);
            assert_eq!(r.ideal_dim + r.quotient_dim, a.dim());
            assert!(r.failed_identities().is_empty());
        }
    }
}
