//! Standard and costandard modules, stratification verdicts, filtrations.

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Span};
use crate::modules::{
    comp_mult, dual, ext_dim, generate, hom_dim, injective, iso_test, power, projective, quotient_by_span,
    radical_span, submodule, trace_of_projective, IsoVerdict, Module,
};

/// Three-valued outcome of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn is_no(self) -> bool {
        self == Verdict::No
    }

    pub fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Undetermined,
        }
    }

    pub fn all(it: impl IntoIterator<Item = Verdict>) -> Verdict {
        it.into_iter().fold(Verdict::Yes, Verdict::and)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Partial order on simple labels; `leq[a][b]` means `a ⊴ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelPoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl LabelPoset {
    /// Validates a relation matrix as a partial order.
    pub fn from_relation(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<LabelPoset> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("relation matrix has the wrong shape".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::InvalidPoset(format!("{} is not related to itself", labels[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::NotAntisymmetric(format!("{} and {}", labels[a], labels[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::InvalidPoset("relation is not transitive".into()));
                    }
                }
            }
        }
        Ok(LabelPoset { labels, leq })
    }

    /// Reflexive-transitive closure of the pairs `(a, b)` read as `a ⊴ b`.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(String, String)]) -> Result<LabelPoset> {
        let n = labels.len();
        let idx = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for (a, b) in pairs {
            leq[idx(a)?][idx(b)?] = true;
        }
        close(&mut leq);
        LabelPoset::from_relation(labels, leq)
    }

    pub fn discrete(labels: Vec<String>) -> LabelPoset {
        LabelPoset::from_pairs(labels, &[]).expect("discrete order")
    }

    /// Total order following the given label order.
    pub fn chain(labels: Vec<String>) -> LabelPoset {
        let pairs: Vec<(String, String)> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        LabelPoset::from_pairs(labels, &pairs).expect("chain")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|x| x == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    /// Covering pairs `(a, b)` with `a ◁ b`.
    pub fn cover_pairs(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        out
    }

    /// Whether the labels form an up-set.
    pub fn is_coideal(&self, set: &[String]) -> bool {
        set.iter().all(|l| {
            let a = self.index(l).expect("label of the poset");
            (0..self.len()).all(|b| !self.leq[a][b] || set.contains(&self.labels[b]))
        })
    }

    /// Induced order on a subset, keeping this poset's label order.
    pub fn restrict(&self, subset: &[String]) -> LabelPoset {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| subset.contains(&self.labels[i])).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let leq = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| self.leq[a][b]).collect())
            .collect();
        LabelPoset { labels, leq }
    }

    /// Same order with labels listed as in `labels`.
    pub fn reorder(&self, labels: &[String]) -> Result<LabelPoset> {
        if labels.len() != self.len() {
            return Err(Error::InvalidPoset("label sets differ".into()));
        }
        let map: Vec<usize> = labels.iter().map(|l| self.index(l)).collect::<Result<_>>()?;
        let leq = map
            .iter()
            .map(|&a| map.iter().map(|&b| self.leq[a][b]).collect())
            .collect();
        Ok(LabelPoset {
            labels: labels.to_vec(),
            leq,
        })
    }

    /// Product order on pairs, labelled `(a,b)` as in tensor products.
    pub fn product(&self, other: &LabelPoset) -> LabelPoset {
        let (n, m) = (self.len(), other.len());
        let labels = (0..n * m)
            .map(|k| format!("({},{})", self.labels[k / m], other.labels[k % m]))
            .collect();
        let leq = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.leq[x / m][y / m] && other.leq[x % m][y % m])
                    .collect()
            })
            .collect();
        LabelPoset::from_relation(labels, leq).expect("product of partial orders")
    }

    /// Every relation of `other` holds here.
    pub fn refines(&self, other: &LabelPoset) -> bool {
        let o = other.reorder(&self.labels).expect("same labels");
        (0..self.len()).all(|a| (0..self.len()).all(|b| !o.leq[a][b] || self.leq[a][b]))
    }

    /// Linear extension choosing the first available label in label order
    /// (`reverse` chooses the last); listed from bottom to top.
    pub fn linear_extension(&self, reverse: bool) -> Vec<usize> {
        let n = self.len();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        while out.len() < n {
            let mut avail = (0..n).filter(|&b| !done[b] && (0..n).all(|a| done[a] || !self.lt(a, b)));
            let pick = if reverse { avail.next_back() } else { avail.min() }.expect("acyclic");
            done[pick] = true;
            out.push(pick);
        }
        out
    }

    /// Total order given by a linear extension.
    pub fn total_refinement(&self, ext: &[usize]) -> LabelPoset {
        let order: Vec<String> = ext.iter().map(|&i| self.labels[i].clone()).collect();
        LabelPoset::chain(order).reorder(&self.labels).expect("same labels")
    }

    /// Every linear extension, bottom to top.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        fn go(p: &LabelPoset, done: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let n = p.len();
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for b in 0..n {
                if !done[b] && (0..n).all(|a| done[a] || !p.lt(a, b)) {
                    done[b] = true;
                    cur.push(b);
                    go(p, done, cur, out);
                    cur.pop();
                    done[b] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut vec![false; self.len()], &mut Vec::new(), &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "labels": self.labels,
            "covers": self.cover_pairs().iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for LabelPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers = self.cover_pairs();
        if covers.is_empty() {
            return write!(f, "antichain on {{{}}}", self.labels.join(", "));
        }
        let parts: Vec<String> = covers.iter().map(|(a, b)| format!("{a} < {b}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[allow(clippy::needless_range_loop)]
fn close(leq: &mut [Vec<bool>]) {
    let n = leq.len();
    for k in 0..n {
        for a in 0..n {
            if leq[a][k] {
                for b in 0..n {
                    if leq[k][b] {
                        leq[a][b] = true;
                    }
                }
            }
        }
    }
}

/// All partial orders on the labels.
pub fn enumerate_posets(labels: &[String]) -> Result<Vec<LabelPoset>> {
    let n = labels.len();
    if n > 5 {
        return Err(Error::SizeGuard(n));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    'outer: for code in 0..total {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        let mut c = code;
        for &(a, b) in &pairs {
            match c % 3 {
                1 => leq[a][b] = true,
                2 => leq[b][a] = true,
                _ => {}
            }
            c /= 3;
        }
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    if leq[a][b] && leq[b][k] && !leq[a][k] {
                        continue 'outer;
                    }
                }
            }
        }
        out.push(LabelPoset {
            labels: labels.to_vec(),
            leq,
        });
    }
    Ok(out)
}

/// One module in a filtration family.
#[derive(Clone, Copy, Debug)]
pub struct Member<'a> {
    pub label: usize,
    pub module: &'a Module,
    /// A failed layer comparison disproves membership; false for proper
    /// standard objects that differ from the standard one.
    pub decisive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationCertificate {
    /// `(label, multiplicity)` from the bottom layer up.
    pub layers: Vec<(String, usize)>,
    /// Submodules of the filtered module, bottom first, as column bases.
    pub chain: Vec<Matrix>,
}

impl FiltrationCertificate {
    pub fn multiplicity(&self, label: &str) -> usize {
        self.layers.iter().filter(|(l, _)| l == label).map(|(_, t)| t).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "layers": self.layers.iter().map(|(l, t)| json!({"label": l, "multiplicity": t})).collect::<Vec<_>>(),
            "chain": self.chain,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filtration {
    Filtered(FiltrationCertificate),
    NotFiltered(String),
    Undetermined(String),
}

impl Filtration {
    pub fn verdict(&self) -> Verdict {
        match self {
            Filtration::Filtered(_) => Verdict::Yes,
            Filtration::NotFiltered(_) => Verdict::No,
            Filtration::Undetermined(_) => Verdict::Undetermined,
        }
    }

    pub fn certificate(&self) -> Option<&FiltrationCertificate> {
        match self {
            Filtration::Filtered(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Filtration::Filtered(c) => json!({"verdict": "yes", "certificate": c.to_json()}),
            Filtration::NotFiltered(r) => json!({"verdict": "no", "reason": r}),
            Filtration::Undetermined(r) => json!({"verdict": "undetermined", "reason": r}),
        }
    }
}

/// Greedy layer peeling: repeatedly split off the trace of `P_j` for a
/// maximal composition label `j` and compare it with `Θ_j^t`.
pub fn has_filtration(
    a: &Algebra,
    poset: &LabelPoset,
    x: &Module,
    family: &[Member],
    reverse_ties: bool,
) -> Filtration {
    let labels = a.labels();
    let mut cur = x.clone();
    let mut proj = Matrix::identity(a.field(), x.dim());
    let mut layers = Vec::new();
    let mut chain = Vec::new();
    while cur.dim() > 0 {
        let mult: Vec<usize> = labels.iter().map(|l| comp_mult(a, &cur, l).expect("label")).collect();
        let supp: Vec<usize> = (0..labels.len()).filter(|&i| mult[i] > 0).collect();
        let maximal: Vec<usize> = supp
            .iter()
            .copied()
            .filter(|&j| !supp.iter().any(|&s| poset.lt(j, s)))
            .collect();
        let j = if reverse_ties {
            *maximal.last().expect("nonempty support")
        } else {
            maximal[0]
        };
        let Some(member) = family.iter().find(|m| m.label == j) else {
            return Filtration::NotFiltered(format!("maximal composition factor {} has no family member", labels[j]));
        };
        let d = comp_mult(a, member.module, &labels[j]).expect("label");
        let fail = |msg: String| {
            if member.decisive {
                Filtration::NotFiltered(msg)
            } else {
                Filtration::Undetermined(msg)
            }
        };
        if d == 0 || !mult[j].is_multiple_of(d) {
            return fail(format!("[X:L_{}] is not a multiple of the layer", labels[j]));
        }
        let t = mult[j] / d;
        let span = trace_of_projective(a, &labels[j], &cur).expect("label");
        let layer = submodule(&cur, &span.basis_matrix()).module;
        match iso_test(a, &layer, &power(a, member.module, t)) {
            IsoVerdict::Isomorphic(_) => {}
            IsoVerdict::NotIsomorphic(w) => {
                return fail(format!("trace of P_{} is not a sum of {t} copies: {w:?}", labels[j]))
            }
            IsoVerdict::Undetermined => {
                return Filtration::Undetermined(format!("layer at {} undetermined", labels[j]))
            }
        }
        let q = quotient_by_span(&cur, &span);
        proj = q.projection.mul(&proj);
        chain.push(proj.kernel_basis());
        layers.push((labels[j].clone(), t));
        cur = q.module;
    }
    Filtration::Filtered(FiltrationCertificate { layers, chain })
}

/// Re-checks a certificate: the chain is increasing, ends at `X`, and each
/// subquotient is isomorphic to the named power.
pub fn verify_certificate(a: &Algebra, x: &Module, family: &[(String, &Module)], cert: &FiltrationCertificate) -> bool {
    if cert.chain.len() != cert.layers.len() {
        return false;
    }
    let mut below = Span::new(a.field(), x.dim());
    for (basis, (label, t)) in cert.chain.iter().zip(&cert.layers) {
        let mut here = Span::new(a.field(), x.dim());
        for c in basis.columns() {
            here.insert(&c);
        }
        if below.basis().iter().any(|v| !here.contains(v)) {
            return false;
        }
        if generate(a, x, here.basis()).dim() != here.dim() {
            return false;
        }
        let sub = submodule(x, &here.basis_matrix());
        let mut inner = Span::new(a.field(), sub.module.dim());
        let left = sub.inclusion.left_inverse();
        for v in below.basis() {
            inner.insert(&left.mul_vec(v));
        }
        let layer = quotient_by_span(&sub.module, &inner).module;
        let Some((_, m)) = family.iter().find(|(l, _)| l == label) else {
            return false;
        };
        if !iso_test(a, &layer, &power(a, m, *t)).is_iso() {
            return false;
        }
        below = here;
    }
    below.dim() == x.dim()
}

/// Per-side data: standard objects of one algebra.
#[derive(Clone, Debug)]
pub struct Side {
    pub projectives: Vec<Module>,
    pub standard: Vec<Module>,
    pub proper_standard: Vec<Module>,
    /// `ker(P_i -> Δ_i)` as a submodule of `P_i`.
    pub kernels: Vec<Module>,
    pub filtrations: Vec<Filtration>,
    pub left_ss: Verdict,
}

impl Side {
    fn compute(a: &Algebra, poset: &LabelPoset) -> Side {
        let labels = a.labels();
        let n = labels.len();
        let mut projectives = Vec::new();
        let mut standard = Vec::new();
        let mut proper_standard = Vec::new();
        let mut kernels = Vec::new();
        for i in 0..n {
            let p = projective(a, &labels[i]).expect("label");
            let mut seeds = Vec::new();
            for j in (0..n).filter(|&j| !poset.leq(j, i)) {
                let k = a.first_idempotent(&labels[j]).expect("label");
                seeds.extend(p.act(&a.idempotents()[k].coords).column_space().columns());
            }
            let tr = generate(a, &p, &seeds);
            let delta = quotient_by_span(&p, &tr).module;
            kernels.push(submodule(&p, &tr.basis_matrix()).module);
            let k = a.first_idempotent(&labels[i]).expect("label");
            let ei = delta.act(&a.idempotents()[k].coords);
            let rad: Vec<_> = radical_span(a, &delta).basis().iter().map(|v| ei.mul_vec(v)).collect();
            let inner = generate(a, &delta, &rad);
            proper_standard.push(quotient_by_span(&delta, &inner).module);
            standard.push(delta);
            projectives.push(p);
        }
        let filtrations: Vec<Filtration> = (0..n)
            .map(|i| {
                let family: Vec<Member> = (0..n)
                    .filter(|&j| poset.lt(i, j))
                    .map(|j| Member {
                        label: j,
                        module: &standard[j],
                        decisive: true,
                    })
                    .collect();
                has_filtration(a, poset, &kernels[i], &family, false)
            })
            .collect();
        let left_ss = Verdict::all(filtrations.iter().map(Filtration::verdict));
        Side {
            projectives,
            standard,
            proper_standard,
            kernels,
            filtrations,
            left_ss,
        }
    }

    /// Family `{Δ_j}` with all members decisive.
    pub fn standard_family(&self) -> Vec<Member<'_>> {
        self.standard
            .iter()
            .enumerate()
            .map(|(j, m)| Member {
                label: j,
                module: m,
                decisive: true,
            })
            .collect()
    }

    /// Family `{Δ̄_j}`; decisive where `Δ̄_j = Δ_j`.
    pub fn proper_standard_family(&self) -> Vec<Member<'_>> {
        self.proper_standard
            .iter()
            .enumerate()
            .map(|(j, m)| Member {
                label: j,
                module: m,
                decisive: m.dim() == self.standard[j].dim(),
            })
            .collect()
    }
}

/// Standard, proper standard, costandard and proper costandard modules of
/// `(A, ⊴)` together with the stratification verdicts.
#[derive(Clone, Debug)]
pub struct StratDatum {
    pub algebra: Algebra,
    pub opposite: Algebra,
    pub poset: LabelPoset,
    pub left: Side,
    /// Data of the opposite algebra.
    pub right: Side,
    pub costandard: Vec<Module>,
    pub proper_costandard: Vec<Module>,
}

impl StratDatum {
    pub fn new(a: &Algebra, poset: &LabelPoset) -> Result<StratDatum> {
        let poset = poset.reorder(a.labels())?;
        let op = a.opposite();
        let left = Side::compute(a, &poset);
        let right = Side::compute(&op, &poset);
        let costandard = right.standard.iter().map(dual).collect();
        let proper_costandard = right.proper_standard.iter().map(dual).collect();
        Ok(StratDatum {
            algebra: a.clone(),
            opposite: op,
            poset,
            left,
            right,
            costandard,
            proper_costandard,
        })
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.algebra.label_index(label)
    }

    pub fn standard(&self, label: &str) -> Result<&Module> {
        Ok(&self.left.standard[self.index(label)?])
    }

    pub fn proper_standard(&self, label: &str) -> Result<&Module> {
        Ok(&self.left.proper_standard[self.index(label)?])
    }

    pub fn costandard(&self, label: &str) -> Result<&Module> {
        Ok(&self.costandard[self.index(label)?])
    }

    pub fn proper_costandard(&self, label: &str) -> Result<&Module> {
        Ok(&self.proper_costandard[self.index(label)?])
    }

    pub fn left_ss(&self) -> Verdict {
        self.left.left_ss
    }

    pub fn right_ss(&self) -> Verdict {
        self.right.left_ss
    }

    /// Left standardly stratified with `Δ_i = Δ̄_i` for all `i`.
    pub fn quasi_hereditary(&self) -> Verdict {
        let equal = (0..self.labels().len()).all(|i| self.left.standard[i].dim() == self.left.proper_standard[i].dim());
        self.left_ss().and(Verdict::from_bool(equal))
    }

    /// `Δ`-filtration of a left `A`-module.
    pub fn delta_filtration(&self, x: &Module) -> Filtration {
        has_filtration(&self.algebra, &self.poset, x, &self.left.standard_family(), false)
    }

    /// `Δ`-filtration restricted to the labels in `allowed`.
    pub fn delta_filtration_within(&self, x: &Module, allowed: &[String]) -> Filtration {
        let family: Vec<Member> = self
            .left
            .standard_family()
            .into_iter()
            .filter(|m| allowed.contains(&self.labels()[m.label]))
            .collect();
        has_filtration(&self.algebra, &self.poset, x, &family, false)
    }

    /// `Δ̄`-filtration of a left module over the opposite algebra, that is,
    /// a `∇̄`-filtration of its dual.
    pub fn op_proper_filtration(&self, x: &Module) -> Filtration {
        has_filtration(
            &self.opposite,
            &self.poset,
            x,
            &self.right.proper_standard_family(),
            false,
        )
    }

    /// `X ∈ F(Δ)` via `Ext¹(X, ∇̄_j) = 0` for all `j`; valid when left
    /// standardly stratified.
    pub fn ext_oracle_delta(&self, x: &Module) -> bool {
        self.proper_costandard
            .iter()
            .all(|y| ext_dim(&self.algebra, x, y, 1) == 0)
    }

    /// `Y ∈ F(∇̄)` via `Ext¹(Δ_j, Y) = 0` for all `j`; valid when left
    /// standardly stratified.
    pub fn ext_oracle_proper_costandard(&self, y: &Module) -> bool {
        self.left.standard.iter().all(|d| ext_dim(&self.algebra, d, y, 1) == 0)
    }

    /// `Δ`-filtration combining the greedy search with the Ext oracle; the
    /// two are asserted to agree when both are decisive.
    pub fn in_delta(&self, x: &Module) -> Verdict {
        let greedy = self.delta_filtration(x).verdict();
        if !self.left_ss().is_yes() {
            return greedy;
        }
        let oracle = Verdict::from_bool(self.ext_oracle_delta(x));
        if greedy != Verdict::Undetermined {
            assert_eq!(greedy, oracle, "greedy filtration disagrees with the Ext oracle");
        }
        oracle
    }

    /// `∇̄`-filtration of a left `A`-module `Y`, decided on `D(Y)` over the
    /// opposite algebra and cross-checked by the Ext oracle.
    pub fn in_proper_costandard(&self, y: &Module) -> Verdict {
        let greedy = self.op_proper_filtration(&dual(y)).verdict();
        if !self.left_ss().is_yes() {
            return greedy;
        }
        let oracle = Verdict::from_bool(self.ext_oracle_proper_costandard(y));
        if greedy != Verdict::Undetermined {
            assert_eq!(greedy, oracle, "greedy filtration disagrees with the Ext oracle");
        }
        oracle
    }

    /// Multiplicities `(P_i : Δ_j)` read from the kernel certificates.
    pub fn projective_multiplicities(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.labels().len();
        let mut out = vec![vec![0; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            let cert = self.left.filtrations[i].certificate()?;
            for (j, v) in row.iter_mut().enumerate() {
                *v = cert.multiplicity(&self.labels()[j]) + usize::from(i == j);
            }
        }
        Some(out)
    }

    /// Multiplicities `(I_i : ∇̄_j)`, from `Δ̄`-filtrations of the
    /// projectives of the opposite algebra; when such a search is
    /// inconclusive, from `dim Hom(Δ_j, I_i)`.
    pub fn injective_multiplicities(&self) -> Vec<Vec<usize>> {
        let labels = self.labels();
        let n = labels.len();
        let family = self.right.proper_standard_family();
        (0..n)
            .map(|i| {
                let f = has_filtration(&self.opposite, &self.poset, &self.right.projectives[i], &family, false);
                match f.certificate() {
                    Some(c) => labels.iter().map(|l| c.multiplicity(l)).collect(),
                    None => {
                        let inj = injective(&self.algebra, &labels[i]).expect("label");
                        (0..n)
                            .map(|j| hom_dim(&self.algebra, &self.left.standard[j], &inj))
                            .collect()
                    }
                }
            })
            .collect()
    }

    /// Composition matrix: `m[i][j] = [M_i : L_j]`.
    pub fn composition(&self, mods: &[Module]) -> Vec<Vec<usize>> {
        mods.iter()
            .map(|m| {
                self.labels()
                    .iter()
                    .map(|l| comp_mult(&self.algebra, m, l).expect("label"))
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let labels = self.labels();
        let dims = |mods: &[Module]| -> Vec<usize> { mods.iter().map(Module::dim).collect() };
        json!({
            "poset": self.poset.to_json(),
            "labels": labels,
            "dims": {
                "projective": dims(&self.left.projectives),
                "standard": dims(&self.left.standard),
                "proper_standard": dims(&self.left.proper_standard),
                "costandard": dims(&self.costandard),
                "proper_costandard": dims(&self.proper_costandard),
            },
            "standard_composition": self.composition(&self.left.standard),
            "left_standardly_stratified": self.left_ss().as_str(),
            "right_standardly_stratified": self.right_ss().as_str(),
            "quasi_hereditary": self.quasi_hereditary().as_str(),
            "kernel_filtrations": labels.iter().zip(&self.left.filtrations)
                .map(|(l, f)| json!({"label": l, "filtration": f.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Minimal order with `j ⊴ i` whenever `[Δ_i : L_j] ≠ 0` or `[∇̄_i : L_j] ≠ 0`.
pub fn essential_order(d: &StratDatum) -> Result<LabelPoset> {
    let labels = d.labels().to_vec();
    let n = labels.len();
    let std = d.composition(&d.left.standard);
    let pcs = d.composition(&d.proper_costandard);
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[j][i] = i == j || std[i][j] != 0 || pcs[i][j] != 0;
        }
    }
    close(&mut leq);
    LabelPoset::from_relation(labels, leq)
}

/// Verdicts for every partial order on the labels.
#[derive(Clone, Debug)]
pub struct PosetVerdict {
    pub poset: LabelPoset,
    pub left_ss: Verdict,
    pub right_ss: Verdict,
    pub quasi_hereditary: Verdict,
}

pub fn poset_search(a: &Algebra) -> Result<Vec<PosetVerdict>> {
    let posets = enumerate_posets(a.labels())?;
    posets
        .into_iter()
        .map(|p| {
            let d = StratDatum::new(a, &p)?;
            Ok(PosetVerdict {
                left_ss: d.left_ss(),
                right_ss: d.right_ss(),
                quasi_hereditary: d.quasi_hereditary(),
                poset: p,
            })
        })
        .collect()
}

/// Outcome of the reciprocity check.
#[derive(Clone, Debug)]
pub struct Reciprocity {
    /// `(P_i : Δ_j)`.
    pub projective: Vec<Vec<usize>>,
    /// `(I_i : ∇̄_j)`.
    pub injective: Vec<Vec<usize>>,
    pub holds: bool,
}

/// `[Δ_j:L_i] ≠ 0 ⇔ (I_i:∇̄_j) ≠ 0` and `[∇̄_j:L_i] ≠ 0 ⇔ (P_i:Δ_j) ≠ 0`.
pub fn bgg_reciprocity(d: &StratDatum) -> Result<Reciprocity> {
    if !d.left_ss().is_yes() {
        return Err(Error::InvalidPoset("not left standardly stratified".into()));
    }
    let projective = d.projective_multiplicities().expect("certificates exist");
    let injective = d.injective_multiplicities();
    let std = d.composition(&d.left.standard);
    let pcs = d.composition(&d.proper_costandard);
    let n = d.labels().len();
    let mut holds = true;
    for i in 0..n {
        for j in 0..n {
            holds &= (std[j][i] != 0) == (injective[i][j] != 0);
            holds &= (pcs[j][i] != 0) == (projective[i][j] != 0);
        }
    }
    Ok(Reciprocity {
        projective,
        injective,
        holds,
    })
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

    fn sl2() -> Algebra {
        quiver(
            &[("α", "1", "2"), ("β", "2", "1")],
            &["1", "2"],
            &[&[(1, &["α", "β"])]],
            3,
        )
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| enumerate_posets(&s(&["a", "b", "c", "d", "e"][..n])).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
        assert!(matches!(
            enumerate_posets(&s(&["a", "b", "c", "d", "e", "f"])),
            Err(Error::SizeGuard(6))
        ));
    }

    #[test]
    fn poset_validation() {
        let l = s(&["1", "2"]);
        assert!(matches!(
            LabelPoset::from_pairs(l.clone(), &[("1".into(), "2".into()), ("2".into(), "1".into())]),
            Err(Error::NotAntisymmetric(_))
        ));
        let p = LabelPoset::chain(l.clone());
        assert!(p.is_coideal(&s(&["2"])));
        assert!(!p.is_coideal(&s(&["1"])));
        assert_eq!(p.cover_pairs(), vec![("1".to_string(), "2".to_string())]);
        assert!(p.refines(&LabelPoset::discrete(l)));
    }

    #[test]
    fn sl2_block_is_quasi_hereditary() {
        let a = sl2();
        let d = StratDatum::new(&a, &LabelPoset::chain(s(&["1", "2"]))).unwrap();
        assert_eq!(d.standard("1").unwrap().dim(), 1);
        assert_eq!(d.standard("2").unwrap().dim(), 2);
        assert_eq!(d.quasi_hereditary(), Verdict::Yes);
        assert_eq!(d.right_ss(), Verdict::Yes);
        let ess = essential_order(&d).unwrap();
        assert_eq!(ess, d.poset);
        assert!(bgg_reciprocity(&d).unwrap().holds);
        for i in 0..2 {
            assert_eq!(comp_mult(&a, &d.left.proper_standard[i], &a.labels()[i]).unwrap(), 1);
            assert_eq!(comp_mult(&a, &d.proper_costandard[i], &a.labels()[i]).unwrap(), 1);
        }
    }

    #[test]
    fn rad_square_zero_never_stratifies() {
        let a = quiver(
            &[("α", "1", "2"), ("β", "2", "1")],
            &["1", "2"],
            &[&[(1, &["α", "β"])], &[(1, &["β", "α"])]],
            2,
        );
        let all = poset_search(&a).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|v| v.left_ss.is_no() && v.right_ss.is_no()));
    }

    #[test]
    fn hereditary_line_orders() {
        let a = quiver(&[("α", "1", "2")], &["1", "2"], &[], 2);
        for v in poset_search(&a).unwrap() {
            let comparable = !v.poset.cover_pairs().is_empty();
            assert_eq!(v.quasi_hereditary, Verdict::from_bool(comparable), "{}", v.poset);
        }
    }

    #[test]
    fn semisimple_every_order() {
        let a = Algebra::semisimple(Field::Q, &[(1, "a"), (1, "b"), (2, "c")]);
        let all = poset_search(&a).unwrap();
        assert_eq!(all.len(), 19);
        assert!(all.iter().all(|v| v.quasi_hereditary.is_yes()));
        let d = StratDatum::new(&a, &LabelPoset::discrete(s(&["a", "b", "c"]))).unwrap();
        assert_eq!(essential_order(&d).unwrap(), d.poset);
    }

    #[test]
    fn quotient_is_not_delta_filtered() {
        let a = sl2();
        let d = StratDatum::new(&a, &LabelPoset::chain(s(&["1", "2"]))).unwrap();
        let e1 = a.idempotents()[0].coords.clone();
        let ideal = a.idempotent_ideal(&e1);
        let reg = crate::modules::regular(&a);
        let q = quotient_by_span(&reg, &ideal).module;
        assert_eq!(d.delta_filtration(&q).verdict(), Verdict::No);
        assert!(!d.ext_oracle_delta(&q));
        let p1 = &d.left.projectives[0];
        let f = d.delta_filtration(p1);
        let fam: Vec<(String, &Module)> = a.labels().iter().cloned().zip(d.left.standard.iter()).collect();
        assert!(verify_certificate(&a, p1, &fam, f.certificate().unwrap()));
    }
}
