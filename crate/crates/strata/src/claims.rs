//! Checks of the published claims over the bundled algebras. Each claim is a
//! list of named checks with a provenance tag; a claim passes when every
//! check does. A published statement that the computation refutes is
//! reported as a conflict together with what was computed instead.

use std::fmt;

use serde_json::{json, Value};

use crate::borel::{basic_borel_criterion, check_exact_borel, inherited_borels, normality_certificate, BorelEmbedding};
use crate::compat::{
    all_idempotent_reports, compatibility_battery, dual_quotient_module, idempotent_for_labels, quotient_module,
    subset_idempotents, support, Recollement,
};
use crate::error::{Error, Result};
use crate::input::AlgebraFile;
use crate::kernel::Scalar;
use crate::modules::{
    corner_apply, corner_hom, corner_tensor, direct_sum, dual, ext_dim, hom_dim, inflate, injective, iso_test,
    projective, quotient_hom, quotient_tensor, simple, trace, CornerData, Module, QuotientData,
};
use crate::strat::{bgg_reciprocity, essential_order, poset_search, LabelPoset, StratDatum, Verdict};
use crate::vmult::{
    block_structure_check, bruhat_poset, builtin_tables, ell, reference_ell_formula, v_matrix_from_algebra,
    v_matrix_from_tables, WeylType,
};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the source text.
    Published,
    /// Computed independently in this crate.
    Derived,
    /// Holds by construction.
    Trivial,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A published statement contradicted by the computation.
    Conflict,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Conflict => "CONFLICT",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub provenance: Provenance,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ClaimResult {
    pub id: &'static str,
    pub summary: &'static str,
    pub checks: Vec<Check>,
    /// Set when the claim could not be evaluated at all.
    pub error: Option<String>,
}

impl ClaimResult {
    pub fn status(&self) -> Status {
        if self.error.is_some() || self.checks.is_empty() || self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Conflict) {
            Status::Conflict
        } else {
            Status::Pass
        }
    }

    pub fn pass(&self) -> bool {
        self.status() == Status::Pass
    }

    /// Checks that did not pass.
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "summary": self.summary,
            "status": self.status().as_str(),
            "error": self.error,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "provenance": c.provenance.as_str(),
                "status": c.status.as_str(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ClaimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        write!(
            f,
            "{} {} ({}/{} checks)",
            self.status(),
            self.id,
            passed,
            self.checks.len()
        )?;
        if let Some(e) = &self.error {
            write!(f, ": {e}")?;
        }
        for c in self.failures() {
            write!(
                f,
                "\n    {} [{}] {}: {}",
                c.status,
                c.provenance.as_str(),
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Source of algebra files by corpus name.
pub type Loader<'a> = dyn Fn(&str) -> Result<AlgebraFile> + Sync + 'a;

struct Ctx<'a> {
    load: &'a Loader<'a>,
    checks: Vec<Check>,
}

impl Ctx<'_> {
    fn check(&mut self, name: impl Into<String>, provenance: Provenance, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            provenance,
            status: if pass { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    /// A published statement; `holds` is what the computation found.
    fn published(&mut self, name: impl Into<String>, holds: bool, computed: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            provenance: Published,
            status: if holds { Status::Pass } else { Status::Conflict },
            detail: computed.into(),
        });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: &str, p: Provenance, got: T, want: T) {
        let pass = got == want;
        self.check(name, p, pass, format!("got {got:?}, expected {want:?}"));
    }

    fn file(&self, name: &str) -> Result<AlgebraFile> {
        (self.load)(name)
    }

    fn datum(&self, name: &str) -> Result<(AlgebraFile, StratDatum)> {
        let f = self.file(name)?;
        let d = StratDatum::new(&f.algebra, &f.poset)?;
        Ok((f, d))
    }
}

use Provenance::{Derived, Published, Trivial};

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

fn iso(a: &crate::algebra::Algebra, x: &Module, y: &Module) -> bool {
    iso_test(a, x, y).is_iso()
}

pub struct Claim {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn(&mut Ctx) -> Result<()>,
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        id: "sl2_corner_quotient",
        summary: "sl2 block: quasi-hereditary; at e1 corner and quotient are stratified but neither filtration condition holds",
        run: sl2_corner_quotient,
    },
    Claim {
        id: "two_sources_one_sided",
        summary: "two sources: A/Ae1A is Δ-filtered but its dual is not ∇̄-filtered, reversed on the opposite algebra",
        run: two_sources_one_sided,
    },
    Claim {
        id: "diamond_inflation",
        summary: "diamond: standards off the support of e2 are inflated although A/Ae2A is not Δ-filtered",
        run: diamond_inflation,
    },
    Claim {
        id: "auslander_corner",
        summary: "Auslander algebra of k[x]/(x^3): quotient at e1+e2 is L3, corner is not stratified",
        run: auslander_corner,
    },
    Claim {
        id: "rad_square_zero_orders",
        summary: "radical square zero 1 <-> 2: no order stratifies it, corner and quotient at e1 are quasi-hereditary",
        run: rad_square_zero_orders,
    },
    Claim {
        id: "ext_square_witness",
        summary: "semisimple quotient at e2 while Ext^2(L1, L3) is nonzero",
        run: ext_square_witness,
    },
    Claim {
        id: "implication_diagram",
        summary: "implications between the six compatibility conditions over every bundled algebra and idempotent",
        run: implication_diagram,
    },
    Claim {
        id: "dual_extension_borel",
        summary: "dual extension: the subalgebra generated by γ, β, βδ is a regular exact Borel subalgebra",
        run: dual_extension_borel,
    },
    Claim {
        id: "morita_pattern_quotient",
        summary: "matrix pattern: the induced map on quotients at e1 is not injective; the coideal idempotent E55 inherits",
        run: morita_pattern_quotient,
    },
    Claim {
        id: "dual_extension_inheritance",
        summary: "dual extension: corner and quotient Borels at e3 and e2+e3",
        run: dual_extension_inheritance,
    },
    Claim {
        id: "v_matrix_and_ell",
        summary: "V matrices and ℓ vectors for the sl2 block, A1xA1 and the rank two Bruhat posets",
        run: v_matrix_and_ell,
    },
    Claim {
        id: "block_form",
        summary: "block form of V and the ℓ comparisons at every compatible idempotent",
        run: block_form,
    },
    Claim {
        id: "property_suites",
        summary: "reciprocity, filtration oracles, duality, adjunctions, refinement stability, dimension and V invariants",
        run: property_suites,
    },
];

/// Runs the claims whose id contains `filter`, concurrently, in catalogue
/// order.
pub fn run(load: &Loader, filter: Option<&str>) -> Vec<ClaimResult> {
    let selected: Vec<&Claim> = CLAIMS
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.contains(f)))
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = selected.iter().map(|c| s.spawn(move || run_one(load, c))).collect();
        handles
            .into_iter()
            .zip(&selected)
            .map(|(h, c)| {
                h.join().unwrap_or_else(|p| ClaimResult {
                    id: c.id,
                    summary: c.summary,
                    checks: Vec::new(),
                    error: Some(panic_message(p)),
                })
            })
            .collect()
    })
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

pub fn run_one(load: &Loader, claim: &Claim) -> ClaimResult {
    let mut ctx = Ctx {
        load,
        checks: Vec::new(),
    };
    let error = (claim.run)(&mut ctx).err().map(|e| e.to_string());
    ClaimResult {
        id: claim.id,
        summary: claim.summary,
        checks: ctx.checks,
        error,
    }
}

/// Runs against the bundled corpus.
pub fn run_bundled(filter: Option<&str>) -> Vec<ClaimResult> {
    run(&crate::corpus::load, filter)
}

fn sl2_corner_quotient(c: &mut Ctx) -> Result<()> {
    let (f, d) = c.datum("sl2_block")?;
    c.eq(
        "quasi-hereditary for 1<2",
        Published,
        d.quasi_hereditary(),
        Verdict::Yes,
    );
    let e1 = f.idempotent(&labels(&["1"]))?;
    let r = compatibility_battery(&d, &e1)?;
    c.eq("corner and quotient stratified", Published, r.cond6, Verdict::Yes);
    c.eq("A/Ae1A Δ-filtered", Published, r.cond4, Verdict::No);
    c.eq("D(A/Ae1A) ∇̄-filtered", Published, r.cond5, Verdict::No);
    let rec = Recollement::new(&d, &e1)?;
    let (_, qd) = rec
        .quotient
        .as_ref()
        .ok_or_else(|| Error::Incompatible("empty quotient".into()))?;
    c.check(
        "quotient standard at 2 is a proper quotient of Δ2",
        Published,
        qd.standard("2")?.dim() < d.standard("2")?.dim(),
        format!("{} < {}", qd.standard("2")?.dim(), d.standard("2")?.dim()),
    );
    c.check(
        "quotient proper costandard at 2 is a proper submodule of ∇̄2",
        Published,
        qd.proper_costandard("2")?.dim() < d.proper_costandard("2")?.dim(),
        format!(
            "{} < {}",
            qd.proper_costandard("2")?.dim(),
            d.proper_costandard("2")?.dim()
        ),
    );
    Ok(())
}

fn two_sources_one_sided(c: &mut Ctx) -> Result<()> {
    let (f, d) = c.datum("two_sources")?;
    let a = &f.algebra;
    let e1 = f.idempotent(&labels(&["1"]))?;
    let r = compatibility_battery(&d, &e1)?;
    c.eq("A/Ae1A Δ-filtered", Published, r.cond4, Verdict::Yes);
    c.eq("D(A/Ae1A) ∇̄-filtered", Published, r.cond5, Verdict::No);
    let op = StratDatum::new(&a.opposite(), &f.poset)?;
    let ro = compatibility_battery(&op, &e1)?;
    c.eq("opposite: A/Ae1A Δ-filtered", Published, ro.cond4, Verdict::No);
    c.eq("opposite: D(A/Ae1A) ∇̄-filtered", Published, ro.cond5, Verdict::Yes);
    let target = direct_sum(a, &[&projective(a, "1'")?, &simple(a, "1'")?]);
    c.check(
        "D(A/Ae1A) ≅ P1' ⊕ L1'",
        Published,
        iso(a, &dual_quotient_module(a, &e1), &target),
        "iso_test certificate",
    );
    let nabla = d.proper_costandard("2")?;
    c.eq("dim ∇̄2", Published, nabla.dim(), 3);
    c.eq(
        "dim Tr_{A/Ae1A}(∇̄2)",
        Published,
        trace(a, &quotient_module(a, &e1), nabla).dim(),
        2,
    );
    Ok(())
}

fn diamond_inflation(c: &mut Ctx) -> Result<()> {
    let (f, d) = c.datum("diamond")?;
    let a = &f.algebra;
    c.eq("dim A", Derived, a.dim(), 9);
    c.eq(
        "quasi-hereditary for the natural order",
        Published,
        d.quasi_hereditary(),
        Verdict::Yes,
    );
    let e2 = f.idempotent(&labels(&["2"]))?;
    let q = QuotientData::new(a, &e2)?;
    let qd = StratDatum::new(&q.algebra, &d.poset.restrict(&labels(&["1", "3", "4"])))?;
    for l in ["1", "3", "4"] {
        let inflated = inflate(a, &q, qd.standard(l)?);
        c.check(
            format!("Δ{l} ≅ inflated quotient standard"),
            Published,
            iso(a, &inflated, d.standard(l)?),
            "iso_test certificate",
        );
    }
    c.eq(
        "A/Ae2A Δ-filtered",
        Published,
        d.in_delta(&quotient_module(a, &e2)),
        Verdict::No,
    );
    let crit = basic_borel_criterion(&d)?;
    let all = Verdict::all(crit.iter().map(|(_, v)| *v));
    c.eq("basic Borel criterion", Derived, all, Verdict::No);

    // corner and quotient at e3+e4 both have exact Borels although A does not
    let e34 = f.idempotent(&labels(&["3", "4"]))?;
    let r = compatibility_battery(&d, &e34)?;
    c.eq("e3+e4 supported in a coideal", Published, r.cond1, Verdict::Yes);
    let rec = Recollement::new(&d, &e34)?;
    for (name, part) in [
        ("corner", rec.corner.as_ref().map(|x| &x.1)),
        ("quotient", rec.quotient.as_ref().map(|x| &x.1)),
    ] {
        let Some(sd) = part else {
            c.check(format!("{name} at e3+e4 nonzero"), Trivial, false, "empty");
            continue;
        };
        c.eq(
            &format!("{name} at e3+e4 quasi-hereditary"),
            Published,
            sd.quasi_hereditary(),
            Verdict::Yes,
        );
        let crit = basic_borel_criterion(sd)?;
        c.eq(
            &format!("{name} at e3+e4 basic Borel criterion"),
            Published,
            Verdict::all(crit.iter().map(|(_, v)| *v)),
            Verdict::Yes,
        );
    }
    Ok(())
}

fn auslander_corner(c: &mut Ctx) -> Result<()> {
    let (f, d) = c.datum("auslander")?;
    let a = &f.algebra;
    c.eq("quasi-hereditary", Published, d.quasi_hereditary(), Verdict::Yes);
    let e = f.idempotent(&labels(&["1", "2"]))?;
    c.check(
        "A/A(e1+e2)A ≅ L3",
        Published,
        iso(a, &quotient_module(a, &e), &simple(a, "3")?),
        "iso_test certificate",
    );
    c.eq(
        "A/A(e1+e2)A Δ-filtered",
        Published,
        d.in_delta(&quotient_module(a, &e)),
        Verdict::No,
    );
    let rec = Recollement::new(&d, &e)?;
    let (cd, sd) = rec
        .corner
        .as_ref()
        .ok_or_else(|| Error::Incompatible("empty corner".into()))?;
    c.eq("dim corner", Derived, cd.algebra.dim(), 9);
    c.eq("corner quasi-hereditary", Derived, sd.quasi_hereditary(), Verdict::No);
    c.eq(
        "[Δ2 : L2] in the corner",
        Derived,
        crate::modules::comp_mult(&cd.algebra, sd.standard("2")?, "2")?,
        2,
    );
    c.published(
        "corner at e1+e2 not left standardly stratified",
        sd.left_ss().is_no(),
        format!(
            "computed left {} and right {} standardly stratified for 1<2, with rad P1 ≅ P2 = Δ2",
            sd.left_ss(),
            sd.right_ss()
        ),
    );
    Ok(())
}

fn rad_square_zero_orders(c: &mut Ctx) -> Result<()> {
    let f = c.file("rad_square_zero")?;
    let a = &f.algebra;
    let found = poset_search(a)?;
    c.eq("orders searched", Trivial, found.len(), 3);
    let left = found.iter().filter(|p| p.left_ss.is_yes()).count();
    let right = found.iter().filter(|p| p.right_ss.is_yes()).count();
    let undecided = found
        .iter()
        .filter(|p| p.left_ss == Verdict::Undetermined || p.right_ss == Verdict::Undetermined)
        .count();
    c.eq("left stratifying orders", Published, left, 0);
    c.eq("right stratifying orders", Published, right, 0);
    c.eq("undecided orders", Derived, undecided, 0);
    let e1 = f.idempotent(&labels(&["1"]))?;
    let (corner, _) = a.corner(&e1)?;
    let (quot, _) = a.quotient(&e1)?;
    let cd = StratDatum::new(&corner, &LabelPoset::discrete(labels(&["1"])))?;
    let qd = StratDatum::new(&quot, &LabelPoset::discrete(labels(&["2"])))?;
    c.eq(
        "e1 corner quasi-hereditary",
        Published,
        cd.quasi_hereditary(),
        Verdict::Yes,
    );
    c.eq(
        "e1 quotient quasi-hereditary",
        Published,
        qd.quasi_hereditary(),
        Verdict::Yes,
    );
    Ok(())
}

fn ext_square_witness(c: &mut Ctx) -> Result<()> {
    let (f, d) = c.datum("ext_square_witness")?;
    let a = &f.algebra;
    c.eq("quasi-hereditary", Published, d.quasi_hereditary(), Verdict::Yes);
    c.check(
        "standard modules are simple",
        Published,
        d.left.standard.iter().all(|m| m.dim() == 1),
        "",
    );
    let e2 = f.idempotent(&labels(&["2"]))?;
    let (q, _) = a.quotient(&e2)?;
    c.eq("quotient radical", Published, q.radical().cols(), 0);
    c.eq(
        "A/Ae2A Δ-filtered",
        Published,
        d.in_delta(&quotient_module(a, &e2)),
        Verdict::Yes,
    );
    let mut positive = 0;
    for x in q.labels() {
        for y in q.labels() {
            for n in 1..=3 {
                positive += ext_dim(&q, &simple(&q, x)?, &simple(&q, y)?, n);
            }
        }
    }
    c.eq("positive-degree Ext over the quotient", Published, positive, 0);
    c.eq(
        "dim Ext^2_A(L1, L3)",
        Derived,
        ext_dim(a, &simple(a, "1")?, &simple(a, "3")?, 2),
        1,
    );
    Ok(())
}

fn implication_diagram(c: &mut Ctx) -> Result<()> {
    let mut total = 0;
    for name in crate::corpus::NAMES {
        let (f, d) = c.datum(name)?;
        if !d.left_ss().is_yes() {
            continue;
        }
        let reports = all_idempotent_reports(&d)?;
        let bad: Vec<String> = reports
            .iter()
            .filter(|r| !r.diagram_consistent || r.inconclusive())
            .map(|r| f.algebra.vector_name(&r.idempotent))
            .collect();
        total += reports.len();
        c.check(
            format!("{name}: diagram over {} idempotents", reports.len()),
            Published,
            bad.is_empty(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("violated or undecided at {bad:?}")
            },
        );
        let failed: Vec<String> = reports
            .iter()
            .flat_map(|r| {
                r.failed_identities()
                    .into_iter()
                    .map(|i| format!("{} at {}", i.name, i.label))
            })
            .collect();
        c.check(
            format!("{name}: recollement identities"),
            Published,
            failed.is_empty(),
            failed.join("; "),
        );
    }
    c.check("idempotents examined", Trivial, total > 0, format!("{total}"));

    let load = c.load;
    let conds = |name: &str, ls: &[&str], opposite: bool| -> Result<[Verdict; 6]> {
        let f = load(name)?;
        let a = if opposite {
            f.algebra.opposite()
        } else {
            f.algebra.clone()
        };
        let d = StratDatum::new(&a, &f.poset)?;
        Ok(compatibility_battery(&d, &idempotent_for_labels(&a, &labels(ls))?)?.conditions())
    };
    use Verdict::{No, Yes};
    let w = conds("two_sources", &["1"], false)?;
    c.eq("(4) without (5)", Published, (w[3], w[4]), (Yes, No));
    let w = conds("two_sources", &["1"], true)?;
    c.eq("(5) without (4)", Published, (w[3], w[4]), (No, Yes));
    let w = conds("sl2_block", &["1"], false)?;
    c.eq("(6) without (4) or (5)", Published, (w[5], w[3], w[4]), (Yes, No, No));
    let w = conds("semisimple_pair", &["1"], false)?;
    c.eq("(3) without (1)", Published, (w[2], w[0]), (Yes, No));
    let w = conds("auslander", &["1", "2"], false)?;
    c.eq(
        "quotient filtered by its own standards without (4)",
        Published,
        w[3],
        No,
    );
    Ok(())
}

fn dual_extension_embedding(c: &Ctx) -> Result<(AlgebraFile, BorelEmbedding)> {
    let (f, d) = c.datum("dual_extension")?;
    let (b, emb) = f.subalgebra("borel")?;
    let e = BorelEmbedding::new(d, b, emb)?;
    Ok((f, e))
}

fn dual_extension_borel(c: &mut Ctx) -> Result<()> {
    let (f, emb) = dual_extension_embedding(c)?;
    let (a, b) = (&f.algebra, &emb.sub);
    c.eq("dim A", Derived, a.dim(), 21);
    c.eq("dim B", Derived, b.dim(), 7);
    c.eq(
        "quasi-hereditary for 1<2<3",
        Published,
        emb.ambient.quasi_hereditary(),
        Verdict::Yes,
    );
    let r = check_exact_borel(&emb, 5)?;
    c.eq("Borel axioms", Published, r.axioms(), Verdict::Yes);
    c.eq("condition (5)", Published, r.condition5, Verdict::Yes);
    let reg = r.regularity.as_ref();
    c.check("regular up to degree 5", Published, r.regular(), "");
    c.check(
        "resolutions of simples terminate",
        Derived,
        reg.is_some_and(|g| g.unconditional),
        "",
    );
    c.check("restriction identity", Published, r.restriction_holds(), "");
    c.check("normality certificate", Published, r.normality_holds(), "");
    let n = normality_certificate(&emb)?;
    c.eq("normality kernel dim", Derived, n.kernel.cols(), a.dim() - b.dim());
    c.eq(
        "dim Hom_A(∇3, ∇1)",
        Published,
        hom_dim(a, emb.ambient.costandard("3")?, emb.ambient.costandard("1")?),
        1,
    );
    c.eq(
        "dim Hom_B(I3, I1)",
        Published,
        hom_dim(b, &injective(b, "3")?, &injective(b, "1")?),
        2,
    );
    Ok(())
}

fn morita_pattern_quotient(c: &mut Ctx) -> Result<()> {
    let (f, d) = c.datum("morita_pattern")?;
    let (b, m) = f.subalgebra("borel")?;
    let emb = BorelEmbedding::new(d, b, m)?;
    let (a, b) = (&f.algebra, &emb.sub);
    c.eq("dim A'", Published, a.dim(), 12);
    c.eq("dim B", Published, b.dim(), 8);
    let r = check_exact_borel(&emb, crate::borel::default_depth())?;
    c.eq(
        "B is an exact Borel subalgebra",
        Published,
        r.exact_borel(),
        Verdict::Yes,
    );
    let e1 = idempotent_for_labels(b, &labels(&["1"]))?;
    let ie1 = emb.emb.mul_vec(&e1);
    c.eq("support of e1 in B", Published, support(b, &e1), labels(&["1"]));
    c.eq("support of ι(e1)", Published, support(a, &ie1), labels(&["1", "3"]));
    let coideal_error = matches!(inherited_borels(&emb, &e1, 3, false), Err(Error::SupportNotCoideal(_)));
    c.check(
        "non-coideal support rejected outside diagnostic mode",
        Trivial,
        coideal_error,
        "",
    );
    let inh = inherited_borels(&emb, &e1, 3, true)?;
    c.eq("dim B/Be1B", Published, inh.quotient_dims.0, 4);
    c.eq("dim A'/A'ι(e1)A'", Published, inh.quotient_dims.1, 2);
    c.eq(
        "induced quotient map injective",
        Published,
        inh.quotient_map_injective,
        false,
    );
    let e4 = idempotent_for_labels(b, &labels(&["4"]))?;
    let inh = inherited_borels(&emb, &e4, crate::borel::default_depth(), false)?;
    c.check(
        "E55 inherits corner and quotient Borels",
        Published,
        inh.passes(),
        inh.to_json().to_string(),
    );
    Ok(())
}

fn dual_extension_inheritance(c: &mut Ctx) -> Result<()> {
    let (_, emb) = dual_extension_embedding(c)?;
    let b = &emb.sub;
    let depth = crate::borel::default_depth();
    for ls in [&["3"][..], &["2", "3"][..]] {
        let e = idempotent_for_labels(b, &labels(ls))?;
        let tag = ls.join("+");
        let inh = inherited_borels(&emb, &e, depth, false)?;
        c.check(format!("e{tag}: supports match"), Published, inh.supports_match(), "");
        c.check(format!("e{tag}: A(Be'B) = Aι(e')A"), Published, inh.ideal_identity, "");
        c.check(
            format!("e{tag}: induced Borels"),
            Published,
            inh.passes(),
            inh.to_json().to_string(),
        );
        let regular = |r: &Option<crate::borel::BorelReport>| r.as_ref().is_some_and(|r| r.regular());
        c.check(format!("e{tag}: corner regular"), Published, regular(&inh.corner), "");
        c.check(
            format!("e{tag}: quotient regular"),
            Published,
            regular(&inh.quotient),
            "",
        );
    }
    Ok(())
}

fn v_matrix_and_ell(c: &mut Ctx) -> Result<()> {
    let (_, d) = c.datum("sl2_block")?;
    let v = v_matrix_from_algebra(&d)?;
    c.eq("sl2 block: V", Derived, v.rows.clone(), vec![vec![1, 0], vec![0, 1]]);
    c.eq("sl2 block: ℓ", Published, ell(&v), vec![1, 1]);

    let t = builtin_tables(WeylType::A1xA1)?;
    let vt = v_matrix_from_tables(&t)?;
    c.eq("A1xA1 tables: ℓ", Published, ell(&vt), vec![1, 1, 1, 3]);
    let row: Vec<i64> = ["e", "s", "t", "st"]
        .iter()
        .map(|j| vt.get("st", j))
        .collect::<Result<_>>()?;
    c.eq("A1xA1 tables: row of w0", Published, row, vec![2, 0, 0, 1]);

    let (_, dt) = c.datum("sl2_tensor_square")?;
    let va = v_matrix_from_algebra(&dt)?;
    let rename = [("(1,1)", "e"), ("(1,2)", "s"), ("(2,1)", "t"), ("(2,2)", "st")];
    let mut agree = true;
    for (i, wi) in rename {
        for (j, wj) in rename {
            agree &= va.get(i, j)? == vt.get(wi, wj)?;
        }
    }
    c.check(
        "tensor square V matches the A1xA1 tables",
        Derived,
        agree,
        format!("{va}"),
    );

    let heights: Vec<usize> = [WeylType::A2, WeylType::B2, WeylType::G2]
        .iter()
        .map(|w| bruhat_poset(*w).max_height())
        .collect();
    c.eq("Bruhat heights A2, B2, G2", Derived, heights, vec![3, 4, 6]);
    let formula = reference_ell_formula(WeylType::A2)?;
    let top = formula.iter().map(|(_, x)| *x).max().unwrap_or(0);
    c.eq("A2 reference ℓ at w0", Published, top, 9);
    Ok(())
}

fn block_form(c: &mut Ctx) -> Result<()> {
    let mut pairs = 0;
    let mut refuted = Vec::new();
    let mut lower_left_consistent = true;
    let mut bounded = true;
    for name in crate::corpus::NAMES {
        let (f, d) = c.datum(name)?;
        if f.algebra.field().characteristic() != 0 || !d.quasi_hereditary().is_yes() {
            continue;
        }
        for e in subset_idempotents(&f.algebra) {
            let r = compatibility_battery(&d, &e)?;
            if !(r.cond4.is_yes() && r.cond5.is_yes()) {
                continue;
            }
            pairs += 1;
            let b = block_structure_check(&d, &e)?;
            let at = format!("{name} at {}", f.algebra.vector_name(&e));
            c.check(
                format!("{at}: block form, ℓ equal off the support, ℓ bounded on it"),
                Published,
                b.holds(),
                b.to_json().to_string(),
            );
            bounded &= b.quotient_ell_bounded;
            lower_left_consistent &= b.corner_ell_equal == b.lower_left_zero();
            if !b.corner_ell_equal {
                refuted.push(at);
            }
        }
    }
    c.check("pairs examined", Trivial, pairs > 0, format!("{pairs}"));
    c.check("ℓ^A ≥ ℓ^{A/AeA} off the support", Published, bounded, "");
    c.check(
        "ℓ^{eAe} = ℓ^A on the support exactly when the lower left block vanishes",
        Derived,
        lower_left_consistent,
        "",
    );
    c.published(
        "ℓ^{eAe} = ℓ^A on the support",
        refuted.is_empty(),
        format!(
            "refuted at {} of {pairs} pairs: {}; the block form gives ℓ^A = ℓ^{{A/AeA}} off the support and ℓ^A ≥ ℓ^{{eAe}} on it",
            refuted.len(),
            refuted.join(", ")
        ),
    );
    Ok(())
}

fn adjunction_failures(a: &crate::algebra::Algebra, d: &StratDatum, e: &[Scalar]) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let mut xs: Vec<Module> = Vec::new();
    for l in a.labels() {
        xs.push(simple(a, l)?);
        xs.push(d.standard(l)?.clone());
        xs.push(projective(a, l)?);
    }
    let rec = Recollement::new(d, e)?;
    if !rec.support.is_empty() {
        let cd = CornerData::new(a, e)?;
        let ys: Vec<Module> = cd
            .algebra
            .labels()
            .iter()
            .flat_map(|l| {
                [
                    simple(&cd.algebra, l).expect("label"),
                    injective(&cd.algebra, l).expect("label"),
                ]
            })
            .collect();
        for x in &xs {
            for y in &ys {
                if hom_dim(a, &corner_tensor(a, &cd, y), x) != hom_dim(&cd.algebra, y, &corner_apply(&cd, x)) {
                    bad.push("Ae⊗- ⊣ e(-)".into());
                }
                if hom_dim(&cd.algebra, &corner_apply(&cd, x), y) != hom_dim(a, x, &corner_hom(a, &cd, y)) {
                    bad.push("e(-) ⊣ Hom(eA,-)".into());
                }
            }
        }
    }
    if !rec.complement.is_empty() {
        let q = QuotientData::new(a, e)?;
        let zs: Vec<Module> = q
            .algebra
            .labels()
            .iter()
            .flat_map(|l| {
                [
                    simple(&q.algebra, l).expect("label"),
                    projective(&q.algebra, l).expect("label"),
                ]
            })
            .collect();
        for x in &xs {
            for z in &zs {
                if hom_dim(&q.algebra, &quotient_tensor(a, &q, x), z) != hom_dim(a, x, &inflate(a, &q, z)) {
                    bad.push("A/AeA⊗- ⊣ inflation".into());
                }
                if hom_dim(a, &inflate(a, &q, z), x) != hom_dim(&q.algebra, z, &quotient_hom(a, &q, x)) {
                    bad.push("inflation ⊣ Hom(A/AeA,-)".into());
                }
            }
        }
    }
    bad.sort();
    bad.dedup();
    Ok(bad)
}

fn property_suites(c: &mut Ctx) -> Result<()> {
    for name in crate::corpus::NAMES {
        let (f, d) = c.datum(name)?;
        let a = &f.algebra;
        let ideal_ok = subset_idempotents(a).iter().all(|e| {
            let q = a.quotient(e).map(|(q, _)| q.dim()).unwrap_or(usize::MAX);
            a.idempotent_ideal(e).dim() + q == a.dim()
        });
        c.check(format!("{name}: dim AeA + dim A/AeA = dim A"), Trivial, ideal_ok, "");

        let dd = a.labels().iter().all(|l| {
            let p = projective(a, l).expect("label");
            dual(&dual(&p)) == p
        });
        c.check(format!("{name}: D∘D = id"), Trivial, dd, "");

        if !d.left_ss().is_yes() {
            continue;
        }
        c.check(
            format!("{name}: BGG reciprocity"),
            Published,
            bgg_reciprocity(&d)?.holds,
            "",
        );

        let mut probes: Vec<Module> = Vec::new();
        for l in a.labels() {
            probes.push(simple(a, l)?);
            probes.push(projective(a, l)?);
            probes.push(injective(a, l)?);
        }
        for e in subset_idempotents(a) {
            probes.push(quotient_module(a, &e));
        }
        let mut disagreements = 0;
        for x in &probes {
            let g = d.delta_filtration(x).verdict();
            if g != Verdict::Undetermined && g.is_yes() != d.ext_oracle_delta(x) {
                disagreements += 1;
            }
            let h = d.op_proper_filtration(&dual(x)).verdict();
            if h != Verdict::Undetermined && h.is_yes() != d.ext_oracle_proper_costandard(x) {
                disagreements += 1;
            }
        }
        c.eq(
            &format!("{name}: greedy vs Ext oracle disagreements"),
            Derived,
            disagreements,
            0,
        );

        let op = StratDatum::new(&d.opposite, &d.poset)?;
        let mut dual_ok = true;
        for l in a.labels() {
            dual_ok &= iso(&d.opposite, &dual(d.costandard(l)?), op.standard(l)?);
            dual_ok &= iso(&d.opposite, &dual(d.proper_costandard(l)?), op.proper_standard(l)?);
        }
        c.check(format!("{name}: D∇ ≅ Δ^op and D∇̄ ≅ Δ̄^op"), Trivial, dual_ok, "");

        let mut adj = Vec::new();
        for e in subset_idempotents(a) {
            adj.extend(adjunction_failures(a, &d, &e)?);
        }
        adj.sort();
        adj.dedup();
        c.check(
            format!("{name}: recollement adjunctions"),
            Trivial,
            adj.is_empty(),
            adj.join(", "),
        );

        let ess = essential_order(&d)?;
        let mut stable = true;
        for ext in ess.linear_extensions().iter().take(6) {
            let p = ess.total_refinement(ext);
            let dp = StratDatum::new(a, &p)?;
            for l in a.labels() {
                stable &= dp.standard(l)?.dim() == d.standard(l)?.dim()
                    && dp.proper_costandard(l)?.dim() == d.proper_costandard(l)?.dim();
            }
        }
        c.check(format!("{name}: refinement stability"), Published, stable, "");

        if a.field().characteristic() == 0 && d.quasi_hereditary().is_yes() {
            let v = v_matrix_from_algebra(&d)?;
            c.check(
                format!("{name}: V unitriangular with det 1"),
                Derived,
                v.is_unitriangular(&d.poset) && v.determinant().is_one(),
                format!("{v}"),
            );
        }
    }
    Ok(())
}
