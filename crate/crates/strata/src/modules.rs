//! Left modules over a validated [`Algebra`].
//!
//! A module stores one action matrix per basis element of its algebra. The
//! algebra itself is passed alongside; right modules are left modules over
//! the opposite algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::kernel::{axpy, unit_vec, zero_vec, Field, Matrix, Scalar, Span};

/// Trials and coefficient height for the isomorphism certificate search.
pub const ISO_TRIALS: usize = 64;
pub const ISO_HEIGHT: i64 = 8;
pub const ISO_SEED: u64 = 0x5157_4154;
/// Default depth for Ext-based checks.
pub const DEFAULT_NMAX: usize = 5;

/// Ext depth, honouring the `STRATA_NMAX` environment variable.
pub fn n_max() -> usize {
    std::env::var("STRATA_NMAX")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_NMAX)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    field: Field,
    dim: usize,
    action: Vec<Matrix>,
}

impl Module {
    /// Validated construction from one matrix per basis element.
    pub fn new(a: &Algebra, action: Vec<Matrix>) -> Result<Module> {
        let dim = action.first().map_or(0, |m| m.rows());
        let m = Module {
            field: a.field(),
            dim,
            action,
        };
        m.check(a)?;
        Ok(m)
    }

    pub(crate) fn raw(field: Field, dim: usize, action: Vec<Matrix>) -> Module {
        Module { field, dim, action }
    }

    pub fn zero(a: &Algebra) -> Module {
        Module::raw(a.field(), 0, vec![Matrix::zeros(a.field(), 0, 0); a.dim()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Action matrix of an algebra element.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (c, a) in x.iter().zip(&self.action) {
            m.add_scaled(c, a);
        }
        m
    }

    /// Checks that the action respects the structure constants and the unit.
    pub fn check(&self, a: &Algebra) -> Result<()> {
        if self.action.len() != a.dim() {
            return Err(Error::Dimension(format!(
                "{} action matrices for an algebra of dimension {}",
                self.action.len(),
                a.dim()
            )));
        }
        for m in &self.action {
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::Dimension("action matrix of wrong shape".into()));
            }
        }
        if self.act(a.unit()) != Matrix::identity(self.field, self.dim) {
            return Err(Error::InvalidAlgebra("unit does not act as identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zeros(self.field, self.dim, self.dim);
                for (k, c) in a.product(i, j) {
                    rhs.add_scaled(c, &self.action[*k]);
                }
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "action fails on ({}, {})",
                        a.basis_names()[i],
                        a.basis_names()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `dim e_k X` for one idempotent of each label.
    pub fn dim_vector(&self, a: &Algebra) -> Vec<usize> {
        a.labels()
            .iter()
            .map(|l| comp_mult(a, self, l).expect("known label"))
            .collect()
    }

    pub fn to_json(&self, a: &Algebra) -> Value {
        let actions: serde_json::Map<String, Value> = a
            .basis_names()
            .iter()
            .zip(&self.action)
            .map(|(n, m)| (n.clone(), serde_json::to_value(m).expect("matrix serializes")))
            .collect();
        json!({ "dim": self.dim, "action": actions })
    }
}

/// A submodule with its inclusion.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: Module,
    pub inclusion: Matrix,
}

/// A quotient with its projection and a linear section.
#[derive(Clone, Debug)]
pub struct Quot {
    pub module: Module,
    pub projection: Matrix,
    pub section: Matrix,
}

/// Submodule spanned by the columns of `basis`, which must be stable.
pub fn submodule(x: &Module, basis: &Matrix) -> Sub {
    let field = x.field;
    let basis = basis.column_space();
    let k = basis.cols();
    if k == 0 {
        return Sub {
            module: Module::raw(field, 0, vec![Matrix::zeros(field, 0, 0); x.action.len()]),
            inclusion: Matrix::zeros(field, x.dim, 0),
        };
    }
    let left = basis.left_inverse();
    let action = x
        .action
        .iter()
        .map(|m| {
            let image = m.mul(&basis);
            let sub = left.mul(&image);
            debug_assert_eq!(basis.mul(&sub), image, "subspace is not stable");
            sub
        })
        .collect();
    Sub {
        module: Module::raw(field, k, action),
        inclusion: basis,
    }
}

/// Quotient by the stable subspace spanned by the columns of `sub`.
pub fn quotient(x: &Module, sub: &Matrix) -> Quot {
    let field = x.field;
    let mut span = Span::new(field, x.dim);
    for c in sub.columns() {
        span.insert(&c);
    }
    quotient_by_span(x, &span)
}

pub fn quotient_by_span(x: &Module, span: &Span) -> Quot {
    let field = x.field;
    let keep = span.complement();
    let k = keep.len();
    let mut projection = Matrix::zeros(field, k, x.dim);
    for i in 0..x.dim {
        let r = span.reduce(&unit_vec(field, x.dim, i));
        for (row, &c) in keep.iter().enumerate() {
            projection.set(row, i, r[c].clone());
        }
    }
    let mut section = Matrix::zeros(field, x.dim, k);
    for (col, &c) in keep.iter().enumerate() {
        section.set(c, col, field.one());
    }
    let action = x.action.iter().map(|m| projection.mul(&m.mul(&section))).collect();
    Quot {
        module: Module::raw(field, k, action),
        projection,
        section,
    }
}

/// Submodule generated by the given vectors.
pub fn generate(a: &Algebra, x: &Module, vecs: &[Vec<Scalar>]) -> Span {
    let gens: Vec<Matrix> = a.all_generators().iter().map(|g| x.act(g)).collect();
    let mut span = Span::new(x.field, x.dim);
    let mut frontier = Vec::new();
    for v in vecs {
        if span.insert(v) {
            frontier.push(v.clone());
        }
    }
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let w = g.mul_vec(&v);
            if span.insert(&w) {
                frontier.push(w);
            }
        }
    }
    span
}

/// Left regular module.
pub fn regular(a: &Algebra) -> Module {
    let action = (0..a.dim()).map(|i| a.left_mult(&a.basis_vector(i))).collect();
    Module::raw(a.field(), a.dim(), action)
}

/// Basis of `A e_k` inside `A`.
pub fn projective_basis(a: &Algebra, k: usize) -> Span {
    let e = &a.idempotents()[k].coords;
    let mut span = Span::new(a.field(), a.dim());
    for i in 0..a.dim() {
        span.insert(&a.mul(&a.basis_vector(i), e));
    }
    span
}

/// `A e_k` for the k-th distinguished idempotent.
pub fn projective_at(a: &Algebra, k: usize) -> Sub {
    let basis = projective_basis(a, k).basis_matrix();
    submodule(&regular(a), &basis)
}

pub fn projective(a: &Algebra, label: &str) -> Result<Module> {
    Ok(projective_at(a, a.first_idempotent(label)?).module)
}

pub fn simple(a: &Algebra, label: &str) -> Result<Module> {
    let p = projective(a, label)?;
    Ok(top(a, &p).module)
}

/// Injective hull of the simple: dual of the projective over the opposite algebra.
pub fn injective(a: &Algebra, label: &str) -> Result<Module> {
    let op = a.opposite();
    Ok(dual(&projective(&op, label)?))
}

/// `D(X)`, a module over the opposite algebra.
pub fn dual(x: &Module) -> Module {
    Module::raw(x.field, x.dim, x.action.iter().map(Matrix::transpose).collect())
}

pub fn direct_sum(a: &Algebra, mods: &[&Module]) -> Module {
    let field = a.field();
    let dim = mods.iter().map(|m| m.dim).sum();
    let action = (0..a.dim())
        .map(|i| {
            let blocks: Vec<&Matrix> = mods.iter().map(|m| &m.action[i]).collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    Module::raw(field, dim, action)
}

pub fn power(a: &Algebra, x: &Module, t: usize) -> Module {
    let copies: Vec<&Module> = std::iter::repeat_n(x, t).collect();
    direct_sum(a, &copies)
}

/// `rad(A) X` as a subspace.
pub fn radical_span(a: &Algebra, x: &Module) -> Span {
    let mut span = Span::new(x.field, x.dim);
    for r in a.radical().columns() {
        let m = x.act(&r);
        for c in m.columns() {
            span.insert(&c);
        }
    }
    span
}

pub fn rad(a: &Algebra, x: &Module) -> Sub {
    submodule(x, &radical_span(a, x).basis_matrix())
}

pub fn top(a: &Algebra, x: &Module) -> Quot {
    quotient_by_span(x, &radical_span(a, x))
}

/// Annihilator of the radical.
pub fn socle(a: &Algebra, x: &Module) -> Sub {
    let mut rows = Span::new(x.field, x.dim);
    for r in a.radical().columns() {
        for row in x.act(&r).to_rows() {
            rows.insert(&row);
        }
    }
    submodule(x, &rows.null_space())
}

/// `[X : L_i]`, computed as `dim e X` for every idempotent labelled `i`;
/// all choices must agree.
pub fn comp_mult(a: &Algebra, x: &Module, label: &str) -> Result<usize> {
    a.label_index(label)?;
    let mut value = None;
    for e in a.idempotents().iter().filter(|e| e.label == label) {
        let r = x.act(&e.coords).rank();
        match value {
            None => value = Some(r),
            Some(v) => assert_eq!(v, r, "composition multiplicity depends on the idempotent"),
        }
    }
    Ok(value.expect("label has an idempotent"))
}

/// `Tr_{P_i}(Y)`: the submodule generated by `e_i Y`.
pub fn trace_of_projective(a: &Algebra, label: &str, y: &Module) -> Result<Span> {
    let k = a.first_idempotent(label)?;
    let e = y.act(&a.idempotents()[k].coords);
    Ok(generate(a, y, &e.column_space().columns()))
}

/// Sum of the images of all maps `X -> Y`.
pub fn trace(a: &Algebra, x: &Module, y: &Module) -> Span {
    let mut span = Span::new(y.field, y.dim);
    for h in hom_basis(a, x, y) {
        for c in h.columns() {
            span.insert(&c);
        }
    }
    span
}

/// Basis of `e_k X` and the coordinate projection onto it.
fn weight_blocks(a: &Algebra, x: &Module) -> Vec<(Matrix, Matrix)> {
    a.idempotents()
        .iter()
        .map(|e| {
            let img = x.act(&e.coords).column_space();
            let coords = if img.cols() == 0 {
                Matrix::zeros(x.field, 0, x.dim)
            } else {
                img.left_inverse().mul(&x.act(&e.coords))
            };
            (img, coords)
        })
        .collect()
}

/// Basis of `Hom_A(X, Y)` as `dim Y x dim X` matrices.
pub fn hom_basis(a: &Algebra, x: &Module, y: &Module) -> Vec<Matrix> {
    let field = a.field();
    let bx = weight_blocks(a, x);
    let by = weight_blocks(a, y);
    let m = bx.len();
    let mut offset = vec![0; m + 1];
    for k in 0..m {
        offset[k + 1] = offset[k] + by[k].0.cols() * bx[k].0.cols();
    }
    let n = offset[m];
    if n == 0 {
        return Vec::new();
    }
    let var = |k: usize, r: usize, c: usize| offset[k] + r * bx[k].0.cols() + c;
    let mut eqs = Span::new(field, n);
    for g in a.generators() {
        let gx = x.act(g);
        let gy = y.act(g);
        for ia in 0..m {
            for ib in 0..m {
                let (da, db) = (by[ia].0.cols(), bx[ib].0.cols());
                if da == 0 || db == 0 {
                    continue;
                }
                // block equation: Y_ab D_b - D_a X_ab = 0, of shape da x db
                let yab = by[ia].1.mul(&gy.mul(&by[ib].0));
                let xab = bx[ia].1.mul(&gx.mul(&bx[ib].0));
                if yab.is_zero() && xab.is_zero() {
                    continue;
                }
                for i in 0..da {
                    for j in 0..db {
                        let mut row = zero_vec(field, n);
                        for l in 0..by[ib].0.cols() {
                            let c = yab.get(i, l);
                            if !c.is_zero() {
                                let v = var(ib, l, j);
                                row[v] = &row[v] + c;
                            }
                        }
                        for l in 0..bx[ia].0.cols() {
                            let c = xab.get(l, j);
                            if !c.is_zero() {
                                let v = var(ia, i, l);
                                row[v] = &row[v] - c;
                            }
                        }
                        eqs.insert(&row);
                    }
                }
            }
        }
    }
    let sol = eqs.null_space();
    sol.columns()
        .iter()
        .map(|s| {
            let mut f = Matrix::zeros(field, y.dim, x.dim);
            for k in 0..m {
                let (rows, cols) = (by[k].0.cols(), bx[k].0.cols());
                if rows == 0 || cols == 0 {
                    continue;
                }
                let mut d = Matrix::zeros(field, rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        d.set(r, c, s[var(k, r, c)].clone());
                    }
                }
                f = f.add(&by[k].0.mul(&d).mul(&bx[k].1));
            }
            f
        })
        .collect()
}

pub fn hom_dim(a: &Algebra, x: &Module, y: &Module) -> usize {
    hom_basis(a, x, y).len()
}

pub fn is_homomorphism(a: &Algebra, x: &Module, y: &Module, f: &Matrix) -> bool {
    f.rows() == y.dim && f.cols() == x.dim && (0..a.dim()).all(|i| y.action[i].mul(f) == f.mul(&x.action[i]))
}

/// Why two modules are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Dimension(usize, usize),
    DimensionVector { label: String, left: usize, right: usize },
    NoHomomorphism,
    Ext1ToSimple { label: String, left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic(Matrix),
    NotIsomorphic(Witness),
    Undetermined,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn is_not_iso(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic(_))
    }
}

/// Certificate-based isomorphism test.
pub fn iso_test(a: &Algebra, x: &Module, y: &Module) -> IsoVerdict {
    if x.dim != y.dim {
        return IsoVerdict::NotIsomorphic(Witness::Dimension(x.dim, y.dim));
    }
    for l in a.labels() {
        let (dl, dr) = (comp_mult(a, x, l).expect("label"), comp_mult(a, y, l).expect("label"));
        if dl != dr {
            return IsoVerdict::NotIsomorphic(Witness::DimensionVector {
                label: l.clone(),
                left: dl,
                right: dr,
            });
        }
    }
    if x.dim == 0 {
        return IsoVerdict::Isomorphic(Matrix::zeros(a.field(), 0, 0));
    }
    let hom = hom_basis(a, x, y);
    if hom.is_empty() {
        return IsoVerdict::NotIsomorphic(Witness::NoHomomorphism);
    }
    if let Some(f) = search_invertible(a.field(), &hom) {
        return IsoVerdict::Isomorphic(f);
    }
    for l in a.labels() {
        let s = simple(a, l).expect("label");
        let (el, er) = (ext_dim(a, x, &s, 1), ext_dim(a, y, &s, 1));
        if el != er {
            return IsoVerdict::NotIsomorphic(Witness::Ext1ToSimple {
                label: l.clone(),
                left: el,
                right: er,
            });
        }
    }
    IsoVerdict::Undetermined
}

/// Seeded search for an invertible integer combination of square matrices.
pub fn search_invertible(field: Field, basis: &[Matrix]) -> Option<Matrix> {
    let n = basis.first()?.rows();
    if basis[0].cols() != n {
        return None;
    }
    if basis.len() == 1 {
        return (basis[0].rank() == n).then(|| basis[0].clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for t in 0..ISO_TRIALS {
        let h = 1 + (t as i64 * ISO_HEIGHT) / ISO_TRIALS as i64;
        let mut f = Matrix::zeros(field, n, n);
        for b in basis {
            let c: i64 = rng.gen_range(-h..=h);
            f.add_scaled(&field.int(c), b);
        }
        if f.rank() == n {
            return Some(f);
        }
    }
    None
}

/// Minimal projective resolution, recorded through its differentials.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// Idempotent indices of the summands of each term `P_k`.
    pub terms: Vec<Vec<usize>>,
    /// `diffs[k][s][t]`: component in summand `t` of `P_k` of the image of
    /// generator `s` of `P_{k+1}`; an element of `e_s A e_t`.
    pub diffs: Vec<Vec<Vec<Vec<Scalar>>>>,
    /// Images of the generators of `P_0` in the resolved module.
    pub augmentation: Vec<Vec<Scalar>>,
    /// True when a zero syzygy was reached.
    pub terminated: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.terms.iter().take_while(|t| !t.is_empty()).count()
    }
}

struct Cover {
    gens: Vec<(usize, Vec<Scalar>)>,
    bases: Vec<Span>,
}

fn cover_generators(a: &Algebra, m: &Module) -> Vec<(usize, Vec<Scalar>)> {
    let mut span = radical_span(a, m);
    let mut gens = Vec::new();
    for l in a.labels() {
        let k = a.first_idempotent(l).expect("label");
        let img = m.act(&a.idempotents()[k].coords).column_space();
        for v in img.columns() {
            if span.insert(&v) {
                gens.push((k, v));
            }
        }
    }
    gens
}

/// Projective cover `P -> M` as an explicit module map.
fn cover(a: &Algebra, m: &Module, bases: &mut [Option<Span>]) -> (Module, Matrix, Cover) {
    let gens = cover_generators(a, m);
    let reg = regular(a);
    let mut spans = Vec::new();
    let mut blocks = Vec::new();
    for (k, _) in &gens {
        if bases[*k].is_none() {
            bases[*k] = Some(projective_basis(a, *k));
        }
        let s = bases[*k].clone().expect("filled");
        blocks.push(submodule(&reg, &s.basis_matrix()).module);
        spans.push(s);
    }
    let refs: Vec<&Module> = blocks.iter().collect();
    let p = direct_sum(a, &refs);
    let mut pi = Matrix::zeros(a.field(), m.dim, p.dim);
    let mut col = 0;
    for ((_, g), s) in gens.iter().zip(&spans) {
        for b in s.basis() {
            let v = m.act(b).mul_vec(g);
            for (r, x) in v.into_iter().enumerate() {
                pi.set(r, col, x);
            }
            col += 1;
        }
    }
    (p, pi, Cover { gens, bases: spans })
}

/// Minimal projective resolution of `x` up to `len` differentials.
pub fn projective_resolution(a: &Algebra, x: &Module, len: usize) -> Resolution {
    let mut bases = vec![None; a.idempotents().len()];
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let (p0, pi0, c0) = cover(a, x, &mut bases);
    terms.push(c0.gens.iter().map(|g| g.0).collect::<Vec<_>>());
    let augmentation = c0.gens.iter().map(|g| g.1.clone()).collect();
    let mut prev_cover = c0;
    let mut kernel = pi0.kernel_basis();
    let mut p_prev = p0;
    let mut terminated = kernel.cols() == 0;
    for _ in 0..len {
        if terminated {
            terms.push(Vec::new());
            diffs.push(Vec::new());
            continue;
        }
        let k = submodule(&p_prev, &kernel);
        let (p, pi, c) = cover(a, &k.module, &mut bases);
        // express each generator of the new term inside the previous term
        let mut d = Vec::new();
        for (_, g) in &c.gens {
            let in_prev = k.inclusion.mul_vec(g);
            let mut comps = Vec::new();
            let mut pos = 0;
            for s in &prev_cover.bases {
                let mut elem = a.zero();
                for (i, b) in s.basis().iter().enumerate() {
                    axpy(&mut elem, &in_prev[pos + i], b);
                }
                pos += s.dim();
                comps.push(elem);
            }
            d.push(comps);
        }
        terms.push(c.gens.iter().map(|g| g.0).collect());
        diffs.push(d);
        kernel = pi.kernel_basis();
        terminated = kernel.cols() == 0;
        prev_cover = c;
        p_prev = p;
    }
    Resolution {
        terms,
        diffs,
        augmentation,
        terminated,
    }
}

/// Cochain complex `Hom(P_k, Y)` with `C^k = sum_s e_s Y`.
pub struct HomComplex {
    pub dims: Vec<usize>,
    /// `maps[k]: C^k -> C^{k+1}`.
    pub maps: Vec<Matrix>,
    /// Per term, the bases of `e_s Y` used for coordinates.
    pub blocks: Vec<Vec<Matrix>>,
}

/// Builds the Hom complex for a target given through its action on the
/// resolution algebra's elements and the images of its idempotents.
pub fn hom_complex(
    field: Field,
    res: &Resolution,
    idempotents: &[Vec<Scalar>],
    target_dim: usize,
    act: &dyn Fn(&[Scalar]) -> Matrix,
) -> HomComplex {
    let mut weight: Vec<(Matrix, Matrix)> = Vec::new();
    for e in idempotents {
        let m = act(e);
        let img = m.column_space();
        let coords = if img.cols() == 0 {
            Matrix::zeros(field, 0, target_dim)
        } else {
            img.left_inverse().mul(&m)
        };
        weight.push((img, coords));
    }
    let dims: Vec<usize> = res
        .terms
        .iter()
        .map(|t| t.iter().map(|&k| weight[k].0.cols()).sum())
        .collect();
    let blocks = res
        .terms
        .iter()
        .map(|t| t.iter().map(|&k| weight[k].0.clone()).collect())
        .collect();
    let mut maps = Vec::new();
    for (k, d) in res.diffs.iter().enumerate() {
        let (src, dst) = (&res.terms[k], &res.terms[k + 1]);
        let mut m = Matrix::zeros(field, dims[k + 1], dims[k]);
        let mut r0 = 0;
        for (s, &ks) in dst.iter().enumerate() {
            let mut c0 = 0;
            for (t, &kt) in src.iter().enumerate() {
                let block = weight[ks].1.mul(&act(&d[s][t]).mul(&weight[kt].0));
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        m.set(r0 + i, c0 + j, block.get(i, j).clone());
                    }
                }
                c0 += weight[kt].0.cols();
            }
            r0 += weight[ks].0.cols();
        }
        maps.push(m);
    }
    HomComplex { dims, maps, blocks }
}

impl HomComplex {
    /// Dimension of the cohomology at degree `n`.
    pub fn cohomology_dim(&self, n: usize) -> usize {
        let out = self.maps.get(n).map_or(0, Matrix::rank);
        let inc = if n == 0 { 0 } else { self.maps[n - 1].rank() };
        self.dims[n] - out - inc
    }

    /// Columns spanning the cocycles at degree `n`.
    pub fn cocycles(&self, n: usize) -> Matrix {
        match self.maps.get(n) {
            Some(m) => m.kernel_basis(),
            None => Matrix::identity(self.field(), self.dims[n]),
        }
    }

    /// Columns spanning the coboundaries at degree `n`.
    pub fn coboundaries(&self, n: usize) -> Matrix {
        if n == 0 {
            Matrix::zeros(self.field(), self.dims[0], 0)
        } else {
            self.maps[n - 1].column_space()
        }
    }

    fn field(&self) -> Field {
        self.maps
            .first()
            .map(Matrix::field)
            .or_else(|| self.blocks.iter().flatten().next().map(Matrix::field))
            .unwrap_or(Field::Q)
    }
}

/// `dim Ext^n_A(X, Y)`.
pub fn ext_dim(a: &Algebra, x: &Module, y: &Module, n: usize) -> usize {
    if x.dim == 0 || y.dim == 0 {
        return 0;
    }
    let res = projective_resolution(a, x, n + 1);
    let idem: Vec<Vec<Scalar>> = a.idempotents().iter().map(|e| e.coords.clone()).collect();
    let cx = hom_complex(a.field(), &res, &idem, y.dim, &|v| y.act(v));
    cx.cohomology_dim(n)
}

/// Projective dimension when at most `bound`, by resolving to termination.
pub fn projective_dimension(a: &Algebra, x: &Module, bound: usize) -> Option<usize> {
    let res = projective_resolution(a, x, bound + 1);
    if !res.terminated {
        return None;
    }
    Some(res.length().saturating_sub(1))
}

/// Global dimension when all simples have projective dimension at most `bound`.
pub fn global_dimension(a: &Algebra, bound: usize) -> Option<usize> {
    let mut g = 0;
    for l in a.labels() {
        g = g.max(projective_dimension(a, &simple(a, l).ok()?, bound)?);
    }
    Some(g)
}

/// Corner algebra `eAe` with the idempotent it came from.
#[derive(Clone, Debug)]
pub struct CornerData {
    pub algebra: Algebra,
    pub embedding: Matrix,
    pub e: Vec<Scalar>,
}

impl CornerData {
    pub fn new(a: &Algebra, e: &[Scalar]) -> Result<CornerData> {
        let (algebra, embedding) = a.corner(e)?;
        Ok(CornerData {
            algebra,
            embedding,
            e: e.to_vec(),
        })
    }
}

/// Quotient algebra `A/AeA` with its projection.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub algebra: Algebra,
    pub projection: Matrix,
    pub e: Vec<Scalar>,
    lift: Vec<Vec<Scalar>>,
}

impl QuotientData {
    pub fn new(a: &Algebra, e: &[Scalar]) -> Result<QuotientData> {
        let (algebra, projection) = a.quotient(e)?;
        let lift = (0..algebra.dim())
            .map(|k| {
                let name = &algebra.basis_names()[k];
                let i = a
                    .basis_names()
                    .iter()
                    .position(|n| n == name)
                    .expect("kept basis element");
                a.basis_vector(i)
            })
            .collect();
        Ok(QuotientData {
            algebra,
            projection,
            e: e.to_vec(),
            lift,
        })
    }

    /// Lifts of the quotient basis to `A`, as columns.
    pub fn section(&self) -> Matrix {
        let rows = self.projection.cols();
        Matrix::from_columns(self.projection.field(), rows, &self.lift)
    }

    fn descend(&self, x: &Module) -> Module {
        let action = self.lift.iter().map(|v| x.act(v)).collect();
        Module::raw(x.field, x.dim, action)
    }
}

/// `eX` as a module over `eAe`.
pub fn corner_apply(c: &CornerData, x: &Module) -> Module {
    let field = x.field;
    let img = x.act(&c.e).column_space();
    let k = img.cols();
    let n = c.algebra.dim();
    if k == 0 {
        return Module::raw(field, 0, vec![Matrix::zeros(field, 0, 0); n]);
    }
    let left = img.left_inverse();
    let action = (0..n)
        .map(|j| left.mul(&x.act(&c.embedding.column(j)).mul(&img)))
        .collect();
    Module::raw(field, k, action)
}

/// Inflation of an `A/AeA`-module to `A`.
pub fn inflate(a: &Algebra, q: &QuotientData, z: &Module) -> Module {
    let action = (0..a.dim()).map(|i| z.act(&q.projection.column(i))).collect();
    Module::raw(z.field, z.dim, action)
}

/// `X / AeX` as an `A/AeA`-module.
pub fn quotient_tensor(a: &Algebra, q: &QuotientData, x: &Module) -> Module {
    let ex = x.act(&q.e).column_space();
    let span = generate(a, x, &ex.columns());
    q.descend(&quotient_by_span(x, &span).module)
}

/// Largest submodule of `X` annihilated by `AeA`, as an `A/AeA`-module.
pub fn quotient_hom(a: &Algebra, q: &QuotientData, x: &Module) -> Module {
    let mut rows = Span::new(x.field, x.dim);
    let ex = x.act(&q.e);
    for i in 0..a.dim() {
        for r in ex.mul(x.action(i)).to_rows() {
            rows.insert(&r);
        }
    }
    let sub = submodule(x, &rows.null_space());
    q.descend(&sub.module)
}

/// Balanced tensor `M ⊗_R Y` for a subspace `M ⊂ A` that is a left ideal
/// closed under right multiplication by `rho(R)`.
pub struct Tensor {
    pub module: Module,
    /// Projection from the outer space `M ⊗ Y`, indexed `u * dim Y + y`.
    pub projection: Matrix,
    pub m_basis: Span,
}

pub fn balanced_tensor(a: &Algebra, m_basis: Span, rho: &[Vec<Scalar>], y: &Module) -> Tensor {
    let field = a.field();
    let (m, dy) = (m_basis.dim(), y.dim);
    let n = m * dy;
    let mut rel = Span::new(field, n);
    let coords = |v: &[Scalar]| m_basis.coordinates(v).expect("stays in M");
    for (r, rv) in rho.iter().enumerate() {
        let yr = y.action(r);
        for (u, ub) in m_basis.basis().iter().enumerate() {
            let ur = coords(&a.mul(ub, rv));
            for j in 0..dy {
                let mut v = zero_vec(field, n);
                for (u2, c) in ur.iter().enumerate() {
                    if !c.is_zero() {
                        v[u2 * dy + j] = &v[u2 * dy + j] + c;
                    }
                }
                for (j2, row) in (0..dy).map(|j2| (j2, yr.get(j2, j))) {
                    if !row.is_zero() {
                        v[u * dy + j2] = &v[u * dy + j2] - row;
                    }
                }
                rel.insert(&v);
            }
        }
    }
    let keep = rel.complement();
    let k = keep.len();
    let proj_vec = |v: &[Scalar]| -> Vec<Scalar> {
        let r = rel.reduce(v);
        keep.iter().map(|&c| r[c].clone()).collect()
    };
    let mut projection = Matrix::zeros(field, k, n);
    for i in 0..n {
        for (row, x) in proj_vec(&unit_vec(field, n, i)).into_iter().enumerate() {
            projection.set(row, i, x);
        }
    }
    let action = (0..a.dim())
        .map(|b| {
            let bv = a.basis_vector(b);
            let mut mat = Matrix::zeros(field, k, k);
            for (col, &idx) in keep.iter().enumerate() {
                let (u, j) = (idx / dy, idx % dy);
                let bu = coords(&a.mul(&bv, &m_basis.basis()[u]));
                let mut v = zero_vec(field, n);
                for (u2, c) in bu.iter().enumerate() {
                    if !c.is_zero() {
                        v[u2 * dy + j] = c.clone();
                    }
                }
                for (row, x) in proj_vec(&v).into_iter().enumerate() {
                    mat.set(row, col, x);
                }
            }
            mat
        })
        .collect();
    Tensor {
        module: Module::raw(field, k, action),
        projection,
        m_basis,
    }
}

/// `Ae ⊗_{eAe} Y`.
pub fn corner_tensor(a: &Algebra, c: &CornerData, y: &Module) -> Module {
    let mut ae = Span::new(a.field(), a.dim());
    for i in 0..a.dim() {
        ae.insert(&a.mul(&a.basis_vector(i), &c.e));
    }
    let rho = c.embedding.columns();
    balanced_tensor(a, ae, &rho, y).module
}

/// `Hom_{eAe}(eA, Y)` with `(a f)(u) = f(u a)`.
pub fn corner_hom(a: &Algebra, c: &CornerData, y: &Module) -> Module {
    let field = a.field();
    let mut ea = Span::new(field, a.dim());
    for i in 0..a.dim() {
        ea.insert(&a.mul(&c.e, &a.basis_vector(i)));
    }
    let basis = ea.basis().to_vec();
    let d = basis.len();
    let coords = |v: &[Scalar]| ea.coordinates(v).expect("stays in eA");
    let left = |x: &[Scalar]| -> Matrix {
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|u| coords(&a.mul(x, u))).collect();
        Matrix::from_columns(field, d, &cols)
    };
    let n = c.algebra.dim();
    let ea_mod = Module::raw(field, d, (0..n).map(|j| left(&c.embedding.column(j))).collect());
    let hom = hom_basis(&c.algebra, &ea_mod, y);
    let h = hom.len();
    if h == 0 {
        return Module::raw(field, 0, vec![Matrix::zeros(field, 0, 0); a.dim()]);
    }
    let flat = |m: &Matrix| -> Vec<Scalar> { m.to_rows().into_iter().flatten().collect() };
    let stacked = Matrix::from_columns(field, y.dim * d, &hom.iter().map(flat).collect::<Vec<_>>());
    let action = (0..a.dim())
        .map(|b| {
            let bv = a.basis_vector(b);
            let cols: Vec<Vec<Scalar>> = basis.iter().map(|u| coords(&a.mul(u, &bv))).collect();
            let right = Matrix::from_columns(field, d, &cols);
            let images: Vec<Vec<Scalar>> = hom.iter().map(|f| flat(&f.mul(&right))).collect();
            let rhs = Matrix::from_columns(field, y.dim * d, &images);
            stacked
                .solve(&rhs)
                .expect("shapes agree")
                .expect("Hom is stable under the action")
        })
        .collect();
    Module::raw(field, h, action)
}

/// `A ⊗_B X` along the embedding with columns `emb`, plus the unit
/// `X -> Res(A ⊗_B X)`, `x -> 1 ⊗ x`.
pub struct Induced {
    pub module: Module,
    pub unit: Matrix,
}

pub fn induction(a: &Algebra, emb: &Matrix, x: &Module) -> Induced {
    let field = a.field();
    let mut all = Span::new(field, a.dim());
    for i in 0..a.dim() {
        all.insert(&a.basis_vector(i));
    }
    let t = balanced_tensor(a, all, &emb.columns(), x);
    let coords = t.m_basis.coordinates(a.unit()).expect("unit");
    let dy = x.dim;
    let mut unit = Matrix::zeros(field, t.module.dim, dy);
    for j in 0..dy {
        let mut v = zero_vec(field, t.m_basis.dim() * dy);
        for (u, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                v[u * dy + j] = c.clone();
            }
        }
        let img = t.projection.mul_vec(&v);
        for (r, x) in img.into_iter().enumerate() {
            unit.set(r, j, x);
        }
    }
    Induced { module: t.module, unit }
}

pub fn restriction(emb: &Matrix, y: &Module) -> Module {
    let action = emb.columns().iter().map(|c| y.act(c)).collect();
    Module::raw(y.field, y.dim, action)
}

/// `A` as a right `B`-module, i.e. a left module over `B^op`.
pub fn ambient_as_right_module(a: &Algebra, emb: &Matrix) -> Module {
    let action = emb.columns().iter().map(|c| a.right_mult(c)).collect();
    Module::raw(a.field(), a.dim(), action)
}

/// Whether `A ⊗_B -` is exact: `A_B` is projective iff its minimal
/// projective cover has zero kernel.
pub fn induction_is_exact(a: &Algebra, b: &Algebra, emb: &Matrix) -> bool {
    let bop = b.opposite();
    let m = ambient_as_right_module(a, emb);
    let mut bases = vec![None; bop.idempotents().len()];
    let (p, _, _) = cover(&bop, &m, &mut bases);
    p.dim == m.dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compile_quiver, QuiverPresentation};

    fn pres(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[(i64, &[&str])]],
        bound: usize,
    ) -> QuiverPresentation {
        QuiverPresentation {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
            relations: relations
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, p)| (Field::Q.int(*c), p.iter().map(|s| s.to_string()).collect()))
                        .collect()
                })
                .collect(),
            max_path_length: bound,
        }
    }

    fn sl2() -> Algebra {
        compile_quiver(
            &pres(
                &["1", "2"],
                &[("α", "1", "2"), ("β", "2", "1")],
                &[&[(1, &["α", "β"])]],
                3,
            ),
            Field::Q,
        )
        .unwrap()
    }

    #[test]
    fn projective_dimensions() {
        let a = sl2();
        assert_eq!(projective(&a, "1").unwrap().dim(), 3);
        assert_eq!(projective(&a, "2").unwrap().dim(), 2);
        for l in ["1", "2"] {
            projective(&a, l).unwrap().check(&a).unwrap();
            simple(&a, l).unwrap().check(&a).unwrap();
            injective(&a, l).unwrap().check(&a).unwrap();
        }
        assert!(projective(&a, "9").is_err());
    }

    #[test]
    fn composition_and_socle() {
        let a = sl2();
        let p1 = projective(&a, "1").unwrap();
        assert_eq!(comp_mult(&a, &p1, "1").unwrap(), 2);
        assert_eq!(comp_mult(&a, &p1, "2").unwrap(), 1);
        let soc = socle(&a, &p1).module;
        assert!(iso_test(&a, &soc, &simple(&a, "1").unwrap()).is_iso());
    }

    #[test]
    fn hom_contains_identity() {
        let a = sl2();
        let p1 = projective(&a, "1").unwrap();
        let h = hom_basis(&a, &p1, &p1);
        assert_eq!(h.len(), 2);
        for f in &h {
            assert!(is_homomorphism(&a, &p1, &p1, f));
        }
        assert!(iso_test(&a, &p1, &p1).is_iso());
        let (l1, l2) = (simple(&a, "1").unwrap(), simple(&a, "2").unwrap());
        assert!(matches!(
            iso_test(&a, &l1, &l2),
            IsoVerdict::NotIsomorphic(Witness::DimensionVector { .. })
        ));
    }

    #[test]
    fn ext_examples() {
        let a = sl2();
        let (l1, l2) = (simple(&a, "1").unwrap(), simple(&a, "2").unwrap());
        assert_eq!(ext_dim(&a, &l2, &l1, 1), 1);
        assert_eq!(ext_dim(&a, &l1, &l2, 1), 1);
        let p1 = projective(&a, "1").unwrap();
        for n in 1..4 {
            assert_eq!(ext_dim(&a, &p1, &l1, n), 0);
            assert_eq!(ext_dim(&a, &p1, &l2, n), 0);
        }
        assert_eq!(ext_dim(&a, &l1, &p1, 0), hom_dim(&a, &l1, &p1));
        assert_eq!(global_dimension(&a, 12), Some(2));
    }

    #[test]
    fn duality_and_injectives() {
        let a = sl2();
        let op = a.opposite();
        for l in ["1", "2"] {
            let p = projective(&a, l).unwrap();
            let d = dual(&p);
            d.check(&op).unwrap();
            assert!(iso_test(&a, &dual(&d), &p).is_iso());
            let i_op = injective(&op, l).unwrap();
            assert!(iso_test(&op, &d, &i_op).is_iso());
            let s = simple(&a, l).unwrap();
            assert!(iso_test(&op, &dual(&s), &simple(&op, l).unwrap()).is_iso());
        }
    }

    #[test]
    fn recollement_adjunctions() {
        let a = sl2();
        let e1 = a.idempotents()[0].coords.clone();
        let c = CornerData::new(&a, &e1).unwrap();
        let q = QuotientData::new(&a, &e1).unwrap();
        let mods: Vec<Module> = ["1", "2"]
            .iter()
            .flat_map(|l| {
                [
                    projective(&a, l).unwrap(),
                    simple(&a, l).unwrap(),
                    injective(&a, l).unwrap(),
                ]
            })
            .collect();
        let cmods: Vec<Module> = vec![projective(&c.algebra, "1").unwrap(), simple(&c.algebra, "1").unwrap()];
        let qmods: Vec<Module> = vec![simple(&q.algebra, "2").unwrap()];
        for x in &mods {
            let ex = corner_apply(&c, x);
            ex.check(&c.algebra).unwrap();
            for y in &cmods {
                let right = corner_hom(&a, &c, y);
                right.check(&a).unwrap();
                assert_eq!(hom_dim(&c.algebra, &ex, y), hom_dim(&a, x, &right));
                let left = corner_tensor(&a, &c, y);
                left.check(&a).unwrap();
                assert_eq!(hom_dim(&a, &left, x), hom_dim(&c.algebra, y, &ex));
            }
            for z in &qmods {
                let inf = inflate(&a, &q, z);
                inf.check(&a).unwrap();
                let qt = quotient_tensor(&a, &q, x);
                qt.check(&q.algebra).unwrap();
                assert_eq!(hom_dim(&q.algebra, &qt, z), hom_dim(&a, x, &inf));
                let qh = quotient_hom(&a, &q, x);
                qh.check(&q.algebra).unwrap();
                assert_eq!(hom_dim(&a, &inf, x), hom_dim(&q.algebra, z, &qh));
            }
        }
        let full = CornerData::new(&a, a.unit()).unwrap();
        let p1 = projective(&a, "1").unwrap();
        assert_eq!(corner_apply(&full, &p1), p1);
    }

    #[test]
    fn self_induction_is_identity() {
        let a = sl2();
        let emb = Matrix::identity(Field::Q, a.dim());
        assert!(induction_is_exact(&a, &a, &emb));
        let p1 = projective(&a, "1").unwrap();
        let ind = induction(&a, &emb, &p1);
        assert!(iso_test(&a, &ind.module, &p1).is_iso());
        assert!(is_homomorphism(&a, &p1, &restriction(&emb, &ind.module), &ind.unit));
    }

    #[test]
    fn semisimple_modules_coincide() {
        let s = Algebra::semisimple(Field::Q, &[(1, "a"), (2, "b")]);
        for l in ["a", "b"] {
            let p = projective(&s, l).unwrap();
            assert!(iso_test(&s, &p, &simple(&s, l).unwrap()).is_iso());
            assert!(iso_test(&s, &p, &injective(&s, l).unwrap()).is_iso());
        }
        assert_eq!(projective(&s, "b").unwrap().dim(), 2);
    }
}
