//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] is always validated on construction: associativity, the
//! unit, the distinguished idempotent family and its labels, primitivity and
//! splitness are all checked, never trusted.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kernel::{axpy, unit_vec, zero_vec, Field, Matrix, Scalar, Span};

/// One product `b_i * b_j` as sparse coordinates.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent {
    pub coords: Vec<Scalar>,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    names: Vec<String>,
    mult: Vec<Vec<SparseVec>>,
    unit: Vec<Scalar>,
    idempotents: Vec<Idempotent>,
    labels: Vec<String>,
    radical: Matrix,
    generators: Vec<Vec<Scalar>>,
    quiver: Option<QuiverData>,
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Algebra) -> bool {
        self.field == o.field
            && self.names == o.names
            && self.mult == o.mult
            && self.unit == o.unit
            && self.idempotents == o.idempotents
    }
}

fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

impl Algebra {
    /// Builds an algebra from a dense table: `table[i][j]` holds the
    /// coordinates of `b_i * b_j`.
    pub fn from_structure(
        field: Field,
        names: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Idempotent>,
    ) -> Result<Algebra> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::InvalidAlgebra(format!("structure table must be {n}x{n}x{n}")));
        }
        let mult = table
            .iter()
            .map(|row| row.iter().map(|v| sparse(v)).collect())
            .collect();
        Algebra::build(field, names, mult, unit, idempotents, None, None)
    }

    pub(crate) fn build(
        field: Field,
        names: Vec<String>,
        mult: Vec<Vec<SparseVec>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Idempotent>,
        radical: Option<Matrix>,
        quiver: Option<QuiverData>,
    ) -> Result<Algebra> {
        let n = names.len();
        if unit.len() != n || idempotents.iter().any(|e| e.coords.len() != n) {
            return Err(Error::InvalidAlgebra("coordinate vector of wrong length".into()));
        }
        for v in mult.iter().flatten().flatten() {
            if v.1.field() != field {
                return Err(Error::FieldMismatch(format!("structure constant over {}", v.1.field())));
            }
        }
        let mut labels: Vec<String> = Vec::new();
        for e in &idempotents {
            if !labels.contains(&e.label) {
                labels.push(e.label.clone());
            }
        }
        let mut a = Algebra {
            field,
            names,
            mult,
            unit,
            idempotents,
            labels,
            radical: Matrix::zeros(field, n, 0),
            generators: Vec::new(),
            quiver,
        };
        a.check_associative()?;
        a.check_unit()?;
        a.check_idempotents()?;
        a.radical = match radical {
            Some(r) => r,
            None => a.trace_form_radical()?,
        };
        a.check_radical()?;
        a.check_primitive_and_labels()?;
        a.generators = a.pure_generators();
        Ok(a)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Idempotent] {
        &self.idempotents
    }

    /// Distinct simple labels in order of first appearance.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Index into the idempotent family of the first idempotent with this label.
    pub fn first_idempotent(&self, label: &str) -> Result<usize> {
        self.idempotents
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn is_basic(&self) -> bool {
        self.labels.len() == self.idempotents.len()
    }

    pub fn has_quiver(&self) -> bool {
        self.quiver.is_some()
    }

    pub fn quiver(&self) -> Option<&QuiverData> {
        self.quiver.as_ref()
    }

    /// Columns span the Jacobson radical.
    pub fn radical(&self) -> &Matrix {
        &self.radical
    }

    /// Idempotent family plus generators of the form `e_a x e_b`; together
    /// they generate the algebra.
    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    /// Generators including the idempotent family.
    pub fn all_generators(&self) -> Vec<Vec<Scalar>> {
        let mut g: Vec<Vec<Scalar>> = self.idempotents.iter().map(|e| e.coords.clone()).collect();
        g.extend(self.generators.iter().cloned());
        g
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Vec<Scalar> {
        zero_vec(self.field, self.dim())
    }

    /// Sparse coordinates of `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.mult[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `v -> x * v`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `v -> v * x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Sum of the distinguished idempotents with the given indices.
    pub fn idempotent_sum(&self, subset: &[usize]) -> Vec<Scalar> {
        let mut e = self.zero();
        for &k in subset {
            axpy(&mut e, &self.field.one(), &self.idempotents[k].coords);
        }
        e
    }

    /// Indices of all distinguished idempotents whose label is listed.
    pub fn idempotents_with_labels(&self, labels: &[String]) -> Result<Vec<usize>> {
        for l in labels {
            self.label_index(l)?;
        }
        Ok((0..self.idempotents.len())
            .filter(|&k| labels.contains(&self.idempotents[k].label))
            .collect())
    }

    /// Recovers the subset `S` with `e = sum_{k in S} e_k`.
    pub fn idempotent_subset(&self, e: &[Scalar]) -> Result<Vec<usize>> {
        if e.len() != self.dim() {
            return Err(Error::Dimension("idempotent of wrong length".into()));
        }
        if self.mul(e, e) != e {
            return Err(Error::NotIdempotent("e * e != e".into()));
        }
        let subset: Vec<usize> = (0..self.idempotents.len())
            .filter(|&k| {
                let ek = &self.idempotents[k].coords;
                self.mul(e, ek) == *ek
            })
            .collect();
        if self.idempotent_sum(&subset) != e {
            return Err(Error::NotIdempotentSum("not a sum of distinguished idempotents".into()));
        }
        Ok(subset)
    }

    /// Labels of the given family members, deduplicated in label order.
    pub fn labels_of(&self, subset: &[usize]) -> Vec<String> {
        self.labels
            .iter()
            .filter(|l| subset.iter().any(|&k| &self.idempotents[k].label == *l))
            .cloned()
            .collect()
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let mut ij = self.zero();
                for (k, c) in &self.mult[i][j] {
                    ij[*k] = c.clone();
                }
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let mut jk = self.zero();
                    for (m, c) in &self.mult[j][k] {
                        jk[*m] = c.clone();
                    }
                    let right = self.mul(&self.basis_vector(i), &jk);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidAlgebra(format!("unit fails on {}", self.names[i])));
            }
        }
        Ok(())
    }

    fn check_idempotents(&self) -> Result<()> {
        if self.idempotents.is_empty() && self.dim() > 0 {
            return Err(Error::InvalidAlgebra("empty idempotent family".into()));
        }
        let mut sum = self.zero();
        for (a, ea) in self.idempotents.iter().enumerate() {
            if ea.coords.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidAlgebra(format!("idempotent {a} is zero")));
            }
            for (b, eb) in self.idempotents.iter().enumerate() {
                let p = self.mul(&ea.coords, &eb.coords);
                let expect = if a == b { ea.coords.clone() } else { self.zero() };
                if p != expect {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents {a} and {b} are not orthogonal idempotents"
                    )));
                }
            }
            axpy(&mut sum, &self.field.one(), &ea.coords);
        }
        if sum != self.unit {
            return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// Radical of the trace form `T(a, b) = tr(L_{ab})`.
    pub fn trace_form_radical(&self) -> Result<Matrix> {
        let p = self.field.characteristic();
        if p != 0 && p <= self.dim() as u64 {
            return Err(Error::RadicalUnsupportedCharacteristic(p));
        }
        let n = self.dim();
        let traces: Vec<Scalar> = (0..n)
            .map(|k| {
                let mut t = self.field.zero();
                for j in 0..n {
                    for (m, c) in &self.mult[k][j] {
                        if *m == j {
                            t = &t + c;
                        }
                    }
                }
                t
            })
            .collect();
        let mut gram = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut t = self.field.zero();
                for (k, c) in &self.mult[i][j] {
                    t = &t + &(c * &traces[*k]);
                }
                gram.set(i, j, t);
            }
        }
        Ok(gram.kernel_basis())
    }

    fn check_radical(&self) -> Result<()> {
        let mut span = Span::new(self.field, self.dim());
        for c in self.radical.columns() {
            span.insert(&c);
        }
        for c in self.radical.columns() {
            for i in 0..self.dim() {
                let b = self.basis_vector(i);
                if !span.contains(&self.mul(&b, &c)) || !span.contains(&self.mul(&c, &b)) {
                    return Err(Error::InvalidAlgebra("radical is not an ideal".into()));
                }
            }
        }
        Ok(())
    }

    fn radical_span(&self) -> Span {
        let mut span = Span::new(self.field, self.dim());
        for c in self.radical.columns() {
            span.insert(&c);
        }
        span
    }

    /// Span of `x * A * y`.
    pub fn sandwich(&self, x: &[Scalar], y: &[Scalar]) -> Span {
        let mut span = Span::new(self.field, self.dim());
        for i in 0..self.dim() {
            let v = self.mul(&self.mul(x, &self.basis_vector(i)), y);
            span.insert(&v);
        }
        span
    }

    fn check_primitive_and_labels(&self) -> Result<()> {
        let rad = self.radical_span();
        for (a, ea) in self.idempotents.iter().enumerate() {
            for (b, eb) in self.idempotents.iter().enumerate() {
                let s = self.sandwich(&ea.coords, &eb.coords);
                let beyond = s.basis().iter().filter(|v| !rad.contains(v)).count();
                let mut joint = rad.clone();
                for v in s.basis() {
                    joint.insert(v);
                }
                let top = joint.dim() - rad.dim();
                if a == b {
                    if top != 1 {
                        return Err(Error::InvalidAlgebra(format!(
                            "idempotent {a} ({}) is not primitive with split top: dim e(A/J)e = {top}",
                            ea.label
                        )));
                    }
                } else {
                    let same = ea.label == eb.label;
                    if same != (beyond > 0) {
                        return Err(Error::InvalidAlgebra(format!(
                            "labels {} and {} disagree with the isomorphism classes of projectives",
                            ea.label, eb.label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Subalgebra generated by `gens` (nonempty words only).
    pub fn closure(&self, gens: &[Vec<Scalar>]) -> Span {
        let mut span = Span::new(self.field, self.dim());
        let mut frontier: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            if span.insert(g) {
                frontier.push(g.clone());
            }
        }
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w = self.mul(g, &v);
                if span.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        span
    }

    fn pure_generators(&self) -> Vec<Vec<Scalar>> {
        let idem: Vec<Vec<Scalar>> = self.idempotents.iter().map(|e| e.coords.clone()).collect();
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        let mut current = self.closure(&idem);
        if current.dim() == self.dim() {
            return gens;
        }
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            for ea in &idem {
                let left = self.mul(ea, &b);
                if left.iter().all(Scalar::is_zero) {
                    continue;
                }
                for eb in &idem {
                    let c = self.mul(&left, eb);
                    if c.iter().all(Scalar::is_zero) || current.contains(&c) {
                        continue;
                    }
                    gens.push(c);
                    let mut all = idem.clone();
                    all.extend(gens.iter().cloned());
                    current = self.closure(&all);
                    if current.dim() == self.dim() {
                        return gens;
                    }
                }
            }
        }
        gens
    }

    /// Same basis with reversed multiplication.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let mult = (0..n)
            .map(|i| (0..n).map(|j| self.mult[j][i].clone()).collect())
            .collect();
        Algebra {
            field: self.field,
            names: self.names.clone(),
            mult,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            labels: self.labels.clone(),
            radical: self.radical.clone(),
            generators: self.generators.clone(),
            quiver: None,
        }
    }

    /// The corner algebra `eAe` with its embedding into `A`.
    pub fn corner(&self, e: &[Scalar]) -> Result<(Algebra, Matrix)> {
        let subset = self.idempotent_subset(e)?;
        let span = self.sandwich(e, e);
        let basis = span.basis().to_vec();
        let m = basis.len();
        let names = basis.iter().map(|v| self.vector_name(v)).collect();
        let coords = |v: &[Scalar]| span.coordinates(v).expect("product stays in eAe");
        let mult = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| sparse(&coords(&self.mul(&basis[i], &basis[j]))))
                    .collect()
            })
            .collect();
        let idempotents = subset
            .iter()
            .map(|&k| Idempotent {
                coords: coords(&self.idempotents[k].coords),
                label: self.idempotents[k].label.clone(),
            })
            .collect();
        let mut rad = Span::new(self.field, m);
        for r in self.radical.columns() {
            rad.insert(&coords(&self.mul(&self.mul(e, &r), e)));
        }
        let emb = Matrix::from_columns(self.field, self.dim(), &basis);
        let c = Algebra::build(
            self.field,
            names,
            mult,
            coords(e),
            idempotents,
            Some(rad.basis_matrix()),
            None,
        )?;
        Ok((c, emb))
    }

    /// Two-sided ideal `AeA`.
    pub fn idempotent_ideal(&self, e: &[Scalar]) -> Span {
        let mut span = Span::new(self.field, self.dim());
        for i in 0..self.dim() {
            let left = self.mul(&self.basis_vector(i), e);
            if left.iter().all(Scalar::is_zero) {
                continue;
            }
            for j in 0..self.dim() {
                span.insert(&self.mul(&left, &self.basis_vector(j)));
            }
        }
        span
    }

    /// The quotient `A/AeA` with its projection matrix.
    pub fn quotient(&self, e: &[Scalar]) -> Result<(Algebra, Matrix)> {
        let subset = self.idempotent_subset(e)?;
        let ideal = self.idempotent_ideal(e);
        Ok(self.quotient_by_ideal(&ideal, &subset))
    }

    pub(crate) fn quotient_by_ideal(&self, ideal: &Span, drop: &[usize]) -> (Algebra, Matrix) {
        let keep = ideal.complement();
        let m = keep.len();
        let proj_vec = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let mut proj = Matrix::zeros(self.field, m, self.dim());
        for i in 0..self.dim() {
            for (r, x) in proj_vec(&self.basis_vector(i)).into_iter().enumerate() {
                proj.set(r, i, x);
            }
        }
        let names = keep.iter().map(|&k| self.names[k].clone()).collect();
        let mult = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        let mut v = self.zero();
                        for (k, c) in &self.mult[i][j] {
                            v[*k] = c.clone();
                        }
                        sparse(&proj_vec(&v))
                    })
                    .collect()
            })
            .collect();
        let idempotents: Vec<Idempotent> = (0..self.idempotents.len())
            .filter(|k| !drop.contains(k))
            .map(|k| Idempotent {
                coords: proj_vec(&self.idempotents[k].coords),
                label: self.idempotents[k].label.clone(),
            })
            .filter(|e| e.coords.iter().any(|x| !x.is_zero()))
            .collect();
        let mut rad = Span::new(self.field, m);
        for r in self.radical.columns() {
            rad.insert(&proj_vec(&r));
        }
        let q = Algebra::build(
            self.field,
            names,
            mult,
            proj_vec(&self.unit),
            idempotents,
            Some(rad.basis_matrix()),
            None,
        )
        .expect("quotient of a valid algebra by an idempotent ideal is valid");
        (q, proj)
    }

    /// Smallest subalgebra containing the generators and the designated
    /// idempotents; an empty list designates the distinguished family of `A`.
    pub fn subalgebra_closure(
        &self,
        gens: &[Vec<Scalar>],
        idempotents: &[(Vec<Scalar>, String)],
    ) -> Result<(Algebra, Matrix)> {
        let family: Vec<(Vec<Scalar>, String)> = if idempotents.is_empty() {
            self.idempotents
                .iter()
                .map(|e| (e.coords.clone(), e.label.clone()))
                .collect()
        } else {
            idempotents.to_vec()
        };
        let mut all: Vec<Vec<Scalar>> = gens.to_vec();
        all.extend(family.iter().map(|(e, _)| e.clone()));
        let span = self.closure(&all);
        if !span.contains(&self.unit) {
            return Err(Error::NotUnital);
        }
        for (e, l) in &family {
            if !span.contains(e) {
                return Err(Error::InvalidAlgebra(format!(
                    "idempotent labelled {l} is not in the closure"
                )));
            }
        }
        let basis = span.basis().to_vec();
        let m = basis.len();
        let coords = |v: &[Scalar]| span.coordinates(v).expect("closed under products");
        let names = basis.iter().map(|v| self.vector_name(v)).collect();
        let mult = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| sparse(&coords(&self.mul(&basis[i], &basis[j]))))
                    .collect()
            })
            .collect();
        let idem = family
            .iter()
            .map(|(e, l)| Idempotent {
                coords: coords(e),
                label: l.clone(),
            })
            .collect();
        let emb = Matrix::from_columns(self.field, self.dim(), &basis);
        let radical = if self.field.characteristic() == 0 || self.field.characteristic() > m as u64 {
            None
        } else {
            let mut rad = Span::new(self.field, self.dim());
            for r in self.radical.columns() {
                rad.insert(&r);
            }
            let inter = intersect(&span, &rad);
            let mut local = Span::new(self.field, m);
            for v in inter.basis() {
                local.insert(&coords(v));
            }
            Some(local.basis_matrix())
        };
        let b = Algebra::build(self.field, names, mult, coords(&self.unit), idem, radical, None)?;
        Ok((b, emb))
    }

    /// Tensor product over the common field; basis index `i * dim(o) + j`.
    pub fn tensor_product(&self, o: &Algebra) -> Result<Algebra> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(format!("{} and {}", self.field, o.field)));
        }
        let (n, m) = (self.dim(), o.dim());
        let names = self
            .names
            .iter()
            .flat_map(|a| o.names.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let mut mult = vec![vec![Vec::new(); n * m]; n * m];
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        let mut v: SparseVec = Vec::new();
                        for (p, c) in &self.mult[i][k] {
                            for (q, d) in &o.mult[j][l] {
                                v.push((p * m + q, c * d));
                            }
                        }
                        v.sort_by_key(|x| x.0);
                        mult[i * m + j][k * m + l] = v;
                    }
                }
            }
        }
        let kron = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
            x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
        };
        let mut idempotents = Vec::new();
        for ea in &self.idempotents {
            for eb in &o.idempotents {
                idempotents.push(Idempotent {
                    coords: kron(&ea.coords, &eb.coords),
                    label: format!("({},{})", ea.label, eb.label),
                });
            }
        }
        let mut rad = Span::new(self.field, n * m);
        for r in self.radical.columns() {
            for j in 0..m {
                rad.insert(&kron(&r, &o.basis_vector(j)));
            }
        }
        for r in o.radical.columns() {
            for i in 0..n {
                rad.insert(&kron(&self.basis_vector(i), &r));
            }
        }
        Algebra::build(
            self.field,
            names,
            mult,
            kron(&self.unit, &o.unit),
            idempotents,
            Some(rad.basis_matrix()),
            None,
        )
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field, label: &str) -> Algebra {
        Algebra::build(
            field,
            vec!["1".into()],
            vec![vec![vec![(0, field.one())]]],
            vec![field.one()],
            vec![Idempotent {
                coords: vec![field.one()],
                label: label.into(),
            }],
            Some(Matrix::zeros(field, 1, 0)),
            None,
        )
        .expect("ground field is a valid algebra")
    }

    /// Product of full matrix algebras `M_n(k)` with unit-matrix idempotents;
    /// block `b` of size `n` contributes labels `labels[b]` on every diagonal unit.
    pub fn semisimple(field: Field, blocks: &[(usize, &str)]) -> Algebra {
        let mut names = Vec::new();
        let mut index = Vec::new();
        for (b, &(n, l)) in blocks.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    names.push(if n == 1 {
                        format!("e{l}")
                    } else {
                        format!("E{l}_{}{}", r + 1, c + 1)
                    });
                    index.push((b, r, c));
                }
            }
        }
        let d = names.len();
        let pos = |b: usize, r: usize, c: usize| index.iter().position(|&x| x == (b, r, c)).expect("entry");
        let mut mult = vec![vec![Vec::new(); d]; d];
        for (i, &(b, r, c)) in index.iter().enumerate() {
            for (j, &(b2, r2, c2)) in index.iter().enumerate() {
                if b == b2 && c == r2 {
                    mult[i][j] = vec![(pos(b, r, c2), field.one())];
                }
            }
        }
        let mut unit = zero_vec(field, d);
        let mut idempotents = Vec::new();
        for (b, &(n, l)) in blocks.iter().enumerate() {
            for r in 0..n {
                unit[pos(b, r, r)] = field.one();
                idempotents.push(Idempotent {
                    coords: unit_vec(field, d, pos(b, r, r)),
                    label: l.to_string(),
                });
            }
        }
        Algebra::build(
            field,
            names,
            mult,
            unit,
            idempotents,
            Some(Matrix::zeros(field, d, 0)),
            None,
        )
        .expect("semisimple algebra is valid")
    }

    /// Readable name for a coordinate vector.
    pub fn vector_name(&self, v: &[Scalar]) -> String {
        let terms: Vec<(usize, &Scalar)> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.names[*i].clone()
                } else {
                    format!("({c}){}", self.names[*i])
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Looks up a basis element or idempotent by name.
    pub fn element_by_name(&self, name: &str) -> Result<Vec<Scalar>> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(self.basis_vector(i));
        }
        Err(Error::Parse(format!("unknown basis element {name:?}")))
    }

    /// Reduces a path, written as arrow names composed right to left.
    pub fn path_element(&self, arrows: &[String]) -> Result<Vec<Scalar>> {
        let q = self
            .quiver
            .as_ref()
            .ok_or_else(|| Error::Parse("algebra has no quiver presentation".into()))?;
        q.element(arrows, self.field)
    }
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect(a: &Span, b: &Span) -> Span {
    let n = a.ambient();
    let field = a.basis().first().or(b.basis().first()).map(|v| v[0].field());
    let mut out = Span::new(field.unwrap_or(Field::Q), n);
    let Some(field) = field else {
        return out;
    };
    let ma = Matrix::from_columns(field, n, a.basis());
    let mb = Matrix::from_columns(field, n, b.basis());
    let k = ma.hstack(&mb.scale(&field.int(-1))).kernel_basis();
    for c in k.columns() {
        out.insert(&ma.mul_vec(&c[..a.dim()]));
    }
    out
}

/// Quiver with relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Vec<(Scalar, Vec<String>)>>,
    pub max_path_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    target: usize,
    /// Arrow indices in written order: the first entry is applied last.
    arrows: Vec<usize>,
}

/// Path data kept for reducing arbitrary paths into the quotient basis.
#[derive(Clone, Debug)]
pub struct QuiverData {
    vertices: Vec<String>,
    arrows: Vec<(String, usize, usize)>,
    paths: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    ideal: Span,
    basis_paths: Vec<usize>,
    bound: usize,
}

impl QuiverData {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Arrows as (name, source, target).
    pub fn arrows(&self) -> Vec<(String, String, String)> {
        self.arrows
            .iter()
            .map(|(n, s, t)| (n.clone(), self.vertices[*s].clone(), self.vertices[*t].clone()))
            .collect()
    }

    fn column(&self, path: usize) -> usize {
        self.paths.len() - 1 - path
    }

    fn reduce_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.ideal.reduce(v);
        self.basis_paths.iter().map(|&p| r[self.column(p)].clone()).collect()
    }

    fn path_of(&self, arrows: &[String]) -> Result<Option<Path>> {
        let ids: Vec<usize> = arrows
            .iter()
            .map(|a| {
                self.arrows
                    .iter()
                    .position(|x| &x.0 == a)
                    .ok_or_else(|| Error::MalformedRelation(format!("unknown arrow {a:?}")))
            })
            .collect::<Result<_>>()?;
        if ids.is_empty() {
            return Err(Error::MalformedRelation("empty path".into()));
        }
        for w in ids.windows(2) {
            if self.arrows[w[0]].1 != self.arrows[w[1]].2 {
                return Err(Error::MalformedRelation(format!("path {arrows:?} is not composable")));
            }
        }
        let source = self.arrows[*ids.last().expect("nonempty")].1;
        let target = self.arrows[ids[0]].2;
        Ok(Some(Path {
            source,
            target,
            arrows: ids,
        }))
    }

    fn element(&self, arrows: &[String], field: Field) -> Result<Vec<Scalar>> {
        if arrows.len() == 1 {
            if let Some(v) = self
                .vertices
                .iter()
                .position(|x| *x == arrows[0] || format!("e{x}") == arrows[0])
            {
                if !self.arrows.iter().any(|a| a.0 == arrows[0]) {
                    let mut out = zero_vec(field, self.paths.len());
                    out[self.column(self.index[&(v, Vec::new())])] = field.one();
                    return Ok(self.reduce_vec(&out));
                }
            }
        }
        let p = self.path_of(arrows)?.expect("path");
        let mut out = zero_vec(field, self.paths.len());
        if p.arrows.len() <= self.bound {
            let i = self.index[&(p.source, p.arrows.clone())];
            out[self.column(i)] = field.one();
        }
        Ok(self.reduce_vec(&out))
    }
}

/// Compiles a bound quiver into structure constants.
pub fn compile_quiver(p: &QuiverPresentation, field: Field) -> Result<Algebra> {
    let nv = p.vertices.len();
    let vid = |l: &str| -> Result<usize> {
        p.vertices
            .iter()
            .position(|v| v == l)
            .ok_or_else(|| Error::MalformedRelation(format!("unknown vertex {l:?}")))
    };
    let mut arrows = Vec::new();
    for (name, s, t) in &p.arrows {
        if arrows.iter().any(|(n, _, _): &(String, usize, usize)| n == name) {
            return Err(Error::MalformedRelation(format!("duplicate arrow {name:?}")));
        }
        arrows.push((name.clone(), vid(s)?, vid(t)?));
    }
    let n_bound = p.max_path_length;
    if n_bound == 0 {
        return Err(Error::NotFiniteDimensionalWithinBound(
            "max_path_length must be positive".into(),
        ));
    }
    let mut paths: Vec<Path> = (0..nv)
        .map(|v| Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        })
        .collect();
    let mut layer: Vec<usize> = (0..nv).collect();
    for _ in 0..n_bound {
        let mut next = Vec::new();
        for &pi in &layer {
            for (ai, a) in arrows.iter().enumerate() {
                if a.1 == paths[pi].target {
                    let mut ar = vec![ai];
                    ar.extend(paths[pi].arrows.iter().cloned());
                    paths.push(Path {
                        source: paths[pi].source,
                        target: a.2,
                        arrows: ar,
                    });
                    next.push(paths.len() - 1);
                }
            }
        }
        layer = next;
    }
    let index: HashMap<(usize, Vec<usize>), usize> = paths
        .iter()
        .enumerate()
        .map(|(i, q)| ((q.source, q.arrows.clone()), i))
        .collect();
    let total = paths.len();
    let col = |i: usize| total - 1 - i;
    let mut data = QuiverData {
        vertices: p.vertices.clone(),
        arrows: arrows.clone(),
        paths: paths.clone(),
        index: index.clone(),
        ideal: Span::new(field, total),
        basis_paths: Vec::new(),
        bound: n_bound,
    };

    let concat = |x: &Path, y: &Path| -> Option<Path> {
        if x.source != y.target {
            return None;
        }
        let mut ar = x.arrows.clone();
        ar.extend(y.arrows.iter().cloned());
        Some(Path {
            source: y.source,
            target: x.target,
            arrows: ar,
        })
    };

    for rel in &p.relations {
        let mut terms: Vec<(Scalar, Path)> = Vec::new();
        for (c, names) in rel {
            if c.field() != field {
                return Err(Error::FieldMismatch(format!("coefficient {c} over {}", c.field())));
            }
            let path = data.path_of(names)?.expect("path");
            if path.arrows.len() < 2 {
                return Err(Error::MalformedRelation(format!(
                    "relation term {names:?} has length < 2"
                )));
            }
            terms.push((c.clone(), path));
        }
        let Some(first) = terms.first().map(|t| t.1.clone()) else {
            continue;
        };
        for (_, t) in &terms {
            if t.source != first.source || t.target != first.target {
                return Err(Error::MalformedRelation(
                    "paths in one relation must share source and target".into(),
                ));
            }
            if t.arrows.len() != first.arrows.len() {
                return Err(Error::MalformedRelation(
                    "paths in one relation must have equal length".into(),
                ));
            }
        }
        let len = first.arrows.len();
        if len > n_bound {
            continue;
        }
        for left in &paths {
            if left.source != first.target || left.arrows.len() + len > n_bound {
                continue;
            }
            for right in &paths {
                if right.target != first.source || left.arrows.len() + len + right.arrows.len() > n_bound {
                    continue;
                }
                let mut v = zero_vec(field, total);
                for (c, t) in &terms {
                    let full = concat(&concat(left, t).expect("composable"), right).expect("composable");
                    let i = index[&(full.source, full.arrows)];
                    v[col(i)] = &v[col(i)] + c;
                }
                data.ideal.insert(&v);
            }
        }
    }

    for (i, q) in paths.iter().enumerate() {
        if q.arrows.len() == n_bound && !data.ideal.contains(&unit_vec(field, total, col(i))) {
            let name: Vec<&str> = q.arrows.iter().map(|&a| arrows[a].0.as_str()).collect();
            return Err(Error::NotFiniteDimensionalWithinBound(format!(
                "path {} of length {n_bound} survives",
                name.join("")
            )));
        }
    }
    let pivots = data.ideal.pivots().to_vec();
    data.basis_paths = (0..total).filter(|&i| !pivots.contains(&col(i))).collect();
    let basis = data.basis_paths.clone();
    let dim = basis.len();
    let name_of = |q: &Path| -> String {
        if q.arrows.is_empty() {
            format!("e{}", p.vertices[q.source])
        } else {
            q.arrows
                .iter()
                .map(|&a| arrows[a].0.as_str())
                .collect::<Vec<_>>()
                .join("")
        }
    };
    let names: Vec<String> = basis.iter().map(|&i| name_of(&paths[i])).collect();
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for (a, &i) in basis.iter().enumerate() {
        for (b, &j) in basis.iter().enumerate() {
            let Some(prod) = concat(&paths[i], &paths[j]) else {
                continue;
            };
            if prod.arrows.len() > n_bound {
                continue;
            }
            let k = index[&(prod.source, prod.arrows)];
            mult[a][b] = sparse(&data.reduce_vec(&unit_vec(field, total, col(k))));
        }
    }
    let mut unit = zero_vec(field, dim);
    let mut idempotents = Vec::new();
    let mut rad_cols = Vec::new();
    for (a, &i) in basis.iter().enumerate() {
        if paths[i].arrows.is_empty() {
            unit[a] = field.one();
            idempotents.push(Idempotent {
                coords: unit_vec(field, dim, a),
                label: p.vertices[paths[i].source].clone(),
            });
        } else {
            rad_cols.push(unit_vec(field, dim, a));
        }
    }
    let radical = Matrix::from_columns(field, dim, &rad_cols);
    Algebra::build(field, names, mult, unit, idempotents, Some(radical), Some(data))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Q
    }

    pub(crate) fn pres(
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
                        .map(|(c, p)| (q().int(*c), p.iter().map(|s| s.to_string()).collect()))
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
            q(),
        )
        .unwrap()
    }

    #[test]
    fn compile_counts_paths() {
        let a = compile_quiver(&pres(&["1", "2"], &[("α", "1", "2")], &[], 2), q()).unwrap();
        assert_eq!(a.dim(), 3);
        let b = sl2();
        assert_eq!(b.basis_names(), ["e1", "e2", "α", "β", "βα"]);
    }

    #[test]
    fn diamond_has_dimension_nine() {
        let a = compile_quiver(
            &pres(
                &["1", "2", "3", "4"],
                &[("α", "1", "4"), ("γ", "1", "2"), ("β", "4", "3"), ("δ", "2", "3")],
                &[&[(1, &["β", "α"]), (-1, &["δ", "γ"])]],
                3,
            ),
            q(),
        )
        .unwrap();
        assert_eq!(a.dim(), 9);
    }

    #[test]
    fn compile_errors() {
        let loop_free = pres(&["1"], &[("x", "1", "1")], &[], 3);
        assert!(matches!(
            compile_quiver(&loop_free, q()),
            Err(Error::NotFiniteDimensionalWithinBound(_))
        ));
        let bad = pres(&["1", "2"], &[("α", "1", "2")], &[&[(1, &["α", "α"])]], 2);
        assert!(matches!(compile_quiver(&bad, q()), Err(Error::MalformedRelation(_))));
        let short = pres(&["1", "2"], &[("α", "1", "2")], &[&[(1, &["α"])]], 2);
        assert!(matches!(compile_quiver(&short, q()), Err(Error::MalformedRelation(_))));
    }

    #[test]
    fn truncated_polynomial_radical() {
        let a = compile_quiver(&pres(&["1"], &[("x", "1", "1")], &[&[(1, &["x", "x", "x"])]], 3), q()).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.radical().cols(), 2);
    }

    #[test]
    fn radical_agrees_with_trace_form() {
        let a = sl2();
        assert_eq!(a.radical().cols(), 3);
        let t = a.trace_form_radical().unwrap();
        let mut s1 = Span::new(q(), a.dim());
        let mut s2 = Span::new(q(), a.dim());
        for c in a.radical().columns() {
            s1.insert(&c);
        }
        for c in t.columns() {
            s2.insert(&c);
        }
        assert_eq!(s1.basis(), s2.basis());
    }

    #[test]
    fn opposite_is_involution() {
        let a = sl2();
        assert_eq!(a.opposite().opposite(), a);
        let h = compile_quiver(&pres(&["1", "2"], &[("α", "1", "2")], &[], 2), q()).unwrap();
        let o = h.opposite();
        // α * e1 = α in A, so e1 * α = α in the opposite
        assert_eq!(o.product(0, 2), h.product(2, 0));
        assert!(o.product(0, 2).iter().any(|(k, _)| *k == 2));
    }

    #[test]
    fn corner_and_quotient_of_sl2_block() {
        let a = sl2();
        let e1 = a.idempotents()[0].coords.clone();
        let (c, emb) = a.corner(&e1).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.basis_names(), ["e1", "βα"]);
        assert_eq!(emb.rows(), 5);
        assert_eq!(a.idempotent_ideal(&e1).dim(), 4);
        let (qa, _) = a.quotient(&e1).unwrap();
        assert_eq!(qa.dim(), 1);
        assert_eq!(qa.labels(), ["2"]);
        let (full, _) = a.corner(a.unit()).unwrap();
        assert_eq!(full.dim(), 5);
        let (same, _) = a.quotient(&a.zero()).unwrap();
        assert_eq!(same.dim(), 5);
    }

    #[test]
    fn idempotent_errors() {
        let a = sl2();
        let alpha = a.basis_vector(2);
        assert!(matches!(a.corner(&alpha), Err(Error::NotIdempotent(_))));
        let mut skew = a.idempotents()[0].coords.clone();
        skew[2] = q().one();
        assert!(matches!(a.corner(&skew), Err(Error::NotIdempotentSum(_))));
    }

    #[test]
    fn tensor_dimensions() {
        let a = sl2();
        let t = a.tensor_product(&a).unwrap();
        assert_eq!(t.dim(), 25);
        assert_eq!(t.labels().len(), 4);
        let g = a.tensor_product(&Algebra::ground(q(), "*")).unwrap();
        assert_eq!(g.dim(), a.dim());
        assert!(a.tensor_product(&Algebra::ground(Field::Fp(3), "*")).is_err());
    }

    #[test]
    fn semisimple_has_zero_radical() {
        let s = Algebra::semisimple(q(), &[(1, "a"), (1, "b")]);
        assert_eq!(s.trace_form_radical().unwrap().cols(), 0);
        let m2 = Algebra::semisimple(q(), &[(2, "x")]);
        assert_eq!(m2.dim(), 4);
        assert!(!m2.is_basic());
    }

    #[test]
    fn small_characteristic_radical_error() {
        let f2 = Field::Fp(2);
        let one = f2.one();
        let z = f2.zero();
        let r = Algebra::from_structure(
            f2,
            vec!["a".into(), "b".into()],
            vec![
                vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]],
                vec![vec![z.clone(), one.clone()], vec![one.clone(), z.clone()]],
            ],
            vec![one.clone(), z.clone()],
            vec![Idempotent {
                coords: vec![one.clone(), z.clone()],
                label: "1".into(),
            }],
        );
        assert_eq!(r.unwrap_err(), Error::RadicalUnsupportedCharacteristic(2));
    }

    #[test]
    fn closure_of_all_basis_is_everything() {
        let a = sl2();
        let gens: Vec<_> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
        let (b, _) = a.subalgebra_closure(&gens, &[]).unwrap();
        assert_eq!(b.dim(), a.dim());
        let only_alpha = vec![a.basis_vector(2)];
        assert_eq!(a.subalgebra_closure(&only_alpha, &[]).unwrap().0.dim(), 3);
        let e1 = (a.idempotents()[0].coords.clone(), "1".to_string());
        assert_eq!(a.subalgebra_closure(&only_alpha, &[e1]).unwrap_err(), Error::NotUnital);
    }
}
