//! Exact scalars and dense matrices.
//!
//! Every computation in the crate runs over either the rationals or a prime
//! field. Values of different characteristic never meet: the arithmetic
//! operators panic on a mismatch, and the parsers reject it up front.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Ground field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => Scalar::Fp {
                r: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }

    /// Builds a field, checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::Parse(format!("prime {p} too large")));
        }
        Ok(Field::Fp(p))
    }

    /// Maps a rational into this field.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Q => Ok(Scalar::Q(q.clone())),
            Field::Fp(p) => {
                let pb = BigInt::from(p);
                let num = residue(q.numer(), &pb);
                let den = residue(q.denom(), &pb);
                if den == 0 {
                    return Err(Error::Parse(format!("{q} has no image mod {p}")));
                }
                let inv = pow_mod(den, p - 2, p);
                Ok(Scalar::Fp {
                    r: (num as u128 * inv as u128 % p as u128) as u64,
                    p,
                })
            }
        }
    }

    /// Parses `"a"`, `"a/b"` or `"r mod p"` as an element of this field.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if let Some((r, p)) = s.split_once("mod") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
            if self != Field::Fp(p) {
                return Err(Error::FieldMismatch(format!("{s:?} is not an element of {self}")));
            }
            let r: BigInt = r
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue in {s:?}")))?;
            return self.from_rational(&BigRational::from_integer(r));
        }
        let q: BigRational = s.parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        self.from_rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

fn residue(n: &BigInt, p: &BigInt) -> u64 {
    let r = ((n % p) + p) % p;
    r.try_into().expect("residue fits in u64")
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// A field element: a reduced rational or a residue modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { r: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { r, .. } => *r == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { r, p } => Scalar::Fp {
                r: pow_mod(*r, p - 2, *p),
                p: *p,
            },
        })
    }

    /// Integer value, when the scalar is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Q(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.try_into().ok())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("characteristic mismatch: {} and {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) if p == q => Scalar::Fp {
                r: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mismatch(self, o),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) if p == q => Scalar::Fp {
                r: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mismatch(self, o),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) if p == q => Scalar::Fp {
                r: (*a as u128 * *b as u128 % *p as u128) as u64,
                p: *p,
            },
            _ => mismatch(self, o),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { r, p } => Scalar::Fp { r: (p - r) % p, p: *p },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Fp { r, p } => write!(f, "{r} mod {p}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        if let Some((_, p)) = s.split_once("mod") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
            return Field::prime(p)?.parse(s);
        }
        Field::Q.parse(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense row-major matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_rows_with_cols(field, rows, c).unwrap_or_else(|| panic!("ragged rows in {r}-row matrix"))
    }

    fn from_rows_with_cols(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Option<Matrix> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return None;
            }
            for x in &row {
                assert_eq!(x.field(), field, "entry over {} in matrix over {field}", x.field());
            }
            data.extend(row);
        }
        Some(Matrix {
            field,
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * o`, skipping zero coefficients.
    pub fn add_scaled(&mut self, c: &Scalar, o: &Matrix) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a = &*a + &(c * b);
            }
        }
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows, "hstack row mismatch");
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn kronecker(&self, o: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let b = m.get(r, j);
                    if b.is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &(&f * b);
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                k.set(p, col, -r.get(row, f));
            }
        }
        k
    }

    /// Some `X` with `self * X = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve: {} rows against {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        debug_assert_eq!(&self.mul(&x), b);
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows)).expect("square")?;
        Some(x)
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero");
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let x = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, x);
                }
            }
        }
        det
    }

    /// Indices of a maximal independent subset of columns, leftmost first.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Columns forming a basis of the column space.
    pub fn column_space(&self) -> Matrix {
        self.select_columns(&self.independent_columns())
    }

    /// Left inverse of a matrix with independent columns.
    pub fn left_inverse(&self) -> Matrix {
        let t = self.transpose();
        let rows = t.independent_columns();
        assert_eq!(rows.len(), self.cols, "left_inverse needs full column rank");
        let square = self.select_rows(&rows);
        let inv = square.inverse().expect("independent rows");
        let mut l = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.cols {
            for (k, &r) in rows.iter().enumerate() {
                l.set(i, r, inv.get(i, k).clone());
            }
        }
        l
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// Incrementally maintained subspace of `field^n`, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    field: Field,
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(field: Field, n: usize) -> Span {
        Span {
            field,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Echelon basis vectors.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.n, &self.rows)
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Columns form a basis of the vectors orthogonal to every row of the span,
    /// i.e. the null space of the matrix whose rows span it.
    pub fn null_space(&self) -> Matrix {
        let free = self.complement();
        let mut k = Matrix::zeros(self.field, self.n, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, self.field.one());
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    k.set(p, col, -&row[f]);
                }
            }
        }
        k
    }

    /// Standard basis indices completing the span to the whole space.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|i| !self.pivots.contains(i)).collect()
    }
}

/// `v + c * w` on coordinate vectors.
pub fn axpy(v: &mut [Scalar], c: &Scalar, w: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in v.iter_mut().zip(w) {
        if !y.is_zero() {
            *x = &*x + &(c * y);
        }
    }
}

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(Field::Q, 3).rank(), 3);
        assert_eq!(Matrix::from_i64(Field::Q, &[&[1, 2], &[2, 4]]).rank(), 1);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(Matrix::from_i64(f2, &[&[1, 1], &[1, 0]]).rank(), 2);
        assert_eq!(Matrix::from_i64(f2, &[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Field::Q, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(Field::Q, 2, 3).kernel_basis().cols(), 3);
        let m = Matrix::from_i64(Field::Q, &[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // proportional to (2, -1)
        assert_eq!(k.get(0, 0), &(k.get(1, 0) * &Field::Q.int(-2)));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(Field::Q, &[&[3, 1], &[4, 1]]);
        let i = Matrix::identity(Field::Q, 2);
        assert_eq!(i.solve(&b).unwrap(), Some(b.clone()));
        let m = Matrix::from_i64(Field::Q, &[&[1], &[1]]);
        let rhs = Matrix::from_i64(Field::Q, &[&[1], &[2]]);
        assert_eq!(m.solve(&rhs).unwrap(), None);
        let two = Matrix::from_i64(Field::Q, &[&[2]]);
        let x = two.solve(&Matrix::from_i64(Field::Q, &[&[1]])).unwrap().unwrap();
        assert_eq!(x.get(0, 0).to_string(), "1/2");
        assert!(m.solve(&Matrix::zeros(Field::Q, 3, 1)).is_err());
    }

    #[test]
    fn scalar_text() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("1/2").unwrap().to_string(), "3 mod 5");
        assert_eq!("7 mod 5".parse::<Scalar>().unwrap(), f5.int(2));
        assert_eq!("-6/4".parse::<Scalar>().unwrap().to_string(), "-3/2");
        assert!(Field::prime(6).is_err());
        assert!(Field::Q.parse("1 mod 3").is_err());
    }

    #[test]
    #[should_panic(expected = "characteristic mismatch")]
    fn mixing_fields_panics() {
        let _ = &Field::Q.one() + &Field::Fp(3).one();
    }

    #[test]
    fn span_tracks_pivots() {
        let f = Field::Q;
        let mut s = Span::new(f, 3);
        assert!(s.insert(&[f.int(1), f.int(1), f.int(0)]));
        assert!(s.insert(&[f.int(0), f.int(1), f.int(1)]));
        assert!(!s.insert(&[f.int(1), f.int(2), f.int(1)]));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.complement().len(), 1);
        let v = [f.int(2), f.int(3), f.int(1)];
        let c = s.coordinates(&v).unwrap();
        let mut back = zero_vec(f, 3);
        for (ci, row) in c.iter().zip(s.basis()) {
            axpy(&mut back, ci, row);
        }
        assert_eq!(back, v);
    }

    #[test]
    fn null_space_matches_kernel() {
        let f = Field::Q;
        let m = Matrix::from_i64(f, &[&[1, 2, 3], &[2, 4, 7]]);
        let mut s = Span::new(f, 3);
        for r in m.to_rows() {
            s.insert(&r);
        }
        let k = s.null_space();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(Field::Q, &[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant(), Field::Q.int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(Field::Q, 2));
        let l = Matrix::from_i64(Field::Q, &[&[1, 0], &[0, 0], &[1, 1]]).left_inverse();
        assert_eq!(
            l.mul(&Matrix::from_i64(Field::Q, &[&[1, 0], &[0, 0], &[1, 1]])),
            Matrix::identity(Field::Q, 2)
        );
    }
}
