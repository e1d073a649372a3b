//! Arithmetic in small finite fields `F_q` and dense linear algebra over them.
//!
//! An element of `F_q`, `q = p^n`, is a coefficient vector `(c_0, .., c_{n-1})`
//! over `Z/p` with respect to the power basis of `F_p[x]/(m(x))`. The vector is
//! packed into a single byte as `c_0 + c_1 p + .. + c_{n-1} p^{n-1}`, so the
//! zero element is `0` and the unit is `1` for every `q`. Addition and
//! multiplication tables are derived once from the polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Packed field element, see the module documentation.
pub type FieldElem = u8;

const MAX_Q: u64 = 256;

struct Tables {
    p: u32,
    n: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A finite field `F_q` with a fixed modulus. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (p={}, n={}, modulus={:?})", self.q(), self.p(), self.n(), self.modulus())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}
impl Eq for Field {}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        return Some((q as u32, 1));
    }
    let (mut r, mut n) = (q, 0);
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p as u32, n))
}

// Polynomials over F_p as coefficient vectors, lowest degree first.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("unit mod p")
}

fn monic_of_degree(d: u32, p: u32, index: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(d as usize + 1);
    let mut idx = index;
    for _ in 0..d {
        c.push((idx % p as u64) as u32);
        idx /= p as u64;
    }
    c.push(1);
    c
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = (m.len() - 1) as u32;
    for d in 1..=n / 2 {
        for idx in 0..(p as u64).pow(d) {
            let g = monic_of_degree(d, p, idx);
            if poly_rem(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `n` over `F_p`, ordered by the packed
/// integer of its lower coefficients.
fn canonical_modulus(p: u32, n: u32) -> Vec<u32> {
    (0..(p as u64).pow(n))
        .map(|idx| monic_of_degree(n, p, idx))
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Builds `F_q`. Fails unless `q` is a prime power with `q <= 256`.
pub fn make_field(q: u64) -> Result<Field> {
    if q > MAX_Q {
        return Err(Error::NotPrimePower(q));
    }
    let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let modulus = if n == 1 { vec![0, 1] } else { canonical_modulus(p, n) };
    let q = q as usize;
    let unpack = |e: usize| -> Vec<u32> {
        let mut c = vec![0u32; n as usize];
        let mut e = e;
        for ci in c.iter_mut() {
            *ci = (e % p as usize) as u32;
            e /= p as usize;
        }
        c
    };
    let pack = |c: &[u32]| -> u8 {
        c.iter().rev().fold(0usize, |acc, &ci| acc * p as usize + ci as usize) as u8
    };
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let ca = unpack(a);
        for b in 0..q {
            let cb = unpack(b);
            let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = pack(&s);
            let mut prod = vec![0u32; 2 * n as usize];
            for (i, x) in ca.iter().enumerate() {
                for (j, y) in cb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = if n == 1 { prod } else { poly_rem(&prod, &modulus, p) };
            r.resize(n as usize, 0);
            mul[a * q + b] = pack(&r);
        }
    }
    let neg: Vec<u8> = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
    let mut inv = vec![0u8; q];
    for a in 1..q {
        inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("field has no zero divisors") as u8;
    }
    Ok(Field(Arc::new(Tables { p, n, q, modulus, add, mul, neg, inv })))
}

impl Field {
    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn n(&self) -> u32 {
        self.0.n
    }
    pub fn q(&self) -> usize {
        self.0.q
    }
    /// Coefficients of the modulus, lowest degree first (leading 1 included).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    /// Coefficient vector of a packed element.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut e = a as u32;
        (0..self.0.n)
            .map(|_| {
                let c = e % self.0.p;
                e /= self.0.p;
                c
            })
            .collect()
    }
    pub fn from_coeffs(&self, c: &[u32]) -> FieldElem {
        c.iter().rev().fold(0u32, |acc, &ci| acc * self.0.p + ci % self.0.p) as u8
    }
    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, k: i64) -> FieldElem {
        k.rem_euclid(self.0.p as i64) as u8
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.0.add[a as usize * self.0.q + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.0.mul[a as usize * self.0.q + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.0.neg[a as usize]
    }
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.q()));
        }
        Ok(self.0.inv[a as usize])
    }
    #[inline]
    fn inv_nz(&self, a: FieldElem) -> FieldElem {
        debug_assert!(a != 0);
        self.0.inv[a as usize]
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(|e| e as u8)
    }

    /// `y += c * x`
    #[inline]
    pub fn axpy(&self, y: &mut [FieldElem], c: FieldElem, x: &[FieldElem]) {
        if c == 0 {
            return;
        }
        let q = self.0.q;
        let row = &self.0.mul[c as usize * q..(c as usize + 1) * q];
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = self.0.add[*yi as usize * q + row[xi as usize] as usize];
        }
    }

    pub fn scale_vec(&self, c: FieldElem, x: &mut [FieldElem]) {
        for xi in x.iter_mut() {
            *xi = self.mul(c, *xi);
        }
    }
}

/// Iterator over all vectors of `F_q^len`, in little-endian counting order.
pub struct VectorIter {
    q: u16,
    cur: Vec<FieldElem>,
    done: bool,
}

impl VectorIter {
    pub fn new(field: &Field, len: usize) -> Self {
        VectorIter { q: field.q() as u16, cur: vec![0; len], done: false }
    }
}

impl Iterator for VectorIter {
    type Item = Vec<FieldElem>;
    fn next(&mut self) -> Option<Vec<FieldElem>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = 0;
        loop {
            if i == self.cur.len() {
                self.done = true;
                break;
            }
            if (self.cur[i] as u16) + 1 < self.q {
                self.cur[i] += 1;
                break;
            }
            self.cur[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Dense row-major matrix over a field. `0 x m` and `m x 0` are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from rows of small integers, reduced into the prime field.
    pub fn from_rows(field: &Field, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.from_int(x)).collect();
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Column vector.
    pub fn column(v: &[FieldElem]) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[FieldElem] {
        &self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a != 0 {
                    f.axpy(orow, a, &other.data[k * other.cols..(k + 1) * other.cols]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(0u8, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &Field, c: FieldElem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(c, a)).collect() }
    }

    pub fn neg(&self, f: &Field) -> Matrix {
        self.scale(f, f.neg(1))
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, f: &Field, c: FieldElem, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        f.axpy(&mut self.data, c, &other.data);
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    /// Writes `block` at offset `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// Scatters `block` into the rows/columns named by the index lists.
    pub fn put_indexed(&mut self, rows: &[usize], cols: &[usize], block: &Matrix) {
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                self.set(r, c, block.get(i, j));
            }
        }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.put(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn hstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            m.put(0, c0, b);
            c0 += b.cols;
        }
        Ok(m)
    }

    pub fn vstack(blocks: &[&Matrix]) -> Result<Matrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(r) = (pr..m.rows).find(|&r| m.get(r, c) != 0) else { continue };
            if r != pr {
                for k in 0..m.cols {
                    m.data.swap(r * m.cols + k, pr * m.cols + k);
                }
            }
            let inv = f.inv_nz(m.get(pr, c));
            let cols = m.cols;
            f.scale_vec(inv, &mut m.data[pr * cols..(pr + 1) * cols]);
            let prow = m.row(pr).to_vec();
            for r2 in 0..m.rows {
                if r2 != pr {
                    let c2 = m.get(r2, c);
                    if c2 != 0 {
                        f.axpy(&mut m.data[r2 * cols..(r2 + 1) * cols], f.neg(c2), &prow);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Matrix whose columns form a basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self, f: &Field) -> Matrix {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, f: &Field, b: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("rhs of length {} for {} rows", b.len(), self.rows)));
        }
        let aug = Matrix::hstack(&[self, &Matrix::column(b)])?;
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u8; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = Matrix::hstack(&[self, &Matrix::identity(n)])?;
        let (r, pivots) = aug.rref(f);
        if (0..n).any(|i| pivots.get(i) != Some(&i)) {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.select(&rows, &cols))
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    /// Nilpotent iff `self^n = 0`.
    pub fn is_nilpotent(&self, f: &Field) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut p = self.clone();
        for _ in 1..self.rows.max(1) {
            if p.is_zero() {
                return true;
            }
            p = p.mul(f, self);
        }
        p.is_zero()
    }
}

/// A subspace of `F_q^n` held as a fully reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(n: usize) -> Self {
        Subspace { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<'a>(f: &Field, n: usize, vecs: impl IntoIterator<Item = &'a [FieldElem]>) -> Self {
        let mut s = Subspace::new(n);
        for v in vecs {
            s.insert(f, v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v + self`: zero at every pivot column.
    pub fn reduce(&self, f: &Field, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut r = v.to_vec();
        self.reduce_in_place(f, &mut r);
        r
    }

    pub fn reduce_in_place(&self, f: &Field, r: &mut [FieldElem]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                f.axpy(r, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, f: &Field, v: &[FieldElem]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Field, v: &[FieldElem]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut r = self.reduce(f, v);
        let Some(pc) = r.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv_nz(r[pc]);
        f.scale_vec(inv, &mut r);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                f.axpy(row, f.neg(c), &r);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, r);
        true
    }
}

/// The quotient `Z / H` of two nested subspaces, with canonical coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    comp: Subspace,
}

impl Quotient {
    /// `h` must lie inside the span of `z`.
    pub fn new<'a>(
        f: &Field,
        n: usize,
        z: impl IntoIterator<Item = &'a [FieldElem]>,
        h: impl IntoIterator<Item = &'a [FieldElem]>,
    ) -> Self {
        let sub = Subspace::spanned_by(f, n, h);
        let mut comp = Subspace::new(n);
        for v in z {
            let r = sub.reduce(f, v);
            comp.insert(f, &r);
        }
        Quotient { sub, comp }
    }

    pub fn dim(&self) -> usize {
        self.comp.dim()
    }
    pub fn ambient_dim(&self) -> usize {
        self.sub.n
    }
    pub fn killed(&self) -> &Subspace {
        &self.sub
    }

    /// Coordinates of the class of `v`; `None` if `v` is not in `Z`.
    pub fn coords(&self, f: &Field, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let mut r = self.sub.reduce(f, v);
        let a: Vec<FieldElem> = self.comp.pivots.iter().map(|&p| r[p]).collect();
        for (row, &c) in self.comp.rows.iter().zip(&a) {
            if c != 0 {
                f.axpy(&mut r, f.neg(c), row);
            }
        }
        r.iter().all(|&x| x == 0).then_some(a)
    }

    /// A representative of the class with the given coordinates.
    pub fn lift(&self, f: &Field, a: &[FieldElem]) -> Vec<FieldElem> {
        let mut v = vec![0u8; self.sub.n];
        for (row, &c) in self.comp.rows.iter().zip(a) {
            f.axpy(&mut v, c, row);
        }
        v
    }

    pub fn basis_reps(&self) -> &[Vec<FieldElem>] {
        &self.comp.rows
    }
}

/// `q^k` as an exact integer.
pub fn qpow(q: usize, k: usize) -> u128 {
    (q as u128).pow(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_shapes() {
        let f3 = make_field(3).unwrap();
        assert_eq!((f3.p(), f3.n()), (3, 1));
        let f4 = make_field(4).unwrap();
        assert_eq!((f4.p(), f4.n()), (2, 2));
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert!(matches!(make_field(6), Err(Error::NotPrimePower(6))));
        assert!(make_field(1).is_err());
        assert!(make_field(0).is_err());
        assert_eq!(make_field(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(8).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn quadratic_modulus_over_f2_is_the_only_irreducible() {
        // exhaustive: x^2, x^2+1, x^2+x have roots; x^2+x+1 has none
        let irreducible: Vec<u64> = (0..4)
            .filter(|&idx| {
                let m = monic_of_degree(2, 2, idx);
                (0..2u32).all(|x| !(m[0] + m[1] * x + m[2] * x * x).is_multiple_of(2))
            })
            .collect();
        assert_eq!(irreducible, vec![3]);
    }

    #[test]
    fn small_products() {
        let f4 = make_field(4).unwrap();
        let x = f4.from_coeffs(&[0, 1]);
        assert_eq!(f4.coeffs(f4.mul(x, x)), vec![1, 1]);
        let f5 = make_field(5).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert!(f5.inv(0).is_err());
    }

    #[test]
    fn unit_group_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25] {
            let f = make_field(q).unwrap();
            let units = f.elements().filter(|&a| f.inv(a).map(|b| f.mul(a, b) == 1).unwrap_or(false)).count();
            assert_eq!(units as u64, q - 1);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn distributivity_exhaustive_f9() {
        let f = make_field(9).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn linear_solve_examples() {
        let f3 = make_field(3).unwrap();
        let i2 = Matrix::identity(2);
        assert_eq!(i2.rank(&f3), 2);
        assert_eq!(i2.kernel_basis(&f3).cols(), 0);
        let z = Matrix::zeros(2, 3);
        assert_eq!(z.rank(&f3), 0);
        assert_eq!(z.kernel_basis(&f3).cols(), 3);

        let f5 = make_field(5).unwrap();
        let a = Matrix::from_rows(&f5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(a.rank(&f5), 1);
        let k = a.kernel_basis(&f5);
        assert_eq!(k.cols(), 1);
        // kernel spanned by (3,1)
        let kc = k.col(0);
        let s = f5.inv(kc[1]).unwrap();
        assert_eq!(vec![f5.mul(kc[0], s), 1], vec![3, 1]);
        assert!(a.mul_vec(&f5, &[3, 1]).iter().all(|&x| x == 0));
        assert!(matches!(a.inverse(&f5), Err(Error::Singular)));
    }

    #[test]
    fn empty_shapes() {
        let f = make_field(3).unwrap();
        let a = Matrix::zeros(0, 3);
        let b = Matrix::zeros(3, 0);
        assert_eq!(a.mul(&f, &b).rows(), 0);
        assert_eq!(b.mul(&f, &a).rows(), 3);
        assert_eq!(a.kernel_basis(&f).cols(), 3);
        assert_eq!(Matrix::zeros(0, 0).inverse(&f).unwrap().rows(), 0);
    }

    #[test]
    fn quotient_coordinates() {
        let f = make_field(3).unwrap();
        let z: Vec<Vec<u8>> = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let h: Vec<Vec<u8>> = vec![vec![1, 1, 0]];
        let qt = Quotient::new(&f, 3, z.iter().map(|v| v.as_slice()), h.iter().map(|v| v.as_slice()));
        assert_eq!(qt.dim(), 1);
        let a = qt.coords(&f, &[1, 0, 0]).unwrap();
        let b = qt.coords(&f, &[0, 2, 0]).unwrap();
        assert_eq!(a, b);
        assert!(qt.coords(&f, &[0, 0, 1]).is_none());
        assert_eq!(qt.coords(&f, &qt.lift(&f, &a)).unwrap(), a);
    }

    fn matrix_strategy(q: u8) -> impl Strategy<Value = (usize, usize, Vec<u8>)> {
        (0usize..5, 0usize..5).prop_flat_map(move |(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(0..q, r * c))
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose((r, c, data) in matrix_strategy(4)) {
            let f = make_field(4).unwrap();
            let m = Matrix::from_vec(r, c, data).unwrap();
            prop_assert_eq!(m.rank(&f), m.transpose().rank(&f));
            let k = m.kernel_basis(&f);
            prop_assert_eq!(m.rank(&f) + k.cols(), c);
            prop_assert!(m.mul(&f, &k).is_zero());
        }

        #[test]
        fn solve_reproduces_rhs((r, c, data) in matrix_strategy(5), seed in proptest::collection::vec(0u8..5, 4)) {
            let f = make_field(5).unwrap();
            let m = Matrix::from_vec(r, c, data).unwrap();
            let x: Vec<u8> = (0..c).map(|i| seed[i % seed.len()]).collect();
            let b = m.mul_vec(&f, &x);
            let y = m.solve(&f, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&f, &y), b);
        }

        #[test]
        fn inverse_roundtrip(data in proptest::collection::vec(0u8..3, 9)) {
            let f = make_field(3).unwrap();
            let m = Matrix::from_vec(3, 3, data).unwrap();
            if let Ok(inv) = m.inverse(&f) {
                prop_assert_eq!(m.mul(&f, &inv), Matrix::identity(3));
            } else {
                prop_assert!(m.rank(&f) < 3);
            }
        }
    }
}
