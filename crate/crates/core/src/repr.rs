//! Representations of a quiver over `F_q` and the linear algebra of their
//! morphism spaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{qpow, Field, FieldElem, Matrix, VectorIter};
use crate::quiver::Quiver;

/// Per-vertex linear maps; the raw data of a morphism.
pub type VertexMaps = Vec<Matrix>;

#[derive(Clone, Debug)]
pub struct Representation {
    field: Field,
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dims == other.dims && self.maps == other.maps
    }
}
impl Eq for Representation {}

#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Representation,
    pub target: Representation,
    pub maps: VertexMaps,
}

impl Representation {
    pub fn new(field: &Field, quiver: &Arc<Quiver>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.n_vertices() || maps.len() != quiver.arrows().len() {
            return Err(Error::Dimension("representation does not match the quiver".into()));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.tgt] || m.cols() != dims[a.src] {
                return Err(Error::Dimension(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.tgt],
                    dims[a.src],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { field: field.clone(), quiver: quiver.clone(), dims, maps })
    }

    pub fn zero(field: &Field, quiver: &Arc<Quiver>) -> Self {
        let dims = vec![0; quiver.n_vertices()];
        Self::with_zero_maps(field, quiver, dims)
    }

    /// Given dimensions, all arrow maps zero.
    pub fn with_zero_maps(field: &Field, quiver: &Arc<Quiver>, dims: Vec<usize>) -> Self {
        let maps = quiver.arrows().iter().map(|a| Matrix::zeros(dims[a.tgt], dims[a.src])).collect();
        Representation { field: field.clone(), quiver: quiver.clone(), dims, maps }
    }

    pub fn simple(field: &Field, quiver: &Arc<Quiver>, v: usize) -> Self {
        let mut dims = vec![0; quiver.n_vertices()];
        dims[v] = 1;
        Self::with_zero_maps(field, quiver, dims)
    }

    /// Indecomposable projective at `i`: basis of `P(i)_v` is the set of paths `i ~> v`.
    pub fn projective(field: &Field, quiver: &Arc<Quiver>, i: usize) -> Self {
        let paths = quiver.paths_from(i);
        let n = quiver.n_vertices();
        let mut local = vec![Vec::new(); n];
        let mut dims = vec![0; n];
        let mut pos = Vec::with_capacity(paths.len());
        for p in &paths {
            pos.push(dims[p.end]);
            local[p.end].push(p.arrows.clone());
            dims[p.end] += 1;
        }
        let mut maps: Vec<Matrix> =
            quiver.arrows().iter().map(|a| Matrix::zeros(dims[a.tgt], dims[a.src])).collect();
        for (pi, p) in paths.iter().enumerate() {
            for (ai, a) in quiver.arrows().iter().enumerate() {
                if a.src != p.end {
                    continue;
                }
                let mut ext = p.arrows.clone();
                ext.push(ai);
                let row = local[a.tgt].iter().position(|x| *x == ext).expect("extended path is listed");
                maps[ai].set(row, pos[pi], 1);
            }
        }
        Representation { field: field.clone(), quiver: quiver.clone(), dims, maps }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dims_i64(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    fn same_field(&self, other: &Representation) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.q(), other.field.q()));
        }
        Ok(())
    }

    /// Matrix of `phi |-> (phi_t M_a - N_a phi_s)_a` on the vertex-entry coordinates.
    fn intertwiner_system(&self, n: &Representation) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut offsets = Vec::with_capacity(self.dims.len());
        let mut total = 0;
        for v in 0..self.dims.len() {
            offsets.push(total);
            total += n.dims[v] * self.dims[v];
        }
        let eq_rows: usize = self.quiver.arrows().iter().map(|a| n.dims[a.tgt] * self.dims[a.src]).sum();
        let mut sys = Matrix::zeros(eq_rows, total);
        let mut row0 = 0;
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            let (s, t) = (a.src, a.tgt);
            let (ma, na) = (&self.maps[ai], &n.maps[ai]);
            // entry (r, c) of phi_t M_a - N_a phi_s, with r < n_t, c < m_s
            for r in 0..n.dims[t] {
                for c in 0..self.dims[s] {
                    let row = row0 + r * self.dims[s] + c;
                    for k in 0..self.dims[t] {
                        let coef = ma.get(k, c);
                        if coef != 0 {
                            let col = offsets[t] + r * self.dims[t] + k;
                            sys.set(row, col, f.add(sys.get(row, col), coef));
                        }
                    }
                    for k in 0..n.dims[s] {
                        let coef = na.get(r, k);
                        if coef != 0 {
                            let col = offsets[s] + k * self.dims[s] + c;
                            sys.set(row, col, f.sub(sys.get(row, col), coef));
                        }
                    }
                }
            }
            row0 += n.dims[t] * self.dims[s];
        }
        (sys, offsets)
    }

    fn unflatten(&self, n: &Representation, offsets: &[usize], x: &[FieldElem]) -> VertexMaps {
        (0..self.dims.len())
            .map(|v| {
                let len = n.dims[v] * self.dims[v];
                Matrix::from_vec(n.dims[v], self.dims[v], x[offsets[v]..offsets[v] + len].to_vec())
                    .expect("slice has the right length")
            })
            .collect()
    }

    /// Basis of `Hom(self, n)`.
    pub fn hom_basis(&self, n: &Representation) -> Result<Vec<VertexMaps>> {
        self.same_field(n)?;
        let (sys, offsets) = self.intertwiner_system(n);
        let k = sys.kernel_basis(&self.field);
        Ok((0..k.cols()).map(|j| self.unflatten(n, &offsets, &k.col(j))).collect())
    }

    pub fn hom_dim(&self, n: &Representation) -> Result<usize> {
        self.same_field(n)?;
        let (sys, _) = self.intertwiner_system(n);
        Ok(sys.cols() - sys.rank(&self.field))
    }

    /// `dim Ext^1(self, n)` as the cokernel dimension of the coboundary map.
    pub fn ext_dim(&self, n: &Representation) -> Result<usize> {
        self.same_field(n)?;
        let (sys, _) = self.intertwiner_system(n);
        Ok(sys.rows() - sys.rank(&self.field))
    }

    /// `(<dim self, dim n>, dim Ext^1(self, n))`
    pub fn euler_and_ext(&self, n: &Representation) -> Result<(i64, usize)> {
        let e = self.quiver.euler_form(&self.dims_i64(), &n.dims_i64());
        let hom = self.hom_dim(n)? as i64;
        let ext = hom - e;
        if ext < 0 {
            return Err(Error::Inconsistency(format!("negative Ext dimension {ext}")));
        }
        Ok((e, ext as usize))
    }

    pub fn is_morphism(&self, n: &Representation, maps: &[Matrix]) -> bool {
        let f = &self.field;
        maps.len() == self.dims.len()
            && maps.iter().enumerate().all(|(v, m)| m.rows() == n.dims[v] && m.cols() == self.dims[v])
            && self.quiver.arrows().iter().enumerate().all(|(ai, a)| {
                maps[a.tgt].mul(f, &self.maps[ai]) == n.maps[ai].mul(f, &maps[a.src])
            })
    }

    pub fn identity(&self) -> VertexMaps {
        self.dims.iter().map(|&d| Matrix::identity(d)).collect()
    }

    pub fn zero_map(&self, n: &Representation) -> VertexMaps {
        self.dims.iter().zip(&n.dims).map(|(&s, &t)| Matrix::zeros(t, s)).collect()
    }

    /// Restriction to a subrepresentation whose vertex spaces are spanned by the
    /// (independent) columns of `bases`.
    pub fn restrict(&self, bases: &[Matrix]) -> Result<Representation> {
        let f = &self.field;
        let linv: Vec<Matrix> = bases.iter().map(|b| left_inverse(f, b)).collect::<Result<_>>()?;
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            let img = self.maps[ai].mul(f, &bases[a.src]);
            let m = linv[a.tgt].mul(f, &img);
            if bases[a.tgt].mul(f, &m) != img {
                return Err(Error::Inconsistency("subspace is not a subrepresentation".into()));
            }
            maps.push(m);
        }
        Representation::new(f, &self.quiver, dims, maps)
    }

    /// Quotient by the subrepresentation spanned by `bases`, with the projection.
    pub fn quotient(&self, bases: &[Matrix]) -> Result<(Representation, VertexMaps)> {
        let f = &self.field;
        let mut proj = Vec::with_capacity(bases.len());
        let mut sect = Vec::with_capacity(bases.len());
        for b in bases {
            let (p, s) = complement_projection(f, b)?;
            proj.push(p);
            sect.push(s);
        }
        let dims: Vec<usize> = proj.iter().map(|p| p.rows()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| proj[a.tgt].mul(f, &self.maps[ai]).mul(f, &sect[a.src]))
            .collect();
        Ok((Representation::new(f, &self.quiver, dims, maps)?, proj))
    }

    /// `V / U` for subrepresentations `U <= V` of `self`, both given by column bases.
    pub fn subquotient(&self, v_bases: &[Matrix], u_bases: &[Matrix]) -> Result<Representation> {
        let f = &self.field;
        let sub = self.restrict(v_bases)?;
        let mut u_in_v = Vec::with_capacity(u_bases.len());
        for (vb, ub) in v_bases.iter().zip(u_bases) {
            let li = left_inverse(f, vb)?;
            let c = li.mul(f, ub);
            if vb.mul(f, &c) != *ub {
                return Err(Error::Inconsistency("U is not contained in V".into()));
            }
            u_in_v.push(c);
        }
        Ok(sub.quotient(&u_in_v)?.0)
    }

    /// `Aut` test: every vertex map invertible.
    pub fn is_iso_map(maps: &[Matrix], field: &Field) -> bool {
        maps.iter().all(|m| m.is_invertible(field))
    }

    pub fn is_nilpotent_map(maps: &[Matrix], field: &Field) -> bool {
        maps.iter().all(|m| m.is_nilpotent(field))
    }

    /// Iterates over all `F_q`-linear combinations of `basis`.
    pub fn combinations<'a>(&'a self, basis: &'a [VertexMaps], template: &'a VertexMaps) -> impl Iterator<Item = VertexMaps> + 'a {
        VectorIter::new(&self.field, basis.len()).map(move |c| combine(&self.field, basis, &c, template))
    }

    /// Indecomposability by the local-ring test: every endomorphism is either
    /// nilpotent or invertible. Returns a witness that is neither, if any.
    pub fn non_local_witness(&self, budget: u128) -> Result<Option<VertexMaps>> {
        let f = &self.field;
        let basis = self.hom_basis(self)?;
        if basis.len() <= 1 {
            return Ok(None);
        }
        if qpow(f.q(), basis.len()) > budget {
            return Err(Error::BudgetExceeded(format!(
                "End has dimension {} over F_{}; {} elements exceed the enumeration budget {budget}",
                basis.len(),
                f.q(),
                qpow(f.q(), basis.len())
            )));
        }
        // basis elements first: idempotent witnesses are usually among them
        for b in &basis {
            if !Self::is_iso_map(b, f) && !Self::is_nilpotent_map(b, f) {
                return Ok(Some(b.clone()));
            }
        }
        let template = self.zero_map(self);
        for e in self.combinations(&basis, &template) {
            if !Self::is_iso_map(&e, f) && !Self::is_nilpotent_map(&e, f) {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    pub fn is_indecomposable(&self, budget: u128) -> Result<bool> {
        Ok(!self.is_zero() && self.non_local_witness(budget)?.is_none())
    }

    /// Fitting decomposition `self = Im phi^N + Ker phi^N`.
    pub fn fitting_split(&self, phi: &[Matrix]) -> Result<(Representation, Representation)> {
        let f = &self.field;
        let n = self.total_dim().max(1);
        let mut pw: Vec<Matrix> = phi.to_vec();
        for _ in 1..n {
            pw = pw.iter().zip(phi).map(|(a, b)| a.mul(f, b)).collect();
        }
        let im: Vec<Matrix> = pw.iter().map(|m| column_space(f, m)).collect();
        let ker: Vec<Matrix> = pw.iter().map(|m| m.kernel_basis(f)).collect();
        Ok((self.restrict(&im)?, self.restrict(&ker)?))
    }

    /// `End` data computed by enumerating every endomorphism.
    pub fn end_data(&self, budget: u128) -> Result<EndData> {
        if self.is_zero() {
            return Err(Error::Dimension("end_data of the zero representation".into()));
        }
        let f = &self.field;
        let basis = self.hom_basis(self)?;
        let e = basis.len();
        if qpow(f.q(), e) > budget {
            return Err(Error::BudgetExceeded(format!("|End| = {}^{e} exceeds budget {budget}", f.q())));
        }
        let template = self.zero_map(self);
        let mut units: u128 = 0;
        let mut nonunits: u128 = 0;
        let mut all_nilpotent = true;
        let mut span = crate::ffield::Subspace::new(e);
        for c in VectorIter::new(f, e) {
            let m = combine(f, &basis, &c, &template);
            if Self::is_iso_map(&m, f) {
                units += 1;
            } else {
                nonunits += 1;
                span.insert(f, &c);
                if !Self::is_nilpotent_map(&m, f) {
                    all_nilpotent = false;
                }
            }
        }
        let r = span.dim();
        let local = all_nilpotent && nonunits == qpow(f.q(), r);
        let (rad_dim, d) = if local { (Some(r), Some(e - r)) } else { (None, None) };
        if let (Some(r), Some(d)) = (rad_dim, d) {
            let expect = qpow(f.q(), r) * (qpow(f.q(), d) - 1);
            if expect != units {
                return Err(Error::Inconsistency(format!("|Aut| = {units} but q^r (q^d - 1) = {expect}")));
            }
        }
        Ok(EndData { end_dim: e, rad_dim, aut_order: units, d })
    }
}

/// Endomorphism-ring data; `rad_dim` and `d` are only set for indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndData {
    pub end_dim: usize,
    pub rad_dim: Option<usize>,
    pub aut_order: u128,
    pub d: Option<usize>,
}

pub fn combine(f: &Field, basis: &[VertexMaps], coeffs: &[FieldElem], template: &VertexMaps) -> VertexMaps {
    let mut out = template.clone();
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            for (o, m) in out.iter_mut().zip(b) {
                o.add_scaled(f, c, m);
            }
        }
    }
    out
}

pub fn compose(f: &Field, g: &[Matrix], h: &[Matrix]) -> VertexMaps {
    g.iter().zip(h).map(|(a, b)| a.mul(f, b)).collect()
}

/// Columns of `m` reduced to an independent spanning set of its image.
pub fn column_space(f: &Field, m: &Matrix) -> Matrix {
    let (r, _) = m.transpose().rref(f);
    let rank = r.rank(f);
    let rows: Vec<usize> = (0..rank).collect();
    let cols: Vec<usize> = (0..m.rows()).collect();
    r.select(&rows, &cols).transpose()
}

/// `L` with `L b = I` for a matrix `b` of full column rank.
pub fn left_inverse(f: &Field, b: &Matrix) -> Result<Matrix> {
    let k = b.cols();
    if k == 0 {
        return Ok(Matrix::zeros(0, b.rows()));
    }
    let (_, pivots) = b.transpose().rref(f);
    if pivots.len() < k {
        return Err(Error::Inconsistency("basis columns are dependent".into()));
    }
    let all: Vec<usize> = (0..k).collect();
    let square = b.select(&pivots, &all);
    let inv = square.inverse(f)?;
    let mut l = Matrix::zeros(k, b.rows());
    for (j, &p) in pivots.iter().enumerate() {
        for i in 0..k {
            l.set(i, p, inv.get(i, j));
        }
    }
    Ok(l)
}

/// For a column basis `b` of a subspace `U <= F^n`, returns `(pi, s)` with
/// `ker pi = U` and `pi s = I`, where `s` is a set of unit vectors.
pub fn complement_projection(f: &Field, b: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = b.rows();
    let mut span = crate::ffield::Subspace::new(n);
    for j in 0..b.cols() {
        span.insert(f, &b.col(j));
    }
    let mut extra = Vec::new();
    for i in 0..n {
        let mut e = vec![0u8; n];
        e[i] = 1;
        if span.insert(f, &e) {
            extra.push(i);
        }
    }
    let mut s = Matrix::zeros(n, extra.len());
    for (j, &i) in extra.iter().enumerate() {
        s.set(i, j, 1);
    }
    let full = Matrix::hstack(&[b, &s])?;
    let inv = full.inverse(f)?;
    let rows: Vec<usize> = (b.cols()..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok((inv.select(&rows, &cols), s))
}

/// Block-diagonal direct sum. The empty sum is the zero representation.
pub fn direct_sum(field: &Field, quiver: &Arc<Quiver>, parts: &[&Representation]) -> Result<Representation> {
    for p in parts {
        if p.field != *field {
            return Err(Error::FieldMismatch(field.q(), p.field.q()));
        }
    }
    let n = quiver.n_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..quiver.arrows().len())
        .map(|ai| Matrix::block_diag(&parts.iter().map(|p| &p.maps[ai]).collect::<Vec<_>>()))
        .collect();
    Representation::new(field, quiver, dims, maps)
}

/// Kernel with its inclusion and cokernel with its projection.
pub fn kernel_cokernel(f: &Morphism) -> Result<((Representation, VertexMaps), (Representation, VertexMaps))> {
    let field = f.source.field.clone();
    if !f.source.is_morphism(&f.target, &f.maps) {
        return Err(Error::Inconsistency("not a morphism of representations".into()));
    }
    let ker_bases: Vec<Matrix> = f.maps.iter().map(|m| m.kernel_basis(&field)).collect();
    let ker = f.source.restrict(&ker_bases)?;
    let im_bases: Vec<Matrix> = f.maps.iter().map(|m| column_space(&field, m)).collect();
    let (coker, proj) = f.target.quotient(&im_bases)?;
    Ok(((ker, ker_bases), (coker, proj)))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ffield::make_field;

    pub fn a2(q: u64) -> (Field, Arc<Quiver>, Representation, Representation, Representation) {
        let f = make_field(q).unwrap();
        let quiver = Arc::new(Quiver::linear_a(2));
        let s1 = Representation::simple(&f, &quiver, 0);
        let s2 = Representation::simple(&f, &quiver, 1);
        let p = Representation::projective(&f, &quiver, 0);
        (f, quiver, s1, s2, p)
    }

    #[test]
    fn projectives_of_a2() {
        let (_, _, _, s2, p) = a2(3);
        assert_eq!(p.dims(), &[1, 1]);
        assert_eq!(p.maps()[0], Matrix::identity(1));
        let (f, q, ..) = a2(3);
        assert_eq!(Representation::projective(&f, &q, 1), s2);
    }

    #[test]
    fn hom_examples() {
        let (_, _, s1, s2, p) = a2(3);
        assert_eq!(s2.hom_dim(&p).unwrap(), 1);
        assert_eq!(p.hom_dim(&s2).unwrap(), 0);
        assert_eq!(s1.hom_dim(&s1).unwrap(), 1);
        for b in s2.hom_basis(&p).unwrap() {
            assert!(s2.is_morphism(&p, &b));
        }
    }

    #[test]
    fn field_mismatch_rejected() {
        let (_, _, s1, ..) = a2(3);
        let (_, _, t1, ..) = a2(5);
        assert!(matches!(s1.hom_dim(&t1), Err(Error::FieldMismatch(3, 5))));
    }

    #[test]
    fn kernel_cokernel_examples() {
        let (f, q, s1, _, p) = a2(3);
        // zero map P -> S1
        let zero = Morphism { source: p.clone(), target: s1.clone(), maps: p.zero_map(&s1) };
        let ((k, _), (c, _)) = kernel_cokernel(&zero).unwrap();
        assert_eq!(k, p);
        assert_eq!(c, s1);
        // identity
        let id = Morphism { source: p.clone(), target: p.clone(), maps: p.identity() };
        let ((k, _), (c, _)) = kernel_cokernel(&id).unwrap();
        assert!(k.is_zero() && c.is_zero());
        // nonzero P -> S1 has kernel S2
        let b = p.hom_basis(&s1).unwrap();
        assert_eq!(b.len(), 1);
        let m = Morphism { source: p.clone(), target: s1.clone(), maps: b[0].clone() };
        let ((k, _), (c, _)) = kernel_cokernel(&m).unwrap();
        assert_eq!(k.dims(), &[0, 1]);
        assert!(c.is_zero());
        assert_eq!(k, Representation::simple(&f, &q, 1));
    }

    #[test]
    fn direct_sums() {
        let (f, q, s1, s2, p) = a2(3);
        assert!(direct_sum(&f, &q, &[]).unwrap().is_zero());
        let s = direct_sum(&f, &q, &[&s1, &s2]).unwrap();
        assert_eq!(s.dims(), &[1, 1]);
        assert!(s.maps()[0].is_zero());
        let pp = direct_sum(&f, &q, &[&p, &p]).unwrap();
        assert_eq!(pp.dims(), &[2, 2]);
        assert_eq!(pp.maps()[0], Matrix::identity(2));
    }

    #[test]
    fn end_data_examples() {
        let (_, _, s1, _, _) = a2(3);
        let e = s1.end_data(1 << 20).unwrap();
        assert_eq!(e, EndData { end_dim: 1, rad_dim: Some(0), aut_order: 2, d: Some(1) });
        let (_, _, _, _, p) = a2(5);
        let e = p.end_data(1 << 20).unwrap();
        assert_eq!((e.end_dim, e.d, e.aut_order), (1, Some(1), 4));
    }

    #[test]
    fn kronecker_degree_two_regular_simple() {
        // (k^2, k^2) with maps I and the companion matrix of x^2 + 1, irreducible over F_3
        let f = make_field(3).unwrap();
        let q = Arc::new(Quiver::kronecker());
        let comp = Matrix::from_rows(&f, &[vec![0, -1], vec![1, 0]]).unwrap();
        let r = Representation::new(&f, &q, vec![2, 2], vec![Matrix::identity(2), comp]).unwrap();
        let e = r.end_data(1 << 20).unwrap();
        assert_eq!(e.end_dim, 2);
        assert_eq!(e.d, Some(2));
        assert_eq!(e.aut_order, 8);
        assert!(r.is_indecomposable(1 << 20).unwrap());
    }

    #[test]
    fn euler_and_ext_examples() {
        let (f, q, s1, s2, p) = a2(3);
        assert_eq!(s1.euler_and_ext(&s2).unwrap(), (-1, 1));
        assert_eq!(s2.euler_and_ext(&s1).unwrap(), (0, 0));
        for m in [&s1, &s2, &p] {
            assert_eq!(p.euler_and_ext(m).unwrap().1, 0);
            let proj2 = Representation::projective(&f, &q, 1);
            assert_eq!(proj2.euler_and_ext(m).unwrap().1, 0);
            // cocycle count agrees with the Euler route
            for n in [&s1, &s2, &p] {
                assert_eq!(m.ext_dim(n).unwrap(), m.euler_and_ext(n).unwrap().1);
            }
        }
    }

    #[test]
    fn fitting_split_of_semisimple() {
        let (f, q, s1, s2, _) = a2(3);
        let m = direct_sum(&f, &q, &[&s1, &s2]).unwrap();
        let w = m.non_local_witness(1 << 20).unwrap().expect("decomposable");
        let (a, b) = m.fitting_split(&w).unwrap();
        assert_eq!(a.total_dim() + b.total_dim(), 2);
        assert!(!a.is_zero() && !b.is_zero());
    }
}
