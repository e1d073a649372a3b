//! Two-periodic complexes of projective representations and their chain maps.
//!
//! A projective sum is a list of vertex labels `i`, one per summand `P(i)`.
//! Morphisms out of a projective sum are determined by the images of the
//! summand generators (the trivial paths), which gives canonical coordinates.

use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElem, Matrix};
use crate::repr::{compose, direct_sum, Representation, VertexMaps};
use std::sync::Arc;

use crate::quiver::Quiver;

/// `P0 --d0--> P1 --d1--> P0` with both composites zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub d0: VertexMaps,
    pub d1: VertexMaps,
}

/// A graded map between complexes, not necessarily a chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub u0: VertexMaps,
    pub u1: VertexMaps,
}

/// Projective representations of one quiver with their path bookkeeping.
pub struct ProjCtx {
    field: Field,
    quiver: Arc<Quiver>,
    proj: Vec<Representation>,
    /// For each `i`: every path out of `i` as `(end, local index, arrow list)`.
    paths: Vec<Vec<(usize, usize, Vec<usize>)>>,
}

impl ProjCtx {
    pub fn new(field: &Field, quiver: &Arc<Quiver>) -> Self {
        let n = quiver.n_vertices();
        let mut proj = Vec::with_capacity(n);
        let mut paths = Vec::with_capacity(n);
        for i in 0..n {
            proj.push(Representation::projective(field, quiver, i));
            let mut counter = vec![0; n];
            let list = quiver
                .paths_from(i)
                .into_iter()
                .map(|p| {
                    let local = counter[p.end];
                    counter[p.end] += 1;
                    (p.end, local, p.arrows)
                })
                .collect();
            paths.push(list);
        }
        ProjCtx { field: field.clone(), quiver: quiver.clone(), proj, paths }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn projective(&self, i: usize) -> &Representation {
        &self.proj[i]
    }

    pub fn sum_rep(&self, labels: &[usize]) -> Representation {
        let parts: Vec<&Representation> = labels.iter().map(|&i| &self.proj[i]).collect();
        direct_sum(&self.field, &self.quiver, &parts).expect("projectives share the field")
    }

    pub fn sum_dims(&self, labels: &[usize]) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices()];
        for &i in labels {
            for (x, y) in d.iter_mut().zip(self.proj[i].dims()) {
                *x += y;
            }
        }
        d
    }

    /// `offsets[v][s]`: first row of summand `s` inside the space at vertex `v`.
    pub fn offsets(&self, labels: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut out = vec![Vec::with_capacity(labels.len()); n];
        let mut acc = vec![0; n];
        for &i in labels {
            for v in 0..n {
                out[v].push(acc[v]);
                acc[v] += self.proj[i].dims()[v];
            }
        }
        out
    }

    /// Row of the generator of summand `s` at its own vertex.
    pub fn generator_row(&self, labels: &[usize], s: usize) -> usize {
        self.offsets(labels)[labels[s]][s]
    }

    fn path_apply(&self, m: &Representation, arrows: &[usize], v: &[FieldElem]) -> Vec<FieldElem> {
        let mut x = v.to_vec();
        for &a in arrows {
            x = m.maps()[a].mul_vec(&self.field, &x);
        }
        x
    }

    /// Morphism `(+)_s P(labels[s]) -> m` sending generator `s` to `images[s]` in `m_{labels[s]}`.
    pub fn map_from_generators(&self, labels: &[usize], m: &Representation, images: &[Vec<FieldElem>]) -> VertexMaps {
        let n = self.n_vertices();
        let src = self.sum_dims(labels);
        let off = self.offsets(labels);
        let mut out: VertexMaps = (0..n).map(|v| Matrix::zeros(m.dims()[v], src[v])).collect();
        for (s, &i) in labels.iter().enumerate() {
            for (end, local, arrows) in &self.paths[i] {
                let col = self.path_apply(m, arrows, &images[s]);
                let c = off[*end][s] + local;
                for (r, &x) in col.iter().enumerate() {
                    out[*end].set(r, c, x);
                }
            }
        }
        out
    }

    /// Generator images of a map out of a projective sum, concatenated.
    pub fn generator_coords(&self, labels: &[usize], u: &VertexMaps) -> Vec<FieldElem> {
        let off = self.offsets(labels);
        let mut out = Vec::new();
        for (s, &i) in labels.iter().enumerate() {
            out.extend(u[i].col(off[i][s]));
        }
        out
    }

    /// Inverse of `generator_coords` for maps into `target`.
    pub fn map_from_coords(&self, labels: &[usize], target: &Representation, coords: &[FieldElem]) -> VertexMaps {
        let mut images = Vec::with_capacity(labels.len());
        let mut pos = 0;
        for &i in labels {
            let d = target.dims()[i];
            images.push(coords[pos..pos + d].to_vec());
            pos += d;
        }
        debug_assert_eq!(pos, coords.len());
        self.map_from_generators(labels, target, &images)
    }

    /// Number of generator coordinates of maps `labels -> target`.
    pub fn coord_len(&self, labels: &[usize], target_dims: &[usize]) -> usize {
        labels.iter().map(|&i| target_dims[i]).sum()
    }

    pub fn zero_maps(&self, src: &[usize], tgt: &[usize]) -> VertexMaps {
        let (a, b) = (self.sum_dims(src), self.sum_dims(tgt));
        a.iter().zip(&b).map(|(&c, &r)| Matrix::zeros(r, c)).collect()
    }

    pub fn identity(&self, labels: &[usize]) -> VertexMaps {
        self.sum_dims(labels).iter().map(|&d| Matrix::identity(d)).collect()
    }

    pub fn zero_complex(&self) -> Complex {
        Complex { p0: vec![], p1: vec![], d0: self.zero_maps(&[], &[]), d1: self.zero_maps(&[], &[]) }
    }

    pub fn validate(&self, c: &Complex) -> Result<()> {
        let f = &self.field;
        let (a, b) = (self.sum_rep(&c.p0), self.sum_rep(&c.p1));
        if !a.is_morphism(&b, &c.d0) || !b.is_morphism(&a, &c.d1) {
            return Err(Error::Inconsistency("differential is not a morphism of representations".into()));
        }
        let z0 = compose(f, &c.d1, &c.d0);
        let z1 = compose(f, &c.d0, &c.d1);
        if !z0.iter().chain(&z1).all(Matrix::is_zero) {
            return Err(Error::Inconsistency("differentials do not compose to zero".into()));
        }
        Ok(())
    }

    /// Unsigned shift: swaps the two degrees, so `shift(shift(A)) == A`.
    pub fn shift(&self, c: &Complex) -> Complex {
        Complex { p0: c.p1.clone(), p1: c.p0.clone(), d0: c.d1.clone(), d1: c.d0.clone() }
    }

    pub fn direct_sum(&self, parts: &[&Complex]) -> Complex {
        let cat = |sel: fn(&Complex) -> &Vec<usize>| parts.iter().flat_map(|c| sel(c).iter().copied()).collect::<Vec<_>>();
        let p0 = cat(|c| &c.p0);
        let p1 = cat(|c| &c.p1);
        let n = self.n_vertices();
        let d0 = (0..n).map(|v| Matrix::block_diag(&parts.iter().map(|c| &c.d0[v]).collect::<Vec<_>>())).collect();
        let d1 = (0..n).map(|v| Matrix::block_diag(&parts.iter().map(|c| &c.d1[v]).collect::<Vec<_>>())).collect();
        Complex { p0, p1, d0, d1 }
    }

    /// Minimal projective resolution `0 -> P1 -> P0 -> M -> 0`, as a complex with `d0 = 0`.
    pub fn embed_module(&self, m: &Representation) -> Result<Complex> {
        let f = &self.field;
        let n = self.n_vertices();
        let (p0, gens) = self.top_generators(m)?;
        let p0rep = self.sum_rep(&p0);
        let cover = self.map_from_generators(&p0, m, &gens);
        let ker_bases: Vec<Matrix> = cover.iter().map(|x| x.kernel_basis(f)).collect();
        let kernel = p0rep.restrict(&ker_bases)?;
        let (p1, kgens) = self.top_generators(&kernel)?;
        // generators of the kernel, written in P0 coordinates
        let kgens_in_p0: Vec<Vec<FieldElem>> =
            p1.iter().zip(&kgens).map(|(&i, g)| ker_bases[i].mul_vec(f, g)).collect();
        let d1 = self.map_from_generators(&p1, &p0rep, &kgens_in_p0);
        if self.sum_dims(&p1) != kernel.dims() {
            return Err(Error::Inconsistency("kernel of a projective cover is not projective".into()));
        }
        let _ = n;
        let c = Complex { d0: self.zero_maps(&p0, &p1), p0, p1, d1 };
        self.validate(&c)?;
        Ok(c)
    }

    /// Vertex labels and vectors spanning a complement of the radical at each vertex.
    fn top_generators(&self, m: &Representation) -> Result<(Vec<usize>, Vec<Vec<FieldElem>>)> {
        let f = &self.field;
        let mut labels = Vec::new();
        let mut gens = Vec::new();
        for v in 0..self.n_vertices() {
            let mut span = crate::ffield::Subspace::new(m.dims()[v]);
            for (ai, a) in self.quiver.arrows().iter().enumerate() {
                if a.tgt == v {
                    let mat = &m.maps()[ai];
                    for c in 0..mat.cols() {
                        span.insert(f, &mat.col(c));
                    }
                }
            }
            for k in 0..m.dims()[v] {
                let mut e = vec![0; m.dims()[v]];
                e[k] = 1;
                if span.insert(f, &e) {
                    labels.push(v);
                    gens.push(e);
                }
            }
        }
        Ok((labels, gens))
    }

    /// Standard cone of a chain map `u: A -> B`, with the inclusion `B -> C` and
    /// the projection `C -> shift(A)`.
    ///
    /// `C0 = B0 + A1`, `C1 = B1 + A0`,
    /// `d0 = [[d0B, u1], [0, -d1A]]`, `d1 = [[d1B, u0], [0, -d0A]]`;
    /// the projection carries a sign in degree one so that it is a chain map into
    /// the unsigned shift.
    pub fn cone(&self, a: &Complex, b: &Complex, u: &ChainMap) -> (Complex, ChainMap, ChainMap) {
        let f = &self.field;
        let n = self.n_vertices();
        let p0: Vec<usize> = b.p0.iter().chain(&a.p1).copied().collect();
        let p1: Vec<usize> = b.p1.iter().chain(&a.p0).copied().collect();
        let (a0, a1, b0, b1) = (self.sum_dims(&a.p0), self.sum_dims(&a.p1), self.sum_dims(&b.p0), self.sum_dims(&b.p1));
        let mut d0 = Vec::with_capacity(n);
        let mut d1 = Vec::with_capacity(n);
        let mut iota = ChainMap { u0: vec![], u1: vec![] };
        let mut pi = ChainMap { u0: vec![], u1: vec![] };
        for v in 0..n {
            let mut m0 = Matrix::zeros(b1[v] + a0[v], b0[v] + a1[v]);
            m0.put(0, 0, &b.d0[v]);
            m0.put(0, b0[v], &u.u1[v]);
            m0.put(b1[v], b0[v], &a.d1[v].neg(f));
            d0.push(m0);
            let mut m1 = Matrix::zeros(b0[v] + a1[v], b1[v] + a0[v]);
            m1.put(0, 0, &b.d1[v]);
            m1.put(0, b1[v], &u.u0[v]);
            m1.put(b0[v], b1[v], &a.d0[v].neg(f));
            d1.push(m1);
            let mut i0 = Matrix::zeros(b0[v] + a1[v], b0[v]);
            i0.put(0, 0, &Matrix::identity(b0[v]));
            let mut i1 = Matrix::zeros(b1[v] + a0[v], b1[v]);
            i1.put(0, 0, &Matrix::identity(b1[v]));
            iota.u0.push(i0);
            iota.u1.push(i1);
            let mut q0 = Matrix::zeros(a1[v], b0[v] + a1[v]);
            q0.put(0, b0[v], &Matrix::identity(a1[v]));
            let mut q1 = Matrix::zeros(a0[v], b1[v] + a0[v]);
            q1.put(0, b1[v], &Matrix::identity(a0[v]).neg(f));
            pi.u0.push(q0);
            pi.u1.push(q1);
        }
        (Complex { p0, p1, d0, d1 }, iota, pi)
    }

    /// Strips contractible summands `P(i) --c--> P(i)`. Returns the minimal
    /// complex with mutually inverse homotopy equivalences `p: C -> C'`, `i: C' -> C`.
    pub fn minimalize(&self, c: &Complex) -> Result<(Complex, ChainMap, ChainMap)> {
        let f = &self.field;
        let mut cur = c.clone();
        let mut p = ChainMap { u0: self.identity(&c.p0), u1: self.identity(&c.p1) };
        let mut i = p.clone();
        loop {
            if let Some((s, t, scalar)) = self.find_unit_component(&cur.p0, &cur.p1, &cur.d0) {
                let (next, ps, is) = self.eliminate(&cur, s, t, scalar)?;
                p = ChainMap { u0: compose(f, &ps.u0, &p.u0), u1: compose(f, &ps.u1, &p.u1) };
                i = ChainMap { u0: compose(f, &i.u0, &is.u0), u1: compose(f, &i.u1, &is.u1) };
                cur = next;
            } else if let Some((s, t, scalar)) = self.find_unit_component(&cur.p1, &cur.p0, &cur.d1) {
                let sh = self.shift(&cur);
                let (next, ps, is) = self.eliminate(&sh, s, t, scalar)?;
                let (ps, is) = (ChainMap { u0: ps.u1, u1: ps.u0 }, ChainMap { u0: is.u1, u1: is.u0 });
                p = ChainMap { u0: compose(f, &ps.u0, &p.u0), u1: compose(f, &ps.u1, &p.u1) };
                i = ChainMap { u0: compose(f, &i.u0, &is.u0), u1: compose(f, &i.u1, &is.u1) };
                cur = self.shift(&next);
            } else {
                return Ok((cur, p, i));
            }
        }
    }

    pub fn is_minimal(&self, c: &Complex) -> bool {
        self.find_unit_component(&c.p0, &c.p1, &c.d0).is_none() && self.find_unit_component(&c.p1, &c.p0, &c.d1).is_none()
    }

    /// A component `P(i)` (summand `s` of `src`) `->` `P(i)` (summand `t` of `tgt`)
    /// that is a nonzero scalar.
    fn find_unit_component(&self, src: &[usize], tgt: &[usize], d: &VertexMaps) -> Option<(usize, usize, FieldElem)> {
        let (so, to) = (self.offsets(src), self.offsets(tgt));
        for (s, &i) in src.iter().enumerate() {
            for (t, &j) in tgt.iter().enumerate() {
                if i == j {
                    let c = d[i].get(to[i][t], so[i][s]);
                    if c != 0 {
                        return Some((s, t, c));
                    }
                }
            }
        }
        None
    }

    /// Gaussian elimination of the unit component `phi = c` of `d0` between
    /// summand `s` of `P0` and summand `t` of `P1`.
    fn eliminate(&self, c: &Complex, s: usize, t: usize, scalar: FieldElem) -> Result<(Complex, ChainMap, ChainMap)> {
        let f = &self.field;
        let n = self.n_vertices();
        let cinv = f.inv(scalar)?;
        let (o0, o1) = (self.offsets(&c.p0), self.offsets(&c.p1));
        let (d0dims, d1dims) = (self.sum_dims(&c.p0), self.sum_dims(&c.p1));
        let p0: Vec<usize> = c.p0.iter().enumerate().filter(|&(k, _)| k != s).map(|(_, &x)| x).collect();
        let p1: Vec<usize> = c.p1.iter().enumerate().filter(|&(k, _)| k != t).map(|(_, &x)| x).collect();
        let (mut d0, mut d1) = (Vec::with_capacity(n), Vec::with_capacity(n));
        let (mut pu0, mut pu1, mut iu0, mut iu1) = (vec![], vec![], vec![], vec![]);
        for v in 0..n {
            let w = self.proj[c.p0[s]].dims()[v];
            let s_rows: Vec<usize> = (o0[v][s]..o0[v][s] + w).collect();
            let t_rows: Vec<usize> = (o1[v][t]..o1[v][t] + w).collect();
            let keep0: Vec<usize> = (0..d0dims[v]).filter(|x| !s_rows.contains(x)).collect();
            let keep1: Vec<usize> = (0..d1dims[v]).filter(|x| !t_rows.contains(x)).collect();
            let eps = c.d0[v].select(&keep1, &keep0);
            let gamma = c.d0[v].select(&keep1, &s_rows);
            let delta = c.d0[v].select(&t_rows, &keep0);
            let correction = gamma.mul(f, &delta).scale(f, cinv);
            d0.push(eps.sub(f, &correction));
            d1.push(c.d1[v].select(&keep0, &keep1));
            // p0 = (0 1): drop the s rows
            let mut m = Matrix::zeros(keep0.len(), d0dims[v]);
            for (r, &k) in keep0.iter().enumerate() {
                m.set(r, k, 1);
            }
            pu0.push(m);
            // p1 = (-gamma phi^-1, 1)
            let mut m = Matrix::zeros(keep1.len(), d1dims[v]);
            for (r, &k) in keep1.iter().enumerate() {
                m.set(r, k, 1);
            }
            let ng = gamma.scale(f, f.neg(cinv));
            for (r, _) in keep1.iter().enumerate() {
                for (cc, &tr) in t_rows.iter().enumerate() {
                    m.set(r, tr, ng.get(r, cc));
                }
            }
            pu1.push(m);
            // i0 = (-phi^-1 delta ; 1)
            let mut m = Matrix::zeros(d0dims[v], keep0.len());
            for (cc, &k) in keep0.iter().enumerate() {
                m.set(k, cc, 1);
            }
            let nd = delta.scale(f, f.neg(cinv));
            for (rr, &sr) in s_rows.iter().enumerate() {
                for cc in 0..keep0.len() {
                    m.set(sr, cc, nd.get(rr, cc));
                }
            }
            iu0.push(m);
            // i1 = (0 ; 1)
            let mut m = Matrix::zeros(d1dims[v], keep1.len());
            for (cc, &k) in keep1.iter().enumerate() {
                m.set(k, cc, 1);
            }
            iu1.push(m);
        }
        let out = Complex { p0, p1, d0, d1 };
        Ok((out, ChainMap { u0: pu0, u1: pu1 }, ChainMap { u0: iu0, u1: iu1 }))
    }

    /// Whether `u: A -> B` commutes with both differentials.
    pub fn is_chain_map(&self, a: &Complex, b: &Complex, u: &ChainMap) -> bool {
        let f = &self.field;
        compose(f, &u.u1, &a.d0) == compose(f, &b.d0, &u.u0) && compose(f, &u.u0, &a.d1) == compose(f, &b.d1, &u.u1)
    }

    /// `H^0 = ker d0 / im d1` and `H^1 = ker d1 / im d0`.
    pub fn homology(&self, c: &Complex) -> Result<(Representation, Representation)> {
        let f = &self.field;
        let r0 = self.sum_rep(&c.p0);
        let r1 = self.sum_rep(&c.p1);
        let k0: Vec<Matrix> = c.d0.iter().map(|m| m.kernel_basis(f)).collect();
        let i1: Vec<Matrix> = c.d1.iter().map(|m| crate::repr::column_space(f, m)).collect();
        let k1: Vec<Matrix> = c.d1.iter().map(|m| m.kernel_basis(f)).collect();
        let i0: Vec<Matrix> = c.d0.iter().map(|m| crate::repr::column_space(f, m)).collect();
        Ok((r0.subquotient(&k0, &i1)?, r1.subquotient(&k1, &i0)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    fn ctx(q: u64, n: usize) -> ProjCtx {
        ProjCtx::new(&make_field(q).unwrap(), &Arc::new(Quiver::linear_a(n)))
    }

    #[test]
    fn embeddings_of_a2_modules() {
        let c = ctx(3, 2);
        let f = c.field().clone();
        let q = c.quiver().clone();
        let s2 = Representation::simple(&f, &q, 1);
        let e = c.embed_module(&s2).unwrap();
        assert_eq!((e.p0.clone(), e.p1.clone()), (vec![1], vec![]));
        let s1 = Representation::simple(&f, &q, 0);
        let e = c.embed_module(&s1).unwrap();
        assert_eq!((e.p0.clone(), e.p1.clone()), (vec![0], vec![1]));
        assert!(!e.d1.iter().all(Matrix::is_zero));
        let (h0, h1) = c.homology(&e).unwrap();
        assert_eq!(h0.dims(), &[1, 0]);
        assert!(h1.is_zero());
        let z = c.embed_module(&Representation::zero(&f, &q)).unwrap();
        assert_eq!(z, c.zero_complex());
        assert!(c.is_minimal(&e));
    }

    #[test]
    fn shift_is_an_involution() {
        let c = ctx(3, 2);
        let s1 = Representation::simple(c.field(), c.quiver(), 0);
        let e = c.embed_module(&s1).unwrap();
        assert_eq!(c.shift(&c.shift(&e)), e);
        assert_eq!(c.shift(&c.zero_complex()), c.zero_complex());
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let c = ctx(3, 2);
        let s1 = Representation::simple(c.field(), c.quiver(), 0);
        let e = c.embed_module(&s1).unwrap();
        let id = ChainMap { u0: c.identity(&e.p0), u1: c.identity(&e.p1) };
        let (cone, iota, pi) = c.cone(&e, &e, &id);
        c.validate(&cone).unwrap();
        assert!(c.is_chain_map(&e, &cone, &iota));
        assert!(c.is_chain_map(&cone, &c.shift(&e), &pi));
        let (m, p, i) = c.minimalize(&cone).unwrap();
        assert_eq!(m, c.zero_complex());
        assert!(c.is_chain_map(&cone, &m, &p) && c.is_chain_map(&m, &cone, &i));
    }

    #[test]
    fn minimalize_strips_contractible_summand() {
        let c = ctx(3, 2);
        let s1 = Representation::simple(c.field(), c.quiver(), 0);
        let e = c.embed_module(&s1).unwrap();
        let id = ChainMap { u0: c.identity(&e.p0), u1: c.identity(&e.p1) };
        let (cone, ..) = c.cone(&e, &e, &id);
        let sum = c.direct_sum(&[&e, &cone]);
        let (m, p, i) = c.minimalize(&sum).unwrap();
        assert_eq!(m, e);
        assert!(c.is_chain_map(&sum, &m, &p) && c.is_chain_map(&m, &sum, &i));
        // p o i is the identity on the minimal complex
        let f = c.field();
        assert_eq!(compose(f, &p.u0, &i.u0), c.identity(&m.p0));
        assert_eq!(compose(f, &p.u1, &i.u1), c.identity(&m.p1));
        let (m2, ..) = c.minimalize(&m).unwrap();
        assert_eq!(m2, m);
    }
}
