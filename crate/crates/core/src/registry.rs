//! Registry of indecomposable representations up to a dimension bound, with
//! Krull-Schmidt decomposition against it.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{qpow, Field, Matrix, VectorIter};
use crate::quiver::Quiver;
use crate::repr::{complement_projection, column_space, direct_sum, EndData, Representation};

/// Isomorphism class of a module: sorted `(registry index, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IsoClassId(pub Vec<(usize, usize)>);

impl IsoClassId {
    pub fn zero() -> Self {
        IsoClassId(Vec::new())
    }
    pub fn single(i: usize) -> Self {
        IsoClassId(vec![(i, 1)])
    }
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (i, m) in counts {
            if m > 0 {
                *map.entry(i).or_insert(0) += m;
            }
        }
        IsoClassId(map.into_iter().collect())
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_indecomposable(&self) -> bool {
        self.0.len() == 1 && self.0[0].1 == 1
    }
    pub fn summand_count(&self) -> usize {
        self.0.iter().map(|&(_, m)| m).sum()
    }
    pub fn plus(&self, other: &IsoClassId) -> IsoClassId {
        IsoClassId::from_counts(self.0.iter().chain(&other.0).copied())
    }

    /// Parses the canonical string produced by `Display`.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "0" {
            return Some(Self::zero());
        }
        let mut parts = Vec::new();
        for term in s.split('+') {
            let (i, m) = term.split_once('*')?;
            parts.push((i.parse().ok()?, m.parse().ok()?));
        }
        let id = IsoClassId::from_counts(parts.iter().copied());
        (id.0 == parts).then_some(id)
    }
}

impl fmt::Display for IsoClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.0.iter().map(|(i, m)| format!("{i}*{m}")).collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// Number of elements of `GL_m(F_Q)`.
pub fn gl_order(big_q: u128, m: usize) -> Option<u128> {
    let qm = big_q.checked_pow(m as u32)?;
    let mut acc: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..m {
        acc = acc.checked_mul(qm - qi)?;
        qi *= big_q;
    }
    Some(acc)
}

pub struct ModuleRegistry {
    field: Field,
    quiver: Arc<Quiver>,
    bound: Vec<usize>,
    dynkin: bool,
    budget: u128,
    indec: Vec<Representation>,
    end: Vec<EndData>,
    hom: Vec<Vec<usize>>,
    /// Registry indices ordered so that `Hom(I, J) != 0` implies `I` comes no later than `J`.
    topo: Vec<usize>,
}

impl fmt::Debug for ModuleRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleRegistry")
            .field("quiver", &self.quiver.name())
            .field("q", &self.field.q())
            .field("bound", &self.bound)
            .field("size", &self.indec.len())
            .finish()
    }
}

impl ModuleRegistry {
    /// Enumerates one representative per indecomposable class with `dims <= bound`.
    pub fn new(field: &Field, quiver: &Arc<Quiver>, bound: &[usize], budget: u128) -> Result<Self> {
        if bound.len() != quiver.n_vertices() {
            return Err(Error::Dimension("bound length differs from the vertex count".into()));
        }
        let dynkin = quiver.is_dynkin();
        let indec = if dynkin {
            reflection_indecomposables(field, quiver, bound)?
        } else {
            brute_force_indecomposables(field, quiver, bound, budget)?
        };
        let mut end = Vec::with_capacity(indec.len());
        for r in &indec {
            let e = r.end_data(budget)?;
            if e.d.is_none() {
                return Err(Error::Inconsistency("registry member has a non-local endomorphism ring".into()));
            }
            end.push(e);
        }
        let n = indec.len();
        let mut hom = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                hom[i][j] = indec[i].hom_dim(&indec[j])?;
            }
        }
        let topo = if dynkin { hom_order(&hom)? } else { (0..n).collect() };
        Ok(ModuleRegistry {
            field: field.clone(),
            quiver: quiver.clone(),
            bound: bound.to_vec(),
            dynkin,
            budget,
            indec,
            end,
            hom,
            topo,
        })
    }

    /// All indecomposables of a Dynkin quiver (the bound is taken large enough).
    pub fn full_dynkin(field: &Field, quiver: &Arc<Quiver>, budget: u128) -> Result<Self> {
        if !quiver.is_dynkin() {
            return Err(Error::Quiver("full registry requested for a non-Dynkin quiver".into()));
        }
        // a positive root of a simply-laced Dynkin diagram has coordinates at most 6
        let bound = vec![6; quiver.n_vertices()];
        Self::new(field, quiver, &bound, budget)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn bound(&self) -> &[usize] {
        &self.bound
    }
    pub fn is_dynkin(&self) -> bool {
        self.dynkin
    }
    pub fn budget(&self) -> u128 {
        self.budget
    }
    pub fn len(&self) -> usize {
        self.indec.len()
    }
    pub fn is_empty(&self) -> bool {
        self.indec.is_empty()
    }
    pub fn rep(&self, i: usize) -> &Representation {
        &self.indec[i]
    }
    pub fn reps(&self) -> &[Representation] {
        &self.indec
    }
    pub fn end_data(&self, i: usize) -> &EndData {
        &self.end[i]
    }
    pub fn d(&self, i: usize) -> usize {
        self.end[i].d.expect("registry members are local")
    }
    pub fn rad_dim(&self, i: usize) -> usize {
        self.end[i].rad_dim.expect("registry members are local")
    }
    pub fn dims(&self, i: usize) -> &[usize] {
        self.indec[i].dims()
    }
    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    /// Index of the simple module at vertex `v`, if it lies in the registry.
    pub fn simple_index(&self, v: usize) -> Option<usize> {
        self.indec.iter().position(|r| r.total_dim() == 1 && r.dims()[v] == 1)
    }

    pub fn class_dims(&self, c: &IsoClassId) -> Vec<usize> {
        let mut out = vec![0; self.quiver.n_vertices()];
        for &(i, m) in &c.0 {
            for (o, d) in out.iter_mut().zip(self.dims(i)) {
                *o += m * d;
            }
        }
        out
    }

    pub fn class_total_dim(&self, c: &IsoClassId) -> usize {
        self.class_dims(c).iter().sum()
    }

    pub fn class_rep(&self, c: &IsoClassId) -> Representation {
        let parts: Vec<&Representation> =
            c.0.iter().flat_map(|&(i, m)| std::iter::repeat_n(&self.indec[i], m)).collect();
        direct_sum(&self.field, &self.quiver, &parts).expect("registry members share the field")
    }

    pub fn class_hom_dim(&self, a: &IsoClassId, b: &IsoClassId) -> usize {
        let mut s = 0;
        for &(i, m) in &a.0 {
            for &(j, n) in &b.0 {
                s += m * n * self.hom[i][j];
            }
        }
        s
    }

    /// `|Aut M| = q^(dim rad End M) * prod_j |GL_{m_j}(F_{q^{d_j}})|`.
    pub fn aut_order(&self, c: &IsoClassId) -> Result<u128> {
        let q = self.field.q() as u128;
        let end = self.class_hom_dim(c, c);
        let mut semisimple = 0;
        let mut acc: u128 = 1;
        for &(i, m) in &c.0 {
            let d = self.d(i);
            semisimple += m * m * d;
            let g = gl_order(q.pow(d as u32), m).ok_or_else(|| Error::BudgetExceeded("|Aut| overflows u128".into()))?;
            acc = acc.checked_mul(g).ok_or_else(|| Error::BudgetExceeded("|Aut| overflows u128".into()))?;
        }
        let rad = end - semisimple;
        acc.checked_mul(qpow(self.field.q(), rad)).ok_or_else(|| Error::BudgetExceeded("|Aut| overflows u128".into()))
    }

    pub fn decompose(&self, m: &Representation) -> Result<IsoClassId> {
        if m.field() != &self.field {
            return Err(Error::FieldMismatch(self.field.q(), m.field().q()));
        }
        if m.is_zero() {
            return Ok(IsoClassId::zero());
        }
        let id = if self.dynkin { self.decompose_by_fingerprint(m)? } else { self.decompose_by_splitting(m)? };
        if self.class_dims(&id) != m.dims() {
            return Err(Error::Inconsistency(format!("decomposition {id} does not reproduce the dimension vector")));
        }
        Ok(id)
    }

    fn decompose_by_fingerprint(&self, m: &Representation) -> Result<IsoClassId> {
        let n = self.len();
        let mut v: Vec<i64> = Vec::with_capacity(n);
        for r in &self.indec {
            v.push(r.hom_dim(m)? as i64);
        }
        let mut mult = vec![0i64; n];
        for &i in self.topo.iter().rev() {
            let mut x = v[i];
            for j in 0..n {
                if j != i {
                    x -= mult[j] * self.hom[i][j] as i64;
                }
            }
            if x < 0 {
                return Err(self.bound_error(m));
            }
            mult[i] = x;
        }
        let id = IsoClassId::from_counts(mult.iter().enumerate().map(|(i, &x)| (i, x as usize)));
        if self.class_dims(&id) != m.dims() || self.class_hom_dim(&id, &id) != m.hom_dim(m)? {
            return Err(self.bound_error(m));
        }
        Ok(id)
    }

    fn bound_error(&self, m: &Representation) -> Error {
        Error::BoundExceeded(format!(
            "representation with dims {:?} has a summand outside the registry bound {:?}",
            m.dims(),
            self.bound
        ))
    }

    fn decompose_by_splitting(&self, m: &Representation) -> Result<IsoClassId> {
        let mut stack = vec![m.clone()];
        let mut counts = Vec::new();
        while let Some(r) = stack.pop() {
            if r.is_zero() {
                continue;
            }
            match r.non_local_witness(self.budget)? {
                Some(phi) => {
                    let (a, b) = r.fitting_split(&phi)?;
                    stack.push(a);
                    stack.push(b);
                }
                None => counts.push((self.match_indecomposable(&r)?, 1)),
            }
        }
        Ok(IsoClassId::from_counts(counts))
    }

    /// Registry index of an indecomposable representation.
    pub fn match_indecomposable(&self, r: &Representation) -> Result<usize> {
        for (i, cand) in self.indec.iter().enumerate() {
            if cand.dims() == r.dims() && indecomposables_isomorphic(cand, r)? {
                return Ok(i);
            }
        }
        Err(self.bound_error(r))
    }

    pub fn is_isomorphic(&self, m: &Representation, n: &Representation) -> Result<bool> {
        if m.dims() != n.dims() {
            return Ok(false);
        }
        Ok(self.decompose(m)? == self.decompose(n)?)
    }

    /// Fails unless every indecomposable of dimension `<= dims` lies in the registry.
    pub fn ensure_covered(&self, dims: &[usize]) -> Result<()> {
        if dims.iter().zip(&self.bound).all(|(d, b)| d <= b) {
            Ok(())
        } else {
            Err(Error::BoundExceeded(format!("dimension vector {dims:?} exceeds the registry bound {:?}", self.bound)))
        }
    }

    /// Every class with dimension vector exactly `dims`, sorted.
    pub fn classes_with_dims(&self, dims: &[usize]) -> Result<Vec<IsoClassId>> {
        self.ensure_covered(dims)?;
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            start: usize,
            left: &mut Vec<usize>,
            reps: &[Representation],
            cur: &mut Vec<(usize, usize)>,
            out: &mut Vec<IsoClassId>,
        ) {
            if left.iter().all(|&x| x == 0) {
                out.push(IsoClassId::from_counts(cur.iter().copied()));
                return;
            }
            for i in start..reps.len() {
                let d = reps[i].dims();
                if d.iter().zip(left.iter()).all(|(a, b)| a <= b) {
                    for (l, a) in left.iter_mut().zip(d) {
                        *l -= a;
                    }
                    cur.push((i, 1));
                    rec(i, left, reps, cur, out);
                    cur.pop();
                    for (l, a) in left.iter_mut().zip(d) {
                        *l += a;
                    }
                }
            }
        }
        let mut left = dims.to_vec();
        rec(0, &mut left, &self.indec, &mut cur, &mut out);
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Every class whose total dimension is at most `max_total`, zero included,
    /// sorted by (total dimension, id).
    pub fn classes_up_to_total_dim(&self, max_total: usize) -> Vec<IsoClassId> {
        let sizes: Vec<usize> = self.indec.iter().map(|r| r.total_dim()).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, left: usize, sizes: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<IsoClassId>) {
            out.push(IsoClassId::from_counts(cur.iter().copied()));
            for i in start..sizes.len() {
                if sizes[i] <= left {
                    cur.push((i, 1));
                    rec(i, left - sizes[i], sizes, cur, out);
                    cur.pop();
                }
            }
        }
        rec(0, max_total, &sizes, &mut cur, &mut out);
        out.sort_by_key(|c| (self.class_total_dim(c), c.clone()));
        out.dedup();
        out
    }
}

/// Two indecomposables are isomorphic iff some `g_j f_i` between Hom bases is invertible.
pub fn indecomposables_isomorphic(a: &Representation, b: &Representation) -> Result<bool> {
    if a.dims() != b.dims() {
        return Ok(false);
    }
    let f = a.field();
    let ab = a.hom_basis(b)?;
    let ba = b.hom_basis(a)?;
    for x in &ab {
        for y in &ba {
            let comp: Vec<Matrix> = y.iter().zip(x).map(|(g, h)| g.mul(f, h)).collect();
            if Representation::is_iso_map(&comp, f) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Orders registry indices compatibly with nonzero Hom spaces.
fn hom_order(hom: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = hom.len();
    let mut indeg = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && hom[i][j] > 0 {
                indeg[j] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    while let Some(i) = ready.iter().min().copied() {
        ready.retain(|&x| x != i);
        order.push(i);
        for j in 0..n {
            if i != j && hom[i][j] > 0 {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(j);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::Inconsistency("Hom relation among indecomposables is cyclic".into()));
    }
    Ok(order)
}

struct Oriented {
    arrows: Vec<(usize, usize)>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// Source reflection at `k`: the new space at `k` is the cokernel of `V_k -> (+)_{k->j} V_j`.
fn reflect_at_source(f: &Field, v: &Oriented, k: usize) -> Result<Oriented> {
    let out: Vec<usize> = (0..v.arrows.len()).filter(|&a| v.arrows[a].0 == k).collect();
    if v.arrows.iter().any(|&(_, t)| t == k) {
        return Err(Error::Inconsistency("reflection vertex is not a source".into()));
    }
    let blocks: Vec<&Matrix> = out.iter().map(|&a| &v.maps[a]).collect();
    let total: usize = out.iter().map(|&a| v.dims[v.arrows[a].1]).sum();
    let phi = if blocks.is_empty() { Matrix::zeros(0, v.dims[k]) } else { Matrix::vstack(&blocks)? };
    let (pi, _) = complement_projection(f, &column_space(f, &phi))?;
    let mut dims = v.dims.clone();
    dims[k] = pi.rows();
    let mut arrows = v.arrows.clone();
    let mut maps = v.maps.clone();
    let mut offset = 0;
    for &a in &out {
        let j = v.arrows[a].1;
        let cols: Vec<usize> = (offset..offset + v.dims[j]).collect();
        let rows: Vec<usize> = (0..pi.rows()).collect();
        maps[a] = pi.select(&rows, &cols);
        arrows[a] = (j, k);
        offset += v.dims[j];
    }
    debug_assert_eq!(offset, total);
    Ok(Oriented { arrows, dims, maps })
}

/// Inverse Coxeter functor: source reflections along a topological order.
fn coxeter_minus(f: &Field, v: Oriented, order: &[usize]) -> Result<Oriented> {
    let mut v = v;
    for &k in order {
        v = reflect_at_source(f, &v, k)?;
    }
    Ok(v)
}

/// Indecomposables of a Dynkin quiver as the preprojectives `C^-r P(i)`, kept when
/// their dimension vector is within bound. Ordered by `(r, position of i)`.
fn reflection_indecomposables(f: &Field, quiver: &Arc<Quiver>, bound: &[usize]) -> Result<Vec<Representation>> {
    let n = quiver.n_vertices();
    let order = quiver.topological_order();
    let base: Vec<(usize, usize)> = quiver.arrows().iter().map(|a| (a.src, a.tgt)).collect();
    let mut found: Vec<(usize, usize, Representation)> = Vec::new();
    let mut seen_dims = std::collections::HashSet::new();
    for (pos, &i) in order.iter().enumerate() {
        let p = Representation::projective(f, quiver, i);
        let mut v = Oriented { arrows: base.clone(), dims: p.dims().to_vec(), maps: p.maps().to_vec() };
        for r in 0.. {
            if v.dims.iter().all(|&d| d == 0) {
                break;
            }
            if r > 4 * n + 8 {
                return Err(Error::Inconsistency("Coxeter orbit of a projective did not terminate".into()));
            }
            if !seen_dims.insert(v.dims.clone()) {
                return Err(Error::Inconsistency(format!("dimension vector {:?} produced twice", v.dims)));
            }
            if v.dims.iter().zip(bound).all(|(&d, &b)| d <= b) {
                found.push((r, pos, Representation::new(f, quiver, v.dims.clone(), v.maps.clone())?));
            }
            v = coxeter_minus(f, v, &order)?;
            if v.arrows != base {
                return Err(Error::Inconsistency("reflections did not return to the original orientation".into()));
            }
        }
    }
    found.sort_by_key(|(r, pos, _)| (*r, *pos));
    Ok(found.into_iter().map(|(_, _, rep)| rep).collect())
}

/// Brute force over all arrow-matrix tuples, keeping one indecomposable per class.
fn brute_force_indecomposables(
    f: &Field,
    quiver: &Arc<Quiver>,
    bound: &[usize],
    budget: u128,
) -> Result<Vec<Representation>> {
    let mut dim_vectors = vec![vec![]];
    for &b in bound {
        dim_vectors = dim_vectors
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    dim_vectors.retain(|d| d.iter().any(|&x| x > 0));
    dim_vectors.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));
    let mut out: Vec<Representation> = Vec::new();
    for dims in dim_vectors {
        let shapes: Vec<(usize, usize)> = quiver.arrows().iter().map(|a| (dims[a.tgt], dims[a.src])).collect();
        let entries: usize = shapes.iter().map(|&(r, c)| r * c).sum();
        let space = qpow(f.q(), entries);
        if space > budget {
            return Err(Error::BudgetExceeded(format!(
                "dims {dims:?}: {space} arrow tuples exceed the enumeration budget {budget}"
            )));
        }
        let start = out.len();
        for tuple in VectorIter::new(f, entries) {
            let mut maps = Vec::with_capacity(shapes.len());
            let mut off = 0;
            for &(r, c) in &shapes {
                maps.push(Matrix::from_vec(r, c, tuple[off..off + r * c].to_vec())?);
                off += r * c;
            }
            let rep = Representation::new(f, quiver, dims.clone(), maps)?;
            if !rep.is_indecomposable(budget)? {
                continue;
            }
            let mut known = false;
            for o in &out[start..] {
                if indecomposables_isomorphic(o, &rep)? {
                    known = true;
                    break;
                }
            }
            if !known {
                out.push(rep);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    fn reg(q: u64, quiver: Quiver, bound: &[usize]) -> ModuleRegistry {
        let f = make_field(q).unwrap();
        ModuleRegistry::new(&f, &Arc::new(quiver), bound, 1 << 24).unwrap()
    }

    #[test]
    fn a2_registry() {
        let r = reg(3, Quiver::linear_a(2), &[1, 1]);
        assert_eq!(r.len(), 3);
        let mut dims: Vec<Vec<usize>> = r.reps().iter().map(|x| x.dims().to_vec()).collect();
        dims.sort();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        for i in 0..3 {
            assert_eq!(r.d(i), 1);
        }
    }

    #[test]
    fn a1_registry() {
        let r = reg(3, Quiver::linear_a(1), &[2]);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn dynkin_counts_match_positive_roots() {
        let f = make_field(2).unwrap();
        for (n, roots) in [(1, 1), (2, 3), (3, 6), (4, 10)] {
            let r = ModuleRegistry::full_dynkin(&f, &Arc::new(Quiver::linear_a(n)), 1 << 20).unwrap();
            assert_eq!(r.len(), roots);
        }
        let d4 = Quiver::new(
            "D4",
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "3".into(), "2".into()),
                ("c".into(), "4".into(), "2".into()),
            ],
        )
        .unwrap();
        let r = ModuleRegistry::full_dynkin(&f, &Arc::new(d4), 1 << 20).unwrap();
        assert_eq!(r.len(), 12);
        assert!(r.reps().iter().any(|x| x.dims() == [1, 2, 1, 1]));
    }

    #[test]
    fn kronecker_small_bound() {
        let r = reg(3, Quiver::kronecker(), &[1, 1]);
        assert_eq!(r.len(), 6);
        assert_eq!(r.reps().iter().filter(|x| x.dims() == [1, 1]).count(), 4);
    }

    #[test]
    fn decompose_examples() {
        let r = reg(3, Quiver::linear_a(2), &[1, 1]);
        let f = r.field().clone();
        let q = r.quiver().clone();
        let s1 = r.simple_index(0).unwrap();
        let s2 = r.simple_index(1).unwrap();
        let p = (0..3).find(|&i| r.dims(i) == [1, 1]).unwrap();
        let m = direct_sum(&f, &q, &[r.rep(p), r.rep(s1)]).unwrap();
        assert_eq!(r.decompose(&m).unwrap(), IsoClassId::from_counts([(p, 1), (s1, 1)]));
        let split = Representation::with_zero_maps(&f, &q, vec![1, 1]);
        assert_eq!(r.decompose(&split).unwrap(), IsoClassId::from_counts([(s1, 1), (s2, 1)]));
        assert_eq!(r.decompose(&Representation::zero(&f, &q)).unwrap(), IsoClassId::zero());
        assert!(!r.is_isomorphic(&split, r.rep(p)).unwrap());
        let a = direct_sum(&f, &q, &[r.rep(p), r.rep(s2)]).unwrap();
        let b = direct_sum(&f, &q, &[r.rep(s2), r.rep(p)]).unwrap();
        assert!(r.is_isomorphic(&a, &b).unwrap());
        assert!(r.is_isomorphic(&a, &a).unwrap());
    }

    #[test]
    fn decompose_outside_bound_is_an_error() {
        let r = reg(3, Quiver::linear_a(2), &[1, 0]);
        let f = r.field().clone();
        let q = r.quiver().clone();
        let p = Representation::projective(&f, &q, 0);
        assert!(matches!(r.decompose(&p), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn kronecker_decompose_by_splitting() {
        let r = reg(3, Quiver::kronecker(), &[1, 1]);
        let f = r.field().clone();
        let q = r.quiver().clone();
        let m = direct_sum(&f, &q, &[r.rep(2), r.rep(3), r.rep(3)]).unwrap();
        assert_eq!(r.decompose(&m).unwrap(), IsoClassId::from_counts([(2, 1), (3, 2)]));
    }

    #[test]
    fn aut_orders_agree_with_enumeration() {
        let r = reg(3, Quiver::linear_a(2), &[1, 1]);
        for c in r.classes_up_to_total_dim(3) {
            if c.is_zero() {
                continue;
            }
            let rep = r.class_rep(&c);
            if rep.hom_dim(&rep).unwrap() > 8 {
                continue;
            }
            assert_eq!(r.aut_order(&c).unwrap(), rep.end_data(1 << 20).unwrap().aut_order, "{c}");
        }
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(3, 2), Some(48));
        assert_eq!(gl_order(2, 3), Some(168));
        assert_eq!(gl_order(5, 0), Some(1));
    }

    #[test]
    fn class_id_strings_round_trip() {
        for id in [IsoClassId::zero(), IsoClassId::from_counts([(0, 2), (3, 1)])] {
            assert_eq!(IsoClassId::parse(&id.to_string()), Some(id));
        }
        assert_eq!(IsoClassId::parse("3*1+0*2"), None);
    }
}
