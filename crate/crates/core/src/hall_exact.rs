//! Hall numbers of the module category and its Ringel-Hall algebra.
//!
//! `F_{XY}^L` counts submodules `U <= L` with `U ~ Y` and `L/U ~ X`. It is
//! computed by enumerating `Hom(Y, L)`, keeping the monomorphisms, tallying the
//! cokernel classes and dividing by `|Aut Y|`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::cache::{self, CacheHeader};
use crate::error::{Error, Result};
use crate::ffield::{qpow, Matrix, VectorIter};
use crate::modular::reduce;
use crate::registry::{IsoClassId, ModuleRegistry};
use crate::repr::{column_space, combine, compose, Representation};
use crate::report::{CheckRecord, CheckReport};

/// Finite `Z`-linear combination of module classes.
pub type HallElement = BTreeMap<IsoClassId, i128>;

pub fn basis_element(c: &IsoClassId) -> HallElement {
    BTreeMap::from([(c.clone(), 1)])
}

type Key = (IsoClassId, IsoClassId, IsoClassId);

pub struct HallTable<'r> {
    reg: &'r ModuleRegistry,
    values: HashMap<Key, u128>,
    w_values: HashMap<Key, u128>,
}

fn add_dims(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn is_monic(f: &Representation, maps: &[Matrix]) -> bool {
    maps.iter().all(|m| m.rank(f.field()) == m.cols())
}

fn is_epic(f: &Representation, maps: &[Matrix]) -> bool {
    maps.iter().all(|m| m.rank(f.field()) == m.rows())
}

impl<'r> HallTable<'r> {
    pub fn new(reg: &'r ModuleRegistry) -> Self {
        HallTable { reg, values: HashMap::new(), w_values: HashMap::new() }
    }

    pub fn registry(&self) -> &ModuleRegistry {
        self.reg
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_budget(&self, dim: usize, what: &str) -> Result<()> {
        let size = qpow(self.reg.field().q(), dim);
        if size > self.reg.budget() {
            return Err(Error::BudgetExceeded(format!("{what}: {size} morphisms exceed budget {}", self.reg.budget())));
        }
        Ok(())
    }

    /// Fills `F_{X,Y}^L` for every `X` of the complementary dimension vector.
    fn tally(&mut self, y: &IsoClassId, l: &IsoClassId) -> Result<()> {
        let reg = self.reg;
        let (yd, ld) = (reg.class_dims(y), reg.class_dims(l));
        let xd: Vec<usize> = ld.iter().zip(&yd).map(|(a, b)| a - b).collect();
        let yrep = reg.class_rep(y);
        let lrep = reg.class_rep(l);
        let basis = yrep.hom_basis(&lrep)?;
        self.check_budget(basis.len(), &format!("Hom({y}, {l})"))?;
        let template = yrep.zero_map(&lrep);
        let mut counts: BTreeMap<IsoClassId, u128> = BTreeMap::new();
        for c in VectorIter::new(reg.field(), basis.len()) {
            let fmap = combine(reg.field(), &basis, &c, &template);
            if !is_monic(&yrep, &fmap) {
                continue;
            }
            let im: Vec<Matrix> = fmap.iter().map(|m| column_space(reg.field(), m)).collect();
            let (coker, _) = lrep.quotient(&im)?;
            *counts.entry(reg.decompose(&coker)?).or_insert(0) += 1;
        }
        let aut_y = reg.aut_order(y)?;
        for x in reg.classes_with_dims(&xd)? {
            let n = counts.remove(&x).unwrap_or(0);
            if !n.is_multiple_of(aut_y) {
                return Err(Error::Inconsistency(format!(
                    "{n} monomorphisms {y} -> {l} with cokernel {x} is not divisible by |Aut {y}| = {aut_y}"
                )));
            }
            self.values.insert((x, y.clone(), l.clone()), n / aut_y);
        }
        if let Some((x, _)) = counts.into_iter().next() {
            return Err(Error::Inconsistency(format!("cokernel class {x} has unexpected dimension")));
        }
        Ok(())
    }

    pub fn hall_number(&mut self, x: &IsoClassId, y: &IsoClassId, l: &IsoClassId) -> Result<u128> {
        let reg = self.reg;
        if add_dims(&reg.class_dims(x), &reg.class_dims(y)) != reg.class_dims(l) {
            return Ok(0);
        }
        if x.is_zero() || y.is_zero() {
            return Ok(u128::from(x == l || y == l));
        }
        let key = (x.clone(), y.clone(), l.clone());
        if let Some(&v) = self.values.get(&key) {
            return Ok(v);
        }
        self.tally(y, l)?;
        Ok(self.values[&key])
    }

    /// `u_a u_b` over every class of the right dimension.
    pub fn product(&mut self, a: &HallElement, b: &HallElement) -> Result<HallElement> {
        let mut out = HallElement::new();
        for (x, &cx) in a {
            for (y, &cy) in b {
                let d = add_dims(&self.reg.class_dims(x), &self.reg.class_dims(y));
                let ls = self.reg.classes_with_dims(&d).map_err(|_| {
                    Error::BoundExceeded(format!("product u_{x} u_{y} lands in dimension {d:?} outside the bound"))
                })?;
                for l in ls {
                    let f = self.hall_number(x, y, &l)? as i128;
                    if f != 0 {
                        *out.entry(l).or_insert(0) += cx * cy * f;
                    }
                }
            }
        }
        out.retain(|_, v| *v != 0);
        Ok(out)
    }

    /// `|W_{XY}^L|`: pairs `(f, g)` with `f` monic, `g` epic and `gf = 0`.
    pub fn w_count(&mut self, x: &IsoClassId, y: &IsoClassId, l: &IsoClassId) -> Result<u128> {
        let key = (x.clone(), y.clone(), l.clone());
        if let Some(&v) = self.w_values.get(&key) {
            return Ok(v);
        }
        let reg = self.reg;
        let fld = reg.field();
        if add_dims(&reg.class_dims(x), &reg.class_dims(y)) != reg.class_dims(l) {
            return Ok(0);
        }
        let (xr, yr, lr) = (reg.class_rep(x), reg.class_rep(y), reg.class_rep(l));
        let fb = yr.hom_basis(&lr)?;
        let gb = lr.hom_basis(&xr)?;
        // the outer loop runs over Hom(Y, L); for each monic f the inner loop
        // only runs over maps killing f, so each loop is budgeted separately
        self.check_budget(fb.len(), &format!("W({x}, {y}, {l}) outer loop"))?;
        let ftemp = yr.zero_map(&lr);
        let gtemp = lr.zero_map(&xr);
        let mut total: u128 = 0;
        for c in VectorIter::new(fld, fb.len()) {
            let f = combine(fld, &fb, &c, &ftemp);
            if !is_monic(&yr, &f) {
                continue;
            }
            // g o f = 0 is linear in the coordinates of g
            let cols: Vec<Vec<u8>> = gb
                .iter()
                .map(|g| compose(fld, g, &f).iter().flat_map(|m| m.data().to_vec()).collect())
                .collect();
            let rows = cols.first().map_or(0, |v| v.len());
            let mut sys = Matrix::zeros(rows, gb.len());
            for (j, col) in cols.iter().enumerate() {
                for (i, &v) in col.iter().enumerate() {
                    sys.set(i, j, v);
                }
            }
            let ker = sys.kernel_basis(fld);
            self.check_budget(ker.cols(), &format!("W({x}, {y}, {l}) inner loop"))?;
            let kb: Vec<Vec<Matrix>> =
                (0..ker.cols()).map(|j| combine(fld, &gb, &ker.col(j), &gtemp)).collect();
            for cc in VectorIter::new(fld, kb.len()) {
                let g = combine(fld, &kb, &cc, &gtemp);
                if is_epic(&lr, &g) {
                    total += 1;
                }
            }
        }
        self.w_values.insert(key, total);
        Ok(total)
    }

    /// Associativity of the Hall product on all class 4-tuples of total dimension
    /// at most `max_total`.
    pub fn check_associativity(&mut self, max_total: usize) -> Result<CheckReport> {
        let reg = self.reg;
        let mut report = CheckReport::new("assoc");
        let classes = reg.classes_up_to_total_dim(max_total);
        for x in &classes {
            for y in &classes {
                for z in &classes {
                    let xy = add_dims(&reg.class_dims(x), &reg.class_dims(y));
                    let yz = add_dims(&reg.class_dims(y), &reg.class_dims(z));
                    let md = add_dims(&xy, &reg.class_dims(z));
                    if md.iter().sum::<usize>() > max_total {
                        continue;
                    }
                    let ls = reg.classes_with_dims(&xy)?;
                    let lps = reg.classes_with_dims(&yz)?;
                    for m in reg.classes_with_dims(&md)? {
                        let mut lhs: u128 = 0;
                        for l in &ls {
                            lhs += self.hall_number(x, y, l)? * self.hall_number(l, z, &m)?;
                        }
                        let mut rhs: u128 = 0;
                        for lp in &lps {
                            rhs += self.hall_number(x, lp, &m)? * self.hall_number(y, z, lp)?;
                        }
                        report.push(CheckRecord::exact(
                            "assoc",
                            format!("X={x} Y={y} Z={z} M={m}"),
                            lhs.to_string(),
                            rhs.to_string(),
                        ));
                    }
                }
            }
        }
        Ok(report)
    }

    /// `F_{XY}^L = F_{YX}^L mod (q-1)` for indecomposable `X != Y` and decomposable `L`.
    pub fn check_commutator_congruence(&mut self, max_total: usize) -> Result<CheckReport> {
        let reg = self.reg;
        let m = reg.field().q() as u64 - 1;
        let mut report = CheckReport::new("comm");
        if m == 1 {
            report.note("q = 2: every congruence modulo 1 holds vacuously".into());
        }
        for xi in 0..reg.len() {
            for yi in 0..reg.len() {
                let (x, y) = (IsoClassId::single(xi), IsoClassId::single(yi));
                if xi == yi {
                    report.skip(format!("X=Y={x}: trivial case"));
                    continue;
                }
                let d = add_dims(reg.dims(xi), reg.dims(yi));
                if d.iter().sum::<usize>() > max_total {
                    continue;
                }
                for l in reg.classes_with_dims(&d)? {
                    if l.is_indecomposable() {
                        continue;
                    }
                    let a = self.hall_number(&x, &y, &l)?;
                    let b = self.hall_number(&y, &x, &l)?;
                    report.push(CheckRecord::congruence(
                        "comm",
                        format!("X={x} Y={y} L={l}"),
                        reduce(a as i128, m),
                        reduce(b as i128, m),
                        m,
                    ));
                }
            }
        }
        Ok(report)
    }

    /// `|W_{XY}^L| = F_{XY}^L |Aut X| |Aut Y|` on every triple computed so far.
    pub fn check_freeness(&mut self) -> Result<CheckReport> {
        let mut report = CheckReport::new("freeness");
        let mut keys: Vec<Key> = self.values.keys().cloned().collect();
        keys.sort();
        for (x, y, l) in keys {
            let f = self.values[&(x.clone(), y.clone(), l.clone())];
            let w = self.w_count(&x, &y, &l)?;
            let rhs = f * self.reg.aut_order(&x)? * self.reg.aut_order(&y)?;
            report.push(CheckRecord::exact("freeness", format!("X={x} Y={y} L={l}"), w.to_string(), rhs.to_string()));
        }
        Ok(report)
    }

    /// `F_{XY}^{X+Y} = |Hom(Y, X)|` for non-isomorphic indecomposables.
    pub fn check_split_numbers(&mut self, max_total: usize) -> Result<CheckReport> {
        let reg = self.reg;
        let mut report = CheckReport::new("split");
        for xi in 0..reg.len() {
            for yi in 0..reg.len() {
                if xi == yi || reg.rep(xi).total_dim() + reg.rep(yi).total_dim() > max_total {
                    continue;
                }
                let (x, y) = (IsoClassId::single(xi), IsoClassId::single(yi));
                let l = x.plus(&y);
                let f = self.hall_number(&x, &y, &l)?;
                let hom = qpow(reg.field().q(), reg.hom_dim(yi, xi));
                report.push(CheckRecord::exact("split", format!("X={x} Y={y}"), f.to_string(), hom.to_string()));
            }
        }
        Ok(report)
    }

    /// All stored `(X, Y, L, F)` entries in canonical order.
    pub fn entries(&self) -> Vec<(IsoClassId, IsoClassId, IsoClassId, u128)> {
        let mut v: Vec<_> = self.values.iter().map(|((x, y, l), &f)| (x.clone(), y.clone(), l.clone(), f)).collect();
        v.sort();
        v
    }

    pub fn cache_header(&self) -> CacheHeader {
        let bound: Vec<String> = self.reg.bound().iter().map(|b| b.to_string()).collect();
        CacheHeader {
            kind: "hall".into(),
            digest: self.reg.quiver().digest(),
            q: self.reg.field().q(),
            bound: bound.join(","),
        }
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        let rows: Vec<String> = self.entries().into_iter().map(|(x, y, l, f)| format!("{x};{y};{l};{f}")).collect();
        cache::store(path, &self.cache_header(), "X;Y;L;F", &rows)
    }

    /// Merges a cache file; returns the number of rows, `Ok(0)` if absent.
    /// Any mismatch or corruption leaves the table untouched.
    pub fn load(&mut self, path: &Path) -> Result<usize> {
        let Some(rows) = cache::load(path, &self.cache_header(), "X;Y;L;F")? else {
            return Ok(0);
        };
        let mut parsed = Vec::with_capacity(rows.len());
        for r in &rows {
            let bad = || Error::Cache(format!("{}: unparsable row {}", path.display(), r.join(";")));
            let x = IsoClassId::parse(&r[0]).ok_or_else(bad)?;
            let y = IsoClassId::parse(&r[1]).ok_or_else(bad)?;
            let l = IsoClassId::parse(&r[2]).ok_or_else(bad)?;
            let f: u128 = r[3].parse().map_err(|_| bad())?;
            for c in [&x, &y, &l] {
                if c.0.iter().any(|&(i, _)| i >= self.reg.len()) {
                    return Err(bad());
                }
            }
            parsed.push(((x, y, l), f));
        }
        let n = parsed.len();
        self.values.extend(parsed);
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    fn a2(q: u64) -> ModuleRegistry {
        let f = make_field(q).unwrap();
        ModuleRegistry::full_dynkin(&f, &Arc::new(Quiver::linear_a(2)), 1 << 24).unwrap()
    }

    fn ids(r: &ModuleRegistry) -> (IsoClassId, IsoClassId, IsoClassId) {
        let s1 = IsoClassId::single(r.simple_index(0).unwrap());
        let s2 = IsoClassId::single(r.simple_index(1).unwrap());
        let p = IsoClassId::single((0..r.len()).find(|&i| r.dims(i) == [1, 1]).unwrap());
        (s1, s2, p)
    }

    #[test]
    fn a2_hall_numbers() {
        let r = a2(3);
        let (s1, s2, p) = ids(&r);
        let mut t = HallTable::new(&r);
        assert_eq!(t.hall_number(&s1, &s2, &p).unwrap(), 1);
        assert_eq!(t.hall_number(&s2, &s1, &p).unwrap(), 0);
        let split = s1.plus(&s2);
        assert_eq!(t.hall_number(&s1, &s2, &split).unwrap(), 1);
        assert_eq!(t.hall_number(&p, &IsoClassId::zero(), &p).unwrap(), 1);
        assert_eq!(t.hall_number(&IsoClassId::zero(), &p, &p).unwrap(), 1);
        // S1^2 has q+1 lines, each with quotient S1
        let s1s1 = s1.plus(&s1);
        assert_eq!(t.hall_number(&s1, &s1, &s1s1).unwrap(), 4);
    }

    #[test]
    fn a2_products() {
        let r = a2(3);
        let (s1, s2, p) = ids(&r);
        let mut t = HallTable::new(&r);
        let prod = t.product(&basis_element(&s1), &basis_element(&s2)).unwrap();
        assert_eq!(prod, BTreeMap::from([(s1.plus(&s2), 1), (p.clone(), 1)]));
        let prod = t.product(&basis_element(&s2), &basis_element(&s1)).unwrap();
        assert_eq!(prod, BTreeMap::from([(s1.plus(&s2), 1)]));
        let a = BTreeMap::from([(p.clone(), 2), (s1.clone(), -1)]);
        assert_eq!(t.product(&basis_element(&IsoClassId::zero()), &a).unwrap(), a);
        assert_eq!(t.product(&a, &basis_element(&IsoClassId::zero())).unwrap(), a);
    }

    #[test]
    fn small_sweeps_pass() {
        let r = a2(2);
        let mut t = HallTable::new(&r);
        assert!(t.check_associativity(3).unwrap().ok());
        assert!(t.check_freeness().unwrap().ok());
        assert!(t.check_split_numbers(2).unwrap().ok());
        let r3 = a2(3);
        let mut t3 = HallTable::new(&r3);
        let rep = t3.check_commutator_congruence(3).unwrap();
        assert!(rep.ok() && !rep.records.is_empty());
    }

    #[test]
    fn zero_associativity_instance() {
        let r = a2(3);
        let mut t = HallTable::new(&r);
        let z = IsoClassId::zero();
        let (s1, ..) = ids(&r);
        assert_eq!(t.hall_number(&z, &z, &z).unwrap(), 1);
        assert_eq!(t.hall_number(&z, &z, &s1).unwrap(), 0);
    }

    #[test]
    fn cache_round_trip() {
        let r = a2(3);
        let mut t = HallTable::new(&r);
        t.check_associativity(2).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hall.csv");
        t.store(&path).unwrap();
        let mut u = HallTable::new(&r);
        assert_eq!(u.load(&path).unwrap(), t.len());
        assert_eq!(u.entries(), t.entries());

        let other = ModuleRegistry::full_dynkin(&make_field(5).unwrap(), &Arc::new(Quiver::linear_a(2)), 1 << 20).unwrap();
        let mut v = HallTable::new(&other);
        assert!(matches!(v.load(&path), Err(Error::Cache(_))));
        assert!(v.is_empty());
    }
}
