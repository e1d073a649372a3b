//! The Lie algebra `g = h + n` over `Z/(q-1)` attached to the root category.
//!
//! `n` is free on the indecomposable objects, `h` is the lattice spanned by
//! `h~_X = h_X / d(X)` inside `Q^vertices`. Elements of `h` are stored in
//! coordinates of a Hermite basis of that lattice, so equality in `h/(q-1)h`
//! is coordinate-wise.
//!
//! Brackets of two objects of the same parity use module Hall numbers (for
//! shifted pairs via `F_{TX,TY}^{TL} = F_{XY}^L`); every other bracket uses
//! triangle orbit counts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hall_exact::HallTable;
use crate::hall_tri::TriHall;
use crate::modular::{exact_div, reduce};
use crate::registry::{IsoClassId, ModuleRegistry};
use crate::report::{CheckRecord, CheckReport};
use crate::root::{ObjClassId, RootCategory};

/// A full-rank description of a sublattice of `Z^n`, rows in Hermite normal form.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_generators(gens: &[Vec<i64>], n: usize) -> Self {
        let mut rows: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            loop {
                // row with the smallest nonzero entry in this column moves to position r
                let best = (r..rows.len()).filter(|&i| rows[i][col] != 0).min_by_key(|&i| rows[i][col].abs());
                let Some(b) = best else { break };
                rows.swap(r, b);
                let mut done = true;
                for i in r + 1..rows.len() {
                    if rows[i][col] != 0 {
                        let qt = rows[i][col] / rows[r][col];
                        let pr = rows[r].clone();
                        for (x, y) in rows[i].iter_mut().zip(&pr) {
                            *x -= qt * y;
                        }
                        if rows[i][col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    if rows[r][col] < 0 {
                        rows[r].iter_mut().for_each(|x| *x = -*x);
                    }
                    pivots.push(col);
                    r += 1;
                    break;
                }
            }
            rows.retain(|row| row.iter().any(|&x| x != 0));
            if r >= rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Lattice { basis: rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Integer coordinates of a lattice vector, `None` when outside the lattice.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut w = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p] % row[p] != 0 {
                return None;
            }
            let c = w[p] / row[p];
            for (x, y) in w.iter_mut().zip(row) {
                *x -= c * y;
            }
            out.push(c);
        }
        w.iter().all(|&x| x == 0).then_some(out)
    }
}

/// An element of `g / (q-1) g`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    /// Coordinates over the lattice basis of `h`, reduced.
    pub h: Vec<u64>,
    /// Coefficients of `u_X` for indecomposable objects `X`, reduced and nonzero.
    pub n: BTreeMap<ObjClassId, u64>,
}

impl LieElement {
    pub fn is_zero(&self) -> bool {
        self.h.iter().all(|&c| c == 0) && self.n.is_empty()
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.h.iter().enumerate() {
            if c != 0 {
                terms.push(format!("{c}*h{k}"));
            }
        }
        for (x, &c) in &self.n {
            terms.push(format!("{c}*u[{x}]"));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A generator of `g`: some `u_X`, or a basis element of `h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    U(ObjClassId),
    H(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::U(x) => write!(f, "u[{x}]"),
            Generator::H(k) => write!(f, "h{k}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootMultiplicity {
    pub class: Vec<i64>,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct JacobiSummary {
    pub triples_checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct SweepSummary {
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub quiver: String,
    pub q: usize,
    pub modulus: u64,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub rank_h: usize,
    pub rank_n: usize,
    pub total_rank: usize,
    pub root_multiplicities: Vec<RootMultiplicity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobi: Option<JacobiSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_form: Option<SweepSummary>,
}

pub struct LieAlgebra<'r> {
    reg: &'r ModuleRegistry,
    tri: TriHall<'r>,
    hall: HallTable<'r>,
    m: u64,
    /// Common denominator of the `h~_X`; vectors of `h` are stored scaled by it.
    den: i64,
    lattice: Lattice,
    /// `(b_k | h_Y)` for each basis vector `b_k` and indecomposable object `Y`.
    pairing: HashMap<ObjClassId, Vec<i64>>,
    objects: Vec<ObjClassId>,
    brackets: HashMap<(ObjClassId, ObjClassId), LieElement>,
    /// Use module Hall numbers for same-parity brackets.
    pub fast_path: bool,
}

fn lcm(a: i64, b: i64) -> i64 {
    a / crate::modular::gcd(a as i128, b as i128) as i64 * b
}

impl<'r> LieAlgebra<'r> {
    pub fn new(reg: &'r ModuleRegistry) -> Result<Self> {
        let n = reg.quiver().n_vertices();
        let den = (0..reg.len()).map(|i| reg.d(i) as i64).fold(1, lcm);
        let gens: Vec<Vec<i64>> =
            (0..reg.len()).map(|i| reg.dims(i).iter().map(|&x| x as i64 * den / reg.d(i) as i64).collect()).collect();
        let lattice = Lattice::from_generators(&gens, n);
        let rc = RootCategory::new(reg);
        let objects = rc.indecomposable_classes();
        let mut la = LieAlgebra {
            reg,
            tri: TriHall::new(rc),
            hall: HallTable::new(reg),
            m: reg.field().q() as u64 - 1,
            den,
            lattice,
            pairing: HashMap::new(),
            objects,
            brackets: HashMap::new(),
            fast_path: true,
        };
        for y in la.objects.clone() {
            let hy = la.groth(&y);
            let mut row = Vec::with_capacity(la.lattice.rank());
            for b in la.lattice.basis() {
                let v = la.euler_sym(b, &hy);
                row.push(exact_div(v as i128, den as i128, "pairing of a lattice basis vector")? as i64);
            }
            la.pairing.insert(y, row);
        }
        Ok(la)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
    pub fn registry(&self) -> &'r ModuleRegistry {
        self.reg
    }
    pub fn tri(&mut self) -> &mut TriHall<'r> {
        &mut self.tri
    }
    pub fn hall(&mut self) -> &mut HallTable<'r> {
        &mut self.hall
    }
    pub fn objects(&self) -> &[ObjClassId] {
        &self.objects
    }
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut g: Vec<Generator> = self.objects.iter().cloned().map(Generator::U).collect();
        g.extend((0..self.lattice.rank()).map(Generator::H));
        g
    }

    fn groth(&self, x: &ObjClassId) -> Vec<i64> {
        let mut v = vec![0i64; self.reg.quiver().n_vertices()];
        for &(i, p, mult) in &x.0 {
            let s = if p == 0 { 1 } else { -1 };
            for (a, &d) in v.iter_mut().zip(self.reg.dims(i)) {
                *a += s * (mult * d) as i64;
            }
        }
        v
    }

    fn euler_sym(&self, a: &[i64], b: &[i64]) -> i64 {
        self.reg.quiver().symmetric_euler_form(a, b)
    }

    fn d_of(&self, x: &ObjClassId) -> usize {
        self.reg.d(x.0[0].0)
    }

    // ---- the form ----

    /// `(h_X | h_Y)` as the alternating sum of Hom dimensions in the root category.
    pub fn symmetric_form(&mut self, x: &ObjClassId, y: &ObjClassId) -> Result<i64> {
        let rc = self.tri.rc();
        let (xo, yo) = (rc.object(x)?, rc.object(y)?);
        let (tx, ty) = (rc.shift_obj(xo), rc.shift_obj(yo));
        Ok(rc.hom_dim(xo, yo) as i64 - rc.hom_dim(xo, ty) as i64 + rc.hom_dim(yo, xo) as i64 - rc.hom_dim(yo, tx) as i64)
    }

    /// `(h~_X | h_Y)`, asserting integrality.
    pub fn tilde_form(&mut self, x: &ObjClassId, y: &ObjClassId) -> Result<i64> {
        let v = self.symmetric_form(x, y)?;
        Ok(exact_div(v as i128, self.d_of(x) as i128, "(h~_X | h_Y)")? as i64)
    }

    // ---- elements ----

    pub fn zero(&self) -> LieElement {
        LieElement { h: vec![0; self.lattice.rank()], n: BTreeMap::new() }
    }

    pub fn u(&self, x: &ObjClassId) -> LieElement {
        let mut e = self.zero();
        e.n.insert(x.clone(), 1 % self.m.max(1));
        self.normalize(e)
    }

    /// Lattice coordinates of a scaled vector of `h`.
    fn h_coords(&self, scaled: &[i64]) -> Result<Vec<i64>> {
        self.lattice.coords(scaled).ok_or_else(|| Error::Inconsistency("vector outside the lattice h".into()))
    }

    /// `h~_X` for an indecomposable object.
    pub fn h_tilde(&self, x: &ObjClassId) -> Result<LieElement> {
        let d = self.d_of(x) as i64;
        let scaled: Vec<i64> = self.groth(x).iter().map(|&v| v * self.den / d).collect();
        let c = self.h_coords(&scaled)?;
        let mut e = self.zero();
        e.h = c.iter().map(|&v| reduce(v as i128, self.m)).collect();
        Ok(e)
    }

    pub fn basis_h(&self, k: usize) -> LieElement {
        let mut e = self.zero();
        e.h[k] = 1 % self.m.max(1);
        e
    }

    pub fn generator(&self, g: &Generator) -> LieElement {
        match g {
            Generator::U(x) => self.u(x),
            Generator::H(k) => self.basis_h(*k),
        }
    }

    fn normalize(&self, mut e: LieElement) -> LieElement {
        let m = self.m;
        e.h.iter_mut().for_each(|c| *c %= m);
        e.n.retain(|_, c| {
            *c %= m;
            *c != 0
        });
        e
    }

    pub fn add(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut e = a.clone();
        for (x, y) in e.h.iter_mut().zip(&b.h) {
            *x = (*x + y) % self.m;
        }
        for (k, &c) in &b.n {
            *e.n.entry(k.clone()).or_insert(0) += c;
        }
        self.normalize(e)
    }

    pub fn scale(&self, c: i128, a: &LieElement) -> LieElement {
        let c = reduce(c, self.m) as u128;
        let m = self.m as u128;
        let mut e = a.clone();
        e.h.iter_mut().for_each(|x| *x = ((*x as u128 * c) % m) as u64);
        e.n.iter_mut().for_each(|(_, x)| *x = ((*x as u128 * c) % m) as u64);
        self.normalize(e)
    }

    pub fn sub(&self, a: &LieElement, b: &LieElement) -> LieElement {
        self.add(a, &self.scale(-1, b))
    }

    /// `(h | h_Y)` for `h` in lattice coordinates.
    fn pair_h(&self, h: &[u64], y: &ObjClassId) -> u64 {
        let row = &self.pairing[y];
        let s: i128 = h.iter().zip(row).map(|(&a, &b)| a as i128 * b as i128).sum();
        reduce(s, self.m)
    }

    // ---- brackets ----

    /// `F_{XY}^L` by the configured backend.
    pub fn hall_number(&mut self, x: &ObjClassId, y: &ObjClassId, l: &ObjClassId) -> Result<u128> {
        if self.fast_path {
            if let Some((xm, ym, lm)) = same_parity_modules(x, y, l) {
                return self.hall.hall_number(&xm, &ym, &lm);
            }
        }
        self.tri.orbit_count_f(x, y, l)
    }

    /// Indecomposable `L` with possibly nonzero `F_{XY}^L` or `F_{YX}^L`.
    fn bracket_support(&mut self, x: &ObjClassId, y: &ObjClassId) -> Result<BTreeSet<ObjClassId>> {
        if self.fast_path {
            if let (Some(xm), Some(ym)) = (x.as_module(), y.as_module()) {
                let d: Vec<usize> = self.reg.class_dims(&xm).iter().zip(self.reg.class_dims(&ym)).map(|(a, b)| a + b).collect();
                return Ok(self.indecomposable_modules_with_dims(&d, 0));
            }
            if let (Some(xm), Some(ym)) = (x.shift().as_module(), y.shift().as_module()) {
                let d: Vec<usize> = self.reg.class_dims(&xm).iter().zip(self.reg.class_dims(&ym)).map(|(a, b)| a + b).collect();
                return Ok(self.indecomposable_modules_with_dims(&d, 1));
            }
        }
        let mut s = self.tri.middle_classes(x, y)?;
        s.extend(self.tri.middle_classes(y, x)?);
        s.retain(ObjClassId::is_indecomposable);
        Ok(s)
    }

    fn indecomposable_modules_with_dims(&self, d: &[usize], parity: u8) -> BTreeSet<ObjClassId> {
        (0..self.reg.len()).filter(|&i| self.reg.dims(i) == d).map(|i| ObjClassId::indecomposable(i, parity)).collect()
    }

    /// `[u_X, u_Y]`.
    pub fn bracket_u(&mut self, x: &ObjClassId, y: &ObjClassId) -> Result<LieElement> {
        let key = (x.clone(), y.clone());
        if let Some(e) = self.brackets.get(&key) {
            return Ok(e.clone());
        }
        let e = if *x == y.shift() {
            self.h_tilde(x)?
        } else {
            let mut e = self.zero();
            for l in self.bracket_support(x, y)? {
                let c = self.hall_number(x, y, &l)? as i128 - self.hall_number(y, x, &l)? as i128;
                let r = reduce(c, self.m);
                if r != 0 {
                    e.n.insert(l, r);
                }
            }
            e
        };
        self.brackets.insert(key, e.clone());
        Ok(e)
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&mut self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        let mut out = self.zero();
        // [h, u_Y] = -(h | h_Y) u_Y and [u_X, h] = (h | h_X) u_X
        for (y, &c) in &b.n {
            let p = self.pair_h(&a.h, y) as i128;
            out = self.add(&out, &self.scale(-(p * c as i128), &self.u(y)));
        }
        for (x, &c) in &a.n {
            let p = self.pair_h(&b.h, x) as i128;
            out = self.add(&out, &self.scale(p * c as i128, &self.u(x)));
        }
        for (x, &cx) in &a.n {
            for (y, &cy) in &b.n {
                let br = self.bracket_u(x, y)?;
                out = self.add(&out, &self.scale(cx as i128 * cy as i128, &br));
            }
        }
        Ok(out)
    }

    /// `[[a,b],c] - [[a,c],b] - [[c,b],a]`.
    pub fn jacobiator(&mut self, a: &LieElement, b: &LieElement, c: &LieElement) -> Result<LieElement> {
        let ab = self.bracket(a, b)?;
        let t1 = self.bracket(&ab, c)?;
        let ac = self.bracket(a, c)?;
        let t2 = self.bracket(&ac, b)?;
        let cb = self.bracket(c, b)?;
        let t3 = self.bracket(&cb, a)?;
        Ok(self.sub(&self.sub(&t1, &t2), &t3))
    }

    fn zero_record(&self, check: &str, inst: String, e: &LieElement) -> CheckRecord {
        CheckRecord {
            check: check.into(),
            instance: inst,
            lhs: e.to_string().into(),
            rhs: "0".into(),
            modulus: Some(self.m),
            ok: e.is_zero(),
            vacuous: self.m == 1,
        }
    }

    // ---- checks ----

    /// Jacobi identity on every ordered triple of generators.
    pub fn check_jacobi(&mut self) -> Result<CheckReport> {
        let mut rep = CheckReport::new("jacobi");
        let gens = self.generators();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let (ea, eb, ec) = (self.generator(a), self.generator(b), self.generator(c));
                    let j = self.jacobiator(&ea, &eb, &ec)?;
                    rep.push(self.zero_record("jacobi", format!("{a},{b},{c}"), &j));
                }
            }
        }
        Ok(rep)
    }

    /// Antisymmetry and grading of `[u_X, u_Y]` on all generator pairs.
    pub fn check_bracket_properties(&mut self) -> Result<CheckReport> {
        let mut rep = CheckReport::new("bracket");
        let objs = self.objects.clone();
        for x in &objs {
            for y in &objs {
                let a = self.bracket_u(x, y)?;
                let b = self.bracket_u(y, x)?;
                let s = self.add(&a, &b);
                rep.push(self.zero_record("antisymmetry", format!("X={x} Y={y}"), &s));
                let target: Vec<i64> = self.groth(x).iter().zip(self.groth(y)).map(|(p, q)| p + q).collect();
                let graded = a.n.keys().all(|l| self.groth(l) == target);
                rep.push(CheckRecord::exact("grading", format!("X={x} Y={y}"), graded, true));
            }
        }
        Ok(rep)
    }

    /// `F_{XY}^L - F_{YX}^L = 0` for decomposable or zero `L`.
    pub fn check_decomposable_cancellation(&mut self) -> Result<CheckReport> {
        let mut rep = CheckReport::new("decomposable-cancellation");
        let objs = self.objects.clone();
        for x in &objs {
            for y in &objs {
                let mut ls = self.tri.middle_classes(x, y)?;
                ls.extend(self.tri.middle_classes(y, x)?);
                for l in ls.iter().filter(|l| !l.is_indecomposable()) {
                    let a = self.tri.orbit_count_f(x, y, l)? as i128;
                    let b = self.tri.orbit_count_f(y, x, l)? as i128;
                    rep.push(CheckRecord::congruence("decomposable-cancellation", format!("X={x} Y={y} L={l}"), reduce(a - b, self.m), 0, self.m));
                }
            }
        }
        Ok(rep)
    }

    /// Fast-path brackets against brute-force triangle counts on every pair.
    pub fn check_oracle_agreement(&mut self) -> Result<CheckReport> {
        let mut rep = CheckReport::new("oracle");
        let objs = self.objects.clone();
        let saved = std::mem::take(&mut self.brackets);
        let mut fast = HashMap::new();
        self.fast_path = true;
        for x in &objs {
            for y in &objs {
                fast.insert((x.clone(), y.clone()), self.bracket_u(x, y)?);
            }
        }
        self.brackets.clear();
        self.fast_path = false;
        for x in &objs {
            for y in &objs {
                let slow = self.bracket_u(x, y)?;
                let f = &fast[&(x.clone(), y.clone())];
                rep.push(CheckRecord::exact("oracle", format!("X={x} Y={y}"), f.to_string(), slow.to_string()));
            }
        }
        self.brackets = saved;
        self.fast_path = true;
        Ok(rep)
    }

    /// Descent of the form: Hom-dimension sums agree with the symmetric Euler
    /// form on Grothendieck classes, and `(h~_X | h_Y)` is integral.
    pub fn check_form(&mut self) -> Result<CheckReport> {
        let mut rep = CheckReport::new("form");
        let objs = self.objects.clone();
        for x in &objs {
            for y in &objs {
                let v = self.symmetric_form(x, y)?;
                let e = self.euler_sym(&self.groth(x), &self.groth(y));
                rep.push(CheckRecord::exact("form-descent", format!("X={x} Y={y}"), v, e));
                let d = self.d_of(x) as i64;
                rep.push(CheckRecord::exact("form-integral", format!("X={x} Y={y}"), v % d == 0, true));
            }
        }
        Ok(rep)
    }

    /// For triples with `h_X + h_Y + h_Z = 0` the `h`-components of the Jacobi
    /// sum cancel; also checks triangle locality on one triangle per orbit of
    /// `W_{XY}^{TZ}`.
    pub fn check_h_cancellation(&mut self) -> Result<CheckReport> {
        let mut rep = CheckReport::new("h-cancellation");
        let objs = self.objects.clone();
        let zero_vec = vec![0i64; self.reg.quiver().n_vertices()];
        for x in &objs {
            for y in &objs {
                for z in &objs {
                    let s: Vec<i64> = (0..zero_vec.len()).map(|k| self.groth(x)[k] + self.groth(y)[k] + self.groth(z)[k]).collect();
                    if s != zero_vec || *x == z.shift() || *y == z.shift() || *x == y.shift() {
                        continue;
                    }
                    let f = |la: &mut Self, a: &ObjClassId, b: &ObjClassId, c: &ObjClassId| -> Result<i128> {
                        let tc = c.shift();
                        Ok(la.tri.orbit_count_f(a, b, &tc)? as i128 - la.tri.orbit_count_f(b, a, &tc)? as i128)
                    };
                    let cz = -f(self, x, y, z)?;
                    let cy = f(self, x, z, y)?;
                    let cx = f(self, z, y, x)?;
                    let (hx, hy, hz) = (self.h_tilde(x)?, self.h_tilde(y)?, self.h_tilde(z)?);
                    let comb = self.add(&self.add(&self.scale(cz, &hz), &self.scale(cy, &hy)), &self.scale(cx, &hx));
                    rep.push(self.zero_record("h-cancellation", format!("X={x} Y={y} Z={z}"), &comb));
                    self.check_triangle_locality(&mut rep, x, y, &z.shift())?;
                }
            }
        }
        if rep.records.is_empty() {
            rep.note("no triple of indecomposables with h_X + h_Y + h_Z = 0 in range; vacuous".into());
        }
        Ok(rep)
    }

    /// `End t` local with `d(t)` dividing the `d` of all three objects, for one
    /// triangle in each orbit of `W_{XY}^L`.
    pub fn check_triangle_locality(&mut self, rep: &mut CheckReport, x: &ObjClassId, y: &ObjClassId, l: &ObjClassId) -> Result<()> {
        if ![x, y, l].iter().all(|c| c.is_indecomposable()) {
            rep.skip(format!("X={x} Y={y} L={l}: endpoints not all indecomposable"));
            return Ok(());
        }
        let (set, reps) = self.tri.orbit_representatives(x, y, l)?;
        for (k, &i) in reps.iter().enumerate() {
            let inst = format!("X={x} Y={y} L={l} orbit={k}");
            let te = self.tri.triangle_endomorphisms(&set, &set.triples[i])?;
            rep.push(CheckRecord::exact("triangle-end-local", inst.clone(), te.local, true));
            if te.local {
                let dt = te.d();
                let ds: Vec<usize> = [x, y, l].iter().map(|c| self.d_of(c)).collect();
                let ok = ds.iter().all(|&d| dt > 0 && d % dt == 0);
                rep.push(CheckRecord::exact("triangle-end-divides", format!("{inst} d(t)={dt} d={ds:?}"), ok, true));
            }
        }
        Ok(())
    }

    /// Both invariance congruences on generator triples, and
    /// `d(X) F_{XY}^{TZ} = d(Z) F_{YZ}^{TX}`.
    pub fn check_invariant_form(&mut self) -> Result<CheckReport> {
        let mut rep = CheckReport::new("invariant-form");
        let m = self.m;
        let objs = self.objects.clone();
        for x in &objs {
            let hx = self.h_tilde(x)?;
            for y in &objs {
                for z in &objs {
                    let inst = format!("X={x} Y={y} Z={z}");
                    let (dx, dz) = (self.d_of(x) as i128, self.d_of(z) as i128);
                    // (h~_X | [u_Y,u_Z]) d(Z) against -([h~_X, u_Y] | u_Z)
                    let yz = self.bracket_u(y, z)?;
                    // the h-part of [u_Y,u_Z] is h~_Y exactly when Y = TZ, and d(Y) = d(Z) then
                    let lhs1 = if *y == z.shift() { self.tilde_form(x, y)? as i128 } else { 0 };
                    let hxy = self.bracket(&hx, &self.u(y))?;
                    let rhs1 = -(self.u_pairing(&hxy, z) as i128);
                    rep.push(CheckRecord::congruence("invariance-h", inst.clone(), reduce(lhs1, m), reduce(rhs1, m), m));
                    // d(X) ([u_X,u_Y] | u_Z) against (u_X | [u_Y,u_Z]) d(Z)
                    let xy = self.bracket_u(x, y)?;
                    let lhs2 = dx * self.u_pairing(&xy, z) as i128;
                    let rhs2 = self.u_pairing(&yz, x) as i128 * dz;
                    rep.push(CheckRecord::congruence("invariance-u", inst.clone(), reduce(lhs2, m), reduce(rhs2, m), m));
                    let a = dx * self.tri.orbit_count_f(x, y, &z.shift())? as i128;
                    let b = dz * self.tri.orbit_count_f(y, z, &x.shift())? as i128;
                    rep.push(CheckRecord::congruence("dF-identity", inst, reduce(a, m), reduce(b, m), m));
                }
            }
        }
        Ok(rep)
    }

    /// `(e | u_Z)`: the coefficient of `u_{TZ}` in `e`.
    fn u_pairing(&self, e: &LieElement, z: &ObjClassId) -> u64 {
        e.n.get(&z.shift()).copied().unwrap_or(0)
    }

    /// The two ways the Jacobi sum can produce `u_M`: for three objects with
    /// no shift pair among them the coefficient `c_M` vanishes, and in
    /// `-[[u_X,u_Z],u_TX] - [[u_Z,u_TX],u_X]` the coefficient of `u_Z` is
    /// `(h~_X | h_Z)`.
    pub fn check_jacobi_components(&mut self) -> Result<CheckReport> {
        let mut rep = CheckReport::new("jacobi-components");
        let m = self.m;
        let objs = self.objects.clone();
        for x in &objs {
            for y in &objs {
                for z in &objs {
                    if *x == z.shift() || *y == z.shift() || *x == y.shift() {
                        continue;
                    }
                    let target: Vec<i64> = (0..self.reg.quiver().n_vertices())
                        .map(|k| self.groth(x)[k] + self.groth(y)[k] + self.groth(z)[k])
                        .collect();
                    for mm in objs.iter().filter(|o| self.groth(o) == target).cloned().collect::<Vec<_>>() {
                        let perms = [(x, y, z, 1i128), (y, z, x, 1), (z, x, y, 1), (y, x, z, -1), (z, y, x, -1), (x, z, y, -1)];
                        let mut c = 0i128;
                        for (a, b, cc, s) in perms {
                            c += s * self.delta(a, b, cc, &mm)?;
                        }
                        rep.push(CheckRecord::congruence("n-part-cancellation", format!("X={x} Y={y} Z={z} M={mm}"), reduce(c, m), 0, m));
                    }
                }
            }
        }
        for x in &objs {
            for z in &objs {
                if x == z || *x == z.shift() {
                    continue;
                }
                let (ux, uz, utx) = (self.u(x), self.u(z), self.u(&x.shift()));
                let xz = self.bracket(&ux, &uz)?;
                let t1 = self.bracket(&xz, &utx)?;
                let ztx = self.bracket(&uz, &utx)?;
                let t2 = self.bracket(&ztx, &ux)?;
                let total = self.scale(-1, &self.add(&t1, &t2));
                let coeff = total.n.get(z).copied().unwrap_or(0);
                let expect = reduce(self.tilde_form(x, z)? as i128, m);
                rep.push(CheckRecord::congruence("shift-pair-coefficient", format!("X={x} Z={z}"), coeff, expect, m));
            }
        }
        Ok(rep)
    }

    /// `sum_L F_{XY}^L F_{LZ}^M - sum_L F_{XL}^M F_{YZ}^L` over all classes `L`.
    fn delta(&mut self, x: &ObjClassId, y: &ObjClassId, z: &ObjClassId, mm: &ObjClassId) -> Result<i128> {
        let mut s = 0i128;
        for l in self.tri.middle_classes(x, y)? {
            s += self.tri.orbit_count_f(x, y, &l)? as i128 * self.tri.orbit_count_f(&l, z, mm)? as i128;
        }
        for l in self.tri.middle_classes(y, z)? {
            s -= self.tri.orbit_count_f(x, &l, mm)? as i128 * self.tri.orbit_count_f(y, z, &l)? as i128;
        }
        Ok(s)
    }

    /// Cartan matrix, ranks and root multiplicities; optionally the Jacobi and
    /// invariant-form sweeps.
    pub fn structure_report(&mut self, with_sweeps: bool) -> Result<StructureReport> {
        let n = self.reg.quiver().n_vertices();
        let simples: Vec<ObjClassId> = (0..n)
            .map(|v| {
                self.reg
                    .simple_index(v)
                    .map(|i| ObjClassId::indecomposable(i, 0))
                    .ok_or_else(|| Error::BoundExceeded(format!("simple at vertex {v} outside the registry")))
            })
            .collect::<Result<_>>()?;
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                cartan[i][j] = self.tilde_form(&simples[i], &simples[j])?;
            }
        }
        let mut mult: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for i in 0..self.reg.len() {
            *mult.entry(self.reg.dims(i).iter().map(|&d| d as i64).collect()).or_insert(0) += 1;
        }
        let root_multiplicities = mult.into_iter().map(|(class, count)| RootMultiplicity { class, count }).collect();
        let rank_h = self.lattice.rank();
        let rank_n = self.objects.len();
        let (jacobi, invariant_form) = if with_sweeps {
            let j = self.check_jacobi()?.summary();
            let f = self.check_invariant_form()?.summary();
            (
                Some(JacobiSummary { triples_checked: j.checked, violations: j.violations }),
                Some(SweepSummary { checked: f.checked, violations: f.violations }),
            )
        } else {
            (None, None)
        };
        Ok(StructureReport {
            quiver: self.reg.quiver().name().to_string(),
            q: self.reg.field().q(),
            modulus: self.m,
            cartan_matrix: cartan,
            rank_h,
            rank_n,
            total_rank: rank_h + rank_n,
            root_multiplicities,
            jacobi,
            invariant_form,
        })
    }
}

/// Module classes when `X`, `Y`, `L` are all modules or all shifted modules.
fn same_parity_modules(x: &ObjClassId, y: &ObjClassId, l: &ObjClassId) -> Option<(IsoClassId, IsoClassId, IsoClassId)> {
    if let (Some(a), Some(b), Some(c)) = (x.as_module(), y.as_module(), l.as_module()) {
        return Some((a, b, c));
    }
    let (a, b, c) = (x.shift().as_module()?, y.shift().as_module()?, l.shift().as_module()?);
    Some((a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    fn reg(n: usize, q: u64) -> ModuleRegistry {
        let f = make_field(q).unwrap();
        ModuleRegistry::full_dynkin(&f, &Arc::new(Quiver::linear_a(n)), 1 << 22).unwrap()
    }

    fn ob(reg: &ModuleRegistry, dims: &[usize], parity: u8) -> ObjClassId {
        ObjClassId::indecomposable((0..reg.len()).find(|&i| reg.dims(i) == dims).unwrap(), parity)
    }

    #[test]
    fn hermite_lattice() {
        let l = Lattice::from_generators(&[vec![2, 2], vec![0, 2], vec![4, 6]], 2);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.coords(&[2, 4]), Some(vec![1, 1]));
        assert_eq!(l.coords(&[1, 0]), None);
        let l = Lattice::from_generators(&[vec![1, 0], vec![0, 1], vec![1, 1]], 2);
        assert_eq!(l.basis(), &[vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn a2_form_and_brackets() {
        let r = reg(2, 3);
        let mut la = LieAlgebra::new(&r).unwrap();
        let (s1, s2, p) = (ob(&r, &[1, 0], 0), ob(&r, &[0, 1], 0), ob(&r, &[1, 1], 0));
        assert_eq!(la.symmetric_form(&s1, &s1).unwrap(), 2);
        assert_eq!(la.symmetric_form(&s1, &s2).unwrap(), -1);
        assert_eq!(la.symmetric_form(&s1, &s1.shift()).unwrap(), -2);
        assert_eq!(la.bracket_u(&s1, &s2).unwrap(), la.u(&p));
        assert_eq!(la.bracket_u(&s1, &s1.shift()).unwrap(), la.h_tilde(&s1).unwrap());
        let h1 = la.h_tilde(&s1).unwrap();
        let us2 = la.u(&s2);
        assert_eq!(la.bracket(&h1, &us2).unwrap(), us2);
        let rep = la.structure_report(false).unwrap();
        assert_eq!(rep.cartan_matrix, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(rep.total_rank, 8);
    }

    #[test]
    fn a1_jacobi_and_oracle() {
        let r = reg(1, 3);
        let mut la = LieAlgebra::new(&r).unwrap();
        let j = la.check_jacobi().unwrap();
        assert_eq!(j.records.len(), 27);
        assert!(j.ok());
        assert!(la.check_oracle_agreement().unwrap().ok());
        assert!(la.check_h_cancellation().unwrap().records.is_empty());
        let rep = la.structure_report(false).unwrap();
        assert_eq!((rep.cartan_matrix.clone(), rep.total_rank), (vec![vec![2]], 3));
    }
}
