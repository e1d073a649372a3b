//! Finite acyclic quivers, their JSON description and canonical digest.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A path in the quiver, as a sequence of arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
struct ArrowDoc {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<ArrowDoc>,
}

impl Quiver {
    /// Validates ids and rejects oriented cycles (loops included).
    pub fn new(name: &str, vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Quiver(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut seen = HashMap::new();
        let mut arr = Vec::with_capacity(arrows.len());
        for (id, s, t) in arrows {
            if seen.insert(id.clone(), ()).is_some() {
                return Err(Error::Quiver(format!("duplicate arrow id {id:?}")));
            }
            let src = *index.get(&s).ok_or_else(|| Error::Quiver(format!("arrow {id:?}: unknown source {s:?}")))?;
            let tgt = *index.get(&t).ok_or_else(|| Error::Quiver(format!("arrow {id:?}: unknown target {t:?}")))?;
            arr.push(Arrow { id, src, tgt });
        }
        let q = Quiver { name: name.to_string(), vertices, arrows: arr };
        if let Some(cycle) = q.find_cycle() {
            return Err(Error::Cycle(cycle.into_iter().map(|v| q.vertices[v].clone()).collect()));
        }
        Ok(q)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: QuiverDoc = serde_json::from_str(text)?;
        Self::new(&doc.name, doc.vertices, doc.arrows.into_iter().map(|a| (a.id, a.src, a.tgt)).collect())
    }

    pub fn to_json(&self) -> String {
        let doc = QuiverDoc {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    id: a.id.clone(),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("quiver document serializes")
    }

    /// Linearly oriented `A_n`: `1 -> 2 -> .. -> n`.
    pub fn linear_a(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())).collect();
        Self::new(&format!("A{n}"), vertices, arrows).expect("A_n is acyclic")
    }

    /// Two arrows `1 => 2`.
    pub fn kronecker() -> Self {
        Self::new(
            "Kronecker",
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into()), ("b".into(), "1".into(), "2".into())],
        )
        .expect("Kronecker quiver is acyclic")
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// SHA-256 of the sorted-key, sorted-array JSON form.
    pub fn digest(&self) -> String {
        let mut verts = self.vertices.clone();
        verts.sort();
        let mut arrows: Vec<BTreeMap<&str, &str>> = self
            .arrows
            .iter()
            .map(|a| {
                BTreeMap::from([
                    ("id", a.id.as_str()),
                    ("src", self.vertices[a.src].as_str()),
                    ("tgt", self.vertices[a.tgt].as_str()),
                ])
            })
            .collect();
        arrows.sort();
        let canon = serde_json::json!({ "arrows": arrows, "name": self.name, "vertices": verts });
        hex::encode(Sha256::digest(canon.to_string().as_bytes()))
    }

    fn find_cycle(&self) -> Option<Vec<usize>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.vertices.len();
        let mut state = vec![0u8; n];
        let mut stack = Vec::new();
        fn dfs(q: &Quiver, v: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
            state[v] = 1;
            stack.push(v);
            for a in q.arrows.iter().filter(|a| a.src == v) {
                match state[a.tgt] {
                    1 => {
                        let pos = stack.iter().position(|&x| x == a.tgt).unwrap();
                        return Some(stack[pos..].to_vec());
                    }
                    0 => {
                        if let Some(c) = dfs(q, a.tgt, state, stack) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            stack.pop();
            state[v] = 2;
            None
        }
        (0..n).find_map(|v| if state[v] == 0 { dfs(self, v, &mut state, &mut stack) } else { None })
    }

    /// Vertices ordered so that every arrow goes forward.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.first().copied() {
            ready.remove(0);
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    let pos = ready.partition_point(|&x| x < a.tgt);
                    ready.insert(pos, a.tgt);
                }
            }
        }
        order
    }

    /// All paths starting at `i`, trivial path first, then by length.
    pub fn paths_from(&self, i: usize) -> Vec<Path> {
        let mut out = vec![Path { start: i, end: i, arrows: vec![] }];
        let mut frontier = 0;
        while frontier < out.len() {
            let p = out[frontier].clone();
            for (ai, a) in self.arrows.iter().enumerate() {
                if a.src == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    out.push(Path { start: i, end: a.tgt, arrows });
                }
            }
            frontier += 1;
        }
        out
    }

    /// Euler form `<m, n> = sum_i m_i n_i - sum_{a: i -> j} m_i n_j`.
    pub fn euler_form(&self, m: &[i64], n: &[i64]) -> i64 {
        let diag: i64 = m.iter().zip(n).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|a| m[a.src] * n[a.tgt]).sum();
        diag - off
    }

    pub fn symmetric_euler_form(&self, m: &[i64], n: &[i64]) -> i64 {
        self.euler_form(m, n) + self.euler_form(n, m)
    }

    /// Positive definiteness of the symmetrized Euler form: every component is
    /// of Dynkin type, so there are finitely many indecomposables.
    pub fn is_dynkin(&self) -> bool {
        let n = self.vertices.len();
        let mut c = vec![vec![0i128; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for a in &self.arrows {
            c[a.src][a.tgt] -= 1;
            c[a.tgt][a.src] -= 1;
        }
        (1..=n).all(|k| bareiss_det(&c, k) > 0)
    }
}

/// Determinant of the leading `k x k` minor, fraction-free.
fn bareiss_det(m: &[Vec<i128>], k: usize) -> i128 {
    let mut a: Vec<Vec<i128>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if a[i][i] == 0 {
            let Some(r) = (i + 1..k).find(|&r| a[r][i] != 0) else { return 0 };
            a.swap(i, r);
            sign = -sign;
        }
        for r in i + 1..k {
            for c in i + 1..k {
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
            }
        }
        prev = a[i][i];
    }
    sign * a[k - 1][k - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let a2 = Quiver::parse(r#"{"name":"A2","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"}]}"#)
            .unwrap();
        assert_eq!((a2.n_vertices(), a2.arrows().len()), (2, 1));
        let kr = Quiver::parse(
            r#"{"name":"K","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"1","tgt":"2"}]}"#,
        )
        .unwrap();
        assert_eq!((kr.n_vertices(), kr.arrows().len()), (2, 2));
        let looped = Quiver::parse(r#"{"name":"L","vertices":["1"],"arrows":[{"id":"a","src":"1","tgt":"1"}]}"#);
        assert!(matches!(looped, Err(Error::Cycle(c)) if c == vec!["1".to_string()]));
        let dup = Quiver::parse(r#"{"name":"D","vertices":["1","1"],"arrows":[]}"#);
        assert!(matches!(dup, Err(Error::Quiver(_))));
        let cyc = Quiver::parse(
            r#"{"name":"C","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"2","tgt":"1"}]}"#,
        );
        assert!(matches!(cyc, Err(Error::Cycle(_))));
    }

    #[test]
    fn digest_ignores_array_order() {
        let a = Quiver::parse(
            r#"{"name":"K","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"1","tgt":"2"}]}"#,
        )
        .unwrap();
        let b = Quiver::parse(
            r#"{"arrows":[{"tgt":"2","id":"b","src":"1"},{"id":"a","src":"1","tgt":"2"}],"vertices":["1","2"],"name":"K"}"#,
        )
        .unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), Quiver::linear_a(2).digest());
        assert_eq!(Quiver::parse(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn dynkin_detection() {
        assert!(Quiver::linear_a(1).is_dynkin());
        assert!(Quiver::linear_a(4).is_dynkin());
        assert!(!Quiver::kronecker().is_dynkin());
        let d4 = Quiver::new(
            "D4",
            (1..=4).map(|i| i.to_string()).collect(),
            vec![("a".into(), "1".into(), "4".into()), ("b".into(), "2".into(), "4".into()), ("c".into(), "3".into(), "4".into())],
        )
        .unwrap();
        assert!(d4.is_dynkin());
    }

    #[test]
    fn paths_and_euler() {
        let a3 = Quiver::linear_a(3);
        assert_eq!(a3.paths_from(0).len(), 3);
        assert_eq!(a3.paths_from(2).len(), 1);
        assert_eq!(Quiver::kronecker().paths_from(0).len(), 3);
        let a2 = Quiver::linear_a(2);
        assert_eq!(a2.euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(a2.euler_form(&[0, 1], &[1, 0]), 0);
        assert_eq!(a3.topological_order(), vec![0, 1, 2]);
    }
}
