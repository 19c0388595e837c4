//! Coxeter symbols (labelled graphs), finite-type recognition, Euler
//! characteristics, bilinear-form signatures and parity characters.

mod classify;
pub(crate) mod tits;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};

pub use classify::{Family, FiniteType};

use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::nodeset::{NodeSet, MAX_NODES};

/// Eigenvalues with absolute value below this count as zero.
pub const SIGNATURE_TOL: f64 = 1e-8;

/// Largest symbol accepted by subset enumerations.
pub const SUBSET_CAP: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn is_edge(self) -> bool {
        !matches!(self, Label::Finite(1 | 2))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    fn to_json(self) -> Value {
        match self {
            Label::Finite(m) => json!(m),
            Label::Infinite => json!("inf"),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

/// A Coxeter symbol. Only pairs with `m >= 3` (or infinite) are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct CoxeterSymbol {
    names: Vec<String>,
    edges: BTreeMap<(usize, usize), Label>,
    adj: Vec<NodeSet>,
}

impl CoxeterSymbol {
    /// Builds a symbol from node names and `(i, j, m)` triples on indices.
    pub fn new(names: Vec<String>, edges: &[(usize, usize, Label)]) -> Result<Self> {
        if names.len() > MAX_NODES {
            return Err(Error::TooLarge { what: "symbol", size: names.len(), cap: MAX_NODES });
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.as_str(), i).is_some() {
                return Err(Error::DuplicateNode(n.clone()));
            }
        }
        let mut map = BTreeMap::new();
        for &(a, b, m) in edges {
            if a >= names.len() || b >= names.len() {
                return Err(Error::UnknownNode(format!("index {}", a.max(b))));
            }
            if a == b {
                return Err(Error::Parse(format!("self-loop at node {:?}", names[a])));
            }
            if let Label::Finite(k) = m {
                if k < 2 {
                    return Err(Error::BadLabel(k as i64));
                }
                if k == 2 {
                    continue;
                }
            }
            let key = (a.min(b), a.max(b));
            if let Some(old) = map.insert(key, m) {
                if old != m {
                    return Err(Error::Parse(format!(
                        "conflicting labels for edge {:?}-{:?}",
                        names[key.0], names[key.1]
                    )));
                }
            }
        }
        let mut adj = vec![NodeSet::EMPTY; names.len()];
        for &(a, b) in map.keys() {
            adj[a] = adj[a].with(b);
            adj[b] = adj[b].with(a);
        }
        Ok(CoxeterSymbol { names, edges: map, adj })
    }

    /// Symbol with nodes named "1".."n" and finite labels on index pairs.
    pub fn numbered(n: usize, edges: &[(usize, usize, u32)]) -> Self {
        let names = (1..=n).map(|i| i.to_string()).collect();
        let e: Vec<_> = edges.iter().map(|&(a, b, m)| (a, b, Label::Finite(m))).collect();
        Self::new(names, &e).expect("valid numbered symbol")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn all(&self) -> NodeSet {
        NodeSet::full(self.len())
    }

    /// Edge order `m_ij` (1 on the diagonal, 2 for non-adjacent nodes).
    pub fn label(&self, i: usize, j: usize) -> Label {
        if i == j {
            return Label::Finite(1);
        }
        *self.edges.get(&(i.min(j), i.max(j))).unwrap_or(&Label::Finite(2))
    }

    /// Stored edges `(i, j, m)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        self.edges.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    pub fn neighbors(&self, i: usize) -> NodeSet {
        self.adj[i]
    }

    fn check_subset(&self, t: NodeSet) -> Result<()> {
        if !t.is_subset(self.all()) {
            let bad = t.difference(self.all()).first().unwrap_or(0);
            return Err(Error::UnknownNode(format!("index {bad}")));
        }
        Ok(())
    }

    pub fn induced_subsymbol(&self, t: NodeSet) -> Result<CoxeterSymbol> {
        self.check_subset(t)?;
        let keep = t.to_vec();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b, _)| t.contains(a) && t.contains(b))
            .map(|(a, b, m)| (pos[&a], pos[&b], m))
            .collect();
        CoxeterSymbol::new(names, &edges)
    }

    pub fn connected_components(&self) -> Vec<NodeSet> {
        self.components_of(self.all())
    }

    /// Components of the induced subsymbol on `t`, ordered by least node.
    pub fn components_of(&self, t: NodeSet) -> Vec<NodeSet> {
        let mut rest = t;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = NodeSet::single(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = NodeSet::EMPTY;
                for i in frontier.iter() {
                    next = next.union(self.adj[i]);
                }
                frontier = next.intersection(t).difference(comp);
                comp = comp.union(frontier);
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, t: NodeSet) -> bool {
        self.components_of(t).len() == 1
    }

    pub fn classify_finite_type(&self) -> Option<Vec<FiniteType>> {
        self.classify_subset(self.all())
    }

    /// Finite types of the components of the induced subsymbol on `t`.
    pub fn classify_subset(&self, t: NodeSet) -> Option<Vec<FiniteType>> {
        self.components_of(t)
            .into_iter()
            .map(|c| classify::classify_component(self, c).map(|(ft, _)| ft))
            .collect()
    }

    /// Type of a connected subset together with its canonical node layout.
    pub(crate) fn classify_component(&self, c: NodeSet) -> Option<(FiniteType, classify::Layout)> {
        classify::classify_component(self, c)
    }

    pub fn finite_order(&self) -> Result<BigUint> {
        let types = self.classify_finite_type().ok_or(Error::NotFinite)?;
        Ok(types.iter().fold(BigUint::one(), |acc, t| acc * t.order()))
    }

    /// Chiswell's Euler characteristic, summing over all finite visible subgroups.
    pub fn euler_characteristic(&self) -> Result<ExactRational> {
        if self.len() > SUBSET_CAP {
            return Err(Error::TooLarge { what: "symbol", size: self.len(), cap: SUBSET_CAP });
        }
        let mut chi = ExactRational::zero();
        for mask in 0u32..(1 << self.len()) {
            let t = NodeSet(mask);
            if let Some(types) = self.classify_subset(t) {
                let order = types.iter().fold(BigUint::one(), |acc, ft| acc * ft.order());
                let term = ExactRational::new(1, order);
                chi = if t.len() % 2 == 0 { chi + term } else { chi - term };
            }
        }
        Ok(chi)
    }

    pub fn bilinear_gram(&self, inf_value: f64) -> Result<DMatrix<f64>> {
        if !(inf_value <= -1.0) {
            return Err(Error::InfValue(inf_value));
        }
        let n = self.len();
        let mut b = DMatrix::identity(n, n);
        for (i, j, m) in self.edges() {
            let v = match m {
                Label::Finite(k) => -(std::f64::consts::PI / k as f64).cos(),
                Label::Infinite => inf_value,
            };
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
        Ok(b)
    }

    /// Counts of positive, negative and zero eigenvalues of the cosine matrix.
    pub fn signature(&self, inf_value: f64) -> Result<(usize, usize, usize)> {
        let b = self.bilinear_gram(inf_value)?;
        Ok(signature_of(b))
    }

    /// `(number of occurrences of t in word) mod 2`; a homomorphism to Z/2
    /// provided every edge at `t` has an even label.
    pub fn parity_character(&self, t: usize, word: &[usize]) -> Result<u8> {
        if t >= self.len() {
            return Err(Error::UnknownNode(format!("index {t}")));
        }
        for j in self.adj[t].iter() {
            if let Label::Finite(m) = self.label(t, j) {
                if m % 2 == 1 {
                    return Err(Error::OddLabel(self.names[t].clone()));
                }
            }
        }
        if let Some(&bad) = word.iter().find(|&&g| g >= self.len()) {
            return Err(Error::UnknownNode(format!("index {bad}")));
        }
        Ok((word.iter().filter(|&&g| g == t).count() % 2) as u8)
    }

    pub fn to_json_value(&self) -> Value {
        let edges: Vec<Value> = self
            .edges()
            .map(|(a, b, m)| json!([self.names[a], self.names[b], m.to_json()]))
            .collect();
        json!({ "nodes": self.names, "edges": edges })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let nodes = obj
            .get("nodes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"nodes\" array".into()))?;
        let names = nodes
            .iter()
            .map(|n| {
                n.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Parse(format!("node identifier {n} is not a string")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateNode(n.clone()));
            }
        }
        let empty = Vec::new();
        let raw_edges = match obj.get("edges") {
            None => &empty,
            Some(e) => e.as_array().ok_or_else(|| Error::Parse("\"edges\" must be an array".into()))?,
        };
        let mut edges = Vec::with_capacity(raw_edges.len());
        for e in raw_edges {
            let triple = e
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse(format!("edge {e} is not a [node, node, label] triple")))?;
            let end = |x: &Value| -> Result<usize> {
                let s = x.as_str().ok_or_else(|| Error::Parse(format!("edge endpoint {x} is not a string")))?;
                index.get(s).copied().ok_or_else(|| Error::UnknownNode(s.to_owned()))
            };
            let (a, b) = (end(&triple[0])?, end(&triple[1])?);
            let m = match &triple[2] {
                Value::String(s) if s == "inf" => Label::Infinite,
                Value::Number(n) => {
                    let k = n.as_i64().ok_or_else(|| Error::Parse(format!("label {n} is not an integer")))?;
                    if k < 2 {
                        return Err(Error::BadLabel(k));
                    }
                    Label::Finite(u32::try_from(k).map_err(|_| Error::Parse(format!("label {k} too large")))?)
                }
                other => return Err(Error::Parse(format!("label {other} must be an integer or \"inf\""))),
            };
            edges.push((a, b, m));
        }
        CoxeterSymbol::new(names, &edges)
    }
}

impl fmt::Debug for CoxeterSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

pub fn parse_symbol(text: &str) -> Result<CoxeterSymbol> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    CoxeterSymbol::from_json_value(&v)
}

pub(crate) fn signature_of(b: DMatrix<f64>) -> (usize, usize, usize) {
    if b.nrows() == 0 {
        return (0, 0, 0);
    }
    let eig = SymmetricEigen::new(b).eigenvalues;
    let mut out = (0, 0, 0);
    for &l in eig.iter() {
        if l.abs() < SIGNATURE_TOL {
            out.2 += 1;
        } else if l > 0.0 {
            out.0 += 1;
        } else {
            out.1 += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(labels: &[u32]) -> CoxeterSymbol {
        let e: Vec<_> = labels.iter().enumerate().map(|(i, &m)| (i, i + 1, m)).collect();
        CoxeterSymbol::numbered(labels.len() + 1, &e)
    }

    #[test]
    fn parse_examples() {
        let a2 = parse_symbol(r#"{"nodes":["1","2"],"edges":[["1","2",3]]}"#).unwrap();
        assert_eq!(a2.label(0, 1), Label::Finite(3));
        let inf = parse_symbol(r#"{"nodes":["1","2"],"edges":[["1","2","inf"]]}"#).unwrap();
        assert_eq!(inf.label(1, 0), Label::Infinite);
        assert_eq!(
            parse_symbol(r#"{"nodes":["1","2"],"edges":[["1","2",1]]}"#),
            Err(Error::BadLabel(1))
        );
        assert!(matches!(
            parse_symbol(r#"{"nodes":["a","a"],"edges":[]}"#),
            Err(Error::DuplicateNode(_))
        ));
        assert!(matches!(
            parse_symbol(r#"{"nodes":["a"],"edges":[["a","b",3]]}"#),
            Err(Error::UnknownNode(_))
        ));
        assert!(parse_symbol("[1,2]").is_err());
        let with_two = parse_symbol(r#"{"nodes":["1","2"],"edges":[["1","2",2]]}"#).unwrap();
        assert_eq!(with_two.edges().count(), 0);
    }

    #[test]
    fn json_round_trip() {
        let s = parse_symbol(r#"{"nodes":["x","y","z"],"edges":[["y","z","inf"],["x","y",4]]}"#).unwrap();
        assert_eq!(parse_symbol(&s.to_json()).unwrap(), s);
        assert_eq!(s.to_json(), r#"{"nodes":["x","y","z"],"edges":[["x","y",4],["y","z","inf"]]}"#);
    }

    #[test]
    fn induced_and_components() {
        let a3 = path(&[3, 3]);
        let a2 = a3.induced_subsymbol(NodeSet::from_nodes([0, 1])).unwrap();
        assert_eq!(a2, path(&[3]));
        let two = a3.induced_subsymbol(NodeSet::from_nodes([0, 2])).unwrap();
        assert_eq!(two.connected_components().len(), 2);
        assert!(a3.induced_subsymbol(NodeSet::EMPTY).unwrap().is_empty());
        assert!(a3.induced_subsymbol(NodeSet::single(5)).is_err());
        assert_eq!(a3.connected_components(), vec![NodeSet::full(3)]);
        let b2a2 = CoxeterSymbol::numbered(4, &[(0, 1, 4), (2, 3, 3)]);
        assert_eq!(
            b2a2.connected_components(),
            vec![NodeSet::from_nodes([0, 1]), NodeSet::from_nodes([2, 3])]
        );
    }

    #[test]
    fn classification_examples() {
        let b5 = path(&[4, 3, 3, 3]);
        let t = b5.classify_finite_type().unwrap();
        assert_eq!(t[0].to_string(), "B5");
        assert_eq!(b5.finite_order().unwrap(), BigUint::from(3840u32));
        assert!(path(&[4, 3, 3, 4]).classify_finite_type().is_none());
        let a1 = CoxeterSymbol::numbered(1, &[]);
        assert_eq!(a1.finite_order().unwrap(), BigUint::from(2u32));
        let a2a1 = CoxeterSymbol::numbered(3, &[(0, 1, 3)]);
        assert_eq!(a2a1.finite_order().unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn euler_examples() {
        let a1 = CoxeterSymbol::numbered(1, &[]);
        assert_eq!(a1.euler_characteristic().unwrap(), ExactRational::new(1, 2));
        let at1 = parse_symbol(r#"{"nodes":["1","2"],"edges":[["1","2","inf"]]}"#).unwrap();
        assert_eq!(at1.euler_characteristic().unwrap(), ExactRational::zero());
    }

    #[test]
    fn gram_and_signature() {
        let a2 = path(&[3]);
        let b = a2.bilinear_gram(-1.0).unwrap();
        assert!((b[(0, 1)] + 0.5).abs() < 1e-15);
        let b2 = path(&[4]).bilinear_gram(-1.0).unwrap();
        assert!((b2[(0, 1)] + 2f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(a2.signature(-1.0).unwrap(), (2, 0, 0));
        let at1 = parse_symbol(r#"{"nodes":["1","2"],"edges":[["1","2","inf"]]}"#).unwrap();
        assert_eq!(at1.bilinear_gram(-1.0).unwrap()[(0, 1)], -1.0);
        assert_eq!(at1.signature(-1.0).unwrap(), (1, 0, 1));
        assert_eq!(at1.signature(-0.5), Err(Error::InfValue(-0.5)));
    }

    #[test]
    fn parity_examples() {
        let b3 = path(&[3, 4]);
        let w: Vec<usize> = [0, 1, 2, 1, 0, 1, 2, 1, 2].to_vec();
        assert_eq!(b3.parity_character(2, &w).unwrap(), 1);
        assert_eq!(b3.parity_character(2, &[]).unwrap(), 0);
        let b4 = path(&[3, 3, 4]);
        let w4 = [0, 1, 2, 3, 2, 1, 0, 1, 2, 3, 2, 1, 2, 3, 2, 3];
        assert_eq!(b4.parity_character(3, &w4).unwrap(), 0);
        assert!(matches!(b3.parity_character(1, &[1]), Err(Error::OddLabel(_))));
    }
}
