//! Finite partially ordered sets.
//!
//! Elements are addressed by their position in the carrier (`usize`), which is also the
//! iteration order of every enumeration below, so results are reproducible. Labels are
//! opaque strings used for lookup and for serialization.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // row-major n*n matrix, leq[x * n + y] iff x <= y
    leq: Vec<bool>,
}

/// Möbius values μ(x, y) for every comparable pair of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetMoebiusTable {
    n: usize,
    values: Vec<Option<i64>>,
}

impl PosetMoebiusTable {
    /// `None` when `x <= y` fails.
    pub fn get(&self, x: usize, y: usize) -> Option<i64> {
        self.values[x * self.n + y]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateElement(l.clone()));
        }
    }
    Ok(index)
}

impl FinitePoset {
    /// Builds a poset from a relation that must already be transitive. Reflexive pairs are
    /// implied and need not be listed.
    pub fn from_relation<I>(labels: Vec<String>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for (x, y) in pairs {
            check_bounds(&labels, x)?;
            check_bounds(&labels, y)?;
            leq[x * n + y] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if !leq[x * n + y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y * n + z] && !leq[x * n + z] {
                        return Err(Error::NotTransitive(
                            labels[x].clone(),
                            labels[y].clone(),
                            labels[z].clone(),
                        ));
                    }
                }
            }
        }
        Self::from_matrix(labels, leq)
    }

    /// Builds a poset as the reflexive-transitive closure of a cover (or any generating)
    /// relation. Cyclic input is rejected.
    pub fn from_covers<I>(labels: Vec<String>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for (x, y) in pairs {
            check_bounds(&labels, x)?;
            check_bounds(&labels, y)?;
            leq[x * n + y] = true;
        }
        for k in 0..n {
            for x in 0..n {
                if !leq[x * n + k] {
                    continue;
                }
                for y in 0..n {
                    if leq[k * n + y] {
                        leq[x * n + y] = true;
                    }
                }
            }
        }
        Self::from_matrix(labels, leq)
    }

    /// Builds a poset from an order predicate evaluated on every pair of positions.
    /// The predicate must describe a reflexive, antisymmetric, transitive relation.
    pub fn from_fn<F>(labels: Vec<String>, mut le: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && le(x, y) {
                    pairs.push((x, y));
                }
            }
        }
        Self::from_relation(labels, pairs)
    }

    fn from_matrix(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        for x in 0..n {
            for y in (x + 1)..n {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(Error::Cyclic(labels[x].clone(), labels[y].clone()));
                }
            }
        }
        let index = index_labels(&labels)?;
        Ok(FinitePoset { labels, index, leq })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(labels, |x, y| x <= y).expect("chain is a partial order")
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(labels, |x, y| x == y).expect("antichain is a partial order")
    }

    /// Subsets of `{1..k}` ordered by inclusion, labelled like `{}`, `{1}`, `{1,2}`.
    pub fn boolean_lattice(k: u32) -> Self {
        let masks: Vec<u32> = (0..(1u32 << k)).collect();
        let labels = masks
            .iter()
            .map(|&mask| {
                let members: Vec<String> = (0..k)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| (b + 1).to_string())
                    .collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        Self::from_fn(labels, |x, y| masks[x] & !masks[y] == 0).expect("inclusion order")
    }

    /// Positive divisors of `n` ordered by divisibility, labelled by their decimal value.
    pub fn divisors(n: u64) -> Self {
        let divs: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        let labels = divs.iter().map(|d| d.to_string()).collect();
        Self::from_fn(labels, |x, y| divs[y].is_multiple_of(divs[x])).expect("divisibility order")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Looks up a label, failing with [`Error::UnknownElement`].
    pub fn element(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Same order with new labels (positions unchanged).
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Parse(format!(
                "expected {} labels, got {}",
                self.len(),
                labels.len()
            )));
        }
        let index = index_labels(&labels)?;
        Ok(FinitePoset {
            labels,
            index,
            leq: self.leq.clone(),
        })
    }

    /// All cover pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Induced sub-poset on `[x, y]`, keeping labels and relative order.
    pub fn interval(&self, x: usize, y: usize) -> Result<FinitePoset> {
        if !self.leq(x, y) {
            return Err(self.not_comparable(x, y));
        }
        let members: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect();
        Ok(self.induced(&members))
    }

    fn induced(&self, members: &[usize]) -> FinitePoset {
        let k = members.len();
        let labels: Vec<String> = members.iter().map(|&z| self.labels[z].clone()).collect();
        let mut leq = vec![false; k * k];
        for (a, &za) in members.iter().enumerate() {
            for (b, &zb) in members.iter().enumerate() {
                leq[a * k + b] = self.leq(za, zb);
            }
        }
        let index = index_labels(&labels).expect("labels of a poset are distinct");
        FinitePoset { labels, index, leq }
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|z| self.leq(b, z)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|z| self.leq(z, t)))
    }

    /// Least upper bound of `x` and `y`, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let ups: Vec<usize> = (0..self.len())
            .filter(|&u| self.leq(x, u) && self.leq(y, u))
            .collect();
        ups.iter()
            .copied()
            .find(|&u| ups.iter().all(|&v| self.leq(u, v)))
    }

    /// Greatest lower bound of `x` and `y`, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let downs: Vec<usize> = (0..self.len())
            .filter(|&d| self.leq(d, x) && self.leq(d, y))
            .collect();
        downs
            .iter()
            .copied()
            .find(|&d| downs.iter().all(|&v| self.leq(v, d)))
    }

    /// True iff every pair has a join and a meet. The empty poset is not a lattice.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        (0..n).all(|x| (x..n).all(|y| self.join(x, y).is_some() && self.meet(x, y).is_some()))
    }

    /// True iff every two elements are comparable.
    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// A linear extension: positions sorted by the size of their down-set.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let down: Vec<usize> = (0..n)
            .map(|y| (0..n).filter(|&x| self.leq(x, y)).count())
            .collect();
        order.sort_by_key(|&z| (down[z], z));
        order
    }

    /// μ(x, y) by the recursion μ(x, x) = 1, μ(x, y) = -Σ_{x <= z < y} μ(x, z).
    pub fn moebius(&self, x: usize, y: usize) -> Result<i64> {
        if !self.leq(x, y) {
            return Err(self.not_comparable(x, y));
        }
        let row = self.moebius_row(x, Some(y));
        Ok(row[y].expect("y lies in the computed interval"))
    }

    /// μ(x, z) for every `z >= x`, restricted to `z <= limit` when a limit is given.
    fn moebius_row(&self, x: usize, limit: Option<usize>) -> Vec<Option<i64>> {
        let n = self.len();
        let mut row: Vec<Option<i64>> = vec![None; n];
        let in_range = |z: usize| self.leq(x, z) && limit.is_none_or(|y| self.leq(z, y));
        for z in self.linear_extension() {
            if !in_range(z) {
                continue;
            }
            let value = if z == x {
                1
            } else {
                -(0..n)
                    .filter(|&w| self.lt(w, z))
                    .filter_map(|w| row[w])
                    .sum::<i64>()
            };
            row[z] = Some(value);
        }
        row
    }

    pub fn moebius_table(&self) -> PosetMoebiusTable {
        let n = self.len();
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            values.extend(self.moebius_row(x, None));
        }
        PosetMoebiusTable { n, values }
    }

    /// Cartesian product with the componentwise order; `(a, b)` sits at `a * |q| + b`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let (p, q) = (self.len(), other.len());
        let labels = (0..p * q)
            .map(|k| format!("({},{})", self.labels[k / q], other.labels[k % q]))
            .collect();
        Self::from_fn(labels, |s, t| {
            self.leq(s / q, t / q) && other.leq(s % q, t % q)
        })
        .expect("product of partial orders is a partial order")
    }

    /// Hasse diagram in Graphviz DOT, edges pointing from smaller to larger elements.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
        writeln!(out, "    rankdir=BT;").unwrap();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "    n{i} [label=\"{}\"];", escape(l)).unwrap();
        }
        for (x, y) in self.covers() {
            writeln!(out, "    n{x} -> n{y};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_poset()
    }

    /// Serializes with the cover relation.
    pub fn to_json_string(&self) -> String {
        let file = PosetFile {
            elements: self.labels.clone(),
            leq: None,
            covers: Some(
                self.covers()
                    .into_iter()
                    .map(|(x, y)| [self.labels[x].clone(), self.labels[y].clone()])
                    .collect(),
            ),
        };
        serde_json::to_string_pretty(&file).expect("poset serializes")
    }

    fn not_comparable(&self, x: usize, y: usize) -> Error {
        Error::NotComparable(self.labels[x].clone(), self.labels[y].clone())
    }
}

fn check_bounds(labels: &[String], x: usize) -> Result<()> {
    if x < labels.len() {
        Ok(())
    } else {
        Err(Error::UnknownElement(format!("#{x}")))
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// On-disk poset: `elements` plus exactly one of `leq` or `covers`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[String; 2]>>,
}

impl PosetFile {
    pub fn into_poset(self) -> Result<FinitePoset> {
        let index = index_labels(&self.elements)?;
        let resolve = |pairs: Vec<[String; 2]>| -> Result<Vec<(usize, usize)>> {
            pairs
                .into_iter()
                .map(|[a, b]| {
                    let x = *index.get(&a).ok_or(Error::UnknownElement(a))?;
                    let y = *index.get(&b).ok_or(Error::UnknownElement(b))?;
                    Ok((x, y))
                })
                .collect()
        };
        match (self.leq, self.covers) {
            (Some(leq), None) => {
                let pairs = resolve(leq)?;
                FinitePoset::from_relation(self.elements, pairs)
            }
            (None, Some(covers)) => {
                let pairs = resolve(covers)?;
                FinitePoset::from_covers(self.elements, pairs)
            }
            _ => Err(Error::Parse(
                "poset needs exactly one of `leq` or `covers`".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(p: &FinitePoset, pairs: &[(usize, usize)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|&(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
            .collect()
    }

    #[test]
    fn covers_of_small_posets() {
        assert_eq!(FinitePoset::chain(3).covers(), vec![(0, 1), (1, 2)]);
        assert!(FinitePoset::antichain(2).covers().is_empty());

        let b2 = FinitePoset::boolean_lattice(2);
        let mut got = names(&b2, &b2.covers());
        got.sort();
        let mut want: Vec<(String, String)> = [
            ("{}", "{1}"),
            ("{}", "{2}"),
            ("{1}", "{1,2}"),
            ("{2}", "{1,2}"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn intervals() {
        let c = FinitePoset::chain(4);
        let iv = c.interval(1, 3).unwrap();
        assert_eq!(iv.labels(), ["1", "2", "3"]);
        assert!(iv.is_chain());

        let b2 = FinitePoset::boolean_lattice(2);
        let full = b2.interval(0, 3).unwrap();
        assert_eq!(full, b2);

        let d12 = FinitePoset::divisors(12);
        let two = d12.element("2").unwrap();
        let twelve = d12.element("12").unwrap();
        assert_eq!(
            d12.interval(two, twelve).unwrap().labels(),
            ["2", "4", "6", "12"]
        );

        let three = d12.element("3").unwrap();
        assert_eq!(
            d12.interval(two, three),
            Err(Error::NotComparable("2".into(), "3".into()))
        );
    }

    #[test]
    fn lattice_checks() {
        assert!(FinitePoset::chain(1).is_lattice());
        assert!(FinitePoset::chain(7).is_lattice());
        assert!(!FinitePoset::antichain(2).is_lattice());
        let grid = FinitePoset::chain(3).product(&FinitePoset::chain(2));
        assert!(grid.is_lattice());
        // bowtie: two minimal elements below two maximal ones
        let bowtie = FinitePoset::from_relation(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            [(0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        assert!(!bowtie.is_lattice());
    }

    #[test]
    fn moebius_values() {
        let c = FinitePoset::chain(3);
        assert_eq!(c.moebius(0, 0), Ok(1));
        assert_eq!(c.moebius(0, 1), Ok(-1));
        assert_eq!(c.moebius(0, 2), Ok(0));
        assert!(matches!(c.moebius(2, 0), Err(Error::NotComparable(..))));

        let b2 = FinitePoset::boolean_lattice(2);
        assert_eq!(b2.moebius(0, 3), Ok(1));

        let d30 = FinitePoset::divisors(30);
        let (one, thirty) = (d30.element("1").unwrap(), d30.element("30").unwrap());
        assert_eq!(d30.moebius(one, thirty), Ok(-1));
    }

    #[test]
    fn moebius_table_matches_pointwise() {
        let p = FinitePoset::divisors(60);
        let t = p.moebius_table();
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(t.get(x, y), p.moebius(x, y).ok());
            }
        }
    }

    #[test]
    fn products() {
        let c2 = FinitePoset::chain(2);
        let sq = c2.product(&c2);
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.covers().len(), 4);
        assert!(sq.is_lattice());
        assert_eq!(sq.moebius(0, 3), Ok(1));

        let p = FinitePoset::boolean_lattice(2);
        let one_p = FinitePoset::chain(1).product(&p);
        assert_eq!(one_p.covers(), p.covers());

        let grid = FinitePoset::chain(2).product(&FinitePoset::chain(3));
        let (b, t) = (grid.bottom().unwrap(), grid.top().unwrap());
        assert_eq!(grid.moebius(b, t), Ok(0));
    }

    #[test]
    fn rejects_bad_relations() {
        let labels = || ["a", "b", "c"].map(String::from).to_vec();
        assert_eq!(
            FinitePoset::from_covers(labels(), [(0, 1), (1, 2), (2, 0)]).unwrap_err(),
            Error::Cyclic("a".into(), "b".into())
        );
        assert!(matches!(
            FinitePoset::from_relation(labels(), [(0, 1), (1, 2)]),
            Err(Error::NotTransitive(..))
        ));
        assert!(matches!(
            FinitePoset::from_relation(vec!["a".into(), "a".into()], []),
            Err(Error::DuplicateElement(_))
        ));
    }

    #[test]
    fn json_formats() {
        let p = FinitePoset::from_json_str(
            r#"{"elements": ["0", "a", "b", "1"], "covers": [["0","a"],["0","b"],["a","1"],["b","1"]]}"#,
        )
        .unwrap();
        assert!(p.is_lattice());
        assert_eq!(p.moebius(0, 3), Ok(1));

        let same = FinitePoset::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(same, p);

        let leq =
            FinitePoset::from_json_str(r#"{"elements": ["x", "y"], "leq": [["x","y"]]}"#).unwrap();
        assert!(leq.lt(0, 1));

        for bad in [
            r#"{"elements": ["x"], "leq": [], "extra": 1}"#,
            r#"{"elements": ["x"]}"#,
            r#"{"elements": ["x"], "leq": [], "covers": []}"#,
            r#"{"elements": ["x"], "leq": [["x", "z"]]}"#,
        ] {
            assert!(FinitePoset::from_json_str(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn dot_output() {
        let dot = FinitePoset::chain(2).to_dot("c2");
        assert_eq!(
            dot,
            "digraph \"c2\" {\n    rankdir=BT;\n    n0 [label=\"0\"];\n    n1 [label=\"1\"];\n    n0 -> n1;\n}\n"
        );
    }
}
