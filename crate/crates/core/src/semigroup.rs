//! Finite inverse semigroups given by multiplication tables, and their reduced division
//! categories `C_F(S)`.
//!
//! Three poset routes to the Möbius function of `C_F(S)` live here and in [`crate::lawvere`]:
//! quotient posets `Q(e)`, the idempotent lattices `E(eSe)`, and Lawvere intervals.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::category::{CategorySlice, Mor, Obj, SliceBuilder};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // table[s][t] = st
    table: Vec<Vec<usize>>,
    one: Option<usize>,
    inverse: Vec<usize>,
}

/// On-disk semigroup: rows of `table` are left factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<String>,
}

impl InverseSemigroup {
    /// Validates associativity and unique inverses exhaustively, derives the inverse map
    /// and checks that idempotents commute.
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        one: Option<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        if table.len() != n
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&v| v >= n))
        {
            return Err(Error::NotInverseSemigroup(format!(
                "table must be {n} × {n} over the elements"
            )));
        }
        let l = |i: usize| labels[i].as_str();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotInverseSemigroup(format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            l(a),
                            l(b),
                            l(c),
                            l(a),
                            l(b),
                            l(c)
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for s in 0..n {
            let candidates: Vec<usize> = (0..n)
                .filter(|&t| table[table[s][t]][s] == s && table[table[t][s]][t] == t)
                .collect();
            match candidates.as_slice() {
                [t] => inverse.push(*t),
                [] => {
                    return Err(Error::NotInverseSemigroup(format!(
                        "`{}` has no inverse",
                        l(s)
                    )))
                }
                many => {
                    let names: Vec<&str> = many.iter().map(|&t| l(t)).collect();
                    return Err(Error::NotInverseSemigroup(format!(
                        "`{}` has several inverses: {}",
                        l(s),
                        names.join(", ")
                    )));
                }
            }
        }
        let idempotents: Vec<usize> = (0..n).filter(|&e| table[e][e] == e).collect();
        for &e in &idempotents {
            for &f in &idempotents {
                if table[e][f] != table[f][e] {
                    return Err(Error::NotInverseSemigroup(format!(
                        "idempotents `{}` and `{}` do not commute",
                        l(e),
                        l(f)
                    )));
                }
            }
        }
        if let Some(u) = one {
            if u >= n || (0..n).any(|s| table[u][s] != s || table[s][u] != s) {
                return Err(Error::NotInverseSemigroup(format!(
                    "`{}` is not an identity element",
                    labels.get(u).map_or("?", String::as_str)
                )));
            }
        }
        Ok(InverseSemigroup {
            labels,
            index,
            table,
            one,
            inverse,
        })
    }

    pub fn from_file(file: SemigroupFile) -> Result<Self> {
        let index: HashMap<&str, usize> = file
            .elements
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let look = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let table = file
            .table
            .iter()
            .map(|row| row.iter().map(|v| look(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let one = file.one.as_deref().map(look).transpose()?;
        Self::from_table(file.elements, table, one)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: SemigroupFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> SemigroupFile {
        SemigroupFile {
            elements: self.labels.clone(),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|&v| self.labels[v].clone()).collect())
                .collect(),
            one: self.one.map(|u| self.labels[u].clone()),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("semigroup serializes")
    }

    /// The meet-semilattice of a poset in which every pair has a meet; the top, if any, is
    /// the identity.
    pub fn semilattice_from_poset(p: &FinitePoset) -> Result<Self> {
        let n = p.len();
        let mut table = vec![vec![0; n]; n];
        for (x, row) in table.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = p.meet(x, y).ok_or_else(|| {
                    Error::NotInverseSemigroup(format!(
                        "`{}` and `{}` have no meet",
                        p.label(x),
                        p.label(y)
                    ))
                })?;
            }
        }
        Self::from_table(p.labels().to_vec(), table, p.top())
    }

    /// Direct product with componentwise multiplication; `(s, t)` sits at `s * |other| + t`.
    pub fn product(&self, other: &InverseSemigroup) -> Result<Self> {
        let (p, q) = (self.len(), other.len());
        let labels = (0..p * q)
            .map(|k| format!("({},{})", self.labels[k / q], other.labels[k % q]))
            .collect();
        let table = (0..p * q)
            .map(|a| {
                (0..p * q)
                    .map(|b| self.mul(a / q, b / q) * q + other.mul(a % q, b % q))
                    .collect()
            })
            .collect();
        let one = match (self.one, other.one) {
            (Some(u), Some(v)) => Some(u * q + v),
            _ => None,
        };
        Self::from_table(labels, table, one)
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

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }

    pub fn inv(&self, s: usize) -> usize {
        self.inverse[s]
    }

    /// `s⁻¹s`.
    pub fn domain_idempotent(&self, s: usize) -> usize {
        self.mul(self.inv(s), s)
    }

    /// `ss⁻¹`.
    pub fn range_idempotent(&self, s: usize) -> usize {
        self.mul(s, self.inv(s))
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    /// `E(S)`, in element order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// `s <= t` iff `s = ss⁻¹t`.
    pub fn natural_leq(&self, s: usize, t: usize) -> bool {
        s == self.mul(self.range_idempotent(s), t)
    }

    /// D-classes: `s D t` iff some `x` has `x⁻¹x = s⁻¹s` and `xx⁻¹ = tt⁻¹`. Classes are
    /// listed by smallest member, members ascending.
    pub fn d_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let related = |s: usize, t: usize| {
            (0..n).any(|x| {
                self.domain_idempotent(x) == self.domain_idempotent(s)
                    && self.range_idempotent(x) == self.range_idempotent(t)
            })
        };
        let mut class_of: Vec<Option<usize>> = vec![None; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if class_of[s].is_some() {
                continue;
            }
            let members: Vec<usize> = (s..n)
                .filter(|&t| class_of[t].is_none() && related(s, t))
                .collect();
            for &t in &members {
                class_of[t] = Some(classes.len());
            }
            classes.push(members);
        }
        classes
    }

    /// Every maximal subgroup `{s : ss⁻¹ = s⁻¹s = e}` is `{e}`. Returns the first idempotent
    /// with a non-trivial subgroup, if any.
    pub fn nontrivial_subgroup(&self) -> Option<usize> {
        self.idempotents().into_iter().find(|&e| {
            (0..self.len())
                .any(|s| s != e && self.range_idempotent(s) == e && self.domain_idempotent(s) == e)
        })
    }

    pub fn is_combinatorial(&self) -> bool {
        self.nontrivial_subgroup().is_none()
    }

    /// Idempotents below `e` in the natural order, i.e. `E(eSe)`.
    pub fn idempotents_below(&self, e: usize) -> Vec<usize> {
        self.idempotents()
            .into_iter()
            .filter(|&x| self.natural_leq(x, e))
            .collect()
    }

    /// `{exe : x ∈ E(S)}`, which coincides with [`Self::idempotents_below`].
    pub fn corner_idempotents(&self, e: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .idempotents()
            .into_iter()
            .map(|x| self.mul(self.mul(e, x), e))
            .collect();
        set.into_iter().collect()
    }

    /// `(E(eSe), <=)` as a poset labelled by element names.
    pub fn idempotent_lattice(&self, e: usize) -> FinitePoset {
        let below = self.idempotents_below(e);
        let labels = below.iter().map(|&x| self.labels[x].clone()).collect();
        FinitePoset::from_fn(labels, |a, b| self.natural_leq(below[a], below[b]))
            .expect("natural order is a partial order")
    }
}

/// One idempotent per D-class (including the identity, when there is one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentTransversal {
    reps: Vec<usize>,
}

impl IdempotentTransversal {
    pub fn new(s: &InverseSemigroup, mut reps: Vec<usize>) -> Result<Self> {
        reps.sort_unstable();
        reps.dedup();
        if let Some(&r) = reps.iter().find(|&&r| r >= s.len() || !s.is_idempotent(r)) {
            return Err(Error::NotTransversal(format!(
                "`{}` is not an idempotent",
                s.labels.get(r).map_or("?", String::as_str)
            )));
        }
        for class in s.d_classes() {
            let hits: Vec<&usize> = reps.iter().filter(|r| class.contains(r)).collect();
            if hits.len() != 1 {
                return Err(Error::NotTransversal(format!(
                    "D-class of `{}` contains {} representatives",
                    s.label(class[0]),
                    hits.len()
                )));
            }
        }
        if let Some(u) = s.one() {
            if !reps.contains(&u) {
                return Err(Error::NotTransversal(
                    "identity must be a representative".into(),
                ));
            }
        }
        Ok(IdempotentTransversal { reps })
    }

    pub fn from_labels<S: AsRef<str>>(s: &InverseSemigroup, labels: &[S]) -> Result<Self> {
        let reps = labels
            .iter()
            .map(|l| s.element(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(s, reps)
    }

    /// The unique idempotent of each D-class; fails when some class holds several.
    pub fn canonical(s: &InverseSemigroup) -> Result<Self> {
        let mut reps = Vec::new();
        for class in s.d_classes() {
            let idem: Vec<usize> = class
                .iter()
                .copied()
                .filter(|&e| s.is_idempotent(e))
                .collect();
            if idem.len() != 1 {
                return Err(Error::NotTransversal(format!(
                    "D-class of `{}` has {} idempotents; supply a transversal",
                    s.label(class[0]),
                    idem.len()
                )));
            }
            reps.push(idem[0]);
        }
        Self::new(s, reps)
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }
}

/// The reduced division category `C_F(S)`: objects `F`, morphisms `(s, e): e -> ss⁻¹`
/// with `s⁻¹s <= e`, composition `(t, f)·(s, e) = (ts, e)`.
#[derive(Debug, Clone)]
pub struct DivisionCategory {
    slice: CategorySlice,
    // (s, e) behind each morphism
    payload: Vec<(usize, usize)>,
}

impl DivisionCategory {
    /// Fails with [`Error::NotCombinatorial`] when `S` has a non-trivial subgroup;
    /// [`Self::build_unchecked`] builds the category anyway.
    pub fn build(s: &InverseSemigroup, f: &IdempotentTransversal) -> Result<Self> {
        if let Some(e) = s.nontrivial_subgroup() {
            return Err(Error::NotCombinatorial(s.label(e).to_string()));
        }
        Ok(Self::build_unchecked(s, f))
    }

    pub fn build_unchecked(s: &InverseSemigroup, f: &IdempotentTransversal) -> Self {
        let key = |t: usize, e: usize| format!("({},{})", s.label(t), s.label(e));
        let mut b = SliceBuilder::new();
        let mut obj_of = HashMap::new();
        for &e in f.reps() {
            obj_of.insert(
                e,
                b.add_object(s.label(e)).expect("distinct representatives"),
            );
        }
        let mut payload = Vec::new();
        for &e in f.reps() {
            for t in 0..s.len() {
                let target = s.range_idempotent(t);
                let Some(&cod) = obj_of.get(&target) else {
                    continue;
                };
                if !s.natural_leq(s.domain_idempotent(t), e) {
                    continue;
                }
                let m = b
                    .add_morphism(key(t, e), obj_of[&e], cod)
                    .expect("distinct (s, e) pairs");
                if t == e {
                    b.set_identity(obj_of[&e], m).expect("known object");
                }
                payload.push((t, e));
            }
        }
        b.fill_composites(|g, h| {
            let ((t, _), (u, e)) = (payload[g.0], payload[h.0]);
            Some(key(s.mul(t, u), e))
        })
        .expect("composition is a function");
        b.mark_all_complete();
        DivisionCategory {
            slice: b.build().expect("every representative has an identity"),
            payload,
        }
    }

    pub fn category(&self) -> &CategorySlice {
        &self.slice
    }

    /// `(s, e)` behind a morphism.
    pub fn morphism(&self, m: Mor) -> (usize, usize) {
        self.payload[m.0]
    }

    pub fn find(&self, s: usize, e: usize) -> Option<Mor> {
        self.payload.iter().position(|&p| p == (s, e)).map(Mor)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mor, (usize, usize))> + '_ {
        self.payload.iter().enumerate().map(|(i, &p)| (Mor(i), p))
    }
}

/// `Q(e)`: morphisms out of `e`, with `s ⪯ t` iff `s = u∘t` for some `u`.
pub fn quotient_poset(c: &CategorySlice, e: Obj) -> Result<FinitePoset> {
    let out = c.out_of(e);
    let mut pairs = Vec::new();
    for (a, &s) in out.iter().enumerate() {
        for (b, &t) in out.iter().enumerate() {
            let through = c
                .hom(c.cod(t), c.cod(s))
                .iter()
                .any(|&u| c.compose(u, t) == Some(s));
            if through {
                if a != b && pairs.contains(&(b, a)) {
                    return Err(Error::NotOneWay(format!(
                        "`{}` and `{}` factor through each other",
                        c.key(s),
                        c.key(t)
                    )));
                }
                pairs.push((a, b));
            }
        }
    }
    let labels = out.iter().map(|&m| c.key(m).to_string()).collect();
    FinitePoset::from_relation(labels, pairs).map_err(|err| match err {
        Error::Cyclic(a, b) => {
            Error::NotOneWay(format!("`{a}` and `{b}` factor through each other"))
        }
        other => other,
    })
}

/// μ(s, e) = μ_{Q(e)}((s, e), (e, e)).
pub fn moebius_via_quotients(c: &CategorySlice, f: Mor) -> Result<i64> {
    let e = c.dom(f);
    let q = quotient_poset(c, e)?;
    let out = c.out_of(e);
    let pos = |m: Mor| out.iter().position(|&x| x == m).expect("morphism out of e");
    q.moebius(pos(f), pos(c.identity(e)))
}

/// μ(s, e) = μ_{E(eSe)}(s⁻¹s, e).
pub fn moebius_via_idempotent_lattice(s: &InverseSemigroup, t: usize, e: usize) -> Result<i64> {
    let lattice = s.idempotent_lattice(e);
    let bottom = lattice
        .element(s.label(s.domain_idempotent(t)))
        .map_err(|_| {
            Error::NotComparable(s.label(s.domain_idempotent(t)).into(), s.label(e).into())
        })?;
    let top = lattice.element(s.label(e))?;
    lattice.moebius(bottom, top)
}

/// Small inverse semigroups used in tests and examples.
pub mod corpus {
    use super::InverseSemigroup;
    use crate::poset::FinitePoset;

    /// The chain `0 < 1 < ... < n-1` as a meet-semilattice.
    pub fn chain_semilattice(n: usize) -> InverseSemigroup {
        InverseSemigroup::semilattice_from_poset(&FinitePoset::chain(n)).expect("chains have meets")
    }

    /// Subsets of `{1..k}` under intersection.
    pub fn boolean_semilattice(k: u32) -> InverseSemigroup {
        InverseSemigroup::semilattice_from_poset(&FinitePoset::boolean_lattice(k))
            .expect("boolean lattices have meets")
    }

    /// `0 < b, c < a < 1` with `b`, `c` incomparable.
    pub fn fork() -> InverseSemigroup {
        let p = FinitePoset::from_covers(
            ["0", "b", "c", "a", "1"].map(String::from).to_vec(),
            [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
        )
        .expect("fork is a partial order");
        InverseSemigroup::semilattice_from_poset(&p).expect("fork has meets")
    }

    /// Cyclic group of order `n` written additively, labels `g0..`.
    pub fn cyclic_group(n: usize) -> InverseSemigroup {
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        InverseSemigroup::from_table(labels, table, Some(0)).expect("groups are inverse semigroups")
    }

    /// The Brandt semigroup `B_2` (2×2 matrix units and zero) with an identity adjoined.
    pub fn brandt_monoid() -> InverseSemigroup {
        // 0 = zero, 1..=4 = e11 e12 e21 e22, 5 = identity
        let labels = ["0", "e11", "e12", "e21", "e22", "1"]
            .map(String::from)
            .to_vec();
        let unit = |k: usize| ((k - 1) / 2 + 1, (k - 1) % 2 + 1);
        let mul = |a: usize, b: usize| -> usize {
            match (a, b) {
                (5, x) | (x, 5) => x,
                (0, _) | (_, 0) => 0,
                (a, b) => {
                    let ((i, j), (k, l)) = (unit(a), unit(b));
                    if j == k {
                        1 + (i - 1) * 2 + (l - 1)
                    } else {
                        0
                    }
                }
            }
        };
        let table = (0..6)
            .map(|a| (0..6).map(|b| mul(a, b)).collect())
            .collect();
        InverseSemigroup::from_table(labels, table, Some(5)).expect("Brandt monoid is inverse")
    }
}
