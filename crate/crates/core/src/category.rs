//! Finite windows of small categories and their incidence algebras.
//!
//! A [`CategorySlice`] lists objects, morphisms and the composites that land inside the
//! window. Morphisms are identified by a structural key string, so two slices generated
//! from overlapping windows agree on the morphisms they share. A morphism marked
//! *complete* has all of its factorizations inside the slice; convolution is only
//! evaluated on complete morphisms.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct MorphismRecord {
    key: String,
    dom: Obj,
    cod: Obj,
    complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySlice {
    objects: Vec<String>,
    object_index: HashMap<String, Obj>,
    morphisms: Vec<MorphismRecord>,
    morphism_index: HashMap<String, Mor>,
    identities: Vec<Mor>,
    compose: HashMap<(Mor, Mor), Mor>,
    // all (g, h) with g∘h = f, sorted
    factors: Vec<Vec<(Mor, Mor)>>,
    homs: HashMap<(Obj, Obj), Vec<Mor>>,
    by_domain: Vec<Vec<Mor>>,
}

/// First failure found by [`CategorySlice::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceViolation {
    #[error("identity `{identity}` of object `{object}` is not an endomorphism of it")]
    IdentityEndpoints { object: String, identity: String },
    #[error("composite {g} ∘ {h} = {composite} is mistyped")]
    CompositeTyping {
        g: String,
        h: String,
        composite: String,
    },
    #[error("{f} ∘ 1 is not {f}")]
    RightIdentity { f: String },
    #[error("1 ∘ {f} is not {f}")]
    LeftIdentity { f: String },
    #[error("({g} ∘ {h}) ∘ {k} differs from {g} ∘ ({h} ∘ {k})")]
    Associativity { g: String, h: String, k: String },
}

#[derive(Debug, Default)]
pub struct SliceBuilder {
    objects: Vec<String>,
    object_index: HashMap<String, Obj>,
    morphisms: Vec<MorphismRecord>,
    morphism_index: HashMap<String, Mor>,
    identities: Vec<Option<Mor>>,
    compose: HashMap<(Mor, Mor), Mor>,
}

impl SliceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, key: impl Into<String>) -> Result<Obj> {
        let key = key.into();
        if self.object_index.contains_key(&key) {
            return Err(Error::DuplicateElement(key));
        }
        let obj = Obj(self.objects.len());
        self.object_index.insert(key.clone(), obj);
        self.objects.push(key);
        self.identities.push(None);
        Ok(obj)
    }

    pub fn add_morphism(&mut self, key: impl Into<String>, dom: Obj, cod: Obj) -> Result<Mor> {
        let key = key.into();
        if self.morphism_index.contains_key(&key) {
            return Err(Error::DuplicateElement(key));
        }
        for o in [dom, cod] {
            if o.0 >= self.objects.len() {
                return Err(Error::UnknownElement(format!("object #{}", o.0)));
            }
        }
        let mor = Mor(self.morphisms.len());
        self.morphism_index.insert(key.clone(), mor);
        self.morphisms.push(MorphismRecord {
            key,
            dom,
            cod,
            complete: false,
        });
        Ok(mor)
    }

    pub fn set_identity(&mut self, obj: Obj, mor: Mor) -> Result<()> {
        self.check_mor(mor)?;
        let slot = self
            .identities
            .get_mut(obj.0)
            .ok_or_else(|| Error::UnknownElement(format!("object #{}", obj.0)))?;
        *slot = Some(mor);
        Ok(())
    }

    /// Records `g ∘ h = gh`. A second, different composite for the same pair is an error.
    pub fn add_composite(&mut self, g: Mor, h: Mor, gh: Mor) -> Result<()> {
        for m in [g, h, gh] {
            self.check_mor(m)?;
        }
        match self.compose.insert((g, h), gh) {
            Some(prev) if prev != gh => Err(Error::MalformedSlice(format!(
                "{} ∘ {} given as both {} and {}",
                self.morphisms[g.0].key,
                self.morphisms[h.0].key,
                self.morphisms[prev.0].key,
                self.morphisms[gh.0].key
            ))),
            _ => Ok(()),
        }
    }

    /// For every pair with `cod(h) = dom(g)`, asks `key_of` for the key of `g ∘ h` and
    /// records the composite when that key is a morphism of the slice.
    pub fn fill_composites<F>(&mut self, mut key_of: F) -> Result<()>
    where
        F: FnMut(Mor, Mor) -> Option<String>,
    {
        let mut by_domain: Vec<Vec<Mor>> = vec![Vec::new(); self.objects.len()];
        for (i, rec) in self.morphisms.iter().enumerate() {
            by_domain[rec.dom.0].push(Mor(i));
        }
        for h in 0..self.morphisms.len() {
            let cod = self.morphisms[h].cod;
            for &g in &by_domain[cod.0] {
                if let Some(key) = key_of(g, Mor(h)) {
                    if let Some(&gh) = self.morphism_index.get(&key) {
                        self.add_composite(g, Mor(h), gh)?;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mark_complete(&mut self, mor: Mor) -> Result<()> {
        self.check_mor(mor)?;
        self.morphisms[mor.0].complete = true;
        Ok(())
    }

    pub fn mark_all_complete(&mut self) {
        for rec in &mut self.morphisms {
            rec.complete = true;
        }
    }

    pub fn object(&self, key: &str) -> Option<Obj> {
        self.object_index.get(key).copied()
    }

    pub fn morphism(&self, key: &str) -> Option<Mor> {
        self.morphism_index.get(key).copied()
    }

    fn check_mor(&self, m: Mor) -> Result<()> {
        if m.0 < self.morphisms.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("morphism #{}", m.0)))
        }
    }

    pub fn build(self) -> Result<CategorySlice> {
        let identities = self
            .identities
            .iter()
            .enumerate()
            .map(|(o, id)| {
                id.ok_or_else(|| {
                    Error::MalformedSlice(format!("object `{}` has no identity", self.objects[o]))
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut factors = vec![Vec::new(); self.morphisms.len()];
        for (&(g, h), &gh) in &self.compose {
            factors[gh.0].push((g, h));
        }
        for list in &mut factors {
            list.sort_by_key(|&(g, h)| (h, g));
        }
        let mut homs: HashMap<(Obj, Obj), Vec<Mor>> = HashMap::new();
        let mut by_domain = vec![Vec::new(); self.objects.len()];
        for (i, rec) in self.morphisms.iter().enumerate() {
            homs.entry((rec.dom, rec.cod)).or_default().push(Mor(i));
            by_domain[rec.dom.0].push(Mor(i));
        }
        Ok(CategorySlice {
            objects: self.objects,
            object_index: self.object_index,
            morphisms: self.morphisms,
            morphism_index: self.morphism_index,
            identities,
            compose: self.compose,
            factors,
            homs,
            by_domain,
        })
    }
}

impl CategorySlice {
    /// The poset as a category: one morphism `x<=y` per related pair, all complete.
    pub fn from_poset(p: &FinitePoset) -> CategorySlice {
        let n = p.len();
        let mut b = SliceBuilder::new();
        for l in p.labels() {
            b.add_object(l.clone()).expect("poset labels are distinct");
        }
        let key = |x: usize, y: usize| format!("{}<={}", p.label(x), p.label(y));
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if p.leq(x, y) {
                    let m = b
                        .add_morphism(key(x, y), Obj(x), Obj(y))
                        .expect("distinct keys");
                    if x == y {
                        b.set_identity(Obj(x), m).expect("known object");
                    }
                    pairs.push((x, y));
                }
            }
        }
        b.fill_composites(|g, h| {
            let (x, _) = pairs[h.0];
            let (_, z) = pairs[g.0];
            Some(key(x, z))
        })
        .expect("composites are consistent");
        b.mark_all_complete();
        b.build().expect("every element has an identity")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn object_key(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn key(&self, m: Mor) -> &str {
        &self.morphisms[m.0].key
    }

    pub fn object(&self, key: &str) -> Option<Obj> {
        self.object_index.get(key).copied()
    }

    pub fn morphism(&self, key: &str) -> Option<Mor> {
        self.morphism_index.get(key).copied()
    }

    pub fn dom(&self, m: Mor) -> Obj {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: Mor) -> Obj {
        self.morphisms[m.0].cod
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identities[self.dom(m).0] == m
    }

    pub fn is_complete(&self, m: Mor) -> bool {
        self.morphisms[m.0].complete
    }

    pub fn all_complete(&self) -> bool {
        self.morphisms.iter().all(|r| r.complete)
    }

    /// `g ∘ h`, when recorded in the slice.
    pub fn compose(&self, g: Mor, h: Mor) -> Option<Mor> {
        self.compose.get(&(g, h)).copied()
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        self.homs.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    pub fn out_of(&self, x: Obj) -> &[Mor] {
        &self.by_domain[x.0]
    }

    /// Checks endpoint typing of identities and composites, both identity laws and
    /// associativity wherever both bracketings are recorded.
    pub fn validate(&self) -> std::result::Result<(), SliceViolation> {
        for o in self.objects() {
            let id = self.identity(o);
            if self.dom(id) != o || self.cod(id) != o {
                return Err(SliceViolation::IdentityEndpoints {
                    object: self.object_key(o).to_string(),
                    identity: self.key(id).to_string(),
                });
            }
        }
        let mut entries: Vec<(&(Mor, Mor), &Mor)> = self.compose.iter().collect();
        entries.sort();
        for (&(g, h), &gh) in &entries {
            if self.cod(h) != self.dom(g)
                || self.dom(gh) != self.dom(h)
                || self.cod(gh) != self.cod(g)
            {
                return Err(SliceViolation::CompositeTyping {
                    g: self.key(g).to_string(),
                    h: self.key(h).to_string(),
                    composite: self.key(gh).to_string(),
                });
            }
        }
        for f in self.morphisms() {
            if self.compose(f, self.identity(self.dom(f))) != Some(f) {
                return Err(SliceViolation::RightIdentity {
                    f: self.key(f).to_string(),
                });
            }
            if self.compose(self.identity(self.cod(f)), f) != Some(f) {
                return Err(SliceViolation::LeftIdentity {
                    f: self.key(f).to_string(),
                });
            }
        }
        let mut by_codomain = vec![Vec::new(); self.num_objects()];
        for m in self.morphisms() {
            by_codomain[self.cod(m).0].push(m);
        }
        for (&(g, h), &gh) in &entries {
            for &k in &by_codomain[self.dom(h).0] {
                let Some(hk) = self.compose(h, k) else {
                    continue;
                };
                if let (Some(left), Some(right)) = (self.compose(gh, k), self.compose(g, hk)) {
                    if left != right {
                        return Err(SliceViolation::Associativity {
                            g: self.key(g).to_string(),
                            h: self.key(h).to_string(),
                            k: self.key(k).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// All `(g, h)` with `g ∘ h = f`, trivial ones included, ordered by `(h, g)`.
    pub fn factorizations(&self, f: Mor) -> Result<&[(Mor, Mor)]> {
        if !self.is_complete(f) {
            return Err(Error::IncompleteSlice(self.key(f).to_string()));
        }
        Ok(&self.factors[f.0])
    }

    /// `(ξ ∗ η)(f) = Σ_{g∘h = f} ξ(g) η(h)`.
    pub fn convolve(
        &self,
        xi: &IncidenceFunction,
        eta: &IncidenceFunction,
        f: Mor,
    ) -> Result<BigRational> {
        self.check_len(xi)?;
        self.check_len(eta)?;
        // integer terms are summed separately to avoid a gcd per addition
        let mut whole = BigInt::zero();
        let mut fractional = BigRational::zero();
        for &(g, h) in self.factorizations(f)? {
            let (a, b) = (xi.get(g), eta.get(h));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            if a.is_integer() && b.is_integer() {
                whole += a.numer() * b.numer();
            } else {
                fractional += a * b;
            }
        }
        Ok(fractional + BigRational::from_integer(whole))
    }

    /// `ξ ∗ η` on every morphism; every morphism must be complete.
    pub fn convolve_all(
        &self,
        xi: &IncidenceFunction,
        eta: &IncidenceFunction,
    ) -> Result<IncidenceFunction> {
        let values = self
            .morphisms()
            .map(|f| self.convolve(xi, eta, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(IncidenceFunction { values })
    }

    /// The right convolution inverse η of ξ, computed top-down:
    /// `η(1_X) = 1/ξ(1_X)` and, for non-identities,
    /// `η(f) = -(1/ξ(1_cod f)) Σ_{g∘h = f, g ≠ 1} ξ(g) η(h)`.
    ///
    /// On a one-way slice this is also the left inverse. Revisiting a morphism during the
    /// recursion, or an identity with a non-trivial factorization, means the slice is not
    /// Möbius and yields [`Error::NotMoebius`].
    pub fn convolution_inverse(&self, xi: &IncidenceFunction) -> Result<IncidenceFunction> {
        self.check_len(xi)?;
        if let Some(f) = self.morphisms().find(|&f| !self.is_complete(f)) {
            return Err(Error::IncompleteSlice(self.key(f).to_string()));
        }
        for o in self.objects() {
            let id = self.identity(o);
            if xi.get(id).is_zero() {
                return Err(Error::NotInvertible(self.key(id).to_string()));
            }
            if self.factors[id.0] != [(id, id)] {
                return Err(Error::NotMoebius(format!(
                    "identity `{}` has a non-trivial factorization",
                    self.key(id)
                )));
            }
        }
        let mut memo: Vec<Option<BigRational>> = vec![None; self.num_morphisms()];
        let mut in_progress = vec![false; self.num_morphisms()];
        for f in self.morphisms() {
            self.inverse_at(xi, f, &mut memo, &mut in_progress)?;
        }
        Ok(IncidenceFunction {
            values: memo.into_iter().map(|v| v.expect("filled")).collect(),
        })
    }

    fn inverse_at(
        &self,
        xi: &IncidenceFunction,
        f: Mor,
        memo: &mut Vec<Option<BigRational>>,
        in_progress: &mut Vec<bool>,
    ) -> Result<BigRational> {
        if let Some(v) = &memo[f.0] {
            return Ok(v.clone());
        }
        if in_progress[f.0] {
            return Err(Error::NotMoebius(format!(
                "`{}` is a proper factor of itself",
                self.key(f)
            )));
        }
        let value = if self.is_identity(f) {
            xi.get(f).recip()
        } else {
            in_progress[f.0] = true;
            let left_unit = self.identity(self.cod(f));
            let mut sum = BigRational::zero();
            for &(g, h) in &self.factors[f.0] {
                if g == left_unit {
                    continue;
                }
                sum += xi.get(g) * self.inverse_at(xi, h, memo, in_progress)?;
            }
            in_progress[f.0] = false;
            -(sum / xi.get(left_unit))
        };
        memo[f.0] = Some(value.clone());
        Ok(value)
    }

    /// μ, the convolution inverse of ζ.
    pub fn moebius(&self) -> Result<IncidenceFunction> {
        self.convolution_inverse(&IncidenceFunction::zeta(self))
    }

    /// μ as integers, failing if any value is not integral.
    pub fn moebius_values(&self) -> Result<Vec<i64>> {
        let mu = self.moebius()?;
        mu.to_integers().ok_or_else(|| {
            Error::NotMoebius("Möbius function took a non-integral value".to_string())
        })
    }

    /// Computes `ξ = η ∗ ζ` and reports whether `ξ ∗ μ` gives back `η` exactly.
    pub fn moebius_inversion_check(&self, eta: &IncidenceFunction) -> Result<bool> {
        let mu = self.moebius()?;
        let xi = self.convolve_all(eta, &IncidenceFunction::zeta(self))?;
        Ok(self.convolve_all(&xi, &mu)? == *eta)
    }

    fn check_len(&self, xi: &IncidenceFunction) -> Result<()> {
        if xi.values.len() == self.num_morphisms() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.num_morphisms(),
                got: xi.values.len(),
            })
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut compose: Vec<(&(Mor, Mor), &Mor)> = self.compose.iter().collect();
        compose.sort();
        let file = SliceFile {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|r| MorphismEntry {
                    id: r.key.clone(),
                    dom: self.objects[r.dom.0].clone(),
                    cod: self.objects[r.cod.0].clone(),
                })
                .collect(),
            compose: compose
                .into_iter()
                .map(|(&(g, h), &gh)| {
                    [
                        self.key(g).to_string(),
                        self.key(h).to_string(),
                        self.key(gh).to_string(),
                    ]
                })
                .collect(),
            identities: self
                .objects()
                .map(|o| {
                    (
                        self.object_key(o).to_string(),
                        self.key(self.identity(o)).to_string(),
                    )
                })
                .collect(),
            complete: self
                .morphisms
                .iter()
                .filter(|r| r.complete)
                .map(|r| r.key.clone())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("slice serializes")
    }

    pub fn from_json_str(s: &str) -> Result<CategorySlice> {
        let file: SliceFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut b = SliceBuilder::new();
        for o in file.objects {
            b.add_object(o)?;
        }
        let obj = |b: &SliceBuilder, key: &str| {
            b.object(key)
                .ok_or_else(|| Error::UnknownElement(key.to_string()))
        };
        let mor = |b: &SliceBuilder, key: &str| {
            b.morphism(key)
                .ok_or_else(|| Error::UnknownElement(key.to_string()))
        };
        for m in file.morphisms {
            let (dom, cod) = (obj(&b, &m.dom)?, obj(&b, &m.cod)?);
            b.add_morphism(m.id, dom, cod)?;
        }
        for (o, id) in &file.identities {
            let (o, id) = (obj(&b, o)?, mor(&b, id)?);
            b.set_identity(o, id)?;
        }
        for [g, h, gh] in &file.compose {
            let (g, h, gh) = (mor(&b, g)?, mor(&b, h)?, mor(&b, gh)?);
            b.add_composite(g, h, gh)?;
        }
        for c in &file.complete {
            let m = mor(&b, c)?;
            b.mark_complete(m)?;
        }
        b.build()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// On-disk slice. `compose` holds `[g, h, g∘h]` triples; `identities` maps each object
/// key to its identity morphism id.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub compose: Vec<[String; 3]>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub complete: Vec<String>,
}

/// Exact rational values on the morphisms of one slice, indexed by [`Mor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceFunction {
    values: Vec<BigRational>,
}

impl IncidenceFunction {
    pub fn from_values(slice: &CategorySlice, values: Vec<BigRational>) -> Result<Self> {
        let f = IncidenceFunction { values };
        slice.check_len(&f)?;
        Ok(f)
    }

    pub fn from_fn<F>(slice: &CategorySlice, f: F) -> Self
    where
        F: FnMut(Mor) -> BigRational,
    {
        IncidenceFunction {
            values: slice.morphisms().map(f).collect(),
        }
    }

    pub fn from_integers<F>(slice: &CategorySlice, mut f: F) -> Self
    where
        F: FnMut(Mor) -> i64,
    {
        Self::from_fn(slice, |m| BigRational::from_integer(BigInt::from(f(m))))
    }

    /// 1 on identities, 0 elsewhere.
    pub fn delta(slice: &CategorySlice) -> Self {
        Self::from_integers(slice, |m| slice.is_identity(m) as i64)
    }

    /// Constant 1.
    pub fn zeta(slice: &CategorySlice) -> Self {
        Self::from_fn(slice, |_| BigRational::one())
    }

    pub fn get(&self, m: Mor) -> &BigRational {
        &self.values[m.0]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|v| {
                if v.is_integer() {
                    v.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// JSON object mapping morphism id to `"p/q"`.
    pub fn to_json_string(&self, slice: &CategorySlice) -> String {
        let map: BTreeMap<&str, String> = slice
            .morphisms()
            .map(|m| (slice.key(m), format_rational(self.get(m))))
            .collect();
        serde_json::to_string_pretty(&map).expect("map serializes")
    }

    /// Parses the format written by [`Self::to_json_string`]; every morphism needs a value.
    pub fn from_json_str(slice: &CategorySlice, s: &str) -> Result<Self> {
        let map: BTreeMap<String, String> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut values = vec![None; slice.num_morphisms()];
        for (id, v) in map {
            let m = slice.morphism(&id).ok_or(Error::UnknownElement(id))?;
            values[m.0] = Some(parse_rational(&v)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Parse(format!("no value for `{}`", slice.key(Mor(i)))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IncidenceFunction { values })
    }
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() || q.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}
