use std::fmt;

use crate::category::{CategorySlice, Mor, Obj, SliceBuilder};
use crate::error::{Error, Result};
use crate::lawvere::{Factorization, LawvereInterval};
use crate::poset::FinitePoset;

use super::{check_modulus, parse_tuple};

/// Object `(x̄, i)` of `C_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CmObject {
    pub residue: i64,
    pub level: i64,
}

impl CmObject {
    pub fn new(residue: i64, level: i64) -> Self {
        CmObject { residue, level }
    }

    pub fn key(&self) -> String {
        format!("({},{})", self.residue, self.level)
    }
}

/// Morphism `(a, x̄, i, j): (x̄, i) -> (a + x̄, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CmMorphism {
    pub a: i64,
    pub x: i64,
    pub i: i64,
    pub j: i64,
}

impl CmMorphism {
    pub fn new(a: i64, x: i64, i: i64, j: i64) -> Self {
        CmMorphism { a, x, i, j }
    }

    pub fn identity(o: CmObject) -> Self {
        CmMorphism::new(0, o.residue, o.level, o.level)
    }

    /// Parses the positional form `a,x,i,j`.
    pub fn parse(s: &str) -> Result<Self> {
        let v = parse_tuple(s, 4)?;
        Ok(CmMorphism::new(v[0], v[1], v[2], v[3]))
    }

    pub fn key(&self) -> String {
        self.to_string()
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.i == self.j
    }
}

impl fmt::Display for CmMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.x, self.i, self.j)
    }
}

/// The category `C_m` for a fixed modulus `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cm {
    m: i64,
}

impl Cm {
    pub fn new(m: i64) -> Result<Self> {
        check_modulus(m)?;
        Ok(Cm { m })
    }

    pub fn modulus(&self) -> i64 {
        self.m
    }

    pub fn check_object(&self, o: CmObject) -> Result<()> {
        if !(0..self.m).contains(&o.residue) || o.level > 0 {
            return Err(Error::InvalidMorphism(format!(
                "object {} outside Z_{} × Z_-",
                o.key(),
                self.m
            )));
        }
        Ok(())
    }

    pub fn check(&self, f: &CmMorphism) -> Result<()> {
        self.check_object(self.domain(f))?;
        if f.j > 0 || f.a < 0 || f.a > f.i - f.j {
            return Err(Error::InvalidMorphism(format!(
                "{f} needs 0 <= a <= i - j and i, j <= 0"
            )));
        }
        Ok(())
    }

    pub fn domain(&self, f: &CmMorphism) -> CmObject {
        CmObject::new(f.x, f.i)
    }

    pub fn codomain(&self, f: &CmMorphism) -> CmObject {
        CmObject::new((f.x + f.a).rem_euclid(self.m), f.j)
    }

    /// All morphisms from `source` to `target`, by ascending `a`.
    pub fn hom(&self, source: CmObject, target: CmObject) -> Vec<CmMorphism> {
        let (x, i) = (source.residue, source.level);
        (0..=(i - target.level).max(-1))
            .filter(|&a| (a + x).rem_euclid(self.m) == target.residue)
            .map(|a| CmMorphism::new(a, x, i, target.level))
            .collect()
    }

    /// `g ∘ f`: `(b, ȳ, j, k) ∘ (a, x̄, i, j) = (a + b, x̄, i, k)`.
    pub fn compose(&self, g: &CmMorphism, f: &CmMorphism) -> Result<CmMorphism> {
        if self.codomain(f) != self.domain(g) {
            return Err(Error::NotComposable(format!(
                "codomain {} of {f} is not the domain {} of {g}",
                self.codomain(f).key(),
                self.domain(g).key()
            )));
        }
        Ok(CmMorphism::new(f.a + g.a, f.x, f.i, g.j))
    }

    /// Intermediate objects of the factorizations of `f` as `(b, z, k)`: for each
    /// `b` in `[0, a]`, `z = b + x mod m` and `k` ranges over `[a - b + j, i - b]`.
    pub fn factorization_objects(&self, f: &CmMorphism) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for b in 0..=f.a {
            let z = (b + f.x).rem_euclid(self.m);
            for k in (f.a - b + f.j)..=(f.i - b) {
                out.push((b, z, k));
            }
        }
        out
    }

    /// Factorizations `(left, right)` of `f` from the closed-form enumeration.
    pub fn factorizations(&self, f: &CmMorphism) -> Vec<(CmMorphism, CmMorphism)> {
        self.factorization_objects(f)
            .into_iter()
            .map(|(b, z, k)| {
                (
                    CmMorphism::new(f.a - b, z, k, f.j),
                    CmMorphism::new(b, f.x, f.i, k),
                )
            })
            .collect()
    }

    /// The full subcategory on levels `level_min..=0`. Every factorization of a morphism
    /// `(a, x̄, i, j)` passes through levels in `[j, i]`, so every morphism is complete.
    pub fn slice(&self, level_min: i64) -> Result<CmSlice> {
        if level_min > 0 {
            return Err(Error::InvalidWindow(format!(
                "level_min must be <= 0, got {level_min}"
            )));
        }
        let mut b = SliceBuilder::new();
        let mut objects = Vec::new();
        for level in (level_min..=0).rev() {
            for residue in 0..self.m {
                let o = CmObject::new(residue, level);
                let id = b.add_object(o.key())?;
                objects.push((o, id));
            }
        }
        let mut payload = Vec::new();
        for &(o, dom) in &objects {
            for j in (level_min..=o.level).rev() {
                for a in 0..=(o.level - j) {
                    let f = CmMorphism::new(a, o.residue, o.level, j);
                    let cod = b
                        .object(&self.codomain(&f).key())
                        .expect("codomain lies in the window");
                    let mor = b.add_morphism(f.key(), dom, cod)?;
                    if f.is_identity() {
                        b.set_identity(dom, mor)?;
                    }
                    payload.push(f);
                }
            }
        }
        b.fill_composites(|g, h| {
            let (g, h) = (&payload[g.0], &payload[h.0]);
            Some(CmMorphism::new(h.a + g.a, h.x, h.i, g.j).key())
        })?;
        b.mark_all_complete();
        Ok(CmSlice {
            cm: *self,
            level_min,
            slice: b.build()?,
            payload,
        })
    }
}

/// Closed-form Möbius function of `C_m`:
/// 1 if `a = 0, j = i` or `a = 1, j = i - 2`; -1 if `a ∈ {0, 1}, j = i - 1`; 0 otherwise.
pub fn cm_moebius_closed_form(f: &CmMorphism) -> i64 {
    match (f.a, f.i - f.j) {
        (0, 0) | (1, 2) => 1,
        (0, 1) | (1, 1) => -1,
        _ => 0,
    }
}

/// A finite window of `C_m` with the quadruple behind every slice morphism.
#[derive(Debug, Clone)]
pub struct CmSlice {
    cm: Cm,
    level_min: i64,
    slice: CategorySlice,
    payload: Vec<CmMorphism>,
}

impl CmSlice {
    pub fn cm(&self) -> Cm {
        self.cm
    }

    pub fn level_min(&self) -> i64 {
        self.level_min
    }

    pub fn category(&self) -> &CategorySlice {
        &self.slice
    }

    pub fn morphism(&self, m: Mor) -> CmMorphism {
        self.payload[m.0]
    }

    pub fn find(&self, f: &CmMorphism) -> Option<Mor> {
        self.slice.morphism(&f.key())
    }

    pub fn object(&self, o: CmObject) -> Option<Obj> {
        self.slice.object(&o.key())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mor, CmMorphism)> + '_ {
        self.payload.iter().enumerate().map(|(i, f)| (Mor(i), *f))
    }

    /// Grid coordinates `(b, t)` of a factorization `(a-b, z̄, k, j) ∘ (b, x̄, i, k)` of
    /// `(a, x̄, i, j)`, where `k = a - b + j + t`.
    pub fn coordinates(&self, fac: &Factorization) -> (i64, i64) {
        let f = self.morphism(fac.subject);
        let right = self.morphism(fac.right);
        let b = right.a;
        (b, right.j - (f.a - b + f.j))
    }

    /// Lawvere interval of `f` with objects labelled `(b,k)`.
    pub fn interval(&self, f: Mor) -> Result<LawvereInterval> {
        let iv = LawvereInterval::new(&self.slice, f)?;
        let labels = iv
            .objects()
            .iter()
            .map(|fac| {
                let right = self.morphism(fac.right);
                format!("({},{})", right.a, right.j)
            })
            .collect();
        Ok(iv.with_labels(labels))
    }

    pub fn interval_poset(&self, f: Mor) -> Result<FinitePoset> {
        self.interval(f)?.to_poset()
    }
}
