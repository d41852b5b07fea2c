//! Lawvere intervals.
//!
//! The interval `I(f)` has the factorizations `f = u∘v` as objects. A morphism `h` of the
//! ambient slice runs from `(u, v)` to `(u', v')` when `h∘v = v'` and `u'∘h = u`, so `f`
//! itself runs from the bottom `(f, 1_X)` to the top `(1_Y, f)`.

use std::collections::BTreeMap;

use crate::category::{CategorySlice, Mor};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// `left ∘ right = subject`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pub left: Mor,
    pub right: Mor,
    pub subject: Mor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawvereInterval {
    subject: Mor,
    objects: Vec<Factorization>,
    labels: Vec<String>,
    // only non-empty hom-sets are stored
    homs: BTreeMap<(usize, usize), Vec<Mor>>,
}

impl LawvereInterval {
    /// Enumerates factorizations of `f` and every connecting morphism by brute force over
    /// the slice.
    pub fn new(c: &CategorySlice, f: Mor) -> Result<Self> {
        let objects: Vec<Factorization> = c
            .factorizations(f)?
            .iter()
            .map(|&(left, right)| Factorization {
                left,
                right,
                subject: f,
            })
            .collect();
        let labels = objects
            .iter()
            .map(|fac| format!("{}|{}", c.key(fac.left), c.key(fac.right)))
            .collect();
        let mut homs = BTreeMap::new();
        for (s, from) in objects.iter().enumerate() {
            for (t, to) in objects.iter().enumerate() {
                let connecting: Vec<Mor> = c
                    .hom(c.cod(from.right), c.cod(to.right))
                    .iter()
                    .copied()
                    .filter(|&h| {
                        c.compose(h, from.right) == Some(to.right)
                            && c.compose(to.left, h) == Some(from.left)
                    })
                    .collect();
                if !connecting.is_empty() {
                    homs.insert((s, t), connecting);
                }
            }
        }
        Ok(LawvereInterval {
            subject: f,
            objects,
            labels,
            homs,
        })
    }

    pub fn subject(&self) -> Mor {
        self.subject
    }

    pub fn objects(&self) -> &[Factorization] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom(&self, from: usize, to: usize) -> &[Mor] {
        self.homs.get(&(from, to)).map_or(&[], Vec::as_slice)
    }

    /// Largest hom-set size, 0 for an empty interval.
    pub fn max_hom_size(&self) -> usize {
        self.homs.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn position(&self, left: Mor, right: Mor) -> Option<usize> {
        self.objects
            .iter()
            .position(|fac| fac.left == left && fac.right == right)
    }

    /// Position of `(f, 1_dom f)`.
    pub fn bottom(&self, c: &CategorySlice) -> Option<usize> {
        self.position(self.subject, c.identity(c.dom(self.subject)))
    }

    /// Position of `(1_cod f, f)`.
    pub fn top(&self, c: &CategorySlice) -> Option<usize> {
        self.position(c.identity(c.cod(self.subject)), self.subject)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.objects.len());
        self.labels = labels;
        self
    }

    /// `|Hom(X, X)| = 1` for every object, and no two distinct objects are connected
    /// both ways.
    pub fn is_one_way(&self) -> bool {
        let n = self.len();
        (0..n).all(|s| self.hom(s, s).len() == 1)
            && (0..n).all(|s| {
                ((s + 1)..n).all(|t| self.hom(s, t).is_empty() || self.hom(t, s).is_empty())
            })
    }

    /// The interval as a poset: `F1 <= F2` iff `Hom(F1, F2)` is non-empty.
    pub fn to_poset(&self) -> Result<FinitePoset> {
        if let Some(count) = self.homs.values().map(Vec::len).find(|&k| k >= 2) {
            return Err(Error::NotThin { count });
        }
        for s in 0..self.len() {
            if self.hom(s, s).is_empty() {
                return Err(Error::NotOneWay(format!(
                    "factorization `{}` has no identity in the interval",
                    self.labels[s]
                )));
            }
        }
        for &(s, t) in self.homs.keys() {
            if s != t && !self.hom(t, s).is_empty() {
                return Err(Error::NotOneWay(format!(
                    "factorizations `{}` and `{}` are isomorphic",
                    self.labels[s], self.labels[t]
                )));
            }
        }
        FinitePoset::from_relation(self.labels.clone(), self.homs.keys().copied())
    }
}

/// A slice is Möbius iff every Lawvere interval is finite and one-way. Intervals of a
/// finite slice are always finite, so this checks one-wayness of every interval. Returns
/// false if some morphism is not factorization-closed.
pub fn moebius_test(c: &CategorySlice) -> bool {
    c.morphisms().all(|f| match LawvereInterval::new(c, f) {
        Ok(iv) => iv.is_one_way(),
        Err(_) => false,
    })
}

/// μ(f) as the poset Möbius value of `I(f)` from `(f, 1)` to `(1, f)`.
pub fn moebius_via_lawvere(c: &CategorySlice, f: Mor) -> Result<i64> {
    let iv = LawvereInterval::new(c, f)?;
    moebius_of_interval(c, &iv)
}

pub fn moebius_of_interval(c: &CategorySlice, iv: &LawvereInterval) -> Result<i64> {
    let poset = iv.to_poset()?;
    let (bottom, top) = match (iv.bottom(c), iv.top(c)) {
        (Some(b), Some(t)) => (b, t),
        _ => return Err(Error::Unbounded),
    };
    if poset.bottom() != Some(bottom) || poset.top() != Some(top) {
        return Err(Error::Unbounded);
    }
    poset.moebius(bottom, top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{Obj, SliceBuilder};

    #[test]
    fn identity_interval_is_a_point() {
        let c = CategorySlice::from_poset(&FinitePoset::chain(3));
        let id = c.identity(Obj(1));
        let iv = LawvereInterval::new(&c, id).unwrap();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv.hom(0, 0), &[id]);
        assert!(iv.is_one_way());
        assert_eq!(iv.to_poset().unwrap().len(), 1);
        assert_eq!(moebius_via_lawvere(&c, id), Ok(1));
    }

    #[test]
    fn poset_intervals_match_poset_moebius() {
        let p = FinitePoset::divisors(36);
        let c = CategorySlice::from_poset(&p);
        assert!(moebius_test(&c));
        for x in 0..p.len() {
            for y in 0..p.len() {
                if let Ok(mu) = p.moebius(x, y) {
                    let f = c.hom(Obj(x), Obj(y))[0];
                    let iv = LawvereInterval::new(&c, f).unwrap();
                    assert!(iv.is_one_way());
                    assert_eq!(
                        iv.to_poset().unwrap().len(),
                        p.interval(x, y).unwrap().len()
                    );
                    assert_eq!(moebius_via_lawvere(&c, f), Ok(mu));
                }
            }
        }
    }

    #[test]
    fn bottom_and_top() {
        let c = CategorySlice::from_poset(&FinitePoset::boolean_lattice(2));
        let f = c.morphism("{}<={1,2}").unwrap();
        let iv = LawvereInterval::new(&c, f).unwrap();
        assert_eq!(iv.len(), 4);
        let poset = iv.to_poset().unwrap();
        assert_eq!(poset.bottom(), iv.bottom(&c));
        assert_eq!(poset.top(), iv.top(&c));
        let (b, t) = (iv.bottom(&c).unwrap(), iv.top(&c).unwrap());
        assert_eq!(iv.hom(b, t), &[f]);
    }

    /// One object with an invertible non-identity `g` (`g∘g = 1`).
    fn involution() -> CategorySlice {
        let mut b = SliceBuilder::new();
        let x = b.add_object("X").unwrap();
        let one = b.add_morphism("1", x, x).unwrap();
        let g = b.add_morphism("g", x, x).unwrap();
        b.set_identity(x, one).unwrap();
        for (p, q, r) in [(one, one, one), (one, g, g), (g, one, g), (g, g, one)] {
            b.add_composite(p, q, r).unwrap();
        }
        b.mark_all_complete();
        b.build().unwrap()
    }

    #[test]
    fn invertible_endomorphism_breaks_one_way() {
        let c = involution();
        let g = c.morphism("g").unwrap();
        let iv = LawvereInterval::new(&c, g).unwrap();
        assert!(!iv.is_one_way());
        assert!(!moebius_test(&c));
        assert!(matches!(iv.to_poset(), Err(Error::NotOneWay(_))));
    }

    #[test]
    fn isomorphic_objects_break_one_way() {
        let mut b = SliceBuilder::new();
        let x = b.add_object("X").unwrap();
        let y = b.add_object("Y").unwrap();
        let ix = b.add_morphism("1X", x, x).unwrap();
        let iy = b.add_morphism("1Y", y, y).unwrap();
        let f = b.add_morphism("f", x, y).unwrap();
        let g = b.add_morphism("g", y, x).unwrap();
        b.set_identity(x, ix).unwrap();
        b.set_identity(y, iy).unwrap();
        for (p, q, r) in [
            (ix, ix, ix),
            (iy, iy, iy),
            (f, ix, f),
            (iy, f, f),
            (g, iy, g),
            (ix, g, g),
            (g, f, ix),
            (f, g, iy),
        ] {
            b.add_composite(p, q, r).unwrap();
        }
        b.mark_all_complete();
        let c = b.build().unwrap();
        assert_eq!(c.validate(), Ok(()));
        assert!(!moebius_test(&c));
    }

    #[test]
    fn parallel_connecting_morphisms_are_not_thin() {
        let mut b = SliceBuilder::new();
        let x = b.add_object("X").unwrap();
        let y = b.add_object("Y").unwrap();
        let ix = b.add_morphism("1X", x, x).unwrap();
        let iy = b.add_morphism("1Y", y, y).unwrap();
        let s = b.add_morphism("s", x, y).unwrap();
        let t = b.add_morphism("t", y, y).unwrap();
        b.set_identity(x, ix).unwrap();
        b.set_identity(y, iy).unwrap();
        // t∘s = s and t∘t = t: t is a non-identity idempotent fixing s
        for (p, q, r) in [
            (ix, ix, ix),
            (iy, iy, iy),
            (s, ix, s),
            (iy, s, s),
            (t, iy, t),
            (iy, t, t),
            (t, t, t),
            (t, s, s),
        ] {
            b.add_composite(p, q, r).unwrap();
        }
        b.mark_all_complete();
        let c = b.build().unwrap();
        assert_eq!(c.validate(), Ok(()));
        let iv = LawvereInterval::new(&c, s).unwrap();
        // Hom((t, s), (t, s)) holds both 1Y and t
        assert!(iv.max_hom_size() >= 2);
        assert!(matches!(iv.to_poset(), Err(Error::NotThin { .. })));
        assert!(!iv.is_one_way());
    }
}
