mod common;

use std::collections::BTreeSet;

use common::{chain_moebius, cm, cm_factor_pairs, cm_member, cm_window_brute_force, is_isomorphic};
use moebius_core::lawvere::{moebius_test, moebius_via_lawvere, LawvereInterval};
use moebius_core::models::{
    cm_moebius_closed_form, dm_moebius_closed_form, functor_f, functor_f_object, CmMorphism,
    CmObject, Dm, DmMorphism,
};
use moebius_core::FinitePoset;
use proptest::prelude::*;

#[test]
fn window_sizes_match_brute_force() {
    for m in [2, 3, 5] {
        for level_min in -4..=0 {
            let s = cm(m).slice(level_min).unwrap();
            let expected: BTreeSet<CmMorphism> =
                cm_window_brute_force(m, level_min).into_iter().collect();
            let got: BTreeSet<CmMorphism> = s.iter().map(|(_, f)| f).collect();
            assert_eq!(got, expected, "m = {m}, level_min = {level_min}");
            assert_eq!(s.category().num_objects() as i64, m * (1 - level_min));
        }
    }
    // two identities per level plus (0,x,0,-1) and (1,x,0,-1) for both residues
    assert_eq!(cm(2).slice(-1).unwrap().category().num_morphisms(), 8);
}

#[test]
fn window_axioms() {
    let s = cm(3).slice(-4).unwrap();
    assert_eq!(s.category().validate(), Ok(()));
    let d = Dm::new(3).unwrap().slice(9).unwrap();
    assert_eq!(d.category().validate(), Ok(()));
}

proptest! {
    #[test]
    fn hom_sets_match_membership(m in 2i64..6, x in 0i64..6, y in 0i64..6, i in -6i64..=0, j in -6i64..=0) {
        let (x, y) = (x % m, y % m);
        let (src, tgt) = (CmObject::new(x, i), CmObject::new(y, j));
        let got = cm(m).hom(src, tgt);
        let expected: Vec<CmMorphism> = (0..=6)
            .map(|a| CmMorphism::new(a, x, i, j))
            .filter(|f| cm_member(m, f, src, tgt))
            .collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn composition_is_associative(m in 2i64..6, x in 0i64..6, levels in prop::collection::vec(0i64..3, 3), a in prop::collection::vec(0i64..3, 3)) {
        let c = cm(m);
        let x = x % m;
        let i0 = 0;
        let i1 = i0 - levels[0] - a[0];
        let i2 = i1 - levels[1] - a[1];
        let i3 = i2 - levels[2] - a[2];
        let f = CmMorphism::new(a[0], x, i0, i1);
        let g = CmMorphism::new(a[1], c.codomain(&f).residue, i1, i2);
        let h = CmMorphism::new(a[2], c.codomain(&g).residue, i2, i3);
        let left = c.compose(&h, &c.compose(&g, &f).unwrap()).unwrap();
        let right = c.compose(&c.compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(c.compose(&CmMorphism::identity(c.codomain(&f)), &f).unwrap(), f);
        prop_assert_eq!(c.compose(&f, &CmMorphism::identity(c.domain(&f))).unwrap(), f);
    }

    #[test]
    fn functor_preserves_structure(m in 2i64..6, x in 0i64..6, a in 0i64..4, b in 0i64..4, i in -3i64..=0, gap1 in 0i64..3, gap2 in 0i64..3) {
        let (c, d) = (cm(m), Dm::new(m).unwrap());
        let x = x % m;
        let j = i - a - gap1;
        let k = j - b - gap2;
        let f = CmMorphism::new(a, x, i, j);
        let g = CmMorphism::new(b, c.codomain(&f).residue, j, k);
        prop_assert_eq!(functor_f_object(c.domain(&f)), functor_f(&f).x);
        prop_assert_eq!(functor_f_object(c.codomain(&f)), d.codomain(&functor_f(&f)));
        prop_assert_eq!(functor_f(&c.compose(&g, &f).unwrap()), d.compose(&functor_f(&g), &functor_f(&f)).unwrap());
        prop_assert!(functor_f(&CmMorphism::identity(c.domain(&f))).is_identity());
    }
}

#[test]
fn factorization_objects_against_brute_force() {
    for m in [2, 3] {
        let s = cm(m).slice(-5).unwrap();
        let all: Vec<CmMorphism> = s.iter().map(|(_, f)| f).collect();
        for &f in &all {
            let brute: BTreeSet<(i64, i64, i64)> = cm_factor_pairs(m, &all, &f)
                .into_iter()
                .map(|(_, h)| (h.a, (h.a + h.x) % m, h.j))
                .collect();
            let got: BTreeSet<(i64, i64, i64)> =
                cm(m).factorization_objects(&f).into_iter().collect();
            assert_eq!(got, brute, "{f}");
            assert_eq!(got.len() as i64, (f.a + 1) * (f.i - f.j - f.a + 1));
            let via_slice = s
                .category()
                .factorizations(s.find(&f).unwrap())
                .unwrap()
                .len();
            assert_eq!(via_slice, got.len());
        }
    }
}

#[test]
fn factorization_examples() {
    let c2 = cm(2);
    let objs: BTreeSet<_> = c2
        .factorization_objects(&CmMorphism::new(1, 0, 0, -2))
        .into_iter()
        .collect();
    let expected: BTreeSet<_> = [(0, 0, 0), (0, 0, -1), (1, 1, -1), (1, 1, -2)]
        .into_iter()
        .collect();
    assert_eq!(objs, expected);
    assert_eq!(
        c2.factorization_objects(&CmMorphism::new(0, 0, 0, -1))
            .len(),
        2
    );
    assert_eq!(
        c2.factorization_objects(&CmMorphism::new(1, 0, 0, -1))
            .len(),
        2
    );
}

#[test]
fn dm_factorizations_against_brute_force() {
    for m in [2, 3, 5] {
        let d = Dm::new(m).unwrap();
        let alpha_max = m - 1 + 8;
        let all: Vec<DmMorphism> = (0..m)
            .flat_map(|x| (x..=alpha_max).map(move |alpha| DmMorphism::new(alpha, x)))
            .collect();
        for f in &all {
            let mut brute = Vec::new();
            for h in &all {
                for g in &all {
                    if h.x == f.x && g.x == h.alpha % m && g.alpha - g.x + h.alpha == f.alpha {
                        brute.push((*g, *h));
                    }
                }
            }
            brute.sort();
            let mut got = d.factorizations(f);
            got.sort();
            assert_eq!(got, brute, "{f}");
            assert_eq!(got.len() as i64, f.alpha - f.x + 1);
        }
    }
}

#[test]
fn functor_is_surjective_on_windows() {
    for m in [2, 3, 5] {
        let c = cm(m);
        for x in 0..m {
            for alpha in x..x + 6 {
                // (α - x, x̄, 0, -(α - x)) is a preimage
                let f = CmMorphism::new(alpha - x, x, 0, -(alpha - x));
                assert!(c.check(&f).is_ok());
                assert_eq!(functor_f(&f), DmMorphism::new(alpha, x));
            }
        }
    }
}

#[test]
fn cm_intervals_are_grids() {
    for m in [2, 3] {
        let s = cm(m).slice(-5).unwrap();
        for (mor, f) in s.iter() {
            let p = s.interval_poset(mor).unwrap();
            let grid = FinitePoset::chain((f.a + 1) as usize)
                .product(&FinitePoset::chain((f.i - f.j - f.a + 1) as usize));
            assert!(is_isomorphic(&p, &grid), "{f}");
            let iv = s.interval(mor).unwrap();
            // Hom((b,t),(b',t')) non-empty iff b <= b' and t' <= t
            for (u, fu) in iv.objects().iter().enumerate() {
                for (v, fv) in iv.objects().iter().enumerate() {
                    let ((b, t), (b2, t2)) = (s.coordinates(fu), s.coordinates(fv));
                    assert_eq!(!iv.hom(u, v).is_empty(), b <= b2 && t2 <= t, "{f}");
                    assert!(iv.hom(u, v).len() <= 1);
                }
            }
            let expected = chain_moebius(f.a) * chain_moebius(f.i - f.j - f.a);
            assert_eq!(cm_moebius_closed_form(&f), expected);
            assert_eq!(moebius_via_lawvere(s.category(), mor), Ok(expected));
        }
    }
}

#[test]
fn lawvere_examples() {
    let s = cm(2).slice(-3).unwrap();
    let f = s.find(&CmMorphism::new(1, 1, 0, -2)).unwrap();
    assert_eq!(moebius_via_lawvere(s.category(), f), Ok(1));
    let f = s.find(&CmMorphism::new(2, 0, 0, -2)).unwrap();
    assert_eq!(moebius_via_lawvere(s.category(), f), Ok(0));
    let f = s.find(&CmMorphism::new(0, 1, -1, -2)).unwrap();
    assert_eq!(moebius_via_lawvere(s.category(), f), Ok(-1));
    assert!(moebius_test(s.category()));
}

#[test]
fn dm_intervals_are_chains() {
    let d = Dm::new(3).unwrap().slice(12).unwrap();
    assert!(moebius_test(d.category()));
    for (mor, f) in d.iter() {
        let iv = LawvereInterval::new(d.category(), mor).unwrap();
        let p = iv.to_poset().unwrap();
        assert!(
            is_isomorphic(&p, &FinitePoset::chain((f.alpha - f.x + 1) as usize)),
            "{f}"
        );
        assert_eq!(
            moebius_via_lawvere(d.category(), mor),
            Ok(dm_moebius_closed_form(&f))
        );
    }
    let f = d.find(&DmMorphism::new(4, 2)).unwrap();
    assert_eq!(LawvereInterval::new(d.category(), f).unwrap().len(), 3);
}

#[test]
fn image_of_interval_is_the_chain() {
    // F maps the grid I(f) onto I(F(f)): the factorization through (b, t) goes to the one
    // through γ = x + b, so the image of the grid is the chain of length a.
    let (c, d) = (cm(3), Dm::new(3).unwrap());
    let f = CmMorphism::new(3, 1, 0, -5);
    let images: BTreeSet<(DmMorphism, DmMorphism)> = c
        .factorizations(&f)
        .iter()
        .map(|(u, v)| (functor_f(u), functor_f(v)))
        .collect();
    let target: BTreeSet<_> = d.factorizations(&functor_f(&f)).into_iter().collect();
    assert_eq!(images, target);
}
